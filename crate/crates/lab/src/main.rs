fn main() {
    std::process::exit(smoothlab_lab::cli::main_with_args(std::env::args_os()));
}
