//! Center presets and center files.
//!
//! | preset       | matrices        | point sets           | linear programs                         |
//! |--------------|-----------------|----------------------|-----------------------------------------|
//! | `zero`       | zero matrix     | `n` zero points      | `a_i = 0`, `b = 1`, `z = 1/√d`          |
//! | `ones`       | all-ones matrix | `n` copies of `1/√d` | `a_i = 1/√d`, `b = 1`, `z = 1/√d`       |
//! | `e1`         | -               | `n` copies of `e_1`  | -                                       |
//! | `klee-minty` | -               | -                    | normalized Klee-Minty cube, `n = 2d`    |
//! | path         | `d d` + rows    | `n d` + points       | linear-program text format              |

use std::path::Path;

use smoothlab::{LinearProgram64, Matrix64, Vector64};

use crate::config::{CenterSource, ExperimentKind, Measure};
use crate::error::{config, io, LabError, Result};

/// Klee-Minty deformation parameter.
pub const KLEE_MINTY_EPS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterShape {
    Matrix,
    Points,
    Program,
    Unused,
}

pub fn shape(kind: ExperimentKind, measure: Measure) -> CenterShape {
    match kind {
        ExperimentKind::MatrixTail => CenterShape::Matrix,
        ExperimentKind::RademacherTail => CenterShape::Unused,
        ExperimentKind::ShadowSize | ExperimentKind::PerceptronTail | ExperimentKind::SubmatrixLemma => {
            CenterShape::Points
        }
        ExperimentKind::SimplexPivots => CenterShape::Program,
        ExperimentKind::SmoothedProfile => match measure {
            Measure::SimplexPivots => CenterShape::Program,
            Measure::PerceptronIterations => CenterShape::Points,
        },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io(path, e))
}

/// `(rows, cols, entries)` from a `rows cols` header followed by rows.
fn parse_table(text: &str, path: &Path) -> Result<(usize, usize, Vec<Vec<f64>>)> {
    let bad = |msg: String| config(format!("{}: {msg}", path.display()));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad("empty file".into()))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = header[..] else { return Err(bad("header must be two integers".into())) };
    let mut out = Vec::with_capacity(rows);
    for line in lines {
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(format!("not a number: {t:?}"))))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} numbers per row, got {}", row.len())));
        }
        out.push(row);
    }
    if out.len() != rows || rows == 0 || cols == 0 {
        return Err(bad(format!("expected {rows} rows, got {}", out.len())));
    }
    Ok((rows, cols, out))
}

/// Dimensions a center fixes, as `(n, d)`; `None` when it adapts to the
/// configured sizes. Also rejects presets that do not apply to `kind`.
pub fn dims(
    kind: ExperimentKind,
    measure: Measure,
    center: &CenterSource,
    d_hint: Option<usize>,
) -> Result<Option<(Option<usize>, usize)>> {
    let shape = shape(kind, measure);
    let unsupported = || config(format!("center {center} does not apply to this experiment"));
    match (shape, center) {
        (CenterShape::Unused, CenterSource::Zero) => Ok(None),
        (CenterShape::Unused, _) => Err(config("tail-rademacher takes no center")),
        (_, CenterSource::Zero | CenterSource::Ones) => Ok(None),
        (CenterShape::Points, CenterSource::E1) => Ok(None),
        (CenterShape::Program, CenterSource::KleeMinty) => {
            let d = d_hint.unwrap_or(3);
            Ok(Some((Some(2 * d), d)))
        }
        (CenterShape::Matrix, CenterSource::File(p)) => {
            let (r, c, _) = parse_table(&read(p)?, p)?;
            if r != c {
                return Err(config(format!("{}: matrix center must be square", p.display())));
            }
            Ok(Some((None, c)))
        }
        (CenterShape::Points, CenterSource::File(p)) => {
            let (r, c, _) = parse_table(&read(p)?, p)?;
            Ok(Some((Some(r), c)))
        }
        (CenterShape::Program, CenterSource::File(p)) => {
            let lp = LinearProgram64::parse(&read(p)?)?;
            Ok(Some((Some(lp.n()), lp.d())))
        }
        _ => Err(unsupported()),
    }
}

pub fn matrix_center(center: &CenterSource, d: usize) -> Result<Matrix64> {
    match center {
        CenterSource::Zero => Ok(Matrix64::zeros(d, d)),
        CenterSource::Ones => Ok(Matrix64::filled(d, d, 1.0)),
        CenterSource::File(p) => {
            let (_, _, rows) = parse_table(&read(p)?, p)?;
            Ok(Matrix64::from_rows(&rows)?)
        }
        other => Err(config(format!("center {other} is not a matrix preset"))),
    }
}

fn ones(d: usize) -> Vector64 {
    Vector64::new(vec![1.0 / (d as f64).sqrt(); d]).expect("finite")
}

pub fn point_centers(center: &CenterSource, n: usize, d: usize) -> Result<Vec<Vector64>> {
    match center {
        CenterSource::Zero => Ok(vec![Vector64::zeros(d); n]),
        CenterSource::Ones => Ok(vec![ones(d); n]),
        CenterSource::E1 => Ok(vec![Vector64::unit(d, 0); n]),
        CenterSource::File(p) => {
            let (_, _, rows) = parse_table(&read(p)?, p)?;
            rows.into_iter().map(|r| Vector64::new(r).map_err(LabError::from)).collect()
        }
        other => Err(config(format!("center {other} is not a point-set preset"))),
    }
}

pub fn lp_center(center: &CenterSource, n: usize, d: usize) -> Result<LinearProgram64> {
    let lp = match center {
        CenterSource::Zero => LinearProgram64::unit_rhs(vec![Vector64::zeros(d); n], ones(d))?,
        CenterSource::Ones => LinearProgram64::unit_rhs(vec![ones(d); n], ones(d))?,
        CenterSource::KleeMinty => klee_minty(d),
        CenterSource::File(p) => LinearProgram64::parse(&read(p)?)?,
        other => return Err(config(format!("center {other} is not a linear-program preset"))),
    };
    Ok(lp)
}

/// `0 <= x_1 <= 1`, `ε x_{k-1} <= x_k <= 1 - ε x_{k-1}`, maximize `x_d`,
/// with every constraint scaled to a unit normal.
pub fn klee_minty(d: usize) -> LinearProgram64 {
    let mut rows = Vec::with_capacity(2 * d);
    let mut rhs = Vec::with_capacity(2 * d);
    for k in 0..d {
        for (sign, b) in [(-1.0, 0.0), (1.0, 1.0)] {
            let mut a = vec![0.0; d];
            a[k] = sign;
            if k > 0 {
                a[k - 1] = KLEE_MINTY_EPS;
            }
            let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            rows.push(Vector64::new(a.iter().map(|x| x / norm).collect()).expect("finite"));
            rhs.push(b / norm);
        }
    }
    LinearProgram64::new(rows, rhs, Vector64::unit(d, d - 1)).expect("well-formed")
}
