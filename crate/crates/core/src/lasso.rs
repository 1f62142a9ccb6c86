//! Interval-valued ℓ1-penalized linear regression.
//!
//! The model is `H(X; β) = ⊕_i β_i ⊙ X^i` with real coefficients `β` and
//! interval features `X`. The error to minimize is `E = E1 ⊕ E2` where
//!
//! ```text
//! E1(β) = ½ ⊕_k (H(X_k; β) ⊖_gH Y_k) ⊙_S (H(X_k; β) ⊖_gH Y_k)
//! E2(β) = L ⊙ (|β_1| + ... + |β_l|)
//! ```
//!
//! All sums run left to right in sample and coefficient order.

use std::io::{BufRead, BufReader, Read};

use serde::Serialize;
use thiserror::Error;

use crate::interval::{format_real, Interval, IntervalError, IntervalVector};
use crate::ivf::Ivf;
use crate::solver::{self, Archive, IterationTrace, SolverConfig, SolverError};

/// The bundled twelve-sample, two-feature dataset.
pub const BUNDLED_CSV: &str = include_str!("../data/intervals.csv");

#[derive(Debug, Error)]
pub enum LassoError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dataset has no samples")]
    EmptyDataset,
    #[error("tuning parameter must be nonnegative, got {0}")]
    NegativeTuning(Interval),
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LassoSample {
    pub features: IntervalVector,
    pub target: Interval,
}

/// `n >= 1` samples sharing a feature dimension `l >= 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LassoDataset {
    samples: Vec<LassoSample>,
    feature_dim: usize,
}

impl LassoDataset {
    pub fn new(samples: Vec<LassoSample>) -> Result<Self, LassoError> {
        let first = samples.first().ok_or(LassoError::EmptyDataset)?;
        let feature_dim = first.features.len();
        if let Some(bad) = samples.iter().find(|s| s.features.len() != feature_dim) {
            return Err(LassoError::DimensionMismatch {
                expected: feature_dim,
                got: bad.features.len(),
            });
        }
        Ok(LassoDataset {
            samples,
            feature_dim,
        })
    }

    /// The bundled dataset.
    pub fn bundled() -> Self {
        Self::from_csv(BUNDLED_CSV.as_bytes()).expect("bundled dataset parses")
    }

    pub fn samples(&self) -> &[LassoSample] {
        &self.samples
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    /// Reads `x1_lo,x1_hi,...,xl_lo,xl_hi,y_lo,y_hi` with a header row.
    /// `l` is inferred from the header.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self, LassoError> {
        let mut lines = BufReader::new(reader).lines().enumerate();
        let (_, header) = lines.next().ok_or(LassoError::EmptyDataset)?;
        let header = header?;
        let columns = header.split(',').count();
        if columns < 4 || columns % 2 != 0 {
            return Err(LassoError::Csv {
                line: 1,
                message: format!(
                    "expected 2l+2 columns (x1_lo,x1_hi,...,y_lo,y_hi) with l >= 1, header has {columns}"
                ),
            });
        }
        let l = (columns - 2) / 2;
        let mut samples = Vec::new();
        for (idx, line) in lines {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != columns {
                return Err(LassoError::Csv {
                    line: lineno,
                    message: format!("expected 2l+2 = {columns} columns, found {}", fields.len()),
                });
            }
            let mut nums = Vec::with_capacity(columns);
            for (col, f) in fields.iter().enumerate() {
                let v = f.trim().parse::<f64>().map_err(|_| LassoError::Csv {
                    line: lineno,
                    message: format!("column {}: cannot parse {:?} as a number", col + 1, f.trim()),
                })?;
                nums.push(v);
            }
            let interval_at = |j: usize| {
                Interval::new(nums[2 * j], nums[2 * j + 1]).map_err(|e| LassoError::Csv {
                    line: lineno,
                    message: format!("columns {}-{}: {e}", 2 * j + 1, 2 * j + 2),
                })
            };
            let features = (0..l).map(interval_at).collect::<Result<Vec<_>, _>>()?;
            let target = interval_at(l)?;
            samples.push(LassoSample {
                features: IntervalVector::new(features)?,
                target,
            });
        }
        if samples.is_empty() {
            return Err(LassoError::EmptyDataset);
        }
        Self::new(samples)
    }

    pub fn to_csv(&self) -> String {
        let mut cols: Vec<String> = (1..=self.feature_dim)
            .flat_map(|i| [format!("x{i}_lo"), format!("x{i}_hi")])
            .collect();
        cols.push("y_lo".into());
        cols.push("y_hi".into());
        let mut out = cols.join(",");
        out.push('\n');
        for s in &self.samples {
            let row: Vec<String> = s
                .features
                .iter()
                .chain(std::iter::once(&s.target))
                .flat_map(|v| [format_real(v.lo()), format_real(v.hi())])
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// The interval tuning parameter `L ⊆ [0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TuningParameter(Interval);

impl TuningParameter {
    pub fn new(l: Interval) -> Result<Self, LassoError> {
        if l.lo() < 0.0 {
            return Err(LassoError::NegativeTuning(l));
        }
        Ok(TuningParameter(l))
    }

    pub fn interval(&self) -> Interval {
        self.0
    }
}

fn check_dim(expected: usize, got: usize) -> Result<(), LassoError> {
    if expected != got {
        return Err(LassoError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `H(X; β) = ⊕_i β_i ⊙ X^i`.
pub fn hypothesis(x: &IntervalVector, beta: &[f64]) -> Result<Interval, LassoError> {
    check_dim(x.len(), beta.len())?;
    Ok(x.iter()
        .zip(beta)
        .fold(Interval::ZERO, |acc, (xi, b)| acc.add(xi.scalar_mul(*b))))
}

fn residuals<'a>(
    ds: &'a LassoDataset,
    beta: &'a [f64],
) -> impl Iterator<Item = (&'a LassoSample, Interval)> + 'a {
    ds.samples.iter().map(move |s| {
        let h = hypothesis(&s.features, beta).expect("dimension checked by caller");
        (s, h.gh_sub(s.target))
    })
}

pub fn error_e1(ds: &LassoDataset, beta: &[f64]) -> Result<Interval, LassoError> {
    check_dim(ds.feature_dim, beta.len())?;
    let sum = residuals(ds, beta).fold(Interval::ZERO, |acc, (_, r)| acc.add(r.special_mul(r)));
    Ok(sum.scalar_mul(0.5))
}

pub fn error_e2(beta: &[f64], l: &TuningParameter) -> Interval {
    let s = beta.iter().fold(0.0, |acc, b| acc + b.abs());
    l.0.scalar_mul(s)
}

pub fn error_total(ds: &LassoDataset, beta: &[f64], l: &TuningParameter) -> Result<Interval, LassoError> {
    Ok(error_e1(ds, beta)?.add(error_e2(beta, l)))
}

/// The closed-form subgradient choice, component by component:
///
/// ```text
/// G_i = ⊕_k (H(X_k; β) ⊖_gH Y_k) ⊙_S X_k^i ⊕ L        if β_i >= 0
/// G_i = ⊕_k (H(X_k; β) ⊖_gH Y_k) ⊙_S X_k^i ⊕ (-1)·L   if β_i <  0
/// ```
///
/// The data term is the per-sample special product, summed; it is not in
/// general the gH-gradient of `E1` (see the crate README).
pub fn analytic_subgradient(
    ds: &LassoDataset,
    beta: &[f64],
    l: &TuningParameter,
) -> Result<IntervalVector, LassoError> {
    check_dim(ds.feature_dim, beta.len())?;
    let res: Vec<Interval> = residuals(ds, beta).map(|(_, r)| r).collect();
    let comps = (0..beta.len())
        .map(|i| {
            let data = ds
                .samples
                .iter()
                .zip(&res)
                .fold(Interval::ZERO, |acc, (s, r)| acc.add(r.special_mul(s.features[i])));
            let penalty = if beta[i] >= 0.0 { l.0 } else { l.0.scalar_mul(-1.0) };
            data.add(penalty)
        })
        .collect();
    Ok(IntervalVector::new(comps)?)
}

/// A dataset paired with its tuning parameter.
#[derive(Clone, Debug)]
pub struct LassoProblem {
    pub dataset: LassoDataset,
    pub tuning: TuningParameter,
}

impl LassoProblem {
    pub fn new(dataset: LassoDataset, tuning: TuningParameter) -> Self {
        LassoProblem { dataset, tuning }
    }

    /// `E` as an IVF with [`analytic_subgradient`] as its oracle.
    pub fn error_ivf(&self) -> Ivf {
        let (ds, l) = (self.dataset.clone(), self.tuning);
        let (ds2, l2) = (ds.clone(), l);
        Ivf::from_pair_fn(ds.feature_dim, move |b| {
            let e = error_total(&ds, b, &l).expect("dimension checked by Ivf");
            (e.lo(), e.hi())
        })
        .with_oracle(move |b: &[f64]| analytic_subgradient(&ds2, b, &l2).map_err(|e| e.to_string()))
    }

    /// `E1` alone as an IVF (no oracle).
    pub fn e1_ivf(&self) -> Ivf {
        let ds = self.dataset.clone();
        Ivf::from_pair_fn(ds.feature_dim, move |b| {
            let e = error_e1(&ds, b).expect("dimension checked by Ivf");
            (e.lo(), e.hi())
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LassoFit {
    pub beta_hat: Vec<f64>,
    pub error_at_beta_hat: Interval,
    pub efficient_set: Vec<Vec<f64>>,
    pub nondominated_set: Vec<Interval>,
    pub w: f64,
    pub w_prime: f64,
    pub max_iter: usize,
    pub x0: Vec<f64>,
    pub schedule: String,
    pub tuning: Interval,
    #[serde(skip)]
    pub trace: IterationTrace,
}

/// Picks the efficient point minimizing `w·E.lo + w'·E.hi`; ties go to the
/// earliest archived point.
pub fn select_beta_hat(
    problem: &LassoProblem,
    archive: &Archive,
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, Interval), LassoError> {
    let mut best: Option<(f64, &Vec<f64>, Interval)> = None;
    for b in &archive.efficient_set {
        let e = error_total(&problem.dataset, b, &problem.tuning)?;
        let score = cfg.weights.w() * e.lo() + cfg.weights.w_prime() * e.hi();
        if best.as_ref().is_none_or(|(s, _, _)| score < *s) {
            best = Some((score, b, e));
        }
    }
    let (_, b, e) = best.ok_or_else(|| {
        LassoError::Solver(SolverError::InvalidConfig("empty efficient set".into()))
    })?;
    Ok((b.clone(), e))
}

pub fn fit(ds: &LassoDataset, l: TuningParameter, cfg: &SolverConfig) -> Result<LassoFit, LassoError> {
    check_dim(ds.feature_dim, cfg.x0.len())?;
    let problem = LassoProblem::new(ds.clone(), l);
    let f = problem.error_ivf();
    let (archive, trace) = solver::solve(&f, cfg)?;
    let (beta_hat, error_at_beta_hat) = select_beta_hat(&problem, &archive, cfg)?;
    Ok(LassoFit {
        beta_hat,
        error_at_beta_hat,
        efficient_set: archive.efficient_set,
        nondominated_set: archive.nondominated_set,
        w: cfg.weights.w(),
        w_prime: cfg.weights.w_prime(),
        max_iter: cfg.max_iter,
        x0: cfg.x0.clone(),
        schedule: cfg.schedule.to_string(),
        tuning: l.interval(),
        trace,
    })
}

/// The parts of one interval lying below and above another.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Excess {
    pub below: Option<Interval>,
    pub above: Option<Interval>,
}

impl Excess {
    fn of(a: &Interval, other: &Interval) -> Self {
        let below = (a.lo() < other.lo())
            .then(|| Interval::new(a.lo(), a.hi().min(other.lo())).expect("ordered"));
        let above = (a.hi() > other.hi())
            .then(|| Interval::new(a.lo().max(other.hi()), a.hi()).expect("ordered"));
        Excess { below, above }
    }

    pub fn width(&self) -> f64 {
        self.below.map_or(0.0, |v| v.width()) + self.above.map_or(0.0, |v| v.width())
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_none() && self.above.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredictionRow {
    pub k: usize,
    pub actual: Interval,
    pub estimate: Interval,
    pub overlap: Option<Interval>,
    pub actual_excess: Excess,
    pub estimate_excess: Excess,
}

fn overlap(a: &Interval, b: &Interval) -> Option<Interval> {
    let lo = a.lo().max(b.lo());
    let hi = a.hi().min(b.hi());
    (lo <= hi).then(|| Interval::new(lo, hi).expect("ordered"))
}

impl PredictionRow {
    pub fn new(k: usize, actual: Interval, estimate: Interval) -> Self {
        PredictionRow {
            k,
            actual,
            estimate,
            overlap: overlap(&actual, &estimate),
            actual_excess: Excess::of(&actual, &estimate),
            estimate_excess: Excess::of(&estimate, &actual),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredictionReport {
    pub rows: Vec<PredictionRow>,
}

pub const REPORT_CSV_HEADER: &str = "k,y_lo,y_hi,yhat_lo,yhat_hi,overlap_lo,overlap_hi,\
actual_excess_below,actual_excess_above,estimate_excess_below,estimate_excess_above";

impl PredictionReport {
    /// Overlap columns are empty when the intervals are disjoint; excess
    /// columns hold segment widths (0 when absent).
    pub fn to_csv(&self) -> String {
        let width = |v: Option<Interval>| format_real(v.map_or(0.0, |i| i.width()));
        let mut out = String::from(REPORT_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let (olo, ohi) = r
                .overlap
                .map_or((String::new(), String::new()), |o| (format_real(o.lo()), format_real(o.hi())));
            let row = [
                r.k.to_string(),
                format_real(r.actual.lo()),
                format_real(r.actual.hi()),
                format_real(r.estimate.lo()),
                format_real(r.estimate.hi()),
                olo,
                ohi,
                width(r.actual_excess.below),
                width(r.actual_excess.above),
                width(r.estimate_excess.below),
                width(r.estimate_excess.above),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn predict_report(ds: &LassoDataset, beta_hat: &[f64]) -> Result<PredictionReport, LassoError> {
    check_dim(ds.feature_dim, beta_hat.len())?;
    let rows = ds
        .samples
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let est = hypothesis(&s.features, beta_hat)?;
            Ok(PredictionRow::new(idx + 1, s.target, est))
        })
        .collect::<Result<Vec<_>, LassoError>>()?;
    Ok(PredictionReport { rows })
}
