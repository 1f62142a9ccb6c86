//! The gH-subgradient method.
//!
//! Each iteration scalarizes a gH-subgradient with the W map, takes a
//! diminishing step against it, and folds the new point into two archives:
//! the efficient points seen so far and their nondominated values.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::interval::{format_real, Interval, IntervalVector, Weights};
use crate::ivf::{Ivf, IvfError};

/// Per-component threshold below which a scalarized subgradient counts as zero.
pub const ZERO_DIRECTION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("subgradient oracle failed at iteration {k}: {source}")]
    OracleFailure { k: usize, source: IvfError },
    #[error("function evaluation failed at iteration {k}: {source}")]
    Evaluation { k: usize, source: IvfError },
    #[error("scalarized subgradient vanished at iteration {k}")]
    ZeroDirectionExhausted {
        k: usize,
        x: Vec<f64>,
        /// State at the moment the run halted.
        partial: Box<(Archive, IterationTrace)>,
    },
    #[error("archive invariant violated after iteration {k}: {detail}")]
    ArchiveInvariant { k: usize, detail: String },
    #[error("trace has no iterates")]
    EmptyTrace,
}

/// Step lengths `α_k`, `k >= 1`.
#[derive(Clone)]
pub enum StepSchedule {
    /// `c / k`
    Harmonic { c: f64 },
    /// `c / (k + s)`
    Shifted { c: f64, s: f64 },
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl StepSchedule {
    pub fn harmonic(c: f64) -> Self {
        StepSchedule::Harmonic { c }
    }

    pub fn shifted(c: f64, s: f64) -> Self {
        StepSchedule::Shifted { c, s }
    }

    pub fn custom<F: Fn(usize) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        StepSchedule::Custom(Arc::new(f))
    }

    pub fn step(&self, k: usize) -> f64 {
        match self {
            StepSchedule::Harmonic { c } => c / k as f64,
            StepSchedule::Shifted { c, s } => c / (k as f64 + s),
            StepSchedule::Custom(f) => f(k),
        }
    }

    /// Confirms `α_k > 0` (and finite) for `k = 1..=max_iter`.
    pub fn validate(&self, max_iter: usize) -> Result<(), SolverError> {
        for k in 1..=max_iter {
            let a = self.step(k);
            if !(a > 0.0 && a.is_finite()) {
                return Err(SolverError::InvalidConfig(format!(
                    "step length at k = {k} is {a}, must be positive"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for StepSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for StepSchedule {
    /// Same syntax the CLI accepts: `harmonic:c`, `shifted:c,s`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepSchedule::Harmonic { c } => write!(f, "harmonic:{c}"),
            StepSchedule::Shifted { c, s } => write!(f, "shifted:{c},{s}"),
            StepSchedule::Custom(_) => write!(f, "custom"),
        }
    }
}

impl std::str::FromStr for StepSchedule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| format!("expected harmonic:c or shifted:c,s, got {s:?}"))?;
        let nums = args
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        match (kind.trim(), nums.as_slice()) {
            ("harmonic", [c]) => Ok(StepSchedule::harmonic(*c)),
            ("shifted", [c, s]) => Ok(StepSchedule::shifted(*c, *s)),
            _ => Err(format!("expected harmonic:c or shifted:c,s, got {s:?}")),
        }
    }
}

/// What to do when `W(ĝ_k)` vanishes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum ZeroDirectionPolicy {
    /// Halt with [`SolverError::ZeroDirectionExhausted`].
    #[default]
    Stop,
    /// Ask the oracle for another subgradient once; if that also vanishes,
    /// stay at `x_k` for this iteration and continue.
    Skip,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub weights: Weights,
    pub max_iter: usize,
    pub x0: Vec<f64>,
    pub schedule: StepSchedule,
    pub zero_direction_policy: ZeroDirectionPolicy,
    /// Cache `F(x)` for archived points instead of re-evaluating.
    pub memoize: bool,
    /// Verify archive invariants after every iteration.
    pub check_invariants: bool,
}

impl SolverConfig {
    pub fn new(weights: Weights, max_iter: usize, x0: Vec<f64>, schedule: StepSchedule) -> Self {
        SolverConfig {
            weights,
            max_iter,
            x0,
            schedule,
            zero_direction_policy: ZeroDirectionPolicy::default(),
            memoize: false,
            check_invariants: false,
        }
    }

    pub fn with_policy(mut self, policy: ZeroDirectionPolicy) -> Self {
        self.zero_direction_policy = policy;
        self
    }

    pub fn with_memoization(mut self, on: bool) -> Self {
        self.memoize = on;
        self
    }

    pub fn with_invariant_checks(mut self, on: bool) -> Self {
        self.check_invariants = on;
        self
    }
}

/// The efficient-point set and the nondominated-value set, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Archive {
    pub efficient_set: Vec<Vec<f64>>,
    pub nondominated_set: Vec<Interval>,
}

/// What one [`Archive::update`] changed.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ArchiveDelta {
    pub removed_efficient: Vec<Vec<f64>>,
    pub removed_nondominated: Vec<Interval>,
    pub inserted_efficient: bool,
    pub inserted_nondominated: bool,
}

impl Archive {
    pub fn seeded(x: Vec<f64>, value: Interval) -> Self {
        Archive {
            efficient_set: vec![x],
            nondominated_set: vec![value],
        }
    }

    /// Folds `(x_new, f_new)` into the archive.
    ///
    /// Points `x` with `f_new ≺ F(x)` and values `A` with `f_new ⪯ A` are
    /// dropped first. Then `x_new` joins the efficient set when no remaining
    /// `F(x) ≺ f_new`, and `f_new` joins the nondominated set when no
    /// remaining `A ⪯ f_new`. `eval` supplies `F` for archived points.
    pub fn update<E>(&mut self, x_new: &[f64], f_new: Interval, mut eval: E) -> Result<ArchiveDelta, IvfError>
    where
        E: FnMut(&[f64]) -> Result<Interval, IvfError>,
    {
        let mut delta = ArchiveDelta::default();

        let mut kept_values = Vec::with_capacity(self.efficient_set.len());
        let mut kept = Vec::with_capacity(self.efficient_set.len());
        for x in self.efficient_set.drain(..) {
            let fx = eval(&x)?;
            if f_new.strictly_precedes(&fx) {
                delta.removed_efficient.push(x);
            } else {
                kept.push(x);
                kept_values.push(fx);
            }
        }
        self.efficient_set = kept;

        let (removed, kept): (Vec<_>, Vec<_>) = self
            .nondominated_set
            .drain(..)
            .partition(|a| f_new.precedes(a));
        delta.removed_nondominated = removed;
        self.nondominated_set = kept;

        let blocked = kept_values.iter().any(|fx| fx.strictly_precedes(&f_new));
        let duplicate = self.efficient_set.iter().any(|x| x.as_slice() == x_new);
        if !blocked && !duplicate {
            self.efficient_set.push(x_new.to_vec());
            delta.inserted_efficient = true;
        }
        if !self.nondominated_set.iter().any(|a| a.precedes(&f_new)) {
            self.nondominated_set.push(f_new);
            delta.inserted_nondominated = true;
        }
        Ok(delta)
    }

    /// Returns a description of the first internal dominance found, if any.
    pub fn invariant_violation<E>(&self, mut eval: E) -> Result<Option<String>, IvfError>
    where
        E: FnMut(&[f64]) -> Result<Interval, IvfError>,
    {
        let values = self
            .efficient_set
            .iter()
            .map(|x| eval(x))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, a) in values.iter().enumerate() {
            for (j, b) in values.iter().enumerate() {
                if i != j && a.strictly_precedes(b) {
                    return Ok(Some(format!(
                        "efficient point {:?} with value {a} strictly dominates {:?} with value {b}",
                        self.efficient_set[i], self.efficient_set[j]
                    )));
                }
            }
        }
        for (i, a) in self.nondominated_set.iter().enumerate() {
            for (j, b) in self.nondominated_set.iter().enumerate() {
                if i != j && a.precedes(b) && a != b {
                    return Ok(Some(format!("nondominated value {a} dominates {b}")));
                }
            }
        }
        Ok(None)
    }
}

/// An iterate `x_k` and its value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub k: usize,
    pub x: Vec<f64>,
    pub value: Interval,
}

/// The step taken from `x_k` to `x_{k+1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub k: usize,
    pub subgradient: IntervalVector,
    pub direction: Vec<f64>,
    pub alpha: f64,
    /// The scalarized subgradient vanished and the iterate stayed put.
    pub skipped: bool,
    pub delta: ArchiveDelta,
}

/// Iterates `x_1, ..., x_{m+1}` and the `m` steps between them.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct IterationTrace {
    pub points: Vec<TracePoint>,
    pub steps: Vec<StepRecord>,
}

impl IterationTrace {
    /// Header for [`IterationTrace::to_csv`] on an `n`-dimensional problem.
    pub fn csv_header(n: usize) -> String {
        let mut cols = vec!["k".to_string()];
        cols.extend((1..=n).map(|i| format!("x{i}")));
        cols.push("F_lo".into());
        cols.push("F_hi".into());
        for i in 1..=n {
            cols.push(format!("g{i}_lo"));
            cols.push(format!("g{i}_hi"));
        }
        cols.extend((1..=n).map(|i| format!("W{i}")));
        cols.push("alpha".into());
        cols.join(",")
    }

    /// One row per iterate. The final iterate has empty step columns.
    pub fn to_csv(&self) -> String {
        let n = self.points.first().map_or(0, |p| p.x.len());
        let mut out = Self::csv_header(n);
        out.push('\n');
        for (idx, p) in self.points.iter().enumerate() {
            let mut row: Vec<String> = vec![p.k.to_string()];
            row.extend(p.x.iter().map(|v| format_real(*v)));
            row.push(format_real(p.value.lo()));
            row.push(format_real(p.value.hi()));
            match self.steps.get(idx) {
                Some(s) => {
                    for g in s.subgradient.iter() {
                        row.push(format_real(g.lo()));
                        row.push(format_real(g.hi()));
                    }
                    row.extend(s.direction.iter().map(|v| format_real(*v)));
                    row.push(format_real(s.alpha));
                }
                None => row.extend(std::iter::repeat_n(String::new(), 3 * n + 1)),
            }
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn point_key(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| v.to_bits()).collect()
}

struct Evaluator<'a> {
    f: &'a Ivf,
    cache: Option<HashMap<Vec<u64>, Interval>>,
}

impl Evaluator<'_> {
    fn eval(&mut self, x: &[f64]) -> Result<Interval, IvfError> {
        match &mut self.cache {
            None => self.f.eval(x),
            Some(cache) => {
                let key = point_key(x);
                if let Some(v) = cache.get(&key) {
                    return Ok(*v);
                }
                let v = self.f.eval(x)?;
                cache.insert(key, v);
                Ok(v)
            }
        }
    }
}

fn is_zero_direction(w: &[f64]) -> bool {
    w.iter().all(|v| v.abs() <= ZERO_DIRECTION_TOLERANCE)
}

/// Runs `cfg.max_iter` iterations of the gH-subgradient method on `f`.
pub fn solve(f: &Ivf, cfg: &SolverConfig) -> Result<(Archive, IterationTrace), SolverError> {
    if !f.has_oracle() {
        return Err(SolverError::InvalidConfig("the IVF has no subgradient oracle".into()));
    }
    if cfg.x0.len() != f.dim() {
        return Err(SolverError::InvalidConfig(format!(
            "initial point has dimension {}, the function {}",
            cfg.x0.len(),
            f.dim()
        )));
    }
    cfg.schedule.validate(cfg.max_iter)?;

    let mut ev = Evaluator {
        f,
        cache: cfg.memoize.then(HashMap::new),
    };
    let mut x = cfg.x0.clone();
    let mut fx = ev.eval(&x).map_err(|source| SolverError::Evaluation { k: 1, source })?;
    let mut archive = Archive::seeded(x.clone(), fx);
    let mut trace = IterationTrace {
        points: vec![TracePoint {
            k: 1,
            x: x.clone(),
            value: fx,
        }],
        steps: Vec::with_capacity(cfg.max_iter),
    };

    for k in 1..=cfg.max_iter {
        let oracle_err = |source| SolverError::OracleFailure { k, source };
        let mut g = f.subgradient(&x).map_err(oracle_err)?;
        let mut w = g.w_map(&cfg.weights);
        let mut skipped = false;
        if is_zero_direction(&w) {
            match cfg.zero_direction_policy {
                ZeroDirectionPolicy::Stop => {
                    return Err(SolverError::ZeroDirectionExhausted {
                        k,
                        x,
                        partial: Box::new((archive, trace)),
                    })
                }
                ZeroDirectionPolicy::Skip => {
                    if let Some(alt) = f.reselect_subgradient(&x, &g) {
                        let alt = alt.map_err(oracle_err)?;
                        let alt_w = alt.w_map(&cfg.weights);
                        if alt.len() == g.len() && !is_zero_direction(&alt_w) {
                            g = alt;
                            w = alt_w;
                        }
                    }
                    skipped = is_zero_direction(&w);
                }
            }
        }

        let alpha = cfg.schedule.step(k);
        let delta = if skipped {
            ArchiveDelta::default()
        } else {
            x = x.iter().zip(&w).map(|(xi, wi)| xi - alpha * wi).collect();
            fx = ev
                .eval(&x)
                .map_err(|source| SolverError::Evaluation { k: k + 1, source })?;
            archive
                .update(&x, fx, |p| ev.eval(p))
                .map_err(|source| SolverError::Evaluation { k, source })?
        };

        if cfg.check_invariants {
            if let Some(detail) = archive
                .invariant_violation(|p| ev.eval(p))
                .map_err(|source| SolverError::Evaluation { k, source })?
            {
                return Err(SolverError::ArchiveInvariant { k, detail });
            }
        }

        trace.steps.push(StepRecord {
            k,
            subgradient: g,
            direction: w,
            alpha,
            skipped,
            delta,
        });
        trace.points.push(TracePoint {
            k: k + 1,
            x: x.clone(),
            value: fx,
        });
    }
    Ok((archive, trace))
}

/// Greedy `⪯`-monotone subsequence of the iterate values: keeps each iterate
/// whose value `⪯` the last kept one.
pub fn best_trajectory(trace: &IterationTrace) -> Result<Vec<(usize, Interval)>, SolverError> {
    let mut points = trace.points.iter();
    let first = points.next().ok_or(SolverError::EmptyTrace)?;
    let mut out = vec![(first.k, first.value)];
    for p in points {
        let last = out.last().expect("non-empty").1;
        if p.value.precedes(&last) {
            out.push((p.k, p.value));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked_example::kinked_example;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn example_cfg(m: usize) -> SolverConfig {
        SolverConfig::new(
            Weights::from_lower_weight(2.0 / 3.0).unwrap(),
            m,
            vec![-1.0],
            StepSchedule::harmonic(1.0),
        )
        .with_invariant_checks(true)
    }

    #[test]
    fn worked_example_two_iterations() {
        let f = kinked_example();
        let (arch, trace) = solve(&f, &example_cfg(2)).unwrap();
        assert!((trace.points[1].x[0] - 1.0 / 6.0).abs() < 1e-12);
        assert!(trace.points[2].x[0].abs() < 1e-12);
        assert_eq!(arch.efficient_set.len(), 1);
        assert!(arch.efficient_set[0][0].abs() < 1e-12);
        assert_eq!(arch.nondominated_set, vec![iv(3.0, 7.0)]);
        assert_eq!(trace.steps.len(), 2);
    }

    #[test]
    fn zero_iterations() {
        let f = kinked_example();
        let (arch, trace) = solve(&f, &example_cfg(0)).unwrap();
        assert_eq!(arch.efficient_set, vec![vec![-1.0]]);
        assert_eq!(arch.nondominated_set, vec![iv(4.0, 7.0)]);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.points.len(), 1);
    }

    #[test]
    fn later_iterations_never_displace_the_optimum() {
        let f = kinked_example();
        let (arch, trace) = solve(&f, &example_cfg(200)).unwrap();
        assert_eq!(arch.nondominated_set, vec![iv(3.0, 7.0)]);
        assert_eq!(arch.efficient_set.len(), 1);
        assert_eq!(trace.steps.len(), 200);
    }

    #[test]
    fn degenerate_square_converges() {
        let f = Ivf::degenerate(1, |x| x[0] * x[0]).with_oracle(|x: &[f64]| {
            IntervalVector::new(vec![Interval::point(2.0 * x[0]).unwrap()]).map_err(|e| e.to_string())
        });
        let cfg = SolverConfig::new(
            Weights::from_lower_weight(0.3).unwrap(),
            50,
            vec![1.0],
            StepSchedule::harmonic(1.0),
        )
        .with_policy(ZeroDirectionPolicy::Skip);
        let (arch, _) = solve(&f, &cfg).unwrap();
        assert_eq!(arch.efficient_set.len(), 1);
        assert!(arch.efficient_set[0][0].abs() < 0.2);
    }

    #[test]
    fn stop_policy_reports_partial_state() {
        let f = Ivf::degenerate(1, |x| x[0] * x[0]).with_oracle(|x: &[f64]| {
            IntervalVector::new(vec![Interval::point(2.0 * x[0]).unwrap()]).map_err(|e| e.to_string())
        });
        let cfg = SolverConfig::new(
            Weights::from_lower_weight(0.5).unwrap(),
            10,
            vec![1.0],
            StepSchedule::harmonic(1.0),
        );
        // 1 -> -1 -> 0, then the gradient vanishes
        match solve(&f, &cfg) {
            Err(SolverError::ZeroDirectionExhausted { k, x, partial }) => {
                assert_eq!(k, 3);
                assert_eq!(x, vec![0.0]);
                assert_eq!(partial.0.efficient_set, vec![vec![0.0]]);
                assert_eq!(partial.1.steps.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn skip_uses_reselected_subgradient() {
        struct Nudging;
        impl crate::ivf::SubgradientOracle for Nudging {
            fn subgradient(&self, x: &[f64]) -> Result<IntervalVector, String> {
                IntervalVector::new(vec![Interval::hull2(-x[0].abs(), x[0].abs())]).map_err(|e| e.to_string())
            }
            fn reselect(&self, _x: &[f64], _prev: &IntervalVector) -> Option<Result<IntervalVector, String>> {
                Some(IntervalVector::new(vec![iv(1.0, 1.0)]).map_err(|e| e.to_string()))
            }
        }
        let f = Ivf::from_endpoints(1, |x| -x[0].abs(), |x| x[0].abs()).with_oracle(Nudging);
        let cfg = SolverConfig::new(
            Weights::from_lower_weight(0.5).unwrap(),
            1,
            vec![2.0],
            StepSchedule::harmonic(0.5),
        )
        .with_policy(ZeroDirectionPolicy::Skip);
        let (_, trace) = solve(&f, &cfg).unwrap();
        assert!(!trace.steps[0].skipped);
        assert_eq!(trace.points[1].x, vec![1.5]);
    }

    #[test]
    fn missing_oracle_is_config_error() {
        let f = Ivf::degenerate(1, |x| x[0]);
        let cfg = example_cfg(1);
        assert!(matches!(solve(&f, &cfg), Err(SolverError::InvalidConfig(_))));
    }

    #[test]
    fn oracle_failure_propagates() {
        let f = Ivf::degenerate(1, |x| x[0]).with_oracle(|_: &[f64]| Err("boom".to_string()));
        assert!(matches!(
            solve(&f, &example_cfg(1)),
            Err(SolverError::OracleFailure { k: 1, .. })
        ));
    }

    #[test]
    fn invalid_schedule_rejected() {
        let f = kinked_example();
        let mut cfg = example_cfg(3);
        cfg.schedule = StepSchedule::custom(|k| 2.0 - k as f64);
        assert!(matches!(solve(&f, &cfg), Err(SolverError::InvalidConfig(_))));
    }

    #[test]
    fn schedule_parsing() {
        let s: StepSchedule = "shifted:7,100000".parse().unwrap();
        assert_eq!(s.step(1), 7.0 / 100001.0);
        assert_eq!(s.to_string(), "shifted:7,100000");
        let h: StepSchedule = "harmonic:1".parse().unwrap();
        assert_eq!(h.step(4), 0.25);
        assert!("shifted:7".parse::<StepSchedule>().is_err());
        assert!("constant:1".parse::<StepSchedule>().is_err());
    }

    fn eval_table(table: &[(f64, Interval)]) -> impl FnMut(&[f64]) -> Result<Interval, IvfError> + '_ {
        move |x| {
            Ok(table
                .iter()
                .find(|(p, _)| *p == x[0])
                .map(|(_, v)| *v)
                .expect("point in table"))
        }
    }

    #[test]
    fn archive_replaces_dominated_entry() {
        let table = [(-1.0, iv(4.0, 7.0)), (1.0 / 6.0, iv(19.0 / 6.0, 7.0))];
        let mut arch = Archive::seeded(vec![-1.0], iv(4.0, 7.0));
        let d = arch
            .update(&[1.0 / 6.0], iv(19.0 / 6.0, 7.0), eval_table(&table))
            .unwrap();
        assert_eq!(arch.efficient_set, vec![vec![1.0 / 6.0]]);
        assert_eq!(arch.nondominated_set, vec![iv(19.0 / 6.0, 7.0)]);
        assert_eq!(d.removed_efficient, vec![vec![-1.0]]);
        assert_eq!(d.removed_nondominated, vec![iv(4.0, 7.0)]);
    }

    #[test]
    fn archive_rejects_dominated_newcomer() {
        let table = [(0.0, iv(3.0, 7.0)), (0.5, iv(3.5, 7.0))];
        let mut arch = Archive::seeded(vec![0.0], iv(3.0, 7.0));
        let d = arch.update(&[0.5], iv(3.5, 7.0), eval_table(&table)).unwrap();
        assert_eq!(arch, Archive::seeded(vec![0.0], iv(3.0, 7.0)));
        assert!(!d.inserted_efficient && !d.inserted_nondominated);
    }

    #[test]
    fn archive_appends_incomparable() {
        let table = [(0.0, iv(3.0, 7.0)), (2.0, iv(2.0, 9.0))];
        let mut arch = Archive::seeded(vec![0.0], iv(3.0, 7.0));
        arch.update(&[2.0], iv(2.0, 9.0), eval_table(&table)).unwrap();
        assert_eq!(arch.efficient_set, vec![vec![0.0], vec![2.0]]);
        assert_eq!(arch.nondominated_set, vec![iv(3.0, 7.0), iv(2.0, 9.0)]);
    }

    #[test]
    fn equal_value_evicts_from_values_but_coexists_in_points() {
        let table = [(0.0, iv(3.0, 7.0)), (1.0, iv(3.0, 7.0))];
        let mut arch = Archive::seeded(vec![0.0], iv(3.0, 7.0));
        let d = arch.update(&[1.0], iv(3.0, 7.0), eval_table(&table)).unwrap();
        assert_eq!(arch.efficient_set, vec![vec![0.0], vec![1.0]]);
        assert_eq!(arch.nondominated_set, vec![iv(3.0, 7.0)]);
        assert_eq!(d.removed_nondominated, vec![iv(3.0, 7.0)]);
        assert!(d.inserted_nondominated);
    }

    #[test]
    fn best_trajectory_of_worked_example() {
        let f = kinked_example();
        let (_, trace) = solve(&f, &example_cfg(2)).unwrap();
        let best = best_trajectory(&trace).unwrap();
        let ks: Vec<usize> = best.iter().map(|b| b.0).collect();
        assert_eq!(ks, vec![1, 2, 3]);
        assert_eq!(best[0].1, iv(4.0, 7.0));
        assert_eq!(best[2].1, iv(3.0, 7.0));

        let (_, trace) = solve(&f, &example_cfg(0)).unwrap();
        assert_eq!(best_trajectory(&trace).unwrap(), vec![(1, iv(4.0, 7.0))]);
        assert!(matches!(
            best_trajectory(&IterationTrace::default()),
            Err(SolverError::EmptyTrace)
        ));
    }

    #[test]
    fn memoized_run_matches_plain_run() {
        let f = kinked_example();
        let plain = solve(&f, &example_cfg(50)).unwrap();
        let memo = solve(&f, &example_cfg(50).with_memoization(true)).unwrap();
        assert_eq!(plain, memo);
    }

    #[test]
    fn trace_csv_shape() {
        let f = kinked_example();
        let (_, trace) = solve(&f, &example_cfg(2)).unwrap();
        let csv = trace.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,x1,F_lo,F_hi,g1_lo,g1_hi,W1,alpha");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1,-1,4,7,-1.5,-0.5,"));
        assert!(lines[3].ends_with(",,,,"));
    }
}
