//! Interval-valued functions `F(x) = [f_lower(x), f_upper(x)]` over R^n.
//!
//! Numeric gH-derivatives, the gH-subgradient inequality checker, and
//! sampling diagnostics for convexity and efficient directions live here.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{interval_dot, Interval, IntervalError, IntervalVector};

/// Agreement tolerance between successive refined quotients, and between the
/// left and right quotients when deciding gH-differentiability.
pub const QUOTIENT_TOLERANCE: f64 = 1e-6;
/// Default slack on the `⪯` comparison used by the checkers.
pub const DEFAULT_SLACK: f64 = 1e-9;

const MAX_HALVINGS: usize = 30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IvfError {
    #[error("expected a point of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("f_lower(x) = {lower} exceeds f_upper(x) = {upper}")]
    EndpointOrderViolation { lower: f64, upper: f64 },
    #[error("non-finite function value [{lower}, {upper}]")]
    NonFiniteValue { lower: f64, upper: f64 },
    #[error("point lies outside the function's domain box")]
    OutsideDomain,
    #[error("not gH-differentiable at coordinate {index}: left {left} vs right {right}")]
    NotGhDifferentiableAt {
        index: usize,
        left: Interval,
        right: Interval,
    },
    #[error("no subgradient oracle attached")]
    MissingOracle,
    #[error("subgradient oracle failed: {0}")]
    Oracle(String),
    #[error("step must be positive, got {0}")]
    InvalidStep(f64),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// A source of gH-subgradients.
pub trait SubgradientOracle: Send + Sync {
    fn subgradient(&self, x: &[f64]) -> Result<IntervalVector, String>;

    /// Second chance after a subgradient whose scalarization vanished.
    /// Returning `None` means no alternative is available.
    fn reselect(&self, _x: &[f64], _previous: &IntervalVector) -> Option<Result<IntervalVector, String>> {
        None
    }
}

impl<F> SubgradientOracle for F
where
    F: Fn(&[f64]) -> Result<IntervalVector, String> + Send + Sync,
{
    fn subgradient(&self, x: &[f64]) -> Result<IntervalVector, String> {
        self(x)
    }
}

type EndpointFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type PairFn = Arc<dyn Fn(&[f64]) -> (f64, f64) + Send + Sync>;

#[derive(Clone)]
enum Endpoints {
    Separate { lower: EndpointFn, upper: EndpointFn },
    Joint(PairFn),
}

/// An interval-valued function on R^n.
///
/// The endpoint functions must be pure; every evaluation checks
/// `f_lower(x) <= f_upper(x)`.
#[derive(Clone)]
pub struct Ivf {
    dim: usize,
    endpoints: Endpoints,
    domain: Option<(Vec<f64>, Vec<f64>)>,
    oracle: Option<Arc<dyn SubgradientOracle>>,
}

impl fmt::Debug for Ivf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ivf")
            .field("dim", &self.dim)
            .field("domain", &self.domain)
            .field("has_oracle", &self.oracle.is_some())
            .finish()
    }
}

impl Ivf {
    pub fn from_endpoints<L, U>(dim: usize, lower: L, upper: U) -> Self
    where
        L: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        U: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        assert!(dim > 0, "an IVF needs at least one variable");
        Ivf {
            dim,
            endpoints: Endpoints::Separate {
                lower: Arc::new(lower),
                upper: Arc::new(upper),
            },
            domain: None,
            oracle: None,
        }
    }

    /// For functions whose endpoints are cheapest to compute together.
    pub fn from_pair_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> (f64, f64) + Send + Sync + 'static,
    {
        assert!(dim > 0, "an IVF needs at least one variable");
        Ivf {
            dim,
            endpoints: Endpoints::Joint(Arc::new(f)),
            domain: None,
            oracle: None,
        }
    }

    /// The degenerate IVF `[g(x), g(x)]`.
    pub fn degenerate<G>(dim: usize, g: G) -> Self
    where
        G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::from_pair_fn(dim, move |x| {
            let v = g(x);
            (v, v)
        })
    }

    pub fn with_oracle<O: SubgradientOracle + 'static>(mut self, oracle: O) -> Self {
        self.oracle = Some(Arc::new(oracle));
        self
    }

    /// Restricts evaluation to the box `lo <= x <= hi`.
    pub fn with_domain(mut self, lo: Vec<f64>, hi: Vec<f64>) -> Self {
        assert_eq!(lo.len(), self.dim);
        assert_eq!(hi.len(), self.dim);
        self.domain = Some((lo, hi));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_oracle(&self) -> bool {
        self.oracle.is_some()
    }

    fn check_point(&self, x: &[f64]) -> Result<(), IvfError> {
        if x.len() != self.dim {
            return Err(IvfError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if let Some((lo, hi)) = &self.domain {
            let inside = x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(v, (a, b))| *a <= *v && *v <= *b);
            if !inside {
                return Err(IvfError::OutsideDomain);
            }
        }
        Ok(())
    }

    fn raw(&self, x: &[f64]) -> (f64, f64) {
        match &self.endpoints {
            Endpoints::Separate { lower, upper } => (lower(x), upper(x)),
            Endpoints::Joint(f) => f(x),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<Interval, IvfError> {
        self.check_point(x)?;
        let (lower, upper) = self.raw(x);
        if !lower.is_finite() || !upper.is_finite() {
            return Err(IvfError::NonFiniteValue { lower, upper });
        }
        if lower > upper {
            return Err(IvfError::EndpointOrderViolation { lower, upper });
        }
        Ok(Interval::new(lower, upper)?)
    }

    pub fn lower_at(&self, x: &[f64]) -> Result<f64, IvfError> {
        Ok(self.eval(x)?.lo())
    }

    pub fn upper_at(&self, x: &[f64]) -> Result<f64, IvfError> {
        Ok(self.eval(x)?.hi())
    }

    /// The lower endpoint function as a degenerate IVF.
    pub fn lower_as_degenerate(&self) -> Ivf {
        let f = self.clone();
        let mut out = Ivf::degenerate(self.dim, move |x| f.raw(x).0);
        out.domain = self.domain.clone();
        out
    }

    /// The upper endpoint function as a degenerate IVF.
    pub fn upper_as_degenerate(&self) -> Ivf {
        let f = self.clone();
        let mut out = Ivf::degenerate(self.dim, move |x| f.raw(x).1);
        out.domain = self.domain.clone();
        out
    }

    pub fn subgradient(&self, x: &[f64]) -> Result<IntervalVector, IvfError> {
        let oracle = self.oracle.as_ref().ok_or(IvfError::MissingOracle)?;
        self.check_point(x)?;
        let g = oracle.subgradient(x).map_err(IvfError::Oracle)?;
        if g.len() != self.dim {
            return Err(IvfError::Oracle(format!(
                "oracle returned {} components for a {}-dimensional function",
                g.len(),
                self.dim
            )));
        }
        Ok(g)
    }

    pub fn reselect_subgradient(
        &self,
        x: &[f64],
        previous: &IntervalVector,
    ) -> Option<Result<IntervalVector, IvfError>> {
        let oracle = self.oracle.as_ref()?;
        oracle
            .reselect(x, previous)
            .map(|r| r.map_err(IvfError::Oracle))
    }
}

/// One-sided (and, when they agree, two-sided) gH-partial derivative estimates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GhPartial {
    pub left: Interval,
    pub right: Interval,
    pub two_sided: Option<Interval>,
}

/// Refined one-sided quotients of the two endpoint functions along `e_i`.
///
/// `sign` is +1 for the right quotient and -1 for the left. Each endpoint
/// sequence is Richardson-extrapolated (`2 q(h/2) - q(h)`) while halving the
/// step, until two successive extrapolations agree within
/// [`QUOTIENT_TOLERANCE`].
fn one_sided(f: &Ivf, x: &[f64], i: usize, h: f64, sign: f64) -> Result<Interval, IvfError> {
    let base = f.eval(x)?;
    let quotient = |step: f64| -> Result<(f64, f64), IvfError> {
        let mut xp = x.to_vec();
        xp[i] += sign * step;
        let v = f.eval(&xp)?;
        let t = sign * step;
        Ok(((v.lo() - base.lo()) / t, (v.hi() - base.hi()) / t))
    };
    let mut step = h;
    let mut q_prev = quotient(step)?;
    let mut extrap_prev: Option<(f64, f64)> = None;
    // (change between successive extrapolations, later extrapolation)
    let mut best: Option<(f64, (f64, f64))> = None;
    for _ in 0..MAX_HALVINGS {
        step *= 0.5;
        let q = quotient(step)?;
        let extrap = (2.0 * q.0 - q_prev.0, 2.0 * q.1 - q_prev.1);
        if let Some(p) = extrap_prev {
            let change = (p.0 - extrap.0).abs().max((p.1 - extrap.1).abs());
            if best.is_none_or(|(c, _)| change < c) {
                best = Some((change, extrap));
            }
            if change <= QUOTIENT_TOLERANCE {
                break;
            }
            // roundoff has taken over once the change keeps growing
            if best.is_some_and(|(c, _)| change > 1e3 * c.max(f64::EPSILON)) {
                break;
            }
        }
        extrap_prev = Some(extrap);
        q_prev = q;
    }
    let best = best.map_or(q_prev, |(_, e)| e);
    // (1/t) ⊙ (F(x + t e_i) ⊖_gH F(x)) is the hull of the two endpoint quotients.
    Ok(Interval::hull2(best.0, best.1))
}

fn agree(a: &Interval, b: &Interval) -> bool {
    (a.lo() - b.lo()).abs() <= QUOTIENT_TOLERANCE && (a.hi() - b.hi()).abs() <= QUOTIENT_TOLERANCE
}

pub fn numeric_gh_partial(f: &Ivf, x: &[f64], i: usize, h: f64) -> Result<GhPartial, IvfError> {
    if h.is_nan() || h <= 0.0 {
        return Err(IvfError::InvalidStep(h));
    }
    f.check_point(x)?;
    if i >= f.dim() {
        return Err(IvfError::DimensionMismatch {
            expected: f.dim(),
            got: i + 1,
        });
    }
    let right = one_sided(f, x, i, h, 1.0)?;
    let left = one_sided(f, x, i, h, -1.0)?;
    let two_sided = agree(&left, &right).then(|| {
        Interval::hull2(0.5 * (left.lo() + right.lo()), 0.5 * (left.hi() + right.hi()))
    });
    Ok(GhPartial {
        left,
        right,
        two_sided,
    })
}

pub fn numeric_gh_gradient(f: &Ivf, x: &[f64], h: f64) -> Result<IntervalVector, IvfError> {
    let mut out = Vec::with_capacity(f.dim());
    for i in 0..f.dim() {
        let p = numeric_gh_partial(f, x, i, h)?;
        match p.two_sided {
            Some(d) => out.push(d),
            None => {
                return Err(IvfError::NotGhDifferentiableAt {
                    index: i,
                    left: p.left,
                    right: p.right,
                })
            }
        }
    }
    Ok(IntervalVector::new(out)?)
}

/// A sample point at which `(x - x̄)^T ⊙ G ⪯ F(x) ⊖_gH F(x̄)` failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubgradientViolation {
    pub sample_index: usize,
    pub sample: Vec<f64>,
    pub lhs: Interval,
    pub rhs: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubgradientCheckReport {
    pub point: Vec<f64>,
    pub candidate: IntervalVector,
    pub violations: Vec<SubgradientViolation>,
    pub passed: bool,
}

impl SubgradientCheckReport {
    /// Line-oriented rendering: a header, one line per violation, a verdict.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "point {:?}\ncandidate {}\n",
            self.point, self.candidate
        );
        for v in &self.violations {
            s.push_str(&format!(
                "violation sample#{} x={:?} lhs={} rhs={}\n",
                v.sample_index, v.sample, v.lhs, v.rhs
            ));
        }
        s.push_str(if self.passed { "passed\n" } else { "failed\n" });
        s
    }
}

/// Slack scaled by the magnitude of the intervals being compared, so that
/// roundoff in large function values is not reported as a violation.
fn scaled_slack(slack: f64, values: &[Interval]) -> f64 {
    slack * values.iter().fold(1.0_f64, |m, v| m.max(v.norm()))
}

/// Checks the gH-subgradient inequality at every sample with the default slack.
pub fn check_subgradient(
    f: &Ivf,
    x_bar: &[f64],
    g: &IntervalVector,
    samples: &[Vec<f64>],
) -> Result<SubgradientCheckReport, IvfError> {
    check_subgradient_with_slack(f, x_bar, g, samples, DEFAULT_SLACK)
}

pub fn check_subgradient_with_slack(
    f: &Ivf,
    x_bar: &[f64],
    g: &IntervalVector,
    samples: &[Vec<f64>],
    slack: f64,
) -> Result<SubgradientCheckReport, IvfError> {
    if g.len() != f.dim() {
        return Err(IvfError::DimensionMismatch {
            expected: f.dim(),
            got: g.len(),
        });
    }
    let f_bar = f.eval(x_bar)?;
    let mut violations = Vec::new();
    for (idx, x) in samples.iter().enumerate() {
        let fx = f.eval(x)?;
        let diff: Vec<f64> = x.iter().zip(x_bar).map(|(a, b)| a - b).collect();
        let lhs = interval_dot(&diff, g)?;
        let rhs = fx.gh_sub(f_bar);
        let tol = scaled_slack(slack, &[lhs, fx, f_bar]);
        if !lhs.precedes_within(&rhs, tol) {
            violations.push(SubgradientViolation {
                sample_index: idx,
                sample: x.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(SubgradientCheckReport {
        point: x_bar.to_vec(),
        candidate: g.clone(),
        passed: violations.is_empty(),
        violations,
    })
}

/// Which endpoint function a convexity witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    Lower,
    Upper,
}

/// `f(λ x1 + (1-λ) x2) > λ f(x1) + (1-λ) f(x2)` for the given endpoint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityWitness {
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub lambda: f64,
    pub endpoint: Endpoint,
    pub value_at_mix: f64,
    pub chord_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub convex: bool,
    pub witness: Option<ConvexityWitness>,
    pub trials_run: usize,
}

/// Samples chords in `domain_box` and tests convexity of both endpoint
/// functions; an IVF is convex exactly when both are.
pub fn check_convexity(
    f: &Ivf,
    domain_box: (&[f64], &[f64]),
    trials: usize,
    seed: u64,
) -> Result<ConvexityReport, IvfError> {
    check_convexity_with_slack(f, domain_box, trials, seed, DEFAULT_SLACK)
}

pub fn check_convexity_with_slack(
    f: &Ivf,
    domain_box: (&[f64], &[f64]),
    trials: usize,
    seed: u64,
    slack: f64,
) -> Result<ConvexityReport, IvfError> {
    let (lo, hi) = domain_box;
    if lo.len() != f.dim() || hi.len() != f.dim() {
        return Err(IvfError::DimensionMismatch {
            expected: f.dim(),
            got: lo.len().min(hi.len()),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let x1 = uniform_point(&mut rng, lo, hi);
        let x2 = uniform_point(&mut rng, lo, hi);
        let lambda: f64 = rng.random();
        let mix: Vec<f64> = x1
            .iter()
            .zip(&x2)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        let (f1, f2, fm) = (f.eval(&x1)?, f.eval(&x2)?, f.eval(&mix)?);
        for endpoint in [Endpoint::Lower, Endpoint::Upper] {
            let pick = |v: &Interval| match endpoint {
                Endpoint::Lower => v.lo(),
                Endpoint::Upper => v.hi(),
            };
            let chord = lambda * pick(&f1) + (1.0 - lambda) * pick(&f2);
            let at_mix = pick(&fm);
            let tol = slack * 1f64.max(pick(&f1).abs()).max(pick(&f2).abs()).max(at_mix.abs());
            if at_mix > chord + tol {
                return Ok(ConvexityReport {
                    convex: false,
                    witness: Some(ConvexityWitness {
                        x1,
                        x2,
                        lambda,
                        endpoint,
                        value_at_mix: at_mix,
                        chord_value: chord,
                    }),
                    trials_run: t + 1,
                });
            }
        }
    }
    Ok(ConvexityReport {
        convex: true,
        witness: None,
        trials_run: trials,
    })
}

/// Samples condition (i) of an efficient direction: `F(x̄) ⋠ F(x̄ + λ d)` for
/// `λ = δ j / (samples + 1)`, `j = 1..=samples`.
pub fn check_efficient_direction_condition_i(
    f: &Ivf,
    x_bar: &[f64],
    d: &[f64],
    delta: f64,
    samples: usize,
) -> Result<bool, IvfError> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(IvfError::InvalidStep(delta));
    }
    if d.len() != f.dim() {
        return Err(IvfError::DimensionMismatch {
            expected: f.dim(),
            got: d.len(),
        });
    }
    let f_bar = f.eval(x_bar)?;
    for j in 1..=samples.max(1) {
        let lambda = delta * j as f64 / (samples.max(1) + 1) as f64;
        let x: Vec<f64> = x_bar.iter().zip(d).map(|(a, b)| a + lambda * b).collect();
        if f_bar.precedes(&f.eval(&x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn uniform_point(rng: &mut ChaCha8Rng, lo: &[f64], hi: &[f64]) -> Vec<f64> {
    lo.iter()
        .zip(hi)
        .map(|(a, b)| if a == b { *a } else { rng.random_range(*a..=*b) })
        .collect()
}

/// Seeded uniform samples from the box `lo <= x <= hi`.
pub fn random_samples(lo: &[f64], hi: &[f64], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| uniform_point(&mut rng, lo, hi)).collect()
}

/// One-dimensional grid `lo, lo + step, ...` up to `hi` inclusive.
pub fn grid_samples_1d(lo: f64, hi: f64, step: f64) -> Vec<Vec<f64>> {
    assert!(step > 0.0 && lo <= hi);
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|j| vec![(lo + j as f64 * step).min(hi)]).collect()
}
