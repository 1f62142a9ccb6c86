//! The one-dimensional nonsmooth test problem
//!
//! ```text
//! F(x) = [3, 7] ⊖_gH [-1, 0] ⊙ |x|   for -1 <= x <= 1
//! F(x) = [3, 5] ⊕  [1, 2]  ⊙ |x|    otherwise
//! ```
//!
//! on the domain `[-3, 3]`. Its unique efficient solution is `x = 0` with
//! value `[3, 7]`; it is not gH-differentiable at `-1`, `0` and `1`.

use crate::interval::{Interval, IntervalVector};
use crate::ivf::Ivf;

/// The subgradient chosen at the kink `x = -1`.
pub const KINK_SUBGRADIENT_AT_MINUS_ONE: (f64, f64) = (-1.5, -0.5);

fn value(x: f64) -> Interval {
    let ax = Interval::new(x.abs(), x.abs()).expect("finite |x|");
    if (-1.0..=1.0).contains(&x) {
        Interval::new(3.0, 7.0)
            .unwrap()
            .gh_sub(Interval::new(-1.0, 0.0).unwrap().mul(ax))
    } else {
        Interval::new(3.0, 5.0)
            .unwrap()
            .add(Interval::new(1.0, 2.0).unwrap().mul(ax))
    }
}

/// A gH-subgradient of the worked example at `x`.
///
/// Smooth points get the gH-derivative; the kinks get fixed members of the
/// subdifferential: `[-3/2, -1/2]` at -1, `[-1/2, 1/2]` at 0 and
/// `[1/2, 3/2]` at 1.
pub fn kinked_example_subgradient(x: f64) -> Interval {
    let (lo, hi) = if x == -1.0 {
        KINK_SUBGRADIENT_AT_MINUS_ONE
    } else if x == 0.0 {
        (-0.5, 0.5)
    } else if x == 1.0 {
        (0.5, 1.5)
    } else if x < -1.0 {
        (-2.0, -1.0)
    } else if x < 0.0 {
        (-1.0, 0.0)
    } else if x < 1.0 {
        (0.0, 1.0)
    } else {
        (1.0, 2.0)
    };
    Interval::new(lo, hi).unwrap()
}

/// The worked example as an [`Ivf`] with its subgradient oracle attached.
pub fn kinked_example() -> Ivf {
    Ivf::from_pair_fn(1, |x| {
        let v = value(x[0]);
        (v.lo(), v.hi())
    })
    .with_domain(vec![-3.0], vec![3.0])
    .with_oracle(|x: &[f64]| {
        IntervalVector::new(vec![kinked_example_subgradient(x[0])]).map_err(|e| e.to_string())
    })
}
