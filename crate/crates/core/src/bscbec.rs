//! Closed-form analysis of the broadcast pair where receiver 1 sees a
//! BSC(p) and receiver 2 sees a BEC(e).
//!
//! The gap `D(x) = I(X;Y1) - I(X;Y2)` under `P(X=0) = x` equals
//! `H(x*p) - (1-e) H(x) - H(p)`. Its shape decides where the pair sits in
//! the degraded / less noisy / more capable / essentially less noisy
//! hierarchy, with thresholds `2p <= 4p(1-p) <= H(p)` on `e`.

use serde::{Deserialize, Serialize};

use crate::channels::Dmc;
use crate::error::{Error, Result};
use crate::probcore::{binary_convolve, binary_entropy};

/// Width of the band around a threshold inside which a pair is flagged.
pub const BOUNDARY_BAND: f64 = 1e-9;

const BISECTION_LO: f64 = 1e-9;
const BISECTION_STEPS: usize = 200;

/// Grid spacing of the midpoint-convexity cross-check.
const CONVEXITY_STEP: f64 = 1e-3;
const CONVEXITY_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BscBecPair {
    p: f64,
    e: f64,
}

impl BscBecPair {
    pub fn new(p: f64, e: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::Domain { what: "BSC crossover must lie in [0, 1/2]", value: p });
        }
        if !(0.0..=1.0).contains(&e) {
            return Err(Error::Domain { what: "BEC erasure probability must lie in [0, 1]", value: e });
        }
        Ok(BscBecPair { p, e })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    /// The three thresholds `2p`, `4p(1-p)` and `H(p)`, in increasing order.
    pub fn thresholds(&self) -> [f64; 3] {
        let p = self.p;
        [2.0 * p, 4.0 * p * (1.0 - p), h(p)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairTag {
    /// `e <= 2p`: the BSC output is a degraded version of the BEC output.
    DegradedBscSide,
    /// `2p < e <= 4p(1-p)`: the BEC receiver is less noisy, not degrading.
    LessNoisyBecSide,
    /// `4p(1-p) < e <= H(p)`: the BEC receiver is more capable only.
    MoreCapableBecSide,
    /// `H(p) < e`: the BSC receiver is essentially less noisy.
    EssentiallyLessNoisyBscSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairClass {
    pub tag: PairTag,
    /// Set when `e` is within [`BOUNDARY_BAND`] of one of the thresholds.
    pub boundary: bool,
}

fn h(x: f64) -> f64 {
    binary_entropy(x).expect("probability argument")
}

fn conv(x: f64, p: f64) -> f64 {
    binary_convolve(x, p).expect("probability arguments")
}

fn check_x(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain { what: "P(X=0) must lie in [0, 1]", value: x });
    }
    Ok(())
}

/// `coef * J(x)` with `J(x) = log2((1-x)/x)`, taking `0 * inf = 0`.
fn scaled_j(coef: f64, x: f64) -> f64 {
    if coef == 0.0 {
        return 0.0;
    }
    let j = if x <= 0.0 {
        f64::INFINITY
    } else if x >= 1.0 {
        f64::NEG_INFINITY
    } else {
        ((1.0 - x) / x).log2()
    };
    coef * j
}

/// `D(x) = H(x*p) - (1-e) H(x) - H(p)`.
pub fn d_func(pair: &BscBecPair, x: f64) -> Result<f64> {
    check_x(x)?;
    let (p, e) = (pair.p, pair.e);
    Ok(h(conv(x, p)) - (1.0 - e) * h(x) - h(p))
}

/// `D'(x) = (1-2p) J(x*p) - (1-e) J(x)`. At the endpoints the one-sided
/// limit is returned, which is infinite whenever `e < 1`.
pub fn d_derivative(pair: &BscBecPair, x: f64) -> Result<f64> {
    check_x(x)?;
    let (p, e) = (pair.p, pair.e);
    let a = scaled_j(1.0 - 2.0 * p, conv(x, p));
    let b = scaled_j(1.0 - e, x);
    if a.is_infinite() && b.is_infinite() {
        // both poles at once happen only for p = 0, where D'(x) = e J(x)
        return Ok(scaled_j(e, x));
    }
    Ok(a - b)
}

/// Interior stationary point `r` of `D` on `(0, 1/2)`, if one exists.
///
/// `D` decreases on `(0, r)` and increases on `(r, 1/2)`. Such an `r`
/// exists exactly when `D'` is negative near zero and `D` has a strict
/// local maximum at `1/2`, i.e. when `e > 4p(1-p)` and `0 < p`, `e < 1`.
/// For `2p < e <= 4p(1-p)` the decrease runs all the way to `1/2` and no
/// interior root exists.
pub fn critical_point(pair: &BscBecPair) -> Result<Option<f64>> {
    let (p, e) = (pair.p, pair.e);
    if p >= 0.5 {
        return Err(Error::DegeneratePair);
    }
    if e <= 2.0 * p || e <= 4.0 * p * (1.0 - p) {
        return Ok(None);
    }
    let deriv = |x: f64| d_derivative(pair, x).expect("x inside the bracket");
    if deriv(BISECTION_LO) >= 0.0 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (BISECTION_LO, 0.5);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if deriv(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let r = if deriv(lo).abs() <= deriv(hi).abs() { lo } else { hi };
    Ok(Some(r))
}

/// Places the pair in the four regimes of the BSC/BEC hierarchy.
pub fn classify_pair(pair: &BscBecPair) -> PairClass {
    let e = pair.e;
    let [deg, ln, mc] = pair.thresholds();
    let tag = if e <= deg {
        PairTag::DegradedBscSide
    } else if e <= ln {
        PairTag::LessNoisyBecSide
    } else if e <= mc {
        PairTag::MoreCapableBecSide
    } else {
        PairTag::EssentiallyLessNoisyBscSide
    };
    let boundary = pair.thresholds().iter().any(|t| (e - t).abs() <= BOUNDARY_BAND);
    PairClass { tag, boundary }
}

/// Whether the BEC receiver is less noisy than the BSC receiver, decided by
/// convexity of `D`: true iff `e <= 4p(1-p)`.
///
/// The closed form is cross-checked against second differences of `D` on a
/// grid of step `1e-3`; a disagreement outside the boundary band is an
/// internal consistency error.
pub fn is_less_noisy_convexity(pair: &BscBecPair) -> Result<bool> {
    let threshold = 4.0 * pair.p * (1.0 - pair.p);
    let closed = pair.e <= threshold;
    if (pair.e - threshold).abs() <= BOUNDARY_BAND {
        return Ok(closed);
    }
    let sampled = midpoint_convex(pair);
    if sampled != closed {
        return Err(Error::Consistency(format!(
            "convexity of D for (p, e) = ({}, {}): closed form says {closed}, sampling says {sampled}",
            pair.p, pair.e
        )));
    }
    Ok(closed)
}

fn midpoint_convex(pair: &BscBecPair) -> bool {
    let n = (1.0 / CONVEXITY_STEP).round() as usize;
    let d: Vec<f64> = (0..=n).map(|k| d_func(pair, k as f64 / n as f64).expect("grid inside [0, 1]")).collect();
    // nonnegative second differences make the sampled sequence convex, which
    // implies midpoint convexity for every pair of grid points
    d.windows(3).all(|w| w[1] <= 0.5 * (w[0] + w[2]) + CONVEXITY_TOL)
}

/// Post-processing channel `W` from the BEC output to the BSC output with
/// `cascade(bec(e), W) = bsc(p)`, available when `e <= 2p`.
///
/// Erasures become fair coin flips; unerased symbols flip with probability
/// `(p - e/2) / (1 - e)`.
pub fn degrading_channel(pair: &BscBecPair) -> Option<Dmc> {
    let (p, e) = (pair.p, pair.e);
    if e > 2.0 * p {
        return None;
    }
    let delta = if e >= 1.0 { 0.5 } else { ((p - e / 2.0) / (1.0 - e)).clamp(0.0, 0.5) };
    Dmc::new(vec![vec![1.0 - delta, delta], vec![0.5, 0.5], vec![delta, 1.0 - delta]], vec!["0".into(), "1".into()])
        .ok()
}

/// `n` equally spaced samples `(x, D(x))` on `[0, 1]`.
pub fn d_curve(pair: &BscBecPair, n: usize) -> Result<Vec<(f64, f64)>> {
    if n < 2 {
        return Err(Error::Domain { what: "sample count must be at least 2", value: n as f64 });
    }
    (0..n)
        .map(|k| {
            let x = k as f64 / (n - 1) as f64;
            d_func(pair, x).map(|d| (x, d))
        })
        .collect()
}
