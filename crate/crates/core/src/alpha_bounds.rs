//! Sign function of the dissolution axiom and the admissible exponent range.
//!
//! With middle mass `p`, lateral masses `q`, `z = q/p` and lateral distance
//! `d_yz = c·d`, moving mass outward changes `P_α` at rate `-4 d p^(1+α) f`
//! where
//!
//! ```text
//! f(z,α,c) = (1+α)[z − z^α/2 + (z^(1+α)/2)(2 − c(2+α))/(1+α)] − 1/2
//! ```
//!
//! so the axiom holds locally iff `f < 0`. The value function `v(α,c)` is the
//! supremum of `f` over `z ≥ 0`; an exponent is admissible for threshold `c`
//! iff `v(α,c) < 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaInterval {
    pub c: f64,
    pub lower: Option<f64>,
    pub upper: f64,
    pub tolerance: f64,
}

impl AlphaInterval {
    /// Membership with the bracket tolerance; a missing lower bound reads
    /// as 0.
    pub fn contains(&self, alpha: f64) -> bool {
        let lo = self.lower.unwrap_or(0.0);
        alpha >= lo - self.tolerance && alpha <= self.upper + self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Witness {
    pub z: f64,
    pub c: f64,
    pub f: f64,
}

fn check_c(c: f64, closed_at_one: bool) -> Result<()> {
    let ok = if closed_at_one {
        (1.0..=2.0).contains(&c)
    } else {
        c > 1.0 && c <= 2.0
    };
    if ok {
        Ok(())
    } else {
        Err(Error::DomainError(format!("c = {c} outside its range")))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("alpha = {alpha} must be non-negative")))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("tolerance {tol} must be positive")))
    }
}

/// `f(z, α, c)`. At `α = 0` the convention `0^0 = 1` gives `f(0,0,c) = -1`.
pub fn f_eval(z: f64, alpha: f64, c: f64) -> Result<f64> {
    if !(z >= 0.0) || z.is_infinite() {
        return Err(Error::DomainError(format!("z = {z} must be non-negative")));
    }
    check_alpha(alpha)?;
    check_c(c, true)?;
    Ok(f_raw(z, alpha, c))
}

fn f_raw(z: f64, alpha: f64, c: f64) -> f64 {
    let za = z.powf(alpha);
    let b = 2.0 - c * (2.0 + alpha);
    (1.0 + alpha) * (z - za / 2.0 + z * za / 2.0 * b / (1.0 + alpha)) - 0.5
}

/// `v(α, c) = sup_{z ≥ 0} f(z, α, c)` and its maximizer. Unbounded growth is
/// reported as `(+∞, +∞)`.
pub fn v_eval(alpha: f64, c: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    check_c(c, false)?;
    let b = 2.0 - (2.0 + alpha) * c;

    if alpha == 0.0 {
        // f(z,0,c) = z(2−c) − 1
        return Ok(if c < 2.0 {
            (f64::INFINITY, f64::INFINITY)
        } else {
            (-1.0, 0.0)
        });
    }

    if alpha >= 1.0 {
        // f is concave and f'(z) ∝ g(z) = 2 − α z^(α−1) + B z^α is decreasing
        // from g(0) > 0, so the single root of g is the maximizer.
        let g = |z: f64| 2.0 - alpha * z.powf(alpha - 1.0) + b * z.powf(alpha);
        let hi = expand_until_negative(g, 1.0)?;
        let z = bisect_root(g, 0.0, hi)?;
        return Ok((f_raw(z, alpha, c), z));
    }

    // 0 < α < 1: sign f' = sign h with h(z) = 2 z^(1−α) − α + B z, which is
    // concave with h(0) = −α. Either h stays non-positive (f decreasing, sup
    // at z = 0) or it has a second root z2 past its peak where f has a local
    // maximum to compare against f(0) = −1/2.
    let h = |z: f64| 2.0 * z.powf(1.0 - alpha) - alpha + b * z;
    let zpeak = (2.0 * (1.0 - alpha) / -b).powf(1.0 / alpha);
    if !zpeak.is_finite() {
        return Ok((f64::INFINITY, f64::INFINITY));
    }
    if h(zpeak) <= 0.0 {
        return Ok((-0.5, 0.0));
    }
    let hi = match expand_until_negative(h, zpeak.max(f64::MIN_POSITIVE) * 2.0) {
        Ok(hi) => hi,
        Err(_) => return Ok((f64::INFINITY, f64::INFINITY)),
    };
    let z2 = bisect_root(h, zpeak, hi)?;
    let fz = f_raw(z2, alpha, c);
    if !fz.is_finite() {
        return Ok((f64::INFINITY, f64::INFINITY));
    }
    Ok(if fz > -0.5 { (fz, z2) } else { (-0.5, 0.0) })
}

/// Double `hi` until `g(hi) < 0`.
fn expand_until_negative(g: impl Fn(f64) -> f64, mut hi: f64) -> Result<f64> {
    for _ in 0..2048 {
        let v = g(hi);
        if v < 0.0 {
            return Ok(hi);
        }
        if !hi.is_finite() || v.is_nan() {
            break;
        }
        hi *= 2.0;
    }
    Err(Error::ConvergenceFailure(
        "no sign change while expanding the z bracket".into(),
    ))
}

/// Root of a function that is positive at `lo` and negative at `hi`.
fn bisect_root(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..2048 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if g(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::ConvergenceFailure("z bisection did not settle".into()))
}

/// Bisection on `α` for a sign change of `v(·, c)` given `v(lo) ≥ 0 > v(hi)`
/// or the reverse, reported by `lo_nonneg`.
fn bisect_alpha(c: f64, mut lo: f64, mut hi: f64, lo_nonneg: bool, tol: f64) -> Result<f64> {
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let nonneg = v_eval(mid, c)?.0 >= 0.0;
        if nonneg == lo_nonneg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= tol {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::ConvergenceFailure(format!(
            "alpha bisection at c = {c} exceeded {MAX_ITERATIONS} iterations"
        )))
    }
}

/// `ᾱ(c)`: the exponent in `(1, 2]` where `v(·, c)` turns non-negative.
pub fn alpha_upper(c: f64, tol: f64) -> Result<f64> {
    check_c(c, false)?;
    check_tol(tol)?;
    if v_eval(1.0, c)?.0 >= 0.0 || v_eval(2.0, c)?.0 < 0.0 {
        return Err(Error::ConvergenceFailure(format!(
            "v(alpha, {c}) does not change sign on [1, 2]"
        )));
    }
    bisect_alpha(c, 1.0, 2.0, false, tol)
}

/// `α̲(c)`: the exponent in `[0, 1)` where `v(·, c)` turns negative, or
/// `None` when `v(0, c) < 0` already.
pub fn alpha_lower(c: f64, tol: f64) -> Result<Option<f64>> {
    check_c(c, false)?;
    check_tol(tol)?;
    if v_eval(0.0, c)?.0 < 0.0 {
        return Ok(None);
    }
    if v_eval(1.0, c)?.0 >= 0.0 {
        return Err(Error::ConvergenceFailure(format!(
            "v(1, {c}) is not negative"
        )));
    }
    bisect_alpha(c, 0.0, 1.0, true, tol).map(Some)
}

pub fn admissible_interval(c: f64, tol: f64) -> Result<AlphaInterval> {
    Ok(AlphaInterval {
        c,
        lower: alpha_lower(c, tol)?,
        upper: alpha_upper(c, tol)?,
        tolerance: tol,
    })
}

/// A point `(z, c)` with `c > 1` and `f(z, α, c) > 0`, showing that `α ≠ 1`
/// breaks the dissolution axiom for thresholds close to 1.
///
/// At `c = 1`, `f(·, α, 1)` is positive somewhere between `1/α` and 1; pick
/// the best point of a grid there, then lower `c` toward 1 until `f` keeps at
/// least half its `c = 1` value.
pub fn lemma1_witness(alpha: f64) -> Result<Lemma1Witness> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return Err(Error::DomainError("alpha = 1 admits no witness".into()));
    }
    let (lo, hi) = if alpha > 1.0 {
        (1.0 / alpha, 1.0)
    } else {
        (1.0, (1.0 / alpha).min(4.0))
    };
    const GRID: usize = 64;
    let (z, f1) = (1..GRID)
        .map(|k| lo + (hi - lo) * k as f64 / GRID as f64)
        .map(|z| (z, f_raw(z, alpha, 1.0)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("grid is non-empty");
    if !(f1 > 0.0) {
        return Err(Error::WitnessNotFound(alpha));
    }
    let mut step = 0.5;
    for _ in 0..60 {
        let c = 1.0 + step;
        let f = f_raw(z, alpha, c);
        if f >= f1 / 2.0 {
            return Ok(Lemma1Witness { z, c, f });
        }
        step /= 2.0;
    }
    Err(Error::WitnessNotFound(alpha))
}
