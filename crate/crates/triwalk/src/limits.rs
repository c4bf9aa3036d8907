//! Closed-form limit distributions and localization criteria.
//!
//! For a non-permutation coin, the constant spectral branch survives the
//! `t → ∞` Riemann–Lebesgue averaging and leaves a stationary profile
//!
//! `lim P(m, t) = pref · ( |a ν^{|m|} + b ν^{|m+1|}|²
//!                       + |t₁ ν^{|m|} + t₂ ν^{|m−1|} + t₃ ν^{|m+1|}|²
//!                       + |a ν^{|m−1|} + b ν^{|m|}|² )`
//!
//! where the decay rate ν ∈ (−1, 1) and the five constants are rational in
//! the coin parameters and linear in the initial state. The exponent
//! orientation (|m+1| on the first chirality, |m−1| on the third) matches
//! this crate's shift convention; it was fixed by validating the profile
//! against direct simulation at m = ±1, ±2 (see `tests/limit_profiles.rs`).
//!
//! Permutation coins have fully constant spectra: their walks are periodic
//! (cycles) or ballistic (identity), and the Cesàro-averaged limits form a
//! small table supported on {−1, 0, 1}.
//!
//! Summing the profile over all m by geometric series gives the
//! localization sum used as the secondary criterion; the escaping state is
//! the (unique up to phase) init that zeroes every constant and hence the
//! whole profile.

use num_complex::Complex64;
use thiserror::Error;

use crate::coin::{Coin, Family, PermutationKind};
use crate::evolve::InitState;

/// Localization verdict threshold on the limit probability at the origin.
pub const LOCALIZATION_TOL: f64 = 1e-12;

/// Errors from the limit-distribution layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LimitsError {
    #[error(
        "coin is the permutation point {kind}; the generic limit formulas are \
         singular there — use the permutation table"
    )]
    PermutationCoin { kind: PermutationKind },
    #[error("coin is not a permutation point; use the generic limit formulas")]
    NotPermutation,
}

/// The closed-form constants of the limit profile for one (coin, init) pair.
#[derive(Debug, Clone, Copy)]
pub struct LimitParams {
    /// Geometric decay rate ν (family X) or μ (family Y), in `[−5+2√6, 1)`.
    pub decay: f64,
    /// Global prefactor `1/(3(1∓x)(3±x))`.
    pub prefactor: f64,
    /// First-chirality constant (A for X, D for Y).
    pub a: Complex64,
    /// Paired first/third-chirality constant (B for X, E for Y).
    pub b: Complex64,
    /// Middle-chirality constants (T₁..T₃ for X, S₁..S₃ for Y).
    pub t1: Complex64,
    pub t2: Complex64,
    pub t3: Complex64,
}

/// Geometric decay rate of the limit profile (ν for X, μ for Y).
///
/// Computed in the rationalized form `ν = 2x / ((3−x) + √(3(1−x)(3+x)))`
/// (and `μ = −2x / ((x+3) + √(3(1+x)(3−x)))`), which is exact at `x = 0`
/// and avoids the cancellation the quadratic-root form suffers for small
/// `|x|`; for `|x| < 1e−8` it reduces to the series values `x/3` and `−x/3`.
///
/// # Errors
/// [`LimitsError::PermutationCoin`] for tagged permutation coins.
pub fn decay_rate(coin: &Coin) -> Result<f64, LimitsError> {
    if let Some(kind) = coin.permutation() {
        return Err(LimitsError::PermutationCoin { kind });
    }
    let x = coin.x();
    Ok(match coin.family() {
        Family::X => 2.0 * x / ((3.0 - x) + (3.0 * (1.0 - x) * (3.0 + x)).sqrt()),
        Family::Y => -2.0 * x / ((x + 3.0) + (3.0 * (1.0 + x) * (3.0 - x)).sqrt()),
    })
}

/// Computes every constant of the limit profile.
///
/// Family X (z = 1 − x − y):
/// `a = α(1−x) + βz`, `b = γ(1−x) + βy`,
/// `t₁ = αz + β(1+x) + γy`, `t₂ = αy − βx`, `t₃ = −βx + γz`.
///
/// Family Y (w = 1 + x + y):
/// `a = α(1+x) + βw`, `b = γ(1+x) − βy`,
/// `t₁ = αw + β(1−x) − γy`, `t₂ = −αy + βx`, `t₃ = βx + γw`.
///
/// # Errors
/// [`LimitsError::PermutationCoin`] for tagged permutation coins.
pub fn limit_params(coin: &Coin, init: &InitState) -> Result<LimitParams, LimitsError> {
    let decay = decay_rate(coin)?;
    let x = coin.x();
    let y = coin.y();
    let alpha = init.alpha();
    let beta = init.beta();
    let gamma = init.gamma();
    let (prefactor, a, b, t1, t2, t3) = match coin.family() {
        Family::X => {
            let z = coin.z();
            (
                1.0 / (3.0 * (1.0 - x) * (3.0 + x)),
                alpha * (1.0 - x) + beta * z,
                gamma * (1.0 - x) + beta * y,
                alpha * z + beta * (1.0 + x) + gamma * y,
                alpha * y - beta * x,
                -beta * x + gamma * z,
            )
        }
        Family::Y => {
            let w = 1.0 + x + y;
            (
                1.0 / (3.0 * (1.0 + x) * (3.0 - x)),
                alpha * (1.0 + x) + beta * w,
                gamma * (1.0 + x) - beta * y,
                alpha * w + beta * (1.0 - x) - gamma * y,
                -alpha * y + beta * x,
                beta * x + gamma * w,
            )
        }
    };
    Ok(LimitParams { decay, prefactor, a, b, t1, t2, t3 })
}

/// Closed-form `lim_{t→∞} P(m, t)` for a non-permutation coin.
///
/// # Errors
/// [`LimitsError::PermutationCoin`]; route those coins to
/// [`limit_measure_permutation`].
pub fn limit_measure(coin: &Coin, init: &InitState, m: i64) -> Result<f64, LimitsError> {
    let p = limit_params(coin, init)?;
    Ok(limit_measure_from_params(&p, m))
}

/// Evaluates the limit profile at site `m` from precomputed constants.
#[must_use]
pub fn limit_measure_from_params(p: &LimitParams, m: i64) -> f64 {
    let nu = p.decay;
    let p_self = nu.powi(m.unsigned_abs() as i32);
    let p_plus = nu.powi((m + 1).unsigned_abs() as i32);
    let p_minus = nu.powi((m - 1).unsigned_abs() as i32);
    let first = p.a * p_self + p.b * p_plus;
    let middle = p.t1 * p_self + p.t2 * p_minus + p.t3 * p_plus;
    let third = p.a * p_minus + p.b * p_self;
    p.prefactor * (first.norm_sqr() + middle.norm_sqr() + third.norm_sqr())
}

/// Cesàro-averaged limit table for permutation coins (supported on
/// `m ∈ {−1, 0, 1}`); a negated coin drives the same probabilities as its
/// unsigned counterpart, so both share one table.
///
/// # Errors
/// [`LimitsError::NotPermutation`] when the coin is not tagged.
pub fn limit_measure_permutation(
    coin: &Coin,
    init: &InitState,
    m: i64,
) -> Result<f64, LimitsError> {
    let Some(kind) = coin.permutation() else {
        return Err(LimitsError::NotPermutation);
    };
    let aa = init.alpha().norm_sqr();
    let bb = init.beta().norm_sqr();
    let cc = init.gamma().norm_sqr();
    Ok(match kind.unsigned() {
        PermutationKind::Identity => {
            if m == 0 {
                bb
            } else {
                0.0
            }
        }
        PermutationKind::Cycle123 => match m {
            // Period-3 orbit: t≡0 all mass at 0; t≡1 sites (−1,0,1) hold
            // (|β|²,|γ|²,|α|²); t≡2 hold (|γ|²,|β|²,|α|²).
            0 => (aa + 2.0 * bb + 2.0 * cc) / 3.0,
            1 => 2.0 * aa / 3.0,
            -1 => (bb + cc) / 3.0,
            _ => 0.0,
        },
        PermutationKind::Cycle132 => match m {
            0 => (2.0 * aa + 2.0 * bb + cc) / 3.0,
            -1 => 2.0 * cc / 3.0,
            1 => (aa + bb) / 3.0,
            _ => 0.0,
        },
        _ => unreachable!("unsigned() returns an unsigned permutation"),
    })
}

/// Total limit mass for any coin: dispatches between the closed-form
/// profile and the permutation table.
#[must_use]
pub fn limit_measure_any(coin: &Coin, init: &InitState, m: i64) -> f64 {
    match limit_measure(coin, init, m) {
        Ok(v) => v,
        Err(LimitsError::PermutationCoin { .. }) => {
            limit_measure_permutation(coin, init, m).expect("tagged permutation coin")
        }
        Err(LimitsError::NotPermutation) => unreachable!(),
    }
}

/// Closed-form localization sum `Σ_{m∈ℤ} lim P(m, t)`.
///
/// From the geometric series `Σ ν^{2|m|} = (1+ν²)/(1−ν²)`,
/// `Σ ν^{|m|+|m±1|} = 2ν/(1−ν²)` and
/// `Σ ν^{|m−1|+|m+1|} = ν²(3−ν²)/(1−ν²)`:
///
/// `Σ = pref · [ (1+ν²)/(1−ν²)·(2|a|² + 2|b|² + |t₁|² + |t₂|² + |t₃|²)
///             + 4ν/(1−ν²)·(2Re(a·conj b) + Re(t₁·conj t₂) + Re(t₁·conj t₃))
///             + 2ν²(3−ν²)/(1−ν²)·Re(t₂·conj t₃) ]`.
///
/// # Errors
/// [`LimitsError::PermutationCoin`] (so `1 − ν²` is never zero here).
pub fn localization_sum(coin: &Coin, init: &InitState) -> Result<f64, LimitsError> {
    let p = limit_params(coin, init)?;
    let nu = p.decay;
    let nu2 = nu * nu;
    let geo = 1.0 - nu2;
    let diag = (1.0 + nu2) / geo;
    let adj = 2.0 * nu / geo;
    let skip = nu2 * (3.0 - nu2) / geo;
    let squares = 2.0 * p.a.norm_sqr()
        + 2.0 * p.b.norm_sqr()
        + p.t1.norm_sqr()
        + p.t2.norm_sqr()
        + p.t3.norm_sqr();
    let adjacent =
        2.0 * (p.a * p.b.conj()).re + (p.t1 * p.t2.conj()).re + (p.t1 * p.t3.conj()).re;
    let skipping = (p.t2 * p.t3.conj()).re;
    Ok(p.prefactor * (diag * squares + 2.0 * adj * adjacent + 2.0 * skip * skipping))
}

/// Localization sum for any coin; permutation walks keep their Cesàro table
/// mass (1 for the cyclic coins, `|β|²` for ±I whose moving parts escape).
#[must_use]
pub fn localization_sum_any(coin: &Coin, init: &InitState) -> f64 {
    match localization_sum(coin, init) {
        Ok(v) => v,
        Err(LimitsError::PermutationCoin { .. }) => [-1i64, 0, 1]
            .iter()
            .map(|&m| limit_measure_permutation(coin, init, m).expect("tagged permutation coin"))
            .sum(),
        Err(LimitsError::NotPermutation) => unreachable!(),
    }
}

/// Outcome of the localization check for one (coin, init) pair.
#[derive(Debug, Clone, Copy)]
pub struct LocalizationReport {
    /// Limit probability at the origin (primary criterion).
    pub limit_p0: f64,
    /// Total limit mass over all sites (secondary criterion).
    pub sum: f64,
    /// True iff `limit_p0 >` [`LOCALIZATION_TOL`].
    pub localized: bool,
}

/// Evaluates both localization criteria.
#[must_use]
pub fn localization_report(coin: &Coin, init: &InitState) -> LocalizationReport {
    let limit_p0 = limit_measure_any(coin, init, 0);
    let sum = localization_sum_any(coin, init);
    LocalizationReport { limit_p0, sum, localized: limit_p0 > LOCALIZATION_TOL }
}

/// True iff the pair localizes under the primary criterion.
#[must_use]
pub fn is_localized(coin: &Coin, init: &InitState) -> bool {
    localization_report(coin, init).localized
}

/// The escaping state: the unit init (fixed real phase) orthogonal to the
/// constant branch at every k, for which the whole limit profile vanishes.
///
/// Family X: `(z, −(1−x), y)/N`; family Y: `(−w, 1+x, y)/N` with
/// `w = 1 + x + y` and `N` the Euclidean norm. At the Grover point this is
/// `(1, −2, 1)/√6`.
///
/// # Errors
/// [`LimitsError::PermutationCoin`]: at permutation points the defining
/// vector degenerates (it vanishes identically at C = ±I) and the constant
/// branch is not one-dimensional in the required sense.
pub fn escaping_state(coin: &Coin) -> Result<InitState, LimitsError> {
    if let Some(kind) = coin.permutation() {
        return Err(LimitsError::PermutationCoin { kind });
    }
    let x = coin.x();
    let y = coin.y();
    let (c1, c2, c3) = match coin.family() {
        Family::X => (coin.z(), -(1.0 - x), y),
        Family::Y => (-(1.0 + x + y), 1.0 + x, y),
    };
    let n = (c1 * c1 + c2 * c2 + c3 * c3).sqrt();
    let state = InitState::new(
        Complex64::new(c1 / n, 0.0),
        Complex64::new(c2 / n, 0.0),
        Complex64::new(c3 / n, 0.0),
    );
    Ok(state.expect("normalized by construction"))
}
