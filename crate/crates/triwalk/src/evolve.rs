//! Real-space evolution of the three-state walk on ℤ.
//!
//! One step applies the coin to every site's amplitude triple and then routes
//! the components: component 1 moves to `m − 1`, component 2 stays at `m`,
//! component 3 moves to `m + 1`. A walk started at the origin therefore has
//! support inside `[−t, t]` after `t` steps, and the state is held in a dense
//! window that grows by one site per side per step.
//!
//! The site probability is `P(m, t) = |ψ₁|² + |ψ₂|² + |ψ₃|²`; totals are
//! accumulated with pairwise summation so that norm-conservation checks hold
//! to 1e−12 even at horizon 10⁴.

use num_complex::Complex64;
use thiserror::Error;

use crate::coin::Coin;
use crate::numeric::{pairwise_sum, CVec3};

/// Magnitude below which an amplitude component is flushed to exact zero to
/// keep subnormal arithmetic out of long evolutions.
const FLUSH_THRESHOLD: f64 = 1e-300;

/// Tolerance on `|‖s‖ − 1|` accepted by [`InitState::new`].
pub const INIT_NORM_TOL: f64 = 1e-9;

/// Errors from initial-state construction.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("initial state must have unit norm: ‖s‖ = {norm:.17} deviates by more than {tol:.1e}")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("initial state components must be finite")]
    NonFinite,
}

/// A normalized coin-space state `(α, β, γ)` placed at the origin at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitState {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
}

impl InitState {
    /// Validates and stores a coin-space state.
    ///
    /// The state is kept exactly as supplied (no renormalization); inputs
    /// may deviate from unit norm by at most [`INIT_NORM_TOL`].
    ///
    /// # Errors
    /// [`StateError::NonFinite`] or [`StateError::NotNormalized`].
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self, StateError> {
        for c in [alpha, beta, gamma] {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(StateError::NonFinite);
            }
        }
        let norm = (alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > INIT_NORM_TOL {
            return Err(StateError::NotNormalized { norm, tol: INIT_NORM_TOL });
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// The symmetric state `(1, 1, 1)/√3`.
    #[must_use]
    pub fn symmetric() -> Self {
        let c = Complex64::new(1.0 / 3.0_f64.sqrt(), 0.0);
        Self { alpha: c, beta: c, gamma: c }
    }

    /// The left–right state `(1, 0, 1)/√2` (no stationary component).
    #[must_use]
    pub fn left_right() -> Self {
        let c = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        Self { alpha: c, beta: Complex64::new(0.0, 0.0), gamma: c }
    }

    /// First component α (weight of the left-moving chirality).
    #[must_use]
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// Second component β (weight of the stationary chirality).
    #[must_use]
    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// Third component γ (weight of the right-moving chirality).
    #[must_use]
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// The components as an amplitude triple.
    #[must_use]
    pub fn components(&self) -> CVec3 {
        [self.alpha, self.beta, self.gamma]
    }

    /// Euclidean norm of the state.
    #[must_use]
    pub fn norm(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr() + self.gamma.norm_sqr()).sqrt()
    }
}

/// Dense state of a walk on ℤ after `time` steps.
#[derive(Debug, Clone)]
pub struct WalkState {
    coin: Coin,
    /// Amplitudes for sites `offset ..= offset + amps.len() − 1`.
    amps: Vec<CVec3>,
    offset: i64,
    time: u64,
    initial_norm: f64,
}

impl WalkState {
    /// A fresh walk: `init` at the origin, nothing anywhere else.
    #[must_use]
    pub fn new(coin: Coin, init: &InitState) -> Self {
        Self {
            coin,
            amps: vec![init.components()],
            offset: 0,
            time: 0,
            initial_norm: init.norm(),
        }
    }

    /// Runs `t` steps from the origin state.
    #[must_use]
    pub fn run(coin: Coin, init: &InitState, t: u64) -> Self {
        let mut state = Self::new(coin, init);
        for _ in 0..t {
            state.step();
        }
        state
    }

    /// Advances the walk by one step (coin, then shift).
    pub fn step(&mut self) {
        let n = self.amps.len();
        let zero = Complex64::new(0.0, 0.0);
        let coined: Vec<CVec3> = self.amps.iter().map(|v| self.coin.apply(v)).collect();
        let mut next = Vec::with_capacity(n + 2);
        for i in 0..n + 2 {
            // Site offset−1+i gathers: component 1 from its right neighbor,
            // component 2 from itself, component 3 from its left neighbor.
            let a = if i < n { coined[i][0] } else { zero };
            let b = if (1..=n).contains(&i) { coined[i - 1][1] } else { zero };
            let c = if i >= 2 { coined[i - 2][2] } else { zero };
            next.push([flush(a), flush(b), flush(c)]);
        }
        self.amps = next;
        self.offset -= 1;
        self.time += 1;
    }

    /// The coin driving this walk.
    #[must_use]
    pub fn coin(&self) -> &Coin {
        &self.coin
    }

    /// Number of steps taken so far.
    #[must_use]
    pub fn time(&self) -> u64 {
        self.time
    }

    /// Inclusive site window `[min_m, max_m]` currently stored.
    #[must_use]
    pub fn window(&self) -> (i64, i64) {
        (self.offset, self.offset + self.amps.len() as i64 - 1)
    }

    /// Amplitude triple at site `m` (zero outside the stored window).
    #[must_use]
    pub fn amplitude(&self, m: i64) -> CVec3 {
        let idx = m - self.offset;
        if idx < 0 || idx >= self.amps.len() as i64 {
            [Complex64::new(0.0, 0.0); 3]
        } else {
            self.amps[idx as usize]
        }
    }

    /// Site probability `P(m) = |ψ₁|² + |ψ₂|² + |ψ₃|²`.
    #[must_use]
    pub fn probability(&self, m: i64) -> f64 {
        let a = self.amplitude(m);
        a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()
    }

    /// Per-chirality probabilities `(|ψ₁|², |ψ₂|², |ψ₃|²)` at site `m`.
    #[must_use]
    pub fn probability_by_chirality(&self, m: i64) -> [f64; 3] {
        let a = self.amplitude(m);
        [a[0].norm_sqr(), a[1].norm_sqr(), a[2].norm_sqr()]
    }

    /// The full position distribution over the stored window, ascending in m.
    #[must_use]
    pub fn distribution(&self) -> Vec<(i64, f64)> {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (self.offset + i as i64, a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr())
            })
            .collect()
    }

    /// Total probability, pairwise-summed over the window.
    #[must_use]
    pub fn total_probability(&self) -> f64 {
        let probs: Vec<f64> = self
            .amps
            .iter()
            .map(|a| a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr())
            .collect();
        pairwise_sum(&probs)
    }

    /// Drift of the total probability from its t = 0 value.
    #[must_use]
    pub fn norm_drift(&self) -> f64 {
        (self.total_probability() - self.initial_norm * self.initial_norm).abs()
    }

    /// Positions of the side-lobe maxima: the argmax of `P(m)` over
    /// `m ∈ [−t, −5]` and over `m ∈ [5, t]`, or `None` when `t < 5`.
    ///
    /// Ties resolve to the first site encountered scanning ascending m
    /// within each range, which makes the result deterministic.
    #[must_use]
    pub fn side_lobe_peaks(&self) -> Option<(i64, i64)> {
        let t = self.time as i64;
        if t < 5 {
            return None;
        }
        let argmax = |lo: i64, hi: i64| -> i64 {
            let mut best_m = lo;
            let mut best_p = self.probability(lo);
            for m in lo + 1..=hi {
                let p = self.probability(m);
                if p > best_p {
                    best_p = p;
                    best_m = m;
                }
            }
            best_m
        };
        Some((argmax(-t, -5), argmax(5, t)))
    }
}

/// Mean of `P(0, t)` over `t = 0 ..= t_max` (inclusive of the initial state,
/// so the average runs over `t_max + 1` samples).
#[must_use]
pub fn time_averaged_return(coin: Coin, init: &InitState, t_max: u64) -> f64 {
    let mut state = WalkState::new(coin, init);
    let mut samples = Vec::with_capacity(t_max as usize + 1);
    samples.push(state.probability(0));
    for _ in 0..t_max {
        state.step();
        samples.push(state.probability(0));
    }
    pairwise_sum(&samples) / (t_max as f64 + 1.0)
}

fn flush(c: Complex64) -> Complex64 {
    let re = if c.re.abs() < FLUSH_THRESHOLD { 0.0 } else { c.re };
    let im = if c.im.abs() < FLUSH_THRESHOLD { 0.0 } else { c.im };
    Complex64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::Family;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn init_state_rejects_bad_norm() {
        let err = InitState::new(re(1.0), re(1.0), re(0.0)).unwrap_err();
        assert!(matches!(err, StateError::NotNormalized { .. }));
        assert!(InitState::new(re(1.0), re(0.0), re(0.0)).is_ok());
    }

    #[test]
    fn grover_single_step_from_chirality_one() {
        // One Grover step from (1, 0, 0): the coined triple is the first
        // Grover column (−1/3, 2/3, 2/3), routed left/stay/right.
        let coin = Coin::from_theta(Family::X, PI).unwrap();
        let init = InitState::new(re(1.0), re(0.0), re(0.0)).unwrap();
        let state = WalkState::run(coin, &init, 1);
        assert!((state.probability(-1) - 1.0 / 9.0).abs() <= 1e-15);
        assert!((state.probability(0) - 4.0 / 9.0).abs() <= 1e-15);
        assert!((state.probability(1) - 4.0 / 9.0).abs() <= 1e-15);
        assert!((state.total_probability() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn identity_coin_routes_components_ballistically() {
        let coin = Coin::from_theta(Family::X, 0.0).unwrap();
        let init = InitState::symmetric();
        let state = WalkState::run(coin, &init, 7);
        assert!((state.probability(-7) - 1.0 / 3.0).abs() <= 1e-15);
        assert!((state.probability(0) - 1.0 / 3.0).abs() <= 1e-15);
        assert!((state.probability(7) - 1.0 / 3.0).abs() <= 1e-15);
    }

    #[test]
    fn norm_is_conserved_over_long_runs() {
        let coin = Coin::from_theta(Family::Y, 0.9).unwrap();
        let state = WalkState::run(coin, &InitState::symmetric(), 2000);
        assert!(state.norm_drift() <= 1e-12, "drift {:.3e}", state.norm_drift());
    }

    #[test]
    fn window_has_support_within_light_cone() {
        let coin = Coin::from_theta(Family::X, 1.0).unwrap();
        let state = WalkState::run(coin, &InitState::left_right(), 9);
        let (lo, hi) = state.window();
        assert_eq!((lo, hi), (-9, 9));
        assert_eq!(state.amplitude(10), [Complex64::new(0.0, 0.0); 3]);
    }

    #[test]
    fn time_average_includes_t_zero() {
        let coin = Coin::from_theta(Family::X, 0.0).unwrap();
        // Identity coin: P(0, 0) = 1, P(0, t>0) = |β|² = 0 for this init.
        let init = InitState::new(re(1.0), re(0.0), re(0.0)).unwrap();
        let avg = time_averaged_return(coin, &init, 4);
        assert!((avg - 0.2).abs() <= 1e-15);
    }
}
