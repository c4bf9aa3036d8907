//! Independent brute-force oracles used to cross-check the fast paths.
//!
//! Everything here is deliberately naive: the walk operator is materialized
//! as one dense matrix over a cyclic ring of sites and applied by full
//! matrix–vector products, and the 3×3 eigensolver works from the
//! characteristic polynomial with explicit root deflation. None of this
//! shares code with [`crate::evolve`] or [`crate::spectral`] beyond the coin
//! entries themselves, so agreement between the two paths is meaningful.

use num_complex::Complex64;
use thiserror::Error;

use crate::coin::Coin;
use crate::evolve::{InitState, WalkState};
use crate::numeric::{det3, matvec3, norm3, unitarity_defect3, CMat3, CVec3};

/// Largest horizon accepted by the brute-force evolutions; the dense matrix
/// grows as `(3(2t+1))²` and is meant for verification, not production runs.
pub const MAX_BRUTE_T: u64 = 64;

/// Unitarity defect above which a matrix is rejected as a walk operator.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Deflated-quadratic discriminant magnitude below which the numeric
/// eigensolver refuses to separate the two non-constant branches.
pub const DISCRIMINANT_TOL: f64 = 1e-14;

/// Errors from the oracle layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("brute-force horizon t = {t} exceeds the supported maximum {max}")]
    TimeTooLarge { t: u64, max: u64 },
    #[error("matrix is not unitary: ‖U†U − I‖_F = {defect:.3e} exceeds {tol:.1e}")]
    NotUnitary { defect: f64, tol: f64 },
    #[error("no constant eigenvalue branch at ±1: min characteristic residual {residual:.3e}")]
    NoConstantBranch { residual: f64 },
    #[error(
        "eigenvalue pair too close to separate numerically: \
         |discriminant| = {discriminant:.3e} below {tol:.1e}"
    )]
    IllConditioned { discriminant: f64, tol: f64 },
    #[error("averaging window {window} exceeds half the horizon t_max = {t_max}")]
    WindowTooLarge { window: u64, t_max: u64 },
}

/// Dense one-step walk operator on a cyclic ring of `2·half_width + 1` sites.
///
/// Sites are `m ∈ [−half_width, half_width]` with periodic wrap-around; the
/// basis index of `(m, chirality c)` is `3·(m + half_width) + c`. As long as
/// the evolved horizon satisfies `t ≤ half_width`, the wrap is never reached
/// and the ring walk coincides with the walk on ℤ.
#[derive(Debug, Clone)]
pub struct DenseOp {
    half_width: i64,
    dim: usize,
    /// Row-major `dim × dim` complex matrix.
    data: Vec<Complex64>,
}

impl DenseOp {
    /// Dimension of the operator (`3 × (2·half_width + 1)`).
    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ring half-width used to build the operator.
    #[must_use]
    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    /// Entry at `(row, col)`.
    #[must_use]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Full dense matrix–vector product.
    ///
    /// # Panics
    /// If `v.len() != self.dim()`.
    #[must_use]
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must match operator dimension");
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = &self.data[r * self.dim..(r + 1) * self.dim];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(v.iter()) {
                acc += a * b;
            }
            *slot = acc;
        }
        out
    }

    /// Frobenius deviation of `U†U` from the identity.
    #[must_use]
    pub fn unitarity_defect(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                // (U†U)_{ij} = Σ_r conj(U_{ri}) U_{rj}
                let mut g = Complex64::new(0.0, 0.0);
                for r in 0..self.dim {
                    g += self.entry(r, i).conj() * self.entry(r, j);
                }
                let target = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                acc += (g - target).norm_sqr();
            }
        }
        acc.sqrt()
    }

    fn index(&self, m: i64, c: usize) -> usize {
        let l = 2 * self.half_width + 1;
        let s = (m + self.half_width).rem_euclid(l);
        3 * s as usize + c
    }
}

/// Materializes the one-step operator `U = S·(I ⊗ C)` on the cyclic ring.
#[must_use]
pub fn dense_walk_operator(coin: &Coin, half_width: i64) -> DenseOp {
    let half_width = half_width.max(1);
    let l = (2 * half_width + 1) as usize;
    let dim = 3 * l;
    let mut op = DenseOp { half_width, dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] };
    let e = coin.entries();
    // Column (m, c): coin sends it to Σ_{c'} C[c'][c] |m, c'⟩, then the shift
    // routes chirality c' to site m + (c' − 1).
    for m in -half_width..=half_width {
        for c in 0..3 {
            let col = op.index(m, c);
            for (cp, shift) in [(0usize, -1i64), (1, 0), (2, 1)] {
                let row = op.index(m + shift, cp);
                op.data[row * dim + col] = Complex64::new(e[cp][c], 0.0);
            }
        }
    }
    op
}

/// Brute-force amplitudes after `t` steps: `(m, ψ(m))` for `m ∈ [−t, t]`,
/// computed by repeated dense matrix–vector products on a ring of
/// half-width `t`.
///
/// # Errors
/// [`OracleError::TimeTooLarge`] for `t >` [`MAX_BRUTE_T`].
pub fn brute_force_amplitudes(
    coin: &Coin,
    init: &InitState,
    t: u64,
) -> Result<Vec<(i64, CVec3)>, OracleError> {
    if t > MAX_BRUTE_T {
        return Err(OracleError::TimeTooLarge { t, max: MAX_BRUTE_T });
    }
    let half = (t as i64).max(1);
    let op = dense_walk_operator(coin, half);
    let mut v = vec![Complex64::new(0.0, 0.0); op.dim()];
    let comps = init.components();
    for c in 0..3 {
        v[op.index(0, c)] = comps[c];
    }
    for _ in 0..t {
        v = op.apply(&v);
    }
    let mut out = Vec::with_capacity((2 * t + 1) as usize);
    for m in -(t as i64)..=t as i64 {
        out.push((m, [v[op.index(m, 0)], v[op.index(m, 1)], v[op.index(m, 2)]]));
    }
    Ok(out)
}

/// Brute-force position distribution `(m, P(m))` for `m ∈ [−t, t]`.
///
/// # Errors
/// [`OracleError::TimeTooLarge`] for `t >` [`MAX_BRUTE_T`].
pub fn brute_force_distribution(
    coin: &Coin,
    init: &InitState,
    t: u64,
) -> Result<Vec<(i64, f64)>, OracleError> {
    let amps = brute_force_amplitudes(coin, init, t)?;
    Ok(amps
        .into_iter()
        .map(|(m, a)| (m, a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()))
        .collect())
}

/// Eigen decomposition of a 3×3 unitary with a constant branch at ±1.
#[derive(Debug, Clone)]
pub struct NumericEigenSystem {
    /// Eigenvalues: index 0 is the constant ±1 branch, index 1 the branch
    /// with phase in `(0, π)`, index 2 its conjugate.
    pub eigenvalues: [Complex64; 3],
    /// Phases `ω_j = arg λ_j` in `(−π, π]`.
    pub omegas: [f64; 3],
    /// Unit-norm right eigenvectors matching `eigenvalues`.
    pub vectors: [CVec3; 3],
    /// Largest residual `‖U v_j − λ_j v_j‖` over the three pairs.
    pub max_residual: f64,
}

/// Numerically decomposes a momentum-space walk operator.
///
/// The characteristic polynomial is deflated by the constant ±1 eigenvalue
/// (sign chosen by the determinant), the remaining quadratic is solved with
/// the cancellation-safe Viète split, and eigenvectors come from the largest
/// cross product of rows of `U − λI`.
///
/// # Errors
/// * [`OracleError::NotUnitary`] when `‖U†U − I‖_F >` [`UNITARITY_TOL`];
/// * [`OracleError::NoConstantBranch`] when neither ±1 is a root;
/// * [`OracleError::IllConditioned`] when the deflated quadratic has
///   |discriminant| < [`DISCRIMINANT_TOL`] (degenerate pair), or an
///   eigenvector cannot be extracted.
pub fn numeric_eigensystem(u: &CMat3) -> Result<NumericEigenSystem, OracleError> {
    let defect = unitarity_defect3(u);
    if defect > UNITARITY_TOL {
        return Err(OracleError::NotUnitary { defect, tol: UNITARITY_TOL });
    }
    // Characteristic polynomial λ³ − e₁λ² + e₂λ − e₃.
    let e1 = u[0][0] + u[1][1] + u[2][2];
    let e2 = u[0][0] * u[1][1] - u[0][1] * u[1][0] + u[0][0] * u[2][2] - u[0][2] * u[2][0]
        + u[1][1] * u[2][2]
        - u[1][2] * u[2][1];
    let e3 = det3(u);
    let char_poly = |l: Complex64| ((l - e1) * l + e2) * l - e3;
    // Constant branch: +1 for det = +1 operators, −1 for det = −1.
    let one = Complex64::new(1.0, 0.0);
    let (root, residual) = {
        let rp = char_poly(one).norm();
        let rm = char_poly(-one).norm();
        if rp <= rm {
            (one, rp)
        } else {
            (-one, rm)
        }
    };
    if residual > 1e-6 {
        return Err(OracleError::NoConstantBranch { residual });
    }
    // Synthetic deflation: λ³ − e₁λ² + e₂λ − e₃ = (λ − r)(λ² + pλ + q).
    let p = root - e1;
    let q = e3 * root; // q = e₃ / r and r = ±1
    let disc = p * p - 4.0 * q;
    if disc.norm() < DISCRIMINANT_TOL {
        return Err(OracleError::IllConditioned {
            discriminant: disc.norm(),
            tol: DISCRIMINANT_TOL,
        });
    }
    let s = disc.sqrt();
    // Viète split avoiding cancellation in −p ± s.
    let tshift = if (p.conj() * s).re >= 0.0 { -(p + s) / 2.0 } else { -(p - s) / 2.0 };
    let l1 = tshift;
    let l2 = q / tshift;
    // Order the pair so index 1 carries the phase in (0, π).
    let (lam_plus, lam_minus) = if l1.im >= l2.im { (l1, l2) } else { (l2, l1) };

    let eigenvalues = [root, lam_plus, lam_minus];
    let mut vectors = [[Complex64::new(0.0, 0.0); 3]; 3];
    let mut max_residual = 0.0_f64;
    for (slot, &lam) in eigenvalues.iter().enumerate() {
        let v = crate::numeric::null_vector3(u, lam).ok_or(OracleError::IllConditioned {
            discriminant: disc.norm(),
            tol: DISCRIMINANT_TOL,
        })?;
        let uv = matvec3(u, &v);
        let res = [uv[0] - lam * v[0], uv[1] - lam * v[1], uv[2] - lam * v[2]];
        max_residual = max_residual.max(norm3(&res));
        vectors[slot] = v;
    }
    let omegas = [
        eigenvalues[0].arg(),
        eigenvalues[1].arg(),
        eigenvalues[2].arg(),
    ];
    Ok(NumericEigenSystem { eigenvalues, omegas, vectors, max_residual })
}

/// Empirical limit estimate: the mean of `P(m, t)` over the trailing window
/// `t ∈ [t_max − window, t_max]` of a direct evolution.
///
/// Averaging over a window (rather than reading one instant) damps the
/// parity oscillation of the approach to the limit.
///
/// # Errors
/// [`OracleError::WindowTooLarge`] when `window > t_max / 2`.
pub fn empirical_limit(
    coin: &Coin,
    init: &InitState,
    m: i64,
    t_max: u64,
    window: u64,
) -> Result<f64, OracleError> {
    if window > t_max / 2 {
        return Err(OracleError::WindowTooLarge { window, t_max });
    }
    let mut state = WalkState::new(*coin, init);
    for _ in 0..t_max - window {
        state.step();
    }
    let mut samples = Vec::with_capacity(window as usize + 1);
    samples.push(state.probability(m));
    for _ in 0..window {
        state.step();
        samples.push(state.probability(m));
    }
    Ok(crate::numeric::pairwise_sum(&samples) / (window as f64 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::Family;
    use std::f64::consts::PI;

    #[test]
    fn dense_operator_is_unitary_for_both_families() {
        for (family, theta) in [(Family::X, 0.77), (Family::Y, -1.9), (Family::X, PI)] {
            let coin = Coin::from_theta(family, theta).unwrap();
            let op = dense_walk_operator(&coin, 6);
            let defect = op.unitarity_defect();
            assert!(defect <= 1e-12, "family {family} θ={theta}: defect {defect:.3e}");
        }
    }

    #[test]
    fn brute_force_matches_hand_computed_grover_step() {
        let coin = Coin::from_theta(Family::X, PI).unwrap();
        let init = InitState::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let dist = brute_force_distribution(&coin, &init, 1).unwrap();
        let lookup = |m: i64| dist.iter().find(|(mm, _)| *mm == m).unwrap().1;
        assert!((lookup(-1) - 1.0 / 9.0).abs() <= 1e-15);
        assert!((lookup(0) - 4.0 / 9.0).abs() <= 1e-15);
        assert!((lookup(1) - 4.0 / 9.0).abs() <= 1e-15);
    }

    #[test]
    fn brute_force_rejects_large_horizons() {
        let coin = Coin::from_theta(Family::X, 1.0).unwrap();
        let err = brute_force_amplitudes(&coin, &InitState::symmetric(), 65).unwrap_err();
        assert!(matches!(err, OracleError::TimeTooLarge { .. }));
    }

    #[test]
    fn numeric_eigensystem_pins_constant_branch_by_determinant() {
        let k = 0.83;
        for (family, expected) in [(Family::X, 1.0), (Family::Y, -1.0)] {
            let coin = Coin::from_theta(family, 0.51).unwrap();
            let u = crate::spectral::u_tilde(&coin, k);
            let sys = numeric_eigensystem(&u).unwrap();
            assert!((sys.eigenvalues[0] - Complex64::new(expected, 0.0)).norm() <= 1e-12);
            assert!(sys.max_residual <= 1e-12, "residual {:.3e}", sys.max_residual);
            // Unit circle and conjugate pairing.
            for lam in sys.eigenvalues {
                assert!((lam.norm() - 1.0).abs() <= 1e-12);
            }
            assert!((sys.eigenvalues[1] - sys.eigenvalues[2].conj()).norm() <= 1e-12);
            assert!(sys.omegas[1] >= 0.0);
        }
    }

    #[test]
    fn numeric_eigensystem_flags_degenerate_grover_origin() {
        // Grover at k = 0 has a doubly degenerate −1 pair.
        let coin = Coin::from_theta(Family::X, PI).unwrap();
        let u = crate::spectral::u_tilde(&coin, 0.0);
        let err = numeric_eigensystem(&u).unwrap_err();
        assert!(matches!(err, OracleError::IllConditioned { .. }), "got {err:?}");
    }

    #[test]
    fn numeric_eigensystem_rejects_non_unitary_input() {
        let mut m = crate::numeric::identity3();
        m[0][0] = Complex64::new(1.5, 0.0);
        let err = numeric_eigensystem(&m).unwrap_err();
        assert!(matches!(err, OracleError::NotUnitary { .. }));
    }

    #[test]
    fn empirical_limit_validates_window() {
        let coin = Coin::from_theta(Family::X, PI).unwrap();
        let err = empirical_limit(&coin, &InitState::symmetric(), 0, 10, 6).unwrap_err();
        assert!(matches!(err, OracleError::WindowTooLarge { .. }));
    }
}
