//! Momentum-space analysis of the walk.
//!
//! Under the transform `Ψ(k) = Σ_m ψ(m) e^{−ikm}` matched to this crate's
//! shift convention, one step acts in momentum space as the 3×3 unitary
//! `Ũ(k) = D(k)·C` with `D(k) = diag(e^{ik}, 1, e^{−ik})`.
//!
//! For family X the spectrum is `{1, e^{iω}, e^{−iω}}` with
//! `cos ω(k) = x·cos k − (1 − x)/2`; for family Y it is
//! `{−1, e^{iω}, e^{−iω}}` with `cos ω(k) = x·cos k + (1 + x)/2`
//! (always taking ω ∈ [0, π]). The constant ±1 branch is flat in `k`, which
//! is the mechanism behind localization.
//!
//! Eigenvectors are built from closed adjugate-column forms and verified
//! against the eigenvalue residual; at parameter points where the closed
//! form degenerates (isolated `k` for the Grover-type coins, every `k` for
//! the permutation coins), the computation falls back to a robust numeric
//! path and reports it via [`EigenSystem::used_fallback`].
//!
//! [`amplitude_via_fourier`] inverts the transform with the kernel
//! `e^{+ikm}` on the midpoint grid `k_n = −π + (n + ½)·2π/N`: the integrand
//! of `ψ(m, t)` is a trigonometric polynomial of degree `|m| + t`, so the
//! periodic trapezoid rule is exact once `N > |m| + t`; the required
//! `N ≥ 16·t` leaves a wide margin, and the half-step offset keeps the grid
//! away from the isolated spectral degeneracies at `k ∈ {0, ±π}`.

use num_complex::Complex64;
use thiserror::Error;

use crate::coin::{Coin, Family};
use crate::evolve::InitState;
use crate::numeric::{
    clamp_unit, inner3, matvec3, norm3, null_vector3, pairwise_sum_complex, CMat3, CVec3,
};

/// Minimum quadrature nodes per unit of evolved time.
pub const QUADRATURE_NODE_FACTOR: u64 = 16;
/// Closed-form eigenvectors with norm below this are treated as degenerate
/// and trigger the fallback path.
pub const ADJUGATE_NORM_TOL: f64 = 1e-8;
/// Eigenpair residual `‖Ũv − λv‖` accepted from either construction path.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Errors from spectral computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(
        "quadrature with {nodes} nodes is under-resolved for horizon t = {t}; \
         need at least {needed}"
    )]
    QuadratureUnderresolved { nodes: u64, t: u64, needed: u64 },
    #[error("eigenvector extraction failed at k = {k:.17} even on the fallback path")]
    DegenerateEigenvector { k: f64 },
}

/// The momentum-space one-step operator `Ũ(k) = D(k)·C`.
#[must_use]
pub fn u_tilde(coin: &Coin, k: f64) -> CMat3 {
    let e = coin.entries();
    let d = [Complex64::from_polar(1.0, k), Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, -k)];
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = d[i] * e[i][j];
        }
    }
    out
}

/// Cosine of the oscillating-branch phase ω(k), clamped into `[−1, 1]`.
#[must_use]
pub fn dispersion_cos(coin: &Coin, k: f64) -> f64 {
    let x = coin.x();
    let c = match coin.family() {
        Family::X => x * k.cos() - (1.0 - x) / 2.0,
        Family::Y => x * k.cos() + (1.0 + x) / 2.0,
    };
    clamp_unit(c)
}

/// The oscillating-branch phase `ω(k) ∈ [0, π]`.
#[must_use]
pub fn dispersion_omega(coin: &Coin, k: f64) -> f64 {
    dispersion_cos(coin, k).acos()
}

/// Phase of the constant branch: 0 for family X, π for family Y.
#[must_use]
pub fn constant_branch_omega(family: Family) -> f64 {
    match family {
        Family::X => 0.0,
        Family::Y => std::f64::consts::PI,
    }
}

/// Spectral decomposition of `Ũ(k)`.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Phases: index 0 the constant branch (0 or π), index 1 the `+ω(k)`
    /// branch, index 2 the `−ω(k)` branch.
    pub omegas: [f64; 3],
    /// Eigenvalues `e^{iω_j}` in the same order.
    pub eigenvalues: [Complex64; 3],
    /// Orthonormal eigenvectors in the same order.
    pub vectors: [CVec3; 3],
    /// True when any eigenvector came from the numeric fallback path.
    pub used_fallback: bool,
}

/// Decomposes `Ũ(k)` into phases and orthonormal eigenvectors.
///
/// # Errors
/// [`SpectralError::DegenerateEigenvector`] if even the fallback path cannot
/// produce eigenvectors with residual below [`RESIDUAL_TOL`] (not reachable
/// for coins on the unitarity ellipses; kept as a guard).
pub fn eigensystem(coin: &Coin, k: f64) -> Result<EigenSystem, SpectralError> {
    let u = u_tilde(coin, k);
    let family = coin.family();
    let omega = dispersion_omega(coin, k);
    let omega0 = constant_branch_omega(family);
    let lam0 = match family {
        Family::X => Complex64::new(1.0, 0.0),
        Family::Y => Complex64::new(-1.0, 0.0),
    };
    let lam_plus = Complex64::from_polar(1.0, omega);
    let eigenvalues = [lam0, lam_plus, lam_plus.conj()];
    let omegas = [omega0, omega, -omega];

    let mut vectors = [[Complex64::new(0.0, 0.0); 3]; 3];
    let mut used_fallback = false;
    let mut pending_degenerate: Vec<usize> = Vec::new();
    for j in 0..3 {
        if let Some(v) = closed_form_vector(coin, k, eigenvalues[j]) {
            if eigen_residual(&u, &v, eigenvalues[j]) <= RESIDUAL_TOL {
                vectors[j] = v;
                continue;
            }
        }
        used_fallback = true;
        match null_vector3(&u, eigenvalues[j]) {
            Some(v) if eigen_residual(&u, &v, eigenvalues[j]) <= RESIDUAL_TOL => vectors[j] = v,
            _ => pending_degenerate.push(j),
        }
    }
    if !pending_degenerate.is_empty() {
        resolve_degenerate(&u, &eigenvalues, &mut vectors, &pending_degenerate)
            .ok_or(SpectralError::DegenerateEigenvector { k })?;
        for j in &pending_degenerate {
            if eigen_residual(&u, &vectors[*j], eigenvalues[*j]) > RESIDUAL_TOL {
                return Err(SpectralError::DegenerateEigenvector { k });
            }
        }
    }
    Ok(EigenSystem { omegas, eigenvalues, vectors, used_fallback })
}

/// Amplitude `ψ(m, t)` reconstructed through momentum space:
///
/// `ψ(m, t) = (1/2π) ∫ e^{i(km + ω_j t)} ⟨v_j(k)|Ψ₀⟩ v_j(k) dk`, summed over
/// the three branches and evaluated by the midpoint trapezoid rule with
/// `nodes` points. Node contributions are combined by pairwise summation in
/// index order, so the result is bit-reproducible.
///
/// # Errors
/// [`SpectralError::QuadratureUnderresolved`] when
/// `nodes < 16·max(t, 1)`; [`SpectralError::DegenerateEigenvector`]
/// propagated from [`eigensystem`] (not reachable on the midpoint grid).
pub fn amplitude_via_fourier(
    coin: &Coin,
    init: &InitState,
    m: i64,
    t: u64,
    nodes: u64,
) -> Result<CVec3, SpectralError> {
    let needed = QUADRATURE_NODE_FACTOR * t.max(1);
    if nodes < needed {
        return Err(SpectralError::QuadratureUnderresolved { nodes, t, needed });
    }
    let n = nodes as usize;
    let psi0 = init.components();
    let step = 2.0 * std::f64::consts::PI / nodes as f64;
    let mut contributions = vec![[Complex64::new(0.0, 0.0); 3]; n];
    for (i, slot) in contributions.iter_mut().enumerate() {
        let k = -std::f64::consts::PI + (i as f64 + 0.5) * step;
        let sys = eigensystem(coin, k)?;
        let mut acc = [Complex64::new(0.0, 0.0); 3];
        for j in 0..3 {
            let weight = inner3(&sys.vectors[j], &psi0);
            let phase = Complex64::from_polar(1.0, sys.omegas[j] * t as f64 + k * m as f64);
            let w = weight * phase;
            for c in 0..3 {
                acc[c] += w * sys.vectors[j][c];
            }
        }
        *slot = acc;
    }
    let inv_n = 1.0 / nodes as f64;
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for (c, out_c) in out.iter_mut().enumerate() {
        for (i, contrib) in contributions.iter().enumerate() {
            column[i] = contrib[c];
        }
        *out_c = pairwise_sum_complex(&column) * inv_n;
    }
    Ok(out)
}

fn eigen_residual(u: &CMat3, v: &CVec3, lam: Complex64) -> f64 {
    let uv = matvec3(u, v);
    norm3(&[uv[0] - lam * v[0], uv[1] - lam * v[1], uv[2] - lam * v[2]])
}

/// Closed-form eigenvector of `Ũ(k)` for eigenvalue λ, normalized before
/// return; `None` when the construction degenerates (vector norm below
/// [`ADJUGATE_NORM_TOL`]), which happens exactly at rank drops of
/// `Ũ(k) − λI` — degenerate eigenvalues or eigenvectors with vanishing
/// middle component.
///
/// Writing `a = x − λe^{−ik}` and `b = x − λe^{ik}`, elimination of the
/// component equations gives, for family X (third coin entry z = 1 − x − y),
///
/// `v ∝ ( z² − y·b, a·b − z·y, y² − z·a )`,
///
/// and for family Y (third coin entry −w with w = 1 + x + y),
///
/// `v ∝ ( w² − y·b, a·b + y·w, y² + w·a )`.
fn closed_form_vector(coin: &Coin, k: f64, lam: Complex64) -> Option<CVec3> {
    let x = coin.x();
    let y = coin.y();
    let a = x - lam * Complex64::from_polar(1.0, -k);
    let b = x - lam * Complex64::from_polar(1.0, k);
    let v = match coin.family() {
        Family::X => {
            let z = coin.z();
            [z * z - y * b, a * b - z * y, y * y - z * a]
        }
        Family::Y => {
            let w = 1.0 + x + y;
            [w * w - y * b, a * b + y * w, y * y + w * a]
        }
    };
    let n = norm3(&v);
    if !n.is_finite() || n < ADJUGATE_NORM_TOL {
        return None;
    }
    Some([v[0] / n, v[1] / n, v[2] / n])
}

/// Fills eigenvector slots that the rank-2 extraction could not resolve:
/// a doubly degenerate pair spans the orthogonal complement of the simple
/// eigenvector; a triple degeneracy means `Ũ = λI` and any orthonormal basis
/// works. Returns `None` if the geometry does not match either case.
fn resolve_degenerate(
    u: &CMat3,
    eigenvalues: &[Complex64; 3],
    vectors: &mut [CVec3; 3],
    pending: &[usize],
) -> Option<()> {
    match pending.len() {
        2 => {
            let resolved = (0..3).find(|j| !pending.contains(j))?;
            let anchor = vectors[resolved];
            // First complement vector: Gram–Schmidt a basis vector against
            // the anchor, choosing the basis vector least aligned with it.
            let mut best = 0;
            let mut best_overlap = f64::INFINITY;
            for (i, &a) in anchor.iter().enumerate() {
                let overlap = a.norm();
                if overlap < best_overlap {
                    best_overlap = overlap;
                    best = i;
                }
            }
            let mut w1 = [Complex64::new(0.0, 0.0); 3];
            w1[best] = Complex64::new(1.0, 0.0);
            let proj = inner3(&anchor, &w1);
            for c in 0..3 {
                w1[c] -= proj * anchor[c];
            }
            let n1 = norm3(&w1);
            if n1 < 1e-8 {
                return None;
            }
            for c in w1.iter_mut() {
                *c /= n1;
            }
            // Second complement vector: cross product of conjugates is
            // Hermitian-orthogonal to both anchor and w1.
            let a = [anchor[0].conj(), anchor[1].conj(), anchor[2].conj()];
            let b = [w1[0].conj(), w1[1].conj(), w1[2].conj()];
            let mut w2 = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            let n2 = norm3(&w2);
            if n2 < 1e-8 {
                return None;
            }
            for c in w2.iter_mut() {
                *c /= n2;
            }
            vectors[pending[0]] = w1;
            vectors[pending[1]] = w2;
            Some(())
        }
        3 => {
            // Triple degeneracy: Ũ must equal λ·I.
            let lam = eigenvalues[0];
            let mut defect = 0.0;
            for (i, row) in u.iter().enumerate() {
                for (j, &cell) in row.iter().enumerate() {
                    let target = if i == j { lam } else { Complex64::new(0.0, 0.0) };
                    defect += (cell - target).norm_sqr();
                }
            }
            if defect.sqrt() > 1e-8 {
                return None;
            }
            for (j, v) in vectors.iter_mut().enumerate() {
                *v = [Complex64::new(0.0, 0.0); 3];
                v[j] = Complex64::new(1.0, 0.0);
            }
            Some(())
        }
        _ => None,
    }
}
