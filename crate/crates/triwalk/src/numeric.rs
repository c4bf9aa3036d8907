//! Small numeric utilities shared across the crate: deterministic pairwise
//! (tree) summation, safe clamping for inverse trigonometry, and complex
//! helpers for 3-vectors and 3×3 matrices.
//!
//! All reductions in this crate that feed tolerance-checked results go
//! through [`pairwise_sum`] / [`pairwise_sum_complex`] in a fixed index
//! order, so results are bit-identical from run to run regardless of how the
//! surrounding work is scheduled.

use num_complex::Complex64;

/// Complex amplitude triple `(ψ₁, ψ₂, ψ₃)` attached to one lattice site.
pub type CVec3 = [Complex64; 3];

/// Dense complex 3×3 matrix in row-major order.
pub type CMat3 = [[Complex64; 3]; 3];

/// Threshold below which a scalar sum falls back to sequential accumulation.
const PAIRWISE_LEAF: usize = 32;

/// Sums `values` with pairwise (tree) recursion.
///
/// Error grows like O(log n) in ulps instead of O(n) for naive left-to-right
/// accumulation, which matters for norm checks at horizon 10⁴ and for
/// quadrature with thousands of nodes.
#[must_use]
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise sum over complex values; same guarantees as [`pairwise_sum`].
#[must_use]
pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    if values.len() <= PAIRWISE_LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
}

/// Clamps a cosine that may overshoot `[-1, 1]` by rounding noise.
///
/// Dispersion branches are proven to stay inside the interval analytically;
/// floating-point evaluation can exceed it by a few ulps (≲1e−15), which
/// would turn `acos` into NaN.
#[must_use]
pub fn clamp_unit(c: f64) -> f64 {
    c.clamp(-1.0, 1.0)
}

/// Euclidean norm of a complex 3-vector.
#[must_use]
pub fn norm3(v: &CVec3) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()).sqrt()
}

/// Hermitian inner product `⟨a|b⟩ = Σ conj(a_i)·b_i`.
#[must_use]
pub fn inner3(a: &CVec3, b: &CVec3) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]
}

/// Matrix–vector product for a 3×3 complex matrix.
#[must_use]
pub fn matvec3(m: &CMat3, v: &CVec3) -> CVec3 {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Matrix–matrix product for 3×3 complex matrices.
#[must_use]
pub fn matmul3(a: &CMat3, b: &CMat3) -> CMat3 {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

/// Determinant of a complex 3×3 matrix.
#[must_use]
pub fn det3(m: &CMat3) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Frobenius distance `‖A − B‖_F`.
#[must_use]
pub fn frobenius_distance(a: &CMat3, b: &CMat3) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += (a[i][j] - b[i][j]).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Deviation of `U† U` from the identity in Frobenius norm.
#[must_use]
pub fn unitarity_defect3(u: &CMat3) -> f64 {
    let mut gram = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = u[0][i].conj() * u[0][j] + u[1][i].conj() * u[1][j] + u[2][i].conj() * u[2][j];
        }
    }
    let id = identity3();
    frobenius_distance(&gram, &id)
}

/// Complex 3×3 identity.
#[must_use]
pub fn identity3() -> CMat3 {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    [[o, z, z], [z, o, z], [z, z, o]]
}

/// Unit null vector of `M − λI` for a 3×3 complex matrix, taken from the
/// largest bilinear (unconjugated) cross product of row pairs.
///
/// A vector `v` with `(M − λI)v = 0` is orthogonal to every row of `M − λI`
/// under the plain dot product, so the cross product of two independent rows
/// spans the null space when the matrix has rank 2. Returns `None` when every
/// candidate is numerically zero (rank ≤ 1, i.e. a degenerate eigenvalue).
#[must_use]
pub fn null_vector3(m: &CMat3, lambda: Complex64) -> Option<CVec3> {
    let mut a = *m;
    for i in 0..3 {
        a[i][i] -= lambda;
    }
    let cross = |p: &[Complex64; 3], q: &[Complex64; 3]| -> CVec3 {
        [
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        ]
    };
    let candidates = [cross(&a[0], &a[1]), cross(&a[1], &a[2]), cross(&a[0], &a[2])];
    let mut best: Option<CVec3> = None;
    let mut best_norm = 0.0;
    for c in candidates {
        let n = norm3(&c);
        if n > best_norm {
            best_norm = n;
            best = Some(c);
        }
    }
    if best_norm < 1e-8 {
        return None;
    }
    let v = best.expect("candidate above threshold");
    Some([v[0] / best_norm, v[1] / best_norm, v[2] / best_norm])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_exact_arithmetic_series() {
        let values: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&values), 500_500.0);
    }

    #[test]
    fn pairwise_sum_is_more_accurate_than_naive_on_cancelling_series() {
        // Alternating harmonic-like series with large dynamic range.
        let values: Vec<f64> = (0..1 << 16)
            .map(|i| if i % 2 == 0 { 1.0 + 1e-13 * i as f64 } else { -1.0 })
            .collect();
        let exact: f64 = 1e-13 * ((0..1 << 15).map(|i| 2.0 * i as f64).sum::<f64>());
        let pairwise = pairwise_sum(&values);
        assert!((pairwise - exact).abs() <= 1e-12, "pairwise drifted: {pairwise} vs {exact}");
    }

    #[test]
    fn unitarity_defect_detects_scaling() {
        let mut m = identity3();
        m[1][1] = Complex64::new(1.0 + 1e-6, 0.0);
        assert!(unitarity_defect3(&m) > 1e-6);
        assert!(unitarity_defect3(&identity3()) == 0.0);
    }
}
