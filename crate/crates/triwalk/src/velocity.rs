//! Dispersion, stationary points, and peak velocities of the propagating
//! fronts.
//!
//! The oscillating branch `ω(k) ∈ [0, π]` (see [`crate::spectral`]) moves
//! probability at the group velocity `dω/dk = x·sin k / sin ω(k)`. Peaks of
//! the position distribution travel at the group velocity evaluated at
//! stationary points of `dω/dk` (zeros of `d²ω/dk²`), which have closed
//! forms in `c = cos θ`:
//!
//! * family X: `k₀ = π − arccos( 2(2c+1) / (5c+7 ± 3√((c+1)(c+5))) )`;
//! * family Y: `k₀ = π − arccos( 2(2c−1) / (5c−7 ∓ 3√((1−c)(5−c))) )`.
//!
//! The `+`/`−` choice gives the first/second stationary point; the second
//! exists only when its arccos argument lies in `[−1, 1]` (it does not for
//! any admissible θ away from the special values, and is reported absent).
//! The rationalized arguments above are used instead of the textbook
//! `(5c+7 ∓ 3√(…))/(2(2c+1))` quotients because the latter suffer
//! catastrophic cancellation near the flat-band angles.
//!
//! Three angles per family are special-cased by a table: the ballistic
//! points (identity-like coins, speed 1), the flat-band cyclic-permutation
//! points (speed 0, fully localized), and the Grover-type points where the
//! band edge itself propagates at `1/√3`.

use thiserror::Error;

use crate::coin::{wrap_angle, Family};
use crate::numeric::clamp_unit;

/// Band-edge threshold on `sin ω` below which the group velocity is
/// undefined.
pub const BAND_EDGE_TOL: f64 = 1e-12;

/// Tolerance on `3x = trace` used to detect the special angles.
pub const SPECIAL_THETA_TOL: f64 = 1e-9;

/// Errors from velocity computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum VelocityError {
    #[error(
        "θ = {theta:.17} is a special angle of family {family}; the stationary-point \
         closed form degenerates — use peak_velocities' tabulated values"
    )]
    SpecialTheta { family: Family, theta: f64 },
    #[error("band edge at k = {k:.17}: sin ω = {sin_omega:.3e} vanishes, group velocity undefined")]
    BandEdge { k: f64, sin_omega: f64 },
}

/// Stationary wavenumbers of the group velocity in `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoints {
    /// First stationary point k₀¹ (always present away from special angles).
    pub k1: f64,
    /// Second stationary point k₀², absent when its arccos argument falls
    /// outside `[−1, 1]`.
    pub k2: Option<f64>,
}

/// Peak-velocity profile of one coin angle.
#[derive(Debug, Clone, Copy)]
pub struct VelocityProfile {
    pub family: Family,
    /// Canonical angle θ ∈ (−π, π].
    pub theta: f64,
    /// Stationary points; `None` at special angles (no closed form).
    pub k0_1: Option<f64>,
    pub k0_2: Option<f64>,
    /// First peak-velocity pair; `vr1 = −vl1`.
    pub vl1: f64,
    pub vr1: f64,
    /// Second pair, present iff `k0_2` is (or tabulated at special angles).
    pub vl2: Option<f64>,
    pub vr2: Option<f64>,
    /// Velocity of the central (localized) peak — identically 0.
    pub vs: f64,
    /// True when the values came from the special-angle table.
    pub from_special_table: bool,
}

/// Diagonal coin entry `x` as a function of θ.
#[must_use]
fn x_of_theta(family: Family, c: f64) -> f64 {
    match family {
        Family::X => (1.0 + 2.0 * c) / 3.0,
        Family::Y => (2.0 * c - 1.0) / 3.0,
    }
}

/// Oscillating-branch phase `ω(k) ∈ [0, π]` for the coin at angle θ.
///
/// Identical to [`crate::spectral::dispersion_omega`] of the corresponding
/// coin; exposed here in (family, θ) form for sweep ergonomics.
#[must_use]
pub fn dispersion(family: Family, theta: f64, k: f64) -> f64 {
    let x = x_of_theta(family, wrap_angle(theta).cos());
    let cos_omega = match family {
        Family::X => x * k.cos() - (1.0 - x) / 2.0,
        Family::Y => x * k.cos() + (1.0 + x) / 2.0,
    };
    clamp_unit(cos_omega).acos()
}

/// Group velocity `dω/dk = x·sin k / sin ω(k)` of the oscillating branch.
///
/// # Errors
/// [`VelocityError::BandEdge`] when `sin ω(k) ≤` [`BAND_EDGE_TOL`]
/// (ω at 0 or π, where the derivative is not defined).
pub fn group_velocity(family: Family, theta: f64, k: f64) -> Result<f64, VelocityError> {
    let x = x_of_theta(family, wrap_angle(theta).cos());
    let cos_omega = match family {
        Family::X => x * k.cos() - (1.0 - x) / 2.0,
        Family::Y => x * k.cos() + (1.0 + x) / 2.0,
    };
    let sin_omega = (1.0 - clamp_unit(cos_omega).powi(2)).max(0.0).sqrt();
    if sin_omega <= BAND_EDGE_TOL {
        return Err(VelocityError::BandEdge { k, sin_omega });
    }
    Ok(x * k.sin() / sin_omega)
}

/// The special angles where the stationary-point closed form degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SpecialAngle {
    /// Identity (X θ=0) or −I (Y θ=±π): free ballistic motion at speed 1.
    Ballistic,
    /// Cyclic permutation points: flat oscillating band, no transport.
    FlatBand,
    /// Grover (X θ=±π) or −Grover (Y θ=0): band-edge propagation at 1/√3.
    GroverPoint,
}

fn special_angle(family: Family, c: f64) -> Option<SpecialAngle> {
    // Detected on the trace u = 3x, matching the coin permutation tolerance.
    let u = match family {
        Family::X => 1.0 + 2.0 * c,
        Family::Y => 2.0 * c - 1.0,
    };
    let tol = 3.0 * SPECIAL_THETA_TOL;
    if u.abs() <= tol {
        Some(SpecialAngle::FlatBand)
    } else {
        match family {
            Family::X if (u - 3.0).abs() <= tol => Some(SpecialAngle::Ballistic),
            Family::X if (u + 1.0).abs() <= tol => Some(SpecialAngle::GroverPoint),
            Family::Y if (u + 3.0).abs() <= tol => Some(SpecialAngle::Ballistic),
            Family::Y if (u - 1.0).abs() <= tol => Some(SpecialAngle::GroverPoint),
            _ => None,
        }
    }
}

/// Stationary points of the group velocity.
///
/// # Errors
/// [`VelocityError::SpecialTheta`] at the three special angles per family,
/// where the caller should use [`peak_velocities`]' table instead.
pub fn stationary_points(family: Family, theta: f64) -> Result<StationaryPoints, VelocityError> {
    let theta = wrap_angle(theta);
    let c = theta.cos();
    if special_angle(family, c).is_some() {
        return Err(VelocityError::SpecialTheta { family, theta });
    }
    let (arg1, arg2) = match family {
        Family::X => {
            let r = ((c + 1.0) * (c + 5.0)).sqrt();
            (
                2.0 * (2.0 * c + 1.0) / (5.0 * c + 7.0 + 3.0 * r),
                2.0 * (2.0 * c + 1.0) / (5.0 * c + 7.0 - 3.0 * r),
            )
        }
        Family::Y => {
            let r = ((1.0 - c) * (5.0 - c)).sqrt();
            (
                2.0 * (2.0 * c - 1.0) / (5.0 * c - 7.0 - 3.0 * r),
                2.0 * (2.0 * c - 1.0) / (5.0 * c - 7.0 + 3.0 * r),
            )
        }
    };
    let k1 = std::f64::consts::PI - clamp_unit(arg1).acos();
    let k2 = if (-1.0..=1.0).contains(&arg2) {
        Some(std::f64::consts::PI - arg2.acos())
    } else {
        None
    };
    Ok(StationaryPoints { k1, k2 })
}

/// Full peak-velocity profile; total over θ via the special-angle table.
///
/// Away from special angles the closed branch forms are used (with the sign
/// flipping as θ crosses the flat-band angle), and they equal
/// [`group_velocity`] at [`stationary_points`] to 1e−10.
#[must_use]
pub fn peak_velocities(family: Family, theta: f64) -> VelocityProfile {
    let theta = wrap_angle(theta);
    let c = theta.cos();
    let mut profile = VelocityProfile {
        family,
        theta,
        k0_1: None,
        k0_2: None,
        vl1: 0.0,
        vr1: 0.0,
        vl2: None,
        vr2: None,
        vs: 0.0,
        from_special_table: false,
    };
    if let Some(kind) = special_angle(family, c) {
        profile.from_special_table = true;
        let inv_sqrt3 = 1.0 / 3.0_f64.sqrt();
        let vl1 = match (family, kind) {
            (_, SpecialAngle::FlatBand) => 0.0,
            (Family::X, SpecialAngle::Ballistic) => 1.0,
            (Family::Y, SpecialAngle::Ballistic) => -1.0,
            (Family::X, SpecialAngle::GroverPoint) => -inv_sqrt3,
            (Family::Y, SpecialAngle::GroverPoint) => inv_sqrt3,
        };
        profile.vl1 = vl1;
        profile.vr1 = -vl1;
        return profile;
    }
    let sp = stationary_points(family, theta).expect("non-special angle");
    profile.k0_1 = Some(sp.k1);
    profile.k0_2 = sp.k2;
    let (sign, inner1, inner2) = match family {
        Family::X => {
            // Positive branch for |θ| < 2π/3 (c > −1/2), negative beyond.
            let r = (c * c + 6.0 * c + 5.0).sqrt();
            (
                if c > -0.5 { 1.0 } else { -1.0 },
                (9.0 * r - (15.0 * c + 21.0)) / (r - (c + 3.0)),
                (9.0 * r + 15.0 * c + 21.0) / (r + c + 3.0),
            )
        }
        Family::Y => {
            // Positive branch for |θ| < π/3 (c > 1/2), negative beyond.
            let r = (c * c - 6.0 * c + 5.0).sqrt();
            (
                if c > 0.5 { 1.0 } else { -1.0 },
                (9.0 * r + 15.0 * c - 21.0) / (r + c - 3.0),
                (9.0 * r - (15.0 * c - 21.0)) / (r - (c - 3.0)),
            )
        }
    };
    profile.vl1 = sign * inner1.max(0.0).sqrt() / 3.0;
    profile.vr1 = -profile.vl1;
    if sp.k2.is_some() {
        let vl2 = sign * inner2.max(0.0).sqrt() / 3.0;
        profile.vl2 = Some(vl2);
        profile.vr2 = Some(-vl2);
    }
    profile
}

/// Predicted peak sites after `t` steps: `round(v·t)` for every present
/// nonzero peak velocity, plus the central peak at 0; sorted and deduplicated.
#[must_use]
pub fn predicted_peak_positions(profile: &VelocityProfile, t: u64) -> Vec<i64> {
    let mut out = vec![0i64];
    let mut velocities = vec![profile.vl1, profile.vr1];
    if let (Some(l2), Some(r2)) = (profile.vl2, profile.vr2) {
        velocities.push(l2);
        velocities.push(r2);
    }
    for v in velocities {
        if v.abs() > 1e-12 {
            out.push((v * t as f64).round() as i64);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
