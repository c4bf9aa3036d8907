//! Coin families for the three-state walk.
//!
//! A coin is a real circulant 3×3 matrix `C = circ(x, y, z)` (rows
//! `(x,y,z), (z,x,y), (y,z,x)`), equivalently `C = x·I + y·P₁₂₃ + z·P₁₃₂`
//! with the cyclic permutations `P₁₂₃ = circ(0,1,0)` and `P₁₃₂ = circ(0,0,1)`.
//! Unitarity confines the parameters to one of two ellipses:
//!
//! * family **X** (`det C = +1`): `z = 1 − x − y`,
//!   `x² + y² − x − y + xy = 0`, `−1/3 ≤ x ≤ 1`;
//! * family **Y** (`det C = −1`): `z = −1 − x − y`,
//!   `x² + y² + x + y + xy = 0`, `−1 ≤ x ≤ 1/3`.
//!
//! Each ellipse is traced by a single angle θ ∈ (−π, π]:
//!
//! * X: `x = (1 + 2cosθ)/3`, `y = (1 − cosθ)/3 + sinθ/√3`;
//! * Y: `x = (2cosθ − 1)/3`, `y = −(1 + cosθ)/3 + sinθ/√3`.
//!
//! The transpose (= inverse) of a coin corresponds to θ ↦ −θ and swaps
//! `y ↔ z`. Six parameter points are (signed) permutation matrices; walks
//! driven by them have constant eigenvalue spectra and are tagged with
//! [`PermutationKind`] so that downstream code can special-case them.

use num_complex::Complex64;
use thiserror::Error;

use crate::numeric::{CMat3, CVec3};

/// Tolerance on the ellipse residual accepted from *user-supplied* `(x, y)`.
pub const ELLIPSE_INPUT_TOL: f64 = 1e-10;
/// Ellipse residual guaranteed for *constructed* coins (after canonicalizing
/// through θ).
pub const ELLIPSE_CONSTRUCTED_TOL: f64 = 1e-12;
/// Slack admitted on the closed `x`-range check for user-supplied parameters.
pub const RANGE_SLACK: f64 = 1e-9;
/// Distance from a permutation parameter point below which a coin is tagged.
pub const PERMUTATION_TOL: f64 = 1e-9;

/// The two one-parameter coin families, distinguished by determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `det C = +1`; contains I, P₁₂₃, P₁₃₂ and the Grover matrix at θ = ±π.
    X,
    /// `det C = −1`; contains −I, −P₁₂₃, −P₁₃₂ and −Grover at θ = 0.
    Y,
}

impl Family {
    /// Determinant shared by every coin of the family.
    #[must_use]
    pub fn det(self) -> f64 {
        match self {
            Family::X => 1.0,
            Family::Y => -1.0,
        }
    }

    /// Closed admissible range of the diagonal entry `x`.
    #[must_use]
    pub fn x_range(self) -> (f64, f64) {
        match self {
            Family::X => (-1.0 / 3.0, 1.0),
            Family::Y => (-1.0, 1.0 / 3.0),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::X => "X",
            Family::Y => "Y",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = CoinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "X" | "x" => Ok(Family::X),
            "Y" | "y" => Ok(Family::Y),
            other => Err(CoinError::UnknownFamily { name: other.to_string() }),
        }
    }
}

/// Signed permutation matrices reachable on the coin ellipses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PermutationKind {
    /// X, θ = 0: the identity.
    Identity,
    /// X, θ = +2π/3: `P₁₂₃ = circ(0,1,0)`.
    Cycle123,
    /// X, θ = −2π/3: `P₁₃₂ = circ(0,0,1)`.
    Cycle132,
    /// Y, θ = ±π: `−I`.
    NegIdentity,
    /// Y, θ = −π/3: `−P₁₂₃`.
    NegCycle123,
    /// Y, θ = +π/3: `−P₁₃₂`.
    NegCycle132,
}

impl PermutationKind {
    /// True for the three negated permutations (family Y points).
    #[must_use]
    pub fn is_negated(self) -> bool {
        matches!(
            self,
            PermutationKind::NegIdentity
                | PermutationKind::NegCycle123
                | PermutationKind::NegCycle132
        )
    }

    /// The unsigned permutation underlying this point.
    #[must_use]
    pub fn unsigned(self) -> PermutationKind {
        match self {
            PermutationKind::NegIdentity => PermutationKind::Identity,
            PermutationKind::NegCycle123 => PermutationKind::Cycle123,
            PermutationKind::NegCycle132 => PermutationKind::Cycle132,
            other => other,
        }
    }
}

impl std::fmt::Display for PermutationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PermutationKind::Identity => "I",
            PermutationKind::Cycle123 => "P123",
            PermutationKind::Cycle132 => "P132",
            PermutationKind::NegIdentity => "-I",
            PermutationKind::NegCycle123 => "-P123",
            PermutationKind::NegCycle132 => "-P132",
        })
    }
}

/// Errors from coin construction.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoinError {
    #[error("unknown coin family {name:?}; expected \"X\" or \"Y\"")]
    UnknownFamily { name: String },
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error(
        "x = {x:.17} outside the family-{family} range [{min}, {max}] \
         (slack {slack:.1e})"
    )]
    OutOfRange { family: Family, x: f64, min: f64, max: f64, slack: f64 },
    #[error(
        "(x, y) = ({x:.17}, {y:.17}) is off the family-{family} unitarity \
         ellipse: residual {residual:.3e} exceeds {tol:.1e}"
    )]
    OffEllipse { family: Family, x: f64, y: f64, residual: f64, tol: f64 },
}

/// A unitary circulant coin, canonicalized through its angle θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin {
    family: Family,
    theta: f64,
    x: f64,
    y: f64,
    z: f64,
    permutation: Option<PermutationKind>,
}

impl Coin {
    /// Builds the family coin at angle θ (wrapped into the canonical branch
    /// `(−π, π]`).
    ///
    /// # Errors
    /// [`CoinError::NonFinite`] if θ is NaN or infinite.
    pub fn from_theta(family: Family, theta: f64) -> Result<Self, CoinError> {
        if !theta.is_finite() {
            return Err(CoinError::NonFinite { name: "theta", value: theta });
        }
        let theta = wrap_angle(theta);
        Ok(Self::from_canonical_theta(family, theta))
    }

    /// Builds a coin from ellipse coordinates `(x, y)`.
    ///
    /// The point is validated against the family range (slack
    /// [`RANGE_SLACK`]) and the unitarity ellipse (residual at most
    /// [`ELLIPSE_INPUT_TOL`]), then canonicalized: θ is recovered and the
    /// stored entries are rebuilt from θ, so the constructed coin satisfies
    /// the ellipse to [`ELLIPSE_CONSTRUCTED_TOL`] even when the input only
    /// met the looser input tolerance.
    ///
    /// # Errors
    /// [`CoinError::NonFinite`], [`CoinError::OutOfRange`], or
    /// [`CoinError::OffEllipse`].
    pub fn from_xy(family: Family, x: f64, y: f64) -> Result<Self, CoinError> {
        if !x.is_finite() {
            return Err(CoinError::NonFinite { name: "x", value: x });
        }
        if !y.is_finite() {
            return Err(CoinError::NonFinite { name: "y", value: y });
        }
        let (min, max) = family.x_range();
        if x < min - RANGE_SLACK || x > max + RANGE_SLACK {
            return Err(CoinError::OutOfRange { family, x, min, max, slack: RANGE_SLACK });
        }
        let residual = ellipse_residual(family, x, y);
        if residual.abs() > ELLIPSE_INPUT_TOL {
            return Err(CoinError::OffEllipse { family, x, y, residual, tol: ELLIPSE_INPUT_TOL });
        }
        // Recover θ on the canonical branch. cosθ is linear in x; sinθ is
        // linear in y once cosθ is known, so the two ellipse branches for a
        // given x resolve through the sign of s.
        let (c, s) = match family {
            Family::X => {
                let c = crate::numeric::clamp_unit((3.0 * x - 1.0) / 2.0);
                (c, 3.0_f64.sqrt() * (y - (1.0 - c) / 3.0))
            }
            Family::Y => {
                let c = crate::numeric::clamp_unit((3.0 * x + 1.0) / 2.0);
                (c, 3.0_f64.sqrt() * (y + (1.0 + c) / 3.0))
            }
        };
        let mut theta = s.atan2(c);
        if theta == -std::f64::consts::PI {
            theta = std::f64::consts::PI;
        }
        Ok(Self::from_canonical_theta(family, theta))
    }

    fn from_canonical_theta(family: Family, theta: f64) -> Self {
        let c = theta.cos();
        let s = theta.sin();
        let sqrt3 = 3.0_f64.sqrt();
        let (x, y, z) = match family {
            Family::X => {
                let x = (1.0 + 2.0 * c) / 3.0;
                let y = (1.0 - c) / 3.0 + s / sqrt3;
                (x, y, 1.0 - x - y)
            }
            Family::Y => {
                let x = (2.0 * c - 1.0) / 3.0;
                let y = -(1.0 + c) / 3.0 + s / sqrt3;
                (x, y, -1.0 - x - y)
            }
        };
        let permutation = detect_permutation(family, x, y);
        Self { family, theta, x, y, z, permutation }
    }

    /// Family of the coin.
    #[must_use]
    pub fn family(&self) -> Family {
        self.family
    }

    /// Canonical angle θ ∈ (−π, π].
    #[must_use]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Diagonal entry `x` (one third of the trace).
    #[must_use]
    pub fn x(&self) -> f64 {
        self.x
    }

    /// First off-diagonal entry `y`.
    #[must_use]
    pub fn y(&self) -> f64 {
        self.y
    }

    /// Second off-diagonal entry `z` (fixed by the family trace relation).
    #[must_use]
    pub fn z(&self) -> f64 {
        self.z
    }

    /// Signed-permutation tag, when the coin sits within
    /// [`PERMUTATION_TOL`] of one of the six permutation points.
    #[must_use]
    pub fn permutation(&self) -> Option<PermutationKind> {
        self.permutation
    }

    /// The matrix rows `(x,y,z), (z,x,y), (y,z,x)`.
    #[must_use]
    pub fn entries(&self) -> [[f64; 3]; 3] {
        let Coin { x, y, z, .. } = *self;
        [[x, y, z], [z, x, y], [y, z, x]]
    }

    /// The matrix as a complex 3×3 (convenience for spectral code).
    #[must_use]
    pub fn entries_complex(&self) -> CMat3 {
        let e = self.entries();
        let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = Complex64::new(e[i][j], 0.0);
            }
        }
        out
    }

    /// Coefficients `(x, y, z)` of the permutation-basis expansion
    /// `C = x·I + y·P₁₂₃ + z·P₁₃₂`.
    #[must_use]
    pub fn permutation_sum_coefficients(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }

    /// The inverse coin `C⁻¹ = Cᵀ`, i.e. the coin at −θ (swaps `y ↔ z`).
    #[must_use]
    pub fn inverse(&self) -> Coin {
        let mut theta = -self.theta;
        if theta == -std::f64::consts::PI {
            theta = std::f64::consts::PI;
        }
        Self::from_canonical_theta(self.family, theta)
    }

    /// Applies the coin to one site's amplitude triple.
    #[must_use]
    pub fn apply(&self, v: &CVec3) -> CVec3 {
        let Coin { x, y, z, .. } = *self;
        [
            x * v[0] + y * v[1] + z * v[2],
            z * v[0] + x * v[1] + y * v[2],
            y * v[0] + z * v[1] + x * v[2],
        ]
    }
}

/// Residual of the family's unitarity ellipse at `(x, y)`; zero on the curve.
#[must_use]
pub fn ellipse_residual(family: Family, x: f64, y: f64) -> f64 {
    match family {
        Family::X => x * x + y * y - x - y + x * y,
        Family::Y => x * x + y * y + x + y + x * y,
    }
}

/// Wraps an angle into the canonical branch `(−π, π]`.
#[must_use]
pub fn wrap_angle(theta: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    if theta > -PI && theta <= PI {
        return theta;
    }
    let wrapped = theta - TAU * (theta / TAU).round();
    if wrapped <= -PI {
        wrapped + TAU
    } else if wrapped > PI {
        wrapped - TAU
    } else {
        wrapped
    }
}

fn detect_permutation(family: Family, x: f64, y: f64) -> Option<PermutationKind> {
    match family {
        Family::X => {
            if (x - 1.0).abs() <= PERMUTATION_TOL {
                Some(PermutationKind::Identity)
            } else if x.abs() <= PERMUTATION_TOL {
                // On the X ellipse, x = 0 forces y ∈ {0, 1}.
                if (y - 1.0).abs() < y.abs() {
                    Some(PermutationKind::Cycle123)
                } else {
                    Some(PermutationKind::Cycle132)
                }
            } else {
                None
            }
        }
        Family::Y => {
            if (x + 1.0).abs() <= PERMUTATION_TOL {
                Some(PermutationKind::NegIdentity)
            } else if x.abs() <= PERMUTATION_TOL {
                // On the Y ellipse, x = 0 forces y ∈ {−1, 0}.
                if (y + 1.0).abs() < y.abs() {
                    Some(PermutationKind::NegCycle123)
                } else {
                    Some(PermutationKind::NegCycle132)
                }
            } else {
                None
            }
        }
    }
}
