//! Simulation and analysis of three-state discrete-time quantum walks on
//! the integer line with generalized Grover coins.
//!
//! The walker carries a three-dimensional coin; one step applies the coin
//! `C` at every site and then shifts the first component left, keeps the
//! second in place, and shifts the third right. The crate covers the two
//! one-parameter families of circulant-orthogonal coins (`X` and `Y`,
//! parametrized by an angle θ whose diagonal entry traces an ellipse),
//! and provides:
//!
//! * [`coin`] — coin construction, validation, and the six permutation
//!   points where the walk degenerates;
//! * [`evolve`] — exact state evolution in position space, distributions,
//!   norm tracking, side-lobe peak detection, time-averaged return
//!   probability;
//! * [`spectral`] — the momentum-space walk operator, closed-form
//!   dispersion `ω(k)` and eigenvectors, and amplitude reconstruction by
//!   quadrature over the Brillouin zone;
//! * [`limits`] — the long-time limit of the position distribution
//!   (a geometrically decaying localization profile), the localization
//!   sum, and the escaping (non-localizing) initial states;
//! * [`velocity`] — group velocities, stationary points, closed-form peak
//!   velocities, and predicted peak positions;
//! * [`oracle`] — independent brute-force cross-checks (dense walk
//!   operator on a ring, numeric eigensystem, empirical limits) used by the
//!   verification suite;
//! * [`numeric`] — small fixed-size complex linear algebra and compensated
//!   summation helpers shared by the rest of the crate.
//!
//! # Example
//!
//! Evolve the Grover walk from the symmetric initial state and compare the
//! return probability with its long-time limit:
//!
//! ```
//! use triwalk::coin::{Coin, Family};
//! use triwalk::evolve::{InitState, WalkState};
//! use triwalk::limits::limit_measure;
//!
//! let coin = Coin::from_theta(Family::X, std::f64::consts::PI).unwrap();
//! let init = InitState::symmetric();
//! let walk = WalkState::run(coin, &init, 2000);
//! let p0 = walk.probability(0);
//! let limit = limit_measure(&coin, &init, 0).unwrap();
//! assert!((p0 - limit).abs() < 5e-2);
//! ```

pub mod coin;
pub mod evolve;
pub mod limits;
pub mod numeric;
pub mod oracle;
pub mod spectral;
pub mod velocity;

pub use coin::{Coin, CoinError, Family, PermutationKind};
pub use evolve::{InitState, StateError, WalkState};
pub use limits::{LimitParams, LimitsError, LocalizationReport};
pub use spectral::{EigenSystem, SpectralError};
pub use velocity::{StationaryPoints, VelocityError, VelocityProfile};
