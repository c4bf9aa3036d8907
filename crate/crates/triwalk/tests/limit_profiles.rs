//! Regression pins for the localization limits.
//!
//! The frozen numbers were produced by this crate's own oracles (windowed
//! empirical averages and the constant-branch projector integral, which
//! agree with the closed forms to ~1e−12) and are pinned here so that any
//! future sign or orientation regression in `limits` fails loudly.

use num_complex::Complex64;
use std::f64::consts::PI;

use triwalk::coin::{Coin, Family};
use triwalk::evolve::{time_averaged_return, InitState, WalkState};
use triwalk::limits::{escaping_state, limit_measure_any, localization_sum_any};
use triwalk::numeric::inner3;
use triwalk::oracle::empirical_limit;
use triwalk::spectral::eigensystem;

fn grover() -> Coin {
    Coin::from_theta(Family::X, PI).unwrap()
}

fn chirality_one() -> InitState {
    InitState::new(
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    )
    .unwrap()
}

/// `((1+2i), (2−i), 2)/√14` — complex, all components distinct.
fn complex_init() -> InitState {
    let s = 14.0_f64.sqrt();
    InitState::new(
        Complex64::new(1.0, 2.0) / s,
        Complex64::new(2.0, -1.0) / s,
        Complex64::new(2.0, 0.0) / s,
    )
    .unwrap()
}

/// The five pinned (coin, init) combinations with their limit profiles on
/// `m = −2 ..= 2`.
fn frozen_profiles() -> Vec<(&'static str, Coin, InitState, [f64; 5])> {
    let x_half = Coin::from_theta(Family::X, PI / 2.0).unwrap();
    let y_sixth = Coin::from_theta(Family::Y, PI / 6.0).unwrap();
    vec![
        (
            "Grover, (1,0,0)",
            grover(),
            chirality_one(),
            [0.000021041557, 0.002061857861, 0.202041028867, 0.202041028867, 0.002061857861],
        ),
        (
            "X θ=π/2, (1,0,0)",
            x_half,
            chirality_one(),
            [0.000018275139, 0.001132763782, 0.070213079362, 0.183820228224, 0.002965614083],
        ),
        (
            "X θ=π/2, left-right",
            x_half,
            InitState::left_right(),
            [0.000719399326, 0.044591151965, 0.127016653793, 0.116741151442, 0.001883411886],
        ),
        (
            "Y θ=π/6, complex",
            y_sixth,
            complex_init(),
            [0.000525804340, 0.091874208639, 0.198263732473, 0.077058327210, 0.000441011721],
        ),
        (
            "Y θ=π/6, symmetric",
            y_sixth,
            InitState::symmetric(),
            [0.000561111644, 0.098043481926, 0.312290234594, 0.141093588536, 0.000807491267],
        ),
    ]
}

#[test]
fn frozen_limit_profiles() {
    for (label, coin, init, expected) in frozen_profiles() {
        for (i, m) in (-2..=2).enumerate() {
            let got = limit_measure_any(&coin, &init, m);
            assert!(
                (got - expected[i]).abs() <= 1e-11,
                "{label}, m={m}: limit {got:.12} != pinned {:.12}",
                expected[i]
            );
        }
    }
}

/// The limit profile must equal the modulus-squared Fourier transform of the
/// constant-branch projection of the initial spinor:
/// `lim P(m) = ‖∫ dk/2π e^{ikm} ⟨v₀(k)|ψ₀⟩ v₀(k)‖²` — an independent route
/// through `spectral` that never touches the `limits` constants.
#[test]
fn limit_matches_constant_branch_projector_integral() {
    let nodes = 2048usize;
    for (label, coin, init, _) in frozen_profiles() {
        let psi0 = init.components();
        for m in -2i64..=2 {
            let mut acc = [Complex64::new(0.0, 0.0); 3];
            for i in 0..nodes {
                let k = -PI + (i as f64 + 0.5) * 2.0 * PI / nodes as f64;
                let sys = eigensystem(&coin, k).unwrap();
                let v0 = sys.vectors[0];
                let w = inner3(&v0, &psi0) * Complex64::from_polar(1.0, k * m as f64);
                for c in 0..3 {
                    acc[c] += w * v0[c];
                }
            }
            let p: f64 =
                acc.iter().map(|c| (c / nodes as f64).norm_sqr()).sum();
            let closed = limit_measure_any(&coin, &init, m);
            assert!(
                (p - closed).abs() <= 1e-10,
                "{label}, m={m}: projector integral {p:.12} vs closed {closed:.12}"
            );
        }
    }
}

#[test]
fn anchor_limits_and_localization_sums() {
    let sym = InitState::symmetric();
    for (label, coin, limit_pin, sum_pin) in [
        ("Grover", grover(), 0.303061543301, 0.550510257217),
        ("X θ=π/4", Coin::from_theta(Family::X, PI / 4.0).unwrap(), 0.354779419668, 0.496631427622),
        ("Y θ=π/6", Coin::from_theta(Family::Y, PI / 6.0).unwrap(), 0.312290234594, 0.552803785690),
    ] {
        let limit = limit_measure_any(&coin, &sym, 0);
        let sum = localization_sum_any(&coin, &sym);
        assert!(
            (limit - limit_pin).abs() <= 1e-11,
            "{label}: limit at 0 {limit:.12} != pinned {limit_pin:.12}"
        );
        assert!(
            (sum - sum_pin).abs() <= 1e-11,
            "{label}: localization sum {sum:.12} != pinned {sum_pin:.12}"
        );
    }
}

/// Permutation coins drive period-3 orbits (period 1 for ±I); both the
/// instantaneous distributions and the Cesàro tables are exact.
#[test]
fn permutation_orbits_and_tables() {
    let init = complex_init();
    let aa = init.alpha().norm_sqr();
    let bb = init.beta().norm_sqr();
    let cc = init.gamma().norm_sqr();

    // ±I: the middle component never moves, the others leave ballistically.
    for coin in [
        Coin::from_theta(Family::X, 0.0).unwrap(),
        Coin::from_theta(Family::Y, PI).unwrap(),
        Coin::from_theta(Family::Y, -PI).unwrap(),
    ] {
        let walk = WalkState::run(coin, &init, 7);
        assert!((walk.probability(0) - bb).abs() <= 1e-14);
        assert!((walk.probability(-7) - aa).abs() <= 1e-14);
        assert!((walk.probability(7) - cc).abs() <= 1e-14);
        assert!((limit_measure_any(&coin, &init, 0) - bb).abs() <= 1e-14);
        assert_eq!(limit_measure_any(&coin, &init, 1), 0.0);
    }

    // Cyclic coins: orbit values at (m = −1, 0, +1) for t ≡ 1, 2 (mod 3),
    // all mass back at the origin for t ≡ 0, and the Cesàro table.
    let cycle123 = [
        Coin::from_theta(Family::X, 2.0 * PI / 3.0).unwrap(),
        Coin::from_theta(Family::Y, -PI / 3.0).unwrap(),
    ];
    let cycle132 = [
        Coin::from_theta(Family::X, -2.0 * PI / 3.0).unwrap(),
        Coin::from_theta(Family::Y, PI / 3.0).unwrap(),
    ];
    let check_orbit = |coin: &Coin, orbit1: [f64; 3], orbit2: [f64; 3], table: [f64; 3]| {
        let mut walk = WalkState::new(*coin, &init);
        for t in 1..=6u64 {
            walk.step();
            let expected = match t % 3 {
                1 => orbit1,
                2 => orbit2,
                _ => [0.0, 1.0, 0.0],
            };
            for (m, want) in (-1..=1).zip(expected) {
                assert!(
                    (walk.probability(m) - want).abs() <= 1e-13,
                    "cycle orbit t={t}, m={m}: {} vs {want}",
                    walk.probability(m)
                );
            }
            assert!(walk.probability(2) <= 1e-30 && walk.probability(-2) <= 1e-30);
        }
        for (m, want) in (-1..=1).zip(table) {
            let got = limit_measure_any(coin, &init, m);
            assert!((got - want).abs() <= 1e-13, "cycle table m={m}: {got} vs {want}");
        }
    };
    for coin in &cycle123 {
        check_orbit(
            coin,
            [bb, cc, aa],
            [cc, bb, aa],
            [(bb + cc) / 3.0, (aa + 2.0 * bb + 2.0 * cc) / 3.0, 2.0 * aa / 3.0],
        );
    }
    for coin in &cycle132 {
        check_orbit(
            coin,
            [cc, aa, bb],
            [cc, bb, aa],
            [2.0 * cc / 3.0, (2.0 * aa + 2.0 * bb + cc) / 3.0, (aa + bb) / 3.0],
        );
    }
}

/// Deterministic finite-time anchors (pairwise-summed evolution is
/// bit-stable, so these hold to ~1e−9 across runs).
#[test]
fn finite_time_anchors() {
    let sym = InitState::symmetric();
    let lr = InitState::left_right();

    let pairs: [(&str, Coin, u64, f64); 4] = [
        ("Grover sym t=5000", grover(), 5000, 0.293404562),
        ("X θ=π/4 sym t=5000", Coin::from_theta(Family::X, PI / 4.0).unwrap(), 5000, 0.354203977),
        ("Y θ=0 sym t=10000", Coin::from_theta(Family::Y, 0.0).unwrap(), 10_000, 0.310484917),
        ("Y θ=π/6 sym t=10000", Coin::from_theta(Family::Y, PI / 6.0).unwrap(), 10_000, 0.320027996),
    ];
    for (label, coin, t, pin) in pairs {
        let walk = WalkState::run(coin, &sym, t);
        let p = walk.probability(0);
        assert!((p - pin).abs() <= 2e-9, "{label}: P(0) {p:.9} != pinned {pin:.9}");
    }

    let g = time_averaged_return(grover(), &lr, 5000);
    assert!((g - 0.203069655).abs() <= 2e-9, "Grover lr average {g:.9}");
    let x = time_averaged_return(Coin::from_theta(Family::X, PI / 2.0).unwrap(), &lr, 5000);
    assert!((x - 0.128046851).abs() <= 2e-9, "X θ=π/2 lr average {x:.9}");
}

/// The escaping state kills the whole limit profile; empirically its
/// windowed return probability decays toward zero (it is O(1/t), so the
/// finite-window figure is small but nonzero).
#[test]
fn escaping_state_desk_scale() {
    for coin in [
        Coin::from_theta(Family::X, PI / 2.0).unwrap(),
        Coin::from_theta(Family::Y, PI / 6.0).unwrap(),
    ] {
        let esc = escaping_state(&coin).unwrap();
        for m in -2..=2 {
            assert!(limit_measure_any(&coin, &esc, m) <= 1e-30);
        }
        let empirical = empirical_limit(&coin, &esc, 0, 4000, 400).unwrap();
        assert!(empirical <= 5e-4, "windowed escape residue {empirical:.2e}");
    }
}
