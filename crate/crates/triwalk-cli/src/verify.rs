//! The `verify` subcommand: deterministic cross-checks of every analytic
//! module against the brute-force oracles, one PASS/FAIL line per suite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triwalk::coin::{Coin, Family};
use triwalk::evolve::{InitState, WalkState};
use triwalk::limits::{escaping_state, limit_measure_any};
use triwalk::numeric::norm3;
use triwalk::oracle::{
    brute_force_amplitudes, dense_walk_operator, empirical_limit, numeric_eigensystem,
};
use triwalk::spectral::{amplitude_via_fourier, eigensystem, u_tilde};
use triwalk::velocity::{dispersion, group_velocity};

struct Suite {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn grover() -> Coin {
    Coin::from_theta(Family::X, PI).unwrap()
}

fn offset_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| -PI + (i as f64 + 0.5) * 2.0 * PI / n as f64)
}

/// `‖U†U − I‖_max` for the dense ring operator of two representative coins.
fn dense_unitarity() -> Suite {
    let mut worst = 0.0_f64;
    for coin in [grover(), Coin::from_theta(Family::Y, PI / 6.0).unwrap()] {
        let op = dense_walk_operator(&coin, 16);
        let dim = op.dim();
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..dim {
                    acc += op.entry(r, a).conj() * op.entry(r, b);
                }
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
    }
    Suite {
        name: "dense-operator-unitarity",
        pass: worst <= 1e-12,
        detail: format!("max defect {worst:.2e} (tol 1e-12)"),
    }
}

/// Stepping evolution vs dense matrix powers on random (coin, init, t).
fn brute_force_vs_evolve() -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let family = if rng.gen::<bool>() { Family::X } else { Family::Y };
        let theta = rng.gen_range(-PI..PI);
        let coin = Coin::from_theta(family, theta).unwrap();
        let mut comps =
            [(); 3].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let norm = comps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in &mut comps {
            *c /= norm;
        }
        let init = InitState::new(comps[0], comps[1], comps[2]).unwrap();
        let t = rng.gen_range(1..=12u64);
        let walk = WalkState::run(coin, &init, t);
        for (m, brute) in brute_force_amplitudes(&coin, &init, t).unwrap() {
            let direct = walk.amplitude(m);
            for c in 0..3 {
                worst = worst.max((brute[c] - direct[c]).norm());
            }
        }
    }
    Suite {
        name: "brute-force-vs-evolve",
        pass: worst <= 1e-12,
        detail: format!("20 seeded runs t ≤ 12, max amplitude diff {worst:.2e} (tol 1e-12)"),
    }
}

/// Closed-form eigenprojectors vs the deflation-based numeric eigensolver.
fn eigen_projectors() -> Suite {
    let mut worst = 0.0_f64;
    for family in [Family::X, Family::Y] {
        for theta in offset_grid(16) {
            let coin = Coin::from_theta(family, theta).unwrap();
            for k in offset_grid(32) {
                let u = u_tilde(&coin, k);
                let closed = eigensystem(&coin, k).unwrap();
                let numeric = numeric_eigensystem(&u).unwrap();
                for j in 0..3 {
                    for r in 0..3 {
                        for c in 0..3 {
                            let pa = closed.vectors[j][r] * closed.vectors[j][c].conj();
                            let pb = numeric.vectors[j][r] * numeric.vectors[j][c].conj();
                            worst = worst.max((pa - pb).norm());
                        }
                    }
                }
            }
        }
    }
    Suite {
        name: "eigen-projectors",
        pass: worst <= 1e-9,
        detail: format!("16×32 (θ,k) grid × 2 families, max entry diff {worst:.2e} (tol 1e-9)"),
    }
}

/// Fourier-quadrature amplitudes vs direct evolution.
fn quadrature_vs_direct() -> Suite {
    let mut worst = 0.0_f64;
    let lr = InitState::left_right();
    for (family, theta) in [(Family::X, 1.1), (Family::Y, -0.7)] {
        let coin = Coin::from_theta(family, theta).unwrap();
        let t = 50u64;
        let walk = WalkState::run(coin, &lr, t);
        for m in [-25i64, -7, 0, 13, 25] {
            let quad = amplitude_via_fourier(&coin, &lr, m, t, 16 * t).unwrap();
            let direct = walk.amplitude(m);
            let mut diff = [Complex64::new(0.0, 0.0); 3];
            for c in 0..3 {
                diff[c] = quad[c] - direct[c];
            }
            worst = worst.max(norm3(&diff));
        }
    }
    Suite {
        name: "quadrature-vs-direct",
        pass: worst <= 1e-8,
        detail: format!("t = 50, max amplitude diff {worst:.2e} (tol 1e-8)"),
    }
}

/// Closed-form limits vs windowed empirical averages (plus escape decay).
fn limits_vs_empirical() -> Suite {
    let sym = InitState::symmetric();
    let mut worst = 0.0_f64;
    for coin in [grover(), Coin::from_theta(Family::Y, PI / 6.0).unwrap()] {
        let closed = limit_measure_any(&coin, &sym, 0);
        let windowed = empirical_limit(&coin, &sym, 0, 2000, 200).unwrap();
        worst = worst.max((closed - windowed).abs());
    }
    let esc_coin = Coin::from_theta(Family::X, PI / 2.0).unwrap();
    let esc = escaping_state(&esc_coin).unwrap();
    let residue = empirical_limit(&esc_coin, &esc, 0, 2000, 200).unwrap();
    let pass = worst <= 5e-3 && residue <= 1e-3;
    Suite {
        name: "limits-vs-empirical",
        pass,
        detail: format!(
            "max closed-vs-window diff {worst:.2e} (tol 5e-3); escape residue {residue:.2e} (tol 1e-3)"
        ),
    }
}

/// Period-3 permutation orbit against the exact tables.
fn permutation_orbit() -> Suite {
    let coin = Coin::from_theta(Family::X, 2.0 * PI / 3.0).unwrap();
    let s = 14.0_f64.sqrt();
    let init = InitState::new(
        Complex64::new(1.0, 2.0) / s,
        Complex64::new(2.0, -1.0) / s,
        Complex64::new(2.0, 0.0) / s,
    )
    .unwrap();
    let (aa, bb, cc) =
        (init.alpha().norm_sqr(), init.beta().norm_sqr(), init.gamma().norm_sqr());
    let mut worst = 0.0_f64;
    let mut walk = WalkState::new(coin, &init);
    for t in 1..=6u64 {
        walk.step();
        let expected = match t % 3 {
            1 => [bb, cc, aa],
            2 => [cc, bb, aa],
            _ => [0.0, 1.0, 0.0],
        };
        for (m, want) in (-1..=1).zip(expected) {
            worst = worst.max((walk.probability(m) - want).abs());
        }
    }
    for (m, want) in
        (-1..=1).zip([(bb + cc) / 3.0, (aa + 2.0 * bb + 2.0 * cc) / 3.0, 2.0 * aa / 3.0])
    {
        worst = worst.max((limit_measure_any(&coin, &init, m) - want).abs());
    }
    Suite {
        name: "permutation-orbit",
        pass: worst <= 1e-13,
        detail: format!("orbit and Cesàro table, max diff {worst:.2e} (tol 1e-13)"),
    }
}

/// Analytic group velocity vs centered finite differences.
fn velocity_fd() -> Suite {
    let mut worst = 0.0_f64;
    let h = 1e-5;
    for family in [Family::X, Family::Y] {
        for theta in offset_grid(8) {
            for k in offset_grid(16) {
                let Ok(v) = group_velocity(family, theta, k) else { continue };
                let fd = (dispersion(family, theta, k + h) - dispersion(family, theta, k - h))
                    / (2.0 * h);
                worst = worst.max((v - fd).abs());
            }
        }
    }
    Suite {
        name: "group-velocity-fd",
        pass: worst <= 1e-6,
        detail: format!("8×16 (θ,k) grid × 2 families, max diff {worst:.2e} (tol 1e-6)"),
    }
}

/// Runs every suite; returns true iff all pass.
pub fn run_all() -> bool {
    let suites = [
        dense_unitarity(),
        brute_force_vs_evolve(),
        eigen_projectors(),
        quadrature_vs_direct(),
        limits_vs_empirical(),
        permutation_orbit(),
        velocity_fd(),
    ];
    let mut all = true;
    for s in &suites {
        println!("{} {} — {}", if s.pass { "PASS" } else { "FAIL" }, s.name, s.detail);
        all &= s.pass;
    }
    if all {
        println!("verify: all {} suites passed", suites.len());
    } else {
        println!("verify: FAILURES present");
    }
    all
}
