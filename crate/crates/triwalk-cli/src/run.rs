//! Implementations of the data-producing subcommands.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde_json::json;

use triwalk::coin::{Coin, Family};
use triwalk::evolve::{InitState, WalkState};
use triwalk::limits::{
    escaping_state, limit_measure_any, localization_report, localization_sum_any,
};
use triwalk::velocity::{dispersion, peak_velocities, VelocityProfile};

use crate::emit::{coin_json, csv, fmt17, fmt17_opt, init_json, json_text, write_out};
use crate::parse::{parse_theta, parse_triple, parse_window};
use crate::{CliError, Format, InitArg, LimitArgs, LocalizeArgs, OutputArgs, Quantity,
            SimulateArgs, SweepArgs, VelocityArgs};

fn config<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Config(err.to_string())
}

/// Builds the coin from `--theta` or the `--x/--y` pair (exactly one form).
pub fn build_coin(
    family: Family,
    theta: Option<&str>,
    x: Option<f64>,
    y: Option<f64>,
) -> Result<Coin, CliError> {
    match (theta, x, y) {
        (Some(t), None, None) => {
            let theta = parse_theta(t).map_err(CliError::Config)?;
            Coin::from_theta(family, theta).map_err(config)
        }
        (None, Some(x), Some(y)) => Coin::from_xy(family, x, y).map_err(config),
        _ => Err(CliError::Config(
            "specify the coin with --theta or with --x and --y".into(),
        )),
    }
}

/// Resolves `--init`: a named preset or an explicit complex triple.
pub fn resolve_init(arg: &InitArg, coin: &Coin) -> Result<InitState, CliError> {
    match arg.init.trim() {
        "symmetric" => Ok(InitState::symmetric()),
        "lr" => Ok(InitState::left_right()),
        "escaping" => escaping_state(coin).map_err(config),
        triple => {
            let [a, b, c] = parse_triple(triple).map_err(CliError::Config)?;
            InitState::new(a, b, c).map_err(config)
        }
    }
}

fn emit(out: &OutputArgs, content: &str) -> Result<(), CliError> {
    write_out(out.output.as_deref(), content).map_err(CliError::Io)
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let coin = build_coin(args.coin.family.into(), args.coin.theta.as_deref(), args.coin.x, args.coin.y)?;
    let init = resolve_init(&args.init, &coin)?;
    let walk = WalkState::run(coin, &init, args.t);
    let (lo, hi) = match &args.m_window {
        Some(w) => parse_window(w).map_err(CliError::Config)?,
        None => walk.window(),
    };

    let p0 = walk.probability(0);
    let lobes = walk.side_lobe_peaks();
    let content = match args.out.format {
        Format::Csv => csv(
            "m,p,p1,p2,p3",
            (lo..=hi).map(|m| {
                let [p1, p2, p3] = walk.probability_by_chirality(m);
                format!(
                    "{m},{},{},{},{}",
                    fmt17(walk.probability(m)),
                    fmt17(p1),
                    fmt17(p2),
                    fmt17(p3)
                )
            }),
        ),
        Format::Json => {
            let rows: Vec<_> = (lo..=hi)
                .map(|m| {
                    let [p1, p2, p3] = walk.probability_by_chirality(m);
                    json!({"m": m, "p": walk.probability(m), "p1": p1, "p2": p2, "p3": p3})
                })
                .collect();
            json_text(&json!({
                "command": "simulate",
                "coin": coin_json(&coin),
                "init": init_json(&init),
                "t": args.t,
                "rows": rows,
                "summary": {
                    "p0": p0,
                    "side_lobes": lobes.map(|(l, r)| vec![l, r]),
                },
            }))
        }
    };
    emit(&args.out, &content)?;
    let lobe_text = match lobes {
        Some((l, r)) => format!("{l}, {r}"),
        None => "none".into(),
    };
    eprintln!("P(0,{}) = {:.9}; side lobes at {}", args.t, p0, lobe_text);
    Ok(())
}

pub fn limit(args: &LimitArgs) -> Result<(), CliError> {
    let coin = build_coin(args.coin.family.into(), args.coin.theta.as_deref(), args.coin.x, args.coin.y)?;
    let init = resolve_init(&args.init, &coin)?;
    let (lo, hi) = parse_window(&args.m_window).map_err(CliError::Config)?;
    let content = match args.out.format {
        Format::Csv => csv(
            "m,limit_p",
            (lo..=hi).map(|m| format!("{m},{}", fmt17(limit_measure_any(&coin, &init, m)))),
        ),
        Format::Json => {
            let rows: Vec<_> = (lo..=hi)
                .map(|m| json!({"m": m, "limit_p": limit_measure_any(&coin, &init, m)}))
                .collect();
            json_text(&json!({
                "command": "limit",
                "coin": coin_json(&coin),
                "init": init_json(&init),
                "rows": rows,
            }))
        }
    };
    emit(&args.out, &content)
}

pub fn localize(args: &LocalizeArgs) -> Result<(), CliError> {
    let coin = build_coin(args.coin.family.into(), args.coin.theta.as_deref(), args.coin.x, args.coin.y)?;
    let init = resolve_init(&args.init, &coin)?;
    let report = localization_report(&coin, &init);
    let content = match args.out.format {
        Format::Csv => csv(
            "limit_p0,sum,localized",
            [format!(
                "{},{},{}",
                fmt17(report.limit_p0),
                fmt17(report.sum),
                report.localized
            )],
        ),
        Format::Json => json_text(&json!({
            "command": "localize",
            "coin": coin_json(&coin),
            "init": init_json(&init),
            "limit_p0": report.limit_p0,
            "sum": report.sum,
            "localized": report.localized,
        })),
    };
    emit(&args.out, &content)?;
    eprintln!(
        "localized: {} (limit_p0 = {:.9}, trapped mass = {:.9})",
        report.localized, report.limit_p0, report.sum
    );
    Ok(())
}

/// One profile row in the sweep column order.
fn profile_row(theta: f64, p: &VelocityProfile) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        fmt17(theta),
        fmt17(p.vl1),
        fmt17(p.vr1),
        fmt17_opt(p.vl2),
        fmt17_opt(p.vr2),
        fmt17_opt(p.k0_1),
        fmt17_opt(p.k0_2)
    )
}

fn profile_json(theta: f64, p: &VelocityProfile) -> serde_json::Value {
    json!({
        "theta": theta,
        "vl1": p.vl1, "vr1": p.vr1,
        "vl2": p.vl2, "vr2": p.vr2,
        "k0_1": p.k0_1, "k0_2": p.k0_2,
        "vs": p.vs,
        "from_special_table": p.from_special_table,
    })
}

const PROFILE_HEADER: &str = "theta,vL1,vR1,vL2,vR2,k0_1,k0_2";

pub fn velocity(args: &VelocityArgs) -> Result<(), CliError> {
    let coin = build_coin(args.coin.family.into(), args.coin.theta.as_deref(), args.coin.x, args.coin.y)?;
    let family = coin.family();
    let theta = coin.theta();

    let content = match args.dispersion_nodes {
        Some(n) => {
            if n < 2 {
                return Err(CliError::Config(format!(
                    "--dispersion-nodes must be at least 2, got {n}"
                )));
            }
            let omega1 = match family {
                Family::X => 0.0,
                Family::Y => PI,
            };
            let ks =
                (0..n).map(|i| -PI + i as f64 * 2.0 * PI / (n - 1) as f64);
            match args.out.format {
                Format::Csv => csv(
                    "k,omega1,omega2,omega3",
                    ks.map(|k| {
                        let w = dispersion(family, theta, k);
                        format!("{},{},{},{}", fmt17(k), fmt17(omega1), fmt17(w), fmt17(-w))
                    }),
                ),
                Format::Json => {
                    let rows: Vec<_> = ks
                        .map(|k| {
                            let w = dispersion(family, theta, k);
                            json!({"k": k, "omega1": omega1, "omega2": w, "omega3": -w})
                        })
                        .collect();
                    json_text(&json!({
                        "command": "velocity",
                        "coin": coin_json(&coin),
                        "dispersion": rows,
                    }))
                }
            }
        }
        None => {
            let p = peak_velocities(family, theta);
            match args.out.format {
                Format::Csv => csv(PROFILE_HEADER, [profile_row(theta, &p)]),
                Format::Json => json_text(&json!({
                    "command": "velocity",
                    "coin": coin_json(&coin),
                    "profile": profile_json(theta, &p),
                })),
            }
        }
    };
    emit(&args.out, &content)
}

/// Worker-thread count: `QWALK_THREADS` overrides the flag; 0 = all cores.
fn effective_threads(flag: usize) -> Result<usize, CliError> {
    match std::env::var("QWALK_THREADS") {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Config(format!("invalid QWALK_THREADS value {s:?}"))),
        _ => Ok(flag),
    }
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let family: Family = args.family.into();
    if args.grid < 2 {
        return Err(CliError::Config(format!(
            "--grid must be at least 2 points, got {}",
            args.grid
        )));
    }
    if args.init.init.trim() == "escaping" {
        return Err(CliError::Config(
            "the escaping preset is angle-dependent and undefined at the \
             permutation angles inside a sweep; pass an explicit triple instead"
                .into(),
        ));
    }
    // The init does not depend on θ for presets/triples; resolve it once
    // against any non-permutation coin.
    let probe = Coin::from_theta(family, 1.0).expect("generic angle");
    let init = resolve_init(&args.init, &probe)?;

    let n = args.grid;
    let thetas: Vec<f64> =
        (0..n).map(|i| -PI + i as f64 * 2.0 * PI / (n - 1) as f64).collect();
    let threads = effective_threads(args.threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("cannot build thread pool: {e}")))?;

    let content = match args.quantity {
        Quantity::LimitP0 => {
            let rows: Vec<(f64, f64, f64, f64, f64)> = pool.install(|| {
                thetas
                    .par_iter()
                    .map(|&theta| {
                        let coin = Coin::from_theta(family, theta)
                            .expect("grid angles are in range");
                        let p0 = limit_measure_any(&coin, &init, 0);
                        let sum = localization_sum_any(&coin, &init);
                        (theta, coin.x(), coin.y(), p0, sum)
                    })
                    .collect()
            });
            match args.out.format {
                Format::Csv => csv(
                    "theta,x,y,limit_p0,loc_sum",
                    rows.iter().map(|(t, x, y, p, s)| {
                        format!(
                            "{},{},{},{},{}",
                            fmt17(*t),
                            fmt17(*x),
                            fmt17(*y),
                            fmt17(*p),
                            fmt17(*s)
                        )
                    }),
                ),
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(t, x, y, p, s)| {
                            json!({"theta": t, "x": x, "y": y, "limit_p0": p, "loc_sum": s})
                        })
                        .collect();
                    json_text(&json!({
                        "command": "sweep",
                        "family": format!("{family:?}"),
                        "quantity": "limit_p0",
                        "init": init_json(&init),
                        "grid": n,
                        "rows": rows,
                    }))
                }
            }
        }
        Quantity::Velocity => {
            let rows: Vec<(f64, VelocityProfile)> = pool.install(|| {
                thetas
                    .par_iter()
                    .map(|&theta| (theta, peak_velocities(family, theta)))
                    .collect()
            });
            match args.out.format {
                Format::Csv => csv(
                    PROFILE_HEADER,
                    rows.iter().map(|(t, p)| profile_row(*t, p)),
                ),
                Format::Json => {
                    let rows: Vec<_> =
                        rows.iter().map(|(t, p)| profile_json(*t, p)).collect();
                    json_text(&json!({
                        "command": "sweep",
                        "family": format!("{family:?}"),
                        "quantity": "velocity",
                        "grid": n,
                        "rows": rows,
                    }))
                }
            }
        }
    };
    emit(&args.out, &content)
}
