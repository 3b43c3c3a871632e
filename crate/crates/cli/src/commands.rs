use std::fs;
use std::path::Path;
use std::time::Duration;

use gcdb_core::arith::{zeta, ArithFunction, Exponent, LatticePoint};
use gcdb_core::graph::{
    component_trend, find_lonesome, largest_component_density, mean_connectivity_estimate, LonesomeStrategy, Window,
    WindowGraph, LARGEST_COMPONENT_DENSITY_B1, LARGEST_COMPONENT_RATIO_B1,
};
use gcdb_core::lattice::{
    avg_gcd_1_main_term, avg_gcd_1_square_main_term, avg_gcd_b_exact, avg_gcd_b_main_term, density_estimate,
    mean_value_estimate, zeta_lambda_estimate, WindowStats,
};
use gcdb_core::patterns::{
    boundary_corollary_check, brute_force_realize, is_realizable, realize, square_corollary_check, verify_realization,
    BPattern, CorollaryReport, RealizeOptions, DEFAULT_VERIFY_BOUND,
};
use gcdb_core::{Error, Result};
use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::args::{Command, CorollaryFamily, GraphAction, PatternAction, RunFlags};
use crate::report::{Report, Row};

const DEFAULT_SEARCH_BOUND: u64 = 1000;

fn exponent(b: u32) -> Result<Exponent> {
    Exponent::new(b)
}

fn stats_rows(stats: &WindowStats) -> Vec<Row> {
    vec![Row::compared("estimate", stats.estimate, stats.target)]
}

fn read_pattern(path: &Path) -> Result<BPattern> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read pattern file {}: {e}", path.display())))?;
    text.parse::<BPattern>()
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn parse_big(name: &str, text: &str) -> Result<BigUint> {
    text.parse()
        .map_err(|_| Error::InvalidArgument(format!("--{name} must be a nonnegative integer, got {text:?}")))
}

fn realize_options(run: &RunFlags) -> RealizeOptions {
    let mut opts = RealizeOptions {
        factor_budget: Duration::from_millis(run.factor_budget_ms),
        ..RealizeOptions::default()
    };
    if let Some(bound) = run.bound {
        opts.verify_bound = bound;
    }
    opts
}

/// `Λ(r, s) = ±1`, drawn from the ChaCha stream `r` of `seed` at word `s`, so
/// each value depends only on the point.
fn random_sign(seed: u64) -> impl Fn(LatticePoint) -> f64 + Sync {
    let base = ChaCha8Rng::seed_from_u64(seed);
    move |p| {
        let mut rng = base.clone();
        rng.set_stream(p.r());
        rng.set_word_pos(u128::from(p.s()));
        if rng.next_u32() & 1 == 1 {
            1.0
        } else {
            -1.0
        }
    }
}

fn corollary_report(command: &str, config: serde_json::Value, rep: CorollaryReport) -> Report {
    let rows = vec![
        Row::plain("realizable", rep.realizability.is_realizable()),
        Row::plain("stated_condition_agrees", rep.stated.agrees),
        Row::plain("derived_condition_agrees", rep.derived.agrees),
        Row::plain("discrepancies", rep.discrepancies.len()),
    ];
    let discrepancy = rep.has_discrepancy();
    let mut report = Report::new(
        command,
        "residue criterion over primes p <= w; closed-form conditions evaluated alongside",
        config,
        rep,
    )
    .with_rows(rows);
    report.discrepancy = discrepancy;
    report
}

pub fn run(command: &Command, run: &RunFlags) -> Result<Report> {
    match command {
        Command::Density { b, k, n } => {
            let stats = density_estimate(exponent(*b)?, *k, *n)?;
            Ok(Report::new(
                "density",
                "target 1/(k^(b+1) zeta(b+1)); estimate is an exact count over T_N",
                json!({ "b": b, "k": k, "N": n }),
                &stats,
            )
            .with_rows(stats_rows(&stats)))
        }
        Command::MeanValue { f, b, n } => {
            let func = ArithFunction::parse(f)?;
            let stats = mean_value_estimate(func, exponent(*b)?, *n)?;
            Ok(Report::new(
                "mean-value",
                "target zeta_f(b+1)/zeta(b+1); estimate is an exact sum over T_N",
                json!({ "f": func.name(), "b": b, "N": n }),
                &stats,
            )
            .with_rows(stats_rows(&stats)))
        }
        Command::AvgGcd { b, x } => {
            let e = exponent(*b)?;
            let exact = avg_gcd_b_exact(e, *x)?;
            let exact_f: f64 = exact.to_string().parse().expect("decimal integers parse as f64");
            let mut rows = Vec::new();
            let mut result = json!({ "exact": exact.to_string() });
            let provenance = if *b == 1 {
                let main = avg_gcd_1_main_term(*x as f64)?;
                let square = avg_gcd_1_square_main_term(*x as f64)?;
                rows.push(Row::compared("exact_over_main", exact_f / main, 1.0));
                rows.push(Row::compared("exact_over_square_main", exact_f / square, 1.0));
                result["main_term"] = json!(main);
                result["square_main_term"] = json!(square);
                "main term (x^2/zeta(2))(log x + 2 gamma - 1/2 - zeta'(2)/zeta(2)); square main term subtracts x^2/2"
            } else {
                let main = avg_gcd_b_main_term(e, *x as f64)?;
                rows.push(Row::compared("exact_over_main", exact_f / main, 1.0));
                result["main_term"] = json!(main);
                "main term x^(b+1) zeta(b)/zeta(b+1)"
            };
            rows.push(Row::plain("exact", exact.to_string()));
            Ok(Report::new("avg-gcd", provenance, json!({ "b": b, "x": x }), result).with_rows(rows))
        }
        Command::Zeta { s } => {
            let z = zeta(*s, 1e-12)?;
            Ok(Report::new(
                "zeta",
                "partial sum with a bracketed tail; abs_error column is the tail bound",
                json!({ "s": s }),
                z,
            )
            .with_rows(vec![Row {
                quantity: "zeta".into(),
                value: json!(z.value),
                target: None,
                abs_error: Some(z.tail_bound),
            }]))
        }
        Command::ZetaLambda { f, b, n } => {
            let e = exponent(*b)?;
            let est = match f.as_str() {
                "parity" => zeta_lambda_estimate(|p: LatticePoint| (p.r() % 2) as f64, 1.0, e, *n, run.trunc_k)?,
                "random-sign" => zeta_lambda_estimate(random_sign(run.seed), 1.0, e, *n, run.trunc_k)?,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown point function {other:?}; expected parity or random-sign"
                    )))
                }
            };
            let rows = vec![Row::compared("sphere_series", est.value, est.direct)];
            Ok(Report::new(
                "zeta-lambda",
                "target zeta(b+1) times the window mean of the point function",
                json!({ "f": f, "b": b, "N": n, "trunc_K": run.trunc_k, "seed": run.seed }),
                &est,
            )
            .with_rows(rows))
        }
        Command::Pattern { action } => run_pattern(action, run),
        Command::Corollary { family } => {
            let search = run.bound.or(Some(DEFAULT_SEARCH_BOUND));
            match family {
                CorollaryFamily::Square { n, b } => {
                    let rep = square_corollary_check(*n, exponent(*b)?, search)?;
                    Ok(corollary_report(
                        "corollary-square",
                        json!({ "N": n, "b": b, "bound": search }),
                        rep,
                    ))
                }
                CorollaryFamily::Boundary { m, n, b } => {
                    let rep = boundary_corollary_check(*m, *n, exponent(*b)?, search)?;
                    Ok(corollary_report(
                        "corollary-boundary",
                        json!({ "M": m, "N": n, "b": b, "bound": search }),
                        rep,
                    ))
                }
            }
        }
        Command::Graph { action } => run_graph(action),
    }
}

fn run_pattern(action: &PatternAction, run: &RunFlags) -> Result<Report> {
    match action {
        PatternAction::Check { file } => {
            let pattern = read_pattern(file)?;
            let verdict = is_realizable(&pattern);
            Ok(Report::new(
                "pattern-check",
                "residue criterion over primes p <= w",
                json!({ "pattern": pattern.to_text() }),
                &verdict,
            )
            .with_rows(vec![Row::plain("realizable", verdict.is_realizable())]))
        }
        PatternAction::Realize { file } => {
            let pattern = read_pattern(file)?;
            let opts = realize_options(run);
            let real = realize(&pattern, &opts)?;
            let check = real.verify(&pattern, opts.verify_bound);
            let rows = vec![
                Row::plain("u", real.u.to_string()),
                Row::plain("v", real.v.to_string()),
                Row::plain("verified", check.passed()),
                Row::plain("unverified_cells", check.unverified()),
            ];
            Ok(Report::new(
                "pattern-realize",
                "Chinese remainder construction, checked cell by cell",
                json!({
                    "pattern": pattern.to_text(),
                    "factor_budget_ms": run.factor_budget_ms,
                    "verify_bound": opts.verify_bound,
                }),
                json!({ "realization": real, "verification": check }),
            )
            .with_rows(rows))
        }
        PatternAction::Verify { file, u, v } => {
            let pattern = read_pattern(file)?;
            let (u, v) = (parse_big("u", u)?, parse_big("v", v)?);
            let bound = run.bound.unwrap_or(DEFAULT_VERIFY_BOUND);
            let check = verify_realization(&pattern, &u, &v, &Default::default(), bound);
            let rows = vec![
                Row::plain("verified", check.passed()),
                Row::plain("failures", check.failures().count()),
                Row::plain("unverified_cells", check.unverified()),
            ];
            Ok(Report::new(
                "pattern-verify",
                "gcd of each translated cell, trial-divided up to the bound",
                json!({ "pattern": pattern.to_text(), "u": u.to_string(), "v": v.to_string(), "bound": bound }),
                &check,
            )
            .with_rows(rows))
        }
        PatternAction::Brute { file } => {
            let pattern = read_pattern(file)?;
            let bound = run.bound.unwrap_or(DEFAULT_SEARCH_BOUND);
            let found = brute_force_realize(&pattern, bound);
            let result = match found {
                Some((u, v)) => json!({ "found": true, "u": u, "v": v }),
                None => json!({ "found": false }),
            };
            Ok(Report::new(
                "pattern-brute",
                "direct search over 1 <= u <= bound, 0 <= v <= bound, u-major",
                json!({ "pattern": pattern.to_text(), "bound": bound }),
                result,
            )
            .with_rows(vec![Row::plain("found", found.is_some())]))
        }
    }
}

fn run_graph(action: &GraphAction) -> Result<Report> {
    match action {
        GraphAction::Connectivity { b, n } => {
            let stats = mean_connectivity_estimate(exponent(*b)?, *n)?;
            Ok(Report::new(
                "graph-connectivity",
                "target 4/zeta(b+1); estimate is an exact count over T_N",
                json!({ "b": b, "N": n }),
                &stats,
            )
            .with_rows(stats_rows(&stats)))
        }
        GraphAction::Components { b, n, pbm, pgm } => {
            let e = exponent(*b)?;
            let stats = if pbm.is_some() || pgm.is_some() {
                let graph = WindowGraph::new(e, Window::square(*n)?)?;
                let io = |path: &Path, e: std::io::Error| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                };
                if let Some(path) = pbm {
                    let file = fs::File::create(path).map_err(|e| io(path, e))?;
                    graph
                        .write_pbm(std::io::BufWriter::new(file))
                        .map_err(|e| io(path, e))?;
                }
                if let Some(path) = pgm {
                    let file = fs::File::create(path).map_err(|e| io(path, e))?;
                    graph
                        .write_label_pgm(&graph.components(), std::io::BufWriter::new(file))
                        .map_err(|e| io(path, e))?;
                }
                graph.stats()
            } else {
                largest_component_density(e, *n)?
            };
            let mut rows = vec![
                Row::plain("components", stats.components),
                Row::plain("largest", stats.largest),
                Row::plain("largest_density", stats.largest_density),
                Row::plain("largest_ratio", stats.largest_ratio),
            ];
            let provenance = if *b == 1 {
                rows[2] = Row::compared("largest_density", stats.largest_density, LARGEST_COMPONENT_DENSITY_B1);
                rows[3] = Row::compared("largest_ratio", stats.largest_ratio, LARGEST_COMPONENT_RATIO_B1);
                "experimental reference values for b = 1, not theorems"
            } else {
                "no reference values for b >= 2; trend data only"
            };
            Ok(Report::new("graph-components", provenance, json!({ "b": b, "N": n }), &stats).with_rows(rows))
        }
        GraphAction::Trend { b, n } => {
            let trend = component_trend(exponent(*b)?, n)?;
            let rows = trend
                .points
                .iter()
                .flat_map(|p| {
                    [
                        Row::plain(&format!("largest_density@{}", p.n), p.largest_density),
                        Row::plain(&format!("largest_ratio@{}", p.n), p.largest_ratio),
                    ]
                })
                .collect();
            Ok(Report::new(
                "graph-trend",
                "largest component of each window; reference values only for b = 1",
                json!({ "b": b, "N": n }),
                &trend,
            )
            .with_rows(rows))
        }
        GraphAction::Lonesome { b, n } => {
            let e = exponent(*b)?;
            let strategy = match n {
                Some(n) => LonesomeStrategy::Scan(Window::square(*n)?),
                None => LonesomeStrategy::Construct(RealizeOptions::default()),
            };
            let found = find_lonesome(e, &strategy)?;
            let mut rows = vec![Row::plain("found", found.is_some())];
            if let Some(cert) = &found {
                rows.push(Row::plain("r", cert.r.to_string()));
                rows.push(Row::plain("s", cert.s.to_string()));
                rows.push(Row::plain("lonesome", cert.is_lonesome()));
            }
            let method = if n.is_some() { "scan" } else { "construct" };
            Ok(Report::new(
                "graph-lonesome",
                "gcd_b of the point and its eight surrounding points",
                json!({ "b": b, "N": n, "strategy": method }),
                json!({ "certificate": found }),
            )
            .with_rows(rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_sign_depends_only_on_the_point() {
        let f = random_sign(7);
        let p = LatticePoint::new(12, 30).unwrap();
        let first = f(p);
        let _ = f(LatticePoint::new(1, 1).unwrap());
        assert_eq!(f(p), first);
        let values: Vec<f64> = (1..=400).map(|s| f(LatticePoint::new(3, s).unwrap())).collect();
        let plus = values.iter().filter(|&&v| v > 0.0).count();
        assert!((150..=250).contains(&plus), "{plus} of 400 positive");
    }
}
