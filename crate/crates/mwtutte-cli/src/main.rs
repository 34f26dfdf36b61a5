//! Command-line front end: exact Tutte and permutation Tutte computation,
//! inequality certificates, growth constants, and Monte Carlo probes.
//!
//! Exit codes: 0 success / PASS, 1 a check or verdict FAILED, 2 usage or
//! input error. Identical argv (including seed) produce byte-identical
//! output regardless of worker count.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mwtutte_core::asymptotics::{
    counterexample_probe, growth_hnnn, growth_k_ab, GrowthResult, GrowthSide,
};
use mwtutte_core::certify::{
    certify_circuit_interval, certify_idea, certify_matroid_circuit_theorem,
    degree_interval_scan, CertificateReport,
};
use mwtutte_core::error::Error;
use mwtutte_core::io::{read_bipartite, read_multigraph};
use mwtutte_core::matroids::Matroid;
use mwtutte_core::permtutte::{conjecture_scan, perm_tutte_exact, perm_tutte_mc, verify_transfer_identity};
use mwtutte_core::rational::{parse_rational, render_significant};
use mwtutte_core::sqrt5::Sqrt5;
use mwtutte_core::tutte::{tutte_deletion_contraction, tutte_matroid};
use mwtutte_core::{BigRational, Result};

#[derive(Parser)]
#[command(
    name = "mwtutte",
    version,
    about = "Tutte and permutation Tutte polynomials with exact inequality certificates"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Significant digits for decimal rendering.
    #[arg(long, global = true, default_value_t = 15)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation Tutte polynomial of a bipartite graph.
    PermTutte {
        #[command(subcommand)]
        mode: PermTutteMode,
    },
    /// Tutte polynomial of a multigraph or matroid.
    Tutte {
        #[command(subcommand)]
        source: TutteSource,
    },
    /// Check the spanning-tree transfer identity on a multigraph.
    VerifyTransfer {
        /// JSON multigraph file.
        #[arg(long)]
        graph: String,
    },
    /// Exact inequality certificates.
    Certify {
        #[command(subcommand)]
        kind: CertifyKind,
    },
    /// Closed-form growth constants with a numeric cross-check.
    Growth {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        x: f64,
        /// Relative size of part A (kab family only).
        #[arg(long)]
        alpha: Option<f64>,
        /// Which factor of the product (hnnn family only).
        #[arg(long, value_enum)]
        side: Option<Side>,
    },
    /// Probe the product of the two one-variable evaluations on the
    /// equal-parameter leaf-decorated family.
    Counterexample {
        #[arg(long)]
        n: usize,
        /// Evaluation point, parsed as an exact rational.
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search random bipartite graphs for product-inequality violations.
    ConjectureScan {
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum PermTutteMode {
    /// Exact polynomial (at most 11 vertices).
    Exact {
        /// JSON bipartite graph file.
        #[arg(long)]
        graph: String,
        /// Optional evaluation point (exact rationals).
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Monte Carlo estimate at a point.
    Mc {
        /// JSON bipartite graph file.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum TutteSource {
    /// Tutte polynomial of a JSON multigraph (deletion–contraction).
    Graph {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Tutte polynomial of a matroid descriptor
    /// (`uniform:m,n`, `graphic:<path>`, `dual(...)`, `double(...)`, `sum(...)`).
    Matroid {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
}

#[derive(Subcommand)]
enum CertifyKind {
    /// Per-degree certificate at exact parameters. `--x`/`--s` accept
    /// decimal rationals, `p/q`, or the tokens `golden1` and `golden_s`.
    Idea {
        #[arg(long)]
        idea: u8,
        #[arg(long)]
        x: String,
        #[arg(long)]
        s: String,
        /// Largest directly checked degree (defaults: 11/11/44/100 by scheme).
        #[arg(long)]
        d0: Option<u64>,
        /// Write a machine-readable certificate file here.
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Sweep the full degree interval for the circuit family at parameter k.
    CircuitInterval {
        #[arg(long)]
        k: String,
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Scan degrees upward at a fixed weight until the factor drops to 1.
    DegreeScan {
        #[arg(long)]
        s: String,
        #[arg(long)]
        delta: u64,
    },
    /// Circuit-length hypothesis check on a matroid.
    Matroid {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        ell: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Kab,
    Hnnn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    /// The (x, 0) factor.
    X0,
    /// The (0, x) factor.
    #[value(name = "0x")]
    ZeroX,
}

/// A certificate parameter: plain rational or an element of ℚ(√5).
enum Param {
    Rat(BigRational),
    Quad(Sqrt5),
}

fn parse_param(token: &str) -> Result<Param> {
    match token {
        "golden1" => Ok(Param::Quad(Sqrt5::golden_x())),
        "golden_s" => Ok(Param::Quad(Sqrt5::golden_s())),
        _ => Ok(Param::Rat(parse_rational(token)?)),
    }
}

fn lift(p: Param) -> Sqrt5 {
    match p {
        Param::Quad(q) => q,
        Param::Rat(r) => Sqrt5::from_rational(r),
    }
}

/// Re-renders an exact token (`p/q` or `a/b±c/d*sqrt5`) at the requested
/// precision. Precision 15 is the pre-rendered fast path.
fn render_exact_token(exact: &str, precision: usize) -> Result<String> {
    if let Some(body) = exact.strip_suffix("*sqrt5") {
        let idx = body
            .rfind(['+', '-'])
            .filter(|&i| i > 0)
            .ok_or_else(|| Error::Parse(format!("malformed quadratic token {exact:?}")))?;
        let a = parse_rational(&body[..idx])?;
        let b_mag = parse_rational(&body[idx + 1..])?;
        let b = if body.as_bytes()[idx] == b'-' { -b_mag } else { b_mag };
        Ok(Sqrt5::new(a, b).render_significant(precision))
    } else {
        Ok(render_significant(&parse_rational(exact)?, precision))
    }
}

fn cell_text(cell: &mwtutte_core::certify::ValueCell, precision: usize) -> Result<String> {
    if precision == 15 {
        Ok(cell.decimal.clone())
    } else {
        render_exact_token(&cell.exact, precision)
    }
}

fn json_out<T: serde::Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

/// Prints a certificate report in the three output formats. The table view
/// mirrors the published layout: one row per degree, a final `inf` row for
/// the limit checks, then tail/coverage notes and the verdict.
fn emit_certificate(report: &CertificateReport, format: Format, precision: usize) -> Result<()> {
    match format {
        Format::Json => return json_out(report),
        Format::Csv => {
            println!("d,G,product");
            for row in &report.rows {
                let d = if row.starred {
                    format!("{}*", row.d)
                } else {
                    row.d.to_string()
                };
                let main = cell_text(&row.main, precision)?;
                let combined = match &row.combined {
                    Some(c) => cell_text(c, precision)?,
                    None => String::new(),
                };
                println!("{d},{main},{combined}");
            }
            if !report.limits.is_empty() {
                let main = cell_text(&report.limits[0].value, precision)?;
                let leaf = match report.limits.get(1) {
                    Some(l) => cell_text(&l.value, precision)?,
                    None => String::new(),
                };
                println!("inf,{main},{leaf}");
            }
            return Ok(());
        }
        Format::Table => {}
    }

    println!(
        "{} certificate: x = {}, s = {}, d0 = {}",
        report.label, report.x, report.s, report.d0
    );
    let has_combined = report.rows.iter().any(|r| r.combined.is_some()) || report.limits.len() > 1;
    let header = if has_combined {
        format!("{:>5}  {:<18}  {:<18}", "d", "G", "product")
    } else {
        format!("{:>5}  {:<18}", "d", "G")
    };
    println!("{}", header.trim_end());
    for row in &report.rows {
        let d = if row.starred {
            format!("{}*", row.d)
        } else {
            row.d.to_string()
        };
        let mut line = format!("{:>5}  {:<18}", d, cell_text(&row.main, precision)?);
        if let Some(c) = &row.combined {
            line.push_str(&format!("  {:<18}", cell_text(c, precision)?));
        }
        if !row.pass() {
            line.push_str("  FAIL");
        }
        println!("{}", line.trim_end());
    }
    if !report.limits.is_empty() {
        let mut line = format!(
            "{:>5}  {:<18}",
            "inf",
            cell_text(&report.limits[0].value, precision)?
        );
        if let Some(l) = report.limits.get(1) {
            line.push_str(&format!("  {:<18}", cell_text(&l.value, precision)?));
        }
        if report.limits.iter().any(|l| !l.value.pass) {
            line.push_str("  FAIL");
        }
        println!("{}", line.trim_end());
    }
    if let Some(tail) = &report.tail {
        match tail.first_d {
            Some(d) => println!("tail condition first holds at d = {d}"),
            None => println!("tail condition never holds up to d0 = {}  FAIL", report.d0),
        }
    }
    for note in &report.coverage {
        println!("coverage: {note}");
    }
    if let Some(reason) = &report.failing_reason {
        println!("first failing check: {reason}");
    }
    println!("VERDICT {}", if report.verdict { "PASS" } else { "FAIL" });
    Ok(())
}

fn write_certificate_file(report: &CertificateReport, path: &str) -> Result<()> {
    let text = report.certificate_lines().join("\n") + "\n";
    std::fs::write(path, text)?;
    Ok(())
}

fn parse_point(
    x: &Option<String>,
    y: &Option<String>,
) -> Result<Option<(BigRational, BigRational)>> {
    match (x, y) {
        (Some(xs), Some(ys)) => Ok(Some((parse_rational(xs)?, parse_rational(ys)?))),
        (None, None) => Ok(None),
        _ => Err(Error::InvalidArgument(
            "evaluation needs both --x and --y".into(),
        )),
    }
}

fn fmt_f64(v: f64, precision: usize) -> String {
    format!("{v:.precision$}")
}

fn run(cli: Cli) -> Result<u8> {
    let precision = cli.precision;
    let format = cli.format;
    match cli.command {
        Command::PermTutte { mode } => match mode {
            PermTutteMode::Exact { graph, x, y } => {
                let h = read_bipartite(&graph)?;
                let poly = perm_tutte_exact(&h)?;
                let point = parse_point(&x, &y)?;
                match format {
                    Format::Json => {
                        let eval = point.as_ref().map(|(px, py)| {
                            let v = poly.eval(px, py);
                            serde_json::json!({
                                "exact": mwtutte_core::rational::render_exact(&v),
                                "decimal": render_significant(&v, precision),
                            })
                        });
                        json_out(&serde_json::json!({
                            "polynomial": poly.render(),
                            "terms": poly.term_count(),
                            "evaluation": eval,
                        }))?;
                    }
                    _ => {
                        println!("permutation Tutte polynomial = {}", poly.render());
                        if let Some((px, py)) = point {
                            let v = poly.eval(&px, &py);
                            println!(
                                "value at ({}, {}) = {} ({})",
                                px,
                                py,
                                mwtutte_core::rational::render_exact(&v),
                                render_significant(&v, precision)
                            );
                        }
                    }
                }
                Ok(0)
            }
            PermTutteMode::Mc {
                graph,
                x,
                y,
                samples,
                seed,
            } => {
                let h = read_bipartite(&graph)?;
                let xr = parse_rational(&x)?;
                let yr = parse_rational(&y)?;
                let est = perm_tutte_mc(&h, &xr, &yr, samples, seed)?;
                match format {
                    Format::Json => json_out(&est)?,
                    _ => println!(
                        "estimate at ({}, {}): mean = {}, stderr = {}, samples = {}, seed = {}",
                        xr,
                        yr,
                        fmt_f64(est.mean, precision),
                        fmt_f64(est.stderr, precision),
                        est.samples,
                        est.seed
                    ),
                }
                Ok(0)
            }
        },
        Command::Tutte { source } => {
            let (poly, point) = match source {
                TutteSource::Graph { graph, x, y } => {
                    let g = read_multigraph(&graph)?;
                    (tutte_deletion_contraction(&g)?, parse_point(&x, &y)?)
                }
                TutteSource::Matroid { matroid, x, y } => {
                    let m = Matroid::parse_descriptor(&matroid)?;
                    (tutte_matroid(&m)?, parse_point(&x, &y)?)
                }
            };
            match format {
                Format::Json => {
                    let eval = point.as_ref().map(|(px, py)| {
                        let v = poly.eval(px, py);
                        serde_json::json!({
                            "exact": mwtutte_core::rational::render_exact(&v),
                            "decimal": render_significant(&v, precision),
                        })
                    });
                    json_out(&serde_json::json!({
                        "polynomial": poly.render(),
                        "terms": poly.term_count(),
                        "evaluation": eval,
                    }))?;
                }
                _ => {
                    println!("Tutte polynomial = {}", poly.render());
                    if let Some((px, py)) = point {
                        let v = poly.eval(&px, &py);
                        println!(
                            "value at ({}, {}) = {} ({})",
                            px,
                            py,
                            mwtutte_core::rational::render_exact(&v),
                            render_significant(&v, precision)
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::VerifyTransfer { graph } => {
            let g = read_multigraph(&graph)?;
            let report = verify_transfer_identity(&g)?;
            match format {
                Format::Json => json_out(&serde_json::json!({
                    "matches": report.matches,
                    "tree_count": report.tree_count,
                    "residual": report.residual.render(),
                }))?,
                _ => {
                    if report.matches {
                        println!(
                            "transfer identity holds across {} spanning trees",
                            report.tree_count
                        );
                    } else {
                        println!(
                            "transfer identity FAILS; residual = {}",
                            report.residual.render()
                        );
                    }
                }
            }
            Ok(if report.matches { 0 } else { 1 })
        }
        Command::Certify { kind } => match kind {
            CertifyKind::Idea {
                idea,
                x,
                s,
                d0,
                certificate,
            } => {
                let d0 = d0.unwrap_or(match idea {
                    3 => 44,
                    4 => 100,
                    _ => 11,
                });
                let report = match (parse_param(&x)?, parse_param(&s)?) {
                    (Param::Rat(xr), Param::Rat(sr)) => certify_idea(idea, &xr, &sr, d0)?,
                    (px, ps) => certify_idea(idea, &lift(px), &lift(ps), d0)?,
                };
                if let Some(path) = certificate {
                    write_certificate_file(&report, &path)?;
                }
                emit_certificate(&report, format, precision)?;
                Ok(if report.verdict { 0 } else { 1 })
            }
            CertifyKind::CircuitInterval { k, certificate } => {
                let kr = parse_rational(&k)?;
                let report = certify_circuit_interval(&kr)?;
                if let Some(path) = certificate {
                    write_certificate_file(&report, &path)?;
                }
                emit_certificate(&report, format, precision)?;
                Ok(if report.verdict { 0 } else { 1 })
            }
            CertifyKind::DegreeScan { s, delta } => {
                let sr = parse_rational(&s)?;
                let scan = degree_interval_scan(&sr, delta)?;
                match format {
                    Format::Json => json_out(&scan)?,
                    Format::Csv => {
                        println!("d_max,immediate_failure");
                        println!("{},{}", scan.d_max, scan.immediate_failure);
                    }
                    Format::Table => {
                        println!("degree scan: s = {sr}, delta = {delta}");
                        if scan.immediate_failure {
                            println!("factor fails already at d = {delta}; D = {}", scan.d_max);
                        } else {
                            println!("largest passing degree D = {}", scan.d_max);
                        }
                    }
                }
                Ok(0)
            }
            CertifyKind::Matroid { matroid, ell } => {
                let m = Matroid::parse_descriptor(&matroid)?;
                let report = certify_matroid_circuit_theorem(&m, ell)?;
                match format {
                    Format::Json => json_out(&report)?,
                    _ => {
                        println!(
                            "matroid circuit check: {}  ell = {}  interval [{}, {}]",
                            report.lengths.descriptor,
                            ell,
                            report.lengths.interval.0,
                            report.lengths.interval.1
                        );
                        println!(
                            "circuit lengths: {}",
                            histogram(&report.lengths.circuit_lengths)
                        );
                        println!(
                            "dual circuit lengths: {}",
                            histogram(&report.lengths.dual_circuit_lengths)
                        );
                        for v in &report.lengths.violations {
                            println!("violation: {v}");
                        }
                        if let (Some(p), Some(b), Some(m)) = (
                            &report.product_value,
                            &report.basis_square,
                            &report.margin,
                        ) {
                            println!("product T(2,0)*T(0,2) = {p}");
                            println!("basis count squared T(1,1)^2 = {b}");
                            println!("margin = {m}");
                        }
                        println!("{}", report.conclusion);
                    }
                }
                let ok = report.lengths.hypothesis_ok
                    && report.inequality_holds.unwrap_or(true);
                Ok(if ok { 0 } else { 1 })
            }
        },
        Command::Growth {
            family,
            x,
            alpha,
            side,
        } => {
            let result: GrowthResult = match family {
                Family::Kab => {
                    let a = alpha.ok_or_else(|| {
                        Error::InvalidArgument("the kab family needs --alpha".into())
                    })?;
                    growth_k_ab(a, x)?
                }
                Family::Hnnn => {
                    let side = side.ok_or_else(|| {
                        Error::InvalidArgument("the hnnn family needs --side".into())
                    })?;
                    let side = match side {
                        Side::X0 => GrowthSide::XZero,
                        Side::ZeroX => GrowthSide::ZeroX,
                    };
                    growth_hnnn(x, side)?
                }
            };
            match format {
                Format::Json => json_out(&result)?,
                Format::Csv => {
                    println!("value,maximizer,branch,residual");
                    println!(
                        "{},{},{},{:.3e}",
                        fmt_f64(result.value, precision),
                        fmt_f64(result.maximizer, precision),
                        result.branch,
                        result.residual
                    );
                }
                Format::Table => {
                    println!("value = {}", fmt_f64(result.value, precision));
                    println!("maximizer = {}", fmt_f64(result.maximizer, precision));
                    println!("branch = {}", result.branch);
                    println!("cross-check residual = {:.3e}", result.residual);
                }
            }
            Ok(0)
        }
        Command::Counterexample {
            n,
            x,
            samples,
            seed,
        } => {
            let xr = parse_rational(&x)?;
            let report = counterexample_probe(n, &xr, samples, seed)?;
            match format {
                Format::Json => json_out(&report)?,
                _ => {
                    println!(
                        "probe n = {}, x = {}, {}",
                        report.n,
                        report.x,
                        if report.exact {
                            "exact enumeration".to_string()
                        } else {
                            format!("{} Monte Carlo samples, seed {}", report.samples, report.seed)
                        }
                    );
                    if let Some(exact) = &report.product_exact {
                        println!("product (exact) = {exact}");
                    }
                    println!(
                        "factor at (x, 0): {} (stderr {})",
                        fmt_f64(report.factor_x0, precision),
                        fmt_f64(report.factor_x0_stderr, precision)
                    );
                    println!(
                        "factor at (0, x): {} (stderr {})",
                        fmt_f64(report.factor_0x, precision),
                        fmt_f64(report.factor_0x_stderr, precision)
                    );
                    println!("product = {}", fmt_f64(report.product, precision));
                    println!(
                        "(1/n) log product = {}",
                        fmt_f64(report.log_product_over_n, precision)
                    );
                    println!(
                        "limiting log growth = {}",
                        fmt_f64(report.growth_limit_log, precision)
                    );
                }
            }
            Ok(0)
        }
        Command::ConjectureScan {
            min_degree,
            trials,
            seed,
        } => {
            let violations = conjecture_scan(min_degree, trials, seed)?;
            match format {
                Format::Json => json_out(&violations)?,
                _ => {
                    if violations.is_empty() {
                        println!(
                            "scanned {trials} graphs (min degree {min_degree}, seed {seed}): no violations"
                        );
                    } else {
                        for v in &violations {
                            println!(
                                "violation: product = {} on a graph with parts {} + {}",
                                v.product,
                                v.graph.a_size(),
                                v.graph.b_size()
                            );
                        }
                    }
                }
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
    }
}

fn histogram(lengths: &[usize]) -> String {
    if lengths.is_empty() {
        return "none".into();
    }
    let mut parts = Vec::new();
    let mut iter = lengths.iter().peekable();
    while let Some(&len) = iter.next() {
        let mut count = 1usize;
        while iter.peek() == Some(&&len) {
            iter.next();
            count += 1;
        }
        parts.push(format!("{len} x{count}"));
    }
    parts.join(", ")
}

fn main() -> ExitCode {
    mwtutte_core::init_worker_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
