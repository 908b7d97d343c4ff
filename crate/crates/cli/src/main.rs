//! Command-line front end: every verification and enumeration in the
//! workbench as reproducible, scriptable subcommands.
//!
//! Exit codes: 0 all requested verdicts passed, 1 a verdict failed,
//! 2 usage or validation error. All randomness flows from --seed; identical
//! (command, seed, inputs) produce byte-identical output.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use mff_core::characters::{
    self, builtin_char_table, builtin_rep_q8, builtin_rep_s3, parse_char_table, CharTable,
    CheckVerdict, FactorMode, MatrixRep,
};
use mff_core::cyclo::Rat;
use mff_core::fricke::{
    self, action_s, action_ts, boundary_length, markov_lift, markov_surface_eval,
    random_word_with_rng, surface_eval, TraceTriple,
};
use mff_core::group::{by_name, load_group, FiniteGroup};
use mff_core::markov::{
    enumerate_tree_u64, mordell_modp_solutions, strong_approx_check, uniqueness_scan, MarkovTriple,
};
use mff_core::{Error, Int, Result};

const DEFAULT_SEED: u64 = 12345;

#[derive(Parser)]
#[command(
    name = "mff",
    version,
    about = "Exact-arithmetic workbench: group determinants, \
Frobenius k-characters, Fricke trace identities, Markov triples"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Group determinant and its character factorization.
    Gdet(GdetArgs),
    /// k-character verification suites.
    Kchar(KcharArgs),
    /// Markov triple enumeration and scans.
    Markov {
        #[command(subcommand)]
        sub: MarkovCmd,
    },
    /// Trace identities, surface orbits, lifts, boundary lengths.
    Fricke {
        #[command(subcommand)]
        sub: FrickeCmd,
    },
}

#[derive(Args)]
struct GdetArgs {
    /// Built-in group name (Z2..Z8, Z2xZ2, S3, S4, D4, Q8) or a group JSON file.
    #[arg(long)]
    group: String,
    /// Character table JSON file; defaults to the shipped table.
    #[arg(long)]
    table: Option<PathBuf>,
    /// symbolic compares polynomials (|G| <= 8), eval compares both sides at
    /// seeded rational points (|G| <= 24), auto picks by group order.
    #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
    mode: Mode,
    /// Evaluation points (evaluation mode).
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Symbolic,
    Eval,
}

#[derive(Args)]
struct KcharArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    table: Option<PathBuf>,
    /// Which suite to run.
    #[arg(long, value_enum, default_value_t = Check::All)]
    check: Check,
    /// Tuple arity bound where applicable.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Check {
    All,
    Vanishing,
    Symmetry,
    Equivalence,
    Shuffle,
    Whitney,
    IdentityReduction,
    UExpansion,
}

#[derive(Subcommand)]
enum MarkovCmd {
    /// Enumerate all triples with maximum up to --max (JSON lines with
    /// --format json).
    Tree {
        #[arg(long)]
        max: u64,
    },
    /// Scan for two distinct triples sharing a maximum.
    Unique {
        #[arg(long)]
        max: u64,
    },
    /// Compare the Vieta orbit of (1,1,1) mod p with the full solution set.
    Modp {
        #[arg(long)]
        p: u64,
    },
    /// Count solutions of x^2+y^2+z^2-2xyz = 1 mod p.
    Mordell {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum FrickeCmd {
    /// Skein, Fricke and chi3-bridge identities on seeded word pairs.
    Check {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Generator-word length per sample.
        #[arg(long, default_value_t = 10)]
        length: usize,
    },
    /// Orbit of a trace triple under seeded S / TS moves.
    Orbit {
        /// Comma-separated x,y,z (rationals allowed).
        #[arg(long)]
        triple: String,
        /// Commutator trace; default -2 (punctured torus).
        #[arg(long, default_value = "-2", allow_hyphen_values = true)]
        jc: String,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Lift a Markov triple onto the punctured-torus trace surface.
    Lift {
        #[arg(long)]
        triple: String,
    },
    /// Geodesic boundary length from the commutator trace.
    Length {
        #[arg(long, allow_hyphen_values = true)]
        jc: String,
    },
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink = match OutSink::new(cli.out.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(&cli, &mut sink);
    if let Err(e) = sink.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct OutSink {
    file: Option<std::io::BufWriter<std::fs::File>>,
}

impl OutSink {
    fn new(path: Option<&std::path::Path>) -> Result<OutSink> {
        let file = match path {
            Some(p) => Some(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => None,
        };
        Ok(OutSink { file })
    }

    fn line(&mut self, s: &str) -> Result<()> {
        match &mut self.file {
            Some(f) => writeln!(f, "{s}")?,
            None => println!("{s}"),
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        if let Some(f) = &mut self.file {
            f.flush()?;
        }
        Ok(())
    }
}

fn header(config: serde_json::Value) -> serde_json::Value {
    json!({
        "artifact": {"name": "mff", "version": env!("CARGO_PKG_VERSION")},
        "config": config,
    })
}

fn emit_report(
    sink: &mut OutSink,
    format: Format,
    config: serde_json::Value,
    result: impl Serialize,
    text: &str,
) -> Result<()> {
    match format {
        Format::Json => {
            let mut doc = header(config);
            doc["result"] = serde_json::to_value(result)?;
            sink.line(&serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Text => {
            sink.line(text)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli, sink: &mut OutSink) -> Result<bool> {
    match &cli.cmd {
        Cmd::Gdet(args) => cmd_gdet(args, cli.format, sink),
        Cmd::Kchar(args) => cmd_kchar(args, cli.format, sink),
        Cmd::Markov { sub } => cmd_markov(sub, cli.format, sink),
        Cmd::Fricke { sub } => cmd_fricke(sub, cli.format, sink),
    }
}

/// A group argument is a file path when it points at an existing file,
/// otherwise a built-in name.
fn resolve_group(spec: &str) -> Result<FiniteGroup> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        load_group(path)
    } else {
        by_name(spec)
    }
}

fn resolve_table(group: &FiniteGroup, table: Option<&PathBuf>) -> Result<CharTable> {
    match table {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            parse_char_table(&text, Arc::new(group.clone()))
        }
        None => builtin_char_table(group.name()),
    }
}

// ---------------------------------------------------------------------------
// gdet
// ---------------------------------------------------------------------------

fn cmd_gdet(args: &GdetArgs, format: Format, sink: &mut OutSink) -> Result<bool> {
    let group = resolve_group(&args.group)?;
    let mode = match args.mode {
        Mode::Auto => FactorMode::Auto,
        Mode::Symbolic => FactorMode::Symbolic,
        Mode::Eval => FactorMode::Evaluation {
            points: args.points,
            seed: args.seed,
        },
    };
    let symbolic = group.order() <= mff_core::poly::MAX_DET_SIZE
        && !matches!(mode, FactorMode::Evaluation { .. });
    if matches!(mode, FactorMode::Symbolic) && group.order() > mff_core::poly::MAX_DET_SIZE {
        // fail on the size cap before anything else (the message points at
        // evaluation mode)
        characters::group_det(&group)?;
    }
    let table = resolve_table(&group, args.table.as_ref())?;
    // symbolic-side detail for small groups
    let mut lines = Vec::new();
    let mut factors_json = Vec::new();
    if symbolic {
        let theta = characters::group_det(&group)?;
        lines.push(format!(
            "Theta_{} ({} terms): {}",
            group.name(),
            theta.term_count(),
            theta
        ));
        for (i, row) in table.rows().iter().enumerate() {
            let phi = characters::phi_k(&row.chi, row.degree)?;
            lines.push(format!(
                "  Phi_{i} (degree {}, multiplicity {}, {} terms): {}",
                row.degree,
                row.degree,
                phi.term_count(),
                phi
            ));
            factors_json.push(json!({
                "index": i,
                "degree": row.degree,
                "terms": phi.term_count(),
                "rendered": phi.to_string(),
            }));
        }
    }
    let verdict = characters::verify_factorization(&group, &table, mode)?;
    lines.push(format!(
        "factorization [{}]: {}",
        verdict.mode,
        if verdict.pass { "PASS" } else { "FAIL" }
    ));
    if let Some(f) = &verdict.failure {
        lines.push(format!("  failure: {f}"));
    }
    let config = json!({
        "command": "gdet",
        "group": group.name(),
        "table": args.table.as_ref().map(|p| p.display().to_string()),
        "mode": verdict.mode,
        "points": verdict.points,
        "seed": verdict.seed,
        "format": format_name(format),
    });
    let result = json!({
        "verdict": serde_json::to_value(&verdict)?,
        "factors": factors_json,
    });
    emit_report(sink, format, config, result, &lines.join("\n"))?;
    Ok(verdict.pass)
}

// ---------------------------------------------------------------------------
// kchar
// ---------------------------------------------------------------------------

fn shipped_reps(group: &FiniteGroup, table: &CharTable) -> Result<Vec<MatrixRep>> {
    let mut reps = Vec::new();
    for row in table.rows() {
        if row.degree == 1 {
            reps.push(MatrixRep::from_linear_character(&row.chi)?);
        }
    }
    match group.name() {
        "S3" => reps.push(builtin_rep_s3()?),
        "Q8" => reps.push(builtin_rep_q8()?),
        _ => {}
    }
    Ok(reps)
}

fn cmd_kchar(args: &KcharArgs, format: Format, sink: &mut OutSink) -> Result<bool> {
    let group = resolve_group(&args.group)?;
    let table = resolve_table(&group, args.table.as_ref())?;
    let mut verdicts: Vec<CheckVerdict> = Vec::new();
    let n = group.order();

    let want = |c: Check| args.check == c || args.check == Check::All;

    if want(Check::Vanishing) {
        for row in table.rows() {
            verdicts.push(characters::vanishing_check(
                &row.chi,
                row.degree + 1,
                args.seed,
            )?);
        }
    }
    if want(Check::Symmetry) {
        if n <= 8 {
            let k = args.k.unwrap_or(3).min(4);
            for row in table.rows() {
                verdicts.push(characters::kchar_symmetry_check(&row.chi, k)?);
            }
        } else if args.check == Check::Symmetry {
            return Err(Error::SizeLimit(
                "symmetry suite is exhaustive over N^k * k! tuples; capped at |G| <= 8".into(),
            ));
        }
    }
    if want(Check::Equivalence) {
        let k = args.k.unwrap_or(3).min(4);
        for row in table.rows() {
            verdicts.push(characters::kchar_equivalence_check(&row.chi, k)?);
            verdicts.push(characters::explicit_formula_check(&row.chi)?);
        }
    }
    if want(Check::Shuffle) {
        let k_max = args.k.unwrap_or(3).min(3);
        for a in table.rows() {
            for b in table.rows() {
                for k in 1..=k_max {
                    if (n as u64).pow(k as u32) > 1_000_000 {
                        continue;
                    }
                    verdicts.push(characters::direct_sum_kchar_check(&a.chi, &b.chi, k)?);
                }
            }
        }
    }
    if want(Check::Whitney) {
        let reps = shipped_reps(&group, &table)?;
        let k_max = args.k.unwrap_or(3);
        for a in &reps {
            for b in &reps {
                for k in 0..=k_max {
                    verdicts.push(characters::whitney_check(a, b, k)?);
                }
            }
        }
        for rep in &reps {
            verdicts.push(characters::phi2_generating_check(rep)?);
            verdicts.push(characters::waring_consistency_check(rep)?);
        }
    }
    if want(Check::IdentityReduction) {
        for row in table.rows() {
            for j in 0..=row.degree + 1 {
                if (n as u64).pow(j as u32) > 1_000_000 || j > 3 {
                    continue;
                }
                verdicts.push(characters::identity_reduction_check(&row.chi, j)?);
            }
        }
    }
    if want(Check::UExpansion) {
        if n <= 8 {
            for row in table.rows() {
                if row.degree <= 2 {
                    verdicts.push(characters::u_expansion_check(&row.chi)?);
                }
            }
        } else if args.check == Check::UExpansion {
            return Err(Error::SizeLimit(
                "u-expansion suite is symbolic; capped at |G| <= 8".into(),
            ));
        }
    }

    let pass = verdicts.iter().all(|v| v.pass);
    let mut lines = Vec::new();
    for v in &verdicts {
        lines.push(format!(
            "{:<20} {:<6} cases={:<8} [{}] {}",
            v.check,
            if v.pass { "PASS" } else { "FAIL" },
            v.cases,
            v.mode,
            v.failure.as_deref().unwrap_or("")
        ));
    }
    lines.push(format!("overall: {}", if pass { "PASS" } else { "FAIL" }));
    let config = json!({
        "command": "kchar",
        "group": group.name(),
        "table": args.table.as_ref().map(|p| p.display().to_string()),
        "check": format!("{:?}", args.check).to_lowercase(),
        "k": args.k,
        "seed": args.seed,
        "format": format_name(format),
    });
    emit_report(sink, format, config, &verdicts, &lines.join("\n"))?;
    Ok(pass)
}

// ---------------------------------------------------------------------------
// markov
// ---------------------------------------------------------------------------

fn cmd_markov(sub: &MarkovCmd, format: Format, sink: &mut OutSink) -> Result<bool> {
    match sub {
        MarkovCmd::Tree { max } => {
            let triples = enumerate_tree_u64(*max);
            let config =
                json!({"command": "markov tree", "max": max, "format": format_name(format)});
            match format {
                Format::Json => {
                    sink.line(&serde_json::to_string(&header(config))?)?;
                    for t in &triples {
                        sink.line(&serde_json::to_string(t)?)?;
                    }
                    sink.line(&serde_json::to_string(&json!({"count": triples.len()}))?)?;
                }
                Format::Text => {
                    for t in &triples {
                        sink.line(&t.to_string())?;
                    }
                    sink.line(&format!("count: {}", triples.len()))?;
                }
            }
            Ok(true)
        }
        MarkovCmd::Unique { max } => {
            let verdict = uniqueness_scan(&Int::from(*max));
            let text = match &verdict.collision {
                None => format!(
                    "no collision among {} triples with max <= {max}",
                    verdict.triples_scanned
                ),
                Some((a, b)) => format!("collision: {a} and {b}"),
            };
            let config =
                json!({"command": "markov unique", "max": max, "format": format_name(format)});
            let pass = verdict.pass;
            emit_report(sink, format, config, &verdict, &text)?;
            Ok(pass)
        }
        MarkovCmd::Modp { p } => {
            let report = strong_approx_check(*p)?;
            let text = format!(
                "p={}: solutions={} (excluding origin), with-nonzero-coords={}, orbit={}, \
                 orbit-subset={}, equal={} [{}]",
                report.p,
                report.solutions,
                report.solutions_nonzero_coords,
                report.orbit,
                report.orbit_subset_of_solutions,
                report.equal,
                report.policy
            );
            let config = json!({"command": "markov modp", "p": p, "format": format_name(format)});
            let pass = report.orbit_subset_of_solutions;
            emit_report(sink, format, config, &report, &text)?;
            Ok(pass)
        }
        MarkovCmd::Mordell { p } => {
            let sols = mordell_modp_solutions(*p)?;
            let config =
                json!({"command": "markov mordell", "p": p, "format": format_name(format)});
            let result = json!({
                "p": p,
                "count": sols.len(),
                "solutions": if *p <= 13 { Some(&sols) } else { None },
            });
            let text = format!("p={p}: {} solutions of x^2+y^2+z^2-2xyz = 1", sols.len());
            emit_report(sink, format, config, result, &text)?;
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// fricke
// ---------------------------------------------------------------------------

fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::InvalidParameter(format!("cannot parse rational {s:?}: {e}")))
}

fn parse_triple(s: &str) -> Result<(Rat, Rat, Rat)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidParameter(format!(
            "triple must be three comma-separated values, got {s:?}"
        )));
    }
    Ok((
        parse_rat(parts[0])?,
        parse_rat(parts[1])?,
        parse_rat(parts[2])?,
    ))
}

fn cmd_fricke(sub: &FrickeCmd, format: Format, sink: &mut OutSink) -> Result<bool> {
    match sub {
        FrickeCmd::Check {
            samples,
            seed,
            length,
        } => {
            use rand_chacha::rand_core::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut pass = true;
            let mut failures = Vec::new();
            for idx in 0..*samples {
                let x = random_word_with_rng(*length, &mut rng);
                let y = random_word_with_rng(*length, &mut rng);
                for v in [
                    fricke::skein_check(&x, &y)?,
                    fricke::fricke_check(&x, &y)?,
                    fricke::chi3_bridge_check(&x, &y)?,
                ] {
                    if !v.pass {
                        pass = false;
                        failures.push(json!({"sample": idx, "verdict": serde_json::to_value(&v)?}));
                    }
                }
            }
            let text = format!(
                "skein + fricke + chi3-bridge on {samples} seeded pairs (length {length}, \
                 seed {seed}): {}",
                if pass { "PASS" } else { "FAIL" }
            );
            let config = json!({
                "command": "fricke check", "samples": samples, "seed": seed,
                "length": length, "format": format_name(format),
            });
            let result = json!({"pass": pass, "samples": samples, "failures": failures});
            emit_report(sink, format, config, result, &text)?;
            Ok(pass)
        }
        FrickeCmd::Orbit {
            triple,
            jc,
            steps,
            seed,
        } => {
            use rand::Rng;
            use rand_chacha::rand_core::SeedableRng;
            let (x, y, z) = parse_triple(triple)?;
            let j_c = parse_rat(jc)?;
            let mut t = TraceTriple { x, y, z, j_c };
            let residual0 = surface_eval(&t.x, &t.y, &t.z, &t.j_c);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            let mut pass = true;
            lines.push(format!(
                "  0 start ({}, {}, {})  surface residual {}",
                t.x, t.y, t.z, residual0
            ));
            rows.push(json!({
                "step": 0, "move": "start",
                "x": t.x.to_string(), "y": t.y.to_string(), "z": t.z.to_string(),
                "surface": residual0.to_string(),
            }));
            for step in 1..=*steps {
                let label = if rng.gen_bool(0.5) {
                    t = action_s(&t);
                    "S"
                } else {
                    t = action_ts(&t);
                    "TS"
                };
                let residual = surface_eval(&t.x, &t.y, &t.z, &t.j_c);
                if residual != residual0 {
                    pass = false;
                }
                rows.push(json!({
                    "step": step, "move": label,
                    "x": t.x.to_string(), "y": t.y.to_string(), "z": t.z.to_string(),
                    "surface": residual.to_string(),
                }));
                lines.push(format!(
                    "{step:>3} {label:<5} ({}, {}, {})  surface residual {}",
                    t.x, t.y, t.z, residual
                ));
            }
            lines.push(format!(
                "surface residual invariant: {}",
                if pass { "PASS" } else { "FAIL" }
            ));
            let config = json!({
                "command": "fricke orbit", "triple": triple, "jc": jc,
                "steps": steps, "seed": seed, "format": format_name(format),
            });
            let result = json!({"pass": pass, "orbit": rows});
            emit_report(sink, format, config, result, &lines.join("\n"))?;
            Ok(pass)
        }
        FrickeCmd::Lift { triple } => {
            let (x, y, z) = parse_triple(triple)?;
            let as_int = |r: &Rat| -> Result<Int> {
                if r.is_integer() {
                    Ok(r.numer().clone())
                } else {
                    Err(Error::InvalidParameter("Markov triples are integer".into()))
                }
            };
            let t = MarkovTriple::new(as_int(&x)?, as_int(&y)?, as_int(&z)?)?;
            let lifted = markov_lift(&t);
            let residual = markov_surface_eval(&lifted.x, &lifted.y, &lifted.z);
            let pass = residual == Rat::from_integer(Int::from(0));
            let text = format!(
                "({t}) lifts to ({}, {}, {}), j_c = {}, surface residual {residual}: {}",
                lifted.x,
                lifted.y,
                lifted.z,
                lifted.j_c,
                if pass { "PASS" } else { "FAIL" }
            );
            let config =
                json!({"command": "fricke lift", "triple": triple, "format": format_name(format)});
            let result = json!({
                "x": lifted.x.to_string(), "y": lifted.y.to_string(),
                "z": lifted.z.to_string(), "jc": lifted.j_c.to_string(),
                "surface_residual": residual.to_string(), "pass": pass,
            });
            emit_report(sink, format, config, result, &text)?;
            Ok(pass)
        }
        FrickeCmd::Length { jc } => {
            let j_c = parse_rat(jc)?;
            let l = boundary_length(&j_c)?;
            let text = format!("boundary length for j_c = {j_c}: {l:.12}");
            let config =
                json!({"command": "fricke length", "jc": jc, "format": format_name(format)});
            let result = json!({"jc": j_c.to_string(), "length": l});
            emit_report(sink, format, config, result, &text)?;
            Ok(true)
        }
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Json => "json",
    }
}
