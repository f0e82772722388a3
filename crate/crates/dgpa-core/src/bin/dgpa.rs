//! Batch CLI over the engine: verify axioms, build envelopes and other
//! constructions, compute cohomology, compare presentations, and replay
//! the built-in demo. Reports are deterministic; exit code 0 means every
//! check passed, 1 means a check failed, 2 means the input was invalid.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dgpa_core::algebra::Element;
use dgpa_core::compare::{compare_presentations, AlgebraMap};
use dgpa_core::constructions::{opposite, tensor_product};
use dgpa_core::dg::{CheckStatus, DGPAlgebra, DgPresentation};
use dgpa_core::demo::run_demo;
use dgpa_core::envelope::{env_presented, smash_env};
use dgpa_core::error::EngineError;
use dgpa_core::finite::env_basis;
use dgpa_core::io::{
    dims_to_json, fact, parse_algebra, parse_finite, parse_lie, serialize_dg,
    serialize_lie, serialize_presentation, Report,
};
use dgpa_core::lie::{semidirect, symmetric_algebra, universal_env_lie};
use dgpa_core::module::{
    check_module_axioms, regular_module, transport_from_envelope, transport_to_envelope,
};
use dgpa_core::parse::ExprParser;
use dgpa_core::presentation::{TruncationParams, DEFAULT_WORD_CAP};
use dgpa_core::scalar::Scalar;

#[derive(Parser)]
#[command(name = "dgpa", version, about = "exact engine for differential graded Poisson algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: CommonOpts,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Upper degree bound of the truncation window
    #[arg(long, global = true, default_value_t = 6)]
    max_degree: i64,
    /// Lower degree bound of the truncation window
    #[arg(long, global = true, default_value_t = 0)]
    min_degree: i64,
    /// Word length cap
    #[arg(long, global = true, default_value_t = 8)]
    max_length: usize,
    /// Override a named parameter, e.g. --set lambda=1/2 (repeatable)
    #[arg(long = "set", global = true, value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Emit the machine-readable JSON report on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the DGPA axioms of an algebra document
    Check { input: PathBuf },
    /// Universal envelope from the generators-and-relations construction
    Env { input: PathBuf },
    /// Universal envelope through the smash product A#U(A)
    EnvSmash { input: PathBuf },
    /// Universal envelope from finite structure tables
    EnvBasis { input: PathBuf },
    /// Tensor product of two algebra documents
    Tensor { left: PathBuf, right: PathBuf },
    /// Opposite algebra
    Op { input: PathBuf },
    /// Graded symmetric algebra of a Lie document, as a DGPA
    SymLie { input: PathBuf },
    /// Universal enveloping algebra of a Lie document
    ULie { input: PathBuf },
    /// Graded semidirect product L x| L of a Lie document
    Semidirect { input: PathBuf },
    /// Cohomology with induced product and bracket
    Cohomology { input: PathBuf },
    /// Compare two presented DG algebras along a generator map
    Compare {
        left: PathBuf,
        right: PathBuf,
        /// Forward generator images: "g=expr;h=expr" over the right side
        #[arg(long)]
        map: String,
        /// Optional inverse images over the left side
        #[arg(long)]
        map_rev: Option<String>,
    },
    /// Check the DGP module axioms of the regular module
    ModuleCheck {
        input: PathBuf,
        /// Truncation degree of the regular module
        #[arg(long, default_value_t = 4)]
        regular: i64,
    },
    /// Transport the regular module to the envelope and back
    Transport {
        input: PathBuf,
        /// Truncation degree of the regular module
        #[arg(long, default_value_t = 4)]
        regular: i64,
    },
    /// Replay the built-in worked examples and theorems
    Demo,
}

fn window(opts: &CommonOpts) -> Result<TruncationParams, EngineError> {
    let mut t = TruncationParams::new(opts.max_degree, opts.max_length)
        .with_min_degree(opts.min_degree);
    if let Ok(cap) = std::env::var("DGPA_WORD_CAP") {
        let cap: usize = cap
            .parse()
            .map_err(|_| EngineError::BadWindow(format!("DGPA_WORD_CAP={cap:?} is not a number")))?;
        t = t.with_word_cap(cap);
    } else {
        t = t.with_word_cap(DEFAULT_WORD_CAP);
    }
    t.validate()?;
    Ok(t)
}

fn overrides(opts: &CommonOpts) -> Result<BTreeMap<String, Scalar>, EngineError> {
    let mut out = BTreeMap::new();
    for item in &opts.set {
        let (name, value) = item.split_once('=').ok_or_else(|| {
            EngineError::BadDocument(format!("--set {item:?} must be NAME=VALUE"))
        })?;
        let value: Scalar = value
            .parse()
            .map_err(|e| EngineError::BadDocument(format!("--set {name}: {e}")))?;
        out.insert(name.trim().to_string(), value);
    }
    Ok(out)
}

fn read(path: &PathBuf) -> Result<String, EngineError> {
    std::fs::read_to_string(path)
        .map_err(|e| EngineError::BadDocument(format!("{}: {e}", path.display())))
}

fn label_of(path: &PathBuf) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "input".to_string())
}

fn load_algebra(path: &PathBuf, opts: &CommonOpts) -> Result<DGPAlgebra, EngineError> {
    let text = read(path)?;
    let (alg, _) = parse_algebra(&text, &label_of(path), &overrides(opts)?)?;
    Ok(alg)
}

fn load_verified(path: &PathBuf, opts: &CommonOpts, t: &TruncationParams) -> Result<DGPAlgebra, EngineError> {
    let mut alg = load_algebra(path, opts)?;
    let report = alg.verify(t)?;
    if !report.ok() {
        let names: Vec<&String> = report.failing().iter().map(|c| &c.name).collect();
        return Err(EngineError::BadStructure(format!(
            "{} fails the DGPA axioms: {names:?}",
            label_of(path)
        )));
    }
    Ok(alg)
}

fn env_output(dg: &DgPresentation, t: &TruncationParams) -> Result<(Vec<dgpa_core::dg::AxiomCheck>, Value), EngineError> {
    let report = dg.verify_differential(t)?;
    let table = dg.build_table(t)?;
    let (dims, exactness) = table.graded_dimension();
    let doc = serialize_dg(dg);
    Ok((
        report.checks,
        json!({
            "presentation": doc,
            "graded_dimension": dims_to_json(&dims, exactness),
        }),
    ))
}

/// Parses "g=expr;h=expr" into a generator map from `src` into `dst`.
fn parse_map(
    spec: &str,
    src: &dgpa_core::algebra::GeneratorSet,
    dst: &dgpa_core::algebra::GeneratorSet,
) -> Result<AlgebraMap, EngineError> {
    let params = BTreeMap::new();
    let parser = ExprParser::new(dst, &params);
    let mut images: Vec<Option<Element>> = vec![None; src.len()];
    for entry in spec.split(';') {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let (name, expr) = entry.split_once('=').ok_or_else(|| {
            EngineError::BadDocument(format!("map entry {entry:?} must be name=expr"))
        })?;
        let id = src.lookup(name.trim()).ok_or_else(|| {
            EngineError::BadDocument(format!("map names unknown generator {name:?}"))
        })?;
        images[id.0 as usize] = Some(parser.parse(expr)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                EngineError::BadDocument(format!(
                    "map misses generator {}",
                    src.name(dgpa_core::algebra::GenId(i as u32))
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgebraMap::new(images))
}

fn run(cli: &Cli) -> Result<Report, EngineError> {
    let t = window(&cli.opts)?;
    match &cli.command {
        Command::Check { input } => {
            let mut alg = load_algebra(input, &cli.opts)?;
            // a noncommutative document with no bracket is a presented DG
            // algebra: check the differential-graded laws only
            let dga_only = !alg.presentation.graded_commutative
                && alg.bracket.images().next().is_none();
            let report = if dga_only {
                let dg = DgPresentation {
                    presentation: alg.presentation.clone(),
                    diff: alg.diff.clone(),
                };
                dg.verify_differential(&t)?
            } else {
                alg.verify(&t)?
            };
            let table = alg.presentation.build_table(&t)?;
            let (dims, exactness) = table.graded_dimension();
            Ok(Report::from_axiom_report(
                "check",
                report,
                dims_to_json(&dims, exactness),
            ))
        }
        Command::Env { input } => {
            let alg = load_verified(input, &cli.opts, &t)?;
            let env = env_presented(&alg)?;
            let (checks, output) = env_output(&env.dg, &t)?;
            Ok(Report::new("env", &t, checks, output))
        }
        Command::EnvSmash { input } => {
            let alg = load_verified(input, &cli.opts, &t)?;
            let env = smash_env(&alg)?;
            let (checks, output) = env_output(&env.dg, &t)?;
            Ok(Report::new("env-smash", &t, checks, output))
        }
        Command::EnvBasis { input } => {
            let mut table_alg = parse_finite(&read(input)?)?;
            table_alg.verify()?;
            let env = env_basis(&table_alg)?;
            let (checks, output) = env_output(&env, &t)?;
            Ok(Report::new("env-basis", &t, checks, output))
        }
        Command::Tensor { left, right } => {
            let a = load_verified(left, &cli.opts, &t)?;
            let b = load_verified(right, &cli.opts, &t)?;
            let (prod, report) = tensor_product(&a, &b, &t)?;
            let doc = serialize_presentation(&prod.presentation, Some(&prod.diff), Some(&prod.bracket));
            Ok(Report::from_axiom_report(
                "tensor",
                report,
                json!({ "presentation": doc }),
            ))
        }
        Command::Op { input } => {
            let a = load_verified(input, &cli.opts, &t)?;
            let (op, report) = opposite(&a)?;
            let doc = serialize_presentation(&op.presentation, Some(&op.diff), Some(&op.bracket));
            Ok(Report::from_axiom_report(
                "op",
                report,
                json!({ "presentation": doc }),
            ))
        }
        Command::SymLie { input } => {
            let l = parse_lie(&read(input)?, &overrides(&cli.opts)?)?;
            let (alg, report) = symmetric_algebra(&l, &t)?;
            let doc = serialize_presentation(&alg.presentation, Some(&alg.diff), Some(&alg.bracket));
            Ok(Report::from_axiom_report(
                "sym-lie",
                report,
                json!({ "presentation": doc }),
            ))
        }
        Command::ULie { input } => {
            let l = parse_lie(&read(input)?, &overrides(&cli.opts)?)?;
            let u = universal_env_lie(&l)?;
            let (checks, output) = env_output(&u, &t)?;
            Ok(Report::new("u-lie", &t, checks, output))
        }
        Command::Semidirect { input } => {
            let l = parse_lie(&read(input)?, &overrides(&cli.opts)?)?;
            let s = semidirect(&l)?;
            let violations = s.violations();
            let checks = vec![fact(
                "semidirect-lie-axioms",
                violations.is_empty(),
                None,
            )];
            Ok(Report::new(
                "semidirect",
                &t,
                checks,
                json!({ "lie": serialize_lie(&s) }),
            ))
        }
        Command::Cohomology { input } => {
            let alg = load_algebra(input, &cli.opts)?;
            match dgpa_core::cohomology::cohomology(&alg, &t) {
                Ok(h) => {
                    let dims = h.dims();
                    let output = json!({
                        "dims": dims.iter().map(|(d, n)| json!({"degree": d, "dim": n})).collect::<Vec<_>>(),
                        "edges": h.edges,
                        "representatives": h.computed.iter().map(|(d, c)| json!({
                            "degree": d,
                            "classes": c.representatives.iter().map(|r| r.display(alg.gens()).to_string()).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                        "induced_product": h.product,
                        "induced_bracket": h.bracket,
                    });
                    Ok(Report::new(
                        "cohomology",
                        &t,
                        vec![fact("complex-d-squared-zero", true, None)],
                        output,
                    ))
                }
                Err(EngineError::BadStructure(msg)) => Ok(Report::new(
                    "cohomology",
                    &t,
                    vec![fact("complex-d-squared-zero", false, Some(
                        dgpa_core::dg::Counterexample {
                            inputs: vec![],
                            expected: "d^2 = 0 on the window".into(),
                            got: msg,
                        },
                    ))],
                    Value::Null,
                )),
                Err(e) => Err(e),
            }
        }
        Command::Compare {
            left,
            right,
            map,
            map_rev,
        } => {
            let (a, _) = parse_algebra(&read(left)?, &label_of(left), &overrides(&cli.opts)?)?;
            let (b, _) = parse_algebra(&read(right)?, &label_of(right), &overrides(&cli.opts)?)?;
            let p = DgPresentation {
                presentation: a.presentation.clone(),
                diff: a.diff.clone(),
            };
            let q = DgPresentation {
                presentation: b.presentation.clone(),
                diff: b.diff.clone(),
            };
            let fwd = parse_map(map, p.gens(), q.gens())?;
            let bwd = map_rev
                .as_ref()
                .map(|m| parse_map(m, q.gens(), p.gens()))
                .transpose()?;
            let report = compare_presentations(&p, &q, &fwd, bwd.as_ref(), &t)?;
            let pass = report.verdict == dgpa_core::compare::Verdict::IsoUpToWindow;
            let checks = vec![fact(
                &format!("compare-verdict: {}", report.verdict),
                pass,
                None,
            )];
            Ok(Report::new(
                "compare",
                &t,
                checks,
                serde_json::to_value(&report).expect("iso report"),
            ))
        }
        Command::ModuleCheck { input, regular } => {
            let mut alg = load_algebra(input, &cli.opts)?;
            let wide = TruncationParams::new(2 * regular, t.max_word_length)
                .with_word_cap(t.word_cap);
            let report = alg.verify(&wide)?;
            if !report.ok() {
                return Err(EngineError::Unverified);
            }
            let table = alg.presentation.build_table(&wide)?;
            let m = regular_module(&alg, &table, *regular)?;
            let module_window = TruncationParams::new(*regular, t.max_word_length);
            let report = check_module_axioms(&alg, &table, &m, &module_window)?;
            Ok(Report::from_axiom_report("module-check", report, Value::Null))
        }
        Command::Transport { input, regular } => {
            let mut alg = load_algebra(input, &cli.opts)?;
            let wide = TruncationParams::new(2 * regular, t.max_word_length)
                .with_word_cap(t.word_cap);
            let report = alg.verify(&wide)?;
            if !report.ok() {
                return Err(EngineError::Unverified);
            }
            let table = alg.presentation.build_table(&wide)?;
            let m = regular_module(&alg, &table, *regular)?;
            let env = env_presented(&alg)?;
            let (em, mut report) = transport_to_envelope(&m, &env)?;
            let back = transport_from_envelope(&alg, &env, &em, &m.algebra_basis)?;
            report.checks.push(fact(
                "round-trip-reproduces-tables",
                back == m,
                None,
            ));
            let checks = report.checks;
            Ok(Report::new("transport", &t, checks, Value::Null))
        }
        Command::Demo => {
            let checks = run_demo(&t)?;
            Ok(Report::new("demo", &t, checks, Value::Null))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let rendered = if cli.opts.json {
                report.to_json()
            } else {
                report.render_text()
            };
            if let Some(path) = &cli.opts.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{rendered}");
            }
            if report.checks.iter().all(|c| c.status == CheckStatus::Pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
