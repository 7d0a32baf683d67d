//! `zetastar`: evaluate harmonic-type sums exactly, verify binomial-sum
//! identities over parameter grids or by seeded random search, and run the
//! high-precision numeric series checks.
//!
//! Exit codes: 0 all checks passed, 1 at least one exact mismatch (or a
//! numeric difference over tolerance), 2 usage or domain error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use zetastar::composition::Composition;
use zetastar::harmonic::{alt_harmonic_number, harmonic_number, HarmonicEvaluator};
use zetastar::identities::{
    search_counterexample, summarize, sweep, Counterexample, EvalCtx, GridSpec, IdentityReport,
    Registry, SamplerSpec, Slot, SweepSummary,
};
use zetastar::numeric::{
    default_truncation, mzsv_star_numeric, thm4_rhs_numeric, toeplitz_trace, DEFAULT_DIGITS,
};
use zetastar::rational::{format_rational, parse_rational};
use zetastar::stirling_bell::{bell_number_y, stirling1};

/// Fixed default seed so repeated invocations reproduce byte-identical runs.
const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "zetastar",
    version,
    about = "Exact multiple harmonic sums, Stirling/Bell combinatorics, and binomial-sum identity verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one sum exactly and print it as `num/den`
    Eval(EvalArgs),
    /// Verify an identity over a grid, or search for counterexamples
    Verify(Box<VerifyArgs>),
    /// Numeric check of the truncated series against its star-sum limit
    Numeric(NumericArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// One of: mhs, mhss, mhts, H, Hbar, stirling1, bellY
    kind: String,
    #[arg(long)]
    n: Option<u32>,
    /// Composition `2,1,3` (mhs/mhss/mhts) or integer index (stirling1, bellY)
    #[arg(long)]
    k: Option<String>,
    /// Harmonic order for H / Hbar
    #[arg(long)]
    p: Option<u32>,
    /// Innermost weight for mhts
    #[arg(long)]
    z: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, or `all` for every identity in the default set
    /// (may come from the config file instead)
    #[arg(default_value = "")]
    identity: String,

    // grid axes; integer slots accept `lo..hi` or comma lists, rational
    // slots comma lists of `a/b`, composition/vector slots `(..);(..)`
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    prob: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    l: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    pvec: Option<String>,
    #[arg(long)]
    mvec: Option<String>,

    /// Declarative config file (TOML) with `identity`, `[grid]`, `[sampler]`
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Randomized-search mode: number of sampled points
    #[arg(long)]
    budget: Option<u64>,
    /// json | csv | plain
    #[arg(long, default_value = "plain")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Evaluate points outside the stated theorem domain and report them
    #[arg(long)]
    override_domain: bool,
    /// Keep real timings in output files (breaks byte-for-byte reproducibility)
    #[arg(long)]
    timings: bool,
    /// Worker threads for sweeps (default: ZETASTAR_WORKERS or rayon default)
    #[arg(long)]
    workers: Option<usize>,

    // sampler bounds for --budget mode
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long)]
    max_den: Option<u32>,
    #[arg(long)]
    max_num: Option<i64>,
    #[arg(long)]
    max_p: Option<u32>,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    max_r: Option<u32>,
    #[arg(long)]
    max_l: Option<u32>,
}

#[derive(Args)]
struct NumericArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    r: u32,
    /// Rational in (0,1), e.g. 1/2
    #[arg(long)]
    y: String,
    /// Series truncation bound (default scales with depth)
    #[arg(long)]
    truncation: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: u32,
    /// Absolute tolerance on |combined - reference| (decimal, not exact)
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Also print binomial partial sums at these n, e.g. `10,50,200`
    #[arg(long)]
    trace: Option<String>,
    /// plain | json
    #[arg(long, default_value = "plain")]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Eval(args) => match run_eval(&args) {
            Ok(line) => {
                println!("{line}");
                ExitCode::SUCCESS
            }
            Err(msg) => usage_error(&msg),
        },
        Cmd::Verify(args) => match run_verify(&args) {
            Ok(0) => ExitCode::SUCCESS,
            Ok(_) => ExitCode::from(1),
            Err(msg) => usage_error(&msg),
        },
        Cmd::Numeric(args) => match run_numeric(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(msg) => usage_error(&msg),
        },
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn run_eval(args: &EvalArgs) -> Result<String, String> {
    let need_n = || args.n.ok_or_else(|| "missing --n".to_string());
    let need_comp = || -> Result<Composition, String> {
        args.k
            .as_deref()
            .ok_or_else(|| "missing --k".to_string())?
            .parse::<Composition>()
            .map_err(|e| e.to_string())
    };
    let need_k_int = || -> Result<u32, String> {
        args.k
            .as_deref()
            .ok_or_else(|| "missing --k".to_string())?
            .trim()
            .parse::<u32>()
            .map_err(|_| "expected an integer --k".to_string())
    };
    let ev = HarmonicEvaluator::new();
    match args.kind.as_str() {
        "mhs" => Ok(format_rational(&ev.mhs(need_n()?, &need_comp()?))),
        "mhss" => Ok(format_rational(&ev.mhss(need_n()?, &need_comp()?))),
        "mhts" => {
            let z = parse_rational(args.z.as_deref().ok_or_else(|| "missing --z".to_string())?)
                .map_err(|e| e.to_string())?;
            Ok(format_rational(&ev.mhts(need_n()?, &need_comp()?, &z)))
        }
        "H" => Ok(format_rational(&harmonic_number(need_n()?, args.p.unwrap_or(1)))),
        "Hbar" => Ok(format_rational(&alt_harmonic_number(need_n()?, args.p.unwrap_or(1)))),
        "stirling1" => Ok(stirling1(need_n()?, need_k_int()?).to_string()),
        "bellY" => Ok(format_rational(&bell_number_y(need_k_int()?, need_n()?))),
        other => Err(format!(
            "unknown kind `{other}` (expected mhs, mhss, mhts, H, Hbar, stirling1, bellY)"
        )),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Default)]
struct FileConfig {
    identity: Option<String>,
    seed: Option<u64>,
    budget: Option<u64>,
    override_domain: Option<bool>,
    grid: Vec<(String, String)>,
    sampler: Vec<(String, i64)>,
}

fn load_config(path: &PathBuf) -> Result<FileConfig, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let value: toml::Value = text
        .parse()
        .map_err(|e| format!("parsing {}: {e}", path.display()))?;
    let mut cfg = FileConfig::default();
    if let Some(s) = value.get("identity").and_then(|v| v.as_str()) {
        cfg.identity = Some(s.to_string());
    }
    if let Some(s) = value.get("seed").and_then(|v| v.as_integer()) {
        cfg.seed = Some(s as u64);
    }
    if let Some(s) = value.get("budget").and_then(|v| v.as_integer()) {
        cfg.budget = Some(s as u64);
    }
    if let Some(b) = value.get("override_domain").and_then(|v| v.as_bool()) {
        cfg.override_domain = Some(b);
    }
    if let Some(grid) = value.get("grid").and_then(|v| v.as_table()) {
        for (key, v) in grid {
            let text = match v {
                toml::Value::String(s) => s.clone(),
                toml::Value::Integer(i) => i.to_string(),
                other => other.to_string(),
            };
            cfg.grid.push((key.clone(), text));
        }
    }
    if let Some(sampler) = value.get("sampler").and_then(|v| v.as_table()) {
        for (key, v) in sampler {
            if let Some(i) = v.as_integer() {
                cfg.sampler.push((key.clone(), i));
            }
        }
    }
    Ok(cfg)
}

fn build_grid(args: &VerifyArgs, cfg: &FileConfig) -> Result<GridSpec, String> {
    let mut grid = GridSpec::new();
    for (key, text) in &cfg.grid {
        let slot = Slot::from_name(key).map_err(|e| e.to_string())?;
        grid.parse_and_add(slot, text).map_err(|e| e.to_string())?;
    }
    let flags: [(&Option<String>, Slot); 14] = [
        (&args.n, Slot::N),
        (&args.x, Slot::X),
        (&args.y, Slot::Y),
        (&args.z, Slot::Z),
        (&args.prob, Slot::Prob),
        (&args.a, Slot::A),
        (&args.alpha, Slot::Alpha),
        (&args.p, Slot::P),
        (&args.m, Slot::M),
        (&args.r, Slot::R),
        (&args.l, Slot::L),
        (&args.k, Slot::Comp),
        (&args.pvec, Slot::PVec),
        (&args.mvec, Slot::MVec),
    ];
    for (value, slot) in flags {
        if let Some(text) = value {
            grid.parse_and_add(slot, text).map_err(|e| e.to_string())?;
        }
    }
    Ok(grid)
}

fn build_sampler(args: &VerifyArgs, cfg: &FileConfig) -> SamplerSpec {
    let mut spec = SamplerSpec::default();
    for (key, v) in &cfg.sampler {
        let v_u32 = *v as u32;
        match key.as_str() {
            "n_max" => spec.n_max = v_u32,
            "den_max" => spec.den_max = v_u32,
            "num_max" => spec.num_max = *v,
            "p_max" => spec.p_max = v_u32,
            "m_max" => spec.m_max = v_u32,
            "r_max" => spec.r_max = v_u32,
            "l_max" => spec.l_max = v_u32,
            _ => {}
        }
    }
    if let Some(v) = args.max_n {
        spec.n_max = v;
    }
    if let Some(v) = args.max_den {
        spec.den_max = v;
    }
    if let Some(v) = args.max_num {
        spec.num_max = v;
    }
    if let Some(v) = args.max_p {
        spec.p_max = v;
    }
    if let Some(v) = args.max_m {
        spec.m_max = v;
    }
    if let Some(v) = args.max_r {
        spec.r_max = v;
    }
    if let Some(v) = args.max_l {
        spec.l_max = v;
    }
    spec
}

/// Built-in smoke grids for `verify all`.
fn demo_grid(id: &str) -> &'static [(&'static str, &'static str)] {
    match id {
        "mneimneh" => &[("n", "1..8"), ("prob", "0,1/3,1/2,1")],
        "pow2" => &[("n", "0..10")],
        "gencev" => &[("n", "1..6"), ("prob", "1/2,1/3"), ("r", "1,2"), ("z", "1,1/2,-1")],
        "thm1" => &[("n", "1..6"), ("p", "1..3"), ("x", "1/3"), ("y", "1/2"), ("z", "1/5,0,-1,1")],
        "thm2" => &[
            ("n", "1..5"),
            ("p", "1,2"),
            ("m", "1,2"),
            ("x", "1/2"),
            ("y", "1/4"),
            ("z", "-1,1/2"),
        ],
        "thm3" => &[
            ("n", "1..6"),
            ("p", "1,2"),
            ("m", "0,1"),
            ("r", "1,2"),
            ("x", "1/2"),
            ("y", "1/2"),
        ],
        "cor1" => &[("n", "1..5"), ("p", "1,2"), ("x", "2/3"), ("y", "1/3"), ("z", "1/2,1")],
        "cor2" => &[("n", "1..5"), ("m", "1,2"), ("x", "2/3"), ("y", "1/3"), ("z", "1/2,1")],
        "lemma-shift" => &[("n", "1..6"), ("k", "(1);(2,1);(1,1,1)"), ("l", "0,2,5")],
        "prop-nested" => &[("n", "1..8"), ("a", "1/2,-2"), ("z", "1/3,1"), ("m", "1,2")],
        "prop5" => &[("n", "1..8"), ("alpha", "-1/2,1/4,2"), ("m", "1,2")],
        "ex-alt-h2" | "ex-h3" | "ex-z12" | "ex-z21" | "ex-hkhk2" | "ex-hk3" => {
            &[("n", "1..8"), ("x", "1/2,1"), ("y", "1/2,2")]
        }
        _ => &[("n", "1..5")],
    }
}

fn run_verify(args: &VerifyArgs) -> Result<usize, String> {
    let cfg = match &args.config {
        Some(path) => load_config(path)?,
        None => FileConfig::default(),
    };
    let identity = if args.identity.is_empty() {
        cfg.identity.clone().unwrap_or_default()
    } else {
        args.identity.clone()
    };
    if identity.is_empty() {
        return Err("no identity given (argument or config `identity`)".to_string());
    }
    let registry = Registry::standard();
    let ctx = EvalCtx::new();
    let seed = args.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
    let budget = args.budget.or(cfg.budget);
    let override_domain = args.override_domain || cfg.override_domain.unwrap_or(false);

    if let Some(budget) = budget {
        let spec = build_sampler(args, &cfg);
        let found = search_counterexample(
            &registry,
            &ctx,
            &identity,
            &spec,
            seed,
            budget,
            override_domain,
        )
        .map_err(|e| e.to_string())?;
        return report_search(seed, budget, &identity, found, args);
    }

    if identity == "all" {
        let mut total_mismatches = 0usize;
        for id in registry.default_ids() {
            total_mismatches += if id == "conjecture" {
                verify_conjecture_demo(&registry, &ctx, args)?
            } else {
                let mut grid = GridSpec::new();
                for (key, text) in demo_grid(id) {
                    grid.parse_and_add(Slot::from_name(key).unwrap(), text)
                        .map_err(|e| e.to_string())?;
                }
                verify_one(&registry, &ctx, id, &grid, override_domain, args)?
            };
        }
        return Ok(total_mismatches);
    }

    let grid = build_grid(args, &cfg)?;
    if grid.is_empty() {
        return Err(format!(
            "no grid given for `{identity}`; pass axes like --n 1..10 plus identity parameters, or --config"
        ));
    }
    verify_one(&registry, &ctx, &identity, &grid, override_domain, args)
}

// conjecture vectors must move together, so the demo runs fixed shapes
fn verify_conjecture_demo(
    registry: &Registry,
    ctx: &EvalCtx,
    args: &VerifyArgs,
) -> Result<usize, String> {
    let shapes = [
        ("(2)", "()"),
        ("(1,1)", "(0)"),
        ("(1,2)", "(1)"),
        ("(1,1,1)", "(0,0)"),
    ];
    let mut mismatches = 0;
    for (pvec, mvec) in shapes {
        let mut grid = GridSpec::new();
        grid.parse_and_add(Slot::N, "1..6").map_err(|e| e.to_string())?;
        grid.parse_and_add(Slot::X, "1/2").map_err(|e| e.to_string())?;
        grid.parse_and_add(Slot::Y, "1/3").map_err(|e| e.to_string())?;
        grid.parse_and_add(Slot::PVec, pvec).map_err(|e| e.to_string())?;
        grid.parse_and_add(Slot::MVec, mvec).map_err(|e| e.to_string())?;
        mismatches += verify_one(registry, ctx, "conjecture", &grid, false, args)?;
    }
    Ok(mismatches)
}

fn verify_one(
    registry: &Registry,
    ctx: &EvalCtx,
    id: &str,
    grid: &GridSpec,
    override_domain: bool,
    args: &VerifyArgs,
) -> Result<usize, String> {
    let points = grid.points().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let reports = with_workers(args.workers, || {
        sweep(registry, ctx, id, &points, override_domain)
    })
    .map_err(|e| e.to_string())?;
    let summary = summarize(&reports);
    emit_reports(id, &reports, &summary, args, start)?;
    Ok(summary.mismatched)
}

fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    let n = workers.or_else(|| {
        std::env::var("ZETASTAR_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match n {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

fn emit_reports(
    id: &str,
    reports: &[IdentityReport],
    summary: &SweepSummary,
    args: &VerifyArgs,
    start: Instant,
) -> Result<(), String> {
    let rows = render_rows(reports, &args.format, args.timings)?;
    let summary_line = format!(
        "{id}: {} points, {} passed, {} mismatched, {} skipped, {} out-of-domain ({:.2?})",
        summary.total,
        summary.passed,
        summary.mismatched,
        summary.skipped,
        summary.out_of_domain,
        start.elapsed()
    );
    match &args.output {
        Some(path) => {
            fs::write(path, rows).map_err(|e| format!("writing {}: {e}", path.display()))?;
            println!("{summary_line}");
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rows.as_bytes())
                .map_err(|e| e.to_string())?;
            drop(stdout);
            eprintln!("{summary_line}");
        }
    }
    Ok(())
}

fn render_rows(reports: &[IdentityReport], format: &str, timings: bool) -> Result<String, String> {
    let normalized: Vec<IdentityReport> = reports
        .iter()
        .map(|r| {
            if timings {
                r.clone()
            } else {
                r.clone().normalized()
            }
        })
        .collect();
    match format {
        "json" => {
            let mut out = String::new();
            for r in &normalized {
                let line = serde_json::to_string(r).map_err(|e| e.to_string())?;
                out.push_str(&line);
                out.push('\n');
            }
            Ok(out)
        }
        "csv" => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "identity_id",
                "params",
                "status",
                "lhs",
                "rhs",
                "extra_forms",
                "equal",
                "in_domain",
                "error",
                "elapsed_us",
            ])
            .map_err(|e| e.to_string())?;
            for r in &normalized {
                let params = join_map(&r.params);
                let extra = r
                    .extra_forms
                    .as_ref()
                    .map(|m| {
                        m.iter()
                            .map(|(k, v)| format!("{k}={v}"))
                            .collect::<Vec<_>>()
                            .join(";")
                    })
                    .unwrap_or_default();
                w.write_record([
                    r.identity_id.as_str(),
                    params.as_str(),
                    r.status.as_str(),
                    r.lhs.as_deref().unwrap_or(""),
                    r.rhs.as_deref().unwrap_or(""),
                    extra.as_str(),
                    &r.equal.map(|b| b.to_string()).unwrap_or_default(),
                    &r.in_domain.to_string(),
                    r.error.as_deref().unwrap_or(""),
                    &r.elapsed_us.to_string(),
                ])
                .map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())
        }
        "plain" => {
            let mut out = String::new();
            for r in &normalized {
                let params = join_map(&r.params);
                if r.status == "ok" {
                    let verdict = match (r.equal, r.in_domain) {
                        (Some(true), true) => "pass",
                        (Some(true), false) => "pass (out of stated domain)",
                        (Some(false), true) => "MISMATCH",
                        (Some(false), false) => "mismatch (out of stated domain)",
                        _ => "?",
                    };
                    writeln!(
                        out,
                        "{} [{params}] lhs={} rhs={} {verdict}",
                        r.identity_id,
                        r.lhs.as_deref().unwrap_or("-"),
                        r.rhs.as_deref().unwrap_or("-"),
                    )
                    .unwrap();
                } else {
                    writeln!(
                        out,
                        "{} [{params}] skipped: {}",
                        r.identity_id,
                        r.error.as_deref().unwrap_or("domain error")
                    )
                    .unwrap();
                }
            }
            Ok(out)
        }
        other => Err(format!("unknown format `{other}` (expected json, csv, plain)")),
    }
}

fn join_map(map: &std::collections::BTreeMap<String, String>) -> String {
    map.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn report_search(
    seed: u64,
    budget: u64,
    id: &str,
    found: Option<Counterexample>,
    args: &VerifyArgs,
) -> Result<usize, String> {
    match found {
        None => {
            let line = format!("{id}: no counterexample in {budget} samples (seed {seed})");
            match &args.output {
                Some(path) => fs::write(path, format!("{line}\n"))
                    .map_err(|e| format!("writing {}: {e}", path.display()))?,
                None => println!("{line}"),
            }
            Ok(0)
        }
        Some(ce) => {
            let rendered = if args.format == "json" {
                serde_json::to_string(&ce).map_err(|e| e.to_string())? + "\n"
            } else {
                format!(
                    "{}: COUNTEREXAMPLE [{}] lhs={} rhs={} (seed {})\n",
                    ce.identity_id,
                    join_map(&ce.params),
                    ce.lhs,
                    ce.rhs,
                    ce.seed
                )
            };
            match &args.output {
                Some(path) => fs::write(path, &rendered)
                    .map_err(|e| format!("writing {}: {e}", path.display()))?,
                None => print!("{rendered}"),
            }
            Ok(1)
        }
    }
}

// ---------------------------------------------------------------------------
// numeric
// ---------------------------------------------------------------------------

fn run_numeric(args: &NumericArgs) -> Result<bool, String> {
    let y = parse_rational(&args.y).map_err(|e| e.to_string())?;
    let depth = args.m + args.r + 1;
    let trunc = args.truncation.unwrap_or_else(|| default_truncation(depth));
    let reference =
        mzsv_star_numeric(args.m, args.r, trunc, args.digits).map_err(|e| e.to_string())?;
    let combined =
        thm4_rhs_numeric(args.m, args.r, &y, trunc, args.digits).map_err(|e| e.to_string())?;
    let diff = (reference.to_f64() - combined.to_f64()).abs();
    let within = diff < args.tol;

    let trace = match &args.trace {
        Some(list) => {
            let ns: Vec<u32> = list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| format!("bad trace entry `{t}`"))
                })
                .collect::<Result<_, _>>()?;
            let ev = HarmonicEvaluator::new();
            Some(
                toeplitz_trace(&ev, args.m, args.r, &y, &ns, trunc, args.digits)
                    .map_err(|e| e.to_string())?,
            )
        }
        None => None,
    };

    if args.format == "json" {
        let mut obj = serde_json::json!({
            "m": args.m,
            "r": args.r,
            "y": format_rational(&y),
            "truncation": trunc,
            "digits": args.digits,
            "reference": reference.decimal_string(),
            "reference_err_estimate": reference.err_estimate,
            "combined": combined.decimal_string(),
            "combined_err_estimate": combined.err_estimate,
            "abs_difference": diff,
            "tolerance": args.tol,
            "within_tolerance": within,
        });
        if let Some(trace) = &trace {
            let entries: Vec<serde_json::Value> = trace
                .entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "n": e.n,
                        "partial": format_rational(&e.partial),
                        "value": e.value,
                        "delta": e.delta,
                    })
                })
                .collect();
            obj["trace"] = serde_json::Value::Array(entries);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&obj).map_err(|e| e.to_string())?
        );
    } else {
        println!(
            "star-sum reference (N={trunc}, {} digits): {}  (err est {:.3e})",
            args.digits,
            reference.decimal_string(),
            reference.err_estimate
        );
        println!(
            "combined series    (y={}): {}  (err est {:.3e})",
            format_rational(&y),
            combined.decimal_string(),
            combined.err_estimate
        );
        println!(
            "absolute difference: {diff:.6e}  (tolerance {:.1e})",
            args.tol
        );
        if let Some(trace) = &trace {
            println!("binomial partial sums:");
            for e in &trace.entries {
                println!("  n={:>6}  value={:.12}  delta={:+.6e}", e.n, e.value, e.delta);
            }
        }
        println!(
            "{}",
            if within {
                "WITHIN TOLERANCE"
            } else {
                "EXCEEDS TOLERANCE"
            }
        );
    }
    Ok(within)
}
