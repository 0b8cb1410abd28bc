use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pathideal::formulas;
use pathideal::linearity::{self, QuasiLinear, QuotientFailure, QuotientOutcome};
use pathideal::oracle::{self, LinearStatus};
use pathideal::path_ideal::power_generators;
use pathideal::verify::{
    run_sweep, BettiCache, Status, SweepConfig, TableFormat, VerificationReport,
};
use pathideal::{FieldSpec, Limits, Monomial, MonomialIdeal, PathIdealSpec};

#[derive(Parser)]
#[command(
    name = "pathideal",
    version,
    about = "Powers of t-path ideals of line graphs"
)]
struct Cli {
    /// Field characteristic for homology computations [default: 2]
    #[arg(long = "char", global = true, value_name = "P")]
    characteristic: Option<u32>,

    /// Betti table cache directory
    #[arg(long, global = true, env = "PATHIDEAL_CACHE", value_name = "DIR")]
    cache: Option<PathBuf>,

    /// Do not read or write the cache
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads (0 = all CPUs)
    #[arg(long, global = true, value_name = "W")]
    jobs: Option<usize>,

    /// Emit JSON, to FILE if given (write `--json=FILE` before a subcommand)
    #[arg(long, global = true, num_args = 0..=1, value_name = "FILE")]
    json: Option<Option<PathBuf>>,

    /// Sweep configuration file (key = value)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct PathArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of I_t(L_n)^s, labelled by compositions
    Gens {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Minimal generators of the s-th power of an arbitrary monomial ideal
    Power {
        /// Comma-separated generators, e.g. "x1*x2, x2^2*x3"
        #[arg(long)]
        ideal: String,
        /// Number of variables
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        power: u32,
    },
    /// Multigraded Betti numbers of I_t(L_n)^s
    Betti {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Regularity and projective dimension of R/I_t(L_n)^s from the oracle
    Reg {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Linear quotients and quasi-linearity of I_t(L_n)^s
    Check {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Closed-form values
    Formula {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 1)]
        power: u64,
        /// Homological index for `betti`
        #[arg(long)]
        i: Option<u64>,
    },
    /// Compare every closed form with the oracle over a grid of cells
    Verify(VerifyArgs),
    /// Convert a verification report to CSV or JSON
    Table {
        /// Report written by `verify --out`
        report: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Quotients,
    Quasi,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Reg,
    Betti,
    Pd,
    Gamma,
}

#[derive(Args)]
struct VerifyArgs {
    /// Single cell: n (with --t and --power)
    #[arg(long, requires_all = ["t", "power"])]
    n: Option<u64>,
    #[arg(long, requires_all = ["n", "power"])]
    t: Option<u64>,
    #[arg(long, requires_all = ["n", "t"])]
    power: Option<u32>,
    #[arg(long)]
    t_min: Option<u64>,
    #[arg(long)]
    t_max: Option<u64>,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    s_min: Option<u32>,
    #[arg(long)]
    s_max: Option<u32>,
    #[arg(long)]
    max_generators: Option<usize>,
    #[arg(long)]
    max_lattice: Option<usize>,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the CSV table here
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print only the summary line
    #[arg(long, short)]
    quiet: bool,
}

struct Ctx {
    field: FieldSpec,
    cache: BettiCache,
    limits: Limits,
    json: Option<Option<PathBuf>>,
}

impl Ctx {
    /// Prints `value` as JSON when requested, otherwise runs `text`.
    fn emit(&self, value: impl serde::Serialize, text: impl FnOnce() -> String) -> Result<()> {
        match &self.json {
            Some(Some(path)) => write_file(path, &serde_json::to_string_pretty(&value)?),
            Some(None) => say(&serde_json::to_string_pretty(&value)?),
            None => say(&text()),
        }
    }
}

/// Writes `body` to stdout, adding a final newline if missing.
fn say(body: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(body.as_bytes())?;
    if !body.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn spec(p: PathArgs) -> Result<PathIdealSpec> {
    Ok(PathIdealSpec::new(p.n, p.t)?)
}

fn text(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(ToString::to_string).collect()
}

#[derive(serde::Serialize)]
struct GenRecord<'a> {
    parts: &'a [u32],
    monomial: &'a [u32],
}

fn gens(ctx: &Ctx, p: PathArgs, s: u32) -> Result<()> {
    let spec = spec(p)?;
    let named = if p.n < p.t {
        Vec::new()
    } else {
        power_generators(&spec, s, ctx.limits.max_generators)?
    };
    let value: Vec<GenRecord> = named
        .iter()
        .map(|(c, m)| GenRecord {
            parts: c.parts(),
            monomial: m.exponents(),
        })
        .collect();
    ctx.emit(value, || {
        named
            .iter()
            .map(|(c, m)| format!("{:?}\t{m}\n", c.parts()))
            .collect()
    })
}

fn power(ctx: &Ctx, ideal: &str, vars: usize, s: u32) -> Result<()> {
    let gens = ideal
        .split(',')
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .map(|g| Monomial::parse(g, vars))
        .collect::<pathideal::Result<Vec<_>>>()?;
    let ideal = MonomialIdeal::new(vars, gens)?;
    let p = ideal.power(s, ctx.limits.max_generators)?;
    let value = json!(p
        .generators()
        .iter()
        .map(Monomial::exponents)
        .collect::<Vec<_>>());
    ctx.emit(value, || text(p.generators()).join("\n"))
}

fn betti(ctx: &Ctx, p: PathArgs, s: u32) -> Result<()> {
    let ideal = spec(p)?.power_ideal(s, ctx.limits.max_generators)?;
    let table = ctx.cache.betti_table(&ideal, ctx.field, &ctx.limits)?;
    let value: Value = serde_json::from_str(&table.to_json()?)?;
    ctx.emit(value, || {
        let mut out = format!("graded Betti numbers of I over {}\n", ctx.field);
        for g in &table.graded {
            out += &format!("beta[{},{}] = {}\n", g.i, g.j, g.rank);
        }
        out
    })
}

fn reg(ctx: &Ctx, p: PathArgs, s: u32) -> Result<()> {
    let ideal = spec(p)?.power_ideal(s, ctx.limits.max_generators)?;
    let table = ctx.cache.betti_table(&ideal, ctx.field, &ctx.limits)?;
    let r = oracle::quotient_regularity(&ideal, &table)?;
    let pd = oracle::quotient_projective_dimension(&ideal, &table)?;
    let status = oracle::linear_status(&ideal, &table);
    let linear = status.is_linear();
    let value = json!({
        "reg": r,
        "pd": pd,
        "linear_resolution": linear,
        "inputs": {"n": p.n, "t": p.t, "power": s, "char": ctx.field.characteristic()},
    });
    ctx.emit(value, || {
        let mut out = format!("reg R/I = {r}\npd R/I = {pd}\nlinear resolution: {linear}\n");
        if let LinearStatus::NotLinear { i, j, .. } = status {
            out += &format!("first nonlinear entry: beta[{i},{j}]\n");
        }
        out
    })
}

fn failure_json(f: &QuotientFailure) -> Value {
    match f {
        QuotientFailure::NotVariables {
            position,
            composition,
            colon,
            offending,
        } => json!({
            "kind": "not_variables",
            "position": position,
            "composition": composition.parts(),
            "colon": text(colon),
            "offending": offending.to_string(),
        }),
        QuotientFailure::ClosedFormMismatch {
            position,
            composition,
            brute_force,
            closed_form,
        } => json!({
            "kind": "closed_form_mismatch",
            "position": position,
            "composition": composition.parts(),
            "brute_force": brute_force,
            "closed_form": closed_form,
        }),
    }
}

fn check(ctx: &Ctx, p: PathArgs, s: u32, mode: Mode) -> Result<()> {
    let spec = spec(p)?;
    if p.n < p.t {
        bail!("I_{}(L_{}) is the zero ideal", p.t, p.n);
    }
    let cap = ctx.limits.max_generators;
    let mut value = json!({"inputs": {"n": p.n, "t": p.t, "power": s}});
    let mut lines = Vec::new();
    if matches!(mode, Mode::Quotients | Mode::Both) {
        let order = linearity::greatest_first_order(&spec, s, cap)?;
        let outcome = linearity::linear_quotients_check(&spec, s, &order, cap)?;
        value["linear_quotients"] = match &outcome {
            QuotientOutcome::Certificate(c) => {
                let census: Vec<usize> = (0..=p.n - p.t).map(|k| c.census(k)).collect();
                lines.push(format!("linear quotients: yes ({} colons)", c.steps.len()));
                json!({"holds": true, "closed_form_checked": c.closed_form_checked, "census": census})
            }
            QuotientOutcome::Failure(f) => {
                let j = failure_json(f);
                lines.push(format!(
                    "linear quotients: no, at position {}",
                    j["position"]
                ));
                if let QuotientFailure::NotVariables { offending, .. } = f {
                    lines.push(format!("  offending colon generator: {offending}"));
                }
                json!({"holds": false, "failure": j})
            }
        };
    }
    if matches!(mode, Mode::Quasi | Mode::Both) {
        let ideal = spec.power_ideal(s, cap)?;
        value["quasi_linear"] = match linearity::quasi_linear_check(&ideal)? {
            QuasiLinear::Holds => {
                lines.push("quasi-linear: yes".into());
                json!({"holds": true})
            }
            QuasiLinear::Fails {
                generator,
                colon,
                offending,
            } => {
                lines.push(format!("quasi-linear: no, at {generator}"));
                lines.push(format!("  offending colon generator: {offending}"));
                json!({
                    "holds": false,
                    "generator": generator.to_string(),
                    "colon": text(&colon),
                    "offending": offending.to_string(),
                })
            }
        };
        if p.n > 2 * p.t {
            let w = linearity::quasi_linear_witness(&spec, s, cap)?;
            lines.push(format!(
                "witness at {}: colon variables {:?}, confirmed {}",
                w.alpha,
                w.variables,
                w.confirmed()
            ));
            value["witness"] = json!({
                "alpha": w.alpha.to_string(),
                "colon": text(&w.colon),
                "variables": w.variables,
                "non_variable": w.non_variable.as_ref().map(ToString::to_string),
                "confirmed": w.confirmed(),
            });
        }
    }
    ctx.emit(value, || lines.join("\n"))
}

fn formula(ctx: &Ctx, which: Which, n: u64, t: u64, s: u64, i: Option<u64>) -> Result<()> {
    let (v, inputs) = match which {
        Which::Gamma => (formulas::gamma(n, t)?, json!({"n": n, "t": t})),
        Which::Reg => (
            formulas::reg_power(n, t, s)?,
            json!({"n": n, "t": t, "power": s}),
        ),
        Which::Pd => (
            formulas::pd_closed_form(n, t, s)?,
            json!({"n": n, "t": t, "power": s}),
        ),
        Which::Betti => {
            let Some(i) = i else {
                bail!("formula betti needs --i")
            };
            (
                formulas::betti_closed_form(n, t, s, i)?,
                json!({"n": n, "t": t, "power": s, "i": i}),
            )
        }
    };
    ctx.emit(json!({"value": v, "inputs": inputs}), || v.to_string())
}

fn verify(ctx: &Ctx, cli: &Cli, a: &VerifyArgs) -> Result<bool> {
    let mut cfg = match (&cli.config, a.n) {
        (_, Some(n)) => SweepConfig::single(n, a.t.unwrap_or(0), a.power.unwrap_or(0)),
        (Some(path), None) => SweepConfig::from_file(path)?,
        (None, None) => SweepConfig::default(),
    };
    if a.n.is_some() {
        if let Some(path) = &cli.config {
            let file = SweepConfig::from_file(path)?;
            cfg.characteristic = file.characteristic;
            cfg.spot_chars = file.spot_chars;
            cfg.spot_t = file.spot_t;
            cfg.tail_max_power = file.tail_max_power;
            cfg.max_generators = file.max_generators;
            cfg.max_lattice = file.max_lattice;
            cfg.jobs = file.jobs;
        }
    }
    macro_rules! set {
        ($($f:ident),*) => { $(if let Some(v) = a.$f { cfg.$f = v; })* };
    }
    set!(
        t_min,
        t_max,
        n_max,
        s_min,
        s_max,
        max_generators,
        max_lattice
    );
    if a.n_min.is_some() {
        cfg.n_min = a.n_min;
    }
    if let Some(p) = cli.characteristic {
        cfg.characteristic = p;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    cfg.cache = ctx.cache.dir().map(Path::to_path_buf);

    let report = run_sweep(&cfg, &ctx.cache)?;
    if let Some(path) = &a.out {
        write_file(path, &report.to_json()?)?;
    }
    if let Some(path) = &a.csv {
        write_file(path, &report.to_csv()?)?;
    }
    match &ctx.json {
        Some(Some(path)) => write_file(path, &report.to_json()?)?,
        Some(None) => say(&report.to_json()?)?,
        None => {
            if !a.quiet {
                for c in &report.cells {
                    say(&format!(
                        "n={} t={} s={} {} ({} checks, {} ms)",
                        c.n,
                        c.t,
                        c.s,
                        c.status,
                        c.checks.len(),
                        c.ms
                    ))?;
                    for k in c.checks.iter().filter(|k| k.status == Status::Fail) {
                        say(&format!(
                            "  {}: formula {} oracle {}",
                            k.quantity,
                            k.formula,
                            k.oracle.as_deref().unwrap_or("-")
                        ))?;
                    }
                    if c.status == Status::Fail {
                        say(&format!("  repro: {}", c.repro))?;
                    }
                }
            }
            let s = &report.summary;
            say(&format!(
                "{} cells: {} passed, {} failed, {} skipped; {} checks, {} noted",
                s.cells, s.passed, s.failed, s.skipped, s.checks, s.noted_checks
            ))?;
        }
    }
    Ok(report.passed())
}

fn table(report: &Path, format: &str, out: Option<&Path>) -> Result<()> {
    let r = VerificationReport::read_json(report)?;
    let format: TableFormat = format.parse()?;
    match out {
        Some(path) => pathideal::verify::emit_table(&r, format, path)?,
        None => match format {
            TableFormat::Csv => say(&r.to_csv()?)?,
            TableFormat::Json => say(&r.to_json()?)?,
        },
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let field = FieldSpec::new(cli.characteristic.unwrap_or(2))?;
    let cache = if cli.no_cache {
        BettiCache::disabled()
    } else {
        BettiCache::new(Some(
            cli.cache.clone().unwrap_or_else(BettiCache::default_dir),
        ))
    };
    let mut limits = Limits::default();
    if let Some(path) = &cli.config {
        limits = SweepConfig::from_file(path)?.limits();
    }
    if let Some(j) = cli.jobs {
        if !matches!(cli.command, Command::Verify(_)) {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .context("configuring worker threads")?;
        }
    }
    let ctx = Ctx {
        field,
        cache,
        limits,
        json: cli.json.clone(),
    };
    match &cli.command {
        Command::Gens { path, power } => gens(&ctx, *path, *power)?,
        Command::Power {
            ideal,
            vars,
            power: s,
        } => power(&ctx, ideal, *vars, *s)?,
        Command::Betti { path, power } => betti(&ctx, *path, *power)?,
        Command::Reg { path, power } => reg(&ctx, *path, *power)?,
        Command::Check { path, power, mode } => check(&ctx, *path, *power, *mode)?,
        Command::Formula {
            which,
            n,
            t,
            power,
            i,
        } => formula(&ctx, *which, *n, *t, *power, *i)?,
        Command::Verify(a) => return verify(&ctx, cli, a),
        Command::Table {
            report,
            format,
            out,
        } => table(report, format, out.as_deref())?,
    }
    Ok(true)
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
