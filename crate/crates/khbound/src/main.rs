use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use khbound::config::{self, FileConfig, Overrides};
use khbound::fixtures::{self, KnotTableEntry};
use khbound::formats::{self, PdJson};
use khbound::{compute_batch, progress_line, CliError};
use khbound_core::certify::{self, Certificate};
use khbound_core::factory::{cable_diagram, torus_diagram, CableSpec};
use khbound_core::invariants::{self, kh_table_with_progress};
use khbound_core::{parse_pd, Backend, ComputeConfig, Diagram, KhTable};

#[derive(Parser, Debug)]
#[command(name = "khbound", version, about = "Khovanov homology tables and crossing-number bounds for knots and links")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Computation backend.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Auto)]
    backend: BackendArg,
    /// Ceiling on live generators during a scan [env: KHBOUND_CEILING].
    #[arg(long, global = true)]
    ceiling: Option<usize>,
    /// Largest crossing number for the naive backend [env: KHBOUND_NAIVE_LIMIT].
    #[arg(long, global = true)]
    naive_limit: Option<usize>,
    /// Worker threads for batch runs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// TOML file with `ceiling` and `naive_limit`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Extra knot table (CSV `name,pd` or JSON), searched before the bundled one.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Report scan progress on stderr.
    #[arg(long, global = true)]
    progress: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BackendArg {
    Naive,
    Scan,
    Auto,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Naive => Backend::Naive,
            BackendArg::Scan => Backend::Scan,
            BackendArg::Auto => Backend::Auto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
struct Target {
    /// Knot names or PD text.
    targets: Vec<String>,
    /// PD text.
    #[arg(long)]
    pd: Option<String>,
    /// File holding a PD code as JSON.
    #[arg(long)]
    pd_json: Option<PathBuf>,
    /// Torus link T(P, Q) as the closure of (s1...s_{P-1})^Q.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
    torus: Option<Vec<i64>>,
    /// Every entry of the knot table.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Khovanov tables.
    Compute(Target),
    /// Certify lower bounds on positive/negative crossing numbers.
    Certify {
        #[command(flatten)]
        target: Target,
        /// Cable strands; without it the knot's own table is used.
        #[arg(long)]
        p: Option<usize>,
        /// Cable twist parameter (framing p*t).
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        t: i64,
    },
    /// Print the PD code of the (p, pt) cable.
    Cable {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        t: i64,
    },
    /// Jones polynomial from the Kauffman bracket (unknot = q + q^-1).
    Jones(Target),
    /// Adequacy and reducedness of the given diagram.
    Adequate(Target),
    /// c+ of T(2k, 2kt) against its i_max.
    Gap {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Sweep (p, t) for a knot and record i_max of each cable.
    #[command(name = "explore-cables", alias = "explore-q26")]
    ExploreCables {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        p: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
        t: Vec<i64>,
    },
    /// Check i_max(K) <= i_max(K(p, 2p i_max(K))) / p^2 <= c+(D).
    #[command(name = "check-chain", alias = "check-q27")]
    CheckChain {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// List the knot table.
    List,
    /// Quick internal consistency checks.
    Selftest,
}

struct Ctx {
    global: Global,
    config: ComputeConfig,
    table: Vec<KnotTableEntry>,
}

impl Ctx {
    fn new(global: Global) -> Result<Ctx, CliError> {
        let file = global.config.as_deref().map(FileConfig::load).transpose()?;
        let flags = Overrides { ceiling: global.ceiling, naive_limit: global.naive_limit };
        let config = config::resolve(flags, &|k| std::env::var(k).ok(), file)?;
        let mut table = match &global.table {
            Some(p) => fixtures::ingest_table(p)?,
            None => Vec::new(),
        };
        table.extend(fixtures::bundled_table());
        Ok(Ctx { global, config, table })
    }

    fn backend(&self) -> Backend {
        self.global.backend.into()
    }

    fn resolve_one(&self, s: &str) -> Result<Diagram, CliError> {
        if let Some(e) = fixtures::find(&self.table, s) {
            return Ok(e.diagram.clone());
        }
        parse_pd(s).map_err(|_| CliError::UnknownTarget(s.into()))
    }

    fn diagrams(&self, t: &Target) -> Result<Vec<Diagram>, CliError> {
        let mut out = Vec::new();
        if t.all {
            out.extend(self.table.iter().map(|e| e.diagram.clone()));
        }
        for s in &t.targets {
            out.push(self.resolve_one(s)?);
        }
        if let Some(pd) = &t.pd {
            out.push(parse_pd(pd).map_err(|source| CliError::Diagram { context: "--pd".into(), source })?);
        }
        if let Some(path) = &t.pd_json {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            out.push(formats::diagram_from_json(&text)?);
        }
        if let Some(pq) = &t.torus {
            let p = usize::try_from(pq[0]).map_err(|_| CliError::Usage("torus P must be positive".into()))?;
            out.push(torus_diagram(p, pq[1])?);
        }
        if out.is_empty() {
            return Err(CliError::Usage("no target given".into()));
        }
        Ok(out)
    }

    fn single(&self, t: &Target) -> Result<Diagram, CliError> {
        let mut v = self.diagrams(t)?;
        if v.len() != 1 {
            return Err(CliError::Usage(format!("expected one target, got {}", v.len())));
        }
        Ok(v.remove(0))
    }

    fn table_for(&self, d: &Diagram) -> Result<KhTable, CliError> {
        let mut peak = 0;
        let show = self.global.progress;
        let t = kh_table_with_progress(d, self.backend(), &self.config, &mut |p| {
            peak = p.peak_live;
            if show {
                eprintln!("{}", progress_line(p));
            }
        })?;
        if show && t.source.backend == Backend::Scan {
            eprintln!("peak live generators: {peak}");
        }
        Ok(t)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.global.out {
            Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
            None => {
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(text.as_bytes());
                Ok(())
            }
        }
    }

    fn emit_json(&self, v: &serde_json::Value) -> Result<(), CliError> {
        self.emit(&formats::to_json_text(v))
    }
}

fn tables_output(ctx: &Ctx, tables: &[KhTable]) -> String {
    match ctx.global.format {
        Format::Json if tables.len() == 1 => formats::table_to_json(&tables[0]),
        Format::Json => {
            let v: Vec<_> = tables.iter().map(formats::TableJson::from_table).collect();
            formats::to_json_text(&v)
        }
        Format::Csv => {
            let mut s = String::new();
            for (k, t) in tables.iter().enumerate() {
                let csv = formats::table_to_csv(t);
                s.push_str(if k == 0 { &csv } else { csv.split_once('\n').map_or("", |x| x.1) });
            }
            s
        }
    }
}

fn certificate_output(ctx: &Ctx, c: &Certificate) -> String {
    match ctx.global.format {
        Format::Json => formats::certificate_to_json(c),
        Format::Csv => {
            let j = formats::CertificateJson::from_certificate(c);
            format!(
                "subject,statement,p,t,i_max,bound,verdict,table_ref\n{},{},{},{},{},{},{},{}\n",
                j.subject.name.unwrap_or(j.subject.hash),
                j.statement,
                j.p.map_or(String::new(), |p| p.to_string()),
                j.t.map_or(String::new(), |t| t.to_string()),
                j.i_max,
                j.bound,
                j.verdict.join(";"),
                j.table_ref
            )
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx::new(cli.global)?;
    match cli.command {
        Command::Compute(target) => {
            let ds = ctx.diagrams(&target)?;
            let tables = if ds.len() == 1 {
                vec![ctx.table_for(&ds[0])?]
            } else {
                compute_batch(&ds, ctx.backend(), &ctx.config, ctx.global.jobs.max(1))?
                    .into_iter()
                    .collect::<Result<Vec<_>, _>>()?
            };
            ctx.emit(&tables_output(&ctx, &tables))
        }
        Command::Certify { target, p, t } => {
            let d = ctx.single(&target)?;
            let cert = match p {
                None => certify::diagram_bound(&ctx.table_for(&d)?)?,
                Some(p) => certify::cable_certificate(&d, p, t, ctx.backend(), &ctx.config)?,
            };
            eprintln!("{}", cert.summary());
            ctx.emit(&certificate_output(&ctx, &cert))
        }
        Command::Cable { target, p, t } => {
            let d = ctx.single(&target)?;
            let c = cable_diagram(&d, CableSpec::new(p, t)?)?;
            match ctx.global.format {
                Format::Json => ctx.emit(&formats::to_json_text(&PdJson::from_diagram(&c))),
                Format::Csv => ctx.emit(&format!("{}\n", c.to_pd_string())),
            }
        }
        Command::Jones(target) => {
            let d = ctx.single(&target)?;
            let j = invariants::jones_via_kauffman(&d)?;
            let terms: Vec<_> = j.terms().map(|(e, c)| serde_json::json!([e, c])).collect();
            ctx.emit_json(&serde_json::json!({ "diagram": d.name(), "jones": j.to_string(), "terms": terms }))
        }
        Command::Adequate(target) => {
            let d = ctx.single(&target)?;
            ctx.emit_json(&serde_json::json!({
                "diagram": d.name(),
                "plus_adequate": invariants::plus_adequate(&d),
                "minus_adequate": invariants::minus_adequate(&d),
                "reduced": invariants::is_reduced(&d),
                "c_plus": d.stats().c_plus,
                "c_minus": d.stats().c_minus,
            }))
        }
        Command::Gap { k, t } => {
            let g = certify::gap_report(k, t, ctx.backend(), &ctx.config)?;
            ctx.emit_json(&serde_json::json!({ "k": k, "t": t, "c_plus": g.c_plus, "i_max": g.i_max, "gap": g.gap }))
        }
        Command::ExploreCables { target, p, t } => {
            let d = ctx.single(&target)?;
            let rows = certify::explore_cables(&d, &p, &t, ctx.backend(), &ctx.config)?;
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "p": r.p, "t": r.t, "certified": r.i_max.is_some(),
                        "i_max": r.i_max, "bound": r.bound,
                        "positive_degree": r.i_max.map(|i| i > 0),
                    })
                })
                .collect();
            ctx.emit_json(&serde_json::json!({ "diagram": d.name(), "samples": v }))
        }
        Command::CheckChain { target, p } => {
            let d = ctx.single(&target)?;
            let c = certify::check_chain(&d, p, ctx.backend(), &ctx.config)?;
            ctx.emit_json(&serde_json::json!({
                "diagram": d.name(), "p": c.p, "t": c.t,
                "i_max_knot": c.i_max_knot, "i_max_cable": c.i_max_cable,
                "lower_holds": c.lower_holds, "upper_holds": c.upper_holds,
                "c_plus_diagram": c.c_plus_diagram,
            }))
        }
        Command::List => {
            let mut s = String::from("name,crossings,components,pd\n");
            for e in &ctx.table {
                s.push_str(&format!("{},{},{},\"{}\"\n", e.name, e.diagram.n_crossings(), e.diagram.n_components(), e.pd));
            }
            ctx.emit(&s)
        }
        Command::Selftest => selftest(&ctx),
    }
}

fn selftest(ctx: &Ctx) -> Result<(), CliError> {
    let mut failures = 0;
    for e in ctx.table.iter().filter(|e| e.diagram.n_crossings() <= 8) {
        let naive = invariants::kh_table(&e.diagram, Backend::Naive, &ctx.config)?;
        let scan = invariants::kh_table(&e.diagram, Backend::Scan, &ctx.config)?;
        let jones = invariants::jones_via_kauffman(&e.diagram)?;
        let ok = naive.betti() == scan.betti() && naive.euler_characteristic() == jones;
        if !ok {
            failures += 1;
        }
        eprintln!("{} {}", if ok { "ok  " } else { "FAIL" }, e.name);
    }
    if failures > 0 {
        return Err(khbound_core::ComputeError::Invariant(format!("{failures} selftest failures")).into());
    }
    ctx.emit("selftest passed\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
