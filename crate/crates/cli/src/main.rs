mod config;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use citenv::centrality::betweenness_centrality;
use citenv::environment::{extract_environment, Direction, SeedEnvironment, DEFAULT_MIN_CONTRIBUTION};
use citenv::export::{export_dot, export_json, export_pajek, make_glyphs, report_table};
use citenv::ingest::{
    merge_indices, parse_citation_csv_from, parse_registry, sidecar_path, CitationMatrix, JournalId, SourceIndex,
};
use citenv::metrics::{
    h_index, impact_factor, quasi_impact_factor, self_citation_rate, ImpactRecord, Quotient, YearlyCounts,
};
use citenv::pipeline::{analyze, Analysis, LocalGraph, PipelineOptions};
use citenv::similarity::{
    similarity_graph_with, Axes, ProfileBasis, SimilarityGraph, SimilarityOptions, DEFAULT_COSINE_THRESHOLD,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use config::{Config, CONFIG_VAR, DATA_DIR_VAR};

/// Citation environments of journals: ingest JCR-style citation matrices,
/// extract a seed journal's environment, build cosine similarity graphs,
/// compute centralities and export networks and tables.
#[derive(Debug, Parser)]
#[command(name = "citenv", version)]
struct Cli {
    /// TOML file presetting flags (default: citenv.toml in the data directory).
    #[arg(long, global = true, env = CONFIG_VAR)]
    config: Option<PathBuf>,

    /// Directory searched for relative input paths not found in the working directory.
    #[arg(long, global = true, env = DATA_DIR_VAR)]
    data_dir: Option<PathBuf>,

    /// Census year for edge lists that have no metadata sidecar.
    #[arg(long, global = true)]
    year: Option<i32>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a `citing,cited,count` edge list into a matrix with a metadata sidecar.
    Ingest {
        edges: PathBuf,
        /// Index the journals are drawn from.
        #[arg(long, default_value = "SCI")]
        index: SourceIndex,
        /// `id,display_name,source_index` file with journal metadata.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Combine two same-year matrices, summing overlapping counts.
    Merge { left: PathBuf, right: PathBuf },
    /// List the members of a seed journal's citation environment.
    Env {
        #[command(flatten)]
        env: EnvArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Cosine similarity graph of an environment.
    Sim {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Degree, closeness, betweenness and eigenvector centrality per member.
    Centrality {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Impact factor, h-index and self-citation indicators.
    Metrics {
        #[command(subcommand)]
        metric: Metric,
    },
    /// Export the similarity network with node glyphs.
    Export {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[command(flatten)]
        impact: ImpactArgs,
    },
    /// Centrality table sorted by local betweenness.
    Report {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[command(flatten)]
        impact: ImpactArgs,
    },
}

#[derive(Debug, Subcommand)]
enum Metric {
    /// Impact factor from two-year citation and item counts.
    Impact {
        cites_t1: u64,
        cites_t2: u64,
        citable_t1: u64,
        citable_t2: u64,
        /// Self-citations to the two years; adds the quasi impact factor.
        #[arg(long, num_args = 2, value_names = ["T1", "T2"])]
        self_cites: Option<Vec<u64>>,
    },
    /// Impact and quasi impact factors from a JSON list of yearly counts.
    Yearly { counts: PathBuf },
    /// h-index of a list of per-item citation counts.
    HIndex { counts: Vec<u64> },
    /// Share of received citations that are self-citations.
    SelfCite {
        matrix: PathBuf,
        /// Only this journal (default: every journal receiving citations).
        #[arg(long)]
        journal: Option<String>,
    },
}

#[derive(Debug, Args)]
struct EnvArgs {
    matrix: PathBuf,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    direction: Option<Direction>,
    /// Minimum share of the seed's citations, exclusive.
    #[arg(long)]
    min_contrib: Option<f64>,
}

#[derive(Debug, Args)]
struct SimArgs {
    #[command(flatten)]
    env: EnvArgs,
    /// Edges need a cosine strictly above this value.
    #[arg(long)]
    cosine_threshold: Option<f64>,
    /// Profiles compared (default: the environment direction).
    #[arg(long)]
    basis: Option<ProfileBasis>,
    /// Lay profiles out over every journal instead of the members.
    #[arg(long)]
    full_axes: bool,
    /// Graph the local centralities are computed on.
    #[arg(long, value_enum)]
    local_graph: Option<LocalGraphArg>,
}

#[derive(Debug, Args)]
struct ImpactArgs {
    /// Impact factors: `journal,impact_factor` CSV, or a JSON list of
    /// yearly counts evaluated at the matrix year.
    #[arg(long)]
    impact: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pajek,
    Dot,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LocalGraphArg {
    Similarity,
    Citations,
}

impl From<LocalGraphArg> for LocalGraph {
    fn from(arg: LocalGraphArg) -> Self {
        match arg {
            LocalGraphArg::Similarity => LocalGraph::Similarity,
            LocalGraphArg::Citations => LocalGraph::Citations,
        }
    }
}

/// Flags merged with the config file; flags win.
struct Session {
    config: Config,
    data_dir: Option<PathBuf>,
    year: Option<i32>,
    out: Option<PathBuf>,
}

impl Session {
    fn new(cli: &Cli) -> Result<Self> {
        let config = Config::locate(cli.config.as_deref(), cli.data_dir.as_deref())?;
        Ok(Session {
            data_dir: cli.data_dir.clone().or_else(|| config.data_dir.clone()),
            year: cli.year.or(config.year),
            out: cli.out.clone(),
            config,
        })
    }

    /// `path` as given if it exists or is absolute, else under the data directory.
    fn input(&self, path: &Path) -> PathBuf {
        match &self.data_dir {
            Some(dir) if path.is_relative() && !path.exists() => dir.join(path),
            _ => path.to_owned(),
        }
    }

    fn load_matrix(&self, path: &Path) -> Result<CitationMatrix> {
        let path = self.input(path);
        if sidecar_path(&path).is_file() {
            return CitationMatrix::load(&path).with_context(|| format!("loading {}", path.display()));
        }
        let year = self
            .year
            .ok_or_else(|| anyhow!("{} has no metadata sidecar; pass --year", path.display()))?;
        let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
        parse_citation_csv_from(BufReader::new(file), year, SourceIndex::default())
            .with_context(|| format!("parsing {}", path.display()))
    }

    fn format(&self, flag: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
        let format = match (flag, &self.config.format) {
            (Some(f), _) => f,
            (None, Some(name)) => Format::from_str(name, true).map_err(|e| anyhow!("config format: {e}"))?,
            (None, None) => default,
        };
        if !allowed.contains(&format) {
            let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
            bail!(
                "format {} is not available here (use {})",
                format.name(),
                names.join(", ")
            );
        }
        Ok(format)
    }

    fn options(&self, args: &EnvArgs) -> Result<PipelineOptions> {
        let seed = args
            .seed
            .clone()
            .or_else(|| self.config.seed.clone())
            .ok_or_else(|| anyhow!("no seed journal (pass --seed or set seed in the config file)"))?;
        let mut options = PipelineOptions::new(JournalId::new(seed)?);
        options.direction = match (args.direction, &self.config.direction) {
            (Some(d), _) => d,
            (None, Some(s)) => s.parse().map_err(|e: String| anyhow!("config direction: {e}"))?,
            (None, None) => Direction::Cited,
        };
        options.min_contribution = args
            .min_contrib
            .or(self.config.min_contrib)
            .unwrap_or(DEFAULT_MIN_CONTRIBUTION);
        Ok(options)
    }

    fn sim_options(&self, args: &SimArgs) -> Result<PipelineOptions> {
        let mut options = self.options(&args.env)?;
        options.cosine_threshold = args
            .cosine_threshold
            .or(self.config.cosine_threshold)
            .unwrap_or(DEFAULT_COSINE_THRESHOLD);
        options.basis = match (args.basis, &self.config.basis) {
            (Some(b), _) => Some(b),
            (None, Some(s)) => Some(s.parse().map_err(|e: String| anyhow!("config basis: {e}"))?),
            (None, None) => None,
        };
        options.full_axes = args.full_axes || self.config.full_axes.unwrap_or(false);
        options.local_graph = match (args.local_graph, &self.config.local_graph) {
            (Some(g), _) => g.into(),
            (None, Some(s)) => LocalGraphArg::from_str(s, true)
                .map_err(|e| anyhow!("config local_graph: {e}"))?
                .into(),
            (None, None) => LocalGraph::Similarity,
        };
        Ok(options)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }

    fn impact_factors(&self, args: &ImpactArgs, year: i32) -> Result<BTreeMap<JournalId, f64>> {
        let Some(path) = &args.impact else {
            return Ok(BTreeMap::new());
        };
        let path = self.input(path);
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        if path.extension().is_some_and(|e| e == "json") {
            let counts: Vec<YearlyCounts> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            return counts
                .iter()
                .map(|c| {
                    let record = ImpactRecord::compute(c, year)?;
                    Ok((record.journal.clone(), record.if_f64()))
                })
                .collect();
        }
        let mut out = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (n == 0 && line.starts_with("journal,")) {
                continue;
            }
            let (journal, value) = line
                .split_once(',')
                .ok_or_else(|| anyhow!("{}:{}: expected journal,impact_factor", path.display(), n + 1))?;
            let value: f64 = value
                .trim()
                .parse()
                .with_context(|| format!("{}:{}: bad impact factor", path.display(), n + 1))?;
            out.insert(JournalId::new(journal.trim())?, value);
        }
        Ok(out)
    }
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Pajek => "pajek",
            Format::Dot => "dot",
            Format::Json => "json",
            Format::Table => "table",
        }
    }
}

fn environment_text(env: &SeedEnvironment, format: Format) -> Result<String> {
    let mut rows = Vec::new();
    for id in env.members() {
        let totals = env.totals(id)?;
        rows.push((
            id,
            env.link(id).unwrap_or(0),
            env.contribution(id).unwrap_or(0.0),
            totals,
        ));
    }
    if format == Format::Json {
        let members: Vec<_> = rows
            .iter()
            .map(|(id, link, share, totals)| {
                serde_json::json!({
                    "journal": id,
                    "link": link,
                    "contribution": share,
                    "gross": totals.gross,
                    "net_of_self": totals.net_of_self,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "seed": env.seed(),
            "direction": env.direction(),
            "threshold": env.threshold(),
            "seed_total": env.seed_total(),
            "members": members,
        });
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    let mut out = String::new();
    writeln!(
        out,
        "# seed {} ({}), total {}, members above {}%",
        env.seed(),
        env.direction(),
        env.seed_total(),
        env.threshold() * 100.0
    )?;
    writeln!(out, "# journal link share% gross net_of_self")?;
    let width = rows.iter().map(|r| r.0.as_str().len()).max().unwrap_or(0);
    for (id, link, share, totals) in rows {
        writeln!(
            out,
            "{:<width$}  {link}  {:.2}  {}  {}",
            id.as_str(),
            share * 100.0,
            totals.gross,
            totals.net_of_self
        )?;
    }
    Ok(out)
}

fn edge_table(g: &SimilarityGraph) -> String {
    let nodes = g.nodes();
    let mut out = format!("# cosine > {} on {} profiles\n", g.threshold(), g.basis());
    for e in g.edges() {
        writeln!(out, "{}  {}  {:.4}", nodes[e.source], nodes[e.target], e.weight).unwrap();
    }
    out
}

fn centrality_table(a: &Analysis) -> String {
    let mut out = format!(
        "# local: {}, global: {}, eigenvalue {:.6}\n# journal component degree in out closeness betweenness% eigenvector\n",
        a.report.local_basis, a.report.global_basis, a.report.eigenvalue
    );
    for n in &a.report.nodes {
        writeln!(
            out,
            "{}  {}  {}  {}  {}  {:.4}  {:.2}  {:.4}",
            n.journal,
            n.component,
            n.degree_local,
            n.degree_in,
            n.degree_out,
            n.closeness,
            n.betweenness * 100.0,
            n.eigenvector
        )
        .unwrap();
    }
    out
}

fn warn_about(g: &SimilarityGraph) {
    for w in g.warnings() {
        eprintln!("warning: {w}");
    }
}

fn quotient(q: Quotient) -> String {
    format!("{}/{} = {:.4}", q.numer(), q.denom(), q.to_f64().unwrap_or(f64::NAN))
}

fn run(cli: Cli) -> Result<()> {
    let cx = Session::new(&cli)?;
    match &cli.command {
        Command::Ingest { edges, index, registry } => {
            let path = cx.input(edges);
            let year = cx
                .year
                .ok_or_else(|| anyhow!("ingest needs --year (or year in the config file)"))?;
            let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            let mut matrix = parse_citation_csv_from(BufReader::new(file), year, *index)
                .with_context(|| format!("parsing {}", path.display()))?;
            if let Some(registry) = registry {
                let path = cx.input(registry);
                let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
                let journals =
                    parse_registry(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))?;
                matrix = matrix.with_registry(&journals);
            }
            save_or_print(&cx, &matrix)
        }
        Command::Merge { left, right } => {
            let merged = merge_indices(&cx.load_matrix(left)?, &cx.load_matrix(right)?)?;
            save_or_print(&cx, &merged)
        }
        Command::Env { env, format } => {
            let format = cx.format(*format, Format::Table, &[Format::Table, Format::Json])?;
            let options = cx.options(env)?;
            let matrix = cx.load_matrix(&env.matrix)?;
            let environment = extract_environment(&matrix, &options.seed, options.direction, options.min_contribution)?;
            cx.emit(&environment_text(&environment, format)?)
        }
        Command::Sim { sim, format } => {
            let format = cx.format(
                *format,
                Format::Table,
                &[Format::Table, Format::Pajek, Format::Dot, Format::Json],
            )?;
            let options = cx.sim_options(sim)?;
            let matrix = cx.load_matrix(&sim.env.matrix)?;
            let env = extract_environment(&matrix, &options.seed, options.direction, options.min_contribution)?;
            let graph = similarity_graph_with(
                &env,
                &SimilarityOptions {
                    threshold: options.cosine_threshold,
                    basis: options.basis,
                    axes: if options.full_axes {
                        Axes::Full(&matrix)
                    } else {
                        Axes::Members
                    },
                },
            )?;
            warn_about(&graph);
            let text = match format {
                Format::Table => edge_table(&graph),
                Format::Pajek => export_pajek(&graph, &make_glyphs(&env))?,
                Format::Dot => export_dot(&graph, &make_glyphs(&env))?,
                Format::Json => {
                    let g = graph.to_graph();
                    let doc = serde_json::json!({
                        "seed": env.seed(),
                        "threshold": graph.threshold(),
                        "basis": graph.basis(),
                        "nodes": graph.nodes(),
                        "edges": g.edges().iter().map(|&(i, j, w)| serde_json::json!([graph.nodes()[i], graph.nodes()[j], w])).collect::<Vec<_>>(),
                        "betweenness": betweenness_centrality(&g),
                    });
                    serde_json::to_string_pretty(&doc)? + "\n"
                }
            };
            cx.emit(&text)
        }
        Command::Centrality { sim, format } => {
            let format = cx.format(*format, Format::Table, &[Format::Table, Format::Json])?;
            let a = run_pipeline(&cx, sim)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&a.report)? + "\n",
                _ => centrality_table(&a),
            };
            cx.emit(&text)
        }
        Command::Metrics { metric } => cx.emit(&metric_text(&cx, metric)?),
        Command::Export { sim, format, impact } => {
            let format = cx.format(
                *format,
                Format::Pajek,
                &[Format::Pajek, Format::Dot, Format::Json, Format::Table],
            )?;
            let a = run_pipeline(&cx, sim)?;
            let text = match format {
                Format::Pajek => export_pajek(&a.graph, &a.glyphs)?,
                Format::Dot => export_dot(&a.graph, &a.glyphs)?,
                Format::Json => export_json(&a.graph, &a.glyphs, &a.report)?,
                Format::Table => {
                    let year = a.environment.submatrix().year();
                    report_table(&a.environment, &a.report, &cx.impact_factors(impact, year)?)?
                }
            };
            cx.emit(&text)
        }
        Command::Report { sim, format, impact } => {
            let format = cx.format(*format, Format::Table, &[Format::Table, Format::Json])?;
            let a = run_pipeline(&cx, sim)?;
            let text = match format {
                Format::Json => export_json(&a.graph, &a.glyphs, &a.report)?,
                _ => {
                    let year = a.environment.submatrix().year();
                    report_table(&a.environment, &a.report, &cx.impact_factors(impact, year)?)?
                }
            };
            cx.emit(&text)
        }
    }
}

fn run_pipeline(cx: &Session, sim: &SimArgs) -> Result<Analysis> {
    let options = cx.sim_options(sim)?;
    let matrix = cx.load_matrix(&sim.env.matrix)?;
    let a = analyze(&matrix, &options)?;
    warn_about(&a.graph);
    Ok(a)
}

fn save_or_print(cx: &Session, matrix: &CitationMatrix) -> Result<()> {
    match &cx.out {
        Some(path) => {
            matrix
                .save(path)
                .with_context(|| format!("writing {}", path.display()))?;
            println!(
                "{}: {} journals, {} cells, {} citations (year {})",
                path.display(),
                matrix.len(),
                matrix.cell_count(),
                matrix.total(),
                matrix.year()
            );
            Ok(())
        }
        None => cx.emit(&matrix.to_csv_string()),
    }
}

fn metric_text(cx: &Session, metric: &Metric) -> Result<String> {
    let mut out = String::new();
    match metric {
        Metric::Impact {
            cites_t1,
            cites_t2,
            citable_t1,
            citable_t2,
            self_cites,
        } => {
            let jif = impact_factor(*cites_t1, *cites_t2, *citable_t1, *citable_t2)?;
            writeln!(out, "impact_factor  {}", quotient(jif))?;
            if let Some(s) = self_cites {
                let quasi = quasi_impact_factor(*cites_t1, *cites_t2, *citable_t1, *citable_t2, s[0], s[1])?;
                writeln!(out, "quasi_impact_factor  {}", quotient(quasi))?;
            }
        }
        Metric::Yearly { counts } => {
            let year = cx.year.ok_or_else(|| anyhow!("metrics yearly needs --year"))?;
            let path = cx.input(counts);
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let counts: Vec<YearlyCounts> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            writeln!(out, "# journal impact_factor quasi_impact_factor ({year})")?;
            for c in &counts {
                let r = ImpactRecord::compute(c, year)?;
                writeln!(out, "{}  {:.2}  {:.2}", r.journal, r.if_f64(), r.quasi_if_f64())?;
            }
        }
        Metric::HIndex { counts } => writeln!(out, "{}", h_index(counts))?,
        Metric::SelfCite { matrix, journal } => {
            let m = cx.load_matrix(matrix)?;
            let ids: Vec<JournalId> = match journal {
                Some(j) => vec![JournalId::new(j.as_str())?],
                None => m
                    .journal_ids()
                    .filter(|id| m.totals(id).is_ok_and(|t| t.cited > 0))
                    .cloned()
                    .collect(),
            };
            for id in ids {
                writeln!(out, "{id}  {:.4}", self_citation_rate(&m, &id)?)?;
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
