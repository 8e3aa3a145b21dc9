use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use likemind::error::{CliError, Result};
use likemind::output::{self, PartitionRecord, StatsRecord, SweepOutputs};
use likemind::{fixture, harness, io, similarity};
use likemind_core::pipeline::{
    build_celebrity_vectors, build_interest_vectors, build_rating_vectors, celebrity_split, follows_pipeline,
    ratings_pipeline, FilterConfig, ItemIndex,
};
use likemind_core::stats::degree_histogram;
use likemind_core::sweep::{max_modularity_report, AlgorithmCode, SimSources, SweepConfig, VectorChoice};
use likemind_core::{
    homophily_ratio, like_mindedness, matrix_cosine, modularity, network_stats, BehavioralMatrix, Graph,
    ModularityVariant, SimMatrix, VectorKind,
};
use log::{info, warn};

#[derive(Parser)]
#[command(name = "likemind", version, about = "Community detection with structural and behavioral criteria")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print network statistics, plus homophily when vectors are given.
    Stats(StatsArgs),
    /// Filter ratings/follows tables into a graph and behavioral vectors.
    Filter(FilterArgs),
    /// Build one kind of behavioral vector for the nodes of a graph.
    Vectors(VectorsArgs),
    /// Run one algorithm and write its partition.
    Detect(DetectArgs),
    /// Run several algorithms over all community counts and write metrics and plots.
    Sweep(SweepArgs),
    /// Summarize the highest modularity per algorithm from a metrics file.
    Report(ReportArgs),
    /// Generate a synthetic dataset with planted communities.
    Fixture(FixtureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Rating,
    Interest,
    Celebrity,
}

impl From<KindArg> for VectorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Rating => VectorKind::Rating,
            KindArg::Interest => VectorKind::Interest,
            KindArg::Celebrity => VectorKind::Celebrity,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Newman,
    #[value(alias = "paper_literal", alias = "paper-literal")]
    Literal,
}

impl From<VariantArg> for ModularityVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Newman => ModularityVariant::Newman,
            VariantArg::Literal => ModularityVariant::Literal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkageArg {
    Single,
    Average,
    Complete,
}

#[derive(Args)]
struct VectorFiles {
    #[arg(long, value_name = "FILE")]
    rating_vectors: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    interest_vectors: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    celebrity_vectors: Option<PathBuf>,
    /// Primary vectors: used by unsuffixed codes and for like-mindedness.
    /// Defaults to the first supplied of rating, interest, celebrity.
    #[arg(long, value_enum)]
    vectors: Option<KindArg>,
    /// Directory for cached similarity matrices.
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Worker threads for similarity computation and sweeps.
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    vectors: VectorFiles,
    /// Write stats.txt and stats.json here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Thresholds {
    /// key=value file with any of the threshold names below.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    movie_max_popularity: Option<usize>,
    #[arg(long)]
    min_ratings: Option<usize>,
    #[arg(long)]
    min_friends: Option<usize>,
    #[arg(long)]
    celeb_threshold: Option<usize>,
    #[arg(long)]
    min_noncelebrity_friends: Option<usize>,
}

impl Thresholds {
    fn resolve(&self) -> Result<FilterConfig> {
        let mut config = FilterConfig::default();
        if let Some(path) = &self.config {
            io::load_filter_config(path, &mut config)?;
        }
        let overrides = [
            ("movie_max_popularity", self.movie_max_popularity),
            ("min_ratings", self.min_ratings),
            ("min_friends", self.min_friends),
            ("celeb_threshold", self.celeb_threshold),
            ("min_noncelebrity_friends", self.min_noncelebrity_friends),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                config.set(key, v);
            }
        }
        Ok(config)
    }
}

#[derive(Args)]
struct FilterArgs {
    /// Ratings TSV. Without it the follow table is filtered by celebrity status.
    #[arg(long)]
    ratings: Option<PathBuf>,
    #[arg(long)]
    follows: PathBuf,
    #[command(flatten)]
    thresholds: Thresholds,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VectorsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    vectors: KindArg,
    /// Source for rating and interest vectors.
    #[arg(long)]
    ratings: Option<PathBuf>,
    /// Source for celebrity vectors.
    #[arg(long)]
    follows: Option<PathBuf>,
    /// Users with more followers than this are celebrities.
    #[arg(long, default_value_t = FilterConfig::default().celeb_threshold)]
    celeb_threshold: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    vectors: VectorFiles,
    /// Algorithm code: LMM, L, ML, GN, S, A, C, optionally suffixed S or R.
    #[arg(long, conflicts_with = "linkage")]
    algorithm: Option<String>,
    /// Hierarchical clustering with this linkage on the primary vectors.
    #[arg(long, value_enum)]
    linkage: Option<LinkageArg>,
    /// Community count to cut a hierarchy at; default is the best-modularity level.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "newman")]
    modularity_variant: VariantArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    vectors: VectorFiles,
    /// Comma-separated codes; default is every code whose inputs are available.
    #[arg(long)]
    algorithms: Option<String>,
    #[arg(long, value_enum, default_value = "newman")]
    modularity_variant: VariantArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    metrics: PathBuf,
    /// Also write max_modularity.csv and the plots here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureKind {
    Ratings,
    Follows,
}

#[derive(Args)]
struct FixtureArgs {
    #[arg(long, value_enum)]
    kind: FixtureKind,
    /// Seed for the generator.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    users: Option<usize>,
    #[arg(long)]
    communities: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Stats(a) => stats(a),
        Command::Filter(a) => filter(a),
        Command::Vectors(a) => vectors(a),
        Command::Detect(a) => detect(a),
        Command::Sweep(a) => sweep(a),
        Command::Report(a) => report(a),
        Command::Fixture(a) => make_fixture(a),
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Loaded vector files and their similarity matrices, keyed by kind.
struct Behavior {
    sims: BTreeMap<&'static str, SimMatrix>,
    primary: Option<&'static str>,
}

impl Behavior {
    fn load(files: &VectorFiles, g: &Graph) -> Result<Self> {
        let mut sims = BTreeMap::new();
        let mut order = Vec::new();
        for (kind, path) in [
            (VectorKind::Rating, &files.rating_vectors),
            (VectorKind::Interest, &files.interest_vectors),
            (VectorKind::Celebrity, &files.celebrity_vectors),
        ] {
            let Some(path) = path else { continue };
            let m: BehavioralMatrix = io::load_vectors(path, g)?;
            if m.kind() != kind {
                return Err(CliError::Data(format!(
                    "{}: holds {} vectors, expected {}",
                    path.display(),
                    m.kind().as_str(),
                    kind.as_str()
                )));
            }
            let started = std::time::Instant::now();
            let s = similarity::similarity_with_cache(&m, files.cache.as_deref(), files.threads)?;
            info!("{} similarities ready in {:.3}s", kind.as_str(), started.elapsed().as_secs_f64());
            sims.insert(kind.as_str(), s);
            order.push(kind.as_str());
        }
        let primary = match files.vectors {
            Some(k) => {
                let name = VectorKind::from(k).as_str();
                if !sims.contains_key(name) {
                    return Err(CliError::Usage(format!("--vectors {name} needs --{name}-vectors")));
                }
                Some(name)
            }
            None => order.first().copied(),
        };
        Ok(Behavior { sims, primary })
    }

    fn primary(&self) -> Option<&SimMatrix> {
        self.primary.map(|k| &self.sims[k])
    }

    fn sources(&self) -> Option<SimSources<'_>> {
        Some(SimSources {
            primary: self.primary()?,
            interest: self.sims.get("interest"),
            rating: self.sims.get("rating"),
        })
    }
}

fn stats_record(g: &Graph, s: Option<&SimMatrix>) -> StatsRecord {
    let homophily = s.and_then(|s| match homophily_ratio(g, s) {
        Ok(h) => Some(h),
        Err(e) => {
            warn!("homophily ratio undefined: {e}");
            None
        }
    });
    StatsRecord::new(&network_stats(g), homophily, degree_histogram(g))
}

fn stats(a: StatsArgs) -> Result<()> {
    let g = io::load_edge_list(&a.graph)?;
    let behavior = Behavior::load(&a.vectors, &g)?;
    let record = stats_record(&g, behavior.primary());
    print!("{}", output::stats_text(&record));
    if let (Some(r), Some(i)) = (behavior.sims.get("rating"), behavior.sims.get("interest")) {
        println!("Rating/interest similarity agreement  {:.4}", matrix_cosine(r, i)?);
    }
    if let Some(out) = a.out {
        create_dir(&out)?;
        output::write_text(&out.join("stats.txt"), &output::stats_text(&record))?;
        let json = serde_json::to_string_pretty(&record).expect("stats serialize") + "\n";
        output::write_text(&out.join("stats.json"), &json)?;
    }
    Ok(())
}

fn filter(a: FilterArgs) -> Result<()> {
    let config = a.thresholds.resolve()?;
    let follows = io::load_follows(&a.follows)?;
    create_dir(&a.out)?;
    let labels: Vec<String>;
    let graph;
    match &a.ratings {
        Some(path) => {
            let ratings = io::load_ratings(path)?;
            let d = ratings_pipeline(&ratings, &follows, &config)?;
            labels = d.graph.labels().names().to_vec();
            io::save_vectors(&d.rating_vectors, &labels, &a.out.join("rating_vectors.tsv"))?;
            io::save_vectors(&d.interest_vectors, &labels, &a.out.join("interest_vectors.tsv"))?;
            output::write_text(&a.out.join("items.txt"), &(d.items.items().join("\n") + "\n"))?;
            let f = io::create(&a.out.join("filtered_ratings.tsv"))?;
            io::write_ratings(&d.ratings, f).map_err(|e| CliError::io(a.out.join("filtered_ratings.tsv"), e))?;
            graph = d.graph;
        }
        None => {
            let d = follows_pipeline(&follows, &config)?;
            labels = d.graph.labels().names().to_vec();
            io::save_vectors(&d.celebrity_vectors, &labels, &a.out.join("celebrity_vectors.tsv"))?;
            output::write_text(&a.out.join("celebrities.txt"), &(d.celebrities.items().join("\n") + "\n"))?;
            graph = d.graph;
        }
    }
    io::save_edge_list(&graph, &a.out.join("graph.tsv"))?;
    let record = stats_record(&graph, None);
    output::write_text(&a.out.join("stats.txt"), &output::stats_text(&record))?;
    println!("kept {} users, {} friendships", graph.node_count(), graph.edge_count());
    Ok(())
}

fn vectors(a: VectorsArgs) -> Result<()> {
    let g = io::load_edge_list(&a.graph)?;
    let users = g.labels().names();
    let kind = VectorKind::from(a.vectors);
    let build = match kind {
        VectorKind::Rating | VectorKind::Interest => {
            let path = a.ratings.as_ref().ok_or_else(|| CliError::Usage(format!("--vectors {} needs --ratings", kind.as_str())))?;
            let ratings = io::load_ratings(path)?;
            let index = ItemIndex::from_ratings(&ratings);
            if kind == VectorKind::Rating {
                build_rating_vectors(&ratings, &index, users)?
            } else {
                build_interest_vectors(&ratings, &index, users)?
            }
        }
        VectorKind::Celebrity => {
            let path = a.follows.as_ref().ok_or_else(|| CliError::Usage("--vectors celebrity needs --follows".into()))?;
            let follows = io::load_follows(path)?;
            let (celebs, _) = celebrity_split(&follows, a.celeb_threshold, 1)?;
            let index = ItemIndex::from_labels(celebs.iter().map(String::as_str));
            build_celebrity_vectors(&follows, &index, users)?
        }
    };
    if !build.missing_users.is_empty() {
        warn!("{} graph nodes have no data and get all-zero vectors", build.missing_users.len());
    }
    io::save_vectors(&build.matrix, users, &a.out)?;
    println!("wrote {} {} vectors of dimension {}", build.matrix.len(), kind.as_str(), build.matrix.dimension());
    Ok(())
}

fn resolve_code(a: &DetectArgs) -> Result<AlgorithmCode> {
    match (&a.algorithm, a.linkage) {
        (Some(code), _) => Ok(AlgorithmCode::parse(code)?),
        (None, Some(l)) => Ok(AlgorithmCode::parse(match l {
            LinkageArg::Single => "S",
            LinkageArg::Average => "A",
            LinkageArg::Complete => "C",
        })?),
        (None, None) => Err(CliError::Usage("give --algorithm or --linkage".into())),
    }
}

fn no_vectors(code: AlgorithmCode) -> CliError {
    CliError::Usage(format!("algorithm {code} needs behavioral vectors; pass --rating-vectors, --interest-vectors or --celebrity-vectors"))
}

fn detect(a: DetectArgs) -> Result<()> {
    let code = resolve_code(&a)?;
    let g = io::load_edge_list(&a.graph)?;
    let behavior = Behavior::load(&a.vectors, &g)?;
    // Structural codes still report like-mindedness when vectors exist.
    let fallback;
    let sims = match behavior.sources() {
        Some(s) => s,
        None if !code.uses_vectors() => {
            fallback = SimMatrix::from_fn(g.node_count(), |_, _| 0.0)?;
            SimSources::primary(&fallback)
        }
        None => return Err(no_vectors(code)),
    };
    let config = SweepConfig { variant: a.modularity_variant.into() };
    let run = likemind_core::sweep::run_algorithm(code, &g, &sims, config)?;
    let partition = match (a.k, &run.dendrogram) {
        (Some(k), Some(d)) => d.cut(k)?,
        (Some(_), None) => return Err(CliError::Usage(format!("--k applies to hierarchical algorithms, not {code}"))),
        (None, _) => run.partition.clone(),
    };
    let mut record = PartitionRecord::new(code.as_str(), &g, &partition);
    record.modularity_newman = Some(modularity(&g, &partition, ModularityVariant::Newman)?);
    record.modularity_literal = Some(modularity(&g, &partition, ModularityVariant::Literal)?);
    if behavior.primary.is_some() {
        record.like_mindedness = Some(like_mindedness(sims.primary, &partition)?);
    }
    let dir = a.out.join("partitions");
    create_dir(&dir)?;
    output::write_text(&dir.join(format!("{code}.json")), &output::partition_json(&record))?;
    if let Some(d) = &run.dendrogram {
        let dir = a.out.join("dendrograms");
        create_dir(&dir)?;
        output::write_text(&dir.join(format!("{code}.txt")), &output::dendrogram_text(d, &g))?;
    }
    println!(
        "{code}: k={} modularity_newman={:.6} modularity_literal={:.6}{}",
        record.k,
        record.modularity_newman.unwrap(),
        record.modularity_literal.unwrap(),
        record.like_mindedness.map(|l| format!(" like_mindedness={l:.6}")).unwrap_or_default()
    );
    Ok(())
}

fn default_codes(behavior: &Behavior) -> Vec<AlgorithmCode> {
    AlgorithmCode::all()
        .filter(|c| match c.vectors() {
            VectorChoice::Primary => behavior.primary.is_some(),
            VectorChoice::Interest => behavior.sims.contains_key("interest") && behavior.primary != Some("interest"),
            VectorChoice::Rating => behavior.sims.contains_key("rating") && behavior.primary != Some("rating"),
        })
        .collect()
}

fn sweep(a: SweepArgs) -> Result<()> {
    let g = io::load_edge_list(&a.graph)?;
    let behavior = Behavior::load(&a.vectors, &g)?;
    let codes = match &a.algorithms {
        Some(list) => AlgorithmCode::parse_list(list)?,
        None => default_codes(&behavior),
    };
    if codes.is_empty() {
        return Err(CliError::Usage("no algorithms to run; sweeps need behavioral vectors".into()));
    }
    let Some(sims) = behavior.sources() else {
        return Err(CliError::Usage("sweeps need behavioral vectors to score like-mindedness".into()));
    };
    for &code in &codes {
        sims.select(code)?;
    }
    let config = SweepConfig { variant: a.modularity_variant.into() };
    let runs = harness::run_all(&g, &sims, &codes, config, a.vectors.threads)?;
    let series = harness::series(&runs);
    let partitions: Vec<PartitionRecord> = runs
        .iter()
        .map(|r| {
            let mut rec = PartitionRecord::new(r.code.as_str(), &g, &r.partition);
            let row = r.rows.iter().find(|row| row.k == r.partition.community_count());
            rec.modularity_newman = row.map(|x| x.modularity_newman);
            rec.modularity_literal = row.map(|x| x.modularity_literal);
            rec.like_mindedness = row.map(|x| x.like_mindedness);
            rec
        })
        .collect();
    let dendrograms: Vec<(String, String)> = runs
        .iter()
        .filter_map(|r| r.dendrogram.as_ref().map(|d| (r.code.as_str().to_string(), output::dendrogram_text(d, &g))))
        .collect();
    let stats = stats_record(&g, Some(sims.primary));
    output::emit_outputs(
        &a.out,
        &SweepOutputs { series: &series, stats: Some(&stats), partitions: &partitions, dendrograms: &dendrograms },
    )?;
    print!("{}", output::max_modularity_table(&max_modularity_report(&series)));
    Ok(())
}

fn report(a: ReportArgs) -> Result<()> {
    let text = std::fs::read_to_string(&a.metrics).map_err(|e| CliError::io(&a.metrics, e))?;
    let series = output::parse_metrics_csv(&text, &a.metrics)?;
    if series.rows.is_empty() {
        return Err(CliError::Data(format!("{}: no metric rows", a.metrics.display())));
    }
    let report = max_modularity_report(&series);
    print!("{}", output::max_modularity_table(&report));
    if let Some(out) = a.out {
        create_dir(&out)?;
        output::write_text(&out.join("max_modularity.csv"), &output::max_modularity_csv(&report))?;
        output::write_plots(&out, &series)?;
    }
    Ok(())
}

fn make_fixture(a: FixtureArgs) -> Result<()> {
    create_dir(&a.out)?;
    let write = |name: &str, f: &dyn Fn(&mut dyn std::io::Write) -> std::io::Result<()>| -> Result<()> {
        let path = a.out.join(name);
        let mut w = io::create(&path)?;
        f(&mut w).map_err(|e| CliError::io(&path, e))
    };
    match a.kind {
        FixtureKind::Ratings => {
            let mut p = fixture::RatingsParams::default();
            p.social.users = a.users.unwrap_or(p.social.users);
            p.social.communities = a.communities.unwrap_or(p.social.communities).max(1);
            let (ratings, follows) = fixture::ratings_dataset(a.seed, &p);
            write("ratings.tsv", &|w| io::write_ratings(&ratings, w))?;
            write("follows.tsv", &|w| io::write_follows(&follows, w))?;
            println!("wrote {} ratings and {} follows", ratings.len(), follows.len());
        }
        FixtureKind::Follows => {
            let mut p = fixture::FollowsParams::default();
            p.social.users = a.users.unwrap_or(p.social.users);
            p.social.communities = a.communities.unwrap_or(p.social.communities).max(1);
            let follows = fixture::follows_dataset(a.seed, &p);
            write("follows.tsv", &|w| io::write_follows(&follows, w))?;
            println!("wrote {} follows", follows.len());
        }
    }
    Ok(())
}
