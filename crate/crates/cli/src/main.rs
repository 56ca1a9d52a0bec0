use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use germforge::linkknot::{
    compare_links, link_curve, reduced_diagram, svg::render_svg, LinkComparison, LinkConfig,
};
use germforge::lojestimate::EstimatorConfig;
use germforge::parse::{parse_map, parse_rational, uses_parameter};
use germforge::polycore::PolyMap;
use germforge::report::{analyze, AnalysisOptions, AnalysisReport, Sections, SCHEMA};

const DEFAULT_EPSILON: f64 = 0.3;

#[derive(Parser)]
#[command(
    name = "germforge",
    version,
    about = "Invariants of polynomial map germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: corank, delta, exponents, determinacy, regularity, and
    /// the link when --epsilon is given.
    Analyze(MapArgs),
    /// Lojasiewicz-type exponents only.
    Exponent(MapArgs),
    /// Dimension of the double point quotient only.
    Delta(MapArgs),
    /// Link knot of a (2, 4) germ.
    Link(MapArgs),
    /// Compare the link sections of two reports.
    Compare(CompareArgs),
    /// C0 determinacy degree of a (2, 4) germ.
    Determinacy(MapArgs),
}

#[derive(Args, Clone)]
struct MapArgs {
    /// Map file, or the map text itself.
    #[arg(long)]
    map: String,
    /// Parameter values, comma separated ("1", "0,1", "1/2").
    #[arg(long)]
    t: Option<String>,
    /// Seed; falls back to GERMFORGE_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest truncation degree for delta.
    #[arg(long, default_value_t = germforge::localalgebra::DEFAULT_N_MAX)]
    nmax: u32,
    /// Link radius.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Radius schedule r0:rho:K.
    #[arg(long)]
    radii: Option<String>,
    /// Multistart count per radius.
    #[arg(long)]
    starts: Option<usize>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG path for the knot diagram.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn seed(args: &MapArgs) -> Result<u64> {
    if let Some(s) = args.seed {
        return Ok(s);
    }
    match std::env::var("GERMFORGE_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("GERMFORGE_SEED={v:?} is not an integer")),
        Err(_) => Ok(0),
    }
}

fn estimator(args: &MapArgs) -> Result<EstimatorConfig> {
    let mut cfg = EstimatorConfig::with_seed(seed(args)?);
    if let Some(r) = &args.radii {
        let parts: Vec<&str> = r.split(':').collect();
        let [r0, rho, k] = parts[..] else {
            bail!("--radii expects r0:rho:K, got {r:?}");
        };
        cfg.r0 = r0.parse().with_context(|| format!("bad r0 {r0:?}"))?;
        cfg.rho = rho.parse().with_context(|| format!("bad rho {rho:?}"))?;
        cfg.k = k.parse().with_context(|| format!("bad K {k:?}"))?;
    }
    if let Some(s) = args.starts {
        cfg.starts = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn map_text(source: &str) -> Result<String> {
    let path = Path::new(source);
    if path.is_file() {
        return fs::read_to_string(path).with_context(|| format!("reading {source}"));
    }
    if source.contains('=') {
        return Ok(source.to_string());
    }
    bail!("no map file {source:?}")
}

/// One parsed map per requested parameter value.
fn maps(args: &MapArgs) -> Result<Vec<(PolyMap, BTreeMap<String, String>)>> {
    let text = map_text(&args.map)?;
    let values: Vec<String> = match &args.t {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => Vec::new(),
    };
    if values.is_empty() {
        if uses_parameter(&text)? {
            bail!("the map uses t; pass --t");
        }
        return Ok(vec![(parse_map(&text, None)?, BTreeMap::new())]);
    }
    values
        .iter()
        .map(|v| {
            let t = parse_rational(v)?;
            let mut params = BTreeMap::new();
            params.insert("t".to_string(), t.to_string());
            Ok((parse_map(&text, Some(&t))?, params))
        })
        .collect()
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summary(r: &AnalysisReport) -> String {
    let mut parts = vec![format!("corank {}", r.corank.value)];
    if !r.input.parameters.is_empty() {
        let p: Vec<String> = r
            .input
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        parts.insert(0, p.join(" "));
    }
    if let Some(d) = &r.delta {
        match (&d.value, &d.lower_bound) {
            (Some(v), _) => parts.push(format!("delta {}", v.value)),
            (_, Some(lb)) => parts.push(format!(
                "delta unstabilized (>= {} at N={})",
                lb.value, d.n_max
            )),
            _ => {}
        }
    }
    let ex = &r.exponents;
    for (name, e) in [
        ("isolated", &ex.isolated_singularity),
        ("double point", &ex.double_point),
        ("gradient", &ex.gradient),
    ] {
        if let Some(e) = e {
            let bound = e
                .arc_lower_bound
                .as_ref()
                .map_or("-".to_string(), |b| b.value.clone());
            parts.push(format!(
                "{name} {} (arc {bound}, {})",
                e.fitted_alpha.value, e.verdict.value
            ));
        }
    }
    if let Some(d) = &r.determinacy {
        parts.push(format!(
            "k {}{}",
            d.k.value,
            if d.rigorous { " rigorous" } else { "" }
        ));
    }
    if let Some(g) = &r.regularity {
        parts.push(g.classification.value.clone());
    }
    if let Some(l) = &r.link {
        parts.push(format!(
            "{} crossings, alexander {}",
            l.crossing_count.value, l.alexander.value
        ));
    }
    for w in &r.meta.warnings {
        parts.push(format!("warning: {w}"));
    }
    parts.join("; ")
}

fn run_map_command(args: &MapArgs, sections: Sections, link_default: bool) -> Result<()> {
    let cfg = estimator(args)?;
    let epsilon = match (args.epsilon, link_default) {
        (Some(e), _) => Some(e),
        (None, true) => Some(DEFAULT_EPSILON),
        (None, false) => None,
    };
    if let Some(e) = epsilon {
        if !(e > 0.0) {
            bail!("--epsilon must be positive");
        }
    }
    let maps = maps(args)?;
    let mut reports = Vec::new();
    for (f, params) in &maps {
        let mut opts = AnalysisOptions::new(cfg.clone());
        opts.n_max = args.nmax;
        opts.epsilon = epsilon;
        opts.parameters = params.clone();
        opts.sections = sections;
        reports.push(analyze(f, &opts));
    }
    if let (Some(path), Some(eps)) = (&args.svg, epsilon) {
        let (f, _) = &maps[0];
        let link = link_curve(f, eps)?;
        let d = reduced_diagram(
            &link,
            &LinkConfig {
                seed: cfg.seed,
                ..Default::default()
            },
        )?;
        let g = d
            .geometry
            .as_ref()
            .expect("projected diagrams carry geometry");
        fs::write(path, render_svg(g)).with_context(|| format!("writing {}", path.display()))?;
    }
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        let mut s = serde_json::to_string_pretty(&reports)?;
        s.push('\n');
        s
    };
    write_output(args.out.as_deref(), &json)?;
    if args.out.is_some() {
        for r in &reports {
            println!("{}", summary(r));
        }
    }
    Ok(())
}

fn read_report(path: &Path) -> Result<AnalysisReport> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AnalysisReport::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run_compare(args: &CompareArgs) -> Result<()> {
    let a = read_report(&args.a)?;
    let b = read_report(&args.b)?;
    let cmp = compare_links(&a, &b)?;
    let (verdict, invariant) = match &cmp {
        LinkComparison::Distinguished(inv) => ("distinguished", Some(inv.clone())),
        LinkComparison::Consistent => ("consistent", None),
    };
    let doc = serde_json::json!({
        "schema": SCHEMA,
        "comparison": verdict,
        "invariant": invariant,
    });
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    if let Some(p) = &args.out {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    match cmp {
        LinkComparison::Distinguished(inv) => println!("Distinguished ({inv})"),
        LinkComparison::Consistent => println!("Consistent"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let only = |f: fn(&mut Sections)| {
        let mut s = Sections::NONE;
        f(&mut s);
        s
    };
    match &cli.command {
        Command::Analyze(a) => run_map_command(a, Sections::ALL, false),
        Command::Exponent(a) => run_map_command(a, only(|s| s.exponents = true), false),
        Command::Delta(a) => run_map_command(a, only(|s| s.delta = true), false),
        Command::Link(a) => run_map_command(a, only(|s| s.link = true), true),
        Command::Determinacy(a) => run_map_command(a, only(|s| s.determinacy = true), false),
        Command::Compare(c) => run_compare(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
