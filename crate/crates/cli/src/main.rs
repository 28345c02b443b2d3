//! Command-line front end: classification, detection, construction,
//! threshold search, and verification suites over edge-colored complete
//! graphs.
//!
//! Exit codes: 0 for success (claim holds / value computed / embedding
//! found), 2 for a semantically negative result (rainbow witness, absent
//! embedding, failed suite, bracket instead of a value), 1 for errors.

mod cache;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gallai_core::classify;
use gallai_core::coloring::EdgeColoring;
use gallai_core::construct::{self, Construction, InnerColoring};
use gallai_core::detect::{
    contains_connected_super, find_mono_embedding, find_rainbow_path, PackingSpec,
};
use gallai_core::pattern::Pattern;
use gallai_core::search::{compute_number, RamseyQuery, RamseyValue, SearchLimits};
use gallai_core::suites;

#[derive(Parser)]
#[command(name = "gallai", version, about = "Edge-colored complete graphs: structure, detection, constructions, and exact small-scale Ramsey search")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a coloring against the rainbow-path structure cases
    Classify(ClassifyArgs),
    /// Search a coloring for rainbow paths, monochromatic patterns, or
    /// connected packings
    Detect(DetectArgs),
    /// Emit a generated coloring and validate its claims
    Construct(ConstructArgs),
    /// Compute a multicolor Ramsey threshold
    Ramsey(RamseyArgs),
    /// Compute a two-set red/blue Ramsey threshold
    SetRamsey(SetRamseyArgs),
    /// Compute a rainbow-path versus monochromatic-target threshold
    Gallai(GallaiArgs),
    /// Run a named verification suite ("all" for the full battery)
    Verify(VerifyArgs),
    /// Re-serialize a coloring file (cg1, DOT, or JSON)
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    P4,
    P5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Cg1,
    Dot,
    Json,
}

#[derive(Args)]
struct ClassifyArgs {
    /// input coloring file ("-" for stdin)
    #[arg(long = "in")]
    input: String,
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    /// report every matching case, not just the first
    #[arg(long)]
    all_cases: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    /// input coloring file ("-" for stdin)
    #[arg(long = "in")]
    input: String,
    /// rainbow path target, e.g. P5
    #[arg(long)]
    rainbow: Option<String>,
    /// monochromatic pattern expression, e.g. 2K3
    #[arg(long)]
    mono: Option<String>,
    /// connected packing target as <expr>:<multiplicity>, e.g. C5:2
    #[arg(long)]
    csuper: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    /// preset name; `list` prints the available presets
    preset: String,
    /// copies parameter for block presets
    #[arg(long)]
    m: Option<usize>,
    /// matching-size parameter for two-block presets
    #[arg(long)]
    n: Option<usize>,
    /// raw block orders (three-block: two equal blocks of A plus one of B)
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// raw orders for the two-block generator
    #[arg(long)]
    order1: Option<usize>,
    #[arg(long)]
    order2: Option<usize>,
    /// raw part order for the cyclic generator
    #[arg(long)]
    part_order: Option<usize>,
    /// base pattern for generic presets
    #[arg(long)]
    base: Option<String>,
    /// parts for the dominant-structure generator, e.g. 3:2,3:3,2:4
    #[arg(long)]
    parts: Option<String>,
    /// inner coloring for the dominant-structure generator
    #[arg(long, default_value = "own")]
    inner: String,
    #[arg(long, value_enum, default_value = "cg1")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchCommon {
    #[arg(long, default_value_t = 2)]
    min_n: usize,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = 100_000_000)]
    node_budget: u64,
    /// skip the on-disk result cache
    #[arg(long)]
    no_cache: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RamseyArgs {
    /// number of colors
    #[arg(long)]
    k: usize,
    /// target pattern expression
    #[arg(long = "H")]
    target: String,
    /// disjoint copies of the target required
    #[arg(long, default_value_t = 1)]
    multiplicity: usize,
    /// require the copies inside one connected monochromatic subgraph
    #[arg(long)]
    csuper: bool,
    #[command(flatten)]
    common: SearchCommon,
}

#[derive(Args)]
struct SetRamseyArgs {
    /// red target as <expr>[:<multiplicity>]
    #[arg(long)]
    red: String,
    /// red copies must sit inside one connected red subgraph
    #[arg(long)]
    red_csuper: bool,
    /// blue target as <expr>[:<multiplicity>]
    #[arg(long)]
    blue: String,
    /// blue copies must sit inside one connected blue subgraph
    #[arg(long)]
    blue_csuper: bool,
    #[command(flatten)]
    common: SearchCommon,
}

#[derive(Args)]
struct GallaiArgs {
    /// rainbow path target, e.g. P4 or P5
    #[arg(long)]
    rainbow: String,
    /// monochromatic target pattern expression
    #[arg(long = "H")]
    target: String,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    multiplicity: usize,
    #[command(flatten)]
    common: SearchCommon,
}

#[derive(Args)]
struct VerifyArgs {
    /// suite name; `list` prints the available suites
    suite: String,
    #[arg(long, default_value_t = 0xACCE97)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = 100_000_000)]
    node_budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    /// input coloring file ("-" for stdin)
    #[arg(long = "in")]
    input: String,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Classify(args) => cmd_classify(args),
        Cmd::Detect(args) => cmd_detect(args),
        Cmd::Construct(args) => cmd_construct(args),
        Cmd::Ramsey(args) => {
            let target = parse_pattern(&args.target)?;
            let query = RamseyQuery::Classical {
                colors: args.k,
                target: PackingSpec {
                    base: target,
                    multiplicity: args.multiplicity,
                    connected_super: args.csuper,
                },
            };
            run_search(query, args.common)
        }
        Cmd::SetRamsey(args) => {
            let query = RamseyQuery::SetRamsey {
                red: parse_spec(&args.red, args.red_csuper)?,
                blue: parse_spec(&args.blue, args.blue_csuper)?,
            };
            run_search(query, args.common)
        }
        Cmd::Gallai(args) => {
            let target = parse_pattern(&args.target)?;
            let query = RamseyQuery::Gallai {
                colors: args.k,
                rainbow_len: parse_path_length(&args.rainbow)?,
                target: PackingSpec {
                    base: target,
                    multiplicity: args.multiplicity,
                    connected_super: false,
                },
            };
            run_search(query, args.common)
        }
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Convert(args) => cmd_convert(args),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_coloring(path: &str) -> Result<EdgeColoring> {
    let text = read_input(path)?;
    EdgeColoring::parse(&text).map_err(|e| anyhow!("{path}: {e}"))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn parse_pattern(expr: &str) -> Result<Pattern> {
    Pattern::parse(expr).map_err(|e| anyhow!("pattern `{expr}`: {e}"))
}

/// `<expr>[:<multiplicity>]` as used by --csuper and set-ramsey targets.
fn parse_spec(raw: &str, connected: bool) -> Result<PackingSpec> {
    let (expr, mult) = match raw.rsplit_once(':') {
        Some((expr, m)) => (
            expr,
            m.parse::<usize>()
                .map_err(|_| anyhow!("bad multiplicity in `{raw}`"))?,
        ),
        None => (raw, 1),
    };
    Ok(PackingSpec {
        base: parse_pattern(expr)?,
        multiplicity: mult,
        connected_super: connected,
    })
}

fn parse_path_length(raw: &str) -> Result<usize> {
    let n = raw
        .strip_prefix('P')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| anyhow!("rainbow target must look like P4 or P5, got `{raw}`"))?;
    Ok(n)
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode> {
    let g = load_coloring(&args.input)?;
    let json = if args.all_cases {
        let labels = match args.theorem {
            TheoremArg::P4 => classify::classify_p4_all(&g)?,
            TheoremArg::P5 => classify::classify_p5_all(&g)?,
        };
        serde_json::json!({
            "theorem": match args.theorem { TheoremArg::P4 => "P4", TheoremArg::P5 => "P5" },
            "cases": labels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
        })
    } else {
        match args.theorem {
            TheoremArg::P4 => classify::classify_p4(&g)?.to_json(),
            TheoremArg::P5 => classify::classify_p5(&g)?.to_json(),
        }
    };
    let negative = json["case"] == "NONE"
        || json["cases"]
            .as_array()
            .is_some_and(|cs| cs.iter().any(|c| c["case"] == "NONE"));
    emit(&args.out, &format!("{:#}\n", json))?;
    Ok(ExitCode::from(if negative { 2 } else { 0 }))
}

fn cmd_detect(args: DetectArgs) -> Result<ExitCode> {
    let g = load_coloring(&args.input)?;
    let selected = [&args.rainbow, &args.mono, &args.csuper]
        .iter()
        .filter(|o| o.is_some())
        .count();
    if selected != 1 {
        bail!("pass exactly one of --rainbow, --mono, --csuper");
    }
    let (kind, found, payload) = if let Some(raw) = &args.rainbow {
        let len = parse_path_length(raw)?;
        let e = find_rainbow_path(&g, len)?;
        (
            format!("rainbow {raw}"),
            e.is_some(),
            e.map(|e| serde_json::to_value(&e).expect("embedding serializes")),
        )
    } else if let Some(expr) = &args.mono {
        let h = parse_pattern(expr)?;
        let e = find_mono_embedding(&g, &h)?;
        (
            format!("mono {expr}"),
            e.is_some(),
            e.map(|e| serde_json::to_value(&e).expect("embedding serializes")),
        )
    } else {
        let spec = parse_spec(args.csuper.as_ref().unwrap(), true)?;
        let w = contains_connected_super(&g, &spec)?;
        (
            format!("csuper {}", args.csuper.as_ref().unwrap()),
            w.is_some(),
            w.map(|w| serde_json::to_value(&w).expect("witness serializes")),
        )
    };
    let json = serde_json::json!({
        "query": kind,
        "present": found,
        "witness": payload,
    });
    emit(&args.out, &format!("{:#}\n", json))?;
    Ok(ExitCode::from(if found { 0 } else { 2 }))
}

fn construct_preset(args: &ConstructArgs) -> Result<Construction> {
    let need = |o: Option<usize>, what: &str| {
        o.ok_or_else(|| anyhow!("preset `{}` needs --{what}", args.preset))
    };
    Ok(match args.preset.as_str() {
        "matching-k4" => construct::build_matching_k4(),
        "triangle-blocks" => construct::preset_blocks_triangles(need(args.m, "m")?)?,
        "pentagon-blocks" => construct::preset_blocks_pentagons(need(args.m, "m")?)?,
        "three-block" => construct::three_block(need(args.a, "a")?, need(args.b, "b")?),
        "two-block" => construct::two_block(need(args.order1, "order1")?, need(args.order2, "order2")?),
        "two-block-pentagons" => {
            construct::preset_two_block_pentagons(need(args.m, "m")?, need(args.n, "n")?)?
        }
        "two-block-base" => {
            let base = parse_pattern(
                args.base
                    .as_deref()
                    .ok_or_else(|| anyhow!("preset `two-block-base` needs --base"))?,
            )?;
            construct::preset_two_block_base(&base, need(args.m, "m")?, need(args.n, "n")?)?
        }
        "cyclic-three" => match (args.part_order, &args.base) {
            (Some(p), None) => construct::cyclic_three(p),
            (None, Some(base)) => {
                construct::preset_cyclic_three(&parse_pattern(base)?, need(args.m, "m")?)?
            }
            _ => bail!("preset `cyclic-three` needs either --part-order or --base with --m"),
        },
        "union-green-triangles" => construct::preset_union_green_triangles()?,
        "case-b" => {
            let raw = args
                .parts
                .as_deref()
                .ok_or_else(|| anyhow!("preset `case-b` needs --parts like 3:2,3:3,2:4"))?;
            let mut parts = Vec::new();
            for item in raw.split(',') {
                let (o, c) = item
                    .split_once(':')
                    .ok_or_else(|| anyhow!("bad part `{item}`, expected order:color"))?;
                parts.push((o.trim().parse()?, c.trim().parse()?));
            }
            let inner = match args.inner.as_str() {
                "own" => InnerColoring::OwnColor,
                "dominant" => InnerColoring::Dominant,
                other => bail!("unknown inner coloring `{other}` (own|dominant)"),
            };
            construct::build_case_b(&parts, inner)?
        }
        "list" => {
            println!(
                "matching-k4\ntriangle-blocks --m\npentagon-blocks --m\nthree-block --a --b\n\
                 two-block --order1 --order2\ntwo-block-pentagons --m --n\n\
                 two-block-base --base --m --n\ncyclic-three --part-order | --base --m\n\
                 union-green-triangles\ncase-b --parts o:c,... [--inner own|dominant]"
            );
            std::process::exit(0);
        }
        other => bail!("unknown preset `{other}`; try `gallai construct list`"),
    })
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode> {
    let c = construct_preset(&args)?;
    // a generator output failing its own claims is a build failure
    construct::validate(&c).map_err(|f| anyhow!("construction failed validation: {f}"))?;
    let content = match args.format {
        Format::Cg1 => {
            let claims = serde_json::json!({ "claims": c.claims });
            format!("{}# claims: {}\n", c.coloring.to_cg1(), claims["claims"])
        }
        Format::Dot => c.coloring.to_dot(),
        Format::Json => format!(
            "{:#}\n",
            serde_json::json!({
                "order": c.coloring.order(),
                "palette": c.coloring.palette(),
                "coloring": c.coloring.to_cg1(),
                "claims": c.claims,
            })
        ),
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_search(query: RamseyQuery, common: SearchCommon) -> Result<ExitCode> {
    let limits = SearchLimits {
        node_budget: common.node_budget,
        threads: common.threads,
        split_depth: 6,
    };
    let cache = cache::ResultCache::from_env(common.no_cache);
    let mut cache_state = "off";
    let result = match cache.lookup(&query, common.min_n, common.max_n)? {
        Some(hit) => {
            cache_state = "hit";
            hit
        }
        None => {
            if cache.enabled() {
                cache_state = "miss";
            }
            let r = compute_number(&query, common.min_n, common.max_n, &limits)?;
            cache.store(&r, common.min_n, common.max_n)?;
            r
        }
    };
    let mut json = result.to_json();
    json["cache"] = serde_json::json!(cache_state);
    // wall time varies run to run; command output stays byte-reproducible
    json["stats"] = serde_json::json!({ "nodes": result.stats.nodes });
    emit(&common.out, &format!("{:#}\n", json))?;
    Ok(match result.value {
        RamseyValue::Exact(_) => ExitCode::SUCCESS,
        RamseyValue::Bracket { .. } => ExitCode::from(2),
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.suite == "list" {
        println!("{}", suites::available_suites().join("\n"));
        return Ok(ExitCode::SUCCESS);
    }
    let limits = SearchLimits {
        node_budget: args.node_budget,
        threads: args.threads,
        split_depth: 6,
    };
    let report = suites::run_suite(&args.suite, &limits, args.seed)?;
    print!("{}", report.render_text());
    if let Some(out) = &args.out {
        std::fs::write(out, format!("{:#}\n", report.to_json()))
            .with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_convert(args: ConvertArgs) -> Result<ExitCode> {
    let g = load_coloring(&args.input)?;
    let content = match args.format {
        Format::Cg1 => g.to_cg1(),
        Format::Dot => g.to_dot(),
        Format::Json => format!(
            "{:#}\n",
            serde_json::json!({
                "order": g.order(),
                "palette": g.palette(),
                "used_colors": g.used_colors(),
                "coloring": g.to_cg1(),
            })
        ),
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}
