//! `tropws`: exact divisor theory on metric graphs from the command line.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when a verification or
//! certification check fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tropws_core::catalog;
use tropws_core::divisor::{Divisor, GapSequence};
use tropws_core::error::TropError;
use tropws_core::graph::MetricGraph;
use tropws_core::io;
use tropws_core::oracle;
use tropws_core::rank::RankContext;
use tropws_core::rational::{fmt_rat, parse_rat, Rat};
use tropws_core::reduction::{self, ReduceOptions};
use tropws_core::region::Region;
use tropws_core::weierstrass::{
    self, gap_jump_check, maximal_loci, semigroup_check, sweep_all, SweepOptions,
};

#[derive(Parser)]
#[command(name = "tropws", version, about = "Exact divisor theory and Weierstrass loci on metric graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Where the graph comes from: a JSON file, or a built-in family.
#[derive(Args)]
struct GraphArgs {
    /// graph JSON file
    #[arg(long)]
    graph: Option<PathBuf>,
    /// built-in family name (see `tropws family --list`)
    #[arg(long)]
    family: Option<String>,
    /// genus parameter for parametric families
    #[arg(long)]
    genus: Option<i64>,
    /// comma-separated edge lengths / circumferences, e.g. `1,1,3/2`
    #[arg(long)]
    lengths: Option<String>,
}

#[derive(Args)]
struct DivisorArgs {
    /// divisor JSON file; defaults to the canonical divisor
    #[arg(long)]
    divisor: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// probe denominator bound (default: divisor degree + 1; env TROPWS_QMAX)
    #[arg(long)]
    qmax: Option<u64>,
    /// multiply the denominator bound (stability checks)
    #[arg(long, default_value_t = 1)]
    grid: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Genus, canonical divisor and basic structure of a graph
    Info {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        json: bool,
    },
    /// Baker–Norine rank of a divisor, with a certifying witness
    Rank {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        #[arg(long)]
        json: bool,
    },
    /// The q-reduced representative and its witness function
    Reduce {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        /// base point (vertex name or `edge:offset`)
        #[arg(long)]
        q: String,
        /// also report the witness' outgoing slopes at this point
        #[arg(long)]
        at: Option<String>,
        /// include the firing log
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Gap sequence and weight at a point
    Gaps {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        /// the point (vertex name or `edge:offset`)
        #[arg(long)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// The full gap-sequence map along one edge (or all edges)
    Sweep {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        /// restrict to one edge by name
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The Weierstrass locus as a region
    Wl {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        json: bool,
    },
    /// Points whose gap sequence dominates a given one
    WlGe {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        /// comma-separated gap sequence, e.g. `1,2,4,6`
        #[arg(long)]
        seq: String,
        #[arg(long)]
        json: bool,
    },
    /// Maximal Weierstrass loci with weights and μ
    Maximal {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        json: bool,
    },
    /// The weight functional μ_D of a region
    Mu {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        /// region JSON (inline, or `@path` to read a file)
        #[arg(long)]
        region: String,
        #[arg(long)]
        json: bool,
    },
    /// Full verification run: μ totals, weight totals, gap-jump checks
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        json: bool,
    },
    /// All gap sequences attained on the genus-g witness graphs
    Classify {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        json: bool,
    },
    /// Replay the randomized oracle cross-check suite
    OracleCheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Emit a built-in family as graph JSON plus metadata
    Family {
        /// family name
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        genus: Option<i64>,
        #[arg(long)]
        lengths: Option<String>,
        /// list available family names
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // a failed certification is an assertion failure, not bad input
                TropError::SweepInconsistent { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn parse_lengths(s: &Option<String>) -> Result<Option<Vec<Rat>>, TropError> {
    match s {
        None => Ok(None),
        Some(s) => Ok(Some(
            s.split(',')
                .map(|t| parse_rat(t.trim()))
                .collect::<Result<Vec<_>, _>>()?,
        )),
    }
}

fn load_graph(args: &GraphArgs) -> Result<MetricGraph, TropError> {
    match (&args.graph, &args.family) {
        (Some(path), None) => {
            let s = std::fs::read_to_string(path)
                .map_err(|e| TropError::BadInput(format!("{}: {e}", path.display())))?;
            io::graph_from_str(&s)
        }
        (None, Some(name)) => {
            let lens = parse_lengths(&args.lengths)?;
            let fam = catalog::build_family(name, args.genus, lens.as_deref())?;
            Ok(fam.graph)
        }
        (Some(_), Some(_)) => Err(TropError::BadInput(
            "pass either --graph or --family, not both".into(),
        )),
        (None, None) => Err(TropError::BadInput(
            "a graph is required: --graph <file> or --family <name>".into(),
        )),
    }
}

fn load_divisor(g: &MetricGraph, args: &DivisorArgs) -> Result<Divisor, TropError> {
    match &args.divisor {
        None => Ok(g.canonical_divisor()),
        Some(path) => {
            let s = std::fs::read_to_string(path)
                .map_err(|e| TropError::BadInput(format!("{}: {e}", path.display())))?;
            io::divisor_from_str(g, &s)
        }
    }
}

fn sweep_options(args: &SweepArgs) -> Result<SweepOptions, TropError> {
    let env_qmax = match std::env::var("TROPWS_QMAX") {
        Ok(v) => Some(v.parse::<u64>().map_err(|_| {
            TropError::BadInput(format!("TROPWS_QMAX must be a positive integer, got `{v}`"))
        })?),
        Err(_) => None,
    };
    Ok(SweepOptions {
        denom_bound: args.qmax.or(env_qmax),
        grid: args.grid,
    })
}

fn parse_seq(s: &str, degree: i64) -> Result<GapSequence, TropError> {
    let gaps: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| TropError::BadInput(format!("bad gap entry `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    GapSequence::new(gaps, degree)
}

fn region_text(g: &MetricGraph, b: &Region) -> String {
    if b.is_empty() {
        return "∅".to_string();
    }
    let mut parts: Vec<String> = b.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    for e in b.edges_touched() {
        for (a, c) in b.edge_intervals(e) {
            let name = &g.edge(e).name;
            if a == c {
                parts.push(format!("{name}:{}", fmt_rat(a)));
            } else {
                parts.push(format!("{name}:[{},{}]", fmt_rat(a), fmt_rat(c)));
            }
        }
    }
    parts.join(" ∪ ")
}

#[derive(Serialize)]
struct SeqJson {
    gaps: Vec<i64>,
    weight: i64,
}

fn seq_json(n: &GapSequence) -> SeqJson {
    SeqJson {
        gaps: n.gaps().to_vec(),
        weight: n.weight(),
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Cmd) -> Result<u8, TropError> {
    match cmd {
        Cmd::Info { graph, json } => cmd_info(&graph, json),
        Cmd::Rank { graph, divisor, json } => cmd_rank(&graph, &divisor, json),
        Cmd::Reduce { graph, divisor, q, at, trace, json } => {
            cmd_reduce(&graph, &divisor, &q, at.as_deref(), trace, json)
        }
        Cmd::Gaps { graph, divisor, at, json } => cmd_gaps(&graph, &divisor, &at, json),
        Cmd::Sweep { graph, divisor, sweep, edge, json } => {
            cmd_sweep(&graph, &divisor, &sweep, edge.as_deref(), json)
        }
        Cmd::Wl { graph, divisor, sweep, json } => cmd_wl(&graph, &divisor, &sweep, None, json),
        Cmd::WlGe { graph, divisor, sweep, seq, json } => {
            cmd_wl(&graph, &divisor, &sweep, Some(&seq), json)
        }
        Cmd::Maximal { graph, divisor, sweep, json } => {
            cmd_maximal(&graph, &divisor, &sweep, json)
        }
        Cmd::Mu { graph, divisor, region, json } => cmd_mu(&graph, &divisor, &region, json),
        Cmd::Verify { graph, divisor, sweep, json } => cmd_verify(&graph, &divisor, &sweep, json),
        Cmd::Classify { genus, json } => cmd_classify(genus, json),
        Cmd::OracleCheck { seed, samples, json } => cmd_oracle_check(seed, samples, json),
        Cmd::Family { name, genus, lengths, list, json } => {
            cmd_family(name.as_deref(), genus, &lengths, list, json)
        }
    }
}

fn cmd_info(graph: &GraphArgs, json: bool) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let k = g.canonical_divisor();
    let total_len: Rat = g.edges().iter().map(|e| e.len.clone()).sum();
    if json {
        #[derive(Serialize)]
        struct InfoJson {
            vertices: usize,
            edges: usize,
            genus: i64,
            total_length: String,
            canonical: Vec<io::DivisorEntryJson>,
            canonical_degree: i64,
        }
        print_json(&InfoJson {
            vertices: g.n_vertices(),
            edges: g.n_edges(),
            genus: g.genus(),
            total_length: fmt_rat(&total_len),
            canonical: io::divisor_to_json(&g, &k),
            canonical_degree: k.degree(),
        });
    } else {
        println!("vertices={} edges={} genus={}", g.n_vertices(), g.n_edges(), g.genus());
        println!("total length = {}", fmt_rat(&total_len));
        let terms: Vec<String> = k
            .iter()
            .map(|(p, c)| format!("{c}({})", g.point_label(p)))
            .collect();
        let kstr = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        println!("K = {kstr}  (degree {})", k.degree());
    }
    Ok(0)
}

fn cmd_rank(graph: &GraphArgs, divisor: &DivisorArgs, json: bool) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let mut ctx = RankContext::new(&g);
    let (r, witness) = ctx.rank_certificate(&d)?;
    if json {
        #[derive(Serialize)]
        struct RankJson {
            rank: i64,
            degree: i64,
            witness: Option<Vec<io::DivisorEntryJson>>,
        }
        print_json(&RankJson {
            rank: r,
            degree: d.degree(),
            witness: witness.as_ref().map(|w| io::divisor_to_json(&g, w)),
        });
    } else {
        println!("{r}");
        if let Some(w) = &witness {
            let terms: Vec<String> = w
                .iter()
                .map(|(p, c)| format!("{c}({})", g.point_label(p)))
                .collect();
            let estr = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            println!("# uncovered by E = {estr}");
        }
    }
    Ok(0)
}

fn cmd_reduce(
    graph: &GraphArgs,
    divisor: &DivisorArgs,
    q: &str,
    at: Option<&str>,
    trace: bool,
    json: bool,
) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let qp = io::point_from_label(&g, q)?;
    let res = reduction::reduce_opts(
        &g,
        &d,
        &qp,
        ReduceOptions {
            trace,
            ..ReduceOptions::default()
        },
    )?;
    let slopes_at = at
        .map(|label| -> Result<_, TropError> {
            let p = io::point_from_label(&g, label)?;
            Ok((p.clone(), reduction::boundary_slopes(&g, &res, &p)))
        })
        .transpose()?;
    if json {
        #[derive(Serialize)]
        struct SlopeJson {
            edge: String,
            towards_end: bool,
            slope: i64,
        }
        #[derive(Serialize)]
        struct ReduceJson {
            q: io::PointJson,
            reduced: Vec<io::DivisorEntryJson>,
            witness: Vec<io::FunctionSampleJson>,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness_slopes_at: Option<Vec<SlopeJson>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            firing_log: Option<Vec<(Vec<io::PointJson>, i64)>>,
        }
        print_json(&ReduceJson {
            q: io::point_to_json(&g, &qp),
            reduced: io::divisor_to_json(&g, &res.reduced),
            witness: io::plfunction_to_json(&g, &res.witness),
            witness_slopes_at: slopes_at.map(|(_, sl)| {
                sl.into_iter()
                    .map(|(dir, s)| SlopeJson {
                        edge: g.edge(dir.edge).name.clone(),
                        towards_end: dir.up,
                        slope: s,
                    })
                    .collect()
            }),
            firing_log: trace.then(|| {
                res.firing_log
                    .iter()
                    .map(|(pts, m)| {
                        (pts.iter().map(|p| io::point_to_json(&g, p)).collect(), *m)
                    })
                    .collect()
            }),
        });
    } else {
        let terms: Vec<String> = res
            .reduced
            .iter()
            .map(|(p, c)| format!("{c}({})", g.point_label(p)))
            .collect();
        println!("{}", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") });
        if let Some((p, sl)) = slopes_at {
            let s: Vec<String> = sl
                .iter()
                .map(|(dir, v)| {
                    format!("{}{}:{v}", g.edge(dir.edge).name, if dir.up { "+" } else { "-" })
                })
                .collect();
            println!("# slopes at {} → {}", g.point_label(&p), s.join(" "));
        }
        if trace {
            for (pts, m) in &res.firing_log {
                println!("# fire ×{m}: {} nodes", pts.len());
            }
        }
    }
    Ok(0)
}

fn cmd_gaps(graph: &GraphArgs, divisor: &DivisorArgs, at: &str, json: bool) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let p = io::point_from_label(&g, at)?;
    let mut ctx = RankContext::new(&g);
    let n = ctx.gap_sequence(&d, &p)?;
    if json {
        // ranks r(D − k(p)) for k = 0 .. top gap, recomputed directly
        let top = *n.gaps().last().expect("nonempty");
        let mut ranks = Vec::new();
        for k in 0..=top {
            let dk = d.sub(&Divisor::single(p.clone(), k));
            ranks.push(ctx.rank(&dk)?);
        }
        #[derive(Serialize)]
        struct GapsJson {
            at: io::PointJson,
            gaps: Vec<i64>,
            weight: i64,
            degree: i64,
            ranks: Vec<i64>,
            semigroup: bool,
        }
        print_json(&GapsJson {
            at: io::point_to_json(&g, &p),
            gaps: n.gaps().to_vec(),
            weight: n.weight(),
            degree: n.degree(),
            ranks,
            semigroup: semigroup_check(&n),
        });
    } else {
        println!("{n} wt={}", n.weight());
    }
    Ok(0)
}

#[derive(Serialize)]
struct EdgeMapJson {
    edge: String,
    len: String,
    at_start: SeqJson,
    breakpoints: Vec<(String, SeqJson)>,
    cells: Vec<SeqJson>,
    at_end: SeqJson,
}

fn edge_map_json(g: &MetricGraph, m: &weierstrass::EdgeGapMap) -> EdgeMapJson {
    EdgeMapJson {
        edge: g.edge(m.edge).name.clone(),
        len: fmt_rat(&m.len),
        at_start: seq_json(&m.at_start),
        breakpoints: m
            .breakpoints
            .iter()
            .map(|(t, n)| (fmt_rat(t), seq_json(n)))
            .collect(),
        cells: m.cells.iter().map(seq_json).collect(),
        at_end: seq_json(&m.at_end),
    }
}

fn edge_map_table(g: &MetricGraph, m: &weierstrass::EdgeGapMap) -> String {
    let mut out = String::new();
    let name = &g.edge(m.edge).name;
    out.push_str(&format!("edge {name} len={}\n", fmt_rat(&m.len)));
    let mut fence: Vec<Rat> = vec![Rat::from_integer(0.into())];
    fence.extend(m.breakpoints.iter().map(|(t, _)| t.clone()));
    fence.push(m.len.clone());
    out.push_str(&format!("t=0 {} wt={}\n", m.at_start, m.at_start.weight()));
    for (i, cell) in m.cells.iter().enumerate() {
        out.push_str(&format!(
            "cell ({},{}) {} wt={}\n",
            fmt_rat(&fence[i]),
            fmt_rat(&fence[i + 1]),
            cell,
            cell.weight()
        ));
        if i < m.breakpoints.len() {
            let (t, n) = &m.breakpoints[i];
            out.push_str(&format!("t={} {} wt={}\n", fmt_rat(t), n, n.weight()));
        }
    }
    out.push_str(&format!(
        "t={} {} wt={}\n",
        fmt_rat(&m.len),
        m.at_end,
        m.at_end.weight()
    ));
    out
}

fn cmd_sweep(
    graph: &GraphArgs,
    divisor: &DivisorArgs,
    sweep: &SweepArgs,
    edge: Option<&str>,
    json: bool,
) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let opts = sweep_options(sweep)?;
    let mut ctx = RankContext::new(&g);
    let maps: Vec<weierstrass::EdgeGapMap> = match edge {
        Some(name) => vec![weierstrass::sweep_edge(&mut ctx, &d, g.edge_by_name(name)?, &opts)?],
        None => sweep_all(&mut ctx, &d, &opts)?.maps,
    };
    if json {
        let out: Vec<EdgeMapJson> = maps.iter().map(|m| edge_map_json(&g, m)).collect();
        print_json(&out);
    } else {
        for m in &maps {
            print!("{}", edge_map_table(&g, m));
        }
    }
    Ok(0)
}

fn cmd_wl(
    graph: &GraphArgs,
    divisor: &DivisorArgs,
    sweep: &SweepArgs,
    seq: Option<&str>,
    json: bool,
) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let opts = sweep_options(sweep)?;
    let mut ctx = RankContext::new(&g);
    let atlas = sweep_all(&mut ctx, &d, &opts)?;
    let region = match seq {
        None => atlas.wl(&g),
        Some(s) => {
            let n = parse_seq(s, d.degree())?;
            atlas.wl_ge(&g, &n)
        }
    };
    if json {
        print_json(&io::region_to_json(&g, &region));
    } else {
        println!("{}", region_text(&g, &region));
        println!("# components={}", region.component_count(&g));
    }
    Ok(0)
}

fn cmd_maximal(
    graph: &GraphArgs,
    divisor: &DivisorArgs,
    sweep: &SweepArgs,
    json: bool,
) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let opts = sweep_options(sweep)?;
    let mut ctx = RankContext::new(&g);
    let atlas = sweep_all(&mut ctx, &d, &opts)?;
    let loci = maximal_loci(&mut ctx, &d, &atlas)?;
    let total: i64 = loci.iter().map(|l| l.weight).sum();
    if json {
        #[derive(Serialize)]
        struct LocusJson {
            region: Vec<io::RegionPartJson>,
            gaps: Vec<i64>,
            weight: i64,
            mu: i64,
        }
        #[derive(Serialize)]
        struct MaximalJson {
            loci: Vec<LocusJson>,
            weight_total: i64,
        }
        print_json(&MaximalJson {
            loci: loci
                .iter()
                .map(|l| LocusJson {
                    region: io::region_to_json(&g, &l.region),
                    gaps: l.gap.gaps().to_vec(),
                    weight: l.weight,
                    mu: l.mu,
                })
                .collect(),
            weight_total: total,
        });
    } else {
        for l in &loci {
            println!(
                "{} {} wt={} mu={}",
                region_text(&g, &l.region),
                l.gap,
                l.weight,
                l.mu
            );
        }
        println!("# Σ wt = {total}");
    }
    Ok(0)
}

fn cmd_mu(
    graph: &GraphArgs,
    divisor: &DivisorArgs,
    region: &str,
    json: bool,
) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let spec = if let Some(path) = region.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| TropError::BadInput(format!("{path}: {e}")))?
    } else {
        region.to_string()
    };
    let b = io::region_from_str(&g, &spec)?;
    let mut ctx = RankContext::new(&g);
    let m = weierstrass::mu(&mut ctx, &d, &b)?;
    if json {
        #[derive(Serialize)]
        struct MuJson {
            mu: i64,
        }
        print_json(&MuJson { mu: m });
    } else {
        println!("{m}");
    }
    Ok(0)
}

fn cmd_verify(
    graph: &GraphArgs,
    divisor: &DivisorArgs,
    sweep: &SweepArgs,
    json: bool,
) -> Result<u8, TropError> {
    let g = load_graph(graph)?;
    let d = load_divisor(&g, divisor)?;
    let opts = sweep_options(sweep)?;
    // family metadata gives an extra expected total to check against
    let family_expected = match &graph.family {
        Some(name) => {
            let lens = parse_lengths(&graph.lengths)?;
            let fam = catalog::build_family(name, graph.genus, lens.as_deref())?;
            if divisor.divisor.is_none() {
                fam.expected_weight_total
            } else {
                None
            }
        }
        None => None,
    };
    let mut ctx = RankContext::new(&g);
    let report = weierstrass::verify_totals(&mut ctx, &d, &opts)?;
    // the atlas is memoized, so this re-sweep is cheap
    let atlas = sweep_all(&mut ctx, &d, &opts)?;
    let gap_jumps_ok = atlas.maps.iter().all(gap_jump_check);
    let maximal = maximal_loci(&mut ctx, &d, &atlas)?;
    let maximal_total: i64 = maximal.iter().map(|l| l.weight).sum();
    let mut checks: Vec<(String, bool)> = report
        .checks
        .iter()
        .map(|(n, ok)| (n.to_string(), *ok))
        .collect();
    checks.push(("gap_jump".to_string(), gap_jumps_ok));
    if let Some(expected) = family_expected {
        checks.push(("family_weight_total".to_string(), maximal_total == expected));
    }
    let all_ok = checks.iter().all(|(_, ok)| *ok);
    if json {
        #[derive(Serialize)]
        struct VerifyJson {
            genus: i64,
            rank: i64,
            degree: i64,
            expected: i64,
            mu_total: i64,
            components: usize,
            all_isolated: bool,
            weight_total: Option<i64>,
            maximal_weight_total: i64,
            checks: Vec<(String, bool)>,
            ok: bool,
        }
        print_json(&VerifyJson {
            genus: report.genus,
            rank: report.rank,
            degree: report.degree,
            expected: report.expected,
            mu_total: report.mu_total,
            components: report.components.len(),
            all_isolated: report.all_isolated,
            weight_total: report.weight_total,
            maximal_weight_total: maximal_total,
            checks,
            ok: all_ok,
        });
    } else {
        println!(
            "genus={} rank={} degree={} expected={}",
            report.genus, report.rank, report.degree, report.expected
        );
        println!(
            "Σ μ = {} over {} components {}",
            report.mu_total,
            report.components.len(),
            tick(report.mu_total == report.expected)
        );
        if let Some(wt) = report.weight_total {
            println!("Σ wt = {wt} = r·g − r + d {}", tick(wt == report.expected));
        }
        println!("maximal loci Σ wt = {maximal_total}");
        for (name, ok) in &checks {
            println!("check {name} {}", tick(*ok));
        }
    }
    Ok(if all_ok { 0 } else { 2 })
}

fn tick(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

fn cmd_classify(genus: i64, json: bool) -> Result<u8, TropError> {
    let got = catalog::classify(genus)?;
    let known: BTreeSet<GapSequence> = catalog::known_sequences(genus)?.into_iter().collect();
    let matches = got == known;
    if json {
        #[derive(Serialize)]
        struct ClassifyJson {
            genus: i64,
            sequences: Vec<SeqJson>,
            matches_known: bool,
        }
        print_json(&ClassifyJson {
            genus,
            sequences: got.iter().map(seq_json).collect(),
            matches_known: matches,
        });
    } else {
        for n in &got {
            println!("{n} wt={}", n.weight());
        }
        println!("# {} sequences, matches known classification {}", got.len(), tick(matches));
    }
    Ok(if matches { 0 } else { 2 })
}

fn cmd_oracle_check(seed: u64, samples: usize, json: bool) -> Result<u8, TropError> {
    use tropws_core::gen;
    let mut rng = gen::rng(seed);
    let mut rank_checked = 0usize;
    let mut principality_checked = 0usize;
    let mut disagreements: Vec<String> = Vec::new();
    for i in 0..samples {
        let g = gen::random_small_graph(&mut rng)?;
        let d = gen::random_divisor(&mut rng, &g, -2, oracle::MAX_BRUTE_DEGREE, 2)?;
        let mut ctx = RankContext::new(&g);
        let fast = ctx.rank(&d)?;
        match oracle::brute_rank(&g, &d) {
            Ok(brute) => {
                rank_checked += 1;
                if fast != brute {
                    disagreements.push(format!("sample {i}: rank {fast} vs brute {brute}"));
                }
            }
            Err(TropError::OracleTooLarge(_)) => {}
            Err(e) => return Err(e),
        }
        // the reduction witness claims D_q − D is principal; the lattice
        // oracle must agree
        let q = gen::random_point(&mut rng, &g, 2)?;
        let res = reduction::reduce(&g, &d, &q)?;
        let diff = res.reduced.sub(&d);
        match oracle::is_principal(&g, &diff) {
            Ok(ok) => {
                principality_checked += 1;
                if !ok {
                    disagreements.push(format!("sample {i}: reduction step not principal"));
                }
            }
            Err(TropError::OracleTooLarge(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let ok = disagreements.is_empty();
    if json {
        #[derive(Serialize)]
        struct OracleJson {
            seed: u64,
            samples: usize,
            rank_checked: usize,
            principality_checked: usize,
            disagreements: Vec<String>,
            ok: bool,
        }
        print_json(&OracleJson {
            seed,
            samples,
            rank_checked,
            principality_checked,
            disagreements: disagreements.clone(),
            ok,
        });
    } else {
        println!(
            "samples={samples} rank_checked={rank_checked} principality_checked={principality_checked}"
        );
        for d in &disagreements {
            println!("DISAGREEMENT {d}");
        }
        println!("oracle agreement {}", tick(ok));
    }
    Ok(if ok { 0 } else { 2 })
}

fn cmd_family(
    name: Option<&str>,
    genus: Option<i64>,
    lengths: &Option<String>,
    list: bool,
    json: bool,
) -> Result<u8, TropError> {
    if list {
        for n in catalog::family_names() {
            println!("{n}");
        }
        return Ok(0);
    }
    let name = name.ok_or_else(|| TropError::BadInput("--name or --list is required".into()))?;
    let lens = parse_lengths(lengths)?;
    let fam = catalog::build_family(name, genus, lens.as_deref())?;
    if json {
        #[derive(Serialize)]
        struct FamilyJson {
            name: String,
            genus: i64,
            hyperelliptic: bool,
            v0: Option<io::PointJson>,
            bridgeless: bool,
            has_cut_vertices: bool,
            expected_weight_total: Option<i64>,
            graph: io::GraphJson,
        }
        print_json(&FamilyJson {
            name: fam.name.clone(),
            genus: fam.genus,
            hyperelliptic: fam.hyperelliptic,
            v0: fam.v0.as_ref().map(|p| io::point_to_json(&fam.graph, p)),
            bridgeless: fam.bridgeless,
            has_cut_vertices: fam.has_cut_vertices,
            expected_weight_total: fam.expected_weight_total,
            graph: io::graph_to_json(&fam.graph),
        });
    } else {
        println!("{}", fam.name);
        println!(
            "genus={} hyperelliptic={} bridgeless={} cut_vertices={}",
            fam.genus, fam.hyperelliptic, fam.bridgeless, fam.has_cut_vertices
        );
        if let Some(p) = &fam.v0 {
            println!("v0={}", fam.graph.point_label(p));
        }
        if let Some(t) = fam.expected_weight_total {
            println!("expected maximal Σ wt = {t}");
        }
        for e in fam.graph.edges() {
            println!(
                "edge {} {}–{} len={}",
                e.name,
                fam.graph.vertex_name(e.u),
                fam.graph.vertex_name(e.v),
                fmt_rat(&e.len)
            );
        }
    }
    Ok(0)
}
