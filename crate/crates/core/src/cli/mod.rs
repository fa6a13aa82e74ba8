//! Command-line front end. `run` parses arguments, writes to the given
//! streams and returns the process exit code: 0 on success, 1 when a
//! computation or verification fails, 2 on a usage error.

pub mod corpus;
mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::Coefficients;
use crate::alternating::is_alternating;
use crate::collapse::retract_to_tree_complex;
use crate::diagram::{markers_to_string, DiagramJson, LinkDiagram};
use crate::error::{Error, Result};
use crate::jones::{bracket_spantree, bracket_statesum, euler_check, jones, EulerReport};
use crate::khovanov::{khovanov_dims, khovanov_homology, BigradedHomology};
use crate::spantree::{ResolutionNode, TreeModel};
use crate::spectral::{build_filtration, compute_pages, SpectralSequence};

pub use corpus::{builtin, find, resolve, CorpusEntry};
pub use verify::{CheckResult, Status};

/// Default cap on crossings for computations over all states.
pub const BRUTE_FORCE_CAP: usize = 9;

#[derive(Parser, Debug)]
#[command(name = "spantree-kh", version, about = "Spanning-tree models of the Jones polynomial and Khovanov homology")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Variant {
    #[arg(long, conflicts_with = "unreduced")]
    reduced: bool,
    #[arg(long)]
    unreduced: bool,
}

impl Variant {
    fn reduced(self) -> bool {
        !self.unreduced
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagram, orientation and Tait graph summary.
    Info { knot: String },
    /// Kauffman bracket, Jones polynomial and the tree Euler characteristics.
    Jones { knot: String },
    /// Spanning trees with activity words, gradings and smoothings.
    Trees {
        knot: String,
        /// Also print the maximal chains of the tree poset.
        #[arg(long)]
        chains: bool,
        /// Also print the resolution tree.
        #[arg(long)]
        resolution: bool,
    },
    /// Khovanov homology from all enhanced states.
    Homology {
        knot: String,
        #[command(flatten)]
        variant: Variant,
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long)]
        force: bool,
    },
    /// Retract onto the spanning tree complex.
    SpantreeComplex {
        knot: String,
        #[command(flatten)]
        variant: Variant,
        /// Dump every elementary collapse.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        force: bool,
    },
    /// Pages of the spanning tree spectral sequence.
    Spectral {
        knot: String,
        #[arg(long, default_value = "f2")]
        coeff: String,
        /// Stop after this page.
        #[arg(long)]
        pages: Option<usize>,
        #[arg(long)]
        force: bool,
    },
    /// Check the corpus against the oracles.
    Verify {
        check: Option<Check>,
        #[arg(long, conflicts_with = "all")]
        knot: Option<String>,
        #[arg(long)]
        all: bool,
        /// Print the corpus with recomputed expected data.
        #[arg(long)]
        regen: bool,
        #[arg(long)]
        force: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Corpus,
    TreeExpansion,
    Euler,
    Collapse,
    Spectral,
    Alternating,
    Thickness,
}

impl Check {
    pub fn all() -> [Check; 7] {
        [
            Check::Corpus,
            Check::TreeExpansion,
            Check::Euler,
            Check::Collapse,
            Check::Spectral,
            Check::Alternating,
            Check::Thickness,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::Corpus => "corpus",
            Check::TreeExpansion => "tree-expansion",
            Check::Euler => "euler",
            Check::Collapse => "collapse",
            Check::Spectral => "spectral",
            Check::Alternating => "alternating",
            Check::Thickness => "thickness",
        }
    }
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::ArcMultiplicity { .. }
            | Error::Disconnected
            | Error::NonPlanar { .. }
            | Error::Orientation { .. }
            | Error::Basepoint(_)
            | Error::NotPrime(_)
            | Error::UnknownKnot(_)
            | Error::TooLarge { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn configure_threads() {
    if let Some(n) = std::env::var("SPANTREE_KH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn check_cap(d: &LinkDiagram, force: bool) -> Result<()> {
    if d.n_crossings() > BRUTE_FORCE_CAP && !force {
        return Err(Error::TooLarge { crossings: d.n_crossings(), cap: BRUTE_FORCE_CAP });
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Width on screen, ignoring combining marks.
fn width(s: &str) -> usize {
    s.chars().filter(|c| !('\u{300}'..='\u{36f}').contains(c)).count()
}

fn pad(s: &str, w: usize) -> String {
    format!("{s}{}", " ".repeat(w.saturating_sub(width(s))))
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| width(s)).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| pad(s, widths[c])).collect();
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Info { knot } => info(&resolve(&knot)?, json, out),
        Command::Jones { knot } => jones_cmd(&resolve(&knot)?, json, out),
        Command::Trees { knot, chains, resolution } => trees(&resolve(&knot)?, chains, resolution, json, out),
        Command::Homology { knot, variant, coeff, force } => {
            let d = resolve(&knot)?;
            check_cap(&d, force)?;
            homology(&d, variant.reduced(), Coefficients::parse(&coeff)?, json, out)
        }
        Command::SpantreeComplex { knot, variant, trace, force } => {
            let d = resolve(&knot)?;
            check_cap(&d, force)?;
            spantree_complex(&d, variant.reduced(), trace, json, out)
        }
        Command::Spectral { knot, coeff, pages, force } => {
            let d = resolve(&knot)?;
            check_cap(&d, force)?;
            let coeff = Coefficients::parse(&coeff)?;
            if coeff == Coefficients::Integers {
                return Err(Failure::Usage("spectral sequences need a field: use --coeff q or --coeff f2".into()));
            }
            spectral(&d, coeff, pages, json, out)
        }
        Command::Verify { check, knot, all, regen, force } => {
            if regen {
                let entries = builtin().iter().map(|e| e.regenerate()).collect::<Result<Vec<_>>>()?;
                emit_json(out, &entries)?;
                return Ok(0);
            }
            let entries = match (knot, all) {
                (Some(name), _) => vec![find(&name)?],
                (None, _) => builtin(),
            };
            let checks: Vec<Check> = check.map_or_else(|| Check::all().to_vec(), |c| vec![c]);
            let results = verify::run_checks(&entries, &checks, force);
            if json {
                emit_json(out, &results)?;
            } else {
                for r in &results {
                    writeln!(out, "{}", r.line())?;
                }
                let failed = results.iter().filter(|r| r.status == Status::Fail).count();
                writeln!(out, "{} checks, {failed} failed", results.len())?;
            }
            Ok(if results.iter().any(|r| r.status == Status::Fail) { 1 } else { 0 })
        }
    }
}

#[derive(Serialize)]
struct TaitSummary {
    vertices: usize,
    edges: usize,
    e_plus: usize,
    e_minus: usize,
    k: i64,
}

#[derive(Serialize)]
struct InfoJson {
    diagram: DiagramJson,
    alternating: bool,
    tait: TaitSummary,
    spanning_trees: usize,
}

fn info(d: &LinkDiagram, json: bool, out: &mut dyn Write) -> Outcome {
    let model = TreeModel::new(d)?;
    let g = &model.graph;
    let report = InfoJson {
        diagram: d.to_json(),
        alternating: d.n_crossings() > 0 && is_alternating(d),
        tait: TaitSummary { vertices: g.n_vertices(), edges: g.n_edges(), e_plus: g.e_plus(), e_minus: g.e_minus(), k: g.k() },
        spanning_trees: model.len(),
    };
    if json {
        emit_json(out, &report)?;
        return Ok(0);
    }
    let signs: Vec<&str> = d.signs().iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
    let rows = vec![
        vec!["name".into(), d.label().to_string()],
        vec!["pd".into(), d.to_pd_string()],
        vec!["crossings".into(), d.n_crossings().to_string()],
        vec!["components".into(), d.n_components().to_string()],
        vec!["signs".into(), signs.join(" ")],
        vec!["writhe".into(), d.writhe().to_string()],
        vec!["alternating".into(), if report.alternating { "yes" } else { "no" }.into()],
        vec![
            "tait graph".into(),
            format!(
                "{} vertices, {} edges (E+ {}, E- {}), k = {}",
                report.tait.vertices, report.tait.edges, report.tait.e_plus, report.tait.e_minus, report.tait.k
            ),
        ],
        vec!["spanning trees".into(), model.len().to_string()],
    ];
    write!(out, "{}", table(&rows))?;
    Ok(0)
}

#[derive(Serialize)]
struct JonesJson {
    bracket: String,
    bracket_spantree: String,
    writhe: i64,
    jones: String,
    euler: EulerReport,
}

fn jones_cmd(d: &LinkDiagram, json: bool, out: &mut dyn Write) -> Outcome {
    let model = TreeModel::new(d)?;
    let b = bracket_statesum(d);
    let bt = bracket_spantree(&model);
    let v = jones(d)?;
    let euler = euler_check(d, &model)?;
    let report = JonesJson {
        bracket: b.display("A", 1).to_string(),
        bracket_spantree: bt.display("A", 1).to_string(),
        writhe: d.writhe(),
        jones: v.to_string(),
        euler,
    };
    if json {
        emit_json(out, &report)?;
        return Ok(0);
    }
    let yes = |b: bool| if b { "holds" } else { "fails" }.to_string();
    let rows = vec![
        vec!["bracket (states)".into(), report.bracket.clone()],
        vec!["bracket (trees)".into(), report.bracket_spantree.clone()],
        vec!["writhe".into(), report.writhe.to_string()],
        vec!["jones".into(), report.jones.clone()],
        vec!["chi(C)".into(), report.euler.chi_reduced.clone()],
        vec!["chi(UC)".into(), report.euler.chi_unreduced.clone()],
        vec!["V = (-1)^w t^((3w+k)/4) chi(C)".into(), yes(report.euler.identity_1)],
        vec!["(t^1/2+t^-1/2) V = (-1)^w t^((3w+k+2)/4) chi(UC)".into(), yes(report.euler.identity_2)],
        vec!["(t^1/2+t^-1/2) V = (-1)^w t^((3w+k-2)/4) chi(UC)".into(), yes(report.euler.identity_2_corrected)],
    ];
    write!(out, "{}", table(&rows))?;
    Ok(0)
}

#[derive(Serialize)]
struct TreeJson {
    name: String,
    edges: Vec<usize>,
    word: String,
    u: i64,
    v: i64,
    smoothing: String,
    monomial: String,
}

#[derive(Serialize)]
struct TreesJson {
    k: i64,
    trees: Vec<TreeJson>,
    chains: Vec<Vec<String>>,
    covers: BTreeMap<String, Vec<String>>,
}

const CHAIN_LIMIT: usize = 1000;

fn trees(d: &LinkDiagram, chains: bool, resolution: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let model = TreeModel::new(d)?;
    let name = |t: usize| model.trees[t].name();
    let report = TreesJson {
        k: model.k(),
        trees: model
            .trees
            .iter()
            .map(|t| TreeJson {
                name: t.name(),
                edges: t.edges.iter().map(|e| e + 1).collect(),
                word: t.word.to_string(),
                u: t.u,
                v: t.v,
                smoothing: t.smoothing_string(),
                monomial: t.monomial.display("A", 1).to_string(),
            })
            .collect(),
        chains: model.poset.maximal_chains(CHAIN_LIMIT).into_iter().map(|c| c.into_iter().map(name).collect()).collect(),
        covers: (0..model.len()).map(|t| (name(t), model.poset.covers(t).iter().map(|&b| name(b)).collect())).collect(),
    };
    if json {
        emit_json(out, &report)?;
        return Ok(0);
    }
    let mut rows = vec![vec!["tree".into(), "edges".into(), "word".into(), "(u,v)".into(), "smoothing".into(), "monomial".into()]];
    for t in &report.trees {
        let edges: Vec<String> = t.edges.iter().map(|e| e.to_string()).collect();
        rows.push(vec![
            t.name.clone(),
            format!("{{{}}}", edges.join(",")),
            t.word.clone(),
            format!("({},{})", t.u, t.v),
            t.smoothing.clone(),
            t.monomial.clone(),
        ]);
    }
    write!(out, "{}", table(&rows))?;
    if chains {
        writeln!(out, "\nmaximal chains ({}):", model.poset.chain_count())?;
        for c in &report.chains {
            writeln!(out, "  {}", c.join(" > "))?;
        }
    }
    if resolution {
        writeln!(out, "\nresolution tree:")?;
        write!(out, "{}", ResolutionNode::build(d).render())?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct DimJson {
    grading: [i64; 2],
    dim: usize,
}

fn homology(d: &LinkDiagram, reduced: bool, coeff: Coefficients, json: bool, out: &mut dyn Write) -> Outcome {
    if coeff == Coefficients::Integers {
        let h = khovanov_homology(d, reduced)?;
        if json {
            emit_json(out, &h)?;
        } else {
            writeln!(out, "{} Khovanov homology over Z, (i, j):", if reduced { "reduced" } else { "unreduced" })?;
            write!(out, "{}", h.table())?;
        }
    } else {
        let dims = khovanov_dims(d, reduced, coeff)?;
        if json {
            let rows: Vec<DimJson> = dims.iter().map(|(&(i, j), &dim)| DimJson { grading: [i, j], dim }).collect();
            emit_json(out, &rows)?;
        } else {
            writeln!(out, "{} Khovanov homology over {coeff}, (i, j): dimension", if reduced { "reduced" } else { "unreduced" })?;
            for ((i, j), dim) in dims {
                writeln!(out, "({i}, {j}): {dim}")?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct GeneratorJson {
    label: String,
    u: i64,
    v: i64,
    i: i64,
    j: i64,
    state: String,
}

#[derive(Serialize)]
struct EntryJson {
    from: String,
    to: String,
    coefficient: i64,
}

#[derive(Serialize)]
struct TraceJson {
    x: String,
    y: String,
    lambda: i64,
    tree: Option<String>,
}

#[derive(Serialize)]
struct ComplexJson {
    reduced: bool,
    writhe: i64,
    k: i64,
    generators: Vec<GeneratorJson>,
    differential: Vec<EntryJson>,
    homology_uv: BigradedHomology,
    homology_ij: BigradedHomology,
    stats: crate::collapse::RetractionStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceJson>>,
}

fn spantree_complex(d: &LinkDiagram, reduced: bool, trace: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let model = TreeModel::new(d)?;
    let r = retract_to_tree_complex(d, &model, reduced)?;
    let tc = &r.tree_complex;
    let labels = &r.khovanov.complex.labels;
    let report = ComplexJson {
        reduced,
        writhe: tc.writhe,
        k: tc.k,
        generators: tc
            .generators
            .iter()
            .zip(&r.survivors)
            .map(|(g, &id)| GeneratorJson { label: g.label.clone(), u: g.u, v: g.v, i: g.ij.0, j: g.ij.1, state: labels[id].clone() })
            .collect(),
        differential: tc
            .entries()
            .into_iter()
            .map(|(a, b, c)| EntryJson { from: tc.generators[a].label.clone(), to: tc.generators[b].label.clone(), coefficient: c })
            .collect(),
        homology_uv: tc.homology()?,
        homology_ij: tc.homology_ij()?,
        stats: r.stats.clone(),
        trace: trace.then(|| {
            r.mutable
                .log
                .iter()
                .map(|s| TraceJson {
                    x: labels[s.x].clone(),
                    y: labels[s.y].clone(),
                    lambda: s.lambda,
                    tree: s.group.map(|t| model.trees[t].name()),
                })
                .collect()
        }),
    };
    if json {
        emit_json(out, &report)?;
        return Ok(0);
    }
    writeln!(out, "{} spanning tree complex, w = {}, k = {}", if reduced { "reduced" } else { "unreduced" }, tc.writhe, tc.k)?;
    let mut rows = vec![vec!["generator".into(), "(u,v)".into(), "(i,j)".into(), "state".into(), "smoothing".into()]];
    for (g, gen) in report.generators.iter().zip(&tc.generators) {
        rows.push(vec![
            g.label.clone(),
            format!("({},{})", g.u, g.v),
            format!("({},{})", g.i, g.j),
            g.state.clone(),
            markers_to_string(&model.trees[gen.tree].smoothing),
        ]);
    }
    write!(out, "{}", table(&rows))?;
    writeln!(out, "\ndifferential:")?;
    if report.differential.is_empty() {
        writeln!(out, "  0")?;
    }
    for e in &report.differential {
        writeln!(out, "  d {} -> {:+} {}", e.from, e.coefficient, e.to)?;
    }
    writeln!(out, "\nhomology, (u, v):")?;
    write!(out, "{}", report.homology_uv.table())?;
    writeln!(out, "\nhomology, (i, j):")?;
    write!(out, "{}", report.homology_ij.table())?;
    writeln!(
        out,
        "\n{} generators, {} collapses, {} order violations, {} insulation violations",
        report.stats.generators, report.stats.collapses, report.stats.order_violations, report.stats.insulation_violations
    )?;
    if let Some(t) = &report.trace {
        writeln!(out, "\ncollapse log:")?;
        for s in t {
            writeln!(out, "  [{}] {} -> {} ({:+})", s.tree.as_deref().unwrap_or("-"), s.x, s.y, s.lambda)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SpectralJson {
    levels: BTreeMap<usize, Vec<String>>,
    sequence: SpectralSequence,
}

fn spectral(d: &LinkDiagram, coeff: Coefficients, pages: Option<usize>, json: bool, out: &mut dyn Write) -> Outcome {
    let model = TreeModel::new(d)?;
    let f = build_filtration(d, &model)?;
    let ss = compute_pages(&f, coeff, pages)?;
    let levels: BTreeMap<usize, Vec<String>> =
        f.trees_by_level().into_iter().map(|(p, ts)| (p, ts.iter().map(|&t| model.trees[t].name()).collect())).collect();
    if json {
        emit_json(out, &SpectralJson { levels, sequence: ss })?;
        return Ok(0);
    }
    writeln!(out, "filtration levels:")?;
    for (p, ts) in &levels {
        writeln!(out, "  p = {p}: {}", ts.join(", "))?;
    }
    for page in &ss.pages {
        writeln!(out, "\nE_{} over {} (total {}):", page.r, ss.coefficients, page.total())?;
        write!(out, "{}", page.table())?;
    }
    writeln!(out, "\ncollapses at E_{}", ss.collapse_page)?;
    Ok(0)
}
