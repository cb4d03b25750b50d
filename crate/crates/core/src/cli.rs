//! Command-line front end.
//!
//! Exit codes: 0 success, 1 `compare` found a disagreement, 2 invalid input,
//! 3 a size cap was hit.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::abelian::{Coefficients, GradedGroup};
use crate::bbcg::{nonfaces, zk_homology_capped, ZkReport, DEFAULT_VERTEX_CAP};
use crate::classifier::{classify, classify_cone_pair, ClassTag, FibreDescriptor, Hypothesis, Mode, Verdict};
use crate::error::Error;
use crate::formats::{
    parse_cards, parse_groups, parse_space, parse_spaces, read_complex, read_graph, FORMAT_HELP,
};
use crate::graph_products::{
    flag_complex, graph_product_presentation, kernel_homology, verify_cardinality_invariance,
    Cardinality, InvarianceReport, Presentation,
};
use crate::homology::reduced_homology;
use crate::poly_product::{cellular_model_capped, DEFAULT_CELL_CAP};
use crate::simplicial::FaceSet;

#[derive(Parser, Debug)]
#[command(
    name = "polyprod",
    version,
    about = "Exact homology of polyhedral products Z_K(CX, X), graph-product kernels and class membership checks",
    after_long_help = FORMAT_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Coefficients: z, q, fp:<p> or zp:<p>
    #[arg(long, default_value = "z", value_parser = parse_coeff, global = true)]
    coeff: Coefficients,
    /// Print JSON instead of tables
    #[arg(long, global = true)]
    json: bool,
}

fn parse_coeff(s: &str) -> Result<Coefficients, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Facets, f-vector, flagness, minimal non-faces and reduced homology
    ComplexInfo {
        complex: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal non-faces (and with --all, every non-face)
    Nonfaces {
        complex: PathBuf,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decide class membership of Z_K(X, A), or of Z_K(CX, X) with --cone-pair
    Classify {
        complex: PathBuf,
        /// Class tag: P, F, K, P_<p>, F_<p>, K_<p>, P_0, F_0, K_0, E_0
        #[arg(long, required_unless_present = "cone_pair")]
        tag: Option<String>,
        /// The fibre of A -> X (or X itself with --cone-pair): a space
        /// shorthand, a space file, or a fibre JSON file
        #[arg(long)]
        fibre: String,
        /// Assert that X lies in the class
        #[arg(long)]
        x_in_class: bool,
        /// Fibre hypotheses: finite-type, finite-p-local-type:<p>, rational
        #[arg(long, value_delimiter = ',')]
        assume: Vec<String>,
        /// Classify the cone pair (CX, X): integral, rational or plocal:<p>
        #[arg(long, conflicts_with_all = ["tag", "x_in_class"])]
        cone_pair: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// H̃(Z_K(CX, X)) from the wedge decomposition over non-faces
    ZkHomology {
        complex: PathBuf,
        /// Comma-separated spaces, one per vertex (one entry is used for all)
        #[arg(long)]
        spaces: String,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
        #[command(flatten)]
        common: Common,
    },
    /// H̃(Z_K(CX, X)) from the cellular chain complex of the product cells
    OracleHomology {
        complex: PathBuf,
        #[arg(long)]
        spaces: String,
        #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
        max_cells: u128,
        #[command(flatten)]
        common: Common,
    },
    /// Run both computations and compare them degree by degree
    Compare {
        complex: PathBuf,
        #[arg(long)]
        spaces: String,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
        #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
        max_cells: u128,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced homology of the graph-product kernel
    KernelHomology {
        graph: PathBuf,
        /// Cardinalities, e.g. 2,3,inf
        #[arg(long, conflicts_with = "groups", required_unless_present = "groups")]
        cards: Option<String>,
        /// Groups, e.g. Z4,Z2xZ2,S3
        #[arg(long)]
        groups: Option<String>,
        /// Second family of groups: check cardinality invariance against --groups
        #[arg(long, requires = "groups")]
        versus: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Presentation of the graph product from multiplication tables
    Presentation {
        graph: PathBuf,
        #[arg(long)]
        groups: String,
        #[command(flatten)]
        common: Common,
    },
    /// The flag complex of a graph
    FlagComplex {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// An error together with the input it concerns.
struct Failure {
    field: String,
    error: Error,
}

trait Context<T> {
    fn field(self, name: &str) -> Result<T, Failure>;
}

impl<T> Context<T> for Result<T, Error> {
    fn field(self, name: &str) -> Result<T, Failure> {
        self.map_err(|error| Failure {
            field: name.to_string(),
            error,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexInfo {
    pub m: usize,
    pub facets: Vec<FaceSet>,
    pub dimension: usize,
    pub f_vector: Vec<usize>,
    pub is_simplex: bool,
    pub is_flag: bool,
    pub connected: bool,
    pub minimal_nonfaces: Vec<FaceSet>,
    pub nonfaces_mutually_disjoint: bool,
    pub coefficients: Coefficients,
    pub homology: GradedGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonfaceReport {
    pub minimal_nonfaces: Vec<FaceSet>,
    pub flag: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_nonfaces: Option<Vec<FaceSet>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub cells: Vec<usize>,
    pub total: GradedGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub agree: bool,
    pub differing_degrees: Vec<usize>,
    pub bbcg: GradedGroup,
    pub oracle: GradedGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub cards: Vec<Cardinality>,
    pub homology: GradedGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub text: String,
    pub presentation: Presentation,
}

fn homology_table(h: &GradedGroup, c: Coefficients) -> String {
    if h.is_zero() {
        return "  0 in all degrees\n".into();
    }
    let mut out = String::new();
    for (d, g) in h.iter() {
        match c {
            Coefficients::Integers | Coefficients::LocalizedAt(_) => writeln!(out, "  H̃_{d} = {g}"),
            _ => writeln!(out, "  dim H̃_{d} = {}", g.dimension_over(c)),
        }
        .expect("writing to a string");
    }
    out
}

fn face_list(sets: &[FaceSet]) -> String {
    if sets.is_empty() {
        return "(none)".into();
    }
    sets.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn load_fibre(spec: &str, hypotheses: &[Hypothesis]) -> Result<FibreDescriptor, Error> {
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {spec}: {e}")))?;
        let value: Option<serde_json::Value> = serde_json::from_str(&text).ok();
        if value.as_ref().is_some_and(|v| v.get("components").is_some_and(|c| c.is_array())) {
            let f: FibreDescriptor =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("JSON: {e}")))?;
            let all: BTreeSet<Hypothesis> = f.hypotheses().iter().chain(hypotheses).copied().collect();
            return FibreDescriptor::new(f.components().to_vec(), all);
        }
    }
    FibreDescriptor::from_space(&parse_space(spec)?, hypotheses.iter().copied())
}

fn parse_mode(s: &str) -> Result<Mode, Error> {
    match s {
        "integral" | "z" => Ok(Mode::Integral),
        "rational" | "q" => Ok(Mode::Rational),
        _ => match s.split_once(':') {
            Some(("plocal", p)) => p
                .parse()
                .map(Mode::PLocal)
                .map_err(|_| Error::Parse(format!("bad prime in '{s}'"))),
            _ => Err(Error::Parse(format!(
                "unknown cone-pair mode '{s}' (expected integral, rational or plocal:<p>)"
            ))),
        },
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    let cases: Vec<String> = v.satisfied_cases.iter().map(|c| format!("{c:?}")).collect();
    writeln!(out, "in class: {}", v.in_class).unwrap();
    writeln!(
        out,
        "satisfied cases: {}",
        if cases.is_empty() { "none".into() } else { cases.join(", ") }
    )
    .unwrap();
    if let Some(shape) = &v.shape {
        writeln!(out, "shape: {shape:?}").unwrap();
    }
    if v.approximate {
        writeln!(out, "note: some predicates were answered through finite models (approximate)").unwrap();
    }
    writeln!(out, "provenance:").unwrap();
    for e in &v.provenance {
        let approx = if e.approximate { ", approximate" } else { "" };
        writeln!(out, "  {} = {} ({:?}{approx})", e.predicate, e.value, e.source).unwrap();
    }
    out
}

/// Executes one command, returning the text to print and whether a
/// comparison disagreed.
fn execute(command: Command) -> Result<(String, bool), Failure> {
    match command {
        Command::ComplexInfo { complex, common } => {
            let k = read_complex(&complex).field("complex")?;
            let info = ComplexInfo {
                m: k.m(),
                facets: k.facets().to_vec(),
                dimension: k.dimension(),
                f_vector: k.f_vector(),
                is_simplex: k.is_simplex(),
                is_flag: k.is_flag(),
                connected: k.is_connected(),
                minimal_nonfaces: k.minimal_nonfaces(),
                nonfaces_mutually_disjoint: k.nonfaces_mutually_disjoint(),
                coefficients: common.coeff,
                homology: reduced_homology(&k, common.coeff),
            };
            if common.json {
                return Ok((to_json(&info), false));
            }
            let mut out = String::new();
            writeln!(out, "m = {}, dimension {}", info.m, info.dimension).unwrap();
            writeln!(out, "facets: {}", face_list(&info.facets)).unwrap();
            writeln!(out, "f-vector: {:?}", info.f_vector).unwrap();
            writeln!(out, "simplex: {}, flag: {}, connected: {}", info.is_simplex, info.is_flag, info.connected).unwrap();
            writeln!(out, "minimal non-faces: {}", face_list(&info.minimal_nonfaces)).unwrap();
            writeln!(out, "minimal non-faces mutually disjoint: {}", info.nonfaces_mutually_disjoint).unwrap();
            writeln!(out, "reduced homology over {}:", info.coefficients).unwrap();
            out.push_str(&homology_table(&info.homology, info.coefficients));
            Ok((out, false))
        }
        Command::Nonfaces { complex, all, common } => {
            let k = read_complex(&complex).field("complex")?;
            let report = NonfaceReport {
                minimal_nonfaces: k.minimal_nonfaces(),
                flag: k.is_flag(),
                all_nonfaces: all.then(|| nonfaces(&k).collect()),
            };
            if common.json {
                return Ok((to_json(&report), false));
            }
            let mut out = String::new();
            writeln!(out, "minimal non-faces: {}", face_list(&report.minimal_nonfaces)).unwrap();
            writeln!(out, "flag={}", report.flag).unwrap();
            if let Some(sets) = &report.all_nonfaces {
                writeln!(out, "all non-faces ({}): {}", sets.len(), face_list(sets)).unwrap();
            }
            Ok((out, false))
        }
        Command::Classify { complex, tag, fibre, x_in_class, assume, cone_pair, common } => {
            let k = read_complex(&complex).field("complex")?;
            let hypotheses = assume
                .iter()
                .map(|h| h.parse::<Hypothesis>())
                .collect::<Result<Vec<_>, _>>()
                .field("--assume")?;
            let f = load_fibre(&fibre, &hypotheses).field("--fibre")?;
            let verdict = match cone_pair {
                Some(mode) => {
                    let mode = parse_mode(&mode).field("--cone-pair")?;
                    classify_cone_pair(mode, &k, &f).field("classify")?
                }
                None => {
                    let tag: ClassTag = tag.expect("required by clap").parse().field("--tag")?;
                    classify(tag, &k, &f, x_in_class).field("classify")?
                }
            };
            if common.json {
                return Ok((to_json(&verdict), false));
            }
            Ok((verdict_text(&verdict), false))
        }
        Command::ZkHomology { complex, spaces, max_vertices, common } => {
            let k = read_complex(&complex).field("complex")?;
            let xs = parse_spaces(&spaces, k.m()).field("--spaces")?;
            let report = zk_homology_capped(&k, &xs, common.coeff, max_vertices).field("zk-homology")?;
            if common.json {
                return Ok((to_json(&report), false));
            }
            Ok((zk_text(&report, common.coeff), false))
        }
        Command::OracleHomology { complex, spaces, max_cells, common } => {
            let k = read_complex(&complex).field("complex")?;
            let xs = parse_spaces(&spaces, k.m()).field("--spaces")?;
            let model = cellular_model_capped(&k, &xs, max_cells).field("oracle-homology")?;
            let report = OracleReport {
                cells: model.chains.ranks().to_vec(),
                total: model.chains.homology(common.coeff),
            };
            if common.json {
                return Ok((to_json(&report), false));
            }
            let mut out = String::new();
            writeln!(out, "cells by dimension: {:?}", report.cells).unwrap();
            writeln!(out, "H̃(Z_K) over {} (cellular model):", common.coeff).unwrap();
            out.push_str(&homology_table(&report.total, common.coeff));
            Ok((out, false))
        }
        Command::Compare { complex, spaces, max_vertices, max_cells, common } => {
            let k = read_complex(&complex).field("complex")?;
            let xs = parse_spaces(&spaces, k.m()).field("--spaces")?;
            let bbcg = zk_homology_capped(&k, &xs, common.coeff, max_vertices).field("zk-homology")?.total;
            let oracle = cellular_model_capped(&k, &xs, max_cells)
                .field("oracle-homology")?
                .chains
                .homology(common.coeff);
            let degrees: BTreeSet<usize> = bbcg.iter().chain(oracle.iter()).map(|(d, _)| d).collect();
            let differing: Vec<usize> = degrees.into_iter().filter(|&d| bbcg.get(d) != oracle.get(d)).collect();
            let report = CompareReport {
                agree: differing.is_empty(),
                differing_degrees: differing,
                bbcg,
                oracle,
            };
            let mismatch = !report.agree;
            if common.json {
                return Ok((to_json(&report), mismatch));
            }
            let mut out = String::new();
            if report.agree {
                writeln!(out, "BBCG == oracle: H̃ agrees in all degrees").unwrap();
            } else {
                writeln!(out, "BBCG != oracle: H̃ differs in degrees {:?}", report.differing_degrees).unwrap();
            }
            writeln!(out, "wedge decomposition:").unwrap();
            out.push_str(&homology_table(&report.bbcg, common.coeff));
            writeln!(out, "cellular model:").unwrap();
            out.push_str(&homology_table(&report.oracle, common.coeff));
            Ok((out, mismatch))
        }
        Command::KernelHomology { graph, cards, groups, versus, common } => {
            let g = read_graph(&graph).field("graph")?;
            if let Some(versus) = versus {
                let a = parse_groups(groups.as_deref().expect("required by clap")).field("--groups")?;
                let b = parse_groups(&versus).field("--versus")?;
                let (same, report) = verify_cardinality_invariance(&g, &a, &b).field("kernel-homology")?;
                if common.json {
                    return Ok((to_json(&report), false));
                }
                return Ok((invariance_text(same, &report), false));
            }
            let cards = match (cards, groups) {
                (Some(c), _) => parse_cards(&c).field("--cards")?,
                (None, Some(gs)) => parse_groups(&gs)
                    .field("--groups")?
                    .iter()
                    .map(|g| g.cardinality())
                    .collect(),
                (None, None) => unreachable!("required by clap"),
            };
            let homology = kernel_homology(&g, &cards, common.coeff).field("kernel-homology")?;
            let report = KernelReport { cards, homology };
            if common.json {
                return Ok((to_json(&report), false));
            }
            let cards: Vec<String> = report.cards.iter().map(ToString::to_string).collect();
            let mut out = format!("kernel homology for cardinalities ({}):\n", cards.join(", "));
            out.push_str(&homology_table(&report.homology, common.coeff));
            Ok((out, false))
        }
        Command::Presentation { graph, groups, common } => {
            let g = read_graph(&graph).field("graph")?;
            let gs = parse_groups(&groups).field("--groups")?;
            let p = graph_product_presentation(&g, &gs).field("presentation")?;
            let report = PresentationReport {
                text: p.to_string(),
                presentation: p,
            };
            if common.json {
                return Ok((to_json(&report), false));
            }
            Ok((format!("{}\n", report.text), false))
        }
        Command::FlagComplex { graph, common } => {
            let g = read_graph(&graph).field("graph")?;
            let k = flag_complex(&g);
            if common.json {
                return Ok((to_json(&k), false));
            }
            Ok((crate::formats::format_complex(&k), false))
        }
    }
}

fn zk_text(report: &ZkReport, c: Coefficients) -> String {
    let mut out = String::new();
    writeln!(out, "H̃(Z_K) over {c}:").unwrap();
    out.push_str(&homology_table(&report.total, c));
    writeln!(out, "summands (non-faces I with nonzero contribution):").unwrap();
    for s in report.summands.iter().filter(|s| !s.total.is_zero()) {
        writeln!(out, "  I = {}: H̃(K_I) = {}; smash = {}; total = {}", s.index_set, s.subcomplex_homology, s.smash_homology, s.total).unwrap();
    }
    out
}

fn invariance_text(same: bool, r: &InvarianceReport) -> String {
    let show = |cs: &[Cardinality]| cs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    writeln!(out, "cardinalities ({}) vs ({}): {}", show(&r.cards_a), show(&r.cards_b), if same { "equal per vertex" } else { "differ" }).unwrap();
    writeln!(out, "oracle homology agrees: {}", r.oracle_agrees).unwrap();
    writeln!(out, "first family:").unwrap();
    out.push_str(&homology_table(&r.oracle_a, Coefficients::Integers));
    writeln!(out, "second family:").unwrap();
    out.push_str(&homology_table(&r.oracle_b, Coefficients::Integers));
    out
}

/// Parses `args` (including the program name), runs the command, and writes
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, mismatch)) => {
            let _ = out.write_all(text.as_bytes());
            i32::from(mismatch)
        }
        Err(Failure { field, error }) => {
            let _ = writeln!(err, "error in {field}: {error}");
            if error.is_size_limit() {
                3
            } else {
                2
            }
        }
    }
}
