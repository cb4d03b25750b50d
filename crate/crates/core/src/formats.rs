//! Input formats: complexes, graphs, space shorthands, groups.
//!
//! Text formats ignore blank lines and anything after `#`. Any input that
//! starts with `{` is read as JSON instead.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph_products::{Cardinality, GroupSpec, GroupTable, SimpleGraph};
use crate::homology::{SpaceDescriptor, SpaceFlag};
use crate::simplicial::{FaceSet, SimplicialComplex};

/// The format reference printed by `--help` and kept in FORMATS.md.
pub const FORMAT_HELP: &str = "\
FORMATS
  Complex (text): first line m, then one facet per line as space-separated
    vertices in 1..m. Example, the 4-cycle:
        4
        1 2
        2 3
        3 4
        1 4
  Complex (JSON): {\"m\": 4, \"facets\": [[1,2],[2,3],[3,4],[1,4]]}
  Graph (text): first line m, then one edge 'i j' per line.
  Graph (JSON): {\"m\": 3, \"edges\": [[1,2],[2,3]]}
  Space shorthands (for --spaces and --fibre):
    s0           two points
    point        one point
    d<k>         k discrete points
    circle       boundary of a triangle (3 vertices, 3 edges)
    sphereq@<d>  abstract homology rational sphere of degree d
    acyclic      abstract acyclic space
    <file>       a complex file (model, basepoint 1) or a space JSON file
  Space JSON: {\"model\": {\"m\": 2, \"facets\": [[1],[2]], \"basepoint\": 1}}
          or  {\"abstract\": {\"homology\": {\"1\": {\"rank\": 0, \"torsion\": [5]}},
                             \"components\": 1, \"flags\": [\"p-acyclic:2\"]}}
    flags: acyclic, p-acyclic:<p>, q-acyclic, q-sphere:<d>
  Fibre JSON: {\"components\": [<space>, ...], \"hypotheses\": [\"finite-type\"]}
    hypotheses: finite-type, finite-p-local-type:<p>, rational
  Groups (for --groups): Z<n>, products such as Z2xZ4, S3, D4, Q8, a
    cardinality (a number or inf), or a table JSON file
    {\"order\": n, \"table\": [[...]]} with element 0 the identity.
  Cardinalities (for --cards): comma-separated positive integers or inf.
  Coefficients (--coeff): z, q, fp:<p>, zp:<p>.
";

/// Lines with comments stripped, paired with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {line_no}: '{t}' is not a vertex number")))
        })
        .collect()
}

/// Numbered rows of vertex numbers.
type Rows = Vec<(usize, Vec<usize>)>;

fn header(text: &str) -> Result<(usize, Rows)> {
    let mut lines = content_lines(text);
    let (no, first) = lines.next().ok_or(Error::EmptyInput)?;
    let m = match parse_numbers(no, first)?.as_slice() {
        [m] => *m,
        _ => return Err(Error::Parse(format!("line {no}: the first line must be the vertex count m"))),
    };
    let rest = lines
        .map(|(no, l)| parse_numbers(no, l).map(|v| (no, v)))
        .collect::<Result<_>>()?;
    Ok((m, rest))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("JSON: {e}")))
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    if is_json(text) {
        return json(text);
    }
    let (m, rows) = header(text)?;
    let facets = rows
        .into_iter()
        .map(|(no, vs)| {
            if vs.contains(&0) {
                return Err(Error::Parse(format!("line {no}: vertices are numbered from 1")));
            }
            Ok(FaceSet::from_vertices(vs))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::new(m, facets)
}

pub fn format_complex(k: &SimplicialComplex) -> String {
    let mut out = format!("{}\n", k.m());
    for f in k.facets() {
        let vs: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        out.push_str(&vs.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    if is_json(text) {
        return json(text);
    }
    let (m, rows) = header(text)?;
    let edges = rows
        .into_iter()
        .map(|(no, vs)| match vs.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(Error::Parse(format!("line {no}: an edge is two vertex numbers"))),
        })
        .collect::<Result<Vec<_>>>()?;
    SimpleGraph::new(m, edges)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    parse_complex(&read(path)?)
}

pub fn read_graph(path: &Path) -> Result<SimpleGraph> {
    parse_graph(&read(path)?)
}

/// One space: a shorthand or a file.
pub fn parse_space(spec: &str) -> Result<SpaceDescriptor> {
    let spec = spec.trim();
    if let Some(d) = spec.strip_prefix("sphereq@") {
        let d: usize = d
            .parse()
            .map_err(|_| Error::Parse(format!("'{spec}': sphere degree must be a number")))?;
        return SpaceDescriptor::rational_sphere(d);
    }
    if let Some(k) = spec.strip_prefix('d').and_then(|k| k.parse::<usize>().ok()) {
        if k == 0 {
            return Err(Error::Parse("d0: a space needs at least one point".into()));
        }
        return Ok(SpaceDescriptor::points(k));
    }
    match spec {
        "s0" => Ok(SpaceDescriptor::points(2)),
        "point" => Ok(SpaceDescriptor::points(1)),
        "circle" => Ok(SpaceDescriptor::circle()),
        "acyclic" => SpaceDescriptor::abstract_space(None, 1, [SpaceFlag::Acyclic]),
        _ => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(Error::Parse(format!(
                    "'{spec}' is neither a space shorthand (s0, point, d<k>, circle, sphereq@<d>, acyclic) nor a file"
                )));
            }
            let text = read(path)?;
            if is_json(&text) && (text.contains("\"model\"") || text.contains("\"abstract\"")) {
                json(&text)
            } else {
                SpaceDescriptor::model(parse_complex(&text)?, 1)
            }
        }
    }
}

/// Comma-separated spaces; a single entry is used for all `m` coordinates.
pub fn parse_spaces(list: &str, m: usize) -> Result<Vec<SpaceDescriptor>> {
    let parts: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let spaces = parts.iter().map(|s| parse_space(s)).collect::<Result<Vec<_>>>()?;
    match spaces.len() {
        1 => Ok(vec![spaces[0].clone(); m]),
        n if n == m => Ok(spaces),
        n => Err(Error::LengthMismatch { expected: m, actual: n }),
    }
}

pub fn parse_cards(list: &str) -> Result<Vec<Cardinality>> {
    list.split(',').map(str::parse).collect()
}

/// A named group, a cardinality, or a table JSON file.
pub fn parse_group(spec: &str) -> Result<GroupSpec> {
    let spec = spec.trim();
    if let Ok(c) = spec.parse::<Cardinality>() {
        return Ok(GroupSpec::Cardinality { cardinality: c });
    }
    if let Ok(t) = GroupTable::named(spec) {
        return Ok(GroupSpec::Table(t));
    }
    let path = Path::new(spec);
    if path.exists() {
        return Ok(GroupSpec::Table(json(&read(path)?)?));
    }
    Err(Error::Parse(format!(
        "'{spec}' is not a group name (Z<n>, Z2xZ4, S3, D4, Q8), a cardinality, or a table file"
    )))
}

pub fn parse_groups(list: &str) -> Result<Vec<GroupSpec>> {
    list.split(',').map(parse_group).collect()
}
