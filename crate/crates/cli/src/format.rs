//! JSON interchange formats. Coefficients are serialized as strings to
//! keep rationals exact; every document carries `format_version: 1`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use siltlab_core::algebra::{
    build_algebra, tensor_trivial_extension, Algebra, AlgebraPresentation, PathExpr, Quiver,
};
use siltlab_core::complexes::{MorphismMatrix, ProjComplex};
use siltlab_core::field::{FieldSpec, Scalar};
use siltlab_core::silting::{GraphEdge, GraphNode, MutationGraph, MutationStep, Side};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowFile {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathTermFile {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSpecFile {
    pub format_version: u32,
    pub field: FieldFile,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<PathTermFile>>,
    pub nilpotency_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<Vec<PathTermFile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_power: Option<usize>,
}

pub fn parse_field(f: &FieldFile) -> Result<FieldSpec> {
    match f.kind.as_str() {
        "Q" => Ok(FieldSpec::Rationals),
        "Fp" => {
            let p = f.p.ok_or_else(|| anyhow!("prime field needs the field `p`"))?;
            Ok(FieldSpec::prime(p)?)
        }
        other => bail!("unknown field kind {other:?} (expected \"Q\" or \"Fp\")"),
    }
}

pub fn parse_scalar(field: FieldSpec, s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: i64 = num_str.parse().with_context(|| format!("bad coefficient {s:?}"))?;
    let den: i64 = den_str.parse().with_context(|| format!("bad coefficient {s:?}"))?;
    Ok(field.from_ratio(num, den)?)
}

pub fn scalar_to_string(s: &Scalar) -> String {
    format!("{s}")
}

fn parse_path_expr(field: FieldSpec, terms: &[PathTermFile]) -> Result<PathExpr> {
    let mut out = Vec::new();
    for t in terms {
        out.push((parse_scalar(field, &t.coeff)?, t.path.clone()));
    }
    Ok(PathExpr { terms: out })
}

pub fn parse_algebra_spec(file: &AlgebraSpecFile) -> Result<Arc<Algebra>> {
    if file.format_version != FORMAT_VERSION {
        bail!("unsupported format_version {}", file.format_version);
    }
    let field = parse_field(&file.field)?;
    let quiver = Quiver::new(
        file.vertices.clone(),
        file.arrows.iter().map(|a| (a.name.clone(), a.src.clone(), a.tgt.clone())).collect(),
    )?;
    let relations = file
        .relations
        .iter()
        .map(|r| parse_path_expr(field, r))
        .collect::<Result<Vec<_>>>()?;
    let central = match &file.central {
        Some(c) => Some(parse_path_expr(field, c)?),
        None => None,
    };
    let presentation = AlgebraPresentation {
        field,
        quiver,
        relations,
        nilpotency_bound: file.nilpotency_bound,
        central_element: central,
    };
    let base = build_algebra(&presentation)?;
    let algebra = match file.tensor_power {
        Some(m) => tensor_trivial_extension(&base, m)?,
        None => base,
    };
    Ok(Arc::new(algebra))
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading algebra file {}", path.display()))?;
    let file: AlgebraSpecFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing algebra file {}", path.display()))?;
    parse_algebra_spec(&file)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexSpecFile {
    pub format_version: u32,
    /// Path to the algebra spec, relative to this file.
    pub algebra: String,
    /// degree → vertex names.
    pub terms: BTreeMap<String, Vec<String>>,
    /// degree → row-major matrix of path expressions (rows indexed by the
    /// term one degree up, columns by this degree's term).
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<Vec<PathTermFile>>>>,
}

/// Read a complex file and its referenced algebra without building the
/// complex (lifting commands reinterpret the terms at a tower level).
pub fn load_complex_spec(path: &Path) -> Result<(Arc<Algebra>, ComplexSpecFile)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading complex file {}", path.display()))?;
    let file: ComplexSpecFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing complex file {}", path.display()))?;
    if file.format_version != FORMAT_VERSION {
        bail!("unsupported format_version {}", file.format_version);
    }
    let algebra_path = path
        .parent()
        .map(|d| d.join(&file.algebra))
        .unwrap_or_else(|| file.algebra.clone().into());
    let algebra = load_algebra(&algebra_path)?;
    Ok((algebra, file))
}

pub fn load_complex(path: &Path) -> Result<(Arc<Algebra>, ProjComplex)> {
    let (algebra, file) = load_complex_spec(path)?;
    let complex = complex_from_file(&algebra, &file)?;
    Ok((algebra, complex))
}

pub fn complex_from_file(algebra: &Arc<Algebra>, file: &ComplexSpecFile) -> Result<ProjComplex> {
    let vertex_index = |name: &str| -> Result<usize> {
        algebra
            .quiver
            .vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| anyhow!("unknown vertex {name:?}"))
    };
    let mut terms: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (deg, names) in &file.terms {
        let d: i64 = deg.parse().with_context(|| format!("bad degree key {deg:?}"))?;
        let vs = names.iter().map(|n| vertex_index(n)).collect::<Result<Vec<_>>>()?;
        terms.insert(d, vs);
    }
    let mut diffs: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();
    for (deg, rows) in &file.differentials {
        let d: i64 = deg.parse().with_context(|| format!("bad degree key {deg:?}"))?;
        let source = terms.get(&d).cloned().unwrap_or_default();
        let target = terms.get(&(d + 1)).cloned().unwrap_or_default();
        if rows.len() != target.len() {
            bail!("differential at degree {d} has {} rows, term above has {}", rows.len(), target.len());
        }
        let mut m = MorphismMatrix::zero(algebra, source.clone(), target.clone());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != source.len() {
                bail!(
                    "differential at degree {d}, row {r} has {} columns, term has {}",
                    row.len(),
                    source.len()
                );
            }
            for (s, entry) in row.iter().enumerate() {
                if entry.is_empty() {
                    continue;
                }
                let expr = parse_path_expr(algebra.field, entry)?;
                let elem = algebra.elem_from_path_expr(&expr)?;
                m.set(r, s, elem);
            }
        }
        diffs.insert(d, m);
    }
    Ok(ProjComplex::new(algebra.clone(), terms, diffs)?)
}

/// Serialize a complex against a named algebra file reference.
pub fn complex_to_file(c: &ProjComplex, algebra_ref: &str) -> ComplexSpecFile {
    let a = &c.algebra;
    let mut terms = BTreeMap::new();
    for (&d, t) in c.terms() {
        terms.insert(
            d.to_string(),
            t.iter().map(|&v| a.quiver.vertices[v].clone()).collect(),
        );
    }
    let mut differentials = BTreeMap::new();
    for (&d, m) in c.diffs() {
        let mut rows = Vec::new();
        for r in 0..m.rows() {
            let mut row = Vec::new();
            for s in 0..m.cols() {
                row.push(elem_to_terms(a, m.at(r, s)));
            }
            rows.push(row);
        }
        differentials.insert(d.to_string(), rows);
    }
    ComplexSpecFile {
        format_version: FORMAT_VERSION,
        algebra: algebra_ref.to_string(),
        terms,
        differentials,
    }
}

pub fn elem_to_terms(a: &Algebra, elem: &[Scalar]) -> Vec<PathTermFile> {
    let mut out = Vec::new();
    for (b, c) in elem.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let bp = &a.basis[b];
        let path: Vec<String> = if bp.arrows.is_empty() {
            vec![a.quiver.vertices[bp.source].clone()]
        } else {
            bp.arrows.iter().map(|&ai| a.quiver.arrows[ai].name.clone()).collect()
        };
        out.push(PathTermFile { coeff: scalar_to_string(c), path });
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepFile {
    pub summand: usize,
    pub side: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeFile {
    pub fingerprint: String,
    pub certificate: String,
    pub word: Vec<StepFile>,
    pub terms: BTreeMap<String, Vec<String>>,
    pub differentials: BTreeMap<String, Vec<Vec<Vec<PathTermFile>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeFile {
    pub from: usize,
    pub summand: usize,
    pub side: String,
    pub to: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub format_version: u32,
    pub algebra: AlgebraSpecFile,
    /// Central-power level the graph was explored at (0 = the algebra
    /// itself).
    pub level: usize,
    pub seed: u64,
    pub depth: usize,
    pub sides: Vec<String>,
    pub nodes: Vec<NodeFile>,
    pub edges: Vec<EdgeFile>,
    /// Cached ≥ relations as (from, to, holds).
    pub order: Vec<(usize, usize, bool)>,
}

fn side_name(s: Side) -> String {
    match s {
        Side::Right => "right".into(),
        Side::Left => "left".into(),
    }
}

pub fn parse_side(s: &str) -> Result<Side> {
    match s {
        "right" => Ok(Side::Right),
        "left" => Ok(Side::Left),
        other => bail!("unknown side {other:?}"),
    }
}

pub fn graph_to_file(
    g: &MutationGraph,
    algebra_spec: &AlgebraSpecFile,
    level: usize,
) -> GraphFile {
    let nodes = g
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let complex_file = complex_to_file(&n.complex, "");
            NodeFile {
                fingerprint: n.fingerprint.clone(),
                certificate: g.certificate(i).tier().to_string(),
                word: n
                    .word
                    .iter()
                    .map(|s| StepFile { summand: s.summand, side: side_name(s.side) })
                    .collect(),
                terms: complex_file.terms,
                differentials: complex_file.differentials,
            }
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .map(|e| EdgeFile {
            from: e.from,
            summand: e.summand,
            side: side_name(e.side),
            to: e.to,
        })
        .collect();
    let order = g.order.iter().map(|(&(i, j), &b)| (i, j, b)).collect();
    GraphFile {
        format_version: FORMAT_VERSION,
        algebra: algebra_spec.clone(),
        level,
        seed: g.seed,
        depth: g.depth,
        sides: g.sides.iter().map(|&s| side_name(s)).collect(),
        nodes,
        edges,
        order,
    }
}

pub fn graph_from_file(file: &GraphFile) -> Result<(Arc<Algebra>, MutationGraph)> {
    if file.format_version != FORMAT_VERSION {
        bail!("unsupported format_version {}", file.format_version);
    }
    let full = parse_algebra_spec(&file.algebra)?;
    let algebra = if file.level == 0 || file.level == full.t_nilpotency() {
        full
    } else {
        let tower = siltlab_core::reduction::QuotientTower::new(full)?;
        tower.level(file.level)
    };
    let mut nodes = Vec::new();
    for n in &file.nodes {
        let spec = ComplexSpecFile {
            format_version: FORMAT_VERSION,
            algebra: String::new(),
            terms: n.terms.clone(),
            differentials: n.differentials.clone(),
        };
        let complex = complex_from_file(&algebra, &spec)?;
        let word = n
            .word
            .iter()
            .map(|s| Ok(MutationStep { summand: s.summand, side: parse_side(&s.side)? }))
            .collect::<Result<Vec<_>>>()?;
        // Summand data is reconstructed deterministically.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(file.seed);
        let node = GraphNode::from_complex(complex, word, &mut rng)?;
        if node.fingerprint != n.fingerprint {
            bail!("node fingerprint mismatch after reload");
        }
        nodes.push(node);
    }
    let edges = file
        .edges
        .iter()
        .map(|e| {
            Ok(GraphEdge {
                from: e.from,
                summand: e.summand,
                side: parse_side(&e.side)?,
                to: e.to,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut order = BTreeMap::new();
    for &(i, j, b) in &file.order {
        order.insert((i, j), b);
    }
    let sides = file
        .sides
        .iter()
        .map(|s| parse_side(s))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        algebra.clone(),
        MutationGraph {
            algebra,
            nodes,
            edges,
            order,
            depth: file.depth,
            seed: file.seed,
            sides,
        },
    ))
}

/// DOT rendering of a mutation graph: nodes labeled by fingerprint and
/// certificate tier, edges by (summand, side).
pub fn graph_to_dot(g: &MutationGraph) -> String {
    let mut out = String::from("digraph silt {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n");
    for (i, n) in g.nodes.iter().enumerate() {
        let shape: Vec<String> = n
            .complex
            .terms()
            .iter()
            .map(|(d, t)| {
                let names: Vec<String> = t
                    .iter()
                    .map(|&v| g.algebra.quiver.vertices[v].clone())
                    .collect();
                format!("{d}:[{}]", names.join(","))
            })
            .collect();
        out.push_str(&format!(
            "  n{i} [label=\"#{i} {}\\n{}\"];\n",
            shape.join(" "),
            g.certificate(i).tier()
        ));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}@{}\"];\n",
            e.from,
            e.to,
            e.summand,
            side_name(e.side)
        ));
    }
    out.push_str("}\n");
    out
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
