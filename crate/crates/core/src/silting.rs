//! Presilting and silting predicates, irreducible silting mutation,
//! depth-bounded mutation-graph exploration with canonical node
//! identification, and partial-order comparison of silting posets across
//! central reduction.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::complexes::{
    basic, basic_parts, cone, decompose, iso_test, minimize, ChainMap, MorphismMatrix,
    ProjComplex,
};
use crate::error::{CoreError, Result};

use crate::homspaces::{hom0_basis, hom_complex, relation, Relation};
use crate::linalg::Matrix;
use crate::reduction::{reduce, ReductionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Right,
    Left,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Right => write!(f, "right"),
            Side::Left => write!(f, "left"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MutationStep {
    pub summand: usize,
    pub side: Side,
}

/// How a silting claim is certified, strongest applicable level first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiltingCertificate {
    /// Replayable mutation word from the stalk complex: a proof.
    MutationProvenance(Vec<MutationStep>),
    /// Two-term presilting with full summand count: silting by the
    /// two-term theory.
    TwoTerm,
    /// Presilting, full summand count, unimodular class matrix; generation
    /// is not independently certified.
    Heuristic,
}

impl SiltingCertificate {
    pub fn tier(&self) -> &'static str {
        match self {
            SiltingCertificate::MutationProvenance(_) => "mutation-provenance",
            SiltingCertificate::TwoTerm => "two-term-criterion",
            SiltingCertificate::Heuristic => "heuristic (generation not independently certified)",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Certification {
    Certified(SiltingCertificate),
    Rejected(String),
}

/// Hom(c, c[i]) = 0 for all i > 0.
pub fn is_presilting(c: &ProjComplex) -> Result<bool> {
    relation(c, c, Relation::Geq)
}

/// Hom(c, c[i]) = 0 for all i ≠ 0.
pub fn is_pretilting(c: &ProjComplex) -> Result<bool> {
    relation(c, c, Relation::Teq)
}

/// Class matrix: rows = indecomposable summands, columns = vertices,
/// entries = alternating sums of vertex multiplicities. Unimodular iff
/// square with determinant ±1.
pub fn k0_matrix(parts: &[ProjComplex], algebra: &Algebra) -> (Vec<Vec<i64>>, bool) {
    let nv = algebra.vertex_count();
    let rows: Vec<Vec<i64>> = parts
        .iter()
        .map(|p| {
            let mut row = vec![0i64; nv];
            for (&deg, term) in p.terms() {
                let sign = if deg.rem_euclid(2) == 0 { 1 } else { -1 };
                for &v in term {
                    row[v] += sign;
                }
            }
            row
        })
        .collect();
    let unimodular = if rows.len() == nv {
        let field = algebra.field;
        let m = Matrix::from_fn(field, nv, nv, |i, j| field.from_i64(rows[i][j]));
        let d = m.det();
        d == field.from_i64(1) || d == field.from_i64(-1)
    } else {
        false
    };
    (rows, unimodular)
}

/// Certify a complex as silting at the strongest applicable level, or
/// reject it with the failing criterion.
pub fn certify_silting(
    c: &ProjComplex,
    provenance: Option<&[MutationStep]>,
    rng: &mut ChaCha8Rng,
) -> Result<Certification> {
    if !is_presilting(c)? {
        return Ok(Certification::Rejected("not presilting".into()));
    }
    let b = basic(c, rng)?;
    let parts = decompose(&b, rng)?;
    let nv = c.algebra.vertex_count();
    if parts.len() != nv {
        return Ok(Certification::Rejected(format!(
            "basic complex has {} summands, the algebra has {nv} vertices",
            parts.len()
        )));
    }
    let (_, unimodular) = k0_matrix(&parts, &c.algebra);
    if !unimodular {
        return Ok(Certification::Rejected("class matrix is not unimodular".into()));
    }
    if let Some(word) = provenance {
        let mut current = GraphNode::root(c.algebra.clone(), rng)?;
        for step in word {
            let mutated = mutate_node(&current, step.summand, step.side, rng)?;
            current =
                GraphNode::from_parts(c.algebra.clone(), mutated.parts, vec![])?;
        }
        if iso_test(&current.complex, c, rng)?.is_some() {
            return Ok(Certification::Certified(SiltingCertificate::MutationProvenance(
                word.to_vec(),
            )));
        }
        return Ok(Certification::Rejected(
            "provenance word does not replay to the complex".into(),
        ));
    }
    let min = minimize(c)?.complex;
    if let (Some(lo), Some(hi)) = (min.min_degree(), min.max_degree()) {
        if hi - lo <= 1 {
            return Ok(Certification::Certified(SiltingCertificate::TwoTerm));
        }
    }
    Ok(Certification::Certified(SiltingCertificate::Heuristic))
}

/// One node of the mutation graph: a basic minimal complex in canonical
/// summand order, with its fingerprint and provenance word.
#[derive(Debug, Clone)]
pub struct GraphNode {
    pub complex: ProjComplex,
    pub parts: Vec<ProjComplex>,
    pub fingerprint: String,
    pub word: Vec<MutationStep>,
}

impl GraphNode {
    pub fn root(algebra: Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<Self> {
        Self::from_complex(ProjComplex::stalk(algebra), vec![], rng)
    }

    pub fn from_complex(
        c: ProjComplex,
        word: Vec<MutationStep>,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self> {
        let parts = basic_parts(&c, rng)?;
        Self::from_parts(c.algebra.clone(), parts, word)
    }

    /// Assemble a node from already-deduplicated canonical parts.
    pub fn from_parts(
        algebra: Arc<Algebra>,
        parts: Vec<ProjComplex>,
        word: Vec<MutationStep>,
    ) -> Result<Self> {
        let mut complex = ProjComplex::zero(algebra);
        for p in &parts {
            complex = complex.direct_sum(p);
        }
        let fingerprint = fingerprint_of(&complex)?;
        Ok(GraphNode { complex, parts, fingerprint, word })
    }

    pub fn summand_count(&self) -> usize {
        self.parts.len()
    }

    /// Support contained in two adjacent degrees {−1, 0}.
    pub fn is_two_term(&self) -> bool {
        match (self.complex.min_degree(), self.complex.max_degree()) {
            (Some(lo), Some(hi)) => lo >= -1 && hi <= 0,
            _ => false,
        }
    }
}

/// Node fingerprint: degreewise sorted vertex multisets plus the table of
/// self-Hom dimensions over the support window.
pub fn fingerprint_of(c: &ProjComplex) -> Result<String> {
    let k = hom_complex(c, c)?;
    let mut homs: Vec<(i64, usize)> = Vec::new();
    if let (Some(lo), Some(hi)) = (k.min_degree(), k.max_degree()) {
        for i in lo..=hi {
            homs.push((i, k.cohomology_dim(i)));
        }
    }
    Ok(format!("{:?}#{:?}", c.shape(), homs))
}

/// Right (or left) irreducible silting mutation of a node at one summand.
pub fn mutate_node(
    node: &GraphNode,
    summand: usize,
    side: Side,
    rng: &mut ChaCha8Rng,
) -> Result<MutationResult> {
    if summand >= node.parts.len() {
        return Err(CoreError::Precondition(format!(
            "summand index {summand} out of range ({} summands)",
            node.parts.len()
        )));
    }
    let a = node.complex.algebra.clone();
    let x = &node.parts[summand];
    let others: Vec<&ProjComplex> =
        node.parts.iter().enumerate().filter(|(i, _)| *i != summand).map(|(_, p)| p).collect();
    let mut complement = ProjComplex::zero(a.clone());
    for p in &others {
        complement = complement.direct_sum(p);
    }

    let cone_part = match side {
        Side::Right => {
            // Left add(M)-approximation g: X → M₀ over a full basis of
            // ⊕_j Hom(X, M_j); its cone replaces X.
            let mut reps: Vec<ChainMap> = Vec::new();
            for mj in &others {
                let basis = hom0_basis(x, mj)?;
                reps.extend(basis.reps);
            }
            let g = stack_into_sum(x, &reps, true)?;
            cone(&g)?
        }
        Side::Left => {
            // Right add(M)-approximation h: M₀ → X; the shifted cone
            // replaces X.
            let mut reps: Vec<ChainMap> = Vec::new();
            for mj in &others {
                let basis = hom0_basis(mj, x)?;
                reps.extend(basis.reps);
            }
            let h = stack_into_sum(x, &reps, false)?;
            cone(&h)?.shift(-1)
        }
    };
    let candidate = minimize(&cone_part)?.complex.direct_sum(&complement);
    let mu_parts = basic_parts(&candidate, rng)?;
    let mut mu = ProjComplex::zero(a.clone());
    for p in &mu_parts {
        mu = mu.direct_sum(p);
    }

    // Postconditions from the mutation theorem, verified on every call.
    if mu_parts.len() != node.parts.len() {
        return Err(CoreError::MutationPostcondition(format!(
            "|μ| = {} but |c| = {}",
            mu_parts.len(),
            node.parts.len()
        )));
    }
    if iso_test(&mu, &node.complex, rng)?.is_some() {
        return Err(CoreError::MutationPostcondition("μ ≅ c".into()));
    }
    let (first, second) = match side {
        Side::Right => (
            relation(&node.complex, &mu, Relation::Geq)?,
            relation(&mu, &node.complex.shift(1), Relation::Geq)?,
        ),
        Side::Left => (
            relation(&mu, &node.complex, Relation::Geq)?,
            relation(&node.complex, &mu.shift(1), Relation::Geq)?,
        ),
    };
    if !first || !second {
        return Err(CoreError::MutationPostcondition(format!(
            "{side} mutation order chain fails: ({first}, {second})"
        )));
    }
    Ok(MutationResult { complex: mu, parts: mu_parts })
}

/// A verified mutation: the canonical complex and its summands.
pub struct MutationResult {
    pub complex: ProjComplex,
    pub parts: Vec<ProjComplex>,
}

/// Assemble either g: X → ⊕targets (stack = true) or h: ⊕sources → X
/// (stack = false) from a list of representative maps.
fn stack_into_sum(x: &ProjComplex, reps: &[ChainMap], into: bool) -> Result<ChainMap> {
    let a = x.algebra.clone();
    if reps.is_empty() {
        let zero = ProjComplex::zero(a);
        return Ok(if into {
            ChainMap::zero(x.clone(), zero)
        } else {
            ChainMap::zero(zero, x.clone())
        });
    }
    let mut sum = ProjComplex::zero(a.clone());
    for r in reps {
        sum = sum.direct_sum(if into { &r.target } else { &r.source });
    }
    let mut components = BTreeMap::new();
    for (&deg, _) in x.terms() {
        let mut acc: Option<MorphismMatrix> = None;
        for r in reps {
            let comp = r.component(deg);
            acc = Some(match acc {
                None => comp,
                Some(prev) => {
                    if into {
                        prev.vstack(&a, &comp)
                    } else {
                        prev.hstack(&a, &comp)
                    }
                }
            });
        }
        components.insert(deg, acc.unwrap());
    }
    let map = if into {
        ChainMap { source: x.clone(), target: sum, components }
    } else {
        ChainMap { source: sum, target: x.clone(), components }
    };
    map.verify()?;
    Ok(map)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub summand: usize,
    pub side: Side,
    pub to: usize,
}

/// The explored slice of the silting mutation graph. Exploration is depth
/// bounded; no completeness claim is made (shifts alone make silt infinite).
#[derive(Debug, Clone)]
pub struct MutationGraph {
    pub algebra: Arc<Algebra>,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    /// Decided ≥ relations between node pairs.
    pub order: BTreeMap<(usize, usize), bool>,
    pub depth: usize,
    pub seed: u64,
    pub sides: Vec<Side>,
}

pub struct ExploreOptions {
    pub depth: usize,
    pub sides: Vec<Side>,
    pub seed: u64,
    pub jobs: usize,
    /// Verify on every edge that the opposite mutation at the replaced
    /// summand returns to the source node.
    pub verify_inverses: bool,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            depth: 2,
            sides: vec![Side::Right, Side::Left],
            seed: 0xC0FFEE,
            jobs: 1,
            verify_inverses: true,
        }
    }
}

fn task_rng(seed: u64, node: usize, summand: usize, side: Side) -> ChaCha8Rng {
    let side_bit = match side {
        Side::Right => 1u64,
        Side::Left => 2u64,
    };
    let mixed = seed
        .wrapping_mul(0x9E3779B97F4A7C15)
        .wrapping_add((node as u64) << 24)
        .wrapping_add((summand as u64) << 8)
        .wrapping_add(side_bit);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Breadth-first exploration from the stalk complex. Deterministic for a
/// fixed seed and depth regardless of the worker count: the frontier is
/// evaluated in parallel but merged in canonical task order.
pub fn explore(algebra: Arc<Algebra>, opts: &ExploreOptions) -> Result<MutationGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let root = GraphNode::root(algebra.clone(), &mut rng)?;
    let mut nodes = vec![root];
    let mut edges: Vec<GraphEdge> = Vec::new();
    let mut frontier = vec![0usize];

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CoreError::Verification(format!("worker pool: {e}")))?;

    for _round in 0..opts.depth {
        if frontier.is_empty() {
            break;
        }
        // Canonical task list.
        let mut tasks: Vec<(usize, usize, Side)> = Vec::new();
        for &ni in &frontier {
            for s in 0..nodes[ni].summand_count() {
                for &side in &opts.sides {
                    tasks.push((ni, s, side));
                }
            }
        }
        tasks.sort_unstable();
        let node_refs: Vec<GraphNode> = nodes.clone();
        let results: Vec<((usize, usize, Side), Result<MutationResult>)> = pool.install(|| {
            tasks
                .par_iter()
                .map(|&(ni, s, side)| {
                    let mut local = task_rng(opts.seed, ni, s, side);
                    ((ni, s, side), mutate_node(&node_refs[ni], s, side, &mut local))
                })
                .collect()
        });

        let mut next_frontier = Vec::new();
        for ((ni, s, side), result) in results {
            let mu = result?;
            let mut word = nodes[ni].word.clone();
            word.push(MutationStep { summand: s, side });
            let candidate = GraphNode::from_parts(nodes[ni].complex.algebra.clone(), mu.parts, word)?;
            // Dedup: fingerprint bucket, then isomorphism.
            let mut found = None;
            for (idx, existing) in nodes.iter().enumerate() {
                if existing.fingerprint == candidate.fingerprint
                    && iso_test(&existing.complex, &candidate.complex, &mut rng)?.is_some()
                {
                    found = Some(idx);
                    break;
                }
            }
            let to = match found {
                Some(idx) => idx,
                None => {
                    nodes.push(candidate);
                    next_frontier.push(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            let edge = GraphEdge { from: ni, summand: s, side, to };
            if !edges.contains(&edge) {
                if opts.verify_inverses {
                    verify_inverse_mutation(&nodes, &edge, &mut rng)?;
                }
                edges.push(edge);
            }
        }
        frontier = next_frontier;
    }

    // Fill the order cache for all node pairs.
    let mut order = BTreeMap::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            let geq = relation(&nodes[i].complex, &nodes[j].complex, Relation::Geq)?;
            order.insert((i, j), geq);
        }
    }

    Ok(MutationGraph {
        algebra,
        nodes,
        edges,
        order,
        depth: opts.depth,
        seed: opts.seed,
        sides: opts.sides.clone(),
    })
}

/// The summand of `to` that is not isomorphic to any complement summand of
/// `from` is the replaced one; mutating back there must return to `from`.
fn verify_inverse_mutation(
    nodes: &[GraphNode],
    edge: &GraphEdge,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let from = &nodes[edge.from];
    let to = &nodes[edge.to];
    let complement: Vec<&ProjComplex> = from
        .parts
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != edge.summand)
        .map(|(_, p)| p)
        .collect();
    let mut replaced = None;
    for (idx, part) in to.parts.iter().enumerate() {
        let mut in_complement = false;
        for c in &complement {
            if iso_test(part, c, rng)?.is_some() {
                in_complement = true;
                break;
            }
        }
        if !in_complement {
            replaced = Some(idx);
            break;
        }
    }
    let Some(new_summand) = replaced else {
        return Err(CoreError::MutationPostcondition(
            "mutation produced no new summand".into(),
        ));
    };
    let back_side = match edge.side {
        Side::Right => Side::Left,
        Side::Left => Side::Right,
    };
    let back = mutate_node(to, new_summand, back_side, rng)?.complex;
    if iso_test(&back, &from.complex, rng)?.is_none() {
        return Err(CoreError::MutationPostcondition(format!(
            "{} mutation does not invert the {} edge",
            back_side, edge.side
        )));
    }
    Ok(())
}

impl MutationGraph {
    /// Nodes whose support lies in the two adjacent degrees {−1, 0}.
    pub fn two_term_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_two_term()).collect()
    }

    /// Each node carries its mutation-provenance certificate.
    pub fn certificate(&self, node: usize) -> SiltingCertificate {
        SiltingCertificate::MutationProvenance(self.nodes[node].word.clone())
    }

    /// Antisymmetry and transitivity of ≥ on the explored nodes.
    pub fn verify_partial_order(&self, rng: &mut ChaCha8Rng) -> Result<()> {
        let n = self.nodes.len();
        for i in 0..n {
            if !self.order[&(i, i)] {
                return Err(CoreError::Verification("≥ is not reflexive".into()));
            }
            for j in 0..n {
                if i != j && self.order[&(i, j)] && self.order[&(j, i)] {
                    // Antisymmetry: both directions force isomorphism.
                    if iso_test(&self.nodes[i].complex, &self.nodes[j].complex, rng)?.is_none() {
                        return Err(CoreError::Verification(format!(
                            "≥ fails antisymmetry on nodes {i}, {j}"
                        )));
                    }
                }
                for k in 0..n {
                    if self.order[&(i, j)] && self.order[&(j, k)] && !self.order[&(i, k)] {
                        return Err(CoreError::Verification(format!(
                            "≥ fails transitivity on nodes {i}, {j}, {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Result of matching one graph into another through a reduction context.
#[derive(Debug, Clone)]
pub struct PosetCompareReport {
    /// g1 node → matched g2 node.
    pub node_map: Vec<usize>,
    /// g2 nodes with no preimage.
    pub unmatched_right: Vec<usize>,
    pub edges_preserved: bool,
    pub order_preserved_and_reflected: bool,
}

impl PosetCompareReport {
    pub fn is_bijective(&self) -> bool {
        self.unmatched_right.is_empty()
    }

    pub fn complete(&self) -> bool {
        self.is_bijective() && self.edges_preserved && self.order_preserved_and_reflected
    }
}

/// Map every node of `g1` through the reduction and match it against `g2`
/// by isomorphism; check injectivity, edge preservation, and agreement of
/// the cached order relations in both directions.
pub fn poset_compare(
    g1: &MutationGraph,
    g2: &MutationGraph,
    via: &ReductionContext,
) -> Result<PosetCompareReport> {
    if *g1.algebra != *via.source || *g2.algebra != *via.target {
        return Err(CoreError::Precondition(
            "reduction context does not connect the two graphs".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g1.seed ^ 0xB17EC7);
    let mut node_map = Vec::with_capacity(g1.nodes.len());
    for node in &g1.nodes {
        let reduced = reduce(via, &node.complex)?;
        let mut target = None;
        for (j, other) in g2.nodes.iter().enumerate() {
            if iso_test(&reduced, &other.complex, &mut rng)?.is_some() {
                target = Some(j);
                break;
            }
        }
        let Some(j) = target else {
            return Err(CoreError::Verification(format!(
                "reduced node {:?} has no match in the target graph",
                node.fingerprint
            )));
        };
        node_map.push(j);
    }
    // Injectivity.
    let mut seen = vec![false; g2.nodes.len()];
    for &j in &node_map {
        if seen[j] {
            return Err(CoreError::Verification(
                "reduction map is not injective on nodes".into(),
            ));
        }
        seen[j] = true;
    }
    let unmatched_right: Vec<usize> = (0..g2.nodes.len()).filter(|&j| !seen[j]).collect();
    // Edge preservation: each g1 edge maps onto some g2 edge with the same
    // side.
    let mut edges_preserved = true;
    for e in &g1.edges {
        let mapped_from = node_map[e.from];
        let mapped_to = node_map[e.to];
        if !g2
            .edges
            .iter()
            .any(|f| f.from == mapped_from && f.to == mapped_to && f.side == e.side)
        {
            edges_preserved = false;
        }
    }
    // Order preservation and reflection on all cached pairs.
    let mut order_ok = true;
    for i in 0..g1.nodes.len() {
        for j in 0..g1.nodes.len() {
            let up = g1.order[&(i, j)];
            let down = g2.order[&(node_map[i], node_map[j])];
            if up != down {
                order_ok = false;
            }
        }
    }
    Ok(PosetCompareReport {
        node_map,
        unmatched_right,
        edges_preserved,
        order_preserved_and_reflected: order_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tensor_trivial_extension;
    use crate::fixtures;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn stalk_is_presilting_and_pretilting() {
        let c = ProjComplex::stalk(Arc::new(fixtures::a2()));
        assert!(is_presilting(&c).unwrap());
        assert!(is_pretilting(&c).unwrap());
    }

    #[test]
    fn t_complex_is_not_presilting() {
        let r2 = Arc::new(tensor_trivial_extension(&fixtures::point(), 2).unwrap());
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![0usize]);
        let mut d = MorphismMatrix::zero(&r2, vec![0], vec![0]);
        d.set(0, 0, r2.t_elem());
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let c = ProjComplex::new(r2, terms, diffs).unwrap();
        assert!(!is_presilting(&c).unwrap());
    }

    #[test]
    fn shifted_stalk_sum_is_not_presilting() {
        // Λ ⊕ Λ[1] over kA₂: Hom(Λ[1], Λ[1+(−1)]) survives at i = 1 from
        // Hom(Λ, Λ): the pair fails ≥.
        let c = ProjComplex::stalk(Arc::new(fixtures::a2()));
        let sum = c.direct_sum(&c.shift(1));
        assert!(!is_presilting(&sum).unwrap());
        assert!(!is_pretilting(&sum).unwrap());
    }

    #[test]
    fn k0_of_stalk_is_identity() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a.clone());
        let parts = decompose(&c, &mut rng()).unwrap();
        let (rows, unimodular) = k0_matrix(&parts, &a);
        assert!(unimodular);
        let mut sorted = rows.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![0, 1], vec![1, 0]]);

        // Shift by 5 flips the sign; still unimodular.
        let parts5 = decompose(&c.shift(5), &mut rng()).unwrap();
        let (rows5, uni5) = k0_matrix(&parts5, &a);
        assert!(uni5);
        assert!(rows5.iter().all(|r| r.iter().sum::<i64>() == -1));
    }

    #[test]
    fn k0_rejects_proper_subsets() {
        let a = Arc::new(fixtures::a2());
        let p1 = ProjComplex::stalk_of(a.clone(), vec![0], 0);
        let parts = decompose(&p1, &mut rng()).unwrap();
        let (_, unimodular) = k0_matrix(&parts, &a);
        assert!(!unimodular);
    }

    #[test]
    fn certify_stalk_with_empty_word() {
        let c = ProjComplex::stalk(Arc::new(fixtures::a2()));
        let cert = certify_silting(&c, Some(&[]), &mut rng()).unwrap();
        match cert {
            Certification::Certified(SiltingCertificate::MutationProvenance(w)) => {
                assert!(w.is_empty())
            }
            other => panic!("expected provenance certificate, got {other:?}"),
        }
    }

    #[test]
    fn certify_rejects_single_summand() {
        let a = Arc::new(fixtures::a2());
        let p1 = ProjComplex::stalk_of(a, vec![0], 0);
        match certify_silting(&p1, None, &mut rng()).unwrap() {
            Certification::Rejected(_) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn mutate_local_algebra_gives_shift() {
        let a = Arc::new(fixtures::local_loop(2));
        let node = GraphNode::root(a, &mut rng()).unwrap();
        let mu = mutate_node(&node, 0, Side::Right, &mut rng()).unwrap().complex;
        assert!(iso_test(&mu, &node.complex.shift(1), &mut rng()).unwrap().is_some());
    }

    #[test]
    fn mutate_a2_at_first_projective() {
        // Right mutation of Λ at e₁Λ: Hom(e₁Λ, e₂Λ) = span{α}: result is
        // (e₁Λ →α e₂Λ) ⊕ e₂Λ, a two-term silting complex.
        let a = Arc::new(fixtures::a2());
        let node = GraphNode::root(a.clone(), &mut rng()).unwrap();
        // parts sorted by shape: part 0 = e₁Λ (vertex 0), part 1 = e₂Λ.
        assert_eq!(node.parts[0].term(0), &[0]);
        let mu = mutate_node(&node, 0, Side::Right, &mut rng()).unwrap().complex;
        // Expected: summands (e₁Λ → e₂Λ) and e₂Λ.
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![1usize]);
        let mut d = MorphismMatrix::zero(&a, vec![0], vec![1]);
        d.set(0, 0, a.arrow_class(0));
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let cone_c = ProjComplex::new(a.clone(), terms, diffs).unwrap();
        let expected = cone_c.direct_sum(&ProjComplex::stalk_of(a, vec![1], 0));
        assert!(iso_test(&mu, &expected, &mut rng()).unwrap().is_some());
    }

    #[test]
    fn mutate_a2_at_second_projective() {
        // Hom(e₂Λ, e₁Λ) = 0: zero approximation, cone = shift.
        let a = Arc::new(fixtures::a2());
        let node = GraphNode::root(a.clone(), &mut rng()).unwrap();
        let mu = mutate_node(&node, 1, Side::Right, &mut rng()).unwrap().complex;
        let expected =
            ProjComplex::stalk_of(a.clone(), vec![1], 0).shift(1).direct_sum(&ProjComplex::stalk_of(a, vec![0], 0));
        assert!(iso_test(&mu, &expected, &mut rng()).unwrap().is_some());
    }

    #[test]
    fn explore_local_algebra_right_is_a_path_of_shifts() {
        let a = Arc::new(fixtures::local_loop(2));
        let opts = ExploreOptions {
            depth: 2,
            sides: vec![Side::Right],
            ..Default::default()
        };
        let g = explore(a, &opts).unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert_eq!(g.edges.len(), 2);
    }

    #[test]
    fn explore_depth_zero_is_single_node() {
        let a = Arc::new(fixtures::a2());
        let opts = ExploreOptions { depth: 0, ..Default::default() };
        let g = explore(a, &opts).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn explore_is_deterministic_across_worker_counts() {
        let a = Arc::new(fixtures::a2());
        let one = explore(
            a.clone(),
            &ExploreOptions { depth: 2, jobs: 1, ..Default::default() },
        )
        .unwrap();
        let four = explore(a, &ExploreOptions { depth: 2, jobs: 4, ..Default::default() }).unwrap();
        let fp1: Vec<&String> = one.nodes.iter().map(|n| &n.fingerprint).collect();
        let fp4: Vec<&String> = four.nodes.iter().map(|n| &n.fingerprint).collect();
        assert_eq!(fp1, fp4);
        assert_eq!(one.edges, four.edges);
    }

    #[test]
    fn explored_partial_order_holds() {
        let a = Arc::new(fixtures::a2());
        let g = explore(a, &ExploreOptions { depth: 2, ..Default::default() }).unwrap();
        g.verify_partial_order(&mut rng()).unwrap();
    }

    #[test]
    fn two_term_nodes_of_a2_are_five() {
        let a = Arc::new(fixtures::a2());
        let g = explore(a, &ExploreOptions { depth: 3, ..Default::default() }).unwrap();
        assert_eq!(g.two_term_nodes().len(), 5);
    }

    #[test]
    fn poset_compare_identity() {
        let l2 = Arc::new(tensor_trivial_extension(&fixtures::a2(), 2).unwrap());
        let g = explore(l2.clone(), &ExploreOptions { depth: 1, ..Default::default() }).unwrap();
        let ctx = ReductionContext::to_level(l2, 2).unwrap();
        let report = poset_compare(&g, &g, &ctx).unwrap();
        assert!(report.complete());
        assert_eq!(report.node_map, (0..g.nodes.len()).collect::<Vec<_>>());
    }

    #[test]
    fn poset_compare_rejects_unrelated_algebras() {
        let a2 = Arc::new(fixtures::a2());
        let loop2 = Arc::new(fixtures::local_loop(2));
        let g1 = explore(a2.clone(), &ExploreOptions { depth: 1, ..Default::default() }).unwrap();
        let g2 = explore(loop2, &ExploreOptions { depth: 1, ..Default::default() }).unwrap();
        let ctx = ReductionContext::to_level(a2, 1).unwrap();
        assert!(poset_compare(&g1, &g2, &ctx).is_err());
    }
}

