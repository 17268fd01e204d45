//! Brute-force oracles used only by the verification suites and tests to
//! discharge derived example values and acceptance criteria.
//!
//! These deliberately avoid the main algorithm paths: dimensions are
//! computed from raw linear systems assembled here from scratch (shared
//! scalar and matrix arithmetic only), path counting runs its own sparse
//! elimination, and the two-term census enumerates complexes directly.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraPresentation, Coeffs};
use crate::complexes::{MorphismMatrix, ProjComplex};
use crate::error::{CoreError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{rows_matrix, Matrix};

/// Sparse row for the relation-span elimination.
type SparseRow = BTreeMap<usize, Scalar>;

fn sparse_insert(pivots: &mut BTreeMap<usize, SparseRow>, mut row: SparseRow) {
    loop {
        row.retain(|_, c| !c.is_zero());
        let Some((&lead, coeff)) = row.iter().next() else {
            return;
        };
        let coeff = coeff.clone();
        match pivots.get(&lead) {
            Some(pivot_row) => {
                // row ← row − coeff·pivot_row (pivot is normalized).
                for (k, v) in pivot_row {
                    let entry = row.entry(*k).or_insert_with(|| coeff.field().zero());
                    *entry = entry.sub(&coeff.mul(v));
                }
            }
            None => {
                let inv = coeff.inv().unwrap();
                let normalized: SparseRow =
                    row.iter().map(|(k, v)| (*k, v.mul(&inv))).collect();
                pivots.insert(lead, normalized);
                return;
            }
        }
    }
}

/// Dimension of kQ/(⟨relations⟩ + J^N) by enumerating all paths of length
/// < N and eliminating the full two-sided relation span.
pub fn oracle_path_count(p: &AlgebraPresentation) -> Result<usize> {
    let quiver = &p.quiver;
    let bound = p.nilpotency_bound;
    // Paths as (source, arrow list), vertices first, then by length.
    let mut paths: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for v in 0..quiver.vertices.len() {
        index.insert((v, vec![]), paths.len());
        paths.push((v, vec![]));
    }
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    for _ in 1..bound {
        let mut next = Vec::new();
        for &pi in &frontier {
            let (src, arrows) = paths[pi].clone();
            let tail_target = if arrows.is_empty() {
                src
            } else {
                quiver.arrows[arrows[0]].target
            };
            for (ai, arrow) in quiver.arrows.iter().enumerate() {
                if arrow.source == tail_target {
                    let mut ext = vec![ai];
                    ext.extend(&arrows);
                    let key = (src, ext.clone());
                    let id = paths.len();
                    index.insert(key, id);
                    paths.push((src, ext));
                    next.push(id);
                }
            }
        }
        frontier = next;
    }

    let arrow_by_name = |name: &str| -> Result<usize> {
        quiver
            .arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| CoreError::Presentation(format!("unknown arrow {name}")))
    };
    // Resolve relation terms to (coeff, arrow list, source, target).
    let mut resolved: Vec<Vec<(Scalar, Vec<usize>, usize, usize)>> = Vec::new();
    for rel in &p.relations {
        let mut terms = Vec::new();
        for (coeff, path) in &rel.terms {
            if coeff.is_zero() {
                continue;
            }
            let arrows: Vec<usize> = if path.len() == 1
                && quiver.vertices.iter().any(|v| v == &path[0])
            {
                vec![]
            } else {
                path.iter().map(|n| arrow_by_name(n)).collect::<Result<_>>()?
            };
            let (src, tgt) = if arrows.is_empty() {
                let v = quiver.vertices.iter().position(|v| v == &path[0]).unwrap();
                (v, v)
            } else {
                (
                    quiver.arrows[*arrows.last().unwrap()].source,
                    quiver.arrows[arrows[0]].target,
                )
            };
            terms.push((coeff.clone(), arrows, src, tgt));
        }
        if !terms.is_empty() {
            resolved.push(terms);
        }
    }

    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for rel in &resolved {
        let (_, _, src, tgt) = rel[0].clone();
        let us: Vec<usize> = (0..paths.len()).filter(|&i| paths[i].0 == tgt).collect();
        let ws: Vec<usize> = (0..paths.len())
            .filter(|&i| {
                let (s, arrows) = &paths[i];
                let t = if arrows.is_empty() { *s } else { quiver.arrows[arrows[0]].target };
                t == src
            })
            .collect();
        for &u in &us {
            for &w in &ws {
                let mut row: SparseRow = BTreeMap::new();
                for (coeff, arrows, _, _) in rel {
                    let mut full = paths[u].1.clone();
                    full.extend(arrows);
                    full.extend(&paths[w].1);
                    if let Some(&pi) = index.get(&(paths[w].0, full)) {
                        let entry = row.entry(pi).or_insert_with(|| p.field.zero());
                        *entry = entry.add(coeff);
                    }
                }
                if !row.is_empty() {
                    sparse_insert(&mut pivots, row);
                }
            }
        }
    }
    Ok(paths.len() - pivots.len())
}

/// One unknown of the raw chain-map system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Unknown {
    degree: i64,
    row: usize,
    col: usize,
    block_elem: usize,
}

/// Enumerate the unknowns of maps L^j → M^{i+j}.
fn hom_unknowns(l: &ProjComplex, m: &ProjComplex, i: i64) -> Vec<Unknown> {
    let a = &l.algebra;
    let mut out = Vec::new();
    for (&j, lterm) in l.terms() {
        let mterm = m.term(i + j);
        for (row, &tv) in mterm.iter().enumerate() {
            for (col, &sv) in lterm.iter().enumerate() {
                for &b in a.block(sv, tv) {
                    out.push(Unknown { degree: j, row, col, block_elem: b });
                }
            }
        }
    }
    out
}

/// Evaluate a vector of unknowns into per-degree entry maps.
fn unknowns_to_entries(
    unknowns: &[Unknown],
    values: &[Scalar],
    a: &Algebra,
) -> BTreeMap<(i64, usize, usize), Coeffs> {
    let mut out: BTreeMap<(i64, usize, usize), Coeffs> = BTreeMap::new();
    for (u, v) in unknowns.iter().zip(values) {
        if v.is_zero() {
            continue;
        }
        let entry = out
            .entry((u.degree, u.row, u.col))
            .or_insert_with(|| a.zero_elem());
        entry[u.block_elem] = entry[u.block_elem].add(v);
    }
    out
}

/// dim Hom_{Hot}(L, M[i]) computed from two raw linear systems: the chain
/// condition φ^{j+1}∘d_L = (−1)^i·d_M∘φ^j, and the null-homotopy image
/// h ↦ h^{j+1}∘d_L + (−1)^i·d_M∘h^j.
pub fn oracle_hom_dim(l: &ProjComplex, m: &ProjComplex, i: i64) -> Result<usize> {
    if *l.algebra != *m.algebra {
        return Err(CoreError::AlgebraMismatch);
    }
    let a = l.algebra.clone();
    let field = a.field;
    let sign = if i.rem_euclid(2) == 0 { field.one() } else { field.one().neg() };

    let unknowns = hom_unknowns(l, m, i);
    if unknowns.is_empty() {
        return Ok(0);
    }
    let position: BTreeMap<Unknown, usize> =
        unknowns.iter().enumerate().map(|(k, &u)| (u, k)).collect();

    // Chain-condition rows: for each degree j, each target summand r of
    // M^{i+j+1}, each source summand s of L^j, each algebra coordinate.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let degrees: Vec<i64> = l.terms().keys().copied().collect();
    for &j in &degrees {
        let dl = l.diff(j);
        let dm = m.diff(i + j);
        let target_term = m.term(i + j + 1);
        let source_term = l.term(j);
        if target_term.is_empty() || source_term.is_empty() {
            continue;
        }
        for r in 0..target_term.len() {
            for s in 0..source_term.len() {
                // Row block: Σ_k φ^{j+1}[r,k]·dl[k,s] − sign·Σ_k dm[r,k]·φ^j[k,s].
                let mut coeff_rows: Vec<Vec<Scalar>> =
                    vec![vec![field.zero(); unknowns.len()]; a.dim()];
                for k in 0..dl.rows() {
                    // Unknown φ^{j+1}[r,k] over block basis.
                    for &b in a.block(dl.target[k], target_term[r]) {
                        let u = Unknown { degree: j + 1, row: r, col: k, block_elem: b };
                        if let Some(&pos) = position.get(&u) {
                            let prod = a.elem_mul(&a.basis_elem(b), dl.at(k, s));
                            for (coord, c) in prod.iter().enumerate() {
                                if !c.is_zero() {
                                    coeff_rows[coord][pos] = coeff_rows[coord][pos].add(c);
                                }
                            }
                        }
                    }
                }
                for k in 0..dm.cols() {
                    for &b in a.block(source_term[s], dm.source[k]) {
                        let u = Unknown { degree: j, row: k, col: s, block_elem: b };
                        if let Some(&pos) = position.get(&u) {
                            let prod = a.elem_mul(dm.at(r, k), &a.basis_elem(b));
                            for (coord, c) in prod.iter().enumerate() {
                                if !c.is_zero() {
                                    coeff_rows[coord][pos] =
                                        coeff_rows[coord][pos].sub(&sign.mul(c));
                                }
                            }
                        }
                    }
                }
                rows.extend(coeff_rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
            }
        }
    }
    let system = rows_matrix(field, unknowns.len(), &rows);
    let chain_space = system.kernel_basis();
    if chain_space.is_empty() {
        return Ok(0);
    }

    // Null-homotopy images.
    let h_unknowns = hom_unknowns(l, m, i - 1);
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    for (hk, hu) in h_unknowns.iter().enumerate() {
        let _ = hk;
        // Basis homotopy: single block element at (degree, row, col).
        let mut h_entries: BTreeMap<(i64, usize, usize), Coeffs> = BTreeMap::new();
        let mut e = a.zero_elem();
        e[hu.block_elem] = field.one();
        h_entries.insert((hu.degree, hu.row, hu.col), e);
        // Its boundary: Φ(h)^j = h^{j+1}∘d_L^j + sign·d_M^{i+j−1}∘h^j.
        let mut img = vec![field.zero(); unknowns.len()];
        for &j in &degrees {
            let dl = l.diff(j);
            let dm = m.diff(i + j - 1);
            let target_term = m.term(i + j);
            let source_term = l.term(j);
            if target_term.is_empty() || source_term.is_empty() {
                continue;
            }
            for r in 0..target_term.len() {
                for s in 0..source_term.len() {
                    let mut acc = a.zero_elem();
                    // h^{j+1}[r, k]·dl[k, s].
                    for k in 0..dl.rows() {
                        if let Some(h) = h_entries.get(&(j + 1, r, k)) {
                            acc = a.elem_add(&acc, &a.elem_mul(h, dl.at(k, s)));
                        }
                    }
                    // sign·dm[r, k]·h^j[k, s].
                    for k in 0..dm.cols() {
                        if let Some(h) = h_entries.get(&(j, k, s)) {
                            let p = a.elem_mul(dm.at(r, k), h);
                            acc = a.elem_add(&acc, &a.elem_scale(&sign, &p));
                        }
                    }
                    for (b, c) in acc.iter().enumerate() {
                        if !c.is_zero() {
                            let u = Unknown { degree: j, row: r, col: s, block_elem: b };
                            let pos = position[&u];
                            img[pos] = img[pos].add(c);
                        }
                    }
                }
            }
        }
        if img.iter().any(|c| !c.is_zero()) {
            images.push(img);
        }
    }
    let boundary_rank = rows_matrix(field, unknowns.len(), &images).rank();
    Ok(chain_space.len() - boundary_rank)
}

/// A candidate two-term complex: per-vertex multiplicities in degrees −1
/// and 0 with disjoint supports, together with one sampled presilting
/// representative when it exists.
#[derive(Debug, Clone)]
pub struct TwoTermCandidate {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub representative: ProjComplex,
}

#[derive(Debug, Clone)]
pub struct TwoTermCensus {
    pub indecomposables: Vec<TwoTermCandidate>,
    pub silting_count: usize,
    /// Per-vertex multiplicity cap used in the enumeration.
    pub multiplicity_cap: usize,
    /// Per-degree total summand cap.
    pub total_cap: usize,
}

/// Exhaustive two-term census: enumerate disjoint per-vertex multiplicity
/// pairs within the logged caps, sample differentials for a presilting
/// representative, keep the indecomposable ones (local raw endomorphism
/// ring), and count the pairwise-compatible full subsets.
pub fn oracle_two_term_silting_count(a: &Arc<Algebra>, seed: u64) -> Result<TwoTermCensus> {
    let nv = a.vertex_count();
    if nv > 4 || a.dim() > 32 {
        return Err(CoreError::Precondition(format!(
            "two-term census guarded to ≤ 4 vertices and dimension ≤ 32; got {} vertices, dim {}",
            nv,
            a.dim()
        )));
    }
    let multiplicity_cap = 2usize;
    let total_cap = nv + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Assignments: each vertex gets (side, multiplicity).
    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let options_per_vertex = 1 + 2 * multiplicity_cap;
    let total_options = options_per_vertex.pow(nv as u32);
    for code in 0..total_options {
        let mut lower = vec![0usize; nv];
        let mut upper = vec![0usize; nv];
        let mut c = code;
        for v in 0..nv {
            let opt = c % options_per_vertex;
            c /= options_per_vertex;
            if opt == 0 {
                continue;
            }
            let mult = (opt - 1) % multiplicity_cap + 1;
            if opt <= multiplicity_cap {
                lower[v] = mult;
            } else {
                upper[v] = mult;
            }
        }
        let lsum: usize = lower.iter().sum();
        let usum: usize = upper.iter().sum();
        if lsum + usum == 0 || lsum > total_cap || usum > total_cap {
            continue;
        }
        candidates.push((lower, upper));
    }

    let mut indecomposables = Vec::new();
    for (lower, upper) in candidates {
        if let Some(rep) = sample_presilting_two_term(a, &lower, &upper, &mut rng)? {
            if raw_end_is_local(&rep)? {
                indecomposables.push(TwoTermCandidate { lower, upper, representative: rep });
            }
        }
    }

    // Pairwise compatibility: Hom(X, Y[1]) = 0 both ways.
    let k = indecomposables.len();
    let mut compatible = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                compatible[i][j] = true;
                continue;
            }
            compatible[i][j] = oracle_hom_dim(
                &indecomposables[i].representative,
                &indecomposables[j].representative,
                1,
            )? == 0;
        }
    }
    // Count size-n subsets with all pairs compatible in both directions.
    let mut count = 0usize;
    let mut chosen: Vec<usize> = Vec::new();
    fn backtrack(
        start: usize,
        chosen: &mut Vec<usize>,
        n: usize,
        k: usize,
        compatible: &[Vec<bool>],
        count: &mut usize,
    ) {
        if chosen.len() == n {
            *count += 1;
            return;
        }
        for next in start..k {
            if chosen.iter().all(|&c| compatible[c][next] && compatible[next][c]) {
                chosen.push(next);
                backtrack(next + 1, chosen, n, k, compatible, count);
                chosen.pop();
            }
        }
    }
    backtrack(0, &mut chosen, nv, k, &compatible, &mut count);

    Ok(TwoTermCensus { indecomposables, silting_count: count, multiplicity_cap, total_cap })
}

/// Sample differentials for the term pair until one is presilting (twelve
/// seeded attempts; the presilting locus is open, so a realizable pair is
/// found with overwhelming probability).
fn sample_presilting_two_term(
    a: &Arc<Algebra>,
    lower: &[usize],
    upper: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<Option<ProjComplex>> {
    let field = a.field;
    let mut lower_term = Vec::new();
    for (v, &mult) in lower.iter().enumerate() {
        lower_term.extend(std::iter::repeat(v).take(mult));
    }
    let mut upper_term = Vec::new();
    for (v, &mult) in upper.iter().enumerate() {
        upper_term.extend(std::iter::repeat(v).take(mult));
    }
    let mut terms = BTreeMap::new();
    if !lower_term.is_empty() {
        terms.insert(-1, lower_term.clone());
    }
    if !upper_term.is_empty() {
        terms.insert(0, upper_term.clone());
    }
    if lower_term.is_empty() || upper_term.is_empty() {
        // A stalk: no differential to choose.
        let c = ProjComplex::new(a.clone(), terms, BTreeMap::new())?;
        return Ok(if oracle_hom_dim(&c, &c, 1)? == 0 { Some(c) } else { None });
    }
    for _ in 0..12 {
        let mut d = MorphismMatrix::zero(a, lower_term.clone(), upper_term.clone());
        for r in 0..upper_term.len() {
            for s in 0..lower_term.len() {
                let mut e = a.zero_elem();
                for &b in a.block(lower_term[s], upper_term[r]) {
                    e[b] = field.from_i64(rng.gen_range(-4..=4));
                }
                d.set(r, s, e);
            }
        }
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let c = ProjComplex::new(a.clone(), terms.clone(), diffs)?;
        if oracle_hom_dim(&c, &c, 1)? == 0 {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Local endomorphism ring test by raw assembly: chain endomorphisms mod
/// null-homotopies, composition products, trace-form radical, quotient of
/// dimension one.
fn raw_end_is_local(c: &ProjComplex) -> Result<bool> {
    let a = c.algebra.clone();
    let field = a.field;
    let unknowns = hom_unknowns(c, c, 0);
    let position: BTreeMap<Unknown, usize> =
        unknowns.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let _ = &position;

    // Chain endomorphism space and boundary images via the raw systems.
    let chain_space = raw_chain_space(c)?;
    let boundaries = raw_boundaries(c)?;
    let boundary_rank = rows_matrix(field, unknowns.len(), &boundaries).rank();
    let end_dim = chain_space.len() - boundary_rank;
    if end_dim == 0 {
        return Ok(false);
    }
    if end_dim == 1 {
        return Ok(true);
    }
    // Class representatives: extend the boundary span inside the chain
    // space.
    let mut sieve = crate::linalg::EchelonSieve::new(unknowns.len());
    for b in &boundaries {
        sieve.insert(b);
    }
    let mut reps: Vec<Vec<Scalar>> = Vec::new();
    for z in &chain_space {
        if sieve.insert(z) {
            reps.push(z.clone());
        }
    }
    // Composition: entrywise algebra products.
    let compose = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let xe = unknowns_to_entries(&unknowns, x, &a);
        let ye = unknowns_to_entries(&unknowns, y, &a);
        let mut out = vec![field.zero(); unknowns.len()];
        for (uk, u) in unknowns.iter().enumerate() {
            // (x∘y)^j[r,s] = Σ_k x^j[r,k]·y^j[k,s]; collect the coordinate
            // of block element u.block_elem.
            let mid = c.term(u.degree).len();
            let mut acc = a.zero_elem();
            for kk in 0..mid {
                if let (Some(xv), Some(yv)) =
                    (xe.get(&(u.degree, u.row, kk)), ye.get(&(u.degree, kk, u.col)))
                {
                    acc = a.elem_add(&acc, &a.elem_mul(xv, yv));
                }
            }
            out[uk] = acc[u.block_elem].clone();
        }
        out
    };
    // Class coordinates: solve against [reps | boundaries].
    let mut cols: Vec<Vec<Scalar>> = reps.clone();
    cols.extend(boundaries.iter().cloned());
    let basis_mat =
        Matrix::from_fn(field, unknowns.len(), cols.len(), |i, j| cols[j][i].clone());
    let solver = crate::linalg::Solver::new(&basis_mat);
    let class_coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        let sol = solver
            .solve(v)
            .ok_or_else(|| CoreError::Verification("composite escaped the chain space".into()))?;
        Ok(sol[..reps.len()].to_vec())
    };
    let d = reps.len();
    let mut mult = vec![vec![vec![field.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            mult[i][j] = class_coords(&compose(&reps[i], &reps[j]))?;
        }
    }
    // Trace-form radical.
    if let FieldSpec::Prime(p) = field {
        if (p as usize) <= d {
            return Err(CoreError::Precondition(format!(
                "two-term census needs characteristic > {d}; got p = {p}"
            )));
        }
    }
    let left_mult = |x: usize| -> Matrix {
        Matrix::from_fn(field, d, d, |i, j| mult[x][j][i].clone())
    };
    let mats: Vec<Matrix> = (0..d).map(left_mult).collect();
    let mut gram = Matrix::zero(field, d, d);
    for i in 0..d {
        for j in 0..d {
            let prod = mats[i].mul(&mats[j]);
            let mut tr = field.zero();
            for k in 0..d {
                tr = tr.add(prod.at(k, k));
            }
            gram.set(i, j, tr);
        }
    }
    let rad_dim = gram.kernel_basis().len();
    Ok(d - rad_dim == 1)
}

/// Kernel basis of the chain-endomorphism condition at shift 0.
fn raw_chain_space(c: &ProjComplex) -> Result<Vec<Vec<Scalar>>> {
    let a = c.algebra.clone();
    let field = a.field;
    let unknowns = hom_unknowns(c, c, 0);
    let position: BTreeMap<Unknown, usize> =
        unknowns.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let degrees: Vec<i64> = c.terms().keys().copied().collect();
    for &j in &degrees {
        let dl = c.diff(j);
        let target_term = c.term(j + 1);
        let source_term = c.term(j);
        if target_term.is_empty() || source_term.is_empty() {
            continue;
        }
        for r in 0..target_term.len() {
            for s in 0..source_term.len() {
                let mut coeff_rows: Vec<Vec<Scalar>> =
                    vec![vec![field.zero(); unknowns.len()]; a.dim()];
                for k in 0..dl.rows() {
                    for &b in a.block(dl.target[k], target_term[r]) {
                        let u = Unknown { degree: j + 1, row: r, col: k, block_elem: b };
                        if let Some(&pos) = position.get(&u) {
                            let prod = a.elem_mul(&a.basis_elem(b), dl.at(k, s));
                            for (coord, cc) in prod.iter().enumerate() {
                                if !cc.is_zero() {
                                    coeff_rows[coord][pos] = coeff_rows[coord][pos].add(cc);
                                }
                            }
                        }
                    }
                }
                for k in 0..dl.cols() {
                    for &b in a.block(source_term[s], dl.source[k]) {
                        let u = Unknown { degree: j, row: k, col: s, block_elem: b };
                        if let Some(&pos) = position.get(&u) {
                            let prod = a.elem_mul(dl.at(r, k), &a.basis_elem(b));
                            for (coord, cc) in prod.iter().enumerate() {
                                if !cc.is_zero() {
                                    coeff_rows[coord][pos] = coeff_rows[coord][pos].sub(cc);
                                }
                            }
                        }
                    }
                }
                rows.extend(coeff_rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
            }
        }
    }
    Ok(rows_matrix(field, unknowns.len(), &rows).kernel_basis())
}

/// Boundary vectors dh + hd over all elementary homotopies.
fn raw_boundaries(c: &ProjComplex) -> Result<Vec<Vec<Scalar>>> {
    let a = c.algebra.clone();
    let field = a.field;
    let unknowns = hom_unknowns(c, c, 0);
    let position: BTreeMap<Unknown, usize> =
        unknowns.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let h_unknowns = hom_unknowns(c, c, -1);
    let degrees: Vec<i64> = c.terms().keys().copied().collect();
    let mut images = Vec::new();
    for hu in &h_unknowns {
        let mut h_entries: BTreeMap<(i64, usize, usize), Coeffs> = BTreeMap::new();
        let mut e = a.zero_elem();
        e[hu.block_elem] = field.one();
        h_entries.insert((hu.degree, hu.row, hu.col), e);
        let mut img = vec![field.zero(); unknowns.len()];
        for &j in &degrees {
            let dl = c.diff(j);
            let dm = c.diff(j - 1);
            let target_term = c.term(j);
            let source_term = c.term(j);
            if target_term.is_empty() || source_term.is_empty() {
                continue;
            }
            for r in 0..target_term.len() {
                for s in 0..source_term.len() {
                    let mut acc = a.zero_elem();
                    for k in 0..dl.rows() {
                        if let Some(h) = h_entries.get(&(j + 1, r, k)) {
                            acc = a.elem_add(&acc, &a.elem_mul(h, dl.at(k, s)));
                        }
                    }
                    for k in 0..dm.cols() {
                        if let Some(h) = h_entries.get(&(j, k, s)) {
                            acc = a.elem_add(&acc, &a.elem_mul(dm.at(r, k), h));
                        }
                    }
                    for (b, cc) in acc.iter().enumerate() {
                        if !cc.is_zero() {
                            let u = Unknown { degree: j, row: r, col: s, block_elem: b };
                            img[position[&u]] = img[position[&u]].add(cc);
                        }
                    }
                }
            }
        }
        if img.iter().any(|x| !x.is_zero()) {
            images.push(img);
        }
    }
    Ok(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn path_count_of_a2_is_three() {
        assert_eq!(oracle_path_count(&fixtures::a2_presentation()).unwrap(), 3);
    }

    #[test]
    fn path_count_of_truncated_loop() {
        assert_eq!(oracle_path_count(&fixtures::local_loop_presentation(2)).unwrap(), 2);
    }

    #[test]
    fn path_count_matches_brauer_algebras() {
        let p11 = fixtures::brauer_presentation(1, 1);
        assert_eq!(oracle_path_count(&p11).unwrap(), 18);
        assert_eq!(fixtures::brauer(1, 1).dim(), 18);
        let p21 = fixtures::brauer_presentation(2, 1);
        assert_eq!(oracle_path_count(&p21).unwrap(), fixtures::brauer(2, 1).dim());
    }

    #[test]
    fn oracle_hom_dim_on_stalk() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a.clone());
        assert_eq!(oracle_hom_dim(&c, &c, 0).unwrap(), a.dim());
        assert_eq!(oracle_hom_dim(&c, &c, 1).unwrap(), 0);
        assert_eq!(oracle_hom_dim(&c, &c, 5).unwrap(), 0);
    }

    #[test]
    fn oracle_hom_dim_of_t_complex() {
        let r2 = Arc::new(
            crate::algebra::tensor_trivial_extension(&fixtures::point(), 2).unwrap(),
        );
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![0usize]);
        let mut d = MorphismMatrix::zero(&r2, vec![0], vec![0]);
        d.set(0, 0, r2.t_elem());
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let c = ProjComplex::new(r2, terms, diffs).unwrap();
        assert_eq!(oracle_hom_dim(&c, &c, 1).unwrap(), 1);
        assert_eq!(oracle_hom_dim(&c, &c, 0).unwrap(), 2);
    }

    #[test]
    fn two_term_count_of_a2_is_five() {
        let a = Arc::new(fixtures::a2());
        let census = oracle_two_term_silting_count(&a, 99).unwrap();
        assert_eq!(census.silting_count, 5);
        assert_eq!(census.indecomposables.len(), 5);
    }

    #[test]
    fn two_term_count_of_local_loop_is_two() {
        let a = Arc::new(fixtures::local_loop(2));
        let census = oracle_two_term_silting_count(&a, 99).unwrap();
        assert_eq!(census.silting_count, 2);
    }

    #[test]
    fn two_term_count_of_the_point_is_two() {
        let a = Arc::new(fixtures::point());
        let census = oracle_two_term_silting_count(&a, 99).unwrap();
        assert_eq!(census.silting_count, 2);
    }
}

