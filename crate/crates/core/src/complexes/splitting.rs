//! Decomposition of minimal complexes into indecomposable summands, and
//! isomorphism testing in the homotopy category.
//!
//! Splitting goes through the endomorphism algebra E = H⁰(Hom•(c,c)):
//! radical by the trace bilinear form, an idempotent of E/rad E found by
//! right-ideal or minimal-polynomial splitting, Newton lifts back to a
//! chain-level idempotent, then a degreewise rank factorization.

use std::collections::BTreeMap;
use std::sync::Arc;


use rand_chacha::ChaCha8Rng;

use super::{invert_morphism, minimize, ChainMap, MorphismMatrix, ProjComplex};
use crate::algebra::Algebra;
use crate::error::{CoreError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::homspaces::{end_algebra, hom0_basis, EndAlgebra};
use crate::linalg::Matrix;
use crate::poly::{coprime_split, extended_gcd, min_poly, Poly};

/// A finite-dimensional associative algebra given by structure constants,
/// used for the quotients of endomorphism rings during splitting.
#[derive(Debug, Clone)]
struct TableAlgebra {
    field: FieldSpec,
    mult: Vec<Vec<Vec<Scalar>>>,
    one: Vec<Scalar>,
}

impl TableAlgebra {
    fn dim(&self) -> usize {
        self.one.len()
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].mul(&y[j]);
                for k in 0..d {
                    if !self.mult[i][j][k].is_zero() {
                        out[k] = out[k].add(&c.mul(&self.mult[i][j][k]));
                    }
                }
            }
        }
        out
    }

    fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                let mut e = vec![self.field.zero(); d];
                e[j] = self.field.one();
                self.mul(x, &e)
            })
            .collect();
        Matrix::from_fn(self.field, d, d, |i, j| cols[j][i].clone())
    }

    fn eval_poly(&self, p: &Poly, x: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut acc = vec![self.field.zero(); d];
        for c in p.coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            for k in 0..d {
                acc[k] = acc[k].add(&c.mul(&self.one[k]));
            }
        }
        acc
    }
}

/// Radical of E by the trace form tr(L_x · L_y); valid in characteristic 0
/// or p > dim E (enforced for prime fields).
fn radical_by_trace(alg: &TableAlgebra) -> Result<Vec<Vec<Scalar>>> {
    let d = alg.dim();
    if let FieldSpec::Prime(p) = alg.field {
        if (p as usize) <= d {
            return Err(CoreError::Splitting(format!(
                "trace-form radical needs characteristic > dim E = {d}; got p = {p}"
            )));
        }
    }
    let left_mults: Vec<Matrix> = (0..d)
        .map(|i| {
            let mut e = vec![alg.field.zero(); d];
            e[i] = alg.field.one();
            alg.left_mult(&e)
        })
        .collect();
    let mut gram = Matrix::zero(alg.field, d, d);
    for i in 0..d {
        for j in 0..=i {
            let prod = left_mults[i].mul(&left_mults[j]);
            let mut tr = alg.field.zero();
            for k in 0..d {
                tr = tr.add(prod.at(k, k));
            }
            gram.set(i, j, tr.clone());
            gram.set(j, i, tr);
        }
    }
    Ok(gram.kernel_basis())
}

/// The quotient algebra E/rad with a linear section.
struct SemisimpleQuotient {
    alg: TableAlgebra,
    /// dim(E) × dim(Ē).
    section: Matrix,
}

fn quotient_by_radical(alg: &TableAlgebra, radical: &[Vec<Scalar>]) -> SemisimpleQuotient {
    let field = alg.field;
    let d = alg.dim();
    let rad_mat = crate::linalg::rows_matrix(field, d, radical);
    let (rref, pivots) = rad_mat.rref();
    let live: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
    let project_vec = |v: &[Scalar]| -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &piv) in pivots.iter().enumerate() {
            if !v[piv].is_zero() {
                let c = v[piv].clone();
                for k in 0..d {
                    let r = rref.at(row, k);
                    if !r.is_zero() {
                        v[k] = v[k].sub(&c.mul(r));
                    }
                }
            }
        }
        live.iter().map(|&i| v[i].clone()).collect()
    };
    let q = live.len();
    let mut mult = vec![vec![vec![field.zero(); q]; q]; q];
    for (qi, &bi) in live.iter().enumerate() {
        for (qj, &bj) in live.iter().enumerate() {
            let mut x = vec![field.zero(); d];
            x[bi] = field.one();
            let mut y = vec![field.zero(); d];
            y[bj] = field.one();
            mult[qi][qj] = project_vec(&alg.mul(&x, &y));
        }
    }
    let one = project_vec(&alg.one);
    let section = Matrix::from_fn(field, d, q, |i, j| {
        if live[j] == i {
            field.one()
        } else {
            field.zero()
        }
    });
    SemisimpleQuotient { alg: TableAlgebra { field, mult, one }, section }
}

/// A nontrivial idempotent of a semisimple algebra, or None when no
/// candidate splits it (the local case).
fn semisimple_idempotent(alg: &TableAlgebra, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Scalar>>> {
    let d = alg.dim();
    if d <= 1 {
        return Ok(None);
    }
    let field = alg.field;
    // Candidate elements: basis vectors, pair sums, then random combos.
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..d {
        let mut e = vec![field.zero(); d];
        e[i] = field.one();
        candidates.push(e);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut e = vec![field.zero(); d];
            e[i] = field.one();
            e[j] = field.one();
            candidates.push(e);
        }
    }
    for _ in 0..32 {
        let v: Vec<Scalar> = (0..d).map(|_| field.random_small(rng)).collect();
        candidates.push(v);
    }

    for x in &candidates {
        if x.iter().all(Scalar::is_zero) {
            continue;
        }
        let mu = min_poly(&alg.left_mult(x));
        if mu.coeffs.first().map_or(false, Scalar::is_zero) {
            // 0 is an eigenvalue of x: nonzero singular element; its right
            // ideal is generated by an idempotent.
            if let Some(e) = right_ideal_idempotent(alg, x)? {
                return Ok(Some(e));
            }
            continue;
        }
        // Invertible x: a coprime factorization of the minimal polynomial
        // splits the commutative subalgebra k[x].
        if let Some((f, g)) = coprime_split(&mu, rng) {
            if let Some(e) = crt_idempotent(alg, x, &f, &g)? {
                return Ok(Some(e));
            }
        }
    }
    Ok(None)
}

/// For nonzero singular x in a semisimple algebra, x·E = e·E for an
/// idempotent e: solve linearly for the left identity of the right ideal.
fn right_ideal_idempotent(alg: &TableAlgebra, x: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let field = alg.field;
    let d = alg.dim();
    let gens: Vec<Vec<Scalar>> = (0..d)
        .map(|j| {
            let mut e = vec![field.zero(); d];
            e[j] = field.one();
            alg.mul(x, &e)
        })
        .collect();
    let ideal = crate::linalg::span_basis(field, d, &gens);
    let r = ideal.len();
    if r == 0 || r == d {
        return Ok(None);
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for z in &ideal {
        let products: Vec<Vec<Scalar>> = ideal.iter().map(|bk| alg.mul(bk, z)).collect();
        for coord in 0..d {
            rows.push((0..r).map(|k| products[k][coord].clone()).collect::<Vec<_>>());
            rhs.push(z[coord].clone());
        }
    }
    let mat = crate::linalg::rows_matrix(field, r, &rows);
    let b = Matrix::from_fn(field, rhs.len(), 1, |i, _| rhs[i].clone());
    let Some(sol) = mat.solve(&b)? else {
        return Err(CoreError::Splitting(
            "right ideal of a semisimple algebra has no left identity".into(),
        ));
    };
    let mut e = vec![field.zero(); d];
    for k in 0..r {
        let c = sol.at(k, 0);
        for coord in 0..d {
            e[coord] = e[coord].add(&c.mul(&ideal[k][coord]));
        }
    }
    if alg.mul(&e, &e) != e {
        return Err(CoreError::Splitting("right-ideal idempotent failed its square check".into()));
    }
    if e.iter().all(Scalar::is_zero) || e == alg.one {
        return Ok(None);
    }
    Ok(Some(e))
}

/// CRT idempotent from a coprime factorization μ = f·g of the minimal
/// polynomial of x: e = (u·f)(x) with u·f + v·g = 1.
fn crt_idempotent(
    alg: &TableAlgebra,
    x: &[Scalar],
    f: &Poly,
    g: &Poly,
) -> Result<Option<Vec<Scalar>>> {
    let (d, u, _v) = extended_gcd(f, g);
    if !d.is_constant() {
        return Ok(None);
    }
    let uf = u.mul(f);
    let e = alg.eval_poly(&uf, x);
    if alg.mul(&e, &e) != e {
        return Ok(None);
    }
    if e.iter().all(Scalar::is_zero) || e == alg.one {
        return Ok(None);
    }
    Ok(Some(e))
}

/// Newton lift of an approximate idempotent along a nil ideal:
/// x ← 3x² − 2x³.
fn newton_lift(
    mul: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    start: Vec<Scalar>,
    max_iter: usize,
) -> Option<Vec<Scalar>> {
    let field = start.first().map(Scalar::field)?;
    let three = field.from_i64(3);
    let two = field.from_i64(2);
    let mut x = start;
    for _ in 0..max_iter {
        let x2 = mul(&x, &x);
        if x2 == x {
            return Some(x);
        }
        let x3 = mul(&x2, &x);
        x = x2
            .iter()
            .zip(&x3)
            .map(|(a, b)| three.mul(a).sub(&two.mul(b)))
            .collect();
    }
    None
}

/// A nontrivial idempotent of E = H⁰(Hom•(c, c)), as class coordinates.
fn end_ring_idempotent(e: &EndAlgebra, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Scalar>>> {
    let table = TableAlgebra { field: e.field, mult: e.mult.clone(), one: e.one.clone() };
    let radical = radical_by_trace(&table)?;
    let quotient = quotient_by_radical(&table, &radical);
    let Some(idem_bar) = semisimple_idempotent(&quotient.alg, rng)? else {
        return Ok(None);
    };
    let lifted0 = quotient.section.apply(&idem_bar);
    let lifted = newton_lift(|a, b| table.mul(a, b), lifted0, 64)
        .ok_or_else(|| CoreError::Splitting("Newton iteration failed to converge in E".into()))?;
    if lifted.iter().all(Scalar::is_zero) || lifted == table.one {
        return Err(CoreError::Splitting(
            "idempotent collapsed to a trivial one while lifting".into(),
        ));
    }
    Ok(Some(lifted))
}

/// One direct summand with its strict inclusion/projection chain maps.
#[derive(Debug, Clone)]
pub struct SummandWithMaps {
    pub complex: ProjComplex,
    /// part → ambient; strict chain map with project∘include = id.
    pub include: ChainMap,
    /// ambient → part.
    pub project: ChainMap,
}

/// Split a minimal complex along an exact chain-level idempotent into
/// (image part, complement part), both with verified factorizations.
fn split_by_idempotent(
    c: &ProjComplex,
    e: &ChainMap,
) -> Result<(SummandWithMaps, SummandWithMaps)> {
    let a: Arc<Algebra> = c.algebra.clone();
    let field = a.field;
    let one_minus_e = ChainMap::identity(c).add(&scale_chain_map(e, &field.one().neg()));

    let mut parts = Vec::new();
    for em in [e, &one_minus_e] {
        let mut terms: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut incl: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();
        let mut proj: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();
        for (&deg, term) in c.terms() {
            let comp = em.component(deg);
            // Per-vertex rank of ē picks the new summand multiset.
            let mut chosen_cols: Vec<usize> = Vec::new();
            for v in 0..a.vertex_count() {
                let cols: Vec<usize> = (0..term.len()).filter(|&s| term[s] == v).collect();
                if cols.is_empty() {
                    continue;
                }
                let eidx = a.vertex_idempotents[v];
                let bar = Matrix::from_fn(field, cols.len(), cols.len(), |r, s| {
                    comp.at(cols[r], cols[s])[eidx].clone()
                });
                let pivots = bar.image_pivot_columns();
                chosen_cols.extend(pivots.iter().map(|&p| cols[p]));
            }
            chosen_cols.sort_unstable();
            if chosen_cols.is_empty() {
                continue;
            }
            // u = e[:, chosen]: new summands → C^deg.
            let all_rows: Vec<usize> = (0..term.len()).collect();
            let u = comp.submatrix(&a, &all_rows, &chosen_cols);
            // Row subset with ū[rows, cols] invertible modulo the radical.
            let mut chosen_rows: Vec<usize> = Vec::new();
            for v in 0..a.vertex_count() {
                let rows: Vec<usize> = (0..term.len()).filter(|&r| term[r] == v).collect();
                let scols: Vec<usize> =
                    (0..chosen_cols.len()).filter(|&sc| term[chosen_cols[sc]] == v).collect();
                if scols.is_empty() {
                    continue;
                }
                let eidx = a.vertex_idempotents[v];
                let bar = Matrix::from_fn(field, rows.len(), scols.len(), |r, s| {
                    u.at(rows[r], scols[s])[eidx].clone()
                });
                let row_pivots = bar.transpose().image_pivot_columns();
                chosen_rows.extend(row_pivots.iter().map(|&p| rows[p]));
            }
            chosen_rows.sort_unstable();
            // p = (q∘u)⁻¹ ∘ q ∘ e, q the restriction to the chosen rows.
            let all_cols_u: Vec<usize> = (0..u.cols()).collect();
            let qu = u.submatrix(&a, &chosen_rows, &all_cols_u);
            let qu_inv = invert_morphism(&a, &qu).ok_or_else(|| {
                CoreError::Splitting("rank factorization produced a singular corner".into())
            })?;
            let all_cols_c: Vec<usize> = (0..term.len()).collect();
            let qe = comp.submatrix(&a, &chosen_rows, &all_cols_c);
            let p = qu_inv.compose(&a, &qe);
            terms.insert(deg, chosen_cols.iter().map(|&s| term[s]).collect());
            incl.insert(deg, u);
            proj.insert(deg, p);
        }
        // Differentials of the part: p∘d∘u.
        let mut diffs = BTreeMap::new();
        let degrees: Vec<i64> = terms.keys().copied().collect();
        for &deg in &degrees {
            if !terms.contains_key(&(deg + 1)) {
                continue;
            }
            let d = proj[&(deg + 1)]
                .compose(&a, &c.diff(deg))
                .compose(&a, &incl[&deg]);
            diffs.insert(deg, d);
        }
        let part = ProjComplex::new(a.clone(), terms, diffs)?;
        let include = ChainMap {
            source: part.clone(),
            target: c.clone(),
            components: incl.clone(),
        };
        let project = ChainMap {
            source: c.clone(),
            target: part.clone(),
            components: proj.clone(),
        };
        include.verify()?;
        project.verify()?;
        // p∘u = id and u∘p = e, entry-exact.
        for (&deg, u) in &incl {
            let p = &proj[&deg];
            let pu = p.compose(&a, u);
            let id = MorphismMatrix::identity(&a, part.term(deg).to_vec());
            if pu != id {
                return Err(CoreError::Splitting("p∘u ≠ id in rank factorization".into()));
            }
            let up = u.compose(&a, p);
            if up != em.component(deg) {
                return Err(CoreError::Splitting("u∘p ≠ e in rank factorization".into()));
            }
        }
        parts.push(SummandWithMaps { complex: part, include, project });
    }
    let complement = parts.pop().unwrap();
    let image = parts.pop().unwrap();
    for (&deg, term) in c.terms() {
        if image.complex.term(deg).len() + complement.complex.term(deg).len() != term.len() {
            return Err(CoreError::Splitting("split parts do not recombine".into()));
        }
    }
    Ok((image, complement))
}

fn scale_chain_map(f: &ChainMap, c: &Scalar) -> ChainMap {
    let a = &f.source.algebra;
    let components = f
        .components
        .iter()
        .map(|(&d, m)| {
            let mut mm = m.clone();
            for r in 0..m.rows() {
                for s in 0..m.cols() {
                    mm.set(r, s, a.elem_scale(c, m.at(r, s)));
                }
            }
            (d, mm)
        })
        .collect();
    ChainMap { source: f.source.clone(), target: f.target.clone(), components }
}

/// Decompose a minimal complex into indecomposables, keeping strict
/// inclusion/projection maps into the input.
pub fn decompose_with_maps(
    c: &ProjComplex,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<SummandWithMaps>> {
    if !c.is_minimal() {
        return Err(CoreError::Precondition(
            "decompose_with_maps requires a minimal complex".into(),
        ));
    }
    if c.is_zero() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let whole = SummandWithMaps {
        complex: c.clone(),
        include: ChainMap::identity(c),
        project: ChainMap::identity(c),
    };
    decompose_rec(whole, rng, &mut out)?;
    out.sort_by_key(|p| {
        (
            p.complex.min_degree().unwrap_or(0),
            format!("{:?}", p.complex.shape()),
        )
    });
    Ok(out)
}

fn decompose_rec(
    part: SummandWithMaps,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<SummandWithMaps>,
) -> Result<()> {
    if part.complex.total_summands() == 1 {
        out.push(part);
        return Ok(());
    }
    let e = end_algebra(&part.complex)?;
    let Some(idem_coords) = end_ring_idempotent(&e, rng)? else {
        out.push(part);
        return Ok(());
    };
    let rep = e.basis.combination(&idem_coords);
    let chain_idem = newton_lift_chain(&part.complex, rep)?;
    let (image, complement) = split_by_idempotent(&part.complex, &chain_idem)?;
    if image.complex.is_zero() || complement.complex.is_zero() {
        return Err(CoreError::Splitting(
            "nontrivial idempotent produced a trivial splitting".into(),
        ));
    }
    for sub in [image, complement] {
        let include = part.include.compose(&sub.include);
        let project = sub.project.compose(&part.project);
        decompose_rec(
            SummandWithMaps { complex: sub.complex, include, project },
            rng,
            out,
        )?;
    }
    Ok(())
}

/// Indecomposable summands of (the minimal model of) a complex.
pub fn decompose(c: &ProjComplex, rng: &mut ChaCha8Rng) -> Result<Vec<ProjComplex>> {
    let min = if c.is_minimal() { c.clone() } else { minimize(c)?.complex };
    Ok(decompose_with_maps(&min, rng)?.into_iter().map(|p| p.complex).collect())
}

fn newton_lift_chain(c: &ProjComplex, rep: ChainMap) -> Result<ChainMap> {
    let a = &c.algebra;
    let mut x = rep;
    // Null-homotopic endomorphisms of a minimal complex have radical
    // entries, so the discrepancy is nilpotent and the iteration closes.
    for _ in 0..(a.dim() + 4) {
        let x2 = x.compose(&x);
        let mut equal = true;
        for (&d, _) in c.terms() {
            if x2.component(d) != x.component(d) {
                equal = false;
                break;
            }
        }
        if equal {
            x.verify()?;
            return Ok(x);
        }
        let x3 = x2.compose(&x);
        let three = scale_chain_map(&x2, &a.field.from_i64(3));
        let minus_two = scale_chain_map(&x3, &a.field.from_i64(-2));
        x = three.add(&minus_two);
    }
    Err(CoreError::Splitting("chain-level Newton iteration did not converge".into()))
}

/// Decide isomorphism in the homotopy category; returns a witness chain map
/// (between the minimal models) on success.
pub fn iso_test(
    a: &ProjComplex,
    b: &ProjComplex,
    rng: &mut ChaCha8Rng,
) -> Result<Option<ChainMap>> {
    if *a.algebra != *b.algebra {
        return Err(CoreError::AlgebraMismatch);
    }
    let am = if a.is_minimal() { a.clone() } else { minimize(a)?.complex };
    let bm = if b.is_minimal() { b.clone() } else { minimize(b)?.complex };
    if am.is_zero() && bm.is_zero() {
        return Ok(Some(ChainMap::zero(am, bm)));
    }
    if am.shape() != bm.shape() {
        return Ok(None);
    }
    if hom_fingerprint(&am)? != hom_fingerprint(&bm)? {
        return Ok(None);
    }
    let basis = hom0_basis(&am, &bm)?;
    if basis.dim() == 0 {
        return Ok(None);
    }
    // Randomized acceptance: the individual basis classes, their sum, then
    // 16 random cocycle combinations.
    let field = am.algebra.field;
    let mut trials: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..basis.dim() {
        let mut v = vec![field.zero(); basis.dim()];
        v[i] = field.one();
        trials.push(v);
    }
    trials.push(vec![field.one(); basis.dim()]);
    for _ in 0..16 {
        trials.push((0..basis.dim()).map(|_| field.random_small(rng)).collect());
    }
    for t in trials {
        let f = basis.combination(&t);
        if f.invertible_mod_radical() {
            f.verify()?;
            return Ok(Some(f));
        }
    }
    decompose_and_match(&am, &bm, rng)
}

fn hom_fingerprint(c: &ProjComplex) -> Result<Vec<(i64, usize)>> {
    let k = crate::homspaces::hom_complex(c, c)?;
    let (lo, hi) = match (k.min_degree(), k.max_degree()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Ok(vec![]),
    };
    Ok((lo..=hi).map(|i| (i, k.cohomology_dim(i))).collect())
}

/// Deterministic fallback: match indecomposable summands pairwise by the
/// radical criterion, then assemble the block witness through the kept
/// inclusion/projection maps.
fn decompose_and_match(
    am: &ProjComplex,
    bm: &ProjComplex,
    rng: &mut ChaCha8Rng,
) -> Result<Option<ChainMap>> {
    let parts_a = decompose_with_maps(am, rng)?;
    let parts_b = decompose_with_maps(bm, rng)?;
    if parts_a.len() != parts_b.len() {
        return Ok(None);
    }
    let mut used = vec![false; parts_b.len()];
    let mut witness = ChainMap::zero(am.clone(), bm.clone());
    for pa in &parts_a {
        let mut matched = false;
        for (j, pb) in parts_b.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(w) = indecomposable_iso(&pa.complex, &pb.complex)? {
                used[j] = true;
                matched = true;
                // include_b ∘ w ∘ project_a : am → bm.
                let block = pb.include.compose(&w).compose(&pa.project);
                witness = witness.add(&block);
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    witness.verify()?;
    if !witness.invertible_mod_radical() {
        return Err(CoreError::Splitting(
            "assembled block witness is not invertible".into(),
        ));
    }
    Ok(Some(witness))
}

/// For minimal indecomposables every non-isomorphism lies in the radical of
/// the category, so some basis class of Hom(a, b) is an isomorphism iff the
/// objects are isomorphic.
fn indecomposable_iso(a: &ProjComplex, b: &ProjComplex) -> Result<Option<ChainMap>> {
    if a.shape() != b.shape() {
        return Ok(None);
    }
    let basis = hom0_basis(a, b)?;
    for rep in &basis.reps {
        if rep.invertible_mod_radical() {
            return Ok(Some(rep.clone()));
        }
    }
    Ok(None)
}

/// Indecomposable summands of the basic form: one representative per
/// isomorphism class, in canonical order.
pub fn basic_parts(c: &ProjComplex, rng: &mut ChaCha8Rng) -> Result<Vec<ProjComplex>> {
    let parts = decompose(c, rng)?;
    let mut reps: Vec<ProjComplex> = Vec::new();
    for p in parts {
        let mut dup = false;
        for r in &reps {
            if iso_test(&p, r, rng)?.is_some() {
                dup = true;
                break;
            }
        }
        if !dup {
            reps.push(p);
        }
    }
    Ok(reps)
}

/// Deduplicate summands up to isomorphism: the basic form.
pub fn basic(c: &ProjComplex, rng: &mut ChaCha8Rng) -> Result<ProjComplex> {
    let reps = basic_parts(c, rng)?;
    let a = c.algebra.clone();
    let mut acc = ProjComplex::zero(a);
    for r in reps {
        acc = acc.direct_sum(&r);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    #[test]
    fn stalk_decomposes_into_vertex_projectives() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a);
        let parts = decompose(&c, &mut rng()).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.total_summands(), 1);
        }
    }

    #[test]
    fn double_copy_splits_into_two_isomorphic_parts() {
        let a = Arc::new(fixtures::a2());
        let x = ProjComplex::stalk_of(a, vec![0], 0);
        let xx = x.direct_sum(&x);
        let parts = decompose(&xx, &mut rng()).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(iso_test(&parts[0], &parts[1], &mut rng()).unwrap().is_some());
    }

    #[test]
    fn two_term_complex_is_indecomposable() {
        // (e₁Λ →α e₂Λ) over kA₂: local endomorphism ring.
        let a = Arc::new(fixtures::a2());
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![1usize]);
        let mut d = MorphismMatrix::zero(&a, vec![0], vec![1]);
        d.set(0, 0, a.arrow_class(0));
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let c = ProjComplex::new(a, terms, diffs).unwrap();
        let parts = decompose(&c, &mut rng()).unwrap();
        assert_eq!(parts.len(), 1);
        let e = end_algebra(&c).unwrap();
        assert_eq!(e.dim(), 1);
    }

    #[test]
    fn iso_test_accepts_after_adding_contractible() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a.clone());
        let id = MorphismMatrix::identity(&a, vec![0, 1]);
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0usize, 1]);
        terms.insert(1, vec![0usize, 1]);
        let mut diffs = BTreeMap::new();
        diffs.insert(0, id);
        let contractible = ProjComplex::new(a, terms, diffs).unwrap();
        let padded = c.direct_sum(&contractible);
        assert!(iso_test(&c, &padded, &mut rng()).unwrap().is_some());
    }

    #[test]
    fn iso_test_rejects_different_stalks() {
        let a = Arc::new(fixtures::a2());
        let p1 = ProjComplex::stalk_of(a.clone(), vec![0], 0);
        let p2 = ProjComplex::stalk_of(a, vec![1], 0);
        assert!(iso_test(&p1, &p2, &mut rng()).unwrap().is_none());
    }

    #[test]
    fn iso_test_accepts_permuted_summands() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a);
        let permuted = c.permute_degree(0, &[1, 0]);
        let w = iso_test(&c, &permuted, &mut rng()).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn basic_collapses_duplicates() {
        let a = Arc::new(fixtures::a2());
        let x = ProjComplex::stalk_of(a.clone(), vec![0], 0);
        let xx = x.direct_sum(&x);
        let b = basic(&xx, &mut rng()).unwrap();
        assert_eq!(b.total_summands(), 1);

        let stalk = ProjComplex::stalk(a);
        let b2 = basic(&stalk, &mut rng()).unwrap();
        assert_eq!(b2.total_summands(), 2);
    }

    #[test]
    fn decompose_rebuilds_by_direct_sum() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a);
        let parts = decompose(&c, &mut rng()).unwrap();
        let mut sum = ProjComplex::zero(c.algebra.clone());
        for p in &parts {
            sum = sum.direct_sum(p);
        }
        assert!(iso_test(&sum, &c, &mut rng()).unwrap().is_some());
    }
}
