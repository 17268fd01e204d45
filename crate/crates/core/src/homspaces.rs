//! Hom-complexes between complexes of projectives, homotopy-category Hom
//! dimensions, the order relations ≥ / ⊣⊢ / ⊥, endomorphism algebras of
//! degree-zero cohomology, and Tor over the truncated base k[t]/(t^m).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Coeffs};
use crate::complexes::{minimize, ChainMap, MorphismMatrix, ProjComplex};
use crate::error::{CoreError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

/// One basis vector of K^i: a single block-basis entry of some
/// Hom(L^j, M^{i+j}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBasisElem {
    /// Source degree j.
    pub src_degree: i64,
    /// Target summand index in M^{i+j}.
    pub row: usize,
    /// Source summand index in L^j.
    pub col: usize,
    /// Algebra basis index inside the block e_tgt·Λ·e_src.
    pub block_elem: usize,
}

/// The cochain complex K = Hom•(L, M) of field vector spaces.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub algebra: Arc<Algebra>,
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub bases: BTreeMap<i64, Vec<HomBasisElem>>,
    /// d^i: K^i → K^{i+1}.
    pub diffs: BTreeMap<i64, Matrix>,
    /// Post-composition with multiplication by t, per degree.
    pub t_action: Option<BTreeMap<i64, Matrix>>,
}

impl HomComplex {
    pub fn dim(&self, degree: i64) -> usize {
        self.bases.get(&degree).map_or(0, Vec::len)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.bases.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.bases.keys().last().copied()
    }

    pub fn diff(&self, degree: i64) -> Matrix {
        match self.diffs.get(&degree) {
            Some(m) => m.clone(),
            None => Matrix::zero(
                self.algebra.field,
                self.dim(degree + 1),
                self.dim(degree),
            ),
        }
    }

    /// dim H^i(K).
    pub fn cohomology_dim(&self, degree: i64) -> usize {
        if self.dim(degree) == 0 {
            return 0;
        }
        let d_out = self.diff(degree);
        let d_in = self.diff(degree - 1);
        let kernel = self.dim(degree) - d_out.rank();
        kernel - d_in.rank()
    }

    /// Convert a chain map L → M[i] into coordinates of K^i.
    pub fn chain_map_coords(&self, i: i64, components: &BTreeMap<i64, MorphismMatrix>) -> Vec<Scalar> {
        let field = self.algebra.field;
        let basis = self.bases.get(&i).map(Vec::as_slice).unwrap_or(&[]);
        let mut v = vec![field.zero(); basis.len()];
        for (k, b) in basis.iter().enumerate() {
            if let Some(m) = components.get(&b.src_degree) {
                v[k] = m.at(b.row, b.col)[b.block_elem].clone();
            }
        }
        v
    }

    /// Convert K^i coordinates back into per-degree morphism matrices
    /// L^j → M^{i+j}.
    pub fn coords_to_components(&self, i: i64, v: &[Scalar]) -> BTreeMap<i64, MorphismMatrix> {
        let a = &self.algebra;
        let mut out: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();
        let basis = self.bases.get(&i).map(Vec::as_slice).unwrap_or(&[]);
        for (k, b) in basis.iter().enumerate() {
            if v[k].is_zero() {
                continue;
            }
            let entry = out.entry(b.src_degree).or_insert_with(|| {
                MorphismMatrix::zero(
                    a,
                    self.source.term(b.src_degree).to_vec(),
                    self.target.term(b.src_degree + i).to_vec(),
                )
            });
            let mut e = entry.at(b.row, b.col).clone();
            e[b.block_elem] = e[b.block_elem].add(&v[k]);
            entry.set(b.row, b.col, e);
        }
        out
    }
}

/// Build K = Hom•(L, M) with its t-action when the algebra carries t.
pub fn hom_complex(l: &ProjComplex, m: &ProjComplex) -> Result<HomComplex> {
    if *l.algebra != *m.algebra {
        return Err(CoreError::AlgebraMismatch);
    }
    let a = l.algebra.clone();
    let field = a.field;

    let mut bases: BTreeMap<i64, Vec<HomBasisElem>> = BTreeMap::new();
    if let (Some(lmin), Some(lmax), Some(mmin), Some(mmax)) =
        (l.min_degree(), l.max_degree(), m.min_degree(), m.max_degree())
    {
        for i in (mmin - lmax)..=(mmax - lmin) {
            let mut basis = Vec::new();
            for (&j, lterm) in l.terms() {
                let mterm = m.term(i + j);
                if mterm.is_empty() {
                    continue;
                }
                for (row, &tv) in mterm.iter().enumerate() {
                    for (col, &sv) in lterm.iter().enumerate() {
                        for &be in a.block(sv, tv) {
                            basis.push(HomBasisElem {
                                src_degree: j,
                                row,
                                col,
                                block_elem: be,
                            });
                        }
                    }
                }
            }
            if !basis.is_empty() {
                bases.insert(i, basis);
            }
        }
    }

    // Differentials: d(φ)^j = φ^{j+1}∘d_L^j − (−1)^i d_M^{i+j}∘φ^j.
    let mut diffs = BTreeMap::new();
    let degrees: Vec<i64> = bases.keys().copied().collect();
    for &i in &degrees {
        let rows = bases.get(&(i + 1)).map_or(0, Vec::len);
        let cols = bases[&i].len();
        if rows == 0 {
            continue;
        }
        let mut mat = Matrix::zero(field, rows, cols);
        let target_index: BTreeMap<(i64, usize, usize, usize), usize> = bases[&(i + 1)]
            .iter()
            .enumerate()
            .map(|(k, b)| ((b.src_degree, b.row, b.col, b.block_elem), k))
            .collect();
        let sign = if i.rem_euclid(2) == 0 { field.one() } else { field.one().neg() };
        for (k, b) in bases[&i].iter().enumerate() {
            let x = a.basis_elem(b.block_elem);
            // Term 1: φ∘d_L at source degree j−1: entries x·(d_L)_{col, s'}.
            let dl = l.diff(b.src_degree - 1);
            for s in 0..dl.cols() {
                let prod = a.elem_mul(&x, dl.at(b.col, s));
                scatter(&mut mat, &target_index, b.src_degree - 1, b.row, s, &prod, &field.one(), k);
            }
            // Term 2: −(−1)^i d_M∘φ at source degree j: entries (d_M)_{r', row}·x.
            let dm = m.diff(i + b.src_degree);
            for r in 0..dm.rows() {
                let prod = a.elem_mul(dm.at(r, b.row), &x);
                let c = sign.neg();
                scatter(&mut mat, &target_index, b.src_degree, r, b.col, &prod, &c, k);
            }
        }
        diffs.insert(i, mat);
    }

    let t_action = if a.has_t() {
        let t = a.t_elem();
        let mut acts = BTreeMap::new();
        for &i in &degrees {
            let basis = &bases[&i];
            let index: BTreeMap<(i64, usize, usize, usize), usize> = basis
                .iter()
                .enumerate()
                .map(|(k, b)| ((b.src_degree, b.row, b.col, b.block_elem), k))
                .collect();
            let mut mat = Matrix::zero(field, basis.len(), basis.len());
            for (k, b) in basis.iter().enumerate() {
                let prod = a.elem_mul(&t, &a.basis_elem(b.block_elem));
                scatter(&mut mat, &index, b.src_degree, b.row, b.col, &prod, &field.one(), k);
            }
            acts.insert(i, mat);
        }
        Some(acts)
    } else {
        None
    };

    let k = HomComplex { algebra: a, source: l.clone(), target: m.clone(), bases, diffs, t_action };
    verify_hom_complex(&k)?;
    Ok(k)
}

/// Add `coeff·prod` (an algebra element in block coordinates) into column k
/// of `mat`, at the rows indexed by (src_degree, row, col, block basis).
fn scatter(
    mat: &mut Matrix,
    index: &BTreeMap<(i64, usize, usize, usize), usize>,
    src_degree: i64,
    row: usize,
    col: usize,
    prod: &Coeffs,
    coeff: &Scalar,
    k: usize,
) {
    for (be, c) in prod.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match index.get(&(src_degree, row, col, be)) {
            Some(&target_row) => {
                let v = mat.at(target_row, k).add(&c.mul(coeff));
                mat.set(target_row, k, v);
            }
            None => panic!("hom-complex scatter outside the indexed basis"),
        }
    }
}

/// d² = 0 and commutation of the t-action with the differentials.
fn verify_hom_complex(k: &HomComplex) -> Result<()> {
    for (&i, d) in &k.diffs {
        if let Some(next) = k.diffs.get(&(i + 1)) {
            if !next.mul(d).is_zero() {
                return Err(CoreError::Verification(format!(
                    "hom-complex differential does not square to zero at degree {i}"
                )));
            }
        }
    }
    if let Some(acts) = &k.t_action {
        for (&i, d) in &k.diffs {
            let t_here = acts.get(&i);
            let t_next = acts.get(&(i + 1));
            if let (Some(th), Some(tn)) = (t_here, t_next) {
                if d.mul(th) != tn.mul(d) {
                    return Err(CoreError::Verification(format!(
                        "t-action does not commute with the hom differential at degree {i}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// dim Hom_{Hot}(L, M[i]) = dim H^i(Hom•(L, M)).
pub fn hom_dim(l: &ProjComplex, m: &ProjComplex, i: i64) -> Result<usize> {
    let k = hom_complex(l, m)?;
    Ok(k.cohomology_dim(i))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Hom(L, M[i]) = 0 for all i > 0.
    Geq,
    /// Hom(L, M[i]) = 0 for all i ≠ 0.
    Teq,
    /// Hom(L, M[i]) = 0 for all i.
    Perp,
}

/// Decide one of the three vanishing relations on the finite window given
/// by the minimal models.
pub fn relation(l: &ProjComplex, m: &ProjComplex, which: Relation) -> Result<bool> {
    let lm = if l.is_minimal() { l.clone() } else { minimize(l)?.complex };
    let mm = if m.is_minimal() { m.clone() } else { minimize(m)?.complex };
    if lm.is_zero() || mm.is_zero() {
        return Ok(true);
    }
    let k = hom_complex(&lm, &mm)?;
    let (lo, hi) = match (k.min_degree(), k.max_degree()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Ok(true),
    };
    let range: Vec<i64> = match which {
        Relation::Geq => (1..=hi).collect(),
        Relation::Teq => (lo..=hi).filter(|&i| i != 0).collect(),
        Relation::Perp => (lo..=hi).collect(),
    };
    for i in range {
        if k.cohomology_dim(i) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis data for H⁰(Hom•(L, M)): representative chain maps plus the
/// machinery to express an arbitrary chain map in class coordinates.
#[derive(Debug, Clone)]
pub struct Hom0Basis {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub hom: HomComplex,
    /// Representative cocycles, as chain maps.
    pub reps: Vec<ChainMap>,
    rep_vectors: Vec<Vec<Scalar>>,
    coboundary_basis: Vec<Vec<Scalar>>,
    /// Factorization of [reps | coboundaries] for repeated class solves.
    class_solver: crate::linalg::Solver,
}

impl Hom0Basis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class coordinates of a chain map L → M.
    pub fn class_coords(&self, f: &ChainMap) -> Result<Vec<Scalar>> {
        let v = self.hom.chain_map_coords(0, &f.components);
        self.vector_class_coords(&v)
    }

    pub fn vector_class_coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        // Solve v = Σ a_i reps_i + Σ b_j cobound_j against the cached
        // factorization.
        let sol = self
            .class_solver
            .solve(v)
            .ok_or_else(|| CoreError::Verification("vector not a cocycle class member".into()))?;
        Ok(sol[..self.reps.len()].to_vec())
    }

    /// The chain map Σ coords_i · reps_i.
    pub fn combination(&self, coords: &[Scalar]) -> ChainMap {
        let a = &self.hom.algebra;
        let field = a.field;
        let n = self.hom.dim(0);
        let mut v = vec![field.zero(); n];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, x) in self.rep_vectors[i].iter().enumerate() {
                v[k] = v[k].add(&c.mul(x));
            }
        }
        let components = self.hom.coords_to_components(0, &v);
        ChainMap { source: self.source.clone(), target: self.target.clone(), components }
    }
}

/// Compute a basis of Hom_{Hot}(L, M) = H⁰ with chain-map representatives.
pub fn hom0_basis(l: &ProjComplex, m: &ProjComplex) -> Result<Hom0Basis> {
    let k = hom_complex(l, m)?;
    let field = k.algebra.field;
    let n = k.dim(0);
    let cocycles: Vec<Vec<Scalar>> = k.diff(0).kernel_basis();
    let d_in = k.diff(-1);
    let mut coboundaries: Vec<Vec<Scalar>> = Vec::new();
    for j in k.diff(-1).image_pivot_columns() {
        coboundaries.push(d_in.col(j));
    }
    // Extend the coboundary basis to the cocycle space; the new vectors are
    // the class representatives.
    let mut sieve = crate::linalg::EchelonSieve::new(n.max(1));
    for b in &coboundaries {
        sieve.insert(b);
    }
    let mut reps_vectors = Vec::new();
    for z in &cocycles {
        if n > 0 && sieve.insert(z) {
            reps_vectors.push(z.clone());
        }
    }
    let reps: Vec<ChainMap> = reps_vectors
        .iter()
        .map(|v| {
            let components = k.coords_to_components(0, v);
            ChainMap { source: l.clone(), target: m.clone(), components }
        })
        .collect();
    for r in &reps {
        r.verify()?;
    }
    let mut cols: Vec<Vec<Scalar>> = reps_vectors.clone();
    cols.extend(coboundaries.iter().cloned());
    let stacked = Matrix::from_fn(field, n, cols.len(), |i, j| cols[j][i].clone());
    let class_solver = crate::linalg::Solver::new(&stacked);
    Ok(Hom0Basis {
        source: l.clone(),
        target: m.clone(),
        hom: k,
        reps,
        rep_vectors: reps_vectors,
        coboundary_basis: coboundaries,
        class_solver,
    })
}

/// The endomorphism algebra E = H⁰(Hom•(L, L)) with its composition
/// product and t-module action.
#[derive(Debug, Clone)]
pub struct EndAlgebra {
    pub field: FieldSpec,
    pub basis: Hom0Basis,
    /// mult[i][j] = class coordinates of reps[i] ∘ reps[j].
    pub mult: Vec<Vec<Vec<Scalar>>>,
    /// Coordinates of the identity endomorphism.
    pub one: Vec<Scalar>,
    /// Class-level action of post-composition with t, when present.
    pub t_action: Option<Matrix>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn elem_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
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

    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                let mut e = vec![self.field.zero(); d];
                e[j] = self.field.one();
                self.elem_mul(x, &e)
            })
            .collect();
        Matrix::from_fn(self.field, d, d, |i, j| cols[j][i].clone())
    }

    /// Matrix of the t-action on E viewed as a k[t]/(t^m)-module.
    pub fn t_matrix(&self) -> Option<&Matrix> {
        self.t_action.as_ref()
    }
}

/// Compute E = H⁰(Hom•(L, L)) with multiplication by composition; verifies
/// that composition descends modulo null-homotopic maps.
pub fn end_algebra(l: &ProjComplex) -> Result<EndAlgebra> {
    let basis = hom0_basis(l, l)?;
    let field = basis.hom.algebra.field;
    let d = basis.dim();
    let mut mult = vec![vec![vec![field.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let comp = basis.reps[i].compose(&basis.reps[j]);
            mult[i][j] = basis.class_coords(&comp)?;
        }
    }
    let id = ChainMap::identity(l);
    let one = basis.class_coords(&id)?;
    // Composition descends: composing with a coboundary stays a coboundary.
    // Spot-verified on the basis representatives against the first
    // coboundary generator.
    if let Some(cb) = basis.coboundary_basis.first() {
        let cb_map = ChainMap {
            source: l.clone(),
            target: l.clone(),
            components: basis.hom.coords_to_components(0, cb),
        };
        for rep in &basis.reps {
            for f in [rep.compose(&cb_map), cb_map.compose(rep)] {
                let coords = basis.class_coords(&f)?;
                if coords.iter().any(|c| !c.is_zero()) {
                    return Err(CoreError::Verification(
                        "composition does not descend modulo null-homotopics".into(),
                    ));
                }
            }
        }
    }
    let t_action = if basis.hom.algebra.has_t() {
        let t = basis.hom.algebra.t_elem();
        let mut cols = Vec::new();
        for rep in &basis.reps {
            // Post-compose each representative with multiplication by t.
            let mut comps = BTreeMap::new();
            for (&deg, m) in &rep.components {
                let mut tm = m.clone();
                for r in 0..m.rows() {
                    for s in 0..m.cols() {
                        tm.set(r, s, basis.hom.algebra.elem_mul(&t, m.at(r, s)));
                    }
                }
                comps.insert(deg, tm);
            }
            let tmap = ChainMap { source: l.clone(), target: l.clone(), components: comps };
            cols.push(basis.class_coords(&tmap)?);
        }
        Some(Matrix::from_fn(field, d, d, |i, j| cols[j][i].clone()))
    } else {
        None
    };
    Ok(EndAlgebra { field, basis, mult, one, t_action })
}

/// A finite-dimensional module over k[t]/(t^m), given by its t-action.
#[derive(Debug, Clone)]
pub struct TModule {
    pub base_power: usize,
    pub t_matrix: Matrix,
}

impl TModule {
    pub fn new(base_power: usize, t_matrix: Matrix) -> Result<Self> {
        if t_matrix.rows != t_matrix.cols {
            return Err(CoreError::Dimension("t-action must be square".into()));
        }
        // t must be nilpotent of order dividing the base power.
        let mut power = Matrix::identity(t_matrix.field, t_matrix.rows);
        for _ in 0..base_power {
            power = power.mul(&t_matrix);
        }
        if !power.is_zero() {
            return Err(CoreError::Precondition(
                "t-action is not nilpotent of order dividing the base power".into(),
            ));
        }
        Ok(TModule { base_power, t_matrix })
    }

    pub fn dim(&self) -> usize {
        self.t_matrix.rows
    }
}

/// dim Tor_i^{k[t]/(t^m)}(N, k[t]/(t^j)) from the two-periodic resolution
/// of k[t]/(t^j): alternating multiplications by t^j and t^{m−j}.
pub fn tor_base_vs(module: &TModule, j: usize, i: usize) -> Result<usize> {
    let m = module.base_power;
    if j == 0 || j > m {
        return Err(CoreError::Precondition(format!("quotient power {j} out of range 1..={m}")));
    }
    if j == m {
        // k[t]/(t^j) = the base ring itself: flat.
        return Ok(if i == 0 { module.dim() } else { 0 });
    }
    let d = module.dim();
    let pow = |e: usize| -> Matrix {
        let mut acc = Matrix::identity(module.t_matrix.field, d);
        for _ in 0..e {
            acc = acc.mul(&module.t_matrix);
        }
        acc
    };
    let tj = pow(j);
    let tmj = pow(m - j);
    Ok(match i {
        0 => d - tj.rank(),
        _ => d - tj.rank() - tmj.rank(),
    })
}

/// dim Tor_i over the base against the residue field k = k[t]/(t).
pub fn tor_base(module: &TModule, i: usize) -> Result<usize> {
    tor_base_vs(module, 1, i)
}

/// The full profile dims: i ↦ dim Tor_i, checked two-periodic for i ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TorProfile {
    pub base_power: usize,
    pub dims: Vec<usize>,
}

pub fn tor_profile(module: &TModule, j: usize, upto: usize) -> Result<TorProfile> {
    let dims: Vec<usize> = (0..=upto)
        .map(|i| tor_base_vs(module, j, i))
        .collect::<Result<_>>()?;
    for i in 1..dims.len().saturating_sub(2) {
        if dims[i] != dims[i + 2] {
            return Err(CoreError::Verification(
                "Tor profile is not two-periodic for i ≥ 1".into(),
            ));
        }
    }
    Ok(TorProfile { base_power: module.base_power, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tensor_trivial_extension;
    use crate::fixtures;

    fn stalk_a2() -> ProjComplex {
        ProjComplex::stalk(Arc::new(fixtures::a2()))
    }

    fn t_complex() -> ProjComplex {
        // (Λ →t Λ) over k[t]/t² in degrees −1, 0.
        let r2 = Arc::new(tensor_trivial_extension(&fixtures::point(), 2).unwrap());
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![0usize]);
        let mut d = MorphismMatrix::zero(&r2, vec![0], vec![0]);
        d.set(0, 0, r2.t_elem());
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        ProjComplex::new(r2, terms, diffs).unwrap()
    }

    #[test]
    fn hom_complex_of_stalk_concentrated_in_degree_zero() {
        let c = stalk_a2();
        let k = hom_complex(&c, &c).unwrap();
        assert_eq!(k.dim(0), c.algebra.dim());
        assert_eq!(k.min_degree(), Some(0));
        assert_eq!(k.max_degree(), Some(0));
    }

    #[test]
    fn hom_complex_dims_of_t_complex() {
        let l = t_complex();
        let k = hom_complex(&l, &l).unwrap();
        assert_eq!((k.dim(-1), k.dim(0), k.dim(1)), (2, 4, 2));
        // H¹ = 1: the obstruction class of the non-presilting complex.
        assert_eq!(k.cohomology_dim(1), 1);
        // H⁰ = 2.
        assert_eq!(k.cohomology_dim(0), 2);
    }

    #[test]
    fn hom_complex_support_window() {
        let l = t_complex(); // support [−1, 0]
        let m = l.shift(-2); // support [1, 2]
        let k = hom_complex(&l, &m).unwrap();
        // K supported in [c−b, d−a] = [1−0, 2−(−1)] = [1, 3].
        assert_eq!(k.min_degree(), Some(1));
        assert_eq!(k.max_degree(), Some(3));
    }

    #[test]
    fn hom_dims_of_stalk() {
        let c = stalk_a2();
        assert_eq!(hom_dim(&c, &c, 0).unwrap(), 3);
        assert_eq!(hom_dim(&c, &c, 1).unwrap(), 0);
        assert_eq!(hom_dim(&c, &c, -1).unwrap(), 0);
    }

    #[test]
    fn shift_invariance_of_hom_dim() {
        let l = t_complex();
        for i in -2..3 {
            let d0 = hom_dim(&l, &l, i).unwrap();
            let d1 = hom_dim(&l.shift(4), &l.shift(4), i).unwrap();
            assert_eq!(d0, d1);
            // hom_dim(L, M, i) = hom_dim(L, M[i], 0).
            let ds = hom_dim(&l, &l.shift(i), 0).unwrap();
            assert_eq!(d0, ds);
        }
    }

    #[test]
    fn relations_on_stalks_and_shifts() {
        let c = stalk_a2();
        assert!(relation(&c, &c, Relation::Geq).unwrap());
        assert!(!relation(&c, &c.shift(1), Relation::Perp).unwrap());
        assert!(relation(&c, &c.shift(1), Relation::Geq).unwrap());
        let t = t_complex();
        assert!(!relation(&t, &t, Relation::Geq).unwrap());
    }

    #[test]
    fn end_algebra_of_stalk_is_the_algebra() {
        // a ↦ left-multiplication-by-a is an algebra isomorphism Λ → End(Λ).
        let c = stalk_a2();
        let a = c.algebra.clone();
        let e = end_algebra(&c).unwrap();
        assert_eq!(e.dim(), a.dim());
        let image_of = |x: &crate::algebra::Coeffs| -> Vec<Scalar> {
            let mut components = BTreeMap::new();
            let mut m = MorphismMatrix::zero(&a, c.term(0).to_vec(), c.term(0).to_vec());
            for r in 0..m.rows() {
                for s in 0..m.cols() {
                    m.set(r, s, a.idempotent_component(x, m.source[s], m.target[r]));
                }
            }
            components.insert(0, m);
            let f = ChainMap { source: c.clone(), target: c.clone(), components };
            e.basis.class_coords(&f).unwrap()
        };
        // Linear isomorphism.
        let cols: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| image_of(&a.basis_elem(i))).collect();
        let mat = Matrix::from_fn(a.field, e.dim(), a.dim(), |i, j| cols[j][i].clone());
        assert_eq!(mat.rank(), a.dim());
        // Multiplicative on all basis pairs.
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = image_of(a.basis_mul(i, j));
                let rhs = e.elem_mul(&cols[i], &cols[j]);
                assert_eq!(lhs, rhs, "φ(b_{i}·b_{j}) ≠ φ(b_{i})·φ(b_{j})");
            }
        }
        let one = e.one.clone();
        assert_eq!(e.elem_mul(&one, &one), one);
    }

    #[test]
    fn triangle_long_exact_sequence_alternating_sum_vanishes() {
        // For the triangle X → Y → cone(f) → X[1] and a test object T, the
        // alternating dimension sum of the Hom long exact sequence is zero.
        use crate::complexes::cone;
        use crate::sampling::random_bounded_complex;
        use rand::SeedableRng;
        let a = std::sync::Arc::new(
            crate::algebra::tensor_trivial_extension(&crate::fixtures::a2(), 2).unwrap(),
        );
        let t_obj = ProjComplex::stalk(a.clone());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut tested = 0;
        while tested < 6 {
            let x = random_bounded_complex(&a, &mut rng).unwrap();
            let y = random_bounded_complex(&a, &mut rng).unwrap();
            let basis = match hom0_basis(&x, &y) {
                Ok(b) => b,
                Err(_) => continue,
            };
            if basis.dim() == 0 {
                continue;
            }
            let coords: Vec<Scalar> =
                (0..basis.dim()).map(|_| a.field.random_small(&mut rng)).collect();
            let f = basis.combination(&coords);
            let c = cone(&f).unwrap();
            let mut total: i64 = 0;
            // A window beyond all three supports.
            for i in -6i64..=6 {
                let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                let ax = hom_dim(&t_obj, &x.shift(-i), 0).unwrap() as i64;
                let by = hom_dim(&t_obj, &y.shift(-i), 0).unwrap() as i64;
                let cc = hom_dim(&t_obj, &c.shift(-i), 0).unwrap() as i64;
                total += sign * (ax - by + cc);
            }
            assert_eq!(total, 0, "long exact sequence rank bookkeeping failed");
            tested += 1;
        }
    }

    #[test]
    fn tor_of_residue_field_is_one_dimensional_everywhere() {
        // Tor_i^{k[t]/t²}(k, k) = 1 for all i ≥ 0.
        let f = FieldSpec::Rationals;
        let module = TModule::new(2, Matrix::zero(f, 1, 1)).unwrap();
        for i in 0..6 {
            assert_eq!(tor_base(&module, i).unwrap(), 1);
        }
    }

    #[test]
    fn tor_of_free_module_vanishes() {
        // Free rank-1 module over k[t]/t³: nilpotent Jordan block of size 3.
        let f = FieldSpec::Rationals;
        let mut t = Matrix::zero(f, 3, 3);
        t.set(1, 0, f.one());
        t.set(2, 1, f.one());
        let module = TModule::new(3, t).unwrap();
        assert_eq!(tor_base(&module, 0).unwrap(), 1);
        for i in 1..5 {
            assert_eq!(tor_base(&module, i).unwrap(), 0);
        }
    }

    #[test]
    fn tor_zero_is_cokernel() {
        let f = FieldSpec::Rationals;
        let mut t = Matrix::zero(f, 3, 3);
        t.set(1, 0, f.one());
        let module = TModule::new(2, t.clone()).unwrap();
        assert_eq!(tor_base(&module, 0).unwrap(), 3 - t.rank());
    }

    #[test]
    fn tor_profile_periodic() {
        let f = FieldSpec::Rationals;
        let mut t = Matrix::zero(f, 2, 2);
        t.set(1, 0, f.one());
        let module = TModule::new(3, t).unwrap();
        let profile = tor_profile(&module, 1, 6).unwrap();
        assert_eq!(profile.dims[1], profile.dims[3]);
    }
}
