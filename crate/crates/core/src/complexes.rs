//! Bounded complexes of finitely generated projective right modules.
//!
//! A term is a multiset of vertex indices (P = ⊕ e_iΛ); a morphism is a
//! matrix whose (r,s) entry lies in the block e_{j_r}·Λ·e_{i_s} and acts by
//! left multiplication. Differentials square to zero exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Coeffs};
use crate::error::{CoreError, Result};

/// Matrix of module morphisms ⊕e_{i_s}Λ → ⊕e_{j_r}Λ.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphismMatrix {
    /// Source summand vertices (columns).
    pub source: Vec<usize>,
    /// Target summand vertices (rows).
    pub target: Vec<usize>,
    /// Row-major entries, each an algebra element in its block.
    pub entries: Vec<Coeffs>,
}

impl MorphismMatrix {
    pub fn zero(a: &Algebra, source: Vec<usize>, target: Vec<usize>) -> Self {
        let entries = vec![a.zero_elem(); source.len() * target.len()];
        MorphismMatrix { source, target, entries }
    }

    pub fn identity(a: &Algebra, summands: Vec<usize>) -> Self {
        let n = summands.len();
        let mut m = Self::zero(a, summands.clone(), summands);
        for i in 0..n {
            let e = a.basis_elem(a.vertex_idempotents[m.source[i]]);
            m.set(i, i, e);
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, s: usize) -> &Coeffs {
        &self.entries[r * self.source.len() + s]
    }

    #[inline]
    pub fn set(&mut self, r: usize, s: usize, v: Coeffs) {
        let cols = self.source.len();
        self.entries[r * cols + s] = v;
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    pub fn is_zero(&self, a: &Algebra) -> bool {
        self.entries.iter().all(|e| a.elem_is_zero(e))
    }

    /// self ∘ other (other acts first).
    pub fn compose(&self, a: &Algebra, other: &MorphismMatrix) -> MorphismMatrix {
        assert_eq!(self.source, other.target, "morphism composition mismatch");
        let mut out = MorphismMatrix::zero(a, other.source.clone(), self.target.clone());
        for r in 0..self.rows() {
            for s in 0..other.cols() {
                let mut acc = a.zero_elem();
                for k in 0..self.cols() {
                    let x = self.at(r, k);
                    let y = other.at(k, s);
                    if !a.elem_is_zero(x) && !a.elem_is_zero(y) {
                        acc = a.elem_add(&acc, &a.elem_mul(x, y));
                    }
                }
                out.set(r, s, acc);
            }
        }
        out
    }

    pub fn add(&self, a: &Algebra, other: &MorphismMatrix) -> MorphismMatrix {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        MorphismMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| a.elem_add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Algebra, other: &MorphismMatrix) -> MorphismMatrix {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        MorphismMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| a.elem_sub(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &Algebra) -> MorphismMatrix {
        MorphismMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.iter().map(|x| a.elem_scale(&a.field.one().neg(), x)).collect(),
        }
    }

    /// Keep only listed rows/cols.
    pub fn submatrix(&self, a: &Algebra, rows: &[usize], cols: &[usize]) -> MorphismMatrix {
        let mut out = MorphismMatrix::zero(
            a,
            cols.iter().map(|&c| self.source[c]).collect(),
            rows.iter().map(|&r| self.target[r]).collect(),
        );
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                out.set(ri, ci, self.at(r, c).clone());
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, a: &Algebra, other: &MorphismMatrix) -> MorphismMatrix {
        let mut source = self.source.clone();
        source.extend(&other.source);
        let mut target = self.target.clone();
        target.extend(&other.target);
        let mut out = MorphismMatrix::zero(a, source, target);
        for r in 0..self.rows() {
            for s in 0..self.cols() {
                out.set(r, s, self.at(r, s).clone());
            }
        }
        for r in 0..other.rows() {
            for s in 0..other.cols() {
                out.set(self.rows() + r, self.cols() + s, other.at(r, s).clone());
            }
        }
        out
    }

    /// Stack vertically (same source).
    pub fn vstack(&self, a: &Algebra, other: &MorphismMatrix) -> MorphismMatrix {
        assert_eq!(self.source, other.source);
        let mut target = self.target.clone();
        target.extend(&other.target);
        let mut out = MorphismMatrix::zero(a, self.source.clone(), target);
        for r in 0..self.rows() {
            for s in 0..self.cols() {
                out.set(r, s, self.at(r, s).clone());
            }
        }
        for r in 0..other.rows() {
            for s in 0..other.cols() {
                out.set(self.rows() + r, s, other.at(r, s).clone());
            }
        }
        out
    }

    /// Stack horizontally (same target).
    pub fn hstack(&self, a: &Algebra, other: &MorphismMatrix) -> MorphismMatrix {
        assert_eq!(self.target, other.target);
        let mut source = self.source.clone();
        source.extend(&other.source);
        let mut out = MorphismMatrix::zero(a, source, self.target.clone());
        for r in 0..self.rows() {
            for s in 0..self.cols() {
                out.set(r, s, self.at(r, s).clone());
            }
            for s in 0..other.cols() {
                out.set(r, self.cols() + s, other.at(r, s).clone());
            }
        }
        out
    }

    /// Every entry lies in the radical (no idempotent coefficient on the
    /// diagonal blocks).
    pub fn is_radical(&self, a: &Algebra) -> bool {
        for r in 0..self.rows() {
            for s in 0..self.cols() {
                if self.source[s] == self.target[r] {
                    let v = self.target[r];
                    if !self.at(r, s)[a.vertex_idempotents[v]].is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A bounded complex of projectives with explicit finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjComplex {
    pub algebra: Arc<Algebra>,
    terms: BTreeMap<i64, Vec<usize>>,
    diffs: BTreeMap<i64, MorphismMatrix>,
}

impl fmt::Display for ProjComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, t)| {
                let names: Vec<String> = t
                    .iter()
                    .map(|&v| self.algebra.quiver.vertices[v].clone())
                    .collect();
                format!("deg {d}: [{}]", names.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("  "))
    }
}

impl ProjComplex {
    /// Construct and validate.
    pub fn new(
        algebra: Arc<Algebra>,
        terms: BTreeMap<i64, Vec<usize>>,
        diffs: BTreeMap<i64, MorphismMatrix>,
    ) -> Result<Self> {
        let mut c = ProjComplex { algebra, terms, diffs };
        c.normalize();
        c.validate()?;
        Ok(c)
    }

    /// Construct without the d² = 0 check (used internally where the
    /// identity holds by construction and is re-asserted downstream).
    pub(crate) fn new_unchecked(
        algebra: Arc<Algebra>,
        terms: BTreeMap<i64, Vec<usize>>,
        diffs: BTreeMap<i64, MorphismMatrix>,
    ) -> Self {
        let mut c = ProjComplex { algebra, terms, diffs };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, t| !t.is_empty());
        let degrees: Vec<i64> = self.terms.keys().copied().collect();
        self.diffs.retain(|d, m| {
            degrees.contains(d)
                && degrees.contains(&(d + 1))
                && !m.is_zero(&self.algebra)
        });
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        ProjComplex { algebra, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// The stalk complex Λ = ⊕ e_iΛ concentrated in degree 0.
    pub fn stalk(algebra: Arc<Algebra>) -> Self {
        let all: Vec<usize> = (0..algebra.vertex_count()).collect();
        Self::stalk_of(algebra, all, 0)
    }

    pub fn stalk_of(algebra: Arc<Algebra>, summands: Vec<usize>, degree: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !summands.is_empty() {
            terms.insert(degree, summands);
        }
        ProjComplex { algebra, terms, diffs: BTreeMap::new() }
    }

    pub fn term(&self, degree: i64) -> &[usize] {
        self.terms.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vec<usize>> {
        &self.terms
    }

    pub fn diff(&self, degree: i64) -> MorphismMatrix {
        match self.diffs.get(&degree) {
            Some(m) => m.clone(),
            None => MorphismMatrix::zero(
                &self.algebra,
                self.term(degree).to_vec(),
                self.term(degree + 1).to_vec(),
            ),
        }
    }

    pub fn diffs(&self) -> &BTreeMap<i64, MorphismMatrix> {
        &self.diffs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().last().copied()
    }

    pub fn total_summands(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    /// Degreewise sorted vertex multisets, the cheap half of the node
    /// fingerprint.
    pub fn shape(&self) -> BTreeMap<i64, Vec<usize>> {
        self.terms
            .iter()
            .map(|(d, t)| {
                let mut s = t.clone();
                s.sort_unstable();
                (*d, s)
            })
            .collect()
    }

    /// d² = 0, block membership, shape agreement; reports minimality.
    pub fn validate(&self) -> Result<ValidationReport> {
        for (&deg, m) in &self.diffs {
            if m.source != self.term(deg) || m.target != self.term(deg + 1) {
                return Err(CoreError::ComplexInvalid {
                    degree: deg,
                    row: 0,
                    col: 0,
                    reason: "differential shape does not match adjacent terms".into(),
                });
            }
            for r in 0..m.rows() {
                for s in 0..m.cols() {
                    let entry = m.at(r, s);
                    let projected =
                        self.algebra.idempotent_component(entry, m.source[s], m.target[r]);
                    if &projected != entry {
                        return Err(CoreError::ComplexInvalid {
                            degree: deg,
                            row: r,
                            col: s,
                            reason: "entry lies outside its vertex block".into(),
                        });
                    }
                }
            }
        }
        for (&deg, m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(deg + 1)) {
                let square = next.compose(&self.algebra, m);
                for r in 0..square.rows() {
                    for s in 0..square.cols() {
                        if !self.algebra.elem_is_zero(square.at(r, s)) {
                            return Err(CoreError::ComplexInvalid {
                                degree: deg,
                                row: r,
                                col: s,
                                reason: "d² ≠ 0".into(),
                            });
                        }
                    }
                }
            }
        }
        Ok(ValidationReport { minimal: self.is_minimal() })
    }

    /// im d ⊆ rad: every differential entry has no idempotent component.
    pub fn is_minimal(&self) -> bool {
        self.diffs.values().all(|m| m.is_radical(&self.algebra))
    }

    /// Shift: term i of the result is term i+n of the input; differentials
    /// pick up the sign (−1)^n.
    pub fn shift(&self, n: i64) -> ProjComplex {
        let terms: BTreeMap<i64, Vec<usize>> =
            self.terms.iter().map(|(d, t)| (d - n, t.clone())).collect();
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        let diffs: BTreeMap<i64, MorphismMatrix> = self
            .diffs
            .iter()
            .map(|(d, m)| {
                let mm = if sign == 1 { m.clone() } else { m.neg(&self.algebra) };
                (d - n, mm)
            })
            .collect();
        ProjComplex { algebra: self.algebra.clone(), terms, diffs }
    }

    /// Direct sum, summands of `other` appended after `self` degreewise.
    pub fn direct_sum(&self, other: &ProjComplex) -> ProjComplex {
        assert!(
            Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra,
            "direct sum over different algebras"
        );
        let mut degrees: Vec<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &d in &degrees {
            let mut t = self.term(d).to_vec();
            t.extend(other.term(d));
            terms.insert(d, t);
        }
        for &d in &degrees {
            let m = self.diff(d).direct_sum(&self.algebra, &other.diff(d));
            diffs.insert(d, m);
        }
        ProjComplex::new_unchecked(self.algebra.clone(), terms, diffs)
    }

    /// Reorder the summands of one degree (used for canonical forms).
    #[allow(dead_code)]
    pub(crate) fn permute_degree(&self, degree: i64, perm: &[usize]) -> ProjComplex {
        let old = self.term(degree).to_vec();
        assert_eq!(perm.len(), old.len());
        let mut terms = self.terms.clone();
        let mut diffs = self.diffs.clone();
        terms.insert(degree, perm.iter().map(|&i| old[i]).collect());
        if let Some(m) = self.diffs.get(&degree) {
            let all_rows: Vec<usize> = (0..m.rows()).collect();
            diffs.insert(degree, m.submatrix(&self.algebra, &all_rows, perm));
        }
        if let Some(m) = self.diffs.get(&(degree - 1)) {
            let all_cols: Vec<usize> = (0..m.cols()).collect();
            diffs.insert(degree - 1, m.submatrix(&self.algebra, perm, &all_cols));
        }
        ProjComplex::new_unchecked(self.algebra.clone(), terms, diffs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub minimal: bool,
}

/// A chain map between complexes over the same algebra.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub components: BTreeMap<i64, MorphismMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ProjComplex,
        target: ProjComplex,
        components: BTreeMap<i64, MorphismMatrix>,
    ) -> Result<Self> {
        let f = ChainMap { source, target, components };
        f.verify()?;
        Ok(f)
    }

    pub fn zero(source: ProjComplex, target: ProjComplex) -> Self {
        ChainMap { source, target, components: BTreeMap::new() }
    }

    pub fn identity(c: &ProjComplex) -> Self {
        let components = c
            .terms()
            .iter()
            .map(|(&d, t)| (d, MorphismMatrix::identity(&c.algebra, t.clone())))
            .collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn component(&self, degree: i64) -> MorphismMatrix {
        match self.components.get(&degree) {
            Some(m) => m.clone(),
            None => MorphismMatrix::zero(
                &self.source.algebra,
                self.source.term(degree).to_vec(),
                self.target.term(degree).to_vec(),
            ),
        }
    }

    /// f^{i+1}∘d_src = d_tgt∘f^i in every degree.
    pub fn verify(&self) -> Result<()> {
        let a = &self.source.algebra;
        let degrees: Vec<i64> = self
            .source
            .terms()
            .keys()
            .chain(self.target.terms().keys())
            .copied()
            .collect();
        for &d in &degrees {
            let lhs = self.component(d + 1).compose(a, &self.source.diff(d));
            let rhs = self.target.diff(d).compose(a, &self.component(d));
            if lhs.entries.iter().zip(&rhs.entries).any(|(x, y)| x != y) {
                return Err(CoreError::NotChainMap(d));
            }
        }
        Ok(())
    }

    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        // self ∘ other.
        let a = &self.source.algebra;
        let mut components = BTreeMap::new();
        let degrees: Vec<i64> = other.source.terms().keys().copied().collect();
        for d in degrees {
            let m = self.component(d).compose(a, &other.component(d));
            components.insert(d, m);
        }
        ChainMap { source: other.source.clone(), target: self.target.clone(), components }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let a = &self.source.algebra;
        let mut components = BTreeMap::new();
        let degrees: Vec<i64> = self
            .source
            .terms()
            .keys()
            .copied()
            .collect();
        for d in degrees {
            components.insert(d, self.component(d).add(a, &other.component(d)));
        }
        ChainMap { source: self.source.clone(), target: self.target.clone(), components }
    }

    pub fn is_zero(&self) -> bool {
        let a = &self.source.algebra;
        self.components.values().all(|m| m.is_zero(a))
    }

    /// Degreewise invertibility modulo the radical: for each degree and each
    /// vertex, the matrix of idempotent coefficients is square invertible.
    pub fn invertible_mod_radical(&self) -> bool {
        let a = &self.source.algebra;
        let field = a.field;
        let degrees: Vec<i64> = self
            .source
            .terms()
            .keys()
            .chain(self.target.terms().keys())
            .copied()
            .collect();
        for &d in &degrees {
            let src = self.source.term(d);
            let tgt = self.target.term(d);
            for v in 0..a.vertex_count() {
                let cols: Vec<usize> = (0..src.len()).filter(|&s| src[s] == v).collect();
                let rows: Vec<usize> = (0..tgt.len()).filter(|&r| tgt[r] == v).collect();
                if cols.len() != rows.len() {
                    return false;
                }
                if cols.is_empty() {
                    continue;
                }
                let comp = self.component(d);
                let e = a.vertex_idempotents[v];
                let m = crate::linalg::Matrix::from_fn(field, rows.len(), cols.len(), |ri, ci| {
                    comp.at(rows[ri], cols[ci])[e].clone()
                });
                if m.rank() != rows.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Strict inverse of a degreewise invertible chain map.
    pub fn inverse(&self) -> Result<ChainMap> {
        let a = self.source.algebra.clone();
        let mut components = BTreeMap::new();
        for (&d, _) in self.target.terms().iter() {
            let m = self.component(d);
            let inv = invert_morphism(&a, &m).ok_or_else(|| {
                CoreError::Precondition(format!("chain map not invertible at degree {d}"))
            })?;
            components.insert(d, inv);
        }
        let inv = ChainMap {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        };
        inv.verify()?;
        Ok(inv)
    }
}

/// The k-linear matrix of a morphism ⊕e_{i_s}Λ → ⊕e_{j_r}Λ on the
/// concatenated projective bases (summand order, then `proj_basis` order).
pub fn morphism_linear_matrix(a: &Algebra, m: &MorphismMatrix) -> crate::linalg::Matrix {
    let field = a.field;
    let src_spaces: Vec<Vec<usize>> = m.source.iter().map(|&v| proj_basis(a, v)).collect();
    let tgt_spaces: Vec<Vec<usize>> = m.target.iter().map(|&v| proj_basis(a, v)).collect();
    let src_dim: usize = src_spaces.iter().map(|b| b.len()).sum();
    let tgt_dim: usize = tgt_spaces.iter().map(|b| b.len()).sum();
    let mut big = crate::linalg::Matrix::zero(field, tgt_dim, src_dim);
    let mut col = 0;
    for (s, sb) in src_spaces.iter().enumerate() {
        for &basis_idx in sb {
            // Image of the basis element under each row entry: x·b.
            let mut row_off = 0;
            for (r, tb) in tgt_spaces.iter().enumerate() {
                let prod = a.elem_mul(m.at(r, s), &a.basis_elem(basis_idx));
                for (k, &tbi) in tb.iter().enumerate() {
                    big.set(row_off + k, col, prod[tbi].clone());
                }
                row_off += tb.len();
            }
            col += 1;
        }
    }
    big
}

/// Invert a square morphism matrix over the algebra (viewing it as a linear
/// map on the underlying vector spaces and reading the inverse back off the
/// summand generators).
pub fn invert_morphism(a: &Algebra, m: &MorphismMatrix) -> Option<MorphismMatrix> {
    let src_spaces: Vec<Vec<usize>> = m.source.iter().map(|&v| proj_basis(a, v)).collect();
    let tgt_spaces: Vec<Vec<usize>> = m.target.iter().map(|&v| proj_basis(a, v)).collect();
    let src_dim: usize = src_spaces.iter().map(|b| b.len()).sum();
    let tgt_dim: usize = tgt_spaces.iter().map(|b| b.len()).sum();
    if src_dim != tgt_dim {
        return None;
    }
    let big = morphism_linear_matrix(a, m);
    let inv = big.inverse()?;
    // Read the inverse back as a morphism matrix: the entry (s, r) is the
    // image of the idempotent generator of summand r.
    let mut out = MorphismMatrix::zero(a, m.target.clone(), m.source.clone());
    let mut col_off = 0;
    for (r, tb) in tgt_spaces.iter().enumerate() {
        // Column of the generator e_{j_r} inside summand r.
        let gen_pos = tb
            .iter()
            .position(|&bi| bi == a.vertex_idempotents[m.target[r]])
            .expect("idempotent basis element in its own projective");
        let mut row_off = 0;
        for (s, sb) in src_spaces.iter().enumerate() {
            let mut elem = a.zero_elem();
            for (k, &sbi) in sb.iter().enumerate() {
                elem[sbi] = inv.at(row_off + k, col_off + gen_pos).clone();
            }
            out.set(s, r, elem);
            row_off += sb.len();
        }
        col_off += tb.len();
    }
    Some(out)
}

/// Basis indices of the projective e_vΛ (the paths with target v).
pub fn proj_basis(a: &Algebra, v: usize) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.basis[i].target == v).collect()
}

/// cone(f)^i = L^{i+1} ⊕ M^i with differential [[−d_L, 0], [f, d_M]].
pub fn cone(f: &ChainMap) -> Result<ProjComplex> {
    f.verify()?;
    let a = f.source.algebra.clone();
    let l = &f.source;
    let m = &f.target;
    let mut degrees: Vec<i64> = Vec::new();
    for d in l.terms().keys() {
        degrees.push(d - 1);
    }
    degrees.extend(m.terms().keys().copied());
    degrees.sort_unstable();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    for &d in &degrees {
        let mut t: Vec<usize> = l.term(d + 1).to_vec();
        t.extend(m.term(d));
        if !t.is_empty() {
            terms.insert(d, t);
        }
    }
    let mut diffs = BTreeMap::new();
    for &d in &degrees {
        let top = l.diff(d + 1).neg(&a); // −d_L^{i+1}: L^{i+1} → L^{i+2}
        let f_comp = f.component(d + 1); // L^{i+1} → M^{i+1}
        let bottom = m.diff(d); // M^i → M^{i+1}
        // Assemble [[−d_L, 0],[f, d_M]] : L^{i+1} ⊕ M^i → L^{i+2} ⊕ M^{i+1}.
        let mut source: Vec<usize> = l.term(d + 1).to_vec();
        source.extend(m.term(d));
        let mut target: Vec<usize> = l.term(d + 2).to_vec();
        target.extend(m.term(d + 1));
        let mut mm = MorphismMatrix::zero(&a, source, target);
        let lr = l.term(d + 2).len();
        let lc = l.term(d + 1).len();
        for r in 0..top.rows() {
            for s in 0..top.cols() {
                mm.set(r, s, top.at(r, s).clone());
            }
        }
        for r in 0..f_comp.rows() {
            for s in 0..f_comp.cols() {
                mm.set(lr + r, s, f_comp.at(r, s).clone());
            }
        }
        for r in 0..bottom.rows() {
            for s in 0..bottom.cols() {
                mm.set(lr + r, lc + s, bottom.at(r, s).clone());
            }
        }
        diffs.insert(d, mm);
    }
    ProjComplex::new(a, terms, diffs)
}

pub mod minimize;
pub mod splitting;

pub use minimize::{minimize, MinimizeResult};
pub use splitting::{basic, basic_parts, decompose, iso_test};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn a2() -> Arc<Algebra> {
        Arc::new(fixtures::a2())
    }

    #[test]
    fn stalk_is_valid_and_minimal() {
        let c = ProjComplex::stalk(a2());
        let report = c.validate().unwrap();
        assert!(report.minimal);
    }

    #[test]
    fn identity_differential_is_not_minimal() {
        let a = a2();
        let id = MorphismMatrix::identity(&a, vec![0, 1]);
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0usize, 1]);
        terms.insert(1, vec![0usize, 1]);
        let mut diffs = BTreeMap::new();
        diffs.insert(0, id);
        let c = ProjComplex::new(a, terms, diffs).unwrap();
        assert!(!c.validate().unwrap().minimal);
    }

    #[test]
    fn t_differential_squares_to_zero() {
        // (Λ →t Λ →t Λ) over k[t]/t²: d² = t² = 0, valid and minimal.
        let r2 = Arc::new(crate::algebra::tensor_trivial_extension(&fixtures::point(), 2).unwrap());
        let t = r2.t_elem();
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![0usize]);
        terms.insert(1, vec![0usize]);
        let mut diffs = BTreeMap::new();
        let mut d = MorphismMatrix::zero(&r2, vec![0], vec![0]);
        d.set(0, 0, t.clone());
        diffs.insert(-1, d.clone());
        diffs.insert(0, d);
        let c = ProjComplex::new(r2, terms, diffs).unwrap();
        assert!(c.validate().unwrap().minimal);
    }

    #[test]
    fn shift_conventions() {
        let c = ProjComplex::stalk(a2());
        assert_eq!(c.shift(0), c);
        let s = c.shift(1);
        assert_eq!(s.term(-1), &[0, 1]);
        assert!(s.term(0).is_empty());

        // Shift twice by 1 = shift by 2, including signs.
        let two = fixtures_two_term();
        assert_eq!(two.shift(1).shift(1), two.shift(2));
    }

    fn fixtures_two_term() -> ProjComplex {
        // e₁Λ →α e₂Λ over kA₂ in degrees −1, 0.
        let a = a2();
        let alpha = a.arrow_class(0);
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![1usize]);
        let mut d = MorphismMatrix::zero(&a, vec![0], vec![1]);
        d.set(0, 0, alpha);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        ProjComplex::new(a, terms, diffs).unwrap()
    }

    #[test]
    fn cone_of_zero_map_is_shift() {
        let a = a2();
        let x = ProjComplex::stalk(a.clone());
        let zero_target = ProjComplex::zero(a);
        let f = ChainMap::zero(x.clone(), zero_target);
        let c = cone(&f).unwrap();
        assert_eq!(c, x.shift(1));
    }

    #[test]
    fn cone_of_arrow_map() {
        // f = φ_α: e₁Λ → e₂Λ gives the two-term complex, minimal.
        let a = a2();
        let src = ProjComplex::stalk_of(a.clone(), vec![0], 0);
        let tgt = ProjComplex::stalk_of(a.clone(), vec![1], 0);
        let mut comp = MorphismMatrix::zero(&a, vec![0], vec![1]);
        comp.set(0, 0, a.arrow_class(0));
        let mut components = BTreeMap::new();
        components.insert(0, comp);
        let f = ChainMap::new(src, tgt, components).unwrap();
        let c = cone(&f).unwrap();
        assert_eq!(c.term(-1), &[0]);
        assert_eq!(c.term(0), &[1]);
        assert!(c.validate().unwrap().minimal);
    }

    #[test]
    fn validate_rejects_broken_square() {
        let a = Arc::new(fixtures::local_loop(3));
        let x = a.arrow_class(0);
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0usize]);
        terms.insert(1, vec![0usize]);
        terms.insert(2, vec![0usize]);
        let mut d0 = MorphismMatrix::zero(&a, vec![0], vec![0]);
        d0.set(0, 0, x.clone());
        let mut diffs = BTreeMap::new();
        diffs.insert(0, d0.clone());
        diffs.insert(1, d0);
        // x² ≠ 0 in k[x]/x³.
        assert!(ProjComplex::new(a, terms, diffs).is_err());
    }
}
