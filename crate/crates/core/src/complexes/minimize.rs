//! Gaussian reduction of complexes to their minimal models.
//!
//! A differential entry that is invertible modulo the radical (same vertex
//! on both sides, nonzero idempotent coefficient) lets the matched summand
//! pair be cancelled. Iterating yields a minimal complex homotopy equivalent
//! to the input; both chain maps and the homotopy witnessing the equivalence
//! are returned and verified exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{ChainMap, MorphismMatrix, ProjComplex};
use crate::algebra::Algebra;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub complex: ProjComplex,
    /// Projection c → minimal model.
    pub project: ChainMap,
    /// Inclusion minimal model → c.
    pub include: ChainMap,
    /// h with id − include∘project = d∘h + h∘d on c.
    pub homotopy: BTreeMap<i64, MorphismMatrix>,
}

/// Locate the first reducible entry: (degree, row, col).
fn find_unit_entry(c: &ProjComplex) -> Option<(i64, usize, usize)> {
    let a = &c.algebra;
    for (&deg, m) in c.diffs() {
        for r in 0..m.rows() {
            for s in 0..m.cols() {
                if m.source[s] == m.target[r] {
                    let v = m.source[s];
                    if !m.at(r, s)[a.vertex_idempotents[v]].is_zero() {
                        return Some((deg, r, s));
                    }
                }
            }
        }
    }
    None
}

/// Inverse of an entry that is a unit in the local ring e_vΛe_v.
fn invert_block_unit(a: &Algebra, v: usize, x: &crate::algebra::Coeffs) -> crate::algebra::Coeffs {
    let block = a.block(v, v);
    let field = a.field;
    let n = block.len();
    let mat = crate::linalg::Matrix::from_fn(field, n, n, |i, j| {
        a.elem_mul(x, &a.basis_elem(block[j]))[block[i]].clone()
    });
    let e = a.basis_elem(a.vertex_idempotents[v]);
    let rhs = crate::linalg::Matrix::from_fn(field, n, 1, |i, _| e[block[i]].clone());
    let sol = mat
        .solve(&rhs)
        .expect("square system")
        .expect("unit entry in local block is invertible");
    let mut out = a.zero_elem();
    for (k, &b) in block.iter().enumerate() {
        out[b] = sol.at(k, 0).clone();
    }
    // x·out = e_v; verify the two-sided identity.
    debug_assert_eq!(a.elem_mul(x, &out), e);
    debug_assert_eq!(a.elem_mul(&out, x), e);
    out
}

struct StepMaps {
    reduced: ProjComplex,
    project: ChainMap,
    include: ChainMap,
    homotopy: BTreeMap<i64, MorphismMatrix>,
}

/// One cancellation of the summand pair (s at degree i) → (r at degree i+1).
fn reduce_step(c: &ProjComplex, deg: i64, r: usize, s: usize) -> StepMaps {
    let a: Arc<Algebra> = c.algebra.clone();
    let d = c.diff(deg);
    let v = d.source[s];
    let alpha = d.at(r, s).clone();
    let alpha_inv = invert_block_unit(&a, v, &alpha);

    let keep_cols: Vec<usize> = (0..d.cols()).filter(|&j| j != s).collect();
    let keep_rows: Vec<usize> = (0..d.rows()).filter(|&i| i != r).collect();

    // d = [α β; γ δ] in the (S | X), (R | Y) splitting.
    let beta = d.submatrix(&a, &[r], &keep_cols); // X^i → R
    let gamma = d.submatrix(&a, &keep_rows, &[s]); // S → X^{i+1}
    let delta = d.submatrix(&a, &keep_rows, &keep_cols);

    // δ − γ·α⁻¹·β on the kept summands.
    let mut alpha_inv_mat = MorphismMatrix::zero(&a, vec![v], vec![v]);
    alpha_inv_mat.set(0, 0, alpha_inv.clone());
    let correction = gamma.compose(&a, &alpha_inv_mat).compose(&a, &beta);
    let new_d = delta.sub(&a, &correction);

    let mut terms = c.terms().clone();
    let mut diffs = c.diffs().clone();
    let src_term: Vec<usize> = keep_cols.iter().map(|&j| d.source[j]).collect();
    let tgt_term: Vec<usize> = keep_rows.iter().map(|&i| d.target[i]).collect();
    terms.insert(deg, src_term);
    terms.insert(deg + 1, tgt_term);
    diffs.insert(deg, new_d);
    if let Some(prev) = c.diffs().get(&(deg - 1)) {
        let all: Vec<usize> = (0..prev.cols()).collect();
        diffs.insert(deg - 1, prev.submatrix(&a, &keep_cols, &all));
    }
    if let Some(next) = c.diffs().get(&(deg + 1)) {
        let all: Vec<usize> = (0..next.rows()).collect();
        diffs.insert(deg + 1, next.submatrix(&a, &all, &keep_rows));
    }
    let reduced = ProjComplex::new_unchecked(a.clone(), terms, diffs);

    // Projection f: identity away from degrees i, i+1.
    let mut f_components = BTreeMap::new();
    for (&dd, t) in c.terms() {
        let m = if dd == deg {
            // [0 | id]: kill S.
            let mut m = MorphismMatrix::zero(&a, t.clone(), reduced.term(dd).to_vec());
            for (new_j, &old_j) in keep_cols.iter().enumerate() {
                m.set(new_j, old_j, a.basis_elem(a.vertex_idempotents[t[old_j]]));
            }
            m
        } else if dd == deg + 1 {
            // [−γα⁻¹ | id].
            let mut m = MorphismMatrix::zero(&a, t.clone(), reduced.term(dd).to_vec());
            let corr = gamma.compose(&a, &alpha_inv_mat); // R → X^{i+1}
            for (new_i, &old_i) in keep_rows.iter().enumerate() {
                m.set(new_i, r, corr.at(new_i, 0).clone().iter().map(|x| x.neg()).collect());
                m.set(new_i, old_i, a.basis_elem(a.vertex_idempotents[t[old_i]]));
            }
            m
        } else {
            MorphismMatrix::identity(&a, t.clone())
        };
        f_components.insert(dd, m);
    }
    let project = ChainMap {
        source: c.clone(),
        target: reduced.clone(),
        components: f_components,
    };

    // Inclusion g.
    let mut g_components = BTreeMap::new();
    for (&dd, t) in reduced.terms() {
        let m = if dd == deg {
            // [−α⁻¹β; id].
            let mut m = MorphismMatrix::zero(&a, t.clone(), c.term(dd).to_vec());
            let corr = alpha_inv_mat.compose(&a, &beta); // X^i → S
            for (new_j, &old_j) in keep_cols.iter().enumerate() {
                m.set(s, new_j, corr.at(0, new_j).clone().iter().map(|x| x.neg()).collect());
                m.set(old_j, new_j, a.basis_elem(a.vertex_idempotents[t[new_j]]));
            }
            m
        } else if dd == deg + 1 {
            // [0; id].
            let mut m = MorphismMatrix::zero(&a, t.clone(), c.term(dd).to_vec());
            for (new_i, &old_i) in keep_rows.iter().enumerate() {
                m.set(old_i, new_i, a.basis_elem(a.vertex_idempotents[t[new_i]]));
            }
            m
        } else {
            MorphismMatrix::identity(&a, t.clone())
        };
        g_components.insert(dd, m);
    }
    let include = ChainMap {
        source: reduced.clone(),
        target: c.clone(),
        components: g_components,
    };

    // Homotopy: h^{deg+1}: C^{deg+1} → C^{deg} is α⁻¹ on R → S, else zero.
    let mut homotopy = BTreeMap::new();
    let mut h = MorphismMatrix::zero(&a, c.term(deg + 1).to_vec(), c.term(deg).to_vec());
    h.set(s, r, alpha_inv);
    homotopy.insert(deg + 1, h);

    StepMaps { reduced, project, include, homotopy }
}

/// Minimal model with a verified homotopy equivalence.
pub fn minimize(c: &ProjComplex) -> Result<MinimizeResult> {
    let a = c.algebra.clone();
    let mut current = c.clone();
    let mut project = ChainMap::identity(c);
    let mut include = ChainMap::identity(c);
    let mut homotopy: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();

    while let Some((deg, r, s)) = find_unit_entry(&current) {
        let step = reduce_step(&current, deg, r, s);
        // h_total ← h_total + include_total ∘ h_step ∘ project_total,
        // with include^{dd−1} ∘ h_step ∘ project^{dd}: C^{dd} → C^{dd−1}.
        for (&dd, h_step) in &step.homotopy {
            let m = include
                .component(dd - 1)
                .compose(&a, h_step)
                .compose(&a, &project.component(dd));
            homotopy
                .entry(dd)
                .and_modify(|acc| *acc = acc.add(&a, &m))
                .or_insert(m);
        }
        project = step.project.compose(&project);
        include = include.compose(&step.include);
        current = step.reduced;
    }

    let result = MinimizeResult {
        complex: current.clone(),
        project: ChainMap {
            source: c.clone(),
            target: current.clone(),
            components: project.components.clone(),
        },
        include: ChainMap {
            source: current.clone(),
            target: c.clone(),
            components: include.components.clone(),
        },
        homotopy,
    };
    verify_equivalence(c, &result)?;
    Ok(result)
}

/// project∘include = id on the minimal model; include∘project ≃ id on c via
/// the returned homotopy; both checked entry-exactly.
fn verify_equivalence(c: &ProjComplex, res: &MinimizeResult) -> Result<()> {
    let a = &c.algebra;
    res.complex.validate()?;
    res.project.verify()?;
    res.include.verify()?;
    // f ∘ g = id_min.
    let fg = res.project.compose(&res.include);
    let id_min = ChainMap::identity(&res.complex);
    for (&d, _) in res.complex.terms() {
        if fg.component(d) != id_min.component(d) {
            return Err(crate::error::CoreError::Verification(format!(
                "minimize: f∘g ≠ id at degree {d}"
            )));
        }
    }
    // id_c − g∘f = d∘h + h∘d.
    let gf = res.include.compose(&res.project);
    for (&d, t) in c.terms() {
        let id_d = MorphismMatrix::identity(a, t.clone());
        let lhs = id_d.sub(a, &gf.component(d));
        let zero_h_next =
            MorphismMatrix::zero(a, c.term(d + 1).to_vec(), c.term(d).to_vec());
        let zero_h_this =
            MorphismMatrix::zero(a, c.term(d).to_vec(), c.term(d - 1).to_vec());
        let h_next = res.homotopy.get(&(d + 1)).unwrap_or(&zero_h_next);
        let h_this = res.homotopy.get(&d).unwrap_or(&zero_h_this);
        let rhs = h_next
            .compose(a, &c.diff(d))
            .add(a, &c.diff(d - 1).compose(a, h_this));
        if lhs != rhs {
            return Err(crate::error::CoreError::Verification(format!(
                "minimize: homotopy identity fails at degree {d}"
            )));
        }
    }
    if !res.complex.is_minimal() {
        return Err(crate::error::CoreError::Verification(
            "minimize did not reach a minimal complex".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tensor_trivial_extension;
    use crate::fixtures;

    #[test]
    fn contractible_reduces_to_zero() {
        let a = Arc::new(fixtures::a2());
        let id = MorphismMatrix::identity(&a, vec![0, 1]);
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0usize, 1]);
        terms.insert(1, vec![0usize, 1]);
        let mut diffs = BTreeMap::new();
        diffs.insert(0, id);
        let c = ProjComplex::new(a, terms, diffs).unwrap();
        let res = minimize(&c).unwrap();
        assert!(res.complex.is_zero());
    }

    #[test]
    fn minimal_input_unchanged() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a);
        let res = minimize(&c).unwrap();
        assert_eq!(res.complex, c);
    }

    #[test]
    fn gaussian_reduction_with_radical_residue() {
        // (Λ⊕Λ → Λ) with differential (1, t) over k[t]/t²: one degree-(−1)
        // summand survives with zero differential.
        let r2 = Arc::new(tensor_trivial_extension(&fixtures::point(), 2).unwrap());
        let one = r2.one_elem();
        let t = r2.t_elem();
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize, 0]);
        terms.insert(0, vec![0usize]);
        let mut d = MorphismMatrix::zero(&r2, vec![0, 0], vec![0]);
        d.set(0, 0, one);
        d.set(0, 1, t);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let c = ProjComplex::new(r2, terms, diffs).unwrap();
        let res = minimize(&c).unwrap();
        assert_eq!(res.complex.term(-1).len(), 1);
        assert!(res.complex.term(0).is_empty());
        assert!(res.complex.diffs().is_empty());
    }

    #[test]
    fn cone_of_identity_minimizes_to_zero() {
        let a = Arc::new(fixtures::a2());
        let c = ProjComplex::stalk(a);
        let id = ChainMap::identity(&c);
        let cone = super::super::cone(&id).unwrap();
        let res = minimize(&cone).unwrap();
        assert!(res.complex.is_zero());
    }
}
