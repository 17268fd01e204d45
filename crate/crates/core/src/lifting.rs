//! Inductive lifting of complexes across the central extensions
//! Λ_n ← Λ_{n+1}, full lifts from level 1, obstruction reporting with
//! certified cocycles, conormal-layer bookkeeping, and the truncated
//! abelian (module) lifting built on projective resolutions.
//!
//! One step lifts the terms canonically, lifts the differentials through
//! the fixed basis section, extracts the defect Δ = δ∘δ (entries in
//! t^n·Λ_{n+1}), divides out t^n to obtain the obstruction cocycle ε over
//! the level-1 algebra, and solves the homotopy equation ε = s·d + d·s as
//! one linear system. Success corrects the differentials to δ − t^n·ŝ; an
//! unsolvable system certifies a nonzero obstruction class.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Coeffs};
use crate::complexes::{
    minimize, morphism_linear_matrix, proj_basis, ChainMap, MorphismMatrix, ProjComplex,
};
use crate::error::{CoreError, Result};
use crate::field::Scalar;
use crate::homspaces::{hom_complex, relation, Relation};
use crate::linalg::Matrix;
use crate::reduction::{lift_differentials, reduce, QuotientTower, ReductionContext};

/// The obstruction of one lifting step: a degree-2 self-map of the level-1
/// reduction whose class survives in H².
#[derive(Debug, Clone)]
pub struct Obstruction {
    /// The level-1 complex the cocycle acts on.
    pub base: ProjComplex,
    /// ε: base → base[2], keyed by source degree.
    pub cocycle: BTreeMap<i64, MorphismMatrix>,
    /// dim H²(Hom•(base, base)).
    pub h2_dim: usize,
    /// The homotopy system was solved and came back inconsistent.
    pub unsolvable_certified: bool,
}

#[derive(Debug, Clone)]
pub enum LiftOutcome {
    Lifted(ProjComplex),
    Obstructed(Obstruction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepLog {
    pub from_level: usize,
    pub to_level: usize,
    /// The naive differential lift already squared to zero.
    pub defect_was_zero: bool,
    /// Number of homotopy corrections applied.
    pub corrections: usize,
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub outcome: LiftOutcome,
    pub steps: Vec<StepLog>,
}

impl LiftReport {
    pub fn lifted(&self) -> Option<&ProjComplex> {
        match &self.outcome {
            LiftOutcome::Lifted(c) => Some(c),
            LiftOutcome::Obstructed(_) => None,
        }
    }
}

/// Division by t^n: the matrix of x ↦ t^n·section(x) from the level-1
/// algebra into the top one, solved column-exactly.
struct TnDivider {
    base: Arc<Algebra>,
    solver: crate::linalg::Solver,
    /// t^n · section(−): used to rebuild σ from level-1 data.
    section_scaled: Matrix,
}

impl TnDivider {
    fn new(up: &Arc<Algebra>, step_target_level: usize) -> Result<Self> {
        // up = Λ_{n+1}; n = step_target_level.
        let n = step_target_level;
        let ctx1 = ReductionContext::to_level(up.clone(), 1)?;
        let tn = up.elem_pow(&up.t_elem(), n);
        let tn_mult = up.left_mult_matrix(&tn);
        let mat = tn_mult.mul(&ctx1.section);
        let _ = n;
        if mat.rank() != ctx1.target.dim() {
            return Err(CoreError::AlgebraInvariant(
                "t^n-multiplication is not injective on the level-1 section".into(),
            ));
        }
        Ok(TnDivider {
            base: ctx1.target.clone(),
            solver: crate::linalg::Solver::new(&mat),
            section_scaled: mat,
        })
    }

    /// x over the level-1 algebra with t^n·section(x) = y, if it exists.
    fn divide(&self, y: &Coeffs) -> Result<Option<Coeffs>> {
        Ok(self.solver.solve(y))
    }

    /// t^n·section(x) for level-1 coordinates x.
    fn scale_up(&self, x: &Coeffs) -> Coeffs {
        self.section_scaled.apply(x)
    }
}

/// Lift one level: Λ_n → Λ_{n+1} along the step context.
pub fn lift_step(low: &ProjComplex, step: &ReductionContext) -> Result<LiftReport> {
    if *low.algebra != *step.target {
        return Err(CoreError::AlgebraMismatch);
    }
    let low_min = minimize(low)?.complex;
    let up = step.source.clone();
    let n = step.target.t_nilpotency();
    let from_level = n;
    let to_level = up.t_nilpotency();
    if to_level != n + 1 {
        return Err(CoreError::Precondition(format!(
            "lift_step expects a single-level context, got {to_level} → {n}"
        )));
    }

    let terms = low_min.terms().clone();
    let mut delta = lift_differentials(step, &low_min);

    let ctx_low_to_1 = ReductionContext::to_level(low.algebra.clone(), 1)?;
    let p1 = reduce(&ctx_low_to_1, &low_min)?;
    let k1 = hom_complex(&p1, &p1)?;
    let divider = TnDivider::new(&up, n)?;

    let mut corrections = 0usize;
    let mut defect_was_zero = true;
    loop {
        // Δ^i = δ^{i+1} ∘ δ^i.
        let mut defect: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();
        let degrees: Vec<i64> = terms.keys().copied().collect();
        let mut all_zero = true;
        for &i in &degrees {
            let (Some(d0), Some(d1)) = (delta.get(&i), delta.get(&(i + 1))) else {
                continue;
            };
            let square = d1.compose(&up, d0);
            if !square.is_zero(&up) {
                all_zero = false;
                defect.insert(i, square);
            }
        }
        if all_zero {
            break;
        }
        defect_was_zero = false;
        if corrections >= 4 {
            return Err(CoreError::Verification(
                "homotopy correction did not converge".into(),
            ));
        }

        // ε := Δ / t^n over the level-1 algebra, entries asserted to lie in
        // t^n·Λ_{n+1}.
        let mut eps: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();
        for (&i, sq) in &defect {
            let mut m =
                MorphismMatrix::zero(&divider.base, sq.source.clone(), sq.target.clone());
            for r in 0..sq.rows() {
                for s in 0..sq.cols() {
                    let y = sq.at(r, s);
                    if up.elem_is_zero(y) {
                        continue;
                    }
                    let Some(x) = divider.divide(y)? else {
                        return Err(CoreError::Verification(format!(
                            "defect entry at degree {i}, ({r},{s}) does not lie in t^{n}·Λ"
                        )));
                    };
                    m.set(r, s, x);
                }
            }
            eps.insert(i, m);
        }
        // Cocycle condition: ε is a chain map base → base[2].
        let eps_map = ChainMap {
            source: p1.clone(),
            target: p1.shift(2),
            components: eps.clone(),
        };
        eps_map.verify().map_err(|_| {
            CoreError::Verification("obstruction defect is not a cocycle".into())
        })?;

        // Solve ε = d_K(s) for s ∈ K¹ in one global system.
        let eps_vec = k1.chain_map_coords(2, &eps);
        let d1_mat = k1.diff(1);
        let rhs = Matrix::from_fn(up.field, eps_vec.len(), 1, |i, _| eps_vec[i].clone());
        let solution = d1_mat.solve(&rhs)?;
        let Some(sol) = solution else {
            let h2_dim = k1.cohomology_dim(2);
            return Ok(LiftReport {
                outcome: LiftOutcome::Obstructed(Obstruction {
                    base: p1,
                    cocycle: eps,
                    h2_dim,
                    unsolvable_certified: true,
                }),
                steps: vec![StepLog { from_level, to_level, defect_was_zero, corrections }],
            });
        };
        let s_comps = k1.coords_to_components(1, &sol.col(0));
        // σ^i = t^n · section(s^i); corrected differential δ − σ.
        for (&i, _) in &terms.clone() {
            let Some(d) = delta.get(&i) else { continue };
            let Some(s) = s_comps.get(&i) else { continue };
            let mut corrected = d.clone();
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let sigma = divider.scale_up(s.at(r, c));
                    corrected.set(r, c, up.elem_sub(d.at(r, c), &sigma));
                }
            }
            delta.insert(i, corrected);
        }
        corrections += 1;
    }

    let lifted = ProjComplex::new(up.clone(), terms, delta)?;
    if !lifted.is_minimal() {
        return Err(CoreError::Verification("lift of a minimal complex is not minimal".into()));
    }
    // Round trip: the reduction of the lift is the input, entry-exactly.
    let down = reduce(step, &lifted)?;
    if down != low_min {
        return Err(CoreError::Verification(
            "reduction of the lifted complex differs from the input".into(),
        ));
    }
    Ok(LiftReport {
        outcome: LiftOutcome::Lifted(lifted),
        steps: vec![StepLog { from_level, to_level, defect_was_zero, corrections }],
    })
}

/// Iterate lift_step from level 1 up to `target_level` in the tower.
/// Presilting inputs are guaranteed to lift; an obstruction for them is an
/// internal error. Non-presilting inputs return either outcome faithfully.
pub fn lift_full(
    p: &ProjComplex,
    tower: &QuotientTower,
    target_level: usize,
) -> Result<LiftReport> {
    if *p.algebra != *tower.level(1) {
        return Err(CoreError::AlgebraMismatch);
    }
    if target_level < 1 || target_level > tower.top_level {
        return Err(CoreError::Precondition(format!(
            "target level {target_level} out of range"
        )));
    }
    let presilting = relation(p, p, Relation::Geq)?;
    let mut current = minimize(p)?.complex;
    let mut steps = Vec::new();
    for nlevel in 1..target_level {
        let report = lift_step(&current, tower.step(nlevel))?;
        steps.extend(report.steps.clone());
        match report.outcome {
            LiftOutcome::Lifted(next) => current = next,
            LiftOutcome::Obstructed(o) => {
                if presilting {
                    return Err(CoreError::Verification(format!(
                        "presilting complex met an obstruction at level {nlevel}; \
                         this contradicts the lifting theorem (H² dim {})",
                        o.h2_dim
                    )));
                }
                return Ok(LiftReport { outcome: LiftOutcome::Obstructed(o), steps });
            }
        }
    }
    if presilting && !relation(&current, &current, Relation::Geq)? {
        return Err(CoreError::Verification(
            "lift of a presilting complex is not presilting".into(),
        ));
    }
    Ok(LiftReport { outcome: LiftOutcome::Lifted(current), steps })
}

/// One conormal layer t^nΛ/t^{n+1}Λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConormalData {
    pub level: usize,
    /// dim_k(t^nΛ/t^{n+1}Λ) / dim_k(Λ₁).
    pub rank: usize,
    pub free: bool,
}

/// Layer dimensions of the t-power filtration; under the freeness invariant
/// every layer is a free Λ₁-bimodule of rank 1, which trivializes the
/// twists in the lifting obstruction spaces.
pub fn conormal_check(a: &Arc<Algebra>) -> Result<Vec<ConormalData>> {
    if !a.has_t() {
        return Ok(vec![]);
    }
    let m = a.t_nilpotency();
    let d = a.dim();
    let t = a.t_elem();
    let dim1 = {
        let t_mat = a.left_mult_matrix(&t);
        d - t_mat.rank()
    };
    let mut out = Vec::new();
    let rank_of_power = |j: usize| -> usize {
        let p = a.elem_pow(&t, j);
        a.left_mult_matrix(&p).rank()
    };
    for n in 0..m {
        let layer = rank_of_power(n) - rank_of_power(n + 1);
        let rank = layer / dim1.max(1);
        // ψ_n: Λ₁ → t^nΛ/t^{n+1}Λ, x ↦ t^n·x; injective iff dims agree.
        let free = layer == dim1 && rank == 1;
        if !free {
            return Err(CoreError::Verification(format!(
                "conormal layer {n} has dimension {layer} ≠ dim Λ₁ = {dim1}; \
                 lifting over non-free layers is unsupported"
            )));
        }
        out.push(ConormalData { level: n, rank, free });
    }
    Ok(out)
}

/// A finite-dimensional right module given by vertex-graded dimensions and
/// arrow actions.
#[derive(Debug, Clone)]
pub struct FdModule {
    pub algebra: Arc<Algebra>,
    /// Vertex of each basis coordinate.
    pub grading: Vec<usize>,
    /// Per arrow α: u→w, the action N_w → N_u as a full matrix (zero
    /// outside the graded blocks).
    pub arrow_actions: Vec<Matrix>,
}

impl FdModule {
    pub fn new(algebra: Arc<Algebra>, grading: Vec<usize>, arrow_actions: Vec<Matrix>) -> Result<Self> {
        let m = FdModule { algebra, grading, arrow_actions };
        m.verify()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn vertex_dims(&self) -> Vec<usize> {
        let mut dims = vec![0usize; self.algebra.vertex_count()];
        for &v in &self.grading {
            dims[v] += 1;
        }
        dims
    }

    fn idempotent_action(&self, v: usize) -> Matrix {
        let field = self.algebra.field;
        Matrix::from_fn(field, self.dim(), self.dim(), |i, j| {
            if i == j && self.grading[i] == v {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// Action of a basis path on a right module: in the product
    /// p = a₀·a₁·…·a_k the leftmost arrow acts first (m·(xy) = (m·x)·y),
    /// so the matrix is act(a_k)·…·act(a₀) restricted to the target grading.
    pub fn basis_action(&self, basis_idx: usize) -> Matrix {
        let path = &self.algebra.basis[basis_idx];
        let mut acc = self.idempotent_action(path.target);
        for &arrow in &path.arrows {
            acc = self.arrow_actions[arrow].mul(&acc);
        }
        acc
    }

    pub fn elem_action(&self, x: &Coeffs) -> Matrix {
        let field = self.algebra.field;
        let mut acc = Matrix::zero(field, self.dim(), self.dim());
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.basis_action(b).scale(c));
            }
        }
        acc
    }

    /// The action must respect gradings and the multiplication table.
    fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        if self.arrow_actions.len() != a.quiver.arrows.len() {
            return Err(CoreError::Precondition("one action matrix per arrow required".into()));
        }
        for (ai, arrow) in a.quiver.arrows.iter().enumerate() {
            let act = &self.arrow_actions[ai];
            if act.rows != self.dim() || act.cols != self.dim() {
                return Err(CoreError::Dimension("arrow action of wrong shape".into()));
            }
            for i in 0..self.dim() {
                for j in 0..self.dim() {
                    if !act.at(i, j).is_zero()
                        && !(self.grading[j] == arrow.target && self.grading[i] == arrow.source)
                    {
                        return Err(CoreError::Precondition(format!(
                            "arrow {} action violates the vertex grading",
                            arrow.name
                        )));
                    }
                }
            }
        }
        // Multiplicativity on all basis pairs: act(x·y) = act(y)·act(x).
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = self.elem_action(a.basis_mul(i, j));
                let composed = self.basis_action(j).mul(&self.basis_action(i));
                if prod != composed {
                    return Err(CoreError::Precondition(format!(
                        "module action fails multiplicativity on basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The module e_vΛ with its regular right action.
    pub fn projective(algebra: Arc<Algebra>, v: usize) -> FdModule {
        let basis = proj_basis(&algebra, v);
        let field = algebra.field;
        let grading: Vec<usize> = basis.iter().map(|&b| algebra.basis[b].source).collect();
        let arrow_actions: Vec<Matrix> = (0..algebra.quiver.arrows.len())
            .map(|ai| {
                let arrow_elem = algebra.arrow_class(ai);
                Matrix::from_fn(field, basis.len(), basis.len(), |i, j| {
                    let prod = algebra.elem_mul(&algebra.basis_elem(basis[j]), &arrow_elem);
                    prod[basis[i]].clone()
                })
            })
            .collect();
        FdModule { algebra, grading, arrow_actions }
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &FdModule) -> FdModule {
        let field = self.algebra.field;
        let d1 = self.dim();
        let d2 = other.dim();
        let mut grading = self.grading.clone();
        grading.extend(&other.grading);
        let arrow_actions = (0..self.arrow_actions.len())
            .map(|ai| {
                Matrix::from_fn(field, d1 + d2, d1 + d2, |i, j| {
                    if i < d1 && j < d1 {
                        self.arrow_actions[ai].at(i, j).clone()
                    } else if i >= d1 && j >= d1 {
                        other.arrow_actions[ai].at(i - d1, j - d1).clone()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        FdModule { algebra: self.algebra.clone(), grading, arrow_actions }
    }

    /// A simple module concentrated at one vertex.
    pub fn simple(algebra: Arc<Algebra>, v: usize) -> FdModule {
        let field = algebra.field;
        let n_arrows = algebra.quiver.arrows.len();
        FdModule {
            algebra,
            grading: vec![v],
            arrow_actions: vec![Matrix::zero(field, 1, 1); n_arrows],
        }
    }
}

/// Isomorphism of modules: graded intertwiner search, randomized trials
/// over the intertwiner space followed by its basis vectors.
pub fn module_iso(m1: &FdModule, m2: &FdModule, seed: u64) -> Result<Option<Matrix>> {
    use rand::SeedableRng;
    if m1.vertex_dims() != m2.vertex_dims() {
        return Ok(None);
    }
    let field = m1.algebra.field;
    let d = m1.dim();
    if d == 0 {
        return Ok(Some(Matrix::zero(field, 0, 0)));
    }
    // Unknowns: entries of φ with matching grading; equations: for each
    // arrow, φ·act₁ = act₂·φ.
    let positions: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|&(i, j)| m2.grading[i] == m1.grading[j])
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for ai in 0..m1.arrow_actions.len() {
        let a1 = &m1.arrow_actions[ai];
        let a2 = &m2.arrow_actions[ai];
        for i in 0..d {
            for j in 0..d {
                // (φ·a1 − a2·φ)_{ij} = Σ_k φ_{ik} a1_{kj} − a2_{ik} φ_{kj}.
                let mut row = vec![field.zero(); positions.len()];
                for (pidx, &(pi, pj)) in positions.iter().enumerate() {
                    let mut c = field.zero();
                    if pi == i {
                        c = c.add(a1.at(pj, j));
                    }
                    if pj == j {
                        c = c.sub(a2.at(i, pi));
                    }
                    row[pidx] = c;
                }
                rows.push(row);
            }
        }
    }
    let sys = crate::linalg::rows_matrix(field, positions.len(), &rows);
    let kernel = sys.kernel_basis();
    if kernel.is_empty() {
        return Ok(None);
    }
    let build = |coords: &[Scalar]| -> Matrix {
        let mut phi = Matrix::zero(field, d, d);
        for (pidx, &(pi, pj)) in positions.iter().enumerate() {
            let mut v = field.zero();
            for (kidx, kvec) in kernel.iter().enumerate() {
                if !kvec[pidx].is_zero() && !coords[kidx].is_zero() {
                    v = v.add(&coords[kidx].mul(&kvec[pidx]));
                }
            }
            phi.set(pi, pj, v);
        }
        phi
    };
    let mut trials: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..kernel.len() {
        let mut v = vec![field.zero(); kernel.len()];
        v[i] = field.one();
        trials.push(v);
    }
    trials.push(vec![field.one(); kernel.len()]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        trials.push((0..kernel.len()).map(|_| field.random_small(&mut rng)).collect());
    }
    for t in trials {
        let phi = build(&t);
        if phi.inverse().is_some() {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Minimal projective resolution of a module, to the requested length.
/// Returns the resolution as a complex in degrees −len..0 together with
/// the cover data.
pub fn minimal_resolution(module: &FdModule, len: usize) -> Result<ProjComplex> {
    let a = module.algebra.clone();
    let field = a.field;
    // Present each syzygy as a submodule of a projective sum: vectors in
    // the ambient module with a chosen generator set.
    struct Stage {
        /// Summand vertices of the cover.
        cover: Vec<usize>,
        /// Differential into the previous cover (empty for the first).
        map: Option<MorphismMatrix>,
    }

    // A semi-explicit submodule: ambient FdModule plus a spanning set.
    let mut stages: Vec<Stage> = Vec::new();
    let mut current_module = module.clone();
    let mut current_vectors: Option<Vec<Vec<Scalar>>> = None; // None: whole module
    let mut prev_cover_module: Option<(FdModule, Vec<usize>)> = None;

    for _ in 0..=len {
        // Span of the current submodule.
        let dim_ambient = current_module.dim();
        let vectors: Vec<Vec<Scalar>> = match &current_vectors {
            None => (0..dim_ambient)
                .map(|i| {
                    let mut v = vec![field.zero(); dim_ambient];
                    v[i] = field.one();
                    v
                })
                .collect(),
            Some(vs) => vs.clone(),
        };
        let span = crate::linalg::span_basis(field, dim_ambient, &vectors);
        if span.is_empty() {
            break;
        }
        // Radical part: images of all arrow actions applied to the span.
        let mut rad_vectors = Vec::new();
        for v in &span {
            for act in &current_module.arrow_actions {
                let img = act.apply(v);
                if img.iter().any(|c| !c.is_zero()) {
                    rad_vectors.push(img);
                }
            }
        }
        // Intersect with the span (the radical of the submodule is
        // span·rad ⊆ span automatically).
        let top_rank = {
            let mut sieve = crate::linalg::EchelonSieve::new(dim_ambient);
            for v in &rad_vectors {
                sieve.insert(v);
            }
            let rad_rank = sieve.rank();
            for v in &span {
                sieve.insert(v);
            }
            sieve.rank() - rad_rank
        };
        if top_rank == 0 {
            break;
        }
        // Generators: span vectors independent modulo the radical part,
        // graded by vertex.
        let mut generators: Vec<(usize, Vec<Scalar>)> = Vec::new();
        {
            let mut sieve = crate::linalg::EchelonSieve::new(dim_ambient);
            for v in &rad_vectors {
                sieve.insert(v);
            }
            for v in &span {
                for vertex in 0..a.vertex_count() {
                    let mut comp = vec![field.zero(); dim_ambient];
                    let mut nonzero = false;
                    for i in 0..dim_ambient {
                        if current_module.grading[i] == vertex && !v[i].is_zero() {
                            comp[i] = v[i].clone();
                            nonzero = true;
                        }
                    }
                    if !nonzero {
                        continue;
                    }
                    if sieve.insert(&comp) {
                        generators.push((vertex, comp));
                    }
                }
            }
        }
        let cover: Vec<usize> = generators.iter().map(|(v, _)| *v).collect();

        // The cover map to the previous stage (for stage 0 it maps onto the
        // module itself and is not part of the complex).
        let map = prev_cover_module.as_ref().map(|(prev_mod, prev_cover)| {
            // Each generator is a vector of the previous cover module
            // ⊕e_vΛ; its coordinates give the morphism entries.
            let mut m = MorphismMatrix::zero(&a, cover.clone(), prev_cover.clone());
            let mut offsets = Vec::new();
            let mut off = 0;
            for &v in prev_cover {
                offsets.push(off);
                off += proj_basis(&a, v).len();
            }
            for (col, (_, gen)) in generators.iter().enumerate() {
                for (row, &v) in prev_cover.iter().enumerate() {
                    let basis = proj_basis(&a, v);
                    let mut elem = a.zero_elem();
                    for (k, &b) in basis.iter().enumerate() {
                        elem[b] = gen[offsets[row] + k].clone();
                    }
                    m.set(row, col, elem);
                }
            }
            let _ = prev_mod;
            m
        });
        stages.push(Stage { cover: cover.clone(), map });

        // Next stage: the kernel of the cover map ⊕e_vΛ → current span.
        let cover_module = (0..cover.len())
            .map(|i| FdModule::projective(a.clone(), cover[i]))
            .reduce(|x, y| x.direct_sum(&y))
            .expect("nonempty cover");
        // Linear map from the cover module onto the submodule: generator
        // e_v of each summand ↦ its generator vector; a general basis
        // element b = e_v·b ↦ generator·b.
        let cover_dim = cover_module.dim();
        let mut cover_map = Matrix::zero(field, dim_ambient, cover_dim);
        {
            let mut col = 0;
            for (gi, &v) in cover.iter().enumerate() {
                let basis = proj_basis(&a, v);
                for &b in &basis {
                    // Image of basis element b of e_vΛ: gen · b.
                    let img = current_module.elem_action(&a.basis_elem(b)).apply(&generators[gi].1);
                    for i in 0..dim_ambient {
                        cover_map.set(i, col, img[i].clone());
                    }
                    col += 1;
                }
            }
        }
        let kernel = cover_map.kernel_basis();
        prev_cover_module = Some((cover_module.clone(), cover.clone()));
        current_module = cover_module;
        current_vectors = Some(kernel);
    }

    // Assemble the complex in degrees −(stages−1)..0.
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (k, stage) in stages.iter().enumerate() {
        let deg = -(k as i64);
        terms.insert(deg, stage.cover.clone());
        if let Some(m) = &stage.map {
            diffs.insert(deg, m.clone());
        }
    }
    ProjComplex::new(a, terms, diffs)
}

#[derive(Debug, Clone)]
pub struct ModuleLiftReport {
    pub outcome: ModuleLiftOutcome,
    pub truncation_depth: usize,
    /// Tor_i(M, Λ₁) verified zero for 1 ≤ i ≤ depth − 1; nothing is claimed
    /// beyond the truncation.
    pub tor_vanishing_verified: usize,
}

#[derive(Debug, Clone)]
pub enum ModuleLiftOutcome {
    Lifted { module: FdModule, dim: usize },
    Obstructed(Obstruction),
}

/// Lift a module over Λ₁ to the top of the tower through its truncated
/// minimal projective resolution.
pub fn lift_module(
    n_module: &FdModule,
    depth: usize,
    tower: &QuotientTower,
    target_level: usize,
) -> Result<ModuleLiftReport> {
    if *n_module.algebra != *tower.level(1) {
        return Err(CoreError::AlgebraMismatch);
    }
    if depth < 2 {
        return Err(CoreError::Precondition("resolution depth must be ≥ 2".into()));
    }
    let resolution = minimal_resolution(n_module, depth)?;
    let report = lift_full(&resolution, tower, target_level)?;
    let lifted = match report.outcome {
        LiftOutcome::Obstructed(o) => {
            return Ok(ModuleLiftReport {
                outcome: ModuleLiftOutcome::Obstructed(o),
                truncation_depth: depth,
                tor_vanishing_verified: 0,
            })
        }
        LiftOutcome::Lifted(l) => l,
    };
    let top = tower.level(target_level);
    // M = coker(d^{-1}: L^{-1} → L⁰).
    let l0 = lifted.term(0).to_vec();
    let d_minus1 = lifted.diff(-1);
    let linear = morphism_linear_matrix(&top, &d_minus1);
    let ambient = (0..l0.len())
        .map(|i| FdModule::projective(top.clone(), l0[i]))
        .reduce(|x, y| x.direct_sum(&y))
        .ok_or_else(|| CoreError::Verification("lifted resolution lost its degree-0 term".into()))?;
    let image_rows: Vec<Vec<Scalar>> = (0..linear.cols).map(|j| linear.col(j)).collect();
    let (rref, pivots) = crate::linalg::rows_matrix(top.field, ambient.dim(), &image_rows).rref();
    let live: Vec<usize> = (0..ambient.dim()).filter(|i| !pivots.contains(i)).collect();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &piv) in pivots.iter().enumerate() {
            if !v[piv].is_zero() {
                let c = v[piv].clone();
                for k in 0..v.len() {
                    let r = rref.at(row, k);
                    if !r.is_zero() {
                        v[k] = v[k].sub(&c.mul(r));
                    }
                }
            }
        }
        live.iter().map(|&i| v[i].clone()).collect()
    };
    let grading: Vec<usize> = live.iter().map(|&i| ambient.grading[i]).collect();
    let arrow_actions: Vec<Matrix> = (0..top.quiver.arrows.len())
        .map(|ai| {
            let dimq = live.len();
            Matrix::from_fn(top.field, dimq, dimq, |i, j| {
                // Action on the coset of live[j].
                let mut v = vec![top.field.zero(); ambient.dim()];
                v[live[j]] = top.field.one();
                let img = ambient.arrow_actions[ai].apply(&v);
                project(&img)[i].clone()
            })
        })
        .collect();
    let lifted_module = FdModule::new(top.clone(), grading, arrow_actions)?;

    // (i) M ⊗ Λ₁ ≅ N: the reduction of M is its quotient by the image of
    // the t-action.
    let reduced = {
        let t_act = lifted_module.elem_action(&top.t_elem());
        let amb_dim = lifted_module.dim();
        let image_rows: Vec<Vec<Scalar>> = (0..amb_dim).map(|j| t_act.col(j)).collect();
        let (rref2, pivots2) =
            crate::linalg::rows_matrix(top.field, amb_dim, &image_rows).rref();
        let live2: Vec<usize> = (0..amb_dim).filter(|i| !pivots2.contains(i)).collect();
        let project2 = |v: &[Scalar]| -> Vec<Scalar> {
            let mut v = v.to_vec();
            for (row, &piv) in pivots2.iter().enumerate() {
                if !v[piv].is_zero() {
                    let c = v[piv].clone();
                    for k in 0..v.len() {
                        let r = rref2.at(row, k);
                        if !r.is_zero() {
                            v[k] = v[k].sub(&c.mul(r));
                        }
                    }
                }
            }
            live2.iter().map(|&i| v[i].clone()).collect()
        };
        let grading2: Vec<usize> = live2.iter().map(|&i| lifted_module.grading[i]).collect();
        let base = tower.level(1);
        let arrow_actions2: Vec<Matrix> = (0..base.quiver.arrows.len())
            .map(|ai| {
                Matrix::from_fn(base.field, live2.len(), live2.len(), |i, j| {
                    let mut v = vec![base.field.zero(); amb_dim];
                    v[live2[j]] = base.field.one();
                    let img = lifted_module.arrow_actions[ai].apply(&v);
                    project2(&img)[i].clone()
                })
            })
            .collect();
        FdModule::new(base, grading2, arrow_actions2)?
    };
    if module_iso(&reduced, n_module, 0xA11C)?.is_none() {
        return Err(CoreError::Verification(
            "reduction of the lifted module is not isomorphic to the input".into(),
        ));
    }

    // (ii) Tor_i(M, Λ₁) = 0 for 1 ≤ i ≤ depth − 1 via the lifted
    // resolution: exactness of L at the middle degrees upstairs (cokernel
    // fits) and of its reduction downstairs.
    let mut verified = 0;
    for i in 1..depth {
        let deg = -(i as i64);
        let out_rank = morphism_linear_matrix(&top, &lifted.diff(deg)).rank();
        let in_rank = morphism_linear_matrix(&top, &lifted.diff(deg - 1)).rank();
        let mid_dim: usize =
            lifted.term(deg).iter().map(|&v| proj_basis(&top, v).len()).sum();
        if mid_dim != out_rank + in_rank {
            return Err(CoreError::Verification(format!(
                "lifted resolution is not exact at degree {deg}"
            )));
        }
        // Downstairs exactness gives the Tor vanishing.
        let ctx1 = tower.context(target_level, 1)?;
        let down = reduce(&ctx1, &lifted)?;
        let base = tower.level(1);
        let out_rank_d = morphism_linear_matrix(&base, &down.diff(deg)).rank();
        let in_rank_d = morphism_linear_matrix(&base, &down.diff(deg - 1)).rank();
        let mid_dim_d: usize =
            down.term(deg).iter().map(|&v| proj_basis(&base, v).len()).sum();
        if mid_dim_d != out_rank_d + in_rank_d {
            return Err(CoreError::Verification(format!(
                "Tor_{i}(M, Λ₁) does not vanish"
            )));
        }
        verified = i;
    }

    let dim = lifted_module.dim();
    Ok(ModuleLiftReport {
        outcome: ModuleLiftOutcome::Lifted { module: lifted_module, dim },
        truncation_depth: depth,
        tor_vanishing_verified: verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tensor_trivial_extension;
    use crate::complexes::iso_test;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2_tower(m: usize) -> QuotientTower {
        let l = Arc::new(tensor_trivial_extension(&fixtures::a2(), m).unwrap());
        QuotientTower::new(l).unwrap()
    }

    fn x4_tower() -> QuotientTower {
        QuotientTower::new(Arc::new(fixtures::local_loop_with_central_square())).unwrap()
    }

    #[test]
    fn conormal_layers_of_tensor_algebras() {
        let l3 = Arc::new(tensor_trivial_extension(&fixtures::a2(), 3).unwrap());
        let layers = conormal_check(&l3).unwrap();
        assert_eq!(layers.len(), 3);
        assert!(layers.iter().all(|l| l.free && l.rank == 1));

        let r2 = Arc::new(tensor_trivial_extension(&fixtures::point(), 2).unwrap());
        assert_eq!(conormal_check(&r2).unwrap().len(), 2);

        let a2 = Arc::new(fixtures::a2());
        assert!(conormal_check(&a2).unwrap().is_empty());
    }

    #[test]
    fn lift_stalk_is_trivial() {
        let tower = a2_tower(2);
        let p = ProjComplex::stalk(tower.level(1));
        let report = lift_full(&p, &tower, 2).unwrap();
        let lifted = report.lifted().unwrap();
        assert_eq!(lifted.terms(), ProjComplex::stalk(tower.level(2)).terms());
        assert!(report.steps.iter().all(|s| s.defect_was_zero));
    }

    #[test]
    fn lift_zero_differential_complex() {
        let tower = a2_tower(2);
        let base = ProjComplex::stalk(tower.level(1));
        let c = base.direct_sum(&base.shift(3));
        let report = lift_full(&c, &tower, 2).unwrap();
        assert!(report.lifted().unwrap().diffs().is_empty());
    }

    #[test]
    fn lift_two_term_silting_node() {
        // (e₁Λ₁ →α e₂Λ₁) ⊕ e₂Λ₁ lifts to the same shape over Λ₂ and
        // round-trips.
        let tower = a2_tower(2);
        let base = tower.level(1);
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![1usize]);
        let mut d = MorphismMatrix::zero(&base, vec![0], vec![1]);
        d.set(0, 0, base.arrow_class(0));
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let cone_c = ProjComplex::new(base.clone(), terms, diffs).unwrap();
        let p = cone_c.direct_sum(&ProjComplex::stalk_of(base, vec![1], 0));
        let report = lift_full(&p, &tower, 2).unwrap();
        let lifted = report.lifted().unwrap();
        let ctx = tower.context(2, 1).unwrap();
        let down = reduce(&ctx, lifted).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(iso_test(&down, &p, &mut rng).unwrap().is_some());
        assert!(relation(lifted, lifted, Relation::Geq).unwrap());
    }

    #[test]
    fn obstructed_lift_over_truncated_polynomials() {
        // Over Λ₁ = k[x]/x² with Λ = k[x]/x⁴, t = x², the three-term
        // complex (Λ₁ →x Λ₁ →x Λ₁) has defect x² = t·1 whose class in H²
        // survives: certified obstruction.
        let tower = x4_tower();
        let base = tower.level(1);
        let x = base.arrow_class(0);
        let mut terms = BTreeMap::new();
        terms.insert(-2, vec![0usize]);
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![0usize]);
        let mut d = MorphismMatrix::zero(&base, vec![0], vec![0]);
        d.set(0, 0, x);
        let mut diffs = BTreeMap::new();
        diffs.insert(-2, d.clone());
        diffs.insert(-1, d);
        let c = ProjComplex::new(base, terms, diffs).unwrap();
        let report = lift_step(&c, tower.step(1)).unwrap();
        match report.outcome {
            LiftOutcome::Obstructed(o) => {
                assert!(o.unsolvable_certified);
                assert!(o.h2_dim > 0);
                assert!(!o.cocycle.is_empty());
            }
            LiftOutcome::Lifted(_) => panic!("expected an obstruction"),
        }
    }

    #[test]
    fn two_term_complexes_lift_over_x4() {
        // d² is vacuous on two-term complexes, so (Λ₁ →x Λ₁) lifts.
        let tower = x4_tower();
        let base = tower.level(1);
        let x = base.arrow_class(0);
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![0usize]);
        terms.insert(0, vec![0usize]);
        let mut d = MorphismMatrix::zero(&base, vec![0], vec![0]);
        d.set(0, 0, x);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        let c = ProjComplex::new(base, terms, diffs).unwrap();
        let report = lift_step(&c, tower.step(1)).unwrap();
        assert!(report.lifted().is_some());
    }

    #[test]
    fn simple_module_lifts_with_doubled_dimension() {
        let tower = a2_tower(2);
        let base = tower.level(1);
        for v in 0..2 {
            let n = FdModule::simple(base.clone(), v);
            let report = lift_module(&n, 3, &tower, 2).unwrap();
            match report.outcome {
                ModuleLiftOutcome::Lifted { dim, .. } => assert_eq!(dim, 2),
                ModuleLiftOutcome::Obstructed(_) => panic!("simple module must lift"),
            }
            assert_eq!(report.tor_vanishing_verified, 2);
        }
    }

    #[test]
    fn projective_module_lifts_to_projective() {
        let tower = a2_tower(2);
        let base = tower.level(1);
        let n = FdModule::projective(base, 1);
        let report = lift_module(&n, 3, &tower, 2).unwrap();
        match report.outcome {
            ModuleLiftOutcome::Lifted { module, dim } => {
                assert_eq!(dim, 2 * n.dim());
                let expected = FdModule::projective(tower.level(2), 1);
                assert!(module_iso(&module, &expected, 3).unwrap().is_some());
            }
            ModuleLiftOutcome::Obstructed(_) => panic!("projective must lift"),
        }
    }

    #[test]
    fn minimal_resolution_of_simple_over_a2() {
        let a = Arc::new(fixtures::a2());
        // The non-projective simple has resolution 0 → e₁Λ → e₂Λ.
        let s2 = FdModule::simple(a.clone(), 1);
        let res = minimal_resolution(&s2, 3).unwrap();
        assert_eq!(res.term(0), &[1]);
        assert_eq!(res.term(-1), &[0]);
        assert!(res.term(-2).is_empty());
        // The projective simple resolves instantly.
        let s1 = FdModule::simple(a, 0);
        let res1 = minimal_resolution(&s1, 3).unwrap();
        assert_eq!(res1.term(0), &[0]);
        assert!(res1.term(-1).is_empty());
    }
}
