//! Seeded random bounded complexes for property harnesses: direct sums of
//! stalks and two-term pieces with radical differentials (d² holds by
//! construction), optionally glued through a cone to reach width three.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Coeffs};
use crate::complexes::{cone, ChainMap, MorphismMatrix, ProjComplex};
use crate::error::Result;
use crate::homspaces::hom0_basis;

/// A random radical element of the block e_v·Λ·e_u.
fn random_radical_entry(a: &Algebra, u: usize, v: usize, rng: &mut ChaCha8Rng) -> Coeffs {
    let mut e = a.zero_elem();
    for &b in a.block(u, v) {
        if a.basis[b].arrows.is_empty() {
            continue;
        }
        e[b] = a.field.from_i64(rng.gen_range(-3..=3));
    }
    e
}

fn random_multiset(a: &Algebra, max: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = rng.gen_range(1..=max);
    (0..n).map(|_| rng.gen_range(0..a.vertex_count())).collect()
}

/// A minimal two-term piece in degrees (d, d+1) with random radical
/// differential.
fn random_two_term(a: &Arc<Algebra>, d: i64, rng: &mut ChaCha8Rng) -> Result<ProjComplex> {
    let lower = random_multiset(a, 2, rng);
    let upper = random_multiset(a, 2, rng);
    let mut m = MorphismMatrix::zero(a, lower.clone(), upper.clone());
    for r in 0..upper.len() {
        for s in 0..lower.len() {
            m.set(r, s, random_radical_entry(a, lower[s], upper[r], rng));
        }
    }
    let mut terms = BTreeMap::new();
    terms.insert(d, lower);
    terms.insert(d + 1, upper);
    let mut diffs = BTreeMap::new();
    diffs.insert(d, m);
    ProjComplex::new(a.clone(), terms, diffs)
}

/// A seeded random bounded complex: support width ≤ 3 and at most four
/// summands per degree.
pub fn random_bounded_complex(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<ProjComplex> {
    match rng.gen_range(0..5u8) {
        0 => {
            // Stalk plus a two-term piece.
            let stalk =
                ProjComplex::stalk_of(a.clone(), random_multiset(a, 2, rng), rng.gen_range(-1..=1));
            let piece = random_two_term(a, rng.gen_range(-1..=0), rng)?;
            Ok(stalk.direct_sum(&piece))
        }
        1 => {
            // Two two-term pieces.
            let p1 = random_two_term(a, rng.gen_range(-1..=0), rng)?;
            let p2 = random_two_term(a, rng.gen_range(-1..=0), rng)?;
            Ok(p1.direct_sum(&p2))
        }
        2 => {
            // The cone of a random map between two-term pieces: width 3.
            let x = random_two_term(a, 0, rng)?;
            let y = random_two_term(a, 0, rng)?;
            let basis = hom0_basis(&x, &y)?;
            if basis.dim() == 0 {
                return Ok(x.direct_sum(&y));
            }
            let coords: Vec<_> =
                (0..basis.dim()).map(|_| a.field.random_small(rng)).collect();
            let f: ChainMap = basis.combination(&coords);
            cone(&f)
        }
        3 => random_two_term(a, rng.gen_range(-1..=0), rng),
        _ => Ok(ProjComplex::stalk_of(
            a.clone(),
            random_multiset(a, 3, rng),
            rng.gen_range(-1..=1),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;

    #[test]
    fn random_complexes_are_valid_and_bounded() {
        let a = Arc::new(fixtures::brauer(1, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let c = random_bounded_complex(&a, &mut rng).unwrap();
            c.validate().unwrap();
            if let (Some(lo), Some(hi)) = (c.min_degree(), c.max_degree()) {
                assert!(hi - lo <= 2, "support width exceeded");
            }
            for (_, t) in c.terms() {
                assert!(t.len() <= 4);
            }
        }
    }
}
