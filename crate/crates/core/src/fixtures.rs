//! Bundled algebra presentations used by tests, the verification suites and
//! the shipped example files: kA₂, truncated polynomial rings, their central
//! extensions, and the Brauer graph algebras B(m_a, m_b) on the graph with
//! two nodes joined by three edges.

use crate::algebra::{
    build_algebra, tensor_trivial_extension, Algebra, AlgebraPresentation, PathExpr, Quiver,
};
use crate::field::FieldSpec;

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

/// The path algebra of the A₂ quiver 1 →a 2.
pub fn a2_presentation() -> AlgebraPresentation {
    AlgebraPresentation {
        field: q(),
        quiver: Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap(),
        relations: vec![],
        nilpotency_bound: 2,
        central_element: None,
    }
}

pub fn a2() -> Algebra {
    build_algebra(&a2_presentation()).unwrap()
}

/// The ground field as a one-vertex algebra.
pub fn point() -> Algebra {
    build_algebra(&AlgebraPresentation {
        field: q(),
        quiver: Quiver::new(vec!["1".into()], vec![]).unwrap(),
        relations: vec![],
        nilpotency_bound: 1,
        central_element: None,
    })
    .unwrap()
}

/// k[x]/(x^n), without a central element.
pub fn local_loop_presentation(n: usize) -> AlgebraPresentation {
    AlgebraPresentation {
        field: q(),
        quiver: Quiver::new(
            vec!["1".into()],
            vec![("x".into(), "1".into(), "1".into())],
        )
        .unwrap(),
        relations: vec![],
        nilpotency_bound: n,
        central_element: None,
    }
}

pub fn local_loop(n: usize) -> Algebra {
    build_algebra(&local_loop_presentation(n)).unwrap()
}

/// k[x]/(x^n) with t := x^k as the central parameter; requires k | n.
pub fn local_loop_with_central(n: usize, k: usize) -> Algebra {
    assert!(n % k == 0, "t = x^{k} must generate a free action on k[x]/x^{n}");
    let mut p = local_loop_presentation(n);
    p.central_element = Some(PathExpr::monomial(q().one(), vec!["x"; k]));
    build_algebra(&p).unwrap()
}

/// k[x]/(x⁴) with t = x²: the smallest algebra with genuinely obstructed
/// lifting problems across k[x]/x² ← k[x]/x⁴.
pub fn local_loop_with_central_square() -> Algebra {
    local_loop_with_central(4, 2)
}

/// kA₂ ⊗ k[t]/(t^m).
pub fn a2_tensor(m: usize) -> Algebra {
    tensor_trivial_extension(&a2(), m).unwrap()
}

/// Brauer graph algebra B(m_a, m_b) of the graph ∘≡∘ (three parallel edges,
/// multiplicities m_a and m_b on the two nodes). Quiver: three vertices (the
/// edges), the a-cycle 1→2→3→1 and the b-cycle 1→3→2→1, with the mixed
/// two-cycles killed and the two long cycles at each vertex identified.
pub fn brauer_presentation(ma: usize, mb: usize) -> AlgebraPresentation {
    assert!(ma >= 1 && mb >= 1);
    let field = q();
    let quiver = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            ("a1".into(), "1".into(), "2".into()),
            ("a2".into(), "2".into(), "3".into()),
            ("a3".into(), "3".into(), "1".into()),
            ("b1".into(), "2".into(), "1".into()),
            ("b2".into(), "3".into(), "2".into()),
            ("b3".into(), "1".into(), "3".into()),
        ],
    )
    .unwrap();
    let mut relations = Vec::new();
    // Mixed two-cycles vanish: b_i a_i = 0 and a_i b_i = 0.
    for i in 1..=3 {
        let a = format!("a{i}");
        let b = format!("b{i}");
        relations.push(PathExpr::monomial(field.one(), vec![&b, &a]));
        relations.push(PathExpr::monomial(field.one(), vec![&a, &b]));
    }
    // Cycle identifications (a-cycle)^{m_a} = (b-cycle)^{m_b} at each vertex.
    let cycles: [(Vec<&str>, Vec<&str>); 3] = [
        (vec!["a3", "a2", "a1"], vec!["b1", "b2", "b3"]),
        (vec!["a1", "a3", "a2"], vec!["b2", "b3", "b1"]),
        (vec!["a2", "a1", "a3"], vec!["b3", "b1", "b2"]),
    ];
    for (ac, bc) in &cycles {
        let a_pow: Vec<&str> = ac.iter().cycle().take(3 * ma).copied().collect();
        let b_pow: Vec<&str> = bc.iter().cycle().take(3 * mb).copied().collect();
        relations.push(PathExpr::difference(field, a_pow, b_pow));
    }
    AlgebraPresentation {
        field,
        quiver,
        relations,
        nilpotency_bound: 3 * ma.max(mb) + 1,
        central_element: None,
    }
}

pub fn brauer(ma: usize, mb: usize) -> Algebra {
    build_algebra(&brauer_presentation(ma, mb)).unwrap()
}
