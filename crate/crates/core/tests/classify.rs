mod common;

use std::collections::BTreeSet;

use common::{conj_a_times_a, ctx, matrix_witnesses, monomials, roots_of_unity};
use radford::algebra::{Element, Monomial};
use radford::classify::{
    default_grid, equivalence_witness_diag, make_automorphism_diag, make_automorphism_matrix, scan_star_candidates,
    solve_equivalence_n2, verify_equivalence, Automorphism, ClassifyError, Verdict, DEFAULT_SEARCH_HEIGHT,
};
use radford::scalars::{Context, Scalar};
use radford::star::{make_star_diag, make_star_matrix, StarStructure};

fn plain(c: &Context) -> StarStructure {
    make_star_diag(Scalar::one(c), Scalar::one(c)).unwrap()
}

#[test]
fn automorphism_constructors() {
    let c = ctx(4);
    let s = |k: i64| Scalar::from_int(&c, k);
    assert!(make_automorphism_diag(s(1), s(1)).is_ok());
    assert!(make_automorphism_diag(Scalar::imag_unit(&c), s(-1)).is_ok());
    assert_eq!(make_automorphism_diag(s(0), s(1)), Err(ClassifyError::ZeroScalar));

    let c2 = ctx(2);
    let t = |k: i64| Scalar::from_int(&c2, k);
    assert!(make_automorphism_matrix([[t(0), t(1)], [t(1), t(0)]]).is_ok());
    assert_eq!(make_automorphism_matrix([[t(1), t(2)], [t(2), t(4)]]), Err(ClassifyError::Singular));

    let c3 = ctx(3);
    let u = |k: i64| Scalar::from_int(&c3, k);
    assert_eq!(make_automorphism_matrix([[u(1), u(1)], [u(0), u(1)]]), Err(ClassifyError::MatrixNeedsN2(3)));
}

#[test]
fn apply_examples() {
    let c = ctx(4);
    let i = Scalar::imag_unit(&c);
    let phi = make_automorphism_diag(i.clone(), Scalar::from_int(&c, -1)).unwrap();
    let yxg = Element::monomial(&c, Monomial::new(1, 1, 1));
    assert_eq!(phi.apply(&yxg), yxg.scale(&i.neg()));
    assert_eq!(phi.apply(&Element::g(&c)), Element::g(&c));

    let c2 = ctx(2);
    let one = Scalar::one(&c2);
    let zero = Scalar::zero(&c2);
    let swap = make_automorphism_matrix([[zero.clone(), one.clone()], [one, zero]]).unwrap();
    let (x, y) = (Element::x(&c2), Element::y(&c2));
    assert_eq!(swap.apply(&x), y);
    // φ(yx) = φ(y)φ(x) = xy = ω yx with ω = -1
    let yx = Element::monomial(&c2, Monomial::new(1, 1, 0));
    assert_eq!(swap.apply(&yx), yx.neg());
}

#[test]
fn equivalence_examples() {
    let c = ctx(3);
    let w = Scalar::omega(&c);
    let st = make_star_diag(w.clone(), Scalar::one(&c)).unwrap();
    let phi = make_automorphism_diag(w, Scalar::one(&c)).unwrap();
    assert!(verify_equivalence(&phi, &st, &plain(&c)));
    assert!(!verify_equivalence(&phi, &plain(&c), &plain(&c)));

    let c2 = ctx(2);
    let i = Scalar::imag_unit(&c2);
    let one = Scalar::one(&c2);
    let z = Scalar::zero(&c2);
    let b = make_star_matrix([[i.clone(), z.clone()], [z.clone(), i.neg()]]).unwrap();
    let lambda = make_automorphism_matrix([[one.add(&i), z.clone()], [z, one.sub(&i)]]).unwrap();
    assert!(verify_equivalence(&lambda, &plain(&c2), &b));
}

#[test]
fn equivalence_is_reflexive_and_symmetric() {
    for n in 2..=4 {
        let c = ctx(n);
        let id = make_automorphism_diag(Scalar::one(&c), Scalar::one(&c)).unwrap();
        let roots = roots_of_unity(&c);
        for (a, b) in [(0, 0), (1, 3), (roots.len() - 1, 2)] {
            let st = make_star_diag(roots[a].clone(), roots[b].clone()).unwrap();
            assert!(verify_equivalence(&id, &st, &st));
            let phi = make_automorphism_diag(roots[1].clone(), Scalar::from_ratio(&c, 3, 2)).unwrap();
            let image = transported(&phi, &st);
            assert!(verify_equivalence(&phi, &st, &image));
            assert!(verify_equivalence(&phi.inverse().unwrap(), &image, &st));
        }
    }
}

/// The structure `φ ∘ * ∘ φ⁻¹`, built from generator images.
fn transported(phi: &Automorphism, st: &StarStructure) -> StarStructure {
    let inv = phi.inverse().unwrap();
    let map = radford::star::StarMap::new(st);
    let c = phi.context();
    let image = |e: Element| phi.apply(&map.apply(&inv.apply(&e)));
    StarStructure::raw(image(Element::g(c)), image(Element::x(c)), image(Element::y(c))).unwrap()
}

#[test]
fn diagonal_witnesses() {
    for n in [3, 4, 6] {
        let c = ctx(n);
        for alpha in roots_of_unity(&c) {
            for beta in roots_of_unity(&c) {
                let st = make_star_diag(alpha.clone(), beta.clone()).unwrap();
                let phi = equivalence_witness_diag(&st).unwrap();
                let Automorphism::Diagonal { lambda1, lambda2 } = &phi else {
                    panic!("diagonal witness expected");
                };
                let wide = lambda1.context();
                assert_eq!(lambda1.mul(lambda1), alpha.conjugate().embed(wide).unwrap());
                assert_eq!(lambda2.mul(lambda2), beta.conjugate().embed(wide).unwrap());
                assert!(verify_equivalence(&phi, &st, &plain(&c)), "diag({alpha}, {beta}) at n = {n}");
            }
        }
    }
    let c = ctx(2);
    let one = Scalar::one(&c);
    assert_eq!(
        equivalence_witness_diag(&make_star_diag(one.clone(), one).unwrap()),
        Err(ClassifyError::NeedsDiagonal)
    );
}

#[test]
fn matrix_solver_returns_verified_witnesses() {
    let c = ctx(2);
    let structures: Vec<StarStructure> =
        matrix_witnesses(&c).into_iter().map(|a| make_star_matrix(a).unwrap()).collect();
    for a in &structures {
        for b in &structures {
            let res = solve_equivalence_n2(a, b, DEFAULT_SEARCH_HEIGHT).unwrap();
            assert!(res.nullspace_dimension > 0);
            assert_eq!(res.verdict, Verdict::Equivalent, "{a:?} vs {b:?}");
            let phi = res.witness.unwrap();
            assert!(verify_equivalence(&phi, a, b));
        }
    }
}

#[test]
fn scan_at_n3_finds_exactly_the_diagonal_structures() {
    let c = ctx(3);
    let grid = default_grid(&c);
    let found: BTreeSet<String> = scan_star_candidates(&c, &grid)
        .iter()
        .map(|st| {
            let (g, x, y) = st.images();
            format!("{g} | {x} | {y}")
        })
        .collect();
    let g = Element::g(&c);
    let mut predicted = BTreeSet::new();
    for a in grid.iter().filter(|s| s.is_norm_one()) {
        for b in grid.iter().filter(|s| s.is_norm_one()) {
            predicted.insert(format!("{g} | {} | {}", Element::x(&c).scale(a), Element::y(&c).scale(b)));
        }
    }
    assert_eq!(predicted.len(), 144);
    assert_eq!(found, predicted);
}

#[test]
fn scan_at_n2_finds_exactly_the_unitary_like_matrices() {
    let c = ctx(2);
    let i = Scalar::imag_unit(&c);
    let s = |k: i64| Scalar::from_int(&c, k);
    let grid = vec![s(0), s(1), s(-1), i.clone(), i.neg()];
    let key = |x: &Element, y: &Element| {
        let (xm, ym) = (Monomial::new(0, 1, 0), Monomial::new(1, 0, 0));
        [x.coefficient(&xm), x.coefficient(&ym), y.coefficient(&xm), y.coefficient(&ym)]
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let found: BTreeSet<String> = scan_star_candidates(&c, &grid)
        .iter()
        .map(|st| {
            let (g, x, y) = st.images();
            assert_eq!(g, Element::g(&c));
            for e in [&x, &y] {
                assert!(e.terms().all(|(m, _)| monomials(2).contains(m) && m.l == 0 && m.r + m.s == 1));
            }
            key(&x, &y)
        })
        .collect();
    let mut predicted = BTreeSet::new();
    for a in &grid {
        for b in &grid {
            for d in &grid {
                for e in &grid {
                    let m = [[a.clone(), b.clone()], [d.clone(), e.clone()]];
                    let p = conj_a_times_a(&m);
                    if p[0][0].is_one() && p[1][1].is_one() && p[0][1].is_zero() && p[1][0].is_zero() {
                        let x = Element::x(&c).scale(a).add(&Element::y(&c).scale(b));
                        let y = Element::x(&c).scale(d).add(&Element::y(&c).scale(e));
                        predicted.insert(key(&x, &y));
                    }
                }
            }
        }
    }
    assert_eq!(found, predicted);
    assert_eq!(found.len(), 52);
}

#[test]
fn grid_structures_against_the_identity() {
    let c = ctx(2);
    let i = Scalar::imag_unit(&c);
    let s = |k: i64| Scalar::from_int(&c, k);
    let grid = vec![s(0), s(1), s(-1), i.clone(), i.neg()];
    let ident = plain(&c);
    let mut tally = std::collections::BTreeMap::new();
    for st in scan_star_candidates(&c, &grid) {
        let st = st.normalized().expect("scan survivors are matrix structures");
        let res = solve_equivalence_n2(&ident, &st, DEFAULT_SEARCH_HEIGHT).unwrap();
        if let Some(phi) = &res.witness {
            assert!(verify_equivalence(phi, &ident, &st));
        }
        assert_eq!(res.witness.is_some(), res.verdict == Verdict::Equivalent);
        *tally.entry(format!("{:?}", res.verdict)).or_insert(0) += 1;
    }
    println!("verdicts against I over the grid survivors: {tally:?}");
}
