mod common;

use common::{ctx, monomials, scalar_in};
use proptest::prelude::*;
use radford::algebra::Element;
use radford::coalgebra::{Hopf, TensorElement};
use radford::scalars::{Context, Scalar};
use radford::solver::{
    field_nullspace, is_grouplike, rational_nullspace, rationalize, skew_primitive_space, ConjLinearSystem, ConjTerm,
    FieldMatrix,
};

/// Coordinates of `e` against `basis`, or `None` if `e` is outside their
/// span. Solves `Σ c_k basis_k - e = 0` with the field solver.
fn coordinates(ctx: &Context, basis: &[Element], e: &Element) -> Option<Vec<Scalar>> {
    let n = ctx.n();
    let all = monomials(n);
    let rows: Vec<Vec<Scalar>> = all
        .iter()
        .map(|m| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| b.coefficient(m)).collect();
            row.push(e.coefficient(m).neg());
            row
        })
        .collect();
    let ns = field_nullspace(&FieldMatrix::new(ctx, rows, basis.len() + 1));
    let v = ns.into_iter().find(|v| !v[basis.len()].is_zero())?;
    let scale = v[basis.len()].inv().unwrap();
    Some(v[..basis.len()].iter().map(|c| c.mul(&scale)).collect())
}

fn satisfies_skew(h: &Hopf, e: &Element, w: usize) -> bool {
    let c = h.context();
    let rhs = TensorElement::pure(e, &Element::g_pow(c, w)).add(&TensorElement::pure(&Element::one(c), e));
    h.delta(e) == rhs
}

#[test]
fn nullspace_examples() {
    let c = ctx(4);
    assert!(field_nullspace(&FieldMatrix::identity(&c, 4)).is_empty());
    assert_eq!(field_nullspace(&FieldMatrix::zeros(&c, 2, 2)).len(), 2);
    let w = Scalar::omega(&c);
    let basis = field_nullspace(&FieldMatrix::new(&c, vec![vec![Scalar::one(&c), w.clone()]], 2));
    assert_eq!(basis.len(), 1);
    let v = &basis[0];
    assert_eq!(v[0].mul(&v[1].inv().unwrap()), w.neg());
}

#[test]
fn skew_primitives_for_w_one() {
    for n in 2..=6 {
        let c = ctx(n);
        let h = Hopf::new(&c);
        let space = skew_primitive_space(&h, 1);
        assert_eq!(space.len(), 3, "n = {n}");
        let expected = [Element::x(&c), Element::y(&c), Element::one(&c).sub(&Element::g(&c))];
        for e in &expected {
            assert!(satisfies_skew(&h, e, 1));
        }
        for b in &space {
            assert!(satisfies_skew(&h, b, 1));
            assert!(coordinates(&c, &expected, b).is_some(), "{b} outside span at n = {n}");
        }
    }
}

#[test]
fn skew_primitives_for_larger_w() {
    for n in 3..=6 {
        let c = ctx(n);
        let h = Hopf::new(&c);
        for w in 2..n {
            let space = skew_primitive_space(&h, w);
            assert_eq!(space.len(), 1, "n = {n}, w = {w}");
            let t = Element::one(&c).sub(&Element::g_pow(&c, w));
            assert!(satisfies_skew(&h, &space[0], w));
            assert!(coordinates(&c, &[t], &space[0]).is_some());
        }
    }
}

#[test]
fn skew_primitives_for_w_zero_satisfy_the_equation() {
    for n in 2..=5 {
        let h = Hopf::new(&ctx(n));
        let space = skew_primitive_space(&h, 0);
        for b in &space {
            assert!(satisfies_skew(&h, b, 0));
        }
        assert!(space.is_empty(), "n = {n}: primitive elements {space:?}");
    }
}

#[test]
fn grouplike_membership() {
    for n in 2..=6 {
        let c = ctx(n);
        let h = Hopf::new(&c);
        for m in monomials(n) {
            let expected = m.r == 0 && m.s == 0;
            assert_eq!(is_grouplike(&h, &Element::monomial(&c, m)), expected, "{m}");
        }
        let one = Element::one(&c);
        let (g, x, y) = (Element::g(&c), Element::x(&c), Element::y(&c));
        for e in [one.add(&x), g.add(&y), x.clone(), one.sub(&g), Element::zero(&c)] {
            assert!(!is_grouplike(&h, &e), "{e}");
        }
        for l in 0..n {
            assert!(is_grouplike(&h, &Element::g_pow(&c, l)));
        }
    }
}

fn single_equation(c: &Context, coeff_conj: Scalar) -> ConjLinearSystem {
    let mut sys = ConjLinearSystem::new(c, 1);
    sys.push(vec![
        ConjTerm { unknown: 0, coeff: Scalar::one(c), conjugated: false },
        ConjTerm { unknown: 0, coeff: coeff_conj.neg(), conjugated: true },
    ]);
    sys
}

#[test]
fn conjugation_fixed_spaces() {
    let c = ctx(2);
    let i = Scalar::imag_unit(&c);
    let real = rational_nullspace(&rationalize(&single_equation(&c, Scalar::one(&c))));
    assert_eq!(real.len(), 1);
    assert_eq!(real[0][0].conjugate(), real[0][0]);
    assert!(real[0][0].as_rational().is_some());

    let imaginary = rational_nullspace(&rationalize(&single_equation(&c, Scalar::from_int(&c, -1))));
    assert_eq!(imaginary.len(), 1);
    assert_eq!(imaginary[0][0].conjugate(), imaginary[0][0].neg());
    assert!(imaginary[0][0].coords()[0] == num_rational::BigRational::from_integer(0.into()));

    let sys = single_equation(&c, i.clone());
    let one_plus_i = Scalar::one(&c).add(&i);
    assert!(sys.residuals(std::slice::from_ref(&one_plus_i)).iter().all(Scalar::is_zero));
    let basis = rational_nullspace(&rationalize(&sys));
    assert_eq!(basis.len(), 1);
    assert!(basis[0][0].mul(&one_plus_i.inv().unwrap()).as_rational().is_some());
}

fn random_system(n: usize) -> impl Strategy<Value = (Context, Vec<Vec<Scalar>>, Vec<Vec<bool>>)> {
    let c = ctx(n);
    (1usize..=3, 1usize..=3).prop_flat_map(move |(rows, cols)| {
        let entry = prop_oneof![2 => Just(None), 3 => scalar_in(c.clone()).prop_map(Some)];
        (
            Just(c.clone()),
            proptest::collection::vec(proptest::collection::vec(entry, cols), rows),
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows),
        )
            .prop_map(move |(c, entries, conj)| {
                let z = Scalar::zero(&c);
                let dense = entries
                    .into_iter()
                    .map(|r| r.into_iter().map(|e| e.unwrap_or_else(|| z.clone())).collect())
                    .collect();
                (c, dense, conj)
            })
    })
}

fn system_of(c: &Context, rows: &[Vec<Scalar>], conj: Option<&[Vec<bool>]>) -> ConjLinearSystem {
    let cols = rows[0].len();
    let mut sys = ConjLinearSystem::new(c, cols);
    for (i, row) in rows.iter().enumerate() {
        sys.push(
            row.iter()
                .enumerate()
                .map(|(k, a)| ConjTerm {
                    unknown: k,
                    coeff: a.clone(),
                    conjugated: conj.is_some_and(|c| c[i][k]),
                })
                .collect(),
        );
    }
    sys
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_agree_without_conjugation((c, rows, _) in (2usize..=6).prop_flat_map(random_system)) {
        let cols = rows[0].len();
        let field = field_nullspace(&FieldMatrix::new(&c, rows.clone(), cols));
        let m = FieldMatrix::new(&c, rows.clone(), cols);
        for v in &field {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        let sys = system_of(&c, &rows, None);
        let rational = rational_nullspace(&rationalize(&sys));
        for v in &rational {
            prop_assert!(sys.residuals(v).iter().all(Scalar::is_zero));
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(rational.len(), field.len() * c.degree());
    }

    #[test]
    fn conjugate_linear_solutions_have_zero_residual((c, rows, conj) in (2usize..=6).prop_flat_map(random_system)) {
        let sys = system_of(&c, &rows, Some(&conj));
        for v in rational_nullspace(&rationalize(&sys)) {
            prop_assert!(sys.residuals(&v).iter().all(Scalar::is_zero));
        }
    }
}
