//! Exact linear algebra over `ℚ` and `ℚ(ζ_m)`.
//!
//! Elimination keeps sparse rows and pivots on the first nonzero column of
//! each incoming row, so the nullspace bases are reproducible. Systems that
//! involve complex conjugation are not linear over `ℚ(ζ_m)`; they are solved
//! over `ℚ` after expanding every scalar unknown into its `φ(m)` power-basis
//! coordinates.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{basis, Element, Monomial};
use crate::coalgebra::{Hopf, TensorElement};
use crate::scalars::{conjugation_matrix, Context, Scalar};

/// Coefficient fields the eliminator can work over.
pub trait FieldElem: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Only called on nonzero values.
    fn inv(&self) -> Self;
}

impl FieldElem for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl FieldElem for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn inv(&self) -> Self {
        Scalar::inv(self).expect("pivot is nonzero")
    }
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// `row -= factor * pivot`, dropping cancelled entries.
fn eliminate<F: FieldElem>(row: &mut SparseRow<F>, factor: &F, pivot: &SparseRow<F>) {
    for (col, v) in pivot {
        let delta = factor.mul(v);
        match row.get_mut(col) {
            Some(existing) => {
                let updated = existing.sub(&delta);
                if updated.is_zero() {
                    row.remove(col);
                } else {
                    *existing = updated;
                }
            }
            None => {
                row.insert(*col, delta.neg());
            }
        }
    }
}

/// Reduced row echelon form, as a map from pivot column to its row (with a
/// `1` in the pivot column and zeros in every other pivot column).
pub fn row_reduce<F: FieldElem>(rows: impl IntoIterator<Item = SparseRow<F>>) -> BTreeMap<usize, SparseRow<F>> {
    let mut pivots: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = next else { break };
            eliminate(&mut row, &factor, &pivots[&col]);
            cursor = col + 1;
        }
        let Some((&lead, lead_val)) = row.iter().next() else {
            continue;
        };
        let scale = lead_val.inv();
        for v in row.values_mut() {
            *v = v.mul(&scale);
        }
        pivots.insert(lead, row);
    }

    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for &p in &cols {
        let pivot_row = pivots[&p].clone();
        for (_, other) in pivots.range_mut(..p) {
            if let Some(factor) = other.get(&p).cloned() {
                eliminate(other, &factor, &pivot_row);
            }
        }
    }
    pivots
}

/// Right nullspace basis of the matrix with the given rows, one vector per
/// free column (ascending), as sparse vectors.
pub fn sparse_nullspace<F: FieldElem>(
    rows: impl IntoIterator<Item = SparseRow<F>>,
    ncols: usize,
    one: &F,
) -> Vec<SparseRow<F>> {
    let pivots = row_reduce(rows);
    (0..ncols)
        .filter(|c| !pivots.contains_key(c))
        .map(|free| {
            let mut v = SparseRow::new();
            v.insert(free, one.clone());
            for (p, row) in &pivots {
                if let Some(x) = row.get(&free) {
                    v.insert(*p, x.neg());
                }
            }
            v
        })
        .collect()
}

/// A dense matrix over `ℚ(ζ_m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMatrix {
    ctx: Context,
    rows: Vec<Vec<Scalar>>,
    cols: usize,
}

impl FieldMatrix {
    pub fn new(ctx: &Context, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        FieldMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(ctx: &Context, size: usize) -> Self {
        let rows = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { Scalar::one(ctx) } else { Scalar::zero(ctx) })
                    .collect()
            })
            .collect();
        Self::new(ctx, rows, size)
    }

    pub fn zeros(ctx: &Context, rows: usize, cols: usize) -> Self {
        Self::new(ctx, vec![vec![Scalar::zero(ctx); cols]; rows], cols)
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Scalar::zero(&self.ctx), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }
}

/// Right nullspace basis of `m`, exact.
pub fn field_nullspace(m: &FieldMatrix) -> Vec<Vec<Scalar>> {
    let rows = m.rows.iter().map(|r| {
        r.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect::<SparseRow<Scalar>>()
    });
    sparse_nullspace(rows, m.cols, &Scalar::one(&m.ctx))
        .into_iter()
        .map(|v| densify(&v, m.cols, &Scalar::zero(&m.ctx)))
        .collect()
}

fn densify<F: Clone>(v: &SparseRow<F>, len: usize, zero: &F) -> Vec<F> {
    (0..len).map(|k| v.get(&k).cloned().unwrap_or_else(|| zero.clone())).collect()
}

/// Basis of `{h : Δ(h) = h ⊗ g^w + 1 ⊗ h}`: the nullspace of
/// `h ↦ Δ(h) - h ⊗ g^w - 1 ⊗ h` on the `n³`-dimensional coordinate space.
pub fn skew_primitive_space(hopf: &Hopf, w: usize) -> Vec<Element> {
    let ctx = hopf.context();
    let n = ctx.n();
    let monomials: Vec<Monomial> = basis(n).collect();
    let gw = Element::g_pow(ctx, w % n);
    let one = Element::one(ctx);

    let mut rows: BTreeMap<(Monomial, Monomial), SparseRow<Scalar>> = BTreeMap::new();
    for (col, m) in monomials.iter().enumerate() {
        let b = Element::monomial(ctx, *m);
        let image = hopf
            .delta_monomial(m)
            .sub(&TensorElement::pure(&b, &gw))
            .sub(&TensorElement::pure(&one, &b));
        for (key, c) in image.terms() {
            rows.entry(*key).or_default().insert(col, c.clone());
        }
    }
    sparse_nullspace(rows.into_values(), monomials.len(), &Scalar::one(ctx))
        .into_iter()
        .map(|v| Element::from_terms(ctx, v.into_iter().map(|(k, c)| (monomials[k], c))))
        .collect()
}

/// Whether `Δ(e) = e ⊗ e` and `ε(e) = 1`.
pub fn is_grouplike(hopf: &Hopf, e: &Element) -> bool {
    hopf.counit(e).is_one() && hopf.delta(e) == TensorElement::pure(e, e)
}

/// One term `coeff · λ_k` or `coeff · conj(λ_k)` of a conjugate-linear
/// equation.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjTerm {
    pub unknown: usize,
    pub coeff: Scalar,
    pub conjugated: bool,
}

/// Homogeneous equations `Σ terms = 0` in scalar unknowns `λ_0, …`.
#[derive(Clone, Debug)]
pub struct ConjLinearSystem {
    ctx: Context,
    unknowns: usize,
    equations: Vec<Vec<ConjTerm>>,
}

impl ConjLinearSystem {
    pub fn new(ctx: &Context, unknowns: usize) -> Self {
        ConjLinearSystem {
            ctx: ctx.clone(),
            unknowns,
            equations: Vec::new(),
        }
    }

    pub fn push(&mut self, equation: Vec<ConjTerm>) {
        assert!(equation.iter().all(|t| t.unknown < self.unknowns));
        self.equations.push(equation);
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> &[Vec<ConjTerm>] {
        &self.equations
    }

    /// Left-hand side of every equation at the given assignment.
    pub fn residuals(&self, values: &[Scalar]) -> Vec<Scalar> {
        self.equations
            .iter()
            .map(|eq| {
                eq.iter().fold(Scalar::zero(&self.ctx), |acc, t| {
                    let v = if t.conjugated {
                        values[t.unknown].conjugate()
                    } else {
                        values[t.unknown].clone()
                    };
                    acc.add(&t.coeff.mul(&v))
                })
            })
            .collect()
    }
}

/// A conjugate-linear system rewritten over `ℚ`. Column `k·φ + t` is the
/// `t`-th power-basis coordinate of unknown `k`.
#[derive(Clone, Debug)]
pub struct RationalizedSystem {
    ctx: Context,
    unknowns: usize,
    rows: Vec<SparseRow<BigRational>>,
}

impl RationalizedSystem {
    pub fn columns(&self) -> usize {
        self.unknowns * self.ctx.degree()
    }

    pub fn rows(&self) -> &[SparseRow<BigRational>] {
        &self.rows
    }
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let k = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..k).map(|t| &row[t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Expands each equation into `φ(m)` rational equations; multiplication by
/// a coefficient and conjugation both act on coordinates as rational
/// matrices.
pub fn rationalize(sys: &ConjLinearSystem) -> RationalizedSystem {
    let d = sys.ctx.degree();
    let conj = conjugation_matrix(&sys.ctx);
    let mut rows = Vec::new();
    for eq in &sys.equations {
        let mut block = vec![SparseRow::<BigRational>::new(); d];
        for term in eq {
            let mult = term.coeff.multiplication_matrix();
            let m = if term.conjugated { mat_mul(&mult, &conj) } else { mult };
            for (t, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if Zero::is_zero(v) {
                        continue;
                    }
                    let col = term.unknown * d + j;
                    let entry = block[t].entry(col).or_insert_with(BigRational::zero);
                    *entry += v;
                }
            }
        }
        for mut row in block {
            row.retain(|_, v| !Zero::is_zero(v));
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    RationalizedSystem {
        ctx: sys.ctx.clone(),
        unknowns: sys.unknowns,
        rows,
    }
}

/// `ℚ`-basis of the solution space, each vector returned as an assignment
/// of the scalar unknowns.
pub fn rational_nullspace(sys: &RationalizedSystem) -> Vec<Vec<Scalar>> {
    let d = sys.ctx.degree();
    let cols = sys.columns();
    sparse_nullspace(sys.rows.iter().cloned(), cols, &BigRational::one())
        .into_iter()
        .map(|v| {
            let dense = densify(&v, cols, &BigRational::zero());
            dense
                .chunks(d)
                .map(|c| Scalar::from_coords(&sys.ctx, c.to_vec()).expect("φ(m) coordinates"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::make_context;

    #[test]
    fn nullspace_examples() {
        let ctx = make_context(3, None).unwrap();
        assert!(field_nullspace(&FieldMatrix::identity(&ctx, 3)).is_empty());
        assert_eq!(field_nullspace(&FieldMatrix::zeros(&ctx, 2, 2)).len(), 2);
        let w = Scalar::omega(&ctx);
        let m = FieldMatrix::new(&ctx, vec![vec![Scalar::one(&ctx), w.clone()]], 2);
        assert_eq!(field_nullspace(&m), vec![vec![w.neg(), Scalar::one(&ctx)]]);
    }

    #[test]
    fn rational_rref_needs_back_substitution() {
        let q = |p: i64| BigRational::from_integer(p.into());
        let rows = vec![
            SparseRow::from([(0, q(1)), (1, q(2)), (2, q(3))]),
            SparseRow::from([(1, q(1)), (2, q(1))]),
        ];
        let ns = sparse_nullspace(rows, 3, &q(1));
        // RREF is [[1, 0, 1], [0, 1, 1]]
        assert_eq!(ns, vec![SparseRow::from([(0, q(-1)), (1, q(-1)), (2, q(1))])]);
    }

    #[test]
    fn skew_primitive_space_shape() {
        let ctx = make_context(3, None).unwrap();
        let h = Hopf::new(&ctx);
        let space = skew_primitive_space(&h, 1);
        assert_eq!(space.len(), 3);
        let space2 = skew_primitive_space(&h, 2);
        assert_eq!(space2.len(), 1);
        let one = Element::one(&ctx);
        let target = &one - &Element::g_pow(&ctx, 2);
        let v = &space2[0];
        let c = v.coefficient(&Monomial::ONE);
        assert_eq!(*v, target.scale(&c));
    }

    #[test]
    fn grouplike_examples() {
        let ctx = make_context(4, None).unwrap();
        let h = Hopf::new(&ctx);
        for l in 0..4 {
            assert!(is_grouplike(&h, &Element::g_pow(&ctx, l)));
        }
        let one = Element::one(&ctx);
        assert!(!is_grouplike(&h, &(&one + &Element::x(&ctx))));
        assert!(!is_grouplike(&h, &Element::zero(&ctx)));
    }

    fn single(ctx: &Context, lin: Scalar, conj: Scalar) -> ConjLinearSystem {
        let mut sys = ConjLinearSystem::new(ctx, 1);
        sys.push(vec![
            ConjTerm { unknown: 0, coeff: lin, conjugated: false },
            ConjTerm { unknown: 0, coeff: conj, conjugated: true },
        ]);
        sys
    }

    #[test]
    fn real_and_imaginary_fixed_spaces() {
        let ctx = make_context(2, None).unwrap();
        let one = Scalar::one(&ctx);
        let real = rational_nullspace(&rationalize(&single(&ctx, one.clone(), one.neg())));
        assert_eq!(real, vec![vec![one.clone()]]);
        let imag = rational_nullspace(&rationalize(&single(&ctx, one.clone(), one.clone())));
        assert_eq!(imag, vec![vec![Scalar::imag_unit(&ctx)]]);
    }

    #[test]
    fn twisted_conjugation_contains_one_plus_i() {
        let ctx = make_context(2, None).unwrap();
        let one = Scalar::one(&ctx);
        let i = Scalar::imag_unit(&ctx);
        let sys = single(&ctx, one.clone(), i.neg());
        let sol = rational_nullspace(&rationalize(&sys));
        assert_eq!(sol.len(), 1);
        let candidate = one.add(&i);
        assert!(sys.residuals(std::slice::from_ref(&candidate))[0].is_zero());
        // the solution space is one-dimensional over ℚ, so it is ℚ·(1 + i)
        let ratio = sol[0][0].div(&candidate).unwrap();
        assert!(ratio.as_rational().is_some());
    }
}
