//! Coproduct, counit and antipode of `H_n`, the tensor square `H ⊗ H`, and
//! Gaussian binomial coefficients.
//!
//! On generators
//!
//! ```text
//! Δ(g) = g ⊗ g        ε(g) = 1    S(g) = g^{n-1}
//! Δ(x) = x ⊗ g + 1 ⊗ x   ε(x) = 0    S(x) = -x g^{n-1}
//! Δ(y) = y ⊗ g + 1 ⊗ y   ε(y) = 0    S(y) = -y g^{n-1}
//! ```
//!
//! `Δ` of a monomial is computed multiplicatively as `Δ(y)^r Δ(x)^s Δ(g)^l`
//! in the plain tensor-product algebra. [`Hopf::delta_closed`] evaluates
//! the double-sum closed form instead:
//!
//! ```text
//! Δ(y^r x^s g^l) = Σ_{i≤r, j≤s} ω^{-(r-i)j} [r i]_{q_y} [s j]_{q_x}
//!                  y^{r-i} x^{s-j} g^l ⊗ y^i x^j g^{l+s-j+r-i}
//! ```
//!
//! The Gaussian binomials follow the recurrence in [`qbinom`]. Fitting the
//! bases against the multiplicative coproduct for `n = 3, 4, 5` singles out
//! `q_y = ω` and `q_x = ω^{-1}`: the two generators commute past their
//! `g`-legs in opposite directions (`gy = ωyg` but `gx = ω^{-1}xg`). Any
//! other pair of bases disagrees already on `Δ(y²)` or `Δ(x²)`; see the
//! `closed_form_bases_are_forced` test.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{basis, Element, Monomial};
use crate::scalars::{Context, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalgebraError {
    #[error("Gaussian binomial [{k} {j}] needs 0 <= j <= k")]
    BinomialRange { k: i64, j: i64 },
}

/// Gaussian binomial `[k j]_q` via `[k j] = [k-1 j-1] + q^j [k-1 j]`.
pub fn qbinom(k: i64, j: i64, q: &Scalar) -> Result<Scalar, CoalgebraError> {
    if j < 0 || j > k {
        return Err(CoalgebraError::BinomialRange { k, j });
    }
    let ctx = q.context();
    // row[t] = [row_k t]_q
    let mut row = vec![Scalar::one(ctx)];
    for kk in 1..=k as usize {
        let mut next = Vec::with_capacity(kk + 1);
        next.push(Scalar::one(ctx));
        let mut qj = Scalar::one(ctx);
        for t in 1..kk {
            qj = qj.mul(q);
            next.push(row[t - 1].add(&qj.mul(&row[t])));
        }
        next.push(Scalar::one(ctx));
        row = next;
    }
    Ok(row.swap_remove(j as usize))
}

/// Whether a leg map is linear or conjugate-linear in the coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearity {
    Linear,
    ConjugateLinear,
}

/// An element of `H ⊗ H` over the basis of monomial pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
    ctx: Context,
}

impl TensorElement {
    pub fn zero(ctx: &Context) -> Self {
        TensorElement {
            terms: BTreeMap::new(),
            ctx: ctx.clone(),
        }
    }

    pub fn basis_pair(ctx: &Context, left: Monomial, right: Monomial) -> Self {
        let mut t = Self::zero(ctx);
        t.add_term(left, right, &Scalar::one(ctx));
        t
    }

    /// `a ⊗ b`.
    pub fn pure(a: &Element, b: &Element) -> Self {
        let mut t = Self::zero(a.context());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(*ma, *mb, &ca.mul(cb));
            }
        }
        t
    }

    pub fn from_terms(
        ctx: &Context,
        terms: impl IntoIterator<Item = ((Monomial, Monomial), Scalar)>,
    ) -> Self {
        let mut t = Self::zero(ctx);
        for ((a, b), c) in terms {
            t.add_term(a, b, &c);
        }
        t
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: Monomial, right: Monomial) -> Scalar {
        self.terms
            .get(&(left, right))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub(crate) fn add_term(&mut self, left: Monomial, right: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c);
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&Scalar::from_int(&self.ctx, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(&self.ctx);
        for ((a, b), v) in &self.terms {
            out.add_term(*a, *b, &v.mul(c));
        }
        out
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let n = self.ctx.n();
        let mut out = TensorElement::zero(&self.ctx);
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let Some((e1, left)) = Monomial::product(*a, *c, n) else {
                    continue;
                };
                let Some((e2, right)) = Monomial::product(*b, *d, n) else {
                    continue;
                };
                out.add_term(left, right, &c1.mul(c2).mul_omega_pow((e1 + e2) as i64));
            }
        }
        out
    }

    /// Swaps the two legs.
    pub fn flip(&self) -> TensorElement {
        TensorElement {
            terms: self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Applies `left` and `right` to the two legs of every basis tensor.
    /// Both maps must share the given linearity: for conjugate-linear maps
    /// the coefficient of each basis tensor is conjugated.
    pub fn map<L, R>(&self, linearity: Linearity, left: L, right: R) -> TensorElement
    where
        L: Fn(&Element) -> Element,
        R: Fn(&Element) -> Element,
    {
        let mut out = TensorElement::zero(&self.ctx);
        for ((a, b), c) in &self.terms {
            let la = left(&Element::monomial(&self.ctx, *a));
            let rb = right(&Element::monomial(&self.ctx, *b));
            let c = match linearity {
                Linearity::Linear => c.clone(),
                Linearity::ConjugateLinear => c.conjugate(),
            };
            for ((m1, m2), v) in &TensorElement::pure(&la, &rb).terms {
                out.add_term(*m1, *m2, &v.mul(&c));
            }
        }
        out
    }

    /// Multiplication map `H ⊗ H → H`.
    pub fn multiply_legs(&self) -> Element {
        let mut out = Element::zero(&self.ctx);
        for ((a, b), c) in &self.terms {
            if let Some((e, mon)) = Monomial::product(*a, *b, self.ctx.n()) {
                out.add_term(mon, &c.mul_omega_pow(e as i64));
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                if c.is_one() {
                    format!("{a} ⊗ {b}")
                } else {
                    format!("{c}*({a} ⊗ {b})")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

/// An element of `H ⊗ H ⊗ H`, used for coassociativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTensor {
    terms: BTreeMap<(Monomial, Monomial, Monomial), Scalar>,
}

impl TripleTensor {
    fn add_term(&mut self, key: (Monomial, Monomial, Monomial), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }
}

/// `H_n` with its Hopf structure. Coproducts and antipodes of basis
/// monomials are tabulated at construction.
#[derive(Clone)]
pub struct Hopf {
    ctx: Context,
    delta_table: Vec<TensorElement>,
    antipode_table: Vec<Element>,
}

impl fmt::Debug for Hopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hopf").field("ctx", &self.ctx).finish()
    }
}

impl Hopf {
    pub fn new(ctx: &Context) -> Self {
        let one = Element::one(ctx);
        let g = Element::g(ctx);
        let delta_g = TensorElement::pure(&g, &g);
        let delta_x = TensorElement::pure(&Element::x(ctx), &g)
            .add(&TensorElement::pure(&one, &Element::x(ctx)));
        let delta_y = TensorElement::pure(&Element::y(ctx), &g)
            .add(&TensorElement::pure(&one, &Element::y(ctx)));
        Self::with_generator_coproducts(ctx, delta_g, delta_x, delta_y)
    }

    /// A structure whose coproduct is the multiplicative extension of the
    /// given generator images. Only [`Hopf::new`] yields a bialgebra; other
    /// images exist so the axiom checks can be exercised on broken input.
    pub fn with_generator_coproducts(
        ctx: &Context,
        delta_g: TensorElement,
        delta_x: TensorElement,
        delta_y: TensorElement,
    ) -> Self {
        let n = ctx.n();
        let unit = TensorElement::basis_pair(ctx, Monomial::ONE, Monomial::ONE);
        let powers = |base: &TensorElement| {
            let mut out = vec![unit.clone()];
            for k in 1..n {
                out.push(out[k - 1].mul(base));
            }
            out
        };
        let (yp, xp, gp) = (powers(&delta_y), powers(&delta_x), powers(&delta_g));
        let delta_table = basis(n)
            .map(|m| yp[m.r].mul(&xp[m.s]).mul(&gp[m.l]))
            .collect();

        let s_g = Element::g_pow(ctx, n - 1);
        let s_x = Element::x(ctx).mul(&s_g).neg();
        let s_y = Element::y(ctx).mul(&s_g).neg();
        let antipode_table = basis(n)
            .map(|m| s_g.pow(m.l).mul(&s_x.pow(m.s)).mul(&s_y.pow(m.r)))
            .collect();

        Hopf {
            ctx: ctx.clone(),
            delta_table,
            antipode_table,
        }
    }

    /// Replaces the tabulated coproduct of a single basis monomial, leaving
    /// every other entry untouched. Used to build deliberately broken
    /// structures.
    pub fn with_coproduct_entry(mut self, m: Monomial, value: TensorElement) -> Self {
        let k = self.index(&m);
        self.delta_table[k] = value;
        self
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub(crate) fn index(&self, m: &Monomial) -> usize {
        let n = self.n();
        (m.r * n + m.s) * n + m.l
    }

    pub fn delta_monomial(&self, m: &Monomial) -> &TensorElement {
        &self.delta_table[self.index(m)]
    }

    pub fn delta(&self, e: &Element) -> TensorElement {
        let mut out = TensorElement::zero(&self.ctx);
        for (m, c) in e.terms() {
            for ((a, b), v) in &self.delta_monomial(m).terms {
                out.add_term(*a, *b, &v.mul(c));
            }
        }
        out
    }

    /// Closed-form coproduct of a basis monomial with the given Gaussian
    /// binomial bases.
    pub fn delta_closed_with_bases(&self, m: &Monomial, q_y: &Scalar, q_x: &Scalar) -> TensorElement {
        let n = self.n();
        let mut out = TensorElement::zero(&self.ctx);
        for i in 0..=m.r {
            let by = qbinom(m.r as i64, i as i64, q_y).expect("i <= r");
            for j in 0..=m.s {
                let bx = qbinom(m.s as i64, j as i64, q_x).expect("j <= s");
                let c = by.mul(&bx).mul_omega_pow(-(((m.r - i) * j) as i64));
                let left = Monomial::new(m.r - i, m.s - j, m.l);
                let right = Monomial::new(i, j, (m.l + m.s - j + m.r - i) % n);
                out.add_term(left, right, &c);
            }
        }
        out
    }

    /// Closed-form coproduct of a basis monomial, with `q_y = ω` and
    /// `q_x = ω^{-1}`.
    pub fn delta_closed(&self, m: &Monomial) -> TensorElement {
        self.delta_closed_with_bases(
            m,
            &Scalar::omega(&self.ctx),
            &Scalar::omega_pow(&self.ctx, -1),
        )
    }

    /// Linear extension of [`Hopf::delta_closed`].
    pub fn delta_closed_element(&self, e: &Element) -> TensorElement {
        let mut out = TensorElement::zero(&self.ctx);
        for (m, c) in e.terms() {
            out = out.add(&self.delta_closed(m).scale(c));
        }
        out
    }

    pub fn counit(&self, e: &Element) -> Scalar {
        let mut out = Scalar::zero(&self.ctx);
        for (m, c) in e.terms() {
            if m.r == 0 && m.s == 0 {
                out = out.add(c);
            }
        }
        out
    }

    pub fn antipode(&self, e: &Element) -> Element {
        e.map_terms(Scalar::clone, |m| self.antipode_table[self.index(m)].clone())
    }

    /// Least `k >= 1` with `S^k = id` on every basis monomial, searched up
    /// to `limit`.
    pub fn antipode_order_within(&self, limit: usize) -> Option<usize> {
        let start: Vec<Element> = basis(self.n()).map(|m| Element::monomial(&self.ctx, m)).collect();
        let mut images = start.clone();
        for k in 1..=limit {
            images = images.iter().map(|e| self.antipode(e)).collect();
            if images == start {
                return Some(k);
            }
        }
        None
    }

    /// Order of the antipode. `S^{2n} = id` always holds, so the search is
    /// bounded by `2n`.
    pub fn antipode_order(&self) -> usize {
        self.antipode_order_within(2 * self.n())
            .expect("S^{2n} is the identity")
    }

    /// `(Δ ⊗ id)Δ(m)` and `(id ⊗ Δ)Δ(m)`.
    pub fn coassociativity_sides(&self, m: &Monomial) -> (TripleTensor, TripleTensor) {
        let d = self.delta_monomial(m);
        let mut left = TripleTensor { terms: BTreeMap::new() };
        let mut right = TripleTensor { terms: BTreeMap::new() };
        for ((a, b), c) in &d.terms {
            for ((a1, a2), v) in &self.delta_monomial(a).terms {
                left.add_term((*a1, *a2, *b), c.mul(v));
            }
            for ((b1, b2), v) in &self.delta_monomial(b).terms {
                right.add_term((*a, *b1, *b2), c.mul(v));
            }
        }
        (left, right)
    }

    /// `(ε ⊗ id)Δ(e)` and `(id ⊗ ε)Δ(e)`.
    pub fn counit_sides(&self, e: &Element) -> (Element, Element) {
        let d = self.delta(e);
        let mut left = Element::zero(&self.ctx);
        let mut right = Element::zero(&self.ctx);
        for ((a, b), c) in &d.terms {
            if a.r == 0 && a.s == 0 {
                left.add_term(*b, c);
            }
            if b.r == 0 && b.s == 0 {
                right.add_term(*a, c);
            }
        }
        (left, right)
    }

    /// `m(S ⊗ id)Δ(e)` and `m(id ⊗ S)Δ(e)`.
    pub fn antipode_sides(&self, e: &Element) -> (Element, Element) {
        let d = self.delta(e);
        let s = |x: &Element| self.antipode(x);
        let left = d.map(Linearity::Linear, s, Element::clone).multiply_legs();
        let right = d.map(Linearity::Linear, Element::clone, s).multiply_legs();
        (left, right)
    }
}
