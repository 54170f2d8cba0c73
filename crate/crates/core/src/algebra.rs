//! The algebra `H_n`: canonical monomials `y^r x^s g^l`, sparse elements and
//! their products.
//!
//! Products of basis monomials use the closed form
//!
//! ```text
//! (y^a x^b g^c)(y^d x^e g^f) = ω^{cd + bd - ce} y^{a+d} x^{b+e} g^{c+f}
//! ```
//!
//! (zero once a `y` or `x` degree reaches `n`). [`rewrite_word`] computes
//! the same normal forms by rewriting letter words with the defining
//! relations and is kept as an independent oracle for the formula.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalars::{Context, Scalar};

/// Basis monomial `y^r x^s g^l` with `0 <= r, s, l < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub r: usize,
    pub s: usize,
    pub l: usize,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { r: 0, s: 0, l: 0 };

    pub const fn new(r: usize, s: usize, l: usize) -> Self {
        Monomial { r, s, l }
    }

    pub fn g_pow(l: usize) -> Self {
        Monomial::new(0, 0, l)
    }

    pub fn in_range(&self, n: usize) -> bool {
        self.r < n && self.s < n && self.l < n
    }

    /// The letter word `Y^r X^s G^l`.
    pub fn letters(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.r + self.s + self.l);
        w.extend(std::iter::repeat_n(Letter::Y, self.r));
        w.extend(std::iter::repeat_n(Letter::X, self.s));
        w.extend(std::iter::repeat_n(Letter::G, self.l));
        w
    }

    /// Closed-form product: `None` when it vanishes, otherwise the exponent
    /// `e` (mod `n`) and monomial with `a·b = ω^e · monomial`.
    pub fn product(a: Monomial, b: Monomial, n: usize) -> Option<(usize, Monomial)> {
        if a.r + b.r >= n || a.s + b.s >= n {
            return None;
        }
        let e = (a.l * b.r + a.s * b.r + n * n - (a.l * b.s) % n) % n;
        Some((e, Monomial::new(a.r + b.r, a.s + b.s, (a.l + b.l) % n)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("y", self.r), ("x", self.s), ("g", self.l)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// All `n³` basis monomials in lexicographic `(r, s, l)` order.
pub fn basis(n: usize) -> impl Iterator<Item = Monomial> + Clone {
    (0..n).flat_map(move |r| (0..n).flat_map(move |s| (0..n).map(move |l| Monomial::new(r, s, l))))
}

/// A linear combination of basis monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
    ctx: Context,
}

impl Element {
    pub fn zero(ctx: &Context) -> Self {
        Element {
            terms: BTreeMap::new(),
            ctx: ctx.clone(),
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::monomial(ctx, Monomial::ONE)
    }

    pub fn scalar(c: Scalar) -> Self {
        let ctx = c.context().clone();
        Self::term(c, Monomial::ONE, &ctx)
    }

    pub fn monomial(ctx: &Context, mon: Monomial) -> Self {
        Self::term(Scalar::one(ctx), mon, ctx)
    }

    fn term(c: Scalar, mon: Monomial, ctx: &Context) -> Self {
        assert!(mon.in_range(ctx.n()), "monomial {mon} out of range for n = {}", ctx.n());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mon, c);
        }
        Element {
            terms,
            ctx: ctx.clone(),
        }
    }

    pub fn g(ctx: &Context) -> Self {
        Self::monomial(ctx, Monomial::new(0, 0, 1 % ctx.n()))
    }

    pub fn x(ctx: &Context) -> Self {
        Self::monomial(ctx, Monomial::new(0, 1, 0))
    }

    pub fn y(ctx: &Context) -> Self {
        Self::monomial(ctx, Monomial::new(1, 0, 0))
    }

    pub fn g_pow(ctx: &Context, l: usize) -> Self {
        Self::monomial(ctx, Monomial::g_pow(l % ctx.n()))
    }

    /// Builds an element from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(ctx: &Context, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Element::zero(ctx);
        for (mon, c) in terms {
            e.add_term(mon, &c);
        }
        e
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mon: &Monomial) -> Scalar {
        self.terms
            .get(mon)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some((c, m))` if the element is the single term `c·m`.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, mon: Monomial, c: &Scalar) {
        assert!(mon.in_range(self.ctx.n()), "monomial {mon} out of range");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mon) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&mon);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mon, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        self.check_same(other);
        let mut out = self.clone();
        for (mon, c) in &other.terms {
            out.add_term(*mon, c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.ctx);
        }
        Element {
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul(&self, other: &Element) -> Element {
        self.check_same(other);
        let n = self.n();
        let mut out = Element::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((e, mon)) = Monomial::product(*ma, *mb, n) {
                    out.add_term(mon, &ca.mul(cb).mul_omega_pow(e as i64));
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: usize) -> Element {
        let mut acc = Element::one(&self.ctx);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Applies `f` to every coefficient and `img` to every monomial, summing
    /// `f(c) · img(m)`.
    pub fn map_terms<F, G>(&self, f: F, img: G) -> Element
    where
        F: Fn(&Scalar) -> Scalar,
        G: Fn(&Monomial) -> Element,
    {
        let mut out = Element::zero(&self.ctx);
        for (mon, c) in &self.terms {
            let image = img(mon);
            let fc = f(c);
            for (m2, c2) in &image.terms {
                out.add_term(*m2, &fc.mul(c2));
            }
        }
        out
    }

    /// The same element over a context with a larger conductor and the same
    /// `n`.
    pub fn embed(&self, target: &Context) -> Result<Element, crate::scalars::ScalarError> {
        assert_eq!(self.n(), target.n(), "embedding must keep n");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, c.embed(target)?);
        }
        Ok(Element {
            terms,
            ctx: target.clone(),
        })
    }

    fn check_same(&self, other: &Element) {
        assert!(
            self.ctx.n() == other.ctx.n() && self.ctx.m() == other.ctx.m(),
            "elements from different contexts"
        );
    }
}

/// `a · b` for basis monomials.
pub fn monomial_mul(ctx: &Context, a: Monomial, b: Monomial) -> Element {
    match Monomial::product(a, b, ctx.n()) {
        Some((e, mon)) => Element::term(Scalar::omega_pow(ctx, e as i64), mon, ctx),
        None => Element::zero(ctx),
    }
}

/// Formats the element as a sum of `coefficient*monomial` terms in basis
/// order; the output is accepted by the expression parser.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (mon, c)) in self.terms.iter().enumerate() {
            let mut body = match c.as_rational() {
                Some(q) if q.is_integer() && q.numer() == &1.into() => mon.to_string(),
                Some(q) if q.is_integer() && q.numer() == &(-1).into() => format!("-{mon}"),
                _ if *mon == Monomial::ONE => c.to_string(),
                _ => format!("{c}*{mon}"),
            };
            if k > 0 {
                if let Some(rest) = body.strip_prefix('-') {
                    out.push_str(" - ");
                    body = rest.to_string();
                } else {
                    out.push_str(" + ");
                }
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[n={}, m={}]({self})", self.ctx.n(), self.ctx.m())
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &'a Element) -> Element {
        Element::add(self, rhs)
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        Element::sub(self, rhs)
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &'a Element) -> Element {
        Element::mul(self, rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    G,
    X,
    Y,
}

impl Letter {
    /// Position in the canonical order `Y < X < G`.
    fn rank(self) -> u8 {
        match self {
            Letter::Y => 0,
            Letter::X => 1,
            Letter::G => 2,
        }
    }
}

/// A scalar multiple of a word in the free algebra on `G`, `X`, `Y`.
#[derive(Clone, Debug)]
pub struct FreeWord {
    pub letters: Vec<Letter>,
    pub coefficient: Scalar,
}

impl FreeWord {
    pub fn new(ctx: &Context, letters: Vec<Letter>) -> Self {
        FreeWord {
            letters,
            coefficient: Scalar::one(ctx),
        }
    }
}

/// Normal form of a word in `H_n`, computed with the rewrite rules
///
/// ```text
/// XY → ω·YX    GX → ω⁻¹·XG    GY → ω·YG
/// Gⁿ → 1       Xⁿ → 0         Yⁿ → 0
/// ```
///
/// applied to the leftmost redex until none applies. Every swap removes one
/// inversion with respect to `Y < X < G`, so rewriting terminates.
pub fn rewrite_word(word: &FreeWord) -> Element {
    let ctx = word.coefficient.context().clone();
    let n = ctx.n();
    let mut letters = word.letters.clone();
    let mut omega_exp: i64 = 0;

    loop {
        if let Some(start) = find_run(&letters, n) {
            match letters[start] {
                Letter::G => {
                    letters.drain(start..start + n);
                    continue;
                }
                Letter::X | Letter::Y => return Element::zero(&ctx),
            }
        }
        let Some(k) = (0..letters.len().saturating_sub(1))
            .find(|&k| letters[k].rank() > letters[k + 1].rank())
        else {
            break;
        };
        omega_exp += match (letters[k], letters[k + 1]) {
            (Letter::X, Letter::Y) => 1,
            (Letter::G, Letter::X) => -1,
            (Letter::G, Letter::Y) => 1,
            _ => unreachable!("only inversions are swapped"),
        };
        letters.swap(k, k + 1);
    }

    let count = |t: Letter| letters.iter().filter(|&&c| c == t).count();
    let mon = Monomial::new(count(Letter::Y), count(Letter::X), count(Letter::G));
    let coeff = word.coefficient.mul_omega_pow(omega_exp);
    Element::from_terms(&ctx, [(mon, coeff)])
}

/// Start of the first run of `n` equal letters.
fn find_run(letters: &[Letter], n: usize) -> Option<usize> {
    if letters.len() < n {
        return None;
    }
    (0..=letters.len() - n).find(|&k| letters[k..k + n].iter().all(|&c| c == letters[k]))
}
