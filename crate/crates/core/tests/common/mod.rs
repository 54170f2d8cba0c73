//! Shared helpers and independent oracles for the integration tests.
#![allow(dead_code)]

pub mod cli;

use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use radford::algebra::{Element, Monomial};
use radford::coalgebra::TensorElement;
use radford::scalars::{make_context, Context, Scalar};

pub fn ctx(n: usize) -> Context {
    make_context(n, None).unwrap()
}

pub fn monomials(n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for r in 0..n {
        for s in 0..n {
            for l in 0..n {
                out.push(Monomial::new(r, s, l));
            }
        }
    }
    out
}

/// Letters of `y^r x^s g^l` as a word.
pub fn word_of(m: Monomial) -> Vec<char> {
    let mut w = vec!['y'; m.r];
    w.extend(std::iter::repeat_n('x', m.s));
    w.extend(std::iter::repeat_n('g', m.l));
    w
}

/// Brings a word to the form `y^r x^s g^l` by adjacent swaps, tracking the
/// power of `ω` picked up. `None` when the word is zero in `H_n`.
pub fn normal_word(n: usize, word: &[char]) -> Option<(i64, Monomial)> {
    let mut w = word.to_vec();
    let rank = |c: char| match c {
        'y' => 0,
        'x' => 1,
        'g' => 2,
        _ => panic!("bad letter {c}"),
    };
    let mut e = 0i64;
    let mut swapped = true;
    while swapped {
        swapped = false;
        for k in 0..w.len().saturating_sub(1) {
            if rank(w[k]) > rank(w[k + 1]) {
                // xy = ω yx, gy = ω yg, gx = ω^{-1} xg
                e += match (w[k], w[k + 1]) {
                    ('x', 'y') => 1,
                    ('g', 'y') => 1,
                    ('g', 'x') => -1,
                    _ => unreachable!(),
                };
                w.swap(k, k + 1);
                swapped = true;
            }
        }
    }
    let count = |c: char| w.iter().filter(|&&d| d == c).count();
    let (r, s, l) = (count('y'), count('x'), count('g'));
    if r >= n || s >= n {
        return None;
    }
    Some((e, Monomial::new(r, s, l % n)))
}

/// Element from a list of `(coefficient, word)` pairs, through
/// [`normal_word`].
pub fn element_from_words(ctx: &Context, words: &[(Scalar, Vec<char>)]) -> Element {
    let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (c, w) in words {
        if let Some((e, m)) = normal_word(ctx.n(), w) {
            let v = c.mul(&Scalar::omega_pow(ctx, e));
            let entry = acc.entry(m).or_insert_with(|| Scalar::zero(ctx));
            *entry = entry.add(&v);
        }
    }
    Element::from_terms(ctx, acc)
}

/// `Δ(y^r x^s g^l)` by expanding every choice of summand in
/// `(y⊗g + 1⊗y)^r (x⊗g + 1⊗x)^s (g⊗g)^l` and normalising each leg.
pub fn delta_oracle(ctx: &Context, m: Monomial) -> TensorElement {
    let gens = word_of(m);
    let mut acc: BTreeMap<(Monomial, Monomial), Scalar> = BTreeMap::new();
    let branching: Vec<usize> = gens.iter().enumerate().filter(|(_, &c)| c != 'g').map(|(k, _)| k).collect();
    for mask in 0u64..(1 << branching.len()) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (k, &c) in gens.iter().enumerate() {
            let pick_first = match branching.iter().position(|&b| b == k) {
                Some(bit) => mask >> bit & 1 == 0,
                None => true,
            };
            if c == 'g' {
                left.push('g');
                right.push('g');
            } else if pick_first {
                left.push(c);
                right.push('g');
            } else {
                right.push(c);
            }
        }
        let (Some((e1, a)), Some((e2, b))) = (normal_word(ctx.n(), &left), normal_word(ctx.n(), &right)) else {
            continue;
        };
        let entry = acc.entry((a, b)).or_insert_with(|| Scalar::zero(ctx));
        *entry = entry.add(&Scalar::omega_pow(ctx, e1 + e2));
    }
    TensorElement::from_terms(ctx, acc)
}

/// `S(y^r x^s g^l) = S(g)^l S(x)^s S(y)^r` as the single word
/// `(g^{n-1})^l (x g^{n-1})^s (y g^{n-1})^r` with sign `(-1)^{r+s}`.
pub fn antipode_oracle(ctx: &Context, m: Monomial) -> Element {
    let n = ctx.n();
    let mut w = Vec::new();
    for _ in 0..m.l {
        w.extend(std::iter::repeat_n('g', n - 1));
    }
    for _ in 0..m.s {
        w.push('x');
        w.extend(std::iter::repeat_n('g', n - 1));
    }
    for _ in 0..m.r {
        w.push('y');
        w.extend(std::iter::repeat_n('g', n - 1));
    }
    let sign = if (m.r + m.s).is_multiple_of(2) { 1 } else { -1 };
    element_from_words(ctx, &[(Scalar::from_int(ctx, sign), w)])
}

/// Gaussian binomial `[k, j]_q` as `Σ q^{inv(w)}` over 0/1 words with `j`
/// ones, where `inv` counts pairs `1` before `0`.
pub fn qbinom_oracle(k: usize, j: usize, q: &Scalar) -> Scalar {
    let ctx = q.context();
    let mut total = Scalar::zero(ctx);
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != j {
            continue;
        }
        let bits: Vec<u32> = (0..k).map(|b| mask >> b & 1).collect();
        let mut inv = 0i64;
        for a in 0..k {
            for b in a + 1..k {
                if bits[a] == 1 && bits[b] == 0 {
                    inv += 1;
                }
            }
        }
        total = total.add(&q.pow(inv).unwrap());
    }
    total
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

pub fn scalar_in(ctx: Context) -> impl Strategy<Value = Scalar> {
    let d = ctx.degree();
    proptest::collection::vec(small_rational(), d).prop_map(move |c| Scalar::from_coords(&ctx, c).unwrap())
}

pub fn nonzero_scalar_in(ctx: Context) -> impl Strategy<Value = Scalar> {
    scalar_in(ctx).prop_filter("nonzero", |s| !s.is_zero())
}

pub fn monomial_in(n: usize) -> impl Strategy<Value = Monomial> {
    (0..n, 0..n, 0..n).prop_map(|(r, s, l)| Monomial::new(r, s, l))
}

/// Sparse elements with up to `max_terms` terms and small coefficients.
pub fn element_in(ctx: Context, max_terms: usize) -> impl Strategy<Value = Element> {
    let n = ctx.n();
    proptest::collection::vec((monomial_in(n), scalar_in(ctx.clone())), 0..=max_terms)
        .prop_map(move |terms| {
            terms
                .into_iter()
                .fold(Element::zero(&ctx), |acc, (m, c)| acc.add(&Element::monomial(&ctx, m).scale(&c)))
        })
}

/// The `n = 2` matrices `I`, `[[0,1],[1,0]]`, `diag(i,-i)`, `[[0,2],[1/2,0]]`.
pub fn matrix_witnesses(ctx: &Context) -> Vec<[[Scalar; 2]; 2]> {
    let s = |p: i64, q: i64| Scalar::from_ratio(ctx, p, q);
    let i = Scalar::imag_unit(ctx);
    vec![
        [[s(1, 1), s(0, 1)], [s(0, 1), s(1, 1)]],
        [[s(0, 1), s(1, 1)], [s(1, 1), s(0, 1)]],
        [[i.clone(), s(0, 1)], [s(0, 1), i.neg()]],
        [[s(0, 1), s(2, 1)], [s(1, 2), s(0, 1)]],
    ]
}

/// `conj(A)·A` computed entrywise, for checking matrices independently of
/// the constructor.
pub fn conj_a_times_a(a: &[[Scalar; 2]; 2]) -> [[Scalar; 2]; 2] {
    let e = |i: usize, j: usize| a[i][0].conjugate().mul(&a[0][j]).add(&a[i][1].conjugate().mul(&a[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn roots_of_unity(ctx: &Context) -> Vec<Scalar> {
    (0..ctx.m() as i64).map(|k| Scalar::zeta_pow(ctx, k)).collect()
}

/// A random element with up to six terms and coefficients that are sums of
/// up to two small rational multiples of roots of unity.
pub fn random_element<R: rand::Rng>(ctx: &Context, rng: &mut R) -> Element {
    let n = ctx.n();
    let mut e = Element::zero(ctx);
    for _ in 0..rng.gen_range(0..=6) {
        let m = Monomial::new(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let mut c = Scalar::zero(ctx);
        for _ in 0..rng.gen_range(1..=2) {
            let q = Scalar::from_ratio(ctx, rng.gen_range(-5..=5), rng.gen_range(1..=4));
            c = c.add(&q.mul(&Scalar::zeta_pow(ctx, rng.gen_range(0..ctx.m() as i64))));
        }
        e = e.add(&Element::monomial(ctx, m).scale(&c));
    }
    e
}
