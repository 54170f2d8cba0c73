//! Hopf *-structures on `H_n` and the axiom verifiers.
//!
//! A *-structure is a conjugate-linear map with
//!
//! 1. `(h*)* = h`,
//! 2. `(hl)* = l* h*`,
//! 3. `Δ(h*) = Σ (h₁)* ⊗ (h₂)*`,
//! 4. `S(S(h*)*) = h`,
//! 5. `ε(h*) = conj(ε(h))`.
//!
//! A structure is given by the images of `g`, `x`, `y`; on a basis monomial
//! the map is `(y^r x^s g^l)* = (g*)^l (x*)^s (y*)^r`. The verifiers recheck
//! every axiom on all basis monomials (and all basis pairs for the binary
//! laws) instead of trusting that extension.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{basis, Element, Monomial};
use crate::coalgebra::{Hopf, Linearity, TensorElement};
use crate::scalars::{Context, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("|{0}| != 1")]
    NotNormOne(&'static str),
    #[error("2x2 star matrices need n = 2, got n = {0}")]
    MatrixNeedsN2(usize),
    #[error("conj(A)·A differs from the identity at entry ({row}, {col})")]
    NotInvolutive { row: usize, col: usize },
    #[error("star images live in different contexts")]
    ContextMismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A (candidate) *-structure, given by generator images.
#[derive(Clone, Debug, PartialEq)]
pub enum StarStructure {
    /// `g* = g`, `x* = αx`, `y* = βy` with `|α| = |β| = 1`.
    Diagonal { alpha: Scalar, beta: Scalar },
    /// `n = 2`: `g* = g`, `x* = a₁₁x + a₁₂y`, `y* = a₂₁x + a₂₂y`, with
    /// `conj(A)·A = I`.
    Matrix2 { a: [[Scalar; 2]; 2] },
    /// Arbitrary images, with no validity promise.
    Raw { g: Element, x: Element, y: Element },
}

pub fn make_star_diag(alpha: Scalar, beta: Scalar) -> Result<StarStructure, StarError> {
    if alpha.context().m() != beta.context().m() || alpha.context().n() != beta.context().n() {
        return Err(StarError::ContextMismatch);
    }
    if !alpha.is_norm_one() {
        return Err(StarError::NotNormOne("alpha"));
    }
    if !beta.is_norm_one() {
        return Err(StarError::NotNormOne("beta"));
    }
    Ok(StarStructure::Diagonal { alpha, beta })
}

pub fn make_star_matrix(a: [[Scalar; 2]; 2]) -> Result<StarStructure, StarError> {
    let ctx = a[0][0].context().clone();
    if a.iter().flatten().any(|c| c.context().m() != ctx.m()) {
        return Err(StarError::ContextMismatch);
    }
    if ctx.n() != 2 {
        return Err(StarError::MatrixNeedsN2(ctx.n()));
    }
    let product = conj_times(&a, &a);
    for (row, entries) in product.iter().enumerate() {
        for (col, v) in entries.iter().enumerate() {
            let expected = if row == col { Scalar::one(&ctx) } else { Scalar::zero(&ctx) };
            if *v != expected {
                return Err(StarError::NotInvolutive { row, col });
            }
        }
    }
    Ok(StarStructure::Matrix2 { a })
}

/// `conj(A) · B` for 2×2 matrices.
pub(crate) fn conj_times(a: &[[Scalar; 2]; 2], b: &[[Scalar; 2]; 2]) -> [[Scalar; 2]; 2] {
    let entry = |i: usize, j: usize| {
        a[i][0]
            .conjugate()
            .mul(&b[0][j])
            .add(&a[i][1].conjugate().mul(&b[1][j]))
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

impl StarStructure {
    pub fn raw(g: Element, x: Element, y: Element) -> Result<StarStructure, StarError> {
        let ctx = g.context();
        for e in [&x, &y] {
            if e.context().m() != ctx.m() || e.n() != ctx.n() {
                return Err(StarError::ContextMismatch);
            }
        }
        Ok(StarStructure::Raw { g, x, y })
    }

    pub fn context(&self) -> &Context {
        match self {
            StarStructure::Diagonal { alpha, .. } => alpha.context(),
            StarStructure::Matrix2 { a } => a[0][0].context(),
            StarStructure::Raw { g, .. } => g.context(),
        }
    }

    /// Images `(g*, x*, y*)`.
    pub fn images(&self) -> (Element, Element, Element) {
        let ctx = self.context();
        match self {
            StarStructure::Diagonal { alpha, beta } => (
                Element::g(ctx),
                Element::x(ctx).scale(alpha),
                Element::y(ctx).scale(beta),
            ),
            StarStructure::Matrix2 { a } => {
                let (x, y) = (Element::x(ctx), Element::y(ctx));
                (
                    Element::g(ctx),
                    x.scale(&a[0][0]).add(&y.scale(&a[0][1])),
                    x.scale(&a[1][0]).add(&y.scale(&a[1][1])),
                )
            }
            StarStructure::Raw { g, x, y } => (g.clone(), x.clone(), y.clone()),
        }
    }

    /// The same structure over a context with a larger conductor.
    pub fn embed(&self, target: &Context) -> Result<StarStructure, StarError> {
        Ok(match self {
            StarStructure::Diagonal { alpha, beta } => StarStructure::Diagonal {
                alpha: alpha.embed(target)?,
                beta: beta.embed(target)?,
            },
            StarStructure::Matrix2 { a } => StarStructure::Matrix2 {
                a: [
                    [a[0][0].embed(target)?, a[0][1].embed(target)?],
                    [a[1][0].embed(target)?, a[1][1].embed(target)?],
                ],
            },
            StarStructure::Raw { g, x, y } => StarStructure::Raw {
                g: g.embed(target)?,
                x: x.embed(target)?,
                y: y.embed(target)?,
            },
        })
    }

    /// Recognizes the images as a diagonal structure (any `n`) or, for
    /// `n = 2`, a matrix structure, provided the corresponding constructor
    /// accepts it.
    pub fn normalized(&self) -> Option<StarStructure> {
        let ctx = self.context();
        let (g, x, y) = self.images();
        if g != Element::g(ctx) {
            return None;
        }
        let xm = Monomial::new(0, 1, 0);
        let ym = Monomial::new(1, 0, 0);
        let only_xy = |e: &Element| e.terms().all(|(m, _)| *m == xm || *m == ym);
        if !only_xy(&x) || !only_xy(&y) {
            return None;
        }
        let (a11, a12) = (x.coefficient(&xm), x.coefficient(&ym));
        let (a21, a22) = (y.coefficient(&xm), y.coefficient(&ym));
        if a12.is_zero() && a21.is_zero() {
            if let Ok(st) = make_star_diag(a11.clone(), a22.clone()) {
                return Some(st);
            }
        }
        make_star_matrix([[a11, a12], [a21, a22]]).ok()
    }
}

/// A star map with the images of all basis monomials tabulated.
pub struct StarMap {
    ctx: Context,
    table: Vec<Element>,
}

impl StarMap {
    pub fn new(st: &StarStructure) -> Self {
        let ctx = st.context().clone();
        let n = ctx.n();
        let (g, x, y) = st.images();
        let pows = |e: &Element| {
            let mut out = vec![Element::one(&ctx)];
            for k in 1..n {
                out.push(out[k - 1].mul(e));
            }
            out
        };
        let (gp, xp, yp) = (pows(&g), pows(&x), pows(&y));
        let table = basis(n)
            .map(|m| gp[m.l].mul(&xp[m.s]).mul(&yp[m.r]))
            .collect();
        StarMap { ctx, table }
    }

    fn index(&self, m: &Monomial) -> usize {
        let n = self.ctx.n();
        (m.r * n + m.s) * n + m.l
    }

    pub fn monomial_image(&self, m: &Monomial) -> &Element {
        &self.table[self.index(m)]
    }

    pub fn apply(&self, e: &Element) -> Element {
        e.map_terms(Scalar::conjugate, |m| self.monomial_image(m).clone())
    }
}

/// `e*` under the given structure.
pub fn apply_star(st: &StarStructure, e: &Element) -> Element {
    let (g, x, y) = st.images();
    e.map_terms(Scalar::conjugate, |m| g.pow(m.l).mul(&x.pow(m.s)).mul(&y.pow(m.r)))
}

/// One side of a failed identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Element(Element),
    Tensor(TensorElement),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Element(e) => write!(f, "{e}"),
            Value::Tensor(t) => write!(f, "{t}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    /// The basis monomial (or pair) at which the identity fails.
    pub monomials: Vec<Monomial>,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    fn push(&mut self, name: &str, counterexample: Option<Counterexample>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass: counterexample.is_none(),
            counterexample,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<20} {}", c.name, if c.pass { "pass" } else { "FAIL" })?;
            if let Some(ce) = &c.counterexample {
                let at: Vec<String> = ce.monomials.iter().map(ToString::to_string).collect();
                write!(f, "  at ({}): {} != {}", at.join(", "), ce.lhs, ce.rhs)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Names of the *-structure checks, in report order.
pub const STAR_CHECKS: [&str; 5] = [
    "involution",
    "antimultiplicative",
    "coproduct",
    "antipode",
    "counit",
];

/// Names of the Hopf algebra checks, in report order.
pub const HOPF_CHECKS: [&str; 4] = ["coassociativity", "counit", "antipode", "bialgebra"];

/// First index (in order) whose check fails, evaluated in parallel.
fn first_failure<F>(count: usize, check: F) -> Option<Counterexample>
where
    F: Fn(usize) -> Option<Counterexample> + Sync + Send,
{
    (0..count).into_par_iter().find_map_first(check)
}

/// Checks all five *-structure axioms on every basis monomial and every
/// basis pair.
pub fn verify_star_axioms(st: &StarStructure) -> VerificationReport {
    let ctx = st.context();
    verify_star_axioms_on(st, &basis(ctx.n()).collect::<Vec<_>>(), &STAR_CHECKS)
}

/// Runs the named checks with every quantifier restricted to `monomials`
/// (pairs range over `monomials × monomials`).
pub fn verify_star_axioms_on(
    st: &StarStructure,
    monomials: &[Monomial],
    checks: &[&str],
) -> VerificationReport {
    verify_star_axioms_with(&Hopf::new(st.context()), st, monomials, checks)
}

/// [`verify_star_axioms_on`] against a prebuilt Hopf structure, which must
/// share the structure's context.
pub fn verify_star_axioms_with(
    hopf: &Hopf,
    st: &StarStructure,
    monomials: &[Monomial],
    checks: &[&str],
) -> VerificationReport {
    let ctx = st.context().clone();
    assert_eq!(hopf.context().m(), ctx.m(), "Hopf structure from another context");
    let star = StarMap::new(st);
    let n = ctx.n();
    let mono = |m: &Monomial| Element::monomial(&ctx, *m);
    let mut report = VerificationReport::default();

    for &name in checks {
        let ce = match name {
            "involution" => first_failure(monomials.len(), |k| {
                let m = monomials[k];
                let twice = star.apply(star.monomial_image(&m));
                (twice != mono(&m)).then(|| Counterexample {
                    monomials: vec![m],
                    lhs: Value::Element(twice),
                    rhs: Value::Element(mono(&m)),
                })
            }),
            "antimultiplicative" => {
                let len = monomials.len();
                first_failure(len * len, |k| {
                    let (a, b) = (monomials[k / len], monomials[k % len]);
                    let lhs = match Monomial::product(a, b, n) {
                        Some((e, m)) => star
                            .monomial_image(&m)
                            .scale(&Scalar::omega_pow(&ctx, -(e as i64))),
                        None => Element::zero(&ctx),
                    };
                    let rhs = star.monomial_image(&b).mul(star.monomial_image(&a));
                    (lhs != rhs).then(|| Counterexample {
                        monomials: vec![a, b],
                        lhs: Value::Element(lhs),
                        rhs: Value::Element(rhs),
                    })
                })
            }
            "coproduct" => first_failure(monomials.len(), |k| {
                let m = monomials[k];
                let lhs = hopf.delta(star.monomial_image(&m));
                let rhs = hopf.delta_monomial(&m).map(
                    Linearity::ConjugateLinear,
                    |e| star.apply(e),
                    |e| star.apply(e),
                );
                (lhs != rhs).then(|| Counterexample {
                    monomials: vec![m],
                    lhs: Value::Tensor(lhs),
                    rhs: Value::Tensor(rhs),
                })
            }),
            "antipode" => first_failure(monomials.len(), |k| {
                let m = monomials[k];
                let lhs = hopf.antipode(&star.apply(&hopf.antipode(star.monomial_image(&m))));
                (lhs != mono(&m)).then(|| Counterexample {
                    monomials: vec![m],
                    lhs: Value::Element(lhs),
                    rhs: Value::Element(mono(&m)),
                })
            }),
            "counit" => first_failure(monomials.len(), |k| {
                let m = monomials[k];
                let lhs = hopf.counit(star.monomial_image(&m));
                let rhs = hopf.counit(&mono(&m)).conjugate();
                (lhs != rhs).then(|| Counterexample {
                    monomials: vec![m],
                    lhs: Value::Scalar(lhs),
                    rhs: Value::Scalar(rhs),
                })
            }),
            other => panic!("unknown star check {other:?}"),
        };
        report.push(name, ce);
    }
    report
}

/// Which basis pairs the binary Hopf laws are checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairCoverage {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl PairCoverage {
    /// Exhaustive up to `n = 4`, 2000 seeded samples above.
    pub fn default_for(n: usize) -> Self {
        if n <= 4 {
            PairCoverage::Exhaustive
        } else {
            PairCoverage::Sampled {
                count: 2000,
                seed: 0x5eed_0000 + n as u64,
            }
        }
    }

    /// The pairs to check, deterministic for a given coverage.
    pub fn pairs(&self, n: usize) -> Vec<(Monomial, Monomial)> {
        let all: Vec<Monomial> = basis(n).collect();
        match *self {
            PairCoverage::Exhaustive => all
                .iter()
                .flat_map(|a| all.iter().map(move |b| (*a, *b)))
                .collect(),
            PairCoverage::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        (
                            all[rng.gen_range(0..all.len())],
                            all[rng.gen_range(0..all.len())],
                        )
                    })
                    .collect()
            }
        }
    }
}

/// Whether `Δ(ab) = Δ(a)Δ(b)` and `ε(ab) = ε(a)ε(b)`.
pub fn bialgebra_pair_holds(hopf: &Hopf, a: Monomial, b: Monomial) -> bool {
    bialgebra_failure(hopf, a, b).is_none()
}

fn bialgebra_failure(hopf: &Hopf, a: Monomial, b: Monomial) -> Option<Counterexample> {
    let ctx = hopf.context();
    let (ea, eb) = (Element::monomial(ctx, a), Element::monomial(ctx, b));
    let ab = ea.mul(&eb);
    let lhs = hopf.delta(&ab);
    let rhs = hopf.delta_monomial(&a).mul(hopf.delta_monomial(&b));
    if lhs != rhs {
        return Some(Counterexample {
            monomials: vec![a, b],
            lhs: Value::Tensor(lhs),
            rhs: Value::Tensor(rhs),
        });
    }
    let lhs = hopf.counit(&ab);
    let rhs = hopf.counit(&ea).mul(&hopf.counit(&eb));
    (lhs != rhs).then(|| Counterexample {
        monomials: vec![a, b],
        lhs: Value::Scalar(lhs),
        rhs: Value::Scalar(rhs),
    })
}

/// Coassociativity, counit and antipode laws on every basis monomial, and
/// compatibility of `Δ`, `ε` with the product on the chosen pairs.
pub fn verify_hopf_axioms(hopf: &Hopf, coverage: PairCoverage) -> VerificationReport {
    let ctx = hopf.context().clone();
    let monomials: Vec<Monomial> = basis(ctx.n()).collect();
    let mut report = VerificationReport::default();

    let ce = first_failure(monomials.len(), |k| {
        let m = monomials[k];
        let (lhs, rhs) = hopf.coassociativity_sides(&m);
        (lhs != rhs).then(|| Counterexample {
            monomials: vec![m],
            lhs: Value::Text(format!("{lhs:?}")),
            rhs: Value::Text(format!("{rhs:?}")),
        })
    });
    report.push("coassociativity", ce);

    let ce = first_failure(monomials.len(), |k| {
        let m = monomials[k];
        let e = Element::monomial(&ctx, m);
        let (left, right) = hopf.counit_sides(&e);
        if left != e {
            Some((left, e))
        } else if right != e {
            Some((right, e))
        } else {
            None
        }
        .map(|(lhs, rhs)| Counterexample {
            monomials: vec![m],
            lhs: Value::Element(lhs),
            rhs: Value::Element(rhs),
        })
    });
    report.push("counit", ce);

    let ce = first_failure(monomials.len(), |k| {
        let m = monomials[k];
        let e = Element::monomial(&ctx, m);
        let unit = Element::one(&ctx).scale(&hopf.counit(&e));
        let (left, right) = hopf.antipode_sides(&e);
        if left != unit {
            Some(left)
        } else if right != unit {
            Some(right)
        } else {
            None
        }
        .map(|lhs| Counterexample {
            monomials: vec![m],
            lhs: Value::Element(lhs),
            rhs: Value::Element(unit.clone()),
        })
    });
    report.push("antipode", ce);

    let pairs = coverage.pairs(ctx.n());
    let ce = first_failure(pairs.len(), |k| bialgebra_failure(hopf, pairs[k].0, pairs[k].1));
    report.push("bialgebra", ce);
    report
}
