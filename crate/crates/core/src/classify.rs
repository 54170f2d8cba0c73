//! Hopf automorphisms fixing `g`, equivalence of *-structures, and the
//! finite candidate scan over generator images.
//!
//! Two structures `*_A`, `*_B` are equivalent through `φ` when
//! `φ(h^{*_A}) = φ(h)^{*_B}` for all `h`. For `n = 2` and matrix
//! structures this is the conjugate-linear matrix equation `AΛ = conj(Λ)B`
//! in the matrix `Λ` of `φ` on `span{x, y}`.

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{basis, Element, Monomial};
use crate::coalgebra::{Hopf, Linearity};
use crate::scalars::{sqrt_of_root_of_unity, Context, Scalar, ScalarError};
use crate::solver::{rational_nullspace, rationalize, ConjLinearSystem, ConjTerm};
use crate::star::{
    make_star_diag, verify_star_axioms_with, StarError, StarMap, StarStructure, STAR_CHECKS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("automorphism scalars must be nonzero")]
    ZeroScalar,
    #[error("2x2 automorphisms need n = 2, got n = {0}")]
    MatrixNeedsN2(usize),
    #[error("the matrix is singular")]
    Singular,
    #[error("the images violate the relation {0}")]
    RelationViolated(&'static str),
    #[error("the map does not commute with Δ on {0}")]
    NotCoalgebraMap(&'static str),
    #[error("this operation needs a diagonal *-structure with n > 2")]
    NeedsDiagonal,
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("the constructed witness failed verification")]
    WitnessRejected,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Star(#[from] StarError),
}

/// A Hopf algebra automorphism with `φ(g) = g`.
#[derive(Clone, Debug, PartialEq)]
pub enum Automorphism {
    /// `φ(x) = λ₁x`, `φ(y) = λ₂y`.
    Diagonal { lambda1: Scalar, lambda2: Scalar },
    /// `n = 2`: `φ(x) = λ₁₁x + λ₁₂y`, `φ(y) = λ₂₁x + λ₂₂y`.
    Matrix2 { lambda: [[Scalar; 2]; 2] },
}

pub fn make_automorphism_diag(lambda1: Scalar, lambda2: Scalar) -> Result<Automorphism, ClassifyError> {
    if lambda1.context().m() != lambda2.context().m() {
        return Err(ClassifyError::ContextMismatch);
    }
    if lambda1.is_zero() || lambda2.is_zero() {
        return Err(ClassifyError::ZeroScalar);
    }
    let phi = Automorphism::Diagonal { lambda1, lambda2 };
    phi.check_hopf_map()?;
    Ok(phi)
}

pub fn make_automorphism_matrix(lambda: [[Scalar; 2]; 2]) -> Result<Automorphism, ClassifyError> {
    let ctx = lambda[0][0].context().clone();
    if lambda.iter().flatten().any(|c| c.context().m() != ctx.m()) {
        return Err(ClassifyError::ContextMismatch);
    }
    if ctx.n() != 2 {
        return Err(ClassifyError::MatrixNeedsN2(ctx.n()));
    }
    if determinant(&lambda).is_zero() {
        return Err(ClassifyError::Singular);
    }
    let phi = Automorphism::Matrix2 { lambda };
    phi.check_hopf_map()?;
    Ok(phi)
}

fn determinant(a: &[[Scalar; 2]; 2]) -> Scalar {
    a[0][0].mul(&a[1][1]).sub(&a[0][1].mul(&a[1][0]))
}

impl Automorphism {
    pub fn context(&self) -> &Context {
        match self {
            Automorphism::Diagonal { lambda1, .. } => lambda1.context(),
            Automorphism::Matrix2 { lambda } => lambda[0][0].context(),
        }
    }

    /// `(φ(x), φ(y))`.
    pub fn images(&self) -> (Element, Element) {
        let ctx = self.context();
        let (x, y) = (Element::x(ctx), Element::y(ctx));
        match self {
            Automorphism::Diagonal { lambda1, lambda2 } => (x.scale(lambda1), y.scale(lambda2)),
            Automorphism::Matrix2 { lambda } => (
                x.scale(&lambda[0][0]).add(&y.scale(&lambda[0][1])),
                x.scale(&lambda[1][0]).add(&y.scale(&lambda[1][1])),
            ),
        }
    }

    /// Matrix of `φ` on `span{x, y}` (rows are the images of `x`, `y`).
    pub fn matrix(&self) -> [[Scalar; 2]; 2] {
        match self {
            Automorphism::Diagonal { lambda1, lambda2 } => {
                let z = Scalar::zero(lambda1.context());
                [[lambda1.clone(), z.clone()], [z, lambda2.clone()]]
            }
            Automorphism::Matrix2 { lambda } => lambda.clone(),
        }
    }

    /// Rechecks that the generator images satisfy the defining relations
    /// and that `Δ∘φ = (φ⊗φ)∘Δ` on `g`, `x`, `y`.
    fn check_hopf_map(&self) -> Result<(), ClassifyError> {
        let ctx = self.context().clone();
        let n = ctx.n();
        let hopf = Hopf::new(&ctx);
        let (px, py) = self.images();
        let g = Element::g(&ctx);
        let w = Scalar::omega(&ctx);
        if !px.pow(n).is_zero() {
            return Err(ClassifyError::RelationViolated("x^n = 0"));
        }
        if !py.pow(n).is_zero() {
            return Err(ClassifyError::RelationViolated("y^n = 0"));
        }
        if px.mul(&g) != g.mul(&px).scale(&w) {
            return Err(ClassifyError::RelationViolated("xg = ωgx"));
        }
        if g.mul(&py) != py.mul(&g).scale(&w) {
            return Err(ClassifyError::RelationViolated("gy = ωyg"));
        }
        if px.mul(&py) != py.mul(&px).scale(&w) {
            return Err(ClassifyError::RelationViolated("xy = ωyx"));
        }
        for (name, h) in [("x", Element::x(&ctx)), ("y", Element::y(&ctx))] {
            let lhs = hopf.delta(&self.apply(&h));
            let rhs = hopf.delta(&h).map(
                Linearity::Linear,
                |e| self.apply(e),
                |e| self.apply(e),
            );
            if lhs != rhs {
                return Err(ClassifyError::NotCoalgebraMap(name));
            }
        }
        Ok(())
    }

    /// Algebra-map extension: `φ(y^r x^s g^l) = φ(y)^r φ(x)^s g^l`.
    pub fn apply(&self, e: &Element) -> Element {
        let ctx = self.context();
        let (px, py) = self.images();
        e.map_terms(Scalar::clone, |m| {
            py.pow(m.r).mul(&px.pow(m.s)).mul(&Element::g_pow(ctx, m.l))
        })
    }

    pub fn embed(&self, target: &Context) -> Result<Automorphism, ClassifyError> {
        Ok(match self {
            Automorphism::Diagonal { lambda1, lambda2 } => Automorphism::Diagonal {
                lambda1: lambda1.embed(target)?,
                lambda2: lambda2.embed(target)?,
            },
            Automorphism::Matrix2 { lambda } => Automorphism::Matrix2 {
                lambda: [
                    [lambda[0][0].embed(target)?, lambda[0][1].embed(target)?],
                    [lambda[1][0].embed(target)?, lambda[1][1].embed(target)?],
                ],
            },
        })
    }

    /// The inverse automorphism.
    pub fn inverse(&self) -> Result<Automorphism, ClassifyError> {
        match self {
            Automorphism::Diagonal { lambda1, lambda2 } => {
                make_automorphism_diag(lambda1.inv()?, lambda2.inv()?)
            }
            Automorphism::Matrix2 { lambda } => {
                let det_inv = determinant(lambda).inv()?;
                let inv = [
                    [lambda[1][1].mul(&det_inv), lambda[0][1].neg().mul(&det_inv)],
                    [lambda[1][0].neg().mul(&det_inv), lambda[0][0].mul(&det_inv)],
                ];
                make_automorphism_matrix(inv)
            }
        }
    }
}

pub fn apply_automorphism(phi: &Automorphism, e: &Element) -> Element {
    phi.apply(e)
}

/// Smallest conductor among the operands' that all of them embed into.
pub fn common_context(ctxs: &[&Context]) -> Option<Context> {
    let widest = ctxs.iter().max_by_key(|c| c.m())?;
    ctxs.iter()
        .all(|c| c.n() == widest.n() && widest.m() % c.m() == 0)
        .then(|| (*widest).clone())
}

/// Whether `φ(b^{*A}) = φ(b)^{*B}` for every basis monomial `b`. Operands
/// over different conductors are first embedded into the widest one; if
/// that is impossible the answer is `false`.
pub fn verify_equivalence(phi: &Automorphism, st_a: &StarStructure, st_b: &StarStructure) -> bool {
    let Some(ctx) = common_context(&[phi.context(), st_a.context(), st_b.context()]) else {
        return false;
    };
    let (Ok(phi), Ok(st_a), Ok(st_b)) = (phi.embed(&ctx), st_a.embed(&ctx), st_b.embed(&ctx)) else {
        return false;
    };
    let (star_a, star_b) = (StarMap::new(&st_a), StarMap::new(&st_b));
    basis(ctx.n()).all(|m| {
        let b = Element::monomial(&ctx, m);
        phi.apply(star_a.monomial_image(&m)) == star_b.apply(&phi.apply(&b))
    })
}

/// For a diagonal structure `x* = αx`, `y* = βy` with `α`, `β` roots of
/// unity, the automorphism `φ = diag(λ₁, λ₂)` with `λ₁² = conj(α)`,
/// `λ₂² = conj(β)` carries it to the structure `x* = x`, `y* = y`.
///
/// The roots are taken in the extension of conductor `2m` when needed; the
/// returned automorphism lives in that context and has been verified.
pub fn equivalence_witness_diag(st: &StarStructure) -> Result<Automorphism, ClassifyError> {
    let StarStructure::Diagonal { alpha, beta } = st else {
        return Err(ClassifyError::NeedsDiagonal);
    };
    if st.context().n() <= 2 {
        return Err(ClassifyError::NeedsDiagonal);
    }
    let (l1, c1) = sqrt_of_root_of_unity(&alpha.conjugate())?;
    let (l2, c2) = sqrt_of_root_of_unity(&beta.conjugate())?;
    let ctx = if c1.m() >= c2.m() { c1 } else { c2 };
    let phi = make_automorphism_diag(l1.embed(&ctx)?, l2.embed(&ctx)?)?;
    let one = Scalar::one(&ctx);
    let target = make_star_diag(one.clone(), one)?;
    if !verify_equivalence(&phi, st, &target) {
        return Err(ClassifyError::WitnessRejected);
    }
    Ok(phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    UnknownWithinBound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceResult {
    pub verdict: Verdict,
    pub witness: Option<Automorphism>,
    pub nullspace_dimension: usize,
}

/// Default coefficient height for the invertibility search.
pub const DEFAULT_SEARCH_HEIGHT: i64 = 3;

fn star_matrix(st: &StarStructure) -> Result<[[Scalar; 2]; 2], ClassifyError> {
    match st {
        StarStructure::Matrix2 { a } => Ok(a.clone()),
        StarStructure::Diagonal { alpha, beta } if st.context().n() == 2 => {
            let z = Scalar::zero(alpha.context());
            Ok([[alpha.clone(), z.clone()], [z, beta.clone()]])
        }
        _ => Err(ClassifyError::Star(StarError::MatrixNeedsN2(st.context().n()))),
    }
}

/// The conjugate-linear system `AΛ - conj(Λ)B = 0` in the entries of `Λ`
/// (unknown `2j + k` is `Λ[j][k]`).
pub fn equivalence_system(a: &[[Scalar; 2]; 2], b: &[[Scalar; 2]; 2]) -> ConjLinearSystem {
    let ctx = a[0][0].context();
    let mut sys = ConjLinearSystem::new(ctx, 4);
    for p in 0..2 {
        for q in 0..2 {
            let mut eq = Vec::new();
            for t in 0..2 {
                eq.push(ConjTerm {
                    unknown: 2 * t + q,
                    coeff: a[p][t].clone(),
                    conjugated: false,
                });
                eq.push(ConjTerm {
                    unknown: 2 * p + t,
                    coeff: b[t][q].neg(),
                    conjugated: true,
                });
            }
            sys.push(eq);
        }
    }
    sys
}

/// Integer vectors in `[-h, h]^d` with max-norm exactly `h`, in
/// lexicographic order.
fn shell(d: usize, h: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * h + 1) as u64;
    let total = side.pow(d as u32);
    (0..total).filter_map(move |mut code| {
        let mut v = vec![0i64; d];
        for k in (0..d).rev() {
            v[k] = (code % side) as i64 - h;
            code /= side;
        }
        v.iter().any(|c| c.abs() == h).then_some(v)
    })
}

/// Decides equivalence of two `n = 2` matrix structures by solving
/// `AΛ = conj(Λ)B` over `ℚ` and searching the solution space for an
/// invertible `Λ` among integer combinations of height at most `height`.
///
/// `det Λ` restricted to the solution space is a quadratic form in the
/// combination coefficients. When all of its coefficients vanish no
/// invertible solution exists and the verdict is `NotEquivalent`. Otherwise
/// the form is nonzero somewhere on `{-1, 0, 1}^d`, so any `height >= 1`
/// finds a witness.
pub fn solve_equivalence_n2(
    st_a: &StarStructure,
    st_b: &StarStructure,
    height: i64,
) -> Result<EquivalenceResult, ClassifyError> {
    let a = star_matrix(st_a)?;
    let b = star_matrix(st_b)?;
    if a[0][0].context().m() != b[0][0].context().m() {
        return Err(ClassifyError::ContextMismatch);
    }
    let ctx = a[0][0].context().clone();
    let sys = equivalence_system(&a, &b);
    let basis_vectors = rational_nullspace(&rationalize(&sys));
    let d = basis_vectors.len();
    let mut result = EquivalenceResult {
        verdict: Verdict::NotEquivalent,
        witness: None,
        nullspace_dimension: d,
    };
    if d == 0 {
        return Ok(result);
    }

    // det(Σ c_i v_i) = Σ_{i,j} c_i c_j D(v_i, v_j), D(u, v) = u₀₀v₁₁ - u₀₁v₁₀
    let bilinear = |u: &[Scalar], v: &[Scalar]| u[0].mul(&v[3]).sub(&u[1].mul(&v[2]));
    let form_vanishes = (0..d).all(|i| {
        (i..d).all(|j| {
            let c = if i == j {
                bilinear(&basis_vectors[i], &basis_vectors[i])
            } else {
                bilinear(&basis_vectors[i], &basis_vectors[j])
                    .add(&bilinear(&basis_vectors[j], &basis_vectors[i]))
            };
            c.is_zero()
        })
    });
    if form_vanishes {
        return Ok(result);
    }

    result.verdict = Verdict::UnknownWithinBound;
    for h in 1..=height {
        for coeffs in shell(d, h) {
            let mut lambda: Vec<Scalar> = vec![Scalar::zero(&ctx); 4];
            for (c, v) in coeffs.iter().zip(&basis_vectors) {
                if *c == 0 {
                    continue;
                }
                let c = Scalar::from_int(&ctx, *c);
                for k in 0..4 {
                    lambda[k] = lambda[k].add(&c.mul(&v[k]));
                }
            }
            let matrix = [
                [lambda[0].clone(), lambda[1].clone()],
                [lambda[2].clone(), lambda[3].clone()],
            ];
            if determinant(&matrix).is_zero() {
                continue;
            }
            let Ok(phi) = make_automorphism_matrix(matrix) else {
                continue;
            };
            if verify_equivalence(&phi, st_a, st_b) {
                result.verdict = Verdict::Equivalent;
                result.witness = Some(phi);
                return Ok(result);
            }
        }
    }
    Ok(result)
}

/// All `m`-th roots of unity together with `0`.
pub fn default_grid(ctx: &Context) -> Vec<Scalar> {
    std::iter::once(Scalar::zero(ctx))
        .chain((0..ctx.m() as i64).map(|k| Scalar::zeta_pow(ctx, k)))
        .collect()
}

/// Candidate images of `x` (or `y`) once `g* = g^w`: for `w = 1` every
/// grid combination `a·x + b·y + c·(1 - g)`, otherwise `a·(1 - g^w)`.
fn image_candidates(ctx: &Context, grid: &[Scalar], w: usize) -> Vec<Element> {
    let one = Element::one(ctx);
    let t = &one - &Element::g_pow(ctx, w);
    if w != 1 {
        return grid.iter().map(|a| t.scale(a)).collect();
    }
    let (x, y) = (Element::x(ctx), Element::y(ctx));
    let mut out = Vec::with_capacity(grid.len().pow(3));
    for a in grid {
        for b in grid {
            for c in grid {
                out.push(x.scale(a).add(&y.scale(b)).add(&t.scale(c)));
            }
        }
    }
    out
}

/// Scans `*`-structure candidates built from `grid`. `g*` ranges over
/// `g^w` for `1 <= w < n`, and the images of `x` and `y` over grid
/// combinations of `x`, `y`, `1 - g` (for `w = 1`) or of `1 - g^w` (for
/// `w > 1`). Each image is first screened with the axioms that only involve
/// it and `g*` (the checks restricted to monomials free of the other
/// generator); every remaining pair is run through the full verifier.
/// Returns the candidates that pass all checks.
pub fn scan_star_candidates(ctx: &Context, grid: &[Scalar]) -> Vec<StarStructure> {
    let n = ctx.n();
    let hopf = Hopf::new(ctx);
    let zero = Element::zero(ctx);
    let partial_checks = ["antimultiplicative", "coproduct", "counit"];
    let y_free: Vec<Monomial> = basis(n).filter(|m| m.r == 0).collect();
    let x_free: Vec<Monomial> = basis(n).filter(|m| m.s == 0).collect();
    let all: Vec<Monomial> = basis(n).collect();

    let mut survivors = Vec::new();
    for w in 1..n {
        let g_img = Element::g_pow(ctx, w);
        let candidates = image_candidates(ctx, grid, w);
        let screen = |placeholder_x: bool, monomials: &[Monomial]| -> Vec<Element> {
            candidates
                .par_iter()
                .filter(|img| {
                    let st = if placeholder_x {
                        StarStructure::Raw { g: g_img.clone(), x: zero.clone(), y: (*img).clone() }
                    } else {
                        StarStructure::Raw { g: g_img.clone(), x: (*img).clone(), y: zero.clone() }
                    };
                    verify_star_axioms_with(&hopf, &st, monomials, &partial_checks).all_passed()
                })
                .cloned()
                .collect()
        };
        let xs = screen(false, &y_free);
        let ys = screen(true, &x_free);
        let pairs: Vec<(&Element, &Element)> =
            xs.iter().flat_map(|x| ys.iter().map(move |y| (x, y))).collect();
        let found: Vec<StarStructure> = pairs
            .par_iter()
            .map(|(x, y)| StarStructure::Raw {
                g: g_img.clone(),
                x: (*x).clone(),
                y: (*y).clone(),
            })
            .filter(|st| verify_star_axioms_with(&hopf, st, &all, &STAR_CHECKS).all_passed())
            .collect();
        survivors.extend(found);
    }
    survivors
}
