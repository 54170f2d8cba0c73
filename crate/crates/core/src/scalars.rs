//! Exact arithmetic in the cyclotomic field `ℚ(ζ_m)`.
//!
//! A scalar is stored by its coordinates in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}` modulo the cyclotomic polynomial `Φ_m`. The
//! representation is unique, so equality of scalars is equality of
//! coordinate vectors. Complex conjugation is the field automorphism
//! `ζ ↦ ζ^{m-1}`.
//!
//! The conductor `m` is always divisible by both `n` and `4`, so the
//! distinguished roots `ω = ζ^{m/n}` and `i = ζ^{m/4}` are available in
//! every context.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("the order of ω must be at least 2, got n = {0}")]
    InvalidOrder(usize),
    #[error("conductor m = {m} must be a multiple of n = {n} and of 4")]
    InvalidConductor { n: usize, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a root of unity")]
    NotRootOfUnity,
    #[error("cannot embed a scalar of conductor {from} into conductor {to}")]
    IncompatibleEmbedding { from: usize, to: usize },
    #[error("expected {expected} coordinates, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
}

/// Shared description of the coefficient field `ℚ(ζ_m)` together with the
/// order `n` of `ω`.
pub struct FieldContext {
    n: usize,
    m: usize,
    phi_poly: Vec<BigInt>,
    /// `ζ^k` reduced to the power basis, for `0 <= k < m`.
    zeta_powers: Vec<Vec<BigRational>>,
}

pub type Context = Arc<FieldContext>;

/// Contexts are identified by `(n, m)`; everything else is derived.
impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("n", &self.n)
            .field("m", &self.m)
            .finish()
    }
}

/// Builds the field context for `ω` of order `n`. The conductor defaults to
/// `lcm(4, n)`.
pub fn make_context(n: usize, m: Option<usize>) -> Result<Context, ScalarError> {
    if n < 2 {
        return Err(ScalarError::InvalidOrder(n));
    }
    let m = m.unwrap_or_else(|| n.lcm(&4));
    if m == 0 || !m.is_multiple_of(n) || !m.is_multiple_of(4) {
        return Err(ScalarError::InvalidConductor { n, m });
    }
    let phi_poly = cyclotomic_polynomial(m);
    let degree = phi_poly.len() - 1;

    let mut zeta_powers = Vec::with_capacity(m);
    let mut current = vec![BigRational::zero(); degree];
    current[0] = BigRational::one();
    for _ in 0..m {
        zeta_powers.push(current.clone());
        // multiply by ζ and reduce with the monic Φ_m
        let top = current[degree - 1].clone();
        for k in (1..degree).rev() {
            current[k] = current[k - 1].clone();
        }
        current[0] = BigRational::zero();
        if !top.is_zero() {
            for (k, c) in current.iter_mut().enumerate() {
                *c -= &top * BigRational::from_integer(phi_poly[k].clone());
            }
        }
    }

    Ok(Arc::new(FieldContext {
        n,
        m,
        phi_poly,
        zeta_powers,
    }))
}

/// `Φ_m` as integer coefficients, lowest degree first, computed by dividing
/// `X^m - 1` by `Φ_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut poly = vec![BigInt::zero(); m + 1];
    poly[0] = BigInt::from(-1);
    poly[m] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        poly = divide_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

/// Exact quotient of integer polynomials whose divisor is monic. Panics if
/// the division leaves a remainder.
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

impl FieldContext {
    /// Order of `ω`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Conductor of the field.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `φ(m)`, the dimension of `ℚ(ζ_m)` over `ℚ`.
    pub fn degree(&self) -> usize {
        self.phi_poly.len() - 1
    }

    /// Coefficients of `Φ_m`, lowest degree first.
    pub fn phi_poly(&self) -> &[BigInt] {
        &self.phi_poly
    }

    /// Exponent `k` with `ω = ζ^k`.
    pub fn omega_exponent(&self) -> usize {
        self.m / self.n
    }

    /// Exponent `k` with `i = ζ^k`.
    pub fn i_exponent(&self) -> usize {
        self.m / 4
    }

    fn zeta_power(&self, k: i64) -> &[BigRational] {
        &self.zeta_powers[k.rem_euclid(self.m as i64) as usize]
    }
}

/// An element of `ℚ(ζ_m)`.
#[derive(Clone)]
pub struct Scalar {
    coords: Vec<BigRational>,
    ctx: Context,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m == other.ctx.m && self.coords == other.coords
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn zero(ctx: &Context) -> Self {
        Scalar {
            coords: vec![BigRational::zero(); ctx.degree()],
            ctx: ctx.clone(),
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_rational(ctx: &Context, q: BigRational) -> Self {
        let mut s = Self::zero(ctx);
        s.coords[0] = q;
        s
    }

    pub fn from_int(ctx: &Context, k: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(k.into()))
    }

    pub fn from_ratio(ctx: &Context, p: i64, q: i64) -> Self {
        Self::from_rational(ctx, BigRational::new(p.into(), q.into()))
    }

    pub fn from_coords(ctx: &Context, coords: Vec<BigRational>) -> Result<Self, ScalarError> {
        if coords.len() != ctx.degree() {
            return Err(ScalarError::WrongDimension {
                expected: ctx.degree(),
                got: coords.len(),
            });
        }
        Ok(Scalar {
            coords,
            ctx: ctx.clone(),
        })
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(ctx: &Context, k: i64) -> Self {
        Scalar {
            coords: ctx.zeta_power(k).to_vec(),
            ctx: ctx.clone(),
        }
    }

    pub fn zeta(ctx: &Context) -> Self {
        Self::zeta_pow(ctx, 1)
    }

    pub fn omega(ctx: &Context) -> Self {
        Self::omega_pow(ctx, 1)
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(ctx: &Context, k: i64) -> Self {
        Self::zeta_pow(ctx, k * ctx.omega_exponent() as i64)
    }

    /// The imaginary unit `i = ζ^{m/4}`.
    pub fn imag_unit(ctx: &Context) -> Self {
        Self::zeta_pow(ctx, ctx.i_exponent() as i64)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the scalar lies in `ℚ`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.ctx.m, other.ctx.m,
            "scalars from different cyclotomic fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Scalar {
            coords,
            ctx: self.ctx.clone(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Scalar {
            coords,
            ctx: self.ctx.clone(),
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            coords: self.coords.iter().map(|a| -a).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        let d = self.ctx.degree();
        let mut out = vec![BigRational::zero(); d];
        for (j, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                // j + k <= 2φ(m) - 2 < m, so the table covers every index
                for (t, z) in self.ctx.zeta_powers[j + k].iter().enumerate() {
                    if !z.is_zero() {
                        out[t] += &ab * z;
                    }
                }
            }
        }
        Scalar {
            coords: out,
            ctx: self.ctx.clone(),
        }
    }

    /// `self · ζ^k`.
    pub fn mul_zeta_pow(&self, k: i64) -> Scalar {
        let d = self.ctx.degree();
        let mut out = vec![BigRational::zero(); d];
        for (j, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, z) in self.ctx.zeta_power(j as i64 + k).iter().enumerate() {
                if !z.is_zero() {
                    out[t] += a * z;
                }
            }
        }
        Scalar {
            coords: out,
            ctx: self.ctx.clone(),
        }
    }

    /// `self · ω^k`.
    pub fn mul_omega_pow(&self, k: i64) -> Scalar {
        self.mul_zeta_pow(k * self.ctx.omega_exponent() as i64)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Scalar {
        Scalar {
            coords: self.coords.iter().map(|a| a * q).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm on the
    /// coordinate polynomial and `Φ_m`.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .phi_poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s) = poly_ext_gcd(trimmed(self.coords.clone()), modulus);
        // Φ_m is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let c = g[0].recip();
        let mut coords: Vec<BigRational> = s.into_iter().map(|a| a * &c).collect();
        coords.resize(self.ctx.degree(), BigRational::zero());
        Ok(Scalar {
            coords,
            ctx: self.ctx.clone(),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    /// `self^k`; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Scalar::one(&self.ctx);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Scalar {
        let d = self.ctx.degree();
        let mut out = vec![BigRational::zero(); d];
        for (j, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, z) in self.ctx.zeta_power(-(j as i64)).iter().enumerate() {
                if !z.is_zero() {
                    out[t] += a * z;
                }
            }
        }
        Scalar {
            coords: out,
            ctx: self.ctx.clone(),
        }
    }

    /// Whether `a · ā = 1`, i.e. `|a| = 1`.
    pub fn is_norm_one(&self) -> bool {
        self.mul(&self.conjugate()).is_one()
    }

    /// The exponent `k` in `[0, m)` with `self = ζ^k`, if there is one.
    pub fn root_of_unity_exponent(&self) -> Option<usize> {
        (0..self.ctx.m).find(|&k| self.ctx.zeta_powers[k] == self.coords)
    }

    /// Image of `self` in a context whose conductor is a multiple of the
    /// current one, using `ζ_m = ζ_M^{M/m}`.
    pub fn embed(&self, target: &Context) -> Result<Scalar, ScalarError> {
        if !target.m.is_multiple_of(self.ctx.m) {
            return Err(ScalarError::IncompatibleEmbedding {
                from: self.ctx.m,
                to: target.m,
            });
        }
        let step = (target.m / self.ctx.m) as i64;
        let mut out = Scalar::zero(target);
        for (j, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, z) in target.zeta_power(j as i64 * step).iter().enumerate() {
                if !z.is_zero() {
                    out.coords[t] += a * z;
                }
            }
        }
        Ok(out)
    }

    /// Rational matrix (row-major, `φ × φ`) of multiplication by `self` on
    /// power-basis coordinates.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let d = self.ctx.degree();
        let mut rows = vec![vec![BigRational::zero(); d]; d];
        for k in 0..d {
            let col = self.mul_zeta_pow(k as i64);
            for (t, c) in col.coords.into_iter().enumerate() {
                rows[t][k] = c;
            }
        }
        rows
    }
}

/// Rational matrix (row-major, `φ × φ`) of complex conjugation on
/// power-basis coordinates.
pub fn conjugation_matrix(ctx: &Context) -> Vec<Vec<BigRational>> {
    let d = ctx.degree();
    let mut rows = vec![vec![BigRational::zero(); d]; d];
    for k in 0..d {
        for (t, c) in ctx.zeta_power(-(k as i64)).iter().enumerate() {
            rows[t][k] = c.clone();
        }
    }
    rows
}

/// A square root of a root of unity `a = ζ^k`. When `k` is odd the root
/// lives in the field of conductor `2m`, whose context is returned
/// alongside; otherwise the original context is returned.
pub fn sqrt_of_root_of_unity(a: &Scalar) -> Result<(Scalar, Context), ScalarError> {
    let k = a.root_of_unity_exponent().ok_or(ScalarError::NotRootOfUnity)?;
    let ctx = a.context();
    if k % 2 == 0 {
        Ok((Scalar::zeta_pow(ctx, (k / 2) as i64), ctx.clone()))
    } else {
        let ext = make_context(ctx.n(), Some(2 * ctx.m()))?;
        Ok((Scalar::zeta_pow(&ext, k as i64), ext))
    }
}

fn trimmed(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    // a - q * b
    let len = a.len().max(q.len() + b.len() - 1);
    let mut out = vec![BigRational::zero(); len];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trimmed(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![BigRational::zero()], trimmed(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    (trimmed(quot), trimmed(rem))
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)` and `g = gcd(a, b)`.
fn poly_ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Canonical text form of a rational: `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::InvalidRational(text.to_string());
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() || q.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Power-basis text `(a0 + a1*z + a2*z^2 …)`, or a bare rational when the
/// scalar is rational. The output parses back to the same scalar.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return f.write_str(&format_rational(q));
        }
        let mut out = String::from("(");
        let mut first = true;
        for (k, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let negative = a.is_negative();
            let abs = a.abs();
            if first {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&abs), var));
            }
        }
        out.push(')');
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [m={}]", self.ctx.m)
    }
}
