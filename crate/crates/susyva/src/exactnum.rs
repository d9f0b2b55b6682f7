//! Exact Gaussian-rational scalars and the super-polynomial ring in `(λ, χ)`.
//!
//! `χ` is odd and commutes with `λ`. Its square is a multiple of `λ` fixed by
//! [`CHI_SQUARED`]; every product can also be taken with an explicit sign through
//! [`LambdaPoly::mul_with`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Sign `s` in `χ² = s·λ`.
pub const CHI_SQUARED: i8 = -1;

/// Build an exact rational `p/q`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// An exact complex number `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar { re: rat(p, q), im: BigRational::zero() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { re: r, im: BigRational::zero() }
    }

    pub fn from_ratio64(r: num_rational::Ratio<i64>) -> Self {
        Self::ratio(*r.numer(), *r.denom())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(-1)^e`.
    pub fn sign(e: u32) -> Self {
        if e % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts the canonical forms `p/q` and `p/q+r/s*i` (also `-` before the imaginary part).
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix("*i") {
            let cut = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(k, _)| k)
                .last()
                .ok_or_else(|| Error::Parse(format!("invalid scalar `{s}`")))?;
            let re = parse_rational(&body[..cut])?;
            let im = parse_rational(&body[cut..].trim_start_matches('+'))?;
            Ok(Scalar { re, im })
        } else {
            Ok(Scalar::from_rational(parse_rational(s)?))
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(re, im)`; only used to make collections deterministic.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

/// The four field operations, tagged for command-line style dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, Error> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// `λ^j χ^J` with `J ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaMonomial {
    pub j: u32,
    pub chi: u8,
}

impl LambdaMonomial {
    pub const ONE: LambdaMonomial = LambdaMonomial { j: 0, chi: 0 };
    pub const CHI: LambdaMonomial = LambdaMonomial { j: 0, chi: 1 };
    pub const LAMBDA: LambdaMonomial = LambdaMonomial { j: 1, chi: 0 };

    pub fn new(j: u32, chi: u8) -> Self {
        assert!(chi < 2, "χ power must be 0 or 1");
        LambdaMonomial { j, chi }
    }
}

impl fmt::Display for LambdaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda^{} chi^{}", self.j, self.chi)
    }
}

/// A polynomial in `λ` and the odd variable `χ`, with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    terms: BTreeMap<LambdaMonomial, Scalar>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(LambdaMonomial::ONE, c)
    }

    pub fn lambda() -> Self {
        Self::monomial(LambdaMonomial::LAMBDA, Scalar::one())
    }

    pub fn chi() -> Self {
        Self::monomial(LambdaMonomial::CHI, Scalar::one())
    }

    pub fn monomial(m: LambdaMonomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: LambdaMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: LambdaMonomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LambdaMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Product with `χ² = chi_sq·λ`.
    pub fn mul_with(&self, other: &LambdaPoly, chi_sq: i8) -> LambdaPoly {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut c = ca * cb;
                let (j, chi) = if a.chi + b.chi == 2 {
                    if chi_sq < 0 {
                        c = -c;
                    }
                    (a.j + b.j + 1, 0)
                } else {
                    (a.j + b.j, a.chi + b.chi)
                };
                out.add_term(LambdaMonomial { j, chi }, c);
            }
        }
        out
    }
}

pub fn lambda_mul(a: &LambdaPoly, b: &LambdaPoly) -> LambdaPoly {
    a.mul_with(b, CHI_SQUARED)
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, o: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, o: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, o: &LambdaPoly) -> LambdaPoly {
        lambda_mul(self, o)
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if m.j > 0 {
                write!(f, "*lambda^{}", m.j)?;
            }
            if m.chi == 1 {
                f.write_str("*chi")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Binomial coefficient `C(n, k)` for any integer `n` and `k ≥ 0`.
pub fn binom(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k as i64 {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
