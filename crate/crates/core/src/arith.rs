//! Exact scalars: rationals, Gaussian rationals and certified rational
//! enclosures of π, arctan, sin and cos.
//!
//! Nothing in here touches floating point. Every enclosure is a closed
//! rational interval whose endpoints are produced from truncated series with
//! an explicit remainder bound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Greatest common divisor of two positive rationals: the largest rational
/// `g` such that both `a/g` and `b/g` are integers.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rational::new(num, a.denom() * b.denom())
}

/// Smallest rational that is an integer multiple of both `a` and `b`.
pub fn rational_lcm(a: &Rational, b: &Rational) -> Rational {
    let num = (a.numer() * b.denom()).lcm(&(b.numer() * a.denom()));
    Rational::new(num, a.denom() * b.denom())
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Round down to a multiple of `2^-bits`.
pub fn floor_dyadic(q: &Rational, bits: u32) -> Rational {
    let scaled = q * Rational::from_integer(pow2(bits));
    Rational::new(scaled.floor().to_integer(), pow2(bits))
}

pub fn ceil_dyadic(q: &Rational, bits: u32) -> Rational {
    let scaled = q * Rational::from_integer(pow2(bits));
    Rational::new(scaled.ceil().to_integer(), pow2(bits))
}

/// Coefficient field shared by the polynomial engine: ℚ and ℚ(i).
///
/// The by-reference arithmetic lives here (rather than behind `std::ops`
/// bounds on `&Self`) so generic code does not have to repeat higher-ranked
/// where-clauses.
pub trait Field:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Zero + One + Send + Sync + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Panics on a zero divisor; callers check first.
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_rational(r: Rational) -> Self;

    /// A faster route to the monic univariate gcd, when the field has one.
    fn fast_gcd(
        _a: &crate::poly::UPoly<Self>,
        _b: &crate::poly::UPoly<Self>,
    ) -> Option<crate::poly::UPoly<Self>> {
        None
    }

    /// A faster route to the resultant of two univariate polynomials of
    /// positive degree, when the field has one.
    fn fast_resultant(
        _a: &crate::poly::UPoly<Self>,
        _b: &crate::poly::UPoly<Self>,
    ) -> Option<Self> {
        None
    }

    /// A faster route to the resultant in `v` of two polynomials whose only
    /// other variable is `u`.
    fn fast_bivariate_resultant(
        _f: &crate::poly::Poly<Self>,
        _g: &crate::poly::Poly<Self>,
        _v: usize,
        _u: usize,
    ) -> Option<crate::poly::Poly<Self>> {
        None
    }

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Field for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn fast_gcd(
        a: &crate::poly::UPoly<Self>,
        b: &crate::poly::UPoly<Self>,
    ) -> Option<crate::poly::UPoly<Self>> {
        // Small inputs are quicker by plain Euclid.
        let big = a.degree().unwrap_or(0).min(b.degree().unwrap_or(0)) >= 12;
        big.then(|| crate::poly::modular_gcd(a, b))
    }
    fn fast_resultant(a: &crate::poly::UPoly<Self>, b: &crate::poly::UPoly<Self>) -> Option<Self> {
        let big = a.degree().unwrap_or(0) + b.degree().unwrap_or(0) >= 12;
        big.then(|| crate::poly::modular_resultant(a, b))
    }
    fn fast_bivariate_resultant(
        f: &crate::poly::Poly<Self>,
        g: &crate::poly::Poly<Self>,
        v: usize,
        u: usize,
    ) -> Option<crate::poly::Poly<Self>> {
        Some(crate::poly::modular_bivariate_resultant(f, g, v, u))
    }
}

/// An element `re + im·I` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`, always rational.
    pub fn abs2(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.div_ref(rhs))
    }

    pub fn is_unit_modulus(&self) -> bool {
        self.abs2().is_one()
    }

    /// `Some(k)` when `self = I^k`.
    pub fn quarter_turns(&self) -> Option<u32> {
        let one = Rational::one();
        match (&self.re, &self.im) {
            (r, i) if r == &one && i.is_zero() => Some(0),
            (r, i) if r.is_zero() && i == &one => Some(1),
            (r, i) if r == &-one.clone() && i.is_zero() => Some(2),
            (r, i) if r.is_zero() && i == &-one.clone() => Some(3),
            _ => None,
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        if rhs.im.is_zero() {
            return GaussianRational {
                re: &self.re / &rhs.re,
                im: &self.im / &rhs.re,
            };
        }
        let d = rhs.abs2();
        let n = self * &rhs.conj();
        GaussianRational {
            re: n.re / &d,
            im: n.im / d,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl Field for GaussianRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn from_rational(r: Rational) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &Rational| -> fmt::Result {
            if im.is_one() {
                write!(f, "I")
            } else if *im == -Rational::one() {
                write!(f, "-I")
            } else {
                write!(f, "{im}*I")
            }
        };
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return imag(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        if self.im.is_positive() {
            write!(f, "+")?;
        }
        imag(f, &self.im)
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval [{lo}, {hi}] has lo > hi"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(q: Rational) -> Self {
        Self {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn scale(&self, k: &Rational) -> RationalInterval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &RationalInterval) -> RationalInterval {
        Self {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn mul(&self, other: &RationalInterval) -> RationalInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().cloned().unwrap_or_default();
        let hi = cands.iter().max().cloned().unwrap_or_default();
        Self { lo, hi }
    }

    /// Sign of every point of the interval, if it is the same for all.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Bracket `arctan(1/n)` for an integer `n ≥ 2` using the alternating
/// Maclaurin series; the pair of consecutive partial sums straddles the
/// limit because the terms decrease monotonically.
fn atan_inv_enclosure(n: u64, bits: u32) -> RationalInterval {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let target = Rational::new(BigInt::one(), pow2(bits));
    let mut power = n.clone(); // n^(2k+1)
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        let prev = sum.clone();
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if k > 0 && term <= target {
            let (lo, hi) = if prev < sum { (prev, sum) } else { (sum, prev) };
            return RationalInterval { lo, hi };
        }
        power *= &n2;
        k += 1;
    }
}

/// Rational enclosure of π of width at most `2^-bits`.
///
/// Uses Machin's formula `π = 16·arctan(1/5) − 4·arctan(1/239)`, then rounds
/// the endpoints outward to dyadic rationals so the result stays compact.
pub fn pi_enclosure(bits: u32) -> RationalInterval {
    let bits = bits.max(1);
    let inner = bits + 6;
    let a = atan_inv_enclosure(5, inner).scale(&int(16));
    let b = atan_inv_enclosure(239, inner).scale(&int(4));
    let raw = a.sub(&b);
    let round = bits + 3;
    RationalInterval {
        lo: floor_dyadic(&raw.lo, round),
        hi: ceil_dyadic(&raw.hi, round),
    }
}

/// Certified enclosure of `arctan(t)` of width at most about `2^-bits`.
pub fn atan_enclosure(t: &Rational, bits: u32) -> RationalInterval {
    if t.is_negative() {
        let e = atan_enclosure(&-t, bits);
        return RationalInterval {
            lo: -e.hi,
            hi: -e.lo,
        };
    }
    if t.is_zero() {
        return RationalInterval::point(Rational::zero());
    }
    if *t > Rational::one() {
        // arctan t = π/2 − arctan(1/t)
        let pi_half = pi_enclosure(bits + 2).scale(&rat(1, 2));
        return pi_half.sub(&atan_enclosure(&t.recip(), bits + 1));
    }
    if *t > rat(1, 2) {
        // arctan t = π/4 − arctan((1−t)/(1+t)), argument ≤ 1/3
        let pi_quarter = pi_enclosure(bits + 3).scale(&rat(1, 4));
        let u = (Rational::one() - t) / (Rational::one() + t);
        return pi_quarter.sub(&atan_enclosure(&u, bits + 1));
    }
    // 0 < t ≤ 1/2: alternating series with decreasing terms.
    let target = Rational::new(BigInt::one(), pow2(bits + 1));
    let t2 = t * t;
    let mut power = t.clone();
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        let term = &power / int(2 * k as i64 + 1);
        let prev = sum.clone();
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if k > 0 && term <= target {
            let (lo, hi) = if prev < sum { (prev, sum) } else { (sum, prev) };
            let round = bits + 2;
            return RationalInterval {
                lo: floor_dyadic(&lo, round),
                hi: ceil_dyadic(&hi, round),
            };
        }
        power *= &t2;
        k += 1;
    }
}

/// Certified enclosures of `(sin x, cos x)` from Taylor polynomials with the
/// Lagrange remainder `|x|^(N+1)/(N+1)!`. Intended for moderate `|x|`.
pub fn sin_cos_enclosure(x: &Rational, bits: u32) -> (RationalInterval, RationalInterval) {
    let target = Rational::new(BigInt::one(), pow2(bits + 1));
    let ax = x.abs();
    let mut sin = Rational::zero();
    let mut cos = Rational::zero();
    let mut term = Rational::one(); // x^n / n!
    let mut n: u64 = 0;
    loop {
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        term = term * x / int(n as i64 + 1);
        n += 1;
        // term is now x^n/n!, which bounds the remainder of the partial sums.
        let rem = term.abs();
        if n as i64 > ax.ceil().to_integer().to_i64().unwrap_or(i64::MAX) && rem <= target {
            let round = bits + 2;
            let widen = |c: &Rational| RationalInterval {
                lo: floor_dyadic(&(c - &rem), round),
                hi: ceil_dyadic(&(c + &rem), round),
            };
            return (widen(&sin), widen(&cos));
        }
    }
}

/// Enclosure of `tan z` for `cos z > 0`, from [`sin_cos_enclosure`].
pub fn tan_enclosure(z: &Rational, bits: u32) -> Result<RationalInterval> {
    let (s, c) = sin_cos_enclosure(z, bits);
    if !c.lo.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "cos({z}) is not certified positive"
        )));
    }
    let inv = RationalInterval {
        lo: c.hi.recip(),
        hi: c.lo.recip(),
    };
    Ok(s.mul(&inv))
}

/// `floor(t / (π/2))` for rational `t ≥ 0`, refined until the enclosure of
/// the quotient decides the floor.
pub fn floor_over_half_pi(t: &Rational) -> BigInt {
    if !t.is_positive() {
        return if t.is_zero() {
            BigInt::zero()
        } else {
            -floor_over_half_pi(&-t) - BigInt::one()
        };
    }
    let mut bits = 32;
    loop {
        let pi = pi_enclosure(bits);
        let lo = (t * int(2)) / pi.hi();
        let hi = (t * int(2)) / pi.lo();
        let (a, b) = (lo.floor().to_integer(), hi.floor().to_integer());
        if a == b {
            return a;
        }
        bits *= 2;
    }
}
