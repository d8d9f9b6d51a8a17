//! Laurent images of MTPs: `y` stands for `e^{I·x/D}` with a recorded base
//! denominator `D`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::expr::{MtpExpr, TermKey};
use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::poly::{GPoly, XY};

/// `numer(x, y) / y^shift` over ℚ(i), with `y = e^{I·x/base}`.
///
/// Canonical form: `y` does not divide `numer` (and `shift = 0` when the
/// value is zero).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    base: u32,
    numer: GPoly,
    shift: i64,
}

impl LaurentPoly {
    pub fn new(base: u32, numer: GPoly, shift: i64) -> Self {
        assert!(base > 0, "base denominator must be positive");
        assert_eq!(numer.vars(), XY, "Laurent numerators live in (x, y)");
        if numer.is_zero() {
            return Self {
                base,
                numer,
                shift: 0,
            };
        }
        let m = numer.min_degree(1);
        if m == 0 {
            return Self { base, numer, shift };
        }
        let numer = GPoly::from_terms(
            XY,
            numer
                .terms()
                .map(|(e, c)| (vec![e[0], e[1] - m], c.clone())),
        );
        Self {
            base,
            numer,
            shift: shift - m as i64,
        }
    }

    pub fn from_poly(base: u32, numer: GPoly) -> Self {
        Self::new(base, numer, 0)
    }

    pub fn zero(base: u32) -> Self {
        Self::from_poly(base, GPoly::zero(XY))
    }

    pub fn constant(base: u32, c: GaussianRational) -> Self {
        Self::from_poly(base, GPoly::constant(XY, c))
    }

    /// `c · y^k`.
    pub fn monomial(base: u32, c: GaussianRational, k: i64) -> Self {
        Self::new(base, GPoly::constant(XY, c), -k)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn numer(&self) -> &GPoly {
        &self.numer
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// `deg_y(numer) − 2·shift`: the `p` with `P = C·y^p·con(P)` when `P` is
    /// self-conjugate up to a constant.
    pub fn conjugate_degree(&self) -> i64 {
        self.numer.degree(1) as i64 - 2 * self.shift
    }

    fn check_base(&self, other: &Self) {
        assert_eq!(
            self.base, other.base,
            "Laurent polynomials with different bases"
        );
    }

    fn aligned(&self, other: &Self) -> (GPoly, GPoly, i64) {
        let s = self.shift.max(other.shift);
        let up = |p: &Self| p.numer.shift(&[0, (s - p.shift) as u32]);
        (up(self), up(other), s)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_base(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, s) = self.aligned(other);
        Self::new(self.base, &a + &b, s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            base: self.base,
            numer: -&self.numer,
            shift: self.shift,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_base(other);
        Self::new(
            self.base,
            &self.numer * &other.numer,
            self.shift + other.shift,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.base, self.numer.pow(e), self.shift * e as i64)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::new(self.base, self.numer.scale(k), self.shift)
    }

    /// Conjugate the coefficients and negate every `y` exponent.
    pub fn con(&self) -> Self {
        let d = self.numer.degree(1);
        let numer = GPoly::from_terms(
            XY,
            self.numer
                .terms()
                .map(|(e, c)| (vec![e[0], d - e[1]], c.conj())),
        );
        Self::new(self.base, numer, d as i64 - self.shift)
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.con()
    }

    /// Substitute `y^k = y'^(m·k)` and record base `m·D`; the value is
    /// unchanged.
    pub fn rebase(&self, m: u32) -> Self {
        let numer = GPoly::from_terms(
            XY,
            self.numer
                .terms()
                .map(|(e, c)| (vec![e[0], e[1] * m], c.clone())),
        );
        Self::new(self.base * m, numer, self.shift * m as i64)
    }

    /// Back-substitute `y = e^{I·x/D}`, returning the real and imaginary
    /// parts as MTPs.
    pub fn lrhom(&self) -> (MtpExpr, MtpExpr) {
        let mut re = MtpExpr::zero();
        let mut im = MtpExpr::zero();
        let d = Rational::from_integer(self.base.into());
        for (e, c) in self.numer.terms() {
            let k = e[1] as i64 - self.shift;
            let p = e[0];
            if k == 0 {
                re.add_term(TermKey::new(Rational::one(), p, 0, 0), c.re.clone());
                im.add_term(TermKey::new(Rational::one(), p, 0, 0), c.im.clone());
                continue;
            }
            // c·(cos ωx + σ·I·sin ωx) with ω = |k|/D
            let freq = Rational::from_integer(k.abs().into()) / &d;
            let sigma = if k > 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let cos = TermKey::new(freq.clone(), p, 0, 1);
            let sin = TermKey::new(freq, p, 1, 0);
            re.add_term(cos.clone(), c.re.clone());
            re.add_term(sin.clone(), -(&c.im * &sigma));
            im.add_term(cos, c.im.clone());
            im.add_term(sin, &c.re * &sigma);
        }
        (re, im)
    }
}

/// The default base `2·lcm` of the frequency denominators.
pub fn default_base(e: &MtpExpr) -> u32 {
    let l = e
        .frequencies()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, f| acc.lcm(f.denom()));
    let l: u32 = l.try_into().expect("frequency denominators fit in u32");
    2 * l
}

/// Euler substitution with the default base.
pub fn to_laurent(e: &MtpExpr) -> LaurentPoly {
    to_laurent_with_base(e, default_base(e)).expect("default base clears every frequency")
}

/// Euler substitution `sin(ωx) = (y^n − y^{−n})/(2I)`,
/// `cos(ωx) = (y^n + y^{−n})/2` with `n = ω·base`.
pub fn to_laurent_with_base(e: &MtpExpr, base: u32) -> Result<LaurentPoly> {
    let d = Rational::from_integer(base.into());
    let mut acc = LaurentPoly::zero(base);
    let half = GaussianRational::real(Rational::new(1.into(), 2.into()));
    // 1/(2I) = −I/2
    let inv_two_i = GaussianRational::new(Rational::zero(), Rational::new((-1).into(), 2.into()));
    for (key, c) in e.terms() {
        let mut term = LaurentPoly::from_poly(
            base,
            GPoly::monomial(XY, vec![key.p, 0], GaussianRational::real(c.clone())),
        );
        if !key.is_polynomial() {
            let n = &key.freq * &d;
            if !n.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "frequency {} is not a multiple of 1/{base}",
                    key.freq
                )));
            }
            let n: i64 = n.to_integer().try_into().map_err(|_| {
                Error::InvalidArgument(format!("frequency {} is too large", key.freq))
            })?;
            let yn = LaurentPoly::monomial(base, GaussianRational::one(), n);
            let yn_inv = LaurentPoly::monomial(base, GaussianRational::one(), -n);
            let sin = yn.sub(&yn_inv).scale(&inv_two_i);
            let cos = yn.add(&yn_inv).scale(&half);
            term = term.mul(&sin.pow(key.q)).mul(&cos.pow(key.r));
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "{}", self.numer),
            1 => write!(f, "({})/y", self.numer),
            s if s > 0 => write!(f, "({})/y^{s}", self.numer),
            -1 => write!(f, "({})*y", self.numer),
            s => write!(f, "({})*y^{}", self.numer, -s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::mtp::parse;

    fn g(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational::new(re, im)
    }

    fn gpoly(terms: &[(u32, u32, GaussianRational)]) -> GPoly {
        GPoly::from_terms(XY, terms.iter().map(|(a, b, c)| (vec![*a, *b], c.clone())))
    }

    #[test]
    fn mixed_term_image() {
        let e = parse("2/3*x + x*cos(x) - sin(x)").unwrap();
        let l = to_laurent_with_base(&e, 1).unwrap();
        // (1/6)(4xy + 3xy² + 3x + 3Iy² − 3I)/y
        let sixth = |re: i64, im: i64| g(rat(re, 6), rat(im, 6));
        let expected = LaurentPoly::new(
            1,
            gpoly(&[
                (1, 1, sixth(4, 0)),
                (1, 2, sixth(3, 0)),
                (1, 0, sixth(3, 0)),
                (0, 2, sixth(0, 3)),
                (0, 0, sixth(0, -3)),
            ]),
            1,
        );
        assert_eq!(l, expected);
        assert!(l.is_self_conjugate());
        assert_eq!(default_base(&e), 2);
    }

    #[test]
    fn sine_cubed_image() {
        let l = to_laurent_with_base(&parse("1 - sin(x)^3").unwrap(), 1).unwrap();
        // (y³ − (I/8)(y² − 1)³)/y³
        let y2m1 = gpoly(&[(0, 2, GaussianRational::one()), (0, 0, g(int(-1), int(0)))]);
        let numer =
            &gpoly(&[(0, 3, GaussianRational::one())]) - &y2m1.pow(3).scale(&g(int(0), rat(1, 8)));
        assert_eq!(l, LaurentPoly::new(1, numer, 3));
    }

    #[test]
    fn constants_and_monomials() {
        let five = to_laurent(&parse("5").unwrap());
        assert_eq!(five, LaurentPoly::constant(2, g(int(5), int(0))));
        assert_eq!(five.shift(), 0);
        let y = LaurentPoly::monomial(1, GaussianRational::one(), 1);
        assert_eq!(y.shift(), -1);
        assert_eq!(y.to_string(), "(1)*y");
        assert!(
            y.mul(&LaurentPoly::monomial(1, GaussianRational::one(), -1))
                == LaurentPoly::constant(1, GaussianRational::one())
        );
    }

    #[test]
    fn conjugation_examples() {
        let i = GaussianRational::i();
        // con(y − I) = 1/y + I
        let p2 = LaurentPoly::from_poly(1, gpoly(&[(0, 1, GaussianRational::one()), (0, 0, -&i)]));
        let expected = LaurentPoly::new(
            1,
            gpoly(&[(0, 0, GaussianRational::one()), (0, 1, i.clone())]),
            1,
        );
        assert_eq!(p2.con(), expected);
        // con(y⁴ + 2Iy³ − 6y² − 2Iy + 1) = 1/y⁴ − 2I/y³ − 6/y² + 2I/y + 1
        let one = GaussianRational::one();
        let two_i = g(int(0), int(2));
        let p1 = LaurentPoly::from_poly(
            1,
            gpoly(&[
                (0, 4, one.clone()),
                (0, 3, two_i.clone()),
                (0, 2, g(int(-6), int(0))),
                (0, 1, -&two_i),
                (0, 0, one.clone()),
            ]),
        );
        let expected = LaurentPoly::new(
            1,
            gpoly(&[
                (0, 0, one.clone()),
                (0, 1, -&two_i),
                (0, 2, g(int(-6), int(0))),
                (0, 3, two_i.clone()),
                (0, 4, one.clone()),
            ]),
            4,
        );
        assert_eq!(p1.con(), expected);
        assert_eq!(p1.con().con(), p1);
        // y + 1/y is self-conjugate
        let sym = LaurentPoly::new(1, gpoly(&[(0, 2, one.clone()), (0, 0, one)]), 1);
        assert!(sym.is_self_conjugate());
    }

    #[test]
    fn lrhom_examples() {
        let one = GaussianRational::one();
        let two_i = g(int(0), int(2));
        // y² + 2Iy − 6 − 2I/y + 1/y², written over y²
        let p = LaurentPoly::new(
            1,
            gpoly(&[
                (0, 4, one.clone()),
                (0, 3, two_i.clone()),
                (0, 2, g(int(-6), int(0))),
                (0, 1, -&two_i),
                (0, 0, one.clone()),
            ]),
            2,
        );
        let (re, im) = p.lrhom();
        assert_eq!(re, parse("2*cos(2*x) - 4*sin(x) - 6").unwrap());
        assert!(im.is_zero());
        let (re, im) = LaurentPoly::constant(3, one).lrhom();
        assert_eq!((re, im), (MtpExpr::constant(int(1)), MtpExpr::zero()));
    }

    #[test]
    fn lrhom_inverts_euler() {
        for text in [
            "2/3*x + x*cos(x) - sin(x)",
            "1 - sin(x)^3",
            "x^2*cos(1/2*x)*sin(3*x) - 7",
        ] {
            let e = parse(text).unwrap();
            let (re, im) = to_laurent(&e).lrhom();
            assert!(im.is_zero(), "{text}");
            // Both sides are polynomials in sin/cos of a common base frequency.
            let base = Rational::new(1.into(), default_base(&e).into());
            let lhs = crate::mtp::trig::reduce(&e.expand_at(&base).unwrap());
            let rhs = crate::mtp::trig::reduce(&re.expand_at(&base).unwrap());
            assert_eq!(lhs, rhs, "{text}");
        }
    }

    #[test]
    fn rebase_keeps_value() {
        let e = parse("sin(x) + x*cos(2*x)").unwrap();
        let l = to_laurent_with_base(&e, 1).unwrap();
        assert_eq!(l.rebase(2), to_laurent_with_base(&e, 2).unwrap());
        assert!(to_laurent_with_base(&parse("sin(1/3*x)").unwrap(), 2).is_err());
    }
}
