use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::trig;
use crate::arith::{rational_gcd, Rational};
use crate::error::{Error, Result};
use crate::poly::{QPoly, XSC};

/// Key of one term `x^p · sin^q(freq·x) · cos^r(freq·x)`. Terms without a
/// trigonometric factor always carry `freq = 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TermKey {
    pub freq: Rational,
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl TermKey {
    pub fn new(freq: Rational, p: u32, q: u32, r: u32) -> Self {
        let freq = if q == 0 && r == 0 {
            Rational::one()
        } else {
            freq
        };
        Self { freq, p, q, r }
    }

    pub fn is_polynomial(&self) -> bool {
        self.q == 0 && self.r == 0
    }
}

/// A mixed trigonometric-polynomial `Σ a·x^p·sin^q(ωx)·cos^r(ωx)` with
/// rational coefficients and positive rational frequencies.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MtpExpr {
    terms: BTreeMap<TermKey, Rational>,
}

impl MtpExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, TermKey::new(Rational::one(), 0, 0, 0))
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), TermKey::new(Rational::one(), 1, 0, 0))
    }

    pub fn sin(freq: Rational) -> Result<Self> {
        check_freq(&freq)?;
        Ok(Self::term(Rational::one(), TermKey::new(freq, 0, 1, 0)))
    }

    pub fn cos(freq: Rational) -> Result<Self> {
        check_freq(&freq)?;
        Ok(Self::term(Rational::one(), TermKey::new(freq, 0, 0, 1)))
    }

    pub fn term(coeff: Rational, key: TermKey) -> Self {
        let mut e = Self::zero();
        e.add_term(key, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (TermKey, Rational)>) -> Self {
        let mut e = Self::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn add_term(&mut self, key: TermKey, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = TermKey::new(key.freq, key.p, key.q, key.r);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &TermKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_trig(&self) -> bool {
        self.terms.keys().any(|k| !k.is_polynomial())
    }

    /// Distinct frequencies of the trigonometric terms.
    pub fn frequencies(&self) -> BTreeSet<Rational> {
        self.terms
            .keys()
            .filter(|k| !k.is_polynomial())
            .map(|k| k.freq.clone())
            .collect()
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.p).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(key, c)| (key.clone(), c * k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out = out.add(&mul_terms(k1, k2).scale(&(c1 * c2)));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `e(k·x)` for `k > 0`.
    pub fn rescale(&self, k: &Rational) -> Self {
        assert!(k.is_positive(), "rescale factor must be positive");
        Self::from_terms(self.terms.iter().map(|(key, c)| {
            let coeff = c * pow_rational(k, key.p);
            (TermKey::new(&key.freq * k, key.p, key.q, key.r), coeff)
        }))
    }

    /// Expand as a polynomial in `(x, sin(base·x), cos(base·x))`; every
    /// frequency must be an integer multiple of `base`.
    pub fn expand_at(&self, base: &Rational) -> Result<QPoly> {
        let mut out = QPoly::zero(XSC);
        for (key, c) in &self.terms {
            let mult = if key.is_polynomial() {
                Rational::one()
            } else {
                &key.freq / base
            };
            if !mult.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "frequency {} is not a multiple of {}",
                    key.freq, base
                )));
            }
            let n: u32 = mult.to_integer().try_into().map_err(|_| {
                Error::InvalidArgument(format!("frequency multiple {mult} is too large"))
            })?;
            let (sn, cn) = trig::multiple_angle(n);
            let mut t = QPoly::monomial(XSC, vec![key.p, 0, 0], c.clone());
            t = &(&t * &sn.pow(key.q)) * &cn.pow(key.r);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Inverse of [`expand_at`]: read `f(x, s, c)` back with
    /// `s = sin(base·x)`, `c = cos(base·x)`.
    pub fn from_trivariate(f: &QPoly, base: &Rational) -> Self {
        Self::from_terms(
            f.terms()
                .map(|(e, c)| (TermKey::new(base.clone(), e[0], e[1], e[2]), c.clone())),
        )
    }
}

fn check_freq(freq: &Rational) -> Result<()> {
    if !freq.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "frequency {freq} must be positive"
        )));
    }
    Ok(())
}

pub(crate) fn pow_rational(k: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= k;
    }
    acc
}

fn mul_terms(a: &TermKey, b: &TermKey) -> MtpExpr {
    if a.is_polynomial() || b.is_polynomial() || a.freq == b.freq {
        let freq = if a.is_polynomial() {
            b.freq.clone()
        } else {
            a.freq.clone()
        };
        return MtpExpr::term(
            Rational::one(),
            TermKey::new(freq, a.p + b.p, a.q + b.q, a.r + b.r),
        );
    }
    let base = rational_gcd(&a.freq, &b.freq);
    let ea = MtpExpr::term(Rational::one(), a.clone())
        .expand_at(&base)
        .expect("multiple of gcd");
    let eb = MtpExpr::term(Rational::one(), b.clone())
        .expand_at(&base)
        .expect("multiple of gcd");
    MtpExpr::from_trivariate(&(&ea * &eb), &base)
}

fn fmt_freq_arg(freq: &Rational) -> String {
    if freq.is_one() {
        "x".to_string()
    } else {
        format!("{freq}*x")
    }
}

impl MtpExpr {
    /// Terms in display order: trigonometric terms by decreasing frequency,
    /// cosines before sines, then polynomial terms by decreasing degree.
    fn display_order(&self) -> Vec<(&TermKey, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            a.is_polynomial()
                .cmp(&b.is_polynomial())
                .then_with(|| b.freq.cmp(&a.freq))
                .then_with(|| b.r.cmp(&a.r))
                .then_with(|| b.q.cmp(&a.q))
                .then_with(|| b.p.cmp(&a.p))
        });
        v
    }
}

impl fmt::Display for MtpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (key, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            match key.p {
                0 => {}
                1 => parts.push("x".to_string()),
                p => parts.push(format!("x^{p}")),
            }
            let arg = fmt_freq_arg(&key.freq);
            match key.q {
                0 => {}
                1 => parts.push(format!("sin({arg})")),
                q => parts.push(format!("sin({arg})^{q}")),
            }
            match key.r {
                0 => {}
                1 => parts.push(format!("cos({arg})")),
                r => parts.push(format!("cos({arg})^{r}")),
            }
            if parts.is_empty() {
                parts.push("1".to_string());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MtpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MtpExpr({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn like_terms_merge_and_cancel() {
        let s = MtpExpr::sin(int(1)).unwrap();
        let e = s.add(&s).sub(&s.scale(&int(2)));
        assert!(e.is_zero());
        assert_eq!(MtpExpr::x().scale(&int(0)), MtpExpr::zero());
    }

    #[test]
    fn product_across_frequencies() {
        // sin(x)·sin(2x) = 2 sin²(x) cos(x)
        let e = MtpExpr::sin(int(1))
            .unwrap()
            .mul(&MtpExpr::sin(int(2)).unwrap());
        assert_eq!(e, MtpExpr::term(int(2), TermKey::new(int(1), 0, 2, 1)));
        // cos(x/2)·cos(3x/2) expands on base frequency 1/2.
        let e = MtpExpr::cos(rat(1, 2))
            .unwrap()
            .mul(&MtpExpr::cos(rat(3, 2)).unwrap());
        assert_eq!(
            e.frequencies().into_iter().collect::<Vec<_>>(),
            vec![rat(1, 2)]
        );
    }

    #[test]
    fn rendering() {
        let e = MtpExpr::cos(int(2))
            .unwrap()
            .sub(&MtpExpr::sin(int(1)).unwrap().scale(&int(2)))
            .sub(&MtpExpr::constant(int(3)));
        assert_eq!(e.to_string(), "cos(2*x) - 2*sin(x) - 3");
        let h = MtpExpr::cos(rat(1, 2))
            .unwrap()
            .sub(&MtpExpr::sin(rat(1, 2)).unwrap());
        assert_eq!(h.to_string(), "cos(1/2*x) - sin(1/2*x)");
        assert_eq!(MtpExpr::zero().to_string(), "0");
        let g = MtpExpr::x()
            .pow(2)
            .mul(&MtpExpr::sin(int(3)).unwrap().pow(2))
            .scale(&rat(-2, 3));
        assert_eq!(g.to_string(), "-2/3*x^2*sin(3*x)^2");
    }

    #[test]
    fn rescale_substitutes_argument() {
        // e(x) = x·cos(x) at 2x gives 2x·cos(2x)
        let e = MtpExpr::x().mul(&MtpExpr::cos(int(1)).unwrap());
        let r = e.rescale(&int(2));
        assert_eq!(r, MtpExpr::term(int(2), TermKey::new(int(2), 1, 0, 1)));
    }
}
