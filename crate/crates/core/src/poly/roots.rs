//! Real-root counting and isolation by bisection. Low degrees count roots
//! with Sturm sequences, high degrees with Descartes' rule of signs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::primitive_integer;
use super::UPoly;
use crate::arith::{Rational, RationalInterval};
use crate::error::{Error, Result};

/// Isolating intervals in ascending order. Each is either a single exact
/// rational root `[a, a]` or an interval `[a, b]` whose endpoints are not
/// roots and whose interior holds exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIsolation {
    pub intervals: Vec<RationalInterval>,
    pub width: Rational,
}

impl RootIsolation {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

struct Sturm {
    seq: Vec<UPoly<Rational>>,
}

impl Sturm {
    /// `f` must be square-free and of positive degree.
    fn new(f: &UPoly<Rational>) -> Self {
        let mut seq = vec![f.clone(), f.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        Self { seq }
    }

    fn variations(&self, signs: impl Iterator<Item = Ordering>) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn at(&self, x: &Rational) -> usize {
        self.variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn at_infinity(&self, positive: bool) -> usize {
        self.variations(self.seq.iter().map(|p| p.sign_at_infinity(positive)))
    }

    fn count(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        let a = lo.map_or_else(|| self.at_infinity(false), |x| self.at(x));
        let b = hi.map_or_else(|| self.at_infinity(true), |x| self.at(x));
        a.saturating_sub(b)
    }
}

/// Above this degree the Sturm chain costs more than repeated Descartes
/// tests.
const STURM_MAX_DEGREE: usize = 16;

/// Which root counter drives the bisection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMethod {
    Sturm,
    Descartes,
    /// Sturm up to degree 16, Descartes above.
    Auto,
}

/// Integer polynomial whose roots in `(0, 1)` are the roots of `g` in
/// `(a, b)` under `x ↦ a + (b − a)x`.
fn to_unit(ints: &[BigInt], a: &Rational, b: &Rational) -> Vec<BigInt> {
    let n = ints.len() - 1;
    let den = a.denom().lcm(b.denom());
    let c = a.numer() * (&den / a.denom());
    let d = b.numer() * (&den / b.denom());
    // D^n g(y / D), then y = c + (d - c) x.
    let mut q: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut pw = BigInt::one();
    for i in (0..=n).rev() {
        q.push(&ints[i] * &pw);
        pw *= &den;
    }
    q.reverse();
    taylor_shift(&mut q, &c);
    let w = &d - &c;
    let mut pw = BigInt::one();
    for coeff in q.iter_mut() {
        *coeff *= &pw;
        pw *= &w;
    }
    q
}

/// Sign variations of `(1 + x)^n p(1 / (1 + x))`: an upper bound on the
/// roots of `p` in `(0, 1)`, exact when 0 or 1.
fn unit_variations(p: &[BigInt]) -> usize {
    let mut q: Vec<BigInt> = p.iter().rev().cloned().collect();
    taylor_shift(&mut q, &BigInt::one());
    let mut count = 0;
    let mut last = Ordering::Equal;
    for coeff in &q {
        let s = coeff.sign().cmp(&num_bigint::Sign::NoSign);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// `2^n p(x / 2)` and `2^n p((x + 1) / 2)`, the halves of `(0, 1)`.
fn split_unit(p: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let n = p.len() - 1;
    let mut left: Vec<BigInt> = p.iter().enumerate().map(|(i, c)| c << (n - i)).collect();
    // Strip a common power of two to keep the coefficients short.
    let tz = left
        .iter()
        .filter_map(|c| c.trailing_zeros())
        .min()
        .unwrap_or(0);
    if tz > 0 {
        for c in left.iter_mut() {
            *c >>= tz;
        }
    }
    let mut right = left.clone();
    taylor_shift(&mut right, &BigInt::one());
    (left, right)
}

/// In place `p(x) -> p(x + c)`.
fn taylor_shift(p: &mut [BigInt], c: &BigInt) {
    let n = p.len();
    if c.is_zero() {
        return;
    }
    let unit = c.is_one();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = if unit {
                p[j + 1].clone()
            } else {
                c * &p[j + 1]
            };
            p[j] += t;
        }
    }
}

/// Smallest power of two above the Cauchy bound.
fn power_of_two_above(x: &Rational) -> Rational {
    let mut b = Rational::one();
    while &b <= x {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

/// A power of two strictly above the modulus of every root, from
/// Fujiwara's bound; far tighter than Cauchy's when coefficients vary
/// wildly in size.
fn fujiwara_power_of_two(ints: &[BigInt]) -> Rational {
    let n = ints.len() - 1;
    let lead = ints[n].bits() as i64;
    let mut k = 0i64;
    for i in 1..=n {
        let c = &ints[n - i];
        if c.is_zero() {
            continue;
        }
        // |c / lead| < 2^e, halved for the constant term.
        let e = c.bits() as i64 - lead + 1 - i64::from(i == n);
        k = k.max((e + i as i64 - 1).div_euclid(i as i64));
    }
    Rational::from_integer(BigInt::one() << (k + 2) as usize)
}

/// Number of distinct real roots of `f` in the open interval `(lo, hi)`;
/// `None` stands for −∞ / +∞.
pub fn count_real_roots(
    f: &UPoly<Rational>,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let (Some(a), Some(b)) = (lo, hi) {
        if a >= b {
            return Ok(0);
        }
    }
    let mut g = f.squarefree_part();
    for e in [lo, hi].into_iter().flatten() {
        if g.degree().unwrap_or(0) > 0 && g.eval(e).is_zero() {
            g = g.divrem(&UPoly::linear_root(e.clone())).0;
        }
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    if g.degree().unwrap_or(0) <= STURM_MAX_DEGREE {
        return Ok(Sturm::new(&g).count(lo, hi));
    }
    let ints = primitive_integer(&g);
    let b = fujiwara_power_of_two(&ints);
    let (a, b) = (lo.cloned().unwrap_or(-b.clone()), hi.cloned().unwrap_or(b));
    let mut out = Vec::new();
    let unit = to_unit(&ints, &a, &b);
    let mut ctx = Isolator {
        g: &g,
        sturm: None,
        width: None,
        out: &mut out,
    };
    ctx.run(a, b, Some(unit));
    Ok(out.len())
}

/// Isolate all real roots of `f`, refining non-degenerate intervals to
/// width at most `width`.
pub fn isolate_real_roots(f: &UPoly<Rational>, width: &Rational) -> Result<RootIsolation> {
    isolate_real_roots_by(f, width, RootMethod::Auto)
}

/// [`isolate_real_roots`] with an explicit choice of root counter. Both
/// counters bisect dyadic grids, so Descartes intervals nest inside the
/// Sturm ones.
pub fn isolate_real_roots_by(
    f: &UPoly<Rational>,
    width: &Rational,
    method: RootMethod,
) -> Result<RootIsolation> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "isolation width {width} must be positive"
        )));
    }
    let g = f.squarefree_part();
    let mut intervals = Vec::new();
    let deg = g.degree().unwrap_or(0);
    let sturm = match method {
        RootMethod::Sturm => true,
        RootMethod::Descartes => false,
        RootMethod::Auto => deg <= STURM_MAX_DEGREE,
    };
    if deg > 0 && sturm {
        let chain = Sturm::new(&g);
        let b = power_of_two_above(&g.cauchy_bound());
        let mut ctx = Isolator {
            g: &g,
            sturm: Some(&chain),
            width: Some(width),
            out: &mut intervals,
        };
        ctx.run(-b.clone(), b, None);
    } else if deg > 0 {
        let ints = primitive_integer(&g);
        let b = fujiwara_power_of_two(&ints).min(power_of_two_above(&g.cauchy_bound()));
        let unit = to_unit(&ints, &-b.clone(), &b);
        let mut ctx = Isolator {
            g: &g,
            sturm: None,
            width: Some(width),
            out: &mut intervals,
        };
        ctx.run(-b.clone(), b, Some(unit));
    }
    Ok(RootIsolation {
        intervals,
        width: width.clone(),
    })
}

struct Isolator<'a> {
    g: &'a UPoly<Rational>,
    /// Without a Sturm chain, roots are counted by Descartes' rule on the
    /// interval's unit-interval image.
    sturm: Option<&'a Sturm>,
    /// `None` only counts: isolating intervals are not refined.
    width: Option<&'a Rational>,
    out: &'a mut Vec<RationalInterval>,
}

impl Isolator<'_> {
    fn run(&mut self, a: Rational, b: Rational, unit: Option<Vec<BigInt>>) {
        // An exact root at b is reported separately by the caller.
        let n = match (self.sturm, &unit) {
            (Some(s), _) => s.count(Some(&a), Some(&b)) - usize::from(self.g.eval(&b).is_zero()),
            (None, Some(p)) => unit_variations(p),
            (None, None) => unreachable!("a counter is always present"),
        };
        if n == 0 {
            return;
        }
        if n == 1 {
            match self.width {
                Some(_) => self.refine(a, b),
                None => self.out.push(RationalInterval::new(a, b).expect("a < b")),
            }
            return;
        }
        let m = (&a + &b) / Rational::from_integer(BigInt::from(2));
        let (left, right) = match unit {
            Some(p) => {
                let (l, r) = split_unit(&p);
                (Some(l), Some(r))
            }
            None => (None, None),
        };
        self.run(a, m.clone(), left);
        if self.g.eval(&m).is_zero() {
            self.out.push(RationalInterval::point(m.clone()));
        }
        self.run(m, b, right);
    }

    /// `(a, b)` holds exactly one root. Bisection continues past the
    /// requested width until neither endpoint is itself a root.
    fn refine(&mut self, mut a: Rational, mut b: Rational) {
        let sa = match self.g.sign_at(&a) {
            // Just right of a simple root the sign is that of g'.
            Ordering::Equal => self.g.derivative().sign_at(&a),
            s => s,
        };
        let width = self.width.expect("refining needs a width");
        while &(&b - &a) > width || self.g.eval(&a).is_zero() || self.g.eval(&b).is_zero() {
            let m = (&a + &b) / Rational::from_integer(BigInt::from(2));
            let sm = self.g.sign_at(&m);
            if sm == Ordering::Equal {
                self.out.push(RationalInterval::point(m));
                return;
            }
            if sm == sa {
                a = m;
            } else {
                b = m;
            }
        }
        self.out.push(RationalInterval::new(a, b).expect("a < b"));
    }
}

/// Rational upper bound for the positive roots of `f`: the right endpoint of
/// the rightmost isolating interval lying in `(0, ∞)`, or 0 when `f` has no
/// positive root.
pub fn positive_root_sup(f: &UPoly<Rational>, width: &Rational) -> Result<Rational> {
    let iso = isolate_real_roots(f, width)?;
    Ok(iso
        .intervals
        .iter()
        .rev()
        .find(|iv| iv.hi().is_positive())
        .map(|iv| iv.hi().clone())
        .unwrap_or_else(Rational::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::poly::{qpoly, XY};

    fn ux(text: &str) -> UPoly<Rational> {
        qpoly(XY, text).to_univariate(0).unwrap()
    }

    fn iv(a: Rational, b: Rational) -> RationalInterval {
        RationalInterval::new(a, b).unwrap()
    }

    #[test]
    fn unbounded_chain_isolations() {
        let g = ux("-20/9*x^6 - 56/9*x^4 - 4*x^2");
        let iso = isolate_real_roots(&g, &rat(1, 10)).unwrap();
        assert_eq!(iso.intervals, vec![RationalInterval::point(int(0))]);
        let f2 = ux("2*x^2 - 5/9 - 4/3*x");
        let iso = isolate_real_roots(&f2, &rat(1, 10)).unwrap();
        assert_eq!(
            iso.intervals,
            vec![iv(rat(-5, 16), rat(-1, 4)), iv(rat(15, 16), int(1))]
        );
    }

    #[test]
    fn bounded_chain_isolation() {
        let g = ux("4/243*x^6 + 8/81*x^4 - 4/9*x^2");
        let iso = isolate_real_roots(&g, &rat(1, 100)).unwrap();
        assert_eq!(
            iso.intervals,
            vec![
                iv(rat(-111, 64), rat(-221, 128)),
                RationalInterval::point(int(0)),
                iv(rat(221, 128), rat(111, 64)),
            ]
        );
        assert_eq!(positive_root_sup(&g, &rat(1, 100)).unwrap(), rat(111, 64));
        // Plain bisection at width 1/10 stops one step earlier.
        assert_eq!(positive_root_sup(&g, &rat(1, 10)).unwrap(), rat(7, 4));
    }

    #[test]
    fn counts() {
        assert_eq!(
            count_real_roots(&ux("13/9*x^2 + 4/3 - 8/3*x"), None, None).unwrap(),
            0
        );
        assert_eq!(
            count_real_roots(&ux("2*x^2 - 5/9 - 4/3*x"), None, None).unwrap(),
            2
        );
        assert_eq!(
            count_real_roots(&ux("x^2 - 2"), Some(&int(0)), Some(&int(2))).unwrap(),
            1
        );
        // Endpoints are excluded even when they are roots.
        let f = ux("x^3 - x");
        assert_eq!(
            count_real_roots(&f, Some(&int(-1)), Some(&int(1))).unwrap(),
            1
        );
        assert_eq!(count_real_roots(&f, Some(&int(0)), None).unwrap(), 1);
        assert_eq!(
            count_real_roots(&ux("x^2 - 2*x + 1"), None, None).unwrap(),
            1
        );
    }

    #[test]
    fn positive_sup_edge_cases() {
        assert_eq!(
            positive_root_sup(&ux("-20/9*x^6 - 56/9*x^4 - 4*x^2"), &rat(1, 10)).unwrap(),
            int(0)
        );
        assert_eq!(
            positive_root_sup(&ux("x + 1"), &rat(1, 10)).unwrap(),
            int(0)
        );
        assert_eq!(
            positive_root_sup(&ux("x - 1"), &rat(1, 10)).unwrap(),
            int(1)
        );
        assert!(isolate_real_roots(&UPoly::zero(), &rat(1, 10)).is_err());
    }

    #[test]
    fn descartes_refines_the_sturm_grid() {
        for text in [
            "x^3 - x",
            "x^5 - 3*x^3 + x - 1/7",
            "4/243*x^6 + 8/81*x^4 - 4/9*x^2",
            "x^4 - 1/1000",
        ] {
            let f = ux(text);
            let a = isolate_real_roots_by(&f, &rat(1, 10), RootMethod::Sturm).unwrap();
            let b = isolate_real_roots_by(&f, &rat(1, 10), RootMethod::Descartes).unwrap();
            assert_eq!(a.len(), b.len(), "{text}");
            for (x, y) in a.intervals.iter().zip(&b.intervals) {
                assert!(x.lo() <= y.lo() && y.hi() <= x.hi(), "{text}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn high_degree_counts() {
        // (x^2 - 2)(x - 1/3) times a product of 20 shifted copies of x^2 + 1.
        let mut f = ux("x^3 - 1/3*x^2 - 2*x + 2/3");
        for k in 0..10 {
            f = f.mul(&ux(&format!("x^2 - {}*x + {}", 2 * k, k * k + 1)));
        }
        assert!(f.degree().unwrap() > STURM_MAX_DEGREE);
        assert_eq!(count_real_roots(&f, None, None).unwrap(), 3);
        assert_eq!(count_real_roots(&f, Some(&int(0)), None).unwrap(), 2);
        assert_eq!(
            count_real_roots(&f, Some(&rat(1, 3)), Some(&int(2))).unwrap(),
            1
        );
        assert_eq!(isolate_real_roots(&f, &rat(1, 10)).unwrap().len(), 3);
    }
}
