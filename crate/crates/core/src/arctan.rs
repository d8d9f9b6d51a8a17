//! Sign of `H(t, arctan t)` on `(0, 1)` for a bivariate rational `H`.
//!
//! `arctan` is bracketed by alternating partial sums of its Maclaurin
//! series, which turns `H` into polynomial lower and upper bounds on each
//! subinterval. A bound with no root and the right sign certifies the sign
//! of `H` there. Failing subintervals are retried with a higher Taylor degree
//! and then bisected.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{atan_enclosure, int, rat, Rational, RationalInterval};
use crate::error::{Error, Result};
use crate::poly::{count_real_roots, isolate_real_roots, QPoly, UPoly, TA};
use crate::trace::Trace;

const T: usize = 0;
const A: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArctanOptions {
    /// Largest Maclaurin degree tried (odd).
    pub max_degree: u32,
    /// Largest number of bisections of `(0, 1)`.
    pub max_depth: u32,
}

impl Default for ArctanOptions {
    fn default() -> Self {
        Self {
            max_degree: 63,
            max_depth: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArctanSign {
    Positive,
    Negative,
    HasZero,
    Inconclusive,
}

impl fmt::Display for ArctanSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArctanSign::Positive => "positive",
            ArctanSign::Negative => "negative",
            ArctanSign::HasZero => "has a zero",
            ArctanSign::Inconclusive => "inconclusive",
        })
    }
}

/// A polynomial bound `bound(t) = t^tpow · cofactor(t)` of `H(t, arctan t)`
/// on `[lo, hi]`: a lower bound when `sign` is `Greater`, an upper bound when
/// it is `Less`. The cofactor has no root on the subinterval (open at 0 and
/// at the end of the domain, closed at interior endpoints).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub lo: Rational,
    pub hi: Rational,
    pub degree: u32,
    pub sign: Ordering,
    pub bound: UPoly<Rational>,
    pub tpow: u32,
    pub roots: usize,
    /// Right end of the domain the cover was built for.
    pub domain: Rational,
}

impl Certificate {
    /// Recount the roots of the cofactor and recheck its sign.
    pub fn check(&self) -> bool {
        let Ok(cof) = strip_t(&self.bound, self.tpow) else {
            return false;
        };
        cofactor_sign(&cof, &self.lo, &self.hi, &self.domain) == Some(self.sign)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignOutcome {
    pub kind: ArctanSign,
    pub certificates: Vec<Certificate>,
    /// For `HasZero`, a closed interval of `t` known to contain a zero.
    pub witness: Option<(Rational, Rational)>,
    pub trace: Trace,
}

fn pow(p: &UPoly<Rational>, e: u32) -> UPoly<Rational> {
    let mut acc = UPoly::constant(Rational::one());
    for _ in 0..e {
        acc = acc.mul(p);
    }
    acc
}

fn partial_sum(degree: i64) -> UPoly<Rational> {
    let mut coeffs = vec![Rational::zero(); degree.max(0) as usize + 1];
    let mut j = 0;
    while 2 * j + 1 <= degree {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        coeffs[(2 * j + 1) as usize] = rat(sign, 2 * j + 1);
        j += 1;
    }
    UPoly::new(coeffs)
}

/// `(L, U)` with `L ≤ arctan t ≤ U` on `[0, 1]`: the partial sums of the
/// Maclaurin series ending at `t^degree` and at `t^(degree−2)`.
pub fn arctan_bounds(degree: u32) -> Result<(UPoly<Rational>, UPoly<Rational>)> {
    if degree % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "Taylor degree {degree} is not odd"
        )));
    }
    let d = degree as i64;
    let (a, b) = (partial_sum(d), partial_sum(d - 2));
    // The last term of the degree-d sum is negative iff d ≡ 3 (mod 4).
    Ok(if d % 4 == 3 { (a, b) } else { (b, a) })
}

/// Degrees tried on each subinterval: 3, 7, 15, ... capped at `max`.
fn degree_schedule(max: u32) -> Vec<u32> {
    let max = if max % 2 == 0 {
        max.saturating_sub(1)
    } else {
        max
    }
    .max(1);
    let mut out = Vec::new();
    let mut d = 3.min(max);
    loop {
        out.push(d);
        if d >= max {
            return out;
        }
        d = (2 * d + 1).min(max);
    }
}

fn to_upoly(p: &QPoly) -> Result<UPoly<Rational>> {
    p.to_univariate(T)
}

fn show(p: &UPoly<Rational>) -> String {
    QPoly::from_univariate(TA, T, p).to_string()
}

/// `p / t^m`.
fn strip_t(p: &UPoly<Rational>, m: u32) -> Result<UPoly<Rational>> {
    let m = m as usize;
    if p.coeffs().iter().take(m).any(|c| !c.is_zero()) {
        return Err(Error::InexactDivision);
    }
    Ok(UPoly::new(p.coeffs().iter().skip(m).cloned().collect()))
}

fn low_order(p: &UPoly<Rational>) -> u32 {
    p.coeffs().iter().take_while(|c| c.is_zero()).count() as u32
}

/// Constant sign of a cofactor on `[lo, hi]`, treating `0` and `end` as open
/// endpoints.
fn cofactor_sign(
    cof: &UPoly<Rational>,
    lo: &Rational,
    hi: &Rational,
    end: &Rational,
) -> Option<Ordering> {
    if cof.is_zero() {
        return None;
    }
    let mid = (lo + hi) / int(2);
    let s = cof.sign_at(&mid);
    if s == Ordering::Equal {
        return None;
    }
    if count_real_roots(cof, Some(lo), Some(hi)).ok()? != 0 {
        return None;
    }
    for e in [lo, hi] {
        if !e.is_zero() && e != end && cof.sign_at(e) != s {
            return None;
        }
    }
    Some(s)
}

/// `max |p(t)|` over `t ∈ [lo, hi] ⊂ [0, 1]`, bounded from above.
fn abs_bound(p: &UPoly<Rational>, hi: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for c in p.coeffs() {
        acc += c.abs() * &power;
        power *= hi;
    }
    acc
}

struct Split {
    /// `h_k(t)` with `H = Σ h_k a^k`.
    coeffs: Vec<UPoly<Rational>>,
}

impl Split {
    fn new(h: &QPoly) -> Result<Self> {
        let coeffs = h
            .coeffs_in(A)
            .iter()
            .map(to_upoly)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }

    /// Lower and upper polynomial bounds on `[lo, hi]` at one Taylor degree.
    fn bounds(
        &self,
        lo: &Rational,
        hi: &Rational,
        powers: &[(UPoly<Rational>, UPoly<Rational>)],
    ) -> Result<(UPoly<Rational>, UPoly<Rational>)> {
        let mut lower = self.coeffs[0].clone();
        let mut upper = self.coeffs[0].clone();
        for (k, hk) in self.coeffs.iter().enumerate().skip(1) {
            if hk.is_zero() {
                continue;
            }
            let (lk, uk) = &powers[k];
            match weak_sign(hk, lo, hi)? {
                Some(Ordering::Greater) => {
                    lower = lower.add(&hk.mul(lk));
                    upper = upper.add(&hk.mul(uk));
                }
                Some(_) => {
                    lower = lower.add(&hk.mul(uk));
                    upper = upper.add(&hk.mul(lk));
                }
                None => {
                    // h·a^k = h·L^k + h·(a^k − L^k) with 0 ≤ a^k − L^k ≤ U^k − L^k.
                    let gap = uk.sub(lk).scale(&abs_bound(hk, hi));
                    let base = hk.mul(lk);
                    lower = lower.add(&base.sub(&gap));
                    upper = upper.add(&base.add(&gap));
                }
            }
        }
        Ok((lower, upper))
    }
}

/// Weak sign of `p` on `[lo, hi]`: `p` has no root strictly inside.
fn weak_sign(p: &UPoly<Rational>, lo: &Rational, hi: &Rational) -> Result<Option<Ordering>> {
    let s = p.sign_at(&((lo + hi) / int(2)));
    if s == Ordering::Equal {
        return Ok(None);
    }
    Ok((count_real_roots(p, Some(lo), Some(hi))? == 0).then_some(s))
}

/// Certified enclosure of `H(t, arctan t)` at a rational point.
pub fn enclose_at(h: &QPoly, t: &Rational, bits: u32) -> RationalInterval {
    let a = atan_enclosure(t, bits);
    let mut acc = RationalInterval::point(Rational::zero());
    let mut power = RationalInterval::point(Rational::one());
    for hk in h.coeffs_in(A) {
        let v = hk.eval(&[t.clone(), Rational::zero()]);
        acc = acc.add(&power.scale(&v));
        power = power.mul(&a);
    }
    acc
}

/// Decide the sign of `H(t, arctan t)` on `(0, 1)`.
pub fn decide_sign(h: &QPoly, opts: &ArctanOptions) -> Result<SignOutcome> {
    decide_sign_on(h, &Rational::one(), opts)
}

/// Decide the sign of `H(t, arctan t)` on `(0, end)` with `0 < end ≤ 1`.
pub fn decide_sign_on(h: &QPoly, end: &Rational, opts: &ArctanOptions) -> Result<SignOutcome> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.vars() != TA {
        return Err(Error::InvalidArgument(
            "expected a polynomial in t, a".into(),
        ));
    }
    if !end.is_positive() || *end > Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "domain end {end} is outside (0, 1]"
        )));
    }
    let zero = Rational::zero();
    let mut trace = Trace::new();
    trace.push("H(t, a)", h);
    trace.push("domain", format!("(0, {end})"));
    let split = Split::new(h)?;

    // A common zero of every h_k makes H vanish whatever a is.
    let common = split.coeffs.iter().fold(UPoly::zero(), |g, c| g.gcd(c));
    if common.degree().unwrap_or(0) > 0 && count_real_roots(&common, Some(&zero), Some(end))? > 0 {
        let iso = isolate_real_roots(&common, &rat(1, 1024))?;
        let witness = iso.intervals.iter().find_map(|iv| {
            let (a, b) = (iv.lo().max(&zero).clone(), iv.hi().min(end).clone());
            let inside = if iv.is_point() {
                a.is_positive() && a < *end
            } else {
                a < b && count_real_roots(&common, Some(&a), Some(&b)).is_ok_and(|n| n > 0)
            };
            inside.then_some((a, b))
        });
        trace.push(
            "common zero",
            format!("{} vanishes in (0, {end})", show(&common)),
        );
        return Ok(SignOutcome {
            kind: ArctanSign::HasZero,
            certificates: vec![],
            witness,
            trace,
        });
    }

    // Cheap sign-change search at a few rational points.
    let mut pos_at = None;
    let mut neg_at = None;
    for i in 1..32 {
        let t = end * rat(i, 32);
        match enclose_at(h, &t, 64).sign() {
            Some(Ordering::Greater) => pos_at = pos_at.or(Some(t)),
            Some(Ordering::Less) => neg_at = neg_at.or(Some(t)),
            _ => {}
        }
    }
    if let (Some(p), Some(n)) = (&pos_at, &neg_at) {
        trace.push("sign change", format!("H > 0 at t = {p}, H < 0 at t = {n}"));
        let witness = Some(if p < n {
            (p.clone(), n.clone())
        } else {
            (n.clone(), p.clone())
        });
        return Ok(SignOutcome {
            kind: ArctanSign::HasZero,
            certificates: vec![],
            witness,
            trace,
        });
    }

    let max_k = split.coeffs.len() - 1;
    let schedule = degree_schedule(opts.max_degree);
    let mut power_cache: Vec<Vec<(UPoly<Rational>, UPoly<Rational>)>> = Vec::new();
    for &d in &schedule {
        let (l, u) = arctan_bounds(d)?;
        power_cache.push(
            (0..=max_k as u32)
                .map(|k| (pow(&l, k), pow(&u, k)))
                .collect(),
        );
    }

    let mut certificates = Vec::new();
    let mut stack = vec![(zero.clone(), end.clone(), 0u32)];
    let mut inconclusive = false;
    while let Some((lo, hi, depth)) = stack.pop() {
        let mut cert = None;
        for (&d, powers) in schedule.iter().zip(&power_cache) {
            let (lower, upper) = split.bounds(&lo, &hi, powers)?;
            for (bound, want) in [(lower, Ordering::Greater), (upper, Ordering::Less)] {
                if bound.is_zero() {
                    continue;
                }
                let m = if lo.is_zero() { low_order(&bound) } else { 0 };
                let cof = strip_t(&bound, m)?;
                if cofactor_sign(&cof, &lo, &hi, end) == Some(want) {
                    cert = Some(Certificate {
                        lo: lo.clone(),
                        hi: hi.clone(),
                        degree: d,
                        sign: want,
                        bound,
                        tpow: m,
                        roots: 0,
                        domain: end.clone(),
                    });
                    break;
                }
            }
            if cert.is_some() {
                break;
            }
        }
        match cert {
            Some(c) => {
                trace.push(
                    format!("[{}, {}]", c.lo, c.hi),
                    format!(
                        "degree {}: {} bound t^{}*({}) has no root, sign {}",
                        c.degree,
                        if c.sign == Ordering::Greater {
                            "lower"
                        } else {
                            "upper"
                        },
                        c.tpow,
                        show(&strip_t(&c.bound, c.tpow)?),
                        if c.sign == Ordering::Greater {
                            "+"
                        } else {
                            "-"
                        },
                    ),
                );
                certificates.push(c);
            }
            None if depth < opts.max_depth => {
                let mid = (&lo + &hi) / int(2);
                stack.push((mid.clone(), hi, depth + 1));
                stack.push((lo, mid, depth + 1));
            }
            None => {
                trace.push(format!("[{lo}, {hi}]"), "caps exhausted");
                inconclusive = true;
                break;
            }
        }
        let has_pos = certificates.iter().any(|c| c.sign == Ordering::Greater);
        let has_neg = certificates.iter().any(|c| c.sign == Ordering::Less);
        if has_pos && has_neg {
            trace.push("sign change", "certified subintervals of both signs");
            let lo = certificates
                .iter()
                .map(|c| &c.lo)
                .min()
                .cloned()
                .unwrap_or_default();
            let hi = certificates
                .iter()
                .map(|c| &c.hi)
                .max()
                .cloned()
                .unwrap_or_default();
            return Ok(SignOutcome {
                kind: ArctanSign::HasZero,
                certificates,
                witness: Some((lo, hi)),
                trace,
            });
        }
    }
    let kind = if inconclusive {
        ArctanSign::Inconclusive
    } else if certificates.iter().all(|c| c.sign == Ordering::Greater) {
        ArctanSign::Positive
    } else {
        ArctanSign::Negative
    };
    trace.push("verdict", kind);
    Ok(SignOutcome {
        kind,
        certificates,
        witness: None,
        trace,
    })
}
