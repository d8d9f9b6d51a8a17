//! Sign of an MTP on a bounded interval `(0, T)` and on `(0, +∞)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arctan::{decide_sign_on, ArctanOptions, ArctanSign};
use crate::arith::{ceil_dyadic, floor_over_half_pi, int, pi_enclosure, tan_enclosure, Rational};
use crate::bound::{decide_bound, BoundKind, BoundOptions};
use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::mtp::{normalize_frequency, tan_half_substitute, to_trivariate, MtpExpr};
use crate::poly::count_real_roots;
use crate::trace::Trace;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignOptions {
    pub bound: BoundOptions,
    pub arctan: ArctanOptions,
    /// Reject inputs with a repeated factor.
    pub require_squarefree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignKind {
    Positive,
    NonNegative,
    Negative,
    NonPositive,
    NoConstantSign,
    IdenticallyZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interval {
    UpTo(Rational),
    HalfLine,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::UpTo(t) => write!(f, "(0,{t})"),
            Interval::HalfLine => f.write_str("(0,+inf)"),
        }
    }
}

/// Sign of one real factor on a bounded interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSign {
    Positive,
    Negative,
    /// The factor vanishes somewhere in the interval.
    Zero,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub expr: MtpExpr,
    pub multiplicity: u32,
    /// Root bound (half-line only).
    pub bound: Option<BoundKind>,
    /// Interval end used for the sign decision.
    pub upto: Option<Rational>,
    pub sign: Option<FactorSign>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVerdict {
    pub kind: SignKind,
    pub interval: Interval,
    /// Set when the verdict stems from an exhausted cap rather than a proof.
    pub inconclusive: bool,
    pub constant: Option<Rational>,
    /// Number of negative odd-multiplicity factors.
    pub p: u32,
    /// Number of even-multiplicity factors that vanish in the interval.
    pub q: u32,
    pub factors: Vec<FactorReport>,
    pub trace: Trace,
}

impl fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.interval;
        if self.inconclusive {
            return write!(f, "inconclusive on {i}");
        }
        match self.kind {
            SignKind::Positive => write!(f, "F(x) > 0 on {i}"),
            SignKind::NonNegative => write!(f, "F(x) >= 0 on {i}"),
            SignKind::Negative => write!(f, "F(x) < 0 on {i}"),
            SignKind::NonPositive => write!(f, "F(x) <= 0 on {i}"),
            SignKind::NoConstantSign => write!(f, "no constant sign on {i}"),
            SignKind::IdenticallyZero => write!(f, "F(x) = 0 identically"),
        }
    }
}

/// Result of the tangent half-angle pipeline for one factor.
struct BoundedSign {
    sign: FactorSign,
    trace: Trace,
}

fn from_arctan(s: ArctanSign) -> FactorSign {
    match s {
        ArctanSign::Positive => FactorSign::Positive,
        ArctanSign::Negative => FactorSign::Negative,
        ArctanSign::HasZero => FactorSign::Zero,
        ArctanSign::Inconclusive => FactorSign::Inconclusive,
    }
}

/// `p = floor(T / (π/2)) + 1`, so that `T/p < π/2`.
pub fn angle_multiplier(t: &Rational) -> BigInt {
    floor_over_half_pi(t) + BigInt::one()
}

/// Sign of `g` on `(0, T)`. With `exact_end` unset a zero at or slightly
/// past `T` is accepted as a zero in the interval, which is what the
/// half-line decision needs when `T` is a root bound.
fn sign_on_bounded(
    g: &MtpExpr,
    t: &Rational,
    exact_end: bool,
    opts: &ArctanOptions,
) -> Result<BoundedSign> {
    let mut trace = Trace::new();
    let (g1, scale) = normalize_frequency(g);
    let t1 = t * &scale;
    if !scale.is_one() {
        trace.push("normalize frequency", format!("{g1} on (0,{t1})"));
    }
    if !g1.has_trig() {
        let f = to_trivariate(&g1)?.to_univariate(0)?;
        let zero = Rational::zero();
        let mut inside = count_real_roots(&f, Some(&zero), Some(&t1))?;
        if !exact_end && f.eval(&t1).is_zero() {
            inside += 1;
        }
        let sign = if inside > 0 {
            FactorSign::Zero
        } else {
            match f.sign_at(&(&t1 / int(2))) {
                Ordering::Greater => FactorSign::Positive,
                Ordering::Less => FactorSign::Negative,
                Ordering::Equal => FactorSign::Zero,
            }
        };
        trace.push("polynomial roots in interval", inside);
        return Ok(BoundedSign { sign, trace });
    }
    let p = angle_multiplier(&t1);
    let pr = Rational::from_integer(p.clone());
    if pr > int(10_000) {
        trace.push("warning", format!("large multiplier p = {p}"));
    }
    trace.push("p = floor(T/(pi/2)) + 1", &p);
    let big_g = g1.rescale(&pr);
    trace.push("G(t) = F(p*t)", &big_g);
    let small_g = to_trivariate(&big_g)?;
    trace.push("g(t, s, c)", &small_g);
    let th = tan_half_substitute(&small_g);
    trace.push("denominator (1+t^2)^k, k", th.denom_power);
    trace.push("H(t, y)", &th.angle_form);
    trace.push("H(t, 2*arctan(t))", &th.arctan_form);
    // t̂ ranges over (0, tan(T/(2p))) ⊂ (0, 1).
    let half = &t1 / (&pr * int(2));
    let tan = tan_enclosure(&half, 64)?;
    let end = ceil_dyadic(tan.hi(), 40).min(Rational::one());
    trace.push("domain end >= tan(T/(2p))", &end);
    let out = decide_sign_on(&th.arctan_form, &end, opts)?;
    trace.extend_prefixed("arctan: ", out.trace);
    let mut sign = from_arctan(out.kind);
    if sign == FactorSign::Zero && exact_end {
        // The zero must be certified inside (0, tan(T/(2p))).
        let inside = out.witness.as_ref().is_some_and(|(_, b)| b <= tan.lo());
        if !inside {
            trace.push(
                "zero witness",
                "not separated from the right end of the interval",
            );
            sign = FactorSign::Inconclusive;
        }
    }
    trace.push("sign", format!("{sign:?}"));
    Ok(BoundedSign { sign, trace })
}

fn combine(constant: &Rational, p: u32, q: u32) -> SignKind {
    let positive = constant.is_positive() == (p % 2 == 0);
    match (positive, q == 0) {
        (true, true) => SignKind::Positive,
        (true, false) => SignKind::NonNegative,
        (false, true) => SignKind::Negative,
        (false, false) => SignKind::NonPositive,
    }
}

fn identically_zero(interval: Interval) -> SignVerdict {
    let mut trace = Trace::new();
    trace.push("input", "identically zero");
    SignVerdict {
        kind: SignKind::IdenticallyZero,
        interval,
        inconclusive: false,
        constant: None,
        p: 0,
        q: 0,
        factors: vec![],
        trace,
    }
}

struct Loop {
    interval: Interval,
    constant: Rational,
    p: u32,
    q: u32,
    factors: Vec<FactorReport>,
    trace: Trace,
}

impl Loop {
    fn finish(mut self, kind: Option<SignKind>, inconclusive: bool) -> SignVerdict {
        let kind = kind.unwrap_or_else(|| combine(&self.constant, self.p, self.q));
        self.trace.push("p", self.p);
        self.trace.push("q", self.q);
        if inconclusive {
            self.trace.push("verdict", "inconclusive");
        } else {
            self.trace.push("verdict", format!("{kind:?}"));
        }
        SignVerdict {
            kind,
            interval: self.interval,
            inconclusive,
            constant: Some(self.constant),
            p: self.p,
            q: self.q,
            factors: self.factors,
            trace: self.trace,
        }
    }
}

fn start(
    e: &MtpExpr,
    interval: Interval,
    opts: &SignOptions,
) -> Result<std::result::Result<(Loop, Vec<(MtpExpr, u32)>), SignVerdict>> {
    let fac = match factorize(e) {
        Ok(f) => f,
        Err(Error::IdenticallyZero) => return Ok(Err(identically_zero(interval))),
        Err(err) => return Err(err),
    };
    if opts.require_squarefree && !fac.is_squarefree() {
        return Err(Error::InvalidArgument(format!("{e} has a repeated factor")));
    }
    let mut trace = Trace::new();
    trace.push("F", e);
    trace.push("factorization", &fac);
    trace.push("c", &fac.constant);
    let factors = fac
        .factors
        .iter()
        .map(|f| (f.expr.clone(), f.multiplicity))
        .collect();
    Ok(Ok((
        Loop {
            interval,
            constant: fac.constant,
            p: 0,
            q: 0,
            factors: vec![],
            trace,
        },
        factors,
    )))
}

/// Sign of `F` on `(0, T)`.
pub fn decide_on_bounded(e: &MtpExpr, t: &Rational, opts: &SignOptions) -> Result<SignVerdict> {
    if !t.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "interval end {t} is not positive"
        )));
    }
    let (mut lp, factors) = match start(e, Interval::UpTo(t.clone()), opts)? {
        Ok(x) => x,
        Err(v) => return Ok(v),
    };
    for (i, (g, d)) in factors.into_iter().enumerate() {
        let label = format!("f{}", i + 1);
        lp.trace.push(format!("{label}, multiplicity {d}"), &g);
        let bs = sign_on_bounded(&g, t, true, &opts.arctan)?;
        lp.trace.extend_prefixed(&format!("{label}: "), bs.trace);
        lp.factors.push(FactorReport {
            expr: g,
            multiplicity: d,
            bound: None,
            upto: Some(t.clone()),
            sign: Some(bs.sign),
        });
        match (bs.sign, d % 2 == 1) {
            (FactorSign::Inconclusive, _) => {
                return Ok(lp.finish(Some(SignKind::NoConstantSign), true))
            }
            (FactorSign::Zero, true) => return Ok(lp.finish(Some(SignKind::NoConstantSign), false)),
            (FactorSign::Zero, false) => lp.q += 1,
            (FactorSign::Negative, true) => lp.p += 1,
            _ => {}
        }
    }
    Ok(lp.finish(None, false))
}

/// Sign of `F` on `(0, +∞)`.
pub fn decide_on_halfline(e: &MtpExpr, opts: &SignOptions) -> Result<SignVerdict> {
    let (mut lp, factors) = match start(e, Interval::HalfLine, opts)? {
        Ok(x) => x,
        Err(v) => return Ok(v),
    };
    for (i, (g, d)) in factors.into_iter().enumerate() {
        let label = format!("f{}", i + 1);
        let odd = d % 2 == 1;
        lp.trace.push(format!("{label}, multiplicity {d}"), &g);
        let bv = decide_bound(&g, &opts.bound)?;
        lp.trace
            .extend_prefixed(&format!("{label} bound: "), bv.trace.clone());
        let mut report = FactorReport {
            expr: g.clone(),
            multiplicity: d,
            bound: Some(bv.kind.clone()),
            upto: None,
            sign: None,
        };
        let t = match &bv.kind {
            BoundKind::Bounded(b) => b.clone(),
            BoundKind::Unbounded if odd => {
                lp.factors.push(report);
                lp.trace
                    .push(label, "unbounded positive roots of odd multiplicity");
                return Ok(lp.finish(Some(SignKind::NoConstantSign), false));
            }
            BoundKind::Unbounded => {
                lp.q += 1;
                lp.factors.push(report);
                continue;
            }
            BoundKind::IdenticallyZero => {
                return Err(Error::Invariant(format!("factor {g} vanishes identically")));
            }
        };
        // No positive root past T: the sign on (0, T] is the sign on (0, +∞).
        let t = if t.is_zero() { Rational::one() } else { t };
        let bs = sign_on_bounded(&g, &t, false, &opts.arctan)?;
        lp.trace.extend_prefixed(&format!("{label}: "), bs.trace);
        report.upto = Some(t);
        report.sign = Some(bs.sign);
        lp.factors.push(report);
        match (bs.sign, odd) {
            (FactorSign::Inconclusive, _) => {
                return Ok(lp.finish(Some(SignKind::NoConstantSign), true))
            }
            (FactorSign::Zero, true) => return Ok(lp.finish(Some(SignKind::NoConstantSign), false)),
            (FactorSign::Zero, false) => lp.q += 1,
            (FactorSign::Negative, true) => lp.p += 1,
            _ => {}
        }
    }
    Ok(lp.finish(None, false))
}

/// `p·(π/2) > T ≥ (p−1)·(π/2)`, checked against a π enclosure.
pub fn check_multiplier(t: &Rational, p: &BigInt) -> bool {
    let pi = pi_enclosure(128);
    let p = Rational::from_integer(p.clone());
    let half = int(2);
    &p * pi.lo() / &half > *t && *t >= (&p - Rational::one()) * pi.hi() / &half
}
