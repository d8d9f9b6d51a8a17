//! Positive-root boundedness of an MTP via resultants and Sturm counts.

use num_traits::{One, Zero};

use crate::arith::{int, rat, Rational};
use crate::error::{Error, Result};
use crate::mtp::{circle_reduce, normalize_frequency, to_trivariate, MtpExpr};
use crate::poly::{
    count_real_roots, isolate_real_roots, positive_root_sup, resultant, squarefree_decompose,
    squarefree_part, QPoly, RootIsolation, XSC,
};
use crate::trace::{fmt_isolation, Trace};

const X: usize = 0;
const S: usize = 1;
const C: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundOptions {
    /// Refinement width for root isolation.
    pub width: Rational,
    /// The sample point is `r₁ = r₀ + sample_offset`.
    pub sample_offset: Rational,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            width: rat(1, 10),
            sample_offset: Rational::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Bounded(Rational),
    Unbounded,
    IdenticallyZero,
}

/// Exact intermediates for one square-free factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBound {
    pub factor: QPoly,
    /// `deg_c` of the reduced factor is odd.
    pub odd: bool,
    /// Odd: square-free part of `res(f, s²+c²−1, c)`. Even: the reduced
    /// `g(x, s)`.
    pub f1: QPoly,
    /// Odd: `res(f₁, ∂f₁/∂s, s)`. Even: `res(s+1,g,s)·res(s−1,g,s)·res(g,∂g/∂s,s)`.
    /// `None` when `f₁` does not involve `s`.
    pub discriminant: Option<QPoly>,
    /// Isolation of the square-free part of the discriminant (or of `f₁`
    /// when it is free of `s`).
    pub isolation: Option<RootIsolation>,
    pub r0: Rational,
    pub r1: Option<Rational>,
    pub sample_roots: Option<usize>,
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub kind: BoundKind,
    /// Frequency rescaling applied before the analysis.
    pub scale: Rational,
    pub factors: Vec<FactorBound>,
    pub trace: Trace,
}

impl BoundVerdict {
    pub fn bound(&self) -> Option<&Rational> {
        match &self.kind {
            BoundKind::Bounded(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.kind, BoundKind::Bounded(_))
    }
}

/// `f` itself when it is already square-free, otherwise its square-free part.
fn squarefree_keep(f: &QPoly) -> Result<QPoly> {
    if f.is_constant() {
        return Ok(f.clone());
    }
    let part = squarefree_part(f)?;
    let same = (0..f.nvars()).all(|v| part.degree(v) == f.degree(v));
    Ok(if same { f.clone() } else { part })
}

fn univariate_in_x(f: &QPoly) -> Result<crate::poly::UPoly<Rational>> {
    f.to_univariate(X)
}

fn circle() -> QPoly {
    &(&QPoly::var(XSC, S).pow(2) + &QPoly::var(XSC, C).pow(2)) - &QPoly::one(XSC)
}

/// Decide boundedness for one square-free factor `f(x, s, c)`.
pub fn decide_factor_bound(f: &QPoly, opts: &BoundOptions) -> Result<(FactorBound, Trace)> {
    let (a, b) = circle_reduce(f);
    if a.is_zero() && b.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let mut trace = Trace::new();
    if b.is_zero() {
        trace.push("branch", "degree(f, c) is even");
        even_branch(f, &a, opts, &mut trace).map(|fb| (fb, trace))
    } else {
        trace.push("branch", "degree(f, c) is odd");
        let reduced = &a + &(&b * &QPoly::var(XSC, C));
        odd_branch(&reduced, opts, &mut trace).map(|fb| (fb, trace))
    }
}

fn odd_branch(f: &QPoly, opts: &BoundOptions, trace: &mut Trace) -> Result<FactorBound> {
    let f1 = squarefree_keep(&resultant(f, &circle(), C)?)?;
    trace.push("f1 = square-free(res(f, s^2+c^2-1, c))", &f1);
    let (discriminant, f2) = if f1.degree(S) == 0 {
        trace.push("f1 is free of s", "its roots bound those of F");
        (None, f1.clone())
    } else {
        let g = resultant(&f1, &f1.derivative(S), S)?;
        if g.is_zero() {
            return Err(Error::Invariant("res(f1, diff(f1, s), s) vanishes".into()));
        }
        trace.push("g = res(f1, diff(f1, s), s)", &g);
        let f2 = squarefree_keep(&g)?;
        trace.push("f2 = square-free(g)", &f2);
        (Some(g), f2)
    };
    let f2u = univariate_in_x(&f2)?;
    let iso = isolate_real_roots(&f2u, &opts.width)?;
    trace.push(format!("realroot(f2, {})", opts.width), fmt_isolation(&iso));
    let mut r0 = positive_root_sup(&f2u, &opts.width)?;
    trace.push("r0 from f2", &r0);

    let mut fb = FactorBound {
        factor: f.clone(),
        odd: true,
        f1: f1.clone(),
        discriminant,
        isolation: Some(iso),
        r0: Rational::zero(),
        r1: None,
        sample_roots: None,
        bounded: false,
    };
    for (label, sv) in [("f(x,1,0)", int(1)), ("f(x,-1,0)", int(-1))] {
        let h = f.eval_var(S, &sv).eval_var(C, &Rational::zero());
        trace.push(label, &h);
        if h.is_zero() {
            trace.push(
                "verdict",
                format!("{label} vanishes identically: unbounded"),
            );
            fb.r0 = r0;
            return Ok(fb);
        }
        let sup = positive_root_sup(&univariate_in_x(&h)?, &opts.width)?;
        if sup > r0 {
            r0 = sup;
        }
    }
    trace.push("r0", &r0);
    let r1 = &r0 + &opts.sample_offset;
    let sample = f1.eval_var(X, &r1).to_univariate(S)?;
    if sample.is_zero() {
        return Err(Error::Invariant(format!(
            "f1({r1}, s) vanishes identically"
        )));
    }
    let n = count_real_roots(&sample, None, None)?;
    trace.push("r1", &r1);
    trace.push("real roots of f1(r1, s)", n);
    fb.r0 = r0;
    fb.r1 = Some(r1);
    fb.sample_roots = Some(n);
    fb.bounded = n == 0;
    trace.push(
        "verdict",
        if fb.bounded {
            format!("bounded by {}", fb.r0)
        } else {
            "unbounded".into()
        },
    );
    Ok(fb)
}

fn even_branch(
    f: &QPoly,
    a: &QPoly,
    opts: &BoundOptions,
    trace: &mut Trace,
) -> Result<FactorBound> {
    let g = squarefree_keep(a)?;
    trace.push("g = f with c^2 = 1 - s^2", &g);
    let mut fb = FactorBound {
        factor: f.clone(),
        odd: false,
        f1: g.clone(),
        discriminant: None,
        isolation: None,
        r0: Rational::zero(),
        r1: None,
        sample_roots: None,
        bounded: false,
    };
    if g.degree(S) == 0 {
        let gu = univariate_in_x(&g)?;
        let iso = isolate_real_roots(&gu, &opts.width)?;
        trace.push(format!("realroot(g, {})", opts.width), fmt_isolation(&iso));
        fb.r0 = positive_root_sup(&gu, &opts.width)?;
        fb.isolation = Some(iso);
        fb.bounded = true;
        trace.push(
            "verdict",
            format!("g is a polynomial in x: bounded by {}", fb.r0),
        );
        return Ok(fb);
    }
    for (label, sv) in [("g(x,1)", int(1)), ("g(x,-1)", int(-1))] {
        let h = g.eval_var(S, &sv);
        trace.push(label, &h);
        if h.is_zero() {
            trace.push(
                "verdict",
                format!("{label} vanishes identically: unbounded"),
            );
            return Ok(fb);
        }
    }
    let s = QPoly::var(XSC, S);
    let one = QPoly::one(XSC);
    let g1 = &(&resultant(&(&s + &one), &g, S)? * &resultant(&(&s - &one), &g, S)?)
        * &resultant(&g, &g.derivative(S), S)?;
    if g1.is_zero() {
        return Err(Error::Invariant("g1 vanishes identically".into()));
    }
    trace.push("g1 = res(s+1,g,s)*res(s-1,g,s)*res(g,diff(g,s),s)", &g1);
    let g1u = univariate_in_x(&g1)?;
    let iso = isolate_real_roots(&g1u, &opts.width)?;
    trace.push(format!("realroot(g1, {})", opts.width), fmt_isolation(&iso));
    let r0 = positive_root_sup(&g1u, &opts.width)?;
    trace.push("r0", &r0);
    let r1 = &r0 + &opts.sample_offset;
    let sample = g.eval_var(X, &r1).to_univariate(S)?;
    if sample.is_zero() {
        return Err(Error::Invariant(format!("g({r1}, s) vanishes identically")));
    }
    let n = count_real_roots(&sample, Some(&int(-1)), Some(&int(1)))?;
    trace.push("r1", &r1);
    trace.push("real roots of g(r1, s) in (-1, 1)", n);
    fb.discriminant = Some(g1);
    fb.isolation = Some(iso);
    fb.r0 = r0;
    fb.r1 = Some(r1);
    fb.sample_roots = Some(n);
    fb.bounded = n == 0;
    trace.push(
        "verdict",
        if fb.bounded {
            format!("bounded by {}", fb.r0)
        } else {
            "unbounded".into()
        },
    );
    Ok(fb)
}

/// Decide boundedness of `F(x) = f(x, sin x, cos x)`.
pub fn decide_bound_trivariate(f: &QPoly, opts: &BoundOptions) -> Result<BoundVerdict> {
    let mut trace = Trace::new();
    let (a, b) = circle_reduce(f);
    let reduced = &a + &(&b * &QPoly::var(XSC, C));
    if reduced.is_zero() {
        trace.push("reduced", "f vanishes on the circle s^2 + c^2 = 1");
        return Ok(BoundVerdict {
            kind: BoundKind::IdenticallyZero,
            scale: Rational::one(),
            factors: vec![],
            trace,
        });
    }
    if reduced != *f {
        trace.push("reduced", &reduced);
    }
    let sqf = squarefree_decompose(&reduced)?;
    let mut factors = Vec::new();
    let mut bound = Some(Rational::zero());
    for (i, (p, _)) in sqf.factors.iter().enumerate() {
        let prefix = format!("factor {}: ", i + 1);
        trace.push(format!("factor {}", i + 1), p);
        let (fb, t) = decide_factor_bound(p, opts)?;
        trace.extend_prefixed(&prefix, t);
        match (&mut bound, fb.bounded) {
            (Some(b), true) if fb.r0 > *b => *b = fb.r0.clone(),
            (_, false) => bound = None,
            _ => {}
        }
        factors.push(fb);
    }
    let kind = match bound {
        Some(b) => BoundKind::Bounded(b),
        None => BoundKind::Unbounded,
    };
    Ok(BoundVerdict {
        kind,
        scale: Rational::one(),
        factors,
        trace,
    })
}

/// Decide boundedness of the positive roots of an MTP.
pub fn decide_bound(e: &MtpExpr, opts: &BoundOptions) -> Result<BoundVerdict> {
    if e.is_zero() {
        let mut trace = Trace::new();
        trace.push("input", "empty expression");
        return Ok(BoundVerdict {
            kind: BoundKind::IdenticallyZero,
            scale: Rational::one(),
            factors: vec![],
            trace,
        });
    }
    let (normalized, scale) = normalize_frequency(e);
    let f = to_trivariate(&normalized)?;
    let mut trace = Trace::new();
    if !scale.is_one() {
        trace.push(
            "normalize frequency",
            format!("x = t/{scale}: {normalized}"),
        );
    }
    trace.push("f(x,s,c)", &f);
    let mut v = decide_bound_trivariate(&f, opts)?;
    trace.extend(std::mem::take(&mut v.trace));
    if let BoundKind::Bounded(b) = &v.kind {
        let b = b / &scale;
        if !scale.is_one() {
            trace.push("bound in x", &b);
        }
        v.kind = BoundKind::Bounded(b);
    }
    trace.push(
        "result",
        match &v.kind {
            BoundKind::Bounded(b) => format!("positive roots bounded by {b}"),
            BoundKind::Unbounded => "positive roots unbounded".into(),
            BoundKind::IdenticallyZero => "identically zero".into(),
        },
    );
    v.scale = scale;
    v.trace = trace;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalInterval;
    use crate::mtp::parse;
    use crate::poly::qpoly;

    fn iv(a: Rational, b: Rational) -> RationalInterval {
        RationalInterval::new(a, b).unwrap()
    }

    #[test]
    fn unbounded_linear_in_cos() {
        let f = qpoly(XSC, "2/3*x + x*c - s");
        let (fb, trace) = decide_factor_bound(&f, &BoundOptions::default()).unwrap();
        assert!(fb.odd);
        assert_eq!(fb.f1, qpoly(XSC, "x^2*s^2 - 5/9*x^2 - 4/3*x*s + s^2"));
        assert_eq!(
            fb.discriminant.unwrap(),
            qpoly(XSC, "-20/9*x^6 - 56/9*x^4 - 4*x^2")
        );
        assert_eq!(fb.isolation.unwrap().intervals, vec![iv(int(0), int(0))]);
        // f(x,1,0) = 2/3·x − 1 raises r0 to its root 3/2.
        assert_eq!(fb.r0, rat(3, 2));
        assert_eq!(fb.sample_roots, Some(2));
        assert!(!fb.bounded);
        assert_eq!(trace.find("verdict"), Some("unbounded"));
    }

    #[test]
    fn bounded_linear_in_cos() {
        let f = qpoly(XSC, "2/3*x + 1/3*x*c - s");
        let opts = BoundOptions {
            width: rat(1, 100),
            ..Default::default()
        };
        let (fb, _) = decide_factor_bound(&f, &opts).unwrap();
        assert_eq!(fb.f1, qpoly(XSC, "1/9*x^2*s^2 + 1/3*x^2 - 4/3*x*s + s^2"));
        assert_eq!(
            fb.discriminant.unwrap(),
            qpoly(XSC, "4/243*x^6 + 8/81*x^4 - 4/9*x^2")
        );
        assert_eq!(
            fb.isolation.unwrap().intervals,
            vec![
                iv(rat(-111, 64), rat(-221, 128)),
                iv(int(0), int(0)),
                iv(rat(221, 128), rat(111, 64))
            ]
        );
        assert!(fb.bounded);
        assert_eq!(fb.r0, rat(111, 64));
        // At the default width the reported bound is coarser but still valid.
        let v = decide_bound(
            &parse("2/3*x + 1/3*x*cos(x) - sin(x)").unwrap(),
            &BoundOptions::default(),
        )
        .unwrap();
        assert_eq!(v.kind, BoundKind::Bounded(rat(7, 4)));
    }

    #[test]
    fn unary_and_degenerate_cases() {
        let opts = BoundOptions::default();
        let v = decide_bound(&parse("x - 1").unwrap(), &opts).unwrap();
        assert_eq!(v.kind, BoundKind::Bounded(int(1)));
        let v = decide_bound(&parse("sin(x)^2 + cos(x)^2 - 1").unwrap(), &opts).unwrap();
        assert_eq!(v.kind, BoundKind::IdenticallyZero);
        let v = decide_bound(&parse("0*x").unwrap(), &opts).unwrap();
        assert_eq!(v.kind, BoundKind::IdenticallyZero);
        let v = decide_bound(&parse("5").unwrap(), &opts).unwrap();
        assert_eq!(v.kind, BoundKind::Bounded(int(0)));
        assert_eq!(
            decide_bound(&parse("sin(x)").unwrap(), &opts).unwrap().kind,
            BoundKind::Unbounded
        );
        assert_eq!(
            decide_bound(&parse("cos(x)").unwrap(), &opts).unwrap().kind,
            BoundKind::Unbounded
        );
        assert_eq!(
            decide_bound(&parse("sin(x) - 1").unwrap(), &opts)
                .unwrap()
                .kind,
            BoundKind::Unbounded
        );
        assert_eq!(
            decide_bound(&parse("x^2 + sin(x)").unwrap(), &opts)
                .unwrap()
                .kind,
            BoundKind::Bounded(int(1))
        );
    }

    #[test]
    fn rescaled_bounds() {
        let opts = BoundOptions::default();
        // x + 2·sin(x/2) − 3 has no roots beyond 5 and frequency 1/2.
        let v = decide_bound(&parse("x + 2*sin(1/2*x) - 3").unwrap(), &opts).unwrap();
        assert_eq!(v.scale, rat(1, 2));
        let b = v.bound().unwrap().clone();
        assert!(b >= int(1) && b <= int(6), "{b}");
        let v2 = decide_bound(&parse("2*x + 2*sin(x) - 3").unwrap(), &opts).unwrap();
        assert_eq!(v2.bound().unwrap() * int(2), b);
    }

    #[test]
    fn sample_point_independence() {
        for text in [
            "2/3*x + x*cos(x) - sin(x)",
            "2/3*x + 1/3*x*cos(x) - sin(x)",
            "x^2*sin(x) - cos(x)^2 + x^3",
        ] {
            let e = parse(text).unwrap();
            let kinds: Vec<_> = [int(1), int(2), rat(17, 2)]
                .into_iter()
                .map(|off| {
                    let opts = BoundOptions {
                        sample_offset: off,
                        ..Default::default()
                    };
                    std::mem::discriminant(&decide_bound(&e, &opts).unwrap().kind)
                })
                .collect();
            assert!(kinds.windows(2).all(|w| w[0] == w[1]), "{text}");
        }
    }
}
