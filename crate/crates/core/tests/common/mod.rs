//! Shared generators for the integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random MTP source text: up to four terms `a*x^p*sin(w*x)^q*cos(w*x)^r`
/// with `w` in {1/2, 1, 2, 3}, `p <= 3` and `q + r <= 3`.
pub fn random_mtp(rng: &mut StdRng) -> String {
    random_mtp_with(rng, &["1/2", "1", "2", "3"])
}

pub fn random_mtp_with(rng: &mut StdRng, freqs: &[&str]) -> String {
    let n = rng.gen_range(1..=4);
    let mut terms = Vec::new();
    for _ in 0..n {
        let mut num: i64 = rng.gen_range(-5..=5);
        if num == 0 {
            num = 1;
        }
        let den: i64 = rng.gen_range(1..=3);
        let mut t = format!("{num}/{den}");
        let p = rng.gen_range(0..=3);
        if p > 0 {
            t += &format!("*x^{p}");
        }
        let q = rng.gen_range(0..=3);
        let r = rng.gen_range(0..=3 - q);
        let w = freqs[rng.gen_range(0..freqs.len())];
        if q > 0 {
            t += &format!("*sin({w}*x)^{q}");
        }
        if r > 0 {
            t += &format!("*cos({w}*x)^{r}");
        }
        terms.push(format!("({t})"));
    }
    terms.join(" + ")
}

/// Random rational in `(lo, hi)` with denominator up to 1000.
pub fn random_rational(rng: &mut StdRng, lo: i64, hi: i64) -> mtp_core::arith::Rational {
    let d: i64 = rng.gen_range(2..=1000);
    let n: i64 = rng.gen_range(lo * d + 1..hi * d);
    mtp_core::arith::rat(n, d)
}

pub mod scan {
    use mtp_core::arith::{rat, Rational};
    use mtp_core::mtp::MtpExpr;
    use mtp_core::numeric::{BigFloat, Numeric};

    /// Summary of `count` samples of `e` evenly spaced inside `(lo, hi)`.
    pub struct Scan {
        pub positive: usize,
        pub negative: usize,
        pub zero: usize,
        /// Smallest sample value.
        pub min: BigFloat,
    }

    pub fn scan(n: &mut Numeric, e: &MtpExpr, lo: &Rational, hi: &Rational, count: i64) -> Scan {
        let mut s = Scan {
            positive: 0,
            negative: 0,
            zero: 0,
            min: n.int(0),
        };
        let mut first = true;
        for i in 1..=count {
            let q = lo + (hi - lo) * rat(i, count + 1);
            let x = n.rational(&q);
            let v = n.eval_mtp(e, &x);
            if v.is_zero() {
                s.zero += 1;
            } else if v.is_positive() {
                s.positive += 1;
            } else {
                s.negative += 1;
            }
            if first || v.cmp(&s.min).is_some_and(|c| c < 0) {
                s.min = v;
                first = false;
            }
        }
        s
    }

    /// A point `x` in `[from, to]` with `|e(x)| ≤ tol·(1 + |x|)^deg`,
    /// found by bisecting a sign change or, failing that, by golden-section
    /// search around the sampled minima of `|e|` (zeros of even order).
    pub fn root_in(
        n: &mut Numeric,
        e: &MtpExpr,
        from: &Rational,
        to: &Rational,
        count: i64,
        tol: &str,
    ) -> Option<BigFloat> {
        let tol = n.decimal(tol);
        let deg = e.max_x_degree();
        let (a, b) = (n.rational(from), n.rational(to));
        let step = n.div(&n.sub(&b, &a), &n.int(count));
        let xs: Vec<BigFloat> = (0..=count)
            .map(|i| n.add(&a, &n.mul(&step, &n.int(i))))
            .collect();
        let vs: Vec<BigFloat> = xs.iter().map(|x| n.eval_mtp(e, x)).collect();
        let small = |n: &mut Numeric, x: &BigFloat, v: &BigFloat| {
            let scale = n.powi(&n.add(&n.int(1), &x.abs()), deg);
            v.abs().cmp(&n.mul(&tol, &scale)).is_some_and(|c| c <= 0)
        };
        for i in 0..count as usize {
            if vs[i].is_zero() {
                return Some(xs[i].clone());
            }
            if vs[i].is_positive() != vs[i + 1].is_positive() && !vs[i + 1].is_zero() {
                let (mut lo, mut hi) = (xs[i].clone(), xs[i + 1].clone());
                let lo_pos = vs[i].is_positive();
                for _ in 0..200 {
                    let m = n.div(&n.add(&lo, &hi), &n.int(2));
                    let v = n.eval_mtp(e, &m);
                    if small(n, &m, &v) {
                        return Some(m);
                    }
                    if v.is_positive() == lo_pos {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
            }
        }
        // Local minima of |e| on the grid.
        let phi = n.decimal("0.6180339887498948482045868343656381177203");
        for i in 1..count as usize {
            let (l, c, r) = (vs[i - 1].abs(), vs[i].abs(), vs[i + 1].abs());
            if c.cmp(&l).is_some_and(|o| o > 0) || c.cmp(&r).is_some_and(|o| o > 0) {
                continue;
            }
            let (mut lo, mut hi) = (xs[i - 1].clone(), xs[i + 1].clone());
            for _ in 0..300 {
                let w = n.sub(&hi, &lo);
                let m1 = n.sub(&hi, &n.mul(&phi, &w));
                let m2 = n.add(&lo, &n.mul(&phi, &w));
                let (v1, v2) = (n.eval_mtp(e, &m1).abs(), n.eval_mtp(e, &m2).abs());
                if v1.cmp(&v2).is_some_and(|o| o < 0) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let v = n.eval_mtp(e, &lo);
            if small(n, &lo, &v) {
                return Some(lo);
            }
        }
        None
    }
}

pub mod verdicts {
    use mtp_core::arith::{int, Rational};
    use mtp_core::bound::BoundKind;
    use mtp_core::mtp::MtpExpr;
    use mtp_core::numeric::Numeric;
    use mtp_core::sign::{Interval, SignKind, SignVerdict};

    use super::scan::{root_in, scan};

    /// Largest finite per-factor root bound recorded in a half-line verdict.
    pub fn largest_bound(v: &SignVerdict) -> Option<Rational> {
        v.factors
            .iter()
            .filter_map(|f| match &f.bound {
                Some(BoundKind::Bounded(b)) => Some(b.clone()),
                _ => None,
            })
            .max()
    }

    /// Check a sign verdict against `samples` high-precision samples. The
    /// scanned window is `(0, T)` for bounded verdicts and `(0, min(2B, 100))`
    /// on the half-line, `B` the largest root bound (at least 1); sign
    /// changes for `NoConstantSign` are searched up to 1000.
    pub fn check_sign(
        n: &mut Numeric,
        e: &MtpExpr,
        v: &SignVerdict,
        samples: i64,
    ) -> Result<(), String> {
        if v.inconclusive {
            return Ok(());
        }
        let end = match &v.interval {
            Interval::UpTo(t) => t.clone(),
            Interval::HalfLine => {
                let b = largest_bound(v).unwrap_or_else(|| int(1)).max(int(1));
                (b * int(2)).min(int(100))
            }
        };
        let s = scan(n, e, &int(0), &end, samples);
        let tiny = n.decimal("-1e-30");
        let ok = match v.kind {
            SignKind::Positive => s.negative == 0 && s.zero == 0,
            SignKind::Negative => s.positive == 0 && s.zero == 0,
            SignKind::NonNegative => s.negative == 0 || s.min.cmp(&tiny).is_some_and(|c| c >= 0),
            SignKind::NonPositive => {
                let neg = super::scan::scan(n, &e.neg(), &int(0), &end, samples);
                s.positive == 0 || neg.min.cmp(&tiny).is_some_and(|c| c >= 0)
            }
            SignKind::NoConstantSign => {
                let both = match &v.interval {
                    Interval::UpTo(_) => s_both(&s),
                    Interval::HalfLine => {
                        s_both(&s) || s_both(&scan(n, e, &int(0), &int(1000), samples))
                    }
                };
                both || sign_change_at_root(n, e, v)
            }
            SignKind::IdenticallyZero => s.positive == 0 && s.negative == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "{e}: verdict {v} contradicts {} positive / {} negative samples",
                s.positive, s.negative
            ))
        }
    }

    fn s_both(s: &super::scan::Scan) -> bool {
        s.positive > 0 && s.negative > 0
    }

    /// A sign change may hide between samples when it happens in a narrow
    /// window; look for one near a numeric root instead.
    fn sign_change_at_root(n: &mut Numeric, e: &MtpExpr, v: &SignVerdict) -> bool {
        let end = match &v.interval {
            Interval::UpTo(t) => t.clone(),
            Interval::HalfLine => int(1000),
        };
        root_in(n, e, &int(0), &end, 20_000, "1e-40").is_some_and(|x| {
            let d = n.decimal("1e-12");
            let (a, b) = (n.sub(&x, &d), n.add(&x, &d));
            let (va, vb) = (n.eval_mtp(e, &a), n.eval_mtp(e, &b));
            !va.is_zero() && !vb.is_zero() && va.is_positive() != vb.is_positive()
        })
    }
}

pub mod grid {
    use mtp_core::arith::Rational;
    use mtp_core::poly::UPoly;
    use num_bigint::{BigInt, Sign};
    use num_integer::Integer;
    use num_traits::{One, Zero};

    /// Sign changes of `f` on the grid `i / n`, `|i| ≤ b·n`, with exact roots
    /// on the grid counted once. Integer Horner evaluation of `n^d·f(i/n)`.
    pub fn sign_changes(f: &UPoly<Rational>, b: i64, n: i64) -> usize {
        let den = f
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let d = f.degree().unwrap();
        let nn = BigInt::from(n);
        // a_j · n^(d−j)
        let scaled: Vec<BigInt> = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                (c * Rational::from_integer(den.clone())).to_integer() * nn.pow((d - j) as u32)
            })
            .collect();
        let mut count = 0;
        let mut last = Sign::NoSign;
        for i in -b * n..=b * n {
            let x = BigInt::from(i);
            let v = scaled
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, a| acc * &x + a);
            let s = v.sign();
            if s == Sign::NoSign || (last != Sign::NoSign && s != last) {
                count += 1;
            }
            last = s;
        }
        count
    }
}

pub mod factors {
    use mtp_core::arith::{rat, Field, GaussianRational};
    use mtp_core::factor::Factorization;
    use mtp_core::mtp::MtpExpr;
    use mtp_core::numeric::Numeric;
    use mtp_core::poly::{gcd, resultant};
    use num_traits::Zero;

    /// Realness, unit moduli, pairwise coprimality in `y`, and numeric
    /// reconstruction of both the real and the phased product at `points`
    /// abscissae `37k/16` within relative `tol`.
    pub fn check(
        n: &mut Numeric,
        e: &MtpExpr,
        fac: &Factorization,
        points: i64,
        tol: &str,
    ) -> Result<(), String> {
        if !fac.reconstructs() {
            return Err(format!("{e}: product does not expand back"));
        }
        // C0 = lc · Π (w_i κ_i)^{r_i}, recomputed from the reported pieces.
        let mut c0 = fac.leading.clone();
        for f in &fac.factors {
            if !f.unit.is_unit_modulus() {
                return Err(format!("{e}: |C|^2 = {} for {}", f.unit.abs2(), f.expr));
            }
            let scale = &f.weight * &GaussianRational::real(f.content.clone());
            c0 = &c0 * &Field::pow(&scale, f.multiplicity);
        }
        if !c0.im.is_zero() || c0.re != fac.constant {
            return Err(format!("{e}: C0 = {c0}, constant {}", fac.constant));
        }
        for (i, a) in fac.factors.iter().enumerate() {
            for b in &fac.factors[i + 1..] {
                let (pa, pb) = (a.laurent.numer(), b.laurent.numer());
                let coprime = if pa.degree(1) == 0 && pb.degree(1) == 0 {
                    // Both free of y: polynomials in x, compare by gcd.
                    gcd(pa, pb).is_constant()
                } else {
                    !resultant(pa, pb, 1)
                        .map_err(|err| err.to_string())?
                        .is_zero()
                };
                if !coprime {
                    return Err(format!("{e}: {} and {} share a factor", a.expr, b.expr));
                }
            }
        }
        let tol = n.decimal(tol);
        let (ca, cb) = fac.phased_constant();
        let (ca, cb) = (n.rational(&ca), n.rational(&cb));
        let root = n.sqrt(&cb);
        let lead = n.mul(&ca, &root);
        for k in 1..=points {
            let x = n.rational(&rat(37 * k, 16));
            let want = n.eval_mtp(e, &x);
            let mut real = n.rational(&fac.constant);
            let mut phased = lead.clone();
            for f in &fac.factors {
                let g = n.eval_mtp(&f.expr, &x);
                real = n.mul(&real, &n.powi(&g, f.multiplicity));
                let p = n.eval_phased(&f.phased, &x);
                phased = n.mul(&phased, &n.powi(&p, f.multiplicity));
            }
            if !n.close(&real, &want, &tol) {
                return Err(format!("{e}: real product differs at x = {}/16", 37 * k));
            }
            if !n.close(&phased, &want, &tol) {
                return Err(format!("{e}: phased product differs at x = {}/16", 37 * k));
            }
        }
        Ok(())
    }
}
