//! Trigonometric rewriting: multiple-angle expansion, reduction modulo the
//! circle `s² + c² − 1`, frequency normalization and the tangent half-angle
//! substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::expr::MtpExpr;
use crate::arith::{int, rational_gcd, Rational};
use crate::error::{Error, Result};
use crate::poly::{QPoly, Vars, TA, XSC};

/// Variables of the tangent half-angle form before `y = 2·arctan(t)`.
pub const TY: Vars = &["t", "y"];

/// `(sin(n·x), cos(n·x))` as polynomials in `s = sin x`, `c = cos x`, each
/// of `c`-degree at most 1.
pub fn multiple_angle(n: u32) -> (QPoly, QPoly) {
    let s = QPoly::var(XSC, 1);
    let c = QPoly::var(XSC, 2);
    let mut sn = QPoly::zero(XSC);
    let mut cn = QPoly::one(XSC);
    for _ in 0..n {
        let next_s = &(&sn * &c) + &(&cn * &s);
        let next_c = &(&cn * &c) - &(&sn * &s);
        sn = reduce(&next_s);
        cn = reduce(&next_c);
    }
    (sn, cn)
}

/// Split `f ≡ A + B·c (mod s² + c² − 1)` with `A`, `B` free of `c`.
pub fn circle_reduce(f: &QPoly) -> (QPoly, QPoly) {
    let mut a = QPoly::zero(XSC);
    let mut b = QPoly::zero(XSC);
    let one_minus_s2 = QPoly::one(XSC) - QPoly::var(XSC, 1).pow(2);
    for (k, coeff) in f.coeffs_in(2).into_iter().enumerate() {
        let t = &coeff * &one_minus_s2.pow((k / 2) as u32);
        if k % 2 == 0 {
            a = &a + &t;
        } else {
            b = &b + &t;
        }
    }
    (a, b)
}

/// Representative of `f` modulo the circle with `c`-degree at most 1.
pub fn reduce(f: &QPoly) -> QPoly {
    let (a, b) = circle_reduce(f);
    &a + &(&b * &QPoly::var(XSC, 2))
}

/// Rescale so that every frequency becomes a positive integer.
///
/// Returns `(e', scale)` with `e(x) = e'(scale·x)`; writing the frequencies
/// as `n_i / d_i`, `scale = gcd(n_i) / lcm(d_i)`.
pub fn normalize_frequency(e: &MtpExpr) -> (MtpExpr, Rational) {
    let freqs = e.frequencies();
    let Some(first) = freqs.iter().next() else {
        return (e.clone(), Rational::one());
    };
    let scale = freqs.iter().fold(first.clone(), |g, f| rational_gcd(&g, f));
    (e.rescale(&scale.recip()), scale)
}

/// `f(x, sin x, cos x)` for an expression whose frequencies are integers.
/// Multiple angles are expanded with `c`-degree at most 1; powers are kept
/// as written.
pub fn to_trivariate(e: &MtpExpr) -> Result<QPoly> {
    if let Some(f) = e.frequencies().into_iter().find(|f| !f.is_integer()) {
        return Err(Error::InvalidArgument(format!(
            "frequency {f} is not an integer; normalize first"
        )));
    }
    e.expand_at(&Rational::one())
}

/// Positive rational `κ` with `f / κ` having coprime integer coefficients.
pub fn positive_content(f: &QPoly) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Rational::one();
    }
    Rational::new(num.abs(), den)
}

/// Result of the tangent half-angle substitution applied to `g(y, s, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TanHalf {
    /// `H(t, y) = g(y, 2t/(1+t²), (1−t²)/(1+t²)) · (1+t²)^k`.
    pub angle_form: QPoly,
    /// `H(t, 2a)` with `a` standing for `arctan t`.
    pub arctan_form: QPoly,
    pub denom_power: u32,
}

/// Apply `s = 2t/(1+t²)`, `c = (1−t²)/(1+t²)` and clear the positive
/// denominator. The sign of `g` at angle `y ∈ (0, π)` equals the sign of
/// the angle form at `t = tan(y/2)`.
pub fn tan_half_substitute(g: &QPoly) -> TanHalf {
    let k = g.terms().map(|(e, _)| e[1] + e[2]).max().unwrap_or(0);
    let t = QPoly::var(TY, 0);
    let y = QPoly::var(TY, 1);
    let two_t = t.scale(&int(2));
    let one = QPoly::one(TY);
    let one_minus = &one - &(&t * &t);
    let one_plus = &one + &(&t * &t);
    let mut h = QPoly::zero(TY);
    for (e, c) in g.terms() {
        let term = &(&(&y.pow(e[0]) * &two_t.pow(e[1])) * &one_minus.pow(e[2]))
            * &one_plus.pow(k - e[1] - e[2]);
        h = &h + &term.scale(c);
    }
    let arctan = h
        .remap(TA, &[0, 1])
        .compose_var(1, &QPoly::var(TA, 1).scale(&int(2)));
    TanHalf {
        angle_form: h,
        arctan_form: arctan,
        denom_power: k,
    }
}
