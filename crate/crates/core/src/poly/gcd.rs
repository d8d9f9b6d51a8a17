//! Multivariate gcd by recursive content extraction and a primitive
//! pseudo-remainder sequence in one main variable.

use super::Poly;
use crate::arith::Field;

/// Greatest common divisor, scaled so its lex-leading coefficient is 1.
/// `gcd(f, 0)` is `f` normalized; `gcd(0, 0) = 0`.
pub fn gcd<C: Field>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(f.vars());
    }
    let present: Vec<usize> = (0..f.nvars())
        .filter(|&v| f.mentions(v) || g.mentions(v))
        .collect();
    if present.len() == 1 {
        let v = present[0];
        let (a, b) = (
            f.to_univariate(v).expect("univariate"),
            g.to_univariate(v).expect("univariate"),
        );
        return Poly::from_univariate(f.vars(), v, &a.gcd(&b));
    }
    let v = main_variable(f, g, &present);
    let (cf, pf) = split_content(f, v);
    let (cg, pg) = split_content(g, v);
    let c = gcd(&cf, &cg);
    let p = primitive_gcd(pf, pg, v);
    (&c * &p).monic()
}

/// Variable with the smallest positive combined degree; fewer remainder
/// steps keeps coefficient growth down.
fn main_variable<C: Field>(f: &Poly<C>, g: &Poly<C>, present: &[usize]) -> usize {
    *present
        .iter()
        .filter(|&&v| f.mentions(v) && g.mentions(v))
        .min_by_key(|&&v| f.degree(v).max(g.degree(v)))
        .unwrap_or(&present[0])
}

/// Content of `f` as a polynomial in `v`: gcd of its coefficients.
pub fn content_in<C: Field>(f: &Poly<C>, v: usize) -> Poly<C> {
    let mut c = Poly::zero(f.vars());
    for k in f.coeffs_in(v) {
        if k.is_zero() {
            continue;
        }
        c = gcd(&c, &k);
        if c.is_constant() {
            return Poly::one(f.vars());
        }
    }
    c
}

pub fn primitive_part_in<C: Field>(f: &Poly<C>, v: usize) -> Poly<C> {
    split_content(f, v).1
}

fn split_content<C: Field>(f: &Poly<C>, v: usize) -> (Poly<C>, Poly<C>) {
    if f.is_zero() {
        return (Poly::zero(f.vars()), Poly::zero(f.vars()));
    }
    let c = content_in(f, v);
    let p = f.div_exact(&c).expect("content divides polynomial");
    (c, p)
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `v`.
pub(crate) fn prem<C: Field>(a: &Poly<C>, b: &Poly<C>, v: usize) -> Poly<C> {
    let db = b.degree(v);
    let lb = b.lc_in(v);
    let mut a = a.clone();
    while !a.is_zero() && a.degree(v) >= db {
        let k = a.degree(v) - db;
        let la = a.lc_in(v);
        let mut shift = vec![0; a.nvars()];
        shift[v] = k;
        a = &(&lb * &a) - &(&la * &b.shift(&shift));
    }
    a
}

fn primitive_gcd<C: Field>(a: Poly<C>, b: Poly<C>, v: usize) -> Poly<C> {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.degree(v) == 0 {
            return Poly::one(a.vars());
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, GaussianRational};
    use crate::poly::{qpoly, GPoly, XSC, XY};
    use num_traits::One;

    #[test]
    fn gcd_of_polynomial_with_itself() {
        let f = qpoly(XSC, "3*x^2*s - x*c + 2");
        assert_eq!(gcd(&f, &f), f.monic());
        assert_eq!(gcd(&f, &Poly::zero(XSC)), f.monic());
    }

    #[test]
    fn gcd_univariate() {
        let a = qpoly(XY, "x^2 - 1");
        let b = qpoly(XY, "x - 1");
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn gcd_over_gaussian_shared_linear_factor() {
        // (y - I)^2 * Q and (y - I) * R with Q, R coprime to y - I.
        let i = GaussianRational::i();
        let y_minus_i = GPoly::var(XY, 1) - GPoly::constant(XY, i.clone());
        let q = qpoly(XY, "x*y^2 + 3*x - y").to_gaussian();
        let r = qpoly(XY, "y^3 + x^2 + 2").to_gaussian();
        let f = &(&y_minus_i * &y_minus_i) * &q;
        let g = &y_minus_i * &r;
        let d = gcd(&f, &g);
        assert_eq!(d, y_minus_i.monic());
        assert!(f.div_exact(&d).is_ok() && g.div_exact(&d).is_ok());
    }

    #[test]
    fn gcd_multivariate_with_content() {
        let common = qpoly(XSC, "x*s + c - 1");
        let f = &(&common * &qpoly(XSC, "x^2 + 1")) * &qpoly(XSC, "s - 2");
        let g = &(&common * &qpoly(XSC, "x^2 + 1")) * &qpoly(XSC, "c + x");
        let expected = (&common * &qpoly(XSC, "x^2 + 1")).monic();
        assert_eq!(gcd(&f, &g), expected);
        assert_eq!(content_in(&f, 1), qpoly(XSC, "x^2 + 1").monic());
        assert_eq!(gcd(&qpoly(XSC, "x"), &qpoly(XSC, "s")), Poly::one(XSC));
        assert!(gcd(&Poly::constant(XSC, int(3)), &f)
            .constant_value()
            .unwrap()
            .is_one());
    }
}
