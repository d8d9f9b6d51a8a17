//! Resultants with respect to one variable.

use super::{Poly, UPoly};
use crate::arith::{Field, Rational};
use crate::error::{Error, Result};

fn check_degrees<C: Field>(f: &Poly<C>, g: &Poly<C>, v: usize) -> Result<()> {
    if f.degree(v) == 0 && g.degree(v) == 0 {
        return Err(Error::ResultantDegree);
    }
    Ok(())
}

/// `lc(b)^(deg a - deg b + 1) · a mod b` in variable `v`.
fn prem_exact<C: Field>(a: &Poly<C>, b: &Poly<C>, v: usize) -> Poly<C> {
    let db = b.degree(v);
    let lb = b.lc_in(v);
    let mut e = a.degree(v) - db + 1;
    let mut a = a.clone();
    while !a.is_zero() && a.degree(v) >= db {
        let k = a.degree(v) - db;
        let la = a.lc_in(v);
        let mut shift = vec![0; a.nvars()];
        shift[v] = k;
        a = &(&lb * &a) - &(&la * &b.shift(&shift));
        e -= 1;
    }
    &a * &lb.pow(e)
}

/// Sylvester resultant of `f` and `g` with respect to variable `v`,
/// computed by the subresultant pseudo-remainder sequence.
///
/// The sign convention is that of the Sylvester determinant with the rows
/// of `f` first.
pub fn resultant<C: Field>(f: &Poly<C>, g: &Poly<C>, v: usize) -> Result<Poly<C>> {
    check_degrees(f, g, v)?;
    let vars = f.vars();
    if f.is_zero() || g.is_zero() {
        return Ok(Poly::zero(vars));
    }
    let others: Vec<usize> = (0..f.nvars())
        .filter(|&u| u != v && (f.mentions(u) || g.mentions(u)))
        .collect();
    match others[..] {
        [] => {
            let (a, b) = (f.to_univariate(v)?, g.to_univariate(v)?);
            return Ok(Poly::constant(vars, univariate_resultant(&a, &b)));
        }
        [u] => return interpolated_resultant(f, g, v, u),
        _ => {}
    }
    subresultant_prs(f, g, v)
}

fn subresultant_prs<C: Field>(f: &Poly<C>, g: &Poly<C>, v: usize) -> Result<Poly<C>> {
    let vars = f.vars();
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut negate = false;
    if a.degree(v) < b.degree(v) {
        if a.degree(v) % 2 == 1 && b.degree(v) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree(v) == 0 {
        let r = b.pow(a.degree(v));
        return Ok(if negate { -&r } else { r });
    }
    let mut g_ = Poly::one(vars);
    let mut h = Poly::one(vars);
    loop {
        let (da, db) = (a.degree(v), b.degree(v));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = prem_exact(&a, &b, v);
        if r.is_zero() {
            return Ok(Poly::zero(vars));
        }
        a = b;
        let divisor = &g_ * &h.pow(delta);
        b = r.div_exact(&divisor)?;
        g_ = a.lc_in(v);
        h = if delta == 0 {
            h
        } else {
            g_.pow(delta).div_exact(&h.pow(delta - 1))?
        };
        if b.degree(v) == 0 {
            let da = a.degree(v);
            let num = b.pow(da);
            let res = num.div_exact(&h.pow(da - 1))?;
            return Ok(if negate { -&res } else { res });
        }
    }
}

/// Resultant of two univariate polynomials by the Euclidean remainder
/// sequence over the field.
pub(crate) fn univariate_resultant<C: Field>(a: &UPoly<C>, b: &UPoly<C>) -> C {
    if a.degree().unwrap_or(0) > 0 && b.degree().unwrap_or(0) > 0 {
        if let Some(r) = C::fast_resultant(a, b) {
            return r;
        }
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = C::one();
    loop {
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return C::zero();
        };
        if db == 0 {
            return acc.mul_ref(&b.lc().pow(da as u32));
        }
        if da == 0 {
            return acc.mul_ref(&a.lc().pow(db as u32));
        }
        let r = a.rem(&b);
        let Some(dr) = r.degree() else {
            return C::zero();
        };
        if da % 2 == 1 && db % 2 == 1 {
            acc = acc.neg_ref();
        }
        acc = acc.mul_ref(&b.lc().pow((da - dr) as u32));
        a = b;
        b = r;
    }
}

/// Resultant in `v` when `u` is the only other variable: specialize `u` at
/// enough integers to pin down the answer, then interpolate.
fn interpolated_resultant<C: Field>(
    f: &Poly<C>,
    g: &Poly<C>,
    v: usize,
    u: usize,
) -> Result<Poly<C>> {
    if let Some(r) = C::fast_bivariate_resultant(f, g, v, u) {
        return Ok(r);
    }
    let (fv, gv) = (f.degree(v), g.degree(v));
    let bound = (f.degree(u) * gv + g.degree(u) * fv) as usize;
    let (lf, lg) = (f.lc_in(v), g.lc_in(v));
    let mut xs: Vec<C> = Vec::with_capacity(bound + 1);
    let mut ys: Vec<C> = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        let x = C::from_rational(Rational::from_integer(k.into()));
        // Alternate 0, 1, -1, 2, -2, ... to keep the points small.
        k = if k > 0 { -k } else { 1 - k };
        let at = |p: &Poly<C>| p.eval_var(u, &x);
        if at(&lf).is_zero() || at(&lg).is_zero() {
            continue;
        }
        let (a, b) = (at(f).to_univariate(v)?, at(g).to_univariate(v)?);
        ys.push(univariate_resultant(&a, &b));
        xs.push(x);
    }
    Ok(Poly::from_univariate(
        f.vars(),
        u,
        &newton_interpolate(&xs, &ys),
    ))
}

fn newton_interpolate<C: Field>(xs: &[C], ys: &[C]) -> UPoly<C> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = dd[i]
                .sub_ref(&dd[i - 1])
                .div_ref(&xs[i].sub_ref(&xs[i - j]));
        }
    }
    let mut acc = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = acc
            .mul(&UPoly::linear_root(xs[i].clone()))
            .add(&UPoly::constant(dd[i].clone()));
    }
    acc
}

/// Resultant by the subresultant sequence alone, with no specialization
/// shortcuts. Exposed for cross-checking.
pub fn subresultant<C: Field>(f: &Poly<C>, g: &Poly<C>, v: usize) -> Result<Poly<C>> {
    check_degrees(f, g, v)?;
    if f.is_zero() || g.is_zero() {
        return Ok(Poly::zero(f.vars()));
    }
    subresultant_prs(f, g, v)
}

/// Resultant as the determinant of the Sylvester matrix, evaluated by
/// fraction-free (Bareiss) elimination. Slower than [`resultant`]; kept as
/// an independent cross-check.
pub fn sylvester_resultant<C: Field>(f: &Poly<C>, g: &Poly<C>, v: usize) -> Result<Poly<C>> {
    check_degrees(f, g, v)?;
    let vars = f.vars();
    if f.is_zero() || g.is_zero() {
        return Ok(Poly::zero(vars));
    }
    let (m, n) = (f.degree(v) as usize, g.degree(v) as usize);
    let size = m + n;
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    let mut mat = vec![vec![Poly::zero(vars); size]; size];
    for i in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + i][i + n - k] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det<C: Field>(mut mat: Vec<Vec<Poly<C>>>) -> Result<Poly<C>> {
    let size = mat.len();
    let vars = mat[0][0].vars();
    let mut sign = false;
    let mut prev = Poly::one(vars);
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Poly::zero(vars)),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if sign { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qpoly, XSC};

    #[test]
    fn circle_then_discriminant_chain() {
        let f = qpoly(XSC, "2/3*x + x*c - s");
        let circle = qpoly(XSC, "s^2 + c^2 - 1");
        let f1 = resultant(&f, &circle, 2).unwrap();
        assert_eq!(f1, qpoly(XSC, "x^2*s^2 - 5/9*x^2 - 4/3*x*s + s^2"));
        let g = resultant(&f1, &f1.derivative(1), 1).unwrap();
        assert_eq!(g, qpoly(XSC, "-20/9*x^6 - 56/9*x^4 - 4*x^2"));
        assert_eq!(sylvester_resultant(&f1, &f1.derivative(1), 1).unwrap(), g);
    }

    #[test]
    fn linear_difference() {
        // res(x - a, x - b, x) = a - b; here a = s, b = c.
        let f = qpoly(XSC, "x - s");
        let g = qpoly(XSC, "x - c");
        assert_eq!(resultant(&f, &g, 0).unwrap(), qpoly(XSC, "s - c"));
        assert_eq!(sylvester_resultant(&f, &g, 0).unwrap(), qpoly(XSC, "s - c"));
    }

    #[test]
    fn symbolic_quadratic_check() {
        // res(b*c + a, c^2 + e, c) = a^2 + b^2*e with a = x, b = s, e = 1.
        let f = qpoly(XSC, "s*c + x");
        let g = qpoly(XSC, "c^2 + 1");
        assert_eq!(resultant(&f, &g, 2).unwrap(), qpoly(XSC, "x^2 + s^2"));
    }

    #[test]
    fn misuse_is_reported() {
        let f = qpoly(XSC, "x + 1");
        let g = qpoly(XSC, "s");
        assert_eq!(resultant(&f, &g, 2), Err(Error::ResultantDegree));
        assert_eq!(sylvester_resultant(&f, &g, 2), Err(Error::ResultantDegree));
    }

    #[test]
    fn agrees_with_determinant_on_mixed_degrees() {
        let f = qpoly(XSC, "x*s^3 - 2*s + c^2");
        let g = qpoly(XSC, "s^2*c + x - 1");
        for (a, b) in [(&f, &g), (&g, &f)] {
            assert_eq!(
                resultant(a, b, 1).unwrap(),
                sylvester_resultant(a, b, 1).unwrap()
            );
        }
        let k = qpoly(XSC, "3*x");
        assert_eq!(
            resultant(&k, &f, 1).unwrap(),
            sylvester_resultant(&k, &f, 1).unwrap()
        );
        assert_eq!(resultant(&f, &k, 1).unwrap(), qpoly(XSC, "27*x^3"));
    }

    #[test]
    fn interpolation_matches_subresultant() {
        let f = qpoly(XSC, "x^3*s^2 - 2*x*s + 5 - x^2");
        let g = qpoly(XSC, "x*s^3 + s^2 - 7/2*x^4 + 1");
        assert_eq!(
            resultant(&f, &g, 1).unwrap(),
            subresultant(&f, &g, 1).unwrap()
        );
        assert_eq!(
            resultant(&g, &f, 0).unwrap(),
            subresultant(&g, &f, 0).unwrap()
        );
        let h = qpoly(XSC, "x*s - 1");
        assert_eq!(resultant(&h, &h.derivative(1), 1).unwrap(), qpoly(XSC, "x"));
    }
}
