//! Modular gcd of univariate rational polynomials.
//!
//! Euclid over ℚ is exact but its coefficients swell quickly past degree
//! fifty or so. Here the gcd is computed modulo word-size primes, lifted by
//! Chinese remaindering, and accepted only after exact trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Poly, UPoly};
use crate::arith::Rational;

/// Primitive integer polynomial with positive leading coefficient and the
/// same roots as `f`.
pub(crate) fn primitive_integer(f: &UPoly<Rational>) -> Vec<BigInt> {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

/// Moduli stay below 2^32 so products fit in a `u64`.
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(p < 1 << 32);
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // These bases are deterministic for all 64-bit integers.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^32, largest first.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd over F_p.
fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().expect("nonzero"), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let q = mul_mod(*a.last().expect("nonzero"), inv, p);
            let off = a.len() - 1 - db;
            for (j, c) in b.iter().enumerate() {
                let t = mul_mod(q, *c, p);
                a[off + j] = (a[off + j] + p - t) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = pow_mod(lc, p - 2, p);
        for c in &mut a {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn divides(d: &[BigInt], f: &[BigInt]) -> bool {
    let to_q = |v: &[BigInt]| UPoly::new(v.iter().cloned().map(Rational::from_integer).collect());
    to_q(f).divrem(&to_q(d)).1.is_zero()
}

/// Monic gcd of two rational polynomials, not both zero.
pub(crate) fn gcd(a: &UPoly<Rational>, b: &UPoly<Rational>) -> UPoly<Rational> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return UPoly::constant(Rational::one());
    }
    let (fa, fb) = (primitive_integer(a), primitive_integer(b));
    let gamma = fa.last().expect("nonzero").gcd(fb.last().expect("nonzero"));
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut last_candidate: Option<Vec<BigInt>> = None;
    for p in Primes((1 << 32) + 1) {
        let pb = BigInt::from(p);
        if (fa.last().expect("nonzero") % &pb).is_zero()
            || (fb.last().expect("nonzero") % &pb).is_zero()
        {
            continue;
        }
        let g = gcd_mod(reduce(&fa, p), reduce(&fb, p), p);
        if g.len() == 1 {
            return UPoly::constant(Rational::one());
        }
        let gm = (&gamma).mod_floor(&pb).to_u64().expect("residue fits");
        let scaled: Vec<BigInt> = g.iter().map(|c| BigInt::from(mul_mod(*c, gm, p))).collect();
        acc = match acc.take() {
            Some((h, m)) if h.len() == scaled.len() => {
                // h ≡ previous residues mod m, combine with the new prime.
                let m_inv = BigInt::from(pow_mod(
                    (&m).mod_floor(&pb).to_u64().expect("fits"),
                    p - 2,
                    p,
                ));
                let h2: Vec<BigInt> = h
                    .iter()
                    .zip(&scaled)
                    .map(|(hc, sc)| {
                        let t = ((sc - hc) * &m_inv).mod_floor(&pb);
                        hc + &m * t
                    })
                    .collect();
                Some((h2, m * &pb))
            }
            // A larger degree marks an unlucky prime.
            Some((h, m)) if h.len() < scaled.len() => Some((h, m)),
            _ => {
                last_candidate = None;
                Some((scaled, pb))
            }
        };
        let (h, m) = acc.as_ref().expect("set above");
        let lifted: Vec<BigInt> = h.iter().map(|c| symmetric(c, m)).collect();
        let content = lifted.iter().fold(BigInt::zero(), |x, c| x.gcd(c));
        let cand: Vec<BigInt> = lifted.iter().map(|c| c / &content).collect();
        if last_candidate.as_ref() == Some(&cand) && divides(&cand, &fa) && divides(&cand, &fb) {
            let g = UPoly::new(cand.into_iter().map(Rational::from_integer).collect());
            return g.monic();
        }
        last_candidate = Some(cand);
    }
    unreachable!("the prime iterator is unbounded")
}

/// Integer polynomial `den · f` with `den` the lcm of the denominators.
fn cleared(f: &UPoly<Rational>) -> (Vec<BigInt>, BigInt) {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    (ints, den)
}

/// Resultant over F_p by the Euclidean remainder sequence; the degrees
/// must survive reduction mod p.
fn resultant_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    let mut acc = 1u64;
    loop {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return mul_mod(acc, pow_mod(b[0], da as u64, p), p);
        }
        if da == 0 {
            return mul_mod(acc, pow_mod(a[0], db as u64, p), p);
        }
        let lb = *b.last().expect("nonzero");
        let inv = pow_mod(lb, p - 2, p);
        let mut r = a;
        while r.len() > db {
            let q = mul_mod(*r.last().expect("nonzero"), inv, p);
            let off = r.len() - 1 - db;
            for (j, c) in b.iter().enumerate() {
                let t = mul_mod(q, *c, p);
                r[off + j] = (r[off + j] + p - t) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if da % 2 == 1 && db % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = mul_mod(acc, pow_mod(lb, (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
}

/// Upper bound on log2 of the Euclidean norm.
fn norm_bits(v: &[BigInt]) -> u64 {
    let max = v.iter().map(|c| c.bits()).max().unwrap_or(0);
    max + (64 - (v.len() as u64).leading_zeros() as u64) / 2 + 1
}

/// Resultant of two rational polynomials of positive degree, computed
/// modulo enough primes to exceed the Hadamard bound.
pub(crate) fn resultant(a: &UPoly<Rational>, b: &UPoly<Rational>) -> Rational {
    let (ia, da) = cleared(a);
    let (ib, db) = cleared(b);
    let (m, n) = (ia.len() - 1, ib.len() - 1);
    let bits = norm_bits(&ia) * n as u64 + norm_bits(&ib) * m as u64 + 2;
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    for p in Primes((1 << 32) + 1) {
        let pb = BigInt::from(p);
        if (ia.last().expect("nonzero") % &pb).is_zero()
            || (ib.last().expect("nonzero") % &pb).is_zero()
        {
            continue;
        }
        let r = BigInt::from(resultant_mod(reduce(&ia, p), reduce(&ib, p), p));
        let m_inv = BigInt::from(pow_mod(
            (&modulus).mod_floor(&pb).to_u64().expect("fits"),
            p - 2,
            p,
        ));
        let t = ((r - &value) * m_inv).mod_floor(&pb);
        value += &modulus * t;
        modulus *= pb;
        if modulus.bits() > bits {
            break;
        }
    }
    let scale = da.pow(n as u32) * db.pow(m as u32);
    Rational::new(symmetric(&value, &modulus), scale)
}

/// Newton interpolation over F_p; the points must be distinct.
fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    // The points are increasing small integers, so every difference has a
    // precomputed inverse.
    let span = (xs[n - 1] - xs[0]) as usize;
    let inv: Vec<u64> = (0..=span as u64)
        .map(|d| if d == 0 { 0 } else { pow_mod(d, p - 2, p) })
        .collect();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            dd[i] = mul_mod(num, inv[(xs[i] - xs[i - j]) as usize], p);
        }
    }
    let mut acc = vec![dd[n - 1]];
    for i in (0..n - 1).rev() {
        // acc = acc * (x - xs[i]) + dd[i]
        let mut next = vec![0u64; acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - mul_mod(*c, xs[i], p)) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        acc = next;
    }
    acc
}

/// Dense image mod p: `rows[i]` holds the coefficients in `u` of `v^i`.
fn dense_mod(f: &Poly<Rational>, v: usize, u: usize, p: u64) -> Vec<Vec<u64>> {
    let pb = BigInt::from(p);
    let mut rows = vec![vec![0u64; f.degree(u) as usize + 1]; f.degree(v) as usize + 1];
    for (m, c) in f.terms() {
        let r = c.numer().mod_floor(&pb).to_u64().expect("residue fits");
        rows[m[v] as usize][m[u] as usize] = r;
    }
    rows
}

fn horner_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter()
        .rev()
        .fold(0, |acc, k| (mul_mod(acc, x, p) + k) % p)
}

fn one_norm_bits(f: &Poly<Rational>) -> u64 {
    let sum = f
        .terms()
        .fold(BigInt::zero(), |acc, (_, c)| acc + c.numer().abs());
    sum.bits()
}

/// Resultant in `v` of two rational polynomials whose only other variable
/// is `u`. Each prime gets its own evaluation/interpolation pass; the
/// coefficients are lifted past the bound
/// `‖res‖₁ ≤ ‖f‖₁^deg_v(g) · ‖g‖₁^deg_v(f)` for integer inputs.
pub(crate) fn bivariate_resultant(
    f: &Poly<Rational>,
    g: &Poly<Rational>,
    v: usize,
    u: usize,
) -> Poly<Rational> {
    let den = |h: &Poly<Rational>| {
        h.terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    };
    let (df, dg) = (den(f), den(g));
    let ff = f.scale(&Rational::from_integer(df.clone()));
    let gg = g.scale(&Rational::from_integer(dg.clone()));
    let (m, n) = (f.degree(v), g.degree(v));
    let bits = one_norm_bits(&ff) * n as u64 + one_norm_bits(&gg) * m as u64 + 2;
    let npts = (f.degree(u) * n + g.degree(u) * m) as usize + 1;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); npts];
    for p in Primes((1 << 32) + 1) {
        let (fr, gr) = (dense_mod(&ff, v, u, p), dense_mod(&gg, v, u, p));
        if fr[m as usize].iter().all(|&c| c == 0) || gr[n as usize].iter().all(|&c| c == 0) {
            continue;
        }
        let (mut xs, mut ys) = (Vec::with_capacity(npts), Vec::with_capacity(npts));
        let mut k = 0u64;
        while xs.len() < npts {
            let at = |rows: &[Vec<u64>]| -> Vec<u64> {
                let mut out: Vec<u64> = rows.iter().map(|r| horner_mod(r, k, p)).collect();
                while out.last() == Some(&0) {
                    out.pop();
                }
                out
            };
            let (a, b) = (at(&fr), at(&gr));
            if a.len() == m as usize + 1 && b.len() == n as usize + 1 {
                ys.push(resultant_mod(a, b, p));
                xs.push(k);
            }
            k += 1;
        }
        let image = interpolate_mod(&xs, &ys, p);
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(pow_mod(
            (&modulus).mod_floor(&pb).to_u64().expect("fits"),
            p - 2,
            p,
        ));
        for (a, r) in acc
            .iter_mut()
            .zip(image.iter().chain(std::iter::repeat(&0)))
        {
            let t = ((BigInt::from(*r) - &*a) * &m_inv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= pb;
        if modulus.bits() > bits {
            break;
        }
    }
    let scale = Rational::from_integer(df.pow(n) * dg.pow(m));
    let coeffs: Vec<Rational> = acc
        .iter()
        .map(|c| Rational::from_integer(symmetric(c, &modulus)) / &scale)
        .collect();
    Poly::from_univariate(f.vars(), u, &UPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn up(c: &[i64]) -> UPoly<Rational> {
        UPoly::new(c.iter().map(|&k| int(k)).collect())
    }

    fn euclid(a: &UPoly<Rational>, b: &UPoly<Rational>) -> UPoly<Rational> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    #[test]
    fn resultant_matches_euclid() {
        use crate::poly::resultant::univariate_resultant;
        let a = up(&[7, -3, 0, 11, 5]).scale(&crate::arith::rat(1, 6));
        let b = up(&[123456789, 0, 987654321, -1]);
        assert_eq!(resultant(&a, &b), univariate_resultant(&a, &b));
        assert_eq!(resultant(&b, &a), univariate_resultant(&b, &a));
        let c = up(&[-2, 1]).mul(&up(&[1, 1, 1]));
        assert_eq!(resultant(&c, &up(&[-2, 1]).mul(&up(&[3, 0, 1]))), int(0));
    }

    #[test]
    fn bivariate_matches_subresultant() {
        use crate::poly::{qpoly, subresultant, XSC};
        let f = qpoly(XSC, "x^3*s^2 - 2/7*x*s + 5 - x^2");
        let g = qpoly(XSC, "x*s^3 + s^2 - 7/2*x^4 + 1");
        assert_eq!(
            bivariate_resultant(&f, &g, 1, 0),
            subresultant(&f, &g, 1).unwrap()
        );
        assert_eq!(
            bivariate_resultant(&g, &f, 0, 1),
            subresultant(&g, &f, 0).unwrap()
        );
        let h = qpoly(XSC, "x*s^2 - 1/3*x^2");
        assert_eq!(
            bivariate_resultant(&h, &h.derivative(1), 1, 0),
            subresultant(&h, &h.derivative(1), 1).unwrap()
        );
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = Primes((1 << 32) + 1).take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(is_prime(1_000_000_007) && !is_prime(1_000_000_007 * 3));
        assert!(is_prime(ps[0]));
    }

    #[test]
    fn matches_euclid() {
        // (x − 2)^2 (3x + 1) and (x − 2)(x^2 + 5)
        let a = up(&[-4, 4, -1]).mul(&up(&[1, 3])).mul(&up(&[-2, 1]));
        let b = up(&[-2, 1]).mul(&up(&[5, 0, 1]));
        assert_eq!(gcd(&a, &b), euclid(&a, &b));
        assert_eq!(gcd(&a, &a.derivative()), euclid(&a, &a.derivative()));
        assert_eq!(gcd(&up(&[1, 1]), &up(&[-1, 1])), up(&[1]));
        let big = up(&[7, -3, 0, 11]).mul(&up(&[123456789, 0, 987654321]));
        let other = up(&[123456789, 0, 987654321]).mul(&up(&[1, 1, 1, 1, 1]));
        assert_eq!(gcd(&big, &other), up(&[123456789, 0, 987654321]).monic());
    }
}
