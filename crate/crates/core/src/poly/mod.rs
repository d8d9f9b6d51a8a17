//! Sparse multivariate polynomials over ℚ and ℚ(i), plus the dense
//! univariate type used for real-root work.

mod gcd;
mod modular;
mod resultant;
mod roots;
mod sqfree;
mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::arith::{Field, GaussianRational, Rational};
use crate::error::{Error, Result};

pub use gcd::{content_in, gcd, primitive_part_in};
pub(crate) use modular::{
    bivariate_resultant as modular_bivariate_resultant, gcd as modular_gcd,
    resultant as modular_resultant,
};
pub use resultant::{resultant, subresultant, sylvester_resultant};
pub use roots::{
    count_real_roots, isolate_real_roots, isolate_real_roots_by, positive_root_sup, RootIsolation,
    RootMethod,
};
pub use sqfree::{squarefree_decompose, squarefree_part, SquarefreeDecomposition};
pub use univariate::UPoly;

/// Ordered variable names. Two polynomials can only be combined when they
/// share the same slice (compared by content).
pub type Vars = &'static [&'static str];

pub const XSC: Vars = &["x", "s", "c"];
pub const XY: Vars = &["x", "y"];
pub const TA: Vars = &["t", "a"];

pub type Monomial = Vec<u32>;

/// A polynomial stored as a map from exponent vectors to non-zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
}

pub type QPoly = Poly<Rational>;
pub type GPoly = Poly<GaussianRational>;

impl<C: Field> Poly<C> {
    pub fn zero(vars: Vars) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    /// The polynomial consisting of the single variable `vars[i]`.
    pub fn var(vars: Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn monomial(vars: Vars, exps: Monomial, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { vars, terms }
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| *v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<C> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(C::zero))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.vars.len());
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "variable mismatch: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    /// Degree in variable `v`; the zero polynomial has degree 0.
    pub fn degree(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn mentions(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul_ref(k)))
                .collect(),
        }
    }

    /// Multiply by the monomial `vars^shift`.
    pub fn shift(&self, shift: &[u32]) -> Self {
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            let k = C::from_rational(Rational::from_integer(e[v].into()));
            out.add_term(e2, c.mul_ref(&k));
        }
        out
    }

    /// Coefficients with respect to `v`, lowest power first. Each
    /// coefficient lives in the same variable set with `v`-degree 0.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = vec![Self::zero(self.vars); self.degree(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: Vars, v: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                out.add_term(e2, a.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: usize) -> Self {
        self.coeffs_in(v)
            .pop()
            .unwrap_or_else(|| Self::zero(self.vars))
    }

    /// Substitute the constant `value` for variable `v`.
    pub fn eval_var(&self, v: usize, value: &C) -> Self {
        let mut out = Self::zero(self.vars);
        let mut powers: Vec<C> = vec![C::one()];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            while powers.len() <= k {
                let next = powers[powers.len() - 1].mul_ref(value);
                powers.push(next);
            }
            let mut e2 = e.clone();
            e2[v] = 0;
            out.add_term(e2, c.mul_ref(&powers[k]));
        }
        out
    }

    /// Substitute `q` (same variable set) for variable `v`.
    pub fn compose_var(&self, v: usize, q: &Self) -> Self {
        self.check_vars(q);
        let coeffs = self.coeffs_in(v);
        let mut acc = Self::zero(self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.mul_ref(&x.pow(k));
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Leading term in lexicographic order (first variable most significant).
    pub fn lex_leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Scale so that the lex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.lex_leading() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    pub fn lex_leading_coeff(&self) -> C {
        self.lex_leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    /// Exact quotient `self / d`, failing when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check_vars(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.inv()));
        }
        let (dl, dc) = {
            let (e, c) = d.lex_leading().expect("non-zero");
            (e.clone(), c.clone())
        };
        let dc_inv = dc.inv();
        let mut rem = self.clone();
        let mut quo = Self::zero(self.vars);
        while let Some((e, c)) = rem.lex_leading() {
            if !e.iter().zip(&dl).all(|(a, b)| a >= b) {
                return Err(Error::InexactDivision);
            }
            let qe: Monomial = e.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let qc = c.mul_ref(&dc_inv);
            let t = Self::monomial(self.vars, qe, qc);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Ok(quo)
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.div_exact(self).is_ok()
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    /// Reinterpret in another variable set via `map[i]` = new index of old
    /// variable `i`.
    pub fn remap(&self, vars: Vars, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.vars.len());
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// View as a univariate polynomial in `v`; fails if another variable
    /// occurs.
    pub fn to_univariate(&self, v: usize) -> Result<UPoly<C>> {
        let mut coeffs = vec![C::zero(); self.degree(v) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != v && k > 0) {
                return Err(Error::InvalidArgument(format!(
                    "{} is not univariate in {}",
                    self, self.vars[v]
                )));
            }
            coeffs[e[v] as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn from_univariate(vars: Vars, v: usize, u: &UPoly<C>) -> Self {
        let mut out = Self::zero(vars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[v] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }
}

impl QPoly {
    pub fn to_gaussian(&self) -> GPoly {
        self.map_coeffs(|c| GaussianRational::real(c.clone()))
    }
}

impl GPoly {
    /// Real and imaginary parts as rational polynomials.
    pub fn split_parts(&self) -> (QPoly, QPoly) {
        let mut re = QPoly::zero(self.vars);
        let mut im = QPoly::zero(self.vars);
        for (e, c) in &self.terms {
            re.add_term(e.clone(), c.re.clone());
            im.add_term(e.clone(), c.im.clone());
        }
        (re, im)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }
}

impl<'a, C: Field> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Field> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg_ref());
        }
        out
    }
}

impl<'a, C: Field> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.check_vars(rhs);
        let mut out = Poly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Field> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

fn fmt_coeff<C: Field>(c: &C) -> (bool, String) {
    // Returns (negative, magnitude text) with parentheses for mixed complex
    // coefficients.
    let s = c.to_string();
    if let Some(rest) = s.strip_prefix('-') {
        if !rest.contains('+') && !rest.contains('-') {
            return (true, rest.to_string());
        }
    }
    if s.contains('+') || s[1..].contains('-') {
        return (false, format!("({s})"));
    }
    (false, s)
}

impl<C: Field> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Higher total degree first, then reverse lex.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.iter().enumerate() {
            let (neg, mag) = fmt_coeff(*c);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        self.vars[v].to_string()
                    } else {
                        format!("{}^{}", self.vars[v], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

/// Small builder used throughout the tests and examples: parse a sum of
/// monomials like `"x^2*s^2 - 5/9*x^2 + s"` over the given variables.
///
/// Accepts only `coef*var^k*...` terms; it is a convenience, not the MTP
/// parser.
pub fn qpoly(vars: Vars, text: &str) -> QPoly {
    let mut out = QPoly::zero(vars);
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for (i, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(b) => (-Rational::one(), b.to_string()),
            None => (Rational::one(), chunk.trim_start_matches('+').to_string()),
        };
        let mut coeff = sign;
        let mut exps = vec![0u32; vars.len()];
        for factor in body.split('*') {
            if let Some(v) = vars
                .iter()
                .position(|v| factor == *v || factor.starts_with(&format!("{v}^")))
            {
                let k = factor
                    .split('^')
                    .nth(1)
                    .map(|k| k.parse().expect("exponent"))
                    .unwrap_or(1);
                exps[v] += k;
            } else {
                let q: Rational = factor.parse().expect("rational coefficient");
                coeff *= q;
            }
        }
        out.add_term(exps, coeff);
    }
    out
}
