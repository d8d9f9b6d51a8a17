//! Square-free decomposition: content recursion plus Yun's algorithm in a
//! main variable.

use std::collections::BTreeMap;

use super::gcd::{content_in, gcd};
use super::Poly;
use crate::arith::Field;
use crate::error::{Error, Result};

/// `f = unit · Π factor^multiplicity`, factors square-free, pairwise
/// coprime, normalized to lex-leading coefficient 1, multiplicities
/// distinct and ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition<C: Field> {
    pub unit: C,
    pub factors: Vec<(Poly<C>, u32)>,
}

impl<C: Field> SquarefreeDecomposition<C> {
    pub fn expand(&self, vars: super::Vars) -> Poly<C> {
        let mut acc = Poly::constant(vars, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

pub fn squarefree_decompose<C: Field>(f: &Poly<C>) -> Result<SquarefreeDecomposition<C>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lex_leading_coeff();
    let mut by_mult: BTreeMap<u32, Poly<C>> = BTreeMap::new();
    for (p, m) in decompose_monic(&f.monic()) {
        let slot = by_mult.entry(m).or_insert_with(|| Poly::one(f.vars()));
        *slot = &*slot * &p;
    }
    Ok(SquarefreeDecomposition {
        unit,
        factors: by_mult.into_iter().map(|(m, p)| (p.monic(), m)).collect(),
    })
}

/// Product of the distinct square-free factors, lex-monic.
pub fn squarefree_part<C: Field>(f: &Poly<C>) -> Result<Poly<C>> {
    let d = squarefree_decompose(f)?;
    let mut acc = Poly::one(f.vars());
    for (p, _) in &d.factors {
        acc = &acc * p;
    }
    Ok(acc.monic())
}

fn decompose_monic<C: Field>(f: &Poly<C>) -> Vec<(Poly<C>, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let v = (0..f.nvars())
        .filter(|&v| f.mentions(v))
        .min_by_key(|&v| f.degree(v))
        .expect("non-constant polynomial mentions a variable");
    let content = content_in(f, v);
    let primitive = f.div_exact(&content).expect("content divides");
    let mut out = decompose_monic(&content.monic());
    out.extend(yun(&primitive, v));
    out
}

fn yun<C: Field>(p: &Poly<C>, v: usize) -> Vec<(Poly<C>, u32)> {
    let mut out = Vec::new();
    let dp = p.derivative(v);
    let g = gcd(p, &dp);
    let mut b = p.div_exact(&g).expect("gcd divides");
    let c = dp.div_exact(&g).expect("gcd divides derivative");
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        b = b.div_exact(&a).expect("Yun step divides");
        let c = d.div_exact(&a).expect("Yun step divides");
        d = &c - &b.derivative(v);
        i += 1;
    }
    out
}
