use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{Field, Rational};

/// Dense univariate polynomial, lowest power first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Field> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: C) -> Self {
        Self::new(vec![r.neg_ref(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| {
                    c.mul_ref(&C::from_rational(Rational::from_integer((k as i64).into())))
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = C::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs
                        .get(i)
                        .unwrap_or(&z)
                        .add_ref(other.coeffs.get(i).unwrap_or(&z))
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::one().neg_ref()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![C::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = rem[k].mul_ref(&inv);
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].sub_ref(&q.mul_ref(c));
            }
            quo[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if let Some(g) = C::fast_gcd(self, other) {
            return g;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UPoly<Rational> {
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        sign(&self.eval(x))
    }

    /// Sign as x → +∞ (`positive = true`) or x → −∞.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        let s = sign(&self.lc());
        match self.degree() {
            Some(d) if !positive && d % 2 == 1 => s.reverse(),
            _ => s,
        }
    }

    /// Cauchy bound `1 + max |a_i / a_n|`: every root has smaller modulus.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::from_integer(1.into())
    }
}

pub(crate) fn sign(q: &Rational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl<C: Field> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = super::Poly::from_univariate(&["x"], 0, self);
        write!(f, "{p}")
    }
}
