//! Multi-precision floating-point evaluation. Used for diagnostics and as a
//! test oracle; no decision depends on it.

use std::collections::HashMap;

pub use astro_float::BigFloat;
use astro_float::{Consts, Radix, RoundingMode};
use num_traits::{One, Zero};

use crate::arith::{GaussianRational, Rational};
use crate::mtp::{MtpExpr, PhasedTrigExpr, Trig};
use crate::poly::QPoly;

const RM: RoundingMode = RoundingMode::ToEven;

/// Evaluation context holding the working precision (in bits) and the
/// constant cache.
pub struct Numeric {
    prec: usize,
    cc: Consts,
}

impl Numeric {
    pub fn new(prec: usize) -> Self {
        Self {
            prec,
            cc: Consts::new().expect("astro-float constant cache"),
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.prec)
    }

    pub fn rational(&mut self, q: &Rational) -> BigFloat {
        let n = BigFloat::parse(
            &q.numer().to_string(),
            Radix::Dec,
            self.prec,
            RM,
            &mut self.cc,
        );
        if q.denom().is_one() {
            return n;
        }
        let d = BigFloat::parse(
            &q.denom().to_string(),
            Radix::Dec,
            self.prec,
            RM,
            &mut self.cc,
        );
        n.div(&d, self.prec, RM)
    }

    /// Parse a decimal literal such as `"1e-20"`.
    pub fn decimal(&mut self, text: &str) -> BigFloat {
        BigFloat::parse(text, Radix::Dec, self.prec, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn powi(&self, a: &BigFloat, e: u32) -> BigFloat {
        let mut acc = self.int(1);
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, RM, &mut self.cc)
    }

    pub fn atan(&mut self, a: &BigFloat) -> BigFloat {
        a.atan(self.prec, RM, &mut self.cc)
    }

    /// `|a − b| ≤ rel·(1 + |a|)`.
    pub fn close(&self, a: &BigFloat, b: &BigFloat, rel: &BigFloat) -> bool {
        let diff = self.sub(a, b).abs();
        let scale = self.add(&self.int(1), &a.abs());
        diff.cmp(&self.mul(rel, &scale)).is_some_and(|c| c <= 0)
    }

    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        let text = a.format(Radix::Dec, RM, &mut self.cc).unwrap_or_default();
        text.parse().unwrap_or(f64::NAN)
    }

    /// `e(x)`.
    pub fn eval_mtp(&mut self, e: &MtpExpr, x: &BigFloat) -> BigFloat {
        let mut trig: HashMap<Rational, (BigFloat, BigFloat)> = HashMap::new();
        let mut acc = self.int(0);
        for (key, c) in e.terms() {
            let mut t = self.rational(c);
            t = self.mul(&t, &self.powi(x, key.p));
            if !key.is_polynomial() {
                if !trig.contains_key(&key.freq) {
                    let f = self.rational(&key.freq);
                    let arg = self.mul(&f, x);
                    let sc = (self.sin(&arg), self.cos(&arg));
                    trig.insert(key.freq.clone(), sc);
                }
                let (s, c) = &trig[&key.freq];
                t = self.mul(&t, &self.powi(s, key.q));
                t = self.mul(&t, &self.powi(c, key.r));
            }
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// `cos ψ`, `sin ψ` for `ψ = arg(u)/2` with `u` of unit modulus and
    /// `arg ∈ (−π, π]`.
    pub fn half_arg(&mut self, u: &GaussianRational) -> (BigFloat, BigFloat) {
        let one = self.int(1);
        let two = self.int(2);
        let re = self.rational(&u.re);
        let cos = self.sqrt(&self.div(&self.add(&one, &re), &two));
        let mut sin = self.sqrt(&self.div(&self.sub(&one, &re), &two));
        if u.im < Rational::zero() {
            sin = sin.neg();
        }
        (cos, sin)
    }

    pub fn eval_phased(&mut self, f: &PhasedTrigExpr, x: &BigFloat) -> BigFloat {
        let (cpsi, spsi) = self.half_arg(f.unit());
        let mut acc = self.int(0);
        for ((freq, k, trig), c) in f.terms() {
            let f = self.rational(freq);
            let arg = self.mul(&f, x);
            let (s, co) = (self.sin(&arg), self.cos(&arg));
            // cos(θ+ψ) = cosθ cosψ − sinθ sinψ, sin(θ+ψ) = sinθ cosψ + cosθ sinψ
            let v = match trig {
                Trig::Cos => self.sub(&self.mul(&co, &cpsi), &self.mul(&s, &spsi)),
                Trig::Sin => self.add(&self.mul(&s, &cpsi), &self.mul(&co, &spsi)),
            };
            let c = self.rational(c);
            let mut t = self.mul(&c, &self.powi(x, *k));
            t = self.mul(&t, &v);
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// Evaluate a polynomial at a point of floats.
    pub fn eval_qpoly(&mut self, f: &QPoly, point: &[BigFloat]) -> BigFloat {
        let mut acc = self.int(0);
        for (e, c) in f.terms() {
            let mut t = self.rational(c);
            for (v, &k) in point.iter().zip(e.iter()) {
                t = self.mul(&t, &self.powi(v, k));
            }
            acc = self.add(&acc, &t);
        }
        acc
    }
}
