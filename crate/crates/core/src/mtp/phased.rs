//! Phase-shifted trigonometric expressions `Σ b·x^k·trig(ωx + ψ)` with one
//! shared phase `ψ = arg(u)/2` for a unit-modulus Gaussian rational `u`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::expr::{MtpExpr, TermKey};
use crate::arith::{GaussianRational, Rational};
use crate::poly::GPoly;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Trig {
    Cos,
    Sin,
}

/// Key `(ω, x-power, trig)`. `ω = 0` is allowed and means `trig(ψ)`.
type Key = (Rational, u32, Trig);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhasedTrigExpr {
    unit: GaussianRational,
    terms: BTreeMap<Key, Rational>,
}

impl PhasedTrigExpr {
    /// `LRhom(P / (C^{1/2}·y^{p/2}))` for `P = C·y^p·con(P)` with `P` a
    /// polynomial in `(x, y)`, `y = e^{I·x/base}`.
    ///
    /// The principal square root is used: `ψ = −arg(C)/2` lies in
    /// `[−π/2, π/2)`, and `u = conj(C)` is recorded.
    pub fn from_factor(p_numer: &GPoly, c: &GaussianRational, p: i64, base: u32) -> Self {
        let unit = c.conj();
        let d = Rational::from_integer(base.into());
        let half_p = Rational::new(p.into(), 2.into());
        let mut out = Self {
            unit,
            terms: BTreeMap::new(),
        };
        for (e, a) in p_numer.terms() {
            let k = Rational::from_integer(e[1].into());
            let two = Rational::from_integer(2.into());
            let (weight, freq) = if k > half_p {
                (two, (&k - &half_p) / &d)
            } else if k == half_p {
                (Rational::one(), Rational::zero())
            } else {
                continue;
            };
            out.add(freq.clone(), e[0], Trig::Cos, &weight * &a.re);
            out.add(freq, e[0], Trig::Sin, -(&weight * &a.im));
        }
        out.normalize();
        out
    }

    fn add(&mut self, freq: Rational, xpow: u32, trig: Trig, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (freq, xpow, trig);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Fold the phases `ψ ∈ {0, −π/2}` into phase-free terms.
    fn normalize(&mut self) {
        if self.unit.is_one() {
            let terms = std::mem::take(&mut self.terms);
            for ((freq, k, trig), c) in terms {
                if freq.is_zero() && trig == Trig::Sin {
                    continue;
                }
                self.add(freq, k, trig, c);
            }
        } else if self.unit == -GaussianRational::one() {
            // cos(θ − π/2) = sin θ, sin(θ − π/2) = −cos θ
            let terms = std::mem::take(&mut self.terms);
            self.unit = GaussianRational::one();
            for ((freq, k, trig), c) in terms {
                match trig {
                    Trig::Cos if !freq.is_zero() => self.add(freq, k, Trig::Sin, c),
                    Trig::Cos => {}
                    Trig::Sin => self.add(freq, k, Trig::Cos, -c),
                }
            }
        }
    }

    /// The unit `u` whose half-argument is the phase.
    pub fn unit(&self) -> &GaussianRational {
        &self.unit
    }

    pub fn is_phase_free(&self) -> bool {
        self.unit.is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rational)> {
        self.terms.iter()
    }

    /// The same expression as an MTP when there is no phase.
    pub fn to_mtp(&self) -> Option<MtpExpr> {
        if !self.is_phase_free() {
            return None;
        }
        Some(MtpExpr::from_terms(self.terms.iter().map(
            |((freq, k, trig), c)| {
                let key = match trig {
                    _ if freq.is_zero() => TermKey::new(Rational::one(), *k, 0, 0),
                    Trig::Cos => TermKey::new(freq.clone(), *k, 0, 1),
                    Trig::Sin => TermKey::new(freq.clone(), *k, 1, 0),
                };
                (key, c.clone())
            },
        )))
    }

    fn phase_text(&self) -> Option<String> {
        if self.is_phase_free() {
            return None;
        }
        Some(match self.unit.quarter_turns() {
            Some(1) => "pi/4".to_string(),
            Some(3) => "-pi/4".to_string(),
            _ => format!("arg({})/2", self.unit),
        })
    }
}

fn freq_text(freq: &Rational) -> String {
    let n = freq.numer();
    let d = freq.denom();
    let head = if n.is_one() {
        "x".to_string()
    } else {
        format!("{n}*x")
    };
    if d.is_one() {
        head
    } else {
        format!("{head}/{d}")
    }
}

impl fmt::Display for PhasedTrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let phase = self.phase_text();
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by(|((fa, ka, ta), _), ((fb, kb, tb), _)| {
            fb.cmp(fa).then(kb.cmp(ka)).then(ta.cmp(tb))
        });
        for (i, ((freq, k, trig), c)) in order.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            let mag = c.abs();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            match k {
                0 => {}
                1 => parts.push("x".to_string()),
                k => parts.push(format!("x^{k}")),
            }
            let name = match trig {
                Trig::Cos => "cos",
                Trig::Sin => "sin",
            };
            let arg = match (&phase, freq.is_zero()) {
                (None, true) => None,
                (None, false) => Some(freq_text(freq)),
                (Some(ph), true) => Some(ph.clone()),
                (Some(ph), false) => Some(format!("{ph} + {}", freq_text(freq))),
            };
            if let Some(arg) = arg {
                parts.push(format!("{name}({arg})"));
            }
            if parts.is_empty() {
                parts.push("1".to_string());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
