//! Square-free factorization of an MTP into real-valued factors.
//!
//! The Laurent image `N(x, y)/y^s` of a real MTP is self-conjugate. Each
//! square-free factor `P` of `N` over ℚ(i) satisfies `P = C·y^p·con(P)`
//! with `|C| = 1`, and `LRhom(P / (w·y^{p/2}))` with `w = 1 + C` (or `w = I`
//! when `C = −1`) is a real MTP with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::mtp::{to_laurent, to_laurent_with_base, LaurentPoly, MtpExpr, PhasedTrigExpr};
use crate::poly::{squarefree_decompose, GPoly, XY};

/// One real factor `g` together with its Laurent witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealFactor {
    /// `g`, scaled to coprime integer coefficients.
    pub expr: MtpExpr,
    /// `LRhom(P / (C^{1/2}·y^{p/2}))`, a positive multiple of `g`.
    pub phased: PhasedTrigExpr,
    pub multiplicity: u32,
    /// The square-free factor `P` of the Laurent numerator.
    pub laurent: LaurentPoly,
    /// `C` with `P = C·y^p·con(P)`.
    pub unit: GaussianRational,
    /// `p`, in powers of the working variable `y = e^{I·x/D}`.
    pub degree: i64,
    pub weight: GaussianRational,
    /// Positive `κ` with `LRhom(P/(w·y^{p/2})) = κ·g`.
    pub content: Rational,
}

/// `F = constant · Π g_i^{r_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub image: LaurentPoly,
    /// Unit of the square-free decomposition of the Laurent numerator.
    pub leading: GaussianRational,
    pub constant: Rational,
    pub factors: Vec<RealFactor>,
}

/// `(C, p)` with `P = C·y^p·con(P)`.
pub fn selfconj_constants(p: &LaurentPoly) -> Result<(GaussianRational, i64)> {
    let n = p.numer();
    let Some((e, alpha)) = n.lex_leading() else {
        return Err(Error::ZeroPolynomial);
    };
    let d = n.degree(1);
    let rev = GPoly::from_terms(XY, n.terms().map(|(e, c)| (vec![e[0], d - e[1]], c.conj())));
    let mirror = rev.coeff(e);
    let not_selfconj = || Error::NotSelfConjugate(p.to_string());
    if mirror.is_zero() {
        return Err(not_selfconj());
    }
    let c = alpha.checked_div(&mirror)?;
    if rev.scale(&c) != *n {
        return Err(not_selfconj());
    }
    debug_assert!(c.is_unit_modulus());
    Ok((c, p.conjugate_degree()))
}

/// The rotation `w` making `P/(w·y^{p/2})` self-conjugate.
pub fn weight(c: &GaussianRational) -> GaussianRational {
    if *c == -GaussianRational::one() {
        GaussianRational::i()
    } else {
        GaussianRational::one() + c.clone()
    }
}

/// `LRhom(P / (w·y^{p/2}))` as an MTP with rational coefficients.
pub fn real_factor(p: &LaurentPoly, c: &GaussianRational, degree: i64) -> Result<MtpExpr> {
    let w = weight(c);
    let q = p.rebase(2);
    let q = LaurentPoly::new(q.base(), q.numer().clone(), q.shift() + degree).scale(&w.inv());
    let (re, im) = q.lrhom();
    if !im.is_zero() {
        return Err(Error::Invariant(format!("factor {p} has a non-real image")));
    }
    Ok(re)
}

/// `LRhom(P / (C^{1/2}·y^{p/2}))`.
pub fn phased_factor(p: &LaurentPoly, c: &GaussianRational) -> PhasedTrigExpr {
    // Centering on the numerator: P/y^{p/2} = numer/y^{deg numer / 2}.
    let d = p.numer().degree(1) as i64;
    PhasedTrigExpr::from_factor(p.numer(), c, d, p.base())
}

/// Positive `κ` such that `e/κ` has coprime integer coefficients.
pub fn mtp_content(e: &MtpExpr) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in e.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num.abs(), den)
    }
}

fn y_exponent_gcd(n: &GPoly) -> u32 {
    n.terms().fold(0u32, |g, (e, _)| g.gcd(&e[1]))
}

fn map_y(n: &GPoly, f: impl Fn(u32) -> u32) -> GPoly {
    GPoly::from_terms(XY, n.terms().map(|(e, c)| (vec![e[0], f(e[1])], c.clone())))
}

/// Square-free factorization of `e` into real factors.
pub fn factorize(e: &MtpExpr) -> Result<Factorization> {
    let image = to_laurent(e);
    if image.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let base = image.base();
    // Work in u = y^g: the decomposition of N(u) maps to that of N(y^g).
    let g = y_exponent_gcd(image.numer()).max(1);
    let reduced = map_y(image.numer(), |k| k / g);
    let sqf = squarefree_decompose(&reduced)?;

    let mut constant = sqf.unit.clone();
    let mut factors = Vec::new();
    let mut total_degree = 0i64;
    for (fu, r) in &sqf.factors {
        let laurent = LaurentPoly::from_poly(base, map_y(fu, |k| k * g));
        let (unit, degree) = selfconj_constants(&laurent)?;
        let w = weight(&unit);
        let raw = real_factor(&laurent, &unit, degree)?;
        let content = mtp_content(&raw);
        let expr = raw.scale(&content.recip());
        let phased = phased_factor(&laurent, &unit);
        let scale = &w * &GaussianRational::real(content.clone());
        constant = &constant * &Field::pow(&scale, *r);
        total_degree += degree * *r as i64;
        factors.push(RealFactor {
            expr,
            phased,
            multiplicity: *r,
            laurent,
            unit,
            degree,
            weight: w,
            content,
        });
    }
    if total_degree != 2 * image.shift() {
        return Err(Error::Invariant(format!(
            "factor degrees sum to {total_degree}, expected {}",
            2 * image.shift()
        )));
    }
    if !constant.is_real() {
        return Err(Error::Invariant(format!("constant {constant} is not real")));
    }
    factors.sort_by(|a, b| {
        a.multiplicity
            .cmp(&b.multiplicity)
            .then_with(|| a.expr.to_string().cmp(&b.expr.to_string()))
    });
    Ok(Factorization {
        image,
        leading: sqf.unit,
        constant: constant.re,
        factors,
    })
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = Roots::sqrt(q.numer());
    let d = Roots::sqrt(q.denom());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

impl Factorization {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.multiplicity == 1)
    }

    /// `constant · Π g_i^{r_i}` as an MTP.
    pub fn expand(&self) -> MtpExpr {
        self.factors
            .iter()
            .fold(MtpExpr::constant(self.constant.clone()), |acc, f| {
                acc.mul(&f.expr.pow(f.multiplicity))
            })
    }

    /// Exact check that the factors multiply back to the input, compared on
    /// Laurent images.
    pub fn reconstructs(&self) -> bool {
        to_laurent_with_base(&self.expand(), self.image.base()).is_ok_and(|l| l == self.image)
    }

    /// `(a, b)` with `F = a·√b · Π f_i^{r_i}` for the phased factors `f_i`.
    pub fn phased_constant(&self) -> (Rational, Rational) {
        let mut a = self.constant.clone();
        let mut b = Rational::one();
        for f in &self.factors {
            // f = |w|·κ·g
            let k = Field::pow(&f.content, f.multiplicity);
            a /= k;
            let w2 = f.weight.abs2();
            a /= Field::pow(&w2, f.multiplicity / 2);
            if f.multiplicity % 2 == 1 {
                b /= w2;
            }
        }
        if let Some(r) = rational_sqrt(&b) {
            return (a * r, Rational::one());
        }
        (a, b)
    }

    /// The factorization written with the phased factors.
    pub fn phased_string(&self) -> String {
        let (a, b) = self.phased_constant();
        let mut out = if b.is_one() {
            a.to_string()
        } else {
            format!("{a}*sqrt({b})")
        };
        for f in &self.factors {
            out.push_str(&format!(" * ({})", f.phased));
            if f.multiplicity > 1 {
                out.push_str(&format!("^{}", f.multiplicity));
            }
        }
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for g in &self.factors {
            write!(f, " * ({})", g.expr)?;
            if g.multiplicity > 1 {
                write!(f, "^{}", g.multiplicity)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::mtp::parse;

    fn gl(terms: &[(u32, u32, (Rational, Rational))], base: u32, shift: i64) -> LaurentPoly {
        LaurentPoly::new(
            base,
            GPoly::from_terms(
                XY,
                terms.iter().map(|(a, b, (re, im))| {
                    (vec![*a, *b], GaussianRational::new(re.clone(), im.clone()))
                }),
            ),
            shift,
        )
    }

    #[test]
    fn constants_of_sine_cubed_factors() {
        let p2 = gl(&[(0, 1, (int(1), int(0))), (0, 0, (int(0), int(-1)))], 1, 0);
        assert_eq!(
            selfconj_constants(&p2).unwrap(),
            (GaussianRational::new(int(0), int(-1)), 1)
        );
        let p1 = gl(
            &[
                (0, 4, (int(1), int(0))),
                (0, 3, (int(0), int(2))),
                (0, 2, (int(-6), int(0))),
                (0, 1, (int(0), int(-2))),
                (0, 0, (int(1), int(0))),
            ],
            1,
            0,
        );
        assert_eq!(
            selfconj_constants(&p1).unwrap(),
            (GaussianRational::one(), 4)
        );
        let sym = gl(&[(0, 2, (int(1), int(0))), (0, 0, (int(1), int(0)))], 1, 1);
        assert_eq!(
            selfconj_constants(&sym).unwrap(),
            (GaussianRational::one(), 0)
        );
        let bad = gl(&[(0, 1, (int(1), int(0))), (0, 0, (int(2), int(0)))], 1, 0);
        assert!(matches!(
            selfconj_constants(&bad),
            Err(Error::NotSelfConjugate(_))
        ));
    }

    #[test]
    fn real_factor_examples() {
        let p2 = gl(&[(0, 1, (int(1), int(0))), (0, 0, (int(0), int(-1)))], 1, 0);
        let c = GaussianRational::new(int(0), int(-1));
        assert_eq!(
            real_factor(&p2, &c, 1).unwrap(),
            parse("cos(1/2*x) - sin(1/2*x)").unwrap()
        );
        assert_eq!(phased_factor(&p2, &c).to_string(), "2*cos(pi/4 + x/2)");
        // e^{Ix} − 1 = 2I·e^{Ix/2}·sin(x/2)
        let p = gl(&[(0, 1, (int(1), int(0))), (0, 0, (int(-1), int(0)))], 1, 0);
        let minus = -GaussianRational::one();
        assert_eq!(
            real_factor(&p, &minus, 1).unwrap(),
            parse("2*sin(1/2*x)").unwrap()
        );
    }

    #[test]
    fn sine_cubed() {
        let f = factorize(&parse("1 - sin(x)^3").unwrap()).unwrap();
        assert_eq!(f.leading, GaussianRational::new(int(0), rat(-1, 8)));
        assert_eq!(f.constant, rat(-1, 2));
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].expr, parse("cos(2*x) - 2*sin(x) - 3").unwrap());
        assert_eq!(f.factors[0].multiplicity, 1);
        assert_eq!(f.factors[1].expr, parse("cos(1/2*x) - sin(1/2*x)").unwrap());
        assert_eq!(f.factors[1].multiplicity, 2);
        // Working variable y = e^{Ix/2}: P₂ = y² − I.
        assert_eq!(f.factors[1].unit, GaussianRational::new(int(0), int(-1)));
        assert_eq!(f.factors[1].degree, 2);
        assert_eq!(f.factors[0].unit, GaussianRational::one());
        assert_eq!(f.factors[0].phased.to_string(), "2*cos(2*x) - 4*sin(x) - 6");
        assert_eq!(f.factors[1].phased.to_string(), "2*cos(pi/4 + x/2)");
        assert_eq!(
            f.to_string(),
            "-1/2 * (cos(2*x) - 2*sin(x) - 3) * (cos(1/2*x) - sin(1/2*x))^2"
        );
        assert_eq!(f.phased_constant(), (rat(-1, 8), int(1)));
        assert!(f.reconstructs());
    }

    #[test]
    fn squarefree_inputs_stay_whole() {
        let f = factorize(&parse("2/3*x + x*cos(x) - sin(x)").unwrap()).unwrap();
        assert!(f.is_squarefree());
        assert_eq!(f.factors.len(), 1);
        assert!(f.reconstructs());
        let f = factorize(&parse("sin(x)").unwrap()).unwrap();
        assert_eq!(f.to_string(), "1 * (sin(x))");
        let f = factorize(&parse("5").unwrap()).unwrap();
        assert_eq!((f.constant.clone(), f.factors.len()), (int(5), 0));
        let f = factorize(&parse("-3*x^2*sin(x)^2").unwrap()).unwrap();
        assert_eq!(f.to_string(), "-3 * (x*sin(x))^2");
        assert!(matches!(
            factorize(&parse("sin(x)^2 + cos(x)^2 - 1").unwrap()),
            Err(Error::IdenticallyZero)
        ));
    }
}
