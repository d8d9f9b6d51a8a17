mod common;

use mtp_core::arith::Rational;
use mtp_core::mtp::{parse, tan_half_substitute, to_laurent, to_trivariate, MtpExpr};
use mtp_core::numeric::{BigFloat, Numeric};
use mtp_core::poly::QPoly;

const PREC: usize = 256;

fn rel_tol(n: &mut Numeric) -> BigFloat {
    n.decimal("1e-20")
}

fn random_int_freq_mtp(rng: &mut rand::rngs::StdRng) -> MtpExpr {
    parse(&common::random_mtp_with(rng, &["1", "2", "3"])).unwrap()
}

#[test]
fn trivariate_and_laurent_images_evaluate_like_the_input() {
    let mut rng = common::rng(11);
    let mut n = Numeric::new(PREC);
    let tol = rel_tol(&mut n);
    for _ in 0..20 {
        let e = random_int_freq_mtp(&mut rng);
        let f = to_trivariate(&e).unwrap();
        let (re, im) = to_laurent(&e).lrhom();
        for _ in 0..50 {
            let q = common::random_rational(&mut rng, -10, 10);
            let x = n.rational(&q);
            let want = n.eval_mtp(&e, &x);
            let point = [x.clone(), n.sin(&x), n.cos(&x)];
            let got = n.eval_qpoly(&f, &point);
            assert!(n.close(&got, &want, &tol), "trivariate image of {e} at {q}");
            let got = n.eval_mtp(&re, &x);
            assert!(
                n.close(&got, &want, &tol),
                "real part of the Laurent image of {e} at {q}"
            );
            let got = n.eval_mtp(&im, &x);
            assert!(
                n.close(&got, &n.int(0), &tol),
                "imaginary part of the Laurent image of {e} at {q}"
            );
        }
    }
}

#[test]
fn laurent_conjugation_is_an_involution_and_multiplicative() {
    let mut rng = common::rng(12);
    for _ in 0..30 {
        let a = to_laurent(&parse(&common::random_mtp(&mut rng)).unwrap());
        let b = to_laurent(&parse(&common::random_mtp(&mut rng)).unwrap());
        if a.base() != b.base() {
            continue;
        }
        assert_eq!(a.con().con(), a);
        assert_eq!(a.mul(&b).con(), a.con().mul(&b.con()));
        // Images of real MTPs are self-conjugate.
        assert!(a.is_self_conjugate());
    }
}

#[test]
fn tan_half_substitution_agrees_numerically() {
    let mut rng = common::rng(13);
    let mut n = Numeric::new(PREC);
    let tol = rel_tol(&mut n);
    for _ in 0..10 {
        let e = parse(&common::random_mtp_with(&mut rng, &["1"])).unwrap();
        let g = to_trivariate(&e).unwrap();
        let th = tan_half_substitute(&g);
        for _ in 0..100 {
            let q = common::random_rational(&mut rng, 0, 1);
            let t = n.rational(&q);
            let a = n.atan(&t);
            let y = n.mul(&n.int(2), &a);
            let point = [y.clone(), n.sin(&y), n.cos(&y)];
            let want = n.eval_qpoly(&g, &point);
            let one_plus = n.add(&n.int(1), &n.mul(&t, &t));
            let den = n.powi(&one_plus, th.denom_power);
            let h = n.eval_qpoly(&th.angle_form, &[t.clone(), y.clone()]);
            assert!(
                n.close(&n.div(&h, &den), &want, &tol),
                "angle form of {g} at t = {q}"
            );
            let h = n.eval_qpoly(&th.arctan_form, &[t.clone(), a]);
            assert!(
                n.close(&n.div(&h, &den), &want, &tol),
                "arctan form of {g} at t = {q}"
            );
        }
    }
}

#[test]
fn rescaling_is_substitution() {
    let mut rng = common::rng(14);
    let mut n = Numeric::new(PREC);
    let tol = rel_tol(&mut n);
    for _ in 0..20 {
        let e = parse(&common::random_mtp(&mut rng)).unwrap();
        let k = common::random_rational(&mut rng, 0, 5);
        let r = e.rescale(&k);
        let q = common::random_rational(&mut rng, -5, 5);
        let x = n.rational(&q);
        let kx = n.rational(&(&q * &k));
        let (a, b) = (n.eval_mtp(&r, &x), n.eval_mtp(&e, &kx));
        assert!(n.close(&a, &b, &tol), "{e} rescaled by {k} at {q}");
    }
}

#[test]
fn multiple_angle_expansion_matches_the_input_exactly() {
    // Expanding and reading back must give an expression equal to the
    // input as a function; compare Laurent images, which are canonical.
    let mut rng = common::rng(15);
    for _ in 0..30 {
        let e = random_int_freq_mtp(&mut rng);
        let f: QPoly = to_trivariate(&e).unwrap();
        let back = MtpExpr::from_trivariate(&f, &Rational::from_integer(1.into()));
        let base = to_laurent(&e).base();
        assert_eq!(
            mtp_core::mtp::to_laurent_with_base(&back, base).unwrap(),
            to_laurent(&e),
            "{e}"
        );
    }
}
