mod common;

use mtp_core::factor::factorize;
use mtp_core::mtp::parse;
use mtp_core::numeric::Numeric;
use num_traits::Zero;

#[test]
fn random_factorizations_are_real_coprime_and_reconstruct() {
    let mut rng = common::rng(21);
    let mut n = Numeric::new(256);
    for _ in 0..30 {
        let e = parse(&common::random_mtp(&mut rng)).unwrap();
        let fac = factorize(&e).unwrap();
        common::factors::check(&mut n, &e, &fac, 100, "1e-20").unwrap();
    }
}

#[test]
fn squares_are_detected() {
    let mut rng = common::rng(22);
    for _ in 0..20 {
        let a = parse(&common::random_mtp(&mut rng)).unwrap();
        if a.is_zero() || !a.has_trig() {
            continue;
        }
        let sq = a.mul(&a);
        let fac = factorize(&sq).unwrap();
        assert!(!fac.is_squarefree(), "{a} squared");
        assert!(
            fac.factors.iter().all(|f| f.multiplicity % 2 == 0),
            "{a} squared"
        );
        assert!(
            fac.constant > mtp_core::arith::Rational::zero(),
            "{a} squared"
        );
    }
}
