use adic_core::adic::{mul_t_open_check, valuation_ball_member, AdicRingInstance, MulTOpenOutcome};
use adic_core::completion::{
    extend_by_continuity, extend_locally_constant, extend_valuation, limit_of_cauchy,
    CauchySequence, PadicNumber, TatePolynomial, ValuationBound,
};
use adic_core::gamma::ValueMonoidElement as V;
use adic_core::perfectoid::{perfectoid_report, FieldVerdict, PerfectoidConfig, PerfectoidModel};
use adic_core::ring::{Poly, RingElement};
use adic_core::spa::{
    germ_valuation, rational_subset_member, DiscPoint, RationalSubsetDescriptor, Side, SpaError,
};
use adic_core::valuation::ValuationDescriptor;
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn annulus(p: u64) -> RationalSubsetDescriptor {
    RationalSubsetDescriptor::new(vec![Poly::from_ints(&[p as i64]), Poly::x()], Poly::x())
}

#[test]
fn value_monoid_arithmetic() {
    assert_eq!(V::Zero.mul(&V::rank1_int(-1)).unwrap(), V::Zero);
    assert_eq!(
        V::rank1_int(-1).mul(&V::rank1_int(-2)).unwrap(),
        V::rank1_int(-3)
    );
    assert_eq!(
        V::rank2_int(1, 1).mul(&V::rank2_int(1, -1)).unwrap(),
        V::rank2_int(2, 0)
    );
    assert!(V::rank2_int(1, -1).lt(&V::rank2_int(1, 1)).unwrap());
    assert_eq!(V::rank2_int(1, 1).pow(2).unwrap(), V::rank2_int(2, 2));
    assert!(V::rank1_int(1).mul(&V::rank2_int(1, 1)).is_err());
}

#[test]
fn valuations_agree_with_hand_computation() {
    let v3 = ValuationDescriptor::padic(3).unwrap();
    assert_eq!(
        v3.eval(&RingElement::rational(9, 2)).unwrap(),
        V::rank1_int(-2)
    );
    // min(1 + 0·½, 2 + 1·½) = 1
    let gauss = ValuationDescriptor::gauss(3, q(0, 1), q(1, 2)).unwrap();
    let f = RingElement::from(Poly::from_ints(&[3, 9]));
    assert_eq!(gauss.eval(&f).unwrap(), V::rank1_int(-1));
}

#[test]
fn completion_matches_valuation_and_residues() {
    let a = PadicNumber::from_int(3, 1 + 3, 4).unwrap();
    let b = PadicNumber::from_int(3, 2, 4).unwrap();
    let sum = a.add(&b).unwrap();
    assert_eq!(sum.residue(4).unwrap(), 6u32.into());
    assert_eq!(sum.exponent(), Some(1));
    assert_eq!(
        PadicNumber::from_int(5, 2, 4)
            .unwrap()
            .inv()
            .residue(4)
            .unwrap(),
        313u32.into()
    );

    let series = CauchySequence::partial_sums(3, vec![q(1, 1); 40]).unwrap();
    let limit = limit_of_cauchy(&series, 4);
    assert_eq!(limit.residue(4).unwrap(), 40u32.into());
    let target = PadicNumber::from_int(3, 1 - 3, 4).unwrap().inv();
    assert!(limit.congruent(&target));

    let x = PadicNumber::from_int(3, 9, 5).unwrap();
    assert_eq!(
        extend_valuation(&x),
        ValuationBound::Exact(V::rank1_int(-2))
    );
    let zero = PadicNumber::zero(3, 4).unwrap();
    assert_eq!(
        extend_valuation(&zero),
        ValuationBound::AtMost(V::rank1_int(-4))
    );
}

#[test]
fn extension_by_continuity_examples() {
    let x = PadicNumber::from_int(3, 1 + 3 + 9, 3).unwrap();
    let square = extend_by_continuity(|t| Some(t * t), |n| n, &x, 3).unwrap();
    assert_eq!(square.residue(3).unwrap(), 7u32.into());
    let x = PadicNumber::from_int(3, 18, 5).unwrap();
    let val = extend_locally_constant(|t| adic_core::arith::val_rat(t, 3), 3, &x).unwrap();
    assert_eq!(val, 2);
    assert!(extend_by_continuity(|t| Some(t * t), |n| n + 1, &x, 5).is_err());
}

#[test]
fn tate_polynomial_norm_and_evaluation() {
    let f = TatePolynomial::new(3, Poly::from_ints(&[3, 1])).unwrap();
    assert!(f.gauss_norm().is_one());
    assert!(TatePolynomial::new(3, Poly::zero())
        .unwrap()
        .gauss_norm()
        .is_zero());
    let g = TatePolynomial::new(3, Poly::from_ints(&[1, 0, 1])).unwrap();
    let a = PadicNumber::from_int(3, 3, 4).unwrap();
    assert_eq!(g.eval_at(&a, 4).unwrap().residue(4).unwrap(), 10u32.into());
}

#[test]
fn balls_and_the_mul_t_open_lemma() {
    let v3 = ValuationDescriptor::padic(3).unwrap();
    let zero = RingElement::zero();
    let three = RingElement::from(3);
    assert!(
        valuation_ball_member(&v3, &zero, &V::one(adic_core::gamma::Rank::One), &three).unwrap()
    );
    assert!(!valuation_ball_member(&v3, &zero, &V::rank1_int(-1), &three).unwrap());
    assert!(valuation_ball_member(&v3, &zero, &V::Zero, &three).is_err());

    let z3 = AdicRingInstance::int(3).unwrap();
    let t = [RingElement::from(9), RingElement::from(6)];
    let verified = mul_t_open_check(&z3, &t, &RingElement::from(3)).unwrap();
    assert!(matches!(verified, MulTOpenOutcome::Verified { n: 2, .. }));
    let t = [RingElement::from(1)];
    assert!(matches!(
        mul_t_open_check(&z3, &t, &RingElement::from(1)).unwrap(),
        MulTOpenOutcome::Verified { n: 0, .. }
    ));
    // 9ℤ is not open for the 3-adic topology on ℤ, so the lemma's hypothesis fails
    let refuted = mul_t_open_check(&z3, &[RingElement::from(2)], &RingElement::from(9)).unwrap();
    assert!(matches!(refuted, MulTOpenOutcome::Refuted { .. }));
}

#[test]
fn disc_points_and_rational_subsets() {
    let p = 3;
    let gauss = DiscPoint::gauss(p, q(0, 1), q(0, 1)).unwrap();
    assert!(gauss.point_eval(&Poly::x()).is_one());
    assert!(DiscPoint::classical(p, q(0, 1))
        .unwrap()
        .point_eval(&Poly::x())
        .is_zero());
    let plus = DiscPoint::rank_two(p, q(0, 1), q(1, 1), Side::Plus).unwrap();
    let minus = DiscPoint::rank_two(p, q(0, 1), q(1, 1), Side::Minus).unwrap();
    assert_ne!(plus.point_eval(&Poly::x()), minus.point_eval(&Poly::x()));

    let r = annulus(p);
    assert!(rational_subset_member(&gauss, &r).unwrap());
    assert!(!rational_subset_member(&DiscPoint::classical(p, q(0, 1)).unwrap(), &r).unwrap());
    assert!(rational_subset_member(&DiscPoint::classical(p, q(3, 1)).unwrap(), &r).unwrap());
    assert!(!rational_subset_member(&DiscPoint::classical(p, q(9, 1)).unwrap(), &r).unwrap());

    let pc = Poly::from_ints(&[3]);
    assert_eq!(
        germ_valuation(&gauss, &pc, &Poly::x(), 1).unwrap(),
        V::rank1_int(-1)
    );
    assert!(germ_valuation(&gauss, &Poly::x(), &Poly::x(), 1)
        .unwrap()
        .is_one());
    let origin = DiscPoint::classical(p, q(0, 1)).unwrap();
    assert!(matches!(
        germ_valuation(&origin, &pc, &Poly::x(), 1),
        Err(SpaError::SupportViolation { .. })
    ));
}

#[test]
fn perfectoid_verdicts_for_the_base_and_the_tower() {
    let config = PerfectoidConfig {
        samples: 50,
        ..PerfectoidConfig::default()
    };
    let qp = perfectoid_report(PerfectoidModel::QpModel(3), &config).unwrap();
    assert_eq!(qp.failing_fields(), vec!["ramified"]);
    let tower = perfectoid_report(PerfectoidModel::LevelTower { p: 3, k_max: 2 }, &config).unwrap();
    assert!(tower.failing_fields().is_empty());
    assert!(tower.perfectoid_consistent);
    let degenerate =
        perfectoid_report(PerfectoidModel::LevelTower { p: 2, k_max: 0 }, &config).unwrap();
    assert!(matches!(degenerate.ramified, FieldVerdict::Fail { .. }));
}
