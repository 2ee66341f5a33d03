use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;
use prosaic_core::algebra::{conj_product, discriminant, IntPoly};
use prosaic_core::genus2::{family_ab1, family_ex2, family_mild, FamilyInstance};
use prosaic_core::primes::core;
use prosaic_core::Error;

/// Discriminant of the binary sextic attached to `F`, divided by 2¹².
fn sextic_delta(f: &IntPoly) -> BigInt {
    let d = discriminant(f).unwrap();
    let d = if f.degree() == Some(5) {
        d * f.lc().pow(2)
    } else {
        d
    };
    let (q, r) = d.div_rem(&BigInt::from(4096));
    assert_eq!(r, BigInt::from(0));
    q
}

fn check_f(inst: &FamilyInstance) {
    let factors = &inst.model.factors;
    let f = &factors.f * &conj_product(&factors.h);
    assert_eq!(f, inst.model.f);
    let q2 = &inst.model.q * &inst.model.q;
    assert_eq!(&q2 + &inst.model.p.scale(&BigInt::from(4)), f);
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

proptest! {
    #[test]
    fn ab1_closed_forms(a in -40i64..=40, b in -40i64..=40) {
        let inst = family_ab1(a, b).unwrap();
        check_f(&inst);
        let m: BigInt = (big(4) * big(b) - 1i64).pow(2) + 64i64;
        let w = (big(4) * big(a) - 1i64).pow(2) + big(16) * big(b) - 4i64;
        let n: BigInt = w.pow(2) + 1024i64;
        prop_assert_eq!(sextic_delta(&inst.model.f), &m * &n * &n);
        prop_assert_eq!(&inst.model.delta_f, &(&m * &n * &n * 256));
        if m.gcd(&n).is_one() {
            prop_assert_eq!(inst.conductor.unwrap(), core(&(&m * &n)).unwrap());
        } else {
            prop_assert!(inst.conductor.is_none());
        }
    }

    #[test]
    fn ex2_closed_forms(b in prop::sample::select(vec![-1i64, 1]), k in -60i64..=60) {
        let c = 4 * k + 1;
        let n = (big(c) * c - big(4) * b * c - 16i64).pow(2) + big(64) * c * c;
        match family_ex2(b, c) {
            Ok(inst) => {
                check_f(&inst);
                prop_assert_eq!(sextic_delta(&inst.model.f), &n * &n * 17);
            }
            Err(Error::Hypothesis(_)) => prop_assert!((&n % 17u32) == BigInt::from(0)),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn mild_closed_forms(k in -12i64..=12, j in -25i64..=25) {
        let (u, c) = (2 * k + 1, 4 * j + 1);
        let m: BigInt = big(64) * u * u + 1i64;
        let n = (big(c) * u - 16i64).pow(4) + big(64) * c * c;
        match family_mild(u, c) {
            Ok(inst) => {
                check_f(&inst);
                prop_assert_eq!(sextic_delta(&inst.model.f), big(2 * u).pow(22) * &m * &n * &n);
            }
            Err(Error::Hypothesis(_)) => prop_assert!(!(&m * u).gcd(&n).is_one()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn hypotheses_rejected() {
    assert!(matches!(family_ex2(2, 5), Err(Error::Hypothesis(_))));
    assert!(matches!(family_ex2(1, 3), Err(Error::Hypothesis(_))));
    assert!(matches!(family_mild(2, 5), Err(Error::Hypothesis(_))));
    assert!(matches!(family_mild(1, 7), Err(Error::Hypothesis(_))));
}

#[test]
fn instance_json_round_trip() {
    let inst = family_ab1(1, 1).unwrap();
    let s = serde_json::to_string(&inst).unwrap();
    let back: FamilyInstance = serde_json::from_str(&s).unwrap();
    assert_eq!(back, inst);
}
