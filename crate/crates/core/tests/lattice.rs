use num_rational::Rational64;
use proptest::prelude::*;
use pwlie_core::weightlattice::inner;
use pwlie_core::FiniteWeight;

fn coords() -> impl Strategy<Value = Vec<i64>> {
    (1usize..=6).prop_flat_map(|n| prop::collection::vec(-8i64..=8, n + 1))
}

fn pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (1usize..=6).prop_flat_map(|n| (prop::collection::vec(-8i64..=8, n + 1), prop::collection::vec(-8i64..=8, n + 1)))
}

fn raw_inner(a: &[i64], b: &[i64]) -> Rational64 {
    let n1 = a.len() as i64;
    let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    Rational64::from_integer(dot) - Rational64::new(a.iter().sum::<i64>() * b.iter().sum::<i64>(), n1)
}

proptest! {
    #[test]
    fn norm_is_positive_definite(c in coords()) {
        let w = FiniteWeight::from_coords(c).unwrap();
        let n = inner(&w, &w).unwrap();
        prop_assert!(n >= Rational64::from_integer(0));
        prop_assert_eq!(n == Rational64::from_integer(0), w.is_zero());
    }

    #[test]
    fn shift_invariance(c in coords(), m in -5i64..=5) {
        let shifted: Vec<i64> = c.iter().map(|x| x + m).collect();
        let a = FiniteWeight::from_coords(c.clone()).unwrap();
        let b = FiniteWeight::from_coords(shifted.clone()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(raw_inner(&c, &c), raw_inner(&shifted, &shifted));
        prop_assert_eq!(inner(&a, &a).unwrap(), raw_inner(&c, &c));
        prop_assert_eq!(a.class(), b.class());
        prop_assert_eq!(a.dominant_representative(), b.dominant_representative());
    }

    #[test]
    fn inner_is_symmetric((a, b) in pair()) {
        let (a, b) = (FiniteWeight::from_coords(a).unwrap(), FiniteWeight::from_coords(b).unwrap());
        prop_assert_eq!(inner(&a, &b).unwrap(), inner(&b, &a).unwrap());
    }

    #[test]
    fn dynkin_round_trip(labels in (1usize..=6).prop_flat_map(|n| prop::collection::vec(-5i64..=5, n))) {
        let w = FiniteWeight::from_dynkin(&labels).unwrap();
        prop_assert_eq!(w.to_dynkin(), labels.clone());
        prop_assert_eq!(w.is_dominant(), labels.iter().all(|&a| a >= 0));
    }

    #[test]
    fn class_is_additive((a, b) in pair()) {
        let (a, b) = (FiniteWeight::from_coords(a).unwrap(), FiniteWeight::from_coords(b).unwrap());
        let n1 = a.dim();
        prop_assert_eq!(a.checked_add(&b).unwrap().class(), (a.class() + b.class()) % n1);
    }

    #[test]
    fn dominant_representative_sorts(c in coords()) {
        let w = FiniteWeight::from_coords(c.clone()).unwrap();
        let (rep, sign) = w.dominant_representative();
        prop_assert!(rep.is_dominant());
        prop_assert_eq!(rep.norm(), w.norm());
        let mut sorted = c.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sign == 0, sorted.len() < c.len());
    }
}
