use num_rational::BigRational;
use proptest::prelude::*;

use scd_core::ffield::Field;
use scd_core::hopf::{Basis, ScAlgebra, ScElement};
use scd_core::json::ScElementDoc;
use scd_core::partitions::{enumerate, Family, LabelledPartition};

fn labels(family: Family) -> Vec<LabelledPartition> {
    let f = Field::prime(3).unwrap();
    (0..=3).flat_map(|n| enumerate(family, n, &f)).collect()
}

fn element(family: Family, basis: Basis, picks: &[(usize, i64)]) -> ScElement {
    let all = labels(family);
    let mut x = ScElement::zero(basis, family, 3);
    for &(k, c) in picks {
        x.add_term(all[k % all.len()].clone(), BigRational::from_integer(c.into()));
    }
    x
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..10_000, -3i64..=3), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_change_round_trips(p in picks(), c in prop::bool::ANY) {
        let family = if c { Family::C } else { Family::D };
        let h = ScAlgebra::new(family, &Field::prime(3).unwrap()).unwrap();
        let x = element(family, Basis::Kappa, &p);
        prop_assert_eq!(h.to_kappa(&h.to_p(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn antipode_reverses_products(i in 0usize..1000, j in 0usize..1000) {
        let h = ScAlgebra::new(Family::D, &Field::prime(3).unwrap()).unwrap();
        let small: Vec<_> = labels(Family::D).into_iter().filter(|l| l.n() <= 2).collect();
        let x = h.symbol(Basis::P, small[i % small.len()].clone());
        let y = h.symbol(Basis::P, small[j % small.len()].clone());
        let lhs = h.antipode(&h.product(&x, &y).unwrap()).unwrap();
        let rhs = h.product(&h.antipode(&y).unwrap(), &h.antipode(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn element_documents_round_trip(p in picks(), kappa in prop::bool::ANY) {
        let f = Field::prime(3).unwrap();
        let basis = if kappa { Basis::Kappa } else { Basis::P };
        let x = element(Family::D, basis, &p);
        let text = serde_json::to_string(&ScElementDoc::from_element(&x)).unwrap();
        let back: ScElementDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_element(&f).unwrap(), x);
    }
}

#[test]
fn mixed_bases_are_rejected() {
    let f = Field::prime(3).unwrap();
    let h = ScAlgebra::new(Family::D, &f).unwrap();
    let e = LabelledPartition::empty(Family::D, 1);
    let x = h.symbol(Basis::P, e.clone());
    let y = h.symbol(Basis::Kappa, e);
    assert!(matches!(x.add(&y), Err(scd_core::Error::MixedBasis(_))));
    assert!(h.product(&x, &y).is_err());
}
