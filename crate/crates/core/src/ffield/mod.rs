//! Exact arithmetic in `F_q` (odd characteristic) and in `Q(ζ_p)`, where all
//! character values live.

mod cyclotomic;
mod field;

pub use cyclotomic::CycValue;
pub use field::{Field, FieldElement, FieldOp, FieldSpec};

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn fields() -> Vec<Field> {
        vec![
            Field::prime(3).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            Field::from_order(9, Some(&[1, 0, 1])).unwrap(),
            Field::from_order(25, Some(&[2, 1, 1])).unwrap(),
        ]
    }

    #[test]
    fn theta_is_a_nontrivial_additive_character() {
        for f in fields() {
            let one = CycValue::one(f.p());
            assert_eq!(f.theta(FieldElement::ZERO), one);
            assert!(f.elements().any(|a| f.theta(a) != one));
            let mut total = CycValue::zero(f.p());
            for a in f.elements() {
                assert_eq!(&f.theta(a) * &f.theta(f.neg(a)), one);
                assert_eq!(f.theta(a).conj(), f.theta(f.neg(a)));
                total = &total + &f.theta(a);
                for b in f.elements() {
                    assert_eq!(f.theta(f.add(a, b)), &f.theta(a) * &f.theta(b));
                }
            }
            assert!(total.is_zero(), "character sum over F_{} is {total}", f.q());
        }
    }

    fn cyc(p: u32) -> impl Strategy<Value = CycValue> {
        prop::collection::vec((-20i64..20, 1i64..6), p as usize - 1).prop_map(move |v| {
            CycValue::from_coeffs(
                p,
                v.into_iter()
                    .map(|(n, d)| num_rational::BigRational::new(n.into(), d.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn cyc_ring_laws(x in cyc(5), y in cyc(5), w in cyc(5)) {
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert!((&x - &x).is_zero());
        }
    }
}
