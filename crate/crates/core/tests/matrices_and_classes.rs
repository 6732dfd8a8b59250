use num_rational::BigRational;

use scd_core::ffield::{CycValue, Field};
use scd_core::matrixrep::{classify, x_of_partition, x_to_y, y_of_partition, MatrixGroup};
use scd_core::oracle::{inner_product, ClassFunction, GroupTable};
use scd_core::partitions::{enumerate, Family};
use scd_core::superchar::{supercharacter, NestingCount};

#[test]
fn representatives_classify_to_their_labels() {
    for (n, q) in [(2, 3), (3, 3), (2, 5), (2, 7)] {
        let f = Field::prime(q).unwrap();
        for l in enumerate(Family::D, n, &f) {
            let y = y_of_partition(&l);
            let x = x_of_partition(&l, &f).unwrap();
            assert!(y.membership(MatrixGroup::NilpotentD, &f), "{l}");
            assert!(x.membership(MatrixGroup::UnipotentD, &f), "{l}");
            assert_eq!(x_to_y(&x, &f).unwrap(), y, "{l}");
            assert_eq!(classify(&x, &f).unwrap(), l);
        }
    }
}

#[test]
fn census_class_sizes_match_indicator_norms() {
    // ⟨1_λ, 1_λ⟩ = |K_λ| / |G|
    let f = Field::prime(3).unwrap();
    let table = GroupTable::build(Family::D, 3, &f, 1_000).unwrap();
    let labels: Vec<_> = table.classes().keys().cloned().collect();
    for l in &labels {
        let ind = ClassFunction::indicator(l, &f, labels.iter().cloned());
        let norm = inner_product(&ind, &ind, &table).unwrap();
        let size = table.class_size(l).unwrap() as i64;
        let expected =
            CycValue::from_int(3, size).scale(&BigRational::new(1.into(), (table.order() as i64).into()));
        assert_eq!(norm, expected, "{l}");
    }
}

#[test]
fn q5_supercharacters_are_orthogonal() {
    let f = Field::prime(5).unwrap();
    let table = GroupTable::build(Family::D, 2, &f, 1_000).unwrap();
    let labels: Vec<_> = table.classes().keys().cloned().collect();
    let chars: Vec<_> = labels
        .iter()
        .map(|l| supercharacter(l, &labels, &f, NestingCount::default()).unwrap())
        .collect();
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let ip = inner_product(a, b, &table).unwrap();
            assert_eq!(ip.is_zero(), i != j, "({}, {})", labels[i], labels[j]);
        }
    }
}
