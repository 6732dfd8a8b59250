use super::{Family, LabelledPartition, PosArc};
use crate::error::{Error, Result};

/// A subset `A ⊆ [n]`, bit `i − 1` standing for `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub fn from_elements(elements: &[usize]) -> Self {
        Subset(elements.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    pub fn full(n: usize) -> Self {
        Subset(if n == 0 { 0 } else { u64::MAX >> (64 - n) })
    }

    /// All `2^n` subsets of `[n]`, in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..1u64 << n).map(Subset)
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 >> (i - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn elements(self) -> Vec<usize> {
        (1..=64).filter(|&i| self.contains(i)).collect()
    }

    /// 1-based rank of `i` among the elements of the subset.
    fn rank(self, i: usize) -> usize {
        (self.0 & ((1u64 << (i - 1)) - 1)).count_ones() as usize + 1
    }
}

/// Result of restricting to `(A | Aᶜ)` and standardizing both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// `st_A(λ|_A)`, a partition of `[±|A|]`.
    pub inside: LabelledPartition,
    /// `st_{Aᶜ}(λ|_{Aᶜ})`, a partition of `[±|Aᶜ|]`.
    pub outside: LabelledPartition,
    /// `A(λ|_A) ⊔ A(λ|_{Aᶜ}) = A(λ)`.
    pub splits_cleanly: bool,
}

impl LabelledPartition {
    fn require_even(&self, what: &'static str) -> Result<()> {
        if self.family == Family::B {
            return Err(Error::UnsupportedFamily {
                family: Family::B,
                what,
            });
        }
        Ok(())
    }

    /// Whether every arc has both endpoints in `±A` or both in `±Aᶜ`.
    pub fn splits_cleanly(&self, a: Subset) -> bool {
        self.signed_arcs()
            .iter()
            .all(|arc| a.contains(arc.i.unsigned_abs() as usize) == a.contains(arc.j.unsigned_abs() as usize))
    }

    pub fn restrict_standardize(&self, a: Subset) -> Result<Restriction> {
        self.require_even("restriction")?;
        let n = self.n();
        if a.0 & !Subset::full(n).0 != 0 {
            return Err(Error::OutOfRange(format!("{:?} is not a subset of [{n}]", a.elements())));
        }
        let complement = a.complement(n);
        Ok(Restriction {
            inside: self.standardized_part(a),
            outside: self.standardized_part(complement),
            splits_cleanly: self.splits_cleanly(a),
        })
    }

    fn standardized_part(&self, a: Subset) -> LabelledPartition {
        let m = a.len();
        let fam = self.family;
        let st = |s: i32| -> usize {
            let r = a.rank(s.unsigned_abs() as usize) as i32;
            fam.pos(m, if s > 0 { r } else { -r }).expect("rank within range")
        };
        let arcs = self
            .signed_arcs()
            .into_iter()
            .filter(|arc| a.contains(arc.i.unsigned_abs() as usize) && a.contains(arc.j.unsigned_abs() as usize))
            .map(|arc| PosArc::new(st(arc.i), st(arc.j), arc.label))
            .collect();
        LabelledPartition::from_pos_unchecked(fam, m, arcs)
    }

    /// Inverse standardization: relabels `[±|A|]` onto `±A ⊆ [±n]`. The
    /// result is the arc set of a partition of `[±n]` supported on `±A`.
    pub fn embed(&self, a: Subset, n: usize) -> Result<LabelledPartition> {
        self.require_even("embedding")?;
        if a.len() != self.n() || a.0 & !Subset::full(n).0 != 0 {
            return Err(Error::OutOfRange(format!(
                "cannot embed [±{}] onto {:?} ⊆ [{n}]",
                self.n(),
                a.elements()
            )));
        }
        let elems = a.elements();
        let fam = self.family;
        let unst = |s: i32| -> usize {
            let e = elems[s.unsigned_abs() as usize - 1] as i32;
            fam.pos(n, if s > 0 { e } else { -e }).expect("element of [n]")
        };
        let arcs = self
            .signed_arcs()
            .into_iter()
            .map(|arc| PosArc::new(unst(arc.i), unst(arc.j), arc.label))
            .collect();
        Ok(LabelledPartition::from_pos_unchecked(fam, n, arcs))
    }

    /// Union of arc sets supported on disjoint `±A` and `±Aᶜ`.
    pub fn disjoint_union(&self, other: &LabelledPartition) -> Result<LabelledPartition> {
        if self.family != other.family || self.n != other.n {
            return Err(Error::ContextMismatch(format!(
                "cannot unite {self} and {other}"
            )));
        }
        let mut rows = 0u64;
        let mut cols = 0u64;
        for a in self.arcs.iter().chain(&other.arcs) {
            if rows >> a.row & 1 == 1 || cols >> a.col & 1 == 1 {
                return Err(Error::ContextMismatch(format!(
                    "{self} and {other} overlap"
                )));
            }
            rows |= 1 << a.row;
            cols |= 1 << a.col;
        }
        let arcs = self.arcs.iter().chain(&other.arcs).copied().collect();
        Ok(LabelledPartition::from_pos_unchecked(self.family, self.n(), arcs))
    }

    /// `μ↑^k`: the same arcs on `[±(k+m)]`, indices `s ↦ sign(s)(|s| + k)`.
    pub fn shift_up(&self, k: usize) -> Result<LabelledPartition> {
        self.require_even("shift")?;
        let m = self.n();
        let fam = self.family;
        let shift = |s: i32| -> usize {
            let v = s.unsigned_abs() as i32 + k as i32;
            fam.pos(m + k, if s > 0 { v } else { -v }).expect("shifted index in range")
        };
        let arcs = self
            .signed_arcs()
            .into_iter()
            .map(|arc| PosArc::new(shift(arc.i), shift(arc.j), arc.label))
            .collect();
        Ok(LabelledPartition::from_pos_unchecked(fam, m + k, arcs))
    }

    /// `λ ⊔ μ↑^k` with `k = λ.n()`: μ is placed between λ⁺ and λ⁻.
    pub fn concat(&self, mu: &LabelledPartition) -> Result<LabelledPartition> {
        self.require_even("concatenation")?;
        if self.family != mu.family {
            return Err(Error::ContextMismatch(format!(
                "families {} and {} differ",
                self.family, mu.family
            )));
        }
        let k = self.n();
        let total = k + mu.n();
        let lifted = self.embed(Subset::full(k), total)?;
        lifted.disjoint_union(&mu.shift_up(k)?)
    }

    /// Connected components of the arc graph on `[n]` (arc `i ⌒ j` joins `|i|`
    /// and `|j|`), isolated points included.
    pub fn components(&self) -> Vec<Subset> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for arc in self.signed_arcs() {
            let (a, b) = (arc.i.unsigned_abs() as usize, arc.j.unsigned_abs() as usize);
            if a == 0 || b == 0 {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut comps: Vec<Subset> = Vec::new();
        let mut root_of = vec![usize::MAX; n + 1];
        for i in 1..=n {
            let r = find(&mut parent, i);
            if root_of[r] == usize::MAX {
                root_of[r] = comps.len();
                comps.push(Subset(0));
            }
            comps[root_of[r]].0 |= 1 << (i - 1);
        }
        comps
    }

    /// Every `A ⊆ [n]` over which the partition splits cleanly (unions of
    /// components), in mask order.
    pub fn clean_splits(&self) -> Vec<Subset> {
        let comps = self.components();
        let mut out: Vec<Subset> = (0..1u64 << comps.len())
            .map(|pick| {
                Subset(
                    comps
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| pick >> k & 1 == 1)
                        .fold(0, |m, (_, c)| m | c.0),
                )
            })
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use crate::partitions::enumerate;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn d(n: usize, plus: &[(i32, i32, u32)]) -> LabelledPartition {
        LabelledPartition::from_plus_triples(Family::D, n, plus, &f3()).unwrap()
    }

    #[test]
    fn standardization_example() {
        // λ on [±5]: 1⌒3 (a), 2⌒5 (b), 3⌒−4 (c); J = (134 | 25).
        let (a, b, c) = (1, 2, 1);
        let lam = d(5, &[(1, 3, a), (2, 5, b), (3, -4, c)]);
        let res = lam.restrict_standardize(Subset::from_elements(&[1, 3, 4])).unwrap();
        assert!(res.splits_cleanly);
        assert_eq!(res.inside, d(3, &[(1, 2, a), (2, -3, c)]));
        assert_eq!(res.outside, d(2, &[(1, 2, b)]));
    }

    #[test]
    fn full_subset_is_identity() {
        let lam = d(3, &[(1, 2, 1), (2, -3, 2)]);
        let res = lam.restrict_standardize(Subset::full(3)).unwrap();
        assert_eq!(res.inside, lam);
        assert_eq!(res.outside, LabelledPartition::empty(Family::D, 0));
        assert!(res.splits_cleanly);
    }

    #[test]
    fn straddling_arc_does_not_split() {
        let lam = d(2, &[(1, 2, 1)]);
        let res = lam.restrict_standardize(Subset::from_elements(&[2])).unwrap();
        assert!(!res.splits_cleanly);
        assert!(res.inside.is_empty() && res.outside.is_empty());
    }

    #[test]
    fn shift_examples() {
        let mu = d(2, &[(1, -2, 2)]);
        assert_eq!(mu.shift_up(2).unwrap(), d(4, &[(3, -4, 2)]));
        assert_eq!(mu.shift_up(0).unwrap(), mu);
        assert!(LabelledPartition::empty(Family::D, 2).shift_up(3).unwrap().is_empty());
    }

    #[test]
    fn concat_places_mu_between_halves() {
        let lam = d(2, &[(1, 2, 1)]);
        let mu = d(2, &[(1, -2, 2)]);
        assert_eq!(lam.concat(&mu).unwrap(), d(4, &[(1, 2, 1), (3, -4, 2)]));
        let lam = d(2, &[(1, -2, 1)]);
        assert_eq!(lam.concat(&d(1, &[])).unwrap(), d(3, &[(1, -2, 1)]));
    }

    #[test]
    fn six_point_example_has_eight_clean_splits() {
        let lam = d(6, &[(1, 4, 1), (4, -6, 2), (3, 5, 1)]);
        let comps = lam.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(lam.clean_splits().len(), 8);
    }

    #[test]
    fn restriction_properties() {
        let f = f3();
        for family in [Family::D, Family::C] {
            for lam in enumerate(family, 3, &f) {
                for a in Subset::all(3) {
                    let res = lam.restrict_standardize(a).unwrap();
                    // The inverse relabelling recovers λ|_A exactly.
                    let back = res.inside.embed(a, 3).unwrap();
                    let expected: Vec<PosArc> = lam
                        .signed_arcs()
                        .iter()
                        .filter(|x| a.contains(x.i.unsigned_abs() as usize) && a.contains(x.j.unsigned_abs() as usize))
                        .map(|x| PosArc::new(family.pos(3, x.i).unwrap(), family.pos(3, x.j).unwrap(), x.label))
                        .collect();
                    assert_eq!(back.arcs(), &expected[..]);
                    // Clean split iff the pieces reassemble λ.
                    let other = res.outside.embed(a.complement(3), 3).unwrap();
                    let glued = back.disjoint_union(&other).unwrap();
                    assert_eq!(res.splits_cleanly, glued == lam);
                    assert_eq!(res.splits_cleanly, lam.clean_splits().contains(&a));
                }
            }
        }
    }

    #[test]
    fn type_b_is_rejected() {
        let b = LabelledPartition::empty(Family::B, 2);
        assert!(matches!(
            b.shift_up(1),
            Err(Error::UnsupportedFamily { .. })
        ));
    }
}
