//! Brute-force ground truth at desk scale: the group `U^D_{2n}(q)` element by
//! element, its superclasses as computed from matrices alone, class functions,
//! restriction to block subgroups, and exhaustive two-sided orbits of `u_m(q)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ffield::{CycValue, Field, FieldElement};
use crate::matrixrep::{self, MatrixGroup, UtMatrix};
use crate::partitions::{enumerate, Family, LabelledPartition, Subset};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// The enumeration budget, overridable through `SCD_BUDGET`.
pub fn budget() -> u64 {
    std::env::var("SCD_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// `q^{n(n−1)}`.
pub fn group_order(n: usize, q: u32) -> u128 {
    (q as u128).pow((n * n.saturating_sub(1)) as u32)
}

#[derive(Clone, Debug)]
pub struct SuperclassInfo {
    pub size: u64,
    /// Index of the first element (in enumeration order) in the class.
    pub first: usize,
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    n: usize,
    field: Field,
    elements: Vec<UtMatrix>,
    class_of: Vec<LabelledPartition>,
    classes: BTreeMap<LabelledPartition, SuperclassInfo>,
}

/// Every element of `U^D_{2n}(q)`, each generated once from its `(P, Q)`
/// parameters.
pub fn enumerate_group(n: usize, field: &Field, budget: u64) -> Result<GroupTable> {
    let required = group_order(n, field.q());
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("U^D_{}({}) elements", 2 * n, field.q()),
            required,
            budget,
        });
    }
    // free cells: strict upper triangle of P, and Q strictly above its antidiagonal
    let p_cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (r + 1..n).map(move |c| (r, c)))
        .collect();
    let q_cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).filter(move |&c| r + c + 1 < n).map(move |c| (r, c)))
        .collect();
    let values: Vec<FieldElement> = field.elements().collect();
    let cells = p_cells.len() + q_cells.len();
    let mut digits = vec![0usize; cells];
    let mut elements = Vec::with_capacity(required as usize);
    loop {
        let mut p = UtMatrix::identity(n);
        for (k, &(r, c)) in p_cells.iter().enumerate() {
            p.set(r, c, values[digits[k]]);
        }
        let mut q = UtMatrix::zero(n);
        for (k, &(r, c)) in q_cells.iter().enumerate() {
            let v = values[digits[p_cells.len() + k]];
            q.set(r, c, v);
            q.set(n - 1 - c, n - 1 - r, field.neg(v));
        }
        let p_inv = p.inverse_unitriangular(field)?;
        elements.push(UtMatrix::from_blocks(
            &p,
            &p.mul(&q, field),
            &p_inv.transpose().antidiagonal_conjugate(),
        ));
        // odometer
        let mut k = 0;
        while k < cells {
            digits[k] += 1;
            if digits[k] < values.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == cells {
            break;
        }
    }
    Ok(GroupTable {
        n,
        field: field.clone(),
        elements,
        class_of: Vec::new(),
        classes: BTreeMap::new(),
    })
}

/// Labels every element by the canonical form of its partner and groups the
/// elements into superclasses.
///
/// Each element is classified twice: through its partner `y`, and directly
/// as `x − I` inside the two-sided orbit of `u_{2n}(q)`. The two must agree.
pub fn superclass_partition(mut table: GroupTable) -> Result<GroupTable> {
    let f = table.field.clone();
    let id = UtMatrix::identity(2 * table.n);
    let mut class_of = Vec::with_capacity(table.elements.len());
    let mut classes: BTreeMap<LabelledPartition, SuperclassInfo> = BTreeMap::new();
    for (idx, x) in table.elements.iter().enumerate() {
        let label = matrixrep::classify(x, &f)?;
        let direct = matrixrep::verge_reduce(&x.sub(&id, &f), &f)?;
        if direct != matrixrep::y_of_partition(&label) {
            return Err(Error::Indexing(format!(
                "x − I and its partner reduce differently:\n{x}\nlabel {label}"
            )));
        }
        classes
            .entry(label.clone())
            .and_modify(|c| c.size += 1)
            .or_insert(SuperclassInfo { size: 1, first: idx });
        class_of.push(label);
    }
    table.class_of = class_of;
    table.classes = classes;
    Ok(table)
}

impl GroupTable {
    /// Enumerates and classifies `U^D_{2n}(q)`.
    pub fn build(family: Family, n: usize, field: &Field, budget: u64) -> Result<Self> {
        if family != Family::D {
            return Err(Error::UnsupportedFamily {
                family,
                what: "the brute-force group oracle",
            });
        }
        superclass_partition(enumerate_group(n, field, budget)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UtMatrix] {
        &self.elements
    }

    pub fn is_classified(&self) -> bool {
        self.class_of.len() == self.elements.len()
    }

    pub fn class_of(&self, idx: usize) -> &LabelledPartition {
        &self.class_of[idx]
    }

    pub fn classes(&self) -> &BTreeMap<LabelledPartition, SuperclassInfo> {
        &self.classes
    }

    pub fn labels(&self) -> impl Iterator<Item = &LabelledPartition> {
        self.classes.keys()
    }

    pub fn class_size(&self, label: &LabelledPartition) -> Option<u64> {
        self.classes.get(label).map(|c| c.size)
    }

    /// Checks the label set against `enumerate`, class sizes against the
    /// group order, and the identity's class.
    pub fn check_indexing(&self) -> Result<()> {
        let expected = enumerate(Family::D, self.n, &self.field);
        let got: Vec<LabelledPartition> = self.labels().cloned().collect();
        if got != expected {
            let missing: Vec<String> = expected
                .iter()
                .filter(|l| !self.classes.contains_key(l))
                .map(|l| l.to_string())
                .collect();
            return Err(Error::Indexing(format!(
                "{} superclasses against {} partitions; missing {:?}",
                got.len(),
                expected.len(),
                missing
            )));
        }
        let total: u64 = self.classes.values().map(|c| c.size).sum();
        if total as u128 != group_order(self.n, self.field.q()) {
            return Err(Error::Indexing(format!("class sizes sum to {total}")));
        }
        let empty = LabelledPartition::empty(Family::D, self.n);
        if self.class_size(&empty) != Some(1) {
            return Err(Error::Indexing("the identity's class is not a singleton".into()));
        }
        Ok(())
    }
}

/// A function on superclass labels with values in `Q(ζ_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: usize,
    pub q: u32,
    pub values: BTreeMap<LabelledPartition, CycValue>,
}

impl ClassFunction {
    pub fn from_fn(
        n: usize,
        field: &Field,
        labels: impl IntoIterator<Item = LabelledPartition>,
        mut value: impl FnMut(&LabelledPartition) -> CycValue,
    ) -> Self {
        let values = labels
            .into_iter()
            .map(|l| {
                let v = value(&l);
                (l, v)
            })
            .collect();
        Self {
            n,
            q: field.q(),
            values,
        }
    }

    /// `κ_λ` on the given label set.
    pub fn indicator(
        lambda: &LabelledPartition,
        field: &Field,
        labels: impl IntoIterator<Item = LabelledPartition>,
    ) -> Self {
        let p = field.p();
        Self::from_fn(lambda.n(), field, labels, |l| {
            if l == lambda {
                CycValue::one(p)
            } else {
                CycValue::zero(p)
            }
        })
    }

    pub fn get(&self, label: &LabelledPartition) -> Option<&CycValue> {
        self.values.get(label)
    }
}

/// `(1/|G|) Σ_λ |K_λ| f(λ) conj(g(λ))`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction, table: &GroupTable) -> Result<CycValue> {
    if f.n != table.n || g.n != table.n || f.q != table.field.q() || g.q != table.field.q() {
        return Err(Error::ContextMismatch(format!(
            "class functions on (n={}, q={}) and (n={}, q={}) against a table for (n={}, q={})",
            f.n,
            f.q,
            g.n,
            g.q,
            table.n,
            table.field.q()
        )));
    }
    let p = table.field.p();
    let mut total = CycValue::zero(p);
    for (label, info) in &table.classes {
        let (Some(a), Some(b)) = (f.get(label), g.get(label)) else {
            return Err(Error::ContextMismatch(format!(
                "class function undefined on {label}"
            )));
        };
        total = total + (a * &b.conj()).scale(&BigRational::from_integer(BigInt::from(info.size)));
    }
    Ok(total.scale(&BigRational::new(1.into(), BigInt::from(table.order()))))
}

/// Positions of `[±|A|]` inside `[±n]` under `st_A^{-1}`, 0-based.
fn embedding_positions(a: Subset, n: usize) -> Vec<usize> {
    let m = a.len();
    let elems = a.elements();
    (1..=2 * m)
        .map(|pos| {
            let s = Family::D.signed(m, pos);
            let e = elems[s.unsigned_abs() as usize - 1] as i32;
            Family::D.pos(n, if s > 0 { e } else { -e }).expect("element of [n]") - 1
        })
        .collect()
}

/// `st_J^{-1}(u₁, u₂)`: the block matrices re-indexed into `[±n]`.
pub fn embed_pair(u1: &UtMatrix, u2: &UtMatrix, a: Subset, n: usize) -> Result<UtMatrix> {
    let ac = a.complement(n);
    if u1.size() != 2 * a.len() || u2.size() != 2 * ac.len() || a.0 & !Subset::full(n).0 != 0 {
        return Err(Error::OutOfRange(format!(
            "blocks of sizes {} and {} do not fit {:?} ⊆ [{n}]",
            u1.size(),
            u2.size(),
            a.elements()
        )));
    }
    let mut out = UtMatrix::identity(2 * n);
    for (u, map) in [(u1, embedding_positions(a, n)), (u2, embedding_positions(ac, n))] {
        for r in 0..u.size() {
            for c in r + 1..u.size() {
                out.set(map[r], map[c], u.get(r, c));
            }
        }
    }
    Ok(out)
}

/// `Res(f)(u) = f(st_J^{-1}(u))` on superclass representatives
/// `x_μ × x_ν` of `U^D_{2|A|}(q) × U^D_{2|Aᶜ|}(q)`.
pub fn restrict_eval(
    f: &ClassFunction,
    a: Subset,
    field: &Field,
) -> Result<BTreeMap<(LabelledPartition, LabelledPartition), CycValue>> {
    let n = f.n;
    let ac = a.complement(n);
    let mut out = BTreeMap::new();
    for mu in enumerate(Family::D, a.len(), field) {
        let x1 = matrixrep::x_of_partition(&mu, field)?;
        for nu in enumerate(Family::D, ac.len(), field) {
            let x2 = matrixrep::x_of_partition(&nu, field)?;
            let x = embed_pair(&x1, &x2, a, n)?;
            let label = matrixrep::classify(&x, field)?;
            let v = f.get(&label).cloned().ok_or_else(|| {
                Error::ContextMismatch(format!("class function undefined on {label}"))
            })?;
            out.insert((mu.clone(), nu), v);
        }
    }
    Ok(out)
}

/// Checks that the restriction of `f` to the product group is constant on
/// pairs of factor superclasses, over every element of the product group.
/// Returns the offending pairs.
pub fn restriction_violations(
    f: &ClassFunction,
    a: Subset,
    small: &GroupTable,
    large: &GroupTable,
) -> Result<Vec<(LabelledPartition, LabelledPartition)>> {
    let n = f.n;
    let field = small.field();
    let mut seen: BTreeMap<(LabelledPartition, LabelledPartition), CycValue> = BTreeMap::new();
    let mut bad = Vec::new();
    for (i, u1) in small.elements().iter().enumerate() {
        for (j, u2) in large.elements().iter().enumerate() {
            let x = embed_pair(u1, u2, a, n)?;
            if !x.membership(MatrixGroup::UnipotentD, field) {
                return Err(Error::Indexing(format!("embedded block pair left U^D:\n{x}")));
            }
            let label = matrixrep::classify(&x, field)?;
            let v = f
                .get(&label)
                .cloned()
                .ok_or_else(|| Error::ContextMismatch(format!("undefined on {label}")))?;
            let key = (small.class_of(i).clone(), large.class_of(j).clone());
            match seen.get(&key) {
                Some(prev) if *prev != v => {
                    if !bad.contains(&key) {
                        bad.push(key);
                    }
                }
                Some(_) => {}
                None => {
                    seen.insert(key, v);
                }
            }
        }
    }
    Ok(bad)
}

/// Connected components of `u_m(q)` under left and right multiplication by
/// elementary generators `I + t·e_{i,i+1}`, found by union–find over every
/// matrix. Matrices are encoded by their strict upper triangle as base-`q`
/// digits of the element codes.
pub struct OrbitPartition {
    size: usize,
    q: u32,
    cells: Vec<(usize, usize)>,
    parent: Vec<u32>,
}

impl OrbitPartition {
    pub fn build(size: usize, field: &Field, budget: u64) -> Result<Self> {
        let cells: Vec<(usize, usize)> = (0..size)
            .flat_map(|r| (r + 1..size).map(move |c| (r, c)))
            .collect();
        let q = field.q();
        let states = (q as u128).pow(cells.len() as u32);
        if states > budget as u128 || states > u32::MAX as u128 {
            return Err(Error::BudgetExceeded {
                what: format!("u_{size}({q}) matrices"),
                required: states,
                budget,
            });
        }
        let mut this = Self {
            size,
            q,
            cells,
            parent: (0..states as u32).collect(),
        };
        let mut index = vec![usize::MAX; size * size];
        for (k, &(r, c)) in this.cells.iter().enumerate() {
            index[r * size + c] = k;
        }
        let basis = field.additive_basis();
        let mut digits = vec![0u32; this.cells.len()];
        let mut moved = vec![0u32; this.cells.len()];
        for s in 0..states as u32 {
            this.decode_into(s, &mut digits);
            for i in 0..size.saturating_sub(1) {
                for &t in &basis {
                    // (I + t e_{i,i+1})·M: row i += t·row (i+1)
                    moved.copy_from_slice(&digits);
                    for c in i + 2..size {
                        let k = index[i * size + c];
                        let src = FieldElement::from_code_unchecked(digits[index[(i + 1) * size + c]]);
                        let v = field.add(FieldElement::from_code_unchecked(moved[k]), field.mul(t, src));
                        moved[k] = v.code();
                    }
                    let other = this.encode(&moved);
                    this.union(s, other);
                    // M·(I + t e_{i,i+1}): col (i+1) += t·col i
                    moved.copy_from_slice(&digits);
                    for r in 0..i {
                        let k = index[r * size + i + 1];
                        let src = FieldElement::from_code_unchecked(digits[index[r * size + i]]);
                        let v = field.add(FieldElement::from_code_unchecked(moved[k]), field.mul(t, src));
                        moved[k] = v.code();
                    }
                    let other = this.encode(&moved);
                    this.union(s, other);
                }
            }
        }
        Ok(this)
    }

    pub fn states(&self) -> usize {
        self.parent.len()
    }

    fn decode_into(&self, mut s: u32, digits: &mut [u32]) {
        for d in digits.iter_mut() {
            *d = s % self.q;
            s /= self.q;
        }
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.q + d)
    }

    pub fn encode_matrix(&self, m: &UtMatrix) -> u32 {
        assert_eq!(m.size(), self.size);
        let digits: Vec<u32> = self.cells.iter().map(|&(r, c)| m.get(r, c).code()).collect();
        self.encode(&digits)
    }

    pub fn decode_matrix(&self, s: u32) -> UtMatrix {
        let mut digits = vec![0; self.cells.len()];
        self.decode_into(s, &mut digits);
        let mut m = UtMatrix::zero(self.size);
        for (&(r, c), &d) in self.cells.iter().zip(&digits) {
            m.set(r, c, FieldElement::from_code_unchecked(d));
        }
        m
    }

    fn find(&mut self, mut s: u32) -> u32 {
        while self.parent[s as usize] != s {
            let up = self.parent[self.parent[s as usize] as usize];
            self.parent[s as usize] = up;
            s = up;
        }
        s
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    /// Orbit id: the smallest encoding in the orbit.
    pub fn orbit_of(&mut self, m: &UtMatrix) -> u32 {
        let s = self.encode_matrix(m);
        self.find(s)
    }

    /// Number of orbits, and the orbits containing no or several arc-form
    /// matrices (each listed with how many it has).
    pub fn arc_form_census(&mut self) -> (usize, Vec<(u32, usize)>) {
        let mut per_orbit = vec![0u8; self.parent.len()];
        let mut digits = vec![0u32; self.cells.len()];
        let mut rows = vec![false; self.size];
        let mut cols = vec![false; self.size];
        for s in 0..self.parent.len() as u32 {
            self.decode_into(s, &mut digits);
            rows.iter_mut().for_each(|x| *x = false);
            cols.iter_mut().for_each(|x| *x = false);
            let mut arc_form = true;
            for (&(r, c), &d) in self.cells.iter().zip(&digits) {
                if d != 0 {
                    if rows[r] || cols[c] {
                        arc_form = false;
                        break;
                    }
                    rows[r] = true;
                    cols[c] = true;
                }
            }
            if arc_form {
                let root = self.find(s) as usize;
                per_orbit[root] = per_orbit[root].saturating_add(1);
            }
        }
        let mut orbits = 0;
        let mut bad = Vec::new();
        for s in 0..self.parent.len() as u32 {
            if self.find(s) == s {
                orbits += 1;
                if per_orbit[s as usize] != 1 {
                    bad.push((s, per_orbit[s as usize] as usize));
                }
            }
        }
        (orbits, bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn group_orders() {
        let f = f3();
        assert_eq!(enumerate_group(1, &f, 10).unwrap().order(), 1);
        assert_eq!(enumerate_group(2, &f, 10).unwrap().order(), 9);
        let g = enumerate_group(3, &f, 1000).unwrap();
        assert_eq!(g.order(), 729);
        for x in g.elements() {
            assert!(x.membership(MatrixGroup::UnipotentD, &f));
        }
        let mut sorted = g.elements().to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 729);
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_group(3, &f3(), 728).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { required: 729, .. }));
    }

    #[test]
    fn small_census() {
        let f = f3();
        let t = GroupTable::build(Family::D, 2, &f, 100).unwrap();
        t.check_indexing().unwrap();
        assert_eq!(t.classes().len(), 5);
        assert_eq!(t.class_of(0), &LabelledPartition::empty(Family::D, 2));
        assert!(GroupTable::build(Family::C, 2, &f, 100).is_err());
    }

    #[test]
    fn indicator_norm() {
        let f = f3();
        let t = GroupTable::build(Family::D, 2, &f, 100).unwrap();
        for (lam, info) in t.classes() {
            let k = ClassFunction::indicator(lam, &f, t.labels().cloned());
            let ip = inner_product(&k, &k, &t).unwrap();
            assert_eq!(
                ip.as_rational().unwrap(),
                &BigRational::new(BigInt::from(info.size), BigInt::from(9))
            );
        }
    }

    #[test]
    fn full_subset_restriction_is_identity() {
        let f = f3();
        let t = GroupTable::build(Family::D, 2, &f, 100).unwrap();
        for lam in t.labels() {
            let k = ClassFunction::indicator(lam, &f, t.labels().cloned());
            let res = restrict_eval(&k, Subset::full(2), &f).unwrap();
            for ((mu, nu), v) in res {
                assert!(nu.is_empty() && nu.n() == 0);
                assert_eq!(v.is_zero(), &mu != lam);
            }
        }
    }

    #[test]
    fn u3_orbits() {
        let f = f3();
        let mut orbits = OrbitPartition::build(3, &f, 100).unwrap();
        let (count, bad) = orbits.arc_form_census();
        assert!(bad.is_empty(), "{bad:?}");
        // arc-form matrices of size 3: none, one of three cells, or (1,2)+(2,3)
        assert_eq!(count, 1 + 3 * 2 + 4);
        let mut m = UtMatrix::zero(3);
        m.set(0, 2, f.element(1).unwrap());
        m.set(1, 2, f.element(2).unwrap());
        let canon = matrixrep::verge_reduce(&m, &f).unwrap();
        assert_eq!(orbits.orbit_of(&m), orbits.orbit_of(&canon));
        assert_eq!(orbits.decode_matrix(orbits.encode_matrix(&m)), m);
    }
}
