//! The Hopf algebra `SC = ⊕_n SC_{2n}` of superclass functions, in the
//! indicator basis `κ` and the basis `P_λ = Σ_{μ ≥ λ} κ_μ`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::partitions::{extensions, superset_closure, Family, LabelledPartition, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Kappa,
    P,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Kappa => "kappa",
            Basis::P => "P",
        })
    }
}

/// A finite linear combination of basis symbols of one basis, any grades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScElement {
    basis: Basis,
    family: Family,
    q: u32,
    terms: BTreeMap<LabelledPartition, BigRational>,
}

impl ScElement {
    pub fn zero(basis: Basis, family: Family, q: u32) -> Self {
        Self {
            basis,
            family,
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn symbol(basis: Basis, label: LabelledPartition, q: u32) -> Self {
        let mut x = Self::zero(basis, label.family(), q);
        x.terms.insert(label, BigRational::one());
        x
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<LabelledPartition, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, label: &LabelledPartition) -> BigRational {
        self.terms.get(label).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, label: LabelledPartition, coef: BigRational) {
        debug_assert_eq!(label.family(), self.family);
        let slot = self.terms.entry(label).or_insert_with(BigRational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::MixedBasis(format!(
                "{} and {} elements; convert explicitly first",
                self.basis, other.basis
            )));
        }
        if self.family != other.family || self.q != other.q {
            return Err(Error::ContextMismatch(format!(
                "({}, q={}) against ({}, q={})",
                self.family, self.q, other.family, other.q
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(&-BigRational::one()))
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.basis, self.family, self.q);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect();
        }
        out
    }
}

impl fmt::Display for ScElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| format!("{c}·{}[{l}]", self.basis))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A finite combination of `k`-fold tensors of basis symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    basis: Basis,
    family: Family,
    q: u32,
    arity: usize,
    terms: BTreeMap<Vec<LabelledPartition>, BigRational>,
}

impl TensorElement {
    pub fn zero(basis: Basis, family: Family, q: u32, arity: usize) -> Self {
        Self {
            basis,
            family,
            q,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `x ⊗ y`.
    pub fn outer(x: &ScElement, y: &ScElement) -> Result<Self> {
        x.same_context(y)?;
        let mut out = Self::zero(x.basis, x.family, x.q, 2);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                out.add_term(vec![a.clone(), b.clone()], c * d);
            }
        }
        Ok(out)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<LabelledPartition>, BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, key: Vec<LabelledPartition>, coef: BigRational) {
        debug_assert_eq!(key.len(), self.arity);
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<&ScElement> for TensorElement {
    fn from(x: &ScElement) -> Self {
        let mut out = Self::zero(x.basis, x.family, x.q, 1);
        for (l, c) in &x.terms {
            out.add_term(vec![l.clone()], c.clone());
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let factors: Vec<String> = k.iter().map(|l| format!("{}[{l}]", self.basis)).collect();
                format!("{c}·{}", factors.join(" ⊗ "))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Operations of `SC` over a fixed field and family, with memoized basis
/// changes and antipode.
pub struct ScAlgebra {
    family: Family,
    field: Field,
    to_p_cache: RefCell<HashMap<LabelledPartition, ScElement>>,
    antipode_cache: RefCell<HashMap<(Basis, LabelledPartition), ScElement>>,
}

impl ScAlgebra {
    pub fn new(family: Family, field: &Field) -> Result<Self> {
        if family == Family::B {
            return Err(Error::UnsupportedFamily {
                family,
                what: "Hopf operations (odd-size matrices)",
            });
        }
        Ok(Self {
            family,
            field: field.clone(),
            to_p_cache: RefCell::new(HashMap::new()),
            antipode_cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn zero(&self, basis: Basis) -> ScElement {
        ScElement::zero(basis, self.family, self.field.q())
    }

    pub fn symbol(&self, basis: Basis, label: LabelledPartition) -> ScElement {
        ScElement::symbol(basis, label, self.field.q())
    }

    /// The grade-0 symbol; `κ_∅ = P_∅` there.
    pub fn one(&self, basis: Basis) -> ScElement {
        self.symbol(basis, LabelledPartition::empty(self.family, 0))
    }

    fn check(&self, x: &ScElement) -> Result<()> {
        if x.family != self.family || x.q != self.field.q() {
            return Err(Error::ContextMismatch(format!(
                "element over ({}, q={}) in an algebra over ({}, q={})",
                x.family,
                x.q,
                self.family,
                self.field.q()
            )));
        }
        Ok(())
    }

    fn require(&self, x: &ScElement, basis: Basis) -> Result<()> {
        self.check(x)?;
        if x.basis != basis {
            return Err(Error::MixedBasis(format!(
                "expected a {basis} element, got {}",
                x.basis
            )));
        }
        Ok(())
    }

    fn linear(
        &self,
        x: &ScElement,
        out_basis: Basis,
        mut image: impl FnMut(&LabelledPartition) -> Result<ScElement>,
    ) -> Result<ScElement> {
        let mut out = self.zero(out_basis);
        for (l, c) in &x.terms {
            for (m, d) in &image(l)?.terms {
                out.add_term(m.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// `P_λ ↦ Σ_{μ ≥ λ} κ_μ`.
    pub fn to_kappa(&self, x: &ScElement) -> Result<ScElement> {
        self.require(x, Basis::P)?;
        self.linear(x, Basis::Kappa, |l| {
            let mut out = self.zero(Basis::Kappa);
            for m in superset_closure(l, &self.field) {
                out.add_term(m, BigRational::one());
            }
            Ok(out)
        })
    }

    /// Inverse of [`ScAlgebra::to_kappa`], by `κ_λ = P_λ − Σ_{μ > λ} κ_μ`.
    pub fn to_p(&self, x: &ScElement) -> Result<ScElement> {
        self.require(x, Basis::Kappa)?;
        self.linear(x, Basis::P, |l| Ok(self.kappa_in_p(l)))
    }

    fn kappa_in_p(&self, lambda: &LabelledPartition) -> ScElement {
        if let Some(hit) = self.to_p_cache.borrow().get(lambda) {
            return hit.clone();
        }
        let mut above = superset_closure(lambda, &self.field);
        above.sort_by_key(|m| std::cmp::Reverse(m.num_pairs()));
        for mu in &above {
            if self.to_p_cache.borrow().contains_key(mu) {
                continue;
            }
            let mut x = self.symbol(Basis::P, mu.clone());
            for nu in superset_closure(mu, &self.field) {
                if &nu != mu {
                    let sub = self.to_p_cache.borrow()[&nu].clone();
                    x = x.sub(&sub).expect("same context");
                }
            }
            self.to_p_cache.borrow_mut().insert(mu.clone(), x);
        }
        self.to_p_cache.borrow()[lambda].clone()
    }

    pub fn convert(&self, x: &ScElement, basis: Basis) -> Result<ScElement> {
        self.check(x)?;
        match (x.basis, basis) {
            (a, b) if a == b => Ok(x.clone()),
            (Basis::Kappa, Basis::P) => self.to_p(x),
            _ => self.to_kappa(x),
        }
    }

    /// Product of two basis symbols.
    pub fn product_symbols(
        &self,
        basis: Basis,
        lambda: &LabelledPartition,
        mu: &LabelledPartition,
    ) -> Result<ScElement> {
        let mut out = self.zero(basis);
        match basis {
            Basis::P => out.add_term(lambda.concat(mu)?, BigRational::one()),
            Basis::Kappa => {
                for nu in self.kappa_product_terms(lambda, mu)? {
                    out.add_term(nu, BigRational::one());
                }
            }
        }
        Ok(out)
    }

    /// The `ν` on `[±(k+m)]` restricting to `λ` on `[±k]` and to `μ↑^k` on
    /// the middle block: `λ ⊔ μ↑^k` plus any admissible crossing arcs.
    pub fn kappa_product_terms(
        &self,
        lambda: &LabelledPartition,
        mu: &LabelledPartition,
    ) -> Result<Vec<LabelledPartition>> {
        let base = lambda.concat(mu)?;
        let k = lambda.n();
        let size = base.size();
        Ok(extensions(&base, &self.field, |r, c| {
            r <= k && k < c && c <= size - k
        }))
    }

    pub fn product(&self, x: &ScElement, y: &ScElement) -> Result<ScElement> {
        self.check(x)?;
        x.same_context(y)?;
        let mut out = self.zero(x.basis);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let cd = c * d;
                for (m, e) in &self.product_symbols(x.basis, a, b)?.terms {
                    out.add_term(m.clone(), &cd * e);
                }
            }
        }
        Ok(out)
    }

    /// The `(A | Aᶜ)` summand of `Δ` on a basis symbol: zero unless `λ` splits
    /// cleanly over `A`.
    pub fn coproduct_component(
        &self,
        basis: Basis,
        lambda: &LabelledPartition,
        a: Subset,
    ) -> Result<TensorElement> {
        let mut out = TensorElement::zero(basis, self.family, self.field.q(), 2);
        let r = lambda.restrict_standardize(a)?;
        if r.splits_cleanly {
            out.add_term(vec![r.inside, r.outside], BigRational::one());
        }
        Ok(out)
    }

    /// `Δ(b_λ) = Σ_A b_{st_A(λ|_A)} ⊗ b_{st_{Aᶜ}(λ|_{Aᶜ})}` over clean splits,
    /// the same shape in both bases.
    pub fn coproduct_symbol(&self, basis: Basis, lambda: &LabelledPartition) -> Result<TensorElement> {
        let mut out = TensorElement::zero(basis, self.family, self.field.q(), 2);
        for a in lambda.clean_splits() {
            let r = lambda.restrict_standardize(a)?;
            out.add_term(vec![r.inside, r.outside], BigRational::one());
        }
        Ok(out)
    }

    pub fn coproduct(&self, x: &ScElement) -> Result<TensorElement> {
        self.check(x)?;
        let mut out = TensorElement::zero(x.basis, self.family, self.field.q(), 2);
        for (l, c) in &x.terms {
            for (k, d) in &self.coproduct_symbol(x.basis, l)?.terms {
                out.add_term(k.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// Coefficient of the grade-0 symbol.
    pub fn counit(&self, x: &ScElement) -> BigRational {
        x.coefficient(&LabelledPartition::empty(self.family, 0))
    }

    /// `S(b) = −Σ_{A ≠ [n]} S(b′_A)·b″_A`, from `m(S ⊗ id)Δ = uε`.
    pub fn antipode(&self, x: &ScElement) -> Result<ScElement> {
        self.check(x)?;
        self.linear(x, x.basis, |l| self.antipode_symbol(x.basis, l))
    }

    fn antipode_symbol(&self, basis: Basis, lambda: &LabelledPartition) -> Result<ScElement> {
        let key = (basis, lambda.clone());
        if let Some(hit) = self.antipode_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let n = lambda.n();
        let value = if n == 0 {
            self.symbol(basis, lambda.clone())
        } else {
            let mut acc = self.zero(basis);
            for a in lambda.clean_splits() {
                if a == Subset::full(n) {
                    continue;
                }
                let r = lambda.restrict_standardize(a)?;
                let left = self.antipode_symbol(basis, &r.inside)?;
                let term = self.product(&left, &self.symbol(basis, r.outside))?;
                acc = acc.sub(&term)?;
            }
            acc
        };
        self.antipode_cache.borrow_mut().insert(key, value.clone());
        Ok(value)
    }

    /// Componentwise product of two tensors of equal arity.
    pub fn tensor_product(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.basis != y.basis {
            return Err(Error::MixedBasis("tensor factors in different bases".into()));
        }
        if x.arity != y.arity {
            return Err(Error::ContextMismatch("tensors of different arity".into()));
        }
        let mut out = TensorElement::zero(x.basis, self.family, self.field.q(), x.arity);
        for (ka, ca) in &x.terms {
            for (kb, cb) in &y.terms {
                let mut partial: Vec<(Vec<LabelledPartition>, BigRational)> = vec![(Vec::new(), ca * cb)];
                for (a, b) in ka.iter().zip(kb) {
                    let prod = self.product_symbols(x.basis, a, b)?;
                    partial = partial
                        .into_iter()
                        .flat_map(|(key, c)| {
                            prod.terms.iter().map(move |(m, d)| {
                                let mut key = key.clone();
                                key.push(m.clone());
                                (key, &c * d)
                            })
                        })
                        .collect();
                }
                for (key, c) in partial {
                    out.add_term(key, c);
                }
            }
        }
        Ok(out)
    }

    /// Applies `Δ` to factor `i`, raising the arity by one.
    pub fn coproduct_at(&self, t: &TensorElement, i: usize) -> Result<TensorElement> {
        let mut out = TensorElement::zero(t.basis, self.family, self.field.q(), t.arity + 1);
        for (key, c) in &t.terms {
            for (split, d) in &self.coproduct_symbol(t.basis, &key[i])?.terms {
                let mut k = key[..i].to_vec();
                k.extend(split.iter().cloned());
                k.extend(key[i + 1..].iter().cloned());
                out.add_term(k, c * d);
            }
        }
        Ok(out)
    }

    /// Applies `ε` to factor `i`, lowering the arity by one.
    pub fn counit_at(&self, t: &TensorElement, i: usize) -> TensorElement {
        let unit = LabelledPartition::empty(self.family, 0);
        let mut out = TensorElement::zero(t.basis, self.family, self.field.q(), t.arity - 1);
        for (key, c) in &t.terms {
            if key[i] == unit {
                let mut k = key.clone();
                k.remove(i);
                out.add_term(k, c.clone());
            }
        }
        out
    }

    /// Converts every factor of a tensor.
    pub fn convert_tensor(&self, t: &TensorElement, basis: Basis) -> Result<TensorElement> {
        let mut out = TensorElement::zero(basis, self.family, self.field.q(), t.arity);
        for (key, c) in &t.terms {
            let mut partial: Vec<(Vec<LabelledPartition>, BigRational)> = vec![(Vec::new(), c.clone())];
            for l in key {
                let img = self.convert(&self.symbol(t.basis, l.clone()), basis)?;
                partial = partial
                    .into_iter()
                    .flat_map(|(key, c)| {
                        img.terms.iter().map(move |(m, d)| {
                            let mut key = key.clone();
                            key.push(m.clone());
                            (key, &c * d)
                        })
                    })
                    .collect();
            }
            for (key, c) in partial {
                out.add_term(key, c);
            }
        }
        Ok(out)
    }

    /// `m ∘ (S ⊗ id) ∘ Δ` when `left`, else `m ∘ (id ⊗ S) ∘ Δ`.
    pub fn antipode_convolution(&self, x: &ScElement, left: bool) -> Result<ScElement> {
        let mut out = self.zero(x.basis);
        for (key, c) in &self.coproduct(x)?.terms {
            let a = self.symbol(x.basis, key[0].clone());
            let b = self.symbol(x.basis, key[1].clone());
            let term = if left {
                self.product(&self.antipode(&a)?, &b)?
            } else {
                self.product(&a, &self.antipode(&b)?)?
            };
            out = out.add(&term.scaled(c))?;
        }
        Ok(out)
    }
}

/// Every coefficient is a nonnegative integer.
pub fn nonnegative_integral<'a>(coefs: impl IntoIterator<Item = &'a BigRational>) -> bool {
    coefs.into_iter().all(|c| c.is_integer() && !c.is_negative())
}

/// Signed count `(−1)^{|μ⁺| − |λ⁺|}` used by the closed form of `κ_λ` in the
/// `P` basis.
pub fn mobius_sign(lambda: &LabelledPartition, mu: &LabelledPartition) -> BigRational {
    let d = mu.num_pairs() - lambda.num_pairs();
    BigRational::from_integer(BigInt::from(if d.is_multiple_of(2) { 1 } else { -1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn d(n: usize, plus: &[(i32, i32, u32)]) -> LabelledPartition {
        LabelledPartition::from_plus_triples(Family::D, n, plus, &f3()).unwrap()
    }

    fn alg() -> ScAlgebra {
        ScAlgebra::new(Family::D, &f3()).unwrap()
    }

    fn one() -> BigRational {
        BigRational::one()
    }

    #[test]
    fn basis_change_small_grades() {
        let h = alg();
        let e1 = h.symbol(Basis::P, d(1, &[]));
        assert_eq!(h.to_kappa(&e1).unwrap(), h.symbol(Basis::Kappa, d(1, &[])));
        let p_empty = h.to_kappa(&h.symbol(Basis::P, d(2, &[]))).unwrap();
        assert_eq!(p_empty.terms().len(), 5);
        assert!(p_empty.terms().values().all(|c| c == &one()));
        let arc = d(2, &[(1, 2, 1)]);
        assert_eq!(
            h.to_kappa(&h.symbol(Basis::P, arc.clone())).unwrap(),
            h.symbol(Basis::Kappa, arc)
        );
    }

    #[test]
    fn basis_change_round_trip_and_closed_form() {
        let h = alg();
        for n in 0..=3 {
            for l in enumerate(Family::D, n, &f3()) {
                let k = h.symbol(Basis::Kappa, l.clone());
                let p = h.to_p(&k).unwrap();
                assert_eq!(h.to_kappa(&p).unwrap(), k);
                let mut closed = h.zero(Basis::P);
                for m in superset_closure(&l, &f3()) {
                    closed.add_term(m.clone(), mobius_sign(&l, &m));
                }
                assert_eq!(p, closed, "{l}");
                let back = h.symbol(Basis::P, l.clone());
                assert_eq!(h.to_p(&h.to_kappa(&back).unwrap()).unwrap(), back);
            }
        }
    }

    #[test]
    fn kappa_product_example() {
        let h = alg();
        let x = h.symbol(Basis::Kappa, d(2, &[(1, 2, 1)]));
        let y = h.symbol(Basis::Kappa, d(2, &[(1, -2, 2)]));
        let prod = h.product(&x, &y).unwrap();
        let mut expected = vec![d(4, &[(1, 2, 1), (3, -4, 2)])];
        for c in 1..=2 {
            expected.push(d(4, &[(1, 2, 1), (3, -4, 2), (2, 3, c)]));
            expected.push(d(4, &[(1, 2, 1), (3, -4, 2), (2, 4, c)]));
        }
        expected.sort();
        let got: Vec<_> = prod.terms().keys().cloned().collect();
        assert_eq!(got, expected);
        assert!(prod.terms().values().all(|c| c == &one()));
    }

    #[test]
    fn p_product_concatenates() {
        let h = alg();
        let x = h.symbol(Basis::P, d(2, &[(1, 2, 1)]));
        let y = h.symbol(Basis::P, d(2, &[(1, -2, 2)]));
        assert_eq!(
            h.product(&x, &y).unwrap(),
            h.symbol(Basis::P, d(4, &[(1, 2, 1), (3, -4, 2)]))
        );
        assert!(matches!(
            h.product(&x, &h.symbol(Basis::Kappa, d(1, &[]))),
            Err(Error::MixedBasis(_))
        ));
    }

    #[test]
    fn coproduct_examples() {
        let h = alg();
        let unit = h.one(Basis::Kappa);
        let t = h.coproduct(&unit).unwrap();
        assert_eq!(t.terms().len(), 1);
        let lam = d(2, &[(1, 2, 1)]);
        let t = h.coproduct(&h.symbol(Basis::Kappa, lam.clone())).unwrap();
        let keys: Vec<_> = t.terms().keys().cloned().collect();
        let e0 = d(0, &[]);
        let mut expected = vec![vec![lam.clone(), e0.clone()], vec![e0, lam]];
        expected.sort();
        assert_eq!(keys, expected);
    }

    #[test]
    fn coproduct_six_point_example() {
        let h = alg();
        let lam = d(6, &[(1, 4, 1), (4, -6, 2), (3, 5, 1)]);
        assert_eq!(lam.clean_splits().len(), 8);
        let t = h.coproduct(&h.symbol(Basis::Kappa, lam)).unwrap();
        assert_eq!(t.terms().values().map(|c| c.to_integer()).sum::<BigInt>(), BigInt::from(8));
        let key = vec![d(3, &[(1, 2, 1), (2, -3, 2)]), d(3, &[(2, 3, 1)])];
        assert_eq!(t.terms().get(&key), Some(&one()));
    }

    #[test]
    fn counit_values() {
        let h = alg();
        assert_eq!(h.counit(&h.one(Basis::Kappa)), one());
        let mut x = h.one(Basis::Kappa).scaled(&BigRational::from_integer(3.into()));
        x.add_term(d(2, &[(1, 2, 1)]), BigRational::from_integer(2.into()));
        assert_eq!(h.counit(&x), BigRational::from_integer(3.into()));
        assert_eq!(h.counit(&h.symbol(Basis::Kappa, d(1, &[]))), BigRational::zero());
    }

    #[test]
    fn antipode_examples() {
        let h = alg();
        assert_eq!(h.antipode(&h.one(Basis::Kappa)).unwrap(), h.one(Basis::Kappa));
        let x = h.symbol(Basis::P, d(2, &[(1, 2, 1)]));
        assert_eq!(h.antipode(&x).unwrap(), x.scaled(&-one()));
        for basis in [Basis::Kappa, Basis::P] {
            for n in 0..=2 {
                for l in enumerate(Family::D, n, &f3()) {
                    let x = h.symbol(basis, l);
                    let expected = h.one(basis).scaled(&h.counit(&x));
                    assert_eq!(h.antipode_convolution(&x, true).unwrap(), expected);
                    assert_eq!(h.antipode_convolution(&x, false).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn family_b_rejected() {
        assert!(ScAlgebra::new(Family::B, &f3()).is_err());
    }
}
