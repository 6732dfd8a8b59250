use std::fmt;

use serde::{Deserialize, Serialize};

use super::CycValue;
use crate::error::{Error, Result};

/// Largest field order handled by the table-driven extension arithmetic.
const MAX_EXTENSION_ORDER: u64 = 1 << 22;

/// Parameters of `F_q`, `q = p^r`, with `p` an odd prime.
///
/// For `r > 1` the field is `F_p[t] / (modulus)`; the modulus is stored monic,
/// lowest degree first, with `r + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    r: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn new(p: u64, r: u32, modulus: Option<&[i64]>) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic { q: 2u64.pow(r) });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if p > u32::MAX as u64 / 2 {
            return Err(Error::FieldTooLarge { q: p });
        }
        if r == 0 {
            return Err(Error::InvalidModulus("exponent r must be positive".into()));
        }
        let q = (p as u128).pow(r);
        if r > 1 && q > MAX_EXTENSION_ORDER as u128 {
            return Err(Error::FieldTooLarge { q: q as u64 });
        }
        let p32 = p as u32;
        let modulus = match (r, modulus) {
            (1, None) => Vec::new(),
            (1, Some(m)) => {
                // A degree-1 modulus is accepted but carries no information.
                let m = reduce_coeffs(m, p32);
                if m.len() != 2 || m[1] == 0 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a degree-1 polynomial, got {} coefficients",
                        m.len()
                    )));
                }
                Vec::new()
            }
            (_, None) => {
                return Err(Error::MissingModulus {
                    q: q as u64,
                    p,
                    r,
                })
            }
            (_, Some(m)) => {
                let mut m = reduce_coeffs(m, p32);
                if m.len() != r as usize + 1 || m[r as usize] == 0 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients with nonzero leading term",
                        r + 1
                    )));
                }
                let lead_inv = inv_mod(m[r as usize], p32);
                for c in m.iter_mut() {
                    *c = mul_mod(*c, lead_inv, p32);
                }
                if !is_irreducible(&m, p32) {
                    return Err(Error::InvalidModulus(format!(
                        "{} is reducible over F_{p}",
                        poly_string(&m)
                    )));
                }
                m
            }
        };
        Ok(Self { p: p32, r, modulus })
    }

    /// Builds the spec for a field of order `q`, factoring `q = p^r`.
    pub fn from_order(q: u64, modulus: Option<&[i64]>) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower { q });
        }
        if q.is_multiple_of(2) {
            return Err(Error::EvenCharacteristic { q });
        }
        let p = smallest_factor(q);
        let mut r = 0u32;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            r += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower { q });
        }
        Self::new(p, r, modulus)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.r)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

/// An element of `F_q`, encoded as the integer whose base-`p` digits are the
/// polynomial coordinates (lowest degree first).
///
/// Elements do not carry their field; arithmetic goes through [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// For callers that already know `code < q`.
    pub(crate) fn from_code_unchecked(code: u32) -> Self {
        FieldElement(code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// `F_q` with precomputed tables.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    // Only populated for r > 1.
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.q();
        let mut field = Field {
            spec,
            q,
            exp: Vec::new(),
            log: Vec::new(),
            trace: Vec::new(),
        };
        if field.spec.r > 1 {
            field.build_tables();
        }
        field
    }

    pub fn prime(p: u64) -> Result<Self> {
        Ok(Self::new(FieldSpec::prime(p)?))
    }

    pub fn from_order(q: u64, modulus: Option<&[i64]>) -> Result<Self> {
        Ok(Self::new(FieldSpec::from_order(q, modulus)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code < self.q as u64 {
            Ok(FieldElement(code as u32))
        } else {
            Err(Error::NotInField { code, q: self.q })
        }
    }

    /// Image of an integer under `Z -> F_p ⊆ F_q`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn check(&self, a: FieldElement) -> Result<FieldElement> {
        self.element(a.0 as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }

    /// Additive generators: the coordinate basis `1, t, ..., t^{r-1}`.
    pub fn additive_basis(&self) -> Vec<FieldElement> {
        (0..self.spec.r)
            .map(|k| FieldElement(self.spec.p.pow(k)))
            .collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if self.spec.r == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % p as u64) as u32);
        }
        let (mut x, mut y, mut out, mut w) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w = w.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if self.spec.r == 1 {
            return FieldElement((p - a.0) % p);
        }
        let (mut x, mut out, mut w) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * w;
            x /= p;
            w = w.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.spec.r == 1 {
            return FieldElement(mul_mod(a.0, b.0, self.spec.p));
        }
        let order = self.q - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % order;
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        if self.spec.r == 1 {
            return Ok(FieldElement(inv_mod(a.0, self.spec.p)));
        }
        let order = self.q - 1;
        let e = (order - self.log[a.0 as usize]) % order;
        Ok(FieldElement(self.exp[e as usize]))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Checked arithmetic: both operands must be elements of this field.
    pub fn arith(&self, op: FieldOp, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
        })
    }

    /// Absolute trace `F_q -> F_p`, as an integer in `0..p`.
    pub fn trace(&self, a: FieldElement) -> u32 {
        if self.spec.r == 1 {
            a.0
        } else {
            self.trace[a.0 as usize]
        }
    }

    /// The additive character `a ↦ ζ_p^{Tr(a)}`.
    pub fn theta(&self, a: FieldElement) -> CycValue {
        CycValue::zeta_pow(self.spec.p, self.trace(a) as u64)
    }

    fn build_tables(&mut self) {
        let p = self.spec.p;
        let order = self.q - 1;
        let generator = (2..self.q)
            .find(|&g| self.poly_order(g) == order)
            .expect("the multiplicative group of a finite field is cyclic");
        self.exp = vec![0; order as usize];
        self.log = vec![0; self.q as usize];
        let mut x = 1u32;
        for e in 0..order {
            self.exp[e as usize] = x;
            self.log[x as usize] = e;
            x = self.poly_mul(x, generator);
        }
        self.trace = (0..self.q)
            .map(|a| {
                let mut acc = FieldElement::ZERO;
                let mut frob = FieldElement(a);
                for _ in 0..self.spec.r {
                    acc = self.add(acc, frob);
                    frob = self.pow(frob, p as u64);
                }
                debug_assert!(acc.0 < p, "trace must land in the prime field");
                acc.0
            })
            .collect();
    }

    fn poly_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.poly_mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    /// Multiplication through coordinates; only used while building tables.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let r = self.spec.r as usize;
        let da = digits(a, p, r);
        let db = digits(b, p, r);
        let mut prod = vec![0u32; 2 * r - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        for deg in (r..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            // t^r = -(m_0 + ... + m_{r-1} t^{r-1})
            for k in 0..r {
                let sub = mul_mod(c, self.spec.modulus[k], p);
                prod[deg - r + k] = (prod[deg - r + k] + p - sub) % p;
            }
            prod[deg] = 0;
        }
        undigits(&prod[..r], p)
    }
}

fn digits(mut a: u32, p: u32, r: usize) -> Vec<u32> {
    let mut out = vec![0; r];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u32
}

fn reduce_coeffs(m: &[i64], p: u32) -> Vec<u32> {
    m.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_factor(n) == n
}

fn smallest_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(monic: &[u32], p: u32) -> bool {
    let deg = monic.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = digits(code as u32, p, d);
            divisor.push(1);
            if poly_rem_is_zero(monic, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut rem = num.to_vec();
    let d = monic_div.len() - 1;
    for top in (d..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for k in 0..=d {
            let sub = mul_mod(c, monic_div[k], p);
            rem[top - d + k] = (rem[top - d + k] + p - sub) % p;
        }
    }
    rem[..d].iter().all(|&c| c == 0)
}

fn poly_string(m: &[u32]) -> String {
    let terms: Vec<String> = m
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(k, c)| match k {
            0 => format!("{c}"),
            1 => format!("{c}t"),
            _ => format!("{c}t^{k}"),
        })
        .collect();
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Field {
        Field::from_order(9, Some(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn prime_field_examples() {
        let f = Field::prime(3).unwrap();
        let two = f.element(2).unwrap();
        assert_eq!(f.add(two, two), FieldElement::ONE);
        assert_eq!(f.inv(two).unwrap(), two);
        assert!(matches!(
            f.inv(FieldElement::ZERO),
            Err(Error::DivisionByZero { .. })
        ));
    }

    #[test]
    fn nine_element_field_t_squared_is_minus_one() {
        let f = f9();
        let t = f.element(3).unwrap();
        assert_eq!(f.mul(t, t), f.element(2).unwrap());
    }

    #[test]
    fn extension_field_axioms_exhaustive() {
        let f = f9();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.poly_mul(a.0, b.0).into_elem());
                for c in f.elements() {
                    let lhs = f.mul(a, f.add(b, c));
                    let rhs = f.add(f.mul(a, b), f.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    trait IntoElem {
        fn into_elem(self) -> FieldElement;
    }

    impl IntoElem for u32 {
        fn into_elem(self) -> FieldElement {
            FieldElement(self)
        }
    }

    #[test]
    fn rejects_characteristic_two_and_bad_orders() {
        assert!(matches!(
            FieldSpec::from_order(4, None),
            Err(Error::EvenCharacteristic { .. })
        ));
        assert!(matches!(
            FieldSpec::prime(2),
            Err(Error::EvenCharacteristic { .. })
        ));
        assert!(matches!(
            FieldSpec::from_order(15, None),
            Err(Error::NotPrimePower { .. })
        ));
        assert!(matches!(
            FieldSpec::from_order(9, None),
            Err(Error::MissingModulus { .. })
        ));
        // t^2 - 1 = (t - 1)(t + 1)
        assert!(matches!(
            FieldSpec::from_order(9, Some(&[-1, 0, 1])),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn non_monic_modulus_is_normalized() {
        // 2t^2 + 2 = 2(t^2 + 1)
        let spec = FieldSpec::from_order(9, Some(&[2, 0, 2])).unwrap();
        assert_eq!(spec.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn checked_arith_rejects_foreign_elements() {
        let f = Field::prime(3).unwrap();
        let big = FieldElement(7);
        assert!(matches!(
            f.arith(FieldOp::Add, big, FieldElement::ONE),
            Err(Error::NotInField { .. })
        ));
        assert_eq!(
            f.arith(FieldOp::Neg, FieldElement::ONE, FieldElement::ZERO)
                .unwrap(),
            FieldElement(2)
        );
    }

    #[test]
    fn trace_is_additive_and_surjective() {
        for f in [f9(), Field::from_order(27, Some(&[1, 2, 0, 1])).unwrap()] {
            let mut seen = vec![false; f.p() as usize];
            for a in f.elements() {
                seen[f.trace(a) as usize] = true;
                for b in f.elements() {
                    assert_eq!(
                        f.trace(f.add(a, b)),
                        (f.trace(a) + f.trace(b)) % f.p()
                    );
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}
