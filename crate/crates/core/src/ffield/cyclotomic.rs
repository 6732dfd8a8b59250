use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `Q(ζ_p)` in the power basis `1, ζ, ..., ζ^{p-2}`.
///
/// Always reduced modulo `1 + ζ + ... + ζ^{p-1}`, so structural equality is
/// equality in the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycValue {
    p: u32,
    coeffs: Vec<BigRational>,
}

impl CycValue {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 3, "cyclotomic values need an odd prime p");
        Self {
            p,
            coeffs: vec![BigRational::zero(); p as usize - 1],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut v = Self::zero(p);
        v.coeffs[0] = r;
        v
    }

    pub fn from_int(p: u32, k: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(k)))
    }

    /// `q^e` for a (possibly negative) exponent.
    pub fn power_of(p: u32, q: u32, e: i64) -> Self {
        let base = BigInt::from(q).pow(e.unsigned_abs() as u32);
        let r = if e >= 0 {
            BigRational::from_integer(base)
        } else {
            BigRational::new(BigInt::one(), base)
        };
        Self::from_rational(p, r)
    }

    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut full = vec![BigRational::zero(); p as usize];
        full[(k % p as u64) as usize] = BigRational::one();
        Self::reduce(p, full)
    }

    /// From coordinates in the power basis of length `p - 1`.
    pub fn from_coeffs(p: u32, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), p as usize - 1);
        Self { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the value lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation, `ζ ↦ ζ^{p-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (k, c) in self.coeffs.iter().enumerate() {
            full[(p - k) % p] = c.clone();
        }
        Self::reduce(self.p, full)
    }

    /// Writes the value as `scale · Σ c_k ζ^k` with coprime integer `c_k`
    /// and a positive-denominator rational `scale`.
    pub fn integral_form(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), vec![BigInt::zero(); self.coeffs.len()]);
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let ints = ints.into_iter().map(|c| c / &g).collect();
        (BigRational::new(g, den), ints)
    }

    fn reduce(p: u32, mut full: Vec<BigRational>) -> Self {
        debug_assert_eq!(full.len(), p as usize);
        let top = full.pop().expect("p >= 3");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        Self { p, coeffs: full }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "cyclotomic values from different fields Q(ζ_{}) and Q(ζ_{})",
            self.p, other.p
        );
    }
}

impl Add for &CycValue {
    type Output = CycValue;

    fn add(self, rhs: &CycValue) -> CycValue {
        self.same_field(rhs);
        CycValue {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycValue {
    type Output = CycValue;

    fn sub(self, rhs: &CycValue) -> CycValue {
        self + &(-rhs)
    }
}

impl Neg for &CycValue {
    type Output = CycValue;

    fn neg(self) -> CycValue {
        CycValue {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycValue {
    type Output = CycValue;

    fn mul(self, rhs: &CycValue) -> CycValue {
        self.same_field(rhs);
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        CycValue::reduce(self.p, full)
    }
}

impl Add for CycValue {
    type Output = CycValue;

    fn add(self, rhs: CycValue) -> CycValue {
        &self + &rhs
    }
}

impl Mul for CycValue {
    type Output = CycValue;

    fn mul(self, rhs: CycValue) -> CycValue {
        &self * &rhs
    }
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{a}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{a}*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, k: u64) -> CycValue {
        CycValue::zeta_pow(p, k)
    }

    #[test]
    fn cyclotomic_relation() {
        let s = &(&CycValue::one(3) + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn conj_of_zeta5() {
        let c = z(5, 1).conj();
        // ζ^4 = -(1 + ζ + ζ^2 + ζ^3)
        let expected = CycValue::from_coeffs(
            5,
            vec![BigRational::from_integer((-1).into()); 4],
        );
        assert_eq!(c, expected);
        assert_eq!(c, z(5, 4));
    }

    #[test]
    fn zeta3_times_zeta3_squared() {
        assert_eq!(&z(3, 1) * &z(3, 2), CycValue::one(3));
    }

    #[test]
    fn integral_form_splits_scale() {
        let third = BigRational::new(1.into(), 3.into());
        let v = &z(5, 2).scale(&third) + &CycValue::from_rational(5, third.clone() * BigRational::from_integer(2.into()));
        let (scale, ints) = v.integral_form();
        assert_eq!(scale, third);
        assert_eq!(ints, vec![2.into(), 0.into(), 1.into(), 0.into()]);
    }

    #[test]
    fn display_is_readable() {
        let v = &CycValue::from_int(3, -2) + &z(3, 1);
        assert_eq!(v.to_string(), "-2 + z");
        assert_eq!(z(3, 2).to_string(), "-1 - z");
    }
}
