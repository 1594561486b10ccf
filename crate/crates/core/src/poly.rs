//! Polynomials over GF(2), packed into 64-bit limbs.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial over GF(2); bit `i` of the packed limbs is the coefficient of `X^i`.
///
/// Always normalized: no trailing zero limbs, so the zero polynomial is the
/// empty limb vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinaryPolynomial {
    limbs: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        BinaryPolynomial { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_bitmask(1)
    }

    /// `X^exp`.
    pub fn monomial(exp: usize) -> Self {
        let mut limbs = vec![0u64; exp / 64 + 1];
        limbs[exp / 64] = 1 << (exp % 64);
        BinaryPolynomial { limbs }
    }

    pub fn from_bitmask(mask: u64) -> Self {
        Self::from_limbs(vec![mask])
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = BinaryPolynomial { limbs };
        p.normalize();
        p
    }

    /// `coeffs[i]` is the coefficient of `X^i`.
    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        let mut limbs = vec![0u64; coeffs.len().div_ceil(64)];
        for (i, _) in coeffs.iter().enumerate().filter(|(_, &c)| c) {
            limbs[i / 64] |= 1 << (i % 64);
        }
        Self::from_limbs(limbs)
    }

    /// Packed form when the degree is below 64.
    pub fn to_bitmask(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|limb| limb >> (i % 64) & 1 == 1)
    }

    /// Coefficients `X^0 .. X^{len-1}`.
    pub fn coeffs(&self, len: usize) -> Vec<bool> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Multiplication by `X^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + words + 1];
        for (i, &limb) in self.limbs.iter().enumerate() {
            limbs[i + words] |= limb << bits;
            if bits != 0 {
                limbs[i + words + 1] |= limb >> (64 - bits);
            }
        }
        Self::from_limbs(limbs)
    }

    fn xor_assign(&mut self, other: &Self) {
        if self.limbs.len() < other.limbs.len() {
            self.limbs.resize(other.limbs.len(), 0);
        }
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
        self.normalize();
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let mut quotient = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem.xor_assign(&divisor.shl(shift));
            quotient.xor_assign(&Self::monomial(shift));
        }
        Ok((quotient, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Greatest common divisor by Euclid's algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: Self) -> BinaryPolynomial {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: Self) -> BinaryPolynomial {
        let mut out = BinaryPolynomial::zero();
        for i in 0..=self.degree().unwrap_or(0) {
            if self.coeff(i) {
                out.xor_assign(&rhs.shl(i));
            }
        }
        out
    }
}

/// `1+X+X^3`; the zero polynomial renders as `0`.
impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return f.write_str("0");
        };
        let terms: Vec<String> = (0..=deg)
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

impl Serialize for BinaryPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_bitmask() {
            Some(mask) => serializer.serialize_u64(mask),
            None => Err(serde::ser::Error::custom(
                "polynomial degree exceeds 63, no bitmask form",
            )),
        }
    }
}

impl<'de> Deserialize<'de> for BinaryPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        u64::deserialize(deserializer).map(BinaryPolynomial::from_bitmask)
    }
}
