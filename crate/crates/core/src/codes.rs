//! Recognition of polynomial and cyclic codes.
//!
//! A codeword `(c_1, ..., c_n)` is read as the polynomial
//! `c_1 + c_2 X + ... + c_n X^{n-1}`, so the leftmost coordinate (the most
//! significant bit of a packed mask) is the constant coefficient.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lcs::{span_basis, LinearCode};
use crate::poly::BinaryPolynomial;

/// Outcome of [`classify_code`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeClassification {
    pub is_polynomial: bool,
    pub generator: Option<BinaryPolynomial>,
    pub is_cyclic: bool,
}

impl CodeClassification {
    fn not_polynomial() -> Self {
        CodeClassification {
            is_polynomial: false,
            generator: None,
            is_cyclic: false,
        }
    }
}

pub fn poly_gcd(p: &BinaryPolynomial, q: &BinaryPolynomial) -> Result<BinaryPolynomial> {
    p.gcd(q)
}

/// Whether `p` divides `q`; `p` must be nonzero.
pub fn poly_divides(p: &BinaryPolynomial, q: &BinaryPolynomial) -> Result<bool> {
    p.divides(q)
}

pub fn mask_to_poly(mask: u64, length: usize) -> BinaryPolynomial {
    let coeffs: Vec<bool> = (1..=length)
        .map(|i| mask >> (length - i) & 1 == 1)
        .collect();
    BinaryPolynomial::from_coeffs(&coeffs)
}

/// Inverse of [`mask_to_poly`]; the degree must be below `length`.
pub fn poly_to_mask(poly: &BinaryPolynomial, length: usize) -> Result<u64> {
    if length == 0 || length > 64 {
        return Err(Error::CodeLength(length));
    }
    if let Some(degree) = poly.degree().filter(|&deg| deg >= length) {
        return Err(Error::GeneratorDegree { degree, length });
    }
    Ok((0..length)
        .filter(|&j| poly.coeff(j))
        .fold(0u64, |acc, j| acc | 1 << (length - 1 - j)))
}

/// Rows `X^i g(X)` for `0 <= i < n - deg(g)`, packed as masks.
pub fn generator_matrix(generator: &BinaryPolynomial, length: usize) -> Result<Vec<u64>> {
    let degree = generator.degree().ok_or(Error::ZeroPolynomial)?;
    if degree == 0 || degree >= length {
        return Err(Error::GeneratorDegree { degree, length });
    }
    (0..length - degree)
        .map(|i| poly_to_mask(&generator.shl(i), length))
        .collect()
}

/// Decides whether `code` is generated by the shifts of a single polynomial.
///
/// The candidate generator is the gcd of the basis polynomials. Every codeword
/// is a multiple of it, and the multiples of degree below `n` form a space of
/// dimension `n - deg`, so the code is polynomial exactly when
/// `deg(gcd) = n - k`.
pub fn classify_code(code: &LinearCode) -> CodeClassification {
    let (n, k) = (code.length(), code.dimension());
    if k == 0 {
        return CodeClassification::not_polynomial();
    }
    let gcd = code
        .basis()
        .iter()
        .map(|&row| mask_to_poly(row, n))
        .reduce(|acc, p| acc.gcd(&p).expect("basis rows are nonzero"))
        .expect("dimension is positive");
    if gcd.degree() != Some(n - k) {
        return CodeClassification::not_polynomial();
    }
    if k < n {
        let regenerated = generator_matrix(&gcd, n)
            .and_then(|rows| span_basis(n, &rows))
            .expect("generator degree checked above");
        assert_eq!(&regenerated, code, "gcd-degree criterion violated");
    }
    let cycle = &BinaryPolynomial::monomial(n) + &BinaryPolynomial::one();
    let is_cyclic = gcd.divides(&cycle).expect("gcd is nonzero");
    CodeClassification {
        is_polynomial: true,
        generator: Some(gcd),
        is_cyclic,
    }
}

/// Cyclic left shift of an `n`-bit codeword: the first coordinate becomes the last.
pub fn rotate_left(mask: u64, length: usize) -> u64 {
    let full = if length == 64 {
        u64::MAX
    } else {
        (1 << length) - 1
    };
    ((mask << 1) | (mask >> (length - 1))) & full
}
