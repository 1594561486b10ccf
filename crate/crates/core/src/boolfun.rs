//! Single-output Boolean functions and their cryptographic measures.
//!
//! Truth tables are stored in lexicographic input order: index `k` holds
//! `f(x_1, ..., x_n)` where `x_1` is the most significant bit of `k`. The
//! same convention is used for Walsh masks and ANF monomial indices, and is
//! inherited by every other module of the crate.

use std::fmt;

use crate::error::{Error, Result};
pub use crate::poly::BinaryPolynomial;

/// Truth table of an `n_vars`-variable Boolean function.
///
/// Used both for CA local rules (where `n_vars` is the diameter) and for
/// S-box component functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    n_vars: usize,
    table: Vec<bool>,
}

/// Generating function `g` of a bipermutive rule `x_1 ^ g(x_2..x_{d-1}) ^ x_d`.
pub type GeneratingFunction = LocalRule;

/// Walsh spectrum, indexed by mask under the truth-table bit convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n_vars: usize,
    values: Vec<i32>,
}

/// Algebraic normal form: `coeffs[u]` is the coefficient of the monomial
/// whose variables are the set bits of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfForm {
    n_vars: usize,
    coeffs: Vec<bool>,
}

impl LocalRule {
    pub fn new(n_vars: usize, table: Vec<bool>) -> Result<Self> {
        let expected = table_len(n_vars)?;
        if table.len() != expected {
            return Err(Error::TableLength {
                expected,
                found: table.len(),
            });
        }
        Ok(LocalRule { n_vars, table })
    }

    /// Builds the truth table by evaluating `f` on every input index.
    pub fn from_fn(n_vars: usize, f: impl FnMut(usize) -> bool) -> Result<Self> {
        let len = table_len(n_vars)?;
        Ok(LocalRule {
            n_vars,
            table: (0..len).map(f).collect(),
        })
    }

    /// Decodes a Wolfram-style rule number: bit `k` of `number` is the output
    /// on the input whose bits spell `k`.
    pub fn from_rule_number(number: u128, diameter: usize) -> Result<Self> {
        if diameter > 7 {
            return Err(Error::RuleNumberTooWide(diameter));
        }
        let len = 1usize << diameter;
        if len < 128 && number >> len != 0 {
            return Err(Error::RuleOutOfRange {
                number,
                diameter,
                table_len: len,
            });
        }
        Ok(LocalRule {
            n_vars: diameter,
            table: (0..len).map(|k| (number >> k) & 1 == 1).collect(),
        })
    }

    /// Inverse of [`LocalRule::from_rule_number`]; `None` above 7 variables.
    pub fn rule_number(&self) -> Option<u128> {
        if self.n_vars > 7 {
            return None;
        }
        Some(
            self.table
                .iter()
                .enumerate()
                .filter(|(_, &bit)| bit)
                .fold(0u128, |acc, (k, _)| acc | (1u128 << k)),
        )
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Output on the input with integer encoding `index` (x_1 most significant).
    #[inline]
    pub fn eval(&self, index: usize) -> bool {
        self.table[index]
    }

    /// Output on an explicit input vector `(x_1, ..., x_n)`.
    pub fn eval_bits(&self, input: &[bool]) -> Result<bool> {
        if input.len() != self.n_vars {
            return Err(Error::InputLength {
                expected: self.n_vars,
                found: input.len(),
            });
        }
        Ok(self.table[bits_to_index(input)])
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    /// Walsh transform via the in-place butterfly.
    pub fn walsh_transform(&self) -> WalshSpectrum {
        let mut values: Vec<i32> = self
            .table
            .iter()
            .map(|&bit| if bit { -1 } else { 1 })
            .collect();
        fast_walsh_hadamard(&mut values);
        WalshSpectrum {
            n_vars: self.n_vars,
            values,
        }
    }

    /// Hamming distance to the nearest affine function.
    pub fn nonlinearity(&self) -> u32 {
        self.walsh_transform().nonlinearity()
    }

    /// Binary Möbius transform of the truth table.
    pub fn anf(&self) -> AnfForm {
        let mut coeffs = self.table.clone();
        moebius_in_place(&mut coeffs);
        AnfForm {
            n_vars: self.n_vars,
            coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.anf().degree()
    }

    pub fn is_balanced(&self) -> bool {
        self.n_vars > 0 && 2 * self.weight() == self.table.len()
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    pub fn is_linear(&self) -> bool {
        let anf = self.anf();
        anf.degree() <= 1 && !anf.coeffs[0]
    }

    /// Returns `g` when the rule has the form `x_1 ^ g(x_2, ..., x_{d-1}) ^ x_d`.
    ///
    /// Flipping either outer variable must flip the output on every input;
    /// `g` is then read off the inputs with both outer variables cleared.
    pub fn generating_function(&self) -> Option<GeneratingFunction> {
        let d = self.n_vars;
        if d < 2 {
            return None;
        }
        let left = 1usize << (d - 1);
        let permutive = (0..self.table.len())
            .all(|k| self.table[k] != self.table[k ^ left] && self.table[k] != self.table[k ^ 1]);
        if !permutive {
            return None;
        }
        let inner = d - 2;
        Some(LocalRule {
            n_vars: inner,
            table: (0..1usize << inner).map(|m| self.table[m << 1]).collect(),
        })
    }

    pub fn is_bipermutive(&self) -> bool {
        self.generating_function().is_some()
    }

    /// Associated polynomial `1 + a_2 X + ... + a_b X^{b-1} + X^b` of a linear
    /// bipermutive rule `x_1 ^ a_2 x_2 ^ ... ^ a_b x_b ^ x_d`.
    pub fn rule_polynomial(&self) -> Result<BinaryPolynomial> {
        if !self.is_linear() {
            return Err(Error::NotLinear(self.describe()));
        }
        if !self.is_bipermutive() {
            return Err(Error::NotBipermutive(self.describe()));
        }
        let d = self.n_vars;
        let anf = self.anf();
        // variable x_i is the monomial with bit (d - i) set; it maps to X^{i-1}
        let coeffs: Vec<bool> = (1..=d).map(|i| anf.coeffs[1 << (d - i)]).collect();
        Ok(BinaryPolynomial::from_coeffs(&coeffs))
    }

    /// Short human-readable label: rule number when available, else the ANF.
    pub fn describe(&self) -> String {
        match self.rule_number() {
            Some(number) => format!("{number} (d={})", self.n_vars),
            None => format!("[{}]", self.anf()),
        }
    }
}

impl fmt::Debug for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self
            .table
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        write!(f, "LocalRule(n={}, {})", self.n_vars, bits)
    }
}

impl WalshSpectrum {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn max_abs(&self) -> u32 {
        self.values
            .iter()
            .map(|w| w.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn nonlinearity(&self) -> u32 {
        if self.n_vars == 0 {
            return 0;
        }
        (1u32 << (self.n_vars - 1)) - self.max_abs() / 2
    }
}

impl AnfForm {
    pub fn new(n_vars: usize, coeffs: Vec<bool>) -> Result<Self> {
        let expected = table_len(n_vars)?;
        if coeffs.len() != expected {
            return Err(Error::TableLength {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(AnfForm { n_vars, coeffs })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn coeffs(&self) -> &[bool] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.monomials()
            .map(|u| u.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Indices `u` with `a_u = 1`.
    pub fn monomials(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(u, _)| u)
    }

    /// Variables (1-based) appearing in monomial `u`.
    pub fn monomial_vars(&self, u: usize) -> Vec<usize> {
        (1..=self.n_vars)
            .filter(|&i| u >> (self.n_vars - i) & 1 == 1)
            .collect()
    }

    pub fn to_rule(&self) -> LocalRule {
        let mut table = self.coeffs.clone();
        moebius_in_place(&mut table);
        LocalRule {
            n_vars: self.n_vars,
            table,
        }
    }
}

/// Renders `x1+x3+x2*x3`: constant first, then by degree, then by variables.
impl fmt::Display for AnfForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<Vec<usize>> = self.monomials().map(|u| self.monomial_vars(u)).collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let rendered: Vec<String> = terms
            .iter()
            .map(|vars| {
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.iter()
                        .map(|i| format!("x{i}"))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&rendered.join("+"))
    }
}

/// In-place Walsh-Hadamard butterfly over a power-of-two slice.
pub fn fast_walsh_hadamard(values: &mut [i32]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for j in block..block + half {
                let (a, b) = (values[j], values[j + half]);
                values[j] = a + b;
                values[j + half] = a - b;
            }
        }
        half *= 2;
    }
}

fn moebius_in_place(bits: &mut [bool]) {
    let len = bits.len();
    let mut step = 1;
    while step < len {
        for k in 0..len {
            if k & step != 0 {
                bits[k] ^= bits[k ^ step];
            }
        }
        step *= 2;
    }
}

/// Integer encoding of a bit vector, first element most significant.
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// `len`-bit expansion of `index`, most significant bit first.
pub fn index_to_bits(index: usize, len: usize) -> Vec<bool> {
    (0..len).rev().map(|i| (index >> i) & 1 == 1).collect()
}

fn table_len(n_vars: usize) -> Result<usize> {
    // 2^24 entries is far beyond anything the analysis needs
    if n_vars > 24 {
        return Err(Error::TooManyVariables(n_vars));
    }
    Ok(1 << n_vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(n: usize, f: impl Fn(&[bool]) -> bool) -> LocalRule {
        LocalRule::from_fn(n, |k| f(&index_to_bits(k, n))).unwrap()
    }

    #[test]
    fn rule_numbers() {
        let chi = LocalRule::from_rule_number(210, 3).unwrap();
        let expected = rule(3, |x| x[0] ^ x[2] ^ (x[1] & x[2]));
        assert_eq!(chi, expected);
        assert_eq!(chi.rule_number(), Some(210));

        let zero = LocalRule::from_rule_number(0, 2).unwrap();
        assert_eq!(zero.weight(), 0);

        let xor = LocalRule::from_rule_number(6, 2).unwrap();
        assert_eq!(xor.table(), &[false, true, true, false]);
    }

    #[test]
    fn rule_number_out_of_range() {
        let err = LocalRule::from_rule_number(256, 3).unwrap_err();
        assert_eq!(
            err,
            Error::RuleOutOfRange {
                number: 256,
                diameter: 3,
                table_len: 8
            }
        );
        assert!(err.to_string().contains("2^8"));
        assert!(LocalRule::from_rule_number(u128::MAX, 7).is_ok());
        assert!(LocalRule::from_rule_number(0, 8).is_err());
    }

    #[test]
    fn walsh_examples() {
        let zero = LocalRule::from_rule_number(0, 2).unwrap();
        assert_eq!(zero.walsh_transform().values(), &[4, 0, 0, 0]);

        let x1 = rule(2, |x| x[0]);
        assert_eq!(x1.walsh_transform().values(), &[0, 0, 4, 0]);

        let and = rule(2, |x| x[0] & x[1]);
        assert_eq!(and.walsh_transform().values(), &[2, 2, 2, -2]);
    }

    #[test]
    fn nonlinearity_examples() {
        assert_eq!(rule(3, |x| x[0] ^ x[2]).nonlinearity(), 0);
        assert_eq!(rule(2, |x| x[0] & x[1]).nonlinearity(), 1);
        assert_eq!(rule(3, |x| x[0] ^ (x[1] & x[2])).nonlinearity(), 2);
        assert_eq!(
            LocalRule::from_rule_number(210, 3).unwrap().nonlinearity(),
            2
        );
    }

    #[test]
    fn anf_examples() {
        let xor = LocalRule::new(2, vec![false, true, true, false]).unwrap();
        let anf = xor.anf();
        assert_eq!(anf.monomials().collect::<Vec<_>>(), vec![0b01, 0b10]);
        assert_eq!(anf.to_string(), "x1+x2");

        let and = LocalRule::new(2, vec![false, false, false, true]).unwrap();
        assert_eq!(and.anf().monomials().collect::<Vec<_>>(), vec![0b11]);

        let chi = LocalRule::from_rule_number(210, 3).unwrap();
        assert_eq!(
            chi.anf().monomials().collect::<Vec<_>>(),
            vec![0b001, 0b011, 0b100]
        );
        assert_eq!(chi.anf().to_string(), "x1+x3+x2*x3");
        assert_eq!(chi.anf().to_rule(), chi);
    }

    #[test]
    fn anf_rendering_edge_cases() {
        assert_eq!(
            LocalRule::from_rule_number(0, 3).unwrap().anf().to_string(),
            "0"
        );
        let not_x1 = rule(2, |x| !x[0]);
        assert_eq!(not_x1.anf().to_string(), "1+x1");
    }

    #[test]
    fn degree_and_balance() {
        assert_eq!(LocalRule::from_rule_number(0, 3).unwrap().degree(), 0);
        assert_eq!(LocalRule::from_rule_number(6, 2).unwrap().degree(), 1);
        let chi = LocalRule::from_rule_number(210, 3).unwrap();
        assert_eq!(chi.degree(), 2);

        assert!(LocalRule::from_rule_number(6, 2).unwrap().is_balanced());
        assert!(!LocalRule::from_rule_number(8, 2).unwrap().is_balanced());
        assert!(chi.is_balanced());
    }

    #[test]
    fn bipermutive_examples() {
        let g = rule(3, |x| x[0] ^ x[2]).generating_function().unwrap();
        assert_eq!(g.n_vars(), 1);
        assert_eq!(g.weight(), 0);

        let f = rule(4, |x| x[0] ^ (x[1] & x[2]) ^ x[3]);
        let g = f.generating_function().unwrap();
        assert_eq!(g, rule(2, |y| y[0] & y[1]));

        assert!(rule(3, |x| (x[0] & x[1]) ^ x[2])
            .generating_function()
            .is_none());
        assert!(!LocalRule::from_rule_number(210, 3)
            .unwrap()
            .is_bipermutive());
    }

    #[test]
    fn bipermutive_diameter_two() {
        let xor = LocalRule::from_rule_number(6, 2).unwrap();
        let g = xor.generating_function().unwrap();
        assert_eq!((g.n_vars(), g.table()), (0, &[false][..]));
        let xnor = LocalRule::from_rule_number(9, 2).unwrap();
        assert_eq!(xnor.generating_function().unwrap().table(), &[true]);
        assert!(LocalRule::from_rule_number(1, 1)
            .unwrap()
            .generating_function()
            .is_none());
    }

    #[test]
    fn linearity_examples() {
        let xor = LocalRule::from_rule_number(6, 2).unwrap();
        assert!(xor.is_linear() && xor.is_affine());
        let not_x1 = rule(2, |x| !x[0]);
        assert!(not_x1.is_affine() && !not_x1.is_linear());
        let and = rule(2, |x| x[0] & x[1]);
        assert!(!and.is_affine() && !and.is_linear());
    }

    #[test]
    fn rule_polynomial_examples() {
        let p = rule(3, |x| x[0] ^ x[2]).rule_polynomial().unwrap();
        assert_eq!(p, BinaryPolynomial::from_bitmask(0b101));
        let p = rule(3, |x| x[0] ^ x[1] ^ x[2]).rule_polynomial().unwrap();
        assert_eq!(p, BinaryPolynomial::from_bitmask(0b111));
        assert_eq!(p.degree(), Some(2));
        let p = rule(5, |x| x[0] ^ x[1] ^ x[3] ^ x[4])
            .rule_polynomial()
            .unwrap();
        assert_eq!(p.to_string(), "1+X+X^3+X^4");

        let nonlinear = rule(4, |x| x[0] ^ (x[1] & x[2]) ^ x[3]);
        assert!(matches!(
            nonlinear.rule_polynomial(),
            Err(Error::NotLinear(_))
        ));
        let not_bip = rule(3, |x| x[0] ^ x[1]);
        assert!(matches!(
            not_bip.rule_polynomial(),
            Err(Error::NotBipermutive(_))
        ));
    }

    #[test]
    fn eval_bits_checks_length() {
        let chi = LocalRule::from_rule_number(210, 3).unwrap();
        assert_eq!(chi.eval_bits(&[true, true, true]), Ok(true));
        assert_eq!(
            chi.eval_bits(&[true]),
            Err(Error::InputLength {
                expected: 3,
                found: 1
            })
        );
    }

    #[test]
    fn table_length_validated() {
        assert!(LocalRule::new(2, vec![false; 3]).is_err());
        assert!(AnfForm::new(1, vec![true, false]).is_ok());
    }
}
