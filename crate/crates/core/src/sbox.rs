//! `(n, n)` S-boxes, in particular `H(x) = F(x) || G(x)` built from a pair of
//! bipermutive CA, and their vectorial measures.

use std::fmt::Write as _;

use crate::boolfun::LocalRule;
use crate::ca::{check_same_diameter, latin_square, superposition_is_injective};
use crate::error::{Error, Result};

/// Lookup table of an `(n, n)` function. Entry `x` is `H(x)`, with the first
/// input and output coordinates as most significant bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SBox {
    n: usize,
    table: Vec<u32>,
}

impl SBox {
    pub fn new(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 || n > 24 {
            return Err(Error::InvalidSBox(format!("unsupported size {n}")));
        }
        if table.len() != 1 << n {
            return Err(Error::InvalidSBox(format!(
                "table has {} entries, expected {}",
                table.len(),
                1usize << n
            )));
        }
        if let Some(bad) = table.iter().find(|&&y| y >> n != 0) {
            return Err(Error::InvalidSBox(format!("entry {bad} exceeds {n} bits")));
        }
        Ok(SBox { n, table })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (0..1u32 << n).collect())
    }

    /// Concatenation of the two CA outputs: left `b` bits from `f`, right `b`
    /// bits from `g`, on `n = 2b` input cells.
    pub fn from_oca(f: &LocalRule, g: &LocalRule) -> Result<Self> {
        check_same_diameter(f, g)?;
        let (left, right) = (latin_square(f)?, latin_square(g)?);
        let b = f.n_vars() - 1;
        let table = left
            .entries()
            .iter()
            .zip(right.entries())
            .map(|(&hi, &lo)| (hi as u32) << b | lo as u32)
            .collect();
        Self::new(2 * b, table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> u32 {
        self.table[x]
    }

    /// Component function `x -> v . H(x)`; the mask's most significant bit
    /// selects the first output coordinate.
    pub fn component(&self, mask: u64) -> Result<LocalRule> {
        if mask == 0 {
            return Err(Error::ZeroMask);
        }
        if mask >> self.n != 0 {
            return Err(Error::MaskOutOfRange { mask, bits: self.n });
        }
        LocalRule::from_fn(self.n, |x| {
            (self.table[x] as u64 & mask).count_ones() & 1 == 1
        })
    }

    /// Coordinate function `i` (1-based, left to right).
    pub fn coordinate(&self, i: usize) -> Result<LocalRule> {
        if i == 0 || i > self.n {
            return Err(Error::MaskOutOfRange {
                mask: 0,
                bits: self.n,
            });
        }
        self.component(1 << (self.n - i))
    }

    /// Nonlinearity of every component; position `v - 1` holds mask `v`.
    pub fn component_nonlinearities(&self) -> Vec<u32> {
        (1..1u64 << self.n)
            .map(|v| self.component(v).map(|c| c.nonlinearity()).unwrap_or(0))
            .collect()
    }

    /// Minimum nonlinearity over all nonzero components.
    pub fn nonlinearity(&self) -> u32 {
        self.component_nonlinearities()
            .into_iter()
            .min()
            .unwrap_or(0)
    }

    /// Maximum algebraic degree over the coordinate functions.
    pub fn degree(&self) -> usize {
        (1..=self.n)
            .filter_map(|i| self.coordinate(i).ok())
            .map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    /// Whether the table is a permutation of `0..2^n`.
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    /// Bijectivity through the all-components-balanced characterization.
    pub fn all_components_balanced(&self) -> bool {
        (1..1u64 << self.n).all(|v| self.component(v).is_ok_and(|c| c.is_balanced()))
    }

    /// Space-separated hexadecimal lookup table.
    pub fn to_hex_line(&self) -> String {
        let width = self.n.div_ceil(4);
        let mut out = String::with_capacity(self.table.len() * (width + 1));
        for (i, y) in self.table.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{y:0width$x}");
        }
        out
    }
}

/// `(2,2)`-multipermutation test for the map `(x, y) -> (F(x||y), G(x||y))`.
///
/// Two tuples `(x, y, F, G)` differ in at least 3 of their 4 `b`-bit symbols
/// for all distinct inputs iff every projection onto two symbol positions is
/// injective, which is what is checked here.
pub fn is_multipermutation(f: &LocalRule, g: &LocalRule) -> Result<bool> {
    check_same_diameter(f, g)?;
    let (left, right) = (latin_square(f)?, latin_square(g)?);
    let order = left.order();
    let rows: Vec<u16> = (0..order * order).map(|idx| (idx / order) as u16).collect();
    let cols: Vec<u16> = (0..order * order).map(|idx| (idx % order) as u16).collect();
    let symbols = [&rows[..], &cols[..], left.entries(), right.entries()];
    Ok((0..4)
        .all(|p| (p + 1..4).all(|q| superposition_is_injective(symbols[p], symbols[q], order))))
}
