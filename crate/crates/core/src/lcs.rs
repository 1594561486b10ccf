//! Linear components space of an S-box and binary linear codes in
//! row-reduced echelon form.

use crate::error::{Error, Result};
use crate::sbox::SBox;

/// Subspace of `F_2^length` given by a canonical row-reduced basis.
///
/// Vectors are packed masks with the first coordinate as the most significant
/// of the `length` low bits. Basis rows are sorted by pivot, leftmost first,
/// and every pivot column is zero outside its own row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    length: usize,
    basis: Vec<u64>,
}

impl LinearCode {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// Membership by reduction against the pivots.
    pub fn contains(&self, vector: u64) -> bool {
        let reduced = self.basis.iter().fold(vector, |acc, &row| {
            let pivot = 63 - row.leading_zeros();
            if acc >> pivot & 1 == 1 {
                acc ^ row
            } else {
                acc
            }
        });
        reduced == 0
    }

    /// All `2^k` codewords, in the order of the message bits.
    pub fn codewords(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.basis.len()).map(move |message| {
            self.basis
                .iter()
                .enumerate()
                .filter(|(i, _)| message >> i & 1 == 1)
                .fold(0, |acc, (_, &row)| acc ^ row)
        })
    }

    /// Basis rows as `0`/`1` strings, first coordinate leftmost.
    pub fn basis_strings(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|&row| mask_to_string(row, self.length))
            .collect()
    }
}

/// Canonical basis of the span of `vectors` inside `F_2^length`.
pub fn span_basis(length: usize, vectors: &[u64]) -> Result<LinearCode> {
    if length == 0 || length > 64 {
        return Err(Error::CodeLength(length));
    }
    if let Some(&mask) = vectors.iter().find(|&&v| length < 64 && v >> length != 0) {
        return Err(Error::MaskOutOfRange { mask, bits: length });
    }
    let mut rows: Vec<u64> = vectors.iter().copied().filter(|&v| v != 0).collect();
    let mut rank = 0;
    for col in (0..length).rev() {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row >> col & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    Ok(LinearCode {
        length,
        basis: rows,
    })
}

/// Masks `v != 0` whose component `v . H` has nonlinearity zero, ascending.
pub fn linear_components(sbox: &SBox) -> Vec<u64> {
    affine_masks(&sbox.component_nonlinearities())
}

/// Extracts affine masks from a per-component nonlinearity profile as
/// returned by [`SBox::component_nonlinearities`].
pub fn affine_masks(profile: &[u32]) -> Vec<u64> {
    profile
        .iter()
        .enumerate()
        .filter(|(_, &nl)| nl == 0)
        .map(|(i, _)| i as u64 + 1)
        .collect()
}

/// The linear components space as a code of length `n`.
pub fn linear_components_space(sbox: &SBox) -> LinearCode {
    span_basis(sbox.n(), &linear_components(sbox)).expect("S-box masks fit in n bits")
}

pub fn lcs_dimension(sbox: &SBox) -> usize {
    linear_components_space(sbox).dimension()
}

pub fn mask_to_string(mask: u64, length: usize) -> String {
    (0..length)
        .rev()
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{bits_to_index, index_to_bits, LocalRule};

    #[test]
    fn empty_span() {
        let code = span_basis(5, &[]).unwrap();
        assert_eq!(code.dimension(), 0);
        assert_eq!(code.codewords().collect::<Vec<_>>(), vec![0]);
        assert_eq!(span_basis(3, &[0, 0]).unwrap().dimension(), 0);
    }

    #[test]
    fn independent_rows() {
        let code = span_basis(6, &[0b100100, 0b010010, 0b001001]).unwrap();
        assert_eq!((code.dimension(), code.length()), (3, 6));
        assert_eq!(code.basis(), &[0b100100, 0b010010, 0b001001]);
        assert_eq!(code.basis_strings()[0], "100100");
    }

    #[test]
    fn reduction_is_canonical() {
        let a = span_basis(4, &[0b1100, 0b0110, 0b1010]).unwrap();
        let b = span_basis(4, &[0b1010, 0b0110]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[0b1010, 0b0110]);
        assert!(a.contains(0b1100) && !a.contains(0b0001));
    }

    #[test]
    fn rejects_bad_lengths() {
        assert_eq!(span_basis(0, &[]), Err(Error::CodeLength(0)));
        assert!(span_basis(3, &[0b1000]).is_err());
    }

    #[test]
    fn fully_linear_sbox() {
        let f = LocalRule::from_fn(3, |k| {
            let x = index_to_bits(k, 3);
            x[0] ^ x[2]
        })
        .unwrap();
        let g = LocalRule::from_fn(3, |k| {
            let x = index_to_bits(k, 3);
            x[0] ^ x[1] ^ x[2]
        })
        .unwrap();
        let h = SBox::from_oca(&f, &g).unwrap();
        assert_eq!(linear_components(&h), (1..16).collect::<Vec<_>>());
        assert_eq!(lcs_dimension(&h), 4);
    }

    #[test]
    fn chi_has_no_linear_components() {
        let table = (0..8)
            .map(|k| {
                let x = index_to_bits(k, 3);
                let y = [
                    x[0] ^ (x[1] & x[2]),
                    x[1] ^ (x[0] & x[2]),
                    x[2] ^ (x[0] & x[1]),
                ];
                bits_to_index(&y) as u32
            })
            .collect();
        let h = SBox::new(3, table).unwrap();
        assert!(linear_components(&h).is_empty());
        assert_eq!(lcs_dimension(&h), 0);
    }

    #[test]
    fn affine_with_constant_counts() {
        // complement of identity: every component is affine with constant term
        let h = SBox::new(2, vec![3, 2, 1, 0]).unwrap();
        assert_eq!(linear_components(&h), vec![1, 2, 3]);
    }
}
