//! No-boundary cellular automata, the Latin squares they induce, and
//! orthogonality tests.

use std::fmt::Write as _;

use crate::boolfun::{bits_to_index, LocalRule};
use crate::error::{Error, Result};

/// One-shot CA `F: F_2^n -> F_2^{n-b}` with `b = d - 1`: output cell `i` is the
/// local rule applied to the window `(x_i, ..., x_{i+b})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularAutomaton {
    rule: LocalRule,
    input_len: usize,
}

impl CellularAutomaton {
    pub fn new(rule: LocalRule, input_len: usize) -> Result<Self> {
        let diameter = rule.n_vars();
        if diameter == 0 || input_len < diameter {
            return Err(Error::InputTooShort {
                input_len,
                diameter,
            });
        }
        Ok(CellularAutomaton { rule, input_len })
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn diameter(&self) -> usize {
        self.rule.n_vars()
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn output_len(&self) -> usize {
        self.input_len - (self.diameter() - 1)
    }

    pub fn apply(&self, input: &[bool]) -> Result<Vec<bool>> {
        if input.len() != self.input_len {
            return Err(Error::InputLength {
                expected: self.input_len,
                found: input.len(),
            });
        }
        Ok(input
            .windows(self.diameter())
            .map(|window| self.rule.eval(bits_to_index(window)))
            .collect())
    }

    /// Same as [`apply`](Self::apply) on integer encodings (first cell most
    /// significant). `input_len` must not exceed the width of `usize`.
    pub fn apply_index(&self, input: usize) -> usize {
        let d = self.diameter();
        let window_mask = (1usize << d) - 1;
        let m = self.output_len();
        (0..m).fold(0, |acc, i| {
            let window = (input >> (self.input_len - d - i)) & window_mask;
            (acc << 1) | self.rule.eval(window) as usize
        })
    }
}

/// Latin square of order `N`, symbols `0..N`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    entries: Vec<u16>,
}

impl LatinSquare {
    pub fn from_rows(rows: Vec<Vec<u16>>) -> Result<Self> {
        if !is_latin(&rows) {
            return Err(Error::NotLatin(format!("{rows:?}")));
        }
        Ok(LatinSquare {
            order: rows.len(),
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.entries[row * self.order + col]
    }

    /// Row-major entries; for a CA square, index `i * N + j` is the CA input `i || j`.
    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u16>> {
        self.entries
            .chunks(self.order)
            .map(<[u16]>::to_vec)
            .collect()
    }

    /// Whitespace-aligned grid, one row per line.
    pub fn to_grid_string(&self) -> String {
        let width = (self.order.max(2) - 1).to_string().len();
        let mut out = String::new();
        for row in self.entries.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.entries.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(u16::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Square of order `2^b` whose entry `(i, j)` is the CA output on the `2b`-cell
/// input formed by the `b`-bit expansions of `i` (left) and `j` (right).
pub fn latin_square(rule: &LocalRule) -> Result<LatinSquare> {
    let d = rule.n_vars();
    if !rule.is_bipermutive() {
        return Err(Error::NotBipermutive(rule.describe()));
    }
    let b = d - 1;
    if 2 * b > 24 {
        return Err(Error::TooManyVariables(2 * b));
    }
    let ca = CellularAutomaton::new(rule.clone(), 2 * b)?;
    let entries = (0..1usize << (2 * b))
        .map(|x| ca.apply_index(x) as u16)
        .collect();
    Ok(LatinSquare {
        order: 1 << b,
        entries,
    })
}

/// Whether every row and column of a square grid is a permutation of `0..N`.
pub fn is_latin(grid: &[Vec<u16>]) -> bool {
    let n = grid.len();
    if grid.iter().any(|row| row.len() != n) {
        return false;
    }
    (0..n).all(|i| is_permutation(grid[i].iter().copied(), n))
        && (0..n).all(|j| is_permutation(grid.iter().map(|row| row[j]), n))
}

fn is_permutation(cells: impl Iterator<Item = u16>, n: usize) -> bool {
    let mut seen = vec![false; n];
    cells.into_iter().all(|v| {
        let v = v as usize;
        v < n && !std::mem::replace(&mut seen[v], true)
    })
}

/// Superposition test: all `N^2` ordered symbol pairs occur exactly once.
pub fn are_orthogonal(first: &LatinSquare, second: &LatinSquare) -> Result<bool> {
    if first.order != second.order {
        return Err(Error::OrderMismatch {
            left: first.order,
            right: second.order,
        });
    }
    Ok(superposition_is_injective(
        &first.entries,
        &second.entries,
        first.order,
    ))
}

/// Fail-fast presence bitmap over the cellwise pairs of two symbol tables.
pub(crate) fn superposition_is_injective(first: &[u16], second: &[u16], order: usize) -> bool {
    let mut seen = vec![false; order * order];
    first.iter().zip(second).all(|(&a, &b)| {
        let key = a as usize * order + b as usize;
        !std::mem::replace(&mut seen[key], true)
    })
}

/// Whether two bipermutive rules define orthogonal cellular automata.
pub fn is_oca_pair(f: &LocalRule, g: &LocalRule) -> Result<bool> {
    check_same_diameter(f, g)?;
    are_orthogonal(&latin_square(f)?, &latin_square(g)?)
}

/// Orthogonality of two linear bipermutive rules via coprimality of their
/// associated polynomials.
pub fn linear_orthogonality_by_coprimality(f: &LocalRule, g: &LocalRule) -> Result<bool> {
    check_same_diameter(f, g)?;
    let gcd = f.rule_polynomial()?.gcd(&g.rule_polynomial()?)?;
    Ok(gcd.degree() == Some(0))
}

pub(crate) fn check_same_diameter(f: &LocalRule, g: &LocalRule) -> Result<()> {
    if f.n_vars() != g.n_vars() {
        return Err(Error::DiameterMismatch {
            left: f.n_vars(),
            right: g.n_vars(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::index_to_bits;

    fn rule(n: usize, f: impl Fn(&[bool]) -> bool) -> LocalRule {
        LocalRule::from_fn(n, |k| f(&index_to_bits(k, n))).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn apply_examples() {
        let xor2 = CellularAutomaton::new(rule(2, |x| x[0] ^ x[1]), 4).unwrap();
        assert_eq!(xor2.apply(&bits("1001")).unwrap(), bits("101"));

        let xor13 = CellularAutomaton::new(rule(3, |x| x[0] ^ x[2]), 4).unwrap();
        assert_eq!(xor13.apply(&bits("1010")).unwrap(), bits("00"));

        // chi: x1 ^ x3 ^ x2 x3 on (1,1,1) = 1 ^ 1 ^ 1
        let chi = CellularAutomaton::new(LocalRule::from_rule_number(210, 3).unwrap(), 3).unwrap();
        assert_eq!(chi.apply(&bits("111")).unwrap(), bits("1"));
        assert_eq!(chi.apply(&bits("011")).unwrap(), bits("0"));
    }

    #[test]
    fn apply_rejects_bad_lengths() {
        let ca = CellularAutomaton::new(rule(3, |x| x[0] ^ x[2]), 5).unwrap();
        assert_eq!(ca.output_len(), 3);
        assert_eq!(
            ca.apply(&bits("101")),
            Err(Error::InputLength {
                expected: 5,
                found: 3
            })
        );
        assert!(CellularAutomaton::new(rule(3, |x| x[0]), 2).is_err());
    }

    #[test]
    fn apply_index_matches_apply() {
        let chi = CellularAutomaton::new(LocalRule::from_rule_number(210, 3).unwrap(), 7).unwrap();
        for x in 0..128 {
            let out = chi.apply(&index_to_bits(x, 7)).unwrap();
            assert_eq!(chi.apply_index(x), bits_to_index(&out));
        }
    }

    #[test]
    fn latin_square_examples() {
        let sq = latin_square(&rule(2, |x| x[0] ^ x[1])).unwrap();
        assert_eq!(sq.rows(), vec![vec![0, 1], vec![1, 0]]);

        let sq = latin_square(&rule(3, |x| x[0] ^ x[2])).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(sq.get(i, j) as usize, i ^ j);
            }
        }

        let err = latin_square(&rule(3, |x| (x[0] & x[1]) ^ x[2])).unwrap_err();
        assert!(matches!(err, Error::NotBipermutive(_)));
    }

    #[test]
    fn is_latin_examples() {
        assert!(is_latin(&[vec![0, 1], vec![1, 0]]));
        assert!(!is_latin(&[vec![0, 1], vec![0, 1]]));
        assert!(!is_latin(&[vec![0, 2], vec![2, 0]]));
        assert!(!is_latin(&[vec![0, 1]]));
        assert!(LatinSquare::from_rows(vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        let f = rule(3, |x| x[0] ^ x[2]);
        let g = rule(3, |x| x[0] ^ x[1] ^ x[2]);
        let (lf, lg) = (latin_square(&f).unwrap(), latin_square(&g).unwrap());
        assert!(are_orthogonal(&lf, &lg).unwrap());
        assert!(are_orthogonal(&lg, &lf).unwrap());
        assert!(!are_orthogonal(&lf, &lf).unwrap());

        let small = latin_square(&rule(2, |x| x[0] ^ x[1])).unwrap();
        assert!(matches!(
            are_orthogonal(&lf, &small),
            Err(Error::OrderMismatch { left: 4, right: 2 })
        ));

        // (1+X)^4 and (1+X)^2 (1+X+X^2)
        let p = rule(5, |x| x[0] ^ x[4]);
        let q = rule(5, |x| x[0] ^ x[1] ^ x[3] ^ x[4]);
        assert!(!is_oca_pair(&p, &q).unwrap());
        assert!(!linear_orthogonality_by_coprimality(&p, &q).unwrap());
    }

    #[test]
    fn oca_pair_examples() {
        let f = rule(3, |x| x[0] ^ x[2]);
        let g = rule(3, |x| x[0] ^ x[1] ^ x[2]);
        assert!(is_oca_pair(&f, &g).unwrap());
        assert!(!is_oca_pair(&f, &f).unwrap());
        assert!(linear_orthogonality_by_coprimality(&f, &g).unwrap());
        assert!(!linear_orthogonality_by_coprimality(&g, &g).unwrap());

        let h = rule(4, |x| x[0] ^ x[3]);
        assert!(matches!(
            is_oca_pair(&f, &h),
            Err(Error::DiameterMismatch { .. })
        ));
        let complement = rule(3, |x| x[0] ^ x[1] ^ x[2] ^ true);
        assert!(matches!(
            linear_orthogonality_by_coprimality(&f, &complement),
            Err(Error::NotLinear(_))
        ));
    }

    #[test]
    fn exports() {
        let sq = latin_square(&rule(2, |x| x[0] ^ x[1])).unwrap();
        assert_eq!(sq.to_csv(), "0,1\n1,0\n");
        assert_eq!(sq.to_grid_string(), "0 1\n1 0\n");
    }
}
