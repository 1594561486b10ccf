//! Reference implementations used as oracles by the integration tests.
//! Each one follows the definition directly, without the fast paths of the library.

#![allow(dead_code)]

use oca_core::LocalRule;

/// Walsh coefficient W(w) = sum over x of (-1)^(f(x) + w.x), one evaluation at a time.
pub fn walsh_direct(table: &[bool]) -> Vec<i32> {
    let size = table.len();
    (0..size)
        .map(|w| {
            (0..size)
                .map(|x| {
                    let parity = (w & x).count_ones() as usize + table[x] as usize;
                    if parity.is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        })
        .collect()
}

/// ANF coefficient of monomial u is the XOR of f over all x below u.
pub fn anf_direct(table: &[bool]) -> Vec<bool> {
    let size = table.len();
    (0..size)
        .map(|u| {
            (0..size)
                .filter(|&x| x & !u == 0)
                .fold(false, |acc, x| acc ^ table[x])
        })
        .collect()
}

/// Orthogonality straight from the definition: every ordered pair of symbols
/// appears once when the two Latin squares are superposed.
pub fn orthogonal_direct(f: &LocalRule, g: &LocalRule) -> bool {
    let d = f.n_vars();
    let b = d - 1;
    let ca_value = |rule: &LocalRule, i: usize, j: usize| -> usize {
        let x = (i << b) | j;
        let bits = 2 * b;
        (0..b).fold(0usize, |acc, t| {
            let window = (x >> (bits - d - t)) & ((1 << d) - 1);
            (acc << 1) | rule.eval(window) as usize
        })
    };
    let order = 1usize << b;
    let mut seen = vec![false; order * order];
    for i in 0..order {
        for j in 0..order {
            let key = ca_value(f, i, j) * order + ca_value(g, i, j);
            if seen[key] {
                return false;
            }
            seen[key] = true;
        }
    }
    true
}

/// Each of the six projections of (x, y, F(x,y), G(x,y)) onto two symbols is injective.
pub fn multipermutation_direct(f: &LocalRule, g: &LocalRule) -> bool {
    let d = f.n_vars();
    let b = d - 1;
    let order = 1usize << b;
    let sq = |rule: &LocalRule| oca_core::ca::latin_square(rule).unwrap();
    let (lf, lg) = (sq(f), sq(g));
    let tuples: Vec<[usize; 4]> = (0..order)
        .flat_map(|x| (0..order).map(move |y| (x, y)))
        .map(|(x, y)| [x, y, lf.get(x, y) as usize, lg.get(x, y) as usize])
        .collect();
    for a in 0..4 {
        for c in a + 1..4 {
            let mut seen = vec![false; order * order];
            for t in &tuples {
                let key = t[a] * order + t[c];
                if seen[key] {
                    return false;
                }
                seen[key] = true;
            }
        }
    }
    true
}

/// Bipermutive rules of diameter `d` found by scanning every truth table.
pub fn bipermutive_by_scan(d: usize) -> Vec<LocalRule> {
    let size = 1usize << d;
    (0u128..1 << size)
        .map(|n| LocalRule::from_rule_number(n, d).unwrap())
        .filter(|rule| {
            (0..size).all(|x| {
                rule.eval(x) != rule.eval(x ^ (1 << (d - 1))) && rule.eval(x) != rule.eval(x ^ 1)
            })
        })
        .collect()
}
