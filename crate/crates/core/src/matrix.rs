//! Small exact linear-algebra helpers shared across the crate: integer and
//! polynomial determinants, Hermite normal form, and the determinantal
//! primitivity test for sublattices. Everything works over `BigInt` or the
//! polynomial ring; matrices in this crate never exceed a handful of rows,
//! so cofactor expansion is perfectly adequate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPoly;

/// Determinant of a square integer matrix by cofactor expansion. The empty
/// matrix has determinant 1.
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = BigInt::zero();
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot * det_bigint(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Determinant of a square matrix over the Laurent polynomial ring. The
/// empty matrix has determinant 1.
pub fn det_laurent(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = LaurentPoly::zero();
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot * &det_laurent(&minor);
        if j % 2 == 0 {
            det = &det + &term;
        } else {
            det = &det - &term;
        }
    }
    det
}

/// Row-style Hermite normal form of an integer matrix, used as a canonical
/// representative of the row lattice: two bases span the same sublattice of
/// `ℤ^c` exactly when their HNFs agree. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        // Eliminate the column below pivot_row with gcd row operations.
        loop {
            let mut nonzero: Vec<usize> = (pivot_row..m.len())
                .filter(|&r| m[r][col] != 0)
                .collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let r = nonzero[0];
                m.swap(pivot_row, r);
                break;
            }
            // Reduce the larger entry by the smaller.
            nonzero.sort_by_key(|&r| m[r][col].unsigned_abs());
            let (small, big) = (nonzero[0], nonzero[1]);
            let q = m[big][col] / m[small][col];
            for c in 0..cols {
                m[big][c] -= q * m[small][c];
            }
        }
        let has_pivot = pivot_row < m.len() && m[pivot_row][col] != 0;
        if !has_pivot {
            continue;
        }
        if m[pivot_row][col] < 0 {
            for c in 0..cols {
                m[pivot_row][c] = -m[pivot_row][c];
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        let p = m[pivot_row][col];
        for r in 0..pivot_row {
            let q = m[r][col].div_euclid(p);
            if q != 0 {
                for c in 0..cols {
                    m[r][c] -= q * m[pivot_row][c];
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

/// Whether the rows of `rows` (assumed linearly independent) span a direct
/// summand of `ℤ^c`, i.e. extend to a basis. By the Smith determinantal
/// divisor characterization this holds exactly when the gcd of all maximal
/// minors is 1.
pub fn spans_direct_summand(rows: &[Vec<i64>]) -> bool {
    let k = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if k == 0 {
        return true;
    }
    if k > cols {
        return false;
    }
    let mut g = BigInt::zero();
    for combo in column_combinations(cols, k) {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| combo.iter().map(|&c| BigInt::from(row[c])).collect())
            .collect();
        g = g.gcd(&det_bigint(&minor).abs());
        if g.is_one() {
            return true;
        }
    }
    g.is_one()
}

/// All ascending k-element subsets of `0..n`.
fn column_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
