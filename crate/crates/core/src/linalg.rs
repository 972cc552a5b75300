//! Exact nullspaces by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Q;

/// Row echelon form of an integer matrix together with its pivot columns.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn clear_denominators(row: &[Q]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn bareiss(matrix: &[Vec<Q>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| clear_denominators(r)).collect();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in col + 1..ncols {
                let num = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                let (quot, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss step must divide exactly");
                a[i][j] = quot;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

pub fn rank(matrix: &[Vec<Q>], ncols: usize) -> usize {
    bareiss(matrix, ncols).pivots.len()
}

/// A basis of `{x : A x = 0}`.
///
/// One vector per free column, with that free coordinate set to 1 and the
/// other free coordinates 0, in increasing order of free column.
pub fn nullspace(matrix: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    for row in matrix {
        assert_eq!(row.len(), ncols, "ragged matrix");
    }
    let ech = bareiss(matrix, ncols);
    let is_pivot: Vec<bool> = (0..ncols).map(|j| ech.pivots.contains(&j)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&j| !is_pivot[j]) {
        let mut x = vec![Q::zero(); ncols];
        x[free] = Q::one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots).rev() {
            let mut s = Q::zero();
            for j in p + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += Q::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[p] = -s / Q::from_integer(row[p].clone());
        }
        basis.push(x);
    }
    basis
}

pub fn mat_vec(matrix: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    matrix
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
