//! Integer Smith normal form and exact determinants for small square matrices.

use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ... | d_n` of a nonsingular integer matrix.
pub fn invariant_factors(m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&v| v as i128).collect()).collect();
    for t in 0..n {
        // pivot: smallest nonzero absolute value in the remaining block
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return Err(Error::SingularBasis);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    for j in t..n {
                        a[i][j] -= f * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    for i in t..n {
                        a[i][j] -= f * a[i][t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold any entry not divisible by the pivot into row t
            let bad = (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % a[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
    }
    Ok((0..n).map(|i| a[i][i].abs() as i64).collect())
}

/// Exponent of `Z^n / (row span of m)`: the largest invariant factor.
pub fn quotient_exponent(m: &[Vec<i64>]) -> Result<i64> {
    Ok(invariant_factors(m)?.last().copied().unwrap_or(1))
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Adjugate matrix, so that `m * adj = det * I`.
pub fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * determinant(&minor);
        }
    }
    adj
}
