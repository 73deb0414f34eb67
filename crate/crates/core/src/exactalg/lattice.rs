use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

use crate::error::{Error, Result};

/// Sublattice of `Z^rank` described by a generating set together with a
/// row-echelon (Hermite-style) basis derived from it. The unimodular row
/// operations are tracked so that membership certificates can be expressed
/// in the original generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    rank: usize,
    generators: Vec<Vec<BigInt>>,
    reduced: Vec<Vec<BigInt>>,
    /// `reduced[i] = sum_j transform[i][j] * generators[j]`
    transform: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(rank: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        for g in &generators {
            if g.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.len(),
                });
            }
        }
        let n = generators.len();
        let mut rows = generators.clone();
        let mut transform: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                    .collect()
            })
            .collect();

        let mut pivot_row = 0;
        for col in 0..rank {
            // gcd-eliminate column `col` below pivot_row
            loop {
                let mut best: Option<usize> = None;
                for i in pivot_row..n {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if rows[i][col].abs() < rows[b][col].abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
                let Some(b) = best else { break };
                rows.swap(pivot_row, b);
                transform.swap(pivot_row, b);
                let mut done = true;
                for i in pivot_row + 1..n {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                    row_sub(&mut rows, i, pivot_row, &q);
                    row_sub(&mut transform, i, pivot_row, &q);
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if pivot_row < n && !rows[pivot_row][col].is_zero() {
                if rows[pivot_row][col].is_negative() {
                    negate_row(&mut rows, pivot_row);
                    negate_row(&mut transform, pivot_row);
                }
                // reduce entries above the pivot for a canonical echelon form
                let pivot = rows[pivot_row][col].clone();
                for i in 0..pivot_row {
                    let q = rows[i][col].div_floor(&pivot);
                    if !q.is_zero() {
                        row_sub(&mut rows, i, pivot_row, &q);
                        row_sub(&mut transform, i, pivot_row, &q);
                    }
                }
                pivot_row += 1;
            }
            if pivot_row == n {
                break;
            }
        }

        let reduced: Vec<Vec<BigInt>> = rows[..pivot_row].to_vec();
        let transform = transform[..pivot_row].to_vec();
        Ok(LatticeBasis {
            rank,
            generators,
            reduced,
            transform,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn reduced(&self) -> &[Vec<BigInt>] {
        &self.reduced
    }

    /// Decide `v \in` the generated sublattice. On membership, return
    /// coefficients over the original generators that reproduce `v`.
    pub fn membership(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: v.len(),
            });
        }
        let mut residual = v.to_vec();
        let mut basis_coeffs = vec![BigInt::zero(); self.reduced.len()];
        for (i, row) in self.reduced.iter().enumerate() {
            let col = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("reduced rows are nonzero");
            if residual[col].is_zero() {
                continue;
            }
            let (q, r) = residual[col].div_rem(&row[col]);
            if !r.is_zero() {
                return Ok(None);
            }
            for (res, entry) in residual.iter_mut().zip(row) {
                *res -= &q * entry;
            }
            basis_coeffs[i] = q;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        // pull back through the tracked row operations
        let mut cert = vec![BigInt::zero(); self.generators.len()];
        for (i, c) in basis_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, t) in self.transform[i].iter().enumerate() {
                cert[j] += c * t;
            }
        }
        debug_assert!(self.certificate_reproduces(&cert, v));
        Ok(Some(cert))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.membership(v)?.is_some())
    }

    pub fn certificate_reproduces(&self, cert: &[BigInt], v: &[BigInt]) -> bool {
        if cert.len() != self.generators.len() || v.len() != self.rank {
            return false;
        }
        let mut acc = vec![BigInt::zero(); self.rank];
        for (c, g) in cert.iter().zip(&self.generators) {
            for (a, x) in acc.iter_mut().zip(g) {
                *a += c * x;
            }
        }
        acc == v
    }
}

fn row_sub(rows: &mut [Vec<BigInt>], target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= factor * s;
    }
}

fn negate_row(rows: &mut [Vec<BigInt>], i: usize) {
    for x in rows[i].iter_mut() {
        *x = -x.clone();
    }
}
