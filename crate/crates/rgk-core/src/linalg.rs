//! Dense linear algebra over [`Scalar`] matrices of any size: rank,
//! inversion, and the signature of a symmetric matrix.
//!
//! Everything here is plain Gaussian elimination. On exact entries the
//! pivot test is exact and the results are certificates; on float
//! entries a caller-supplied absolute tolerance decides what counts as
//! zero.

use crate::scalar::Scalar;

/// Treat `s` as zero: exactly for rationals, within `tol` for floats.
pub fn is_zeroish(s: &Scalar, tol: f64) -> bool {
    match s {
        Scalar::Exact(r) => num::traits::Zero::is_zero(r),
        Scalar::Approx(x) => x.abs() <= tol,
    }
}

/// Row rank of a rectangular matrix.
pub fn rank(mut rows: Vec<Vec<Scalar>>, tol: f64) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == n), "ragged matrix");
    let mut rank = 0;
    let mut col = 0;
    while rank < m && col < n {
        // Pick the largest-magnitude usable pivot for float stability;
        // on exact entries any nonzero pivot would do.
        let pivot = (rank..m)
            .filter(|&i| !is_zeroish(&rows[i][col], tol))
            .max_by(|&a, &b| {
                rows[a][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&rows[b][col].to_f64().abs())
            });
        let Some(pivot) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, pivot);
        for i in (rank + 1)..m {
            if is_zeroish(&rows[i][col], tol) {
                continue;
            }
            let factor = &rows[i][col] / &rows[rank][col];
            for j in col..n {
                rows[i][j] = &rows[i][j] - &(&factor * &rows[rank][j]);
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Inverse of a square matrix by Gauss-Jordan elimination, or `None`
/// if the matrix is singular (to within `tol` on float entries).
pub fn invert(rows: &[Vec<Scalar>], tol: f64) -> Option<Vec<Vec<Scalar>>> {
    let n = rows.len();
    assert!(
        rows.iter().all(|r| r.len() == n),
        "inverting a non-square matrix"
    );
    // Augment with the identity and reduce in place.
    let mut work: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut w = row.clone();
            for j in 0..n {
                w.push(if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                });
            }
            w
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&i| !is_zeroish(&work[i][col], tol))
            .max_by(|&a, &b| {
                work[a][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&work[b][col].to_f64().abs())
            })?;
        work.swap(col, pivot);
        let inv_pivot = work[col][col].recip();
        for j in 0..2 * n {
            work[col][j] = &work[col][j] * &inv_pivot;
        }
        for i in 0..n {
            if i == col || is_zeroish(&work[i][col], tol) {
                continue;
            }
            let factor = work[i][col].clone();
            for j in 0..2 * n {
                work[i][j] = &work[i][j] - &(&factor * &work[col][j]);
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Inertia `(negative, positive, zero)` of a symmetric matrix, computed
/// by symmetric congruence reduction (Sylvester's law keeps the counts
/// invariant, so the reduction is a certificate in exact mode).
pub fn symmetric_signature(mut m: Vec<Vec<Scalar>>, tol: f64) -> (usize, usize, usize) {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n), "ragged matrix");
    let mut neg = 0;
    let mut pos = 0;
    let mut zero = 0;
    for k in 0..n {
        if is_zeroish(&m[k][k], tol) {
            // Try to bring a nonzero diagonal entry into position k.
            if let Some(j) = ((k + 1)..n).find(|&j| !is_zeroish(&m[j][j], tol)) {
                swap_symmetric(&mut m, k, j);
            } else if let Some(j) = ((k + 1)..n).find(|&j| !is_zeroish(&m[k][j], tol)) {
                // All remaining diagonal entries vanish but an
                // off-diagonal coupling survives: adding row+column j
                // onto k makes m[k][k] = 2 m[k][j] != 0.
                for t in 0..n {
                    m[k][t] = &m[k][t] + &m[j][t].clone();
                }
                for t in 0..n {
                    m[t][k] = &m[t][k] + &m[t][j].clone();
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let d = m[k][k].clone();
        if d.is_negative() {
            neg += 1;
        } else {
            pos += 1;
        }
        for i in (k + 1)..n {
            if is_zeroish(&m[i][k], tol) {
                continue;
            }
            let factor = &m[i][k] / &d;
            for j in 0..n {
                m[i][j] = &m[i][j] - &(&factor * &m[k][j]);
            }
            for j in 0..n {
                m[j][i] = &m[j][i] - &(&factor * &m[j][k]);
            }
        }
    }
    (neg, pos, zero)
}

fn swap_symmetric(m: &mut [Vec<Scalar>], a: usize, b: usize) {
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        let u = [1i64, 2, 3];
        let rows: Vec<Vec<Scalar>> = u
            .iter()
            .map(|&a| u.iter().map(|&b| s(a * b, 1)).collect())
            .collect();
        assert_eq!(rank(rows, 0.0), 1);
    }

    #[test]
    fn rank_of_identity_is_full() {
        let rows: Vec<Vec<Scalar>> = (0..4)
            .map(|i| (0..4).map(|j| s((i == j) as i64, 1)).collect())
            .collect();
        assert_eq!(rank(rows, 0.0), 4);
    }

    #[test]
    fn invert_recovers_identity() {
        let a = vec![vec![s(2, 1), s(1, 1)], vec![s(7, 1), s(4, 1)]];
        let inv = invert(&a, 0.0).unwrap();
        // a * inv == identity, exactly.
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Scalar::zero();
                for k in 0..2 {
                    acc = &acc + &(&a[i][k] * &inv[k][j]);
                }
                assert_eq!(acc, s((i == j) as i64, 1));
            }
        }
    }

    #[test]
    fn invert_detects_singular() {
        let a = vec![vec![s(1, 1), s(2, 1)], vec![s(2, 1), s(4, 1)]];
        assert!(invert(&a, 0.0).is_none());
    }

    #[test]
    fn signature_of_lorentz_diagonal() {
        let diag = [s(-1, 1), s(1, 1), s(1, 1), s(1, 1)];
        let rows: Vec<Vec<Scalar>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i == j {
                            diag[i].clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(symmetric_signature(rows, 0.0), (1, 3, 0));
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        // [[0, 1], [1, 0]] has eigenvalues +1 and -1.
        let rows = vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ];
        assert_eq!(symmetric_signature(rows, 0.0), (1, 1, 0));
    }

    #[test]
    fn signature_counts_kernel() {
        // Rank-one Gram matrix of a single vector: one positive, two zero.
        let u = [1i64, 2, 0];
        let rows: Vec<Vec<Scalar>> = u
            .iter()
            .map(|&a| u.iter().map(|&b| s(a * b, 1)).collect())
            .collect();
        assert_eq!(symmetric_signature(rows, 0.0), (0, 1, 2));
    }
}
