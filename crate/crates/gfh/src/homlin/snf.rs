//! Smith normal form over the integers with exact big-integer arithmetic.

use super::matrix::SparseMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors and rank of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nontrivial invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    /// Factors equal to 1 are included so that `factors.len() == rank`.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Invariant factors greater than one, i.e. the torsion part of the
    /// cokernel restricted to the image lattice.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .cloned()
            .collect()
    }
}

/// Smith normal form of `m`.
///
/// Deterministic pivoting: smallest nonzero magnitude first, ties broken by
/// (row, col) lexicographic order, so repeated runs are bit-identical.
pub fn smith_normal_form(m: &SparseMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; rows];
    for &(r, c, v) in m.entries() {
        a[r][c] = BigInt::from(v);
    }

    let mut factors: Vec<BigInt> = Vec::new();
    let mut top = 0usize;

    while top < rows && top < cols {
        let Some((pr, pc)) = find_pivot(&a, top) else { break };
        a.swap(top, pr);
        for row in a.iter_mut() {
            row.swap(top, pc);
        }

        // Eliminate the pivot row and column; a non-divisible remainder can
        // reintroduce entries, so loop until clean.
        loop {
            let mut pivot = a[top][top].clone();
            debug_assert!(!pivot.is_zero());

            let mut changed = false;
            for r in (top + 1)..rows {
                if !a[r][top].is_zero() {
                    let q = rounded_quotient(&a[r][top], &pivot);
                    if !q.is_zero() {
                        for c in top..cols {
                            let delta = &q * &a[top][c];
                            a[r][c] -= delta;
                        }
                    }
                    if !a[r][top].is_zero() {
                        // Remainder has strictly smaller magnitude; promote it.
                        a.swap(top, r);
                        changed = true;
                        break;
                    }
                }
            }
            if changed {
                continue;
            }
            for c in (top + 1)..cols {
                if !a[top][c].is_zero() {
                    let q = rounded_quotient(&a[top][c], &pivot);
                    if !q.is_zero() {
                        for r in top..rows {
                            let delta = &q * &a[r][top];
                            a[r][c] -= delta;
                        }
                    }
                    if !a[top][c].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(top, c);
                        }
                        changed = true;
                        break;
                    }
                }
            }
            if changed {
                continue;
            }

            // Row and column are clear. Enforce divisibility into the rest.
            pivot = a[top][top].clone();
            let mut fixed = true;
            'outer: for r in (top + 1)..rows {
                for c in (top + 1)..cols {
                    if !(&a[r][c] % &pivot).is_zero() {
                        // Add row r to the pivot row and restart elimination.
                        for cc in top..cols {
                            let add = a[r][cc].clone();
                            a[top][cc] += add;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }

        factors.push(a[top][top].abs());
        top += 1;
    }

    // The divisibility loop guarantees d_1 | d_2 | ... by construction.
    let rank = factors.len();
    SnfResult { invariant_factors: factors, rank }
}

/// Pivot selection: smallest nonzero |value| in the active block, then
/// lexicographic (row, col).
fn find_pivot(a: &[Vec<BigInt>], top: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(top) {
        for (c, v) in row.iter().enumerate().skip(top) {
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            match &best {
                None => best = Some((mag, r, c)),
                Some((bm, _, _)) if mag < *bm => best = Some((mag, r, c)),
                _ => {}
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// Quotient rounded toward the nearest integer, so the remainder magnitude is
/// at most half the divisor.
fn rounded_quotient(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (n.sign() == d.sign()) || n.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Split an invariant factor into its prime-power components.
///
/// Torsion summands are reported in this canonical form regardless of how the
/// composite factors come out of the reduction.
pub fn prime_power_parts(d: &BigInt) -> Vec<u64> {
    let mut n: u64 = u64::try_from(d).expect("torsion factor exceeds u64 range");
    let mut parts = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut q = 1u64;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            parts.push(q);
        }
        p += 1;
    }
    if n > 1 {
        parts.push(n);
    }
    parts.sort_unstable();
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_of(rows: usize, cols: usize, entries: Vec<(usize, usize, i64)>) -> SnfResult {
        smith_normal_form(&SparseMatrix::new(rows, cols, entries).unwrap())
    }

    #[test]
    fn diagonal_already_in_form() {
        let r = smith_normal_form(&SparseMatrix::diagonal(&[2, 6]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.invariant_factors, vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let r = smith_normal_form(&SparseMatrix::zero(3, 3));
        assert_eq!(r.rank, 0);
        assert!(r.invariant_factors.is_empty());
    }

    #[test]
    fn empty_matrix() {
        let r = smith_normal_form(&SparseMatrix::zero(0, 0));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(4, 6) has SNF diag(2, 12).
        let r = snf_of(2, 2, vec![(0, 0, 4), (1, 1, 6)]);
        assert_eq!(r.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn full_rank_unimodular() {
        let r = snf_of(2, 2, vec![(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 1)]);
        assert_eq!(r.rank, 2);
        assert_eq!(r.invariant_factors, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn prime_power_normalization() {
        assert_eq!(prime_power_parts(&BigInt::from(12)), vec![3, 4]);
        assert_eq!(prime_power_parts(&BigInt::from(2)), vec![2]);
        assert_eq!(prime_power_parts(&BigInt::from(360)), vec![5, 8, 9]);
    }
}
