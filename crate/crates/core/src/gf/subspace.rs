//! Canonical enumeration of the ℓ-dimensional subspaces of F^n.
//!
//! Each subspace is produced once, as the transpose of its unique ℓ×n reduced
//! row-echelon basis: an n×ℓ matrix whose column `k` has a 1 in pivot row
//! `p_k`, zeros in the other pivot rows, zeros above `p_k`, and free entries
//! below it. Pivot tuples run in lexicographic order; within a tuple the free
//! entries form an odometer with the first free slot most significant.

use super::{Field, Matrix};
use crate::error::{Error, Result};

/// Number of `l`-dimensional subspaces of GF(q)^n, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, l: usize, q: u8) -> u128 {
    if l > n {
        return 0;
    }
    // Pascal-style recurrence [m, k] = [m-1, k-1] + q^k [m-1, k].
    let q = q as u128;
    let mut row = vec![0u128; l + 1];
    row[0] = 1;
    for m in 1..=n {
        for k in (1..=l.min(m)).rev() {
            let qk = q.checked_pow(k as u32).unwrap_or(u128::MAX);
            row[k] = row[k - 1].saturating_add(qk.saturating_mul(row[k]));
        }
    }
    row[l]
}

pub fn enumerate_subspaces(n: usize, l: usize, field: Field, budget: u128) -> Result<Subspaces> {
    if l == 0 || l > n {
        return Err(Error::domain(format!(
            "subspace dimension {l} must lie in 1..={n}"
        )));
    }
    let count = gaussian_binomial(n, l, field.order());
    if count > budget {
        return Err(Error::budget(
            format!("{l}-dimensional subspaces of {field}^{n}"),
            count,
            budget,
        ));
    }
    let mut s = Subspaces {
        field,
        n,
        l,
        count,
        pivots: (0..l).collect(),
        free: Vec::new(),
        basis: Matrix::zeros(field, n, l),
        fresh: true,
        done: false,
    };
    s.load_pivots();
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct Subspaces {
    field: Field,
    n: usize,
    l: usize,
    count: u128,
    pivots: Vec<usize>,
    /// (row, column) cells that are free under the current pivots.
    free: Vec<(usize, usize)>,
    basis: Matrix,
    fresh: bool,
    done: bool,
}

impl Subspaces {
    /// Total number of subspaces this enumerator yields.
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.l)
    }

    /// Moves to the next subspace and borrows its basis, avoiding the clone
    /// the `Iterator` impl makes.
    pub fn advance(&mut self) -> Option<&Matrix> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.basis);
        }
        if !self.step_free() && !self.step_pivots() {
            self.done = true;
            return None;
        }
        Some(&self.basis)
    }

    fn load_pivots(&mut self) {
        self.basis = Matrix::zeros(self.field, self.n, self.l);
        self.free.clear();
        for (k, &p) in self.pivots.iter().enumerate() {
            self.basis.set(p, k, 1);
            for row in p + 1..self.n {
                if !self.pivots.contains(&row) {
                    self.free.push((row, k));
                }
            }
        }
        // Most significant slot first: order by column, then row.
        self.free.sort_unstable_by_key(|&(r, c)| (c, r));
    }

    fn step_free(&mut self) -> bool {
        let q = self.field.order();
        for i in (0..self.free.len()).rev() {
            let (r, c) = self.free[i];
            let v = self.basis.get(r, c) + 1;
            if v < q {
                self.basis.set(r, c, v);
                return true;
            }
            self.basis.set(r, c, 0);
        }
        false
    }

    fn step_pivots(&mut self) -> bool {
        let (n, l) = (self.n, self.l);
        let Some(i) = (0..l).rev().find(|&i| self.pivots[i] < n - l + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..l {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        self.load_pivots();
        true
    }
}

impl Iterator for Subspaces {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        self.advance().cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn counts_match_examples() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        for q in [2, 3, 5] {
            assert_eq!(gaussian_binomial(2, 2, q), 1);
        }
        assert_eq!(gaussian_binomial(5, 0, 2), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
    }

    #[test]
    fn enumeration_is_canonical_and_complete() {
        let f = Field::GF2;
        let seen: Vec<Matrix> = enumerate_subspaces(3, 1, f, u128::MAX).unwrap().collect();
        assert_eq!(seen.len(), 7);
        let full: Vec<Matrix> = enumerate_subspaces(2, 2, Field::GF3, u128::MAX)
            .unwrap()
            .collect();
        assert_eq!(full, vec![Matrix::identity(Field::GF3, 2)]);
    }

    // Independent oracle: collect the row spaces of every pair of 4-bit
    // vectors with rank 2 and count the distinct ones.
    #[test]
    fn four_choose_two_over_gf2_by_brute_force() {
        let mut spaces = BTreeSet::new();
        for a in 1u8..16 {
            for b in 1u8..16 {
                if a != b {
                    spaces.insert(BTreeSet::from([0u8, a, b, a ^ b]));
                }
            }
        }
        assert_eq!(spaces.len(), 35);

        let enumerated: BTreeSet<BTreeSet<u8>> = enumerate_subspaces(4, 2, Field::GF2, u128::MAX)
            .unwrap()
            .map(|m| {
                let c0 = pack(&m.col(0));
                let c1 = pack(&m.col(1));
                BTreeSet::from([0, c0, c1, c0 ^ c1])
            })
            .collect();
        assert_eq!(enumerated, spaces);
    }

    fn pack(v: &[u8]) -> u8 {
        v.iter().enumerate().fold(0, |acc, (i, &x)| acc | (x << i))
    }

    #[test]
    fn refuses_over_budget() {
        let err = enumerate_subspaces(10, 5, Field::GF2, 1000).unwrap_err();
        match err {
            Error::Budget { required, .. } => assert_eq!(required, gaussian_binomial(10, 5, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
