use std::fmt;

use super::{Field, RowBasis, XorBasis};
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major residues, checking shape and range.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::domain(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        field.check_residues(&data)?;
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows<R: AsRef<[u8]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::domain(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// A single column from a vector.
    pub fn column(field: Field, v: &[u8]) -> Result<Self> {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn append_row(&self, v: &[u8]) -> Result<Matrix> {
        self.check_row_len(v)?;
        self.field.check_residues(v)?;
        let mut data = self.data.clone();
        data.extend_from_slice(v);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + 1,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            data.extend(idx.iter().map(|&c| self.get(r, c)));
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// `self · v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// `vᵀ · self` for a row vector `v` of length `rows`.
    pub fn vec_mul(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut out = vec![0u8; self.cols];
        for (r, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(x, a));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        if self.field.is_binary() && self.cols <= 64 {
            let mut basis = XorBasis::new();
            for r in 0..self.rows {
                basis.insert(pack_row(self.row(r)));
                if basis.rank() == self.cols {
                    break;
                }
            }
            basis.rank()
        } else {
            let mut basis = RowBasis::new(self.field, self.cols);
            for r in 0..self.rows {
                basis.insert(self.row(r));
            }
            basis.rank()
        }
    }

    /// Reduced row-echelon form, same shape, zero rows last.
    pub fn rref(&self) -> Matrix {
        let f = self.field;
        let mut m = self.clone();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = f.inv(m.get(lead, c)).expect("nonzero pivot");
            for j in 0..self.cols {
                let v = m.get(lead, j);
                m.set(lead, j, f.mul(v, inv));
            }
            for r in 0..self.rows {
                let factor = m.get(r, c);
                if r != lead && factor != 0 {
                    for j in 0..self.cols {
                        let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                        m.set(r, j, v);
                    }
                }
            }
            lead += 1;
        }
        m
    }

    /// Right nullspace basis: vectors `c` with `self · c = 0`, one per free
    /// column of the RREF, free coordinate set to 1.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let f = self.field;
        let r = self.rref();
        let mut pivot_of_row = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for row in 0..r.rows {
            if let Some(c) = r.row(row).iter().position(|&x| x != 0) {
                pivot_of_row.push(c);
                is_pivot[c] = true;
            }
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u8; self.cols];
                v[free] = 1;
                for (row, &pc) in pivot_of_row.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    pub fn in_row_space(&self, v: &[u8]) -> Result<bool> {
        self.check_row_len(v)?;
        self.field.check_residues(v)?;
        let mut basis = RowBasis::new(self.field, self.cols);
        for r in 0..self.rows {
            basis.insert(self.row(r));
        }
        Ok(basis.contains(v))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn check_row_len(&self, v: &[u8]) -> Result<()> {
        if v.len() != self.cols {
            return Err(Error::domain(format!(
                "vector of length {} against a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(())
    }
}

/// Packs a GF(2) row of at most 64 entries, bit `j` = entry `j`.
#[inline]
pub fn pack_row(row: &[u8]) -> u64 {
    debug_assert!(row.len() <= 64);
    row.iter()
        .enumerate()
        .fold(0u64, |acc, (j, &x)| acc | (((x & 1) as u64) << j))
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: u8, rows: &[&[u8]]) -> Matrix {
        Matrix::from_rows(Field::new(q).unwrap(), rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(Field::GF2, 3).rank(), 3);
        assert_eq!(m(2, &[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(m(5, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rref_examples() {
        assert_eq!(m(2, &[&[1, 1], &[0, 1]]).rref(), m(2, &[&[1, 0], &[0, 1]]));
        let z = Matrix::zeros(Field::GF3, 2, 3);
        assert_eq!(z.rref(), z);
        assert_eq!(m(5, &[&[2, 4]]).rref(), m(5, &[&[1, 2]]));
    }

    #[test]
    fn in_row_space_examples() {
        let a = m(3, &[&[1, 2, 0], &[0, 1, 1]]);
        assert!(a.in_row_space(a.row(0)).unwrap());
        assert!(a.in_row_space(&[0, 0, 0]).unwrap());
        assert!(!m(2, &[&[1, 0]]).in_row_space(&[0, 1]).unwrap());
        assert!(a.in_row_space(&[0, 1]).is_err());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = m(3, &[&[1, 2, 0, 1], &[0, 1, 1, 2]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rejects_bad_shapes_and_residues() {
        assert!(Matrix::from_vec(Field::GF2, 2, 2, vec![0, 1, 1]).is_err());
        assert!(Matrix::from_vec(Field::GF2, 1, 2, vec![0, 2]).is_err());
        assert!(Matrix::from_rows(Field::GF2, &[vec![0u8, 1], vec![1]]).is_err());
    }

    #[test]
    fn wide_gf2_rank_uses_multiword_path() {
        let mut a = Matrix::zeros(Field::GF2, 3, 100);
        a.set(0, 0, 1);
        a.set(1, 99, 1);
        a.set(2, 0, 1);
        a.set(2, 99, 1);
        assert_eq!(a.rank(), 2);
    }
}
