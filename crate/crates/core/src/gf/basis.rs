//! Incremental row-echelon bases.
//!
//! Rows are reduced against the stored basis in insertion order. Each stored
//! row has already been reduced by every earlier row, so a single forward pass
//! leaves a vector at zero exactly when it lies in the span.

use super::Field;

/// GF(2) basis for vectors of at most 64 coordinates packed into one word.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    rows: Vec<u64>,
    pivots: Vec<u64>,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn clear(&mut self) {
        self.rows.clear();
        self.pivots.clear();
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn reduce(&self, mut v: u64) -> u64 {
        for (&row, &pivot) in self.rows.iter().zip(&self.pivots) {
            if v & pivot != 0 {
                v ^= row;
            }
        }
        v
    }

    /// Adds `v` to the basis; returns `false` if it was already in the span.
    #[inline]
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.rows.push(r);
        self.pivots.push(r & r.wrapping_neg());
        true
    }

    #[inline]
    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }
}

/// Basis over an arbitrary supported prime field, one residue per byte.
/// GF(2) rows are packed into 64-bit blocks.
#[derive(Clone, Debug)]
pub struct RowBasis {
    field: Field,
    cols: usize,
    store: Store,
}

#[derive(Clone, Debug)]
enum Store {
    Binary {
        words: usize,
        rows: Vec<u64>,
        pivots: Vec<usize>,
    },
    Prime {
        rows: Vec<u8>,
        pivots: Vec<usize>,
    },
}

impl RowBasis {
    pub fn new(field: Field, cols: usize) -> Self {
        let store = if field.is_binary() {
            Store::Binary {
                words: cols.div_ceil(64).max(1),
                rows: Vec::new(),
                pivots: Vec::new(),
            }
        } else {
            Store::Prime {
                rows: Vec::new(),
                pivots: Vec::new(),
            }
        };
        RowBasis { field, cols, store }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Binary { pivots, .. } | Store::Prime { pivots, .. } => pivots.len(),
        }
    }

    pub fn clear(&mut self) {
        match &mut self.store {
            Store::Binary { rows, pivots, .. } => {
                rows.clear();
                pivots.clear();
            }
            Store::Prime { rows, pivots } => {
                rows.clear();
                pivots.clear();
            }
        }
    }

    /// Adds `v` (length `cols`) to the basis; `false` if it was dependent.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let field = self.field;
        match &mut self.store {
            Store::Binary {
                words,
                rows,
                pivots,
            } => {
                let mut packed = pack_bits(v, *words);
                reduce_binary(&mut packed, rows, pivots, *words);
                match first_set_bit(&packed) {
                    Some(p) => {
                        rows.extend_from_slice(&packed);
                        pivots.push(p);
                        true
                    }
                    None => false,
                }
            }
            Store::Prime { rows, pivots } => {
                let mut w = v.to_vec();
                reduce_prime(field, &mut w, rows, pivots);
                match w.iter().position(|&x| x != 0) {
                    Some(p) => {
                        let inv = field.inv(w[p]).expect("nonzero pivot");
                        for x in w.iter_mut() {
                            *x = field.mul(*x, inv);
                        }
                        rows.extend_from_slice(&w);
                        pivots.push(p);
                        true
                    }
                    None => false,
                }
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        match &self.store {
            Store::Binary {
                words,
                rows,
                pivots,
            } => {
                let mut packed = pack_bits(v, *words);
                reduce_binary(&mut packed, rows, pivots, *words);
                packed.iter().all(|&w| w == 0)
            }
            Store::Prime { rows, pivots } => {
                let mut w = v.to_vec();
                reduce_prime(self.field, &mut w, rows, pivots);
                w.iter().all(|&x| x == 0)
            }
        }
    }
}

fn pack_bits(v: &[u8], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (j, &x) in v.iter().enumerate() {
        if x & 1 == 1 {
            out[j / 64] |= 1 << (j % 64);
        }
    }
    out
}

fn first_set_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn reduce_binary(v: &mut [u64], rows: &[u64], pivots: &[usize], words: usize) {
    for (k, &p) in pivots.iter().enumerate() {
        if v[p / 64] >> (p % 64) & 1 == 1 {
            let row = &rows[k * words..(k + 1) * words];
            for (a, b) in v.iter_mut().zip(row) {
                *a ^= b;
            }
        }
    }
}

fn reduce_prime(field: Field, v: &mut [u8], rows: &[u8], pivots: &[usize]) {
    let cols = v.len();
    for (k, &p) in pivots.iter().enumerate() {
        let c = v[p];
        if c != 0 {
            let row = &rows[k * cols..(k + 1) * cols];
            for (a, &b) in v.iter_mut().zip(row) {
                *a = field.sub(*a, field.mul(c, b));
            }
        }
    }
}
