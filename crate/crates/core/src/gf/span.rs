use super::{Field, Matrix};
use crate::error::{Error, Result};

/// Default cap on enumerated span vectors (2^24).
pub const SPAN_BUDGET: u128 = 1 << 24;

/// Every vector of the column span of `m`, each exactly once.
///
/// The column span is first reduced to a basis (nonzero rows of the RREF of
/// `mᵀ`), then coefficient tuples are visited lexicographically with the first
/// basis vector most significant. The zero vector comes first.
pub fn span_vectors(m: &Matrix, budget: u128) -> Result<SpanVectors> {
    let q = m.field().order() as u128;
    let required = q.checked_pow(m.cols() as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::budget(
            format!("span of a {}x{} matrix over {}", m.rows(), m.cols(), m.field()),
            required,
            budget,
        ));
    }
    let reduced = m.transpose().rref();
    let basis: Vec<Vec<u8>> = (0..reduced.rows())
        .map(|r| reduced.row(r).to_vec())
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    Ok(SpanVectors {
        field: m.field(),
        len: m.rows(),
        coeffs: vec![0; basis.len()],
        basis,
        done: false,
    })
}

#[derive(Clone, Debug)]
pub struct SpanVectors {
    field: Field,
    len: usize,
    basis: Vec<Vec<u8>>,
    coeffs: Vec<u8>,
    done: bool,
}

impl SpanVectors {
    /// Dimension of the span.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn current(&self) -> Vec<u8> {
        let f = self.field;
        let mut v = vec![0u8; self.len];
        for (b, &c) in self.basis.iter().zip(&self.coeffs) {
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        v
    }

    fn advance(&mut self) {
        let q = self.field.order();
        for c in self.coeffs.iter_mut().rev() {
            *c += 1;
            if *c < q {
                return;
            }
            *c = 0;
        }
        self.done = true;
    }
}

impl Iterator for SpanVectors {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let v = self.current();
        self.advance();
        Some(v)
    }
}
