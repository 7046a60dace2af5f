//! Linear index codes and what it means for one to serve a graph.
//!
//! A code is its n×ℓ generator matrix `E`: broadcast symbol `j` is
//! `⟨e_j, x⟩` where `e_j` is column `j`. Receiver `i` can recover `x_i`
//! exactly when some `v ∈ span(E)` has `v_i ≠ 0` and vanishes outside
//! `N⁺(i) ∪ {i}`. Writing `v = E·c`, such a `c` exists iff row `i` of `E` is
//! not a combination of the rows indexed by the non-neighbors of `i`, which is
//! the rank test used throughout instead of enumerating the span.

mod decode;

pub use decode::{derive_decoding, simulate_broadcast, DecodingScheme, ReceiverDecoder};

use crate::error::{Error, Result};
use crate::gf::{self, pack_row, span_vectors, Field, Matrix, RowBasis, XorBasis};
use crate::graph::Graph;

/// Default cap on the number of query subsets examined per receiver.
pub const QUERY_SUBSET_BUDGET: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexCode {
    gen: Matrix,
}

impl IndexCode {
    pub fn new(gen: Matrix) -> Result<Self> {
        if gen.rows() == 0 || gen.cols() == 0 {
            return Err(Error::domain(format!(
                "generator must be at least 1x1, got {}x{}",
                gen.rows(),
                gen.cols()
            )));
        }
        Ok(IndexCode { gen })
    }

    /// The uncoded scheme: broadcast every character.
    pub fn identity(field: Field, n: usize) -> Result<Self> {
        Self::new(Matrix::identity(field, n))
    }

    /// One symbol, the sum of all characters.
    pub fn sum(field: Field, n: usize) -> Result<Self> {
        Self::new(Matrix::column(field, &vec![1; n])?)
    }

    /// One all-ones column per part, supported on that part.
    pub fn from_partition(field: Field, n: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut gen = Matrix::zeros(field, n, parts.len());
        for (c, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::domain(format!("vertex {v} out of range 0..{n}")));
                }
                gen.set(v, c, 1);
            }
        }
        Self::new(gen)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.gen.field()
    }

    /// Number of receivers.
    #[inline]
    pub fn n(&self) -> usize {
        self.gen.rows()
    }

    /// Number of broadcast symbols ℓ.
    #[inline]
    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn into_generator(self) -> Matrix {
        self.gen
    }

    /// Restriction to the broadcast symbols in `cols`.
    pub fn restrict(&self, cols: &[usize]) -> Matrix {
        self.gen.select_cols(cols)
    }
}

fn check_sizes(g: &Graph, code: &IndexCode) -> Result<()> {
    if g.n() != code.n() {
        return Err(Error::domain(format!(
            "graph has {} vertices but the code has {} rows",
            g.n(),
            code.n()
        )));
    }
    Ok(())
}

fn check_vertex(g: &Graph, i: usize) -> Result<()> {
    if i >= g.n() {
        return Err(Error::domain(format!("vertex {i} out of range 0..{}", g.n())));
    }
    Ok(())
}

/// Rank test on an explicit generator: is row `i` outside the row space of
/// the non-neighbor rows?
pub(crate) fn row_test(g: &Graph, gen: &Matrix, i: usize) -> bool {
    if gen.field().is_binary() && gen.cols() <= 64 {
        let mut basis = XorBasis::new();
        for z in g.non_neighbors(i) {
            basis.insert(pack_row(gen.row(z)));
        }
        !basis.contains(pack_row(gen.row(i)))
    } else {
        let mut basis = RowBasis::new(gen.field(), gen.cols());
        for z in g.non_neighbors(i) {
            basis.insert(gen.row(z));
        }
        !basis.contains(gen.row(i))
    }
}

/// Does some vector of `span(E)` satisfy vertex `i`?
pub fn satisfies(g: &Graph, code: &IndexCode, i: usize) -> Result<bool> {
    check_sizes(g, code)?;
    check_vertex(g, i)?;
    Ok(row_test(g, code.generator(), i))
}

/// Per-vertex satisfaction.
pub fn satisfied_vertices(g: &Graph, code: &IndexCode) -> Result<Vec<bool>> {
    check_sizes(g, code)?;
    Ok((0..g.n()).map(|i| row_test(g, code.generator(), i)).collect())
}

pub fn first_unsatisfied(g: &Graph, code: &IndexCode) -> Result<Option<usize>> {
    check_sizes(g, code)?;
    Ok((0..g.n()).find(|&i| !row_test(g, code.generator(), i)))
}

pub fn is_valid(g: &Graph, code: &IndexCode) -> Result<bool> {
    Ok(first_unsatisfied(g, code)?.is_none())
}

/// Visits the `k`-subsets of `0..n` in lexicographic order until `f` returns true.
pub(crate) fn any_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return false;
        };
        idx[p] += 1;
        for t in p + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, t| {
        acc.saturating_mul((n - t) as u128) / (t as u128 + 1)
    })
}

/// Can receiver `i` decode while reading at most `q` broadcast symbols?
///
/// A budget of at least ℓ is not binding and reduces to [`satisfies`].
/// Satisfaction through a column set is monotone under taking supersets, so
/// only the subsets of size exactly `min(q, ℓ)` are examined.
pub fn satisfies_with_queries(
    g: &Graph,
    code: &IndexCode,
    i: usize,
    q: usize,
    budget: u128,
) -> Result<bool> {
    check_sizes(g, code)?;
    check_vertex(g, i)?;
    if q == 0 {
        return Err(Error::domain("query budget must be at least 1"));
    }
    let l = code.len();
    let k = q.min(l);
    let count = binomial(l, k);
    if count > budget {
        return Err(Error::budget(
            format!("query subsets of size {k} out of {l}"),
            count,
            budget,
        ));
    }
    Ok(query_test(g, code.generator(), i, k))
}

pub(crate) fn query_test(g: &Graph, gen: &Matrix, i: usize, k: usize) -> bool {
    let l = gen.cols();
    if k >= l {
        return row_test(g, gen, i);
    }
    let zs = g.non_neighbors(i);
    if gen.field().is_binary() && l <= 64 {
        let zrows: Vec<u64> = zs.iter().map(|&z| pack_row(gen.row(z))).collect();
        let target = pack_row(gen.row(i));
        let mut basis = XorBasis::new();
        any_subset(l, k, |cols| {
            let mask = cols.iter().fold(0u64, |m, &c| m | 1 << c);
            if target & mask == 0 {
                return false;
            }
            basis.clear();
            for &z in &zrows {
                basis.insert(z & mask);
            }
            !basis.contains(target & mask)
        })
    } else {
        any_subset(l, k, |cols| row_test(g, &gen.select_cols(cols), i))
    }
}

pub fn is_valid_with_queries(g: &Graph, code: &IndexCode, q: usize, budget: u128) -> Result<bool> {
    for i in 0..g.n() {
        if !satisfies_with_queries(g, code, i, q, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest number of nonzero entries in a row of the generator: how many
/// broadcast symbols a single character influences.
pub fn row_density(code: &IndexCode) -> usize {
    let gen = code.generator();
    (0..gen.rows())
        .map(|r| gf::weight(gen.row(r)))
        .max()
        .unwrap_or(0)
}

/// `E(x) = (⟨e_1, x⟩, …, ⟨e_ℓ, x⟩)`.
pub fn encode(code: &IndexCode, x: &[u8]) -> Result<Vec<u8>> {
    if x.len() != code.n() {
        return Err(Error::domain(format!(
            "word of length {} for a code on {} receivers",
            x.len(),
            code.n()
        )));
    }
    code.field().check_residues(x)?;
    Ok(code.generator().vec_mul(x))
}

/// Coordinates that are nonzero in some span vector of weight at most `r`.
pub fn low_weight_support(code: &IndexCode, r: usize, budget: u128) -> Result<Vec<usize>> {
    let mut hit = vec![false; code.n()];
    for v in span_vectors(code.generator(), budget)? {
        if gf::weight(&v) <= r {
            for (h, &x) in hit.iter_mut().zip(&v) {
                *h |= x != 0;
            }
        }
    }
    Ok(hit
        .iter()
        .enumerate()
        .filter_map(|(i, &h)| h.then_some(i))
        .collect())
}

/// Number of vertices satisfied by some span vector of weight at most `r`,
/// found by enumerating the span.
pub fn low_weight_satisfied_count(
    g: &Graph,
    code: &IndexCode,
    r: usize,
    budget: u128,
) -> Result<usize> {
    check_sizes(g, code)?;
    let mut sat = vec![false; g.n()];
    for v in span_vectors(code.generator(), budget)? {
        if gf::weight(&v) > r {
            continue;
        }
        for (i, s) in sat.iter_mut().enumerate() {
            if !*s && vector_satisfies(g, &v, i) {
                *s = true;
            }
        }
    }
    Ok(sat.iter().filter(|&&s| s).count())
}

/// Does `v` satisfy vertex `i` in `g`? Direct check of the definition.
pub fn vector_satisfies(g: &Graph, v: &[u8], i: usize) -> bool {
    v[i] != 0
        && v
            .iter()
            .enumerate()
            .all(|(j, &x)| x == 0 || j == i || g.has_arc(i, j))
}
