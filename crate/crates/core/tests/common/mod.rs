#![allow(dead_code)]

use minrank_core::{Field, Graph, Matrix};
use proptest::prelude::*;

pub fn fields() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u8, 3, 5, 7]).prop_map(|q| Field::new(q).unwrap())
}

pub fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..field.order(), rows * cols)
        .prop_map(move |data| Matrix::from_vec(field, rows, cols, data).unwrap())
}

pub fn any_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (fields(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

pub fn undirected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        any::<u64>().prop_map(move |m| {
            let mask = if pairs == 64 { m } else { m & ((1u64 << pairs) - 1) };
            Graph::from_pair_mask(n, mask).unwrap()
        })
    })
}

pub fn directed(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let arcs = n * (n - 1);
        any::<u64>().prop_map(move |m| {
            let mask = if arcs >= 64 { m } else { m & ((1u64 << arcs) - 1) };
            Graph::from_arc_mask(n, mask).unwrap()
        })
    })
}

/// All words of `F^len` in lexicographic order.
pub fn words(q: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![0u8; len]];
    loop {
        let mut w = out.last().unwrap().clone();
        let mut k = len;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            w[k] += 1;
            if w[k] < q {
                break;
            }
            w[k] = 0;
        }
        out.push(w);
    }
}

/// Every vector `E·c`, one per coefficient vector `c` (with repeats).
pub fn span_brute(e: &Matrix) -> Vec<Vec<u8>> {
    let f = e.field();
    words(f.order(), e.cols())
        .into_iter()
        .map(|c| {
            (0..e.rows())
                .map(|r| {
                    (0..e.cols()).fold(0u8, |acc, j| f.add(acc, f.mul(e.get(r, j), c[j])))
                })
                .collect()
        })
        .collect()
}

/// Rank from the size of the column span: `q^rank` distinct vectors.
pub fn rank_brute(e: &Matrix) -> usize {
    let mut span = span_brute(e);
    span.sort();
    span.dedup();
    let q = e.field().order() as usize;
    let mut r = 0;
    let mut size = 1;
    while size < span.len() {
        size *= q;
        r += 1;
    }
    assert_eq!(size, span.len());
    r
}

/// Nonzero at `i`, zero outside `i` and its out-neighbors.
pub fn satisfies_def(g: &Graph, v: &[u8], i: usize) -> bool {
    v[i] != 0 && (0..g.n()).all(|j| j == i || v[j] == 0 || g.has_arc(i, j))
}

pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}
