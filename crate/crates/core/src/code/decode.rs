use std::fmt::Write as _;

use super::{any_subset, binomial, check_sizes, encode, row_test, IndexCode};
use crate::error::{Error, Result};
use crate::gf::text::parse_num;
use crate::gf::Field;
use crate::graph::Graph;

/// Linear decoder of one receiver:
/// `x_i = Σ_j c_j · symbol_j + Σ_k d_k · x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceiverDecoder {
    pub vertex: usize,
    /// `(symbol index, coefficient)`, nonzero coefficients only.
    pub queries: Vec<(usize, u8)>,
    /// `(out-neighbor, coefficient)`, nonzero coefficients only.
    pub side: Vec<(usize, u8)>,
}

impl ReceiverDecoder {
    pub fn query_count(&self) -> usize {
        self.queries.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodingScheme {
    field: Field,
    receivers: Vec<ReceiverDecoder>,
}

impl DecodingScheme {
    pub fn new(field: Field, receivers: Vec<ReceiverDecoder>) -> Result<Self> {
        for (i, r) in receivers.iter().enumerate() {
            if r.vertex != i {
                return Err(Error::domain(format!(
                    "receiver {i} is labelled {}",
                    r.vertex
                )));
            }
            let coeffs = r.queries.iter().chain(&r.side).map(|&(_, c)| c);
            for c in coeffs {
                if c == 0 || c >= field.order() {
                    return Err(Error::domain(format!(
                        "receiver {i} has coefficient {c}, expected a nonzero residue"
                    )));
                }
            }
        }
        Ok(DecodingScheme { field, receivers })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn receivers(&self) -> &[ReceiverDecoder] {
        &self.receivers
    }

    pub fn receiver(&self, i: usize) -> &ReceiverDecoder {
        &self.receivers[i]
    }

    /// Largest number of symbols any receiver reads.
    pub fn query_complexity(&self) -> usize {
        self.receivers
            .iter()
            .map(ReceiverDecoder::query_count)
            .max()
            .unwrap_or(0)
    }

    /// Verifies the decoding contract symbolically: for every receiver the
    /// linear form `Σ c_j e_j + Σ d_k u_k` must equal the unit vector `u_i`,
    /// which is equivalent to decoding every word correctly.
    pub fn check(&self, g: &Graph, code: &IndexCode) -> Result<()> {
        self.check_shape(g, code)?;
        let f = self.field;
        let gen = code.generator();
        for r in &self.receivers {
            let mut form = vec![0u8; code.n()];
            for &(j, c) in &r.queries {
                for (row, x) in form.iter_mut().enumerate() {
                    *x = f.add(*x, f.mul(c, gen.get(row, j)));
                }
            }
            for &(k, d) in &r.side {
                form[k] = f.add(form[k], d);
            }
            let ok = form
                .iter()
                .enumerate()
                .all(|(k, &x)| x == u8::from(k == r.vertex));
            if !ok {
                return Err(Error::Violation(format!(
                    "decoder of receiver {} does not recover x_{}",
                    r.vertex, r.vertex
                )));
            }
        }
        Ok(())
    }

    fn check_shape(&self, g: &Graph, code: &IndexCode) -> Result<()> {
        check_sizes(g, code)?;
        if self.field != code.field() {
            return Err(Error::domain(format!(
                "scheme over {} for a code over {}",
                self.field,
                code.field()
            )));
        }
        if self.receivers.len() != g.n() {
            return Err(Error::domain(format!(
                "scheme has {} receivers for a graph on {} vertices",
                self.receivers.len(),
                g.n()
            )));
        }
        for r in &self.receivers {
            if let Some(&(j, _)) = r.queries.iter().find(|&&(j, _)| j >= code.len()) {
                return Err(Error::domain(format!(
                    "receiver {} queries symbol {j} of a length-{} code",
                    r.vertex,
                    code.len()
                )));
            }
            if let Some(&(k, _)) = r
                .side
                .iter()
                .find(|&&(k, _)| k >= g.n() || !g.has_arc(r.vertex, k))
            {
                return Err(Error::domain(format!(
                    "receiver {} uses x_{k}, which is not side information",
                    r.vertex
                )));
            }
        }
        Ok(())
    }

    /// Text form: one line per receiver, `i | j:c … | k:d …`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.receivers {
            let _ = write!(out, "{} |", r.vertex);
            for (j, c) in &r.queries {
                let _ = write!(out, " {j}:{c}");
            }
            out.push_str(" |");
            for (k, d) in &r.side {
                let _ = write!(out, " {k}:{d}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str, field: Field) -> Result<DecodingScheme> {
        let mut receivers = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('|').collect();
            let [vertex, queries, side] = parts[..] else {
                return Err(Error::format(lineno, "expected `i | j:c … | k:d …`"));
            };
            let vertex: usize = parse_num(vertex.trim(), lineno)?;
            let pairs = |s: &str| -> Result<Vec<(usize, u8)>> {
                s.split_whitespace()
                    .map(|tok| {
                        let (a, b) = tok.split_once(':').ok_or_else(|| {
                            Error::format(lineno, format!("expected `index:coeff`, found `{tok}`"))
                        })?;
                        Ok((parse_num(a, lineno)?, parse_num(b, lineno)?))
                    })
                    .collect()
            };
            receivers.push(ReceiverDecoder {
                vertex,
                queries: pairs(queries)?,
                side: pairs(side)?,
            });
        }
        DecodingScheme::new(field, receivers)
    }
}

/// Derives a linear decoder for every receiver.
///
/// For receiver `i` the candidate symbol set `J` is all symbols, or with a
/// query budget the first subset (by size, then lexicographically) through
/// which `i` is satisfied. The nullspace of the non-neighbor rows restricted
/// to `J` is scanned in basis order for the first `c` with `(E·c)_i ≠ 0`.
/// With `v = E·c`, the decoder is `c / v_i` on symbols and `-v_k / v_i` on
/// side information.
pub fn derive_decoding(
    g: &Graph,
    code: &IndexCode,
    max_queries: Option<usize>,
    budget: u128,
) -> Result<DecodingScheme> {
    check_sizes(g, code)?;
    let f = code.field();
    let gen = code.generator();
    let l = code.len();

    let mut receivers = Vec::with_capacity(g.n());
    for i in 0..g.n() {
        let cols = match max_queries {
            None => {
                if !row_test(g, gen, i) {
                    return Err(Error::Unsatisfied {
                        vertex: i,
                        queries: None,
                    });
                }
                (0..l).collect::<Vec<_>>()
            }
            Some(0) => return Err(Error::domain("query budget must be at least 1")),
            Some(q) => {
                let k = q.min(l);
                let total: u128 = (1..=k).map(|s| binomial(l, s)).sum();
                if total > budget {
                    return Err(Error::budget(
                        format!("query subsets of size at most {k} out of {l}"),
                        total,
                        budget,
                    ));
                }
                let mut found = None;
                for s in 1..=k {
                    if any_subset(l, s, |cols| {
                        if row_test(g, &gen.select_cols(cols), i) {
                            found = Some(cols.to_vec());
                            true
                        } else {
                            false
                        }
                    }) {
                        break;
                    }
                }
                found.ok_or(Error::Unsatisfied {
                    vertex: i,
                    queries: Some(q),
                })?
            }
        };

        let restricted = gen.select_cols(&cols);
        let block = restricted.select_rows(&g.non_neighbors(i));
        let target = restricted.row(i);
        let c = block
            .nullspace()
            .into_iter()
            .find(|c| dot(f, target, c) != 0)
            .expect("rank test guarantees a satisfying combination");
        let mut full = vec![0u8; l];
        for (&col, &x) in cols.iter().zip(&c) {
            full[col] = x;
        }
        let v = gen.mul_vec(&full);
        let scale = f.inv(v[i]).expect("v_i is nonzero");
        let queries = full
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .map(|(j, &x)| (j, f.mul(scale, x)))
            .collect();
        let side = v
            .iter()
            .enumerate()
            .filter(|&(k, &x)| k != i && x != 0)
            .map(|(k, &x)| (k, f.neg(f.mul(scale, x))))
            .collect();
        receivers.push(ReceiverDecoder {
            vertex: i,
            queries,
            side,
        });
    }
    DecodingScheme::new(f, receivers)
}

fn dot(f: Field, a: &[u8], b: &[u8]) -> u8 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Broadcasts `E(x)` and runs every receiver's decoder on the symbols it
/// queries plus its side information. Returns the decoded word.
pub fn simulate_broadcast(
    g: &Graph,
    code: &IndexCode,
    scheme: &DecodingScheme,
    x: &[u8],
) -> Result<Vec<u8>> {
    scheme.check_shape(g, code)?;
    let symbols = encode(code, x)?;
    let f = code.field();
    Ok(scheme
        .receivers
        .iter()
        .map(|r| {
            let from_symbols = r
                .queries
                .iter()
                .fold(0, |acc, &(j, c)| f.add(acc, f.mul(c, symbols[j])));
            // Only coordinates in N⁺(i) are read; check_shape enforced that.
            r.side
                .iter()
                .fold(from_symbols, |acc, &(k, d)| f.add(acc, f.mul(d, x[k])))
        })
        .collect())
}
