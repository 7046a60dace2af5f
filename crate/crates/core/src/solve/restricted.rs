use std::time::Instant;

use super::minrank::scan_subspaces;
use super::{length_lower_bound, Budgets, SolveResult};
use crate::code::{binomial, row_test, IndexCode};
use crate::error::{Error, Result};
use crate::gf::{Field, Matrix};
use crate::graph::Graph;

/// Least length of a valid code whose generator has at most `q` nonzero
/// entries per row.
///
/// Rows are assigned in order 0..n by depth-first search. Columns are
/// interchangeable and may be rescaled, so a row may only open the next
/// unused columns, and an opened column starts with entry 1. A branch is cut
/// as soon as a vertex whose row and non-neighbor rows are all assigned fails
/// the rank test.
pub fn ldgm_min_length(
    g: &Graph,
    field: Field,
    q: usize,
    budgets: &Budgets,
) -> Result<SolveResult<IndexCode>> {
    if q == 0 {
        return Err(Error::domain("row density bound must be at least 1"));
    }
    let start = Instant::now();
    let n = g.n();
    // ready[i]: the row after which vertex i can be tested.
    let ready: Vec<usize> = (0..n)
        .map(|i| g.non_neighbors(i).into_iter().fold(i, usize::max))
        .collect();
    let mut due = vec![Vec::new(); n];
    for (i, &r) in ready.iter().enumerate() {
        due[r].push(i);
    }
    let mut explored = 0u64;
    for l in length_lower_bound(g)?.max(1)..=n {
        let mut dfs = Ldgm {
            g,
            field,
            q,
            limit: budgets.nodes,
            due: &due,
            gen: Matrix::zeros(field, n, l),
            nodes: explored as u128,
        };
        let found = dfs.row(0, 0)?;
        explored = dfs.nodes as u64;
        if found {
            return Ok(SolveResult::new(l, IndexCode::new(dfs.gen)?, explored, start));
        }
    }
    Err(Error::Violation(format!(
        "no generator of length ≤ {n} with row density {q} serves the graph"
    )))
}

struct Ldgm<'a> {
    g: &'a Graph,
    field: Field,
    q: usize,
    limit: u128,
    due: &'a [Vec<usize>],
    gen: Matrix,
    nodes: u128,
}

impl Ldgm<'_> {
    /// Fills row `r` onward given `used` opened columns. On success `gen`
    /// holds the witness.
    fn row(&mut self, r: usize, used: usize) -> Result<bool> {
        let (n, l) = (self.gen.rows(), self.gen.cols());
        if r == n {
            return Ok(used == l);
        }
        let rows_after = n - r - 1;
        for s in 1..=self.q.min(l) {
            for fresh in 0..=s.min(l - used) {
                let old = s - fresh;
                if old > used || l - used - fresh > rows_after * self.q {
                    continue;
                }
                let mut done = false;
                let mut err = None;
                crate::code::any_subset(used, old, |cols| {
                    match self.values(r, used, fresh, cols) {
                        Ok(found) => done = found,
                        Err(e) => err = Some(e),
                    }
                    done || err.is_some()
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if done {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Runs through the nonzero values on the existing columns `cols`, with
    /// `fresh` new columns opened at 1.
    fn values(&mut self, r: usize, used: usize, fresh: usize, cols: &[usize]) -> Result<bool> {
        let qf = self.field.order();
        let l = self.gen.cols();
        for c in 0..l {
            self.gen.set(r, c, 0);
        }
        for c in used..used + fresh {
            self.gen.set(r, c, 1);
        }
        for &c in cols {
            self.gen.set(r, c, 1);
        }
        loop {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::budget(
                    "low-density search nodes",
                    self.nodes,
                    self.limit,
                ));
            }
            let ok = self.due[r].iter().all(|&i| row_test(self.g, &self.gen, i));
            if ok && self.row(r + 1, used + fresh)? {
                return Ok(true);
            }
            // Odometer over the values on `cols`.
            let mut carried = true;
            for &c in cols.iter().rev() {
                let v = self.gen.get(r, c) + 1;
                if v < qf {
                    self.gen.set(r, c, v);
                    carried = false;
                    break;
                }
                self.gen.set(r, c, 1);
            }
            if carried {
                break;
            }
        }
        for c in 0..l {
            self.gen.set(r, c, 0);
        }
        Ok(false)
    }
}

/// Least length of a code every receiver can decode from at most `q`
/// broadcast symbols, searched over the canonical basis of each candidate
/// span.
///
/// Query-limited decoding depends on the basis, not only on the span. Using
/// one basis per span is exact for `q = 1` and for `q ≥ ℓ`; in between the
/// result is an upper bound on the optimum over all generators.
pub fn local_min_length(
    g: &Graph,
    field: Field,
    q: usize,
    budgets: &Budgets,
) -> Result<SolveResult<IndexCode>> {
    if q == 0 {
        return Err(Error::domain("query budget must be at least 1"));
    }
    let lo = length_lower_bound(g)?;
    let guard = |l: usize| {
        let k = q.min(l);
        let count = binomial(l, k);
        if count > budgets.query_subsets {
            return Err(Error::budget(
                format!("query subsets of size {k} out of {l}"),
                count,
                budgets.query_subsets,
            ));
        }
        Ok(())
    };
    scan_subspaces(g, field, budgets, lo, guard, |checker, basis| {
        checker.valid_with_queries(basis, q.min(basis.cols()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{is_valid, is_valid_with_queries, row_density};
    use crate::solve::{clique_cover_number, minrank_exact};

    fn b() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn complete_graph_q1() {
        for n in 1..=6 {
            let k = Graph::complete(n, false).unwrap();
            assert_eq!(ldgm_min_length(&k, Field::GF2, 1, &b()).unwrap().value, 1);
            assert_eq!(local_min_length(&k, Field::GF2, 1, &b()).unwrap().value, 1);
        }
    }

    #[test]
    fn empty_graph_any_q() {
        for q in 1..=3 {
            let e = Graph::empty(5, false).unwrap();
            assert_eq!(ldgm_min_length(&e, Field::GF3, q, &b()).unwrap().value, 5);
            assert_eq!(local_min_length(&e, Field::GF3, q, &b()).unwrap().value, 5);
        }
    }

    #[test]
    fn five_cycle() {
        let c5 = Graph::cycle(5).unwrap();
        let cover = clique_cover_number(&c5).unwrap().value;
        let l = ldgm_min_length(&c5, Field::GF2, 1, &b()).unwrap();
        assert_eq!(l.value, cover);
        assert!(is_valid(&c5, &l.witness).unwrap());
        assert!(row_density(&l.witness) <= 1);
        for q in [1, 3] {
            let r = local_min_length(&c5, Field::GF2, q, &b()).unwrap();
            assert_eq!(r.value, 3);
            assert!(is_valid_with_queries(&c5, &r.witness, q, 1 << 20).unwrap());
        }
        assert_eq!(minrank_exact(&c5, Field::GF2, &b()).unwrap().value, 3);
    }

    #[test]
    fn zero_budget_rejected() {
        let g = Graph::cycle(4).unwrap();
        assert!(ldgm_min_length(&g, Field::GF2, 0, &b()).is_err());
        assert!(local_min_length(&g, Field::GF2, 0, &b()).is_err());
    }

    #[test]
    fn ldgm_refuses_over_node_budget() {
        let g = Graph::cycle(7).unwrap();
        let err = ldgm_min_length(&g, Field::GF3, 3, &Budgets::uniform(50)).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn directed_graphs_are_searched_from_one() {
        let g = Graph::new(3, true, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        let r = ldgm_min_length(&g, Field::GF2, 2, &b()).unwrap();
        assert!(is_valid(&g, &r.witness).unwrap());
        assert_eq!(r.value, minrank_exact(&g, Field::GF2, &b()).unwrap().value);
    }
}
