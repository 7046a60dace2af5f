use std::time::Instant;

use super::{length_lower_bound, Budgets, SolveResult};
use crate::code::{query_test, row_test, IndexCode};
use crate::error::{Error, Result};
use crate::gf::{enumerate_subspaces, pack_row, Field, Matrix, XorBasis};
use crate::graph::Graph;

/// Validity checker reused across many candidate generators of one graph.
pub(crate) struct Checker<'g> {
    g: &'g Graph,
    /// Vertices with the most non-neighbors first; they reject most often.
    order: Vec<usize>,
    non_neighbors: Vec<Vec<usize>>,
    packed: Vec<u64>,
    basis: XorBasis,
}

impl<'g> Checker<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        let non_neighbors: Vec<Vec<usize>> = (0..g.n()).map(|i| g.non_neighbors(i)).collect();
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(non_neighbors[i].len()));
        Checker {
            g,
            order,
            non_neighbors,
            packed: vec![0; g.n()],
            basis: XorBasis::new(),
        }
    }

    pub(crate) fn valid(&mut self, gen: &Matrix) -> bool {
        if gen.field().is_binary() && gen.cols() <= 64 {
            for (r, p) in self.packed.iter_mut().enumerate() {
                *p = pack_row(gen.row(r));
            }
            for &i in &self.order {
                let target = self.packed[i];
                if target == 0 {
                    return false;
                }
                self.basis.clear();
                for &z in &self.non_neighbors[i] {
                    self.basis.insert(self.packed[z]);
                }
                if self.basis.contains(target) {
                    return false;
                }
            }
            true
        } else {
            self.order.iter().all(|&i| row_test(self.g, gen, i))
        }
    }

    pub(crate) fn valid_with_queries(&mut self, gen: &Matrix, k: usize) -> bool {
        if k >= gen.cols() {
            return self.valid(gen);
        }
        self.order.iter().all(|&i| query_test(self.g, gen, i, k))
    }
}

/// Scans canonical subspace bases for ℓ = `lo`, `lo + 1`, … and returns the
/// first accepted one as a code.
pub(crate) fn scan_subspaces(
    g: &Graph,
    field: Field,
    budgets: &Budgets,
    lo: usize,
    guard: impl Fn(usize) -> Result<()>,
    mut accept: impl FnMut(&mut Checker, &Matrix) -> bool,
) -> Result<SolveResult<IndexCode>> {
    let start = Instant::now();
    let n = g.n();
    let mut checker = Checker::new(g);
    let mut explored = 0u64;
    for l in lo.max(1)..=n {
        guard(l)?;
        let mut subspaces = enumerate_subspaces(n, l, field, budgets.subspaces)?;
        while let Some(basis) = subspaces.advance() {
            explored += 1;
            if accept(&mut checker, basis) {
                let code = IndexCode::new(basis.clone())?;
                return Ok(SolveResult::new(l, code, explored, start));
            }
        }
    }
    Err(Error::Violation(format!(
        "no subspace of dimension ≤ {n} serves the graph; the full space always does"
    )))
}

/// Minimum length of a linear index code, by exhaustive search over the
/// canonical bases of candidate spans.
///
/// Validity depends only on `span(E)`, so one echelon basis per subspace is
/// enough. The witness is the first valid basis in enumeration order.
pub fn minrank_exact(g: &Graph, field: Field, budgets: &Budgets) -> Result<SolveResult<IndexCode>> {
    let lo = length_lower_bound(g)?;
    scan_subspaces(g, field, budgets, lo, |_| Ok(()), |checker, basis| {
        checker.valid(basis)
    })
}

/// Minimum rank over every matrix that represents `g`: nonzero diagonal,
/// free entries on arcs, zeros elsewhere. Direct enumeration, tiny graphs only.
pub fn minrank_matrix_oracle(g: &Graph, field: Field, budgets: &Budgets) -> Result<usize> {
    let n = g.n();
    let q = field.order();
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| g.out_neighbors(i).map(move |j| (i, j)))
        .collect();
    let slots = n + arcs.len();
    let required = (q as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if required > budgets.matrices {
        return Err(Error::budget(
            format!("representing matrices of a graph with {n} vertices and {} arcs", arcs.len()),
            required,
            budgets.matrices,
        ));
    }

    let mut a = Matrix::identity(field, n);
    // Odometer: diagonal digits run over 1..q, arc digits over 0..q.
    let mut best = n;
    loop {
        best = best.min(a.rank());
        if best == 1 {
            return Ok(1);
        }
        let mut carried = true;
        for &(r, c) in arcs.iter().rev() {
            let v = a.get(r, c) + 1;
            if v < q {
                a.set(r, c, v);
                carried = false;
                break;
            }
            a.set(r, c, 0);
        }
        if carried {
            for d in (0..n).rev() {
                let v = a.get(d, d) + 1;
                if v < q {
                    a.set(d, d, v);
                    carried = false;
                    break;
                }
                a.set(d, d, 1);
            }
        }
        if carried {
            return Ok(best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::is_valid;

    fn budgets() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn complete_graph_needs_one_symbol() {
        for n in 1..=8 {
            let g = Graph::complete(n, false).unwrap();
            let r = minrank_exact(&g, Field::GF2, &budgets()).unwrap();
            assert_eq!(r.value, 1);
            assert_eq!(r.witness, IndexCode::sum(Field::GF2, n).unwrap());
        }
    }

    #[test]
    fn empty_graph_needs_everything() {
        for n in 1..=6 {
            let g = Graph::empty(n, false).unwrap();
            let r = minrank_exact(&g, Field::GF3, &budgets()).unwrap();
            assert_eq!(r.value, n);
            assert_eq!(r.witness, IndexCode::identity(Field::GF3, n).unwrap());
        }
    }

    #[test]
    fn five_cycle() {
        let c5 = Graph::cycle(5).unwrap();
        let r = minrank_exact(&c5, Field::GF2, &budgets()).unwrap();
        assert_eq!(r.value, 3);
        assert!(is_valid(&c5, &r.witness).unwrap());
        assert_eq!(minrank_matrix_oracle(&c5, Field::GF2, &budgets()).unwrap(), 3);
    }

    #[test]
    fn directed_path_needs_three() {
        let g = Graph::new(3, true, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(minrank_exact(&g, Field::GF2, &budgets()).unwrap().value, 3);
        assert_eq!(minrank_matrix_oracle(&g, Field::GF2, &budgets()).unwrap(), 3);
    }

    #[test]
    fn oracle_small_examples() {
        let k2 = Graph::complete(2, false).unwrap();
        assert_eq!(minrank_matrix_oracle(&k2, Field::GF2, &budgets()).unwrap(), 1);
        let e2 = Graph::empty(2, false).unwrap();
        assert_eq!(minrank_matrix_oracle(&e2, Field::GF2, &budgets()).unwrap(), 2);
        assert_eq!(minrank_matrix_oracle(&e2, Field::GF5, &budgets()).unwrap(), 2);
    }

    #[test]
    fn oracle_refuses_large_graphs() {
        let g = Graph::complete(6, false).unwrap();
        assert!(minrank_matrix_oracle(&g, Field::GF2, &budgets()).unwrap_err().is_budget());
    }

    #[test]
    fn minrank_refuses_over_budget() {
        let g = Graph::cycle(12).unwrap();
        let err = minrank_exact(&g, Field::GF2, &Budgets::uniform(1000)).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn record_format() {
        let g = Graph::complete(3, false).unwrap();
        let r = minrank_exact(&g, Field::GF2, &budgets()).unwrap();
        let rec = r.record(&g, None, Field::GF2);
        let parts: Vec<&str> = rec.split(' ').collect();
        assert_eq!(parts.len(), 5);
        assert_eq!(parts[0], format!("{:016x}", g.stable_hash()));
        assert_eq!(&parts[1..4], &["-", "2", "1"]);
    }
}
