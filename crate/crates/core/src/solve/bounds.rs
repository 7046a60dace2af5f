use serde::{Deserialize, Serialize};

use super::{clique_cover_number, independence_number, minrank_exact, Budgets};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::graph::Graph;

/// α(G) ≤ minrank(G) ≤ χ(Ḡ) on one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sandwich {
    pub alpha: usize,
    pub minrank: usize,
    pub cover: usize,
}

/// minrank(G) · minrank(Ḡ) ≥ n on one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub m: usize,
    pub m_complement: usize,
    pub product: usize,
}

/// Computes all three quantities and fails hard if they are out of order.
pub fn check_sandwich(g: &Graph, field: Field, budgets: &Budgets) -> Result<Sandwich> {
    g.require_undirected("sandwich check")?;
    let alpha = independence_number(g)?.value;
    let minrank = minrank_exact(g, field, budgets)?.value;
    let cover = clique_cover_number(g)?.value;
    if !(alpha <= minrank && minrank <= cover) {
        return Err(Error::Violation(format!(
            "alpha={alpha} minrank={minrank} cover={cover} on {:016x}",
            g.stable_hash()
        )));
    }
    Ok(Sandwich {
        alpha,
        minrank,
        cover,
    })
}

pub fn check_product(g: &Graph, field: Field, budgets: &Budgets) -> Result<Product> {
    let m = minrank_exact(g, field, budgets)?.value;
    let m_complement = minrank_exact(&g.complement()?, field, budgets)?.value;
    let product = m * m_complement;
    if product < g.n() {
        return Err(Error::Violation(format!(
            "minrank product {m}·{m_complement} < {} on {:016x}",
            g.n(),
            g.stable_hash()
        )));
    }
    Ok(Product {
        m,
        m_complement,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_examples() {
        let b = Budgets::default();
        let c5 = Graph::cycle(5).unwrap();
        let s = check_sandwich(&c5, Field::GF2, &b).unwrap();
        assert_eq!((s.alpha, s.minrank, s.cover), (2, 3, 3));
        for n in 1..=6 {
            let k = Graph::complete(n, false).unwrap();
            let s = check_sandwich(&k, Field::GF2, &b).unwrap();
            assert_eq!((s.alpha, s.minrank, s.cover), (1, 1, 1));
            let e = Graph::empty(n, false).unwrap();
            let s = check_sandwich(&e, Field::GF2, &b).unwrap();
            assert_eq!((s.alpha, s.minrank, s.cover), (n, n, n));
        }
    }

    #[test]
    fn product_examples() {
        let b = Budgets::default();
        let p = check_product(&Graph::cycle(5).unwrap(), Field::GF2, &b).unwrap();
        assert_eq!((p.m, p.m_complement, p.product), (3, 3, 9));
        for n in 1..=6 {
            let p = check_product(&Graph::complete(n, false).unwrap(), Field::GF2, &b).unwrap();
            assert_eq!(p.product, n);
            let p = check_product(&Graph::empty(n, false).unwrap(), Field::GF2, &b).unwrap();
            assert_eq!((p.m, p.m_complement), (n, 1));
        }
    }

    #[test]
    fn directed_input_rejected() {
        let g = Graph::new(2, true, &[(0, 1)]).unwrap();
        assert!(check_sandwich(&g, Field::GF2, &Budgets::default()).is_err());
        assert!(check_product(&g, Field::GF2, &Budgets::default()).is_err());
    }
}
