use std::time::Instant;

use super::{SolveResult, MAX_EXACT_COVER_VERTICES};
use crate::code::IndexCode;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::graph::Graph;

fn masks(g: &Graph, op: &str) -> Result<Vec<u64>> {
    g.require_undirected(op)?;
    if g.n() > 64 {
        return Err(Error::budget(
            format!("{op} on {} vertices", g.n()),
            g.n() as u128,
            64,
        ));
    }
    Ok((0..g.n()).map(|i| g.out_mask(i)).collect())
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Maximum independent set by branch and bound on bitmasks.
pub fn independence_number(g: &Graph) -> Result<SolveResult<Vec<usize>>> {
    let start = Instant::now();
    let adj = masks(g, "independence number")?;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut search = Mis {
        adj: &adj,
        best: 0,
        best_size: 0,
        nodes: 0,
    };
    search.expand(all, 0, 0);
    let witness = bits(search.best);
    Ok(SolveResult::new(witness.len(), witness, search.nodes, start))
}

struct Mis<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
    nodes: u64,
}

impl Mis<'_> {
    fn expand(&mut self, mut cand: u64, cur: u64, size: u32) {
        self.nodes += 1;
        // Vertices isolated inside the candidate set always join.
        let mut cur = cur;
        let mut size = size;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[v] & cand == 0 {
                cur |= 1 << v;
                size += 1;
                cand &= !(1 << v);
            }
        }
        if cand == 0 {
            if size > self.best_size || self.best_size == 0 && size == 0 {
                self.best = cur;
                self.best_size = size;
            }
            return;
        }
        if size + cand.count_ones() <= self.best_size {
            return;
        }
        // Branch on the candidate with most candidate neighbors.
        let mut v = 0;
        let mut deg = 0;
        let mut rest = cand;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[u] & cand).count_ones();
            if d > deg {
                deg = d;
                v = u;
            }
        }
        let bit = 1u64 << v;
        self.expand(cand & !bit & !self.adj[v], cur | bit, size + 1);
        self.expand(cand & !bit, cur, size);
    }
}

/// Greedy clique cover: each unassigned vertex in ascending order opens a
/// clique and absorbs every later unassigned vertex adjacent to all members.
pub fn greedy_clique_cover(g: &Graph) -> Result<Vec<Vec<usize>>> {
    g.require_undirected("clique cover")?;
    let n = g.n();
    let mut assigned = vec![false; n];
    let mut cover = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let mut clique = vec![v];
        assigned[v] = true;
        for (u, taken) in assigned.iter_mut().enumerate().skip(v + 1) {
            if !*taken && clique.iter().all(|&w| g.has_arc(u, w)) {
                clique.push(u);
                *taken = true;
            }
        }
        cover.push(clique);
    }
    Ok(cover)
}

/// The code broadcasting, for every clique of the greedy cover, the sum of
/// its characters.
pub fn greedy_cover_code(g: &Graph, field: Field) -> Result<IndexCode> {
    let cover = greedy_clique_cover(g)?;
    IndexCode::from_partition(field, g.n(), &cover)
}

/// χ(Ḡ): fewest cliques partitioning the vertices, by exact backtracking
/// seeded with the greedy cover and stopped early at the α lower bound.
pub fn clique_cover_number(g: &Graph) -> Result<SolveResult<Vec<Vec<usize>>>> {
    let start = Instant::now();
    g.require_undirected("clique cover")?;
    if g.n() > MAX_EXACT_COVER_VERTICES {
        return Err(Error::budget(
            format!("exact clique cover on {} vertices", g.n()),
            g.n() as u128,
            MAX_EXACT_COVER_VERTICES as u128,
        ));
    }
    let adj = masks(g, "clique cover")?;
    let n = g.n();
    let lower = super::independence_number(g)?.value;
    let greedy = greedy_clique_cover(g)?;

    // Most constrained (fewest neighbors) first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| adj[v].count_ones());

    let mut search = Cover {
        adj: &adj,
        order: &order,
        lower,
        best: greedy.len(),
        best_cover: None,
        cliques: Vec::new(),
        nodes: 0,
    };
    if search.best > lower {
        search.place(0);
    }
    let mut cover = match search.best_cover {
        Some(masks) => masks.into_iter().map(bits).collect(),
        None => greedy,
    };
    for c in cover.iter_mut() {
        c.sort_unstable();
    }
    cover.sort();
    Ok(SolveResult::new(cover.len(), cover, search.nodes, start))
}

struct Cover<'a> {
    adj: &'a [u64],
    order: &'a [usize],
    lower: usize,
    best: usize,
    best_cover: Option<Vec<u64>>,
    cliques: Vec<u64>,
    nodes: u64,
}

impl Cover<'_> {
    /// Returns true once a cover meeting the lower bound is found.
    fn place(&mut self, k: usize) -> bool {
        self.nodes += 1;
        if k == self.order.len() {
            if self.cliques.len() < self.best {
                self.best = self.cliques.len();
                self.best_cover = Some(self.cliques.clone());
            }
            return self.best == self.lower;
        }
        let v = self.order[k];
        let bit = 1u64 << v;
        for c in 0..self.cliques.len() {
            if self.cliques[c] & !self.adj[v] == 0 {
                self.cliques[c] |= bit;
                let done = self.place(k + 1);
                self.cliques[c] &= !bit;
                if done {
                    return true;
                }
            }
        }
        if self.cliques.len() + 1 < self.best {
            self.cliques.push(bit);
            let done = self.place(k + 1);
            self.cliques.pop();
            if done {
                return true;
            }
        }
        false
    }
}
