//! The `check` subcommand: invariant suites at fixed small sizes.

use std::fmt::Write as _;

use minrank_core::code::{low_weight_satisfied_count, low_weight_support, satisfies};
use minrank_core::experiment::coupling_check;
use minrank_core::gf::{enumerate_subspaces, gaussian_binomial, span_vectors, SPAN_BUDGET};
use minrank_core::rng::{below, mix, seeded, Rng};
use minrank_core::solve::{
    check_product, check_sandwich, clique_cover_number, ldgm_min_length, local_min_length,
    minrank_exact, minrank_matrix_oracle,
};
use minrank_core::{Budgets, Field, Graph, IndexCode, Matrix};

type Outcome = Result<usize, String>;
type Suite<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn random_matrix(rng: &mut Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| below(rng, field.order() as u64) as u8)
        .collect();
    Matrix::from_vec(field, rows, cols, data).expect("shape matches data")
}

fn random_digraph(rng: &mut Rng, n: usize) -> Graph {
    let arcs = n * (n - 1);
    let mask = below(rng, u64::MAX) & if arcs >= 64 { u64::MAX } else { (1 << arcs) - 1 };
    Graph::from_arc_mask(n, mask).expect("n ≤ 8")
}

fn undirected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs).map(move |m| Graph::from_pair_mask(n, m).expect("n ≤ 11"))
}

fn gf_rank(seed: u64) -> Outcome {
    let mut rng = seeded(mix(&[seed, 1]));
    let fields = [Field::GF2, Field::GF3, Field::GF5];
    for case in 0..500 {
        let f = fields[case % 3];
        let rows = 1 + below(&mut rng, 6) as usize;
        let cols = 1 + below(&mut rng, 6) as usize;
        let m = random_matrix(&mut rng, f, rows, cols);
        let r = m.rank();
        if r != m.transpose().rank() || m.rref().rref() != m.rref() {
            return Err(format!("rank/rref mismatch on\n{m}"));
        }
        let span = span_vectors(&m, SPAN_BUDGET).map_err(|e| e.to_string())?.count();
        if span != (f.order() as usize).pow(r as u32) {
            return Err(format!("span of size {span} for rank {r}"));
        }
    }
    Ok(500)
}

fn gf_subspaces() -> Outcome {
    let mut cases = 0;
    for (q, max_n) in [(2u8, 6usize), (3, 4)] {
        let f = Field::new(q).expect("supported");
        for n in 1..=max_n {
            for l in 1..=n {
                let mut subs = enumerate_subspaces(n, l, f, 1 << 24).map_err(|e| e.to_string())?;
                let mut count = 0u128;
                while subs.advance().is_some() {
                    count += 1;
                }
                if count != gaussian_binomial(n, l, q) {
                    return Err(format!("{count} subspaces for q={q} n={n} l={l}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn support_bound(seed: u64) -> Outcome {
    let mut rng = seeded(mix(&[seed, 2]));
    for case in 0..300 {
        let f = if case % 2 == 0 { Field::GF2 } else { Field::GF3 };
        let n = 1 + below(&mut rng, 10) as usize;
        let l = 1 + below(&mut rng, 5) as usize;
        let code = IndexCode::new(random_matrix(&mut rng, f, n, l)).map_err(|e| e.to_string())?;
        for r in 0..=n {
            let s = low_weight_support(&code, r, SPAN_BUDGET).map_err(|e| e.to_string())?;
            if s.len() > r * l {
                return Err(format!("support {} > {r}·{l}", s.len()));
            }
        }
    }
    Ok(300)
}

fn low_weight_count(seed: u64) -> Outcome {
    let mut rng = seeded(mix(&[seed, 3]));
    for _ in 0..300 {
        let n = 1 + below(&mut rng, 8) as usize;
        let l = 1 + below(&mut rng, 4) as usize;
        let g = random_digraph(&mut rng, n);
        let code = IndexCode::new(random_matrix(&mut rng, Field::GF2, n, l)).map_err(|e| e.to_string())?;
        let c = low_weight_satisfied_count(&g, &code, n / (2 * l), SPAN_BUDGET).map_err(|e| e.to_string())?;
        if 2 * c > n {
            return Err(format!("{c} low-weight satisfied vertices out of {n} with ℓ={l}"));
        }
    }
    Ok(300)
}

fn side_information_monotone(seed: u64) -> Outcome {
    let mut rng = seeded(mix(&[seed, 4]));
    for _ in 0..300 {
        let n = 2 + below(&mut rng, 5) as usize;
        let l = 1 + below(&mut rng, 4) as usize;
        let g = random_digraph(&mut rng, n);
        let code = IndexCode::new(random_matrix(&mut rng, Field::GF3, n, l)).map_err(|e| e.to_string())?;
        let i = below(&mut rng, n as u64) as usize;
        let j = below(&mut rng, n as u64) as usize;
        if i == j || g.has_arc(i, j) {
            continue;
        }
        let bigger = g.with_arc(i, j).map_err(|e| e.to_string())?;
        for v in 0..n {
            if satisfies(&g, &code, v).unwrap_or(false) && !satisfies(&bigger, &code, v).unwrap_or(false) {
                return Err(format!("adding arc {i}->{j} unsatisfied vertex {v}"));
            }
        }
    }
    Ok(300)
}

fn coupling(seed: u64, budgets: &Budgets) -> Outcome {
    let mut cases = 0;
    for p in [0.3, 0.5, 0.7] {
        let rep = coupling_check(5, p, seed, 40, Field::GF2, budgets).map_err(|e| e.to_string())?;
        if rep.violations > 0 || !rep.ordered() {
            return Err(format!("coupling failed at p={p}: {} violations", rep.violations));
        }
        cases += rep.samples.len();
    }
    Ok(cases)
}

fn restricted_q1(budgets: &Budgets) -> Outcome {
    let mut cases = 0;
    for n in 1..=5 {
        for g in undirected_graphs(n) {
            let cover = clique_cover_number(&g).map_err(|e| e.to_string())?.value;
            let ldgm = ldgm_min_length(&g, Field::GF2, 1, budgets).map_err(|e| e.to_string())?.value;
            let local = local_min_length(&g, Field::GF2, 1, budgets).map_err(|e| e.to_string())?.value;
            if ldgm != cover || local != cover {
                return Err(format!("cover={cover} ldgm={ldgm} local={local} on\n{}", g.to_text()));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn sandwich_and_product(budgets: &Budgets) -> Outcome {
    let mut cases = 0;
    for n in 1..=5 {
        for g in undirected_graphs(n) {
            check_sandwich(&g, Field::GF2, budgets).map_err(|e| e.to_string())?;
            check_product(&g, Field::GF2, budgets).map_err(|e| e.to_string())?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn oracle_equivalence(budgets: &Budgets) -> Outcome {
    let mut cases = 0;
    let mut graphs: Vec<Graph> = (1..=4).flat_map(undirected_graphs).collect();
    graphs.extend((0..64).map(|m| Graph::from_arc_mask(3, m).expect("n = 3")));
    for g in graphs {
        let exact = minrank_exact(&g, Field::GF2, budgets).map_err(|e| e.to_string())?.value;
        let oracle = minrank_matrix_oracle(&g, Field::GF2, budgets).map_err(|e| e.to_string())?;
        if exact != oracle {
            return Err(format!("search {exact} vs oracle {oracle} on\n{}", g.to_text()));
        }
        cases += 1;
    }
    Ok(cases)
}

/// Runs every suite, writing one line per suite. Returns true when all pass.
pub fn run_all(seed: u64, budgets: &Budgets, out: &mut String) -> bool {
    let suites: Vec<Suite> = vec![
        ("gf-rank", Box::new(move || gf_rank(seed))),
        ("gf-subspaces", Box::new(gf_subspaces)),
        ("minrank-oracle", Box::new(move || oracle_equivalence(budgets))),
        ("support-bound", Box::new(move || support_bound(seed))),
        ("low-weight-count", Box::new(move || low_weight_count(seed))),
        ("side-information", Box::new(move || side_information_monotone(seed))),
        ("coupling", Box::new(move || coupling(seed, budgets))),
        ("restricted-q1", Box::new(move || restricted_q1(budgets))),
        ("sandwich-product", Box::new(move || sandwich_and_product(budgets))),
    ];
    let mut ok = true;
    for (name, suite) in suites {
        match suite() {
            Ok(cases) => writeln!(out, "pass {name} ({cases} cases)").unwrap(),
            Err(msg) => {
                ok = false;
                writeln!(out, "FAIL {name}: {msg}").unwrap();
            }
        }
    }
    ok
}
