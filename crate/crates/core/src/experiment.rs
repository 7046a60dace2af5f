//! Seeded Monte Carlo over random graphs and CSV output.
//!
//! Every trial draws its graph from its own seed, `mix([base, n, p bits,
//! trial])`, so any cell can be rerun alone and trials can run in any order or
//! in parallel. Records are sorted by `(n, p, trial)` before they leave this
//! module.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::vector_satisfies;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::graph::{sample_gnp, GnpConfig, Graph};
use crate::rng::mix;
use crate::solve::{
    check_product, clique_cover_number, independence_number, ldgm_min_length, local_min_length,
    minrank_exact, Budgets, SolveResult,
};

pub const CSV_HEADER: &str = "n,p,q,seed,trial,alpha,cover,minrank,ldgm,local,elapsed_ms";

/// Which quantities each trial computes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Stats {
    pub alpha: bool,
    pub cover: bool,
    pub minrank: bool,
    /// Row density bound for the low-density search.
    pub ldgm: Option<usize>,
    /// Query bound for the locally decodable search.
    pub local: Option<usize>,
    /// Also compute the complement's minrank and check the product bound.
    pub product: bool,
}

impl Default for Stats {
    fn default() -> Self {
        Stats {
            alpha: true,
            cover: true,
            minrank: true,
            ldgm: None,
            local: None,
            product: false,
        }
    }
}

/// Per-search overrides of [`Budgets::default`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetOverrides {
    pub subspaces: Option<u64>,
    pub nodes: Option<u64>,
    pub query_subsets: Option<u64>,
}

impl BudgetOverrides {
    pub fn apply(&self, mut b: Budgets) -> Budgets {
        if let Some(v) = self.subspaces {
            b.subspaces = v as u128;
        }
        if let Some(v) = self.nodes {
            b.nodes = v as u128;
        }
        if let Some(v) = self.query_subsets {
            b.query_subsets = v as u128;
        }
        b
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Vec<usize>,
    pub p: Vec<f64>,
    #[serde(default = "default_field")]
    pub field: Field,
    #[serde(default)]
    pub directed: bool,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budgets: BudgetOverrides,
    #[serde(default)]
    pub stats: Stats,
    /// Wall-clock times make output differ between runs, so they are opt-in.
    #[serde(default)]
    pub record_timing: bool,
}

fn default_field() -> Field {
    Field::GF2
}

impl ExperimentConfig {
    pub fn new(n: Vec<usize>, p: Vec<f64>, field: Field, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            n,
            p,
            field,
            directed: false,
            trials,
            seed,
            budgets: BudgetOverrides::default(),
            stats: Stats::default(),
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::domain("trials must be at least 1"));
        }
        if self.n.is_empty() || self.p.is_empty() {
            return Err(Error::domain("n and p lists must be non-empty"));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n == 0 || n > 64) {
            return Err(Error::domain(format!("n = {n} outside 1..=64")));
        }
        if let Some(p) = self.p.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::domain(format!("p = {p} outside [0, 1]")));
        }
        if self.stats.ldgm == Some(0) || self.stats.local == Some(0) {
            return Err(Error::domain("density and query bounds must be at least 1"));
        }
        if self.directed && self.stats.product {
            return Err(Error::domain("the product bound needs undirected graphs"));
        }
        Ok(())
    }

    pub fn budgets(&self, base: Budgets) -> Budgets {
        self.budgets.apply(base)
    }

    /// Single-line rendering with a fixed key order, for the CSV manifest.
    pub fn canonical(&self) -> String {
        let join = |v: Vec<String>| v.join(",");
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        let ovr = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        let s = &self.stats;
        format!(
            "n={} p={} q={} directed={} trials={} seed={} alpha={} cover={} minrank={} ldgm={} local={} product={} budgets={}/{}/{} timing={}",
            join(self.n.iter().map(|x| x.to_string()).collect()),
            join(self.p.iter().map(|x| x.to_string()).collect()),
            self.field.order(),
            self.directed,
            self.trials,
            self.seed,
            s.alpha,
            s.cover,
            s.minrank,
            opt(s.ldgm),
            opt(s.local),
            s.product,
            ovr(self.budgets.subspaces),
            ovr(self.budgets.nodes),
            ovr(self.budgets.query_subsets),
            self.record_timing,
        )
    }
}

/// One sampled graph. `None` marks a statistic that was refused by its
/// budget, not requested, or undefined (α and cover on directed graphs).
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub n: usize,
    pub p: f64,
    pub q: u8,
    pub seed: u64,
    pub trial: usize,
    pub alpha: Option<usize>,
    pub cover: Option<usize>,
    pub minrank: Option<usize>,
    pub ldgm: Option<usize>,
    pub local: Option<usize>,
    pub elapsed_ms: Option<u64>,
}

pub fn trial_seed(base: u64, n: usize, p: f64, trial: usize) -> u64 {
    mix(&[base, n as u64, p.to_bits(), trial as u64])
}

/// Budget refusals become `None`; anything else is an error.
fn refusable<W>(r: Result<SolveResult<W>>) -> Result<Option<usize>> {
    match r {
        Ok(r) => Ok(Some(r.value)),
        Err(e) if e.is_budget() => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_one(cfg: &ExperimentConfig, budgets: &Budgets, n: usize, p: f64, trial: usize) -> Result<TrialRecord> {
    let start = Instant::now();
    let seed = trial_seed(cfg.seed, n, p, trial);
    let g = sample_gnp(&GnpConfig::new(n, p, cfg.directed, seed))?;
    let s = &cfg.stats;
    let undirected = !cfg.directed;
    let alpha = if s.alpha && undirected { refusable(independence_number(&g))? } else { None };
    let cover = if s.cover && undirected { refusable(clique_cover_number(&g))? } else { None };
    let minrank = if s.minrank {
        refusable(minrank_exact(&g, cfg.field, budgets))?
    } else {
        None
    };
    let ldgm = match s.ldgm {
        Some(q) => refusable(ldgm_min_length(&g, cfg.field, q, budgets))?,
        None => None,
    };
    let local = match s.local {
        Some(q) => refusable(local_min_length(&g, cfg.field, q, budgets))?,
        None => None,
    };
    if let (Some(a), Some(m), Some(c)) = (alpha, minrank, cover) {
        if !(a <= m && m <= c) {
            return Err(Error::Violation(format!(
                "alpha={a} minrank={m} cover={c} at n={n} p={p} trial={trial}"
            )));
        }
    }
    if s.product {
        match check_product(&g, cfg.field, budgets) {
            Ok(_) => {}
            Err(e) if e.is_budget() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(TrialRecord {
        n,
        p,
        q: cfg.field.order(),
        seed,
        trial,
        alpha,
        cover,
        minrank,
        ldgm,
        local,
        elapsed_ms: cfg.record_timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Runs every `(n, p, trial)` cell on the current rayon pool.
pub fn run_trials(cfg: &ExperimentConfig, budgets: &Budgets) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let budgets = cfg.budgets(*budgets);
    let cells: Vec<(usize, f64, usize)> = cfg
        .n
        .iter()
        .flat_map(|&n| {
            cfg.p
                .iter()
                .flat_map(move |&p| (0..cfg.trials).map(move |t| (n, p, t)))
        })
        .collect();
    let mut records = cells
        .into_par_iter()
        .map(|(n, p, t)| run_one(cfg, &budgets, n, p, t))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then(a.p.total_cmp(&b.p))
            .then(a.trial.cmp(&b.trial))
    });
    Ok(records)
}

fn field<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// Header then one row per record; LF line endings. `p` is written in the
/// shortest decimal that parses back to the same `f64`.
pub fn write_csv<W: Write>(records: &[TrialRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.p,
            r.q,
            r.seed,
            r.trial,
            field(r.alpha),
            field(r.cover),
            field(r.minrank),
            field(r.ldgm),
            field(r.local),
            field(r.elapsed_ms),
        )?;
    }
    Ok(())
}

/// The manifest line `# cfg: ...` followed by [`write_csv`].
pub fn write_experiment<W: Write>(cfg: &ExperimentConfig, records: &[TrialRecord], mut out: W) -> Result<()> {
    writeln!(out, "# cfg: {}", cfg.canonical())?;
    write_csv(records, out)
}

/// Outcome of the directed/undirected coupling check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingReport {
    pub n: usize,
    pub trials: usize,
    /// `(minrank(tilde G), minrank(G), minrank(hat G))` per completed sample.
    pub samples: Vec<(usize, usize, usize)>,
    /// Samples skipped because a minrank search was refused.
    pub refused: usize,
    /// Samples breaking `minrank(hat) ≤ minrank(G) ≤ minrank(tilde)`.
    pub violations: usize,
    /// For ℓ = 1..=n, how many samples have minrank ≤ ℓ for tilde, G, hat.
    pub at_most: Vec<[usize; 3]>,
}

impl CouplingReport {
    /// Empirical frequencies `(P1, P2, P3)` at length `l`.
    pub fn frequencies(&self, l: usize) -> [f64; 3] {
        let total = self.samples.len().max(1) as f64;
        self.at_most[l - 1].map(|c| c as f64 / total)
    }

    /// P1 ≤ P2 ≤ P3 at every ℓ.
    pub fn ordered(&self) -> bool {
        self.at_most.iter().all(|c| c[0] <= c[1] && c[1] <= c[2])
    }
}

/// Samples directed G(n, p) and compares minrank of the graph with that of
/// its bidirected-pair graph and its any-arc graph.
pub fn coupling_check(
    n: usize,
    p: f64,
    seed: u64,
    trials: usize,
    field: Field,
    budgets: &Budgets,
) -> Result<CouplingReport> {
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Option<(usize, usize, usize)>> {
            let g = sample_gnp(&GnpConfig::new(n, p, true, trial_seed(seed, n, p, t)))?;
            let m_tilde = refusable(minrank_exact(&g.tilde()?, field, budgets))?;
            let m = refusable(minrank_exact(&g, field, budgets))?;
            let m_hat = refusable(minrank_exact(&g.hat()?, field, budgets))?;
            Ok(match (m_tilde, m, m_hat) {
                (Some(a), Some(b), Some(c)) => Some((a, b, c)),
                _ => None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let samples: Vec<(usize, usize, usize)> = outcomes.iter().flatten().copied().collect();
    let violations = samples
        .iter()
        .filter(|&&(t, m, h)| !(h <= m && m <= t))
        .count();
    let at_most = (1..=n)
        .map(|l| {
            let count = |f: fn(&(usize, usize, usize)) -> usize| samples.iter().filter(|s| f(s) <= l).count();
            [count(|s| s.0), count(|s| s.1), count(|s| s.2)]
        })
        .collect();
    Ok(CouplingReport {
        n,
        trials,
        refused: trials - samples.len(),
        samples,
        violations,
        at_most,
    })
}

/// Fraction of directed G(n, p) samples in which the vector with ones on
/// coordinates `0..r` satisfies vertex 0, i.e. vertex 0 has arcs to
/// `1, …, r−1`. Expected value `p^(r−1)`.
pub fn satisfaction_probability(n: usize, p: f64, r: usize, trials: usize, seed: u64) -> Result<f64> {
    if r == 0 || r > n {
        return Err(Error::domain(format!("weight {r} outside 1..={n}")));
    }
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    let mut v = vec![0u8; n];
    v[..r].fill(1);
    let mut hits = 0usize;
    for t in 0..trials {
        let g: Graph = sample_gnp(&GnpConfig::new(n, p, true, mix(&[seed, r as u64, t as u64])))?;
        if vector_satisfies(&g, &v, 0) {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}
