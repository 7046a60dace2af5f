//! `minrank`: command-line front end for exact linear index coding.

mod check;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minrank_core::code::{
    derive_decoding, first_unsatisfied, is_valid_with_queries, row_density, satisfied_vertices,
    simulate_broadcast,
};
use minrank_core::depsets::{
    build_family, family_size_target, find_k_dependence_set, VectorSet, DEPENDENCE_BUDGET,
};
use minrank_core::experiment::{run_trials, write_experiment, ExperimentConfig};
use minrank_core::graph::{sample_gnp, GnpConfig};
use minrank_core::rng::{below, mix, seeded};
use minrank_core::solve::{check_product, check_sandwich, ldgm_min_length, local_min_length, minrank_exact};
use minrank_core::{Budgets, DecodingScheme, Error, Field, Graph, IndexCode, Matrix};

#[derive(Parser)]
#[command(name = "minrank", version, about = "Exact linear index coding over small prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Field order (2, 3, 5, 7, 11 or 13).
    #[arg(long, default_value_t = 2)]
    field: u8,
}

impl FieldArg {
    fn get(&self) -> Result<Field, Failure> {
        Ok(Field::new(self.field)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) or its directed analogue.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        directed: bool,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact minrank with a witness code.
    Minrank {
        #[command(flatten)]
        field: FieldArg,
        graph: PathBuf,
        /// Where to write the witness; defaults to `<graph>.witness`.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Also print the flat result record.
        #[arg(long)]
        record: bool,
    },
    /// α, minrank, clique cover and the complement product.
    Bounds {
        #[command(flatten)]
        field: FieldArg,
        graph: PathBuf,
    },
    /// Check that a generator matrix is an index code for a graph.
    Verify {
        graph: PathBuf,
        code: PathBuf,
        /// Also require decoding from at most this many broadcast symbols.
        #[arg(long)]
        queries: Option<usize>,
    },
    /// Derive every receiver's decoder.
    Decode {
        graph: PathBuf,
        code: PathBuf,
        #[arg(long)]
        queries: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Broadcast words and run every decoder on them.
    Simulate {
        graph: PathBuf,
        code: PathBuf,
        scheme: PathBuf,
        /// Words to send, one per line; defaults to every word when
        /// q^n ≤ 4096 and to 1000 seeded random words otherwise.
        #[arg(long)]
        words: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shortest low-density or locally decodable code.
    Search {
        #[command(flatten)]
        field: FieldArg,
        graph: PathBuf,
        #[arg(long, conflicts_with = "queries", required_unless_present = "queries")]
        density: Option<usize>,
        #[arg(long)]
        queries: Option<usize>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        record: bool,
    },
    /// Dependence sets and 1-intersecting families of a vector set.
    Depsets {
        vectors: PathBuf,
        #[arg(long)]
        k: usize,
        /// Minimum fragment size for extraction; defaults to k.
        #[arg(long)]
        stop: Option<usize>,
        /// Print a single minimal dependence set instead of a family.
        #[arg(long)]
        single: bool,
        /// ε used for the informational target family size.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Run a TOML-configured experiment and write CSV.
    Experiment {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in invariant suite at small sizes.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// An exit status plus a message for standard error.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    fn falsified(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => 3,
            Error::Unsatisfied { .. } | Error::Violation(_) => 1,
            Error::Domain(_) | Error::Format { .. } | Error::Io(_) => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: minrank_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    in_file(path, Graph::parse_text(&read(path)?))
}

fn load_code(path: &Path) -> Result<IndexCode, Failure> {
    let m = in_file(path, Matrix::parse_text(&read(path)?))?;
    Ok(IndexCode::new(m)?)
}

fn default_witness(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_owned();
    s.push(".witness");
    PathBuf::from(s)
}

fn budgets() -> Result<Budgets, Failure> {
    match std::env::var("MINRANK_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Budgets::uniform)
            .map_err(|_| Failure::usage(format!("MINRANK_BUDGET must be an integer, got {v:?}"))),
        Err(_) => Ok(Budgets::default()),
    }
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("MINRANK_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage(format!("MINRANK_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    Ok(())
}

fn parse_words(text: &str, field: Field, n: usize) -> Result<Vec<Vec<u8>>, Failure> {
    let mut words = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let w: Vec<u8> = line
            .split_whitespace()
            .map(|t| t.parse::<u8>())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::usage(format!("line {}: not a word", idx + 1)))?;
        if w.len() != n || w.iter().any(|&x| x >= field.order()) {
            return Err(Failure::usage(format!(
                "line {}: expected {n} residues below {}",
                idx + 1,
                field.order()
            )));
        }
        words.push(w);
    }
    Ok(words)
}

fn all_words(field: Field, n: usize) -> Vec<Vec<u8>> {
    let q = field.order() as usize;
    (0..q.pow(n as u32))
        .map(|mut w| {
            let mut word = vec![0u8; n];
            for x in word.iter_mut().rev() {
                *x = (w % q) as u8;
                w /= q;
            }
            word
        })
        .collect()
}

fn run(cmd: Command, out: &mut String) -> Result<(), Failure> {
    let budgets = budgets()?;
    match cmd {
        Command::Gen {
            n,
            p,
            seed,
            directed,
            output,
        } => {
            let g = sample_gnp(&GnpConfig::new(n, p, directed, seed))?;
            match output {
                Some(path) => write(&path, &g.to_text())?,
                None => out.push_str(&g.to_text()),
            }
        }
        Command::Minrank {
            field,
            graph,
            witness,
            record,
        } => {
            let f = field.get()?;
            let g = load_graph(&graph)?;
            let r = minrank_exact(&g, f, &budgets)?;
            let path = witness.unwrap_or_else(|| default_witness(&graph));
            write(&path, &r.witness.generator().to_text())?;
            writeln!(out, "{}", r.value).unwrap();
            writeln!(out, "witness: {}", path.display()).unwrap();
            if record {
                writeln!(out, "{}", r.record(&g, None, f)).unwrap();
            }
        }
        Command::Bounds { field, graph } => {
            let f = field.get()?;
            let g = load_graph(&graph)?;
            let s = check_sandwich(&g, f, &budgets)?;
            let p = check_product(&g, f, &budgets)?;
            writeln!(
                out,
                "alpha={} minrank={} cover={} product={}",
                s.alpha, s.minrank, s.cover, p.product
            )
            .unwrap();
        }
        Command::Verify { graph, code, queries } => {
            let g = load_graph(&graph)?;
            let c = load_code(&code)?;
            let sat = satisfied_vertices(&g, &c)?;
            for (i, s) in sat.iter().enumerate() {
                let word = if *s { "satisfied" } else { "unsatisfied" };
                writeln!(out, "vertex {i}: {word}").unwrap();
            }
            let valid = sat.iter().all(|&s| s);
            let local = match queries {
                Some(q) if valid => Some(is_valid_with_queries(&g, &c, q, budgets.query_subsets)?),
                _ => None,
            };
            write!(out, "valid={valid} length={} density={}", c.len(), row_density(&c)).unwrap();
            if let (Some(q), Some(l)) = (queries, local) {
                write!(out, " queries<={q}={l}").unwrap();
            }
            out.push('\n');
            if let Some(v) = first_unsatisfied(&g, &c)? {
                return Err(Failure::falsified(format!("vertex {v} is not satisfied")));
            }
            if local == Some(false) {
                return Err(Failure::falsified(format!(
                    "some receiver needs more than {} queries",
                    queries.unwrap_or(0)
                )));
            }
        }
        Command::Decode {
            graph,
            code,
            queries,
            output,
        } => {
            let g = load_graph(&graph)?;
            let c = load_code(&code)?;
            let scheme = derive_decoding(&g, &c, queries, budgets.query_subsets)?;
            match output {
                Some(path) => write(&path, &scheme.to_text())?,
                None => out.push_str(&scheme.to_text()),
            }
        }
        Command::Simulate {
            graph,
            code,
            scheme,
            words,
            seed,
        } => {
            let g = load_graph(&graph)?;
            let c = load_code(&code)?;
            let f = c.field();
            let s = in_file(&scheme, DecodingScheme::parse_text(&read(&scheme)?, f))?;
            s.check(&g, &c)?;
            let n = g.n();
            let exhaustive = (f.order() as u128).checked_pow(n as u32).is_some_and(|t| t <= 4096);
            let words = match words {
                Some(path) => parse_words(&read(&path)?, f, n)?,
                None if exhaustive => all_words(f, n),
                None => {
                    let mut rng = seeded(mix(&[seed, n as u64]));
                    (0..1000)
                        .map(|_| (0..n).map(|_| below(&mut rng, f.order() as u64) as u8).collect())
                        .collect()
                }
            };
            let mut recovered = 0;
            let mut first_bad = None;
            for x in &words {
                if simulate_broadcast(&g, &c, &s, x)? == *x {
                    recovered += 1;
                } else if first_bad.is_none() {
                    first_bad = Some(x.clone());
                }
            }
            writeln!(out, "words={} recovered={recovered}", words.len()).unwrap();
            if let Some(x) = first_bad {
                return Err(Failure::falsified(format!("word {x:?} was not recovered")));
            }
        }
        Command::Search {
            field,
            graph,
            density,
            queries,
            witness,
            record,
        } => {
            let f = field.get()?;
            let g = load_graph(&graph)?;
            let (r, q) = match (density, queries) {
                (Some(q), _) => (ldgm_min_length(&g, f, q, &budgets)?, q),
                (None, Some(q)) => (local_min_length(&g, f, q, &budgets)?, q),
                (None, None) => return Err(Failure::usage("one of --density or --queries is required")),
            };
            let path = witness.unwrap_or_else(|| default_witness(&graph));
            write(&path, &r.witness.generator().to_text())?;
            writeln!(out, "{}", r.value).unwrap();
            writeln!(out, "witness: {}", path.display()).unwrap();
            if record {
                writeln!(out, "{}", r.record(&g, Some(q), f)).unwrap();
            }
        }
        Command::Depsets {
            vectors,
            k,
            stop,
            single,
            epsilon,
        } => {
            let a = in_file(&vectors, VectorSet::parse_text(&read(&vectors)?))?;
            if single {
                match find_k_dependence_set(&a, k, DEPENDENCE_BUDGET)? {
                    Some(s) => {
                        let line: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "{}", line.join(" ")).unwrap();
                    }
                    None => return Err(Failure::falsified(format!("no dependent set of size ≤ {k}"))),
                }
            } else {
                let fam = build_family(&a, k, stop.unwrap_or(k), DEPENDENCE_BUDGET)?;
                out.push_str(&fam.to_text());
                eprintln!(
                    "sets={} target≈{:.3} (N={} q={} k={k} ε={epsilon}; informational)",
                    fam.sets.len(),
                    family_size_target(a.dim(), a.weight_bound(), k, epsilon),
                    a.dim(),
                    a.weight_bound(),
                );
            }
        }
        Command::Experiment { config, output } => {
            let cfg: ExperimentConfig = toml::from_str(&read(&config)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", config.display())))?;
            let records = run_trials(&cfg, &budgets)?;
            let mut buf = Vec::new();
            write_experiment(&cfg, &records, &mut buf)?;
            let text = String::from_utf8(buf).expect("CSV is ASCII");
            match output {
                Some(path) => write(&path, &text)?,
                None => out.push_str(&text),
            }
        }
        Command::Check { seed } => {
            let ok = check::run_all(seed, &budgets, out);
            if !ok {
                return Err(Failure::falsified("invariant suite failed"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = init_threads() {
        eprintln!("error: {}", f.msg);
        return ExitCode::from(f.code);
    }
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
