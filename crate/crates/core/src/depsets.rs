//! Small linearly dependent subsets of low-weight vector sets, and
//! 1-intersecting families built from them.

use crate::code::binomial;
use crate::error::{Error, Result};
use crate::gf::text::parse_num;
use crate::gf::{weight, Field, Matrix, RowBasis};

/// Default cap on the number of subsets a dependence search may visit.
pub const DEPENDENCE_BUDGET: u128 = 1 << 24;

/// An indexed sequence of vectors of weight at most `weight_bound`.
/// Repeated vectors are distinct members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    field: Field,
    dim: usize,
    weight_bound: usize,
    members: Vec<Vec<u8>>,
}

impl VectorSet {
    pub fn new(field: Field, dim: usize, weight_bound: usize, members: Vec<Vec<u8>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("ambient dimension must be positive"));
        }
        for (idx, v) in members.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::domain(format!(
                    "member {idx} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            field.check_residues(v)?;
            if weight(v) > weight_bound {
                return Err(Error::domain(format!(
                    "member {idx} has weight {} above the bound {weight_bound}",
                    weight(v)
                )));
            }
        }
        Ok(VectorSet {
            field,
            dim,
            weight_bound,
            members,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight_bound(&self) -> usize {
        self.weight_bound
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<u8>] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &[u8] {
        &self.members[i]
    }

    /// Rank of the members at `idx`.
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        let mut basis = RowBasis::new(self.field, self.dim);
        for &i in idx {
            basis.insert(&self.members[i]);
        }
        basis.rank()
    }

    /// Header `q N count`, then one line of `N` residues per member.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field.order(), self.dim, self.len());
        for v in &self.members {
            let line: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format. The weight bound is the largest member weight.
    pub fn parse_text(text: &str) -> Result<VectorSet> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::format(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [q, dim, count] = fields[..] else {
            return Err(Error::format(1, "header must be `q N count`"));
        };
        let field = Field::new(parse_num(q, 1)?).map_err(|e| Error::format(1, e.to_string()))?;
        let dim: usize = parse_num(dim, 1)?;
        let count: usize = parse_num(count, 1)?;
        if dim == 0 {
            return Err(Error::format(1, "ambient dimension must be positive"));
        }
        let mut members = Vec::with_capacity(count);
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if members.len() == count {
                return Err(Error::format(lineno, "more vectors than declared"));
            }
            let v = line
                .split_whitespace()
                .map(|t| parse_num::<u8>(t, lineno))
                .collect::<Result<Vec<u8>>>()?;
            if v.len() != dim {
                return Err(Error::format(
                    lineno,
                    format!("expected {dim} entries, found {}", v.len()),
                ));
            }
            field
                .check_residues(&v)
                .map_err(|e| Error::format(lineno, e.to_string()))?;
            members.push(v);
        }
        if members.len() != count {
            return Err(Error::format(
                text.lines().count().max(1),
                format!("expected {count} vectors, found {}", members.len()),
            ));
        }
        let bound = members.iter().map(|v| weight(v)).max().unwrap_or(0);
        VectorSet::new(field, dim, bound, members)
    }

    /// Members as the rows of a matrix; `None` when the set is empty.
    pub fn to_matrix(&self) -> Option<Matrix> {
        if self.is_empty() {
            return None;
        }
        Matrix::from_rows(self.field, &self.members).ok()
    }
}

/// A set of index subsets of `base`, each meant to be a k-dependence set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceFamily {
    pub base: VectorSet,
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

impl DependenceFamily {
    /// One line per set, indices separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Smallest-first search for a linearly dependent subset of at most `k`
/// members of `a`. The first hit in order of (size, lexicographic indices) is
/// returned; every smaller subset is independent, so it is minimal.
pub fn find_k_dependence_set(a: &VectorSet, k: usize, budget: u128) -> Result<Option<Vec<usize>>> {
    let idx: Vec<usize> = (0..a.len()).collect();
    find_in(a, &idx, k, budget)
}

fn find_in(a: &VectorSet, pool: &[usize], k: usize, budget: u128) -> Result<Option<Vec<usize>>> {
    let k = k.min(pool.len());
    let total = (1..=k).fold(0u128, |acc, s| acc.saturating_add(binomial(pool.len(), s)));
    if total > budget {
        return Err(Error::budget(
            format!("subsets of size ≤ {k} among {} vectors", pool.len()),
            total,
            budget,
        ));
    }
    let mut chosen = Vec::with_capacity(k);
    for size in 1..=k {
        let basis = RowBasis::new(a.field, a.dim);
        if extend(a, pool, size, 0, &basis, &mut chosen) {
            let mut set: Vec<usize> = chosen.iter().map(|&p| pool[p]).collect();
            set.sort_unstable();
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// Depth-first over increasing positions in `pool`. All proper prefixes are
/// independent (smaller sizes were already exhausted), so only the last
/// member can close a dependence.
fn extend(
    a: &VectorSet,
    pool: &[usize],
    size: usize,
    from: usize,
    basis: &RowBasis,
    chosen: &mut Vec<usize>,
) -> bool {
    let depth = chosen.len();
    let last = depth + 1 == size;
    for p in from..=pool.len() - (size - depth) {
        let v = &a.members[pool[p]];
        chosen.push(p);
        if last {
            if basis.contains(v) {
                return true;
            }
        } else {
            let mut next = basis.clone();
            if next.insert(v) && extend(a, pool, size, p + 1, &next, chosen) {
                return true;
            }
        }
        chosen.pop();
    }
    false
}

/// Minimally dependent: rank is one less than the size and dropping any
/// member leaves an independent set.
pub fn is_minimally_dependent(a: &VectorSet, set: &[usize]) -> bool {
    if set.is_empty() || a.rank_of(set) + 1 != set.len() {
        return false;
    }
    (0..set.len()).all(|skip| {
        let rest: Vec<usize> = set
            .iter()
            .enumerate()
            .filter_map(|(t, &x)| (t != skip).then_some(x))
            .collect();
        a.rank_of(&rest) == rest.len()
    })
}

/// Recursive extract-then-partition construction of a 1-intersecting family
/// of k-dependence sets.
///
/// Disjoint dependence sets are pulled out of the working fragment while at
/// least `stop` members remain. The fragment is then split into `k` parts:
/// members of each extracted set go round-robin to consecutive parts, the
/// rest go to the currently smallest part. Parts with at least `stop` members
/// are processed the same way.
pub fn build_family(a: &VectorSet, k: usize, stop: usize, budget: u128) -> Result<DependenceFamily> {
    if k == 0 {
        return Err(Error::domain("dependence sets need k ≥ 1"));
    }
    if stop < k {
        return Err(Error::domain(format!("stop {stop} must be at least k = {k}")));
    }
    let mut sets = Vec::new();
    let all: Vec<usize> = (0..a.len()).collect();
    if all.len() >= stop {
        grow(a, &all, k, stop, budget, &mut sets)?;
    }
    Ok(DependenceFamily {
        base: a.clone(),
        k,
        sets,
    })
}

fn grow(
    a: &VectorSet,
    fragment: &[usize],
    k: usize,
    stop: usize,
    budget: u128,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let mut working = fragment.to_vec();
    let mut extracted = Vec::new();
    while working.len() >= stop {
        let Some(set) = find_in(a, &working, k, budget)? else {
            break;
        };
        working.retain(|x| set.binary_search(x).is_err());
        extracted.push(set);
    }
    if extracted.is_empty() || k < 2 {
        out.extend(extracted);
        return Ok(());
    }

    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut cursor = 0;
    for set in &extracted {
        for &x in set {
            parts[cursor % k].push(x);
            cursor += 1;
        }
    }
    for &x in &working {
        let smallest = (0..k).min_by_key(|&p| parts[p].len()).unwrap_or(0);
        parts[smallest].push(x);
    }
    out.extend(extracted);
    for part in parts.iter_mut() {
        part.sort_unstable();
    }
    for part in &parts {
        if part.len() >= stop {
            grow(a, part, k, stop, budget, out)?;
        }
    }
    Ok(())
}

/// Every set has size at most k, distinct in-range indices and dependent
/// members; any two sets share at most one index.
pub fn verify_family(fam: &DependenceFamily) -> bool {
    let n = fam.base.len();
    for s in &fam.sets {
        if s.is_empty() || s.len() > fam.k || s.iter().any(|&x| x >= n) {
            return false;
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() || fam.base.rank_of(s) == s.len() {
            return false;
        }
    }
    for (x, s) in fam.sets.iter().enumerate() {
        for t in &fam.sets[x + 1..] {
            if s.iter().filter(|e| t.contains(e)).count() > 1 {
                return false;
            }
        }
    }
    true
}

/// The asymptotic family size `N^(q/2 + 2ε) · log N · ε / (k log k)` with all
/// constants set to 1. Informational only.
pub fn family_size_target(dim: usize, q: usize, k: usize, eps: f64) -> f64 {
    let n = dim as f64;
    let k = (k.max(2)) as f64;
    n.powf(q as f64 / 2.0 + 2.0 * eps) * n.ln() * eps / (k * k.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(q: u8, rows: &[&[u8]]) -> VectorSet {
        let members: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
        let bound = members.iter().map(|v| weight(v)).max().unwrap_or(0);
        VectorSet::new(Field::new(q).unwrap(), rows[0].len(), bound, members).unwrap()
    }

    #[test]
    fn find_examples() {
        let a = set(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(find_k_dependence_set(&a, 3, DEPENDENCE_BUDGET).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(find_k_dependence_set(&a, 2, DEPENDENCE_BUDGET).unwrap(), None);

        let dup = set(3, &[&[1, 0, 0], &[0, 2, 1], &[1, 1, 0], &[0, 2, 1]]);
        assert_eq!(find_k_dependence_set(&dup, 2, DEPENDENCE_BUDGET).unwrap(), Some(vec![1, 3]));

        let indep = set(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(find_k_dependence_set(&indep, 2, DEPENDENCE_BUDGET).unwrap(), None);
    }

    #[test]
    fn scalar_multiples_are_dependent_pairs() {
        let a = set(5, &[&[1, 2, 0], &[0, 0, 1], &[3, 1, 0]]);
        assert_eq!(find_k_dependence_set(&a, 2, DEPENDENCE_BUDGET).unwrap(), Some(vec![0, 2]));
    }

    #[test]
    fn zero_vector_is_a_singleton_dependence() {
        let a = set(2, &[&[1, 0], &[0, 0]]);
        let s = find_k_dependence_set(&a, 3, DEPENDENCE_BUDGET).unwrap().unwrap();
        assert_eq!(s, vec![1]);
        assert!(is_minimally_dependent(&a, &s));
    }

    #[test]
    fn find_refuses_over_budget() {
        let a = set(2, &[&[1u8, 0][..]; 30]);
        assert!(find_k_dependence_set(&a, 8, 1000).unwrap_err().is_budget());
    }

    #[test]
    fn family_examples() {
        let tri: [&[u8]; 3] = [&[1, 0], &[0, 1], &[1, 1]];
        let rows: Vec<&[u8]> = (0..9).map(|i| tri[i % 3]).collect();
        let a = set(2, &rows);
        let fam = build_family(&a, 3, 3, DEPENDENCE_BUDGET).unwrap();
        assert!(fam.sets.len() >= 2);
        assert!(verify_family(&fam));

        let small = set(2, &[&[1, 0], &[1, 0]]);
        assert!(build_family(&small, 2, 3, DEPENDENCE_BUDGET).unwrap().sets.is_empty());

        let copies = set(2, &[&[1u8, 1][..]; 8]);
        let fam = build_family(&copies, 2, 2, DEPENDENCE_BUDGET).unwrap();
        assert!(fam.sets.len() >= 2);
        assert!(verify_family(&fam));
        assert_eq!(fam, build_family(&copies, 2, 2, DEPENDENCE_BUDGET).unwrap());
    }

    #[test]
    fn stop_below_k_rejected() {
        let a = set(2, &[&[1, 0]]);
        assert!(build_family(&a, 3, 2, DEPENDENCE_BUDGET).is_err());
    }

    #[test]
    fn verify_rejects_bad_families() {
        let a = set(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 0]]);
        let twice = DependenceFamily {
            base: a.clone(),
            k: 3,
            sets: vec![vec![0, 1, 2], vec![0, 1, 2]],
        };
        assert!(!verify_family(&twice));
        let independent = DependenceFamily {
            base: a.clone(),
            k: 3,
            sets: vec![vec![0, 1]],
        };
        assert!(!verify_family(&independent));
        let good = DependenceFamily {
            base: a,
            k: 3,
            sets: vec![vec![0, 1, 2], vec![0, 3]],
        };
        assert!(verify_family(&good));
    }

    #[test]
    fn text_roundtrip() {
        let a = set(3, &[&[1, 0, 2], &[0, 0, 1]]);
        let text = a.to_text();
        assert_eq!(text, "3 3 2\n1 0 2\n0 0 1\n");
        assert_eq!(VectorSet::parse_text(&text).unwrap(), a);
        let err = VectorSet::parse_text("2 2 1\n1 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }));
    }
}
