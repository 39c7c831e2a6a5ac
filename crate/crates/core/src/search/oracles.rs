//! Optimal code sizes by exhaustive search.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use super::dlx::ExactCover;
use super::packing::max_packing;
use super::{Budget, SearchConfig, SearchOutcome};
use crate::code::{normalize, profile_unchecked, residue, Cell, Code, CodeParams, Codeword};
use crate::error::{Error, Result};
use crate::verify::verify_code;

/// Item key of a difference: `(i, j, d)` with `i ≤ j`.
type DiffKey = (u32, u32, u32);

fn diff_items(cw: &Codeword, m: u32) -> (BTreeSet<DiffKey>, u32) {
    let profile = profile_unchecked(cw, m);
    let mut items = BTreeSet::new();
    let mut max_pure = 0;
    for (&(i, j), ms) in &profile.entries {
        if i > j {
            continue;
        }
        for (&d, &c) in ms {
            items.insert((i, j, d));
            if i == j {
                max_pure = max_pure.max(c);
            }
        }
    }
    (items, max_pure)
}

fn checked(code: Code, branch: &str) -> Result<Code> {
    let report = verify_code(&code);
    if report.ok() {
        Ok(code)
    } else {
        Err(Error::VerificationFailed {
            branch: branch.into(),
            detail: "search produced a colliding witness".into(),
            witnesses: report.witnesses,
        })
    }
}

/// Largest `(n×m, 3, λ_a, 1)`-OOC by branch and bound over normalized codewords.
pub fn optimal_search(n: u32, m: u32, lambda_a: u32, config: &SearchConfig) -> Result<SearchOutcome<Code>> {
    let start = Instant::now();
    let params = CodeParams::weight3(n, m, lambda_a)?;
    let cells: Vec<Cell> = (0..n)
        .flat_map(|r| (0..m).map(move |s| Cell::new(r, s)))
        .collect();
    if cells.len() < 3 {
        return Ok(SearchOutcome {
            best: Some(Code::empty(params)),
            best_size: 0,
            proven_optimal: true,
            nodes: 0,
            elapsed: start.elapsed(),
        });
    }

    let mut orbits = BTreeSet::new();
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            for c in b + 1..cells.len() {
                let cw = Codeword::new([cells[a], cells[b], cells[c]])?;
                orbits.insert(normalize(&cw, m));
            }
        }
    }

    let mut index: HashMap<DiffKey, usize> = HashMap::new();
    let mut candidates = Vec::new();
    let mut codewords = Vec::new();
    for cw in orbits {
        let (items, max_pure) = diff_items(&cw, m);
        if max_pure > lambda_a {
            continue;
        }
        let ids = items
            .into_iter()
            .map(|key| {
                let next = index.len();
                *index.entry(key).or_insert(next)
            })
            .collect();
        candidates.push(ids);
        codewords.push(cw);
    }

    let budget = Budget::from_config(config);
    let result = max_packing(index.len(), &candidates, &budget);
    let chosen = result.best.iter().map(|&c| codewords[c].clone()).collect();
    let code = checked(Code::new(params, chosen)?, "optimal_search")?;
    Ok(SearchOutcome {
        best_size: code.len(),
        best: Some(code),
        proven_optimal: result.proven,
        nodes: result.nodes,
        elapsed: start.elapsed(),
    })
}

/// Nonzero differences of `{0, a, 2a}` as indices `d − 1`, and whether one of
/// them occurs three times.
fn equi_support(a: u32, m: u32) -> (Vec<usize>, bool) {
    let a = i64::from(a);
    let diffs = [a, 2 * a, -a, -2 * a];
    let set: BTreeSet<u32> = diffs.iter().map(|&d| residue(d, m)).filter(|&d| d != 0).collect();
    let triple = residue(3 * a, m) == 0;
    (set.into_iter().map(|d| d as usize - 1).collect(), triple)
}

/// Equi-difference generators `a` with `1 ≤ a < m/2`; `a` and `m − a`
/// generate the same support, so the upper half is skipped.
fn equi_generators(m: u32) -> impl Iterator<Item = u32> {
    (1..m).filter(move |&a| 2 * a < m)
}

fn equi_code(m: u32, lambda_a: u32, generators: &[u32]) -> Result<Code> {
    let params = CodeParams::weight3(1, m, lambda_a)?;
    let codewords = generators
        .iter()
        .map(|&a| Codeword::equi(0, i64::from(a), m))
        .collect::<Result<Vec<_>>>()?;
    Code::new(params, codewords)
}

/// Largest equi-difference 1-D `(m, 3, λ_a, 1)` code: `Ψ^e(m)` for `λ_a = 2`,
/// `M^e(m, 3)` for `λ_a = 3`.
pub fn equi_search(m: u32, lambda_a: u32, config: &SearchConfig) -> Result<SearchOutcome<Code>> {
    if !(2..=3).contains(&lambda_a) {
        return Err(Error::InvalidParameter(format!(
            "equi_search supports lambda_a in {{2, 3}}, got {lambda_a}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let start = Instant::now();
    let mut gens = Vec::new();
    let mut candidates = Vec::new();
    for a in equi_generators(m) {
        let (items, triple) = equi_support(a, m);
        if triple && lambda_a < 3 {
            continue;
        }
        gens.push(a);
        candidates.push(items);
    }
    let budget = Budget::from_config(config);
    let result = max_packing(m.saturating_sub(1) as usize, &candidates, &budget);
    let chosen: Vec<u32> = result.best.iter().map(|&c| gens[c]).collect();
    let code = checked(equi_code(m, lambda_a, &chosen)?, "equi_search")?;
    Ok(SearchOutcome {
        best_size: code.len(),
        best: Some(code),
        proven_optimal: result.proven,
        nodes: result.nodes,
        elapsed: start.elapsed(),
    })
}

/// Tight equi-difference CAC on `Z_m`: supports of `{0, a, 2a}` partitioning
/// `Z_m \ {0}`. `best` is `None` when none exists (decided iff
/// `proven_optimal`).
pub fn tight_search(m: u32, config: &SearchConfig) -> Result<SearchOutcome<Code>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("tight_search needs m ≥ 2, got {m}")));
    }
    let start = Instant::now();
    let gens: Vec<u32> = equi_generators(m).collect();
    let options: Vec<Vec<usize>> = gens.iter().map(|&a| equi_support(a, m).0).collect();
    let budget = Budget::from_config(config);
    let result = ExactCover::new(m as usize - 1, &options).solve(&budget);
    let best = match &result.solution {
        Some(sol) => {
            let chosen: Vec<u32> = sol.iter().map(|&o| gens[o]).collect();
            Some(checked(equi_code(m, 3, &chosen)?, "tight_search")?)
        }
        None => None,
    };
    Ok(SearchOutcome {
        best_size: best.as_ref().map_or(0, Code::len),
        best,
        proven_optimal: result.complete,
        nodes: result.nodes,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn cfg() -> SearchConfig {
        SearchConfig::default().with_time_budget(Duration::from_secs(30))
    }

    #[test]
    fn two_by_four() {
        let out = optimal_search(2, 4, 2, &cfg()).unwrap();
        assert!(out.proven_optimal);
        assert_eq!(out.best_size, 2);
    }

    #[test]
    fn one_by_eight() {
        let out = optimal_search(1, 8, 2, &cfg()).unwrap();
        assert!(out.proven_optimal);
        assert_eq!(out.best_size, 1);
    }

    #[test]
    fn equi_small_values() {
        assert_eq!(equi_search(8, 2, &cfg()).unwrap().best_size, 1);
        assert_eq!(equi_search(4, 2, &cfg()).unwrap().best_size, 1);
        assert_eq!(equi_search(13, 3, &cfg()).unwrap().best_size, 3);
    }

    #[test]
    fn third_generator_only_with_lambda_three() {
        // m = 9: a = 3 yields {0,3,6}
        let two = equi_search(9, 2, &cfg()).unwrap().best.unwrap();
        assert!(two.codewords().iter().all(|cw| cw.slots() != vec![0, 3, 6]));
    }

    #[test]
    fn tight_examples() {
        let out = tight_search(13, &cfg()).unwrap();
        assert_eq!(out.best_size, 3);
        let out = tight_search(4, &cfg()).unwrap();
        assert_eq!(out.best_size, 1);
        let out = tight_search(7, &cfg()).unwrap();
        assert!(out.proven_optimal);
        assert!(out.best.is_none());
    }
}
