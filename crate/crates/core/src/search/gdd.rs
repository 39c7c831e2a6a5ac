//! Base blocks of m-cyclic 3-GDDs of type `(3m)^u`.
//!
//! Columns are the cross-group cells `(a, b, d)` with rows `a < b` and
//! difference `d = slot_b − slot_a`; every base block is normalized so that
//! its first row sits at slot 0 and covers exactly three columns.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dlx::ExactCover;
use super::{Budget, SearchConfig, SearchOutcome, Strategy};
use crate::bounds::gdd_exists;
use crate::code::{residue, Cell, Codeword};
use crate::construct::GddBaseBlocks;
use crate::error::{Error, Result};

const GROUP_ROWS: u32 = 3;

/// Node cap for the exact-cover attempt when the strategy leaves the choice open.
const AUTO_EXACT_NODES: u64 = 200_000;

struct Layout {
    n: u32,
    m: u32,
    group_of: Vec<u32>,
    /// Column index of row pair `(a, b)`, `a < b`, or `usize::MAX` within a group.
    pair_base: Vec<usize>,
    n_columns: usize,
}

impl Layout {
    fn new(u: u32, m: u32) -> Self {
        let n = GROUP_ROWS * u;
        let group_of: Vec<u32> = (0..n).map(|r| r / GROUP_ROWS).collect();
        let mut pair_base = vec![usize::MAX; (n * n) as usize];
        let mut next = 0;
        for a in 0..n {
            for b in a + 1..n {
                if group_of[a as usize] != group_of[b as usize] {
                    pair_base[(a * n + b) as usize] = next;
                    next += m as usize;
                }
            }
        }
        Layout {
            n,
            m,
            group_of,
            pair_base,
            n_columns: next,
        }
    }

    /// Column of the pair of cells `(p, sp)`, `(q, sq)` in different groups.
    fn column(&self, p: u32, sp: u32, q: u32, sq: u32) -> usize {
        let (a, sa, b, sb) = if p < q { (p, sp, q, sq) } else { (q, sq, p, sp) };
        let d = residue(i64::from(sb) - i64::from(sa), self.m);
        self.pair_base[(a * self.n + b) as usize] + d as usize
    }

    fn decode(&self, col: usize) -> (u32, u32, u32) {
        for a in 0..self.n {
            for b in a + 1..self.n {
                let base = self.pair_base[(a * self.n + b) as usize];
                if base != usize::MAX && (base..base + self.m as usize).contains(&col) {
                    return (a, b, (col - base) as u32);
                }
            }
        }
        unreachable!("column {col} out of range")
    }

    fn block_columns(&self, cells: &[(u32, u32); 3]) -> [usize; 3] {
        let [(r0, s0), (r1, s1), (r2, s2)] = *cells;
        [
            self.column(r0, s0, r1, s1),
            self.column(r0, s0, r2, s2),
            self.column(r1, s1, r2, s2),
        ]
    }

    fn distinct_groups(&self, a: u32, b: u32, c: u32) -> bool {
        let (ga, gb, gc) = (self.group_of[a as usize], self.group_of[b as usize], self.group_of[c as usize]);
        ga != gb && ga != gc && gb != gc
    }
}

fn to_gdd(layout: &Layout, u: u32, blocks: Vec<[(u32, u32); 3]>) -> Result<GddBaseBlocks> {
    let base_blocks = blocks
        .into_iter()
        .map(|b| Codeword::new(b.iter().map(|&(r, s)| Cell::new(r, s))))
        .collect::<Result<Vec<_>>>()?;
    let mut base_blocks = base_blocks;
    base_blocks.sort();
    let gdd = GddBaseBlocks::consecutive(layout.m, vec![(GROUP_ROWS, u)], base_blocks);
    gdd.validate()?;
    Ok(gdd)
}

/// Three `(row, slot)` cells.
type Block = [(u32, u32); 3];

fn exact_cover(layout: &Layout, budget: &Budget) -> (Option<Vec<Block>>, bool, u64) {
    let (n, m) = (layout.n, layout.m);
    let mut blocks = Vec::new();
    let mut options = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !layout.distinct_groups(a, b, c) {
                    continue;
                }
                for y in 0..m {
                    for z in 0..m {
                        let cells = [(a, 0), (b, y), (c, z)];
                        options.push(layout.block_columns(&cells).to_vec());
                        blocks.push(cells);
                    }
                }
            }
        }
    }
    let result = ExactCover::new(layout.n_columns, &options).solve(budget);
    let found = result
        .solution
        .map(|sol| sol.into_iter().map(|o| blocks[o]).collect());
    (found, result.complete, result.nodes)
}

/// Randomized local search in the style of Stinson's hill climbing for
/// triple systems: extend an uncovered column to a block, evicting the block
/// that already covers its third column.
fn hill_climb(layout: &Layout, budget: &Budget, seed: u64) -> (Option<Vec<Block>>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = layout.n_columns / 3;
    let steps_per_restart = 200 * layout.n_columns as u64;
    let mut nodes = 0u64;
    loop {
        let mut owner: Vec<Option<usize>> = vec![None; layout.n_columns];
        let mut blocks: Vec<Option<Block>> = Vec::new();
        let mut uncovered: Vec<usize> = (0..layout.n_columns).collect();
        let mut live = 0usize;
        let mut steps = 0u64;
        while live < target && steps < steps_per_restart {
            nodes += 1;
            steps += 1;
            if budget.exceeded(nodes) {
                return (None, nodes);
            }
            let col = uncovered[rng.gen_range(0..uncovered.len())];
            let (a, b, d) = layout.decode(col);
            // anchor x at slot 0, partner p at its relative slot
            let (x, p, sp) = if rng.gen_bool(0.5) { (a, b, d) } else { (b, a, (layout.m - d) % layout.m) };
            let mut thirds = Vec::new();
            for c in 0..layout.n {
                if !layout.distinct_groups(x, p, c) {
                    continue;
                }
                for z in 0..layout.m {
                    if owner[layout.column(x, 0, c, z)].is_none() {
                        thirds.push((c, z));
                    }
                }
            }
            let Some(&(c, z)) = thirds.choose(&mut rng) else {
                continue;
            };
            let cells = [(x, 0), (p, sp), (c, z)];
            let cols = layout.block_columns(&cells);
            if let Some(old) = owner[cols[2]] {
                let old_cells = blocks[old].take().expect("owner points at a live block");
                for oc in layout.block_columns(&old_cells) {
                    owner[oc] = None;
                    uncovered.push(oc);
                }
                live -= 1;
            }
            let id = blocks.len();
            blocks.push(Some(cells));
            for cc in cols {
                owner[cc] = Some(id);
            }
            uncovered.retain(|cc| owner[*cc].is_none());
            live += 1;
        }
        if live == target {
            return (Some(blocks.into_iter().flatten().collect()), nodes);
        }
    }
}

/// Base blocks of an m-cyclic 3-GDD of type `(3m)^u` on rows `I_{3u}` with
/// groups `{3t, 3t+1, 3t+2}`.
///
/// `ExactCover` decides existence within the budget; `HillClimbRestart` only
/// produces witnesses. Other strategies try a short exact-cover run first and
/// fall back to hill climbing.
pub fn gdd_search(u: u32, m: u32, config: &SearchConfig) -> Result<SearchOutcome<GddBaseBlocks>> {
    if !gdd_exists(u64::from(GROUP_ROWS), u64::from(u), u64::from(m))? {
        return Err(Error::Unsupported(format!(
            "no m-cyclic 3-GDD of type (3m)^{u} exists for m = {m}"
        )));
    }
    let start = Instant::now();
    let layout = Layout::new(u, m);
    let budget = Budget::from_config(config);

    let (found, proven, nodes) = match config.strategy {
        Strategy::ExactCover => exact_cover(&layout, &budget),
        Strategy::HillClimbRestart => {
            let (found, nodes) = hill_climb(&layout, &budget, config.seed);
            (found, false, nodes)
        }
        Strategy::Exhaustive | Strategy::BranchAndBound => {
            let short = Budget::nodes(AUTO_EXACT_NODES);
            let (found, complete, nodes) = exact_cover(&layout, &short);
            if found.is_some() || complete {
                (found, complete, nodes)
            } else {
                let (found, more) = hill_climb(&layout, &budget, config.seed);
                (found, false, nodes + more)
            }
        }
    };
    let best = found.map(|blocks| to_gdd(&layout, u, blocks)).transpose()?;
    Ok(SearchOutcome {
        best_size: best.as_ref().map_or(0, |g| g.base_blocks.len()),
        proven_optimal: proven,
        best,
        nodes,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_count_matches_formula() {
        let l = Layout::new(4, 8);
        assert_eq!(l.n_columns, 432);
        let l = Layout::new(4, 4);
        assert_eq!(l.n_columns, 216);
    }

    #[test]
    fn column_is_orientation_free() {
        let l = Layout::new(3, 5);
        assert_eq!(l.column(0, 1, 4, 3), l.column(4, 3, 0, 1));
        assert_eq!(l.decode(l.column(0, 1, 4, 3)), (0, 4, 2));
    }

    #[test]
    fn hill_climb_small_design() {
        let cfg = SearchConfig::default().with_strategy(Strategy::HillClimbRestart).with_seed(3);
        let out = gdd_search(3, 3, &cfg).unwrap();
        let gdd = out.best.unwrap();
        gdd.validate().unwrap();
        assert_eq!(gdd.base_blocks.len() as u64, gdd.expected_block_count());
    }

    #[test]
    fn nonexistent_type_is_rejected() {
        // type (3·2)^3: u = 3 with m even needs v even
        assert!(gdd_search(3, 2, &SearchConfig::default()).is_err());
    }
}
