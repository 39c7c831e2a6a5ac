//! Maximum set packing by branch and bound.
//!
//! Branching is on items: the uncovered item with the fewest live candidates
//! is either covered by one of them or declared unused. Every packing is
//! reached along exactly one path. The bound is the fractional cover
//! `Σ_e max_{c ∋ e} 1/|c|` over the items that can still be covered.

use super::Budget;

/// Dense bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingResult {
    /// Chosen candidate indices, ascending.
    pub best: Vec<usize>,
    /// The search finished: `best` is a maximum packing.
    pub proven: bool,
    pub nodes: u64,
}

// lcm(1..=12)
const SCALE: u64 = 27_720;

struct Solver<'a> {
    cand_items: Vec<BitSet>,
    item_cands: Vec<BitSet>,
    weights: Vec<u64>,
    n_items: usize,
    budget: &'a Budget,
    nodes: u64,
    best: Vec<usize>,
    aborted: bool,
}

/// Largest family of pairwise item-disjoint candidates.
pub fn max_packing(n_items: usize, candidates: &[Vec<usize>], budget: &Budget) -> PackingResult {
    let n_cands = candidates.len();
    let mut cand_items = Vec::with_capacity(n_cands);
    let mut item_cands = vec![BitSet::new(n_cands); n_items];
    let mut weights = Vec::with_capacity(n_cands);
    for (c, items) in candidates.iter().enumerate() {
        let mut set = BitSet::new(n_items);
        for &e in items {
            set.insert(e);
            item_cands[e].insert(c);
        }
        let size = set.iter().count().max(1) as u64;
        weights.push(SCALE.div_ceil(size));
        cand_items.push(set);
    }
    let mut solver = Solver {
        cand_items,
        item_cands,
        weights,
        n_items,
        budget,
        nodes: 0,
        best: Vec::new(),
        aborted: false,
    };
    let used = BitSet::new(n_items);
    let live = BitSet::full(n_cands);
    let mut chosen = Vec::new();
    solver.search(&used, &live, &mut chosen);
    let mut best = solver.best;
    best.sort_unstable();
    PackingResult {
        best,
        proven: !solver.aborted,
        nodes: solver.nodes,
    }
}

impl Solver<'_> {
    fn search(&mut self, used: &BitSet, live: &BitSet, chosen: &mut Vec<usize>) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            self.aborted = true;
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }

        // bound and branching item in one pass
        let mut frac = 0u64;
        let mut pick: Option<(usize, usize)> = None;
        for e in 0..self.n_items {
            if used.contains(e) {
                continue;
            }
            let mut count = 0;
            let mut w = 0;
            for c in self.item_cands[e].iter().filter(|&c| live.contains(c)) {
                count += 1;
                w = w.max(self.weights[c]);
            }
            if count == 0 {
                continue;
            }
            frac += w;
            if pick.is_none_or(|(_, k)| count < k) {
                pick = Some((e, count));
            }
        }
        let Some((item, _)) = pick else {
            return;
        };
        if chosen.len() as u64 + frac / SCALE <= self.best.len() as u64 {
            return;
        }

        let options: Vec<usize> = self.item_cands[item]
            .iter()
            .filter(|&c| live.contains(c))
            .collect();
        for c in options {
            let mut next_used = used.clone();
            next_used.union_with(&self.cand_items[c]);
            let mut next_live = live.clone();
            for e in self.cand_items[c].iter() {
                next_live.difference_with(&self.item_cands[e]);
            }
            chosen.push(c);
            self.search(&next_used, &next_live, chosen);
            chosen.pop();
            if self.aborted {
                return;
            }
        }
        let mut next_used = used.clone();
        next_used.insert(item);
        let mut next_live = live.clone();
        next_live.difference_with(&self.item_cands[item]);
        self.search(&next_used, &next_live, chosen);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n_items: usize, cands: &[Vec<usize>]) -> usize {
        let n = cands.len();
        (0u32..1 << n)
            .filter(|mask| {
                let mut seen = vec![false; n_items];
                (0..n).filter(|i| mask >> i & 1 == 1).all(|i| {
                    cands[i].iter().all(|&e| !std::mem::replace(&mut seen[e], true))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n_items = rng.gen_range(1..12);
            let n_cands = rng.gen_range(0..12);
            let cands: Vec<Vec<usize>> = (0..n_cands)
                .map(|_| {
                    let k = rng.gen_range(1..=3.min(n_items));
                    let mut v: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n_items)).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect();
            let r = max_packing(n_items, &cands, &Budget::unlimited());
            assert!(r.proven);
            assert_eq!(r.best.len(), brute(n_items, &cands), "{cands:?}");
        }
    }

    #[test]
    fn budget_stops_search() {
        let cands: Vec<Vec<usize>> = (0..40).map(|i| vec![i % 20, (i * 7 + 3) % 20]).collect();
        let r = max_packing(20, &cands, &Budget::nodes(5));
        assert!(!r.proven);
    }

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::new(130);
        a.insert(3);
        a.insert(129);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 129]);
        let mut b = BitSet::new(130);
        b.insert(129);
        assert_eq!(a.intersection_count(&b), 1);
        a.difference_with(&b);
        assert!(!a.contains(129));
        assert!(!a.is_empty());
    }
}
