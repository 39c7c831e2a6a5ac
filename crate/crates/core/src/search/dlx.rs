//! Exact cover by dancing links (Algorithm X with the minimum-remaining-values
//! column heuristic).

use super::Budget;

/// Outcome of an exact-cover run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    /// Indices of the chosen options, ascending.
    pub solution: Option<Vec<usize>>,
    /// The tree was explored to completion (or a solution was found).
    pub complete: bool,
    pub nodes: u64,
}

pub struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    column: Vec<usize>,
    option: Vec<usize>,
    size: Vec<usize>,
    n_items: usize,
}

const ROOT: usize = 0;

impl ExactCover {
    /// `options[o]` lists the items (`0..n_items`) option `o` covers.
    pub fn new(n_items: usize, options: &[Vec<usize>]) -> Self {
        let headers = n_items + 1;
        let mut dl = ExactCover {
            left: (0..headers).map(|i| if i == 0 { n_items } else { i - 1 }).collect(),
            right: (0..headers).map(|i| if i == n_items { 0 } else { i + 1 }).collect(),
            up: (0..headers).collect(),
            down: (0..headers).collect(),
            column: (0..headers).collect(),
            option: vec![usize::MAX; headers],
            size: vec![0; headers],
            n_items,
        };
        for (o, items) in options.iter().enumerate() {
            let mut first: Option<usize> = None;
            for &item in items {
                assert!(item < n_items, "item {item} out of range");
                let col = item + 1;
                let node = dl.up.len();
                dl.column.push(col);
                dl.option.push(o);
                // vertical insert at bottom of the column
                dl.up.push(dl.up[col]);
                dl.down.push(col);
                let above = dl.up[col];
                dl.down[above] = node;
                dl.up[col] = node;
                dl.size[col] += 1;
                // horizontal ring
                match first {
                    None => {
                        dl.left.push(node);
                        dl.right.push(node);
                        first = Some(node);
                    }
                    Some(f) => {
                        let last = dl.left[f];
                        dl.left.push(last);
                        dl.right.push(f);
                        dl.right[last] = node;
                        dl.left[f] = node;
                    }
                }
            }
        }
        dl
    }

    fn cover(&mut self, col: usize) {
        let (l, r) = (self.left[col], self.right[col]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[col];
        while i != col {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, col: usize) {
        let mut i = self.up[col];
        while i != col {
            let mut j = self.left[i];
            while j != i {
                let c = self.column[j];
                self.size[c] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[col], self.right[col]);
        self.right[l] = col;
        self.left[r] = col;
    }

    /// Find one exact cover, or prove none exists within the budget.
    pub fn solve(mut self, budget: &Budget) -> CoverResult {
        let mut partial = Vec::new();
        let mut nodes = 0;
        let found = if self.n_items == 0 {
            Some(true)
        } else {
            self.search(&mut partial, &mut nodes, budget)
        };
        match found {
            Some(true) => {
                let mut solution: Vec<usize> = partial.iter().map(|&n| self.option[n]).collect();
                solution.sort_unstable();
                CoverResult {
                    solution: Some(solution),
                    complete: true,
                    nodes,
                }
            }
            Some(false) => CoverResult {
                solution: None,
                complete: true,
                nodes,
            },
            None => CoverResult {
                solution: None,
                complete: false,
                nodes,
            },
        }
    }

    /// `Some(true)` when solved, `Some(false)` when the subtree is exhausted,
    /// `None` when the budget ran out.
    fn search(&mut self, partial: &mut Vec<usize>, nodes: &mut u64, budget: &Budget) -> Option<bool> {
        if self.right[ROOT] == ROOT {
            return Some(true);
        }
        *nodes += 1;
        if budget.exceeded(*nodes) {
            return None;
        }
        let mut best = self.right[ROOT];
        let mut c = self.right[best];
        while c != ROOT {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.right[c];
        }
        if self.size[best] == 0 {
            return Some(false);
        }
        self.cover(best);
        let mut r = self.down[best];
        while r != best {
            partial.push(r);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.column[j]);
                j = self.right[j];
            }
            let outcome = self.search(partial, nodes, budget);
            if outcome != Some(false) {
                return outcome;
            }
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.column[j]);
                j = self.left[j];
            }
            partial.pop();
            r = self.down[r];
        }
        self.uncover(best);
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_example() {
        // items a..g, the classic six-option instance with unique cover {0, 3, 4}
        let options = vec![
            vec![2, 4, 5],
            vec![0, 3, 6],
            vec![1, 2, 5],
            vec![0, 3],
            vec![1, 6],
            vec![3, 4, 6],
        ];
        let dl = ExactCover::new(7, &options);
        let r = dl.solve(&Budget::unlimited());
        assert_eq!(r.solution, Some(vec![0, 3, 4]));
    }

    #[test]
    fn infeasible_instance_is_exhausted() {
        let options = vec![vec![0, 1], vec![1, 2]];
        let r = ExactCover::new(3, &options).solve(&Budget::unlimited());
        assert!(r.complete);
        assert!(r.solution.is_none());
    }

    #[test]
    fn empty_universe_is_trivially_covered() {
        let r = ExactCover::new(0, &[]).solve(&Budget::unlimited());
        assert_eq!(r.solution, Some(vec![]));
    }
}
