//! m-cyclic 3-GDD base blocks and the row-expansion construction.

use std::collections::HashMap;

use super::{finish, ooc_3xm, ConstructionResult};
use crate::bounds::psi_e_exact;
use crate::code::{residue, Code, CodeParams, Codeword};
use crate::error::{Error, Result};
use crate::search::{gdd_search, SearchConfig, Strategy};

/// Base blocks of an m-cyclic 3-GDD whose groups are sets of rows of `I_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GddBaseBlocks {
    pub m: u32,
    /// `(v_i, u_i)`: `u_i` groups of `v_i` rows each, in the order of `groups`.
    pub group_type: Vec<(u32, u32)>,
    pub groups: Vec<Vec<u32>>,
    pub base_blocks: Vec<Codeword>,
}

impl GddBaseBlocks {
    /// Groups of consecutive rows laid out according to `group_type`.
    pub fn consecutive(m: u32, group_type: Vec<(u32, u32)>, base_blocks: Vec<Codeword>) -> Self {
        let mut groups = Vec::new();
        let mut next = 0;
        for &(v, u) in &group_type {
            for _ in 0..u {
                groups.push((next..next + v).collect());
                next += v;
            }
        }
        GddBaseBlocks {
            m,
            group_type,
            groups,
            base_blocks,
        }
    }

    pub fn n_rows(&self) -> u32 {
        self.groups.iter().map(|g| g.len() as u32).sum()
    }

    /// Group index of every row.
    pub fn group_of_row(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.n_rows() as usize];
        for (gi, g) in self.groups.iter().enumerate() {
            for &r in g {
                if let Some(slot) = out.get_mut(r as usize) {
                    *slot = gi;
                }
            }
        }
        out
    }

    /// Number of base blocks a full design needs: one per three cross-group differences.
    pub fn expected_block_count(&self) -> u64 {
        let n = u64::from(self.n_rows());
        let within: u64 = self.groups.iter().map(|g| (g.len() * (g.len() - 1) / 2) as u64).sum();
        (n * (n - 1) / 2 - within) * u64::from(self.m) / 3
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        if self.m == 0 {
            return bad("m must be positive".into());
        }
        let expected_groups: u32 = self.group_type.iter().map(|&(_, u)| u).sum();
        if self.groups.len() != expected_groups as usize {
            return bad(format!(
                "group type lists {expected_groups} groups but {} are given",
                self.groups.len()
            ));
        }
        let sizes = self
            .group_type
            .iter()
            .flat_map(|&(v, u)| std::iter::repeat_n(v, u as usize));
        for (g, v) in self.groups.iter().zip(sizes) {
            if g.len() != v as usize {
                return bad(format!("group {g:?} should have {v} rows"));
            }
        }
        let n = self.n_rows();
        let group_of = self.group_of_row();
        let mut seen = vec![false; n as usize];
        for &r in self.groups.iter().flatten() {
            if r >= n || std::mem::replace(&mut seen[r as usize], true) {
                return bad(format!("groups do not partition rows 0..{n}"));
            }
        }

        let mut cover: HashMap<(u32, u32, u32), usize> = HashMap::new();
        for (bi, block) in self.base_blocks.iter().enumerate() {
            if block.weight() != 3 {
                return bad(format!("base block {block} does not have weight 3"));
            }
            let cells = block.cells();
            for c in cells {
                if c.row >= n || c.slot >= self.m {
                    return bad(format!("base block {block} leaves I_{n} x Z_{}", self.m));
                }
            }
            for (a, x) in cells.iter().enumerate() {
                for y in &cells[a + 1..] {
                    if group_of[x.row as usize] == group_of[y.row as usize] {
                        return bad(format!("base block {block} meets a group twice"));
                    }
                    let d = residue(i64::from(y.slot) - i64::from(x.slot), self.m);
                    if let Some(prev) = cover.insert((x.row, y.row, d), bi) {
                        return bad(format!(
                            "rows ({}, {}) difference {d} covered by base blocks {prev} and {bi}",
                            x.row, y.row
                        ));
                    }
                }
            }
        }
        let needed = self.expected_block_count() * 3;
        if cover.len() as u64 != needed {
            return bad(format!(
                "{} of {needed} cross-group differences covered",
                cover.len()
            ));
        }
        Ok(())
    }
}

/// Base blocks plus one row-relabeled copy of the matching input code per group.
///
/// `inputs[t]` fills the groups of the `t`-th entry of `gdd.group_type`.
pub fn expand_gdd(gdd: &GddBaseBlocks, inputs: &[ConstructionResult]) -> Result<ConstructionResult> {
    gdd.validate()?;
    if inputs.len() != gdd.group_type.len() {
        return Err(Error::Precondition(format!(
            "{} input codes for {} group sizes",
            inputs.len(),
            gdd.group_type.len()
        )));
    }
    let m = gdd.m;
    let mut lambda_a = 1;
    let mut codewords = gdd.base_blocks.clone();
    let mut claimed = gdd.base_blocks.len();
    let mut groups = gdd.groups.iter();
    for (&(v, u), input) in gdd.group_type.iter().zip(inputs) {
        let p = input.code.params();
        if !input.verified || p.n != v || p.m != m || p.k != 3 {
            return Err(Error::Precondition(format!(
                "input for groups of {v} rows must be a verified ({v} x {m}, 3) code, got ({} x {}, {})",
                p.n, p.m, p.k
            )));
        }
        lambda_a = lambda_a.max(p.lambda_a);
        for _ in 0..u {
            let rows = groups.next().expect("group count checked by validate");
            codewords.extend(input.code.codewords().iter().map(|cw| cw.map_rows(|r| rows[r as usize])));
            claimed += input.code.len();
        }
    }
    let params = CodeParams::weight3(gdd.n_rows(), m, lambda_a)?;
    finish(Code::new(params, codewords)?, claimed, None, "gdd-expansion")
}

/// Optimal `(n × m, 3, 2, 1)`-OOC for `n ≡ 0 (mod 3)` from a 3-GDD of type
/// `(3m)^{n/3}` filled with the three-row code.
pub fn compose_0mod3(n: u32, m: u32) -> Result<ConstructionResult> {
    compose_0mod3_with(n, m, &SearchConfig::default().with_strategy(Strategy::HillClimbRestart))
}

pub fn compose_0mod3_with(n: u32, m: u32, config: &SearchConfig) -> Result<ConstructionResult> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::InvalidParameter(format!("n must be a positive multiple of 3, got {n}")));
    }
    if n == 6 || n == 9 {
        return Err(Error::Unsupported(format!("n = {n} is not covered by the composition")));
    }
    if n > 3 && !(m % 16 == 8 || m % 64 == 32 || (m % 48 == 4 || m % 48 == 20) && m > 4) {
        return Err(Error::Unsupported(format!(
            "m = {m} is not in a class where the three-row code is known to be optimal"
        )));
    }
    let inner = ooc_3xm(m)?;
    if n == 3 {
        return Ok(inner);
    }
    let psi = psi_e_exact(u64::from(m));
    if !psi.is_exact() {
        return Err(Error::Unsupported(format!("no exact equi-difference size for m = {m}")));
    }
    let u = n / 3;
    let outcome = gdd_search(u, m, config)?;
    let gdd = outcome.best.ok_or_else(|| {
        Error::BudgetExhausted(format!("no 3-GDD of type (3m)^{u} found for m = {m}"))
    })?;
    let mut result = expand_gdd(&gdd, &[inner])?;
    let (n64, m64) = (u64::from(n), u64::from(m));
    let size = n64 * (n64 * m64 + 2 * psi.value) / 6;
    if result.code.len() as u64 != size {
        return Err(Error::VerificationFailed {
            branch: "gdd-composition".into(),
            detail: format!("built {} codewords, expected {size}", result.code.len()),
            witnesses: Vec::new(),
        });
    }
    result.claimed_size = size as usize;
    result.branch = "gdd-composition".into();
    Ok(result)
}
