//! Constructions of optimal codes. Every result is verified before it is
//! returned: correlation, size, and (for 1-D codes) the difference leave.

mod equi;
mod explicit;
mod gdd;
mod three_row;
mod two_row;

use std::collections::BTreeSet;

use crate::code::{Code, Codeword};
use crate::error::{Error, Result};
use crate::verify::{structural_facts, verify_code};

pub use equi::{
    equi_2mod4, equi_power4, fill_regular, g_regular_4g, prime_derived, quadruple, tight_derived,
    Variant,
};
pub use explicit::{explicit_code, ExplicitId};
pub use gdd::{compose_0mod3, compose_0mod3_with, expand_gdd, GddBaseBlocks};
pub use three_row::ooc_3xm;
pub use two_row::ooc_2xm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub code: Code,
    pub claimed_size: usize,
    /// Stated difference leave of a 1-D code.
    pub claimed_leave: Option<BTreeSet<u32>>,
    pub branch: String,
    pub verified: bool,
}

/// Verify `code` against its claims and wrap it.
pub(crate) fn finish(
    code: Code,
    claimed_size: usize,
    claimed_leave: Option<BTreeSet<u32>>,
    branch: &str,
) -> Result<ConstructionResult> {
    let fail = |detail: String, witnesses| Error::VerificationFailed {
        branch: branch.to_string(),
        detail,
        witnesses,
    };
    let report = verify_code(&code);
    if !report.ok() {
        return Err(fail(
            format!(
                "correlation check failed for ({} x {}) code with {} codewords",
                code.params().n,
                code.params().m,
                code.len()
            ),
            report.witnesses,
        ));
    }
    if code.len() != claimed_size {
        return Err(fail(
            format!("built {} codewords, expected {claimed_size}", code.len()),
            Vec::new(),
        ));
    }
    if let Some(leave) = &claimed_leave {
        let facts = structural_facts(&code)?;
        if &facts.difference_leave != leave {
            return Err(fail(
                format!(
                    "difference leave {:?} differs from the stated {:?}",
                    facts.difference_leave, leave
                ),
                Vec::new(),
            ));
        }
    }
    Ok(ConstructionResult {
        code,
        claimed_size,
        claimed_leave,
        branch: branch.to_string(),
        verified: true,
    })
}

/// `[a, b]` (empty when `a > b`).
pub(crate) fn closed(a: i64, b: i64) -> impl Iterator<Item = i64> {
    a..=b
}

/// `[a, b]_o`: the odd integers of `[a, b]`.
pub(crate) fn odd(a: i64, b: i64) -> impl Iterator<Item = i64> {
    (a..=b).filter(|x| x.rem_euclid(2) == 1)
}

/// `num / den`, which the residue preconditions make exact.
pub(crate) fn exact(num: i64, den: i64) -> i64 {
    assert_eq!(num % den, 0, "{num}/{den} is not integral");
    num / den
}

/// Collects codewords given as `(row, slot)` triples with slots reduced mod `m`.
pub(crate) struct Builder {
    m: u32,
    branch: &'static str,
    codewords: Vec<Codeword>,
}

impl Builder {
    pub(crate) fn new(m: u32, branch: &'static str) -> Self {
        Builder {
            m,
            branch,
            codewords: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, cells: [(u32, i64); 3]) -> Result<()> {
        let cw = Codeword::from_pairs(&cells, self.m).map_err(|e| Error::VerificationFailed {
            branch: self.branch.into(),
            detail: format!("listed codeword {cells:?} is not a 3-set: {e}"),
            witnesses: Vec::new(),
        })?;
        self.codewords.push(cw);
        Ok(())
    }

    pub(crate) fn extend(&mut self, codewords: impl IntoIterator<Item = Codeword>) {
        self.codewords.extend(codewords);
    }

    pub(crate) fn into_codewords(self) -> Vec<Codeword> {
        self.codewords
    }
}
