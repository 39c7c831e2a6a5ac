//! Optimal `(3 × m, 3, 2, 1)`-OOCs.
//!
//! Each general family is an optimal equi-difference code repeated on every
//! row, followed by listed families that use up the remaining pure and mixed
//! differences.

use std::collections::BTreeSet;

use super::{closed, equi_power4, exact, explicit_code, finish, tight_derived, Builder};
use super::{ConstructionResult, ExplicitId, Variant};
use crate::bounds::tight_prime_clauses;
use crate::code::{Code, CodeParams};
use crate::error::{Error, Result};

pub fn ooc_3xm(m: u32) -> Result<ConstructionResult> {
    let explicit = match m {
        4 => Some(ExplicitId::ThreeBy4),
        8 => Some(ExplicitId::ThreeBy8),
        20 => Some(ExplicitId::ThreeBy20),
        32 => Some(ExplicitId::ThreeBy32),
        52 => Some(ExplicitId::ThreeBy52),
        _ => None,
    };
    if let Some(id) = explicit {
        return explicit_code(id);
    }
    if m % 16 == 8 {
        return eight_mod_16(m);
    }
    if m % 64 == 32 {
        return thirty_two_mod_64(m);
    }
    if (m % 48 == 4 || m % 48 == 20) && m >= 68 {
        if !tight_prime_clauses(u64::from(m / 4)).iter().all(|c| c.satisfied) {
            return Err(Error::Unsupported(format!(
                "m/4 = {} has a prime factor violating the tightness clauses",
                m / 4
            )));
        }
        return four_twenty_mod_48(m);
    }
    Err(Error::Unsupported(format!("no three-row construction for m = {m}")))
}

/// The 1-D code placed on each of the three rows.
fn repeat_rows(b: &mut Builder, base: &ConstructionResult) {
    for x in 0..3 {
        b.extend(base.code.codewords().iter().map(|cw| cw.map_rows(|_| x)));
    }
}

fn assemble(m: u32, b: Builder, size: i64, branch: &str) -> Result<ConstructionResult> {
    let code = Code::new(CodeParams::weight3(3, m, 2)?, b.into_codewords())?;
    finish(code, size as usize, None, branch)
}

fn without(range: impl Iterator<Item = i64>, excluded: &[i64]) -> Vec<i64> {
    let excluded: BTreeSet<i64> = excluded.iter().copied().collect();
    range.filter(|i| !excluded.contains(i)).collect()
}

fn eight_mod_16(m: u32) -> Result<ConstructionResult> {
    const BRANCH: &str = "3xm/8mod16";
    let mm = i64::from(m);
    let q = |num: i64, den: i64| exact(num, den);
    let mut b = Builder::new(m, BRANCH);
    repeat_rows(&mut b, &equi_power4(1, m / 4, Variant::HalfFree)?);

    for i in closed(0, q(mm, 8) - 1) {
        b.add([(0, 0), (0, 1 + 2 * i), (1, q(7 * mm, 8) + i)])?;
    }
    for i in closed(0, q(mm, 8) - 1) {
        b.add([(1, 0), (1, 1 + 2 * i), (2, q(mm, 2) + 2 + i)])?;
    }
    for i in closed(0, q(mm, 8) - 2) {
        b.add([(0, 0), (2, q(7 * mm, 8) - 3 - i), (2, q(7 * mm, 8) + i)])?;
    }
    b.add([(0, 0), (0, q(3 * mm, 8)), (1, q(3 * mm, 4) - 1)])?;
    b.add([(1, 0), (1, q(3 * mm, 8)), (2, q(3 * mm, 4))])?;
    b.add([(0, 0), (2, mm - 1), (2, 0)])?;
    b.add([(0, 0), (2, q(7 * mm, 8) - 2), (2, q(mm, 4) - 2)])?;
    for i in closed(0, q(3 * mm, 8) - 2) {
        b.add([(0, 0), (1, i), (2, 1 + 2 * i)])?;
    }
    for i in without(closed(0, q(3 * mm, 8) - 2), &[q(mm, 8) - 2]) {
        b.add([(0, 0), (1, q(3 * mm, 8) + i), (2, 2 + 2 * i)])?;
    }
    b.add([(0, 0), (1, q(mm, 2) - 2), (2, q(7 * mm, 8) - 1)])?;

    assemble(m, b, q(27 * mm - 8, 16), BRANCH)
}

fn thirty_two_mod_64(m: u32) -> Result<ConstructionResult> {
    const BRANCH: &str = "3xm/32mod64";
    let mm = i64::from(m);
    let q = |num: i64, den: i64| exact(num, den);
    let mut b = Builder::new(m, BRANCH);
    repeat_rows(&mut b, &equi_power4(2, m / 16, Variant::HalfFree)?);

    for i in closed(0, q(mm, 8) - 1) {
        b.add([(0, 0), (0, 1 + 2 * i), (1, q(mm, 8) + 2 + i)])?;
    }
    for i in closed(0, q(mm, 32) - 1) {
        b.add([(0, 0), (0, 4 + 8 * i), (1, q(7 * mm, 8) + 3 + 4 * i)])?;
    }
    for i in closed(0, q(mm, 8) - 2) {
        b.add([(1, 0), (1, 3 + 2 * i), (2, q(5 * mm, 8) + i)])?;
    }
    for i in closed(0, q(mm, 32) - 1) {
        b.add([(1, 0), (1, 4 + 8 * i), (2, q(7 * mm, 8) + 3 + 4 * i)])?;
    }
    for i in closed(0, q(mm, 8) - 2) {
        b.add([(0, 0), (2, q(mm, 4) - 1 - i), (2, q(mm, 4) + 2 + i)])?;
    }
    for i in closed(0, q(mm, 32) - 1) {
        b.add([(0, 0), (2, q(3 * mm, 4) - 2 - 4 * i), (2, q(3 * mm, 4) + 2 + 4 * i)])?;
    }

    b.add([(0, 0), (0, q(3 * mm, 8)), (1, q(13 * mm, 16) - 1)])?;
    b.add([(1, 0), (1, 1), (2, q(7 * mm, 16))])?;
    b.add([(1, 0), (1, q(3 * mm, 8)), (2, q(3 * mm, 4) - 1)])?;
    b.add([(0, 0), (2, q(mm, 4) + 1), (2, q(5 * mm, 8) + 1)])?;
    b.add([(0, 0), (2, q(mm, 16) - 2), (2, q(mm, 16) - 1)])?;

    for i in without(closed(0, q(mm, 16) - 1), &[q(mm, 16) - 2]) {
        b.add([(0, 0), (1, q(3 * mm, 4) + 2 * i), (2, q(3 * mm, 4) - 3 - 2 * i)])?;
    }
    for i in closed(0, q(mm, 16) - 1) {
        b.add([(0, 0), (1, q(7 * mm, 8) + 2 * i), (2, q(5 * mm, 8) + 4 * i)])?;
    }
    for i in without(closed(0, q(mm, 16) - 1), &[q(mm - 32, 64)]) {
        b.add([(0, 0), (1, q(3 * mm, 4) + 1 + 4 * i), (2, q(3 * mm, 4) - 1 + 2 * i)])?;
    }
    for i in closed(0, q(mm, 8) - 2) {
        b.add([(0, 0), (1, q(mm, 4) + 2 + 2 * i), (2, q(3 * mm, 8) + 1 + i)])?;
    }
    for i in without(closed(0, q(mm, 8) - 3), &[q(3 * mm, 32) - 2]) {
        b.add([(0, 0), (1, q(mm, 4) + 3 + 2 * i), (2, q(mm, 2) + 1 + i)])?;
    }
    for i in without(closed(0, q(mm, 8) - 3), &[q(mm, 16) - 3, q(mm, 16) - 2]) {
        b.add([(0, 0), (1, q(mm, 2) + 4 + 2 * i), (2, 1 + i)])?;
    }
    for i in closed(0, q(mm, 8) - 4) {
        b.add([(0, 0), (1, q(mm, 2) + 1 + 2 * i), (2, q(7 * mm, 8) - 1 + i)])?;
    }

    for (a, c) in [
        (0, 0),
        (1, q(mm, 4)),
        (q(mm, 2) - 1, mm - 3),
        (q(mm, 2), q(mm, 8) - 1),
        (q(mm, 2) + 2, q(mm, 8)),
        (q(3 * mm, 4) - 5, q(mm, 2)),
        (q(3 * mm, 4) - 3, mm - 2),
        (q(3 * mm, 4) - 1, mm - 1),
        (q(7 * mm, 8) - 4, mm - 4),
        (q(5 * mm, 8) - 2, q(25 * mm, 32) - 2),
        (q(5 * mm, 8), q(19 * mm, 32) - 1),
    ] {
        b.add([(0, 0), (1, a), (2, c)])?;
    }

    assemble(m, b, q(107 * mm - 32, 64), BRANCH)
}

fn four_twenty_mod_48(m: u32) -> Result<ConstructionResult> {
    const BRANCH: &str = "3xm/4,20mod48";
    let mm = i64::from(m);
    let q = |num: i64, den: i64| exact(num, den);
    let mut b = Builder::new(m, BRANCH);
    repeat_rows(&mut b, &tight_derived(m / 4, 1)?);

    for i in closed(0, q(mm - 20, 8)) {
        b.add([(0, 0), (0, 1 + 2 * i), (1, q(7 * mm + 4, 8) + i)])?;
    }
    for i in closed(0, q(mm - 12, 8)) {
        b.add([(1, 0), (1, 1 + 2 * i), (2, q(mm, 2) + i)])?;
    }
    for i in closed(0, q(mm - 12, 8)) {
        b.add([(0, 0), (2, q(7 * mm - 12, 8) - i), (2, q(7 * mm - 4, 8) + i)])?;
    }
    b.add([(0, 0), (0, q(mm, 4) - 2), (1, q(11 * mm - 12, 16))])?;
    for (a, c) in [
        (q(3 * mm - 4, 8), q(mm - 4, 16)),
        (q(9 * mm + 12, 16), q(mm, 2) - 1),
        (q(3 * mm + 4, 8), q(3 * mm + 4, 16)),
        (q(3 * mm, 4) + 1, 2),
        (mm - 1, q(3 * mm, 4) - 3),
        (q(mm, 4), mm - 1),
        (q(mm, 4) - 1, q(mm, 4) - 3),
        (q(3 * mm, 4), 0),
        (q(3 * mm + 12, 8), q(mm + 12, 8)),
        (q(5 * mm - 4, 8), q(mm, 4) - 1),
        (q(5 * mm + 4, 8), q(mm, 4) + 1),
        (q(3 * mm, 4) - 1, q(5 * mm - 20, 8)),
        (q(mm, 2) + 1, q(3 * mm + 4, 8)),
        (q(mm, 2), q(mm, 2)),
        (q(mm, 2) - 1, q(mm, 2) - 2),
    ] {
        b.add([(0, 0), (1, a), (2, c)])?;
    }

    let t = without(
        closed(0, q(3 * mm - 36, 8)),
        &[
            q(mm - 20, 16),
            q(mm - 28, 8),
            q(mm - 20, 8),
            q(mm - 12, 8),
            q(3 * mm - 28, 16),
            q(mm, 4) - 3,
            q(mm, 4) - 2,
            q(5 * mm - 52, 16),
        ],
    );
    let (diag_excluded, singles, t_excluded) = if m % 96 == 4 || m % 96 == 68 {
        (
            q(3 * mm - 12, 32),
            [
                (q(3 * mm - 12, 32), q(3 * mm, 4) - 1),
                (q(13 * mm + 12, 32), q(mm, 2) + 1),
            ],
            q(mm - 68, 32),
        )
    } else {
        if m < 116 {
            return Err(Error::Unsupported(format!("no three-row construction for m = {m}")));
        }
        (
            q(mm - 20, 32),
            [
                (q(15 * mm + 20, 32), q(mm, 2) + 1),
                (q(mm - 20, 32), q(3 * mm, 4) - 1),
            ],
            q(3 * mm - 60, 32),
        )
    };
    for i in without(closed(0, q(3 * mm - 12, 8)), &[diag_excluded, q(mm, 4) - 1, q(mm, 4)]) {
        b.add([(0, 0), (1, i), (2, 1 + 2 * i)])?;
    }
    for (a, c) in singles {
        b.add([(0, 0), (1, a), (2, c)])?;
    }
    for i in without(t.into_iter(), &[t_excluded]) {
        b.add([(0, 0), (1, q(3 * mm + 20, 8) + i), (2, 4 + 2 * i)])?;
    }

    assemble(m, b, q(27 * mm + 4, 16), BRANCH)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_members_of_each_family() {
        assert_eq!(ooc_3xm(24).unwrap().code.len(), 40);
        assert_eq!(ooc_3xm(96).unwrap().code.len(), 160);
        assert_eq!(ooc_3xm(68).unwrap().code.len(), 115);
    }

    #[test]
    fn unsupported_moduli() {
        assert!(ooc_3xm(10).is_err());
        assert!(ooc_3xm(16).is_err());
    }
}
