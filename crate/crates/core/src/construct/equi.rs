//! Equi-difference 1-D codes: the `m ≡ 2 (mod 4)` family, g-regular codes on
//! `Z_{4g}`, filling, quadrupling and the towers built from them.

use std::collections::BTreeSet;

use super::{exact, finish, odd, ConstructionResult};
use crate::bounds::{is_prime, me_prime, tight_prime_clauses};
use crate::code::{Code, CodeParams, Codeword};
use crate::error::{Error, Result};
use crate::search::{equi_search, tight_search, SearchConfig};
use crate::verify::structural_facts;

fn one_d(m: u32, generators: impl IntoIterator<Item = i64>) -> Result<Code> {
    let params = CodeParams::weight3(1, m, 2)?;
    let codewords = generators
        .into_iter()
        .map(|a| Codeword::equi(0, a, m))
        .collect::<Result<Vec<_>>>()?;
    Code::new(params, codewords)
}

fn set(values: impl IntoIterator<Item = i64>) -> BTreeSet<u32> {
    values.into_iter().map(|v| v as u32).collect()
}

fn scaled(w: i64, values: &BTreeSet<u32>) -> impl Iterator<Item = i64> + '_ {
    values.iter().map(move |&v| w * i64::from(v))
}

/// `⋃_{i=1}^{s} 4^{s−i} · ([1, 4^{i−1}r − 1]_o ∪ [4^{i−1}·3r + 1, 4^i r − 1]_o)`.
fn tower_tail(r: i64, s: u32) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for i in 1..=s {
        let w = 4i64.pow(s - i);
        let p = 4i64.pow(i - 1);
        for x in odd(1, p * r - 1).chain(odd(3 * p * r + 1, 4 * p * r - 1)) {
            out.insert((w * x) as u32);
        }
    }
    out
}

/// `{{0, i, 2i} : i = 1, 3, …, m/2 − 2}` for `m ≡ 2 (mod 4)`; leave `{m/2}`.
pub fn equi_2mod4(m: u32) -> Result<ConstructionResult> {
    if m % 4 != 2 {
        return Err(Error::InvalidParameter(format!("equi_2mod4 needs m ≡ 2 (mod 4), got {m}")));
    }
    let mm = i64::from(m);
    let code = one_d(m, odd(1, mm / 2 - 2))?;
    finish(code, ((m - 2) / 4) as usize, Some(set([mm / 2])), "equi-2mod4")
}

/// g-regular code on `Z_{4g}` with `⌈g/2⌉` codewords.
pub fn g_regular_4g(g: u32) -> Result<ConstructionResult> {
    if g == 0 {
        return Err(Error::InvalidParameter("g must be positive".into()));
    }
    let gg = i64::from(g);
    let m = 4 * g;
    let gens: Vec<i64> = if g % 2 == 0 {
        odd(gg + 1, 2 * gg - 1).collect()
    } else {
        odd(gg, 2 * gg - 1).collect()
    };
    let code = one_d(m, gens)?;
    let leave = set(
        odd(1, gg - 1)
            .chain(odd(3 * gg + 1, 4 * gg - 1))
            .chain((1..gg).map(|x| 4 * x)),
    );
    let result = finish(code, g.div_ceil(2) as usize, Some(leave), "g-regular-4g")?;
    if !structural_facts(&result.code)?.regular_subgroups.contains(&g) {
        return Err(Error::VerificationFailed {
            branch: "g-regular-4g".into(),
            detail: format!("code on Z_{m} is not {g}-regular"),
            witnesses: Vec::new(),
        });
    }
    Ok(result)
}

/// Union of a g-regular code on `Z_m` and a code on `Z_g` scaled by `m/g`.
pub fn fill_regular(outer: &ConstructionResult, inner: &ConstructionResult) -> Result<ConstructionResult> {
    let (po, pi) = (outer.code.params(), inner.code.params());
    if po.n != 1 || pi.n != 1 {
        return Err(Error::Precondition("filling needs 1-D codes".into()));
    }
    let (m, g) = (po.m, pi.m);
    if m % g != 0 {
        return Err(Error::Precondition(format!("{g} does not divide {m}")));
    }
    if !outer.verified || !inner.verified {
        return Err(Error::Precondition("filling needs verified inputs".into()));
    }
    let fo = structural_facts(&outer.code)?;
    let fi = structural_facts(&inner.code)?;
    if !fo.is_equi_difference || !fi.is_equi_difference {
        return Err(Error::Precondition("filling needs equi-difference inputs".into()));
    }
    if !fo.regular_subgroups.contains(&g) {
        return Err(Error::Precondition(format!("outer code on Z_{m} is not {g}-regular")));
    }
    let w = m / g;
    let mut codewords = outer.code.codewords().to_vec();
    for cw in inner.code.codewords() {
        let slots: Vec<i64> = cw.slots().iter().map(|&s| i64::from(s * w)).collect();
        codewords.push(Codeword::from_slots(0, &slots, m)?);
    }
    // the subgroup H = w·Z_m is no longer left once the inner code is placed
    let leave: BTreeSet<u32> = fo
        .difference_leave
        .iter()
        .copied()
        .filter(|d| d % w != 0)
        .chain(scaled(i64::from(w), &fi.difference_leave).map(|d| d as u32))
        .collect();
    let code = Code::new(CodeParams::weight3(1, m, 2)?, codewords)?;
    finish(code, outer.code.len() + inner.code.len(), Some(leave), "fill-regular")
}

/// Fill the `(m/4)`-regular code on `Z_m` with a code on `Z_{m/4}`.
pub fn quadruple(inner: &ConstructionResult) -> Result<ConstructionResult> {
    let g = inner.code.params().m;
    let m = 4 * i64::from(g);
    let outer = g_regular_4g(g)?;
    let filled = fill_regular(&outer, inner)?;
    let inner_leave = structural_facts(&inner.code)?.difference_leave;
    let leave: BTreeSet<u32> = scaled(4, &inner_leave)
        .chain(odd(1, m / 4 - 1))
        .chain(odd(3 * m / 4 + 1, m - 1))
        .map(|d| d as u32)
        .collect();
    let size = (m as usize).div_ceil(8) + inner.code.len();
    finish(filled.code, size, Some(leave), "quadruple")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Leave contains the half period.
    Standard,
    /// Codeword `{0, 3r/2, 3r}` swapped for `{0, r, 2r}` at the first stage.
    HalfFree,
}

/// Optimal equi-difference code on `Z_{4^s r}`, `r ≡ 2 (mod 4)`.
pub fn equi_power4(s: u32, r: u32, variant: Variant) -> Result<ConstructionResult> {
    if r % 4 != 2 {
        return Err(Error::InvalidParameter(format!("equi_power4 needs r ≡ 2 (mod 4), got {r}")));
    }
    if variant == Variant::HalfFree && s == 0 {
        return Err(Error::InvalidParameter("the half-free variant needs s ≥ 1".into()));
    }
    let rr = i64::from(r);
    let mut current = equi_2mod4(r)?;
    for stage in 1..=s {
        current = quadruple(&current)?;
        if stage == 1 && variant == Variant::HalfFree {
            current = swap_half(&current, rr)?;
        }
    }
    let m = 4i64.pow(s) * rr;
    let mut leave = tower_tail(rr, s);
    match variant {
        Variant::Standard => {
            leave.insert((m / 2) as u32);
        }
        Variant::HalfFree => {
            leave.insert(exact(3 * m, 8) as u32);
            leave.insert(exact(5 * m, 8) as u32);
        }
    }
    let size = ((1i64 << (2 * s + 1)) * rr + rr - 6) / 12;
    let branch = match variant {
        Variant::Standard => "equi-power4",
        Variant::HalfFree => "equi-power4-half-free",
    };
    finish(current.code, size as usize, Some(leave), branch)
}

/// Replace `{0, 3r/2, 3r}` by `{0, r, 2r}` on `Z_{4r}`.
fn swap_half(code: &ConstructionResult, r: i64) -> Result<ConstructionResult> {
    let m = code.code.params().m;
    let old = Codeword::equi(0, 3 * r / 2, m)?;
    let mut codewords: Vec<Codeword> = code.code.codewords().to_vec();
    let before = codewords.len();
    codewords.retain(|cw| *cw != old);
    if codewords.len() + 1 != before {
        return Err(Error::VerificationFailed {
            branch: "equi-power4-half-free".into(),
            detail: format!("codeword {old} not present on Z_{m}"),
            witnesses: Vec::new(),
        });
    }
    codewords.push(Codeword::equi(0, r, m)?);
    let leave = set(
        [3 * r / 2, 5 * r / 2]
            .into_iter()
            .chain(odd(1, r - 1))
            .chain(odd(3 * r + 1, 4 * r - 1)),
    );
    let code = Code::new(*code.code.params(), codewords)?;
    finish(code, before, Some(leave), "equi-power4-half-free")
}

/// Optimal equi-difference code on `Z_{4^s r}` from a tight CAC on `Z_r`.
///
/// `r ≡ 1, 5 (mod 12)` (or `r = 1`) needs every prime factor of `r` to pass
/// the tightness clauses; `r ≡ 3 (mod 12)` needs the same of `r/3`, and the
/// codeword `{0, r/3, 2r/3}` is dropped from the CAC.
pub fn tight_derived(r: u32, s: u32) -> Result<ConstructionResult> {
    let rr = i64::from(r);
    let third = match r % 12 {
        1 | 5 => false,
        3 => true,
        _ => {
            return Err(Error::Unsupported(format!(
                "tight-derived codes need r ≡ 1, 3, 5 (mod 12), got {r}"
            )))
        }
    };
    let core = if third { r / 3 } else { r };
    if !tight_prime_clauses(u64::from(core)).iter().all(|c| c.satisfied) {
        return Err(Error::Unsupported(format!(
            "{core} has a prime factor violating the tightness clauses"
        )));
    }

    let base_code = if r == 1 {
        Code::empty(CodeParams::weight3(1, 1, 2)?)
    } else {
        let outcome = tight_search(r, &SearchConfig::default())?;
        let cac = outcome.best.ok_or_else(|| {
            if outcome.proven_optimal {
                Error::VerificationFailed {
                    branch: "tight-derived".into(),
                    detail: format!("no tight CAC exists on Z_{r} although the clauses hold"),
                    witnesses: Vec::new(),
                }
            } else {
                Error::BudgetExhausted(format!("tight CAC search on Z_{r}"))
            }
        })?;
        let triple = Codeword::equi(0, rr / 3, r)?;
        let kept: Vec<Codeword> = cac
            .into_codewords()
            .into_iter()
            .filter(|cw| !(third && *cw == triple))
            .collect();
        Code::new(CodeParams::weight3(1, r, 2)?, kept)?
    };
    let (base_size, base_leave) = if third {
        ((rr - 3) / 4, set([rr / 3, 2 * rr / 3]))
    } else {
        ((rr - 1) / 4, BTreeSet::new())
    };
    let mut current = finish(base_code, base_size as usize, Some(base_leave), "tight-derived")?;
    for _ in 0..s {
        current = quadruple(&current)?;
    }

    let m = 4i64.pow(s) * rr;
    let mut leave = tower_tail(rr, s);
    if third {
        leave.insert((m / 3) as u32);
        leave.insert((2 * m / 3) as u32);
    }
    let size = if s == 0 {
        base_size
    } else {
        let tower = ((1i64 << (2 * s - 1)) - 2) * rr / 3;
        tower + if third { (3 * rr - 1) / 4 } else { (3 * rr + 1) / 4 }
    };
    finish(current.code, size as usize, Some(leave), "tight-derived")
}

/// Optimal equi-difference code on `Z_{4^s p}` from an optimal
/// equi-difference CAC on `Z_p`, `p ≥ 5` prime.
pub fn prime_derived(p: u32, s: u32) -> Result<ConstructionResult> {
    if p < 5 || !is_prime(u64::from(p)) {
        return Err(Error::InvalidParameter(format!("prime_derived needs a prime p ≥ 5, got {p}")));
    }
    let me = me_prime(u64::from(p))?.value as i64;
    let outcome = equi_search(p, 3, &SearchConfig::default())?;
    if !outcome.proven_optimal {
        return Err(Error::BudgetExhausted(format!("equi-difference CAC search on Z_{p}")));
    }
    let cac = outcome.best.expect("equi_search always returns a witness");
    let base = Code::new(CodeParams::weight3(1, p, 2)?, cac.into_codewords())?;
    let mut current = finish(base, me as usize, None, "prime-derived")?;
    for _ in 0..s {
        current = quadruple(&current)?;
    }
    let pp = i64::from(p);
    let size = if s == 0 {
        me
    } else {
        ((1i64 << (2 * s - 1)) - 2) * pp / 3 + (pp + 1) / 2 + me
    };
    finish(current.code, size as usize, None, "prime-derived")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(r: &ConstructionResult) -> Vec<Vec<u32>> {
        r.code.codewords().iter().map(|cw| cw.slots()).collect()
    }

    #[test]
    fn two_mod_four_examples() {
        assert_eq!(gens(&equi_2mod4(6).unwrap()), vec![vec![0, 1, 2]]);
        assert_eq!(gens(&equi_2mod4(10).unwrap()), vec![vec![0, 1, 2], vec![0, 3, 6]]);
        assert!(equi_2mod4(2).unwrap().code.is_empty());
        assert!(equi_2mod4(8).is_err());
    }

    #[test]
    fn regular_examples() {
        let r = g_regular_4g(2).unwrap();
        assert_eq!(gens(&r), vec![vec![0, 3, 6]]);
        assert_eq!(r.claimed_leave, Some([1, 4, 7].into()));
        assert_eq!(gens(&g_regular_4g(1).unwrap()), vec![vec![0, 1, 2]]);
        assert_eq!(g_regular_4g(5).unwrap().code.len(), 3);
    }

    #[test]
    fn fill_example() {
        let r = fill_regular(&g_regular_4g(6).unwrap(), &equi_2mod4(6).unwrap()).unwrap();
        assert_eq!(r.code.len(), 4);
        assert_eq!(r.claimed_leave, Some([1, 3, 5, 12, 19, 21, 23].into()));
    }

    #[test]
    fn quadruple_examples() {
        let r = quadruple(&equi_2mod4(6).unwrap()).unwrap();
        assert_eq!(r.code.len(), 4);
        let r = quadruple(&tight_derived(5, 0).unwrap()).unwrap();
        assert_eq!(r.claimed_leave, Some([1, 3, 17, 19].into()));
    }

    #[test]
    fn half_free_small() {
        let r = equi_power4(1, 2, Variant::HalfFree).unwrap();
        assert_eq!(gens(&r), vec![vec![0, 2, 4]]);
        assert_eq!(r.claimed_leave, Some([1, 3, 5, 7].into()));
        let r = equi_power4(2, 2, Variant::HalfFree).unwrap();
        assert_eq!(r.code.len(), 5);
        assert_eq!(
            r.claimed_leave,
            Some([1, 3, 4, 5, 7, 12, 20, 25, 27, 28, 29, 31].into())
        );
    }

    #[test]
    fn standard_tower_size() {
        assert_eq!(equi_power4(2, 2, Variant::Standard).unwrap().code.len(), 5);
        assert_eq!(equi_power4(0, 6, Variant::Standard).unwrap().code.len(), 1);
    }

    #[test]
    fn tight_examples() {
        assert_eq!(gens(&tight_derived(5, 0).unwrap()), vec![vec![0, 1, 2]]);
        let r = tight_derived(13, 1).unwrap();
        assert_eq!(r.code.len(), 10);
        let r = tight_derived(3, 0).unwrap();
        assert!(r.code.is_empty());
        assert_eq!(r.claimed_leave, Some([1, 2].into()));
        assert_eq!(tight_derived(1, 1).unwrap().code.len(), 1);
        assert!(tight_derived(7, 0).is_err());
    }

    #[test]
    fn prime_examples() {
        assert_eq!(prime_derived(7, 0).unwrap().code.len(), 1);
        assert_eq!(prime_derived(7, 1).unwrap().code.len(), 5);
        assert_eq!(prime_derived(5, 1).unwrap().code.len(), 4);
        assert!(prime_derived(9, 0).is_err());
    }
}
