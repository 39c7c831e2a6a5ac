//! Correlation checking, census reports and structural predicates.
//!
//! `verify_code` works on the difference representation: a family of
//! weight-k sets is a code with cross-correlation 1 exactly when no two
//! codewords share an `(i, j)`-difference, and the autocorrelation of a
//! codeword is the largest multiplicity among its pure differences.
//! `verify_by_matrix` recomputes both properties from the shifted 0/1
//! matrices and is kept as an independent oracle.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::code::{
    classify_codeword, parity_class, profile_unchecked, residue, support, Beta, Code, CodeParams,
    Codeword, ParityClassLabel, TypeCensusLabel,
};
use crate::error::{Error, Result};

/// Reports carry at most this many witnesses.
pub const MAX_WITNESSES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Auto,
    Cross,
}

/// One correlation violation. For autocorrelation both indices name the same codeword.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub codewords: (usize, usize),
    pub rows: (u32, u32),
    pub difference: u32,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub auto_ok: bool,
    pub cross_ok: bool,
    pub max_auto_multiplicity: u32,
    pub witnesses: Vec<Witness>,
    /// Violations found beyond the first [`MAX_WITNESSES`].
    pub truncated: usize,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.auto_ok && self.cross_ok
    }
}

pub fn verify_code(code: &Code) -> VerificationReport {
    let params = code.params();
    let m = params.m;
    let mut all: Vec<Witness> = Vec::new();
    let mut max_auto = 0;
    let mut auto_ok = true;
    let mut cross_ok = true;
    let mut owner: HashMap<(u32, u32, u32), usize> = HashMap::new();

    for (idx, cw) in code.codewords().iter().enumerate() {
        let profile = profile_unchecked(cw, m);
        let pure = profile.pure_union();
        let lambda = pure.values().copied().max().unwrap_or(0);
        max_auto = max_auto.max(lambda);
        if lambda > params.lambda_a {
            auto_ok = false;
            for (&d, &c) in pure.iter().filter(|(_, &c)| c > params.lambda_a) {
                let row = profile
                    .entries
                    .iter()
                    .find(|((i, j), ms)| i == j && ms.contains_key(&d))
                    .map(|((i, _), _)| *i)
                    .unwrap_or(0);
                all.push(Witness {
                    kind: WitnessKind::Auto,
                    codewords: (idx, idx),
                    rows: (row, row),
                    difference: d,
                    multiplicity: c,
                });
            }
        }
        for (&(i, j), ms) in &profile.entries {
            for &d in ms.keys() {
                match owner.get(&(i, j, d)) {
                    Some(&first) => {
                        cross_ok = false;
                        // (j, i, -d) is the mirror of (i, j, d); report each collision once.
                        if i < j || (i == j && d <= residue(-i64::from(d), m)) {
                            all.push(Witness {
                                kind: WitnessKind::Cross,
                                codewords: (first, idx),
                                rows: (i, j),
                                difference: d,
                                multiplicity: 2,
                            });
                        }
                    }
                    None => {
                        owner.insert((i, j, d), idx);
                    }
                }
            }
        }
    }

    all.sort();
    let truncated = all.len().saturating_sub(MAX_WITNESSES);
    all.truncate(MAX_WITNESSES);
    VerificationReport {
        auto_ok,
        cross_ok,
        max_auto_multiplicity: max_auto,
        witnesses: all,
        truncated,
    }
}

/// A codeword as an `n × m` 0/1 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    pub n: u32,
    pub m: u32,
    bits: Vec<bool>,
}

impl BinaryMatrix {
    pub fn from_codeword(codeword: &Codeword, params: &CodeParams) -> Result<Self> {
        codeword.check_params(params)?;
        let mut bits = vec![false; (params.n * params.m) as usize];
        for c in codeword.cells() {
            bits[(c.row * params.m + c.slot) as usize] = true;
        }
        Ok(BinaryMatrix {
            n: params.n,
            m: params.m,
            bits,
        })
    }

    pub fn get(&self, row: u32, col: u32) -> bool {
        self.bits[(row * self.m + col) as usize]
    }

    /// Rows of `'0'`/`'1'` characters.
    pub fn render(&self) -> Vec<String> {
        (0..self.n)
            .map(|r| {
                (0..self.m)
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

/// `Σ_i Σ_j a_ij · b_{i, j+r}` with `j + r` reduced mod `m`.
pub fn matrix_correlation(a: &BinaryMatrix, b: &BinaryMatrix, r: i64) -> Result<u32> {
    if a.n != b.n || a.m != b.m {
        return Err(Error::InvalidParameter(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.n, a.m, b.n, b.m
        )));
    }
    let mut sum = 0;
    for i in 0..a.n {
        for j in 0..a.m {
            let shifted = residue(i64::from(j) + r, a.m);
            if a.get(i, j) && b.get(i, shifted) {
                sum += 1;
            }
        }
    }
    Ok(sum)
}

/// Autocorrelation and cross-correlation verdicts computed from the matrix
/// definition over every shift.
pub fn verify_by_matrix(code: &Code) -> Result<(bool, bool)> {
    let params = code.params();
    let mats: Vec<BinaryMatrix> = code
        .codewords()
        .iter()
        .map(|cw| BinaryMatrix::from_codeword(cw, params))
        .collect::<Result<_>>()?;
    let m = i64::from(params.m);
    let mut auto_ok = true;
    for a in &mats {
        for r in 1..m {
            if matrix_correlation(a, a, r)? > params.lambda_a {
                auto_ok = false;
            }
        }
    }
    let mut cross_ok = true;
    for (x, a) in mats.iter().enumerate() {
        for b in &mats[x + 1..] {
            for r in 0..m {
                if matrix_correlation(a, b, r)? > params.lambda_c {
                    cross_ok = false;
                }
            }
        }
    }
    Ok((auto_ok, cross_ok))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompositionCensus {
    pub alpha: usize,
    pub alpha3: usize,
    pub alpha4: usize,
    pub alpha5: usize,
    pub alpha6: usize,
    /// Type-1 codewords with only two distinct differences (`{0, m/3, 2m/3}`);
    /// always zero for codes with `λ_a = 2`.
    pub alpha2: usize,
    pub beta: usize,
    pub beta1: usize,
    pub beta2: usize,
    pub gamma: usize,
}

pub fn composition_census(code: &Code) -> Result<CompositionCensus> {
    let mut c = CompositionCensus::default();
    for cw in code.codewords() {
        match classify_codeword(cw, code.params())? {
            TypeCensusLabel::Type1(s) => {
                c.alpha += 1;
                match s {
                    2 => c.alpha2 += 1,
                    3 => c.alpha3 += 1,
                    4 => c.alpha4 += 1,
                    5 => c.alpha5 += 1,
                    _ => c.alpha6 += 1,
                }
            }
            TypeCensusLabel::Type2(b) => {
                c.beta += 1;
                match b {
                    Beta::One => c.beta1 += 1,
                    Beta::Two => c.beta2 += 1,
                }
            }
            TypeCensusLabel::Type3 => c.gamma += 1,
        }
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityCensus {
    pub c_o: usize,
    pub c_e: usize,
    pub c_d: usize,
    pub n_oe: usize,
    pub n_od: usize,
    pub n_e: usize,
    pub n_d: usize,
}

impl ParityCensus {
    pub fn total(&self) -> usize {
        self.c_o + self.c_e + self.c_d + self.n_oe + self.n_od + self.n_e + self.n_d
    }
}

/// Seven-way parity census of a code whose codewords each lie in a single row.
pub fn parity_census(code: &Code) -> Result<ParityCensus> {
    let m = code.params().m;
    if m % 4 != 0 {
        return Err(Error::Domain(format!("parity census needs m ≡ 0 (mod 4), got {m}")));
    }
    let mut p = ParityCensus::default();
    for cw in code.codewords() {
        match parity_class(cw, m)? {
            ParityClassLabel::I => p.c_o += 1,
            ParityClassLabel::Ii => p.c_e += 1,
            ParityClassLabel::Iii => p.c_d += 1,
            ParityClassLabel::Iv => p.n_oe += 1,
            ParityClassLabel::V => p.n_od += 1,
            ParityClassLabel::Vi => p.n_e += 1,
            ParityClassLabel::Vii => p.n_d += 1,
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralFacts {
    pub is_equi_difference: bool,
    pub support: BTreeSet<u32>,
    pub difference_leave: BTreeSet<u32>,
    /// Every `g | m`, `g < m`, whose order-`g` subgroup misses the support.
    pub regular_subgroups: BTreeSet<u32>,
    pub is_tight_cac: bool,
}

/// Whether a weight-3 single-row codeword is a translate of `{0, a, 2a}`.
pub fn is_equi_difference_codeword(codeword: &Codeword, m: u32) -> bool {
    if codeword.weight() != 3 || codeword.single_row().is_none() {
        return false;
    }
    let s = codeword.slots();
    let m = u64::from(m);
    let mid = |a: u32, b: u32, c: u32| (2 * u64::from(b)) % m == (u64::from(a) + u64::from(c)) % m;
    mid(s[1], s[0], s[2]) || mid(s[0], s[1], s[2]) || mid(s[0], s[2], s[1])
}

pub fn structural_facts(code: &Code) -> Result<StructuralFacts> {
    let params = code.params();
    if params.n != 1 {
        return Err(Error::Domain(format!(
            "structural facts are defined for 1-D codes (n = {})",
            params.n
        )));
    }
    let m = params.m;
    let is_equi = code
        .codewords()
        .iter()
        .all(|cw| is_equi_difference_codeword(cw, m));
    let mut union = BTreeSet::new();
    let mut disjoint = true;
    for cw in code.codewords() {
        for d in support(cw, m) {
            if !union.insert(d) {
                disjoint = false;
            }
        }
    }
    let leave: BTreeSet<u32> = (1..m).filter(|d| !union.contains(d)).collect();
    let regular = (1..m)
        .filter(|g| m % g == 0)
        .filter(|g| {
            let step = m / g;
            (1..*g).all(|t| !union.contains(&(t * step)))
        })
        .collect();
    Ok(StructuralFacts {
        is_equi_difference: is_equi,
        is_tight_cac: is_equi && disjoint && leave.is_empty(),
        support: union,
        difference_leave: leave,
        regular_subgroups: regular,
    })
}

/// Check the counting inequalities every weight-3 code with `λ_a = 2`, `λ_c = 1`
/// must satisfy. Returns a description of each violated inequality.
///
/// The pure/mixed counts are always checked; the parity inequalities are
/// checked in addition for 1-D codes with `m ≡ 0 (mod 4)`.
pub fn census_violations(code: &Code) -> Result<Vec<String>> {
    let params = code.params();
    let (n, m) = (params.n as usize, params.m as usize);
    let c = composition_census(code)?;
    let mut out = Vec::new();
    let pure = 3 * c.alpha3 + 4 * c.alpha4 + 5 * c.alpha5 + 6 * c.alpha6 + c.beta1 + 2 * c.beta2;
    if pure > n * (m - 1) {
        out.push(format!("pure differences: {pure} > n(m-1) = {}", n * (m - 1)));
    }
    let mixed = 4 * c.beta + 6 * c.gamma;
    if mixed > n * (n - 1) * m {
        out.push(format!("mixed differences: {mixed} > n(n-1)m = {}", n * (n - 1) * m));
    }
    let halves = c.alpha3 + c.alpha5 + c.beta1;
    if halves > n {
        out.push(format!("half-period differences: {halves} > n = {n}"));
    }
    if n == 1 && m % 4 == 0 {
        let p = parity_census(code)?;
        let odd = p.c_o + 2 * p.n_oe + 2 * p.n_od;
        if 4 * odd > m {
            out.push(format!("odd halved differences: {odd} > m/4"));
        }
        let single = p.c_o + p.c_e + p.n_oe + 2 * p.n_e;
        if single > m.div_ceil(8) {
            out.push(format!("singly even halved differences: {single} > ceil(m/8)"));
        }
        let double = p.c_e + 2 * p.c_d + p.n_od + p.n_e + 3 * p.n_d;
        if double > m / 8 {
            out.push(format!("doubly even halved differences: {double} > floor(m/8)"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_d(m: u32, lambda_a: u32, sets: &[&[i64]]) -> Code {
        let p = CodeParams::weight3(1, m, lambda_a).unwrap();
        Code::new(
            p,
            sets.iter()
                .map(|s| Codeword::from_slots(0, s, m).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn shared_pure_difference_is_a_cross_violation() {
        let code = one_d(9, 3, &[&[0, 3, 6], &[0, 5, 2]]);
        let r = verify_code(&code);
        assert!(!r.cross_ok);
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.kind == WitnessKind::Cross && w.difference == 3 && w.codewords == (0, 1)));
    }

    #[test]
    fn third_period_triple_breaks_autocorrelation() {
        let code = one_d(9, 2, &[&[0, 3, 6]]);
        let r = verify_code(&code);
        assert!(!r.auto_ok);
        assert!(r.cross_ok);
        assert_eq!(r.max_auto_multiplicity, 3);
        assert_eq!(verify_by_matrix(&code).unwrap(), (false, true));
    }

    #[test]
    fn duplicate_codeword_collides() {
        let code = one_d(8, 2, &[&[0, 1, 2], &[0, 1, 2]]);
        let r = verify_code(&code);
        assert!(r.auto_ok && !r.cross_ok);
    }

    #[test]
    fn witnesses_are_capped() {
        let code = one_d(64, 2, &vec![&[0i64, 1, 3][..]; 40]);
        let r = verify_code(&code);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert!(r.truncated > 0);
    }

    #[test]
    fn matrix_correlation_examples() {
        let p = CodeParams::weight3(2, 6, 2).unwrap();
        let a = BinaryMatrix::from_codeword(&Codeword::from_slots(0, &[0, 1, 2], 6).unwrap(), &p).unwrap();
        let b = BinaryMatrix::from_codeword(&Codeword::from_slots(1, &[0, 1, 2], 6).unwrap(), &p).unwrap();
        assert_eq!(matrix_correlation(&a, &a, 0).unwrap(), 3);
        assert_eq!(matrix_correlation(&a, &a, 1).unwrap(), 2);
        for r in 0..6 {
            assert_eq!(matrix_correlation(&a, &b, r).unwrap(), 0);
        }
        let other = CodeParams::weight3(2, 7, 2).unwrap();
        let c = BinaryMatrix::from_codeword(&Codeword::from_slots(0, &[0, 1, 2], 7).unwrap(), &other).unwrap();
        assert!(matrix_correlation(&a, &c, 0).is_err());
    }

    #[test]
    fn census_examples() {
        let p = CodeParams::weight3(3, 8, 2).unwrap();
        assert_eq!(composition_census(&Code::empty(p)).unwrap(), CompositionCensus::default());
        let code = Code::new(p, vec![Codeword::from_pairs(&[(0, 0), (1, 1), (2, 3)], 8).unwrap()]).unwrap();
        let c = composition_census(&code).unwrap();
        assert_eq!((c.alpha, c.beta, c.gamma), (0, 0, 1));
    }

    #[test]
    fn parity_census_examples() {
        assert_eq!(parity_census(&one_d(8, 2, &[&[0, 1, 2]])).unwrap().c_o, 1);
        let p = parity_census(&one_d(48, 2, &[&[0, 1, 17], &[0, 5, 9]])).unwrap();
        // halved sets {1,16,17} and {4,5,9}: two odd, one doubly even
        assert_eq!(p.n_od, 2);
        assert_eq!(p.total(), 2);
        assert!(parity_census(&one_d(10, 2, &[&[0, 1, 2]])).is_err());
    }

    #[test]
    fn structural_examples() {
        let f = structural_facts(&one_d(6, 2, &[&[0, 1, 2]])).unwrap();
        assert_eq!(f.difference_leave, [3].into_iter().collect());
        let f = structural_facts(&one_d(8, 2, &[&[0, 3, 6]])).unwrap();
        assert!(f.regular_subgroups.contains(&2));
        assert_eq!(f.difference_leave, [1, 4, 7].into_iter().collect());
        let f = structural_facts(&one_d(5, 2, &[&[0, 1, 2]])).unwrap();
        assert!(f.is_tight_cac);
        assert!(f.difference_leave.is_empty());
        assert!(!structural_facts(&one_d(8, 2, &[&[0, 1, 3]])).unwrap().is_equi_difference);
    }

    #[test]
    fn tight_cac_may_use_third_period_triple() {
        let f = structural_facts(&one_d(3, 3, &[&[0, 1, 2]])).unwrap();
        assert!(f.is_tight_cac);
    }
}
