//! Cells, codewords and codes over `I_n × Z_m`, together with the difference
//! calculus used to reason about their correlation properties.
//!
//! A codeword is stored as the sorted set of its nonzero cells. Residues are
//! always kept in `[0, m)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue → multiplicity.
pub type Multiset = BTreeMap<u32, u32>;

/// Reduce an arbitrary integer into `[0, m)`.
pub fn residue(x: i64, m: u32) -> u32 {
    x.rem_euclid(i64::from(m)) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub lambda_a: u32,
    pub lambda_c: u32,
}

impl CodeParams {
    pub fn new(n: u32, m: u32, k: u32, lambda_a: u32) -> Result<Self> {
        let params = CodeParams {
            n,
            m,
            k,
            lambda_a,
            lambda_c: 1,
        };
        params.validate()?;
        Ok(params)
    }

    /// Weight-3 parameters with cross-correlation 1.
    pub fn weight3(n: u32, m: u32, lambda_a: u32) -> Result<Self> {
        Self::new(n, m, 3, lambda_a)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::InvalidParameter(format!(
                "n and m must be positive (n={}, m={})",
                self.n, self.m
            )));
        }
        if self.k == 0 {
            return Err(Error::InvalidParameter("weight must be positive".into()));
        }
        if self.lambda_a == 0 {
            return Err(Error::InvalidParameter("lambda_a must be positive".into()));
        }
        if self.lambda_c != 1 {
            return Err(Error::InvalidParameter(format!(
                "only lambda_c = 1 is supported (got {})",
                self.lambda_c
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub slot: u32,
}

impl Cell {
    pub fn new(row: u32, slot: u32) -> Self {
        Cell { row, slot }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.slot)
    }
}

/// A set of distinct cells, kept sorted by `(row, slot)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword(Vec<Cell>);

impl Codeword {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::InvalidParameter("codeword has no cells".into()));
        }
        cells.sort_unstable();
        if cells.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "codeword has repeated cells: {}",
                Codeword(cells)
            )));
        }
        Ok(Codeword(cells))
    }

    /// Build from `(row, slot)` pairs; slots are reduced mod `m`.
    pub fn from_pairs(pairs: &[(u32, i64)], m: u32) -> Result<Self> {
        Self::new(pairs.iter().map(|&(r, s)| Cell::new(r, residue(s, m))))
    }

    /// Single-row codeword from slot values (reduced mod `m`).
    pub fn from_slots(row: u32, slots: &[i64], m: u32) -> Result<Self> {
        Self::new(slots.iter().map(|&s| Cell::new(row, residue(s, m))))
    }

    /// `{0, a, 2a}` in `row`.
    pub fn equi(row: u32, a: i64, m: u32) -> Result<Self> {
        Self::from_slots(row, &[0, a, 2 * a], m)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> BTreeSet<u32> {
        self.0.iter().map(|c| c.row).collect()
    }

    /// The row of a codeword whose cells all share one row.
    pub fn single_row(&self) -> Option<u32> {
        let r = self.0[0].row;
        self.0.iter().all(|c| c.row == r).then_some(r)
    }

    pub fn slots(&self) -> Vec<u32> {
        self.0.iter().map(|c| c.slot).collect()
    }

    pub fn translate(&self, s: u32, m: u32) -> Codeword {
        let mut cells: Vec<Cell> = self
            .0
            .iter()
            .map(|c| Cell::new(c.row, (c.slot + s % m) % m))
            .collect();
        cells.sort_unstable();
        Codeword(cells)
    }

    pub fn map_rows(&self, f: impl Fn(u32) -> u32) -> Codeword {
        let mut cells: Vec<Cell> = self.0.iter().map(|c| Cell::new(f(c.row), c.slot)).collect();
        cells.sort_unstable();
        Codeword(cells)
    }

    pub fn check_params(&self, params: &CodeParams) -> Result<()> {
        for c in &self.0 {
            if c.row >= params.n || c.slot >= params.m {
                return Err(Error::InvalidParameter(format!(
                    "cell {c} outside I_{} x Z_{}",
                    params.n, params.m
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A parameter header plus an ordered codeword family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    params: CodeParams,
    codewords: Vec<Codeword>,
}

impl Code {
    pub fn new(params: CodeParams, codewords: Vec<Codeword>) -> Result<Self> {
        params.validate()?;
        for cw in &codewords {
            cw.check_params(&params)?;
            if cw.weight() != params.k as usize {
                return Err(Error::InvalidParameter(format!(
                    "codeword {cw} has weight {} but k = {}",
                    cw.weight(),
                    params.k
                )));
            }
        }
        Ok(Code { params, codewords })
    }

    pub fn empty(params: CodeParams) -> Self {
        Code {
            params,
            codewords: Vec::new(),
        }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn into_codewords(self) -> Vec<Codeword> {
        self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// The codewords lying entirely in `row`, viewed as a 1-D code on `Z_m`.
    pub fn row_subcode(&self, row: u32) -> Code {
        let params = CodeParams {
            n: 1,
            ..self.params
        };
        let codewords = self
            .codewords
            .iter()
            .filter(|cw| cw.single_row() == Some(row))
            .map(|cw| cw.map_rows(|_| 0))
            .collect();
        Code { params, codewords }
    }

    /// Same code with every codeword replaced by its orbit representative, sorted.
    pub fn normalized(&self) -> Code {
        let mut codewords: Vec<Codeword> = self
            .codewords
            .iter()
            .map(|cw| normalize(cw, self.params.m))
            .collect();
        codewords.sort();
        Code {
            params: self.params,
            codewords,
        }
    }

    pub fn with_lambda_a(mut self, lambda_a: u32) -> Code {
        self.params.lambda_a = lambda_a;
        self
    }
}

/// `Δ_ij` for every ordered row pair occurring in one codeword.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DifferenceProfile {
    pub entries: BTreeMap<(u32, u32), Multiset>,
}

impl DifferenceProfile {
    pub fn get(&self, i: u32, j: u32) -> Option<&Multiset> {
        self.entries.get(&(i, j))
    }

    /// Total number of differences counted with multiplicity.
    pub fn total_size(&self) -> u32 {
        self.entries.values().flat_map(|ms| ms.values()).sum()
    }

    /// `∪_i Δ_ii` as a multiset.
    pub fn pure_union(&self) -> Multiset {
        let mut out = Multiset::new();
        for ((i, j), ms) in &self.entries {
            if i == j {
                for (&d, &c) in ms {
                    *out.entry(d).or_default() += c;
                }
            }
        }
        out
    }

    /// `λ(B)`: the maximum multiplicity in `∪_i Δ_ii(B)` (0 when there are no pure differences).
    pub fn max_pure_multiplicity(&self) -> u32 {
        self.pure_union().values().copied().max().unwrap_or(0)
    }
}

pub fn difference_profile(codeword: &Codeword, params: &CodeParams) -> Result<DifferenceProfile> {
    codeword.check_params(params)?;
    Ok(profile_unchecked(codeword, params.m))
}

pub(crate) fn profile_unchecked(codeword: &Codeword, m: u32) -> DifferenceProfile {
    let mut entries: BTreeMap<(u32, u32), Multiset> = BTreeMap::new();
    let cells = codeword.cells();
    for (a, x) in cells.iter().enumerate() {
        for (b, y) in cells.iter().enumerate() {
            if a == b {
                continue;
            }
            let d = residue(i64::from(x.slot) - i64::from(y.slot), m);
            *entries
                .entry((x.row, y.row))
                .or_default()
                .entry(d)
                .or_default() += 1;
        }
    }
    DifferenceProfile { entries }
}

/// Multiset of differences of a set of slots in `Z_m`.
pub fn slot_differences(slots: &[u32], m: u32) -> Multiset {
    let mut out = Multiset::new();
    for (a, &x) in slots.iter().enumerate() {
        for (b, &y) in slots.iter().enumerate() {
            if a != b {
                *out.entry(residue(i64::from(x) - i64::from(y), m)).or_default() += 1;
            }
        }
    }
    out
}

/// `supp(ΔX)` for the slot set of a codeword (rows ignored).
pub fn support(codeword: &Codeword, m: u32) -> BTreeSet<u32> {
    slot_differences(&codeword.slots(), m).into_keys().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Beta {
    /// The within-row pair differs by exactly `m/2`.
    One,
    Two,
}

/// Codeword type for weight-3 codewords.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeCensusLabel {
    /// All three cells in one row; carries `|supp(ΔX)|`.
    Type1(u8),
    /// Two cells in one row, the third elsewhere.
    Type2(Beta),
    /// Three distinct rows.
    Type3,
}

pub fn classify_codeword(codeword: &Codeword, params: &CodeParams) -> Result<TypeCensusLabel> {
    codeword.check_params(params)?;
    if codeword.weight() != 3 {
        return Err(Error::Domain(format!(
            "classification needs weight 3, got {}",
            codeword.weight()
        )));
    }
    let m = params.m;
    let c = codeword.cells();
    let label = if c[0].row == c[1].row && c[1].row == c[2].row {
        TypeCensusLabel::Type1(support(codeword, m).len() as u8)
    } else if c[0].row != c[1].row && c[1].row != c[2].row && c[0].row != c[2].row {
        TypeCensusLabel::Type3
    } else {
        // cells are sorted by row, so the repeated row is adjacent
        let (x, y) = if c[0].row == c[1].row {
            (c[0].slot, c[1].slot)
        } else {
            (c[1].slot, c[2].slot)
        };
        let half = m % 2 == 0 && residue(i64::from(y) - i64::from(x), m) == m / 2;
        TypeCensusLabel::Type2(if half { Beta::One } else { Beta::Two })
    };
    Ok(label)
}

/// Residue class of a halved difference when `m ≡ 0 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParityKind {
    /// Odd.
    O,
    /// Singly even, `≡ 2 (mod 4)`.
    E,
    /// Doubly even, `≡ 0 (mod 4)`.
    D,
}

pub fn parity_kind(d: u32) -> ParityKind {
    match d % 4 {
        0 => ParityKind::D,
        2 => ParityKind::E,
        _ => ParityKind::O,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClassLabel {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
}

impl fmt::Display for ParityClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParityClassLabel::I => "i",
            ParityClassLabel::Ii => "ii",
            ParityClassLabel::Iii => "iii",
            ParityClassLabel::Iv => "iv",
            ParityClassLabel::V => "v",
            ParityClassLabel::Vi => "vi",
            ParityClassLabel::Vii => "vii",
        };
        f.write_str(s)
    }
}

fn single_row_mod4(codeword: &Codeword, m: u32) -> Result<()> {
    if codeword.single_row().is_none() {
        return Err(Error::Domain(format!(
            "{codeword} spans several rows; halved differences need a single-row codeword"
        )));
    }
    if m % 4 != 0 {
        return Err(Error::Domain(format!("m = {m} is not divisible by 4")));
    }
    Ok(())
}

/// `Δ2(X)`: the differences of `X` lying in `[1, m/2]`, as a plain set.
pub fn halved_difference_set(codeword: &Codeword, m: u32) -> Result<BTreeSet<u32>> {
    single_row_mod4(codeword, m)?;
    Ok(support(codeword, m)
        .into_iter()
        .filter(|&d| d >= 1 && d <= m / 2)
        .collect())
}

pub fn parity_class(codeword: &Codeword, m: u32) -> Result<ParityClassLabel> {
    single_row_mod4(codeword, m)?;
    if codeword.weight() != 3 {
        return Err(Error::Domain("parity classes are defined for weight 3".into()));
    }
    if support(codeword, m).len() == 2 {
        return Err(Error::Domain(format!(
            "{codeword} is a translate of {{0,m/3,2m/3}}"
        )));
    }
    let half = halved_difference_set(codeword, m)?;
    let mut kinds: Vec<ParityKind> = half.iter().map(|&d| parity_kind(d)).collect();
    kinds.sort_unstable();
    use ParityKind::{D, E, O};
    let label = match kinds.as_slice() {
        [O, E] => ParityClassLabel::I,
        [E, D] => ParityClassLabel::Ii,
        [D, D] => ParityClassLabel::Iii,
        [O, O, E] => ParityClassLabel::Iv,
        [O, O, D] => ParityClassLabel::V,
        [E, E, D] => ParityClassLabel::Vi,
        [D, D, D] => ParityClassLabel::Vii,
        other => {
            return Err(Error::Domain(format!(
                "halved difference set {half:?} of {codeword} has unexpected parity pattern {other:?}"
            )))
        }
    };
    Ok(label)
}

/// Lexicographically least slot-translate of `codeword`.
pub fn normalize(codeword: &Codeword, m: u32) -> Codeword {
    // The least translate starts with its first row at slot 0, so only the
    // translations that move a first-row cell to 0 need to be compared.
    let first_row = codeword.cells()[0].row;
    codeword
        .cells()
        .iter()
        .take_while(|c| c.row == first_row)
        .map(|c| codeword.translate((m - c.slot) % m, m))
        .min()
        .expect("codeword is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(pairs: &[(u32, i64)], m: u32) -> Codeword {
        Codeword::from_pairs(pairs, m).unwrap()
    }

    fn ms(pairs: &[(u32, u32)]) -> Multiset {
        pairs.iter().copied().collect()
    }

    #[test]
    fn profile_of_single_row_triple() {
        let p = CodeParams::weight3(1, 8, 2).unwrap();
        let prof = difference_profile(&cw(&[(0, 0), (0, 3), (0, 6)], 8), &p).unwrap();
        // ordered pairs: 3-0, 6-0, 0-3, 6-3, 0-6, 3-6
        assert_eq!(prof.get(0, 0).unwrap(), &ms(&[(2, 1), (3, 2), (5, 2), (6, 1)]));
        assert_eq!(prof.entries.len(), 1);
        assert_eq!(
            prof.get(0, 0).unwrap().keys().copied().collect::<Vec<_>>(),
            vec![2, 3, 5, 6]
        );
    }

    #[test]
    fn profile_of_column() {
        let p = CodeParams::weight3(3, 4, 2).unwrap();
        let prof = difference_profile(&cw(&[(0, 0), (1, 0), (2, 0)], 4), &p).unwrap();
        assert_eq!(prof.entries.len(), 6);
        for (&(i, j), set) in &prof.entries {
            assert_ne!(i, j);
            assert_eq!(set, &ms(&[(0, 1)]));
        }
    }

    #[test]
    fn third_period_triple_repeats_difference() {
        let p = CodeParams::weight3(1, 9, 2).unwrap();
        let prof = difference_profile(&cw(&[(0, 0), (0, 3), (0, 6)], 9), &p).unwrap();
        assert_eq!(prof.get(0, 0).unwrap()[&3], 3);
        assert_eq!(prof.max_pure_multiplicity(), 3);
    }

    #[test]
    fn profile_rejects_out_of_range_cells() {
        let p = CodeParams::weight3(1, 8, 2).unwrap();
        let bad = Codeword::new([Cell::new(1, 0), Cell::new(0, 1), Cell::new(0, 2)]).unwrap();
        assert!(matches!(
            difference_profile(&bad, &p),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn halved_sets() {
        let m = 48;
        for i in 1..=m / 4 {
            let h = halved_difference_set(&Codeword::equi(0, i64::from(i), m).unwrap(), m).unwrap();
            assert_eq!(h, [i, 2 * i].into_iter().collect());
        }
        for i in (m / 4 + 1)..(m / 2) {
            if i == m / 3 {
                continue;
            }
            let h = halved_difference_set(&Codeword::equi(0, i64::from(i), m).unwrap(), m).unwrap();
            assert_eq!(h, [i, m - 2 * i].into_iter().collect());
        }
        let h = halved_difference_set(&Codeword::from_slots(0, &[0, 1, 17], 48).unwrap(), 48).unwrap();
        assert_eq!(h, [1, 16, 17].into_iter().collect());
    }

    #[test]
    fn halved_set_domain_errors() {
        let two_rows = cw(&[(0, 0), (0, 1), (1, 2)], 8);
        assert!(matches!(halved_difference_set(&two_rows, 8), Err(Error::Domain(_))));
        let one_row = cw(&[(0, 0), (0, 1), (0, 2)], 10);
        assert!(matches!(halved_difference_set(&one_row, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn classification() {
        let p = CodeParams::weight3(3, 8, 2).unwrap();
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (0, 2), (0, 4)], 8), &p).unwrap(),
            TypeCensusLabel::Type1(3)
        );
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (0, 2), (1, 5)], 8), &p).unwrap(),
            TypeCensusLabel::Type2(Beta::Two)
        );
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (0, 4), (1, 5)], 8), &p).unwrap(),
            TypeCensusLabel::Type2(Beta::One)
        );
        // repeated row is not the first one in sort order
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (2, 0), (2, 4)], 8), &p).unwrap(),
            TypeCensusLabel::Type2(Beta::One)
        );
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (1, 1), (2, 3)], 8), &p).unwrap(),
            TypeCensusLabel::Type3
        );
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (0, 1), (0, 3)], 8), &p).unwrap(),
            TypeCensusLabel::Type1(6)
        );
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (0, 1), (0, 4)], 8), &p).unwrap(),
            TypeCensusLabel::Type1(5)
        );
        assert_eq!(
            classify_codeword(&cw(&[(0, 0), (0, 1), (0, 2)], 8), &p).unwrap(),
            TypeCensusLabel::Type1(4)
        );
    }

    #[test]
    fn odd_modulus_has_no_beta_one() {
        let p = CodeParams::weight3(2, 9, 2).unwrap();
        for x in 1..9 {
            let label = classify_codeword(&cw(&[(0, 0), (0, x), (1, 0)], 9), &p).unwrap();
            assert_eq!(label, TypeCensusLabel::Type2(Beta::Two));
        }
    }

    #[test]
    fn parity_classes() {
        assert_eq!(
            parity_class(&Codeword::from_slots(0, &[0, 1, 2], 8).unwrap(), 8).unwrap(),
            ParityClassLabel::I
        );
        assert_eq!(
            parity_class(&Codeword::from_slots(0, &[0, 2, 4], 16).unwrap(), 16).unwrap(),
            ParityClassLabel::Ii
        );
        assert_eq!(
            parity_class(&Codeword::from_slots(0, &[0, 12, 24], 48).unwrap(), 48).unwrap(),
            ParityClassLabel::Iii
        );
        assert_eq!(
            parity_class(&Codeword::from_slots(0, &[0, 1, 17], 48).unwrap(), 48).unwrap(),
            ParityClassLabel::V
        );
        assert_eq!(
            parity_class(&Codeword::from_slots(0, &[0, 1, 3], 8).unwrap(), 8).unwrap(),
            ParityClassLabel::Iv
        );
        assert!(parity_class(&Codeword::from_slots(0, &[0, 16, 32], 48).unwrap(), 48).is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(
            normalize(&cw(&[(0, 5), (0, 6), (0, 7)], 8), 8),
            cw(&[(0, 0), (0, 1), (0, 2)], 8)
        );
        let min = cw(&[(0, 0), (0, 1), (0, 2)], 8);
        assert_eq!(normalize(&min, 8), min);
        let p2 = Codeword::new([Cell::new(0, 2), Cell::new(1, 3)]).unwrap();
        assert_eq!(normalize(&p2, 4), Codeword::new([Cell::new(0, 0), Cell::new(1, 1)]).unwrap());
    }

    #[test]
    fn normalization_matches_brute_force() {
        let x = cw(&[(0, 3), (0, 7), (1, 1), (2, 6)], 9);
        let brute = (0..9).map(|s| x.translate(s, 9)).min().unwrap();
        assert_eq!(normalize(&x, 9), brute);
    }

    #[test]
    fn codeword_rejects_duplicates() {
        assert!(Codeword::from_pairs(&[(0, 1), (0, 9)], 8).is_err());
    }

    #[test]
    fn code_checks_weight_and_range() {
        let p = CodeParams::weight3(1, 8, 2).unwrap();
        assert!(Code::new(p, vec![cw(&[(0, 0), (0, 1)], 8)]).is_err());
        assert!(Code::new(p, vec![cw(&[(0, 0), (0, 1), (1, 2)], 8)]).is_err());
        assert!(Code::new(p, vec![cw(&[(0, 0), (0, 1), (0, 2)], 8)]).is_ok());
    }
}
