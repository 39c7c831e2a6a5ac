//! Closed-form code sizes, upper bounds and admissibility predicates.
//!
//! Every value is returned as a [`BoundReport`] tagged with the formula
//! branch that produced it, so callers can tell an exact size from a bound.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Multiplicative order of `a` modulo `m`.
pub fn mult_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Domain(format!("modulus must be at least 2, got {m}")));
    }
    let a = a % m;
    if gcd(a, m) != 1 {
        return Err(Error::Domain(format!("{a} is not a unit modulo {m}")));
    }
    let mut x = a;
    let mut l = 1;
    while x != 1 {
        x = x * a % m;
        l += 1;
    }
    Ok(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    UpperBound,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// The exact size, or the best upper bound when `kind` is not `Exact`.
    pub value: u64,
    pub kind: BoundKind,
    pub branch: String,
    pub dependencies: BTreeMap<String, u64>,
    /// Set when `kind` is `Unknown`: the upper bound that is still available.
    pub upper_bound: Option<u64>,
}

impl BoundReport {
    fn new(value: u64, kind: BoundKind, branch: impl Into<String>) -> Self {
        BoundReport {
            value,
            kind,
            branch: branch.into(),
            dependencies: BTreeMap::new(),
            upper_bound: None,
        }
    }

    fn exact(value: u64, branch: impl Into<String>) -> Self {
        Self::new(value, BoundKind::Exact, branch)
    }

    fn with(mut self, name: &str, value: u64) -> Self {
        self.dependencies.insert(name.to_string(), value);
        self
    }

    fn unknown(upper: BoundReport, branch: impl Into<String>) -> Self {
        let mut r = Self::new(upper.value, BoundKind::Unknown, branch);
        r.upper_bound = Some(upper.value);
        r.dependencies = upper.dependencies;
        r
    }

    pub fn is_exact(&self) -> bool {
        self.kind == BoundKind::Exact
    }
}

/// Optimal size of a conflict-avoiding code CAC(m, 3) for even `m`.
pub fn cac_optimal_size(m: u64) -> Result<BoundReport> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "optimal CAC(m,3) sizes are tabulated for even m only (m = {m})"
        )));
    }
    let r = match (m, m % 24) {
        (48, _) => BoundReport::exact(10, "cac/m=48"),
        (64, _) => BoundReport::exact(13, "cac/m=64"),
        _ if m % 4 == 2 => BoundReport::exact((m - 2) / 4, "cac/m2mod4"),
        (_, 0) => BoundReport::exact((7 * m + 16) / 32, "cac/m0mod24"),
        (_, 4 | 20) => BoundReport::exact((7 * m + 4) / 32, "cac/m4,20mod24"),
        (_, 8 | 16) => BoundReport::exact(7 * m / 32, "cac/m8,16mod24"),
        (_, 12) => BoundReport::exact((7 * m + 20) / 32, "cac/m12mod24"),
        _ => unreachable!("m is even"),
    };
    Ok(r)
}

/// Upper bound on the largest equi-difference 1-D (m,3,2,1) code.
pub fn psi_e_upper_bound(m: u64) -> BoundReport {
    let value = psi_e_upper_value(m);
    BoundReport::new(value, BoundKind::UpperBound, "psi_e/upper")
}

fn psi_e_upper_value(m: u64) -> u64 {
    if m % 4 != 0 {
        m.saturating_sub(1) / 4
    } else {
        m.div_ceil(8) + psi_e_upper_value(m / 4)
    }
}

/// Every prime factor `p` satisfies `p ≡ 1 (mod 4)`, and `4 | ord_p(2)`
/// whenever `p ≡ 1 (mod 8)`.
pub(crate) fn tight_prime_clauses(x: u64) -> Vec<PrimeClause> {
    factorize(x)
        .into_iter()
        .map(|(p, exponent)| {
            let ord = if p > 2 { mult_order(2, p).ok() } else { None };
            let satisfied = p % 4 == 1 && (p % 8 != 1 || ord.is_some_and(|o| o % 4 == 0));
            PrimeClause {
                prime: p,
                exponent,
                ord2: ord,
                satisfied,
            }
        })
        .collect()
}

fn clauses_hold(x: u64) -> bool {
    tight_prime_clauses(x).iter().all(|c| c.satisfied)
}

/// `4^s · r` with `4 ∤ r`.
pub fn split_power4(mut m: u64) -> (u32, u64) {
    assert!(m > 0);
    let mut s = 0;
    while m % 4 == 0 {
        m /= 4;
        s += 1;
    }
    (s, m)
}

/// `(2^(2s-1) - 2) r / 3`, the contribution of the quadrupling steps beyond the first.
fn tower_term(s: u32, r: u64) -> u64 {
    debug_assert!(s >= 1);
    ((1u64 << (2 * s - 1)) - 2) * r / 3
}

/// Exact size of an optimal equi-difference 1-D (m,3,2,1) code where it is known.
pub fn psi_e_exact(m: u64) -> BoundReport {
    if m == 0 {
        return BoundReport::unknown(psi_e_upper_bound(0), "psi_e/unknown");
    }
    let (s, r) = split_power4(m);
    let report = if r % 4 == 2 {
        let v = ((1u64 << (2 * s + 1)) * r + r - 6) / 12;
        BoundReport::exact(v, "psi_e/r2mod4")
    } else if (r % 12 == 1 || r % 12 == 5) && clauses_hold(r) {
        let v = if s == 0 {
            (r - 1) / 4
        } else {
            tower_term(s, r) + (3 * r + 1) / 4
        };
        BoundReport::exact(v, "psi_e/tight")
    } else if r % 12 == 3 && clauses_hold(r / 3) {
        let v = if s == 0 {
            (r - 3) / 4
        } else {
            tower_term(s, r) + (3 * r - 1) / 4
        };
        BoundReport::exact(v, "psi_e/tight-minus-third")
    } else if r >= 5 && is_prime(r) {
        let me = me_prime(r).expect("r is a prime >= 5").value;
        let v = if s == 0 {
            me
        } else {
            tower_term(s, r) + (r + 1) / 2 + me
        };
        BoundReport::exact(v, "psi_e/prime").with("me", me)
    } else {
        return BoundReport::unknown(psi_e_upper_bound(m), "psi_e/unknown");
    };
    report.with("s", u64::from(s)).with("r", r)
}

/// Size of an optimal equi-difference CAC(p, 3) for a prime `p ≥ 5`.
pub fn me_prime(p: u64) -> Result<BoundReport> {
    if p < 5 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not a prime >= 5")));
    }
    let ord = mult_order(2, p)?;
    let value = if ord % 2 == 0 {
        (p - 1) / ord * (ord / 4)
    } else {
        (p - 1) / (2 * ord) * (ord / 2)
    };
    Ok(BoundReport::exact(value, "me/prime").with("ord2", ord))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeClause {
    pub prime: u64,
    pub exponent: u32,
    /// `ord_p(2)` for odd primes.
    pub ord2: Option<u64>,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub factors: Vec<PrimeClause>,
    /// Size of a tight equi-difference CAC(m,3) when one exists.
    pub tight_size: Option<u64>,
}

/// Existence of a tight equi-difference CAC(m, 3).
pub fn tight_admissible(m: u64) -> AdmissibilityReport {
    if m == 4 {
        return AdmissibilityReport {
            admissible: true,
            factors: vec![PrimeClause {
                prime: 2,
                exponent: 2,
                ord2: None,
                satisfied: true,
            }],
            tight_size: Some(1),
        };
    }
    let mut factors = tight_prime_clauses(m);
    // one factor of 3 is allowed outside the clause
    for f in factors.iter_mut() {
        if f.prime == 3 {
            f.satisfied = f.exponent == 1;
        }
    }
    let admissible = m >= 3 && factors.iter().all(|f| f.satisfied);
    let tight_size = admissible.then(|| match m % 12 {
        3 => (m + 1) / 4,
        _ => (m - 1) / 4,
    });
    AdmissibilityReport {
        admissible,
        factors,
        tight_size,
    }
}

/// Membership in the set `S` of moduli for which the 3-row family with
/// `m ≡ 4, 20 (mod 48)` is optimal.
pub fn in_s(s: u64) -> bool {
    if s == 0 || !(s % 12 == 1 || s % 12 == 5) {
        return false;
    }
    factorize(s).iter().all(|&(p, _)| {
        p % 8 == 5 || (p % 8 == 1 && mult_order(2, p).is_ok_and(|o| o % 4 == 0))
    })
}

/// `Ψ^e(m)` when exact, else its upper bound, with the kind used.
fn psi_e_best(m: u64) -> (u64, bool) {
    let r = psi_e_exact(m);
    (r.value, r.is_exact())
}

/// Best available upper bound on `Φ(n×m,3,2,1)`.
pub fn phi_upper_bound(n: u64, m: u64) -> Result<BoundReport> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("n and m must be positive".into()));
    }
    let (psi, psi_exact) = psi_e_best(m);
    let general = if m % 2 == 0 {
        n * (n * m + 2 * psi) / 6
    } else {
        n * (n * m + 2 * psi - 1) / 6
    };
    let mut candidates: Vec<(u64, &str)> = vec![(general, "phi-ub/pure-mixed-count")];
    if n == 2 {
        let v = if m % 2 == 0 { 3 * m / 4 } else { (3 * m - 2) / 4 };
        candidates.push((v, "phi-ub/two-rows"));
    }
    if n == 1 && m % 4 == 0 {
        let v = if m % 8 == 0 { 7 * m / 32 } else { (7 * m + 4) / 32 };
        candidates.push((v, "phi-ub/one-row-parity"));
    }
    if (n, m) == (3, 4) {
        candidates.push((6, "phi-ub/3x4"));
    }
    if (n, m) == (2, 4) {
        candidates.push((2, "phi-ub/2x4"));
    }
    let &(value, branch) = candidates
        .iter()
        .min_by_key(|(v, _)| *v)
        .expect("at least one candidate");
    let name = if psi_exact { "psi_e" } else { "psi_e_upper" };
    Ok(BoundReport::new(value, BoundKind::UpperBound, branch).with(name, psi))
}

/// Exact `Φ(n×m,3,2,1)` on the parameter region where it is determined.
pub fn phi_exact(n: u64, m: u64) -> Result<BoundReport> {
    let upper = phi_upper_bound(n, m)?;
    let exact = |v: u64, b: &str| Ok(BoundReport::exact(v, b).with("upper_bound", upper.value));
    if n == 1 && m % 4 == 0 {
        return match m {
            64 => exact(13, "phi/1x64"),
            _ if m % 8 == 0 => exact(7 * m / 32, "phi/n1/m0mod8"),
            _ => exact((7 * m + 4) / 32, "phi/n1/m4mod8"),
        };
    }
    if n == 2 && m % 4 == 0 {
        return if m == 4 {
            exact(2, "phi/2x4")
        } else {
            exact(3 * m / 4, "phi/n2/m0mod4")
        };
    }
    if (n, m) == (3, 4) {
        return exact(6, "phi/3x4");
    }
    if n % 3 == 0 && n != 6 && n != 9 {
        if m % 16 == 8 {
            return exact(n * (8 * n * m + 3 * m - 8) / 48, "phi/n0mod3/m8mod16");
        }
        if m % 64 == 32 {
            return exact(n * (32 * n * m + 11 * m - 32) / 192, "phi/n0mod3/m32mod64");
        }
        if m > 4 && (m % 48 == 4 || m % 48 == 20) && in_s(m / 4) {
            return exact(n * (8 * n * m + 3 * m + 4) / 48, "phi/n0mod3/m4,20mod48");
        }
    }
    Ok(BoundReport::unknown(upper, "phi/unknown"))
}

/// Existence of an m-cyclic 3-GDD of type `(vm)^u`.
pub fn gdd_exists(v: u64, u: u64, m: u64) -> Result<bool> {
    if u <= 2 {
        return Err(Error::Domain(format!("a 3-GDD needs at least 3 groups (u = {u})")));
    }
    if v == 0 || m == 0 {
        return Err(Error::InvalidParameter("v and m must be positive".into()));
    }
    if u == 3 {
        return Ok(m % 2 == 1 || v % 2 == 0);
    }
    let ok = ((u - 1) * v * m) % 2 == 0
        && (u * (u - 1) * v * m) % 3 == 0
        && !((u % 4 == 2 || u % 4 == 3) && m % 4 == 2 && v % 2 == 1);
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(mult_order(2, 5).unwrap(), 4);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(1, 9).unwrap(), 1);
        assert_eq!(mult_order(2, 17).unwrap(), 8);
        assert!(mult_order(2, 8).is_err());
        assert!(mult_order(3, 1).is_err());
    }

    #[test]
    fn orders_match_brute_force() {
        for m in 2..200u64 {
            for a in 1..m {
                let got = mult_order(a, m);
                if gcd(a, m) != 1 {
                    assert!(got.is_err());
                    continue;
                }
                let brute = (1..=m)
                    .find(|&l| (0..l).fold(1u64, |acc, _| acc * a % m) == 1)
                    .unwrap();
                assert_eq!(got.unwrap(), brute, "ord_{m}({a})");
            }
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        for n in 1..2000u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn cac_sizes() {
        assert_eq!(cac_optimal_size(48).unwrap().value, 10);
        assert_eq!(cac_optimal_size(64).unwrap().value, 13);
        assert_eq!(cac_optimal_size(6).unwrap().value, 1);
        assert!(matches!(cac_optimal_size(7), Err(Error::Unsupported(_))));
    }

    #[test]
    fn psi_upper() {
        assert_eq!(psi_e_upper_bound(6).value, 1);
        assert_eq!(psi_e_upper_bound(8).value, 1);
        assert_eq!(psi_e_upper_bound(4).value, 1);
    }

    #[test]
    fn psi_exact_values() {
        assert_eq!(psi_e_exact(8).value, 1);
        assert_eq!(psi_e_exact(20).value, 4);
        assert_eq!(psi_e_exact(52).value, 10);
        assert_eq!(psi_e_exact(3).value, 0);
        assert_eq!(psi_e_exact(32).value, 5);
        assert!(psi_e_exact(8).is_exact());
        // 9 = 3^2: no branch applies
        let r = psi_e_exact(9);
        assert_eq!(r.kind, BoundKind::Unknown);
        assert_eq!(r.upper_bound, Some(2));
    }

    #[test]
    fn me_values() {
        assert_eq!(me_prime(5).unwrap().value, 1);
        assert_eq!(me_prime(7).unwrap().value, 1);
        assert_eq!(me_prime(13).unwrap().value, 3);
        assert!(me_prime(9).is_err());
        assert!(me_prime(3).is_err());
    }

    #[test]
    fn admissibility() {
        let r = tight_admissible(13);
        assert!(r.admissible);
        assert_eq!(r.tight_size, Some(3));
        assert_eq!(tight_admissible(4).tight_size, Some(1));
        assert!(!tight_admissible(7).admissible);
        assert!(tight_admissible(3).admissible);
        assert!(tight_admissible(15).admissible);
        assert!(!tight_admissible(9).admissible);
        assert!(!tight_admissible(1).admissible);
        assert!(!tight_admissible(8).admissible);
        // 73 ≡ 1 (mod 8) and ord_73(2) = 9
        assert!(!tight_admissible(73).admissible);
    }

    #[test]
    fn set_s() {
        assert!(in_s(5));
        assert!(in_s(13));
        assert!(!in_s(3));
        assert!(in_s(17));
        assert!(!in_s(73));
    }

    #[test]
    fn phi_bounds() {
        assert_eq!(phi_upper_bound(2, 8).unwrap().value, 6);
        assert_eq!(phi_upper_bound(1, 64).unwrap().value, 14);
        assert_eq!(phi_upper_bound(3, 8).unwrap().value, 13);
        assert_eq!(phi_upper_bound(3, 4).unwrap().value, 6);
        assert_eq!(phi_upper_bound(2, 4).unwrap().value, 2);
    }

    #[test]
    fn phi_exact_values() {
        assert_eq!(phi_exact(3, 8).unwrap().value, 13);
        assert_eq!(phi_exact(3, 32).unwrap().value, 53);
        assert_eq!(phi_exact(12, 8).unwrap().value, 196);
        assert_eq!(phi_exact(3, 20).unwrap().value, 34);
        assert_eq!(phi_exact(3, 52).unwrap().value, 88);
        assert_eq!(phi_exact(1, 64).unwrap().value, 13);
        let r = phi_exact(5, 8).unwrap();
        assert_eq!(r.kind, BoundKind::Unknown);
        assert!(r.upper_bound.is_some());
        assert_eq!(phi_exact(6, 8).unwrap().kind, BoundKind::Unknown);
        assert_eq!(phi_exact(12, 4).unwrap().kind, BoundKind::Unknown);
    }

    #[test]
    fn gdd_predicate() {
        assert!(gdd_exists(3, 4, 8).unwrap());
        assert!(!gdd_exists(1, 3, 2).unwrap());
        assert!(gdd_exists(6, 4, 4).unwrap());
        assert!(gdd_exists(1, 3, 5).unwrap());
        assert!(matches!(gdd_exists(1, 2, 5), Err(Error::Domain(_))));
    }
}
