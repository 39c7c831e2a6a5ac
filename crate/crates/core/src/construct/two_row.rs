//! Optimal `(2 × m, 3, 2, 1)`-OOCs for `m ≡ 0 (mod 4)`.

use super::{closed, exact, finish, odd, Builder, ConstructionResult};
use crate::code::{Code, CodeParams};
use crate::error::{Error, Result};

const BRANCH: &str = "2xm";

pub fn ooc_2xm(m: u32) -> Result<ConstructionResult> {
    if m == 0 || m % 4 != 0 {
        return Err(Error::InvalidParameter(format!("ooc_2xm needs m ≡ 0 (mod 4), got {m}")));
    }
    let mut b = Builder::new(m, BRANCH);
    let mm = i64::from(m);
    let size = if m == 4 {
        b.add([(0, 0), (0, 1), (0, 2)])?;
        b.add([(1, 0), (1, 1), (1, 2)])?;
        2
    } else if m % 8 == 0 {
        zero_mod_8(&mut b, mm)?;
        3 * m / 4
    } else {
        four_mod_8(&mut b, mm)?;
        3 * m / 4
    };
    let code = Code::new(CodeParams::weight3(2, m, 2)?, b.into_codewords())?;
    finish(code, size as usize, None, BRANCH)
}

fn zero_mod_8(b: &mut Builder, m: i64) -> Result<()> {
    let q = |num: i64, den: i64| exact(num, den);
    let first: Vec<i64> = if m == 8 {
        vec![3]
    } else {
        odd(3, q(m, 4) - 1).chain([q(m, 2) - 1]).collect()
    };
    for i in first {
        b.add([(0, 0), (0, i), (0, 2 * i)])?;
    }
    for i in odd(q(m, 4) + 1, q(m, 2) - 1) {
        b.add([(1, 0), (1, i), (1, 2 * i)])?;
    }
    if m != 8 {
        for i in closed(q(m, 8), q(m, 4) - 2) {
            b.add([(0, 0), (0, 1 + 2 * i), (1, q(m, 4) - 1 + i)])?;
        }
    }
    for i in closed(0, q(m, 8) - 1) {
        b.add([(1, 0), (1, 1 + 2 * i), (0, q(3 * m, 4) + 2 + i)])?;
    }
    for i in closed(0, q(m, 8) - 1) {
        b.add([(0, 0), (0, 4 + 4 * i), (1, q(3 * m, 4) + 1 + 2 * i)])?;
    }
    for i in closed(0, q(m, 8) - 1) {
        b.add([(1, 0), (1, 4 + 4 * i), (0, q(m, 4) + 4 + 2 * i)])?;
    }
    b.add([(0, 0), (0, 1), (1, q(3 * m, 4) - 1)])
}

fn four_mod_8(b: &mut Builder, m: i64) -> Result<()> {
    let q = |num: i64, den: i64| exact(num, den);
    if m != 12 {
        for i in odd(q(m, 4) + 2, q(m, 2) - 3) {
            b.add([(0, 0), (0, i), (0, 2 * i)])?;
        }
    }
    for i in odd(1, q(m, 4)) {
        b.add([(1, 0), (1, i), (1, 2 * i)])?;
    }
    for i in closed(0, q(m - 4, 8)).filter(|&i| i != 1) {
        b.add([(0, 0), (0, 1 + 2 * i), (1, q(m, 4) + i)])?;
    }
    for i in closed(q(m + 4, 8), q(m, 4) - 1) {
        b.add([(1, 0), (1, 1 + 2 * i), (0, q(3 * m, 4) + 1 + i)])?;
    }
    if m != 12 {
        for i in closed(1, q(m - 12, 8)) {
            b.add([(0, 0), (0, 4 + 4 * i), (1, q(3 * m, 4) + 1 + 2 * i)])?;
        }
    }
    for i in closed(0, q(m - 12, 8)) {
        b.add([(1, 0), (1, 4 + 4 * i), (0, q(m, 4) + 2 + 2 * i)])?;
    }
    b.add([(0, 0), (0, q(m, 2) - 1), (1, q(m, 4) - 2)])?;
    b.add([(0, 0), (0, 3), (1, q(3 * m, 4))])?;
    b.add([(0, 0), (0, q(m, 2)), (1, q(3 * m, 4) + 1)])?;
    b.add([(0, 0), (0, 2), (0, 4)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        assert_eq!(ooc_2xm(4).unwrap().code.len(), 2);
        assert_eq!(ooc_2xm(8).unwrap().code.len(), 6);
        assert_eq!(ooc_2xm(12).unwrap().code.len(), 9);
        assert!(ooc_2xm(6).is_err());
    }
}
