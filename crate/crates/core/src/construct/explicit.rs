//! Small codes given by explicit codeword lists.

use std::fmt;
use std::str::FromStr;

use super::{finish, Builder, ConstructionResult};
use crate::code::{Code, CodeParams};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExplicitId {
    OneD48,
    ThreeBy4,
    ThreeBy8,
    ThreeBy20,
    ThreeBy32,
    ThreeBy52,
}

impl ExplicitId {
    pub const ALL: [ExplicitId; 6] = [
        ExplicitId::OneD48,
        ExplicitId::ThreeBy4,
        ExplicitId::ThreeBy8,
        ExplicitId::ThreeBy20,
        ExplicitId::ThreeBy32,
        ExplicitId::ThreeBy52,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExplicitId::OneD48 => "1d48",
            ExplicitId::ThreeBy4 => "3x4",
            ExplicitId::ThreeBy8 => "3x8",
            ExplicitId::ThreeBy20 => "3x20",
            ExplicitId::ThreeBy32 => "3x32",
            ExplicitId::ThreeBy52 => "3x52",
        }
    }

    pub fn size(self) -> usize {
        match self {
            ExplicitId::OneD48 => 10,
            ExplicitId::ThreeBy4 => 6,
            ExplicitId::ThreeBy8 => 13,
            ExplicitId::ThreeBy20 => 34,
            ExplicitId::ThreeBy32 => 53,
            ExplicitId::ThreeBy52 => 88,
        }
    }
}

impl fmt::Display for ExplicitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExplicitId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExplicitId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown explicit code id {s:?}")))
    }
}

pub fn explicit_code(id: ExplicitId) -> Result<ConstructionResult> {
    let branch = id.name();
    let (n, m, codewords) = match id {
        ExplicitId::OneD48 => (1, 48, one_d48()?),
        ExplicitId::ThreeBy4 => (3, 4, three_by_4()?),
        ExplicitId::ThreeBy8 => (3, 8, three_by_8()?),
        ExplicitId::ThreeBy20 => (3, 20, three_by_20()?),
        ExplicitId::ThreeBy32 => (3, 32, three_by_32()?),
        ExplicitId::ThreeBy52 => (3, 52, three_by_52()?),
    };
    let code = Code::new(CodeParams::weight3(n, m, 2)?, codewords.into_codewords())?;
    finish(code, id.size(), None, branch)
}

fn one_d48() -> Result<Builder> {
    let mut b = Builder::new(48, "1d48");
    for s in [
        [0, 3, 6],
        [0, 7, 14],
        [0, 11, 22],
        [0, 15, 30],
        [0, 19, 38],
        [0, 23, 46],
        [0, 1, 17],
        [0, 5, 9],
        [0, 13, 21],
        [0, 12, 24],
    ] {
        b.add([(0, s[0]), (0, s[1]), (0, s[2])])?;
    }
    Ok(b)
}

fn equi_rows(b: &mut Builder, generators: &[i64]) -> Result<()> {
    for x in 0..3 {
        for &a in generators {
            b.add([(x, 0), (x, a), (x, 2 * a)])?;
        }
    }
    Ok(())
}

fn transversals(b: &mut Builder, pairs: &[(i64, i64)]) -> Result<()> {
    for &(a, c) in pairs {
        b.add([(0, 0), (1, a), (2, c)])?;
    }
    Ok(())
}

fn three_by_4() -> Result<Builder> {
    let mut b = Builder::new(4, "3x4");
    equi_rows(&mut b, &[1])?;
    transversals(&mut b, &[(0, 0), (1, 3), (3, 2)])?;
    Ok(b)
}

fn three_by_8() -> Result<Builder> {
    let mut b = Builder::new(8, "3x8");
    equi_rows(&mut b, &[2])?;
    for cells in [
        [(0, 0), (0, 1), (1, 6)],
        [(0, 0), (0, 3), (1, 7)],
        [(1, 0), (1, 1), (2, 5)],
        [(1, 0), (1, 3), (2, 3)],
        [(0, 0), (2, 5), (2, 6)],
        [(0, 0), (2, 4), (2, 7)],
    ] {
        b.add(cells)?;
    }
    transversals(&mut b, &[(2, 0), (3, 2), (0, 1), (1, 3)])?;
    Ok(b)
}

fn three_by_20() -> Result<Builder> {
    let mut b = Builder::new(20, "3x20");
    equi_rows(&mut b, &[4, 5, 7, 9])?;
    for cells in [
        [(0, 0), (0, 1), (1, 18)],
        [(0, 0), (0, 3), (1, 19)],
        [(1, 0), (1, 1), (2, 18)],
        [(1, 0), (1, 3), (2, 19)],
        [(0, 0), (2, 17), (2, 18)],
        [(0, 0), (2, 16), (2, 19)],
    ] {
        b.add(cells)?;
    }
    transversals(
        &mut b,
        &[
            (0, 1),
            (1, 3),
            (2, 2),
            (3, 11),
            (4, 13),
            (5, 10),
            (6, 9),
            (7, 14),
            (8, 12),
            (9, 15),
            (10, 0),
            (11, 4),
            (12, 7),
            (13, 5),
            (14, 8),
            (15, 6),
        ],
    )?;
    Ok(b)
}

fn three_by_32() -> Result<Builder> {
    let mut b = Builder::new(32, "3x32");
    equi_rows(&mut b, &[8, 9, 11, 13, 15])?;
    for cells in [
        [(0, 0), (0, 12), (1, 25)],
        [(0, 0), (0, 1), (1, 6)],
        [(0, 0), (0, 3), (1, 7)],
        [(0, 0), (0, 5), (1, 8)],
        [(0, 0), (0, 7), (1, 9)],
        [(0, 0), (0, 4), (1, 31)],
        [(1, 0), (1, 1), (2, 14)],
        [(1, 0), (1, 12), (2, 23)],
        [(1, 0), (1, 3), (2, 20)],
        [(1, 0), (1, 5), (2, 21)],
        [(1, 0), (1, 7), (2, 22)],
        [(1, 0), (1, 4), (2, 31)],
        [(0, 0), (2, 9), (2, 21)],
        [(0, 0), (2, 0), (2, 1)],
        [(0, 0), (2, 7), (2, 10)],
        [(0, 0), (2, 6), (2, 11)],
        [(0, 0), (2, 5), (2, 12)],
        [(0, 0), (2, 22), (2, 26)],
    ] {
        b.add(cells)?;
    }
    transversals(
        &mut b,
        &[
            (0, 8),
            (1, 4),
            (10, 28),
            (19, 31),
            (21, 30),
            (22, 29),
            (12, 14),
            (14, 20),
            (15, 19),
            (16, 16),
            (17, 18),
            (18, 23),
            (11, 3),
            (20, 13),
            (23, 17),
            (24, 2),
            (26, 24),
            (28, 15),
            (29, 25),
            (30, 27),
        ],
    )?;
    Ok(b)
}

fn three_by_52() -> Result<Builder> {
    let mut b = Builder::new(52, "3x52");
    equi_rows(&mut b, &[4, 12, 16, 13, 15, 17, 19, 21, 23, 25])?;
    for i in 0..=5 {
        b.add([(0, 0), (0, 1 + 2 * i), (1, 46 + i)])?;
    }
    for i in 0..=5 {
        b.add([(1, 0), (1, 1 + 2 * i), (2, 46 + i)])?;
    }
    for i in 0..=5 {
        b.add([(0, 0), (2, 45 - i), (2, 46 + i)])?;
    }
    transversals(
        &mut b,
        &[
            (0, 12),
            (2, 6),
            (3, 8),
            (4, 14),
            (5, 5),
            (6, 7),
            (11, 13),
            (1, 16),
            (14, 22),
            (16, 19),
            (18, 24),
            (7, 28),
            (12, 25),
            (13, 27),
            (22, 29),
            (8, 30),
            (9, 32),
            (10, 34),
            (20, 31),
            (24, 33),
            (15, 35),
            (17, 36),
            (19, 37),
            (21, 38),
            (23, 39),
            (33, 15),
            (34, 18),
            (27, 0),
            (28, 2),
            (29, 4),
            (30, 10),
            (32, 11),
            (25, 1),
            (31, 9),
            (26, 3),
            (35, 21),
            (36, 17),
            (37, 20),
            (38, 23),
            (39, 26),
        ],
    )?;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ExplicitId::ALL {
            assert_eq!(id.name().parse::<ExplicitId>().unwrap(), id);
        }
        assert!("3x9".parse::<ExplicitId>().is_err());
    }

    #[test]
    fn all_explicit_codes_verify() {
        for id in ExplicitId::ALL {
            let r = explicit_code(id).unwrap();
            assert_eq!(r.code.len(), id.size(), "{id}");
        }
    }
}
