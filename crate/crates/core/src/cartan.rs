// SPDX-License-Identifier: Apache-2.0
//! Affine Cartan data for the six supported families and integral weight
//! arithmetic in (fundamental weight, simple-root content) coordinates.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The affine families with a level-1 perfect crystal and a Young wall model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `A_n^(1)`, written `A<n>~1`.
    AUntwisted,
    /// `A_{2n-1}^(2)`, written `A<2n-1>~2`.
    AOddTwisted,
    /// `D_n^(1)`, written `D<n>~1`.
    DUntwisted,
    /// `A_{2n}^(2)`, written `A<2n>~2`.
    AEvenTwisted,
    /// `D_{n+1}^(2)`, written `D<n+1>~2`.
    DTwisted,
    /// `B_n^(1)`, written `B<n>~1`.
    BUntwisted,
}

impl Family {
    /// Smallest supported rank `n`, where the index set is `{0, .., n}`.
    pub fn min_rank(self) -> usize {
        match self {
            Family::AUntwisted => 1,
            Family::AOddTwisted => 3,
            Family::DUntwisted => 4,
            Family::AEvenTwisted => 2,
            Family::DTwisted => 2,
            Family::BUntwisted => 3,
        }
    }

    pub const ALL: [Family; 6] = [
        Family::AUntwisted,
        Family::AOddTwisted,
        Family::DUntwisted,
        Family::AEvenTwisted,
        Family::DTwisted,
        Family::BUntwisted,
    ];
}

/// A family together with its rank `n`; the index set is `{0, 1, .., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    family: Family,
    rank: usize,
}

impl AffineType {
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        if rank < family.min_rank() || rank > 64 {
            return Err(Error::InvalidType(format!(
                "rank {rank} is out of range for {family:?} (minimum {})",
                family.min_rank()
            )));
        }
        Ok(AffineType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The rank `n`; simple roots are indexed `0..=n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots, `n + 1`.
    pub fn num_indices(&self) -> usize {
        self.rank + 1
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.rank
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        match self.family {
            Family::AUntwisted => write!(f, "A{n}~1"),
            Family::AOddTwisted => write!(f, "A{}~2", 2 * n - 1),
            Family::DUntwisted => write!(f, "D{n}~1"),
            Family::AEvenTwisted => write!(f, "A{}~2", 2 * n),
            Family::DTwisted => write!(f, "D{}~2", n + 1),
            Family::BUntwisted => write!(f, "B{n}~1"),
        }
    }
}

impl FromStr for AffineType {
    type Err = Error;

    /// Parses `<letter><subscript>~<twist>`, for example `A2~1`, `A5~2`,
    /// `D4~1`, `A4~2`, `D3~2` or `B3~1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid affine type {s:?}; expected e.g. A2~1, A5~2, D3~2, B3~1"));
        let (head, twist) = s.trim().split_once('~').ok_or_else(bad)?;
        let mut chars = head.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let sub: usize = chars.as_str().parse().map_err(|_| bad())?;
        let twist: u32 = twist.parse().map_err(|_| bad())?;
        let (family, rank) = match (letter, twist) {
            ('A', 1) => (Family::AUntwisted, sub),
            ('A', 2) if sub % 2 == 1 => (Family::AOddTwisted, sub.div_ceil(2)),
            ('A', 2) => (Family::AEvenTwisted, sub / 2),
            ('D', 1) => (Family::DUntwisted, sub),
            ('D', 2) => (Family::DTwisted, sub.checked_sub(1).ok_or_else(bad)?),
            ('B', 1) => (Family::BUntwisted, sub),
            _ => return Err(bad()),
        };
        AffineType::new(family, rank)
    }
}

/// Generalized Cartan matrix with its null-root and central-element coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub ty: AffineType,
    /// `matrix[i][j] = <h_i, alpha_j>`.
    pub matrix: Vec<Vec<i64>>,
    /// Coefficients of the null root in the simple roots.
    pub delta: Vec<i64>,
    /// Coefficients of the canonical central element in the simple coroots.
    pub central: Vec<i64>,
    /// Indices `i` whose fundamental weight has level 1.
    pub level_one: Vec<usize>,
}

/// Builds the Cartan data of an affine type.
pub fn cartan_data(ty: AffineType) -> CartanData {
    let n = ty.rank();
    let size = n + 1;
    let mut a = vec![vec![0i64; size]; size];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let (delta, central, level_one): (Vec<i64>, Vec<i64>, Vec<usize>) = match ty.family() {
        Family::AUntwisted => {
            if n == 1 {
                link(0, 1, -2, -2);
            } else {
                for i in 0..size {
                    link(i, (i + 1) % size, -1, -1);
                }
            }
            (vec![1; size], vec![1; size], (0..size).collect())
        }
        Family::AOddTwisted => {
            link(0, 2, -1, -1);
            link(1, 2, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -2, -1);
            let mut d = vec![2; size];
            let mut c = vec![2; size];
            d[0] = 1;
            d[1] = 1;
            d[n] = 1;
            c[0] = 1;
            c[1] = 1;
            (d, c, vec![0, 1])
        }
        Family::DUntwisted => {
            link(0, 2, -1, -1);
            link(1, 2, -1, -1);
            for i in 2..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -1, -1);
            link(n - 2, n, -1, -1);
            let mut d = vec![2; size];
            for i in [0, 1, n - 1, n] {
                d[i] = 1;
            }
            (d.clone(), d, vec![0, 1, n - 1, n])
        }
        Family::AEvenTwisted => {
            link(0, 1, -2, -1);
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            if n >= 2 {
                link(n - 1, n, -2, -1);
            }
            let mut d = vec![2; size];
            d[n] = 1;
            let mut c = vec![2; size];
            c[0] = 1;
            (d, c, vec![0])
        }
        Family::DTwisted => {
            link(0, 1, -2, -1);
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -1, -2);
            if n == 1 {
                unreachable!("rank bound excludes n = 1");
            }
            let mut c = vec![2; size];
            c[0] = 1;
            c[n] = 1;
            (vec![1; size], c, vec![0, n])
        }
        Family::BUntwisted => {
            link(0, 2, -1, -1);
            link(1, 2, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -1, -2);
            let mut d = vec![2; size];
            d[0] = 1;
            d[1] = 1;
            let mut c = vec![2; size];
            c[0] = 1;
            c[1] = 1;
            c[n] = 1;
            (d, c, vec![0, 1, n])
        }
    };
    CartanData { ty, matrix: a, delta, central, level_one }
}

impl CartanData {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// Classical image of a simple root in fundamental-weight coordinates:
    /// component `j` is `<h_j, alpha_i>`.
    pub fn root_pairings(&self, i: usize) -> Vec<i64> {
        (0..self.size()).map(|j| self.matrix[j][i]).collect()
    }

    /// Level of a classical weight given by its pairings with the coroots.
    pub fn level_of(&self, pairings: &[i64]) -> i64 {
        self.central.iter().zip(pairings).map(|(c, p)| c * p).sum()
    }

    /// Number of blocks of each color in one wall period. For the twisted
    /// `D` family this is twice the null root.
    pub fn wall_period_content(&self) -> Vec<i64> {
        match self.ty.family() {
            Family::DTwisted => self.delta.iter().map(|d| 2 * d).collect(),
            _ => self.delta.clone(),
        }
    }
}

/// A weight `Lambda_base - sum_i content[i] * alpha_i`; a missing base is the
/// zero weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    pub base: Option<usize>,
    pub content: Vec<i64>,
}

impl AffineWeight {
    pub fn fundamental(base: usize, size: usize) -> Self {
        AffineWeight { base: Some(base), content: vec![0; size] }
    }

    /// `<h_i, wt>`.
    pub fn pair(&self, data: &CartanData, i: usize) -> i64 {
        let from_base = i64::from(self.base == Some(i));
        from_base - data.matrix[i].iter().zip(&self.content).map(|(a, k)| a * k).sum::<i64>()
    }

    /// All pairings `<h_i, wt>` for `i` in the index set.
    pub fn pairings(&self, data: &CartanData) -> Vec<i64> {
        (0..data.size()).map(|i| self.pair(data, i)).collect()
    }

    pub fn level(&self, data: &CartanData) -> i64 {
        data.level_of(&self.pairings(data))
    }

    /// The weight minus one copy of `alpha_i`.
    pub fn subtract_root(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.content[i] += 1;
        w
    }
}
