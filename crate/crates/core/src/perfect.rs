// SPDX-License-Identifier: Apache-2.0
//! The six level-1 perfect crystals: elements, arrows, string lengths,
//! minimal elements and a computational check of perfectness.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::cartan::{cartan_data, AffineType, CartanData, Family};
use crate::crystal::{tensor_apply, Crystal, Direction};
use crate::error::Error;

/// An element of a level-1 perfect crystal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// The box `j` for `1 <= j <= n`.
    Box(u8),
    /// The barred box `j` for `1 <= j <= n`.
    Bar(u8),
    /// The box labeled `0`.
    Zero,
    /// The empty box.
    Empty,
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Box(j) => write!(f, "{j}"),
            Elem::Bar(j) => write!(f, "{j}b"),
            Elem::Zero => f.write_str("0"),
            Elem::Empty => f.write_str("e"),
        }
    }
}

impl FromStr for Elem {
    type Err = Error;

    /// Accepts `3`, `3b` (barred), `0` and `e` (empty).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid crystal element {s:?}"));
        match s {
            "0" => Ok(Elem::Zero),
            "e" => Ok(Elem::Empty),
            _ => {
                let (digits, bar) = match s.strip_suffix('b') {
                    Some(d) => (d, true),
                    None => (s, false),
                };
                let j: u8 = digits.parse().map_err(|_| bad())?;
                if j == 0 {
                    return Err(bad());
                }
                Ok(if bar { Elem::Bar(j) } else { Elem::Box(j) })
            }
        }
    }
}

/// An `f_i` arrow `source -> target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: Elem,
    pub label: usize,
    pub target: Elem,
}

/// Minimal elements attached to a level-1 weight `Lambda_index`:
/// `eps(upper) = Lambda_index` and `phi(lower) = Lambda_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalPair {
    pub index: usize,
    pub upper: Elem,
    pub lower: Elem,
}

/// A finite crystal given by its arrows, with string lengths precomputed.
#[derive(Clone, Debug)]
pub struct PerfectCrystal {
    pub ty: AffineType,
    pub cartan: CartanData,
    elements: Vec<Elem>,
    position: HashMap<Elem, usize>,
    arrows: Vec<Arrow>,
    f_table: Vec<Vec<Option<usize>>>,
    e_table: Vec<Vec<Option<usize>>>,
    eps_table: Vec<Vec<usize>>,
    phi_table: Vec<Vec<usize>>,
    minimal: Vec<MinimalPair>,
}

fn family_elements(ty: AffineType) -> Vec<Elem> {
    let n = ty.rank() as u8;
    let boxes = (1..=n).map(Elem::Box);
    let bars = (1..=n).rev().map(Elem::Bar);
    match ty.family() {
        Family::AUntwisted => boxes.chain([Elem::Zero]).collect(),
        Family::AOddTwisted | Family::DUntwisted => boxes.chain(bars).collect(),
        Family::AEvenTwisted => boxes.chain(bars).chain([Elem::Empty]).collect(),
        Family::DTwisted => boxes.chain([Elem::Zero]).chain(bars).chain([Elem::Empty]).collect(),
        Family::BUntwisted => boxes.chain([Elem::Zero]).chain(bars).collect(),
    }
}

fn family_arrows(ty: AffineType) -> Vec<Arrow> {
    let n = ty.rank();
    let b = |j: usize| Elem::Box(j as u8);
    let bar = |j: usize| Elem::Bar(j as u8);
    let mut arrows = Vec::new();
    let mut add = |source: Elem, label: usize, target: Elem| arrows.push(Arrow { source, label, target });
    if ty.family() == Family::AUntwisted {
        let cell = |j: usize| if j == 0 { Elem::Zero } else { b(j) };
        for j in 0..=n {
            add(cell(j), j, cell((j + 1) % (n + 1)));
        }
        return arrows;
    }
    let ascending_top = if ty.family() == Family::DUntwisted { n - 1 } else { n };
    for j in 1..ascending_top {
        add(b(j), j, b(j + 1));
    }
    for j in 1..ascending_top {
        add(bar(j + 1), j, bar(j));
    }
    match ty.family() {
        Family::AOddTwisted | Family::AEvenTwisted => add(b(n), n, bar(n)),
        Family::DUntwisted => {
            add(b(n - 1), n - 1, b(n));
            add(b(n - 1), n, bar(n));
            add(b(n), n, bar(n - 1));
            add(bar(n), n - 1, bar(n - 1));
        }
        Family::DTwisted | Family::BUntwisted => {
            add(b(n), n, Elem::Zero);
            add(Elem::Zero, n, bar(n));
        }
        Family::AUntwisted => unreachable!(),
    }
    match ty.family() {
        Family::AOddTwisted | Family::DUntwisted | Family::BUntwisted => {
            add(bar(1), 0, b(2));
            add(bar(2), 0, b(1));
        }
        Family::AEvenTwisted | Family::DTwisted => {
            add(Elem::Empty, 0, b(1));
            add(bar(1), 0, Elem::Empty);
        }
        Family::AUntwisted => unreachable!(),
    }
    arrows
}

fn family_minimal(ty: AffineType) -> Vec<MinimalPair> {
    let n = ty.rank();
    let pair = |index: usize, upper: Elem, lower: Elem| MinimalPair { index, upper, lower };
    let (one, one_bar) = (Elem::Box(1), Elem::Bar(1));
    match ty.family() {
        Family::AUntwisted => {
            let cell = |j: usize| if j == 0 { Elem::Zero } else { Elem::Box(j as u8) };
            (0..=n).map(|i| pair(i, cell((i + 1) % (n + 1)), cell(i))).collect()
        }
        Family::AOddTwisted => vec![pair(0, one, one_bar), pair(1, one_bar, one)],
        Family::DUntwisted => vec![
            pair(0, one, one_bar),
            pair(1, one_bar, one),
            pair(n - 1, Elem::Box(n as u8), Elem::Bar(n as u8)),
            pair(n, Elem::Bar(n as u8), Elem::Box(n as u8)),
        ],
        Family::AEvenTwisted => vec![pair(0, Elem::Empty, Elem::Empty)],
        Family::DTwisted => vec![pair(0, Elem::Empty, Elem::Empty), pair(n, Elem::Zero, Elem::Zero)],
        Family::BUntwisted => vec![pair(0, one, one_bar), pair(1, one_bar, one), pair(n, Elem::Zero, Elem::Zero)],
    }
}

/// The level-1 perfect crystal of an affine type.
pub fn perfect_crystal(ty: AffineType) -> PerfectCrystal {
    PerfectCrystal::from_parts(ty, family_elements(ty), family_arrows(ty), family_minimal(ty))
        .expect("built-in arrow tables are well formed")
}

impl PerfectCrystal {
    /// Builds a crystal from explicit data; fails if an arrow mentions an
    /// unknown element or two arrows share a source or target for one label.
    pub fn from_parts(
        ty: AffineType,
        elements: Vec<Elem>,
        arrows: Vec<Arrow>,
        minimal: Vec<MinimalPair>,
    ) -> Result<Self, Error> {
        let size = ty.num_indices();
        let position: HashMap<Elem, usize> = elements.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let mut f_table = vec![vec![None; size]; elements.len()];
        let mut e_table = vec![vec![None; size]; elements.len()];
        for a in &arrows {
            let (Some(&s), Some(&t)) = (position.get(&a.source), position.get(&a.target)) else {
                return Err(Error::InvalidType(format!("arrow {a:?} mentions an unknown element")));
            };
            if a.label >= size || f_table[s][a.label].is_some() || e_table[t][a.label].is_some() {
                return Err(Error::InvalidType(format!("arrow {a:?} breaks the string structure")));
            }
            f_table[s][a.label] = Some(t);
            e_table[t][a.label] = Some(s);
        }
        let walk = |table: &Vec<Vec<Option<usize>>>, start: usize, i: usize| {
            let mut len = 0;
            let mut cur = start;
            while let Some(next) = table[cur][i] {
                len += 1;
                cur = next;
                if len > table.len() {
                    break;
                }
            }
            len
        };
        let eps_table = (0..elements.len()).map(|b| (0..size).map(|i| walk(&e_table, b, i)).collect()).collect();
        let phi_table = (0..elements.len()).map(|b| (0..size).map(|i| walk(&f_table, b, i)).collect()).collect();
        Ok(PerfectCrystal {
            ty,
            cartan: cartan_data(ty),
            elements,
            position,
            arrows,
            f_table,
            e_table,
            eps_table,
            phi_table,
            minimal,
        })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn minimal(&self) -> &[MinimalPair] {
        &self.minimal
    }

    pub fn contains(&self, b: Elem) -> bool {
        self.position.contains_key(&b)
    }

    fn pos(&self, b: &Elem) -> usize {
        *self.position.get(b).unwrap_or_else(|| panic!("{b} is not an element of the {} crystal", self.ty))
    }

    /// `(eps_i(b), phi_i(b))`.
    pub fn eps_phi(&self, b: Elem, i: usize) -> (usize, usize) {
        let k = self.pos(&b);
        (self.eps_table[k][i], self.phi_table[k][i])
    }

    /// `eps(b)` as a vector of string lengths, one per index.
    pub fn eps_vector(&self, b: Elem) -> Vec<usize> {
        self.eps_table[self.pos(&b)].clone()
    }

    /// `phi(b)` as a vector of string lengths, one per index.
    pub fn phi_vector(&self, b: Elem) -> Vec<usize> {
        self.phi_table[self.pos(&b)].clone()
    }

    /// Classical weight `phi(b) - eps(b)` in fundamental-weight coordinates.
    pub fn classical_wt(&self, b: Elem) -> Vec<i64> {
        let k = self.pos(&b);
        self.phi_table[k].iter().zip(&self.eps_table[k]).map(|(&p, &e)| p as i64 - e as i64).collect()
    }

    /// The pair of minimal elements for `Lambda_index`, if it has level 1.
    pub fn minimal_for(&self, index: usize) -> Option<MinimalPair> {
        self.minimal.iter().copied().find(|m| m.index == index)
    }

    /// Index `j` with `v = Lambda_j`, if `v` is a unit vector.
    fn unit_index(v: &[usize]) -> Option<usize> {
        let mut found = None;
        for (j, &x) in v.iter().enumerate() {
            match (x, found) {
                (0, _) => {}
                (1, None) => found = Some(j),
                _ => return None,
            }
        }
        found
    }

    /// Verifies clauses (ii) to (v) of the perfectness definition at level 1,
    /// together with the transcribed minimal-element table.
    pub fn check_perfect(&self) -> PerfectReport {
        let clauses = vec![
            self.check_connected(),
            self.check_classical_highest(),
            self.check_level_bound(),
            self.check_minimal_bijection(),
            self.check_minimal_table(),
        ];
        PerfectReport { ty: self.ty.to_string(), clauses }
    }

    fn check_connected(&self) -> ClauseResult {
        let all: Vec<(Elem, Elem)> =
            self.elements.iter().flat_map(|&a| self.elements.iter().map(move |&b| (a, b))).collect();
        let start = all[0];
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((a, b)) = queue.pop_front() {
            for i in 0..self.ty.num_indices() {
                for dir in [Direction::E, Direction::F] {
                    if let Some(w) = tensor_apply(self, &[a, b], i, dir) {
                        let next = (w[0], w[1]);
                        if seen.insert(next) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        let witness = all.iter().find(|p| !seen.contains(p)).map(|(a, b)| format!("{a} (x) {b} is unreachable"));
        ClauseResult::new("B (x) B is connected", witness)
    }

    /// Coefficients `m_i` (`i != 0`) with `d = sum m_i alpha_i` over the
    /// rationals, if such a combination exists.
    fn root_coefficients(&self, d: &[i64]) -> Option<Vec<Ratio<i64>>> {
        let size = self.ty.num_indices();
        let cols = size - 1;
        let mut rows: Vec<Vec<Ratio<i64>>> = (0..size)
            .map(|j| {
                let mut row: Vec<Ratio<i64>> = (1..size).map(|i| Ratio::from(self.cartan.matrix[j][i])).collect();
                row.push(Ratio::from(d[j]));
                row
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..cols {
            let Some(r) = (pivot_row..size).find(|&r| rows[r][col] != Ratio::from(0)) else { continue };
            rows.swap(pivot_row, r);
            let p = rows[pivot_row][col];
            for x in rows[pivot_row].iter_mut() {
                *x /= p;
            }
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                let factor = row[col];
                if r != pivot_row && factor != Ratio::from(0) {
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= factor * p;
                    }
                }
            }
            pivot_row += 1;
        }
        if pivot_row < cols || rows[pivot_row..].iter().any(|row| row[cols] != Ratio::from(0)) {
            return None;
        }
        Some((0..cols).map(|r| rows[r][cols]).collect())
    }

    fn check_classical_highest(&self) -> ClauseResult {
        const CLAUSE: &str = "a unique classical highest weight exists";
        let weights: Vec<Vec<i64>> = self.elements.iter().map(|&b| self.classical_wt(b)).collect();
        let zero = Ratio::from(0);
        let mut rational_top = None;
        for (k, top) in weights.iter().enumerate() {
            if weights.iter().filter(|w| *w == top).count() != 1 {
                continue;
            }
            let coefficients: Vec<Option<Vec<Ratio<i64>>>> = weights
                .iter()
                .map(|w| {
                    let diff: Vec<i64> = top.iter().zip(w).map(|(a, b)| a - b).collect();
                    self.root_coefficients(&diff).filter(|m| m.iter().all(|x| *x >= zero))
                })
                .collect();
            if coefficients.iter().any(Option::is_none) {
                continue;
            }
            let fractional = coefficients
                .iter()
                .enumerate()
                .find(|(_, m)| m.as_ref().is_some_and(|m| m.iter().any(|x| !x.is_integer())));
            match fractional {
                None => {
                    return ClauseResult::new(CLAUSE, None).with_note(format!("highest element {}", self.elements[k]));
                }
                Some((j, m)) => {
                    rational_top.get_or_insert((k, j, m.clone().unwrap()));
                }
            }
        }
        let witness = match rational_top {
            Some((k, j, m)) => {
                let terms: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != zero)
                    .map(|(i, x)| format!("{x}*alpha_{}", i + 1))
                    .collect();
                format!(
                    "wt({}) - wt({}) = {} needs non-integral coefficients",
                    self.elements[k],
                    self.elements[j],
                    terms.join(" + ")
                )
            }
            None => "no element dominates all weights".into(),
        };
        ClauseResult::new(CLAUSE, Some(witness))
    }

    fn check_level_bound(&self) -> ClauseResult {
        let witness = self.elements.iter().find_map(|&b| {
            let eps: Vec<i64> = self.eps_vector(b).into_iter().map(|x| x as i64).collect();
            let level = self.cartan.level_of(&eps);
            (level < 1).then(|| format!("<c, eps({b})> = {level}"))
        });
        ClauseResult::new("<c, eps(b)> >= 1 for every b", witness)
    }

    /// Elements whose `eps` has level exactly 1.
    pub fn minimal_elements(&self) -> Vec<Elem> {
        self.elements
            .iter()
            .copied()
            .filter(|&b| {
                let eps: Vec<i64> = self.eps_vector(b).into_iter().map(|x| x as i64).collect();
                self.cartan.level_of(&eps) == 1
            })
            .collect()
    }

    fn check_minimal_bijection(&self) -> ClauseResult {
        let minimal = self.minimal_elements();
        let mut targets: Vec<usize> = self.cartan.level_one.clone();
        targets.sort_unstable();
        for (name, map) in [("eps", true), ("phi", false)] {
            let mut images = Vec::new();
            for &b in &minimal {
                let v = if map { self.eps_vector(b) } else { self.phi_vector(b) };
                match Self::unit_index(&v) {
                    Some(j) => images.push(j),
                    None => {
                        return ClauseResult::new(
                            "eps and phi are bijections from minimal elements to level-1 weights",
                            Some(format!("{name}({b}) = {v:?} is not a fundamental weight")),
                        )
                    }
                }
            }
            images.sort_unstable();
            if images != targets {
                return ClauseResult::new(
                    "eps and phi are bijections from minimal elements to level-1 weights",
                    Some(format!("{name} images {images:?} differ from {targets:?}")),
                );
            }
        }
        ClauseResult::new("eps and phi are bijections from minimal elements to level-1 weights", None)
    }

    fn check_minimal_table(&self) -> ClauseResult {
        let witness = self.cartan.level_one.iter().find_map(|&i| {
            let Some(m) = self.minimal_for(i) else {
                return Some(format!("no minimal pair listed for index {i}"));
            };
            if !self.contains(m.upper) || !self.contains(m.lower) {
                return Some(format!("minimal pair for index {i} uses unknown elements"));
            }
            let upper = Self::unit_index(&self.eps_vector(m.upper));
            let lower = Self::unit_index(&self.phi_vector(m.lower));
            (upper != Some(i) || lower != Some(i)).then(|| format!("minimal pair for index {i} is inconsistent"))
        });
        ClauseResult::new("listed minimal elements match eps and phi", witness)
    }
}

impl Crystal for PerfectCrystal {
    type Elem = Elem;

    fn num_indices(&self) -> usize {
        self.ty.num_indices()
    }

    fn weight(&self, b: &Elem) -> Vec<i64> {
        self.classical_wt(*b)
    }

    fn eps(&self, b: &Elem, i: usize) -> usize {
        self.eps_table[self.pos(b)][i]
    }

    fn phi(&self, b: &Elem, i: usize) -> usize {
        self.phi_table[self.pos(b)][i]
    }

    fn e(&self, b: &Elem, i: usize) -> Option<Elem> {
        self.e_table[self.pos(b)][i].map(|k| self.elements[k])
    }

    fn f(&self, b: &Elem, i: usize) -> Option<Elem> {
        self.f_table[self.pos(b)][i].map(|k| self.elements[k])
    }

    fn key(&self, b: &Elem) -> String {
        b.to_string()
    }
}

/// Result of one checked clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseResult {
    pub clause: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl ClauseResult {
    fn new(clause: &'static str, witness: Option<String>) -> Self {
        ClauseResult { clause, passed: witness.is_none(), witness, note: None }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectReport {
    pub ty: String,
    pub clauses: Vec<ClauseResult>,
}

impl PerfectReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&ClauseResult> {
        self.clauses.iter().filter(|c| !c.passed).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_tokens_round_trip() {
        for b in [Elem::Box(3), Elem::Bar(12), Elem::Zero, Elem::Empty] {
            assert_eq!(b.to_string().parse::<Elem>().unwrap(), b);
        }
        assert!("0b".parse::<Elem>().is_err());
        assert!("x".parse::<Elem>().is_err());
    }
}
