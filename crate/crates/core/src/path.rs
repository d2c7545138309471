// SPDX-License-Identifier: Apache-2.0
//! Ground-state paths, lambda-paths and the crystal structure on paths.

use std::fmt::Write as _;

use crate::cartan::AffineType;
use crate::crystal::{reduce_signature, Crystal, Direction, SignatureTape};
use crate::error::Error;
use crate::perfect::{perfect_crystal, Elem, PerfectCrystal};

/// The periodic minimal-element path of a level-1 weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundState {
    /// `weights[k]` is the index of `lambda_k`.
    pub weights: Vec<usize>,
    /// `elements[k]` is `b_k`, with `phi(b_k) = lambda_k` and `eps(b_k) = lambda_{k+1}`.
    pub elements: Vec<Elem>,
}

impl GroundState {
    pub fn period(&self) -> usize {
        self.elements.len()
    }

    /// `b_k` for any `k >= 0`.
    pub fn element(&self, k: usize) -> Elem {
        self.elements[k % self.period()]
    }

    /// Index of `lambda_k` for any `k >= 0`.
    pub fn weight(&self, k: usize) -> usize {
        self.weights[k % self.period()]
    }
}

/// Checks that `lambda` is a level-1 index of the crystal.
pub fn check_level_one(crystal: &PerfectCrystal, lambda: usize) -> Result<(), Error> {
    if crystal.cartan.level_one.contains(&lambda) {
        Ok(())
    } else {
        Err(Error::NotLevelOne { ty: crystal.ty.to_string(), weight: format!("L{lambda}") })
    }
}

/// Follows `lambda_{k+1} = eps(b_{lambda_k})` until the weight repeats.
pub fn ground_state(crystal: &PerfectCrystal, lambda: usize) -> Result<GroundState, Error> {
    check_level_one(crystal, lambda)?;
    let mut weights = vec![lambda];
    let mut elements = Vec::new();
    loop {
        let current = *weights.last().expect("nonempty");
        let pair = crystal
            .minimal_for(current)
            .ok_or_else(|| Error::InvalidType(format!("no minimal element for L{current} in {}", crystal.ty)))?;
        elements.push(pair.lower);
        let eps = crystal.eps_vector(pair.lower);
        let next = eps
            .iter()
            .position(|&x| x == 1)
            .filter(|_| eps.iter().sum::<usize>() == 1)
            .ok_or_else(|| Error::InvalidType(format!("eps({}) is not a fundamental weight", pair.lower)))?;
        if next == lambda {
            return Ok(GroundState { weights, elements });
        }
        if weights.contains(&next) || weights.len() > crystal.ty.num_indices() {
            return Err(Error::InvalidType("ground-state weights do not cycle through the start".into()));
        }
        weights.push(next);
    }
}

/// A lambda-path stored as its deviation from the ground state: `entries[k]`
/// is `p(k)`, and `p(k) = b_k` for every `k >= entries.len()`. Normalized
/// paths have a last entry different from the ground element at its index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaPath {
    entries: Vec<Elem>,
}

impl LambdaPath {
    pub fn ground() -> Self {
        LambdaPath { entries: Vec::new() }
    }

    /// Builds a normalized path from `p(0), p(1), ...`.
    pub fn from_entries(ground: &GroundState, entries: Vec<Elem>) -> Self {
        let mut p = LambdaPath { entries };
        p.normalize(ground);
        p
    }

    /// Entries `p(0), .., p(N-1)` where `N` is the tail index.
    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// The tail index `N`.
    pub fn tail(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, ground: &GroundState, k: usize) -> Elem {
        self.entries.get(k).copied().unwrap_or_else(|| ground.element(k))
    }

    fn normalize(&mut self, ground: &GroundState) {
        while let Some(&last) = self.entries.last() {
            if last == ground.element(self.entries.len() - 1) {
                self.entries.pop();
            } else {
                break;
            }
        }
    }
}

/// The crystal `P(lambda)` of lambda-paths over a level-1 perfect crystal.
#[derive(Clone, Debug)]
pub struct PathCrystal {
    pub crystal: PerfectCrystal,
    pub lambda: usize,
    pub ground: GroundState,
}

impl PathCrystal {
    pub fn new(ty: AffineType, lambda: usize) -> Result<Self, Error> {
        Self::with_crystal(perfect_crystal(ty), lambda)
    }

    pub fn with_crystal(crystal: PerfectCrystal, lambda: usize) -> Result<Self, Error> {
        let ground = ground_state(&crystal, lambda)?;
        Ok(PathCrystal { crystal, lambda, ground })
    }

    pub fn ty(&self) -> AffineType {
        self.crystal.ty
    }

    pub fn from_entries(&self, entries: Vec<Elem>) -> LambdaPath {
        LambdaPath::from_entries(&self.ground, entries)
    }

    /// Parses a display sequence `(... p(m-1) .. p(1) p(0))`; leading
    /// dots or parentheses are ignored.
    pub fn parse(&self, s: &str) -> Result<LambdaPath, Error> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut entries = Vec::new();
        for token in body.split_whitespace() {
            if token.chars().all(|c| c == '.' || c == '\u{2026}' || c == '\u{22ef}') {
                continue;
            }
            let b: Elem = token.parse()?;
            if !self.crystal.contains(b) {
                return Err(Error::Parse(format!("{b} is not an element of the {} crystal", self.ty())));
            }
            entries.push(b);
        }
        entries.reverse();
        Ok(self.from_entries(entries))
    }

    /// Display text showing at least `min_len` entries, most distant first.
    pub fn render(&self, p: &LambdaPath, min_len: usize) -> String {
        let len = p.tail().max(min_len);
        let mut out = String::from("(...");
        for k in (0..len).rev() {
            let _ = write!(out, " {}", p.entry(&self.ground, k));
        }
        out.push(')');
        out
    }

    /// Runs of the tensor word `u_{lambda_W} (x) p(W-1) (x) .. (x) p(0)`.
    fn runs(&self, p: &LambdaPath, i: usize, window: usize) -> Vec<(usize, usize)> {
        let head = self.crystal.phi(&self.ground.element(window), i);
        let mut runs = Vec::with_capacity(window + 1);
        runs.push((0, head));
        for k in (0..window).rev() {
            let b = p.entry(&self.ground, k);
            runs.push(self.crystal.eps_phi(b, i));
        }
        runs
    }

    /// The reduced `i`-signature computed over the window `W >= tail`.
    pub fn signature_with_window(&self, p: &LambdaPath, i: usize, window: usize) -> SignatureTape {
        reduce_signature(&self.runs(p, i, window.max(p.tail())))
    }

    /// Applies `e_i` or `f_i` acting on the window `W >= tail`. An `f_i`
    /// landing on the head extends the path by `f_i(b_W)`.
    pub fn apply_with_window(&self, p: &LambdaPath, i: usize, dir: Direction, window: usize) -> Option<LambdaPath> {
        let window = window.max(p.tail());
        let tape = reduce_signature(&self.runs(p, i, window));
        let factor = match dir {
            Direction::E => tape.e_factor?,
            Direction::F => tape.f_factor?,
        };
        let mut entries: Vec<Elem> = (0..window).map(|k| p.entry(&self.ground, k)).collect();
        if factor == 0 {
            debug_assert_eq!(dir, Direction::F);
            let image = self.crystal.f(&self.ground.element(window), i)?;
            entries.push(image);
        } else {
            let k = window - factor;
            let image = match dir {
                Direction::E => self.crystal.e(&entries[k], i)?,
                Direction::F => self.crystal.f(&entries[k], i)?,
            };
            entries[k] = image;
        }
        Some(self.from_entries(entries))
    }

    /// Classical weight `lambda_W + sum_{k<W} wt(p(k))` as coroot pairings.
    pub fn weight_with_window(&self, p: &LambdaPath, window: usize) -> Vec<i64> {
        let window = window.max(p.tail());
        let size = self.crystal.ty.num_indices();
        let mut wt = vec![0i64; size];
        wt[self.ground.weight(window)] += 1;
        for k in 0..window {
            for (w, x) in wt.iter_mut().zip(self.crystal.classical_wt(p.entry(&self.ground, k))) {
                *w += x;
            }
        }
        wt
    }
}

impl Crystal for PathCrystal {
    type Elem = LambdaPath;

    fn num_indices(&self) -> usize {
        self.crystal.ty.num_indices()
    }

    fn weight(&self, p: &LambdaPath) -> Vec<i64> {
        self.weight_with_window(p, p.tail())
    }

    fn eps(&self, p: &LambdaPath, i: usize) -> usize {
        self.signature_with_window(p, i, p.tail()).minus
    }

    fn phi(&self, p: &LambdaPath, i: usize) -> usize {
        self.signature_with_window(p, i, p.tail()).plus
    }

    fn e(&self, p: &LambdaPath, i: usize) -> Option<LambdaPath> {
        self.apply_with_window(p, i, Direction::E, p.tail())
    }

    fn f(&self, p: &LambdaPath, i: usize) -> Option<LambdaPath> {
        self.apply_with_window(p, i, Direction::F, p.tail())
    }

    /// Entry tokens `p(N-1) .. p(0)` separated by spaces; empty for the ground path.
    fn key(&self, p: &LambdaPath) -> String {
        let tokens: Vec<String> = p.entries.iter().rev().map(Elem::to_string).collect();
        tokens.join(" ")
    }
}
