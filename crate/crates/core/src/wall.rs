// SPDX-License-Identifier: Apache-2.0
//! Young walls: column patterns, validity, properness, signatures, crystal
//! operators, removable delta columns, reduced walls and block counting.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{cartan_data, AffineType, AffineWeight, CartanData, Family};
use crate::crystal::{reduce_signature, Crystal, Direction, SignatureTape};
use crate::error::Error;

/// One layer of a column pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    /// A block filling the whole cell; `half` marks a half-height block.
    Single { color: usize, half: bool },
    /// Two half-thickness blocks side by side, one in the back and one in front.
    Split { back: usize, front: usize },
}

impl Layer {
    /// Height in half units.
    pub fn height(self) -> u64 {
        match self {
            Layer::Single { half: true, .. } => 1,
            _ => 2,
        }
    }

    pub fn block_count(self) -> u64 {
        match self {
            Layer::Single { .. } => 1,
            Layer::Split { .. } => 2,
        }
    }

    /// Shape of the layer ignoring colors.
    fn shape(self) -> (u64, bool) {
        (self.height(), matches!(self, Layer::Split { .. }))
    }
}

/// Shape of a single block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    pub color: usize,
    /// Height in half units.
    pub height: u8,
    /// Thickness in half units.
    pub thickness: u8,
    pub slot: Slot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Full,
    Back,
    Front,
}

/// The partially filled split layer on top of a column, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    None,
    Back,
    Front,
}

/// Shape of one column: `layers` complete layers counted from the ground
/// layer, plus possibly one half of the next split layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColState {
    pub layers: u64,
    pub half: Half,
}

impl ColState {
    pub const fn new(layers: u64, half: Half) -> Self {
        ColState { layers, half }
    }

    /// Whether the region occupied by `other` lies inside this one. Layers
    /// have the same shape in every column, so this compares geometry.
    pub fn contains(self, other: ColState) -> bool {
        match self.layers.cmp(&other.layers) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => other.half == Half::None || other.half == self.half,
        }
    }
}

/// The periodic pattern of one column class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnPattern {
    /// One period of layers starting at the ground layer.
    pub layers: Vec<Layer>,
    /// The ground-state shape of the column.
    pub ground: ColState,
    height_prefix: Vec<u64>,
    block_prefix: Vec<u64>,
    color_prefix: Vec<Vec<i64>>,
}

impl ColumnPattern {
    fn new(layers: Vec<Layer>, ground: ColState, num_colors: usize) -> Self {
        let mut height_prefix = vec![0];
        let mut block_prefix = vec![0];
        let mut color_prefix = vec![vec![0i64; num_colors]];
        for layer in &layers {
            height_prefix.push(height_prefix.last().unwrap() + layer.height());
            block_prefix.push(block_prefix.last().unwrap() + layer.block_count());
            let mut colors = color_prefix.last().unwrap().clone();
            match *layer {
                Layer::Single { color, .. } => colors[color] += 1,
                Layer::Split { back, front } => {
                    colors[back] += 1;
                    colors[front] += 1;
                }
            }
            color_prefix.push(colors);
        }
        ColumnPattern { layers, ground, height_prefix, block_prefix, color_prefix }
    }

    pub fn period(&self) -> u64 {
        self.layers.len() as u64
    }

    pub fn layer(&self, r: u64) -> Layer {
        self.layers[(r % self.period()) as usize]
    }

    fn cumulative(&self, table: &[u64], r: u64) -> u64 {
        let p = self.period();
        (r / p) * table[p as usize] + table[(r % p) as usize]
    }

    /// Height in half units of a column shape, counting ground blocks.
    pub fn height(&self, s: ColState) -> u64 {
        self.cumulative(&self.height_prefix, s.layers)
    }

    /// Number of blocks in a column shape, counting ground blocks.
    pub fn total_blocks(&self, s: ColState) -> u64 {
        self.cumulative(&self.block_prefix, s.layers) + u64::from(s.half != Half::None)
    }

    /// Number of blocks above the ground.
    pub fn added_blocks(&self, s: ColState) -> u64 {
        self.total_blocks(s) - self.total_blocks(self.ground)
    }

    /// Colors of all blocks in a column shape, counting ground blocks.
    pub fn total_colors(&self, s: ColState) -> Vec<i64> {
        let p = self.period();
        let full = &self.color_prefix[p as usize];
        let part = &self.color_prefix[(s.layers % p) as usize];
        let reps = (s.layers / p) as i64;
        let mut colors: Vec<i64> = full.iter().zip(part).map(|(f, q)| reps * f + q).collect();
        if let Some(c) = self.half_color(s) {
            colors[c] += 1;
        }
        colors
    }

    /// Color of the lone half block on top, if any.
    pub fn half_color(&self, s: ColState) -> Option<usize> {
        match (s.half, self.layer(s.layers)) {
            (Half::Back, Layer::Split { back, .. }) => Some(back),
            (Half::Front, Layer::Split { front, .. }) => Some(front),
            _ => None,
        }
    }

    /// Colors of the added blocks of a column.
    pub fn added_colors(&self, s: ColState) -> Vec<i64> {
        let ground = self.total_colors(self.ground);
        self.total_colors(s).iter().zip(ground).map(|(a, g)| a - g).collect()
    }

    /// A column without a lone half whose height is a whole number of units.
    pub fn is_full_shape(&self, s: ColState) -> bool {
        s.half == Half::None && self.height(s) % 2 == 0
    }

    /// Shape after removing the top `i`-block, ignoring neighbors.
    pub fn remove_block(&self, s: ColState, i: usize) -> Option<ColState> {
        let next = match s.half {
            Half::Back | Half::Front => (self.half_color(s)? == i).then_some(ColState::new(s.layers, Half::None))?,
            Half::None => {
                let r = s.layers.checked_sub(1)?;
                match self.layer(r) {
                    Layer::Single { color, .. } if color == i => ColState::new(r, Half::None),
                    Layer::Split { back, .. } if back == i => ColState::new(r, Half::Front),
                    Layer::Split { front, .. } if front == i => ColState::new(r, Half::Back),
                    _ => return None,
                }
            }
        };
        next.contains(self.ground).then_some(next)
    }

    /// Shape after adding an `i`-block on top, ignoring neighbors.
    pub fn add_block(&self, s: ColState, i: usize) -> Option<ColState> {
        match (s.half, self.layer(s.layers)) {
            (Half::Back, Layer::Split { front, .. }) if front == i => Some(ColState::new(s.layers + 1, Half::None)),
            (Half::Front, Layer::Split { back, .. }) if back == i => Some(ColState::new(s.layers + 1, Half::None)),
            (Half::None, Layer::Single { color, .. }) if color == i => Some(ColState::new(s.layers + 1, Half::None)),
            (Half::None, Layer::Split { back, .. }) if back == i => Some(ColState::new(s.layers, Half::Back)),
            (Half::None, Layer::Split { front, .. }) if front == i => Some(ColState::new(s.layers, Half::Front)),
            _ => None,
        }
    }

    /// Blocks of the shape listed bottom-up, including ground blocks.
    pub fn blocks(&self, s: ColState) -> Vec<BlockSpec> {
        let mut out = Vec::new();
        let push_layer = |out: &mut Vec<BlockSpec>, layer: Layer, half: Half| match layer {
            Layer::Single { color, half: short } => {
                out.push(BlockSpec { color, height: if short { 1 } else { 2 }, thickness: 2, slot: Slot::Full })
            }
            Layer::Split { back, front } => {
                if half != Half::Front {
                    out.push(BlockSpec { color: back, height: 2, thickness: 1, slot: Slot::Back });
                }
                if half != Half::Back {
                    out.push(BlockSpec { color: front, height: 2, thickness: 1, slot: Slot::Front });
                }
            }
        };
        for r in 0..s.layers {
            push_layer(&mut out, self.layer(r), Half::None);
        }
        if s.half != Half::None {
            push_layer(&mut out, self.layer(s.layers), s.half);
        }
        out
    }

    /// The shape holding `count` added blocks, taking back halves before
    /// front halves; `front` selects a lone front half on top instead.
    pub fn state_from_count(&self, count: u64, front: bool) -> Option<ColState> {
        let total = count + self.total_blocks(self.ground);
        let per = self.block_prefix[self.period() as usize];
        let mut layers = (total / per) * self.period();
        while self.cumulative(&self.block_prefix, layers + 1) <= total {
            layers += 1;
        }
        let rest = total - self.cumulative(&self.block_prefix, layers);
        let state = match (rest, front) {
            (0, false) => ColState::new(layers, Half::None),
            (1, _) if matches!(self.layer(layers), Layer::Split { .. }) => {
                ColState::new(layers, if front { Half::Front } else { Half::Back })
            }
            _ => return None,
        };
        state.contains(self.ground).then_some(state)
    }
}

/// Column patterns of all column classes for one type and ground weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallGeometry {
    pub ty: AffineType,
    pub lambda: usize,
    /// Column `k` uses `classes[k % classes.len()]`.
    pub classes: Vec<ColumnPattern>,
}

fn cube(color: usize) -> Layer {
    Layer::Single { color, half: false }
}

fn short(color: usize) -> Layer {
    Layer::Single { color, half: true }
}

fn split(back: usize, front: usize) -> Layer {
    Layer::Split { back, front }
}

fn cubes(colors: impl IntoIterator<Item = usize>) -> Vec<Layer> {
    colors.into_iter().map(cube).collect()
}

/// Builds the column patterns for a level-1 weight `Lambda_lambda`.
pub fn wall_geometry(ty: AffineType, lambda: usize) -> Result<WallGeometry, Error> {
    let data = cartan_data(ty);
    if !data.level_one.contains(&lambda) {
        return Err(Error::NotLevelOne { ty: ty.to_string(), weight: format!("L{lambda}") });
    }
    let n = ty.rank();
    let size = n + 1;
    let on_split = ColState::new(0, Half::Back);
    let on_short = ColState::new(1, Half::None);
    let concat = |parts: Vec<Vec<Layer>>| parts.into_iter().flatten().collect::<Vec<Layer>>();
    let up = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
    let down = |a: usize, b: usize| (b..=a).rev().collect::<Vec<_>>();
    let class = |layers: Vec<Layer>, ground: ColState| ColumnPattern::new(layers, ground, size);
    let classes = match ty.family() {
        Family::AUntwisted => (0..size)
            .map(|k| class(cubes((0..size).map(|r| (lambda + size - k + r) % size)), ColState::new(0, Half::None)))
            .collect(),
        Family::AOddTwisted => {
            let body =
                |bottom: Layer| concat(vec![vec![bottom], cubes(up(2, n - 1)), vec![cube(n)], cubes(down(n - 1, 2))]);
            let (even, odd) = if lambda == 0 { (split(1, 0), split(0, 1)) } else { (split(0, 1), split(1, 0)) };
            vec![class(body(even), on_split), class(body(odd), on_split)]
        }
        Family::DUntwisted => {
            let spin = lambda >= n - 1;
            let body = |bottom: Layer, middle: Layer| {
                let (rise, fall) = (cubes(up(2, n - 2)), cubes(down(n - 2, 2)));
                if spin {
                    concat(vec![vec![bottom], fall, vec![middle], rise])
                } else {
                    concat(vec![vec![bottom], rise, vec![middle], fall])
                }
            };
            let (e0, e1, o0, o1) = if lambda == 0 {
                (split(1, 0), split(n, n - 1), split(0, 1), split(n - 1, n))
            } else if lambda == 1 {
                (split(0, 1), split(n, n - 1), split(1, 0), split(n - 1, n))
            } else if lambda == n - 1 {
                (split(n, n - 1), split(1, 0), split(n - 1, n), split(0, 1))
            } else {
                (split(n - 1, n), split(1, 0), split(n, n - 1), split(0, 1))
            };
            vec![class(body(e0, e1), on_split), class(body(o0, o1), on_split)]
        }
        Family::AEvenTwisted => {
            let layers = concat(vec![vec![short(0), short(0)], cubes(up(1, n)), cubes(down(n - 1, 1))]);
            vec![class(layers, on_short)]
        }
        Family::DTwisted => {
            let layers = if lambda == 0 {
                concat(vec![
                    vec![short(0), short(0)],
                    cubes(up(1, n - 1)),
                    vec![short(n), short(n)],
                    cubes(down(n - 1, 1)),
                ])
            } else {
                concat(vec![
                    vec![short(n), short(n)],
                    cubes(down(n - 1, 1)),
                    vec![short(0), short(0)],
                    cubes(up(1, n - 1)),
                ])
            };
            vec![class(layers, on_short)]
        }
        Family::BUntwisted => {
            if lambda == n {
                let body = |middle: Layer| {
                    concat(vec![vec![short(n), short(n)], cubes(down(n - 1, 2)), vec![middle], cubes(up(2, n - 1))])
                };
                vec![class(body(split(1, 0)), on_short), class(body(split(0, 1)), on_short)]
            } else {
                let body = |bottom: Layer| {
                    concat(vec![vec![bottom], cubes(up(2, n - 1)), vec![short(n), short(n)], cubes(down(n - 1, 2))])
                };
                let (even, odd) = if lambda == 0 { (split(1, 0), split(0, 1)) } else { (split(0, 1), split(1, 0)) };
                vec![class(body(even), on_split), class(body(odd), on_split)]
            }
        }
    };
    Ok(WallGeometry { ty, lambda, classes })
}

impl WallGeometry {
    pub fn pattern(&self, k: usize) -> &ColumnPattern {
        &self.classes[k % self.classes.len()]
    }

    pub fn ground(&self, k: usize) -> ColState {
        self.pattern(k).ground
    }

    /// Layers per period; a removable delta spans this many layers.
    pub fn period(&self) -> u64 {
        self.classes[0].period()
    }

    /// Added blocks in one period of a column.
    pub fn blocks_per_delta(&self) -> u64 {
        self.classes[0].block_prefix[self.classes[0].layers.len()]
    }

    /// Layers have the same shape in every class and each period holds the
    /// wall period content; returns a description of the first violation.
    pub fn check_patterns(&self, data: &CartanData) -> Result<(), String> {
        let expected = data.wall_period_content();
        let first = &self.classes[0];
        for (c, class) in self.classes.iter().enumerate() {
            if class.period() != first.period() {
                return Err(format!("class {c} has period {} instead of {}", class.period(), first.period()));
            }
            for r in 0..class.period() {
                if class.layer(r).shape() != first.layer(r).shape() {
                    return Err(format!("layer {r} of class {c} has a different shape"));
                }
            }
            let content = &class.color_prefix[class.layers.len()];
            if *content != expected {
                return Err(format!("class {c} period content {content:?} differs from {expected:?}"));
            }
            if class.ground.layers > 1 || (class.ground.layers == 1 && class.ground.half != Half::None) {
                return Err(format!("class {c} ground is not a single bottom block"));
            }
        }
        Ok(())
    }
}

/// A Young wall given by its column shapes `cols[0], cols[1], ..` with
/// column 0 rightmost; columns past the end are in their ground state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungWall {
    cols: Vec<ColState>,
}

impl YoungWall {
    pub fn columns(&self) -> &[ColState] {
        &self.cols
    }

    /// Number of columns that are not in their ground state.
    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }
}

/// Signature of one column for one color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColumnSign {
    pub minus: usize,
    pub plus: usize,
}

impl fmt::Display for ColumnSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", "-".repeat(self.minus), "+".repeat(self.plus))
    }
}

/// The crystal of proper Young walls on a ground-state wall.
#[derive(Clone, Debug)]
pub struct WallCrystal {
    pub geometry: WallGeometry,
    pub cartan: CartanData,
}

impl WallCrystal {
    pub fn new(ty: AffineType, lambda: usize) -> Result<Self, Error> {
        Ok(WallCrystal { geometry: wall_geometry(ty, lambda)?, cartan: cartan_data(ty) })
    }

    pub fn ty(&self) -> AffineType {
        self.geometry.ty
    }

    pub fn lambda(&self) -> usize {
        self.geometry.lambda
    }

    pub fn ground_wall(&self) -> YoungWall {
        YoungWall { cols: Vec::new() }
    }

    /// Shape of column `k`.
    pub fn column(&self, w: &YoungWall, k: usize) -> ColState {
        w.cols.get(k).copied().unwrap_or_else(|| self.geometry.ground(k))
    }

    fn trimmed(&self, mut cols: Vec<ColState>) -> YoungWall {
        while let Some(&last) = cols.last() {
            if last == self.geometry.ground(cols.len() - 1) {
                cols.pop();
            } else {
                break;
            }
        }
        YoungWall { cols }
    }

    /// Builds a wall from column shapes and checks the building rules.
    pub fn from_columns(&self, cols: Vec<ColState>) -> Result<YoungWall, Error> {
        let w = self.trimmed(cols);
        self.validate(&w)?;
        Ok(w)
    }

    fn with_column(&self, w: &YoungWall, k: usize, s: ColState) -> YoungWall {
        let mut cols = w.cols.clone();
        while cols.len() <= k {
            cols.push(self.geometry.ground(cols.len()));
        }
        cols[k] = s;
        self.trimmed(cols)
    }

    /// Every column sits on its ground and no block has free space to its right.
    pub fn validate(&self, w: &YoungWall) -> Result<(), Error> {
        for (k, &s) in w.cols.iter().enumerate() {
            if !s.contains(self.geometry.ground(k)) {
                return Err(Error::InvalidWall(format!("column {k} lies below the ground")));
            }
            if k > 0 && !w.cols[k - 1].contains(s) {
                return Err(Error::InvalidWall(format!("column {k} has free space to its right")));
            }
            if s.half != Half::None && !matches!(self.geometry.pattern(k).layer(s.layers), Layer::Split { .. }) {
                return Err(Error::InvalidWall(format!("column {k} has a half block in a whole layer")));
            }
        }
        Ok(())
    }

    /// Whether column `k` has added blocks, no lone half and whole-unit height.
    pub fn is_full(&self, w: &YoungWall, k: usize) -> bool {
        let s = self.column(w, k);
        s != self.geometry.ground(k) && self.geometry.pattern(k).is_full_shape(s)
    }

    /// No two full columns share a height. Every wall of the untwisted `A`
    /// family is proper.
    pub fn is_proper(&self, w: &YoungWall) -> bool {
        if self.ty().family() == Family::AUntwisted {
            return true;
        }
        let mut heights: Vec<u64> =
            (0..w.len()).filter(|&k| self.is_full(w, k)).map(|k| self.geometry.pattern(k).height(w.cols[k])).collect();
        heights.sort_unstable();
        heights.windows(2).all(|p| p[0] != p[1])
    }

    /// Properness of `w` with column `k` replaced by `s`, assuming `w` is proper.
    fn proper_after(&self, w: &YoungWall, k: usize, s: ColState) -> bool {
        if self.ty().family() == Family::AUntwisted {
            return true;
        }
        let pattern = self.geometry.pattern(k);
        if s == pattern.ground || !pattern.is_full_shape(s) {
            return true;
        }
        let h = pattern.height(s);
        (0..w.len()).all(|j| j == k || !self.is_full(w, j) || self.geometry.pattern(j).height(w.cols[j]) != h)
    }

    /// The wall after removing the top `i`-block of column `k`, when that
    /// block is removable.
    pub fn remove_at(&self, w: &YoungWall, k: usize, i: usize) -> Option<YoungWall> {
        let s = self.geometry.pattern(k).remove_block(self.column(w, k), i)?;
        if !s.contains(self.column(w, k + 1)) || !self.proper_after(w, k, s) {
            return None;
        }
        Some(self.with_column(w, k, s))
    }

    /// The wall after adding an `i`-block on top of column `k`, when that
    /// slot is admissible.
    pub fn add_at(&self, w: &YoungWall, k: usize, i: usize) -> Option<YoungWall> {
        let s = self.geometry.pattern(k).add_block(self.column(w, k), i)?;
        if k > 0 && !self.column(w, k - 1).contains(s) {
            return None;
        }
        if !self.proper_after(w, k, s) {
            return None;
        }
        Some(self.with_column(w, k, s))
    }

    /// Counts how often column `k` is `i`-removable and `i`-admissible in a row.
    pub fn column_signature(&self, w: &YoungWall, k: usize, i: usize) -> ColumnSign {
        let repeat = |step: &dyn Fn(&YoungWall) -> Option<YoungWall>| {
            let mut count = 0;
            let mut cur = w.clone();
            while count < 2 {
                match step(&cur) {
                    Some(next) => {
                        cur = next;
                        count += 1;
                    }
                    None => break,
                }
            }
            count
        };
        ColumnSign { minus: repeat(&|v| self.remove_at(v, k, i)), plus: repeat(&|v| self.add_at(v, k, i)) }
    }

    /// Column signatures read from the leftmost column (largest index) to
    /// column 0, as `(column, sign)` pairs.
    pub fn signature_runs(&self, w: &YoungWall, i: usize) -> Vec<(usize, ColumnSign)> {
        (0..=w.len()).rev().map(|k| (k, self.column_signature(w, k, i))).collect()
    }

    /// The reduced `i`-signature together with the column order used.
    pub fn signature(&self, w: &YoungWall, i: usize) -> (SignatureTape, Vec<usize>) {
        let runs = self.signature_runs(w, i);
        let tape = reduce_signature(&runs.iter().map(|(_, s)| (s.minus, s.plus)).collect::<Vec<_>>());
        (tape, runs.into_iter().map(|(k, _)| k).collect())
    }

    pub fn apply(&self, w: &YoungWall, i: usize, dir: Direction) -> Option<YoungWall> {
        let (tape, order) = self.signature(w, i);
        match dir {
            Direction::E => self.remove_at(w, order[tape.e_factor?], i),
            Direction::F => self.add_at(w, order[tape.f_factor?], i),
        }
    }

    /// `lambda - sum_i k_i alpha_i` with `k_i` the number of added `i`-blocks.
    pub fn affine_weight(&self, w: &YoungWall) -> AffineWeight {
        let mut content = vec![0i64; self.cartan.size()];
        for (k, &s) in w.cols.iter().enumerate() {
            for (c, x) in content.iter_mut().zip(self.geometry.pattern(k).added_colors(s)) {
                *c += x;
            }
        }
        AffineWeight { base: Some(self.lambda()), content }
    }

    pub fn added_blocks(&self, w: &YoungWall) -> u64 {
        w.cols.iter().enumerate().map(|(k, &s)| self.geometry.pattern(k).added_blocks(s)).sum()
    }

    /// Column `k` still gives a proper wall after dropping one period of layers.
    pub fn has_removable_delta(&self, w: &YoungWall, k: usize) -> bool {
        let s = self.column(w, k);
        let p = self.geometry.period();
        if s.layers < p {
            return false;
        }
        let lower = ColState::new(s.layers - p, s.half);
        if !lower.contains(self.geometry.ground(k)) || !lower.contains(self.column(w, k + 1)) {
            return false;
        }
        self.is_proper(&self.with_column(w, k, lower))
    }

    pub fn is_reduced(&self, w: &YoungWall) -> bool {
        (0..w.len()).all(|k| !self.has_removable_delta(w, k))
    }

    /// Canonical text: added blocks per column, with `f` marking a lone front half.
    pub fn counts_literal(&self, w: &YoungWall) -> String {
        let parts: Vec<String> = w
            .cols
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let c = self.geometry.pattern(k).added_blocks(s);
                if s.half == Half::Front {
                    format!("{c}f")
                } else {
                    c.to_string()
                }
            })
            .collect();
        parts.join(",")
    }

    /// Full literal `L<lambda>;counts=<c0>,<c1>,..`.
    pub fn literal(&self, w: &YoungWall) -> String {
        format!("L{};counts={}", self.lambda(), self.counts_literal(w))
    }

    /// Parses a counts list such as `3,2f,1`.
    pub fn parse_counts(&self, s: &str) -> Result<YoungWall, Error> {
        let mut cols = Vec::new();
        for (k, token) in s.split(',').map(str::trim).filter(|t| !t.is_empty()).enumerate() {
            let (digits, front) = match token.strip_suffix('f') {
                Some(d) => (d, true),
                None => (token, false),
            };
            let count: u64 = digits.parse().map_err(|_| Error::Parse(format!("invalid column count {token:?}")))?;
            let state = self
                .geometry
                .pattern(k)
                .state_from_count(count, front)
                .ok_or_else(|| Error::Parse(format!("column {k} cannot hold {token}")))?;
            cols.push(state);
        }
        self.from_columns(cols)
    }

    /// Parses `L<lambda>;counts=..` or a bare counts list.
    pub fn parse_literal(&self, s: &str) -> Result<YoungWall, Error> {
        let s = s.trim();
        let counts = match s.split_once(';') {
            Some((head, rest)) => {
                let lam = head.trim().trim_start_matches("lambda=").trim_start_matches('L');
                if lam.parse::<usize>().ok() != Some(self.lambda()) {
                    return Err(Error::Parse(format!("wall literal {s:?} is not on L{}", self.lambda())));
                }
                rest.trim().strip_prefix("counts=").ok_or_else(|| Error::Parse(format!("missing counts in {s:?}")))?
            }
            None => s,
        };
        self.parse_counts(counts)
    }

    fn cell(&self, k: usize, s: ColState, r: u64) -> String {
        let pattern = self.geometry.pattern(k);
        let ground = pattern.ground;
        let present = |slot_half: Half| {
            let here = ColState::new(r, slot_half);
            let above = ColState::new(r + 1, Half::None);
            match slot_half {
                Half::None => s.contains(above),
                _ => s.contains(above) || s.contains(here),
            }
        };
        let grounded = |slot_half: Half| {
            let above = ColState::new(r + 1, Half::None);
            match slot_half {
                Half::None => ground.contains(above),
                _ => ground.contains(above) || ground.contains(ColState::new(r, slot_half)),
            }
        };
        match pattern.layer(r) {
            Layer::Single { color, half } => {
                if !present(Half::None) || grounded(Half::None) {
                    return ".".into();
                }
                if half {
                    format!("{color}h")
                } else {
                    color.to_string()
                }
            }
            Layer::Split { back, front } => {
                let show = |h: Half, c: usize| {
                    if !present(h) {
                        "-".to_string()
                    } else if grounded(h) {
                        "#".to_string()
                    } else {
                        c.to_string()
                    }
                };
                let (b, f) = (show(Half::Back, back), show(Half::Front, front));
                if (b == "#" || b == "-") && (f == "#" || f == "-") {
                    ".".into()
                } else {
                    format!("{b}/{f}")
                }
            }
        }
    }

    /// Text diagram: one row per layer above the ground layers, top row first, leftmost column
    /// first; `.` is an empty cell, `h` marks a half-height block, `b/f`
    /// shows a split cell with `-` for a missing half and `#` for a ground
    /// half. The last line is the baseline.
    pub fn render_ascii(&self, w: &YoungWall) -> String {
        let base = self.geometry.ground(0).layers;
        let rows = w.cols.iter().map(|s| s.layers + u64::from(s.half != Half::None)).max().unwrap_or(base);
        let grid: Vec<Vec<String>> =
            (base..rows).rev().map(|r| (0..w.len()).rev().map(|k| self.cell(k, w.cols[k], r)).collect()).collect();
        let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in &grid {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        let base_len = if w.is_empty() { 1 } else { w.len() * (width + 1) - 1 };
        out.push_str(&"=".repeat(base_len));
        out.push('\n');
        out
    }

    /// Inverse of [`render_ascii`](Self::render_ascii).
    pub fn parse_ascii(&self, text: &str) -> Result<YoungWall, Error> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let (base, body) = lines.split_last().ok_or_else(|| Error::Parse("empty wall diagram".into()))?;
        if !base.chars().all(|c| c == '=') {
            return Err(Error::Parse("wall diagram must end with a baseline".into()));
        }
        let rows: Vec<Vec<&str>> = body.iter().map(|l| l.split_whitespace().collect()).collect();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Parse("rows of the wall diagram have different lengths".into()));
        }
        let mut cols = Vec::with_capacity(ncols);
        for k in 0..ncols {
            let position = ncols - 1 - k;
            let ground = self.geometry.ground(k);
            let mut state = ground;
            for (depth, row) in rows.iter().enumerate() {
                let cell = row[position];
                if cell == "." {
                    continue;
                }
                let r = self.geometry.ground(0).layers + (rows.len() - 1 - depth) as u64;
                state = match cell.split_once('/') {
                    Some((b, f)) => match (b != "-", f != "-") {
                        (true, true) => ColState::new(r + 1, Half::None),
                        (true, false) => ColState::new(r, Half::Back),
                        (false, true) => ColState::new(r, Half::Front),
                        (false, false) => return Err(Error::Parse(format!("empty split cell {cell:?}"))),
                    },
                    None => ColState::new(r + 1, Half::None),
                };
                break;
            }
            cols.push(state);
        }
        let w = self.from_columns(cols)?;
        if self.render_ascii(&w).trim_end() != text.trim_end() {
            return Err(Error::Parse("wall diagram does not match the column patterns".into()));
        }
        Ok(w)
    }

    /// All reduced proper walls with at most `max_blocks` added blocks, in
    /// lexicographic order of their column shapes. Stops after `budget` walls.
    pub fn enumerate_reduced(&self, max_blocks: u64, budget: usize) -> Enumeration {
        let mut out = Enumeration { walls: Vec::new(), truncated: false };
        let mut prefix = Vec::new();
        self.extend_walls(&mut prefix, max_blocks, budget, &mut out);
        out
    }

    /// Shapes of column `k` holding at most `budget` added blocks.
    fn column_options(&self, k: usize, budget: u64) -> Vec<ColState> {
        let pattern = self.geometry.pattern(k);
        let mut options = Vec::new();
        let mut layers = pattern.ground.layers;
        loop {
            let mut any = false;
            for half in [Half::None, Half::Back, Half::Front] {
                let s = ColState::new(layers, half);
                if half != Half::None && !matches!(pattern.layer(layers), Layer::Split { .. }) {
                    continue;
                }
                if !s.contains(pattern.ground) {
                    continue;
                }
                if pattern.added_blocks(s) <= budget {
                    options.push(s);
                    any = true;
                }
            }
            if !any && layers > pattern.ground.layers {
                break;
            }
            layers += 1;
        }
        options
    }

    fn extend_walls(&self, prefix: &mut Vec<ColState>, budget: u64, cap: usize, out: &mut Enumeration) {
        let k = prefix.len();
        let w = YoungWall { cols: prefix.clone() };
        if self.is_proper(&w) && self.is_reduced(&w) {
            if out.walls.len() >= cap {
                out.truncated = true;
                return;
            }
            out.walls.push(w);
        }
        if budget == 0 {
            return;
        }
        for s in self.column_options(k, budget) {
            let pattern = self.geometry.pattern(k);
            if s == pattern.ground || (k > 0 && !prefix[k - 1].contains(s)) {
                continue;
            }
            let used = pattern.added_blocks(s);
            prefix.push(s);
            self.extend_walls(prefix, budget - used, cap, out);
            prefix.pop();
            if out.truncated {
                return;
            }
        }
    }

    /// Multiplicity of each weight content among reduced proper walls with
    /// at most `max_blocks` added blocks.
    pub fn character_table(&self, max_blocks: u64, budget: usize) -> CharacterTable {
        let e = self.enumerate_reduced(max_blocks, budget);
        let mut multiplicities = BTreeMap::new();
        let mut totals = vec![0usize; max_blocks as usize + 1];
        for w in &e.walls {
            *multiplicities.entry(self.affine_weight(w).content).or_insert(0) += 1;
            totals[self.added_blocks(w) as usize] += 1;
        }
        CharacterTable { multiplicities, totals, truncated: e.truncated }
    }
}

/// Result of an exhaustive wall enumeration.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub walls: Vec<YoungWall>,
    pub truncated: bool,
}

/// Weight multiplicities and per-block-count totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    /// Map from block content `(k_0, .., k_n)` to the number of walls.
    pub multiplicities: BTreeMap<Vec<i64>, usize>,
    /// `totals[m]` is the number of walls with `m` added blocks.
    pub totals: Vec<usize>,
    pub truncated: bool,
}

/// Outcome of applying random operator words to the ground wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub words: usize,
    /// Operators applied over all words.
    pub steps: usize,
    pub violations: usize,
    /// First word, as `f0 e2 ..`, reaching a wall that is invalid, improper or not reduced.
    pub first_violation: Option<String>,
}

impl WallCrystal {
    /// Applies `words` random words of at most `max_len` operators and
    /// checks every intermediate wall. Each step picks among the operators
    /// that return a wall, with every `f_i` twice as likely as every `e_i`;
    /// a word ends early only when no operator applies. Word `j` uses
    /// stream `j` of `seed`.
    pub fn random_closure(&self, words: usize, max_len: usize, seed: u64) -> ClosureReport {
        let n = self.num_indices();
        let results: Vec<(usize, Option<String>)> = (0..words)
            .into_par_iter()
            .map(|j| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(j as u64);
                let mut w = self.ground_wall();
                let mut word = Vec::new();
                for _ in 0..max_len {
                    let mut moves = Vec::new();
                    for i in 0..n {
                        let (tape, order) = self.signature(&w, i);
                        if let Some(v) = tape.f_factor.and_then(|j| self.add_at(&w, order[j], i)) {
                            moves.push((format!("f{i}"), v.clone()));
                            moves.push((format!("f{i}"), v));
                        }
                        if let Some(v) = tape.e_factor.and_then(|j| self.remove_at(&w, order[j], i)) {
                            moves.push((format!("e{i}"), v));
                        }
                    }
                    if moves.is_empty() {
                        break;
                    }
                    let (op, next) = moves.swap_remove(rng.gen_range(0..moves.len()));
                    word.push(op);
                    w = next;
                    if self.validate(&w).is_err() || !self.is_proper(&w) || !self.is_reduced(&w) {
                        return (word.len(), Some(word.join(" ")));
                    }
                }
                (word.len(), None)
            })
            .collect();
        let violations: Vec<&String> = results.iter().filter_map(|(_, v)| v.as_ref()).collect();
        ClosureReport {
            words,
            steps: results.iter().map(|(s, _)| s).sum(),
            violations: violations.len(),
            first_violation: violations.first().map(|v| v.to_string()),
        }
    }
}

impl Crystal for WallCrystal {
    type Elem = YoungWall;

    fn num_indices(&self) -> usize {
        self.cartan.size()
    }

    fn weight(&self, w: &YoungWall) -> Vec<i64> {
        self.affine_weight(w).pairings(&self.cartan)
    }

    fn eps(&self, w: &YoungWall, i: usize) -> usize {
        self.signature(w, i).0.minus
    }

    fn phi(&self, w: &YoungWall, i: usize) -> usize {
        self.signature(w, i).0.plus
    }

    fn e(&self, w: &YoungWall, i: usize) -> Option<YoungWall> {
        self.apply(w, i, Direction::E)
    }

    fn f(&self, w: &YoungWall, i: usize) -> Option<YoungWall> {
        self.apply(w, i, Direction::F)
    }

    fn key(&self, w: &YoungWall) -> String {
        self.counts_literal(w)
    }
}
