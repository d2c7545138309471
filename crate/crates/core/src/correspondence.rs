// SPDX-License-Identifier: Apache-2.0
//! The column-reading map from reduced proper Young walls to lambda-paths,
//! bounded-depth verification that it is a crystal isomorphism, and the
//! local case analysis for the untwisted `B` family.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{AffineType, Family};
use crate::crystal::{generate_graph, Crystal, Direction, Limits, SignatureTape};
use crate::error::Error;
use crate::path::{LambdaPath, PathCrystal};
use crate::perfect::{Elem, PerfectCrystal};
use crate::wall::{ColState, ColumnPattern, Half, Layer, WallCrystal, YoungWall};

/// Table key: column class, complete layers modulo the period, lone half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsiKey {
    pub class: usize,
    pub residue: u64,
    pub half: Half,
}

impl fmt::Display for PsiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = match self.half {
            Half::None => "",
            Half::Back => "+back",
            Half::Front => "+front",
        };
        write!(f, "class {} layers {}{half}", self.class, self.residue)
    }
}

/// The reading map as explicit data: one crystal element per top state of
/// each column class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTable {
    pub ty: AffineType,
    pub lambda: usize,
    period: u64,
    classes: usize,
    entries: BTreeMap<PsiKey, Elem>,
}

fn elem(j: usize) -> Elem {
    Elem::Box(j as u8)
}

fn bar(j: usize) -> Elem {
    Elem::Bar(j as u8)
}

/// Element read from the top of a column in state `s`.
fn read_top(family: Family, n: usize, pattern: &ColumnPattern, s: ColState) -> Elem {
    if family == Family::AUntwisted {
        return match pattern.layer(s.layers) {
            Layer::Single { color: 0, .. } => Elem::Zero,
            Layer::Single { color, .. } => elem(color),
            Layer::Split { .. } => unreachable!("untwisted A columns have no split layers"),
        };
    }
    if let Some(c) = pattern.half_color(s) {
        return match c {
            0 => elem(1),
            1 => bar(1),
            c if c == n - 1 => elem(n),
            _ => bar(n),
        };
    }
    let p = pattern.period();
    let r = (s.layers + p - 1) % p;
    let next = pattern.layer(r + 1);
    match pattern.layer(r) {
        Layer::Split { back, front } => {
            if back.min(front) == 0 {
                elem(2)
            } else {
                bar(n - 1)
            }
        }
        Layer::Single { color, half: true } => {
            let first = next == Layer::Single { color, half: true };
            match (color == 0, first) {
                (true, true) => Elem::Empty,
                (true, false) => elem(1),
                (false, true) => Elem::Zero,
                (false, false) => bar(n),
            }
        }
        Layer::Single { color: t, half: false } => {
            let ascending = match next {
                Layer::Single { color, half: false } => color == t + 1,
                Layer::Single { color, half: true } => t + 1 == n && color == n,
                Layer::Split { back, front } => t + 2 == n && back.max(front) == n,
            };
            if ascending {
                elem(t + 1)
            } else {
                bar(t)
            }
        }
    }
}

impl PsiTable {
    /// Builds the table from the top-of-column reading rules.
    pub fn new(walls: &WallCrystal) -> Self {
        let geometry = &walls.geometry;
        let (family, n) = (walls.ty().family(), walls.ty().rank());
        let period = geometry.period();
        let mut entries = BTreeMap::new();
        for (class, pattern) in geometry.classes.iter().enumerate() {
            for residue in 0..period {
                for half in [Half::None, Half::Back, Half::Front] {
                    if half != Half::None && !matches!(pattern.layer(residue), Layer::Split { .. }) {
                        continue;
                    }
                    let key = PsiKey { class, residue, half };
                    let state = ColState::new(residue + period, half);
                    entries.insert(key, read_top(family, n, pattern, state));
                }
            }
        }
        PsiTable { ty: walls.ty(), lambda: walls.lambda(), period, classes: geometry.classes.len(), entries }
    }

    pub fn entries(&self) -> &BTreeMap<PsiKey, Elem> {
        &self.entries
    }

    pub fn key(&self, k: usize, s: ColState) -> PsiKey {
        PsiKey { class: k % self.classes, residue: s.layers % self.period, half: s.half }
    }

    /// Element for column `k` in state `s`.
    pub fn lookup(&self, k: usize, s: ColState) -> Option<Elem> {
        self.entries.get(&self.key(k, s)).copied()
    }

    /// Exchanges two entries; both keys must exist.
    pub fn swap(&mut self, a: PsiKey, b: PsiKey) -> Result<(), Error> {
        let (Some(&x), Some(&y)) = (self.entries.get(&a), self.entries.get(&b)) else {
            return Err(Error::InvalidType(format!("no table entry for {a} or {b}")));
        };
        self.entries.insert(a, y);
        self.entries.insert(b, x);
        Ok(())
    }

    /// Checks that every entry lies in the crystal, that ground columns read
    /// as the ground-state path, and that adding an `i`-block to a single
    /// column acts as `f_i` on its element, over two periods of every class.
    pub fn check_columns(&self, walls: &WallCrystal, paths: &PathCrystal) -> Result<(), String> {
        let crystal: &PerfectCrystal = &paths.crystal;
        for (key, &b) in &self.entries {
            if !crystal.contains(b) {
                return Err(format!("{key} reads {b}, which is not a crystal element"));
            }
        }
        let classes = walls.geometry.classes.len();
        if classes % paths.ground.period() != 0 {
            return Err(format!(
                "ground-state period {} does not divide the {classes} column classes",
                paths.ground.period()
            ));
        }
        let read = |k: usize, s: ColState| self.lookup(k, s).ok_or_else(|| format!("no entry for {}", self.key(k, s)));
        for k in 0..classes {
            let pattern = walls.geometry.pattern(k);
            let ground = read(k, pattern.ground)?;
            if ground != paths.ground.element(k) {
                return Err(format!("ground column {k} reads {ground} instead of {}", paths.ground.element(k)));
            }
            let limit = pattern.ground.layers + 2 * pattern.period();
            let mut seen = HashSet::from([pattern.ground]);
            let mut queue = VecDeque::from([pattern.ground]);
            while let Some(s) = queue.pop_front() {
                let b = read(k, s)?;
                for i in 0..walls.num_indices() {
                    let Some(t) = pattern.add_block(s, i) else { continue };
                    let image = read(k, t)?;
                    if crystal.f(&b, i) != Some(image) {
                        return Err(format!(
                            "adding an {i}-block to column {k} at {}: f_{i}({b}) is not {image}",
                            self.key(k, s)
                        ));
                    }
                    if t.layers <= limit && seen.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
        }
        Ok(())
    }
}

/// The reading map on one type and ground weight.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub walls: WallCrystal,
    pub paths: PathCrystal,
    pub table: PsiTable,
}

impl Correspondence {
    pub fn new(ty: AffineType, lambda: usize) -> Result<Self, Error> {
        let walls = WallCrystal::new(ty, lambda)?;
        let paths = PathCrystal::new(ty, lambda)?;
        let table = PsiTable::new(&walls);
        Ok(Correspondence { walls, paths, table })
    }

    /// Same model with a replaced table.
    pub fn with_table(mut self, table: PsiTable) -> Result<Self, Error> {
        if table.ty != self.walls.ty() || table.lambda != self.walls.lambda() {
            return Err(Error::Incomparable("table belongs to another type or weight".into()));
        }
        self.table = table;
        Ok(self)
    }

    /// Reads column `k` of `w` without checking reducedness.
    pub fn read(&self, w: &YoungWall, k: usize) -> Result<Elem, Error> {
        let s = self.walls.column(w, k);
        self.table
            .lookup(k, s)
            .ok_or_else(|| Error::InvalidWall(format!("no table entry for {}", self.table.key(k, s))))
    }

    /// The lambda-path read from the tops of the columns of a reduced proper wall.
    pub fn psi(&self, w: &YoungWall) -> Result<LambdaPath, Error> {
        self.walls.validate(w)?;
        if !self.walls.is_proper(w) {
            return Err(Error::InvalidWall("two full columns have the same height".into()));
        }
        if !self.walls.is_reduced(w) {
            return Err(Error::NotReduced(self.walls.literal(w)));
        }
        let entries = (0..w.len()).map(|k| self.read(w, k)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.paths.from_entries(entries))
    }

    /// Column acted on by the surviving sign of a wall signature.
    fn wall_position(order: &[usize], factor: Option<usize>) -> Option<usize> {
        factor.map(|j| order[j])
    }

    /// Path index acted on by the surviving sign; factor 0 is the head.
    fn path_position(tail: usize, factor: Option<usize>) -> Option<usize> {
        factor.map(|j| tail - j)
    }

    /// Compares a wall with its image: weight, signatures, action positions
    /// and both operators for every index. Returns the failing step.
    fn check_node(&self, w: &YoungWall, p: &LambdaPath) -> Result<(), (Option<String>, String)> {
        let (walls, paths) = (&self.walls, &self.paths);
        if walls.weight(w) != paths.weight(p) {
            return Err((None, format!("weights differ: {:?} vs {:?}", walls.weight(w), paths.weight(p))));
        }
        for i in 0..walls.num_indices() {
            let (wall_tape, order): (SignatureTape, Vec<usize>) = walls.signature(w, i);
            let path_tape = paths.signature_with_window(p, i, p.tail());
            if (wall_tape.minus, wall_tape.plus) != (path_tape.minus, path_tape.plus) {
                return Err((
                    None,
                    format!(
                        "{i}-signatures differ: wall (-{}, +{}) vs path (-{}, +{})",
                        wall_tape.minus, wall_tape.plus, path_tape.minus, path_tape.plus
                    ),
                ));
            }
            let wall_at = [wall_tape.e_factor, wall_tape.f_factor].map(|f| Self::wall_position(&order, f));
            let path_at = [path_tape.e_factor, path_tape.f_factor].map(|f| Self::path_position(p.tail(), f));
            if wall_at != path_at {
                return Err((None, format!("{i}-operators act at columns {wall_at:?} vs path positions {path_at:?}")));
            }
            for dir in [Direction::F, Direction::E] {
                let op = match dir {
                    Direction::E => format!("e{i}"),
                    Direction::F => format!("f{i}"),
                };
                let wall_image = match dir {
                    Direction::E => walls.e(w, i),
                    Direction::F => walls.f(w, i),
                };
                let path_image = match dir {
                    Direction::E => paths.e(p, i),
                    Direction::F => paths.f(p, i),
                };
                let read = wall_image
                    .as_ref()
                    .map(|v| self.psi(v))
                    .transpose()
                    .map_err(|e| (Some(op.clone()), e.to_string()))?;
                if read != path_image {
                    let show = |x: Option<String>| match x {
                        None => "none".to_string(),
                        Some(k) if k.is_empty() => "the ground path".to_string(),
                        Some(k) => format!("({k})"),
                    };
                    return Err((
                        Some(op),
                        format!(
                            "reading the image gives {} but the path operator gives {}",
                            show(read.map(|q| paths.key(&q))),
                            show(path_image.map(|q| paths.key(&q)))
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Truncated,
}

/// Machine-readable verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub lambda: String,
    pub depth: usize,
    pub nodes: usize,
    pub edges: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample_word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

fn word_text(word: &[usize], last: Option<&str>) -> String {
    let mut parts: Vec<String> = word.iter().map(|i| format!("f{i}")).collect();
    parts.extend(last.map(str::to_string));
    parts.join(" ")
}

/// Generates both graphs to `depth` and checks that reading walls is a
/// bijection onto the path nodes that commutes with every `e_i` and `f_i`
/// and preserves weights and signatures. Stops with a partial report when
/// either graph exceeds `max_nodes`.
pub fn verify_isomorphism(model: &Correspondence, depth: usize, max_nodes: usize) -> IsoReport {
    let limits = Limits { max_depth: depth, max_nodes };
    let walls = generate_graph(&model.walls, model.walls.ground_wall(), limits);
    let paths = generate_graph(&model.paths, LambdaPath::ground(), limits);
    let mut report = IsoReport {
        ty: model.walls.ty().to_string(),
        lambda: format!("L{}", model.walls.lambda()),
        depth,
        nodes: walls.graph.nodes.len(),
        edges: walls.graph.edges.len(),
        status: Status::Pass,
        counterexample_word: None,
        reason: None,
    };
    if walls.graph.truncated || paths.graph.truncated {
        report.status = Status::Truncated;
        report.reason = Some(format!("node budget of {max_nodes} exceeded"));
        return report;
    }
    let failure = (0..walls.elems.len())
        .into_par_iter()
        .map(|v| {
            let w = &walls.elems[v];
            let fail = |op: Option<String>, reason: String| Some((v, op, reason));
            let p = match model.psi(w) {
                Ok(p) => p,
                Err(e) => return (fail(None, e.to_string()), None),
            };
            let key = model.paths.key(&p);
            let Some(&target) = paths.graph.index.get(&key) else {
                return (fail(None, format!("image ({key}) is not a path within depth {depth}")), None);
            };
            if paths.graph.nodes[target].depth != walls.graph.nodes[v].depth {
                return (fail(None, format!("image ({key}) lies at a different depth")), None);
            }
            match model.check_node(w, &p) {
                Ok(()) => (None, Some(target)),
                Err((op, reason)) => (fail(op, reason), None),
            }
        })
        .collect::<Vec<_>>();
    let mut targets = vec![None; paths.elems.len()];
    for (v, (fault, target)) in failure.into_iter().enumerate() {
        if let Some((v, op, reason)) = fault {
            report.status = Status::Fail;
            report.counterexample_word = Some(word_text(&walls.graph.word_to(v), op.as_deref()));
            report.reason = Some(reason);
            return report;
        }
        let target = target.expect("a checked node has an image");
        if let Some(prev) = targets[target] {
            report.status = Status::Fail;
            report.counterexample_word = Some(word_text(&walls.graph.word_to(v), None));
            report.reason = Some(format!(
                "walls {} and {} read as the same path",
                model.walls.literal(&walls.elems[prev]),
                model.walls.literal(&walls.elems[v])
            ));
            return report;
        }
        targets[target] = Some(v);
    }
    if let Some(missed) = targets.iter().position(Option::is_none) {
        report.status = Status::Fail;
        report.counterexample_word = Some(word_text(&paths.graph.word_to(missed), None));
        report.reason = Some(format!("path ({}) is not the image of any wall", paths.graph.nodes[missed].key));
    }
    report
}

/// Description of the top of a column, top cell first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Lone(usize),
    Split,
    Cube(usize),
    Short(usize),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Lone(c) => write!(f, "half {c}"),
            Cell::Split => f.write_str("split"),
            Cell::Cube(c) => write!(f, "{c}"),
            Cell::Short(c) => write!(f, "short {c}"),
        }
    }
}

fn layer_cell(layer: Layer) -> Cell {
    match layer {
        Layer::Single { color, half: false } => Cell::Cube(color),
        Layer::Single { color, half: true } => Cell::Short(color),
        Layer::Split { .. } => Cell::Split,
    }
}

/// A column top: the listed cells from the top down, and optionally the
/// layer that would come next.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Shape {
    cells: Vec<Cell>,
    next: Option<Cell>,
    reads: Elem,
}

impl Shape {
    fn new(cells: Vec<Cell>, next: Option<Cell>, reads: Elem) -> Self {
        Shape { cells, next, reads }
    }

    fn matches(&self, pattern: &ColumnPattern, s: ColState) -> bool {
        let mut top = Vec::new();
        if let Some(c) = pattern.half_color(s) {
            top.push(Cell::Lone(c));
        }
        let mut r = s.layers;
        while top.len() < self.cells.len() && r > 0 {
            r -= 1;
            top.push(layer_cell(pattern.layer(r)));
        }
        if top != self.cells {
            return false;
        }
        match self.next {
            None => true,
            Some(cell) => s.half == Half::None && layer_cell(pattern.layer(s.layers)) == cell,
        }
    }

    fn describe(&self) -> String {
        let cells: Vec<String> = self.cells.iter().map(Cell::to_string).collect();
        match self.next {
            Some(next) => format!("[{}] below {next}", cells.join(" on ")),
            None => format!("[{}]", cells.join(" on ")),
        }
    }
}

/// A left column with a `+` next to a right column with a `-` that cancel
/// on the wall, where the right column has `offset` more complete layers.
struct Pairing {
    plus: usize,
    minus: usize,
    offset: u64,
}

/// One local table: the index, the shapes and the cancelling pairs.
struct LocalTable {
    name: String,
    index: usize,
    shapes: Vec<Shape>,
    pairs: Vec<Pairing>,
}

fn local_tables(n: usize) -> Vec<LocalTable> {
    use Cell::{Cube, Lone, Short, Split};
    let mut tables = vec![LocalTable {
        name: "i=0".into(),
        index: 0,
        shapes: vec![
            Shape::new(vec![Lone(1)], None, bar(1)),
            Shape::new(vec![Cube(2)], Some(Split), bar(2)),
            Shape::new(vec![Lone(0)], None, elem(1)),
            Shape::new(vec![Lone(0), Cube(2)], None, elem(1)),
            Shape::new(vec![Split], None, elem(2)),
        ],
        pairs: vec![
            Pairing { plus: 0, minus: 2, offset: 0 },
            Pairing { plus: 1, minus: 3, offset: 0 },
            Pairing { plus: 0, minus: 4, offset: 1 },
        ],
    }];
    if n >= 4 {
        tables.push(LocalTable {
            name: "i=2".into(),
            index: 2,
            shapes: vec![
                Shape::new(vec![Split], None, elem(2)),
                Shape::new(vec![Cube(2), Split], None, elem(3)),
                Shape::new(vec![Cube(3)], Some(Cube(2)), bar(3)),
                Shape::new(vec![Cube(2), Cube(3)], None, bar(2)),
            ],
            pairs: vec![Pairing { plus: 0, minus: 1, offset: 1 }, Pairing { plus: 2, minus: 3, offset: 1 }],
        });
    }
    for i in 3..n.saturating_sub(1) {
        tables.push(LocalTable {
            name: format!("i={i}"),
            index: i,
            shapes: vec![
                Shape::new(vec![Cube(i - 1)], Some(Cube(i)), elem(i)),
                Shape::new(vec![Cube(i), Cube(i - 1)], None, elem(i + 1)),
                Shape::new(vec![Cube(i + 1)], Some(Cube(i)), bar(i + 1)),
                Shape::new(vec![Cube(i), Cube(i + 1)], None, bar(i)),
            ],
            pairs: vec![Pairing { plus: 0, minus: 1, offset: 1 }, Pairing { plus: 2, minus: 3, offset: 1 }],
        });
    }
    if n >= 4 {
        tables.push(LocalTable {
            name: format!("i={}", n - 1),
            index: n - 1,
            shapes: vec![
                Shape::new(vec![Cube(n - 2)], Some(Cube(n - 1)), elem(n - 1)),
                Shape::new(vec![Cube(n - 1), Cube(n - 2)], None, elem(n)),
                Shape::new(vec![Short(n), Short(n)], None, bar(n)),
                Shape::new(vec![Cube(n - 1), Short(n), Short(n)], None, bar(n - 1)),
            ],
            pairs: vec![Pairing { plus: 0, minus: 1, offset: 1 }, Pairing { plus: 2, minus: 3, offset: 1 }],
        });
    }
    tables
}

/// One checked row of the local case analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub table: String,
    pub case: String,
    /// Smallest wall exhibiting the configuration, if one was found.
    pub wall: Option<String>,
    /// Column of the configuration that lies further right.
    pub column: Option<usize>,
    pub expected_wall: Vec<String>,
    pub actual_wall: Vec<String>,
    pub expected_path: Vec<String>,
    pub actual_path: Vec<String>,
    pub passed: bool,
}

/// The case analysis for one rank of the untwisted `B` family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTableReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub rows: Vec<CaseRow>,
}

impl CaseTableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<&CaseRow> {
        self.rows.iter().filter(|r| !r.passed).collect()
    }
}

fn sign_text(minus: usize, plus: usize) -> String {
    format!("{}{}", "-".repeat(minus), "+".repeat(plus))
}

/// Reduced proper walls with at most `max_cols` changed columns, each
/// below `max_layers`, sorted by block count and then literal.
fn small_walls(walls: &WallCrystal, max_cols: usize, max_layers: u64) -> Vec<YoungWall> {
    fn extend(
        walls: &WallCrystal,
        prefix: &mut Vec<ColState>,
        max_cols: usize,
        max_layers: u64,
        out: &mut Vec<YoungWall>,
    ) {
        if let Ok(w) = walls.from_columns(prefix.clone()) {
            if w.len() == prefix.len() && walls.is_proper(&w) && walls.is_reduced(&w) {
                out.push(w);
            }
        }
        if prefix.len() == max_cols {
            return;
        }
        let k = prefix.len();
        let pattern = walls.geometry.pattern(k);
        for layers in pattern.ground.layers..max_layers {
            for half in [Half::None, Half::Back, Half::Front] {
                let s = ColState::new(layers, half);
                if half != Half::None && !matches!(pattern.layer(layers), Layer::Split { .. }) {
                    continue;
                }
                if s == pattern.ground || !s.contains(pattern.ground) || (k > 0 && !prefix[k - 1].contains(s)) {
                    continue;
                }
                prefix.push(s);
                extend(walls, prefix, max_cols, max_layers, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(walls, &mut Vec::new(), max_cols, max_layers, &mut out);
    out.sort_by_cached_key(|w| (walls.added_blocks(w), walls.literal(w)));
    out
}

/// Checks the local sign tables of the untwisted `B_n` family on the
/// ground weight `Lambda_0`, and the segment analysis for `i = n`.
pub fn case_table_check(n: usize) -> Result<CaseTableReport, Error> {
    let ty = AffineType::new(Family::BUntwisted, n)?;
    let model = Correspondence::new(ty, 0)?;
    let period = model.walls.geometry.period();
    let candidates = small_walls(&model.walls, 3, 2 * period + 1);
    let mut rows = Vec::new();
    for table in local_tables(n) {
        rows.extend(local_rows(&model, &table, &candidates)?);
    }
    rows.extend(segment_rows(&model)?);
    let lambda_n = Correspondence::new(ty, n)?;
    rows.push(degenerate_row(&lambda_n)?);
    Ok(CaseTableReport { ty: ty.to_string(), rows })
}

fn path_sign(model: &Correspondence, b: Elem, i: usize) -> String {
    let (e, p) = model.paths.crystal.eps_phi(b, i);
    sign_text(e, p)
}

fn local_rows(model: &Correspondence, table: &LocalTable, candidates: &[YoungWall]) -> Result<Vec<CaseRow>, Error> {
    let walls = &model.walls;
    let i = table.index;
    let fits = |w: &YoungWall, k: usize, shape: usize| {
        table.shapes[shape].matches(walls.geometry.pattern(k), walls.column(w, k))
    };
    let paired = |w: &YoungWall, left: usize, pair: &Pairing| {
        let (l, r) = (walls.column(w, left), walls.column(w, left - 1));
        fits(w, left, pair.plus) && fits(w, left - 1, pair.minus) && r.layers == l.layers + pair.offset
    };
    // Cases: (left shape, right shape, pairing) for cancelling neighbors,
    // then single shapes whose neighbor does not cancel them.
    enum Case<'a> {
        Cancel(&'a Pairing),
        Plus(usize),
        Minus(usize),
    }
    let mut cases: Vec<Case> = table.pairs.iter().map(Case::Cancel).collect();
    let mut seen = Vec::new();
    for pair in &table.pairs {
        if !seen.contains(&pair.plus) {
            seen.push(pair.plus);
            cases.push(Case::Plus(pair.plus));
        }
    }
    for pair in &table.pairs {
        if !seen.contains(&(pair.minus + 1000)) {
            seen.push(pair.minus + 1000);
            cases.push(Case::Minus(pair.minus));
        }
    }
    let mut rows = Vec::new();
    for case in cases {
        // Columns of the configuration from left to right, with the
        // expected wall signs and elements.
        let (description, found) = match case {
            Case::Cancel(pair) => {
                let description =
                    format!("{} left of {}", table.shapes[pair.plus].describe(), table.shapes[pair.minus].describe());
                let found = candidates.iter().find_map(|w| {
                    (1..=w.len()).find(|&left| paired(w, left, pair)).map(|left| (w, vec![left, left - 1]))
                });
                let expect = (vec![String::new(), String::new()], vec![pair.plus, pair.minus]);
                (description, found.map(|f| (f, expect)))
            }
            Case::Plus(shape) => {
                let description = format!("{} with a non-cancelling right neighbor", table.shapes[shape].describe());
                let found = candidates.iter().find_map(|w| {
                    (1..=w.len())
                        .find(|&k| fits(w, k, shape) && !table.pairs.iter().any(|p| p.plus == shape && paired(w, k, p)))
                        .map(|k| (w, vec![k]))
                });
                (description, found.map(|f| (f, (vec!["+".to_string()], vec![shape]))))
            }
            Case::Minus(shape) => {
                let description = format!("{} with a non-cancelling left neighbor", table.shapes[shape].describe());
                let found = candidates.iter().find_map(|w| {
                    (0..w.len())
                        .find(|&k| {
                            fits(w, k, shape) && !table.pairs.iter().any(|p| fits(w, k, p.minus) && paired(w, k + 1, p))
                        })
                        .map(|k| (w, vec![k]))
                });
                (description, found.map(|f| (f, (vec!["-".to_string()], vec![shape]))))
            }
        };
        let row = match found {
            None => CaseRow {
                table: table.name.clone(),
                case: description,
                wall: None,
                column: None,
                expected_wall: Vec::new(),
                actual_wall: Vec::new(),
                expected_path: Vec::new(),
                actual_path: Vec::new(),
                passed: false,
            },
            Some(((w, columns), (expected_wall, shapes))) => {
                let actual_wall: Vec<String> =
                    columns.iter().map(|&k| walls.column_signature(w, k, i).to_string()).collect();
                let path_signs: Vec<&str> =
                    if shapes.len() == 2 { vec!["+", "-"] } else { vec![expected_wall[0].as_str()] };
                let expected_path: Vec<String> = shapes
                    .iter()
                    .zip(path_signs)
                    .map(|(&s, sign)| format!("{}:{sign}", table.shapes[s].reads))
                    .collect();
                let actual_path = columns
                    .iter()
                    .map(|&k| model.read(w, k).map(|b| format!("{b}:{}", path_sign(model, b, i))))
                    .collect::<Result<Vec<_>, _>>()?;
                let passed = actual_wall == expected_wall && actual_path == expected_path;
                CaseRow {
                    table: table.name.clone(),
                    case: description,
                    wall: Some(walls.literal(w)),
                    column: columns.last().copied(),
                    expected_wall,
                    actual_wall,
                    expected_path,
                    actual_path,
                    passed,
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Which of the parts A, B and C are present.
type Presence = (bool, bool, bool);

/// The `i = n` segments: a column topped by `n-1` (part A), columns with one
/// short `n` block (part B) and a column with two (part C), left to right.
fn segment_rows(model: &Correspondence) -> Result<Vec<CaseRow>, Error> {
    let walls = &model.walls;
    let n = walls.ty().rank();
    let (a, b, c) = (
        ColState::new(n as u64 - 1, Half::None),
        ColState::new(n as u64, Half::None),
        ColState::new(n as u64 + 1, Half::None),
    );
    // (A, B, C present) with the expected part signs and total.
    let table: [(Presence, [&str; 3], &str); 7] = [
        ((true, true, true), ["+", "", "-"], ""),
        ((true, true, false), ["+", "+", ""], "++"),
        ((true, false, true), ["+", "", "-"], ""),
        ((true, false, false), ["++", "", ""], "++"),
        ((false, true, true), ["", "-", "-"], "--"),
        ((false, true, false), ["", "-+", ""], "-+"),
        ((false, false, true), ["", "", "--"], "--"),
    ];
    let mut rows = Vec::new();
    for ((has_a, has_b, has_c), parts, total) in table {
        for copies in [1usize, 2] {
            if !has_b && copies > 1 {
                continue;
            }
            // Columns from the right: C, then the B copies, then A.
            let mut cols = Vec::new();
            let mut spans: [Vec<usize>; 3] = Default::default();
            if has_c {
                spans[2].push(cols.len());
                cols.push(c);
            }
            if has_b {
                for _ in 0..copies {
                    spans[1].push(cols.len());
                    cols.push(b);
                }
            }
            if has_a {
                spans[0].push(cols.len());
                cols.push(a);
            }
            let w = walls.from_columns(cols)?;
            let i = n;
            let part_signs: Vec<String> = spans
                .iter()
                .map(|span| span.iter().rev().map(|&k| walls.column_signature(&w, k, i).to_string()).collect())
                .collect();
            let (tape, _) = walls.signature(&w, i);
            let p = model.psi(&w)?;
            let path_tape = model.paths.signature_with_window(&p, i, p.tail());
            let mut expected_wall: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
            expected_wall.push(total.to_string());
            let mut actual_wall = part_signs;
            actual_wall.push(sign_text(tape.minus, tape.plus));
            let expected_path = vec![total.to_string()];
            let actual_path = vec![sign_text(path_tape.minus, path_tape.plus)];
            let passed = actual_wall == expected_wall && actual_path == expected_path;
            let present: Vec<&str> = [(has_a, "A"), (has_b, "B"), (has_c, "C")]
                .iter()
                .filter(|(on, _)| *on)
                .map(|(_, name)| *name)
                .collect();
            rows.push(CaseRow {
                table: format!("i={n}"),
                case: format!("parts {} with {copies} column(s) in B", present.join("")),
                wall: Some(walls.literal(&w)),
                column: Some(0),
                expected_wall,
                actual_wall,
                expected_path,
                actual_path,
                passed,
            });
        }
    }
    Ok(rows)
}

/// The ground wall of `Lambda_n` as a degenerate segment: both sides are
/// evaluated and must agree.
fn degenerate_row(model: &Correspondence) -> Result<CaseRow, Error> {
    let walls = &model.walls;
    let n = walls.ty().rank();
    let w = walls.ground_wall();
    let (tape, _) = walls.signature(&w, n);
    let p = model.psi(&w)?;
    let path_tape = model.paths.signature_with_window(&p, n, p.tail());
    let wall_sign = sign_text(tape.minus, tape.plus);
    let path_sign = sign_text(path_tape.minus, path_tape.plus);
    Ok(CaseRow {
        table: format!("i={n}"),
        case: format!("ground wall of L{n}"),
        wall: Some(walls.literal(&w)),
        column: Some(0),
        expected_wall: vec![path_sign.clone()],
        actual_wall: vec![wall_sign],
        expected_path: vec![path_sign.clone()],
        actual_path: vec![path_sign],
        passed: p == LambdaPath::ground() && tape.minus == path_tape.minus && tape.plus == path_tape.plus,
    })
}
