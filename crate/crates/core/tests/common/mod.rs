// SPDX-License-Identifier: Apache-2.0
//! Oracles shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;

use serde::Deserialize;
use wallcrys::cartan::{cartan_data, AffineType};
use wallcrys::crystal::{
    generate_graph, tensor_apply, tensor_eps_phi, Crystal, CrystalGraph, Direction, Limits, Tensor,
};
use wallcrys::path::{LambdaPath, PathCrystal};
use wallcrys::wall::{ColState, Slot, WallCrystal, YoungWall};

/// Types exercised by the verification matrix.
pub const MATRIX: [&str; 13] =
    ["A1~1", "A2~1", "A3~1", "A5~2", "A7~2", "D4~1", "D5~1", "A4~2", "A6~2", "D3~2", "D4~2", "B3~1", "B4~1"];

/// Types at the smallest rank of their family.
pub const RANK_MINIMAL: [&str; 6] = ["A1~1", "A5~2", "D4~1", "A4~2", "D3~2", "B3~1"];

/// Pairs with stored reference graphs, as fixture stems.
pub const REFERENCES: [&str; 7] = ["A2~1_L0", "A5~2_L0", "D4~1_L0", "A4~2_L0", "D3~2_L0", "B3~1_L0", "B3~1_L3"];

/// Every `(type, lambda)` pair of the matrix.
pub fn matrix_pairs() -> Vec<(AffineType, usize)> {
    MATRIX
        .iter()
        .flat_map(|t| {
            let ty: AffineType = t.parse().unwrap();
            cartan_data(ty).level_one.into_iter().map(move |l| (ty, l))
        })
        .collect()
}

pub fn parse_stem(stem: &str) -> (AffineType, usize) {
    let (ty, lam) = stem.split_once('_').unwrap();
    (ty.parse().unwrap(), lam[1..].parse().unwrap())
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

#[derive(Deserialize)]
struct Fixture<N> {
    nodes: Vec<N>,
    edges: Vec<(usize, usize, usize)>,
    corrections: Vec<Correction<N>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Correction<N> {
    Relabel { node: usize, listed: N, corrected: N },
    MissingNode { missing_node: N },
    MissingEdge { missing_edge: (N, usize, N) },
}

/// Labeled graph with nodes identified by their text.
#[derive(Debug, PartialEq, Eq)]
pub struct LabeledGraph<N: Ord> {
    pub nodes: BTreeSet<N>,
    pub edges: BTreeSet<(N, usize, N)>,
}

/// A reference graph with its corrections applied, and its depth from node 0.
pub struct Reference<N: Ord> {
    pub graph: LabeledGraph<N>,
    pub depth: usize,
    pub corrections: usize,
}

fn load<N: Ord + Clone + PartialEq + std::fmt::Debug + for<'de> Deserialize<'de>>(
    kind: &str,
    stem: &str,
) -> Reference<N> {
    let path = fixture_dir().join(kind).join(format!("{stem}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let fx: Fixture<N> = serde_json::from_str(&text).unwrap();
    let mut labels = fx.nodes.clone();
    let mut extra_nodes = Vec::new();
    let mut extra_edges = Vec::new();
    for e in &fx.corrections {
        match e {
            Correction::Relabel { node, listed, corrected } => {
                assert_eq!(&labels[*node], listed, "{stem}: correction does not match the listed label");
                labels[*node] = corrected.clone();
            }
            Correction::MissingNode { missing_node } => extra_nodes.push(missing_node.clone()),
            Correction::MissingEdge { missing_edge } => extra_edges.push(missing_edge.clone()),
        }
    }
    let mut depth = vec![usize::MAX; fx.nodes.len()];
    depth[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(a, _, b) in &fx.edges {
            if a == v && depth[b] == usize::MAX {
                depth[b] = depth[a] + 1;
                queue.push_back(b);
            }
        }
    }
    assert!(depth.iter().all(|&d| d != usize::MAX), "{stem}: reference graph has unreachable nodes");
    let mut graph = LabeledGraph { nodes: BTreeSet::new(), edges: BTreeSet::new() };
    graph.nodes.extend(labels.iter().cloned());
    graph.nodes.extend(extra_nodes);
    graph.edges.extend(fx.edges.iter().map(|&(a, i, b)| (labels[a].clone(), i, labels[b].clone())));
    graph.edges.extend(extra_edges);
    Reference { graph, depth: depth.into_iter().max().unwrap(), corrections: fx.corrections.len() }
}

pub fn path_reference(stem: &str) -> Reference<String> {
    load("path_graphs", stem)
}

pub fn wall_reference(stem: &str) -> Reference<Vec<String>> {
    load("wall_graphs", stem)
}

/// Width of the listed path labels.
pub fn label_width(reference: &Reference<String>) -> usize {
    reference
        .graph
        .nodes
        .iter()
        .map(|n| n.trim_start_matches("(...").trim_end_matches(')').split_whitespace().count())
        .max()
        .unwrap()
}

fn labeled<N: Ord + Clone>(g: &CrystalGraph, label: impl Fn(usize) -> N) -> LabeledGraph<N> {
    let labels: Vec<N> = (0..g.nodes.len()).map(label).collect();
    LabeledGraph {
        nodes: labels.iter().cloned().collect(),
        edges: g.edges.iter().map(|e| (labels[e.src].clone(), e.label, labels[e.dst].clone())).collect(),
    }
}

/// Path graph to `depth` labeled like the reference graphs.
pub fn path_graph_labeled(ty: AffineType, lambda: usize, depth: usize, width: usize) -> LabeledGraph<String> {
    let pc = PathCrystal::new(ty, lambda).unwrap();
    let g = generate_graph(&pc, LambdaPath::ground(), Limits::depth(depth));
    labeled(&g.graph, |v| pc.render(&g.elems[v], width))
}

/// Blocks added above the ground, bottom first, as reference tokens: `c` for a
/// cube, `h` for a half-height block, `b` and `f` for back and front halves.
pub fn column_tokens(wc: &WallCrystal, k: usize, s: ColState) -> Vec<String> {
    let p = wc.geometry.pattern(k);
    let skip = p.total_blocks(p.ground) as usize;
    p.blocks(s)
        .into_iter()
        .skip(skip)
        .map(|b| {
            let c = match (b.slot, b.height) {
                (Slot::Back, _) => 'b',
                (Slot::Front, _) => 'f',
                (Slot::Full, 1) => 'h',
                _ => 'c',
            };
            format!("{c}{}", b.color)
        })
        .collect()
}

/// Wall as reference columns, column 0 first, each column's tokens sorted.
pub fn wall_tokens(wc: &WallCrystal, w: &YoungWall) -> Vec<String> {
    let mut cols: Vec<String> = (0..w.len())
        .map(|k| {
            let mut t = column_tokens(wc, k, wc.column(w, k));
            t.sort();
            t.join(" ")
        })
        .collect();
    while cols.last().is_some_and(String::is_empty) {
        cols.pop();
    }
    cols
}

fn sorted_columns(cols: &[String]) -> Vec<String> {
    cols.iter()
        .map(|c| {
            let mut t: Vec<&str> = c.split_whitespace().collect();
            t.sort();
            t.join(" ")
        })
        .collect()
}

/// Wall graph to `depth` labeled by sorted block tokens.
pub fn wall_graph_labeled(ty: AffineType, lambda: usize, depth: usize) -> LabeledGraph<Vec<String>> {
    let wc = WallCrystal::new(ty, lambda).unwrap();
    let g = generate_graph(&wc, wc.ground_wall(), Limits::depth(depth));
    labeled(&g.graph, |v| wall_tokens(&wc, &g.elems[v]))
}

/// Reference graph with each column's tokens sorted, to compare with generated walls.
pub fn normalize_wall_reference(reference: Reference<Vec<String>>) -> Reference<Vec<String>> {
    let graph = LabeledGraph {
        nodes: reference.graph.nodes.iter().map(|n| sorted_columns(n)).collect(),
        edges: reference.graph.edges.iter().map(|(a, i, b)| (sorted_columns(a), *i, sorted_columns(b))).collect(),
    };
    Reference { graph, ..reference }
}

/// Describes the differences between two labeled graphs, or `None` if equal.
pub fn diff<N: Ord + std::fmt::Debug>(expected: &LabeledGraph<N>, actual: &LabeledGraph<N>) -> Option<String> {
    let mut out = Vec::new();
    out.extend(expected.nodes.difference(&actual.nodes).map(|n| format!("missing node {n:?}")));
    out.extend(actual.nodes.difference(&expected.nodes).map(|n| format!("extra node {n:?}")));
    out.extend(expected.edges.difference(&actual.edges).map(|e| format!("missing edge {e:?}")));
    out.extend(actual.edges.difference(&expected.edges).map(|e| format!("extra edge {e:?}")));
    (!out.is_empty()).then(|| out.join("; "))
}

/// Compares the path reference graph `stem` with the generated graph.
pub fn check_path_reference(stem: &str) -> Result<(usize, usize), String> {
    let (ty, lambda) = parse_stem(stem);
    let reference = path_reference(stem);
    let actual = path_graph_labeled(ty, lambda, reference.depth, label_width(&reference));
    match diff(&reference.graph, &actual) {
        None => Ok((actual.nodes.len(), actual.edges.len())),
        Some(d) => Err(d),
    }
}

/// Compares the wall reference graph `stem` with the generated graph.
pub fn check_wall_reference(stem: &str) -> Result<(usize, usize), String> {
    let (ty, lambda) = parse_stem(stem);
    let reference = normalize_wall_reference(wall_reference(stem));
    let actual = wall_graph_labeled(ty, lambda, reference.depth);
    match diff(&reference.graph, &actual) {
        None => Ok((actual.nodes.len(), actual.edges.len())),
        Some(d) => Err(d),
    }
}

/// Checks that both bracketings of `a (x) b (x) c` act like the flat word,
/// for every index and both operators.
pub fn associativity_violation<C: Crystal>(c: &C, triple: [C::Elem; 3]) -> Option<String> {
    let t = Tensor(c);
    let [a, b, x] = triple;
    let flat = vec![a.clone(), b.clone(), x.clone()];
    let left = vec![vec![a.clone(), b.clone()], vec![x.clone()]];
    let right = vec![vec![a], vec![b, x]];
    let flatten = |w: Vec<Vec<C::Elem>>| w.into_iter().flatten().collect::<Vec<_>>();
    for i in 0..c.num_indices() {
        let expected = tensor_eps_phi(c, &flat, i);
        for (name, word) in [("left", &left), ("right", &right)] {
            if tensor_eps_phi(&t, word, i) != expected {
                return Some(format!("{}: eps/phi_{i} differ for the {name} bracketing", t.key(&flat)));
            }
            for dir in [Direction::E, Direction::F] {
                let got = tensor_apply(&t, word, i, dir).map(flatten);
                if got != tensor_apply(c, &flat, i, dir) {
                    return Some(format!("{}: {dir:?}_{i} differs for the {name} bracketing", t.key(&flat)));
                }
            }
        }
    }
    None
}

/// Applies `(index, raise)` moves from the root, skipping undefined ones.
pub fn walk<C: Crystal>(c: &C, root: C::Elem, moves: &[(usize, bool)]) -> Vec<C::Elem> {
    let mut out = vec![root];
    for &(i, raise) in moves {
        let cur = out.last().unwrap();
        let i = i % c.num_indices();
        let next = if raise { c.e(cur, i) } else { c.f(cur, i) };
        if let Some(n) = next {
            out.push(n);
        }
    }
    out
}
