// SPDX-License-Identifier: Apache-2.0
//! Abstract crystal interface, the signature rule for tensor words, breadth-first
//! graph generation and a rooted bisimulation check for deterministic
//! edge-labeled graphs.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;

/// A seminormal crystal: `eps` and `phi` are string lengths.
pub trait Crystal: Sync {
    type Elem: Clone + Eq + Hash + Send + Sync;

    /// Size of the index set.
    fn num_indices(&self) -> usize;
    /// Pairings `<h_i, wt(b)>` for every index `i`.
    fn weight(&self, b: &Self::Elem) -> Vec<i64>;
    fn eps(&self, b: &Self::Elem, i: usize) -> usize;
    fn phi(&self, b: &Self::Elem, i: usize) -> usize;
    fn e(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;
    fn f(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;
    /// Injective text encoding of an element within one crystal.
    fn key(&self, b: &Self::Elem) -> String;
}

/// Direction of a crystal operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    E,
    F,
}

/// Reduced form of an i-signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureTape {
    /// Surviving `-` signs; this is `eps_i` of the tensor word.
    pub minus: usize,
    /// Surviving `+` signs; this is `phi_i` of the tensor word.
    pub plus: usize,
    /// Factor holding the rightmost surviving `-`, where `e_i` acts.
    pub e_factor: Option<usize>,
    /// Factor holding the leftmost surviving `+`, where `f_i` acts.
    pub f_factor: Option<usize>,
}

/// Cancels `(+,-)` pairs in runs `(-)^eps (+)^phi` listed left to right.
pub fn reduce_signature(runs: &[(usize, usize)]) -> SignatureTape {
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut minus = 0;
    let mut e_factor = None;
    for (j, &(m, p)) in runs.iter().enumerate() {
        let mut m = m;
        while m > 0 {
            match pending.last_mut() {
                Some((_, count)) => {
                    let cancel = m.min(*count);
                    *count -= cancel;
                    m -= cancel;
                    if *count == 0 {
                        pending.pop();
                    }
                }
                None => break,
            }
        }
        if m > 0 {
            minus += m;
            e_factor = Some(j);
        }
        if p > 0 {
            pending.push((j, p));
        }
    }
    SignatureTape {
        minus,
        plus: pending.iter().map(|(_, c)| c).sum(),
        e_factor,
        f_factor: pending.first().map(|(j, _)| *j),
    }
}

/// Applies `e_i` or `f_i` to the tensor word `word[0] (x) word[1] (x) ...`.
pub fn tensor_apply<C: Crystal>(c: &C, word: &[C::Elem], i: usize, dir: Direction) -> Option<Vec<C::Elem>> {
    let runs: Vec<(usize, usize)> = word.iter().map(|b| (c.eps(b, i), c.phi(b, i))).collect();
    let tape = reduce_signature(&runs);
    let (pos, image) = match dir {
        Direction::E => {
            let j = tape.e_factor?;
            (j, c.e(&word[j], i)?)
        }
        Direction::F => {
            let j = tape.f_factor?;
            (j, c.f(&word[j], i)?)
        }
    };
    let mut out = word.to_vec();
    out[pos] = image;
    Some(out)
}

/// Whether no `e_i` acts on `b`.
pub fn is_maximal<C: Crystal>(c: &C, b: &C::Elem) -> bool {
    (0..c.num_indices()).all(|i| c.e(b, i).is_none())
}

/// `eps_i` and `phi_i` of a tensor word.
pub fn tensor_eps_phi<C: Crystal>(c: &C, word: &[C::Elem], i: usize) -> (usize, usize) {
    let runs: Vec<(usize, usize)> = word.iter().map(|b| (c.eps(b, i), c.phi(b, i))).collect();
    let tape = reduce_signature(&runs);
    (tape.minus, tape.plus)
}

/// Tensor words over a crystal, acted on by the signature rule. Factors are
/// listed left to right.
#[derive(Clone, Copy, Debug)]
pub struct Tensor<'a, C>(pub &'a C);

impl<C: Crystal> Crystal for Tensor<'_, C> {
    type Elem = Vec<C::Elem>;

    fn num_indices(&self) -> usize {
        self.0.num_indices()
    }

    fn weight(&self, word: &Vec<C::Elem>) -> Vec<i64> {
        let mut wt = vec![0; self.0.num_indices()];
        for b in word {
            for (w, x) in wt.iter_mut().zip(self.0.weight(b)) {
                *w += x;
            }
        }
        wt
    }

    fn eps(&self, word: &Vec<C::Elem>, i: usize) -> usize {
        tensor_eps_phi(self.0, word, i).0
    }

    fn phi(&self, word: &Vec<C::Elem>, i: usize) -> usize {
        tensor_eps_phi(self.0, word, i).1
    }

    fn e(&self, word: &Vec<C::Elem>, i: usize) -> Option<Vec<C::Elem>> {
        tensor_apply(self.0, word, i, Direction::E)
    }

    fn f(&self, word: &Vec<C::Elem>, i: usize) -> Option<Vec<C::Elem>> {
        tensor_apply(self.0, word, i, Direction::F)
    }

    fn key(&self, word: &Vec<C::Elem>) -> String {
        let keys: Vec<String> = word.iter().map(|b| self.0.key(b)).collect();
        keys.join(" (x) ")
    }
}

/// Outcome of checking the crystal axioms on a set of elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn axiom_violations<C: Crystal>(c: &C, b: &C::Elem, roots: &[Vec<i64>]) -> Vec<String> {
    let mut out = Vec::new();
    let wt = c.weight(b);
    let key = c.key(b);
    for (i, root) in roots.iter().enumerate().take(c.num_indices()) {
        let (eps, phi) = (c.eps(b, i), c.phi(b, i));
        if phi as i64 != eps as i64 + wt[i] {
            out.push(format!("[{key}] phi_{i} = {phi} but eps_{i} + <h_{i}, wt> = {}", eps as i64 + wt[i]));
        }
        let shifted = |sign: i64| -> Vec<i64> { wt.iter().zip(root).map(|(w, r)| w + sign * r).collect() };
        match c.e(b, i) {
            Some(up) => {
                if c.weight(&up) != shifted(1) {
                    out.push(format!("[{key}] wt(e_{i} b) != wt(b) + alpha_{i}"));
                }
                if c.eps(&up, i) + 1 != eps || c.phi(&up, i) != phi + 1 {
                    out.push(format!("[{key}] string lengths do not shift under e_{i}"));
                }
                if c.f(&up, i).as_ref() != Some(b) {
                    out.push(format!("[{key}] f_{i} e_{i} b != b"));
                }
            }
            None if eps != 0 => out.push(format!("[{key}] e_{i} b is none but eps_{i} = {eps}")),
            None => {}
        }
        match c.f(b, i) {
            Some(down) => {
                if c.weight(&down) != shifted(-1) {
                    out.push(format!("[{key}] wt(f_{i} b) != wt(b) - alpha_{i}"));
                }
                if c.eps(&down, i) != eps + 1 || c.phi(&down, i) + 1 != phi {
                    out.push(format!("[{key}] string lengths do not shift under f_{i}"));
                }
                if c.e(&down, i).as_ref() != Some(b) {
                    out.push(format!("[{key}] e_{i} f_{i} b != b"));
                }
            }
            None if phi != 0 => out.push(format!("[{key}] f_{i} b is none but phi_{i} = {phi}")),
            None => {}
        }
    }
    out
}

/// Checks the crystal axioms on every element: weight shifts by the simple
/// root under `e_i` and `f_i`, string lengths shift by one, `e_i` and `f_i`
/// are mutually inverse, the operators are defined exactly when the string
/// length is positive, and `phi_i = eps_i + <h_i, wt>`. `roots[i]` holds
/// the pairings `<h_j, alpha_i>`.
pub fn check_axioms<C: Crystal>(c: &C, elems: &[C::Elem], roots: &[Vec<i64>]) -> AxiomReport {
    let found: Vec<Vec<String>> = elems.par_iter().map(|b| axiom_violations(c, b, roots)).collect();
    AxiomReport {
        checked: elems.len(),
        violations: found.iter().map(Vec::len).sum(),
        first_violation: found.into_iter().flatten().next(),
    }
}

/// An element with its key.
type Keyed<E> = (String, E);

/// Per-node data stored in a generated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeRecord {
    pub depth: usize,
    pub eps: Vec<usize>,
    pub key: String,
    pub phi: Vec<usize>,
    pub wt: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub label: usize,
    pub dst: usize,
}

/// Limits for breadth-first generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Limits {
    pub fn depth(max_depth: usize) -> Self {
        Limits { max_depth, max_nodes: usize::MAX }
    }
}

/// A rooted, deterministic, edge-labeled crystal graph in breadth-first order.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<Edge>,
    pub index: HashMap<String, usize>,
    /// First edge that reached each node, as (parent, label).
    pub parent: Vec<Option<(usize, usize)>>,
    pub max_depth: usize,
    pub num_indices: usize,
    pub truncated: bool,
}

/// A generated graph together with the elements at each node.
pub struct Generated<E> {
    pub graph: CrystalGraph,
    pub elems: Vec<E>,
}

fn record<C: Crystal>(c: &C, b: &C::Elem, depth: usize) -> NodeRecord {
    let n = c.num_indices();
    NodeRecord {
        depth,
        eps: (0..n).map(|i| c.eps(b, i)).collect(),
        key: c.key(b),
        phi: (0..n).map(|i| c.phi(b, i)).collect(),
        wt: c.weight(b),
    }
}

/// Breadth-first closure of `root` under all `f_i`. Each frontier is expanded
/// in parallel and merged in node order, so the result does not depend on
/// scheduling.
pub fn generate_graph<C: Crystal>(c: &C, root: C::Elem, limits: Limits) -> Generated<C::Elem> {
    let n = c.num_indices();
    let root_rec = record(c, &root, 0);
    let mut graph = CrystalGraph {
        index: HashMap::from([(root_rec.key.clone(), 0)]),
        nodes: vec![root_rec],
        edges: Vec::new(),
        parent: vec![None],
        max_depth: limits.max_depth,
        num_indices: n,
        truncated: false,
    };
    let mut elems = vec![root];
    let mut frontier = 0..1;
    for depth in 0..limits.max_depth {
        if frontier.is_empty() {
            break;
        }
        let images: Vec<Vec<Option<Keyed<C::Elem>>>> = frontier
            .clone()
            .into_par_iter()
            .map(|v| (0..n).map(|i| c.f(&elems[v], i).map(|b| (c.key(&b), b))).collect())
            .collect();
        let start = elems.len();
        for (v, row) in frontier.clone().zip(images) {
            for (i, image) in row.into_iter().enumerate() {
                let Some((key, b)) = image else { continue };
                let dst = match graph.index.get(&key) {
                    Some(&dst) => dst,
                    None => {
                        if elems.len() >= limits.max_nodes {
                            graph.truncated = true;
                            continue;
                        }
                        let dst = elems.len();
                        graph.index.insert(key.clone(), dst);
                        graph.parent.push(Some((v, i)));
                        graph.nodes.push(NodeRecord { depth: depth + 1, eps: vec![], key, phi: vec![], wt: vec![] });
                        elems.push(b);
                        dst
                    }
                };
                graph.edges.push(Edge { src: v, label: i, dst });
            }
        }
        let fresh: Vec<NodeRecord> =
            (start..elems.len()).into_par_iter().map(|v| record(c, &elems[v], depth + 1)).collect();
        for (v, rec) in (start..elems.len()).zip(fresh) {
            graph.nodes[v] = rec;
        }
        frontier = start..elems.len();
    }
    Generated { graph, elems }
}

/// Outcome of a rooted bisimulation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisimulation {
    pub equivalent: bool,
    /// Shortest f-word (labels from the root) reaching the first divergence.
    pub counterexample: Option<Vec<usize>>,
    pub reason: Option<String>,
}

impl CrystalGraph {
    pub fn root_key(&self) -> &str {
        &self.nodes[0].key
    }

    /// Outgoing edges of every node as `(label, dst)`, sorted by label.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.src].push((e.label, e.dst));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    /// Labels of the first-discovery path from the root to `v`.
    pub fn word_to(&self, mut v: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((p, i)) = self.parent[v] {
            word.push(i);
            v = p;
        }
        word.reverse();
        word
    }

    /// Number of nodes at each depth.
    pub fn depth_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_depth + 1];
        for node in &self.nodes {
            counts[node.depth] += 1;
        }
        counts
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonEdge<'a> {
            dst: &'a str,
            i: usize,
            src: &'a str,
        }
        #[derive(Serialize)]
        struct JsonGraph<'a> {
            edges: Vec<JsonEdge<'a>>,
            nodes: &'a [NodeRecord],
            root: &'a str,
            truncated: bool,
        }
        let view = JsonGraph {
            edges: self
                .edges
                .iter()
                .map(|e| JsonEdge { dst: &self.nodes[e.dst].key, i: e.label, src: &self.nodes[e.src].key })
                .collect(),
            nodes: &self.nodes,
            root: self.root_key(),
            truncated: self.truncated,
        };
        serde_json::to_string_pretty(&view).expect("graph serialization cannot fail")
    }

    pub fn to_dot(&self) -> String {
        let name = |v: usize| {
            let key = &self.nodes[v].key;
            let label = if key.is_empty() { "ground" } else { key.as_str() };
            label.replace('\\', "\\\\").replace('"', "\\\"")
        };
        let mut out = String::from("digraph crystal {\n  node [shape=box, fontname=\"monospace\"];\n");
        for v in 0..self.nodes.len() {
            let _ = writeln!(out, "  n{v} [label=\"{}\"];", name(v));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.src, e.dst, e.label);
        }
        out.push_str("}\n");
        out
    }
}

/// Decides whether two deterministic rooted graphs are isomorphic by a
/// simultaneous traversal from the roots, comparing weights, `eps`, `phi` and
/// outgoing label sets.
pub fn graphs_bisimilar(g1: &CrystalGraph, g2: &CrystalGraph) -> Result<Bisimulation, Error> {
    if g1.max_depth != g2.max_depth {
        return Err(Error::Incomparable(format!("depths {} and {} differ", g1.max_depth, g2.max_depth)));
    }
    if g1.truncated || g2.truncated {
        return Err(Error::Incomparable("a graph was truncated by the node budget".into()));
    }
    let (a1, a2) = (g1.adjacency(), g2.adjacency());
    let mut fwd = vec![usize::MAX; g1.nodes.len()];
    let mut back = vec![usize::MAX; g2.nodes.len()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); g1.nodes.len()];
    let fail = |word: &[usize], reason: String| {
        Ok(Bisimulation { equivalent: false, counterexample: Some(word.to_vec()), reason: Some(reason) })
    };
    fwd[0] = 0;
    back[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v1) = queue.pop_front() {
        let v2 = fwd[v1];
        let (r1, r2) = (&g1.nodes[v1], &g2.nodes[v2]);
        if r1.wt != r2.wt || r1.eps != r2.eps || r1.phi != r2.phi || r1.depth != r2.depth {
            return fail(&words[v1], format!("node data differ: {} vs {}", r1.key, r2.key));
        }
        let labels1: Vec<usize> = a1[v1].iter().map(|e| e.0).collect();
        let labels2: Vec<usize> = a2[v2].iter().map(|e| e.0).collect();
        if labels1 != labels2 {
            return fail(&words[v1], format!("out-labels differ: {labels1:?} vs {labels2:?}"));
        }
        for (&(label, t1), &(_, t2)) in a1[v1].iter().zip(&a2[v2]) {
            let mut word = words[v1].clone();
            word.push(label);
            match (fwd[t1], back[t2]) {
                (usize::MAX, usize::MAX) => {
                    fwd[t1] = t2;
                    back[t2] = t1;
                    words[t1] = word;
                    queue.push_back(t1);
                }
                (m1, m2) if m1 == t2 && m2 == t1 => {}
                _ => return fail(&word, "edge targets are identified inconsistently".into()),
            }
        }
    }
    Ok(Bisimulation { equivalent: true, counterexample: None, reason: None })
}
