// SPDX-License-Identifier: Apache-2.0
//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    associativity_violation, check_path_reference, check_wall_reference, matrix_pairs, parse_stem, MATRIX,
    RANK_MINIMAL, REFERENCES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallcrys::cartan::{cartan_data, AffineType};
use wallcrys::correspondence::{verify_isomorphism, Correspondence};
use wallcrys::crystal::{check_axioms, generate_graph, AxiomReport, Limits};
use wallcrys::path::{LambdaPath, PathCrystal};
use wallcrys::perfect::perfect_crystal;
use wallcrys::wall::WallCrystal;

const REFERENCE_LIMIT: Duration = Duration::from_secs(1);
const MATRIX_LIMIT: Duration = Duration::from_secs(60);
const MATRIX_DEPTH: usize = 8;
const MINIMAL_DEPTH: usize = 12;
const NODE_BUDGET: usize = 1_000_000;
const CLOSURE_WORDS: usize = 10_000;
const CLOSURE_LENGTH: usize = 12;
const TRIPLES: usize = 10_000;
const CHARACTER_BLOCKS: u64 = 8;
const SEED: u64 = 0x5eed;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn report(id: usize, title: &str, elapsed: Duration, outcome: &Outcome) {
    let mark = if outcome.passed { "PASS" } else { "FAIL" };
    println!("{mark} [{id}] {title}: {} ({:.2} s)", outcome.detail, elapsed.as_secs_f64());
}

fn references(check: fn(&str) -> Result<(usize, usize), String>) -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for stem in REFERENCES {
        let t = Instant::now();
        let result = check(stem);
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        if let Err(d) = result {
            failures.push(format!("{stem}: {d}"));
        } else if dt >= REFERENCE_LIMIT {
            failures.push(format!("{stem}: {:.2} s", dt.as_secs_f64()));
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{}/{} exact, slowest {:.3} s, limit {} s each",
                REFERENCES.len(),
                REFERENCES.len(),
                slowest.as_secs_f64(),
                REFERENCE_LIMIT.as_secs()
            )
        } else {
            failures.join("; ")
        },
    }
}

fn matrix_depth(ty: AffineType) -> usize {
    if RANK_MINIMAL.contains(&ty.to_string().as_str()) {
        MINIMAL_DEPTH
    } else {
        MATRIX_DEPTH
    }
}

fn isomorphism() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    let mut nodes = 0;
    let mut failures = Vec::new();
    for (ty, lambda) in matrix_pairs() {
        let m = Correspondence::new(ty, lambda).unwrap();
        let depths: &[usize] =
            if matrix_depth(ty) == MATRIX_DEPTH { &[MATRIX_DEPTH] } else { &[MATRIX_DEPTH, MINIMAL_DEPTH] };
        for &depth in depths {
            let r = verify_isomorphism(&m, depth, NODE_BUDGET);
            runs += 1;
            nodes += r.nodes;
            if !r.passed() {
                failures.push(r.to_json());
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= MATRIX_LIMIT {
        failures.push(format!("took {:.1} s", elapsed.as_secs_f64()));
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{runs} runs over {} pairs, {nodes} nodes, 0 counterexamples, limit {} s total",
                matrix_pairs().len(),
                MATRIX_LIMIT.as_secs()
            )
        } else {
            failures.join("; ")
        },
    }
}

fn closure() -> Outcome {
    let mut steps = 0;
    let mut failures = Vec::new();
    for (ty, lambda) in matrix_pairs() {
        let wc = WallCrystal::new(ty, lambda).unwrap();
        let r = wc.random_closure(CLOSURE_WORDS, CLOSURE_LENGTH, SEED);
        steps += r.steps;
        if r.violations > 0 {
            failures.push(format!("{ty} L{lambda}: {} violations, first {:?}", r.violations, r.first_violation));
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{CLOSURE_WORDS} words of length {CLOSURE_LENGTH} per pair, {steps} steps, 0 violations")
        } else {
            failures.join("; ")
        },
    }
}

fn merge(total: &mut AxiomReport, r: AxiomReport, context: &str) {
    total.checked += r.checked;
    total.violations += r.violations;
    if total.first_violation.is_none() {
        total.first_violation = r.first_violation.map(|v| format!("{context}: {v}"));
    }
}

fn axioms_for(total: &mut AxiomReport, ty: AffineType, lambda: usize, depth: usize) {
    let data = cartan_data(ty);
    let roots: Vec<Vec<i64>> = (0..data.size()).map(|i| data.root_pairings(i)).collect();
    let context = format!("{ty} L{lambda}");
    let pc = PathCrystal::new(ty, lambda).unwrap();
    let g = generate_graph(&pc, LambdaPath::ground(), Limits { max_depth: depth, max_nodes: NODE_BUDGET });
    merge(total, check_axioms(&pc, &g.elems, &roots), &context);
    let wc = WallCrystal::new(ty, lambda).unwrap();
    let g = generate_graph(&wc, wc.ground_wall(), Limits { max_depth: depth, max_nodes: NODE_BUDGET });
    merge(total, check_axioms(&wc, &g.elems, &roots), &context);
}

fn axioms() -> Outcome {
    let mut total = AxiomReport::default();
    for stem in REFERENCES {
        let (ty, lambda) = parse_stem(stem);
        axioms_for(&mut total, ty, lambda, common::path_reference(stem).depth);
    }
    for (ty, lambda) in matrix_pairs() {
        axioms_for(&mut total, ty, lambda, matrix_depth(ty));
    }
    Outcome {
        passed: total.passed(),
        detail: match &total.first_violation {
            None => format!("{} nodes checked in both models, 0 violations", total.checked),
            Some(v) => format!("{} violations, first {v}", total.violations),
        },
    }
}

fn perfect() -> Outcome {
    let mut failures = Vec::new();
    for t in MATRIX {
        let r = perfect_crystal(t.parse().unwrap()).check_perfect();
        for c in r.failures() {
            failures.push(format!("{t} {}: {:?}", c.clause, c.witness));
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} types, all clauses hold, tensor square connected", MATRIX.len())
        } else {
            failures.join("; ")
        },
    }
}

fn associativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for t in MATRIX {
        let c = perfect_crystal(t.parse().unwrap());
        let elems = c.elements();
        for _ in 0..TRIPLES {
            let triple = [0; 3].map(|_| elems[rng.gen_range(0..elems.len())]);
            if let Some(v) = associativity_violation(&c, triple) {
                failures.push(format!("{t}: {v}"));
                break;
            }
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{TRIPLES} triples per type over {} types, all indices, e and f, 0 violations", MATRIX.len())
        } else {
            failures.join("; ")
        },
    }
}

fn characters() -> Outcome {
    let mut failures = Vec::new();
    for (ty, lambda) in matrix_pairs() {
        let wc = WallCrystal::new(ty, lambda).unwrap();
        let table = wc.character_table(CHARACTER_BLOCKS, NODE_BUDGET);
        let pc = PathCrystal::new(ty, lambda).unwrap();
        let graph = generate_graph(&pc, LambdaPath::ground(), Limits::depth(CHARACTER_BLOCKS as usize)).graph;
        let counts = graph.depth_counts();
        if table.truncated || table.totals != counts {
            failures.push(format!("{ty} L{lambda}: walls {:?} paths {counts:?}", table.totals));
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} pairs, totals equal path depth counts up to {CHARACTER_BLOCKS} blocks", matrix_pairs().len())
        } else {
            failures.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("path reference graphs", || references(check_path_reference)),
        ("wall reference graphs", || references(check_wall_reference)),
        ("wall-path isomorphism", isomorphism),
        ("reduced proper closure", closure),
        ("crystal axioms", axioms),
        ("perfect crystal axioms", perfect),
        ("tensor associativity", associativity),
        ("character cross-check", characters),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        report(k + 1, title, t.elapsed(), &outcome);
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
