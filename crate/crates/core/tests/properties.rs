// SPDX-License-Identifier: Apache-2.0
mod common;

use std::sync::OnceLock;

use common::{associativity_violation, matrix_pairs, walk};
use proptest::prelude::*;
use wallcrys::cartan::cartan_data;
use wallcrys::correspondence::Correspondence;
use wallcrys::crystal::{check_axioms, Crystal, Direction};
use wallcrys::path::LambdaPath;

fn models() -> &'static [Correspondence] {
    static MODELS: OnceLock<Vec<Correspondence>> = OnceLock::new();
    MODELS.get_or_init(|| matrix_pairs().into_iter().map(|(t, l)| Correspondence::new(t, l).unwrap()).collect())
}

fn roots(m: &Correspondence) -> Vec<Vec<i64>> {
    let data = cartan_data(m.walls.ty());
    (0..data.size()).map(|i| data.root_pairings(i)).collect()
}

/// Random moves biased towards `f`, so walks leave the ground state.
fn moves() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, prop::bool::weighted(0.25)), 0..40)
}

fn model() -> impl Strategy<Value = usize> {
    0..models().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn walls_and_paths_satisfy_the_axioms(m in model(), moves in moves()) {
        let m = &models()[m];
        let roots = roots(m);
        let walls = walk(&m.walls, m.walls.ground_wall(), &moves);
        let r = check_axioms(&m.walls, &walls, &roots);
        prop_assert!(r.passed(), "{:?}", r.first_violation);
        let paths = walk(&m.paths, LambdaPath::ground(), &moves);
        let r = check_axioms(&m.paths, &paths, &roots);
        prop_assert!(r.passed(), "{:?}", r.first_violation);
    }

    #[test]
    fn reading_intertwines_the_operators(m in model(), moves in moves()) {
        let m = &models()[m];
        for w in walk(&m.walls, m.walls.ground_wall(), &moves) {
            let p = m.psi(&w).unwrap();
            for i in 0..m.walls.num_indices() {
                prop_assert_eq!(m.walls.eps(&w, i), m.paths.eps(&p, i));
                prop_assert_eq!(m.walls.phi(&w, i), m.paths.phi(&p, i));
                let fw = m.walls.f(&w, i).map(|x| m.psi(&x).unwrap());
                prop_assert_eq!(fw, m.paths.f(&p, i));
                let ew = m.walls.e(&w, i).map(|x| m.psi(&x).unwrap());
                prop_assert_eq!(ew, m.paths.e(&p, i));
            }
        }
    }

    #[test]
    fn path_operators_do_not_depend_on_the_window(m in model(), moves in moves(), extra in 0usize..12) {
        let m = &models()[m];
        let pc = &m.paths;
        for p in walk(pc, LambdaPath::ground(), &moves) {
            let window = p.tail() + extra;
            prop_assert_eq!(pc.weight_with_window(&p, window), pc.weight_with_window(&p, p.tail()));
            for i in 0..pc.num_indices() {
                let a = pc.signature_with_window(&p, i, window);
                let b = pc.signature_with_window(&p, i, p.tail());
                prop_assert_eq!((a.minus, a.plus), (b.minus, b.plus));
                for dir in [Direction::E, Direction::F] {
                    prop_assert_eq!(pc.apply_with_window(&p, i, dir, window), pc.apply_with_window(&p, i, dir, p.tail()));
                }
            }
        }
    }

    #[test]
    fn tensor_products_are_associative(m in model(), picks in prop::array::uniform3(0usize..64)) {
        let c = &models()[m].paths.crystal;
        let elems = c.elements();
        let triple = picks.map(|k| elems[k % elems.len()]);
        prop_assert_eq!(associativity_violation(c, triple), None);
    }

    #[test]
    fn renderings_round_trip(m in model(), moves in moves(), width in 0usize..10) {
        let m = &models()[m];
        for w in walk(&m.walls, m.walls.ground_wall(), &moves) {
            prop_assert_eq!(&m.walls.parse_literal(&m.walls.literal(&w)).unwrap(), &w);
            prop_assert_eq!(&m.walls.parse_ascii(&m.walls.render_ascii(&w)).unwrap(), &w);
        }
        for p in walk(&m.paths, LambdaPath::ground(), &moves) {
            prop_assert_eq!(&m.paths.parse(&m.paths.render(&p, width)).unwrap(), &p);
            prop_assert_eq!(&m.paths.from_entries(p.entries().to_vec()), &p);
        }
    }

    #[test]
    fn random_walks_stay_reduced_and_proper(m in model(), seed in any::<u64>()) {
        let r = models()[m].walls.random_closure(50, 12, seed);
        prop_assert_eq!(r.violations, 0, "{:?}", r.first_violation);
    }
}
