// SPDX-License-Identifier: Apache-2.0
mod common;

use common::{check_path_reference, check_wall_reference, path_reference, wall_reference, REFERENCES};

#[test]
fn path_references_match_with_corrections() {
    for stem in REFERENCES {
        if let Err(d) = check_path_reference(stem) {
            panic!("{stem}: {d}");
        }
    }
}

#[test]
fn wall_references_match_with_corrections() {
    for stem in REFERENCES {
        if let Err(d) = check_wall_reference(stem) {
            panic!("{stem}: {d}");
        }
    }
}

#[test]
fn references_cover_both_models_at_equal_depth() {
    for stem in REFERENCES {
        let p = path_reference(stem);
        let w = wall_reference(stem);
        assert_eq!(p.depth, w.depth, "{stem}");
        assert_eq!(p.graph.nodes.len(), w.graph.nodes.len(), "{stem}");
        assert_eq!(p.graph.edges.len(), w.graph.edges.len(), "{stem}");
    }
}
