// SPDX-License-Identifier: Apache-2.0
mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use common::{normalize_wall_reference, path_reference, wall_reference, wall_tokens};
use wallcrys::path::PathCrystal;
use wallcrys::perfect::Elem;
use wallcrys::wall::WallCrystal;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcrys")).args(args).env_remove("WALLCRYS_NODE_BUDGET").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

/// Compares with the stored output; set `WALLCRYS_BLESS=1` to rewrite it.
fn assert_golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let path = golden(name);
    if std::env::var_os("WALLCRYS_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, expected, "{name}");
    assert_eq!(stdout(&run(args)), text, "{name}: output is not deterministic");
}

#[test]
fn golden_outputs() {
    assert_golden("graph_a2_path.json", &["graph", "--type", "A2~1", "--model", "path", "--depth", "3"]);
    assert_golden(
        "graph_b3_wall.dot",
        &["graph", "--type", "B3~1", "--model", "wall", "--depth", "5", "--format", "dot"],
    );
    assert_golden(
        "graph_d3_wall.txt",
        &["graph", "--type", "D3~2", "--model", "wall", "--depth", "3", "--format", "ascii"],
    );
    assert_golden("wall_b3.txt", &["wall", "--type", "B3~1", "f0", "f2", "f3", "f3"]);
    assert_golden("character_a2.json", &["character", "--type", "A2~1", "--max-blocks", "4"]);
    assert_golden("verify_a5.txt", &["verify", "--type", "A5~2", "--depth", "6", "--format", "ascii"]);
    assert_golden("closure_b3.json", &["closure", "--type", "B3~1", "--words", "200", "--seed", "7"]);
}

#[test]
fn path_graph_lies_in_its_reference() {
    let out =
        run(&["graph", "--type", "A2~1", "--lambda", "L0", "--model", "path", "--depth", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pc = PathCrystal::new("A2~1".parse().unwrap(), 0).unwrap();
    let reference = path_reference("A2~1_L0");
    let render = |key: &str| {
        let entries: Vec<Elem> = key.split_whitespace().rev().map(|t| t.parse().unwrap()).collect();
        pc.render(&pc.from_entries(entries), 6)
    };
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 6);
    for n in nodes {
        assert!(reference.graph.nodes.contains(&render(n["key"].as_str().unwrap())));
    }
    for e in v["edges"].as_array().unwrap() {
        let edge =
            (render(e["src"].as_str().unwrap()), e["i"].as_u64().unwrap() as usize, render(e["dst"].as_str().unwrap()));
        assert!(reference.graph.edges.contains(&edge), "{edge:?}");
    }
}

#[test]
fn wall_graph_matches_its_reference() {
    let reference = normalize_wall_reference(wall_reference("B3~1_L0"));
    let depth = reference.depth.to_string();
    let out =
        run(&["graph", "--type", "B3~1", "--lambda", "L0", "--model", "wall", "--depth", &depth, "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let wc = WallCrystal::new("B3~1".parse().unwrap(), 0).unwrap();
    let tokens = |key: &str| wall_tokens(&wc, &wc.parse_literal(&format!("L0;counts={key}")).unwrap());
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), reference.graph.nodes.len());
    for n in nodes {
        assert!(reference.graph.nodes.contains(&tokens(n["key"].as_str().unwrap())));
    }
    assert_eq!(v["edges"].as_array().unwrap().len(), reference.graph.edges.len());
}

#[test]
fn depth_zero_is_a_single_node() {
    let out = run(&["graph", "--type", "D4~1", "--model", "wall", "--depth", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
    assert!(v["edges"].as_array().unwrap().is_empty());
}

#[test]
fn wall_examples() {
    let out = run(&["wall", "--type", "A2~1", "f0", "f1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("content  (1,1,0)"), "{text}");
    assert!(text.contains("reduced  true"));

    let out = run(&["wall", "--type", "A2~1", "f0", "e0"]);
    assert!(out.status.success());
    let ground = run(&["wall", "--type", "A2~1"]);
    assert_eq!(stdout(&out), stdout(&ground));

    let out = run(&["wall", "--type", "B3~1", "f0,f2,f3,f3"]);
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("i=2")).unwrap();
    assert!(line.ends_with("phi 1"), "{line}");
}

#[test]
fn character_totals() {
    let out = run(&["character", "--type", "A2~1", "--lambda", "L0", "--max-blocks", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 1, 2]));
    let ground = v["multiplicities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["content"].as_array().unwrap().iter().all(|x| x == 0))
        .unwrap();
    assert_eq!(ground["count"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--type", "A2~1", "--lambda", "L0", "--depth", "6"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--type", "A2~1", "--lambda", "L5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--type", "Z9~1"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "--type", "A2~1", "--depth", "x"]).status.code(), Some(2));
    assert_eq!(run(&["wall", "--type", "A2~1", "f0", "f0"]).status.code(), Some(1));
    assert_eq!(run(&["wall", "--type", "A2~1", "g0"]).status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_wallcrys"))
        .args(["graph", "--type", "D4~1", "--depth", "8", "--format", "json"])
        .env("WALLCRYS_NODE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["truncated"], true);
}

#[test]
fn mutated_table_gives_a_witness() {
    let out = run(&["verify", "--type", "B3~1", "--lambda", "L0", "--depth", "8", "--mutate", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(!v["counterexample_word"].as_str().unwrap().is_empty());
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("wallcrys-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("g.dot");
    let out = run(&["graph", "--type", "A1~1", "--depth", "2", "--format", "dot", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&file).unwrap().starts_with("digraph"));
    std::fs::remove_dir_all(dir).unwrap();
}
