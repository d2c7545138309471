// SPDX-License-Identifier: Apache-2.0
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use wallcrys_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { wallcrys_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(wallcrys_last_error()) }.to_str().unwrap().to_string()
}

fn model(ty: &str, lambda: u32) -> *mut WallcrysModel {
    let ty = CString::new(ty).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_model_new(ty.as_ptr(), lambda, &mut m) }, WallcrysStatus::Ok);
    m
}

fn apply(m: *const WallcrysModel, w: *const WallcrysWall, i: u32) -> *mut WallcrysWall {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_apply(m, w, i, false, &mut out) }, WallcrysStatus::Ok);
    out
}

#[test]
fn walks_a_wall_and_reads_its_path() {
    let m = model("B3~1", 0);
    let mut n = 0;
    assert_eq!(unsafe { wallcrys_model_num_indices(m, &mut n) }, WallcrysStatus::Ok);
    assert_eq!(n, 4);

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_ground(m, &mut g) }, WallcrysStatus::Ok);
    let mut path = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_read_path(m, g, &mut path) }, WallcrysStatus::Ok);
    assert_eq!(take(path), "");

    let w1 = apply(m, g, 0);
    let w2 = apply(m, w1, 2);
    let mut lit = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_literal(m, w2, &mut lit) }, WallcrysStatus::Ok);
    let lit = take(lit);
    assert!(lit.starts_with("L0;counts="), "{lit}");

    let parsed = {
        let c = CString::new(lit.clone()).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { wallcrys_wall_parse(m, c.as_ptr(), &mut out) }, WallcrysStatus::Ok);
        out
    };
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_literal(m, parsed, &mut again) }, WallcrysStatus::Ok);
    assert_eq!(take(again), lit);

    let (mut eps, mut phi) = (0, 0);
    assert_eq!(unsafe { wallcrys_wall_eps_phi(m, w2, 2, &mut eps, &mut phi) }, WallcrysStatus::Ok);
    assert_eq!(eps, 1);

    let mut reduced = false;
    assert_eq!(unsafe { wallcrys_wall_is_reduced(m, w2, &mut reduced) }, WallcrysStatus::Ok);
    assert!(reduced);

    let mut art = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_ascii(m, w2, &mut art) }, WallcrysStatus::Ok);
    assert!(!take(art).is_empty());

    let mut path = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_read_path(m, w2, &mut path) }, WallcrysStatus::Ok);
    assert!(!take(path).is_empty());

    for w in [g, w1, w2, parsed] {
        unsafe { wallcrys_wall_free(w) };
    }
    unsafe { wallcrys_model_free(m) };
}

#[test]
fn undefined_operator_is_reported() {
    let m = model("A2~1", 0);
    let mut g = ptr::null_mut();
    unsafe { wallcrys_wall_ground(m, &mut g) };
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_apply(m, g, 1, false, &mut out) }, WallcrysStatus::Undefined);
    assert!(out.is_null());
    assert_eq!(unsafe { wallcrys_wall_apply(m, g, 0, true, &mut out) }, WallcrysStatus::Undefined);
    assert_eq!(unsafe { wallcrys_wall_apply(m, g, 9, false, &mut out) }, WallcrysStatus::Invalid);
    assert!(last_error().contains("index 9"));
    unsafe {
        wallcrys_wall_free(g);
        wallcrys_model_free(m);
    }
}

#[test]
fn bad_arguments_map_to_status_codes() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_model_new(ptr::null(), 0, &mut m) }, WallcrysStatus::NullArgument);
    let bad = CString::new("Q7~1").unwrap();
    assert_ne!(unsafe { wallcrys_model_new(bad.as_ptr(), 0, &mut m) }, WallcrysStatus::Ok);
    assert!(!last_error().is_empty());
    let b3 = CString::new("B3~1").unwrap();
    assert_eq!(unsafe { wallcrys_model_new(b3.as_ptr(), 2, &mut m) }, WallcrysStatus::Invalid);
    assert!(m.is_null());

    let m = model("A2~1", 0);
    let junk = CString::new("L0;counts=x").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_wall_parse(m, junk.as_ptr(), &mut w) }, WallcrysStatus::Parse);
    assert_eq!(unsafe { wallcrys_wall_ground(m, ptr::null_mut()) }, WallcrysStatus::NullArgument);
    let mut n = 0;
    assert_eq!(unsafe { wallcrys_model_num_indices(ptr::null(), &mut n) }, WallcrysStatus::NullArgument);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_graph_json(m, 7, 1, 10, &mut s) }, WallcrysStatus::Invalid);
    unsafe {
        wallcrys_string_free(ptr::null_mut());
        wallcrys_wall_free(ptr::null_mut());
        wallcrys_model_free(m);
    }
}

#[test]
fn verify_and_graph_return_json() {
    let m = model("A2~1", 1);
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_verify(m, 5, 1_000_000, &mut report) }, WallcrysStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(report["status"], "pass");
    assert_eq!(report["lambda"], "L1");

    let mut report = ptr::null_mut();
    assert_eq!(unsafe { wallcrys_verify(m, 8, 3, &mut report) }, WallcrysStatus::Truncated);
    let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(report["status"], "truncated");

    for kind in [WallcrysGraphModel::Path, WallcrysGraphModel::Wall] {
        let mut g = ptr::null_mut();
        assert_eq!(unsafe { wallcrys_graph_json(m, kind as u32, 3, 1_000_000, &mut g) }, WallcrysStatus::Ok);
        let g: serde_json::Value = serde_json::from_str(&take(g)).unwrap();
        assert!(g["nodes"].as_array().unwrap().len() > 1);
    }
    unsafe { wallcrys_model_free(m) };
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(wallcrys_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/wallcrys.h")).unwrap();
    assert!(header.contains("#ifndef WALLCRYS_H"));
    for name in [
        "wallcrys_model_new",
        "wallcrys_model_free",
        "wallcrys_model_num_indices",
        "wallcrys_wall_ground",
        "wallcrys_wall_parse",
        "wallcrys_wall_free",
        "wallcrys_wall_apply",
        "wallcrys_wall_eps_phi",
        "wallcrys_wall_is_reduced",
        "wallcrys_wall_literal",
        "wallcrys_wall_ascii",
        "wallcrys_wall_read_path",
        "wallcrys_graph_json",
        "wallcrys_verify",
        "wallcrys_last_error",
        "wallcrys_string_free",
        "wallcrys_version",
        "typedef struct WallcrysModel WallcrysModel;",
        "WALLCRYS_STATUS_NOT_REDUCED",
        "WALLCRYS_GRAPH_MODEL_WALL",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
