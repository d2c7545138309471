// SPDX-License-Identifier: Apache-2.0
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR is set"));
    println!("cargo:rerun-if-changed=src/lib.rs");

    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.cpp_compat = true;
    config.include_guard = Some("WALLCRYS_H".into());
    config.header = Some("/* SPDX-License-Identifier: Apache-2.0 */".into());
    config.autogen_warning = Some("/* Generated by cbindgen; do not edit. */".into());
    config.documentation = true;
    config.usize_is_size_t = true;
    config.export.include = vec!["WallcrysGraphModel".into()];
    config.enumeration.prefix_with_name = true;
    config.enumeration.rename_variants = cbindgen::RenameRule::ScreamingSnakeCase;

    let header = crate_dir.join("include").join("wallcrys.h");
    match cbindgen::Builder::new().with_crate(&crate_dir).with_config(config).generate() {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        Err(e) => println!("cargo:warning=header generation failed: {e}"),
    }
}
