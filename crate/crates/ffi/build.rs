use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).expect("failed to read cbindgen.toml");
    let out = crate_dir.join("include");
    std::fs::create_dir_all(&out).expect("failed to create include/");
    match cbindgen::Builder::new().with_crate(&crate_dir).with_config(config).generate() {
        Ok(bindings) => {
            bindings.write_to_file(out.join("realrad.h"));
        }
        // keep the checked-in header rather than failing the build
        Err(e) => println!("cargo:warning=cbindgen: {e}"),
    }
}
