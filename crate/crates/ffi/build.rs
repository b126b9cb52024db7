fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    println!("cargo:rerun-if-changed=tests/c/smoke.c");
    println!("cargo::rustc-check-cfg=cfg(c_smoke)");
    let dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let config =
        cbindgen::Config::from_file(format!("{dir}/cbindgen.toml")).expect("cbindgen.toml");
    cbindgen::Builder::new()
        .with_crate(&dir)
        .with_config(config)
        .generate()
        .expect("Unable to generate bindings")
        .write_to_file(format!("{dir}/include/wignerneg.h"));

    // C program against the fresh header, linked into the test binaries only
    let objects = cc::Build::new()
        .file(format!("{dir}/tests/c/smoke.c"))
        .include(format!("{dir}/include"))
        .std("c99")
        .warnings_into_errors(true)
        .cargo_warnings(false)
        .try_compile_intermediates();
    match objects {
        Ok(objects) => {
            for obj in objects {
                println!("cargo:rustc-link-arg-tests={}", obj.display());
            }
            println!("cargo:rustc-cfg=c_smoke");
        }
        Err(e) => println!("cargo:warning=C smoke test disabled: {e}"),
    }
}
