//! Compiles tests/support/smoke.c against the generated header, links it to
//! the static library, and runs it. Proves the header and ABI work for a
//! plain C caller, not just for Rust-side extern calls.

use std::path::PathBuf;
use std::process::Command;

fn static_lib_dir() -> PathBuf {
    // The test binary lives in target/<profile>/deps; the static library is
    // built there too, and `cargo build` additionally uplifts a copy to
    // target/<profile>. Accept either location.
    let exe = std::env::current_exe().expect("test binary path");
    let deps = exe.parent().expect("tests live under deps").to_path_buf();
    let uplifted = deps.parent().expect("deps has a parent").to_path_buf();
    [deps, uplifted]
        .into_iter()
        .find(|dir| dir.join("libga_engine_ffi.a").exists())
        .expect("libga_engine_ffi.a exists next to the test binary")
}

#[test]
fn c_program_builds_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    let source = manifest.join("tests/support/smoke.c");
    let lib_dir = static_lib_dir();

    let out_dir = tempfile::tempdir().unwrap();
    let binary = out_dir.path().join("smoke");

    let compile = Command::new("cc")
        .arg(source)
        .arg("-I")
        .arg(&include_dir)
        .arg("-L")
        .arg(&lib_dir)
        .args(["-lga_engine_ffi", "-lpthread", "-ldl", "-lm"])
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&binary)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke test failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("c smoke test ok"), "{stdout}");
}
