//! Compiles and runs the C example against the generated header and the
//! static library, when a C compiler is available.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_example_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target_dir = crate_dir.join("../../target/debug");
    let staticlib = target_dir.join("libdgpa_ffi.a");
    if !staticlib.exists() {
        // the library target builds it alongside the test harness; if the
        // layout differs (e.g. custom target dir) skip rather than guess
        eprintln!("skipping: {} not found", staticlib.display());
        return;
    }
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let out = std::env::temp_dir().join("dgpa_ffi_c_smoke");
    let compile = Command::new(&cc)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("examples/smoke.c"))
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .output()
        .expect("compiler invocation");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&out).output().expect("run");
    assert!(run.status.success());
    assert!(String::from_utf8_lossy(&run.stdout).contains("c smoke ok"));
}
