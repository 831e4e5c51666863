//! Compiles `tests/smoke.c` against the generated header and the static
//! library, then runs it — proving the header, calling convention, and
//! link-time symbols line up for a real C consumer.

use std::path::PathBuf;
use std::process::Command;

/// Directory holding the compiled artifacts for this profile
/// (`target/debug` or `target/release`), derived from the test binary's
/// own location at `<target>/<profile>/deps/<name>-<hash>`.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().expect("test binary path");
    exe.parent()
        .and_then(|deps| deps.parent())
        .expect("deps directory inside the target profile")
        .to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let static_lib = artifact_dir().join("libphipractical_ffi.a");
    assert!(
        static_lib.is_file(),
        "static library must be built alongside the tests: {}",
        static_lib.display()
    );

    let out_dir = tempfile::tempdir().expect("tempdir");
    let binary = out_dir.path().join("smoke");

    let compile = Command::new("cc")
        .arg(manifest.join("tests").join("smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&static_lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("cc must spawn");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("smoke binary must spawn");
    assert_eq!(
        run.status.code(),
        Some(0),
        "smoke binary failed (stdout: {:?}, stderr: {:?})",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
