#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures().join(name)
}

pub fn blessing() -> bool {
    std::env::var_os("BONDCAT_BLESS").is_some_and(|v| v == "1")
}

/// Compares `actual` with the stored file, or rewrites it under
/// `BONDCAT_BLESS=1`.
pub fn check_file(path: &Path, actual: &str) {
    if blessing() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with BONDCAT_BLESS=1 to create)", path.display()));
    assert!(expected == actual, "{} differs from the output:\n{actual}", path.display());
}

/// Runs the binary in the fixtures directory with BONDCAT_FIELD cleared.
pub fn bondcat(args: &[&str]) -> Output {
    bondcat_env(args, None)
}

pub fn bondcat_env(args: &[&str], field: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bondcat"));
    c.args(args).current_dir(fixtures()).env_remove("BONDCAT_FIELD");
    if let Some(f) = field {
        c.env("BONDCAT_FIELD", f);
    }
    c.output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[track_caller]
pub fn code(o: &Output, expected: i32) {
    assert_eq!(o.status.code(), Some(expected), "stdout:\n{}\nstderr:\n{}", stdout(o), stderr(o));
}
