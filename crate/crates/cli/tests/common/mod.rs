#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use compat_linf_cli::document::Document;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.json"))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn compat_linf<I, S>(args: I, env: &[(&str, &str)]) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_compat-linf"));
    cmd.args(args).env_remove("COMPAT_LINF_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// Documents that load and save back to the same bytes.
pub const VALID: [&str; 10] =
    ["minimal", "a1-pair", "non-lie-pair", "abelian-1", "abelian-2", "a1-lie", "a1-rota", "rb-zero", "rb-identity", "strict-a1"];

/// `(arguments, expected exit code)` over the fixtures.
pub fn exit_code_table() -> Vec<(Vec<String>, i32)> {
    let f = |n: &str| fixture(n).to_string_lossy().into_owned();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        (s(&["check", &f("a1-pair")]), 0),
        (s(&["check", &f("a1-lie")]), 0),
        (s(&["check", &f("strict-a1")]), 0),
        (s(&["check", &f("non-lie-pair")]), 1),
        (s(&["check", &f("zero-denominator")]), 2),
        (s(&["check", &f("bad-degree")]), 2),
        (s(&["check", &f("bad-order")]), 2),
        (s(&["check", &f("does-not-exist")]), 2),
        (s(&["cohomology", "--n-max", "3", &f("abelian-2")]), 0),
        (s(&["deform", "--action", "obstruction", &f("a1-pair")]), 0),
        (s(&["rota", &f("a1-rota"), "--check", &f("rb-zero")]), 0),
        (s(&["rota", &f("a1-rota"), "--check", &f("rb-identity")]), 1),
        (s(&["convert", &f("a1-pair"), "--from", "strict", "--to", "crossed"]), 2),
        (s(&["frobnicate", &f("a1-pair")]), 2),
    ]
}

/// Bit-exact load/save on every valid fixture and the documented exit codes.
pub fn cli_round_trip() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for name in VALID {
        let text = std::fs::read_to_string(fixture(name)).map_err(|e| format!("{name}: {e}"))?;
        let doc = Document::from_str(&text).map_err(|e| format!("{name}: {e}"))?;
        let out = dir.path().join(format!("{name}.json"));
        doc.save(&out).map_err(|e| e.to_string())?;
        let again = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
        if again != text {
            return Err(format!("{name}: save(load(file)) differs from the file"));
        }
        if Document::load(&out).map_err(|e| e.to_string())? != doc {
            return Err(format!("{name}: load(save(doc)) differs from doc"));
        }
    }
    let table = exit_code_table();
    for (args, want) in &table {
        let r = compat_linf(args, &[]);
        if r.code != *want {
            return Err(format!("`compat-linf {}` exited {}, expected {want}\n{}{}", args.join(" "), r.code, r.stdout, r.stderr));
        }
    }
    Ok(format!("{} fixtures round-trip bit-exactly; {} exit-code cases", VALID.len(), table.len()))
}
