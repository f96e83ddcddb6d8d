#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn config(name: &str) -> PathBuf {
    manifest_dir().join("configs").join(name)
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nc-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// A subcommand on a checked-in config whose output is pinned byte for byte.
pub struct GoldenCase {
    pub name: &'static str,
    pub command: &'static str,
    pub config: &'static str,
    pub format: &'static str,
    pub exit_code: i32,
}

const fn case(
    name: &'static str,
    command: &'static str,
    config: &'static str,
    format: &'static str,
) -> GoldenCase {
    GoldenCase {
        name,
        command,
        config,
        format,
        exit_code: 0,
    }
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    case("spectrum_identical", "spectrum", "identical.json", "json"),
    case("spectrum_identical", "spectrum", "identical.json", "csv"),
    case("spectrum_pair", "spectrum", "pair.json", "json"),
    case("spectrum_triple", "spectrum", "triple.json", "csv"),
    case("spectrum_quark", "spectrum", "quark.json", "csv"),
    case(
        "spectrum_coordinate_nc",
        "spectrum",
        "coordinate_nc.json",
        "json",
    ),
    case("spectrum_free", "spectrum", "free.json", "csv"),
    case(
        "spectrum_ho_interaction",
        "spectrum",
        "ho_interaction.json",
        "csv",
    ),
    case("verify_identical", "verify", "identical.json", "json"),
    case("verify_pair", "verify", "pair.json", "csv"),
    case("verify_triple", "verify", "triple.json", "csv"),
    GoldenCase {
        name: "verify_strict",
        command: "verify",
        config: "verify_strict.json",
        format: "csv",
        exit_code: 1,
    },
    case("sweep_k", "sweep", "sweep_k.json", "json"),
    case("sweep_k", "sweep", "sweep_k.json", "csv"),
    case("limits", "limits", "limits.json", "json"),
    case("limits", "limits", "limits.json", "csv"),
];

impl GoldenCase {
    pub fn golden_path(&self) -> PathBuf {
        manifest_dir()
            .join("tests/golden")
            .join(format!("{}.{}", self.name, self.format))
    }

    /// Runs the case and compares with the golden file, rewriting it instead
    /// when `UPDATE_GOLDEN=1`.
    pub fn check(&self) -> Result<(), String> {
        let config = config(self.config);
        let out = run_cli(&[
            self.command,
            "--config",
            config.to_str().unwrap(),
            "--format",
            self.format,
        ]);
        let code = out.status.code();
        if code != Some(self.exit_code) {
            return Err(format!(
                "{}: exit {code:?}, expected {}; stderr: {}",
                self.name,
                self.exit_code,
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let path = self.golden_path();
        if std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1") {
            std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
            return Ok(());
        }
        let golden = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if golden != out.stdout {
            return Err(format!(
                "{} differs from {}:\n{}",
                self.name,
                path.display(),
                String::from_utf8_lossy(&out.stdout)
            ));
        }
        Ok(())
    }
}

/// Invocations that must fail with a particular exit code.
pub struct ExitCase {
    pub label: &'static str,
    pub command: &'static str,
    pub config: ConfigSource,
    pub exit_code: i32,
}

pub enum ConfigSource {
    File(&'static str),
    Inline(&'static str),
    Missing,
}

pub const EXIT_CASES: &[ExitCase] = &[
    ExitCase {
        label: "spectrum ok",
        command: "spectrum",
        config: ConfigSource::File("pair.json"),
        exit_code: 0,
    },
    ExitCase {
        label: "verify fails",
        command: "verify",
        config: ConfigSource::File("verify_strict.json"),
        exit_code: 1,
    },
    ExitCase {
        label: "limits fail",
        command: "limits",
        config: ConfigSource::Inline(
            r#"{"topology": "identical-N", "particles": [{"mass": 1, "omega": 1, "c_theta": 0.1, "c_eta": 0.1}], "N": 2, "k": 1, "command": {"tolerance": 0}}"#,
        ),
        exit_code: 1,
    },
    ExitCase {
        label: "malformed json",
        command: "spectrum",
        config: ConfigSource::Inline("{\"topology\": "),
        exit_code: 2,
    },
    ExitCase {
        label: "missing file",
        command: "spectrum",
        config: ConfigSource::Missing,
        exit_code: 2,
    },
    ExitCase {
        label: "unknown topology",
        command: "spectrum",
        config: ConfigSource::Inline(r#"{"topology": "quartet", "particles": [{"mass": 1}]}"#),
        exit_code: 2,
    },
    ExitCase {
        label: "field on pair",
        command: "spectrum",
        config: ConfigSource::Inline(
            r#"{"topology": "pair", "particles": [{"mass": 1, "omega": 1}, {"mass": 2, "omega": 1}], "k": 1, "kappa": 0.5}"#,
        ),
        exit_code: 2,
    },
    ExitCase {
        label: "negative mass",
        command: "verify",
        config: ConfigSource::Inline(
            r#"{"topology": "identical-N", "particles": [{"mass": -1, "omega": 1}], "N": 2}"#,
        ),
        exit_code: 2,
    },
    ExitCase {
        label: "sweep without axis",
        command: "sweep",
        config: ConfigSource::File("pair.json"),
        exit_code: 2,
    },
    ExitCase {
        label: "field shift undefined",
        command: "spectrum",
        config: ConfigSource::File("field_undefined.json"),
        exit_code: 3,
    },
    ExitCase {
        label: "momentum noncommutativity in coordinate-only triple",
        command: "spectrum",
        config: ConfigSource::File("coordinate_nc_with_eta.json"),
        exit_code: 3,
    },
];

impl ExitCase {
    pub fn check(&self) -> Result<(), String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let path = match self.config {
            ConfigSource::File(name) => config(name),
            ConfigSource::Inline(text) => {
                let p = dir.path().join("config.json");
                std::fs::write(&p, text).map_err(|e| e.to_string())?;
                p
            }
            ConfigSource::Missing => dir.path().join("absent.json"),
        };
        let out = run_cli(&[self.command, "--config", path.to_str().unwrap()]);
        match out.status.code() {
            Some(c) if c == self.exit_code => Ok(()),
            c => Err(format!(
                "{}: exit {c:?}, expected {}; stderr: {}",
                self.label,
                self.exit_code,
                String::from_utf8_lossy(&out.stderr)
            )),
        }
    }
}
