#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub struct Golden {
    pub name: &'static str,
    pub input: &'static str,
    /// Same problem with generators reordered, duplicated or padded with
    /// redundant ones.
    pub shuffled: Option<&'static str>,
    pub args: &'static [&'static str],
}

pub const GOLDEN: &[Golden] = &[
    Golden {
        name: "staircase_limits",
        input: "staircase",
        shuffled: Some("staircase_shuffled"),
        args: &["limits"],
    },
    Golden {
        name: "staircase_valuations",
        input: "staircase",
        shuffled: Some("staircase_shuffled"),
        args: &["valuations"],
    },
    Golden {
        name: "staircase_sequence_5",
        input: "staircase",
        shuffled: Some("staircase_shuffled"),
        args: &["sequence", "--max-m", "5"],
    },
    Golden {
        name: "staircase_sequence_30",
        input: "staircase",
        shuffled: Some("staircase_shuffled"),
        args: &["sequence", "--max-m", "30"],
    },
    Golden {
        name: "staircase_check_yes",
        input: "staircase",
        shuffled: Some("staircase_shuffled"),
        args: &["check", "--m", "2", "--n", "9"],
    },
    Golden {
        name: "staircase_check_no",
        input: "staircase",
        shuffled: Some("staircase_shuffled"),
        args: &["check", "--m", "2", "--n", "10"],
    },
    Golden {
        name: "hypersurface_cone",
        input: "hypersurface",
        shuffled: Some("hypersurface_shuffled"),
        args: &["cone"],
    },
    Golden {
        name: "hypersurface_classify_interior",
        input: "hypersurface",
        shuffled: Some("hypersurface_shuffled"),
        args: &["classify", "--point", "1,1,3"],
    },
    Golden {
        name: "hypersurface_classify_boundary",
        input: "hypersurface",
        shuffled: Some("hypersurface_shuffled"),
        args: &["classify", "--point", "1/2,1/2,2"],
    },
    Golden {
        name: "hypersurface_classify_outside",
        input: "hypersurface",
        shuffled: Some("hypersurface_shuffled"),
        args: &["classify", "--point", "1,1,5"],
    },
    Golden {
        name: "hypersurface_mesh",
        input: "hypersurface",
        shuffled: Some("hypersurface_shuffled"),
        args: &["mesh", "--bound", "3"],
    },
    Golden {
        name: "hypersurface_limit_exists",
        input: "hypersurface",
        shuffled: Some("hypersurface_shuffled"),
        args: &["limit-exists", "--a", "1,1"],
    },
    Golden {
        name: "staircase_three_limits",
        input: "staircase_three",
        shuffled: Some("staircase_three_shuffled"),
        args: &["limits"],
    },
    Golden {
        name: "staircase_three_cone",
        input: "staircase_three",
        shuffled: Some("staircase_three_shuffled"),
        args: &["cone"],
    },
    Golden {
        name: "staircase_three_limit_exists",
        input: "staircase_three",
        shuffled: Some("staircase_three_shuffled"),
        args: &["limit-exists", "--a", "27,26,16"],
    },
    Golden {
        name: "staircase_three_sequence",
        input: "staircase_three",
        shuffled: Some("staircase_three_shuffled"),
        args: &["sequence", "--max-m", "12", "--window", "3"],
    },
    Golden {
        name: "two_valuations_valuations",
        input: "two_valuations",
        shuffled: Some("two_valuations_shuffled"),
        args: &["valuations"],
    },
    Golden {
        name: "two_valuations_cone",
        input: "two_valuations",
        shuffled: Some("two_valuations_shuffled"),
        args: &["cone"],
    },
    Golden {
        name: "two_valuations_limits",
        input: "two_valuations",
        shuffled: Some("two_valuations_shuffled"),
        args: &["limits"],
    },
    Golden {
        name: "two_valuations_mesh",
        input: "two_valuations",
        shuffled: Some("two_valuations_shuffled"),
        args: &["mesh", "--bound", "4"],
    },
    Golden {
        name: "trivial_limits",
        input: "trivial",
        shuffled: None,
        args: &["limits"],
    },
];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn data(name: &str) -> PathBuf {
    tests_dir().join("data").join(format!("{name}.json"))
}

pub fn golden_path(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.out"))
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary with `args`, feeding `stdin` when given.
pub fn samuel(args: &[&str], stdin: Option<&str>) -> Outcome {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_samuel"))
        .args(args)
        .env_remove("RUST_LOG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Runs one golden case against the given input file.
pub fn run_case(case: &Golden, input: &str) -> Outcome {
    let path = data(input);
    let mut args: Vec<&str> = case.args.to_vec();
    let p = path.to_str().unwrap();
    args.extend(["--input", p]);
    samuel(&args, None)
}

/// True when no number in the document has a fractional part or exponent.
pub fn json_is_float_free(value: &serde_json::Value) -> bool {
    match value {
        serde_json::Value::Number(n) => n.is_u64() || n.is_i64(),
        serde_json::Value::Array(items) => items.iter().all(json_is_float_free),
        serde_json::Value::Object(map) => map.values().all(json_is_float_free),
        _ => true,
    }
}

/// True when the mesh text has only integer coordinates and indices.
pub fn mesh_is_float_free(text: &str) -> bool {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .flat_map(|l| l.split_whitespace().skip(1))
        .all(|tok| tok.parse::<i64>().is_ok())
}
