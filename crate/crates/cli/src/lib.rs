//! Command-line front end for `samuel-core`.
//!
//! [`parse_input`] reads the JSON problem description and [`run`] executes
//! one command, returning the JSON (or mesh text) destined for stdout.
//! Every rational is emitted as a `"p/q"` string.

mod input;

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use samuel_core::cone::{alpha_matrix, classify_point, cone_closure, emit_mesh, limit_exists};
use samuel_core::limits::limit_l_general;
use samuel_core::monomial::{monomial_in_power, radical_contains};
use samuel_core::newton::rees_valuations;
use samuel_core::scalar::parse_rational;
use samuel_core::sequence::{analyze, compute_sequence};
use samuel_core::{Error, MonomialIdeal, Rational, ValuationSet};

pub use input::{parse_input, parse_monomial, ProblemInput};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Unsupported(_) => 4,
            CliError::Io(_) | CliError::Internal(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Hypothesis(msg) => CliError::Hypothesis(msg),
            Error::UnitIdeal => CliError::Hypothesis(e.to_string()),
            Error::UnsupportedDimension(msg) => CliError::Unsupported(msg),
            Error::Inconsistent(msg) => CliError::Internal(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Limits,
    Valuations,
    Cone,
    Classify { point: Vec<Rational> },
    Sequence,
    Mesh,
    Check { m: u64, n: u64 },
    LimitExists { a: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub max_m: u64,
    pub window: Option<usize>,
    pub mesh_bound: u64,
    pub output_path: Option<PathBuf>,
    pub verbosity: u8,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            max_m: 30,
            window: None,
            mesh_bound: 10,
            output_path: None,
            verbosity: 0,
        }
    }
}

/// Parses `"p/q,p/q,..."`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|t| {
            parse_rational::<Rational>(t.trim()).map_err(|e| CliError::Input(format!("`{t}`: {e}")))
        })
        .collect()
}

fn rs(x: &Rational) -> String {
    x.to_string()
}

#[derive(Serialize)]
struct Witness {
    m: u64,
    n: u64,
}

#[derive(Serialize)]
struct LimitsOut {
    #[serde(rename = "L")]
    w_limit: String,
    l: String,
    witness: Witness,
    active_regions: Vec<usize>,
}

#[derive(Serialize)]
struct ValuationOut {
    weights: Vec<u64>,
    e: u64,
}

#[derive(Serialize)]
struct ValuationsOut {
    valuations: Vec<ValuationOut>,
}

#[derive(Serialize)]
struct ConeOut {
    hyperplanes: Vec<Vec<String>>,
    relevant: Vec<usize>,
}

#[derive(Serialize)]
struct ClassifyOut {
    point: Vec<String>,
    class: &'static str,
}

#[derive(Serialize)]
struct PeriodOut {
    t: usize,
    onset: usize,
}

#[derive(Serialize)]
struct SequenceOut {
    values: Vec<u64>,
    period: Option<PeriodOut>,
    max_deviation: String,
}

#[derive(Serialize)]
struct CertificateEntry {
    generator: Vec<u64>,
    y: Vec<u64>,
}

#[derive(Serialize)]
struct CheckOut {
    contained: bool,
    certificate: Option<Vec<CertificateEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstruction: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct LimitExistsOut {
    limit: Option<String>,
}

#[derive(Serialize)]
struct MeshOut {
    vertices: usize,
    faces: usize,
    seams: usize,
    scale: String,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))
}

/// Serializes one result, or an array when several `J` were given.
fn one_or_many<T: Serialize>(items: Vec<T>) -> Result<String, CliError> {
    if items.len() == 1 {
        to_json(&items[0])
    } else {
        to_json(&items)
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn check_radical(i: &MonomialIdeal, js: &[MonomialIdeal]) -> Result<(), CliError> {
    if i.is_unit() {
        return Err(CliError::Hypothesis("I is the unit ideal".into()));
    }
    for (k, j) in js.iter().enumerate() {
        if !radical_contains(i, j)? {
            return Err(CliError::Hypothesis(format!(
                "J[{k}] = {j} is not contained in the radical of I"
            )));
        }
    }
    Ok(())
}

/// The valuations used by the cone commands.
///
/// When both `I` and explicit valuations are present the explicit ones must
/// coincide with the Rees valuations of `I`; their order is kept.
fn valuation_set(input: &ProblemInput) -> Result<ValuationSet, CliError> {
    match (&input.i, &input.valuations) {
        (None, None) => Err(CliError::Input(
            "either `I` or `valuations` is required for this command".into(),
        )),
        (Some(i), None) => Ok(rees_valuations(i)?),
        (None, Some(vals)) => Ok(ValuationSet::user_supplied(vals.clone(), None)?),
        (Some(i), Some(vals)) => {
            let supplied = ValuationSet::user_supplied(vals.clone(), Some(i))?;
            let computed = rees_valuations(i)?;
            if !computed.same_valuations(&supplied) {
                return Err(CliError::Hypothesis(
                    "supplied valuations differ from the Rees valuations of I".into(),
                ));
            }
            Ok(supplied)
        }
    }
}

fn cone_inputs(input: &ProblemInput) -> Result<samuel_core::AlphaMatrix, CliError> {
    let js = input.require_j()?;
    if let Some(i) = &input.i {
        check_radical(i, js)?;
    }
    let vs = valuation_set(input)?;
    let alpha = alpha_matrix::<Rational>(&vs, js)?;
    for (s, row) in alpha.rows().iter().enumerate() {
        if let Some(j) = row
            .iter()
            .position(|x| *x == Rational::from_integer(0.into()))
        {
            return Err(CliError::Hypothesis(format!(
                "valuation {} vanishes on J[{s}], so J[{s}] is not in the radical of I",
                j + 1
            )));
        }
    }
    Ok(alpha)
}

/// Executes one command and returns the text for standard output.
///
/// Commands with an output path also write their file there.
pub fn run(config: &RunConfig, input: &ProblemInput) -> Result<String, CliError> {
    match &config.command {
        Command::Limits => {
            let i = input.require_i()?;
            let js = input.require_j()?;
            check_radical(i, js)?;
            let items = js
                .iter()
                .map(|j| {
                    let r = limit_l_general::<Rational>(i, j)?;
                    Ok(LimitsOut {
                        w_limit: rs(&r.w_limit),
                        l: rs(&r.v_limit),
                        witness: Witness {
                            m: r.witness_m,
                            n: r.witness_n,
                        },
                        active_regions: r.active_regions.iter().map(|k| k + 1).collect(),
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            one_or_many(items)
        }
        Command::Valuations => {
            let vs = rees_valuations(input.require_i()?)?;
            to_json(&ValuationsOut {
                valuations: vs
                    .valuations()
                    .iter()
                    .map(|v| ValuationOut {
                        weights: v.weights().to_vec(),
                        e: v.e(),
                    })
                    .collect(),
            })
        }
        Command::Cone => {
            let cc = cone_closure(&cone_inputs(input)?);
            to_json(&ConeOut {
                hyperplanes: cc
                    .hyperplanes
                    .iter()
                    .map(|h| h.iter().map(rs).collect())
                    .collect(),
                relevant: cc.relevant.iter().map(|j| j + 1).collect(),
            })
        }
        Command::Classify { point } => {
            let cc = cone_closure(&cone_inputs(input)?);
            let class = classify_point(&cc, point)?;
            to_json(&ClassifyOut {
                point: point.iter().map(rs).collect(),
                class: class.as_str(),
            })
        }
        Command::Sequence => {
            if config.max_m == 0 {
                return Err(CliError::Input("--max-m must be positive".into()));
            }
            let i = input.require_i()?;
            let js = input.require_j()?;
            check_radical(i, js)?;
            let mut items = Vec::new();
            let mut csv = String::new();
            for j in js {
                let l = limit_l_general::<Rational>(i, j)?.v_limit;
                let values = compute_sequence(i, j, config.max_m)?;
                let report = analyze(values, l, config.window)?;
                csv.push_str(&report.to_csv());
                items.push(SequenceOut {
                    values: report.values,
                    period: report.period.map(|p| PeriodOut {
                        t: p.t,
                        onset: p.onset,
                    }),
                    max_deviation: rs(&report.max_deviation),
                });
            }
            if let Some(path) = &config.output_path {
                write_file(path, &csv)?;
            }
            one_or_many(items)
        }
        Command::Mesh => {
            if config.mesh_bound == 0 {
                return Err(CliError::Input("--bound must be positive".into()));
            }
            let cc = cone_closure(&cone_inputs(input)?);
            let mesh = emit_mesh(&cc, config.mesh_bound)?;
            let text = mesh.to_text();
            match &config.output_path {
                Some(path) => {
                    write_file(path, &text)?;
                    to_json(&MeshOut {
                        vertices: mesh.vertices.len(),
                        faces: mesh.faces.len(),
                        seams: mesh.seams.len(),
                        scale: mesh.scale().to_string(),
                    })
                }
                None => Ok(text.trim_end().to_string()),
            }
        }
        Command::Check { m, n } => {
            let i = input.require_i()?;
            let js = input.require_j()?;
            if js.len() != 1 {
                return Err(CliError::Input(
                    "`check` takes exactly one ideal in `J`".into(),
                ));
            }
            let power = js[0].power(*m);
            let mut certificate = Vec::new();
            for g in power.generators() {
                match monomial_in_power(g, i, *n)? {
                    Some(cert) => certificate.push(CertificateEntry {
                        generator: g.exponents().to_vec(),
                        y: cert.y,
                    }),
                    None => {
                        return to_json(&CheckOut {
                            contained: false,
                            certificate: None,
                            obstruction: Some(g.exponents().to_vec()),
                        })
                    }
                }
            }
            to_json(&CheckOut {
                contained: true,
                certificate: Some(certificate),
                obstruction: None,
            })
        }
        Command::LimitExists { a } => {
            let alpha = cone_inputs(input)?;
            let limit = limit_exists(&alpha, a)?;
            to_json(&LimitExistsOut {
                limit: limit.as_ref().map(rs),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAIRCASE: &str = r#"{"variables":["x","y"],"I":[[3,0],[2,1],[0,2]],"J":[[[3,7]]]}"#;
    const HYPERSURFACE: &str = r#"{"variables":["x","y","z"],"valuations":[{"weights":[7,1,1],"e":1},{"weights":[1,4,1],"e":1}],"J":[[[1,0,0],[0,0,2]],[[0,2,0],[0,0,3]]]}"#;

    fn go(command: Command, doc: &str) -> Result<String, CliError> {
        run(&RunConfig::new(command), &parse_input(doc).unwrap())
    }

    #[test]
    fn limits_on_the_staircase() {
        assert_eq!(
            go(Command::Limits, STAIRCASE).unwrap(),
            r#"{"L":"2/9","l":"9/2","witness":{"m":2,"n":9},"active_regions":[1,2]}"#
        );
    }

    #[test]
    fn cone_on_explicit_valuations() {
        assert_eq!(
            go(Command::Cone, HYPERSURFACE).unwrap(),
            r#"{"hyperplanes":[["2","2"],["1","3"]],"relevant":[1,2]}"#
        );
    }

    #[test]
    fn short_sequence() {
        let mut cfg = RunConfig::new(Command::Sequence);
        cfg.max_m = 5;
        assert_eq!(
            run(&cfg, &parse_input(STAIRCASE).unwrap()).unwrap(),
            r#"{"values":[4,9,13,18,22],"period":{"t":2,"onset":1},"max_deviation":"1/2"}"#
        );
    }

    #[test]
    fn check_reports_certificates_and_obstructions() {
        let yes = go(Command::Check { m: 2, n: 9 }, STAIRCASE).unwrap();
        assert!(
            yes.starts_with(r#"{"contained":true,"certificate":[{"generator":[6,14],"y":"#),
            "{yes}"
        );
        let no = go(Command::Check { m: 2, n: 10 }, STAIRCASE).unwrap();
        assert_eq!(
            no,
            r#"{"contained":false,"certificate":null,"obstruction":[6,14]}"#
        );
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(CliError::from(Error::UnitIdeal).exit_code(), 3);
        assert_eq!(CliError::from(Error::Hypothesis("x".into())).exit_code(), 3);
        assert_eq!(
            CliError::from(Error::UnsupportedDimension("k".into())).exit_code(),
            4
        );
        assert_eq!(CliError::from(Error::EmptyIdeal).exit_code(), 2);
        assert_eq!(
            go(Command::Limits, HYPERSURFACE).unwrap_err().exit_code(),
            2
        );
        let outside = r#"{"variables":["x","y"],"I":[[1,0]],"J":[[[0,1]]]}"#;
        assert_eq!(go(Command::Limits, outside).unwrap_err().exit_code(), 3);
        let three = r#"{"variables":["x"],"I":[[1]],"J":[[[1]],[[2]],[[3]]]}"#;
        assert_eq!(go(Command::Mesh, three).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn rational_lists() {
        let a = parse_rational_list("27, 26,16/2").unwrap();
        assert_eq!(a.iter().map(rs).collect::<Vec<_>>(), ["27", "26", "8"]);
        assert!(parse_rational_list("1/0").is_err());
        assert!(parse_rational_list("").is_err());
        assert!(parse_rational_list("0.5").is_err());
    }
}
