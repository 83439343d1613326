use serde::Deserialize;

use samuel_core::{Monomial, MonomialIdeal, MonomialValuation};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawGenerator {
    Exponents(Vec<u64>),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValuation {
    weights: Vec<u64>,
    e: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    variables: Vec<String>,
    #[serde(rename = "I", default)]
    i: Option<Vec<RawGenerator>>,
    #[serde(default)]
    valuations: Option<Vec<RawValuation>>,
    #[serde(rename = "J", default)]
    j: Vec<Vec<RawGenerator>>,
}

/// A validated problem: ideals are minimalized and every exponent vector
/// has one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInput {
    pub variables: Vec<String>,
    pub i: Option<MonomialIdeal>,
    pub valuations: Option<Vec<MonomialValuation>>,
    pub j: Vec<MonomialIdeal>,
}

impl ProblemInput {
    pub fn var_count(&self) -> usize {
        self.variables.len()
    }

    pub fn require_i(&self) -> Result<&MonomialIdeal, CliError> {
        self.i
            .as_ref()
            .ok_or_else(|| CliError::Input("field `I` is required for this command".into()))
    }

    pub fn require_j(&self) -> Result<&[MonomialIdeal], CliError> {
        if self.j.is_empty() {
            return Err(CliError::Input(
                "field `J` must list at least one ideal".into(),
            ));
        }
        Ok(&self.j)
    }
}

/// Parses and validates a JSON problem document.
pub fn parse_input(document: &str) -> Result<ProblemInput, CliError> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let raw: RawInput = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("at `{path}`: {}", e.into_inner()))
    })?;

    let variables = raw.variables;
    if variables.is_empty() {
        return Err(CliError::Input(
            "at `variables`: at least one variable is required".into(),
        ));
    }
    for (k, name) in variables.iter().enumerate() {
        if !is_identifier(name) {
            return Err(CliError::Input(format!(
                "at `variables[{k}]`: `{name}` is not a variable name"
            )));
        }
        if variables[..k].contains(name) {
            return Err(CliError::Input(format!(
                "at `variables[{k}]`: duplicate variable `{name}`"
            )));
        }
    }

    let i = raw
        .i
        .map(|gens| build_ideal(&variables, gens, "I"))
        .transpose()?;
    let valuations = raw
        .valuations
        .map(|vals| {
            vals.into_iter()
                .enumerate()
                .map(|(k, v)| {
                    if v.weights.len() != variables.len() {
                        return Err(CliError::Input(format!(
                            "at `valuations[{k}].weights`: expected {} entries, found {}",
                            variables.len(),
                            v.weights.len()
                        )));
                    }
                    MonomialValuation::new(v.weights, v.e)
                        .map_err(|e| CliError::Input(format!("at `valuations[{k}]`: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let j = raw
        .j
        .into_iter()
        .enumerate()
        .map(|(k, gens)| build_ideal(&variables, gens, &format!("J[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(ProblemInput {
        variables,
        i,
        valuations,
        j,
    })
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn build_ideal(
    variables: &[String],
    gens: Vec<RawGenerator>,
    field: &str,
) -> Result<MonomialIdeal, CliError> {
    if gens.is_empty() {
        return Err(CliError::Input(format!(
            "at `{field}`: an ideal needs at least one generator"
        )));
    }
    let monomials = gens
        .into_iter()
        .enumerate()
        .map(|(k, g)| {
            let exps = match g {
                RawGenerator::Exponents(v) => v,
                RawGenerator::Text(t) => parse_monomial(variables, &t)
                    .map_err(|msg| CliError::Input(format!("at `{field}[{k}]`: {msg}")))?,
            };
            if exps.len() != variables.len() {
                return Err(CliError::Input(format!(
                    "at `{field}[{k}]`: expected {} exponents, found {}",
                    variables.len(),
                    exps.len()
                )));
            }
            Ok(Monomial::new(exps))
        })
        .collect::<Result<Vec<_>, _>>()?;
    MonomialIdeal::new(monomials).map_err(|e| CliError::Input(format!("at `{field}`: {e}")))
}

/// Reads a product like `x^3*y^7` or `1` into an exponent vector.
pub fn parse_monomial(variables: &[String], text: &str) -> Result<Vec<u64>, String> {
    let mut exps = vec![0u64; variables.len()];
    let text = text.trim();
    if text == "1" {
        return Ok(exps);
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((name, p)) => {
                let p = p
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| format!("bad exponent in `{factor}`"))?;
                (name.trim(), p)
            }
            None => (factor, 1),
        };
        let idx = variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| format!("unknown variable `{name}`"))?;
        exps[idx] = exps[idx]
            .checked_add(power)
            .ok_or_else(|| format!("exponent overflow in `{text}`"))?;
    }
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn reads_exponent_lists() {
        let p = parse_input(r#"{"variables":["x","y"],"I":[[3,0],[2,1],[0,2]],"J":[[[3,7]]]}"#)
            .unwrap();
        assert_eq!(p.i.unwrap().generators().len(), 3);
        assert_eq!(p.j.len(), 1);
        assert!(p.valuations.is_none());
    }

    #[test]
    fn reads_explicit_valuations() {
        let p = parse_input(
            r#"{"variables":["x","y","z"],"valuations":[{"weights":[7,1,1],"e":1},{"weights":[1,4,1],"e":1}],"J":[[[1,0,0],[0,0,2]],[[0,2,0],[0,0,3]]]}"#,
        )
        .unwrap();
        assert_eq!(p.valuations.unwrap().len(), 2);
        assert!(p.i.is_none());
    }

    #[test]
    fn text_generators_match_exponent_lists() {
        let a =
            parse_input(r#"{"variables":["x","y"],"I":["x^3","x^2*y","y^2"],"J":[["x^3*y^7"]]}"#)
                .unwrap();
        let b = parse_input(r#"{"variables":["x","y"],"I":[[3,0],[2,1],[0,2]],"J":[[[3,7]]]}"#)
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_monomial(&vars(&["x", "y"]), "x*x*y^2"),
            Ok(vec![2, 2])
        );
        assert_eq!(parse_monomial(&vars(&["x"]), "1"), Ok(vec![0]));
        assert!(parse_monomial(&vars(&["x"]), "z").is_err());
        assert!(parse_monomial(&vars(&["x"]), "x^-1").is_err());
    }

    #[test]
    fn errors_name_the_offending_field() {
        let cases = [
            (r#"{"variables":["x","y"],"I":[[3,0],[2]],"J":[]}"#, "I[1]"),
            (
                r#"{"variables":["x"],"I":[[1]],"J":[[[1]],[[1,2]]]}"#,
                "J[1][0]",
            ),
            (r#"{"variables":["x"],"I":[["a"]]}"#, "I[0]"),
            (
                r#"{"variables":["x"],"valuations":[{"weights":[1],"e":"1"}]}"#,
                "valuations[0].e",
            ),
            (
                r#"{"variables":["x"],"valuations":[{"weights":[1,1],"e":1}]}"#,
                "valuations[0].weights",
            ),
            (r#"{"variables":["x","x"]}"#, "variables[1]"),
        ];
        for (doc, path) in cases {
            match parse_input(doc) {
                Err(CliError::Input(msg)) => assert!(msg.contains(path), "{msg} lacks {path}"),
                other => panic!("{doc}: {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_malformed_documents() {
        for doc in [
            "",
            "{",
            "[]",
            r#"{"variables":["x"],"extra":1}"#,
            r#"{"I":[[1]]}"#,
        ] {
            assert!(matches!(parse_input(doc), Err(CliError::Input(_))), "{doc}");
        }
    }
}
