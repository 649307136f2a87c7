//! Problem files: a Hamiltonian plus optional observable, unitary, state and
//! dataset.
//!
//! ```json
//! {"n": 4,
//!  "terms": [{"i": [2,2,0,0], "coeff": 1.0}],
//!  "observable": [{"i": [3,0,0,1], "coeff": 0.5}],
//!  "unitary": {"time": 0.3},
//!  "state": "state.json",
//!  "dataset": [{"state": "a.json", "label": 1}],
//!  "structure_tensor": "tensor.json",
//!  "f_tensor": "f.json"}
//! ```
//!
//! `unitary` holds exactly one of `coefficients` (complex `{"i", "re", "im"}`
//! terms), `time` (evolve under `terms`) or `blocks` (file or inline block
//! document). States are file paths or inline block documents. Relative paths
//! resolve against the directory of the file that names them.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::{Map, Value};

use symsim_core::algebra::{ComplexElement, MonomialIndex, SymmetricOperator};
use symsim_core::dynamics::{BlockState, LabeledSample};
use symsim_core::io::BlocksDocument;
use symsim_core::schur::BlockOperator;

use crate::error::{read_file, CliError, Result};

/// Where a block document comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum BlocksSource {
    File(PathBuf),
    Inline(BlocksDocument),
}

impl BlocksSource {
    fn load_document(&self) -> Result<BlocksDocument> {
        match self {
            BlocksSource::Inline(doc) => Ok(doc.clone()),
            BlocksSource::File(path) => {
                let text = read_file(path)?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::validation(format!("{}: not a block document: {e}", path.display()))
                })
            }
        }
    }

    pub fn load_state(&self) -> Result<BlockState> {
        Ok(self.load_document()?.to_state()?)
    }

    pub fn load_operator(&self) -> Result<BlockOperator> {
        Ok(self.load_document()?.to_operator()?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum UnitarySource {
    Coefficients(ComplexElement),
    /// `exp(-i H t)` with `H` the spec Hamiltonian.
    Evolution(f64),
    Blocks(BlocksSource),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DatasetEntry {
    pub state: BlocksSource,
    pub label: i64,
}

impl DatasetEntry {
    pub fn load(&self) -> Result<LabeledSample> {
        Ok(LabeledSample::new(self.state.load_state()?, self.label)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub n: usize,
    pub hamiltonian: SymmetricOperator,
    pub observable: Option<SymmetricOperator>,
    pub unitary: Option<UnitarySource>,
    pub state: Option<BlocksSource>,
    pub dataset: Option<Vec<DatasetEntry>>,
    pub structure_tensor: Option<PathBuf>,
    pub f_tensor: Option<PathBuf>,
}

const KNOWN_FIELDS: [&str; 8] = [
    "n",
    "terms",
    "observable",
    "unitary",
    "state",
    "dataset",
    "structure_tensor",
    "f_tensor",
];

/// Parses and validates a problem file. Relative paths are kept as written;
/// see [`parse_spec_at`].
pub fn parse_spec(text: &str) -> Result<ProblemSpec> {
    parse_spec_at(text, None)
}

/// Like [`parse_spec`], resolving relative paths against `base`.
pub fn parse_spec_at(text: &str, base: Option<&Path>) -> Result<ProblemSpec> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("malformed JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::validation("spec must be a JSON object"))?;
    for key in obj.keys() {
        if !KNOWN_FIELDS.contains(&key.as_str()) {
            return Err(CliError::validation(format!("unknown field `{key}`")));
        }
    }
    let n = parse_n(obj.get("n"), "n")?;
    let hamiltonian = match obj.get("terms") {
        Some(v) => parse_real_terms(v, n, "terms")?,
        None => return Err(CliError::validation("missing field `terms`")),
    };
    let observable = obj
        .get("observable")
        .map(|v| parse_real_terms(v, n, "observable"))
        .transpose()?;
    let unitary = obj
        .get("unitary")
        .map(|v| parse_unitary(v, n, base))
        .transpose()?;
    let state = obj
        .get("state")
        .map(|v| parse_blocks_source(v, "state", base))
        .transpose()?;
    let dataset = obj
        .get("dataset")
        .map(|v| parse_dataset_value(v, "dataset", base))
        .transpose()?;
    let structure_tensor = obj
        .get("structure_tensor")
        .map(|v| parse_path(v, "structure_tensor", base))
        .transpose()?;
    let f_tensor = obj
        .get("f_tensor")
        .map(|v| parse_path(v, "f_tensor", base))
        .transpose()?;
    Ok(ProblemSpec {
        n,
        hamiltonian,
        observable,
        unitary,
        state,
        dataset,
        structure_tensor,
        f_tensor,
    })
}

/// Observable file: `{"n": .., "terms": [..]}`.
pub fn parse_observable(text: &str, n: usize) -> Result<SymmetricOperator> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("malformed JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::validation("observable must be a JSON object"))?;
    let found = parse_n(obj.get("n"), "n")?;
    if found != n {
        return Err(CliError::validation(format!(
            "observable.n: {found} does not match the Hamiltonian's n = {n}"
        )));
    }
    let terms = obj
        .get("terms")
        .ok_or_else(|| CliError::validation("observable: missing field `terms`"))?;
    parse_real_terms(terms, n, "observable.terms")
}

/// Dataset file: a list of `{"state": path | inline, "label": +-1}`, or an
/// object with that list under `samples`.
pub fn parse_dataset(text: &str, base: Option<&Path>) -> Result<Vec<DatasetEntry>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("malformed JSON: {e}")))?;
    match &value {
        Value::Object(obj) => match obj.get("samples") {
            Some(list) => parse_dataset_value(list, "samples", base),
            None => Err(CliError::validation("dataset object needs a `samples` list")),
        },
        _ => parse_dataset_value(&value, "dataset", base),
    }
}

fn parse_n(value: Option<&Value>, field: &str) -> Result<usize> {
    let v = value.ok_or_else(|| CliError::validation(format!("missing field `{field}`")))?;
    match v.as_u64() {
        Some(n) if n >= 1 => Ok(n as usize),
        _ => Err(CliError::validation(format!(
            "{field}: expected a positive integer, got {v}"
        ))),
    }
}

fn parse_monomial(value: Option<&Value>, n: usize, field: &str) -> Result<MonomialIndex> {
    let v = value.ok_or_else(|| CliError::validation(format!("{field}: missing monomial")))?;
    let parts: Option<Vec<usize>> = v
        .as_array()
        .filter(|a| a.len() == 4)
        .map(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
        .and_then(|x| x);
    let parts = parts.ok_or_else(|| {
        CliError::validation(format!("{field}: expected 4 non-negative integers, got {v}"))
    })?;
    let index = MonomialIndex::new(parts[0], parts[1], parts[2], parts[3]);
    let sum: usize = parts.iter().sum();
    if sum != n {
        return Err(CliError::validation(format!(
            "{field}: monomial components sum to {sum} != {n}"
        )));
    }
    Ok(index)
}

/// A coefficient as a number, `[re, im]` or `{"re": .., "im": ..}`.
fn parse_coefficient(value: Option<&Value>, field: &str) -> Result<Complex64> {
    let v = value.ok_or_else(|| CliError::validation(format!("{field}: missing coefficient")))?;
    let bad = || CliError::validation(format!("{field}: expected a number, [re, im] or {{\"re\", \"im\"}}, got {v}"));
    let z = match v {
        Value::Number(x) => Complex64::new(x.as_f64().ok_or_else(bad)?, 0.0),
        Value::Array(a) if a.len() == 2 => Complex64::new(
            a[0].as_f64().ok_or_else(bad)?,
            a[1].as_f64().ok_or_else(bad)?,
        ),
        Value::Object(o) => Complex64::new(
            o.get("re").and_then(Value::as_f64).ok_or_else(bad)?,
            o.get("im").map(|x| x.as_f64().ok_or_else(bad)).transpose()?.unwrap_or(0.0),
        ),
        _ => return Err(bad()),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(CliError::validation(format!("{field}: coefficient must be finite")));
    }
    Ok(z)
}

fn term_list<'a>(value: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| CliError::validation(format!("{field}: expected a list of terms")))
}

fn term_object<'a>(value: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| CliError::validation(format!("{field}: expected an object with `i` and a coefficient")))
}

fn parse_real_terms(value: &Value, n: usize, field: &str) -> Result<SymmetricOperator> {
    let mut op = SymmetricOperator::new(n)?;
    for (idx, term) in term_list(value, field)?.iter().enumerate() {
        let path = format!("{field}[{idx}]");
        let obj = term_object(term, &path)?;
        let i = parse_monomial(obj.get("i"), n, &format!("{path}.i"))?;
        let c = parse_coefficient(obj.get("coeff"), &format!("{path}.coeff"))?;
        if c.im != 0.0 {
            return Err(CliError::validation(format!(
                "{path}.coeff: coefficient {c} is not real; Hermitian operators need real coefficients"
            )));
        }
        op.add_term(i, c.re)?;
    }
    Ok(op)
}

fn parse_complex_terms(value: &Value, n: usize, field: &str) -> Result<ComplexElement> {
    let mut op = ComplexElement::new(n)?;
    for (idx, term) in term_list(value, field)?.iter().enumerate() {
        let path = format!("{field}[{idx}]");
        let obj = term_object(term, &path)?;
        let i = parse_monomial(obj.get("i"), n, &format!("{path}.i"))?;
        let c = if obj.contains_key("coeff") {
            parse_coefficient(obj.get("coeff"), &format!("{path}.coeff"))?
        } else {
            parse_coefficient(Some(term), &path)?
        };
        op.add_term(i, c)?;
    }
    Ok(op)
}

fn parse_path(value: &Value, field: &str, base: Option<&Path>) -> Result<PathBuf> {
    let s = value
        .as_str()
        .ok_or_else(|| CliError::validation(format!("{field}: expected a file path")))?;
    Ok(resolve(Path::new(s), base))
}

pub(crate) fn resolve(path: &Path, base: Option<&Path>) -> PathBuf {
    match base {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

fn parse_blocks_source(value: &Value, field: &str, base: Option<&Path>) -> Result<BlocksSource> {
    match value {
        Value::String(_) => Ok(BlocksSource::File(parse_path(value, field, base)?)),
        Value::Object(_) => serde_json::from_value(value.clone())
            .map(BlocksSource::Inline)
            .map_err(|e| CliError::validation(format!("{field}: not a block document: {e}"))),
        _ => Err(CliError::validation(format!(
            "{field}: expected a file path or an inline block document"
        ))),
    }
}

fn parse_unitary(value: &Value, n: usize, base: Option<&Path>) -> Result<UnitarySource> {
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::validation("unitary: expected an object"))?;
    if obj.len() != 1 {
        return Err(CliError::validation(format!(
            "unitary: give exactly one of `coefficients`, `time`, `blocks` (found {})",
            obj.len()
        )));
    }
    let (key, v) = obj.iter().next().unwrap();
    match key.as_str() {
        "coefficients" => Ok(UnitarySource::Coefficients(parse_complex_terms(
            v,
            n,
            "unitary.coefficients",
        )?)),
        "time" => v
            .as_f64()
            .filter(|t| t.is_finite())
            .map(UnitarySource::Evolution)
            .ok_or_else(|| CliError::validation(format!("unitary.time: expected a number, got {v}"))),
        "blocks" => Ok(UnitarySource::Blocks(parse_blocks_source(v, "unitary.blocks", base)?)),
        other => Err(CliError::validation(format!("unitary: unknown source `{other}`"))),
    }
}

fn parse_dataset_value(value: &Value, field: &str, base: Option<&Path>) -> Result<Vec<DatasetEntry>> {
    let list = value
        .as_array()
        .ok_or_else(|| CliError::validation(format!("{field}: expected a list of samples")))?;
    list.iter()
        .enumerate()
        .map(|(idx, sample)| {
            let path = format!("{field}[{idx}]");
            let obj = sample
                .as_object()
                .ok_or_else(|| CliError::validation(format!("{path}: expected an object")))?;
            let label_value = obj
                .get("label")
                .ok_or_else(|| CliError::validation(format!("{path}: missing `label`")))?;
            let label = match label_value.as_i64() {
                Some(y @ (-1 | 1)) => y,
                _ => {
                    return Err(CliError::validation(format!(
                        "{path}.label: {label_value} is not -1 or +1"
                    )))
                }
            };
            let state = obj
                .get("state")
                .ok_or_else(|| CliError::validation(format!("{path}: missing `state`")))?;
            Ok(DatasetEntry {
                state: parse_blocks_source(state, &format!("{path}.state"), base)?,
                label,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEISENBERG: &str = r#"{"n":4,"terms":[{"i":[2,2,0,0],"coeff":1.0},{"i":[2,0,2,0],"coeff":1.0},{"i":[2,0,0,2],"coeff":1.0}]}"#;

    fn message(text: &str) -> String {
        match parse_spec(text) {
            Err(CliError::Validation(m)) => m,
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn heisenberg_spec() {
        let spec = parse_spec(HEISENBERG).unwrap();
        assert_eq!(spec.n, 4);
        assert_eq!(spec.hamiltonian, SymmetricOperator::heisenberg(4, 1.0).unwrap());
        assert!(spec.observable.is_none() && spec.unitary.is_none());
    }

    #[test]
    fn wrong_monomial_sum() {
        let m = message(r#"{"n":4,"terms":[{"i":[1,2,0,0],"coeff":1.0}]}"#);
        assert!(m.contains("terms[0].i"), "{m}");
        assert!(m.contains("sum to 3 != 4"), "{m}");
    }

    #[test]
    fn empty_terms_are_the_zero_operator() {
        let spec = parse_spec(r#"{"n":3,"terms":[]}"#).unwrap();
        assert!(spec.hamiltonian.is_empty());
    }

    #[test]
    fn diagnostics() {
        assert!(message("{\"n\": 4, ").starts_with("malformed JSON"));
        assert!(message(r#"{"n":2,"terms":[{"i":[2,0,0,0],"coeff":{"re":1,"im":0.5}}]}"#).contains("not real"));
        assert!(message(r#"{"n":0,"terms":[]}"#).contains("positive integer"));
        assert!(message(r#"{"n":2,"terms":[],"extra":1}"#).contains("unknown field `extra`"));
        assert!(message(r#"{"n":2,"terms":[],"dataset":[{"state":"a.json","label":0}]}"#)
            .contains("dataset[0].label"));
        assert!(message(r#"{"n":2,"terms":[],"unitary":{"time":1.0,"blocks":"u.json"}}"#)
            .contains("exactly one"));
    }

    #[test]
    fn complex_unitary_coefficients() {
        let spec = parse_spec(
            r#"{"n":2,"terms":[],"unitary":{"coefficients":[{"i":[2,0,0,0],"re":0.0,"im":1.0}]}}"#,
        )
        .unwrap();
        match spec.unitary {
            Some(UnitarySource::Coefficients(u)) => {
                assert_eq!(u.coefficient(&MonomialIndex::identity(2)), Complex64::new(0.0, 1.0))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn relative_paths_resolve_against_base() {
        let spec = parse_spec_at(
            r#"{"n":2,"terms":[],"state":"s.json","dataset":[{"state":"/abs.json","label":-1}]}"#,
            Some(Path::new("/data")),
        )
        .unwrap();
        assert_eq!(spec.state, Some(BlocksSource::File(PathBuf::from("/data/s.json"))));
        assert_eq!(spec.dataset.unwrap()[0].state, BlocksSource::File(PathBuf::from("/abs.json")));
    }
}
