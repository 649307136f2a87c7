use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};

use symsim_core::algebra::{
    enumerate_monomials, gse_regular_with, monomial_count, MonomialIndex, StructureTensor, SymmetricOperator,
    HERMITICITY_TOLERANCE,
};
use symsim_core::dynamics::{
    empirical_loss_terms, evolution_from_blocks, expectation_blocks, unitary_from_coeffs, BlockState,
    IMAGINARY_TOLERANCE, STATE_TOLERANCE, UNITARITY_TOLERANCE,
};
use symsim_core::io::{FTensorDocument, GroundStateDocument, TensorDocument};
use symsim_core::linalg;
use symsim_core::schur::{
    block_operator_with, enumerate_irreps, ground_state_of_blocks, BlockOperator, FTensor,
    DEFAULT_DEGENERACY_TOLERANCE,
};

use crate::cache::TensorCache;
use crate::document::{sha256_hex, CommandEcho, Degeneracy, ResultDocument, Timing};
use crate::error::{read_file, CliError, Result};
use crate::spec::{parse_dataset, parse_observable, parse_spec_at, BlocksSource, ProblemSpec, UnitarySource};
use crate::verify::{run_ladder, VerifyConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Dims,
    Gse,
    GroundState,
    Evolve,
    Loss,
    Tensors,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Gse => "gse",
            Command::GroundState => "ground-state",
            Command::Evolve => "evolve",
            Command::Loss => "loss",
            Command::Tensors => "tensors",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Regular,
    #[default]
    Blocks,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum What {
    #[default]
    Structure,
    F,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub input: Option<PathBuf>,
    /// System size for `dims` when no input file is given.
    pub n: Option<usize>,
    pub method: Method,
    pub times: Vec<f64>,
    pub observable: Option<PathBuf>,
    pub state: Option<PathBuf>,
    pub dataset: Option<PathBuf>,
    pub what: What,
    pub max_n: usize,
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub cache: TensorCache,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            input: None,
            n: None,
            method: Method::default(),
            times: Vec::new(),
            observable: None,
            state: None,
            dataset: None,
            what: What::default(),
            max_n: 5,
            tolerance: None,
            seed: crate::sampling::DEFAULT_SEED,
            cache: TensorCache::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub document: ResultDocument,
    /// Tensor dump written by `tensors`.
    pub artifact: Option<String>,
    /// Non-zero when the command ran but a check failed.
    pub exit_code: i32,
    /// Human-readable lines, one per verification check.
    pub report: Vec<String>,
}

struct Input {
    spec: ProblemSpec,
    digest: String,
}

fn load_input(opts: &RunOptions) -> Result<Option<Input>> {
    let Some(path) = &opts.input else {
        return Ok(None);
    };
    let text = read_file(path)?;
    let dir = path.parent().map(Path::to_path_buf);
    let spec = parse_spec_at(&text, dir.as_deref())
        .map_err(|e| prefix(e, &path.display().to_string()))?;
    Ok(Some(Input {
        spec,
        digest: sha256_hex(text.as_bytes()),
    }))
}

fn prefix(e: CliError, what: &str) -> CliError {
    match e {
        CliError::Validation(m) => CliError::Validation(format!("{what}: {m}")),
        other => other,
    }
}

fn require_input(input: Option<Input>, command: Command) -> Result<Input> {
    input.ok_or_else(|| CliError::validation(format!("`{}` needs --input", command.name())))
}

/// Executes one command.
pub fn run(command: Command, opts: &RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let input = load_input(opts)?;
    let digest = input.as_ref().map(|i| i.digest.clone());
    let mut echo = BTreeMap::new();
    if let Some(p) = &opts.input {
        echo.insert("input".to_string(), json!(p.display().to_string()));
    }
    let mut tolerances = BTreeMap::new();
    let mut degeneracy = None;
    let mut artifact = None;
    let mut exit_code = 0;
    let mut report = Vec::new();

    let (n, results) = match command {
        Command::Dims => {
            let n = match (&input, opts.n) {
                (_, Some(n)) => n,
                (Some(i), None) => i.spec.n,
                (None, None) => return Err(CliError::validation("`dims` needs --input or --n")),
            };
            echo.insert("n".into(), json!(n));
            (Some(n), dims(n)?)
        }
        Command::Gse => {
            let input = require_input(input, command)?;
            echo.insert("method".into(), json!(method_name(opts.method)));
            let spec = &input.spec;
            let results = match opts.method {
                Method::Regular => {
                    tolerances.insert("hermiticity".into(), HERMITICITY_TOLERANCE);
                    let tensor = match &spec.structure_tensor {
                        Some(path) => load_structure_tensor(path)?,
                        None => opts.cache.structure_rows(spec.n, &spec.hamiltonian.support())?,
                    };
                    json!({"method": "regular", "energy": gse_regular_with(&spec.hamiltonian, &tensor)?})
                }
                Method::Blocks => {
                    let tol = opts.tolerance.unwrap_or(DEFAULT_DEGENERACY_TOLERANCE);
                    tolerances.insert("degeneracy".into(), tol);
                    let blocks = hamiltonian_blocks(spec, &spec.hamiltonian, opts)?;
                    let g = ground_state_of_blocks(&blocks, tol)?;
                    degeneracy = Some(Degeneracy {
                        degenerate_lambda1: g.degenerate_irreps.iter().map(|l| l.lambda1).collect(),
                        relative_tolerance: tol,
                    });
                    json!({"method": "blocks", "energy": g.energy, "lambda1": g.lambda_min.lambda1})
                }
            };
            (Some(spec.n), results)
        }
        Command::GroundState => {
            let input = require_input(input, command)?;
            let spec = &input.spec;
            let tol = opts.tolerance.unwrap_or(DEFAULT_DEGENERACY_TOLERANCE);
            tolerances.insert("degeneracy".into(), tol);
            let g = ground_state_of_blocks(&hamiltonian_blocks(spec, &spec.hamiltonian, opts)?, tol)?;
            let doc = GroundStateDocument::from(&g);
            degeneracy = Some(Degeneracy {
                degenerate_lambda1: doc.degenerate_lambda1.clone(),
                relative_tolerance: tol,
            });
            (Some(spec.n), serde_json::to_value(doc).expect("serializable"))
        }
        Command::Evolve => {
            let input = require_input(input, command)?;
            tolerances.insert("unitarity".into(), UNITARITY_TOLERANCE);
            tolerances.insert("imaginary_residue".into(), IMAGINARY_TOLERANCE);
            tolerances.insert("state".into(), STATE_TOLERANCE);
            (Some(input.spec.n), evolve(&input, opts, &mut echo)?)
        }
        Command::Loss => {
            let input = require_input(input, command)?;
            tolerances.insert("unitarity".into(), UNITARITY_TOLERANCE);
            tolerances.insert("imaginary_residue".into(), IMAGINARY_TOLERANCE);
            tolerances.insert("state".into(), STATE_TOLERANCE);
            (Some(input.spec.n), loss(&input, opts, &mut echo)?)
        }
        Command::Tensors => {
            let input = require_input(input, command)?;
            echo.insert("what".into(), json!(what_name(opts.what)));
            let (results, dump) = tensors(&input.spec, opts)?;
            artifact = Some(dump);
            (Some(input.spec.n), results)
        }
        Command::Verify => {
            echo.insert("max_n".into(), json!(opts.max_n));
            echo.insert("seed".into(), json!(opts.seed));
            if let Some(t) = opts.tolerance {
                echo.insert("tolerance".into(), json!(t));
            }
            let cfg = VerifyConfig {
                max_n: opts.max_n,
                seed: opts.seed,
                tolerance: opts.tolerance,
                ..Default::default()
            };
            let checks = run_ladder(&cfg, |r| report.push(r.line()))?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                exit_code = 2;
            }
            (
                None,
                json!({"checks": checks, "passed": checks.len() - failed, "failed": failed}),
            )
        }
    };
    if let Some(t) = opts.tolerance {
        echo.entry("tolerance".into()).or_insert(json!(t));
    }

    Ok(Outcome {
        document: ResultDocument {
            command: CommandEcho {
                name: command.name().to_string(),
                options: echo,
            },
            input_sha256: digest,
            n,
            results,
            degeneracy,
            tolerances,
            timing: Timing {
                wall_seconds: start.elapsed().as_secs_f64(),
            },
        },
        artifact,
        exit_code,
        report,
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Regular => "regular",
        Method::Blocks => "blocks",
    }
}

fn what_name(w: What) -> &'static str {
    match w {
        What::Structure => "structure",
        What::F => "f",
    }
}

fn dims(n: usize) -> Result<Value> {
    let irreps = enumerate_irreps(n)?;
    let table: Vec<Value> = irreps
        .iter()
        .map(|l| {
            json!({
                "lambda0": l.lambda0,
                "lambda1": l.lambda1,
                "q_dim": l.q_dim(),
                "multiplicity": l.multiplicity().to_string(),
            })
        })
        .collect();
    let sum: usize = irreps.iter().map(|l| l.q_dim() * l.q_dim()).sum();
    Ok(json!({
        "monomial_count": monomial_count(n),
        "irreps": table,
        "sum_q_dim_squared": sum,
    }))
}

fn load_structure_tensor(path: &Path) -> Result<StructureTensor> {
    let doc: TensorDocument = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::validation(format!("{}: not a structure tensor: {e}", path.display())))?;
    Ok(doc.to_tensor()?)
}

fn load_f_tensor(path: &Path) -> Result<FTensor> {
    let doc: FTensorDocument = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::validation(format!("{}: not an F tensor: {e}", path.display())))?;
    Ok(doc.to_tensor()?)
}

/// Blocks of `op`, from the spec's F tensor file when given.
fn hamiltonian_blocks(spec: &ProblemSpec, op: &SymmetricOperator, opts: &RunOptions) -> Result<BlockOperator> {
    if op.n() != spec.n {
        return Err(symsim_core::Error::SizeMismatch {
            expected: spec.n,
            found: op.n(),
        }
        .into());
    }
    let tensor = match &spec.f_tensor {
        Some(path) => load_f_tensor(path)?,
        None => opts.cache.f_blocks(spec.n, &op.support())?,
    };
    Ok(block_operator_with(op, &tensor)?)
}

fn observable(input: &Input, opts: &RunOptions, echo: &mut BTreeMap<String, Value>) -> Result<(SymmetricOperator, &'static str)> {
    if let Some(path) = &opts.observable {
        echo.insert("observable".into(), json!(path.display().to_string()));
        let op = parse_observable(&read_file(path)?, input.spec.n)
            .map_err(|e| prefix(e, &path.display().to_string()))?;
        return Ok((op, "file"));
    }
    match &input.spec.observable {
        Some(op) => Ok((op.clone(), "spec")),
        None => Ok((input.spec.hamiltonian.clone(), "hamiltonian")),
    }
}

enum Unitary {
    Times(Vec<f64>),
    Fixed(BlockOperator, &'static str),
    Identity,
}

fn unitary(input: &Input, opts: &RunOptions, echo: &mut BTreeMap<String, Value>) -> Result<Unitary> {
    if !opts.times.is_empty() {
        echo.insert("time".into(), json!(opts.times));
        return match &input.spec.unitary {
            None | Some(UnitarySource::Evolution(_)) => Ok(Unitary::Times(opts.times.clone())),
            Some(_) => Err(CliError::validation(
                "--time conflicts with the unitary given in the spec; use at most one unitary source",
            )),
        };
    }
    match &input.spec.unitary {
        None => Ok(Unitary::Identity),
        Some(UnitarySource::Evolution(t)) => Ok(Unitary::Times(vec![*t])),
        Some(UnitarySource::Coefficients(u)) => Ok(Unitary::Fixed(unitary_from_coeffs(u)?, "coefficients")),
        Some(UnitarySource::Blocks(source)) => {
            let u = source.load_operator()?;
            if u.n() != input.spec.n {
                return Err(symsim_core::Error::SizeMismatch {
                    expected: input.spec.n,
                    found: u.n(),
                }
                .into());
            }
            let (lambda1, deviation) = u.unitary_deviation();
            if deviation > UNITARITY_TOLERANCE {
                return Err(symsim_core::Error::NotUnitary {
                    lambda1,
                    deviation,
                    tolerance: UNITARITY_TOLERANCE,
                }
                .into());
            }
            Ok(Unitary::Fixed(u, "blocks"))
        }
    }
}

fn load_state(input: &Input, opts: &RunOptions, echo: &mut BTreeMap<String, Value>) -> Result<BlockState> {
    let source = match &opts.state {
        Some(path) => {
            echo.insert("state".into(), json!(path.display().to_string()));
            BlocksSource::File(path.clone())
        }
        None => input
            .spec
            .state
            .clone()
            .ok_or_else(|| CliError::validation("no state: pass --state or set `state` in the spec"))?,
    };
    let state = source.load_state()?;
    if state.n() != input.spec.n {
        return Err(symsim_core::Error::SizeMismatch {
            expected: input.spec.n,
            found: state.n(),
        }
        .into());
    }
    Ok(state)
}

/// Shadow-tomography sample count for estimating `tr(O rho)`, reported for
/// reference only.
fn shadow_note(o: &SymmetricOperator, o_blocks: &BlockOperator) -> Value {
    let locality = o
        .terms()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, _)| i.weight())
        .max()
        .unwrap_or(0);
    let norm = o_blocks
        .blocks()
        .iter()
        .flat_map(|b| linalg::eigvalsh(&linalg::hermitian_part(b)))
        .fold(0.0f64, |m, e| m.max(e.abs()));
    json!({
        "formula": "N = O(4^k * ||O||_inf^2 * log(1/delta) / epsilon^2) random-Pauli snapshots for additive error epsilon with failure probability delta",
        "locality_k": locality,
        "operator_norm": norm,
        "executed": false,
    })
}

fn evolve(input: &Input, opts: &RunOptions, echo: &mut BTreeMap<String, Value>) -> Result<Value> {
    let spec = &input.spec;
    let (obs, obs_source) = observable(input, opts, echo)?;
    let rho = load_state(input, opts, echo)?;
    let o_blocks = hamiltonian_blocks(spec, &obs, opts)?;
    let identity = BlockOperator::identity(spec.n)?;
    let initial = expectation_blocks(&o_blocks, &identity, &rho)?;
    let (source, values) = match unitary(input, opts, echo)? {
        Unitary::Identity => ("identity", vec![json!({"expectation": initial})]),
        Unitary::Fixed(u, source) => (source, vec![json!({"expectation": expectation_blocks(&o_blocks, &u, &rho)?})]),
        Unitary::Times(times) => {
            let h_blocks = hamiltonian_blocks(spec, &spec.hamiltonian, opts)?;
            let values = times
                .iter()
                .map(|t| {
                    let u = evolution_from_blocks(&h_blocks, *t);
                    Ok(json!({"time": t, "expectation": expectation_blocks(&o_blocks, &u, &rho)?}))
                })
                .collect::<Result<Vec<_>>>()?;
            ("hamiltonian", values)
        }
    };
    Ok(json!({
        "observable_source": obs_source,
        "unitary_source": source,
        "initial_expectation": initial,
        "values": values,
        "shadow_sample_complexity": shadow_note(&obs, &o_blocks),
    }))
}

fn loss(input: &Input, opts: &RunOptions, echo: &mut BTreeMap<String, Value>) -> Result<Value> {
    let spec = &input.spec;
    let (obs, obs_source) = observable(input, opts, echo)?;
    let entries = match &opts.dataset {
        Some(path) => {
            echo.insert("dataset".into(), json!(path.display().to_string()));
            parse_dataset(&read_file(path)?, path.parent())
                .map_err(|e| prefix(e, &path.display().to_string()))?
        }
        None => spec
            .dataset
            .clone()
            .ok_or_else(|| CliError::validation("no dataset: pass --dataset or set `dataset` in the spec"))?,
    };
    let samples = entries.iter().map(|e| e.load()).collect::<Result<Vec<_>>>()?;
    if let Some(s) = samples.iter().find(|s| s.state.n() != spec.n) {
        return Err(symsim_core::Error::SizeMismatch {
            expected: spec.n,
            found: s.state.n(),
        }
        .into());
    }
    let (u, source) = match unitary(input, opts, echo)? {
        Unitary::Identity => (BlockOperator::identity(spec.n)?, "identity"),
        Unitary::Fixed(u, source) => (u, source),
        Unitary::Times(times) => {
            let [t] = times.as_slice() else {
                return Err(CliError::validation("`loss` takes a single --time"));
            };
            let h_blocks = hamiltonian_blocks(spec, &spec.hamiltonian, opts)?;
            (evolution_from_blocks(&h_blocks, *t), "hamiltonian")
        }
    };
    let o_blocks = hamiltonian_blocks(spec, &obs, opts)?;
    let (loss, values) = empirical_loss_terms(&samples, &o_blocks, &u)?;
    Ok(json!({
        "observable_source": obs_source,
        "unitary_source": source,
        "loss": loss,
        "samples": samples.len(),
        "expectations": values,
        "labels": samples.iter().map(|s| s.label()).collect::<Vec<_>>(),
    }))
}

/// Monomials whose tensors are dumped: the support of the Hamiltonian and
/// observable, or the whole basis when both are empty.
fn dump_rows(spec: &ProblemSpec) -> Result<Vec<MonomialIndex>> {
    let mut rows = spec.hamiltonian.support();
    if let Some(o) = &spec.observable {
        rows.extend(o.support());
    }
    rows.sort();
    rows.dedup();
    if rows.is_empty() {
        rows = enumerate_monomials(spec.n)?;
    }
    Ok(rows)
}

fn tensors(spec: &ProblemSpec, opts: &RunOptions) -> Result<(Value, String)> {
    let rows = dump_rows(spec)?;
    let row_list: Vec<[usize; 4]> = rows.iter().map(|i| i.as_array()).collect();
    match opts.what {
        What::Structure => {
            let tensor = opts.cache.structure_rows(spec.n, &rows)?;
            let doc = TensorDocument::from_tensor(&tensor);
            let summary = json!({"what": "structure", "rows": row_list, "entries": doc.entries.len()});
            Ok((summary, symsim_core::io::to_json(&doc)?))
        }
        What::F => {
            let tensor = opts.cache.f_blocks(spec.n, &rows)?;
            let doc = FTensorDocument::from_tensor(&tensor);
            let summary = json!({"what": "f", "rows": row_list, "blocks": doc.blocks.len()});
            Ok((summary, symsim_core::io::to_json(&doc)?))
        }
    }
}
