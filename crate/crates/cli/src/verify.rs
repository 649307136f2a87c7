//! Cross-checks of every polynomial-time path against the dense oracle.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use symsim_core::algebra::{enumerate_monomials, gse_regular, monomial_count, structure_constant, structure_products};
use symsim_core::dynamics::{evolution_from_hamiltonian, expectation};
use symsim_core::linalg::{self, CMatrix};
use symsim_core::oracle::{DenseOperator, Oracle};
use symsim_core::schur::{enumerate_irreps, f_block, ground_state};

use crate::error::Result;
use crate::sampling;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub n: usize,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, n: usize, cases: usize, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            n,
            cases,
            max_error,
            tolerance,
            // NaN errors fail
            passed: max_error <= tolerance,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:<24} n={:<2} cases={:<5} max_err={:.3e} tol={:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.n,
            self.cases,
            self.max_error,
            self.tolerance
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Random cases per `n` for the sampled checks.
    pub samples: usize,
    /// Replaces every per-check tolerance when set.
    pub tolerance: Option<f64>,
    pub oracle: Oracle,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_n: 5,
            seed: sampling::DEFAULT_SEED,
            samples: 10,
            tolerance: None,
            oracle: Oracle::default(),
        }
    }
}

impl VerifyConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

/// Runs the whole ladder, calling `report` after each check.
pub fn run_ladder(cfg: &VerifyConfig, mut report: impl FnMut(&CheckResult)) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut push = |r: CheckResult| {
        report(&r);
        out.push(r);
    };
    let mut rng = sampling::rng(cfg.seed);
    let o = &cfg.oracle;
    let dense_max = cfg.max_n.min(o.dense_cap);
    let group_max = cfg.max_n.min(o.group_cap);

    for n in 1..=cfg.max_n {
        push(check_dimensions(n, cfg));
    }
    for n in 1..=dense_max.min(4) {
        push(check_structure_all(o, n, cfg)?);
    }
    for n in 5..=dense_max.min(6) {
        push(check_structure_sampled(o, n, cfg, &mut rng)?);
    }
    for n in 1..=dense_max.min(6) {
        push(check_f_elements(o, n, cfg)?);
    }
    for n in 2..=dense_max.min(8) {
        push(check_gse(o, n, cfg, &mut rng)?);
    }
    for n in 1..=dense_max.min(8) {
        push(check_ground_state(o, n, cfg, &mut rng)?);
    }
    for n in 2..=dense_max.min(8) {
        let (dynamics, drift) = check_dynamics(o, n, cfg, &mut rng)?;
        push(dynamics);
        push(drift);
    }
    for n in 1..=group_max.min(5) {
        let (membership, idempotence) = check_twirl(o, n, cfg, &mut rng)?;
        push(membership);
        push(idempotence);
    }
    for n in 1..=group_max.min(6) {
        push(check_young(o, n, cfg)?);
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn check_dimensions(n: usize, cfg: &VerifyConfig) -> CheckResult {
    let want = binomial(n + 3, 3);
    let irreps = enumerate_irreps(n).expect("n >= 1");
    let sum: usize = irreps.iter().map(|l| l.q_dim() * l.q_dim()).sum();
    let error = want.abs_diff(monomial_count(n)).max(want.abs_diff(sum)) as f64;
    CheckResult::new("dimensions", n, 1, error, cfg.tol(0.0))
}

fn dense_basis(o: &Oracle, n: usize) -> Result<Vec<CMatrix>> {
    enumerate_monomials(n)?
        .iter()
        .map(|i| Ok(o.dense_monomial(i)?.into_matrix()))
        .collect()
}

fn check_structure_all(o: &Oracle, n: usize, cfg: &VerifyConfig) -> Result<CheckResult> {
    let basis = enumerate_monomials(n)?;
    let dense = dense_basis(o, n)?;
    let mut worst = 0.0f64;
    for (a, i) in basis.iter().enumerate() {
        for (b, j) in basis.iter().enumerate() {
            let dec = o.decompose_invariant(&DenseOperator::new(n, &dense[a] * &dense[b])?)?;
            let fast = structure_products(i, j)?;
            let mut err = dec.residual;
            for k in &basis {
                let got = fast.iter().find(|(kk, _)| kk == k).map(|(_, v)| *v).unwrap_or_default();
                err = err.max((got - dec.coefficient(k)).norm());
            }
            worst = worst.max(err);
        }
    }
    Ok(CheckResult::new("structure-constants", n, basis.len().pow(2), worst, cfg.tol(1e-10)))
}

fn check_structure_sampled(o: &Oracle, n: usize, cfg: &VerifyConfig, rng: &mut impl Rng) -> Result<CheckResult> {
    let cases = cfg.samples * 5;
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let i = sampling::random_monomial(n, rng);
        let j = sampling::random_monomial(n, rng);
        let k = sampling::random_monomial(n, rng);
        let product = o.dense_monomial(&i)?.into_matrix() * o.dense_monomial(&j)?.into_matrix();
        let dec = o.decompose_invariant(&DenseOperator::new(n, product)?)?;
        worst = worst.max((structure_constant(&i, &j, &k)? - dec.coefficient(&k)).norm());
    }
    Ok(CheckResult::new("structure-constants", n, cases, worst, cfg.tol(1e-10)))
}

fn check_f_elements(o: &Oracle, n: usize, cfg: &VerifyConfig) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    let monomials = enumerate_monomials(n)?;
    for irrep in enumerate_irreps(n)? {
        let states = (0..irrep.q_dim())
            .map(|q| o.dense_schur_state(&irrep, q))
            .collect::<symsim_core::Result<Vec<_>>>()?;
        for i in &monomials {
            let a = o.dense_monomial(i)?;
            let block = f_block(i, &irrep)?;
            for (q, bra) in states.iter().enumerate() {
                for (qp, ket) in states.iter().enumerate() {
                    worst = worst.max((block.matrix[(q, qp)] - bra.inner(&a.apply(ket))).norm());
                    cases += 1;
                }
            }
        }
    }
    Ok(CheckResult::new("f-elements", n, cases, worst, cfg.tol(1e-10)))
}

fn check_gse(o: &Oracle, n: usize, cfg: &VerifyConfig, rng: &mut impl Rng) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples {
        let h = sampling::random_hamiltonian(n, 5, rng);
        let exact = o.exact_gse(&h)?;
        let regular = gse_regular(&h)?;
        let blocks = ground_state(&h)?.energy;
        worst = worst
            .max((exact - regular).abs())
            .max((exact - blocks).abs())
            .max((regular - blocks).abs());
    }
    Ok(CheckResult::new("gse-agreement", n, cfg.samples, worst, cfg.tol(1e-8)))
}

fn check_ground_state(o: &Oracle, n: usize, cfg: &VerifyConfig, rng: &mut impl Rng) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples {
        let h = sampling::random_hamiltonian(n, 5, rng);
        let g = ground_state(&h)?;
        let psi = o.embed_amplitudes(&g.lambda_min, &g.amplitudes)?;
        let dense = o.dense_operator(&h)?;
        let r = dense.matrix() * psi.vector() - psi.vector() * Complex64::new(g.energy, 0.0);
        worst = worst.max(r.norm());
    }
    Ok(CheckResult::new("ground-state-residual", n, cfg.samples, worst, cfg.tol(1e-8)))
}

const TIME_GRID: usize = 10;

fn check_dynamics(
    o: &Oracle,
    n: usize,
    cfg: &VerifyConfig,
    rng: &mut impl Rng,
) -> Result<(CheckResult, CheckResult)> {
    let mut worst = 0.0f64;
    let mut drift = 0.0f64;
    let runs = cfg.samples.div_ceil(5);
    for _ in 0..runs {
        let h = sampling::random_hamiltonian(n, 5, rng);
        let obs = sampling::random_hamiltonian(n, 5, rng);
        let rho = sampling::random_block_state(n, rng);
        let rho_dense = o.embed_block_state(&rho)?;
        let e0 = expectation(&h, &evolution_from_hamiltonian(&h, 0.0)?, &rho)?;
        for step in 0..TIME_GRID {
            let t = 0.25 * step as f64;
            let u = evolution_from_hamiltonian(&h, t)?;
            let fast = expectation(&obs, &u, &rho)?;
            let exact = o.exact_expectation(&obs, &h, t, &rho_dense)?;
            worst = worst.max((fast - exact).abs());
            drift = drift.max((expectation(&h, &u, &rho)? - e0).abs());
        }
    }
    let cases = runs * TIME_GRID;
    Ok((
        CheckResult::new("dynamics-agreement", n, cases, worst, cfg.tol(1e-8)),
        CheckResult::new("energy-drift", n, cases, drift, cfg.tol(1e-9)),
    ))
}

fn check_twirl(o: &Oracle, n: usize, cfg: &VerifyConfig, rng: &mut impl Rng) -> Result<(CheckResult, CheckResult)> {
    let cases = cfg.samples.div_ceil(2);
    let mut residual = 0.0f64;
    let mut idempotence = 0.0f64;
    for _ in 0..cases {
        let m = DenseOperator::new(n, sampling::random_matrix(1 << n, 1 << n, rng))?;
        let tw = o.reynolds_twirl(&m)?;
        residual = residual.max(o.decompose_invariant(&tw)?.residual);
        idempotence = idempotence.max(linalg::max_abs_diff(o.reynolds_twirl(&tw)?.matrix(), tw.matrix()));
    }
    Ok((
        CheckResult::new("twirl-membership", n, cases, residual, cfg.tol(1e-9)),
        CheckResult::new("twirl-idempotence", n, cases, idempotence, cfg.tol(1e-10)),
    ))
}

fn check_young(o: &Oracle, n: usize, cfg: &VerifyConfig) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for irrep in enumerate_irreps(n)? {
        let p = o.young_symmetrizer(&irrep)?;
        for q in 0..irrep.q_dim() {
            let image = p.apply(&o.seed_state(&irrep, q)?);
            let cos = image.cosine_similarity(&o.dense_schur_state(&irrep, q)?);
            worst = worst.max(1.0 - cos);
            cases += 1;
        }
    }
    Ok(CheckResult::new("young-direction", n, cases, worst, cfg.tol(1e-10)))
}
