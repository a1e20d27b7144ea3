//! Drive-power cost model and the benchmark comparing the four-gate
//! construction against a Gaussian-elimination baseline.
//!
//! The cost of one entangling gate is the nuclear norm of its coupling
//! matrix read as a real symmetric 0/1 matrix: the L1 norm of its
//! eigenvalues. Eigenvalues come from a cyclic Jacobi rotation solver; the
//! solver's trace and Frobenius invariants are checked on every call.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::parallel::map_ordered;
use crate::synth::{cx_four_gate, gaussian_cnot_synthesis, CompiledCircuit};

/// Per-gate nuclear norms of a compiled circuit and their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub per_gate: Vec<f64>,
    pub total: f64,
}

/// Power-law exponent with a 95% confidence interval and the fitted
/// prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub beta: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub prefactor: f64,
}

/// Cyclic Jacobi eigenvalue iteration on a dense symmetric matrix.
/// Returns all eigenvalues (unordered beyond the sweep pattern).
fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let fro: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    if fro == 0.0 {
        return vec![0.0; n];
    }
    let threshold = 1e-14 * fro;
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= threshold {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= threshold / (n as f64) {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // rotate rows/columns p and q
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = s * akp + c * akq;
                    a[q * n + k] = a[k * n + q];
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Nuclear norm of a symmetric binary coupling matrix: the sum of the
/// absolute eigenvalues of the matrix over the reals.
pub fn nuclear_norm(xi: &BitMatrix) -> Result<f64> {
    if !xi.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = xi.rows();
    // zero rows contribute zero eigenvalues; solve on the support only
    let support: Vec<usize> = (0..n)
        .filter(|&i| (0..n).any(|j| xi.get(i, j)))
        .collect();
    let m = support.len();
    if m == 0 {
        return Ok(0.0);
    }
    let mut dense = vec![0.0f64; m * m];
    let mut trace = 0.0f64;
    let mut fro2 = 0.0f64;
    for (ii, &i) in support.iter().enumerate() {
        for (jj, &j) in support.iter().enumerate() {
            if xi.get(i, j) {
                dense[ii * m + jj] = 1.0;
                fro2 += 1.0;
                if ii == jj {
                    trace += 1.0;
                }
            }
        }
    }
    let eigs = jacobi_eigenvalues(&mut dense, m);

    // solver invariants, checked on every call
    let sum: f64 = eigs.iter().sum();
    let sum_sq: f64 = eigs.iter().map(|l| l * l).sum();
    let tol = 1e-7 * (1.0 + fro2);
    assert!(
        (sum - trace).abs() <= tol,
        "eigensolver trace invariant violated: {sum} vs {trace}"
    );
    assert!(
        (sum_sq - fro2).abs() <= tol,
        "eigensolver Frobenius invariant violated: {sum_sq} vs {fro2}"
    );

    Ok(eigs.iter().map(|l| l.abs()).sum())
}

/// Nuclear norms of every entangling gate in a compiled circuit;
/// single-qubit layers contribute nothing.
pub fn circuit_power(circ: &CompiledCircuit) -> CostReport {
    let per_gate: Vec<f64> = circ
        .mq_gates()
        .map(|g| nuclear_norm(g.xi()).expect("gate couplings are symmetric"))
        .collect();
    let total = per_gate.iter().sum();
    CostReport { per_gate, total }
}

/// Two-sided 97.5% standard-normal quantile.
const Z_95: f64 = 1.959963984540054;

/// Ordinary least squares on (log n, log y). `beta` is the slope; the 95%
/// confidence interval comes from the slope's standard error with the
/// normal quantile. Requires three distinct n values.
pub fn power_law_fit(points: &[(usize, f64)]) -> Result<FitResult> {
    fit_loglog(points, 3)
}

fn fit_loglog(points: &[(usize, f64)], min_distinct: usize) -> Result<FitResult> {
    let mut distinct: Vec<usize> = points.iter().map(|p| p.0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < min_distinct {
        return Err(Error::InsufficientData {
            need: min_distinct,
            got: distinct.len(),
        });
    }
    if points.iter().any(|&(n, y)| n == 0 || y <= 0.0) {
        return Err(Error::NonPositiveData);
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let beta = sxy / sxx;
    let intercept = y_mean - beta * x_mean;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - intercept - beta * x;
            r * r
        })
        .sum();
    // with only two points the residual has no degrees of freedom; the
    // interval collapses onto the point estimate
    let se_beta = if m > 2.0 {
        (sse / (m - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(FitResult {
        beta,
        ci_low: beta - Z_95 * se_beta,
        ci_high: beta + Z_95 * se_beta,
        prefactor: intercept.exp(),
    })
}

/// Decomposition method measured by the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ConstantCost,
    Gaussian,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ConstantCost => "constant_cost",
            Method::Gaussian => "gaussian",
        }
    }
}

/// Benchmark configuration: qubit counts, samples per count, base seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub n_values: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    /// Drop degenerate (identity layer) samples from the per-n means used
    /// by the log-log fit; their baseline cost of zero has no logarithm.
    pub exclude_degenerate: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_values: vec![8, 16, 32, 64, 128],
            samples: 20,
            seed: 7,
            exclude_degenerate: true,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.samples == 0 {
            return Err(Error::InsufficientData {
                need: 1,
                got: 0,
            });
        }
        if self.n_values.iter().any(|&n| n < 2) {
            return Err(Error::DimensionMismatch(
                "benchmark qubit counts must be >= 2".into(),
            ));
        }
        Ok(())
    }
}

/// One raw benchmark measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub method: Method,
    pub sample: usize,
    pub total: f64,
}

/// Raw table, per-n means and per-method power-law fits.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkResult {
    pub rows: Vec<BenchRow>,
    pub means: Vec<(usize, Method, f64)>,
    pub fits: Vec<(Method, FitResult)>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn sample_seed(seed: u64, n: usize, sample: usize) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(n as u64)) ^ sample as u64)
}

struct SampleOutcome {
    constant_cost: f64,
    gaussian: f64,
    degenerate: bool,
}

fn measure_sample(n: usize, seed: u64) -> SampleOutcome {
    let c = BitMatrix::random_invertible(n, seed);
    let degenerate = c == BitMatrix::identity(n);
    let dec = cx_four_gate(&c).expect("sampled matrix is invertible");
    let constant_cost = [&dec.g, &dec.e1, &dec.f, &dec.e2]
        .iter()
        .map(|m| nuclear_norm(m).expect("blocks are symmetric"))
        .sum();
    let (_, fused) = gaussian_cnot_synthesis(&c).expect("sampled matrix is invertible");
    let gaussian = fused
        .iter()
        .map(|g| nuclear_norm(g.xi()).expect("stars are symmetric"))
        .sum();
    SampleOutcome {
        constant_cost,
        gaussian,
        degenerate,
    }
}

/// Run the drive-power benchmark: draw random invertible layer matrices,
/// cost both decompositions on the same instances, aggregate per-n means
/// and fit each method to a power law. Samples are independent and run in
/// parallel when the `parallel` feature is on; output is deterministic per
/// seed regardless.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchmarkResult> {
    cfg.validate()?;
    let tasks: Vec<(usize, usize, u64)> = cfg
        .n_values
        .iter()
        .flat_map(|&n| (0..cfg.samples).map(move |s| (n, s, sample_seed(cfg.seed, n, s))))
        .collect();
    let outcomes = map_ordered(&tasks, |&(n, _, seed)| measure_sample(n, seed));

    let mut rows = Vec::with_capacity(tasks.len() * 2);
    let mut means = Vec::new();
    let mut fit_points: Vec<Vec<(usize, f64)>> = vec![Vec::new(), Vec::new()];

    for (ni, &n) in cfg.n_values.iter().enumerate() {
        let base = ni * cfg.samples;
        let slice = &outcomes[base..base + cfg.samples];
        for method in [Method::ConstantCost, Method::Gaussian] {
            for (s, outcome) in slice.iter().enumerate() {
                let total = match method {
                    Method::ConstantCost => outcome.constant_cost,
                    Method::Gaussian => outcome.gaussian,
                };
                rows.push(BenchRow {
                    n,
                    method,
                    sample: s,
                    total,
                });
            }
            let retained: Vec<f64> = slice
                .iter()
                .filter(|o| !(cfg.exclude_degenerate && o.degenerate))
                .map(|o| match method {
                    Method::ConstantCost => o.constant_cost,
                    Method::Gaussian => o.gaussian,
                })
                .collect();
            if !retained.is_empty() {
                let mean = retained.iter().sum::<f64>() / retained.len() as f64;
                means.push((n, method, mean));
                if mean > 0.0 {
                    fit_points[match method {
                        Method::ConstantCost => 0,
                        Method::Gaussian => 1,
                    }]
                    .push((n, mean));
                }
            }
        }
    }

    // the summary accepts a two-point slope so short sweeps still report;
    // the public fit op keeps its three-point requirement
    let mut fits = Vec::new();
    for (idx, method) in [Method::ConstantCost, Method::Gaussian].into_iter().enumerate() {
        fits.push((method, fit_loglog(&fit_points[idx], 2)?));
    }

    Ok(BenchmarkResult { rows, means, fits })
}
