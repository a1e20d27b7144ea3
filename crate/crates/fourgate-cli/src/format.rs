//! On-disk formats: JSON circuit and compiled-circuit files, and the CSV
//! emitted by the benchmark.
//!
//! Circuit files hold one object with `n` and a `gates` array in time
//! order; compiled files hold `n`, the leading `pauli` frame and a
//! `layers` array. Matrices are arrays of 0/1 rows, so every format is
//! exact. The two kinds are distinguished by their top-level key.

use fourgate::clifford::{Axis, Gate, LayerSpec, MqGate, PauliFrame};
use fourgate::cost::{BenchConfig, BenchmarkResult};
use fourgate::gf2::{BitMatrix, BitVec};
use fourgate::synth::CompiledCircuit;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct CircuitFile {
    pub n: usize,
    pub gates: Vec<GateRecord>,
}

/// Variant names double as the `type` tags of the file format.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GateRecord {
    H { qubit: usize },
    S { qubit: usize },
    X { qubit: usize },
    Y { qubit: usize },
    Z { qubit: usize },
    CX { control: usize, target: usize },
    RZZ { qubits: [usize; 2] },
    RXX { qubits: [usize; 2] },
    MQZ { xi: Vec<Vec<u8>> },
    MQX { xi: Vec<Vec<u8>> },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CompiledFile {
    pub n: usize,
    pub pauli: FrameRecord,
    pub layers: Vec<LayerRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FrameRecord {
    pub eta: Vec<u8>,
    pub mu: Vec<u8>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum LayerRecord {
    #[serde(rename = "pauli")]
    Pauli { eta: Vec<u8>, mu: Vec<u8> },
    #[serde(rename = "sz")]
    Sz { qubits: Vec<usize> },
    #[serde(rename = "sx")]
    Sx { qubits: Vec<usize> },
    #[serde(rename = "hall")]
    Hall {},
    #[serde(rename = "h")]
    H { qubits: Vec<usize> },
    #[serde(rename = "rzz")]
    Rzz { coupling: Vec<Vec<u8>> },
    #[serde(rename = "rxx")]
    Rxx { coupling: Vec<Vec<u8>> },
    #[serde(rename = "cx")]
    Cx { matrix: Vec<Vec<u8>> },
    #[serde(rename = "mq")]
    Mq { axis: String, xi: Vec<Vec<u8>> },
}

pub fn matrix_to_rows(m: &BitMatrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| u8::from(m.get(i, j))).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<u8>]) -> Result<BitMatrix, String> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err("matrix must be nonempty".into());
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix rows".into());
    }
    if rows.iter().flatten().any(|&v| v > 1) {
        return Err("matrix entries must be 0 or 1".into());
    }
    Ok(BitMatrix::from_rows(rows))
}

pub fn bits_to_vec(bits: &[u8], n: usize, what: &str) -> Result<BitVec, String> {
    if bits.len() != n {
        return Err(format!("{what} has length {}, expected {n}", bits.len()));
    }
    if bits.iter().any(|&v| v > 1) {
        return Err(format!("{what} entries must be 0 or 1"));
    }
    Ok(BitVec::from_bits(bits))
}

pub fn vec_to_bits(v: &BitVec) -> Vec<u8> {
    (0..v.len()).map(|i| u8::from(v.get(i))).collect()
}

fn qubits_to_mask(qubits: &[usize], n: usize) -> Result<BitVec, String> {
    let mut mask = BitVec::zeros(n);
    for &q in qubits {
        if q >= n {
            return Err(format!("qubit {q} out of range ({n} qubits)"));
        }
        mask.set(q, true);
    }
    Ok(mask)
}

fn mask_to_qubits(mask: &BitVec) -> Vec<usize> {
    mask.iter_ones().collect()
}

impl CircuitFile {
    pub fn to_gates(&self) -> Result<Vec<Gate>, String> {
        self.gates
            .iter()
            .map(|record| {
                Ok(match record {
                    GateRecord::H { qubit } => Gate::H(*qubit),
                    GateRecord::S { qubit } => Gate::S(*qubit),
                    GateRecord::X { qubit } => Gate::X(*qubit),
                    GateRecord::Y { qubit } => Gate::Y(*qubit),
                    GateRecord::Z { qubit } => Gate::Z(*qubit),
                    GateRecord::CX { control, target } => Gate::CX(*control, *target),
                    GateRecord::RZZ { qubits } => Gate::RZZ(qubits[0], qubits[1]),
                    GateRecord::RXX { qubits } => Gate::RXX(qubits[0], qubits[1]),
                    GateRecord::MQZ { xi } => Gate::MQZ(rows_to_matrix(xi)?),
                    GateRecord::MQX { xi } => Gate::MQX(rows_to_matrix(xi)?),
                })
            })
            .collect()
    }

    pub fn from_gates(n: usize, gates: &[Gate]) -> CircuitFile {
        let records = gates
            .iter()
            .map(|g| match g {
                Gate::H(q) => GateRecord::H { qubit: *q },
                Gate::S(q) => GateRecord::S { qubit: *q },
                Gate::X(q) => GateRecord::X { qubit: *q },
                Gate::Y(q) => GateRecord::Y { qubit: *q },
                Gate::Z(q) => GateRecord::Z { qubit: *q },
                Gate::CX(c, t) => GateRecord::CX {
                    control: *c,
                    target: *t,
                },
                Gate::RZZ(a, b) => GateRecord::RZZ { qubits: [*a, *b] },
                Gate::RXX(a, b) => GateRecord::RXX { qubits: [*a, *b] },
                Gate::MQZ(xi) => GateRecord::MQZ {
                    xi: matrix_to_rows(xi),
                },
                Gate::MQX(xi) => GateRecord::MQX {
                    xi: matrix_to_rows(xi),
                },
            })
            .collect();
        CircuitFile { n, gates: records }
    }
}

impl CompiledFile {
    pub fn from_compiled(cc: &CompiledCircuit) -> CompiledFile {
        let layers = cc
            .layers()
            .iter()
            .map(|layer| match layer {
                LayerSpec::Pauli(f) => LayerRecord::Pauli {
                    eta: vec_to_bits(f.eta()),
                    mu: vec_to_bits(f.mu()),
                },
                LayerSpec::SZ(d) => LayerRecord::Sz {
                    qubits: mask_to_qubits(d),
                },
                LayerSpec::SX(d) => LayerRecord::Sx {
                    qubits: mask_to_qubits(d),
                },
                LayerSpec::Hall => LayerRecord::Hall {},
                LayerSpec::H(b) => LayerRecord::H {
                    qubits: mask_to_qubits(b),
                },
                LayerSpec::RZZ(m) => LayerRecord::Rzz {
                    coupling: matrix_to_rows(m),
                },
                LayerSpec::RXX(m) => LayerRecord::Rxx {
                    coupling: matrix_to_rows(m),
                },
                LayerSpec::CX(c) => LayerRecord::Cx {
                    matrix: matrix_to_rows(c),
                },
                LayerSpec::Mq(g) => LayerRecord::Mq {
                    axis: g.axis().to_string(),
                    xi: matrix_to_rows(g.xi()),
                },
            })
            .collect();
        CompiledFile {
            n: cc.n(),
            pauli: FrameRecord {
                eta: vec_to_bits(cc.pauli().eta()),
                mu: vec_to_bits(cc.pauli().mu()),
            },
            layers,
        }
    }

    pub fn to_compiled(&self) -> Result<CompiledCircuit, String> {
        let n = self.n;
        let frame = PauliFrame::new(
            bits_to_vec(&self.pauli.eta, n, "pauli eta")?,
            bits_to_vec(&self.pauli.mu, n, "pauli mu")?,
        )
        .map_err(|e| e.to_string())?;
        let layers = self
            .layers
            .iter()
            .map(|record| -> Result<LayerSpec, String> {
                Ok(match record {
                    LayerRecord::Pauli { eta, mu } => LayerSpec::Pauli(
                        PauliFrame::new(
                            bits_to_vec(eta, n, "pauli eta")?,
                            bits_to_vec(mu, n, "pauli mu")?,
                        )
                        .map_err(|e| e.to_string())?,
                    ),
                    LayerRecord::Sz { qubits } => LayerSpec::SZ(qubits_to_mask(qubits, n)?),
                    LayerRecord::Sx { qubits } => LayerSpec::SX(qubits_to_mask(qubits, n)?),
                    LayerRecord::Hall {} => LayerSpec::Hall,
                    LayerRecord::H { qubits } => LayerSpec::H(qubits_to_mask(qubits, n)?),
                    LayerRecord::Rzz { coupling } => LayerSpec::RZZ(rows_to_matrix(coupling)?),
                    LayerRecord::Rxx { coupling } => LayerSpec::RXX(rows_to_matrix(coupling)?),
                    LayerRecord::Cx { matrix } => LayerSpec::CX(rows_to_matrix(matrix)?),
                    LayerRecord::Mq { axis, xi } => {
                        let axis = match axis.as_str() {
                            "X" => Axis::X,
                            "Z" => Axis::Z,
                            other => return Err(format!("unknown gate axis {other:?}")),
                        };
                        LayerSpec::Mq(
                            MqGate::new(axis, rows_to_matrix(xi)?).map_err(|e| e.to_string())?,
                        )
                    }
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        CompiledCircuit::from_parts(n, frame, layers).map_err(|e| e.to_string())
    }
}

/// CSV with a raw-data block (`n,method,sample,total_nuc`) followed by a
/// summary block (`method,beta,ci_low,ci_high`). Dot decimal separator,
/// LF endings, no quoting.
pub fn benchmark_csv(result: &BenchmarkResult) -> String {
    let mut out = String::from("n,method,sample,total_nuc\n");
    for row in &result.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.n,
            row.method.name(),
            row.sample,
            row.total
        ));
    }
    out.push_str("method,beta,ci_low,ci_high\n");
    for (method, fit) in &result.fits {
        out.push_str(&format!(
            "{},{},{},{}\n",
            method.name(),
            fit.beta,
            fit.ci_low,
            fit.ci_high
        ));
    }
    out
}

/// Benchmark configuration as parsed from command-line flags.
pub fn bench_config(
    n_list: &str,
    samples: usize,
    seed: u64,
    include_degenerate: bool,
) -> Result<BenchConfig, String> {
    let n_values = n_list
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid qubit count {tok:?}"))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let cfg = BenchConfig {
        n_values,
        samples,
        seed,
        exclude_degenerate: !include_degenerate,
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}
