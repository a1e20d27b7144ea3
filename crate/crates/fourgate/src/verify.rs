//! Independent correctness oracles: sign-exact tableau recomposition for
//! any size, and a dense unitary oracle for small registers.
//!
//! The dense path builds each gate as an explicit 2^n x 2^n complex matrix
//! from the frozen gate semantics (Z-axis entangling gates are products of
//! S and CZ factors, X-axis gates their Hadamard-on-all conjugates) and
//! never touches the bit-level tableau code, so agreement between the two
//! pins the sign conventions.

use crate::clifford::{Axis, CliffordOp, Gate, LayerSpec, PauliFrame};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::synth::CompiledCircuit;
use num_complex::Complex64;

/// Largest register the dense oracle accepts (1024-dimensional matrices).
pub const DENSE_MAX_QUBITS: usize = 5;

/// Outcome of comparing a compiled circuit against its target.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub symplectic_match: bool,
    pub sign_match: bool,
    /// Dense-unitary agreement up to global phase; present only when the
    /// register is small enough for the dense oracle.
    pub dense_match: Option<bool>,
    /// Human-readable description of the first mismatch, if any.
    pub first_discrepancy: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.symplectic_match && self.sign_match && self.dense_match.unwrap_or(true)
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "symplectic_match: {}", self.symplectic_match)?;
        writeln!(f, "sign_match: {}", self.sign_match)?;
        match self.dense_match {
            Some(v) => writeln!(f, "dense_match: {v}")?,
            None => writeln!(f, "dense_match: n/a")?,
        }
        match &self.first_discrepancy {
            Some(d) => write!(f, "first_discrepancy: {d}"),
            None => write!(f, "first_discrepancy: none"),
        }
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = DenseMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> DenseMatrix {
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-entry deviation of self^dagger * self from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().mul(self).max_abs_diff(&DenseMatrix::identity(self.dim))
    }

    /// Divide by the first entry of maximal magnitude, fixing the global
    /// phase deterministically.
    pub fn phase_normalized(&self) -> DenseMatrix {
        let mut best = Complex64::ZERO;
        let mut best_mag = 0.0f64;
        for v in &self.data {
            let m = v.norm();
            if m > best_mag + 1e-12 {
                best_mag = m;
                best = *v;
            }
        }
        let mut out = self.clone();
        if best_mag > 0.0 {
            for v in &mut out.data {
                *v /= best;
            }
        }
        out
    }

    /// Equality up to a global phase, by max-entry distance after phase
    /// normalization.
    pub fn approx_eq_up_to_phase(&self, other: &DenseMatrix, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .phase_normalized()
                .max_abs_diff(&other.phase_normalized())
                <= tol
    }
}

fn check_dense_size(n: usize) -> Result<usize> {
    if n > DENSE_MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: DENSE_MAX_QUBITS,
        });
    }
    Ok(1usize << n)
}

fn bit(idx: usize, k: usize) -> usize {
    (idx >> k) & 1
}

/// Embed a single-qubit gate acting on qubit k.
fn single_qubit(n: usize, k: usize, u: [[Complex64; 2]; 2]) -> DenseMatrix {
    let dim = 1usize << n;
    let mut out = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let b = bit(col, k);
        for (a, row_amp) in u.iter().enumerate().map(|(a, r)| (a, r[b])) {
            if row_amp != Complex64::ZERO {
                let row = (col & !(1 << k)) | (a << k);
                let cur = out.get(row, col);
                out.set(row, col, cur + row_amp);
            }
        }
    }
    out
}

fn hadamard_matrix() -> [[Complex64; 2]; 2] {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

/// Z-axis entangling gate as a diagonal: S on each set diagonal entry and
/// CZ on each set pair.
fn mqz_dense(n: usize, xi: &BitMatrix) -> DenseMatrix {
    let dim = 1usize << n;
    let i_unit = Complex64::I;
    let mut out = DenseMatrix::zeros(dim);
    for x in 0..dim {
        let mut v = Complex64::ONE;
        for k in 0..n {
            if xi.get(k, k) && bit(x, k) == 1 {
                v *= i_unit;
            }
            for j in 0..k {
                if xi.get(k, j) && bit(x, k) == 1 && bit(x, j) == 1 {
                    v = -v;
                }
            }
        }
        out.set(x, x, v);
    }
    out
}

/// Hadamard on all qubits: entries 2^(-n/2) (-1)^{popcount(i & j)}.
fn hall_dense(n: usize) -> DenseMatrix {
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    let mut out = DenseMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let sign = if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out.set(i, j, Complex64::new(scale * sign, 0.0));
        }
    }
    out
}

fn mqx_dense(n: usize, xi: &BitMatrix) -> DenseMatrix {
    let h = hall_dense(n);
    h.mul(&mqz_dense(n, xi)).mul(&h)
}

/// Pauli layer X^eta Z^mu: |x> -> (-1)^(mu.x) |x ^ eta>.
fn pauli_frame_dense(n: usize, frame: &PauliFrame) -> DenseMatrix {
    let dim = 1usize << n;
    let mut eta_mask = 0usize;
    for k in frame.eta().iter_ones() {
        eta_mask |= 1 << k;
    }
    let mut out = DenseMatrix::zeros(dim);
    for x in 0..dim {
        let mut sign = 1.0;
        for k in frame.mu().iter_ones() {
            if bit(x, k) == 1 {
                sign = -sign;
            }
        }
        out.set(x ^ eta_mask, x, Complex64::new(sign, 0.0));
    }
    out
}

/// CNOT layer as the basis permutation |x> -> |c^-T x>.
fn cx_layer_dense(n: usize, c: &BitMatrix) -> Result<DenseMatrix> {
    let dim = 1usize << n;
    let map = c.inverse_transpose()?;
    let mut out = DenseMatrix::zeros(dim);
    for x in 0..dim {
        let mut v = BitVec::zeros(n);
        for k in 0..n {
            if bit(x, k) == 1 {
                v.set(k, true);
            }
        }
        let y = map.mul_vec(&v).expect("square map");
        let mut target = 0usize;
        for k in y.iter_ones() {
            target |= 1 << k;
        }
        out.set(target, x, Complex64::ONE);
    }
    Ok(out)
}

fn single_pair_coupling(n: usize, a: usize, b: usize) -> BitMatrix {
    let mut xi = BitMatrix::zeros(n, n);
    xi.set(a, b, true);
    xi.set(b, a, true);
    xi
}

/// Dense matrix of one elementary gate.
pub fn gate_dense(n: usize, gate: &Gate) -> Result<DenseMatrix> {
    check_dense_size(n)?;
    let one = Complex64::ONE;
    let i = Complex64::I;
    Ok(match gate {
        Gate::H(k) => single_qubit(n, *k, hadamard_matrix()),
        Gate::S(k) => single_qubit(n, *k, [[one, Complex64::ZERO], [Complex64::ZERO, i]]),
        Gate::X(k) => single_qubit(n, *k, [[Complex64::ZERO, one], [one, Complex64::ZERO]]),
        Gate::Y(k) => single_qubit(n, *k, [[Complex64::ZERO, -i], [i, Complex64::ZERO]]),
        Gate::Z(k) => single_qubit(n, *k, [[one, Complex64::ZERO], [Complex64::ZERO, -one]]),
        Gate::CX(c, t) => {
            let dim = 1usize << n;
            let mut out = DenseMatrix::zeros(dim);
            for x in 0..dim {
                let y = if bit(x, *c) == 1 { x ^ (1 << t) } else { x };
                out.set(y, x, one);
            }
            out
        }
        Gate::RZZ(a, b) => mqz_dense(n, &single_pair_coupling(n, *a, *b)),
        Gate::RXX(a, b) => mqx_dense(n, &single_pair_coupling(n, *a, *b)),
        Gate::MQZ(xi) => {
            if !xi.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            mqz_dense(n, xi)
        }
        Gate::MQX(xi) => {
            if !xi.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            mqx_dense(n, xi)
        }
    })
}

/// Dense matrix of one compiled layer.
pub fn layer_dense(n: usize, layer: &LayerSpec) -> Result<DenseMatrix> {
    check_dense_size(n)?;
    // validate payloads exactly as the tableau path does
    CliffordOp::layer_symplectic(n, layer)?;
    Ok(match layer {
        LayerSpec::Pauli(f) => pauli_frame_dense(n, f),
        LayerSpec::SZ(d) => mqz_dense(n, &BitMatrix::from_diag(d)),
        LayerSpec::SX(d) => mqx_dense(n, &BitMatrix::from_diag(d)),
        LayerSpec::Hall => hall_dense(n),
        LayerSpec::H(b) => {
            let mut acc = DenseMatrix::identity(1 << n);
            for k in b.iter_ones() {
                acc = single_qubit(n, k, hadamard_matrix()).mul(&acc);
            }
            acc
        }
        LayerSpec::RZZ(m) => mqz_dense(n, m),
        LayerSpec::RXX(m) => mqx_dense(n, m),
        LayerSpec::CX(c) => cx_layer_dense(n, c)?,
        LayerSpec::Mq(g) => match g.axis() {
            Axis::Z => mqz_dense(n, g.xi()),
            Axis::X => mqx_dense(n, g.xi()),
        },
    })
}

/// Exact unitary of a gate list in time order; n <= 5.
pub fn dense_unitary_of_gates(n: usize, gates: &[Gate]) -> Result<DenseMatrix> {
    let dim = check_dense_size(n)?;
    let mut acc = DenseMatrix::identity(dim);
    for g in gates {
        acc = gate_dense(n, g)?.mul(&acc);
    }
    Ok(acc)
}

/// Exact unitary of a compiled circuit (Pauli frame first); n <= 5.
pub fn dense_unitary_of_compiled(cc: &CompiledCircuit) -> Result<DenseMatrix> {
    let n = cc.n();
    check_dense_size(n)?;
    let mut acc = pauli_frame_dense(n, cc.pauli());
    for layer in cc.layers() {
        acc = layer_dense(n, layer)?.mul(&acc);
    }
    Ok(acc)
}

/// Fold a gate list into a tableau, signs exact.
pub fn tableau_of_gates(n: usize, gates: &[Gate]) -> Result<CliffordOp> {
    CliffordOp::from_gates(n, gates)
}

/// Fold a compiled circuit into a tableau, signs exact.
pub fn tableau_of_compiled(cc: &CompiledCircuit) -> Result<CliffordOp> {
    let n = cc.n();
    let mut acc =
        CliffordOp::layer_symplectic(n, &LayerSpec::Pauli(cc.pauli().clone()))?;
    for layer in cc.layers() {
        let op = CliffordOp::layer_symplectic(n, layer)?;
        acc = CliffordOp::compose(&op, &acc)?;
    }
    Ok(acc)
}

/// Dense Pauli matrix of a tableau row: sign * product over qubits of the
/// letter encoded by (x, z), with (1,1) read as Y.
fn dense_pauli(n: usize, x: &BitVec, z: &BitVec, neg: bool) -> DenseMatrix {
    let dim = 1usize << n;
    let mut x_mask = 0usize;
    for k in x.iter_ones() {
        x_mask |= 1 << k;
    }
    let mut out = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let mut v = if neg { -Complex64::ONE } else { Complex64::ONE };
        for k in 0..n {
            let xk = x.get(k);
            let zk = z.get(k);
            if xk && zk {
                // Y: |0> -> i|1>, |1> -> -i|0>
                v *= if bit(col, k) == 0 { Complex64::I } else { -Complex64::I };
            } else if zk && bit(col, k) == 1 {
                v = -v;
            }
        }
        out.set(col ^ x_mask, col, v);
    }
    out
}

/// Check that a dense unitary realizes a tableau: for every generator P,
/// U P U^dagger must equal the signed Pauli the tableau prescribes.
pub fn dense_matches_tableau(u: &DenseMatrix, tableau: &CliffordOp, tol: f64) -> bool {
    let n = tableau.n();
    let udag = u.dagger();
    let s = tableau.s();
    let r = tableau.r();
    for a in 0..2 * n {
        let mut gen_x = BitVec::zeros(n);
        let mut gen_z = BitVec::zeros(n);
        if a < n {
            gen_x.set(a, true);
        } else {
            gen_z.set(a - n, true);
        }
        let gen = dense_pauli(n, &gen_x, &gen_z, false);
        let conj = u.mul(&gen).mul(&udag);
        let mut img_x = BitVec::zeros(n);
        let mut img_z = BitVec::zeros(n);
        for i in 0..n {
            img_x.set(i, s.get(i, a));
            img_z.set(i, s.get(n + i, a));
        }
        let expected = dense_pauli(n, &img_x, &img_z, r.get(a));
        if conj.max_abs_diff(&expected) > tol {
            return false;
        }
    }
    true
}

/// Compare a compiled circuit against the target tableau: exact symplectic
/// and sign checks via recomposition, plus (for n <= 5) a dense-unitary
/// check that the compiled circuit's matrix conjugates every Pauli
/// generator exactly as the target prescribes, which is equality up to
/// global phase.
pub fn verify_compilation(target: &CliffordOp, candidate: &CompiledCircuit) -> Result<VerifyReport> {
    if target.n() != candidate.n() {
        return Err(Error::DimensionMismatch(format!(
            "target on {} qubits, candidate on {}",
            target.n(),
            candidate.n()
        )));
    }
    let n = target.n();
    let recomposed = tableau_of_compiled(candidate)?;

    let symplectic_match = recomposed.same_symplectic_part(target);
    let mut first_discrepancy = None;
    if !symplectic_match {
        let st = target.s();
        let sc = recomposed.s();
        'outer: for i in 0..2 * n {
            for j in 0..2 * n {
                if st.get(i, j) != sc.get(i, j) {
                    first_discrepancy =
                        Some(format!("symplectic entry ({i}, {j}) differs"));
                    break 'outer;
                }
            }
        }
    }
    let sign_match = symplectic_match && {
        let d = target.sign_difference(&recomposed);
        let mismatch = d.iter_ones().next();
        if let Some(a) = mismatch {
            if first_discrepancy.is_none() {
                let name = if a < n {
                    format!("X_{a}")
                } else {
                    format!("Z_{}", a - n)
                };
                first_discrepancy = Some(format!("sign bit of {name} differs"));
            }
        }
        mismatch.is_none()
    };

    let dense_match = if n <= DENSE_MAX_QUBITS {
        let u = dense_unitary_of_compiled(candidate)?;
        let ok = dense_matches_tableau(&u, target, 1e-9);
        if !ok && first_discrepancy.is_none() {
            first_discrepancy = Some("dense unitary disagrees with target tableau".into());
        }
        Some(ok)
    } else {
        None
    };

    Ok(VerifyReport {
        symplectic_match,
        sign_match,
        dense_match,
        first_discrepancy,
    })
}
