//! Tableau representation of Clifford operations.
//!
//! A Clifford is stored as the images of the 2n Pauli generators under
//! conjugation: row a holds the image of X_a (a < n) or Z_{a-n}, as a pair
//! of bit masks plus a sign. Pauli letters are encoded with (x, z) bits and
//! (1, 1) read as Y, so images of Hermitian generators stay Hermitian and
//! every sign is a plain +/-.
//!
//! The symplectic part `s` follows the column convention: the image vector
//! of generator a is column a of `s`, coordinates ordered X-block first.
//! In that convention the global entangling gates and the CNOT layer take
//! literal block shapes:
//!
//! ```text
//! s(MQZ(xi)) = [[I, 0], [xi, I]]
//! s(MQX(xi)) = [[I, xi], [0, I]]
//! s(CX(c))   = [[c^-T, 0], [0, c]]
//! ```
//!
//! Composition `compose(a, b)` applies `b` first, i.e. multiplies the
//! symplectic parts as `a.s * b.s`; circuits listed in time order fold
//! right to left.
//!
//! Gate semantics are frozen once here, for both the tableau and the dense
//! oracle: a Z-axis entangling gate expands into S on every qubit with a
//! set diagonal entry and CZ on every set off-diagonal pair; the X-axis
//! gate is the same object conjugated by Hadamard on all qubits. All
//! factors commute, so the expansion order is irrelevant.

use crate::error::{Error, Result};
use crate::gf2::{popcount_and, BitMatrix, BitVec};
use rand_core::{RngCore, SeedableRng};

/// Rotation axis of a global entangling gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Z,
}

impl Axis {
    pub fn flipped(self) -> Axis {
        match self {
            Axis::X => Axis::Z,
            Axis::Z => Axis::X,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::X => write!(f, "X"),
            Axis::Z => write!(f, "Z"),
        }
    }
}

/// One global multiqubit entangling gate: an axis and a symmetric binary
/// coupling matrix. Diagonal entries are single-qubit quarter-phase
/// rotations about the axis, off-diagonal entries correlated two-qubit
/// rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MqGate {
    axis: Axis,
    xi: BitMatrix,
}

impl MqGate {
    pub fn new(axis: Axis, xi: BitMatrix) -> Result<Self> {
        if !xi.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(MqGate { axis, xi })
    }

    pub fn n(&self) -> usize {
        self.xi.rows()
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn xi(&self) -> &BitMatrix {
        &self.xi
    }

    pub fn is_identity(&self) -> bool {
        self.xi.is_zero()
    }
}

/// A layer of Pauli gates X^eta Z^mu, tracked up to global phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliFrame {
    eta: BitVec,
    mu: BitVec,
}

impl PauliFrame {
    pub fn zero(n: usize) -> Self {
        PauliFrame {
            eta: BitVec::zeros(n),
            mu: BitVec::zeros(n),
        }
    }

    pub fn new(eta: BitVec, mu: BitVec) -> Result<Self> {
        if eta.len() != mu.len() {
            return Err(Error::DimensionMismatch(format!(
                "Pauli frame parts {} vs {}",
                eta.len(),
                mu.len()
            )));
        }
        Ok(PauliFrame { eta, mu })
    }

    pub fn n(&self) -> usize {
        self.eta.len()
    }

    pub fn eta(&self) -> &BitVec {
        &self.eta
    }

    pub fn mu(&self) -> &BitVec {
        &self.mu
    }

    pub fn is_identity(&self) -> bool {
        self.eta.is_zero() && self.mu.is_zero()
    }

    pub fn swapped(&self) -> PauliFrame {
        PauliFrame {
            eta: self.mu.clone(),
            mu: self.eta.clone(),
        }
    }
}

/// One layer of the compiled form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayerSpec {
    /// Pauli layer X^eta Z^mu.
    Pauli(PauliFrame),
    /// S gates on the marked qubits.
    SZ(BitVec),
    /// sqrt(X)-type gates on the marked qubits.
    SX(BitVec),
    /// Hadamard on every qubit.
    Hall,
    /// Hadamard on the marked qubits.
    H(BitVec),
    /// Correlated ZZ rotations; symmetric coupling with zero diagonal.
    RZZ(BitMatrix),
    /// Correlated XX rotations; symmetric coupling with zero diagonal.
    RXX(BitMatrix),
    /// CNOT layer with the invertible layer matrix of s = [[c^-T,0],[0,c]].
    CX(BitMatrix),
    /// Global entangling gate.
    Mq(MqGate),
}

impl LayerSpec {
    /// Layer with the roles of X and Z exchanged (Hadamard-on-all conjugate).
    pub fn axis_swapped(&self) -> Result<LayerSpec> {
        Ok(match self {
            LayerSpec::Pauli(f) => LayerSpec::Pauli(f.swapped()),
            LayerSpec::SZ(d) => LayerSpec::SX(d.clone()),
            LayerSpec::SX(d) => LayerSpec::SZ(d.clone()),
            LayerSpec::Hall => LayerSpec::Hall,
            LayerSpec::H(b) => LayerSpec::H(b.clone()),
            LayerSpec::RZZ(m) => LayerSpec::RXX(m.clone()),
            LayerSpec::RXX(m) => LayerSpec::RZZ(m.clone()),
            LayerSpec::CX(c) => LayerSpec::CX(c.inverse_transpose()?),
            LayerSpec::Mq(g) => LayerSpec::Mq(MqGate::new(g.axis.flipped(), g.xi.clone())?),
        })
    }

    pub fn is_mq(&self) -> bool {
        matches!(self, LayerSpec::Mq(_))
    }
}

/// Elementary gate of a circuit file, in time order. Variant names match
/// the file format's gate tags.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    /// CNOT with (control, target).
    CX(usize, usize),
    /// Correlated ZZ rotation on a qubit pair.
    RZZ(usize, usize),
    /// Correlated XX rotation on a qubit pair.
    RXX(usize, usize),
    MQZ(BitMatrix),
    MQX(BitMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PauliRow {
    x: BitVec,
    z: BitVec,
    neg: bool,
}

/// i-exponent (mod 4) picked up when multiplying sigma(a) * sigma(b)
/// relative to sigma(a xor b), in the Y-encoded convention.
fn mul_phase(ax: &BitVec, az: &BitVec, bx: &BitVec, bz: &BitVec) -> usize {
    let mut g = 0usize;
    let (aw_x, aw_z) = (ax.words(), az.words());
    let (bw_x, bw_z) = (bx.words(), bz.words());
    for i in 0..aw_x.len() {
        g += (aw_x[i] & aw_z[i]).count_ones() as usize;
        g += (bw_x[i] & bw_z[i]).count_ones() as usize;
        g += 2 * (aw_z[i] & bw_x[i]).count_ones() as usize;
        g += 3 * ((aw_x[i] ^ bw_x[i]) & (aw_z[i] ^ bw_z[i])).count_ones() as usize;
    }
    g % 4
}

/// A Clifford operation up to global phase: symplectic part plus tableau
/// sign bits, represented as the signed images of the 2n generators.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordOp {
    n: usize,
    rows: Vec<PauliRow>,
}

impl CliffordOp {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        let mut rows = Vec::with_capacity(2 * n);
        for a in 0..2 * n {
            let mut x = BitVec::zeros(n);
            let mut z = BitVec::zeros(n);
            if a < n {
                x.set(a, true);
            } else {
                z.set(a - n, true);
            }
            rows.push(PauliRow { x, z, neg: false });
        }
        CliffordOp { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Z-axis entangling gate: s = [[I, 0], [xi, I]], all signs positive.
    pub fn mqz_symplectic(xi: &BitMatrix) -> Result<Self> {
        if !xi.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = xi.rows();
        let mut op = CliffordOp::identity(n);
        for k in 0..n {
            op.rows[k].z = xi.row_vec(k);
        }
        Ok(op)
    }

    /// X-axis entangling gate: s = [[I, xi], [0, I]]; the Hadamard-on-all
    /// conjugate of the Z-axis gate, signs included.
    pub fn mqx_symplectic(xi: &BitMatrix) -> Result<Self> {
        if !xi.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = xi.rows();
        let mut op = CliffordOp::identity(n);
        for k in 0..n {
            op.rows[n + k].x = xi.row_vec(k);
            op.rows[n + k].neg = xi.get(k, k);
        }
        Ok(op)
    }

    /// CNOT layer: s = [[c^-T, 0], [0, c]], all signs positive.
    pub fn cx_layer_symplectic(c: &BitMatrix) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "CX layer matrix {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        let n = c.rows();
        let c_inv = c.inverse()?;
        let ct = c.transpose();
        let mut op = CliffordOp::identity(n);
        for k in 0..n {
            op.rows[k].x = c_inv.row_vec(k);
            op.rows[n + k].z = ct.row_vec(k);
        }
        Ok(op)
    }

    /// Tableau of a single layer; `n` fixes the register size.
    pub fn layer_symplectic(n: usize, layer: &LayerSpec) -> Result<Self> {
        let check_vec = |v: &BitVec, what: &str| -> Result<()> {
            if v.len() != n {
                return Err(Error::MalformedLayer(format!(
                    "{what} has length {} on {n} qubits",
                    v.len()
                )));
            }
            Ok(())
        };
        let check_coupling = |m: &BitMatrix, what: &str| -> Result<()> {
            if m.rows() != n || m.cols() != n {
                return Err(Error::MalformedLayer(format!(
                    "{what} is {}x{} on {n} qubits",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_symmetric() {
                return Err(Error::MalformedLayer(format!("{what} is not symmetric")));
            }
            if !m.diag().is_zero() {
                return Err(Error::MalformedLayer(format!(
                    "{what} must have zero diagonal"
                )));
            }
            Ok(())
        };
        match layer {
            LayerSpec::Pauli(frame) => {
                check_vec(frame.eta(), "Pauli frame")?;
                let mut op = CliffordOp::identity(n);
                for k in 0..n {
                    op.rows[k].neg = frame.mu.get(k);
                    op.rows[n + k].neg = frame.eta.get(k);
                }
                Ok(op)
            }
            LayerSpec::SZ(d) => {
                check_vec(d, "SZ subset")?;
                CliffordOp::mqz_symplectic(&BitMatrix::from_diag(d))
            }
            LayerSpec::SX(d) => {
                check_vec(d, "SX subset")?;
                CliffordOp::mqx_symplectic(&BitMatrix::from_diag(d))
            }
            LayerSpec::Hall => {
                let mut op = CliffordOp::identity(n);
                for k in 0..n {
                    op.rows.swap(k, n + k);
                }
                Ok(op)
            }
            LayerSpec::H(b) => {
                check_vec(b, "H subset")?;
                let mut op = CliffordOp::identity(n);
                for k in b.iter_ones() {
                    op.rows.swap(k, n + k);
                }
                Ok(op)
            }
            LayerSpec::RZZ(m) => {
                check_coupling(m, "RZZ coupling")?;
                CliffordOp::mqz_symplectic(m)
            }
            LayerSpec::RXX(m) => {
                check_coupling(m, "RXX coupling")?;
                CliffordOp::mqx_symplectic(m)
            }
            LayerSpec::CX(c) => {
                if c.rows() != n || c.cols() != n {
                    return Err(Error::MalformedLayer(format!(
                        "CX matrix is {}x{} on {n} qubits",
                        c.rows(),
                        c.cols()
                    )));
                }
                CliffordOp::cx_layer_symplectic(c)
                    .map_err(|_| Error::MalformedLayer("CX matrix is singular".into()))
            }
            LayerSpec::Mq(g) => {
                if g.n() != n {
                    return Err(Error::MalformedLayer(format!(
                        "MQ gate on {} qubits in an {n}-qubit layer",
                        g.n()
                    )));
                }
                match g.axis {
                    Axis::Z => CliffordOp::mqz_symplectic(&g.xi),
                    Axis::X => CliffordOp::mqx_symplectic(&g.xi),
                }
            }
        }
    }

    /// Image of a signed Pauli under conjugation by self.
    fn conj_row(&self, p: &PauliRow) -> PauliRow {
        let mut t = popcount_and(&p.x, &p.z); // i-exponent of sigma vs X^x Z^z
        let mut acc_x = BitVec::zeros(self.n);
        let mut acc_z = BitVec::zeros(self.n);
        let fold = |row: &PauliRow, t: &mut usize, acc_x: &mut BitVec, acc_z: &mut BitVec| {
            *t += 2 * usize::from(row.neg) + mul_phase(acc_x, acc_z, &row.x, &row.z);
            acc_x.xor_assign(&row.x);
            acc_z.xor_assign(&row.z);
        };
        for k in p.x.iter_ones() {
            fold(&self.rows[k], &mut t, &mut acc_x, &mut acc_z);
        }
        for k in p.z.iter_ones() {
            fold(&self.rows[self.n + k], &mut t, &mut acc_x, &mut acc_z);
        }
        debug_assert!(t.is_multiple_of(2), "conjugation produced a non-Hermitian phase");
        PauliRow {
            x: acc_x,
            z: acc_z,
            neg: p.neg ^ (t % 4 == 2),
        }
    }

    /// Composition: apply `b` first, then `a` (symplectic parts multiply as
    /// a.s * b.s); signs propagate exactly.
    pub fn compose(a: &CliffordOp, b: &CliffordOp) -> Result<CliffordOp> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch(format!(
                "compose {} vs {} qubits",
                a.n, b.n
            )));
        }
        let rows = b.rows.iter().map(|p| a.conj_row(p)).collect();
        Ok(CliffordOp { n: a.n, rows })
    }

    /// Symplectic part in the column convention (2n x 2n).
    pub fn s(&self) -> BitMatrix {
        let n = self.n;
        let mut s = BitMatrix::zeros(2 * n, 2 * n);
        for (a, row) in self.rows.iter().enumerate() {
            for i in row.x.iter_ones() {
                s.set(i, a, true);
            }
            for i in row.z.iter_ones() {
                s.set(n + i, a, true);
            }
        }
        s
    }

    /// Tableau sign bits, X-generator rows first.
    pub fn r(&self) -> BitVec {
        let mut r = BitVec::zeros(2 * self.n);
        for (a, row) in self.rows.iter().enumerate() {
            if row.neg {
                r.set(a, true);
            }
        }
        r
    }

    /// The symplectic form Lambda = [[0, I], [I, 0]].
    pub fn lambda(n: usize) -> BitMatrix {
        let zero = BitMatrix::zeros(n, n);
        let id = BitMatrix::identity(n);
        BitMatrix::from_blocks(&zero, &id, &id, &zero)
    }

    /// True iff s Lambda s^T = Lambda.
    pub fn is_symplectic(&self) -> bool {
        let s = self.s();
        let lambda = CliffordOp::lambda(self.n);
        match s.mul(&lambda).and_then(|m| m.mul(&s.transpose())) {
            Ok(m) => m == lambda,
            Err(_) => false,
        }
    }

    pub fn same_symplectic_part(&self, other: &CliffordOp) -> bool {
        self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.x == b.x && a.z == b.z)
    }

    /// Sign vector difference against another operator with the same
    /// symplectic part.
    pub fn sign_difference(&self, other: &CliffordOp) -> BitVec {
        let mut d = BitVec::zeros(2 * self.n);
        for (a, (ra, rb)) in self.rows.iter().zip(&other.rows).enumerate() {
            if ra.neg != rb.neg {
                d.set(a, true);
            }
        }
        d
    }

    // -- in-place elementary gates (applied after the current operator) --

    pub fn apply_h(&mut self, k: usize) {
        for row in &mut self.rows {
            let xv = row.x.get(k);
            let zv = row.z.get(k);
            row.neg ^= xv && zv;
            row.x.set(k, zv);
            row.z.set(k, xv);
        }
    }

    pub fn apply_s(&mut self, k: usize) {
        for row in &mut self.rows {
            let xv = row.x.get(k);
            let zv = row.z.get(k);
            row.neg ^= xv && zv;
            row.z.set(k, zv ^ xv);
        }
    }

    pub fn apply_x(&mut self, k: usize) {
        for row in &mut self.rows {
            row.neg ^= row.z.get(k);
        }
    }

    pub fn apply_y(&mut self, k: usize) {
        for row in &mut self.rows {
            row.neg ^= row.x.get(k) ^ row.z.get(k);
        }
    }

    pub fn apply_z(&mut self, k: usize) {
        for row in &mut self.rows {
            row.neg ^= row.x.get(k);
        }
    }

    pub fn apply_cnot(&mut self, c: usize, t: usize) {
        assert_ne!(c, t);
        for row in &mut self.rows {
            let xc = row.x.get(c);
            let zt = row.z.get(t);
            let xt = row.x.get(t);
            let zc = row.z.get(c);
            row.neg ^= xc && zt && !(xt ^ zc);
            row.x.set(t, xt ^ xc);
            row.z.set(c, zc ^ zt);
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        assert_ne!(a, b);
        for row in &mut self.rows {
            let xa = row.x.get(a);
            let xb = row.x.get(b);
            let za = row.z.get(a);
            let zb = row.z.get(b);
            row.neg ^= xa && xb && (za ^ zb);
            row.z.set(a, za ^ xb);
            row.z.set(b, zb ^ xa);
        }
    }

    /// Append one elementary gate in time order.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let n = self.n;
        let check = |q: usize| -> Result<()> {
            if q >= n {
                Err(Error::MalformedLayer(format!("qubit {q} out of range ({n} qubits)")))
            } else {
                Ok(())
            }
        };
        match gate {
            Gate::H(k) => {
                check(*k)?;
                self.apply_h(*k);
            }
            Gate::S(k) => {
                check(*k)?;
                self.apply_s(*k);
            }
            Gate::X(k) => {
                check(*k)?;
                self.apply_x(*k);
            }
            Gate::Y(k) => {
                check(*k)?;
                self.apply_y(*k);
            }
            Gate::Z(k) => {
                check(*k)?;
                self.apply_z(*k);
            }
            Gate::CX(c, t) => {
                check(*c)?;
                check(*t)?;
                if c == t {
                    return Err(Error::MalformedLayer("CX with equal qubits".into()));
                }
                self.apply_cnot(*c, *t);
            }
            Gate::RZZ(a, b) => {
                check(*a)?;
                check(*b)?;
                if a == b {
                    return Err(Error::MalformedLayer("RZZ with equal qubits".into()));
                }
                self.apply_cz(*a, *b);
            }
            Gate::RXX(a, b) => {
                check(*a)?;
                check(*b)?;
                if a == b {
                    return Err(Error::MalformedLayer("RXX with equal qubits".into()));
                }
                self.apply_h(*a);
                self.apply_h(*b);
                self.apply_cz(*a, *b);
                self.apply_h(*a);
                self.apply_h(*b);
            }
            Gate::MQZ(xi) => {
                let op = CliffordOp::layer_symplectic(
                    n,
                    &LayerSpec::Mq(
                        MqGate::new(Axis::Z, xi.clone())
                            .map_err(|_| Error::MalformedLayer("MQZ coupling not symmetric".into()))?,
                    ),
                )?;
                *self = CliffordOp::compose(&op, self)?;
            }
            Gate::MQX(xi) => {
                let op = CliffordOp::layer_symplectic(
                    n,
                    &LayerSpec::Mq(
                        MqGate::new(Axis::X, xi.clone())
                            .map_err(|_| Error::MalformedLayer("MQX coupling not symmetric".into()))?,
                    ),
                )?;
                *self = CliffordOp::compose(&op, self)?;
            }
        }
        Ok(())
    }

    /// Fold a gate list (time order) into a tableau.
    pub fn from_gates(n: usize, gates: &[Gate]) -> Result<CliffordOp> {
        let mut op = CliffordOp::identity(n);
        for g in gates {
            op.apply_gate(g)?;
        }
        Ok(op)
    }

    /// Random Clifford from a long random H/S/CNOT circuit, deterministic
    /// per seed. Circuit length 2n^2 gives ample mixing for test inputs.
    pub fn random(n: usize, seed: u64) -> CliffordOp {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut op = CliffordOp::identity(n);
        let len = (2 * n * n).max(16);
        for _ in 0..len {
            match rng.next_u64() % 3 {
                0 => op.apply_h((rng.next_u64() % n as u64) as usize),
                1 => op.apply_s((rng.next_u64() % n as u64) as usize),
                _ => {
                    if n >= 2 {
                        let c = (rng.next_u64() % n as u64) as usize;
                        let mut t = (rng.next_u64() % (n as u64 - 1)) as usize;
                        if t >= c {
                            t += 1;
                        }
                        op.apply_cnot(c, t);
                    } else {
                        op.apply_s(0);
                    }
                }
            }
        }
        op
    }
}

impl std::fmt::Debug for CliffordOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CliffordOp n={}", self.n)?;
        for (a, row) in self.rows.iter().enumerate() {
            let name = if a < self.n {
                format!("X{a}")
            } else {
                format!("Z{}", a - self.n)
            };
            writeln!(
                f,
                "  {name} -> {}x:{:?} z:{:?}",
                if row.neg { "-" } else { "+" },
                row.x,
                row.z
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mqz_zero_is_identity() {
        let xi = BitMatrix::zeros(3, 3);
        let op = CliffordOp::mqz_symplectic(&xi).unwrap();
        assert_eq!(op, CliffordOp::identity(3));
        assert!(op.r().is_zero());
    }

    #[test]
    fn mqz_pinned_block_form() {
        let xi = BitMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let op = CliffordOp::mqz_symplectic(&xi).unwrap();
        let expect = BitMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 1],
        ]);
        assert_eq!(op.s(), expect);
        assert!(op.r().is_zero());
    }

    #[test]
    fn mqz_rejects_asymmetric() {
        let xi = BitMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(
            CliffordOp::mqz_symplectic(&xi).unwrap_err(),
            Error::NotSymmetric
        );
    }

    #[test]
    fn mqx_is_hadamard_conjugate_of_mqz() {
        for seed in 0..12u64 {
            let n = 1 + (seed as usize % 4);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let xi = BitMatrix::random_symmetric(n, &mut rng);
            let mqx = CliffordOp::mqx_symplectic(&xi).unwrap();
            let mqz = CliffordOp::mqz_symplectic(&xi).unwrap();
            let hall = CliffordOp::layer_symplectic(n, &LayerSpec::Hall).unwrap();
            let conj =
                CliffordOp::compose(&hall, &CliffordOp::compose(&mqz, &hall).unwrap()).unwrap();
            assert_eq!(mqx, conj);
            // upper-right block literal
            let s = mqx.s();
            assert_eq!(s.submatrix(0, n, n, n), xi);
            assert_eq!(s.submatrix(n, 0, n, n), BitMatrix::zeros(n, n));
        }
    }

    #[test]
    fn cx_layer_examples() {
        assert_eq!(
            CliffordOp::cx_layer_symplectic(&BitMatrix::identity(4)).unwrap(),
            CliffordOp::identity(4)
        );
        let c = BitMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let op = CliffordOp::cx_layer_symplectic(&c).unwrap();
        let s = op.s();
        let c_inv_t = BitMatrix::from_rows(&[vec![1, 0], vec![1, 1]]);
        assert_eq!(s.submatrix(0, 0, 2, 2), c_inv_t);
        assert_eq!(s.submatrix(2, 2, 2, 2), c);
        assert!(s.submatrix(0, 2, 2, 2).is_zero());
        assert!(s.submatrix(2, 0, 2, 2).is_zero());
        assert_eq!(
            CliffordOp::cx_layer_symplectic(&BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]]))
                .unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn cx_layer_composition_law() {
        for seed in 0..10u64 {
            let c1 = BitMatrix::random_invertible(3, seed);
            let c2 = BitMatrix::random_invertible(3, seed + 50);
            let composed = CliffordOp::compose(
                &CliffordOp::cx_layer_symplectic(&c1).unwrap(),
                &CliffordOp::cx_layer_symplectic(&c2).unwrap(),
            )
            .unwrap();
            let direct = CliffordOp::cx_layer_symplectic(&c1.mul(&c2).unwrap()).unwrap();
            assert_eq!(composed, direct);
            // time-order fold of [CX(c1), CX(c2)] gives the c2*c1 layer
            let folded = CliffordOp::compose(
                &CliffordOp::cx_layer_symplectic(&c2).unwrap(),
                &CliffordOp::cx_layer_symplectic(&c1).unwrap(),
            )
            .unwrap();
            assert_eq!(
                folded,
                CliffordOp::cx_layer_symplectic(&c2.mul(&c1).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn hall_single_qubit() {
        let op = CliffordOp::layer_symplectic(1, &LayerSpec::Hall).unwrap();
        assert_eq!(op.s(), BitMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn sz_all_matches_mqz_identity_coupling() {
        let n = 4;
        let sz = CliffordOp::layer_symplectic(n, &LayerSpec::SZ(BitVec::ones(n))).unwrap();
        let mqz = CliffordOp::mqz_symplectic(&BitMatrix::identity(n)).unwrap();
        assert_eq!(sz, mqz);
    }

    #[test]
    fn compose_laws() {
        let n = 3;
        let u = CliffordOp::random(n, 7);
        let id = CliffordOp::identity(n);
        assert_eq!(CliffordOp::compose(&u, &id).unwrap(), u);
        assert_eq!(CliffordOp::compose(&id, &u).unwrap(), u);
        let hall = CliffordOp::layer_symplectic(n, &LayerSpec::Hall).unwrap();
        assert_eq!(CliffordOp::compose(&hall, &hall).unwrap(), id);
    }

    #[test]
    fn constructors_are_symplectic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5usize {
            let xi = BitMatrix::random_symmetric(n, &mut rng);
            let layers = vec![
                LayerSpec::Hall,
                LayerSpec::SZ(BitVec::ones(n)),
                LayerSpec::SX(BitVec::from_bits(&vec![1; n])),
                LayerSpec::RZZ(xi.off_diagonal()),
                LayerSpec::RXX(xi.off_diagonal()),
                LayerSpec::CX(BitMatrix::random_invertible(n, n as u64)),
                LayerSpec::Mq(MqGate::new(Axis::Z, xi.clone()).unwrap()),
                LayerSpec::Mq(MqGate::new(Axis::X, xi.clone()).unwrap()),
            ];
            for layer in layers {
                let op = CliffordOp::layer_symplectic(n, &layer).unwrap();
                assert!(op.is_symplectic(), "layer {layer:?} not symplectic");
            }
            assert!(CliffordOp::random(n, 11).is_symplectic());
        }
    }

    #[test]
    fn not_symplectic_with_zeroed_row() {
        let mut op = CliffordOp::identity(2);
        op.rows[1].x = BitVec::zeros(2);
        assert!(!op.is_symplectic());
    }

    #[test]
    fn mqz_coupling_is_additive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for n in 1..=5usize {
            let a = BitMatrix::random_symmetric(n, &mut rng);
            let b = BitMatrix::random_symmetric(n, &mut rng);
            let prod = CliffordOp::compose(
                &CliffordOp::mqz_symplectic(&a).unwrap(),
                &CliffordOp::mqz_symplectic(&b).unwrap(),
            )
            .unwrap();
            let sum = CliffordOp::mqz_symplectic(&a.add(&b).unwrap()).unwrap();
            assert_eq!(prod.s(), sum.s());
        }
    }

    #[test]
    fn fast_appliers_match_layer_compose() {
        let n = 4;
        // H
        for k in 0..n {
            let mut fast = CliffordOp::random(n, k as u64);
            let mut subset = BitVec::zeros(n);
            subset.set(k, true);
            let layer = CliffordOp::layer_symplectic(n, &LayerSpec::H(subset)).unwrap();
            let slow = CliffordOp::compose(&layer, &fast).unwrap();
            fast.apply_h(k);
            assert_eq!(fast, slow);
        }
        // S
        for k in 0..n {
            let mut fast = CliffordOp::random(n, 10 + k as u64);
            let mut subset = BitVec::zeros(n);
            subset.set(k, true);
            let layer = CliffordOp::layer_symplectic(n, &LayerSpec::SZ(subset)).unwrap();
            let slow = CliffordOp::compose(&layer, &fast).unwrap();
            fast.apply_s(k);
            assert_eq!(fast, slow);
        }
        // CZ via the single-pair Z coupling
        for (a, b) in [(0usize, 1usize), (2, 3), (1, 3)] {
            let mut fast = CliffordOp::random(n, 20 + a as u64 + b as u64);
            let mut xi = BitMatrix::zeros(n, n);
            xi.set(a, b, true);
            xi.set(b, a, true);
            let layer = CliffordOp::mqz_symplectic(&xi).unwrap();
            let slow = CliffordOp::compose(&layer, &fast).unwrap();
            fast.apply_cz(a, b);
            assert_eq!(fast, slow);
        }
        // Paulis
        let mut fast = CliffordOp::random(n, 33);
        let mut eta = BitVec::zeros(n);
        eta.set(1, true);
        let frame = PauliFrame::new(eta, BitVec::zeros(n)).unwrap();
        let layer = CliffordOp::layer_symplectic(n, &LayerSpec::Pauli(frame)).unwrap();
        let slow = CliffordOp::compose(&layer, &fast).unwrap();
        fast.apply_x(1);
        assert_eq!(fast, slow);
    }

    #[test]
    fn cnot_applier_matches_cx_layer() {
        let n = 3;
        for (c, t) in [(0usize, 1usize), (1, 0), (1, 2), (2, 0)] {
            let mut fast = CliffordOp::random(n, (c * 3 + t) as u64);
            let mut mat = BitMatrix::identity(n);
            mat.set(c, t, true);
            let layer = CliffordOp::cx_layer_symplectic(&mat).unwrap();
            let slow = CliffordOp::compose(&layer, &fast).unwrap();
            fast.apply_cnot(c, t);
            assert_eq!(fast, slow, "cnot {c}->{t}");
        }
    }

    #[test]
    fn random_clifford_deterministic() {
        let a = CliffordOp::random(5, 77);
        let b = CliffordOp::random(5, 77);
        assert_eq!(a, b);
        assert_ne!(a, CliffordOp::random(5, 78));
    }
}
