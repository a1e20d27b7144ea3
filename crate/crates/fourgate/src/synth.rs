//! The compilation pipeline: canonical layer form, Hadamard commutation,
//! the four-gate decomposition of a CNOT layer, edge-gate merging, and a
//! Gaussian-elimination baseline for cost comparisons.
//!
//! The centerpiece rewrites the CNOT-layer symplectic [[c^-T, 0], [0, c]]
//! as an alternating product of four entangling-gate blocks
//!
//! ```text
//! [[I,0],[G,I]] [[I,E1],[0,I]] [[I,0],[F,I]] [[I,E2],[0,I]]
//! ```
//!
//! built from a symmetric factorization c = S1 S2 (E1 = S1^-1, E2 = S2,
//! F = E1^-1 + E2^-1, G = F c^T), with a Pauli frame absorbing the sign
//! residue. Leading and trailing blocks merge into the adjacent correlated
//! rotation layers of the canonical form, so a full Clifford never needs
//! more than four entangling gates.

use crate::clifford::{Axis, CliffordOp, LayerSpec, MqGate, PauliFrame};
use crate::error::{Error, Result};
use crate::gf2::{symmetric_pair_factor, BitMatrix, BitVec};
use crate::parallel::map_ordered;

/// Axis ordering of the entangling block: `Xz` leads with an X-axis gate
/// and ends Z-axis; `Zx` is the Hadamard-mirrored construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Xz,
    Zx,
}

/// Compiled circuit: a leading Pauli frame plus layers in time order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledCircuit {
    n: usize,
    pauli: PauliFrame,
    layers: Vec<LayerSpec>,
}

impl CompiledCircuit {
    /// Validates every layer against the register size.
    pub fn from_parts(n: usize, pauli: PauliFrame, layers: Vec<LayerSpec>) -> Result<Self> {
        if pauli.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "Pauli frame on {} qubits in an {n}-qubit circuit",
                pauli.n()
            )));
        }
        for layer in &layers {
            CliffordOp::layer_symplectic(n, layer)?;
        }
        Ok(CompiledCircuit { n, pauli, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The leading Pauli layer (applied first).
    pub fn pauli(&self) -> &PauliFrame {
        &self.pauli
    }

    /// Layers after the Pauli frame, in time order.
    pub fn layers(&self) -> &[LayerSpec] {
        &self.layers
    }

    pub fn mq_count(&self) -> usize {
        self.layers.iter().filter(|l| l.is_mq()).count()
    }

    pub fn mq_gates(&self) -> impl Iterator<Item = &MqGate> {
        self.layers.iter().filter_map(|l| match l {
            LayerSpec::Mq(g) => Some(g),
            _ => None,
        })
    }
}

/// The four-block decomposition of a CNOT layer, plus its Pauli correction.
/// In time order the realization reads: frame, MQX(e2), MQZ(f), MQX(e1),
/// MQZ(g).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourGateDecomp {
    pub g: BitMatrix,
    pub e1: BitMatrix,
    pub f: BitMatrix,
    pub e2: BitMatrix,
    pub frame: PauliFrame,
}

/// Internal slot view of the canonical form.
struct CanonicalParts {
    /// CNOT-layer matrix.
    c: BitMatrix,
    /// Coupling of the first diagonal block (full symmetric), between the
    /// CNOT layer and the all-Hadamard layer. Unused in the short form.
    m1: BitMatrix,
    /// Coupling of the trailing diagonal block (full symmetric).
    m2: BitMatrix,
    /// Hadamard subset of the trailing layer; `None` selects the
    /// Hadamard-free short form (no all-Hadamard layer at all).
    hadamard: Option<BitVec>,
}

fn complement_mask(n: usize, kept: &[usize]) -> BitVec {
    let mut b = BitVec::ones(n);
    for &k in kept {
        b.set(k, false);
    }
    b
}

/// Slot decomposition behind `canonical_form`; total on valid Cliffords.
fn canonical_parts(u: &CliffordOp) -> CanonicalParts {
    let n = u.n();
    let s = u.s();
    let beta = s.submatrix(0, n, n, n);
    let delta = s.submatrix(n, n, n, n);

    if beta.is_zero() {
        // Hadamard-free: s = [[c^-T, 0], [m c^-T, c]]
        let gamma = s.submatrix(n, 0, n, n);
        let m2 = gamma
            .mul(&delta.transpose())
            .expect("dimensions agree by construction");
        debug_assert!(m2.is_symmetric());
        return CanonicalParts {
            c: delta,
            m1: BitMatrix::zeros(n, n),
            m2,
            hadamard: None,
        };
    }

    // Choose the Hadamard subset as the complement of a maximal independent
    // row set of the upper-right block; swapping in the matching rows of the
    // lower-right block always yields an invertible mixed matrix.
    let kept = beta.independent_rows();
    let b = complement_mask(n, &kept);

    let alpha = s.submatrix(0, 0, n, n);
    let gamma = s.submatrix(n, 0, n, n);
    let mut alpha_p = alpha;
    let mut beta_p = beta;
    for k in b.iter_ones() {
        alpha_p.set_row(k, &gamma.row_vec(k));
        beta_p.set_row(k, &delta.row_vec(k));
    }
    let mut delta_p = delta;
    let beta_orig = s.submatrix(0, n, n, n);
    for k in b.iter_ones() {
        delta_p.set_row(k, &beta_orig.row_vec(k));
    }

    let c = beta_p;
    debug_assert_eq!(c.rank(), n, "mixed row selection must be invertible");
    let m1 = alpha_p.mul(&c.transpose()).expect("dims");
    let m2 = delta_p
        .mul(&c.inverse().expect("invertible by selection"))
        .expect("dims");
    debug_assert!(m1.is_symmetric());
    debug_assert!(m2.is_symmetric());

    CanonicalParts {
        c,
        m1,
        m2,
        hadamard: Some(b),
    }
}

fn push_diag_block(layers: &mut Vec<LayerSpec>, m: &BitMatrix, axis: Axis) {
    let off = m.off_diagonal();
    if !off.is_zero() {
        layers.push(match axis {
            Axis::Z => LayerSpec::RZZ(off),
            Axis::X => LayerSpec::RXX(off),
        });
    }
    let d = m.diag();
    if !d.is_zero() {
        layers.push(match axis {
            Axis::Z => LayerSpec::SZ(d),
            Axis::X => LayerSpec::SX(d),
        });
    }
}

fn layers_to_ops(n: usize, layers: &[LayerSpec]) -> Vec<CliffordOp> {
    layers
        .iter()
        .map(|l| CliffordOp::layer_symplectic(n, l).expect("layers built valid"))
        .collect()
}

/// Canonical layer form of a Clifford, in time order:
/// Pauli, CX, RZZ, SZ, Hall, RZZ, SZ, H(subset), with trivial layers
/// omitted. Hadamard-free inputs come out without the all-Hadamard block.
/// The composition of the returned layers equals `u` exactly, signs
/// included.
pub fn canonical_form(u: &CliffordOp) -> Vec<LayerSpec> {
    let n = u.n();
    let parts = canonical_parts(u);

    let mut layers: Vec<LayerSpec> = Vec::new();
    if parts.c != BitMatrix::identity(n) {
        layers.push(LayerSpec::CX(parts.c.clone()));
    }
    match parts.hadamard {
        None => {
            push_diag_block(&mut layers, &parts.m2, Axis::Z);
        }
        Some(b) => {
            push_diag_block(&mut layers, &parts.m1, Axis::Z);
            layers.push(LayerSpec::Hall);
            push_diag_block(&mut layers, &parts.m2, Axis::Z);
            if !b.is_zero() {
                layers.push(LayerSpec::H(b));
            }
        }
    }

    let frame = pauli_correction(u, &layers_to_ops(n, &layers))
        .expect("canonical layers share the target symplectic part");
    if !frame.is_identity() {
        layers.insert(0, LayerSpec::Pauli(frame));
    }
    layers
}

/// Slot view used by the Hadamard-commutation rewrite.
#[derive(Default)]
struct CanonicalSlots {
    pauli: Option<PauliFrame>,
    cx: Option<BitMatrix>,
    rzz1: Option<BitMatrix>,
    sz1: Option<BitVec>,
    hall: bool,
    rzz2: Option<BitMatrix>,
    sz2: Option<BitVec>,
    h: Option<BitVec>,
}

fn parse_canonical(layers: &[LayerSpec]) -> Result<CanonicalSlots> {
    let mut slots = CanonicalSlots::default();
    // slot indices in expected time order
    let mut at = 0usize;
    for layer in layers {
        let slot = match layer {
            LayerSpec::Pauli(_) => 0,
            LayerSpec::CX(_) => 1,
            LayerSpec::RZZ(_) => {
                if at <= 2 && !slots.hall {
                    2
                } else {
                    5
                }
            }
            LayerSpec::SZ(_) => {
                if at <= 3 && !slots.hall {
                    3
                } else {
                    6
                }
            }
            LayerSpec::Hall => 4,
            LayerSpec::H(_) => 7,
            other => {
                return Err(Error::MalformedLayer(format!(
                    "layer {other:?} does not fit the canonical form"
                )))
            }
        };
        if slot < at {
            return Err(Error::MalformedLayer(
                "layers out of canonical order".into(),
            ));
        }
        at = slot + 1;
        match (slot, layer) {
            (0, LayerSpec::Pauli(f)) => slots.pauli = Some(f.clone()),
            (1, LayerSpec::CX(c)) => slots.cx = Some(c.clone()),
            (2, LayerSpec::RZZ(m)) => slots.rzz1 = Some(m.clone()),
            (3, LayerSpec::SZ(d)) => slots.sz1 = Some(d.clone()),
            (4, LayerSpec::Hall) => slots.hall = true,
            (5, LayerSpec::RZZ(m)) => slots.rzz2 = Some(m.clone()),
            (6, LayerSpec::SZ(d)) => slots.sz2 = Some(d.clone()),
            (7, LayerSpec::H(b)) => slots.h = Some(b.clone()),
            _ => unreachable!(),
        }
    }
    Ok(slots)
}

/// Commute the all-Hadamard layer toward the front of a canonical-form
/// list: Z-type layers between it and the leading Pauli become X-type, and
/// the CNOT-layer matrix is replaced by its inverse transpose. Composition
/// is unchanged, signs included. Lists without an all-Hadamard layer pass
/// through untouched.
pub fn commute_hall_left(layers: &[LayerSpec]) -> Result<Vec<LayerSpec>> {
    let slots = parse_canonical(layers)?;
    if !slots.hall {
        return Ok(layers.to_vec());
    }
    let mut out = Vec::new();
    if let Some(f) = slots.pauli {
        out.push(LayerSpec::Pauli(f));
    }
    out.push(LayerSpec::Hall);
    if let Some(c) = slots.cx {
        out.push(LayerSpec::CX(c.inverse_transpose()?));
    }
    if let Some(m) = slots.rzz1 {
        out.push(LayerSpec::RXX(m));
    }
    if let Some(d) = slots.sz1 {
        out.push(LayerSpec::SX(d));
    }
    if let Some(m) = slots.rzz2 {
        out.push(LayerSpec::RZZ(m));
    }
    if let Some(d) = slots.sz2 {
        out.push(LayerSpec::SZ(d));
    }
    if let Some(b) = slots.h {
        out.push(LayerSpec::H(b));
    }
    Ok(out)
}

/// Coupling-matrix rewrite that moves an X-type correlated layer to the
/// other side of a CNOT layer: m -> c^T m c.
pub fn conjugate_mqx_through_cx(m: &BitMatrix, c: &BitMatrix) -> Result<BitMatrix> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if c.rank() != c.rows().min(c.cols()) || !c.is_square() {
        return Err(Error::Singular);
    }
    let out = c.transpose().mul(m)?.mul(c)?;
    debug_assert!(out.is_symmetric());
    Ok(out)
}

/// Pauli frame (eta, mu) such that prepending the layer X^eta Z^mu to the
/// composition of `gates` (given in time order) reproduces `target`'s sign
/// vector. Errors if the symplectic parts differ.
pub fn pauli_correction(target: &CliffordOp, gates: &[CliffordOp]) -> Result<PauliFrame> {
    let n = target.n();
    let mut acc = CliffordOp::identity(n);
    for gate in gates {
        acc = CliffordOp::compose(gate, &acc)?;
    }
    if !acc.same_symplectic_part(target) {
        return Err(Error::SymplecticMismatch(
            "gate composition does not realize the target symplectic part".into(),
        ));
    }
    let d = target.sign_difference(&acc);
    let mut eta = BitVec::zeros(n);
    let mut mu = BitVec::zeros(n);
    for k in 0..n {
        if d.get(k) {
            mu.set(k, true);
        }
        if d.get(n + k) {
            eta.set(k, true);
        }
    }
    PauliFrame::new(eta, mu)
}

/// Merge two same-axis entangling gates into one with coupling a.xi + b.xi;
/// the returned frame, applied before the merged gate, makes the pair equal
/// the product a then b in operator order (b first in time) up to global
/// phase.
pub fn merge_mq(a: &MqGate, b: &MqGate) -> Result<(MqGate, PauliFrame)> {
    if a.axis() != b.axis() {
        return Err(Error::AxisMismatch);
    }
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "merging gates on {} and {} qubits",
            a.n(),
            b.n()
        )));
    }
    let n = a.n();
    let merged = MqGate::new(a.axis(), a.xi().add(b.xi())?)?;
    let a_op = CliffordOp::layer_symplectic(n, &LayerSpec::Mq(a.clone()))?;
    let b_op = CliffordOp::layer_symplectic(n, &LayerSpec::Mq(b.clone()))?;
    let merged_op = CliffordOp::layer_symplectic(n, &LayerSpec::Mq(merged.clone()))?;
    let product = CliffordOp::compose(&a_op, &b_op)?;
    let frame = pauli_correction(&product, std::slice::from_ref(&merged_op))?;
    Ok((merged, frame))
}

/// Four-gate decomposition of the CNOT layer of `c`: blocks satisfying
///
/// [[I,0],[g,I]] [[I,e1],[0,I]] [[I,0],[f,I]] [[I,e2],[0,I]] = [[c^-T,0],[0,c]]
///
/// exactly over F2, with the Pauli frame fixing the tableau signs.
pub fn cx_four_gate(c: &BitMatrix) -> Result<FourGateDecomp> {
    let pair = symmetric_pair_factor(c)?;
    let e1 = pair.s1.inverse().expect("factor is invertible");
    let e2 = pair.s2;
    let f = pair.s1.add(&e2.inverse().expect("factor is invertible"))?;
    let g = f.mul(&c.transpose())?;
    debug_assert!(f.is_symmetric());
    debug_assert!(g.is_symmetric());

    let target = CliffordOp::cx_layer_symplectic(c)?;
    let gates = [
        CliffordOp::mqx_symplectic(&e2)?,
        CliffordOp::mqz_symplectic(&f)?,
        CliffordOp::mqx_symplectic(&e1)?,
        CliffordOp::mqz_symplectic(&g)?,
    ];
    let frame = pauli_correction(&target, &gates)?;
    Ok(FourGateDecomp { g, e1, f, e2, frame })
}

fn push_mq(layers: &mut Vec<LayerSpec>, axis: Axis, xi: BitMatrix) {
    if !xi.is_zero() {
        layers.push(LayerSpec::Mq(
            MqGate::new(axis, xi).expect("couplings built symmetric"),
        ));
    }
}

fn compile_xz(u: &CliffordOp) -> CompiledCircuit {
    let n = u.n();
    let parts = canonical_parts(u);
    let identity = BitMatrix::identity(n);
    let mut layers: Vec<LayerSpec> = Vec::new();

    match parts.hadamard {
        None => {
            // time: [four-gate block for c] RZZ/SZ(m2)
            if parts.c == identity {
                push_mq(&mut layers, Axis::Z, parts.m2.off_diagonal());
            } else {
                let dec = cx_four_gate(&parts.c).expect("canonical c is invertible");
                push_mq(&mut layers, Axis::X, dec.e2);
                push_mq(&mut layers, Axis::Z, dec.f);
                push_mq(&mut layers, Axis::X, dec.e1);
                push_mq(
                    &mut layers,
                    Axis::Z,
                    dec.g
                        .add(&parts.m2.off_diagonal())
                        .expect("same dimensions"),
                );
            }
            let d2 = parts.m2.diag();
            if !d2.is_zero() {
                layers.push(LayerSpec::SZ(d2));
            }
        }
        Some(b) => {
            // Move the all-Hadamard layer to the front (Z-type couplings on
            // its left become X-type, the CNOT matrix transposes-inverts),
            // slide the X-type pair to the early side of the CNOT layer, and
            // replace the CNOT layer by the four-gate block, merging edges
            // into the neighboring correlated layers.
            let c_prime = parts
                .c
                .inverse_transpose()
                .expect("canonical c is invertible");
            let m1_conj = conjugate_mqx_through_cx(&parts.m1, &c_prime)
                .expect("canonical couplings are symmetric");

            let d1 = m1_conj.diag();
            if !d1.is_zero() {
                layers.push(LayerSpec::SZ(d1));
            }
            layers.push(LayerSpec::Hall);

            if c_prime == identity {
                push_mq(&mut layers, Axis::X, m1_conj.off_diagonal());
                push_mq(&mut layers, Axis::Z, parts.m2.off_diagonal());
            } else {
                let dec = cx_four_gate(&c_prime).expect("canonical c is invertible");
                push_mq(
                    &mut layers,
                    Axis::X,
                    dec.e2
                        .add(&m1_conj.off_diagonal())
                        .expect("same dimensions"),
                );
                push_mq(&mut layers, Axis::Z, dec.f);
                push_mq(&mut layers, Axis::X, dec.e1);
                push_mq(
                    &mut layers,
                    Axis::Z,
                    dec.g
                        .add(&parts.m2.off_diagonal())
                        .expect("same dimensions"),
                );
            }
            let d2 = parts.m2.diag();
            if !d2.is_zero() {
                layers.push(LayerSpec::SZ(d2));
            }
            if !b.is_zero() {
                layers.push(LayerSpec::H(b));
            }
        }
    }

    let frame = pauli_correction(u, &layers_to_ops(n, &layers))
        .expect("compiled layers realize the target symplectic part");
    CompiledCircuit {
        n,
        pauli: frame,
        layers,
    }
}

/// Compile a Clifford into the layered form with at most four entangling
/// gates. `Xz` leads the entangling block with an X-axis gate and ends
/// Z-axis; `Zx` is obtained by conjugating the `Xz` construction of the
/// Hadamard-transformed target.
pub fn compile_clifford(u: &CliffordOp, variant: Variant) -> CompiledCircuit {
    match variant {
        Variant::Xz => compile_xz(u),
        Variant::Zx => {
            let n = u.n();
            let hall = CliffordOp::layer_symplectic(n, &LayerSpec::Hall).expect("valid layer");
            let mirrored = CliffordOp::compose(&hall, &CliffordOp::compose(u, &hall).unwrap())
                .expect("same size");
            let xz = compile_xz(&mirrored);
            let layers: Vec<LayerSpec> = xz
                .layers
                .iter()
                .map(|l| l.axis_swapped().expect("compiled layers are well-formed"))
                .collect();
            let frame = pauli_correction(u, &layers_to_ops(n, &layers))
                .expect("mirrored layers realize the target symplectic part");
            CompiledCircuit {
                n,
                pauli: frame,
                layers,
            }
        }
    }
}

/// Compile a batch of independent targets, in parallel when the `parallel`
/// feature is enabled. Output order matches input order either way.
pub fn compile_batch(targets: &[CliffordOp], variant: Variant) -> Vec<CompiledCircuit> {
    map_ordered(targets, |u| compile_clifford(u, variant))
}

/// Sequential reference path for the batch compiler.
pub fn compile_batch_sequential(targets: &[CliffordOp], variant: Variant) -> Vec<CompiledCircuit> {
    targets.iter().map(|u| compile_clifford(u, variant)).collect()
}

/// CNOT list in time order as (control, target) pairs, plus the fused
/// per-step entangling gates used for cost accounting.
pub type GaussianSynthesis = (Vec<(usize, usize)>, Vec<MqGate>);

/// Realize the CNOT layer of `c` by Gaussian elimination: forward
/// elimination then back substitution, lowest-index pivots.
///
/// Returns the CNOT list in time order as (control, target) pairs in the
/// layer-matrix convention (appending CNOT(a, t) multiplies the layer
/// matrix by I + e_a e_t^T), plus the fused per-step form used for cost
/// accounting: all CNOTs of one elimination step share the pivot qubit and
/// fuse into a single Z-axis gate whose coupling is the corresponding star.
pub fn gaussian_cnot_synthesis(c: &BitMatrix) -> Result<GaussianSynthesis> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "CNOT synthesis of {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let n = c.rows();
    if c.rank() != n {
        return Err(Error::Singular);
    }

    let mut work = c.clone();
    // row ops in application order; (dst, src) adds row src into row dst
    let mut applied: Vec<(usize, usize)> = Vec::new();
    // per elimination step: the pivot and its partner qubits
    let mut steps: Vec<Vec<(usize, usize)>> = Vec::new();

    let eliminate = |work: &mut BitMatrix,
                         applied: &mut Vec<(usize, usize)>,
                         steps: &mut Vec<Vec<(usize, usize)>>,
                         pivot: usize,
                         rows: &[usize]| {
        if rows.is_empty() {
            return;
        }
        let mut step = Vec::with_capacity(rows.len());
        for &i in rows {
            work.xor_rows(i, pivot);
            applied.push((i, pivot));
            step.push((i, pivot));
        }
        steps.push(step);
    };

    // forward: unit pivots, clear below
    for j in 0..n {
        if !work.get(j, j) {
            let i = (j + 1..n)
                .find(|&i| work.get(i, j))
                .expect("invertible matrix always has a pivot below");
            work.xor_rows(j, i);
            applied.push((j, i));
            steps.push(vec![(j, i)]);
        }
        let rows: Vec<usize> = (j + 1..n).filter(|&i| work.get(i, j)).collect();
        eliminate(&mut work, &mut applied, &mut steps, j, &rows);
    }
    // back substitution: clear above
    for j in (0..n).rev() {
        let rows: Vec<usize> = (0..j).filter(|&i| work.get(i, j)).collect();
        eliminate(&mut work, &mut applied, &mut steps, j, &rows);
    }
    debug_assert_eq!(work, BitMatrix::identity(n));

    // application order reversed = time order
    let cnots: Vec<(usize, usize)> = applied.into_iter().rev().collect();
    let mut fused = Vec::with_capacity(steps.len());
    for step in steps.into_iter().rev() {
        let mut xi = BitMatrix::zeros(n, n);
        for (a, b) in step {
            xi.set(a, b, true);
            xi.set(b, a, true);
        }
        fused.push(MqGate::new(Axis::Z, xi).expect("star couplings are symmetric"));
    }
    Ok((cnots, fused))
}
