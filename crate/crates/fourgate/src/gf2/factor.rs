//! Factor an invertible matrix over F2 into a product of two symmetric
//! invertible matrices.
//!
//! The construction goes through a block-companion similarity: split the
//! space into primary components of the minimal polynomial, peel off cyclic
//! subspaces generated by maximal vectors, and write the restriction to each
//! chain as a companion matrix. A companion matrix A of p(x) has an explicit
//! Hankel symmetrizer H (anti-triangular with a unit anti-diagonal, hence
//! always invertible) satisfying H A = A^T H, so A = H^-1 (H A) is a product
//! of two symmetric blocks. Conjugating the block-diagonal factors back with
//! the chain basis Q gives the pair for the original matrix.

use super::poly::{factor as factor_poly, minimal_polynomial, Poly};
use super::{BitMatrix, BitVec};
use crate::error::{Error, Result};

/// A pair of symmetric invertible matrices with `s1 * s2` equal to the
/// factored input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPair {
    pub s1: BitMatrix,
    pub s2: BitMatrix,
}

fn from_cols(rows: usize, cols: &[BitVec]) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        debug_assert_eq!(v.len(), rows);
        for i in v.iter_ones() {
            m.set(i, j, true);
        }
    }
    m
}

/// Companion matrix of a monic polynomial p: maps e_i -> e_{i+1} and the
/// top basis vector to the low-order coefficients of p.
fn companion(p: &Poly) -> BitMatrix {
    let m = p.degree().expect("companion of nonzero poly");
    let mut a = BitMatrix::zeros(m, m);
    for i in 0..m.saturating_sub(1) {
        a.set(i + 1, i, true);
    }
    for i in 0..m {
        if p.coeff(i) {
            a.set(i, m - 1, true);
        }
    }
    a
}

/// Hankel symmetrizer of the companion matrix of p: seed the antidiagonal
/// with 1 and extend by the linear recurrence of p. Satisfies H A = A^T H
/// and is unimodular by shape.
fn hankel_symmetrizer(p: &Poly) -> BitMatrix {
    let m = p.degree().expect("nonzero poly");
    let mut h = vec![false; 2 * m - 1];
    h[m - 1] = true;
    for j in 0..m.saturating_sub(1) {
        let mut acc = false;
        for k in 0..m {
            if p.coeff(k) && h[k + j] {
                acc = !acc;
            }
        }
        h[m + j] = acc;
    }
    let mut out = BitMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            if h[i + j] {
                out.set(i, j, true);
            }
        }
    }
    out
}

/// Cyclic chains of a primary operator (minimal polynomial a power of the
/// irreducible r). Returns (chain vectors in local coordinates, exponent)
/// per chain; chains are peeled off one maximal vector at a time, with the
/// invariant complement computed from a dual Krylov kernel.
fn cyclic_chains(c: &BitMatrix, r: &Poly) -> Vec<(Vec<BitVec>, usize)> {
    let d = c.rows();
    let dr = r.degree().unwrap();

    // nilpotency exponent of r(C)
    let n_mat = r.eval_matrix(c);
    let mut e = 0usize;
    let mut pow = BitMatrix::identity(d);
    let mut powers = vec![pow.clone()];
    while !pow.is_zero() {
        pow = pow.mul(&n_mat).unwrap();
        powers.push(pow.clone());
        e += 1;
        assert!(e <= d, "runaway nilpotency computation");
    }

    // maximal vector: lowest basis vector not killed by r(C)^(e-1)
    let top = &powers[e - 1];
    let v = (0..d)
        .map(|k| {
            let mut ek = BitVec::zeros(d);
            ek.set(k, true);
            ek
        })
        .find(|ek| !top.mul_vec(ek).unwrap().is_zero())
        .expect("some basis vector survives the top power");

    let len = dr * e;
    let mut chain = Vec::with_capacity(len);
    let mut cur = v;
    for _ in 0..len {
        chain.push(cur.clone());
        cur = c.mul_vec(&cur).unwrap();
    }
    let k_mat = from_cols(d, &chain);
    debug_assert_eq!(k_mat.rank(), len);

    if len == d {
        return vec![(chain, e)];
    }

    // dual functional hitting only the top Krylov vector
    let mut target = BitVec::zeros(len);
    target.set(len - 1, true);
    let f = k_mat
        .transpose()
        .solve(&target)
        .expect("dual functional exists for a full-rank chain");

    // invariant complement: common kernel of f, fC, ..., fC^(len-1)
    let ct = c.transpose();
    let mut dual_rows = BitMatrix::zeros(len, d);
    let mut w = f;
    for j in 0..len {
        dual_rows.set_row(j, &w);
        w = ct.mul_vec(&w).unwrap();
    }
    let complement = dual_rows.kernel_basis();
    assert_eq!(complement.len(), d - len, "complement dimension");

    let b_w = from_cols(d, &complement);
    let c_w = b_w
        .solve_matrix(&c.mul(&b_w).unwrap())
        .expect("complement is invariant");

    let mut out = vec![(chain, e)];
    for (sub_chain, sub_e) in cyclic_chains(&c_w, r) {
        let lifted = sub_chain
            .iter()
            .map(|x| b_w.mul_vec(x).unwrap())
            .collect();
        out.push((lifted, sub_e));
    }
    out
}

/// Block-companion similarity C = Q B Q^-1: returns Q and the list of
/// (irreducible, exponent) annihilators, one per chain, in Q-column order.
fn block_companion_form(c: &BitMatrix) -> (BitMatrix, Vec<(Poly, usize)>) {
    let n = c.rows();
    let min_poly = minimal_polynomial(c);
    let factors = factor_poly(&min_poly);

    let mut q_cols: Vec<BitVec> = Vec::with_capacity(n);
    let mut blocks = Vec::new();

    for (r, e) in &factors {
        // projector onto the primary component ker r(C)^e along the rest
        let r_pow = {
            let mut p = Poly::one();
            for _ in 0..*e {
                p = p.mul(r);
            }
            p
        };
        let m_rest = min_poly.div_exact(&r_pow);
        let (g, u, _) = m_rest.xgcd(&r_pow);
        assert!(g.is_one(), "primary factors are coprime");
        let proj = u.mul(&m_rest).rem(&min_poly).eval_matrix(c);

        // basis of the component = independent columns of the projector
        let col_idx = proj.transpose().independent_rows();
        if col_idx.is_empty() {
            continue;
        }
        let basis: Vec<BitVec> = col_idx.iter().map(|&j| proj.col_vec(j)).collect();
        let b_mat = from_cols(n, &basis);
        let c_local = b_mat
            .solve_matrix(&c.mul(&b_mat).unwrap())
            .expect("primary component is invariant");

        for (chain, chain_e) in cyclic_chains(&c_local, r) {
            for vec_local in &chain {
                q_cols.push(b_mat.mul_vec(vec_local).unwrap());
            }
            blocks.push((r.clone(), chain_e));
        }
    }

    assert_eq!(q_cols.len(), n, "chains must exhaust the space");
    (from_cols(n, &q_cols), blocks)
}

/// Factor an invertible matrix as a product of two symmetric invertible
/// matrices over F2. The output pair is deterministic but not unique; any
/// downstream consumer should rely only on the product contract.
pub fn symmetric_pair_factor(c: &BitMatrix) -> Result<SymmetricPair> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "symmetric factorization of {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let n = c.rows();
    if c.rank() != n {
        return Err(Error::Singular);
    }

    let (q, blocks) = block_companion_form(c);

    let mut s1_diag = BitMatrix::zeros(n, n);
    let mut s2_diag = BitMatrix::zeros(n, n);
    let mut offset = 0usize;
    for (r, e) in &blocks {
        let mut p = Poly::one();
        for _ in 0..*e {
            p = p.mul(r);
        }
        let a = companion(&p);
        let h = hankel_symmetrizer(&p);
        let s1_blk = h.inverse().expect("Hankel symmetrizer is unimodular");
        let s2_blk = h.mul(&a).unwrap();
        debug_assert!(s1_blk.is_symmetric());
        debug_assert!(s2_blk.is_symmetric());
        let m = p.degree().unwrap();
        s1_diag.paste(&s1_blk, offset, offset);
        s2_diag.paste(&s2_blk, offset, offset);
        offset += m;
    }
    debug_assert_eq!(offset, n);

    let q_inv = q.inverse().expect("chain basis is invertible");
    let s1 = q.mul(&s1_diag).unwrap().mul(&q.transpose()).unwrap();
    let s2 = q_inv
        .transpose()
        .mul(&s2_diag)
        .unwrap()
        .mul(&q_inv)
        .unwrap();

    debug_assert!(s1.is_symmetric());
    debug_assert!(s2.is_symmetric());
    debug_assert_eq!(s1.mul(&s2).unwrap(), *c);
    Ok(SymmetricPair { s1, s2 })
}
