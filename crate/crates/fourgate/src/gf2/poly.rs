//! Univariate polynomials over F2, bit-packed, plus the factorization
//! routines the rational-form decomposition needs: squarefree splitting,
//! distinct-degree and equal-degree factorization.

use super::{BitMatrix, BitVec};
use rand_core::{RngCore, SeedableRng};

const WORD_BITS: usize = 64;

/// Polynomial over F2; bit i of `bits` is the coefficient of x^i.
/// Invariant: no trailing zero words beyond the leading term.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    bits: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { bits: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { bits: vec![1] }
    }

    pub fn x() -> Self {
        Poly { bits: vec![2] }
    }

    pub fn monomial(d: usize) -> Self {
        let mut p = Poly::zero();
        p.set_coeff(d);
        p
    }

    #[cfg(test)]
    pub fn from_coeff_indices(idx: &[usize]) -> Self {
        let mut p = Poly::zero();
        for &i in idx {
            p.set_coeff(i);
        }
        p
    }

    fn set_coeff(&mut self, i: usize) {
        let w = i / WORD_BITS;
        if self.bits.len() <= w {
            self.bits.resize(w + 1, 0);
        }
        self.bits[w] ^= 1u64 << (i % WORD_BITS);
        self.trim();
    }

    pub fn coeff(&self, i: usize) -> bool {
        let w = i / WORD_BITS;
        w < self.bits.len() && (self.bits[w] >> (i % WORD_BITS)) & 1 == 1
    }

    fn trim(&mut self) {
        while let Some(&last) = self.bits.last() {
            if last == 0 {
                self.bits.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.bits.len() == 1 && self.bits[0] == 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.bits.last()?;
        Some((self.bits.len() - 1) * WORD_BITS + (63 - last.leading_zeros() as usize))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut bits = self.bits.clone();
        if bits.len() < other.bits.len() {
            bits.resize(other.bits.len(), 0);
        }
        for (i, w) in other.bits.iter().enumerate() {
            bits[i] ^= w;
        }
        let mut p = Poly { bits };
        p.trim();
        p
    }

    pub fn shifted(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let deg = self.degree().unwrap();
        let mut out = Poly::zero();
        for i in 0..=deg {
            if self.coeff(i) {
                out.set_coeff(i + k);
            }
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc = Poly::zero();
        for i in 0..=other.degree().unwrap() {
            if other.coeff(i) {
                acc = acc.add(&self.shifted(i));
            }
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot.set_coeff(shift);
            rem = rem.add(&divisor.shifted(shift));
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor);
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        self.mul(other).div_exact(&self.gcd(other))
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.add(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.add(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        (r0, s0, t0)
    }

    /// Formal derivative; over F2 this keeps odd-degree coefficients only.
    pub fn derivative(&self) -> Poly {
        let mut out = Poly::zero();
        if let Some(d) = self.degree() {
            for i in 1..=d {
                if i % 2 == 1 && self.coeff(i) {
                    out.set_coeff(i - 1);
                }
            }
        }
        out
    }

    /// Square root of a polynomial with only even-degree terms
    /// (over F2, squaring doubles every exponent).
    pub fn even_part_sqrt(&self) -> Poly {
        let mut out = Poly::zero();
        if let Some(d) = self.degree() {
            for i in (0..=d).step_by(2) {
                if self.coeff(i) {
                    out.set_coeff(i / 2);
                }
            }
        }
        out
    }

    /// Squaring is coefficient spreading over F2.
    pub fn square(&self) -> Poly {
        let mut out = Poly::zero();
        if let Some(d) = self.degree() {
            for i in 0..=d {
                if self.coeff(i) {
                    out.set_coeff(2 * i);
                }
            }
        }
        out
    }

    /// Evaluate at a square matrix: p(C).
    pub fn eval_matrix(&self, c: &BitMatrix) -> BitMatrix {
        let n = c.rows();
        let mut acc = BitMatrix::zeros(n, n);
        if self.is_zero() {
            return acc;
        }
        // Horner from the top coefficient down.
        let d = self.degree().unwrap();
        for i in (0..=d).rev() {
            acc = acc.mul(c).unwrap();
            if self.coeff(i) {
                for k in 0..n {
                    let v = acc.get(k, k);
                    acc.set(k, k, !v);
                }
            }
        }
        acc
    }

    fn hash_words(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        for &w in &self.bits {
            h ^= w;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.degree().unwrap()).rev() {
            if self.coeff(i) {
                if !first {
                    write!(f, "+")?;
                }
                match i {
                    0 => write!(f, "1")?,
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{i}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

/// Squarefree decomposition: returns (g, m) pairs with f = prod g^m,
/// each g squarefree and pairwise coprime. Yun's algorithm adapted to
/// characteristic 2 (the derivative kills even powers, which are handled
/// by the square-root recursion).
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = h(x)^2
        let h = f.even_part_sqrt();
        for (g, m) in squarefree_decomposition(&h) {
            out.push((g, 2 * m));
        }
        return out;
    }
    let mut g = f.gcd(&deriv);
    let mut w = f.div_exact(&g);
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&g);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        g = g.div_exact(&y);
        w = y;
        i += 1;
    }
    if !g.is_one() {
        // leftover part with even multiplicities
        let h = g.even_part_sqrt();
        debug_assert_eq!(h.square(), g);
        for (p, m) in squarefree_decomposition(&h) {
            out.push((p, 2 * m));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree polynomial: returns
/// (product-of-irreducibles-of-degree-d, d) pairs.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    // power = x^(2^d) mod rest, updated as we strip factors
    let mut power = Poly::x().rem(&rest);
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        power = power.square().rem(&rest);
        let g = power.add(&Poly::x()).gcd(&rest);
        if !g.is_one() {
            out.push((g.clone(), d));
            rest = rest.div_exact(&g);
            power = power.rem(&rest);
        }
    }
    out
}

/// Split a product of distinct irreducibles of equal degree d via the
/// characteristic-2 trace map. Randomized internally but seeded from the
/// polynomial itself, so the overall factorization is deterministic.
fn equal_degree(f: &Poly, d: usize, out: &mut Vec<Poly>) {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.clone());
        return;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(f.hash_words() ^ (deg as u64));
    loop {
        // random polynomial of degree < deg
        let mut t = Poly::zero();
        for i in 0..deg {
            if rng.next_u64() & 1 == 1 {
                t.set_coeff(i);
            }
        }
        if t.is_zero() {
            continue;
        }
        // trace map t + t^2 + t^4 + ... + t^(2^(d-1)) mod f
        let mut trace = t.clone();
        let mut pow = t.clone();
        for _ in 1..d {
            pow = pow.square().rem(f);
            trace = trace.add(&pow);
        }
        let g = trace.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            equal_degree(&g, d, out);
            equal_degree(&f.div_exact(&g), d, out);
            return;
        }
    }
}

/// Full factorization of a nonzero polynomial into monic irreducible powers.
pub(crate) fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero());
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (sq, mult) in squarefree_decomposition(f) {
        for (block, d) in distinct_degree(&sq) {
            let mut irreducibles = Vec::new();
            equal_degree(&block, d, &mut irreducibles);
            for irr in irreducibles {
                out.push((irr, mult));
            }
        }
    }
    // deterministic order: by degree, then coefficient bits
    out.sort_by(|a, b| {
        let da = a.0.degree().unwrap();
        let db = b.0.degree().unwrap();
        da.cmp(&db).then_with(|| a.0.bits.cmp(&b.0.bits))
    });
    out
}

/// Annihilator polynomial of v under C: the monic generator of
/// {p : p(C) v = 0}, found from the first Krylov dependence.
pub(crate) fn vector_annihilator(c: &BitMatrix, v: &BitVec) -> Poly {
    let n = v.len();
    // echelon rows plus, for each, the combination of Krylov vectors it came from
    let mut echelon: Vec<(BitVec, Poly)> = Vec::new();
    let mut cur = v.clone();
    for step in 0..=n {
        let mut reduced = cur.clone();
        let mut combo = Poly::monomial(step);
        loop {
            let lead = match reduced.iter_ones().next() {
                Some(l) => l,
                None => return combo,
            };
            match echelon.iter().find(|(e, _)| e.iter_ones().next() == Some(lead)) {
                Some((e, c)) => {
                    reduced.xor_assign(&e.clone());
                    combo = combo.add(&c.clone());
                }
                None => break,
            }
        }
        echelon.push((reduced, combo));
        cur = c.mul_vec(&cur).unwrap();
    }
    unreachable!("Krylov chain must become dependent within n+1 steps");
}

/// Minimal polynomial of a square matrix, as the lcm of the annihilators
/// of the standard basis vectors.
pub(crate) fn minimal_polynomial(c: &BitMatrix) -> Poly {
    let n = c.rows();
    let mut m = Poly::one();
    for i in 0..n {
        let mut e = BitVec::zeros(n);
        e.set(i, true);
        let ann = vector_annihilator(c, &e);
        m = m.lcm(&ann);
        if m.degree() == Some(n) {
            break;
        }
    }
    m
}
