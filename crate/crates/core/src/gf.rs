//! Dense linear algebra over prime fields `F_p`.
//!
//! Entries are stored as canonical residues `0..p` in row-major order. Every
//! matrix carries its modulus; mixing moduli is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("{what}: {size} exceeds the configured cap {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero in F_{p}");
    // Fermat: a^(p-2)
    let mut result = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// An element of `F_p` together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    modulus: u32,
}

impl FieldElem {
    pub fn new(value: i64, modulus: u32) -> Self {
        FieldElem {
            value: reduce(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Panics on zero.
    pub fn inv(self) -> Self {
        FieldElem {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        assert_eq!(self.modulus, rhs.modulus);
        FieldElem {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        assert_eq!(self.modulus, rhs.modulus);
        FieldElem {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        assert_eq!(self.modulus, rhs.modulus);
        FieldElem {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            value: sub_mod(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: MatrixFp,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixFp {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        MatrixFp {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(v, p);
            }
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        assert!(data.iter().all(|&v| v < p));
        MatrixFp { rows, cols, p, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElem {
        FieldElem {
            value: self.get(r, c),
            modulus: self.p,
        }
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &MatrixFp) -> MatrixFp {
        assert_eq!(self.p, rhs.p);
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = Self::zeros(self.rows, rhs.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64 % p)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &MatrixFp) -> MatrixFp {
        assert_eq!((self.rows, self.cols, self.p), (rhs.rows, rhs.cols, rhs.p));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        MatrixFp { data, ..*self }
    }

    pub fn sub(&self, rhs: &MatrixFp) -> MatrixFp {
        assert_eq!((self.rows, self.cols, self.p), (rhs.rows, rhs.cols, rhs.p));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| sub_mod(a, b, self.p))
            .collect();
        MatrixFp { data, ..*self }
    }

    pub fn scale(&self, s: u32) -> MatrixFp {
        let data = self.data.iter().map(|&a| mul_mod(a, s, self.p)).collect();
        MatrixFp { data, ..*self }
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &MatrixFp) -> MatrixFp {
        assert_eq!(self.p, below.p);
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        MatrixFp {
            rows: self.rows + below.rows,
            cols: self.cols,
            p: self.p,
            data,
        }
    }

    /// Block matrix `[[a, b], [c, d]]`; blocks must have compatible shapes.
    pub fn block(a: &MatrixFp, b: &MatrixFp, c: &MatrixFp, d: &MatrixFp) -> MatrixFp {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut m = Self::zeros(rows, cols, a.p);
        for r in 0..rows {
            for col in 0..cols {
                let v = match (r < a.rows, col < a.cols) {
                    (true, true) => a.get(r, col),
                    (true, false) => b.get(r, col - a.cols),
                    (false, true) => c.get(r - a.rows, col),
                    (false, false) => d.get(r - a.rows, col - a.cols),
                };
                m.data[r * cols + col] = v;
            }
        }
        m
    }

    /// Copies `src` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &MatrixFp) {
        for r in 0..src.rows {
            for c in 0..src.cols {
                self.set(r0 + r, c0 + c, src.get(r, c));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatrixFp {
        let mut m = Self::zeros(rows, cols, self.p);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = self.get(r0 + r, c0 + c);
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..m.cols {
                    m.data.swap(piv * m.cols + c, row * m.cols + c);
                }
            }
            let inv = inv_mod(m.get(row, col), p);
            for c in col..m.cols {
                let v = mul_mod(m.get(row, c), inv, p);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col);
                if f == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = sub_mod(m.get(r, c), mul_mod(f, m.get(row, c), p), p);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            rank: pivots.len(),
            reduced: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space `{x : self * x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub_mod(0, reduced.get(r, free), p);
            }
            basis.push(v);
        }
        basis
    }

    pub fn is_invertible(&self) -> Result<bool, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rank() == self.rows)
    }

    /// Solves `self * X = rhs`; `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &MatrixFp) -> Option<MatrixFp> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = Self::zeros(self.rows, self.cols + rhs.cols, self.p);
        aug.paste(0, 0, self);
        aug.paste(0, self.cols, rhs);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols, self.p);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, reduced.get(r, self.cols + j));
            }
        }
        Some(x)
    }
}

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `F_p^n` held as its reduced row-echelon basis (no zero rows).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: MatrixFp,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalises the row span of `spanning`.
    pub fn from_spanning(spanning: &MatrixFp) -> Self {
        let Rref {
            reduced,
            rank,
            pivots,
        } = spanning.rref();
        Subspace {
            basis: reduced.submatrix(0, 0, rank, spanning.cols()),
            pivots,
        }
    }

    pub fn zero(n: usize, p: u32) -> Self {
        Subspace {
            basis: MatrixFp::zeros(0, n, p),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize, p: u32) -> Self {
        Subspace {
            basis: MatrixFp::identity(n, p),
            pivots: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &MatrixFp {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; they index a basis of the quotient.
    pub fn complement(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// `v` minus its component along the basis, i.e. the representative
    /// supported on the complement coordinates.
    pub fn residue(&self, v: &[u32]) -> Vec<u32> {
        let p = self.basis.modulus();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = out[pc];
            if f == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = sub_mod(*o, mul_mod(f, self.basis.get(r, c), p), p);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residue(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of a member vector with respect to the canonical basis.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn is_canonical(&self) -> bool {
        Subspace::from_spanning(&self.basis) == *self
    }
}

/// All `k`-dimensional subspaces of `F_p^n`, each exactly once, in canonical form.
pub fn enumerate_subspaces(n: usize, k: usize, p: u32, cap: u128) -> Result<Vec<Subspace>, LinalgError> {
    assert!(k <= n, "subspace dimension exceeds ambient dimension");
    let exponent = (k * (n - k)) as u32;
    let size = (p as u128).checked_pow(exponent).unwrap_or(u128::MAX);
    if size > cap {
        return Err(LinalgError::CapExceeded {
            what: format!("subspaces of dimension {k} in F_{p}^{n}"),
            size,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|&c| !is_pivot[c]).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut m = MatrixFp::zeros(k, n, p);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m.set(r, c, d);
            }
            out.push(Subspace {
                basis: m,
                pivots: pivots.clone(),
            });
            if !advance(&mut digits, p) {
                break;
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    Ok(out)
}

/// Mixed-radix counter step; returns `false` after wrapping around.
pub(crate) fn advance(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
        let mut num = 1u128;
        let mut den = 1u128;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn rref_ranks() {
        assert_eq!(MatrixFp::identity(3, 3).rank(), 3);
        assert_eq!(MatrixFp::zeros(2, 2, 3).rank(), 0);
        let m = MatrixFp::from_rows(3, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernels() {
        assert!(MatrixFp::identity(3, 5).kernel().is_empty());
        assert_eq!(MatrixFp::zeros(1, 2, 3).kernel().len(), 2);
        let k = MatrixFp::from_rows(3, &[vec![1, 1]]).kernel();
        assert_eq!(k, vec![vec![2, 1]]);
        // (1,2) spans the same line
        let line = Subspace::from_spanning(&MatrixFp::from_rows(3, &[vec![1, 2]]));
        assert!(line.contains(&k[0]));
    }

    #[test]
    fn invertibility() {
        assert!(MatrixFp::identity(2, 3).is_invertible().unwrap());
        assert!(!MatrixFp::zeros(2, 2, 3).is_invertible().unwrap());
        assert!(MatrixFp::from_rows(3, &[vec![1, 1], vec![1, 2]]).is_invertible().unwrap());
        assert_eq!(
            MatrixFp::zeros(1, 2, 3).is_invertible(),
            Err(LinalgError::NotSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(2, 1, 3, 1 << 20).unwrap().len(), 4);
        assert_eq!(enumerate_subspaces(2, 2, 3, 1 << 20).unwrap().len(), 1);
        assert_eq!(enumerate_subspaces(3, 1, 2, 1 << 20).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(3, 0, 2, 1 << 20).unwrap().len(), 1);
        assert!(matches!(
            enumerate_subspaces(6, 3, 5, 1000),
            Err(LinalgError::CapExceeded { .. })
        ));
    }

    #[test]
    fn subspaces_match_gaussian_binomials() {
        for p in [2u32, 3, 5] {
            for n in 0..=4usize {
                for k in 0..=n {
                    let subs = enumerate_subspaces(n, k, p, u128::MAX).unwrap();
                    assert_eq!(subs.len() as u128, gaussian_binomial(n as u32, k as u32, p as u128));
                    assert!(subs.iter().all(Subspace::is_canonical));
                    let distinct: std::collections::HashSet<_> = subs.iter().collect();
                    assert_eq!(distinct.len(), subs.len());
                }
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = MatrixFp::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let b = MatrixFp::from_rows(5, &[vec![1], vec![0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = MatrixFp::from_rows(5, &[vec![1, 1], vec![1, 1]]);
        assert!(singular.solve(&b).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = MatrixFp> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..6, 1usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |d| MatrixFp::from_data(r, c, p, d))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(m in arb_matrix()) {
            let rank = m.rank();
            prop_assert_eq!(rank, m.transpose().rank());
            let ker = m.kernel();
            prop_assert_eq!(rank + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn canonical_form_is_idempotent(m in arb_matrix()) {
            let s = Subspace::from_spanning(&m);
            prop_assert!(s.is_canonical());
            for r in 0..m.rows() {
                prop_assert!(s.contains(m.row(r)));
            }
        }
    }
}
