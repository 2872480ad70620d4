//! Integral unit forms `T(b) = sum b_i^2 + sum_{i != j} a_ij b_i b_j`, their
//! bilinear forms, the twist function `nu`, and positive-root enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::BoundQuiver;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnitFormError {
    #[error("vector has {got} components, the form has {expected} variables")]
    IndexMismatch { expected: usize, got: usize },
    #[error("root {root} touches the search cap {cap}; enumeration is not certified complete")]
    CapTooSmall { root: DimVector, cap: u32 },
}

/// An integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The indicator vector of vertex `i`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn as_usize(&self) -> Vec<usize> {
        self.0.iter().map(|&x| usize::try_from(x).expect("negative dimension")).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitForm {
    n: usize,
    /// Row-major `n x n`; the diagonal is unused and kept at zero.
    coeffs: Vec<i64>,
}

impl UnitForm {
    /// Builds a form from an off-diagonal coefficient table; the diagonal of
    /// `table` is ignored.
    pub fn new(table: &[Vec<i64>]) -> Self {
        let n = table.len();
        let mut coeffs = vec![0; n * n];
        for (i, row) in table.iter().enumerate() {
            assert_eq!(row.len(), n, "coefficient table must be square");
            for (j, &a) in row.iter().enumerate() {
                if i != j {
                    coeffs[i * n + j] = a;
                }
            }
        }
        UnitForm { n, coeffs }
    }

    /// `a_ij = -[arrow i -> j] + r(i, j)`.
    pub fn of_bound_quiver(bq: &BoundQuiver) -> Self {
        let n = bq.vertex_count();
        let r = bq.relation_counts();
        let q = bq.quiver();
        let table: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            0
                        } else {
                            -(q.has_arrow(i, j) as i64) + r[i][j] as i64
                        }
                    })
                    .collect()
            })
            .collect();
        UnitForm::new(&table)
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    /// `a_ij` for `i != j`; zero on the diagonal.
    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.coeffs[i * self.n + j]
    }

    pub fn table(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.coeff(i, j)).collect()).collect()
    }

    fn check(&self, v: &DimVector) -> Result<(), UnitFormError> {
        if v.len() != self.n {
            return Err(UnitFormError::IndexMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    fn pairing(&self, b: &DimVector, c: &DimVector, coeff: impl Fn(i64) -> i64) -> i64 {
        let diag: i64 = b.0.iter().zip(&c.0).map(|(x, y)| x * y).sum();
        let mut off = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    off += coeff(self.coeff(i, j)) * b.0[i] * c.0[j];
                }
            }
        }
        diag + off
    }

    pub fn evaluate(&self, b: &DimVector) -> Result<i64, UnitFormError> {
        self.check(b)?;
        Ok(self.pairing(b, b, |a| a))
    }

    /// `<b, c>_T = sum b_i c_i + sum a_ij b_i c_j`.
    pub fn bilinear(&self, b: &DimVector, c: &DimVector) -> Result<i64, UnitFormError> {
        self.check(b)?;
        self.check(c)?;
        Ok(self.pairing(b, c, |a| a))
    }

    /// As [`bilinear`](Self::bilinear) with every `a_ij` replaced by `min(a_ij, 0)`.
    pub fn bilinear0(&self, b: &DimVector, c: &DimVector) -> Result<i64, UnitFormError> {
        self.check(b)?;
        self.check(c)?;
        Ok(self.pairing(b, c, |a| a.min(0)))
    }

    /// `nu(b, c) = delta(sum (a_ij)_- b_i c_j) * <b, c>^0`, where `delta` is the
    /// indicator of zero.
    pub fn nu(&self, b: &DimVector, c: &DimVector) -> Result<i64, UnitFormError> {
        let with_diag = self.bilinear0(b, c)?;
        let diag: i64 = b.0.iter().zip(&c.0).map(|(x, y)| x * y).sum();
        let negative_part = with_diag - diag;
        Ok(if negative_part == 0 { with_diag } else { 0 })
    }

    /// Exponent of the twist in `ad_x(y) = xy - t^e yx` for `deg x = b`, `deg y = c`.
    pub fn ad_exponent(&self, b: &DimVector, c: &DimVector) -> Result<i64, UnitFormError> {
        Ok(self.bilinear(b, c)? - self.bilinear(c, b)? + 2 * self.nu(c, b)? - 2 * self.nu(b, c)?)
    }

    /// Every nonzero `b` in the box `[0, cap]^n` with `T(b) = 1`.
    ///
    /// A root with a component equal to `cap` means larger roots might exist
    /// outside the box, so the search refuses to certify the result.
    pub fn positive_roots(&self, cap: u32) -> Result<RootSet, UnitFormError> {
        assert!(cap >= 1, "root search cap must be positive");
        let mut roots = Vec::new();
        for b in BoxIter::new(self.n, cap) {
            if self.pairing(&b, &b, |a| a) == 1 {
                if b.0.contains(&(cap as i64)) {
                    return Err(UnitFormError::CapTooSmall { root: b, cap });
                }
                roots.push(b);
            }
        }
        roots.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| b.cmp(a)));
        Ok(RootSet { roots, cap })
    }

    /// Semi-decision: no nonzero `b` in `[0, cap]^n` has `T(b) <= 0`.
    pub fn is_weakly_positive(&self, cap: u32) -> bool {
        BoxIter::new(self.n, cap).all(|b| self.pairing(&b, &b, |a| a) > 0)
    }
}

/// Nonzero vectors of `[0, cap]^n`.
struct BoxIter {
    current: Vec<i64>,
    cap: i64,
    done: bool,
}

impl BoxIter {
    fn new(n: usize, cap: u32) -> Self {
        BoxIter {
            current: vec![0; n],
            cap: cap as i64,
            done: n == 0,
        }
    }
}

impl Iterator for BoxIter {
    type Item = DimVector;
    fn next(&mut self) -> Option<DimVector> {
        if self.done {
            return None;
        }
        for d in self.current.iter_mut() {
            *d += 1;
            if *d <= self.cap {
                return Some(DimVector(self.current.clone()));
            }
            *d = 0;
        }
        self.done = true;
        None
    }
}

/// Positive roots found by a certified box search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    roots: Vec<DimVector>,
    cap: u32,
}

impl RootSet {
    /// Sorted by height, then in reverse lexicographic order.
    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, b: &DimVector) -> bool {
        self.roots.contains(b)
    }

    pub fn max_height(&self) -> i64 {
        self.roots.iter().map(DimVector::total).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse;
    use proptest::prelude::*;

    fn example_one() -> UnitForm {
        UnitForm::of_bound_quiver(
            &parse("vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\nrelation 1*a,b\n").unwrap(),
        )
    }

    fn v(x: &[i64]) -> DimVector {
        DimVector(x.to_vec())
    }

    #[test]
    fn example_one_coefficients() {
        let t = example_one();
        assert_eq!(t.table(), vec![vec![0, -1, 1], vec![0, 0, -1], vec![0, 0, 0]]);
        assert_eq!(t.evaluate(&v(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(t.evaluate(&v(&[1, 1, 0])).unwrap(), 1);
        for i in 0..3 {
            assert_eq!(t.evaluate(&DimVector::simple(3, i)).unwrap(), 1);
        }
    }

    #[test]
    fn example_four_coefficients() {
        let bq = parse(
            "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a1 1 2\narrow a2 2 4\narrow b1 1 3\narrow b2 3 4\n\
             relation 1*a1,a2\nrelation 1*b1,b2\n",
        )
        .unwrap();
        let t = UnitForm::of_bound_quiver(&bq);
        assert_eq!(t.coeff(0, 3), 2);
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(t.coeff(i, j), -1);
        }
        assert_eq!(t.coeff(3, 0), 0);
    }

    #[test]
    fn edgeless_form_is_diagonal() {
        let t = UnitForm::of_bound_quiver(&parse("vertex 1\nvertex 2\n").unwrap());
        assert_eq!(t.table(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn bilinear_forms_and_nu() {
        let t = example_one();
        let a = |i| DimVector::simple(3, i);
        assert_eq!(t.bilinear(&a(0), &a(2)).unwrap(), 1);
        assert_eq!(t.bilinear0(&a(0), &a(2)).unwrap(), 0);
        assert_eq!(t.bilinear(&a(0), &a(1)).unwrap() - t.bilinear(&a(1), &a(0)).unwrap(), -1);
        for i in 0..3 {
            assert_eq!(t.bilinear(&a(i), &a(i)).unwrap(), 1);
            assert_eq!(t.nu(&a(i), &a(i)).unwrap(), 1);
            assert_eq!(t.ad_exponent(&a(i), &a(i)).unwrap(), 0);
        }
        assert_eq!(t.nu(&a(0), &a(1)).unwrap(), 0);
        assert_eq!(t.nu(&a(1), &a(0)).unwrap(), 0);
        assert_eq!(t.ad_exponent(&a(0), &a(1)).unwrap(), -1);
        assert_eq!(t.ad_exponent(&a(0), &v(&[1, 1, 0])).unwrap(), 1);
        assert_eq!(
            t.bilinear(&a(0), &v(&[1, 0])),
            Err(UnitFormError::IndexMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn roots_of_example_one() {
        let roots = example_one().positive_roots(6).unwrap();
        let mut got: Vec<Vec<i64>> = roots.roots().iter().map(|r| r.0.clone()).collect();
        got.sort();
        assert_eq!(
            got,
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 0]]
        );
        assert_eq!(roots.max_height(), 2);
    }

    #[test]
    fn roots_of_commutative_square() {
        let bq = parse(
            "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a1 1 2\narrow a2 2 4\narrow b1 1 3\narrow b2 3 4\n\
             relation 1*a1,a2 + -1*b1,b2\n",
        )
        .unwrap();
        let roots = UnitForm::of_bound_quiver(&bq).positive_roots(6).unwrap();
        assert!(roots.contains(&v(&[1, 1, 1, 1])));
        assert!(!roots.contains(&v(&[1, 1, 0, 1])));
    }

    #[test]
    fn single_vertex_and_cap_certificate() {
        let t = UnitForm::new(&[vec![0]]);
        assert_eq!(t.positive_roots(6).unwrap().roots(), &[v(&[1])]);
        assert!(matches!(t.positive_roots(1), Err(UnitFormError::CapTooSmall { .. })));
        assert!(t.is_weakly_positive(6));
    }

    #[test]
    fn weak_positivity() {
        assert!(example_one().is_weakly_positive(6));
        let t = UnitForm::new(&[vec![0, -2], vec![0, 0]]);
        assert!(!t.is_weakly_positive(6));
        assert_eq!(t.evaluate(&v(&[1, 1])).unwrap(), 0);
    }

    fn arb_form() -> impl Strategy<Value = UnitForm> {
        (1usize..5).prop_flat_map(|n| {
            prop::collection::vec(-2i64..3, n * n).prop_map(move |c| {
                let table: Vec<Vec<i64>> = c.chunks(n).map(<[i64]>::to_vec).collect();
                UnitForm::new(&table)
            })
        })
    }

    fn arb_pair(n: usize) -> impl Strategy<Value = (DimVector, DimVector)> {
        (
            prop::collection::vec(-3i64..4, n).prop_map(DimVector),
            prop::collection::vec(-3i64..4, n).prop_map(DimVector),
        )
    }

    proptest! {
        #[test]
        fn form_identities((t, (b, c)) in arb_form().prop_flat_map(|t| { let n = t.variables(); (Just(t), arb_pair(n)) })) {
            prop_assert_eq!(t.evaluate(&b).unwrap(), t.bilinear(&b, &b).unwrap());
            prop_assert_eq!(t.ad_exponent(&b, &c).unwrap(), -t.ad_exponent(&c, &b).unwrap());
            let n = t.variables();
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { 1 } else { t.coeff(i, j) };
                    prop_assert_eq!(t.bilinear(&DimVector::simple(n, i), &DimVector::simple(n, j)).unwrap(), expected);
                }
            }
        }

        #[test]
        fn unbound_forms_have_matching_pairings((t, (b, c)) in arb_form().prop_flat_map(|t| { let n = t.variables(); (Just(t), arb_pair(n)) })) {
            // clamp to the shape of an unbound quiver form: coefficients in {-1, 0}
            let table: Vec<Vec<i64>> = t.table().iter().map(|row| row.iter().map(|&a| a.clamp(-1, 0)).collect()).collect();
            let t = UnitForm::new(&table);
            prop_assert_eq!(t.bilinear(&b, &c).unwrap(), t.bilinear0(&b, &c).unwrap());
            let nu = t.nu(&b, &c).unwrap();
            prop_assert!(nu == 0 || nu == t.bilinear0(&b, &c).unwrap());
        }

        #[test]
        fn certified_roots_are_stable(t in arb_form()) {
            if let Ok(roots) = t.positive_roots(4) {
                if t.is_weakly_positive(4) {
                    let wider = t.positive_roots(5).unwrap();
                    prop_assert_eq!(wider.roots(), roots.roots());
                }
            }
        }
    }
}
