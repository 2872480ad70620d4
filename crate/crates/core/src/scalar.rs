//! Exact scalars used by the presentation and Hall modules.
//!
//! - [`Rational`] is `Q`
//! - [`QSqrt`] is `{a + b sqrt(q) : a, b in Q}` for a prime `q`
//! - [`RatFunc`] is `Q(v)`, reduced quotients of polynomials
//! - [`LaurentPoly`] is `Q[v, 1/v]`, a ring only
//!
//! Method names avoid the `std::ops` ones so that `BigRational`, which
//! implements both, is never ambiguous.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Embeds a rational, taking any ring parameters (such as `q`) from `self`.
    fn rational_like(&self, r: &Rational) -> Self;
}

pub trait Field: Ring {
    /// Panics on zero.
    fn inverse(&self) -> Self;
}

impl Ring for Rational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
}

impl Field for Rational {
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
}

/// `a + b sqrt(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt {
    pub a: Rational,
    pub b: Rational,
    q: u64,
}

impl QSqrt {
    pub fn new(a: Rational, b: Rational, q: u64) -> Self {
        QSqrt { a, b, q }
    }

    pub fn zero(q: u64) -> Self {
        QSqrt::new(Rational::zero(), Rational::zero(), q)
    }

    pub fn from_int(n: i64, q: u64) -> Self {
        QSqrt::new(rat(n), Rational::zero(), q)
    }

    pub fn sqrt(q: u64) -> Self {
        QSqrt::new(Rational::zero(), Rational::one(), q)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `sqrt(q)^e` for any integer `e`.
    pub fn sqrt_pow(e: i64, q: u64) -> Self {
        let half = e.div_euclid(2);
        let qr = rat(q as i64);
        let base = if half >= 0 {
            num_traits::pow(qr, half as usize)
        } else {
            num_traits::pow(qr.recip(), (-half) as usize)
        };
        if e.rem_euclid(2) == 0 {
            QSqrt::new(base, Rational::zero(), q)
        } else {
            QSqrt::new(Rational::zero(), base, q)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        QSqrt::new(&self.a * rat(k), &self.b * rat(k), self.q)
    }
}

impl Ring for QSqrt {
    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        debug_assert_eq!(self.q, o.q);
        QSqrt::new(&self.a + &o.a, &self.b + &o.b, self.q)
    }
    fn minus(&self, o: &Self) -> Self {
        debug_assert_eq!(self.q, o.q);
        QSqrt::new(&self.a - &o.a, &self.b - &o.b, self.q)
    }
    fn times(&self, o: &Self) -> Self {
        debug_assert_eq!(self.q, o.q);
        let q = rat(self.q as i64);
        QSqrt::new(
            &self.a * &o.a + q * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
            self.q,
        )
    }
    fn negated(&self) -> Self {
        QSqrt::new(-&self.a, -&self.b, self.q)
    }
    fn rational_like(&self, r: &Rational) -> Self {
        QSqrt::new(r.clone(), Rational::zero(), self.q)
    }
}

impl Field for QSqrt {
    fn inverse(&self) -> Self {
        assert!(!self.is_zero_elem(), "inverse of zero");
        let norm = &self.a * &self.a - rat(self.q as i64) * &self.b * &self.b;
        QSqrt::new(&self.a / &norm, -&self.b / &norm, self.q)
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.q),
            (false, false) => write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q),
        }
    }
}

/// Dense polynomial over `Q`, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Poly(vec![c]).trimmed()
    }

    pub fn monomial(deg: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Poly(v).trimmed()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let zero = Rational::zero();
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly(quot).trimmed(), Poly(rem).trimmed())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval<F: Ring>(&self, x: &F) -> F {
        let mut acc = x.rational_like(&Rational::zero());
        for c in self.0.iter().rev() {
            acc = acc.times(x).plus(&x.rational_like(c));
        }
        acc
    }
}

/// An element of `Q(v)` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::constant(Rational::one()),
            };
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().recip();
        num = num.scale(&lead);
        den = den.scale(&lead);
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

impl Ring for RatFunc {
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn negated(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn rational_like(&self, r: &Rational) -> Self {
        RatFunc::from_poly(Poly::constant(r.clone()))
    }
}

impl Field for RatFunc {
    fn inverse(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

/// `sum c_k v^k` over integer exponents `k`, with no stored zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly(BTreeMap<i64, Rational>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `c v^k`.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        LaurentPoly(m)
    }

    pub fn v_pow(k: i64) -> Self {
        Self::monomial(k, Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.0.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.0.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly(self.0.iter().map(|(&k, x)| (k, x * c)).collect())
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPoly(self.0.iter().map(|(&k, x)| (k + by, x.clone())).collect())
    }

    fn accumulate(&mut self, k: i64, c: Rational) {
        let entry = self.0.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let Some(&low) = self.0.keys().next() else {
            return RatFunc::from_poly(Poly::zero());
        };
        let shift = low.min(0);
        let high = *self.0.keys().next_back().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - shift) as usize + 1];
        for (&k, c) in &self.0 {
            coeffs[(k - shift) as usize] = c.clone();
        }
        let num = Poly(coeffs).trimmed();
        RatFunc::new(num, Poly::monomial((-shift) as usize, Rational::one()))
    }

    /// Evaluates at a nonzero field element.
    pub fn evaluate<F: Field>(&self, x: &F) -> F {
        let zero = x.rational_like(&Rational::zero());
        if self.is_zero() {
            return zero;
        }
        let inv = if self.0.keys().next().is_some_and(|&k| k < 0) {
            Some(x.inverse())
        } else {
            None
        };
        let mut acc = zero;
        for (&k, c) in &self.0 {
            let base = if k < 0 { inv.as_ref().unwrap() } else { x };
            let mut pw = x.rational_like(&Rational::one());
            for _ in 0..k.unsigned_abs() {
                pw = pw.times(base);
            }
            acc = acc.plus(&pw.times(&x.rational_like(c)));
        }
        acc
    }
}

impl Ring for LaurentPoly {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &o.0 {
            out.accumulate(k, c.clone());
        }
        out
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&i, a) in &self.0 {
            for (&j, b) in &o.0 {
                out.accumulate(i + j, a * b);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        LaurentPoly(self.0.iter().map(|(&k, c)| (k, -c)).collect())
    }
    fn rational_like(&self, r: &Rational) -> Self {
        LaurentPoly::monomial(0, r.clone())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in self.0.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = if mag.is_one() && k != 0 { String::new() } else { mag.to_string() };
            let sep = if coeff.is_empty() || k == 0 { "" } else { "*" };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}{sep}v")?,
                _ => write!(f, "{coeff}{sep}v^{k}")?,
            }
        }
        Ok(())
    }
}

/// A growing set of linearly independent sparse rows in semi-echelon form:
/// each row is normalised so that its smallest key (the pivot) has
/// coefficient one, and pivots are distinct.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone + Hash, F: Field> {
    rows: HashMap<K, BTreeMap<K, F>>,
}

impl<K: Ord + Clone + Hash, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Echelon { rows: HashMap::new() }
    }
}

impl<K: Ord + Clone + Hash, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BTreeMap<K, F>> {
        self.rows.values()
    }

    /// Reduces `row` until it is zero or its leading key is not a pivot.
    pub fn reduce(&self, mut row: BTreeMap<K, F>) -> BTreeMap<K, F> {
        row.retain(|_, c| !c.is_zero_elem());
        while let Some((lead, c)) = row.first_key_value() {
            let Some(pivot_row) = self.rows.get(lead) else {
                break;
            };
            let factor = c.clone();
            for (k, x) in pivot_row {
                let delta = factor.times(x);
                match row.get_mut(k) {
                    Some(y) => {
                        let updated = y.minus(&delta);
                        if updated.is_zero_elem() {
                            row.remove(k);
                        } else {
                            *y = updated;
                        }
                    }
                    None => {
                        row.insert(k.clone(), delta.negated());
                    }
                }
            }
        }
        row
    }

    pub fn contains(&self, row: BTreeMap<K, F>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: BTreeMap<K, F>) -> bool {
        let row = self.reduce(row);
        let Some((lead, c)) = row.first_key_value() else {
            return false;
        };
        let inv = c.inverse();
        let lead = lead.clone();
        let normalised = row.into_iter().map(|(k, x)| (k, x.times(&inv))).collect();
        self.rows.insert(lead, normalised);
        true
    }
}
