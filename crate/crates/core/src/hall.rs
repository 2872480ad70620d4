//! Hall numbers, the (twisted) Hall product on isomorphism classes, and the
//! checks comparing the Hall algebra with a presentation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::MatrixFp;
use crate::presentation::{specialize, IdealSlices, Presentation, PresentationError};
use crate::quiver::BoundQuiver;
use crate::rep::{
    dim_hom, end_aut_counts, enumerate_subreps, IndecompTable, RepError, Representation,
};
use crate::scalar::{QSqrt, Rational, Ring};
use crate::unit_form::{DimVector, UnitForm, UnitFormError};

/// An isomorphism class: the multiplicity of each indecomposable, indexed
/// like the table.
pub type ClassId = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HallError {
    #[error("degree {degree} exceeds the table bound {bound}")]
    DegreeOutOfBounds { degree: DimVector, bound: i64 },
    #[error("Hall number for {what} is not an integer: {value}")]
    NonIntegral { what: String, value: String },
    #[error("no simple representation at vertex {0} in the table")]
    MissingSimple(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    UnitForm(#[from] UnitFormError),
}

/// A finite combination of classes with coefficients in `Q(sqrt q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HallElement {
    q: u64,
    terms: BTreeMap<ClassId, QSqrt>,
}

impl HallElement {
    pub fn zero(q: u64) -> Self {
        HallElement { q, terms: BTreeMap::new() }
    }

    pub fn basis(class: ClassId, q: u64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(class, QSqrt::from_int(1, q));
        HallElement { q, terms }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<ClassId, QSqrt> {
        &self.terms
    }

    pub fn coeff(&self, class: &ClassId) -> QSqrt {
        self.terms.get(class).cloned().unwrap_or_else(|| QSqrt::zero(self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, class: ClassId, c: QSqrt) {
        if c.is_zero_elem() {
            return;
        }
        match self.terms.get_mut(&class) {
            Some(x) => {
                let s = x.plus(&c);
                if s.is_zero_elem() {
                    self.terms.remove(&class);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(class, c);
            }
        }
    }

    pub fn plus(&self, o: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (c, x) in &o.terms {
            out.add_term(c.clone(), x.clone());
        }
        out
    }

    pub fn scale(&self, s: &QSqrt) -> HallElement {
        let mut out = HallElement::zero(self.q);
        for (c, x) in &self.terms {
            out.add_term(c.clone(), x.times(s));
        }
        out
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, x)| format!("({x})[{}]", c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityReport {
    pub twisted: bool,
    pub triples: usize,
    pub failures: Vec<[ClassId; 3]>,
}

impl AssociativityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `F^{M+S_i}_{S_i,M}` against `q^e F^{M+S_i}_{M,S_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallconCheck {
    pub indecomposable: usize,
    pub vertex: usize,
    pub simple_first: u64,
    pub simple_last: u64,
    pub exponent: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCheck {
    pub degree: DimVector,
    pub presentation: usize,
    pub hall: usize,
}

/// A generated relation whose image under `e_i -> [S_i]` is not zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonvanishingRelation {
    pub index: usize,
    pub sequence: Vec<usize>,
    pub degree: DimVector,
    pub relation: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoReport {
    pub q: u64,
    pub relations_checked: usize,
    pub nonvanishing: Vec<NonvanishingRelation>,
    pub homomorphism_verified: bool,
    /// `None` at `q = 2`, where only the homomorphism is asserted.
    pub isomorphism_verified: Option<bool>,
    pub dimensions: Vec<DimensionCheck>,
}

pub const DEFAULT_DEGREE_BOUND: i64 = 6;

/// A degree-truncated Hall algebra with cached structure constants.
pub struct HallAlgebra {
    bq: BoundQuiver,
    table: IndecompTable,
    form: UnitForm,
    q: u64,
    bound: i64,
    cap: u128,
    reps: HashMap<ClassId, Representation>,
    tallies: HashMap<(ClassId, Vec<usize>), HashMap<(ClassId, ClassId), u64>>,
    products: HashMap<(ClassId, ClassId, bool), HallElement>,
    words: HashMap<Vec<usize>, HallElement>,
}

impl fmt::Debug for HallAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HallAlgebra")
            .field("q", &self.q)
            .field("bound", &self.bound)
            .field("indecomposables", &self.table.len())
            .finish()
    }
}

impl HallAlgebra {
    pub fn new(bq: &BoundQuiver, table: &IndecompTable, bound: i64, cap: u128) -> Self {
        HallAlgebra {
            form: UnitForm::of_bound_quiver(bq),
            bq: bq.clone(),
            table: table.clone(),
            q: table.p as u64,
            bound,
            cap,
            reps: HashMap::new(),
            tallies: HashMap::new(),
            products: HashMap::new(),
            words: HashMap::new(),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn table(&self) -> &IndecompTable {
        &self.table
    }

    pub fn form(&self) -> &UnitForm {
        &self.form
    }

    pub fn zero_class(&self) -> ClassId {
        vec![0; self.table.len()]
    }

    pub fn class_dim(&self, c: &ClassId) -> DimVector {
        let mut d = DimVector::zero(self.bq.vertex_count());
        for (k, &m) in c.iter().enumerate() {
            d = d.add(&self.table.entries[k].dim.scale(m as i64));
        }
        d
    }

    pub fn simple_class(&self, i: usize) -> Result<ClassId, HallError> {
        let k = self
            .table
            .index_of_dim(&DimVector::simple(self.bq.vertex_count(), i))
            .ok_or(HallError::MissingSimple(i))?;
        let mut c = self.zero_class();
        c[k] = 1;
        Ok(c)
    }

    pub fn indecomposable_class(&self, k: usize) -> ClassId {
        let mut c = self.zero_class();
        c[k] = 1;
        c
    }

    pub fn class_of(&self, r: &Representation) -> Result<ClassId, HallError> {
        Ok(self.table.decompose(&self.bq, r)?)
    }

    pub fn representative(&mut self, c: &ClassId) -> Representation {
        if let Some(r) = self.reps.get(c) {
            return r.clone();
        }
        let r = self.table.assemble(&self.bq, c);
        self.reps.insert(c.clone(), r.clone());
        r
    }

    /// Every class of dimension vector `d`.
    pub fn classes_of_degree(&self, d: &DimVector) -> Vec<ClassId> {
        let mut out = Vec::new();
        let mut cur = self.zero_class();
        self.classes_rec(0, d.clone(), &mut cur, &mut out);
        out
    }

    fn classes_rec(&self, k: usize, rest: DimVector, cur: &mut ClassId, out: &mut Vec<ClassId>) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        if k == self.table.len() {
            return;
        }
        let dim = &self.table.entries[k].dim;
        let mut r = rest;
        let mut m = 0;
        loop {
            cur[k] = m;
            self.classes_rec(k + 1, r.clone(), cur, out);
            r = r.sub(dim);
            if !r.is_nonnegative() {
                break;
            }
            m += 1;
        }
        cur[k] = 0;
    }

    /// All classes with total dimension at most `max_total`.
    pub fn classes_up_to(&self, max_total: i64) -> Vec<ClassId> {
        let mut out = vec![self.zero_class()];
        for d in crate::presentation::degrees_up_to(self.bq.vertex_count(), max_total) {
            out.extend(self.classes_of_degree(&d));
        }
        out
    }

    /// Number of ways to write `d` as a multiset of the indecomposables'
    /// dimension vectors.
    pub fn hall_graded_dim(&self, d: &DimVector) -> usize {
        let dims = self.table.dims();
        fn count(dims: &[DimVector], k: usize, rest: &DimVector) -> usize {
            if rest.is_zero() {
                return 1;
            }
            if k == dims.len() {
                return 0;
            }
            let mut total = 0;
            let mut r = rest.clone();
            while r.is_nonnegative() {
                total += count(dims, k + 1, &r);
                r = r.sub(&dims[k]);
            }
            total
        }
        count(&dims, 0, d)
    }

    fn check_degree(&self, d: &DimVector) -> Result<(), HallError> {
        if d.total() > self.bound {
            return Err(HallError::DegreeOutOfBounds {
                degree: d.clone(),
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// For each (quotient class, sub class) pair, the number of
    /// subrepresentations of `R` of dimension `dn` realising it.
    fn tally(&mut self, r: &ClassId, dn: &DimVector) -> Result<&HashMap<(ClassId, ClassId), u64>, HallError> {
        let key = (r.clone(), dn.as_usize());
        if !self.tallies.contains_key(&key) {
            let rep = self.representative(r);
            let mut counts: HashMap<(ClassId, ClassId), u64> = HashMap::new();
            for spaces in enumerate_subreps(&self.bq, &rep, &key.1, self.cap)? {
                let sub = rep.subrep(&self.bq, &spaces).expect("enumerated subspaces are closed");
                let quot = rep.quotient(&self.bq, &spaces);
                let n = self.table.decompose(&self.bq, &sub)?;
                let m = self.table.decompose(&self.bq, &quot)?;
                *counts.entry((m, n)).or_default() += 1;
            }
            self.tallies.insert(key.clone(), counts);
        }
        Ok(&self.tallies[&key])
    }

    /// `F^R_{M,N}`: subrepresentations `X` of `R` with `X ~ N`, `R/X ~ M`.
    pub fn hall_number(&mut self, m: &ClassId, n: &ClassId, r: &ClassId) -> Result<u64, HallError> {
        let (dm, dn, dr) = (self.class_dim(m), self.class_dim(n), self.class_dim(r));
        if dm.add(&dn) != dr {
            return Ok(0);
        }
        let t = self.tally(r, &dn)?;
        Ok(t.get(&(m.clone(), n.clone())).copied().unwrap_or(0))
    }

    fn aut_size(&mut self, c: &ClassId) -> Result<u128, HallError> {
        if let Some(a) = self.table.aut_size(c) {
            return Ok(a);
        }
        let rep = self.representative(c);
        Ok(end_aut_counts(&self.bq, &rep, self.cap)?.1)
    }

    /// `F^R_{M,N}` from extensions: counts block-triangular middle terms
    /// isomorphic to `R` and applies
    /// `F = |Ext(M,N)_R| / |Hom(M,N)| * |Aut R| / (|Aut M| |Aut N|)`.
    pub fn hall_number_via_ext(&mut self, m: &ClassId, n: &ClassId, r: &ClassId) -> Result<u64, HallError> {
        let (dm, dn, dr) = (self.class_dim(m), self.class_dim(n), self.class_dim(r));
        if dm.add(&dn) != dr {
            return Ok(0);
        }
        let v = self.representative(m);
        let w = self.representative(n);
        let p = self.table.p;
        let arrows = self.bq.quiver().arrows().to_vec();
        let shapes: Vec<(usize, usize)> = arrows.iter().map(|a| (w.dims()[a.target], v.dims()[a.source])).collect();
        let unknowns: usize = shapes.iter().map(|(a, b)| a * b).sum();
        let middle = |c: &[u32]| -> Representation {
            let mut off = 0;
            let maps = arrows
                .iter()
                .zip(&shapes)
                .enumerate()
                .map(|(k, (_, &(rr, cc)))| {
                    let block = MatrixFp::from_data(rr, cc, p, c[off..off + rr * cc].to_vec());
                    off += rr * cc;
                    let zero = MatrixFp::zeros(v.maps()[k].rows(), w.maps()[k].cols(), p);
                    MatrixFp::block(&w.maps()[k], &block, &zero, &v.maps()[k])
                })
                .collect();
            let dims = w.dims().iter().zip(v.dims()).map(|(a, b)| a + b).collect();
            Representation::new(&self.bq, dims, maps, p).expect("block shapes match")
        };
        // cocycles: the relations, linear in c
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(unknowns);
        for u in 0..unknowns {
            let mut c = vec![0u32; unknowns];
            c[u] = 1;
            columns.push(relation_values(&self.bq, &middle(&c)));
        }
        let z = transpose_to_matrix(&columns, p).kernel();
        // coboundaries: h -> W h_s - h_t V
        let mut bounds: Vec<Vec<u32>> = Vec::new();
        let h_shapes: Vec<(usize, usize)> = w.dims().iter().zip(v.dims()).map(|(&a, &b)| (a, b)).collect();
        for (vertex, &(rr, cc)) in h_shapes.iter().enumerate() {
            for e in 0..rr * cc {
                let mut h = MatrixFp::zeros(rr, cc, p);
                h.set(e / cc, e % cc, 1);
                let mut row = Vec::with_capacity(unknowns);
                for (k, a) in arrows.iter().enumerate() {
                    let (sr, sc) = shapes[k];
                    let lhs = if a.source == vertex { w.maps()[k].mul(&h) } else { MatrixFp::zeros(sr, sc, p) };
                    let rhs = if a.target == vertex { h.mul(&v.maps()[k]) } else { MatrixFp::zeros(sr, sc, p) };
                    row.extend_from_slice(lhs.sub(&rhs).data());
                }
                bounds.push(row);
            }
        }
        let b_dim = transpose_to_matrix(&bounds, p).rank();
        let h_total: usize = h_shapes.iter().map(|(a, b)| a * b).sum();
        let hom_dim = h_total - b_dim;
        debug_assert_eq!(hom_dim, dim_hom(&self.bq, &v, &w));
        let size = (p as u128).checked_pow(z.len() as u32).unwrap_or(u128::MAX);
        if size > self.cap {
            return Err(RepError::CapExceeded {
                what: format!("cocycles for {dm} by {dn}"),
                size,
                cap: self.cap,
            }
            .into());
        }
        let mut count: u128 = 0;
        let mut digits = vec![0u32; z.len()];
        loop {
            let mut c = vec![0u32; unknowns];
            for (d, basis) in digits.iter().zip(&z) {
                if *d != 0 {
                    for (x, &b) in c.iter_mut().zip(basis) {
                        *x = (*x + d * b) % p;
                    }
                }
            }
            if self.table.decompose(&self.bq, &middle(&c))? == *r {
                count += 1;
            }
            if !crate::gf::advance(&mut digits, p) {
                break;
            }
        }
        let num = BigInt::from(count) * BigInt::from(self.aut_size(r)?);
        let den = BigInt::from(p).pow((b_dim + hom_dim) as u32)
            * BigInt::from(self.aut_size(m)?)
            * BigInt::from(self.aut_size(n)?);
        let value = Rational::new(num, den);
        if !value.is_integer() {
            return Err(HallError::NonIntegral {
                what: format!("{dm} by {dn}"),
                value: value.to_string(),
            });
        }
        Ok(u64::try_from(value.to_integer()).expect("Hall number fits in u64"))
    }

    /// `[M] * [N]`, twisted by `sqrt(q)^<m,n>` when `twisted`.
    pub fn basis_product(&mut self, m: &ClassId, n: &ClassId, twisted: bool) -> Result<HallElement, HallError> {
        let key = (m.clone(), n.clone(), twisted);
        if let Some(x) = self.products.get(&key) {
            return Ok(x.clone());
        }
        let (dm, dn) = (self.class_dim(m), self.class_dim(n));
        let dr = dm.add(&dn);
        self.check_degree(&dr)?;
        let e = if twisted { self.form.bilinear(&dm, &dn)? } else { 0 };
        let twist = QSqrt::sqrt_pow(e, self.q);
        let mut out = HallElement::zero(self.q);
        let targets = if dr.is_zero() { vec![self.zero_class()] } else { self.classes_of_degree(&dr) };
        for r in targets {
            let f = self.hall_number(m, n, &r)?;
            if f > 0 {
                out.add_term(r, twist.scale_int(f as i64));
            }
        }
        self.products.insert(key, out.clone());
        Ok(out)
    }

    pub fn product(&mut self, x: &HallElement, y: &HallElement, twisted: bool) -> Result<HallElement, HallError> {
        let mut out = HallElement::zero(self.q);
        for (m, a) in &x.terms {
            for (n, b) in &y.terms {
                let p = self.basis_product(m, n, twisted)?;
                out = out.plus(&p.scale(&a.times(b)));
            }
        }
        Ok(out)
    }

    /// Whether every coefficient of `[M] * [N]` lies in `Q` or in
    /// `sqrt(q) Q` according to the parity of the twist exponent.
    pub fn coefficient_parity(&mut self, m: &ClassId, n: &ClassId) -> Result<bool, HallError> {
        let e = self.form.bilinear(&self.class_dim(m), &self.class_dim(n))?;
        let prod = self.basis_product(m, n, true)?;
        Ok(prod
            .terms
            .values()
            .all(|c| if e % 2 == 0 { c.b.is_zero() } else { c.a.is_zero() }))
    }

    /// `(x y) z = x (y z)` on all basis triples of total degree at most
    /// `max_total`.
    pub fn verify_associativity(&mut self, max_total: i64, twisted: bool) -> Result<AssociativityReport, HallError> {
        let classes = self.classes_up_to(max_total);
        let dims: Vec<i64> = classes.iter().map(|c| self.class_dim(c).total()).collect();
        let mut report = AssociativityReport {
            twisted,
            triples: 0,
            failures: Vec::new(),
        };
        for (a, x) in classes.iter().enumerate() {
            for (b, y) in classes.iter().enumerate() {
                if dims[a] + dims[b] > max_total {
                    continue;
                }
                let xy = self.basis_product(x, y, twisted)?;
                for (c, z) in classes.iter().enumerate() {
                    if dims[a] + dims[b] + dims[c] > max_total {
                        continue;
                    }
                    report.triples += 1;
                    let left = self.product(&xy, &HallElement::basis(z.clone(), self.q), twisted)?;
                    let yz = self.basis_product(y, z, twisted)?;
                    let right = self.product(&HallElement::basis(x.clone(), self.q), &yz, twisted)?;
                    if left != right {
                        report.failures.push([x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
        }
        Ok(report)
    }

    /// Checks `F^{M+S_i}_{S_i,M} = q^{nu(m,a_i) - nu(a_i,m)} F^{M+S_i}_{M,S_i}`
    /// for every indecomposable `M` with `|m| + 1 <= max_total`.
    pub fn verify_hallcon(&mut self, max_total: i64) -> Result<Vec<HallconCheck>, HallError> {
        let n = self.bq.vertex_count();
        let mut out = Vec::new();
        for k in 0..self.table.len() {
            let dm = self.table.entries[k].dim.clone();
            if dm.total() + 1 > max_total {
                continue;
            }
            let mc = self.indecomposable_class(k);
            for i in 0..n {
                let si = self.simple_class(i)?;
                let r: ClassId = mc.iter().zip(&si).map(|(a, b)| a + b).collect();
                let ai = DimVector::simple(n, i);
                let exponent = self.form.nu(&dm, &ai)? - self.form.nu(&ai, &dm)?;
                let simple_first = self.hall_number(&si, &mc, &r)?;
                let simple_last = self.hall_number(&mc, &si, &r)?;
                let q = BigInt::from(self.q);
                let (lhs, rhs) = if exponent >= 0 {
                    (BigInt::from(simple_first), q.pow(exponent as u32) * BigInt::from(simple_last))
                } else {
                    (q.pow((-exponent) as u32) * BigInt::from(simple_first), BigInt::from(simple_last))
                };
                out.push(HallconCheck {
                    indecomposable: k,
                    vertex: i,
                    simple_first,
                    simple_last,
                    exponent,
                    pass: lhs == rhs,
                });
            }
        }
        Ok(out)
    }

    /// `[S_{w_1}] * ... * [S_{w_k}]`, evaluated right to left and memoised.
    pub fn word_image(&mut self, word: &[usize]) -> Result<HallElement, HallError> {
        if word.is_empty() {
            return Ok(HallElement::basis(self.zero_class(), self.q));
        }
        if let Some(x) = self.words.get(word) {
            return Ok(x.clone());
        }
        let rest = self.word_image(&word[1..])?;
        let s = HallElement::basis(self.simple_class(word[0])?, self.q);
        let out = self.product(&s, &rest, true)?;
        self.words.insert(word.to_vec(), out.clone());
        Ok(out)
    }

    /// The image under `e_i -> [S_i]` of an element specialised at `v = sqrt q`.
    pub fn rho(&mut self, x: &crate::presentation::NcElement<QSqrt>) -> Result<HallElement, HallError> {
        let mut out = HallElement::zero(self.q);
        for (w, c) in x.terms() {
            let img = self.word_image(&w.0)?;
            out = out.plus(&img.scale(c));
        }
        Ok(out)
    }

    /// Checks that every relation maps to zero and, for `q != 2`, that the
    /// graded dimensions agree for all degrees of total at most `max_total`.
    pub fn rho_verify(&mut self, presentation: &Presentation, max_total: i64) -> Result<RhoReport, HallError> {
        let t = QSqrt::sqrt(self.q);
        let mut nonvanishing = Vec::new();
        for (index, rel) in presentation.relations().iter().enumerate() {
            let image = self.rho(&specialize(&rel.element, &t)?)?;
            if !image.is_zero() {
                let classes: Vec<String> = image
                    .terms()
                    .iter()
                    .map(|(c, x)| format!("({x})[{}]", self.render_class(c)))
                    .collect();
                nonvanishing.push(NonvanishingRelation {
                    index,
                    sequence: rel.sequence.iter().map(|i| i + 1).collect(),
                    degree: rel.degree.clone(),
                    relation: rel.element.render(presentation.labels()),
                    image: classes.join(" + "),
                });
            }
        }
        let mut report = RhoReport {
            q: self.q,
            relations_checked: presentation.relations().len(),
            homomorphism_verified: nonvanishing.is_empty(),
            nonvanishing,
            isomorphism_verified: None,
            dimensions: Vec::new(),
        };
        if self.q == 2 {
            return Ok(report);
        }
        let mut slices = IdealSlices::at(presentation, &t)?;
        for d in crate::presentation::degrees_up_to(self.bq.vertex_count(), max_total) {
            let pres = slices.dimension(&d)?;
            let hall = self.hall_graded_dim(&d);
            report.dimensions.push(DimensionCheck {
                degree: d,
                presentation: pres,
                hall,
            });
        }
        report.isomorphism_verified = Some(report.dimensions.iter().all(|c| c.presentation == c.hall));
        Ok(report)
    }

    /// Renders a class as a sum of indecomposable dimension vectors.
    pub fn render_class(&self, c: &ClassId) -> String {
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| {
                let d = self.table.entries[k].dim.to_string();
                if m == 1 {
                    d
                } else {
                    format!("{d}^{m}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// All relation matrices of `rep`, flattened and concatenated.
fn relation_values(bq: &BoundQuiver, rep: &Representation) -> Vec<u32> {
    let p = rep.modulus();
    let mut out = Vec::new();
    for r in bq.relations() {
        let mut total = MatrixFp::zeros(rep.dims()[r.target], rep.dims()[r.source], p);
        for (c, path) in &r.terms {
            let k = ((*c % p as i64) + p as i64) as u32 % p;
            total = total.add(&rep.path_map(path).scale(k));
        }
        out.extend_from_slice(total.data());
    }
    out
}

/// The matrix whose columns are `cols`.
fn transpose_to_matrix(cols: &[Vec<u32>], p: u32) -> MatrixFp {
    let rows = cols.first().map_or(0, Vec::len);
    let mut m = MatrixFp::zeros(rows, cols.len(), p);
    for (c, col) in cols.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse;
    use crate::rep::{enumerate_indecomposables, Caps};

    fn algebra(text: &str, p: u32, bound: i64) -> HallAlgebra {
        let bq = parse(text).unwrap();
        let t = UnitForm::of_bound_quiver(&bq);
        let table = enumerate_indecomposables(&bq, p, &t.positive_roots(6).unwrap(), &Caps::default(), false).unwrap();
        HallAlgebra::new(&bq, &table, bound, 10_000_000)
    }

    const A2: &str = "vertex 1\nvertex 2\narrow a 1 2\n";
    const EX1: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\nrelation 1*a,b\n";

    #[test]
    fn hall_numbers_on_a2() {
        let mut h = algebra(A2, 3, 6);
        let s1 = h.simple_class(0).unwrap();
        let s2 = h.simple_class(1).unwrap();
        let p = h.classes_of_degree(&DimVector(vec![1, 1])).into_iter().find(|c| c.iter().sum::<u32>() == 1).unwrap();
        let split: ClassId = s1.iter().zip(&s2).map(|(a, b)| a + b).collect();
        assert_eq!(h.hall_number(&s1, &s2, &p).unwrap(), 1);
        assert_eq!(h.hall_number(&s2, &s1, &p).unwrap(), 0);
        assert_eq!(h.hall_number(&s1, &s2, &split).unwrap(), 1);
        assert_eq!(h.hall_number(&s2, &s1, &split).unwrap(), 1);
        let s11: ClassId = s1.iter().map(|a| 2 * a).collect();
        assert_eq!(h.hall_number(&s1, &s1, &s11).unwrap(), 4);
        assert_eq!(h.hall_number(&s1, &s1, &p).unwrap(), 0);
        for (m, n, r) in [(&s1, &s2, &p), (&s2, &s1, &split), (&s1, &s2, &split), (&s1, &s1, &s11)] {
            assert_eq!(h.hall_number_via_ext(m, n, r).unwrap(), h.hall_number(m, n, r).unwrap());
        }
    }

    #[test]
    fn products_on_a2() {
        let mut h = algebra(A2, 3, 6);
        let s1 = h.simple_class(0).unwrap();
        let s2 = h.simple_class(1).unwrap();
        let prod = h.basis_product(&s1, &s2, true).unwrap();
        assert_eq!(prod.terms().len(), 2);
        let inv_sqrt = QSqrt::sqrt_pow(-1, 3);
        assert!(prod.terms().values().all(|c| *c == inv_sqrt));
        let sq = h.basis_product(&s1, &s1, true).unwrap();
        let s11: ClassId = s1.iter().map(|a| 2 * a).collect();
        assert_eq!(sq.coeff(&s11), QSqrt::sqrt(3).scale_int(4));
        let zero = HallElement::basis(h.zero_class(), 3);
        let x = HallElement::basis(s2.clone(), 3);
        assert_eq!(h.product(&zero, &x, true).unwrap(), x);
        assert!(h.coefficient_parity(&s1, &s2).unwrap());
        let big: ClassId = s1.iter().map(|a| 7 * a).collect();
        assert!(matches!(
            h.basis_product(&big, &s1, true),
            Err(HallError::DegreeOutOfBounds { .. })
        ));
    }

    #[test]
    fn associativity_on_a2() {
        let mut h = algebra(A2, 3, 6);
        let rep = h.verify_associativity(4, true).unwrap();
        assert!(rep.pass(), "{:?}", rep.failures);
        assert!(rep.triples > 0);
        assert!(h.verify_associativity(3, false).unwrap().pass());
    }

    #[test]
    fn hallcon_on_a2_and_example_one() {
        let mut h = algebra(A2, 3, 6);
        let checks = h.verify_hallcon(6).unwrap();
        assert!(checks.iter().all(|c| c.pass));
        let p_idx = h.table().index_of_dim(&DimVector(vec![1, 1])).unwrap();
        let c = checks.iter().find(|c| c.indecomposable == p_idx && c.vertex == 0).unwrap();
        assert_eq!((c.simple_first, c.simple_last, c.exponent), (3, 1, 1));
        let mut h1 = algebra(EX1, 3, 6);
        assert!(h1.verify_hallcon(6).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn graded_dimensions() {
        let h = algebra(EX1, 3, 6);
        assert_eq!(h.hall_graded_dim(&DimVector(vec![1, 1, 1])), 3);
        assert_eq!(h.hall_graded_dim(&DimVector(vec![1, 0, 0])), 1);
        assert_eq!(h.classes_of_degree(&DimVector(vec![1, 1, 1])).len(), 3);
    }
}
