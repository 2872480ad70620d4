//! The free associative algebra on generators `e_i` with Laurent coefficients
//! in `v`, the twisted adjoint action determined by a unit form, the relation
//! ideal it generates, and exact graded dimensions of the quotient.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::scalar::{Echelon, Field, LaurentPoly, QSqrt, RatFunc, Rational, Ring};
use crate::unit_form::{DimVector, RootSet, UnitForm, UnitFormError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("element is not homogeneous")]
    NonHomogeneous,
    #[error("root set does not belong to this form: {0}")]
    IncompleteRoots(String),
    #[error("degree {degree} has length {length}, above the word-length cap {cap}")]
    CapExceeded { degree: DimVector, length: i64, cap: usize },
    #[error("cannot specialise v to zero")]
    ZeroSpecialization,
    #[error(transparent)]
    UnitForm(#[from] UnitFormError),
}

/// A word in the generators, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcWord(pub Vec<usize>);

impl NcWord {
    pub fn content(&self, n: usize) -> DimVector {
        let mut d = vec![0; n];
        for &g in &self.0 {
            d[g] += 1;
        }
        DimVector(d)
    }

    pub fn concat(&self, other: &NcWord) -> NcWord {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        NcWord(w)
    }
}

/// A finite linear combination of words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcElement<C: Ring> {
    terms: BTreeMap<NcWord, C>,
}

impl<C: Ring> Default for NcElement<C> {
    fn default() -> Self {
        NcElement { terms: BTreeMap::new() }
    }
}

impl<C: Ring> NcElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NcWord, C)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: NcWord, c: C) {
        if c.is_zero_elem() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = x.plus(&c);
                if s.is_zero_elem() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<NcWord, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale_by(|c| c.negated()))
    }

    fn scale_by(&self, f: impl Fn(&C) -> C) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn scale(&self, s: &C) -> Self {
        self.scale_by(|c| c.times(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.concat(w2), c1.times(c2));
            }
        }
        out
    }

    /// The common content of all words, `None` for zero.
    pub fn degree(&self, n: usize) -> Result<Option<DimVector>, PresentationError> {
        let mut words = self.terms.keys();
        let Some(first) = words.next() else {
            return Ok(None);
        };
        let d = first.content(n);
        if words.any(|w| w.content(n) != d) {
            return Err(PresentationError::NonHomogeneous);
        }
        Ok(Some(d))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> NcElement<D> {
        NcElement::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

impl NcElement<LaurentPoly> {
    pub fn generator(i: usize) -> Self {
        Self::from_terms([(NcWord(vec![i]), LaurentPoly::one())])
    }

    pub fn word(w: &[usize]) -> Self {
        Self::from_terms([(NcWord(w.to_vec()), LaurentPoly::one())])
    }

    /// Renders with generator names `e<label>`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let word: Vec<String> = w.0.iter().map(|&g| format!("e{}", labels[g])).collect();
            let word = word.join(" ");
            let negative = c.terms().all(|(_, x)| x < &Rational::from_integer(0.into()));
            let body = if negative { c.negated().to_string() } else { c.to_string() };
            let term = if c.terms().count() > 1 {
                format!("({body}) {word}")
            } else if body == "1" {
                word
            } else {
                format!("{body} {word}")
            };
            match (k, negative) {
                (0, true) => out.push_str(&format!("-{term}")),
                (0, false) => out.push_str(&term),
                (_, true) => out.push_str(&format!(" - {term}")),
                (_, false) => out.push_str(&format!(" + {term}")),
            }
        }
        out
    }
}

impl fmt::Display for NcElement<LaurentPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=64).map(|i| i.to_string()).collect();
        write!(f, "{}", self.render(&labels))
    }
}

/// `ad_x(y) = x y - v^e y x`, `e` the twisted-adjoint exponent of the degrees.
pub fn ad(
    form: &UnitForm,
    x: &NcElement<LaurentPoly>,
    y: &NcElement<LaurentPoly>,
) -> Result<NcElement<LaurentPoly>, PresentationError> {
    let n = form.variables();
    let (Some(bx), Some(by)) = (x.degree(n)?, y.degree(n)?) else {
        return Ok(NcElement::zero());
    };
    let e = form.ad_exponent(&bx, &by)?;
    Ok(x.mul(y).minus(&y.mul(x).scale(&LaurentPoly::v_pow(e))))
}

/// `[x, y]_{v^k} = v^k x y - y x`.
pub fn twisted_commutator(
    x: &NcElement<LaurentPoly>,
    y: &NcElement<LaurentPoly>,
    k: i64,
) -> NcElement<LaurentPoly> {
    x.mul(y).scale(&LaurentPoly::v_pow(k)).minus(&y.mul(x))
}

/// Evaluates every coefficient at `v = value`.
pub fn specialize<F: Field>(
    x: &NcElement<LaurentPoly>,
    value: &F,
) -> Result<NcElement<F>, PresentationError> {
    if value.is_zero_elem() {
        return Err(PresentationError::ZeroSpecialization);
    }
    Ok(x.map_coeffs(|c| c.evaluate(value)))
}

pub fn to_generic(x: &NcElement<LaurentPoly>) -> NcElement<RatFunc> {
    x.map_coeffs(LaurentPoly::to_ratfunc)
}

/// One nested twisted-adjoint generator of the relation ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationGenerator {
    /// `(i_1, ..., i_k)` for `ad_{e_{i_1}}(... ad_{e_{i_{k-1}}}(e_{i_k}))`.
    pub sequence: Vec<usize>,
    pub degree: DimVector,
    pub element: NcElement<LaurentPoly>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    form: UnitForm,
    labels: Vec<String>,
    relations: Vec<RelationGenerator>,
}

impl Presentation {
    pub fn form(&self) -> &UnitForm {
        &self.form
    }

    pub fn generators(&self) -> usize {
        self.form.variables()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &[RelationGenerator] {
        &self.relations
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.generators());
        self.labels = labels;
        self
    }

    /// A presentation with hand-written relations, e.g. a listed list
    /// to compare against the generated one.
    pub fn from_relations(form: UnitForm, elements: Vec<NcElement<LaurentPoly>>) -> Result<Self, PresentationError> {
        let n = form.variables();
        let mut relations = Vec::new();
        for element in elements {
            let Some(degree) = element.degree(n)? else {
                continue;
            };
            relations.push(RelationGenerator {
                sequence: Vec::new(),
                degree,
                element,
            });
        }
        Ok(Presentation {
            labels: default_labels(n),
            form,
            relations,
        })
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// All nested adjoint elements whose tail degree is a positive root and whose
/// full degree is not, identically-zero ones discarded.
pub fn generate_relations(form: &UnitForm, roots: &RootSet) -> Result<Presentation, PresentationError> {
    generate_relations_with(form, roots, true)
}

pub fn generate_relations_with(
    form: &UnitForm,
    roots: &RootSet,
    discard_zero: bool,
) -> Result<Presentation, PresentationError> {
    let n = form.variables();
    for r in roots.roots() {
        if r.len() != n || form.evaluate(r)? != 1 {
            return Err(PresentationError::IncompleteRoots(format!("{r} is not a root of the form")));
        }
    }
    for i in 0..n {
        if !roots.contains(&DimVector::simple(n, i)) {
            return Err(PresentationError::IncompleteRoots(format!("simple root {} missing", i + 1)));
        }
    }
    let mut relations = Vec::new();
    for k in 0..n {
        extend_tail(
            form,
            roots,
            vec![k],
            &NcElement::generator(k),
            &DimVector::simple(n, k),
            discard_zero,
            &mut relations,
        )?;
    }
    relations.sort_by(|a, b| {
        a.degree
            .total()
            .cmp(&b.degree.total())
            .then_with(|| a.degree.cmp(&b.degree))
            .then_with(|| a.sequence.cmp(&b.sequence))
    });
    Ok(Presentation {
        form: form.clone(),
        labels: default_labels(n),
        relations,
    })
}

fn extend_tail(
    form: &UnitForm,
    roots: &RootSet,
    tail: Vec<usize>,
    element: &NcElement<LaurentPoly>,
    degree: &DimVector,
    discard_zero: bool,
    out: &mut Vec<RelationGenerator>,
) -> Result<(), PresentationError> {
    let n = form.variables();
    for i in 0..n {
        let full = degree.add(&DimVector::simple(n, i));
        let next = ad(form, &NcElement::generator(i), element)?;
        let mut sequence = Vec::with_capacity(tail.len() + 1);
        sequence.push(i);
        sequence.extend_from_slice(&tail);
        if roots.contains(&full) {
            extend_tail(form, roots, sequence, &next, &full, discard_zero, out)?;
        } else if !(discard_zero && next.is_zero()) {
            out.push(RelationGenerator {
                sequence,
                degree: full,
                element: next,
            });
        }
    }
    Ok(())
}

/// Number of words with content `d`: the multinomial coefficient.
pub fn word_count(d: &DimVector) -> BigUint {
    let mut num = BigUint::from(1u32);
    let mut k = 0u64;
    for &x in &d.0 {
        for j in 1..=x as u64 {
            k += 1;
            num = num * BigUint::from(k) / BigUint::from(j);
        }
    }
    num
}

/// How `v` is treated when computing graded dimensions.
#[derive(Clone, Debug, PartialEq)]
pub enum DimMode {
    /// `v` transcendental: ranks over `Q(v)`.
    Generic,
    AtRational(Rational),
    AtQSqrt(QSqrt),
}

pub const DEFAULT_WORD_CAP: usize = 10;

/// Degree slices of the two-sided ideal generated by a presentation's
/// relations, over a coefficient field `F`. Slices are memoised:
/// `I[a] = sum_i e_i I[a - a_i] + sum_i I[a - a_i] e_i + span(gens of degree a)`.
pub struct IdealSlices<F: Field> {
    n: usize,
    word_cap: usize,
    gens: HashMap<DimVector, Vec<(usize, BTreeMap<NcWord, F>)>>,
    slices: HashMap<DimVector, Echelon<NcWord, F>>,
    essential: HashMap<DimVector, Vec<usize>>,
}

impl IdealSlices<RatFunc> {
    pub fn generic(p: &Presentation) -> Self {
        Self::build(p, |x| Ok(to_generic(x))).expect("generic specialisation cannot fail")
    }
}

impl<F: Field> IdealSlices<F> {
    pub fn at(p: &Presentation, value: &F) -> Result<Self, PresentationError> {
        Self::build(p, |x| specialize(x, value))
    }

    fn build(
        p: &Presentation,
        conv: impl Fn(&NcElement<LaurentPoly>) -> Result<NcElement<F>, PresentationError>,
    ) -> Result<Self, PresentationError> {
        let mut gens: HashMap<DimVector, Vec<(usize, BTreeMap<NcWord, F>)>> = HashMap::new();
        for (idx, r) in p.relations.iter().enumerate() {
            let e = conv(&r.element)?;
            if e.is_zero() {
                continue;
            }
            gens.entry(r.degree.clone()).or_default().push((idx, e.terms.clone()));
        }
        Ok(IdealSlices {
            n: p.generators(),
            word_cap: DEFAULT_WORD_CAP,
            gens,
            slices: HashMap::new(),
            essential: HashMap::new(),
        })
    }

    pub fn with_word_cap(mut self, cap: usize) -> Self {
        self.word_cap = cap;
        self
    }

    fn check_cap(&self, d: &DimVector) -> Result<(), PresentationError> {
        if d.total() as usize > self.word_cap {
            return Err(PresentationError::CapExceeded {
                degree: d.clone(),
                length: d.total(),
                cap: self.word_cap,
            });
        }
        Ok(())
    }

    fn ensure(&mut self, d: &DimVector) {
        if self.slices.contains_key(d) {
            return;
        }
        let mut smaller = Vec::new();
        for i in 0..self.n {
            if d.0[i] > 0 {
                let b = d.sub(&DimVector::simple(self.n, i));
                self.ensure(&b);
                smaller.push((i, b));
            }
        }
        let mut slice = Echelon::new();
        for (i, b) in &smaller {
            let gen = NcWord(vec![*i]);
            let rows: Vec<BTreeMap<NcWord, F>> = self.slices[b].rows().cloned().collect();
            for row in rows {
                let left = row.iter().map(|(w, c)| (gen.concat(w), c.clone())).collect();
                slice.insert(left);
                let right = row.into_iter().map(|(w, c)| (w.concat(&gen), c)).collect();
                slice.insert(right);
            }
        }
        let mut essential = Vec::new();
        if let Some(gs) = self.gens.get(d) {
            for (idx, g) in gs {
                if slice.insert(g.clone()) {
                    essential.push(*idx);
                }
            }
        }
        self.essential.insert(d.clone(), essential);
        self.slices.insert(d.clone(), slice);
    }

    /// Dimension of the ideal in degree `d`.
    pub fn ideal_rank(&mut self, d: &DimVector) -> Result<usize, PresentationError> {
        self.check_cap(d)?;
        self.ensure(d);
        Ok(self.slices[d].rank())
    }

    /// Dimension of the quotient algebra in degree `d`.
    pub fn dimension(&mut self, d: &DimVector) -> Result<usize, PresentationError> {
        let rank = self.ideal_rank(d)?;
        let words = word_count(d).to_usize().expect("word count overflow");
        Ok(words - rank)
    }

    /// Whether a homogeneous element lies in the ideal.
    pub fn contains(&mut self, x: &NcElement<F>) -> Result<bool, PresentationError> {
        let Some(d) = x.degree(self.n)? else {
            return Ok(true);
        };
        self.check_cap(&d)?;
        self.ensure(&d);
        Ok(self.slices[&d].contains(x.terms.clone()))
    }

    /// Indices of relations of degree `d` not implied by lower-degree ones
    /// (nor by earlier relations of the same degree).
    pub fn essential_relations(&mut self, d: &DimVector) -> Result<Vec<usize>, PresentationError> {
        self.check_cap(d)?;
        self.ensure(d);
        Ok(self.essential[d].clone())
    }
}

impl<F: Field> fmt::Debug for IdealSlices<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealSlices")
            .field("n", &self.n)
            .field("cached_slices", &self.slices.len())
            .finish()
    }
}

/// `dim U[d]` for a single degree; for many degrees reuse an [`IdealSlices`].
pub fn graded_dimension(p: &Presentation, d: &DimVector, mode: &DimMode) -> Result<usize, PresentationError> {
    if d.len() != p.generators() {
        return Err(UnitFormError::IndexMismatch {
            expected: p.generators(),
            got: d.len(),
        }
        .into());
    }
    match mode {
        DimMode::Generic => IdealSlices::generic(p).dimension(d),
        DimMode::AtRational(r) => IdealSlices::at(p, r)?.dimension(d),
        DimMode::AtQSqrt(s) => IdealSlices::at(p, s)?.dimension(d),
    }
}

/// All nonzero degrees in `N^n` of total at most `max_total`.
pub fn degrees_up_to(n: usize, max_total: i64) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<DimVector>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x > 0) {
                out.push(DimVector(cur.clone()));
            }
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, max_total, &mut cur, &mut out);
    out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| b.cmp(a)));
    out
}
