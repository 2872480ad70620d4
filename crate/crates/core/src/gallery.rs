//! The four worked bound quivers and their listed extra relations, with
//! the ideal-slice comparison against generated presentations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{
    ad, twisted_commutator, IdealSlices, NcElement, Presentation, PresentationError,
};
use crate::quiver::{parse, BoundQuiver};
use crate::scalar::LaurentPoly;
use crate::unit_form::{DimVector, UnitForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GalleryError {
    #[error("no example {0}; choose 1 to 4")]
    UnknownExample(usize),
    #[error("chain length {0} is too short; need at least 3 vertices")]
    ChainTooShort(usize),
}

/// Quiver file text of example `n`; `length` is the number of vertices of
/// the chain in example 2.
pub fn example_text(n: usize, length: usize) -> Result<String, GalleryError> {
    match n {
        1 => Ok(chain_text(3)),
        2 => {
            if length < 3 {
                return Err(GalleryError::ChainTooShort(length));
            }
            Ok(chain_text(length))
        }
        3 => Ok(square_text("relation 1*a1,a2 + -1*b1,b2\n")),
        4 => Ok(square_text("relation 1*a1,a2\nrelation 1*b1,b2\n")),
        _ => Err(GalleryError::UnknownExample(n)),
    }
}

fn chain_text(len: usize) -> String {
    let mut s = String::new();
    for i in 1..=len {
        s.push_str(&format!("vertex {i}\n"));
    }
    let names: Vec<String> = if len == 3 {
        vec!["a".into(), "b".into()]
    } else {
        (1..len).map(|i| format!("a{i}")).collect()
    };
    for (i, name) in names.iter().enumerate() {
        s.push_str(&format!("arrow {name} {} {}\n", i + 1, i + 2));
    }
    s.push_str(&format!("relation 1*{}\n", names.join(",")));
    s
}

fn square_text(relations: &str) -> String {
    format!(
        "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a1 1 2\narrow a2 2 4\narrow b1 1 3\narrow b2 3 4\n{relations}"
    )
}

pub fn example(n: usize, length: usize) -> Result<BoundQuiver, GalleryError> {
    Ok(parse(&example_text(n, length)?).expect("gallery quivers are valid"))
}

/// A listed relation, with generators numbered from zero.
#[derive(Clone, Debug)]
pub struct GoldenRelation {
    pub label: String,
    pub element: NcElement<LaurentPoly>,
}

fn e(i: usize) -> NcElement<LaurentPoly> {
    NcElement::generator(i)
}

/// `[x, y]_{t^k}`.
fn br(x: NcElement<LaurentPoly>, y: NcElement<LaurentPoly>, k: i64) -> NcElement<LaurentPoly> {
    twisted_commutator(&x, &y, k)
}

fn golden(label: &str, element: NcElement<LaurentPoly>) -> GoldenRelation {
    GoldenRelation {
        label: label.into(),
        element,
    }
}

/// The pairs `(i, j)` whose plain commutator is replaced by a twisted one,
/// and the replacements.
fn replacements(n: usize, length: usize) -> Vec<(usize, usize, GoldenRelation)> {
    match n {
        1 => vec![(0, 2, golden("[e3,e1]_t", br(e(2), e(0), 1)))],
        2 => {
            let last = length - 1;
            vec![(
                0,
                last,
                golden(&format!("[e{length},e1]_t"), br(e(last), e(0), 1)),
            )]
        }
        3 => vec![(0, 3, golden("[e4,e1]_t", br(e(3), e(0), 1)))],
        4 => vec![(0, 3, golden("[e4,e1]_{t^2}", br(e(3), e(0), 2)))],
        _ => Vec::new(),
    }
}

fn extras(n: usize, length: usize) -> Vec<GoldenRelation> {
    match n {
        1 => vec![golden("[e1,[e2,e3]_t]", br(e(0), br(e(1), e(2), 1), 0))],
        2 => {
            // [e1,[e2,...,[e_{n-1},e_n]_t...]_t]
            let mut inner = e(length - 1);
            for i in (1..length - 1).rev() {
                inner = br(e(i), inner, 1);
            }
            let mut label = format!("e{length}");
            for i in (2..length).rev() {
                label = format!("[e{i},{label}]_t");
            }
            vec![golden(&format!("[e1,{label}]"), br(e(0), inner, 0))]
        }
        3 => vec![
            golden("[e1,[e2,e4]_t]", br(e(0), br(e(1), e(3), 1), 0)),
            golden("[e1,[e3,e4]_t]", br(e(0), br(e(2), e(3), 1), 0)),
        ],
        4 => vec![
            golden("[e1,[e2,e4]_t]_{t^-1}", br(e(0), br(e(1), e(3), 1), -1)),
            golden("[e1,[e3,e4]_t]_{t^-1}", br(e(0), br(e(2), e(3), 1), -1)),
            golden("[e1,[e2,[e3,e4]_t]_t]", br(e(0), br(e(1), br(e(2), e(3), 1), 1), 0)),
        ],
        _ => Vec::new(),
    }
}

/// Every listed relation particular to the example.
pub fn golden_relations(n: usize, length: usize) -> Result<Vec<GoldenRelation>, GalleryError> {
    example_text(n, length)?;
    let mut out: Vec<GoldenRelation> = replacements(n, length).into_iter().map(|(_, _, g)| g).collect();
    out.extend(extras(n, length));
    Ok(out)
}

/// The listed presentation: quantum Serre relations for pairs joined by
/// an arrow, commutators for the other pairs (some replaced by twisted
/// ones), plus the extra relations.
pub fn golden_presentation(n: usize, length: usize) -> Result<Presentation, GalleryError> {
    let bq = example(n, length)?;
    let q = bq.quiver();
    let k = q.vertex_count();
    // the unbound quiver's form gives the usual Serre twists
    let mut table = vec![vec![0i64; k]; k];
    for a in q.arrows() {
        table[a.source][a.target] = -1;
    }
    let unbound = UnitForm::new(&table);
    let replaced = replacements(n, length);
    let mut elements = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if q.has_arrow(i, j) || q.has_arrow(j, i) {
                let serre = |x: usize, y: usize| {
                    let inner = ad(&unbound, &e(x), &e(y)).expect("homogeneous");
                    ad(&unbound, &e(x), &inner).expect("homogeneous")
                };
                elements.push(serre(i, j));
                elements.push(serre(j, i));
            } else if let Some((_, _, g)) = replaced.iter().find(|(a, b, _)| (*a, *b) == (i, j)) {
                elements.push(g.element.clone());
            } else {
                elements.push(br(e(i), e(j), 0));
            }
        }
    }
    elements.extend(extras(n, length).into_iter().map(|g| g.element));
    Ok(Presentation::from_relations(UnitForm::of_bound_quiver(&bq), elements).expect("golden relations are homogeneous"))
}

/// Outcome of comparing one listed relation with a generated ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenMatch {
    pub label: String,
    pub degree: DimVector,
    /// The listed relation lies in the generated ideal.
    pub in_ideal: bool,
    pub generated_dim: usize,
    pub listed_dim: usize,
    pub pass: bool,
}

/// For each listed relation: membership in the generated ideal at
/// generic `v`, and equal quotient dimensions in its degree.
pub fn match_golden(generated: &Presentation, n: usize, length: usize) -> Result<Vec<GoldenMatch>, GoldenMatchError> {
    let listed = golden_presentation(n, length)?;
    let mut gen_slices = IdealSlices::generic(generated);
    let mut pub_slices = IdealSlices::generic(&listed);
    let mut out = Vec::new();
    for g in golden_relations(n, length)? {
        let degree = g
            .element
            .degree(generated.generators())?
            .expect("listed relations are nonzero");
        let in_ideal = gen_slices.contains(&crate::presentation::to_generic(&g.element))?;
        let generated_dim = gen_slices.dimension(&degree)?;
        let listed_dim = pub_slices.dimension(&degree)?;
        out.push(GoldenMatch {
            label: g.label,
            degree,
            in_ideal,
            generated_dim,
            listed_dim,
            pass: in_ideal && generated_dim == listed_dim,
        });
    }
    Ok(out)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoldenMatchError {
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::generate_relations;

    fn generated(n: usize, length: usize) -> Presentation {
        let t = UnitForm::of_bound_quiver(&example(n, length).unwrap());
        generate_relations(&t, &t.positive_roots(6).unwrap()).unwrap()
    }

    #[test]
    fn example_shapes() {
        assert_eq!(example(1, 0).unwrap().vertex_count(), 3);
        assert_eq!(example(2, 5).unwrap().vertex_count(), 5);
        assert_eq!(example(2, 3).unwrap().to_text(), example(1, 0).unwrap().to_text());
        assert_eq!(example(4, 0).unwrap().relation_counts()[0][3], 2);
        assert_eq!(example(5, 0).unwrap_err(), GalleryError::UnknownExample(5));
        assert_eq!(example(2, 2).unwrap_err(), GalleryError::ChainTooShort(2));
    }

    #[test]
    fn root_counts() {
        let count = |n, l| UnitForm::of_bound_quiver(&example(n, l).unwrap()).positive_roots(6).unwrap().len();
        assert_eq!(count(1, 0), 5);
        assert_eq!(count(2, 4), 9);
        assert_eq!(count(3, 0), 11);
        assert_eq!(count(4, 0), 10);
    }

    #[test]
    fn example_one_matches_listed_relations() {
        let m = match_golden(&generated(1, 0), 1, 0).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.iter().all(|g| g.pass), "{m:?}");
    }

    #[test]
    fn chain_labels() {
        let g = golden_relations(2, 4).unwrap();
        assert_eq!(g[0].label, "[e4,e1]_t");
        assert_eq!(g[1].label, "[e1,[e2,[e3,e4]_t]_t]");
    }
}
