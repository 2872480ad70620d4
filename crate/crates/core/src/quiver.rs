//! Bound quivers: finite acyclic quivers without loops or multiple arrows,
//! together with a list of endpoint-homogeneous relations of length at least two.
//!
//! Paths store their arrows in application order, first applied first. The
//! composite usually written `ba` ("a, then b") is the path `[a, b]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("arrow {0} is a loop")]
    LoopFound(String),
    #[error("arrows {0} and {1} share source and target")]
    MultipleArrow(String, String),
    #[error("the arrows contain an oriented cycle through vertex {0}")]
    OrientedCycle(String),
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("duplicate identifier {0}")]
    Duplicate(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// An unvalidated quiver description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    /// `(id, source, target)`
    pub arrows: Vec<(String, String, String)>,
    /// Each relation is a list of `(coefficient, arrows in application order)`.
    pub relations: Vec<Vec<(i64, Vec<String>)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Arrow indices, first applied first.
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Path {
        assert_eq!(self.target, next.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path {
            source: self.source,
            target: next.target,
            arrows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(i64, Path)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.arrows.iter().any(|a| a.source == i && a.target == j)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v)
    }

    /// All paths from `i` to `j`, the trivial path included when `i == j`.
    /// Sorted by length, then lexicographically by arrow index.
    pub fn enumerate_paths(&self, i: usize, j: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![Path::trivial(i)];
        while let Some(path) = stack.pop() {
            if path.target == j {
                out.push(path.clone());
            }
            for (idx, arrow) in self.arrows_from(path.target) {
                let mut next = path.clone();
                next.arrows.push(idx);
                next.target = arrow.target;
                stack.push(next);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.arrows.cmp(&b.arrows)));
        out
    }

    fn path_from_ids(&self, ids: &[String]) -> Result<Path, QuiverError> {
        let mut arrows = Vec::with_capacity(ids.len());
        for id in ids {
            arrows.push(
                self.arrow_index(id)
                    .ok_or_else(|| QuiverError::UnknownArrow(id.clone()))?,
            );
        }
        let Some(&first) = arrows.first() else {
            return Err(QuiverError::BadRelation("empty path".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::BadRelation(format!(
                    "arrows {} and {} do not compose",
                    self.arrows[w[0]].id, self.arrows[w[1]].id
                )));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows,
        })
    }

    /// Vertices in an order compatible with every arrow, or the cycle error.
    pub fn topological_order(&self) -> Result<Vec<usize>, QuiverError> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for (_, a) in self.arrows_from(v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(QuiverError::OrientedCycle(self.vertices[stuck].clone()));
        }
        Ok(order)
    }
}

impl BoundQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// `r(i, j)`: the number of relations from `i` to `j`. The relation list
    /// is taken as the minimal generating set.
    pub fn relation_counts(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut r = vec![vec![0; n]; n];
        for rel in &self.relations {
            r[rel.source][rel.target] += 1;
        }
        r
    }

    pub fn to_spec(&self) -> QuiverSpec {
        let q = &self.quiver;
        QuiverSpec {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| (a.id.clone(), q.vertices[a.source].clone(), q.vertices[a.target].clone()))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|rel| {
                    rel.terms
                        .iter()
                        .map(|(c, p)| (*c, p.arrows.iter().map(|&a| q.arrows[a].id.clone()).collect()))
                        .collect()
                })
                .collect(),
        }
    }

    /// The text form accepted by [`parse`]. Parsing it back yields `self`.
    pub fn to_text(&self) -> String {
        let spec = self.to_spec();
        let mut out = String::new();
        for v in &spec.vertices {
            writeln!(out, "vertex {v}").unwrap();
        }
        for (id, s, t) in &spec.arrows {
            writeln!(out, "arrow {id} {s} {t}").unwrap();
        }
        for rel in &spec.relations {
            let terms: Vec<String> = rel
                .iter()
                .map(|(c, arrows)| format!("{c}*{}", arrows.join(",")))
                .collect();
            writeln!(out, "relation {}", terms.join(" + ")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> QuiverJson {
        let spec = self.to_spec();
        QuiverJson {
            vertices: spec.vertices,
            arrows: spec
                .arrows
                .into_iter()
                .map(|(id, source, target)| ArrowJson { id, source, target })
                .collect(),
            relations: self
                .relations
                .iter()
                .zip(spec.relations)
                .map(|(rel, terms)| RelationJson {
                    source: self.quiver.vertices[rel.source].clone(),
                    target: self.quiver.vertices[rel.target].clone(),
                    terms: terms
                        .into_iter()
                        .map(|(coeff, arrows)| TermJson { coeff, arrows })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub relations: Vec<RelationJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub source: String,
    pub target: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: i64,
    pub arrows: Vec<String>,
}

/// Checks every structural assumption and builds the bound quiver.
pub fn validate(spec: &QuiverSpec) -> Result<BoundQuiver, QuiverError> {
    let mut seen = HashMap::new();
    for v in &spec.vertices {
        if seen.insert(v.as_str(), ()).is_some() {
            return Err(QuiverError::Duplicate(v.clone()));
        }
    }
    let vertex = |id: &str| {
        spec.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    };
    let mut arrows = Vec::with_capacity(spec.arrows.len());
    let mut by_pair: BTreeMap<(usize, usize), String> = BTreeMap::new();
    let mut arrow_ids = HashMap::new();
    for (id, s, t) in &spec.arrows {
        if arrow_ids.insert(id.as_str(), ()).is_some() {
            return Err(QuiverError::Duplicate(id.clone()));
        }
        let (source, target) = (vertex(s)?, vertex(t)?);
        if source == target {
            return Err(QuiverError::LoopFound(id.clone()));
        }
        if let Some(other) = by_pair.insert((source, target), id.clone()) {
            return Err(QuiverError::MultipleArrow(other, id.clone()));
        }
        arrows.push(Arrow {
            id: id.clone(),
            source,
            target,
        });
    }
    let quiver = Quiver {
        vertices: spec.vertices.clone(),
        arrows,
    };
    quiver.topological_order()?;

    let mut relations = Vec::with_capacity(spec.relations.len());
    for terms in &spec.relations {
        if terms.is_empty() {
            return Err(QuiverError::BadRelation("relation without terms".into()));
        }
        let mut parsed = Vec::with_capacity(terms.len());
        for (coeff, ids) in terms {
            let path = quiver.path_from_ids(ids)?;
            if path.len() < 2 {
                return Err(QuiverError::BadRelation(format!(
                    "path {} has length {}, relations need length at least 2",
                    ids.join(","),
                    path.len()
                )));
            }
            parsed.push((*coeff, path));
        }
        let (source, target) = (parsed[0].1.source, parsed[0].1.target);
        if parsed.iter().any(|(_, p)| p.source != source || p.target != target) {
            return Err(QuiverError::BadRelation("terms have different endpoints".into()));
        }
        if parsed.iter().all(|(c, _)| *c == 0) {
            return Err(QuiverError::BadRelation("all coefficients are zero".into()));
        }
        relations.push(Relation {
            source,
            target,
            terms: parsed,
        });
    }
    Ok(BoundQuiver { quiver, relations })
}

/// Parses the line-oriented quiver format:
///
/// ```text
/// # comment
/// vertex 1
/// arrow a 1 2
/// relation 1*a,b + -1*c,d
/// ```
pub fn parse_spec(text: &str) -> Result<QuiverSpec, QuiverError> {
    let mut spec = QuiverSpec::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| QuiverError::Syntax {
            line: lineno + 1,
            message,
        };
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "vertex" => match fields.as_slice() {
                [id] => spec.vertices.push(id.to_string()),
                _ => return Err(syntax("expected `vertex <id>`".into())),
            },
            "arrow" => match fields.as_slice() {
                [id, s, t] => spec.arrows.push((id.to_string(), s.to_string(), t.to_string())),
                _ => return Err(syntax("expected `arrow <id> <src> <tgt>`".into())),
            },
            "relation" => {
                let mut terms = Vec::new();
                for term in rest.split(" + ") {
                    let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
                    let (coeff, arrows) = term
                        .split_once('*')
                        .ok_or_else(|| syntax(format!("term `{term}` is not `<coeff>*<arrows>`")))?;
                    let coeff: i64 = coeff
                        .parse()
                        .map_err(|_| syntax(format!("bad coefficient `{coeff}`")))?;
                    let arrows: Vec<String> = arrows.split(',').map(str::to_string).collect();
                    if arrows.iter().any(String::is_empty) {
                        return Err(syntax(format!("empty arrow name in `{term}`")));
                    }
                    terms.push((coeff, arrows));
                }
                spec.relations.push(terms);
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    Ok(spec)
}

pub fn parse(text: &str) -> Result<BoundQuiver, QuiverError> {
    validate(&parse_spec(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE_ONE: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\nrelation 1*a,b\n";
    const RHOMBUS: &str = "vertex 1\nvertex 2\nvertex 3\nvertex 4\n\
        arrow a1 1 2\narrow a2 2 4\narrow b1 1 3\narrow b2 3 4\n";

    #[test]
    fn parses_example_one() {
        let bq = parse(EXAMPLE_ONE).unwrap();
        assert_eq!(bq.vertex_count(), 3);
        assert_eq!(bq.relations().len(), 1);
        assert_eq!(bq.relations()[0].terms[0].1.arrows, vec![0, 1]);
        let r = bq.relation_counts();
        assert_eq!(r[0][2], 1);
        assert_eq!(r.iter().flatten().sum::<usize>(), 1);
    }

    #[test]
    fn single_vertex_is_valid() {
        let bq = parse("vertex x\n").unwrap();
        assert_eq!(bq.vertex_count(), 1);
        assert_eq!(bq.relation_counts(), vec![vec![0]]);
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            parse("vertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\n"),
            Err(QuiverError::OrientedCycle(_))
        ));
        assert!(matches!(parse("vertex 1\narrow a 1 1\n"), Err(QuiverError::LoopFound(_))));
        assert!(matches!(
            parse("vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\n"),
            Err(QuiverError::MultipleArrow(..))
        ));
        assert!(matches!(parse("vertex 1\narrow a 1 9\n"), Err(QuiverError::UnknownVertex(_))));
        assert!(matches!(
            parse("vertex 1\nvertex 2\narrow a 1 2\nrelation 1*a\n"),
            Err(QuiverError::BadRelation(_))
        ));
        // mixed endpoints
        let mixed = format!("{RHOMBUS}arrow c 2 3\nrelation 1*a1,a2 + 1*a1,c\n");
        assert!(matches!(parse(&mixed), Err(QuiverError::BadRelation(_))));
        assert!(matches!(parse("vertex 1\nfoo\n"), Err(QuiverError::Syntax { line: 2, .. })));
    }

    #[test]
    fn paths() {
        let bq = parse(EXAMPLE_ONE).unwrap();
        let q = bq.quiver();
        let p = q.enumerate_paths(0, 2);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].arrows, vec![0, 1]);
        assert!(q.enumerate_paths(2, 0).is_empty());
        assert_eq!(q.enumerate_paths(1, 1), vec![Path::trivial(1)]);

        let rh = parse(RHOMBUS).unwrap();
        let q = rh.quiver();
        let p = q.enumerate_paths(0, 3);
        let named: Vec<Vec<&str>> = p
            .iter()
            .map(|p| p.arrows.iter().map(|&a| q.arrows()[a].id.as_str()).collect())
            .collect();
        assert_eq!(named, vec![vec!["a1", "a2"], vec!["b1", "b2"]]);
    }

    #[test]
    fn relation_counts_of_double_zero_relations() {
        let bq = parse(&format!("{RHOMBUS}relation 1*a1,a2\nrelation 1*b1,b2\n")).unwrap();
        assert_eq!(bq.relation_counts()[0][3], 2);
    }

    #[test]
    fn comments_and_signed_coefficients() {
        let text = format!("# rhombus\n{RHOMBUS}relation 1*a1,a2 + -1*b1,b2 # commutativity\n");
        let bq = parse(&text).unwrap();
        assert_eq!(bq.relations()[0].terms.len(), 2);
        assert_eq!(bq.relations()[0].terms[1].0, -1);
    }

    /// Random acyclic quivers: arrows only go from lower to higher index.
    fn arb_bound_quiver() -> impl Strategy<Value = QuiverSpec> {
        (1usize..6)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
                let len = pairs.len();
                (Just(n), Just(pairs), prop::collection::vec(any::<bool>(), len), any::<u64>())
            })
            .prop_map(|(n, pairs, keep, seed)| {
                let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                let arrows: Vec<(String, String, String)> = pairs
                    .iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .enumerate()
                    .map(|(idx, ((i, j), _))| (format!("x{idx}"), vertices[*i].clone(), vertices[*j].clone()))
                    .collect();
                let mut spec = QuiverSpec { vertices, arrows, relations: vec![] };
                // add a zero relation on the first length-2 path, if any
                let q = validate(&spec).unwrap();
                let mut length_two = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        length_two.extend(q.quiver().enumerate_paths(i, j).into_iter().filter(|p| p.len() == 2));
                    }
                }
                if !length_two.is_empty() {
                    let p = &length_two[(seed as usize) % length_two.len()];
                    let ids = p.arrows.iter().map(|&a| q.quiver().arrows()[a].id.clone()).collect();
                    spec.relations.push(vec![((seed % 5) as i64 + 1, ids)]);
                }
                spec
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(spec in arb_bound_quiver()) {
            let bq = validate(&spec).unwrap();
            let again = parse(&bq.to_text()).unwrap();
            prop_assert_eq!(&again, &bq);
            prop_assert_eq!(again.to_spec(), spec);
        }

        #[test]
        fn length_two_path_count(spec in arb_bound_quiver()) {
            let bq = validate(&spec).unwrap();
            let q = bq.quiver();
            let n = q.vertex_count();
            for i in 0..n {
                for j in 0..n {
                    let paths = q.enumerate_paths(i, j);
                    let via = (0..n).filter(|&k| q.has_arrow(i, k) && q.has_arrow(k, j)).count();
                    prop_assert_eq!(paths.iter().filter(|p| p.len() == 2).count(), via);
                }
            }
        }
    }
}
