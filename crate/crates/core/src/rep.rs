//! Representations of bound quivers over `F_p`: Hom spaces, projectives and
//! their resolutions, Ext groups, and the directed table of indecomposables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{enumerate_subspaces, reduce, LinalgError, MatrixFp, Subspace};
use crate::quiver::{BoundQuiver, Path};
use crate::unit_form::{DimVector, RootSet, UnitForm, UnitFormError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{what}: {size} elements exceeds the cap {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },
    #[error("no ordering of the indecomposables is directed: {0}")]
    DirectednessFailure(String),
    #[error("indecomposables do not match the positive roots: {0}")]
    RootBijectionFailure(String),
    #[error("decomposition failed: {0}")]
    InconsistentDecomposition(String),
    #[error("projective resolution longer than {cap}")]
    ResolutionTooLong { cap: usize },
    #[error("global dimension {gldim} exceeds 2")]
    GlobalDimensionTooLarge { gldim: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    UnitForm(#[from] UnitFormError),
}

/// One vector space per vertex and one matrix per arrow; the matrix of an
/// arrow `i -> j` has `dims[j]` rows and `dims[i]` columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<MatrixFp>,
    p: u32,
}

/// A morphism: one matrix per vertex.
pub type Morphism = Vec<MatrixFp>;

impl Representation {
    pub fn new(bq: &BoundQuiver, dims: Vec<usize>, maps: Vec<MatrixFp>, p: u32) -> Result<Self, RepError> {
        let q = bq.quiver();
        if dims.len() != q.vertex_count() {
            return Err(RepError::ShapeMismatch(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(RepError::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.modulus() != p {
                return Err(RepError::ShapeMismatch(format!(
                    "arrow {} needs a {}x{} matrix over F_{p}, got {}x{} over F_{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols(),
                    m.modulus()
                )));
            }
        }
        Ok(Representation { dims, maps, p })
    }

    pub fn zero_maps(bq: &BoundQuiver, dims: Vec<usize>, p: u32) -> Self {
        let maps = bq
            .quiver()
            .arrows()
            .iter()
            .map(|a| MatrixFp::zeros(dims[a.target], dims[a.source], p))
            .collect();
        Representation { dims, maps, p }
    }

    pub fn simple(bq: &BoundQuiver, i: usize, p: u32) -> Self {
        let mut dims = vec![0; bq.vertex_count()];
        dims[i] = 1;
        Self::zero_maps(bq, dims, p)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[MatrixFp] {
        &self.maps
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// The linear map along a path, composed in application order.
    pub fn path_map(&self, path: &Path) -> MatrixFp {
        let mut m = MatrixFp::identity(self.dims[path.source], self.p);
        for &a in &path.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let z1 = MatrixFp::zeros(a.rows(), b.cols(), self.p);
                let z2 = MatrixFp::zeros(b.rows(), a.cols(), self.p);
                MatrixFp::block(a, &z1, &z2, b)
            })
            .collect();
        Representation { dims, maps, p: self.p }
    }

    /// The subrepresentation on `spaces`, in the coordinates of each
    /// subspace's canonical basis; `None` unless the arrows preserve it.
    pub fn subrep(&self, bq: &BoundQuiver, spaces: &[Subspace]) -> Option<Representation> {
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in bq.quiver().arrows().iter().zip(&self.maps) {
            let (src, tgt) = (&spaces[a.source], &spaces[a.target]);
            let mut r = MatrixFp::zeros(tgt.dim(), src.dim(), self.p);
            for c in 0..src.dim() {
                let image = m.mul_vec(src.basis().row(c));
                let coords = tgt.coordinates(&image)?;
                for (row, x) in coords.into_iter().enumerate() {
                    r.set(row, c, x);
                }
            }
            maps.push(r);
        }
        Some(Representation {
            dims: spaces.iter().map(Subspace::dim).collect(),
            maps,
            p: self.p,
        })
    }

    /// The quotient by a subrepresentation, on the complement coordinates of
    /// each subspace.
    pub fn quotient(&self, bq: &BoundQuiver, spaces: &[Subspace]) -> Representation {
        let comps: Vec<Vec<usize>> = spaces.iter().map(Subspace::complement).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in bq.quiver().arrows().iter().zip(&self.maps) {
            let (cs, ct) = (&comps[a.source], &comps[a.target]);
            let mut r = MatrixFp::zeros(ct.len(), cs.len(), self.p);
            for (col, &c) in cs.iter().enumerate() {
                let image = spaces[a.target].residue(&m.column(c));
                for (row, &t) in ct.iter().enumerate() {
                    r.set(row, col, image[t]);
                }
            }
            maps.push(r);
        }
        Representation {
            dims: comps.iter().map(Vec::len).collect(),
            maps,
            p: self.p,
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self.dim_vector(), self.p)?;
        for (k, m) in self.maps.iter().enumerate() {
            write!(f, "; #{k} = {m}")?;
        }
        Ok(())
    }
}

pub fn is_bound(bq: &BoundQuiver, rep: &Representation) -> Result<bool, RepError> {
    Representation::new(bq, rep.dims.clone(), rep.maps.clone(), rep.p)?;
    Ok(relations_vanish(bq, rep))
}

fn relations_vanish(bq: &BoundQuiver, rep: &Representation) -> bool {
    bq.relations().iter().all(|r| {
        let mut total = MatrixFp::zeros(rep.dims[r.target], rep.dims[r.source], rep.p);
        for (c, path) in &r.terms {
            total = total.add(&rep.path_map(path).scale(reduce(*c, rep.p)));
        }
        total.is_zero()
    })
}

fn flatten(maps: &[MatrixFp]) -> Vec<u32> {
    maps.iter().flat_map(|m| m.data().iter().copied()).collect()
}

fn unflatten(v: &[u32], shapes: &[(usize, usize)], p: u32) -> Vec<MatrixFp> {
    let mut out = Vec::with_capacity(shapes.len());
    let mut off = 0;
    for &(r, c) in shapes {
        out.push(MatrixFp::from_data(r, c, p, v[off..off + r * c].to_vec()));
        off += r * c;
    }
    out
}

fn hom_shapes(v: &Representation, w: &Representation) -> Vec<(usize, usize)> {
    w.dims.iter().zip(&v.dims).map(|(&r, &c)| (r, c)).collect()
}

/// Matrix of the linear conditions `f_j V_a = W_a f_i` on flattened tuples.
fn hom_system(bq: &BoundQuiver, v: &Representation, w: &Representation) -> MatrixFp {
    let p = v.p;
    let mut offsets = Vec::with_capacity(v.dims.len());
    let mut unknowns = 0;
    for (&wd, &vd) in w.dims.iter().zip(&v.dims) {
        offsets.push(unknowns);
        unknowns += wd * vd;
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (a, (vm, wm)) in bq.quiver().arrows().iter().zip(v.maps.iter().zip(&w.maps)) {
        let (s, t) = (a.source, a.target);
        for r in 0..w.dims[t] {
            for c in 0..v.dims[s] {
                let mut eq = vec![0u32; unknowns];
                for k in 0..w.dims[s] {
                    let x = wm.get(r, k);
                    if x != 0 {
                        let idx = offsets[s] + k * v.dims[s] + c;
                        eq[idx] = (eq[idx] + x) % p;
                    }
                }
                for k in 0..v.dims[t] {
                    let x = vm.get(k, c);
                    if x != 0 {
                        let idx = offsets[t] + r * v.dims[t] + k;
                        eq[idx] = (eq[idx] + p - x) % p;
                    }
                }
                rows.push(eq);
            }
        }
    }
    let mut m = MatrixFp::zeros(rows.len(), unknowns, p);
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// A basis of `Hom(V, W)`, each element one matrix per vertex.
pub fn hom_basis(bq: &BoundQuiver, v: &Representation, w: &Representation) -> Vec<Morphism> {
    let shapes = hom_shapes(v, w);
    hom_system(bq, v, w)
        .kernel()
        .iter()
        .map(|k| unflatten(k, &shapes, v.p))
        .collect()
}

pub fn dim_hom(bq: &BoundQuiver, v: &Representation, w: &Representation) -> usize {
    let sys = hom_system(bq, v, w);
    sys.cols() - sys.rank()
}

fn checked_size(p: u32, d: usize, cap: u128, what: impl FnOnce() -> String) -> Result<u128, RepError> {
    let size = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(RepError::CapExceeded { what: what(), size, cap });
    }
    Ok(size)
}

/// Calls `f` on every linear combination of `basis` (flattened vectors of
/// length `len`) until it returns `false`.
fn for_each_combination(
    basis: &[Vec<u32>],
    len: usize,
    p: u32,
    mut f: impl FnMut(&[u32]) -> bool,
) {
    let mut digits = vec![0u32; basis.len()];
    let mut v = vec![0u32; len];
    loop {
        if !f(&v) {
            return;
        }
        // odometer step, keeping v equal to the combination
        let mut k = 0;
        loop {
            if k == digits.len() {
                return;
            }
            digits[k] += 1;
            for (x, &b) in v.iter_mut().zip(&basis[k]) {
                *x = (*x + b) % p;
            }
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// `(|End V|, |Aut V|)`, the latter by exhaustive search.
pub fn end_aut_counts(bq: &BoundQuiver, v: &Representation, cap: u128) -> Result<(u128, u128), RepError> {
    let basis: Vec<Vec<u32>> = hom_system(bq, v, v).kernel();
    let size = checked_size(v.p, basis.len(), cap, || format!("End of {}", v.dim_vector()))?;
    let shapes = hom_shapes(v, v);
    let mut aut = 0u128;
    let len: usize = shapes.iter().map(|(r, c)| r * c).sum();
    for_each_combination(&basis, len, v.p, |x| {
        let maps = unflatten(x, &shapes, v.p);
        if maps.iter().all(|m| m.is_invertible().unwrap_or(false)) {
            aut += 1;
        }
        true
    });
    Ok((size, aut))
}

/// Whether `End V` has no idempotents besides 0 and 1, by exhaustive search.
pub fn is_indecomposable(bq: &BoundQuiver, v: &Representation, cap: u128) -> Result<bool, RepError> {
    if v.total_dim() == 0 {
        return Ok(false);
    }
    let basis = hom_system(bq, v, v).kernel();
    checked_size(v.p, basis.len(), cap, || format!("End of {}", v.dim_vector()))?;
    let shapes = hom_shapes(v, v);
    let len: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let identity = flatten(&v.dims.iter().map(|&d| MatrixFp::identity(d, v.p)).collect::<Vec<_>>());
    let mut split = false;
    for_each_combination(&basis, len, v.p, |x| {
        if x.iter().all(|&a| a == 0) || x == identity.as_slice() {
            return true;
        }
        let maps = unflatten(x, &shapes, v.p);
        if maps.iter().all(|m| m.mul(m) == *m) {
            split = true;
            return false;
        }
        true
    });
    Ok(!split)
}

/// Searches `Hom(V, W)` exhaustively for an invertible tuple.
pub fn is_isomorphic(bq: &BoundQuiver, v: &Representation, w: &Representation, cap: u128) -> Result<bool, RepError> {
    if v.dims != w.dims {
        return Ok(false);
    }
    if v == w {
        return Ok(true);
    }
    let basis = hom_system(bq, v, w).kernel();
    if basis.len() != dim_hom(bq, v, v) || basis.len() != dim_hom(bq, w, w) {
        return Ok(false);
    }
    checked_size(v.p, basis.len(), cap, || format!("Hom between copies of {}", v.dim_vector()))?;
    let shapes = hom_shapes(v, w);
    let len: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut found = false;
    for_each_combination(&basis, len, v.p, |x| {
        let maps = unflatten(x, &shapes, v.p);
        if maps.iter().all(|m| m.is_invertible().unwrap_or(false)) {
            found = true;
            return false;
        }
        true
    });
    Ok(found)
}

fn compose(f: &[MatrixFp], g: &[MatrixFp]) -> Morphism {
    f.iter().zip(g).map(|(a, b)| a.mul(b)).collect()
}

/// All subrepresentations of `r` with dimension vector `d`, one subspace per
/// vertex, found vertex by vertex in topological order so that each new
/// subspace already contains the images of its predecessors.
pub fn enumerate_subreps(
    bq: &BoundQuiver,
    r: &Representation,
    d: &[usize],
    cap: u128,
) -> Result<Vec<Vec<Subspace>>, RepError> {
    let order = bq.quiver().topological_order().expect("bound quivers are acyclic");
    let mut out = Vec::new();
    let mut current: Vec<Option<Subspace>> = vec![None; r.dims.len()];
    subreps_rec(bq, r, d, cap, &order, 0, &mut current, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn subreps_rec(
    bq: &BoundQuiver,
    r: &Representation,
    d: &[usize],
    cap: u128,
    order: &[usize],
    k: usize,
    current: &mut Vec<Option<Subspace>>,
    out: &mut Vec<Vec<Subspace>>,
) -> Result<(), RepError> {
    if k == order.len() {
        out.push(current.iter().map(|s| s.clone().unwrap()).collect());
        return Ok(());
    }
    let j = order[k];
    let n = r.dims[j];
    let mut forced = MatrixFp::zeros(0, n, r.p);
    for (idx, a) in bq.quiver().arrows_into(j) {
        let src = current[a.source].as_ref().unwrap();
        let images = r.maps[idx].mul(&src.basis().transpose()).transpose();
        forced = forced.vstack(&images);
    }
    let w = Subspace::from_spanning(&forced);
    if w.dim() > d[j] {
        return Ok(());
    }
    let comp = w.complement();
    for extra in enumerate_subspaces(comp.len(), d[j] - w.dim(), r.p, cap)? {
        let mut lifted = MatrixFp::zeros(extra.dim(), n, r.p);
        for row in 0..extra.dim() {
            for (c, &pos) in comp.iter().enumerate() {
                lifted.set(row, pos, extra.basis().get(row, c));
            }
        }
        current[j] = Some(Subspace::from_spanning(&w.basis().vstack(&lifted)));
        subreps_rec(bq, r, d, cap, order, k + 1, current, out)?;
    }
    current[j] = None;
    Ok(())
}

/// The indecomposable projective at a vertex: paths from it modulo the
/// relation ideal, with the surviving paths kept as basis.
#[derive(Clone, Debug)]
pub struct Projective {
    pub vertex: usize,
    pub rep: Representation,
    pub basis: Vec<Vec<Path>>,
}

pub fn projectives(bq: &BoundQuiver, p: u32) -> Vec<Projective> {
    let q = bq.quiver();
    let n = q.vertex_count();
    (0..n)
        .map(|i| {
            let paths: Vec<Vec<Path>> = (0..n).map(|j| q.enumerate_paths(i, j)).collect();
            let ideal: Vec<Subspace> = (0..n).map(|j| ideal_slice(bq, &paths[j], i, j, p)).collect();
            let basis: Vec<Vec<Path>> = (0..n)
                .map(|j| ideal[j].complement().into_iter().map(|c| paths[j][c].clone()).collect())
                .collect();
            let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
            let maps = q
                .arrows()
                .iter()
                .enumerate()
                .map(|(idx, a)| {
                    let (s, t) = (a.source, a.target);
                    let comp_t = ideal[t].complement();
                    let mut m = MatrixFp::zeros(dims[t], dims[s], p);
                    for (col, x) in basis[s].iter().enumerate() {
                        let mut ext = x.clone();
                        ext.arrows.push(idx);
                        ext.target = t;
                        let pos = paths[t].iter().position(|y| *y == ext).expect("extended path is enumerated");
                        let mut v = vec![0u32; paths[t].len()];
                        v[pos] = 1;
                        let res = ideal[t].residue(&v);
                        for (row, &c) in comp_t.iter().enumerate() {
                            m.set(row, col, res[c]);
                        }
                    }
                    m
                })
                .collect();
            Projective {
                vertex: i,
                rep: Representation { dims, maps, p },
                basis,
            }
        })
        .collect()
}

/// Span of `w r u` inside the paths from `i` to `j`, for relations `r`.
fn ideal_slice(bq: &BoundQuiver, paths: &[Path], i: usize, j: usize, p: u32) -> Subspace {
    let q = bq.quiver();
    let mut rows = Vec::new();
    for r in bq.relations() {
        for w in q.enumerate_paths(i, r.source) {
            for u in q.enumerate_paths(r.target, j) {
                let mut v = vec![0u32; paths.len()];
                for (c, path) in &r.terms {
                    let full = w.then(path).then(&u);
                    let pos = paths.iter().position(|x| *x == full).expect("path is enumerated");
                    v[pos] = (v[pos] + reduce(*c, p)) % p;
                }
                rows.push(v);
            }
        }
    }
    let mut m = MatrixFp::zeros(rows.len(), paths.len(), p);
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            m.set(r, c, x);
        }
    }
    Subspace::from_spanning(&m)
}

/// Minimal cover: one projective summand per basis vector of the top.
fn projective_cover(bq: &BoundQuiver, projs: &[Projective], m: &Representation) -> (Vec<usize>, Representation, Morphism) {
    let n = m.dims.len();
    let p = m.p;
    let mut radical: Vec<MatrixFp> = (0..n).map(|j| MatrixFp::zeros(0, m.dims[j], p)).collect();
    for (a, mat) in bq.quiver().arrows().iter().zip(&m.maps) {
        radical[a.target] = radical[a.target].vstack(&mat.transpose());
    }
    let mut summands = Vec::new();
    for j in 0..n {
        let rad = Subspace::from_spanning(&radical[j]);
        for c in rad.complement() {
            let mut g = vec![0u32; m.dims[j]];
            g[c] = 1;
            summands.push((j, g));
        }
    }
    let vertices: Vec<usize> = summands.iter().map(|(j, _)| *j).collect();
    let mut cover = Representation {
        dims: vec![0; n],
        maps: m.maps.iter().map(|_| MatrixFp::zeros(0, 0, p)).collect(),
        p,
    };
    for &j in &vertices {
        cover = cover.direct_sum(&projs[j].rep);
    }
    let pi = (0..n)
        .map(|k| {
            let mut mat = MatrixFp::zeros(m.dims[k], cover.dims[k], p);
            let mut col = 0;
            for (j, g) in &summands {
                for path in &projs[*j].basis[k] {
                    let image = m.path_map(path).mul_vec(g);
                    for (r, x) in image.into_iter().enumerate() {
                        mat.set(r, col, x);
                    }
                    col += 1;
                }
            }
            mat
        })
        .collect();
    (vertices, cover, pi)
}

/// A projective resolution `... -> P_1 -> P_0 -> V -> 0`.
#[derive(Clone, Debug)]
pub struct ProjResolution {
    /// The indecomposable summands of each term, as vertices.
    pub terms: Vec<Vec<usize>>,
    pub modules: Vec<Representation>,
    /// `P_0 -> V`.
    pub augmentation: Morphism,
    /// `differentials[k - 1]` is `d_k : P_k -> P_{k-1}`.
    pub differentials: Vec<Morphism>,
    /// False when the construction stopped before the kernel vanished.
    pub complete: bool,
}

impl ProjResolution {
    /// The projective dimension, when complete.
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }

    /// Checks that every map is a morphism, consecutive maps compose to zero
    /// and the sequence is exact, by rank counts at every vertex.
    pub fn verify(&self, bq: &BoundQuiver, v: &Representation) -> bool {
        let is_morphism = |src: &Representation, dst: &Representation, f: &Morphism| {
            bq.quiver()
                .arrows()
                .iter()
                .enumerate()
                .all(|(k, a)| f[a.target].mul(&src.maps[k]) == dst.maps[k].mul(&f[a.source]))
        };
        if self.modules.is_empty() {
            return v.total_dim() == 0;
        }
        if !is_morphism(&self.modules[0], v, &self.augmentation) {
            return false;
        }
        for (k, d) in self.differentials.iter().enumerate() {
            if !is_morphism(&self.modules[k + 1], &self.modules[k], d) {
                return false;
            }
        }
        let n = v.dims.len();
        for x in 0..n {
            // maps[0] = augmentation, maps[k] = d_k; exactness at P_k: dim P_k = rank maps[k] + rank maps[k+1]
            let mut maps = vec![&self.augmentation[x]];
            maps.extend(self.differentials.iter().map(|d| &d[x]));
            if maps[0].rank() != v.dims[x] {
                return false;
            }
            for k in 0..maps.len() {
                let next_rank = maps.get(k + 1).map_or(0, |m| m.rank());
                if k + 1 < maps.len() && !maps[k].mul(maps[k + 1]).is_zero() {
                    return false;
                }
                let last = k + 1 == maps.len();
                if (self.complete || !last) && self.modules[k].dims[x] != maps[k].rank() + next_rank {
                    return false;
                }
            }
        }
        true
    }
}

pub const MAX_RESOLUTION_LENGTH: usize = 8;

/// Builds `P_0, ..., P_steps` by iterated projective covers, stopping
/// early once the kernel vanishes.
pub fn resolve(bq: &BoundQuiver, projs: &[Projective], v: &Representation, steps: usize) -> ProjResolution {
    let mut res = ProjResolution {
        terms: Vec::new(),
        modules: Vec::new(),
        augmentation: Vec::new(),
        differentials: Vec::new(),
        complete: v.total_dim() == 0,
    };
    if res.complete {
        return res;
    }
    let mut current = v.clone();
    let mut inclusion: Option<Morphism> = None;
    loop {
        let (vertices, cover, pi) = projective_cover(bq, projs, &current);
        match &inclusion {
            None => res.augmentation = pi.clone(),
            Some(inc) => res.differentials.push(compose(inc, &pi)),
        }
        let spaces: Vec<Subspace> = pi
            .iter()
            .map(|m| {
                let ker = m.kernel();
                let mut basis = MatrixFp::zeros(ker.len(), m.cols(), m.modulus());
                for (r, k) in ker.iter().enumerate() {
                    for (c, &x) in k.iter().enumerate() {
                        basis.set(r, c, x);
                    }
                }
                Subspace::from_spanning(&basis)
            })
            .collect();
        res.terms.push(vertices);
        let kernel = cover.subrep(bq, &spaces).expect("kernel of a morphism is a subrepresentation");
        res.modules.push(cover);
        if kernel.total_dim() == 0 {
            res.complete = true;
            return res;
        }
        if res.terms.len() > steps {
            return res;
        }
        inclusion = Some(spaces.iter().map(|s| s.basis().transpose()).collect());
        current = kernel;
    }
}

pub fn projective_resolution(bq: &BoundQuiver, v: &Representation) -> Result<ProjResolution, RepError> {
    let projs = projectives(bq, v.p);
    let res = resolve(bq, &projs, v, MAX_RESOLUTION_LENGTH);
    if !res.complete {
        return Err(RepError::ResolutionTooLong {
            cap: MAX_RESOLUTION_LENGTH,
        });
    }
    Ok(res)
}

/// Rank of `f -> f . d` on `Hom(P, W)`.
fn pullback_rank(bq: &BoundQuiver, source: &Representation, d: &Morphism, target_mod: &Representation, w: &Representation) -> usize {
    let basis = hom_basis(bq, target_mod, w);
    let rows: Vec<Vec<u32>> = basis.iter().map(|f| flatten(&compose(f, d))).collect();
    let len = source.dims.iter().zip(&w.dims).map(|(a, b)| a * b).sum();
    let mut m = MatrixFp::zeros(rows.len(), len, w.p);
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m.rank()
}

/// `dim Ext^k(V, W)` from a minimal projective resolution of `V`.
pub fn ext_dim(bq: &BoundQuiver, v: &Representation, w: &Representation, k: usize) -> Result<usize, RepError> {
    let projs = projectives(bq, v.p);
    ext_dim_with(bq, &projs, v, w, k)
}

pub fn ext_dim_with(
    bq: &BoundQuiver,
    projs: &[Projective],
    v: &Representation,
    w: &Representation,
    k: usize,
) -> Result<usize, RepError> {
    if k >= MAX_RESOLUTION_LENGTH {
        return Err(RepError::ResolutionTooLong {
            cap: MAX_RESOLUTION_LENGTH,
        });
    }
    let res = resolve(bq, projs, v, k + 1);
    Ok(ext_from_resolution(bq, &res, w, k))
}

fn ext_from_resolution(bq: &BoundQuiver, res: &ProjResolution, w: &Representation, k: usize) -> usize {
    if k >= res.modules.len() {
        return 0;
    }
    let pk = &res.modules[k];
    let hom = dim_hom(bq, pk, w);
    let out_rank = res
        .differentials
        .get(k)
        .map_or(0, |d| pullback_rank(bq, &res.modules[k + 1], d, pk, w));
    let in_rank = if k == 0 {
        0
    } else {
        pullback_rank(bq, pk, &res.differentials[k - 1], &res.modules[k - 1], w)
    };
    hom - out_rank - in_rank
}

pub fn projective_dimension(bq: &BoundQuiver, v: &Representation) -> Result<usize, RepError> {
    Ok(projective_resolution(bq, v)?.length().unwrap_or(0))
}

/// The largest projective dimension of a simple.
pub fn global_dimension(bq: &BoundQuiver, p: u32) -> Result<usize, RepError> {
    let projs = projectives(bq, p);
    let mut best = 0;
    for i in 0..bq.vertex_count() {
        let res = resolve(bq, &projs, &Representation::simple(bq, i, p), MAX_RESOLUTION_LENGTH);
        if !res.complete {
            return Err(RepError::ResolutionTooLong {
                cap: MAX_RESOLUTION_LENGTH,
            });
        }
        best = best.max(res.length().unwrap_or(0));
    }
    Ok(best)
}

/// The global dimension, rejected when above 2.
pub fn gldim(bq: &BoundQuiver, p: u32) -> Result<usize, RepError> {
    let g = global_dimension(bq, p)?;
    if g > 2 {
        return Err(RepError::GlobalDimensionTooLarge { gldim: g });
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub hom: usize,
    pub ext1: usize,
    pub ext2: usize,
    pub form: i64,
    pub pass: bool,
}

/// Compares `dim Hom - dim Ext^1 + dim Ext^2` with the bilinear form.
pub fn euler_check(
    bq: &BoundQuiver,
    form: &UnitForm,
    v: &Representation,
    w: &Representation,
) -> Result<EulerCheck, RepError> {
    let projs = projectives(bq, v.p);
    let res = resolve(bq, &projs, v, 3);
    let hom = ext_from_resolution(bq, &res, w, 0);
    let ext1 = ext_from_resolution(bq, &res, w, 1);
    let ext2 = ext_from_resolution(bq, &res, w, 2);
    let value = form.bilinear(&v.dim_vector(), &w.dim_vector())?;
    Ok(EulerCheck {
        hom,
        ext1,
        ext2,
        form: value,
        pass: hom as i64 - ext1 as i64 + ext2 as i64 == value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RConsistency {
    pub relation_counts: Vec<Vec<usize>>,
    pub ext2: Vec<Vec<usize>>,
    /// Pairs `(i, j)` where the relation count differs from `dim Ext^2(S_i, S_j)`.
    pub warnings: Vec<(usize, usize)>,
}

pub fn r_consistency(bq: &BoundQuiver, p: u32) -> Result<RConsistency, RepError> {
    let n = bq.vertex_count();
    let projs = projectives(bq, p);
    let r = bq.relation_counts();
    let simples: Vec<Representation> = (0..n).map(|i| Representation::simple(bq, i, p)).collect();
    let mut ext2 = vec![vec![0; n]; n];
    let mut warnings = Vec::new();
    for i in 0..n {
        let res = resolve(bq, &projs, &simples[i], 3);
        for j in 0..n {
            ext2[i][j] = ext_from_resolution(bq, &res, &simples[j], 2);
            if ext2[i][j] != r[i][j] {
                warnings.push((i, j));
            }
        }
    }
    Ok(RConsistency {
        relation_counts: r,
        ext2,
        warnings,
    })
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest allowed component of a candidate dimension vector.
    pub component: usize,
    /// Largest allowed total dimension.
    pub total: usize,
    /// Largest number of elements enumerated in one exhaustive search.
    pub enumeration: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            component: 3,
            total: 8,
            enumeration: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Indecomposable {
    pub rep: Representation,
    pub dim: DimVector,
    pub end_size: u128,
    pub aut_size: u128,
}

/// How the dimension vectors of the indecomposables compare with the roots.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootComparison {
    pub bijective: bool,
    /// Roots with no indecomposable.
    pub missing: Vec<DimVector>,
    /// Dimension vectors of indecomposables that are not roots.
    pub extra: Vec<DimVector>,
    /// Dimension vectors carried by several indecomposables.
    pub repeated: Vec<DimVector>,
}

/// The indecomposables in a directed order: `Hom(V_k, V_l) = 0` for
/// `k < l` and `Ext^1(V_k, V_l) = 0` for `k >= l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndecompTable {
    pub p: u32,
    pub entries: Vec<Indecomposable>,
    /// `hom[k][l] = dim Hom(V_k, V_l)`.
    pub hom: Vec<Vec<usize>>,
    /// `ext1[k][l] = dim Ext^1(V_k, V_l)`.
    pub ext1: Vec<Vec<usize>>,
    pub roots: RootComparison,
}

/// Finds every indecomposable whose dimension vector is a root (or, in
/// diagnostic mode, lies anywhere within the caps) and orders them.
pub fn enumerate_indecomposables(
    bq: &BoundQuiver,
    p: u32,
    roots: &RootSet,
    caps: &Caps,
    diagnostic: bool,
) -> Result<IndecompTable, RepError> {
    let n = bq.vertex_count();
    let mut candidates: Vec<DimVector> = if diagnostic {
        box_vectors(n, caps.component, caps.total)
    } else {
        roots.roots().to_vec()
    };
    candidates.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| b.cmp(a)));
    for c in &candidates {
        if c.0.iter().any(|&x| x as usize > caps.component) || c.total() as usize > caps.total {
            return Err(RepError::CapExceeded {
                what: format!("dimension vector {c} outside the dimension caps"),
                size: c.total() as u128,
                cap: caps.total as u128,
            });
        }
    }
    let mut found: Vec<Indecomposable> = Vec::new();
    for dim in &candidates {
        found.extend(indecomposables_of_dimension(bq, p, dim, caps)?);
    }
    let roots_cmp = compare_with_roots(&found, roots);
    if !roots_cmp.bijective && p != 2 {
        return Err(RepError::RootBijectionFailure(format!(
            "missing {:?}, extra {:?}, repeated {:?}",
            roots_cmp.missing.iter().map(ToString::to_string).collect::<Vec<_>>(),
            roots_cmp.extra.iter().map(ToString::to_string).collect::<Vec<_>>(),
            roots_cmp.repeated.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    let projs = projectives(bq, p);
    let m = found.len();
    let mut hom = vec![vec![0; m]; m];
    let mut ext1 = vec![vec![0; m]; m];
    for a in 0..m {
        let res = resolve(bq, &projs, &found[a].rep, 2);
        for b in 0..m {
            hom[a][b] = dim_hom(bq, &found[a].rep, &found[b].rep);
            ext1[a][b] = ext_from_resolution(bq, &res, &found[b].rep, 1);
        }
    }
    let order = directed_order(&found, &hom, &ext1)?;
    let permute = |t: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        order.iter().map(|&a| order.iter().map(|&b| t[a][b]).collect()).collect()
    };
    let table = IndecompTable {
        p,
        hom: permute(&hom),
        ext1: permute(&ext1),
        entries: order.iter().map(|&a| found[a].clone()).collect(),
        roots: roots_cmp,
    };
    Ok(table)
}

fn box_vectors(n: usize, component: usize, total: usize) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        let s: i64 = cur.iter().sum();
        if s > 0 && s as usize <= total {
            out.push(DimVector(cur.clone()));
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            cur[k] += 1;
            if cur[k] as usize <= component {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

fn indecomposables_of_dimension(
    bq: &BoundQuiver,
    p: u32,
    dim: &DimVector,
    caps: &Caps,
) -> Result<Vec<Indecomposable>, RepError> {
    let dims = dim.as_usize();
    let shapes: Vec<(usize, usize)> = bq
        .quiver()
        .arrows()
        .iter()
        .map(|a| (dims[a.target], dims[a.source]))
        .collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    checked_size(p, entries, caps.enumeration, || format!("matrix tuples of dimension {dim}"))?;
    let mut out: Vec<Indecomposable> = Vec::new();
    let mut digits = vec![0u32; entries];
    loop {
        let rep = Representation {
            dims: dims.clone(),
            maps: unflatten(&digits, &shapes, p),
            p,
        };
        if relations_vanish(bq, &rep) {
            let mut known = false;
            for f in &out {
                if is_isomorphic(bq, &f.rep, &rep, caps.enumeration)? {
                    known = true;
                    break;
                }
            }
            if !known && is_indecomposable(bq, &rep, caps.enumeration)? {
                let (end_size, aut_size) = end_aut_counts(bq, &rep, caps.enumeration)?;
                out.push(Indecomposable {
                    rep,
                    dim: dim.clone(),
                    end_size,
                    aut_size,
                });
            }
        }
        if !crate::gf::advance(&mut digits, p) {
            break;
        }
    }
    Ok(out)
}

fn compare_with_roots(found: &[Indecomposable], roots: &RootSet) -> RootComparison {
    let mut counts: HashMap<&DimVector, usize> = HashMap::new();
    for f in found {
        *counts.entry(&f.dim).or_default() += 1;
    }
    let missing: Vec<DimVector> = roots.roots().iter().filter(|r| !counts.contains_key(r)).cloned().collect();
    let extra: Vec<DimVector> = found
        .iter()
        .map(|f| &f.dim)
        .filter(|d| !roots.contains(d))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let repeated: Vec<DimVector> = counts
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(d, _)| (*d).clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    RootComparison {
        bijective: missing.is_empty() && extra.is_empty() && repeated.is_empty(),
        missing,
        extra,
        repeated,
    }
}

/// Topological order for the constraints: a nonzero `Hom(V_a, V_b)` puts
/// `b` before `a`; a nonzero `Ext^1(V_a, V_b)` puts `a` before `b`.
fn directed_order(found: &[Indecomposable], hom: &[Vec<usize>], ext1: &[Vec<usize>]) -> Result<Vec<usize>, RepError> {
    let m = found.len();
    let mut before: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indeg = vec![0usize; m];
    for a in 0..m {
        if ext1[a][a] != 0 {
            return Err(RepError::DirectednessFailure(format!(
                "indecomposable of dimension {} has self-extensions",
                found[a].dim
            )));
        }
        for b in 0..m {
            if a == b {
                continue;
            }
            if hom[a][b] != 0 {
                before[b].push(a);
                indeg[a] += 1;
            }
            if ext1[a][b] != 0 {
                before[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(m);
    let mut ready: BTreeSet<usize> = (0..m).filter(|&a| indeg[a] == 0).collect();
    while let Some(a) = ready.pop_first() {
        order.push(a);
        for &b in &before[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if order.len() != m {
        return Err(RepError::DirectednessFailure("Hom and Ext constraints form a cycle".into()));
    }
    Ok(order)
}

impl IndecompTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dims(&self) -> Vec<DimVector> {
        self.entries.iter().map(|e| e.dim.clone()).collect()
    }

    pub fn index_of_dim(&self, d: &DimVector) -> Option<usize> {
        self.entries.iter().position(|e| e.dim == *d)
    }

    /// Both vanishing conditions, re-read from the stored tables.
    pub fn is_directed(&self) -> bool {
        let m = self.len();
        (0..m).all(|k| (0..m).all(|l| (k >= l || self.hom[k][l] == 0) && (k < l || self.ext1[k][l] == 0)))
    }

    /// Multiplicities of the indecomposable summands of `m`, from the hom
    /// counts `dim Hom(V_k, M)` and the triangular hom table.
    pub fn decompose(&self, bq: &BoundQuiver, m: &Representation) -> Result<Vec<u32>, RepError> {
        let dm = m.dim_vector();
        let mut mult = vec![0u32; self.len()];
        for k in 0..self.len() {
            if !self.entries[k].dim.le(&dm) {
                continue;
            }
            let h = dim_hom(bq, &self.entries[k].rep, m) as i64;
            let mut rest = h;
            for l in 0..k {
                rest -= mult[l] as i64 * self.hom[k][l] as i64;
            }
            let diag = self.hom[k][k] as i64;
            if rest < 0 || diag == 0 || rest % diag != 0 {
                return Err(RepError::InconsistentDecomposition(format!(
                    "hom count {h} against indecomposable {} of {dm} is unsolvable",
                    self.entries[k].dim
                )));
            }
            mult[k] = (rest / diag) as u32;
        }
        let mut total = DimVector::zero(dm.len());
        for (k, &c) in mult.iter().enumerate() {
            total = total.add(&self.entries[k].dim.scale(c as i64));
        }
        if total != dm {
            return Err(RepError::InconsistentDecomposition(format!(
                "summands add up to {total}, not {dm}"
            )));
        }
        Ok(mult)
    }

    /// The direct sum `(+)_l V_l^{m_l}`.
    pub fn assemble(&self, bq: &BoundQuiver, mult: &[u32]) -> Representation {
        let mut out = Representation::zero_maps(bq, vec![0; bq.vertex_count()], self.p);
        for (k, &c) in mult.iter().enumerate() {
            for _ in 0..c {
                out = out.direct_sum(&self.entries[k].rep);
            }
        }
        out
    }

    /// `|Aut((+)_l V_l^{m_l})|` when every indecomposable is a brick:
    /// the endomorphism ring modulo its radical is a product of matrix
    /// rings `M_{m_l}(F_p)`.
    pub fn aut_size(&self, mult: &[u32]) -> Option<u128> {
        if (0..self.len()).any(|l| mult[l] > 0 && self.hom[l][l] != 1) {
            return None;
        }
        let mut end_dim = 0u64;
        for k in 0..self.len() {
            for l in 0..self.len() {
                end_dim += mult[k] as u64 * mult[l] as u64 * self.hom[k][l] as u64;
            }
        }
        let semisimple: u64 = mult.iter().map(|&m| (m as u64) * (m as u64)).sum();
        let p = self.p as u128;
        let mut out = p.checked_pow((end_dim - semisimple) as u32)?;
        for &m in mult {
            out = out.checked_mul(gl_order(m, self.p)?)?;
        }
        Some(out)
    }
}

/// `|GL_m(F_p)| = prod_{k<m} (p^m - p^k)`.
pub fn gl_order(m: u32, p: u32) -> Option<u128> {
    let p = p as u128;
    let pm = p.checked_pow(m)?;
    let mut out = 1u128;
    for k in 0..m {
        out = out.checked_mul(pm - p.pow(k))?;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse;

    fn a2() -> BoundQuiver {
        parse("vertex 1\nvertex 2\narrow a 1 2\n").unwrap()
    }

    fn example_one() -> BoundQuiver {
        parse("vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\nrelation 1*a,b\n").unwrap()
    }

    fn square(relations: &str) -> BoundQuiver {
        parse(&format!(
            "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a1 1 2\narrow a2 2 4\narrow b1 1 3\narrow b2 3 4\n{relations}"
        ))
        .unwrap()
    }

    fn m(p: u32, rows: &[Vec<i64>]) -> MatrixFp {
        MatrixFp::from_rows(p, rows)
    }

    fn rep(bq: &BoundQuiver, dims: &[usize], maps: Vec<MatrixFp>, p: u32) -> Representation {
        Representation::new(bq, dims.to_vec(), maps, p).unwrap()
    }

    #[test]
    fn boundness() {
        let bq = example_one();
        let r = rep(&bq, &[1, 1, 1], vec![m(3, &[vec![1]]), m(3, &[vec![1]])], 3);
        assert!(!is_bound(&bq, &r).unwrap());
        assert!(is_bound(&bq, &Representation::zero_maps(&bq, vec![2, 1, 2], 3)).unwrap());
        let sq = square("relation 1*a1,a2 + -1*b1,b2\n");
        let one = || m(3, &[vec![1]]);
        let r = rep(&sq, &[1, 1, 1, 1], vec![one(), one(), one(), one()], 3);
        assert!(is_bound(&sq, &r).unwrap());
        let bad = Representation {
            dims: vec![1, 1, 1],
            maps: vec![m(3, &[vec![1, 0]]), m(3, &[vec![1]])],
            p: 3,
        };
        assert!(matches!(is_bound(&bq, &bad), Err(RepError::ShapeMismatch(_))));
    }

    #[test]
    fn hom_dimensions() {
        let bq = a2();
        let p_rep = rep(&bq, &[1, 1], vec![m(3, &[vec![1]])], 3);
        let s1 = Representation::simple(&bq, 0, 3);
        let s2 = Representation::simple(&bq, 1, 3);
        assert_eq!(dim_hom(&bq, &s1, &s1), 1);
        assert_eq!(dim_hom(&bq, &p_rep, &s2), 0);
        assert_eq!(dim_hom(&bq, &p_rep, &s1), 1);
        assert_eq!(dim_hom(&bq, &s2, &p_rep), 1);
        let e1 = example_one();
        let v110 = rep(&e1, &[1, 1, 0], vec![m(3, &[vec![1]]), MatrixFp::zeros(0, 1, 3)], 3);
        assert_eq!(dim_hom(&e1, &v110, &Representation::simple(&e1, 0, 3)), 1);
        for f in hom_basis(&bq, &p_rep, &s1) {
            assert_eq!(f[1].mul(&p_rep.maps[0]), s1.maps[0].mul(&f[0]));
        }
    }

    #[test]
    fn end_and_aut() {
        let bq = a2();
        let s1 = Representation::simple(&bq, 0, 3);
        assert_eq!(end_aut_counts(&bq, &s1, 1000).unwrap(), (3, 2));
        assert_eq!(end_aut_counts(&bq, &s1.direct_sum(&s1), 1000).unwrap(), (81, 48));
        let p_rep = rep(&bq, &[1, 1], vec![m(3, &[vec![1]])], 3);
        assert_eq!(end_aut_counts(&bq, &p_rep, 1000).unwrap(), (3, 2));
        assert!(matches!(
            end_aut_counts(&bq, &s1.direct_sum(&s1), 10),
            Err(RepError::CapExceeded { .. })
        ));
        assert_eq!(gl_order(2, 3), Some(48));
    }

    #[test]
    fn isomorphism() {
        let bq = a2();
        let one = rep(&bq, &[1, 1], vec![m(3, &[vec![1]])], 3);
        let two = rep(&bq, &[1, 1], vec![m(3, &[vec![2]])], 3);
        let zero = rep(&bq, &[1, 1], vec![m(3, &[vec![0]])], 3);
        assert!(is_isomorphic(&bq, &one, &one, 100).unwrap());
        assert!(is_isomorphic(&bq, &one, &two, 100).unwrap());
        assert!(!is_isomorphic(&bq, &one, &zero, 100).unwrap());
        let s1 = Representation::simple(&bq, 0, 3);
        let s2 = Representation::simple(&bq, 1, 3);
        assert!(!is_isomorphic(&bq, &s1, &s2, 100).unwrap());
    }

    #[test]
    fn projective_dimensions() {
        let e1 = example_one();
        let projs = projectives(&e1, 3);
        assert_eq!(projs[0].rep.dims(), &[1, 1, 0]);
        assert_eq!(projs[2].rep.dims(), &[0, 0, 1]);
        let sq = square("relation 1*a1,a2 + -1*b1,b2\n");
        let projs = projectives(&sq, 3);
        assert_eq!(projs[0].rep.dims(), &[1, 1, 1, 1]);
        assert!(is_bound(&sq, &projs[0].rep).unwrap());
        assert!(is_indecomposable(&sq, &projs[0].rep, 1000).unwrap());
    }

    #[test]
    fn ext_groups() {
        let bq = a2();
        let s1 = Representation::simple(&bq, 0, 3);
        let s2 = Representation::simple(&bq, 1, 3);
        assert_eq!(ext_dim(&bq, &s1, &s2, 1).unwrap(), 1);
        assert_eq!(ext_dim(&bq, &s2, &s1, 1).unwrap(), 0);
        let e1 = example_one();
        let t1 = Representation::simple(&e1, 0, 3);
        let t3 = Representation::simple(&e1, 2, 3);
        assert_eq!(ext_dim(&e1, &t1, &t3, 2).unwrap(), 1);
        for pr in projectives(&e1, 3) {
            for k in 1..3 {
                assert_eq!(ext_dim(&e1, &pr.rep, &t3, k).unwrap(), 0);
            }
        }
        let res = projective_resolution(&e1, &t1).unwrap();
        assert_eq!(res.length(), Some(2));
        assert!(res.verify(&e1, &t1));
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(gldim(&a2(), 3).unwrap(), 1);
        assert_eq!(gldim(&example_one(), 3).unwrap(), 2);
        assert_eq!(gldim(&square("relation 1*a1,a2\nrelation 1*b1,b2\n"), 3).unwrap(), 2);
        let a4 = parse("vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation 1*a,b\nrelation 1*b,c\n").unwrap();
        assert_eq!(gldim(&a4, 3), Err(RepError::GlobalDimensionTooLarge { gldim: 3 }));
    }

    #[test]
    fn euler_identity_on_simples() {
        let e1 = example_one();
        let t = UnitForm::of_bound_quiver(&e1);
        let s = |i| Representation::simple(&e1, i, 3);
        let c13 = euler_check(&e1, &t, &s(0), &s(2)).unwrap();
        assert_eq!((c13.hom, c13.ext1, c13.ext2, c13.form, c13.pass), (0, 0, 1, 1, true));
        let c12 = euler_check(&e1, &t, &s(0), &s(1)).unwrap();
        assert_eq!((c12.hom, c12.ext1, c12.ext2, c12.form, c12.pass), (0, 1, 0, -1, true));
        assert!(euler_check(&e1, &t, &s(1), &s(1)).unwrap().pass);
        let rc = r_consistency(&e1, 3).unwrap();
        assert_eq!(rc.ext2[0][2], 1);
        assert!(rc.warnings.is_empty());
        let rc4 = r_consistency(&square("relation 1*a1,a2\nrelation 1*b1,b2\n"), 3).unwrap();
        assert_eq!(rc4.ext2[0][3], 2);
        assert!(rc4.warnings.is_empty());
    }

    #[test]
    fn indecomposables_and_decomposition() {
        let e1 = example_one();
        let t = UnitForm::of_bound_quiver(&e1);
        let roots = t.positive_roots(6).unwrap();
        let table = enumerate_indecomposables(&e1, 3, &roots, &Caps::default(), false).unwrap();
        assert_eq!(table.len(), 5);
        assert!(table.is_directed());
        assert!(table.roots.bijective);
        for (k, e) in table.entries.iter().enumerate() {
            let mut expect = vec![0; 5];
            expect[k] = 1;
            assert_eq!(table.decompose(&e1, &e.rep).unwrap(), expect);
        }
        let r = rep(&e1, &[1, 1, 1], vec![m(3, &[vec![1]]), m(3, &[vec![0]])], 3);
        let mult = table.decompose(&e1, &r).unwrap();
        let k110 = table.index_of_dim(&DimVector(vec![1, 1, 0])).unwrap();
        let k001 = table.index_of_dim(&DimVector(vec![0, 0, 1])).unwrap();
        let mut expect = vec![0; 5];
        expect[k110] = 1;
        expect[k001] = 1;
        assert_eq!(mult, expect);
        let a = a2();
        let ta = UnitForm::of_bound_quiver(&a);
        let tab = enumerate_indecomposables(&a, 3, &ta.positive_roots(6).unwrap(), &Caps::default(), false).unwrap();
        let dims: Vec<String> = tab.dims().iter().map(ToString::to_string).collect();
        assert_eq!(dims, ["(1,0)", "(1,1)", "(0,1)"]);
        let split = Representation::zero_maps(&a, vec![1, 1], 3);
        assert_eq!(tab.decompose(&a, &split).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn single_vertex_table() {
        let bq = parse("vertex 1\n").unwrap();
        let t = UnitForm::of_bound_quiver(&bq);
        let table = enumerate_indecomposables(&bq, 3, &t.positive_roots(6).unwrap(), &Caps::default(), true).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.entries[0].dim, DimVector(vec![1]));
    }

    #[test]
    fn subrepresentations_and_quotients() {
        let bq = a2();
        let p_rep = rep(&bq, &[1, 1], vec![m(3, &[vec![1]])], 3);
        let subs = enumerate_subreps(&bq, &p_rep, &[0, 1], 1000).unwrap();
        assert_eq!(subs.len(), 1);
        assert!(enumerate_subreps(&bq, &p_rep, &[1, 0], 1000).unwrap().is_empty());
        let q = p_rep.quotient(&bq, &subs[0]);
        assert_eq!(q.dims(), &[1, 0]);
        let s = Representation::simple(&bq, 0, 3);
        let ss = s.direct_sum(&s);
        assert_eq!(enumerate_subreps(&bq, &ss, &[1, 0], 1000).unwrap().len(), 4);
    }

    #[test]
    fn aut_formula_matches_exhaustive_count() {
        let bq = a2();
        let t = UnitForm::of_bound_quiver(&bq);
        let tab = enumerate_indecomposables(&bq, 3, &t.positive_roots(6).unwrap(), &Caps::default(), false).unwrap();
        for mult in [[1u32, 0, 1], [2, 1, 0], [1, 1, 1], [0, 2, 1], [0, 0, 2]] {
            let r = tab.assemble(&bq, &mult);
            let (_, aut) = end_aut_counts(&bq, &r, 10_000_000).unwrap();
            assert_eq!(tab.aut_size(&mult), Some(aut), "{mult:?}");
        }
    }
}
