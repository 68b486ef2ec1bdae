//! Lattice polytopes: hulls, volumes, Minkowski sums and mixed volumes.
//!
//! Hulls are built by incremental insertion (a placing triangulation):
//! points are inserted in lexicographic order, each point outside the
//! current hull is coned over the boundary simplices it sees. The cones
//! triangulate the polytope, so the normalized volume is the sum of the
//! absolute simplex determinants and is an exact integer.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::polyring::Polynomial;
use crate::polyring::Rational;
use crate::{Error, Result};

/// A facet inequality `normal · x <= offset` with primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn eval(&self, x: &[i64]) -> i128 {
        self.normal
            .iter()
            .zip(x)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.eval(x) <= self.offset as i128
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.eval(x) == self.offset as i128
    }
}

/// Result of a hull computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    /// Dimension of the affine span (`-1` is never produced; a point has 0).
    pub affine_dim: usize,
    pub vertices: Vec<Vec<i64>>,
    /// Facets; empty unless the points are full dimensional.
    pub facets: Vec<Facet>,
    /// `d! · vol` in the ambient dimension `d`; zero when not full dimensional.
    pub normalized_volume: u128,
}

/// Integer-vertex polytope with its hull cached.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    points: Vec<Vec<i64>>,
    hull: Hull,
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.hull.vertices)
            .finish()
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.hull.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

impl LatticePolytope {
    /// Hull of the given points; all points must have length `dim`.
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter(
                "a polytope needs at least one point".into(),
            ));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let set: BTreeSet<Vec<i64>> = points.into_iter().collect();
        let points: Vec<Vec<i64>> = set.into_iter().collect();
        let hull = convex_hull(&points);
        Ok(LatticePolytope { dim, points, hull })
    }

    /// Polytope from a matrix whose columns are the points (rows are coordinates).
    pub fn from_columns(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("ragged exponent matrix".into()));
        }
        let pts = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        LatticePolytope::new(dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Deduplicated generating points, sorted.
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn hull(&self) -> &Hull {
        &self.hull
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.hull.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.hull.facets
    }

    pub fn affine_dim(&self) -> usize {
        self.hull.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.hull.affine_dim == self.dim
    }

    /// Whether `x` lies in the polytope.
    pub fn contains(&self, x: &[i64]) -> bool {
        if self.is_full_dimensional() {
            return self.hull.facets.iter().all(|f| f.contains(x));
        }
        let mut pts = self.hull.vertices.clone();
        if pts.contains(&x.to_vec()) {
            return true;
        }
        pts.push(x.to_vec());
        pts.sort();
        convex_hull(&pts).vertices == self.hull.vertices
    }

    /// `c · P`.
    pub fn scale(&self, c: i64) -> LatticePolytope {
        let pts = self
            .hull
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * c).collect())
            .collect();
        LatticePolytope::new(self.dim, pts).expect("nonempty")
    }

    /// Places the coordinates of `self` at positions `coords` of a `dim`-space.
    pub fn embed(&self, dim: usize, coords: &[usize]) -> Result<LatticePolytope> {
        if coords.len() != self.dim || coords.iter().any(|&c| c >= dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        let pts = self
            .points
            .iter()
            .map(|p| {
                let mut q = vec![0; dim];
                for (&c, &x) in coords.iter().zip(p) {
                    q[c] = x;
                }
                q
            })
            .collect();
        LatticePolytope::new(dim, pts)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dim: self.dim,
            points: self.points.clone(),
        }
    }

    pub fn from_json(j: &PolytopeJson) -> Result<Self> {
        LatticePolytope::new(j.dim, j.points.clone())
    }
}

/// Newton polytope of `p`, dropping coordinates whose exponent is constant.
pub fn newton_polytope(p: &Polynomial, drop_vars: &[&str]) -> Result<LatticePolytope> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = p.ring();
    let mut dropped = Vec::new();
    for name in drop_vars {
        dropped.push(ring.require(name)?);
    }
    for &d in &dropped {
        let mut exps = p.support().map(|m| m.exponents()[d]);
        let first = exps.next().expect("nonzero");
        if exps.any(|e| e != first) {
            return Err(Error::NonconstantDroppedExponent(ring.vars()[d].clone()));
        }
    }
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !dropped.contains(i)).collect();
    let pts = p
        .support()
        .map(|m| keep.iter().map(|&i| m.exponents()[i] as i64).collect())
        .collect();
    LatticePolytope::new(keep.len(), pts)
}

/// Euclidean volume in the ambient dimension.
pub fn volume(p: &LatticePolytope) -> Rational {
    Rational::new(
        (p.hull.normalized_volume as i128).into(),
        (factorial(p.dim) as i128).into(),
    )
}

/// `d! · vol(P)`.
pub fn normalized_volume(p: &LatticePolytope) -> u128 {
    p.hull.normalized_volume
}

pub fn minkowski_sum(ps: &[LatticePolytope]) -> Result<LatticePolytope> {
    let Some(first) = ps.first() else {
        return Err(Error::InvalidParameter("empty Minkowski sum".into()));
    };
    let dim = first.dim;
    let mut acc: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; dim]]);
    for p in ps {
        if p.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim,
            });
        }
        let mut next = BTreeSet::new();
        for a in &acc {
            for v in p.vertices() {
                next.insert(a.iter().zip(v).map(|(x, y)| x + y).collect::<Vec<i64>>());
            }
        }
        // keep only the vertices of partial sums
        let partial = LatticePolytope::new(dim, next.into_iter().collect())?;
        acc = partial.hull.vertices.into_iter().collect();
    }
    LatticePolytope::new(dim, acc.into_iter().collect())
}

/// Mixed volume normalized so that `MV(P, ..., P) = m! vol(P)`.
pub fn mixed_volume(ps: &[LatticePolytope]) -> Result<u128> {
    mv_with_multiplicity(ps, &vec![1; ps.len()])
}

/// `MV(Q_1[k_1], ..., Q_r[k_r])`: each `Q_j` repeated `k_j` times.
///
/// Uses the inclusion–exclusion formula grouped by multiplicity:
/// `Σ_c (-1)^{m-|c|} Π C(k_j, c_j) · vol(Σ c_j Q_j)`.
pub fn mv_with_multiplicity(qs: &[LatticePolytope], ks: &[usize]) -> Result<u128> {
    if qs.len() != ks.len() {
        return Err(Error::DimensionMismatch {
            expected: qs.len(),
            found: ks.len(),
        });
    }
    let m: usize = ks.iter().sum();
    for q in qs {
        if q.dim != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: q.dim,
            });
        }
    }
    if m == 0 {
        return Ok(1);
    }
    let mut total: i128 = 0;
    let mut c = vec![0usize; qs.len()];
    loop {
        let used: usize = c.iter().sum();
        if used > 0 {
            let parts: Vec<LatticePolytope> = qs
                .iter()
                .zip(&c)
                .filter(|(_, &cj)| cj > 0)
                .map(|(q, &cj)| q.scale(cj as i64))
                .collect();
            let nv = normalized_volume(&minkowski_sum(&parts)?) as i128;
            let mult: i128 = ks.iter().zip(&c).map(|(&k, &cj)| binomial(k, cj)).product();
            let sign = if (m - used) % 2 == 0 { 1 } else { -1 };
            total += sign * mult * nv;
        }
        // next multi-index
        let mut i = 0;
        while i < c.len() {
            if c[i] < ks[i] {
                c[i] += 1;
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == c.len() {
            break;
        }
    }
    let f = factorial(m) as i128;
    if total < 0 || total % f != 0 {
        return Err(Error::NonIntegerResult(format!("{total}/{f}")));
    }
    Ok((total / f) as u128)
}

/// Hull of variable-disjoint polytopes placed in complementary coordinates.
pub fn free_sum(ps: &[LatticePolytope]) -> Result<LatticePolytope> {
    let dim: usize = ps.iter().map(|p| p.dim).sum();
    let mut pts = Vec::new();
    let mut off = 0;
    for p in ps {
        for x in &p.points {
            let mut q = vec![0; dim];
            q[off..off + p.dim].copy_from_slice(x);
            pts.push(q);
        }
        off += p.dim;
    }
    LatticePolytope::new(dim, pts)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn binomial(n: usize, k: usize) -> i128 {
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Determinant by fraction-free elimination.
pub(crate) fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Rank over the rationals of integer row vectors.
pub(crate) fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            for j in 0..ncols {
                m[i][j] = m[i][j] * a - m[r][j] * b;
            }
            let g = m[i].iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                for x in m[i].iter_mut() {
                    *x /= g;
                }
            }
        }
        r += 1;
    }
    r
}

/// Normal to the hyperplane through `k` points in `k`-space, primitive.
fn hyperplane(pts: &[&Vec<i128>]) -> Vec<i128> {
    let k = pts[0].len();
    let w: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut n = Vec::with_capacity(k);
    for j in 0..k {
        let minor: Vec<Vec<i128>> = w
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let d = det(minor);
        n.push(if j % 2 == 0 { d } else { -d });
    }
    let g = n.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in n.iter_mut() {
            *x /= g;
        }
    }
    n
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct TriFacet {
    verts: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
}

/// Hull of deduplicated, lexicographically sorted points.
pub fn convex_hull(points: &[Vec<i64>]) -> Hull {
    let d = points.first().map_or(0, Vec::len);
    let pts: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.iter().map(|&x| x as i128).collect())
        .collect();
    // affine basis chosen greedily in input order
    let mut basis = vec![0usize];
    let mut dirs: Vec<Vec<i128>> = Vec::new();
    for i in 1..pts.len() {
        let v: Vec<i128> = pts[i].iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
        dirs.push(v);
        if rank(&dirs) == basis.len() {
            basis.push(i);
        } else {
            dirs.pop();
        }
        if basis.len() == d + 1 {
            break;
        }
    }
    let k = basis.len() - 1;
    if k == 0 {
        return Hull {
            affine_dim: 0,
            vertices: vec![points[0].clone()],
            facets: Vec::new(),
            normalized_volume: if d == 0 { 1 } else { 0 },
        };
    }
    if k < d {
        // project to k coordinates on which the affine span maps bijectively
        let coords = independent_columns(&dirs, k);
        let proj: Vec<Vec<i128>> = pts
            .iter()
            .map(|p| coords.iter().map(|&c| p[c]).collect())
            .collect();
        let (vidx, _, _) = full_hull(&proj, k);
        let mut vertices: Vec<Vec<i64>> = vidx.iter().map(|&i| points[i].clone()).collect();
        vertices.sort();
        return Hull {
            affine_dim: k,
            vertices,
            facets: Vec::new(),
            normalized_volume: 0,
        };
    }
    let (vidx, facets, nv) = full_hull(&pts, d);
    let mut vertices: Vec<Vec<i64>> = vidx.iter().map(|&i| points[i].clone()).collect();
    vertices.sort();
    Hull {
        affine_dim: d,
        vertices,
        facets,
        normalized_volume: nv,
    }
}

fn independent_columns(dirs: &[Vec<i128>], k: usize) -> Vec<usize> {
    let d = dirs[0].len();
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..d {
        chosen.push(c);
        let sub: Vec<Vec<i128>> = dirs
            .iter()
            .map(|r| chosen.iter().map(|&j| r[j]).collect())
            .collect();
        if rank(&sub) < chosen.len() {
            chosen.pop();
        }
        if chosen.len() == k {
            break;
        }
    }
    chosen
}

/// Hull of full dimensional points in `d`-space: vertex indices, facets,
/// normalized volume.
fn full_hull(pts: &[Vec<i128>], d: usize) -> (Vec<usize>, Vec<Facet>, u128) {
    if d == 1 {
        let (mut lo, mut hi) = (0, 0);
        for i in 0..pts.len() {
            if pts[i][0] < pts[lo][0] {
                lo = i;
            }
            if pts[i][0] > pts[hi][0] {
                hi = i;
            }
        }
        let facets = vec![
            Facet {
                normal: vec![-1],
                offset: -(pts[lo][0] as i64),
            },
            Facet {
                normal: vec![1],
                offset: pts[hi][0] as i64,
            },
        ];
        return (vec![lo, hi], facets, (pts[hi][0] - pts[lo][0]) as u128);
    }
    // initial simplex
    let mut simplex = vec![0usize];
    let mut dirs: Vec<Vec<i128>> = Vec::new();
    for i in 1..pts.len() {
        let v: Vec<i128> = pts[i].iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
        dirs.push(v);
        if rank(&dirs) == simplex.len() {
            simplex.push(i);
        } else {
            dirs.pop();
        }
        if simplex.len() == d + 1 {
            break;
        }
    }
    // (d+1) times the simplex centroid, strictly interior forever
    let center: Vec<i128> = (0..d).map(|c| simplex.iter().map(|&i| pts[i][c]).sum()).collect();
    let scale = (d + 1) as i128;
    let make = |verts: Vec<usize>| -> TriFacet {
        let refs: Vec<&Vec<i128>> = verts.iter().map(|&i| &pts[i]).collect();
        let mut normal = hyperplane(&refs);
        let mut offset = dot(&normal, &pts[verts[0]]);
        if dot(&normal, &center) > scale * offset {
            for x in normal.iter_mut() {
                *x = -*x;
            }
            offset = -offset;
        }
        TriFacet {
            verts,
            normal,
            offset,
        }
    };
    let mut facets: Vec<TriFacet> = (0..=d)
        .map(|skip| {
            let mut v: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, &i)| i)
                .collect();
            v.sort_unstable();
            make(v)
        })
        .collect();
    let simplex_det = {
        let rows: Vec<Vec<i128>> = simplex[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(&pts[simplex[0]]).map(|(a, b)| a - b).collect())
            .collect();
        det(rows).unsigned_abs()
    };
    let mut nv: u128 = simplex_det;
    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for p in 0..pts.len() {
        if in_simplex.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = (0..facets.len())
            .filter(|&f| dot(&facets[f].normal, &pts[p]) > facets[f].offset)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for &f in &visible {
            let fv = &facets[f].verts;
            let rows: Vec<Vec<i128>> = fv
                .iter()
                .map(|&i| pts[i].iter().zip(&pts[p]).map(|(a, b)| a - b).collect())
                .collect();
            nv += det(rows).unsigned_abs();
            for skip in 0..fv.len() {
                let r: Vec<usize> = fv
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &i)| i)
                    .collect();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        let vis: BTreeSet<usize> = visible.into_iter().collect();
        let mut kept: Vec<TriFacet> = facets
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !vis.contains(i))
            .map(|(_, f)| f)
            .collect();
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for mut r in horizon {
            r.push(p);
            r.sort_unstable();
            kept.push(make(r));
        }
        facets = kept;
    }

    // merge coplanar boundary simplices into polytope facets
    let mut planes: BTreeSet<Facet> = BTreeSet::new();
    for f in &facets {
        planes.insert(Facet {
            normal: f.normal.iter().map(|&x| x as i64).collect(),
            offset: f.offset as i64,
        });
    }
    let planes: Vec<Facet> = planes.into_iter().collect();
    let mut on_boundary: BTreeSet<usize> = BTreeSet::new();
    for f in &facets {
        on_boundary.extend(f.verts.iter().copied());
    }
    let mut vertices = Vec::new();
    for &i in &on_boundary {
        let normals: Vec<Vec<i128>> = planes
            .iter()
            .filter(|pl| {
                dot(&pl.normal.iter().map(|&x| x as i128).collect::<Vec<_>>(), &pts[i]) == pl.offset as i128
            })
            .map(|pl| pl.normal.iter().map(|&x| x as i128).collect())
            .collect();
        if rank(&normals) == d {
            vertices.push(i);
        }
    }
    (vertices, planes, nv)
}
