//! Exact lattice-polytope kernel.
//!
//! Polytopes are kept in vertex representation only. Every query that needs
//! more than the vertex list (hull membership, supporting hyperplanes, faces)
//! is answered by an exact rational feasibility problem, see [`crate::lp`].
//! Nothing assumes full dimensionality: points, segments and polytopes lying
//! inside a hyperplane are handled like any other polytope.

mod faces;
pub(crate) mod linalg;

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp::{LinearSystem, Relation};
use crate::poly::Polynomial;

pub use faces::{edges, face, faces, is_face_of, is_supporting, FaceWitness, Hyperplane, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hyperplane is not supporting")]
    NotSupporting,
    #[error("the zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
}

/// An integral point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coordinate_sum(&self, indices: &[usize]) -> i64 {
        indices.iter().map(|&i| self.0[i]).sum()
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A polytope with integral vertices, stored as its sorted set of extreme
/// points. Two polytopes are equal iff their vertex lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolytopeDoc")]
pub struct IntegralPolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
}

#[derive(Deserialize)]
struct PolytopeDoc {
    dim: usize,
    vertices: Vec<LatticePoint>,
}

impl TryFrom<PolytopeDoc> for IntegralPolytope {
    type Error = GeometryError;
    fn try_from(doc: PolytopeDoc) -> Result<Self, GeometryError> {
        if let Some(bad) = doc.vertices.iter().find(|v| v.dim() != doc.dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: doc.dim,
                found: bad.dim(),
            });
        }
        convex_hull(&doc.vertices)
    }
}

impl IntegralPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Lexicographically smallest vertex.
    pub fn lex_min(&self) -> &LatticePoint {
        &self.vertices[0]
    }

    pub fn point(p: LatticePoint) -> Self {
        IntegralPolytope {
            dim: p.dim(),
            vertices: vec![p],
        }
    }

    /// Builds a polytope from points already known to be its vertices.
    /// Callers inside the crate use this when extremality follows from the
    /// construction (faces of a polytope, translates).
    pub(crate) fn from_vertices_unchecked(dim: usize, mut vertices: Vec<LatticePoint>) -> Self {
        vertices.sort();
        vertices.dedup();
        IntegralPolytope { dim, vertices }
    }

    pub fn translate(&self, by: &LatticePoint) -> Self {
        IntegralPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v + by).collect(),
        }
    }

    /// Affine dimension of the polytope.
    pub fn affine_dim(&self) -> usize {
        let base = &self.vertices[0];
        let diffs: Vec<Vec<i64>> = self.vertices[1..].iter().map(|v| (v - base).0).collect();
        linalg::rank(&diffs, self.dim)
    }

    /// Exact membership test.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        point_in_hull(p, &self.vertices)
    }

    /// Coordinates along which the polytope is not constant.
    pub fn varying_coordinates(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&c| {
                self.vertices
                    .iter()
                    .any(|v| v.0[c] != self.vertices[0].0[c])
            })
            .collect()
    }

    /// Restriction to the given coordinates. Only valid when every dropped
    /// coordinate is constant on the polytope, e.g. with `coords` taken from
    /// [`varying_coordinates`](Self::varying_coordinates).
    pub fn project(&self, coords: &[usize]) -> Self {
        let vs = self
            .vertices
            .iter()
            .map(|v| LatticePoint(coords.iter().map(|&c| v.0[c]).collect()))
            .collect();
        // A coordinate projection that drops only constant coordinates is
        // injective on the polytope, so extreme points stay extreme.
        Self::from_vertices_unchecked(coords.len(), vs)
    }

    /// All lattice points of the polytope, or `None` once more than `limit`
    /// have been found.
    pub fn lattice_points(&self, limit: usize) -> Option<Vec<LatticePoint>> {
        let lo: Vec<i64> = (0..self.dim)
            .map(|c| self.vertices.iter().map(|v| v.0[c]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..self.dim)
            .map(|c| self.vertices.iter().map(|v| v.0[c]).max().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticePoint(cur.clone());
            if self.vertices.binary_search(&p).is_ok() || self.contains(&p) {
                out.push(p);
                if out.len() > limit {
                    return None;
                }
            }
            // Odometer over the bounding box, last coordinate fastest.
            let mut c = self.dim;
            loop {
                if c == 0 {
                    out.sort();
                    return Some(out);
                }
                c -= 1;
                if cur[c] < hi[c] {
                    cur[c] += 1;
                    break;
                }
                cur[c] = lo[c];
            }
        }
    }
}

impl fmt::Display for IntegralPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Is `p` a convex combination of `pts`?
fn point_in_hull(p: &LatticePoint, pts: &[LatticePoint]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let dim = p.dim();
    for c in 0..dim {
        let (lo, hi) = pts.iter().fold((i64::MAX, i64::MIN), |(lo, hi), q| {
            (lo.min(q.0[c]), hi.max(q.0[c]))
        });
        if p.0[c] < lo || p.0[c] > hi {
            return false;
        }
    }
    if pts.contains(p) {
        return true;
    }
    let mut sys = LinearSystem::new(pts.len());
    sys.push(vec![1; pts.len()], Relation::Eq, 1);
    for c in 0..dim {
        sys.push(pts.iter().map(|q| q.0[c]).collect(), Relation::Eq, p.0[c]);
    }
    sys.is_feasible()
}

/// Extreme points of a finite point set.
pub fn convex_hull(points: &[LatticePoint]) -> Result<IntegralPolytope, GeometryError> {
    let first = points.first().ok_or(GeometryError::Empty)?;
    let dim = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeometryError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    // Dropping a point that lies in the hull of the rest never changes the
    // hull, so the filter can shrink the candidate set as it goes.
    let mut i = 0;
    while i < pts.len() {
        if pts.len() > 1 {
            let p = pts.remove(i);
            if point_in_hull(&p, &pts) {
                continue;
            }
            pts.insert(i, p);
        }
        i += 1;
    }
    Ok(IntegralPolytope { dim, vertices: pts })
}

/// `conv(supp(p))`.
pub fn newton_polytope(p: &Polynomial) -> Result<IntegralPolytope, GeometryError> {
    let pts: Vec<LatticePoint> = p
        .support()
        .into_iter()
        .map(|e| e.to_lattice_point())
        .collect();
    if pts.is_empty() {
        return Err(GeometryError::ZeroPolynomial);
    }
    convex_hull(&pts)
}

pub fn minkowski_sum(
    a: &IntegralPolytope,
    b: &IntegralPolytope,
) -> Result<IntegralPolytope, GeometryError> {
    if a.dim != b.dim {
        return Err(GeometryError::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let sums: Vec<LatticePoint> = a
        .vertices
        .iter()
        .flat_map(|u| b.vertices.iter().map(move |v| u + v))
        .collect();
    convex_hull(&sums)
}
