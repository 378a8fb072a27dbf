use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::linalg::{self, dot};
use super::{GeometryError, IntegralPolytope, LatticePoint};
use crate::lp::{LinearSystem, Relation};

/// The hyperplane `{x : normal · x = offset}`.
///
/// Stored normalized: the gcd of all entries of `normal` together with
/// `offset` is 1 and the first nonzero entry of `normal` is positive. Every
/// hyperplane that passes through a lattice point therefore has a primitive
/// normal; a plane such as `2 x1 = 1` keeps its non-primitive normal because
/// it cannot be scaled to integers otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<i64>,
    offset: i64,
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Self, GeometryError> {
        let g = normal.iter().fold(offset.abs(), |acc, &x| acc.gcd(&x));
        let first = normal
            .iter()
            .copied()
            .find(|&x| x != 0)
            .ok_or(GeometryError::ZeroNormal)?;
        let s = if first < 0 { -g } else { g };
        Ok(Hyperplane {
            normal: normal.iter().map(|x| x / s).collect(),
            offset: offset / s,
        })
    }

    /// Hyperplane `x_index = value`.
    pub fn coordinate(dim: usize, index: usize, value: i64) -> Self {
        let mut normal = vec![0; dim];
        normal[index] = 1;
        Hyperplane {
            normal,
            offset: value,
        }
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Sign of `normal · p - offset`.
    pub fn side_of(&self, p: &LatticePoint) -> Ordering {
        dot(&self.normal, p.coords()).cmp(&(self.offset as i128))
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.side_of(p) == Ordering::Equal
    }
}

/// Which closed half-space contains the parent polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `normal · x <= offset`
    Below,
    /// `normal · x >= offset`
    Above,
}

/// A face together with the supporting hyperplane that cuts it out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWitness {
    pub face: IntegralPolytope,
    pub plane: Hyperplane,
    pub side: Side,
}

impl FaceWitness {
    /// Re-checks the witness against `parent`.
    pub fn verify(&self, parent: &IntegralPolytope) -> bool {
        match face(parent, &self.plane) {
            Ok(w) => w.face == self.face && w.side == self.side,
            Err(_) => false,
        }
    }
}

fn supporting_side(pt: &IntegralPolytope, h: &Hyperplane) -> Option<Side> {
    if h.dim() != pt.dim() {
        return None;
    }
    let (mut below, mut above, mut on) = (false, false, false);
    for v in pt.vertices() {
        match h.side_of(v) {
            Ordering::Less => below = true,
            Ordering::Greater => above = true,
            Ordering::Equal => on = true,
        }
    }
    match (on, below, above) {
        (false, _, _) | (_, true, true) => None,
        (true, _, true) => Some(Side::Above),
        (true, _, false) => Some(Side::Below),
    }
}

/// True iff all vertices lie in one closed half-space of `h` and at least one
/// lies on `h`. A dimension mismatch yields `false`.
pub fn is_supporting(pt: &IntegralPolytope, h: &Hyperplane) -> bool {
    supporting_side(pt, h).is_some()
}

pub fn face(pt: &IntegralPolytope, h: &Hyperplane) -> Result<FaceWitness, GeometryError> {
    let side = supporting_side(pt, h).ok_or(GeometryError::NotSupporting)?;
    let verts = pt
        .vertices()
        .iter()
        .filter(|v| h.contains(v))
        .cloned()
        .collect();
    Ok(FaceWitness {
        face: IntegralPolytope::from_vertices_unchecked(pt.dim(), verts),
        plane: h.clone(),
        side,
    })
}

/// Finds a supporting hyperplane of `parent` whose face is exactly `sub`.
///
/// `sub` must have its vertices among those of `parent`; otherwise `None`.
/// When `sub == parent` a witness exists iff `parent` is not full-dimensional.
pub fn is_face_of(sub: &IntegralPolytope, parent: &IntegralPolytope) -> Option<FaceWitness> {
    if sub.dim() != parent.dim() {
        return None;
    }
    if !sub
        .vertices()
        .iter()
        .all(|v| parent.vertices().binary_search(v).is_ok())
    {
        return None;
    }
    let dim = parent.dim();
    let outside: Vec<&LatticePoint> = parent
        .vertices()
        .iter()
        .filter(|v| sub.vertices().binary_search(v).is_err())
        .collect();

    let normal = if outside.is_empty() {
        let base = parent.lex_min();
        let diffs: Vec<Vec<i64>> = parent.vertices().iter().map(|v| (v - base).0).collect();
        let ns = linalg::nullspace(&diffs, dim);
        linalg::primitive_integer(ns.first()?)?
    } else {
        // Unknowns: normal (dim entries, free) and offset (free).
        // normal·v - offset = 0 on sub, normal·w - offset <= -1 elsewhere.
        let mut sys = LinearSystem::new(dim + 1);
        for k in 0..=dim {
            sys.set_free(k);
        }
        let row = |p: &LatticePoint| {
            let mut r = p.coords().to_vec();
            r.push(-1);
            r
        };
        for v in sub.vertices() {
            sys.push(row(v), Relation::Eq, 0);
        }
        for w in &outside {
            sys.push(row(w), Relation::Le, -1);
        }
        let sol = sys.solve()?;
        let ints = linalg::primitive_integer(&sol)?;
        ints[..dim].to_vec()
    };
    let offset = dot(&normal, sub.lex_min().coords());
    let plane = Hyperplane::new(normal, i64::try_from(offset).ok()?).ok()?;
    let w = face(parent, &plane).ok()?;
    debug_assert_eq!(&w.face, sub);
    (w.face == *sub).then_some(w)
}

/// Vertex pairs spanning the one-dimensional faces.
pub fn edges(pt: &IntegralPolytope) -> Vec<(LatticePoint, LatticePoint)> {
    let vs = pt.vertices();
    if vs.len() == 2 {
        return vec![(vs[0].clone(), vs[1].clone())];
    }
    let mut out = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let seg = IntegralPolytope::from_vertices_unchecked(
                pt.dim(),
                vec![vs[i].clone(), vs[j].clone()],
            );
            if is_face_of(&seg, pt).is_some() {
                out.push((vs[i].clone(), vs[j].clone()));
            }
        }
    }
    out
}

/// Every nonempty face cut out by a supporting hyperplane, ordered by vertex
/// count and then lexicographically. Exponential in the vertex count; meant
/// for polytopes with at most a couple dozen vertices.
pub fn faces(pt: &IntegralPolytope) -> Vec<FaceWitness> {
    let vs = pt.vertices();
    assert!(vs.len() <= 24, "face enumeration limited to 24 vertices");
    let mut out: Vec<FaceWitness> = (1u32..(1u32 << vs.len()))
        .filter_map(|mask| {
            let sub: Vec<LatticePoint> = vs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| v.clone())
                .collect();
            let sub = IntegralPolytope::from_vertices_unchecked(pt.dim(), sub);
            is_face_of(&sub, pt)
        })
        .collect();
    out.sort_by(|a, b| {
        (a.face.num_vertices(), a.face.vertices()).cmp(&(b.face.num_vertices(), b.face.vertices()))
    });
    out
}
