//! Integral Minkowski decomposability.
//!
//! Two exact tests cover the shapes the irreducibility criteria meet most:
//! lattice segments and prisms (a base inside a hyperplane plus one apex off
//! it). Both reduce to a gcd. Everything else goes to
//! [`brute_force_decomposable`], an exhaustive search that is only feasible
//! for small polytopes and reports an explicit "unknown" when its budget runs
//! out.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{linalg, minkowski_sum, Hyperplane, IntegralPolytope, LatticePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("gcd of an empty point list")]
    EmptyPointList,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("apex lies in the base hyperplane")]
    ApexInPlane,
    #[error("base vertex off the hyperplane")]
    BaseOffPlane,
    #[error("decomposition search budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// gcd of all coordinates of all points, using absolute values.
/// The gcd of an all-zero list is 0.
pub fn gcd_of_points(points: &[LatticePoint]) -> Result<u64, DecompError> {
    if points.is_empty() {
        return Err(DecompError::EmptyPointList);
    }
    Ok(points
        .iter()
        .flat_map(|p| p.coords().iter())
        .fold(0u64, |g, &c| g.gcd(&c.unsigned_abs())))
}

/// A lattice prism: `conv({apex} ∪ base)` with `base` inside `plane` and the
/// apex off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismSpec {
    pub base: IntegralPolytope,
    pub apex: LatticePoint,
    pub plane: Hyperplane,
}

impl PrismSpec {
    pub fn new(
        base: IntegralPolytope,
        apex: LatticePoint,
        plane: Hyperplane,
    ) -> Result<Self, DecompError> {
        if !base.vertices().iter().all(|v| plane.contains(v)) {
            return Err(DecompError::BaseOffPlane);
        }
        if plane.contains(&apex) {
            return Err(DecompError::ApexInPlane);
        }
        Ok(PrismSpec { base, apex, plane })
    }

    pub fn hull(&self) -> IntegralPolytope {
        let mut pts = self.base.vertices().to_vec();
        pts.push(self.apex.clone());
        crate::geometry::convex_hull(&pts).expect("nonempty, same dimension")
    }

    /// `gcd(apex - v1, ..., apex - vk)` over the base vertices.
    pub fn apex_gcd(&self) -> u64 {
        let diffs: Vec<LatticePoint> = self
            .base
            .vertices()
            .iter()
            .map(|v| &self.apex - v)
            .collect();
        gcd_of_points(&diffs).expect("base is nonempty")
    }
}

/// Recognises `pt` as a prism: the first vertex (in lexicographic order) that
/// is not in the affine hull of the remaining vertices becomes the apex.
pub fn as_prism(pt: &IntegralPolytope) -> Option<PrismSpec> {
    let vs = pt.vertices();
    if vs.len() < 2 {
        return None;
    }
    for (k, apex) in vs.iter().enumerate() {
        let rest: Vec<LatticePoint> = vs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, v)| v.clone())
            .collect();
        let anchor = &rest[0];
        let diffs: Vec<Vec<i64>> = rest[1..].iter().map(|v| (v - anchor).0).collect();
        let to_apex = apex - anchor;
        let normal = linalg::nullspace(&diffs, pt.dim())
            .into_iter()
            .find(|n| !linalg::dot_rational(n, to_apex.coords()).is_zero());
        let Some(normal) = normal else { continue };
        let normal = linalg::primitive_integer(&normal)?;
        let offset = linalg::dot(&normal, anchor.coords());
        let plane = Hyperplane::new(normal, i64::try_from(offset).ok()?).ok()?;
        // The remaining vertices of a polytope are exactly the vertices of
        // their own hull.
        let base = IntegralPolytope::from_vertices_unchecked(pt.dim(), rest);
        return PrismSpec::new(base, apex.clone(), plane).ok();
    }
    None
}

/// Gao's prism criterion: the prism is integrally indecomposable iff the
/// apex-to-base-vertex differences have gcd 1.
pub fn prism_indecomposable(spec: &PrismSpec) -> Result<bool, DecompError> {
    if spec.plane.contains(&spec.apex) {
        return Err(DecompError::ApexInPlane);
    }
    if !spec.base.vertices().iter().all(|v| spec.plane.contains(v)) {
        return Err(DecompError::BaseOffPlane);
    }
    Ok(spec.apex_gcd() == 1)
}

/// A lattice segment is indecomposable iff its direction is primitive.
pub fn segment_indecomposable(u: &LatticePoint, v: &LatticePoint) -> Result<bool, DecompError> {
    if u == v {
        return Err(DecompError::DegenerateSegment);
    }
    Ok(gcd_of_points(&[u - v])? == 1)
}

/// Resource limits for [`brute_force_decomposable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Maximum number of coordinates along which the polytope varies.
    pub max_dim: usize,
    /// Maximum number of lattice points of the polytope.
    pub max_points: usize,
    /// Maximum number of search nodes.
    pub max_nodes: u64,
    pub time_budget: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_dim: 3,
            max_points: 14,
            max_nodes: 2_000_000,
            time_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub decomposable: bool,
    pub summands: Option<(IntegralPolytope, IntegralPolytope)>,
}

impl DecompositionResult {
    fn indecomposable() -> Self {
        DecompositionResult {
            decomposable: false,
            summands: None,
        }
    }
}

/// Exhaustive search for `pt = A + B` with `A`, `B` integral and each
/// containing at least two points.
///
/// Work happens on the lattice points `L` of `pt` translated so its
/// lexicographic minimum is the origin. Any decomposition can be translated so
/// that both summands have their lexicographic minimum at the origin, which
/// places both inside `L`. For a candidate vertex set `S ∋ 0` of `A`, the
/// largest partner is `B = conv(T)` with `T = {x ∈ L : x + S ⊆ L}`; then
/// `A + B ⊆ pt` always, with equality iff every vertex of `pt` lies in
/// `S + T`. Growing `S` only shrinks `T`, so branches with `|T| < 2` are cut.
/// Candidates are visited depth-first in lexicographic order of `L`, so the
/// reported decomposition does not depend on scheduling.
///
/// Coordinates on which `pt` is constant are dropped before the search, so
/// `max_dim` bounds the number of varying coordinates.
pub fn brute_force_decomposable(
    pt: &IntegralPolytope,
    budget: &OracleBudget,
) -> Result<DecompositionResult, DecompError> {
    if pt.is_point() {
        return Ok(DecompositionResult::indecomposable());
    }
    let started = Instant::now();
    let keep = pt.varying_coordinates();
    if keep.len() > budget.max_dim {
        return Err(DecompError::BudgetExceeded(format!(
            "polytope varies in {} coordinates, limit {}",
            keep.len(),
            budget.max_dim
        )));
    }
    let reduced = pt.project(&keep);
    let lattice = reduced.lattice_points(budget.max_points).ok_or_else(|| {
        DecompError::BudgetExceeded(format!("more than {} lattice points", budget.max_points))
    })?;

    let base = reduced.lex_min().clone();
    let pts: Vec<LatticePoint> = lattice.iter().map(|p| p - &base).collect();
    debug_assert!(pts[0].coords().iter().all(|&c| c == 0));
    let index: HashMap<&LatticePoint, usize> =
        pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = pts.len();
    // sum_idx[a][b] = index of pts[a] + pts[b] when it is a lattice point of pt.
    let sum_idx: Vec<Vec<Option<usize>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| index.get(&(&pts[a] + &pts[b])).copied())
                .collect()
        })
        .collect();
    let vertex_idx: Vec<usize> = reduced
        .vertices()
        .iter()
        .map(|v| index[&(v - &base)])
        .collect();

    let mut search = Search {
        n,
        sum_idx: &sum_idx,
        vertex_idx: &vertex_idx,
        nodes: 0,
        budget,
        started,
        chosen: vec![0],
    };
    let all: Vec<usize> = (0..n).collect();
    let found = search.dfs(1, &all)?;
    let Some((s, t)) = found else {
        return Ok(DecompositionResult::indecomposable());
    };

    // Lift back to the ambient coordinates: A keeps its lexicographic minimum
    // at the origin, B carries the translation.
    let lift = |ids: &[usize], shift: &LatticePoint| -> IntegralPolytope {
        let full: Vec<LatticePoint> = ids
            .iter()
            .map(|&i| {
                let mut c = vec![0i64; pt.dim()];
                for (k, &axis) in keep.iter().enumerate() {
                    c[axis] = pts[i].coords()[k];
                }
                &LatticePoint(c) + shift
            })
            .collect();
        crate::geometry::convex_hull(&full).expect("nonempty")
    };
    let a = lift(&s, &LatticePoint::origin(pt.dim()));
    let b = lift(&t, pt.lex_min());
    debug_assert_eq!(minkowski_sum(&a, &b).as_ref(), Ok(pt));
    Ok(DecompositionResult {
        decomposable: true,
        summands: Some((a, b)),
    })
}

/// Vertex index sets of the two summands.
type IndexPair = (Vec<usize>, Vec<usize>);

struct Search<'a> {
    n: usize,
    sum_idx: &'a [Vec<Option<usize>>],
    vertex_idx: &'a [usize],
    nodes: u64,
    budget: &'a OracleBudget,
    started: Instant,
    chosen: Vec<usize>,
}

impl Search<'_> {
    /// Extends `chosen` with indices `>= next`; `t` is the partner set of the
    /// current `chosen`.
    fn dfs(&mut self, next: usize, t: &[usize]) -> Result<Option<IndexPair>, DecompError> {
        for s in next..self.n {
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Err(DecompError::BudgetExceeded(format!(
                    "more than {} search nodes",
                    self.budget.max_nodes
                )));
            }
            if self.nodes.is_multiple_of(1024) {
                if let Some(limit) = self.budget.time_budget {
                    if self.started.elapsed() > limit {
                        return Err(DecompError::BudgetExceeded(format!(
                            "time budget of {} ms",
                            limit.as_millis()
                        )));
                    }
                }
            }
            let t_next: Vec<usize> = t
                .iter()
                .copied()
                .filter(|&x| self.sum_idx[x][s].is_some())
                .collect();
            if t_next.len() < 2 {
                continue;
            }
            self.chosen.push(s);
            if self.covers(&t_next) {
                let found = (self.chosen.clone(), t_next);
                self.chosen.pop();
                return Ok(Some(found));
            }
            if let Some(found) = self.dfs(s + 1, &t_next)? {
                self.chosen.pop();
                return Ok(Some(found));
            }
            self.chosen.pop();
        }
        Ok(None)
    }

    fn covers(&self, t: &[usize]) -> bool {
        self.vertex_idx.iter().all(|&v| {
            self.chosen
                .iter()
                .any(|&s| t.iter().any(|&x| self.sum_idx[s][x] == Some(v)))
        })
    }
}
