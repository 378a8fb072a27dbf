//! The face chain behind the coprime-degree criterion.
//!
//! For `P = P_I + P_J` with degrees `d1`, `d2` the hyperplane
//! `d2 * sum_I x + d1 * sum_J x = d1 * d2` cuts out the face `C0` spanned by
//! the top-degree vertices of both parts. Maximising the `I` coordinates one
//! at a time shrinks the `I` side to a single vertex `x0`, each step cutting a
//! face of the previous one. Joined with any top-degree vertex `x1` of `P_J`
//! this gives an edge of `N(P)` whose lattice length divides both degrees.

use serde::{Deserialize, Serialize};

use super::certificate::{EdgeWitness, SplitIndices};
use super::CriteriaError;
use crate::decomp::gcd_of_points;
use crate::geometry::{
    convex_hull, face, is_face_of, newton_polytope, Hyperplane, IntegralPolytope, LatticePoint,
    Side,
};
use crate::poly::{Polynomial, SplitDecomposition};

/// A hyperplane kept exactly as written, without normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawHyperplane {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// One step of the chain: maximise coordinate `variable` over the remaining
/// top-degree vertices of `P_I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    #[serde(with = "super::certificate::one_based")]
    pub variable: usize,
    pub max_value: i64,
    pub plane: Hyperplane,
    pub face: IntegralPolytope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceChain {
    pub split: SplitIndices,
    pub degrees: (u32, u32),
    #[serde(rename = "h0")]
    pub h0_raw: RawHyperplane,
    #[serde(rename = "h0_primitive")]
    pub h0: Hyperplane,
    pub c0: IntegralPolytope,
    #[serde(rename = "chain")]
    pub steps: Vec<ChainStep>,
    /// Top-degree vertices of `N(P_I)` followed by the survivors of each step.
    pub apex_sets: Vec<Vec<LatticePoint>>,
    /// Top-degree vertices of `N(P_J)`.
    pub base_set: Vec<LatticePoint>,
    pub edge: EdgeWitness,
}

fn inconsistent(msg: impl Into<String>) -> CriteriaError {
    CriteriaError::Inconsistent(msg.into())
}

fn h0_for(n: usize, split: &SplitIndices, d1: i64, d2: i64) -> RawHyperplane {
    let mut normal = vec![d1; n];
    for &i in &split.i {
        normal[i] = d2;
    }
    RawHyperplane {
        normal,
        offset: d1 * d2,
    }
}

fn step_plane(n: usize, split: &SplitIndices, var: usize, max: i64, d2: i64) -> RawHyperplane {
    let mut normal = vec![0; n];
    normal[var] = d2;
    for &j in &split.j {
        normal[j] = max;
    }
    RawHyperplane {
        normal,
        offset: max * d2,
    }
}

fn normalized(raw: &RawHyperplane) -> Result<Hyperplane, CriteriaError> {
    Hyperplane::new(raw.normal.clone(), raw.offset)
        .map_err(|e| inconsistent(format!("degenerate hyperplane: {e}")))
}

/// Face of `parent` cut by `plane`, required to lie below it.
fn lower_face(
    parent: &IntegralPolytope,
    plane: &Hyperplane,
    what: &str,
) -> Result<IntegralPolytope, CriteriaError> {
    let w = face(parent, plane).map_err(|_| inconsistent(format!("{what} is not supporting")))?;
    if w.side != Side::Below {
        return Err(inconsistent(format!("{what} supports from the wrong side")));
    }
    Ok(w.face)
}

fn hull(points: &[LatticePoint]) -> Result<IntegralPolytope, CriteriaError> {
    convex_hull(points).map_err(|e| inconsistent(e.to_string()))
}

/// Builds and checks the chain for a split. Any failed check is an internal
/// error, never a verdict.
pub fn build_face_chain(split: &SplitDecomposition) -> Result<FaceChain, CriteriaError> {
    let p = split.reassemble();
    let n = p.num_vars();
    let indices = SplitIndices {
        i: split.index_set_i.clone(),
        j: split.index_set_j.clone(),
    };
    let (d1, d2) = (split.degree_i as i64, split.degree_j as i64);
    let np = newton_polytope(&p).map_err(|e| inconsistent(e.to_string()))?;

    let h0_raw = h0_for(n, &indices, d1, d2);
    let h0 = normalized(&h0_raw)?;
    let c0 = lower_face(&np, &h0, "H0")?;
    if is_face_of(&c0, &np).is_none() {
        return Err(inconsistent("C0 is not a face of N(P)"));
    }

    let top = |side_i: bool, idx: &[usize], d: i64| -> Result<Vec<LatticePoint>, CriteriaError> {
        let part = newton_polytope(&split.part_without_constant(side_i))
            .map_err(|e| inconsistent(e.to_string()))?;
        Ok(part
            .vertices()
            .iter()
            .filter(|v| v.coordinate_sum(idx) == d)
            .cloned()
            .collect())
    };
    let apex_top = top(true, &indices.i, d1)?;
    let base_set = top(false, &indices.j, d2)?;
    if apex_top.is_empty() || base_set.is_empty() {
        return Err(inconsistent("a part has no top-degree vertex"));
    }
    let both: Vec<LatticePoint> = apex_top.iter().chain(&base_set).cloned().collect();
    if hull(&both)? != c0 {
        return Err(inconsistent(
            "C0 differs from the hull of the top-degree vertices",
        ));
    }

    let mut current = apex_top.clone();
    let mut apex_sets = vec![apex_top];
    let mut steps = Vec::new();
    let mut prev = c0.clone();
    for &var in &indices.i {
        let max = current
            .iter()
            .map(|x| x.coords()[var])
            .max()
            .expect("nonempty");
        current.retain(|x| x.coords()[var] == max);
        let plane = normalized(&step_plane(n, &indices, var, max, d2))?;
        let next = lower_face(&prev, &plane, "chain hyperplane")?;
        let expected: Vec<LatticePoint> = current.iter().chain(&base_set).cloned().collect();
        if next != hull(&expected)? {
            return Err(inconsistent("chain face differs from the expected hull"));
        }
        if is_face_of(&next, &prev).is_none() {
            return Err(inconsistent("chain face is not a face of its predecessor"));
        }
        steps.push(ChainStep {
            variable: var,
            max_value: max,
            plane,
            face: next.clone(),
        });
        apex_sets.push(current.clone());
        prev = next;
    }
    if current.len() != 1 {
        return Err(inconsistent(
            "coordinate maximisation left more than one vertex",
        ));
    }
    if is_face_of(&prev, &np).is_none() {
        return Err(inconsistent("last chain face is not a face of N(P)"));
    }
    let x0 = current[0].clone();
    let x1 = base_set.iter().min().expect("nonempty").clone();
    let edge = edge_witness(&np, x0, x1, d1, d2)?;
    Ok(FaceChain {
        split: indices,
        degrees: (split.degree_i, split.degree_j),
        h0_raw,
        h0,
        c0,
        steps,
        apex_sets,
        base_set,
        edge,
    })
}

fn edge_witness(
    np: &IntegralPolytope,
    x0: LatticePoint,
    x1: LatticePoint,
    d1: i64,
    d2: i64,
) -> Result<EdgeWitness, CriteriaError> {
    let seg = hull(&[x0.clone(), x1.clone()])?;
    if seg.num_vertices() != 2 || is_face_of(&seg, np).is_none() {
        return Err(inconsistent("[x0, x1] is not an edge of N(P)"));
    }
    let gcd = gcd_of_points(&[&x0 - &x1]).expect("one point");
    if d1 % gcd as i64 != 0 || d2 % gcd as i64 != 0 {
        return Err(inconsistent("edge length does not divide both degrees"));
    }
    Ok(EdgeWitness { x0, x1, gcd })
}

impl FaceChain {
    pub fn x0(&self) -> &LatticePoint {
        &self.edge.x0
    }

    pub fn x1(&self) -> &LatticePoint {
        &self.edge.x1
    }

    /// The last face of the chain (`C0` when the chain is empty).
    pub fn last_face(&self) -> &IntegralPolytope {
        self.steps.last().map_or(&self.c0, |s| &s.face)
    }

    /// Re-checks every stored witness against `p`.
    pub fn verify(&self, p: &Polynomial) -> Result<(), CriteriaError> {
        let split = SplitDecomposition::from_indices(p, &self.split.i, &self.split.j)
            .map_err(|e| inconsistent(format!("split: {e}")))?;
        if (split.degree_i, split.degree_j) != self.degrees {
            return Err(inconsistent("stored degrees do not match"));
        }
        let n = p.num_vars();
        let (d1, d2) = (self.degrees.0 as i64, self.degrees.1 as i64);
        if self.h0_raw != h0_for(n, &self.split, d1, d2) || self.h0 != normalized(&self.h0_raw)? {
            return Err(inconsistent("H0 does not match the degrees"));
        }
        let np = newton_polytope(p).map_err(|e| inconsistent(e.to_string()))?;
        if lower_face(&np, &self.h0, "H0")? != self.c0 {
            return Err(inconsistent("stored C0 does not match"));
        }
        if self.steps.len() != self.split.i.len() || self.apex_sets.len() != self.steps.len() + 1 {
            return Err(inconsistent("chain length does not match the split"));
        }
        if !self.apex_sets[0]
            .iter()
            .all(|v| v.coordinate_sum(&self.split.i) == d1)
            || !self
                .base_set
                .iter()
                .all(|v| v.coordinate_sum(&self.split.j) == d2)
        {
            return Err(inconsistent("top-degree sets have the wrong degree"));
        }
        let mut prev = self.c0.clone();
        for (step, &var) in self.steps.iter().zip(&self.split.i) {
            let plane = normalized(&step_plane(n, &self.split, var, step.max_value, d2))?;
            if step.variable != var || step.plane != plane {
                return Err(inconsistent("chain hyperplane does not match"));
            }
            if lower_face(&prev, &plane, "chain hyperplane")? != step.face {
                return Err(inconsistent("stored chain face does not match"));
            }
            prev = step.face.clone();
        }
        if self.apex_sets.last().map(Vec::as_slice) != Some(std::slice::from_ref(self.x0())) {
            return Err(inconsistent("final apex set is not {x0}"));
        }
        if !self.base_set.contains(self.x1()) {
            return Err(inconsistent("x1 is not a top-degree vertex of P_J"));
        }
        let expected: Vec<LatticePoint> = std::iter::once(self.x0().clone())
            .chain(self.base_set.iter().cloned())
            .collect();
        if hull(&expected)? != prev || is_face_of(&prev, &np).is_none() {
            return Err(inconsistent(
                "last chain face is not the expected face of N(P)",
            ));
        }
        let edge = edge_witness(&np, self.x0().clone(), self.x1().clone(), d1, d2)?;
        if edge != self.edge {
            return Err(inconsistent("stored edge gcd does not match"));
        }
        Ok(())
    }
}
