//! Test-only oracles that share no code with the library.
#![allow(dead_code)]

use num_integer::Integer;
use polyirr::geometry::{IntegralPolytope, LatticePoint};
use polyirr::poly::Polynomial;

pub type Pt2 = (i64, i64);

fn cross(o: Pt2, a: Pt2, b: Pt2) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain; strictly convex vertices in counter-clockwise
/// order. Collinear input gives its two endpoints, a single point itself.
pub fn hull_2d(points: &[Pt2]) -> Vec<Pt2> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Pt2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A lattice polygon (or segment) is a sum of two lattice polytopes with at
/// least two points each iff some choice of `0 <= a_i <= k_i`, neither all
/// zero nor all maximal, closes up: `sum a_i u_i = 0`, where the boundary
/// consists of `k_i` copies of the primitive vectors `u_i`.
pub fn polygon_decomposable(points: &[Pt2]) -> bool {
    let cyc = hull_2d(points);
    if cyc.len() < 2 {
        return false;
    }
    let mut edges: Vec<(Pt2, i64)> = Vec::new();
    for i in 0..cyc.len() {
        let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
        let d = (b.0 - a.0, b.1 - a.1);
        let k = d.0.gcd(&d.1);
        edges.push(((d.0 / k, d.1 / k), k));
    }
    let mut choice = vec![0i64; edges.len()];
    loop {
        let mut i = 0;
        while i < choice.len() && choice[i] == edges[i].1 {
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            return false;
        }
        choice[i] += 1;
        let all_max = choice.iter().zip(&edges).all(|(a, e)| *a == e.1);
        if all_max {
            continue;
        }
        let sx: i64 = choice.iter().zip(&edges).map(|(a, e)| a * e.0 .0).sum();
        let sy: i64 = choice.iter().zip(&edges).map(|(a, e)| a * e.0 .1).sum();
        if sx == 0 && sy == 0 {
            return true;
        }
    }
}

pub fn support_max(points: &[Vec<i64>], dir: &[i64]) -> i64 {
    points
        .iter()
        .map(|p| p.iter().zip(dir).map(|(a, b)| a * b).sum::<i64>())
        .max()
        .unwrap()
}

pub fn exponents(p: &Polynomial) -> Vec<Vec<i64>> {
    p.support()
        .iter()
        .map(|e| e.0.iter().map(|&x| x as i64).collect())
        .collect()
}

pub fn vertex_coords(pt: &IntegralPolytope) -> Vec<Vec<i64>> {
    pt.vertices().iter().map(|v| v.coords().to_vec()).collect()
}

/// Every direction with entries in `-r..=r`.
pub fn directions(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|d: Vec<i64>| {
                (-r..=r).map(move |x| {
                    let mut e = d.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    out
}

pub fn lp(c: &[i64]) -> LatticePoint {
    LatticePoint(c.to_vec())
}
