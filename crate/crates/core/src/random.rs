//! Seeded random polynomials for property runs and the CLI's random checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{default_vars, ExponentVector, Polynomial};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random polynomial.
#[derive(Clone, Debug)]
pub struct PolyShape {
    /// Ambient variable count.
    pub n: usize,
    /// Variables allowed to occur (0-based).
    pub vars: Vec<usize>,
    pub max_degree: u32,
    pub max_terms: usize,
    pub allow_constant_term: bool,
}

impl PolyShape {
    pub fn full(n: usize, max_degree: u32, max_terms: usize) -> Self {
        PolyShape {
            n,
            vars: (0..n).collect(),
            max_degree,
            max_terms,
            allow_constant_term: true,
        }
    }
}

fn random_monomial<R: Rng>(rng: &mut R, shape: &PolyShape, min_degree: u32) -> ExponentVector {
    let mut e = vec![0u32; shape.n];
    let d = rng.random_range(min_degree..=shape.max_degree);
    for _ in 0..d {
        let v = shape.vars[rng.random_range(0..shape.vars.len())];
        e[v] += 1;
    }
    ExponentVector(e)
}

fn random_coefficient<R: Rng>(rng: &mut R) -> BigRational {
    let mut c = 0i64;
    while c == 0 {
        c = rng.random_range(-5..=5);
    }
    BigRational::from_integer(BigInt::from(c))
}

/// A random nonconstant polynomial with small nonzero integer coefficients
/// and between one and `max_terms` terms.
pub fn random_polynomial<R: Rng>(rng: &mut R, shape: &PolyShape) -> Polynomial {
    assert!(shape.max_degree >= 1 && shape.max_terms >= 1 && !shape.vars.is_empty());
    loop {
        let k = rng.random_range(1..=shape.max_terms);
        let min_degree = if shape.allow_constant_term { 0 } else { 1 };
        let terms = (0..k).map(|_| {
            (
                random_monomial(rng, shape, min_degree),
                random_coefficient(rng),
            )
        });
        let p = Polynomial::from_terms(default_vars(shape.n), terms.collect::<Vec<_>>())
            .expect("shape width");
        if !p.is_constant() {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn respects_shape() {
        let mut rng = seeded(7);
        let shape = PolyShape {
            n: 4,
            vars: vec![1, 3],
            max_degree: 3,
            max_terms: 5,
            allow_constant_term: false,
        };
        for _ in 0..100 {
            let p = random_polynomial(&mut rng, &shape);
            assert!(!p.is_constant());
            assert!(p.constant_term().is_none());
            assert!(p.num_terms() <= 5);
            assert!(p.total_degree().unwrap() <= 3);
            assert!(p.used_variables().iter().all(|v| [1, 3].contains(v)));
        }
    }

    #[test]
    fn deterministic() {
        let shape = PolyShape::full(3, 4, 6);
        let a = random_polynomial(&mut seeded(3), &shape);
        let b = random_polynomial(&mut seeded(3), &shape);
        assert_eq!(a, b);
    }
}
