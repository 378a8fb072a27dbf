//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every irreducibility test in this crate looks only at the support of a
//! polynomial, so coefficients are kept in `Q`. A rational polynomial is
//! judged as an element of `C[z1, ..., zn]`; no caveat is needed because a
//! complex coefficient would change no certificate.

mod parse;
mod split;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::LatticePoint;

pub use parse::{parse, ParseError};
pub use split::{find_splits, SplitDecomposition, SplitError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomials live in different variable sets")]
    VariableMismatch,
}

/// Exponent vector of a monomial; its length is the ambient variable count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn to_lattice_point(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|&e| e as i64).collect())
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// A polynomial over `Q` in named variables.
///
/// No stored coefficient is zero, so the zero polynomial has an empty term map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<ExponentVector, BigRational>,
}

/// Default names `z1, ..., zn`.
pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

impl Polynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Collects terms, merging like monomials and dropping zero coefficients.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            if e.0.len() != p.vars.len() {
                return Err(PolyError::VariableMismatch);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Integer-coefficient convenience constructor over `z1, ..., zn`.
    pub fn from_int_terms(n: usize, terms: &[(i64, &[u32])]) -> Self {
        Polynomial::from_terms(
            default_vars(n),
            terms.iter().map(|(c, e)| {
                (
                    ExponentVector(e.to_vec()),
                    BigRational::from_integer(BigInt::from(*c)),
                )
            }),
        )
        .expect("exponent vectors match the variable count")
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_constant())
    }

    pub fn constant_term(&self) -> Option<&BigRational> {
        self.terms.get(&ExponentVector::zero(self.num_vars()))
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&BigRational> {
        self.terms.get(e)
    }

    /// Exponent vectors with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> Result<u32, PolyError> {
        self.terms
            .keys()
            .map(ExponentVector::degree)
            .max()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// True iff `z_{index+1}` divides every monomial (0-based `index`).
    pub fn divisible_by_variable(&self, index: usize) -> Result<bool, PolyError> {
        if index >= self.num_vars() {
            return Err(PolyError::IndexOutOfRange {
                index,
                n: self.num_vars(),
            });
        }
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.terms.keys().all(|e| e.0[index] >= 1))
    }

    /// Variables occurring with a positive exponent somewhere.
    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.num_vars())
            .filter(|&i| self.terms.keys().any(|e| e.0[i] > 0))
            .collect()
    }

    /// The same polynomial without its constant term.
    pub fn without_constant(&self) -> Self {
        let mut p = self.clone();
        p.terms.remove(&ExponentVector::zero(self.num_vars()));
        p
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch);
        }
        let mut out = Polynomial::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Renames variables by a permutation: variable `i` becomes `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Polynomial {
        let n = self.num_vars();
        let mut vars = vec![String::new(); n];
        for (i, &j) in perm.iter().enumerate() {
            vars[j] = self.vars[i].clone();
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = vec![0; n];
            for (i, &j) in perm.iter().enumerate() {
                f[j] = e.0[i];
            }
            (ExponentVector(f), c.clone())
        });
        Polynomial::from_terms(vars, terms).expect("permutation preserves width")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials share variables")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials share variables")
    }
}

impl fmt::Display for Polynomial {
    /// Output is accepted by [`parse`] when given the same variable order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.0.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], x)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        parse(s, None).unwrap()
    }

    #[test]
    fn support_examples() {
        let q = p("z1^2 + 3*z1*z2");
        assert_eq!(
            q.support(),
            vec![ExponentVector(vec![1, 1]), ExponentVector(vec![2, 0])]
        );
        let c = parse("5", Some(&["z1".into(), "z2".into()])).unwrap();
        assert_eq!(c.support(), vec![ExponentVector(vec![0, 0])]);
        assert!(p("z1*z2 - z1*z2").support().is_empty());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p("z1^2*z2 + z1").total_degree(), Ok(3));
        assert_eq!(p("7").total_degree(), Ok(0));
        assert_eq!(p("z1^3 + z2^2 + z1^2*z2^2").total_degree(), Ok(4));
        assert_eq!(p("z1 - z1").total_degree(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(p("z1*z2 + z1").divisible_by_variable(0), Ok(true));
        assert_eq!(p("z1*z2 + z2").divisible_by_variable(0), Ok(false));
        assert_eq!(p("z1^2*z2 + z3^2").divisible_by_variable(2), Ok(false));
        assert!(matches!(
            p("z1").divisible_by_variable(3),
            Err(PolyError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn product_and_display() {
        let a = p("z1 + 1");
        let b = parse("z1 - 1", Some(&["z1".into()])).unwrap();
        let prod = &a * &b;
        assert_eq!(prod.to_string(), "z1^2 - 1");
        let q = p("-2/3*z1^2*z2 + z2 - 1");
        assert_eq!(q.to_string(), "-2/3*z1^2*z2 + z2 - 1");
    }
}
