//! Exact feasibility for small linear systems.
//!
//! Phase one of the simplex method with Bland's rule on a dense tableau. The
//! tableau is first run in `Ratio<i128>` with overflow checks; if any
//! intermediate value overflows the whole solve is repeated over `BigRational`.
//! Systems handled here are tiny (a handful of rows, a few dozen columns), so
//! the dense representation is the cheapest one.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<i64>,
    relation: Relation,
    rhs: i64,
}

/// A system `A x (<=|=|>=) b` over rational `x`. Variables are nonnegative
/// unless marked free.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    num_vars: usize,
    free: Vec<bool>,
    rows: Vec<Row>,
}

#[derive(Debug)]
struct Overflow;

trait Field: Clone + PartialOrd + Zero + One {
    fn from_i64(v: i64) -> Self;
    fn sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    fn div(&self, o: &Self) -> Result<Self, Overflow>;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn into_big(self) -> BigRational;
}

type Small = Ratio<i128>;

impl Field for Small {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(o).ok_or(Overflow)
    }
    fn div(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_div(o).ok_or(Overflow)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn into_big(self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self / o)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn into_big(self) -> BigRational {
        self
    }
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            free: vec![false; num_vars],
            rows: Vec::new(),
        }
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn push(&mut self, coeffs: Vec<i64>, relation: Relation, rhs: i64) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Returns a feasible point, or `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        match self.solve_in::<Small>() {
            Ok(sol) => sol,
            Err(Overflow) => self
                .solve_in::<BigRational>()
                .expect("arbitrary precision arithmetic cannot overflow"),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }

    fn solve_in<F: Field>(&self) -> Result<Option<Vec<BigRational>>, Overflow> {
        // Column layout: structural columns (free vars split in two), then one
        // slack per inequality, then one artificial per row, then the rhs.
        let mut col_of = Vec::with_capacity(self.num_vars);
        let mut structural = 0usize;
        for &f in &self.free {
            col_of.push(structural);
            structural += if f { 2 } else { 1 };
        }
        let slacks = self
            .rows
            .iter()
            .filter(|r| r.relation != Relation::Eq)
            .count();
        let m = self.rows.len();
        let art0 = structural + slacks;
        let width = art0 + m + 1;
        let rhs_col = width - 1;

        let mut tab: Vec<Vec<F>> = Vec::with_capacity(m + 1);
        let mut slack = structural;
        for (i, row) in self.rows.iter().enumerate() {
            let mut r = vec![F::zero(); width];
            for (v, &a) in row.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                r[col_of[v]] = F::from_i64(a);
                if self.free[v] {
                    r[col_of[v] + 1] = F::from_i64(-a);
                }
            }
            match row.relation {
                Relation::Le => {
                    r[slack] = F::one();
                    slack += 1;
                }
                Relation::Ge => {
                    r[slack] = F::from_i64(-1);
                    slack += 1;
                }
                Relation::Eq => {}
            }
            r[rhs_col] = F::from_i64(row.rhs);
            if row.rhs < 0 {
                for x in r.iter_mut() {
                    if !x.is_zero() {
                        *x = F::zero().sub(x)?;
                    }
                }
            }
            r[art0 + i] = F::one();
            tab.push(r);
        }

        // Objective row: reduced costs for minimising the sum of artificials.
        let mut obj = vec![F::zero(); width];
        for r in &tab {
            for (j, x) in r.iter().enumerate() {
                if (art0..art0 + m).contains(&j) || x.is_zero() {
                    continue;
                }
                obj[j] = obj[j].sub(x)?;
            }
        }
        tab.push(obj);

        let mut basis: Vec<usize> = (art0..art0 + m).collect();

        loop {
            let entering = (0..rhs_col).find(|&j| tab[m][j].is_neg());
            let Some(e) = entering else { break };
            let mut leave: Option<(usize, F)> = None;
            for i in 0..m {
                let a = &tab[i][e];
                if !a.is_pos() {
                    continue;
                }
                let ratio = tab[i][rhs_col].div(a)?;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // Phase one is bounded below by zero, so a leaving row always exists.
            let (l, _) = leave.expect("phase one objective is bounded");
            pivot(&mut tab, l, e)?;
            basis[l] = e;
        }

        if !tab[m][rhs_col].is_zero() {
            return Ok(None);
        }
        let mut col_val = vec![F::zero(); art0];
        for (i, &b) in basis.iter().enumerate() {
            if b < art0 {
                col_val[b] = tab[i][rhs_col].clone();
            }
        }
        let mut out = Vec::with_capacity(self.num_vars);
        for (v, &c) in col_of.iter().enumerate().take(self.num_vars) {
            let x = if self.free[v] {
                col_val[c].sub(&col_val[c + 1])?
            } else {
                col_val[c].clone()
            };
            out.push(x.into_big());
        }
        Ok(Some(out))
    }
}

fn pivot<F: Field>(tab: &mut [Vec<F>], row: usize, col: usize) -> Result<(), Overflow> {
    let p = tab[row][col].clone();
    if !p.is_one() {
        for x in tab[row].iter_mut() {
            if !x.is_zero() {
                *x = Field::div(x, &p)?;
            }
        }
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let factor = r[col].clone();
        if factor.is_zero() {
            continue;
        }
        for (x, y) in r.iter_mut().zip(pivot_row.iter()) {
            if y.is_zero() {
                continue;
            }
            *x = Field::sub(x, &Field::mul(&factor, y)?)?;
        }
    }
    Ok(())
}
