//! Additive splits `P = P_I + P_J` with `P_I`, `P_J` in disjoint variables.

use thiserror::Error;

use super::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("index sets must partition the variables into two nonempty parts")]
    NotAPartition,
    #[error("a monomial mixes variables from both index sets")]
    MixedMonomial,
    #[error("one side of the split is constant")]
    ConstantPart,
}

/// A witness that `P = part_i + part_j` where `part_i` only involves the
/// variables in `index_set_i` and `part_j` those in `index_set_j`.
///
/// Indices are 0-based. Any constant term of `P` lives in `part_j`, so
/// `part_i(0) = 0` always holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub index_set_i: Vec<usize>,
    pub index_set_j: Vec<usize>,
    pub part_i: Polynomial,
    pub part_j: Polynomial,
    pub degree_i: u32,
    pub degree_j: u32,
}

impl SplitDecomposition {
    /// Splits `p` along a given partition of its variables.
    pub fn from_indices(p: &Polynomial, i: &[usize], j: &[usize]) -> Result<Self, SplitError> {
        let n = p.num_vars();
        let mut seen = vec![0u8; n];
        for &k in i.iter().chain(j) {
            if k >= n {
                return Err(SplitError::NotAPartition);
            }
            seen[k] += 1;
        }
        if i.is_empty() || j.is_empty() || seen.iter().any(|&s| s != 1) {
            return Err(SplitError::NotAPartition);
        }
        let mut in_i = vec![false; n];
        for &k in i {
            in_i[k] = true;
        }
        let mut part_i = Polynomial::zero(p.vars().to_vec());
        let mut part_j = Polynomial::zero(p.vars().to_vec());
        for (e, c) in p.terms() {
            let (mut any_i, mut any_j) = (false, false);
            for v in e.variables() {
                if in_i[v] {
                    any_i = true;
                } else {
                    any_j = true;
                }
            }
            match (any_i, any_j) {
                (true, true) => return Err(SplitError::MixedMonomial),
                (true, false) => part_i.add_term(e.clone(), c.clone()),
                _ => part_j.add_term(e.clone(), c.clone()),
            }
        }
        if part_i.is_constant() || part_j.is_constant() {
            return Err(SplitError::ConstantPart);
        }
        let mut index_set_i = i.to_vec();
        let mut index_set_j = j.to_vec();
        index_set_i.sort_unstable();
        index_set_j.sort_unstable();
        Ok(SplitDecomposition {
            index_set_i,
            index_set_j,
            degree_i: part_i.total_degree().expect("nonconstant"),
            degree_j: part_j.total_degree().expect("nonconstant"),
            part_i,
            part_j,
        })
    }

    /// The part on the chosen side with its constant term removed.
    pub fn part_without_constant(&self, side_i: bool) -> Polynomial {
        if side_i {
            self.part_i.clone()
        } else {
            self.part_j.without_constant()
        }
    }

    pub fn reassemble(&self) -> Polynomial {
        &self.part_i + &self.part_j
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Connected components of the variable-interaction graph, restricted to
/// variables that occur. Components are sorted by their smallest index.
pub fn variable_components(p: &Polynomial) -> Vec<Vec<usize>> {
    let n = p.num_vars();
    let mut parent: Vec<usize> = (0..n).collect();
    for (e, _) in p.terms() {
        let vs: Vec<usize> = e.variables().collect();
        for w in vs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let used = p.used_variables();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for v in used {
        let r = find(&mut parent, v);
        match roots.iter().position(|&x| x == r) {
            Some(k) => comps[k].push(v),
            None => {
                roots.push(r);
                comps.push(vec![v]);
            }
        }
    }
    comps
}

/// Every split of `p` into two nonconstant parts in disjoint variables.
///
/// Each 2-partition of the interaction components is reported once. The last
/// component (ordered by smallest variable index) always sits in `J`,
/// together with every variable that does not occur in `p`, so a sum
/// `P1(z1..zv) + P2(zv+1..zn)` is reported with `I = {1..v}`. Output is
/// ordered by `(|I|, I)`. Constant input yields no splits.
pub fn find_splits(p: &Polynomial) -> Vec<SplitDecomposition> {
    let comps = variable_components(p);
    let k = comps.len();
    if k < 2 {
        return Vec::new();
    }
    assert!(k <= 63, "too many independent variable groups");
    let used: Vec<usize> = comps.iter().flatten().copied().collect();
    let unused: Vec<usize> = (0..p.num_vars()).filter(|v| !used.contains(v)).collect();
    let mut out = Vec::new();
    // Component k-1 is pinned to the second side so each unordered partition
    // is produced once.
    for mask in 1u64..(1u64 << (k - 1)) {
        let mut a: Vec<usize> = Vec::new();
        let mut b: Vec<usize> = Vec::new();
        for (c, comp) in comps.iter().enumerate() {
            if mask & (1 << c) != 0 {
                a.extend(comp);
            } else {
                b.extend(comp);
            }
        }
        b.extend(&unused);
        let split =
            SplitDecomposition::from_indices(p, &a, &b).expect("components give a valid split");
        out.push(split);
    }
    out.sort_by(|x, y| {
        (x.index_set_i.len(), &x.index_set_i).cmp(&(y.index_set_i.len(), &y.index_set_i))
    });
    out
}
