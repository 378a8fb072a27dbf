//! One-sided irreducibility tests.
//!
//! Every test either proves irreducibility over `C` and returns a certificate
//! that can be re-checked, or stays silent ([`Verdict::Inconclusive`]). None of
//! them ever claims a polynomial is reducible.
//!
//! * [`degree_gcd_criterion`]: `P = P_I + P_J` in disjoint variables with
//!   coprime degrees.
//! * [`face_criterion`]: some part of such a split has an integrally
//!   indecomposable Newton polytope with at least two points.
//! * [`gao_direct`]: `P` is divisible by no variable and `N(P)` itself is
//!   integrally indecomposable.

mod certificate;
mod chain;

use num_integer::Integer;
use thiserror::Error;

use crate::decomp::{
    as_prism, brute_force_decomposable, prism_indecomposable, segment_indecomposable, DecompError,
    OracleBudget,
};
use crate::geometry::{is_face_of, newton_polytope, IntegralPolytope};
use crate::poly::{find_splits, Polynomial, SplitDecomposition, SplitError};

pub use certificate::{
    Criterion, EdgeWitness, IndecomposabilityMethod, IrreducibilityCertificate, PartSide,
    PolytopeWitness, SplitIndices, Verdict,
};
pub use chain::{build_face_chain, ChainStep, FaceChain, RawHyperplane};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("input is constant")]
    ConstantInput,
    #[error("divisible by {}; Gao criterion inapplicable", .names.join(", "))]
    DivisibleByVariable {
        indices: Vec<usize>,
        names: Vec<String>,
    },
    #[error(transparent)]
    Split(#[from] SplitError),
    /// A construction that must succeed did not; this is a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("certificate does not verify: {0}")]
    Verification(String),
}

fn require_nonconstant(p: &Polynomial) -> Result<(), CriteriaError> {
    if p.is_constant() {
        Err(CriteriaError::ConstantInput)
    } else {
        Ok(())
    }
}

fn split_indices(s: &SplitDecomposition) -> SplitIndices {
    SplitIndices {
        i: s.index_set_i.clone(),
        j: s.index_set_j.clone(),
    }
}

/// Fires on the first split (in canonical order) whose part degrees are
/// coprime and attaches its face chain. Other coprime splits are listed in
/// the notes.
pub fn degree_gcd_criterion(p: &Polynomial) -> Result<IrreducibilityCertificate, CriteriaError> {
    require_nonconstant(p)?;
    let splits = find_splits(p);
    if splits.is_empty() {
        return Ok(IrreducibilityCertificate::inconclusive(
            vec![Criterion::DegreeGcd],
            "no disjoint-variable split".into(),
        ));
    }
    let gcd = |s: &SplitDecomposition| s.degree_i.gcd(&s.degree_j);
    let mut coprime = splits.iter().filter(|s| gcd(s) == 1);
    let Some(first) = coprime.next() else {
        let seen: Vec<String> = splits
            .iter()
            .map(|s| {
                format!(
                    "{} degrees ({}, {})",
                    split_indices(s),
                    s.degree_i,
                    s.degree_j
                )
            })
            .collect();
        return Ok(IrreducibilityCertificate::inconclusive(
            vec![Criterion::DegreeGcd],
            format!("no split with coprime degrees: {}", seen.join(", ")),
        ));
    };
    let others: Vec<String> = coprime.map(|s| split_indices(s).to_string()).collect();
    let chain = build_face_chain(first)?;
    Ok(IrreducibilityCertificate {
        verdict: Verdict::Irreducible,
        criterion: Criterion::DegreeGcd,
        split: Some(split_indices(first)),
        degrees: Some((first.degree_i, first.degree_j)),
        degree_gcd: Some(1),
        edge: Some(chain.edge.clone()),
        face_chain: Some(chain),
        indecomposable: None,
        attempted: vec![Criterion::DegreeGcd],
        notes: if others.is_empty() {
            String::new()
        } else {
            format!("other coprime splits: {}", others.join(", "))
        },
    })
}

enum Indecomposability {
    Yes(IndecomposabilityMethod),
    No,
    Unknown(String),
}

/// Exact tests first, the bounded search last.
fn decide_indecomposable(pt: &IntegralPolytope, budget: &OracleBudget) -> Indecomposability {
    let vs = pt.vertices();
    if vs.len() == 2 {
        let (u, v) = (vs[0].clone(), vs[1].clone());
        let gcd = crate::decomp::gcd_of_points(&[&u - &v]).expect("one point");
        return if segment_indecomposable(&u, &v) == Ok(true) {
            Indecomposability::Yes(IndecomposabilityMethod::Segment { u, v, gcd })
        } else {
            Indecomposability::No
        };
    }
    if let Some(prism) = as_prism(pt) {
        let gcd = prism.apex_gcd();
        return if prism_indecomposable(&prism) == Ok(true) {
            Indecomposability::Yes(IndecomposabilityMethod::Prism { prism, gcd })
        } else {
            Indecomposability::No
        };
    }
    match brute_force_decomposable(pt, budget) {
        Ok(r) if r.decomposable => Indecomposability::No,
        Ok(_) => Indecomposability::Yes(IndecomposabilityMethod::Oracle),
        Err(DecompError::BudgetExceeded(msg)) => Indecomposability::Unknown(msg),
        Err(e) => Indecomposability::Unknown(e.to_string()),
    }
}

/// First coprime inner split of `q`, with its face chain.
fn nested_chain(q: &Polynomial) -> Result<Option<FaceChain>, CriteriaError> {
    find_splits(q)
        .iter()
        .find(|s| s.degree_i.gcd(&s.degree_j) == 1)
        .map(build_face_chain)
        .transpose()
}

enum PartOutcome {
    Fired(Box<PolytopeWitness>),
    Silent(String),
}

fn check_part(
    split: &SplitDecomposition,
    side: PartSide,
    budget: &OracleBudget,
) -> Result<PartOutcome, CriteriaError> {
    let side_i = side == PartSide::I;
    let part = split.part_without_constant(side_i);
    let pt = newton_polytope(&part).map_err(|e| CriteriaError::Inconsistent(e.to_string()))?;
    if pt.is_point() {
        return Ok(PartOutcome::Silent(format!(
            "side {side:?} is a single point"
        )));
    }
    let method = match decide_indecomposable(&pt, budget) {
        Indecomposability::Yes(m) => m,
        Indecomposability::No => {
            return Ok(PartOutcome::Silent(format!("side {side:?} decomposes")))
        }
        Indecomposability::Unknown(msg) => {
            return Ok(PartOutcome::Silent(format!(
                "side {side:?}: budget ({msg})"
            )))
        }
    };
    let sum = &split.part_i.without_constant() + &split.part_j.without_constant();
    let whole = newton_polytope(&sum).map_err(|e| CriteriaError::Inconsistent(e.to_string()))?;
    let face = is_face_of(&pt, &whole).ok_or_else(|| {
        CriteriaError::Inconsistent("part polytope is not a face of the sum".into())
    })?;
    Ok(PartOutcome::Fired(Box::new(PolytopeWitness {
        side: Some(side),
        polytope: pt,
        method,
        face: Some(face),
        nested: nested_chain(&part)?,
    })))
}

fn face_certificate(
    split: &SplitDecomposition,
    witness: PolytopeWitness,
) -> IrreducibilityCertificate {
    IrreducibilityCertificate {
        verdict: Verdict::Irreducible,
        criterion: Criterion::FaceIndecomposable,
        split: Some(split_indices(split)),
        degrees: Some((split.degree_i, split.degree_j)),
        degree_gcd: Some(split.degree_i.gcd(&split.degree_j) as u64),
        face_chain: None,
        edge: None,
        indecomposable: Some(witness),
        attempted: vec![Criterion::FaceIndecomposable],
        notes: String::new(),
    }
}

fn evaluate_split(
    split: &SplitDecomposition,
    budget: &OracleBudget,
    notes: &mut Vec<String>,
) -> Result<Option<IrreducibilityCertificate>, CriteriaError> {
    for side in [PartSide::I, PartSide::J] {
        match check_part(split, side, budget)? {
            PartOutcome::Fired(w) => return Ok(Some(face_certificate(split, *w))),
            PartOutcome::Silent(msg) => notes.push(format!("{} {msg}", split_indices(split))),
        }
    }
    Ok(None)
}

fn face_inconclusive(notes: Vec<String>) -> IrreducibilityCertificate {
    let notes = if notes.is_empty() {
        "no disjoint-variable split".to_string()
    } else {
        notes.join("; ")
    };
    IrreducibilityCertificate::inconclusive(vec![Criterion::FaceIndecomposable], notes)
}

/// Tries both sides of every split, in canonical split order. The side under
/// test has its constant term removed; monomial sides are skipped.
pub fn face_criterion(
    p: &Polynomial,
    budget: &OracleBudget,
) -> Result<IrreducibilityCertificate, CriteriaError> {
    require_nonconstant(p)?;
    let mut notes = Vec::new();
    for split in find_splits(p) {
        if let Some(c) = evaluate_split(&split, budget, &mut notes)? {
            return Ok(c);
        }
    }
    Ok(face_inconclusive(notes))
}

/// [`face_criterion`] restricted to one given split (0-based index sets).
pub fn face_criterion_on_split(
    p: &Polynomial,
    i: &[usize],
    j: &[usize],
    budget: &OracleBudget,
) -> Result<IrreducibilityCertificate, CriteriaError> {
    require_nonconstant(p)?;
    let split = SplitDecomposition::from_indices(p, i, j)?;
    let mut notes = Vec::new();
    Ok(evaluate_split(&split, budget, &mut notes)?.unwrap_or_else(|| face_inconclusive(notes)))
}

fn divisible_variables(p: &Polynomial) -> Vec<usize> {
    (0..p.num_vars())
        .filter(|&i| p.divisible_by_variable(i) == Ok(true))
        .collect()
}

/// Applies the indecomposability test to `N(p)` itself.
pub fn gao_direct(
    p: &Polynomial,
    budget: &OracleBudget,
) -> Result<IrreducibilityCertificate, CriteriaError> {
    require_nonconstant(p)?;
    let divisible = divisible_variables(p);
    if !divisible.is_empty() {
        return Err(CriteriaError::DivisibleByVariable {
            names: divisible.iter().map(|&i| p.vars()[i].clone()).collect(),
            indices: divisible,
        });
    }
    let pt = newton_polytope(p).map_err(|e| CriteriaError::Inconsistent(e.to_string()))?;
    let attempted = vec![Criterion::GaoDirect];
    let method = match decide_indecomposable(&pt, budget) {
        Indecomposability::Yes(m) => m,
        Indecomposability::No => {
            return Ok(IrreducibilityCertificate::inconclusive(
                attempted,
                "Newton polytope decomposes".into(),
            ))
        }
        Indecomposability::Unknown(msg) => {
            return Ok(IrreducibilityCertificate::inconclusive(
                attempted,
                format!("budget ({msg})"),
            ))
        }
    };
    let mut cert = IrreducibilityCertificate::inconclusive(attempted, String::new());
    cert.verdict = Verdict::Irreducible;
    cert.criterion = Criterion::GaoDirect;
    cert.indecomposable = Some(PolytopeWitness {
        side: None,
        polytope: pt,
        method,
        face: None,
        nested: None,
    });
    Ok(cert)
}

/// Runs the criteria from cheapest to most expensive; the first to fire wins.
/// When none fires, the notes collect what each one reported.
pub fn decide(
    p: &Polynomial,
    budget: &OracleBudget,
) -> Result<IrreducibilityCertificate, CriteriaError> {
    require_nonconstant(p)?;
    let mut attempted = Vec::new();
    let mut notes = Vec::new();

    type Run<'a> = &'a dyn Fn() -> Result<IrreducibilityCertificate, CriteriaError>;
    let steps: [(Criterion, Run); 3] = [
        (Criterion::DegreeGcd, &|| degree_gcd_criterion(p)),
        (Criterion::FaceIndecomposable, &|| face_criterion(p, budget)),
        (Criterion::GaoDirect, &|| gao_direct(p, budget)),
    ];
    for (criterion, run) in steps {
        attempted.push(criterion);
        match run() {
            Ok(mut c) if c.is_irreducible() => {
                c.attempted = attempted;
                if !c.notes.is_empty() {
                    notes.push(c.notes);
                }
                c.notes = notes.join("; ");
                return Ok(c);
            }
            Ok(c) => notes.push(format!("{criterion}: {}", c.notes)),
            Err(e @ CriteriaError::DivisibleByVariable { .. }) => {
                notes.push(format!("{criterion}: {e}"))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(IrreducibilityCertificate::inconclusive(
        attempted,
        notes.join("; "),
    ))
}

fn fail(msg: impl Into<String>) -> CriteriaError {
    CriteriaError::Verification(msg.into())
}

impl PolytopeWitness {
    fn verify(
        &self,
        expected: &IntegralPolytope,
        budget: &OracleBudget,
    ) -> Result<(), CriteriaError> {
        if &self.polytope != expected {
            return Err(fail("stored polytope differs from the recomputed one"));
        }
        if self.polytope.is_point() {
            return Err(fail("polytope is a single point"));
        }
        match &self.method {
            IndecomposabilityMethod::Segment { u, v, gcd } => {
                let ends = [u.clone(), v.clone()];
                if self.polytope.vertices() != ends || *gcd != 1 {
                    return Err(fail("segment witness does not match"));
                }
                if segment_indecomposable(u, v) != Ok(true) {
                    return Err(fail("segment is not primitive"));
                }
            }
            IndecomposabilityMethod::Prism { prism, gcd } => {
                if prism.hull() != self.polytope || *gcd != 1 || prism.apex_gcd() != 1 {
                    return Err(fail("prism witness does not match"));
                }
                if prism_indecomposable(prism) != Ok(true) {
                    return Err(fail("prism is not a valid prism"));
                }
            }
            // The search result is not a checkable object; run it again.
            IndecomposabilityMethod::Oracle => {
                match brute_force_decomposable(&self.polytope, budget) {
                    Ok(r) if !r.decomposable => {}
                    Ok(_) => return Err(fail("polytope decomposes")),
                    Err(e) => return Err(fail(format!("oracle re-run failed: {e}"))),
                }
            }
        }
        Ok(())
    }
}

impl IrreducibilityCertificate {
    /// Re-checks an irreducible verdict from its stored witnesses. Degrees,
    /// gcds, polytopes and face witnesses are recomputed from `p`; only an
    /// oracle-backed witness triggers a new search. Inconclusive
    /// certificates claim nothing and always pass.
    pub fn verify(&self, p: &Polynomial, budget: &OracleBudget) -> Result<(), CriteriaError> {
        if self.verdict == Verdict::Inconclusive {
            return Ok(());
        }
        require_nonconstant(p).map_err(|_| fail("input is constant"))?;
        match self.criterion {
            Criterion::None => Err(fail("irreducible verdict without a criterion")),
            Criterion::DegreeGcd => {
                let split = self.split.as_ref().ok_or_else(|| fail("missing split"))?;
                let chain = self
                    .face_chain
                    .as_ref()
                    .ok_or_else(|| fail("missing face chain"))?;
                let s = SplitDecomposition::from_indices(p, &split.i, &split.j)
                    .map_err(|e| fail(e.to_string()))?;
                let degrees = (s.degree_i, s.degree_j);
                if self.degrees != Some(degrees) || chain.degrees != degrees {
                    return Err(fail("degrees do not match"));
                }
                if degrees.0.gcd(&degrees.1) != 1 || self.degree_gcd != Some(1) {
                    return Err(fail("degrees are not coprime"));
                }
                if &chain.split != split || self.edge.as_ref() != Some(&chain.edge) {
                    return Err(fail("face chain does not match the split"));
                }
                chain.verify(p).map_err(|e| fail(e.to_string()))?;
                if chain.edge.gcd != 1 {
                    return Err(fail("edge is not primitive"));
                }
                Ok(())
            }
            Criterion::FaceIndecomposable => {
                let split = self.split.as_ref().ok_or_else(|| fail("missing split"))?;
                let w = self
                    .indecomposable
                    .as_ref()
                    .ok_or_else(|| fail("missing witness"))?;
                let s = SplitDecomposition::from_indices(p, &split.i, &split.j)
                    .map_err(|e| fail(e.to_string()))?;
                if self.degrees != Some((s.degree_i, s.degree_j)) {
                    return Err(fail("degrees do not match"));
                }
                let side = w.side.ok_or_else(|| fail("witness has no side"))?;
                let part = s.part_without_constant(side == PartSide::I);
                let pt = newton_polytope(&part).map_err(|e| fail(e.to_string()))?;
                w.verify(&pt, budget)?;
                let sum = &s.part_i.without_constant() + &s.part_j.without_constant();
                let whole = newton_polytope(&sum).map_err(|e| fail(e.to_string()))?;
                match &w.face {
                    Some(f) if f.face == pt && f.verify(&whole) => {}
                    _ => return Err(fail("face witness does not match")),
                }
                if let Some(c) = &w.nested {
                    c.verify(&part).map_err(|e| fail(e.to_string()))?;
                }
                Ok(())
            }
            Criterion::GaoDirect => {
                if !divisible_variables(p).is_empty() {
                    return Err(fail("input is divisible by a variable"));
                }
                let w = self
                    .indecomposable
                    .as_ref()
                    .ok_or_else(|| fail("missing witness"))?;
                let pt = newton_polytope(p).map_err(|e| fail(e.to_string()))?;
                w.verify(&pt, budget)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LatticePoint;
    use crate::poly::parse;

    fn p(s: &str) -> Polynomial {
        parse(s, None).unwrap()
    }

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn degree_gcd_examples() {
        let q = p("z1^2*z2 + z1 + z3^2");
        let c = degree_gcd_criterion(&q).unwrap();
        assert_eq!(c.verdict, Verdict::Irreducible);
        assert_eq!(c.split.as_ref().unwrap().to_string(), "{1,2}|{3}");
        assert_eq!(c.degrees, Some((3, 2)));
        c.verify(&q, &budget()).unwrap();

        let c = degree_gcd_criterion(&p("z1^2 + z2^2")).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);

        let c = degree_gcd_criterion(&p("z1^3 + z2^2 + z2*z3")).unwrap();
        assert_eq!(c.verdict, Verdict::Irreducible);
        assert_eq!(c.degrees, Some((3, 2)));

        assert_eq!(
            degree_gcd_criterion(&p("4")),
            Err(CriteriaError::ConstantInput)
        );
    }

    #[test]
    fn face_examples() {
        let q = p("z1^3 + z2^2 + z1^2*z2^2 + z3^2");
        assert_eq!(
            degree_gcd_criterion(&q).unwrap().verdict,
            Verdict::Inconclusive
        );
        let c = face_criterion(&q, &budget()).unwrap();
        assert_eq!(c.criterion, Criterion::FaceIndecomposable);
        let w = c.indecomposable.as_ref().unwrap();
        assert_eq!(w.side, Some(PartSide::I));
        assert!(matches!(
            w.method,
            IndecomposabilityMethod::Prism { gcd: 1, .. }
        ));
        c.verify(&q, &budget()).unwrap();

        let q = p("z1^2 + z1 + z2^2");
        let c = face_criterion(&q, &budget()).unwrap();
        let w = c.indecomposable.as_ref().unwrap();
        assert_eq!(
            w.method,
            IndecomposabilityMethod::Segment {
                u: LatticePoint(vec![1, 0]),
                v: LatticePoint(vec![2, 0]),
                gcd: 1
            }
        );
        c.verify(&q, &budget()).unwrap();

        let c = face_criterion(&p("z1^2 + z2^2"), &budget()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn gao_examples() {
        let err = gao_direct(&p("z1*z2"), &budget()).unwrap_err();
        assert_eq!(
            err.to_string(),
            "divisible by z1, z2; Gao criterion inapplicable"
        );
        let q = p("z1 + z2 + 1");
        let c = gao_direct(&q, &budget()).unwrap();
        assert_eq!(c.criterion, Criterion::GaoDirect);
        c.verify(&q, &budget()).unwrap();
        let c = gao_direct(&p("z1^2 + 2*z1*z2 + z2^2 + 1"), &budget()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn decide_orders_criteria() {
        let c = decide(&p("z1^2*z2 + z1 + z3^2"), &budget()).unwrap();
        assert_eq!(c.criterion, Criterion::DegreeGcd);
        assert_eq!(c.attempted, vec![Criterion::DegreeGcd]);
        let c = decide(&p("z1*z2"), &budget()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c
            .notes
            .contains("divisible by z1, z2; Gao criterion inapplicable"));
        assert_eq!(c.attempted.len(), 3);
    }

    #[test]
    fn json_round_trip() {
        for text in [
            "z1^2*z2 + z1 + z3^2",
            "z1^3 + z2^2 + z1^2*z2^2 + z3^2",
            "z1 + z2 + 1",
            "z1*z2",
        ] {
            let c = decide(&p(text), &budget()).unwrap();
            let back = IrreducibilityCertificate::from_json(&c.to_json()).unwrap();
            assert_eq!(back, c);
        }
        let c = decide(&p("z1^2*z2 + z1 + z3^2"), &budget()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["split"]["I"], serde_json::json!([1, 2]));
        assert_eq!(v["h0"]["normal"], serde_json::json!([2, 2, 3]));
        assert_eq!(v["edge"]["gcd"], 1);
        assert_eq!(v["chain"][0]["variable"], 1);
    }

    #[test]
    fn tampered_certificates_fail() {
        let q = p("z1^2*z2 + z1 + z3^2");
        let mut c = decide(&q, &budget()).unwrap();
        c.degrees = Some((2, 3));
        assert!(c.verify(&q, &budget()).is_err());
        let other = p("z1^2*z2 + z1 + z3^3");
        let c = decide(&q, &budget()).unwrap();
        assert!(c.verify(&other, &budget()).is_err());
    }
}
