use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::chain::{ChainStep, FaceChain, RawHyperplane};
use crate::decomp::PrismSpec;
use crate::geometry::{FaceWitness, IntegralPolytope, LatticePoint};

/// Serde adapter writing 0-based indices as 1-based.
pub(crate) mod one_based {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(*v as u64 + 1)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        let v = u64::deserialize(d)?;
        if v == 0 {
            return Err(D::Error::custom("variable indices start at 1"));
        }
        Ok(v as usize - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Irreducible,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Criterion {
    DegreeGcd,
    FaceIndecomposable,
    GaoDirect,
    None,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A partition of the variables, 0-based in memory and 1-based in JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitIndices {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SplitDoc {
    #[serde(rename = "I")]
    i: Vec<usize>,
    #[serde(rename = "J")]
    j: Vec<usize>,
}

impl Serialize for SplitIndices {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SplitDoc {
            i: self.i.iter().map(|x| x + 1).collect(),
            j: self.j.iter().map(|x| x + 1).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SplitIndices {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = SplitDoc::deserialize(d)?;
        let shift = |v: Vec<usize>| -> Result<Vec<usize>, D::Error> {
            v.into_iter()
                .map(|x| {
                    x.checked_sub(1)
                        .ok_or_else(|| serde::de::Error::custom("variable indices start at 1"))
                })
                .collect()
        };
        Ok(SplitIndices {
            i: shift(doc.i)?,
            j: shift(doc.j)?,
        })
    }
}

impl fmt::Display for SplitIndices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{}}}|{{{}}}", list(&self.i), list(&self.j))
    }
}

/// Endpoints of an edge of the Newton polytope and the gcd of their
/// difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWitness {
    pub x0: LatticePoint,
    pub x1: LatticePoint,
    pub gcd: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartSide {
    I,
    J,
}

/// How a polytope was shown integrally indecomposable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IndecomposabilityMethod {
    /// Lattice segment with primitive direction.
    Segment {
        u: LatticePoint,
        v: LatticePoint,
        gcd: u64,
    },
    /// Prism whose apex-to-base differences have gcd 1.
    Prism { prism: PrismSpec, gcd: u64 },
    /// Exhaustive search found no decomposition.
    Oracle,
}

/// An integrally indecomposable polytope backing an irreducible verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeWitness {
    /// Which side of the split the polytope belongs to; absent when it is
    /// the Newton polytope of the whole input.
    pub side: Option<PartSide>,
    pub polytope: IntegralPolytope,
    pub method: IndecomposabilityMethod,
    /// The polytope as a face of the Newton polytope of the sum with the
    /// constant term dropped.
    pub face: Option<FaceWitness>,
    /// A face chain for a coprime inner split of the indecomposable part.
    /// Supporting evidence only; the verdict does not depend on it.
    pub nested: Option<FaceChain>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub split: Option<SplitIndices>,
    pub degrees: Option<(u32, u32)>,
    pub degree_gcd: Option<u64>,
    pub face_chain: Option<FaceChain>,
    pub edge: Option<EdgeWitness>,
    pub indecomposable: Option<PolytopeWitness>,
    /// Criteria tried, in order.
    pub attempted: Vec<Criterion>,
    pub notes: String,
}

impl IrreducibilityCertificate {
    pub(crate) fn inconclusive(attempted: Vec<Criterion>, notes: String) -> Self {
        IrreducibilityCertificate {
            verdict: Verdict::Inconclusive,
            criterion: Criterion::None,
            split: None,
            degrees: None,
            degree_gcd: None,
            face_chain: None,
            edge: None,
            indecomposable: None,
            attempted,
            notes,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        self.verdict == Verdict::Irreducible
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Flat JSON layout; `h0` and `chain` duplicate the face chain at top level.
#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    verdict: Verdict,
    criterion: Criterion,
    split: Option<SplitIndices>,
    degrees: Option<(u32, u32)>,
    gcd: Option<u64>,
    h0: Option<RawHyperplane>,
    chain: Vec<ChainStep>,
    edge: Option<EdgeWitness>,
    notes: String,
    #[serde(default)]
    attempted: Vec<Criterion>,
    #[serde(default)]
    face_chain: Option<FaceChain>,
    #[serde(default)]
    indecomposable: Option<PolytopeWitness>,
}

impl Serialize for IrreducibilityCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CertificateDoc {
            verdict: self.verdict,
            criterion: self.criterion,
            split: self.split.clone(),
            degrees: self.degrees,
            gcd: self.degree_gcd,
            h0: self.face_chain.as_ref().map(|c| c.h0_raw.clone()),
            chain: self
                .face_chain
                .as_ref()
                .map(|c| c.steps.clone())
                .unwrap_or_default(),
            edge: self.edge.clone(),
            notes: self.notes.clone(),
            attempted: self.attempted.clone(),
            face_chain: self.face_chain.clone(),
            indecomposable: self.indecomposable.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IrreducibilityCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = CertificateDoc::deserialize(d)?;
        let (h0, chain) = match &doc.face_chain {
            Some(c) => (Some(c.h0_raw.clone()), c.steps.clone()),
            None => (None, Vec::new()),
        };
        if doc.h0 != h0 || doc.chain != chain {
            return Err(serde::de::Error::custom(
                "top-level h0/chain disagree with face_chain",
            ));
        }
        Ok(IrreducibilityCertificate {
            verdict: doc.verdict,
            criterion: doc.criterion,
            split: doc.split,
            degrees: doc.degrees,
            degree_gcd: doc.gcd,
            face_chain: doc.face_chain,
            edge: doc.edge,
            indecomposable: doc.indecomposable,
            attempted: doc.attempted,
            notes: doc.notes,
        })
    }
}

fn write_plane(f: &mut fmt::Formatter<'_>, normal: &[i64], offset: i64) -> fmt::Result {
    let terms: Vec<String> = normal
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| format!("{c}*x{}", k + 1))
        .collect();
    write!(f, "{} = {}", terms.join(" + "), offset)
}

impl fmt::Display for IrreducibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {:?}", self.verdict)?;
        writeln!(f, "criterion: {}", self.criterion)?;
        if let Some(s) = &self.split {
            writeln!(f, "split: {s}")?;
        }
        if let Some((d1, d2)) = self.degrees {
            write!(f, "degrees: ({d1}, {d2})")?;
            if let Some(g) = self.degree_gcd {
                write!(f, ", gcd {g}")?;
            }
            writeln!(f)?;
        }
        if let Some(c) = &self.face_chain {
            write!(f, "h0: ")?;
            write_plane(f, &c.h0_raw.normal, c.h0_raw.offset)?;
            writeln!(f)?;
            writeln!(f, "c0: {}", c.c0)?;
            for s in &c.steps {
                write!(f, "  step x{} max {}: ", s.variable + 1, s.max_value)?;
                write_plane(f, s.plane.normal(), s.plane.offset())?;
                writeln!(f, " -> {}", s.face)?;
            }
        }
        if let Some(e) = &self.edge {
            writeln!(f, "edge: {} -- {}, gcd {}", e.x0, e.x1, e.gcd)?;
        }
        if let Some(w) = &self.indecomposable {
            match w.side {
                Some(side) => writeln!(f, "indecomposable part {:?}: {}", side, w.polytope)?,
                None => writeln!(f, "indecomposable polytope: {}", w.polytope)?,
            }
            match &w.method {
                IndecomposabilityMethod::Segment { u, v, gcd } => {
                    writeln!(f, "  segment {u} -- {v}, gcd {gcd}")?
                }
                IndecomposabilityMethod::Prism { prism, gcd } => writeln!(
                    f,
                    "  prism apex {} over {}, gcd {}",
                    prism.apex, prism.base, gcd
                )?,
                IndecomposabilityMethod::Oracle => writeln!(f, "  exhaustive search")?,
            }
            if let Some(c) = &w.nested {
                writeln!(
                    f,
                    "  inner split {} degrees ({}, {}), edge {} -- {}, gcd {}",
                    c.split, c.degrees.0, c.degrees.1, c.edge.x0, c.edge.x1, c.edge.gcd
                )?;
            }
        }
        if !self.attempted.is_empty() {
            let names: Vec<String> = self.attempted.iter().map(|c| c.to_string()).collect();
            writeln!(f, "attempted: {}", names.join(", "))?;
        }
        if !self.notes.is_empty() {
            writeln!(f, "notes: {}", self.notes)?;
        }
        Ok(())
    }
}
