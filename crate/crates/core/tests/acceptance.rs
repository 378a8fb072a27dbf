//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs under `cargo test` with its own `main`.

mod common;

use std::time::{Duration, Instant};

use num_integer::Integer;
use polyirr::criteria::{
    decide, degree_gcd_criterion, face_criterion, face_criterion_on_split, gao_direct, Criterion,
    IndecomposabilityMethod, IrreducibilityCertificate, PartSide, Verdict,
};
use polyirr::decomp::{brute_force_decomposable, prism_indecomposable, OracleBudget, PrismSpec};
use polyirr::geometry::{
    convex_hull, faces, is_face_of, minkowski_sum, newton_polytope, Hyperplane, IntegralPolytope,
    LatticePoint,
};
use polyirr::poly::{parse, Polynomial};
use polyirr::random::{random_polynomial, seeded, PolyShape};
use rand::Rng;

use common::{directions, exponents, lp, polygon_decomposable, support_max};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, || format!("took {:.1?}, limit {:?}", t, limit))
}

/// N(p*q) = N(p) + N(q) on random pairs, also checked through support
/// functions computed directly from the supports.
fn ostrowski() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(0);
    let pairs = 250;
    for k in 0..pairs {
        let n = rng.random_range(1..=3);
        let shape = PolyShape::full(n, 4, 6);
        let p = random_polynomial(&mut rng, &shape);
        let q = random_polynomial(&mut rng, &shape);
        let prod = &p * &q;
        let lhs = newton_polytope(&prod).map_err(|e| e.to_string())?;
        let rhs = minkowski_sum(&newton_polytope(&p).unwrap(), &newton_polytope(&q).unwrap())
            .map_err(|e| e.to_string())?;
        check(lhs == rhs, || {
            format!("pair {k}: p = {p}, q = {q}: {lhs} vs {rhs}")
        })?;
        let (sp, sq, spq) = (exponents(&p), exponents(&q), exponents(&prod));
        for dir in directions(n, 2) {
            let a = support_max(&spq, &dir);
            let b = support_max(&sp, &dir) + support_max(&sq, &dir);
            check(a == b, || {
                format!("pair {k}: support mismatch along {dir:?}")
            })?;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{pairs} random pairs equal in {:.1?}",
        start.elapsed()
    ))
}

/// Gao's prism test against both the brute-force search and the
/// edge-sequence oracle, on every 2-D prism with base in `x1 = 0`.
fn prism_sweep() -> Outcome {
    let start = Instant::now();
    let budget = OracleBudget {
        max_points: 64,
        ..OracleBudget::default()
    };
    let plane = Hyperplane::coordinate(2, 0, 0);
    let mut cases = 0;
    let mut indecomposable = 0;
    for lo in 0..=4 {
        for hi in lo..=4 {
            let base_pts: Vec<LatticePoint> = if lo == hi {
                vec![lp(&[0, lo])]
            } else {
                vec![lp(&[0, lo]), lp(&[0, hi])]
            };
            let base = convex_hull(&base_pts).unwrap();
            for ax in 1..=4 {
                for ay in 0..=4 {
                    let spec = PrismSpec::new(base.clone(), lp(&[ax, ay]), plane.clone())
                        .map_err(|e| e.to_string())?;
                    let gao = prism_indecomposable(&spec).map_err(|e| e.to_string())?;
                    let hull = spec.hull();
                    let oracle = brute_force_decomposable(&hull, &budget)
                        .map_err(|e| format!("{hull}: {e}"))?;
                    let pts: Vec<(i64, i64)> = hull
                        .vertices()
                        .iter()
                        .map(|v| (v.coords()[0], v.coords()[1]))
                        .collect();
                    let edge_oracle = !polygon_decomposable(&pts);
                    check(gao == !oracle.decomposable && gao == edge_oracle, || {
                        format!(
                            "{hull}: prism {gao}, search {}, edges {edge_oracle}",
                            !oracle.decomposable
                        )
                    })?;
                    if let Some((a, b)) = &oracle.summands {
                        check(minkowski_sum(a, b).as_ref() == Ok(&hull), || {
                            format!("{hull}: summands do not add up")
                        })?;
                    }
                    cases += 1;
                    indecomposable += gao as usize;
                }
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{cases} prisms agree ({indecomposable} indecomposable) in {:.1?}",
        start.elapsed()
    ))
}

fn coprime_sum(rng: &mut impl Rng) -> (Polynomial, usize) {
    loop {
        let nu = rng.random_range(1..=2);
        let left = PolyShape {
            n: 3,
            vars: (0..nu).collect(),
            max_degree: 5,
            max_terms: 4,
            allow_constant_term: true,
        };
        let right = PolyShape {
            vars: (nu..3).collect(),
            ..left.clone()
        };
        let p1 = random_polynomial(rng, &left);
        let p2 = random_polynomial(rng, &right);
        let (d1, d2) = (p1.total_degree().unwrap(), p2.total_degree().unwrap());
        if d1.gcd(&d2) == 1 {
            return (&p1 + &p2, nu);
        }
    }
}

/// Coprime degrees always give an irreducible verdict with a checkable
/// certificate and a primitive edge of N(P).
fn coprime_end_to_end() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(1);
    let budget = OracleBudget::default();
    let runs = 120;
    for k in 0..runs {
        let (p, _) = coprime_sum(&mut rng);
        let cert = decide(&p, &budget).map_err(|e| format!("{p}: {e}"))?;
        check(
            cert.verdict == Verdict::Irreducible && cert.criterion == Criterion::DegreeGcd,
            || format!("case {k}: {p} not certified:\n{cert}"),
        )?;
        cert.verify(&p, &budget).map_err(|e| format!("{p}: {e}"))?;
        let back =
            IrreducibilityCertificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
        back.verify(&p, &budget)
            .map_err(|e| format!("{p} after JSON: {e}"))?;
        let edge = cert.edge.as_ref().ok_or("missing edge")?;
        let np = newton_polytope(&p).unwrap();
        let seg = convex_hull(&[edge.x0.clone(), edge.x1.clone()]).unwrap();
        check(
            seg.num_vertices() == 2 && is_face_of(&seg, &np).is_some(),
            || format!("{p}: [{}, {}] is not an edge", edge.x0, edge.x1),
        )?;
        check(edge.gcd == 1, || format!("{p}: edge gcd {}", edge.gcd))?;
    }
    Ok(format!(
        "{runs} coprime sums certified in {:.1?}",
        start.elapsed()
    ))
}

/// Explicit products must never be certified irreducible.
fn soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(2);
    let budget = OracleBudget::default();
    let runs = 220;
    let mut gao_decided = 0;
    for k in 0..runs {
        let n = rng.random_range(1..=3);
        let shape = PolyShape::full(n, 3, 4);
        let f = random_polynomial(&mut rng, &shape);
        let g = random_polynomial(&mut rng, &shape);
        let p = &f * &g;
        let fired = |c: &IrreducibilityCertificate| c.verdict == Verdict::Irreducible;
        let verdicts = [
            ("combined", decide(&p, &budget)),
            ("degree", degree_gcd_criterion(&p)),
            ("face", face_criterion(&p, &budget)),
        ];
        for (name, v) in verdicts {
            let c = v.map_err(|e| format!("{p}: {e}"))?;
            check(!fired(&c), || {
                format!("case {k}: {name} certified ({f})*({g}):\n{c}")
            })?;
        }
        if let Ok(c) = gao_direct(&p, &budget) {
            check(!fired(&c), || {
                format!("case {k}: Gao certified ({f})*({g})")
            })?;
            gao_decided += !c.notes.contains("budget") as usize;
        }
    }
    Ok(format!(
        "{runs} products, no false positives ({gao_decided} fully searched) in {:.1?}",
        start.elapsed()
    ))
}

fn example_one() -> Result<(), String> {
    let budget = OracleBudget::default();
    let p1 = parse("2*z1^3 - 3*z2^2 + 5*z1^2*z2^2", None).map_err(|e| e.to_string())?;
    let tri = newton_polytope(&p1).unwrap();
    let expected = convex_hull(&[lp(&[3, 0]), lp(&[0, 2]), lp(&[2, 2])]).unwrap();
    check(tri == expected, || format!("hull {tri}"))?;
    let g = polyirr::decomp::gcd_of_points(&[lp(&[2, 3, 2, 2])]).unwrap();
    check(g == 1, || format!("gcd(m, n, u, v) = {g}"))?;

    let p = parse("2*z1^3 - 3*z2^2 + 5*z1^2*z2^2 + z3^2", None).map_err(|e| e.to_string())?;
    let cert = decide(&p, &budget).map_err(|e| e.to_string())?;
    check(cert.criterion == Criterion::FaceIndecomposable, || {
        format!("{cert}")
    })?;
    cert.verify(&p, &budget).map_err(|e| e.to_string())?;
    let w = cert.indecomposable.as_ref().ok_or("missing witness")?;
    check(w.side == Some(PartSide::I), || "wrong side".into())?;
    let lifted = convex_hull(&[lp(&[3, 0, 0]), lp(&[0, 2, 0]), lp(&[2, 2, 0])]).unwrap();
    check(w.polytope == lifted, || {
        format!("part polytope {}", w.polytope)
    })?;
    match &w.method {
        IndecomposabilityMethod::Prism { gcd: 1, .. } => {}
        m => return Err(format!("unexpected method {m:?}")),
    }
    let fixture = include_str!("fixtures/example1.json");
    let stored = IrreducibilityCertificate::from_json(fixture).map_err(|e| e.to_string())?;
    check(stored == cert, || "certificate differs from fixture".into())?;
    stored.verify(&p, &budget).map_err(|e| e.to_string())
}

fn example_two() -> Result<(), String> {
    let budget = OracleBudget::default();
    let p = parse("z1^3 + z2^2 + z2*z3 + z4^5", None).map_err(|e| e.to_string())?;
    let cert = face_criterion_on_split(&p, &[0, 1, 2], &[3], &budget).map_err(|e| e.to_string())?;
    check(cert.criterion == Criterion::FaceIndecomposable, || {
        format!("{cert}")
    })?;
    cert.verify(&p, &budget).map_err(|e| e.to_string())?;
    let w = cert.indecomposable.as_ref().ok_or("missing witness")?;
    check(w.side == Some(PartSide::I), || "wrong side".into())?;
    let nested = w.nested.as_ref().ok_or("missing nested construction")?;
    check(
        nested.split.i == vec![0] && nested.degrees == (3, 2),
        || format!("inner split {} degrees {:?}", nested.split, nested.degrees),
    )?;
    check(
        nested.edge.x0 == lp(&[3, 0, 0, 0])
            && nested.edge.x1 == lp(&[0, 1, 1, 0])
            && nested.edge.gcd == 1,
        || format!("inner edge {} -- {}", nested.edge.x0, nested.edge.x1),
    )?;
    // The triangle of the part must also be indecomposable by exhaustive search.
    let search = brute_force_decomposable(&w.polytope, &budget).map_err(|e| e.to_string())?;
    check(!search.decomposable, || "search decomposed the part".into())?;
    let fixture = include_str!("fixtures/example2.json");
    let stored = IrreducibilityCertificate::from_json(fixture).map_err(|e| e.to_string())?;
    check(stored == cert, || "certificate differs from fixture".into())?;
    let combined = decide(&p, &budget).map_err(|e| e.to_string())?;
    check(combined.verdict == Verdict::Irreducible, || {
        "combined verdict silent".into()
    })
}

fn worked_examples() -> Outcome {
    example_one().map_err(|e| format!("example 1: {e}"))?;
    example_two().map_err(|e| format!("example 2: {e}"))?;
    Ok("both examples certified and match fixtures".into())
}

fn random_polytope(rng: &mut impl Rng, dim: usize, max_pts: usize, range: i64) -> IntegralPolytope {
    let k = rng.random_range(1..=max_pts);
    let pts: Vec<LatticePoint> = (0..k)
        .map(|_| LatticePoint((0..dim).map(|_| rng.random_range(0..=range)).collect()))
        .collect();
    convex_hull(&pts).unwrap()
}

fn structural() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(3);

    // Faces of faces are faces.
    let mut transitive = 0;
    for _ in 0..25 {
        let dim = rng.random_range(2..=3);
        let c = random_polytope(&mut rng, dim, 7, 3);
        for f1 in faces(&c) {
            for f0 in faces(&f1.face) {
                check(is_face_of(&f0.face, &c).is_some(), || {
                    format!("{} is a face of {} but not of {c}", f0.face, f1.face)
                })?;
                transitive += 1;
            }
        }
    }

    // Disjoint-variable sums without constants: supports stay disjoint, and
    // each part's polytope is a face of the sum's.
    for _ in 0..60 {
        let nu = rng.random_range(1..=2);
        let left = PolyShape {
            n: 3,
            vars: (0..nu).collect(),
            max_degree: 4,
            max_terms: 4,
            allow_constant_term: false,
        };
        let right = PolyShape {
            vars: (nu..3).collect(),
            ..left.clone()
        };
        let p1 = random_polynomial(&mut rng, &left);
        let p2 = random_polynomial(&mut rng, &right);
        let p = &p1 + &p2;
        let (s1, s2) = (p1.support(), p2.support());
        check(s1.iter().all(|e| !s2.contains(e)), || {
            format!("{p1} and {p2} share support")
        })?;
        let mut union = s1.clone();
        union.extend(s2.iter().cloned());
        union.sort();
        check(p.support() == union, || {
            format!("support of {p} is not the disjoint union")
        })?;
        let hull = convex_hull(
            &union
                .iter()
                .map(|e| e.to_lattice_point())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let np = newton_polytope(&p).unwrap();
        check(np == hull, || {
            format!("N({p}) is not the hull of the union")
        })?;
        for part in [&p1, &p2] {
            let w = is_face_of(&newton_polytope(part).unwrap(), &np);
            check(w.is_some_and(|w| w.verify(&np)), || {
                format!("N({part}) is not a face of N({p})")
            })?;
        }
    }

    // Every face of A + B is a sum of exactly one pair of faces.
    let mut sums = 0;
    while sums < 30 {
        let dim = rng.random_range(2..=3);
        let a = random_polytope(&mut rng, dim, 4, 2);
        let b = random_polytope(&mut rng, dim, 4, 2);
        let c = minkowski_sum(&a, &b).unwrap();
        if c.num_vertices() > 8 {
            continue;
        }
        let with_self = |x: &IntegralPolytope| {
            let mut v: Vec<IntegralPolytope> = faces(x).into_iter().map(|w| w.face).collect();
            if !v.contains(x) {
                v.push(x.clone());
            }
            v
        };
        let (fa, fb) = (with_self(&a), with_self(&b));
        for f in faces(&c) {
            let matches = fa
                .iter()
                .flat_map(|x| fb.iter().map(move |y| (x, y)))
                .filter(|(x, y)| minkowski_sum(x, y).as_ref() == Ok(&f.face))
                .count();
            check(matches == 1, || {
                format!("face {} of {a} + {b} has {matches} decompositions", f.face)
            })?;
        }
        sums += 1;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{transitive} nested faces, 60 split sums, {sums} Minkowski sums in {:.1?}",
        start.elapsed()
    ))
}

fn main() {
    type Check = (&'static str, fn() -> Outcome);
    let criteria: [Check; 6] = [
        ("1 Newton polytope of a product", ostrowski),
        ("2 prism criterion vs search", prism_sweep),
        ("3 coprime degrees end to end", coprime_end_to_end),
        ("4 no false positives on products", soundness),
        ("5 worked examples", worked_examples),
        ("6 structural invariants", structural),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("acceptance {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("acceptance {name}: FAIL ({detail})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
