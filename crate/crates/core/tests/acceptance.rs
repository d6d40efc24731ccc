//! Acceptance suite. Each criterion prints one PASS/FAIL line with a short
//! summary and its running time; the process fails if any criterion fails.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use coxmat::axioms::{
    all_collections, is_orthogonal_matroid, is_symplectic_matroid, lagrangian_orthogonal_matroids,
    max_member, strong_exchange_holds, BasisCollection,
};
use coxmat::ground::{enumerate_admissible_sets, AdmissibleSet, Parity};
use coxmat::ordering::{enumerate_orderings, Flavor};
use coxmat::ordinary::all_ordinary_matroids;
use coxmat::pairs::{check_pair, exploded_sum, project, transposition_pair, Condition};
use coxmat::perm::SignedPermutation;
use coxmat::polytope::Polytope;
use coxmat::quotients::{
    elementary_quotient_corollary_check, is_quotient, is_quotient_gale, phi_matroid,
};
use coxmat::repr::{
    lagrangian_extensions, max_basis_by_pivots, pair_representation_check, random_isotropic,
    represented_matroid, Field, PrimeField, Rationals,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coll(n: usize, bases: &[&str]) -> BasisCollection {
    BasisCollection::from_compact(n, bases).unwrap()
}

fn opposite_pairs(n: usize) -> Vec<(BasisCollection, BasisCollection)> {
    let evens = lagrangian_orthogonal_matroids(n, Parity::Even).unwrap();
    let odds = lagrangian_orthogonal_matroids(n, Parity::Odd).unwrap();
    let mut out = Vec::new();
    for e in &evens {
        for o in &odds {
            out.push((e.clone(), o.clone()));
            out.push((o.clone(), e.clone()));
        }
    }
    out
}

fn six_way_equivalence() -> Outcome {
    let (mut pairs, mut holding) = (0, 0);
    for n in 2..=3 {
        for (b1, b2) in opposite_pairs(n) {
            let report = check_pair(&b1, &b2).map_err(|e| e.to_string())?;
            ensure(report.consistent(), || {
                format!("verdicts {:?} disagree on {b1} / {b2}", report.verdicts)
            })?;
            pairs += 1;
            holding += report.all_true() as usize;
        }
    }
    Ok(format!("{pairs} ordered pairs, {holding} Lagrangian pairs, all six verdicts agree"))
}

fn gelfand_serganova() -> Outcome {
    let mut checked = 0;
    let mut matroids = [0usize; 2];
    for n in 1..=3 {
        for k in 0..=n {
            for c in all_collections(n, k).unwrap() {
                let poly = Polytope::from_collection(&c);
                for (slot, flavor) in [Flavor::C, Flavor::D].into_iter().enumerate() {
                    let gs = poly.non_root_edge(flavor).is_none();
                    let scan = match flavor {
                        Flavor::C => is_symplectic_matroid(&c),
                        _ => is_orthogonal_matroid(&c),
                    };
                    ensure(gs == scan, || {
                        format!("{flavor}: polytope says {gs}, ordering scan says {scan} for {c}")
                    })?;
                    matroids[slot] += scan as usize;
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} collections (exhaustive, n <= 3), {} symplectic, {} orthogonal",
        matroids[0], matroids[1]
    ))
}

fn strong_exchange() -> Outcome {
    let mut agree = 0;
    let mut orthogonal = 0;
    let mut check = |c: &BasisCollection| -> Result<(), String> {
        let se = strong_exchange_holds(c).map_err(|e| e.to_string())?;
        let scan = is_orthogonal_matroid(c);
        ensure(se == scan, || format!("strong exchange {se}, D-scan {scan} for {c}"))?;
        agree += 1;
        orthogonal += scan as usize;
        Ok(())
    };
    for n in 1..=3 {
        for c in all_collections(n, n).unwrap() {
            check(&c)?;
        }
    }
    let sets = enumerate_admissible_sets(4, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..10_000 {
        // Alternate uniform subsets of J_4 with subsets of one parity class,
        // where orthogonal matroids are not vanishingly rare.
        let pool: Vec<AdmissibleSet> = if round % 2 == 0 {
            sets.clone()
        } else {
            let p = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
            sets.iter().copied().filter(|s| s.parity() == p).collect()
        };
        let chosen: Vec<AdmissibleSet> = loop {
            let pick: Vec<_> = pool.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if !pick.is_empty() {
                break pick;
            }
        };
        check(&BasisCollection::new(4, chosen).unwrap())?;
    }
    Ok(format!("{agree} collections agree ({orthogonal} orthogonal matroids)"))
}

fn parity_theorem() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        for c in all_collections(n, n).unwrap().filter(is_orthogonal_matroid) {
            ensure(c.parity().is_some(), || format!("mixed parity in {c}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} Lagrangian orthogonal matroids, each of uniform parity"))
}

fn rank_two_pair() -> Outcome {
    let odd = coll(2, &["12*", "1*2"]);
    let even = coll(2, &["12", "1*2*"]);
    let sum = exploded_sum(&odd, &even).map_err(|e| e.to_string())?;
    let expected = coll(3, &["12*3", "1*23", "123*", "1*2*3*"]);
    ensure(sum == expected, || format!("exploded sum {sum}, expected {expected}"))?;
    let p = project(&sum, 3).map_err(|e| e.to_string())?;
    ensure(p.with_element == odd && p.with_star == even, || {
        format!("projection gave {} and {}", p.with_element, p.with_star)
    })?;
    Ok(format!("exploded sum {sum}; projection at 3 recovers both matroids"))
}

fn rank_three_non_pair() -> Outcome {
    let all = coll(3, &["123", "123*", "12*3", "1*23", "1*2*3*"]);
    ensure(all.rank() == 3 && is_symplectic_matroid(&all), || {
        "five-basis collection is not a rank-3 symplectic matroid".into()
    })?;
    let (Some(even), Some(odd)) = all.parity_classes() else {
        return Err("missing a parity class".into());
    };
    ensure(is_orthogonal_matroid(&even) && is_orthogonal_matroid(&odd), || {
        "a parity class is not an orthogonal matroid".into()
    })?;
    let report = check_pair(&even, &odd).map_err(|e| e.to_string())?;
    ensure(report.all_false(), || format!("verdicts {:?}", report.verdicts))?;
    let w = report
        .witness(Condition::Definition)
        .and_then(|w| w.ordering.clone())
        .ok_or("no witness ordering")?;
    let top = max_member(&odd, &w);
    let target = AdmissibleSet::parse_compact("1*2*3*").unwrap();
    ensure(top == Some(target), || format!("witness {w} makes {top:?} maximal"))?;
    Ok(format!("all six conditions false; witness ordering {w} makes {target} maximal"))
}

fn theorem_three_and_corollary() -> Outcome {
    let mut pairs = 0;
    let mut quotients = 0;
    for n in 1..=4 {
        let matroids = all_ordinary_matroids(n).unwrap();
        for m1 in &matroids {
            for m2 in matroids.iter().filter(|m| m.rank() + 1 == m1.rank()) {
                let err = |e: coxmat::Error| e.to_string();
                let q = is_quotient(m1, m2).map_err(err)?;
                let gale = is_quotient_gale(m1, m2).map_err(err)?;
                let report =
                    check_pair(&phi_matroid(m1).map_err(err)?, &phi_matroid(m2).map_err(err)?)
                        .map_err(err)?;
                let cor = elementary_quotient_corollary_check(m1, m2).map_err(err)?;
                let all_same = gale == q && cor == q && report.verdicts.iter().all(|&v| v == q);
                ensure(all_same, || {
                    format!(
                        "{m1} -> {m2}: circuits {q}, greedy {gale}, pair {:?}, corollary {cor}",
                        report.verdicts
                    )
                })?;
                pairs += 1;
                quotients += q as usize;
            }
        }
    }
    Ok(format!("{pairs} rank-adjacent pairs on [n], n <= 4, {quotients} quotients; all four tests agree"))
}

/// Every Lagrangian orthogonal matroid on `[2]` and `[3]`, plus `count`
/// random ones on `[4]` built from `Φ` images of ordinary matroids moved by
/// random signed permutations.
fn lagrangian_universe(count: usize) -> Vec<BasisCollection> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for p in [Parity::Even, Parity::Odd] {
            out.extend(lagrangian_orthogonal_matroids(n, p).unwrap());
        }
    }
    let seeds: Vec<BasisCollection> = all_ordinary_matroids(4)
        .unwrap()
        .iter()
        .map(|m| phi_matroid(m).unwrap())
        .collect();
    let group: Vec<SignedPermutation> = SignedPermutation::all(4).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
    for _ in 0..count {
        let base = &seeds[rng.gen_range(0..seeds.len())];
        let mut c = base.act(&group[rng.gen_range(0..group.len())]).unwrap();
        for i in 1..=4 {
            if rng.gen_bool(0.5) {
                c = transposition_pair(&c, i).unwrap();
            }
        }
        out.push(c);
    }
    out
}

fn projection_theorem() -> Outcome {
    let universe = lagrangian_universe(1000);
    let mut projections = 0;
    for b in &universe {
        ensure(is_orthogonal_matroid(b), || format!("generator produced {b}"))?;
        for i in 1..=b.n() {
            let Ok(p) = project(b, i) else { continue };
            let report = check_pair(&p.with_element, &p.with_star).map_err(|e| e.to_string())?;
            ensure(report.all_true(), || {
                format!("projection of {b} at {i}: verdicts {:?}", report.verdicts)
            })?;
            projections += 1;
        }
    }
    Ok(format!("{} matroids, {projections} two-sided projections, all Lagrangian pairs", universe.len()))
}

fn transposition_theorem() -> Outcome {
    let universe = lagrangian_universe(1000);
    let mut count = 0;
    for b in &universe {
        for i in 1..=b.n() {
            let t = transposition_pair(b, i).map_err(|e| e.to_string())?;
            let report = check_pair(b, &t).map_err(|e| e.to_string())?;
            ensure(report.all_true(), || {
                format!("{b} and its swap at {i}: verdicts {:?}", report.verdicts)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (matroid, index) swaps, all Lagrangian pairs"))
}

fn union_theorem() -> Outcome {
    let mut unions = 0;
    for n in 2..=3 {
        for (b1, b2) in opposite_pairs(n) {
            if check_pair(&b1, &b2).map_err(|e| e.to_string())?.all_true() {
                let u = b1.union(&b2).unwrap();
                ensure(is_symplectic_matroid(&u), || format!("union {u} is not symplectic"))?;
                unions += 1;
            }
        }
    }
    Ok(format!("{unions} verified pairs, every union symplectic"))
}

fn representation_run<F: Field>(field: F, n: usize, trials: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let u = random_isotropic(&field, n, n - 1, &mut rng).map_err(|e| e.to_string())?;
        let (a, b) = lagrangian_extensions(&u).map_err(|e| e.to_string())?;
        let tag = || format!("{} n={n} trial {t}", field.name());
        let distinct = a.matrix().stack(b.matrix()).rank() == n + 1;
        let contain = [&a, &b]
            .iter()
            .all(|l| l.k() == n && l.matrix().stack(u.matrix()).rank() == n);
        ensure(distinct && contain, || format!("{}: extensions are not two Lagrangians over U", tag()))?;
        ensure(pair_representation_check(&a, &b).map_err(|e| e.to_string())?, || {
            format!("{}: represented matroids are not a Lagrangian pair", tag())
        })?;
        if n <= 3 {
            for l in [&a, &b] {
                let rep = represented_matroid(l);
                for flavor in [Flavor::C, Flavor::D] {
                    for ord in enumerate_orderings(n, flavor) {
                        let pivots = max_basis_by_pivots(l, &ord);
                        ensure(max_member(&rep, &ord) == Some(pivots), || {
                            format!("{}: pivots {pivots} under {ord} are not the Gale max", tag())
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn representation_pipeline() -> Outcome {
    let mut total = 0;
    for n in 2..=4 {
        for (p, trials) in [(3u64, 100), (5, 100)] {
            representation_run(PrimeField::new(p).unwrap(), n, trials, 31 * p + n as u64)?;
            total += trials;
        }
        representation_run(Rationals, n, 20, 1000 + n as u64)?;
        total += 20;
    }
    Ok(format!("{total} random subspaces over GF(3), GF(5) and Q; extensions, pairs and pivots verified"))
}

fn ordering_census() -> Outcome {
    let mut lines = Vec::new();
    for n in 1..=5usize {
        let fact: usize = (1..=n).product();
        for (flavor, expected) in [(Flavor::C, (1 << n) * fact), (Flavor::D, (1 << (n - 1)) * fact)] {
            let all: HashSet<_> = enumerate_orderings(n, flavor).collect();
            let listed = enumerate_orderings(n, flavor).count();
            ensure(all.len() == expected && listed == expected, || {
                format!("{flavor}{n}: {listed} listed, {} distinct, expected {expected}", all.len())
            })?;
        }
        lines.push(format!("C{n}={} D{n}={}", (1 << n) * fact, (1 << (n - 1)) * fact));
    }
    // Spot check that every D ordering has a canonical unstarred middle.
    let sample = enumerate_orderings(3, Flavor::D).all(|o| !o.top()[2].is_starred());
    ensure(sample, || "non-canonical D ordering".into())?;
    Ok(lines.join(", "))
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "six-way pair equivalence, n = 2, 3", budget: secs(10), run: six_way_equivalence },
        Criterion { id: 2, title: "polytope edge criterion vs ordering scans", budget: secs(60), run: gelfand_serganova },
        Criterion { id: 3, title: "strong exchange vs D-maximality", budget: secs(30), run: strong_exchange },
        Criterion { id: 4, title: "parity of Lagrangian orthogonal matroids", budget: secs(10), run: parity_theorem },
        Criterion { id: 5, title: "exploded sum and projection on [2]", budget: secs(1), run: rank_two_pair },
        Criterion { id: 6, title: "symplectic non-pair on [3]", budget: secs(1), run: rank_three_non_pair },
        Criterion { id: 7, title: "quotients, Phi images and the exchange corollary", budget: secs(120), run: theorem_three_and_corollary },
        Criterion { id: 8, title: "projections are Lagrangian pairs", budget: secs(60), run: projection_theorem },
        Criterion { id: 9, title: "star-swaps are Lagrangian pairs", budget: secs(60), run: transposition_theorem },
        Criterion { id: 10, title: "unions of pairs are symplectic", budget: secs(10), run: union_theorem },
        Criterion { id: 11, title: "isotropic representation pipeline", budget: secs(60), run: representation_pipeline },
        Criterion { id: 12, title: "ordering census, n <= 5", budget: secs(10), run: ordering_census },
    ];

    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let name = format!("criterion {:>2}: {}", c.id, c.title);
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let timing = if elapsed > c.budget {
            format!("{:.2}s, over the {}s budget", elapsed.as_secs_f64(), c.budget.as_secs())
        } else {
            format!("{:.2}s", elapsed.as_secs_f64())
        };
        match outcome {
            Ok(detail) => println!("PASS {name} [{timing}] {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name} [{timing}] {detail}");
            }
        }
    }
    let _ = panic::take_hook();
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
