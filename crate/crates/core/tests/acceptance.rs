//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use affine_orbit::oracle::{bfs_orbit, c_by_definition, verify_witness, SearchBudget};
use affine_orbit::orbit::{
    count_orbits, euler_phi, group_of, invariant_of, minimal_space, orbit_equiv, witness,
};
use affine_orbit::space::{canonical_space, classify_space, SpaceInvariants};
use affine_orbit::{AffineWitness, RatAffineSpace, RatPoint, SymBasis, SymPoint};
use common::{n1_brute_equiv, rat, random_rat_point, random_sym_point, random_witness};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn rational(p: &RatPoint) -> SymPoint {
    SymPoint::from_rat(p)
}

/// Every p/q with q <= 50 against the maps t -> ±t + m, and the number of
/// classes per q against max(1, φ(q)/2).
fn ac1() -> Outcome {
    let mut pairs = 0usize;
    for q in 1..=50i64 {
        let points: Vec<SymPoint> = (0..q)
            .filter(|p| p.gcd(&q) == 1)
            .map(|p| rational(&RatPoint::new(vec![rat(p, q)])))
            .collect();
        let mut classes = BTreeSet::new();
        for x in &points {
            let inv = invariant_of(x).unwrap();
            classes.insert(inv.c.clone());
            for y in &points {
                let classifier = orbit_equiv(x, y).unwrap();
                let brute = n1_brute_equiv(&x.coords()[0][0], &y.coords()[0][0]);
                if classifier != brute {
                    return fail(format!("{x} vs {y}: classifier {classifier}, brute force {brute}"));
                }
                pairs += 1;
            }
        }
        let expected = std::cmp::max(1, euler_phi(q as u64) / 2) as usize;
        if classes.len() != expected {
            return fail(format!("q = {q}: {} classes, expected {expected}", classes.len()));
        }
        let counted = count_orbits(&group_of(&points[0]), 1).unwrap().0;
        if counted != expected {
            return fail(format!("q = {q}: count_orbits gives {counted}, expected {expected}"));
        }
    }
    pass(format!("{pairs} same-denominator pairs, class counts for q = 1..50"))
}

/// Witnesses for random equivalent rational pairs.
fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
    let mut done = 0;
    let mut by_n = [0usize; 5];
    while done < 500 {
        let n = rng.gen_range(1..=4);
        let x = rational(&random_rat_point(&mut rng, n, 12, 12));
        let target = invariant_of(&x).unwrap();
        let y = (0..10_000).find_map(|_| {
            let y = rational(&random_rat_point(&mut rng, n, 12, 12));
            (invariant_of(&y).unwrap() == target).then_some(y)
        });
        let Some(y) = y else { continue };
        match witness(&x, &y) {
            Ok(Some(g)) if verify_witness(&g, &x, &y) => {}
            other => return fail(format!("{x} -> {y}: {other:?}")),
        }
        by_n[n] += 1;
        done += 1;
    }
    pass(format!(
        "500 pairs verified (n = 1..4: {:?})",
        &by_n[1..]
    ))
}

/// Bounded search never connects pairs the classifier separates.
fn ac3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA3);
    let budget = SearchBudget::new(8, rat(3, 1), 2_000_000).unwrap();
    let mut cache: HashMap<RatPoint, BTreeSet<RatPoint>> = HashMap::new();
    let mut done = 0;
    let mut truncated = 0;
    let mut same_den = 0;
    while done < 200 {
        // n = 1 is where equal denominators can still be inequivalent.
        let n = [1, 1, 2, 3][rng.gen_range(0..4)];
        let max_den = if n == 3 { 5 } else { 9 };
        // Both points inside the search window; half the time with the same
        // nominal denominator, which makes the pair harder to tell apart.
        let dx = rng.gen_range(1..=max_den);
        let dy = if rng.gen_bool(0.5) { dx } else { rng.gen_range(1..=max_den) };
        let mut inside = |den: i64| {
            RatPoint::new((0..n).map(|_| rat(rng.gen_range(-2 * den..=2 * den), den)).collect())
        };
        let x = inside(dx);
        let y = inside(dy);
        if orbit_equiv(&rational(&x), &rational(&y)).unwrap() {
            continue;
        }
        if witness(&rational(&x), &rational(&y)).unwrap().is_some() {
            return fail(format!("{x} / {y}: non-equivalent pair got a witness"));
        }
        if x.den() == y.den() {
            same_den += 1;
        }
        let sample = cache.entry(x.clone()).or_insert_with(|| {
            let s = bfs_orbit(&x, &budget).unwrap();
            if !s.complete {
                truncated += 1;
            }
            s.points
        });
        if sample.contains(&y) {
            return fail(format!("search reached {y} from {x}"));
        }
        done += 1;
    }
    pass(format!(
        "200 pairs ({same_den} with equal denominators), {truncated} searches hit the node cap"
    ))
}

/// Coset computation of c_F against the literal definition.
fn ac4() -> Outcome {
    let mut checked = 0;
    for n in 1..=3usize {
        for d in 1..=20i64 {
            for p in 0..d {
                if p.gcd(&d) != 1 {
                    continue;
                }
                let mut h = vec![rat(0, 1); n];
                h[n - 1] = rat(1, 1);
                let f = RatAffineSpace::from_equations(n, &[(h, rat(p, d))]).unwrap();
                let by_def = c_by_definition(&f, d as u64).unwrap();
                if by_def.as_ref() != Some(f.c()) {
                    return fail(format!("y{n} = {p}/{d}: c_of {} vs definition {by_def:?}", f.c()));
                }
                checked += 1;
            }
        }
    }
    pass(format!("{checked} hyperplanes"))
}

/// Lemma-level invariants on random rational and symbolic points.
fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA5);
    let bases = [
        SymBasis::new(["a"]).unwrap(),
        SymBasis::new(["a", "b"]).unwrap(),
    ];
    let mut symbolic = 0;
    for i in 0..1000 {
        let n = rng.gen_range(1..=4);
        let x = if i % 2 == 0 {
            rational(&random_rat_point(&mut rng, n, 12, 12))
        } else {
            symbolic += 1;
            random_sym_point(&mut rng, &bases[i % 4 / 2], n)
        };
        let g = group_of(&x);
        let f = minimal_space(&x);
        if g.rank() != f.dim() + 1 {
            return fail(format!("{x}: rank {} but dim F_x = {}", g.rank(), f.dim()));
        }
        let den = x.to_rational().map(|p| p.den());
        for _ in 0..100 {
            let gamma: AffineWitness = random_witness(&mut rng, n);
            let y = gamma.apply(&x).unwrap();
            if let Some(den) = &den {
                if &y.to_rational().unwrap().den() != den {
                    return fail(format!("{x}: denominator changed under {gamma}"));
                }
            }
            if group_of(&y) != g {
                return fail(format!("{x}: G changed under {gamma}"));
            }
            if minimal_space(&y) != f.image(&gamma).unwrap() {
                return fail(format!("{x}: F_(γx) != γ(F_x) for {gamma}"));
            }
        }
    }
    pass(format!(
        "1000 points ({symbolic} symbolic), 100 witnesses each"
    ))
}

/// d ∈ {1, 2, 3, 4, 6}: equal shape and d already forces equivalence.
fn ac6() -> Outcome {
    let mut pairs = 0;
    for d in [1i64, 2, 3, 4, 6] {
        for n in 1..=4usize {
            for tail in 1..=n {
                let points: Vec<SymPoint> = (-d..=2 * d)
                    .filter(|p| p.gcd(&d) == 1)
                    .map(|p| {
                        let mut coords = vec![rat(0, 1); n - tail];
                        coords.resize(n, rat(p, d));
                        rational(&RatPoint::new(coords))
                    })
                    .collect();
                for x in &points {
                    for y in &points {
                        match witness(x, y) {
                            Ok(Some(g)) if verify_witness(&g, x, y) => pairs += 1,
                            other => return fail(format!("{x} -> {y}: {other:?}")),
                        }
                    }
                }
            }
        }
    }
    pass(format!("{pairs} witnessed pairs"))
}

/// Canonical spaces realise every admissible triple.
fn ac7() -> Outcome {
    let mut triples = 0;
    for n in 1..=4usize {
        for e in 0..=n {
            for d in 1..=30u64 {
                for c in 1..=std::cmp::max(1, d / 2) {
                    let inv = SpaceInvariants::new(e, d, c);
                    if inv.validate(n).is_err() {
                        continue;
                    }
                    let (f, _) = match canonical_space(&inv, n) {
                        Ok(v) => v,
                        Err(err) => return fail(format!("{inv} in R^{n}: {err}")),
                    };
                    if classify_space(&f) != inv {
                        return fail(format!("{inv} in R^{n}: got {}", classify_space(&f)));
                    }
                    triples += 1;
                }
            }
        }
    }
    // Sanity: the admissible count for e = n - 1 matches max(1, φ(d)/2).
    let hyper = (1..=30u64)
        .map(|d| std::cmp::max(1, euler_phi(d) / 2))
        .sum::<u64>();
    let counted = (1..=30u64)
        .flat_map(|d| (1..=std::cmp::max(1, d / 2)).map(move |c| (d, c)))
        .filter(|&(d, c)| SpaceInvariants::new(1, d, c).validate(2).is_ok())
        .count() as u64;
    if hyper != counted {
        return fail(format!("hyperplane triples {counted}, expected {hyper}"));
    }
    pass(format!("{triples} triples"))
}

/// Id, title, check and time budget in seconds.
type Criterion = (&'static str, &'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1", "n = 1 exhaustive ground truth", ac1, 10),
        ("AC2", "witness soundness", ac2, 60),
        ("AC3", "witness completeness at desk scale", ac3, 120),
        ("AC4", "c_F oracle equivalence", ac4, 30),
        ("AC5", "structural invariants", ac5, 60),
        ("AC6", "special-denominator corollary", ac6, 10),
        ("AC7", "canonical space round trip", ac7, 30),
    ];
    let mut failed = 0;
    for (id, title, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.ok && elapsed > Duration::from_secs(limit) {
            outcome = fail(format!("{} (over the {limit} s budget)", outcome.detail));
        }
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {id} {title}: {} ({:.2} s, budget {limit} s)",
            outcome.detail,
            elapsed.as_secs_f64()
        );
        if !outcome.ok {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all 7 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 7 criteria failed");
        ExitCode::FAILURE
    }
}
