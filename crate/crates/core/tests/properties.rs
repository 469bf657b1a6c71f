mod common;

use affine_orbit::farey::{
    controlled_full_simplex, homogeneous_denominator_simplex, regular_simplex_in_space,
    simplex_transport,
};
use affine_orbit::lattice::{
    complete_to_basis, hnf, lattice_canon, min_positive_last_in_coset, solve_integer_system,
};
use affine_orbit::oracle::{bfs_orbit, n1_classify, SearchBudget};
use affine_orbit::orbit::{count_orbits, group_of, invariant_of, orbit_equiv, witness, GroupInvariant};
use affine_orbit::space::{classify_space, d_of, space_equiv};
use affine_orbit::{
    Int, IntMatrix, RatAffineSpace, RatPoint, RatSimplex, Rational, SymBasis, SymPoint,
};
use common::{rat, random_rat_point, random_sym_point, random_witness};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect(),
        cols,
    )
}

fn to_rational(rows: &IntMatrix) -> Vec<Vec<Rational>> {
    rows.rows()
        .iter()
        .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect()
}

fn random_space(rng: &mut ChaCha8Rng, n: usize) -> RatAffineSpace {
    let k = rng.gen_range(1..=n + 1);
    let den = rng.gen_range(1..=9);
    let points: Vec<RatPoint> = (0..k).map(|_| random_rat_point(rng, n, den, 9)).collect();
    RatAffineSpace::from_points(&points).unwrap()
}

fn generator_rows() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4).prop_flat_map(|m| {
        (
            Just(m),
            prop::collection::vec(prop::collection::vec(-9i64..=9, m), 1..=5),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_spans_the_same_lattice((m, rows) in generator_rows()) {
        let g = matrix(&rows, m);
        let form = hnf(&g);
        prop_assert!(form.transform.is_unimodular());
        let reduced = form.transform.mul(&g);
        for (i, row) in reduced.rows().iter().enumerate() {
            if i < form.rank() {
                prop_assert_eq!(row, form.basis.row(i));
            } else {
                prop_assert!(row.iter().all(Zero::is_zero));
            }
        }
        let canon = lattice_canon(&to_rational(&form.basis), m);
        for row in to_rational(&g) {
            prop_assert!(canon.contains(&row));
        }
    }

    #[test]
    fn lattice_canon_ignores_order_and_duplicates((m, rows) in generator_rows(), seed in any::<u64>()) {
        let gens = to_rational(&matrix(&rows, m));
        let canon = lattice_canon(&gens, m);
        let mut shuffled = gens.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        shuffled.push(gens[0].clone());
        prop_assert_eq!(&lattice_canon(&shuffled, m), &canon);
        prop_assert_eq!(&lattice_canon(canon.rows(), m), &canon);
    }

    #[test]
    fn completions_are_unimodular(seed in any::<u64>(), m in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(1..=m);
        let u = random_witness(&mut rng, m);
        let rows = u.matrix().select_rows(0..r);
        let full = complete_to_basis(&rows).unwrap();
        prop_assert!(full.is_unimodular());
        prop_assert_eq!(full.select_rows(0..r), rows);
    }

    #[test]
    fn coset_minimum_is_well_defined_and_minimal(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = random_witness(&mut rng, m).matrix().clone();
        let lattice = basis.select_rows(0..m - 1);
        let w0 = basis.row(m - 1).to_vec();
        let (c, v) = min_positive_last_in_coset(&w0, &lattice).unwrap();
        prop_assert_eq!(&v[m - 1], &c);

        // Shifting by a lattice vector or negating w0 changes nothing.
        let shift: Vec<Int> = (0..m - 1).map(|_| Int::from(rng.gen_range(-4..=4))).collect();
        let lambda = lattice.transpose().mul_vec(&shift);
        let moved: Vec<Int> = w0.iter().zip(&lambda).map(|(a, b)| a + b).collect();
        prop_assert_eq!(&min_positive_last_in_coset(&moved, &lattice).unwrap().0, &c);
        let negated: Vec<Int> = w0.iter().map(|a| -a).collect();
        prop_assert_eq!(&min_positive_last_in_coset(&negated, &lattice).unwrap().0, &c);

        // Exhaustive check over last coordinates 1..=g.
        let g = lattice.column(m - 1).iter().fold(Int::zero(), |acc, v| acc.gcd(v));
        let wl = w0[m - 1].clone();
        let reachable = |t: &Int| {
            if g.is_zero() { *t == wl || *t == -wl.clone() } else {
                (t - &wl).is_multiple_of(&g) || (t + &wl).is_multiple_of(&g)
            }
        };
        let upper = if g.is_zero() { wl.abs() } else { g.clone() };
        let mut t = Int::one();
        let brute = loop {
            if reachable(&t) { break t; }
            prop_assert!(t < upper);
            t += 1;
        };
        prop_assert_eq!(brute, c);
    }

    #[test]
    fn integer_solutions_solve(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = IntMatrix::from_rows(
            (0..n).map(|_| (0..n).map(|_| Int::from(rng.gen_range(-5..=5))).collect()).collect(),
            n,
        );
        let x: Vec<Int> = (0..n).map(|_| Int::from(rng.gen_range(-5..=5))).collect();
        let b = a.mul_vec(&x);
        let sol = solve_integer_system(&a, &b).unwrap();
        prop_assert_eq!(a.mul_vec(&sol), b);
    }

    #[test]
    fn homogeneous_round_trip(p in prop::collection::vec((-30i64..=30, 1i64..=30), 1..=4)) {
        let x = RatPoint::from_i64_pairs(&p);
        let h = x.homogeneous();
        prop_assert_eq!(RatPoint::from_homogeneous(h.entries()).unwrap(), x.clone());
        prop_assert_eq!(h.entries().last().unwrap(), &x.den());
    }

    #[test]
    fn witnesses_preserve_denominators_and_regularity(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_space(&mut rng, n);
        let s = controlled_full_simplex(&f).unwrap();
        let g = random_witness(&mut rng, n);
        let image = s.map(&g).unwrap();
        prop_assert_eq!(image.denominators(), s.denominators());
        prop_assert!(image.is_regular());

        let back = simplex_transport(&s, &image).unwrap().unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(simplex_transport(&image, &s).unwrap().unwrap(), g.inverse());
    }

    #[test]
    fn simplex_constructions_meet_their_postconditions(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_space(&mut rng, n);
        let e = f.dim();

        let v0 = f.min_denominator_point();
        let s = regular_simplex_in_space(&f, &v0).unwrap();
        prop_assert_eq!(&s.vertices()[0], &v0);
        prop_assert!(s.is_regular() && s.dim() == e);
        prop_assert!(s.vertices().iter().all(|v| f.contains(v)));

        let h = homogeneous_denominator_simplex(&f).unwrap();
        prop_assert!(h.is_regular() && h.dim() == e);
        prop_assert!(h.vertices().iter().all(|v| f.contains(v) && &v.den() == f.d()));

        let full = controlled_full_simplex(&f).unwrap();
        prop_assert!(full.is_regular() && full.dim() == n);
        for (i, v) in full.vertices().iter().enumerate() {
            if i <= e {
                prop_assert!(f.contains(v) && &v.den() == f.d());
            } else {
                prop_assert_eq!(&v.den(), f.c());
            }
        }
        prop_assert_eq!(&d_of(&f), f.d());
    }

    #[test]
    fn space_triple_is_admissible(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_space(&mut rng, n);
        let inv = classify_space(&f);
        prop_assert!(inv.validate(n).is_ok(), "{} in R^{}", inv, n);
    }

    #[test]
    fn space_equivalence_matches_the_triple(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_space(&mut rng, n);
        // Half the time compare against a moved copy, otherwise a fresh space.
        let g = if rng.gen_bool(0.5) {
            f.image(&random_witness(&mut rng, n)).unwrap()
        } else {
            random_space(&mut rng, n)
        };
        let same = classify_space(&f) == classify_space(&g);
        match space_equiv(&f, &g).unwrap() {
            Some(gamma) => {
                prop_assert!(same);
                prop_assert_eq!(f.image(&gamma).unwrap(), g);
            }
            None => prop_assert!(!same),
        }
    }

    #[test]
    fn special_denominators_need_only_dimension(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_space(&mut rng, n);
        let g = random_space(&mut rng, n);
        let special = [1, 2, 3, 4, 6].iter().any(|&d| f.d() == &Int::from(d));
        if special && f.d() == g.d() && f.dim() == g.dim() {
            prop_assert!(space_equiv(&f, &g).unwrap().is_some());
        }
        if f.dim() + 1 != n {
            prop_assert!(f.c().is_one());
        }
    }

    #[test]
    fn symbolic_witnesses_are_exact(seed in any::<u64>(), n in 1usize..=3, k in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = SymBasis::new(["a", "b"].into_iter().take(k)).unwrap();
        let x = random_sym_point(&mut rng, &basis, n);
        let y = random_witness(&mut rng, n).apply(&x).unwrap();
        let g = witness(&x, &y).unwrap().expect("points in one orbit");
        prop_assert_eq!(g.apply(&x).unwrap(), y);

        let z = random_sym_point(&mut rng, &basis, n);
        let verdict = orbit_equiv(&x, &z).unwrap();
        match witness(&x, &z).unwrap() {
            Some(g) => {
                prop_assert!(verdict);
                prop_assert_eq!(g.apply(&x).unwrap(), z);
            }
            None => prop_assert!(!verdict),
        }
    }

    #[test]
    fn orbit_samples_stay_in_the_orbit(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_rat_point(&mut rng, n, 6, 6);
        let budget = SearchBudget::new(4, rat(3, 1), 20_000).unwrap();
        let sample = bfs_orbit(&x, &budget).unwrap();
        let sx = SymPoint::from_rat(&x);
        for p in sample.points.iter().take(40) {
            prop_assert!(orbit_equiv(&sx, &SymPoint::from_rat(p)).unwrap());
        }
    }
}

#[test]
fn rank_n_orbit_counts_match_distinct_invariants() {
    for d in 1..=50i64 {
        let points: Vec<SymPoint> = (0..d)
            .filter(|p| p.gcd(&d) == 1)
            .map(|p| SymPoint::from_rat(&RatPoint::new(vec![rat(p, d)])))
            .collect();
        let distinct: HashSet<_> = points.iter().map(|x| invariant_of(x).unwrap()).collect();
        let (count, reps) = count_orbits(&group_of(&points[0]), 1).unwrap();
        assert_eq!(count, distinct.len(), "d = {d}");
        assert_eq!(reps.len(), count);
        for x in &points {
            let (_, c) = n1_classify(&x.coords()[0][0]);
            assert_eq!(invariant_of(x).unwrap().c, c, "{x}");
        }
    }

    let basis = SymBasis::new(["a"]).unwrap();
    for d in 1..=20i64 {
        let points: Vec<SymPoint> = (0..d)
            .filter(|p| p.gcd(&d) == 1)
            .map(|p| {
                SymPoint::new(basis.clone(), vec![vec![rat(0, 1), rat(1, 1)], vec![rat(p, d), rat(0, 1)]])
                    .unwrap()
            })
            .collect();
        let distinct: HashSet<_> = points.iter().map(|x| invariant_of(x).unwrap()).collect();
        let g = GroupInvariant::generated_by(basis.clone(), &[vec![rat(1, d), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]])
            .unwrap();
        let (count, reps) = count_orbits(&g, 2).unwrap();
        assert_eq!(count, distinct.len(), "d = {d}");
        for r in &reps {
            assert_eq!(group_of(r), g);
        }
    }
}

#[test]
fn regularity_agrees_with_explicit_completion_search() {
    // For small segments in R^1, regular iff some integer row completes the
    // 2x2 homogeneous matrix, i.e. iff its determinant is ±1.
    for q1 in 1..=6i64 {
        for p1 in 0..q1 {
            for q2 in 1..=6i64 {
                for p2 in 0..q2 {
                    if p1.gcd(&q1) != 1 || p2.gcd(&q2) != 1 || p1 * q2 == p2 * q1 {
                        continue;
                    }
                    let s = RatSimplex::new(vec![
                        RatPoint::new(vec![rat(p1, q1)]),
                        RatPoint::new(vec![rat(p2, q2)]),
                    ])
                    .unwrap();
                    assert_eq!(s.is_regular(), (p1 * q2 - p2 * q1).abs() == 1);
                }
            }
        }
    }
}
