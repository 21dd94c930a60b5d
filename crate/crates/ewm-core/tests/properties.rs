//! Randomized properties of the exact arithmetic layers.

use ewm_core::cones::{feasible, CoefficientMode, FeasibilityProblem, Relation, Test};
use ewm_core::ewm::{membership, GeneratorEntry, GeneratorTable, PCharSpace};
use ewm_core::linalg::{qf, qi, unit, Q};
use ewm_core::oracle::{branch, freudenthal, BranchingSetup};
use ewm_core::rootlat::{RootSystem, Weight};
use proptest::prelude::*;

const SYSTEMS: &[&str] = &["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "D4", "A1xA1", "C2xC1", "F4"];
const SMALL: &[&str] = &["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "A1xA2"];

fn system(names: &'static [&'static str]) -> impl Strategy<Value = RootSystem> {
    prop::sample::select(names).prop_map(|s| RootSystem::parse(s).unwrap())
}

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| qf(n, d))
}

fn with_rational_coords() -> impl Strategy<Value = (RootSystem, Vec<Q>)> {
    system(SYSTEMS).prop_flat_map(|r| {
        let n = r.rank();
        (Just(r), prop::collection::vec(rational(), n))
    })
}

fn with_dominant(max: i64) -> impl Strategy<Value = (RootSystem, Vec<i64>)> {
    system(SMALL).prop_flat_map(move |r| {
        let n = r.rank();
        (Just(r), prop::collection::vec(0..=max, n))
    })
}

/// Fundamental coordinates of `s_i(mu)`.
fn reflect(r: &RootSystem, mu: &[i64], i: usize) -> Vec<i64> {
    let alpha = r.root_to_fundamental(&unit(r.rank(), i));
    mu.iter()
        .zip(&alpha)
        .map(|(&m, a)| m - mu[i] * a.to_integer().try_into().unwrap_or(0i64))
        .collect()
}

fn g2_table() -> GeneratorTable {
    let e = |id: &str, w: &[i64], c: i64| GeneratorEntry {
        id: id.to_string(),
        omega: Weight::fundamental_int(w),
        chi: vec![qi(c), qi(0)],
    };
    GeneratorTable {
        rank: 2,
        space: PCharSpace::new(vec!["w1".into(), "w2".into()]).unwrap(),
        entries: vec![e("D1+", &[1, 0], 0), e("D1-", &[1, 0], -1), e("D2", &[0, 1], -1)],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_conversion_round_trips((r, f) in with_rational_coords()) {
        prop_assert_eq!(r.root_to_fundamental(&r.fundamental_to_root(&f)), f.clone());
        prop_assert_eq!(r.fundamental_to_root(&r.root_to_fundamental(&f)), f);
    }

    #[test]
    fn pairing_is_the_fundamental_coordinate((r, f) in with_rational_coords()) {
        let w = Weight::fundamental(f.clone());
        let as_root = Weight::root(r.fundamental_to_root(&f));
        for i in 0..r.rank() {
            prop_assert_eq!(r.pair(&w, i).unwrap(), f[i].clone());
            prop_assert_eq!(r.pair(&as_root, i).unwrap(), f[i].clone());
            for j in 0..r.rank() {
                let expect = qi((i == j) as i64);
                prop_assert_eq!(r.pair(&r.fundamental_weight(i), j).unwrap(), expect);
            }
        }
    }

    #[test]
    fn weyl_dimension_is_the_character_total((r, l) in with_dominant(2)) {
        let w = Weight::fundamental_int(&l);
        let c = freudenthal(&r, &w).unwrap();
        prop_assert_eq!(r.weyl_dimension(&w).unwrap(), c.total().into());
    }

    #[test]
    fn characters_are_weyl_invariant((r, l) in with_dominant(2)) {
        let c = freudenthal(&r, &Weight::fundamental_int(&l)).unwrap();
        for (mu, &m) in &c.entries {
            for i in 0..r.rank() {
                prop_assert_eq!(c.multiplicity(&reflect(&r, mu, i)), m);
            }
        }
    }

    #[test]
    fn branching_preserves_dimension(a in 0i64..=3, b in 0i64..=2) {
        let g = RootSystem::parse("G2").unwrap();
        let h = RootSystem::parse("A2").unwrap();
        let s = BranchingSetup::new(
            g.clone(),
            h.clone(),
            vec!["w1".into(), "w2".into()],
            vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)]],
        )
        .unwrap();
        let lambda = Weight::fundamental_int(&[a, b]);
        let mut total = num_bigint::BigInt::from(0);
        for (mu, m) in branch(&s, &lambda).unwrap() {
            total += h.weyl_dimension(&Weight::fundamental(mu)).unwrap() * m;
        }
        prop_assert_eq!(total, g.weyl_dimension(&lambda).unwrap());
    }

    #[test]
    fn feasibility_ignores_positive_scaling(
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=4),
        k in 1i64..=5,
        strict in any::<bool>(),
    ) {
        let rows: Vec<Vec<Q>> = gens.iter().map(|g| g.iter().map(|&x| qi(x)).collect()).collect();
        let relation = if strict { Relation::Positive } else { Relation::NonNeg };
        let tests: Vec<Test> = (0..3).map(|i| Test { functional: unit(3, i), relation }).collect();
        let problem = |rows: Vec<Vec<Q>>| FeasibilityProblem {
            dim: 3,
            generators: rows,
            tests: tests.clone(),
            coefficient_mode: if strict { CoefficientMode::NonNeg } else { CoefficientMode::StrictlyPositive },
        };
        let mut scaled = rows.clone();
        for x in &mut scaled[0] {
            *x *= qi(k);
        }
        prop_assert_eq!(feasible(&problem(rows)).is_some(), feasible(&problem(scaled)).is_some());
    }

    #[test]
    fn membership_inverts_combination(a in prop::collection::vec(0u64..=5, 3)) {
        let t = g2_table();
        let (lambda, chi) = t.combine(&a);
        prop_assert_eq!(membership(&t, &lambda, &chi), Some(a));
    }
}
