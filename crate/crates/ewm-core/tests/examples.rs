//! Worked examples built in code and run through the whole pipeline.

use std::collections::{BTreeMap, BTreeSet};

use ewm_core::cones::{cone_subspace_intersection, in_nonneg_span};
use ewm_core::ewm::{
    boundary_chi, membership, omega_of_color, rank_identities, solve_generators, IdentityCheck, PCharSpace,
    RestrictionContext,
};
use ewm_core::linalg::{qf, qi, same_direction, Q};
use ewm_core::morph::{classify_subset, minimal_parabolic_subsets, quotient_spherical_roots};
use ewm_core::rootlat::{RootSystem, Weight};
use ewm_core::sphdata::{validate, Color, SphericalDatum};
use ewm_core::Error;

fn v(x: &[i64]) -> Vec<Q> {
    x.iter().map(|&a| qi(a)).collect()
}

fn labels(l: &[&str]) -> PCharSpace {
    PCharSpace::new(l.iter().map(|s| s.to_string()).collect()).unwrap()
}

fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n).map(|i| (0..n).map(|j| qi((i == j) as i64)).collect()).collect()
}

/// Spin(8)/P, the spin example with n = 3.
fn spin8() -> SphericalDatum {
    SphericalDatum {
        ambient: RootSystem::parse("D4").unwrap(),
        sp: BTreeSet::new(),
        sigma: vec![Weight::root_int(&[1, 0, 0, 0]), Weight::root_int(&[0, 1, 1, 0]), Weight::root_int(&[0, 1, 0, 1])],
        xi_basis: None,
        colors: vec![
            Color::new("D1+", &[0], v(&[1, -1, 0])),
            Color::new("D1-", &[0], v(&[1, 0, -1])),
            Color::new("D2", &[1], v(&[-1, 1, 1])),
            Color::new("D3", &[2], v(&[0, 1, -1])),
            Color::new("D4", &[3], v(&[0, -1, 1])),
        ],
        wonderful: true,
    }
}

fn spin8_ctx() -> RestrictionContext {
    RestrictionContext {
        space: labels(&["w0", "w1", "w2", "w3"]),
        restrict: identity(4),
        boundary_root_of: BTreeMap::from([("D1-".to_string(), 0), ("D4".to_string(), 3)]),
    }
}

/// G2/P1 with P1 a parabolic subgroup of SL(3).
fn g2() -> SphericalDatum {
    SphericalDatum {
        ambient: RootSystem::parse("G2").unwrap(),
        sp: BTreeSet::new(),
        sigma: vec![Weight::root_int(&[1, 0]), Weight::root_int(&[1, 1])],
        xi_basis: None,
        colors: vec![
            Color::new("D1+", &[0], v(&[1, 0])),
            Color::new("D1-", &[0], v(&[1, -1])),
            Color::new("D2", &[1], v(&[-1, 1])),
        ],
        wonderful: true,
    }
}

fn g2_ctx() -> RestrictionContext {
    RestrictionContext {
        space: labels(&["w1", "w2"]),
        restrict: vec![v(&[1, 1]), v(&[0, 1])],
        boundary_root_of: BTreeMap::from([("D1-".to_string(), 0)]),
    }
}

#[test]
fn root_system_conventions() {
    let g2 = RootSystem::parse("G2").unwrap();
    assert_eq!(g2.cartan(0, 1), -3);
    assert_eq!(g2.cartan(1, 0), -1);
    assert_eq!(RootSystem::parse("A1").unwrap().cartan_matrix(), &[vec![2]]);
    let c = RootSystem::parse("C2xC1").unwrap();
    assert_eq!(c.cartan_matrix(), &[vec![2, -2, 0], vec![-1, 2, 0], vec![0, 0, 2]]);

    assert_eq!(g2.pair(&Weight::root_int(&[0, 1]), 0).unwrap(), qi(-3));
    let a2 = RootSystem::parse("A2").unwrap();
    assert_eq!(a2.pair(&Weight::root_int(&[1, 1]), 0).unwrap(), qi(1));
    assert_eq!(a2.pair(&Weight::fundamental_int(&[1, 0]), 0).unwrap(), qi(1));

    let a1 = RootSystem::parse("A1").unwrap();
    let w = |k| Weight::fundamental_int(&[k]);
    assert!(a1.dominance_leq(&w(1), &w(3)).unwrap());
    assert!(!a1.dominance_leq(&w(1), &w(2)).unwrap());
    // 2 omega_1 of G2, by hand: omega_1 = 2 alpha_1 + alpha_2.
    assert_eq!(g2.to_root(&Weight::fundamental_int(&[2, 0])).unwrap(), v(&[4, 2]));
    assert!(g2.dominance_leq(&Weight::fundamental_int(&[1, 0]), &Weight::fundamental_int(&[3, 0])).unwrap());

    assert_eq!(a1.weyl_dimension(&w(2)).unwrap(), 3.into());
    assert_eq!(g2.weyl_dimension(&Weight::fundamental_int(&[1, 0])).unwrap(), 7.into());
    assert_eq!(a2.weyl_dimension(&Weight::fundamental_int(&[1, 1])).unwrap(), 8.into());
    assert!(a2.weyl_dimension(&Weight::fundamental_int(&[-1, 0])).is_err());
}

#[test]
fn spin8_datum() {
    let d = spin8();
    assert!(validate(&d).is_empty(), "{:?}", validate(&d));
    assert_eq!(d.colors_moved_by(0), vec!["D1+", "D1-"]);
    assert_eq!(d.cartan_pairing("D2", 0).unwrap(), qi(-1));
    assert_eq!(d.cartan_pairing("D4", 2).unwrap(), qi(1));

    let mut broken = spin8();
    broken.colors.remove(1);
    assert!(validate(&broken).iter().any(|x| x.0.contains("α1")));
}

#[test]
fn spin8_subsets() {
    let d = spin8();
    let v1 = classify_subset(&d, &["D3", "D4"]).unwrap();
    assert!(v1.distinguished);
    assert!(!classify_subset(&d, &["D1+", "D2", "D4"]).unwrap().parabolic);

    let q = quotient_spherical_roots(&d, &["D3", "D4"]).unwrap();
    let sigma = d.sigma_root_coords();
    let sum: Vec<Q> = sigma[1].iter().zip(&sigma[2]).map(|(a, b)| a + b).collect();
    assert!(q.iter().any(|w| same_direction(&w.coords, &sum)), "{q:?}");
    assert!(q.iter().all(|w| in_nonneg_span(&w.coords, &sigma)));

    let all = quotient_spherical_roots(&d, &[]).unwrap();
    let got: BTreeSet<Vec<Q>> = all.into_iter().map(|w| w.coords).collect();
    assert_eq!(got, sigma.into_iter().collect());
}

#[test]
fn spin8_generators() {
    let d = spin8();
    let dp = ["D1+", "D2", "D3"];
    let ctx = spin8_ctx();
    assert_eq!(omega_of_color(&d, "D2").unwrap().coords, v(&[0, 1, 0, 0]));
    let known = boundary_chi(&d, &dp, &ctx).unwrap();
    assert_eq!(known["D1-"], v(&[-1, 0, 0, 0]));
    assert_eq!(known["D4"], v(&[0, 0, 0, -1]));

    let t = solve_generators(&d, &dp, &ctx).unwrap();
    let expect = [
        ("D1+", [1, 0, 0, 0], [1, 0, 0, 0]),
        ("D1-", [1, 0, 0, 0], [-1, 0, 0, 0]),
        ("D2", [0, 1, 0, 0], [0, 0, 0, 0]),
        ("D3", [0, 0, 1, 0], [1, 0, 0, -1]),
        ("D4", [0, 0, 0, 1], [0, 0, 0, -1]),
    ];
    for (id, w, c) in expect {
        let e = t.get(id).unwrap();
        assert_eq!(e.omega.coords, v(&w), "{id}");
        assert_eq!(e.chi, v(&c), "{id}");
    }
    assert!(t.independent());

    let r = rank_identities(&t, &d, 2, &dp).unwrap();
    assert_eq!(r.character_rank, IdentityCheck::Pass);
    assert_eq!(r.quotient_rank, IdentityCheck::Pass);
    let all: Vec<&str> = d.colors.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(rank_identities(&t, &d, 2, &all).unwrap().quotient_rank, IdentityCheck::NotApplicable);
}

#[test]
fn g2_generators_and_membership() {
    let d = g2();
    assert_eq!(minimal_parabolic_subsets(&d, true), vec![vec!["D1+".to_string(), "D2".to_string()]]);
    assert!(quotient_spherical_roots(&d, &["D1+", "D2"]).unwrap().is_empty());

    let t = solve_generators(&d, &["D1+", "D2"], &g2_ctx()).unwrap();
    assert_eq!(t.get("D1+").unwrap().chi, v(&[0, 0]));
    assert_eq!(t.get("D1-").unwrap().chi, v(&[-1, 0]));
    assert_eq!(t.get("D2").unwrap().chi, v(&[-1, 0]));

    assert_eq!(membership(&t, &v(&[1, 1]), &v(&[-2, 0])), Some(vec![0, 1, 1]));
    assert_eq!(membership(&t, &v(&[0, 0]), &v(&[0, 0])), Some(vec![0, 0, 0]));
    assert_eq!(membership(&t, &v(&[1, 0]), &v(&[-3, 0])), None);
    assert_eq!(membership(&t, &v(&[1, 0]), &[qf(-1, 2), qi(0)]), None);

    let r = rank_identities(&t, &d, 1, &["D1+", "D2"]).unwrap();
    assert!(r.ok(), "{r:?}");
}

#[test]
fn g2_cone_intersection_is_trivial() {
    let d = g2();
    let rays = vec![v(&[1, 0]), v(&[0, 1])];
    let kernels = vec![d.color("D1+").unwrap().pairing.clone(), d.color("D2").unwrap().pairing.clone()];
    assert!(cone_subspace_intersection(&rays, &kernels, 2).is_empty());
    assert_eq!(cone_subspace_intersection(&rays, &[], 2).len(), 2);
}

#[test]
fn bad_inputs_are_reported() {
    let d = g2();
    // D1+ is not moved by exactly the root given for it.
    let mut ctx = g2_ctx();
    ctx.boundary_root_of.insert("D1-".into(), 1);
    assert!(matches!(solve_generators(&d, &["D1+", "D2"], &ctx), Err(Error::Boundary(..))));

    // A single unknown cannot absorb two independent equations.
    assert!(solve_generators(&d, &["D2"], &RestrictionContext {
        boundary_root_of: BTreeMap::from([("D1+".to_string(), 0), ("D1-".to_string(), 0)]),
        ..g2_ctx()
    })
    .is_err());

    // A wrong pairing breaks the first-component identity.
    let mut bad = g2();
    bad.colors[2].pairing = v(&[-1, 2]);
    assert!(matches!(solve_generators(&bad, &["D1+", "D2"], &g2_ctx()), Err(Error::FirstComponent(1))));

    assert!(matches!(classify_subset(&d, &["D9"]), Err(Error::UnknownColor(_))));
}
