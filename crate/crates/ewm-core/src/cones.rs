//! Exact cone feasibility, membership in non-negative spans, and extreme
//! rays of a cone cut by linear subspaces.

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::linalg::{is_zero_vec, primitive, qi, rank, same_direction, vec_mat, zeros, Q};
use crate::lp::{minimize, Constraint, LpOutcome, Rel};

/// Relation a test functional must satisfy on the combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `f(v) >= 0`
    NonNeg,
    /// `f(v) > 0`
    Positive,
}

/// Allowed sign of the combination coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientMode {
    /// `c_i >= 0`
    NonNeg,
    /// `c_i > 0`
    StrictlyPositive,
}

/// One test `f(sum c_i v_i)  rel  0`.
#[derive(Clone, Debug)]
pub struct Test {
    /// The functional, as a coefficient vector on the ambient coordinates.
    pub functional: Vec<Q>,
    /// Required relation.
    pub relation: Relation,
}

/// Does some admissible combination of `generators` pass every test?
#[derive(Clone, Debug)]
pub struct FeasibilityProblem {
    /// Ambient dimension.
    pub dim: usize,
    /// Vectors `v_i`.
    pub generators: Vec<Vec<Q>>,
    /// Tests on the combination.
    pub tests: Vec<Test>,
    /// Sign constraint on the coefficients.
    pub coefficient_mode: CoefficientMode,
}

/// Decides a feasibility problem exactly.
///
/// All constraints are homogeneous, so strict inequalities may be replaced
/// by a margin of 1 (and strictly positive coefficients by `c_i >= 1`).
/// Among the admissible points the one with the least coefficient sum is
/// chosen and rescaled to a primitive integer vector; it is returned as the
/// witness.
pub fn feasible(p: &FeasibilityProblem) -> Option<Vec<Q>> {
    let n = p.generators.len();
    let mut cons = Vec::new();
    for t in &p.tests {
        let coeffs: Vec<Q> = p
            .generators
            .iter()
            .map(|v| crate::linalg::dot(&t.functional, v))
            .collect();
        let rhs = match t.relation {
            Relation::NonNeg => Q::zero(),
            Relation::Positive => Q::one(),
        };
        cons.push(Constraint::new(coeffs, Rel::Ge, rhs));
    }
    if p.coefficient_mode == CoefficientMode::StrictlyPositive {
        for i in 0..n {
            cons.push(Constraint::new(crate::linalg::unit(n, i), Rel::Ge, Q::one()));
        }
    }
    let objective = alloc::vec![Q::one(); n];
    match minimize(n, &objective, &cons) {
        LpOutcome::Optimal { x, .. } => Some(primitive(&x)),
        _ => None,
    }
}

/// Coefficients `c >= 0` with `sum c_i rays_i = v`, if any.
pub fn nonneg_span_coefficients(v: &[Q], rays: &[Vec<Q>]) -> Option<Vec<Q>> {
    let n = rays.len();
    let cons: Vec<Constraint> = (0..v.len())
        .map(|k| {
            let coeffs = rays.iter().map(|r| r[k].clone()).collect();
            Constraint::new(coeffs, Rel::Eq, v[k].clone())
        })
        .collect();
    match minimize(n, &zeros(n), &cons) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Whether `v` lies in the non-negative rational span of `rays`.
pub fn in_nonneg_span(v: &[Q], rays: &[Vec<Q>]) -> bool {
    if rays.is_empty() {
        return is_zero_vec(v);
    }
    nonneg_span_coefficients(v, rays).is_some()
}

/// Extreme rays of `{c >= 0 : k c = 0}` where `k` has `m` columns, as
/// primitive integer vectors sorted lexicographically.
///
/// Double description: start from the coordinate rays of the orthant and cut
/// by one hyperplane at a time, keeping only combinations whose support is
/// minimal for the hyperplanes processed so far.
pub fn orthant_kernel_rays(k: &[Vec<Q>], m: usize) -> Vec<Vec<Q>> {
    let mut rays: Vec<Vec<Q>> = (0..m).map(|i| crate::linalg::unit(m, i)).collect();
    for (step, h) in k.iter().enumerate() {
        let val = |r: &Vec<Q>| crate::linalg::dot(h, r);
        let mut next: Vec<Vec<Q>> = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in &rays {
            let v = val(r);
            if v.is_zero() {
                next.push(r.clone());
            } else if v > Q::zero() {
                pos.push((r, v));
            } else {
                neg.push((r, v));
            }
        }
        for (p, hp) in &pos {
            for (q, hq) in &neg {
                let mut c = crate::linalg::scale(hp, q);
                crate::linalg::axpy(&mut c, &-hq.clone(), p);
                next.push(primitive(&c));
            }
        }
        let done = &k[..=step];
        let mut kept: Vec<Vec<Q>> = Vec::new();
        for r in next {
            let r = primitive(&r);
            if kept.contains(&r) {
                continue;
            }
            let support: Vec<usize> = (0..m).filter(|&i| !r[i].is_zero()).collect();
            let sub: Vec<Vec<Q>> = done
                .iter()
                .map(|row| support.iter().map(|&i| row[i].clone()).collect())
                .collect();
            if support.len() - rank(&sub, support.len()) == 1 {
                kept.push(r);
            }
        }
        rays = kept;
    }
    rays.sort();
    rays
}

/// Extreme rays of `cone(rays)` intersected with the kernels of the given
/// functionals, as primitive integer vectors in the ambient coordinates.
/// The input cone is assumed pointed.
pub fn cone_subspace_intersection(rays: &[Vec<Q>], kernels: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let k: Vec<Vec<Q>> = kernels
        .iter()
        .map(|f| rays.iter().map(|r| crate::linalg::dot(f, r)).collect())
        .collect();
    map_param_rays(&orthant_kernel_rays(&k, rays.len()), rays, dim)
}

/// Images of parameter rays under `c -> sum c_i rays_i`, reduced to the
/// extreme ones and made primitive.
pub fn map_param_rays(params: &[Vec<Q>], rays: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut images: Vec<Vec<Q>> = Vec::new();
    for c in params {
        let w = vec_mat(c, rays, dim);
        if is_zero_vec(&w) || images.iter().any(|x| same_direction(&w, x)) {
            continue;
        }
        images.push(w);
    }
    let mut out: Vec<Vec<Q>> = Vec::new();
    for (i, w) in images.iter().enumerate() {
        let others: Vec<Vec<Q>> = images
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.clone())
            .collect();
        if !in_nonneg_span(w, &others) {
            out.push(primitive(w));
        }
    }
    out.sort();
    out
}

/// Brute-force check used in tests: is `c` admissible for `p`?
pub fn check_witness(p: &FeasibilityProblem, c: &[Q]) -> bool {
    if c.len() != p.generators.len() {
        return false;
    }
    let ok_coeff = c.iter().all(|x| match p.coefficient_mode {
        CoefficientMode::NonNeg => *x >= Q::zero(),
        CoefficientMode::StrictlyPositive => *x > Q::zero(),
    });
    let v = vec_mat(c, &p.generators, p.dim);
    ok_coeff
        && p.tests.iter().all(|t| {
            let x = crate::linalg::dot(&t.functional, &v);
            match t.relation {
                Relation::NonNeg => x >= Q::zero(),
                Relation::Positive => x > Q::zero(),
            }
        })
}

/// Coordinate functionals on `dim` coordinates, each with the same relation.
pub fn coordinate_tests(dim: usize, relation: Relation) -> Vec<Test> {
    (0..dim)
        .map(|i| Test { functional: crate::linalg::unit(dim, i), relation })
        .collect()
}

/// Integer grid search over coefficients in `0..=max` (or `1..=max` in strict
/// mode); an oracle for small problems.
pub fn grid_search(p: &FeasibilityProblem, max: i64) -> Option<Vec<Q>> {
    let n = p.generators.len();
    let lo = match p.coefficient_mode {
        CoefficientMode::NonNeg => 0,
        CoefficientMode::StrictlyPositive => 1,
    };
    if lo > max {
        return None;
    }
    let mut c = alloc::vec![lo; n];
    loop {
        let cq: Vec<Q> = c.iter().map(|&x| qi(x)).collect();
        if check_witness(p, &cq) {
            return Some(cq);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if c[i] < max {
                c[i] += 1;
                break;
            }
            c[i] = lo;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qf, qi};
    use alloc::vec;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| qi(a)).collect()
    }

    #[test]
    fn spin_distinguished_pair() {
        let p = FeasibilityProblem {
            dim: 3,
            generators: vec![v(&[0, 1, -1]), v(&[0, -1, 1])],
            tests: coordinate_tests(3, Relation::NonNeg),
            coefficient_mode: CoefficientMode::StrictlyPositive,
        };
        assert_eq!(feasible(&p), Some(v(&[1, 1])));
    }

    #[test]
    fn spin_not_parabolic() {
        let p = FeasibilityProblem {
            dim: 3,
            generators: vec![v(&[1, -1, 0]), v(&[-1, 1, 1]), v(&[0, -1, 1])],
            tests: coordinate_tests(3, Relation::Positive),
            coefficient_mode: CoefficientMode::NonNeg,
        };
        assert_eq!(feasible(&p), None);
        assert_eq!(grid_search(&p, 6), None);
    }

    #[test]
    fn empty_tests() {
        let p = FeasibilityProblem {
            dim: 2,
            generators: vec![v(&[1, 0]), v(&[0, -1])],
            tests: vec![],
            coefficient_mode: CoefficientMode::NonNeg,
        };
        assert_eq!(feasible(&p), Some(v(&[0, 0])));
        let strict = FeasibilityProblem { coefficient_mode: CoefficientMode::StrictlyPositive, ..p };
        assert_eq!(feasible(&strict), Some(v(&[1, 1])));
    }

    #[test]
    fn half_root_membership() {
        let half = vec![qf(1, 2), qi(1), qf(1, 2)];
        let s = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        assert!(in_nonneg_span(&half, &s));
        assert!(!in_nonneg_span(&half, &s[..2]));
        assert!(in_nonneg_span(&v(&[0, 0, 0]), &[]));
    }

    #[test]
    fn kernel_intersection() {
        // G2/SL(3): Sigma = {a1, a1 + a2}, kernels rho(D1+) and rho(D2).
        let rays = vec![v(&[1, 0]), v(&[1, 1])];
        let k = vec![v(&[1, 0]), v(&[-1, 1])];
        assert!(orthant_kernel_rays(&k, 2).is_empty());
        // no kernels: the rays themselves
        assert_eq!(cone_subspace_intersection(&rays, &[], 2), rays);
        // non-extreme input generator is dropped
        let r3 = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        assert_eq!(cone_subspace_intersection(&r3, &[], 2), vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn spin_quotient_cone() {
        let k = vec![v(&[0, 1, -1]), v(&[0, -1, 1])];
        assert_eq!(orthant_kernel_rays(&k, 3), vec![v(&[0, 1, 1]), v(&[1, 0, 0])]);
    }
}
