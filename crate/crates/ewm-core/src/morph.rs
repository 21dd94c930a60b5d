//! Distinguished and parabolic subsets of colors, quotient spherical roots,
//! and combinatorial checkers for morphisms and parabolic inclusions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cones::{
    coordinate_tests, feasible, in_nonneg_span, map_param_rays, orthant_kernel_rays,
    CoefficientMode, FeasibilityProblem, Relation,
};
use crate::linalg::{dot, primitive, rank, solve_vec, transpose, vec_mat, Solution, Q};
use crate::rootlat::Weight;
use crate::sphdata::SphericalDatum;
use crate::Error;

/// Verdict on a subset of colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetVerdict {
    /// Color ids, in the order queried.
    pub subset: Vec<String>,
    /// A strictly positive combination of `rho(D)` is non-negative on `Sigma`.
    pub distinguished: bool,
    /// A non-negative combination of `rho(D)` is strictly positive on `Sigma`.
    pub parabolic: bool,
    /// Least-sum witness for `distinguished`.
    pub distinguished_witness: Option<Vec<Q>>,
    /// Least-sum witness for `parabolic`.
    pub parabolic_witness: Option<Vec<Q>>,
}

impl SubsetVerdict {
    /// The parabolic witness if any, otherwise the distinguished one.
    pub fn witness(&self) -> Option<&Vec<Q>> {
        self.parabolic_witness.as_ref().or(self.distinguished_witness.as_ref())
    }
}

fn rows_of(d: &SphericalDatum, ids: &[&str]) -> Result<Vec<Vec<Q>>, Error> {
    ids.iter().map(|id| Ok(d.color(id)?.pairing.clone())).collect()
}

fn is_parabolic_rows(rows: Vec<Vec<Q>>, dim: usize) -> Option<Vec<Q>> {
    feasible(&FeasibilityProblem {
        dim,
        generators: rows,
        tests: coordinate_tests(dim, Relation::Positive),
        coefficient_mode: CoefficientMode::NonNeg,
    })
}

/// Classifies `ids` as distinguished and/or parabolic.
pub fn classify_subset(d: &SphericalDatum, ids: &[&str]) -> Result<SubsetVerdict, Error> {
    let rows = rows_of(d, ids)?;
    let dim = d.sigma.len();
    let dist = feasible(&FeasibilityProblem {
        dim,
        generators: rows.clone(),
        tests: coordinate_tests(dim, Relation::NonNeg),
        coefficient_mode: CoefficientMode::StrictlyPositive,
    });
    let para = is_parabolic_rows(rows, dim);
    Ok(SubsetVerdict {
        subset: ids.iter().map(|s| String::from(*s)).collect(),
        distinguished: dist.is_some(),
        parabolic: para.is_some(),
        distinguished_witness: dist,
        parabolic_witness: para,
    })
}

/// Whether `ids` is a parabolic subset.
pub fn is_parabolic(d: &SphericalDatum, ids: &[&str]) -> Result<bool, Error> {
    Ok(is_parabolic_rows(rows_of(d, ids)?, d.sigma.len()).is_some())
}

/// Colors moved by two or more simple roots. On a partial flag variety every
/// color is moved by at most one root, so these colors must lie in any
/// parabolic subset whose quotient is a flag variety.
pub fn mandatory_colors(d: &SphericalDatum) -> Vec<String> {
    d.colors
        .iter()
        .filter(|c| c.moved_by.len() >= 2)
        .map(|c| c.id.clone())
        .collect()
}

/// All inclusion-minimal parabolic subsets, enumerated by increasing size.
///
/// With `mandatory_filter` set, only subsets containing every color moved by
/// two or more roots are considered, and minimality is relative to that
/// family. Subsets are returned in datum color order, sorted by size and then
/// lexicographically by color index.
pub fn minimal_parabolic_subsets(d: &SphericalDatum, mandatory_filter: bool) -> Vec<Vec<String>> {
    let n = d.colors.len();
    let mandatory: BTreeSet<usize> = if mandatory_filter {
        (0..n).filter(|&i| d.colors[i].moved_by.len() >= 2).collect()
    } else {
        BTreeSet::new()
    };
    let optional: Vec<usize> = (0..n).filter(|i| !mandatory.contains(i)).collect();
    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    for size in 0..=optional.len() {
        for combo in combinations(optional.len(), size) {
            let set: BTreeSet<usize> = mandatory
                .iter()
                .copied()
                .chain(combo.iter().map(|&k| optional[k]))
                .collect();
            if found.iter().any(|f| f.is_subset(&set)) {
                continue;
            }
            let rows: Vec<Vec<Q>> = set.iter().map(|&i| d.colors[i].pairing.clone()).collect();
            if is_parabolic_rows(rows, d.sigma.len()).is_some() {
                found.push(set);
            }
        }
    }
    found
        .into_iter()
        .map(|s| s.into_iter().map(|i| d.colors[i].id.clone()).collect())
        .collect()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Extreme rays of `cone(Sigma) ∩ ⋂_{D ∈ Δ'} ker rho(D)`, each rescaled to be
/// primitive in `Xi`, in the simple-root basis.
pub fn quotient_spherical_roots(d: &SphericalDatum, ids: &[&str]) -> Result<Vec<Weight>, Error> {
    let v = classify_subset(d, ids)?;
    if !v.distinguished {
        return Err(Error::Precondition(format!("{:?} is not distinguished", ids)));
    }
    let k = rows_of(d, ids)?;
    let params = orthant_kernel_rays(&k, d.sigma.len());
    let n = d.ambient.rank();
    let rays = map_param_rays(&params, &d.sigma_root_coords(), n);
    let xi = d.xi_root_coords();
    let mut out = Vec::new();
    for r in rays {
        let x = d
            .xi_coords(&r)
            .ok_or_else(|| Error::Precondition("quotient ray outside Xi".into()))?;
        out.push(Weight::root(vec_mat(&primitive(&x), &xi, n)));
    }
    Ok(out)
}

/// Outcome of [`morphism_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// `Span_Q Sigma(Y) = Xi(Y)_Q`.
    pub span_ok: bool,
    /// The cone equality for spherical roots.
    pub cone_ok: bool,
    /// Pairing restriction and moving roots agree along `psi`.
    pub colors_ok: bool,
    /// Explanations of failures.
    pub notes: Vec<String>,
}

impl MorphismReport {
    /// All three conditions hold.
    pub fn holds(&self) -> bool {
        self.span_ok && self.cone_ok && self.colors_ok
    }
}

/// Checks the combinatorial conditions for a morphism `X -> Y` given by the
/// distinguished subset `Δ'` and a bijection `psi: Δ(Y) -> Δ(X) \ Δ'`.
pub fn morphism_report(
    dx: &SphericalDatum,
    delta_prime: &[&str],
    dy: &SphericalDatum,
    psi: &BTreeMap<String, String>,
) -> Result<MorphismReport, Error> {
    let dp: BTreeSet<&str> = delta_prime.iter().copied().collect();
    for id in &dp {
        dx.color(id)?;
    }
    let rest: BTreeSet<&str> = dx
        .colors
        .iter()
        .map(|c| c.id.as_str())
        .filter(|id| !dp.contains(id))
        .collect();
    let ys: BTreeSet<&str> = dy.colors.iter().map(|c| c.id.as_str()).collect();
    let keys: BTreeSet<&str> = psi.keys().map(String::as_str).collect();
    let vals: BTreeSet<&str> = psi.values().map(String::as_str).collect();
    if keys != ys || vals != rest || vals.len() != psi.len() {
        return Err(Error::Precondition("psi is not a bijection Δ(Y) → Δ(X)∖Δ'".into()));
    }
    let n = dx.ambient.rank();
    let mut notes = Vec::new();

    let sy = dy.sigma_root_coords();
    let xiy = dy.xi_root_coords();
    let mut both = sy.clone();
    both.extend(xiy.iter().cloned());
    let span_ok = rank(&sy, n) == rank(&xiy, n) && rank(&both, n) == rank(&xiy, n);
    if !span_ok {
        notes.push("Σ(Y) does not span Ξ(Y) over Q".into());
    }

    let cone_ok = match quotient_spherical_roots(dx, delta_prime) {
        Err(e) => {
            notes.push(format!("{e}"));
            false
        }
        Ok(q) => {
            let qr: Vec<Vec<Q>> = q.into_iter().map(|w| w.coords).collect();
            let a = sy.iter().all(|s| in_nonneg_span(s, &qr));
            let b = qr.iter().all(|r| in_nonneg_span(r, &sy));
            if !(a && b) {
                notes.push("cone(Σ(Y)) differs from the quotient cone".into());
            }
            a && b
        }
    };

    let sx = dx.sigma_root_coords();
    let sxt = transpose(&sx, n);
    let mut colors_ok = true;
    for (ky, sig) in sy.iter().enumerate() {
        let t = match solve_vec(&sxt, sx.len(), sig) {
            Solution::Unique(mut t) => t.remove(0),
            _ => {
                notes.push(format!("spherical root #{} of Y is not a unique combination of Σ(X)", ky + 1));
                colors_ok = false;
                continue;
            }
        };
        for (yid, xid) in psi {
            let cy = dy.cartan_pairing(yid, ky)?;
            let cx = dot(&t, &dx.color(xid)?.pairing);
            if cy != cx {
                notes.push(format!("ρ_X({xid}) restricts to {cx} on σ#{}, ρ_Y({yid}) is {cy}", ky + 1));
                colors_ok = false;
            }
        }
    }
    for (yid, xid) in psi {
        if dy.color(yid)?.moved_by != dx.color(xid)?.moved_by {
            notes.push(format!("{yid} and {xid} are moved by different simple roots"));
            colors_ok = false;
        }
    }
    Ok(MorphismReport { span_ok, cone_ok, colors_ok, notes })
}

/// Boolean form of [`morphism_report`].
pub fn check_morphism_data(
    dx: &SphericalDatum,
    delta_prime: &[&str],
    dy: &SphericalDatum,
    psi: &BTreeMap<String, String>,
) -> Result<bool, Error> {
    Ok(morphism_report(dx, delta_prime, dy, psi)?.holds())
}

/// Sufficient criterion for `P` to be parabolic in `H`: both data have as
/// many spherical roots as the rank of their lattice, and no proper subset of
/// `Sigma(X)` spans a cone containing all of `Sigma(Y)`.
///
/// Cones of subsets grow with the subset, so only the maximal proper subsets
/// need to be tested. When `Sigma(X)` is empty there is no proper subset and
/// the criterion holds.
pub fn check_parabolic_in_h(dx: &SphericalDatum, dy: &SphericalDatum) -> bool {
    if dx.sigma.len() != dx.xi_rank() || dy.sigma.len() != dy.xi_rank() {
        return false;
    }
    let sx = dx.sigma_root_coords();
    let sy = dy.sigma_root_coords();
    (0..sx.len()).all(|skip| {
        let sub: Vec<Vec<Q>> = sx
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, v)| v.clone())
            .collect();
        sy.iter().any(|s| !in_nonneg_span(s, &sub))
    })
}
