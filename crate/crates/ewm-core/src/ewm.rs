//! Free generators `(omega_D, chi_D)` of the extended weight monoid of `G/P`,
//! one per color.
//!
//! Characters of colors not mapped dominantly to the flag variety `G/Q` are
//! known (`chi_D = -omega_alpha` restricted to `P`); the remaining ones are
//! the unique solution of `0 = sum_D c(D, sigma) chi_D` over all spherical
//! roots.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::{axpy, is_zero_vec, mat_vec, qi, rank, solve, solve_vec, zeros, Matrix, Solution, Q};
use crate::rootlat::{format_combination, Weight};
use crate::sphdata::SphericalDatum;
use crate::Error;

/// A labelled basis of the rational character space of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCharSpace {
    /// Unique labels such as `"w1"`, `"w0"`, `"eps"`.
    pub labels: Vec<String>,
}

impl PCharSpace {
    /// Builds a space, rejecting duplicate or malformed labels.
    pub fn new(labels: Vec<String>) -> Result<Self, Error> {
        let set: BTreeSet<&String> = labels.iter().collect();
        if set.len() != labels.len() {
            return Err(Error::Precondition("duplicate character labels".into()));
        }
        if let Some(l) = labels.iter().find(|l| !is_label(l)) {
            return Err(Error::Precondition(format!("malformed character label `{l}`")));
        }
        Ok(PCharSpace { labels })
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Parses a linear expression such as `"3*w1"`, `"w0 - w3"`,
    /// `"-1/2*eps + w2"` or `"0"`.
    pub fn parse(&self, expr: &str) -> Result<Vec<Q>, Error> {
        parse_linear(expr, &self.labels)
    }

    /// Formats a vector as a linear expression in the labels.
    pub fn format(&self, v: &[Q]) -> String {
        format_combination(v, |i| self.labels[i].clone())
    }
}

fn is_label(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_alphabetic())
        && ch.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parses an exact rational such as `"3"`, `"-1/2"`.
pub fn parse_rational(s: &str) -> Result<Q, Error> {
    let bad = || Error::Precondition(format!("malformed rational `{s}`"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Parses `sum coef*label` over the given labels.
pub fn parse_linear(expr: &str, labels: &[String]) -> Result<Vec<Q>, Error> {
    let bad = |why: &str| Error::Precondition(format!("cannot parse `{expr}`: {why}"));
    let mut out = zeros(labels.len());
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty expression"));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, c) in compact.chars().enumerate() {
        if (c == '+' || c == '-') && !(i > 0 && cur.ends_with('/')) {
            if !cur.is_empty() {
                terms.push((neg, core::mem::take(&mut cur)));
            } else if i > 0 {
                return Err(bad("dangling sign"));
            }
            neg = c == '-';
        } else {
            cur.push(c);
        }
    }
    if cur.is_empty() {
        return Err(bad("dangling sign"));
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        let (coef, label) = match t.split_once('*') {
            Some((c, l)) => (parse_rational(c)?, Some(l)),
            None => match labels.iter().any(|l| *l == t) {
                true => (qi(1), Some(t.as_str())),
                false => (parse_rational(&t).map_err(|_| bad("unknown label"))?, None),
            },
        };
        let coef = if neg { -coef } else { coef };
        match label {
            Some(l) => {
                let k = labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| bad(&format!("unknown label `{l}`")))?;
                out[k] += coef;
            }
            None if coef.is_zero() => {}
            None => return Err(bad("constant term")),
        }
    }
    Ok(out)
}

/// Restriction of ambient weights to characters of `P`, and the simple root
/// moving each boundary color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionContext {
    /// Target space.
    pub space: PCharSpace,
    /// `dim x rank` matrix: column `i` is `omega_i` restricted to `P`.
    pub restrict: Matrix,
    /// Simple root moving each color of `Δ \ Δ'`.
    pub boundary_root_of: BTreeMap<String, usize>,
}

impl RestrictionContext {
    /// Restricts a weight given in fundamental coordinates.
    pub fn restrict_fundamental(&self, f: &[Q]) -> Vec<Q> {
        mat_vec(&self.restrict, f)
    }
}

/// The unique simple root moving each color outside `Δ'`.
pub fn derive_boundary_roots(d: &SphericalDatum, delta_prime: &[&str]) -> Result<BTreeMap<String, usize>, Error> {
    for id in delta_prime {
        d.color(id)?;
    }
    let mut out = BTreeMap::new();
    for c in &d.colors {
        if delta_prime.contains(&c.id.as_str()) {
            continue;
        }
        if c.moved_by.len() != 1 {
            return Err(Error::Boundary(
                c.id.clone(),
                format!("moved by {} simple roots, expected exactly one", c.moved_by.len()),
            ));
        }
        out.insert(c.id.clone(), *c.moved_by.iter().next().expect("nonempty"));
    }
    Ok(out)
}

/// One generator `(omega_D, chi_D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorEntry {
    /// Color id.
    pub id: String,
    /// `omega_D` in the fundamental basis.
    pub omega: Weight,
    /// `chi_D` in the basis of the character space.
    pub chi: Vec<Q>,
}

/// The free generators of an extended weight monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    /// Rank of the ambient group.
    pub rank: usize,
    /// Character space of the second component.
    pub space: PCharSpace,
    /// One entry per color.
    pub entries: Vec<GeneratorEntry>,
}

impl GeneratorTable {
    /// Entry by color id.
    pub fn get(&self, id: &str) -> Option<&GeneratorEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Stacked vectors `(omega_D, chi_D)`.
    pub fn stacked(&self) -> Matrix {
        self.entries
            .iter()
            .map(|e| {
                let mut v = e.omega.coords.clone();
                v.extend(e.chi.iter().cloned());
                v
            })
            .collect()
    }

    /// Whether the generators are linearly independent over the rationals.
    pub fn independent(&self) -> bool {
        rank(&self.stacked(), self.rank + self.space.dim()) == self.entries.len()
    }

    /// `sum a_D (omega_D, chi_D)`.
    pub fn combine(&self, a: &[u64]) -> (Vec<Q>, Vec<Q>) {
        let mut w = zeros(self.rank);
        let mut c = zeros(self.space.dim());
        for (k, e) in a.iter().zip(&self.entries) {
            let k = qi(*k as i64);
            axpy(&mut w, &k, &e.omega.coords);
            axpy(&mut c, &k, &e.chi);
        }
        (w, c)
    }

    /// The generator set as sortable pairs, for comparisons up to relabelling.
    pub fn pair_set(&self) -> BTreeSet<(Vec<Q>, Vec<Q>)> {
        self.entries
            .iter()
            .map(|e| (e.omega.coords.clone(), e.chi.clone()))
            .collect()
    }
}

/// `omega_D = eps * sum of omega_beta` over roots `beta` moving `D`, where
/// `eps = 2` when `2 alpha` is a spherical root for a root `alpha` moving `D`.
pub fn omega_of_color(d: &SphericalDatum, id: &str) -> Result<Weight, Error> {
    let c = d.color(id)?;
    let n = d.ambient.rank();
    let mut w = zeros(n);
    for &b in &c.moved_by {
        w[b] += qi(1);
    }
    if c.moved_by.iter().any(|&a| d.double_root_is_spherical(a)) {
        w.iter_mut().for_each(|x| *x *= qi(2));
    }
    Ok(Weight::fundamental(w))
}

/// `chi_D = -omega_alpha|_P` for each color outside `Δ'`.
pub fn boundary_chi(
    d: &SphericalDatum,
    delta_prime: &[&str],
    ctx: &RestrictionContext,
) -> Result<BTreeMap<String, Vec<Q>>, Error> {
    for id in delta_prime {
        d.color(id)?;
    }
    let n = d.ambient.rank();
    let mut out = BTreeMap::new();
    for c in &d.colors {
        if delta_prime.contains(&c.id.as_str()) {
            continue;
        }
        if c.moved_by.len() != 1 {
            return Err(Error::Boundary(
                c.id.clone(),
                format!("moved by {} simple roots, expected exactly one", c.moved_by.len()),
            ));
        }
        let alpha = *ctx
            .boundary_root_of
            .get(&c.id)
            .ok_or_else(|| Error::Boundary(c.id.clone(), "no boundary root given".into()))?;
        if !c.moved_by.contains(&alpha) {
            return Err(Error::Boundary(
                c.id.clone(),
                format!("α{} does not move this color", d.ambient.index_name(alpha)),
            ));
        }
        let omega = omega_of_color(d, &c.id)?;
        let e = crate::linalg::unit(n, alpha);
        if omega.coords != e {
            return Err(Error::Boundary(c.id.clone(), "ω_D differs from the moving fundamental weight".into()));
        }
        let r = ctx.restrict_fundamental(&e);
        out.insert(c.id.clone(), r.iter().map(|x| -x).collect());
    }
    Ok(out)
}

/// Computes the generator table.
pub fn solve_generators(
    d: &SphericalDatum,
    delta_prime: &[&str],
    ctx: &RestrictionContext,
) -> Result<GeneratorTable, Error> {
    let n = d.ambient.rank();
    let dim = ctx.space.dim();
    if ctx.restrict.len() != dim || ctx.restrict.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("restriction must be {dim} x {n}")));
    }
    let known = boundary_chi(d, delta_prime, ctx)?;
    let omegas: Vec<Weight> = d
        .colors
        .iter()
        .map(|c| omega_of_color(d, &c.id))
        .collect::<Result<_, _>>()?;

    for (k, s) in d.sigma_root_coords().iter().enumerate() {
        let lhs = d.ambient.root_to_fundamental(s);
        let mut rhs = zeros(n);
        for (c, w) in d.colors.iter().zip(&omegas) {
            axpy(&mut rhs, &c.pairing[k], &w.coords);
        }
        if lhs != rhs {
            return Err(Error::FirstComponent(k));
        }
    }

    let unknown: Vec<usize> = delta_prime
        .iter()
        .map(|id| d.color_index(id))
        .collect::<Result<_, _>>()?;
    let a: Matrix = (0..d.sigma.len())
        .map(|k| unknown.iter().map(|&i| d.colors[i].pairing[k].clone()).collect())
        .collect();
    let r = rank(&a, unknown.len());
    if r != unknown.len() {
        return Err(Error::RankDeficient { rank: r, expected: unknown.len() });
    }
    let b: Matrix = (0..d.sigma.len())
        .map(|k| {
            let mut v = zeros(dim);
            for c in &d.colors {
                if let Some(chi) = known.get(&c.id) {
                    axpy(&mut v, &-c.pairing[k].clone(), chi);
                }
            }
            v
        })
        .collect();
    let x = match solve(&a, unknown.len(), &b, dim) {
        Solution::Unique(x) => x,
        Solution::Inconsistent(k) => return Err(Error::Inconsistent(k)),
        Solution::Underdetermined => {
            return Err(Error::RankDeficient { rank: r, expected: unknown.len() })
        }
    };
    let entries = d
        .colors
        .iter()
        .zip(omegas)
        .enumerate()
        .map(|(i, (c, omega))| {
            let chi = match unknown.iter().position(|&u| u == i) {
                Some(p) => x[p].clone(),
                None => known[&c.id].clone(),
            };
            GeneratorEntry { id: c.id.clone(), omega, chi }
        })
        .collect();
    Ok(GeneratorTable { rank: n, space: ctx.space.clone(), entries })
}

/// For each spherical root, `(sigma, 0) - sum_D c(D, sigma) (omega_D, chi_D)`
/// stacked into one vector. All entries vanish for a correct table.
pub fn sphroot_residuals(d: &SphericalDatum, t: &GeneratorTable) -> Result<Vec<Vec<Q>>, Error> {
    let n = d.ambient.rank();
    let dim = t.space.dim();
    let mut out = Vec::new();
    for (k, s) in d.sigma_root_coords().iter().enumerate() {
        let mut v = d.ambient.root_to_fundamental(s);
        v.extend(zeros(dim));
        for c in &d.colors {
            let e = t.get(&c.id).ok_or_else(|| Error::UnknownColor(c.id.clone()))?;
            let mut g = e.omega.coords.clone();
            g.extend(e.chi.iter().cloned());
            axpy(&mut v, &-c.pairing[k].clone(), &g);
        }
        debug_assert_eq!(v.len(), n + dim);
        out.push(v);
    }
    Ok(out)
}

/// The unique non-negative integer coefficients `a` with
/// `sum a_D (omega_D, chi_D) = (lambda, chi)`, aligned with `t.entries`.
pub fn membership(t: &GeneratorTable, lambda: &[Q], chi: &[Q]) -> Option<Vec<u64>> {
    let mut target = lambda.to_vec();
    target.extend(chi.iter().cloned());
    if t.entries.is_empty() {
        return is_zero_vec(&target).then(Vec::new);
    }
    let cols = t.stacked();
    let a = crate::linalg::transpose(&cols, t.rank + t.space.dim());
    let Solution::Unique(mut x) = solve_vec(&a, t.entries.len(), &target) else {
        return None;
    };
    x.remove(0)
        .into_iter()
        .map(|c| {
            if c.is_integer() && !c.is_negative() {
                c.to_integer().to_u64()
            } else {
                None
            }
        })
        .collect()
}

/// Result of one rank identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    /// Both sides agree.
    Pass,
    /// The sides differ.
    Fail {
        /// Left-hand side.
        lhs: i64,
        /// Right-hand side.
        rhs: i64,
    },
    /// The identity carries no information for this input.
    NotApplicable,
}

impl IdentityCheck {
    /// True unless the check failed.
    pub fn ok(&self) -> bool {
        !matches!(self, IdentityCheck::Fail { .. })
    }

    fn compare(lhs: i64, rhs: i64) -> Self {
        if lhs == rhs {
            IdentityCheck::Pass
        } else {
            IdentityCheck::Fail { lhs, rhs }
        }
    }
}

/// Both rank identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    /// `rk X(P) = |Δ| - rk Xi`.
    pub character_rank: IdentityCheck,
    /// `rk Xi - dim span rho(Δ') = rk X(Q) - rk X(P)` with `rk X(Q) = |Δ \ Δ'|`.
    pub quotient_rank: IdentityCheck,
}

impl RankReport {
    /// Neither identity failed.
    pub fn ok(&self) -> bool {
        self.character_rank.ok() && self.quotient_rank.ok()
    }
}

/// Checks the rank identities relating colors, `Xi` and characters of `P`.
pub fn rank_identities(
    t: &GeneratorTable,
    d: &SphericalDatum,
    rk_xp: usize,
    delta_prime: &[&str],
) -> Result<RankReport, Error> {
    let _ = t;
    let n_colors = d.colors.len() as i64;
    let xi = d.xi_rank() as i64;
    let character_rank = IdentityCheck::compare(rk_xp as i64, n_colors - xi);
    let quotient_rank = if delta_prime.len() == d.colors.len() {
        IdentityCheck::NotApplicable
    } else {
        let use_rho = delta_prime
            .iter()
            .all(|id| d.color(id).map(|c| c.rho.is_some()).unwrap_or(false));
        let rows: Vec<Vec<Q>> = delta_prime
            .iter()
            .map(|id| {
                let c = d.color(id)?;
                Ok(if use_rho { c.rho.clone().expect("checked") } else { c.pairing.clone() })
            })
            .collect::<Result<_, Error>>()?;
        let width = if use_rho { d.xi_root_coords().len() } else { d.sigma.len() };
        let span = rank(&rows, width) as i64;
        let rk_xq = n_colors - delta_prime.len() as i64;
        IdentityCheck::compare(xi - span, rk_xq - rk_xp as i64)
    };
    Ok(RankReport { character_rank, quotient_rank })
}

/// Converts a coefficient vector to a map keyed by color id.
pub fn coefficient_map(t: &GeneratorTable, a: &[u64]) -> BTreeMap<String, u64> {
    t.entries.iter().zip(a).map(|(e, &k)| (e.id.to_string(), k)).collect()
}
