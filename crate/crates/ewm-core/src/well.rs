//! The `chi`-well: dominant `lambda` with `(lambda, -chi)` in the extended
//! weight monoid of `G/P`, its bottom, and the unique decomposition of well
//! elements into a bottom element plus an element of the 0-well.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ewm::{membership, GeneratorTable};
use crate::linalg::{is_zero_vec, qi, zeros, Q};
use crate::lp::{minimize, Constraint, LpOutcome, Rel};
use crate::rootlat::Weight;
use crate::Error;

/// Coefficient sum up to which the generators of the 0-well are searched
/// when cross-checking the bottom against its definition.
pub const ZERO_WELL_SEARCH_BOUND: u64 = 6;

/// A generator table together with the classes of its generators: colors
/// pulled back from `G/H` (with trivial or central `H`-weight) and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellCase {
    /// The generators of the extended weight monoid of `G/P`.
    pub table: GeneratorTable,
    /// Pulled-back colors with `chi = 0`.
    pub h_trivial: Vec<String>,
    /// Pulled-back pair `(D0, D1)` with `chi = (mu, -mu)`.
    pub h_pair: Option<(String, String)>,
    /// Further pulled-back colors with nonzero `chi`. Only non-empty when
    /// the weight monoid of `G/H` is not free.
    pub h_extra: Vec<String>,
    /// All remaining colors.
    pub e_colors: Vec<String>,
    /// Dimension of the center of `H` (0 or 1).
    pub center_dim: usize,
}

impl WellCase {
    /// Classifies the generators: `h_colors` are the colors pulled back from
    /// `G/H`, split by whether their character vanishes.
    pub fn classify(table: GeneratorTable, h_colors: &[&str], center_dim: usize) -> Result<Self, Error> {
        if center_dim > 1 {
            return Err(Error::Precondition(format!("center dimension {center_dim} is not 0 or 1")));
        }
        for id in h_colors {
            if table.get(id).is_none() {
                return Err(Error::UnknownColor((*id).into()));
            }
        }
        let mut h_trivial = Vec::new();
        let mut nonzero = Vec::new();
        let mut e_colors = Vec::new();
        for e in &table.entries {
            if !h_colors.contains(&e.id.as_str()) {
                e_colors.push(e.id.clone());
            } else if is_zero_vec(&e.chi) {
                h_trivial.push(e.id.clone());
            } else {
                nonzero.push(e.id.clone());
            }
        }
        let (h_pair, h_extra) = match (center_dim, nonzero.len()) {
            (0, 0) => (None, Vec::new()),
            (0, _) => {
                return Err(Error::Precondition(
                    "pulled-back colors have nonzero characters but H has no center".into(),
                ))
            }
            (_, 2) => {
                let (a, b) = (&table.get(&nonzero[0]).expect("present").chi, &table.get(&nonzero[1]).expect("present").chi);
                if a.iter().zip(b).any(|(x, y)| *x != -y.clone()) {
                    return Err(Error::Precondition("pulled-back pair characters are not opposite".into()));
                }
                (Some((nonzero[0].clone(), nonzero[1].clone())), Vec::new())
            }
            (_, 0) | (_, 1) => {
                return Err(Error::Precondition(
                    "a one-dimensional center needs at least two pulled-back colors with nonzero character".into(),
                ))
            }
            _ => (None, nonzero),
        };
        Ok(WellCase { table, h_trivial, h_pair, h_extra, e_colors, center_dim })
    }

    fn index(&self, id: &str) -> usize {
        self.table.entries.iter().position(|e| e.id == id).expect("classified id")
    }
}

/// A well element with its coefficient vector (aligned with the table).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellElement {
    /// `lambda = sum a_D omega_D`.
    pub lambda: Weight,
    /// The coefficients `a_D`.
    pub coeffs: Vec<u64>,
}

/// An enumerated piece of a `chi`-well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiWellResult {
    /// The `H`-weight `chi`.
    pub chi: Vec<Q>,
    /// Bound on the coefficient sum used for the enumeration.
    pub bound: u64,
    /// Well elements with coefficient sum at most `bound`, ordered by
    /// coefficient sum and then by coefficients.
    pub lambdas: Vec<WellElement>,
    /// The bottom, when requested.
    pub bottom: Option<Vec<Weight>>,
}

impl ChiWellResult {
    /// Number of bottom elements, when the bottom was computed.
    pub fn d_chi(&self) -> Option<usize> {
        self.bottom.as_ref().map(Vec::len)
    }
}

fn check_chi(w: &WellCase, chi: &[Q]) -> Result<(), Error> {
    if chi.len() != w.table.space.dim() {
        return Err(Error::Dimension(format!(
            "character has {} coordinates, expected {}",
            chi.len(),
            w.table.space.dim()
        )));
    }
    Ok(())
}

/// All coefficient vectors `a >= 0` with `sum a_D chi_D = target` and
/// `sum a_D <= bound`. Colors with `chi_D = 0` are free parameters.
fn solutions(t: &GeneratorTable, target: &[Q], bound: u64) -> Vec<Vec<u64>> {
    let n = t.entries.len();
    let (free, active): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| is_zero_vec(&t.entries[i].chi));
    let mut partial = Vec::new();
    let mut a = alloc::vec![0u64; n];
    let mut residual = target.to_vec();
    dfs(t, &active, 0, bound, &mut a, &mut residual, &mut partial);
    let mut out = Vec::new();
    for p in partial {
        let used: u64 = p.iter().sum();
        distribute(&free, 0, bound - used, &mut p.clone(), &mut out);
    }
    out.sort_by(|x, y| (x.iter().sum::<u64>(), x).cmp(&(y.iter().sum::<u64>(), y)));
    out
}

fn dfs(
    t: &GeneratorTable,
    active: &[usize],
    k: usize,
    budget: u64,
    a: &mut Vec<u64>,
    residual: &mut Vec<Q>,
    out: &mut Vec<Vec<u64>>,
) {
    if k == active.len() {
        if is_zero_vec(residual) {
            out.push(a.clone());
        }
        return;
    }
    let i = active[k];
    let chi = t.entries[i].chi.clone();
    for c in 0..=budget {
        a[i] = c;
        dfs(t, active, k + 1, budget - c, a, residual, out);
        crate::linalg::axpy(residual, &qi(-1), &chi);
    }
    crate::linalg::axpy(residual, &qi(budget as i64 + 1), &chi);
    a[i] = 0;
}

fn distribute(free: &[usize], k: usize, budget: u64, a: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if k == free.len() {
        out.push(a.clone());
        return;
    }
    for c in 0..=budget {
        a[free[k]] = c;
        distribute(free, k + 1, budget - c, a, out);
    }
    a[free[k]] = 0;
}

fn element(t: &GeneratorTable, a: Vec<u64>) -> WellElement {
    let (lambda, _) = t.combine(&a);
    WellElement { lambda: Weight::fundamental(lambda), coeffs: a }
}

/// Enumerates the `chi`-well up to a bound on the coefficient sum.
pub fn chi_well(w: &WellCase, chi: &[Q], bound: u64) -> Result<ChiWellResult, Error> {
    check_chi(w, chi)?;
    let target: Vec<Q> = chi.iter().map(|x| -x.clone()).collect();
    let lambdas = solutions(&w.table, &target, bound)
        .into_iter()
        .map(|a| element(&w.table, a))
        .collect();
    Ok(ChiWellResult { chi: chi.to_vec(), bound, lambdas, bottom: None })
}

/// Whether the weight monoid of `G/H` is free: at most two pulled-back
/// colors carry a nonzero `H`-weight.
pub fn free_monoid_check(w: &WellCase) -> bool {
    let pair = if w.h_pair.is_some() { 2 } else { 0 };
    pair + w.h_extra.len() <= 2
}

/// Coefficient vectors of the generators of the 0-well monoid, found by
/// enumerating irreducible solutions of `sum a_D chi_D = 0` up to `bound`.
pub fn zero_well_generators(t: &GeneratorTable, bound: u64) -> Vec<Vec<u64>> {
    let all = solutions(t, &zeros(t.space.dim()), bound);
    let mut irreducible: Vec<Vec<u64>> = Vec::new();
    for a in all {
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let reducible = irreducible.iter().any(|z| z.iter().zip(&a).all(|(x, y)| x <= y));
        if !reducible {
            irreducible.push(a);
        }
    }
    irreducible
}

/// Whether `lambda` lies in the bottom according to the definition: it is in
/// the well and `lambda - sigma` is not, for every listed 0-well generator.
pub fn in_bottom_by_definition(w: &WellCase, chi: &[Q], lambda: &[Q], zero_gens: &[Weight]) -> bool {
    let neg: Vec<Q> = chi.iter().map(|x| -x.clone()).collect();
    if membership(&w.table, lambda, &neg).is_none() {
        return false;
    }
    zero_gens.iter().all(|s| {
        let diff = crate::linalg::sub(lambda, &s.coords);
        membership(&w.table, &diff, &neg).is_none()
    })
}

fn lemma_bottom(w: &WellCase, a: &[u64]) -> bool {
    let trivial_ok = w.h_trivial.iter().all(|id| a[w.index(id)] == 0);
    match &w.h_pair {
        Some((d0, d1)) => trivial_ok && a[w.index(d0)].min(a[w.index(d1)]) == 0,
        None => trivial_ok,
    }
}

/// Largest coefficient sum of a bottom element, from a linear relaxation.
fn bottom_sum_bound(w: &WellCase, chi: &[Q]) -> Result<Option<u64>, Error> {
    let n = w.table.entries.len();
    let dim = w.table.space.dim();
    let mut zero_sets: Vec<Vec<usize>> = Vec::new();
    let trivial: Vec<usize> = w.h_trivial.iter().map(|id| w.index(id)).collect();
    match &w.h_pair {
        Some((d0, d1)) => {
            for d in [d0, d1] {
                let mut z = trivial.clone();
                z.push(w.index(d));
                zero_sets.push(z);
            }
        }
        None => zero_sets.push(trivial),
    }
    let mut best: Option<Q> = None;
    for z in zero_sets {
        let mut cons: Vec<Constraint> = (0..dim)
            .map(|k| {
                let coeffs = w.table.entries.iter().map(|e| e.chi[k].clone()).collect();
                Constraint::new(coeffs, Rel::Eq, -chi[k].clone())
            })
            .collect();
        for &i in &z {
            cons.push(Constraint::new(crate::linalg::unit(n, i), Rel::Eq, Q::zero()));
        }
        let objective = alloc::vec![qi(-1); n];
        match minimize(n, &objective, &cons) {
            LpOutcome::Infeasible => {}
            LpOutcome::Unbounded => {
                return Err(Error::Precondition(
                    "bottom is unbounded; the generator classes are mis-declared".into(),
                ))
            }
            LpOutcome::Optimal { value, .. } => {
                let v = -value;
                if best.as_ref().map_or(true, |b| v > *b) {
                    best = Some(v);
                }
            }
        }
    }
    Ok(best.map(|b| b.floor().to_integer().to_u64().expect("nonnegative bound")))
}

/// The bottom of the `chi`-well, computed by the coefficient criterion and
/// checked against the definition on every candidate.
pub fn bottom(w: &WellCase, chi: &[Q]) -> Result<Vec<Weight>, Error> {
    check_chi(w, chi)?;
    if !free_monoid_check(w) {
        return Err(Error::Precondition("the weight monoid of G/H is not free".into()));
    }
    let Some(max_sum) = bottom_sum_bound(w, chi)? else {
        return Ok(Vec::new());
    };
    let zero_gens: Vec<Weight> = zero_well_generators(&w.table, ZERO_WELL_SEARCH_BOUND)
        .into_iter()
        .map(|a| Weight::fundamental(w.table.combine(&a).0))
        .collect();
    let candidates = chi_well(w, chi, max_sum)?.lambdas;
    let mut out = Vec::new();
    for e in candidates {
        let by_lemma = lemma_bottom(w, &e.coeffs);
        let by_def = in_bottom_by_definition(w, chi, &e.lambda.coords, &zero_gens);
        if by_lemma != by_def {
            let name = crate::rootlat::format_combination(&e.lambda.coords, |i| format!("ω{}", i + 1));
            return Err(Error::BottomDisagreement(name));
        }
        if by_lemma {
            out.push(e.lambda);
        }
    }
    out.sort_by(|a, b| b.coords.cmp(&a.coords));
    Ok(out)
}

/// `chi_well` together with the bottom.
pub fn chi_well_with_bottom(w: &WellCase, chi: &[Q], bound: u64) -> Result<ChiWellResult, Error> {
    let mut r = chi_well(w, chi, bound)?;
    r.bottom = Some(bottom(w, chi)?);
    Ok(r)
}

/// The number `d_chi` of bottom elements.
pub fn d_chi(w: &WellCase, chi: &[Q]) -> Result<usize, Error> {
    Ok(bottom(w, chi)?.len())
}

/// Splitting `lambda = b + s` of a well element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// The bottom part.
    pub bottom: Weight,
    /// The part in the 0-well.
    pub rest: Weight,
    /// Coefficients of the bottom part.
    pub bottom_coeffs: Vec<u64>,
    /// Coefficients of the 0-well part.
    pub rest_coeffs: Vec<u64>,
}

/// The unique decomposition of a well element into a bottom element and an
/// element of the 0-well.
pub fn decompose(w: &WellCase, chi: &[Q], lambda: &[Q]) -> Result<Decomposition, Error> {
    check_chi(w, chi)?;
    if !free_monoid_check(w) {
        return Err(Error::Precondition("the weight monoid of G/H is not free".into()));
    }
    let neg: Vec<Q> = chi.iter().map(|x| -x.clone()).collect();
    let a = membership(&w.table, lambda, &neg).ok_or(Error::NotInWell)?;
    let mut s = alloc::vec![0u64; a.len()];
    for id in &w.h_trivial {
        let i = w.index(id);
        s[i] = a[i];
    }
    if let Some((d0, d1)) = &w.h_pair {
        let (i, j) = (w.index(d0), w.index(d1));
        let m = a[i].min(a[j]);
        s[i] = m;
        s[j] = m;
    }
    let b: Vec<u64> = a.iter().zip(&s).map(|(x, y)| x - y).collect();
    Ok(Decomposition {
        bottom: Weight::fundamental(w.table.combine(&b).0),
        rest: Weight::fundamental(w.table.combine(&s).0),
        bottom_coeffs: b,
        rest_coeffs: s,
    })
}

/// Whether `lambda` lies in the 0-well monoid.
pub fn in_zero_well(w: &WellCase, lambda: &[Q]) -> bool {
    membership(&w.table, lambda, &zeros(w.table.space.dim())).is_some()
}

/// Whether every coordinate is a non-negative integer.
pub fn is_dominant_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer() && !x.is_negative())
}
