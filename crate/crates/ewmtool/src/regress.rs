//! Recomputing a case and comparing against its recorded data.

use std::fmt;

use ewm_core::ewm::{rank_identities, solve_generators, sphroot_residuals, GeneratorTable, IdentityCheck};
use ewm_core::linalg::is_zero_vec;
use ewm_core::morph::{check_parabolic_in_h, is_parabolic, minimal_parabolic_subsets, morphism_report};
use ewm_core::sphdata::SphericalDatum;
use ewm_core::well::{bottom, free_monoid_check, WellCase};
use ewm_core::Error;
use rayon::prelude::*;

use crate::case::{CaseFile, DeltaPrime};

/// One named check of a regression run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    /// Short name.
    pub name: String,
    /// Outcome.
    pub passed: bool,
    /// Explanation, mostly for failures.
    pub detail: String,
}

/// All checks run on one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegressionReport {
    /// Case id.
    pub id: String,
    /// Checks in the order they ran.
    pub checks: Vec<Check>,
}

impl RegressionReport {
    /// Whether every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The failed checks.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for RegressionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.id, if self.passed() { "pass" } else { "FAIL" })?;
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {mark:4} {}", c.name)?;
            } else {
                writeln!(f, "  {mark:4} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// The generator table of a case together with the `Δ'` used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computed {
    /// The table.
    pub table: GeneratorTable,
    /// `Δ'`, empty for table fixtures.
    pub delta_prime: Vec<String>,
}

/// Computes the generator table: solved from the datum, or taken from the
/// file for table fixtures. With `Δ' = auto` every minimal parabolic subset
/// is tried and the first whose generators match the recorded ones wins.
pub fn compute_generators(c: &CaseFile) -> Result<Computed, Error> {
    let Some(d) = &c.datum else {
        let table = c.expected.clone().ok_or_else(|| Error::Precondition("case has no generators".into()))?;
        return Ok(Computed { table, delta_prime: Vec::new() });
    };
    let ctx = c.restriction.as_ref().expect("datum cases carry a restriction");
    let candidates: Vec<Vec<String>> = match c.delta_prime.as_ref().expect("datum cases carry Δ'") {
        DeltaPrime::Explicit(v) => vec![v.clone()],
        DeltaPrime::Auto => minimal_parabolic_subsets(d, true),
    };
    let mut first: Option<Result<Computed, Error>> = None;
    for dp in candidates {
        let ids: Vec<&str> = dp.iter().map(String::as_str).collect();
        let mut ctx = ctx.clone();
        if matches!(c.delta_prime, Some(DeltaPrime::Auto)) {
            match ewm_core::ewm::derive_boundary_roots(d, &ids) {
                Ok(m) => ctx.boundary_root_of = m,
                Err(e) => {
                    first.get_or_insert(Err(e));
                    continue;
                }
            }
        }
        let r = solve_generators(d, &ids, &ctx).map(|table| Computed { table, delta_prime: dp.clone() });
        match (&r, &c.expected) {
            (Ok(comp), Some(exp)) if comp.table.pair_set() == exp.pair_set() => return r,
            (Ok(_), None) => return r,
            _ => {
                first.get_or_insert(r);
            }
        }
    }
    first.unwrap_or_else(|| Err(Error::Precondition("no minimal parabolic subset of colors".into())))
}

fn describe_difference(computed: &GeneratorTable, expected: &GeneratorTable) -> String {
    let mut notes = Vec::new();
    let r = &computed.space;
    for e in &expected.entries {
        match computed.get(&e.id) {
            None => notes.push(format!("{} missing", e.id)),
            Some(g) => {
                if g.omega != e.omega {
                    notes.push(format!("ω of {} differs", e.id));
                }
                if g.chi != e.chi {
                    notes.push(format!("χ of {}: expected {}, computed {}", e.id, r.format(&e.chi), r.format(&g.chi)));
                }
            }
        }
    }
    if notes.is_empty() {
        "generator sets differ".into()
    } else {
        notes.join("; ")
    }
}

/// Builds the well classification declared by a case.
pub fn well_case(c: &CaseFile, table: &GeneratorTable) -> Result<Option<WellCase>, Error> {
    let Some(w) = &c.well else { return Ok(None) };
    let ids: Vec<&str> = w.h_colors.iter().map(String::as_str).collect();
    WellCase::classify(table.clone(), &ids, w.center_dim).map(Some)
}

fn minimality(d: &SphericalDatum, dp: &[String]) -> (bool, String) {
    let ids: Vec<&str> = dp.iter().map(String::as_str).collect();
    match is_parabolic(d, &ids) {
        Ok(true) => {}
        Ok(false) => return (false, "Δ' is not parabolic".into()),
        Err(e) => return (false, e.to_string()),
    }
    for skip in 0..ids.len() {
        let sub: Vec<&str> = ids.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, x)| *x).collect();
        if is_parabolic(d, &sub).unwrap_or(true) {
            return (false, format!("still parabolic without {}", ids[skip]));
        }
    }
    (true, String::new())
}

fn identity(name: &str, r: &IdentityCheck, rep: &mut RegressionReport) {
    match r {
        IdentityCheck::Pass => rep.push(name, true, ""),
        IdentityCheck::NotApplicable => rep.push(name, true, "not applicable"),
        IdentityCheck::Fail { lhs, rhs } => rep.push(name, false, format!("{lhs} ≠ {rhs}")),
    }
}

/// Runs every check a case supports.
pub fn run_regression(c: &CaseFile) -> RegressionReport {
    let mut rep = RegressionReport { id: c.id.clone(), checks: Vec::new() };
    let comp = match compute_generators(c) {
        Ok(x) => x,
        Err(e) => {
            rep.push("generators", false, e.to_string());
            return rep;
        }
    };
    let t = &comp.table;
    if let Some(d) = &c.datum {
        match &c.expected {
            Some(exp) => {
                let ok = t.pair_set() == exp.pair_set();
                rep.push("generators", ok, if ok { String::new() } else { describe_difference(t, exp) });
            }
            None => rep.push("generators", true, "no recorded generators"),
        }
        let residual_ok = sphroot_residuals(d, t).map(|v| v.iter().all(|r| is_zero_vec(r))).unwrap_or(false);
        rep.push("spherical-root residual", residual_ok, "");
        let a_ok = {
            let idx: Vec<usize> = comp.delta_prime.iter().map(|id| d.color_index(id).expect("known")).collect();
            let a: Vec<Vec<_>> = (0..d.sigma.len())
                .map(|k| idx.iter().map(|&i| d.colors[i].pairing[k].clone()).collect())
                .collect();
            ewm_core::linalg::rank(&a, idx.len()) == idx.len()
        };
        rep.push("rank of pairing on Δ'", a_ok, "");
        let (min_ok, detail) = minimality(d, &comp.delta_prime);
        rep.push("Δ' minimal parabolic", min_ok, detail);
        match c.rk_xp {
            Some(rk) => {
                let ids: Vec<&str> = comp.delta_prime.iter().map(String::as_str).collect();
                match rank_identities(t, d, rk, &ids) {
                    Ok(r) => {
                        identity("character rank identity", &r.character_rank, &mut rep);
                        identity("quotient rank identity", &r.quotient_rank, &mut rep);
                    }
                    Err(e) => rep.push("rank identities", false, e.to_string()),
                }
            }
            None => rep.push("rank identities", false, "rk_XP not recorded"),
        }
        if let Some(m) = &c.morphism {
            let ids: Vec<&str> = m.delta_prime.iter().map(String::as_str).collect();
            match morphism_report(d, &ids, &m.target, &m.psi) {
                Ok(r) => {
                    let ok = r.holds() == m.expect;
                    rep.push("morphism", ok, if ok { String::new() } else { r.notes.join("; ") });
                }
                Err(e) => rep.push("morphism", false, e.to_string()),
            }
            if let Some(p) = m.parabolic_in_h {
                rep.push("parabolic in H", check_parabolic_in_h(d, &m.target) == p, "");
            }
        }
    }
    rep.push("generators independent", t.independent(), "");

    match well_case(c, t) {
        Ok(None) => {}
        Ok(Some(w)) => {
            if let Some(f) = c.expect_free {
                rep.push("free monoid check", free_monoid_check(&w) == f, "");
            }
            for fx in &c.well.as_ref().expect("present").fixtures {
                let name = format!("bottom of {}-well", fx.chi_text);
                match bottom(&w, &fx.chi) {
                    Ok(b) => {
                        let mut got: Vec<_> = b.into_iter().map(|x| x.coords).collect();
                        let mut want = fx.bottom.clone();
                        got.sort();
                        want.sort();
                        let detail = if got == want {
                            String::new()
                        } else {
                            let show = |v: &[Vec<_>]| {
                                v.iter().map(|x| c.ambient.format_fundamental(x)).collect::<Vec<_>>().join(", ")
                            };
                            format!("expected {{{}}}, computed {{{}}}", show(&want), show(&got))
                        };
                        rep.push(&name, got == want, detail);
                    }
                    Err(e) => rep.push(&name, false, e.to_string()),
                }
            }
        }
        Err(e) => rep.push("well classes", false, e.to_string()),
    }
    rep
}

/// Runs the regression on every case in parallel; reports are ordered by id.
pub fn run_all(cases: &[CaseFile]) -> Vec<RegressionReport> {
    let mut out: Vec<RegressionReport> = cases.par_iter().map(run_regression).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}
