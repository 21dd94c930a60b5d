//! Brute-force representation theory used as ground truth: weight
//! multiplicities by Freudenthal's formula, branching to a subgroup through
//! a restriction of tori, and `chi`-well membership by multiplicity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ewm::PCharSpace;
use crate::linalg::{mat_vec, qi, rank, Matrix, Q};
use crate::rootlat::{RootSystem, Weight};
use crate::well::WellCase;
use crate::Error;

/// Default upper bound on the rank accepted by the oracle.
pub const DEFAULT_RANK_CAP: usize = 6;

/// Formal character of one irreducible: multiplicity of each weight, keyed
/// by fundamental coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CharacterTable {
    /// Weight to multiplicity.
    pub entries: BTreeMap<Vec<i64>, u64>,
}

impl CharacterTable {
    /// Total dimension.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Multiplicity of a weight (0 if absent).
    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }
}

struct Lattice {
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
}

impl Lattice {
    fn new(r: &RootSystem) -> Self {
        let n = r.rank();
        let raw: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| r.inner(&crate::linalg::unit(n, i), &crate::linalg::unit(n, j))).collect())
            .collect();
        let l = raw
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let l = Q::from_integer(l);
        let gram = raw
            .iter()
            .map(|row| row.iter().map(|x| (x * &l).to_integer().to_i64().expect("small")).collect())
            .collect();
        let cartan = r.cartan_matrix().to_vec();
        let roots = r
            .positive_roots()
            .iter()
            .map(|b| (0..n).map(|i| (0..n).map(|j| cartan[i][j] * b[j]).sum()).collect())
            .collect();
        Lattice { cartan, gram, roots }
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            if *x != 0 {
                for (j, y) in b.iter().enumerate() {
                    s += x * self.gram[i][j] * y;
                }
            }
        }
        s
    }

    fn reflect(&self, f: &mut [i64], i: usize) {
        let c = f[i];
        for (k, x) in f.iter_mut().enumerate() {
            *x -= c * self.cartan[k][i];
        }
    }

    fn dominant(&self, f: &[i64]) -> Vec<i64> {
        let mut v = f.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect(&mut v, i);
        }
        v
    }

    fn orbit(&self, f: &[i64]) -> Vec<Vec<i64>> {
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(f.to_vec());
        let mut stack = alloc::vec![f.to_vec()];
        while let Some(v) = stack.pop() {
            for i in 0..v.len() {
                if v[i] != 0 {
                    let mut w = v.clone();
                    self.reflect(&mut w, i);
                    if seen.insert(w.clone()) {
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn check_rank(r: &RootSystem, cap: usize) -> Result<(), Error> {
    if r.rank() > cap {
        return Err(Error::RankCap { rank: r.rank(), cap });
    }
    Ok(())
}

fn dominant_int(r: &RootSystem, lambda: &Weight) -> Result<Vec<i64>, Error> {
    if !r.is_dominant_integral(lambda)? {
        return Err(Error::NotDominantIntegral);
    }
    Ok(r.to_fundamental(lambda)?
        .iter()
        .map(|x| x.to_integer().to_i64().expect("small weight"))
        .collect())
}

/// Weight multiplicities of the irreducible of highest weight `lambda`, with
/// the default rank cap.
pub fn freudenthal(r: &RootSystem, lambda: &Weight) -> Result<CharacterTable, Error> {
    freudenthal_capped(r, lambda, DEFAULT_RANK_CAP)
}

/// [`freudenthal`] with an explicit rank cap.
pub fn freudenthal_capped(r: &RootSystem, lambda: &Weight, cap: usize) -> Result<CharacterTable, Error> {
    check_rank(r, cap)?;
    let top = dominant_int(r, lambda)?;
    Ok(character(&Lattice::new(r), &top))
}

fn character(lat: &Lattice, top: &[i64]) -> CharacterTable {
    let n = top.len();
    // dominant weights below `top`, reached by subtracting positive roots
    let mut dom: alloc::collections::BTreeSet<Vec<i64>> = alloc::collections::BTreeSet::new();
    dom.insert(top.to_vec());
    let mut stack = alloc::vec![top.to_vec()];
    while let Some(mu) = stack.pop() {
        for a in &lat.roots {
            let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            if nu.iter().all(|&x| x >= 0) && dom.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let rho = alloc::vec![1i64; n];
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(x, y)| x + y).collect() };
    let top_norm = {
        let t = shift(top);
        lat.form(&t, &t)
    };
    // process in order of decreasing norm of mu + rho, which refines dominance
    let mut order: Vec<Vec<i64>> = dom.iter().cloned().collect();
    order.sort_by_key(|mu| {
        let s = shift(mu);
        core::cmp::Reverse(lat.form(&s, &s))
    });
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for mu in order {
        if mu == top {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc = 0i64;
        for a in &lat.roots {
            let mut nu = mu.clone();
            loop {
                nu.iter_mut().zip(a).for_each(|(x, y)| *x += y);
                let d = lat.dominant(&nu);
                let Some(&m) = mult.get(&d) else {
                    if dom.contains(&d) {
                        unreachable!("dominant weight processed out of order");
                    }
                    break;
                };
                acc += m * lat.form(&nu, a);
            }
        }
        let s = shift(&mu);
        let den = top_norm - lat.form(&s, &s);
        let m = 2 * acc / den;
        debug_assert_eq!(2 * acc % den, 0);
        mult.insert(mu, m);
    }
    let mut out = CharacterTable::default();
    for (mu, m) in mult {
        if m > 0 {
            for w in lat.orbit(&mu) {
                out.entries.insert(w, m as u64);
            }
        }
    }
    out
}

/// A subgroup `H` of `G` with compatible tori: `torus_map` sends a
/// `G`-weight (fundamental coordinates) to `H`-fundamental coordinates
/// followed by central characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingSetup {
    /// The ambient group.
    pub g: RootSystem,
    /// Semisimple part of the subgroup.
    pub h: RootSystem,
    /// Labels of the codomain: `h.rank()` fundamental weights then the
    /// central characters.
    pub labels: Vec<String>,
    /// `labels.len() x g.rank()` restriction matrix.
    pub torus_map: Matrix,
    /// Rank cap applied to both groups.
    pub rank_cap: usize,
}

impl BranchingSetup {
    /// Builds a setup, checking shapes.
    pub fn new(g: RootSystem, h: RootSystem, labels: Vec<String>, torus_map: Matrix) -> Result<Self, Error> {
        if labels.len() < h.rank() {
            return Err(Error::Dimension("fewer codomain labels than the rank of H".into()));
        }
        if torus_map.len() != labels.len() || torus_map.iter().any(|r| r.len() != g.rank()) {
            return Err(Error::Dimension(format!("torus map must be {} x {}", labels.len(), g.rank())));
        }
        Ok(BranchingSetup { g, h, labels, torus_map, rank_cap: DEFAULT_RANK_CAP })
    }

    /// Number of central characters.
    pub fn central_dim(&self) -> usize {
        self.labels.len() - self.h.rank()
    }

    /// Re-expresses a character of `P` in the codomain by matching labels.
    pub fn embed_chi(&self, space: &PCharSpace, chi: &[Q]) -> Result<Vec<Q>, Error> {
        let mut out = crate::linalg::zeros(self.labels.len());
        for (l, c) in space.labels.iter().zip(chi) {
            if c.is_zero() {
                continue;
            }
            let k = self
                .labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Precondition(format!("character label `{l}` has no counterpart in the branching setup")))?;
            out[k] += c;
        }
        Ok(out)
    }
}

fn height(h: &RootSystem, v: &[Q]) -> Q {
    h.fundamental_to_root(&v[..h.rank()]).iter().sum()
}

/// Decomposition of the `G`-irreducible of highest weight `lambda` under
/// `H`: multiplicity of each irreducible, keyed by its highest weight in
/// codomain coordinates.
pub fn branch(s: &BranchingSetup, lambda: &Weight) -> Result<BTreeMap<Vec<Q>, u64>, Error> {
    let mut memo = BTreeMap::new();
    branch_memo(s, lambda, &mut memo)
}

fn branch_memo(
    s: &BranchingSetup,
    lambda: &Weight,
    memo: &mut BTreeMap<Vec<i64>, CharacterTable>,
) -> Result<BTreeMap<Vec<Q>, u64>, Error> {
    check_rank(&s.g, s.rank_cap)?;
    check_rank(&s.h, s.rank_cap)?;
    let chg = freudenthal_capped(&s.g, lambda, s.rank_cap)?;
    let hr = s.h.rank();
    let mut rest: BTreeMap<Vec<Q>, i64> = BTreeMap::new();
    for (w, m) in &chg.entries {
        let f: Vec<Q> = w.iter().map(|&x| qi(x)).collect();
        *rest.entry(mat_vec(&s.torus_map, &f)).or_insert(0) += *m as i64;
    }
    let hlat = Lattice::new(&s.h);
    let mut out = BTreeMap::new();
    loop {
        rest.retain(|_, m| *m != 0);
        let Some(top) = rest
            .keys()
            .max_by(|a, b| height(&s.h, a).cmp(&height(&s.h, b)).then_with(|| b.cmp(a)))
            .cloned()
        else {
            break;
        };
        let m = rest[&top];
        let name = format_point(s, &top);
        if m < 0 {
            return Err(Error::NegativeMultiplicity(name));
        }
        let hpart: Option<Vec<i64>> = top[..hr]
            .iter()
            .map(|x| if x.is_integer() && !x.is_negative() { x.to_integer().to_i64() } else { None })
            .collect();
        let Some(hpart) = hpart else {
            return Err(Error::NegativeMultiplicity(format!("{name} (maximal weight is not dominant for H)")));
        };
        let chh = memo.entry(hpart.clone()).or_insert_with(|| character(&hlat, &hpart));
        for (w, k) in &chh.entries {
            let mut key: Vec<Q> = w.iter().map(|&x| qi(x)).collect();
            key.extend(top[hr..].iter().cloned());
            let e = rest.entry(key.clone()).or_insert(0);
            *e -= m * *k as i64;
            if *e < 0 {
                return Err(Error::NegativeMultiplicity(format_point(s, &key)));
            }
        }
        out.insert(top, m as u64);
    }
    Ok(out)
}

fn format_point(s: &BranchingSetup, v: &[Q]) -> String {
    crate::rootlat::format_combination(v, |i| s.labels[i].clone())
}

/// Multiplicity of the `H`-irreducible `chi` (codomain coordinates) in the
/// `G`-irreducible `lambda`.
pub fn well_membership_oracle(s: &BranchingSetup, lambda: &Weight, chi: &[Q]) -> Result<u64, Error> {
    Ok(branch(s, lambda)?.get(chi).copied().unwrap_or(0))
}

/// One disagreement between the generator table and the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// The weight `lambda` (fundamental coordinates).
    pub lambda: Vec<i64>,
    /// Whether the table puts `(lambda, -chi)` in the monoid.
    pub in_table: bool,
    /// Multiplicity found by branching.
    pub oracle: u64,
}

/// Result of [`crosscheck`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CrosscheckReport {
    /// Number of weights examined.
    pub checked: usize,
    /// Weights on which the two sides disagree.
    pub mismatches: Vec<Mismatch>,
    /// Weights whose oracle multiplicity is at least 2.
    pub high_multiplicity: Vec<(Vec<i64>, u64)>,
}

impl CrosscheckReport {
    /// No mismatch and no multiplicity above one.
    pub fn clean(&self) -> bool {
        self.mismatches.is_empty() && self.high_multiplicity.is_empty()
    }
}

/// All dominant weights of rank `n` with coordinate sum at most `bound`.
pub fn dominant_weights_up_to(n: usize, bound: u64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0i64; n];
    fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[k] = c;
            rec(k + 1, left - c, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, bound as i64, &mut cur, &mut out);
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

/// Compares well membership from the generator table with the multiplicity
/// found by branching, for every dominant `lambda` with coordinate sum at
/// most `bound`.
pub fn crosscheck(s: &BranchingSetup, w: &WellCase, chi: &[Q], bound: u64) -> Result<CrosscheckReport, Error> {
    let t = &w.table;
    if chi.len() != t.space.dim() {
        return Err(Error::Dimension("character has the wrong number of coordinates".into()));
    }
    let mut span: Vec<Vec<Q>> = t.entries.iter().map(|e| e.chi.clone()).collect();
    let r0 = rank(&span, t.space.dim());
    span.push(chi.to_vec());
    if rank(&span, t.space.dim()) != r0 {
        return Err(Error::Precondition("χ is not in the span of the characters of the table".into()));
    }
    if s.g.rank() != t.rank {
        return Err(Error::Dimension("branching setup and table have different ranks".into()));
    }
    let target = s.embed_chi(&t.space, chi)?;
    let neg: Vec<Q> = chi.iter().map(|x| -x.clone()).collect();
    let mut memo = BTreeMap::new();
    let mut report = CrosscheckReport::default();
    for lam in dominant_weights_up_to(t.rank, bound) {
        let lq: Vec<Q> = lam.iter().map(|&x| qi(x)).collect();
        let in_table = crate::ewm::membership(t, &lq, &neg).is_some();
        let oracle = branch_memo(s, &Weight::fundamental(lq), &mut memo)?
            .get(&target)
            .copied()
            .unwrap_or(0);
        report.checked += 1;
        if oracle >= 2 {
            report.high_multiplicity.push((lam.clone(), oracle));
        }
        if in_table != (oracle == 1) {
            report.mismatches.push(Mismatch { lambda: lam, in_table, oracle });
        }
    }
    Ok(report)
}
