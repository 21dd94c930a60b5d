//! Acceptance criteria, one line of output per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ewm_core::ewm::{membership, sphroot_residuals, GeneratorTable};
use ewm_core::linalg::{is_zero_vec, qi, rank, sub, Q};
use ewm_core::morph::{classify_subset, is_parabolic, minimal_parabolic_subsets};
use ewm_core::oracle::{crosscheck, freudenthal};
use ewm_core::rootlat::{RootSystem, Weight};
use ewm_core::well::{bottom, chi_well, d_chi, decompose, in_zero_well, WellCase};
use ewmtool::case::{load_case, load_dir, CaseFile};
use ewmtool::regress::{compute_generators, run_all, well_case};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn case_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../cases")
}

fn case(name: &str) -> CaseFile {
    load_case(&case_dir().join(format!("{name}.json"))).unwrap_or_else(|e| panic!("{e}"))
}

fn ints(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn pairs(rows: &[(Vec<i64>, Vec<i64>)]) -> BTreeSet<(Vec<Q>, Vec<Q>)> {
    rows.iter().map(|(w, c)| (ints(w), ints(c))).collect()
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("took {t:?}, limit {limit:?}"));
    }
    Ok(())
}

fn table_and_well(c: &CaseFile) -> (GeneratorTable, WellCase) {
    let t = compute_generators(c).expect("generators").table;
    let w = well_case(c, &t).expect("well classes").expect("well section");
    (t, w)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = case("sph5S_g2_sl3");
    let t = compute_generators(&c).map_err(|e| e.to_string())?.table;
    let want = pairs(&[(vec![1, 0], vec![0, 0]), (vec![1, 0], vec![-1, 0]), (vec![0, 1], vec![-1, 0])]);
    if t.pair_set() != want {
        return Err(format!("got {:?}", t.pair_set()));
    }
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for (n, file) in [(3usize, "sec8_spin8_n3"), (4, "sec8_spin10_n4")] {
        let c = case(file);
        let t = compute_generators(&c).map_err(|e| e.to_string())?.table;
        let dim = n + 1;
        let e0 = unit(dim, 0);
        let en = unit(dim, n);
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let diff: Vec<i64> = e0.iter().zip(&en).map(|(a, b)| a - b).collect();
        let want = pairs(&[
            (unit(dim, 0), e0.clone()),
            (unit(dim, 0), neg(&e0)),
            (unit(dim, 1), vec![0; dim]),
            (unit(dim, n - 1), diff),
            (unit(dim, n), neg(&en)),
        ]);
        if t.pair_set() != want {
            return Err(format!("n = {n}: table differs from the closed forms"));
        }
    }
    within(start, Duration::from_secs(1))
}

const CORPUS_MINIMUM: &[&str] = &[
    "sec8_spin8_n3",
    "sec8_spin10_n4",
    "sym1aS_sl6_sp6",
    "sym1bS_sl6_sp6",
    "sym1cS_sl4_sp4",
    "sym4_so7_so6",
    "sym7aS_sp8_sp4sp4",
    "sym8aS_f4_spin9",
    "sym8bS_f4_spin9",
    "sym8cS_f4_spin9",
    "sph3S_spin9_spin7",
    "sph4aS_spin7_g2",
    "sph4bS_spin7_g2",
    "sph5S_g2_sl3",
    "sph6aS_sp4sp4",
    "table1_row1_sl5",
    "table1_row2_sp4",
    "table1_row3_spin10",
];

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cases = load_dir(&case_dir()).map_err(|e| e.to_string())?;
    let appendix = cases.iter().filter(|c| c.datum.is_some()).count();
    if appendix < 14 {
        return Err(format!("only {appendix} appendix cases"));
    }
    let ids: BTreeSet<&str> = cases.iter().map(|c| c.id.as_str()).collect();
    if let Some(m) = CORPUS_MINIMUM.iter().find(|id| !ids.contains(*id)) {
        return Err(format!("corpus lacks {m}"));
    }
    for r in run_all(&cases) {
        if !r.passed() {
            let f: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            return Err(format!("{} failed: {}", r.id, f.join("; ")));
        }
        let c = cases.iter().find(|c| c.id == r.id).expect("same ids");
        if c.datum.is_some() {
            for name in ["character rank identity", "quotient rank identity"] {
                if !r.checks.iter().any(|k| k.name == name && k.passed) {
                    return Err(format!("{}: {name} not checked", r.id));
                }
            }
        }
    }
    within(start, Duration::from_secs(10))
}

fn criterion_4() -> Outcome {
    let c = case("sph5S_g2_sl3");
    let (_, w) = table_and_well(&c);
    let chi = ints(&[3, 0]);
    let got: BTreeSet<Vec<Q>> = bottom(&w, &chi).map_err(|e| e.to_string())?.into_iter().map(|x| x.coords).collect();
    let want: BTreeSet<Vec<Q>> = [[3, 0], [2, 1], [1, 2], [0, 3]].iter().map(|v| ints(v)).collect();
    if got != want {
        return Err(format!("bottom is {got:?}"));
    }
    match d_chi(&w, &chi) {
        Ok(4) => Ok(()),
        other => Err(format!("d_chi = {other:?}")),
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let runs = [("sph5S_g2_sl3", "0"), ("sph5S_g2_sl3", "w1"), ("sph5S_g2_sl3_p2", "w2"), ("sph5S_g2_sl3", "3*w1")];
    for (file, chi_text) in runs {
        let c = case(file);
        let (_, w) = table_and_well(&c);
        let chi = c.space.parse(chi_text).map_err(|e| e.to_string())?;
        let s = c.branching.as_ref().ok_or("no branching setup")?;
        let rep = crosscheck(s, &w, &chi, 6).map_err(|e| e.to_string())?;
        if !rep.clean() {
            return Err(format!(
                "χ = {chi_text}: {} mismatches, {} high multiplicities",
                rep.mismatches.len(),
                rep.high_multiplicity.len()
            ));
        }
    }
    within(start, Duration::from_secs(120))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let systems: Vec<RootSystem> =
        ["A2", "B2", "C2", "G2", "A3"].iter().map(|s| RootSystem::parse(s).expect("valid")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..50 {
        let r = &systems[k % systems.len()];
        let lam: Vec<i64> = (0..r.rank()).map(|_| rng.gen_range(0..=3)).collect();
        let w = Weight::fundamental_int(&lam);
        let total = freudenthal(r, &w).map_err(|e| e.to_string())?.total();
        let dim = r.weyl_dimension(&w).map_err(|e| e.to_string())?;
        if dim != total.into() {
            return Err(format!("λ = {lam:?}: total {total}, Weyl dimension {dim}"));
        }
    }
    within(start, Duration::from_secs(30))
}

fn criterion_7() -> Outcome {
    let cases = load_dir(&case_dir()).map_err(|e| e.to_string())?;
    for c in &cases {
        let comp = compute_generators(c).map_err(|e| format!("{}: {e}", c.id))?;
        let t = &comp.table;
        if !t.independent() {
            return Err(format!("(c) {}: generators dependent", c.id));
        }
        let Some(d) = &c.datum else { continue };
        let res = sphroot_residuals(d, t).map_err(|e| e.to_string())?;
        if !res.iter().all(|r| is_zero_vec(r)) {
            return Err(format!("(a) {}: nonzero residual", c.id));
        }
        let idx: Vec<usize> = comp.delta_prime.iter().map(|id| d.color_index(id).expect("known")).collect();
        let a: Vec<Vec<Q>> =
            (0..d.sigma.len()).map(|k| idx.iter().map(|&i| d.colors[i].pairing[k].clone()).collect()).collect();
        if rank(&a, idx.len()) != idx.len() {
            return Err(format!("(b) {}: rank(A) < |Δ'|", c.id));
        }
        for m in minimal_parabolic_subsets(d, false) {
            let ids: Vec<&str> = m.iter().map(String::as_str).collect();
            if !is_parabolic(d, &ids).map_err(|e| e.to_string())? {
                return Err(format!("(e) {}: {m:?} not parabolic", c.id));
            }
            for skip in 0..ids.len() {
                let sub_ids: Vec<&str> =
                    ids.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, x)| *x).collect();
                if is_parabolic(d, &sub_ids).map_err(|e| e.to_string())? {
                    return Err(format!("(e) {}: {m:?} not minimal", c.id));
                }
            }
        }
    }

    let c = case("sph5S_g2_sl3");
    let (t, w) = table_and_well(&c);
    for chi_text in ["0", "w1", "2*w1", "3*w1"] {
        let chi = c.space.parse(chi_text).map_err(|e| e.to_string())?;
        let b: Vec<Weight> = bottom(&w, &chi).map_err(|e| e.to_string())?;
        let well = chi_well(&w, &chi, 8).map_err(|e| e.to_string())?;
        for e in &well.lambdas {
            let lam = &e.lambda.coords;
            let dec = decompose(&w, &chi, lam).map_err(|e| e.to_string())?;
            let sum: Vec<Q> = dec.bottom.coords.iter().zip(&dec.rest.coords).map(|(x, y)| x + y).collect();
            if &sum != lam || !b.contains(&dec.bottom) || !in_zero_well(&w, &dec.rest.coords) {
                return Err(format!("(d) χ = {chi_text}: bad decomposition of {lam:?}"));
            }
            let count = b.iter().filter(|x| in_zero_well(&w, &sub(lam, &x.coords))).count();
            if count != 1 {
                return Err(format!("(d) χ = {chi_text}: {count} decompositions of {lam:?}"));
            }
            let neg: Vec<Q> = chi.iter().map(|x| -x).collect();
            if membership(&t, lam, &neg).is_none() {
                return Err(format!("(d) χ = {chi_text}: {lam:?} listed but not a member"));
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for (n, file) in [(3usize, "sec8_spin8_n3"), (4, "sec8_spin10_n4")] {
        let c = case(file);
        let d = c.datum.as_ref().ok_or("no datum")?;
        let dn = format!("D{n}");
        let dn1 = format!("D{}", n + 1);
        let v = classify_subset(d, &[&dn, &dn1]).map_err(|e| e.to_string())?;
        if !v.distinguished {
            return Err(format!("n = {n}: {{{dn}, {dn1}}} not distinguished"));
        }
        let v = classify_subset(d, &["D1+", "D2", &dn1]).map_err(|e| e.to_string())?;
        if v.parabolic {
            return Err(format!("n = {n}: {{D1+, D2, {dn1}}} parabolic"));
        }
    }
    let c = case("sym8cS_f4_spin9");
    let d = c.datum.as_ref().ok_or("no datum")?;
    let v = classify_subset(d, &["D1", "D3", "D4+"]).map_err(|e| e.to_string())?;
    match &v.parabolic_witness {
        Some(x) if *x == ints(&[1, 2, 3]) => Ok(()),
        other => Err(format!("witness {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {n}: pass ({secs:.2} s)"),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL ({e})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
