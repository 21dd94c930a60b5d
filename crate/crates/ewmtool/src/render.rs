//! Text and JSON rendering of results.

use ewm_core::ewm::GeneratorTable;
use ewm_core::morph::SubsetVerdict;
use ewm_core::oracle::CrosscheckReport;
use ewm_core::rootlat::RootSystem;
use ewm_core::well::ChiWellResult;
use ewm_core::Q;
use serde_json::{json, Value};

/// A rational in the case-file encoding: integers as numbers, others as
/// `"p/q"` strings.
pub fn rat(q: &Q) -> Value {
    match (q.is_integer(), i64::try_from(q.to_integer())) {
        (true, Ok(n)) => json!(n),
        _ => json!(q.to_string()),
    }
}

/// A vector of rationals in the case-file encoding.
pub fn rats(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (j, cell) in r.iter().enumerate() {
            line.push_str(cell);
            if j + 1 < r.len() {
                line.push_str(&" ".repeat(widths[j] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Generator table as aligned text.
pub fn generators_text(r: &RootSystem, t: &GeneratorTable, delta_prime: &[String]) -> String {
    let mut rows = vec![vec!["color".to_string(), "omega_D".into(), "chi_D".into()]];
    for e in &t.entries {
        rows.push(vec![e.id.clone(), r.format_fundamental(&e.omega.coords), t.space.format(&e.chi)]);
    }
    let mut out = align(&rows);
    if !delta_prime.is_empty() {
        out.push_str(&format!("Δ' = {{{}}}\n", delta_prime.join(", ")));
    }
    out
}

/// Generator table as JSON.
pub fn generators_json(id: &str, t: &GeneratorTable, delta_prime: &[String]) -> Value {
    json!({
        "case": id,
        "delta_prime": delta_prime,
        "p_char_basis": t.space.labels,
        "generators": t.entries.iter().map(|e| json!({
            "id": e.id,
            "omega": rats(&e.omega.coords),
            "chi": t.space.format(&e.chi),
        })).collect::<Vec<_>>(),
    })
}

/// Subset verdicts as text.
pub fn subsets_text(v: &[SubsetVerdict], kind: &str) -> String {
    let mut rows = vec![vec!["subset".to_string(), kind.to_string(), "witness".into()]];
    for s in v {
        let (flag, wit) = match kind {
            "distinguished" => (s.distinguished, &s.distinguished_witness),
            _ => (s.parabolic, &s.parabolic_witness),
        };
        let w = wit
            .as_ref()
            .map(|w| format!("({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .unwrap_or_else(|| "-".into());
        rows.push(vec![format!("{{{}}}", s.subset.join(", ")), flag.to_string(), w]);
    }
    align(&rows)
}

/// Subset verdicts as JSON.
pub fn subsets_json(v: &[SubsetVerdict]) -> Value {
    Value::Array(
        v.iter()
            .map(|s| {
                json!({
                    "subset": s.subset,
                    "distinguished": s.distinguished,
                    "parabolic": s.parabolic,
                    "distinguished_witness": s.distinguished_witness.as_ref().map(|w| rats(w)),
                    "parabolic_witness": s.parabolic_witness.as_ref().map(|w| rats(w)),
                })
            })
            .collect(),
    )
}

/// Well listing as text.
pub fn well_text(r: &RootSystem, t: &GeneratorTable, w: &ChiWellResult) -> String {
    let mut out = format!("χ = {}, coefficient sum ≤ {}\n", t.space.format(&w.chi), w.bound);
    let mut rows = vec![vec!["lambda".to_string(), "coefficients".into()]];
    for e in &w.lambdas {
        let coeffs = t
            .entries
            .iter()
            .zip(&e.coeffs)
            .filter(|(_, &a)| a > 0)
            .map(|(g, a)| format!("{}:{}", g.id, a))
            .collect::<Vec<_>>()
            .join(" ");
        rows.push(vec![r.format_fundamental(&e.lambda.coords), coeffs]);
    }
    out.push_str(&align(&rows));
    out.push_str(&format!("{} elements\n", w.lambdas.len()));
    if let Some(b) = &w.bottom {
        let names: Vec<String> = b.iter().map(|x| r.format_fundamental(&x.coords)).collect();
        out.push_str(&format!("bottom: {}\n", names.join(", ")));
        out.push_str(&format!("d_chi = {}\n", b.len()));
    }
    out
}

/// Well listing as JSON.
pub fn well_json(t: &GeneratorTable, w: &ChiWellResult) -> Value {
    json!({
        "chi": t.space.format(&w.chi),
        "bound": w.bound,
        "lambdas": w.lambdas.iter().map(|e| json!({
            "lambda": rats(&e.lambda.coords),
            "coefficients": t.entries.iter().zip(&e.coeffs).map(|(g, a)| (g.id.clone(), json!(a))).collect::<serde_json::Map<_, _>>(),
        })).collect::<Vec<_>>(),
        "bottom": w.bottom.as_ref().map(|b| b.iter().map(|x| rats(&x.coords)).collect::<Vec<_>>()),
        "d_chi": w.d_chi(),
    })
}

/// Crosscheck report as text.
pub fn crosscheck_text(r: &RootSystem, rep: &CrosscheckReport) -> String {
    let mut out = format!("{} weights checked, {} mismatches\n", rep.checked, rep.mismatches.len());
    let show = |v: &[i64]| r.format_fundamental(&v.iter().map(|&x| Q::from_integer(x.into())).collect::<Vec<_>>());
    for m in &rep.mismatches {
        out.push_str(&format!(
            "  mismatch at {}: table says {}, oracle multiplicity {}\n",
            show(&m.lambda),
            if m.in_table { "member" } else { "not a member" },
            m.oracle
        ));
    }
    for (l, k) in &rep.high_multiplicity {
        out.push_str(&format!("  multiplicity {k} at {}\n", show(l)));
    }
    out
}

/// Crosscheck report as JSON.
pub fn crosscheck_json(rep: &CrosscheckReport) -> Value {
    json!({
        "checked": rep.checked,
        "mismatches": rep.mismatches.iter().map(|m| json!({
            "lambda": m.lambda, "in_table": m.in_table, "oracle": m.oracle,
        })).collect::<Vec<_>>(),
        "high_multiplicity": rep.high_multiplicity.iter().map(|(l, k)| json!({"lambda": l, "multiplicity": k})).collect::<Vec<_>>(),
    })
}
