//! Loading of schema-versioned JSON case files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use ewm_core::ewm::{
    derive_boundary_roots, parse_linear, parse_rational, GeneratorEntry, GeneratorTable, PCharSpace,
    RestrictionContext,
};
use ewm_core::linalg::{qi, transpose};
use ewm_core::oracle::BranchingSetup;
use ewm_core::rootlat::{RootSystem, Weight};
use ewm_core::sphdata::{validate, Color, SphericalDatum};
use ewm_core::Q;
use serde::Deserialize;

/// Schema version understood by this loader.
pub const SCHEMA_VERSION: u32 = 1;

/// A failure to load a case, with the offending field.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct CaseError {
    /// File being read.
    pub file: String,
    /// Dotted path of the offending field, empty for file-level errors.
    pub field: String,
    /// What went wrong.
    pub message: String,
}

impl fmt::Display for CaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}: field `{}`: {}", self.file, self.field, self.message)
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRat {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawIndex {
    Num(usize),
    Name(String),
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Datum,
    Table,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    schema: u32,
    id: String,
    citation: String,
    #[serde(default)]
    description: Option<String>,
    kind: RawKind,
    root_system: String,
    p_char_basis: Vec<String>,
    #[serde(default)]
    datum: Option<RawDatum>,
    #[serde(default)]
    delta_prime: Option<RawDeltaPrime>,
    #[serde(default)]
    restriction: Option<Vec<String>>,
    #[serde(default)]
    boundary_root_of: Option<BTreeMap<String, RawIndex>>,
    #[serde(default, rename = "rk_XP")]
    rk_xp: Option<usize>,
    #[serde(default)]
    expected_generators: Option<Vec<RawGenerator>>,
    #[serde(default)]
    generators: Option<Vec<RawGenerator>>,
    #[serde(default)]
    branching_setup: Option<RawBranching>,
    #[serde(default)]
    well: Option<RawWell>,
    #[serde(default)]
    expect_free: Option<bool>,
    #[serde(default)]
    morphism: Option<RawMorphism>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    #[serde(default)]
    sp: Vec<RawIndex>,
    sigma: Vec<Vec<RawRat>>,
    #[serde(default)]
    xi_basis: Option<Vec<Vec<RawRat>>>,
    colors: Vec<RawColor>,
    #[serde(default)]
    wonderful: bool,
    #[serde(default = "yes")]
    simply_connected: bool,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawColor {
    id: String,
    moved_by: Vec<RawIndex>,
    pairing: Vec<RawRat>,
    #[serde(default)]
    rho: Option<Vec<RawRat>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawDeltaPrime {
    Auto(String),
    List(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    id: String,
    omega: Vec<RawRat>,
    chi: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBranching {
    h_root_system: String,
    labels: Vec<String>,
    torus_map: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWell {
    h_colors: Vec<String>,
    center_dim: usize,
    #[serde(default)]
    fixtures: Vec<RawFixture>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    chi: String,
    bottom: Vec<Vec<RawRat>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    target: RawDatum,
    delta_prime: Vec<String>,
    psi: BTreeMap<String, String>,
    expect: bool,
    #[serde(default)]
    parabolic_in_h: Option<bool>,
}

/// How the set `Δ'` of colors mapped dominantly onto `G/Q` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaPrime {
    /// Try the minimal parabolic subsets in turn.
    Auto,
    /// Fixed by the case file.
    Explicit(Vec<String>),
}

/// Declared generator classes and fixtures for the `chi`-well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellSpec {
    /// Colors pulled back from `G/H`.
    pub h_colors: Vec<String>,
    /// Dimension of the center of `H`.
    pub center_dim: usize,
    /// Expected bottoms.
    pub fixtures: Vec<WellFixture>,
}

/// Expected bottom of one well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellFixture {
    /// `chi` as written in the file.
    pub chi_text: String,
    /// `chi` in the character basis.
    pub chi: Vec<Q>,
    /// Expected bottom, fundamental coordinates.
    pub bottom: Vec<Vec<Q>>,
}

/// A morphism to check with the combinatorial criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    /// Datum of the target `G/H`.
    pub target: SphericalDatum,
    /// Distinguished subset defining the morphism.
    pub delta_prime: Vec<String>,
    /// Bijection from colors of the target to the remaining colors.
    pub psi: BTreeMap<String, String>,
    /// Expected verdict.
    pub expect: bool,
    /// Expected verdict of the parabolic-in-`H` criterion, if recorded.
    pub parabolic_in_h: Option<bool>,
}

/// A loaded case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFile {
    /// Short identifier.
    pub id: String,
    /// Label of the section the data come from.
    pub citation: String,
    /// Free-form description.
    pub description: Option<String>,
    /// Source file, if loaded from disk.
    pub path: Option<PathBuf>,
    /// Ambient root system.
    pub ambient: RootSystem,
    /// Character space of `P` (or of `H` for table fixtures).
    pub space: PCharSpace,
    /// The spherical datum, for datum cases.
    pub datum: Option<SphericalDatum>,
    /// Choice of `Δ'`.
    pub delta_prime: Option<DeltaPrime>,
    /// Restriction to `P`, for datum cases.
    pub restriction: Option<RestrictionContext>,
    /// Rank of the character group of `P`.
    pub rk_xp: Option<usize>,
    /// Expected (or, for table cases, given) generators.
    pub expected: Option<GeneratorTable>,
    /// Branching data for the oracle.
    pub branching: Option<BranchingSetup>,
    /// Generator classes for the well.
    pub well: Option<WellSpec>,
    /// Expected result of the free-monoid check.
    pub expect_free: Option<bool>,
    /// Morphism to check.
    pub morphism: Option<MorphismSpec>,
}

struct Ctx<'a> {
    file: &'a str,
}

impl Ctx<'_> {
    fn err(&self, field: impl Into<String>, message: impl fmt::Display) -> CaseError {
        CaseError { file: self.file.into(), field: field.into(), message: message.to_string() }
    }

    fn rat(&self, field: &str, r: &RawRat) -> Result<Q, CaseError> {
        match r {
            RawRat::Int(n) => Ok(qi(*n)),
            RawRat::Str(s) => parse_rational(s).map_err(|e| self.err(field, e)),
        }
    }

    fn rats(&self, field: &str, v: &[RawRat], len: Option<usize>) -> Result<Vec<Q>, CaseError> {
        if let Some(l) = len {
            if v.len() != l {
                return Err(self.err(field, format!("expected {l} entries, found {}", v.len())));
            }
        }
        v.iter()
            .enumerate()
            .map(|(i, r)| self.rat(&format!("{field}[{i}]"), r))
            .collect()
    }

    fn index(&self, field: &str, r: &RootSystem, x: &RawIndex) -> Result<usize, CaseError> {
        match x {
            RawIndex::Num(k) if (1..=r.rank()).contains(k) => Ok(k - 1),
            RawIndex::Num(k) => Err(self.err(field, format!("simple root index {k} out of range 1..={}", r.rank()))),
            RawIndex::Name(s) => r.index_of(s).ok_or_else(|| self.err(field, format!("unknown simple root `{s}`"))),
        }
    }

    fn linear(&self, field: &str, expr: &str, labels: &[String]) -> Result<Vec<Q>, CaseError> {
        parse_linear(expr, labels).map_err(|e| self.err(field, e))
    }

    fn datum(&self, field: &str, r: &RootSystem, d: &RawDatum) -> Result<SphericalDatum, CaseError> {
        let n = r.rank();
        let sp = d
            .sp
            .iter()
            .enumerate()
            .map(|(i, x)| self.index(&format!("{field}.sp[{i}]"), r, x))
            .collect::<Result<BTreeSet<_>, _>>()?;
        let sigma = d
            .sigma
            .iter()
            .enumerate()
            .map(|(i, s)| Ok(Weight::root(self.rats(&format!("{field}.sigma[{i}]"), s, Some(n))?)))
            .collect::<Result<Vec<_>, CaseError>>()?;
        let xi_basis = match &d.xi_basis {
            None => None,
            Some(b) => Some(
                b.iter()
                    .enumerate()
                    .map(|(i, s)| Ok(Weight::root(self.rats(&format!("{field}.xi_basis[{i}]"), s, Some(n))?)))
                    .collect::<Result<Vec<_>, CaseError>>()?,
            ),
        };
        let mut colors = Vec::new();
        for (i, c) in d.colors.iter().enumerate() {
            let f = format!("{field}.colors[{i}]");
            let moved_by = c
                .moved_by
                .iter()
                .enumerate()
                .map(|(j, x)| self.index(&format!("{f}.moved_by[{j}]"), r, x))
                .collect::<Result<BTreeSet<_>, _>>()?;
            let pairing = self.rats(&format!("{f}.pairing"), &c.pairing, Some(sigma.len()))?;
            let rho = match &c.rho {
                None => None,
                Some(v) => Some(self.rats(&format!("{f}.rho"), v, None)?),
            };
            colors.push(Color { id: c.id.clone(), moved_by, pairing, rho });
        }
        let datum = SphericalDatum { ambient: r.clone(), sp, sigma, xi_basis, colors, wonderful: d.wonderful };
        let violations = validate(&datum);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.0.clone()).collect();
            return Err(self.err(field, format!("datum violates: {}", msgs.join("; "))));
        }
        if !d.simply_connected {
            for (k, s) in datum.sigma_root_coords().iter().enumerate() {
                let twice_simple = s.iter().filter(|x| **x != Q::from_integer(0.into())).count() == 1
                    && s.iter().any(|x| *x == qi(2));
                if twice_simple {
                    return Err(self.err(
                        format!("{field}.sigma[{k}]"),
                        "data for a non-simply-connected group must not contain twice a simple root",
                    ));
                }
            }
        }
        Ok(datum)
    }

    fn generators(
        &self,
        field: &str,
        r: &RootSystem,
        space: &PCharSpace,
        g: &[RawGenerator],
    ) -> Result<GeneratorTable, CaseError> {
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        for (i, e) in g.iter().enumerate() {
            let f = format!("{field}[{i}]");
            if !seen.insert(e.id.clone()) {
                return Err(self.err(&f, format!("duplicate id `{}`", e.id)));
            }
            let omega = Weight::fundamental(self.rats(&format!("{f}.omega"), &e.omega, Some(r.rank()))?);
            let chi = self.linear(&format!("{f}.chi"), &e.chi, &space.labels)?;
            entries.push(GeneratorEntry { id: e.id.clone(), omega, chi });
        }
        Ok(GeneratorTable { rank: r.rank(), space: space.clone(), entries })
    }
}

/// Parses a case from JSON text; `file` is used in error messages.
pub fn parse_case(text: &str, file: &str) -> Result<CaseFile, CaseError> {
    let cx = Ctx { file };
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawCase = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        cx.err(if path == "." { String::new() } else { path }, e.into_inner())
    })?;
    if raw.schema != SCHEMA_VERSION {
        return Err(cx.err("schema", format!("unsupported schema version {}", raw.schema)));
    }
    let ambient = RootSystem::parse(&raw.root_system).map_err(|e| cx.err("root_system", e))?;
    let n = ambient.rank();
    let space = PCharSpace::new(raw.p_char_basis.clone()).map_err(|e| cx.err("p_char_basis", e))?;

    let mut case = CaseFile {
        id: raw.id.clone(),
        citation: raw.citation.clone(),
        description: raw.description.clone(),
        path: None,
        ambient: ambient.clone(),
        space: space.clone(),
        datum: None,
        delta_prime: None,
        restriction: None,
        rk_xp: raw.rk_xp,
        expected: None,
        branching: None,
        well: None,
        expect_free: raw.expect_free,
        morphism: None,
    };

    match raw.kind {
        RawKind::Datum => {
            let rd = raw.datum.as_ref().ok_or_else(|| cx.err("datum", "missing for kind `datum`"))?;
            let datum = cx.datum("datum", &ambient, rd)?;
            let dp = match &raw.delta_prime {
                None => return Err(cx.err("delta_prime", "missing for kind `datum`")),
                Some(RawDeltaPrime::Auto(s)) if s == "auto" => DeltaPrime::Auto,
                Some(RawDeltaPrime::Auto(s)) => return Err(cx.err("delta_prime", format!("expected a list or \"auto\", found \"{s}\""))),
                Some(RawDeltaPrime::List(v)) => {
                    for (i, id) in v.iter().enumerate() {
                        datum.color(id).map_err(|e| cx.err(format!("delta_prime[{i}]"), e))?;
                    }
                    DeltaPrime::Explicit(v.clone())
                }
            };
            let rows = raw.restriction.as_ref().ok_or_else(|| cx.err("restriction", "missing for kind `datum`"))?;
            if rows.len() != n {
                return Err(cx.err("restriction", format!("expected {n} expressions, found {}", rows.len())));
            }
            let cols = rows
                .iter()
                .enumerate()
                .map(|(i, e)| cx.linear(&format!("restriction[{i}]"), e, &space.labels))
                .collect::<Result<Vec<_>, _>>()?;
            let restrict = transpose(&cols, space.dim());
            let boundary_root_of = match &raw.boundary_root_of {
                Some(m) => {
                    let mut out = BTreeMap::new();
                    for (id, x) in m {
                        let f = format!("boundary_root_of.{id}");
                        datum.color(id).map_err(|e| cx.err(&f, e))?;
                        out.insert(id.clone(), cx.index(&f, &ambient, x)?);
                    }
                    out
                }
                None => match &dp {
                    DeltaPrime::Explicit(v) => {
                        let ids: Vec<&str> = v.iter().map(String::as_str).collect();
                        derive_boundary_roots(&datum, &ids).map_err(|e| cx.err("delta_prime", e))?
                    }
                    DeltaPrime::Auto => BTreeMap::new(),
                },
            };
            case.restriction = Some(RestrictionContext { space: space.clone(), restrict, boundary_root_of });
            case.delta_prime = Some(dp);
            if let Some(g) = &raw.expected_generators {
                case.expected = Some(cx.generators("expected_generators", &ambient, &space, g)?);
            }
            if raw.generators.is_some() {
                return Err(cx.err("generators", "only allowed for kind `table`"));
            }
            if let Some(m) = &raw.morphism {
                let target = cx.datum("morphism.target", &ambient, &m.target)?;
                for (i, id) in m.delta_prime.iter().enumerate() {
                    datum.color(id).map_err(|e| cx.err(format!("morphism.delta_prime[{i}]"), e))?;
                }
                case.morphism = Some(MorphismSpec {
                    target,
                    delta_prime: m.delta_prime.clone(),
                    psi: m.psi.clone(),
                    expect: m.expect,
                    parabolic_in_h: m.parabolic_in_h,
                });
            }
            case.datum = Some(datum);
        }
        RawKind::Table => {
            for (name, present) in [
                ("datum", raw.datum.is_some()),
                ("delta_prime", raw.delta_prime.is_some()),
                ("restriction", raw.restriction.is_some()),
                ("expected_generators", raw.expected_generators.is_some()),
                ("morphism", raw.morphism.is_some()),
            ] {
                if present {
                    return Err(cx.err(name, "not allowed for kind `table`"));
                }
            }
            let g = raw.generators.as_ref().ok_or_else(|| cx.err("generators", "missing for kind `table`"))?;
            case.expected = Some(cx.generators("generators", &ambient, &space, g)?);
        }
    }

    if let Some(b) = &raw.branching_setup {
        let h = RootSystem::parse(&b.h_root_system).map_err(|e| cx.err("branching_setup.h_root_system", e))?;
        if b.torus_map.len() != n {
            return Err(cx.err("branching_setup.torus_map", format!("expected {n} expressions, found {}", b.torus_map.len())));
        }
        let cols = b
            .torus_map
            .iter()
            .enumerate()
            .map(|(i, e)| cx.linear(&format!("branching_setup.torus_map[{i}]"), e, &b.labels))
            .collect::<Result<Vec<_>, _>>()?;
        let m = transpose(&cols, b.labels.len());
        case.branching = Some(
            BranchingSetup::new(ambient.clone(), h, b.labels.clone(), m).map_err(|e| cx.err("branching_setup", e))?,
        );
    }

    if let Some(w) = &raw.well {
        let ids: BTreeSet<&str> = case
            .expected
            .as_ref()
            .map(|t| t.entries.iter().map(|e| e.id.as_str()).collect())
            .or_else(|| case.datum.as_ref().map(|d| d.colors.iter().map(|c| c.id.as_str()).collect()))
            .unwrap_or_default();
        for (i, id) in w.h_colors.iter().enumerate() {
            if !ids.contains(id.as_str()) {
                return Err(cx.err(format!("well.h_colors[{i}]"), format!("unknown color `{id}`")));
            }
        }
        let mut fixtures = Vec::new();
        for (i, f) in w.fixtures.iter().enumerate() {
            let chi = cx.linear(&format!("well.fixtures[{i}].chi"), &f.chi, &space.labels)?;
            let bottom = f
                .bottom
                .iter()
                .enumerate()
                .map(|(j, b)| cx.rats(&format!("well.fixtures[{i}].bottom[{j}]"), b, Some(n)))
                .collect::<Result<Vec<_>, _>>()?;
            fixtures.push(WellFixture { chi_text: f.chi.clone(), chi, bottom });
        }
        case.well = Some(WellSpec { h_colors: w.h_colors.clone(), center_dim: w.center_dim, fixtures });
    }

    if let Some(t) = &case.expected {
        if !t.independent() {
            let f = if raw.kind == RawKind::Table { "generators" } else { "expected_generators" };
            return Err(cx.err(f, "generators are linearly dependent"));
        }
    }
    Ok(case)
}

/// Reads and parses a case file.
pub fn load_case(path: &Path) -> Result<CaseFile, CaseError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CaseError { file: file.clone(), field: String::new(), message: e.to_string() })?;
    let mut c = parse_case(&text, &file)?;
    c.path = Some(path.to_path_buf());
    Ok(c)
}

/// All `*.json` files of a directory, sorted by name.
pub fn case_paths(dir: &Path) -> Result<Vec<PathBuf>, CaseError> {
    let err = |m: String| CaseError { file: dir.display().to_string(), field: String::new(), message: m };
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| err(e.to_string()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}

/// Loads every case of a directory.
pub fn load_dir(dir: &Path) -> Result<Vec<CaseFile>, CaseError> {
    case_paths(dir)?.iter().map(|p| load_case(p)).collect()
}
