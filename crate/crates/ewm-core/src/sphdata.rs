//! Homogeneous spherical data: `S^p`, spherical roots, the lattice `Xi`,
//! colors and the Cartan pairing.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::{dot, rank, solve_vec, to_integers, transpose, unit, Solution, Q};
use crate::rootlat::{RootSystem, Weight};
use crate::Error;

/// A color: a `B`-stable prime divisor, recorded by the simple roots moving
/// it and its Cartan pairing with the spherical roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    /// Identifier such as `"D1+"`.
    pub id: String,
    /// Simple-root indices moving the color.
    pub moved_by: BTreeSet<usize>,
    /// `c(D, sigma)` for each spherical root, in order.
    pub pairing: Vec<Q>,
    /// Optional values of `rho(D)` on the basis of `Xi`.
    pub rho: Option<Vec<Q>>,
}

impl Color {
    /// Builds a color without an explicit `rho`.
    pub fn new(id: &str, moved_by: &[usize], pairing: Vec<Q>) -> Self {
        Color {
            id: id.into(),
            moved_by: moved_by.iter().copied().collect(),
            pairing,
            rho: None,
        }
    }
}

/// The quintuple of a spherical homogeneous space, with `A` left implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalDatum {
    /// Ambient root system.
    pub ambient: RootSystem,
    /// Simple roots moving no color.
    pub sp: BTreeSet<usize>,
    /// Spherical roots in the simple-root basis.
    pub sigma: Vec<Weight>,
    /// Basis of `Xi` in the simple-root basis; `None` means the span of `sigma`.
    pub xi_basis: Option<Vec<Weight>>,
    /// Colors.
    pub colors: Vec<Color>,
    /// Whether the datum is declared wonderful.
    pub wonderful: bool,
}

/// One failed invariant found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl SphericalDatum {
    /// Spherical roots in root coordinates (converting if needed).
    pub fn sigma_root_coords(&self) -> Vec<Vec<Q>> {
        self.sigma
            .iter()
            .map(|s| self.ambient.to_root(s).expect("validated lengths"))
            .collect()
    }

    /// Basis of `Xi` in root coordinates.
    pub fn xi_root_coords(&self) -> Vec<Vec<Q>> {
        match &self.xi_basis {
            Some(b) => b
                .iter()
                .map(|s| self.ambient.to_root(s).expect("validated lengths"))
                .collect(),
            None => self.sigma_root_coords(),
        }
    }

    /// Rank of `Xi`.
    pub fn xi_rank(&self) -> usize {
        rank(&self.xi_root_coords(), self.ambient.rank())
    }

    /// Coordinates of `v` (root coordinates) in the basis of `Xi`, if `v`
    /// lies in its rational span.
    pub fn xi_coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let basis = self.xi_root_coords();
        let a = transpose(&basis, self.ambient.rank());
        match solve_vec(&a, basis.len(), v) {
            Solution::Unique(x) => x.into_iter().next(),
            _ => None,
        }
    }

    /// Index of a color.
    pub fn color_index(&self, id: &str) -> Result<usize, Error> {
        self.colors
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownColor(id.into()))
    }

    /// Color by id.
    pub fn color(&self, id: &str) -> Result<&Color, Error> {
        Ok(&self.colors[self.color_index(id)?])
    }

    /// Ids of the colors moved by the simple root `alpha`.
    pub fn colors_moved_by(&self, alpha: usize) -> Vec<&str> {
        self.colors
            .iter()
            .filter(|c| c.moved_by.contains(&alpha))
            .map(|c| c.id.as_str())
            .collect()
    }

    /// `c(D, sigma_k)`.
    pub fn cartan_pairing(&self, id: &str, k: usize) -> Result<Q, Error> {
        let c = self.color(id)?;
        c.pairing.get(k).cloned().ok_or(Error::IndexOutOfRange {
            index: k,
            rank: self.sigma.len(),
        })
    }

    /// Whether the simple root `alpha` is itself a spherical root.
    pub fn simple_root_is_spherical(&self, alpha: usize) -> bool {
        let e = unit(self.ambient.rank(), alpha);
        self.sigma_root_coords().iter().any(|s| *s == e)
    }

    /// Whether `2 alpha` is a spherical root.
    pub fn double_root_is_spherical(&self, alpha: usize) -> bool {
        let mut e = unit(self.ambient.rank(), alpha);
        e[alpha] = crate::linalg::qi(2);
        self.sigma_root_coords().iter().any(|s| *s == e)
    }

    /// Human-readable name of spherical root `k`.
    pub fn sigma_name(&self, k: usize) -> String {
        self.ambient.format_root(&self.sigma_root_coords()[k])
    }
}

/// Checks the color-moving rules, primitivity of spherical roots in `Xi`,
/// shape constraints, and consistency of optional `rho` values.
pub fn validate(d: &SphericalDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = d.ambient.rank();
    let mut push = |s: String| out.push(Violation(s));

    for (k, s) in d.sigma.iter().enumerate() {
        if s.coords.len() != n {
            push(format!("spherical root #{} has {} coordinates, expected {}", k + 1, s.coords.len(), n));
        }
    }
    if let Some(xb) = &d.xi_basis {
        for (k, s) in xb.iter().enumerate() {
            if s.coords.len() != n {
                push(format!("Xi basis vector #{} has wrong length", k + 1));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut push = |s: String| out.push(Violation(s));

    let mut seen = BTreeSet::new();
    for c in &d.colors {
        if !seen.insert(c.id.clone()) {
            push(format!("duplicate color id `{}`", c.id));
        }
        if c.moved_by.is_empty() {
            push(format!("color `{}` is moved by no simple root", c.id));
        }
        if let Some(&a) = c.moved_by.iter().find(|&&a| a >= n) {
            push(format!("color `{}` moved by out-of-range root index {}", c.id, a + 1));
        }
        if c.pairing.len() != d.sigma.len() {
            push(format!(
                "color `{}` has {} pairing values for {} spherical roots",
                c.id,
                c.pairing.len(),
                d.sigma.len()
            ));
        }
    }
    for &a in &d.sp {
        if a >= n {
            push(format!("S^p contains out-of-range index {}", a + 1));
        }
    }

    let xi = d.xi_root_coords();
    let xi_rank = rank(&xi, n);
    if xi_rank != xi.len() {
        push(format!("Xi basis has {} vectors but rank {}", xi.len(), xi_rank));
    }

    for alpha in 0..n {
        let name = d.ambient.index_name(alpha);
        let moved = d.colors_moved_by(alpha).len();
        let in_sigma = d.simple_root_is_spherical(alpha);
        let in_sp = d.sp.contains(&alpha);
        let expected = if in_sigma {
            2
        } else if in_sp {
            0
        } else {
            1
        };
        if in_sigma && in_sp {
            push(format!("α{name} lies in both S^p and Σ"));
        }
        if moved != expected {
            let reason = if in_sigma {
                "∈ S∩Σ"
            } else if in_sp {
                "∈ S^p"
            } else {
                "∉ Σ∪S^p"
            };
            push(format!("α{name} {reason} moves {moved} colors, expected {expected}"));
        }
    }

    for (k, s) in d.sigma_root_coords().iter().enumerate() {
        let label = d.sigma_name(k);
        match d.xi_coords(s) {
            None => push(format!("spherical root {label} is not in the span of Xi")),
            Some(x) => match to_integers(&x) {
                None => push(format!("spherical root {label} is not in the lattice Xi")),
                Some(ints) => {
                    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
                    if !g.is_one() {
                        push(format!("σ not primitive: {label} is {g} times a lattice vector"));
                    }
                }
            },
        }
    }

    if d.wonderful {
        let sig = d.sigma_root_coords();
        if rank(&sig, n) != sig.len() {
            push("datum flagged wonderful but Σ is linearly dependent".into());
        }
        if sig.len() != xi_rank {
            push(format!("datum flagged wonderful but |Σ| = {} ≠ rk Ξ = {}", sig.len(), xi_rank));
        }
    }

    for c in &d.colors {
        let Some(rho) = &c.rho else { continue };
        if rho.len() != xi.len() {
            push(format!("color `{}` has rho of wrong length", c.id));
            continue;
        }
        for (k, s) in d.sigma_root_coords().iter().enumerate() {
            if let (Some(x), Some(p)) = (d.xi_coords(s), c.pairing.get(k)) {
                if dot(&x, rho) != *p {
                    push(format!(
                        "color `{}`: rho on {} gives {}, pairing table says {}",
                        c.id,
                        d.sigma_name(k),
                        dot(&x, rho),
                        p
                    ));
                }
            }
        }
    }
    out
}
