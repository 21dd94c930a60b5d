//! Root systems of types A to G (Bourbaki numbering), products of them, and
//! exact weight-lattice arithmetic.
//!
//! The Cartan matrix is stored with the convention
//! `cartan[i][j] = <alpha_j, alpha_i^vee>`, so row `i` is the coroot
//! `alpha_i^vee` and column `j` is `alpha_j` written in fundamental weights.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{inverse, mat_vec, qi, Matrix, Q};
use crate::Error;

/// Irreducible Dynkin type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    /// `A_n`, `n >= 1`.
    A,
    /// `B_n`; `B_1` is accepted as `A_1`.
    B,
    /// `C_n`; `C_1` is accepted as `A_1` with a long root.
    C,
    /// `D_n`, `n >= 3`.
    D,
    /// `E_6`, `E_7`, `E_8`.
    E,
    /// `F_4`.
    F,
    /// `G_2`.
    G,
}

impl DynkinType {
    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => DynkinType::A,
            'B' => DynkinType::B,
            'C' => DynkinType::C,
            'D' => DynkinType::D,
            'E' => DynkinType::E,
            'F' => DynkinType::F,
            'G' => DynkinType::G,
            _ => return None,
        })
    }

    fn letter(self) -> char {
        match self {
            DynkinType::A => 'A',
            DynkinType::B => 'B',
            DynkinType::C => 'C',
            DynkinType::D => 'D',
            DynkinType::E => 'E',
            DynkinType::F => 'F',
            DynkinType::G => 'G',
        }
    }

    fn valid_rank(self, n: usize) -> bool {
        match self {
            DynkinType::A => n >= 1,
            DynkinType::B | DynkinType::C => n >= 1,
            DynkinType::D => n >= 3,
            DynkinType::E => (6..=8).contains(&n),
            DynkinType::F => n == 4,
            DynkinType::G => n == 2,
        }
    }
}

/// Bourbaki Cartan matrix of one irreducible factor, `m[i][j] = <alpha_j, alpha_i^vee>`.
pub fn irreducible_cartan(t: DynkinType, n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    match t {
        DynkinType::A | DynkinType::B | DynkinType::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        DynkinType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        DynkinType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        DynkinType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        DynkinType::G => link(0, 1),
    }
    match t {
        DynkinType::B | DynkinType::C if n < 2 => {}
        // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        DynkinType::B => m[n - 1][n - 2] = -2,
        // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
        DynkinType::C => m[n - 2][n - 1] = -2,
        // alpha_2 long, alpha_3 short
        DynkinType::F => m[2][1] = -2,
        // alpha_1 short
        DynkinType::G => m[0][1] = -3,
        _ => {}
    }
    m
}

/// Half squared lengths `(alpha_i, alpha_i) / 2` with short roots normalized to 1.
fn irreducible_symmetrizer(t: DynkinType, n: usize) -> Vec<i64> {
    match t {
        DynkinType::B => (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect(),
        DynkinType::C => (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect(),
        DynkinType::F => vec![2, 2, 1, 1],
        DynkinType::G => vec![1, 3],
        _ => vec![1; n],
    }
}

/// Basis in which a weight's coordinates are expressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// Coordinates with respect to the fundamental weights.
    Fundamental,
    /// Coordinates with respect to the simple roots.
    Root,
}

/// A rational weight together with the basis of its coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    /// Coordinates.
    pub coords: Vec<Q>,
    /// Basis tag.
    pub basis: Basis,
}

impl Weight {
    /// Weight in the fundamental basis.
    pub fn fundamental(coords: Vec<Q>) -> Self {
        Weight { coords, basis: Basis::Fundamental }
    }

    /// Weight in the simple-root basis.
    pub fn root(coords: Vec<Q>) -> Self {
        Weight { coords, basis: Basis::Root }
    }

    /// Weight in the fundamental basis from integer coordinates.
    pub fn fundamental_int(coords: &[i64]) -> Self {
        Self::fundamental(coords.iter().map(|&x| qi(x)).collect())
    }

    /// Weight in the root basis from integer coordinates.
    pub fn root_int(coords: &[i64]) -> Self {
        Self::root(coords.iter().map(|&x| qi(x)).collect())
    }
}

/// A product of irreducible root systems with a flat index space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    factors: Vec<(DynkinType, usize)>,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    names: Vec<String>,
    cartan_q: Matrix,
    cartan_inv: Matrix,
    positive: Vec<Vec<i64>>,
}

/// Builds the root system of a product of irreducible types.
pub fn build_root_system(spec: &[(DynkinType, usize)]) -> Result<RootSystem, Error> {
    RootSystem::new(spec)
}

impl RootSystem {
    /// Builds the root system of a product of irreducible types, in the
    /// given factor order.
    pub fn new(spec: &[(DynkinType, usize)]) -> Result<Self, Error> {
        let rank: usize = spec.iter().map(|f| f.1).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut sym = Vec::with_capacity(rank);
        let mut names = Vec::with_capacity(rank);
        let mut off = 0;
        for (k, &(t, n)) in spec.iter().enumerate() {
            if !t.valid_rank(n) {
                return Err(Error::InvalidRootSystem(format!("{}{}", t.letter(), n)));
            }
            let block = irreducible_cartan(t, n);
            for i in 0..n {
                for j in 0..n {
                    cartan[off + i][off + j] = block[i][j];
                }
                names.push(format!("{}{}", i + 1, "'".repeat(k)));
            }
            sym.extend(irreducible_symmetrizer(t, n));
            off += n;
        }
        let cartan_q: Matrix = cartan
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect();
        let cartan_inv = if rank == 0 {
            Vec::new()
        } else {
            inverse(&cartan_q).expect("Cartan matrices are invertible")
        };
        let mut rs = RootSystem {
            factors: spec.to_vec(),
            cartan,
            sym,
            names,
            cartan_q,
            cartan_inv,
            positive: Vec::new(),
        };
        rs.positive = rs.close_positive_roots();
        Ok(rs)
    }

    /// Parses strings such as `"A3"`, `"C2xC1"` or `"D5"`.
    pub fn parse(spec: &str) -> Result<Self, Error> {
        let mut factors = Vec::new();
        for part in spec.split(['x', 'X', '*', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let t = chars
                .next()
                .and_then(DynkinType::from_char)
                .ok_or_else(|| Error::InvalidRootSystem(spec.to_string()))?;
            let n: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidRootSystem(spec.to_string()))?;
            factors.push((t, n));
        }
        Self::new(&factors)
    }

    /// The factor list.
    pub fn factors(&self) -> &[(DynkinType, usize)] {
        &self.factors
    }

    /// Total rank.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `<alpha_j, alpha_i^vee>`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Full Cartan matrix, `[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Half squared length of each simple root (short roots have 1).
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    /// Display suffix of simple root `i`, for example `"2'"`.
    pub fn index_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Looks up a simple-root index from its display suffix.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Display string such as `"2*ω1 + ω3'"` for fundamental coordinates.
    pub fn format_fundamental(&self, coords: &[Q]) -> String {
        format_combination(coords, |i| format!("ω{}", self.names[i]))
    }

    /// Display string for simple-root coordinates.
    pub fn format_root(&self, coords: &[Q]) -> String {
        format_combination(coords, |i| format!("α{}", self.names[i]))
    }

    fn check_len(&self, w: &Weight) -> Result<(), Error> {
        if w.coords.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "weight has {} coordinates, root system has rank {}",
                w.coords.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// The simple root `alpha_i` in the root basis.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::root(crate::linalg::unit(self.rank(), i))
    }

    /// The fundamental weight `omega_i` in the fundamental basis.
    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(crate::linalg::unit(self.rank(), i))
    }

    /// Fundamental coordinates of root coordinates: `f = C r`.
    pub fn root_to_fundamental(&self, r: &[Q]) -> Vec<Q> {
        mat_vec(&self.cartan_q, r)
    }

    /// Root coordinates of fundamental coordinates: `r = C^-1 f`.
    pub fn fundamental_to_root(&self, f: &[Q]) -> Vec<Q> {
        mat_vec(&self.cartan_inv, f)
    }

    /// Fundamental coordinates of `w`.
    pub fn to_fundamental(&self, w: &Weight) -> Result<Vec<Q>, Error> {
        self.check_len(w)?;
        Ok(match w.basis {
            Basis::Fundamental => w.coords.clone(),
            Basis::Root => self.root_to_fundamental(&w.coords),
        })
    }

    /// Root coordinates of `w`.
    pub fn to_root(&self, w: &Weight) -> Result<Vec<Q>, Error> {
        self.check_len(w)?;
        Ok(match w.basis {
            Basis::Fundamental => self.fundamental_to_root(&w.coords),
            Basis::Root => w.coords.clone(),
        })
    }

    /// Re-expresses `w` in `basis`.
    pub fn convert(&self, w: &Weight, basis: Basis) -> Result<Weight, Error> {
        let coords = match basis {
            Basis::Fundamental => self.to_fundamental(w)?,
            Basis::Root => self.to_root(w)?,
        };
        Ok(Weight { coords, basis })
    }

    /// `<lambda, alpha_i^vee>`.
    pub fn pair(&self, w: &Weight, i: usize) -> Result<Q, Error> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        self.check_len(w)?;
        Ok(match w.basis {
            Basis::Fundamental => w.coords[i].clone(),
            Basis::Root => crate::linalg::dot(&self.cartan_q[i], &w.coords),
        })
    }

    /// True iff `mu - lambda` is a non-negative integer combination of simple roots.
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> Result<bool, Error> {
        let a = self.to_root(lambda)?;
        let b = self.to_root(mu)?;
        Ok(a.iter()
            .zip(&b)
            .all(|(x, y)| {
                let d = y - x;
                d.is_integer() && !d.is_negative()
            }))
    }

    /// Positive roots in simple-root coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    fn close_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut level: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut out = Vec::new();
        while !level.is_empty() {
            for r in &level {
                all.insert(r.clone());
            }
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for beta in &level {
                for i in 0..n {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if down[i] < 0 || !all.contains(&down) {
                            break;
                        }
                        p += 1;
                    }
                    let pairing: i64 = (0..n).map(|j| self.cartan[i][j] * beta[j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            out.append(&mut level);
            level = next.into_iter().collect();
        }
        out
    }

    /// Half squared length `(beta, beta) / 2` of a root given in root coordinates.
    pub fn half_norm(&self, beta: &[i64]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for j in 0..n {
            if beta[j] != 0 {
                let pairing: i64 = (0..n).map(|k| self.cartan[j][k] * beta[k]).sum();
                s += qi(beta[j] * self.sym[j] * pairing);
            }
        }
        s / qi(2)
    }

    /// `<lambda, beta^vee>` for `lambda` in fundamental coordinates and a root
    /// `beta` in root coordinates.
    pub fn pair_coroot(&self, lambda_f: &[Q], beta: &[i64]) -> Q {
        let mut s = Q::zero();
        for (j, &k) in beta.iter().enumerate() {
            if k != 0 {
                s += &lambda_f[j] * qi(k * self.sym[j]);
            }
        }
        s / self.half_norm(beta)
    }

    /// Invariant form `(lambda, mu)` on fundamental coordinates, normalized
    /// so that short roots have squared length 2.
    pub fn inner(&self, lambda_f: &[Q], mu_f: &[Q]) -> Q {
        let mu_r = self.fundamental_to_root(mu_f);
        let mut s = Q::zero();
        for j in 0..self.rank() {
            s += &lambda_f[j] * &mu_r[j] * qi(self.sym[j]);
        }
        s
    }

    /// True when all fundamental coordinates are non-negative integers.
    pub fn is_dominant_integral(&self, w: &Weight) -> Result<bool, Error> {
        let f = self.to_fundamental(w)?;
        Ok(f.iter().all(|x| x.is_integer() && !x.is_negative()))
    }

    /// Dimension of the irreducible representation with highest weight `w`,
    /// by the Weyl dimension formula.
    pub fn weyl_dimension(&self, w: &Weight) -> Result<BigInt, Error> {
        if !self.is_dominant_integral(w)? {
            return Err(Error::NotDominantIntegral);
        }
        let f = self.to_fundamental(w)?;
        let mut num = Q::one();
        let mut den = Q::one();
        for beta in &self.positive {
            let lr: Vec<Q> = f.iter().map(|x| x + Q::one()).collect();
            let rho = vec![Q::one(); self.rank()];
            num *= self.pair_coroot(&lr, beta);
            den *= self.pair_coroot(&rho, beta);
        }
        let d = num / den;
        debug_assert!(d.is_integer());
        Ok(d.to_integer())
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (t, n)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{}{}", t.letter(), n)?;
        }
        Ok(())
    }
}

/// Formats `sum c_i * name(i)` compactly; the empty sum is `"0"`.
pub fn format_combination(coords: &[Q], name: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&format!("{}*", a));
        }
        out.push_str(&name(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
