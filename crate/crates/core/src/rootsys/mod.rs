//! Root systems of finite groups of Lie type and the lattice data attached to
//! a choice of isogeny type.
//!
//! Conventions: Bourbaki numbering of simple roots, and the Cartan matrix
//! `a_ij = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`.
//! Roots are integer vectors in simple-root coordinates. Lattices are given by
//! a basis of the cocharacter lattice in fundamental-coweight coordinates, so
//! the coordinates of a root `c` in the dual (character) basis are `B c`.

pub mod snf;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::ffq::PrimePower;
use crate::invalg::{AlgebraSpec, GeneratorSpec, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub kind: LieType,
    pub rank: usize,
}

impl Component {
    pub fn new(kind: LieType, rank: usize) -> Result<Self> {
        let ok = match kind {
            LieType::A => rank >= 1,
            LieType::B | LieType::C => rank >= 2,
            LieType::D => rank >= 3,
            LieType::E => (6..=8).contains(&rank),
            LieType::F => rank == 4,
            LieType::G => rank == 2,
        };
        if !ok {
            return invalid(format!("no root system of type {kind:?}{rank}"));
        }
        Ok(Component { kind, rank })
    }

    /// Excluded from the characteristic-2 vanishing bound: every coefficient of
    /// the highest root is at least 2.
    pub fn is_excluded(&self) -> bool {
        matches!((self.kind, self.rank), (LieType::E, 8) | (LieType::F, 4) | (LieType::G, 2))
    }

    /// Integer Gram matrix of the simple roots (scaled so all entries are integral).
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let mut link = |i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.kind {
            LieType::A => {
                for i in 0..n - 1 {
                    link(i, i + 1, -1);
                }
            }
            LieType::B => {
                for i in 0..n - 1 {
                    link(i, i + 1, -2);
                }
            }
            LieType::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 2, n - 1, -2);
            }
            LieType::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 3, n - 1, -1);
            }
            LieType::E => {
                link(0, 2, -1);
                link(1, 3, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1);
                }
            }
            LieType::F => {
                link(0, 1, -2);
                link(1, 2, -2);
                link(2, 3, -1);
            }
            LieType::G => link(0, 1, -3),
        }
        let lengths: Vec<i64> = match self.kind {
            LieType::A | LieType::D | LieType::E => vec![2; n],
            LieType::B => (0..n).map(|i| if i + 1 < n { 4 } else { 2 }).collect(),
            LieType::C => (0..n).map(|i| if i + 1 < n { 2 } else { 4 }).collect(),
            LieType::F => vec![4, 4, 2, 2],
            LieType::G => vec![2, 6],
        };
        for (i, &l) in lengths.iter().enumerate() {
            g[i][i] = l;
        }
        g
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => LieType::A,
            Some('B') => LieType::B,
            Some('C') => LieType::C,
            Some('D') => LieType::D,
            Some('E') => LieType::E,
            Some('F') => LieType::F,
            Some('G') => LieType::G,
            _ => return invalid(format!("unknown root system type `{s}`")),
        };
        let rank = chars.as_str().parse().map_err(|_| Error::InvalidInput(format!("missing rank in `{s}`")))?;
        Component::new(kind, rank)
    }
}

/// Parses `"A2,B3"` into components.
pub fn parse_components(s: &str) -> Result<Vec<Component>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Long,
    Short,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub component: usize,
    pub length_class: LengthClass,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    components: Vec<Component>,
    offsets: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    roots: Vec<Root>,
}

/// Positive roots by closing the simple roots under simple reflections.
pub fn build_root_system(components: &[Component]) -> Result<RootSystem> {
    if components.is_empty() {
        return invalid("empty root system");
    }
    let n: usize = components.iter().map(|c| c.rank).sum();
    let mut gram = vec![vec![0i64; n]; n];
    let mut offsets = Vec::new();
    let mut off = 0;
    for c in components {
        let g = c.gram();
        for i in 0..c.rank {
            for j in 0..c.rank {
                gram[off + i][off + j] = g[i][j];
            }
        }
        offsets.push(off);
        off += c.rank;
    }
    let cartan: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect()).collect();

    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    let mut found = Vec::new();
    while let Some(beta) = queue.pop_front() {
        for s in 0..n {
            let pairing: i64 = (0..n).map(|t| beta[t] * cartan[s][t]).sum();
            if pairing == 0 {
                continue;
            }
            let mut next = beta.clone();
            next[s] -= pairing;
            if next.iter().all(|&c| c >= 0) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        found.push(beta);
    }
    let component_of = |coords: &[i64]| {
        let first = coords.iter().position(|&c| c != 0).expect("nonzero root");
        offsets.iter().rposition(|&o| o <= first).expect("offset")
    };
    let norm = |c: &[i64]| -> i64 { (0..n).map(|i| (0..n).map(|j| c[i] * gram[i][j] * c[j]).sum::<i64>()).sum() };
    let mut max_norm = vec![0i64; components.len()];
    for r in &found {
        let k = component_of(r);
        max_norm[k] = max_norm[k].max(norm(r));
    }
    let mut roots: Vec<Root> = found
        .into_iter()
        .map(|coords| {
            let component = component_of(&coords);
            let length_class = if norm(&coords) == max_norm[component] { LengthClass::Long } else { LengthClass::Short };
            Root { coords, component, length_class }
        })
        .collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coords.cmp(&a.coords)));
    Ok(RootSystem { components: components.to_vec(), offsets, cartan, gram, roots })
}

impl RootSystem {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn simple_count(&self) -> usize {
        self.cartan.len()
    }

    /// Highest root of component `k`.
    pub fn highest_root(&self, k: usize) -> &Root {
        self.roots.iter().filter(|r| r.component == k).max_by_key(|r| r.height()).expect("nonempty component")
    }

    /// Looks up a root (positive or negative) by its coordinates.
    pub fn find_root(&self, coords: &[i64]) -> Result<&Root> {
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.roots
            .iter()
            .find(|r| r.coords == coords || r.coords == neg)
            .ok_or_else(|| Error::InvalidInput(format!("{coords:?} is not a root")))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "components": self.components.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "cartan": self.cartan,
            "positive_roots": self.roots.iter().map(|r| &r.coords).collect::<Vec<_>>(),
            "heights": self.roots.iter().map(Root::height).collect::<Vec<_>>(),
            "length_classes": self.roots.iter().map(|r| r.length_class).collect::<Vec<_>>(),
        })
    }
}

/// Classical count of positive roots.
pub fn expected_positive_root_count(c: &Component) -> usize {
    let n = c.rank;
    match (c.kind, n) {
        (LieType::A, _) => n * (n + 1) / 2,
        (LieType::B | LieType::C, _) => n * n,
        (LieType::D, _) => n * (n - 1),
        (LieType::E, 6) => 36,
        (LieType::E, 7) => 63,
        (LieType::E, _) => 120,
        (LieType::F, _) => 24,
        (LieType::G, _) => 6,
    }
}

/// Classical Coxeter number.
pub fn expected_coxeter_number(c: &Component) -> i64 {
    let n = c.rank as i64;
    match (c.kind, n) {
        (LieType::A, _) => n + 1,
        (LieType::B | LieType::C, _) => 2 * n,
        (LieType::D, _) => 2 * n - 2,
        (LieType::E, 6) => 12,
        (LieType::E, 7) => 18,
        (LieType::E, _) => 30,
        (LieType::F, _) => 12,
        (LieType::G, _) => 6,
    }
}

/// Max height + 1, per component.
pub fn coxeter_number(rs: &RootSystem) -> Vec<(Component, i64)> {
    (0..rs.components.len()).map(|k| (rs.components[k], rs.highest_root(k).height() + 1)).collect()
}

/// `p` divides no coefficient of any positive root.
pub fn is_good_prime(rs: &RootSystem, p: u64) -> bool {
    rs.roots.iter().all(|r| r.coords.iter().all(|&c| c == 0 || c % p as i64 != 0))
}

/// Per component, the smallest 1-based local index `s` whose coefficient in
/// the highest root is 1.
pub fn coweight_one_witness(rs: &RootSystem) -> Vec<(Component, Option<usize>)> {
    (0..rs.components.len())
        .map(|k| {
            let c = rs.components[k];
            let hr = rs.highest_root(k);
            let off = rs.offsets[k];
            (c, (0..c.rank).find(|&s| hr.coords[off + s] == 1).map(|s| s + 1))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Adjoint,
    SimplyConnected,
    Custom,
}

/// Cocharacter lattice, basis rows in fundamental-coweight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub basis: Vec<Vec<i64>>,
}

impl LatticeSpec {
    /// The coweight lattice itself.
    pub fn adjoint(rs: &RootSystem) -> Self {
        let n = rs.simple_count();
        LatticeSpec {
            kind: LatticeKind::Adjoint,
            basis: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    /// The coroot lattice: row `i` is `alpha_i^vee = sum_j a_ij omega_j^vee`.
    pub fn simply_connected(rs: &RootSystem) -> Self {
        LatticeSpec { kind: LatticeKind::SimplyConnected, basis: rs.cartan.clone() }
    }

    /// Checks that `basis` spans a lattice between the coroot and coweight
    /// lattices.
    pub fn custom(rs: &RootSystem, basis: Vec<Vec<i64>>) -> Result<Self> {
        let spec = LatticeSpec { kind: LatticeKind::Custom, basis };
        spec.validate(rs)?;
        Ok(spec)
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        let n = rs.simple_count();
        if self.basis.len() != n || self.basis.iter().any(|row| row.len() != n) {
            return invalid(format!("lattice basis must be {n}x{n}"));
        }
        let det = snf::determinant(&self.basis);
        if det == 0 {
            return Err(Error::SingularBasis);
        }
        // coroots in the lattice: cartan * basis^{-1} integral
        let adj = snf::adjugate(&self.basis);
        for row in &rs.cartan {
            for j in 0..n {
                let v: i128 = (0..n).map(|k| row[k] as i128 * adj[k][j]).sum();
                if v % det != 0 {
                    return invalid("lattice does not contain the coroot lattice");
                }
            }
        }
        Ok(())
    }

    /// Coordinates of the root `coords` in the character basis dual to this
    /// lattice basis.
    pub fn character_coords(&self, coords: &[i64]) -> Vec<i64> {
        self.basis.iter().map(|row| row.iter().zip(coords).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Exponent of (coweight lattice) / (cocharacter lattice).
pub fn cofundamental_exponent(rs: &RootSystem, lattice: &LatticeSpec) -> Result<i64> {
    lattice.validate(rs)?;
    snf::quotient_exponent(&lattice.basis)
}

/// Whether the root is divisible by `n` in the character lattice.
pub fn root_divisibility(rs: &RootSystem, lattice: &LatticeSpec, root: &[i64], n: i64) -> Result<bool> {
    if n < 1 {
        return invalid("divisor must be positive");
    }
    lattice.validate(rs)?;
    rs.find_root(root)?;
    Ok(lattice.character_coords(root).iter().all(|c| c % n == 0))
}

/// Index of the image of the root's character `T -> F_q^x`.
pub fn root_action_index(rs: &RootSystem, lattice: &LatticeSpec, root: &[i64], q: u64) -> Result<u64> {
    let pp = PrimePower::from_q(q)?;
    lattice.validate(rs)?;
    rs.find_root(root)?;
    let g = lattice.character_coords(root).iter().fold(0u64, |acc, &c| gcd(acc, c.unsigned_abs()));
    Ok(gcd(pp.units(), g))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A reduced fraction `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub num: u64,
    pub den: u64,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `r / gcd(e, 2^r - 1)` with `e` the cofundamental exponent.
pub fn char2_vanishing_bound(rs: &RootSystem, lattice: &LatticeSpec, r: u32) -> Result<Bound> {
    if let Some(c) = rs.components.iter().find(|c| c.is_excluded()) {
        return Err(Error::ExcludedComponent(c.to_string()));
    }
    let pp = PrimePower::new(2, r)?;
    let e = cofundamental_exponent(rs, lattice)? as u64;
    let g = gcd(e, pp.units());
    let (num, den) = (r as u64, g);
    let h = gcd(num, den);
    Ok(Bound { num: num / h, den: den / h })
}

/// `H*(gr U; F_q)` for the unipotent radical of a Borel subgroup: one generator
/// family per positive root and Frobenius twist `k`, torus weight
/// `p^k * (B c) mod q-1`.
pub fn lie_gr_algebra(rs: &RootSystem, lattice: &LatticeSpec, p: u64, r: u32) -> Result<AlgebraSpec> {
    let pp = PrimePower::new(p, r)?;
    lattice.validate(rs)?;
    let m = pp.units() as i64;
    let mut gens = Vec::new();
    for (a, root) in rs.roots.iter().enumerate() {
        let chi = lattice.character_coords(&root.coords);
        for k in 0..r {
            let twist = (p as i64).pow(k) % m.max(1);
            let w: Vec<i64> = chi.iter().map(|&c| (c.rem_euclid(m) * twist) % m).collect();
            let tag = format!("{:?} k={k}", root.coords);
            if p == 2 {
                gens.push(GeneratorSpec::new(format!("z_{}_{k}", a + 1), Parity::Polynomial, 1, w, tag));
            } else {
                gens.push(GeneratorSpec::new(format!("x_{}_{k}", a + 1), Parity::Exterior, 1, w.clone(), tag.clone()));
                gens.push(GeneratorSpec::new(format!("y_{}_{k}", a + 1), Parity::Polynomial, 2, w, tag));
            }
        }
    }
    AlgebraSpec::new(pp, vec![pp.units(); rs.simple_count()], p == 2, gens)
}
