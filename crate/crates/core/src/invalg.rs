//! Free graded-commutative algebras with torus weights.
//!
//! An [`AlgebraSpec`] is an exterior algebra on degree-1 generators tensored
//! with a polynomial algebra (degree 2, or degree 1 in characteristic 2), where
//! each generator carries a torus weight modulo per-coordinate moduli. The
//! monomials are a weight eigenbasis, so the invariant subspace in each degree is
//! spanned by the invariant monomials; everything here is counting those.
//!
//! Canonical order: monomials are compared as dense exponent vectors in
//! generator order, larger exponent first (so `x0^2 < x0*x1 < x1^2`). Every list
//! returned by this module is sorted that way.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::ffq::{Fq, FqElement, PrimePower};

/// Default cap on the number of monomials a single enumeration may visit.
pub const DEFAULT_MONOMIAL_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Exterior,
    Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub id: String,
    pub parity: Parity,
    pub degree: u32,
    pub weight: Vec<i64>,
    pub tag: String,
}

impl GeneratorSpec {
    pub fn new(id: impl Into<String>, parity: Parity, degree: u32, weight: Vec<i64>, tag: impl Into<String>) -> Self {
        GeneratorSpec { id: id.into(), parity, degree, weight, tag: tag.into() }
    }
}

/// A torus character, one residue per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusWeight {
    pub coords: Vec<u64>,
}

impl TorusWeight {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

#[derive(Deserialize)]
struct RawAlgebraSpec {
    field: PrimePower,
    torus_rank: usize,
    moduli: Vec<u64>,
    char2_mode: bool,
    generators: Vec<GeneratorSpec>,
}

/// The combinatorial model of `H*(V; F_q)` for an `F_q`-vector space `V` with a
/// diagonal torus action.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebraSpec")]
pub struct AlgebraSpec {
    field: PrimePower,
    torus_rank: usize,
    moduli: Vec<u64>,
    char2_mode: bool,
    generators: Vec<GeneratorSpec>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.torus_rank == other.torus_rank
            && self.moduli == other.moduli
            && self.char2_mode == other.char2_mode
            && self.generators == other.generators
    }
}

impl TryFrom<RawAlgebraSpec> for AlgebraSpec {
    type Error = Error;
    fn try_from(raw: RawAlgebraSpec) -> Result<Self> {
        if raw.moduli.len() != raw.torus_rank {
            return invalid(format!(
                "torus_rank is {} but {} moduli were given",
                raw.torus_rank,
                raw.moduli.len()
            ));
        }
        AlgebraSpec::new(raw.field, raw.moduli, raw.char2_mode, raw.generators)
    }
}

impl AlgebraSpec {
    /// Validates and normalises: weights are reduced into `[0, modulus)`.
    pub fn new(
        field: PrimePower,
        moduli: Vec<u64>,
        char2_mode: bool,
        mut generators: Vec<GeneratorSpec>,
    ) -> Result<Self> {
        if char2_mode != (field.p() == 2) {
            return invalid("char2_mode must be set exactly when p = 2");
        }
        let units = field.units();
        if let Some(m) = moduli.iter().find(|&&m| m == 0 || units % m != 0) {
            return invalid(format!("modulus {m} does not divide q-1 = {units}"));
        }
        let mut index = HashMap::new();
        for (i, g) in generators.iter_mut().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return invalid(format!("duplicate generator id `{}`", g.id));
            }
            if g.weight.len() != moduli.len() {
                return invalid(format!("generator `{}` has weight of length {}", g.id, g.weight.len()));
            }
            let expected_degree = match (g.parity, char2_mode) {
                (Parity::Exterior, true) => {
                    return invalid(format!("generator `{}`: no exterior generators when p = 2", g.id))
                }
                (Parity::Exterior, false) => 1,
                (Parity::Polynomial, true) => 1,
                (Parity::Polynomial, false) => 2,
            };
            if g.degree != expected_degree {
                return invalid(format!("generator `{}` must have degree {expected_degree}", g.id));
            }
            for (w, &m) in g.weight.iter_mut().zip(&moduli) {
                *w = w.rem_euclid(m as i64);
            }
        }
        Ok(AlgebraSpec { field, torus_rank: moduli.len(), moduli, char2_mode, generators, index })
    }

    pub fn field(&self) -> PrimePower {
        self.field
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn char2_mode(&self) -> bool {
        self.char2_mode
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator_index(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    /// Sub-algebra on the listed generators (kept in their original order),
    /// same field and torus.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Result<AlgebraSpec> {
        if let Some(&i) = keep.iter().find(|&&i| i >= self.len()) {
            return invalid(format!("generator index {i} out of range"));
        }
        let gens = keep.iter().map(|&i| self.generators[i].clone()).collect();
        AlgebraSpec::new(self.field, self.moduli.clone(), self.char2_mode, gens)
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn spec_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("spec serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    /// Monomial from a sparse `id -> exponent` map (zero exponents dropped).
    pub fn monomial(&self, exps: &BTreeMap<String, u32>) -> Result<Monomial> {
        let mut entries = Vec::new();
        for (id, &e) in exps {
            let i = self.generator_index(id)?;
            if e == 0 {
                continue;
            }
            if self.generators[i].parity == Parity::Exterior && e > 1 {
                return invalid(format!("exterior generator `{id}` has exponent {e}"));
            }
            entries.push((i, e));
        }
        entries.sort_unstable();
        Ok(Monomial { exps: entries })
    }

    /// Convenience: `[("x_0", 1), ("y_0", 2)]`.
    pub fn monomial_from_pairs(&self, pairs: &[(&str, u32)]) -> Result<Monomial> {
        let mut map = BTreeMap::new();
        for &(id, e) in pairs {
            *map.entry(id.to_string()).or_insert(0) += e;
        }
        self.monomial(&map)
    }

    pub fn monomial_json(&self, m: &Monomial) -> MonomialJson {
        MonomialJson {
            exps: m.exps.iter().map(|&(i, e)| (self.generators[i].id.clone(), e)).collect(),
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.exps.is_empty() {
            return "1".into();
        }
        m.exps
            .iter()
            .map(|&(i, e)| {
                let id = &self.generators[i].id;
                if e == 1 {
                    id.clone()
                } else {
                    format!("{id}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Sparse exponent vector, entries sorted by generator index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
}

/// JSON shape `{"exps": {id: e, ..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub exps: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_entries(mut exps: Vec<(usize, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_unstable();
        Monomial { exps }
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn exponent(&self, gen: usize) -> u32 {
        self.exps.iter().find(|&&(i, _)| i == gen).map_or(0, |&(_, e)| e)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|&(i, _)| i)
    }

    pub fn degree(&self, alg: &AlgebraSpec) -> u32 {
        self.exps.iter().map(|&(i, e)| e * alg.generators[i].degree).sum()
    }

    pub fn has_exterior_factor(&self, alg: &AlgebraSpec) -> bool {
        self.exps.iter().any(|&(i, _)| alg.generators[i].parity == Parity::Exterior)
    }

    pub fn is_perfect_square(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e % 2 == 0)
    }

    pub fn display<'a>(&'a self, alg: &'a AlgebraSpec) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Monomial, &'a AlgebraSpec);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.1.format_monomial(self.0))
            }
        }
        D(self, alg)
    }
}

impl Ord for Monomial {
    /// Canonical order: the monomial with the larger exponent at the first
    /// differing generator sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.exps.iter(), other.exps.iter());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(ia, ea)), Some(&(ib, eb))) => {
                    if ia != ib {
                        return ia.cmp(&ib);
                    }
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total torus weight of `m`, reduced per coordinate.
pub fn monomial_weight(alg: &AlgebraSpec, m: &Monomial) -> Result<TorusWeight> {
    let mut coords = vec![0u64; alg.torus_rank];
    for &(i, e) in &m.exps {
        let g = alg.generators.get(i).ok_or_else(|| Error::UnknownGenerator(format!("#{i}")))?;
        for ((c, &w), &modulus) in coords.iter_mut().zip(&g.weight).zip(&alg.moduli) {
            *c = (*c + (e as u64 % modulus) * w as u64) % modulus;
        }
    }
    Ok(TorusWeight { coords })
}

/// Weight of a monomial given by generator ids.
pub fn monomial_weight_by_id(alg: &AlgebraSpec, exps: &BTreeMap<String, u32>) -> Result<TorusWeight> {
    monomial_weight(alg, &alg.monomial(exps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub cap: u64,
    /// Weight-residue pruning for invariant searches.
    pub prune: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { cap: DEFAULT_MONOMIAL_CAP, prune: true }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of monomials in each degree `0..=max_degree` (the Hilbert series of
/// the free algebra), saturating at `u128::MAX`.
pub fn hilbert_counts(alg: &AlgebraSpec, max_degree: u32) -> Vec<u128> {
    let len = max_degree as usize + 1;
    let mut counts = vec![0u128; len];
    counts[0] = 1;
    for g in &alg.generators {
        let d = g.degree as usize;
        match g.parity {
            Parity::Exterior => {
                for t in (d..len).rev() {
                    counts[t] = counts[t].saturating_add(counts[t - d]);
                }
            }
            Parity::Polynomial => {
                for t in d..len {
                    counts[t] = counts[t].saturating_add(counts[t - d]);
                }
            }
        }
    }
    counts
}

struct Search<'a> {
    alg: &'a AlgebraSpec,
    invariant_only: bool,
    prune: bool,
    cap: u64,
    visited: u64,
    // reach[i][t]: generators i.. can make up degree exactly t
    reach: Vec<Vec<bool>>,
    // suffix_gcd[i][c]: subgroup of Z/m_c generated by weights of generators i..
    suffix_gcd: Vec<Vec<u64>>,
    weight: Vec<u64>,
    stack: Vec<(usize, u32)>,
    out: Vec<Monomial>,
}

impl<'a> Search<'a> {
    fn new(alg: &'a AlgebraSpec, degree: u32, invariant_only: bool, cfg: EnumConfig) -> Self {
        let n = alg.len();
        let d = degree as usize;
        let mut reach = vec![vec![false; d + 1]; n + 1];
        reach[n][0] = true;
        for i in (0..n).rev() {
            let g = &alg.generators[i];
            let gd = g.degree as usize;
            let cap = if g.parity == Parity::Exterior { 1 } else { usize::MAX };
            for t in 0..=d {
                reach[i][t] = (0..=cap.min(t / gd)).any(|e| reach[i + 1][t - e * gd]);
            }
        }
        let mut suffix_gcd = vec![alg.moduli.clone(); n + 1];
        for i in (0..n).rev() {
            for c in 0..alg.torus_rank {
                suffix_gcd[i][c] = gcd(suffix_gcd[i + 1][c], alg.generators[i].weight[c] as u64);
            }
        }
        Search {
            alg,
            invariant_only,
            prune: cfg.prune,
            cap: cfg.cap,
            visited: 0,
            reach,
            suffix_gcd,
            weight: vec![0; alg.torus_rank],
            stack: Vec::new(),
            out: Vec::new(),
        }
    }

    fn run(&mut self, i: usize, remaining: u32) -> Result<()> {
        if remaining == 0 {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::ResourceGuard {
                    what: "monomials visited".into(),
                    count: self.visited as u128,
                    cap: self.cap as u128,
                });
            }
            if !self.invariant_only || self.weight.iter().all(|&w| w == 0) {
                self.out.push(Monomial { exps: self.stack.clone() });
            }
            return Ok(());
        }
        if i == self.alg.len() || !self.reach[i][remaining as usize] {
            return Ok(());
        }
        if self.invariant_only && self.prune {
            let blocked = self.weight.iter().zip(&self.suffix_gcd[i]).any(|(&w, &g)| w % g != 0);
            if blocked {
                return Ok(());
            }
        }
        let g = &self.alg.generators[i];
        let mut max_e = remaining / g.degree;
        if g.parity == Parity::Exterior {
            max_e = max_e.min(1);
        }
        let w = g.weight.clone();
        for e in (0..=max_e).rev() {
            if e > 0 {
                self.stack.push((i, e));
                self.shift_weight(&w, e as u64, true);
            }
            let res = self.run(i + 1, remaining - e * g.degree);
            if e > 0 {
                self.stack.pop();
                self.shift_weight(&w, e as u64, false);
            }
            res?;
        }
        Ok(())
    }

    fn shift_weight(&mut self, w: &[i64], e: u64, add: bool) {
        for ((acc, &wc), &m) in self.weight.iter_mut().zip(w).zip(&self.alg.moduli) {
            let delta = (e % m) * (wc as u64) % m;
            *acc = if add { (*acc + delta) % m } else { (*acc + m - delta) % m };
        }
    }
}

/// All monomials of total degree exactly `degree`, canonical order.
pub fn enumerate_monomials(alg: &AlgebraSpec, degree: u32) -> Result<Vec<Monomial>> {
    enumerate_monomials_with(alg, degree, EnumConfig::default())
}

pub fn enumerate_monomials_with(alg: &AlgebraSpec, degree: u32, cfg: EnumConfig) -> Result<Vec<Monomial>> {
    let count = hilbert_counts(alg, degree)[degree as usize];
    if count > cfg.cap as u128 {
        return Err(Error::ResourceGuard {
            what: format!("monomials in degree {degree}"),
            count,
            cap: cfg.cap as u128,
        });
    }
    let mut s = Search::new(alg, degree, false, cfg);
    s.run(0, degree)?;
    Ok(s.out)
}

/// Monomials of degree `degree` whose weight vanishes in every coordinate.
pub fn invariant_monomials(alg: &AlgebraSpec, degree: u32) -> Result<Vec<Monomial>> {
    invariant_monomials_with(alg, degree, EnumConfig::default())
}

pub fn invariant_monomials_with(alg: &AlgebraSpec, degree: u32, cfg: EnumConfig) -> Result<Vec<Monomial>> {
    let mut s = Search::new(alg, degree, true, cfg);
    s.run(0, degree)?;
    Ok(s.out)
}

/// Same contract as [`invariant_monomials`], computed by letting an explicit
/// element of `F_q^x` of order `m_c` act on each generator as `zeta_c^{w_c}` and
/// checking the product of eigenvalues is 1 in `F_q`.
pub fn invariant_monomials_oracle(alg: &AlgebraSpec, degree: u32) -> Result<Vec<Monomial>> {
    invariant_monomials_oracle_with(alg, degree, EnumConfig::default())
}

pub fn invariant_monomials_oracle_with(alg: &AlgebraSpec, degree: u32, cfg: EnumConfig) -> Result<Vec<Monomial>> {
    let field = Arc::new(Fq::from_prime_power(alg.field));
    let gen = field.multiplicative_generator();
    let units = alg.field.units();
    let zetas: Vec<FqElement> = alg.moduli.iter().map(|&m| field.pow(gen, units / m)).collect();
    // eigen[i][c] = zeta_c ^ w_ic
    let eigen: Vec<Vec<FqElement>> = alg
        .generators
        .iter()
        .map(|g| zetas.iter().zip(&g.weight).map(|(&z, &w)| field.pow(z, w as u64)).collect())
        .collect();
    let all = enumerate_monomials_with(alg, degree, EnumConfig { prune: false, ..cfg })?;
    Ok(all
        .into_iter()
        .filter(|m| {
            (0..alg.torus_rank).all(|c| {
                let value = m
                    .exps
                    .iter()
                    .fold(FqElement::ONE, |acc, &(i, e)| field.mul(acc, field.pow(eigen[i][c], e as u64)));
                value == FqElement::ONE
            })
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesFilter {
    All,
    Invariant,
    InvariantNilpotent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimSeries {
    pub dims: Vec<u64>,
}

impl DimSeries {
    /// Least positive degree with nonzero dimension.
    pub fn first_positive(&self) -> Option<u32> {
        self.dims.iter().enumerate().skip(1).find(|(_, &d)| d > 0).map(|(i, _)| i as u32)
    }
}

pub fn dimension_series(alg: &AlgebraSpec, max_degree: u32, filter: SeriesFilter) -> Result<DimSeries> {
    dimension_series_with(alg, max_degree, filter, EnumConfig::default())
}

pub fn dimension_series_with(
    alg: &AlgebraSpec,
    max_degree: u32,
    filter: SeriesFilter,
    cfg: EnumConfig,
) -> Result<DimSeries> {
    let dims = match filter {
        SeriesFilter::All => hilbert_counts(alg, max_degree)
            .into_iter()
            .map(|c| {
                u64::try_from(c).map_err(|_| Error::ResourceGuard {
                    what: "series coefficient".into(),
                    count: c,
                    cap: u64::MAX as u128,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        SeriesFilter::Invariant | SeriesFilter::InvariantNilpotent => (0..=max_degree)
            .map(|d| {
                let inv = invariant_monomials_with(alg, d, cfg)?;
                Ok(match filter {
                    SeriesFilter::Invariant => inv.len(),
                    _ => inv.iter().filter(|m| m.has_exterior_factor(alg)).count(),
                } as u64)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(DimSeries { dims })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub degree: u32,
    pub invariant_dim: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub kernel_basis: Vec<Monomial>,
}

/// Support combinatorics of restriction to a family of coordinate retracts:
/// the kernel is spanned by the invariant monomials whose support lies in no
/// family member, and the cokernel of the pullback has the same dimension.
pub fn detection_kernel(alg: &AlgebraSpec, degree: u32, family: &[Vec<String>]) -> Result<KernelReport> {
    let sets = family
        .iter()
        .map(|member| member.iter().map(|id| alg.generator_index(id)).collect::<Result<BTreeSet<_>>>())
        .collect::<Result<Vec<_>>>()?;
    detection_kernel_indices(alg, degree, &sets, EnumConfig::default())
}

pub fn detection_kernel_indices(
    alg: &AlgebraSpec,
    degree: u32,
    family: &[BTreeSet<usize>],
    cfg: EnumConfig,
) -> Result<KernelReport> {
    if let Some(&i) = family.iter().flatten().find(|&&i| i >= alg.len()) {
        return Err(Error::UnknownGenerator(format!("#{i}")));
    }
    let inv = invariant_monomials_with(alg, degree, cfg)?;
    let invariant_dim = inv.len();
    let kernel_basis: Vec<Monomial> = inv
        .into_iter()
        .filter(|m| !family.iter().any(|member| m.support().all(|i| member.contains(&i))))
        .collect();
    let kernel_dim = kernel_basis.len();
    Ok(KernelReport { degree, invariant_dim, kernel_dim, cokernel_dim: kernel_dim, kernel_basis })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuillenReport {
    pub p: u64,
    pub r: u32,
    pub bound: u64,
    pub tuples_checked: u64,
    pub equality_tuples: Vec<Vec<u64>>,
    pub counterexample: Option<Vec<u64>>,
    pub pass: bool,
}

/// Exhaustive check of the digit-sum lemma: if `(p^r - 1) | sum p^k a_k` with
/// `a != 0` then `sum a_k >= r(p-1)`, with equality only at `a_k = p-1` for all k.
pub fn quillen_verify(p: u64, r: u32) -> Result<QuillenReport> {
    let pp = PrimePower::new(p, r)?;
    let modulus = pp.units();
    let bound = r as u64 * (p - 1);
    let mut report = QuillenReport {
        p,
        r,
        bound,
        tuples_checked: 0,
        equality_tuples: Vec::new(),
        counterexample: None,
        pass: true,
    };
    let mut tuple = vec![0u64; r as usize];
    fn walk(k: usize, left: u64, tuple: &mut Vec<u64>, p: u64, modulus: u64, bound: u64, rep: &mut QuillenReport) {
        if k == tuple.len() {
            rep.tuples_checked += 1;
            let sum: u64 = tuple.iter().sum();
            if sum == 0 {
                return;
            }
            let value = tuple.iter().rev().fold(0u64, |acc, &a| acc * p + a);
            if value % modulus != 0 {
                return;
            }
            if sum < bound {
                rep.pass = false;
                rep.counterexample.get_or_insert_with(|| tuple.clone());
            } else if sum == bound {
                rep.equality_tuples.push(tuple.clone());
            }
            return;
        }
        for a in 0..=left {
            tuple[k] = a;
            walk(k + 1, left - a, tuple, p, modulus, bound, rep);
        }
        tuple[k] = 0;
    }
    walk(0, bound, &mut tuple, p, modulus, bound, &mut report);
    report.equality_tuples.sort();
    if report.equality_tuples != vec![vec![p - 1; r as usize]] {
        report.pass = false;
        if report.counterexample.is_none() {
            report.counterexample =
                report.equality_tuples.iter().find(|t| t.iter().any(|&a| a != p - 1)).cloned();
        }
    }
    Ok(report)
}
