//! Exact arithmetic in `F_p` and `F_{p^r}`, plus square matrices over `F_q`.
//!
//! `F_{p^r}` is modelled as `F_p[x]/(f)` where `f` is the smallest monic
//! irreducible polynomial of degree `r` in the lexicographic order on the
//! little-endian coefficient tuple `(c_0, .., c_{r-1})`. The same ordering picks
//! the multiplicative generator, so every element label is reproducible.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
/// Largest group that `unitriangular_elements` will enumerate exhaustively.
pub const MAX_GROUP_ENUMERATION: u128 = 1_000_000;

const MAX_DEGREE: usize = 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime power `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPrimePower", into = "RawPrimePower")]
pub struct PrimePower {
    p: u64,
    r: u32,
    q: u64,
}

#[derive(Serialize, Deserialize)]
struct RawPrimePower {
    p: u64,
    r: u32,
}

impl TryFrom<RawPrimePower> for PrimePower {
    type Error = Error;
    fn try_from(raw: RawPrimePower) -> Result<Self> {
        PrimePower::new(raw.p, raw.r)
    }
}

impl From<PrimePower> for RawPrimePower {
    fn from(pp: PrimePower) -> Self {
        RawPrimePower { p: pp.p, r: pp.r }
    }
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("p = {p} is not prime"));
        }
        if r == 0 {
            return invalid("r must be positive");
        }
        let mut q: u64 = 1;
        for _ in 0..r {
            q = match q.checked_mul(p) {
                Some(v) if v <= MAX_FIELD_ORDER => v,
                _ => return invalid(format!("{p}^{r} exceeds the field size cap {MAX_FIELD_ORDER}")),
            };
        }
        Ok(PrimePower { p, r, q })
    }

    /// Decomposes `q` as `p^r`.
    pub fn from_q(q: u64) -> Result<Self> {
        let factors = prime_factors(q);
        match factors.as_slice() {
            [p] => {
                let mut r = 0;
                let mut rest = q;
                while rest > 1 {
                    rest /= p;
                    r += 1;
                }
                PrimePower::new(*p, r)
            }
            _ => invalid(format!("q = {q} is not a prime power")),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn units(&self) -> u64 {
        self.q - 1
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.r)
    }
}

// ---------------------------------------------------------------------------
// Polynomials over F_p (dense, little-endian, no trailing zeros).

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while a.len() > dm {
        let da = a.len() - 1;
        let c = a[da] * lead_inv % p;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = da - dm + j;
                a[idx] = (a[idx] + p - c * mj % p) % p;
            }
        }
        a = trim(a);
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Rabin's irreducibility test for a monic `f` of degree `r` over `F_p`.
fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let r = (f.len() - 1) as u64;
    let x = vec![0, 1];
    // x^{p^k} mod f by repeated p-th powers
    let frob = |k: u64| {
        let mut t = x.clone();
        for _ in 0..k {
            t = poly_powmod(&t, p, f, p);
        }
        t
    };
    let full = frob(r);
    if !poly_sub(&full, &x, p).is_empty() {
        return false;
    }
    prime_factors(r).into_iter().all(|d| {
        let h = poly_sub(&frob(r / d), &x, p);
        poly_gcd(f, &h, p).len() == 1
    })
}

/// Tuples in `[0, p)^len` in lexicographic order, first entry most significant.
pub(crate) fn lex_tuple(index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    let mut m = index;
    for slot in out.iter_mut().rev() {
        *slot = m % p;
        m /= p;
    }
    out
}

/// Lexicographically smallest monic irreducible polynomial of degree `r` over
/// `F_p`, returned little-endian `[c_0, .., c_{r-1}, 1]`.
pub fn find_irreducible(p: u64, r: u32) -> Result<Vec<u64>> {
    let pp = PrimePower::new(p, r)?;
    let r = r as usize;
    for m in 0..pp.q() {
        let mut f = lex_tuple(m, p, r);
        f.push(1);
        if r == 1 || rabin_irreducible(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

// ---------------------------------------------------------------------------
// Field elements

/// An element of `F_q`, packed as `sum c_i p^i` over its little-endian
/// coefficients. Only meaningful together with the [`Fq`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement(u32);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);
    pub const ONE: FqElement = FqElement(1);

    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Field context for `F_{p^r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    pp: PrimePower,
    modulus: Vec<u64>,
}

/// Serialized form `{p, r, irreducible: [c_0..c_r]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u64,
    pub r: u32,
    pub irreducible: Vec<u64>,
}

impl Fq {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        let pp = PrimePower::new(p, r)?;
        let modulus = find_irreducible(p, r)?;
        Ok(Fq { pp, modulus })
    }

    pub fn from_prime_power(pp: PrimePower) -> Self {
        Fq::new(pp.p(), pp.r()).expect("PrimePower is already validated")
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo { p: self.pp.p(), r: self.pp.r(), irreducible: self.modulus.clone() }
    }

    fn p(&self) -> u64 {
        self.pp.p()
    }

    fn r(&self) -> usize {
        self.pp.r() as usize
    }

    /// Little-endian coefficients, length exactly `r`.
    pub fn coeffs(&self, e: FqElement) -> Vec<u64> {
        let mut m = e.0 as u64;
        (0..self.r())
            .map(|_| {
                let c = m % self.p();
                m /= self.p();
                c
            })
            .collect()
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FqElement> {
        if coeffs.len() != self.r() {
            return invalid(format!("expected {} coefficients, got {}", self.r(), coeffs.len()));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return invalid(format!("coefficient {c} not reduced mod {}", self.p()));
        }
        Ok(self.pack(coeffs))
    }

    fn pack(&self, coeffs: &[u64]) -> FqElement {
        let v = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p() + c);
        FqElement(v as u32)
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, k: i64) -> FqElement {
        FqElement(k.rem_euclid(self.p() as i64) as u32)
    }

    /// `x^i`, the i-th element of the power basis (`i < r`).
    pub fn power_basis(&self, i: usize) -> FqElement {
        assert!(i < self.r(), "power basis index out of range");
        FqElement((self.p().pow(i as u32)) as u32)
    }

    /// All elements in lexicographic order of `(c_0, .., c_{r-1})`.
    pub fn elements_lex(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.pp.q()).map(move |m| self.pack(&lex_tuple(m, self.p(), self.r())))
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.r() == 1 {
            return FqElement(((a.0 as u64 + b.0 as u64) % self.p()) as u32);
        }
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p()).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        let p = self.p();
        let x: Vec<u64> = self.coeffs(a).into_iter().map(|c| (p - c) % p).collect();
        self.pack(&x)
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        let p = self.p();
        if self.r() == 1 {
            return FqElement((a.0 as u64 * b.0 as u64 % p) as u32);
        }
        if a.is_zero() || b.is_zero() {
            return FqElement::ZERO;
        }
        let r = self.r();
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % p;
            }
        }
        // x^r = -(c_0 + .. + c_{r-1} x^{r-1})
        for i in (r..2 * r - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..r {
                let t = c * ((p - self.modulus[j]) % p) % p;
                prod[i - r + j] = (prod[i - r + j] + t) % p;
            }
        }
        self.pack(&prod[..r])
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut result = FqElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: FqElement) -> Option<FqElement> {
        (!a.is_zero()).then(|| self.pow(a, self.pp.q() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut n = self.pp.units();
        for l in prime_factors(n) {
            while n % l == 0 && self.pow(a, n / l) == FqElement::ONE {
                n /= l;
            }
        }
        Some(n)
    }

    /// Lexicographically smallest element of multiplicative order `q - 1`.
    pub fn multiplicative_generator(&self) -> FqElement {
        let units = self.pp.units();
        self.elements_lex()
            .find(|&e| self.order(e) == Some(units))
            .expect("F_q^x is cyclic")
    }

    pub fn format(&self, e: FqElement) -> String {
        if self.r() == 1 {
            return e.0.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(e)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Convenience wrapper for [`Fq::multiplicative_generator`].
pub fn multiplicative_generator(field: PrimePower) -> FqElement {
    Fq::from_prime_power(field).multiplicative_generator()
}

// ---------------------------------------------------------------------------
// Matrices

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Arc<Fq>,
    n: usize,
    entries: Vec<FqElement>,
}

impl FqMatrix {
    pub fn identity(field: &Arc<Fq>, n: usize) -> Self {
        let mut m = FqMatrix::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = FqElement::ONE;
        }
        m
    }

    pub fn zero(field: &Arc<Fq>, n: usize) -> Self {
        FqMatrix { field: Arc::clone(field), n, entries: vec![FqElement::ZERO; n * n] }
    }

    /// The nilpotent single Jordan block `J` with ones on the superdiagonal.
    pub fn jordan_nilpotent(field: &Arc<Fq>, n: usize) -> Self {
        let mut m = FqMatrix::zero(field, n);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, FqElement::ONE);
        }
        m
    }

    pub fn from_rows(field: &Arc<Fq>, rows: Vec<Vec<FqElement>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("matrix is not square");
        }
        Ok(FqMatrix { field: Arc::clone(field), n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FqElement {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElement) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<FqElement>> {
        self.entries.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| self.get(i, j) == if i == j { FqElement::ONE } else { FqElement::ZERO })
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            (0..=i).all(|j| self.get(i, j) == if i == j { FqElement::ONE } else { FqElement::ZERO })
        })
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect();
        FqMatrix { field: Arc::clone(f), n: self.n, entries }
    }

    pub fn scale(&self, c: FqElement) -> FqMatrix {
        let f = &self.field;
        let entries = self.entries.iter().map(|&a| f.mul(c, a)).collect();
        FqMatrix { field: Arc::clone(f), n: self.n, entries }
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let f = &self.field;
        let n = self.n;
        let mut out = FqMatrix::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.entries[i * n + j];
                        out.entries[i * n + j] = f.add(cur, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, mut k: u64) -> FqMatrix {
        let mut result = FqMatrix::identity(&self.field, self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Entry-wise little-endian coefficient lists, for reports.
    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<u64>>> {
        self.rows().into_iter().map(|r| r.into_iter().map(|e| self.field.coeffs(e)).collect()).collect()
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|&e| self.field.format(e)).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// `mat_pow` as a free function.
pub fn mat_pow(m: &FqMatrix, k: u64) -> FqMatrix {
    m.pow(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    All,
    Sample { count: usize, seed: u64 },
}

/// Upper unitriangular matrices over `field`: every element of `U_n(F_q)` once
/// (`All`, guarded by [`MAX_GROUP_ENUMERATION`]) or a seeded uniform sample.
pub fn unitriangular_elements(
    n: usize,
    field: &Arc<Fq>,
    mode: EnumerationMode,
) -> Result<UnitriangularIter> {
    if n == 0 {
        return invalid("matrix dimension must be positive");
    }
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let q = field.prime_power().q();
    let state = match mode {
        EnumerationMode::All => {
            let mut total: u128 = 1;
            for _ in 0..slots.len() {
                total = total.saturating_mul(q as u128);
                if total > MAX_GROUP_ENUMERATION {
                    return Err(Error::ResourceGuard {
                        what: format!("|U_{n}(F_{q})|"),
                        count: total,
                        cap: MAX_GROUP_ENUMERATION,
                    });
                }
            }
            IterState::All { next: 0, total: total as u64 }
        }
        EnumerationMode::Sample { count, seed } => {
            IterState::Sample { remaining: count, rng: Box::new(ChaCha8Rng::seed_from_u64(seed)) }
        }
    };
    Ok(UnitriangularIter { field: Arc::clone(field), n, slots, state })
}

pub struct UnitriangularIter {
    field: Arc<Fq>,
    n: usize,
    slots: Vec<(usize, usize)>,
    state: IterState,
}

enum IterState {
    All { next: u64, total: u64 },
    Sample { remaining: usize, rng: Box<ChaCha8Rng> },
}

impl Iterator for UnitriangularIter {
    type Item = FqMatrix;

    fn next(&mut self) -> Option<FqMatrix> {
        let q = self.field.prime_power().q();
        let mut m = FqMatrix::identity(&self.field, self.n);
        match &mut self.state {
            IterState::All { next, total } => {
                if *next >= *total {
                    return None;
                }
                let mut idx = *next;
                *next += 1;
                // last slot varies fastest
                for &(i, j) in self.slots.iter().rev() {
                    m.set(i, j, FqElement((idx % q) as u32));
                    idx /= q;
                }
            }
            IterState::Sample { remaining, rng } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                for &(i, j) in &self.slots {
                    m.set(i, j, FqElement(rng.gen_range(0..q) as u32));
                }
            }
        }
        Some(m)
    }
}
