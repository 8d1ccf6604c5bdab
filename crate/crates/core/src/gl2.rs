//! Rank-one specializations: the torus-invariant models for GL2 and SL2 over
//! `F_{p^r}` and their low-degree landmarks.

use serde_json::{json, Value};

use crate::error::{invalid, Result};
use crate::ffq::PrimePower;
use crate::invalg::{dimension_series, AlgebraSpec, GeneratorSpec, Monomial, Parity, SeriesFilter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Gl2,
    Sl2,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Gl2 => "GL2",
            Group::Sl2 => "SL2",
        }
    }
}

fn rank_one_algebra(p: u64, r: u32, modulus: u64) -> Result<AlgebraSpec> {
    let pp = PrimePower::new(p, r)?;
    let mut gens = Vec::new();
    let weights: Vec<i64> = (0..r).map(|k| (pp.p().pow(k) % modulus) as i64).collect();
    if p == 2 {
        for (k, &w) in weights.iter().enumerate() {
            gens.push(GeneratorSpec::new(format!("x_{k}"), Parity::Polynomial, 1, vec![w], format!("k={k}")));
        }
    } else {
        for (k, &w) in weights.iter().enumerate() {
            gens.push(GeneratorSpec::new(format!("x_{k}"), Parity::Exterior, 1, vec![w], format!("k={k}")));
        }
        for (k, &w) in weights.iter().enumerate() {
            gens.push(GeneratorSpec::new(format!("y_{k}"), Parity::Polynomial, 2, vec![w], format!("k={k}")));
        }
    }
    AlgebraSpec::new(pp, vec![modulus], p == 2, gens)
}

/// `H*(F_q; F_q)` with the diagonal torus of GL2 acting on `x_k`, `y_k` by
/// `lambda^{p^k}`.
pub fn gl2_algebra(p: u64, r: u32) -> Result<AlgebraSpec> {
    let pp = PrimePower::new(p, r)?;
    rank_one_algebra(p, r, pp.units())
}

/// Same generators, torus restricted to the squares (modulus `(q-1)/2`).
pub fn sl2_algebra(p: u64, r: u32) -> Result<AlgebraSpec> {
    if p == 2 {
        return invalid("SL2 model requires odd p");
    }
    let pp = PrimePower::new(p, r)?;
    rank_one_algebra(p, r, pp.units() / 2)
}

/// Closed-form values the computation is compared against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectations {
    pub first_positive_degree: u32,
    pub first_dim: u64,
    pub witness: Monomial,
    pub lowest_nonnilpotent_degree: Option<u32>,
    pub nonnilpotent_witness: Option<Monomial>,
}

#[derive(Debug, Clone)]
pub struct Gl2Landmarks {
    pub group: Group,
    pub p: u64,
    pub r: u32,
    pub algebra: AlgebraSpec,
    pub invariant_series: Vec<u64>,
    pub nilpotent_series: Vec<u64>,
    pub first_positive_degree: Option<u32>,
    pub first_dim: u64,
    pub witness: Option<Monomial>,
    pub lowest_nonnilpotent_degree: Option<u32>,
    pub nonnilpotent_witness: Option<Monomial>,
    /// p = 2 only: no invariant monomial of degree r has all exponents even.
    pub square_free_check: Option<bool>,
    pub expected: Expectations,
}

impl Gl2Landmarks {
    /// Whether every computed landmark equals its expectation.
    pub fn matches(&self) -> bool {
        let e = &self.expected;
        let mut ok = self.first_positive_degree == Some(e.first_positive_degree)
            && self.first_dim == e.first_dim
            && self.witness.as_ref() == Some(&e.witness)
            && self.square_free_check != Some(false);
        if let Some(d) = e.lowest_nonnilpotent_degree {
            ok &= self.lowest_nonnilpotent_degree == Some(d);
        }
        if let Some(w) = &e.nonnilpotent_witness {
            ok &= self.nonnilpotent_witness.as_ref() == Some(w);
        }
        ok
    }

    pub fn to_json(&self) -> Value {
        let alg = &self.algebra;
        let mono = |m: &Option<Monomial>| match m {
            Some(m) => json!(alg.monomial_json(m)),
            None => Value::Null,
        };
        let e = &self.expected;
        json!({
            "group": self.group.name(),
            "p": self.p,
            "r": self.r,
            "spec_hash": alg.spec_hash(),
            "first_positive_degree": self.first_positive_degree,
            "first_dim": self.first_dim,
            "witness": mono(&self.witness),
            "lowest_nonnilpotent_degree": self.lowest_nonnilpotent_degree,
            "nonnilpotent_witness": mono(&self.nonnilpotent_witness),
            "square_free_check": self.square_free_check,
            "expected": {
                "first_positive_degree": e.first_positive_degree,
                "first_dim": e.first_dim,
                "witness": alg.monomial_json(&e.witness),
                "lowest_nonnilpotent_degree": e.lowest_nonnilpotent_degree,
                "nonnilpotent_witness": mono(&e.nonnilpotent_witness),
            },
            "match": self.matches(),
        })
    }
}

fn product_witness(alg: &AlgebraSpec, r: u32, x_exp: u32, y_exp: u32) -> Result<Monomial> {
    let mut pairs = Vec::new();
    let ids: Vec<(String, String)> = (0..r).map(|k| (format!("x_{k}"), format!("y_{k}"))).collect();
    for (x, y) in &ids {
        if x_exp > 0 {
            pairs.push((x.as_str(), x_exp));
        }
        if y_exp > 0 {
            pairs.push((y.as_str(), y_exp));
        }
    }
    alg.monomial_from_pairs(&pairs)
}

fn compute(group: Group, p: u64, r: u32, alg: AlgebraSpec, expected: Expectations) -> Result<Gl2Landmarks> {
    let max_degree = r * (2 * p as u32 - 2) + 1;
    let invariant_series = dimension_series(&alg, max_degree, SeriesFilter::Invariant)?.dims;
    let nilpotent_series = dimension_series(&alg, max_degree, SeriesFilter::InvariantNilpotent)?.dims;
    let first_positive_degree =
        invariant_series.iter().enumerate().skip(1).find(|(_, &d)| d > 0).map(|(i, _)| i as u32);
    let (first_dim, witness) = match first_positive_degree {
        Some(d) => {
            let inv = crate::invalg::invariant_monomials(&alg, d)?;
            let w = if inv.len() == 1 { inv.first().cloned() } else { None };
            (inv.len() as u64, w)
        }
        None => (0, None),
    };
    let mut lowest_nonnilpotent_degree = None;
    let mut nonnilpotent_witness = None;
    for d in 1..=max_degree {
        let non_nil: Vec<Monomial> = crate::invalg::invariant_monomials(&alg, d)?
            .into_iter()
            .filter(|m| !m.has_exterior_factor(&alg))
            .collect();
        if !non_nil.is_empty() {
            lowest_nonnilpotent_degree = Some(d);
            if non_nil.len() == 1 {
                nonnilpotent_witness = non_nil.into_iter().next();
            }
            break;
        }
    }
    let square_free_check = if p == 2 {
        let inv = crate::invalg::invariant_monomials(&alg, r)?;
        Some(inv.iter().all(|m| !m.is_perfect_square()))
    } else {
        None
    };
    Ok(Gl2Landmarks {
        group,
        p,
        r,
        algebra: alg,
        invariant_series,
        nilpotent_series,
        first_positive_degree,
        first_dim,
        witness,
        lowest_nonnilpotent_degree,
        nonnilpotent_witness,
        square_free_check,
        expected,
    })
}

/// Lowest invariant degree, its dimension and monomial, and the lowest
/// degree of a non-nilpotent invariant, computed by enumeration up to degree
/// `r(2p-2)+1` and then compared with the closed forms
/// `r(2p-3)`, `x_0..x_{r-1} y_0^{p-2}..y_{r-1}^{p-2}`, `r(2p-2)`, `prod y_k^{p-1}`.
///
/// For p = 2 every invariant is non-nilpotent, so the expected non-nilpotent
/// landmark is the first invariant degree `r` with witness `x_0..x_{r-1}`.
pub fn gl2_landmarks(p: u64, r: u32) -> Result<Gl2Landmarks> {
    let alg = gl2_algebra(p, r)?;
    let expected = if p == 2 {
        let w = product_witness(&alg, r, 1, 0)?;
        Expectations {
            first_positive_degree: r,
            first_dim: 1,
            witness: w.clone(),
            lowest_nonnilpotent_degree: Some(r),
            nonnilpotent_witness: Some(w),
        }
    } else {
        let pe = p as u32;
        Expectations {
            first_positive_degree: r * (2 * pe - 3),
            first_dim: 1,
            witness: product_witness(&alg, r, 1, pe - 2)?,
            lowest_nonnilpotent_degree: Some(r * (2 * pe - 2)),
            nonnilpotent_witness: Some(product_witness(&alg, r, 0, pe - 1)?),
        }
    };
    compute(Group::Gl2, p, r, alg, expected)
}

/// SL2 analogue: expected first degree `r(p-2)` with witness
/// `x_0..x_{r-1} y_0^{(p-3)/2}..y_{r-1}^{(p-3)/2}`; the non-nilpotent
/// landmark is reported but has no closed form to compare against.
pub fn sl2_landmarks(p: u64, r: u32) -> Result<Gl2Landmarks> {
    let alg = sl2_algebra(p, r)?;
    let pe = p as u32;
    let expected = Expectations {
        first_positive_degree: r * (pe - 2),
        first_dim: 1,
        witness: product_witness(&alg, r, 1, (pe - 3) / 2)?,
        lowest_nonnilpotent_degree: None,
        nonnilpotent_witness: None,
    };
    compute(Group::Sl2, p, r, alg, expected)
}
