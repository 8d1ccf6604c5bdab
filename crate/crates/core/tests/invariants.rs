use std::collections::BTreeSet;

use proptest::prelude::*;

use torinv::ffq::PrimePower;
use torinv::invalg::{
    detection_kernel, dimension_series, enumerate_monomials, invariant_monomials, invariant_monomials_oracle,
    invariant_monomials_with, monomial_weight, AlgebraSpec, EnumConfig, GeneratorSpec, Parity, SeriesFilter,
};

const FIELDS: [(u64, u32); 11] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1), (5, 2)];

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Random spec from raw draws: field index, modulus picks, and (exterior?, weights) per generator.
fn build(field: usize, picks: &[usize], gens: &[(bool, Vec<i64>)]) -> AlgebraSpec {
    let (p, r) = FIELDS[field % FIELDS.len()];
    let pp = PrimePower::new(p, r).unwrap();
    let divs = divisors(pp.units());
    let moduli: Vec<u64> = picks.iter().map(|&i| divs[i % divs.len()]).collect();
    let generators = gens
        .iter()
        .enumerate()
        .map(|(i, (ext, w))| {
            let w: Vec<i64> = w.iter().take(moduli.len()).copied().collect();
            if p == 2 {
                GeneratorSpec::new(format!("g{i}"), Parity::Polynomial, 1, w, "")
            } else if *ext {
                GeneratorSpec::new(format!("g{i}"), Parity::Exterior, 1, w, "")
            } else {
                GeneratorSpec::new(format!("g{i}"), Parity::Polynomial, 2, w, "")
            }
        })
        .collect();
    AlgebraSpec::new(pp, moduli, p == 2, generators).unwrap()
}

fn spec_strategy() -> impl Strategy<Value = AlgebraSpec> {
    (
        0..FIELDS.len(),
        prop::collection::vec(0usize..16, 1..=2),
        prop::collection::vec((any::<bool>(), prop::collection::vec(-30i64..30, 2)), 1..=6),
    )
        .prop_map(|(f, picks, gens)| build(f, &picks, &gens))
}

/// Coefficients of prod (1 + t^d) over exterior and prod 1/(1 - t^d) over
/// polynomial generators, truncated at `max`.
fn free_series(alg: &AlgebraSpec, max: usize) -> Vec<u64> {
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for g in alg.generators() {
        let d = g.degree as usize;
        match g.parity {
            Parity::Exterior => {
                for k in (d..=max).rev() {
                    c[k] += c[k - d];
                }
            }
            Parity::Polynomial => {
                for k in d..=max {
                    c[k] += c[k - d];
                }
            }
        }
    }
    c
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn search_matches_field_oracle(alg in spec_strategy(), d in 0u32..=8) {
        prop_assert_eq!(invariant_monomials(&alg, d).unwrap(), invariant_monomials_oracle(&alg, d).unwrap());
    }

    #[test]
    fn pruning_does_not_change_results(alg in spec_strategy(), d in 0u32..=8) {
        let off = EnumConfig { prune: false, ..EnumConfig::default() };
        prop_assert_eq!(invariant_monomials(&alg, d).unwrap(), invariant_monomials_with(&alg, d, off).unwrap());
    }

    #[test]
    fn enumeration_matches_generating_function(alg in spec_strategy()) {
        let want = free_series(&alg, 8);
        for d in 0..=8u32 {
            let monos = enumerate_monomials(&alg, d).unwrap();
            prop_assert_eq!(monos.len() as u64, want[d as usize]);
            prop_assert!(monos.iter().all(|m| m.degree(&alg) == d));
            prop_assert!(monos.windows(2).all(|w| w[0] < w[1]), "not strictly sorted");
        }
        prop_assert_eq!(dimension_series(&alg, 8, SeriesFilter::All).unwrap().dims, want);
    }

    #[test]
    fn invariants_have_zero_weight(alg in spec_strategy(), d in 0u32..=8) {
        let all = enumerate_monomials(&alg, d).unwrap();
        let inv: BTreeSet<_> = invariant_monomials(&alg, d).unwrap().into_iter().collect();
        for m in &all {
            prop_assert_eq!(monomial_weight(&alg, m).unwrap().is_zero(), inv.contains(m));
        }
    }

    #[test]
    fn rescaling_by_a_unit_preserves_invariants(
        field in 0..FIELDS.len(),
        pick in 0usize..16,
        gens in prop::collection::vec((any::<bool>(), prop::collection::vec(-30i64..30, 1)), 1..=6),
        u in 1i64..200,
        d in 0u32..=8,
    ) {
        let alg = build(field, &[pick], &gens);
        let m = alg.moduli()[0];
        prop_assume!(gcd(u as u64, m) == 1);
        let scaled: Vec<(bool, Vec<i64>)> = gens.iter().map(|(e, w)| (*e, vec![w[0] * u])).collect();
        let alg2 = build(field, &[pick], &scaled);
        prop_assert_eq!(invariant_monomials(&alg, d).unwrap(), invariant_monomials(&alg2, d).unwrap());
    }

    #[test]
    fn nilpotent_part_is_bounded_by_invariants(alg in spec_strategy()) {
        let inv = dimension_series(&alg, 8, SeriesFilter::Invariant).unwrap().dims;
        let nil = dimension_series(&alg, 8, SeriesFilter::InvariantNilpotent).unwrap().dims;
        prop_assert!(nil.iter().zip(&inv).all(|(a, b)| a <= b));
        if alg.char2_mode() {
            prop_assert!(nil.iter().skip(1).all(|&v| v == 0));
        }
    }

    #[test]
    fn full_family_detects_everything(alg in spec_strategy(), d in 1u32..=8) {
        let all: Vec<String> = alg.generators().iter().map(|g| g.id.clone()).collect();
        let k = detection_kernel(&alg, d, &[all]).unwrap();
        prop_assert_eq!(k.kernel_dim, 0);
        prop_assert_eq!(k.cokernel_dim, 0);
    }

    #[test]
    fn empty_family_kernel_is_everything(alg in spec_strategy(), d in 1u32..=8) {
        let k = detection_kernel(&alg, d, &[]).unwrap();
        prop_assert_eq!(k.kernel_dim, invariant_monomials(&alg, d).unwrap().len());
    }
}
