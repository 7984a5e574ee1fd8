//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the checked statement. Everything is exact integer arithmetic except the
//! two slope limits, which are checked to 1% as exact rationals.

use std::time::Instant;

use confstab_cli::oracle::rp_homology;
use confstab_core::certify::{
    certify_range, certify_range_by_induction, slope_input_range, ComplementProfile, Orientation,
    SlopeBound,
};
use confstab_core::enumerate::{enumerate_generators, AdmissibilityMode, EnumerationBounds};
use confstab_core::hilbert::{
    hilbert_by_enumeration, hilbert_by_product, rational_table, HilbertTable,
};
use confstab_core::ops::{AmbientDim, Prime};
use confstab_core::stability::{
    check_injectivity, check_theorem_range, empirical_range, verify_unstable_facts, z_half_report,
    RangeValue,
};
use confstab_core::Big;
use num_rational::Ratio;
use num_traits::Signed;

fn dim(n: u32) -> AmbientDim {
    AmbientDim::new(n).unwrap()
}

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn table_u64(n: u32, p: u32, d: u64, k: u64) -> HilbertTable<u64> {
    let gens = enumerate_generators(
        dim(n),
        prime(p),
        EnumerationBounds::new(d, k).unwrap(),
        AdmissibilityMode::FormalS,
    );
    hilbert_by_enumeration(&gens)
}

#[test]
fn criterion_1_dual_engine_equivalence() {
    let start = Instant::now();
    for n in [3u32, 4, 5, 6] {
        for p in [3u32, 5] {
            let gens = enumerate_generators(
                dim(n),
                prime(p),
                EnumerationBounds::new(Big::from(20u32), Big::from(20u32)).unwrap(),
                AdmissibilityMode::FormalS,
            );
            let by_enum = hilbert_by_enumeration(&gens);
            let by_prod = hilbert_by_product(&gens);
            let diffs = by_enum.differences(&by_prod);
            assert!(
                diffs.is_empty(),
                "engines disagree at n={n}, p={p}: {diffs:?}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, expected < 60 s");
    println!(
        "criterion 1: PASS - enumeration and product engines agree entrywise on \
         (n, p) in {{3,4,5,6}} x {{3,5}} at D = K = 20 ({elapsed:?})"
    );
}

#[test]
fn criterion_2_unstable_lemma_suite() {
    for n in 3u32..=8 {
        for p in [3u32, 5, 7] {
            let gens = enumerate_generators(
                dim(n),
                prime(p),
                EnumerationBounds::new(30u64, 30).unwrap(),
                AdmissibilityMode::FormalS,
            );
            for g in gens.generators() {
                if g.word.to_string() != "e" {
                    assert!(
                        g.bigrading.degree() >= g.bigrading.weight(),
                        "n={n}, p={p}: {} at {} is not unstable",
                        g.word,
                        g.bigrading
                    );
                }
            }
            let report = verify_unstable_facts(&gens);
            assert!(
                report.pass(),
                "n={n}, p={p}: instability facts failed: {report:?}"
            );
        }
    }
    println!(
        "criterion 2: PASS - every non-e word has degree >= weight and the three \
         instability facts have zero counterexamples on n in 3..8, p in {{3,5,7}}, D = K = 30"
    );
}

#[test]
fn criterion_3_slope_one_range_and_injectivity_on_rn() {
    for n in 3u32..=8 {
        for p in [3u32, 5, 7] {
            let table = table_u64(n, p, 20, 20);
            for k in 0u64..=19 {
                let r = empirical_range(&table, &k).unwrap();
                assert!(
                    r.covers(&k),
                    "n={n}, p={p}: empirical range at k={k} is {r}, below k"
                );
            }
            let violations = check_injectivity(&table);
            assert!(
                violations.is_empty(),
                "n={n}, p={p}: dimension monotonicity fails: {violations:?}"
            );
        }
    }
    println!(
        "criterion 3: PASS - empirical_range(k) >= k for k <= 19 and dim(i,k) <= dim(i,k+1) \
         everywhere on n in 3..8, p in {{3,5,7}}, D = K = 20"
    );
}

#[test]
fn criterion_4_rp_oracle_matches_weight_two_column() {
    for n in 3u32..=8 {
        let mut tables: Vec<HilbertTable<u64>> = [3u32, 5, 7]
            .iter()
            .map(|&p| table_u64(n, p, 20, 20))
            .collect();
        tables.push(rational_table(
            dim(n),
            &EnumerationBounds::new(20u64, 20).unwrap(),
        ));
        for table in &tables {
            let dims = rp_homology(n, table.coeff());
            for i in 0u64..=20 {
                let expected = dims.get(i as usize).copied().unwrap_or(0);
                let got = table.dim(&i, &2).unwrap();
                assert_eq!(
                    got,
                    expected,
                    "n={n}, coeff={}: k=2 column differs from RP^{} at degree {i}",
                    table.coeff(),
                    n - 1
                );
            }
        }
    }
    println!(
        "criterion 4: PASS - the k = 2 slice equals the cellular homology of RP^(n-1) \
         for n in 3..8, coeff in {{3,5,7,Q}}"
    );
}

#[test]
fn criterion_5_certifier_reproduces_slope_one_and_matches_induction() {
    let input = slope_input_range::<u64>(SlopeBound::Finite(Ratio::from_integer(1)), 100).unwrap();
    let profile = ComplementProfile::new(dim(3), 2).unwrap();
    assert_eq!(profile.codimension(), 1);
    let cert = certify_range(&input, &profile, Orientation::Trivial, 100).unwrap();
    for k in 0..=100u64 {
        assert_eq!(
            cert.certified.value(k as usize).unwrap(),
            &RangeValue::Bounded(k),
            "certified range at k={k} is not k"
        );
    }

    let small = certify_range(&input, &profile, Orientation::Trivial, 30).unwrap();
    let induction = certify_range_by_induction(&input, &profile, Orientation::Trivial, 30).unwrap();
    assert_eq!(small.certified, induction.certified);
    assert_eq!(small.trace, induction.trace);

    println!(
        "criterion 5: PASS - input r(m) = m with q = 1 certifies r(k) = k for k <= 100, \
         and the closed-form minimum equals the downward induction for k <= 30"
    );
}

#[test]
fn criterion_6_remark_slopes_at_ten_thousand() {
    let start = Instant::now();
    let profile = ComplementProfile::new(dim(6), 4).unwrap();
    assert_eq!(profile.codimension(), 2);

    // Rational input slope 5/2 through q = 2: limit slope 2.
    let input = slope_input_range::<u64>(SlopeBound::Finite(Ratio::new(5, 2)), 10_000).unwrap();
    let cert = certify_range(&input, &profile, Orientation::Trivial, 10_000).unwrap();
    let ratio = cert.slope_at(10_000).unwrap();
    let ratio = Ratio::new(*ratio.numer() as i64, *ratio.denom() as i64);
    let err = (ratio - Ratio::from_integer(2)).abs();
    assert!(
        err <= Ratio::new(2, 100),
        "rational slope at k = 10^4 is {ratio}, not within 1% of 2"
    );

    // F_3 input slope 3/3 = 1 through q = 2: limit slope 1.
    let input = slope_input_range::<u64>(SlopeBound::Finite(Ratio::new(3, 3)), 10_000).unwrap();
    let cert = certify_range(&input, &profile, Orientation::Trivial, 10_000).unwrap();
    let ratio = cert.slope_at(10_000).unwrap();
    let ratio = Ratio::new(*ratio.numer() as i64, *ratio.denom() as i64);
    let err = (ratio - Ratio::from_integer(1)).abs();
    assert!(
        err <= Ratio::new(1, 100),
        "mod-3 slope at k = 10^4 is {ratio}, not within 1% of 1"
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "took {elapsed:?}, expected < 5 s");
    println!(
        "criterion 6: PASS - certified slopes at k = 10^4 with q = 2, n = 6 are within 1% \
         of 2 (rational, input 5/2) and of 1 (mod 3, input 3/3) ({elapsed:?})"
    );
}

#[test]
fn criterion_7_dimension_two_negative_control() {
    let bounds = EnumerationBounds::new(20u64, 20).unwrap();
    let table = rational_table(dim(2), &bounds);
    let report = check_theorem_range(&table).unwrap();
    assert!(!report.pass, "slope 1 must fail in ambient dimension 2");
    assert_eq!(
        report.counterexamples,
        vec![(1u64, 1u64)],
        "the only slope-1 failure should be the bracket obstruction at (i, k) = (1, 1)"
    );
    assert!(
        report.half_slope_pass,
        "slope 1/2 must hold: {:?}",
        report.half_slope_counterexamples
    );
    println!(
        "criterion 7: PASS - n = 2 rational fails i <= k exactly at (i, k) = (1, 1) and \
         passes i <= k/2 for k <= 19"
    );
}

#[test]
fn criterion_8_z_half_assembly_with_caveat() {
    for n in [3u32, 4] {
        let mut tables: Vec<HilbertTable<u64>> = [3u32, 5, 7, 11]
            .iter()
            .map(|&p| table_u64(n, p, 20, 20))
            .collect();
        tables.push(rational_table(
            dim(n),
            &EnumerationBounds::new(20u64, 20).unwrap(),
        ));
        let report = z_half_report(&tables).unwrap();
        assert!(report.pass, "n={n}: a sampled coefficient field failed");
        assert_eq!(report.per_coefficient.len(), 5);
        assert!(
            report.caveats.iter().any(|c| c.contains("sampled")),
            "n={n}: the sampled-primes caveat is missing"
        );
    }
    println!(
        "criterion 8: PASS - sampled primes {{3,5,7,11}} plus Q all pass for n in {{3,4}} \
         and the report carries the sampled-primes caveat"
    );
}
