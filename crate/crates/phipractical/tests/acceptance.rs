//! Acceptance gate: eight end-to-end checks, each printing one PASS/FAIL
//! line (run with `--nocapture` to see them). Together they cover oracle
//! equivalence, known spot values, the verification suite at its documented
//! limits, the census inequalities, frozen regression counts, witness
//! soundness, and census determinism and performance.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use phipractical::census::{ratio_table, rows_to_csv, run_census, CensusRow, CSV_HEADER};
use phipractical::classify::is_phi_practical;
use phipractical::cyclotomic::divisor_degrees;
use phipractical::verify::{verify, LemmaId};
use phipractical::{classify, factorize, witness_subset, SpfTable};

/// Print the verdict line for criterion `k`, then enforce it.
fn report(k: u32, label: &str, ok: bool, details: &str) {
    println!(
        "ACCEPTANCE {k} ({label}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance criterion {k} ({label}) failed: {details}");
}

const CENSUS_LIMIT: u64 = 10_000_000;
const CENSUS_CHECKPOINTS: [u64; 7] = [10, 100, 1000, 10_000, 100_000, 1_000_000, 10_000_000];

/// The 10^7 census, computed once on a dedicated single-worker pool so its
/// wall time measures single-threaded performance.
fn census_single() -> &'static (Vec<CensusRow>, Duration) {
    static CELL: OnceLock<(Vec<CensusRow>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("building a one-worker pool cannot fail");
        let start = Instant::now();
        let rows = pool.install(|| {
            run_census(CENSUS_LIMIT, &CENSUS_CHECKPOINTS).expect("census to 10^7 must succeed")
        });
        (rows, start.elapsed())
    })
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let oracle = verify(LemmaId::OracleAgreement, Some(20_000)).expect("verifier must run");
    let elapsed = start.elapsed();
    let ok = oracle.passed && oracle.cases == 40_000 && elapsed < Duration::from_secs(60);
    report(
        1,
        "fast predicates equal subset-sum oracles up to 20000",
        ok,
        &format!(
            "passed = {}, cases = {}, elapsed = {elapsed:?}, counterexamples = {:?}",
            oracle.passed, oracle.cases, oracle.counterexamples
        ),
    );
}

#[test]
fn criterion_2_spot_values() {
    let mut failures: Vec<String> = Vec::new();

    let f315 = classify(&factorize(315).expect("315 factors"));
    if !f315.phi_practical {
        failures.push("315 must be phi-practical".into());
    }

    let f45 = factorize(45).expect("45 factors");
    let c45 = classify(&f45);
    if !(c45.weakly_phi_practical && !c45.phi_practical) {
        failures.push("45 must be weakly phi-practical but not phi-practical".into());
    }
    let missing45 = divisor_degrees(&f45)
        .expect("degree set of 45")
        .missing_degrees();
    if missing45 != vec![22, 23] {
        failures.push(format!(
            "45 must miss exactly degrees 22 and 23, got {missing45:?}"
        ));
    }

    let c66 = classify(&factorize(66).expect("66 factors"));
    if !(c66.two_dense && !c66.phi_practical) {
        failures.push("66 must be 2-dense but not phi-practical".into());
    }

    let degrees28 = divisor_degrees(&factorize(28).expect("28 factors")).expect("degree set of 28");
    if degrees28.contains(5) {
        failures.push("28 must have no divisor-degree 5".into());
    }

    let c1 = classify(&factorize(1).expect("1 factors"));
    if !(c1.weakly_phi_practical && c1.phi_practical) {
        failures.push("1 must be both weakly phi-practical and phi-practical".into());
    }

    report(
        2,
        "known spot values reproduce exactly",
        failures.is_empty(),
        &failures.join("; "),
    );
}

#[test]
fn criterion_3_verification_suite_green() {
    let plan: [(LemmaId, u64); 10] = [
        (LemmaId::Necessary, 1_000_000),
        (LemmaId::EvenPractical, 1_000_000),
        (LemmaId::Pproduct, 100_000),
        (LemmaId::SquarefreeIff, 1_000_000),
        (LemmaId::StrictImpliesPhi, 1_000_000),
        (LemmaId::TRecursion, 1_000_000),
        (LemmaId::TauBound, 1_000_000),
        (LemmaId::Keylemma, 3_000),
        (LemmaId::CyclotomicIdentity, 500),
        (LemmaId::Containment2Dense, 10_000),
    ];
    let mut failures: Vec<String> = Vec::new();
    for (lemma, limit) in plan {
        let outcome = verify(lemma, Some(limit)).expect("verifier must run");
        if !outcome.passed || !outcome.counterexamples.is_empty() {
            failures.push(format!(
                "{} at {limit}: {} counterexamples",
                lemma.name(),
                outcome.counterexamples.len()
            ));
        }
    }
    report(
        3,
        "verification suite green at documented limits",
        failures.is_empty(),
        &failures.join("; "),
    );
}

#[test]
fn criterion_4_count_growth_chain() {
    let xs: [u64; 5] = [100, 1_000, 10_000, 100_000, 500_000];
    let mut checkpoints: Vec<u64> = xs.iter().flat_map(|&x| [x, 2 * x]).collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let rows = run_census(1_000_000, &checkpoints).expect("census to 10^6 must succeed");
    let row_at = |x: u64| {
        rows.iter()
            .find(|r| r.x == x)
            .expect("comparison point is a checkpoint")
    };
    let mut failures: Vec<String> = Vec::new();
    for &x in &xs {
        let f_x = row_at(x).f;
        let pr_2x = row_at(2 * x).pr;
        if f_x > pr_2x {
            failures.push(format!("F({x}) = {f_x} > {pr_2x} = PR({})", 2 * x));
        }
    }
    report(
        4,
        "F(x) <= PR(2x) at every checkpoint",
        failures.is_empty(),
        &failures.join("; "),
    );
}

#[test]
fn criterion_5_density_strictly_decreases() {
    let (rows, _) = census_single();
    let densities: Vec<(u64, f64)> = rows
        .iter()
        .filter(|r| r.x >= 100)
        .map(|r| (r.x, r.f as f64 / r.x as f64))
        .collect();
    let ok = densities.len() == 6 && densities.windows(2).all(|w| w[1].1 < w[0].1);
    report(
        5,
        "F(x)/x strictly decreases across decade checkpoints",
        ok,
        &format!("densities by checkpoint: {densities:?}"),
    );
}

#[test]
fn criterion_6_frozen_regression_counts() {
    // Counts frozen from the first verified run; byte-for-byte equality
    // required from every subsequent run.
    const FROZEN_TAIL: &str = "10000,1198,99,1456,124,90,30,1393,360,102,103\n\
                               100000,9301,724,11751,774,684,291,10618,3259,809,810\n\
                               1000000,74461,4933,97385,7808,6272,1432,85677,29395,6471,6472\n\
                               10000000,635528,42879,829157,57859,42873,14140,724979,251633,58004,58005\n";
    let (rows, _) = census_single();
    let mut failures: Vec<String> = Vec::new();

    // Hand-countable anchors.
    let first = rows[0];
    if (first.f, first.pr, first.d, first.d_strict, first.f_sqfree) != (6, 5, 3, 2, 4) {
        failures.push(format!("row at x = 10 drifted: {first:?}"));
    }

    let tail: Vec<CensusRow> = rows.iter().filter(|r| r.x >= 10_000).copied().collect();
    let rendered = rows_to_csv(&tail);
    let expected = format!("{CSV_HEADER}\n{FROZEN_TAIL}");
    if rendered != expected {
        failures.push(format!(
            "frozen CSV mismatch:\nexpected:\n{expected}\ngot:\n{rendered}"
        ));
    }

    // Ratio bands frozen from the same run. Counts are the regression
    // contract; these bands catch gross drift in the derived columns.
    for r in ratio_table(&tail) {
        let ln_x = (r.x as f64).ln();
        let row = tail.iter().find(|c| c.x == r.x).expect("same checkpoints");
        let gap_pr_not_phi = row.pr_not_phi as f64 * ln_x / r.x as f64;
        let gap_phi_not_pr = row.phi_not_pr as f64 * ln_x / r.x as f64;
        let odd = row.f_odd as f64 * ln_x / r.x as f64;
        let in_bands = (1.0..=1.15).contains(&r.ratio_f)
            && (1.30..=1.40).contains(&r.ratio_pr)
            && (0.015..=0.04).contains(&r.ratio_dstrict)
            && gap_pr_not_phi > 0.30
            && gap_phi_not_pr > 0.08
            && odd > 0.08;
        if !in_bands {
            failures.push(format!(
                "ratio bands violated at x = {}: ratio_F = {}, ratio_PR = {}, \
                 ratio_Dstrict = {}, gaps = ({gap_pr_not_phi}, {gap_phi_not_pr}), odd = {odd}",
                r.x, r.ratio_f, r.ratio_pr, r.ratio_dstrict
            ));
        }
    }

    report(
        6,
        "frozen census counts match byte-for-byte",
        failures.is_empty(),
        &failures.join("; "),
    );
}

#[test]
fn criterion_7_witness_soundness() {
    let table = SpfTable::build(3_000).expect("sieve to 3000");
    let mut failures: Vec<String> = Vec::new();
    let mut certificates: u64 = 0;
    let mut polynomials: u64 = 0;

    for n in 1..=3_000u64 {
        let f = table.factorize(n).expect("n is within the table limit");
        if !is_phi_practical(&f) {
            continue;
        }
        for m in 0..=n {
            match witness_subset(&f, m) {
                Ok(cert) => {
                    certificates += 1;
                    if let Err(err) = cert.validate(&f) {
                        failures.push(format!("invalid certificate for n={n}, m={m}: {err}"));
                    }
                    if n <= 200 {
                        match phipractical::cyclotomic::witness_polynomial(&cert) {
                            Ok(poly) => {
                                polynomials += 1;
                                if poly.degree() != Some(m as usize) {
                                    failures
                                        .push(format!("degree mismatch for n={n}, m={m}: {poly}"));
                                }
                            }
                            Err(err) => {
                                failures.push(format!("polynomial failed for n={n}, m={m}: {err}"))
                            }
                        }
                    }
                }
                Err(err) => failures.push(format!("no witness for n={n}, m={m}: {err}")),
            }
            if failures.len() > 20 {
                break;
            }
        }
        if failures.len() > 20 {
            break;
        }
    }

    let ok = failures.is_empty() && certificates > 0 && polynomials > 0;
    report(
        7,
        "witnesses exist and their polynomials divide exactly",
        ok,
        &format!(
            "{certificates} certificates, {polynomials} polynomials; first failures: {}",
            failures.join("; ")
        ),
    );
}

#[test]
fn criterion_8_determinism_and_performance() {
    let (single_rows, single_elapsed) = census_single();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .expect("building a four-worker pool cannot fail");
    let multi_rows = pool.install(|| {
        run_census(CENSUS_LIMIT, &CENSUS_CHECKPOINTS).expect("census to 10^7 must succeed")
    });
    let same_bytes = rows_to_csv(single_rows) == rows_to_csv(&multi_rows);
    let fast_enough = *single_elapsed < Duration::from_secs(300);
    report(
        8,
        "census to 10^7 is worker-count deterministic and fast",
        same_bytes && fast_enough,
        &format!("identical bytes = {same_bytes}, single-threaded time = {single_elapsed:?}"),
    );
}
