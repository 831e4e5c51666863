//! The library-usage example from the top-level README, kept compiling and
//! correct. Update the README whenever this file needs to change.

use phipractical::census::{default_checkpoints, run_census};
use phipractical::{classify, factorize, witness_subset};

#[test]
fn readme_library_example() {
    let f = factorize(315).unwrap();
    let flags = classify(&f);
    assert!(flags.phi_practical && !flags.practical);

    // A divisor subset of 315 whose totients sum to 7, certifying a
    // degree-7 divisor of t^315 - 1.
    let cert = witness_subset(&f, 7).unwrap();
    cert.validate(&f).unwrap();

    // Exact counts at every power of ten up to a million.
    let rows = run_census(1_000_000, &default_checkpoints(1_000_000)).unwrap();
    assert_eq!(rows.last().unwrap().f, 74_461);
}
