//! Bulk census: classify every integer up to a limit in one streaming pass
//! and record exact family counts at checkpoints.
//!
//! Each [`CensusRow`] holds, for a checkpoint `x`, the counting functions
//! over `1..=x`: `F` (φ-practical), `F_sqfree`, `PR` (practical),
//! `PR_sqfree`, `D` (2-dense), `D_strict` (strictly 2-dense), `W` (weakly
//! φ-practical), the two difference sets `PR ∖ F` and `F ∖ PR`, and `F_odd`
//! (odd φ-practical). Counting starts at n = 1, which belongs to every
//! family here except the strictly 2-dense numbers.
//!
//! The scan is block-parallel: the range is cut into intervals at checkpoint
//! and block boundaries, each interval is counted independently against the
//! shared read-only smallest-prime-factor table, and the per-interval counts
//! are merged sequentially in range order. All counts are exact integers, so
//! rows — and the CSV bytes rendered from them — are identical regardless of
//! worker count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, SpfTable};
use crate::classify::{classify, ClassificationFlags};
use crate::Error;

/// Number of integers per parallel work unit.
const BLOCK_SIZE: u64 = 1 << 20;

/// Header line shared by [`rows_to_csv`] and the CLI's CSV output.
pub const CSV_HEADER: &str = "x,F,F_sqfree,PR,PR_sqfree,D,D_strict,W,PR_not_phi,phi_not_PR,F_odd";

/// Exact family counts over `1..=x` for one checkpoint `x`.
///
/// Serialized field names match the columns of [`CSV_HEADER`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    /// Checkpoint; counts cover `1..=x`.
    pub x: u64,
    /// φ-practical numbers.
    #[serde(rename = "F")]
    pub f: u64,
    /// Squarefree φ-practical numbers.
    #[serde(rename = "F_sqfree")]
    pub f_sqfree: u64,
    /// Practical numbers.
    #[serde(rename = "PR")]
    pub pr: u64,
    /// Squarefree practical numbers.
    #[serde(rename = "PR_sqfree")]
    pub pr_sqfree: u64,
    /// 2-dense numbers.
    #[serde(rename = "D")]
    pub d: u64,
    /// Strictly 2-dense numbers.
    #[serde(rename = "D_strict")]
    pub d_strict: u64,
    /// Weakly φ-practical numbers.
    #[serde(rename = "W")]
    pub w: u64,
    /// Practical but not φ-practical.
    #[serde(rename = "PR_not_phi")]
    pub pr_not_phi: u64,
    /// φ-practical but not practical.
    #[serde(rename = "phi_not_PR")]
    pub phi_not_pr: u64,
    /// Odd φ-practical numbers.
    #[serde(rename = "F_odd")]
    pub f_odd: u64,
}

/// Presentation-layer ratios derived from one [`CensusRow`].
///
/// The `ratio_*` columns are `count · ln x / x`; `density_F` is `F / x`.
/// Counts stay exact in [`CensusRow`]; floating point appears only here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioRow {
    pub x: u64,
    #[serde(rename = "ratio_F")]
    pub ratio_f: f64,
    #[serde(rename = "ratio_PR")]
    pub ratio_pr: f64,
    #[serde(rename = "ratio_D")]
    pub ratio_d: f64,
    #[serde(rename = "ratio_Dstrict")]
    pub ratio_dstrict: f64,
    #[serde(rename = "density_F")]
    pub density_f: f64,
}

/// Running totals for the ten count columns.
#[derive(Debug, Clone, Copy, Default)]
struct Counts {
    f: u64,
    f_sqfree: u64,
    pr: u64,
    pr_sqfree: u64,
    d: u64,
    d_strict: u64,
    w: u64,
    pr_not_phi: u64,
    phi_not_pr: u64,
    f_odd: u64,
}

impl Counts {
    fn absorb(&mut self, flags: &ClassificationFlags) {
        self.f += u64::from(flags.phi_practical);
        self.f_sqfree += u64::from(flags.phi_practical && flags.squarefree);
        self.pr += u64::from(flags.practical);
        self.pr_sqfree += u64::from(flags.practical && flags.squarefree);
        self.d += u64::from(flags.two_dense);
        self.d_strict += u64::from(flags.strictly_two_dense);
        self.w += u64::from(flags.weakly_phi_practical);
        self.pr_not_phi += u64::from(flags.practical && !flags.phi_practical);
        self.phi_not_pr += u64::from(flags.phi_practical && !flags.practical);
        self.f_odd += u64::from(flags.phi_practical && !flags.even);
    }

    fn merge(&mut self, other: &Counts) {
        self.f += other.f;
        self.f_sqfree += other.f_sqfree;
        self.pr += other.pr;
        self.pr_sqfree += other.pr_sqfree;
        self.d += other.d;
        self.d_strict += other.d_strict;
        self.w += other.w;
        self.pr_not_phi += other.pr_not_phi;
        self.phi_not_pr += other.phi_not_pr;
        self.f_odd += other.f_odd;
    }

    fn row_at(&self, x: u64) -> CensusRow {
        CensusRow {
            x,
            f: self.f,
            f_sqfree: self.f_sqfree,
            pr: self.pr,
            pr_sqfree: self.pr_sqfree,
            d: self.d,
            d_strict: self.d_strict,
            w: self.w,
            pr_not_phi: self.pr_not_phi,
            phi_not_pr: self.phi_not_pr,
            f_odd: self.f_odd,
        }
    }
}

fn validate_checkpoints(limit: u64, checkpoints: &[u64]) -> Result<(), Error> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidCheckpoints("checkpoint list is empty".into()));
    }
    for w in checkpoints.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidCheckpoints(format!(
                "not strictly ascending: {} is followed by {}",
                w[0], w[1]
            )));
        }
    }
    let first = checkpoints[0];
    let last = *checkpoints.last().expect("nonempty");
    if first < 2 || last > limit {
        return Err(Error::InvalidCheckpoints(format!(
            "checkpoints must lie in [2, {limit}]; got [{first}, {last}]"
        )));
    }
    Ok(())
}

/// Cut `[1, last]` into contiguous intervals whose right endpoints include
/// every checkpoint (so running totals can be emitted there) and every
/// multiple of [`BLOCK_SIZE`] below `last` (so no work unit exceeds one
/// block).
fn intervals(last: u64, checkpoints: &[u64]) -> Vec<(u64, u64)> {
    let mut ends: Vec<u64> = Vec::new();
    let mut edge = BLOCK_SIZE;
    while edge < last {
        ends.push(edge);
        edge += BLOCK_SIZE;
    }
    ends.extend_from_slice(checkpoints);
    ends.sort_unstable();
    ends.dedup();
    let mut parts = Vec::with_capacity(ends.len());
    let mut start = 1;
    for &end in &ends {
        parts.push((start, end));
        start = end + 1;
    }
    parts
}

fn count_range(table: &SpfTable, lo: u64, hi: u64) -> Counts {
    let mut counts = Counts::default();
    for n in lo..=hi {
        let f = table
            .factorize(n)
            .expect("interval endpoints stay within the table limit");
        counts.absorb(&classify(&f));
    }
    counts
}

/// Run the census over `1..=limit`, emitting one [`CensusRow`] per
/// checkpoint.
///
/// `checkpoints` must be strictly ascending and contained in `[2, limit]`;
/// violations are reported as [`Error::InvalidCheckpoints`]. Limits below 2
/// or beyond the sieve cap are reported as [`Error::LimitTooLarge`].
pub fn run_census(limit: u64, checkpoints: &[u64]) -> Result<Vec<CensusRow>, Error> {
    if limit < 2 {
        // Let the sieve constructor produce its uniform out-of-range error.
        SpfTable::build(limit)?;
    }
    validate_checkpoints(limit, checkpoints)?;
    let table = SpfTable::build(limit)?;
    run_census_with_table(&table, checkpoints)
}

/// Same as [`run_census`] but reuses an already-built table. The scan stops
/// at the last checkpoint, which must not exceed `table.limit()`.
pub fn run_census_with_table(
    table: &SpfTable,
    checkpoints: &[u64],
) -> Result<Vec<CensusRow>, Error> {
    validate_checkpoints(table.limit(), checkpoints)?;
    let last = *checkpoints.last().expect("nonempty");
    let parts = intervals(last, checkpoints);
    let partials: Vec<Counts> = parts
        .par_iter()
        .map(|&(lo, hi)| count_range(table, lo, hi))
        .collect();

    let mut running = Counts::default();
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut next = 0usize;
    for ((_, hi), partial) in parts.iter().zip(&partials) {
        running.merge(partial);
        if next < checkpoints.len() && *hi == checkpoints[next] {
            rows.push(running.row_at(*hi));
            next += 1;
        }
    }
    debug_assert_eq!(next, checkpoints.len(), "every checkpoint must be emitted");
    Ok(rows)
}

/// Powers of ten up to `limit`, with `limit` itself appended when it is not
/// already a power of ten.
pub fn default_checkpoints(limit: u64) -> Vec<u64> {
    let mut cps = Vec::new();
    let mut p: u64 = 10;
    while p <= limit {
        cps.push(p);
        match p.checked_mul(10) {
            Some(next) => p = next,
            None => break,
        }
    }
    if limit >= 2 && cps.last() != Some(&limit) {
        cps.push(limit);
    }
    cps
}

/// Derive `count · ln x / x` ratios and the `F/x` density for each row.
pub fn ratio_table(rows: &[CensusRow]) -> Vec<RatioRow> {
    rows.iter()
        .map(|r| {
            let x = r.x as f64;
            let ln_x = x.ln();
            RatioRow {
                x: r.x,
                ratio_f: r.f as f64 * ln_x / x,
                ratio_pr: r.pr as f64 * ln_x / x,
                ratio_d: r.d as f64 * ln_x / x,
                ratio_dstrict: r.d_strict as f64 * ln_x / x,
                density_f: r.f as f64 / x,
            }
        })
        .collect()
}

/// A family of integers selectable in [`list_members`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Practical,
    PhiPractical,
    WeaklyPhiPractical,
    TwoDense,
    StrictlyTwoDense,
    /// Odd φ-practical numbers.
    PlusPractical,
    /// Practical but not φ-practical.
    PracticalNotPhiPractical,
    /// φ-practical but not practical.
    PhiPracticalNotPractical,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Practical,
        Family::PhiPractical,
        Family::WeaklyPhiPractical,
        Family::TwoDense,
        Family::StrictlyTwoDense,
        Family::PlusPractical,
        Family::PracticalNotPhiPractical,
        Family::PhiPracticalNotPractical,
    ];

    /// Kebab-case name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Family::Practical => "practical",
            Family::PhiPractical => "phi-practical",
            Family::WeaklyPhiPractical => "weakly-phi-practical",
            Family::TwoDense => "2-dense",
            Family::StrictlyTwoDense => "strictly-2-dense",
            Family::PlusPractical => "plus-practical",
            Family::PracticalNotPhiPractical => "practical-not-phi-practical",
            Family::PhiPracticalNotPractical => "phi-practical-not-practical",
        }
    }

    /// Whether an integer with the given flags belongs to this family.
    pub fn contains(self, flags: &ClassificationFlags) -> bool {
        match self {
            Family::Practical => flags.practical,
            Family::PhiPractical => flags.phi_practical,
            Family::WeaklyPhiPractical => flags.weakly_phi_practical,
            Family::TwoDense => flags.two_dense,
            Family::StrictlyTwoDense => flags.strictly_two_dense,
            Family::PlusPractical => flags.phi_practical && !flags.even,
            Family::PracticalNotPhiPractical => flags.practical && !flags.phi_practical,
            Family::PhiPracticalNotPractical => flags.phi_practical && !flags.practical,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL
            .iter()
            .copied()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Parity filter for [`list_members`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parity {
    #[default]
    Any,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, flags: &ClassificationFlags) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => !flags.even,
            Parity::Even => flags.even,
        }
    }
}

/// List all members of `family` up to `limit`, ascending, optionally
/// restricted to squarefree members and/or one parity.
pub fn list_members(
    limit: u64,
    family: Family,
    squarefree_only: bool,
    parity: Parity,
) -> Result<Vec<u64>, Error> {
    let keep = |flags: &ClassificationFlags| {
        family.contains(flags) && (!squarefree_only || flags.squarefree) && parity.admits(flags)
    };
    if limit == 0 {
        return Ok(Vec::new());
    }
    if limit == 1 {
        // Below the sieve's minimum limit; classify n = 1 directly.
        let flags = classify(&factorize(1)?);
        return Ok(if keep(&flags) { vec![1] } else { Vec::new() });
    }
    let table = SpfTable::build(limit)?;
    let mut members = Vec::new();
    for n in 1..=limit {
        let flags = classify(&table.factorize(n)?);
        if keep(&flags) {
            members.push(n);
        }
    }
    Ok(members)
}

/// Render rows as the stable CSV document: [`CSV_HEADER`], then one line per
/// checkpoint with counts as unsigned decimal integers.
pub fn rows_to_csv(rows: &[CensusRow]) -> String {
    use std::fmt::Write;
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.x,
            r.f,
            r.f_sqfree,
            r.pr,
            r.pr_sqfree,
            r.d,
            r.d_strict,
            r.w,
            r.pr_not_phi,
            r.phi_not_pr,
            r.f_odd
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Render rows as a JSON array mirroring the CSV schema.
pub fn rows_to_json(rows: &[CensusRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows contain no non-serializable values")
}

/// Render a ratio table as CSV.
pub fn ratios_to_csv(rows: &[RatioRow]) -> String {
    use std::fmt::Write;
    let mut out = String::from("x,ratio_F,ratio_PR,ratio_D,ratio_Dstrict,density_F\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.x, r.ratio_f, r.ratio_pr, r.ratio_d, r.ratio_dstrict, r.density_f
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Render a ratio table as a JSON array.
pub fn ratios_to_json(rows: &[RatioRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows contain no non-serializable values")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_row(limit: u64) -> CensusRow {
        run_census(limit, &[limit]).unwrap()[0]
    }

    #[test]
    fn hand_counted_row_at_ten() {
        // Over 1..=10:
        //   φ-practical: 1,2,3,4,6,8; squarefree among them: 1,2,3,6
        //   practical: 1,2,4,6,8; squarefree among them: 1,2,6
        //   2-dense: 1,2,6; strictly 2-dense: 2,6
        //   weakly φ-practical: 1,2,3,4,6,8,9
        //   practical ∖ φ-practical: none; φ-practical ∖ practical: 3
        //   odd φ-practical: 1,3
        assert_eq!(
            single_row(10),
            CensusRow {
                x: 10,
                f: 6,
                f_sqfree: 4,
                pr: 5,
                pr_sqfree: 3,
                d: 3,
                d_strict: 2,
                w: 7,
                pr_not_phi: 0,
                phi_not_pr: 1,
                f_odd: 2,
            }
        );
    }

    #[test]
    fn smallest_limit() {
        let r = single_row(2);
        assert_eq!((r.f, r.pr), (2, 2));
        assert_eq!(r.d_strict, 1); // 2 itself
    }

    #[test]
    fn checkpoint_prefix_consistency() {
        // Counts at an interior checkpoint equal a fresh run with that limit.
        let rows = run_census(2000, &[10, 300, 2000]).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert_eq!(*r, single_row(r.x));
        }
    }

    #[test]
    fn checkpoint_validation() {
        for bad in [
            &[] as &[u64],
            &[10, 10],
            &[20, 10],
            &[1, 10],
            &[10, 101],
        ] {
            assert!(
                matches!(run_census(100, bad), Err(Error::InvalidCheckpoints(_))),
                "checkpoints {bad:?} should be rejected"
            );
        }
        // A limit below the sieve minimum is a limit error, not a
        // checkpoint error, regardless of the checkpoint list.
        assert!(matches!(
            run_census(1, &[]),
            Err(Error::LimitTooLarge { .. })
        ));
    }

    #[test]
    fn interval_cover_is_exact_and_block_bounded() {
        let cps = [2, 1_048_576, 1_048_577, 3_000_000];
        let parts = intervals(3_000_000, &cps);
        assert_eq!(parts.first().unwrap().0, 1);
        for w in parts.windows(2) {
            assert_eq!(w[0].1 + 1, w[1].0, "intervals must be contiguous");
        }
        assert_eq!(parts.last().unwrap().1, 3_000_000);
        for c in cps {
            assert!(
                parts.iter().any(|p| p.1 == c),
                "checkpoint {c} must end an interval"
            );
        }
        for p in &parts {
            assert!(p.1 - p.0 < BLOCK_SIZE, "interval {p:?} exceeds a block");
        }
    }

    #[test]
    fn worker_count_independence() {
        let cps = [10, 100, 1000, 5000];
        let run_with = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_census(5000, &cps).unwrap())
        };
        let single = run_with(1);
        let four = run_with(4);
        assert_eq!(single, four);
        assert_eq!(rows_to_csv(&single), rows_to_csv(&four));
    }

    #[test]
    fn default_checkpoint_sets() {
        assert_eq!(default_checkpoints(10), vec![10]);
        assert_eq!(default_checkpoints(2), vec![2]);
        assert_eq!(default_checkpoints(1000), vec![10, 100, 1000]);
        assert_eq!(
            default_checkpoints(500_000),
            vec![10, 100, 1000, 10_000, 100_000, 500_000]
        );
    }

    #[test]
    fn ratio_table_matches_hand_values() {
        let ratios = ratio_table(&run_census(10, &[10]).unwrap());
        assert_eq!(ratios.len(), 1);
        let r = ratios[0];
        assert_eq!(r.x, 10);
        assert!((r.ratio_f - 6.0 * 10f64.ln() / 10.0).abs() < 1e-12);
        assert!((r.ratio_f - 1.381551).abs() < 1e-5);
        assert!((r.density_f - 0.6).abs() < 1e-15);
        assert!(r.ratio_pr > 0.0 && r.ratio_d > 0.0 && r.ratio_dstrict > 0.0);
    }

    #[test]
    fn csv_document_is_byte_stable() {
        let rows = run_census(10, &[10]).unwrap();
        assert_eq!(
            rows_to_csv(&rows),
            "x,F,F_sqfree,PR,PR_sqfree,D,D_strict,W,PR_not_phi,phi_not_PR,F_odd\n\
             10,6,4,5,3,3,2,7,0,1,2\n"
        );
    }

    #[test]
    fn json_document_round_trips() {
        let rows = run_census(100, &[10, 100]).unwrap();
        let json = rows_to_json(&rows);
        let back: Vec<CensusRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rows);
        assert!(json.contains("\"F_sqfree\""));
        assert!(json.contains("\"phi_not_PR\""));
    }

    #[test]
    fn row_invariants_hold_along_checkpoints() {
        let rows = run_census(10_000, &[10, 100, 1000, 10_000]).unwrap();
        let mut prev: Option<CensusRow> = None;
        for r in &rows {
            assert!(r.f <= r.w, "x={}", r.x);
            assert!(r.d_strict <= r.d && r.d <= r.pr_sqfree && r.pr_sqfree <= r.pr);
            assert!(r.d_strict <= r.f);
            assert!(r.f_sqfree <= r.f);
            // |F ∩ PR| computed from either side must agree.
            assert_eq!(r.f - r.phi_not_pr, r.pr - r.pr_not_phi);
            if let Some(p) = prev {
                for (a, b) in [
                    (p.f, r.f),
                    (p.f_sqfree, r.f_sqfree),
                    (p.pr, r.pr),
                    (p.pr_sqfree, r.pr_sqfree),
                    (p.d, r.d),
                    (p.d_strict, r.d_strict),
                    (p.w, r.w),
                    (p.pr_not_phi, r.pr_not_phi),
                    (p.phi_not_pr, r.phi_not_pr),
                    (p.f_odd, r.f_odd),
                ] {
                    assert!(a <= b, "counts must be monotone in x");
                }
            }
            prev = Some(*r);
        }
    }

    #[test]
    fn member_lists_match_known_prefixes() {
        assert_eq!(
            list_members(10, Family::PhiPractical, false, Parity::Any).unwrap(),
            vec![1, 2, 3, 4, 6, 8]
        );
        assert_eq!(
            list_members(10, Family::StrictlyTwoDense, false, Parity::Any).unwrap(),
            vec![2, 6]
        );
        // Odd φ-practical numbers > 1 are never practical, so the odd members
        // of F ∖ PR are exactly the odd φ-practical numbers > 1: 3, 15, …
        let odd_gap =
            list_members(100, Family::PhiPracticalNotPractical, false, Parity::Odd).unwrap();
        assert_eq!(&odd_gap[..2], &[3, 15]);
    }

    #[test]
    fn member_list_filters() {
        assert_eq!(
            list_members(10, Family::PhiPractical, true, Parity::Any).unwrap(),
            vec![1, 2, 3, 6]
        );
        assert_eq!(
            list_members(10, Family::PhiPractical, false, Parity::Even).unwrap(),
            vec![2, 4, 6, 8]
        );
        assert_eq!(
            list_members(100, Family::PlusPractical, false, Parity::Any).unwrap(),
            list_members(100, Family::PhiPractical, false, Parity::Odd).unwrap()
        );
    }

    #[test]
    fn member_list_tiny_limits() {
        assert_eq!(
            list_members(1, Family::Practical, false, Parity::Any).unwrap(),
            vec![1]
        );
        assert_eq!(
            list_members(1, Family::StrictlyTwoDense, false, Parity::Any).unwrap(),
            Vec::<u64>::new()
        );
        assert_eq!(
            list_members(0, Family::Practical, false, Parity::Any).unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert_eq!("2-dense".parse::<Family>().unwrap(), Family::TwoDense);
        assert!(matches!(
            "bogus".parse::<Family>(),
            Err(Error::UnknownFamily(_))
        ));
    }
}
