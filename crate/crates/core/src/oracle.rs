//! Brute-force ground truth and report validation, independent of the
//! tracker machinery.

use std::fmt;

use crate::candidates::{CandidateMatrix, SymbolMatrix};
use crate::error::{Error, Result};
use crate::memory::{euclidean_distance, threshold_for, MotifReport};
use crate::preprocess::{Alphabet, Params, TimeSeries};
use crate::symbol::SymbolString;

/// Default cap on series length for the quadratic brute-force scan.
pub const BRUTE_FORCE_LIMIT: usize = 2000;

/// Distance agreement required when re-deriving a report's recorded values.
pub const ED_TOLERANCE: f64 = 1e-9;

/// One passing grid-aligned pair found by exhaustive search.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleEntry {
    pub span: usize,
    pub start_x: usize,
    pub start_y: usize,
    pub ed: f64,
}

/// Every subsequence pair on the symbol grid passing the distance test,
/// ordered by (span, start_x, start_y).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OracleMotifSet {
    pub entries: Vec<OracleEntry>,
}

impl OracleMotifSet {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("span,start_x,start_y,ed\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{}\n",
                e.span, e.start_x, e.start_y, e.ed
            ));
        }
        out
    }
}

/// Exhaustively test every start pair at every span that is a multiple of
/// `s`, up to `max_span`. Pairs whose intervals overlap by more than
/// `span - s` points are excluded: the candidate stream can never present
/// both ends of such a pair, so they are outside the completeness claim.
pub fn brute_force_motifs(
    series: &TimeSeries,
    params: &Params,
    max_span: usize,
) -> Result<OracleMotifSet> {
    brute_force_motifs_with_limit(series, params, max_span, BRUTE_FORCE_LIMIT)
}

pub fn brute_force_motifs_with_limit(
    series: &TimeSeries,
    params: &Params,
    max_span: usize,
    limit: usize,
) -> Result<OracleMotifSet> {
    let norm = &series.norm;
    if norm.len() > limit {
        return Err(Error::TooLarge {
            len: norm.len(),
            limit,
        });
    }
    let s = params.s;
    let mut entries = Vec::new();
    for k in 1..=max_span / s {
        let span = k * s;
        if span > norm.len() {
            break;
        }
        let threshold = threshold_for(span, params);
        let threshold_sq = threshold * threshold;
        let last_start = norm.len() - span;
        for x in 0..=last_start {
            for y in (x + s)..=last_start {
                // squared-distance accumulation with early abandonment
                let mut sum = 0.0;
                for i in 0..span {
                    let d = norm[x + i] - norm[y + i];
                    sum += d * d;
                    if sum > threshold_sq {
                        break;
                    }
                }
                if sum <= threshold_sq {
                    entries.push(OracleEntry {
                        span,
                        start_x: x,
                        start_y: y,
                        ed: sum.sqrt(),
                    });
                }
            }
        }
    }
    Ok(OracleMotifSet { entries })
}

/// A symbol-identical, elimination-surviving, distance-passing pair: the set
/// of these is exactly what a discovery report is expected to cover.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverablePair {
    pub generation: usize,
    pub span: usize,
    pub start_x: usize,
    pub start_y: usize,
    pub text: SymbolString,
    pub ed: f64,
}

/// Enumerate the coverable pairs for this series and parameter set.
///
/// Equivalent to intersecting the brute-force set with the symbol-identical
/// and elimination-surviving conditions, but computed per generation from
/// the candidate matrices so large spans stay tractable.
pub fn coverable_pairs(series: &TimeSeries, params: &Params) -> Result<Vec<CoverablePair>> {
    let alphabet = Alphabet::new(params.a)?;
    let matrix = SymbolMatrix::build(series, params, &alphabet)?;
    let norm_len = series.norm.len();
    let s = params.s;
    let mut pairs = Vec::new();
    for generation in 1..=params.effective_max_generations(norm_len) {
        let span = generation * s;
        if span > norm_len {
            break;
        }
        let m = CandidateMatrix::build(&matrix, generation)?;
        let threshold = threshold_for(span, params);
        // group retained starts by word text
        let mut by_text: std::collections::BTreeMap<&SymbolString, Vec<usize>> =
            std::collections::BTreeMap::new();
        for w in &m.words {
            by_text.entry(&w.text).or_default().push(w.start);
        }
        for (text, starts) in by_text {
            for (i, &x) in starts.iter().enumerate() {
                for &y in &starts[i + 1..] {
                    if y - x < s {
                        continue; // trivial overlap, outside the claim
                    }
                    let ed = euclidean_distance(&series.norm, x, y, span)?;
                    if ed <= threshold {
                        pairs.push(CoverablePair {
                            generation,
                            span,
                            start_x: x,
                            start_y: y,
                            text: text.clone(),
                            ed,
                        });
                    }
                }
            }
        }
    }
    Ok(pairs)
}

/// Outcome of validating a report: empty failure lists mean PASS.
#[derive(Clone, Debug, Default)]
pub struct Verdict {
    pub soundness_failures: Vec<String>,
    pub completeness_misses: Vec<String>,
}

impl Verdict {
    pub fn soundness_ok(&self) -> bool {
        self.soundness_failures.is_empty()
    }

    pub fn completeness_ok(&self) -> bool {
        self.completeness_misses.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.soundness_ok() && self.completeness_ok()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "PASS");
        }
        writeln!(
            f,
            "FAIL: {} soundness failure(s), {} completeness miss(es)",
            self.soundness_failures.len(),
            self.completeness_misses.len()
        )?;
        for line in self.soundness_failures.iter().chain(&self.completeness_misses) {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Check a discovery report against this series.
///
/// Soundness re-derives every recorded distance from the normalized series
/// alone and requires each occurrence to take part in at least one passing
/// pair. Completeness requires every coverable pair to be represented in the
/// report, either directly (same text, both starts) or inside a longer
/// motif's occurrences.
pub fn validate_report(
    report: &MotifReport,
    series: &TimeSeries,
    params: &Params,
) -> Result<Verdict> {
    let mut verdict = Verdict::default();
    soundness(report, series, params, &mut verdict.soundness_failures);
    completeness(report, series, params, &mut verdict.completeness_misses)?;
    Ok(verdict)
}

fn soundness(
    report: &MotifReport,
    series: &TimeSeries,
    params: &Params,
    failures: &mut Vec<String>,
) {
    if report.params.s != params.s || report.params.a != params.a || report.params.r != params.r {
        failures.push(format!(
            "report parameters {:?} do not match run parameters {:?}",
            report.params, params
        ));
        return;
    }
    let norm = &series.norm;
    for motif in &report.motifs {
        let label = format!("motif {} (span {})", motif.text, motif.span_points);
        if motif.span_points != motif.text.len() * params.s {
            failures.push(format!(
                "{label}: span {} is not text length {} times s {}",
                motif.span_points,
                motif.text.len(),
                params.s
            ));
            continue;
        }
        if motif.starts_diff_coords != motif.starts_raw_coords {
            failures.push(format!("{label}: coordinate views disagree"));
        }
        let starts = &motif.starts_diff_coords;
        if starts.len() < 2 {
            failures.push(format!("{label}: fewer than two occurrences"));
            continue;
        }
        if starts.windows(2).any(|w| w[0] >= w[1]) {
            failures.push(format!("{label}: starts not strictly increasing"));
        }
        let n = starts.len();
        if motif.ed_matrix.len() != n || motif.ed_matrix.iter().any(|row| row.len() != n) {
            failures.push(format!("{label}: distance matrix is not {n}x{n}"));
            continue;
        }
        let threshold = threshold_for(motif.span_points, params);
        let mut in_passing_pair = vec![false; n];
        for i in 0..n {
            if motif.ed_matrix[i][i] != 0.0 {
                failures.push(format!("{label}: nonzero diagonal at {i}"));
            }
            for j in i + 1..n {
                let recorded = motif.ed_matrix[i][j];
                if (motif.ed_matrix[j][i] - recorded).abs() > ED_TOLERANCE {
                    failures.push(format!("{label}: matrix not symmetric at ({i},{j})"));
                }
                let recomputed =
                    match euclidean_distance(norm, starts[i], starts[j], motif.span_points) {
                        Ok(d) => d,
                        Err(e) => {
                            failures.push(format!("{label}: occurrence out of range: {e}"));
                            continue;
                        }
                    };
                if (recorded - recomputed).abs() > ED_TOLERANCE {
                    failures.push(format!(
                        "{label}: recorded ED {recorded} disagrees with recomputed {recomputed} for pair ({},{})",
                        starts[i], starts[j]
                    ));
                }
                if recorded <= threshold {
                    if recomputed > threshold + ED_TOLERANCE {
                        failures.push(format!(
                            "{label}: pair ({},{}) marked passing but ED {recomputed} exceeds {threshold}",
                            starts[i], starts[j]
                        ));
                    }
                    in_passing_pair[i] = true;
                    in_passing_pair[j] = true;
                }
            }
        }
        for (i, ok) in in_passing_pair.iter().enumerate() {
            if !ok {
                failures.push(format!(
                    "{label}: occurrence {} is in no passing pair",
                    starts[i]
                ));
            }
        }
    }
}

fn completeness(
    report: &MotifReport,
    series: &TimeSeries,
    params: &Params,
    misses: &mut Vec<String>,
) -> Result<()> {
    for pair in coverable_pairs(series, params)? {
        let direct = report.motifs.iter().any(|m| {
            m.text == pair.text
                && m.starts_diff_coords.contains(&pair.start_x)
                && m.starts_diff_coords.contains(&pair.start_y)
        });
        if direct {
            continue;
        }
        let inside_longer = report.motifs.iter().any(|m| {
            m.span_points > pair.span
                && [pair.start_x, pair.start_y].iter().all(|&occ| {
                    m.starts_diff_coords
                        .iter()
                        .any(|&big| big <= occ && occ + pair.span <= big + m.span_points)
                })
        });
        if !inside_longer {
            misses.push(format!(
                "uncovered pair: text {} span {} at ({}, {}), ED {}",
                pair.text, pair.span, pair.start_x, pair.start_y, pair.ed
            ));
        }
    }
    Ok(())
}
