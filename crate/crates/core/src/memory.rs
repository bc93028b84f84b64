//! Numeric confirmation of symbol-level matches, the memory pool of
//! confirmed motifs, and streamlining into the final report.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::{Params, TimeSeries};
use crate::symbol::SymbolString;

/// Euclidean distance between the `span`-point segments of `norm` starting at
/// `x` and `y`.
pub fn euclidean_distance(norm: &[f64], x: usize, y: usize, span: usize) -> Result<f64> {
    for start in [x, y] {
        if start + span > norm.len() {
            return Err(Error::OutOfRange {
                start,
                span,
                len: norm.len(),
            });
        }
    }
    let sum: f64 = (0..span)
        .map(|i| {
            let d = norm[x + i] - norm[y + i];
            d * d
        })
        .sum();
    Ok(sum.sqrt())
}

/// Match threshold for a candidate of `span` data points: `r` per point.
pub fn threshold_for(span: usize, params: &Params) -> f64 {
    params.r * span as f64
}

/// Confirmed motifs accumulated during the generation loop, keyed by symbol
/// string. Passing pairs with the same text merge into one entry.
#[derive(Clone, Debug, Default)]
pub struct MemoryPool {
    entries: BTreeMap<SymbolString, PoolEntry>,
}

#[derive(Clone, Debug)]
struct PoolEntry {
    starts: BTreeSet<usize>,
    generation: usize,
}

impl MemoryPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Record a passing occurrence pair for `text`.
    pub fn insert(&mut self, text: &SymbolString, x: usize, y: usize, generation: usize) {
        let entry = self
            .entries
            .entry(text.clone())
            .or_insert_with(|| PoolEntry {
                starts: BTreeSet::new(),
                generation,
            });
        entry.starts.insert(x);
        entry.starts.insert(y);
    }

    /// Euclidean-distance confirmation of a tracker's matched starts.
    ///
    /// Every unordered start pair is tested over `text.len() * s` points of
    /// the normalized series; each passing pair stimulates once and is merged
    /// into the pool. Returns the stimulation count.
    pub fn confirm_motifs(
        &mut self,
        text: &SymbolString,
        matched_starts: &[usize],
        series: &TimeSeries,
        params: &Params,
    ) -> Result<usize> {
        let span = text.len() * params.s;
        let threshold = threshold_for(span, params);
        let mut stimulations = 0;
        for (i, &x) in matched_starts.iter().enumerate() {
            for &y in &matched_starts[i + 1..] {
                let ed = euclidean_distance(&series.norm, x, y, span)?;
                if ed <= threshold {
                    stimulations += 1;
                    self.insert(text, x, y, text.len());
                }
            }
        }
        Ok(stimulations)
    }

    /// Remove duplicates and encapsulated motifs; order the survivors and
    /// attach the pairwise distance matrix.
    pub fn streamline(&self, series: &TimeSeries, params: &Params) -> Result<MotifReport> {
        let s = params.s;
        let mut motifs: Vec<MemoryMotif> = Vec::with_capacity(self.entries.len());
        let mut seen: BTreeSet<(SymbolString, Vec<usize>)> = BTreeSet::new();
        for (text, entry) in &self.entries {
            let starts: Vec<usize> = entry.starts.iter().copied().collect();
            if !seen.insert((text.clone(), starts.clone())) {
                continue;
            }
            let span = text.len() * s;
            debug_assert_eq!(entry.generation, text.len());
            let mut ed_matrix = vec![vec![0.0; starts.len()]; starts.len()];
            for i in 0..starts.len() {
                for j in i + 1..starts.len() {
                    let ed = euclidean_distance(&series.norm, starts[i], starts[j], span)?;
                    ed_matrix[i][j] = ed;
                    ed_matrix[j][i] = ed;
                }
            }
            motifs.push(MemoryMotif {
                text: text.clone(),
                span_points: span,
                starts_raw_coords: starts.clone(),
                starts_diff_coords: starts,
                ed_matrix,
            });
        }

        let keep: Vec<bool> = motifs
            .iter()
            .map(|m| !motifs.iter().any(|longer| longer.encapsulates(m)))
            .collect();
        let mut survivors: Vec<MemoryMotif> = motifs
            .into_iter()
            .zip(keep)
            .filter_map(|(m, k)| k.then_some(m))
            .collect();
        survivors.sort_by(|a, b| {
            b.span_points
                .cmp(&a.span_points)
                .then_with(|| a.first_start().cmp(&b.first_start()))
                .then_with(|| a.text.cmp(&b.text))
        });

        Ok(MotifReport {
            params: params.clone(),
            series: SeriesMeta {
                name: series.name.clone(),
                length: series.raw.len(),
            },
            motifs: survivors,
        })
    }
}

/// A confirmed motif: its symbol string, occurrence starts (normalized /
/// differenced series coordinates, which map one-to-one onto raw
/// coordinates), and the pairwise distances between occurrences.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemoryMotif {
    pub text: SymbolString,
    pub span_points: usize,
    pub starts_diff_coords: Vec<usize>,
    pub starts_raw_coords: Vec<usize>,
    pub ed_matrix: Vec<Vec<f64>>,
}

impl MemoryMotif {
    pub fn first_start(&self) -> usize {
        self.starts_diff_coords.first().copied().unwrap_or(0)
    }

    pub fn occurrence_count(&self) -> usize {
        self.starts_diff_coords.len()
    }

    /// True when every occurrence of `other` lies inside one of this motif's
    /// occurrence intervals and this motif is strictly longer with at least
    /// as many occurrences.
    pub fn encapsulates(&self, other: &MemoryMotif) -> bool {
        if self.span_points <= other.span_points
            || self.occurrence_count() < other.occurrence_count()
        {
            return false;
        }
        other.starts_diff_coords.iter().all(|&occ| {
            self.starts_diff_coords
                .iter()
                .any(|&big| big <= occ && occ + other.span_points <= big + self.span_points)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesMeta {
    pub name: String,
    pub length: usize,
}

/// The streamlined long-term memory pool, serialized as the run's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotifReport {
    pub params: Params,
    pub series: SeriesMeta,
    pub motifs: Vec<MemoryMotif>,
}

impl MotifReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(json: &str) -> serde_json::Result<Self> {
        serde_json::from_str(json)
    }
}
