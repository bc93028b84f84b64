//! The symbol matrix (one PAA symbol per sliding-window start) and the
//! per-generation candidate matrix with trivial-match elimination.

use std::io::Write;

use crate::error::{Error, Result};
use crate::preprocess::{symbolize_window, Alphabet, Params, TimeSeries};
use crate::symbol::{Symbol, SymbolString};

/// Time-ordered single symbols, one per sliding window of length `s` over the
/// normalized series.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolMatrix {
    symbols: Vec<Symbol>,
    s: usize,
}

impl SymbolMatrix {
    /// One symbol per window start; `norm_len - s + 1` symbols in total.
    pub fn build(series: &TimeSeries, params: &Params, alphabet: &Alphabet) -> Result<Self> {
        let norm = &series.norm;
        let s = params.s;
        if s == 0 || s > norm.len() {
            return Err(Error::OutOfRange {
                start: 0,
                span: s,
                len: norm.len(),
            });
        }
        let count = norm.len() - s + 1;
        let symbols = (0..count)
            .map(|start| symbolize_window(norm, start, s, alphabet))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolMatrix { symbols, s })
    }

    #[cfg(test)]
    pub(crate) fn from_parts(symbols: Vec<Symbol>, s: usize) -> Self {
        SymbolMatrix { symbols, s }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Length of the normalized series this matrix was built from.
    pub fn norm_len(&self) -> usize {
        self.symbols.len() + self.s - 1
    }

    /// The `generation`-symbol word at `start`: symbols at stride-`s`
    /// positions `start, start + s, ...`. None if the word does not fit.
    pub fn word_at(&self, start: usize, generation: usize) -> Option<SymbolString> {
        debug_assert!(generation >= 1);
        if start + generation * self.s > self.norm_len() {
            return None;
        }
        Some(SymbolString::new(
            (0..generation)
                .map(|j| self.symbols[start + j * self.s])
                .collect(),
        ))
    }

    /// Debug dump, one line per window start.
    pub fn dump(&self, out: &mut impl Write) -> std::io::Result<()> {
        for (start, sym) in self.symbols.iter().enumerate() {
            writeln!(out, "{start} {}", SymbolString::single(*sym))?;
        }
        Ok(())
    }
}

/// A candidate word: `generation` symbols covering `generation * s` data
/// points starting at `start` (normalized-series coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateWord {
    pub start: usize,
    pub text: SymbolString,
}

/// The per-generation candidate matrix after trivial-match elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateMatrix {
    pub generation: usize,
    pub s: usize,
    pub words: Vec<CandidateWord>,
}

impl CandidateMatrix {
    /// Scan every start position, extract the `generation`-symbol word and
    /// apply trivial-match elimination.
    pub fn build(matrix: &SymbolMatrix, generation: usize) -> Result<Self> {
        assert!(generation >= 1, "generation must be >= 1");
        let s = matrix.s();
        let span = generation * s;
        if span > matrix.norm_len() {
            return Err(Error::GenerationTooLong {
                generation,
                s,
                norm_len: matrix.norm_len(),
            });
        }
        let max_start = matrix.norm_len() - span;
        let stream = (0..=max_start).map(|start| {
            (
                start,
                matrix
                    .word_at(start, generation)
                    .expect("start bounded by max_start"),
            )
        });
        Ok(CandidateMatrix {
            generation,
            s,
            words: eliminate_trivial_matches(stream, s),
        })
    }

    /// Data points covered by each word.
    pub fn span(&self) -> usize {
        self.generation * self.s
    }

    pub fn dump(&self, out: &mut impl Write) -> std::io::Result<()> {
        for w in &self.words {
            writeln!(out, "{} {}", w.start, w.text)?;
        }
        Ok(())
    }
}

/// Trivial-match elimination over a position-ordered word stream.
///
/// A word is retained iff it differs from the most recently retained word, or
/// more than `s` start positions have passed since the last retention (so at
/// most `s` consecutive candidates are ever eliminated).
pub fn eliminate_trivial_matches(
    words: impl IntoIterator<Item = (usize, SymbolString)>,
    s: usize,
) -> Vec<CandidateWord> {
    let mut retained: Vec<CandidateWord> = Vec::new();
    let mut last: Option<(usize, SymbolString)> = None;
    for (start, text) in words {
        let keep = match &last {
            None => true,
            Some((last_start, last_text)) => text != *last_text || start - last_start > s,
        };
        if keep {
            last = Some((start, text.clone()));
            retained.push(CandidateWord { start, text });
        }
    }
    retained
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn starts(m: &CandidateMatrix) -> Vec<usize> {
        m.words.iter().map(|w| w.start).collect()
    }

    #[test]
    fn window_count_is_norm_len_minus_s_plus_1() {
        let raw: Vec<f64> = (0..960).map(|i| (i as f64 * 0.11).sin()).collect();
        let ts = TimeSeries::load(raw).unwrap();
        assert_eq!(ts.norm.len(), 959);
        let params = Params::new(10, 6, 0.5).unwrap();
        let alpha = Alphabet::new(6).unwrap();
        let sm = SymbolMatrix::build(&ts, &params, &alpha).unwrap();
        assert_eq!(sm.len(), 950);
    }

    #[test]
    fn single_window_when_s_equals_norm_len() {
        let raw: Vec<f64> = (0..11).map(|i| (i as f64).sin()).collect();
        let ts = TimeSeries::load(raw).unwrap();
        assert_eq!(ts.norm.len(), 10);
        let params = Params::new(10, 4, 0.5).unwrap();
        let alpha = Alphabet::new(4).unwrap();
        let sm = SymbolMatrix::build(&ts, &params, &alpha).unwrap();
        assert_eq!(sm.len(), 1);
    }

    #[test]
    fn oversized_window_rejected() {
        let ts = TimeSeries::load(vec![1.0, 2.0, 4.0, 8.0]).unwrap();
        let params = Params::new(10, 4, 0.5).unwrap();
        let alpha = Alphabet::new(4).unwrap();
        assert!(matches!(
            SymbolMatrix::build(&ts, &params, &alpha),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn sawtooth_produces_alternating_symbols() {
        // diff pattern [1, 1, -1, -1] has period 2s for s = 2; window means
        // cycle 1, 0, -1, 0 which map to symbols 3, 2, 0, 2 for a = 4
        let mut raw = vec![0.0];
        for i in 0..40 {
            let step = if i % 4 < 2 { 1.0 } else { -1.0 };
            raw.push(raw.last().unwrap() + step);
        }
        let ts = TimeSeries::load(raw).unwrap();
        assert_eq!(ts.norm, ts.diff, "already mean 0 / std 1");
        let params = Params::new(2, 4, 0.5).unwrap();
        let alpha = Alphabet::new(4).unwrap();
        let sm = SymbolMatrix::build(&ts, &params, &alpha).unwrap();
        assert_eq!(sm.len(), 39);
        for (i, &sym) in sm.symbols().iter().enumerate() {
            assert_eq!(sym, [3, 2, 0, 2][i % 4], "window {i}");
        }
    }

    #[test]
    fn elimination_keeps_first_of_short_run() {
        // stream "a a a b" with s = 10: run shorter than s
        let sm = SymbolMatrix::from_parts(vec![0, 0, 0, 1], 10);
        let m = CandidateMatrix::build(&sm, 1).unwrap();
        assert_eq!(starts(&m), vec![0, 3]);
        assert_eq!(m.words[0].text.to_string(), "a");
        assert_eq!(m.words[1].text.to_string(), "b");
    }

    #[test]
    fn elimination_forces_retention_after_s_eliminations() {
        let sm = SymbolMatrix::from_parts(vec![0; 25], 10);
        let m = CandidateMatrix::build(&sm, 1).unwrap();
        assert_eq!(starts(&m), vec![0, 11, 22]);
    }

    #[test]
    fn words_use_stride_s_symbols() {
        let sm = SymbolMatrix::from_parts(vec![0, 1, 2, 3], 2);
        let m = CandidateMatrix::build(&sm, 2).unwrap();
        assert_eq!(starts(&m), vec![0, 1]);
        assert_eq!(m.words[0].text.to_string(), "ac");
        assert_eq!(m.words[1].text.to_string(), "bd");
        assert_eq!(m.span(), 4);
    }

    #[test]
    fn generation_too_long() {
        let sm = SymbolMatrix::from_parts(vec![0, 0, 0, 1], 10);
        assert!(matches!(
            CandidateMatrix::build(&sm, 2),
            Err(Error::GenerationTooLong { generation: 2, .. })
        ));
    }

    #[test]
    fn dump_format_is_start_then_text() {
        let sm = SymbolMatrix::from_parts(vec![0, 1], 1);
        let m = CandidateMatrix::build(&sm, 2).unwrap();
        let mut buf = Vec::new();
        m.dump(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 ab\n");
    }

    proptest! {
        #[test]
        fn retained_words_reconstruct_from_matrix(
            symbols in proptest::collection::vec(0u8..4, 1..200),
            s in 1usize..12,
            generation in 1usize..4,
        ) {
            let sm = SymbolMatrix::from_parts(symbols, s);
            if generation * s > sm.norm_len() {
                return Ok(());
            }
            let m = CandidateMatrix::build(&sm, generation).unwrap();
            for w in &m.words {
                prop_assert_eq!(Some(w.text.clone()), sm.word_at(w.start, generation));
            }
            // strictly increasing starts
            for pair in m.words.windows(2) {
                prop_assert!(pair[0].start < pair[1].start);
            }
        }

        #[test]
        fn at_most_s_consecutive_eliminations(
            symbols in proptest::collection::vec(0u8..3, 1..300),
            s in 1usize..12,
        ) {
            let sm = SymbolMatrix::from_parts(symbols, s);
            let m = CandidateMatrix::build(&sm, 1).unwrap();
            prop_assert!(!m.words.is_empty());
            prop_assert_eq!(m.words[0].start, 0);
            for pair in m.words.windows(2) {
                prop_assert!(pair[1].start - pair[0].start <= s + 1);
            }
            let max_start = sm.norm_len() - s;
            prop_assert!(max_start - m.words.last().unwrap().start <= s);
        }

        #[test]
        fn elimination_is_idempotent(
            symbols in proptest::collection::vec(0u8..3, 1..300),
            s in 1usize..12,
        ) {
            let sm = SymbolMatrix::from_parts(symbols, s);
            let m = CandidateMatrix::build(&sm, 1).unwrap();
            let again = eliminate_trivial_matches(
                m.words.iter().map(|w| (w.start, w.text.clone())),
                s,
            );
            prop_assert_eq!(again, m.words);
        }

        #[test]
        fn no_adjacent_duplicates_means_identity(
            symbols in proptest::collection::vec(0u8..6, 1..200),
            s in 1usize..12,
        ) {
            let mut deduped: Vec<u8> = Vec::new();
            for sym in symbols {
                if deduped.last() != Some(&sym) {
                    deduped.push(sym);
                }
            }
            let count = deduped.len();
            let sm = SymbolMatrix::from_parts(deduped, s);
            let m = CandidateMatrix::build(&sm, 1).unwrap();
            prop_assert_eq!(m.words.len(), count);
        }
    }
}
