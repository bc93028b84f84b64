//! The evolving tracker population and the generation loop: match,
//! eliminate, confirm, proliferate, mutate.

use std::collections::HashMap;

use crate::candidates::{CandidateMatrix, SymbolMatrix};
use crate::error::{Error, Result};
use crate::memory::{MemoryPool, MotifReport};
use crate::preprocess::{Alphabet, Params, TimeSeries};
use crate::symbol::{Symbol, SymbolString};

/// A candidate motif signature under construction. Its text grows by one
/// symbol per generation while it keeps matching and confirming.
#[derive(Clone, Debug, PartialEq)]
pub struct Tracker {
    pub text: SymbolString,
    pub match_count: usize,
    /// Candidate starts whose words equalled `text` this generation.
    pub matched_starts: Vec<usize>,
}

impl Tracker {
    fn new(text: SymbolString) -> Self {
        Tracker {
            text,
            match_count: 0,
            matched_starts: Vec::new(),
        }
    }
}

/// The symbols trackers may be extended with: the texts of the trackers that
/// survived generation one. Fixed afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct MutationTemplate {
    symbols: Vec<Symbol>,
}

impl MutationTemplate {
    /// Collect the single symbols of a generation-one population.
    pub fn from_population(population: &[Tracker]) -> Self {
        let mut symbols: Vec<Symbol> = population
            .iter()
            .map(|t| {
                debug_assert_eq!(t.text.len(), 1);
                t.text.symbols()[0]
            })
            .collect();
        symbols.sort_unstable();
        symbols.dedup();
        MutationTemplate { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// One length-one tracker per alphabet symbol, in symbol order.
pub fn init_population(alphabet: &Alphabet) -> Vec<Tracker> {
    (0..alphabet.size() as Symbol)
        .map(|sym| Tracker::new(SymbolString::single(sym)))
        .collect()
}

/// Count, for each tracker, the candidate words whose text equals the
/// tracker's text exactly, recording their starts.
pub fn match_trackers(population: &mut [Tracker], m: &CandidateMatrix) -> Result<()> {
    for tracker in population.iter() {
        if tracker.text.len() != m.generation {
            return Err(Error::GenerationMismatch {
                tracker_len: tracker.text.len(),
                generation: m.generation,
            });
        }
    }
    let mut index: HashMap<&SymbolString, Vec<usize>> = HashMap::new();
    for word in &m.words {
        index.entry(&word.text).or_default().push(word.start);
    }
    for tracker in population.iter_mut() {
        match index.get(&tracker.text) {
            Some(starts) => {
                tracker.match_count = starts.len();
                tracker.matched_starts = starts.clone();
            }
            None => {
                tracker.match_count = 0;
                tracker.matched_starts.clear();
            }
        }
    }
    Ok(())
}

/// Keep trackers that matched at least twice; reset their match counts for
/// the confirmation stage but keep the matched starts.
pub fn eliminate_unmatched(population: Vec<Tracker>) -> Vec<Tracker> {
    population
        .into_iter()
        .filter_map(|mut t| {
            (t.match_count >= 2).then(|| {
                t.match_count = 0;
                t
            })
        })
        .collect()
}

/// Drop trackers that received no stimulation during confirmation: their
/// words repeated but the underlying data did not.
pub fn eliminate_unstimulated(population: Vec<Tracker>) -> Vec<Tracker> {
    population
        .into_iter()
        .filter(|t| t.match_count >= 1)
        .collect()
}

/// Replace each surviving tracker by one child per template symbol, the
/// parent's text extended by that symbol. Unique parents yield unique
/// children; population order stays lexicographic.
pub fn proliferate_and_mutate(
    population: Vec<Tracker>,
    template: &MutationTemplate,
) -> Vec<Tracker> {
    let mut next = Vec::with_capacity(population.len() * template.len());
    for parent in &population {
        for &sym in template.symbols() {
            next.push(Tracker::new(parent.text.extended(sym)));
        }
    }
    next
}

/// Snapshot of one completed generation, handed to a run observer.
pub struct GenerationEvent<'a> {
    pub generation: usize,
    pub candidates: &'a CandidateMatrix,
    /// Population after confirmation, before proliferation.
    pub survivors: &'a [Tracker],
    /// Memory-pool size so far.
    pub motifs_stored: usize,
}

/// Run the full discovery loop and return the streamlined report.
pub fn run(series: &TimeSeries, params: &Params) -> Result<MotifReport> {
    run_observed(series, params, |_| {})
}

/// `run` with a per-generation callback for progress and trace output.
pub fn run_observed(
    series: &TimeSeries,
    params: &Params,
    mut observer: impl FnMut(&GenerationEvent<'_>),
) -> Result<MotifReport> {
    params.validate()?;
    let alphabet = Alphabet::new(params.a)?;
    let matrix = SymbolMatrix::build(series, params, &alphabet)?;
    let max_generations = params.effective_max_generations(series.norm.len());

    let mut population = init_population(&alphabet);
    let mut pool = MemoryPool::new();
    let mut template: Option<MutationTemplate> = None;
    let mut generation = 0;

    while !population.is_empty() && generation < max_generations {
        generation += 1;
        let m = match CandidateMatrix::build(&matrix, generation) {
            Ok(m) => m,
            Err(Error::GenerationTooLong { .. }) => break,
            Err(e) => return Err(e),
        };
        match_trackers(&mut population, &m)?;
        population = eliminate_unmatched(population);
        for tracker in &mut population {
            tracker.match_count +=
                pool.confirm_motifs(&tracker.text, &tracker.matched_starts, series, params)?;
        }
        population = eliminate_unstimulated(population);
        if generation == 1 {
            template = Some(MutationTemplate::from_population(&population));
        }
        observer(&GenerationEvent {
            generation,
            candidates: &m,
            survivors: &population,
            motifs_stored: pool.len(),
        });
        if !population.is_empty() && generation < max_generations {
            let template = template.as_ref().expect("template fixed at generation 1");
            population = proliferate_and_mutate(population, template);
        }
    }

    pool.streamline(series, params)
}
