use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// A single alphabet symbol: the index of an equiprobable region under the
/// standard normal, `0` = lowest. Rendered as a lowercase letter (`0` = 'a').
pub type Symbol = u8;

/// Largest supported alphabet; keeps symbols printable as single letters.
pub const MAX_ALPHABET: usize = 26;

/// An ordered string of symbols. Trackers, candidate words and stored motifs
/// all carry one of these. Ordering is lexicographic.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolString(Vec<Symbol>);

impl SymbolString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        SymbolString(symbols)
    }

    pub fn single(symbol: Symbol) -> Self {
        SymbolString(vec![symbol])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// Returns a copy extended by one symbol; used when trackers grow.
    pub fn extended(&self, symbol: Symbol) -> Self {
        let mut v = self.0.clone();
        v.push(symbol);
        SymbolString(v)
    }
}

impl fmt::Display for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            debug_assert!((s as usize) < MAX_ALPHABET);
            write!(f, "{}", (b'a' + s) as char)?;
        }
        Ok(())
    }
}

impl FromStr for SymbolString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Ok(c as u8 - b'a')
                } else {
                    Err(format!("invalid symbol character {c:?}"))
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SymbolString)
    }
}

impl Serialize for SymbolString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SymbolString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
