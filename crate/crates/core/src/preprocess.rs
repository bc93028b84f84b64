//! Series loading, first-order differencing, z-normalization and PAA
//! symbolization against Gaussian breakpoints.

use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::symbol::{Symbol, MAX_ALPHABET};

/// A univariate series together with its differenced and normalized forms.
///
/// `diff[i] = raw[i+1] - raw[i]`; `norm` is the globally z-normalized `diff`
/// (population std). All downstream indices are positions into `norm`
/// (equivalently `diff`); the raw coordinate of such a position is the same
/// integer.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub name: String,
    pub raw: Vec<f64>,
    pub diff: Vec<f64>,
    pub norm: Vec<f64>,
    /// Optional timestamps from a two-column input, same length as `raw`.
    pub times: Option<Vec<f64>>,
    /// False when loaded with normalization disabled; `norm` then equals `diff`.
    pub normalized: bool,
}

impl TimeSeries {
    /// Load a raw value sequence, difference it and z-normalize the result.
    pub fn load(values: Vec<f64>) -> Result<Self> {
        Self::load_opts(values, true)
    }

    /// Load without z-normalization: `norm` is the differenced series verbatim.
    /// Distances and the match threshold then operate in original units.
    pub fn load_unnormalized(values: Vec<f64>) -> Result<Self> {
        Self::load_opts(values, false)
    }

    pub fn load_opts(values: Vec<f64>, normalize: bool) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::TooShort { len: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }

        let diff: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();

        let norm = if normalize {
            let n = diff.len() as f64;
            let mean = diff.iter().sum::<f64>() / n;
            let var = diff.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
            let std = var.sqrt();
            if std == 0.0 {
                return Err(Error::ZeroVariance);
            }
            diff.iter().map(|d| (d - mean) / std).collect()
        } else {
            diff.clone()
        };

        Ok(TimeSeries {
            name: String::new(),
            raw: values,
            diff,
            norm,
            times: None,
            normalized: normalize,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_times(mut self, times: Vec<f64>) -> Self {
        self.times = Some(times);
        self
    }
}

/// Cut points dividing the standard normal into `size` equiprobable regions.
#[derive(Clone, Debug, PartialEq)]
pub struct Alphabet {
    size: usize,
    breakpoints: Vec<f64>,
}

impl Alphabet {
    /// Build the `size - 1` breakpoints at standard-normal quantiles `k/size`.
    ///
    /// Quantiles are refined by Newton steps against the normal CDF and the
    /// lower half is mirrored from the upper, so the breakpoints are exactly
    /// symmetric about zero.
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 || size > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet { a: size });
        }
        let normal = Normal::standard();
        let mut breakpoints = vec![0.0; size - 1];
        for k in 0..size - 1 {
            let p = (k + 1) as f64 / size as f64;
            if 2 * (k + 1) == size {
                breakpoints[k] = 0.0; // median
                continue;
            }
            if 2 * (k + 1) > size {
                let mut x = normal.inverse_cdf(p);
                // two Newton refinements pin the quantile well below 1e-9
                for _ in 0..2 {
                    x -= (normal.cdf(x) - p) / normal.pdf(x);
                }
                breakpoints[k] = x;
                breakpoints[size - 2 - k] = -x;
            }
        }
        Ok(Alphabet { size, breakpoints })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Map a window mean to its region index. A value exactly on a breakpoint
    /// belongs to the upper region.
    pub fn symbol_for(&self, mean: f64) -> Symbol {
        self.breakpoints.partition_point(|b| *b <= mean) as Symbol
    }
}

/// Discovery parameters: symbol length `s` (data points per symbol), alphabet
/// size `a`, and per-point match threshold `r`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Params {
    pub s: usize,
    pub a: usize,
    pub r: f64,
    /// Safety cap on the generation loop; `None` means `norm_len / s`.
    pub max_generations: Option<usize>,
}

impl Params {
    pub fn new(s: usize, a: usize, r: f64) -> Result<Self> {
        let p = Params {
            s,
            a,
            r,
            max_generations: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_max_generations(mut self, max: Option<usize>) -> Self {
        self.max_generations = max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 1 {
            return Err(Error::InvalidParams("symbol length s must be >= 1".into()));
        }
        if self.a < 2 || self.a > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet { a: self.a });
        }
        if !(self.r > 0.0) || !self.r.is_finite() {
            return Err(Error::InvalidParams(format!(
                "match threshold r must be a positive finite number, got {}",
                self.r
            )));
        }
        Ok(())
    }

    /// The generation cap actually applied to a series of `norm_len`
    /// normalized points: a motif cannot span more than the whole series.
    pub fn effective_max_generations(&self, norm_len: usize) -> usize {
        let auto = norm_len / self.s;
        match self.max_generations {
            Some(user) => user.min(auto),
            None => auto,
        }
    }
}

/// Mean of `s` normalized points starting at `start`, discretized against the
/// alphabet's breakpoints.
pub fn symbolize_window(
    norm: &[f64],
    start: usize,
    s: usize,
    alphabet: &Alphabet,
) -> Result<Symbol> {
    let end = start.checked_add(s).filter(|e| *e <= norm.len());
    let Some(end) = end else {
        return Err(Error::OutOfRange {
            start,
            span: s,
            len: norm.len(),
        });
    };
    let mean = norm[start..end].iter().sum::<f64>() / s as f64;
    Ok(alphabet.symbol_for(mean))
}
