//! Input files, subsetting and the named dataset presets.
//!
//! Accepted formats: one numeric value per line, or two-column CSV
//! `time,value` where the time column is kept alongside the values. A single
//! header line is tolerated.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::preprocess::TimeSeries;

/// Take every `stride`-th value starting at `offset`, then at most `length`
/// values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetSpec {
    pub offset: usize,
    pub stride: usize,
    pub length: Option<usize>,
}

impl Default for SubsetSpec {
    fn default() -> Self {
        SubsetSpec {
            offset: 0,
            stride: 1,
            length: None,
        }
    }
}

impl SubsetSpec {
    pub fn apply<T: Copy>(&self, values: &[T]) -> Result<Vec<T>> {
        if self.stride == 0 {
            return Err(Error::SubsetOutOfRange {
                reason: "stride must be at least 1".into(),
            });
        }
        if self.offset >= values.len() {
            return Err(Error::SubsetOutOfRange {
                reason: format!(
                    "offset {} is beyond the {} available values",
                    self.offset,
                    values.len()
                ),
            });
        }
        let mut out: Vec<T> = values[self.offset..]
            .iter()
            .step_by(self.stride)
            .copied()
            .collect();
        if let Some(len) = self.length {
            if out.len() < len {
                return Err(Error::SubsetOutOfRange {
                    reason: format!("requested {len} values, only {} available", out.len()),
                });
            }
            out.truncate(len);
        }
        Ok(out)
    }
}

/// Optional command-line overrides layered over a preset's subset rules.
#[derive(Clone, Copy, Debug, Default)]
pub struct SubsetOverrides {
    pub offset: Option<usize>,
    pub stride: Option<usize>,
    pub length: Option<usize>,
}

impl SubsetOverrides {
    fn over(&self, base: SubsetSpec) -> SubsetSpec {
        SubsetSpec {
            offset: self.offset.unwrap_or(base.offset),
            stride: self.stride.unwrap_or(base.stride),
            length: self.length.or(base.length),
        }
    }
}

/// Named datasets with their standard subsetting rules. Files are fetched by
/// `scripts/fetch_datasets.sh`, not bundled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Steam generator steam flow: every tenth observation from the first.
    Steamgen,
    /// Research-facility power demand: 5000 values from value 5000 onwards.
    PowerDemand,
}

impl Preset {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "steamgen" => Some(Preset::Steamgen),
            "powerdemand" => Some(Preset::PowerDemand),
            _ => None,
        }
    }

    pub fn file_name(&self) -> &'static str {
        match self {
            Preset::Steamgen => "steamgen.txt",
            Preset::PowerDemand => "power_data.txt",
        }
    }

    pub fn subset(&self) -> SubsetSpec {
        match self {
            Preset::Steamgen => SubsetSpec {
                offset: 0,
                stride: 10,
                length: None,
            },
            Preset::PowerDemand => SubsetSpec {
                offset: 5000,
                stride: 1,
                length: Some(5000),
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Steamgen => "steamgen",
            Preset::PowerDemand => "powerdemand",
        }
    }
}

/// Parse numeric text into values plus optional timestamps.
pub fn parse_numeric_text(text: &str, label: &str) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let mut values = Vec::new();
    let mut times = Vec::new();
    let mut columns: Option<usize> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields
            .iter()
            .map(|f| f.parse::<f64>().ok())
            .collect();
        let Some(nums) = parsed else {
            // tolerate a single header line before any data
            if values.is_empty() && columns.is_none() {
                continue;
            }
            return Err(Error::Parse {
                path: label.to_string(),
                line: lineno + 1,
                what: line.to_string(),
            });
        };
        if nums.len() > 2 || nums.is_empty() {
            return Err(Error::Parse {
                path: label.to_string(),
                line: lineno + 1,
                what: line.to_string(),
            });
        }
        match columns {
            None => columns = Some(nums.len()),
            Some(c) if c != nums.len() => {
                return Err(Error::Parse {
                    path: label.to_string(),
                    line: lineno + 1,
                    what: line.to_string(),
                });
            }
            _ => {}
        }
        if nums.len() == 2 {
            times.push(nums[0]);
            values.push(nums[1]);
        } else {
            values.push(nums[0]);
        }
    }
    let times = (!times.is_empty()).then_some(times);
    Ok((values, times))
}

pub fn parse_numeric_file(path: &Path) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_numeric_text(&text, &path.display().to_string())
}

/// Load a dataset by preset name or file path, apply subsetting, difference
/// and (optionally) normalize.
pub fn load_dataset(
    name_or_path: &str,
    overrides: SubsetOverrides,
    cache_dir: &Path,
    normalize: bool,
) -> Result<TimeSeries> {
    let (path, base_subset, series_name): (PathBuf, SubsetSpec, String) =
        match Preset::from_name(name_or_path) {
            Some(preset) => {
                let path = cache_dir.join(preset.file_name());
                if !path.exists() {
                    return Err(Error::Io {
                        path: path.display().to_string(),
                        source: std::io::Error::new(
                            std::io::ErrorKind::NotFound,
                            format!(
                                "dataset {:?} has not been fetched; run scripts/fetch_datasets.sh",
                                preset.name()
                            ),
                        ),
                    });
                }
                (path, preset.subset(), preset.name().to_string())
            }
            None => {
                let path = PathBuf::from(name_or_path);
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| name_or_path.to_string());
                (path, SubsetSpec::default(), name)
            }
        };

    let subset = overrides.over(base_subset);
    let (values, times) = parse_numeric_file(&path)?;
    let values = subset.apply(&values)?;
    let mut series = TimeSeries::load_opts(values, normalize)?.with_name(series_name);
    if let Some(times) = times {
        series = series.with_times(subset.apply(&times)?);
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_value_per_line() {
        let (values, times) = parse_numeric_text("1.5\n2\n-3.25\n", "t").unwrap();
        assert_eq!(values, vec![1.5, 2.0, -3.25]);
        assert!(times.is_none());
    }

    #[test]
    fn parses_two_column_csv_with_header() {
        let (values, times) =
            parse_numeric_text("time,value\n0.0,10\n0.5,11\n1.0,12\n", "t").unwrap();
        assert_eq!(values, vec![10.0, 11.0, 12.0]);
        assert_eq!(times.unwrap(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn rejects_garbage_after_data() {
        let err = parse_numeric_text("1\n2\noops\n", "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn rejects_ragged_columns() {
        let err = parse_numeric_text("1,2\n3\n", "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn stride_zero_is_rejected() {
        let spec = SubsetSpec {
            offset: 0,
            stride: 0,
            length: None,
        };
        assert!(matches!(
            spec.apply(&[1.0, 2.0]),
            Err(Error::SubsetOutOfRange { .. })
        ));
    }

    #[test]
    fn stride_ten_takes_every_tenth() {
        let values: Vec<f64> = (0..9600).map(|i| i as f64).collect();
        let out = Preset::Steamgen.subset().apply(&values).unwrap();
        assert_eq!(out.len(), 960);
        assert_eq!(out[0], 0.0);
        assert_eq!(out[1], 10.0);
        assert_eq!(out[959], 9590.0);
    }

    #[test]
    fn power_demand_subset_is_offset_5000_length_5000() {
        let values: Vec<f64> = (0..35040).map(|i| i as f64).collect();
        let out = Preset::PowerDemand.subset().apply(&values).unwrap();
        assert_eq!(out.len(), 5000);
        assert_eq!(out[0], 5000.0);
        assert_eq!(out[4999], 9999.0);
    }

    #[test]
    fn subset_bounds_checked() {
        let spec = SubsetSpec {
            offset: 10,
            stride: 1,
            length: None,
        };
        assert!(matches!(
            spec.apply(&[1.0, 2.0]),
            Err(Error::SubsetOutOfRange { .. })
        ));
        let spec = SubsetSpec {
            offset: 0,
            stride: 1,
            length: Some(5),
        };
        assert!(matches!(
            spec.apply(&[1.0, 2.0]),
            Err(Error::SubsetOutOfRange { .. })
        ));
    }

    #[test]
    fn overrides_layer_over_preset() {
        let over = SubsetOverrides {
            offset: None,
            stride: Some(5),
            length: Some(10),
        };
        let merged = over.over(Preset::Steamgen.subset());
        assert_eq!(
            merged,
            SubsetSpec {
                offset: 0,
                stride: 5,
                length: Some(10)
            }
        );
    }

    #[test]
    fn load_dataset_from_plain_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("series.txt");
        std::fs::write(&path, "1\n2\n4\n8\n16\n").unwrap();
        let ts = load_dataset(
            path.to_str().unwrap(),
            SubsetOverrides::default(),
            dir.path(),
            true,
        )
        .unwrap();
        assert_eq!(ts.name, "series");
        assert_eq!(ts.raw, vec![1.0, 2.0, 4.0, 8.0, 16.0]);
    }

    #[test]
    fn missing_preset_file_mentions_fetch_script() {
        let dir = tempfile::tempdir().unwrap();
        let err = load_dataset(
            "steamgen",
            SubsetOverrides::default(),
            dir.path(),
            true,
        )
        .unwrap_err();
        assert!(err.to_string().contains("fetch_datasets"), "{err}");
    }
}
