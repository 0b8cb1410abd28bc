use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::FieldSpec;
use crate::Limits;

/// Parameter envelope of a verification sweep.
///
/// Cells are `(n, t, s)` with `t_min <= t <= t_max`, `t <= n <= n_max` and
/// `s_min <= s <= s_max`; cells with `s >= high_power` additionally need
/// `n <= high_power_n_max`. With `below_t`, the `s = 1` cells with
/// `1 <= n < t` are included as well.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub t_min: u64,
    pub t_max: u64,
    /// Smallest `n`; unset means `n` starts at 1 (below `t`) or `t`.
    pub n_min: Option<u64>,
    pub n_max: u64,
    pub s_min: u32,
    pub s_max: u32,
    pub high_power: u32,
    pub high_power_n_max: u64,
    pub below_t: bool,
    /// Characteristic of the primary oracle field.
    #[serde(rename = "char")]
    pub characteristic: u32,
    /// Extra characteristics used for spot checks on the `spot_t` cells.
    pub spot_chars: Vec<u32>,
    pub spot_t: Vec<u64>,
    /// Largest `s` for which the tail-ideal regularity is checked.
    pub tail_max_power: u32,
    pub max_generators: usize,
    pub max_lattice: usize,
    /// Worker threads; 0 picks the number of CPUs.
    pub jobs: usize,
    #[serde(skip)]
    pub cache: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let limits = Limits::default();
        SweepConfig {
            t_min: 2,
            t_max: 4,
            n_min: None,
            n_max: 9,
            s_min: 1,
            s_max: 3,
            high_power: 3,
            high_power_n_max: 7,
            below_t: true,
            characteristic: 2,
            spot_chars: vec![3],
            spot_t: vec![3],
            tail_max_power: 2,
            max_generators: limits.max_generators,
            max_lattice: limits.max_lattice,
            jobs: 0,
            cache: None,
        }
    }
}

/// One swept `(n, t, s)` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub n: u64,
    pub t: u64,
    pub s: u32,
}

impl SweepConfig {
    /// Reads a `key = value` file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
    }

    pub fn single(n: u64, t: u64, s: u32) -> Self {
        SweepConfig {
            t_min: t,
            t_max: t,
            n_min: Some(n),
            n_max: n,
            s_min: s,
            s_max: s,
            high_power: u32::MAX,
            below_t: n < t,
            ..SweepConfig::default()
        }
    }

    pub fn limits(&self) -> Limits {
        Limits {
            max_generators: self.max_generators,
            max_lattice: self.max_lattice,
        }
    }

    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.characteristic)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_min < 2 {
            return Err(Error::invalid("sweeps need t >= 2"));
        }
        if self.s_min < 1 {
            return Err(Error::invalid("sweeps need s >= 1"));
        }
        if self.max_generators == 0 || self.max_lattice == 0 {
            return Err(Error::invalid("size caps must be positive"));
        }
        FieldSpec::new(self.characteristic)?;
        for &p in &self.spot_chars {
            FieldSpec::new(p)?;
        }
        Ok(())
    }

    /// Cells in `(n, t, s)` order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for t in self.t_min..=self.t_max {
            if self.below_t && self.s_min <= 1 && 1 <= self.s_max {
                let lo = self.n_min.unwrap_or(1).max(1);
                for n in lo..t.min(self.n_max + 1) {
                    out.push(Cell { n, t, s: 1 });
                }
            }
            let lo = self.n_min.unwrap_or(t).max(t);
            for n in lo..=self.n_max {
                for s in self.s_min..=self.s_max {
                    if s >= self.high_power && n > self.high_power_n_max {
                        continue;
                    }
                    out.push(Cell { n, t, s });
                }
            }
        }
        out.sort();
        out
    }
}
