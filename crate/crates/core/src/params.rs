//! Named parameter sets, loaded from a TOML registry.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lwe::LweParams;
use crate::math::NoiseParams;
use crate::rlwe::RlweParams;
use crate::scheme::{LatticeParams, SchemeTag};

/// The registry compiled into the crate.
pub const SHIPPED_REGISTRY: &str = include_str!("../params.toml");

#[derive(Clone, Debug, PartialEq, Deserialize)]
struct RawEntry {
    label: String,
    scheme: String,
    n: Option<usize>,
    #[serde(rename = "N")]
    ring_degree: Option<usize>,
    log2_q: u32,
    p: u64,
    sigma: f64,
    #[serde(default)]
    groups: Vec<String>,
}

#[derive(Deserialize)]
struct RawRegistry {
    set: Vec<RawEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamEntry {
    pub label: String,
    pub scheme: SchemeTag,
    pub dimension: usize,
    pub log2_q: u32,
    pub p: u64,
    pub sigma: f64,
    pub groups: Vec<String>,
}

/// A built parameter set of either scheme.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamSet {
    Lwe(LweParams),
    Rlwe(RlweParams),
}

impl ParamSet {
    pub fn as_lattice(&self) -> &dyn LatticeParams {
        match self {
            ParamSet::Lwe(p) => p,
            ParamSet::Rlwe(p) => p,
        }
    }
}

impl ParamEntry {
    fn from_raw(raw: RawEntry) -> Result<Self> {
        let (scheme, dimension) = match (raw.scheme.as_str(), raw.n, raw.ring_degree) {
            ("lwe", Some(n), None) => (SchemeTag::Lwe, n),
            ("rlwe", None, Some(n)) => (SchemeTag::Rlwe, n),
            _ => {
                return Err(Error::param(format!(
                    "set {}: scheme must be lwe with `n` or rlwe with `N`",
                    raw.label
                )))
            }
        };
        let entry = ParamEntry {
            label: raw.label,
            scheme,
            dimension,
            log2_q: raw.log2_q,
            p: raw.p,
            sigma: raw.sigma,
            groups: raw.groups,
        };
        entry.build()?;
        Ok(entry)
    }

    fn noise(&self) -> Result<NoiseParams> {
        NoiseParams::with_sigma(self.sigma)
    }

    pub fn build(&self) -> Result<ParamSet> {
        Ok(match self.scheme {
            SchemeTag::Lwe => ParamSet::Lwe(self.lwe()?),
            SchemeTag::Rlwe => ParamSet::Rlwe(self.rlwe()?),
        })
    }

    pub fn lwe(&self) -> Result<LweParams> {
        if self.scheme != SchemeTag::Lwe {
            return Err(Error::param(format!("{} is not an LWE set", self.label)));
        }
        LweParams::new(self.dimension, self.log2_q, self.p, self.noise()?)
    }

    pub fn rlwe(&self) -> Result<RlweParams> {
        if self.scheme != SchemeTag::Rlwe {
            return Err(Error::param(format!("{} is not an RLWE set", self.label)));
        }
        RlweParams::new(self.dimension, self.log2_q, self.p, self.noise()?)
    }
}

#[derive(Clone, Debug)]
pub struct Registry {
    entries: Vec<ParamEntry>,
}

impl Registry {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawRegistry =
            toml::from_str(text).map_err(|e| Error::format(format!("parameter registry: {e}")))?;
        let entries = raw
            .set
            .into_iter()
            .map(ParamEntry::from_raw)
            .collect::<Result<Vec<_>>>()?;
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].iter().any(|o| o.label == e.label) {
                return Err(Error::param(format!("duplicate set label {}", e.label)));
            }
        }
        Ok(Registry { entries })
    }

    pub fn shipped() -> &'static Registry {
        static SHIPPED: OnceLock<Registry> = OnceLock::new();
        SHIPPED.get_or_init(|| Registry::parse(SHIPPED_REGISTRY).expect("shipped registry is valid"))
    }

    pub fn entries(&self) -> &[ParamEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Result<&ParamEntry> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::param(format!("unknown parameter set {label:?}")))
    }

    /// Resolves a comma-separated list of labels and group names, keeping
    /// registry order and dropping duplicates.
    pub fn select(&self, selector: &str) -> Result<Vec<&ParamEntry>> {
        let mut picked = vec![false; self.entries.len()];
        for token in selector.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let mut hit = false;
            for (i, e) in self.entries.iter().enumerate() {
                if e.label == token || e.groups.iter().any(|g| g == token) || token == "all" {
                    picked[i] = true;
                    hit = true;
                }
            }
            if !hit {
                return Err(Error::param(format!("unknown parameter set or group {token:?}")));
            }
        }
        Ok(self
            .entries
            .iter()
            .zip(picked)
            .filter_map(|(e, p)| p.then_some(e))
            .collect())
    }
}
