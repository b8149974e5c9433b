//! Group catalog: the data each group contributes to the decay pipeline.
//!
//! A catalog is one JSON document:
//!
//! ```json
//! { "version": 1, "groups": [ { "name": "E7_9", "cartan": [[2,-1,0,0], ...], ... } ] }
//! ```
//!
//! Rationals are strings `"num/den"` (plain integers are accepted too);
//! `"inf"` marks a bound known to be finite but not specified.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, Family};
use crate::decay::{Exponent, Threshold};
use crate::error::{Error, Result, ResultExt};
use crate::roots::{Root, RootSystem};
use crate::subsystem::Subsystem;
use crate::weyl::WeylElement;

pub const CATALOG_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("../data/catalog.json");

/// Highest root every F4-type entry must reproduce.
pub const F4_HIGHEST_ROOT: [i64; 4] = [2, 3, 4, 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiParams {
    pub r: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupCatalogEntry {
    pub name: String,
    /// Free-form label, e.g. the Tits index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub cartan: Vec<Vec<i64>>,
    pub short_multiplicity: u32,
    #[serde(default)]
    pub min_rep_exponents: Vec<Exponent>,
    #[serde(default)]
    pub h1_generators: Vec<Root>,
    #[serde(default)]
    pub h2_generators: BTreeSet<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1_threshold: Option<Threshold>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi_factor_bound: Option<Threshold>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_formula_params: Option<PhiParams>,
    #[serde(default)]
    pub candidate_words: Vec<Vec<usize>>,
}

impl GroupCatalogEntry {
    pub fn root_system(&self) -> Result<RootSystem> {
        RootSystem::with_short_multiplicity(self.cartan.clone(), self.short_multiplicity)
    }

    pub fn h1(&self, sys: &RootSystem) -> Result<Subsystem> {
        Ok(Subsystem::generated_by(sys, &self.h1_generators)?.with_label("H1"))
    }

    pub fn h2(&self, sys: &RootSystem) -> Result<Subsystem> {
        Ok(Subsystem::levi(sys, &self.h2_generators)?.with_label("H2"))
    }

    pub fn candidates(&self, sys: &RootSystem) -> Result<Vec<WeylElement>> {
        self.candidate_words
            .iter()
            .map(|w| WeylElement::from_word(sys, w))
            .collect()
    }

    /// Checks every invariant that does not need the pipeline to run.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::Catalog("entry with empty name".into()));
        }
        let sys = self.root_system()?;
        let beta = sys.highest_root()?;
        let full_type = classify(&sys, &Subsystem::full(&sys))?[0].kind;
        if full_type.family == Family::F && beta.0 != F4_HIGHEST_ROOT {
            return Err(Error::Catalog(format!(
                "F4 labelling must put the highest root at 2α1+3α2+4α3+2α4, got {beta}"
            )));
        }
        if let Some(p) = &self.phi_formula_params {
            if p.r != self.short_multiplicity {
                return Err(Error::Catalog(format!(
                    "phi_formula_params.r = {} differs from short_multiplicity = {}",
                    p.r, self.short_multiplicity
                )));
            }
        }
        for (i, e) in self.min_rep_exponents.iter().enumerate() {
            if e.0.rank() != sys.rank() {
                return Err(Error::Catalog(format!(
                    "min_rep_exponents[{i}] has {} entries, rank is {}",
                    e.0.rank(),
                    sys.rank()
                )));
            }
        }
        self.h1(&sys).context("h1_generators")?;
        self.h2(&sys).context("h2_generators")?;
        if let Some(t) = self.h1_threshold {
            if !t.is_finite() {
                return Err(Error::Catalog("h1_threshold must be finite".into()));
            }
        }
        self.candidates(&sys).context("candidate_words")?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub version: u32,
    pub groups: Vec<GroupCatalogEntry>,
}

impl Catalog {
    /// The catalog compiled into the crate.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled catalog is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).context(path.display().to_string())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cat: Catalog = serde_json::from_str(text).map_err(|e| Error::Catalog(format!("parse error: {e}")))?;
        cat.validate()?;
        Ok(cat)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CATALOG_VERSION {
            return Err(Error::Catalog(format!(
                "unsupported version {} (expected {CATALOG_VERSION})",
                self.version
            )));
        }
        let mut names = HashSet::new();
        for (i, g) in self.groups.iter().enumerate() {
            if !names.insert(g.name.as_str()) {
                return Err(Error::Catalog(format!("duplicate group name `{}`", g.name)));
            }
            g.validate().context(format!("groups[{i}] (`{}`)", g.name))?;
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&GroupCatalogEntry> {
        self.groups
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGroup(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.groups.iter().map(|g| g.name.as_str()).collect()
    }
}
