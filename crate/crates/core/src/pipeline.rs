//! End-to-end decay computation for one catalog entry.
//!
//! 1. `δ_G` from all positive roots.
//! 2. The `H2` bound: the oscillator threshold `q` against `δ_{H2}` restricted
//!    to `|e^β| = 1`, Hölder-combined with the Levi-factor bound.
//! 3. The non-minimal bound from `H1` and `H2`, conjugated by the best Weyl
//!    element among the candidates.
//! 4. The sharp threshold of the minimal representation from its exponents.
//! 5. `p(G)` and the isolation test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::GroupCatalogEntry;
use crate::classify::{classify, Family};
use crate::decay::{
    holder_combine, isolation_check, oscillator_sharp_q, restrict_weight, sharp_p_from_exponents,
    weyl_search, Binding, OscillatorBound, SearchResult, SubgroupBound, Threshold,
};
use crate::error::{Error, Result, ResultExt};
use crate::parabolic::{modular_weight, subsystem_delta};
use crate::roots::{Root, RootSystem, Weight};
use crate::subsystem::Subsystem;
use crate::weyl::{enumerate_weyl, WeylElement, DEFAULT_ORDER_CAP};

/// Which Weyl elements to try when conjugating `H1` and `H2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// The entry's candidate words, or the whole Weyl group if it has none.
    #[default]
    Candidates,
    Full,
    Word(Vec<usize>),
}

/// The group data the pipeline stages share.
pub struct GroupSetup<'a> {
    pub entry: &'a GroupCatalogEntry,
    pub sys: RootSystem,
    pub beta: Root,
    pub delta_g: Weight,
    pub h1: Subsystem,
    pub h2: Subsystem,
}

impl<'a> GroupSetup<'a> {
    pub fn new(entry: &'a GroupCatalogEntry) -> Result<Self> {
        let sys = entry.root_system()?;
        let beta = sys.highest_root()?;
        let delta_g = modular_weight(&sys, sys.positive_roots())?;
        let h1 = entry.h1(&sys)?;
        let h2 = entry.h2(&sys)?;
        Ok(GroupSetup {
            entry,
            sys,
            beta,
            delta_g,
            h1,
            h2,
        })
    }

    fn require<T: Clone>(&self, v: &Option<T>, field: &'static str) -> Result<T> {
        v.clone().ok_or_else(|| self.incomplete(field))
    }

    fn incomplete(&self, field: &'static str) -> Error {
        Error::Incomplete {
            name: self.entry.name.clone(),
            field,
        }
    }
}

/// The `H2` restriction bound and its ingredients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Bound {
    pub delta_h2: Weight,
    /// Coordinate eliminated by `|e^β| = 1` (1-based).
    pub eliminated: usize,
    pub delta_h2_restricted: Weight,
    pub phi_exponents: Weight,
    pub q_h2: Threshold,
    pub levi_factor_bound: Threshold,
    pub threshold_h2: Threshold,
}

pub fn h2_bound(setup: &GroupSetup) -> Result<H2Bound> {
    let entry = setup.entry;
    let sys = &setup.sys;
    if setup.h2.is_empty() {
        return Err(setup.incomplete("h2_generators"));
    }
    let params = setup.require(&entry.phi_formula_params, "phi_formula_params")?;
    let levi_bound = setup.require(&entry.levi_factor_bound, "levi_factor_bound")?;
    let ty = classify(sys, &Subsystem::full(sys))?[0].kind;
    if ty.family != Family::F {
        return Err(Error::Decay(format!(
            "the oscillator bound is only available for relative type F4, `{}` is {ty}",
            entry.name
        )));
    }
    let outside: Vec<usize> = (1..=sys.rank())
        .filter(|i| !entry.h2_generators.contains(i))
        .collect();
    let [eliminated] = outside[..] else {
        return Err(Error::Decay(format!(
            "H2 must omit exactly one simple root, omits {outside:?}"
        )));
    };
    let delta_h2 = subsystem_delta(sys, &setup.h2);
    let delta_h2_restricted = restrict_weight(&delta_h2, &setup.beta, eliminated)?;
    let phi = OscillatorBound::for_short_multiplicity(params.r)?;
    let q_h2 = oscillator_sharp_q(&phi, &delta_h2_restricted)?;
    let threshold_h2 = holder_combine(levi_bound, q_h2)?;
    Ok(H2Bound {
        delta_h2,
        eliminated,
        delta_h2_restricted,
        phi_exponents: phi.phi_exponents,
        q_h2,
        levi_factor_bound: levi_bound,
        threshold_h2,
    })
}

/// The bound for all nontrivial non-minimal representations.
#[derive(Clone, Debug)]
pub struct NonminimalBound {
    pub h2: H2Bound,
    pub h1_bound: SubgroupBound,
    pub h2_bound: SubgroupBound,
    pub mode: &'static str,
    pub search: SearchResult,
}

pub fn nonminimal_bound(setup: &GroupSetup, mode: &SearchMode) -> Result<NonminimalBound> {
    let entry = setup.entry;
    let sys = &setup.sys;
    if setup.h1.is_empty() {
        return Err(setup.incomplete("h1_generators"));
    }
    let h1_threshold = setup.require(&entry.h1_threshold, "h1_threshold")?;
    let h2 = h2_bound(setup).context("H2 bound")?;
    let h1_bound = SubgroupBound::new(setup.h1.clone(), h1_threshold)?;
    let h2_bound = SubgroupBound::new(setup.h2.clone(), h2.threshold_h2)?;

    let (label, candidates): (&'static str, Vec<WeylElement>) = match mode {
        SearchMode::Candidates if !entry.candidate_words.is_empty() => ("candidates", entry.candidates(sys)?),
        SearchMode::Candidates | SearchMode::Full => ("full", enumerate_weyl(sys, DEFAULT_ORDER_CAP)?),
        SearchMode::Word(w) => ("word", vec![WeylElement::from_word(sys, w)?]),
    };
    let bounds = [h1_bound.clone(), h2_bound.clone()];
    let search = weyl_search(sys, &setup.delta_g, &bounds, &candidates).context("Weyl search")?;
    Ok(NonminimalBound {
        h2,
        h1_bound,
        h2_bound,
        mode: label,
        search,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecayReport {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub short_multiplicity: u32,
    pub highest_root: Root,
    pub delta_g: Weight,
    pub delta_h1: Weight,
    pub delta_h2: Weight,
    pub delta_h2_restricted: Weight,
    pub phi_exponents: Weight,
    pub q_h2: Threshold,
    pub levi_factor_bound: Threshold,
    pub threshold_h1: Threshold,
    pub threshold_h2: Threshold,
    pub k_h1: u32,
    pub k_h2: u32,
    pub search_mode: String,
    pub candidates_evaluated: usize,
    pub witness_word: Vec<usize>,
    pub half_density: Weight,
    pub p_nonminimal: Threshold,
    pub p_nonminimal_binding: Binding,
    pub p_min_sharp: Threshold,
    pub p_min_binding: Binding,
    /// `max(p_min_sharp, p_nonminimal)`: an upper bound for `p(G)`, and its
    /// exact value when `p_of_g_sharp` holds.
    pub p_of_g: Threshold,
    /// `p(G)` is at least this.
    pub p_of_g_lower: Threshold,
    pub p_of_g_sharp: bool,
    pub isolation: Option<u32>,
    pub provenance: BTreeMap<String, String>,
}

pub fn pipeline(entry: &GroupCatalogEntry) -> Result<DecayReport> {
    pipeline_with(entry, &SearchMode::Candidates)
}

pub fn pipeline_with(entry: &GroupCatalogEntry, mode: &SearchMode) -> Result<DecayReport> {
    run(entry, mode).context(format!("pipeline for `{}`", entry.name))
}

fn run(entry: &GroupCatalogEntry, mode: &SearchMode) -> Result<DecayReport> {
    let setup = GroupSetup::new(entry)?;
    if entry.min_rep_exponents.is_empty() {
        return Err(setup.incomplete("min_rep_exponents"));
    }
    let nm = nonminimal_bound(&setup, mode)?;
    let sharp = sharp_p_from_exponents(&setup.delta_g, &entry.min_rep_exponents)?;

    let p_nonminimal = nm.search.best.threshold;
    let p_min = sharp.threshold;
    let p_of_g = p_min.max(p_nonminimal);
    let isolation = isolation_check(p_nonminimal, p_min);

    let word = nm.search.witness.to_string();
    let r = entry.short_multiplicity;
    let mut prov = BTreeMap::new();
    let mut note = |k: &str, v: String| {
        prov.insert(k.to_string(), v);
    };
    note("delta_g", format!("multiplicity-weighted sum of positive roots (long 1, short {r})"));
    note("delta_h2", format!("positive roots in the span of simple roots {:?}", entry.h2_generators));
    note(
        "q_h2",
        format!(
            "oscillator bound with r = {r} against delta_h2 restricted to |e^beta| = 1 (y_{} eliminated)",
            nm.h2.eliminated
        ),
    );
    note(
        "threshold_h2",
        format!("holder(levi_factor_bound = {}, q_h2 = {})", nm.h2.levi_factor_bound, nm.h2.q_h2),
    );
    note("threshold_h1", "catalog h1_threshold".into());
    note(
        "p_nonminimal",
        format!(
            "H1 (k = {}) and H2 (k = {}) conjugated by w = {word} ({}), binding coordinate {}",
            nm.h1_bound.k,
            nm.h2_bound.k,
            nm.mode,
            nm.search.best.binding.coordinate
        ),
    );
    note(
        "p_min_sharp",
        format!(
            "min_rep_exponents[{}], coordinate {}",
            sharp.binding.exponent.unwrap_or(0),
            sharp.binding.coordinate
        ),
    );
    note(
        "isolation",
        match isolation {
            Some(k) => format!("p_nonminimal <= {} < p_min_sharp", 2 * k),
            None => "no even integer separates p_nonminimal from p_min_sharp".into(),
        },
    );

    Ok(DecayReport {
        group: entry.name.clone(),
        label: entry.label.clone(),
        short_multiplicity: r,
        highest_root: setup.beta.clone(),
        delta_g: setup.delta_g.clone(),
        delta_h1: subsystem_delta(&setup.sys, &setup.h1),
        delta_h2: nm.h2.delta_h2.clone(),
        delta_h2_restricted: nm.h2.delta_h2_restricted.clone(),
        phi_exponents: nm.h2.phi_exponents.clone(),
        q_h2: nm.h2.q_h2,
        levi_factor_bound: nm.h2.levi_factor_bound,
        threshold_h1: nm.h1_bound.threshold,
        threshold_h2: nm.h2.threshold_h2,
        k_h1: nm.h1_bound.k,
        k_h2: nm.h2_bound.k,
        search_mode: nm.mode.to_string(),
        candidates_evaluated: nm.search.evaluated,
        witness_word: nm.search.witness.word().to_vec(),
        half_density: nm.search.half_density.clone(),
        p_nonminimal,
        p_nonminimal_binding: nm.search.best.binding.clone(),
        p_min_sharp: p_min,
        p_min_binding: sharp.binding,
        p_of_g,
        p_of_g_lower: p_min,
        p_of_g_sharp: p_min >= p_nonminimal,
        isolation,
        provenance: prov,
    })
}
