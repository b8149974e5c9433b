//! Heisenberg parabolics, the iterated tower of their radicals, and modular
//! characters.
//!
//! A modular character is stored as its logarithm: the weight
//! `Σ m(γ)·γ` over the radical roots `γ`, with `m` the root multiplicity.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::classify::{classify, Family};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::roots::{Root, RootSystem, Weight};
use crate::subsystem::{orthogonal_within, Subsystem};
use crate::weyl::WeylElement;

/// One step `N_i` of the tower, all roots in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerLevel {
    pub level_index: usize,
    /// Dynkin type of the level's ambient system `G_i`.
    pub ambient_type: String,
    #[serde(skip)]
    pub ambient: Subsystem,
    pub center_root: Root,
    pub radical_roots: Vec<Root>,
    pub is_abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicShape {
    pub levi_simple_indices: BTreeSet<usize>,
    pub radical_roots: Vec<Root>,
}

/// The radical of the Heisenberg parabolic: positive roots pairing strictly
/// positively with the highest root.
pub fn heisenberg_radical(sys: &RootSystem) -> Result<TowerLevel> {
    sys.highest_root()?;
    let full = Subsystem::full(sys);
    let ty = classify(sys, &full)?[0].kind.to_string();
    Ok(radical_within(sys, &full, 1, ty))
}

fn radical_within(sys: &RootSystem, ambient: &Subsystem, level_index: usize, ambient_type: String) -> TowerLevel {
    let center = ambient
        .highest_root()
        .expect("irreducible ambient system has a highest root");
    let radical_roots: Vec<Root> = ambient
        .positive_part()
        .iter()
        .filter(|g| sys.pairing_roots(g, &center) > 0)
        .cloned()
        .collect();
    TowerLevel {
        level_index,
        ambient_type,
        ambient: ambient.clone(),
        is_abelian: radical_roots.len() == 1,
        center_root: center,
        radical_roots,
    }
}

/// `N_G = N_1 N_2 ...`: each level is the Heisenberg radical of the next
/// ambient system, which is the designated simple factor of the roots
/// orthogonal to the previous center. Stops when that orthogonal set is
/// empty.
pub fn heisenberg_tower(sys: &RootSystem) -> Result<Vec<TowerLevel>> {
    let mut levels = vec![heisenberg_radical(sys)?];
    loop {
        let last = levels.last().unwrap();
        let perp = orthogonal_within(sys, &last.ambient, &last.center_root);
        if perp.is_empty() {
            break;
        }
        let comps = classify(sys, &perp)?;
        let shape = comps
            .iter()
            .map(|c| c.kind.to_string())
            .collect::<Vec<_>>()
            .join("x");
        let is_a1 = |c: &&crate::classify::Component| c.kind.family == Family::A && c.kind.rank == 1;
        let chosen = if comps.len() == 1 {
            &comps[0]
        } else {
            let rest: Vec<_> = comps.iter().filter(|c| !is_a1(c)).collect();
            let a1_count = comps.len() - rest.len();
            if rest.len() != 1 || a1_count > 2 {
                return Err(Error::TowerShape(shape));
            }
            rest[0]
        };
        let next = Subsystem::generated_by(sys, &chosen.simple_roots)?;
        let idx = last.level_index + 1;
        levels.push(radical_within(sys, &next, idx, chosen.kind.to_string()));
    }
    Ok(levels)
}

/// Recovers the standard parabolic whose unipotent radical has exactly
/// these roots.
pub fn radical_to_parabolic(sys: &RootSystem, roots: &[Root]) -> Result<ParabolicShape> {
    for r in roots {
        sys.check_rank(r.rank())?;
        if !sys.is_positive_root(r) {
            return Err(Error::NotParabolic);
        }
    }
    let given: HashSet<&Root> = roots.iter().collect();
    // a simple root is in the radical iff it is outside the Levi
    let levi: BTreeSet<usize> = (1..=sys.rank())
        .filter(|&i| !given.contains(&sys.simple_root(i)))
        .collect();
    let expected: HashSet<&Root> = sys
        .positive_roots()
        .iter()
        .filter(|r| r.0.iter().enumerate().any(|(k, &c)| c != 0 && !levi.contains(&(k + 1))))
        .collect();
    if expected != given {
        return Err(Error::NotParabolic);
    }
    let mut radical_roots: Vec<Root> = sys
        .positive_roots()
        .iter()
        .filter(|r| given.contains(r))
        .cloned()
        .collect();
    radical_roots.dedup();
    Ok(ParabolicShape {
        levi_simple_indices: levi,
        radical_roots,
    })
}

/// `Σ m(γ)·γ` over the given positive roots.
pub fn modular_weight(sys: &RootSystem, roots: &[Root]) -> Result<Weight> {
    let mut acc = vec![0i64; sys.rank()];
    for r in roots {
        sys.check_rank(r.rank())?;
        if !sys.is_positive_root(r) {
            return Err(Error::Decay(format!("{r} is not a positive root")));
        }
        let m = sys.multiplicity(r) as i64;
        for (a, c) in acc.iter_mut().zip(&r.0) {
            *a += m * c;
        }
    }
    Ok(Weight::from_integers(&acc))
}

/// Log of the modular character of the minimal parabolic of `A·H`, taken
/// with the positive system inherited from the ambient one.
pub fn subsystem_delta(sys: &RootSystem, s: &Subsystem) -> Weight {
    modular_weight(sys, s.positive_part()).expect("subsystem roots are ambient roots")
}

pub fn conjugate_subsystem(sys: &RootSystem, s: &Subsystem, w: &WeylElement) -> Subsystem {
    s.conjugate(sys, w)
}

/// `Σ δ_i / (2 k_i)` for subsystems with their integers `k_i`.
pub fn half_density(sys: &RootSystem, parts: &[(&Subsystem, u32)]) -> Weight {
    parts.iter().fold(Weight::zero(sys.rank()), |acc, (s, k)| {
        &acc + &subsystem_delta(sys, s).scale(Rational::new(1, 2 * *k as i64))
    })
}
