//! Closed symmetric root subsystems, the root systems of embedded subgroups.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::roots::{Root, RootSystem};
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    roots: BTreeSet<Root>,
    positive_part: Vec<Root>,
    label: Option<String>,
}

impl Subsystem {
    /// Validates that `roots` lie in the ambient system and are closed under
    /// negation and under sums that are roots.
    pub fn new(sys: &RootSystem, roots: impl IntoIterator<Item = Root>) -> Result<Self> {
        let roots: BTreeSet<Root> = roots.into_iter().collect();
        for r in &roots {
            sys.check_root(r)?;
        }
        for r in &roots {
            if !roots.contains(&-r) {
                return Err(Error::NotClosed(format!("{r} present but its negative is not")));
            }
        }
        for a in &roots {
            for b in &roots {
                let s = a + b;
                if sys.is_root(&s) && !roots.contains(&s) {
                    return Err(Error::NotClosed(format!("{a} + {b} = {s} is a root but missing")));
                }
            }
        }
        Ok(Self::from_valid(sys, roots))
    }

    fn from_valid(sys: &RootSystem, roots: BTreeSet<Root>) -> Self {
        let mut positive_part: Vec<Root> = roots
            .iter()
            .filter(|r| sys.is_positive_root(r))
            .cloned()
            .collect();
        positive_part.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        Subsystem {
            roots,
            positive_part,
            label: None,
        }
    }

    pub fn empty() -> Self {
        Subsystem {
            roots: BTreeSet::new(),
            positive_part: Vec::new(),
            label: None,
        }
    }

    pub fn full(sys: &RootSystem) -> Self {
        Self::from_valid(sys, sys.roots().into_iter().collect())
    }

    /// The smallest set containing `generators` stable under the reflections
    /// in its own elements, checked for closure afterwards.
    pub fn generated_by(sys: &RootSystem, generators: &[Root]) -> Result<Self> {
        for g in generators {
            sys.check_root(g)?;
        }
        let mut set: BTreeSet<Root> = generators.iter().cloned().collect();
        set.extend(generators.iter().map(|g| -g));
        loop {
            let current: Vec<Root> = set.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                let aa = sys.squared_length(a);
                for b in &current {
                    // s_a(b) = b - 2(b,a)/(a,a) a
                    let c = 2 * sys.pairing_roots(b, a) / aa;
                    let img = Root(b.0.iter().zip(&a.0).map(|(x, y)| x - c * y).collect());
                    grew |= set.insert(img);
                }
            }
            if !grew {
                break;
            }
        }
        Self::new(sys, set)
    }

    /// Roots in the span of the given simple roots (1-based indices): the root
    /// system of a standard Levi factor.
    pub fn levi(sys: &RootSystem, simple_indices: &BTreeSet<usize>) -> Result<Self> {
        for &i in simple_indices {
            sys.check_index(i)?;
        }
        let roots = sys
            .roots()
            .into_iter()
            .filter(|r| {
                r.0.iter()
                    .enumerate()
                    .all(|(k, &c)| c == 0 || simple_indices.contains(&(k + 1)))
            })
            .collect();
        Ok(Self::from_valid(sys, roots))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn roots(&self) -> &BTreeSet<Root> {
        &self.roots
    }

    pub fn positive_part(&self) -> &[Root] {
        &self.positive_part
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    /// `{w·γ}`, with the positive part recomputed against the ambient
    /// positive system.
    pub fn conjugate(&self, sys: &RootSystem, w: &WeylElement) -> Self {
        let roots = self.roots.iter().map(|r| w.apply_root(r)).collect();
        let mut out = Self::from_valid(sys, roots);
        out.label = self.label.clone();
        out
    }

    /// Positive roots of `self` that are not a sum of two positive roots of
    /// `self`.
    pub fn simple_roots(&self) -> Vec<Root> {
        let pos: BTreeSet<&Root> = self.positive_part.iter().collect();
        self.positive_part
            .iter()
            .filter(|g| {
                !self
                    .positive_part
                    .iter()
                    .any(|a| pos.contains(&(*g - a)))
            })
            .cloned()
            .collect()
    }

    /// Highest root of an irreducible subsystem, i.e. the positive root of
    /// greatest ambient height.
    pub(crate) fn highest_root(&self) -> Option<Root> {
        let top = self.positive_part.iter().max_by_key(|r| r.height())?;
        let unique = self
            .positive_part
            .iter()
            .filter(|r| r.height() == top.height())
            .count()
            == 1;
        unique.then(|| top.clone())
    }
}

/// `{γ ∈ Φ : (γ, x) = 0}`.
pub fn orthogonal_subsystem(sys: &RootSystem, x: &Root) -> Result<Subsystem> {
    sys.check_root(x)?;
    Ok(orthogonal_within(sys, &Subsystem::full(sys), x))
}

/// Roots of `ambient` orthogonal to `x`.
pub fn orthogonal_within(sys: &RootSystem, ambient: &Subsystem, x: &Root) -> Subsystem {
    let roots = ambient
        .roots()
        .iter()
        .filter(|g| sys.pairing_roots(g, x) == 0)
        .cloned()
        .collect();
    Subsystem::from_valid(sys, roots)
}
