//! Dynkin-type classification of root subsystems.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{Root, RootSystem};
use crate::subsystem::Subsystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An irreducible finite type. The rank-two doubly laced type is reported
/// as `C2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Self {
        DynkinType { family, rank }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    #[serde(rename = "type")]
    pub kind: DynkinType,
    pub simple_roots: Vec<Root>,
}

/// Splits `s` into irreducible components and names each one.
///
/// Components come out in order of their first simple root, with simple
/// roots listed in the subsystem's positive-root order.
pub fn classify(sys: &RootSystem, s: &Subsystem) -> Result<Vec<Component>> {
    let simple = s.simple_roots();
    let n = simple.len();
    let cartan: Vec<Vec<i64>> = simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| 2 * sys.pairing_roots(a, b) / sys.squared_length(b))
                .collect()
        })
        .collect();

    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut members = vec![start];
        assigned[start] = true;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if !assigned[j] && cartan[i][j] != 0 {
                    assigned[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        let sub: Vec<Vec<i64>> = members
            .iter()
            .map(|&i| members.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        let roots: Vec<Root> = members.iter().map(|&i| simple[i].clone()).collect();
        let kind = identify(&sub).ok_or_else(|| {
            Error::Unclassifiable(format!("component with simple roots {roots:?}"))
        })?;
        out.push(Component {
            kind,
            simple_roots: roots,
        });
    }

    let total: usize = out.iter().map(|c| c.kind.positive_root_count()).sum();
    if total != s.positive_part().len() {
        return Err(Error::Unclassifiable(format!(
            "types account for {total} positive roots but the subsystem has {}",
            s.positive_part().len()
        )));
    }
    Ok(out)
}

/// Names a connected Cartan matrix (same convention as [`RootSystem`]).
pub fn identify(cartan: &[Vec<i64>]) -> Option<DynkinType> {
    let n = cartan.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(DynkinType::new(Family::A, 1));
    }
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if cartan[i][j] != 0 {
                edges.push((i, j, cartan[i][j] * cartan[j][i]));
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    // connected with n - 1 edges: a tree
    if edges.len() != n - 1 {
        return None;
    }
    let triple: Vec<_> = edges.iter().filter(|e| e.2 == 3).collect();
    let double: Vec<_> = edges.iter().filter(|e| e.2 == 2).collect();
    if edges.iter().any(|e| e.2 > 3) {
        return None;
    }
    if !triple.is_empty() {
        return (n == 2).then_some(DynkinType::new(Family::G, 2));
    }
    let max_degree = *degree.iter().max().unwrap();
    if double.len() > 1 {
        return None;
    }
    if let Some(&&(i, j, _)) = double.first() {
        if max_degree > 2 {
            return None;
        }
        if n == 2 {
            return Some(DynkinType::new(Family::C, 2));
        }
        if degree[i] == 2 && degree[j] == 2 {
            return (n == 4).then_some(DynkinType::new(Family::F, 4));
        }
        let (leaf, other) = if degree[i] == 1 { (i, j) } else { (j, i) };
        // cartan[other][leaf] = -2 means the leaf is the short one
        let family = if cartan[other][leaf] == -2 {
            Family::B
        } else {
            Family::C
        };
        return Some(DynkinType::new(family, n));
    }
    if max_degree <= 2 {
        return Some(DynkinType::new(Family::A, n));
    }
    let branches: Vec<usize> = (0..n).filter(|&i| degree[i] >= 3).collect();
    if branches.len() != 1 || degree[branches[0]] != 3 {
        return None;
    }
    let center = branches[0];
    let mut legs: Vec<usize> = (0..n)
        .filter(|&j| j != center && cartan[center][j] != 0)
        .map(|start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            loop {
                let next = (0..n).find(|&k| k != prev && k != cur && cartan[cur][k] != 0);
                match next {
                    Some(k) => {
                        prev = cur;
                        cur = k;
                        len += 1;
                    }
                    None => break len,
                }
            }
        })
        .collect();
    legs.sort_unstable();
    match legs.as_slice() {
        [1, 1, _] => Some(DynkinType::new(Family::D, n)),
        [1, 2, 2] => Some(DynkinType::new(Family::E, 6)),
        [1, 2, 3] => Some(DynkinType::new(Family::E, 7)),
        [1, 2, 4] => Some(DynkinType::new(Family::E, 8)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::cartan;
    use crate::subsystem::{orthogonal_subsystem, orthogonal_within};

    #[test]
    fn identifies_standard_matrices() {
        let cases = [
            (Family::A, 1),
            (Family::A, 5),
            (Family::B, 3),
            (Family::B, 5),
            (Family::C, 2),
            (Family::C, 3),
            (Family::C, 6),
            (Family::D, 4),
            (Family::D, 6),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ];
        for (f, n) in cases {
            let a = cartan::standard(f, n).unwrap();
            assert_eq!(identify(&a), Some(DynkinType::new(f, n)), "{f:?}{n}");
            let sys = RootSystem::new(a).unwrap();
            assert_eq!(sys.positive_roots().len(), DynkinType::new(f, n).positive_root_count());
        }
        assert_eq!(
            identify(&cartan::standard(Family::B, 2).unwrap()),
            Some(DynkinType::new(Family::C, 2))
        );
        // affine A2 (a cycle)
        assert_eq!(identify(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]), None);
    }

    #[test]
    fn perp_of_beta_is_c3_and_its_perp_is_c2() {
        let sys = RootSystem::new(cartan::f4()).unwrap();
        let full = Subsystem::full(&sys);
        assert_eq!(
            classify(&sys, &full).unwrap()[0].kind,
            DynkinType::new(Family::F, 4)
        );
        let h2 = orthogonal_subsystem(&sys, &sys.highest_root().unwrap()).unwrap();
        let comps = classify(&sys, &h2).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind.to_string(), "C3");
        assert_eq!(
            comps[0].simple_roots,
            vec![sys.simple_root(2), sys.simple_root(3), sys.simple_root(4)]
        );
        let top = h2.highest_root().unwrap();
        assert_eq!(top, Root(vec![0, 1, 2, 2]));
        let inner = orthogonal_within(&sys, &h2, &top);
        let comps = classify(&sys, &inner).unwrap();
        assert_eq!(comps.iter().map(|c| c.kind.to_string()).collect::<Vec<_>>(), ["C2"]);
        assert!(classify(&sys, &Subsystem::empty()).unwrap().is_empty());
    }

    #[test]
    fn standalone_c3_perp_is_c2() {
        let sys = RootSystem::new(cartan::standard(Family::C, 3).unwrap()).unwrap();
        let perp = orthogonal_subsystem(&sys, &sys.highest_root().unwrap()).unwrap();
        let comps = classify(&sys, &perp).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, DynkinType::new(Family::C, 2));
    }

    #[test]
    fn reducible_subsystems() {
        // perp of the highest root in B4 is A1 x B2 (reported C2)
        let sys = RootSystem::new(cartan::standard(Family::B, 4).unwrap()).unwrap();
        let perp = orthogonal_subsystem(&sys, &sys.highest_root().unwrap()).unwrap();
        let mut names: Vec<String> = classify(&sys, &perp)
            .unwrap()
            .iter()
            .map(|c| c.kind.to_string())
            .collect();
        names.sort();
        assert_eq!(names, ["A1", "C2"]);
        // D4: A1 x A1 x A1
        let sys = RootSystem::new(cartan::standard(Family::D, 4).unwrap()).unwrap();
        let perp = orthogonal_subsystem(&sys, &sys.highest_root().unwrap()).unwrap();
        let comps = classify(&sys, &perp).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.kind == DynkinType::new(Family::A, 1)));
        // E7: perp of the highest root is D6
        let sys = RootSystem::new(cartan::standard(Family::E, 7).unwrap()).unwrap();
        let perp = orthogonal_subsystem(&sys, &sys.highest_root().unwrap()).unwrap();
        let comps = classify(&sys, &perp).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, DynkinType::new(Family::D, 6));
    }
}
