//! Finite reduced root systems given by a Cartan matrix.
//!
//! Convention: `cartan[i][j] = 2(α_i, α_j) / (α_j, α_j)`, so a `-2` in row
//! `i`, column `j` means `α_j` is the shorter of the two. The invariant form
//! is `(α_i, α_j) = cartan[i][j] * d_j` with `d_j = (α_j, α_j) / 2`, scaled
//! to the least positive integers on each irreducible component. For F4 that
//! puts short roots at squared length 2 and long roots at 4.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Default bound on the number of positive roots; E8 has 120.
pub const DEFAULT_ROOT_CAP: usize = 4096;

/// A root, as integer coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn simple(rank: usize, index: usize) -> Root {
        let mut v = vec![0; rank];
        v[index - 1] = 1;
        Root(v)
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&c| Rational::from_integer(c)).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A rational vector in the simple-root basis.
///
/// Read as a character of the split torus, `Weight(c)` has absolute value
/// `∏ y_i^{c_i}` at a point where `y_i = |e^{α_i}(a)|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn from_integers(v: &[i64]) -> Weight {
        Weight(v.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, s: Rational) -> Weight {
        Weight(self.0.iter().map(|c| c * s).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::vec_as_string::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::vec_as_string::deserialize(d).map(Weight)
    }
}

/// A finite reduced root system with root-space multiplicities.
#[derive(Clone, Debug)]
pub struct RootSystem {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    // gram[i][j] = (α_i, α_j)
    gram: Vec<Vec<i64>>,
    multiplicity_by_length: BTreeMap<i64, u32>,
    positive_roots: Vec<Root>,
    root_index: HashMap<Root, usize>,
    components: Vec<Vec<usize>>,
}

impl RootSystem {
    /// Builds the system with every root space one-dimensional.
    pub fn new(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let mut sys = Self::generate(cartan, DEFAULT_ROOT_CAP)?;
        sys.multiplicity_by_length = sys.root_lengths().into_iter().map(|l| (l, 1)).collect();
        Ok(sys)
    }

    /// Builds the system with an explicit multiplicity for each squared length
    /// that occurs. Every occurring length must be listed, and nothing else.
    pub fn build(cartan: Vec<Vec<i64>>, multiplicity_by_length: BTreeMap<i64, u32>) -> Result<Self> {
        Self::build_with_cap(cartan, multiplicity_by_length, DEFAULT_ROOT_CAP)
    }

    pub fn build_with_cap(
        cartan: Vec<Vec<i64>>,
        multiplicity_by_length: BTreeMap<i64, u32>,
        cap: usize,
    ) -> Result<Self> {
        let mut sys = Self::generate(cartan, cap)?;
        let lengths = sys.root_lengths();
        for l in &lengths {
            if !multiplicity_by_length.contains_key(l) {
                return Err(Error::MissingMultiplicity(*l));
            }
        }
        for (l, m) in &multiplicity_by_length {
            if !lengths.contains(l) {
                return Err(Error::UnusedMultiplicity(*l));
            }
            if *m == 0 {
                return Err(Error::ZeroMultiplicity);
            }
        }
        sys.multiplicity_by_length = multiplicity_by_length;
        Ok(sys)
    }

    /// Builds the system with long roots of multiplicity one and every
    /// shorter root of multiplicity `short`. In a simply-laced system all
    /// roots count as long.
    pub fn with_short_multiplicity(cartan: Vec<Vec<i64>>, short: u32) -> Result<Self> {
        if short == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        let mut sys = Self::generate(cartan, DEFAULT_ROOT_CAP)?;
        let lengths = sys.root_lengths();
        let longest = *lengths.iter().max().expect("rank is positive");
        sys.multiplicity_by_length = lengths
            .into_iter()
            .map(|l| (l, if l == longest { 1 } else { short }))
            .collect();
        Ok(sys)
    }

    fn generate(cartan: Vec<Vec<i64>>, cap: usize) -> Result<Self> {
        let rank = cartan.len();
        validate_cartan(&cartan)?;
        let components = connected_components(&cartan);
        let symmetrizer = symmetrize(&cartan, &components)?;
        let gram: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| cartan[i][j] * symmetrizer[j]).collect())
            .collect();

        let mut sys = RootSystem {
            rank,
            cartan,
            symmetrizer,
            gram,
            multiplicity_by_length: BTreeMap::new(),
            positive_roots: Vec::new(),
            root_index: HashMap::new(),
            components,
        };
        sys.positive_roots = sys.generate_positive(cap)?;
        sys.root_index = sys
            .positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(sys)
    }

    // Root strings by increasing height: γ + α_i is a root iff the α_i-string
    // through γ extends upward, i.e. p - <γ, α_i^∨> > 0 where p counts how far
    // the string extends downward.
    fn generate_positive(&self, cap: usize) -> Result<Vec<Root>> {
        let mut roots: Vec<Root> = (1..=self.rank).map(|i| Root::simple(self.rank, i)).collect();
        let mut seen: HashSet<Root> = roots.iter().cloned().collect();
        let mut queue: VecDeque<usize> = (0..self.rank).collect();
        while let Some(idx) = queue.pop_front() {
            let gamma = roots[idx].clone();
            for i in 0..self.rank {
                let alpha = Root::simple(self.rank, i + 1);
                if gamma == alpha {
                    continue;
                }
                let mut p = 0;
                let mut lower = &gamma - &alpha;
                while seen.contains(&lower) {
                    p += 1;
                    lower = &lower - &alpha;
                }
                let q = p - self.coroot_pairing_int(gamma.coeffs(), i);
                if q > 0 {
                    let up = &gamma + &alpha;
                    if seen.insert(up.clone()) {
                        roots.push(up);
                        queue.push_back(roots.len() - 1);
                        if roots.len() > cap {
                            return Err(Error::RootCapExceeded { cap });
                        }
                    }
                }
            }
        }
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        Ok(roots)
    }

    fn root_lengths(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .positive_roots
            .iter()
            .map(|r| self.squared_length(r))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_j = (α_j, α_j) / 2`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn multiplicity_by_length(&self) -> &BTreeMap<i64, u32> {
        &self.multiplicity_by_length
    }

    /// Positive roots ordered by height, then reverse-lexicographically, so
    /// the simple roots come first in index order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// All roots: the positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| -r));
        v
    }

    pub fn simple_root(&self, index: usize) -> Root {
        Root::simple(self.rank, index)
    }

    pub fn is_positive_root(&self, r: &Root) -> bool {
        self.root_index.contains_key(r)
    }

    pub fn is_root(&self, r: &Root) -> bool {
        r.rank() == self.rank && (self.is_positive_root(r) || self.is_positive_root(&-r))
    }

    pub fn check_root(&self, r: &Root) -> Result<()> {
        self.check_rank(r.rank())?;
        if self.is_root(r) {
            Ok(())
        } else {
            Err(Error::NotARoot(r.0.clone()))
        }
    }

    pub(crate) fn check_rank(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::Dimension {
                rank: self.rank,
                got: len,
            });
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.rank {
            return Err(Error::IndexOutOfRange {
                index,
                rank: self.rank,
            });
        }
        Ok(())
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// Simple-root indices (1-based) of each irreducible component.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components
            .iter()
            .map(|c| c.iter().map(|i| i + 1).collect())
            .collect()
    }

    pub fn pairing_roots(&self, x: &Root, y: &Root) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += x.0[i] * self.gram[i][j] * y.0[j];
            }
        }
        s
    }

    /// The invariant form on weights.
    pub fn pairing(&self, x: &Weight, y: &Weight) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += x.0[i] * y.0[j] * self.gram[i][j];
            }
        }
        s
    }

    pub fn squared_length(&self, r: &Root) -> i64 {
        self.pairing_roots(r, r)
    }

    /// `<x, α_j^∨>` for a root-lattice vector, `j` zero-based.
    pub(crate) fn coroot_pairing_int(&self, x: &[i64], j: usize) -> i64 {
        (0..self.rank).map(|k| x[k] * self.cartan[k][j]).sum()
    }

    /// `<x, α_j^∨>` for a weight, `j` zero-based.
    pub(crate) fn coroot_pairing(&self, x: &Weight, j: usize) -> Rational {
        (0..self.rank)
            .map(|k| x.0[k] * self.cartan[k][j])
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Root-space dimension, determined by squared length.
    pub fn multiplicity(&self, r: &Root) -> u32 {
        let len = self.squared_length(r);
        self.multiplicity_by_length.get(&len).copied().unwrap_or(1)
    }

    /// The highest root of an irreducible system.
    pub fn highest_root(&self) -> Result<Root> {
        if !self.is_irreducible() {
            return Err(Error::Reducible {
                components: self.components.len(),
            });
        }
        let top = self
            .positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty")
            .clone();
        debug_assert!(self
            .positive_roots
            .iter()
            .all(|g| (&top - g).0.iter().all(|&c| c >= 0)));
        Ok(top)
    }
}

fn validate_cartan(cartan: &[Vec<i64>]) -> Result<()> {
    let n = cartan.len();
    if n == 0 {
        return Err(Error::NotCartan("empty matrix".into()));
    }
    for (i, row) in cartan.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotCartan(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        for (j, &a) in row.iter().enumerate() {
            if i == j && a != 2 {
                return Err(Error::NotCartan(format!("diagonal entry ({0},{0}) is {a}", i + 1)));
            }
            if i != j {
                if a > 0 {
                    return Err(Error::NotCartan(format!("positive off-diagonal entry ({},{})", i + 1, j + 1)));
                }
                if (a == 0) != (cartan[j][i] == 0) {
                    return Err(Error::NotCartan(format!(
                        "entries ({},{}) and ({},{}) must vanish together",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

fn connected_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if cartan[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

// Solve a_ij d_j = a_ji d_i on each component, then clear denominators.
fn symmetrize(cartan: &[Vec<i64>], components: &[Vec<usize>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for comp in components {
        d[comp[0]] = Some(Rational::from_integer(1));
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = di * Rational::new(cartan[j][i], cartan[i][j]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent ratio along a cycle through indices {} and {}",
                            i + 1,
                            j + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let mut out = vec![0; n];
    for comp in components {
        let lcm = comp
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let scaled: Vec<i64> = comp
            .iter()
            .map(|&i| (d[i].unwrap() * lcm).to_integer())
            .collect();
        let g = scaled.iter().fold(0i64, |acc, v| acc.gcd(v));
        for (&i, v) in comp.iter().zip(&scaled) {
            debug_assert!(v.is_positive());
            out[i] = v / g;
        }
    }
    Ok(out)
}

/// Cartan matrices of the irreducible finite types, Bourbaki numbering, in
/// the convention of this module.
pub mod cartan {
    use crate::classify::Family;

    pub fn standard(family: Family, rank: usize) -> Option<Vec<Vec<i64>>> {
        let mut a = vec![vec![0i64; rank]; rank];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i - 1][j - 1] = aij;
            a[j - 1][i - 1] = aji;
        };
        match (family, rank) {
            (Family::A, n) if n >= 1 => {
                for i in 1..n {
                    link(i, i + 1, -1, -1);
                }
            }
            (Family::B, n) if n >= 2 => {
                for i in 1..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                // α_n short
                link(n - 1, n, -2, -1);
            }
            (Family::C, n) if n >= 2 => {
                for i in 1..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                // α_n long
                link(n - 1, n, -1, -2);
            }
            (Family::D, n) if n >= 4 => {
                for i in 1..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                a[n - 2][n - 1] = 0;
                a[n - 1][n - 2] = 0;
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            (Family::E, n) if (6..=8).contains(&n) => {
                link(1, 3, -1, -1);
                link(2, 4, -1, -1);
                for i in 3..n {
                    link(i, i + 1, -1, -1);
                }
            }
            (Family::F, 4) => {
                link(1, 2, -1, -1);
                link(2, 3, -2, -1);
                link(3, 4, -1, -1);
            }
            (Family::G, 2) => {
                // α_1 short, α_2 long
                link(1, 2, -1, -3);
            }
            _ => return None,
        }
        Some(a)
    }

    pub fn f4() -> Vec<Vec<i64>> {
        standard(Family::F, 4).unwrap()
    }
}
