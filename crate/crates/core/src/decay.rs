//! Decay thresholds: sharp `L^p` exponents from torus characters, subgroup
//! restriction bounds, Hölder combination and the isolation test.
//!
//! A threshold `p` means "strongly `L^{p+ε}` for every ε > 0". All arithmetic
//! is exact. The closed positive chamber (`y_i >= 1`) is where character
//! inequalities are compared, which reduces each of them to a coordinatewise
//! inequality between exponent vectors.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parabolic::half_density;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::roots::{Root, RootSystem, Weight};
use crate::subsystem::Subsystem;
use crate::weyl::WeylElement;

/// A decay exponent, or `Infinite` for "some finite bound exists but none is
/// specified". `Finite(_) < Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Threshold {
    Finite(Rational),
    Infinite,
}

impl Threshold {
    pub fn finite(n: i64, d: i64) -> Self {
        Threshold::Finite(Rational::new(n, d))
    }

    pub fn integer(n: i64) -> Self {
        Threshold::Finite(Rational::from_integer(n))
    }

    pub fn value(&self) -> Option<Rational> {
        match self {
            Threshold::Finite(r) => Some(*r),
            Threshold::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Threshold::Finite(_))
    }

    fn reciprocal(&self) -> Rational {
        match self {
            Threshold::Finite(r) => r.recip(),
            Threshold::Infinite => Rational::zero(),
        }
    }

    /// Least `k >= 1` with `2k >= p`.
    pub fn half_ceiling(&self) -> Option<u32> {
        let v = self.value()?;
        let k = (v / 2).ceil().to_integer().max(1);
        u32::try_from(k).ok()
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(r) => write!(f, "{}", format_rational(r)),
            Threshold::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Threshold {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(Threshold::Infinite),
            t => parse_rational(t).map(Threshold::Finite),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Threshold;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational \"num/den\", an integer, or \"inf\"")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Threshold, E> {
                s.parse().map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Threshold, E> {
                Ok(Threshold::integer(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Threshold, E> {
                i64::try_from(v).map(Threshold::integer).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// The logarithm of the absolute value of an exponent of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub Weight);

/// Where a threshold came from: the coordinate (1-based) that attains the
/// maximum, and for exponent criteria the index of the exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub coordinate: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exponent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedThreshold {
    pub threshold: Threshold,
    pub binding: Binding,
}

/// Least `p` with `c_j + (1/2 - 1/p) d_j >= 0` for every exponent `c` and
/// coordinate `j`, i.e. `max 2 d_j / (d_j + 2 c_j)`. This is the sharp
/// threshold: below it some exponent makes `δ^{1/2-1/p}·|χ|` unbounded on
/// the negative chamber.
///
/// When some `d_j + 2 c_j <= 0` no finite `p` works; the result is
/// `Infinite` with the binding naming the first offending pair.
pub fn sharp_p_from_exponents(delta_g: &Weight, exponents: &[Exponent]) -> Result<BoundedThreshold> {
    if exponents.is_empty() {
        return Err(Error::Decay("no exponents given".into()));
    }
    if delta_g.coeffs().iter().any(|d| !d.is_positive()) {
        return Err(Error::Decay(format!("modular weight {delta_g} must be strictly positive")));
    }
    let mut best: Option<BoundedThreshold> = None;
    for (e, chi) in exponents.iter().enumerate() {
        if chi.0.rank() != delta_g.rank() {
            return Err(Error::Dimension {
                rank: delta_g.rank(),
                got: chi.0.rank(),
            });
        }
        for (j, (d, c)) in delta_g.coeffs().iter().zip(chi.0.coeffs()).enumerate() {
            let denom = d + c * 2;
            let t = if denom.is_positive() {
                Threshold::Finite(d * 2 / denom)
            } else {
                Threshold::Infinite
            };
            if best.as_ref().is_none_or(|b| t > b.threshold) {
                best = Some(BoundedThreshold {
                    threshold: t,
                    binding: Binding {
                        coordinate: j + 1,
                        exponent: Some(e),
                    },
                });
            }
        }
    }
    Ok(best.expect("nonempty"))
}

/// A subgroup `H` with a known decay of the restriction `π|_H`, and the
/// integer `k = ⌈p/2⌉` used in the combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupBound {
    pub subsystem: Subsystem,
    pub threshold: Threshold,
    pub k: u32,
}

impl SubgroupBound {
    pub fn new(subsystem: Subsystem, threshold: Threshold) -> Result<Self> {
        let k = threshold
            .half_ceiling()
            .ok_or_else(|| Error::Decay("subgroup bound needs a finite threshold".into()))?;
        Ok(SubgroupBound {
            subsystem,
            threshold,
            k,
        })
    }

    /// Uses an explicit `k`; it must satisfy `2k >= threshold`.
    pub fn with_k(subsystem: Subsystem, threshold: Threshold, k: u32) -> Result<Self> {
        let ok = match threshold {
            Threshold::Finite(p) => k >= 1 && Rational::from_integer(2 * k as i64) >= p,
            Threshold::Infinite => false,
        };
        if !ok {
            return Err(Error::Decay(format!("k = {k} does not satisfy 2k >= {threshold}")));
        }
        Ok(SubgroupBound {
            subsystem,
            threshold,
            k,
        })
    }

    pub fn conjugate(&self, sys: &RootSystem, w: &WeylElement) -> Self {
        SubgroupBound {
            subsystem: self.subsystem.conjugate(sys, w),
            threshold: self.threshold,
            k: self.k,
        }
    }
}

/// `h = Σ δ_{H_i} / (2 k_i)` over the bounds.
pub fn combined_half_density(sys: &RootSystem, bounds: &[SubgroupBound]) -> Weight {
    let parts: Vec<(&Subsystem, u32)> = bounds.iter().map(|b| (&b.subsystem, b.k)).collect();
    half_density(sys, &parts)
}

/// Least `p` with `h_j >= d_j / p` on every coordinate.
pub fn threshold_from_half_density(delta_g: &Weight, h: &Weight) -> Result<BoundedThreshold> {
    if delta_g.rank() != h.rank() {
        return Err(Error::Dimension {
            rank: delta_g.rank(),
            got: h.rank(),
        });
    }
    let mut best: Option<BoundedThreshold> = None;
    for (j, (d, hj)) in delta_g.coeffs().iter().zip(h.coeffs()).enumerate() {
        if d.is_negative() || hj.is_negative() {
            return Err(Error::Decay(format!("negative coordinate {} in {delta_g} or {h}", j + 1)));
        }
        let t = if d.is_zero() {
            continue;
        } else if hj.is_zero() {
            Threshold::Infinite
        } else {
            Threshold::Finite(d / hj)
        };
        if best.as_ref().is_none_or(|b| t > b.threshold) {
            best = Some(BoundedThreshold {
                threshold: t,
                binding: Binding {
                    coordinate: j + 1,
                    exponent: None,
                },
            });
        }
    }
    best.ok_or_else(|| Error::Decay("modular weight is zero".into()))
}

/// If each `π|_{H_i}` is strongly `L^{p_i+ε}` and `∏ δ_{H_i}^{1/2k_i} >= δ_G^{1/p}`
/// on the positive chamber, then `π` is strongly `L^{p+ε}`. Returns the least
/// such `p`.
pub fn combine_subgroup_decay(
    sys: &RootSystem,
    delta_g: &Weight,
    bounds: &[SubgroupBound],
) -> Result<BoundedThreshold> {
    if bounds.is_empty() {
        return Err(Error::Decay("no subgroup bounds given".into()));
    }
    threshold_from_half_density(delta_g, &combined_half_density(sys, bounds))
}

/// `1/r = 1/p + 1/q`, with `Infinite` contributing zero.
pub fn holder_combine(p: Threshold, q: Threshold) -> Result<Threshold> {
    let s = p.reciprocal() + q.reciprocal();
    if s.is_zero() {
        return Err(Error::Decay("Hölder combination of two unspecified bounds".into()));
    }
    Ok(Threshold::Finite(s.recip()))
}

/// Restricts a character to the subtorus where `|e^{constraint}| = 1` by
/// solving that relation for `y_eliminate`. Returns the weight on the other
/// coordinates, in order.
pub fn restrict_weight(weight: &Weight, constraint: &Root, eliminate: usize) -> Result<Weight> {
    let n = weight.rank();
    if constraint.rank() != n {
        return Err(Error::Dimension { rank: n, got: constraint.rank() });
    }
    if eliminate == 0 || eliminate > n {
        return Err(Error::IndexOutOfRange { index: eliminate, rank: n });
    }
    let j = eliminate - 1;
    let bj = constraint.0[j];
    if bj == 0 {
        return Err(Error::Decay(format!("constraint {constraint} has no α_{eliminate} component")));
    }
    let cj = weight.0[j];
    Ok(Weight(
        (0..n)
            .filter(|&i| i != j)
            .map(|i| weight.0[i] - cj * Rational::new(constraint.0[i], bj))
            .collect(),
    ))
}

/// Upper bound `Φ ≤ y_2^{-(3r+5)/4} y_3^{-(r+2)} y_4^{-(r+3)/2}` on the
/// oscillator-representation matrix coefficients restricted to the `C3`
/// factor, in the coordinates left after eliminating `y_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OscillatorBound {
    pub short_mult: u32,
    pub phi_exponents: Weight,
}

impl OscillatorBound {
    pub fn for_short_multiplicity(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        let r = r as i64;
        Ok(OscillatorBound {
            short_mult: r as u32,
            phi_exponents: Weight(vec![
                Rational::new(-(3 * r + 5), 4),
                Rational::from_integer(-(r + 2)),
                Rational::new(-(r + 3), 2),
            ]),
        })
    }
}

/// Least `q` making every exponent of `Φ^q δ` nonpositive: `max f_j / e_j`
/// for `Φ = ∏ y_j^{-e_j}`, `δ = ∏ y_j^{f_j}`.
pub fn oscillator_sharp_q(phi: &OscillatorBound, delta_restricted: &Weight) -> Result<Threshold> {
    let e = &phi.phi_exponents;
    if e.rank() != delta_restricted.rank() {
        return Err(Error::Dimension { rank: e.rank(), got: delta_restricted.rank() });
    }
    if e.coeffs().iter().any(|c| !c.is_negative()) {
        return Err(Error::Decay(format!("oscillator exponents {e} must be strictly negative")));
    }
    if delta_restricted.coeffs().iter().any(|c| c.is_negative()) {
        return Err(Error::Decay(format!("restricted modular weight {delta_restricted} has a negative entry")));
    }
    let q = e
        .coeffs()
        .iter()
        .zip(delta_restricted.coeffs())
        .map(|(ej, fj)| fj / -ej)
        .max()
        .expect("nonempty");
    Ok(Threshold::Finite(q))
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best: BoundedThreshold,
    pub witness: WeylElement,
    pub half_density: Weight,
    pub evaluated: usize,
    /// Number of candidates attaining `best`.
    pub optimal_count: usize,
}

/// Conjugates every subsystem by the same `w` and keeps the `w` minimizing
/// the combined threshold. Ties go to the shortlex-least word.
pub fn weyl_search(
    sys: &RootSystem,
    delta_g: &Weight,
    bounds: &[SubgroupBound],
    weyl_set: &[WeylElement],
) -> Result<SearchResult> {
    if weyl_set.is_empty() {
        return Err(Error::Decay("empty set of Weyl elements".into()));
    }
    let mut best: Option<SearchResult> = None;
    for w in weyl_set {
        let conj: Vec<SubgroupBound> = bounds.iter().map(|b| b.conjugate(sys, w)).collect();
        let h = combined_half_density(sys, &conj);
        let t = threshold_from_half_density(delta_g, &h)?;
        match &mut best {
            None => {
                best = Some(SearchResult {
                    best: t,
                    witness: w.clone(),
                    half_density: h,
                    evaluated: 1,
                    optimal_count: 1,
                })
            }
            Some(b) => {
                b.evaluated += 1;
                match t.threshold.cmp(&b.best.threshold) {
                    Ordering::Less => {
                        b.best = t;
                        b.witness = w.clone();
                        b.half_density = h;
                        b.optimal_count = 1;
                    }
                    Ordering::Equal => {
                        b.optimal_count += 1;
                        if w.canonical_cmp(&b.witness).is_lt() {
                            b.witness = w.clone();
                            b.best = t;
                            b.half_density = h;
                        }
                    }
                    Ordering::Greater => {}
                }
            }
        }
    }
    let best = best.expect("nonempty");
    if !best.best.threshold.is_finite() {
        return Err(Error::Decay("every Weyl element gives an infinite bound".into()));
    }
    Ok(best)
}

/// Least integer `k` with `p_nonminimal <= 2k < p_min`. Such a `k` separates
/// the minimal representation from all others, so it is isolated.
pub fn isolation_check(p_nonminimal: Threshold, p_min_sharp: Threshold) -> Option<u32> {
    let k = p_nonminimal.half_ceiling()?;
    let two_k = Threshold::Finite(Rational::from_integer(2 * k as i64));
    (two_k < p_min_sharp).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::cartan;
    use crate::subsystem::orthogonal_subsystem;
    use crate::weyl::enumerate_weyl;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn exps(v: &[[i64; 4]]) -> Vec<Exponent> {
        v.iter().map(|e| Exponent(Weight::from_integers(e))).collect()
    }

    #[test]
    fn sharp_p_examples() {
        let d = Weight::from_integers(&[22, 42, 60, 32]);
        let t = sharp_p_from_exponents(
            &d,
            &exps(&[[-8, -15, -22, -12], [-8, -15, -22, -12], [-7, -15, -22, -12]]),
        )
        .unwrap();
        assert_eq!(t.threshold, Threshold::integer(8));
        assert_eq!(t.binding.coordinate, 4);

        let d = Weight::from_integers(&[34, 66, 96, 52]);
        let t = sharp_p_from_exponents(&d, &exps(&[[-13, -24, -36, -20], [-11, -24, -36, -20]])).unwrap();
        assert_eq!(t.threshold, Threshold::finite(26, 3));

        let t = sharp_p_from_exponents(&d, &exps(&[[0, 0, 0, 0]])).unwrap();
        assert_eq!(t.threshold, Threshold::integer(2));
    }

    #[test]
    fn sharp_p_infinite_and_errors() {
        let d = Weight::from_integers(&[22, 42, 60, 32]);
        let t = sharp_p_from_exponents(&d, &exps(&[[-8, -15, -22, -12], [-1, -21, 0, 0]])).unwrap();
        assert_eq!(t.threshold, Threshold::Infinite);
        assert_eq!(t.binding, Binding { coordinate: 2, exponent: Some(1) });
        assert!(sharp_p_from_exponents(&d, &[]).is_err());
        assert!(sharp_p_from_exponents(&Weight::from_integers(&[1, 0, 1, 1]), &exps(&[[0; 4]])).is_err());
        assert!(sharp_p_from_exponents(&d, &[Exponent(Weight::from_integers(&[0, 0]))]).is_err());
    }

    #[test]
    fn holder_examples() {
        assert_eq!(
            holder_combine(Threshold::integer(18), Threshold::finite(36, 7)).unwrap(),
            Threshold::integer(4)
        );
        assert_eq!(holder_combine(Threshold::Infinite, Threshold::integer(4)).unwrap(), Threshold::integer(4));
        assert_eq!(holder_combine(Threshold::integer(4), Threshold::integer(4)).unwrap(), Threshold::integer(2));
        assert!(holder_combine(Threshold::Infinite, Threshold::Infinite).is_err());
    }

    #[test]
    fn restrict_examples() {
        let beta = Root(vec![2, 3, 4, 2]);
        let r = restrict_weight(&Weight::from_integers(&[1, 0, 0, 0]), &beta, 1).unwrap();
        assert_eq!(r, Weight(vec![q(-3, 2), q(-2, 1), q(-1, 1)]));
        let r = restrict_weight(&Weight::from_integers(&[0, 5, -1, 7]), &beta, 1).unwrap();
        assert_eq!(r, Weight::from_integers(&[5, -1, 7]));
        let r = restrict_weight(&Weight::from_integers(&[0, 9, 16, 10]), &beta, 1).unwrap();
        assert_eq!(r, Weight::from_integers(&[9, 16, 10]));
        assert!(restrict_weight(&Weight::from_integers(&[1, 0, 0, 0]), &Root(vec![0, 1, 1, 1]), 1).is_err());
        assert!(restrict_weight(&Weight::from_integers(&[1, 0, 0, 0]), &beta, 5).is_err());
    }

    #[test]
    fn oscillator_examples() {
        let cases = [(2, [9, 16, 10], Threshold::integer(4)), (4, [15, 28, 18], Threshold::finite(36, 7)), (1, [6, 10, 6], Threshold::finite(10, 3))];
        for (r, f, expected) in cases {
            let phi = OscillatorBound::for_short_multiplicity(r).unwrap();
            assert!(phi.phi_exponents.coeffs().iter().all(|c| c.is_negative()));
            assert_eq!(oscillator_sharp_q(&phi, &Weight::from_integers(&f)).unwrap(), expected);
        }
        let phi = OscillatorBound::for_short_multiplicity(2).unwrap();
        assert_eq!(phi.phi_exponents, Weight(vec![q(-11, 4), q(-4, 1), q(-5, 2)]));
        assert!(oscillator_sharp_q(&phi, &Weight::from_integers(&[1, -1, 0])).is_err());
        assert!(OscillatorBound::for_short_multiplicity(0).is_err());
    }

    #[test]
    fn isolation_examples() {
        assert_eq!(isolation_check(Threshold::finite(192, 25), Threshold::finite(26, 3)), Some(4));
        assert_eq!(isolation_check(Threshold::integer(8), Threshold::integer(8)), None);
        assert_eq!(isolation_check(Threshold::integer(2), Threshold::finite(26, 3)), Some(1));
        assert_eq!(isolation_check(Threshold::integer(7), Threshold::Infinite), Some(4));
        assert_eq!(isolation_check(Threshold::Infinite, Threshold::Infinite), None);
    }

    fn f4_bounds(r: u32) -> (RootSystem, Weight, Vec<SubgroupBound>) {
        let s = RootSystem::with_short_multiplicity(cartan::f4(), r).unwrap();
        let beta = s.highest_root().unwrap();
        let delta = crate::parabolic::modular_weight(&s, s.positive_roots()).unwrap();
        let h1 = Subsystem::generated_by(&s, &[beta.clone()]).unwrap();
        let h2 = orthogonal_subsystem(&s, &beta).unwrap();
        let bounds = vec![
            SubgroupBound::new(h1, Threshold::integer(2)).unwrap(),
            SubgroupBound::new(h2, Threshold::integer(4)).unwrap(),
        ];
        (s, delta, bounds)
    }

    #[test]
    fn combine_at_catalog_words() {
        for (r, word, expected) in [(2, vec![4, 2, 3, 2, 1], Threshold::integer(8)), (4, vec![4, 1, 2, 3, 2, 1], Threshold::finite(192, 25))] {
            let (s, delta, bounds) = f4_bounds(r);
            let w = WeylElement::from_word(&s, &word).unwrap();
            let conj: Vec<_> = bounds.iter().map(|b| b.conjugate(&s, &w)).collect();
            assert_eq!(combine_subgroup_decay(&s, &delta, &conj).unwrap().threshold, expected);
        }
        // H = G itself with k = 1
        let (s, delta, _) = f4_bounds(2);
        let g = SubgroupBound::new(Subsystem::full(&s), Threshold::integer(2)).unwrap();
        assert_eq!(combine_subgroup_decay(&s, &delta, &[g]).unwrap().threshold, Threshold::integer(2));
        // H2 alone has no α_1 component
        let (s, delta, bounds) = f4_bounds(2);
        let h2_only = &bounds[1..];
        let t = combine_subgroup_decay(&s, &delta, h2_only).unwrap();
        assert_eq!(t.threshold, Threshold::Infinite);
        assert_eq!(t.binding.coordinate, 1);
        assert!(combine_subgroup_decay(&s, &delta, &[]).is_err());
    }

    #[test]
    fn identity_only_search() {
        let (s, delta, bounds) = f4_bounds(2);
        let res = weyl_search(&s, &delta, &bounds, &[WeylElement::identity(4)]).unwrap();
        assert_eq!(res.best.threshold, Threshold::integer(22));
        assert_eq!(res.half_density, Weight(vec![q(1, 1), q(15, 4), q(6, 1), q(7, 2)]));
        assert!(weyl_search(&s, &delta, &bounds, &[]).is_err());
    }

    #[test]
    fn full_search_beats_or_matches_catalog_words() {
        for (r, bound) in [(2, Threshold::integer(8)), (4, Threshold::finite(192, 25))] {
            let (s, delta, bounds) = f4_bounds(r);
            let all = enumerate_weyl(&s, 2000).unwrap();
            let res = weyl_search(&s, &delta, &bounds, &all).unwrap();
            assert!(res.best.threshold <= bound);
            assert_eq!(res.evaluated, 1152);
            let again = WeylElement::from_word(&s, res.witness.word()).unwrap();
            let conj: Vec<_> = bounds.iter().map(|b| b.conjugate(&s, &again)).collect();
            assert_eq!(combine_subgroup_decay(&s, &delta, &conj).unwrap().threshold, res.best.threshold);
        }
    }

    #[test]
    fn subgroup_bound_k() {
        let s = RootSystem::new(vec![vec![2]]).unwrap();
        let full = Subsystem::full(&s);
        assert_eq!(SubgroupBound::new(full.clone(), Threshold::integer(2)).unwrap().k, 1);
        assert_eq!(SubgroupBound::new(full.clone(), Threshold::integer(4)).unwrap().k, 2);
        assert_eq!(SubgroupBound::new(full.clone(), Threshold::finite(36, 7)).unwrap().k, 3);
        assert_eq!(SubgroupBound::new(full.clone(), Threshold::finite(1, 2)).unwrap().k, 1);
        assert!(SubgroupBound::new(full.clone(), Threshold::Infinite).is_err());
        assert!(SubgroupBound::with_k(full.clone(), Threshold::integer(5), 2).is_err());
        assert_eq!(SubgroupBound::with_k(full, Threshold::integer(4), 3).unwrap().k, 3);
    }
}
