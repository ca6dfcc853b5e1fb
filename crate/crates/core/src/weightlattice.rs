//! Weights of `A_N` and `A_N^(1)` in the fundamental-weight basis.
//!
//! A finite weight is stored as its `N+1` coefficients on the fundamental
//! weights `μ_1 … μ_{N+1}`. Because `Σ μ_I = 0`, two coordinate vectors that
//! differ by a multiple of `(1,…,1)` are the same weight; [`FiniteWeight`]
//! always keeps the min-normalized representative (smallest coordinate 0).
//! In this basis the finite Weyl group acts by permuting coordinates.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a weight needs at least two coordinates")]
    TooFewCoordinates,
    #[error("affine labels must be non-negative and not all zero")]
    InvalidLabels,
    #[error("cannot parse weight `{0}`")]
    Parse(String),
}

/// The finite algebra `A_N`; `N` is the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraContext {
    rank: usize,
}

impl AlgebraContext {
    pub fn new(rank: usize) -> Result<Self, LatticeError> {
        if rank == 0 {
            return Err(LatticeError::ZeroRank);
        }
        Ok(Self { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of fundamental weights `μ_I`, i.e. `N+1`.
    pub fn dim(&self) -> usize {
        self.rank + 1
    }

    pub fn zero(&self) -> FiniteWeight {
        FiniteWeight(vec![0; self.dim()])
    }

    /// Fundamental dominant weight `λ̄_i = μ_1 + … + μ_i`; `i = 0` gives zero.
    pub fn fundamental(&self, i: usize) -> FiniteWeight {
        assert!(i <= self.rank, "fundamental weight index out of range");
        let mut c = vec![0; self.dim()];
        c[..i].iter_mut().for_each(|x| *x = 1);
        FiniteWeight::from_coords(c).expect("dim >= 2")
    }

    /// Simple root `α_i = μ_i − μ_{i+1}`, `1 ≤ i ≤ N`.
    pub fn simple_root(&self, i: usize) -> FiniteWeight {
        assert!(i >= 1 && i <= self.rank, "simple root index out of range");
        let mut c = vec![0; self.dim()];
        c[i - 1] = 1;
        c[i] = -1;
        FiniteWeight::from_coords(c).expect("dim >= 2")
    }

    /// `ρ̄ = (N, N−1, …, 1, 0)`.
    pub fn weyl_vector(&self) -> FiniteWeight {
        FiniteWeight((0..self.dim() as i64).rev().collect())
    }

    /// `ρ̃ = Λ_0 + Λ_1 + … + Λ_N`, level `N+1`.
    pub fn affine_weyl_vector(&self) -> AffineDominant {
        AffineDominant { labels: vec![1; self.dim()] }
    }

    pub fn check(&self, w: &FiniteWeight) -> Result<(), LatticeError> {
        if w.dim() != self.dim() {
            return Err(LatticeError::DimensionMismatch { expected: self.dim(), found: w.dim() });
        }
        Ok(())
    }
}

/// A weight of `A_N`, held in canonical (min-normalized) `μ`-coordinates.
///
/// The derived `Ord` is lexicographic on the canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct FiniteWeight(Vec<i64>);

impl TryFrom<Vec<i64>> for FiniteWeight {
    type Error = LatticeError;

    fn try_from(c: Vec<i64>) -> Result<Self, Self::Error> {
        FiniteWeight::from_coords(c)
    }
}

impl From<FiniteWeight> for Vec<i64> {
    fn from(w: FiniteWeight) -> Self {
        w.0
    }
}

impl FiniteWeight {
    /// Builds a weight from arbitrary `μ`-coordinates, normalizing the shift.
    pub fn from_coords(mut coords: Vec<i64>) -> Result<Self, LatticeError> {
        if coords.len() < 2 {
            return Err(LatticeError::TooFewCoordinates);
        }
        let m = *coords.iter().min().expect("non-empty");
        coords.iter_mut().for_each(|c| *c -= m);
        Ok(Self(coords))
    }

    /// Builds a weight from its `N` Dynkin labels.
    pub fn from_dynkin(labels: &[i64]) -> Result<Self, LatticeError> {
        let mut c = vec![0; labels.len() + 1];
        for i in (0..labels.len()).rev() {
            c[i] = c[i + 1] + labels[i];
        }
        Self::from_coords(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    /// Dynkin labels `a_i = c_i − c_{i+1}`.
    pub fn to_dynkin(&self) -> Vec<i64> {
        self.0.windows(2).map(|w| w[0] - w[1]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// Root-lattice congruence class `Σ c_I mod (N+1)`.
    pub fn class(&self) -> usize {
        let n = self.dim() as i64;
        self.0.iter().sum::<i64>().rem_euclid(n) as usize
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Dominant element of the Weyl orbit and the sign of the sorting
    /// permutation; the sign is 0 when two coordinates coincide.
    pub fn dominant_representative(&self) -> (FiniteWeight, i8) {
        dominant_of_coords(&self.0)
    }

    pub fn checked_add(&self, other: &FiniteWeight) -> Result<FiniteWeight, LatticeError> {
        if self.dim() != other.dim() {
            return Err(LatticeError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        FiniteWeight::from_coords(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: i64) -> FiniteWeight {
        FiniteWeight::from_coords(self.0.iter().map(|c| c * k).collect()).expect("dim >= 2")
    }

    /// `(w, w)`.
    pub fn norm(&self) -> Rational64 {
        inner(self, self).expect("same dimension")
    }

    /// Image under the diagram automorphism `μ_I ↦ −μ_{N+2−I}`.
    pub fn conjugate(&self) -> FiniteWeight {
        FiniteWeight::from_coords(self.0.iter().rev().map(|c| -c).collect()).expect("dim >= 2")
    }

    /// Coefficients `p_1 … p_N` relative to `μ_{N+1}`, as in `(p_1,…,p_N)_d`.
    pub fn display_coords(&self) -> Vec<i64> {
        let last = *self.0.last().expect("non-empty");
        self.0[..self.0.len() - 1].iter().map(|c| c - last).collect()
    }

    /// Formats as `(p_1,…,p_N)_depth`.
    pub fn display_with_depth(&self, depth: u32) -> String {
        format!("{self}_{depth}")
    }

    /// Parses `(p_1,…,p_N)_d` into the weight (rank `N`) and its depth.
    pub fn parse_with_depth(s: &str) -> Result<(FiniteWeight, u32), LatticeError> {
        let err = || LatticeError::Parse(s.to_string());
        let (w, d) = s.trim().rsplit_once('_').ok_or_else(err)?;
        let depth = d.trim().parse::<u32>().map_err(|_| err())?;
        Ok((w.parse()?, depth))
    }
}

/// Parses the display form `(p_1,…,p_N)`: the implied last coordinate is 0.
impl FromStr for FiniteWeight {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| LatticeError::Parse(s.to_string()))?;
        let mut c = parse_int_list(inner).map_err(|_| LatticeError::Parse(s.to_string()))?;
        c.push(0);
        FiniteWeight::from_coords(c)
    }
}

impl fmt::Display for FiniteWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.display_coords().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses a comma-separated list of integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, std::num::ParseIntError> {
    s.split(',').map(|p| p.trim().parse::<i64>()).collect()
}

pub(crate) fn dominant_of_coords(coords: &[i64]) -> (FiniteWeight, i8) {
    let mut sorted = coords.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let sign = if sorted.windows(2).any(|w| w[0] == w[1]) { 0 } else { sort_sign(coords) };
    (FiniteWeight::from_coords(sorted).expect("dim >= 2"), sign)
}

/// Sign of the permutation sorting distinct values into decreasing order.
pub(crate) fn sort_sign(values: &[i64]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] < values[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(a, b) = Σ a_I b_I − (Σ a_I)(Σ b_I)/(N+1)`.
pub fn inner(a: &FiniteWeight, b: &FiniteWeight) -> Result<Rational64, LatticeError> {
    if a.dim() != b.dim() {
        return Err(LatticeError::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let dot: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    Ok(Rational64::from_integer(dot) - Rational64::new(a.sum() * b.sum(), a.dim() as i64))
}

/// An affine weight `kΛ_0 − d·δ + μ̄`, with `d` the (non-negative) depth
/// below the reference highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub level: u32,
    pub depth: u32,
    pub finite: FiniteWeight,
}

/// A dominant affine weight `Σ a_ν Λ_ν` given by its labels `(a_0, …, a_N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AffineDominant {
    labels: Vec<u32>,
}

impl TryFrom<Vec<u32>> for AffineDominant {
    type Error = LatticeError;

    fn try_from(labels: Vec<u32>) -> Result<Self, Self::Error> {
        AffineDominant::new(labels)
    }
}

impl From<AffineDominant> for Vec<u32> {
    fn from(a: AffineDominant) -> Self {
        a.labels
    }
}

impl AffineDominant {
    pub fn new(labels: Vec<u32>) -> Result<Self, LatticeError> {
        if labels.len() < 2 || labels.iter().all(|&a| a == 0) {
            return Err(LatticeError::InvalidLabels);
        }
        Ok(Self { labels })
    }

    /// `Λ_ν`.
    pub fn fundamental(ctx: &AlgebraContext, nu: usize) -> Self {
        let mut labels = vec![0; ctx.dim()];
        labels[nu] = 1;
        Self { labels }
    }

    /// Level-`k` weight `(k − Σ a_i)Λ_0 + λ̄`, if `λ̄` is dominant with label
    /// sum at most `k`.
    pub fn from_finite(finite: &FiniteWeight, level: u32) -> Option<Self> {
        let dynkin = finite.to_dynkin();
        if dynkin.iter().any(|&a| a < 0) {
            return None;
        }
        let s: i64 = dynkin.iter().sum();
        if s > level as i64 {
            return None;
        }
        let mut labels = vec![(level as i64 - s) as u32];
        labels.extend(dynkin.iter().map(|&a| a as u32));
        Self::new(labels).ok()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn context(&self) -> AlgebraContext {
        AlgebraContext { rank: self.rank() }
    }

    pub fn level(&self) -> u32 {
        self.labels.iter().sum()
    }

    pub fn finite_part(&self) -> FiniteWeight {
        let dynkin: Vec<i64> = self.labels[1..].iter().map(|&a| a as i64).collect();
        FiniteWeight::from_dynkin(&dynkin).expect("rank >= 1")
    }

    pub fn is_fundamental(&self) -> bool {
        self.level() == 1
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.labels.iter().all(|&a| a >= 1)
    }

    /// The fundamental weights this one is a sum of, in increasing `ν`.
    pub fn fundamental_parts(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .flat_map(|(nu, &a)| std::iter::repeat_n(nu, a as usize))
            .collect()
    }

    pub fn checked_add(&self, other: &AffineDominant) -> Result<AffineDominant, LatticeError> {
        if self.labels.len() != other.labels.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.labels.len(),
                found: other.labels.len(),
            });
        }
        Ok(Self { labels: self.labels.iter().zip(&other.labels).map(|(a, b)| a + b).collect() })
    }

    /// Shorthand such as `Λ0+Λ1` or `2Λ0+Λ3`.
    pub fn name(&self) -> String {
        let parts: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(nu, &a)| if a == 1 { format!("Λ{nu}") } else { format!("{a}Λ{nu}") })
            .collect();
        parts.join("+")
    }
}

impl fmt::Display for AffineDominant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Parses comma-separated affine labels `a_0,…,a_N`.
impl FromStr for AffineDominant {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let labels = t
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| LatticeError::Parse(s.to_string()))?;
        Self::new(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> FiniteWeight {
        FiniteWeight::from_coords(c.to_vec()).unwrap()
    }

    #[test]
    fn inner_products() {
        let a = w(&[1, 0, 0, 0, 0, 0]);
        assert_eq!(inner(&a, &a).unwrap(), Rational64::new(5, 6));
        let z = AlgebraContext::new(5).unwrap().zero();
        assert_eq!(inner(&z, &a).unwrap(), Rational64::from_integer(0));
        let b = w(&[2, 2, 1, 1, 1, 0]);
        assert_eq!(b.norm(), Rational64::new(17, 6));
        assert!(inner(&a, &w(&[1, 0])).is_err());
    }

    #[test]
    fn dynkin_labels() {
        assert_eq!(w(&[2, 1, 1, 1, 1, 0]).to_dynkin(), vec![1, 0, 0, 0, 1]);
        assert_eq!(w(&[5, 4, 3, 2, 1, 0]).to_dynkin(), vec![1, 1, 1, 1, 1]);
        assert_eq!(w(&[0; 6]).to_dynkin(), vec![0; 5]);
        assert_eq!(FiniteWeight::from_dynkin(&[1, 0, 0, 0, 1]).unwrap(), w(&[2, 1, 1, 1, 1, 0]));
    }

    #[test]
    fn dominant_representatives() {
        assert_eq!(w(&[0, 1, 0, 0, 0, -1]).dominant_representative(), (w(&[2, 1, 1, 1, 1, 0]), 0));
        let rho = w(&[5, 4, 3, 2, 1, 0]);
        assert_eq!(rho.dominant_representative(), (rho.clone(), 1));
        assert_eq!(w(&[0, 1]).dominant_representative(), (w(&[1, 0]), -1));
    }

    #[test]
    fn congruence_classes() {
        assert_eq!(w(&[1, 0, 0, 0, 0, 0]).class(), 1);
        assert_eq!(w(&[2, 1, 1, 1, 1, 0]).class(), 0);
        assert_eq!(w(&[0; 6]).class(), 0);
    }

    #[test]
    fn weyl_vectors() {
        let ctx = AlgebraContext::new(5).unwrap();
        assert_eq!(ctx.weyl_vector(), w(&[5, 4, 3, 2, 1, 0]));
        assert_eq!(AlgebraContext::new(1).unwrap().weyl_vector(), w(&[1, 0]));
        let rt = ctx.affine_weyl_vector();
        assert_eq!(rt.labels(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(rt.level(), 6);
        assert!(AlgebraContext::new(0).is_err());
    }

    #[test]
    fn display_and_parse() {
        let x = w(&[3, 1, 1, 1, 1, 0]);
        assert_eq!(x.display_with_depth(1), "(3,1,1,1,1)_1");
        assert_eq!(FiniteWeight::parse_with_depth("(3,1,1,1,1)_1").unwrap(), (x, 1));
        assert!(FiniteWeight::parse_with_depth("(,4,2,1,1,0)_5").is_err());
        let l: AffineDominant = "1,1,0,0,0,0".parse().unwrap();
        assert_eq!(l.name(), "Λ0+Λ1");
        assert_eq!(l.finite_part(), w(&[1, 0, 0, 0, 0, 0]));
        assert!("0,0".parse::<AffineDominant>().is_err());
    }

    #[test]
    fn affine_from_finite() {
        let lam = w(&[2, 2, 1, 1, 1, 0]);
        let a = AffineDominant::from_finite(&lam, 2).unwrap();
        assert_eq!(a.labels(), &[0, 0, 1, 0, 0, 1]);
        assert!(AffineDominant::from_finite(&lam, 1).is_none());
    }
}
