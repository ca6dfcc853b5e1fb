//! Permutation-weight sets: the dominant finite parts of an affine Weyl orbit,
//! sliced by depth.
//!
//! For a fundamental weight `Λ_ν` the slice at depth `d` is the set of
//! dominant `Λ̄_ν + Σ r_i α_i` with `r` solving the depth equation at level 1.
//! Higher levels are built by adding members of the fundamental slices; a sum
//! `w_a + w_b` taken from depths `d_a`, `d_b` belongs to the composite orbit
//! exactly when its own depth is `d_a + d_b`.

mod cache;
mod depth;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weightlattice::{AffineDominant, AlgebraContext, FiniteWeight, LatticeError};

pub use cache::{CacheError, PweightsFile, WeightCache};
pub use depth::{coordinate_bound, depth_form, solve_depth_equation, DepthSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PweightsError {
    #[error("part built to horizon {found} cannot serve horizon {needed}")]
    HorizonTooSmall { needed: u32, found: u32 },
    #[error("nothing to compose")]
    EmptyComposition,
    #[error("parts have different ranks")]
    RankMismatch,
    #[error("invalid permutation-weight data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `℘_d(Λ)` for `d = 0 … horizon`, each slice sorted lexicographically
/// descending on canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PweightsFile", into = "PweightsFile")]
pub struct PermutationWeightSet {
    source: AffineDominant,
    horizon: u32,
    depths: Vec<Vec<FiniteWeight>>,
}

impl PermutationWeightSet {
    fn from_slices(source: AffineDominant, slices: Vec<BTreeSet<FiniteWeight>>) -> Self {
        let horizon = slices.len() as u32 - 1;
        let depths = slices.into_iter().map(|s| s.into_iter().rev().collect()).collect();
        Self { source, horizon, depths }
    }

    /// Builds a set from raw slices and checks it against the norm law.
    pub fn new(source: AffineDominant, depths: Vec<Vec<FiniteWeight>>) -> Result<Self, PweightsError> {
        if depths.is_empty() {
            return Err(PweightsError::Invalid("no depth slices".into()));
        }
        let mut slices = vec![BTreeSet::new(); depths.len()];
        for (slot, ws) in slices.iter_mut().zip(depths) {
            slot.extend(ws);
        }
        let out = Self::from_slices(source, slices);
        out.validate()?;
        Ok(out)
    }

    pub fn source(&self) -> &AffineDominant {
        &self.source
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn at(&self, depth: u32) -> &[FiniteWeight] {
        self.depths.get(depth as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn slices(&self) -> &[Vec<FiniteWeight>] {
        &self.depths
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &FiniteWeight)> {
        self.depths.iter().enumerate().flat_map(|(d, ws)| ws.iter().map(move |w| (d as u32, w)))
    }

    pub fn len(&self) -> usize {
        self.depths.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn depth_of(&self, w: &FiniteWeight) -> Option<u32> {
        self.iter().find(|(_, m)| *m == w).map(|(d, _)| d)
    }

    /// The same set cut at a smaller horizon.
    pub fn truncated(&self, horizon: u32) -> Self {
        let h = horizon.min(self.horizon);
        Self { source: self.source.clone(), horizon: h, depths: self.depths[..=h as usize].to_vec() }
    }

    /// Image under the diagram automorphism `a_i ↔ a_{N+1−i}`.
    pub fn conjugate(&self) -> Self {
        let mut labels = self.source.labels().to_vec();
        labels[1..].reverse();
        let source = AffineDominant::new(labels).expect("conjugate labels stay valid");
        let slices = self.depths.iter().map(|ws| ws.iter().map(FiniteWeight::conjugate).collect()).collect();
        Self::from_slices(source, slices)
    }

    /// Checks every member: rank, dominance, class, and the norm law
    /// `(w,w) − (Λ̄,Λ̄) = 2kd`.
    pub fn validate(&self) -> Result<(), PweightsError> {
        let lam = self.source.finite_part();
        let k = self.source.level() as i64;
        let base = lam.norm();
        for (d, w) in self.iter() {
            if w.dim() != lam.dim() {
                return Err(PweightsError::Invalid(format!("{w} has the wrong rank")));
            }
            if !w.is_dominant() || w.class() != lam.class() {
                return Err(PweightsError::Invalid(format!("{w} is not a dominant weight of the source class")));
            }
            if w.norm() - base != Rational64::from_integer(2 * k * d as i64) {
                return Err(PweightsError::Invalid(format!("{w} violates the norm law at depth {d}")));
            }
        }
        for ws in &self.depths {
            if ws.windows(2).any(|p| p[0] <= p[1]) {
                return Err(PweightsError::Invalid("slice not strictly descending".into()));
            }
        }
        Ok(())
    }

    /// Appendix notation, one depth per line: `(p1,…,pN)_d (…)_d`.
    pub fn display_lines(&self) -> Vec<String> {
        self.depths
            .iter()
            .enumerate()
            .filter(|(_, ws)| !ws.is_empty())
            .map(|(d, ws)| ws.iter().map(|w| w.display_with_depth(d as u32)).collect::<Vec<_>>().join(" "))
            .collect()
    }
}

impl fmt::Display for PermutationWeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.display_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `℘(Λ_ν, K)` from the dominant solutions of the depth equation at level 1.
pub fn pweights_fundamental(nu: usize, horizon: u32, ctx: &AlgebraContext) -> PermutationWeightSet {
    let source = AffineDominant::fundamental(ctx, nu);
    let p = source.finite_part().to_dynkin();
    let slices = (0..=horizon)
        .map(|d| solve_depth_equation(&p, 1, d).into_iter().map(|s| s.weight).filter(FiniteWeight::is_dominant).collect())
        .collect();
    PermutationWeightSet::from_slices(source, slices)
}

/// Composes permutation-weight sets left to right.
///
/// A candidate `w_a + w_b` from depths `(d_a, d_b)` is kept iff its depth
/// relative to the summed source is the integer `d_a + d_b` and at most the
/// horizon. For a strictly dominant target, candidates with repeated
/// coordinates are dropped.
pub fn pweights_compose(parts: &[PermutationWeightSet], horizon: u32) -> Result<PermutationWeightSet, PweightsError> {
    let (first, rest) = parts.split_first().ok_or(PweightsError::EmptyComposition)?;
    for p in parts {
        if p.horizon < horizon {
            return Err(PweightsError::HorizonTooSmall { needed: horizon, found: p.horizon });
        }
        if p.source.rank() != first.source.rank() {
            return Err(PweightsError::RankMismatch);
        }
    }
    let mut acc = first.truncated(horizon);
    for part in rest {
        acc = compose_pair(&acc, part, horizon)?;
    }
    Ok(acc)
}

fn compose_pair(a: &PermutationWeightSet, b: &PermutationWeightSet, horizon: u32) -> Result<PermutationWeightSet, PweightsError> {
    let source = a.source.checked_add(&b.source)?;
    let strict = source.is_strictly_dominant();
    let k = source.level() as i64;
    let base = source.finite_part().norm();
    let mut slices = vec![BTreeSet::new(); horizon as usize + 1];
    for da in 0..=horizon {
        for wa in a.at(da) {
            for db in 0..=horizon - da {
                for wb in b.at(db) {
                    let w = wa.checked_add(wb)?;
                    if w.norm() - base != Rational64::from_integer(2 * k * (da + db) as i64) {
                        continue;
                    }
                    if strict && !w.is_strictly_dominant() {
                        continue;
                    }
                    slices[(da + db) as usize].insert(w);
                }
            }
        }
    }
    Ok(PermutationWeightSet::from_slices(source, slices))
}

/// Result of a computation that may also have hit cache failures.
#[derive(Debug)]
pub struct Computed<T> {
    pub value: T,
    pub cache_errors: Vec<CacheError>,
}

/// `℘(Λ, K)`, read from or written to `cache` when one is given.
pub fn pweights(source: &AffineDominant, horizon: u32, cache: Option<&WeightCache>) -> Computed<PermutationWeightSet> {
    let mut cache_errors = Vec::new();
    if let Some(c) = cache {
        match c.load(source, horizon) {
            Ok(Some(hit)) => return Computed { value: hit, cache_errors },
            Ok(None) => {}
            Err(e) => cache_errors.push(e),
        }
    }
    let value = compute(source, horizon);
    if let Some(c) = cache {
        if let Err(e) = c.store(&value) {
            cache_errors.push(e);
        }
    }
    Computed { value, cache_errors }
}

fn compute(source: &AffineDominant, horizon: u32) -> PermutationWeightSet {
    let ctx = source.context();
    let nus = source.fundamental_parts();
    if nus.len() == 1 {
        return pweights_fundamental(nus[0], horizon, &ctx);
    }
    let mut fundamentals: BTreeMap<usize, PermutationWeightSet> = BTreeMap::new();
    for &nu in &nus {
        fundamentals.entry(nu).or_insert_with(|| pweights_fundamental(nu, horizon, &ctx));
    }
    let parts: Vec<PermutationWeightSet> = nus.iter().map(|nu| fundamentals[nu].clone()).collect();
    pweights_compose(&parts, horizon).expect("parts share rank and horizon")
}

/// A dominant weight class of the module with highest weight `Λ`: a dominant
/// `λ̄` with label sum at most `k` in the class of `Λ̄`, and its offset `M₀`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalClass {
    pub finite: FiniteWeight,
    pub offset: u32,
    /// `λ̄` lifted to level `k`.
    pub affine: AffineDominant,
}

/// Maximal classes sorted by offset, ties by descending finite part.
///
/// Writing `λ̄ − Λ̄ = Σ r_i α_i`, the offset is `max(0, max r_i)`: the least
/// `M₀` for which `Λ − λ + M₀δ` is a non-negative combination of affine
/// simple roots.
pub fn maximal_classes(source: &AffineDominant) -> Vec<MaximalClass> {
    let n = source.rank();
    let k = source.level();
    let lam = source.finite_part();
    let mut out = Vec::new();
    let mut labels = vec![0i64; n];
    enumerate_labels(&mut labels, 0, k as i64, &mut |labels| {
        let w = FiniteWeight::from_dynkin(labels).expect("rank >= 1");
        if w.class() != lam.class() {
            return;
        }
        let offset = root_coefficients(&w, &lam).into_iter().max().unwrap_or(0).max(0) as u32;
        let affine = AffineDominant::from_finite(&w, k).expect("label sum within level");
        out.push(MaximalClass { finite: w, offset, affine });
    });
    out.sort_by(|a, b| a.offset.cmp(&b.offset).then(b.finite.cmp(&a.finite)));
    out
}

fn enumerate_labels(labels: &mut Vec<i64>, i: usize, budget: i64, f: &mut impl FnMut(&[i64])) {
    if i == labels.len() {
        f(labels);
        return;
    }
    for a in 0..=budget {
        labels[i] = a;
        enumerate_labels(labels, i + 1, budget - a, f);
    }
    labels[i] = 0;
}

/// `r` with `a − b = Σ r_i α_i`; `a`, `b` must share a class.
pub fn root_coefficients(a: &FiniteWeight, b: &FiniteWeight) -> Vec<i64> {
    let n1 = a.dim() as i64;
    let diff: Vec<i64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x - y).collect();
    let s: i64 = diff.iter().sum();
    debug_assert_eq!(s % n1, 0, "weights in different classes");
    let shift = s / n1;
    diff[..diff.len() - 1]
        .iter()
        .scan(0i64, |acc, &c| {
            *acc += c - shift;
            Some(*acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx5() -> AlgebraContext {
        AlgebraContext::new(5).unwrap()
    }

    fn w(s: &str) -> FiniteWeight {
        s.parse().unwrap()
    }

    fn aff(labels: &[u32]) -> AffineDominant {
        AffineDominant::new(labels.to_vec()).unwrap()
    }

    #[test]
    fn fundamental_examples() {
        let s0 = pweights_fundamental(0, 1, &ctx5());
        assert_eq!(s0.at(0), &[w("(0,0,0,0,0)")]);
        assert_eq!(s0.at(1), &[w("(2,1,1,1,1)")]);
        let s1 = pweights_fundamental(1, 2, &ctx5());
        assert_eq!(s1.at(2), &[w("(3,1,1,1,1)"), w("(2,2,2,1,0)")]);
        let s3 = pweights_fundamental(3, 0, &ctx5());
        assert_eq!(s3.at(0), &[w("(1,1,1,0,0)")]);
    }

    #[test]
    fn composition_examples() {
        let ctx = ctx5();
        let parts = [pweights_fundamental(0, 3, &ctx), pweights_fundamental(1, 3, &ctx)];
        let s = pweights_compose(&parts, 3).unwrap();
        assert_eq!(s.source(), &aff(&[1, 1, 0, 0, 0, 0]));
        assert_eq!(s.at(1), &[w("(3,1,1,1,1)")]);
        assert!(s.depth_of(&w("(2,2,1,1,1)")).is_none());
        s.validate().unwrap();

        let rho = pweights(&ctx.affine_weyl_vector(), 1, None).value;
        assert_eq!(rho.at(0), &[w("(5,4,3,2,1)")]);
        assert_eq!(rho.at(1), &[w("(7,5,4,3,2)")]);
    }

    #[test]
    fn composition_needs_horizon() {
        let ctx = ctx5();
        let parts = [pweights_fundamental(0, 1, &ctx), pweights_fundamental(1, 3, &ctx)];
        assert_eq!(pweights_compose(&parts, 2), Err(PweightsError::HorizonTooSmall { needed: 2, found: 1 }));
        assert_eq!(pweights_compose(&[], 2), Err(PweightsError::EmptyComposition));
    }

    #[test]
    fn composite_depth_zero() {
        let s = pweights(&aff(&[2, 2, 1, 1, 1, 1]), 0, None).value;
        assert_eq!(s.at(0), &[w("(6,4,3,2,1)")]);
        let s = pweights(&aff(&[0, 0, 1, 0, 0, 1]), 0, None).value;
        assert_eq!(s.at(0), &[w("(2,2,1,1,1)")]);
        let s = pweights(&aff(&[0, 3, 1]), 0, None).value;
        assert_eq!(s.len(), 1);
        assert_eq!(s.at(0)[0], s.source().finite_part());
    }

    #[test]
    fn truncation_and_conjugation() {
        let ctx = ctx5();
        let s = pweights_fundamental(1, 4, &ctx);
        assert_eq!(s.truncated(2), pweights_fundamental(1, 2, &ctx));
        assert_eq!(s.conjugate(), pweights_fundamental(5, 4, &ctx));
        assert_eq!(s.conjugate().conjugate(), s);
    }

    #[test]
    fn maximal_class_examples() {
        let classes = maximal_classes(&aff(&[1, 1, 0, 0, 0, 0]));
        let got: Vec<(Vec<i64>, u32)> = classes.iter().map(|c| (c.finite.to_dynkin(), c.offset)).collect();
        assert_eq!(
            got,
            vec![(vec![1, 0, 0, 0, 0], 0), (vec![0, 1, 0, 0, 1], 1), (vec![0, 0, 1, 1, 0], 2)]
        );
        assert_eq!(classes[1].affine, aff(&[0, 0, 1, 0, 0, 1]));

        for labels in [vec![1, 0], vec![1, 0, 0, 0, 0, 0]] {
            let c = maximal_classes(&aff(&labels));
            assert_eq!(c.len(), 1);
            assert!(c[0].finite.is_zero());
            assert_eq!(c[0].offset, 0);
        }
    }

    #[test]
    fn root_coefficients_of_a_root() {
        let theta = w("(2,1,1,1,1)");
        assert_eq!(root_coefficients(&theta, &AlgebraContext::new(5).unwrap().zero()), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn validate_rejects_bad_members() {
        let source = aff(&[1, 0, 0]);
        assert!(PermutationWeightSet::new(source.clone(), vec![vec![w("(0,0)")], vec![w("(1,1)")]]).is_err());
        assert!(PermutationWeightSet::new(source, vec![vec![w("(0,0)")], vec![w("(2,1)")]]).is_ok());
    }

    #[test]
    fn display_uses_appendix_notation() {
        let s = pweights_fundamental(0, 2, &ctx5());
        assert_eq!(s.display_lines(), vec!["(0,0,0,0,0)_0", "(2,1,1,1,1)_1", "(2,2,1,1,0)_2"]);
    }
}
