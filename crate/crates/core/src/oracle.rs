//! Brute-force affine Weyl orbits.
//!
//! The affine Weyl group is the finite Weyl group (coordinate permutations)
//! acting after translations `t_β`, `β` in the root lattice. At level `k` the
//! finite part of `t_β Λ` is `Λ̄ + kβ`, at depth `(Λ̄,β) + k|β|²/2`. Every
//! translation point within the horizon is enumerated and sorted; the parity
//! of the sort is the determinant of the Weyl element reaching the dominant
//! representative. Shares no code with the main path beyond weight types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::weightlattice::{AffineDominant, FiniteWeight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("translation box of about {estimate} points exceeds the limit of {limit}")]
    TooLarge { estimate: u128, limit: u128 },
    #[error("string_by_counting overflowed at order {0}")]
    Overflow(usize),
}

/// Upper bound on the number of lattice points scanned.
pub const DEFAULT_POINT_LIMIT: u128 = 200_000_000;

/// Root-lattice vectors `β` (all `N+1` coordinates, `Σβ = 0`) with their
/// depths, all at most the horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationBall {
    pub source: AffineDominant,
    pub horizon: u32,
    pub betas: Vec<(Vec<i64>, u32)>,
}

impl TranslationBall {
    /// Scans the box `|c_I + kβ_I| ≤ R` with `R² = Σ c_I² + 2kK`, pruning on
    /// partial sums of squares, and keeps exact depths `0 … K`.
    pub fn enumerate(source: &AffineDominant, horizon: u32, limit: u128) -> Result<Self, OracleError> {
        let lam = source.finite_part();
        let c = lam.coords().to_vec();
        let k = source.level() as i64;
        let base: i64 = c.iter().map(|x| x * x).sum();
        let bound = base + 2 * k * horizon as i64;
        let radius = (bound as f64).sqrt().floor() as i64 + 1;
        let ranges: Vec<(i64, i64)> =
            c.iter().map(|&ci| ((-radius - ci).div_euclid(k), (radius - ci).div_euclid(k) + 1)).collect();
        let estimate = ranges[..ranges.len() - 1].iter().fold(1u128, |acc, (lo, hi)| acc * (hi - lo + 1) as u128);
        if estimate > limit {
            return Err(OracleError::TooLarge { estimate, limit });
        }

        let (lo0, hi0) = ranges[0];
        let mut betas: Vec<(Vec<i64>, u32)> = (lo0..=hi0)
            .into_par_iter()
            .flat_map_iter(|b0| {
                let mut out = Vec::new();
                let z0 = c[0] + k * b0;
                if z0 * z0 <= bound {
                    let mut beta = vec![b0];
                    scan(&c, k, bound, &ranges, z0 * z0, b0, &mut beta, &mut out);
                }
                out
            })
            .filter_map(|beta| {
                let z2: i64 = c.iter().zip(&beta).map(|(ci, b)| (ci + k * b).pow(2)).sum();
                let diff = z2 - base;
                (diff >= 0 && diff % (2 * k) == 0 && diff / (2 * k) <= horizon as i64)
                    .then(|| (beta, (diff / (2 * k)) as u32))
            })
            .collect();
        betas.sort();
        Ok(Self { source: source.clone(), horizon, betas })
    }

    /// Finite parts `Λ̄ + kβ` of the translation points.
    pub fn points(&self) -> impl Iterator<Item = (Vec<i64>, u32)> + '_ {
        let c = self.source.finite_part().coords().to_vec();
        let k = self.source.level() as i64;
        self.betas.iter().map(move |(b, d)| (c.iter().zip(b).map(|(ci, bi)| ci + k * bi).collect(), *d))
    }
}

#[allow(clippy::too_many_arguments)]
fn scan(
    c: &[i64],
    k: i64,
    bound: i64,
    ranges: &[(i64, i64)],
    partial: i64,
    beta_sum: i64,
    beta: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let i = beta.len();
    let n1 = c.len();
    if i == n1 - 1 {
        let last = -beta_sum;
        let z = c[i] + k * last;
        if partial + z * z <= bound {
            let mut full = beta.clone();
            full.push(last);
            out.push(full);
        }
        return;
    }
    let (lo, hi) = ranges[i];
    for b in lo..=hi {
        let z = c[i] + k * b;
        let p = partial + z * z;
        if p > bound {
            continue;
        }
        beta.push(b);
        scan(c, k, bound, ranges, p, beta_sum + b, beta, out);
        beta.pop();
    }
}

/// Orbit slices by depth: dominant representative → sign.
///
/// A sign of 0 marks representatives reached with coordinate collisions or
/// with both signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSlices {
    pub source: AffineDominant,
    pub horizon: u32,
    pub depths: Vec<BTreeMap<FiniteWeight, i8>>,
}

impl OrbitSlices {
    pub fn weights_at(&self, d: u32) -> BTreeSet<FiniteWeight> {
        self.depths.get(d as usize).map(|m| m.keys().cloned().collect()).unwrap_or_default()
    }

    pub fn sign_of(&self, w: &FiniteWeight, d: u32) -> Option<i8> {
        self.depths.get(d as usize)?.get(w).copied()
    }

    /// Whether the finite part `z` at depth `d` lies in the orbit.
    pub fn contains(&self, z: &[i64], d: u32) -> bool {
        let (rep, _) = sort_with_parity(z);
        self.sign_of(&rep, d).is_some() && depth_of_point(&self.source, z) == Some(d as i64)
    }

    pub fn triples(&self, signed: bool) -> BTreeSet<Triple> {
        self.depths
            .iter()
            .enumerate()
            .flat_map(|(d, m)| {
                m.iter().map(move |(w, &s)| Triple { depth: d as u32, weight: w.clone(), sign: signed.then_some(s) })
            })
            .collect()
    }
}

/// `(Σ z_I² − Σ Λ̄_I²)/(2k)` after aligning `Σ z` with `Σ Λ̄`; `None` if the
/// point is in another class.
pub fn depth_of_point(source: &AffineDominant, z: &[i64]) -> Option<i64> {
    let lam = source.finite_part();
    let c = lam.coords();
    if z.len() != c.len() {
        return None;
    }
    let n1 = c.len() as i64;
    let gap = c.iter().sum::<i64>() - z.iter().sum::<i64>();
    if gap % n1 != 0 {
        return None;
    }
    let shift = gap / n1;
    let k = source.level() as i64;
    let diff = z.iter().map(|x| (x + shift).pow(2)).sum::<i64>() - c.iter().map(|x| x * x).sum::<i64>();
    (diff % (2 * k) == 0).then_some(diff / (2 * k))
}

/// Sorted (decreasing, min-normalized) weight and the sort parity, 0 on
/// repeated coordinates.
pub fn sort_with_parity(z: &[i64]) -> (FiniteWeight, i8) {
    let mut idx: Vec<usize> = (0..z.len()).collect();
    idx.sort_by(|&a, &b| z[b].cmp(&z[a]).then(a.cmp(&b)));
    let sorted: Vec<i64> = idx.iter().map(|&i| z[i]).collect();
    let rep = FiniteWeight::from_coords(sorted.clone()).expect("dim >= 2");
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return (rep, 0);
    }
    // parity from the cycle decomposition of idx
    let mut seen = vec![false; idx.len()];
    let mut transpositions = 0;
    for start in 0..idx.len() {
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = idx[j];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    (rep, if transpositions % 2 == 0 { 1 } else { -1 })
}

pub fn orbit_bruteforce(source: &AffineDominant, horizon: u32) -> Result<OrbitSlices, OracleError> {
    orbit_bruteforce_with_limit(source, horizon, DEFAULT_POINT_LIMIT)
}

pub fn orbit_bruteforce_with_limit(source: &AffineDominant, horizon: u32, limit: u128) -> Result<OrbitSlices, OracleError> {
    let ball = TranslationBall::enumerate(source, horizon, limit)?;
    let mut depths: Vec<BTreeMap<FiniteWeight, i8>> = vec![BTreeMap::new(); horizon as usize + 1];
    for (z, d) in ball.points() {
        let (rep, sign) = sort_with_parity(&z);
        depths[d as usize]
            .entry(rep)
            .and_modify(|s| {
                if *s != sign {
                    *s = 0;
                }
            })
            .or_insert(sign);
    }
    Ok(OrbitSlices { source: source.clone(), horizon, depths })
}

/// Partition numbers `p(0) … p(K)` by Euler's pentagonal recurrence: the
/// string function of the basic `A_1^(1)` module.
pub fn string_by_counting(horizon: usize) -> Result<Vec<u128>, OracleError> {
    let mut p: Vec<i128> = vec![1];
    for n in 1..=horizon {
        let mut acc: i128 = 0;
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc = acc.checked_add(sign * p[n - g1]).ok_or(OracleError::Overflow(n))?;
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                acc = acc.checked_add(sign * p[n - g2]).ok_or(OracleError::Overflow(n))?;
            }
        }
        p.push(acc);
    }
    Ok(p.into_iter().map(|x| x as u128).collect())
}

/// One `(depth, weight, sign)` entry of a comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub depth: u32,
    pub weight: FiniteWeight,
    pub sign: Option<i8>,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.weight.display_with_depth(self.depth))?;
        if let Some(s) = self.sign {
            write!(f, " sign {s:+}")?;
        }
        Ok(())
    }
}

/// Entries present on exactly one side.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffReport {
    pub label: String,
    pub only_oracle: Vec<Triple>,
    pub only_main: Vec<Triple>,
}

impl DiffReport {
    pub fn compare(label: impl Into<String>, oracle: &BTreeSet<Triple>, main: &BTreeSet<Triple>) -> Self {
        Self {
            label: label.into(),
            only_oracle: oracle.difference(main).cloned().collect(),
            only_main: main.difference(oracle).cloned().collect(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.only_oracle.is_empty() && self.only_main.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return writeln!(f, "{}: no differences", self.label);
        }
        writeln!(f, "{}:", self.label)?;
        for t in &self.only_oracle {
            writeln!(f, "  oracle only: {t}")?;
        }
        for t in &self.only_main {
            writeln!(f, "  main only:   {t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weightlattice::AlgebraContext;

    fn w(s: &str) -> FiniteWeight {
        s.parse().unwrap()
    }

    #[test]
    fn basic_a5_orbit() {
        let o = orbit_bruteforce(&"1,0,0,0,0,0".parse().unwrap(), 2).unwrap();
        assert_eq!(o.weights_at(0), [w("(0,0,0,0,0)")].into());
        assert_eq!(o.weights_at(1), [w("(2,1,1,1,1)")].into());
        assert_eq!(o.weights_at(2), [w("(2,2,1,1,0)")].into());
    }

    #[test]
    fn a1_rho_signs() {
        let rho = AlgebraContext::new(1).unwrap().affine_weyl_vector();
        let o = orbit_bruteforce(&rho, 6).unwrap();
        let got: Vec<(usize, i64, i8)> = o
            .depths
            .iter()
            .enumerate()
            .flat_map(|(d, m)| m.iter().map(move |(w, &s)| (d, w.to_dynkin()[0], s)))
            .collect();
        assert_eq!(got, vec![(0, 1, 1), (1, 3, -1), (3, 5, 1), (6, 7, -1)]);
    }

    #[test]
    fn horizon_zero_is_the_source() {
        for labels in ["1,0", "0,2,1", "1,1,1,1"] {
            let s: AffineDominant = labels.parse().unwrap();
            let o = orbit_bruteforce(&s, 0).unwrap();
            assert_eq!(o.depths[0].len(), 1);
            assert_eq!(o.sign_of(&s.finite_part(), 0), Some(if s.is_strictly_dominant() { 1 } else { 0 }));
        }
    }

    #[test]
    fn resource_guard() {
        let s: AffineDominant = "1,0,0,0,0,0".parse().unwrap();
        assert!(matches!(orbit_bruteforce_with_limit(&s, 9, 10), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn partition_numbers() {
        assert_eq!(string_by_counting(0).unwrap(), vec![1]);
        assert_eq!(string_by_counting(5).unwrap(), vec![1, 1, 2, 3, 5, 7]);
        assert_eq!(string_by_counting(9).unwrap(), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(string_by_counting(100).unwrap()[100], 190_569_292);
    }

    #[test]
    fn parity_by_cycles() {
        assert_eq!(sort_with_parity(&[0, 1]).1, -1);
        assert_eq!(sort_with_parity(&[1, 2, 0]).1, -1);
        assert_eq!(sort_with_parity(&[1, 0, 2]).1, 1);
        assert_eq!(sort_with_parity(&[0, 1, 0, 0, 0, -1]), (w("(2,1,1,1,1)"), 0));
    }

    #[test]
    fn membership_and_report() {
        let s: AffineDominant = "1,0,0".parse().unwrap();
        let o = orbit_bruteforce(&s, 3).unwrap();
        assert!(o.contains(&[0, 1, 2], 1));
        assert!(!o.contains(&[0, 1, 2], 2));
        let a = o.triples(false);
        let mut b = a.clone();
        let extra = Triple { depth: 2, weight: w("(9,0)"), sign: None };
        b.insert(extra.clone());
        let r = DiffReport::compare("test", &a, &b);
        assert_eq!(r.only_main, vec![extra]);
        assert!(r.to_string().contains("main only:   (9,0)_2"));
    }
}
