//! Signatures `ε(w) ∈ {−1, 0, +1}` of strictly dominant permutation weights.
//!
//! Coordinates are split as `c = s + m·n` with residues `0 ≤ s < m`, and
//! `ε = sgn(s) · ∏ (−1)^{n}` where `sgn(s)` is the parity of the permutation
//! sorting `s` into decreasing order, or 0 when two residues coincide.
//!
//! Three conventions choose which coordinates are split and by which modulus.
//! [`SignatureConvention::SourceAligned`] shifts `w` so that its coordinate
//! sum equals that of `Λ̄`, then splits all `N+1` coordinates modulo the level
//! `k`; this is the one that agrees with the brute-force orbit signs and the
//! one [`signed_pweights`] uses. The other two split only the first `N`
//! canonical coordinates, modulo `N+1` or modulo `k`, and agree with the
//! orbit signs only in special cases.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pweights::{pweights, Computed, WeightCache};
use crate::weightlattice::{sort_sign, AffineDominant, FiniteWeight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("{0} is not strictly dominant")]
    NotStrictlyDominant(FiniteWeight),
    #[error("source {0} is not strictly dominant")]
    SourceNotStrictlyDominant(AffineDominant),
    #[error("{0} is not in the class of the source")]
    ClassMismatch(FiniteWeight),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum SignatureConvention {
    /// First `N` canonical coordinates modulo `N+1`.
    FundamentalModulus,
    /// First `N` canonical coordinates modulo `k`.
    LevelModulus,
    /// All coordinates of the source-aligned shift modulo `k`.
    #[default]
    SourceAligned,
}

impl SignatureConvention {
    pub const ALL: [SignatureConvention; 3] = [Self::FundamentalModulus, Self::LevelModulus, Self::SourceAligned];

    pub fn name(self) -> &'static str {
        match self {
            Self::FundamentalModulus => "fundamental-modulus",
            Self::LevelModulus => "level-modulus",
            Self::SourceAligned => "source-aligned",
        }
    }
}

/// `c_i = s_i + modulus · n_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureDecomposition {
    pub s: Vec<i64>,
    pub n: Vec<i64>,
    pub modulus: i64,
}

impl SignatureDecomposition {
    pub fn of(coords: &[i64], modulus: i64) -> Self {
        let s = coords.iter().map(|c| c.rem_euclid(modulus)).collect();
        let n = coords.iter().map(|c| c.div_euclid(modulus)).collect();
        Self { s, n, modulus }
    }

    pub fn sign(&self) -> i8 {
        let mut sorted = self.s.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return 0;
        }
        let parity: i64 = self.n.iter().sum();
        let base = sort_sign(&self.s);
        if parity % 2 == 0 {
            base
        } else {
            -base
        }
    }
}

pub fn decompose(
    w: &FiniteWeight,
    source: &AffineDominant,
    convention: SignatureConvention,
) -> Result<SignatureDecomposition, SignatureError> {
    let lam = source.finite_part();
    if w.class() != lam.class() || w.dim() != lam.dim() {
        return Err(SignatureError::ClassMismatch(w.clone()));
    }
    let k = source.level() as i64;
    let n = w.rank();
    Ok(match convention {
        SignatureConvention::FundamentalModulus => SignatureDecomposition::of(&w.coords()[..n], n as i64 + 1),
        SignatureConvention::LevelModulus => SignatureDecomposition::of(&w.coords()[..n], k),
        SignatureConvention::SourceAligned => {
            let shift = (lam.sum() - w.sum()) / (n as i64 + 1);
            let z: Vec<i64> = w.coords().iter().map(|c| c + shift).collect();
            SignatureDecomposition::of(&z, k)
        }
    })
}

/// `ε(w)` for a strictly dominant member of the orbit of `source`.
pub fn signature_index(
    w: &FiniteWeight,
    source: &AffineDominant,
    convention: SignatureConvention,
) -> Result<i8, SignatureError> {
    if !w.is_strictly_dominant() {
        return Err(SignatureError::NotStrictlyDominant(w.clone()));
    }
    Ok(decompose(w, source, convention)?.sign())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedWeight {
    pub coords: FiniteWeight,
    pub sign: i8,
}

/// Non-zero-signature members of `℘(Λ^{++}, K)` by depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPweights {
    pub source: AffineDominant,
    pub horizon: u32,
    pub depths: Vec<Vec<SignedWeight>>,
    /// Members dropped for signature 0.
    pub dropped: usize,
}

impl SignedPweights {
    pub fn iter(&self) -> impl Iterator<Item = (u32, &SignedWeight)> {
        self.depths.iter().enumerate().flat_map(|(d, ws)| ws.iter().map(move |w| (d as u32, w)))
    }
}

pub fn signed_pweights(
    source: &AffineDominant,
    horizon: u32,
    cache: Option<&WeightCache>,
) -> Result<Computed<SignedPweights>, SignatureError> {
    if !source.is_strictly_dominant() {
        return Err(SignatureError::SourceNotStrictlyDominant(source.clone()));
    }
    let Computed { value: set, cache_errors } = pweights(source, horizon, cache);
    let mut dropped = 0;
    let mut depths = Vec::with_capacity(set.slices().len());
    for slice in set.slices() {
        let mut out = Vec::with_capacity(slice.len());
        for w in slice {
            let sign = if w.is_strictly_dominant() {
                signature_index(w, source, SignatureConvention::SourceAligned)?
            } else {
                0
            };
            if sign == 0 {
                dropped += 1;
            } else {
                out.push(SignedWeight { coords: w.clone(), sign });
            }
        }
        depths.push(out);
    }
    if dropped > 0 {
        log::info!("{}: dropped {dropped} members with signature 0", source.name());
    }
    let value = SignedPweights { source: source.clone(), horizon, depths, dropped };
    Ok(Computed { value, cache_errors })
}
