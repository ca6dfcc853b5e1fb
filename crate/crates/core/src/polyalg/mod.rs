//! Exact polynomial algebra for specialized characters.
//!
//! Characters of `A_N` are symmetric functions of `u_1 … u_{N+1}` with
//! `∏ u_I = 1`. Everything here is evaluated under a [`Specialization`]
//! `u_I = κ^{t_I}`, which turns every character into a [`LaurentPoly`].

mod laurent;
mod qseries;
mod schur;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weightlattice::{AlgebraContext, FiniteWeight};

pub use laurent::{format_rational, parse_rational, LaurentPoly};
pub use qseries::QSeries;
pub use schur::SchurContext;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("specialization exponents must sum to 0 (got {0})")]
    SpecializationSum(i64),
    #[error("specialization has {found} exponents, algebra needs {expected}")]
    SpecializationDimension { expected: usize, found: usize },
    #[error("index {q} outside the cached range (max {max})")]
    OutOfRange { q: usize, max: usize },
    #[error("not a partition with at most {max_len} parts: {parts:?}")]
    InvalidPartition { parts: Vec<i64>, max_len: usize },
    #[error("leading q^0 coefficient is not invertible")]
    NonInvertibleLeadingTerm,
    #[error("cannot extend a Schur context built from explicit power sums")]
    NotExtendable,
}

/// Exponent vector `t` of the substitution `u_I = κ^{t_I}`, `Σ t_I = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Specialization {
    exponents: Vec<i64>,
}

impl Specialization {
    pub fn new(exponents: Vec<i64>) -> Result<Self, PolyError> {
        let s: i64 = exponents.iter().sum();
        if s != 0 {
            return Err(PolyError::SpecializationSum(s));
        }
        if exponents.len() < 2 {
            return Err(PolyError::SpecializationDimension { expected: 2, found: exponents.len() });
        }
        Ok(Self { exponents })
    }

    /// `u_1 = κ`, `u_2 = κ^{-1}`, all other `u_I = 1`.
    pub fn default_for(ctx: &AlgebraContext) -> Self {
        let mut t = vec![0; ctx.dim()];
        t[0] = 1;
        t[1] = -1;
        Self { exponents: t }
    }

    /// `t = (1, 2, …, N, −N(N+1)/2)`. Exponents stay small, so characters
    /// remain short; unlike the principal specialization it is not symmetric
    /// under reversal, so conjugate orbit sums stay apart. Distinct orbit
    /// sums may still coincide.
    pub fn staircase(ctx: &AlgebraContext) -> Self {
        let n = ctx.rank() as i64;
        let mut t: Vec<i64> = (1..=n).collect();
        t.push(-n * (n + 1) / 2);
        Self { exponents: t }
    }

    /// `t_I = B^I` for `I < N` and `t_N = −Σ`, with `B = 2k + 1`.
    ///
    /// `t·c` then depends only on the differences `c_I − c_N ∈ [−k, k]`,
    /// read as balanced base-`B` digits, so distinct weights with canonical
    /// coordinates in `[0, k]` get distinct exponents and their orbit sums
    /// are linearly independent.
    pub fn separating(ctx: &AlgebraContext, level: u32) -> Self {
        let base = 2 * level as i64 + 1;
        let mut t: Vec<i64> = (0..ctx.rank() as u32).map(|i| base.pow(i)).collect();
        t.push(-t.iter().sum::<i64>());
        Self { exponents: t }
    }

    pub fn for_context(ctx: &AlgebraContext, exponents: Vec<i64>) -> Result<Self, PolyError> {
        if exponents.len() != ctx.dim() {
            return Err(PolyError::SpecializationDimension { expected: ctx.dim(), found: exponents.len() });
        }
        Self::new(exponents)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }
}

/// Character of the Weyl orbit of a dominant weight, i.e. the sum of
/// `κ^{Σ t_I c_{π(I)}}` over the distinct arrangements of its coordinates.
///
/// Only positions with `t_I ≠ 0` are enumerated; the remaining slots are
/// counted with a multinomial coefficient.
pub fn orbit_sum(w: &FiniteWeight, spec: &Specialization) -> LaurentPoly {
    assert_eq!(w.dim(), spec.dim(), "weight and specialization dimensions differ");
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &c in w.coords() {
        *counts.entry(c).or_default() += 1;
    }
    let active: Vec<i64> = spec.exponents.iter().copied().filter(|&t| t != 0).collect();
    let free_slots = w.dim() - active.len();
    let mut out = LaurentPoly::zero();
    place(&active, &mut counts, 0, free_slots, &mut out);
    out
}

fn place(active: &[i64], counts: &mut BTreeMap<i64, usize>, exp: i64, free_slots: usize, out: &mut LaurentPoly) {
    let Some((&t, rest)) = active.split_first() else {
        let n = multinomial(free_slots, counts.values().copied());
        out.add_term(exp, BigRational::from_integer(n.into()));
        return;
    };
    let values: Vec<i64> = counts.iter().filter(|(_, &m)| m > 0).map(|(&v, _)| v).collect();
    for v in values {
        *counts.get_mut(&v).expect("present") -= 1;
        place(rest, counts, exp + t * v, free_slots, out);
        *counts.get_mut(&v).expect("present") += 1;
    }
}

fn multinomial(total: usize, parts: impl Iterator<Item = usize>) -> BigUint {
    let fact = |n: usize| (1..=n).fold(BigUint::one(), |acc, i| acc * i);
    parts.fold(fact(total), |acc, m| acc / fact(m))
}

/// Power sum `K_q = Σ_I u_I^q`; the associated variable is `x_q = K_q / q`.
pub fn power_sum_value(q: usize, spec: &Specialization) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for &t in &spec.exponents {
        out.add_term(q as i64 * t, BigRational::one());
    }
    out
}

/// `∏_{i<j} (κ^{t_i} − κ^{t_j})`.
pub fn vandermonde(spec: &Specialization) -> LaurentPoly {
    let t = &spec.exponents;
    let mut acc = LaurentPoly::one();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let f = &LaurentPoly::kappa_pow(t[i]) - &LaurentPoly::kappa_pow(t[j]);
            acc = &acc * &f;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> FiniteWeight {
        FiniteWeight::from_coords(c.to_vec()).unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(e, BigRational::from_integer(c.into()));
        }
        p
    }

    #[test]
    fn orbit_sums() {
        let ctx = AlgebraContext::new(5).unwrap();
        let t = Specialization::default_for(&ctx);
        assert_eq!(orbit_sum(&w(&[1, 0, 0, 0, 0, 0]), &t), poly(&[(1, 1), (-1, 1), (0, 4)]));
        assert_eq!(orbit_sum(&ctx.zero(), &t), LaurentPoly::one());
        // brute force over the 30 arrangements of {2,1,1,1,1,0}
        assert_eq!(
            orbit_sum(&w(&[2, 1, 1, 1, 1, 0]), &t),
            poly(&[(2, 1), (-2, 1), (1, 8), (-1, 8), (0, 12)])
        );
    }

    #[test]
    fn power_sums() {
        let ctx = AlgebraContext::new(5).unwrap();
        let t = Specialization::default_for(&ctx);
        assert_eq!(power_sum_value(1, &t), poly(&[(1, 1), (-1, 1), (0, 4)]));
        assert_eq!(power_sum_value(2, &t), poly(&[(2, 1), (-2, 1), (0, 4)]));
        let t1 = Specialization::new(vec![1, -1]).unwrap();
        assert_eq!(power_sum_value(3, &t1), poly(&[(3, 1), (-3, 1)]));
    }

    #[test]
    fn vandermonde_values() {
        let t1 = Specialization::new(vec![1, -1]).unwrap();
        assert_eq!(vandermonde(&t1), poly(&[(1, 1), (-1, -1)]));
        let ctx = AlgebraContext::new(5).unwrap();
        assert!(vandermonde(&Specialization::default_for(&ctx)).is_zero());
        let v = vandermonde(&Specialization::new(vec![2, 1, 0, -3]).unwrap());
        assert_eq!(v.max_exp(), Some(8));
        assert_eq!(v.coeff(8), BigRational::one());
    }

    #[test]
    fn staircase_exponents() {
        let ctx = AlgebraContext::new(4).unwrap();
        assert_eq!(Specialization::staircase(&ctx).exponents(), &[1, 2, 3, 4, -10]);
    }

    #[test]
    fn separating_exponents_are_injective() {
        let ctx = AlgebraContext::new(3).unwrap();
        let t = Specialization::separating(&ctx, 2);
        assert_eq!(t.exponents(), &[1, 5, 25, -31]);
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    let e = t.exponents()[0] * a + t.exponents()[1] * b + t.exponents()[2] * c;
                    assert!(seen.insert(e));
                }
            }
        }
    }

    #[test]
    fn specialization_must_sum_to_zero() {
        assert_eq!(Specialization::new(vec![1, 0]), Err(PolyError::SpecializationSum(1)));
        let ctx = AlgebraContext::new(2).unwrap();
        assert!(Specialization::for_context(&ctx, vec![1, -1]).is_err());
    }
}
