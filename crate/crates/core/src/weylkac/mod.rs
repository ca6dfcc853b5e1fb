//! String functions from the Weyl–Kac character formula.
//!
//! Both sides are expanded in `q = e^{−δ}` and specialized to Laurent
//! polynomials in `κ`:
//!
//! * `LEFT_J = Σ_j Σ_m P_{j,m} · c_j(J − m)`, where `P_{j,m}` is the sum of
//!   orbit characters over `℘_m(λ_j)` for maximal class `j`;
//! * `RIGHT = N / D`, with `N = Σ_d q^d Σ ε(w) s_{w−ρ̄}` over the signed
//!   permutation weights of `ρ̃ + Λ` and `D` the same for `ρ̃`.
//!
//! Order `J` is linear in the unknowns `c_j(J)` once lower orders are known;
//! matching `κ` exponents gives an overdetermined exact system.

mod linear;
mod output;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::polyalg::{orbit_sum, LaurentPoly, PolyError, QSeries, SchurContext, Specialization};
use crate::pweights::{maximal_classes, pweights, CacheError, Computed, MaximalClass, PermutationWeightSet, WeightCache};
use crate::signatures::{signed_pweights, SignatureError};
use crate::weightlattice::{AffineDominant, AffineWeight};

pub use linear::{solve_exact, LinearSolution};
pub use output::{ClassRow, TableJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylKacError {
    #[error("order {order}: no solution matches every κ exponent (residual {residual})")]
    Inconsistent { order: u32, residual: LaurentPoly },
    #[error("order {order}: coefficient of class {class} is not an integer ({value})")]
    NonIntegral { order: u32, class: String, value: String },
    #[error("order {order}: coefficient of class {class} is negative ({value})")]
    Negative { order: u32, class: String, value: String },
    #[error("order {order}: system has rank {rank} for {unknowns} unknowns; try another specialization")]
    RankDeficient { order: u32, rank: usize, unknowns: usize },
    #[error("depth {depth} lies beyond the solved horizon {horizon}")]
    HorizonExceeded { depth: u32, horizon: u32 },
    #[error("weight has level {found}, table has level {expected}")]
    LevelMismatch { expected: u32, found: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Defaults to `u_1 = κ`, `u_2 = κ^{-1}`, other `u_I = 1`.
    pub specialization: Option<Specialization>,
    pub cache: Option<WeightCache>,
    /// Retry with [`Specialization::staircase`], then
    /// [`Specialization::separating`], when the default specialization leaves
    /// some order underdetermined. Never applies to an explicitly chosen
    /// specialization.
    pub fallback: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { specialization: None, cache: None, fallback: true }
    }
}

/// `P_{j,m}` for every maximal class `j` and `m ≤ K`.
#[derive(Debug, Clone)]
pub struct OrbitSumCache {
    pub classes: Vec<MaximalClass>,
    pub sets: Vec<PermutationWeightSet>,
    pub sums: Vec<Vec<LaurentPoly>>,
}

/// One term `P_{j,m} · c_j(M)` of `LEFT_J`, `M = J − m`.
#[derive(Debug, Clone)]
pub struct LhsTerm<'a> {
    pub class: usize,
    pub string_index: u32,
    pub coefficient: &'a LaurentPoly,
}

impl OrbitSumCache {
    pub fn build(
        source: &AffineDominant,
        horizon: u32,
        spec: &Specialization,
        cache: Option<&WeightCache>,
        cache_errors: &mut Vec<CacheError>,
    ) -> Self {
        let classes = maximal_classes(source);
        let sets: Vec<PermutationWeightSet> = classes
            .iter()
            .map(|c| {
                let Computed { value, cache_errors: errs } = pweights(&c.affine, horizon, cache);
                cache_errors.extend(errs);
                value
            })
            .collect();
        let sums = sets
            .par_iter()
            .map(|set| {
                set.slices()
                    .par_iter()
                    .map(|slice| slice.iter().fold(LaurentPoly::zero(), |acc, w| acc + orbit_sum(w, spec)))
                    .collect()
            })
            .collect();
        Self { classes, sets, sums }
    }

    /// Terms of `LEFT_J` whose string index `J − m` is at least the class offset.
    pub fn lhs_form(&self, order: u32) -> Vec<LhsTerm<'_>> {
        let mut out = Vec::new();
        for (j, class) in self.classes.iter().enumerate() {
            for m in 0..=order {
                let idx = order - m;
                if idx < class.offset {
                    continue;
                }
                if let Some(p) = self.sums[j].get(m as usize).filter(|p| !p.is_zero()) {
                    out.push(LhsTerm { class: j, string_index: idx, coefficient: p });
                }
            }
        }
        out
    }
}

/// `Σ_d q^d Σ ε(w) s_{w−ρ̄}(κ)` over the signed permutation weights of a
/// strictly dominant `source`.
pub fn alternant_series(
    source: &AffineDominant,
    horizon: u32,
    spec: &Specialization,
    cache: Option<&WeightCache>,
    cache_errors: &mut Vec<CacheError>,
) -> Result<QSeries, WeylKacError> {
    let Computed { value: signed, cache_errors: errs } = signed_pweights(source, horizon, cache)?;
    cache_errors.extend(errs);
    let ctx = source.context();
    let rho = ctx.weyl_vector();
    let partitions: Vec<Vec<(i8, Vec<i64>)>> = signed
        .depths
        .iter()
        .map(|slice| {
            slice
                .iter()
                .map(|sw| {
                    let parts = sw.coords.coords().iter().zip(rho.coords()).map(|(a, b)| a - b).filter(|&p| p > 0).collect();
                    (sw.sign, parts)
                })
                .collect()
        })
        .collect();
    let q_max = partitions.iter().flatten().map(|(_, p)| SchurContext::required_q_max(p)).max().unwrap_or(0);
    let schur = SchurContext::new(&ctx, spec, q_max)?;
    let coeffs = partitions
        .par_iter()
        .map(|slice| {
            slice.iter().try_fold(LaurentPoly::zero(), |acc, (sign, parts)| {
                let s = schur.schur_multi(parts)?;
                Ok::<_, PolyError>(if *sign > 0 { acc + s } else { acc - s })
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QSeries::from_coeffs(coeffs))
}

/// `RIGHT = A(ρ̃ + Λ) / A(ρ̃)` truncated at `q^K`.
pub fn rhs_series(
    source: &AffineDominant,
    horizon: u32,
    spec: &Specialization,
    cache: Option<&WeightCache>,
    cache_errors: &mut Vec<CacheError>,
) -> Result<QSeries, WeylKacError> {
    let rho = source.context().affine_weyl_vector();
    let shifted = source.checked_add(&rho).expect("same rank");
    let num = alternant_series(&shifted, horizon, spec, cache, cache_errors)?;
    let den = alternant_series(&rho, horizon, spec, cache, cache_errors)?;
    Ok(num.div(&den)?)
}

/// Coefficients `c_j(M)`, `M = M₀(j) … K`, of one maximal class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringFunction {
    pub class: MaximalClass,
    pub coeffs: Vec<BigUint>,
}

impl StringFunction {
    /// `c_j(M)`; zero below the offset, `None` beyond the horizon.
    pub fn at(&self, m: u32) -> Option<BigUint> {
        if m < self.class.offset {
            return Some(BigUint::zero());
        }
        self.coeffs.get((m - self.class.offset) as usize).cloned()
    }
}

#[derive(Debug, Clone)]
pub struct StringFunctionTable {
    pub source: AffineDominant,
    pub horizon: u32,
    pub specialization: Specialization,
    pub strings: Vec<StringFunction>,
    /// Set when the default specialization was rank-deficient and a fallback
    /// was used instead.
    pub fallback_from: Option<Box<WeylKacError>>,
    /// `LEFT_J − RIGHT_J` after solving, per order.
    pub residuals: Vec<LaurentPoly>,
    pub class_sets: Vec<PermutationWeightSet>,
}

impl StringFunctionTable {
    /// Multiplicity of an affine weight `kΛ_0 − dδ + μ̄` of the module.
    pub fn multiplicity(&self, weight: &AffineWeight) -> Result<BigUint, WeylKacError> {
        let k = self.source.level();
        if weight.level != k {
            return Err(WeylKacError::LevelMismatch { expected: k, found: weight.level });
        }
        if weight.depth > self.horizon {
            return Err(WeylKacError::HorizonExceeded { depth: weight.depth, horizon: self.horizon });
        }
        if weight.finite.dim() != self.source.rank() + 1 {
            return Ok(BigUint::zero());
        }
        let (rep, _) = weight.finite.dominant_representative();
        for (string, set) in self.strings.iter().zip(&self.class_sets) {
            if let Some(m) = set.depth_of(&rep) {
                if m > weight.depth {
                    return Ok(BigUint::zero());
                }
                return Ok(string.at(weight.depth - m).unwrap_or_default());
            }
        }
        Ok(BigUint::zero())
    }
}

pub fn solve_strings(
    source: &AffineDominant,
    horizon: u32,
    options: &SolveOptions,
) -> Result<Computed<StringFunctionTable>, WeylKacError> {
    let ctx = source.context();
    let cache = options.cache.as_ref();
    let mut cache_errors = Vec::new();
    let result = match &options.specialization {
        Some(spec) => {
            if spec.dim() != ctx.dim() {
                return Err(PolyError::SpecializationDimension { expected: ctx.dim(), found: spec.dim() }.into());
            }
            solve_with(source, horizon, spec, cache, &mut cache_errors)
        }
        None => {
            let mut attempt = solve_with(source, horizon, &Specialization::default_for(&ctx), cache, &mut cache_errors);
            if let Err(first @ WeylKacError::RankDeficient { .. }) = &attempt {
                if options.fallback {
                    let first = first.clone();
                    for spec in [Specialization::staircase(&ctx), Specialization::separating(&ctx, source.level())] {
                        log::info!("{first}; retrying with exponents {:?}", spec.exponents());
                        attempt = solve_with(source, horizon, &spec, cache, &mut cache_errors);
                        if !matches!(attempt, Err(WeylKacError::RankDeficient { .. })) {
                            break;
                        }
                    }
                    if let Ok(t) = &mut attempt {
                        t.fallback_from = Some(Box::new(first));
                    }
                }
            }
            attempt
        }
    };
    result.map(|value| Computed { value, cache_errors })
}

fn solve_with(
    source: &AffineDominant,
    horizon: u32,
    spec: &Specialization,
    cache: Option<&WeightCache>,
    cache_errors: &mut Vec<CacheError>,
) -> Result<StringFunctionTable, WeylKacError> {
    let right = rhs_series(source, horizon, spec, cache, cache_errors)?;
    let orbit = OrbitSumCache::build(source, horizon, spec, cache, cache_errors);

    let n_classes = orbit.classes.len();
    let mut c: Vec<Vec<BigRational>> = vec![Vec::new(); n_classes];
    let mut residuals = Vec::with_capacity(horizon as usize + 1);
    for order in 0..=horizon {
        let unknowns: Vec<usize> = (0..n_classes).filter(|&j| orbit.classes[j].offset <= order).collect();
        let mut rhs = right.coeff(order).clone();
        for term in orbit.lhs_form(order) {
            if term.string_index < order {
                let known = &c[term.class][(term.string_index - orbit.classes[term.class].offset) as usize];
                rhs -= &term.coefficient.scale(known);
            }
        }
        let zero = LaurentPoly::zero();
        let columns: Vec<&LaurentPoly> = unknowns.iter().map(|&j| orbit.sums[j].first().unwrap_or(&zero)).collect();
        let mut exponents: Vec<i64> = columns.iter().flat_map(|p| p.exponents()).chain(rhs.exponents()).collect();
        exponents.sort_unstable();
        exponents.dedup();
        let rows = exponents
            .iter()
            .map(|&e| columns.iter().map(|p| p.coeff(e)).chain(std::iter::once(rhs.coeff(e))).collect())
            .collect();
        let solution = match solve_exact(rows, unknowns.len()) {
            LinearSolution::Unique(x) => x,
            LinearSolution::Inconsistent(_) => return Err(WeylKacError::Inconsistent { order, residual: rhs }),
            LinearSolution::RankDeficient { rank } => {
                return Err(WeylKacError::RankDeficient { order, rank, unknowns: unknowns.len() })
            }
        };
        for (&j, value) in unknowns.iter().zip(solution) {
            let class = orbit.classes[j].affine.name();
            if !value.is_integer() {
                return Err(WeylKacError::NonIntegral { order, class, value: value.to_string() });
            }
            if value.is_negative() {
                return Err(WeylKacError::Negative { order, class, value: value.to_string() });
            }
            c[j].push(value);
        }
        residuals.push(residual(&orbit, &c, right.coeff(order), order));
    }

    let strings = orbit
        .classes
        .iter()
        .zip(c)
        .map(|(class, vals)| StringFunction {
            class: class.clone(),
            coeffs: vals.into_iter().map(|v| v.to_integer().to_biguint().expect("checked non-negative")).collect(),
        })
        .collect();
    Ok(StringFunctionTable {
        source: source.clone(),
        horizon,
        specialization: spec.clone(),
        strings,
        fallback_from: None,
        residuals,
        class_sets: orbit.sets,
    })
}

fn residual(orbit: &OrbitSumCache, c: &[Vec<BigRational>], right: &LaurentPoly, order: u32) -> LaurentPoly {
    let mut left = LaurentPoly::zero();
    for term in orbit.lhs_form(order) {
        let idx = (term.string_index - orbit.classes[term.class].offset) as usize;
        left += &term.coefficient.scale(&c[term.class][idx]);
    }
    &left - right
}

/// `BigUint` as `u128` where it fits.
pub fn to_u128(v: &BigUint) -> Option<u128> {
    v.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weightlattice::{AlgebraContext, FiniteWeight};

    fn aff(s: &str) -> AffineDominant {
        s.parse().unwrap()
    }

    fn ints(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn basic_a1_is_partition_numbers() {
        let t = solve_strings(&aff("1,0"), 9, &SolveOptions::default()).unwrap().value;
        assert_eq!(t.strings.len(), 1);
        assert_eq!(ints(&t.strings[0].coeffs), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert!(t.residuals.iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn a5_low_orders() {
        let t = solve_strings(&aff("1,1,0,0,0,0"), 3, &SolveOptions::default()).unwrap().value;
        let got: Vec<(u32, Vec<u64>)> = t.strings.iter().map(|s| (s.class.offset, ints(&s.coeffs))).collect();
        assert_eq!(got, vec![(0, vec![1, 10, 70, 380]), (1, vec![2, 22, 148]), (2, vec![5, 50])]);
    }

    #[test]
    fn rhs_leading_term_is_the_finite_character() {
        let ctx = AlgebraContext::new(5).unwrap();
        let spec = Specialization::default_for(&ctx);
        let r = rhs_series(&aff("1,1,0,0,0,0"), 0, &spec, None, &mut Vec::new()).unwrap();
        let mut want = LaurentPoly::from_int(4);
        want += &LaurentPoly::kappa_pow(1);
        want += &LaurentPoly::kappa_pow(-1);
        assert_eq!(r.coeff(0), &want);
    }

    #[test]
    fn lhs_forms() {
        let ctx = AlgebraContext::new(5).unwrap();
        let spec = Specialization::default_for(&ctx);
        let orbit = OrbitSumCache::build(&aff("1,1,0,0,0,0"), 1, &spec, None, &mut Vec::new());
        let f0 = orbit.lhs_form(0);
        assert_eq!(f0.len(), 1);
        assert_eq!((f0[0].class, f0[0].string_index), (0, 0));
        let f1: Vec<(usize, u32)> = orbit.lhs_form(1).iter().map(|t| (t.class, t.string_index)).collect();
        assert_eq!(f1, vec![(0, 1), (0, 0), (1, 1)]);
        assert_eq!(orbit.sets[0].at(1), &["(3,1,1,1,1)".parse::<FiniteWeight>().unwrap()]);
    }

    #[test]
    fn multiplicities() {
        let t = solve_strings(&aff("1,1,0,0,0,0"), 2, &SolveOptions::default()).unwrap().value;
        let weight = |s: &str, d| AffineWeight { level: 2, depth: d, finite: s.parse().unwrap() };
        assert_eq!(t.multiplicity(&weight("(1,0,0,0,0)", 0)).unwrap(), BigUint::from(1u8));
        assert_eq!(t.multiplicity(&weight("(3,1,1,1,1)", 1)).unwrap(), BigUint::from(1u8));
        assert_eq!(t.multiplicity(&weight("(1,0,0,0,0)", 1)).unwrap(), BigUint::from(10u8));
        assert_eq!(t.multiplicity(&weight("(0,0,0,0,0)", 1)).unwrap(), BigUint::zero());
        assert!(matches!(t.multiplicity(&weight("(1,0,0,0,0)", 3)), Err(WeylKacError::HorizonExceeded { .. })));
        let wrong_level = AffineWeight { level: 1, depth: 0, finite: "(1,0,0,0,0)".parse().unwrap() };
        assert!(t.multiplicity(&wrong_level).is_err());
    }

    #[test]
    fn degenerate_specialization_is_rank_deficient() {
        let opts = SolveOptions {
            specialization: Some(Specialization::new(vec![0, 0, 0, 0, 0, 0]).unwrap()),
            ..SolveOptions::default()
        };
        let err = solve_strings(&aff("1,1,0,0,0,0"), 2, &opts).unwrap_err();
        assert!(matches!(err, WeylKacError::RankDeficient { order: 1, .. }), "{err}");
    }

    #[test]
    fn falls_back_from_a_rank_deficient_default() {
        let source = aff("1,1,1");
        let strict = SolveOptions { fallback: false, ..SolveOptions::default() };
        assert!(matches!(solve_strings(&source, 3, &strict), Err(WeylKacError::RankDeficient { order: 1, .. })));
        let t = solve_strings(&source, 3, &SolveOptions::default()).unwrap().value;
        assert!(t.fallback_from.is_some());
        assert_eq!(t.specialization, Specialization::staircase(&source.context()));
        let separating = SolveOptions {
            specialization: Some(Specialization::separating(&source.context(), source.level())),
            ..SolveOptions::default()
        };
        assert_eq!(solve_strings(&source, 3, &separating).unwrap().value.strings, t.strings);
        assert!(t.residuals.iter().all(LaurentPoly::is_zero));
        // the top class of the adjoint-containing module starts at 1
        assert_eq!(t.strings[0].coeffs[0], BigUint::from(1u8));
    }
}
