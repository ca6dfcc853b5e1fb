use std::collections::HashMap;

use num_rational::BigRational;

use super::{power_sum_value, LaurentPoly, PolyError, Specialization};
use crate::weightlattice::AlgebraContext;

/// Cached power-sum variables `x_q` and the Schur families built on them.
///
/// * classical `S_q`: `q·S_q = Σ_{r=1}^{q} r·x_r·S_{q−r}`, `S_0 = 1`;
/// * starred `S_q*`: the same with every `x_r` negated, `q ≤ N+1`;
/// * degenerated `S_q`: equal to the classical one for `q ≤ N`, and for
///   `q ≥ N+1` given by `S_q = (−1)^N S_{q−N−1} − Σ_{r=1}^{N} S_r* S_{q−r}`,
///   which uses only `x_1 … x_N` and the constraint `∏ u_I = 1`.
///
/// All caches are filled on construction; reads take `&self`.
#[derive(Debug, Clone)]
pub struct SchurContext {
    rank: usize,
    spec: Option<Specialization>,
    x: Vec<LaurentPoly>,
    classical: Vec<LaurentPoly>,
    starred: Vec<LaurentPoly>,
    degenerated: Vec<LaurentPoly>,
}

impl SchurContext {
    /// Context for a specialization, with degenerated values up to `q_max`.
    pub fn new(ctx: &AlgebraContext, spec: &Specialization, q_max: usize) -> Result<Self, PolyError> {
        if spec.dim() != ctx.dim() {
            return Err(PolyError::SpecializationDimension { expected: ctx.dim(), found: spec.dim() });
        }
        let x = Self::specialized_x(spec, q_max.max(ctx.dim()));
        let mut out = Self::build(ctx.rank(), x, q_max);
        out.spec = Some(spec.clone());
        Ok(out)
    }

    /// Context over explicitly given `x_1, x_2, …` (`x[0]` is `x_1`).
    pub fn from_power_sums(rank: usize, x: Vec<LaurentPoly>, q_max: usize) -> Self {
        Self::build(rank, x, q_max)
    }

    fn specialized_x(spec: &Specialization, n: usize) -> Vec<LaurentPoly> {
        (1..=n)
            .map(|q| power_sum_value(q, spec).scale(&BigRational::new(1.into(), (q as i64).into())))
            .collect()
    }

    fn build(rank: usize, x: Vec<LaurentPoly>, q_max: usize) -> Self {
        let classical = newton_series(&x, false);
        let starred: Vec<LaurentPoly> = newton_series(&x, true).into_iter().take(rank + 2).collect();
        let mut out = Self { rank, spec: None, x, classical, starred, degenerated: Vec::new() };
        out.fill_degenerated(q_max);
        out
    }

    fn fill_degenerated(&mut self, q_max: usize) {
        let n = self.rank;
        while self.degenerated.len() <= q_max {
            let q = self.degenerated.len();
            let next = if q <= n {
                match self.classical.get(q) {
                    Some(v) => v.clone(),
                    None => break,
                }
            } else {
                if self.starred.len() <= n {
                    break;
                }
                let mut acc = self.degenerated[q - n - 1].clone();
                if n % 2 == 1 {
                    acc = -acc;
                }
                for r in 1..=n {
                    acc -= &(&self.starred[r] * &self.degenerated[q - r]);
                }
                acc
            };
            self.degenerated.push(next);
        }
    }

    /// Extends the caches to `q_max`; needs exclusive access.
    pub fn extend(&mut self, q_max: usize) -> Result<(), PolyError> {
        if q_max < self.degenerated.len() {
            return Ok(());
        }
        let spec = self.spec.clone().ok_or(PolyError::NotExtendable)?;
        let n = q_max.max(self.rank + 1);
        if n > self.x.len() {
            self.x = Self::specialized_x(&spec, n);
            self.classical = newton_series(&self.x, false);
        }
        self.fill_degenerated(q_max);
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Largest index available from [`Self::degenerated_schur`].
    pub fn q_max(&self) -> usize {
        self.degenerated.len().saturating_sub(1)
    }

    /// `x_q`, `q ≥ 1`.
    pub fn x(&self, q: usize) -> Result<&LaurentPoly, PolyError> {
        if q == 0 {
            return Err(PolyError::OutOfRange { q, max: self.x.len() });
        }
        self.x.get(q - 1).ok_or(PolyError::OutOfRange { q, max: self.x.len() })
    }

    pub fn classical_schur(&self, q: usize) -> Result<&LaurentPoly, PolyError> {
        lookup(&self.classical, q)
    }

    pub fn starred_schur(&self, q: usize) -> Result<&LaurentPoly, PolyError> {
        lookup(&self.starred, q)
    }

    pub fn degenerated_schur(&self, q: usize) -> Result<&LaurentPoly, PolyError> {
        lookup(&self.degenerated, q)
    }

    /// Largest degenerated index read by the Jacobi–Trudi determinant of
    /// `partition`.
    pub fn required_q_max(partition: &[i64]) -> usize {
        match partition.first() {
            Some(&p) => (p.max(0) as usize) + partition.len() - 1,
            None => 0,
        }
    }

    /// Schur polynomial of a partition as `det[S_{q_i − i + j}]`, built from
    /// degenerated entries.
    pub fn schur_multi(&self, partition: &[i64]) -> Result<LaurentPoly, PolyError> {
        let valid = partition.windows(2).all(|w| w[0] >= w[1]) && partition.iter().all(|&p| p > 0);
        if !valid || partition.len() > self.rank + 1 {
            return Err(PolyError::InvalidPartition { parts: partition.to_vec(), max_len: self.rank + 1 });
        }
        let s = partition.len();
        let mut matrix = vec![vec![LaurentPoly::zero(); s]; s];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let idx = partition[i] - i as i64 + j as i64;
                if idx >= 0 {
                    *cell = self.degenerated_schur(idx as usize)?.clone();
                }
            }
        }
        Ok(determinant(&matrix))
    }
}

fn lookup(v: &[LaurentPoly], q: usize) -> Result<&LaurentPoly, PolyError> {
    v.get(q).ok_or(PolyError::OutOfRange { q, max: v.len().saturating_sub(1) })
}

/// `S_0 … S_{len(x)}` from `q·S_q = Σ r·x_r·S_{q−r}` (with `x → −x` if `negate`).
fn newton_series(x: &[LaurentPoly], negate: bool) -> Vec<LaurentPoly> {
    let mut s = vec![LaurentPoly::one()];
    for q in 1..=x.len() {
        let mut acc = LaurentPoly::zero();
        for r in 1..=q {
            acc += &(&x[r - 1] * &s[q - r]).scale_int(r as i64);
        }
        let k = if negate { -(q as i64) } else { q as i64 };
        s.push(acc.scale(&BigRational::new(1.into(), k.into())));
    }
    s
}

/// Laplace expansion along rows, memoized on the set of used columns.
pub(crate) fn determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    fn go(m: &[Vec<LaurentPoly>], used: u32, memo: &mut HashMap<u32, LaurentPoly>) -> LaurentPoly {
        let row = used.count_ones() as usize;
        if row == m.len() {
            return LaurentPoly::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero();
        let mut free_before = 0;
        for col in 0..m.len() {
            if used & (1 << col) != 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                let minor = go(m, used | (1 << col), memo);
                let term = &m[row][col] * &minor;
                if free_before % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(m.len() < 32, "determinant too large");
    go(m, 0, &mut HashMap::new())
}
