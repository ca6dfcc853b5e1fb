use num_rational::BigRational;
use num_traits::Zero;

/// Outcome of an exact solve of `A x = b` with more rows than columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<BigRational>),
    /// Rows beyond the rank disagree; carries the first offending row.
    Inconsistent(usize),
    RankDeficient { rank: usize },
}

/// Gauss–Jordan elimination over the rationals on the augmented matrix
/// `[A | b]`.
pub fn solve_exact(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> LinearSolution {
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(unknowns);
    for col in 0..unknowns {
        let Some(p) = (pivot_row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &f * pv;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if let Some(i) = (pivot_row..rows.len()).find(|&i| !rows[i][unknowns].is_zero()) {
        return LinearSolution::Inconsistent(i);
    }
    if pivots.len() < unknowns {
        return LinearSolution::RankDeficient { rank: pivots.len() };
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][unknowns].clone();
    }
    LinearSolution::Unique(x)
}
