use serde::{Deserialize, Serialize};

use super::{LaurentPoly, PolyError};

/// Power series in `q` truncated after `q^order`, with Laurent-polynomial
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    coeffs: Vec<LaurentPoly>,
}

impl QSeries {
    pub fn zero(order: u32) -> Self {
        Self { coeffs: vec![LaurentPoly::zero(); order as usize + 1] }
    }

    /// Takes `coeffs[J]` as the `q^J` coefficient; the order is `len − 1`.
    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the q^0 term");
        Self { coeffs }
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, j: u32) -> &LaurentPoly {
        &self.coeffs[j as usize]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn add_at(&mut self, j: u32, p: &LaurentPoly) {
        if let Some(c) = self.coeffs.get_mut(j as usize) {
            *c += p;
        }
    }

    pub fn truncate(&self, order: u32) -> Self {
        Self { coeffs: self.coeffs[..=order.min(self.order()) as usize].to_vec() }
    }

    fn common_order(&self, other: &QSeries) -> usize {
        self.coeffs.len().min(other.coeffs.len())
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.common_order(other);
        Self { coeffs: (0..n).map(|j| &self.coeffs[j] + &other.coeffs[j]).collect() }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.common_order(other);
        Self { coeffs: (0..n).map(|j| &self.coeffs[j] - &other.coeffs[j]).collect() }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.common_order(other);
        let coeffs = (0..n)
            .map(|j| {
                let mut acc = LaurentPoly::zero();
                for i in 0..=j {
                    acc += &(&self.coeffs[i] * &other.coeffs[j - i]);
                }
                acc
            })
            .collect();
        Self { coeffs }
    }

    /// Truncated quotient `self / other`; `other`'s `q^0` term must be a unit.
    pub fn div(&self, other: &QSeries) -> Result<QSeries, PolyError> {
        let n = self.common_order(other);
        let inv = other.coeffs[0].try_inverse().ok_or(PolyError::NonInvertibleLeadingTerm)?;
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = self.coeffs[j].clone();
            for i in 1..=j {
                acc -= &(&other.coeffs[i] * &out[j - i]);
            }
            out.push(&acc * &inv);
        }
        Ok(Self { coeffs: out })
    }
}
