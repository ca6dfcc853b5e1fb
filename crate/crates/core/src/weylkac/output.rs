use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{StringFunction, StringFunctionTable};
use crate::weightlattice::AffineDominant;

/// One class of a table in its JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub labels: AffineDominant,
    #[serde(rename = "M0")]
    pub m0: u32,
    pub coeffs: Vec<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub labels: AffineDominant,
    pub horizon: u32,
    pub classes: Vec<ClassRow>,
}

impl StringFunction {
    /// `1 + 10 q + 70 q^2 + …`, factored as `q^M₀ (…)` when `M₀ > 0`.
    pub fn series(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != BigUint::ZERO)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c} q"),
                _ => format!("{c} q^{i}"),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { format!("{} + …", terms.join(" + ")) };
        match self.class.offset {
            0 => body,
            1 => format!("q ({body})"),
            m => format!("q^{m} ({body})"),
        }
    }
}

impl StringFunctionTable {
    pub fn to_json(&self) -> Option<TableJson> {
        let classes = self
            .strings
            .iter()
            .map(|s| {
                Some(ClassRow {
                    labels: s.class.affine.clone(),
                    m0: s.class.offset,
                    coeffs: s.coeffs.iter().map(super::to_u128).collect::<Option<_>>()?,
                })
            })
            .collect::<Option<_>>()?;
        Some(TableJson { labels: self.source.clone(), horizon: self.horizon, classes })
    }

    /// Rows of `(class, M₀, [c(0) … c(K)])`, empty cells below the offset.
    pub fn grid(&self) -> Vec<(String, u32, Vec<String>)> {
        self.strings
            .iter()
            .map(|s| {
                let cells = (0..=self.horizon)
                    .map(|m| if m < s.class.offset { String::new() } else { s.at(m).map(|c| c.to_string()).unwrap_or_default() })
                    .collect();
                (s.class.affine.name(), s.class.offset, cells)
            })
            .collect()
    }

    /// Fixed-width text table, classes by string index.
    pub fn to_table(&self) -> String {
        let grid = self.grid();
        let mut header = vec!["class".to_string(), "M0".to_string()];
        header.extend((0..=self.horizon).map(|m| format!("M={m}")));
        let mut rows = vec![header];
        for (name, m0, cells) in grid {
            let mut row = vec![name, m0.to_string()];
            row.extend(cells);
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len()).map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (c, &w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_series(&self) -> String {
        let mut out = String::new();
        for s in &self.strings {
            out.push_str(&format!("{}: {}\n", s.class.affine.name(), s.series()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{solve_strings, SolveOptions};
    use super::*;

    #[test]
    fn renderings() {
        let t = solve_strings(&"1,1,0,0,0,0".parse().unwrap(), 3, &SolveOptions::default()).unwrap().value;
        assert_eq!(
            t.to_series(),
            "Λ0+Λ1: 1 + 10 q + 70 q^2 + 380 q^3 + …\nΛ2+Λ5: q (2 + 22 q + 148 q^2 + …)\nΛ3+Λ4: q^2 (5 + 50 q + …)\n"
        );
        let table = t.to_table();
        assert_eq!(table.lines().next().unwrap(), "class  M0  M=0  M=1  M=2  M=3");
        assert_eq!(table.lines().nth(3).unwrap(), "Λ3+Λ4   2              5   50");
        let json = t.to_json().unwrap();
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains(r#"{"labels":[0,0,1,0,0,1],"M0":1,"coeffs":[2,22,148]}"#));
        assert_eq!(serde_json::from_str::<TableJson>(&text).unwrap(), json);
    }
}
