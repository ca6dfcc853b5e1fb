//! Regression data and cross-checks.
//!
//! Fixtures are the published permutation-weight tables of `A_5^(1)`, one
//! file per source weight, with tokens copied as printed. A small allowlist
//! records tokens known to be misprinted together with their corrections;
//! each allowlisted correction must itself be confirmed by the brute-force
//! orbit.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::{orbit_bruteforce, DiffReport, OracleError, Triple};
use crate::pweights::{pweights, PermutationWeightSet, WeightCache};
use crate::signatures::{signature_index, SignatureConvention};
use crate::weightlattice::{AffineDominant, FiniteWeight};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("fixture {name}: {reason}")]
    Fixture { name: String, reason: String },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("misprint list: {0}")]
    Misprints(#[from] serde_json::Error),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Names and file names of the bundled tables, in order.
pub const TABLES: [(&str, &str); 9] = [
    ("L0", "l0.txt"),
    ("L1", "l1.txt"),
    ("L2", "l2.txt"),
    ("L3", "l3.txt"),
    ("L0+L1", "l0_l1.txt"),
    ("L2+L5", "l2_l5.txt"),
    ("L3+L4", "l3_l4.txt"),
    ("rho", "rho.txt"),
    ("rho+L0+L1", "rho_l0_l1.txt"),
];

const BUNDLED: [&str; 9] = [
    include_str!("../fixtures/l0.txt"),
    include_str!("../fixtures/l1.txt"),
    include_str!("../fixtures/l2.txt"),
    include_str!("../fixtures/l3.txt"),
    include_str!("../fixtures/l0_l1.txt"),
    include_str!("../fixtures/l2_l5.txt"),
    include_str!("../fixtures/l3_l4.txt"),
    include_str!("../fixtures/rho.txt"),
    include_str!("../fixtures/rho_l0_l1.txt"),
];

const BUNDLED_MISPRINTS: &str = include_str!("../fixtures/misprints.json");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub source: AffineDominant,
    pub horizon: u32,
    /// Tokens `(p1,…,pN)_d` exactly as printed.
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Misprint {
    pub table: String,
    pub printed: String,
    pub corrected: Option<String>,
    pub note: String,
}

/// Parses `# comment`, `source: a0,…,aN`, `horizon: K`, then whitespace- or
/// comma-separated tokens.
pub fn parse_fixture(name: &str, text: &str) -> Result<Fixture, VerifyError> {
    let err = |reason: String| VerifyError::Fixture { name: name.to_string(), reason };
    let mut source = None;
    let mut horizon = None;
    let mut tokens = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(v) = line.strip_prefix("source:") {
            source = Some(v.trim().parse::<AffineDominant>().map_err(|e| err(e.to_string()))?);
        } else if let Some(v) = line.strip_prefix("horizon:") {
            horizon = Some(v.trim().parse::<u32>().map_err(|e| err(e.to_string()))?);
        } else {
            tokens.extend(line.split_whitespace().map(str::to_string));
        }
    }
    Ok(Fixture {
        name: name.to_string(),
        source: source.ok_or_else(|| err("missing source line".into()))?,
        horizon: horizon.ok_or_else(|| err("missing horizon line".into()))?,
        tokens,
    })
}

pub fn bundled_fixtures() -> Vec<Fixture> {
    TABLES.iter().zip(BUNDLED).map(|((name, _), text)| parse_fixture(name, text).expect("bundled fixture parses")).collect()
}

pub fn bundled_misprints() -> Vec<Misprint> {
    serde_json::from_str(BUNDLED_MISPRINTS).expect("bundled misprint list parses")
}

/// Reads the table files and `misprints.json` from `dir`.
pub fn load_fixtures(dir: &Path) -> Result<(Vec<Fixture>, Vec<Misprint>), VerifyError> {
    let read = |file: &str| {
        let path = dir.join(file);
        fs::read_to_string(&path).map_err(|source| VerifyError::Io { path: path.display().to_string(), source })
    };
    let fixtures = TABLES.iter().map(|(name, file)| parse_fixture(name, &read(file)?)).collect::<Result<_, _>>()?;
    let misprints = serde_json::from_str(&read("misprints.json")?)?;
    Ok((fixtures, misprints))
}

fn triples_of(set: &PermutationWeightSet) -> BTreeSet<Triple> {
    set.iter().map(|(depth, w)| Triple { depth, weight: w.clone(), sign: None }).collect()
}

fn parse_token(t: &str) -> Option<Triple> {
    FiniteWeight::parse_with_depth(t).ok().map(|(weight, depth)| Triple { depth, weight, sign: None })
}

/// Outcome of one table comparison.
#[derive(Debug, Clone)]
pub struct TableCheck {
    pub name: String,
    pub entries: usize,
    pub allowlisted: usize,
    pub problems: Vec<String>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

impl fmt::Display for TableCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "OK" } else { "MISMATCH" };
        write!(f, "{}: {status} ({} entries", self.name, self.entries)?;
        if self.allowlisted > 0 {
            write!(f, ", {} allowlisted misprint{}", self.allowlisted, if self.allowlisted == 1 { "" } else { "s" })?;
        }
        write!(f, ")")?;
        for p in &self.problems {
            write!(f, "\n  {p}")?;
        }
        Ok(())
    }
}

/// Compares a table with the computed set, and both the computed set and the
/// allowlist with the brute-force orbit.
pub fn check_table(fixture: &Fixture, misprints: &[Misprint], cache: Option<&WeightCache>) -> Result<TableCheck, VerifyError> {
    let computed = triples_of(&pweights(&fixture.source, fixture.horizon, cache).value);
    let oracle = orbit_bruteforce(&fixture.source, fixture.horizon)?.triples(false);
    let mine: Vec<&Misprint> = misprints.iter().filter(|m| m.table == fixture.name).collect();
    let mut problems = Vec::new();
    let mut expected = BTreeSet::new();
    let mut allowlisted = 0;
    for token in &fixture.tokens {
        if let Some(m) = mine.iter().find(|m| &m.printed == token) {
            allowlisted += 1;
            if let Some(c) = &m.corrected {
                match parse_token(c) {
                    Some(t) => {
                        expected.insert(t);
                    }
                    None => problems.push(format!("unreadable correction {c}")),
                }
            }
            continue;
        }
        match parse_token(token) {
            Some(t) => {
                expected.insert(t);
            }
            None => problems.push(format!("unreadable token {token}")),
        }
    }
    for m in &mine {
        if !fixture.tokens.contains(&m.printed) {
            problems.push(format!("allowlisted {} does not occur in the table", m.printed));
        }
        if let Some(t) = parse_token(&m.printed) {
            if oracle.contains(&t) {
                problems.push(format!("allowlisted {} is confirmed by the oracle", m.printed));
            }
        }
        if let Some(t) = m.corrected.as_deref().and_then(parse_token) {
            if !oracle.contains(&t) {
                problems.push(format!("correction {} is not confirmed by the oracle", t.weight.display_with_depth(t.depth)));
            }
        }
    }
    let table_diff = DiffReport::compare("table", &expected, &computed);
    problems.extend(table_diff.only_oracle.iter().map(|t| format!("table only:    {t}")));
    problems.extend(table_diff.only_main.iter().map(|t| format!("computed only: {t}")));
    let oracle_diff = DiffReport::compare("oracle", &oracle, &computed);
    problems.extend(oracle_diff.only_oracle.iter().map(|t| format!("oracle only:   {t}")));
    problems.extend(oracle_diff.only_main.iter().map(|t| format!("not in orbit:  {t}")));
    Ok(TableCheck { name: fixture.name.clone(), entries: fixture.tokens.len(), allowlisted, problems })
}

/// Every label vector of rank `n` and level `1 … max_level`.
pub fn dominant_weights(n: usize, max_level: u32) -> Vec<AffineDominant> {
    fn go(n1: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n1 {
            out.push(cur.clone());
            return;
        }
        for a in 0..=budget {
            cur.push(a);
            go(n1, budget - a, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(n + 1, max_level, &mut Vec::new(), &mut raw);
    raw.into_iter().filter_map(|l| AffineDominant::new(l).ok()).collect()
}

/// `pweights` against the oracle for ranks `1 … max_rank`, levels
/// `1 … max_level`; returns the reports with differences.
pub fn oracle_suite(max_rank: usize, max_level: u32, horizon: u32) -> Result<(usize, Vec<DiffReport>), VerifyError> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 1..=max_rank {
        for source in dominant_weights(n, max_level) {
            let main = triples_of(&pweights(&source, horizon, None).value);
            let oracle = orbit_bruteforce(&source, horizon)?.triples(false);
            let report = DiffReport::compare(format!("A{n} {source}"), &oracle, &main);
            checked += 1;
            if !report.is_clean() {
                failures.push(report);
            }
        }
    }
    Ok((checked, failures))
}

#[derive(Debug, Clone, Default)]
pub struct SignatureSuite {
    pub sources: usize,
    pub weights: usize,
    /// Members of the main path whose signature is 0.
    pub zero_signatures: usize,
    /// Disagreements of the default convention with the oracle.
    pub problems: Vec<String>,
    /// `(convention, agreements, disagreements)`.
    pub agreement: Vec<(SignatureConvention, usize, usize)>,
}

impl SignatureSuite {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Signatures of every strictly dominant source of rank `≤ max_rank` and
/// level `≤ N + 3` against the oracle's sort parities.
pub fn signature_suite(max_rank: usize, horizon: u32) -> Result<SignatureSuite, VerifyError> {
    let mut out = SignatureSuite {
        agreement: SignatureConvention::ALL.iter().map(|&c| (c, 0, 0)).collect(),
        ..Default::default()
    };
    for n in 1..=max_rank {
        for source in dominant_weights(n, n as u32 + 3).into_iter().filter(AffineDominant::is_strictly_dominant) {
            out.sources += 1;
            let oracle = orbit_bruteforce(&source, horizon)?;
            let main = pweights(&source, horizon, None).value;
            for (d, w) in main.iter() {
                out.weights += 1;
                let want = oracle.sign_of(w, d);
                let got = signature_index(w, &source, SignatureConvention::SourceAligned).ok();
                if got == Some(0) {
                    out.zero_signatures += 1;
                }
                for (conv, ok, bad) in out.agreement.iter_mut() {
                    if signature_index(w, &source, *conv).ok() == want {
                        *ok += 1;
                    } else {
                        *bad += 1;
                    }
                }
                if got != want {
                    out.problems.push(format!(
                        "A{n} {source} {}: signature {got:?}, oracle {want:?}",
                        w.display_with_depth(d)
                    ));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_loads() {
        let f = bundled_fixtures();
        assert_eq!(f.len(), 9);
        let sizes: Vec<usize> = f.iter().map(|f| f.tokens.len()).collect();
        assert_eq!(sizes, vec![28, 30, 33, 32, 27, 57, 33, 55, 28]);
        assert!(f[2].tokens.contains(&"(,4,2,1,1,0)_5".to_string()));
        assert_eq!(bundled_misprints().len(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_fixture("x", "horizon: 2\n(0)_0").is_err());
        assert!(parse_fixture("x", "source: 1,0\n(0)_0").is_err());
        let f = parse_fixture("x", "# c\nsource: 1,0\nhorizon: 1\n(0)_0 (2)_1\n").unwrap();
        assert_eq!(f.tokens, vec!["(0)_0", "(2)_1"]);
    }

    #[test]
    fn small_tables() {
        let f = bundled_fixtures();
        let ms = bundled_misprints();
        let l0 = check_table(&f[0], &ms, None).unwrap();
        assert!(l0.passed(), "{l0}");
        let l2 = check_table(&f[2], &ms, None).unwrap();
        assert!(l2.passed(), "{l2}");
        assert_eq!(l2.allowlisted, 1);
    }

    #[test]
    fn corrupted_fixture_is_reported() {
        let mut f = bundled_fixtures().remove(0);
        f.tokens[3] = "(3,3,2,2,1)_3".into();
        let check = check_table(&f, &bundled_misprints(), None).unwrap();
        assert!(!check.passed());
        assert!(check.to_string().contains("table only:    (3,3,2,2,1)_3"), "{check}");
        assert!(check.to_string().contains("computed only: (3,3,2,2,2)_3"), "{check}");
    }

    #[test]
    fn stale_allowlist_entry_is_reported() {
        let f = bundled_fixtures().remove(0);
        let ms = vec![Misprint { table: "L0".into(), printed: "(2,1,1,1,1)_1".into(), corrected: None, note: String::new() }];
        let check = check_table(&f, &ms, None).unwrap();
        assert!(check.problems.iter().any(|p| p.contains("confirmed by the oracle")));
    }

    #[test]
    fn small_suites() {
        let (checked, failures) = oracle_suite(2, 2, 3).unwrap();
        assert!(checked > 0);
        assert!(failures.is_empty(), "{failures:?}");
        let sig = signature_suite(2, 3).unwrap();
        assert!(sig.passed(), "{:?}", sig.problems);
        assert_eq!(sig.zero_signatures, 0);
    }
}
