//! Report structures: one struct per command, each with a stable JSON form
//! (the contract for machine consumers) and a plain-text rendering.

use incex::{CancellationFamily, ComputationResult, IndexUniverse, IntPolynomial};
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct PolynomialReport {
    pub display: String,
    /// Lowest degree first.
    pub coefficients: Vec<i64>,
}

impl PolynomialReport {
    pub fn new(p: &IntPolynomial) -> Self {
        PolynomialReport { display: p.to_string(), coefficients: p.coeffs().to_vec() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub b: Vec<String>,
    pub b_star: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<u64>,
}

pub fn family_report(
    universe: &IndexUniverse,
    family: &CancellationFamily,
    excluded: Option<&[u128]>,
) -> Vec<PairReport> {
    family
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, pair)| PairReport {
            b: universe.mask_labels(pair.b_set()),
            b_star: universe.mask_labels(pair.b_star()),
            excluded: excluded.map(|counts| as_u64(counts[i])),
        })
        .collect()
}

/// Enumeration caps keep term counts below 2^63, so this cannot truncate.
pub fn as_u64(count: u128) -> u64 {
    u64::try_from(count).expect("term counts stay within u64 under the enumeration cap")
}

#[derive(Debug, Serialize)]
pub struct ComputeReport {
    pub command: &'static str,
    pub polynomial_kind: String,
    pub method: String,
    pub family_size: usize,
    pub terms_evaluated: u64,
    pub terms_total: u64,
    pub polynomial: PolynomialReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<PairReport>>,
}

impl ComputeReport {
    pub fn new(
        kind: incex::PolyKind,
        result: &ComputationResult<i64>,
        family: Option<Vec<PairReport>>,
    ) -> Self {
        ComputeReport {
            command: "compute",
            polynomial_kind: kind.to_string(),
            method: result.method.to_string(),
            family_size: result.family_size,
            terms_evaluated: as_u64(result.terms_evaluated),
            terms_total: as_u64(result.terms_total),
            polynomial: PolynomialReport::new(&result.polynomial),
            family,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "polynomial: {}", self.polynomial_kind);
        let _ = writeln!(out, "method: {}", self.method);
        let _ = writeln!(out, "family size: {}", self.family_size);
        let _ = writeln!(out, "terms: {}/{}", self.terms_evaluated, self.terms_total);
        let _ = writeln!(out, "result: {}", self.polynomial.display);
        let _ = write!(out, "coefficients: {}", coeff_list(&self.polynomial.coefficients));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct DiscoverReport {
    pub command: &'static str,
    pub polynomial_kind: String,
    pub method_tag: String,
    pub pairs: Vec<PairReport>,
    pub excluded_total: u64,
    pub terms_total: u64,
}

impl DiscoverReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "polynomial: {}", self.polynomial_kind);
        if self.pairs.is_empty() {
            let _ = writeln!(out, "no pairs found");
        } else {
            let _ = writeln!(out, "pairs:");
            for (i, pair) in self.pairs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {}: B={{{}}}, B*={{{}}}  excludes {}",
                    i + 1,
                    pair.b.join(", "),
                    pair.b_star.join(", "),
                    pair.excluded.unwrap_or(0),
                );
            }
        }
        let _ = write!(out, "excluded total: {} of {} subsets", self.excluded_total, self.terms_total);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CompareRow {
    pub method: String,
    pub family_size: usize,
    pub terms_evaluated: u64,
    pub terms_total: u64,
    pub polynomial: PolynomialReport,
}

impl CompareRow {
    pub fn new(result: &ComputationResult<i64>) -> Self {
        CompareRow {
            method: result.method.to_string(),
            family_size: result.family_size,
            terms_evaluated: as_u64(result.terms_evaluated),
            terms_total: as_u64(result.terms_total),
            polynomial: PolynomialReport::new(&result.polynomial),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    pub command: &'static str,
    pub polynomial_kind: String,
    pub rows: Vec<CompareRow>,
    pub agreement: bool,
}

impl CompareReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "polynomial: {}", self.polynomial_kind);
        let _ = writeln!(out, "{:<8} {:>12}  result", "method", "terms");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:<8} {:>12}  {}",
                row.method,
                format!("{}/{}", row.terms_evaluated, row.terms_total),
                row.polynomial.display,
            );
        }
        let _ = write!(out, "agreement: {}", if self.agreement { "ok" } else { "MISMATCH" });
        out
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub engine: i64,
    pub oracle: i64,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub polynomial_kind: String,
    /// What was compared, e.g. `k=0..4` or `coefficients by set size`.
    pub scope: String,
    pub checks: Vec<VerifyCheck>,
    pub ok: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "polynomial: {}", self.polynomial_kind);
        for check in &self.checks {
            let _ = writeln!(
                out,
                "  {}: engine {}, oracle {}  {}",
                check.name,
                check.engine,
                check.oracle,
                if check.ok { "ok" } else { "MISMATCH" },
            );
        }
        let _ = write!(
            out,
            "{}",
            if self.ok {
                format!("verified at {}", self.scope)
            } else {
                format!("verification FAILED at {}", self.scope)
            }
        );
        out
    }
}

fn coeff_list(coeffs: &[i64]) -> String {
    let items: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", items.join(", "))
}
