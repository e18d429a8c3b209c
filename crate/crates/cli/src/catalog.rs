//! The bundled example catalog: the concrete knots whose invariants the
//! `verify` subcommand re-derives end to end.
//!
//! Matrices are stored in their unvalidated wire form on purpose: a broken
//! catalog file should load, then fail verification with a readable report
//! row, not die in the JSON parser. Only structurally malformed JSON is a
//! load error.

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::{Deserialize, Serialize};

use knotkit::laurent::LaurentPoly;
use knotkit::seifert::{HomologyClass, RawSeifertMatrix};

/// The catalog bundled into the binary at build time.
const BUNDLED: &str = include_str!("../data/catalog.json");

/// A set of example knots with their literature data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

/// One knot: whatever mix of matrix, claimed polynomials, derivative
/// curves, and annulus-presentation data the literature provides for it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert_matrix: Option<RawSeifertMatrix>,
    /// The knot's own Alexander polynomial, as claimed by the source.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander_claimed: Option<LaurentPoly>,
    /// Derivative curves on the Seifert surface, each with its own claimed
    /// polynomial where the source states one.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derivatives: Vec<DerivativeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annulus_presentation: Option<AnnulusPresentation>,
    /// Whether the source asserts the knot is smoothly slice; slice knots
    /// must pass every obstruction this toolkit can compute.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub slice_claimed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Which of the entry's numbers are literature values and which are
    /// recomputed.
    pub provenance_note: String,
}

/// A derivative curve: its homology class on the surface and, when stated,
/// its own Alexander polynomial (not derivable from the surface matrix).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivativeEntry {
    pub class: HomologyClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander_claimed: Option<LaurentPoly>,
    /// The curve's knot determinant `|Δ(-1)|`, when the source states it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant_claimed: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// An oriented annulus presentation, recorded by its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusPresentation {
    pub epsilon: i64,
}

impl Catalog {
    /// The compiled-in catalog. A parse failure here is a build defect, not
    /// an input error, hence the panic.
    pub fn bundled() -> Self {
        serde_json::from_str(BUNDLED).expect("bundled catalog is valid JSON")
    }

    /// Loads a catalog from disk, with file/line context on JSON errors.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read catalog file {}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| {
            anyhow!(
                "malformed catalog {} at line {}, column {}: {}",
                path.display(),
                e.line(),
                e.column(),
                e
            )
        })
    }

    pub fn lookup(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        if let Some(m) = &self.seifert_matrix {
            writeln!(f, "  seifert matrix (genus {}): {:?}", m.genus, m.entries)?;
        }
        if let Some(p) = &self.alexander_claimed {
            writeln!(f, "  alexander (claimed): {p}")?;
        }
        for d in &self.derivatives {
            write!(f, "  derivative {}", d.class)?;
            if let Some(p) = &d.alexander_claimed {
                write!(f, ": alexander (claimed) {p}")?;
            }
            writeln!(f)?;
            if let Some(n) = &d.note {
                writeln!(f, "    {n}")?;
            }
        }
        if let Some(a) = &self.annulus_presentation {
            writeln!(f, "  annulus presentation sign: {}", a.epsilon)?;
        }
        if let Some(n) = &self.note {
            writeln!(f, "  {n}")?;
        }
        write!(f, "  provenance: {}", self.provenance_note)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalog_has_the_expected_entries() {
        let c = Catalog::bundled();
        let names: Vec<&str> = c.entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, vec!["R", "R1", "8_20", "6_1"]);

        let r1 = c.lookup("R1").unwrap();
        assert_eq!(
            r1.seifert_matrix.as_ref().unwrap().entries,
            vec![vec![2, 0], vec![-1, -1]]
        );
        assert_eq!(r1.derivatives.len(), 2);
        assert_eq!(r1.derivatives[0].class.coords(), &[1, 1]);
        assert_eq!(r1.derivatives[1].class.coords(), &[1, -2]);

        assert_eq!(
            c.lookup("8_20").unwrap().annulus_presentation.unwrap().epsilon,
            -1
        );
        let six_one = c.lookup("6_1").unwrap();
        assert!(six_one.seifert_matrix.is_none());
        assert!(six_one.note.is_some());
        assert!(c.lookup("missing").is_none());
    }

    #[test]
    fn lookup_is_exact() {
        let c = Catalog::bundled();
        assert!(c.lookup("r1").is_none());
        assert!(c.lookup("R1 ").is_none());
    }
}
