//! Rational Dehn surgery bookkeeping: coefficients, diagrams, the linking
//! presentation of first homology, and the Rolfsen twist calculus.
//!
//! Two diagram flavors live here. [`AbstractDiagram`] records only what the
//! linking calculus needs — one coefficient per component plus the linking
//! matrix — and therefore cannot know whether a Rolfsen twist is
//! geometrically available; callers must certify the unknottedness and
//! through-strand data themselves. [`schema::SchemaDiagram`] is the closed
//! family of configurations used by the reduction scripts (two parallel
//! strands joined by a twist box, plus meridians); there the geometry is
//! part of the data and every move checks that it stays inside the family.

pub mod schema;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::det_bigint;

pub use schema::{
    reduce_figure6, ComponentId, DiagramSnapshot, MeridianTargets, Reduction, SchemaDiagram,
    SchemaDiagramWire, StrandId, TraceStep,
};

/// Errors produced by surgery-diagram operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("0/0 is not a surgery coefficient")]
    ZeroOverZero,
    #[error("coefficient arithmetic overflowed the machine integer range")]
    Overflow,
    #[error("cannot parse {0:?} as a surgery coefficient")]
    ParseCoefficient(String),
    #[error("linking matrix must be symmetric, square, and zero on the diagonal")]
    BadLinkingMatrix,
    #[error("component index {index} out of range for a {len}-component diagram")]
    ComponentOutOfRange { index: usize, len: usize },
    #[error("delete infinity-framed components before taking the linking presentation")]
    InfinityPresent,
    #[error("component is not infinity-framed")]
    NotInfinity,
    #[error("Rolfsen twist requires the component to be certified unknotted")]
    NotUnknotted,
    #[error("Rolfsen twist on an abstract diagram requires through-strand data")]
    ThroughDataMissing,
    #[error("through-strand data disagrees with the linking matrix")]
    ThroughDataInconsistent,
    #[error("twist would tangle the through-strands and leave the schema family")]
    SchemaFamilyViolation,
}

/// A rational surgery coefficient `p/q` in lowest terms with `q ≥ 0`;
/// `1/0` encodes `∞` (the empty surgery).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurgeryCoefficient {
    p: i64,
    q: i64,
}

impl SurgeryCoefficient {
    /// The empty surgery `∞ = 1/0`.
    pub const INFINITY: Self = Self { p: 1, q: 0 };

    /// Normalizes `p/q`: rejects `0/0`, clears signs into the numerator,
    /// reduces to lowest terms, and folds every `p/0` onto `1/0`.
    pub fn new(p: i64, q: i64) -> Result<Self, SurgeryError> {
        Self::from_wide(p as i128, q as i128)
    }

    /// An integer coefficient `k/1`.
    pub fn integer(k: i64) -> Self {
        Self { p: k, q: 1 }
    }

    pub(crate) fn from_wide(mut p: i128, mut q: i128) -> Result<Self, SurgeryError> {
        if p == 0 && q == 0 {
            return Err(SurgeryError::ZeroOverZero);
        }
        if q < 0 {
            p = -p;
            q = -q;
        }
        if q == 0 {
            return Ok(Self::INFINITY);
        }
        let g = num_integer::gcd(p, q);
        p /= g;
        q /= g;
        match (i64::try_from(p), i64::try_from(q)) {
            (Ok(p), Ok(q)) => Ok(Self { p, q }),
            _ => Err(SurgeryError::Overflow),
        }
    }

    pub fn numerator(&self) -> i64 {
        self.p
    }

    pub fn denominator(&self) -> i64 {
        self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    /// Effect of `t` Rolfsen twists on the twisted component itself:
    /// `p/q ↦ p/(q + t·p)`. In particular `∞ ↦ 1/t`.
    pub fn twist(&self, t: i64) -> Result<Self, SurgeryError> {
        Self::from_wide(self.p as i128, self.q as i128 + t as i128 * self.p as i128)
    }

    /// Adds an integer to the coefficient: `p/q ↦ (p + k·q)/q`. This is the
    /// framing change a strand picks up from a twist elsewhere; `∞` absorbs
    /// it unchanged.
    pub fn add_integer_wide(&self, k: i128) -> Result<Self, SurgeryError> {
        Self::from_wide(self.p as i128 + k * self.q as i128, self.q as i128)
    }

    pub fn add_integer(&self, k: i64) -> Result<Self, SurgeryError> {
        self.add_integer_wide(k as i128)
    }
}

impl fmt::Display for SurgeryCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for SurgeryCoefficient {
    type Err = SurgeryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Self::INFINITY);
        }
        let parse = |part: &str| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| SurgeryError::ParseCoefficient(s.to_string()))
        };
        match s.split_once('/') {
            Some((num, den)) => Self::new(parse(num)?, parse(den)?),
            None => Ok(Self::integer(parse(s)?)),
        }
    }
}

impl Serialize for SurgeryCoefficient {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SurgeryCoefficient {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One component of an [`AbstractDiagram`]: its coefficient and whether the
/// caller certifies it to be an unknot (a precondition for Rolfsen twists).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramComponent {
    pub coefficient: SurgeryCoefficient,
    pub unknotted: bool,
}

/// A surgery diagram reduced to its linking data: coefficients plus the
/// linking matrix. Geometry beyond that is the caller's responsibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractDiagram {
    components: Vec<DiagramComponent>,
    linking: Vec<Vec<i64>>,
}

impl AbstractDiagram {
    /// Validates the linking matrix: square of matching size, symmetric,
    /// zero diagonal.
    pub fn new(
        components: Vec<DiagramComponent>,
        linking: Vec<Vec<i64>>,
    ) -> Result<Self, SurgeryError> {
        let n = components.len();
        if linking.len() != n || linking.iter().any(|row| row.len() != n) {
            return Err(SurgeryError::BadLinkingMatrix);
        }
        for i in 0..n {
            if linking[i][i] != 0 {
                return Err(SurgeryError::BadLinkingMatrix);
            }
            for j in 0..i {
                if linking[i][j] != linking[j][i] {
                    return Err(SurgeryError::BadLinkingMatrix);
                }
            }
        }
        Ok(Self { components, linking })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[DiagramComponent] {
        &self.components
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    fn check_index(&self, i: usize) -> Result<(), SurgeryError> {
        if i >= self.len() {
            return Err(SurgeryError::ComponentOutOfRange { index: i, len: self.len() });
        }
        Ok(())
    }

    /// Presentation matrix of `H₁` of the surgered manifold: `A_ii = p_i`,
    /// `A_ij = q_i · lk(i, j)`. Rejects diagrams that still contain
    /// `∞`-framed components — delete those first, they change nothing.
    pub fn linking_presentation(&self) -> Result<Vec<Vec<i64>>, SurgeryError> {
        if self.components.iter().any(|c| c.coefficient.is_infinity()) {
            return Err(SurgeryError::InfinityPresent);
        }
        let n = self.len();
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    self.components[i].coefficient.numerator() as i128
                } else {
                    self.components[i].coefficient.denominator() as i128
                        * self.linking[i][j] as i128
                };
                a[i][j] = i64::try_from(v).map_err(|_| SurgeryError::Overflow)?;
            }
        }
        Ok(a)
    }

    /// A copy with every `∞`-framed component deleted.
    pub fn without_infinities(&self) -> Self {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| !self.components[i].coefficient.is_infinity())
            .collect();
        let components = keep.iter().map(|&i| self.components[i]).collect();
        let linking = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.linking[i][j]).collect())
            .collect();
        Self { components, linking }
    }

    /// Order of `H₁` of the surgered manifold: `|det|` of the linking
    /// presentation after deleting `∞` components. Zero means infinite.
    pub fn h1_order(&self) -> Result<BigInt, SurgeryError> {
        let cleaned = self.without_infinities();
        let a = cleaned.linking_presentation()?;
        let big: Vec<Vec<BigInt>> = a
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Ok(det_bigint(&big).abs())
    }

    /// Deletes component `i`, which must be `∞`-framed (surgery along `∞`
    /// is no surgery at all, so this never changes the manifold).
    pub fn delete_infinity(&self, i: usize) -> Result<Self, SurgeryError> {
        self.check_index(i)?;
        if !self.components[i].coefficient.is_infinity() {
            return Err(SurgeryError::NotInfinity);
        }
        let mut components = self.components.clone();
        components.remove(i);
        let linking = (0..self.len())
            .filter(|&r| r != i)
            .map(|r| {
                (0..self.len())
                    .filter(|&c| c != i)
                    .map(|c| self.linking[r][c])
                    .collect()
            })
            .collect();
        Ok(Self { components, linking })
    }

    /// Rolfsen twist with `t` full twists on component `i`, which must be
    /// certified unknotted. `through[j]` is the signed count of coherent
    /// passes of component `j` through the spanning disk of `i`; it must
    /// equal `lk(i, j)` and is demanded explicitly because an abstract
    /// diagram cannot see the geometry that justifies it.
    pub fn rolfsen_twist(
        &self,
        i: usize,
        t: i64,
        through: Option<&[i64]>,
    ) -> Result<Self, SurgeryError> {
        self.check_index(i)?;
        if !self.components[i].unknotted {
            return Err(SurgeryError::NotUnknotted);
        }
        let lambda = through.ok_or(SurgeryError::ThroughDataMissing)?;
        if lambda.len() != self.len() || lambda[i] != 0 {
            return Err(SurgeryError::ThroughDataInconsistent);
        }
        for j in 0..self.len() {
            if j != i && lambda[j] != self.linking[i][j] {
                return Err(SurgeryError::ThroughDataInconsistent);
            }
        }
        if t == 0 {
            return Ok(self.clone());
        }

        let mut components = self.components.clone();
        components[i].coefficient = components[i].coefficient.twist(t)?;
        for j in 0..self.len() {
            if j == i {
                continue;
            }
            let shift = t as i128 * lambda[j] as i128 * lambda[j] as i128;
            components[j].coefficient = components[j].coefficient.add_integer_wide(shift)?;
        }
        let mut linking = self.linking.clone();
        for j in 0..self.len() {
            for k in 0..self.len() {
                if j == k || j == i || k == i {
                    continue;
                }
                let v = linking[j][k] as i128
                    + t as i128 * lambda[j] as i128 * lambda[k] as i128;
                linking[j][k] = i64::try_from(v).map_err(|_| SurgeryError::Overflow)?;
            }
        }
        Self::new(components, linking)
    }
}

/// Wire form of one abstract-diagram component.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbstractComponentWire {
    pub r: SurgeryCoefficient,
    #[serde(default)]
    pub unknotted: bool,
}

/// Incoming diagram JSON: either the schema form
/// `{"schema": {"twist": …, "r1": …, "r2": …, "meridians": […]}}` or the
/// raw abstract form `{"components": […], "linking": [[…]]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DiagramInput {
    Schema { schema: SchemaDiagramWire },
    Abstract {
        components: Vec<AbstractComponentWire>,
        linking: Vec<Vec<i64>>,
    },
}

impl DiagramInput {
    /// The schema diagram, when this input is one.
    pub fn schema(&self) -> Option<SchemaDiagram> {
        match self {
            DiagramInput::Schema { schema } => Some(SchemaDiagram::from_wire(schema)),
            DiagramInput::Abstract { .. } => None,
        }
    }

    /// Both input forms induce an abstract diagram.
    pub fn to_abstract(&self) -> Result<AbstractDiagram, SurgeryError> {
        match self {
            DiagramInput::Schema { schema } => Ok(SchemaDiagram::from_wire(schema).to_abstract()),
            DiagramInput::Abstract { components, linking } => {
                let components = components
                    .iter()
                    .map(|c| DiagramComponent { coefficient: c.r, unknotted: c.unknotted })
                    .collect();
                AbstractDiagram::new(components, linking.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(s: &str) -> SurgeryCoefficient {
        s.parse().unwrap()
    }

    #[test]
    fn coefficient_normalization() {
        assert_eq!(SurgeryCoefficient::new(3, -2).unwrap(), coeff("-3/2"));
        assert_eq!(SurgeryCoefficient::new(4, 6).unwrap(), coeff("2/3"));
        assert_eq!(SurgeryCoefficient::new(-5, 0).unwrap(), SurgeryCoefficient::INFINITY);
        assert_eq!(SurgeryCoefficient::new(0, 7).unwrap(), coeff("0"));
        assert_eq!(SurgeryCoefficient::new(0, 0), Err(SurgeryError::ZeroOverZero));
    }

    #[test]
    fn coefficient_display_and_parse() {
        assert_eq!(coeff("7/3").to_string(), "7/3");
        assert_eq!(coeff("-2").to_string(), "-2");
        assert_eq!(coeff("inf").to_string(), "inf");
        assert_eq!(coeff("4/-6").to_string(), "-2/3");
        assert!("1/x".parse::<SurgeryCoefficient>().is_err());
        assert!("".parse::<SurgeryCoefficient>().is_err());
    }

    #[test]
    fn twist_formula() {
        // ∞ ↦ 1/t
        assert_eq!(SurgeryCoefficient::INFINITY.twist(-2).unwrap(), coeff("-1/2"));
        assert_eq!(coeff("7/3").twist(-2).unwrap(), coeff("-7/11"));
        let r = coeff("5/3");
        assert_eq!(r.twist(0).unwrap(), r);
        // A twist and its inverse restore the coefficient exactly.
        for (p, q, t) in [(7, 3, -2), (1, 0, 5), (-4, 9, 3), (0, 1, 2)] {
            let r = SurgeryCoefficient::new(p, q).unwrap();
            assert_eq!(r.twist(t).unwrap().twist(-t).unwrap(), r);
        }
    }

    #[test]
    fn integer_shifts_leave_infinity_alone() {
        assert_eq!(SurgeryCoefficient::INFINITY.add_integer(5).unwrap(), SurgeryCoefficient::INFINITY);
        assert_eq!(coeff("-1/2").add_integer(-3).unwrap(), coeff("-7/2"));
    }

    fn two_component(r1: &str, r2: &str, lk: i64) -> AbstractDiagram {
        AbstractDiagram::new(
            vec![
                DiagramComponent { coefficient: coeff(r1), unknotted: true },
                DiagramComponent { coefficient: coeff(r2), unknotted: true },
            ],
            vec![vec![0, lk], vec![lk, 0]],
        )
        .unwrap()
    }

    #[test]
    fn linking_presentation_of_the_boundary_check() {
        // Coefficients 2 and 0 on a link with linking number 1.
        let d = two_component("2", "0", 1);
        assert_eq!(d.linking_presentation().unwrap(), vec![vec![2, 1], vec![1, 0]]);
        assert_eq!(d.h1_order().unwrap(), BigInt::from(1));
    }

    #[test]
    fn linking_presentation_of_the_twist_family() {
        // (n, l) = (3, 2): coefficients 7/3 and 5/3, linking number 2.
        let d = two_component("7/3", "5/3", 2);
        assert_eq!(d.linking_presentation().unwrap(), vec![vec![7, 6], vec![6, 5]]);
        assert_eq!(d.h1_order().unwrap(), BigInt::from(1));
    }

    #[test]
    fn zero_framed_unknot_has_infinite_h1() {
        let d = AbstractDiagram::new(
            vec![DiagramComponent { coefficient: coeff("0"), unknotted: true }],
            vec![vec![0]],
        )
        .unwrap();
        assert_eq!(d.h1_order().unwrap(), BigInt::from(0));
    }

    #[test]
    fn presentation_rejects_infinity_components() {
        let d = two_component("inf", "2", 1);
        assert_eq!(d.linking_presentation(), Err(SurgeryError::InfinityPresent));
        // But deleting them first gives the honest answer.
        assert_eq!(d.h1_order().unwrap(), BigInt::from(2));
    }

    #[test]
    fn linking_matrix_is_validated() {
        let bad = AbstractDiagram::new(
            vec![DiagramComponent { coefficient: coeff("1"), unknotted: true }],
            vec![vec![1]],
        );
        assert_eq!(bad, Err(SurgeryError::BadLinkingMatrix));
        let asym = AbstractDiagram::new(
            vec![
                DiagramComponent { coefficient: coeff("1"), unknotted: true },
                DiagramComponent { coefficient: coeff("1"), unknotted: true },
            ],
            vec![vec![0, 1], vec![2, 0]],
        );
        assert_eq!(asym, Err(SurgeryError::BadLinkingMatrix));
    }

    #[test]
    fn abstract_twist_needs_certified_data() {
        let d = two_component("7/3", "5/3", 2);
        assert_eq!(
            d.rolfsen_twist(0, 1, None),
            Err(SurgeryError::ThroughDataMissing)
        );
        assert_eq!(
            d.rolfsen_twist(0, 1, Some(&[0, 5])),
            Err(SurgeryError::ThroughDataInconsistent)
        );
        let mut knotted = d.clone();
        knotted.components[0].unknotted = false;
        assert_eq!(
            knotted.rolfsen_twist(0, 1, Some(&[0, 2])),
            Err(SurgeryError::NotUnknotted)
        );
    }

    #[test]
    fn abstract_twist_matches_the_hand_computation() {
        // Three components: the twist-region pair plus an ∞ meridian
        // linking both strands once; (n, l) = (3, 2).
        let d = AbstractDiagram::new(
            vec![
                DiagramComponent { coefficient: coeff("7/3"), unknotted: true },
                DiagramComponent { coefficient: coeff("5/3"), unknotted: true },
                DiagramComponent { coefficient: coeff("inf"), unknotted: true },
            ],
            vec![vec![0, 2, 1], vec![2, 0, 1], vec![1, 1, 0]],
        )
        .unwrap();
        let h_before = d.h1_order().unwrap();
        // -2 twists on the meridian unwind the twist box.
        let after = d.rolfsen_twist(2, -2, Some(&[1, 1, 0])).unwrap();
        assert_eq!(after.components()[0].coefficient, coeff("1/3"));
        assert_eq!(after.components()[1].coefficient, coeff("-1/3"));
        assert_eq!(after.components()[2].coefficient, coeff("-1/2"));
        assert_eq!(after.linking()[0][1], 0);
        assert_eq!(after.h1_order().unwrap(), h_before);
        // The inverse twist restores the diagram exactly.
        let back = after.rolfsen_twist(2, 2, Some(&[1, 1, 0])).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn delete_infinity_guards() {
        let d = two_component("inf", "2", 1);
        let cleaned = d.delete_infinity(0).unwrap();
        assert_eq!(cleaned.len(), 1);
        assert_eq!(d.delete_infinity(1), Err(SurgeryError::NotInfinity));
        assert!(matches!(
            d.delete_infinity(5),
            Err(SurgeryError::ComponentOutOfRange { .. })
        ));
    }

    #[test]
    fn diagram_input_accepts_both_wire_forms() {
        let schema: DiagramInput = serde_json::from_str(
            r#"{"schema": {"twist": 2, "r1": "7/3", "r2": "5/3",
                "meridians": [{"r": "inf", "targets": "both"}]}}"#,
        )
        .unwrap();
        let d = schema.to_abstract().unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.linking()[0][1], 2);
        assert_eq!(d.linking()[0][2], 1);

        let raw: DiagramInput = serde_json::from_str(
            r#"{"components": [{"r": "2", "unknotted": true}, {"r": "0"}],
                "linking": [[0, 1], [1, 0]]}"#,
        )
        .unwrap();
        let d = raw.to_abstract().unwrap();
        assert_eq!(d.h1_order().unwrap(), BigInt::from(1));
        assert!(raw.schema().is_none());
    }
}
