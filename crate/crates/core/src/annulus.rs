//! Curve bookkeeping for the n-twist annulus modification.
//!
//! The modification cuts a tubular neighborhood of an embedded annulus out
//! of a 4-manifold and reglues it by an automorphism of the torus
//! cross-sections. Everything computable about that regluing lives here:
//! the automorphism matrix itself, the induced identifications of
//! longitude/meridian classes at the two ends of the neighborhood, and the
//! pair of rational surgery coefficients that describe the modified
//! boundary as surgery on the two annulus boundary curves. All of it is
//! small exact integer linear algebra; the geometry that justifies it is
//! out of scope on purpose.

use serde::Serialize;
use thiserror::Error;

use crate::surgery::{SurgeryCoefficient, SurgeryError};

/// Errors from annulus-modification bookkeeping.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnnulusError {
    #[error("matrix entries overflowed the machine integer range")]
    Overflow,
    #[error("torus automorphism must have determinant ±1, found {0}")]
    NotUnimodular(i128),
    #[error("epsilon must be +1 or -1, found {0}")]
    BadEpsilon(i64),
    #[error(transparent)]
    Coefficient(#[from] SurgeryError),
}

/// Parameters of an n-twist annulus modification: the linking number `l`
/// of the two annulus boundary curves and the twist count `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnnulusModSpec {
    pub l: i64,
    pub n: i64,
}

/// An automorphism of the torus, as a matrix with determinant ±1 acting on
/// `(longitude, meridian)` coordinate columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorusAutomorphism([[i64; 2]; 2]);

impl TorusAutomorphism {
    /// Validates unimodularity.
    pub fn new(matrix: [[i64; 2]; 2]) -> Result<Self, AnnulusError> {
        let [[a, b], [c, d]] = matrix;
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 && det != -1 {
            return Err(AnnulusError::NotUnimodular(det));
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.0
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        // Entries were validated, so the product fits after the fact.
        ((a as i128 * d as i128 - b as i128 * c as i128) as i64).signum()
    }

    /// Image of the coordinate column `(a, b)`.
    fn apply(&self, a: i64, b: i64) -> Result<(i128, i128), AnnulusError> {
        let [[m00, m01], [m10, m11]] = self.0;
        Ok((
            m00 as i128 * a as i128 + m01 as i128 * b as i128,
            m10 as i128 * a as i128 + m11 as i128 * b as i128,
        ))
    }
}

/// The ends of the excised annulus neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnnulusEnd {
    Zero,
    One,
}

/// An integer curve class `a·λ + b·μ` on the boundary torus at one end of
/// the annulus neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub longitude: i64,
    pub meridian: i64,
    pub end: AnnulusEnd,
}

impl CurveClass {
    pub fn new(longitude: i64, meridian: i64, end: AnnulusEnd) -> Self {
        Self { longitude, meridian, end }
    }
}

/// The regluing automorphism of the n-twist modification:
/// the longitude maps to the longitude plus `l` meridians, the meridian to
/// `n` longitudes plus `nl + 1` meridians.
pub fn rho(spec: AnnulusModSpec) -> Result<TorusAutomorphism, AnnulusError> {
    let nl1 = spec.n as i128 * spec.l as i128 + 1;
    let nl1 = i64::try_from(nl1).map_err(|_| AnnulusError::Overflow)?;
    let m = TorusAutomorphism::new([[1, spec.n], [spec.l, nl1]])?;
    debug_assert_eq!(m.det(), 1);
    Ok(m)
}

/// The four identifications the regluing induces on basis curves: at each
/// end, where the old longitude and meridian land, written in that end's
/// own `(λ, μ)` frame.
///
/// At end 0 the frame is the image coordinates themselves. At end 1 the
/// pre-gluing identifications are `longitude = λ + 2l·μ` and
/// `meridian = -μ`, so an image `a·longitude + b·meridian` reads
/// `a·λ + (2l·a - b)·μ` in the end-1 frame.
pub fn gluing_images(
    spec: AnnulusModSpec,
) -> Result<Vec<(CurveClass, CurveClass)>, AnnulusError> {
    let auto = rho(spec)?;
    let mut table = Vec::with_capacity(4);
    for end in [AnnulusEnd::Zero, AnnulusEnd::One] {
        for (a, b) in [(1i64, 0i64), (0, 1)] {
            let (ia, ib) = auto.apply(a, b)?;
            let (fa, fb) = match end {
                AnnulusEnd::Zero => (ia, ib),
                AnnulusEnd::One => (ia, 2 * spec.l as i128 * ia - ib),
            };
            let image = CurveClass::new(
                i64::try_from(fa).map_err(|_| AnnulusError::Overflow)?,
                i64::try_from(fb).map_err(|_| AnnulusError::Overflow)?,
                end,
            );
            table.push((CurveClass::new(a, b, end), image));
        }
    }
    Ok(table)
}

/// The surgery description of the modified boundary: coefficients on the
/// two annulus boundary curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundaryInstructions {
    pub eta1: SurgeryCoefficient,
    pub eta2: SurgeryCoefficient,
}

/// Coefficients `(nl+1)/n` on the first boundary curve and `(nl-1)/n` on
/// the second. `n = 0` is the identity modification, so both coefficients
/// degenerate to `∞`.
pub fn boundary_instructions(spec: AnnulusModSpec) -> Result<BoundaryInstructions, AnnulusError> {
    let n = spec.n as i128;
    let nl = spec.n as i128 * spec.l as i128;
    Ok(BoundaryInstructions {
        eta1: SurgeryCoefficient::from_wide(nl + 1, n)?,
        eta2: SurgeryCoefficient::from_wide(nl - 1, n)?,
    })
}

/// The n-fold annulus twist on an annulus presentation of sign `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnnulusTwist {
    pub eta1: SurgeryCoefficient,
    pub eta2: SurgeryCoefficient,
    /// Linking number of the two boundary curves: `-ε`.
    pub lk: i64,
}

/// Surgery description of the n-fold annulus twist: `(-nε+1)/n` and
/// `(-nε-1)/n` on the boundary curves, whose linking number is `-ε`. This
/// is exactly the modification with `l = -ε`.
pub fn annulus_twist_family(epsilon: i64, n: i64) -> Result<AnnulusTwist, AnnulusError> {
    if epsilon != 1 && epsilon != -1 {
        return Err(AnnulusError::BadEpsilon(epsilon));
    }
    let n_wide = n as i128;
    let twist = AnnulusTwist {
        eta1: SurgeryCoefficient::from_wide(-n_wide * epsilon as i128 + 1, n_wide)?,
        eta2: SurgeryCoefficient::from_wide(-n_wide * epsilon as i128 - 1, n_wide)?,
        lk: -epsilon,
    };
    debug_assert_eq!(
        boundary_instructions(AnnulusModSpec { l: -epsilon, n })?,
        BoundaryInstructions { eta1: twist.eta1, eta2: twist.eta2 }
    );
    Ok(twist)
}

/// Outcome of the 0-standardness certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardCertificate {
    /// The pair of boundary curves is 0-standard.
    ZeroStandard,
    /// The criterion does not apply; nothing is concluded either way.
    NotApplicable,
}

impl std::fmt::Display for StandardCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StandardCertificate::ZeroStandard => write!(f, "0-standard certified"),
            StandardCertificate::NotApplicable => write!(f, "criterion not applicable"),
        }
    }
}

/// Morse-theoretic certificate for 0-standardness of the boundary-curve
/// pair: it applies exactly when the curves are unlinked (`l = 0`) and the
/// annulus has one critical point of index one and one of index two. Any
/// other input is merely outside the criterion — never "not standard".
pub fn certify_standard(
    l: i64,
    index1_count: u32,
    index2_count: u32,
) -> StandardCertificate {
    if l == 0 && index1_count == 1 && index2_count == 1 {
        StandardCertificate::ZeroStandard
    } else {
        StandardCertificate::NotApplicable
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(s: &str) -> SurgeryCoefficient {
        s.parse().unwrap()
    }

    #[test]
    fn rho_matrix_entries() {
        assert_eq!(
            rho(AnnulusModSpec { l: 1, n: 1 }).unwrap().matrix(),
            [[1, 1], [1, 2]]
        );
        for l in -5..=5 {
            assert_eq!(
                rho(AnnulusModSpec { l, n: 0 }).unwrap().matrix(),
                [[1, 0], [l, 1]]
            );
        }
    }

    #[test]
    fn rho_is_always_unimodular() {
        for l in -10..=10 {
            for n in -10..=10 {
                let auto = rho(AnnulusModSpec { l, n }).unwrap();
                assert_eq!(auto.det(), 1, "(l, n) = ({l}, {n})");
            }
        }
    }

    #[test]
    fn automorphism_validation() {
        assert!(TorusAutomorphism::new([[2, 0], [0, 1]]).is_err());
        assert_eq!(
            TorusAutomorphism::new([[3, 1], [2, 1]]).unwrap().det(),
            1
        );
        // Determinant -1 is a legal automorphism, just not a twist matrix.
        assert_eq!(
            TorusAutomorphism::new([[0, 1], [1, 0]]).unwrap().det(),
            -1
        );
    }

    #[test]
    fn gluing_images_match_the_frame_algebra() {
        let table = gluing_images(AnnulusModSpec { l: 2, n: 3 }).unwrap();
        let coords: Vec<(i64, i64)> = table
            .iter()
            .map(|(_, img)| (img.longitude, img.meridian))
            .collect();
        // End 0: λ ↦ λ + lμ, μ ↦ nλ + (nl+1)μ.
        // End 1: λ ↦ λ + lμ, μ ↦ nλ + (nl-1)μ.
        assert_eq!(coords, vec![(1, 2), (3, 7), (1, 2), (3, 5)]);
        let sources: Vec<(i64, i64, AnnulusEnd)> = table
            .iter()
            .map(|(src, _)| (src.longitude, src.meridian, src.end))
            .collect();
        assert_eq!(
            sources,
            vec![
                (1, 0, AnnulusEnd::Zero),
                (0, 1, AnnulusEnd::Zero),
                (1, 0, AnnulusEnd::One),
                (0, 1, AnnulusEnd::One),
            ]
        );
    }

    #[test]
    fn zero_twists_fix_the_meridians() {
        let table = gluing_images(AnnulusModSpec { l: 7, n: 0 }).unwrap();
        // End-0 meridian is fixed by the identity twist.
        assert_eq!(table[1].1, CurveClass::new(0, 1, AnnulusEnd::Zero));
    }

    #[test]
    fn gluing_images_formulas_hold_generally() {
        for l in [-9, -2, 0, 1, 5, 10] {
            for n in [-10, -3, 0, 2, 8] {
                let table = gluing_images(AnnulusModSpec { l, n }).unwrap();
                let get = |i: usize| (table[i].1.longitude, table[i].1.meridian);
                assert_eq!(get(0), (1, l));
                assert_eq!(get(1), (n, n * l + 1));
                assert_eq!(get(2), (1, l));
                assert_eq!(get(3), (n, n * l - 1));
            }
        }
    }

    #[test]
    fn boundary_instruction_coefficients() {
        let b = boundary_instructions(AnnulusModSpec { l: 0, n: 1 }).unwrap();
        assert_eq!((b.eta1, b.eta2), (coeff("1"), coeff("-1")));
        for n in [-4, -1, 2, 5] {
            let b = boundary_instructions(AnnulusModSpec { l: 0, n }).unwrap();
            assert_eq!(b.eta1, SurgeryCoefficient::new(1, n).unwrap());
            assert_eq!(b.eta2, SurgeryCoefficient::new(-1, n).unwrap());
        }
        let b = boundary_instructions(AnnulusModSpec { l: 2, n: 3 }).unwrap();
        assert_eq!((b.eta1, b.eta2), (coeff("7/3"), coeff("5/3")));
        // n = 0 is the identity modification: trivial surgery on both.
        for l in [-3, 0, 9] {
            let b = boundary_instructions(AnnulusModSpec { l, n: 0 }).unwrap();
            assert_eq!(b.eta1, SurgeryCoefficient::INFINITY);
            assert_eq!(b.eta2, SurgeryCoefficient::INFINITY);
        }
    }

    #[test]
    fn twist_family_is_the_linking_specialization() {
        // ε = -1: coefficients (n+1)/n and (n-1)/n, linking number +1.
        for n in [-5, -1, 1, 3] {
            let t = annulus_twist_family(-1, n).unwrap();
            assert_eq!(t.eta1, SurgeryCoefficient::new(n + 1, n).unwrap());
            assert_eq!(t.eta2, SurgeryCoefficient::new(n - 1, n).unwrap());
            assert_eq!(t.lk, 1);
            let b = boundary_instructions(AnnulusModSpec { l: 1, n }).unwrap();
            assert_eq!((t.eta1, t.eta2), (b.eta1, b.eta2));
        }
        let t = annulus_twist_family(1, 1).unwrap();
        assert_eq!((t.eta1, t.eta2, t.lk), (coeff("0"), coeff("-2"), -1));
        let t = annulus_twist_family(1, 0).unwrap();
        assert!(t.eta1.is_infinity() && t.eta2.is_infinity());
        assert_eq!(
            annulus_twist_family(2, 1),
            Err(AnnulusError::BadEpsilon(2))
        );
    }

    #[test]
    fn standardness_certificate() {
        assert_eq!(certify_standard(0, 1, 1), StandardCertificate::ZeroStandard);
        assert_eq!(certify_standard(1, 1, 1), StandardCertificate::NotApplicable);
        assert_eq!(certify_standard(0, 2, 1), StandardCertificate::NotApplicable);
        assert_eq!(certify_standard(0, 1, 2), StandardCertificate::NotApplicable);
        assert_eq!(certify_standard(0, 0, 0), StandardCertificate::NotApplicable);
        assert_eq!(
            StandardCertificate::ZeroStandard.to_string(),
            "0-standard certified"
        );
        assert_eq!(
            StandardCertificate::NotApplicable.to_string(),
            "criterion not applicable"
        );
    }

    #[test]
    fn instruction_wire_form() {
        let b = boundary_instructions(AnnulusModSpec { l: 1, n: 1 }).unwrap();
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"eta1":"2","eta2":"0"}"#
        );
    }
}
