//! Seifert matrices and the concordance invariants they carry.
//!
//! A Seifert matrix here is any square integer matrix `M` of even dimension
//! `2g` with `det(M - Mᵀ) = 1`, i.e. the bilinear Seifert form of a genus-g
//! surface expressed in some basis. From it we compute the Alexander
//! polynomial `det(M - tMᵀ)` (canonicalized), the signature of `M + Mᵀ` by
//! exact congruence diagonalization, the knot determinant `|Δ(-1)|`, the
//! Arf invariant via the determinant-mod-8 congruence, and metabolizers:
//! half-rank direct summands on which the Seifert pairing vanishes
//! identically — the algebraic shadow of sliceness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::matrix::{det_bigint, det_laurent, hermite_normal_form, spans_direct_summand};

/// Largest coordinate bound accepted by [`SeifertMatrix::metabolizer_search`].
pub const METABOLIZER_BOUND_CAP: i64 = 50;

/// Errors produced by Seifert matrix operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("matrix must be square with even dimension")]
    BadShape,
    #[error("not a Seifert matrix: det(M - M^T) must be 1, found {0}")]
    NotSeifert(BigInt),
    #[error("declared genus {declared} does not match a {dim}x{dim} matrix")]
    GenusMismatch { declared: usize, dim: usize },
    #[error("homology class has {found} coordinates, expected {expected}")]
    ClassDimension { expected: usize, found: usize },
    #[error("homology class must be nonzero and primitive")]
    NotPrimitive,
    #[error("unsupported genus: metabolizer search handles genus 1 and 2")]
    UnsupportedGenus,
    #[error("search bound must be between 1 and {METABOLIZER_BOUND_CAP}")]
    BoundOutOfRange,
    #[error("metabolizer basis must contain exactly genus-many classes")]
    WrongBasisSize,
    #[error("the Seifert pairing does not vanish on the proposed basis")]
    NotIsotropic,
    #[error("the proposed basis does not span a direct summand")]
    NotSummand,
    #[error("pairing value exceeds the machine integer range")]
    Overflow,
}

/// Unvalidated wire form of a Seifert matrix: the genus is carried
/// redundantly so readers can sanity-check files by eye.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSeifertMatrix {
    pub genus: usize,
    pub entries: Vec<Vec<i64>>,
}

/// A validated Seifert matrix: square, even-dimensional, with unimodular
/// antisymmetrization `det(M - Mᵀ) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    /// Validates and wraps a candidate matrix.
    pub fn validate(entries: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        let n = entries.len();
        if !n.is_multiple_of(2) || entries.iter().any(|row| row.len() != n) {
            return Err(SeifertError::BadShape);
        }
        let antisym: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(entries[i][j] - entries[j][i]))
                    .collect()
            })
            .collect();
        let det = det_bigint(&antisym);
        if !det.is_one() {
            return Err(SeifertError::NotSeifert(det));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.dim() / 2
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Canonical Alexander polynomial `det(M - tMᵀ)` up to units. The empty
    /// (genus-0) matrix yields `1`.
    pub fn alexander(&self) -> LaurentPoly {
        let n = self.dim();
        let mat: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| LaurentPoly::from_coeffs(0, &[self.entries[i][j], -self.entries[j][i]]))
                    .collect()
            })
            .collect();
        det_laurent(&mat)
            .normalize()
            .expect("det(M - tM^T) evaluates to 1 at t = 1, so it cannot vanish")
    }

    /// Signature of the symmetrized form `M + Mᵀ`, computed by exact
    /// congruence diagonalization over the rationals — no floating point.
    pub fn signature(&self) -> i64 {
        let n = self.dim();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from(BigInt::from(self.entries[i][j] + self.entries[j][i])))
                    .collect()
            })
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut sig = 0i64;
        while !active.is_empty() {
            let pivot = active.iter().position(|&i| !a[i][i].is_zero());
            let i = match pivot {
                Some(pos) => active[pos],
                None => {
                    // Diagonal entirely zero: symmetrize a hyperbolic pair
                    // so a diagonal pivot appears, or stop on a zero block.
                    let pair = active
                        .iter()
                        .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                        .find(|&(i, j)| i != j && !a[i][j].is_zero());
                    match pair {
                        Some((i, j)) => {
                            for c in 0..n {
                                let v = a[j][c].clone();
                                a[i][c] += v;
                            }
                            for r in 0..n {
                                let v = a[r][j].clone();
                                a[r][i] += v;
                            }
                            debug_assert!(!a[i][i].is_zero());
                            i
                        }
                        None => break,
                    }
                }
            };
            sig += if a[i][i].is_positive() { 1 } else { -1 };
            let others: Vec<usize> = active.iter().copied().filter(|&k| k != i).collect();
            for &k in &others {
                let f = &a[k][i] / &a[i][i];
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = &f * &a[i][c];
                    a[k][c] -= v;
                }
                for r in 0..n {
                    let v = &f * &a[r][i];
                    a[r][k] -= v;
                }
            }
            active.retain(|&k| k != i);
        }
        sig
    }

    /// Knot determinant `|Δ(-1)|`; always odd.
    pub fn determinant(&self) -> BigInt {
        let d = self
            .alexander()
            .evaluate_int(-1)
            .expect("Laurent evaluation at -1 cannot fail")
            .to_integer()
            .abs();
        debug_assert!(d.is_odd(), "knot determinants are odd");
        d
    }

    /// Arf invariant via the determinant congruence: `0` when
    /// `|Δ(-1)| ≡ ±1 (mod 8)`, `1` otherwise.
    pub fn arf(&self) -> u8 {
        let r = self.determinant() % BigInt::from(8);
        if r == BigInt::from(1) || r == BigInt::from(7) {
            0
        } else {
            1
        }
    }

    /// The bilinear Seifert pairing `vᵀ M w`.
    pub fn seifert_pairing(
        &self,
        v: &HomologyClass,
        w: &HomologyClass,
    ) -> Result<i64, SeifertError> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        i64::try_from(self.pairing_wide(v.coords(), w.coords()))
            .map_err(|_| SeifertError::Overflow)
    }

    fn pairing_wide(&self, v: &[i64], w: &[i64]) -> i128 {
        let n = self.dim();
        let mut acc: i128 = 0;
        for i in 0..n {
            for j in 0..n {
                acc += v[i] as i128 * self.entries[i][j] as i128 * w[j] as i128;
            }
        }
        acc
    }

    fn check_dim(&self, v: &HomologyClass) -> Result<(), SeifertError> {
        if v.coords().len() != self.dim() {
            return Err(SeifertError::ClassDimension {
                expected: self.dim(),
                found: v.coords().len(),
            });
        }
        Ok(())
    }

    /// Enumerates all metabolizers — rank-g direct summands on which the
    /// Seifert pairing vanishes identically — that admit a basis with every
    /// coordinate in `[-bound, bound]`. Results are deduplicated up to sign
    /// and basis change; genus 1 reports the sign-canonical primitive class,
    /// genus 2 reports the Hermite-normal basis of the spanned lattice.
    pub fn metabolizer_search(&self, bound: i64) -> Result<Vec<Metabolizer>, SeifertError> {
        if !(1..=METABOLIZER_BOUND_CAP).contains(&bound) {
            return Err(SeifertError::BoundOutOfRange);
        }
        match self.genus() {
            1 => self.metabolizers_genus_one(bound),
            2 => self.metabolizers_genus_two(bound),
            _ => Err(SeifertError::UnsupportedGenus),
        }
    }

    fn metabolizers_genus_one(&self, bound: i64) -> Result<Vec<Metabolizer>, SeifertError> {
        let mut out = Vec::new();
        for v in self.isotropic_primitive_vectors(bound) {
            let class = HomologyClass::new(v).expect("generated vectors are primitive");
            out.push(Metabolizer::new(self, vec![class]).expect("isotropic primitive class"));
        }
        Ok(out)
    }

    fn metabolizers_genus_two(&self, bound: i64) -> Result<Vec<Metabolizer>, SeifertError> {
        let candidates = self.isotropic_primitive_vectors(bound);
        let mut seen: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut out = Vec::new();
        for (i, v) in candidates.iter().enumerate() {
            for w in &candidates[i + 1..] {
                if self.pairing_wide(v, w) != 0 || self.pairing_wide(w, v) != 0 {
                    continue;
                }
                let rows = vec![v.clone(), w.clone()];
                let hnf = hermite_normal_form(&rows);
                if hnf.len() != 2 {
                    continue; // linearly dependent pair
                }
                if !spans_direct_summand(&hnf) {
                    continue;
                }
                if seen.contains(&hnf) {
                    continue;
                }
                let basis: Vec<HomologyClass> = hnf
                    .iter()
                    .map(|r| HomologyClass::new(r.clone()).expect("summand basis rows are primitive"))
                    .collect();
                out.push(Metabolizer::new(self, basis).expect("validated candidate"));
                seen.push(hnf);
            }
        }
        Ok(out)
    }

    /// Sign-canonical primitive vectors `v` in the coordinate box with
    /// `vᵀMv = 0`, in lexicographic scan order.
    fn isotropic_primitive_vectors(&self, bound: i64) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut v = vec![-bound; n];
        loop {
            if is_primitive(&v) && sign_canonical(&v) && self.pairing_wide(&v, &v) == 0 {
                out.push(v.clone());
            }
            // Odometer increment.
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if v[k] < bound {
                    v[k] += 1;
                    for x in &mut v[k + 1..] {
                        *x = -bound;
                    }
                    break;
                }
            }
        }
    }
}

fn is_primitive(v: &[i64]) -> bool {
    let mut g: i64 = 0;
    for &x in v {
        g = num_integer::gcd(g, x);
    }
    g == 1
}

fn sign_canonical(v: &[i64]) -> bool {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) => x > 0,
        None => false,
    }
}

impl Serialize for SeifertMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawSeifertMatrix {
            genus: self.genus(),
            entries: self.entries.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SeifertMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawSeifertMatrix::deserialize(deserializer)?;
        SeifertMatrix::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<RawSeifertMatrix> for SeifertMatrix {
    type Error = SeifertError;

    fn try_from(raw: RawSeifertMatrix) -> Result<Self, Self::Error> {
        let m = SeifertMatrix::validate(raw.entries)?;
        if m.genus() != raw.genus {
            return Err(SeifertError::GenusMismatch {
                declared: raw.genus,
                dim: m.dim(),
            });
        }
        Ok(m)
    }
}

/// A nonzero primitive integer homology class on the Seifert surface,
/// written in the same basis as the matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HomologyClass {
    coords: Vec<i64>,
}

impl HomologyClass {
    /// Validates that the class is nonzero and primitive.
    pub fn new(coords: Vec<i64>) -> Result<Self, SeifertError> {
        if !is_primitive(&coords) {
            return Err(SeifertError::NotPrimitive);
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

impl TryFrom<Vec<i64>> for HomologyClass {
    type Error = SeifertError;
    fn try_from(coords: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(coords)
    }
}

impl From<HomologyClass> for Vec<i64> {
    fn from(c: HomologyClass) -> Self {
        c.coords
    }
}

impl std::fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A rank-g direct summand of the surface homology on which the Seifert
/// pairing vanishes identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metabolizer {
    basis: Vec<HomologyClass>,
}

impl Metabolizer {
    /// Validates isotropy (in both argument orders) and the direct-summand
    /// property of the proposed basis against `m`.
    pub fn new(m: &SeifertMatrix, basis: Vec<HomologyClass>) -> Result<Self, SeifertError> {
        if basis.len() != m.genus() {
            return Err(SeifertError::WrongBasisSize);
        }
        for v in &basis {
            m.check_dim(v)?;
        }
        for v in &basis {
            for w in &basis {
                if m.pairing_wide(v.coords(), w.coords()) != 0 {
                    return Err(SeifertError::NotIsotropic);
                }
            }
        }
        let rows: Vec<Vec<i64>> = basis.iter().map(|c| c.coords().to_vec()).collect();
        if hermite_normal_form(&rows).len() != basis.len() || !spans_direct_summand(&rows) {
            return Err(SeifertError::NotSummand);
        }
        Ok(Self { basis })
    }

    pub fn basis(&self) -> &[HomologyClass] {
        &self.basis
    }
}

impl std::fmt::Display for Metabolizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "span{{")?;
        for (i, c) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(entries: &[&[i64]]) -> SeifertMatrix {
        SeifertMatrix::validate(entries.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn class(coords: &[i64]) -> HomologyClass {
        HomologyClass::new(coords.to_vec()).unwrap()
    }

    fn base() -> SeifertMatrix {
        matrix(&[&[2, 1], &[0, 0]])
    }

    fn modified() -> SeifertMatrix {
        matrix(&[&[2, 0], &[-1, -1]])
    }

    fn trefoil() -> SeifertMatrix {
        matrix(&[&[-1, 1], &[0, -1]])
    }

    #[test]
    fn validate_accepts_seifert_matrices() {
        assert_eq!(base().genus(), 1);
        assert_eq!(modified().genus(), 1);
        assert_eq!(matrix(&[]).genus(), 0);
    }

    #[test]
    fn validate_rejects_bad_antisymmetrization() {
        let err = SeifertMatrix::validate(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, SeifertError::NotSeifert(BigInt::from(0)));
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        assert_eq!(
            SeifertMatrix::validate(vec![vec![1]]).unwrap_err(),
            SeifertError::BadShape
        );
        assert_eq!(
            SeifertMatrix::validate(vec![vec![1, 2], vec![3]]).unwrap_err(),
            SeifertError::BadShape
        );
    }

    #[test]
    fn alexander_of_the_base_matrix_is_trivial() {
        assert_eq!(base().alexander(), LaurentPoly::one());
    }

    #[test]
    fn alexander_of_the_modified_matrix() {
        assert_eq!(
            modified().alexander(),
            LaurentPoly::from_coeffs(0, &[2, -5, 2])
        );
    }

    #[test]
    fn alexander_of_genus_zero_is_one() {
        assert_eq!(matrix(&[]).alexander(), LaurentPoly::one());
    }

    #[test]
    fn alexander_of_the_trefoil() {
        assert_eq!(
            trefoil().alexander(),
            LaurentPoly::from_coeffs(0, &[1, -1, 1])
        );
    }

    #[test]
    fn signatures() {
        assert_eq!(base().signature(), 0);
        assert_eq!(modified().signature(), 0);
        assert_eq!(trefoil().signature(), -2);
        // Positive-definite symmetrization.
        assert_eq!(matrix(&[&[1, 1], &[0, 1]]).signature(), 2);
        assert_eq!(matrix(&[]).signature(), 0);
    }

    #[test]
    fn determinants() {
        assert_eq!(base().determinant(), BigInt::from(1));
        assert_eq!(modified().determinant(), BigInt::from(9));
        assert_eq!(trefoil().determinant(), BigInt::from(3));
    }

    #[test]
    fn arf_invariants() {
        assert_eq!(base().arf(), 0);
        assert_eq!(modified().arf(), 0);
        assert_eq!(trefoil().arf(), 1);
    }

    #[test]
    fn pairing_values_on_the_modified_matrix() {
        let m = modified();
        let d1 = class(&[1, 1]);
        let d2 = class(&[1, -2]);
        assert_eq!(m.seifert_pairing(&d1, &d1).unwrap(), 0);
        assert_eq!(m.seifert_pairing(&d2, &d2).unwrap(), 0);
        assert_eq!(m.seifert_pairing(&class(&[1, 0]), &class(&[1, 0])).unwrap(), 2);
    }

    #[test]
    fn pairing_rejects_dimension_mismatch() {
        let err = modified()
            .seifert_pairing(&class(&[1, 0, 0, 1]), &class(&[1, 0, 0, 1]))
            .unwrap_err();
        assert!(matches!(err, SeifertError::ClassDimension { .. }));
    }

    #[test]
    fn metabolizers_of_the_modified_matrix() {
        let found = modified().metabolizer_search(5).unwrap();
        let classes: Vec<&HomologyClass> =
            found.iter().map(|m| &m.basis()[0]).collect();
        assert_eq!(classes, vec![&class(&[1, -2]), &class(&[1, 1])]);
    }

    #[test]
    fn metabolizers_of_the_base_matrix() {
        let found = base().metabolizer_search(5).unwrap();
        let classes: Vec<&HomologyClass> =
            found.iter().map(|m| &m.basis()[0]).collect();
        assert_eq!(classes, vec![&class(&[0, 1]), &class(&[1, -2])]);
    }

    #[test]
    fn trefoil_has_no_metabolizer() {
        assert!(trefoil().metabolizer_search(5).unwrap().is_empty());
    }

    #[test]
    fn metabolizer_search_validates_inputs() {
        assert_eq!(
            modified().metabolizer_search(0).unwrap_err(),
            SeifertError::BoundOutOfRange
        );
        assert_eq!(
            modified().metabolizer_search(51).unwrap_err(),
            SeifertError::BoundOutOfRange
        );
        assert_eq!(
            matrix(&[]).metabolizer_search(5).unwrap_err(),
            SeifertError::UnsupportedGenus
        );
    }

    #[test]
    fn genus_two_search_finds_split_metabolizers() {
        // Two disjoint copies of the base surface.
        let m = matrix(&[
            &[2, 1, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 2, 1],
            &[0, 0, 0, 0],
        ]);
        let found = m.metabolizer_search(2).unwrap();
        assert!(!found.is_empty());
        // The obvious split metabolizer span{e2, e4} must be present.
        let split: Vec<Vec<i64>> = vec![vec![0, 1, 0, 0], vec![0, 0, 0, 1]];
        assert!(found.iter().any(|mb| {
            mb.basis().iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>() == split
        }));
        // Every result re-validates, and no lattice is reported twice.
        let mut seen = Vec::new();
        for mb in &found {
            Metabolizer::new(&m, mb.basis().to_vec()).unwrap();
            let rows: Vec<Vec<i64>> =
                mb.basis().iter().map(|c| c.coords().to_vec()).collect();
            let hnf = hermite_normal_form(&rows);
            assert!(!seen.contains(&hnf));
            seen.push(hnf);
        }
    }

    #[test]
    fn metabolizer_constructor_rejects_bad_bases() {
        let m = modified();
        assert_eq!(
            Metabolizer::new(&m, vec![class(&[1, 0])]).unwrap_err(),
            SeifertError::NotIsotropic
        );
        assert_eq!(
            Metabolizer::new(&m, vec![class(&[1, 1]), class(&[1, -2])]).unwrap_err(),
            SeifertError::WrongBasisSize
        );
    }

    #[test]
    fn wire_format_roundtrip() {
        let m = modified();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"genus":1,"entries":[[2,0],[-1,-1]]}"#);
        let back: SeifertMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn wire_format_validates() {
        let bad: Result<SeifertMatrix, _> =
            serde_json::from_str(r#"{"genus":1,"entries":[[1,0],[0,1]]}"#);
        assert!(bad.is_err());
        let mismatch: Result<SeifertMatrix, _> =
            serde_json::from_str(r#"{"genus":2,"entries":[[2,0],[-1,-1]]}"#);
        assert!(mismatch.is_err());
    }
}
