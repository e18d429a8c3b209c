//! Integer Laurent polynomials in a single variable `t`.
//!
//! Alexander polynomials are only defined up to a unit `±t^k`, so the
//! canonical representative produced by [`LaurentPoly::normalize`] — lowest
//! exponent `0`, positive leading coefficient — is what every comparison in
//! this crate goes through. On top of the ring arithmetic the module
//! provides exact evaluation at rational points, the `t ↦ 1/t` involution,
//! Kronecker factorization over `ℤ[t]`, and the Fox–Milnor factorization
//! test used as a sliceness obstruction.
//!
//! Coefficients are arbitrary-precision integers; nothing here rounds.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Hard cap on the degree span accepted by the factorization routines.
/// Kronecker interpolation is exponential in the degree; everything this
/// crate needs to factor lives well below the cap.
pub const FACTOR_DEGREE_CAP: i64 = 8;

/// Largest `|p(x)|` tolerated at an interpolation point. Beyond this the
/// divisor enumeration underlying Kronecker's method is considered too
/// expensive and the factorization is refused rather than left to crawl.
pub const DIVISOR_ENUM_BOUND: u64 = 1_000_000;

/// Safety valve on the number of candidate interpolation tuples examined
/// per factor-degree stage.
const FACTOR_SEARCH_BUDGET: u64 = 4_000_000;

/// Errors produced by Laurent polynomial operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    /// The zero polynomial has no canonical form and no factorization.
    #[error("zero has no canonical form")]
    ZeroPolynomial,
    /// Evaluation at zero is undefined when negative exponents are present.
    #[error("evaluation at zero with negative exponents")]
    EvalAtZero,
    /// The degree span exceeds [`FACTOR_DEGREE_CAP`].
    #[error("degree bound exceeded")]
    DegreeBoundExceeded,
    /// An interpolation value was too large to enumerate divisors for.
    #[error("interpolation value {0} exceeds the divisor enumeration bound")]
    DivisorBoundExceeded(BigInt),
    /// The factor search visited more candidates than the internal budget.
    #[error("factor search budget exceeded")]
    FactorSearchBudgetExceeded,
}

/// An integer Laurent polynomial, stored sparsely as `exponent ↦
/// coefficient` with no zero coefficients retained. The zero polynomial is
/// the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(1)
    }

    /// A constant polynomial.
    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(c, 0)
    }

    /// The monomial `c · t^e`.
    pub fn term<C: Into<BigInt>>(c: C, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from a dense coefficient slice starting at
    /// `min_exp`: `coeffs[i]` is the coefficient of `t^(min_exp + i)`.
    pub fn from_coeffs(min_exp: i64, coeffs: &[i64]) -> Self {
        let mut map = BTreeMap::new();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                map.insert(min_exp + i as i64, BigInt::from(c));
            }
        }
        Self { coeffs: map }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, i.e. the degree of the associated ordinary
    /// polynomial. Zero polynomial yields `None`.
    pub fn degree_span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    /// Coefficient of `t^e` (zero if absent).
    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the highest-degree term; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.max_exp().map(|e| self.coeff(e)).unwrap_or_else(BigInt::zero)
    }

    /// Iterates `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Multiplies by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect();
        Self { coeffs }
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Divides every coefficient by `d`, which must divide exactly.
    fn div_coeff(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero(), "division of coefficients by zero");
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&e, c)| {
                let (q, r) = c.div_rem(d);
                assert!(r.is_zero(), "coefficient {c} not divisible by {d}");
                (e, q)
            })
            .collect();
        Self { coeffs }
    }

    /// Canonical representative of the `±t^k` unit class: lowest exponent
    /// `0`, positive leading coefficient. Errors on the zero polynomial.
    pub fn normalize(&self) -> Result<Self, LaurentError> {
        let min = self.min_exp().ok_or(LaurentError::ZeroPolynomial)?;
        let shifted = self.shifted(-min);
        if shifted.leading_coeff().is_negative() {
            Ok(-&shifted)
        } else {
            Ok(shifted)
        }
    }

    /// Canonical form of `p(1/t)`. A polynomial `p` is *symmetric* exactly
    /// when `p.reciprocal() == p.normalize()`.
    pub fn reciprocal(&self) -> Result<Self, LaurentError> {
        let flipped = Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        };
        flipped.normalize()
    }

    /// Exact evaluation at a rational point. Evaluation at `0` is an error
    /// when negative exponents are present.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational, LaurentError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let min = self.min_exp().unwrap();
        if min < 0 && x.is_zero() {
            return Err(LaurentError::EvalAtZero);
        }
        // Horner on the shifted ordinary polynomial, then restore t^min.
        let poly = self.shifted(-min);
        let deg = poly.max_exp().unwrap();
        let mut acc = BigRational::zero();
        for e in (0..=deg).rev() {
            acc = acc * x + BigRational::from(poly.coeff(e));
        }
        Ok(acc * rational_pow(x, min))
    }

    /// Convenience: exact evaluation at an integer point.
    pub fn evaluate_int(&self, x: i64) -> Result<BigRational, LaurentError> {
        self.evaluate(&BigRational::from(BigInt::from(x)))
    }

    /// Exact division: `Some(q)` with `self = d · q` if `d` divides `self`
    /// in the Laurent ring, `None` otherwise. `d` must be nonzero.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // Work with ordinary polynomials; units t^k always divide.
        let num = self.shifted(-self.min_exp().unwrap());
        let den = d.shifted(-d.min_exp().unwrap());
        let shift = self.min_exp().unwrap() - d.min_exp().unwrap();

        let dn = num.max_exp().unwrap();
        let dd = den.max_exp().unwrap();
        if dn < dd {
            return None;
        }
        let lead_d = den.leading_coeff();
        let mut rem = num;
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let dr = rem.max_exp().unwrap();
            if dr < dd {
                return None;
            }
            let (q, r) = rem.leading_coeff().div_rem(&lead_d);
            if !r.is_zero() {
                return None;
            }
            let t = LaurentPoly::term(q, dr - dd);
            rem = &rem - &(&t * &den);
            quot = &quot + &t;
        }
        Some(quot.shifted(shift))
    }
}

/// `x^e` for a rational base and possibly negative integer exponent.
fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            let entry = coeffs.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        LaurentPoly { coeffs }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                let entry = coeffs.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (e, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Wire form: dense ascending coefficients starting at `min_exp`, with no
/// leading or trailing zeros. The zero polynomial is an empty list with
/// `min_exp` 0.
#[derive(Serialize, Deserialize)]
struct LaurentWire {
    min_exp: i64,
    coeffs: Vec<i128>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = match (self.min_exp(), self.max_exp()) {
            (Some(min), Some(max)) => {
                let mut coeffs = Vec::with_capacity((max - min + 1) as usize);
                for e in min..=max {
                    let c = self.coeff(e);
                    let c = i128::try_from(&c).map_err(|_| {
                        serde::ser::Error::custom(format!(
                            "coefficient {c} does not fit the wire format"
                        ))
                    })?;
                    coeffs.push(c);
                }
                LaurentWire { min_exp: min, coeffs }
            }
            _ => LaurentWire { min_exp: 0, coeffs: Vec::new() },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = LaurentWire::deserialize(deserializer)?;
        if wire.coeffs.is_empty() {
            if wire.min_exp != 0 {
                return Err(D::Error::custom(
                    "empty coefficient list must carry min_exp 0",
                ));
            }
            return Ok(LaurentPoly::zero());
        }
        if wire.coeffs.first() == Some(&0) || wire.coeffs.last() == Some(&0) {
            return Err(D::Error::custom(
                "leading and trailing zero coefficients are forbidden",
            ));
        }
        let mut coeffs = BTreeMap::new();
        for (i, &c) in wire.coeffs.iter().enumerate() {
            if c != 0 {
                coeffs.insert(wire.min_exp + i as i64, BigInt::from(c));
            }
        }
        Ok(LaurentPoly { coeffs })
    }
}

/// Total order used for deterministic factor lists: degree first, then
/// coefficients compared from the constant term up.
fn cmp_canonical(a: &LaurentPoly, b: &LaurentPoly) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da = a.degree_span().unwrap_or(-1);
    let db = b.degree_span().unwrap_or(-1);
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for e in 0..=da.max(0) {
        match a.coeff(e).cmp(&b.coeff(e)) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Result of [`kronecker_factor`]: `normalize(p) = content · ∏ factors`,
/// with every factor irreducible, primitive, and canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Positive integer content of the canonical form.
    pub content: BigInt,
    /// Irreducible factors in a deterministic order, with multiplicity.
    pub factors: Vec<LaurentPoly>,
}

impl Factorization {
    /// Re-multiplies content and factors.
    pub fn product(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(self.content.clone());
        for f in &self.factors {
            acc = &acc * f;
        }
        acc
    }
}

/// Factors `normalize(p)` into irreducible integer polynomials by
/// Kronecker's interpolation method. The degree span must not exceed
/// [`FACTOR_DEGREE_CAP`]. The returned factorization is verified by
/// re-multiplication before it is handed back.
pub fn kronecker_factor(p: &LaurentPoly) -> Result<Factorization, LaurentError> {
    let norm = p.normalize()?;
    let span = norm.degree_span().unwrap();
    if span > FACTOR_DEGREE_CAP {
        return Err(LaurentError::DegreeBoundExceeded);
    }
    let content = norm.content();
    let primitive = norm.div_coeff(&content);

    let mut factors = Vec::new();
    let mut stack = vec![primitive];
    while let Some(cur) = stack.pop() {
        if cur.degree_span().unwrap() == 0 {
            // Primitive constant with positive leading coefficient: 1.
            continue;
        }
        match find_smallest_factor(&cur)? {
            Some(g) => {
                let h = cur.div_exact(&g).expect("verified divisor must divide");
                factors.push(g);
                stack.push(h.normalize().expect("nonzero cofactor"));
            }
            None => factors.push(cur),
        }
    }
    factors.sort_by(cmp_canonical);

    let fact = Factorization { content, factors };
    assert_eq!(fact.product(), norm, "factorization failed re-multiplication");
    Ok(fact)
}

/// Searches for a nontrivial factor of minimal degree. `q` is primitive
/// with positive leading coefficient and nonzero constant term. A `Some`
/// result is irreducible because any proper divisor of it would have been
/// found at a smaller degree.
fn find_smallest_factor(q: &LaurentPoly) -> Result<Option<LaurentPoly>, LaurentError> {
    const POINTS: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 4, -4];
    let deg = q.degree_span().unwrap();
    for k in 1..=deg / 2 {
        let points = &POINTS[..=(k as usize)];
        let mut values = Vec::with_capacity(points.len());
        for &x in points {
            let v = q
                .evaluate_int(x)
                .expect("integer evaluation of an ordinary polynomial")
                .to_integer();
            if v.is_zero() {
                // x is an integer root: t - x is a degree-one factor.
                let root = LaurentPoly::from_coeffs(0, &[-x, 1]);
                return Ok(Some(root));
            }
            if v.abs() > BigInt::from(DIVISOR_ENUM_BOUND) {
                return Err(LaurentError::DivisorBoundExceeded(v));
            }
            values.push(v);
        }
        if let Some(g) = search_divisor_tuples(q, points, &values)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Enumerates candidate value tuples `(d_0, …, d_k)` with `d_i | q(x_i)`,
/// interpolates each through the sample points, and returns the first
/// integer polynomial of positive degree that divides `q`. The sign of
/// `d_0` is fixed positive since factors only matter up to sign.
fn search_divisor_tuples(
    q: &LaurentPoly,
    points: &[i64],
    values: &[BigInt],
) -> Result<Option<LaurentPoly>, LaurentError> {
    let divisor_lists: Vec<Vec<i64>> = values
        .iter()
        .map(|v| divisors(u64::try_from(v.abs()).expect("bounded above")))
        .collect();

    let mut chosen: Vec<i64> = Vec::with_capacity(points.len());
    let mut budget = FACTOR_SEARCH_BUDGET;
    search_level(q, points, &divisor_lists, &mut chosen, &mut budget)
}

fn search_level(
    q: &LaurentPoly,
    points: &[i64],
    divisor_lists: &[Vec<i64>],
    chosen: &mut Vec<i64>,
    budget: &mut u64,
) -> Result<Option<LaurentPoly>, LaurentError> {
    let level = chosen.len();
    if level == points.len() {
        if *budget == 0 {
            return Err(LaurentError::FactorSearchBudgetExceeded);
        }
        *budget -= 1;
        if let Some(cand) = interpolate_integer(points, chosen) {
            if cand.degree_span().unwrap_or(0) >= 1 {
                let cand = cand.normalize().expect("nonzero interpolant");
                let cand = cand.div_coeff(&cand.content());
                if q.div_exact(&cand).is_some() {
                    return Ok(Some(cand));
                }
            }
        }
        return Ok(None);
    }

    for &d in &divisor_lists[level] {
        let signs: &[i64] = if level == 0 { &[1] } else { &[1, -1] };
        for &s in signs {
            let v = s * d;
            // An integer polynomial g satisfies (x - y) | (g(x) - g(y));
            // prune tuples violating that congruence early.
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(j, &prev)| (v - prev) % (points[level] - points[j]) == 0);
            if !ok {
                continue;
            }
            chosen.push(v);
            let hit = search_level(q, points, divisor_lists, chosen, budget)?;
            chosen.pop();
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

/// Positive divisors of `v`, ascending. `v` is bounded by
/// [`DIVISOR_ENUM_BOUND`], so trial division is plenty.
fn divisors(v: u64) -> Vec<i64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= v {
        if v.is_multiple_of(d) {
            small.push(d as i64);
            if d * d != v {
                large.push((v / d) as i64);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Lagrange interpolation through `(points[i], values[i])`; `Some` only if
/// every coefficient comes out an integer.
fn interpolate_integer(points: &[i64], values: &[i64]) -> Option<LaurentPoly> {
    let n = points.len();
    // Dense rational coefficient vector, degree < n.
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // Basis polynomial ∏_{j≠i} (t - x_j) / (x_i - x_j), scaled by value.
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::from(BigInt::from(values[i]));
        let mut deg = 0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let denom = BigRational::from(BigInt::from(points[i] - points[j]));
            let root = BigRational::from(BigInt::from(points[j]));
            // basis ← basis · (t - x_j) / denom
            for d in (0..=deg).rev() {
                let c = basis[d].clone() / denom.clone();
                basis[d + 1] += c.clone();
                basis[d] = -c * root.clone();
            }
            deg += 1;
        }
        for (a, b) in acc.iter_mut().zip(basis) {
            *a += b;
        }
    }
    let mut out = LaurentPoly::zero();
    for (e, c) in acc.iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        out = &out + &LaurentPoly::term(c.to_integer(), e as i64);
    }
    Some(out)
}

/// Outcome of the Fox–Milnor test on a knot Alexander polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoxMilnorReport {
    /// Whether `normalize(p) = normalize(f(t) · f(1/t))` for some integer `f`.
    pub passes: bool,
    /// A verified witness `f`, canonical, when the test passes.
    pub witness: Option<LaurentPoly>,
    /// Human-readable reason when the test fails.
    pub reason: Option<String>,
}

impl FoxMilnorReport {
    fn fail(reason: impl Into<String>) -> Self {
        Self { passes: false, witness: None, reason: Some(reason.into()) }
    }
}

/// Fox–Milnor factorization test: decides whether `p ≐ f(t)·f(1/t)` up to
/// units, returning a verified witness on success.
///
/// The test is meant for Alexander polynomials of knots and fast-fails on
/// inputs that cannot be one: `|p(1)|` must be `1` and `|p(-1)|` must be a
/// perfect square before the factor search runs.
pub fn is_fox_milnor(p: &LaurentPoly) -> Result<FoxMilnorReport, LaurentError> {
    let norm = p.normalize()?;
    if norm.degree_span().unwrap() > FACTOR_DEGREE_CAP {
        return Err(LaurentError::DegreeBoundExceeded);
    }

    let at_one = norm.evaluate_int(1)?.to_integer();
    if !at_one.abs().is_one() {
        return Ok(FoxMilnorReport::fail(format!(
            "|p(1)| = {} rather than 1, so p is not a knot Alexander polynomial",
            at_one.abs()
        )));
    }
    let at_minus_one = norm.evaluate_int(-1)?.to_integer().abs();
    if exact_sqrt(&at_minus_one).is_none() {
        return Ok(FoxMilnorReport::fail(format!(
            "|p(-1)| = {at_minus_one} is not a perfect square"
        )));
    }

    let fact = kronecker_factor(&norm)?;
    let content_root = match exact_sqrt(&fact.content) {
        Some(r) => r,
        None => {
            return Ok(FoxMilnorReport::fail(format!(
                "content {} is not a perfect square",
                fact.content
            )))
        }
    };

    // Multiset of irreducible factors; pair each with its reciprocal.
    let mut remaining: Vec<(LaurentPoly, usize)> = Vec::new();
    for f in &fact.factors {
        match remaining.iter_mut().find(|(g, _)| g == f) {
            Some((_, m)) => *m += 1,
            None => remaining.push((f.clone(), 1)),
        }
    }

    let mut witness = LaurentPoly::constant(content_root);
    let mut consumed = vec![false; remaining.len()];
    for i in 0..remaining.len() {
        if consumed[i] {
            continue;
        }
        consumed[i] = true;
        let (pi, mult) = remaining[i].clone();
        let pi_bar = pi.reciprocal().expect("irreducible factor is nonzero");
        if pi_bar == pi {
            if mult % 2 != 0 {
                return Ok(FoxMilnorReport::fail(format!(
                    "self-reciprocal factor {pi} has odd multiplicity {mult}"
                )));
            }
            for _ in 0..mult / 2 {
                witness = &witness * &pi;
            }
        } else {
            let partner = remaining
                .iter()
                .position(|(g, _)| *g == pi_bar)
                .filter(|&j| !consumed[j]);
            match partner {
                Some(j) if remaining[j].1 == mult => {
                    consumed[j] = true;
                    for _ in 0..mult {
                        witness = &witness * &pi;
                    }
                }
                _ => {
                    return Ok(FoxMilnorReport::fail(format!(
                        "factor {pi} is not matched by its reciprocal {pi_bar}"
                    )))
                }
            }
        }
    }

    let check = &witness * &witness.reciprocal().expect("witness is nonzero");
    let witness = witness.normalize().expect("witness is nonzero");
    assert_eq!(
        check.normalize().expect("nonzero product"),
        norm,
        "witness failed verification"
    );
    Ok(FoxMilnorReport { passes: true, witness: Some(witness), reason: None })
}

/// `Some(r)` with `r² = n` when `n` is a perfect square, `None` otherwise.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(min_exp: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min_exp, coeffs)
    }

    #[test]
    fn normalize_monomial_is_one() {
        assert_eq!(poly(1, &[1]).normalize().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn normalize_flips_negative_leading_coefficient() {
        // -2t² + 5t - 2 → 2t² - 5t + 2
        let p = poly(0, &[-2, 5, -2]);
        assert_eq!(p.normalize().unwrap(), poly(0, &[2, -5, 2]));
    }

    #[test]
    fn normalize_is_idempotent() {
        let p = poly(-3, &[4, 0, -9, 4]);
        let n = p.normalize().unwrap();
        assert_eq!(n.normalize().unwrap(), n);
        assert_eq!(n.min_exp(), Some(0));
        assert!(n.leading_coeff() > BigInt::zero());
    }

    #[test]
    fn normalize_zero_is_an_error() {
        assert_eq!(LaurentPoly::zero().normalize(), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn evaluate_at_minus_one() {
        // 4 - 9t + 4t² at t = -1 is 17.
        let p = poly(0, &[4, -9, 4]);
        assert_eq!(p.evaluate_int(-1).unwrap().to_integer(), BigInt::from(17));
        // 1 + t + 3t² - 11t³ + 3t⁴ + t⁵ + t⁶ at t = -1 is 17 as well.
        let q = poly(0, &[1, 1, 3, -11, 3, 1, 1]);
        assert_eq!(q.evaluate_int(-1).unwrap().to_integer(), BigInt::from(17));
    }

    #[test]
    fn evaluate_at_rational_point() {
        // t⁻¹ + 1 at 1/2 is 3.
        let p = poly(-1, &[1, 1]);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(p.evaluate(&half).unwrap(), BigRational::from(BigInt::from(3)));
    }

    #[test]
    fn evaluate_at_zero_with_negative_exponents_is_an_error() {
        let p = poly(-1, &[1, 1]);
        assert_eq!(
            p.evaluate(&BigRational::zero()),
            Err(LaurentError::EvalAtZero)
        );
    }

    #[test]
    fn reciprocal_fixes_symmetric_polynomials() {
        let p = poly(0, &[4, -9, 4]);
        assert_eq!(p.reciprocal().unwrap(), p);
        let q = poly(0, &[1, 1, 3, -11, 3, 1, 1]);
        assert_eq!(q.reciprocal().unwrap(), q);
    }

    #[test]
    fn reciprocal_of_linear_factor() {
        // t·(2/t - 1) = 2 - t, whose canonical form is t - 2.
        let p = poly(0, &[-1, 2]);
        assert_eq!(p.reciprocal().unwrap(), poly(0, &[-2, 1]));
    }

    #[test]
    fn reciprocal_is_an_involution_up_to_normalization() {
        let p = poly(-2, &[3, 0, -1, 7]);
        assert_eq!(
            p.reciprocal().unwrap().reciprocal().unwrap(),
            p.normalize().unwrap()
        );
    }

    #[test]
    fn kronecker_splits_the_base_alexander_polynomial() {
        // 2t² - 5t + 2 = (2t - 1)(t - 2)
        let p = poly(0, &[2, -5, 2]);
        let fact = kronecker_factor(&p).unwrap();
        assert_eq!(fact.content, BigInt::from(1));
        assert_eq!(fact.factors, vec![poly(0, &[-2, 1]), poly(0, &[-1, 2])]);
    }

    #[test]
    fn kronecker_detects_irreducibility() {
        // 4t² - 9t + 4 has discriminant 17, not a square.
        let p = poly(0, &[4, -9, 4]);
        let fact = kronecker_factor(&p).unwrap();
        assert_eq!(fact.factors, vec![p]);
    }

    #[test]
    fn kronecker_extracts_content() {
        let p = poly(0, &[6]);
        let fact = kronecker_factor(&p).unwrap();
        assert_eq!(fact.content, BigInt::from(6));
        assert!(fact.factors.is_empty());
        let one = kronecker_factor(&LaurentPoly::one()).unwrap();
        assert_eq!(one.content, BigInt::from(1));
        assert!(one.factors.is_empty());
    }

    #[test]
    fn kronecker_handles_integer_roots_and_cyclotomic_splits() {
        let p = poly(0, &[-1, 0, 1]); // t² - 1
        let fact = kronecker_factor(&p).unwrap();
        assert_eq!(fact.factors, vec![poly(0, &[-1, 1]), poly(0, &[1, 1])]);
        // (t - 3) picked up through an interpolation value of zero.
        let q = &poly(0, &[-3, 1]) * &poly(0, &[1, 1, 1]);
        let fq = kronecker_factor(&q).unwrap();
        assert_eq!(fq.factors, vec![poly(0, &[-3, 1]), poly(0, &[1, 1, 1])]);
    }

    #[test]
    fn kronecker_refuses_large_degrees() {
        let p = poly(0, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]); // degree 9
        assert_eq!(kronecker_factor(&p), Err(LaurentError::DegreeBoundExceeded));
    }

    #[test]
    fn fox_milnor_accepts_the_slice_polynomial() {
        let p = poly(0, &[2, -5, 2]);
        let report = is_fox_milnor(&p).unwrap();
        assert!(report.passes);
        let w = report.witness.unwrap();
        // Witness verifies: w(t)·w(1/t) ≐ p. Both (2t-1) and (t-2) qualify.
        let product = &w * &w.reciprocal().unwrap();
        assert_eq!(product.normalize().unwrap(), p.normalize().unwrap());
    }

    #[test]
    fn fox_milnor_rejects_seventeen() {
        let p = poly(0, &[4, -9, 4]);
        let report = is_fox_milnor(&p).unwrap();
        assert!(!report.passes);
        assert!(report.reason.unwrap().contains("17"));
    }

    #[test]
    fn fox_milnor_accepts_one() {
        let report = is_fox_milnor(&LaurentPoly::one()).unwrap();
        assert!(report.passes);
        assert_eq!(report.witness.unwrap(), LaurentPoly::one());
    }

    #[test]
    fn fox_milnor_screens_on_value_at_one() {
        // (t + 1)² factors as f·f(1/t) but has |p(1)| = 4, so it is not a
        // knot polynomial and the screen rejects it.
        let p = poly(0, &[1, 2, 1]);
        let report = is_fox_milnor(&p).unwrap();
        assert!(!report.passes);
        assert!(report.reason.unwrap().contains("p(1)"));
    }

    #[test]
    fn fox_milnor_rejects_unpaired_linear_factor() {
        // t - 2: |p(1)| = 1, |p(-1)| = 3 is not a square.
        let p = poly(0, &[-2, 1]);
        let report = is_fox_milnor(&p).unwrap();
        assert!(!report.passes);
    }

    #[test]
    fn wire_format_roundtrip() {
        let p = poly(-1, &[2, -5, 0, 2]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"min_exp":-1,"coeffs":[2,-5,0,2]}"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let zero_json = serde_json::to_string(&LaurentPoly::zero()).unwrap();
        assert_eq!(zero_json, r#"{"min_exp":0,"coeffs":[]}"#);
    }

    #[test]
    fn wire_format_rejects_padded_coefficients() {
        let bad: Result<LaurentPoly, _> =
            serde_json::from_str(r#"{"min_exp":0,"coeffs":[0,1]}"#);
        assert!(bad.is_err());
        let bad: Result<LaurentPoly, _> =
            serde_json::from_str(r#"{"min_exp":0,"coeffs":[1,0]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(0, &[2, -5, 2]).to_string(), "2 - 5t + 2t^2");
        assert_eq!(poly(-1, &[1, 0, -1]).to_string(), "t^-1 - t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn div_exact_agrees_with_multiplication() {
        let a = poly(-1, &[3, 0, -2]);
        let b = poly(0, &[1, 4]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(poly(0, &[1, 1]).div_exact(&poly(0, &[1, 1, 1])), None);
        assert_eq!(poly(0, &[1, 1, 1]).div_exact(&poly(0, &[1, 1])), None);
    }
}
