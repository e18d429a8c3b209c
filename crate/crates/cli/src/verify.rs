//! End-to-end verification: recomputes every number the catalog claims and
//! cross-checks the core modules against independent oracles and randomized
//! sweeps. Each check becomes one report row tagged with its provenance —
//! `paper` for values matching the published source the catalog transcribes,
//! `derived` for consequences recomputed here from scratch, `trivial` for
//! bookkeeping that must hold by construction.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use knotkit::annulus::{
    annulus_twist_family, boundary_instructions, gluing_images, rho, AnnulusEnd, AnnulusModSpec,
    CurveClass,
};
use knotkit::laurent::{exact_sqrt, is_fox_milnor, kronecker_factor, LaurentPoly};
use knotkit::seifert::{HomologyClass, SeifertMatrix};
use knotkit::surgery::{
    reduce_figure6, AbstractDiagram, ComponentId, DiagramComponent, MeridianTargets,
    SchemaDiagram, SurgeryCoefficient,
};

use crate::catalog::{Catalog, CatalogEntry};

/// Inclusive integer range for the sweep sections, parsed from `MIN..MAX`.
/// An inverted range (`MIN > MAX`) is legal and empty; empty sweeps mark
/// their sections as skipped rather than failing them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepRange {
    pub min: i64,
    pub max: i64,
}

impl SweepRange {
    pub fn new(min: i64, max: i64) -> Self {
        Self { min, max }
    }

    /// Parses `MIN..MAX` with both endpoints inclusive.
    pub fn parse(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("sweep must look like MIN..MAX, got {s:?}"))?;
        let min: i64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("sweep lower bound {lo:?} is not an integer"))?;
        let max: i64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("sweep upper bound {hi:?} is not an integer"))?;
        Ok(Self { min, max })
    }

    pub fn is_empty(&self) -> bool {
        self.min > self.max
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + Clone {
        self.min..=self.max
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.max - self.min + 1) as usize
        }
    }
}

impl fmt::Display for SweepRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

/// Knobs for [`verify_all`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Coordinate bound for the metabolizer searches.
    pub bound: i64,
    /// Parameter range for the family sweeps.
    pub sweep: SweepRange,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { bound: 5, sweep: SweepRange::new(-5, 5) }
    }
}

/// Where a checked value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Transcribed from the published source the catalog cites.
    Paper,
    /// Recomputed here as a consequence; not stated verbatim anywhere.
    Derived,
    /// Holds by construction or by definition.
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Paper => write!(f, "paper"),
            Provenance::Derived => write!(f, "derived"),
            Provenance::Trivial => write!(f, "trivial"),
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One line of the verification report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The full report: every row plus tallies and the overall verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// True iff no row failed (skipped rows do not count against it).
    pub overall_pass: bool,
}

impl VerificationReport {
    fn from_rows(rows: Vec<ReportRow>) -> Self {
        let passed = rows.iter().filter(|r| r.status == Status::Pass).count();
        let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
        let skipped = rows.iter().filter(|r| r.status == Status::Skipped).count();
        Self { overall_pass: failed == 0, rows, passed, failed, skipped }
    }

    /// Plain-text table, one row per check, with a final verdict line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let name_width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for row in &self.rows {
            let tag = match row.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!(
                "[{tag}] ({:<7}) {:<name_width$}  expected: {}; computed: {}",
                row.provenance.to_string(),
                row.name,
                row.expected,
                row.computed,
            ));
            if let Some(note) = &row.note {
                out.push_str(&format!("  — {note}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped — overall {}\n",
            self.passed,
            self.failed,
            self.skipped,
            if self.overall_pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Row accumulator with small helpers so the checks below read linearly.
struct Reporter {
    rows: Vec<ReportRow>,
}

impl Reporter {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn check(
        &mut self,
        name: impl Into<String>,
        provenance: Provenance,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) {
        self.rows.push(ReportRow {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            provenance,
            note: None,
        });
    }

    fn check_eq<T: PartialEq + fmt::Display>(
        &mut self,
        name: impl Into<String>,
        provenance: Provenance,
        expected: &T,
        computed: &T,
    ) {
        let ok = expected == computed;
        self.check(name, provenance, expected.to_string(), computed.to_string(), ok);
    }

    fn skip(&mut self, name: impl Into<String>, provenance: Provenance, why: impl Into<String>) {
        self.rows.push(ReportRow {
            name: name.into(),
            expected: "—".into(),
            computed: "—".into(),
            status: Status::Skipped,
            provenance,
            note: Some(why.into()),
        });
    }

    fn note_last(&mut self, note: impl Into<String>) {
        if let Some(row) = self.rows.last_mut() {
            row.note = Some(note.into());
        }
    }
}

/// Independent Arf computation from the mod-2 quadratic form on a
/// symplectic basis of the antisymmetrized pairing; cross-checks the
/// determinant congruence used by the core. Public so external suites can
/// run the same cross-check.
pub fn arf_quadratic_oracle(m: &SeifertMatrix) -> u8 {
    let n = m.dim();
    let q = |v: &[u8]| -> u8 {
        let mut acc = 0i64;
        for i in 0..n {
            for j in 0..n {
                acc += v[i] as i64 * m.entry(i, j).rem_euclid(2) * v[j] as i64;
            }
        }
        (acc % 2) as u8
    };
    let pair = |v: &[u8], w: &[u8]| -> u8 {
        let mut acc = 0i64;
        for i in 0..n {
            for j in 0..n {
                let sym = (m.entry(i, j) + m.entry(j, i)).rem_euclid(2);
                acc += v[i] as i64 * sym * w[j] as i64;
            }
        }
        (acc % 2) as u8
    };
    let mut basis: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut e = vec![0u8; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut arf = 0u8;
    while !basis.is_empty() {
        let a = basis.remove(0);
        let partner = basis
            .iter()
            .position(|w| pair(&a, w) == 1)
            .expect("intersection form is nondegenerate mod 2");
        let b = basis.remove(partner);
        arf ^= q(&a) & q(&b);
        for v in basis.iter_mut() {
            let ca = pair(v, &b);
            let cb = pair(v, &a);
            for i in 0..n {
                v[i] ^= ca & a[i];
                v[i] ^= cb & b[i];
            }
        }
    }
    arf
}

/// Sign-canonical coordinates of a class: first nonzero coordinate positive.
fn canonical_coords(c: &HomologyClass) -> Vec<i64> {
    let coords = c.coords().to_vec();
    match coords.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => coords.iter().map(|v| -v).collect(),
        _ => coords,
    }
}

/// Runs every check against the given catalog and returns the report.
pub fn verify_all(catalog: &Catalog, options: &VerifyOptions) -> VerificationReport {
    let mut r = Reporter::new();
    for entry in &catalog.entries {
        verify_entry(&mut r, entry, options);
    }
    verify_figure6_family(&mut r, options);
    verify_random_moves(&mut r);
    verify_gluing_algebra(&mut r);
    verify_boundary_pair(&mut r);
    verify_random_seifert_suite(&mut r);
    verify_kronecker_suite(&mut r);
    VerificationReport::from_rows(r.rows)
}

/// Checks for one catalog entry: validate the stored matrix, recompute every
/// claimed value from it, and test the claimed consequences.
fn verify_entry(r: &mut Reporter, entry: &CatalogEntry, options: &VerifyOptions) {
    let name = &entry.name;

    // Claimed polynomials must be symmetric regardless of any matrix.
    if let Some(claimed) = &entry.alexander_claimed {
        let recip = claimed.reciprocal().unwrap_or_else(|_| LaurentPoly::zero());
        r.check_eq(
            format!("{name}: claimed polynomial is reciprocal-symmetric"),
            Provenance::Trivial,
            claimed,
            &recip,
        );
    }
    for (k, d) in entry.derivatives.iter().enumerate() {
        if let Some(claimed) = &d.alexander_claimed {
            let recip = claimed.reciprocal().unwrap_or_else(|_| LaurentPoly::zero());
            r.check_eq(
                format!("{name}: derivative {} claimed polynomial is reciprocal-symmetric", k + 1),
                Provenance::Trivial,
                claimed,
                &recip,
            );
        }
    }

    // Validate the stored matrix; everything matrix-dependent hangs off it.
    let matrix = match &entry.seifert_matrix {
        None => None,
        Some(raw) => match SeifertMatrix::try_from(raw.clone()) {
            Ok(m) => {
                r.check(
                    format!("{name}: stored matrix is a valid Seifert matrix"),
                    Provenance::Trivial,
                    "det(M - M^T) = 1",
                    "det(M - M^T) = 1",
                    true,
                );
                Some(m)
            }
            Err(e) => {
                r.check(
                    format!("{name}: stored matrix is a valid Seifert matrix"),
                    Provenance::Trivial,
                    "det(M - M^T) = 1",
                    e.to_string(),
                    false,
                );
                None
            }
        },
    };

    if let Some(m) = &matrix {
        if let Some(claimed) = &entry.alexander_claimed {
            r.check_eq(
                format!("{name}: recomputed Alexander polynomial matches the claim"),
                Provenance::Paper,
                claimed,
                &m.alexander(),
            );
        }

        if entry.slice_claimed {
            r.check_eq(
                format!("{name}: signature vanishes (slice obstruction)"),
                Provenance::Paper,
                &0i64,
                &m.signature(),
            );
            r.check_eq(
                format!("{name}: Arf invariant vanishes (slice obstruction)"),
                Provenance::Paper,
                &0u8,
                &m.arf(),
            );
            match is_fox_milnor(&m.alexander()) {
                Ok(report) => {
                    let witness_ok = report.witness.as_ref().is_some_and(|w| {
                        let product = w * &w.reciprocal().expect("witness is nonzero");
                        product.normalize().ok() == m.alexander().normalize().ok()
                    });
                    let computed = match (&report.passes, &report.witness) {
                        (true, Some(w)) if witness_ok => {
                            format!("passes with verified witness {w}")
                        }
                        (true, Some(w)) => format!("witness {w} does not re-multiply"),
                        (true, None) => "passes but carries no witness".into(),
                        (false, _) => report
                            .reason
                            .clone()
                            .unwrap_or_else(|| "fails with no reason given".into()),
                    };
                    r.check(
                        format!("{name}: Alexander polynomial factors as f(t)f(1/t)"),
                        Provenance::Paper,
                        "passes with verified witness",
                        computed,
                        report.passes && witness_ok,
                    );
                }
                Err(e) => r.check(
                    format!("{name}: Alexander polynomial factors as f(t)f(1/t)"),
                    Provenance::Paper,
                    "passes with verified witness",
                    format!("test aborted: {e}"),
                    false,
                ),
            }
        }
    } else if entry.seifert_matrix.is_some() {
        // Invalid matrix: mark dependents skipped instead of cascading fails.
        if entry.alexander_claimed.is_some() {
            r.skip(
                format!("{name}: recomputed Alexander polynomial matches the claim"),
                Provenance::Paper,
                "stored matrix failed validation",
            );
        }
        if entry.slice_claimed {
            r.skip(
                format!("{name}: slice obstructions"),
                Provenance::Paper,
                "stored matrix failed validation",
            );
        }
    }

    // Derivative curves: claimed determinant values and their consequences.
    for (k, d) in entry.derivatives.iter().enumerate() {
        let label = format!("{name}: derivative {} ({})", k + 1, d.class);
        if let Some(claimed) = &d.alexander_claimed {
            let at_minus_one = claimed
                .evaluate_int(-1)
                .expect("catalog polynomials evaluate everywhere")
                .to_integer()
                .abs();
            if let Some(det) = d.determinant_claimed {
                r.check_eq(
                    format!("{label}: |Δ(-1)| equals the claimed determinant"),
                    Provenance::Paper,
                    &BigInt::from(det),
                    &at_minus_one,
                );
            }
            r.check(
                format!("{label}: |Δ(-1)| is not a perfect square"),
                Provenance::Paper,
                format!("{at_minus_one} has no integer square root"),
                match exact_sqrt(&at_minus_one) {
                    None => format!("{at_minus_one} has no integer square root"),
                    Some(s) => format!("{at_minus_one} = {s}^2"),
                },
                exact_sqrt(&at_minus_one).is_none(),
            );
            match is_fox_milnor(claimed) {
                Ok(report) => r.check(
                    format!("{label}: polynomial fails the factorization obstruction"),
                    Provenance::Derived,
                    "no f(t)f(1/t) factorization",
                    match &report.reason {
                        Some(reason) => reason.clone(),
                        None => "a factorization exists".into(),
                    },
                    !report.passes,
                ),
                Err(e) => r.check(
                    format!("{label}: polynomial fails the factorization obstruction"),
                    Provenance::Derived,
                    "no f(t)f(1/t) factorization",
                    format!("test aborted: {e}"),
                    false,
                ),
            }
        }
    }

    // Metabolizer search must recover exactly the claimed derivative classes.
    if !entry.derivatives.is_empty() {
        let row_name =
            format!("{name}: metabolizer search recovers the derivative classes");
        match &matrix {
            Some(m) => match m.metabolizer_search(options.bound) {
                Ok(mets) => {
                    let mut expected: Vec<Vec<Vec<i64>>> = entry
                        .derivatives
                        .iter()
                        .map(|d| vec![canonical_coords(&d.class)])
                        .collect();
                    expected.sort();
                    let mut computed: Vec<Vec<Vec<i64>>> = mets
                        .iter()
                        .map(|met| {
                            let mut basis: Vec<Vec<i64>> =
                                met.basis().iter().map(canonical_coords).collect();
                            basis.sort();
                            basis
                        })
                        .collect();
                    computed.sort();
                    r.check(
                        row_name,
                        Provenance::Paper,
                        format!("{expected:?}"),
                        format!("{computed:?}"),
                        expected == computed,
                    );
                    r.note_last(format!(
                        "search bound {}, classes written sign-canonically",
                        options.bound
                    ));

                    let mut pairings_ok = true;
                    let mut pairings = Vec::new();
                    for d in &entry.derivatives {
                        match m.seifert_pairing(&d.class, &d.class) {
                            Ok(v) => {
                                pairings.push(format!("<{},{}> = {v}", d.class, d.class));
                                pairings_ok &= v == 0;
                            }
                            Err(e) => {
                                pairings.push(e.to_string());
                                pairings_ok = false;
                            }
                        }
                    }
                    r.check(
                        format!("{name}: Seifert pairing vanishes on each derivative class"),
                        Provenance::Derived,
                        "all self-pairings 0",
                        pairings.join(", "),
                        pairings_ok,
                    );
                }
                Err(e) => r.check(
                    row_name,
                    Provenance::Paper,
                    "search completes",
                    format!("search aborted: {e}"),
                    false,
                ),
            },
            None => r.skip(row_name, Provenance::Paper, "no valid matrix stored"),
        }
    }

    // Determinant congruence vs. the independent quadratic-form oracle.
    if let Some(m) = &matrix {
        r.check_eq(
            format!("{name}: Arf congruence agrees with the quadratic-form oracle"),
            Provenance::Derived,
            &arf_quadratic_oracle(m),
            &m.arf(),
        );
    }

    // Annulus presentation: check the sign and the induced twist family.
    if let Some(p) = &entry.annulus_presentation {
        let sign_ok = p.epsilon == 1 || p.epsilon == -1;
        r.check(
            format!("{name}: annulus presentation sign is ±1"),
            Provenance::Paper,
            "ε ∈ {+1, -1}",
            format!("ε = {}", p.epsilon),
            sign_ok,
        );
        if sign_ok {
            verify_twist_family(r, name, p.epsilon, options);
        }
    }

    if entry.seifert_matrix.is_none()
        && entry.alexander_claimed.is_none()
        && entry.derivatives.is_empty()
        && entry.annulus_presentation.is_none()
    {
        r.skip(
            format!("{name}: no machine-checkable data"),
            Provenance::Trivial,
            entry.note.clone().unwrap_or_else(|| "narrative entry".into()),
        );
    }
}

/// The n-fold twist family of an annulus presentation of sign ε: closed-form
/// coefficients, linking number `-ε`, and agreement with the generic
/// modification at `l = -ε`, swept over the configured range.
fn verify_twist_family(r: &mut Reporter, name: &str, epsilon: i64, options: &VerifyOptions) {
    let closed_form = format!("{name}: twist family matches the closed form on the sweep");
    let agreement = format!("{name}: twist family agrees with the generic modification");
    if options.sweep.is_empty() {
        r.skip(&closed_form, Provenance::Paper, "sweep range is empty");
        r.skip(&agreement, Provenance::Derived, "sweep range is empty");
        return;
    }

    let mut mismatches = Vec::new();
    let mut disagreements = Vec::new();
    let mut tested = 0usize;
    for n in options.sweep.values() {
        if n == 0 {
            continue;
        }
        tested += 1;
        let fam = match annulus_twist_family(epsilon, n) {
            Ok(f) => f,
            Err(e) => {
                mismatches.push(format!("n = {n}: {e}"));
                continue;
            }
        };
        let eta1 = SurgeryCoefficient::new(-n * epsilon + 1, n).expect("n is nonzero");
        let eta2 = SurgeryCoefficient::new(-n * epsilon - 1, n).expect("n is nonzero");
        if fam.eta1 != eta1 || fam.eta2 != eta2 || fam.lk != -epsilon {
            mismatches.push(format!(
                "n = {n}: got ({}, {}, lk {})",
                fam.eta1, fam.eta2, fam.lk
            ));
        }
        match boundary_instructions(AnnulusModSpec { l: -epsilon, n }) {
            Ok(b) if b.eta1 == fam.eta1 && b.eta2 == fam.eta2 => {}
            Ok(b) => disagreements.push(format!("n = {n}: modification gives ({}, {})", b.eta1, b.eta2)),
            Err(e) => disagreements.push(format!("n = {n}: {e}")),
        }
    }

    let sweep = options.sweep;
    r.check(
        &closed_form,
        Provenance::Paper,
        format!("((-nε+1)/n, (-nε-1)/n, lk -ε) for n ∈ {sweep}, n ≠ 0"),
        if mismatches.is_empty() {
            format!("all {tested} parameters match")
        } else {
            mismatches.join("; ")
        },
        mismatches.is_empty(),
    );
    r.check(
        &agreement,
        Provenance::Derived,
        format!("twist family = modification with l = {} on {sweep}", -epsilon),
        if disagreements.is_empty() {
            format!("all {tested} parameters agree")
        } else {
            disagreements.join("; ")
        },
        disagreements.is_empty(),
    );
}

/// The two-strand family: every parameter pair reduces to the 3-sphere, the
/// trace passes through the expected intermediate coefficients, and the
/// family presents trivial first homology.
fn verify_figure6_family(r: &mut Reporter, options: &VerifyOptions) {
    const REDUCES: &str = "two-strand family: every sweep parameter reduces to S^3";
    const LABELS: &str = "two-strand family: traces pass through 1/n, -1/n, -1/l";
    const HOMOLOGY: &str = "two-strand family: |H1| = 1 across the sweep";
    if options.sweep.is_empty() {
        r.skip(REDUCES, Provenance::Paper, "sweep range is empty");
        r.skip(LABELS, Provenance::Paper, "sweep range is empty");
        r.skip(HOMOLOGY, Provenance::Derived, "sweep range is empty");
        return;
    }

    let sweep = options.sweep;
    let mut failures = Vec::new();
    let mut label_failures = Vec::new();
    let mut label_pairs = 0usize;
    let mut homology_failures = Vec::new();
    for n in sweep.values() {
        for l in sweep.values() {
            match reduce_figure6(n, l) {
                Ok(red) => {
                    if !red.is_s3 {
                        failures.push(format!("(n, l) = ({n}, {l}) did not reduce"));
                    }
                    if n != 0 && l != 0 {
                        label_pairs += 1;
                        let expected: Vec<String> = [
                            SurgeryCoefficient::new(1, n).expect("n ≠ 0"),
                            SurgeryCoefficient::new(-1, n).expect("n ≠ 0"),
                            SurgeryCoefficient::new(-1, l).expect("l ≠ 0"),
                        ]
                        .iter()
                        .map(|c| c.to_string())
                        .collect();
                        let after_first: Vec<String> = red
                            .trace
                            .first()
                            .map(|step| {
                                step.after
                                    .components
                                    .iter()
                                    .map(|c| c.coefficient.clone())
                                    .collect()
                            })
                            .unwrap_or_default();
                        let mut want = expected.clone();
                        let mut got = after_first.clone();
                        want.sort();
                        got.sort();
                        if want != got {
                            label_failures.push(format!(
                                "(n, l) = ({n}, {l}): expected {{{}}}, saw {{{}}}",
                                expected.join(", "),
                                after_first.join(", ")
                            ));
                        }
                    }
                }
                Err(e) => failures.push(format!("(n, l) = ({n}, {l}): {e}")),
            }

            // The family diagram itself presents trivial homology.
            let eta1 = SurgeryCoefficient::new(n * l + 1, n);
            let eta2 = SurgeryCoefficient::new(n * l - 1, n);
            match (eta1, eta2) {
                (Ok(r1), Ok(r2)) => {
                    let d = SchemaDiagram::twist_pair(l, r1, r2);
                    match d.h1_order() {
                        Ok(h) if h.is_one() => {}
                        Ok(h) => homology_failures
                            .push(format!("(n, l) = ({n}, {l}): |H1| = {h}")),
                        Err(e) => homology_failures.push(format!("(n, l) = ({n}, {l}): {e}")),
                    }
                }
                _ => homology_failures.push(format!("(n, l) = ({n}, {l}): bad coefficients")),
            }
        }
    }

    let total = sweep.len() * sweep.len();
    r.check(
        REDUCES,
        Provenance::Paper,
        format!("reduction reaches S^3 for all (n, l) ∈ ({sweep})^2"),
        if failures.is_empty() {
            format!("all {total} parameter pairs reduce")
        } else {
            failures.join("; ")
        },
        failures.is_empty(),
    );
    r.check(
        LABELS,
        Provenance::Paper,
        "coefficients 1/n, -1/n, -1/l after the first move (n, l ≠ 0)",
        if label_failures.is_empty() {
            format!("all {label_pairs} applicable pairs match")
        } else {
            label_failures.join("; ")
        },
        label_failures.is_empty(),
    );
    r.check(
        HOMOLOGY,
        Provenance::Derived,
        "|H1| = 1 for every family diagram on the sweep",
        if homology_failures.is_empty() {
            format!("all {total} parameter pairs have |H1| = 1")
        } else {
            homology_failures.join("; ")
        },
        homology_failures.is_empty(),
    );
}

fn random_coefficient(rng: &mut StdRng) -> SurgeryCoefficient {
    loop {
        let p = rng.gen_range(-6..=6);
        let q = rng.gen_range(0..=4);
        if p != 0 || q != 0 {
            return SurgeryCoefficient::new(p, q).expect("not 0/0");
        }
    }
}

fn random_schema(rng: &mut StdRng) -> SchemaDiagram {
    let mut d = SchemaDiagram::twist_pair(
        rng.gen_range(-3..=3),
        random_coefficient(rng),
        random_coefficient(rng),
    );
    for _ in 0..rng.gen_range(0..=3usize) {
        let targets = match rng.gen_range(0..3) {
            0 => MeridianTargets::First,
            1 => MeridianTargets::Second,
            _ => MeridianTargets::Both,
        };
        d.add_meridian(random_coefficient(rng), targets);
    }
    d
}

/// 1,000 random legal moves on random diagrams, checking that the homology
/// order never changes. Fixed seed, so the run is deterministic.
fn verify_random_moves(r: &mut Reporter) {
    const NAME: &str = "random diagram moves preserve the homology order";
    let mut rng = StdRng::seed_from_u64(101);
    let mut applied = 0usize;
    let mut failure = None;
    'outer: while applied < 1000 {
        let mut d = random_schema(&mut rng);
        let h = match d.h1_order() {
            Ok(h) => h,
            Err(e) => {
                failure = Some(format!("initial diagram rejected: {e}"));
                break;
            }
        };
        for _ in 0..6 {
            let ids: Vec<ComponentId> = d.component_ids();
            if ids.is_empty() {
                break;
            }
            let id = ids[rng.gen_range(0..ids.len())];
            let coefficient = d.coefficient(id).expect("listed component exists");
            if coefficient.is_infinity() && rng.gen_bool(0.5) {
                d = d.delete_infinity(id).expect("listed ∞ component deletes");
            } else {
                let t = rng.gen_range(-3..=3);
                match d.rolfsen_twist(id, t) {
                    Ok(next) => d = next,
                    Err(_) => continue,
                }
            }
            applied += 1;
            match d.h1_order() {
                Ok(next_h) if next_h == h => {}
                Ok(next_h) => {
                    failure = Some(format!(
                        "move {applied} changed |H1| from {h} to {next_h}"
                    ));
                    break 'outer;
                }
                Err(e) => {
                    failure = Some(format!("move {applied}: {e}"));
                    break 'outer;
                }
            }
        }
    }
    r.check(
        NAME,
        Provenance::Derived,
        "|H1| invariant under 1000 twists and ∞-deletions",
        match &failure {
            None => format!("{applied} moves, order never changed"),
            Some(f) => f.clone(),
        },
        failure.is_none(),
    );
}

/// The regluing algebra: determinant-one automorphisms on a fixed grid and
/// the four basis-curve identification lines at random parameters.
fn verify_gluing_algebra(r: &mut Reporter) {
    let mut det_failures = Vec::new();
    for l in -10..=10 {
        for n in -10..=10 {
            match rho(AnnulusModSpec { l, n }) {
                Ok(auto) if auto.det() == 1 => {}
                Ok(auto) => det_failures.push(format!("(l, n) = ({l}, {n}): det {}", auto.det())),
                Err(e) => det_failures.push(format!("(l, n) = ({l}, {n}): {e}")),
            }
        }
    }
    r.check(
        "regluing automorphism has determinant one on the grid",
        Provenance::Derived,
        "det ρ = 1 for (l, n) ∈ [-10, 10]^2",
        if det_failures.is_empty() {
            "det ρ = 1 at all 441 grid points".into()
        } else {
            det_failures.join("; ")
        },
        det_failures.is_empty(),
    );

    let mut rng = StdRng::seed_from_u64(102);
    let mut image_failures = Vec::new();
    for _ in 0..20 {
        let l = rng.gen_range(-10..=10);
        let n = rng.gen_range(-10..=10);
        let spec = AnnulusModSpec { l, n };
        let expected = vec![
            (
                CurveClass::new(1, 0, AnnulusEnd::Zero),
                CurveClass::new(1, l, AnnulusEnd::Zero),
            ),
            (
                CurveClass::new(0, 1, AnnulusEnd::Zero),
                CurveClass::new(n, n * l + 1, AnnulusEnd::Zero),
            ),
            (
                CurveClass::new(1, 0, AnnulusEnd::One),
                CurveClass::new(1, l, AnnulusEnd::One),
            ),
            (
                CurveClass::new(0, 1, AnnulusEnd::One),
                CurveClass::new(n, n * l - 1, AnnulusEnd::One),
            ),
        ];
        match gluing_images(spec) {
            Ok(table) if table == expected => {}
            Ok(_) => image_failures.push(format!("(l, n) = ({l}, {n}): wrong table")),
            Err(e) => image_failures.push(format!("(l, n) = ({l}, {n}): {e}")),
        }
    }
    r.check(
        "regluing identification lines match at random parameters",
        Provenance::Paper,
        "λ ↦ λ + lμ, μ ↦ nλ + (nl+1)μ at end 0; λ ↦ λ + lμ, μ ↦ nλ + (nl-1)μ at end 1",
        if image_failures.is_empty() {
            "all 20 random parameter pairs match".into()
        } else {
            image_failures.join("; ")
        },
        image_failures.is_empty(),
    );
}

/// The (2, 0) two-component pair with linking number one presents a
/// homology sphere.
fn verify_boundary_pair(r: &mut Reporter) {
    let name = "the (2, 0) pair with linking number one is a homology sphere";
    let components = vec![
        DiagramComponent {
            coefficient: SurgeryCoefficient::integer(2),
            unknotted: true,
        },
        DiagramComponent {
            coefficient: SurgeryCoefficient::integer(0),
            unknotted: true,
        },
    ];
    let linking = vec![vec![0, 1], vec![1, 0]];
    match AbstractDiagram::new(components, linking).and_then(|d| d.h1_order()) {
        Ok(h) => r.check(
            name,
            Provenance::Paper,
            "|H1| = 1",
            format!("|H1| = {h}"),
            h.is_one(),
        ),
        Err(e) => r.check(name, Provenance::Paper, "|H1| = 1", e.to_string(), false),
    }
}

/// Random Seifert matrix with the standard symplectic antisymmetrization.
fn random_seifert(rng: &mut StdRng, genus: usize, bound: i64) -> SeifertMatrix {
    let n = 2 * genus;
    let mut entries = vec![vec![0i64; n]; n];
    for i in 0..n {
        entries[i][i] = rng.gen_range(-bound..=bound);
        for j in (i + 1)..n {
            let lower = rng.gen_range(-bound..=bound);
            let skew = i64::from(j == i + 1 && i % 2 == 0);
            entries[j][i] = lower;
            entries[i][j] = lower + skew;
        }
    }
    SeifertMatrix::validate(entries).expect("construction fixes det(M - M^T) = 1")
}

/// 500 random genus ≤ 2 Seifert matrices: the recomputed polynomial is
/// symmetric and evaluates to a unit at 1.
fn verify_random_seifert_suite(r: &mut Reporter) {
    const NAME: &str = "random Seifert matrices: symmetric polynomials, unit at t = 1";
    let mut rng = StdRng::seed_from_u64(103);
    let mut failure = None;
    for i in 0..500 {
        let genus = rng.gen_range(1..=2);
        let m = random_seifert(&mut rng, genus, 4);
        let delta = m.alexander();
        let symmetric = delta.reciprocal().ok() == Some(delta.clone());
        let unit = delta
            .evaluate_int(1)
            .map(|v| v.to_integer().abs() == BigInt::one())
            .unwrap_or(false);
        if !symmetric || !unit {
            failure = Some(format!(
                "sample {i} (matrix {:?}): Δ = {delta}, symmetric = {symmetric}, |Δ(1)| = 1: {unit}",
                m.entries()
            ));
            break;
        }
    }
    r.check(
        NAME,
        Provenance::Derived,
        "reciprocal(Δ) = Δ and |Δ(1)| = 1 on 500 samples",
        match &failure {
            None => "500 of 500 samples pass".into(),
            Some(f) => f.clone(),
        },
        failure.is_none(),
    );
}

/// 200 random products of small factors: Kronecker factorization
/// re-multiplies to the canonical input exactly.
fn verify_kronecker_suite(r: &mut Reporter) {
    const NAME: &str = "Kronecker factorization re-multiplies on random products";
    let mut rng = StdRng::seed_from_u64(104);
    let mut failure = None;
    for i in 0..200 {
        let mut p = LaurentPoly::constant(rng.gen_range(1..=3i64));
        for _ in 0..rng.gen_range(2..=3) {
            p = &p * &random_nonzero_poly(&mut rng, 2, 3);
        }
        if p.degree_span().unwrap_or(0) > 6 {
            continue;
        }
        let canonical = p.normalize().expect("product of nonzero factors");
        match kronecker_factor(&p) {
            Ok(f) if f.product() == canonical => {}
            Ok(f) => {
                failure = Some(format!(
                    "sample {i}: {p} factored to {} factors that re-multiply differently",
                    f.factors.len()
                ));
                break;
            }
            Err(e) => {
                failure = Some(format!("sample {i}: {p}: {e}"));
                break;
            }
        }
    }
    r.check(
        NAME,
        Provenance::Derived,
        "content · ∏ factors = normalize(p) on 200 random degree ≤ 6 products",
        match &failure {
            None => "all sampled products round-trip".into(),
            Some(f) => f.clone(),
        },
        failure.is_none(),
    );
}

fn random_nonzero_poly(rng: &mut StdRng, max_deg: i64, bound: i64) -> LaurentPoly {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
        let p = LaurentPoly::from_coeffs(0, &coeffs);
        if !p.is_zero() && p.degree_span() == Some(deg) {
            return p;
        }
    }
}
