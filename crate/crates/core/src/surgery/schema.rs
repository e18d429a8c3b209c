//! The closed diagram family used by the reduction scripts.
//!
//! A [`SchemaDiagram`] is two parallel unknotted strands running through a
//! twist box with `l` full twists, each strand carrying a surgery
//! coefficient, together with a set of unknotted meridians, each encircling
//! one strand or both. Every component bounds an obvious disk, so Rolfsen
//! twists are available whenever the strands passing through that disk
//! stay parallel — at most one geometric through-strand, or the encircled
//! bundle of a meridian. The point of the family is that it is closed
//! under exactly those moves plus `∞`-deletion, which is what the
//! reduction loop needs; anything that would tangle the picture is
//! rejected rather than approximated.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use super::{AbstractDiagram, DiagramComponent, SurgeryCoefficient, SurgeryError};

/// The two strands through the twist box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrandId {
    First,
    Second,
}

impl StrandId {
    fn index(self) -> usize {
        match self {
            StrandId::First => 0,
            StrandId::Second => 1,
        }
    }

    fn other(self) -> StrandId {
        match self {
            StrandId::First => StrandId::Second,
            StrandId::Second => StrandId::First,
        }
    }

    fn label(self) -> &'static str {
        match self {
            StrandId::First => "eta1",
            StrandId::Second => "eta2",
        }
    }
}

/// Stable handle for a component of a [`SchemaDiagram`]. Meridian handles
/// survive deletions of other components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentId {
    Strand(StrandId),
    Meridian(u32),
}

/// Which strands a meridian encircles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeridianTargets {
    First,
    Second,
    Both,
}

impl MeridianTargets {
    fn hits(self, s: StrandId) -> bool {
        matches!(
            (self, s),
            (MeridianTargets::First, StrandId::First)
                | (MeridianTargets::Second, StrandId::Second)
                | (MeridianTargets::Both, _)
        )
    }

    fn as_str(self) -> &'static str {
        match self {
            MeridianTargets::First => "first",
            MeridianTargets::Second => "second",
            MeridianTargets::Both => "both",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "first" | "eta1" | "1" => Some(MeridianTargets::First),
            "second" | "eta2" | "2" => Some(MeridianTargets::Second),
            "both" => Some(MeridianTargets::Both),
            _ => None,
        }
    }
}

impl Serialize for MeridianTargets {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for MeridianTargets {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            One(String),
            Many(Vec<String>),
        }
        let keywords = match Wire::deserialize(deserializer)? {
            Wire::One(s) => vec![s],
            Wire::Many(v) => v,
        };
        if keywords.is_empty() {
            return Err(D::Error::custom("meridian must target at least one strand"));
        }
        let mut first = false;
        let mut second = false;
        for kw in &keywords {
            match MeridianTargets::from_keyword(kw) {
                Some(MeridianTargets::First) => first = true,
                Some(MeridianTargets::Second) => second = true,
                Some(MeridianTargets::Both) => {
                    first = true;
                    second = true;
                }
                None => {
                    return Err(D::Error::custom(format!(
                        "unknown meridian target {kw:?}; expected \"first\", \"second\", or \"both\""
                    )))
                }
            }
        }
        Ok(match (first, second) {
            (true, true) => MeridianTargets::Both,
            (true, false) => MeridianTargets::First,
            (false, true) => MeridianTargets::Second,
            (false, false) => unreachable!("keyword list was non-empty"),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Meridian {
    id: u32,
    coefficient: SurgeryCoefficient,
    targets: MeridianTargets,
}

/// A diagram in the two-strand twist-box family. See the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaDiagram {
    twist_box: i64,
    strands: [Option<SurgeryCoefficient>; 2],
    meridians: Vec<Meridian>,
    next_meridian_id: u32,
}

impl SchemaDiagram {
    /// Two strands through a box of `l` full twists, no meridians yet.
    pub fn twist_pair(l: i64, r1: SurgeryCoefficient, r2: SurgeryCoefficient) -> Self {
        Self {
            twist_box: l,
            strands: [Some(r1), Some(r2)],
            meridians: Vec::new(),
            next_meridian_id: 0,
        }
    }

    /// Adds an unknotted meridian encircling the given strands; returns its
    /// handle.
    pub fn add_meridian(
        &mut self,
        coefficient: SurgeryCoefficient,
        targets: MeridianTargets,
    ) -> ComponentId {
        let id = self.next_meridian_id;
        self.next_meridian_id += 1;
        self.meridians.push(Meridian { id, coefficient, targets });
        ComponentId::Meridian(id)
    }

    /// Builder form of [`add_meridian`](Self::add_meridian).
    pub fn with_meridian(
        mut self,
        coefficient: SurgeryCoefficient,
        targets: MeridianTargets,
    ) -> Self {
        self.add_meridian(coefficient, targets);
        self
    }

    /// Twist-box count, meaningful while both strands are alive.
    pub fn twist_box(&self) -> i64 {
        self.twist_box
    }

    pub fn strand(&self, s: StrandId) -> Option<SurgeryCoefficient> {
        self.strands[s.index()]
    }

    pub fn is_empty(&self) -> bool {
        self.strands.iter().all(Option::is_none) && self.meridians.is_empty()
    }

    /// Live components in display order: strands first, then meridians in
    /// insertion order.
    pub fn component_ids(&self) -> Vec<ComponentId> {
        let mut ids = Vec::new();
        for s in [StrandId::First, StrandId::Second] {
            if self.strands[s.index()].is_some() {
                ids.push(ComponentId::Strand(s));
            }
        }
        ids.extend(self.meridians.iter().map(|m| ComponentId::Meridian(m.id)));
        ids
    }

    pub fn coefficient(&self, id: ComponentId) -> Option<SurgeryCoefficient> {
        match id {
            ComponentId::Strand(s) => self.strands[s.index()],
            ComponentId::Meridian(mid) => {
                self.meridians.iter().find(|m| m.id == mid).map(|m| m.coefficient)
            }
        }
    }

    /// Human-readable component label: `eta1`, `eta2`, `m0`, `m1`, …
    pub fn label(&self, id: ComponentId) -> String {
        match id {
            ComponentId::Strand(s) => s.label().to_string(),
            ComponentId::Meridian(mid) => format!("m{mid}"),
        }
    }

    fn meridian(&self, mid: u32) -> Result<&Meridian, SurgeryError> {
        self.meridians
            .iter()
            .find(|m| m.id == mid)
            .ok_or(SurgeryError::ComponentOutOfRange {
                index: mid as usize,
                len: self.meridians.len(),
            })
    }

    fn strand_coefficient(&self, s: StrandId) -> Result<SurgeryCoefficient, SurgeryError> {
        self.strands[s.index()].ok_or(SurgeryError::ComponentOutOfRange {
            index: s.index(),
            len: 2,
        })
    }

    /// Strands of the meridian's target bundle that are still alive.
    fn live_targets(&self, m: &Meridian) -> Vec<StrandId> {
        [StrandId::First, StrandId::Second]
            .into_iter()
            .filter(|&s| m.targets.hits(s) && self.strands[s.index()].is_some())
            .collect()
    }

    /// Number of geometric strand passes through the obvious disk of a
    /// component: for a meridian, its live targets; for a strand, `|l|`
    /// passes of the other strand (if alive) plus every meridian that
    /// encircles it.
    fn geometric_through_count(&self, id: ComponentId) -> Result<usize, SurgeryError> {
        match id {
            ComponentId::Meridian(mid) => Ok(self.live_targets(self.meridian(mid)?).len()),
            ComponentId::Strand(s) => {
                self.strand_coefficient(s)?;
                let other = if self.strands[s.other().index()].is_some() {
                    self.twist_box.unsigned_abs() as usize
                } else {
                    0
                };
                let meridians = self
                    .meridians
                    .iter()
                    .filter(|m| m.targets.hits(s))
                    .count();
                Ok(other + meridians)
            }
        }
    }

    /// Rolfsen twist with `t` full twists on the named component.
    ///
    /// Meridian disks always qualify: everything through them is the
    /// parallel bundle the meridian encircles. A strand disk qualifies only
    /// when at most one geometric strand passes through it; two or more
    /// would be braided together by the twist, and the result has no
    /// description in this family.
    pub fn rolfsen_twist(&self, id: ComponentId, t: i64) -> Result<Self, SurgeryError> {
        // Validate existence (and capture data) before the trivial-twist exit.
        match id {
            ComponentId::Meridian(mid) => {
                self.meridian(mid)?;
            }
            ComponentId::Strand(s) => {
                self.strand_coefficient(s)?;
                if self.geometric_through_count(id)? > 1 {
                    return Err(SurgeryError::SchemaFamilyViolation);
                }
            }
        }
        if t == 0 {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        match id {
            ComponentId::Meridian(mid) => {
                let m = *self.meridian(mid)?;
                let live = self.live_targets(&m);
                // Each encircled strand passes once through the disk
                // (λ = 1), so its coefficient shifts by t·1².
                for &s in &live {
                    let r = out.strands[s.index()].unwrap();
                    out.strands[s.index()] = Some(r.add_integer(t)?);
                }
                // Both strands through the disk: their mutual linking —
                // the twist box — changes by t·1·1.
                if live.len() == 2 {
                    out.twist_box = out
                        .twist_box
                        .checked_add(t)
                        .ok_or(SurgeryError::Overflow)?;
                }
                let slot = out.meridians.iter_mut().find(|x| x.id == mid).unwrap();
                slot.coefficient = slot.coefficient.twist(t)?;
            }
            ComponentId::Strand(s) => {
                let r = self.strand_coefficient(s)?;
                let other = s.other();
                // The other strand runs |l| times through this disk; with
                // |l| ≤ 1 enforced above, λ = l and the shift is t·l².
                // Linking numbers of the twisted component itself — the
                // box included — are untouched by its own twist.
                if self.strands[other.index()].is_some() && self.twist_box != 0 {
                    let shift = t as i128 * self.twist_box as i128 * self.twist_box as i128;
                    let r_other = out.strands[other.index()].unwrap();
                    out.strands[other.index()] = Some(r_other.add_integer_wide(shift)?);
                }
                for m in out.meridians.iter_mut() {
                    if m.targets.hits(s) {
                        // λ = 1 for an encircling meridian.
                        m.coefficient = m.coefficient.add_integer(t)?;
                    }
                }
                out.strands[s.index()] = Some(r.twist(t)?);
            }
        }
        Ok(out)
    }

    /// Deletes an `∞`-framed component.
    pub fn delete_infinity(&self, id: ComponentId) -> Result<Self, SurgeryError> {
        let r = self
            .coefficient(id)
            .ok_or(SurgeryError::ComponentOutOfRange { index: 0, len: 0 })?;
        if !r.is_infinity() {
            return Err(SurgeryError::NotInfinity);
        }
        let mut out = self.clone();
        match id {
            ComponentId::Strand(s) => {
                out.strands[s.index()] = None;
                // The box only ever described the pair; with one strand
                // gone it carries no linking data.
                out.twist_box = 0;
            }
            ComponentId::Meridian(mid) => out.meridians.retain(|m| m.id != mid),
        }
        Ok(out)
    }

    /// Whether the component is a split unknot: nothing passes through its
    /// disk, so a twist on it touches nothing else.
    fn is_split(&self, id: ComponentId) -> bool {
        matches!(self.geometric_through_count(id), Ok(0))
    }

    /// The abstract (coefficient + linking) shadow of this diagram, with
    /// components in [`component_ids`](Self::component_ids) order. Strands
    /// link each other `l` times; a meridian links each strand it encircles
    /// exactly once; meridians never link each other.
    pub fn to_abstract(&self) -> AbstractDiagram {
        let ids = self.component_ids();
        let n = ids.len();
        let components = ids
            .iter()
            .map(|&id| DiagramComponent {
                coefficient: self.coefficient(id).unwrap(),
                unknotted: true,
            })
            .collect();
        let mut linking = vec![vec![0i64; n]; n];
        for (a, &ida) in ids.iter().enumerate() {
            for (b, &idb) in ids.iter().enumerate() {
                if a == b {
                    continue;
                }
                linking[a][b] = match (ida, idb) {
                    (ComponentId::Strand(_), ComponentId::Strand(_)) => self.twist_box,
                    (ComponentId::Strand(s), ComponentId::Meridian(mid))
                    | (ComponentId::Meridian(mid), ComponentId::Strand(s)) => {
                        let m = self.meridians.iter().find(|m| m.id == mid).unwrap();
                        i64::from(m.targets.hits(s))
                    }
                    (ComponentId::Meridian(_), ComponentId::Meridian(_)) => 0,
                };
            }
        }
        AbstractDiagram::new(components, linking)
            .expect("schema linking data is symmetric by construction")
    }

    /// `|H₁|` of the surgered manifold (0 = infinite).
    pub fn h1_order(&self) -> Result<BigInt, SurgeryError> {
        self.to_abstract().h1_order()
    }

    /// Snapshot of the live components for traces.
    pub fn snapshot(&self) -> DiagramSnapshot {
        let both = self.strands.iter().all(Option::is_some);
        DiagramSnapshot {
            twist_box: both.then_some(self.twist_box),
            components: self
                .component_ids()
                .into_iter()
                .map(|id| ComponentState {
                    label: self.label(id),
                    coefficient: self.coefficient(id).unwrap().to_string(),
                })
                .collect(),
        }
    }

    /// Greedy reduction: delete `∞` components, blow down split components
    /// with `|p| = 1` (a twist with `t = -pq` sends `p/q` to `1/0`), repeat.
    /// Emptying the diagram certifies the manifold is the 3-sphere; getting
    /// stuck decides nothing, so the result is a conservative `false`.
    pub fn reduce(&self) -> Reduction {
        let mut diagram = self.clone();
        let mut trace = Vec::new();
        let initial = diagram.snapshot();
        loop {
            if diagram.is_empty() {
                return Reduction { is_s3: true, initial, trace };
            }
            if let Some(id) = diagram
                .component_ids()
                .into_iter()
                .find(|&id| diagram.coefficient(id).unwrap().is_infinity())
            {
                let label = diagram.label(id);
                diagram = diagram
                    .delete_infinity(id)
                    .expect("component was just seen to be infinity-framed");
                trace.push(TraceStep {
                    action: format!("delete {label} (infinity surgery is no surgery)"),
                    note: None,
                    after: diagram.snapshot(),
                });
                continue;
            }
            let blowdown = diagram.component_ids().into_iter().find_map(|id| {
                let r = diagram.coefficient(id).unwrap();
                (diagram.is_split(id) && r.numerator().abs() == 1).then(|| {
                    // t = -p·q turns p/q into p/(q - pqp) = ±1/0.
                    (id, -r.numerator() * r.denominator())
                })
            });
            match blowdown {
                Some((id, t)) => {
                    let label = diagram.label(id);
                    diagram = diagram
                        .rolfsen_twist(id, t)
                        .expect("a split component always admits a twist");
                    trace.push(TraceStep {
                        action: format!("twist {label} by t = {t} (split, numerator ±1: send to infinity)"),
                        note: None,
                        after: diagram.snapshot(),
                    });
                }
                None => return Reduction { is_s3: false, initial, trace },
            }
        }
    }

    /// Conservative 3-sphere recognition via [`reduce`](Self::reduce).
    pub fn is_s3(&self) -> bool {
        self.reduce().is_s3
    }

    pub fn from_wire(wire: &SchemaDiagramWire) -> Self {
        let mut d = Self::twist_pair(wire.twist, wire.r1, wire.r2);
        for m in &wire.meridians {
            d.add_meridian(m.r, m.targets);
        }
        d
    }

    /// Wire form; `None` once a strand has been deleted (the wire format
    /// always carries both strands).
    pub fn to_wire(&self) -> Option<SchemaDiagramWire> {
        Some(SchemaDiagramWire {
            twist: self.twist_box,
            r1: self.strands[0]?,
            r2: self.strands[1]?,
            meridians: self
                .meridians
                .iter()
                .map(|m| MeridianWire { r: m.coefficient, targets: m.targets })
                .collect(),
        })
    }
}

/// Wire form of a [`SchemaDiagram`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemaDiagramWire {
    pub twist: i64,
    pub r1: SurgeryCoefficient,
    pub r2: SurgeryCoefficient,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub meridians: Vec<MeridianWire>,
}

/// Wire form of one meridian.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeridianWire {
    pub r: SurgeryCoefficient,
    pub targets: MeridianTargets,
}

/// Coefficient state of the live components after a move.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DiagramSnapshot {
    /// Present while both strands are alive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist_box: Option<i64>,
    pub components: Vec<ComponentState>,
}

/// One component in a snapshot.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ComponentState {
    pub label: String,
    pub coefficient: String,
}

/// One move of a reduction, with the diagram state after it.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TraceStep {
    pub action: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub after: DiagramSnapshot,
}

/// Outcome of a reduction run: verdict plus the full audit trail.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Reduction {
    pub is_s3: bool,
    pub initial: DiagramSnapshot,
    pub trace: Vec<TraceStep>,
}

/// The standard reduction of the two-strand family with `l` clasp twists
/// and boundary coefficients `(nl+1)/n`, `(nl-1)/n`, certifying that the
/// surgered manifold is the 3-sphere for every `(n, l)`.
///
/// The script: encircle both strands with an `∞` meridian and twist it
/// `-l` times to empty the twist box (coefficients become `1/n`, `-1/n`,
/// `-1/l`); blow the strands down with `∓n` twists; then run the generic
/// cleanup loop on what remains.
pub fn reduce_figure6(n: i64, l: i64) -> Result<Reduction, SurgeryError> {
    let r1 = SurgeryCoefficient::from_wide(
        n as i128 * l as i128 + 1,
        n as i128,
    )?;
    let r2 = SurgeryCoefficient::from_wide(
        n as i128 * l as i128 - 1,
        n as i128,
    )?;
    let mut diagram = SchemaDiagram::twist_pair(l, r1, r2);
    let meridian = diagram.add_meridian(SurgeryCoefficient::INFINITY, MeridianTargets::Both);
    let initial = diagram.snapshot();
    let mut trace = Vec::new();

    let neg_l = l.checked_neg().ok_or(SurgeryError::Overflow)?;
    diagram = diagram.rolfsen_twist(meridian, neg_l)?;
    trace.push(TraceStep {
        action: format!("twist m0 by t = {neg_l} (unwind the twist box)"),
        note: None,
        after: diagram.snapshot(),
    });

    let neg_n = n.checked_neg().ok_or(SurgeryError::Overflow)?;
    let m_before = diagram.coefficient(meridian);
    diagram = diagram.rolfsen_twist(ComponentId::Strand(StrandId::First), neg_n)?;
    trace.push(TraceStep {
        action: format!("twist eta1 by t = {neg_n}"),
        note: None,
        after: diagram.snapshot(),
    });
    diagram = diagram.rolfsen_twist(ComponentId::Strand(StrandId::Second), n)?;
    let m_after = diagram.coefficient(meridian);
    debug_assert_eq!(m_before, m_after);
    trace.push(TraceStep {
        action: format!("twist eta2 by t = {n}"),
        note: Some(
            "the meridian passes once through each strand disk, so the \
             opposite twists shift its coefficient by -n and then +n, \
             restoring it"
                .to_string(),
        ),
        after: diagram.snapshot(),
    });

    let tail = diagram.reduce();
    trace.extend(tail.trace);
    Ok(Reduction { is_s3: tail.is_s3, initial, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(s: &str) -> SurgeryCoefficient {
        s.parse().unwrap()
    }

    fn family(n: i64, l: i64) -> SchemaDiagram {
        SchemaDiagram::twist_pair(
            l,
            SurgeryCoefficient::new(n * l + 1, n).unwrap(),
            SurgeryCoefficient::new(n * l - 1, n).unwrap(),
        )
    }

    #[test]
    fn abstract_shadow_of_the_family() {
        let d = family(3, 2).with_meridian(SurgeryCoefficient::INFINITY, MeridianTargets::Both);
        let a = d.to_abstract();
        assert_eq!(a.len(), 3);
        assert_eq!(a.components()[0].coefficient, coeff("7/3"));
        assert_eq!(a.components()[1].coefficient, coeff("5/3"));
        assert_eq!(
            a.linking(),
            &[vec![0, 2, 1], vec![2, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn meridian_twist_updates_the_bundle() {
        let d = family(3, 2).with_meridian(SurgeryCoefficient::INFINITY, MeridianTargets::Both);
        let m = ComponentId::Meridian(0);
        let after = d.rolfsen_twist(m, -2).unwrap();
        assert_eq!(after.twist_box(), 0);
        assert_eq!(after.strand(StrandId::First).unwrap(), coeff("1/3"));
        assert_eq!(after.strand(StrandId::Second).unwrap(), coeff("-1/3"));
        assert_eq!(after.coefficient(m).unwrap(), coeff("-1/2"));
        // Same computation through the abstract route.
        assert_eq!(after.to_abstract(), {
            d.to_abstract().rolfsen_twist(2, -2, Some(&[1, 1, 0])).unwrap()
        });
        // The inverse twist restores the diagram.
        assert_eq!(after.rolfsen_twist(m, 2).unwrap(), d);
    }

    #[test]
    fn single_target_meridian_leaves_the_box_alone() {
        let d = family(1, 1).with_meridian(coeff("inf"), MeridianTargets::First);
        let after = d.rolfsen_twist(ComponentId::Meridian(0), 3).unwrap();
        assert_eq!(after.twist_box(), 1);
        assert_eq!(after.strand(StrandId::First).unwrap(), coeff("5"));
        assert_eq!(after.strand(StrandId::Second).unwrap(), coeff("0"));
    }

    #[test]
    fn strand_twists_respect_the_through_count() {
        // |l| = 2: the other strand crosses the disk twice — rejected.
        let d = family(1, 2);
        assert_eq!(
            d.rolfsen_twist(ComponentId::Strand(StrandId::First), 1),
            Err(SurgeryError::SchemaFamilyViolation)
        );
        // One meridian plus a live |l| = 1 box is already two strands.
        let d = family(1, 1).with_meridian(coeff("inf"), MeridianTargets::First);
        assert_eq!(
            d.rolfsen_twist(ComponentId::Strand(StrandId::First), 1),
            Err(SurgeryError::SchemaFamilyViolation)
        );
        // The second strand has no meridian and |l| = 1: legal. The twist
        // kinks the first strand (λ = 1) but cannot change its own linking
        // numbers, so the box stays put.
        let after = d.rolfsen_twist(ComponentId::Strand(StrandId::Second), 1).unwrap();
        assert_eq!(after.twist_box(), 1);
        assert_eq!(after.strand(StrandId::First).unwrap(), coeff("3"));
        assert_eq!(after.strand(StrandId::Second).unwrap(), coeff("0"));
    }

    #[test]
    fn strand_twist_with_zero_box_is_free() {
        let d = SchemaDiagram::twist_pair(0, coeff("1/3"), coeff("-1/3"));
        let after = d.rolfsen_twist(ComponentId::Strand(StrandId::First), -3).unwrap();
        assert_eq!(after.strand(StrandId::First).unwrap(), SurgeryCoefficient::INFINITY);
        assert_eq!(after.strand(StrandId::Second).unwrap(), coeff("-1/3"));
        assert_eq!(after.twist_box(), 0);
    }

    #[test]
    fn zero_twists_change_nothing() {
        let d = family(3, 2).with_meridian(coeff("inf"), MeridianTargets::Both);
        for id in d.component_ids() {
            if matches!(id, ComponentId::Meridian(_)) {
                assert_eq!(d.rolfsen_twist(id, 0).unwrap(), d);
            }
        }
    }

    #[test]
    fn delete_infinity_requires_infinity() {
        let d = family(3, 2).with_meridian(coeff("inf"), MeridianTargets::Both);
        assert_eq!(
            d.delete_infinity(ComponentId::Strand(StrandId::First)),
            Err(SurgeryError::NotInfinity)
        );
        let gone = d.delete_infinity(ComponentId::Meridian(0)).unwrap();
        assert_eq!(gone.component_ids().len(), 2);
    }

    #[test]
    fn deleting_a_strand_frees_its_partner() {
        let d = SchemaDiagram::twist_pair(5, coeff("inf"), coeff("1"));
        let d = d.delete_infinity(ComponentId::Strand(StrandId::First)).unwrap();
        // eta2 is now split, and the cleanup loop finishes the job.
        assert!(d.is_s3());
    }

    #[test]
    fn reduction_empties_the_standard_family() {
        let reduction = reduce_figure6(3, 2).unwrap();
        assert!(reduction.is_s3);
        // First move unwinds the box: coefficients 1/n, -1/n, -1/l.
        let first = &reduction.trace[0].after;
        let get = |snapshot: &DiagramSnapshot, label: &str| {
            snapshot
                .components
                .iter()
                .find(|c| c.label == label)
                .map(|c| c.coefficient.clone())
        };
        assert_eq!(first.twist_box, Some(0));
        assert_eq!(get(first, "eta1").unwrap(), "1/3");
        assert_eq!(get(first, "eta2").unwrap(), "-1/3");
        assert_eq!(get(first, "m0").unwrap(), "-1/2");
        // The ±n strand twists restore the meridian coefficient.
        let third = &reduction.trace[2].after;
        assert_eq!(get(third, "m0").unwrap(), "-1/2");
        assert!(reduction.trace[2].note.as_deref().unwrap().contains("restoring"));
        // Strand coefficients are at infinity after their blowdowns.
        assert_eq!(get(third, "eta1").unwrap(), "inf");
        assert_eq!(get(third, "eta2").unwrap(), "inf");
        // Everything is eventually deleted.
        assert!(reduction.trace.last().unwrap().after.components.is_empty());
    }

    #[test]
    fn reduction_handles_degenerate_parameters() {
        for (n, l) in [(0, 0), (0, 4), (1, 0), (-3, 2), (5, -1), (0, -2)] {
            let reduction = reduce_figure6(n, l).unwrap();
            assert!(reduction.is_s3, "({n}, {l}) should reduce to the 3-sphere");
        }
    }

    #[test]
    fn h1_is_preserved_along_the_reduction() {
        // |H₁| of the family is 1 for every (n, l); spot-check the moves
        // of the script keep it there.
        let d = family(4, -3).with_meridian(coeff("inf"), MeridianTargets::Both);
        let h = d.h1_order().unwrap();
        let after = d.rolfsen_twist(ComponentId::Meridian(0), 3).unwrap();
        assert_eq!(after.h1_order().unwrap(), h);
        assert_eq!(h, BigInt::from(1));
    }

    #[test]
    fn stuck_diagrams_report_false() {
        // A split 0-framed unknot: H₁ = Z, certainly not S³, and the
        // loop cannot blow it down.
        let d = SchemaDiagram::twist_pair(0, coeff("0"), coeff("inf"));
        let reduction = d.reduce();
        assert!(!reduction.is_s3);
        // A 5-framed split unknot gives the lens space L(5,1): stuck too.
        let d = SchemaDiagram::twist_pair(0, coeff("5"), coeff("inf"));
        assert!(!d.is_s3());
        // But ±1-framed split unknots blow down.
        let d = SchemaDiagram::twist_pair(0, coeff("-1"), coeff("inf"));
        assert!(d.is_s3());
    }

    #[test]
    fn meridian_targets_wire_forms() {
        let one: MeridianTargets = serde_json::from_str(r#""both""#).unwrap();
        assert_eq!(one, MeridianTargets::Both);
        let many: MeridianTargets = serde_json::from_str(r#"["first", "second"]"#).unwrap();
        assert_eq!(many, MeridianTargets::Both);
        let single: MeridianTargets = serde_json::from_str(r#"["eta2"]"#).unwrap();
        assert_eq!(single, MeridianTargets::Second);
        assert!(serde_json::from_str::<MeridianTargets>(r#""sideways""#).is_err());
        assert!(serde_json::from_str::<MeridianTargets>("[]").is_err());
        assert_eq!(serde_json::to_string(&MeridianTargets::Both).unwrap(), r#""both""#);
    }

    #[test]
    fn wire_roundtrip() {
        let d = family(3, 2).with_meridian(coeff("inf"), MeridianTargets::Both);
        let wire = d.to_wire().unwrap();
        let json = serde_json::to_string(&wire).unwrap();
        let back: SchemaDiagramWire = serde_json::from_str(&json).unwrap();
        assert_eq!(SchemaDiagram::from_wire(&back), d);
        // A diagram with a deleted strand has no wire form.
        let gone = SchemaDiagram::twist_pair(0, coeff("inf"), coeff("1"))
            .delete_infinity(ComponentId::Strand(StrandId::First))
            .unwrap();
        assert!(gone.to_wire().is_none());
    }
}
