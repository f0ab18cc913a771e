//! Mass functions (basic probability assignments) and ordinal evidences.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, Proposition};

/// Absolute tolerance for the unit-sum invariant of a mass function.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// One violated mass-function constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A proposition carries a negative mass.
    NegativeMass { proposition: Proposition, mass: f64 },
    /// The masses do not sum to 1 within [`MASS_SUM_TOLERANCE`].
    SumMismatch { sum: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NegativeMass { proposition, mass } => {
                write!(f, "negative mass {mass} on {proposition}")
            }
            Violation::SumMismatch { sum } => write!(f, "masses sum to {sum}, expected 1"),
        }
    }
}

/// Outcome of validating a candidate mass assignment: either clean or a
/// list of every violated constraint.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Check a candidate assignment against the mass-function invariants:
/// every mass non-negative and the total equal to 1 within
/// [`MASS_SUM_TOLERANCE`]. The empty set cannot occur because
/// [`Proposition`] cannot represent it.
pub fn validate_bpa(pairs: &[(Proposition, f64)]) -> ValidationReport {
    let mut violations = Vec::new();
    for &(proposition, mass) in pairs {
        if mass < 0.0 || !mass.is_finite() {
            violations.push(Violation::NegativeMass { proposition, mass });
        }
    }
    let sum: f64 = pairs.iter().map(|&(_, m)| m).sum();
    if (sum - 1.0).abs() > MASS_SUM_TOLERANCE {
        violations.push(Violation::SumMismatch { sum });
    }
    ValidationReport { violations }
}

/// A basic probability assignment: a finite mapping from propositions to
/// masses in `[0,1]` that sum to 1. Repeated propositions accumulate.
///
/// Values are immutable after construction and iteration order is the
/// canonical proposition order, so downstream computations are
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    entries: BTreeMap<Proposition, f64>,
}

impl MassFunction {
    /// Build a mass function, enforcing the invariants. Duplicate
    /// propositions are summed before validation.
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Proposition, f64)>,
    {
        let mut entries: BTreeMap<Proposition, f64> = BTreeMap::new();
        for (p, m) in pairs {
            *entries.entry(p).or_insert(0.0) += m;
        }
        let flat: Vec<(Proposition, f64)> = entries.iter().map(|(&p, &m)| (p, m)).collect();
        let report = validate_bpa(&flat);
        if !report.is_ok() {
            return Err(Error::InvalidBpa(report));
        }
        Ok(MassFunction { entries })
    }

    /// Mass of a proposition; 0 for anything not in the mapping.
    pub fn get(&self, p: Proposition) -> f64 {
        self.entries.get(&p).copied().unwrap_or(0.0)
    }

    /// All entries in canonical proposition order.
    pub fn iter(&self) -> impl Iterator<Item = (Proposition, f64)> + '_ {
        self.entries.iter().map(|(&p, &m)| (p, m))
    }

    /// Propositions with strictly positive mass.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Proposition, f64)> + '_ {
        self.iter().filter(|&(_, m)| m > 0.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Validate this mass function again (always clean by construction;
    /// useful for asserting pipeline outputs).
    pub fn validate(&self) -> ValidationReport {
        let flat: Vec<(Proposition, f64)> = self.iter().collect();
        validate_bpa(&flat)
    }

    /// True if every proposition fits inside `frame`.
    pub fn fits(&self, frame: &Frame) -> bool {
        self.iter().all(|(p, _)| frame.contains(p))
    }
}

/// A position-ordered sequence of (proposition, mass) pairs. The position
/// of an entry is its order: entry `i` (1-based) was confirmed `i`-th.
///
/// Ignoring order, the entries always form a valid [`MassFunction`];
/// duplicate propositions are rejected because positions would be
/// ambiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinalEvidence {
    entries: Vec<(Proposition, f64)>,
}

impl OrdinalEvidence {
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Proposition, f64)>,
    {
        let entries: Vec<(Proposition, f64)> = entries.into_iter().collect();
        for (i, (p, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::DuplicateProposition(p.to_string()));
            }
        }
        let report = validate_bpa(&entries);
        if !report.is_ok() {
            return Err(Error::InvalidBpa(report));
        }
        Ok(OrdinalEvidence { entries })
    }

    /// Entries in position order.
    pub fn entries(&self) -> &[(Proposition, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based order of a proposition, if present.
    pub fn position_of(&self, p: Proposition) -> Option<usize> {
        self.entries.iter().position(|&(q, _)| q == p).map(|i| i + 1)
    }

    /// Project to a plain mass function, discarding order.
    pub fn to_bpa(&self) -> MassFunction {
        // Entries already validated; reconstruction cannot fail.
        MassFunction::new(self.entries.iter().copied())
            .expect("ordinal evidence entries form a valid mass function")
    }

    /// The set of propositions, sorted canonically.
    pub fn proposition_set(&self) -> Vec<Proposition> {
        let mut props: Vec<Proposition> = self.entries.iter().map(|&(p, _)| p).collect();
        props.sort();
        props
    }
}

/// Order-erasing projection of an ordinal evidence to its mass function.
pub fn bpa_from_ordinal(evidence: &OrdinalEvidence) -> MassFunction {
    evidence.to_bpa()
}

/// A frame together with one or more ordinal evidences over it.
///
/// Every evidence must cover the same set of propositions (possibly in a
/// different order), because fusion aggregates per proposition across
/// evidences.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceSet {
    frame: Frame,
    evidences: Vec<OrdinalEvidence>,
}

impl EvidenceSet {
    pub fn new(frame: Frame, evidences: Vec<OrdinalEvidence>) -> Result<Self> {
        if evidences.is_empty() {
            return Err(Error::NoEvidences);
        }
        for (index, evidence) in evidences.iter().enumerate() {
            for &(p, _) in evidence.entries() {
                if !frame.contains(p) {
                    return Err(Error::PropositionOutsideFrame(frame.describe(p)));
                }
            }
            if evidence.proposition_set() != evidences[0].proposition_set() {
                return Err(Error::PropositionSetMismatch { index });
            }
        }
        Ok(EvidenceSet { frame, evidences })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn evidences(&self) -> &[OrdinalEvidence] {
        &self.evidences
    }

    /// The shared propositions, sorted by cardinality then bit pattern so
    /// singletons precede composites.
    pub fn canonical_propositions(&self) -> Vec<Proposition> {
        let mut props = self.evidences[0].proposition_set();
        props.sort_by_key(|p| (p.cardinality(), p.bits()));
        props
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn frame3() -> Frame {
        Frame::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn validate_accepts_table_evidence() {
        // Four focal elements with two-decimal masses summing to 1.
        let frame = frame3();
        let pairs = [
            (frame.singleton("a").unwrap(), 0.47),
            (frame.singleton("b").unwrap(), 0.32),
            (frame.singleton("c").unwrap(), 0.13),
            (frame.proposition(&["a", "b"]).unwrap(), 0.08),
        ];
        assert!(validate_bpa(&pairs).is_ok());
    }

    #[test]
    fn validate_accepts_single_focal_element() {
        let frame = frame3();
        let pairs = [(frame.singleton("a").unwrap(), 1.0)];
        assert!(validate_bpa(&pairs).is_ok());
    }

    #[test]
    fn validate_reports_sum_breach() {
        let frame = frame3();
        let pairs = [
            (frame.singleton("a").unwrap(), 0.6),
            (frame.singleton("b").unwrap(), 0.6),
        ];
        let report = validate_bpa(&pairs);
        assert!(!report.is_ok());
        assert!(matches!(
            report.violations()[0],
            Violation::SumMismatch { sum } if (sum - 1.2).abs() < 1e-12
        ));
    }

    #[test]
    fn validate_reports_negative_mass() {
        let frame = frame3();
        let pairs = [
            (frame.singleton("a").unwrap(), -0.2),
            (frame.singleton("b").unwrap(), 1.2),
        ];
        let report = validate_bpa(&pairs);
        assert_eq!(report.violations().len(), 1);
        assert!(matches!(
            report.violations()[0],
            Violation::NegativeMass { .. }
        ));
    }

    #[test]
    fn ordinal_projection_discards_order() {
        let frame = frame3();
        let b = frame.singleton("b").unwrap();
        let a = frame.singleton("a").unwrap();
        let c = frame.singleton("c").unwrap();
        let ab = frame.proposition(&["a", "b"]).unwrap();
        let evidence =
            OrdinalEvidence::new([(b, 0.32), (a, 0.42), (c, 0.22), (ab, 0.04)]).unwrap();
        let bpa = bpa_from_ordinal(&evidence);
        assert_relative_eq!(bpa.get(a), 0.42);
        assert_relative_eq!(bpa.get(b), 0.32);
        assert_relative_eq!(bpa.get(c), 0.22);
        assert_relative_eq!(bpa.get(ab), 0.04);
        assert_eq!(evidence.position_of(b), Some(1));
        assert_eq!(evidence.position_of(a), Some(2));
    }

    #[test]
    fn single_entry_evidence_projects() {
        let frame = frame3();
        let a = frame.singleton("a").unwrap();
        let evidence = OrdinalEvidence::new([(a, 1.0)]).unwrap();
        assert_relative_eq!(evidence.to_bpa().get(a), 1.0);
    }

    #[test]
    fn duplicate_proposition_is_rejected() {
        let frame = frame3();
        let a = frame.singleton("a").unwrap();
        assert!(matches!(
            OrdinalEvidence::new([(a, 0.5), (a, 0.5)]),
            Err(Error::DuplicateProposition(_))
        ));
    }

    #[test]
    fn evidence_set_requires_shared_propositions() {
        let frame = frame3();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let c = frame.singleton("c").unwrap();
        let e1 = OrdinalEvidence::new([(a, 0.6), (b, 0.4)]).unwrap();
        let e2 = OrdinalEvidence::new([(b, 0.3), (a, 0.7)]).unwrap();
        let e3 = OrdinalEvidence::new([(a, 0.6), (c, 0.4)]).unwrap();
        assert!(EvidenceSet::new(frame.clone(), vec![e1.clone(), e2]).is_ok());
        assert!(matches!(
            EvidenceSet::new(frame, vec![e1, e3]),
            Err(Error::PropositionSetMismatch { index: 1 })
        ));
    }

    #[test]
    fn evidence_set_rejects_foreign_propositions() {
        let small = Frame::new(["a"]).unwrap();
        let big = frame3();
        let b = big.singleton("b").unwrap();
        let e = OrdinalEvidence::new([(b, 1.0)]).unwrap();
        assert!(matches!(
            EvidenceSet::new(small, vec![e]),
            Err(Error::PropositionOutsideFrame(_))
        ));
    }

    #[test]
    fn canonical_propositions_sort_singletons_first() {
        let frame = frame3();
        let a = frame.singleton("a").unwrap();
        let c = frame.singleton("c").unwrap();
        let ab = frame.proposition(&["a", "b"]).unwrap();
        let e = OrdinalEvidence::new([(ab, 0.2), (c, 0.5), (a, 0.3)]).unwrap();
        let set = EvidenceSet::new(frame, vec![e]).unwrap();
        let props = set.canonical_propositions();
        assert_eq!(props, vec![a, c, ab]);
    }
}
