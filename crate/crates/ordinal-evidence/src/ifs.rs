//! Structure majorization of a feature matrix with intuitionistic-fuzzy
//! roles.
//!
//! Toward a singleton proposition, each matrix row plays one of three
//! roles: the proposition's own row supports it (membership), rows of
//! disjoint singletons oppose it (non-membership), and rows of composite
//! propositions containing it leave it undecided (hesitancy). A
//! composite proposition is backed by all rows at once through its
//! column sums. Each row is then rescaled by the share its membership
//! aggregate holds against the full role triple, and the matrix is
//! normalized to total mass 1.

use crate::error::{Error, Result};
use crate::frame::{Frame, Proposition};
use crate::mass::OrdinalEvidence;
use crate::mrbf::FeatureMatrix;

/// A membership / non-membership / hesitancy triple. The two stated
/// degrees must not exceed 1 together; hesitancy is the remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfsTriple {
    membership: f64,
    non_membership: f64,
}

impl IfsTriple {
    pub fn new(membership: f64, non_membership: f64) -> Result<Self> {
        for (what, value) in [("membership", membership), ("non-membership", non_membership)] {
            if !(0.0..=1.0).contains(&value) || !value.is_finite() {
                return Err(Error::OutOfUnitRange { what, value });
            }
        }
        // Tolerate rounding right at the boundary.
        if membership + non_membership > 1.0 + 1e-12 {
            return Err(Error::IfsConstraint {
                membership,
                non_membership,
            });
        }
        Ok(IfsTriple {
            membership,
            non_membership,
        })
    }

    pub fn membership(self) -> f64 {
        self.membership
    }

    pub fn non_membership(self) -> f64 {
        self.non_membership
    }

    /// Degree of hesitance: `1 - membership - non-membership`.
    pub fn hesitancy(self) -> f64 {
        (1.0 - self.membership - self.non_membership).max(0.0)
    }
}

/// The role a row plays toward a target proposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Membership,
    NonMembership,
    Hesitancy,
}

/// Row indices playing each role toward one target proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetRoles {
    pub membership: Vec<usize>,
    pub non_membership: Vec<usize>,
    pub hesitancy: Vec<usize>,
}

/// Per-proposition role structure of an evidence's matrix rows.
///
/// Targets are indexed like the evidence's positions: `targets()[i]`
/// describes the proposition at position `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleAssignment {
    targets: Vec<TargetRoles>,
    propositions: Vec<Proposition>,
}

impl RoleAssignment {
    pub fn targets(&self) -> &[TargetRoles] {
        &self.targets
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    /// Role of `row` toward target `target`, or `None` when the row is
    /// uninvolved (a composite row that does not contain the singleton
    /// target).
    pub fn role_of(&self, target: usize, row: usize) -> Option<Role> {
        let t = self.targets.get(target)?;
        if t.membership.contains(&row) {
            Some(Role::Membership)
        } else if t.non_membership.contains(&row) {
            Some(Role::NonMembership)
        } else if t.hesitancy.contains(&row) {
            Some(Role::Hesitancy)
        } else {
            None
        }
    }
}

/// Assign roles to an evidence's rows, one target per entry.
///
/// For a singleton target: its own row is membership, rows of disjoint
/// singletons are non-membership, rows of composite propositions
/// containing it are hesitancy. For a composite target every row counts
/// toward membership (via column sums) and the other roles are empty.
pub fn assign_roles(frame: &Frame, evidence: &OrdinalEvidence) -> Result<RoleAssignment> {
    let props: Vec<Proposition> = evidence.entries().iter().map(|&(p, _)| p).collect();
    for &p in &props {
        if !frame.contains(p) {
            return Err(Error::PropositionOutsideFrame(frame.describe(p)));
        }
    }
    let all_rows: Vec<usize> = (0..props.len()).collect();
    let mut targets = Vec::with_capacity(props.len());
    for (i, &target) in props.iter().enumerate() {
        if target.is_singleton() {
            let non_membership = props
                .iter()
                .enumerate()
                .filter(|&(j, q)| j != i && q.is_singleton() && q.is_disjoint(target))
                .map(|(j, _)| j)
                .collect();
            let hesitancy = props
                .iter()
                .enumerate()
                .filter(|&(_, q)| q.is_strict_superset_of(target))
                .map(|(j, _)| j)
                .collect();
            targets.push(TargetRoles {
                membership: vec![i],
                non_membership,
                hesitancy,
            });
        } else {
            targets.push(TargetRoles {
                membership: all_rows.clone(),
                non_membership: Vec::new(),
                hesitancy: Vec::new(),
            });
        }
    }
    Ok(RoleAssignment {
        targets,
        propositions: props,
    })
}

/// A feature matrix rescaled by role shares and normalized so all
/// entries are in `[0,1]` and sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMatrix {
    rows: Vec<Vec<f64>>,
    propositions: Vec<Proposition>,
}

impl NormalizedMatrix {
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn dims(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn row_of(&self, p: Proposition) -> Option<&[f64]> {
        let i = self.propositions.iter().position(|&q| q == p)?;
        Some(&self.rows[i])
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().flatten().sum()
    }

    #[cfg(test)]
    pub(crate) fn from_raw(rows: Vec<Vec<f64>>, propositions: Vec<Proposition>) -> Self {
        NormalizedMatrix { rows, propositions }
    }
}

/// Rescale each row by its role shares and normalize the total to 1.
///
/// Singleton rows are scaled by the membership ratio of their role
/// triple; composite rows are scaled component-wise by that column's
/// share of the total column mass.
pub fn majorize(matrix: &FeatureMatrix, roles: &RoleAssignment) -> Result<NormalizedMatrix> {
    if matrix.propositions() != roles.propositions() {
        return Err(Error::ShapeMismatch(
            "matrix rows do not align with the role assignment".into(),
        ));
    }
    let rows = matrix.to_vec();
    let dims = matrix.dims();
    let row_sum = |i: usize| -> f64 { rows[i].iter().sum() };
    let aggregate = |indices: &[usize]| -> f64 { indices.iter().map(|&i| row_sum(i)).sum() };

    let column_totals: Vec<f64> = (0..dims)
        .map(|y| rows.iter().map(|r| r[y]).sum())
        .collect();
    let grand_total: f64 = column_totals.iter().sum();
    if grand_total <= 0.0 {
        return Err(Error::AllZeroMatrix);
    }

    let mut scaled = Vec::with_capacity(rows.len());
    for (i, target) in roles.targets().iter().enumerate() {
        let proposition = roles.propositions()[i];
        if proposition.is_singleton() {
            let membership = aggregate(&target.membership);
            let non_membership = aggregate(&target.non_membership);
            let hesitancy = aggregate(&target.hesitancy);
            let denom = membership + non_membership + hesitancy;
            if denom <= 0.0 {
                return Err(Error::ZeroRoleMass { row: i });
            }
            let triple = IfsTriple::new(membership / denom, non_membership / denom)?;
            let ratio = triple.membership();
            scaled.push(rows[i].iter().map(|v| v * ratio).collect::<Vec<f64>>());
        } else {
            // Component y keeps its column's share of the overall mass.
            let row: Vec<f64> = rows[i]
                .iter()
                .enumerate()
                .map(|(y, v)| v * column_totals[y] / grand_total)
                .collect();
            scaled.push(row);
        }
    }

    let total: f64 = scaled.iter().flatten().sum();
    if total <= 0.0 {
        return Err(Error::AllZeroMatrix);
    }
    let normalized: Vec<Vec<f64>> = scaled
        .into_iter()
        .map(|row| row.into_iter().map(|v| v / total).collect())
        .collect();
    Ok(NormalizedMatrix {
        rows: normalized,
        propositions: roles.propositions().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CoefficientMode, OrderScale};
    use crate::frame::Frame;
    use crate::mrbf::{expand_evidence, FeatureVector};
    use approx::assert_relative_eq;

    fn matrix_from(rows: Vec<Vec<f64>>, props: Vec<Proposition>) -> FeatureMatrix {
        FeatureMatrix::new(
            rows.into_iter().map(FeatureVector::from_components).collect(),
            props,
        )
    }

    #[test]
    fn ifs_triple_constraint() {
        let t = IfsTriple::new(0.5, 0.3).unwrap();
        assert_relative_eq!(t.hesitancy(), 0.2, epsilon = 1e-15);
        assert!(IfsTriple::new(0.7, 0.5).is_err());
        assert!(IfsTriple::new(-0.1, 0.5).is_err());
        assert!(IfsTriple::new(0.1, 1.5).is_err());
    }

    #[test]
    fn roles_on_two_singletons_and_their_union() {
        // a's opposition is b's row, its hesitancy the {a,b} row.
        let frame = Frame::new(["a", "b"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let ab = frame.proposition(&["a", "b"]).unwrap();
        let e = OrdinalEvidence::new([(a, 0.5), (b, 0.3), (ab, 0.2)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();

        assert_eq!(roles.targets()[0].membership, vec![0]);
        assert_eq!(roles.targets()[0].non_membership, vec![1]);
        assert_eq!(roles.targets()[0].hesitancy, vec![2]);

        assert_eq!(roles.targets()[1].membership, vec![1]);
        assert_eq!(roles.targets()[1].non_membership, vec![0]);
        assert_eq!(roles.targets()[1].hesitancy, vec![2]);

        assert_eq!(roles.targets()[2].membership, vec![0, 1, 2]);
        assert!(roles.targets()[2].non_membership.is_empty());
        assert!(roles.targets()[2].hesitancy.is_empty());

        assert_eq!(roles.role_of(0, 1), Some(Role::NonMembership));
        assert_eq!(roles.role_of(0, 2), Some(Role::Hesitancy));
        assert_eq!(roles.role_of(2, 0), Some(Role::Membership));
    }

    #[test]
    fn roles_on_a_lone_singleton() {
        let frame = Frame::new(["a"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let e = OrdinalEvidence::new([(a, 1.0)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();
        assert_eq!(roles.targets()[0].membership, vec![0]);
        assert!(roles.targets()[0].non_membership.is_empty());
        assert!(roles.targets()[0].hesitancy.is_empty());
    }

    #[test]
    fn roles_generalize_past_the_two_singleton_case() {
        // c has no composite superset: empty hesitancy. a opposes b and c.
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let c = frame.singleton("c").unwrap();
        let ab = frame.proposition(&["a", "b"]).unwrap();
        let e = OrdinalEvidence::new([(a, 0.4), (b, 0.3), (c, 0.2), (ab, 0.1)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();

        let c_target = &roles.targets()[2];
        assert_eq!(c_target.membership, vec![2]);
        assert_eq!(c_target.non_membership, vec![0, 1]);
        assert!(c_target.hesitancy.is_empty());

        let a_target = &roles.targets()[0];
        assert_eq!(a_target.non_membership, vec![1, 2]);
        assert_eq!(a_target.hesitancy, vec![3]);
        // The composite row plays no role toward c.
        assert_eq!(roles.role_of(2, 3), None);
    }

    #[test]
    fn majorize_synthetic_three_row_instance() {
        // Hand-computed: vM/vN/vH sums are 0.75/0.57/0.37 for a, so
        // MRatio_a = 0.75/1.69 and MRatio_b = 0.57/1.69; the composite
        // row scales by column shares Co_y/1.69; total then rescales to 1.
        let frame = Frame::new(["a", "b"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let ab = frame.proposition(&["a", "b"]).unwrap();
        let e = OrdinalEvidence::new([(a, 0.5), (b, 0.3), (ab, 0.2)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();
        let m = matrix_from(
            vec![
                vec![0.4, 0.2, 0.1, 0.05],
                vec![0.3, 0.15, 0.08, 0.04],
                vec![0.2, 0.1, 0.05, 0.02],
            ],
            vec![a, b, ab],
        );
        let out = majorize(&m, &roles).unwrap();
        let expected = [
            [
                0.26640618062339046,
                0.13320309031169523,
                0.066601545155847616,
                0.033300772577923808,
            ],
            [
                0.15185152295533256,
                0.075925761477666282,
                0.04049373945475535,
                0.020246869727377675,
            ],
            [
                0.15984370837403428,
                0.039960927093508569,
                0.010212236923896634,
                0.0019536453245715301,
            ],
        ];
        for (row, want) in out.rows().iter().zip(expected) {
            for (got, want) in row.iter().zip(want) {
                assert_relative_eq!(got, &want, epsilon = 1e-14);
            }
        }
        assert_relative_eq!(out.total(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn majorize_uniform_matrix_shares_evenly() {
        let frame = Frame::new(["a", "b"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let ab = frame.proposition(&["a", "b"]).unwrap();
        let e = OrdinalEvidence::new([(a, 0.5), (b, 0.3), (ab, 0.2)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();
        let u = 0.25;
        let m = matrix_from(vec![vec![u; 4]; 3], vec![a, b, ab]);
        let out = majorize(&m, &roles).unwrap();
        // Before the global rescale: singleton rows scale by 1/3 and
        // composite components by 1/4, so singleton entries end up equal
        // and composite entries 3/4 of them.
        let s = out.rows()[0][0];
        for y in 0..4 {
            assert_relative_eq!(out.rows()[0][y], s, epsilon = 1e-15);
            assert_relative_eq!(out.rows()[1][y], s, epsilon = 1e-15);
            assert_relative_eq!(out.rows()[2][y], 0.75 * s, epsilon = 1e-15);
        }
        assert_relative_eq!(out.total(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn majorize_without_opposition_keeps_singleton_rows_unscaled() {
        // A lone singleton with zero non-membership and hesitancy mass
        // has MRatio 1: only the global rescale applies.
        let frame = Frame::new(["a"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let e = OrdinalEvidence::new([(a, 1.0)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();
        let m = matrix_from(vec![vec![0.5, 0.25, 0.15, 0.1]], vec![a]);
        let out = majorize(&m, &roles).unwrap();
        for (got, want) in out.rows()[0].iter().zip([0.5, 0.25, 0.15, 0.1]) {
            assert_relative_eq!(got, &want, epsilon = 1e-15);
        }
    }

    #[test]
    fn majorize_rejects_all_zero_matrix() {
        let frame = Frame::new(["a", "b"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let e = OrdinalEvidence::new([(a, 0.6), (b, 0.4)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();
        let m = matrix_from(vec![vec![0.0; 4]; 2], vec![a, b]);
        assert!(matches!(majorize(&m, &roles), Err(Error::AllZeroMatrix)));
    }

    #[test]
    fn majorize_is_equivariant_under_singleton_swap() {
        // Two singletons with identical rows: swapping labels swaps rows.
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let c = frame.singleton("c").unwrap();
        let rows = vec![
            vec![0.3, 0.2, 0.1, 0.05],
            vec![0.3, 0.2, 0.1, 0.05],
            vec![0.1, 0.08, 0.04, 0.02],
        ];
        let e_ab = OrdinalEvidence::new([(a, 0.4), (b, 0.4), (c, 0.2)]).unwrap();
        let e_ba = OrdinalEvidence::new([(b, 0.4), (a, 0.4), (c, 0.2)]).unwrap();
        let out_ab = majorize(
            &matrix_from(rows.clone(), vec![a, b, c]),
            &assign_roles(&frame, &e_ab).unwrap(),
        )
        .unwrap();
        let out_ba = majorize(
            &matrix_from(rows, vec![b, a, c]),
            &assign_roles(&frame, &e_ba).unwrap(),
        )
        .unwrap();
        for y in 0..4 {
            assert_relative_eq!(out_ab.rows()[0][y], out_ba.rows()[1][y], epsilon = 1e-15);
            assert_relative_eq!(out_ab.rows()[1][y], out_ba.rows()[0][y], epsilon = 1e-15);
            assert_relative_eq!(out_ab.rows()[2][y], out_ba.rows()[2][y], epsilon = 1e-15);
        }
    }

    #[test]
    fn membership_ratio_stays_in_unit_range() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let c = frame.singleton("c").unwrap();
        let ab = frame.proposition(&["a", "b"]).unwrap();
        let e = OrdinalEvidence::new([(c, 0.28), (a, 0.44), (b, 0.12), (ab, 0.16)]).unwrap();
        let matrix =
            expand_evidence(&e, 0.7, OrderScale::Normalized, 4, CoefficientMode::Plain).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();
        let out = majorize(&matrix, &roles).unwrap();
        for row in out.rows() {
            for &v in row {
                assert!((0.0..=1.0).contains(&v));
            }
        }
        assert_relative_eq!(out.total(), 1.0, epsilon = 1e-12);
    }
}
