//! Matrix negation and the vector-level uncertainty score.

use crate::error::{Error, Result};
use crate::frame::Proposition;
use crate::ifs::{NormalizedMatrix, Role, RoleAssignment};

/// Complement-and-normalize image of a [`NormalizedMatrix`]: entry
/// `(j, y)` holds `(1 - m[j][y]) / Σ(1 - m)`, so the whole matrix again
/// sums to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NegatedMatrix {
    rows: Vec<Vec<f64>>,
    propositions: Vec<Proposition>,
}

impl NegatedMatrix {
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

    pub fn total(&self) -> f64 {
        self.rows.iter().flatten().sum()
    }
}

/// Negate every entry against 1 and renormalize the total to 1.
///
/// Degenerate only for a 1×1 matrix holding exactly 1, whose complement
/// is all zeros.
pub fn negate_matrix(m: &NormalizedMatrix) -> Result<NegatedMatrix> {
    let raw: Vec<Vec<f64>> = m
        .rows()
        .iter()
        .map(|row| row.iter().map(|v| 1.0 - v).collect())
        .collect();
    let total: f64 = raw.iter().flatten().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateNegation);
    }
    let rows = raw
        .into_iter()
        .map(|row| row.into_iter().map(|v| v / total).collect())
        .collect();
    Ok(NegatedMatrix {
        rows,
        propositions: m.propositions().to_vec(),
    })
}

/// Uncertainty score of the proposition at row `j`.
///
/// Sums `m[j][y]·g[j][i]` over dimension pairs `y ≠ i`, plus
/// `m[j][y]·g[f][i]` over the same pairs for every other proposition
/// `f ≠ j`. Smaller scores mean a more uncertain proposition.
pub fn uncertainty(m: &NormalizedMatrix, g: &NegatedMatrix, j: usize) -> Result<f64> {
    uncertainty_impl(m, g, j, None)
}

/// Like [`uncertainty`], but drops products whose two factors play the
/// same structural role toward the scored proposition.
///
/// Toward a composite target every row plays membership, so with the
/// filter on, composite propositions score 0 and weighting over them
/// fails with the documented zero-column error; the filter is meant for
/// singleton-only frames.
pub fn uncertainty_filtered(
    m: &NormalizedMatrix,
    g: &NegatedMatrix,
    j: usize,
    roles: &RoleAssignment,
) -> Result<f64> {
    uncertainty_impl(m, g, j, Some(roles))
}

fn uncertainty_impl(
    m: &NormalizedMatrix,
    g: &NegatedMatrix,
    j: usize,
    roles: Option<&RoleAssignment>,
) -> Result<f64> {
    if m.row_count() != g.row_count() || m.dims() != g.dims() {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {}x{}, negation is {}x{}",
            m.row_count(),
            m.dims(),
            g.row_count(),
            g.dims()
        )));
    }
    if j >= m.row_count() {
        return Err(Error::RowOutOfRange {
            index: j,
            rows: m.row_count(),
        });
    }
    let dims = m.dims();
    let props = m.row_count();
    // With a role filter, the role of a factor is its row's role toward
    // the scored proposition j.
    let keep = |f: usize| -> bool {
        match roles {
            None => true,
            Some(r) => {
                let m_role = r.role_of(j, j);
                let g_role = r.role_of(j, f);
                !(m_role.is_some() && m_role == g_role)
            }
        }
    };
    let mut u = 0.0;
    for y in 0..dims {
        for i in 0..dims {
            if y == i {
                continue;
            }
            if keep(j) {
                u += m.rows()[j][y] * g.rows()[j][i];
            }
            for f in 0..props {
                if f != j && keep(f) {
                    u += m.rows()[j][y] * g.rows()[f][i];
                }
            }
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::ifs::assign_roles;
    use crate::mass::OrdinalEvidence;
    use approx::assert_relative_eq;

    fn props(n: usize) -> Vec<Proposition> {
        (0..n)
            .map(|i| Proposition::from_bits(1 << i).unwrap())
            .collect()
    }

    #[test]
    fn negation_of_two_by_two() {
        // Complements (0.9, 0.8, 0.7, 0.6) total 3.0.
        let m = NormalizedMatrix::from_raw(
            vec![vec![0.1, 0.2], vec![0.3, 0.4]],
            props(2),
        );
        let g = negate_matrix(&m).unwrap();
        assert_relative_eq!(g.rows()[0][0], 0.3, epsilon = 1e-15);
        assert_relative_eq!(g.rows()[0][1], 0.8 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(g.rows()[1][0], 0.7 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(g.rows()[1][1], 0.2, epsilon = 1e-15);
        assert_relative_eq!(g.total(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn negation_of_uniform_matrix_is_uniform() {
        let u = 1.0 / 8.0;
        let m = NormalizedMatrix::from_raw(vec![vec![u; 4]; 2], props(2));
        let g = negate_matrix(&m).unwrap();
        for row in g.rows() {
            for &v in row {
                assert_relative_eq!(v, u, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn negation_with_a_single_unit_entry() {
        // The 1-entry becomes the only zero; the rest normalize by r·c - 1.
        let mut rows = vec![vec![0.0; 4]; 2];
        rows[0][1] = 1.0;
        let m = NormalizedMatrix::from_raw(rows, props(2));
        let g = negate_matrix(&m).unwrap();
        assert_relative_eq!(g.rows()[0][1], 0.0, epsilon = 1e-15);
        assert_relative_eq!(g.rows()[1][2], 1.0 / 7.0, epsilon = 1e-15);
        assert_relative_eq!(g.total(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn negation_degenerates_on_one_by_one_unit_matrix() {
        let m = NormalizedMatrix::from_raw(vec![vec![1.0]], props(1));
        assert!(matches!(negate_matrix(&m), Err(Error::DegenerateNegation)));
    }

    #[test]
    fn uncertainty_of_zero_matrix_is_zero() {
        let m = NormalizedMatrix::from_raw(vec![vec![0.0; 4]; 2], props(2));
        let g = NegatedMatrix {
            rows: vec![vec![0.125; 4]; 2],
            propositions: props(2),
        };
        for j in 0..2 {
            assert_relative_eq!(uncertainty(&m, &g, j).unwrap(), 0.0);
        }
    }

    #[test]
    fn uncertainty_single_proposition_two_dims() {
        // Only the cross terms p·g2 + q·g1 survive.
        let (p, q, g1, g2) = (0.6, 0.4, 0.55, 0.45);
        let m = NormalizedMatrix::from_raw(vec![vec![p, q]], props(1));
        let g = NegatedMatrix {
            rows: vec![vec![g1, g2]],
            propositions: props(1),
        };
        assert_relative_eq!(
            uncertainty(&m, &g, 0).unwrap(),
            p * g2 + q * g1,
            epsilon = 1e-15
        );
    }

    #[test]
    fn uncertainty_two_by_two_hand_computed() {
        let m = NormalizedMatrix::from_raw(
            vec![vec![0.3, 0.2], vec![0.1, 0.4]],
            props(2),
        );
        let g = negate_matrix(&m).unwrap();
        assert_relative_eq!(
            uncertainty(&m, &g, 0).unwrap(),
            0.24666666666666667,
            epsilon = 1e-14
        );
        assert_relative_eq!(uncertainty(&m, &g, 1).unwrap(), 0.26, epsilon = 1e-14);
    }

    #[test]
    fn uncertainty_checks_shape_and_index() {
        let m = NormalizedMatrix::from_raw(vec![vec![0.5, 0.5]], props(1));
        let g_bad = NegatedMatrix {
            rows: vec![vec![0.25; 4]],
            propositions: props(1),
        };
        assert!(matches!(
            uncertainty(&m, &g_bad, 0),
            Err(Error::ShapeMismatch(_))
        ));
        let g = negate_matrix(&m).unwrap();
        assert!(matches!(
            uncertainty(&m, &g, 5),
            Err(Error::RowOutOfRange { .. })
        ));
    }

    #[test]
    fn uncertainty_is_bilinear_in_the_scored_row() {
        let base = vec![vec![0.2, 0.1, 0.05, 0.05], vec![0.3, 0.2, 0.05, 0.05]];
        let g = NegatedMatrix {
            rows: vec![vec![0.1, 0.2, 0.1, 0.1], vec![0.2, 0.1, 0.1, 0.1]],
            propositions: props(2),
        };
        let m1 = NormalizedMatrix::from_raw(base.clone(), props(2));
        let mut scaled = base;
        for v in &mut scaled[0] {
            *v *= 3.0;
        }
        let m2 = NormalizedMatrix::from_raw(scaled, props(2));
        let u1 = uncertainty(&m1, &g, 0).unwrap();
        let u2 = uncertainty(&m2, &g, 0).unwrap();
        assert_relative_eq!(u2, 3.0 * u1, epsilon = 1e-12);
    }

    #[test]
    fn role_filter_drops_same_role_products() {
        // Singleton-only frame: toward a, row a is membership and row b
        // is non-membership, so the filter removes exactly the first
        // term (products against a's own negated row).
        let frame = Frame::new(["a", "b"]).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let e = OrdinalEvidence::new([(a, 0.6), (b, 0.4)]).unwrap();
        let roles = assign_roles(&frame, &e).unwrap();
        let m = NormalizedMatrix::from_raw(
            vec![vec![0.3, 0.2], vec![0.1, 0.4]],
            vec![a, b],
        );
        let g = negate_matrix(&m).unwrap();
        let full = uncertainty(&m, &g, 0).unwrap();
        let filtered = uncertainty_filtered(&m, &g, 0, &roles).unwrap();
        let first_term = m.rows()[0][0] * g.rows()[0][1] + m.rows()[0][1] * g.rows()[0][0];
        assert_relative_eq!(filtered, full - first_term, epsilon = 1e-14);
    }
}
