//! Negation of a mass function.
//!
//! The negation replaces every focal mass by its normalized complement,
//! shifting belief to the other side of each proposition. It is computed
//! by the explicit three-step procedure (complement, total, normalize)
//! and cross-checked against the closed form `(1 - m) / (n - 1)`.

use crate::error::{Error, Result};
use crate::mass::MassFunction;

/// Agreement required between the stepwise procedure and the closed form.
const CLOSED_FORM_TOLERANCE: f64 = 1e-12;

/// Negate a mass function.
///
/// Zero-mass propositions are dropped first; `n` counts focal elements.
/// Fails when fewer than two focal elements remain, because the
/// complement of a lone certain proposition normalizes to nothing.
pub fn negate_bpa(m: &MassFunction) -> Result<MassFunction> {
    let focal: Vec<(crate::frame::Proposition, f64)> = m.focal_elements().collect();
    let n = focal.len();
    if n < 2 {
        return Err(Error::TooFewFocalElements(n));
    }

    // Step 1: complement each focal mass.
    let complements: Vec<f64> = focal.iter().map(|&(_, mass)| 1.0 - mass).collect();
    // Step 2: total of the complements.
    let total: f64 = complements.iter().sum();
    // Step 3: normalize. total = n - 1 > 0 here.
    let negated: Vec<(crate::frame::Proposition, f64)> = focal
        .iter()
        .zip(&complements)
        .map(|(&(p, _), &c)| (p, c / total))
        .collect();

    for (&(_, mass), &(_, stepwise)) in focal.iter().zip(&negated) {
        let closed = (1.0 - mass) / (n as f64 - 1.0);
        assert!(
            (stepwise - closed).abs() <= CLOSED_FORM_TOLERANCE,
            "stepwise negation {stepwise} disagrees with closed form {closed}"
        );
    }

    MassFunction::new(negated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use approx::assert_relative_eq;

    fn bpa(frame: &Frame, pairs: &[(&str, f64)]) -> MassFunction {
        MassFunction::new(
            pairs
                .iter()
                .map(|(label, m)| (frame.singleton(label).unwrap(), *m)),
        )
        .unwrap()
    }

    #[test]
    fn two_element_negation_swaps_masses() {
        let frame = Frame::new(["a", "b"]).unwrap();
        let m = bpa(&frame, &[("a", 0.7), ("b", 0.3)]);
        let n = negate_bpa(&m).unwrap();
        assert_relative_eq!(n.get(frame.singleton("a").unwrap()), 0.3, epsilon = 1e-12);
        assert_relative_eq!(n.get(frame.singleton("b").unwrap()), 0.7, epsilon = 1e-12);
    }

    #[test]
    fn uniform_bpa_is_a_fixed_point() {
        let frame = Frame::new(["a", "b", "c", "d"]).unwrap();
        let m = bpa(&frame, &[("a", 0.25), ("b", 0.25), ("c", 0.25), ("d", 0.25)]);
        let n = negate_bpa(&m).unwrap();
        for (p, mass) in m.iter() {
            assert_relative_eq!(n.get(p), mass, epsilon = 1e-12);
        }
    }

    #[test]
    fn three_element_negation_by_hand() {
        // Complements (0.4, 0.7, 0.9), total 2, normalized (0.2, 0.35, 0.45).
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let m = bpa(&frame, &[("a", 0.6), ("b", 0.3), ("c", 0.1)]);
        let n = negate_bpa(&m).unwrap();
        assert_relative_eq!(n.get(frame.singleton("a").unwrap()), 0.2, epsilon = 1e-12);
        assert_relative_eq!(n.get(frame.singleton("b").unwrap()), 0.35, epsilon = 1e-12);
        assert_relative_eq!(n.get(frame.singleton("c").unwrap()), 0.45, epsilon = 1e-12);
    }

    #[test]
    fn single_focal_element_is_rejected() {
        let frame = Frame::new(["a", "b"]).unwrap();
        let m = bpa(&frame, &[("a", 1.0)]);
        assert!(matches!(negate_bpa(&m), Err(Error::TooFewFocalElements(1))));
    }

    #[test]
    fn zero_mass_entries_are_dropped_before_counting() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let m = bpa(&frame, &[("a", 0.7), ("b", 0.3), ("c", 0.0)]);
        let n = negate_bpa(&m).unwrap();
        // n = 2 focal elements: plain swap, and c stays out of the result.
        assert_relative_eq!(n.get(frame.singleton("a").unwrap()), 0.3, epsilon = 1e-12);
        assert_relative_eq!(n.get(frame.singleton("c").unwrap()), 0.0);
    }

    #[test]
    fn negation_reverses_ranking() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let m = bpa(&frame, &[("a", 0.5), ("b", 0.3), ("c", 0.2)]);
        let n = negate_bpa(&m).unwrap();
        let a = frame.singleton("a").unwrap();
        let b = frame.singleton("b").unwrap();
        let c = frame.singleton("c").unwrap();
        assert!(m.get(a) > m.get(b) && n.get(a) < n.get(b));
        assert!(m.get(b) > m.get(c) && n.get(b) < n.get(c));
    }

    #[test]
    fn double_negation_restores_two_element_bpa() {
        let frame = Frame::new(["a", "b"]).unwrap();
        let m = bpa(&frame, &[("a", 0.62), ("b", 0.38)]);
        let back = negate_bpa(&negate_bpa(&m).unwrap()).unwrap();
        for (p, mass) in m.iter() {
            assert_relative_eq!(back.get(p), mass, epsilon = 1e-12);
        }
    }
}
