//! Conflict measurement and the classical rule of combination.

use crate::config::KMode;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::{EvidenceSet, MassFunction};

/// Conflict below this distance from 1 is treated as total.
const TOTAL_CONFLICT_TOLERANCE: f64 = 1e-12;

/// Degree of conflict between two bodies of evidence: the total mass
/// product over focal pairs with empty intersection. Always in `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ConflictCoefficient(f64);

impl ConflictCoefficient {
    pub fn value(self) -> f64 {
        self.0
    }

    /// True when the two bodies of evidence cannot be combined.
    pub fn is_total(self) -> bool {
        (self.0 - 1.0).abs() < TOTAL_CONFLICT_TOLERANCE
    }
}

/// Conflict coefficient of two mass functions over `frame`.
///
/// Only focal-element pairs are enumerated, never the full power set.
pub fn conflict_k(
    frame: &Frame,
    m1: &MassFunction,
    m2: &MassFunction,
) -> Result<ConflictCoefficient> {
    check_frame(frame, m1)?;
    check_frame(frame, m2)?;
    let mut k = 0.0;
    for (g, mg) in m1.focal_elements() {
        for (h, mh) in m2.focal_elements() {
            if g.is_disjoint(h) {
                k += mg * mh;
            }
        }
    }
    // Rounding can nudge the sum a hair past 1.
    Ok(ConflictCoefficient(k.min(1.0)))
}

/// Combine two mass functions with the classical rule:
/// `m(E) = (1/(1-K)) · Σ_{G∩H=E} m1(G)·m2(H)`.
pub fn combine(frame: &Frame, m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let k = conflict_k(frame, m1, m2)?;
    if k.is_total() {
        return Err(Error::TotalConflict);
    }
    let scale = 1.0 / (1.0 - k.value());
    let mut numerators: Vec<(crate::frame::Proposition, f64)> = Vec::new();
    for (g, mg) in m1.focal_elements() {
        for (h, mh) in m2.focal_elements() {
            if let Some(e) = g.intersection(h) {
                numerators.push((e, mg * mh * scale));
            }
        }
    }
    MassFunction::new(numerators)
}

/// Combine `m` with itself `times` times; `times = 0` returns `m`
/// unchanged. Total conflict at any step propagates as an error.
pub fn self_combine(frame: &Frame, m: &MassFunction, times: usize) -> Result<MassFunction> {
    let mut out = m.clone();
    for _ in 0..times {
        out = combine(frame, &out, m)?;
    }
    Ok(out)
}

/// Kernel width derived from the conflict among an evidence set's
/// order-erased mass functions, aggregated over all unordered pairs
/// according to `mode`. A single evidence has no pairs and yields 0.
pub fn width_k(set: &EvidenceSet, mode: KMode) -> Result<f64> {
    let bpas: Vec<MassFunction> = set.evidences().iter().map(|e| e.to_bpa()).collect();
    if bpas.len() < 2 {
        return Ok(0.0);
    }
    let mut ks = Vec::new();
    for i in 0..bpas.len() {
        for j in i + 1..bpas.len() {
            ks.push(conflict_k(set.frame(), &bpas[i], &bpas[j])?.value());
        }
    }
    let width = match mode {
        KMode::PairwiseSum => ks.iter().sum(),
        KMode::PairwiseMean => ks.iter().sum::<f64>() / ks.len() as f64,
        KMode::PairwiseMax => ks.iter().cloned().fold(0.0, f64::max),
    };
    Ok(width)
}

fn check_frame(frame: &Frame, m: &MassFunction) -> Result<()> {
    for (p, _) in m.iter() {
        if !frame.contains(p) {
            return Err(Error::PropositionOutsideFrame(frame.describe(p)));
        }
    }
    Ok(())
}
