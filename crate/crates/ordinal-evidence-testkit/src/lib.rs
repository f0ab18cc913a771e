//! Brute-force oracles and seeded generators for exercising
//! `ordinal-evidence`. Deliberately the slowest, most literal
//! formulations — full power-set scans and term-by-term series — so the
//! library can be validated against an independently auditable
//! computation. Test-only; never ship this crate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ordinal_evidence::frame::{Frame, Proposition};
use ordinal_evidence::mass::{EvidenceSet, MassFunction, OrdinalEvidence};
use ordinal_evidence::{Error, Result};

/// Combine two mass functions by scanning the full power set of the
/// frame: for every non-empty subset `E`, sum `m1(G)·m2(H)` over *all*
/// subset pairs with `G ∩ H = E`, then normalize by `1 - K`.
///
/// Frames above 6 elements are rejected; the scan is quartic in the
/// power-set size and exists for auditability, not speed.
pub fn oracle_combine(
    frame: &Frame,
    m1: &MassFunction,
    m2: &MassFunction,
) -> Result<MassFunction> {
    assert!(frame.len() <= 6, "oracle_combine is for frames of size <= 6");
    let full = frame.full().bits();
    let mut conflict = 0.0;
    let mut numerators: Vec<(u64, f64)> = Vec::new();
    // g and h run over every subset of the frame, empty set included;
    // non-focal subsets contribute zero mass.
    for g in 0..=full {
        if g & !full != 0 {
            continue;
        }
        let mg = mass_of(m1, g);
        if mg == 0.0 {
            continue;
        }
        for h in 0..=full {
            if h & !full != 0 {
                continue;
            }
            let mh = mass_of(m2, h);
            if mh == 0.0 {
                continue;
            }
            let e = g & h;
            if e == 0 {
                conflict += mg * mh;
            } else {
                numerators.push((e, mg * mh));
            }
        }
    }
    if (conflict - 1.0).abs() < 1e-12 {
        return Err(Error::TotalConflict);
    }
    let scale = 1.0 / (1.0 - conflict);
    MassFunction::new(
        numerators
            .into_iter()
            .map(|(bits, v)| (Proposition::from_bits(bits).unwrap(), v * scale)),
    )
}

fn mass_of(m: &MassFunction, bits: u64) -> f64 {
    match Proposition::from_bits(bits) {
        Ok(p) => m.get(p),
        Err(_) => 0.0,
    }
}

/// Partial sums of the kernel series, term by term:
/// `Σ_{j<dims} ((2k·order·mass)^j / j!) · e^{-k(order² + mass²)}`.
///
/// The sums increase monotonically toward `e^{-k(order - mass)²}`; for
/// `order ≤ 10` and `k ≤ 1` they are within 1e-10 of it by 50 terms.
pub fn oracle_kernel_sum(order: f64, mass: f64, k: f64, dims: usize) -> f64 {
    let envelope = (-k * (order * order + mass * mass)).exp();
    let x = 2.0 * k * order * mass;
    let mut sum = 0.0;
    let mut term = envelope;
    for j in 0..dims {
        sum += term;
        term *= x / (j as f64 + 1.0);
    }
    sum
}

/// Uncertainty of row `j` by flat enumeration of every `(y, i, f)`
/// triple with explicit guards, mirroring the score's definition one
/// index at a time.
pub fn oracle_uncertainty(m: &[Vec<f64>], g: &[Vec<f64>], j: usize) -> f64 {
    let dims = m[0].len();
    let props = m.len();
    let mut u = 0.0;
    for y in 0..dims {
        for i in 0..dims {
            for f in 0..props {
                if y == i {
                    continue;
                }
                if f == j {
                    u += m[j][y] * g[j][i];
                } else {
                    u += m[j][y] * g[f][i];
                }
            }
        }
    }
    u
}

/// Seeded generator for random frames, mass functions, ordinal
/// evidences and evidence sets. The same seed always reproduces the
/// same sequence.
pub struct EvidenceGenerator {
    rng: ChaCha8Rng,
}

impl EvidenceGenerator {
    pub fn new(seed: u64) -> Self {
        EvidenceGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A frame with `n` elements labeled `e0..`.
    pub fn frame(&mut self, n: usize) -> Frame {
        Frame::new((0..n).map(|i| format!("e{i}"))).unwrap()
    }

    /// `count` distinct non-empty random subsets of the frame.
    pub fn propositions(&mut self, frame: &Frame, count: usize) -> Vec<Proposition> {
        let full = frame.full().bits();
        let max = full.min(u64::MAX - 1);
        assert!(count as u64 <= max, "not enough distinct subsets");
        let mut picked = Vec::with_capacity(count);
        while picked.len() < count {
            let bits = self.rng.gen_range(1..=full);
            let p = Proposition::from_bits(bits).unwrap();
            if !picked.contains(&p) {
                picked.push(p);
            }
        }
        picked
    }

    /// Masses on a simplex over `count` random focal elements.
    pub fn bpa(&mut self, frame: &Frame, count: usize) -> MassFunction {
        let props = self.propositions(frame, count);
        let masses = self.simplex(count);
        MassFunction::new(props.into_iter().zip(masses)).unwrap()
    }

    /// A random ordinal evidence: random focal elements, random order.
    pub fn ordinal_evidence(&mut self, frame: &Frame, count: usize) -> OrdinalEvidence {
        let mut props = self.propositions(frame, count);
        props.shuffle(&mut self.rng);
        let masses = self.simplex(count);
        OrdinalEvidence::new(props.into_iter().zip(masses)).unwrap()
    }

    /// An evidence set whose evidences share one proposition set but
    /// order and weigh it independently.
    pub fn evidence_set(
        &mut self,
        frame: Frame,
        propositions: usize,
        evidences: usize,
    ) -> EvidenceSet {
        let shared = self.propositions(&frame, propositions);
        let mut list = Vec::with_capacity(evidences);
        for _ in 0..evidences {
            let mut props = shared.clone();
            props.shuffle(&mut self.rng);
            let masses = self.simplex(propositions);
            list.push(OrdinalEvidence::new(props.into_iter().zip(masses)).unwrap());
        }
        EvidenceSet::new(frame, list).unwrap()
    }

    /// A point from the interior of the probability simplex.
    pub fn simplex(&mut self, count: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..count)
            .map(|_| -self.rng.gen_range(1e-12..1.0f64).ln())
            .collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|v| v / total).collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
