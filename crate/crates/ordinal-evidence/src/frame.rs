//! Frames of discernment and their propositions.
//!
//! A frame is a finite set of mutually exclusive, exhaustive hypotheses.
//! Propositions are non-empty subsets of the frame, stored as bitmasks so
//! that `{a,b}` and `{b,a}` are the same value and set algebra is cheap.

use crate::error::{Error, Result};

/// A frame of discernment: an ordered list of distinct element labels.
///
/// Element order fixes the bit layout of every [`Proposition`] over this
/// frame; bit `i` stands for `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    /// Build a frame from element labels. Labels must be distinct and
    /// there must be at least one; at most 64 are supported.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > 64 {
            return Err(Error::FrameTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateElement(label.clone()));
            }
        }
        Ok(Frame { labels })
    }

    /// Number of elements in the frame.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// A frame is never empty; provided for completeness.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The element labels in bit order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Bit index of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The singleton proposition for one element.
    pub fn singleton(&self, label: &str) -> Result<Proposition> {
        let idx = self
            .index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))?;
        Ok(Proposition { bits: 1 << idx })
    }

    /// The proposition made of the given element labels.
    pub fn proposition<S: AsRef<str>>(&self, labels: &[S]) -> Result<Proposition> {
        let mut bits = 0u64;
        for label in labels {
            let idx = self
                .index_of(label.as_ref())
                .ok_or_else(|| Error::UnknownElement(label.as_ref().to_string()))?;
            bits |= 1 << idx;
        }
        Proposition::from_bits(bits)
    }

    /// The proposition covering the whole frame.
    pub fn full(&self) -> Proposition {
        Proposition {
            bits: if self.labels.len() == 64 {
                u64::MAX
            } else {
                (1u64 << self.labels.len()) - 1
            },
        }
    }

    /// True if the proposition only uses elements of this frame.
    pub fn contains(&self, p: Proposition) -> bool {
        p.bits & !self.full().bits == 0
    }

    /// Render a proposition as `{a,b}` using this frame's labels.
    pub fn describe(&self, p: Proposition) -> String {
        let names: Vec<&str> = p
            .elements()
            .filter_map(|i| self.labels.get(i).map(String::as_str))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// The labels of a proposition's members, in bit order.
    pub fn member_labels(&self, p: Proposition) -> Vec<String> {
        p.elements()
            .filter_map(|i| self.labels.get(i).cloned())
            .collect()
    }
}

/// A non-empty subset of a frame, canonicalized as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Proposition {
    bits: u64,
}

impl Proposition {
    /// Build from a raw bitmask; the empty set is rejected (it carries
    /// zero mass and is never a focal element).
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            return Err(Error::EmptyProposition);
        }
        Ok(Proposition { bits })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Number of member elements.
    pub fn cardinality(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_singleton(self) -> bool {
        self.cardinality() == 1
    }

    /// Set intersection; `None` when the sets are disjoint.
    pub fn intersection(self, other: Proposition) -> Option<Proposition> {
        let bits = self.bits & other.bits;
        (bits != 0).then_some(Proposition { bits })
    }

    pub fn is_disjoint(self, other: Proposition) -> bool {
        self.bits & other.bits == 0
    }

    /// True if `self` is a subset of `other` (possibly equal).
    pub fn is_subset_of(self, other: Proposition) -> bool {
        self.bits & !other.bits == 0
    }

    /// True if `self` strictly contains `other`.
    pub fn is_strict_superset_of(self, other: Proposition) -> bool {
        other.is_subset_of(self) && self.bits != other.bits
    }

    pub fn union(self, other: Proposition) -> Proposition {
        Proposition {
            bits: self.bits | other.bits,
        }
    }

    /// Bit indices of the member elements, ascending.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..64).filter(move |i| bits & (1 << i) != 0)
    }
}

impl std::fmt::Display for Proposition {
    /// Frame-free rendering by bit index, e.g. `{#0,#2}`. Use
    /// [`Frame::describe`] for labeled output.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.elements().map(|i| format!("#{i}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
