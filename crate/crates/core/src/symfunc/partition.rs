use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// Integer partition with parts stored weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(part)^count`, e.g. `rectangle(2, 3) = (2, 2, 2)`.
    pub fn rectangle(part: u32, count: usize) -> Self {
        Partition::new(vec![part; count])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiset union of parts, i.e. the index of `p_λ · p_μ`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        Partition { parts }
    }

    /// Every part multiplied by `k`: the index of `p_k ∘ p_λ`.
    pub fn scaled(&self, k: u32) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p * k).collect(),
        }
    }

    /// Parts without the last (smallest) one.
    pub fn without_last(&self) -> Option<(Partition, u32)> {
        let (&last, rest) = self.parts.split_last()?;
        Some((
            Partition {
                parts: rest.to_vec(),
            },
            last,
        ))
    }

    /// `z_λ = ∏ i^{m_i} m_i!`, the centralizer order of a permutation of
    /// cycle type `λ`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut m = 0u32;
            while i < self.parts.len() && self.parts[i] == part {
                m += 1;
                i += 1;
                z *= BigInt::from(part) * BigInt::from(m);
            }
        }
        z
    }

    /// All partitions of `n`, in reverse lexicographic order starting with `(n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(remaining)).rev() {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}
