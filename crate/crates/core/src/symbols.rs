//! Kronecker deltas, Levi-Civita symbols and permutation signs.

use crate::error::{Result, TensorError};
use crate::tensor::{TensorObject, Variance};

/// Sign of an index tuple viewed as a permutation of `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationSign {
    Negative,
    Zero,
    Positive,
}

impl PermutationSign {
    pub fn value(self) -> i32 {
        match self {
            PermutationSign::Negative => -1,
            PermutationSign::Zero => 0,
            PermutationSign::Positive => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }
}

/// Parity of `idx` by inversion count; zero when any entry repeats.
/// Entries are 1-based and must lie in `1..=dim`.
pub fn permutation_sign(idx: &[usize], dim: usize) -> Result<PermutationSign> {
    if idx.iter().any(|&i| i == 0 || i > dim) {
        return Err(TensorError::Addressing {
            index: idx.to_vec(),
            what: format!("permutation entries 1..={dim}"),
        });
    }
    Ok(sign_unchecked(idx))
}

pub(crate) fn sign_unchecked(idx: &[usize]) -> PermutationSign {
    let mut inversions = 0usize;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] == idx[b] {
                return PermutationSign::Zero;
            }
            if idx[a] > idx[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        PermutationSign::Positive
    } else {
        PermutationSign::Negative
    }
}

/// Variance layout of a Kronecker delta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    LowerLower,
    UpperUpper,
    /// `δ^r_s`, slots `[Up, Down]`.
    Mixed,
}

impl DeltaKind {
    pub fn slots(self) -> Vec<Variance> {
        match self {
            DeltaKind::LowerLower => vec![Variance::Down, Variance::Down],
            DeltaKind::UpperUpper => vec![Variance::Up, Variance::Up],
            DeltaKind::Mixed => vec![Variance::Up, Variance::Down],
        }
    }
}

pub fn kronecker(dim: usize, kind: DeltaKind) -> Result<TensorObject> {
    TensorObject::from_fn(dim, kind.slots(), 0, |i| if i[0] == i[1] { 1.0 } else { 0.0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonVariance {
    AllUp,
    AllDown,
}

impl EpsilonVariance {
    pub fn variance(self) -> Variance {
        match self {
            EpsilonVariance::AllUp => Variance::Up,
            EpsilonVariance::AllDown => Variance::Down,
        }
    }

    /// Pseudotensor weight of the symbol: `+1` upper, `-1` lower.
    pub fn weight(self) -> i32 {
        match self {
            EpsilonVariance::AllUp => 1,
            EpsilonVariance::AllDown => -1,
        }
    }
}

/// Rank-`dim` permutation-sign symbol.
pub fn levi_civita_symbol(dim: usize, variance: EpsilonVariance) -> Result<TensorObject> {
    TensorObject::from_fn(dim, vec![variance.variance(); dim], variance.weight(), |i| {
        sign_unchecked(i).as_f64()
    })
}
