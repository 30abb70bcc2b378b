//! Dense tensor objects and the three basic operations on them: sum, outer
//! product and contraction.
//!
//! Components are stored lexicographically by multi-index with slot 0
//! outermost. Public indices are 1-based; the `*_0` helpers take 0-based
//! indices.

use std::fmt;

use crate::error::{Result, TensorError};

/// Upper bound on `dim^rank` for dense storage.
pub const MAX_COMPONENTS: usize = 10_000_000;

/// Default absolute tolerance for symmetry classification.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Position of an index: `Up` is contravariant, `Down` is covariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    Up,
    Down,
}

impl Variance {
    pub fn flipped(self) -> Variance {
        match self {
            Variance::Up => Variance::Down,
            Variance::Down => Variance::Up,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variance::Up => "up",
            Variance::Down => "down",
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of comparing a tensor with itself under a slot swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Neither,
}

pub(crate) fn slots_to_string(slots: &[Variance]) -> String {
    let names: Vec<_> = slots.iter().map(|v| v.as_str()).collect();
    format!("[{}]", names.join(","))
}

/// Number of components of a dense object, or an error if over the cap.
pub fn dense_len(dim: usize, rank: usize) -> Result<usize> {
    if dim == 0 {
        return Err(TensorError::ZeroDimension);
    }
    let mut len: usize = 1;
    for _ in 0..rank {
        len = len
            .checked_mul(dim)
            .filter(|&n| n <= MAX_COMPONENTS)
            .ok_or(TensorError::TooLarge { dim, rank })?;
    }
    Ok(len)
}

/// Odometer over all 0-based multi-indices of a given rank, last slot fastest.
#[derive(Debug, Clone)]
pub struct MultiIndexIter {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndexIter {
    pub fn new(dim: usize, rank: usize) -> Self {
        let current = if dim == 0 { None } else { Some(vec![0; rank]) };
        MultiIndexIter { dim, current }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut done = true;
        if let Some(cur) = self.current.as_mut() {
            for k in (0..cur.len()).rev() {
                cur[k] += 1;
                if cur[k] < self.dim {
                    done = false;
                    break;
                }
                cur[k] = 0;
            }
        }
        if done {
            self.current = None;
        }
        Some(out)
    }
}

/// A dense multi-component value over dimension `dim` with ordered variance
/// slots and an integer pseudotensor weight.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorObject {
    dim: usize,
    slots: Vec<Variance>,
    weight: i32,
    components: Vec<f64>,
}

impl TensorObject {
    pub fn new(dim: usize, slots: Vec<Variance>, weight: i32, components: Vec<f64>) -> Result<Self> {
        let expected = dense_len(dim, slots.len())?;
        if components.len() != expected {
            return Err(TensorError::Length {
                expected,
                actual: components.len(),
            });
        }
        Ok(TensorObject {
            dim,
            slots,
            weight,
            components,
        })
    }

    pub fn zeros(dim: usize, slots: Vec<Variance>, weight: i32) -> Result<Self> {
        let len = dense_len(dim, slots.len())?;
        Ok(TensorObject {
            dim,
            slots,
            weight,
            components: vec![0.0; len],
        })
    }

    /// Rank-0 true scalar.
    pub fn scalar(dim: usize, value: f64) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        TensorObject {
            dim,
            slots: Vec::new(),
            weight: 0,
            components: vec![value],
        }
    }

    /// Rank-1 object with the given components; the dimension is their count.
    pub fn vector(variance: Variance, components: &[f64]) -> Result<Self> {
        TensorObject::new(components.len(), vec![variance], 0, components.to_vec())
    }

    /// Rank-2 object from rows; slot 0 selects the row.
    pub fn from_rows(slots: [Variance; 2], rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut comps = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(TensorError::Length {
                    expected: dim,
                    actual: row.len(),
                });
            }
            comps.extend_from_slice(row);
        }
        TensorObject::new(dim, slots.to_vec(), 0, comps)
    }

    /// Builds an object by evaluating `f` at every 1-based multi-index.
    pub fn from_fn(
        dim: usize,
        slots: Vec<Variance>,
        weight: i32,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Result<Self> {
        dense_len(dim, slots.len())?;
        let components = MultiIndexIter::new(dim, slots.len())
            .map(|idx| {
                let one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
                f(&one_based)
            })
            .collect();
        Ok(TensorObject {
            dim,
            slots,
            weight,
            components,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> &[Variance] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    /// `(m, n)`: number of lower and upper slots.
    pub fn rank_pair(&self) -> (usize, usize) {
        let lower = self.slots.iter().filter(|v| **v == Variance::Down).count();
        (lower, self.slots.len() - lower)
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<f64> {
        self.components
    }

    pub fn with_weight(mut self, weight: i32) -> Self {
        self.weight = weight;
        self
    }

    /// Same components under a different slot layout of equal rank.
    pub fn with_slots(mut self, slots: Vec<Variance>) -> Result<Self> {
        if slots.len() != self.slots.len() {
            return Err(TensorError::shape("rank", self.slots.len(), slots.len()));
        }
        self.slots = slots;
        Ok(self)
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        strides(self.dim, self.rank())
    }

    pub(crate) fn offset_0(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Component at a 0-based multi-index. Panics when out of range.
    pub fn get_0(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.rank(), "multi-index length");
        debug_assert!(idx.iter().all(|&i| i < self.dim));
        self.components[self.offset_0(idx)]
    }

    /// Component at a 1-based multi-index.
    pub fn component(&self, idx: &[usize]) -> Result<f64> {
        if idx.len() != self.rank() || idx.iter().any(|&i| i == 0 || i > self.dim) {
            return Err(TensorError::Addressing {
                index: idx.to_vec(),
                what: format!("object of dim {} and rank {}", self.dim, self.rank()),
            });
        }
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        Ok(self.components[self.offset_0(&zero_based)])
    }

    fn check_same_signature(&self, other: &TensorObject) -> Result<()> {
        if self.dim != other.dim {
            return Err(TensorError::shape("dim", self.dim, other.dim));
        }
        if self.slots != other.slots {
            return Err(TensorError::shape(
                "slots",
                slots_to_string(&self.slots),
                slots_to_string(&other.slots),
            ));
        }
        if self.weight != other.weight {
            return Err(TensorError::shape("weight", self.weight, other.weight));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorObject) -> Result<TensorObject> {
        self.check_same_signature(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TensorObject {
            components,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &TensorObject) -> Result<TensorObject> {
        self.check_same_signature(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TensorObject {
            components,
            ..self.clone()
        })
    }

    pub fn scale(&self, k: f64) -> TensorObject {
        TensorObject {
            components: self.components.iter().map(|c| c * k).collect(),
            ..self.clone()
        }
    }

    /// Slots of `self` followed by slots of `other`; weights add.
    pub fn outer_product(&self, other: &TensorObject) -> Result<TensorObject> {
        if self.dim != other.dim {
            return Err(TensorError::shape("dim", self.dim, other.dim));
        }
        let len = dense_len(self.dim, self.rank() + other.rank())?;
        let mut components = Vec::with_capacity(len);
        for a in &self.components {
            components.extend(other.components.iter().map(|b| a * b));
        }
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        Ok(TensorObject {
            dim: self.dim,
            slots,
            weight: self.weight + other.weight,
            components,
        })
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.rank() {
            return Err(TensorError::Addressing {
                index: vec![slot],
                what: format!("slot positions of a rank-{} object", self.rank()),
            });
        }
        Ok(())
    }

    /// Sums over the paired index of one upper and one lower slot. Both slots
    /// are removed; remaining slots keep their order.
    pub fn contract(&self, up_slot: usize, down_slot: usize) -> Result<TensorObject> {
        self.check_slot(up_slot)?;
        self.check_slot(down_slot)?;
        if up_slot == down_slot {
            return Err(TensorError::Convention(
                "contraction needs two distinct slots".into(),
            ));
        }
        if self.slots[up_slot] != Variance::Up || self.slots[down_slot] != Variance::Down {
            return Err(TensorError::Convention(format!(
                "one must be upper, one lower: slots {up_slot} ({}) and {down_slot} ({})",
                self.slots[up_slot], self.slots[down_slot]
            )));
        }
        let kept: Vec<usize> = (0..self.rank())
            .filter(|&k| k != up_slot && k != down_slot)
            .collect();
        let slots: Vec<Variance> = kept.iter().map(|&k| self.slots[k]).collect();
        let strides = self.strides();
        let pair_stride = strides[up_slot] + strides[down_slot];
        let components = MultiIndexIter::new(self.dim, kept.len())
            .map(|idx| {
                let base: usize = idx.iter().zip(&kept).map(|(i, &k)| i * strides[k]).sum();
                (0..self.dim)
                    .map(|j| self.components[base + j * pair_stride])
                    .sum()
            })
            .collect();
        Ok(TensorObject {
            dim: self.dim,
            slots,
            weight: self.weight,
            components,
        })
    }

    /// Reorders slots: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permute_slots(&self, perm: &[usize]) -> Result<TensorObject> {
        let rank = self.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank {
            return Err(TensorError::shape("rank", rank, perm.len()));
        }
        for &p in perm {
            self.check_slot(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(TensorError::Convention(format!(
                    "slot {p} repeated in permutation"
                )));
            }
        }
        let strides = self.strides();
        let src_strides: Vec<usize> = perm.iter().map(|&p| strides[p]).collect();
        let components = MultiIndexIter::new(self.dim, rank)
            .map(|idx| {
                let off: usize = idx.iter().zip(&src_strides).map(|(i, s)| i * s).sum();
                self.components[off]
            })
            .collect();
        Ok(TensorObject {
            dim: self.dim,
            slots: perm.iter().map(|&p| self.slots[p]).collect(),
            weight: self.weight,
            components,
        })
    }

    fn check_same_variance(&self, i: usize, j: usize) -> Result<()> {
        self.check_slot(i)?;
        self.check_slot(j)?;
        if self.slots[i] != self.slots[j] {
            return Err(TensorError::Convention(format!(
                "cannot exchange an upper with a lower index (slots {i} and {j})"
            )));
        }
        Ok(())
    }

    pub fn swap_slots(&self, i: usize, j: usize) -> Result<TensorObject> {
        self.check_same_variance(i, j)?;
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.swap(i, j);
        self.permute_slots(&perm)
    }

    pub fn symmetry_check(&self, i: usize, j: usize) -> Result<Symmetry> {
        self.symmetry_check_with_tol(i, j, SYMMETRY_TOLERANCE)
    }

    /// Classifies the object under exchange of slots `i` and `j`. The zero
    /// object classifies as `Symmetric`.
    pub fn symmetry_check_with_tol(&self, i: usize, j: usize, tol: f64) -> Result<Symmetry> {
        let swapped = self.swap_slots(i, j)?;
        let pairs = || self.components.iter().zip(&swapped.components);
        if pairs().all(|(a, b)| (a - b).abs() <= tol) {
            Ok(Symmetry::Symmetric)
        } else if pairs().all(|(a, b)| (a + b).abs() <= tol) {
            Ok(Symmetry::Antisymmetric)
        } else {
            Ok(Symmetry::Neither)
        }
    }

    /// `(t + swap(t, i, j)) / 2`.
    pub fn symmetrize(&self, i: usize, j: usize) -> Result<TensorObject> {
        let swapped = self.swap_slots(i, j)?;
        Ok(self.add(&swapped)?.scale(0.5))
    }

    /// `(t - swap(t, i, j)) / 2`.
    pub fn antisymmetrize(&self, i: usize, j: usize) -> Result<TensorObject> {
        let swapped = self.swap_slots(i, j)?;
        Ok(self.sub(&swapped)?.scale(0.5))
    }

    /// Applies a `dim x dim` row-major matrix along one slot:
    /// `out[..a..] = sum_b M(a, b) t[..b..]`, with `M(a, b) = m[b][a]` when
    /// `transpose` is set. Slot variances are left unchanged.
    pub(crate) fn map_slot(&self, slot: usize, m: &[f64], transpose: bool) -> TensorObject {
        let d = self.dim;
        debug_assert_eq!(m.len(), d * d);
        let stride = self.strides()[slot];
        let mut components = vec![0.0; self.components.len()];
        for (off, out) in components.iter_mut().enumerate() {
            let a = (off / stride) % d;
            let base = off - a * stride;
            *out = (0..d)
                .map(|b| {
                    let coeff = if transpose { m[b * d + a] } else { m[a * d + b] };
                    coeff * self.components[base + b * stride]
                })
                .sum();
        }
        TensorObject {
            components,
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| *c == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest componentwise absolute difference. Panics on length mismatch.
    pub fn max_abs_diff(&self, other: &TensorObject) -> f64 {
        assert_eq!(self.components.len(), other.components.len());
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Signature equality plus componentwise `|a - b| <= tol * max(1, |b|)`.
    pub fn approx_eq(&self, other: &TensorObject, tol: f64) -> bool {
        self.dim == other.dim
            && self.slots == other.slots
            && self.weight == other.weight
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| (a - b).abs() <= tol * b.abs().max(1.0))
    }
}

pub(crate) fn strides(dim: usize, rank: usize) -> Vec<usize> {
    let mut out = vec![1; rank];
    for k in (0..rank.saturating_sub(1)).rev() {
        out[k] = out[k + 1] * dim;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{kronecker, levi_civita_symbol, DeltaKind, EpsilonVariance};
    use Variance::{Down, Up};

    #[test]
    fn construction_checks_length() {
        let x = TensorObject::new(3, vec![Up], 0, vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(x.component(&[1]).unwrap(), 1.0);
        let s = TensorObject::new(3, vec![], 0, vec![5.0]).unwrap();
        assert_eq!(s.component(&[]).unwrap(), 5.0);
        let err = TensorObject::new(3, vec![Up, Down], 0, vec![0.0; 8]).unwrap_err();
        assert_eq!(
            err,
            TensorError::Length {
                expected: 9,
                actual: 8
            }
        );
        assert!(err.to_string().contains("expected 9"));
        assert_eq!(
            TensorObject::new(0, vec![], 0, vec![1.0]).unwrap_err(),
            TensorError::ZeroDimension
        );
        assert!(matches!(
            TensorObject::zeros(10, vec![Up; 8], 0),
            Err(TensorError::TooLarge { .. })
        ));
    }

    #[test]
    fn component_addressing() {
        let delta = kronecker(3, DeltaKind::Mixed).unwrap();
        assert_eq!(delta.component(&[2, 2]).unwrap(), 1.0);
        assert_eq!(delta.component(&[1, 3]).unwrap(), 0.0);
        let e = levi_civita_symbol(3, EpsilonVariance::AllDown).unwrap();
        assert_eq!(e.component(&[2, 1, 3]).unwrap(), -1.0);
        assert!(matches!(
            delta.component(&[0, 1]),
            Err(TensorError::Addressing { .. })
        ));
        assert!(delta.component(&[4, 1]).is_err());
        assert!(delta.component(&[1]).is_err());
    }

    #[test]
    fn add_and_scale() {
        let a = TensorObject::vector(Up, &[1.0, 2.0, 3.0]).unwrap();
        let b = TensorObject::vector(Up, &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(a.add(&b).unwrap().components(), &[5.0, 7.0, 9.0]);
        let zero = TensorObject::zeros(3, vec![Up], 0).unwrap();
        assert_eq!(a.add(&zero).unwrap(), a);
        let lower = TensorObject::vector(Down, &[1.0, 2.0, 3.0]).unwrap();
        match a.add(&lower).unwrap_err() {
            TensorError::Shape { attribute, .. } => assert_eq!(attribute, "slots"),
            e => panic!("unexpected {e}"),
        }
        let weighted = a.clone().with_weight(1);
        match a.add(&weighted).unwrap_err() {
            TensorError::Shape { attribute, .. } => assert_eq!(attribute, "weight"),
            e => panic!("unexpected {e}"),
        }
        assert_eq!(a.scale(1.0), a);
        assert!(a.scale(0.0).is_zero());
        let v = TensorObject::vector(Up, &[2.0, 4.0]).unwrap();
        assert_eq!(v.scale(-0.5).components(), &[-1.0, -2.0]);
    }

    #[test]
    fn outer_product_layout_and_weight() {
        let x = TensorObject::vector(Up, &[1.0, 0.0, 0.0]).unwrap();
        let a = TensorObject::vector(Down, &[0.0, 2.0, 0.0]).unwrap();
        let xa = x.outer_product(&a).unwrap();
        assert_eq!(xa.slots(), &[Up, Down]);
        for idx in MultiIndexIter::new(3, 2) {
            let expect = if idx == [0, 1] { 2.0 } else { 0.0 };
            assert_eq!(xa.get_0(&idx), expect);
        }
        let three = TensorObject::scalar(3, 3.0);
        assert_eq!(three.outer_product(&a).unwrap(), a.scale(3.0));
        let w = x.clone().with_weight(1).outer_product(&a.clone().with_weight(-1));
        assert_eq!(w.unwrap().weight(), 0);
        let other_dim = TensorObject::vector(Up, &[1.0, 2.0]).unwrap();
        assert!(x.outer_product(&other_dim).is_err());
    }

    #[test]
    fn contraction() {
        let delta = kronecker(3, DeltaKind::Mixed).unwrap();
        assert_eq!(delta.contract(0, 1).unwrap().components(), &[3.0]);
        let x = TensorObject::vector(Up, &[1.0, 2.0, 3.0]).unwrap();
        let a = TensorObject::vector(Down, &[1.0, 1.0, 1.0]).unwrap();
        let xa = x.outer_product(&a).unwrap();
        assert_eq!(xa.contract(0, 1).unwrap().components(), &[6.0]);
        let xx = x.outer_product(&x).unwrap();
        assert!(matches!(xx.contract(0, 1), Err(TensorError::Convention(_))));
        assert!(matches!(xa.contract(0, 5), Err(TensorError::Addressing { .. })));
        // weight survives
        let w = xa.with_weight(2).contract(0, 1).unwrap();
        assert_eq!(w.weight(), 2);
    }

    #[test]
    fn contraction_keeps_remaining_slot_order() {
        // x^{rp}_{kst}: contract k (slot 2) with p (slot 1)
        let t = TensorObject::from_fn(2, vec![Up, Up, Down, Down, Down], 0, |i| {
            i.iter()
                .enumerate()
                .map(|(k, v)| (*v as f64) * 10f64.powi(k as i32))
                .sum()
        })
        .unwrap();
        let c = t.contract(1, 2).unwrap();
        assert_eq!(c.slots(), &[Up, Down, Down]);
        for idx in MultiIndexIter::new(2, 3) {
            let expect: f64 = (0..2).map(|p| t.get_0(&[idx[0], p, p, idx[1], idx[2]])).sum();
            assert_eq!(c.get_0(&idx), expect);
        }
    }

    #[test]
    fn swap_and_symmetry() {
        let e = levi_civita_symbol(3, EpsilonVariance::AllDown).unwrap();
        assert_eq!(e.swap_slots(0, 1).unwrap(), e.scale(-1.0));
        assert_eq!(e.swap_slots(1, 1).unwrap(), e);
        assert_eq!(e.symmetry_check(0, 1).unwrap(), Symmetry::Antisymmetric);
        let d = kronecker(3, DeltaKind::LowerLower).unwrap();
        assert_eq!(d.symmetry_check(0, 1).unwrap(), Symmetry::Symmetric);
        assert_eq!(d.swap_slots(0, 1).unwrap(), d);
        let a = TensorObject::from_fn(3, vec![Down, Down], 0, |i| (i[0] * i[1] + i[0]) as f64).unwrap();
        assert_eq!(a.symmetry_check(0, 1).unwrap(), Symmetry::Neither);
        let mixed = kronecker(3, DeltaKind::Mixed).unwrap();
        assert!(matches!(mixed.swap_slots(0, 1), Err(TensorError::Convention(_))));
        assert!(mixed.symmetry_check(0, 1).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let d = kronecker(3, DeltaKind::LowerLower).unwrap();
        assert_eq!(d.symmetrize(0, 1).unwrap(), d);
        let e = levi_civita_symbol(3, EpsilonVariance::AllDown).unwrap();
        let s = e.symmetrize(0, 1).unwrap();
        assert!(s.is_zero());
        let mut comps = vec![0.0; 9];
        comps[1] = 3.0; // a_12
        comps[3] = 1.0; // a_21
        let a = TensorObject::new(3, vec![Down, Down], 0, comps).unwrap();
        let s = a.symmetrize(0, 1).unwrap();
        assert_eq!(s.component(&[1, 2]).unwrap(), 2.0);
        assert_eq!(s.component(&[2, 1]).unwrap(), 2.0);
    }

    #[test]
    fn permute_rejects_bad_permutations() {
        let t = TensorObject::zeros(2, vec![Up, Up], 0).unwrap();
        assert!(t.permute_slots(&[0, 0]).is_err());
        assert!(t.permute_slots(&[0]).is_err());
        assert!(t.permute_slots(&[1, 0]).is_ok());
    }

    #[test]
    fn multi_index_iter_counts() {
        assert_eq!(MultiIndexIter::new(3, 0).count(), 1);
        assert_eq!(MultiIndexIter::new(3, 2).count(), 9);
        let v: Vec<_> = MultiIndexIter::new(2, 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
