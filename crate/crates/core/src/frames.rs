//! Linear changes of coordinates and the (pseudo)tensor transformation law.
//!
//! A frame stores `c^r_s` (new contravariant components from old,
//! `x̄^r = c^r_s x^s`) and its inverse `γ^r_s` (`x^r = γ^r_s x̄^s`), both as
//! rank-(1,1) objects whose upper index selects the row. Under the frame an
//! object of weight `M` transforms as
//!
//! ```text
//! ā_{i..}^{j..} = (det γ)^M  γ^{r}_{i} ..  c^{j}_{s} ..  a_{r..}^{s..}
//! ```
//!
//! applied one slot at a time.

use crate::determinants::{determinant, inverse, invert_rows, is_singular, mat_mul};
use crate::error::{Result, TensorError};
use crate::symbols::{kronecker, DeltaKind};
use crate::tensor::{slots_to_string, TensorObject, Variance};

/// Default tolerance for [`verify_transform_law`].
pub const LAW_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    c: TensorObject,
    gamma: TensorObject,
    det_gamma: f64,
}

/// `base^exponent` for an integer exponent by repeated multiplication or
/// division, so negative bases keep the right sign.
pub fn weight_factor(base: f64, exponent: i32) -> f64 {
    let mut out = 1.0;
    for _ in 0..exponent.unsigned_abs() {
        if exponent > 0 {
            out *= base;
        } else {
            out /= base;
        }
    }
    out
}

/// Builds a frame from the transition matrix `c^r_s` (slots `[Up, Down]`).
pub fn frame_from_matrix(c: &TensorObject) -> Result<Frame> {
    if c.slots() != [Variance::Up, Variance::Down] {
        return Err(TensorError::shape(
            "slots",
            "[up,down]",
            slots_to_string(c.slots()),
        ));
    }
    let c = c.clone().with_weight(0);
    let gamma = inverse(&c)?;
    let det_gamma = determinant(&gamma)?;
    Ok(Frame { c, gamma, det_gamma })
}

impl Frame {
    pub fn identity(dim: usize) -> Result<Frame> {
        frame_from_matrix(&kronecker(dim, DeltaKind::Mixed)?)
    }

    /// Frame from row-major `c[r][s] = c^r_s`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Frame> {
        frame_from_matrix(&TensorObject::from_rows([Variance::Up, Variance::Down], rows)?)
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    /// `c^r_s`.
    pub fn c(&self) -> &TensorObject {
        &self.c
    }

    /// `γ^r_s`, the inverse of `c`.
    pub fn gamma(&self) -> &TensorObject {
        &self.gamma
    }

    pub fn det_gamma(&self) -> f64 {
        self.det_gamma
    }

    /// The frame going back from new coordinates to old.
    pub fn inverse(&self) -> Frame {
        Frame {
            c: self.gamma.clone(),
            gamma: self.c.clone(),
            det_gamma: determinant(&self.c).expect("rank (1,1)"),
        }
    }
}

/// Applies `f1` then `f2`: `C = C2 C1`, `Γ = Γ1 Γ2`.
pub fn compose(f1: &Frame, f2: &Frame) -> Result<Frame> {
    if f1.dim() != f2.dim() {
        return Err(TensorError::shape("dim", f1.dim(), f2.dim()));
    }
    let d = f1.dim();
    let c = mat_mul(d, f2.c.components(), f1.c.components());
    let gamma = mat_mul(d, f1.gamma.components(), f2.gamma.components());
    let slots = vec![Variance::Up, Variance::Down];
    let c = TensorObject::new(d, slots.clone(), 0, c)?;
    let gamma = TensorObject::new(d, slots, 0, gamma)?;
    let det_gamma = determinant(&gamma)?;
    if is_singular(d, gamma.components(), det_gamma) {
        return Err(TensorError::Singular { det: det_gamma.abs() });
    }
    Ok(Frame { c, gamma, det_gamma })
}

/// Components of `t` in the new frame, including the `(det γ)^weight` factor.
pub fn transform(t: &TensorObject, f: &Frame) -> Result<TensorObject> {
    if t.dim() != f.dim() {
        return Err(TensorError::shape("dim", t.dim(), f.dim()));
    }
    let mut out = t.clone();
    for (k, v) in t.slots().iter().enumerate() {
        out = match v {
            // x̄^j = c^j_s x^s
            Variance::Up => out.map_slot(k, f.c.components(), false),
            // ā_i = γ^r_i a_r
            Variance::Down => out.map_slot(k, f.gamma.components(), true),
        };
    }
    let factor = weight_factor(f.det_gamma, t.weight());
    Ok(if factor == 1.0 { out } else { out.scale(factor) })
}

fn require_basis(basis: &[TensorObject], dim: usize) -> Result<Vec<f64>> {
    if basis.len() != dim {
        return Err(TensorError::shape("basis size", dim, basis.len()));
    }
    let mut rows = Vec::with_capacity(dim * dim);
    for v in basis {
        if v.dim() != dim || v.slots() != [Variance::Up] {
            return Err(TensorError::shape(
                "basis vector",
                format!("dim {dim} [up]"),
                format!("dim {} {}", v.dim(), slots_to_string(v.slots())),
            ));
        }
        rows.extend_from_slice(v.components());
    }
    // a dependent set fails to invert
    invert_rows(dim, &rows)?;
    Ok(rows)
}

/// New basis vectors `ē_r = γ^s_r e_s`, each given by its coordinates in a
/// fixed reference frame.
pub fn transform_basis(f: &Frame, basis: &[TensorObject]) -> Result<Vec<TensorObject>> {
    let d = f.dim();
    let rows = require_basis(basis, d)?;
    let g = f.gamma.components();
    (0..d)
        .map(|r| {
            let comps: Vec<f64> = (0..d)
                .map(|k| (0..d).map(|s| g[s * d + r] * rows[s * d + k]).sum())
                .collect();
            TensorObject::new(d, vec![Variance::Up], 0, comps)
        })
        .collect()
}

pub fn verify_transform_law(old: &TensorObject, new: &TensorObject, f: &Frame, weight: i32) -> Result<bool> {
    verify_transform_law_with_tol(old, new, f, weight, LAW_TOLERANCE)
}

/// True iff `new` is `old` carried through `f` as a pseudotensor of the
/// given weight, checked in both directions:
/// `new = (det γ)^M γ..c.. old` and `old = (det c)^M c..γ.. new`.
/// Errors only on shape mismatches.
pub fn verify_transform_law_with_tol(
    old: &TensorObject,
    new: &TensorObject,
    f: &Frame,
    weight: i32,
    tol: f64,
) -> Result<bool> {
    if old.dim() != new.dim() {
        return Err(TensorError::shape("dim", old.dim(), new.dim()));
    }
    if old.slots() != new.slots() {
        return Err(TensorError::shape(
            "slots",
            slots_to_string(old.slots()),
            slots_to_string(new.slots()),
        ));
    }
    let old = old.clone().with_weight(weight);
    let new = new.clone().with_weight(weight);
    let forward = transform(&old, f)?;
    let backward = transform(&new, &f.inverse())?;
    Ok(forward.approx_eq(&new, tol) && backward.approx_eq(&old, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{levi_civita_symbol, EpsilonVariance};
    use Variance::{Down, Up};

    fn diag211() -> Frame {
        Frame::from_rows(&[vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap()
    }

    fn skew() -> Frame {
        Frame::from_rows(&[vec![1.0, 0.5, -0.25], vec![0.2, 1.5, 0.0], vec![-0.3, 0.1, 0.8]]).unwrap()
    }

    #[test]
    fn construction() {
        let id = Frame::identity(3).unwrap();
        assert_eq!(id.gamma(), &kronecker(3, DeltaKind::Mixed).unwrap());
        let f = diag211();
        assert_eq!(f.gamma().component(&[1, 1]).unwrap(), 0.5);
        assert_eq!(f.det_gamma(), 0.5);
        let singular = Frame::from_rows(&[vec![1.0, 2.0, 0.0], vec![2.0, 4.0, 0.0], vec![0.0, 0.0, 1.0]]);
        assert!(matches!(singular, Err(TensorError::Singular { .. })));
        let lower = kronecker(3, DeltaKind::LowerLower).unwrap();
        assert!(frame_from_matrix(&lower).is_err());
    }

    #[test]
    fn weight_factor_handles_negative_base() {
        assert_eq!(weight_factor(-2.0, 3), -8.0);
        assert_eq!(weight_factor(-2.0, -1), -0.5);
        assert_eq!(weight_factor(-2.0, 0), 1.0);
        assert_eq!(weight_factor(0.5, -2), 4.0);
    }

    #[test]
    fn delta_examples() {
        let f = skew();
        let mixed = kronecker(3, DeltaKind::Mixed).unwrap();
        assert!(transform(&mixed, &f).unwrap().approx_eq(&mixed, 1e-12));
        let lower = kronecker(3, DeltaKind::LowerLower).unwrap();
        let moved = transform(&lower, &diag211()).unwrap();
        let expect = TensorObject::from_rows(
            [Down, Down],
            &[vec![0.25, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        )
        .unwrap();
        assert!(moved.approx_eq(&expect, 1e-12));
        assert!(!verify_transform_law(&lower, &lower, &diag211(), 0).unwrap());
    }

    #[test]
    fn levi_civita_is_weighted_invariant() {
        let f = skew();
        for v in [EpsilonVariance::AllDown, EpsilonVariance::AllUp] {
            let e = levi_civita_symbol(3, v).unwrap();
            let t = transform(&e, &f).unwrap();
            assert!(t.approx_eq(&e, 1e-9));
            assert!(verify_transform_law(&e, &e, &f, v.weight()).unwrap());
            // as a true tensor it would move
            assert!(!verify_transform_law(&e, &e, &f, 0).unwrap());
        }
    }

    #[test]
    fn basis_transform() {
        let std: Vec<TensorObject> = (0..3)
            .map(|k| {
                let mut v = vec![0.0; 3];
                v[k] = 1.0;
                TensorObject::vector(Up, &v).unwrap()
            })
            .collect();
        let id = Frame::identity(3).unwrap();
        assert_eq!(transform_basis(&id, &std).unwrap(), std);
        let nb = transform_basis(&diag211(), &std).unwrap();
        assert_eq!(nb[0].components(), &[0.5, 0.0, 0.0]);
        let f = skew();
        let nb = transform_basis(&f, &std).unwrap();
        let back = transform_basis(&f.inverse(), &nb).unwrap();
        for (a, b) in back.iter().zip(&std) {
            assert!(a.approx_eq(b, 1e-9));
        }
        let dependent = vec![std[0].clone(), std[0].clone(), std[2].clone()];
        assert!(matches!(
            transform_basis(&f, &dependent),
            Err(TensorError::Singular { .. })
        ));
    }

    #[test]
    fn scaled_object_fails_law() {
        let x = TensorObject::vector(Up, &[1.0, -2.0, 0.5]).unwrap();
        let id = Frame::identity(3).unwrap();
        assert!(verify_transform_law(&x, &x, &id, 0).unwrap());
        assert!(!verify_transform_law(&x, &x.scale(2.0), &id, 0).unwrap());
        let zero = TensorObject::zeros(3, vec![Up], 0).unwrap();
        assert!(verify_transform_law(&zero, &zero.scale(2.0), &id, 0).unwrap());
        let lower = TensorObject::vector(Down, &[1.0, 2.0, 3.0]).unwrap();
        assert!(verify_transform_law(&x, &lower, &id, 0).is_err());
    }

    #[test]
    fn composition() {
        let f = skew();
        let g = diag211();
        let id = Frame::identity(3).unwrap();
        let fi = compose(&f, &id).unwrap();
        assert!(fi.c().approx_eq(f.c(), 1e-12));
        let round = compose(&f, &f.inverse()).unwrap();
        assert!(round.c().approx_eq(id.c(), 1e-9));
        let t = TensorObject::from_fn(3, vec![Up, Down, Down], 1, |i| {
            (i[0] as f64) - 0.5 * (i[1] * i[2]) as f64
        })
        .unwrap();
        let both = transform(&t, &compose(&f, &g).unwrap()).unwrap();
        let twice = transform(&transform(&t, &f).unwrap(), &g).unwrap();
        assert!(both.approx_eq(&twice, 1e-9));
    }
}
