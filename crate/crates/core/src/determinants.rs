//! Determinants and inverses of rank-2 objects.
//!
//! The reference determinant is the Levi-Civita contraction
//! `det x = e_{r1..rd} x^{r1}_1 .. x^{rd}_d` (upper index = row, lower index =
//! column). Above dimension 4 the same value is obtained by LU elimination.

use crate::error::{Result, TensorError};
use crate::symbols::sign_unchecked;
use crate::tensor::{slots_to_string, MultiIndexIter, TensorObject, Variance};

/// Relative singularity threshold: `|det| <= SINGULAR_RTOL * max|entry|^d`.
pub const SINGULAR_RTOL: f64 = 1e-12;

/// Largest dimension evaluated by the explicit Levi-Civita contraction.
pub const EPSILON_CONTRACTION_MAX_DIM: usize = 4;

fn require_mixed(t: &TensorObject) -> Result<()> {
    if t.slots() != [Variance::Up, Variance::Down] {
        return Err(TensorError::shape(
            "slots",
            "[up,down]",
            slots_to_string(t.slots()),
        ));
    }
    Ok(())
}

fn require_rank2(t: &TensorObject) -> Result<()> {
    if t.rank() != 2 {
        return Err(TensorError::shape("rank", 2, t.rank()));
    }
    Ok(())
}

/// Determinant of a rank-(1,1) object. The weight does not affect the value.
pub fn determinant(t: &TensorObject) -> Result<f64> {
    require_mixed(t)?;
    Ok(det_rows(t.dim(), t.components()))
}

/// Determinant of any rank-2 object viewed as a matrix with slot 0 as row.
pub fn matrix_determinant(t: &TensorObject) -> Result<f64> {
    require_rank2(t)?;
    Ok(det_rows(t.dim(), t.components()))
}

/// Determinant via the explicit Levi-Civita contraction over all `d^d`
/// column-index tuples.
pub fn determinant_by_contraction(t: &TensorObject) -> Result<f64> {
    require_rank2(t)?;
    Ok(epsilon_det(t.dim(), t.components()))
}

/// Determinant via LU factorisation with partial pivoting.
pub fn determinant_by_elimination(t: &TensorObject) -> Result<f64> {
    require_rank2(t)?;
    Ok(lu_det(t.dim(), t.components()))
}

pub(crate) fn det_rows(dim: usize, m: &[f64]) -> f64 {
    if dim <= EPSILON_CONTRACTION_MAX_DIM {
        epsilon_det(dim, m)
    } else {
        lu_det(dim, m)
    }
}

/// Each term multiplies its factors in sorted order, and positive and
/// negative terms are summed separately in ascending order. Swapping two rows
/// or two columns then negates the result exactly.
fn epsilon_det(dim: usize, m: &[f64]) -> f64 {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    let mut factors = Vec::with_capacity(dim);
    for rows in MultiIndexIter::new(dim, dim) {
        let sign = sign_unchecked(&rows).as_f64();
        if sign == 0.0 {
            continue;
        }
        // column j contributes the entry in row rows[j]
        factors.clear();
        factors.extend(rows.iter().enumerate().map(|(col, &row)| m[row * dim + col]));
        factors.sort_by(f64::total_cmp);
        let product = sign * factors.iter().product::<f64>();
        if product >= 0.0 {
            positive.push(product);
        } else {
            negative.push(-product);
        }
    }
    positive.sort_by(f64::total_cmp);
    negative.sort_by(f64::total_cmp);
    positive.iter().sum::<f64>() - negative.iter().sum::<f64>()
}

/// In-place LU with partial pivoting. Returns the permutation parity, or
/// `None` when a zero pivot column is met.
fn lu_factor(dim: usize, a: &mut [f64], perm: &mut [usize]) -> Option<f64> {
    let mut parity = 1.0;
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    for k in 0..dim {
        let pivot = (k..dim)
            .max_by(|&x, &y| a[x * dim + k].abs().total_cmp(&a[y * dim + k].abs()))
            .unwrap_or(k);
        if a[pivot * dim + k] == 0.0 {
            return None;
        }
        if pivot != k {
            for c in 0..dim {
                a.swap(k * dim + c, pivot * dim + c);
            }
            perm.swap(k, pivot);
            parity = -parity;
        }
        let diag = a[k * dim + k];
        for r in k + 1..dim {
            let factor = a[r * dim + k] / diag;
            a[r * dim + k] = factor;
            for c in k + 1..dim {
                a[r * dim + c] -= factor * a[k * dim + c];
            }
        }
    }
    Some(parity)
}

fn lu_det(dim: usize, m: &[f64]) -> f64 {
    let mut a = m.to_vec();
    let mut perm = vec![0; dim];
    match lu_factor(dim, &mut a, &mut perm) {
        Some(parity) => (0..dim).fold(parity, |acc, k| acc * a[k * dim + k]),
        None => 0.0,
    }
}

pub(crate) fn is_singular(dim: usize, m: &[f64], det: f64) -> bool {
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    det.abs() <= SINGULAR_RTOL * scale.powi(dim as i32)
}

/// Row-major matrix inverse. Fails with `Singular` under the scale-aware
/// threshold.
pub(crate) fn invert_rows(dim: usize, m: &[f64]) -> Result<Vec<f64>> {
    let det = det_rows(dim, m);
    if is_singular(dim, m, det) {
        return Err(TensorError::Singular { det: det.abs() });
    }
    let mut lu = m.to_vec();
    let mut perm = vec![0; dim];
    if lu_factor(dim, &mut lu, &mut perm).is_none() {
        return Err(TensorError::Singular { det: det.abs() });
    }
    let mut inv = vec![0.0; dim * dim];
    let mut col = vec![0.0; dim];
    for j in 0..dim {
        // solve L U x = P e_j
        for (i, c) in col.iter_mut().enumerate() {
            *c = if perm[i] == j { 1.0 } else { 0.0 };
        }
        for i in 0..dim {
            for k in 0..i {
                col[i] -= lu[i * dim + k] * col[k];
            }
        }
        for i in (0..dim).rev() {
            for k in i + 1..dim {
                col[i] -= lu[i * dim + k] * col[k];
            }
            col[i] /= lu[i * dim + i];
        }
        for i in 0..dim {
            inv[i * dim + j] = col[i];
        }
    }
    Ok(inv)
}

/// Inverse of a rank-(1,1) object, again rank (1,1). A weight `M` input
/// yields weight `-M`.
pub fn inverse(t: &TensorObject) -> Result<TensorObject> {
    require_mixed(t)?;
    let inv = invert_rows(t.dim(), t.components())?;
    TensorObject::new(t.dim(), t.slots().to_vec(), -t.weight(), inv)
}

/// Inverse of any rank-2 object; both slot variances flip, so `g_{rs}` maps
/// to `g^{rs}`.
pub fn matrix_inverse(t: &TensorObject) -> Result<TensorObject> {
    require_rank2(t)?;
    let inv = invert_rows(t.dim(), t.components())?;
    let slots = if t.slots()[0] == t.slots()[1] {
        t.slots().iter().map(|v| v.flipped()).collect()
    } else {
        t.slots().to_vec()
    };
    TensorObject::new(t.dim(), slots, -t.weight(), inv)
}

pub(crate) fn mat_mul(dim: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let a_rk = a[r * dim + k];
            for c in 0..dim {
                out[r * dim + c] += a_rk * b[k * dim + c];
            }
        }
    }
    out
}
