//! Metric tensors, raising and lowering of indices, the Levi-Civita tensor and
//! the scalar, cross and triple products in arbitrary (skew) coordinates.

use crate::determinants::{det_rows, matrix_inverse};
use crate::error::{Result, TensorError};
use crate::frames::{transform, Frame};
use crate::symbols::{kronecker, levi_civita_symbol, DeltaKind, EpsilonVariance};
use crate::tensor::{slots_to_string, TensorObject, Variance};

/// Symmetry tolerance for `g_{rs} = g_{sr}`.
pub const METRIC_SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Leading principal minors must exceed this value.
pub const MINOR_THRESHOLD: f64 = 1e-12;

/// A symmetric positive-definite `g_{rs}` with cached `g^{rs}` and `det g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    g: TensorObject,
    g_inv: TensorObject,
    det_g: f64,
}

impl Metric {
    pub fn new(g: TensorObject) -> Result<Metric> {
        if g.slots() != [Variance::Down, Variance::Down] {
            return Err(TensorError::shape(
                "slots",
                "[down,down]",
                slots_to_string(g.slots()),
            ));
        }
        let d = g.dim();
        let m = g.components();
        for r in 0..d {
            for s in r + 1..d {
                let deviation = (m[r * d + s] - m[s * d + r]).abs();
                if deviation > METRIC_SYMMETRY_TOLERANCE {
                    return Err(TensorError::NotSymmetric {
                        row: r + 1,
                        col: s + 1,
                        deviation,
                    });
                }
            }
        }
        for k in 1..=d {
            let sub: Vec<f64> = (0..k)
                .flat_map(|r| (0..k).map(move |s| (r, s)))
                .map(|(r, s)| m[r * d + s])
                .collect();
            let minor = det_rows(k, &sub);
            if minor <= MINOR_THRESHOLD {
                return Err(TensorError::NotPositiveDefinite { order: k, minor });
            }
        }
        let g = g.with_weight(0);
        let g_inv = matrix_inverse(&g)?;
        let det_g = det_rows(d, g.components());
        Ok(Metric { g, g_inv, det_g })
    }

    /// `g_{rs} = δ_{rs}`.
    pub fn euclidean(dim: usize) -> Result<Metric> {
        Metric::new(kronecker(dim, DeltaKind::LowerLower)?)
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Covariant components `g_{rs}`.
    pub fn g(&self) -> &TensorObject {
        &self.g
    }

    /// Contravariant components `g^{rs}`.
    pub fn g_inv(&self) -> &TensorObject {
        &self.g_inv
    }

    pub fn det_g(&self) -> f64 {
        self.det_g
    }

    /// The same metric expressed in the coordinates of `f`.
    pub fn transformed(&self, f: &Frame) -> Result<Metric> {
        Metric::new(transform(&self.g, f)?)
    }
}

/// `g_{rs} = e_r · e_s` for basis vectors given in an orthonormal reference
/// frame.
pub fn metric_from_basis(basis: &[TensorObject]) -> Result<Metric> {
    let d = basis.len();
    if d == 0 {
        return Err(TensorError::ZeroDimension);
    }
    for v in basis {
        if v.rank() != 1 || v.dim() != d {
            return Err(TensorError::shape(
                "basis vector",
                format!("rank 1, dim {d}"),
                format!("rank {}, dim {}", v.rank(), v.dim()),
            ));
        }
    }
    let g = TensorObject::from_fn(d, vec![Variance::Down, Variance::Down], 0, |i| {
        let a = basis[i[0] - 1].components();
        let b = basis[i[1] - 1].components();
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    })?;
    Metric::new(g)
}

fn check_slot(t: &TensorObject, slot: usize, want: Variance, m: &Metric) -> Result<()> {
    if t.dim() != m.dim() {
        return Err(TensorError::shape("dim", t.dim(), m.dim()));
    }
    match t.slots().get(slot) {
        None => Err(TensorError::Addressing {
            index: vec![slot],
            what: format!("slot positions of a rank-{} object", t.rank()),
        }),
        Some(v) if *v != want => Err(TensorError::Convention(format!(
            "slot {slot} is {v}, expected {want}"
        ))),
        Some(_) => Ok(()),
    }
}

fn with_slot(t: TensorObject, slot: usize, v: Variance) -> TensorObject {
    let mut slots = t.slots().to_vec();
    slots[slot] = v;
    t.with_slots(slots).expect("same rank")
}

/// `x_r = g_{rs} x^s` on the given upper slot.
pub fn lower(t: &TensorObject, slot: usize, m: &Metric) -> Result<TensorObject> {
    check_slot(t, slot, Variance::Up, m)?;
    let out = t.map_slot(slot, m.g.components(), false);
    Ok(with_slot(out, slot, Variance::Down))
}

/// `x^r = g^{rs} x_s` on the given lower slot.
pub fn raise(t: &TensorObject, slot: usize, m: &Metric) -> Result<TensorObject> {
    check_slot(t, slot, Variance::Down, m)?;
    let out = t.map_slot(slot, m.g_inv.components(), false);
    Ok(with_slot(out, slot, Variance::Up))
}

fn require_vector(x: &TensorObject, variance: Variance, m: &Metric) -> Result<()> {
    if x.dim() != m.dim() || x.slots() != [variance] {
        return Err(TensorError::shape(
            "vector",
            format!("dim {} [{}]", m.dim(), variance),
            format!("dim {} {}", x.dim(), slots_to_string(x.slots())),
        ));
    }
    Ok(())
}

fn bilinear(a: &[f64], b: &[f64], form: &[f64]) -> f64 {
    let d = a.len();
    let mut total = 0.0;
    for r in 0..d {
        for s in 0..d {
            total += form[r * d + s] * a[r] * b[s];
        }
    }
    total
}

/// `g_{rs} x^r y^s` for two contravariant vectors.
pub fn inner(x: &TensorObject, y: &TensorObject, m: &Metric) -> Result<f64> {
    require_vector(x, Variance::Up, m)?;
    require_vector(y, Variance::Up, m)?;
    Ok(bilinear(x.components(), y.components(), m.g.components()))
}

/// `g^{rs} a_r b_s` for two covariant vectors.
pub fn inner_covariant(a: &TensorObject, b: &TensorObject, m: &Metric) -> Result<f64> {
    require_vector(a, Variance::Down, m)?;
    require_vector(b, Variance::Down, m)?;
    Ok(bilinear(a.components(), b.components(), m.g_inv.components()))
}

fn require_three(m: &Metric) -> Result<()> {
    if m.dim() != 3 {
        return Err(TensorError::Dimension {
            expected: 3,
            actual: m.dim(),
        });
    }
    Ok(())
}

/// `ε_{rst} = √g e_{rst}` or `ε^{rst} = e^{rst} / √g`; a true tensor.
pub fn levi_civita_tensor(m: &Metric, variance: EpsilonVariance) -> Result<TensorObject> {
    require_three(m)?;
    let root = m.det_g.sqrt();
    let e = levi_civita_symbol(3, variance)?;
    let scaled = match variance {
        EpsilonVariance::AllDown => e.scale(root),
        EpsilonVariance::AllUp => e.scale(1.0 / root),
    };
    Ok(scaled.with_weight(0))
}

/// `z^r = ε^{rmn} g_{ms} g_{nt} x^s y^t`.
pub fn cross(x: &TensorObject, y: &TensorObject, m: &Metric) -> Result<TensorObject> {
    require_three(m)?;
    require_vector(x, Variance::Up, m)?;
    require_vector(y, Variance::Up, m)?;
    let eps = levi_civita_tensor(m, EpsilonVariance::AllUp)?;
    let xl = lower(x, 0, m)?;
    let yl = lower(y, 0, m)?;
    let (a, b) = (xl.components(), yl.components());
    let comps = (0..3)
        .map(|r| {
            let mut total = 0.0;
            for p in 0..3 {
                for q in 0..3 {
                    total += eps.get_0(&[r, p, q]) * a[p] * b[q];
                }
            }
            total
        })
        .collect();
    TensorObject::new(3, vec![Variance::Up], 0, comps)
}

/// `(x, y, z) = ε^{mnp} g_{mr} g_{ns} g_{pt} x^r y^s z^t`.
pub fn triple(x: &TensorObject, y: &TensorObject, z: &TensorObject, m: &Metric) -> Result<f64> {
    require_three(m)?;
    for v in [x, y, z] {
        require_vector(v, Variance::Up, m)?;
    }
    let eps = levi_civita_tensor(m, EpsilonVariance::AllUp)?;
    let (a, b, c) = (lower(x, 0, m)?, lower(y, 0, m)?, lower(z, 0, m)?);
    let (a, b, c) = (a.components(), b.components(), c.components());
    let mut total = 0.0;
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                total += eps.get_0(&[p, q, r]) * a[p] * b[q] * c[r];
            }
        }
    }
    Ok(total)
}
