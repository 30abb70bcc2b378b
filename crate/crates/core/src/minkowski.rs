//! Minkowski space with signature (+,-,-,-): the pseudoscalar product,
//! transition matrices between Galilean frames, boosts along x¹ and rapidity.
//!
//! Two boost conventions are exposed. [`boost`] is the coordinate boost with
//! negative off-diagonal entries `-β/√(1-β²)`. [`boost_from_rapidity`] builds
//! the hyperbolic-rotation matrix with `+sh ψ` off the diagonal, so
//! `boost(β) == boost_from_rapidity(-rapidity(β))`.

use std::ops::{Mul, Neg};

use crate::error::{Result, TensorError};
use crate::tensor::{TensorObject, Variance};

/// Tolerance used by [`is_lorentz`].
pub const LORENTZ_TOLERANCE: f64 = 1e-9;

/// `η = diag(1, -1, -1, -1)`.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

pub type Matrix4 = [[f64; 4]; 4];

/// Event or 4-vector components `(x⁰, x¹, x², x³)` with `x⁰ = ct`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn basis(k: usize) -> FourVector {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        FourVector(v)
    }
}

/// `x·y = x⁰y⁰ − x¹y¹ − x²y² − x³y³`.
pub fn mink_product(x: &FourVector, y: &FourVector) -> f64 {
    (0..4).map(|k| ETA[k] * x.0[k] * y.0[k]).sum()
}

/// Largest deviation from the componentwise conditions
/// `c^0_s c^0_r − c^1_s c^1_r − c^2_s c^2_r − c^3_s c^3_r = η_{sr}`.
pub fn lorentz_condition_deviation(c: &Matrix4) -> f64 {
    let mut worst: f64 = 0.0;
    for s in 0..4 {
        for r in 0..4 {
            let lhs = c[0][s] * c[0][r] - c[1][s] * c[1][r] - c[2][s] * c[2][r] - c[3][s] * c[3][r];
            let rhs = if s != r {
                0.0
            } else if s == 0 {
                1.0
            } else {
                -1.0
            };
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// True iff the transition matrix `c[r][s] = c^r_s` satisfies the
/// componentwise Lorentz conditions within [`LORENTZ_TOLERANCE`].
pub fn is_lorentz(c: &Matrix4) -> bool {
    lorentz_condition_deviation(c) <= LORENTZ_TOLERANCE
}

/// Same predicate evaluated as the matrix identity `Cᵀ η C = η`.
pub fn preserves_metric(c: &Matrix4) -> bool {
    let eta_c: Matrix4 = std::array::from_fn(|r| std::array::from_fn(|s| ETA[r] * c[r][s]));
    let product = mat4_mul(&transpose(c), &eta_c);
    (0..4).all(|r| {
        (0..4).all(|s| {
            let target = if r == s { ETA[r] } else { 0.0 };
            (product[r][s] - target).abs() <= LORENTZ_TOLERANCE
        })
    })
}

fn transpose(m: &Matrix4) -> Matrix4 {
    std::array::from_fn(|r| std::array::from_fn(|s| m[s][r]))
}

fn mat4_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|r| std::array::from_fn(|s| (0..4).map(|k| a[r][k] * b[k][s]).sum()))
}

/// A transition matrix between Galilean frames (`x̄^r = c^r_s x^s`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Matrix4);

impl LorentzMatrix {
    pub fn new(c: Matrix4) -> Result<LorentzMatrix> {
        let dev = lorentz_condition_deviation(&c);
        if dev > LORENTZ_TOLERANCE {
            return Err(TensorError::NotLorentz(dev));
        }
        Ok(LorentzMatrix(c))
    }

    pub fn identity() -> LorentzMatrix {
        LorentzMatrix(std::array::from_fn(|r| {
            std::array::from_fn(|s| if r == s { 1.0 } else { 0.0 })
        }))
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|r| {
            (0..4).map(|s| self.0[r][s] * x.0[s]).sum()
        }))
    }

    /// `self` after `first`: the matrix product `self · first`.
    pub fn compose(&self, first: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(mat4_mul(&self.0, &first.0))
    }

    /// As a dim-4 rank-(1,1) object with the upper index as row.
    pub fn to_tensor(&self) -> TensorObject {
        let comps = self.0.iter().flatten().copied().collect();
        TensorObject::new(4, vec![Variance::Up, Variance::Down], 0, comps).expect("16 components")
    }

    pub fn max_abs_diff(&self, other: &LorentzMatrix) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;

    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        self.compose(&rhs)
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_nan() || beta.abs() >= 1.0 {
        return Err(TensorError::Superluminal(beta));
    }
    Ok(())
}

/// Coordinate boost into a frame moving with velocity `β = v/c` along x¹.
pub fn boost(beta: f64) -> Result<LorentzMatrix> {
    check_beta(beta)?;
    let gamma = 1.0 / (1.0 - beta * beta).sqrt();
    let off = -beta * gamma;
    let mut m = LorentzMatrix::identity().0;
    m[0][0] = gamma;
    m[1][1] = gamma;
    m[0][1] = off;
    m[1][0] = off;
    Ok(LorentzMatrix(m))
}

/// Hyperbolic angle of a boost.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rapidity {
    pub psi: f64,
}

impl Neg for Rapidity {
    type Output = Rapidity;

    fn neg(self) -> Rapidity {
        Rapidity { psi: -self.psi }
    }
}

impl std::ops::Add for Rapidity {
    type Output = Rapidity;

    fn add(self, rhs: Rapidity) -> Rapidity {
        Rapidity {
            psi: self.psi + rhs.psi,
        }
    }
}

/// The unique ψ with `sh ψ = β/√(1−β²)` and `ch ψ = 1/√(1−β²)`, i.e.
/// `ψ = artanh β`.
pub fn rapidity(beta: f64) -> Result<Rapidity> {
    check_beta(beta)?;
    Ok(Rapidity { psi: beta.atanh() })
}

/// Matrix with `ch ψ` on the diagonal and `sh ψ` off the diagonal of the
/// (x⁰, x¹) block.
pub fn boost_from_rapidity(psi: Rapidity) -> LorentzMatrix {
    let (sh, ch) = (psi.psi.sinh(), psi.psi.cosh());
    let mut m = LorentzMatrix::identity().0;
    m[0][0] = ch;
    m[1][1] = ch;
    m[0][1] = sh;
    m[1][0] = sh;
    LorentzMatrix(m)
}
