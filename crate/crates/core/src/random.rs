//! Seeded generators for random tensors, frames, metrics and Lorentz
//! matrices. Used by the exercise suite and the test harnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::determinants::det_rows;
use crate::frames::Frame;
use crate::metric::{metric_from_basis, Metric};
use crate::minkowski::{boost, LorentzMatrix, Matrix4};
use crate::tensor::{TensorObject, Variance};

/// Smallest `|det|` accepted by [`random_frame`] and [`random_basis`].
pub const MIN_FRAME_DET: f64 = 0.1;

/// A generator seeded from `seed` and a stream label, so independent checks
/// never share draws.
pub fn rng_for(seed: u64, stream: &str) -> ChaCha8Rng {
    // FNV-1a; stable across platforms and releases
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn uniform(rng: &mut impl Rng) -> f64 {
    rng.random_range(-1.0..=1.0)
}

pub fn random_tensor(rng: &mut impl Rng, dim: usize, slots: &[Variance], weight: i32) -> TensorObject {
    TensorObject::from_fn(dim, slots.to_vec(), weight, |_| uniform(rng)).expect("small random tensor")
}

pub fn random_vector(rng: &mut impl Rng, dim: usize, variance: Variance) -> TensorObject {
    random_tensor(rng, dim, &[variance], 0)
}

/// All `2^rank` variance patterns of the given rank.
pub fn slot_patterns(rank: usize) -> Vec<Vec<Variance>> {
    (0..1usize << rank)
        .map(|bits| {
            (0..rank)
                .map(|k| {
                    if bits >> k & 1 == 1 {
                        Variance::Up
                    } else {
                        Variance::Down
                    }
                })
                .collect()
        })
        .collect()
}

pub fn random_rows(rng: &mut impl Rng, dim: usize) -> Vec<Vec<f64>> {
    (0..dim)
        .map(|_| (0..dim).map(|_| uniform(rng)).collect())
        .collect()
}

/// Random row-major matrix with `|det| >= MIN_FRAME_DET`.
fn well_conditioned_rows(rng: &mut impl Rng, dim: usize) -> Vec<Vec<f64>> {
    loop {
        let rows = random_rows(rng, dim);
        let flat: Vec<f64> = rows.concat();
        if det_rows(dim, &flat).abs() >= MIN_FRAME_DET {
            return rows;
        }
    }
}

/// Frame with entries uniform in `[-1, 1]` and `|det c| >= MIN_FRAME_DET`.
pub fn random_frame(rng: &mut impl Rng, dim: usize) -> Frame {
    Frame::from_rows(&well_conditioned_rows(rng, dim)).expect("determinant bounded away from zero")
}

/// Like [`random_frame`] but with `det c > 0`.
pub fn random_oriented_frame(rng: &mut impl Rng, dim: usize) -> Frame {
    let mut rows = well_conditioned_rows(rng, dim);
    if det_rows(dim, &rows.concat()) < 0.0 {
        for v in rows[0].iter_mut() {
            *v = -*v;
        }
    }
    Frame::from_rows(&rows).expect("determinant bounded away from zero")
}

/// Row-major rotation matrix built from a plane rotation in every
/// coordinate plane.
pub fn random_rotation_rows(rng: &mut impl Rng, dim: usize) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = (0..dim)
        .map(|r| (0..dim).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
        .collect();
    for p in 0..dim {
        for q in p + 1..dim {
            let angle: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let (s, c) = angle.sin_cos();
            for row in m.iter_mut() {
                let (a, b) = (row[p], row[q]);
                row[p] = c * a - s * b;
                row[q] = s * a + c * b;
            }
        }
    }
    m
}

pub fn random_rotation(rng: &mut impl Rng, dim: usize) -> Frame {
    Frame::from_rows(&random_rotation_rows(rng, dim)).expect("rotations are invertible")
}

/// Basis vectors in orthonormal coordinates, linearly independent with
/// `|det| >= MIN_FRAME_DET`. With `right_handed` the determinant is positive.
pub fn random_basis(rng: &mut impl Rng, dim: usize, right_handed: bool) -> Vec<TensorObject> {
    let mut rows = well_conditioned_rows(rng, dim);
    if right_handed && det_rows(dim, &rows.concat()) < 0.0 {
        rows.swap(0, dim - 1);
        if dim == 1 {
            rows[0][0] = -rows[0][0];
        }
    }
    rows.iter()
        .map(|r| TensorObject::vector(Variance::Up, r).expect("non-empty"))
        .collect()
}

/// Metric of a random skew basis.
pub fn random_metric(rng: &mut impl Rng, dim: usize) -> Metric {
    metric_from_basis(&random_basis(rng, dim, false)).expect("Gram matrix of an independent basis")
}

/// Boost along x¹ with a spatial rotation applied before and after.
pub fn random_lorentz(rng: &mut impl Rng) -> LorentzMatrix {
    let beta: f64 = rng.random_range(-0.95..0.95);
    let b = boost(beta).expect("subluminal");
    let r1 = spatial_rotation(rng);
    let r2 = spatial_rotation(rng);
    r2 * b * r1
}

fn spatial_rotation(rng: &mut impl Rng) -> LorentzMatrix {
    let r3 = random_rotation_rows(rng, 3);
    let m: Matrix4 = std::array::from_fn(|r| {
        std::array::from_fn(|s| match (r, s) {
            (0, 0) => 1.0,
            (0, _) | (_, 0) => 0.0,
            _ => r3[r - 1][s - 1],
        })
    });
    LorentzMatrix::new(m).expect("spatial rotations preserve the product")
}
