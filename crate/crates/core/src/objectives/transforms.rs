//! Search-space wrappers: rotation, translation and monotone value maps.

use nalgebra::{DMatrix, DVector};

use crate::error::Error;
use crate::objectives::Objective;
use crate::rng::GaussianStream;

/// An orthogonal `n x n` matrix, reproducible from `(n, seed)`.
#[derive(Debug, Clone)]
pub struct RotationMatrix {
    mat: DMatrix<f64>,
}

impl RotationMatrix {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Applies the rotation, returning `R * x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let v = DVector::from_column_slice(x);
        (&self.mat * v).data.into()
    }

    /// Largest absolute entry of `RᵀR - I`; 0 for a perfectly orthogonal
    /// matrix.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.mat.transpose() * &self.mat;
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - target).abs());
            }
        }
        worst
    }
}

/// Orthonormalizes an `n x n` matrix of i.i.d. standard normals drawn from a
/// stream seeded with `seed`.
///
/// Classical Gram-Schmidt with one re-orthogonalization pass per column; a
/// numerically rank-deficient column (probability-zero event) is redrawn.
pub fn make_rotation(n: usize, seed: u64) -> Result<RotationMatrix, Error> {
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    let mut stream = GaussianStream::new(seed);
    let mut mat = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        loop {
            let mut v = DVector::from_vec(stream.next_normal_vector(n)?);
            for _pass in 0..2 {
                for k in 0..j {
                    let q = mat.column(k);
                    let proj = q.dot(&v);
                    v.axpy(-proj, &q.clone_owned(), 1.0);
                }
            }
            let norm = v.norm();
            if norm > 1e-8 {
                mat.set_column(j, &(v / norm));
                break;
            }
        }
    }
    Ok(RotationMatrix { mat })
}

/// Wraps `f` as `x -> f(R x)`.
pub fn rotate_wrap(f: Objective, rotation: RotationMatrix) -> Result<Objective, Error> {
    if f.dim() != rotation.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: rotation.dim(),
        });
    }
    let id = format!("rot({})", f.id());
    let dim = f.dim();
    Ok(Objective::new(id, dim, move |x: &[f64]| {
        f.evaluate(&rotation.apply(x))
    }))
}

/// Wraps `f` as `x -> f(x - offset)`, moving the optimum to
/// `optimum + offset`.
pub fn translate_wrap(f: Objective, offset: Vec<f64>) -> Result<Objective, Error> {
    if f.dim() != offset.len() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: offset.len(),
        });
    }
    let id = format!("shift({})", f.id());
    let dim = f.dim();
    Ok(Objective::new(id, dim, move |x: &[f64]| {
        let shifted: Vec<f64> = x.iter().zip(&offset).map(|(a, b)| a - b).collect();
        f.evaluate(&shifted)
    }))
}

/// Wraps `f` as `x -> g(f(x))` for a strictly increasing `g`.
///
/// Strict monotonicity of `g` on the range of `f` is the caller's contract;
/// it guarantees the wrapper preserves the ranking of any sample set.
pub fn monotone_wrap(
    f: Objective,
    g: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> Objective {
    let id = format!("mono({})", f.id());
    let dim = f.dim();
    Objective::new(id, dim, move |x: &[f64]| g(f.evaluate(x)))
}
