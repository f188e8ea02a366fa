//! The standard separable/non-separable benchmark functions.
//!
//! All functions are non-negative and attain 0 at their optimum: the origin
//! for all of them except Rosenbrock, whose optimum is the all-ones vector.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::objectives::Objective;

/// Stable identifiers for the benchmark functions. The lowercase string
/// forms (`sphere`, `ellipsoid`, `rosenbrock`, `discus`, `cigar`, `diffpow`)
/// are the CLI vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkId {
    Sphere,
    Ellipsoid,
    Rosenbrock,
    Discus,
    Cigar,
    DiffPow,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 6] = [
        BenchmarkId::Sphere,
        BenchmarkId::Ellipsoid,
        BenchmarkId::Rosenbrock,
        BenchmarkId::Discus,
        BenchmarkId::Cigar,
        BenchmarkId::DiffPow,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BenchmarkId::Sphere => "sphere",
            BenchmarkId::Ellipsoid => "ellipsoid",
            BenchmarkId::Rosenbrock => "rosenbrock",
            BenchmarkId::Discus => "discus",
            BenchmarkId::Cigar => "cigar",
            BenchmarkId::DiffPow => "diffpow",
        }
    }

    /// Smallest supported dimension. Sphere is defined for any `n >= 1`,
    /// the others use `n - 1` denominators or split off the first coordinate.
    pub fn min_dim(&self) -> usize {
        match self {
            BenchmarkId::Sphere => 1,
            _ => 2,
        }
    }

    /// Location of the global optimum.
    pub fn optimum(&self, n: usize) -> Vec<f64> {
        match self {
            BenchmarkId::Rosenbrock => vec![1.0; n],
            _ => vec![0.0; n],
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sphere" => Ok(BenchmarkId::Sphere),
            "ellipsoid" => Ok(BenchmarkId::Ellipsoid),
            "rosenbrock" => Ok(BenchmarkId::Rosenbrock),
            "discus" => Ok(BenchmarkId::Discus),
            "cigar" => Ok(BenchmarkId::Cigar),
            "diffpow" => Ok(BenchmarkId::DiffPow),
            other => Err(Error::UnknownFunction(other.to_string())),
        }
    }
}

/// Builds a benchmark objective of dimension `n`.
///
/// Coefficient and exponent tables are precomputed so the per-evaluation
/// cost is a single pass over `x`.
pub fn make_benchmark(id: BenchmarkId, n: usize) -> Result<Objective, Error> {
    if n < id.min_dim() {
        return Err(Error::DimensionTooSmall {
            id: id.as_str(),
            min: id.min_dim(),
            got: n,
        });
    }
    let eval_fn: Box<dyn Fn(&[f64]) -> f64 + Send + Sync> = match id {
        BenchmarkId::Sphere => Box::new(|x: &[f64]| x.iter().map(|v| v * v).sum()),
        BenchmarkId::Ellipsoid => {
            let coeffs: Vec<f64> = (0..n)
                .map(|i| 10f64.powf(6.0 * i as f64 / (n - 1) as f64))
                .collect();
            Box::new(move |x: &[f64]| {
                x.iter().zip(&coeffs).map(|(v, c)| c * v * v).sum()
            })
        }
        BenchmarkId::Rosenbrock => Box::new(|x: &[f64]| {
            x.windows(2)
                .map(|w| {
                    let a = w[0] * w[0] - w[1];
                    let b = w[0] - 1.0;
                    100.0 * a * a + b * b
                })
                .sum()
        }),
        BenchmarkId::Discus => Box::new(|x: &[f64]| {
            1e6 * x[0] * x[0] + x[1..].iter().map(|v| v * v).sum::<f64>()
        }),
        BenchmarkId::Cigar => Box::new(|x: &[f64]| {
            x[0] * x[0] + 1e6 * x[1..].iter().map(|v| v * v).sum::<f64>()
        }),
        BenchmarkId::DiffPow => {
            let exps: Vec<f64> = (0..n)
                .map(|i| 2.0 + 4.0 * i as f64 / (n - 1) as f64)
                .collect();
            Box::new(move |x: &[f64]| {
                x.iter().zip(&exps).map(|(v, e)| v.abs().powf(*e)).sum()
            })
        }
    };
    Ok(Objective {
        id: id.as_str().to_string(),
        dim: n,
        eval_fn,
        evals: Default::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::GaussianStream;

    #[test]
    fn sphere_hand_value() {
        let f = make_benchmark(BenchmarkId::Sphere, 2).unwrap();
        assert_eq!(f.evaluate(&[3.0, 4.0]), 25.0);
    }

    #[test]
    fn rosenbrock_optimum_is_zero() {
        let f = make_benchmark(BenchmarkId::Rosenbrock, 6).unwrap();
        assert_eq!(f.evaluate(&[1.0; 6]), 0.0);
    }

    #[test]
    fn ellipsoid_two_dim_hand_value() {
        let f = make_benchmark(BenchmarkId::Ellipsoid, 2).unwrap();
        assert_eq!(f.evaluate(&[1.0, 1.0]), 1.0 + 1e6);
    }

    #[test]
    fn cigar_first_axis_hand_value() {
        let f = make_benchmark(BenchmarkId::Cigar, 5).unwrap();
        let mut x = vec![0.0; 5];
        x[0] = 1.0;
        assert_eq!(f.evaluate(&x), 1.0);
    }

    #[test]
    fn discus_hand_value() {
        let f = make_benchmark(BenchmarkId::Discus, 3).unwrap();
        assert_eq!(f.evaluate(&[1.0, 1.0, 1.0]), 1_000_002.0);
    }

    #[test]
    fn diffpow_hand_value() {
        // exponents for n = 3 are 2, 4, 6
        let f = make_benchmark(BenchmarkId::DiffPow, 3).unwrap();
        let expected = 0.25 + 0.0625 + 0.015625;
        assert_eq!(f.evaluate(&[-0.5, 0.5, -0.5]), expected);
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(
            "rastrigin".parse::<BenchmarkId>(),
            Err(Error::UnknownFunction(_))
        ));
    }

    #[test]
    fn dimension_below_minimum_is_rejected() {
        for id in BenchmarkId::ALL {
            if id.min_dim() > 1 {
                assert!(matches!(
                    make_benchmark(id, 1),
                    Err(Error::DimensionTooSmall { .. })
                ));
            }
        }
        assert!(make_benchmark(BenchmarkId::Sphere, 1).is_ok());
    }

    #[test]
    fn zero_at_optimum_positive_elsewhere() {
        let n = 8;
        let mut stream = GaussianStream::new(99);
        for id in BenchmarkId::ALL {
            let f = make_benchmark(id, n).unwrap();
            assert_eq!(f.evaluate(&id.optimum(n)), 0.0, "{id} at optimum");
            for _ in 0..100 {
                let x = stream.next_normal_vector(n).unwrap();
                if x != id.optimum(n) {
                    assert!(f.evaluate(&x) > 0.0, "{id} must be positive off-optimum");
                }
            }
        }
    }

    #[test]
    fn id_round_trips_through_strings() {
        for id in BenchmarkId::ALL {
            assert_eq!(id.as_str().parse::<BenchmarkId>().unwrap(), id);
        }
    }
}
