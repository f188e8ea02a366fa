//! Adversarial-attack objective over a score-based classifier oracle.
//!
//! The objective encodes a preference for wrongly classified points: inputs
//! the oracle assigns to the original class score the margin between the
//! original class and the strongest alternative (non-negative), while
//! misclassified inputs score the strictly negative `-1 / ||x - x0||`, so
//! minimization first crosses the decision boundary and then pulls the point
//! back toward the original input.

use std::sync::Arc;

use crate::error::Error;
use crate::objectives::Objective;

/// A score-based classifier: maps an input to a probability vector.
pub trait ClassifierOracle: Send + Sync {
    fn dim(&self) -> usize;
    fn classes(&self) -> usize;

    /// Probability vector of length [`classes`](Self::classes); entries are
    /// non-negative and sum to 1 (within 1e-9).
    fn predict_proba(&self, x: &[f64]) -> Vec<f64>;

    /// Predicted class: argmax of the probability vector, ties broken toward
    /// the smallest class index.
    fn classify(&self, x: &[f64]) -> usize {
        let probs = self.predict_proba(x);
        let mut best = 0;
        for (i, p) in probs.iter().enumerate().skip(1) {
            if *p > probs[best] {
                best = i;
            }
        }
        best
    }
}

/// Axis-aligned box with a class label, used by [`BoxStubClassifier`].
#[derive(Debug, Clone)]
pub struct BoxRegion {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub class: usize,
}

impl BoxRegion {
    fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(v, (lo, hi))| lo <= v && v < hi)
    }
}

/// Piecewise-constant stub classifier over axis-aligned boxes.
///
/// The first box containing the input decides the class; everything else
/// falls to `default_class`. The winning class gets probability
/// `confidence`, the remaining mass is spread evenly. With
/// `confidence != 1/classes` the argmax is never tied, which keeps the sign
/// split of the adversarial objective exact.
#[derive(Debug, Clone)]
pub struct BoxStubClassifier {
    dim: usize,
    classes: usize,
    confidence: f64,
    default_class: usize,
    regions: Vec<BoxRegion>,
}

impl BoxStubClassifier {
    pub fn new(
        dim: usize,
        classes: usize,
        default_class: usize,
        confidence: f64,
        regions: Vec<BoxRegion>,
    ) -> Result<Self, Error> {
        if classes < 2 {
            return Err(Error::InvalidConfig(
                "stub classifier needs at least 2 classes".into(),
            ));
        }
        if default_class >= classes {
            return Err(Error::ClassOutOfRange {
                index: default_class,
                classes,
            });
        }
        if !(0.0 < confidence && confidence < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "confidence must lie in (0, 1), got {confidence}"
            )));
        }
        for region in &regions {
            if region.lower.len() != dim || region.upper.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: region.lower.len().min(region.upper.len()),
                });
            }
            if region.class >= classes {
                return Err(Error::ClassOutOfRange {
                    index: region.class,
                    classes,
                });
            }
        }
        Ok(BoxStubClassifier {
            dim,
            classes,
            confidence,
            default_class,
            regions,
        })
    }
}

impl ClassifierOracle for BoxStubClassifier {
    fn dim(&self) -> usize {
        self.dim
    }

    fn classes(&self) -> usize {
        self.classes
    }

    fn predict_proba(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        let winner = self
            .regions
            .iter()
            .find(|r| r.contains(x))
            .map(|r| r.class)
            .unwrap_or(self.default_class);
        let rest = (1.0 - self.confidence) / (self.classes - 1) as f64;
        let mut probs = vec![rest; self.classes];
        probs[winner] = self.confidence;
        probs
    }
}

/// Builds the adversarial objective for the correctly classified input
/// `(x0, y0)`.
///
/// `f(x) = h(x)[y0] - max{h(x)[i] : i != y0}` while the oracle still assigns
/// `x` to `y0` (a tied argmax involving `y0` counts as `y0`), and
/// `-1 / ||x - x0||` once it does not. The value is therefore non-negative
/// exactly on inputs classified as `y0`. A misclassified point coinciding
/// with `x0` cannot occur for a correctly classified `x0`; the division is
/// still guarded and yields negative infinity ("perfect adversarial at zero
/// distance").
pub fn adversarial_objective(
    oracle: Arc<dyn ClassifierOracle>,
    x0: Vec<f64>,
    y0: usize,
) -> Result<Objective, Error> {
    if y0 >= oracle.classes() {
        return Err(Error::ClassOutOfRange {
            index: y0,
            classes: oracle.classes(),
        });
    }
    if x0.len() != oracle.dim() {
        return Err(Error::DimensionMismatch {
            expected: oracle.dim(),
            got: x0.len(),
        });
    }
    let dim = x0.len();
    Ok(Objective::new("adversarial", dim, move |x: &[f64]| {
        let probs = oracle.predict_proba(x);
        let max_other = probs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != y0)
            .map(|(_, p)| *p)
            .fold(f64::NEG_INFINITY, f64::max);
        if probs[y0] >= max_other {
            probs[y0] - max_other
        } else {
            let dist = x
                .iter()
                .zip(&x0)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if dist > 0.0 {
                -1.0 / dist
            } else {
                f64::NEG_INFINITY
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct FixedOracle {
        probs: Vec<f64>,
    }

    impl ClassifierOracle for FixedOracle {
        fn dim(&self) -> usize {
            2
        }
        fn classes(&self) -> usize {
            self.probs.len()
        }
        fn predict_proba(&self, _x: &[f64]) -> Vec<f64> {
            self.probs.clone()
        }
    }

    #[test]
    fn margin_branch_hand_value() {
        let oracle = Arc::new(FixedOracle {
            probs: vec![0.6, 0.3, 0.1],
        });
        let f = adversarial_objective(oracle, vec![0.0, 0.0], 0).unwrap();
        let v = f.evaluate(&[1.0, 1.0]);
        assert!((v - 0.3).abs() < 1e-15);
    }

    #[test]
    fn distance_branch_hand_value() {
        let oracle = Arc::new(FixedOracle {
            probs: vec![0.2, 0.8],
        });
        let f = adversarial_objective(oracle, vec![0.0, 0.0], 0).unwrap();
        // ||x - x0|| = 2
        assert_eq!(f.evaluate(&[2.0, 0.0]), -0.5);
    }

    #[test]
    fn tie_involving_original_class_counts_as_original() {
        let oracle = Arc::new(FixedOracle {
            probs: vec![0.4, 0.4, 0.2],
        });
        let f = adversarial_objective(oracle, vec![0.0, 0.0], 1).unwrap();
        let v = f.evaluate(&[3.0, 0.0]);
        assert!(v >= 0.0, "tied argmax involving y0 must be non-negative, got {v}");
        assert_eq!(v, 0.0);
    }

    #[test]
    fn zero_distance_guard_returns_negative_infinity() {
        // Pathological oracle: x0 itself is misclassified, violating the
        // usual precondition; the guard must still produce a defined value.
        let oracle = Arc::new(FixedOracle {
            probs: vec![0.1, 0.9],
        });
        let f = adversarial_objective(oracle, vec![1.0, 2.0], 0).unwrap();
        assert_eq!(f.evaluate(&[1.0, 2.0]), f64::NEG_INFINITY);
    }

    #[test]
    fn class_out_of_range_is_rejected() {
        let oracle = Arc::new(FixedOracle {
            probs: vec![0.5, 0.5],
        });
        assert!(matches!(
            adversarial_objective(oracle, vec![0.0, 0.0], 2),
            Err(Error::ClassOutOfRange { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let oracle = Arc::new(FixedOracle {
            probs: vec![0.5, 0.5],
        });
        assert!(matches!(
            adversarial_objective(oracle, vec![0.0; 3], 0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn stub_probabilities_sum_to_one() {
        let stub = BoxStubClassifier::new(
            3,
            4,
            0,
            0.7,
            vec![BoxRegion {
                lower: vec![-1.0; 3],
                upper: vec![1.0; 3],
                class: 2,
            }],
        )
        .unwrap();
        for x in [[0.0, 0.0, 0.0], [5.0, 5.0, 5.0]] {
            let probs = stub.predict_proba(&x);
            let total: f64 = probs.iter().sum();
            assert!((total - 1.0).abs() <= 1e-9);
            assert!(probs.iter().all(|p| *p >= 0.0));
        }
        assert_eq!(stub.classify(&[0.0, 0.0, 0.0]), 2);
        assert_eq!(stub.classify(&[5.0, 5.0, 5.0]), 0);
    }

    #[test]
    fn stub_rejects_bad_configuration() {
        assert!(BoxStubClassifier::new(2, 1, 0, 0.7, vec![]).is_err());
        assert!(BoxStubClassifier::new(2, 3, 5, 0.7, vec![]).is_err());
        assert!(BoxStubClassifier::new(2, 3, 0, 1.5, vec![]).is_err());
    }
}
