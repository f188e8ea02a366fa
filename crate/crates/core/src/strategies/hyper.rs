//! Strategy hyperparameters: defaults, recombination weights, clamping and
//! CLI overrides.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The four optimizer variants. String forms (`lmmaes`, `maes`, `sigma-es`,
/// `lmmaes-storage`) are the CLI vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    LmMaEs,
    MaEs,
    SigmaOnly,
    StorageLmMaEs,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::LmMaEs,
        Variant::MaEs,
        Variant::SigmaOnly,
        Variant::StorageLmMaEs,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::LmMaEs => "lmmaes",
            Variant::MaEs => "maes",
            Variant::SigmaOnly => "sigma-es",
            Variant::StorageLmMaEs => "lmmaes-storage",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lmmaes" => Ok(Variant::LmMaEs),
            "maes" => Ok(Variant::MaEs),
            "sigma-es" => Ok(Variant::SigmaOnly),
            "lmmaes-storage" => Ok(Variant::StorageLmMaEs),
            other => Err(Error::UnknownVariant(other.to_string())),
        }
    }
}

/// Variant-specific learning rates.
#[derive(Debug, Clone)]
pub enum VariantRates {
    /// `m` fading direction vectors with per-direction application rates
    /// `c_d[i] = 1 / (1.5^i n)` and update rates `c_c[i] = lambda / (4^i n)`
    /// (0-based `i`).
    LmMaEs {
        m: usize,
        c_d: Vec<f64>,
        c_c: Vec<f64>,
    },
    /// Rank-one / rank-mu rates of the full transformation-matrix update.
    MaEs { c_1: f64, c_mu: f64 },
    /// Step-size-only control strategy: no transformation rates at all.
    SigmaOnly,
    /// Slot storage of past evolution-path vectors with target temporal
    /// spacing `n^2 / m_max` between consecutive stored vectors.
    StorageLmMaEs {
        m_max: usize,
        c_1: f64,
        c_c: f64,
        d_sigma: f64,
    },
}

/// All constants a strategy needs, post-clamping.
#[derive(Debug, Clone)]
pub struct HyperParams {
    pub n: usize,
    pub variant: Variant,
    pub lambda: usize,
    pub mu: usize,
    /// Recombination weights over the `mu` best samples; positive, strictly
    /// decreasing, summing to 1.
    pub weights: Vec<f64>,
    /// Effective parent number `1 / sum(w_i^2)`.
    pub mu_w: f64,
    /// Path learning rate for cumulative step-size adaptation.
    pub c_sigma: f64,
    pub rates: VariantRates,
    /// Human-readable notes for every clamp that actually bound.
    pub clamp_notes: Vec<String>,
}

/// `4 + floor(3 ln n)`: default population size, and also the default
/// direction count of the limited-memory variants.
pub fn default_lambda(n: usize) -> usize {
    4 + (3.0 * (n as f64).ln()).floor() as usize
}

/// Log-linear recombination weights for `mu` parents.
///
/// Returns the normalized weights and the effective parent number
/// `mu_w = 1 / sum(w_i^2)`.
pub fn recombination_weights(mu: usize) -> (Vec<f64>, f64) {
    assert!(mu >= 1, "need at least one parent");
    let base = (mu as f64 + 0.5).ln();
    let raw: Vec<f64> = (1..=mu).map(|i| base - (i as f64).ln()).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let mu_w = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();
    (weights, mu_w)
}

fn clamp_rate(name: &str, value: f64, cap: f64, notes: &mut Vec<String>) -> f64 {
    if value > cap {
        notes.push(format!("{name} clamped from {value} to {cap}"));
        cap
    } else {
        value
    }
}

impl HyperParams {
    /// Default constants for `variant` at dimension `n`.
    ///
    /// Rates are clamped to at most 1 so the `(1 - c)` decay factors stay
    /// non-negative; the limited-memory `c_sigma = 2 lambda / n` is further
    /// capped at 0.5 since it exceeds 1 for small `n`. Every clamp that
    /// bound is recorded in `clamp_notes`.
    pub fn defaults(n: usize, variant: Variant) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::DimensionTooSmall {
                id: "hyperparameters",
                min: 2,
                got: n,
            });
        }
        let lambda = default_lambda(n);
        let mu = lambda / 2;
        let mut hp = HyperParams {
            n,
            variant,
            lambda,
            mu,
            weights: Vec::new(),
            mu_w: 0.0,
            c_sigma: 0.0,
            rates: VariantRates::SigmaOnly,
            clamp_notes: Vec::new(),
        };
        hp.rebuild_weights();
        hp.rebuild_rates(None, None)?;
        Ok(hp)
    }

    /// Defaults plus `key=value` overrides.
    ///
    /// Scalar keys: `lambda`, `mu`, `c_sigma`, plus per variant `m`, `c_d`,
    /// `c_c` (limited memory; `c_d`/`c_c` set the base rate of the decaying
    /// schedule), `c_1`, `c_mu` (full matrix), and `m_max`, `c_1`, `c_c`,
    /// `d_sigma` (storage variant). Derived quantities (weights, rate
    /// schedules) are rebuilt after the overrides are applied.
    pub fn with_overrides(
        n: usize,
        variant: Variant,
        overrides: &[(String, f64)],
    ) -> Result<Self, Error> {
        let mut hp = Self::defaults(n, variant)?;
        if overrides.is_empty() {
            return Ok(hp);
        }
        let mut lookup =
            |key: &str| -> Option<f64> { overrides.iter().rev().find(|(k, _)| k == key).map(|(_, v)| *v) };

        let known_keys = hp.known_override_keys();
        for (key, _) in overrides {
            if !known_keys.contains(&key.as_str()) {
                return Err(Error::InvalidOverride {
                    key: key.clone(),
                    reason: format!(
                        "unknown key for variant `{}`; valid keys: {}",
                        hp.variant,
                        known_keys.join(", ")
                    ),
                });
            }
        }

        if let Some(v) = lookup("lambda") {
            let lambda = as_count("lambda", v)?;
            if lambda < 2 {
                return Err(Error::InvalidOverride {
                    key: "lambda".into(),
                    reason: "population size must be at least 2".into(),
                });
            }
            hp.lambda = lambda;
            hp.mu = lambda / 2;
        }
        if let Some(v) = lookup("mu") {
            let mu = as_count("mu", v)?;
            if mu < 1 || mu > hp.lambda {
                return Err(Error::InvalidOverride {
                    key: "mu".into(),
                    reason: format!("mu must lie in [1, lambda = {}]", hp.lambda),
                });
            }
            hp.mu = mu;
        }
        hp.rebuild_weights();

        let m_override = match hp.variant {
            Variant::LmMaEs => lookup("m"),
            Variant::StorageLmMaEs => lookup("m_max"),
            _ => None,
        };
        if let Some(v) = m_override {
            let m = as_count("m", v)?;
            if m < 1 {
                return Err(Error::InvalidOverride {
                    key: "m".into(),
                    reason: "direction count must be at least 1".into(),
                });
            }
        }
        hp.rebuild_rates(m_override.map(|v| v as usize), Some(&mut lookup))?;
        Ok(hp)
    }

    fn known_override_keys(&self) -> Vec<&'static str> {
        let mut keys = vec!["lambda", "mu", "c_sigma"];
        match self.variant {
            Variant::LmMaEs => keys.extend(["m", "c_d", "c_c"]),
            Variant::MaEs => keys.extend(["c_1", "c_mu"]),
            Variant::SigmaOnly => {}
            Variant::StorageLmMaEs => keys.extend(["m_max", "c_1", "c_c", "d_sigma"]),
        }
        keys
    }

    fn rebuild_weights(&mut self) {
        let (weights, mu_w) = recombination_weights(self.mu);
        self.weights = weights;
        self.mu_w = mu_w;
    }

    fn rebuild_rates(
        &mut self,
        m_override: Option<usize>,
        mut lookup: Option<&mut dyn FnMut(&str) -> Option<f64>>,
    ) -> Result<(), Error> {
        let n = self.n as f64;
        let lambda = self.lambda as f64;
        let mut get = |key: &str| lookup.as_mut().and_then(|f| f(key));
        let mut notes = Vec::new();

        match self.variant {
            Variant::LmMaEs => {
                let m = m_override.unwrap_or_else(|| default_lambda(self.n));
                let c_sigma_raw = get("c_sigma").unwrap_or(2.0 * lambda / n);
                let c_sigma = clamp_rate("c_sigma", positive("c_sigma", c_sigma_raw)?, 0.5, &mut notes);
                let c_d_base = get("c_d").unwrap_or(1.0 / n);
                let c_c_base = get("c_c").unwrap_or(lambda / n);
                positive("c_d", c_d_base)?;
                positive("c_c", c_c_base)?;
                let c_d: Vec<f64> = (0..m)
                    .map(|i| {
                        clamp_rate(
                            &format!("c_d[{i}]"),
                            c_d_base / 1.5f64.powi(i as i32),
                            1.0,
                            &mut notes,
                        )
                    })
                    .collect();
                let c_c: Vec<f64> = (0..m)
                    .map(|i| {
                        clamp_rate(
                            &format!("c_c[{i}]"),
                            c_c_base / 4.0f64.powi(i as i32),
                            1.0,
                            &mut notes,
                        )
                    })
                    .collect();
                self.c_sigma = c_sigma;
                self.rates = VariantRates::LmMaEs { m, c_d, c_c };
            }
            Variant::MaEs => {
                let c_sigma_raw = get("c_sigma").unwrap_or((self.mu_w + 2.0) / (n + self.mu_w + 5.0));
                let c_1_raw = get("c_1").unwrap_or(2.0 / ((n + 1.3).powi(2) + self.mu_w));
                let c_mu_default = (2.0 * (self.mu_w - 2.0 + 1.0 / self.mu_w)
                    / ((n + 2.0).powi(2) + self.mu_w))
                    .min(1.0 - c_1_raw.min(1.0));
                let c_mu_raw = get("c_mu").unwrap_or(c_mu_default.max(0.0));
                self.c_sigma = clamp_rate("c_sigma", positive("c_sigma", c_sigma_raw)?, 1.0, &mut notes);
                let c_1 = clamp_rate("c_1", positive("c_1", c_1_raw)?, 1.0, &mut notes);
                let c_mu = clamp_rate("c_mu", non_negative("c_mu", c_mu_raw)?, 1.0, &mut notes);
                self.rates = VariantRates::MaEs { c_1, c_mu };
            }
            Variant::SigmaOnly => {
                let c_sigma_raw = get("c_sigma").unwrap_or(2.0 * lambda / n);
                self.c_sigma = clamp_rate("c_sigma", positive("c_sigma", c_sigma_raw)?, 0.5, &mut notes);
                self.rates = VariantRates::SigmaOnly;
            }
            Variant::StorageLmMaEs => {
                let m_max = m_override.unwrap_or_else(|| default_lambda(self.n));
                let c_sigma_raw = get("c_sigma").unwrap_or(1.0 / m_max as f64);
                let c_1_raw = get("c_1").unwrap_or(1.0 / n);
                let c_c_raw = get("c_c").unwrap_or(1.0 / n);
                let d_sigma = get("d_sigma").unwrap_or(0.5);
                self.c_sigma = clamp_rate("c_sigma", positive("c_sigma", c_sigma_raw)?, 1.0, &mut notes);
                let c_1 = clamp_rate("c_1", positive("c_1", c_1_raw)?, 1.0, &mut notes);
                let c_c = clamp_rate("c_c", positive("c_c", c_c_raw)?, 1.0, &mut notes);
                positive("d_sigma", d_sigma)?;
                self.rates = VariantRates::StorageLmMaEs {
                    m_max,
                    c_1,
                    c_c,
                    d_sigma,
                };
            }
        }
        self.clamp_notes = notes;
        Ok(())
    }

    /// Effective (post-clamp) configuration as `key=value` pairs for log
    /// headers.
    pub fn echo_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = vec![
            ("algo".to_string(), self.variant.to_string()),
            ("dim".to_string(), self.n.to_string()),
            ("lambda".to_string(), self.lambda.to_string()),
            ("mu".to_string(), self.mu.to_string()),
            ("mu_w".to_string(), self.mu_w.to_string()),
            ("c_sigma".to_string(), self.c_sigma.to_string()),
        ];
        match &self.rates {
            VariantRates::LmMaEs { m, c_d, c_c } => {
                pairs.push(("m".to_string(), m.to_string()));
                pairs.push(("c_d".to_string(), join(c_d)));
                pairs.push(("c_c".to_string(), join(c_c)));
            }
            VariantRates::MaEs { c_1, c_mu } => {
                pairs.push(("c_1".to_string(), c_1.to_string()));
                pairs.push(("c_mu".to_string(), c_mu.to_string()));
            }
            VariantRates::SigmaOnly => {}
            VariantRates::StorageLmMaEs {
                m_max,
                c_1,
                c_c,
                d_sigma,
            } => {
                pairs.push(("m_max".to_string(), m_max.to_string()));
                pairs.push(("c_1".to_string(), c_1.to_string()));
                pairs.push(("c_c".to_string(), c_c.to_string()));
                pairs.push(("d_sigma".to_string(), d_sigma.to_string()));
            }
        }
        for (i, note) in self.clamp_notes.iter().enumerate() {
            pairs.push((format!("clamp_{i}"), note.clone()));
        }
        pairs
    }
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn as_count(key: &str, value: f64) -> Result<usize, Error> {
    if value.fract() != 0.0 || value < 0.0 || value > usize::MAX as f64 {
        return Err(Error::InvalidOverride {
            key: key.into(),
            reason: format!("expected a non-negative integer, got {value}"),
        });
    }
    Ok(value as usize)
}

fn positive(key: &str, value: f64) -> Result<f64, Error> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidOverride {
            key: key.into(),
            reason: format!("expected a positive finite value, got {value}"),
        })
    }
}

fn non_negative(key: &str, value: f64) -> Result<f64, Error> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidOverride {
            key: key.into(),
            reason: format!("expected a non-negative finite value, got {value}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn population_size_formula() {
        assert_eq!(default_lambda(128), 18);
        assert_eq!(default_lambda(784), 23);
        let hp = HyperParams::defaults(128, Variant::LmMaEs).unwrap();
        assert_eq!(hp.lambda, 18);
        assert_eq!(hp.mu, 9);
    }

    #[test]
    fn limited_memory_defaults_at_n_784() {
        let hp = HyperParams::defaults(784, Variant::LmMaEs).unwrap();
        assert_eq!(hp.lambda, 23);
        let VariantRates::LmMaEs { m, .. } = &hp.rates else {
            panic!("wrong rates");
        };
        assert_eq!(*m, 23);
        assert!((hp.c_sigma - 2.0 * 23.0 / 784.0).abs() < 1e-15);
        assert!((hp.c_sigma - 0.05867).abs() < 1e-5);
    }

    #[test]
    fn single_parent_weights() {
        let (w, mu_w) = recombination_weights(1);
        assert_eq!(w, vec![1.0]);
        assert_eq!(mu_w, 1.0);
    }

    #[test]
    fn five_parent_weights_hand_values() {
        let (w, _) = recombination_weights(5);
        let expected = [0.4563, 0.2707, 0.1622, 0.0852, 0.0255];
        for (got, want) in w.iter().zip(expected) {
            assert!((got - want).abs() < 5e-5, "got {got}, want {want}");
        }
        assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn weight_invariants_up_to_256_parents() {
        for mu in 1..=256usize {
            let (w, mu_w) = recombination_weights(mu);
            assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12, "mu = {mu}");
            assert!(w.windows(2).all(|p| p[0] > p[1]), "mu = {mu}");
            assert!(w.iter().all(|v| *v > 0.0), "mu = {mu}");
            assert!(mu_w >= 1.0 - 1e-12 && mu_w <= mu as f64 + 1e-12, "mu = {mu}");
        }
    }

    #[test]
    fn small_dimension_rates_are_clamped() {
        let hp = HyperParams::defaults(4, Variant::LmMaEs).unwrap();
        let VariantRates::LmMaEs { c_c, c_d, .. } = &hp.rates else {
            panic!("wrong rates");
        };
        // lambda = 8 at n = 4, so the leading update rate 8/4 = 2 clamps to 1
        assert_eq!(c_c[0], 1.0);
        assert!(c_d.iter().all(|c| *c <= 1.0));
        // 2 lambda / n = 4 clamps to the CSA cap
        assert_eq!(hp.c_sigma, 0.5);
        assert!(!hp.clamp_notes.is_empty());
    }

    #[test]
    fn large_dimension_has_no_clamps() {
        let hp = HyperParams::defaults(512, Variant::LmMaEs).unwrap();
        assert!(hp.clamp_notes.is_empty());
    }

    #[test]
    fn maes_rates_follow_fullmatrix_defaults() {
        let hp = HyperParams::defaults(16, Variant::MaEs).unwrap();
        let n = 16.0;
        assert!((hp.c_sigma - (hp.mu_w + 2.0) / (n + hp.mu_w + 5.0)).abs() < 1e-15);
        let VariantRates::MaEs { c_1, c_mu } = hp.rates else {
            panic!("wrong rates");
        };
        assert!((c_1 - 2.0 / ((n + 1.3).powi(2) + hp.mu_w)).abs() < 1e-15);
        assert!(c_mu <= 1.0 - c_1);
    }

    #[test]
    fn storage_rates_follow_reference_defaults() {
        let hp = HyperParams::defaults(64, Variant::StorageLmMaEs).unwrap();
        let VariantRates::StorageLmMaEs {
            m_max,
            c_1,
            c_c,
            d_sigma,
        } = hp.rates
        else {
            panic!("wrong rates");
        };
        assert_eq!(m_max, default_lambda(64));
        assert_eq!(c_1, 1.0 / 64.0);
        assert_eq!(c_c, 1.0 / 64.0);
        assert_eq!(d_sigma, 0.5);
        assert_eq!(hp.c_sigma, 1.0 / m_max as f64);
    }

    #[test]
    fn overrides_apply_and_unknown_keys_fail() {
        let hp = HyperParams::with_overrides(
            64,
            Variant::LmMaEs,
            &[("c_sigma".to_string(), 0.125), ("m".to_string(), 4.0)],
        )
        .unwrap();
        assert_eq!(hp.c_sigma, 0.125);
        let VariantRates::LmMaEs { m, c_d, .. } = &hp.rates else {
            panic!("wrong rates");
        };
        assert_eq!(*m, 4);
        assert_eq!(c_d.len(), 4);

        assert!(matches!(
            HyperParams::with_overrides(64, Variant::SigmaOnly, &[("c_1".to_string(), 0.5)]),
            Err(Error::InvalidOverride { .. })
        ));
    }

    #[test]
    fn mu_above_lambda_is_rejected() {
        assert!(matches!(
            HyperParams::with_overrides(64, Variant::LmMaEs, &[("mu".to_string(), 100.0)]),
            Err(Error::InvalidOverride { .. })
        ));
    }

    #[test]
    fn tiny_dimension_is_rejected() {
        assert!(matches!(
            HyperParams::defaults(1, Variant::LmMaEs),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn variant_strings_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.as_str().parse::<Variant>().unwrap(), v);
        }
        assert!(matches!(
            "cmaes".parse::<Variant>(),
            Err(Error::UnknownVariant(_))
        ));
    }
}
