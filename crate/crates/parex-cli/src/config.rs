//! Scenario configuration: JSON with decimal-string lag/order literals (so
//! dyadic values stay bit-exact), refused early with a line/column diagnostic
//! when malformed and with field-level messages when inconsistent.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use parex_core::experiments::{OperatorKind, TransferScenario};
use parex_core::lattice::Boundary;
use parex_core::operators::{Direction, Engine};
use parex_core::probe::ProbeBudget;
use parex_core::recipes::{FunctionRecipe, WeightRecipe};
use parex_core::ExponentPair;
use parex_core::TimeLag;

pub const DEFAULT_CONFIG: &str = include_str!("../configs/default16.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridConfig {
    pub n: usize,
    pub p: u32,
    pub extent_space: usize,
    pub extent_time: usize,
    pub boundary: Boundary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedWeight {
    pub name: String,
    pub recipe: WeightRecipe,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedFunction {
    pub name: String,
    pub recipe: FunctionRecipe,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Truncations {
    pub k_iter: usize,
    pub series_trunc: u32,
    pub nodes: usize,
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorChoice {
    FractionalMaximal {
        direction: Direction,
    },
    RestrictedMaximal {
        direction: Direction,
        center_x: i64,
        center_t: i64,
        half_width: i64,
    },
    FractionalIntegral {
        direction: Direction,
    },
    MaximalCommutator {
        direction: Direction,
        k: u32,
    },
    IntegralCommutator {
        direction: Direction,
        k: u32,
    },
    BracketIntegral {
        k: u32,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtrapolateConfig {
    /// Base operator of the transfer runs.
    pub operator: OperatorKind,
    /// Order of that operator, decimal string (usually the source gap).
    pub alpha: String,
    pub source: (f64, f64),
    pub targets: Vec<(f64, f64)>,
    /// Targets for the sup-norm mode, validated against 1/r₀.
    pub at_infinity_targets: Vec<(f64, f64)>,
    pub sizes: Vec<(usize, usize)>,
    pub vector_components: usize,
    pub vector_s: f64,
    pub a_infty_q: f64,
    pub a_infty_profile: Vec<f64>,
}

/// One characterization setup. The four kinds need different exponent
/// relations, so the config carries one block per kind label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterizeBlock {
    /// Operator order as a decimal string.
    pub alpha: String,
    /// Campanato scale as a decimal string ("0" for the mean-oscillation kinds).
    pub beta: String,
    pub k: u32,
    pub pair: (f64, f64),
    pub b0: FunctionRecipe,
    pub lambdas: Vec<f64>,
    pub sizes: Vec<(usize, usize)>,
}

pub type CharacterizeConfig = std::collections::BTreeMap<String, CharacterizeBlock>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub grid: GridConfig,
    /// Default output directory; the --out flag overrides it.
    #[serde(default)]
    pub out_dir: Option<String>,
    /// Time lag as "a/b" (b a power of two) or an exactly dyadic decimal.
    pub gamma: String,
    /// Fractional order as a decimal string.
    pub alpha: String,
    pub seed: u64,
    pub engine: Engine,
    pub probe_budget: ProbeBudget,
    pub truncations: Truncations,
    pub exponent_pairs: Vec<(f64, f64)>,
    pub weights: Vec<NamedWeight>,
    pub symbol: FunctionRecipe,
    pub functions: Vec<NamedFunction>,
    pub operator: OperatorChoice,
    pub extrapolate: ExtrapolateConfig,
    pub characterize: CharacterizeConfig,
}

impl ScenarioConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<(Self, String)> {
        let raw = match path {
            Some(p) => fs::read_to_string(p)
                .with_context(|| format!("cannot read config {}", p.display()))?,
            None => DEFAULT_CONFIG.to_string(),
        };
        let cfg: ScenarioConfig = serde_json::from_str(&raw).map_err(|e| {
            anyhow!(
                "config parse error at line {}, column {}: {}",
                e.line(),
                e.column(),
                e
            )
        })?;
        cfg.validate()?;
        Ok((cfg, raw))
    }

    pub fn gamma(&self) -> anyhow::Result<TimeLag> {
        TimeLag::parse(&self.gamma).map_err(|e| anyhow!("field `gamma`: {e}"))
    }

    pub fn alpha(&self) -> anyhow::Result<f64> {
        let a: f64 = self
            .alpha
            .parse()
            .map_err(|_| anyhow!("field `alpha`: not a number"))?;
        if !(0.0..1.0).contains(&a) {
            bail!("field `alpha`: must lie in [0, 1)");
        }
        Ok(a)
    }

    pub fn spec(&self) -> anyhow::Result<parex_core::GridSpec> {
        parex_core::GridSpec::new(
            self.grid.n,
            self.grid.p,
            self.grid.extent_space,
            self.grid.extent_time,
            self.grid.boundary,
        )
        .map_err(|e| anyhow!("field `grid`: {e}"))
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        self.spec()?;
        let gamma = self.gamma()?;
        let alpha = self.alpha()?;
        for &(r, q) in &self.exponent_pairs {
            ExponentPair::finite(r, q).map_err(|e| anyhow!("field `exponent_pairs`: {e}"))?;
        }
        // Off-diagonal relation at load time.
        let src = ExponentPair::finite(self.extrapolate.source.0, self.extrapolate.source.1)
            .map_err(|e| anyhow!("field `extrapolate.source`: {e}"))?;
        for &(r, q) in &self.extrapolate.targets {
            let t = ExponentPair::finite(r, q)
                .map_err(|e| anyhow!("field `extrapolate.targets`: {e}"))?;
            if !t.same_gap(&src) {
                bail!(
                    "field `extrapolate.targets`: ({r},{q}) violates the off-diagonal relation against source ({},{})",
                    self.extrapolate.source.0,
                    self.extrapolate.source.1
                );
            }
        }
        let inf_gap = 1.0 / self.extrapolate.source.0;
        for &(r, q) in &self.extrapolate.at_infinity_targets {
            let t = ExponentPair::finite(r, q)
                .map_err(|e| anyhow!("field `extrapolate.at_infinity_targets`: {e}"))?;
            if (t.alpha() - inf_gap).abs() > 1e-12 {
                bail!(
                    "field `extrapolate.at_infinity_targets`: ({r},{q}) must have gap 1/r0 = {inf_gap}"
                );
            }
        }
        // Every characterization block parses, and its exponent pair matches
        // the relation its kind requires.
        for (label, block) in &self.characterize {
            let ch_alpha: f64 = block
                .alpha
                .parse()
                .map_err(|_| anyhow!("field `characterize.{label}.alpha`: not a number"))?;
            let ch_beta: f64 = block
                .beta
                .parse()
                .map_err(|_| anyhow!("field `characterize.{label}.beta`: not a number"))?;
            if !(0.0..1.0).contains(&ch_alpha) || ch_beta < 0.0 {
                bail!("field `characterize.{label}`: orders out of range");
            }
            let pair = ExponentPair::finite(block.pair.0, block.pair.1)
                .map_err(|e| anyhow!("field `characterize.{label}.pair`: {e}"))?;
            let expected = match label.as_str() {
                "integral-bracket" | "even-order-maximal" => Some(ch_alpha),
                "campanato-fractional" => Some(ch_alpha + ch_beta * block.k as f64),
                "maximal-bracket" => Some(0.0),
                _ => None,
            };
            if let Some(gap) = expected {
                if (pair.alpha() - gap).abs() > 1e-12 {
                    bail!(
                        "field `characterize.{label}.pair`: gap {} does not match the required {gap}",
                        pair.alpha()
                    );
                }
            }
        }
        if self.truncations.nodes <= 2 * self.truncations.series_trunc as usize {
            bail!("field `truncations`: nodes must exceed twice the series truncation");
        }
        let _ = (gamma, alpha);
        Ok(())
    }

    pub fn transfer_scenario(&self, name: &str, seed: u64) -> anyhow::Result<TransferScenario> {
        Ok(TransferScenario {
            name: name.into(),
            n: self.grid.n,
            p: self.grid.p,
            boundary: self.grid.boundary,
            sizes: self.extrapolate.sizes.clone(),
            gamma: self.gamma()?,
            alpha: self
                .extrapolate
                .alpha
                .parse()
                .map_err(|_| anyhow!("field `extrapolate.alpha`: not a number"))?,
            operator: self.extrapolate.operator,
            dir: Direction::Forward,
            source: self.extrapolate.source,
            targets: self.extrapolate.targets.clone(),
            weights: self
                .weights
                .iter()
                .map(|w| (w.name.clone(), w.recipe.clone()))
                .collect(),
            budget: ProbeBudget {
                seed,
                ..self.probe_budget
            },
            vector_components: self.extrapolate.vector_components,
            vector_s: self.extrapolate.vector_s,
            a_infty_q: self.extrapolate.a_infty_q,
            a_infty_profile: self.extrapolate.a_infty_profile.clone(),
            seed,
        })
    }
}
