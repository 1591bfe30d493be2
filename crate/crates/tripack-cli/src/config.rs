//! Experiment configuration: a TOML document listing generator sweeps and
//! run modes, expanded into a flat instance list in declaration order.

use serde::Deserialize;
use std::path::PathBuf;

use crate::{CliError, RoundMode};
use tripack::generators::GeneratorSpec;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Branch-and-bound node budget per instance.
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Rounding mode: "derandomize", "sample" or "exhaustive".
    #[serde(default = "default_rounding")]
    pub rounding: String,
    /// Sample count in sample mode.
    #[serde(default = "default_samples")]
    pub samples: u64,
    /// Worker threads; defaults to the number of logical CPUs.
    #[serde(default)]
    pub parallelism: Option<usize>,
    /// Directory for per-instance JSON result documents.
    #[serde(default)]
    pub docs_dir: Option<PathBuf>,
    #[serde(default)]
    pub instances: Vec<InstanceSection>,
}

fn default_budget() -> u64 {
    1_000_000
}

fn default_rounding() -> String {
    "derandomize".into()
}

fn default_samples() -> u64 {
    100
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSection {
    pub generator: String,
    #[serde(default)]
    pub k: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub n: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub seeds: Option<SeedSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(vs) => vs.clone(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    List(Vec<u64>),
    Range { start: u64, count: u64 },
}

impl SeedSpec {
    fn values(&self) -> Vec<u64> {
        match self {
            SeedSpec::List(vs) => vs.clone(),
            SeedSpec::Range { start, count } => (*start..start + count).collect(),
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig, CliError> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Input(format!("config error: {e}")))?;
        config.round_mode()?;
        if config.samples == 0 {
            return Err(CliError::Input("samples must be positive".into()));
        }
        if config.budget == 0 {
            return Err(CliError::Input("budget must be positive".into()));
        }
        Ok(config)
    }

    pub fn round_mode(&self) -> Result<RoundMode, CliError> {
        match self.rounding.as_str() {
            "derandomize" => Ok(RoundMode::Derandomize),
            "sample" => Ok(RoundMode::Sample),
            "exhaustive" => Ok(RoundMode::Exhaustive),
            other => Err(CliError::Input(format!(
                "unknown rounding mode `{other}` (expected derandomize, sample or exhaustive)"
            ))),
        }
    }

    /// Expands the sweep sections into concrete generator specs, keeping
    /// declaration order, then n order, then seed order.
    pub fn expand(&self) -> Result<Vec<GeneratorSpec>, CliError> {
        let mut specs = Vec::new();
        let exhaustive = self.round_mode()? == RoundMode::Exhaustive;
        for section in &self.instances {
            let seeds = section
                .seeds
                .as_ref()
                .map(|s| s.values())
                .unwrap_or_else(|| vec![0]);
            match section.generator.as_str() {
                "carousel5" => specs.push(GeneratorSpec::Carousel5),
                "planted" => {
                    let ks = section
                        .k
                        .as_ref()
                        .ok_or_else(|| CliError::Input("planted requires k".into()))?
                        .values();
                    for k in ks {
                        specs.push(GeneratorSpec::Planted { k });
                    }
                }
                "tournament" | "random_tournament" => {
                    for n in require_n(section)? {
                        for &seed in &seeds {
                            specs.push(GeneratorSpec::RandomTournament { n, seed });
                        }
                    }
                }
                "sparse" => {
                    for n in require_n(section)? {
                        for &seed in &seeds {
                            specs.push(GeneratorSpec::Sparse { n, seed });
                        }
                    }
                }
                "transitive" => {
                    for n in require_n(section)? {
                        specs.push(GeneratorSpec::Transitive { n });
                    }
                }
                other => {
                    return Err(CliError::Input(format!("unknown generator `{other}`")));
                }
            }
        }
        if exhaustive {
            for spec in &specs {
                let n = match *spec {
                    GeneratorSpec::Carousel5 => 5,
                    GeneratorSpec::Planted { k } => 5 * k,
                    GeneratorSpec::RandomTournament { n, .. }
                    | GeneratorSpec::Sparse { n, .. }
                    | GeneratorSpec::Transitive { n } => n,
                };
                if n > 16 {
                    return Err(CliError::Input(format!(
                        "exhaustive rounding needs n <= 16, but {} has n = {n}",
                        spec.describe()
                    )));
                }
            }
        }
        Ok(specs)
    }
}

fn require_n(section: &InstanceSection) -> Result<Vec<usize>, CliError> {
    Ok(section
        .n
        .as_ref()
        .ok_or_else(|| {
            CliError::Input(format!("generator `{}` requires n", section.generator))
        })?
        .values())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let text = r#"
budget = 5000
rounding = "sample"
samples = 10

[[instances]]
generator = "carousel5"

[[instances]]
generator = "planted"
k = [1, 2]

[[instances]]
generator = "tournament"
n = [9, 12]
seeds = [0, 1]

[[instances]]
generator = "sparse"
n = 30
seeds = { start = 5, count = 3 }
"#;
        let config = ExperimentConfig::parse(text).unwrap();
        let specs = config.expand().unwrap();
        assert_eq!(specs.len(), 1 + 2 + 4 + 3);
        assert_eq!(specs[0], GeneratorSpec::Carousel5);
        assert_eq!(specs[3], GeneratorSpec::Planted { k: 2 });
        assert_eq!(
            specs[4],
            GeneratorSpec::RandomTournament { n: 9, seed: 0 }
        );
        assert_eq!(specs[8], GeneratorSpec::Sparse { n: 30, seed: 5 });
    }

    #[test]
    fn empty_config_expands_to_nothing() {
        let config = ExperimentConfig::parse("").unwrap();
        assert!(config.expand().unwrap().is_empty());
        assert_eq!(config.budget, 1_000_000);
    }

    #[test]
    fn rejects_unknown_generator_and_modes() {
        let bad = "[[instances]]\ngenerator = \"pentagon\"\n";
        let config = ExperimentConfig::parse(bad).unwrap();
        assert!(config.expand().is_err());
        assert!(ExperimentConfig::parse("rounding = \"guess\"").is_err());
        assert!(ExperimentConfig::parse("budget = 0").is_err());
    }

    #[test]
    fn exhaustive_mode_guards_instance_size() {
        let text = r#"
rounding = "exhaustive"
[[instances]]
generator = "tournament"
n = 21
seeds = [0]
"#;
        let config = ExperimentConfig::parse(text).unwrap();
        assert!(config.expand().is_err());
    }
}
