use std::path::Path;

use crate::{output, CliError, GenerateKind};
use tripack::generators::GeneratorSpec;
use tripack::serialize_digraph;

pub fn run(
    kind: GenerateKind,
    k: Option<usize>,
    n: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32, CliError> {
    let spec = build_spec(kind, k, n, seed)?;
    let g = spec
        .generate()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let text = serialize_digraph(&g, &[format!("generator: {}", spec.describe())]);
    output::emit(&text, out)?;
    Ok(0)
}

pub fn build_spec(
    kind: GenerateKind,
    k: Option<usize>,
    n: Option<usize>,
    seed: u64,
) -> Result<GeneratorSpec, CliError> {
    let need_n = |name: &str| {
        n.ok_or_else(|| CliError::Input(format!("`{name}` requires --n <vertices>")))
    };
    Ok(match kind {
        GenerateKind::Carousel5 => GeneratorSpec::Carousel5,
        GenerateKind::Planted => GeneratorSpec::Planted {
            k: k.ok_or_else(|| CliError::Input("`planted` requires --k <blocks>".into()))?,
        },
        GenerateKind::Tournament => GeneratorSpec::RandomTournament {
            n: need_n("tournament")?,
            seed,
        },
        GenerateKind::Sparse => GeneratorSpec::Sparse {
            n: need_n("sparse")?,
            seed,
        },
        GenerateKind::Transitive => GeneratorSpec::Transitive {
            n: need_n("transitive")?,
        },
    })
}
