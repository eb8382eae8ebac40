//! Run specification files.

use std::path::Path;
use std::sync::Arc;

use hovey_core::demos;
use hovey_core::hovey::DEFAULT_THICKNESS_BOUND;
use hovey_core::linmod::{Algebra, AlgebraSpec, Bounds, BoundsSpec, MorphismSpec};
use hovey_core::{Error, Result};
use serde::{Deserialize, Serialize};

/// A class given as one builder word (`all`, `proj`, `inj`, `0`) or a list of
/// catalog names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Word(String),
    List(Vec<String>),
}

impl ClassSpec {
    pub fn words(&self) -> Vec<String> {
        match self {
            ClassSpec::Word(w) => vec![w.clone()],
            ClassSpec::List(ws) => ws.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub left: ClassSpec,
    pub right: ClassSpec,
}

impl PairSpec {
    fn of(left: &str, right: &str) -> Self {
        PairSpec { left: ClassSpec::Word(left.into()), right: ClassSpec::Word(right.into()) }
    }
}

/// The file format.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default)]
    pub demo: Option<String>,
    #[serde(default)]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub pair1: Option<PairSpec>,
    #[serde(default)]
    pub pair2: Option<PairSpec>,
    #[serde(default)]
    pub bounds: Option<BoundsSpec>,
    #[serde(default)]
    pub thickness_bound: Option<usize>,
    #[serde(default)]
    pub morphism: Option<MorphismSpec>,
}

/// Command-line overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub demo: Option<String>,
    pub bound: Option<usize>,
    pub seed: Option<u64>,
}

/// A validated run with every default filled in.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub algebra: Arc<Algebra>,
    pub echo: SpecEcho,
}

/// What the run actually used; echoed verbatim into the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEcho {
    pub source: String,
    pub algebra: AlgebraSpec,
    pub bounds: Bounds,
    pub pair1: PairSpec,
    pub pair2: PairSpec,
    pub thickness_bound: usize,
    pub seed: Option<u64>,
    pub morphism: Option<MorphismSpec>,
}

pub fn parse_spec(text: &str, origin: &str, overrides: &Overrides) -> Result<RunSpec> {
    let file: SpecFile = serde_json::from_str(text)
        .map_err(|e| Error::Usage(format!("{origin}:{}:{}: {e}", e.line(), e.column())))?;
    resolve(file, origin, overrides)
}

pub fn load_spec(path: &Path, overrides: &Overrides) -> Result<RunSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    parse_spec(&text, &path.display().to_string(), overrides)
}

/// A spec consisting of nothing but a demo name.
pub fn demo_spec(name: &str, overrides: &Overrides) -> Result<RunSpec> {
    let file = SpecFile { demo: Some(name.into()), ..SpecFile::default() };
    resolve(file, &format!("demo:{name}"), overrides)
}

fn resolve(file: SpecFile, origin: &str, overrides: &Overrides) -> Result<RunSpec> {
    if file.demo.is_some() && file.algebra.is_some() {
        return Err(Error::Usage(format!("{origin}: give either `demo` or `algebra`, not both")));
    }
    // --demo replaces whatever algebra the file names
    let (mut algebra, source) = if let Some(name) = overrides.demo.as_ref().or(file.demo.as_ref()) {
        let text = demos::text(name).ok_or_else(|| {
            Error::Usage(format!("unknown demo `{name}` (expected one of {})", demos::NAMES.join(", ")))
        })?;
        let spec: AlgebraSpec = serde_json::from_str(text).expect("demo algebras parse");
        (spec, format!("demo:{name}"))
    } else if let Some(a) = file.algebra {
        (a, origin.to_string())
    } else {
        return Err(Error::Usage(format!("{origin}: missing `algebra` (or `demo`)")));
    };
    let mut bounds = algebra.bounds.clone().unwrap_or_default();
    if let Some(b) = &file.bounds {
        bounds = bounds.merged(b);
    }
    if let Some(n) = overrides.bound {
        bounds.max_witness_dim = Some(n);
    }
    let resolved = bounds.resolve()?;
    algebra.bounds = Some(BoundsSpec {
        max_dim: Some(resolved.max_dim),
        max_iter: Some(resolved.max_iter),
        max_witness_dim: Some(resolved.max_witness_dim),
    });
    let alg = Arc::new(Algebra::from_spec(&algebra)?);
    let thickness_bound = file.thickness_bound.unwrap_or(DEFAULT_THICKNESS_BOUND);
    if thickness_bound == 0 {
        return Err(Error::Usage(format!("{origin}: thickness_bound must be positive")));
    }
    Ok(RunSpec {
        algebra: alg,
        echo: SpecEcho {
            source,
            algebra,
            bounds: resolved,
            pair1: file.pair1.unwrap_or_else(|| PairSpec::of("all", "inj")),
            pair2: file.pair2.unwrap_or_else(|| PairSpec::of("proj", "all")),
            thickness_bound,
            seed: overrides.seed,
            morphism: file.morphism,
        },
    })
}
