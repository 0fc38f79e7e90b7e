//! The demo catalog. Each demo runs a fixed battery of module operations with
//! default parameters and turns the outcomes into report checks.

mod moments;
mod sequences;
mod states;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use wavelab_core::Grid;

use crate::report::{to_value, Check, CsvSeries, DemoReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Demo {
    EntropyOverlap,
    MixtureDuality,
    SpanEquality,
    DecomposeThrough,
    VectorRescale,
    GaussToCauchy,
    EvolutionSweep,
    CauchySequence,
    SchwartzBattery,
    FourierClosure,
    MomentTomography,
}

impl Demo {
    pub const ALL: [Demo; 11] = [
        Demo::EntropyOverlap,
        Demo::MixtureDuality,
        Demo::SpanEquality,
        Demo::DecomposeThrough,
        Demo::VectorRescale,
        Demo::GaussToCauchy,
        Demo::EvolutionSweep,
        Demo::CauchySequence,
        Demo::SchwartzBattery,
        Demo::FourierClosure,
        Demo::MomentTomography,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Demo::EntropyOverlap => "entropy-overlap",
            Demo::MixtureDuality => "mixture-duality",
            Demo::SpanEquality => "span-equality",
            Demo::DecomposeThrough => "decompose-through",
            Demo::VectorRescale => "vector-rescale",
            Demo::GaussToCauchy => "gauss-to-cauchy",
            Demo::EvolutionSweep => "evolution-sweep",
            Demo::CauchySequence => "cauchy-sequence",
            Demo::SchwartzBattery => "schwartz-battery",
            Demo::FourierClosure => "fourier-closure",
            Demo::MomentTomography => "moment-tomography",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Demo::EntropyOverlap => "entropy of an equal two-state mixture is a function of the overlap alone",
            Demo::MixtureDuality => "a superposition of given states yields a second decomposition of their mixture",
            Demo::SpanEquality => "two decompositions of one mixture span the same subspace",
            Demo::DecomposeThrough => "any state inside a mixture's support appears in some decomposition of it",
            Demo::VectorRescale => "superposition coefficients can be reassigned at will by rescaling vectors",
            Demo::GaussToCauchy => "a smooth coordinate change carries a Gaussian onto a state with infinite variance",
            Demo::EvolutionSweep => "a monotone evolution family turns finite position variance infinite",
            Demo::CauchySequence => "smooth truncations converge in norm while their second moment diverges",
            Demo::SchwartzBattery => "seminorm sweeps separate rapidly decaying states from heavy tails",
            Demo::FourierClosure => "rapid decay survives the Fourier transform; compact support does not",
            Demo::MomentTomography => "polynomial moment tables tell distinct rapidly decaying states apart",
        }
    }

    /// Short pointer to the underlying result.
    pub fn anchor(self) -> &'static str {
        match self {
            Demo::EntropyOverlap => "entropy-overlap theorem",
            Demo::MixtureDuality => "superposition-as-decomposition proposition",
            Demo::SpanEquality => "span-from-mixture proposition",
            Demo::DecomposeThrough => "decomposition-through-a-state proposition",
            Demo::VectorRescale => "vector-space insufficiency proposition",
            Demo::GaussToCauchy => "Gaussian-to-Cauchy change of variables",
            Demo::EvolutionSweep => "position-momentum evolution family",
            Demo::CauchySequence => "norm-Cauchy sequence with divergent moments",
            Demo::SchwartzBattery => "Schwartz-space seminorm topology",
            Demo::FourierClosure => "Fourier closure and compact-support footnote",
            Demo::MomentTomography => "identification by expectation values",
        }
    }
}

impl fmt::Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Demo {
    type Err = DemoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Demo::ALL.into_iter().find(|d| d.name() == s).ok_or_else(|| DemoError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
}

pub fn list_demos() -> Vec<CatalogEntry> {
    Demo::ALL
        .into_iter()
        .map(|d| CatalogEntry { name: d.name(), description: d.description(), anchor: d.anchor() })
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum DemoError {
    #[error("unknown demo `{0}`; valid names: {names}", names = Demo::ALL.map(Demo::name).join(", "))]
    Unknown(String),
    #[error(transparent)]
    Core(#[from] wavelab_core::Error),
}

/// Run-wide overrides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub seed: u64,
    /// Point count of the demo's reference grid, where it has one.
    pub grid_n: Option<usize>,
    /// Half-width of the demo's reference grid, where it has one.
    pub grid_l: Option<f64>,
}

impl Default for Params {
    fn default() -> Self {
        Self { seed: 42, grid_n: None, grid_l: None }
    }
}

impl Params {
    fn grid(&self, default_l: f64, default_n: usize) -> Result<Grid, DemoError> {
        Ok(Grid::new(self.grid_l.unwrap_or(default_l), self.grid_n.unwrap_or(default_n))?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoOutput {
    pub report: DemoReport,
    pub series: Vec<CsvSeries>,
}

/// Accumulates parameters, checks and plot series while a demo runs.
#[derive(Default)]
pub(crate) struct Ctx {
    params: BTreeMap<String, Value>,
    checks: Vec<Check>,
    series: Vec<CsvSeries>,
}

impl Ctx {
    pub(crate) fn param<T: Serialize + ?Sized>(&mut self, key: &str, value: &T) {
        self.params.insert(key.to_string(), to_value(value));
    }

    pub(crate) fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub(crate) fn series(&mut self, s: CsvSeries) {
        self.series.push(s);
    }
}

pub fn run_demo(demo: Demo, params: &Params) -> Result<DemoOutput, DemoError> {
    let start = Instant::now();
    let mut ctx = Ctx::default();
    match demo {
        Demo::EntropyOverlap => states::entropy_overlap(&mut ctx, params)?,
        Demo::MixtureDuality => states::mixture_duality(&mut ctx, params)?,
        Demo::SpanEquality => states::span_equality(&mut ctx, params)?,
        Demo::DecomposeThrough => states::decompose_through(&mut ctx, params)?,
        Demo::VectorRescale => states::vector_rescale(&mut ctx)?,
        Demo::GaussToCauchy => moments::gauss_to_cauchy(&mut ctx, params)?,
        Demo::EvolutionSweep => moments::evolution_sweep(&mut ctx)?,
        Demo::CauchySequence => sequences::cauchy_sequence(&mut ctx)?,
        Demo::SchwartzBattery => sequences::schwartz_battery(&mut ctx)?,
        Demo::FourierClosure => sequences::fourier_closure(&mut ctx)?,
        Demo::MomentTomography => sequences::moment_tomography(&mut ctx, params)?,
    }
    log::info!("{demo}: {} checks in {:?}", ctx.checks.len(), start.elapsed());
    Ok(DemoOutput {
        report: DemoReport {
            demo: demo.name().to_string(),
            params: ctx.params,
            seed: params.seed,
            checks: ctx.checks,
            duration_ms: start.elapsed().as_millis() as u64,
        },
        series: ctx.series,
    })
}
