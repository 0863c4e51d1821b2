//! Direct numerical evolvers: the graph flow y_t = D(y_x) y_xx, the
//! flux-form slope flow u_t = (D(u) u_x)_x, and the parametric closed-curve
//! flow by curvature, with diagnostics (wave speed, extinction time) used to
//! validate the closed-form catalog.

pub mod closed;
pub mod diagnostics;
pub mod graph;

pub use closed::{evolve_closed, ClosedCurveFlowProblem, Redistribution};
pub use diagnostics::{detect_extinction, measure_wave_speed, ExtinctionFit, WaveSpeedFit};
pub use graph::{evolve_graph, evolve_slope, Bc, GraphFlowProblem, Scheme, SlopeBc, SlopeFlowProblem};

use crate::geometry::{CurveDiagnostics, GraphPatch, PlaneCurve};

use serde::{Deserialize, Serialize};

/// Time-ordered snapshots of one evolution run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Snapshots {
    Graphs(Vec<GraphPatch>),
    Curves(Vec<PlaneCurve>),
}

impl Snapshots {
    pub fn len(&self) -> usize {
        match self {
            Snapshots::Graphs(v) => v.len(),
            Snapshots::Curves(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn times(&self) -> Vec<f64> {
        match self {
            Snapshots::Graphs(v) => v.iter().map(|p| p.time_stamp).collect(),
            Snapshots::Curves(v) => v.iter().map(|c| c.time_stamp).collect(),
        }
    }
}

/// Result of an evolution run. `wave_speed` and `extinction_time` are filled
/// by the corresponding diagnostics when requested.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowResult {
    pub snapshots: Snapshots,
    /// Per-snapshot diagnostics; present for closed-curve runs.
    pub diagnostics: Vec<Option<CurveDiagnostics>>,
    pub wave_speed: Option<f64>,
    pub extinction_time: Option<f64>,
}

impl FlowResult {
    pub(crate) fn new(snapshots: Snapshots, diagnostics: Vec<Option<CurveDiagnostics>>) -> Self {
        FlowResult {
            snapshots,
            diagnostics,
            wave_speed: None,
            extinction_time: None,
        }
    }
}
