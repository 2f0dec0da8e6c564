//! Run reports, trace records and DOT rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynamics::{DynamicsTrace, ScheduleKind, TraceStep};
use crate::game_core::{
    CostReport, Delta, EdgeId, Game, GameGraph, NodeId, PlayerId, StrategyProfile,
};
use crate::oracle::{harmonic, is_forest, EquilibriumCatalog};

use super::instance::FORMAT_VERSION;
use super::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub player: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub path: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerCostRecord {
    pub player: u32,
    pub cost: f64,
}

/// A used edge with its endpoints, so reports render without the instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeUsageRecord {
    pub id: EdgeId,
    pub src: NodeId,
    pub dst: NodeId,
    pub cost: f64,
    pub load: u32,
    pub share: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRecord {
    pub page_cost: f64,
    pub potential: f64,
    pub delta: f64,
    pub player_costs: Vec<PlayerCostRecord>,
    pub edges: Vec<EdgeUsageRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub profile: Vec<PathRecord>,
    pub costs: CostRecord,
    /// Union of chosen edges is an undirected forest.
    pub forest: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub equilibria: Vec<ProfileRecord>,
    pub optimum: ProfileRecord,
    /// `null` when infinite.
    pub poa: Option<f64>,
    pub pos: Option<f64>,
    /// `H(k)`, the price-of-stability bound at delta 0.
    pub harmonic_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format_version: u32,
    pub command: String,
    pub delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_file: Option<String>,
    pub result: ProfileRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogRecord>,
}

impl RunReport {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let report: RunReport =
            serde_json::from_str(text).map_err(|e| CliError::Malformed(format!("report: {e}")))?;
        if report.format_version != FORMAT_VERSION {
            return Err(CliError::Malformed(format!(
                "unsupported report format_version {}",
                report.format_version
            )));
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn profile_record(game: &Game, profile: &StrategyProfile, delta: Delta) -> ProfileRecord {
    let graph = game.graph();
    let report = CostReport::compute(graph, profile, delta);
    ProfileRecord {
        profile: path_records(game, profile),
        costs: cost_record(graph, &report),
        forest: is_forest(graph, &profile.edge_union()),
    }
}

fn path_records(game: &Game, profile: &StrategyProfile) -> Vec<PathRecord> {
    let graph = game.graph();
    profile
        .iter()
        .map(|(p, path)| PathRecord {
            player: p.0,
            label: game
                .player(p)
                .map(|pl| pl.label.clone())
                .unwrap_or_default(),
            path: path.iter().map(|&e| graph.edge(e).id.clone()).collect(),
        })
        .collect()
}

fn cost_record(graph: &GameGraph, report: &CostReport) -> CostRecord {
    CostRecord {
        page_cost: report.page_cost,
        potential: report.potential,
        delta: report.delta,
        player_costs: report
            .player_costs
            .iter()
            .map(|(p, &cost)| PlayerCostRecord { player: p.0, cost })
            .collect(),
        edges: report
            .shares
            .iter()
            .map(|(&e, &(load, share))| {
                let edge = graph.edge(e);
                EdgeUsageRecord {
                    id: edge.id.clone(),
                    src: graph.node(edge.src).id.clone(),
                    dst: graph.node(edge.dst).id.clone(),
                    cost: edge.cost,
                    load,
                    share,
                }
            })
            .collect(),
    }
}

pub fn catalog_record(game: &Game, catalog: &EquilibriumCatalog, delta: Delta) -> CatalogRecord {
    let finite = |x: f64| x.is_finite().then_some(x);
    CatalogRecord {
        equilibria: catalog
            .equilibria
            .iter()
            .map(|e| profile_record(game, &e.profile, delta))
            .collect(),
        optimum: profile_record(game, &catalog.optimum, delta),
        poa: finite(catalog.poa),
        pos: finite(catalog.pos),
        harmonic_bound: harmonic(game.player_count()),
    }
}

/// Resolves a report profile against the instance graph.
pub fn resolve_profile(game: &Game, record: &ProfileRecord) -> Result<StrategyProfile, CliError> {
    StrategyProfile::from_edge_ids(
        game.graph(),
        record
            .profile
            .iter()
            .map(|p| (PlayerId(p.player), p.path.as_slice())),
    )
    .map_err(|e| CliError::Validation(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub player: u32,
    pub previous_cost: f64,
    pub new_cost: f64,
    pub potential_after: f64,
    pub path_changed: bool,
    pub path: Vec<EdgeId>,
}

impl TraceRecord {
    pub fn from_step(graph: &GameGraph, step: &TraceStep) -> Self {
        TraceRecord {
            iteration: step.iteration,
            player: step.player.0,
            previous_cost: step.previous_cost,
            new_cost: step.new_cost,
            potential_after: step.potential_after,
            path_changed: step.path_changed,
            path: step
                .path
                .iter()
                .map(|&e| graph.edge(e).id.clone())
                .collect(),
        }
    }
}

/// One JSON object per line, one line per activation.
pub fn trace_lines(graph: &GameGraph, trace: &DynamicsTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        out.push_str(
            &serde_json::to_string(&TraceRecord::from_step(graph, step)).expect("trace serializes"),
        );
        out.push('\n');
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph of the chosen edges. Every edge is labelled with its load
/// `x` and per-user share; shared edges (load above one) are drawn bold.
pub fn render_dot(record: &ProfileRecord) -> String {
    let mut out = String::from("digraph profile {\n");
    for e in &record.costs.edges {
        let label = format!("{} (x={}, share={})", e.id, e.load, e.share);
        let style = if e.load > 1 { ", penwidth=2" } else { "" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            dot_id(&e.src.0),
            dot_id(&e.dst.0),
            dot_id(&label)
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub command: String,
    pub page_cost: f64,
    pub potential: f64,
    pub delta: f64,
    pub converged: Option<bool>,
    pub iterations: Option<usize>,
    pub equilibria: Option<usize>,
    pub poa: Option<f64>,
    pub pos: Option<f64>,
    pub player_costs: Vec<PlayerCostRecord>,
    pub shared_edges: Vec<EdgeUsageRecord>,
}

pub fn summary(report: &RunReport) -> Summary {
    let costs = &report.result.costs;
    Summary {
        command: report.command.clone(),
        page_cost: costs.page_cost,
        potential: costs.potential,
        delta: report.delta,
        converged: report.converged,
        iterations: report.iterations,
        equilibria: report.catalog.as_ref().map(|c| c.equilibria.len()),
        poa: report.catalog.as_ref().and_then(|c| c.poa),
        pos: report.catalog.as_ref().and_then(|c| c.pos),
        player_costs: costs.player_costs.clone(),
        shared_edges: costs.edges.iter().filter(|e| e.load > 1).cloned().collect(),
    }
}
