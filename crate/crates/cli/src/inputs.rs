//! Loading graphs, voltages and degree laws from files or inline JSON.

use std::fs;
use std::path::Path;

use liftlab::graph::io::{from_dot, GraphJson};
use liftlab::graph::{MultiGraph, RootedBall};
use liftlab::random::DegreeDistribution;
use liftlab::spectral::LanczosConfig;
use liftlab::voltage::{spanning_tree_voltage, universal_cover_ball, VoltageAssignment};
use serde_json::Value;

use crate::args::{LanczosArgs, VoltageArgs, VoltageKind};
use crate::{io_failure, Failure, Outcome};

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

/// A graph from DOT (by extension), plain graph JSON, or the JSON output of
/// an earlier run that produced a graph.
pub fn load_graph(path: &Path) -> Outcome<MultiGraph> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "dot" || e == "gv") {
        return Ok(from_dot(&text)?);
    }
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let graph = if v.get("tool").is_some() {
        let r = &v["result"];
        [&r["graph"], &r["sample"]["lift"], &r["ball"]]
            .into_iter()
            .find(|x| x.is_object())
            .cloned()
            .ok_or_else(|| Failure::input(format!("{}: output carries no graph", path.display())))?
    } else {
        v
    };
    let g: GraphJson = serde_json::from_value(graph).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(g.into_graph()?)
}

pub fn load_voltage(h: &MultiGraph, args: &VoltageArgs) -> Outcome<VoltageAssignment> {
    if let Some(path) = &args.voltage {
        return Ok(VoltageAssignment::from_json(h, &read(path)?)?);
    }
    Ok(match args.voltage_kind {
        VoltageKind::Free => VoltageAssignment::free_on_edges(h),
        VoltageKind::Tree => spanning_tree_voltage(h)?,
        VoltageKind::Trivial => VoltageAssignment::trivial(h, 1),
    })
}

/// Inline JSON, or a path to a JSON file.
pub fn load_distribution(spec: &str) -> Outcome<DegreeDistribution> {
    let text = if spec.trim_start().starts_with('{') { spec.to_string() } else { read(Path::new(spec))? };
    Ok(DegreeDistribution::from_json(&text)?)
}

pub fn lanczos_config(args: &LanczosArgs) -> LanczosConfig {
    LanczosConfig {
        tolerance: args.lanczos_tolerance,
        max_iterations: args.lanczos_max_iterations,
        ..LanczosConfig::default()
    }
}

/// Depth-`radius` ball of the `d`-regular tree, as the universal cover of
/// a bouquet (even `d`) or of `d` parallel edges.
pub fn regular_tree_ball(d: usize, radius: usize) -> Outcome<RootedBall> {
    if d < 2 {
        return Err(Failure::input("tree degree must be at least 2"));
    }
    let base =
        if d.is_multiple_of(2) { MultiGraph::bouquet(d / 2)? } else { MultiGraph::from_edges(2, &vec![(0, 1); d])? };
    Ok(universal_cover_ball(&base, 0, radius)?)
}
