use liftlab::experiments::{
    alon_boppana_experiment, bordenave_collins_experiment, config_model_experiment, fraczyk_decoration_experiment,
    friedman_experiment, relative_ramanujan_rayleigh, AlonBoppanaConfig, BlockFactor, BordenaveCollinsConfig,
    ConfigModelConfig, ExperimentReport, FraczykConfig, FriedmanConfig, RelativeRamanujanConfig,
};
use liftlab::graph::io::{to_dot, to_json, GraphJson};
use liftlab::graph::{cheeger_constant, MultiGraph, CHEEGER_BRUTE_FORCE_CAP};
use liftlab::random::{
    configuration_model_with, phi_random_lift, random_connected_graph, random_regular_with, ugw_ball_with,
    PairingOptions,
};
use liftlab::skeleton::{skeleton_exact_finite, skeleton_for_cover, structured_spectrum};
use liftlab::spectral::{full_spectrum, lanczos, new_spectrum, tree_rho, MarkovOperator, NewSpectrumMode, Selection};
use liftlab::voltage::{cover_ball, LiftSampleJson};
use liftlab::walks::{
    annealed_rho_estimate, mc_walk, quenched_rho_estimate, return_probabilities_ball, return_probabilities_graph,
    supermultiplicativity_check, ReturnSeries, WalkOptions,
};
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::inputs::{lanczos_config, load_distribution, load_graph, load_voltage, regular_tree_ball};
use crate::{write_file, Failure, Outcome, Output};

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("JSON value")
}

fn output(command: &'static str, args: &impl Serialize, result: Value) -> Output {
    Output { command, args: value(args), result, csv: None, plots: Vec::new() }
}

fn need<T>(x: Option<T>, flag: &str, what: &str) -> Outcome<T> {
    x.ok_or_else(|| {
        let mut f = Failure::input(format!("{what} needs {flag}"));
        f.flag = Some(flag.to_string());
        f
    })
}

pub fn dispatch(command: Command, global: &GlobalArgs) -> Outcome<Output> {
    let seed = global.seed;
    match command {
        Command::Graph(GraphCommand::Build(a)) => graph_build(a, seed),
        Command::Graph(GraphCommand::Inspect(a)) => graph_inspect(a),
        Command::Graph(GraphCommand::Export(a)) => graph_export(a),
        Command::Lift(a) => lift(a, seed),
        Command::CoverBall(a) => cover_ball_cmd(a),
        Command::Spectrum(a) => spectrum(a, seed),
        Command::Walk(WalkCommand::Returns(a)) => walk_returns(a, seed, false),
        Command::Walk(WalkCommand::Quenched(a)) => walk_returns(a, seed, true),
        Command::Walk(WalkCommand::Annealed(a)) => walk_annealed(a, seed),
        Command::Skeleton(a) => skeleton(a),
        Command::Experiment(e) => experiment(e, seed),
    }
}

fn graph_build(a: BuildArgs, seed: u64) -> Outcome<Output> {
    let n = || need(a.n, "--n", "this family");
    let pairing = PairingOptions { simple: a.simple, ..PairingOptions::default() };
    let g = match a.family {
        Family::Cycle => MultiGraph::cycle(n()?)?,
        Family::Path => MultiGraph::path(n()?)?,
        Family::Complete => MultiGraph::complete(n()?)?,
        Family::Star => MultiGraph::star(n()?)?,
        Family::Bouquet => MultiGraph::bouquet(n()?)?,
        Family::Petersen => MultiGraph::petersen()?,
        Family::Hypercube => MultiGraph::hypercube(n()?)?,
        Family::RandomRegular => random_regular_with(n()?, need(a.d, "--d", "random-regular")?, seed, pairing)?,
        Family::Configuration => {
            let dist = load_distribution(&need(a.distribution.clone(), "--distribution", "configuration")?)?;
            configuration_model_with(&dist.degree_sequence(n()?), seed, pairing)?
        }
        Family::RandomConnected => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            random_connected_graph(n()?, a.extra_probability, &mut rng)?
        }
    };
    let result = json!({ "graph": GraphJson::from(&g), "summary": summary(&g) });
    Ok(output("graph build", &a, result))
}

fn summary(g: &MultiGraph) -> Value {
    let connected = g.is_connected();
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "degrees": g.degrees(),
        "loops": g.loop_count(),
        "multi_edges": g.multi_edge_count(),
        "simple": g.is_simple(),
        "connected": connected,
        "diameter": connected.then(|| g.diameter()),
    })
}

fn graph_inspect(a: InspectArgs) -> Outcome<Output> {
    let g = load_graph(&a.graph)?;
    let mut s = summary(&g);
    let n = g.vertex_count();
    if g.is_connected() && (2..=CHEEGER_BRUTE_FORCE_CAP).contains(&n) {
        let c = cheeger_constant(&g)?;
        s["cheeger"] = json!({ "value": c.value.to_string(), "subset": c.cut.subset });
    }
    Ok(output("graph inspect", &a, json!({ "graph": GraphJson::from(&g), "summary": s })))
}

fn graph_export(a: ExportArgs) -> Outcome<Output> {
    let g = load_graph(&a.graph)?;
    let text = match a.format {
        ExportFormat::Dot => to_dot(&g),
        ExportFormat::Json => to_json(&g) + "\n",
    };
    if let Some(path) = &a.to {
        write_file(path, &text)?;
    }
    Ok(output("graph export", &a, json!({ "format": a.format, "text": text })))
}

fn lift(a: LiftArgs, seed: u64) -> Outcome<Output> {
    let h = load_graph(&a.base)?;
    let phi = load_voltage(&h, &a.voltage)?;
    let s = phi_random_lift(&h, &phi, a.n, seed)?;
    let result = json!({
        "sample": LiftSampleJson::from(&s),
        "voltage": phi.to_json_value(&h),
        "is_covering": s.is_covering(),
        "connected": s.lift.is_connected(),
    });
    Ok(output("lift", &a, result))
}

fn cover_ball_cmd(a: CoverBallArgs) -> Outcome<Output> {
    let h = load_graph(&a.base)?;
    let phi = load_voltage(&h, &a.voltage)?;
    let c = cover_ball(&h, &phi, a.vertex, a.radius)?;
    let b = &c.ball;
    let words: Vec<Vec<i32>> = c.words.iter().map(|w| w.letters().to_vec()).collect();
    let result = json!({
        "ball": GraphJson::from(&b.graph),
        "root": b.root,
        "radius": b.radius,
        "vertices": b.vertex_count(),
        "complete": b.is_complete(),
        "origin": b.origin,
        "dist": b.dist,
        "words": words,
    });
    Ok(output("cover-ball", &a, result))
}

fn spectrum(a: SpectrumArgs, seed: u64) -> Outcome<Output> {
    let cfg = lanczos_config(&a.lanczos);
    let result = match a.mode {
        SpectrumMode::Dense => value(&full_spectrum(&load_graph(need(a.graph.as_ref(), "--graph", "dense mode")?)?)?),
        SpectrumMode::Extremes => {
            let g = load_graph(need(a.graph.as_ref(), "--graph", "extremes mode")?)?;
            let op = MarkovOperator::new(&g)?;
            let deflation = if a.nontrivial {
                if !g.is_connected() {
                    return Err(Failure::input("--nontrivial needs a connected graph"));
                }
                vec![op.stationary_direction()]
            } else {
                Vec::new()
            };
            let out = lanczos(&op, &deflation, Selection::LargestMagnitude(a.k), &cfg)?;
            json!({
                "values": out.values,
                "residuals": out.residuals,
                "iterations": out.iterations,
                "tolerance": cfg.tolerance,
                "kind": "extremes",
            })
        }
        SpectrumMode::New => {
            let h = load_graph(need(a.base.as_ref(), "--base", "new mode")?)?;
            let phi = load_voltage(&h, &a.voltage)?;
            let s = phi_random_lift(&h, &phi, need(a.n, "--n", "new mode")?, seed)?;
            let mode = match a.solver {
                Solver::Dense => NewSpectrumMode::Dense,
                Solver::Lanczos => NewSpectrumMode::Extremes { selection: Selection::BothEnds, config: cfg },
            };
            let new = new_spectrum(&s, mode)?;
            json!({
                "values": new.values,
                "tolerance": new.tolerance,
                "kind": new.kind,
                "max_abs": new.max_abs(),
                "base": full_spectrum(&h)?.values,
            })
        }
    };
    Ok(output("spectrum", &a, result))
}

fn walk_series(a: &WalkSourceArgs) -> Outcome<ReturnSeries> {
    let opts = if a.floats { WalkOptions::floats() } else { WalkOptions::default() };
    if let Some(path) = &a.graph {
        return Ok(return_probabilities_graph(&load_graph(path)?, a.root, a.half_steps, opts)?);
    }
    let ball = if let Some(path) = &a.cover_of {
        let h = load_graph(path)?;
        cover_ball(&h, &load_voltage(&h, &a.voltage)?, a.root, a.half_steps)?.ball
    } else if let Some(d) = a.tree {
        regular_tree_ball(d, a.half_steps)?
    } else {
        return Err(Failure::input("give one of --graph, --cover-of, --tree"));
    };
    Ok(return_probabilities_ball(&ball, a.half_steps, opts)?)
}

fn walk_returns(a: WalkSourceArgs, seed: u64, quenched: bool) -> Outcome<Output> {
    let series = walk_series(&a)?;
    let mut result = json!({
        "series": value(&series),
        "supermultiplicativity": value(&supermultiplicativity_check(&series)),
    });
    if quenched {
        result["quenched"] = value(&quenched_rho_estimate(&series)?);
        if let Some(d) = a.tree {
            result["tree_rho"] = json!(tree_rho(d)?);
        }
    }
    if let Some(walkers) = a.mc_walkers {
        let path = need(a.graph.as_ref(), "--graph", "Monte-Carlo cross-check")?;
        result["monte_carlo"] = value(&mc_walk(&load_graph(path)?, a.root, 2 * a.half_steps, walkers, seed)?);
    }
    let csv = series.to_csv();
    let mut out = output(if quenched { "walk quenched" } else { "walk returns" }, &a, result);
    out.plots.push(("return_series".into(), csv.clone()));
    out.csv = Some(csv);
    Ok(out)
}

fn walk_annealed(a: AnnealedArgs, seed: u64) -> Outcome<Output> {
    let opts = if a.floats { WalkOptions::floats() } else { WalkOptions::default() };
    let est = if let Some(spec) = &a.distribution {
        let dist = load_distribution(spec)?;
        annealed_rho_estimate(|rng| ugw_ball_with(&dist, a.half_steps, rng), a.half_steps, a.trials, seed, opts)?
    } else if let Some(ds) = &a.trees {
        if ds.is_empty() {
            return Err(Failure::input("--trees needs at least one degree"));
        }
        let balls = ds.iter().map(|&d| regular_tree_ball(d, a.half_steps)).collect::<Outcome<Vec<_>>>()?;
        annealed_rho_estimate(
            |rng| Ok(balls[rand::Rng::random_range(rng, 0..balls.len())].clone()),
            a.half_steps,
            a.trials,
            seed,
            opts,
        )?
    } else {
        return Err(Failure::input("give --distribution or --trees"));
    };
    let mut csv = String::from("two_n,mean_p,estimate\n");
    for (i, (p, e)) in est.mean_p.iter().zip(&est.curve).enumerate() {
        csv.push_str(&format!("{},{p},{e}\n", 2 * (i + 1)));
    }
    let mut out = output("walk annealed", &a, value(&est));
    out.plots.push(("annealed_curve".into(), csv.clone()));
    out.csv = Some(csv);
    Ok(out)
}

fn skeleton(a: SkeletonArgs) -> Outcome<Output> {
    let chain = if let Some(path) = &a.graph {
        skeleton_exact_finite(&load_graph(path)?)?
    } else if let Some(path) = &a.cover_of {
        let h = load_graph(path)?;
        skeleton_for_cover(&h, &load_voltage(&h, &a.voltage)?, a.radius, a.sample_radius)?
    } else {
        return Err(Failure::input("give --graph or --cover-of"));
    };
    let spectrum = match structured_spectrum(&chain) {
        Ok(s) => json!({ "values": s.values, "tolerance": s.tolerance }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let mut chain_json: Value = serde_json::from_str(&chain.to_json()).expect("skeleton JSON");
    chain_json["structured_spectrum"] = spectrum;
    Ok(output("skeleton", &a, chain_json))
}

fn base_or_bouquet(path: &Option<std::path::PathBuf>) -> Outcome<MultiGraph> {
    match path {
        Some(p) => load_graph(p),
        None => Ok(MultiGraph::bouquet(2)?),
    }
}

fn experiment(e: ExperimentCommand, seed: u64) -> Outcome<Output> {
    let (command, args, report): (&'static str, Value, ExperimentReport) = match e {
        ExperimentCommand::AlonBoppana(a) => {
            let cfg = AlonBoppanaConfig {
                d: a.d,
                sizes: a.sizes.clone(),
                trials: a.trials,
                seed,
                slack: a.slack,
                size_floor: a.size_floor,
                lanczos: lanczos_config(&a.lanczos),
            };
            ("experiment alon-boppana", value(&a), alon_boppana_experiment(&cfg)?)
        }
        ExperimentCommand::Friedman(a) => {
            let cfg = FriedmanConfig {
                d: a.d,
                n: a.n,
                trials: a.trials,
                epsilon: a.epsilon,
                seed,
                required_fraction: a.required_fraction,
                lanczos: lanczos_config(&a.lanczos),
            };
            ("experiment friedman", value(&a), friedman_experiment(&cfg)?)
        }
        ExperimentCommand::BordenaveCollins(a) => {
            let h = base_or_bouquet(&a.base)?;
            let phi = load_voltage(&h, &a.voltage)?;
            let cfg = BordenaveCollinsConfig {
                sizes: a.sizes.clone(),
                trials: a.trials,
                epsilon: a.epsilon,
                seed,
                rho_reference: a.rho_reference,
                required_fraction: a.required_fraction,
                half_steps: a.half_steps,
                dense_cap: a.dense_cap,
                lanczos: lanczos_config(&a.lanczos),
            };
            ("experiment bordenave-collins", value(&a), bordenave_collins_experiment(&h, &phi, &cfg)?)
        }
        ExperimentCommand::RelativeRamanujan(a) => {
            let h = base_or_bouquet(&a.base)?;
            let phi = load_voltage(&h, &a.voltage)?;
            let cfg = RelativeRamanujanConfig {
                n: a.n,
                block_radius: a.block_radius,
                label_seed: a.label_seed,
                steps: a.steps,
                seed,
                factor: match a.factor {
                    FactorArg::CenteredLabel => BlockFactor::CenteredLabel,
                    FactorArg::Constant => BlockFactor::Constant,
                    FactorArg::TypeOnly => BlockFactor::TypeOnly,
                    FactorArg::RandomCosine => BlockFactor::RandomCosine,
                },
                rho_reference: a.rho_reference,
                margin: a.margin,
                k_min: a.k_min,
                rayleigh_slack: a.rayleigh_slack,
                half_steps: a.half_steps,
                lanczos: lanczos_config(&a.lanczos),
            };
            ("experiment relative-ramanujan", value(&a), relative_ramanujan_rayleigh(&h, &phi, &cfg)?)
        }
        ExperimentCommand::ConfigModel(a) => {
            let mut cfg = ConfigModelConfig::new(load_distribution(&a.distribution)?);
            cfg.n = a.n;
            cfg.trials = a.trials;
            cfg.seed = seed;
            cfg.slack = a.slack;
            cfg.half_steps = a.half_steps;
            cfg.ugw_samples = a.ugw_samples;
            cfg.evidence_margin = a.evidence_margin;
            cfg.lanczos = lanczos_config(&a.lanczos);
            ("experiment config-model", value(&a), config_model_experiment(&cfg)?)
        }
        ExperimentCommand::Fraczyk(a) => {
            let cfg = FraczykConfig {
                corpus_size: a.corpus_size,
                max_vertices: a.max_vertices,
                seed,
                label_range: a.label_range,
                extra_edge_probability: a.extra_edge_probability,
            };
            ("experiment fraczyk", value(&a), fraczyk_decoration_experiment(&cfg)?)
        }
    };
    let passed = report.verdicts.iter().filter(|v| v.passed).count();
    eprintln!(
        "{}: {} trials in {:.2?}, {}/{} verdicts passed",
        report.experiment,
        report.trials.len(),
        report.wall_clock,
        passed,
        report.verdicts.len()
    );
    let plots = report.plots.iter().map(|p| (p.name.clone(), p.to_csv())).collect();
    Ok(Output {
        command,
        args,
        result: serde_json::from_str(&report.to_json()).expect("report JSON"),
        csv: Some(report.to_csv()),
        plots,
    })
}
