use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use swduality::aff::AffModule;
use swduality::duality::{check_fully_faithful, degree_check, regime, Regime};
use swduality::glue::{
    check_conditions, check_restriction, compare_with_direct, decomposition_independence, verify_lie_hom,
    GluedAction, LoopSystem,
};
use swduality::induced::{embedding_rank, verify_toroidal_relations, BalancedModule};
use swduality::inverse::{extract_all, roundtrip, verify_alpha_identities};
use swduality::lie::Decomposition;
use swduality::report::{Check, Status};
use swduality::Exec;

use crate::config::{RunConfig, Suite};

/// One unit of work for a single fixture or fixture pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    AffRelations,
    BuildF,
    Toroidal,
    Alpha,
    Roundtrip,
    Glue,
    CompareDirect,
    Hom,
}

impl std::fmt::Display for Task {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl Task {
    /// Tasks needing the two-loop toroidal action.
    pub fn needs_two_loops(self) -> bool {
        matches!(
            self,
            Task::Toroidal | Task::Alpha | Task::Roundtrip | Task::CompareDirect | Task::Hom
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Task::AffRelations => "aff-relations",
            Task::BuildF => "build-f",
            Task::Toroidal => "toroidal",
            Task::Alpha => "alpha",
            Task::Roundtrip => "roundtrip",
            Task::Glue => "glue",
            Task::CompareDirect => "compare-direct",
            Task::Hom => "hom",
        }
    }

    pub fn expand(suite: Suite) -> &'static [Task] {
        match suite {
            Suite::Relations => &[Task::AffRelations, Task::Toroidal],
            Suite::Alpha => &[Task::Alpha],
            Suite::Roundtrip => &[Task::Roundtrip],
            Suite::Glue => &[Task::Glue, Task::CompareDirect],
            Suite::Hom => &[Task::Hom],
            Suite::Degree => &[Task::BuildF],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetResult {
    pub task: Task,
    pub target: String,
    pub status: Status,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub task: Task,
    pub reason: String,
}

fn summarize<T>(name: &str, items: &[T], ok: impl Fn(&T) -> bool, describe: impl Fn(&T) -> String) -> Check {
    let fails = items.iter().filter(|x| !ok(x)).map(describe).collect();
    Check::from_failures(name, items.len(), fails)
}

fn error_check(e: impl std::fmt::Display) -> Check {
    Check::fail("error", 0, e.to_string())
}

struct Outcome {
    data: BTreeMap<String, Value>,
    checks: Vec<Check>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { data: BTreeMap::new(), checks: Vec::new() }
    }

    fn with(mut self, key: &str, v: Value) -> Self {
        self.data.insert(key.to_string(), v);
        self
    }
}

type Step = swduality::Result<Outcome>;

fn aff_relations(module: &AffModule, exec: Exec) -> Step {
    let checks = module.verify(exec);
    let check = summarize(
        "aff-relations",
        &checks,
        |c| c.status.passed(),
        |c| format!("{} ({:?})", c.relation, c.family),
    );
    Ok(Outcome { data: BTreeMap::new(), checks: vec![check] }.with("dim", json!(module.dim())))
}

fn build_f(module: &AffModule, cfg: &RunConfig) -> Step {
    let b = BalancedModule::build(module, cfg.n)?;
    let mut out = Outcome::new()
        .with("dim", json!(b.dim()))
        .with("ambient_dim", json!(b.ambient_dim()))
        .with("tensor_dim", json!(b.tensor_dim()));
    if cfg.ell <= cfg.n {
        let idx: Vec<usize> = (1..=cfg.ell).collect();
        let rank = embedding_rank(&b, &idx);
        out.checks.push(if rank == module.dim() {
            Check::pass("embedding-injective", 1)
        } else {
            Check::fail("embedding-injective", 1, format!("rank {rank} < dim M = {}", module.dim()))
        });
    }
    let deg = degree_check(&b)?;
    out.checks.push(if deg.status.passed() {
        Check::pass("degree", deg.weights.len())
    } else {
        Check::fail("degree", deg.weights.len(), "a weight lies outside the weights of V^⊗ℓ".into())
    });
    Ok(out)
}

fn toroidal(module: &AffModule, cfg: &RunConfig, exec: Exec) -> Step {
    let b = BalancedModule::build(module, cfg.n)?;
    let checks = verify_toroidal_relations(&b, cfg.kmax, exec)?;
    let check = summarize(
        "toroidal-relations",
        &checks,
        |c| c.status.passed(),
        |c| format!("{} (i={}, j={}, k={}, m={})", c.relation, c.i, c.j, c.k, c.m),
    );
    Ok(Outcome { data: BTreeMap::new(), checks: vec![check] })
}

fn alpha(module: &AffModule, cfg: &RunConfig, exec: Exec) -> Step {
    let b = BalancedModule::build(module, cfg.n)?;
    let table = extract_all(&b, cfg.kmax, exec)?;
    let mut checks = vec![Check::pass("alpha-extraction", table.maps.len())];
    checks.extend(verify_alpha_identities(&table)?);
    Ok(Outcome { data: BTreeMap::new(), checks })
}

fn round_trip(module: &AffModule, cfg: &RunConfig, exec: Exec) -> Step {
    let rt = roundtrip(module, cfg.n, cfg.kmax, exec)?;
    let mut checks = rt.identities;
    checks.extend(rt.assembly);
    checks.push(match rt.mismatch {
        None if rt.matches_source => Check::pass("matches-source", module.mats().len()),
        other => Check::fail(
            "matches-source",
            module.mats().len(),
            other.unwrap_or_else(|| "reassembled module differs".into()),
        ),
    });
    Ok(Outcome { data: BTreeMap::new(), checks })
}

fn glued(module: &AffModule, cfg: &RunConfig, exec: Exec) -> swduality::Result<(LoopSystem, GluedAction)> {
    let sys = LoopSystem::from_module(module, cfg.n, cfg.kmax, exec)?;
    let g = GluedAction::build(&sys, Decomposition::Standard, exec)?;
    Ok((sys, g))
}

fn glue_suite(module: &AffModule, cfg: &RunConfig, exec: Exec) -> Step {
    let (sys, g) = glued(module, cfg, exec)?;
    let mut checks = check_conditions(&sys, cfg.samples, cfg.seed, exec)?;
    checks.push(check_restriction(&g, &sys)?);
    checks.push(verify_lie_hom(&g, cfg.kmax / 2, exec)?);
    checks.push(decomposition_independence(&sys, exec)?);
    Ok(Outcome { data: BTreeMap::new(), checks }.with("operators", json!(g.len())))
}

fn compare_direct(module: &AffModule, cfg: &RunConfig, exec: Exec) -> Step {
    let (_, g) = glued(module, cfg, exec)?;
    let b = BalancedModule::build(module, cfg.n)?;
    let cmp = compare_with_direct(&g, &b, cfg.kmax, exec)?;
    let check = summarize(
        "glued-equals-direct",
        &cmp,
        |c| c.status.passed(),
        |c| format!("{} at exponents {:?}", c.generator, c.exps),
    );
    Ok(Outcome { data: BTreeMap::new(), checks: vec![check] })
}

fn hom(m1: &AffModule, m2: &AffModule, cfg: &RunConfig, exec: Exec) -> Step {
    let r = check_fully_faithful(m1, m2, cfg.n, cfg.kmax, exec)?;
    let check = if r.status.passed() {
        Check::pass("fully-faithful", r.dim_aff)
    } else {
        Check::fail(
            "fully-faithful",
            r.dim_aff,
            format!(
                "dim Hom_aff = {}, dim Hom_tor = {}, image rank {}, stabilized {}, images intertwine {}",
                r.dim_aff, r.dim_tor, r.image_rank, r.stabilized, r.images_intertwine
            ),
        )
    };
    Ok(Outcome { data: BTreeMap::new(), checks: vec![check] }
        .with("dim_aff", json!(r.dim_aff))
        .with("dim_tor", json!(r.dim_tor))
        .with("dims_by_k", json!(r.dims_by_k))
        .with("regime", json!(r.regime)))
}

fn finish(task: Task, target: String, step: Step) -> TargetResult {
    let (data, checks) = match step {
        Ok(o) => (o.data, o.checks),
        Err(e) => (BTreeMap::new(), vec![error_check(e)]),
    };
    let status = Status::from_bool(checks.iter().all(|c| c.status.passed()));
    TargetResult { task, target, status, data, checks }
}

pub fn run_task(task: Task, modules: &[(String, AffModule)], cfg: &RunConfig, exec: Exec) -> Vec<TargetResult> {
    if task == Task::Hom {
        let mut out = Vec::new();
        for (s1, m1) in modules {
            for (s2, m2) in modules {
                out.push(finish(task, format!("{s1} -> {s2}"), hom(m1, m2, cfg, exec)));
            }
        }
        return out;
    }
    modules
        .iter()
        .map(|(s, m)| {
            let step = match task {
                Task::AffRelations => aff_relations(m, exec),
                Task::BuildF => build_f(m, cfg),
                Task::Toroidal => toroidal(m, cfg, exec),
                Task::Alpha => alpha(m, cfg, exec),
                Task::Roundtrip => round_trip(m, cfg, exec),
                Task::Glue => glue_suite(m, cfg, exec),
                Task::CompareDirect => compare_direct(m, cfg, exec),
                Task::Hom => unreachable!(),
            };
            finish(task, s.clone(), step)
        })
        .collect()
}

/// Why a task cannot run under `cfg`, if it cannot.
pub fn skip_reason(task: Task, cfg: &RunConfig) -> Option<String> {
    if task.needs_two_loops() && cfg.m != 2 {
        return Some(format!("needs m = 2, got m = {}", cfg.m));
    }
    if task == Task::Hom && regime(cfg.n, cfg.ell) == Regime::Outside {
        return Some(format!("needs ell <= n, got ell = {} and n = {}", cfg.ell, cfg.n));
    }
    None
}
