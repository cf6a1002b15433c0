//! Command execution: wire a built session into the engine's check batteries,
//! optionally fanning the outer subgroup loop out over worker threads. The
//! merged report order is independent of scheduling.

use crate::report::{tables_to_json, tables_to_text, Report};
use crate::spec::{Backend, Session};
use mackey_engine::action::ActionData;
use mackey_engine::driver::{Driver, Scope};
use mackey_engine::pointed::PointedData;
use mackey_engine::report::CheckReport;
use mackey_engine::smash::compare_with_abstract;
use mackey_engine::split::SimplesCache;

pub const RETRIES: usize = 128;
pub const TRIALS: usize = 24;

pub enum Command {
    Validate,
    Mackey,
    Coherence,
    Adjunction,
    Tables,
    SmashCompare,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Mackey => "mackey",
            Command::Coherence => "coherence",
            Command::Adjunction => "adjunction",
            Command::Tables => "tables",
            Command::SmashCompare => "smash-compare",
        }
    }
}

pub struct RunOutput {
    pub report: Report,
    pub passed: bool,
    /// (tables.json, tables.txt) artifacts for the tables command.
    pub tables: Option<(String, String)>,
}

fn scope_name(scope: Scope) -> &'static str {
    match scope {
        Scope::All => "all",
        Scope::Sampled => "sampled",
    }
}

type BatteryFn<'a> =
    dyn Fn(&Driver<'a>, &mut SimplesCache) -> Result<CheckReport, String> + Sync + 'a;

/// Run one battery, splitting the outer subgroup loop over `jobs` threads.
/// Each worker gets its own driver and cache; partial reports are merged in
/// subgroup order so the result is schedule-independent.
fn run_parallel<'a>(
    action: &'a ActionData,
    pointed: Option<&'a PointedData>,
    seed: u64,
    scope: Scope,
    bound: usize,
    jobs: usize,
    battery: &BatteryFn<'a>,
) -> Result<CheckReport, String> {
    let probe = Driver::new(action, pointed, seed, scope, bound, RETRIES, TRIALS)
        .map_err(|e| e.to_string())?;
    let indices: Vec<usize> = probe.scoped_subgroup_indices().to_vec();
    let jobs = jobs.max(1).min(indices.len().max(1));
    if jobs <= 1 || indices.len() <= 1 {
        let mut cache = probe.fresh_cache();
        return battery(&probe, &mut cache);
    }
    let chunks: Vec<Vec<usize>> = indices
        .chunks(indices.len().div_ceil(jobs))
        .map(<[usize]>::to_vec)
        .collect();
    let mut partials: Vec<(usize, Result<CheckReport, String>)> = Vec::new();
    std::thread::scope(|scope_handle| {
        let mut handles = Vec::new();
        for (rank, chunk) in chunks.iter().enumerate() {
            let chunk = chunk.clone();
            handles.push((
                rank,
                scope_handle.spawn(move || {
                    let driver = Driver::new(action, pointed, seed, scope, bound, RETRIES, TRIALS)
                        .map_err(|e| e.to_string())?
                        .with_subgroup_filter(&chunk);
                    let mut cache = driver.fresh_cache();
                    battery(&driver, &mut cache)
                }),
            ));
        }
        for (rank, handle) in handles {
            let result = handle
                .join()
                .unwrap_or_else(|_| Err("worker panicked".into()));
            partials.push((rank, result));
        }
    });
    partials.sort_by_key(|&(rank, _)| rank);
    let mut merged = CheckReport::new();
    for (_, partial) in partials {
        merged.merge(partial?);
    }
    Ok(merged)
}

pub fn run(
    session: &Session,
    command: &Command,
    scope: Scope,
    jobs: usize,
) -> Result<RunOutput, String> {
    let seed = session.seed;
    let bound = session.subgroup_bound;
    let check = match command {
        Command::Validate => match &session.backend {
            Backend::Abstract(action) => action.validate(),
            Backend::Pointed(p) => {
                let mut r = p.action().validate();
                r.merge(p.validate());
                r
            }
            Backend::Smash(galg) => {
                let mut r = CheckReport::new();
                match galg.validate() {
                    Ok(()) => r.pass("algebra and action validation"),
                    Err(e) => r.fail("algebra and action validation", e.to_string()),
                }
                r
            }
        },
        Command::Mackey | Command::Coherence | Command::Adjunction => {
            let action = session.backend.action().ok_or_else(|| {
                format!("{} requires an abstract or pointed backend", command.name())
            })?;
            let pointed = session.backend.pointed();
            let battery: Box<BatteryFn> = match command {
                Command::Mackey => Box::new(|d: &Driver, c: &mut SimplesCache| {
                    d.mackey_battery(c).map_err(|e| e.to_string())
                }),
                Command::Adjunction => Box::new(|d: &Driver, c: &mut SimplesCache| {
                    d.adjunction_battery(c).map_err(|e| e.to_string())
                }),
                Command::Coherence => Box::new(move |d: &Driver, c: &mut SimplesCache| {
                    let mut r = d.coherence_battery(c).map_err(|e| e.to_string())?;
                    if d.pointed.is_some() {
                        r.merge(d.green_categorical_battery(c).map_err(|e| e.to_string())?);
                    }
                    Ok(r)
                }),
                _ => unreachable!(),
            };
            run_parallel(action, pointed, seed, scope, bound, jobs, battery.as_ref())?
        }
        Command::Tables => {
            let action = session
                .backend
                .action()
                .ok_or_else(|| "tables requires an abstract or pointed backend".to_string())?;
            let driver = Driver::new(
                action,
                session.backend.pointed(),
                seed,
                scope,
                bound,
                RETRIES,
                TRIALS,
            )
            .map_err(|e| e.to_string())?;
            let (table, check) = driver.tables_battery().map_err(|e| e.to_string())?;
            let json =
                serde_json::to_string_pretty(&tables_to_json(&table)).expect("tables serialize");
            let text = tables_to_text(&table);
            let passed = check.all_passed();
            let report = Report::from_check(command.name(), seed, scope_name(scope), &check);
            return Ok(RunOutput {
                report,
                passed,
                tables: Some((json, text)),
            });
        }
        Command::SmashCompare => {
            let Backend::Smash(galg) = &session.backend else {
                return Err("smash-compare requires the smash backend".into());
            };
            let mut check = CheckReport::new();
            let subs = galg.group.subgroups(bound).map_err(|e| e.to_string())?;
            for h in &subs {
                let sub_report = compare_with_abstract(galg, h, seed, RETRIES, TRIALS)
                    .map_err(|e| e.to_string())?;
                let elems: Vec<String> = h.elems().iter().map(usize::to_string).collect();
                for mut item in sub_report.items {
                    item.name = format!("smash[H={{{}}}] {}", elems.join(","), item.name);
                    check.items.push(item);
                }
            }
            check
        }
    };
    let passed = check.all_passed();
    let report = Report::from_check(command.name(), seed, scope_name(scope), &check);
    Ok(RunOutput {
        report,
        passed,
        tables: None,
    })
}
