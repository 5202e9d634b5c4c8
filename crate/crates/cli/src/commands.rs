use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use fsmga::evolve::{run_with, SynthesisResult};
use fsmga::export::ExportBundle;
use fsmga::par::{map_range, Parallelism};
use fsmga::rng::{derive_seed, SeededRng};
use fsmga::tasks::helicopter::{generate_course, simulate_heli_traced, Course, HeliParams, DEFAULT_BOUNDS};
use fsmga::tasks::santafe::{load_trail, simulate_ant_traced, DEFAULT_MAX_MOVES, SANTA_FE_TRAIL};
use fsmga::MealyMachine;

use crate::args::{BenchArgs, ExportArgs, RunSettings, SimulateArgs, SynthesizeArgs, TaskName};
use crate::manifest::{RunManifest, TaskData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn load_machine(path: &Path) -> Result<MealyMachine> {
    MealyMachine::from_fsm_text(&read(path)?).with_context(|| format!("parsing machine {}", path.display()))
}

fn santafe_data(trail: Option<&Path>) -> Result<TaskData> {
    let text = match trail {
        Some(p) => read(p)?,
        None => SANTA_FE_TRAIL.to_string(),
    };
    load_trail(&text)?;
    Ok(TaskData::santafe(text))
}

fn heli_data(sectors: u32, course: Option<&Path>, markers: usize, course_seed: u64) -> Result<TaskData> {
    let params = HeliParams::with_sectors(sectors);
    params.validate()?;
    let course = match course {
        Some(p) => Course::from_text(&read(p)?).with_context(|| format!("parsing course {}", p.display()))?,
        None => generate_course(course_seed, markers, DEFAULT_BOUNDS, &params)?,
    };
    Ok(TaskData::Heli { course, params })
}

fn task_data(s: &RunSettings) -> Result<TaskData> {
    match s.task {
        TaskName::Santafe => santafe_data(s.trail.as_deref()),
        TaskName::Heli => heli_data(s.sectors, s.course.as_deref(), s.markers, s.course_seed),
    }
}

fn manifest_for(s: &RunSettings) -> Result<RunManifest> {
    let data = task_data(s)?;
    let spec = data.build()?.encoding(s.states)?;
    Ok(RunManifest::new(s.states, spec, s.ga.clone(), data))
}

fn synthesize_from(m: &RunManifest, mode: Parallelism) -> Result<SynthesisResult> {
    let task = m.task_data.build()?;
    let mut rng = SeededRng::new(m.ga.seed);
    Ok(run_with(&m.spec, task.as_ref(), &m.ga, &mut rng, mode)?)
}

pub fn synthesize(args: &SynthesizeArgs) -> Result<i32> {
    let manifest = match &args.manifest {
        Some(path) => RunManifest::load(path)?,
        None => manifest_for(&args.run.resolve()?)?,
    };
    let result = synthesize_from(&manifest, Parallelism::Sequential)?;

    let out = &args.out;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let o = &manifest.outputs;
    write(out, &o.machine, &result.best_machine.to_fsm_text())?;
    write(out, &o.stats, &result.stats_csv())?;
    if let (TaskData::Heli { course, .. }, Some(name)) = (&manifest.task_data, &o.course) {
        write(out, name, &course.to_text())?;
    }
    write(out, &o.manifest, &manifest.to_json())?;

    let b = &result.best_fitness;
    println!("task {} states {} seed {}", task_label(&manifest.task_data), manifest.states, manifest.ga.seed);
    println!(
        "generations {} evaluations {} stop {:?}",
        result.generations_run, result.evaluations, result.stop_reason
    );
    println!(
        "best F {} feasible {} score {} reachable_states {} moves {}",
        b.f, b.feasible, b.score, b.a1, b.a2
    );
    println!("wrote {}", out.display());
    Ok(if b.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn task_label(d: &TaskData) -> String {
    match d {
        TaskData::Santafe { .. } => "santafe".into(),
        TaskData::Heli { params, .. } => format!("heli sectors {}", params.sectors),
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<i32> {
    let machine = load_machine(&args.machine)?;
    let reachable = machine.reachable_states();
    let trace = match args.task {
        TaskName::Santafe => {
            if args.course.is_some() {
                bail!("--course applies to the heli task");
            }
            let world = load_trail(&match &args.trail {
                Some(p) => read(p)?,
                None => SANTA_FE_TRAIL.to_string(),
            })?;
            let r = simulate_ant_traced(&machine, &world, DEFAULT_MAX_MOVES)?;
            println!("food_eaten {}/{}", r.food_eaten, world.total_food());
            println!("moves {}", r.moves_to_finish);
            println!("reachable_states {reachable}");
            r.trace_text()
        }
        TaskName::Heli => {
            if args.trail.is_some() {
                bail!("--trail applies to the santafe task");
            }
            let sectors = args.sectors.unwrap_or(4);
            let data = heli_data(
                sectors,
                args.course.as_deref(),
                args.markers.unwrap_or(fsmga::tasks::helicopter::DEFAULT_MARKERS),
                args.course_seed.unwrap_or(fsmga::tasks::helicopter::DEFAULT_COURSE_SEED),
            )?;
            let TaskData::Heli { course, params } = data else { unreachable!() };
            let r = simulate_heli_traced(&machine, &course, &params)?;
            println!("markers_visited {}/{}", r.markers_visited, course.markers.len());
            println!("steps {}", r.steps_used);
            println!("final_distance {}", r.final_distance);
            println!("reachable_states {reachable}");
            r.trace_text()
        }
    };
    if let Some(path) = &args.trace {
        fs::write(path, trace).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(EXIT_OK)
}

/// Turns a file stem into a legal HDL identifier.
fn module_name_from(path: &Path) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("fsm");
    let mut name: String = stem
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    if !name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
        name.insert_str(0, "fsm_");
    }
    name
}

pub fn export(args: &ExportArgs) -> Result<i32> {
    let machine = load_machine(&args.machine)?;
    let name = args.name.clone().unwrap_or_else(|| module_name_from(&args.machine));
    let bundle = ExportBundle::for_machine(&machine, &name)?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    for (ext, text) in [("tt", &bundle.truth_table_text), ("mif", &bundle.mif_text), ("v", &bundle.hdl_text)] {
        let path = write(&args.out, &format!("{name}.{ext}"), text)?;
        println!("wrote {}", path.display());
    }
    Ok(EXIT_OK)
}

/// One repetition's best machine, as reported by `bench`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub run: u64,
    pub seed: u64,
    pub score: u32,
    pub feasible: bool,
    pub states: u32,
    pub moves: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub worst: u32,
    pub average: f64,
    pub best: u32,
}

pub fn summarize(rows: &[BenchRow]) -> Option<Summary> {
    let worst = rows.iter().map(|r| r.score).min()?;
    let best = rows.iter().map(|r| r.score).max()?;
    let average = rows.iter().map(|r| f64::from(r.score)).sum::<f64>() / rows.len() as f64;
    Some(Summary { worst, average, best })
}

pub fn bench(args: &BenchArgs) -> Result<i32> {
    if args.runs == 0 {
        bail!("--runs must be at least 1");
    }
    let settings = args.run.resolve()?;
    let base = manifest_for(&settings)?;
    let mode = if args.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    let results = map_range(args.runs as usize, mode, |i| {
        let mut m = base.clone();
        m.ga.seed = derive_seed(settings.ga.seed, i as u64);
        synthesize_from(&m, Parallelism::Sequential).map(|r| BenchRow {
            run: i as u64,
            seed: m.ga.seed,
            score: r.best_fitness.score,
            feasible: r.best_fitness.feasible,
            states: r.best_fitness.a1,
            moves: r.best_fitness.a2,
        })
    });
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;

    let unit = match settings.task {
        TaskName::Santafe => "food",
        TaskName::Heli => "markers",
    };
    println!(
        "# bench {} states {} runs {} base_seed {}",
        task_label(&base.task_data),
        settings.states,
        args.runs,
        settings.ga.seed
    );
    println!("{:>4} {:>20} {:>7} {:>8} {:>6} {:>6}", "run", "seed", unit, "feasible", "states", "moves");
    for r in &rows {
        println!(
            "{:>4} {:>20} {:>7} {:>8} {:>6} {:>6}",
            r.run,
            r.seed,
            r.score,
            if r.feasible { "yes" } else { "no" },
            r.states,
            r.moves
        );
    }
    let s = summarize(&rows).expect("at least one run");
    println!();
    println!("{:>8} {:>6} {:>8} {:>6}", "", "worst", "average", "best");
    println!("{:>8} {:>6} {:>8.2} {:>6}", unit, s.worst, s.average, s.best);
    Ok(EXIT_OK)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn row(score: u32) -> BenchRow {
        BenchRow { run: 0, seed: 0, score, feasible: false, states: 1, moves: 0 }
    }

    #[test]
    fn summary_is_worst_mean_best() {
        let s = summarize(&[row(11), row(20), row(17), row(20)]).unwrap();
        assert_eq!((s.worst, s.best), (11, 20));
        assert!((s.average - 17.0).abs() < 1e-12);
        assert!(summarize(&[]).is_none());
    }

    #[test]
    fn module_names_are_sanitized() {
        assert_eq!(module_name_from(Path::new("out/best.fsm")), "best");
        assert_eq!(module_name_from(Path::new("my-ant v2.fsm")), "my_ant_v2");
        assert_eq!(module_name_from(Path::new("7.fsm")), "fsm_7");
    }
}
