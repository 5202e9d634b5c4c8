use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fsmga::evolve::{CrossoverKind, GaConfig, Weights};

#[derive(Debug, Parser)]
#[command(name = "fsmga", version, about = "Genetic synthesis of hardware-ready Mealy machines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a machine for a task and write it with its statistics and manifest.
    Synthesize(SynthesizeArgs),
    /// Replay a machine file on a task.
    Simulate(SimulateArgs),
    /// Write truth-table, memory-init and Verilog renderings of a machine.
    Export(ExportArgs),
    /// Repeat seeded syntheses and print a worst/average/best table.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskName {
    Santafe,
    Heli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Xover {
    #[value(name = "1pt")]
    OnePoint,
    #[value(name = "2pt")]
    TwoPoint,
}

/// Task and GA settings shared by `synthesize` and `bench`. Every field is
/// optional so a `--config` file can fill the gaps.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub task: Option<TaskName>,
    #[arg(long)]
    pub states: Option<u32>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub pc: Option<f64>,
    #[arg(long)]
    pub pm: Option<f64>,
    #[arg(long)]
    pub gens: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub w1: Option<f64>,
    #[arg(long)]
    pub w2: Option<f64>,
    #[arg(long)]
    pub penalty: Option<f64>,
    #[arg(long, value_enum)]
    pub xover: Option<Xover>,
    #[arg(long)]
    pub sectors: Option<u32>,
    #[arg(long)]
    pub markers: Option<usize>,
    #[arg(long = "course-seed")]
    pub course_seed: Option<u64>,
    #[arg(long)]
    pub trail: Option<PathBuf>,
    #[arg(long)]
    pub course: Option<PathBuf>,
    /// Stop once a solved machine has at most this many reachable states.
    #[arg(long)]
    pub target: Option<u32>,
    #[arg(long = "max-evals")]
    pub max_evals: Option<u64>,
    /// Plain `key = value` file mirroring these flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthesizeArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Replay the run described by a manifest written by a previous run.
    #[arg(long, conflicts_with = "config")]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub task: TaskName,
    #[arg(long)]
    pub machine: PathBuf,
    #[arg(long)]
    pub trail: Option<PathBuf>,
    #[arg(long)]
    pub course: Option<PathBuf>,
    #[arg(long)]
    pub sectors: Option<u32>,
    #[arg(long)]
    pub markers: Option<usize>,
    #[arg(long = "course-seed")]
    pub course_seed: Option<u64>,
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub machine: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// HDL module name and output file stem; defaults to the machine file stem.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = 10)]
    pub runs: u64,
    /// Run repetitions one after another instead of in parallel.
    #[arg(long)]
    pub sequential: bool,
}

/// Fully resolved run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub task: TaskName,
    pub states: u32,
    pub ga: GaConfig,
    pub sectors: u32,
    pub markers: usize,
    pub course_seed: u64,
    pub trail: Option<PathBuf>,
    pub course: Option<PathBuf>,
}

pub const DEFAULT_STATES: u32 = 8;

fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("{}:{}: expected `key = value`", path.display(), i + 1);
        };
        let key = k.trim().trim_start_matches("--").to_string();
        if !CONFIG_KEYS.contains(&key.as_str()) {
            bail!("{}:{}: unknown key `{key}`", path.display(), i + 1);
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

const CONFIG_KEYS: &[&str] = &[
    "task", "states", "pop", "pc", "pm", "gens", "seed", "w1", "w2", "penalty", "xover", "sectors",
    "markers", "course-seed", "trail", "course", "target", "max-evals",
];

fn pick<T: std::str::FromStr>(flag: Option<T>, cfg: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    if flag.is_some() {
        return Ok(flag);
    }
    cfg.get(key)
        .map(|v| v.parse::<T>().map_err(|_| anyhow::anyhow!("config: invalid value `{v}` for `{key}`")))
        .transpose()
}

impl RunArgs {
    pub fn resolve(&self) -> Result<RunSettings> {
        let cfg = match &self.config {
            Some(p) => read_config(p)?,
            None => BTreeMap::new(),
        };
        let task = match self.task {
            Some(t) => t,
            None => match cfg.get("task").map(String::as_str) {
                Some(v) => TaskName::from_str(v, false).map_err(|_| anyhow::anyhow!("config: unknown task `{v}`"))?,
                None => bail!("--task is required (santafe or heli)"),
            },
        };
        let xover = match self.xover {
            Some(Xover::OnePoint) => CrossoverKind::OnePoint,
            Some(Xover::TwoPoint) => CrossoverKind::TwoPoint,
            None => match cfg.get("xover") {
                Some(v) => v.parse()?,
                None => CrossoverKind::TwoPoint,
            },
        };
        let d = GaConfig::default();
        let w = Weights::default();
        let ga = GaConfig {
            population_size: pick(self.pop, &cfg, "pop")?.unwrap_or(d.population_size),
            max_generations: pick(self.gens, &cfg, "gens")?.unwrap_or(d.max_generations),
            crossover_probability: pick(self.pc, &cfg, "pc")?.unwrap_or(d.crossover_probability),
            mutation_probability: pick(self.pm, &cfg, "pm")?.unwrap_or(d.mutation_probability),
            crossover_kind: xover,
            weights: Weights {
                w1: pick(self.w1, &cfg, "w1")?.unwrap_or(w.w1),
                w2: pick(self.w2, &cfg, "w2")?.unwrap_or(w.w2),
            },
            infeasibility_penalty: pick(self.penalty, &cfg, "penalty")?.unwrap_or(d.infeasibility_penalty),
            distance_weight: d.distance_weight,
            seed: pick(self.seed, &cfg, "seed")?.unwrap_or(d.seed),
            target: pick(self.target, &cfg, "target")?,
            max_evaluations: pick(self.max_evals, &cfg, "max-evals")?,
        };
        ga.validate()?;
        let states = pick(self.states, &cfg, "states")?.unwrap_or(DEFAULT_STATES);
        if states == 0 {
            bail!("--states must be at least 1");
        }
        let sectors = pick(self.sectors, &cfg, "sectors")?.unwrap_or(4);
        if sectors < 2 {
            bail!("--sectors must be at least 2");
        }
        let markers = pick(self.markers, &cfg, "markers")?.unwrap_or(fsmga::tasks::helicopter::DEFAULT_MARKERS);
        if markers == 0 {
            bail!("--markers must be at least 1");
        }
        Ok(RunSettings {
            task,
            states,
            ga,
            sectors,
            markers,
            course_seed: pick(self.course_seed, &cfg, "course-seed")?
                .unwrap_or(fsmga::tasks::helicopter::DEFAULT_COURSE_SEED),
            trail: pick(self.trail.clone(), &cfg, "trail")?,
            course: pick(self.course.clone(), &cfg, "course")?,
        })
    }
}
