use std::path::Path;

use anyhow::{bail, Context, Result};
use fsmga::evolve::GaConfig;
use fsmga::tasks::helicopter::{Course, HeliParams, HeliTask};
use fsmga::tasks::santafe::{load_trail, SantaFeTask, DEFAULT_MAX_MOVES};
use fsmga::tasks::Task;
use fsmga::EncodingSpec;
use serde::{Deserialize, Serialize};

use crate::args::TaskName;

pub const TOOL_VERSION: &str = concat!("fsmga ", env!("CARGO_PKG_VERSION"));

pub const MACHINE_FILE: &str = "best.fsm";
pub const STATS_FILE: &str = "stats.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const COURSE_FILE: &str = "course.txt";

/// Task environment embedded in full, so a replay does not depend on the
/// files the original run read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TaskData {
    Santafe { trail: String, max_moves: u32 },
    Heli { course: Course, params: HeliParams },
}

impl TaskData {
    pub fn name(&self) -> TaskName {
        match self {
            TaskData::Santafe { .. } => TaskName::Santafe,
            TaskData::Heli { .. } => TaskName::Heli,
        }
    }

    pub fn santafe(trail: String) -> Self {
        TaskData::Santafe { trail, max_moves: DEFAULT_MAX_MOVES }
    }

    pub fn build(&self) -> Result<Box<dyn Task>> {
        Ok(match self {
            TaskData::Santafe { trail, max_moves } => Box::new(SantaFeTask {
                world: load_trail(trail)?,
                max_moves: *max_moves,
            }),
            TaskData::Heli { course, params } => Box::new(HeliTask::new(course.clone(), *params)?),
        })
    }
}

/// Output file names, relative to the run directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    pub machine: String,
    pub stats: String,
    pub manifest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub course: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub task: TaskName,
    pub states: u32,
    pub spec: EncodingSpec,
    pub ga: GaConfig,
    pub task_data: TaskData,
    pub outputs: Outputs,
}

impl RunManifest {
    pub fn new(states: u32, spec: EncodingSpec, ga: GaConfig, task_data: TaskData) -> Self {
        let course = matches!(task_data, TaskData::Heli { .. }).then(|| COURSE_FILE.to_string());
        Self {
            tool_version: TOOL_VERSION.to_string(),
            task: task_data.name(),
            states,
            spec,
            ga,
            task_data,
            outputs: Outputs {
                machine: MACHINE_FILE.into(),
                stats: STATS_FILE.into(),
                manifest: MANIFEST_FILE.into(),
                course,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        let m: Self = serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))?;
        m.check()?;
        Ok(m)
    }

    /// Rejects manifests whose recorded pieces disagree with each other.
    pub fn check(&self) -> Result<()> {
        if self.task != self.task_data.name() {
            bail!("manifest task does not match its task data");
        }
        self.ga.validate()?;
        let task = self.task_data.build()?;
        if task.encoding(self.states)? != self.spec {
            bail!("manifest encoding does not match {} states on this task", self.states);
        }
        Ok(())
    }
}
