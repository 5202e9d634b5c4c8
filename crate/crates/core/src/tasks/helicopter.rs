//! Planar helicopter autopilot: the controller sees only which sight sector
//! the next marker lies in and may rotate or change speed each step. The
//! helicopter keeps flying during every step.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Task, TaskOutcome};
use crate::error::{parse_err, FsmError, Result};
use crate::machine::MealyMachine;
use crate::rng::{RandomSource, SeededRng};

pub const ROTATE_LEFT: u32 = 0;
pub const ROTATE_RIGHT: u32 = 1;
pub const ACCELERATE: u32 = 2;
pub const DECELERATE: u32 = 3;

pub const DEFAULT_MARKERS: usize = 20;
pub const DEFAULT_BOUNDS: (f64, f64) = (400.0, 400.0);
pub const DEFAULT_COURSE_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeliParams {
    pub sectors: u32,
    /// Radians per rotate action.
    pub turn_angle: f64,
    pub velocity_step: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub capture_radius: f64,
    pub time_limit: u32,
}

impl Default for HeliParams {
    fn default() -> Self {
        Self {
            sectors: 4,
            turn_angle: TAU / 16.0,
            velocity_step: 0.5,
            v_min: 0.0,
            v_max: 5.0,
            capture_radius: 5.0,
            time_limit: 1000,
        }
    }
}

impl HeliParams {
    pub fn with_sectors(sectors: u32) -> Self {
        Self {
            sectors,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.sectors >= 2
            && self.turn_angle > 0.0
            && self.velocity_step >= 0.0
            && self.v_min <= self.v_max
            && self.capture_radius > 0.0;
        if ok {
            Ok(())
        } else {
            Err(FsmError::InvalidConfig(format!("invalid helicopter parameters {self:?}")))
        }
    }

    /// Input bits needed to carry a sector number, `ceil(log2 K)`.
    pub fn input_bits(&self) -> u32 {
        crate::encoding::trigger_count(self.sectors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeliState {
    pub x: f64,
    pub y: f64,
    /// Radians in `[0, 2pi)`, counter-clockwise from the +x axis.
    pub heading: f64,
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Course {
    pub markers: Vec<(f64, f64)>,
    pub start: HeliState,
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Places `n` markers uniformly in `[0, w] x [0, h]`, at least `4r` apart,
/// with the helicopter starting at the centre, heading 0, speed `v_min`.
pub fn generate_course(seed: u64, n: usize, bounds: (f64, f64), params: &HeliParams) -> Result<Course> {
    const MAX_ATTEMPTS: usize = 10_000;
    if n == 0 {
        return Err(FsmError::CourseGeneration("a course needs at least one marker".into()));
    }
    let min_sep = 4.0 * params.capture_radius;
    let mut rng = SeededRng::new(seed);
    let mut markers: Vec<(f64, f64)> = Vec::with_capacity(n);
    while markers.len() < n {
        let placed = (0..MAX_ATTEMPTS).find_map(|_| {
            let p = (rng.unit() * bounds.0, rng.unit() * bounds.1);
            markers.iter().all(|&m| dist(m, p) >= min_sep).then_some(p)
        });
        match placed {
            Some(p) => markers.push(p),
            None => {
                return Err(FsmError::CourseGeneration(format!(
                    "could not place marker {} of {n} with separation {min_sep} inside {bounds:?}",
                    markers.len() + 1
                )))
            }
        }
    }
    Ok(Course {
        markers,
        start: HeliState {
            x: bounds.0 / 2.0,
            y: bounds.1 / 2.0,
            heading: 0.0,
            speed: params.v_min,
        },
    })
}

impl Course {
    /// `course N`, `start x y heading speed`, then `marker x y` lines.
    pub fn to_text(&self) -> String {
        let s = &self.start;
        let mut out = format!("course {}\nstart {} {} {} {}\n", self.markers.len(), s.x, s.y, s.heading, s.speed);
        for (x, y) in &self.markers {
            writeln!(out, "marker {x} {y}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (ln, line) = lines.next().ok_or_else(|| parse_err(1, "empty course file"))?;
        let n: usize = match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["course", n] => n.parse().map_err(|_| parse_err(ln, "bad marker count"))?,
            _ => return Err(parse_err(ln, "expected `course N`")),
        };
        if n == 0 {
            return Err(parse_err(ln, "a course needs at least one marker"));
        }
        let (ln, line) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing start line"))?;
        let v = numbers(line, "start", 4, ln)?;
        let start = HeliState {
            x: v[0],
            y: v[1],
            heading: v[2].rem_euclid(TAU),
            speed: v[3],
        };
        let mut markers = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = lines.next().ok_or_else(|| parse_err(0, "fewer markers than declared"))?;
            let v = numbers(line, "marker", 2, ln)?;
            markers.push((v[0], v[1]));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "more markers than declared"));
        }
        Ok(Self { markers, start })
    }
}

fn numbers(line: &str, keyword: &str, count: usize, ln: usize) -> Result<Vec<f64>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(parse_err(ln, format!("expected `{keyword}` line")));
    }
    let v: Vec<f64> = parts
        .map(|p| p.parse::<f64>().map_err(|_| parse_err(ln, format!("`{p}` is not a number"))))
        .collect::<Result<_>>()?;
    if v.len() != count || v.iter().any(|x| !x.is_finite()) {
        return Err(parse_err(ln, format!("`{keyword}` takes {count} finite numbers")));
    }
    Ok(v)
}

/// Sight sector of `target` relative to the helicopter's heading. Sector 0 is
/// centred on the heading; indices grow counter-clockwise.
pub fn sector_index(heli: &HeliState, target: (f64, f64), sectors: u32) -> u32 {
    let (dx, dy) = (target.0 - heli.x, target.1 - heli.y);
    if dx == 0.0 && dy == 0.0 {
        return 0;
    }
    bearing_sector((dy.atan2(dx) - heli.heading).rem_euclid(TAU), sectors)
}

/// Sector of a relative bearing `beta` (radians, any range).
pub fn bearing_sector(beta: f64, sectors: u32) -> u32 {
    let width = TAU / f64::from(sectors);
    let shifted = (beta.rem_euclid(TAU) + width / 2.0).rem_euclid(TAU);
    ((shifted / width).floor() as u32).min(sectors - 1)
}

pub fn step_physics(heli: &HeliState, action: u32, params: &HeliParams) -> HeliState {
    let mut h = *heli;
    match action {
        ROTATE_LEFT => h.heading = (h.heading + params.turn_angle).rem_euclid(TAU),
        ROTATE_RIGHT => h.heading = (h.heading - params.turn_angle).rem_euclid(TAU),
        ACCELERATE => h.speed = (h.speed + params.velocity_step).clamp(params.v_min, params.v_max),
        DECELERATE => h.speed = (h.speed - params.velocity_step).clamp(params.v_min, params.v_max),
        _ => {}
    }
    h.x += h.speed * h.heading.cos();
    h.y += h.speed * h.heading.sin();
    h
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeliResult {
    pub markers_visited: u32,
    pub steps_used: u32,
    /// Distance to the next unvisited marker at the end, 0 when all were visited.
    pub final_distance: f64,
    pub trace: Option<Vec<HeliTraceRow>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeliTraceRow {
    pub step: u32,
    pub state: u32,
    pub input: u32,
    pub action: u32,
    pub heli: HeliState,
    pub markers: u32,
}

impl HeliResult {
    /// `step state input action x y heading speed markers`, one line per step.
    pub fn trace_text(&self) -> String {
        let mut s = String::new();
        for t in self.trace.iter().flatten() {
            let h = &t.heli;
            writeln!(
                s,
                "{} {} {} {} {} {} {} {} {}",
                t.step, t.state, t.input, t.action, h.x, h.y, h.heading, h.speed, t.markers
            )
            .unwrap();
        }
        s
    }
}

/// Ranks two flights on the same course: more markers wins, then the
/// smaller distance to the next marker. `Greater` means `r1` is better.
pub fn compare_autopilots(r1: &HeliResult, r2: &HeliResult) -> Ordering {
    r1.markers_visited
        .cmp(&r2.markers_visited)
        .then_with(|| r2.final_distance.total_cmp(&r1.final_distance))
}

fn check_heli_machine(machine: &MealyMachine, params: &HeliParams) -> Result<()> {
    let e = machine.spec();
    if e.input_bits != params.input_bits() || e.action_count != 4 {
        return Err(FsmError::ShapeMismatch(format!(
            "autopilot for {} sectors needs {} input bits and 4 actions, got x={} A={}",
            params.sectors,
            params.input_bits(),
            e.input_bits,
            e.action_count
        )));
    }
    Ok(())
}

pub fn simulate_heli(machine: &MealyMachine, course: &Course, params: &HeliParams) -> Result<HeliResult> {
    run_heli(machine, course, params, false)
}

pub fn simulate_heli_traced(machine: &MealyMachine, course: &Course, params: &HeliParams) -> Result<HeliResult> {
    run_heli(machine, course, params, true)
}

fn run_heli(machine: &MealyMachine, course: &Course, params: &HeliParams, traced: bool) -> Result<HeliResult> {
    check_heli_machine(machine, params)?;
    let n = course.markers.len();
    let mut heli = course.start;
    let mut state = 0;
    let mut visited = 0usize;
    let mut steps = 0u32;
    let mut trace = traced.then(Vec::new);
    loop {
        while visited < n && dist((heli.x, heli.y), course.markers[visited]) <= params.capture_radius {
            visited += 1;
        }
        if visited == n || steps == params.time_limit {
            break;
        }
        let input = sector_index(&heli, course.markers[visited], params.sectors);
        let (next, action) = machine.lookup(state, input);
        heli = step_physics(&heli, action, params);
        if let Some(t) = trace.as_mut() {
            t.push(HeliTraceRow {
                step: steps,
                state,
                input,
                action,
                heli,
                markers: visited as u32,
            });
        }
        state = next;
        steps += 1;
    }
    let final_distance = course
        .markers
        .get(visited)
        .map_or(0.0, |&m| dist((heli.x, heli.y), m));
    Ok(HeliResult {
        markers_visited: visited as u32,
        steps_used: steps,
        final_distance,
        trace,
    })
}

/// The autopilot task: `a2` is steps used, deficit is unvisited markers.
#[derive(Debug, Clone)]
pub struct HeliTask {
    pub course: Course,
    pub params: HeliParams,
}

impl HeliTask {
    pub fn new(course: Course, params: HeliParams) -> Result<Self> {
        params.validate()?;
        if course.markers.is_empty() {
            return Err(FsmError::InvalidConfig("course has no markers".into()));
        }
        Ok(Self { course, params })
    }

    /// Default parameters for `sectors` on the default 20-marker course.
    pub fn default_for(sectors: u32) -> Result<Self> {
        let params = HeliParams::with_sectors(sectors);
        let course = generate_course(DEFAULT_COURSE_SEED, DEFAULT_MARKERS, DEFAULT_BOUNDS, &params)?;
        Self::new(course, params)
    }
}

impl Task for HeliTask {
    fn name(&self) -> &'static str {
        "heli"
    }

    fn input_bits(&self) -> u32 {
        self.params.input_bits()
    }

    fn output_bits(&self) -> u32 {
        2
    }

    fn action_count(&self) -> u32 {
        4
    }

    fn run(&self, machine: &MealyMachine) -> Result<TaskOutcome> {
        self.check_shape(machine)?;
        let r = simulate_heli(machine, &self.course, &self.params)?;
        let n = self.course.markers.len() as u32;
        Ok(TaskOutcome {
            solved: r.markers_visited == n,
            iterations: r.steps_used,
            deficit: n - r.markers_visited,
            score: r.markers_visited,
            final_distance: r.final_distance,
        })
    }
}
