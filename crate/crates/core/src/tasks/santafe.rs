//! Artificial ant on a toroidal grid: one food-ahead sensor bit, three
//! actions, fixed move budget.

use std::fmt::Write as _;

use super::{Task, TaskOutcome};
use crate::error::{parse_err, FsmError, Result};
use crate::machine::MealyMachine;

pub const WIDTH: usize = 32;
pub const HEIGHT: usize = 32;
pub const DEFAULT_MAX_MOVES: u32 = 200;

/// The canonical Santa Fe trail (89 food cells, start in the top-left corner).
pub const SANTA_FE_TRAIL: &str = include_str!("../../data/santafe.trail");

pub const FORWARD: u32 = 0;
pub const LEFT: u32 = 1;
pub const RIGHT: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    East,
    South,
    West,
    North,
}

impl Heading {
    pub fn left(self) -> Self {
        match self {
            Heading::East => Heading::North,
            Heading::North => Heading::West,
            Heading::West => Heading::South,
            Heading::South => Heading::East,
        }
    }

    pub fn right(self) -> Self {
        match self {
            Heading::East => Heading::South,
            Heading::South => Heading::West,
            Heading::West => Heading::North,
            Heading::North => Heading::East,
        }
    }

    fn delta(self) -> (isize, isize) {
        match self {
            Heading::East => (0, 1),
            Heading::South => (1, 0),
            Heading::West => (0, -1),
            Heading::North => (-1, 0),
        }
    }
}

/// `(row, column)`, row 0 at the top.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailWorld {
    food: Vec<bool>,
    total_food: u32,
    pub start: Cell,
    pub start_heading: Heading,
}

impl TrailWorld {
    pub fn santa_fe() -> Self {
        load_trail(SANTA_FE_TRAIL).expect("bundled trail is valid")
    }

    pub fn total_food(&self) -> u32 {
        self.total_food
    }

    pub fn has_food(&self, (r, c): Cell) -> bool {
        self.food[r * WIDTH + c]
    }

    pub fn food_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.food
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| (i / WIDTH, i % WIDTH))
    }

    fn take_food(&mut self, (r, c): Cell) -> bool {
        std::mem::replace(&mut self.food[r * WIDTH + c], false)
    }

    pub fn remaining_food(&self) -> u32 {
        self.food.iter().filter(|&&f| f).count() as u32
    }
}

/// Parses 32 lines of 32 characters: `#` food, `.` empty, `S` start (facing east).
pub fn load_trail(text: &str) -> Result<TrailWorld> {
    let rows: Vec<&str> = text.lines().map(str::trim_end).filter(|l| !l.is_empty()).collect();
    if rows.len() != HEIGHT {
        return Err(parse_err(rows.len(), format!("trail needs {HEIGHT} rows, found {}", rows.len())));
    }
    let mut food = vec![false; WIDTH * HEIGHT];
    let mut start = None;
    for (r, row) in rows.iter().enumerate() {
        if row.chars().count() != WIDTH {
            return Err(parse_err(r + 1, format!("row has {} cells, expected {WIDTH}", row.chars().count())));
        }
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '#' => food[r * WIDTH + c] = true,
                '.' => {}
                'S' => {
                    if start.replace((r, c)).is_some() {
                        return Err(parse_err(r + 1, "more than one start cell"));
                    }
                }
                other => return Err(parse_err(r + 1, format!("unknown cell character {other:?}"))),
            }
        }
    }
    let start = start.ok_or_else(|| parse_err(0, "no start cell `S`"))?;
    let total_food = food.iter().filter(|&&f| f).count() as u32;
    Ok(TrailWorld {
        food,
        total_food,
        start,
        start_heading: Heading::East,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntState {
    pub position: Cell,
    pub heading: Heading,
    pub food_eaten: u32,
    pub moves_used: u32,
}

impl AntState {
    pub fn at_start(world: &TrailWorld) -> Self {
        Self {
            position: world.start,
            heading: world.start_heading,
            food_eaten: 0,
            moves_used: 0,
        }
    }

    pub fn ahead(&self) -> Cell {
        let (dr, dc) = self.heading.delta();
        let (r, c) = self.position;
        (
            (r as isize + dr).rem_euclid(HEIGHT as isize) as usize,
            (c as isize + dc).rem_euclid(WIDTH as isize) as usize,
        )
    }
}

/// 1 iff the cell directly ahead (with wrap) still holds food.
pub fn sense(world: &TrailWorld, ant: &AntState) -> u32 {
    u32::from(world.has_food(ant.ahead()))
}

pub fn apply_action(world: &mut TrailWorld, ant: &mut AntState, action: u32) -> Result<()> {
    match action {
        FORWARD => {
            ant.position = ant.ahead();
            if world.take_food(ant.position) {
                ant.food_eaten += 1;
            }
        }
        LEFT => ant.heading = ant.heading.left(),
        RIGHT => ant.heading = ant.heading.right(),
        other => return Err(FsmError::OutOfRange(format!("ant action {other}"))),
    }
    ant.moves_used += 1;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntResult {
    pub food_eaten: u32,
    /// Move count when the last food was eaten, otherwise the budget.
    pub moves_to_finish: u32,
    pub trace: Option<Vec<AntTraceRow>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntTraceRow {
    pub move_index: u32,
    pub state: u32,
    pub input: u32,
    pub action: u32,
    pub food_eaten: u32,
}

impl AntResult {
    /// `move_index state input action food_eaten`, one line per move.
    pub fn trace_text(&self) -> String {
        let mut s = String::new();
        for t in self.trace.iter().flatten() {
            writeln!(s, "{} {} {} {} {}", t.move_index, t.state, t.input, t.action, t.food_eaten).unwrap();
        }
        s
    }
}

fn check_ant_machine(machine: &MealyMachine) -> Result<()> {
    let e = machine.spec();
    if e.input_bits != 1 || e.action_count != 3 {
        return Err(FsmError::ShapeMismatch(format!(
            "ant controller needs 1 input bit and 3 actions, got x={} A={}",
            e.input_bits, e.action_count
        )));
    }
    Ok(())
}

pub fn simulate_ant(machine: &MealyMachine, world: &TrailWorld, max_moves: u32) -> Result<AntResult> {
    run_ant(machine, world, max_moves, false)
}

pub fn simulate_ant_traced(machine: &MealyMachine, world: &TrailWorld, max_moves: u32) -> Result<AntResult> {
    run_ant(machine, world, max_moves, true)
}

fn run_ant(machine: &MealyMachine, template: &TrailWorld, max_moves: u32, traced: bool) -> Result<AntResult> {
    check_ant_machine(machine)?;
    let mut world = template.clone();
    let mut ant = AntState::at_start(&world);
    let mut state = 0;
    let mut trace = traced.then(Vec::new);
    let total = world.total_food;
    while ant.food_eaten < total && ant.moves_used < max_moves {
        let input = sense(&world, &ant);
        let (next, action) = machine.lookup(state, input);
        apply_action(&mut world, &mut ant, action)?;
        if let Some(t) = trace.as_mut() {
            t.push(AntTraceRow {
                move_index: ant.moves_used - 1,
                state,
                input,
                action,
                food_eaten: ant.food_eaten,
            });
        }
        state = next;
    }
    Ok(AntResult {
        food_eaten: ant.food_eaten,
        moves_to_finish: if ant.food_eaten == total { ant.moves_used } else { max_moves },
        trace,
    })
}

/// The artificial-ant task: `a2` is moves to finish, deficit is uneaten food.
#[derive(Debug, Clone)]
pub struct SantaFeTask {
    pub world: TrailWorld,
    pub max_moves: u32,
}

impl Default for SantaFeTask {
    fn default() -> Self {
        Self {
            world: TrailWorld::santa_fe(),
            max_moves: DEFAULT_MAX_MOVES,
        }
    }
}

impl Task for SantaFeTask {
    fn name(&self) -> &'static str {
        "santafe"
    }

    fn input_bits(&self) -> u32 {
        1
    }

    fn output_bits(&self) -> u32 {
        2
    }

    fn action_count(&self) -> u32 {
        3
    }

    fn run(&self, machine: &MealyMachine) -> Result<TaskOutcome> {
        self.check_shape(machine)?;
        let r = simulate_ant(machine, &self.world, self.max_moves)?;
        let total = self.world.total_food();
        Ok(TaskOutcome {
            solved: r.food_eaten == total,
            iterations: r.moves_to_finish,
            deficit: total - r.food_eaten,
            score: r.food_eaten,
            final_distance: 0.0,
        })
    }
}
