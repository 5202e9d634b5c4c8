//! End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
//! process exits non-zero if any check fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use fsmga::evolve::{run_observed, run_with, GaConfig, Individual};
use fsmga::export::{parse_hdl, parse_mif, parse_truth_table, ExportBundle};
use fsmga::genome::Genome;
use fsmga::par::Parallelism;
use fsmga::rng::SeededRng;
use fsmga::tasks::santafe::{SantaFeTask, SANTA_FE_TRAIL};
use fsmga::tasks::Task;
use fsmga::{correct, decode, encode, make_encoding, to_ram_image, MealyMachine, REFERENCE4_FSM};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fsmga")
}

fn fsmga(args: &[&str]) -> std::process::Output {
    Command::new(bin()).args(args).output().expect("spawn fsmga")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fsmga-acceptance-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn encoding_arithmetic() -> Outcome {
    let e = make_encoding(4, 1, 2, 3).map_err(|e| e.to_string())?;
    let got = (e.triggers, e.gene_count, e.genome_bits, e.ram_words(), e.ram_address_bits, e.ram_data_bits);
    ensure(
        got == (2, 8, 32, 8, 3, 4),
        format!(
            "T={} p={} genome_bits={} RAM {} words x {} bits, {} address inputs",
            got.0, got.1, got.2, got.3, got.5, got.4
        ),
    )
}

fn round_trips() -> Outcome {
    const PER_SHAPE: u64 = 1000;
    let shapes = [(4, 1, 2, 3), (2, 1, 2, 3), (8, 1, 2, 3), (8, 2, 2, 4), (5, 3, 1, 2), (12, 2, 3, 5), (1, 1, 1, 1)];
    let mut checked = 0;
    for &(s, x, y, a) in &shapes {
        let spec = make_encoding(s, x, y, a).unwrap();
        for seed in 0..PER_SHAPE {
            let raw = Genome::random(spec, &mut SeededRng::new(seed ^ (u64::from(s) << 40)));
            let g = correct(&raw, &spec).unwrap();
            if correct(&g, &spec).unwrap() != g {
                return Err(format!("correct not idempotent for shape {:?} seed {seed}", (s, x, y, a)));
            }
            let m = decode(&g, &spec).unwrap();
            if encode(&m, &spec).unwrap() != g || decode(&encode(&m, &spec).unwrap(), &spec).unwrap() != m {
                return Err(format!("encode/decode mismatch for shape {:?} seed {seed}", (s, x, y, a)));
            }
            let ram = to_ram_image(&m, &spec).unwrap();
            let b = ExportBundle::for_machine(&m, "dut").unwrap();
            let back = [
                parse_truth_table(&b.truth_table_text),
                parse_mif(&b.mif_text),
                parse_hdl(&b.hdl_text),
            ];
            if back.iter().any(|r| r.as_ref().ok() != Some(&ram)) {
                return Err(format!("export decode-back mismatch for shape {:?} seed {seed}", (s, x, y, a)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} machines over {} shapes ({PER_SHAPE} per shape)", shapes.len()))
}

fn steady_state_invariant() -> Outcome {
    let task = SantaFeTask::default();
    let spec = task.encoding(8).unwrap();
    let config = GaConfig { max_generations: 500, seed: 1, ..GaConfig::default() };
    let mut violation = None;
    let mut best = f64::INFINITY;
    let mut observed = 0u64;
    let mut observe = |g: u64, pop: &[Individual]| {
        observed += 1;
        if violation.is_some() {
            return;
        }
        if pop.len() != config.population_size {
            violation = Some(format!("generation {g}: population size {}", pop.len()));
        } else if !pop.iter().all(|i| i.genome.is_corrected()) {
            violation = Some(format!("generation {g}: uncorrected individual"));
        } else if pop[0].fitness.f > best {
            violation = Some(format!("generation {g}: best F rose from {best} to {}", pop[0].fitness.f));
        }
        best = best.min(pop[0].fitness.f);
    };
    let r = run_observed(&spec, &task, &config, &mut SeededRng::new(1), Parallelism::Sequential, &mut observe)
        .map_err(|e| e.to_string())?;
    if let Some(v) = violation {
        return Err(v);
    }
    ensure(
        r.generations_run == 500 && observed == 501,
        format!(
            "{} generations, pop {} constant, all corrected, best F {} -> {}",
            r.generations_run,
            config.population_size,
            r.stats[0].best_f,
            r.stats.last().unwrap().best_f
        ),
    )
}

/// Stand-alone ant simulator for the exhaustive 2-state search. Shares no
/// code with the library's task.
fn oracle_food(next: [usize; 4], act: [u8; 4], trail: &[Vec<bool>]) -> u32 {
    let mut food: Vec<Vec<bool>> = trail.to_vec();
    let (h, w) = (food.len() as i64, food[0].len() as i64);
    let (mut r, mut c, mut dir) = (0i64, 0i64, 0usize); // east, south, west, north
    const D: [(i64, i64); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];
    let total = trail.iter().flatten().filter(|&&f| f).count() as u32;
    let (mut state, mut eaten) = (0usize, 0u32);
    for _ in 0..200 {
        if eaten == total {
            break;
        }
        let (ar, ac) = ((r + D[dir].0).rem_euclid(h), (c + D[dir].1).rem_euclid(w));
        let input = usize::from(food[ar as usize][ac as usize]);
        let gene = state * 2 + input;
        match act[gene] {
            0 => {
                (r, c) = (ar, ac);
                if std::mem::take(&mut food[r as usize][c as usize]) {
                    eaten += 1;
                }
            }
            1 => dir = (dir + 3) % 4,
            _ => dir = (dir + 1) % 4,
        }
        state = next[gene];
    }
    eaten
}

fn two_state_oracle() -> Outcome {
    let trail: Vec<Vec<bool>> = SANTA_FE_TRAIL
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| l.bytes().map(|b| b == b'#').collect())
        .collect();
    let mut best = 0;
    let mut count_best = 0;
    let mut total = 0;
    for code in 0..1296u32 {
        let mut k = code;
        let mut next = [0usize; 4];
        let mut act = [0u8; 4];
        for g in 0..4 {
            next[g] = (k % 2) as usize;
            act[g] = ((k / 2) % 3) as u8;
            k /= 6;
        }
        total += 1;
        let food = oracle_food(next, act, &trail);
        if food > best {
            best = food;
            count_best = 0;
        }
        if food == best {
            count_best += 1;
        }
    }
    assert_eq!(total, 1296);

    let task = SantaFeTask::default();
    let spec = task.encoding(2).unwrap();
    let mut hits = Vec::new();
    for seed in 0..10u64 {
        let config = GaConfig { population_size: 200, max_generations: 2000, seed, ..GaConfig::default() };
        let r = run_with(&spec, &task, &config, &mut SeededRng::new(seed), Parallelism::Sequential).unwrap();
        hits.push(r.best_fitness.score);
    }
    let reached = hits.iter().filter(|&&s| s == best).count();
    ensure(
        reached >= 8,
        format!(
            "oracle optimum {best} food ({count_best}/{total} machines); GA reached it in {reached}/10 seeds {hits:?}"
        ),
    )
}

fn santafe_reproduction() -> Outcome {
    let task = SantaFeTask::default();
    let spec = task.encoding(8).unwrap();
    let mut rows = Vec::new();
    for seed in 0..10u64 {
        let config = GaConfig {
            population_size: 1200,
            crossover_probability: 0.4,
            mutation_probability: 0.25,
            max_generations: 1_000_000,
            max_evaluations: Some(100_000),
            target: Some(8),
            seed,
            ..GaConfig::default()
        };
        let r = run_with(&spec, &task, &config, &mut SeededRng::new(seed), Parallelism::default()).unwrap();
        assert!(r.evaluations <= 100_000);
        let f = r.best_fitness;
        rows.push((seed, f.score, f.a1, f.a2, f.feasible && f.a1 <= 8 && f.a2 <= 200));
    }
    let solved: Vec<_> = rows.iter().filter(|r| r.4).collect();
    let best = rows.iter().max_by_key(|r| (r.1, std::cmp::Reverse(r.3))).unwrap();
    let food: Vec<u32> = rows.iter().map(|r| r.1).collect();
    ensure(
        !solved.is_empty(),
        format!(
            "{}/10 seeds ate 89 food within 200 moves; food per seed {food:?}; best run seed {} {} food, {} states, {} moves (reference 7 states, 190 moves)",
            solved.len(),
            best.0,
            best.1,
            best.2,
            best.3
        ),
    )
}

/// Runs `fsmga bench` and parses its worst/average/best row.
fn bench_table(sectors: u32) -> (u32, f64, u32, String) {
    let out = fsmga(&["bench", "--task", "heli", "--sectors", &sectors.to_string(), "--runs", "10", "--seed", "0"]);
    assert!(out.status.success(), "bench failed: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.iter().position(|l| l.split_whitespace().eq(["worst", "average", "best"])).expect("table header");
    let cols: Vec<&str> = lines[header + 1].split_whitespace().collect();
    assert_eq!(cols[0], "markers");
    (cols[1].parse().unwrap(), cols[2].parse().unwrap(), cols[3].parse().unwrap(), text)
}

fn helicopter_reproduction() -> Outcome {
    let (w4, a4, b4, _) = bench_table(4);
    let (w6, a6, b6, _) = bench_table(6);
    ensure(
        b4 >= 18 && (b4 == 20 || b6 == 20),
        format!(
            "K=4 worst/avg/best {w4}/{a4:.1}/{b4}; K=6 {w6}/{a6:.1}/{b6} (reference K=4 11/18/20, K=6 12/17/20)"
        ),
    )
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let root = scratch("determinism");
    let mut snapshots = Vec::new();
    for (i, task) in ["santafe", "heli", "santafe", "heli"].iter().enumerate() {
        let run = root.join(format!("run{i}"));
        let exp = root.join(format!("export{i}"));
        let args = ["synthesize", "--task", task, "--states", "6", "--pop", "150", "--gens", "1500", "--seed", "42"];
        let out = fsmga(&[&args[..], &["--out", run.to_str().unwrap()]].concat());
        assert!(matches!(out.status.code(), Some(0 | 2)), "{}", String::from_utf8_lossy(&out.stderr));
        let machine = run.join("best.fsm");
        let out = fsmga(&["export", "--machine", machine.to_str().unwrap(), "--out", exp.to_str().unwrap()]);
        assert!(out.status.success());
        snapshots.push((read_all(&run), read_all(&exp)));
    }
    let replay = root.join("replay");
    let manifest = root.join("run0").join("manifest.json");
    let out = fsmga(&["synthesize", "--manifest", manifest.to_str().unwrap(), "--out", replay.to_str().unwrap()]);
    assert!(matches!(out.status.code(), Some(0 | 2)));
    let replay_same = read_all(&replay) == snapshots[0].0;
    let same = snapshots[0] == snapshots[2] && snapshots[1] == snapshots[3];
    let files = snapshots[0].0.len() + snapshots[0].1.len() + snapshots[1].0.len() + snapshots[1].1.len();
    let _ = std::fs::remove_dir_all(&root);
    ensure(
        same && replay_same,
        format!("two invocations per task, {files} files compared byte-for-byte; manifest replay identical: {replay_same}"),
    )
}

fn golden_exports() -> Outcome {
    let m = MealyMachine::from_fsm_text(REFERENCE4_FSM).map_err(|e| e.to_string())?;
    let b = ExportBundle::for_machine(&m, "reference4").map_err(|e| e.to_string())?;
    let checks = [
        ("truth table", b.truth_table_text == include_str!("../../core/tests/golden/reference4.tt")),
        ("memory init", b.mif_text == include_str!("../../core/tests/golden/reference4.mif")),
        ("verilog", b.hdl_text == include_str!("../../core/tests/golden/reference4.v")),
    ];
    let bad: Vec<_> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    ensure(bad.is_empty(), if bad.is_empty() { "3/3 renderings byte-identical".into() } else { format!("mismatch: {bad:?}") })
}

fn main() {
    let checks: [Check; 8] = [
        ("encoding arithmetic", encoding_arithmetic),
        ("round-trip properties", round_trips),
        ("steady-state invariant", steady_state_invariant),
        ("two-state oracle", two_state_oracle),
        ("santa fe reproduction", santafe_reproduction),
        ("helicopter reproduction", helicopter_reproduction),
        ("determinism", determinism),
        ("golden exports", golden_exports),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let id = format!("{} {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("acceptance {id}: PASS ({secs:.1}s) {d}"),
            Err(d) => {
                failed += 1;
                println!("acceptance {id}: FAIL ({secs:.1}s) {d}");
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} check(s) failed");
        std::process::exit(1);
    }
}
