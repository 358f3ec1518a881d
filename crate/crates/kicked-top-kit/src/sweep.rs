//! Deterministic parallel parameter sweeps.
//!
//! A sweep is a Cartesian grid over the task's axes. Work is split into
//! independent jobs (one per combination of the non-time axes, so a
//! propagator is built once per job), executed on a bounded rayon pool,
//! and reassembled in grid order: output is byte-identical for any worker
//! count.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::export::{Cell, Table};
use crate::spin::SpinParams;
use crate::{cheb, classical, echo, gauss, otoc, Error, Result};

/// What a sweep evaluates at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Otoc,
    EchoAvg,
    EchoState,
    ClassicalLyapunov,
    Portrait,
    Gauss,
}

impl TaskKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "otoc" => Ok(Self::Otoc),
            "echo-avg" | "echo" => Ok(Self::EchoAvg),
            "echo-state" => Ok(Self::EchoState),
            "classical-lyapunov" | "classical" => Ok(Self::ClassicalLyapunov),
            "portrait" => Ok(Self::Portrait),
            "gauss" => Ok(Self::Gauss),
            other => Err(Error::InvalidAxis(format!("unknown task kind `{other}`"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Otoc => "otoc",
            Self::EchoAvg => "echo-avg",
            Self::EchoState => "echo-state",
            Self::ClassicalLyapunov => "classical-lyapunov",
            Self::Portrait => "portrait",
            Self::Gauss => "gauss",
        }
    }
}

/// Cartesian sweep grid. Axes not used by a task are ignored.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub task: TaskKind,
    pub j2: Vec<u32>,
    pub kappa0: Vec<f64>,
    /// Inclusive step range; the time axis for otoc/echo tasks, the
    /// iteration count for the classical tasks and the period-scan bound
    /// for gauss.
    pub steps: (u64, u64),
    pub delta: Vec<f64>,
    pub theta0: Vec<f64>,
    pub phi0: Vec<f64>,
    pub kick_angle: f64,
    pub seed: u64,
    /// Sample count for classical-lyapunov, initial-state count for portrait.
    pub samples: u64,
    pub r: u64,
    pub s: u64,
    pub cap: u64,
}

impl SweepGrid {
    pub fn new(task: TaskKind) -> Self {
        let steps = match task {
            TaskKind::Otoc => (1, 16),
            TaskKind::EchoAvg | TaskKind::EchoState => (0, 32),
            TaskKind::ClassicalLyapunov => (1, 10_000),
            TaskKind::Portrait => (0, 400),
            TaskKind::Gauss => (1, 100),
        };
        Self {
            task,
            j2: vec![4],
            kappa0: vec![2.0 * std::f64::consts::PI],
            steps,
            delta: vec![0.01],
            theta0: vec![0.0],
            phi0: vec![0.0],
            kick_angle: FRAC_PI_2,
            seed: 7,
            samples: match task {
                TaskKind::ClassicalLyapunov => 100,
                _ => 40,
            },
            r: 1,
            s: 2,
            cap: 1_000_000,
        }
    }

    fn step_count(&self) -> u64 {
        self.steps.1.saturating_sub(self.steps.0) + 1
    }

    /// Number of output rows the grid expands to.
    pub fn point_count(&self) -> u64 {
        let (j2, k0) = (self.j2.len() as u64, self.kappa0.len() as u64);
        let ns = self.step_count();
        match self.task {
            TaskKind::Otoc => j2 * k0 * ns,
            TaskKind::EchoAvg => j2 * k0 * self.delta.len() as u64 * ns,
            TaskKind::EchoState => {
                j2 * k0
                    * self.delta.len() as u64
                    * self.theta0.len() as u64
                    * self.phi0.len() as u64
                    * ns
            }
            TaskKind::ClassicalLyapunov => k0,
            TaskKind::Portrait => k0 * self.samples * (self.steps.1 + 1),
            TaskKind::Gauss => j2,
        }
    }

    fn has_closed_form(&self, j2: u32) -> bool {
        (j2 == 3 || j2 == 4) && self.kick_angle == FRAC_PI_2
    }
}

fn columns(task: TaskKind) -> Vec<&'static str> {
    match task {
        TaskKind::Otoc => {
            vec!["j2", "kappa0", "n", "c_inf", "c2", "c4", "c_inf_closed", "diff", "provenance"]
        }
        TaskKind::EchoAvg => {
            vec!["j2", "kappa0", "delta", "n", "fbar", "fbar_closed", "diff", "provenance"]
        }
        TaskKind::EchoState => vec![
            "j2", "kappa0", "delta", "theta0", "phi0", "n", "fidelity", "fidelity_closed",
            "diff", "provenance",
        ],
        TaskKind::ClassicalLyapunov => vec!["kappa0", "iters", "samples", "seed", "lambda"],
        TaskKind::Portrait => vec!["kappa0", "trajectory", "n", "theta", "phi"],
        TaskKind::Gauss => vec![
            "j2", "r", "s", "kappa0", "terms", "nonzero", "reconstruction_error", "period",
        ],
    }
}

// One parallel unit: everything except the innermost (time) axis.
#[derive(Debug, Clone, Copy)]
struct Job {
    j2: u32,
    kappa0: f64,
    delta: f64,
    theta0: f64,
    phi0: f64,
    index: usize,
}

fn jobs(grid: &SweepGrid) -> Vec<Job> {
    let mut out = Vec::new();
    let deltas: &[f64] = match grid.task {
        TaskKind::EchoAvg | TaskKind::EchoState => &grid.delta,
        _ => &[0.0],
    };
    let (thetas, phis): (&[f64], &[f64]) = match grid.task {
        TaskKind::EchoState => (&grid.theta0, &grid.phi0),
        _ => (&[0.0], &[0.0]),
    };
    let j2s: &[u32] = match grid.task {
        TaskKind::ClassicalLyapunov | TaskKind::Portrait => &[1],
        _ => &grid.j2,
    };
    let kappas: &[f64] = match grid.task {
        TaskKind::Gauss => &[0.0],
        _ => &grid.kappa0,
    };
    for &j2 in j2s {
        for &kappa0 in kappas {
            for &delta in deltas {
                for &theta0 in thetas {
                    for &phi0 in phis {
                        out.push(Job { j2, kappa0, delta, theta0, phi0, index: out.len() });
                    }
                }
            }
        }
    }
    out
}

fn otoc_rows(grid: &SweepGrid, job: &Job) -> Result<Vec<Vec<Cell>>> {
    let params = SpinParams::with_kick_angle(job.j2, job.kappa0, grid.kick_angle)?;
    let series = otoc::otoc_infinite(&params, grid.steps.1)?;
    let closed = grid.has_closed_form(job.j2);
    let mut rows = Vec::new();
    for pt in series.values.iter().filter(|pt| pt.n >= grid.steps.0.max(1)) {
        let mut row = vec![
            Cell::Int(job.j2 as i64),
            Cell::Float(job.kappa0),
            Cell::Int(pt.n as i64),
            Cell::Float(pt.c_inf),
            Cell::Float(pt.c2),
            Cell::Float(pt.c4),
        ];
        if closed {
            let exact = match job.j2 {
                3 => cheb::three_qubit_otoc(pt.n, job.kappa0),
                _ => cheb::four_qubit_otoc(pt.n, job.kappa0),
            };
            row.push(Cell::Float(exact));
            row.push(Cell::Float((pt.c_inf - exact).abs()));
            row.push(Cell::text("both"));
        } else {
            row.push(Cell::Empty);
            row.push(Cell::Empty);
            row.push(Cell::text("numeric"));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn echo_avg_rows(grid: &SweepGrid, job: &Job) -> Result<Vec<Vec<Cell>>> {
    let params = SpinParams::with_kick_angle(job.j2, job.kappa0, grid.kick_angle)?;
    let series = echo::average_series(&params, job.delta, grid.steps.1)?;
    let closed = grid.has_closed_form(job.j2);
    let mut rows = Vec::new();
    for &(n, f) in series.values.iter().filter(|(n, _)| *n >= grid.steps.0) {
        let mut row = vec![
            Cell::Int(job.j2 as i64),
            Cell::Float(job.kappa0),
            Cell::Float(job.delta),
            Cell::Int(n as i64),
            Cell::Float(f),
        ];
        if closed {
            let exact = match job.j2 {
                3 => cheb::three_qubit_avg_echo(n, job.kappa0, job.delta),
                _ => cheb::four_qubit_avg_echo(n, job.kappa0, job.delta),
            };
            row.push(Cell::Float(exact));
            row.push(Cell::Float((f - exact).abs()));
            row.push(Cell::text("both"));
        } else {
            row.push(Cell::Empty);
            row.push(Cell::Empty);
            row.push(Cell::text("numeric"));
        }
        rows.push(row);
    }
    Ok(rows)
}

// Closed state fidelities exist for the two marked coherent states of the
// three-qubit top.
fn closed_state_fidelity(job: &Job, n: u64) -> Option<f64> {
    if job.j2 != 3 {
        return None;
    }
    let near = |a: f64, b: f64| (a - b).abs() < 1e-12;
    if near(job.theta0, 0.0) && near(job.phi0, 0.0) {
        Some(cheb::state_fidelity_000(n, job.kappa0, job.delta))
    } else if near(job.theta0, FRAC_PI_2) && near(job.phi0, -FRAC_PI_2) {
        Some(cheb::state_fidelity_ppp(n, job.kappa0, job.delta))
    } else {
        None
    }
}

fn echo_state_rows(grid: &SweepGrid, job: &Job) -> Result<Vec<Vec<Cell>>> {
    let params = SpinParams::with_kick_angle(job.j2, job.kappa0, grid.kick_angle)?;
    let psi0 = crate::spin::coherent_state(&params, job.theta0, job.phi0);
    let series = echo::state_series(&params, job.delta, grid.steps.1, &psi0)?;
    let closed_ok = grid.kick_angle == FRAC_PI_2;
    let mut rows = Vec::new();
    for &(n, f) in series.values.iter().filter(|(n, _)| *n >= grid.steps.0) {
        let mut row = vec![
            Cell::Int(job.j2 as i64),
            Cell::Float(job.kappa0),
            Cell::Float(job.delta),
            Cell::Float(job.theta0),
            Cell::Float(job.phi0),
            Cell::Int(n as i64),
            Cell::Float(f),
        ];
        match closed_state_fidelity(job, n).filter(|_| closed_ok) {
            Some(exact) => {
                row.push(Cell::Float(exact));
                row.push(Cell::Float((f - exact).abs()));
                row.push(Cell::text("both"));
            }
            None => {
                row.push(Cell::Empty);
                row.push(Cell::Empty);
                row.push(Cell::text("numeric"));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn classical_rows(grid: &SweepGrid, job: &Job) -> Vec<Vec<Cell>> {
    let lambda =
        classical::lyapunov(job.kappa0, grid.steps.1, grid.samples as usize, grid.seed);
    vec![vec![
        Cell::Float(job.kappa0),
        Cell::Int(grid.steps.1 as i64),
        Cell::Int(grid.samples as i64),
        Cell::Int(grid.seed as i64),
        Cell::Float(lambda),
    ]]
}

fn portrait_rows(grid: &SweepGrid, job: &Job) -> Vec<Vec<Cell>> {
    let initials = classical::random_states(grid.samples as usize, grid.seed);
    let mut rows = Vec::new();
    for (t, s0) in initials.into_iter().enumerate() {
        for (n, state) in classical::trajectory(s0, job.kappa0, grid.steps.1)
            .into_iter()
            .enumerate()
        {
            let (theta, phi) = state.to_angles();
            rows.push(vec![
                Cell::Float(job.kappa0),
                Cell::Int(t as i64),
                Cell::Int(n as i64),
                Cell::Float(theta),
                Cell::Float(phi),
            ]);
        }
    }
    rows
}

fn gauss_rows(grid: &SweepGrid, job: &Job) -> Result<Vec<Vec<Cell>>> {
    let dec = gauss::decompose_torsion(job.j2, grid.r, grid.s)?;
    let period = gauss::verify_periodicity(job.j2, grid.r, grid.s, grid.steps.1)?;
    Ok(vec![vec![
        Cell::Int(job.j2 as i64),
        Cell::Int(grid.r as i64),
        Cell::Int(grid.s as i64),
        Cell::Float(dec.kappa0()),
        Cell::Int(dec.coefficients.len() as i64),
        Cell::Int(dec.nonzero_terms() as i64),
        Cell::Float(dec.reconstruction_error),
        period.map_or(Cell::Empty, |p| Cell::Int(p as i64)),
    ]])
}

fn run_job(grid: &SweepGrid, job: &Job) -> Result<Vec<Vec<Cell>>> {
    match grid.task {
        TaskKind::Otoc => otoc_rows(grid, job),
        TaskKind::EchoAvg => echo_avg_rows(grid, job),
        TaskKind::EchoState => echo_state_rows(grid, job),
        TaskKind::ClassicalLyapunov => Ok(classical_rows(grid, job)),
        TaskKind::Portrait => Ok(portrait_rows(grid, job)),
        TaskKind::Gauss => gauss_rows(grid, job),
    }
}

/// Evaluate the grid on `workers` threads (0 = rayon default) and return
/// rows in deterministic grid order.
pub fn run_sweep(grid: &SweepGrid, workers: usize) -> Result<Table> {
    let points = grid.point_count();
    if points > grid.cap {
        return Err(Error::GridCapExceeded { points, cap: grid.cap });
    }
    if grid.steps.0 > grid.steps.1 {
        return Ok(Table::new(columns(grid.task)));
    }
    let jobs = jobs(grid);
    let compute = || -> Result<Vec<Vec<Vec<Cell>>>> {
        let mut results: Vec<(usize, Result<Vec<Vec<Cell>>>)> = jobs
            .par_iter()
            .map(|job| (job.index, run_job(grid, job)))
            .collect();
        results.sort_by_key(|(i, _)| *i);
        results.into_iter().map(|(_, r)| r).collect()
    };
    let chunks = if workers == 0 {
        compute()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
        pool.install(compute)?
    };
    let mut table = Table::new(columns(grid.task));
    for chunk in chunks {
        for row in chunk {
            table.push(row);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_point_grid_reproduces_the_exact_value() {
        let mut grid = SweepGrid::new(TaskKind::Otoc);
        grid.j2 = vec![4];
        grid.kappa0 = vec![2.0 * PI];
        grid.steps = (2, 2);
        let table = run_sweep(&grid, 1).unwrap();
        assert_eq!(table.rows.len(), 1);
        let c_inf = table.rows[0][3].as_f64().unwrap();
        assert!((c_inf - 68.0 / 5.0).abs() <= 1e-10);
        assert_eq!(table.rows[0][8], Cell::text("both"));
    }

    #[test]
    fn empty_step_range_gives_empty_table() {
        let mut grid = SweepGrid::new(TaskKind::Otoc);
        grid.steps = (5, 4);
        let table = run_sweep(&grid, 1).unwrap();
        assert!(table.is_empty());
        assert_eq!(table.columns.len(), 9);
    }

    #[test]
    fn closed_numeric_diff_stays_tiny() {
        let mut grid = SweepGrid::new(TaskKind::Otoc);
        grid.j2 = vec![3, 4];
        grid.kappa0 = (0..8).map(|k| k as f64 * 0.7).collect();
        grid.steps = (1, 16);
        let table = run_sweep(&grid, 2).unwrap();
        assert_eq!(table.rows.len(), 2 * 8 * 16);
        for row in &table.rows {
            let diff = row[7].as_f64().unwrap();
            assert!(diff <= 1e-9);
        }
    }

    #[test]
    fn worker_counts_agree_bytewise() {
        let mut grid = SweepGrid::new(TaskKind::EchoAvg);
        grid.j2 = vec![3, 4, 6];
        grid.kappa0 = vec![1.0, 2.0 * PI];
        grid.delta = vec![0.05, 0.3];
        grid.steps = (0, 12);
        let a = run_sweep(&grid, 1).unwrap().to_csv(&[]);
        let b = run_sweep(&grid, 4).unwrap().to_csv(&[]);
        assert_eq!(a, b);
    }

    #[test]
    fn cap_is_enforced() {
        let mut grid = SweepGrid::new(TaskKind::EchoAvg);
        grid.cap = 10;
        grid.steps = (0, 99);
        assert!(matches!(
            run_sweep(&grid, 1),
            Err(Error::GridCapExceeded { points: 100, cap: 10 })
        ));
    }

    #[test]
    fn portrait_and_classical_schemas() {
        let mut grid = SweepGrid::new(TaskKind::Portrait);
        grid.kappa0 = vec![2.5];
        grid.samples = 3;
        grid.steps = (0, 10);
        let table = run_sweep(&grid, 1).unwrap();
        assert_eq!(table.rows.len(), 3 * 11);

        let mut grid = SweepGrid::new(TaskKind::ClassicalLyapunov);
        grid.kappa0 = vec![0.0];
        grid.samples = 10;
        grid.steps = (1, 1500);
        let table = run_sweep(&grid, 1).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert!(table.rows[0][4].as_f64().unwrap().abs() < 0.02);
    }

    #[test]
    fn gauss_task_reports_period() {
        let mut grid = SweepGrid::new(TaskKind::Gauss);
        grid.j2 = vec![4];
        grid.steps = (1, 20);
        let table = run_sweep(&grid, 1).unwrap();
        assert_eq!(table.rows[0][7], Cell::Int(8));
        assert!(table.rows[0][6].as_f64().unwrap() <= 1e-12);
    }

    #[test]
    fn echo_state_closed_forms_flagged() {
        let mut grid = SweepGrid::new(TaskKind::EchoState);
        grid.j2 = vec![3];
        grid.kappa0 = vec![2.0];
        grid.delta = vec![0.05];
        grid.theta0 = vec![0.0, 1.0];
        grid.phi0 = vec![0.0];
        grid.steps = (0, 5);
        let table = run_sweep(&grid, 1).unwrap();
        let both = table.rows.iter().filter(|r| r[9] == Cell::text("both")).count();
        let numeric = table.rows.iter().filter(|r| r[9] == Cell::text("numeric")).count();
        assert_eq!(both, 6);
        assert_eq!(numeric, 6);
        for row in table.rows.iter().filter(|r| r[9] == Cell::text("both")) {
            assert!(row[8].as_f64().unwrap() <= 1e-10);
        }
    }
}
