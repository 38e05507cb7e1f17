//! Running an external DIMACS SAT solver as a subprocess.

use std::env;
use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::encode::{parse_solver_output, to_dimacs, Cnf, SolverOutput};
use crate::error::{Error, Result};

/// Solvers looked up on `PATH` when `SAT_SOLVER` is unset.
pub const KNOWN_SOLVERS: [&str; 2] = ["cadical", "kissat"];

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub exe: PathBuf,
    pub args: Vec<String>,
    pub timeout: Duration,
    pub work_dir: PathBuf,
    /// Keep CNF and output files after successful runs.
    pub keep_files: bool,
}

impl SolverConfig {
    pub fn new(exe: impl Into<PathBuf>) -> Self {
        SolverConfig {
            exe: exe.into(),
            args: Vec::new(),
            timeout: Duration::from_secs(3600),
            work_dir: env::temp_dir(),
            keep_files: false,
        }
    }

    /// Uses `SAT_SOLVER`, else the first known solver on `PATH`.
    pub fn discover() -> Result<Self> {
        find_solver().map(SolverConfig::new)
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }
}

pub fn find_solver() -> Result<PathBuf> {
    if let Some(path) = env::var_os("SAT_SOLVER").filter(|p| !p.is_empty()) {
        return Ok(PathBuf::from(path));
    }
    let path = env::var_os("PATH").ok_or(Error::NoSolver)?;
    for dir in env::split_paths(&path) {
        for name in KNOWN_SOLVERS {
            let candidate = dir.join(name);
            if candidate.is_file() {
                return Ok(candidate);
            }
        }
    }
    Err(Error::NoSolver)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub verdict: Verdict,
    /// Present for `Sat`.
    pub model: Option<Vec<bool>>,
    pub elapsed: Duration,
    /// Diagnostic when the run did not produce a verdict.
    pub note: Option<String>,
}

static FILE_COUNTER: AtomicU64 = AtomicU64::new(0);

fn scratch_paths(dir: &Path) -> (PathBuf, PathBuf) {
    let id = FILE_COUNTER.fetch_add(1, Ordering::Relaxed);
    let stem = format!("sortnet-{}-{id}", std::process::id());
    (dir.join(format!("{stem}.cnf")), dir.join(format!("{stem}.out")))
}

/// Writes `cnf` to the work directory and solves it.
pub fn run_solver(cnf: &Cnf, cfg: &SolverConfig, cancel: Option<&AtomicBool>) -> Result<RunResult> {
    let (cnf_path, out_path) = scratch_paths(&cfg.work_dir);
    fs::write(&cnf_path, to_dimacs(cnf))?;
    let result = solve_file(&cnf_path, &out_path, cfg, cancel);
    let keep = cfg.keep_files || !matches!(&result, Ok(r) if r.verdict != Verdict::Timeout);
    if !keep {
        let _ = fs::remove_file(&cnf_path);
        let _ = fs::remove_file(&out_path);
    }
    result
}

/// Solves an existing DIMACS file; solver output goes next to it.
pub fn run_solver_on_file(cnf_path: &Path, cfg: &SolverConfig) -> Result<RunResult> {
    let (_, out_path) = scratch_paths(&cfg.work_dir);
    let result = solve_file(cnf_path, &out_path, cfg, None);
    if !cfg.keep_files && matches!(&result, Ok(r) if r.verdict != Verdict::Timeout) {
        let _ = fs::remove_file(&out_path);
    }
    result
}

fn solve_file(cnf_path: &Path, out_path: &Path, cfg: &SolverConfig, cancel: Option<&AtomicBool>) -> Result<RunResult> {
    let start = Instant::now();
    let stdout = File::create(out_path)?;
    let mut child = Command::new(&cfg.exe)
        .args(&cfg.args)
        .arg(cnf_path)
        .stdin(Stdio::null())
        .stdout(stdout)
        .stderr(Stdio::null())
        .spawn()
        .map_err(|source| Error::SolverSpawn { path: cfg.exe.clone(), source })?;
    let mut pause = Duration::from_millis(1);
    loop {
        if child.try_wait()?.is_some() {
            break;
        }
        let cancelled = cancel.is_some_and(|c| c.load(Ordering::Relaxed));
        if cancelled || start.elapsed() >= cfg.timeout {
            let _ = child.kill();
            let _ = child.wait();
            let note = if cancelled { "cancelled" } else { "timed out" };
            return Ok(RunResult { verdict: Verdict::Timeout, model: None, elapsed: start.elapsed(), note: Some(note.into()) });
        }
        thread::sleep(pause);
        pause = (pause * 2).min(Duration::from_millis(50));
    }
    let elapsed = start.elapsed();
    let text = fs::read_to_string(out_path)?;
    Ok(match parse_solver_output(&text) {
        SolverOutput::Sat(model) => RunResult { verdict: Verdict::Sat, model: Some(model), elapsed, note: None },
        SolverOutput::Unsat => RunResult { verdict: Verdict::Unsat, model: None, elapsed, note: None },
        SolverOutput::Unknown(why) => RunResult {
            verdict: Verdict::Timeout,
            model: None,
            elapsed,
            note: Some(format!("unparseable solver output ({why}); kept {}", out_path.display())),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fake_solver(dir: &Path, body: &str) -> PathBuf {
        use std::os::unix::fs::PermissionsExt;
        let path = dir.join("fake-solver.sh");
        fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
        fs::set_permissions(&path, fs::Permissions::from_mode(0o755)).unwrap();
        path
    }

    fn config(dir: &Path, exe: PathBuf) -> SolverConfig {
        SolverConfig { work_dir: dir.to_path_buf(), ..SolverConfig::new(exe) }
    }

    #[test]
    fn scripted_sat_answer() {
        let dir = tempfile::tempdir().unwrap();
        let exe = fake_solver(dir.path(), "echo 's SATISFIABLE'; echo 'v 1 -2 0'");
        let cnf = Cnf { num_vars: 2, clauses: vec![vec![1]] };
        let r = run_solver(&cnf, &config(dir.path(), exe), None).unwrap();
        assert_eq!(r.verdict, Verdict::Sat);
        assert_eq!(r.model.unwrap(), vec![false, true, false]);
        // scratch files are removed after a verdict
        let left: Vec<_> = fs::read_dir(dir.path()).unwrap().filter_map(|e| e.ok()).collect();
        assert_eq!(left.len(), 1);
    }

    #[test]
    fn timeout_kills_the_process() {
        let dir = tempfile::tempdir().unwrap();
        let exe = fake_solver(dir.path(), "sleep 5");
        let cfg = config(dir.path(), exe).with_timeout(Duration::from_millis(100));
        let r = run_solver(&Cnf::default(), &cfg, None).unwrap();
        assert_eq!(r.verdict, Verdict::Timeout);
        assert!(r.elapsed < Duration::from_secs(4));
    }

    #[test]
    fn cancellation() {
        let dir = tempfile::tempdir().unwrap();
        let exe = fake_solver(dir.path(), "sleep 5");
        let flag = AtomicBool::new(true);
        let r = run_solver(&Cnf::default(), &config(dir.path(), exe), Some(&flag)).unwrap();
        assert_eq!(r.verdict, Verdict::Timeout);
        assert_eq!(r.note.as_deref(), Some("cancelled"));
    }

    #[test]
    fn garbage_output_is_not_a_verdict() {
        let dir = tempfile::tempdir().unwrap();
        let exe = fake_solver(dir.path(), "echo hello");
        let r = run_solver(&Cnf::default(), &config(dir.path(), exe), None).unwrap();
        assert_eq!(r.verdict, Verdict::Timeout);
        assert!(r.note.unwrap().contains("unparseable"));
    }

    #[test]
    fn missing_executable() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(dir.path(), dir.path().join("does-not-exist"));
        assert!(matches!(run_solver(&Cnf::default(), &cfg, None), Err(Error::SolverSpawn { .. })));
    }
}
