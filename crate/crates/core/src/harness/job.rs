use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

use super::commands::{cmd_commute, cmd_free, cmd_h_generators, cmd_invariance, cmd_psi, PsiMode};
use super::setup::resolve;
use super::{Options, Report, Status, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Commute,
    Free,
    PsiImage,
    Invariance,
    HGenerators,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Commute => "commute",
            Task::Free => "free",
            Task::PsiImage => "psi-image",
            Task::Invariance => "invariance",
            Task::HGenerators => "h-generators",
        }
    }
}

fn default_auto() -> Value {
    Value::String("id".into())
}

fn default_zeta() -> u32 {
    1
}

fn default_bound() -> usize {
    4
}

/// A job file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Job {
    #[serde(default)]
    pub id: Option<String>,
    /// Catalog id or inline definition.
    pub algebra: Value,
    /// Name or inline matrix.
    #[serde(default = "default_auto")]
    pub automorphism: Value,
    #[serde(default = "default_zeta")]
    pub zeta_choice: u32,
    #[serde(default, rename = "window_N")]
    pub window_n: Option<usize>,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Largest `j` in the collapse identities.
    #[serde(default = "default_bound")]
    pub psi_bound: usize,
}

impl Job {
    pub fn from_json(v: &Value) -> Result<Job> {
        serde_json::from_value(v.clone()).map_err(|e| Error::parse("$", e.to_string()))
    }
}

/// Runs every task of the job, in parallel, and returns the reports in job order.
///
/// The job's own seed and window override `opts`. A task that cannot run yields an
/// inconclusive report rather than aborting the job.
pub fn run_job(job: &Job, opts: &Options) -> Result<Vec<Report>> {
    let setup = resolve(&job.algebra, &job.automorphism, job.zeta_choice)?;
    let opts = Options { seed: job.seed.unwrap_or(opts.seed), window: job.window_n.or(opts.window), ..*opts };
    let name = job.id.clone().unwrap_or_else(|| setup.label());
    let per_task: Vec<Vec<Report>> = job
        .tasks
        .par_iter()
        .map(|&task| {
            let run = || -> Result<Vec<Report>> {
                Ok(match task {
                    Task::Commute => vec![cmd_commute(&setup, &opts)?],
                    Task::Free => vec![cmd_free(&setup, &opts)?],
                    Task::PsiImage => vec![
                        cmd_psi(&setup, PsiMode::Z0, job.psi_bound, &opts)?,
                        cmd_psi(&setup, PsiMode::Zt, job.psi_bound, &opts)?,
                    ],
                    Task::Invariance => vec![cmd_invariance(&setup, &opts)?],
                    Task::HGenerators => vec![cmd_h_generators(&setup, &opts)?],
                })
            };
            let mut reports = run().unwrap_or_else(|e| {
                let mut r = Report::new("", task.name(), opts.seed);
                r.window = opts.window;
                r.downgrade(Status::Inconclusive, Witness::new(e.to_string()));
                vec![r]
            });
            for r in &mut reports {
                r.job = name.clone();
            }
            reports
        })
        .collect();
    Ok(per_task.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_job_file() {
        let job = Job::from_json(&json!({
            "algebra": "sl2", "automorphism": "inner:diag(1,-1)", "zeta_choice": 1, "window_N": 4,
            "tasks": ["commute", "psi-image", "h-generators"]
        }))
        .unwrap();
        assert_eq!(job.tasks, vec![Task::Commute, Task::PsiImage, Task::HGenerators]);
        assert_eq!(job.window_n, Some(4));
        assert!(matches!(Job::from_json(&json!({"algebra": "sl2", "tasks": ["nope"]})), Err(Error::Parse { .. })));
    }

    #[test]
    fn reports_follow_job_order_and_are_deterministic() {
        let job = Job::from_json(&json!({
            "id": "demo", "algebra": "sl2", "automorphism": "inner:diag(1,-1)", "window_N": 4,
            "tasks": ["free", "commute", "psi-image"]
        }))
        .unwrap();
        let opts = Options { seed: 5, trials: 30, window: None };
        let a = run_job(&job, &opts).unwrap();
        let tasks: Vec<&str> = a.iter().map(|r| r.task.as_str()).collect();
        assert_eq!(tasks, ["free", "commute", "psi-z0", "psi-zt"]);
        assert!(a.iter().all(|r| r.passed() && r.job == "demo" && r.window.is_none_or(|n| n == 4)));
        let b = run_job(&job, &opts).unwrap();
        let strip = |rs: Vec<Report>| rs.into_iter().map(|mut r| { r.wall_time_ms = 0; r }).collect::<Vec<_>>();
        assert_eq!(strip(a), strip(b));
    }
}
