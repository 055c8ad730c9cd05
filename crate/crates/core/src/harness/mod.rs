//! Named verification commands, the job runner and the report format they share.

mod commands;
mod job;
mod setup;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use commands::{
    cmd_catalog, cmd_check, cmd_commute, cmd_free, cmd_grade, cmd_h_generators, cmd_index, cmd_invariance, cmd_psi,
    example_suites, PsiMode,
};
pub use job::{run_job, Job, Task};
pub use setup::{export_algebra, is_reductive_catalog, parse_algebra, resolve, AlgebraDoc, Family, Setup};

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "TWISTLOOP_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

/// `TWISTLOOP_SEED` when set and numeric, otherwise [`DEFAULT_SEED`].
pub fn default_seed() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    HypothesesNotEstablished,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::HypothesesNotEstablished => "hypotheses-not-established",
        }
    }
}

/// A failing pair, actor or identity, with the offending polynomial when there is one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub what: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poly: Option<String>,
}

impl Witness {
    pub fn new(what: impl Into<String>) -> Self {
        Witness { what: what.into(), poly: None }
    }

    pub fn with_poly(what: impl Into<String>, poly: impl Into<String>) -> Self {
        Witness { what: what.into(), poly: Some(poly.into()) }
    }
}

/// Knobs shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
    /// Window size; `None` means `2m` times the largest generator degree.
    pub window: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: default_seed(), trials: 50, window: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: String,
    pub task: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub seed: u64,
    pub window: Option<usize>,
    pub wall_time_ms: u64,
    pub identities_checked: usize,
    /// The identities checked, in canonical text.
    pub identities: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(job: impl Into<String>, task: impl Into<String>, seed: u64) -> Self {
        Report {
            job: job.into(),
            task: task.into(),
            status: Status::Pass,
            witnesses: Vec::new(),
            seed,
            window: None,
            wall_time_ms: 0,
            identities_checked: 0,
            identities: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn identity(&mut self, text: impl Into<String>) {
        self.identities.push(text.into());
        self.identities_checked += 1;
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records a failure; the first one decides the status.
    pub fn fail(&mut self, w: Witness) {
        self.status = Status::Fail;
        self.witnesses.push(w);
    }

    /// Downgrades a passing report; failures stay failures.
    pub fn downgrade(&mut self, status: Status, w: Witness) {
        if self.status == Status::Pass {
            self.status = status;
        }
        self.witnesses.push(w);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Multi-line text rendering; at most `max_identities` identities are listed.
    pub fn to_text(&self, max_identities: usize) -> String {
        let mut out = String::new();
        let window = self.window.map(|n| format!(" N={n}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "[{}] {} {}{window}: {} identities, seed {}, {} ms",
            self.status.as_str(),
            self.job,
            self.task,
            self.identities_checked,
            self.seed,
            self.wall_time_ms
        );
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for w in &self.witnesses {
            match &w.poly {
                Some(p) => {
                    let _ = writeln!(out, "  witness: {} = {p}", w.what);
                }
                None => {
                    let _ = writeln!(out, "  witness: {}", w.what);
                }
            }
        }
        for id in self.identities.iter().take(max_identities) {
            let _ = writeln!(out, "  checked: {id}");
        }
        if self.identities.len() > max_identities {
            let _ = writeln!(out, "  ... {} more", self.identities.len() - max_identities);
        }
        out
    }
}

/// 1 if anything failed, else 2 if anything is undecided, else 0.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status != Status::Pass) {
        2
    } else {
        0
    }
}

/// Runs `body` and stamps the elapsed time.
pub(crate) fn timed(body: impl FnOnce() -> Report) -> Report {
    let start = std::time::Instant::now();
    let mut r = body();
    r.wall_time_ms = start.elapsed().as_millis() as u64;
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let pass = Report::new("j", "t", 0);
        let mut fail = pass.clone();
        fail.fail(Witness::new("x"));
        let mut unsure = pass.clone();
        unsure.downgrade(Status::Inconclusive, Witness::new("y"));
        assert_eq!(exit_code(&[pass.clone()]), 0);
        assert_eq!(exit_code(&[pass.clone(), unsure.clone()]), 2);
        assert_eq!(exit_code(&[unsure.clone(), fail.clone()]), 1);
        assert_eq!(exit_code(&[]), 0);
    }

    #[test]
    fn downgrade_keeps_failures() {
        let mut r = Report::new("j", "t", 0);
        r.fail(Witness::new("a"));
        r.downgrade(Status::Inconclusive, Witness::new("b"));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn json_roundtrip_and_status_names() {
        let mut r = Report::new("j", "psi", 3);
        r.downgrade(Status::HypothesesNotEstablished, Witness::with_poly("F1", "e*f"));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "hypotheses-not-established");
        let back: Report = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
