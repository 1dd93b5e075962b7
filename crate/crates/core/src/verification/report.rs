use std::fmt;
use std::time::Duration;

use super::minor::MinorWitness;

/// One named check inside a report.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Witness or exhausted search space, in words.
    pub evidence: String,
    pub witness: Option<MinorWitness>,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub verdict: bool,
    pub checks: Vec<Check>,
    pub counters: Vec<(String, u64)>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, evidence: impl Into<String>, witness: Option<MinorWitness>) {
        self.checks.push(Check { name: name.into(), passed, evidence: evidence.into(), witness });
    }

    pub fn add_counter(&mut self, name: &str, by: u64) {
        match self.counters.iter_mut().find(|(n, _)| n == name) {
            Some((_, v)) => *v += by,
            None => self.counters.push((name.to_string(), by)),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict {}", self.verdict)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "ok" } else { "no" }, c.name, c.evidence)?;
        }
        for (n, v) in &self.counters {
            writeln!(f, "  {n} = {v}")?;
        }
        write!(f, "  elapsed {:.3}s", self.elapsed.as_secs_f64())
    }
}
