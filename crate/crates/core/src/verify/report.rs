use serde::{Deserialize, Serialize};

use crate::exactalg::{Ideal, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One condition or lemma outcome.
///
/// `summary` is the one-line witness, counterexample or skip reason;
/// `checks` lists the individual facts established, in the order they were
/// checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub status: Status,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels_checked: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Entry {
    pub fn pass(summary: impl Into<String>) -> Entry {
        Entry {
            status: Status::Pass,
            summary: summary.into(),
            levels_checked: Vec::new(),
            checks: Vec::new(),
            method: None,
            notes: Vec::new(),
        }
    }

    pub fn fail(summary: impl Into<String>) -> Entry {
        Entry { status: Status::Fail, ..Entry::pass(summary) }
    }

    pub fn skipped(summary: impl Into<String>) -> Entry {
        Entry { status: Status::Skipped, ..Entry::pass(summary) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The ring, ideal generator and depth of an adic tower, as given by a user.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub ring: Ring,
    /// The generator in the ring's text syntax, e.g. `2` or `x^2+1`.
    pub ideal: String,
    pub depth: usize,
}

impl TowerSpec {
    pub fn validate(&self) -> Result<Ideal> {
        if self.depth == 0 {
            return Err(Error::InvalidDepth(0));
        }
        let g = self.ring.parse(&self.ideal)?;
        Ideal::new(&self.ring, g)
    }
}

/// Conditions (1)–(5) and (3′).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition_1: Entry,
    pub condition_2: Entry,
    pub condition_3: Entry,
    pub condition_3_prime: Entry,
    pub condition_4: Entry,
    pub condition_5: Entry,
}

impl ConditionReport {
    pub fn entries(&self) -> [(&'static str, &Entry); 6] {
        [
            ("condition_1", &self.condition_1),
            ("condition_2", &self.condition_2),
            ("condition_3", &self.condition_3),
            ("condition_3_prime", &self.condition_3_prime),
            ("condition_4", &self.condition_4),
            ("condition_5", &self.condition_5),
        ]
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries().into_iter().find(|(k, _)| *k == key).map(|(_, e)| e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub homzz: Entry,
    pub zml: Entry,
    pub jislim: Entry,
    pub quotient: Entry,
    pub jjz: Entry,
    pub homjz_a: Entry,
    pub homjz_b: Entry,
    pub weak_epi: Entry,
    pub self_small_witness: Entry,
}

impl LemmaReport {
    pub fn entries(&self) -> [(&'static str, &Entry); 9] {
        [
            ("homzz", &self.homzz),
            ("zml", &self.zml),
            ("jislim", &self.jislim),
            ("quotient", &self.quotient),
            ("jjz", &self.jjz),
            ("homjz_a", &self.homjz_a),
            ("homjz_b", &self.homjz_b),
            ("weak_epi", &self.weak_epi),
            ("self_small_witness", &self.self_small_witness),
        ]
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries().into_iter().find(|(k, _)| *k == key).map(|(_, e)| e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Knobs of a verification run; recorded verbatim in the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Modules with at most this many elements are enumerated.
    pub oracle_bound: u64,
    pub seed: u64,
    pub horizon: usize,
    /// Number of copies in the coproduct used by the self-small witness.
    pub index_size: usize,
    /// Sampled morphisms per level when enumeration is out of reach.
    pub trials: usize,
    /// Run only this entry and its prerequisites.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only: Option<String>,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions { oracle_bound: 4096, seed: 0, horizon: 8, index_size: 100, trials: 16, only: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> ToolInfo {
        ToolInfo { name: env!("CARGO_PKG_NAME").into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: ToolInfo,
    pub tower: TowerSpec,
    pub options: RunOptions,
    pub conditions: ConditionReport,
    pub lemmas: LemmaReport,
    pub verdict: Verdict,
}

impl VerificationReport {
    /// Every entry, conditions first, in pipeline order.
    pub fn entries(&self) -> Vec<(&'static str, &Entry)> {
        let mut all: Vec<_> = self.conditions.entries().into_iter().collect();
        all.extend(self.lemmas.entries());
        all
    }

    pub fn entry(&self, key: &str) -> Option<&Entry> {
        self.conditions.get(key).or_else(|| self.lemmas.get(key))
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Pass iff no entry failed.
    pub fn compute_verdict(conditions: &ConditionReport, lemmas: &LemmaReport) -> Verdict {
        let failed = conditions.entries().iter().chain(lemmas.entries().iter()).any(|(_, e)| e.status == Status::Fail);
        if failed {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }

    /// Plain text rendering, one line per entry.
    pub fn render_text(&self) -> String {
        let ring = &self.tower.ring;
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.tool.name, self.tool.version));
        out.push_str(&format!(
            "tower: {ring}/({}) depth {}\nseed: {}  oracle bound: {}  horizon: {}\n",
            self.tower.ideal, self.tower.depth, self.options.seed, self.options.oracle_bound, self.options.horizon
        ));
        if let Some(only) = &self.options.only {
            out.push_str(&format!("only: {only}\n"));
        }
        for (key, e) in self.entries() {
            out.push_str(&format!("{key}: {} ({})\n", e.status.as_str(), e.summary));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            }
        ));
        out
    }
}
