//! Executable checks of the tower conditions and of every lemma built on
//! them, assembled into a report with pass/fail/skipped entries.
//!
//! Entries run in dependency order. An entry whose prerequisites did not
//! all pass is skipped and names the failed prerequisites.

mod conditions;
mod lemmas;
mod log;
mod report;

pub use conditions::check_conditions;
pub use report::{
    ConditionReport, Entry, LemmaReport, RunOptions, Status, ToolInfo, TowerSpec, VerificationReport, Verdict,
};

use crate::error::{Error, Result};
use crate::towers::AdicTower;
use conditions::guard;
use lemmas::Session;

const CONDITIONS: [&str; 6] =
    ["condition_1", "condition_2", "condition_3", "condition_3_prime", "condition_4", "condition_5"];

/// Every entry key in pipeline order.
pub const ENTRY_KEYS: [&str; 15] = [
    "condition_1",
    "condition_2",
    "condition_3",
    "condition_3_prime",
    "condition_4",
    "condition_5",
    "homzz",
    "zml",
    "jislim",
    "quotient",
    "jjz",
    "homjz_a",
    "homjz_b",
    "weak_epi",
    "self_small_witness",
];

/// Direct prerequisites of an entry.
fn direct_prerequisites(key: &str) -> &'static [&'static str] {
    match key {
        "condition_3" => &["condition_1", "condition_3_prime"],
        "homzz" => &["condition_1", "condition_2"],
        "zml" => &["condition_1", "condition_2", "condition_3", "homzz"],
        "jislim" => &["condition_1", "condition_2", "homzz"],
        "quotient" => &[
            "condition_1",
            "condition_2",
            "condition_3",
            "condition_3_prime",
            "condition_4",
            "condition_5",
            "homzz",
            "zml",
        ],
        "jjz" => &["quotient", "jislim"],
        "homjz_a" => &["jjz"],
        "homjz_b" => &["homjz_a"],
        "weak_epi" => &["homjz_b"],
        "self_small_witness" => &["weak_epi"],
        _ => &[],
    }
}

/// All prerequisites of `key`, in pipeline order.
pub fn prerequisites(key: &str) -> Vec<&'static str> {
    let mut seen = vec![false; ENTRY_KEYS.len()];
    let mut stack: Vec<&str> = direct_prerequisites(key).to_vec();
    while let Some(k) = stack.pop() {
        if let Some(i) = ENTRY_KEYS.iter().position(|e| *e == k) {
            if !seen[i] {
                seen[i] = true;
                stack.extend(direct_prerequisites(k));
            }
        }
    }
    ENTRY_KEYS.iter().zip(seen).filter(|(_, s)| *s).map(|(k, _)| *k).collect()
}

fn not_requested() -> Entry {
    Entry::skipped("not requested")
}

/// Runs every entry on an already built tower.
pub fn run_tower(tower: &AdicTower, options: &RunOptions) -> Result<(ConditionReport, LemmaReport)> {
    let wanted = match &options.only {
        None => ENTRY_KEYS.to_vec(),
        Some(key) => {
            if !ENTRY_KEYS.contains(&key.as_str()) {
                return Err(Error::Parse(format!("unknown entry key {key:?}")));
            }
            let mut w = prerequisites(key);
            w.push(ENTRY_KEYS[ENTRY_KEYS.iter().position(|k| k == key).expect("checked")]);
            w
        }
    };
    let is_wanted = |k: &str| wanted.contains(&k);

    let mut conditions = check_conditions(tower)?;
    for key in CONDITIONS {
        if !is_wanted(key) {
            let slot = match key {
                "condition_1" => &mut conditions.condition_1,
                "condition_2" => &mut conditions.condition_2,
                "condition_3" => &mut conditions.condition_3,
                "condition_3_prime" => &mut conditions.condition_3_prime,
                "condition_4" => &mut conditions.condition_4,
                _ => &mut conditions.condition_5,
            };
            *slot = not_requested();
        }
    }

    let mut done: Vec<(&'static str, Status)> =
        conditions.entries().iter().map(|(k, e)| (*k, e.status)).collect();
    let mut session = Session::new(tower, options);
    type Verifier = fn(&mut Session) -> Result<Entry>;
    let steps: [(&'static str, Verifier); 9] = [
        ("homzz", lemmas::homzz),
        ("zml", lemmas::zml),
        ("jislim", lemmas::jislim),
        ("quotient", lemmas::quotient),
        ("jjz", lemmas::jjz),
        ("homjz_a", lemmas::homjz_a),
        ("homjz_b", lemmas::homjz_b),
        ("weak_epi", lemmas::weak_epi),
        ("self_small_witness", lemmas::self_small_witness),
    ];
    let mut results = Vec::with_capacity(steps.len());
    for (key, verify) in steps {
        let entry = if !is_wanted(key) {
            not_requested()
        } else {
            let status_of = |p: &str| done.iter().find(|(k, _)| *k == p).map(|(_, s)| *s);
            let prereqs = prerequisites(key);
            let failed: Vec<&str> = prereqs.iter().copied().filter(|p| status_of(p) == Some(Status::Fail)).collect();
            let skipped: Vec<&str> =
                prereqs.iter().copied().filter(|p| status_of(p) == Some(Status::Skipped)).collect();
            if !failed.is_empty() {
                Entry::skipped(format!("prerequisite {} failed", failed.join(", ")))
            } else if !skipped.is_empty() {
                Entry::skipped(format!("prerequisite {} skipped", skipped.join(", ")))
            } else {
                guard(verify(&mut session))?
            }
        };
        done.push((key, entry.status));
        results.push(entry);
    }
    let mut it = results.into_iter();
    let mut next = || it.next().expect("nine entries");
    let lemmas = LemmaReport {
        homzz: next(),
        zml: next(),
        jislim: next(),
        quotient: next(),
        jjz: next(),
        homjz_a: next(),
        homjz_b: next(),
        weak_epi: next(),
        self_small_witness: next(),
    };
    Ok((conditions, lemmas))
}

/// Validates the specification, builds the tower and runs the pipeline.
pub fn run_full_report(spec: &TowerSpec, options: &RunOptions) -> Result<VerificationReport> {
    let ideal = spec.validate()?;
    if let Some(key) = &options.only {
        if !ENTRY_KEYS.contains(&key.as_str()) {
            return Err(Error::Parse(format!("unknown entry key {key:?}")));
        }
    }
    let tower = AdicTower::build(spec.ring, ideal, spec.depth)?;
    let (conditions, lemmas) = run_tower(&tower, options)?;
    let verdict = VerificationReport::compute_verdict(&conditions, &lemmas);
    Ok(VerificationReport {
        tool: ToolInfo::default(),
        tower: spec.clone(),
        options: options.clone(),
        conditions,
        lemmas,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ring;

    fn spec(ideal: &str, depth: usize) -> TowerSpec {
        TowerSpec { ring: Ring::Integers, ideal: ideal.into(), depth }
    }

    #[test]
    fn prerequisite_closure() {
        assert_eq!(prerequisites("homzz"), vec!["condition_1", "condition_2"]);
        let w = prerequisites("self_small_witness");
        assert_eq!(w.len(), ENTRY_KEYS.len() - 1);
    }

    #[test]
    fn two_adic_depth_three_passes() {
        let r = run_full_report(&spec("2", 3), &RunOptions::default()).unwrap();
        for (k, e) in r.entries() {
            assert_eq!(e.status, Status::Pass, "{k}: {}", e.summary);
        }
        assert!(r.passed());
    }

    #[test]
    fn composite_generator_is_gated() {
        let r = run_full_report(&spec("6", 3), &RunOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        for key in ["homzz", "zml", "jislim"] {
            assert_eq!(r.entry(key).unwrap().status, Status::Pass, "{key}");
        }
        for key in ["quotient", "jjz", "homjz_a", "homjz_b", "weak_epi", "self_small_witness"] {
            let e = r.entry(key).unwrap();
            assert_eq!(e.status, Status::Skipped, "{key}");
            assert!(e.summary.contains("condition_4"), "{key}: {}", e.summary);
        }
    }

    #[test]
    fn lemma_filter_runs_prerequisites_only() {
        let options = RunOptions { only: Some("zml".into()), ..RunOptions::default() };
        let r = run_full_report(&spec("3", 3), &options).unwrap();
        assert_eq!(r.entry("zml").unwrap().status, Status::Pass);
        assert_eq!(r.entry("condition_4").unwrap().summary, "not requested");
        assert_eq!(r.entry("jjz").unwrap().summary, "not requested");
        assert!(r.passed());
        let bad = RunOptions { only: Some("nope".into()), ..RunOptions::default() };
        assert!(run_full_report(&spec("3", 3), &bad).is_err());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(run_full_report(&spec("2", 0), &RunOptions::default()).is_err());
        assert!(run_full_report(&spec("1", 3), &RunOptions::default()).is_err());
        assert!(run_full_report(&spec("x", 3), &RunOptions::default()).is_err());
    }
}
