use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::{cmp, enumerate, facts, first_in, point_count, succ, PointCode, PointFacts};
use crate::profile::{profile, SizeClass};
use crate::term::OrderTerm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    /// A universal claim held at every sampled point.
    Consistent,
    /// A sampled point contradicts the symbolic claim.
    Counterexample,
    WitnessFound,
    WitnessNotFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateOutcome {
    pub predicate: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Symbolic profile claims checked against sampled points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub term: String,
    pub budget: usize,
    pub outcomes: Vec<PredicateOutcome>,
    pub failed: bool,
    #[serde(skip)]
    pub points: usize,
    #[serde(skip)]
    pub max_weight: u64,
}

impl CheckReport {
    pub fn all_witnesses_found(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != CheckStatus::WitnessNotFound)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "term: {}", self.term)?;
        writeln!(f, "budget: {} (sampled {} points, max weight {})", self.budget, self.points, self.max_weight)?;
        for o in &self.outcomes {
            let status = match o.status {
                CheckStatus::Consistent => "consistent",
                CheckStatus::Counterexample => "COUNTEREXAMPLE",
                CheckStatus::WitnessFound => "witness found",
                CheckStatus::WitnessNotFound => "witness not found",
            };
            match &o.witness {
                Some(w) => writeln!(f, "{}: {status} {w}", o.predicate)?,
                None => writeln!(f, "{}: {status}", o.predicate)?,
            }
        }
        write!(f, "result: {}", if self.failed { "FAILED" } else { "consistent" })
    }
}

struct Sample<'a> {
    codes: &'a [PointCode],
    facts: &'a [PointFacts],
}

impl Sample<'_> {
    fn find(&self, pred: impl Fn(&PointFacts) -> bool) -> Option<&PointCode> {
        self.codes.iter().zip(self.facts).find(|(_, f)| pred(f)).map(|(c, _)| c)
    }
}

fn outcome(predicate: &str, status: CheckStatus, witness: Option<&PointCode>) -> PredicateOutcome {
    PredicateOutcome { predicate: predicate.to_string(), status, witness: witness.map(ToString::to_string) }
}

/// A universal claim: `holds` must be true at every point. When the
/// profile denies the claim, a violating point is searched for instead.
fn universal(name: &str, claimed: bool, sample: &Sample<'_>, holds: impl Fn(&PointFacts) -> bool) -> PredicateOutcome {
    let violator = sample.find(|f| !holds(f));
    match (claimed, violator) {
        (true, None) => outcome(name, CheckStatus::Consistent, None),
        (true, Some(c)) => outcome(name, CheckStatus::Counterexample, Some(c)),
        (false, Some(c)) => outcome(name, CheckStatus::WitnessFound, Some(c)),
        (false, None) => outcome(name, CheckStatus::WitnessNotFound, None),
    }
}

/// An existential claim such as "has a least point".
fn existential(
    name: &str,
    claimed: bool,
    sample: &Sample<'_>,
    holds: impl Fn(&PointFacts) -> bool,
) -> PredicateOutcome {
    let witness = sample.find(holds);
    match (claimed, witness) {
        (true, Some(c)) => outcome(name, CheckStatus::WitnessFound, Some(c)),
        (true, None) => outcome(name, CheckStatus::WitnessNotFound, None),
        (false, Some(c)) => outcome(name, CheckStatus::Counterexample, Some(c)),
        (false, None) => outcome(name, CheckStatus::Consistent, None),
    }
}

/// Compares the symbolic profile of `t` with the first `budget` points of
/// its realization.
pub fn cross_check(t: &OrderTerm, budget: usize) -> CheckReport {
    let codes = enumerate(t, budget);
    let point_facts: Vec<PointFacts> = codes.iter().map(|c| facts(t, c)).collect();
    let sample = Sample { codes: &codes, facts: &point_facts };
    let p = profile(t);
    let mut outcomes = vec![
        existential("has_left_endpoint", p.has_left_endpoint, &sample, |f| f.is_min),
        existential("has_right_endpoint", p.has_right_endpoint, &sample, |f| f.is_max),
        universal("succ_complete", p.succ_complete, &sample, |f| f.is_max || f.has_successor),
        universal("pred_complete", p.pred_complete, &sample, |f| f.is_min || f.has_predecessor),
        universal("succ_pair_free", p.succ_pair_free, &sample, |f| !f.has_successor),
    ];

    let own = point_count(t);
    let size_ok = match p.size {
        SizeClass::Finite(n) => own == Some(n) && codes.len() as u64 == n.min(budget as u64),
        SizeClass::CountablyInfinite => own.is_none() && codes.len() == budget,
    };
    outcomes.push(PredicateOutcome {
        predicate: "size".to_string(),
        status: if size_ok { CheckStatus::Consistent } else { CheckStatus::Counterexample },
        witness: (!size_ok).then(|| format!("{} points enumerated", codes.len())),
    });

    // Adjacent sampled points: nothing lies between them exactly when the
    // second is the successor of the first.
    let mut sorted = codes.clone();
    sorted.sort_by(|a, b| cmp(t, a, b));
    let mut gap_status = CheckStatus::Consistent;
    let mut gap_witness = None;
    for w in sorted.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mid = first_in(t, Some(a), Some(b)).ok().flatten();
        let inside = mid.as_ref().is_none_or(|m| cmp(t, a, m) == Ordering::Less && cmp(t, m, b) == Ordering::Less);
        let adjacent = succ(t, a).as_ref() == Some(b);
        if cmp(t, a, b) != Ordering::Less || mid.is_none() != adjacent || !inside {
            gap_status = CheckStatus::Counterexample;
            gap_witness = Some(format!("{a} .. {b}"));
            break;
        }
    }
    outcomes.push(PredicateOutcome {
        predicate: "between_agrees_with_successor".to_string(),
        status: gap_status,
        witness: gap_witness,
    });

    let failed = outcomes.iter().any(|o| o.status == CheckStatus::Counterexample);
    CheckReport {
        term: t.to_string(),
        budget,
        outcomes,
        failed,
        points: codes.len(),
        max_weight: codes.iter().map(PointCode::weight).max().unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    #[test]
    fn golden_checks() {
        for (s, n) in [("N + Q[Z]", 200), ("Q", 50), ("1 + Q + 1", 50)] {
            let r = cross_check(&parse(s).unwrap(), n);
            assert!(!r.failed, "{r}");
            assert!(r.all_witnesses_found(), "{r}");
        }
    }

    #[test]
    fn json_shape() {
        let r = cross_check(&parse("Z").unwrap(), 10);
        let v = r.to_json();
        assert_eq!(v["term"], "Z");
        assert_eq!(v["budget"], 10);
        assert_eq!(v["failed"], false);
        assert!(v["outcomes"].as_array().unwrap().iter().all(|o| o.get("predicate").is_some()));
    }
}
