//! Compositional first-order facts about the order a term denotes.
//!
//! These are the endpoint and successor/predecessor predicates that decide
//! which orders a left-absorbing order absorbs.

use serde::Serialize;

use crate::term::OrderTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SizeClass {
    Finite(u64),
    CountablyInfinite,
}

impl SizeClass {
    fn add(self, other: SizeClass) -> SizeClass {
        match (self, other) {
            (SizeClass::Finite(a), SizeClass::Finite(b)) => {
                a.checked_add(b).map_or(SizeClass::CountablyInfinite, SizeClass::Finite)
            }
            _ => SizeClass::CountablyInfinite,
        }
    }

    fn mul(self, other: SizeClass) -> SizeClass {
        match (self, other) {
            (SizeClass::Finite(0), _) | (_, SizeClass::Finite(0)) => SizeClass::Finite(0),
            (SizeClass::Finite(a), SizeClass::Finite(b)) => {
                a.checked_mul(b).map_or(SizeClass::CountablyInfinite, SizeClass::Finite)
            }
            _ => SizeClass::CountablyInfinite,
        }
    }

    pub fn at_least_two(self) -> bool {
        !matches!(self, SizeClass::Finite(0) | SizeClass::Finite(1))
    }
}

/// The four countable dense order types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DenseClass {
    Q,
    OneQ,
    QOne,
    OneQOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructProfile {
    pub is_empty: bool,
    pub size: SizeClass,
    pub has_left_endpoint: bool,
    pub has_right_endpoint: bool,
    /// No point has an immediate successor.
    pub succ_pair_free: bool,
    /// Every point other than the maximum has an immediate successor.
    pub succ_complete: bool,
    /// Every point other than the minimum has an immediate predecessor.
    pub pred_complete: bool,
    pub dense_class: Option<DenseClass>,
}

impl StructProfile {
    fn atom(size: SizeClass, left: bool, right: bool) -> Self {
        let is_empty = size == SizeClass::Finite(0);
        StructProfile {
            is_empty,
            size,
            has_left_endpoint: left,
            has_right_endpoint: right,
            succ_pair_free: !size.at_least_two(),
            succ_complete: true,
            pred_complete: true,
            dense_class: None,
        }
    }

    fn with_dense_class(mut self) -> Self {
        self.dense_class = if self.succ_pair_free && self.size.at_least_two() {
            Some(match (self.has_left_endpoint, self.has_right_endpoint) {
                (false, false) => DenseClass::Q,
                (true, false) => DenseClass::OneQ,
                (false, true) => DenseClass::QOne,
                (true, true) => DenseClass::OneQOne,
            })
        } else {
            None
        };
        self
    }

    pub fn is_single(&self) -> bool {
        self.size == SizeClass::Finite(1)
    }

    pub fn has_both_endpoints(&self) -> bool {
        self.has_left_endpoint && self.has_right_endpoint
    }

    /// The profile of the reversed order.
    pub fn mirrored(&self) -> Self {
        StructProfile {
            has_left_endpoint: self.has_right_endpoint,
            has_right_endpoint: self.has_left_endpoint,
            succ_complete: self.pred_complete,
            pred_complete: self.succ_complete,
            dense_class: self.dense_class.map(|d| match d {
                DenseClass::OneQ => DenseClass::QOne,
                DenseClass::QOne => DenseClass::OneQ,
                other => other,
            }),
            ..*self
        }
    }
}

/// Profile of the order denoted by `term`. Reversals and empty parts are
/// handled by desugaring first.
pub fn profile(term: &OrderTerm) -> StructProfile {
    profile_desugared(&term.desugar())
}

fn profile_desugared(term: &OrderTerm) -> StructProfile {
    use SizeClass::{CountablyInfinite as Inf, Finite};
    match term {
        OrderTerm::Empty => StructProfile::atom(Finite(0), false, false),
        OrderTerm::Single => StructProfile::atom(Finite(1), true, true),
        OrderTerm::Finite(n) => StructProfile::atom(Finite(u64::from(*n)), true, true),
        OrderTerm::Omega => StructProfile::atom(Inf, true, false),
        OrderTerm::OmegaStar => StructProfile::atom(Inf, false, true),
        OrderTerm::Zeta => StructProfile::atom(Inf, false, false),
        OrderTerm::Reverse(body) => profile_desugared(body).mirrored(),
        OrderTerm::Sum(a, b) => {
            let (a, b) = (profile_desugared(a), profile_desugared(b));
            if a.is_empty {
                return b;
            }
            if b.is_empty {
                return a;
            }
            StructProfile {
                is_empty: false,
                size: a.size.add(b.size),
                has_left_endpoint: a.has_left_endpoint,
                has_right_endpoint: b.has_right_endpoint,
                succ_pair_free: a.succ_pair_free && b.succ_pair_free && !(a.has_right_endpoint && b.has_left_endpoint),
                succ_complete: a.succ_complete && b.succ_complete && (!a.has_right_endpoint || b.has_left_endpoint),
                pred_complete: a.pred_complete && b.pred_complete && (!b.has_left_endpoint || a.has_right_endpoint),
                dense_class: None,
            }
            .with_dense_class()
        }
        OrderTerm::Product(index, fiber) => {
            let (x, y) = (profile_desugared(index), profile_desugared(fiber));
            if x.is_empty || y.is_empty {
                return StructProfile::atom(Finite(0), false, false);
            }
            // The copy boundary (x, max) -> (succ x, min) only exists when
            // the index has at least two points.
            let crosses = x.size.at_least_two();
            StructProfile {
                is_empty: false,
                size: x.size.mul(y.size),
                has_left_endpoint: x.has_left_endpoint && y.has_left_endpoint,
                has_right_endpoint: x.has_right_endpoint && y.has_right_endpoint,
                succ_pair_free: y.succ_pair_free && (!y.has_right_endpoint || !y.has_left_endpoint || x.succ_pair_free),
                succ_complete: y.succ_complete
                    && (!(y.has_right_endpoint && crosses) || (y.has_left_endpoint && x.succ_complete)),
                pred_complete: y.pred_complete
                    && (!(y.has_left_endpoint && crosses) || (y.has_right_endpoint && x.pred_complete)),
                dense_class: None,
            }
            .with_dense_class()
        }
        OrderTerm::Shuffle(blocks) => {
            let blocks: Vec<StructProfile> = blocks.iter().map(profile_desugared).collect();
            StructProfile {
                is_empty: false,
                size: Inf,
                has_left_endpoint: false,
                has_right_endpoint: false,
                succ_pair_free: blocks.iter().all(|b| b.succ_pair_free),
                succ_complete: blocks.iter().all(|b| b.succ_complete && !b.has_right_endpoint),
                pred_complete: blocks.iter().all(|b| b.pred_complete && !b.has_left_endpoint),
                dense_class: None,
            }
            .with_dense_class()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn p(s: &str) -> StructProfile {
        profile(&parse(s).unwrap())
    }

    #[test]
    fn one_q_one_is_dense_with_both_endpoints() {
        let pr = p("1 + Q + 1");
        assert!(pr.has_left_endpoint && pr.has_right_endpoint);
        assert!(pr.succ_pair_free);
        assert_eq!(pr.dense_class, Some(DenseClass::OneQOne));
        assert_eq!(p("Q").dense_class, Some(DenseClass::Q));
        assert_eq!(p("1 + Q").dense_class, Some(DenseClass::OneQ));
        assert_eq!(p("Q + 1").dense_class, Some(DenseClass::QOne));
    }

    #[test]
    fn n_qz_nstar_is_succ_and_pred_complete() {
        let pr = p("N + Q[Z] + N~");
        assert!(pr.has_left_endpoint && pr.has_right_endpoint);
        assert!(pr.succ_complete && pr.pred_complete);
        assert!(!pr.succ_pair_free);
        assert_eq!(pr.dense_class, None);
    }

    #[test]
    fn shuffle_of_n_and_z() {
        let pr = p("Q[N,Z]");
        assert!(!pr.has_left_endpoint && !pr.has_right_endpoint);
        assert!(pr.succ_complete);
        assert!(!pr.pred_complete);
    }

    #[test]
    fn single_fiber_reduces_to_index() {
        for s in ["N", "N~", "Z", "3", "Q", "1 + Q + 1", "N + N~", "Q[N,Z]", "Z + Q[Z]"] {
            let t = parse(s).unwrap();
            let prod = OrderTerm::product(t.clone(), OrderTerm::Single);
            assert_eq!(profile(&prod), profile(&t), "{s}");
        }
    }

    #[test]
    fn single_index_reduces_to_fiber() {
        for s in ["N", "N~", "Z", "3", "Q", "1 + Q + 1", "N + N~", "Q[N,Z]", "Z + Q[Z]"] {
            let t = parse(s).unwrap();
            let prod = OrderTerm::product(OrderTerm::Single, t.clone());
            assert_eq!(profile(&prod), profile(&t), "{s}");
        }
    }

    #[test]
    fn finite_and_empty() {
        let pr = p("0");
        assert!(pr.is_empty);
        assert_eq!(pr.size, SizeClass::Finite(0));
        assert!(!pr.has_left_endpoint && !pr.has_right_endpoint);
        assert_eq!(p("2 + 3").size, SizeClass::Finite(5));
        assert_eq!(p("2 * 3").size, SizeClass::Finite(6));
        assert_eq!(p("0 * N").size, SizeClass::Finite(0));
        assert!(p("1").succ_pair_free);
        assert_eq!(p("1").dense_class, None);
        assert!(!p("2").succ_pair_free);
    }

    #[test]
    fn products_across_copies() {
        // N*(N~) = ... has copies with maxima followed by copies without minima.
        let pr = p("N*N~");
        assert!(!pr.succ_complete);
        assert!(pr.pred_complete);
        assert!(p("(N + N~)*2").succ_complete);
        assert!(p("2*(N + N~)").succ_complete && p("2*(N + N~)").pred_complete);
        assert!(!p("Q*2").succ_complete);
        assert!(!p("Q*2").succ_pair_free);
        assert!(p("(1 + Q + 1)*(1 + Q + 1)").succ_pair_free);
        assert!(!p("2*(1 + Q + 1)").succ_pair_free);
    }

    #[test]
    fn mirror_law_on_reversal() {
        for s in ["N + Q[Z]", "1 + Q", "N*N~", "Q[N, 1 + Z]", "2*(N + Q)", "N + Q[Z] + N~"] {
            let t = parse(s).unwrap();
            assert_eq!(profile(&OrderTerm::reverse(t.clone())), profile(&t).mirrored(), "{s}");
        }
    }
}
