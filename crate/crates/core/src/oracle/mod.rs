//! Concrete realizations of terms as countable orders.
//!
//! Every point of the order a term denotes has a [`PointCode`] mirroring
//! the term tree. Shuffle positions are nodes of the Stern–Brocot tree,
//! written as strings over `{L, R}`; the block at a position is chosen by
//! the string length modulo the number of blocks, which makes every block
//! dense in the shuffle.
//!
//! The oracle works on terms as written. Reversal is interpreted directly
//! rather than through desugaring, so it is independent of the symbolic
//! side.

mod check;
mod enumerate;
mod matching;
mod search;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::term::OrderTerm;

pub use check::{cross_check, CheckReport, CheckStatus, PredicateOutcome};
pub use enumerate::{codes_of_weight, enumerate, random_code};
pub use matching::{back_and_forth, back_and_forth_colored, Matching};
pub use search::first_in;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Dir {
    L,
    R,
}

/// A point of a realized term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointCode {
    /// The point of `1`.
    Unit,
    /// A point of a finite order.
    Idx(u32),
    /// A point of `N` or `N~`.
    Nat(u64),
    /// A point of `Z`.
    Int(i64),
    /// A point of a sum: side 0 or 1.
    Side(u8, Box<PointCode>),
    /// A point of a product: index point, then fiber point.
    Pair(Box<PointCode>, Box<PointCode>),
    /// A point of a shuffle: position, then a point of the block at it.
    Shuf(Vec<Dir>, Box<PointCode>),
}

impl PointCode {
    pub fn side(tag: u8, inner: PointCode) -> Self {
        PointCode::Side(tag, Box::new(inner))
    }

    pub fn pair(index: PointCode, fiber: PointCode) -> Self {
        PointCode::Pair(Box::new(index), Box::new(fiber))
    }

    pub fn shuf(pos: Vec<Dir>, inner: PointCode) -> Self {
        PointCode::Shuf(pos, Box::new(inner))
    }

    /// Enumeration weight.
    pub fn weight(&self) -> u64 {
        match self {
            PointCode::Unit => 0,
            PointCode::Idx(i) => u64::from(*i),
            PointCode::Nat(n) => *n,
            PointCode::Int(k) => k.unsigned_abs(),
            PointCode::Side(_, c) => c.weight(),
            PointCode::Pair(a, b) => a.weight().saturating_add(b.weight()),
            PointCode::Shuf(p, c) => (p.len() as u64).saturating_add(c.weight()),
        }
    }

    /// Enumeration key: weight first, then structure.
    pub fn key(&self) -> (u64, &PointCode) {
        (self.weight(), self)
    }
}

impl fmt::Display for PointCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointCode::Unit => write!(f, "*"),
            PointCode::Idx(i) => write!(f, "{i}"),
            PointCode::Nat(n) => write!(f, "{n}"),
            PointCode::Int(k) => write!(f, "{k}"),
            PointCode::Side(s, c) => write!(f, "{s}:{c}"),
            PointCode::Pair(a, b) => write!(f, "({a},{b})"),
            PointCode::Shuf(p, c) => {
                write!(f, "[")?;
                for d in p {
                    write!(f, "{}", if *d == Dir::L { 'L' } else { 'R' })?;
                }
                write!(f, "]")?;
                if **c != PointCode::Unit {
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("code {code} is not a point of {term}")]
    InvalidCode { code: String, term: String },
    #[error("shuffle position too deep to represent")]
    Overflow,
    #[error("invalid block correspondence: {0}")]
    InvalidBijection(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn invalid(t: &OrderTerm, c: &PointCode) -> OracleError {
    OracleError::InvalidCode { code: c.to_string(), term: t.to_string() }
}

/// Checks that `c` names a point of `t`.
pub fn validate_code(t: &OrderTerm, c: &PointCode) -> Result<(), OracleError> {
    let ok = match (t, c) {
        (OrderTerm::Single, PointCode::Unit) => true,
        (OrderTerm::Finite(n), PointCode::Idx(i)) => i < n,
        (OrderTerm::Omega | OrderTerm::OmegaStar, PointCode::Nat(_)) => true,
        (OrderTerm::Zeta, PointCode::Int(_)) => true,
        (OrderTerm::Reverse(b), _) => return validate_code(b, c),
        (OrderTerm::Sum(x, y), PointCode::Side(s, inner)) => {
            return match s {
                0 => validate_code(x, inner),
                1 => validate_code(y, inner),
                _ => Err(invalid(t, c)),
            }
        }
        (OrderTerm::Product(x, y), PointCode::Pair(i, j)) => {
            validate_code(x, i)?;
            return validate_code(y, j);
        }
        (OrderTerm::Shuffle(blocks), PointCode::Shuf(p, inner)) if !blocks.is_empty() => {
            return validate_code(&blocks[p.len() % blocks.len()], inner);
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(invalid(t, c))
    }
}

/// Stern–Brocot order on tree positions.
pub fn compare_positions(p: &[Dir], q: &[Dir]) -> Ordering {
    for (a, b) in p.iter().zip(q) {
        if a != b {
            return a.cmp(b);
        }
    }
    match p.len().cmp(&q.len()) {
        Ordering::Equal => Ordering::Equal,
        // q extends p: its next step says which side of p it lies on.
        Ordering::Less => match q[p.len()] {
            Dir::L => Ordering::Greater,
            Dir::R => Ordering::Less,
        },
        Ordering::Greater => match p[q.len()] {
            Dir::L => Ordering::Less,
            Dir::R => Ordering::Greater,
        },
    }
}

/// Order comparison of two points of `t`.
pub fn compare(t: &OrderTerm, a: &PointCode, b: &PointCode) -> Result<Ordering, OracleError> {
    validate_code(t, a)?;
    validate_code(t, b)?;
    Ok(cmp(t, a, b))
}

/// Comparison of validated codes.
pub(crate) fn cmp(t: &OrderTerm, a: &PointCode, b: &PointCode) -> Ordering {
    match (t, a, b) {
        (OrderTerm::Reverse(body), _, _) => cmp(body, a, b).reverse(),
        (_, PointCode::Unit, PointCode::Unit) => Ordering::Equal,
        (_, PointCode::Idx(i), PointCode::Idx(j)) => i.cmp(j),
        (OrderTerm::OmegaStar, PointCode::Nat(i), PointCode::Nat(j)) => j.cmp(i),
        (_, PointCode::Nat(i), PointCode::Nat(j)) => i.cmp(j),
        (_, PointCode::Int(i), PointCode::Int(j)) => i.cmp(j),
        (OrderTerm::Sum(x, y), PointCode::Side(s, c), PointCode::Side(u, d)) => {
            s.cmp(u).then_with(|| if *s == 0 { cmp(x, c, d) } else { cmp(y, c, d) })
        }
        (OrderTerm::Product(x, y), PointCode::Pair(i, j), PointCode::Pair(k, l)) => {
            cmp(x, i, k).then_with(|| cmp(y, j, l))
        }
        (OrderTerm::Shuffle(blocks), PointCode::Shuf(p, c), PointCode::Shuf(q, d)) => {
            compare_positions(p, q).then_with(|| cmp(&blocks[p.len() % blocks.len()], c, d))
        }
        _ => unreachable!("codes are validated against the term"),
    }
}

/// Number of points, or `None` when infinite.
pub fn point_count(t: &OrderTerm) -> Option<u64> {
    match t {
        OrderTerm::Empty => Some(0),
        OrderTerm::Single => Some(1),
        OrderTerm::Finite(n) => Some(u64::from(*n)),
        OrderTerm::Omega | OrderTerm::OmegaStar | OrderTerm::Zeta | OrderTerm::Shuffle(_) => None,
        OrderTerm::Reverse(b) => point_count(b),
        OrderTerm::Sum(x, y) => Some(point_count(x)?.checked_add(point_count(y)?)?),
        OrderTerm::Product(x, y) => match (point_count(x), point_count(y)) {
            (Some(0), _) | (_, Some(0)) => Some(0),
            (Some(a), Some(b)) => a.checked_mul(b),
            _ => None,
        },
    }
}

fn has_points(t: &OrderTerm) -> bool {
    point_count(t) != Some(0)
}

/// The least point, if any.
pub fn min_code(t: &OrderTerm) -> Option<PointCode> {
    match t {
        OrderTerm::Empty | OrderTerm::OmegaStar | OrderTerm::Zeta | OrderTerm::Shuffle(_) => None,
        OrderTerm::Single => Some(PointCode::Unit),
        OrderTerm::Finite(_) => Some(PointCode::Idx(0)),
        OrderTerm::Omega => Some(PointCode::Nat(0)),
        OrderTerm::Reverse(b) => max_code(b),
        OrderTerm::Sum(x, y) => {
            if has_points(x) {
                min_code(x).map(|c| PointCode::side(0, c))
            } else {
                min_code(y).map(|c| PointCode::side(1, c))
            }
        }
        OrderTerm::Product(x, y) => {
            if !has_points(x) || !has_points(y) {
                return None;
            }
            Some(PointCode::pair(min_code(x)?, min_code(y)?))
        }
    }
}

/// The greatest point, if any.
pub fn max_code(t: &OrderTerm) -> Option<PointCode> {
    match t {
        OrderTerm::Empty | OrderTerm::Omega | OrderTerm::Zeta | OrderTerm::Shuffle(_) => None,
        OrderTerm::Single => Some(PointCode::Unit),
        OrderTerm::Finite(n) => Some(PointCode::Idx(n - 1)),
        OrderTerm::OmegaStar => Some(PointCode::Nat(0)),
        OrderTerm::Reverse(b) => min_code(b),
        OrderTerm::Sum(x, y) => {
            if has_points(y) {
                max_code(y).map(|c| PointCode::side(1, c))
            } else {
                max_code(x).map(|c| PointCode::side(0, c))
            }
        }
        OrderTerm::Product(x, y) => {
            if !has_points(x) || !has_points(y) {
                return None;
            }
            Some(PointCode::pair(max_code(x)?, max_code(y)?))
        }
    }
}

/// The immediate successor of a validated code, if any.
pub(crate) fn succ(t: &OrderTerm, a: &PointCode) -> Option<PointCode> {
    match (t, a) {
        (OrderTerm::Reverse(body), _) => pred(body, a),
        (OrderTerm::Single, _) => None,
        (OrderTerm::Finite(n), PointCode::Idx(i)) => (i + 1 < *n).then(|| PointCode::Idx(i + 1)),
        (OrderTerm::Omega, PointCode::Nat(i)) => Some(PointCode::Nat(i + 1)),
        (OrderTerm::OmegaStar, PointCode::Nat(i)) => i.checked_sub(1).map(PointCode::Nat),
        (OrderTerm::Zeta, PointCode::Int(k)) => Some(PointCode::Int(k + 1)),
        (OrderTerm::Sum(x, y), PointCode::Side(0, c)) => match succ(x, c) {
            Some(s) => Some(PointCode::side(0, s)),
            None if max_code(x).as_ref() == Some(&**c) => min_code(y).map(|m| PointCode::side(1, m)),
            None => None,
        },
        (OrderTerm::Sum(_, y), PointCode::Side(_, c)) => succ(y, c).map(|s| PointCode::side(1, s)),
        (OrderTerm::Product(x, y), PointCode::Pair(i, j)) => match succ(y, j) {
            Some(s) => Some(PointCode::pair((**i).clone(), s)),
            None if max_code(y).as_ref() == Some(&**j) => Some(PointCode::pair(succ(x, i)?, min_code(y)?)),
            None => None,
        },
        (OrderTerm::Shuffle(blocks), PointCode::Shuf(p, c)) => {
            succ(&blocks[p.len() % blocks.len()], c).map(|s| PointCode::shuf(p.clone(), s))
        }
        _ => unreachable!("codes are validated against the term"),
    }
}

/// The immediate predecessor of a validated code, if any.
pub(crate) fn pred(t: &OrderTerm, a: &PointCode) -> Option<PointCode> {
    match (t, a) {
        (OrderTerm::Reverse(body), _) => succ(body, a),
        (OrderTerm::Single, _) => None,
        (OrderTerm::Finite(_), PointCode::Idx(i)) => i.checked_sub(1).map(PointCode::Idx),
        (OrderTerm::Omega, PointCode::Nat(i)) => i.checked_sub(1).map(PointCode::Nat),
        (OrderTerm::OmegaStar, PointCode::Nat(i)) => Some(PointCode::Nat(i + 1)),
        (OrderTerm::Zeta, PointCode::Int(k)) => Some(PointCode::Int(k - 1)),
        (OrderTerm::Sum(x, y), PointCode::Side(1, c)) => match pred(y, c) {
            Some(s) => Some(PointCode::side(1, s)),
            None if min_code(y).as_ref() == Some(&**c) => max_code(x).map(|m| PointCode::side(0, m)),
            None => None,
        },
        (OrderTerm::Sum(x, _), PointCode::Side(_, c)) => pred(x, c).map(|s| PointCode::side(0, s)),
        (OrderTerm::Product(x, y), PointCode::Pair(i, j)) => match pred(y, j) {
            Some(s) => Some(PointCode::pair((**i).clone(), s)),
            None if min_code(y).as_ref() == Some(&**j) => Some(PointCode::pair(pred(x, i)?, max_code(y)?)),
            None => None,
        },
        (OrderTerm::Shuffle(blocks), PointCode::Shuf(p, c)) => {
            pred(&blocks[p.len() % blocks.len()], c).map(|s| PointCode::shuf(p.clone(), s))
        }
        _ => unreachable!("codes are validated against the term"),
    }
}

pub fn successor(t: &OrderTerm, a: &PointCode) -> Result<Option<PointCode>, OracleError> {
    validate_code(t, a)?;
    Ok(succ(t, a))
}

pub fn predecessor(t: &OrderTerm, a: &PointCode) -> Result<Option<PointCode>, OracleError> {
    validate_code(t, a)?;
    Ok(pred(t, a))
}

/// Local facts about one point of the whole order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointFacts {
    pub is_min: bool,
    pub is_max: bool,
    pub has_successor: bool,
    pub has_predecessor: bool,
}

pub fn point_profile(t: &OrderTerm, a: &PointCode) -> Result<PointFacts, OracleError> {
    validate_code(t, a)?;
    Ok(facts(t, a))
}

pub(crate) fn facts(t: &OrderTerm, a: &PointCode) -> PointFacts {
    PointFacts {
        is_min: min_code(t).as_ref() == Some(a),
        is_max: max_code(t).as_ref() == Some(a),
        has_successor: succ(t, a).is_some(),
        has_predecessor: pred(t, a).is_some(),
    }
}

/// The first point, in enumeration order, strictly between `a` and `b`.
pub fn between(t: &OrderTerm, a: &PointCode, b: &PointCode) -> Result<Option<PointCode>, OracleError> {
    validate_code(t, a)?;
    validate_code(t, b)?;
    if cmp(t, a, b) != Ordering::Less {
        return Ok(None);
    }
    first_in(t, Some(a), Some(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;
    use Dir::{L, R};

    fn t(s: &str) -> OrderTerm {
        parse(s).unwrap()
    }

    fn q(p: &[Dir]) -> PointCode {
        PointCode::shuf(p.to_vec(), PointCode::Unit)
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare(&t("Q"), &q(&[L]), &q(&[])).unwrap(), Ordering::Less);
        assert_eq!(compare(&t("Z"), &PointCode::Int(-3), &PointCode::Int(5)).unwrap(), Ordering::Less);
        assert_eq!(compare(&t("N~"), &PointCode::Nat(7), &PointCode::Nat(2)).unwrap(), Ordering::Less);
        assert_eq!(compare(&t("Q"), &q(&[L, R]), &q(&[])).unwrap(), Ordering::Less);
        assert_eq!(compare(&t("Q"), &q(&[L, R]), &q(&[L])).unwrap(), Ordering::Greater);
        assert!(compare(&t("Z"), &PointCode::Nat(1), &PointCode::Int(0)).is_err());
        assert!(compare(&t("3"), &PointCode::Idx(3), &PointCode::Idx(0)).is_err());
    }

    #[test]
    fn local_facts() {
        let x = t("N + Q[Z]");
        let f = point_profile(&x, &PointCode::side(0, PointCode::Nat(5))).unwrap();
        assert!(f.has_successor && f.has_predecessor && !f.is_min);
        assert!(point_profile(&x, &PointCode::side(0, PointCode::Nat(0))).unwrap().is_min);
        let f = point_profile(&t("Q"), &q(&[R, L])).unwrap();
        assert!(!f.has_successor && !f.has_predecessor);
        // the last point of N~ is followed by the first of N
        let z = t("N~ + N");
        let last = PointCode::side(0, PointCode::Nat(0));
        assert_eq!(successor(&z, &last).unwrap(), Some(PointCode::side(1, PointCode::Nat(0))));
    }

    #[test]
    fn between_examples() {
        assert_eq!(between(&t("Q"), &q(&[L]), &q(&[])).unwrap(), Some(q(&[L, R])));
        assert_eq!(between(&t("Z"), &PointCode::Int(1), &PointCode::Int(2)).unwrap(), None);
        let p = vec![R, L];
        let a = PointCode::shuf(p.clone(), PointCode::Int(4));
        let b = PointCode::shuf(p.clone(), PointCode::Int(9));
        assert_eq!(between(&t("Q[Z]"), &a, &b).unwrap(), Some(PointCode::shuf(p, PointCode::Int(5))));
    }

    #[test]
    fn reversal_swaps_everything() {
        let x = t("(1 + N)~");
        assert_eq!(max_code(&x), Some(PointCode::side(0, PointCode::Unit)));
        assert_eq!(min_code(&x), None);
        let a = PointCode::side(1, PointCode::Nat(0));
        assert_eq!(successor(&x, &a).unwrap(), Some(PointCode::side(0, PointCode::Unit)));
    }

    #[test]
    fn display() {
        let c = PointCode::pair(PointCode::side(1, PointCode::Int(-2)), q(&[L, R]));
        assert_eq!(c.to_string(), "(1:-2,[LR])");
    }
}
