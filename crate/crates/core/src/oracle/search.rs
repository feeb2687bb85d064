use std::cmp::Ordering;

use super::{cmp, validate_code, Dir, OracleError, PointCode};
use crate::term::OrderTerm;

// Positions are mapped to dyadic rationals in (0, 1): the root is 1/2 and
// a child at depth d moves by 2^-(d+2). Strings of length l are exactly
// the odd multiples of 2^-(l+1), in tree order.
const MAX_DEPTH: usize = 126;

fn value_at_scale(p: &[Dir], exp: u32) -> u128 {
    let mut v: u128 = 1 << (exp - 1);
    for (d, dir) in p.iter().enumerate() {
        let step: u128 = 1 << (exp - 2 - d as u32);
        match dir {
            Dir::L => v -= step,
            Dir::R => v += step,
        }
    }
    v
}

fn string_of(m: u128, len: usize) -> Vec<Dir> {
    let mut out = Vec::with_capacity(len);
    let mut cur: u128 = 1 << len;
    for d in 0..len {
        let step: u128 = 1 << (len - 1 - d);
        if m < cur {
            out.push(Dir::L);
            cur -= step;
        } else {
            out.push(Dir::R);
            cur += step;
        }
    }
    out
}

/// The least string of length `len`, in tree order, strictly between the
/// given positions (`None` bounds are open ends).
pub(crate) fn least_position_of_length(
    len: usize,
    lo: Option<&[Dir]>,
    hi: Option<&[Dir]>,
) -> Result<Option<Vec<Dir>>, OracleError> {
    let deepest = len.max(lo.map_or(0, <[Dir]>::len)).max(hi.map_or(0, <[Dir]>::len));
    if deepest > MAX_DEPTH {
        return Err(OracleError::Overflow);
    }
    let exp = deepest as u32 + 1;
    let lo_v = lo.map_or(0, |p| value_at_scale(p, exp));
    let hi_v = hi.map_or(1u128 << exp, |p| value_at_scale(p, exp));
    let unit: u128 = 1 << (exp - len as u32 - 1);
    let mut m = lo_v / unit + 1;
    if m.is_multiple_of(2) {
        m += 1;
    }
    if m >= (1u128 << (len + 1)) || m * unit >= hi_v {
        return Ok(None);
    }
    Ok(Some(string_of(m, len)))
}

/// The least position strictly between the bounds whose length is
/// congruent to `residue` modulo `modulus`.
pub(crate) fn least_position_with_residue(
    residue: usize,
    modulus: usize,
    lo: Option<&[Dir]>,
    hi: Option<&[Dir]>,
) -> Result<Option<Vec<Dir>>, OracleError> {
    let limit = lo.map_or(0, <[Dir]>::len).max(hi.map_or(0, <[Dir]>::len)) + modulus + 1;
    let mut len = residue;
    while len <= limit {
        if let Some(p) = least_position_of_length(len, lo, hi)? {
            return Ok(Some(p));
        }
        len += modulus;
    }
    Ok(None)
}

fn better(best: &Option<PointCode>, cand: &PointCode) -> bool {
    best.as_ref().is_none_or(|b| cand.key() < b.key())
}

fn keep_best(best: &mut Option<PointCode>, cand: Option<PointCode>) {
    if let Some(c) = cand {
        if better(best, &c) {
            *best = Some(c);
        }
    }
}

/// The first point of `t` in enumeration order (least weight, then least
/// code) lying strictly between `lo` and `hi`; a missing bound is open.
pub fn first_in(
    t: &OrderTerm,
    lo: Option<&PointCode>,
    hi: Option<&PointCode>,
) -> Result<Option<PointCode>, OracleError> {
    for c in lo.iter().chain(hi.iter()) {
        validate_code(t, c)?;
    }
    search(t, lo, hi)
}

fn search(t: &OrderTerm, lo: Option<&PointCode>, hi: Option<&PointCode>) -> Result<Option<PointCode>, OracleError> {
    if let (Some(a), Some(b)) = (lo, hi) {
        if cmp(t, a, b) != Ordering::Less {
            return Ok(None);
        }
    }
    Ok(match t {
        OrderTerm::Empty => None,
        OrderTerm::Single => (lo.is_none() && hi.is_none()).then_some(PointCode::Unit),
        OrderTerm::Finite(n) => {
            let from = match lo {
                Some(PointCode::Idx(i)) => i + 1,
                _ => 0,
            };
            let to = match hi {
                Some(PointCode::Idx(j)) => *j,
                _ => *n,
            };
            (from < to).then_some(PointCode::Idx(from))
        }
        OrderTerm::Omega => {
            let from = match lo {
                Some(PointCode::Nat(i)) => i + 1,
                _ => 0,
            };
            match hi {
                Some(PointCode::Nat(j)) if from >= *j => None,
                _ => Some(PointCode::Nat(from)),
            }
        }
        OrderTerm::OmegaStar => {
            // Larger values lie further left, so the upper bound gives the
            // smallest admissible value.
            let from = match hi {
                Some(PointCode::Nat(j)) => j + 1,
                _ => 0,
            };
            match lo {
                Some(PointCode::Nat(i)) if from >= *i => None,
                _ => Some(PointCode::Nat(from)),
            }
        }
        OrderTerm::Zeta => {
            let lo_v = match lo {
                Some(PointCode::Int(i)) => Some(*i),
                _ => None,
            };
            let hi_v = match hi {
                Some(PointCode::Int(j)) => Some(*j),
                _ => None,
            };
            let inside = |k: i64| lo_v.is_none_or(|l| l < k) && hi_v.is_none_or(|h| k < h);
            if inside(0) {
                Some(PointCode::Int(0))
            } else if lo_v.is_some_and(|l| l >= 0) {
                let k = lo_v.unwrap_or(0) + 1;
                inside(k).then_some(PointCode::Int(k))
            } else {
                let k = hi_v.unwrap_or(0) - 1;
                inside(k).then_some(PointCode::Int(k))
            }
        }
        OrderTerm::Reverse(body) => search(body, hi, lo)?,
        OrderTerm::Sum(x, y) => {
            let mut best = None;
            for (tag, part) in [(0u8, &**x), (1u8, &**y)] {
                let lower = match lo {
                    None => None,
                    Some(PointCode::Side(s, c)) if *s == tag => Some(&**c),
                    Some(PointCode::Side(s, _)) if *s > tag => continue,
                    Some(_) => None,
                };
                let upper = match hi {
                    None => None,
                    Some(PointCode::Side(s, c)) if *s == tag => Some(&**c),
                    Some(PointCode::Side(s, _)) if *s < tag => continue,
                    Some(_) => None,
                };
                keep_best(&mut best, search(part, lower, upper)?.map(|c| PointCode::side(tag, c)));
            }
            best
        }
        OrderTerm::Product(x, y) => {
            fn split(c: Option<&PointCode>) -> Option<(&PointCode, &PointCode)> {
                match c {
                    Some(PointCode::Pair(i, j)) => Some((&**i, &**j)),
                    _ => None,
                }
            }
            let (lo, hi) = (split(lo), split(hi));
            if let (Some((i1, j1)), Some((i2, j2))) = (lo, hi) {
                if i1 == i2 {
                    return Ok(search(y, Some(j1), Some(j2))?.map(|j| PointCode::pair(i1.clone(), j)));
                }
            }
            let mut best = None;
            if let Some((i1, j1)) = lo {
                keep_best(&mut best, search(y, Some(j1), None)?.map(|j| PointCode::pair(i1.clone(), j)));
            }
            if let Some((i2, j2)) = hi {
                keep_best(&mut best, search(y, None, Some(j2))?.map(|j| PointCode::pair(i2.clone(), j)));
            }
            // Any index strictly between, paired with the globally first
            // fiber point: weights add, so both parts are minimized alone.
            if let (Some(i), Some(j)) = (search(x, lo.map(|p| p.0), hi.map(|p| p.0))?, search(y, None, None)?) {
                keep_best(&mut best, Some(PointCode::pair(i, j)));
            }
            best
        }
        OrderTerm::Shuffle(blocks) => {
            let k = blocks.len();
            fn split(c: Option<&PointCode>) -> Option<(&[Dir], &PointCode)> {
                match c {
                    Some(PointCode::Shuf(p, inner)) => Some((p.as_slice(), &**inner)),
                    _ => None,
                }
            }
            let (lo, hi) = (split(lo), split(hi));
            let block = |p: &[Dir]| &blocks[p.len() % k];
            if let (Some((p1, c1)), Some((p2, c2))) = (lo, hi) {
                if p1 == p2 {
                    return Ok(search(block(p1), Some(c1), Some(c2))?.map(|c| PointCode::shuf(p1.to_vec(), c)));
                }
            }
            let mut best = None;
            if let Some((p1, c1)) = lo {
                keep_best(&mut best, search(block(p1), Some(c1), None)?.map(|c| PointCode::shuf(p1.to_vec(), c)));
            }
            if let Some((p2, c2)) = hi {
                keep_best(&mut best, search(block(p2), None, Some(c2))?.map(|c| PointCode::shuf(p2.to_vec(), c)));
            }
            let firsts = blocks.iter().map(|b| search(b, None, None)).collect::<Result<Vec<_>, _>>()?;
            let (plo, phi) = (lo.map(|x| x.0), hi.map(|x| x.0));
            let mut len = 0usize;
            loop {
                if best.as_ref().is_some_and(|b: &PointCode| b.weight() < len as u64) {
                    break;
                }
                if len > MAX_DEPTH {
                    if best.is_none() {
                        return Err(OracleError::Overflow);
                    }
                    break;
                }
                if let (Some(p), Some(first)) = (least_position_of_length(len, plo, phi)?, &firsts[len % k]) {
                    keep_best(&mut best, Some(PointCode::shuf(p, first.clone())));
                }
                len += 1;
            }
            best
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Dir::{L, R};

    #[test]
    fn positions_of_length() {
        assert_eq!(least_position_of_length(0, None, None).unwrap(), Some(vec![]));
        assert_eq!(least_position_of_length(1, None, None).unwrap(), Some(vec![L]));
        assert_eq!(least_position_of_length(2, Some(&[L]), Some(&[])).unwrap(), Some(vec![L, R]));
        assert_eq!(least_position_of_length(1, Some(&[L]), Some(&[])).unwrap(), None);
        assert_eq!(least_position_of_length(3, Some(&[]), None).unwrap(), Some(vec![R, L, L]));
        assert_eq!(least_position_of_length(0, Some(&[L, R]), Some(&[R])).unwrap(), Some(vec![]));
    }

    #[test]
    fn residue_search() {
        let p = least_position_with_residue(1, 3, Some(&[L]), Some(&[L, R])).unwrap().unwrap();
        assert_eq!(p.len() % 3, 1);
        assert_eq!(super::super::compare_positions(&[L], &p), Ordering::Less);
        assert_eq!(super::super::compare_positions(&p, &[L, R]), Ordering::Less);
    }
}
