use std::cmp::Ordering;

use serde::Serialize;

use super::search::least_position_with_residue;
use super::{cmp, compare_positions, enumerate, first_in, max_code, min_code, Dir, OracleError, PointCode};
use crate::term::OrderTerm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Matching {
    /// Matched pairs `(x point, y point)` in the order they were chosen.
    PartialIso(Vec<(PointCode, PointCode)>),
    /// No order-consistent extension exists at this (1-based) round.
    Failure { round: usize },
}

/// One direction of a matching problem: points of `src` are mapped into
/// `dst`. `flip` swaps the roles of the stored pair components.
#[derive(Clone, Copy)]
struct View<'a> {
    src: &'a OrderTerm,
    dst: &'a OrderTerm,
    flip: bool,
}

impl<'a> View<'a> {
    fn new(x: &'a OrderTerm, y: &'a OrderTerm, flip: bool) -> Self {
        if flip {
            View { src: y, dst: x, flip }
        } else {
            View { src: x, dst: y, flip }
        }
    }

    fn orient<'p>(&self, pair: &'p (PointCode, PointCode)) -> (&'p PointCode, &'p PointCode) {
        if self.flip {
            (&pair.1, &pair.0)
        } else {
            (&pair.0, &pair.1)
        }
    }

    fn record(&self, a: PointCode, b: PointCode) -> (PointCode, PointCode) {
        if self.flip {
            (b, a)
        } else {
            (a, b)
        }
    }
}

/// Dense back-and-forth state between two orders.
#[derive(Clone, Default)]
struct DenseMatch {
    pairs: Vec<(PointCode, PointCode)>,
}

impl DenseMatch {
    /// Image of `a` under the current matching, extended if needed.
    fn image(&mut self, view: View<'_>, a: &PointCode) -> Result<Option<PointCode>, OracleError> {
        let mut lower: Option<(&PointCode, &PointCode)> = None;
        let mut upper: Option<(&PointCode, &PointCode)> = None;
        for pair in &self.pairs {
            let (s, d) = view.orient(pair);
            match cmp(view.src, s, a) {
                Ordering::Equal => return Ok(Some(d.clone())),
                Ordering::Less => {
                    if lower.is_none_or(|(ls, _)| cmp(view.src, s, ls) == Ordering::Greater) {
                        lower = Some((s, d));
                    }
                }
                Ordering::Greater => {
                    if upper.is_none_or(|(us, _)| cmp(view.src, s, us) == Ordering::Less) {
                        upper = Some((s, d));
                    }
                }
            }
        }
        let (lower, upper) = (lower.map(|p| p.1.clone()), upper.map(|p| p.1.clone()));
        let within = |b: &PointCode| {
            lower.as_ref().is_none_or(|l| cmp(view.dst, l, b) == Ordering::Less)
                && upper.as_ref().is_none_or(|u| cmp(view.dst, b, u) == Ordering::Less)
        };
        let (src_min, src_max) = (min_code(view.src), max_code(view.src));
        let (dst_min, dst_max) = (min_code(view.dst), max_code(view.dst));
        let is_min = src_min.as_ref() == Some(a);
        let is_max = src_max.as_ref() == Some(a);
        // Endpoints go to endpoints; every other point goes strictly inside.
        let image = if is_min || is_max {
            let target = if is_min { dst_min.clone() } else { dst_max.clone() };
            target.filter(|b| {
                within(b) && (dst_min.as_ref() == Some(b)) == is_min && (dst_max.as_ref() == Some(b)) == is_max
            })
        } else {
            let lo = lower.clone().or(dst_min);
            let hi = upper.clone().or(dst_max);
            first_in(view.dst, lo.as_ref(), hi.as_ref())?
        };
        if let Some(b) = &image {
            self.pairs.push(view.record(a.clone(), b.clone()));
        }
        Ok(image)
    }
}

fn least_unmatched(candidates: &[PointCode], matched: &[&PointCode]) -> Option<PointCode> {
    candidates.iter().find(|c| !matched.contains(c)).cloned()
}

/// Runs `rounds` rounds of back-and-forth, picking the least enumerated
/// unmatched point of `x` on odd rounds and of `y` on even rounds.
fn run<F>(x: &OrderTerm, y: &OrderTerm, rounds: usize, mut image: F) -> Result<Matching, OracleError>
where
    F: FnMut(View<'_>, &PointCode, &[(PointCode, PointCode)]) -> Result<Option<PointCode>, OracleError>,
{
    let xs = enumerate(x, rounds + 1);
    let ys = enumerate(y, rounds + 1);
    let mut pairs: Vec<(PointCode, PointCode)> = Vec::new();
    for round in 1..=rounds {
        let x_pick = least_unmatched(&xs, &pairs.iter().map(|p| &p.0).collect::<Vec<_>>());
        let y_pick = least_unmatched(&ys, &pairs.iter().map(|p| &p.1).collect::<Vec<_>>());
        let (flip, a) = match (round % 2 == 1, x_pick, y_pick) {
            (true, Some(a), _) | (false, Some(a), None) => (false, a),
            (false, _, Some(b)) | (true, None, Some(b)) => (true, b),
            (_, None, None) => break,
        };
        let view = View::new(x, y, flip);
        match image(view, &a, &pairs)? {
            Some(b) => pairs.push(view.record(a, b)),
            None => return Ok(Matching::Failure { round }),
        }
    }
    Ok(Matching::PartialIso(pairs))
}

fn verify(x: &OrderTerm, y: &OrderTerm, pairs: &[(PointCode, PointCode)]) -> Result<(), OracleError> {
    for (i, (a1, b1)) in pairs.iter().enumerate() {
        for (a2, b2) in &pairs[i + 1..] {
            let cx = cmp(x, a1, a2);
            if cx == Ordering::Equal || cx != cmp(y, b1, b2) {
                return Err(OracleError::Internal(format!(
                    "matched pairs ({a1}, {b1}) and ({a2}, {b2}) are not order-consistent"
                )));
            }
        }
    }
    Ok(())
}

/// Back-and-forth between two orders, respecting endpoints.
pub fn back_and_forth(x: &OrderTerm, y: &OrderTerm, rounds: usize) -> Result<Matching, OracleError> {
    let mut state = DenseMatch::default();
    let result = run(x, y, rounds, |view, a, _| state.image(view, a))?;
    if let Matching::PartialIso(pairs) = &result {
        verify(x, y, pairs)?;
    }
    Ok(result)
}

struct PositionPair {
    x: Vec<Dir>,
    y: Vec<Dir>,
    /// `None` when the two blocks are identical and points map to themselves.
    inner: Option<DenseMatch>,
}

/// Back-and-forth between two shuffles that also matches colors: a point in
/// block `i` of `x` is matched with a point in block `sigma[i]` of `y`.
pub fn back_and_forth_colored(
    x: &OrderTerm,
    y: &OrderTerm,
    sigma: &[usize],
    rounds: usize,
) -> Result<Matching, OracleError> {
    let (OrderTerm::Shuffle(xb), OrderTerm::Shuffle(yb)) = (x, y) else {
        return Err(OracleError::InvalidBijection("both orders must be shuffles".into()));
    };
    let mut seen = vec![false; yb.len()];
    if sigma.len() != xb.len() || xb.len() != yb.len() {
        return Err(OracleError::InvalidBijection("block counts differ".into()));
    }
    for &j in sigma {
        if j >= yb.len() || seen[j] {
            return Err(OracleError::InvalidBijection(format!("{sigma:?} is not a permutation")));
        }
        seen[j] = true;
    }
    let mut inverse = vec![0; sigma.len()];
    for (i, &j) in sigma.iter().enumerate() {
        inverse[j] = i;
    }

    let mut positions: Vec<PositionPair> = Vec::new();
    let result = run(x, y, rounds, |view, a, _| {
        let PointCode::Shuf(p, c) = a else {
            return Err(OracleError::Internal(format!("{a} is not a shuffle point")));
        };
        let (src_blocks, dst_blocks, map) = if view.flip { (yb, xb, inverse.as_slice()) } else { (xb, yb, sigma) };
        let orient =
            |pp: &PositionPair| if view.flip { (pp.y.clone(), pp.x.clone()) } else { (pp.x.clone(), pp.y.clone()) };
        let src_block = &src_blocks[p.len() % src_blocks.len()];
        let existing = positions.iter().position(|pp| orient(pp).0 == *p);
        let at = match existing {
            Some(i) => i,
            None => {
                let mut lower: Option<(Vec<Dir>, Vec<Dir>)> = None;
                let mut upper: Option<(Vec<Dir>, Vec<Dir>)> = None;
                for pp in &positions {
                    let (s, d) = orient(pp);
                    match compare_positions(&s, p) {
                        Ordering::Less => {
                            if lower.as_ref().is_none_or(|(l, _)| compare_positions(&s, l) == Ordering::Greater) {
                                lower = Some((s, d));
                            }
                        }
                        _ => {
                            if upper.as_ref().is_none_or(|(u, _)| compare_positions(&s, u) == Ordering::Less) {
                                upper = Some((s, d));
                            }
                        }
                    }
                }
                let color = map[p.len() % src_blocks.len()];
                let Some(q) = least_position_with_residue(
                    color,
                    dst_blocks.len(),
                    lower.as_ref().map(|l| l.1.as_slice()),
                    upper.as_ref().map(|u| u.1.as_slice()),
                )?
                else {
                    return Ok(None);
                };
                let dst_block = &dst_blocks[q.len() % dst_blocks.len()];
                let inner = (src_block != dst_block).then(DenseMatch::default);
                let (px, py) = if view.flip { (q, p.clone()) } else { (p.clone(), q) };
                positions.push(PositionPair { x: px, y: py, inner });
                positions.len() - 1
            }
        };
        let pp = &mut positions[at];
        let q = if view.flip { pp.x.clone() } else { pp.y.clone() };
        let dst_block = &dst_blocks[q.len() % dst_blocks.len()];
        let inner_image = match &mut pp.inner {
            None => Some((**c).clone()),
            Some(dense) => {
                let (bx, by) = if view.flip { (dst_block, src_block) } else { (src_block, dst_block) };
                dense.image(View::new(bx, by, view.flip), c)?
            }
        };
        Ok(inner_image.map(|d| PointCode::shuf(q, d)))
    })?;
    if let Matching::PartialIso(pairs) = &result {
        verify(x, y, pairs)?;
        for (a, b) in pairs {
            if let (PointCode::Shuf(p, _), PointCode::Shuf(q, _)) = (a, b) {
                if sigma[p.len() % xb.len()] != q.len() % yb.len() {
                    return Err(OracleError::Internal(format!("pair ({a}, {b}) breaks the block correspondence")));
                }
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn t(s: &str) -> OrderTerm {
        parse(s).unwrap()
    }

    #[test]
    fn rationals_match() {
        let m = back_and_forth(&t("Q[1, 1+Q]"), &t("Q"), 6).unwrap();
        assert!(matches!(m, Matching::PartialIso(ref p) if p.len() == 6), "{m:?}");
        let m = back_and_forth(&t("Q"), &t("Q"), 1).unwrap();
        assert!(matches!(m, Matching::PartialIso(ref p) if p.len() == 1));
    }

    #[test]
    fn endpoint_mismatch_fails_when_the_endpoint_is_picked() {
        assert_eq!(back_and_forth(&t("Q"), &t("1 + Q"), 4).unwrap(), Matching::Failure { round: 2 });
        assert_eq!(back_and_forth(&t("1 + Q"), &t("Q"), 4).unwrap(), Matching::Failure { round: 1 });
    }

    #[test]
    fn dense_with_endpoints() {
        let m = back_and_forth(&t("1 + Q + 1"), &t("(1 + Q[1, 1 + Q]) + 1"), 20).unwrap();
        assert!(matches!(m, Matching::PartialIso(ref p) if p.len() == 20), "{m:?}");
    }

    #[test]
    fn colored_matching_respects_blocks() {
        let x = t("Q[N, Z]");
        let y = t("Q[Z, N]");
        let m = back_and_forth_colored(&x, &y, &[1, 0], 30).unwrap();
        assert!(matches!(m, Matching::PartialIso(ref p) if p.len() == 30), "{m:?}");
        let m = back_and_forth_colored(&t("Q[1 + Q, 1]"), &t("Q[1, 1 + Q[1, 1 + Q]]"), &[1, 0], 16).unwrap();
        assert!(matches!(m, Matching::PartialIso(ref p) if p.len() == 16), "{m:?}");
        assert!(back_and_forth_colored(&x, &y, &[0, 0], 3).is_err());
    }
}
