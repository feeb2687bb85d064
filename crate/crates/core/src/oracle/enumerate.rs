use std::collections::HashMap;
use std::rc::Rc;

use rand::Rng;

use super::{point_count, Dir, PointCode};
use crate::term::OrderTerm;

struct Enumerator {
    memo: HashMap<(*const OrderTerm, u64), Rc<Vec<PointCode>>>,
}

impl Enumerator {
    fn of_weight(&mut self, t: &OrderTerm, w: u64) -> Rc<Vec<PointCode>> {
        let key = (t as *const OrderTerm, w);
        if let Some(v) = self.memo.get(&key) {
            return Rc::clone(v);
        }
        let mut out = match t {
            OrderTerm::Empty => Vec::new(),
            OrderTerm::Single => {
                if w == 0 {
                    vec![PointCode::Unit]
                } else {
                    Vec::new()
                }
            }
            OrderTerm::Finite(n) => {
                if w < u64::from(*n) {
                    vec![PointCode::Idx(w as u32)]
                } else {
                    Vec::new()
                }
            }
            OrderTerm::Omega | OrderTerm::OmegaStar => vec![PointCode::Nat(w)],
            OrderTerm::Zeta => match i64::try_from(w) {
                Ok(0) => vec![PointCode::Int(0)],
                Ok(k) => vec![PointCode::Int(-k), PointCode::Int(k)],
                Err(_) => Vec::new(),
            },
            OrderTerm::Reverse(body) => self.of_weight(body, w).as_ref().clone(),
            OrderTerm::Sum(x, y) => {
                let mut v: Vec<PointCode> =
                    self.of_weight(x, w).iter().map(|c| PointCode::side(0, c.clone())).collect();
                v.extend(self.of_weight(y, w).iter().map(|c| PointCode::side(1, c.clone())));
                v
            }
            OrderTerm::Product(x, y) => {
                let mut v = Vec::new();
                for wi in 0..=w {
                    let left = self.of_weight(x, wi);
                    if left.is_empty() {
                        continue;
                    }
                    let right = self.of_weight(y, w - wi);
                    for i in left.iter() {
                        for j in right.iter() {
                            v.push(PointCode::pair(i.clone(), j.clone()));
                        }
                    }
                }
                v
            }
            OrderTerm::Shuffle(blocks) => {
                let mut v = Vec::new();
                let max_len = w.min(62);
                for len in 0..=max_len {
                    let inner = self.of_weight(&blocks[len as usize % blocks.len()], w - len);
                    if inner.is_empty() {
                        continue;
                    }
                    for bits in 0..(1u64 << len) {
                        let pos: Vec<Dir> =
                            (0..len).rev().map(|b| if bits >> b & 1 == 0 { Dir::L } else { Dir::R }).collect();
                        for c in inner.iter() {
                            v.push(PointCode::shuf(pos.clone(), c.clone()));
                        }
                    }
                }
                v
            }
        };
        out.sort();
        let out = Rc::new(out);
        self.memo.insert(key, Rc::clone(&out));
        out
    }
}

/// All codes of `t` with the given weight, in code order.
pub fn codes_of_weight(t: &OrderTerm, w: u64) -> Vec<PointCode> {
    let mut e = Enumerator { memo: HashMap::new() };
    e.of_weight(t, w).as_ref().clone()
}

/// The first `n` points of `t` in enumeration order: by weight, then by
/// code. Fewer are returned only when `t` has fewer points.
pub fn enumerate(t: &OrderTerm, n: usize) -> Vec<PointCode> {
    let target = match point_count(t) {
        Some(size) => n.min(usize::try_from(size).unwrap_or(usize::MAX)),
        None => n,
    };
    let mut e = Enumerator { memo: HashMap::new() };
    let mut out = Vec::with_capacity(target);
    let mut w = 0;
    while out.len() < target {
        for c in e.of_weight(t, w).iter() {
            if out.len() == target {
                break;
            }
            out.push(c.clone());
        }
        w += 1;
    }
    out
}

/// A random point of `t`, with integer parts and position lengths bounded
/// by `spread`; `None` when `t` is empty.
pub fn random_code<R: Rng + ?Sized>(t: &OrderTerm, rng: &mut R, spread: u64) -> Option<PointCode> {
    if point_count(t) == Some(0) {
        return None;
    }
    Some(match t {
        OrderTerm::Empty => return None,
        OrderTerm::Single => PointCode::Unit,
        OrderTerm::Finite(n) => PointCode::Idx(rng.gen_range(0..*n)),
        OrderTerm::Omega | OrderTerm::OmegaStar => PointCode::Nat(rng.gen_range(0..=spread)),
        OrderTerm::Zeta => {
            let s = i64::try_from(spread).unwrap_or(i64::MAX);
            PointCode::Int(rng.gen_range(-s..=s))
        }
        OrderTerm::Reverse(body) => random_code(body, rng, spread)?,
        OrderTerm::Sum(x, y) => {
            let left = point_count(x) != Some(0);
            let right = point_count(y) != Some(0);
            if left && (!right || rng.gen_bool(0.5)) {
                PointCode::side(0, random_code(x, rng, spread)?)
            } else {
                PointCode::side(1, random_code(y, rng, spread)?)
            }
        }
        OrderTerm::Product(x, y) => PointCode::pair(random_code(x, rng, spread)?, random_code(y, rng, spread)?),
        OrderTerm::Shuffle(blocks) => {
            let len = rng.gen_range(0..=spread.min(40)) as usize;
            let pos: Vec<Dir> = (0..len).map(|_| if rng.gen_bool(0.5) { Dir::L } else { Dir::R }).collect();
            let inner = random_code(&blocks[len % blocks.len()], rng, spread)?;
            PointCode::shuf(pos, inner)
        }
    })
}
