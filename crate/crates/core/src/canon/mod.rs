//! Canonical forms.
//!
//! A [`CanonicalForm`] is a sequence of scattered runs and shuffle
//! components. Shuffle block sets are kept minimal and sorted, so two
//! tame forms denote isomorphic orders exactly when they are identical.

mod scat;
mod segments;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::term::OrderTerm;
use crate::textio::print;

pub use scat::{PowKind, ScatAtom, ScatNF};
pub use segments::{final_segment_samples, initial_segment_samples, is_final_segment, is_initial_segment};

/// Finite indices above this are only expanded when the fiber is
/// idempotent under concatenation or a single finite run.
const MAX_FINITE_EXPANSION: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CanonError {
    /// No rewrite rule applies to this product.
    #[error("no rewrite rule applies to {0}")]
    Stuck(OrderTerm),
    /// Expanding the product would exceed the size limits.
    #[error("product too large to expand: {0}")]
    LimitExceeded(OrderTerm),
    #[error("term contains a shuffle")]
    NotScattered,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Component {
    Scat(ScatNF),
    Shuf(Vec<CanonicalForm>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    components: Vec<Component>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CfEquality {
    Equal,
    NotEqual,
    /// Not proven isomorphic and not proven non-isomorphic.
    StructuralOnly,
}

impl CanonicalForm {
    pub fn empty() -> Self {
        CanonicalForm { components: Vec::new() }
    }

    pub fn from_scat(s: ScatNF) -> Self {
        if s.is_empty() {
            Self::empty()
        } else {
            CanonicalForm { components: vec![Component::Scat(s)] }
        }
    }

    fn from_atom(atom: ScatAtom) -> Self {
        Self::from_scat(ScatNF::atom(atom))
    }

    /// Builds a form from arbitrary components, applying the merge rules.
    pub fn from_components<I: IntoIterator<Item = Component>>(components: I) -> Self {
        let mut out = CanonicalForm::empty();
        for c in components {
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// No `Pow` atom anywhere, including inside blocks.
    pub fn is_tame(&self) -> bool {
        self.components.iter().all(|c| match c {
            Component::Scat(s) => s.is_tame(),
            Component::Shuf(blocks) => blocks.iter().all(CanonicalForm::is_tame),
        })
    }

    pub fn is_scattered(&self) -> bool {
        self.components.iter().all(|c| matches!(c, Component::Scat(_)))
    }

    pub fn shuffle_count(&self) -> usize {
        self.components.iter().filter(|c| matches!(c, Component::Shuf(_))).count()
    }

    pub fn concat(&self, other: &CanonicalForm) -> CanonicalForm {
        let mut out = self.clone();
        for c in &other.components {
            out.push(c.clone());
        }
        out
    }

    fn push(&mut self, c: Component) {
        match &c {
            Component::Scat(s) if s.is_empty() => return,
            _ => {}
        }
        self.components.push(c);
        loop {
            let n = self.components.len();
            if n >= 2 {
                if let (Component::Scat(a), Component::Scat(b)) = (&self.components[n - 2], &self.components[n - 1]) {
                    let merged = a.concat(b);
                    self.components.truncate(n - 2);
                    if !merged.is_empty() {
                        self.components.push(Component::Scat(merged));
                    }
                    continue;
                }
                if let (Component::Shuf(a), Component::Shuf(b)) = (&self.components[n - 2], &self.components[n - 1]) {
                    if a == b {
                        self.components.pop();
                        continue;
                    }
                }
            }
            if n >= 3 {
                if let (Component::Shuf(a), Component::Scat(s), Component::Shuf(b)) =
                    (&self.components[n - 3], &self.components[n - 2], &self.components[n - 1])
                {
                    if a == b && block_set_contains(a, &CanonicalForm::from_scat(s.clone())) {
                        self.components.truncate(n - 2);
                        continue;
                    }
                }
            }
            break;
        }
    }

    /// The form of the reversed order.
    pub fn mirrored(&self) -> CanonicalForm {
        CanonicalForm::from_components(self.components.iter().rev().map(|c| match c {
            Component::Scat(s) => Component::Scat(s.mirrored()),
            Component::Shuf(blocks) => {
                let mut blocks: Vec<CanonicalForm> = blocks.iter().map(CanonicalForm::mirrored).collect();
                blocks.sort();
                Component::Shuf(blocks)
            }
        }))
    }

    /// A term denoting the same order; printing it gives a parseable form.
    pub fn to_term(&self) -> OrderTerm {
        OrderTerm::sum_of(self.components.iter().map(|c| match c {
            Component::Scat(s) => scat_term(s),
            Component::Shuf(blocks) => OrderTerm::Shuffle(blocks.iter().map(CanonicalForm::to_term).collect()),
        }))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(&self.to_term()))
    }
}

fn fin_term(mut k: u64) -> OrderTerm {
    const CHUNK: u64 = i32::MAX as u64;
    let mut parts = Vec::new();
    while k > CHUNK {
        parts.push(OrderTerm::finite(CHUNK as u32));
        k -= CHUNK;
    }
    parts.push(OrderTerm::finite(k as u32));
    OrderTerm::sum_of(parts)
}

fn scat_term(s: &ScatNF) -> OrderTerm {
    OrderTerm::sum_of(s.atoms().iter().map(|a| match a {
        ScatAtom::Fin(k) => fin_term(*k),
        ScatAtom::W => OrderTerm::Omega,
        ScatAtom::Wstar => OrderTerm::reverse(OrderTerm::Omega),
        ScatAtom::Zat => OrderTerm::Zeta,
        ScatAtom::Pow(kind, body) => {
            let index = match kind {
                PowKind::Omega => OrderTerm::Omega,
                PowKind::OmegaStar => OrderTerm::reverse(OrderTerm::Omega),
                PowKind::Zeta => OrderTerm::Zeta,
            };
            OrderTerm::product(index, scat_term(body))
        }
    }))
}

fn block_set_contains(blocks: &[CanonicalForm], cf: &CanonicalForm) -> bool {
    blocks.binary_search(cf).is_ok()
}

/// Canonical form of a scattered term.
pub fn scat_normalize(term: &OrderTerm) -> Result<ScatNF, CanonError> {
    let cf = canonicalize(term)?;
    match cf.components.as_slice() {
        [] => Ok(ScatNF::empty()),
        [Component::Scat(s)] => Ok(s.clone()),
        _ => Err(CanonError::NotScattered),
    }
}

/// Rewrites a valid term to its canonical form.
pub fn canonicalize(term: &OrderTerm) -> Result<CanonicalForm, CanonError> {
    canon(&term.desugar())
}

fn canon(term: &OrderTerm) -> Result<CanonicalForm, CanonError> {
    Ok(match term {
        OrderTerm::Empty => CanonicalForm::empty(),
        OrderTerm::Single => CanonicalForm::from_atom(ScatAtom::Fin(1)),
        OrderTerm::Finite(n) => CanonicalForm::from_scat(ScatNF::from_atoms([ScatAtom::Fin(u64::from(*n))])),
        OrderTerm::Omega => CanonicalForm::from_atom(ScatAtom::W),
        OrderTerm::OmegaStar => CanonicalForm::from_atom(ScatAtom::Wstar),
        OrderTerm::Zeta => CanonicalForm::from_atom(ScatAtom::Zat),
        OrderTerm::Sum(a, b) => canon(a)?.concat(&canon(b)?),
        OrderTerm::Shuffle(blocks) => {
            let blocks = blocks.iter().map(canon).collect::<Result<Vec<_>, _>>()?;
            shuffle(blocks)?
        }
        OrderTerm::Product(index, fiber) => {
            let (x, y) = (canon(index)?, canon(fiber)?);
            product(&x, &y).map_err(|e| match e {
                ProductError::Stuck => CanonError::Stuck(term.clone()),
                ProductError::TooLarge => CanonError::LimitExceeded(term.clone()),
                ProductError::Canon(e) => e,
            })?
        }
        OrderTerm::Reverse(_) => canon(&term.desugar())?,
    })
}

/// Shuffle of the given block forms with a minimal block set.
pub fn shuffle(blocks: Vec<CanonicalForm>) -> Result<CanonicalForm, CanonError> {
    let mut set = blocks;
    set.retain(|b| !b.is_empty());
    if set.is_empty() {
        return Ok(CanonicalForm::empty());
    }
    set.sort();
    set.dedup();
    // A block J = s₀ + Q[C₁] + s₁ + … is absorbed by flattening only when
    // the flattened set equals some Cᵢ: then J is a convex piece of the
    // shuffle Q[Cᵢ] and the whole shuffle is Q[Cᵢ]. Otherwise J contains no
    // convex copy of the candidate and stays an atomic block.
    while let Some(target) = flatten_target(&set) {
        set = target;
    }
    for block in &set {
        for c in &block.components {
            if let Component::Shuf(inner) = c {
                if *inner == set {
                    return Err(CanonError::InternalInvariantViolation(format!(
                        "block {block} contains a convex copy of its own shuffle"
                    )));
                }
            }
        }
    }
    Ok(CanonicalForm { components: vec![Component::Shuf(set)] })
}

fn flatten_target(set: &[CanonicalForm]) -> Option<Vec<CanonicalForm>> {
    for (j, block) in set.iter().enumerate() {
        let inner: Vec<&Vec<CanonicalForm>> = block
            .components
            .iter()
            .filter_map(|c| match c {
                Component::Shuf(b) => Some(b),
                Component::Scat(_) => None,
            })
            .collect();
        if inner.is_empty() {
            continue;
        }
        let mut candidate: Vec<CanonicalForm> =
            set.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, b)| b.clone()).collect();
        for c in &block.components {
            match c {
                Component::Shuf(b) => candidate.extend(b.iter().cloned()),
                Component::Scat(s) => candidate.push(CanonicalForm::from_scat(s.clone())),
            }
        }
        candidate.sort();
        candidate.dedup();
        if inner.iter().any(|c| **c == candidate) {
            return Some(candidate);
        }
    }
    None
}

enum ProductError {
    Stuck,
    TooLarge,
    Canon(CanonError),
}

impl From<CanonError> for ProductError {
    fn from(e: CanonError) -> Self {
        ProductError::Canon(e)
    }
}

fn product(index: &CanonicalForm, fiber: &CanonicalForm) -> Result<CanonicalForm, ProductError> {
    if index.is_empty() || fiber.is_empty() {
        return Ok(CanonicalForm::empty());
    }
    let mut out = CanonicalForm::empty();
    for c in &index.components {
        let part = match c {
            Component::Scat(s) => {
                let mut acc = CanonicalForm::empty();
                for atom in s.atoms() {
                    acc = acc.concat(&atom_times(atom, fiber)?);
                }
                acc
            }
            Component::Shuf(blocks) => {
                let parts = blocks.iter().map(|b| product(b, fiber)).collect::<Result<Vec<_>, _>>()?;
                shuffle(parts)?
            }
        };
        out = out.concat(&part);
    }
    Ok(out)
}

fn atom_times(atom: &ScatAtom, fiber: &CanonicalForm) -> Result<CanonicalForm, ProductError> {
    match atom {
        ScatAtom::Fin(k) => repeat(fiber, *k),
        ScatAtom::W => indexed_sum(PowKind::Omega, fiber),
        ScatAtom::Wstar => indexed_sum(PowKind::OmegaStar, fiber),
        ScatAtom::Zat => indexed_sum(PowKind::Zeta, fiber),
        ScatAtom::Pow(kind, body) => {
            let inner = product(&CanonicalForm::from_scat(body.clone()), fiber)?;
            indexed_sum(*kind, &inner)
        }
    }
}

/// `k` consecutive copies of `fiber`.
fn repeat(fiber: &CanonicalForm, k: u64) -> Result<CanonicalForm, ProductError> {
    if k == 0 {
        return Ok(CanonicalForm::empty());
    }
    if k == 1 {
        return Ok(fiber.clone());
    }
    let double = fiber.concat(fiber);
    if double == *fiber {
        return Ok(double);
    }
    if let [Component::Scat(s)] = fiber.components.as_slice() {
        if let [ScatAtom::Fin(m)] = s.atoms() {
            let total = m.checked_mul(k).ok_or(ProductError::TooLarge)?;
            return Ok(CanonicalForm::from_atom(ScatAtom::Fin(total)));
        }
    }
    if k > MAX_FINITE_EXPANSION {
        return Err(ProductError::TooLarge);
    }
    let mut result = CanonicalForm::empty();
    let mut power = fiber.clone();
    let mut rest = k;
    while rest > 0 {
        if rest & 1 == 1 {
            result = result.concat(&power);
        }
        rest >>= 1;
        if rest > 0 {
            power = power.concat(&power);
        }
    }
    Ok(result)
}

/// `kind`-many copies of `fiber`.
fn indexed_sum(kind: PowKind, fiber: &CanonicalForm) -> Result<CanonicalForm, ProductError> {
    let comps = fiber.components.as_slice();
    if comps.is_empty() {
        return Ok(CanonicalForm::empty());
    }
    if let [Component::Scat(s)] = comps {
        return Ok(CanonicalForm::from_scat(ScatNF::indexed_sum(kind, s)));
    }
    if fiber.shuffle_count() != 1 {
        return Err(ProductError::Stuck);
    }
    let shuf_at = comps.iter().position(|c| matches!(c, Component::Shuf(_))).expect("one shuffle component");
    let Component::Shuf(blocks) = &comps[shuf_at] else { unreachable!() };
    let left = CanonicalForm::from_components(comps[..shuf_at].iter().cloned());
    let right = CanonicalForm::from_components(comps[shuf_at + 1..].iter().cloned());
    // Consecutive copies meet in R + L; the shuffle swallows that junction
    // exactly when it is empty or one of its blocks.
    let junction = right.concat(&left);
    if !(junction.is_empty() || block_set_contains(blocks, &junction)) {
        return Err(ProductError::Stuck);
    }
    let shuf = CanonicalForm { components: vec![comps[shuf_at].clone()] };
    Ok(match kind {
        PowKind::Omega => left.concat(&shuf),
        PowKind::OmegaStar => shuf.concat(&right),
        PowKind::Zeta => shuf,
    })
}

fn unrollings(cf: &CanonicalForm) -> Vec<CanonicalForm> {
    let mut out = Vec::new();
    for (i, c) in cf.components.iter().enumerate() {
        let Component::Scat(s) = c else { continue };
        for unrolled in s.unrollings() {
            let mut comps = cf.components[..i].to_vec();
            comps.push(Component::Scat(unrolled));
            comps.extend(cf.components[i + 1..].iter().cloned());
            out.push(CanonicalForm::from_components(comps));
        }
    }
    out
}

/// Forms reachable by at most `depth` unrollings, including `cf` itself.
fn unrolling_closure(cf: &CanonicalForm, depth: usize) -> Vec<CanonicalForm> {
    let mut all = vec![cf.clone()];
    let mut frontier = vec![cf.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for f in &frontier {
            for u in unrollings(f) {
                if !all.contains(&u) {
                    all.push(u.clone());
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    all
}

/// Decides isomorphism of two canonical forms where the representation
/// allows it.
pub fn cf_equal(a: &CanonicalForm, b: &CanonicalForm) -> CfEquality {
    if a == b {
        return CfEquality::Equal;
    }
    if a.is_tame() && b.is_tame() {
        return CfEquality::NotEqual;
    }
    let left = unrolling_closure(a, 2);
    let right = unrolling_closure(b, 2);
    if left.iter().any(|x| right.contains(x)) {
        CfEquality::Equal
    } else {
        CfEquality::StructuralOnly
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn cf(s: &str) -> CanonicalForm {
        canonicalize(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn scattered_normalization() {
        assert_eq!(scat_normalize(&parse("N~ + 3 + N").unwrap()).unwrap().atoms(), &[ScatAtom::Zat]);
        assert_eq!(scat_normalize(&parse("1 + N").unwrap()).unwrap().atoms(), &[ScatAtom::W]);
        assert_eq!(scat_normalize(&parse("Q[Z]").unwrap()), Err(CanonError::NotScattered));
        assert_eq!(cf("N*3"), cf("N"));
        assert_eq!(cf("Z*5"), cf("Z"));
        assert_eq!(cf("3*N"), cf("N + N + N"));
        assert_eq!(cf("(N + 1)*Z"), cf("N*Z + Z"));
        assert_eq!(cf("(1 + N)*Z"), cf("N*Z"));
    }

    #[test]
    fn shuffle_collapses() {
        assert_eq!(cf("Q[1, 1+Q]"), cf("Q"));
        assert_eq!(cf("Q[N, Z + Q[N, Z]]"), cf("Q[N,Z]"));
        assert_eq!(cf("Q[Z + Q[Z]]"), cf("Q[Z]"));
        assert_eq!(cf("Q[Q[Z]]"), cf("Q[Z]"));
        assert_eq!(cf("Q[Z, Z, N]"), cf("Q[N,Z]"));
        assert_eq!(cf("Q + Q"), cf("Q"));
        assert_eq!(cf("Q + 1 + Q"), cf("Q"));
        assert_eq!(cf("2*Q"), cf("Q"));
    }

    #[test]
    fn nested_block_that_must_not_flatten() {
        let c = cf("Q[1 + Q[Z]]");
        let [Component::Shuf(blocks)] = c.components() else { panic!("{c:?}") };
        assert_eq!(blocks.len(), 1);
        assert_ne!(c, cf("Q[1,Z]"));
        assert_eq!(cf("Q[1, Q[Z]]").shuffle_count(), 1);
        assert_ne!(cf("Q[1, Q[Z]]"), cf("Q[1,Z]"));
    }

    #[test]
    fn products_with_shuffle_fibers() {
        assert_eq!(cf("N*(N + Q[Z] + N~)"), cf("N + Q[Z]"));
        assert_eq!(cf("N~*(N + Q[Z] + N~)"), cf("Q[Z] + N~"));
        assert_eq!(cf("Z*(N + Q[Z] + N~)"), cf("Q[Z]"));
        assert_eq!(cf("(1+Q+1)*(Z + Q[Z] + Z)"), cf("Z + Q[Z] + Z"));
        assert_eq!(cf("Q*Z"), cf("Q[Z]"));
        assert_eq!(cf("N*Q"), cf("Q"));
        assert_eq!(cf("2147483647*Q[Z]"), cf("Q[Z]"));
    }

    #[test]
    fn stuck_products_are_reported() {
        assert_eq!(cf("N*(1 + Q)"), cf("1 + Q"));
        let t = parse("N*(2 + Q)").unwrap();
        assert!(matches!(canonicalize(&t), Err(CanonError::Stuck(_))));
        let t = parse("N*(Q + Q[Z])").unwrap();
        assert!(matches!(canonicalize(&t), Err(CanonError::Stuck(_))));
        let t = parse("2147483647*N").unwrap();
        assert!(matches!(canonicalize(&t), Err(CanonError::LimitExceeded(_))));
    }

    #[test]
    fn equality_verdicts() {
        assert_eq!(cf_equal(&cf("Q"), &cf("Q[1,1+Q]")), CfEquality::Equal);
        assert_eq!(cf_equal(&cf("Z + Q[Z]"), &cf("Q[Z]")), CfEquality::NotEqual);
        assert_eq!(cf_equal(&cf("N*N"), &cf("N + N*N")), CfEquality::Equal);
        assert_eq!(cf_equal(&cf("N*N"), &cf("N*Z")), CfEquality::StructuralOnly);
    }

    #[test]
    fn printing_reparses_to_the_same_form() {
        for s in ["N + Q[Z] + N~", "Q[N,Z]", "N*N + 3", "Z*(N + 1)", "Q[1 + Q[Z]]", "N~*N~"] {
            let c = cf(s);
            assert_eq!(cf(&c.to_string()), c, "{s} -> {c}");
        }
        assert_eq!(cf("Q[Z,N]").to_string(), "Q[N,Z]");
    }

    #[test]
    fn mirrored_matches_reversal() {
        for s in ["N + Q[Z] + N~", "Q[N, 1 + Z]", "N*N + 3", "2 + Q[N]"] {
            let c = cf(s);
            let r = canonicalize(&OrderTerm::reverse(parse(s).unwrap())).unwrap();
            assert_eq!(c.mirrored(), r, "{s}");
        }
    }
}
