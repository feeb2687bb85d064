//! Self-similarity and left-absorption.
//!
//! A countable order is self-similar exactly when it has the shape
//! `L + Q[I_k] + R` with `L` empty or a final segment of a block and `R`
//! empty or an initial segment of a block. Which orders `A` satisfy
//! `A*X ≅ X` is then decided by which of `L`, `R` and `R + L` are blocks,
//! together with endpoint and successor facts about `A`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonicalize, is_final_segment, is_initial_segment, CanonError, CanonicalForm, Component};
use crate::profile::{profile, DenseClass, StructProfile};
use crate::term::OrderTerm;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not of the form L + Q[...] + R: {0}")]
    NotShape(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<CanonError> for ClassifyError {
    fn from(e: CanonError) -> Self {
        match e {
            CanonError::InternalInvariantViolation(_) => ClassifyError::Internal(e.to_string()),
            other => ClassifyError::Unsupported(other.to_string()),
        }
    }
}

/// The parts of `L + Q[blocks] + R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub left: CanonicalForm,
    pub blocks: Vec<CanonicalForm>,
    pub right: CanonicalForm,
}

impl Decomposition {
    fn is_block(&self, cf: &CanonicalForm) -> bool {
        !cf.is_empty() && self.blocks.binary_search(cf).is_ok()
    }

    pub fn left_is_block(&self) -> bool {
        self.is_block(&self.left)
    }

    pub fn right_is_block(&self) -> bool {
        self.is_block(&self.right)
    }

    /// Whether the junction `R + L` between consecutive copies is a block.
    pub fn junction_is_block(&self) -> bool {
        self.is_block(&self.right.concat(&self.left))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L = {}; blocks = {{", self.left)?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}; R = {}", self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SelfSimilarity {
    SelfSimilar(Decomposition),
    NotSelfSimilar(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AbsorptionClass {
    NotSelfSimilar(String),
    SelfSimilarNotAbsorbing(String),
    Case(u8, Decomposition),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectrumDescription {
    All,
    HasLeft,
    HasRight,
    ExactlyOneQOneOr1,
    BothEndsSuccPredComplete,
    BothEndsSuccComplete,
    BothEndsPredComplete,
    BothEnds,
    TrivialOnly,
}

impl SpectrumDescription {
    /// Human-readable statement of which `A` satisfy `A*X ≅ X`.
    pub fn describe(self) -> &'static str {
        match self {
            SpectrumDescription::All => "every countable order",
            SpectrumDescription::HasLeft => "countable orders with a left endpoint",
            SpectrumDescription::HasRight => "countable orders with a right endpoint",
            SpectrumDescription::ExactlyOneQOneOr1 => "exactly 1 + Q + 1 and 1",
            SpectrumDescription::BothEndsSuccPredComplete => {
                "orders with both endpoints where every non-maximal point has a successor and every non-minimal point a predecessor"
            }
            SpectrumDescription::BothEndsSuccComplete => {
                "orders with both endpoints where every non-maximal point has a successor"
            }
            SpectrumDescription::BothEndsPredComplete => {
                "orders with both endpoints where every non-minimal point has a predecessor"
            }
            SpectrumDescription::BothEnds => "orders with both endpoints",
            SpectrumDescription::TrivialOnly => "only 1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SquareVerdict {
    Square(bool),
    NotApplicable,
}

fn tame_form(t: &OrderTerm) -> Result<CanonicalForm, ClassifyError> {
    let cf = canonicalize(t)?;
    if !cf.is_tame() {
        return Err(ClassifyError::Unsupported(format!("scattered part outside the supported fragment: {cf}")));
    }
    Ok(cf)
}

/// Splits a term into `L + Q[blocks] + R`.
pub fn decompose(t: &OrderTerm) -> Result<Decomposition, ClassifyError> {
    let cf = tame_form(t)?;
    decompose_form(&cf)
}

pub fn decompose_form(cf: &CanonicalForm) -> Result<Decomposition, ClassifyError> {
    let comps = cf.components();
    let not_shape = || ClassifyError::NotShape(cf.to_string());
    if cf.shuffle_count() != 1 {
        return Err(not_shape());
    }
    let at = comps.iter().position(|c| matches!(c, Component::Shuf(_))).ok_or_else(not_shape)?;
    let Component::Shuf(blocks) = &comps[at] else {
        return Err(not_shape());
    };
    Ok(Decomposition {
        left: CanonicalForm::from_components(comps[..at].iter().cloned()),
        blocks: blocks.clone(),
        right: CanonicalForm::from_components(comps[at + 1..].iter().cloned()),
    })
}

pub fn is_self_similar(t: &OrderTerm) -> Result<SelfSimilarity, ClassifyError> {
    let d = match decompose(t) {
        Ok(d) => d,
        Err(ClassifyError::NotShape(form)) => {
            return Ok(SelfSimilarity::NotSelfSimilar(format!(
                "{form} is not a single shuffle flanked by scattered parts"
            )))
        }
        Err(e) => return Err(e),
    };
    let mut left_ok = d.left.is_empty();
    let mut right_ok = d.right.is_empty();
    for b in &d.blocks {
        left_ok = left_ok || is_final_segment(&d.left, b)?;
        right_ok = right_ok || is_initial_segment(&d.right, b)?;
    }
    Ok(if !left_ok {
        SelfSimilarity::NotSelfSimilar(format!("L = {} is not a final segment of any block", d.left))
    } else if !right_ok {
        SelfSimilarity::NotSelfSimilar(format!("R = {} is not an initial segment of any block", d.right))
    } else {
        SelfSimilarity::SelfSimilar(d)
    })
}

/// The eight case conditions, each evaluated on its own. Cases 4 to 8
/// describe two nonempty flanks; with one flank empty the junction is just
/// the other flank, and cases 2 and 3 apply instead.
pub fn case_predicates(d: &Decomposition) -> [bool; 8] {
    let (l_empty, r_empty) = (d.left.is_empty(), d.right.is_empty());
    let both = !l_empty && !r_empty;
    let (bl, br, brl) = (d.left_is_block(), d.right_is_block(), d.junction_is_block());
    [
        l_empty && r_empty,
        bl && r_empty,
        br && l_empty,
        both && bl && br && !brl,
        both && brl && !bl && !br,
        both && brl && bl && !br,
        both && brl && !bl && br,
        both && brl && bl && br,
    ]
}

pub fn classify_absorption(t: &OrderTerm) -> Result<AbsorptionClass, ClassifyError> {
    let d = match is_self_similar(t)? {
        SelfSimilarity::SelfSimilar(d) => d,
        SelfSimilarity::NotSelfSimilar(reason) => return Ok(AbsorptionClass::NotSelfSimilar(reason)),
    };
    let (l_empty, r_empty) = (d.left.is_empty(), d.right.is_empty());
    let (bl, br, brl) = (d.left_is_block(), d.right_is_block(), d.junction_is_block());
    let case = match (l_empty, r_empty) {
        (true, true) => Some(1),
        (false, true) => bl.then_some(2),
        (true, false) => br.then_some(3),
        (false, false) => match (brl, bl, br) {
            (false, true, true) => Some(4),
            (false, _, _) => None,
            (true, false, false) => Some(5),
            (true, true, false) => Some(6),
            (true, false, true) => Some(7),
            (true, true, true) => Some(8),
        },
    };
    Ok(match case {
        Some(n) => AbsorptionClass::Case(n, d),
        None => AbsorptionClass::SelfSimilarNotAbsorbing(not_absorbing_reason(&d)),
    })
}

fn not_absorbing_reason(d: &Decomposition) -> String {
    if d.right.is_empty() {
        format!("L = {} is not isomorphic to a block", d.left)
    } else if d.left.is_empty() {
        format!("R = {} is not isomorphic to a block", d.right)
    } else {
        format!("R + L = {} is not isomorphic to a block, and L and R are not both blocks", d.right.concat(&d.left))
    }
}

/// Whether `a*x ≅ x`.
pub fn absorbs(a: &OrderTerm, x: &OrderTerm) -> Result<bool, ClassifyError> {
    if a.denotes_empty() {
        return Ok(x.denotes_empty());
    }
    if x.denotes_empty() {
        return Ok(true);
    }
    let pa = profile(a);
    if pa.is_single() {
        return Ok(true);
    }
    Ok(match classify_absorption(x)? {
        AbsorptionClass::Case(n, _) => case_admits(n, &pa),
        _ => false,
    })
}

fn case_admits(case: u8, pa: &StructProfile) -> bool {
    let both = pa.has_both_endpoints();
    match case {
        1 => true,
        2 => pa.has_left_endpoint,
        3 => pa.has_right_endpoint,
        4 => pa.dense_class == Some(DenseClass::OneQOne) || pa.is_single(),
        5 => both && pa.succ_complete && pa.pred_complete,
        6 => both && pa.succ_complete,
        7 => both && pa.pred_complete,
        8 => both,
        _ => pa.is_single(),
    }
}

pub fn spectrum_description(x: &OrderTerm) -> Result<SpectrumDescription, ClassifyError> {
    Ok(match classify_absorption(x)? {
        AbsorptionClass::Case(n, _) => match n {
            1 => SpectrumDescription::All,
            2 => SpectrumDescription::HasLeft,
            3 => SpectrumDescription::HasRight,
            4 => SpectrumDescription::ExactlyOneQOneOr1,
            5 => SpectrumDescription::BothEndsSuccPredComplete,
            6 => SpectrumDescription::BothEndsSuccComplete,
            7 => SpectrumDescription::BothEndsPredComplete,
            _ => SpectrumDescription::BothEnds,
        },
        _ => SpectrumDescription::TrivialOnly,
    })
}

/// Whether `x*x ≅ x`.
pub fn is_square(x: &OrderTerm) -> Result<bool, ClassifyError> {
    let px = profile(x);
    if px.is_empty || px.is_single() {
        return Ok(true);
    }
    absorbs(x, x)
}

/// Squares among orders with both endpoints, decided from the shape
/// `L + Q[I_k] + R` alone.
pub fn square_two_endpoints(x: &OrderTerm) -> Result<SquareVerdict, ClassifyError> {
    let px = profile(x);
    if !px.has_both_endpoints() {
        return Ok(SquareVerdict::NotApplicable);
    }
    // The decomposition needs at least two points; a single point is a
    // square trivially.
    if px.is_single() {
        return Ok(SquareVerdict::Square(true));
    }
    let d = match decompose(x) {
        Ok(d) => d,
        Err(ClassifyError::NotShape(_)) => return Ok(SquareVerdict::Square(false)),
        Err(e) => return Err(e),
    };
    let one = canonicalize(&OrderTerm::Single)?;
    let (bl, br, brl) = (d.left_is_block(), d.right_is_block(), d.junction_is_block());
    let block_profiles: Vec<StructProfile> = d.blocks.iter().map(|b| profile(&b.to_term())).collect();
    // "Every point of I_k has a successor" inside the ambient order: no
    // maximum, and every point has a successor within the block.
    let all_succ = block_profiles.iter().all(|p| p.succ_complete && !p.has_right_endpoint);
    let all_pred = block_profiles.iter().all(|p| p.pred_complete && !p.has_left_endpoint);
    let holds = (d.left == one && d.right == one && d.blocks == [one.clone()])
        || (brl && !bl && !br && all_succ && all_pred)
        || (brl && bl && !br && all_succ)
        || (brl && !bl && br && all_pred)
        || (brl && bl && br);
    Ok(SquareVerdict::Square(holds))
}
