//! The order-type term algebra.
//!
//! An [`OrderTerm`] denotes a countable linear order built from the atoms
//! `0`, `1`, finite `n`, `N`, `N~` and `Z` with sums, lexicographic
//! products, shuffles and reversal. `Q` is not a constructor: it is the
//! one-block shuffle `Shuffle([Single])`.

use std::fmt;

use thiserror::Error;

/// Abstract syntax of an order-type expression.
///
/// `Product(index, fiber)` is `index`-many consecutive copies of `fiber`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderTerm {
    Empty,
    Single,
    Finite(u32),
    Omega,
    OmegaStar,
    Zeta,
    Sum(Box<OrderTerm>, Box<OrderTerm>),
    Product(Box<OrderTerm>, Box<OrderTerm>),
    Shuffle(Vec<OrderTerm>),
    Reverse(Box<OrderTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("shuffle block denotes the empty order: {0}")]
    EmptyShuffleBlock(OrderTerm),
    #[error("shuffle has no blocks")]
    EmptyBlockList,
    #[error("finite literal must be at least 2, got {0}")]
    BadFinite(u32),
}

impl OrderTerm {
    pub fn sum(left: OrderTerm, right: OrderTerm) -> Self {
        OrderTerm::Sum(Box::new(left), Box::new(right))
    }

    pub fn product(index: OrderTerm, fiber: OrderTerm) -> Self {
        OrderTerm::Product(Box::new(index), Box::new(fiber))
    }

    pub fn reverse(body: OrderTerm) -> Self {
        OrderTerm::Reverse(Box::new(body))
    }

    /// The rationals, as the trivial shuffle.
    pub fn rationals() -> Self {
        OrderTerm::Shuffle(vec![OrderTerm::Single])
    }

    /// Finite order with `n` points, using the dedicated constructors for 0 and 1.
    pub fn finite(n: u32) -> Self {
        match n {
            0 => OrderTerm::Empty,
            1 => OrderTerm::Single,
            n => OrderTerm::Finite(n),
        }
    }

    /// Left-nested sum of the given terms; `Empty` for an empty list.
    pub fn sum_of<I: IntoIterator<Item = OrderTerm>>(terms: I) -> Self {
        terms.into_iter().reduce(OrderTerm::sum).unwrap_or(OrderTerm::Empty)
    }

    /// Checks every structural invariant, reporting the offending subterm.
    pub fn validate(&self) -> Result<(), ValidationError> {
        match self {
            OrderTerm::Finite(n) if *n < 2 => Err(ValidationError::BadFinite(*n)),
            OrderTerm::Empty
            | OrderTerm::Single
            | OrderTerm::Finite(_)
            | OrderTerm::Omega
            | OrderTerm::OmegaStar
            | OrderTerm::Zeta => Ok(()),
            OrderTerm::Sum(a, b) | OrderTerm::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            OrderTerm::Reverse(body) => body.validate(),
            OrderTerm::Shuffle(blocks) => {
                if blocks.is_empty() {
                    return Err(ValidationError::EmptyBlockList);
                }
                for block in blocks {
                    block.validate()?;
                    if block.denotes_empty() {
                        return Err(ValidationError::EmptyShuffleBlock(block.clone()));
                    }
                }
                Ok(())
            }
        }
    }

    /// Whether the term denotes the empty order (assumes a valid term).
    pub fn denotes_empty(&self) -> bool {
        match self {
            OrderTerm::Empty => true,
            OrderTerm::Sum(a, b) => a.denotes_empty() && b.denotes_empty(),
            OrderTerm::Product(a, b) => a.denotes_empty() || b.denotes_empty(),
            OrderTerm::Reverse(body) => body.denotes_empty(),
            _ => false,
        }
    }

    /// Pushes reversals down to the atoms and removes empty summands and
    /// factors. The result contains no `Reverse` node and no `Empty` node
    /// unless the whole term is `Empty`.
    pub fn desugar(&self) -> OrderTerm {
        self.desugar_oriented(false)
    }

    fn desugar_oriented(&self, flip: bool) -> OrderTerm {
        match self {
            OrderTerm::Empty => OrderTerm::Empty,
            OrderTerm::Single => OrderTerm::Single,
            OrderTerm::Finite(n) => OrderTerm::Finite(*n),
            OrderTerm::Zeta => OrderTerm::Zeta,
            OrderTerm::Omega if flip => OrderTerm::OmegaStar,
            OrderTerm::Omega => OrderTerm::Omega,
            OrderTerm::OmegaStar if flip => OrderTerm::Omega,
            OrderTerm::OmegaStar => OrderTerm::OmegaStar,
            OrderTerm::Reverse(body) => body.desugar_oriented(!flip),
            OrderTerm::Sum(a, b) => {
                let (first, second) = if flip { (b, a) } else { (a, b) };
                let first = first.desugar_oriented(flip);
                let second = second.desugar_oriented(flip);
                match (first, second) {
                    (OrderTerm::Empty, rest) | (rest, OrderTerm::Empty) => rest,
                    (x, y) => OrderTerm::sum(x, y),
                }
            }
            OrderTerm::Product(index, fiber) => {
                let index = index.desugar_oriented(flip);
                let fiber = fiber.desugar_oriented(flip);
                if index == OrderTerm::Empty || fiber == OrderTerm::Empty {
                    OrderTerm::Empty
                } else {
                    OrderTerm::product(index, fiber)
                }
            }
            OrderTerm::Shuffle(blocks) => OrderTerm::Shuffle(blocks.iter().map(|b| b.desugar_oriented(flip)).collect()),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            OrderTerm::Sum(a, b) | OrderTerm::Product(a, b) => 1 + a.size() + b.size(),
            OrderTerm::Reverse(body) => 1 + body.size(),
            OrderTerm::Shuffle(blocks) => 1 + blocks.iter().map(OrderTerm::size).sum::<usize>(),
            _ => 1,
        }
    }
}

/// Structural (constructor-style) rendering, e.g. `Sum(Omega, Shuffle([Zeta]))`.
pub struct Ast<'a>(pub &'a OrderTerm);

impl fmt::Display for Ast<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            OrderTerm::Empty => write!(f, "Empty"),
            OrderTerm::Single => write!(f, "Single"),
            OrderTerm::Finite(n) => write!(f, "Finite({n})"),
            OrderTerm::Omega => write!(f, "Omega"),
            OrderTerm::OmegaStar => write!(f, "OmegaStar"),
            OrderTerm::Zeta => write!(f, "Zeta"),
            OrderTerm::Sum(a, b) => write!(f, "Sum({}, {})", Ast(a), Ast(b)),
            OrderTerm::Product(a, b) => write!(f, "Product({}, {})", Ast(a), Ast(b)),
            OrderTerm::Reverse(b) => write!(f, "Reverse({})", Ast(b)),
            OrderTerm::Shuffle(blocks) => {
                write!(f, "Shuffle([")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", Ast(b))?;
                }
                write!(f, "])")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::OrderTerm::*;
    use super::*;

    fn b(t: OrderTerm) -> Box<OrderTerm> {
        Box::new(t)
    }

    #[test]
    fn validate_examples() {
        assert_eq!(Shuffle(vec![Zeta]).validate(), Ok(()));
        assert_eq!(Shuffle(vec![Empty]).validate(), Err(ValidationError::EmptyShuffleBlock(Empty)));
        assert_eq!(Finite(1).validate(), Err(ValidationError::BadFinite(1)));
        assert_eq!(Shuffle(vec![]).validate(), Err(ValidationError::EmptyBlockList));
    }

    #[test]
    fn validate_finds_nested_offender() {
        let t = OrderTerm::sum(Omega, Shuffle(vec![Zeta, OrderTerm::product(Empty, Omega)]));
        assert_eq!(t.validate(), Err(ValidationError::EmptyShuffleBlock(OrderTerm::product(Empty, Omega))));
        let t = OrderTerm::reverse(OrderTerm::product(Finite(0), Zeta));
        assert_eq!(t.validate(), Err(ValidationError::BadFinite(0)));
    }

    #[test]
    fn desugar_examples() {
        let t = Reverse(b(Sum(b(Omega), b(Shuffle(vec![Zeta])))));
        assert_eq!(t.desugar(), Sum(b(Shuffle(vec![Zeta])), b(OmegaStar)));
        assert_eq!(Reverse(b(Reverse(b(Zeta)))).desugar(), Zeta);
        assert_eq!(Product(b(Empty), b(Omega)).desugar(), Empty);
    }

    #[test]
    fn desugar_reverses_products_and_shuffles() {
        let t = OrderTerm::reverse(OrderTerm::product(Omega, OrderTerm::sum(Single, Omega)));
        assert_eq!(t.desugar(), OrderTerm::product(OmegaStar, OrderTerm::sum(OmegaStar, Single)));
        let t = OrderTerm::reverse(Shuffle(vec![Omega, Finite(3)]));
        assert_eq!(t.desugar(), Shuffle(vec![OmegaStar, Finite(3)]));
    }

    #[test]
    fn desugar_drops_empty_summands() {
        let t = OrderTerm::sum(Empty, OrderTerm::sum(Omega, OrderTerm::product(Zeta, Empty)));
        assert_eq!(t.desugar(), Omega);
        assert_eq!(OrderTerm::sum(Empty, Empty).desugar(), Empty);
    }
}
