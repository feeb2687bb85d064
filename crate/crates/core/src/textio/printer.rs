use std::fmt::{self, Write};

use crate::term::OrderTerm;

// Binding levels, loosest first.
const SUM: u8 = 0;
const PROD: u8 = 1;
const POST: u8 = 2;

/// Renders a term in expression syntax with minimal parentheses.
///
/// The output parses back to a structurally equal term.
pub fn print(term: &OrderTerm) -> String {
    let mut out = String::new();
    write_term(&mut out, term, SUM);
    out
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

fn level(term: &OrderTerm) -> u8 {
    match term {
        OrderTerm::Sum(..) => SUM,
        OrderTerm::Product(..) => PROD,
        _ => POST,
    }
}

fn write_term(out: &mut String, term: &OrderTerm, min_level: u8) {
    if level(term) < min_level {
        out.push('(');
        write_term(out, term, SUM);
        out.push(')');
        return;
    }
    match term {
        OrderTerm::Empty => out.push('0'),
        OrderTerm::Single => out.push('1'),
        OrderTerm::Finite(n) => {
            let _ = write!(out, "{n}");
        }
        OrderTerm::Omega => out.push('N'),
        // ℕ* is printed as the reversal it parses from.
        OrderTerm::OmegaStar => out.push_str("N~"),
        OrderTerm::Zeta => out.push('Z'),
        OrderTerm::Sum(a, b) => {
            write_term(out, a, SUM);
            out.push_str(" + ");
            write_term(out, b, PROD);
        }
        OrderTerm::Product(a, b) => {
            write_term(out, a, PROD);
            out.push('*');
            write_term(out, b, POST);
        }
        OrderTerm::Reverse(body) => {
            // Only atoms and reversals may precede '~' unparenthesized.
            if level(body) < POST {
                out.push('(');
                write_term(out, body, SUM);
                out.push(')');
            } else {
                write_term(out, body, POST);
            }
            out.push('~');
        }
        OrderTerm::Shuffle(blocks) => {
            if blocks.as_slice() == [OrderTerm::Single] {
                out.push('Q');
                return;
            }
            out.push_str("Q[");
            for (i, block) in blocks.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_term(out, block, SUM);
            }
            out.push(']');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::OrderTerm::*;
    use crate::textio::parse;

    #[test]
    fn print_examples() {
        assert_eq!(print(&OrderTerm::sum(Omega, Shuffle(vec![Zeta]))), "N + Q[Z]");
        assert_eq!(print(&OrderTerm::reverse(Omega)), "N~");
        assert_eq!(print(&OrderTerm::product(Finite(2), Zeta)), "2*Z");
    }

    #[test]
    fn parenthesizes_only_where_needed() {
        let right_sum = OrderTerm::sum(Omega, OrderTerm::sum(Single, Zeta));
        assert_eq!(print(&right_sum), "N + (1 + Z)");
        let right_prod = OrderTerm::product(Omega, OrderTerm::product(Finite(2), Zeta));
        assert_eq!(print(&right_prod), "N*(2*Z)");
        let rev_sum = OrderTerm::reverse(OrderTerm::sum(Single, Omega));
        assert_eq!(print(&rev_sum), "(1 + N)~");
        let rev_rev = OrderTerm::reverse(OrderTerm::reverse(Omega));
        assert_eq!(print(&rev_rev), "N~~");
        let prod_of_sum = OrderTerm::product(OrderTerm::sum(Single, Omega), Zeta);
        assert_eq!(print(&prod_of_sum), "(1 + N)*Z");
        assert_eq!(print(&Shuffle(vec![Single, OrderTerm::sum(Single, OrderTerm::rationals())])), "Q[1,1 + Q]");
    }

    #[test]
    fn round_trips_tricky_terms() {
        for t in [
            OrderTerm::reverse(OrderTerm::product(Omega, Zeta)),
            OrderTerm::product(OrderTerm::reverse(Omega), OrderTerm::reverse(Zeta)),
            OrderTerm::sum(OrderTerm::sum(Empty, Single), OrderTerm::product(Finite(4), OrderTerm::reverse(Omega))),
            OrderTerm::reverse(OrderTerm::rationals()),
            Shuffle(vec![Shuffle(vec![Single]), OrderTerm::sum(Zeta, Omega)]),
        ] {
            assert_eq!(parse(&print(&t)).unwrap(), t, "{}", print(&t));
        }
    }
}
