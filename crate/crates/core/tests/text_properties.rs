mod common;

use proptest::prelude::*;

use common::gen::expr;
use common::{full_corpus, term};
use ordtype::canon::canonicalize;
use ordtype::textio::{parse, print, to_dot};

proptest! {
    #[test]
    fn print_then_parse_is_identity(s in expr()) {
        let t = term(&s);
        prop_assert_eq!(parse(&print(&t)), Ok(t));
    }

    #[test]
    fn printing_is_stable(s in expr()) {
        let once = print(&term(&s));
        prop_assert_eq!(print(&term(&once)), once);
    }

    #[test]
    fn desugar_is_idempotent(s in expr()) {
        let d = term(&s).desugar();
        prop_assert_eq!(d.desugar(), d);
    }

    #[test]
    fn desugared_terms_print_to_equivalent_text(s in expr()) {
        let d = term(&s).desugar();
        prop_assert_eq!(term(&print(&d)).desugar(), d);
    }

    #[test]
    fn dot_output_is_well_formed(s in expr()) {
        if let Ok(cf) = canonicalize(&term(&s)) {
            let dot = to_dot(&cf);
            prop_assert!(dot.starts_with("digraph canonical {\n"), "{}", dot);
            prop_assert!(dot.ends_with("}\n"), "{}", dot);
            prop_assert_eq!(dot.matches('{').count(), dot.matches('}').count());
        }
    }
}

#[test]
fn corpus_round_trips() {
    for s in full_corpus() {
        let t = term(s);
        assert_eq!(parse(&print(&t)).as_ref(), Ok(&t), "{s}");
    }
}

#[test]
fn rejects_malformed_input() {
    for bad in ["", "N +", "Q[", "Q[]", "(N", "N N", "2147483648", "Q[0]", "Q[1, 0*N]", "N ~ ~ +"] {
        assert!(parse(bad).is_err(), "{bad:?} parsed");
    }
}

#[test]
fn parse_errors_carry_spans() {
    let err = parse("N + + Z").unwrap_err();
    let span = err.span().expect("syntax errors have spans");
    assert_eq!(span.start, 4);
}
