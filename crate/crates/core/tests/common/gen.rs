//! Expression generators for property tests. Strategies produce source
//! text so every generated term is reachable through the parser.

use proptest::prelude::*;

fn atom(allow_empty: bool) -> BoxedStrategy<String> {
    let mut atoms = vec!["1", "2", "3", "5", "N", "N~", "Z", "Q"];
    if allow_empty {
        atoms.push("0");
    }
    prop::sample::select(atoms).prop_map(str::to_string).boxed()
}

fn nonempty_expr() -> BoxedStrategy<String> {
    atom(false)
        .prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
                inner.clone().prop_map(|a| format!("({a})~")),
                prop::collection::vec(inner, 1..=3).prop_map(|bs| format!("Q[{}]", bs.join(", "))),
            ]
        })
        .boxed()
}

/// Arbitrary expressions, possibly denoting the empty order.
pub fn expr() -> BoxedStrategy<String> {
    prop_oneof![
        4 => nonempty_expr(),
        1 => (atom(true), nonempty_expr()).prop_map(|(a, b)| format!("{a} + {b}")),
    ]
    .boxed()
}

/// Expressions whose canonical forms never get stuck: sums of scattered
/// atoms and shuffles of such sums.
pub fn tame_expr() -> BoxedStrategy<String> {
    let piece = prop::sample::select(vec!["1", "2", "N", "N~", "Z", "N*2", "Z*3"]).prop_map(str::to_string);
    let scat = prop::collection::vec(piece, 1..=3).prop_map(|ps| ps.join(" + "));
    let shuf = prop::collection::vec(scat.clone(), 1..=3).prop_map(|bs| format!("Q[{}]", bs.join(", ")));
    prop::collection::vec(prop_oneof![2 => scat, 1 => shuf], 1..=3).prop_map(|parts| parts.join(" + ")).boxed()
}

/// `L + Q[blocks] + R` with scattered flanks, many of them self-similar.
pub fn shaped_expr() -> BoxedStrategy<String> {
    let piece = prop::sample::select(vec!["1", "2", "N", "N~", "Z"]).prop_map(str::to_string);
    let scat = prop::collection::vec(piece.clone(), 1..=2).prop_map(|ps| ps.join(" + "));
    let flank = prop_oneof![1 => Just(String::new()), 2 => scat.clone()];
    (flank.clone(), prop::collection::vec(scat, 1..=3), flank)
        .prop_map(|(l, bs, r)| {
            let mut parts = Vec::new();
            if !l.is_empty() {
                parts.push(l);
            }
            parts.push(format!("Q[{}]", bs.join(", ")));
            if !r.is_empty() {
                parts.push(r);
            }
            parts.join(" + ")
        })
        .boxed()
}

/// Multipliers for absorption laws.
pub fn factor() -> BoxedStrategy<String> {
    prop::sample::select(vec![
        "0", "1", "2", "3", "N", "N~", "Z", "Q", "1+Q", "Q+1", "1+Q+1", "N+N~", "N+1", "1+N~", "Q[Z]", "N*Z",
    ])
    .prop_map(str::to_string)
    .boxed()
}
