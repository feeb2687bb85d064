#![allow(dead_code)]

use ordtype::term::OrderTerm;
use ordtype::textio::parse;

/// The worked examples: dense types with and without endpoints, and the
/// shuffle-with-flanks shapes.
pub const GOLDEN: &[&str] = &[
    "Q",
    "1 + Q",
    "Q + 1",
    "1 + Q + 1",
    "Q[Z]",
    "Z + Q[Z]",
    "Q[Z] + Z",
    "Z + Q[Z] + Z",
    "N + Q[Z] + N~",
    "N + Q[Z]",
    "N + Q[Z,N]",
];

/// Terms with a known absorption verdict, covering every case and both
/// kinds of non-absorbing order.
pub const CLASSIFIED: &[(&str, Option<u8>)] = &[
    ("Q", Some(1)),
    ("Q[Z]", Some(1)),
    ("Q[N, Z]", Some(1)),
    ("Z + Q[Z]", Some(2)),
    ("1 + Q", Some(2)),
    ("N + Q[Z, N]", Some(2)),
    ("Q[Z] + Z", Some(3)),
    ("Q + 1", Some(3)),
    ("Q[N~, Z] + N~", Some(3)),
    ("Z + Q[Z] + Z", Some(4)),
    ("1 + Q + 1", Some(4)),
    ("N + Q[Z] + N~", Some(5)),
    ("1 + Q[2] + 1", Some(5)),
    ("N + Q[N, Z] + N~", Some(6)),
    ("N + Q[Z, N~] + N~", Some(7)),
    ("N + Q[Z, N, N~] + N~", Some(8)),
    ("N + Q[Z]", None),
    ("Q[Z] + N~", None),
    ("Z", None),
    ("N", None),
    ("2", None),
    ("N + Q", None),
    ("Q + Q[Z] + Q", None),
];

/// Additional terms exercising products, reversal and nesting.
pub const EXTRA: &[&str] = &[
    "0",
    "1",
    "7",
    "N~",
    "N*Z",
    "Z*N",
    "(N + 1)*Z",
    "2*N + 3",
    "N*N~ + Q[N~, 2]",
    "Q[1, 1 + Q]",
    "Q[N, Z + Q[N, Z]]",
    "Q[1 + Q[Z]]",
    "(N + Q[Z])~",
    "Q*Z + 1",
    "(1 + Q + 1)*(N + N~)",
];

pub fn term(s: &str) -> OrderTerm {
    parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Every corpus expression.
pub fn full_corpus() -> Vec<&'static str> {
    let mut all: Vec<&str> = GOLDEN.to_vec();
    all.extend(CLASSIFIED.iter().map(|(s, _)| *s));
    all.extend_from_slice(EXTRA);
    all.sort_unstable();
    all.dedup();
    all
}

pub mod gen;
