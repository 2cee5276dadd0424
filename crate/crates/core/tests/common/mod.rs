//! Shared fixture data for the three fully worked degree-4 pairs: the word
//! environments generated from A and B, the hand-picked adapted bases, and
//! the expected matrices in those bases.

#![allow(dead_code)]

use std::collections::HashMap;

use hypergeo_core::linalg::{rat_from_str, Rat, RatMat, RatVec};
use hypergeo_core::monodromy::{monodromy_pair, MonodromyData, Normalization};
use hypergeo_core::poly::IntPoly;
use hypergeo_core::witness::{resolve_bindings, FlagBasis};

pub fn setup(f: &[i64], g: &[i64]) -> MonodromyData {
    let f = IntPoly::from_i64(f);
    let g = IntPoly::from_i64(g);
    monodromy_pair(&f, &g, Normalization::Unit12).unwrap()
}

/// Environment with A, B bound plus the given derived words, in order.
pub fn env_with(md: &MonodromyData, bindings: &[(&str, &str)]) -> HashMap<String, RatMat> {
    let mut base = HashMap::new();
    base.insert("A".to_string(), md.a.clone());
    base.insert("B".to_string(), md.b.clone());
    let owned: Vec<(String, String)> = bindings
        .iter()
        .map(|(n, w)| (n.to_string(), w.to_string()))
        .collect();
    resolve_bindings(&base, &owned).unwrap()
}

pub fn matq(rows: &[&[&str]]) -> RatMat {
    let mut m = RatMat::zeros(rows.len(), rows[0].len());
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            *m.at_mut(i, j) = rat_from_str(s).unwrap();
        }
    }
    m
}

pub fn rat(s: &str) -> Rat {
    rat_from_str(s).unwrap()
}

// ---------------------------------------------------------------------------
// Pair (X-1)(X^3-1), X^4+1  ("cyclic")
// ---------------------------------------------------------------------------

pub const CYCLIC_F: &[i64] = &[1, -1, 0, -1, 1];
pub const CYCLIC_G: &[i64] = &[1, 0, 0, 0, 1];

pub const CYCLIC_BINDINGS: &[(&str, &str)] = &[
    ("C1", "A^-1 B"),
    ("C2", "A^-1 C1 A"),
    ("C3", "A^-2 C1 A^2"),
    ("D", "C2 C1^2"),
    ("W", "D^-1 C1 D"),
    ("E", "W^-1 C3"),
    ("F", "C1^-1 W^-1 C1 C3 C1 W^-1"),
    ("x", "[E,F]"),
    ("y", "E^2 ([E,F])^-1"),
    ("z", "(E^-2 F)^2 ([E,F])^3"),
];

pub fn cyclic_flag(md: &MonodromyData) -> FlagBasis {
    // Adapted basis (e1, e1+e3, e2-e4, e2).
    let basis = vec![
        RatVec::from_i64(&[1, 0, 0, 0]),
        RatVec::from_i64(&[1, 0, 1, 0]),
        RatVec::from_i64(&[0, 1, 0, -1]),
        RatVec::from_i64(&[0, 1, 0, 0]),
    ];
    FlagBasis::from_basis(basis, &md.omega).unwrap()
}

pub fn cyclic_expected() -> Vec<(&'static str, RatMat)> {
    vec![
        (
            "C1",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "1", "1", "0"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "C2",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "0", "1", "0"],
                &["0", "-1", "2", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "C3",
            matq(&[
                &["1", "-2", "0", "-2"],
                &["0", "1", "0", "0"],
                &["0", "-1", "1", "-1"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "D",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "0", "1", "0"],
                &["0", "-1", "0", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "W",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "1", "0", "0"],
                &["0", "-1", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "E",
            matq(&[
                &["1", "-2", "0", "-2"],
                &["0", "1", "0", "0"],
                &["0", "0", "1", "-1"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "F",
            matq(&[
                &["1", "-4", "-2", "-2"],
                &["0", "1", "0", "1"],
                &["0", "0", "1", "-2"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "x",
            matq(&[
                &["1", "0", "0", "-4"],
                &["0", "1", "0", "0"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "y",
            matq(&[
                &["1", "-4", "0", "0"],
                &["0", "1", "0", "0"],
                &["0", "0", "1", "-2"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "z",
            matq(&[
                &["1", "0", "-4", "0"],
                &["0", "1", "0", "2"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Pair (X-1)^4, X^4-X^3+X^2-X+1  ("quintic")
// ---------------------------------------------------------------------------

pub const QUARTIC_UNIT: &[i64] = &[1, -4, 6, -4, 1];
pub const QUINTIC_G: &[i64] = &[1, -1, 1, -1, 1];

pub const QUINTIC_BINDINGS: &[(&str, &str)] = &[
    ("C1", "A^-1 B"),
    ("C2", "B^-2 C1 B^2"),
    ("C3", "B^2 C1 B^-2"),
    ("E", "(C2^2 C1 C3^2 C1^-1)^2 C1"),
    ("F", "C2 E C2^-1"),
    ("x", "[E,F]"),
    ("y", "E^8 ([E,F])^-1"),
    ("z", "(F E^-1)^2 ([E,F])^-1"),
];

pub fn quintic_flag(md: &MonodromyData) -> FlagBasis {
    let basis = vec![
        RatVec::from_i64(&[1, -1, 1, 0]),
        RatVec::from_i64(&[-3, 5, -3, 0]),
        RatVec::from_i64(&[2, -5, 5, -2]),
        RatVec::from_i64(&[1, 0, 0, 0]),
    ];
    FlagBasis::from_basis(basis, &md.omega).unwrap()
}

pub fn quintic_omega() -> RatMat {
    matq(&[
        &["0", "1", "5/3", "5/3"],
        &["-1", "0", "1", "5/3"],
        &["-5/3", "-1", "0", "1"],
        &["-5/3", "-5/3", "-1", "0"],
    ])
}

pub fn quintic_flag_form() -> RatMat {
    matq(&[
        &["0", "0", "0", "-2/3"],
        &["0", "0", "-2/3", "0"],
        &["0", "2/3", "0", "0"],
        &["2/3", "0", "0", "0"],
    ])
}

pub fn quintic_expected() -> Vec<(&'static str, RatMat)> {
    vec![
        (
            "C1",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "1", "-2", "0"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "C2",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "1", "0", "0"],
                &["0", "2", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "C3",
            matq(&[
                &["1", "-1", "3/2", "-1/2"],
                &["0", "4", "-9/2", "3/2"],
                &["0", "2", "-2", "1"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "E",
            matq(&[
                &["1", "0", "2", "2"],
                &["0", "1", "0", "2"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "F",
            matq(&[
                &["1", "-4", "2", "2"],
                &["0", "1", "0", "2"],
                &["0", "0", "1", "4"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "x",
            matq(&[
                &["1", "0", "0", "16"],
                &["0", "1", "0", "0"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "y",
            matq(&[
                &["1", "0", "16", "0"],
                &["0", "1", "0", "16"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "z",
            matq(&[
                &["1", "-8", "0", "0"],
                &["0", "1", "0", "0"],
                &["0", "0", "1", "8"],
                &["0", "0", "0", "1"],
            ]),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Pair (X-1)^4, X^4-X^3+2X^2-X+1  ("mixed")
// ---------------------------------------------------------------------------

pub const MIXED_G: &[i64] = &[1, -1, 2, -1, 1];

pub const MIXED_BINDINGS: &[(&str, &str)] = &[
    ("C1", "A^-1 B"),
    ("C2", "B^-2 C1 B^2"),
    ("C3", "B^2 C1 B^-2"),
    ("E", "C2^-1 C3 C2 C1^-1"),
    ("F", "C2 E C2^-1"),
    ("x", "[E,F]"),
    ("y", "E^2 [E,F]"),
    ("z", "(F E^-1)^2 ([E,F])^-1"),
];

pub fn mixed_flag(md: &MonodromyData) -> FlagBasis {
    let basis = vec![
        RatVec::from_i64(&[1, -1, 1, 0]),
        RatVec::from_i64(&[-3, 4, -3, 0]),
        RatVec::from_i64(&[4, -5, 4, -1]),
        RatVec::from_i64(&[1, 0, 0, 0]),
    ];
    FlagBasis::from_basis(basis, &md.omega).unwrap()
}

pub fn mixed_omega() -> RatMat {
    matq(&[
        &["0", "1", "4/3", "1/3"],
        &["-1", "0", "1", "4/3"],
        &["-4/3", "-1", "0", "1"],
        &["-1/3", "-4/3", "-1", "0"],
    ])
}

pub fn mixed_flag_form() -> RatMat {
    matq(&[
        &["0", "0", "0", "-1/3"],
        &["0", "0", "-4/3", "0"],
        &["0", "4/3", "0", "0"],
        &["1/3", "0", "0", "0"],
    ])
}

pub fn mixed_expected() -> Vec<(&'static str, RatMat)> {
    vec![
        (
            "C1",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "1", "-1", "0"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "C2",
            matq(&[
                &["1", "0", "0", "0"],
                &["0", "1", "0", "0"],
                &["0", "1", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "C3",
            matq(&[
                &["1", "-4", "4", "-4"],
                &["0", "2", "-1", "1"],
                &["0", "1", "0", "1"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "E",
            matq(&[
                &["1", "0", "4", "-4"],
                &["0", "1", "0", "1"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "F",
            matq(&[
                &["1", "-4", "4", "-4"],
                &["0", "1", "0", "1"],
                &["0", "0", "1", "1"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "x",
            matq(&[
                &["1", "0", "0", "8"],
                &["0", "1", "0", "0"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "y",
            matq(&[
                &["1", "0", "8", "0"],
                &["0", "1", "0", "2"],
                &["0", "0", "1", "0"],
                &["0", "0", "0", "1"],
            ]),
        ),
        (
            "z",
            matq(&[
                &["1", "-8", "0", "0"],
                &["0", "1", "0", "0"],
                &["0", "0", "1", "2"],
                &["0", "0", "0", "1"],
            ]),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Pair (X-1)^4, X^4-2X^3+3X^2-2X+1  ("small coefficient")
// ---------------------------------------------------------------------------

pub const SMALLC_G: &[i64] = &[1, -2, 3, -2, 1];

pub const SMALLC_BINDINGS: &[(&str, &str)] = &[
    ("C1", "A^-1 B"),
    ("C2", "A C1 A^-1"),
    ("C3", "A^-1 C1 A"),
    ("E", "(C2^2 C1^-1 C3^2 C1)^2 C1"),
    ("F", "C2 E C2^-1"),
];
