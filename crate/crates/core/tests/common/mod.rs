#![allow(dead_code)]

use knotcore::diagram::Diagram;
use knotcore::notation::{braid_closure, parse_braid, parse_pd};

pub const TREFOIL_PD: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";

/// Small knots and links given as braid words, with their names.
pub const BRAIDS: &[(&str, &str)] = &[
    ("trefoil", "B2: 1 1 1"),
    ("mirror_trefoil", "B2: -1 -1 -1"),
    ("figure_eight", "B3: 1 -2 1 -2"),
    ("hopf", "B2: 1 1"),
    ("cinquefoil", "B2: 1 1 1 1 1"),
    ("three_twist", "B3: 1 1 1 2 -1 2"),
    ("stevedore", "B4: 1 1 2 -1 -3 2 -3"),
    ("six_two", "B3: 1 1 1 -2 1 -2"),
    ("six_three", "B3: 1 1 -2 1 -2 -2"),
    ("seven_one", "B2: 1 1 1 1 1 1 1"),
    ("eight_nineteen", "B3: 1 1 1 2 1 1 1 2"),
    ("whitehead", "B3: 1 1 -2 1 -2"),
    ("borromean", "B3: 1 -2 1 -2 1 -2"),
];

pub fn braid(text: &str) -> Diagram {
    braid_closure(&parse_braid(text).unwrap())
}

pub fn named(name: &str) -> Diagram {
    if name == "trefoil_pd" {
        return parse_pd(TREFOIL_PD).unwrap();
    }
    braid(BRAIDS.iter().find(|(n, _)| *n == name).unwrap().1)
}

pub fn corpus() -> Vec<(&'static str, Diagram)> {
    let mut v: Vec<_> = BRAIDS.iter().map(|(n, b)| (*n, braid(b))).collect();
    v.push(("trefoil_pd", parse_pd(TREFOIL_PD).unwrap()));
    v
}

pub fn positive_curl() -> Diagram {
    Diagram::from_tuples(&[[1, 1, 2, 2]], 0).unwrap()
}

pub fn negative_curl() -> Diagram {
    Diagram::from_tuples(&[[1, 2, 2, 1]], 0).unwrap()
}
