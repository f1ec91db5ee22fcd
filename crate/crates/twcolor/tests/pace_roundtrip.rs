//! Byte-stability of the PACE readers/writers over the fixture corpus, plus
//! a proptest invariant that writing is a fixed point of read-then-write.

use proptest::prelude::*;

use twcolor::decomposition::validate;
use twcolor::graph::Graph;
use twcolor::pace::{read_gr, read_td, write_gr, write_td};

const GR_FIXTURES: &[(&str, &str)] = &[
    ("c5.gr", include_str!("fixtures/c5.gr")),
    ("k4.gr", include_str!("fixtures/k4.gr")),
    ("p3.gr", include_str!("fixtures/p3.gr")),
    ("tree5.gr", include_str!("fixtures/tree5.gr")),
    ("spider7.gr", include_str!("fixtures/spider7.gr")),
    ("k2.gr", include_str!("fixtures/k2.gr")),
];

const TD_FIXTURES: &[(&str, &str)] = &[
    ("c5.td", include_str!("fixtures/c5.td")),
    ("k4.td", include_str!("fixtures/k4.td")),
    ("p3.td", include_str!("fixtures/p3.td")),
    ("tree5.td", include_str!("fixtures/tree5.td")),
    ("spider7.td", include_str!("fixtures/spider7.td")),
    ("k2nice.td", include_str!("fixtures/k2nice.td")),
];

#[test]
fn gr_fixtures_are_byte_stable() {
    for (name, text) in GR_FIXTURES {
        let file = read_gr(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(file.warnings.is_empty(), "{name}: {:?}", file.warnings);
        assert_eq!(&write_gr(&file.graph), text, "{name} not byte-stable");
    }
}

#[test]
fn td_fixtures_are_byte_stable() {
    for (name, text) in TD_FIXTURES {
        let file = read_td(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(file.warnings.is_empty(), "{name}: {:?}", file.warnings);
        assert_eq!(
            &write_td(&file.td, file.declared_n),
            text,
            "{name} not byte-stable"
        );
    }
}

#[test]
fn fixture_decompositions_validate_against_their_graphs() {
    let pairs = [
        ("c5.gr", "c5.td"),
        ("k4.gr", "k4.td"),
        ("p3.gr", "p3.td"),
        ("tree5.gr", "tree5.td"),
        ("spider7.gr", "spider7.td"),
        ("k2.gr", "k2nice.td"),
    ];
    let gr: std::collections::HashMap<_, _> = GR_FIXTURES.iter().copied().collect();
    let td: std::collections::HashMap<_, _> = TD_FIXTURES.iter().copied().collect();
    for (g_name, t_name) in pairs {
        let graph = read_gr(gr[g_name]).unwrap().graph;
        let decomp = read_td(td[t_name]).unwrap().td;
        let report = validate(&graph, &decomp);
        assert!(report.is_valid(), "{g_name}/{t_name}: {report}");
    }
}

#[test]
fn scrambled_input_canonicalizes_to_the_fixture() {
    let messy = include_str!("fixtures/messy_c5.gr");
    let file = read_gr(messy).unwrap();
    assert_eq!(write_gr(&file.graph), include_str!("fixtures/c5.gr"));
}

proptest! {
    // write . read is a fixed point: reading canonical text and re-writing
    // reproduces it exactly.
    #[test]
    fn write_read_write_is_stable(n in 0usize..12, edge_bits in any::<u64>()) {
        let mut g = Graph::new(n);
        let mut bit = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if edge_bits >> (bit % 64) & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
                bit += 1;
            }
        }
        let once = write_gr(&g);
        let again = write_gr(&read_gr(&once).unwrap().graph);
        prop_assert_eq!(once, again);
    }
}
