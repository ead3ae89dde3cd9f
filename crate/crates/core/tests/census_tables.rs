use std::collections::BTreeSet;

use hgs_core::obstruction::{census, Provenance};
use hgs_core::{Catalog, Limits};

const CENSUS_12: &str = include_str!("data/census_12.csv");
const CENSUS_24: &str = include_str!("data/census_24.csv");
const CERTIFIED: &str = include_str!("data/certified_cells.tsv");

fn certified_in_table(order: usize) -> BTreeSet<(String, String)> {
    let t = census(Catalog::standard(), order, &Limits::default()).unwrap();
    let mut out = BTreeSet::new();
    for (i, row) in t.cells.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.provenance == Provenance::ObstructionZero {
                assert_eq!(c.count, 0);
                out.insert((t.names[i].clone(), t.names[j].clone()));
            }
        }
    }
    out
}

fn expected_certified(order: usize) -> BTreeSet<(String, String)> {
    let cat = Catalog::standard();
    CERTIFIED
        .lines()
        .skip(1)
        .map(|l| {
            let (g, m) = l.split_once('\t').unwrap();
            (g.to_string(), m.to_string())
        })
        .filter(|(g, _)| cat.lookup(g).unwrap().order() == order)
        .collect()
}

#[test]
fn order_12_matches_golden() {
    let t = census(Catalog::standard(), 12, &Limits::default()).unwrap();
    assert_eq!(t.to_csv(), CENSUS_12);
    assert_eq!(t.row("A4").unwrap(), vec![0, 0, 10, 0, 4]);
    assert_eq!(t.row("D6").unwrap(), vec![14, 9, 0, 14, 3]);
    assert_eq!(certified_in_table(12), expected_certified(12));
}

#[test]
fn order_24_matches_golden() {
    let t = census(Catalog::standard(), 24, &Limits::default()).unwrap();
    assert_eq!(t.to_csv(), CENSUS_24);
    assert_eq!(t.row("SL(2,3)").unwrap(), vec![0, 0, 10, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 8]);
    assert_eq!(t.zero_cells(), 76);
    assert_eq!(t.certified_cells(), 20);
    let certified = certified_in_table(24);
    assert_eq!(certified, expected_certified(24));
}

#[test]
fn json_carries_provenance() {
    let t = census(Catalog::standard(), 12, &Limits::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    assert_eq!(v["order"], 12);
    let cell = &v["cells"][2][0];
    assert_eq!(cell["count"], 0);
    assert_eq!(cell["provenance"], "obstruction-zero");
    assert_eq!(cell["witness"]["m"], 6);
    assert_eq!(v["cells"][0][0]["provenance"], "computed");
}

#[test]
fn order_16_is_consistent() {
    // Building the table already checks exact Byott quotients and that
    // certified cells enumerate to zero.
    let t = census(Catalog::standard(), 16, &Limits::default()).unwrap();
    assert_eq!(t.certified_cells(), 5);
}

#[test]
fn diagonal_contains_both_regular_representations() {
    for n in [12, 16, 24] {
        let t = census(Catalog::standard(), n, &Limits::default()).unwrap();
        for i in 0..t.names.len() {
            assert!(t.cells[i][i].count >= 1, "{}", t.names[i]);
        }
    }
}
