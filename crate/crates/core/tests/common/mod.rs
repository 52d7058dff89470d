//! Shared fixtures: a corpus of small groups and a brute-force lattice.

#![allow(dead_code)]

use std::collections::BTreeSet;

use perfgroup::{parse_spec, Group, Realizer};

pub fn realize(text: &str) -> Group {
    parse_spec(text)
        .unwrap_or_else(|e| panic!("{text}: {e}"))
        .realize(&Realizer::default())
        .unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Quaternion group from its multiplication rules. Element `2u + s` is
/// (-1)^s times unit u in {1, i, j, k}.
pub fn quaternion() -> Group {
    // unit products: (sign, unit) of e_a * e_b
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let rows: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (ux, sx) = (x / 2, x % 2);
                    let (uy, sy) = (y / 2, y % 2);
                    let (s, u) = UNIT[ux][uy];
                    2 * u + (s + sx + sy) % 2
                })
                .collect()
        })
        .collect();
    Group::from_table(&rows, "Q8").expect("quaternion table")
}

pub const CORPUS_SPECS: &[&str] = &[
    "C1",
    "C2",
    "C3",
    "C4",
    "C5",
    "C6",
    "C7",
    "C8",
    "C9",
    "C10",
    "C11",
    "C12",
    "C16",
    "C25",
    "C27",
    "S1",
    "S2",
    "S3",
    "S4",
    "A1",
    "A2",
    "A3",
    "A4",
    "A5",
    "D2",
    "D4",
    "D6",
    "D8",
    "D10",
    "D12",
    "D14",
    "D16",
    "D18",
    "C2 x C2",
    "C2 x C2 x C2",
    "C3 x C3",
    "S3 x C5",
    "C2 x S3",
    "D8 x C3",
    "C4 x C2",
    "A4 x C2",
    "S3 x S3",
    "C2 x C4 x C2",
    "D10 x C3",
    "C2 x A5",
    "S4 x C5",
    "C3 x C9",
];

/// Every group the property suites quantify over.
pub fn corpus() -> Vec<Group> {
    let mut groups: Vec<Group> = CORPUS_SPECS.iter().map(|s| realize(s)).collect();
    let q8 = quaternion();
    let c3 = realize("C3");
    groups.push(Realizer::default().direct_product(&q8, &c3).unwrap());
    groups.push(q8);
    groups
}

/// The prime `p` when `n` is a positive power of `p`.
pub fn is_prime_power(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn classes_by_scan(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class = BTreeSet::new();
        for h in 0..n {
            class.insert(g.mul(g.mul(h, x), g.inv(h)));
        }
        for &y in &class {
            seen[y] = true;
        }
        out.push(class.into_iter().collect());
    }
    out
}

/// Number of conjugacy classes, counted by scanning.
pub fn class_count(g: &Group) -> usize {
    classes_by_scan(g).len()
}

/// Normal subgroups found by testing every union of conjugacy classes that
/// contains the identity for closure under multiplication.
pub fn oracle_normal_subgroups(g: &Group) -> BTreeSet<Vec<usize>> {
    let e = g.identity();
    let classes = classes_by_scan(g);
    let (id_class, rest): (Vec<_>, Vec<_>) = classes.into_iter().partition(|c| c.contains(&e));
    let mut found = BTreeSet::new();
    for mask in 0u64..(1u64 << rest.len()) {
        let mut member = vec![false; g.order()];
        for &x in &id_class[0] {
            member[x] = true;
        }
        for (i, c) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &x in c {
                    member[x] = true;
                }
            }
        }
        let elems: Vec<usize> = (0..g.order()).filter(|&x| member[x]).collect();
        let closed = elems
            .iter()
            .all(|&a| elems.iter().all(|&b| member[g.mul(a, b)]));
        if closed {
            found.insert(elems);
        }
    }
    found
}
