//! Shared test support: a naive set-based closure oracle that shares no
//! code with the library's arena, and the published classification tables
//! as expected data.

#![allow(dead_code)]

use std::collections::BTreeSet;

use affine_subroots::affine_roots::{affine_reflect, AffineRootSystem};
use affine_subroots::{AffineRoot, AffineTypeLabel, Family, FiniteTypeLabel, SubrootSystem, TypeSum};

pub fn lbl(s: &str) -> AffineTypeLabel {
    s.parse().unwrap()
}

pub fn flbl(s: &str) -> FiniteTypeLabel {
    s.parse().unwrap()
}

/// Closure under sums and reflections inside `|t2| <= radius2`, by
/// repeated passes over all pairs until nothing changes.
pub fn naive_closure(seed: &[AffineRoot], amb: &AffineRootSystem, radius2: i64) -> BTreeSet<AffineRoot> {
    let mut set: BTreeSet<AffineRoot> = seed.iter().flat_map(|x| [*x, x.neg()]).collect();
    loop {
        let items: Vec<AffineRoot> = set.iter().copied().collect();
        let mut grew = false;
        for x in &items {
            for y in &items {
                let mut new = Vec::new();
                if let Some(s) = x.add(y) {
                    new.push(s);
                }
                if let Ok(r) = affine_reflect(x, y) {
                    new.push(r);
                }
                for z in new {
                    if z.t2.abs() <= radius2 && amb.contains(&z) && set.insert(z) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Windowed maximality by brute force: every root of the inner window not
/// in `sub` generates, together with `sub`, the full check window.
pub fn naive_is_maximal(sub: &SubrootSystem, inner: i64, check: i64, work: i64) -> Option<AffineRoot> {
    let amb = sub.ambient();
    let base = sub.window(work);
    let full: BTreeSet<AffineRoot> = amb.window(check).into_iter().collect();
    for g in amb.window(inner) {
        if sub.contains(&g) {
            continue;
        }
        let mut seed = base.clone();
        seed.push(g);
        let c = naive_closure(&seed, amb, work);
        let covered: BTreeSet<AffineRoot> = c.into_iter().filter(|x| x.t2.abs() <= check).collect();
        if covered != full {
            return Some(g);
        }
    }
    None
}

/// Parses a sum, dropping rank-zero summands; `None` when nothing is left.
pub fn ts(parts: &[String]) -> Option<TypeSum> {
    let kept: Vec<&String> = parts
        .iter()
        .filter(|p| {
            let head = p.split('^').next().unwrap();
            let digits: String = head.chars().filter(|c| c.is_ascii_digit()).collect();
            digits.parse::<u32>().unwrap() > 0
        })
        .collect();
    if kept.is_empty() {
        return None;
    }
    Some(kept.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("+").parse().unwrap())
}

fn set_of(rows: Vec<Vec<String>>) -> BTreeSet<TypeSum> {
    rows.iter().filter_map(|r| ts(r)).collect()
}

fn p(s: String) -> Vec<String> {
    s.split('+').map(str::to_string).collect()
}

/// Maximal closed subsystem types of a finite irreducible type.
pub fn table_finite(label: FiniteTypeLabel) -> BTreeSet<TypeSum> {
    let n = label.rank as i64;
    let mut rows: Vec<Vec<String>> = Vec::new();
    match label.family {
        Family::A => {
            rows.extend((0..=n - 2).map(|r| p(format!("A{}+A{}", r, n - r - 1))));
            rows.push(p(format!("A{}", n - 1)));
        }
        Family::B => {
            rows.extend((1..=n - 2).map(|r| p(format!("B{}+D{}", r, n - r))));
            rows.push(p(format!("B{}", n - 1)));
            rows.push(p(format!("D{}", n)));
        }
        Family::C => {
            rows.extend((1..=n - 1).map(|r| p(format!("C{}+C{}", r, n - r))));
            rows.push(p(format!("A{}", n - 1)));
        }
        Family::D => {
            rows.extend((2..=n - 2).map(|r| p(format!("D{}+D{}", r, n - r))));
            rows.push(p(format!("A{}", n - 1)));
            rows.push(p(format!("D{}", n - 1)));
        }
        Family::E => {
            let list: &[&str] = match n {
                6 => &["A5+A1", "A2+A2+A2", "D5"],
                7 => &["A5+A2", "A1+D6", "E6", "A7"],
                _ => &["A1+E7", "E6+A2", "A4+A4", "D8", "A8"],
            };
            rows.extend(list.iter().map(|s| p(s.to_string())));
        }
        Family::F => rows.extend(["A2+A2", "C3+A1", "B4"].iter().map(|s| p(s.to_string()))),
        Family::G => rows.extend(["A1+A1", "A2"].iter().map(|s| p(s.to_string()))),
        _ => {}
    }
    set_of(rows)
}

/// Maximal closed subroot system types of an untwisted affine type.
pub fn table_untwisted(label: AffineTypeLabel) -> BTreeSet<TypeSum> {
    let n = label.base.rank as i64;
    let mut rows: Vec<Vec<String>> = Vec::new();
    match label.base.family {
        Family::A => {
            rows.extend((0..=n - 1).map(|r| p(format!("A{}^1+A{}^1", r, n - r - 1))));
            rows.push(p(format!("A{}^1", n)));
        }
        Family::B => {
            rows.extend((1..=n - 2).map(|r| p(format!("B{}^1+D{}^1", r, n - r))));
            rows.push(p(format!("B{}^1", n - 1)));
            rows.push(p(format!("D{}^1", n)));
            rows.push(p(format!("B{}^1", n)));
        }
        Family::C => {
            rows.extend((1..=n - 1).map(|r| p(format!("C{}^1+C{}^1", r, n - r))));
            rows.push(p(format!("A{}^1", n - 1)));
            rows.push(p(format!("C{}^1", n)));
        }
        Family::D => {
            rows.extend((2..=n - 2).map(|r| p(format!("D{}^1+D{}^1", r, n - r))));
            rows.push(p(format!("A{}^1", n - 1)));
            rows.push(p(format!("D{}^1", n - 1)));
            rows.push(p(format!("D{}^1", n)));
        }
        Family::E => {
            let list: &[&str] = match n {
                6 => &["A5^1+A1^1", "A2^1+A2^1+A2^1", "D5^1", "E6^1"],
                7 => &["A5^1+A2^1", "A1^1+D6^1", "E6^1", "A7^1", "E7^1"],
                _ => &["A1^1+E7^1", "E6^1+A2^1", "A4^1+A4^1", "D8^1", "A8^1", "E8^1"],
            };
            rows.extend(list.iter().map(|s| p(s.to_string())));
        }
        Family::F => rows.extend(["A2^1+A2^1", "A1^1+C3^1", "B4^1", "F4^1"].iter().map(|s| p(s.to_string()))),
        Family::G => rows.extend(["A1^1+A1^1", "A2^1", "G2^1"].iter().map(|s| p(s.to_string()))),
        _ => {}
    }
    set_of(rows)
}

/// Range of `r` in the semi-closed `B_r^1 + B_{n-r}^1` entry of `D_{n+1}^(2)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SemiClosedRange {
    /// `2 <= r <= n-2`.
    Narrow,
    /// `1 <= r <= n-1`, one type for every proper subset `I` of size `r`.
    EveryProperSubset,
}

/// Maximal closed subroot system types of a twisted affine type, both
/// gradient columns together.
pub fn table_twisted(label: AffineTypeLabel, range: SemiClosedRange) -> BTreeSet<TypeSum> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let rank = label.base.rank as i64;
    match (label.base.family, label.twist) {
        (Family::A, 2) if rank == 2 => rows.extend(["A2^2", "A1^1"].iter().map(|s| p(s.to_string()))),
        (Family::A, 2) if rank % 2 == 0 => {
            let n = rank / 2;
            rows.extend((1..=n - 1).map(|r| p(format!("A{}^2+A{}^2", 2 * r, 2 * n - 2 * r - 1))));
            rows.push(p(format!("A{}^2", 2 * n)));
            rows.push(p(format!("A{}^2", 2 * n - 1)));
            rows.push(p(format!("B{}^1", n)));
        }
        (Family::A, 2) => {
            let n = (rank + 1) / 2;
            rows.extend((1..=n - 1).map(|r| p(format!("A{}^2+A{}^2", 2 * r - 1, 2 * n - 2 * r - 1))));
            rows.push(p(format!("A{}^2", 2 * n - 1)));
            rows.push(p(format!("C{}^1", n)));
            rows.push(p(format!("A{}^1", n - 1)));
            rows.push(p(format!("D{}^1", n)));
        }
        (Family::D, 2) => {
            let n = rank - 1;
            rows.extend((1..=n - 2).map(|r| p(format!("D{}^2+D{}^1", r + 1, n - r))));
            rows.push(p(format!("B{}^1", n)));
            rows.push(p(format!("D{}^2", n + 1)));
            rows.push(p(format!("D{}^2", n)));
            let rs = match range {
                SemiClosedRange::Narrow => 2..=n - 2,
                SemiClosedRange::EveryProperSubset => 1..=n - 1,
            };
            rows.extend(rs.map(|r| p(format!("B{}^1+B{}^1", r, n - r))));
        }
        (Family::E, 2) => {
            rows.extend(["A1^1+A5^2", "A2^1+A2^1", "E6^2", "F4^1", "D5^2", "C4^1"].iter().map(|s| p(s.to_string())))
        }
        (Family::D, 3) => rows.extend(["A1^1+A1^1", "D4^3", "G2^1", "A2^1"].iter().map(|s| p(s.to_string()))),
        _ => {}
    }
    set_of(rows)
}

/// Every irreducible affine ambient whose gradient has rank at most `max`.
pub fn ambients_up_to_rank(max: u32) -> Vec<AffineTypeLabel> {
    let mut out: Vec<AffineTypeLabel> = Vec::new();
    let mut push = |s: String| {
        if let Ok(l) = s.parse::<AffineTypeLabel>() {
            if let Ok(c) = l.canonical() {
                if c.gradient_label().rank <= max && !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    };
    for n in 1..=max {
        for f in ["A", "B", "C", "D"] {
            push(format!("{}{}^1", f, n));
        }
        push(format!("A{}^2", 2 * n));
        push(format!("A{}^2", 2 * n - 1));
        push(format!("D{}^2", n + 1));
    }
    for s in ["G2^1", "F4^1", "E6^1", "D4^3", "E6^2"] {
        push(s.to_string());
    }
    out
}
