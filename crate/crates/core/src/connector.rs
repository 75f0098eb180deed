//! Decorated connectors on `2(n+1)` points and the index set of the
//! σ-symmetric diagram basis.
//!
//! Top points are `1..=m`, bottom points `-1..=-m` (`m = n + 1`).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinat::{binom, double_fact, factorial, pow2};
use crate::error::{Error, Result};
use crate::ring::Marker;

/// Order on points: `1 < -1 < 2 < -2 < …`.
fn point_key(p: i32) -> (u32, bool) {
    (p.unsigned_abs(), p < 0)
}

fn sorted_pair(a: i32, b: i32) -> (i32, i32) {
    if point_key(a) <= point_key(b) {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub a: i32,
    pub b: i32,
    pub decorated: bool,
}

impl Strand {
    pub fn is_horizontal(&self) -> bool {
        (self.a > 0) == (self.b > 0)
    }

    pub fn other_end(&self, p: i32) -> Option<i32> {
        if self.a == p {
            Some(self.b)
        } else if self.b == p {
            Some(self.a)
        } else {
            None
        }
    }
}

impl PartialOrd for Strand {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Strand {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (point_key(self.a), point_key(self.b), self.decorated).cmp(&(
            point_key(other.a),
            point_key(other.b),
            other.decorated,
        ))
    }
}

/// A perfect matching of the `2m` points with an even set of decorated strands,
/// kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedConnector {
    m: usize,
    strands: Vec<Strand>,
}

impl DecoratedConnector {
    pub fn new(m: usize, pairs: &[(i32, i32)], decorated: &[(i32, i32)]) -> Result<Self> {
        let dec: BTreeSet<(i32, i32)> = decorated.iter().map(|&(a, b)| sorted_pair(a, b)).collect();
        let strands: Vec<Strand> = pairs
            .iter()
            .map(|&(a, b)| {
                let (a, b) = sorted_pair(a, b);
                Strand {
                    a,
                    b,
                    decorated: dec.contains(&(a, b)),
                }
            })
            .collect();
        let matched: BTreeSet<(i32, i32)> = strands.iter().map(|s| (s.a, s.b)).collect();
        if let Some(p) = dec.iter().find(|p| !matched.contains(p)) {
            return Err(Error::InvalidConnector(format!("decorated pair {p:?} is not a strand")));
        }
        Self::from_strands(m, strands)
    }

    pub fn from_strands(m: usize, mut strands: Vec<Strand>) -> Result<Self> {
        let mut seen = vec![false; 2 * m];
        for s in &mut strands {
            let (a, b) = sorted_pair(s.a, s.b);
            s.a = a;
            s.b = b;
            for p in [a, b] {
                let k = p.unsigned_abs() as usize;
                if p == 0 || k > m {
                    return Err(Error::InvalidConnector(format!("point {p} out of range")));
                }
                let slot = 2 * (k - 1) + usize::from(p < 0);
                if seen[slot] {
                    return Err(Error::InvalidConnector(format!("point {p} used twice")));
                }
                seen[slot] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidConnector("not a perfect matching".into()));
        }
        if strands.iter().filter(|s| s.decorated).count() % 2 != 0 {
            return Err(Error::InvalidConnector("odd number of decorations".into()));
        }
        strands.sort();
        Ok(DecoratedConnector { m, strands })
    }

    /// All strands `k – k̂`, undecorated.
    pub fn identity(m: usize) -> Self {
        let strands = (1..=m as i32)
            .map(|k| Strand {
                a: k,
                b: -k,
                decorated: false,
            })
            .collect();
        DecoratedConnector { m, strands }
    }

    pub fn points(&self) -> usize {
        self.m
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn strand_at(&self, p: i32) -> &Strand {
        self.strands
            .iter()
            .find(|s| s.a == p || s.b == p)
            .expect("every point lies on a strand")
    }

    pub fn partner(&self, p: i32) -> i32 {
        self.strand_at(p).other_end(p).expect("point lies on its strand")
    }

    pub fn has_horizontal(&self) -> bool {
        self.strands.iter().any(|s| s.is_horizontal())
    }

    pub fn is_undecorated(&self) -> bool {
        self.strands.iter().all(|s| !s.decorated)
    }

    /// Number of horizontal strands in the top row.
    pub fn top_horizontal(&self) -> usize {
        self.strands.iter().filter(|s| s.a > 0 && s.b > 0).count()
    }

    /// Top and bottom exchanged.
    pub fn flip(&self) -> Self {
        let strands = self
            .strands
            .iter()
            .map(|s| Strand {
                a: -s.a,
                b: -s.b,
                decorated: s.decorated,
            })
            .collect();
        Self::from_strands(self.m, strands).expect("flipping keeps a valid connector")
    }

    pub fn without_decorations(&self) -> Self {
        let strands = self
            .strands
            .iter()
            .map(|s| Strand {
                decorated: false,
                ..*s
            })
            .collect();
        DecoratedConnector { m: self.m, strands }
    }

    pub fn pairs(&self) -> Vec<[i32; 2]> {
        self.strands.iter().map(|s| [s.a, s.b]).collect()
    }

    pub fn decorated_pairs(&self) -> Vec<[i32; 2]> {
        self.strands.iter().filter(|s| s.decorated).map(|s| [s.a, s.b]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassFlags {
    pub in_t0: bool,
    pub in_teq: bool,
    pub in_tbar: bool,
    pub in_tbar_eq: bool,
}

pub fn class_membership(c: &DecoratedConnector) -> ClassFlags {
    let in_tbar = c.partner(1) == -1;
    let in_teq = c.has_horizontal();
    ClassFlags {
        in_t0: c.is_undecorated(),
        in_teq,
        in_tbar,
        in_tbar_eq: in_tbar && in_teq,
    }
}

/// A basis candidate: marker, connector and power of δ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramIndex {
    pub marker: Marker,
    pub connector: DecoratedConnector,
    pub delta_exp: i32,
}

pub fn is_symmetric_basis_index(d: &DiagramIndex) -> bool {
    let f = class_membership(&d.connector);
    match d.marker {
        Marker::One => f.in_tbar,
        Marker::Xi => f.in_tbar_eq,
        Marker::Theta => f.in_teq && f.in_t0,
    }
}

#[derive(Serialize, Deserialize)]
struct IndexJson {
    pairs: Vec<[i32; 2]>,
    decorated: Vec<[i32; 2]>,
    marker: Marker,
    dexp: i32,
}

impl Serialize for DiagramIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IndexJson {
            pairs: self.connector.pairs(),
            decorated: self.connector.decorated_pairs(),
            marker: self.marker,
            dexp: self.delta_exp,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagramIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = IndexJson::deserialize(d)?;
        let m = j.pairs.len();
        let pairs: Vec<(i32, i32)> = j.pairs.iter().map(|p| (p[0], p[1])).collect();
        let dec: Vec<(i32, i32)> = j.decorated.iter().map(|p| (p[0], p[1])).collect();
        let connector = DecoratedConnector::new(m, &pairs, &dec).map_err(serde::de::Error::custom)?;
        Ok(DiagramIndex {
            marker: j.marker,
            connector,
            delta_exp: j.dexp,
        })
    }
}

pub fn canonical_encode(d: &DiagramIndex) -> String {
    serde_json::to_string(d).expect("diagram indices always serialise")
}

pub fn canonical_decode(s: &str) -> Result<DiagramIndex> {
    Ok(serde_json::from_str(s)?)
}

/// Two rows of points; each point shows the letter of its strand, `*` marks a
/// decorated strand, horizontal strands appear as a bracketed letter.
pub fn render_ascii(d: &DiagramIndex) -> String {
    let c = &d.connector;
    let letter = |k: usize| -> char {
        let base = if k < 26 { b'a' + k as u8 } else { b'A' + (k - 26) as u8 };
        base as char
    };
    let cell = |p: i32| -> String {
        let k = c.strands.iter().position(|s| s.a == p || s.b == p).expect("matched");
        let s = &c.strands[k];
        let mut out = String::new();
        out.push(if s.is_horizontal() { '[' } else { ' ' });
        out.push(letter(k));
        out.push(if s.decorated { '*' } else { ' ' });
        out.push(if s.is_horizontal() { ']' } else { ' ' });
        out
    };
    let mut out = String::new();
    let marker = match d.marker {
        Marker::One => String::new(),
        m => format!("{m} "),
    };
    let _ = writeln!(out, "{marker}d^{}", d.delta_exp);
    let top: Vec<String> = (1..=c.m as i32).map(cell).collect();
    let bot: Vec<String> = (1..=c.m as i32).map(|k| cell(-k)).collect();
    let _ = writeln!(out, "{}", top.join(""));
    let _ = write!(out, "{}", bot.join(""));
    out
}

/// Every perfect matching of the `2m` points, undecorated.
pub fn all_matchings(m: usize) -> Vec<Vec<(i32, i32)>> {
    fn go(free: &mut Vec<i32>, cur: &mut Vec<(i32, i32)>, out: &mut Vec<Vec<(i32, i32)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let p = free.remove(0);
        for k in 0..free.len() {
            let q = free.remove(k);
            cur.push((p, q));
            go(free, cur, out);
            cur.pop();
            free.insert(k, q);
        }
        free.insert(0, p);
    }
    let mut free: Vec<i32> = (1..=m as i32).flat_map(|k| [k, -k]).collect();
    let mut out = Vec::new();
    go(&mut free, &mut Vec::new(), &mut out);
    out
}

/// Every decorated connector on `2m` points.
pub fn all_connectors(m: usize) -> Vec<DecoratedConnector> {
    let mut out = Vec::new();
    for pairs in all_matchings(m) {
        for mask in 0u32..(1 << m) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let strands = pairs
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| Strand {
                    a,
                    b,
                    decorated: mask >> k & 1 == 1,
                })
                .collect();
            out.push(DecoratedConnector::from_strands(m, strands).expect("enumerated connectors are valid"));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectorClass {
    /// `T^|`
    TBar,
    /// `T^{|=}`
    TBarEq,
    /// `T^= ∩ T^0`
    TeqT0,
    /// The whole symmetric basis index set.
    AllBBasis,
}

/// Count by exhaustive enumeration of decorated connectors.
pub fn count_class(n: usize, class: ConnectorClass) -> u128 {
    let all = all_connectors(n + 1);
    let count = |pred: &dyn Fn(&ClassFlags) -> bool| all.iter().filter(|c| pred(&class_membership(c))).count() as u128;
    match class {
        ConnectorClass::TBar => count(&|f| f.in_tbar),
        ConnectorClass::TBarEq => count(&|f| f.in_tbar_eq),
        ConnectorClass::TeqT0 => count(&|f| f.in_teq && f.in_t0),
        ConnectorClass::AllBBasis => count(&|f| f.in_tbar) + count(&|f| f.in_tbar_eq) + count(&|f| f.in_teq && f.in_t0),
    }
}

/// Closed forms: `2^n·n!!`, `2^n(n!! − n!)`, `(n+1)!! − (n+1)!`.
pub fn class_formula(n: usize, class: ConnectorClass) -> u128 {
    let n = n as u64;
    match class {
        ConnectorClass::TBar => pow2(n) * double_fact(n),
        ConnectorClass::TBarEq => pow2(n) * (double_fact(n) - factorial(n)),
        ConnectorClass::TeqT0 => double_fact(n + 1) - factorial(n + 1),
        ConnectorClass::AllBBasis => crate::combinat::rank_formula(n),
    }
}

/// Shape of an undecorated connector with a horizontal strand, judged by the
/// strands through `1` and `1̂`: the F-class number 2..=6.
pub fn stratum_class(c: &DecoratedConnector) -> u8 {
    let p1 = c.partner(1);
    let q1 = c.partner(-1);
    match (p1 > 0, q1 < 0) {
        _ if p1 == -1 => 2,
        (true, true) => 3,
        (false, false) => 4,
        (true, false) => 5,
        (false, true) => 6,
    }
}

/// `|M^{(i)}_t|` by enumeration of `T^= ∩ T^0` for rank `n`, indexed `[i][t]`.
pub fn stratified_counts(n: usize) -> Vec<Vec<u128>> {
    let m = n + 1;
    let mut table = vec![vec![0u128; m / 2 + 1]; 7];
    for pairs in all_matchings(m) {
        let c = DecoratedConnector::new(m, &pairs, &[]).expect("valid");
        if !c.has_horizontal() {
            continue;
        }
        table[stratum_class(&c) as usize][c.top_horizontal()] += 1;
    }
    table
}

/// `|D_L||D_R||C|` for class `i` and strand count `t`, from the closed forms.
pub fn stratum_formula(n: usize, i: u8, t: usize) -> u128 {
    let (n, t) = (n as u64, t as u64);
    let d2 = |t: u64| binom(n, 2 * t) * double_fact(t);
    let d3 = |t: u64| n as u128 * binom(n - 1, 2 * t - 2) * double_fact(t - 1);
    let d4 = |t: u64| n as u128 * binom(n - 1, 2 * t) * double_fact(t);
    let d5 = |t: u64| n as u128 * (n as u128 - 1) * binom(n.saturating_sub(2), 2 * t - 2) * double_fact(t - 1);
    match i {
        2 if 2 * t <= n => d2(t) * d2(t) * factorial(n - 2 * t),
        3 if 2 * t <= n + 1 => d3(t) * d3(t) * factorial(n + 1 - 2 * t),
        4 if 2 * t < n => d4(t) * d4(t) * factorial(n - 1 - 2 * t),
        5 | 6 if 2 * t <= n && n >= 2 => d5(t) * d2(t) * factorial(n - 2 * t),
        _ => 0,
    }
}

/// `(C(k,2t)·t!!)²·(k−2t)!`
pub fn brauer_layer(k: u64, t: u64) -> u128 {
    let d = binom(k, 2 * t) * double_fact(t);
    d * d * factorial(k - 2 * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn flags(c: &DecoratedConnector) -> (bool, bool, bool, bool) {
        let f = class_membership(c);
        (f.in_t0, f.in_teq, f.in_tbar, f.in_tbar_eq)
    }

    #[test]
    fn membership_examples() {
        assert_eq!(flags(&DecoratedConnector::identity(2)), (true, false, true, false));
        let h = DecoratedConnector::new(2, &[(1, 2), (-1, -2)], &[]).unwrap();
        assert_eq!(flags(&h), (true, true, false, false));
        let d = DecoratedConnector::new(2, &[(1, -1), (2, -2)], &[(1, -1), (2, -2)]).unwrap();
        assert_eq!(flags(&d), (false, false, true, false));
    }

    #[test]
    fn invalid_connectors() {
        assert!(DecoratedConnector::new(2, &[(1, -1), (2, -2)], &[(1, -1)]).is_err());
        assert!(DecoratedConnector::new(2, &[(1, -1), (1, -2)], &[]).is_err());
        assert!(DecoratedConnector::new(2, &[(1, -1)], &[]).is_err());
        assert!(DecoratedConnector::new(2, &[(1, -1), (2, -2)], &[(1, 2)]).is_err());
    }

    #[test]
    fn basis_index_examples() {
        let id = DecoratedConnector::identity(2);
        let di = |marker, connector| DiagramIndex {
            marker,
            connector,
            delta_exp: 0,
        };
        assert!(is_symmetric_basis_index(&di(Marker::One, id.clone())));
        assert!(!is_symmetric_basis_index(&di(Marker::Xi, id)));
        let h = DecoratedConnector::new(2, &[(1, 2), (-1, -2)], &[]).unwrap();
        assert!(is_symmetric_basis_index(&di(Marker::Theta, h)));
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_class(3, ConnectorClass::AllBBasis), 273);
        assert_eq!(count_class(3, ConnectorClass::TBar), 120);
        assert_eq!(count_class(3, ConnectorClass::TeqT0), 81);
        assert_eq!(count_class(1, ConnectorClass::TBarEq), 0);
        for n in 1..=4 {
            for class in [
                ConnectorClass::TBar,
                ConnectorClass::TBarEq,
                ConnectorClass::TeqT0,
                ConnectorClass::AllBBasis,
            ] {
                assert_eq!(count_class(n, class), class_formula(n, class), "n={n} {class:?}");
            }
        }
    }

    #[test]
    fn total_connector_count() {
        for n in 1..=4 {
            let m = n + 1;
            assert_eq!(
                all_connectors(m).len() as u128,
                double_fact(m as u64) * pow2(n as u64),
                "n={n}"
            );
        }
    }

    #[test]
    fn matching_identity() {
        for k in 0..=10u64 {
            let s: u128 = (0..=k / 2).map(|t| brauer_layer(k, t)).sum();
            assert_eq!(s, double_fact(k), "k={k}");
        }
    }

    #[test]
    fn strata_match_formulas() {
        for n in 1..=4 {
            let table = stratified_counts(n);
            for t in 1..=(n + 1) / 2 {
                let mut sum = 0;
                for i in 2..=6u8 {
                    assert_eq!(table[i as usize][t], stratum_formula(n, i, t), "n={n} i={i} t={t}");
                    sum += table[i as usize][t];
                }
                assert_eq!(sum, brauer_layer(n as u64 + 1, t as u64));
            }
        }
    }

    #[test]
    fn encoding() {
        let id = DiagramIndex {
            marker: Marker::One,
            connector: DecoratedConnector::identity(2),
            delta_exp: 0,
        };
        assert_eq!(
            canonical_encode(&id),
            r#"{"pairs":[[1,-1],[2,-2]],"decorated":[],"marker":"1","dexp":0}"#
        );
        let a = DecoratedConnector::new(3, &[(-3, 2), (1, -1), (3, -2)], &[(2, -3), (-2, 3)]).unwrap();
        let b = DecoratedConnector::new(3, &[(-2, 3), (2, -3), (-1, 1)], &[(3, -2), (-3, 2)]).unwrap();
        assert_eq!(a, b);
        let ia = DiagramIndex {
            marker: Marker::Xi,
            connector: a,
            delta_exp: -2,
        };
        assert_eq!(canonical_decode(&canonical_encode(&ia)).unwrap(), ia);
        assert!(render_ascii(&ia).contains('*'));
    }

    proptest! {
        #[test]
        fn round_trip(k in 0usize..3072, marker in 0usize..3, dexp in -5i32..5) {
            let all = all_connectors(4);
            let d = DiagramIndex { marker: Marker::ALL[marker], connector: all[k % all.len()].clone(), delta_exp: dexp };
            prop_assert_eq!(canonical_decode(&canonical_encode(&d)).unwrap(), d.clone());
            prop_assert_eq!(d.connector.flip().flip(), d.connector);
        }
    }
}
