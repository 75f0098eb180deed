//! Admissible root sets of types D and B and the action of the Brauer monoid on them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinat::{binom, double_fact, pow2};
use crate::error::{Error, Result};
use crate::presentation::Token;
use crate::weyl::{
    alpha, beta, beta_star, orbit, positive_roots_b, positive_roots_d, reflection, transporter, weyl_b_generators,
    GroupKind, Root, SignedPerm,
};

pub type RootSet = BTreeSet<Root>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissibleSet {
    pub kind: GroupKind,
    pub roots: RootSet,
}

impl AdmissibleSet {
    pub fn empty_b() -> Self {
        AdmissibleSet {
            kind: GroupKind::B,
            roots: RootSet::new(),
        }
    }

    pub fn b(roots: RootSet) -> Self {
        AdmissibleSet { kind: GroupKind::B, roots }
    }

    pub fn d(roots: RootSet) -> Self {
        AdmissibleSet { kind: GroupKind::D, roots }
    }
}

pub fn mutually_orthogonal(a: &RootSet) -> bool {
    let v: Vec<&Root> = a.iter().collect();
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i].inner(v[j]) == 0))
}

/// All roots demanded by the triple rule that are not yet in `a`.
fn triple_rule_violations(a: &RootSet, phi_pos: &[Root]) -> RootSet {
    let v: Vec<&Root> = a.iter().collect();
    let mut missing = RootSet::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            for k in j + 1..v.len() {
                let (g1, g2, g3) = (v[i], v[j], v[k]);
                for g in phi_pos {
                    if g.inner(g1).abs() != 1 || g.inner(g2).abs() != 1 || g.inner(g3).abs() != 1 {
                        continue;
                    }
                    let img = g.reflect(&g1.reflect(&g2.reflect(&g3.reflect(g)))).positive();
                    if !a.contains(&img) {
                        missing.insert(img);
                    }
                }
            }
        }
    }
    missing
}

/// Triple-rule admissibility of a set of mutually orthogonal roots of `Φ^+`.
pub fn is_admissible_d(a: &RootSet) -> Result<bool> {
    if !mutually_orthogonal(a) {
        return Err(Error::NotOrthogonal);
    }
    let Some(first) = a.iter().next() else {
        return Ok(true);
    };
    let n = first.dim() - 1;
    Ok(triple_rule_violations(a, &positive_roots_d(n)).is_empty())
}

/// `𝔭^{-1}(B) ∩ Φ`.
pub fn lift_set(b: &RootSet) -> RootSet {
    b.iter().flat_map(|r| r.lift()).collect()
}

pub fn project_set(a: &RootSet) -> RootSet {
    a.iter().map(|r| r.project_p()).collect()
}

pub fn is_admissible_b(b: &RootSet) -> Result<bool> {
    if !mutually_orthogonal(b) {
        return Err(Error::NotOrthogonal);
    }
    let lift = lift_set(b);
    if !mutually_orthogonal(&lift) {
        return Ok(false);
    }
    is_admissible_d(&lift)
}

/// The alternative description: either no root of `a` has its mate in `a`, or all do.
pub fn mate_characterization(a: &RootSet) -> bool {
    let has_mate = |r: &Root| r.mate().map(|m| a.contains(&m)).unwrap_or(false);
    a.iter().all(|r| !has_mate(r)) || a.iter().all(has_mate)
}

/// Least triple-rule-closed superset of `x ⊂ Φ^+`.
pub fn closure_d(x: &RootSet) -> Result<RootSet> {
    if !mutually_orthogonal(x) {
        return Err(Error::NoAdmissibleSuperset);
    }
    let Some(first) = x.iter().next() else {
        return Ok(RootSet::new());
    };
    let phi_pos = positive_roots_d(first.dim() - 1);
    let mut a = x.clone();
    loop {
        let missing = triple_rule_violations(&a, &phi_pos);
        if missing.is_empty() {
            return Ok(a);
        }
        a.extend(missing);
        if !mutually_orthogonal(&a) {
            return Err(Error::NoAdmissibleSuperset);
        }
    }
}

/// Least admissible superset, of the same kind as the input.
pub fn closure(x: &AdmissibleSet) -> Result<AdmissibleSet> {
    match x.kind {
        GroupKind::D => Ok(AdmissibleSet::d(closure_d(&x.roots)?)),
        GroupKind::B => {
            let lift = lift_set(&x.roots);
            Ok(AdmissibleSet::b(project_set(&closure_d(&lift)?)))
        }
    }
}

/// Orbit representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitRep {
    /// `Z_t`, type 1.
    Z,
    /// `Z̃_t`, type 2.
    ZTilde,
    /// `Z̄_t`, type 3.
    ZBar,
}

impl OrbitRep {
    pub fn type_number(self) -> u8 {
        match self {
            OrbitRep::Z => 1,
            OrbitRep::ZTilde => 2,
            OrbitRep::ZBar => 3,
        }
    }

    pub fn t_range(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            OrbitRep::Z => 0..=n / 2,
            OrbitRep::ZTilde => 1..=n / 2,
            OrbitRep::ZBar => 1..=n.div_ceil(2),
        }
    }
}

/// `Z_t`, `Z̃_t` or `Z̄_t` inside `Ψ^+` for rank `n`.
pub fn representative(kind: OrbitRep, t: usize, n: usize) -> Result<RootSet> {
    if !kind.t_range(n).contains(&t) {
        return Err(Error::OutOfRange {
            class: kind.type_number(),
            t,
            n,
        });
    }
    let mut s = RootSet::new();
    match kind {
        OrbitRep::Z => {
            for i in 0..t {
                s.insert(beta(n, n - 1 - 2 * i));
            }
        }
        OrbitRep::ZTilde => {
            for i in 0..t {
                s.insert(beta(n, n - 1 - 2 * i));
                s.insert(beta_star(n, n - 1 - 2 * i));
            }
        }
        OrbitRep::ZBar => {
            for i in 0..t - 1 {
                s.insert(beta(n, n - 1 - 2 * i));
                s.insert(beta_star(n, n - 1 - 2 * i));
            }
            s.insert(beta(n, 0));
        }
    }
    Ok(s)
}

/// Closed-form orbit sizes.
pub fn orbit_size_formula(kind: OrbitRep, t: usize, n: usize) -> u128 {
    let (n, t) = (n as u64, t as u64);
    match kind {
        OrbitRep::Z => pow2(t) * binom(n, 2 * t) * double_fact(t),
        OrbitRep::ZTilde => binom(n, 2 * t) * double_fact(t),
        OrbitRep::ZBar => n as u128 * binom(n - 1, 2 * t - 2) * double_fact(t - 1),
    }
}

/// Orbit size by breadth-first search under `W(B_n)`.
pub fn orbit_size(kind: OrbitRep, t: usize, n: usize) -> Result<usize> {
    let rep = representative(kind, t, n)?;
    Ok(orbit(&weyl_b_generators(n), &rep).len())
}

/// Orbit type, `t`, and a `w ∈ W(B_n)` with `w·B` the representative.
pub fn classify(b: &RootSet, n: usize) -> Result<(u8, usize, SignedPerm)> {
    let shorts = b.iter().filter(|r| r.is_short()).count();
    let paired = b
        .iter()
        .filter(|r| !r.is_short())
        .filter(|r| r.mate().map(|m| b.contains(&m)).unwrap_or(false))
        .count();
    let longs = b.len() - shorts;
    let (kind, t) = match (shorts, paired) {
        (0, 0) => (OrbitRep::Z, b.len()),
        (0, p) if p == longs => (OrbitRep::ZTilde, b.len() / 2),
        (1, p) if p == longs => (OrbitRep::ZBar, longs / 2 + 1),
        _ => return Err(Error::NoAdmissibleSuperset),
    };
    let rep = representative(kind, t, n)?;
    let w = transporter(&weyl_b_generators(n), b, &rep).ok_or(Error::NoAdmissibleSuperset)?;
    Ok((kind.type_number(), t, w))
}

fn reflect_set(r: &Root, a: &RootSet) -> RootSet {
    a.iter().map(|x| r.reflect(x).positive()).collect()
}

/// `R_i` on admissible subsets of `Φ^+` (`1 ≤ i ≤ n + 1`).
pub fn r_act_d(n: usize, i: usize, a: &RootSet) -> RootSet {
    reflect_set(&alpha(n, i), a)
}

/// `E_i` on admissible subsets of `Φ^+` (`1 ≤ i ≤ n + 1`).
pub fn e_act_d(n: usize, i: usize, a: &RootSet) -> RootSet {
    let ai = alpha(n, i);
    if a.contains(&ai) {
        return a.clone();
    }
    match a.iter().find(|g| g.inner(&ai) != 0) {
        None => {
            let mut x = a.clone();
            x.insert(ai);
            closure_d(&x).expect("adding an orthogonal simple root keeps the set admissible")
        }
        Some(b) => reflect_set(b, &r_act_d(n, i, a)),
    }
}

/// Case 3 of `E_i` with an explicitly chosen `β`, for testing choice-independence.
pub fn e_act_d_with_beta(n: usize, i: usize, a: &RootSet, b: &Root) -> RootSet {
    reflect_set(b, &r_act_d(n, i, a))
}

/// Action of a generator of `BrM(B_n)` on an admissible subset of `Ψ^+`:
/// lift, act through `r_0 ↦ R_1R_2`, `e_0 ↦ E_1E_2`, `r_i ↦ R_{i+2}`,
/// `e_i ↦ E_{i+2}`, project.
pub fn act_generator(token: Token, b: &AdmissibleSet, n: usize) -> AdmissibleSet {
    let lift = lift_set(&b.roots);
    let out = match token {
        Token::Delta(_) => lift,
        Token::R(0) => r_act_d(n, 1, &r_act_d(n, 2, &lift)),
        Token::E(0) => e_act_d(n, 1, &e_act_d(n, 2, &lift)),
        Token::R(i) => r_act_d(n, i + 2, &lift),
        Token::E(i) => e_act_d(n, i + 2, &lift),
    };
    AdmissibleSet::b(project_set(&out))
}

/// `w·∅`, acting letter by letter from the right end of the word.
pub fn top_set(word: &crate::presentation::Word, n: usize) -> AdmissibleSet {
    word.tokens()
        .iter()
        .rev()
        .fold(AdmissibleSet::empty_b(), |acc, t| act_generator(*t, &acc, n))
}

/// A signed permutation acting on a B-set.
pub fn act_perm(w: &SignedPerm, b: &RootSet) -> RootSet {
    b.iter().map(|r| w.act_root(r).positive()).collect()
}

/// Every subset of `roots` consisting of mutually orthogonal roots.
pub fn orthogonal_subsets(roots: &[Root]) -> Vec<RootSet> {
    fn go(roots: &[Root], k: usize, cur: &mut Vec<Root>, out: &mut Vec<RootSet>) {
        if k == roots.len() {
            out.push(cur.iter().cloned().collect());
            return;
        }
        go(roots, k + 1, cur, out);
        if cur.iter().all(|c| c.inner(&roots[k]) == 0) {
            cur.push(roots[k].clone());
            go(roots, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(roots, 0, &mut Vec::new(), &mut out);
    out
}

/// All admissible subsets of `Ψ^+`, by brute force.
pub fn all_admissible_b(n: usize) -> Vec<RootSet> {
    orthogonal_subsets(&positive_roots_b(n))
        .into_iter()
        .filter(|s| is_admissible_b(s).unwrap_or(false))
        .collect()
}

/// Reflection of `W(B_n)` attached to a generator token.
pub fn token_reflection(n: usize, i: usize) -> SignedPerm {
    reflection(&beta(n, i))
}
