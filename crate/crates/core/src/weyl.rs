//! Roots of `D_{n+1}` / `B_n` in `ε`-coordinates and their Weyl groups as
//! signed permutations.
//!
//! Coordinates are `ε_1..ε_{n+1}` throughout. `W(B_n)` is the subgroup fixing
//! `ε_1`, with simple roots `β_0 = ε_2`, `β_i = ε_{i+2} − ε_{i+1}`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Token, Word};

/// A root, as its integer coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i32>);

impl Root {
    /// Accepts `±ε_j` and `±ε_j ± ε_i`.
    pub fn new(coords: Vec<i32>) -> Result<Root> {
        let support: Vec<i32> = coords.iter().copied().filter(|&c| c != 0).collect();
        let ok = (support.len() == 1 || support.len() == 2) && support.iter().all(|c| c.abs() == 1);
        if ok {
            Ok(Root(coords))
        } else {
            Err(Error::MalformedRoot(coords))
        }
    }

    /// `ε_j` in dimension `m`, 1-based.
    pub fn eps(m: usize, j: usize) -> Root {
        let mut v = vec![0; m];
        v[j - 1] = 1;
        Root(v)
    }

    /// `ε_j + s·ε_i`, 1-based.
    pub fn eps2(m: usize, j: usize, s: i32, i: usize) -> Root {
        let mut v = vec![0; m];
        v[j - 1] = 1;
        v[i - 1] = s;
        Root(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    /// 1-based indices of the nonzero coordinates, increasing.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| self.0[k] != 0).map(|k| k + 1).collect()
    }

    pub fn is_short(&self) -> bool {
        self.norm2() == 1
    }

    pub fn norm2(&self) -> i32 {
        self.inner(self)
    }

    pub fn inner(&self, other: &Root) -> i32 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Positive iff the nonzero coordinate of largest index is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn negate(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn positive(&self) -> Root {
        if self.is_positive() {
            self.clone()
        } else {
            self.negate()
        }
    }

    /// `R_self(x)`.
    pub fn reflect(&self, x: &Root) -> Root {
        let c = 2 * x.inner(self) / self.norm2();
        Root(x.0.iter().zip(&self.0).map(|(a, b)| a - c * b).collect())
    }

    /// `ε_j − ε_i ↔ ε_j + ε_i` (the long root orthogonal to `self` and sharing its support).
    pub fn mate(&self) -> Result<Root> {
        if self.is_short() {
            return Err(Error::NoMate(self.0.clone()));
        }
        let low = self.support()[0] - 1;
        let mut v = self.0.clone();
        v[low] = -v[low];
        Ok(Root(v).positive())
    }

    /// Drops the `ε_1` component.
    pub fn project_p(&self) -> Root {
        let mut v = self.0.clone();
        v[0] = 0;
        Root(v)
    }

    /// Sign flip of `ε_1`.
    pub fn sigma(&self) -> Root {
        let mut v = self.0.clone();
        v[0] = -v[0];
        Root(v)
    }

    /// Preimages under `𝔭` inside the positive roots of `D_{n+1}`.
    pub fn lift(&self) -> Vec<Root> {
        if self.is_short() {
            let j = self.support()[0];
            let m = self.dim();
            vec![Root::eps2(m, j, -1, 1), Root::eps2(m, j, 1, 1)]
        } else {
            vec![self.clone()]
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let sign = if *c > 0 { "+" } else { "-" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "e{}", k + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// Simple root `β_i` of `B_n` (dimension `n + 1`).
pub fn beta(n: usize, i: usize) -> Root {
    let m = n + 1;
    if i == 0 {
        Root::eps(m, 2)
    } else {
        Root::eps2(m, i + 2, -1, i + 1)
    }
}

/// `β_i^* = ε_{i+2} + ε_{i+1}`, `i ≥ 1`.
pub fn beta_star(n: usize, i: usize) -> Root {
    Root::eps2(n + 1, i + 2, 1, i + 1)
}

/// Simple root `α_i` of `D_{n+1}`, `1 ≤ i ≤ n + 1`: `α_1 = ε_1 + ε_2`, `α_i = ε_i − ε_{i−1}`.
pub fn alpha(n: usize, i: usize) -> Root {
    let m = n + 1;
    if i == 1 {
        Root::eps2(m, 2, 1, 1)
    } else {
        Root::eps2(m, i, -1, i - 1)
    }
}

/// `Φ^+` for `D_{n+1}`, in increasing root order.
pub fn positive_roots_d(n: usize) -> Vec<Root> {
    let m = n + 1;
    let mut v = Vec::new();
    for j in 1..=m {
        for i in 1..j {
            v.push(Root::eps2(m, j, -1, i));
            v.push(Root::eps2(m, j, 1, i));
        }
    }
    v.sort();
    v
}

/// `Ψ^+` for `B_n` inside `ε_2..ε_{n+1}`, in increasing root order.
pub fn positive_roots_b(n: usize) -> Vec<Root> {
    let m = n + 1;
    let mut v = Vec::new();
    for j in 2..=m {
        v.push(Root::eps(m, j));
        for i in 2..j {
            v.push(Root::eps2(m, j, -1, i));
            v.push(Root::eps2(m, j, 1, i));
        }
    }
    v.sort();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    B,
    D,
}

/// `w(ε_i) = sign · ε_{|images[i−1]|}`.
///
/// Elements fixing `ε_1` are labelled `B`; everything else must have an even
/// number of sign changes and is labelled `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm {
    pub kind: GroupKind,
    pub images: Vec<i32>,
}

impl SignedPerm {
    pub fn new(images: Vec<i32>) -> Result<SignedPerm> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a - 1] {
                return Err(Error::MalformedRoot(images));
            }
            seen[a - 1] = true;
        }
        let kind = if images.first() == Some(&1) {
            GroupKind::B
        } else {
            if images.iter().filter(|&&x| x < 0).count() % 2 != 0 {
                return Err(Error::MalformedRoot(images));
            }
            GroupKind::D
        };
        Ok(SignedPerm { kind, images })
    }

    fn from_images(images: Vec<i32>) -> SignedPerm {
        let kind = if images.first() == Some(&1) { GroupKind::B } else { GroupKind::D };
        SignedPerm { kind, images }
    }

    pub fn identity(m: usize) -> SignedPerm {
        SignedPerm::from_images((1..=m as i32).collect())
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k as i32 + 1)
    }

    pub fn num_negative(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }

    /// `(self ∘ other)(ε_i) = self(other(ε_i))`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let images = other
            .images
            .iter()
            .map(|&x| {
                let y = self.images[x.unsigned_abs() as usize - 1];
                if x < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect();
        SignedPerm::from_images(images)
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            let s = x.signum();
            inv[x.unsigned_abs() as usize - 1] = s * (k as i32 + 1);
        }
        SignedPerm::from_images(inv)
    }

    /// Image of the coordinate vector `x`.
    pub fn apply(&self, x: &[i32]) -> Vec<i32> {
        let mut out = vec![0; x.len()];
        for (k, &c) in x.iter().enumerate() {
            let y = self.images[k];
            out[y.unsigned_abs() as usize - 1] += y.signum() * c;
        }
        out
    }

    pub fn act_root(&self, r: &Root) -> Root {
        Root(self.apply(&r.0))
    }

    /// Images compared lexicographically with `1 < 2 < … < −1 < −2 < …`, so
    /// that the identity is the least element of every subgroup.
    pub fn coset_key(&self) -> Vec<(bool, u32)> {
        self.images.iter().map(|&x| (x < 0, x.unsigned_abs())).collect()
    }

    /// `(sign, j)` with `w(ε_i) = sign·ε_j`, 1-based.
    pub fn image_of(&self, i: usize) -> (i32, usize) {
        let y = self.images[i - 1];
        (y.signum(), y.unsigned_abs() as usize)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// The reflection `R_root`.
pub fn reflection(root: &Root) -> SignedPerm {
    let m = root.dim();
    let mut images: Vec<i32> = (1..=m as i32).collect();
    let s = root.support();
    if s.len() == 1 {
        images[s[0] - 1] = -images[s[0] - 1];
    } else {
        let (i, j) = (s[0], s[1]);
        let sign = -root.0[i - 1] * root.0[j - 1];
        images[i - 1] = sign * j as i32;
        images[j - 1] = sign * i as i32;
    }
    SignedPerm::from_images(images)
}

/// Generators `r_0..r_{n−1}` of `W(B_n)`.
pub fn weyl_b_generators(n: usize) -> Vec<SignedPerm> {
    (0..n).map(|i| reflection(&beta(n, i))).collect()
}

/// Evaluates a word in the `r_i` as an element of `W(B_n)`.
pub fn word_to_perm(word: &Word, n: usize) -> Result<SignedPerm> {
    let gens = weyl_b_generators(n);
    let mut g = SignedPerm::identity(n + 1);
    for (pos, t) in word.tokens().iter().enumerate() {
        match t {
            Token::R(i) if *i < n => g = g.compose(&gens[*i]),
            _ => return Err(Error::NotAGroupWord(pos)),
        }
    }
    Ok(g)
}

/// Something `W(D_{n+1})` acts on.
pub trait Action: Clone + Eq + Hash {
    fn act(&self, g: &SignedPerm) -> Self;
}

impl Action for Root {
    fn act(&self, g: &SignedPerm) -> Self {
        g.act_root(self)
    }
}

/// Sets of positive roots, images normalised to be positive.
impl Action for BTreeSet<Root> {
    fn act(&self, g: &SignedPerm) -> Self {
        self.iter().map(|r| g.act_root(r).positive()).collect()
    }
}

impl Action for SignedPerm {
    /// Left multiplication.
    fn act(&self, g: &SignedPerm) -> Self {
        g.compose(self)
    }
}

/// Some `w ∈ ⟨gens⟩` with `w·x = y`, found by breadth-first search over the
/// orbit of `x`, generators tried in the given order.
pub fn transporter<X: Action>(gens: &[SignedPerm], x: &X, y: &X) -> Option<SignedPerm> {
    let m = gens.first().map(|g| g.dim())?;
    let mut seen: HashMap<X, SignedPerm> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(x.clone(), SignedPerm::identity(m));
    queue.push_back(x.clone());
    if x == y {
        return Some(SignedPerm::identity(m));
    }
    while let Some(p) = queue.pop_front() {
        let w = seen[&p].clone();
        for g in gens {
            let q = p.act(g);
            if seen.contains_key(&q) {
                continue;
            }
            let wq = g.compose(&w);
            if &q == y {
                return Some(wq);
            }
            seen.insert(q.clone(), wq);
            queue.push_back(q);
        }
    }
    if gens.is_empty() && x == y {
        return Some(SignedPerm::identity(m));
    }
    None
}

/// The orbit of `x` in breadth-first order.
pub fn orbit<X: Action>(gens: &[SignedPerm], x: &X) -> Vec<X> {
    let mut seen = HashSet::new();
    let mut out = vec![x.clone()];
    seen.insert(x.clone());
    let mut k = 0;
    while k < out.len() {
        for g in gens {
            let q = out[k].act(g);
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
        k += 1;
    }
    out
}

/// Schreier generators of the stabilizer of `x` in `⟨gens⟩`.
pub fn stabilizer_gens<X: Action>(gens: &[SignedPerm], x: &X) -> Vec<SignedPerm> {
    let Some(m) = gens.first().map(|g| g.dim()) else {
        return Vec::new();
    };
    let mut transversal: HashMap<X, SignedPerm> = HashMap::new();
    let mut pts = vec![x.clone()];
    transversal.insert(x.clone(), SignedPerm::identity(m));
    let mut k = 0;
    while k < pts.len() {
        let p = pts[k].clone();
        let tp = transversal[&p].clone();
        for g in gens {
            let q = p.act(g);
            if !transversal.contains_key(&q) {
                transversal.insert(q.clone(), g.compose(&tp));
                pts.push(q);
            }
        }
        k += 1;
    }
    let mut out: BTreeSet<SignedPerm> = BTreeSet::new();
    for p in &pts {
        let tp = &transversal[p];
        for g in gens {
            let q = p.act(g);
            let s = transversal[&q].inverse().compose(&g.compose(tp));
            if !s.is_identity() {
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

/// A finite group given by generators, with every element reached by a
/// shortlex-minimal word in the generators (breadth-first, right multiplication).
#[derive(Clone, Debug)]
pub struct PermGroup {
    dim: usize,
    gens: Vec<SignedPerm>,
    elements: Vec<SignedPerm>,
    index: HashMap<SignedPerm, u32>,
    parent: Vec<(u32, u8)>,
}

impl PermGroup {
    pub fn generate(dim: usize, gens: &[SignedPerm]) -> PermGroup {
        let id = SignedPerm::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut parent = vec![(u32::MAX, u8::MAX)];
        let mut k = 0;
        while k < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = elements[k].compose(g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                    parent.push((k as u32, gi as u8));
                }
            }
            k += 1;
        }
        PermGroup {
            dim,
            gens: gens.to_vec(),
            elements,
            index,
            parent,
        }
    }

    /// `W(B_n)` on its standard generators.
    pub fn weyl_b(n: usize) -> PermGroup {
        PermGroup::generate(n + 1, &weyl_b_generators(n))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[SignedPerm] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elements
    }

    pub fn element(&self, k: u32) -> &SignedPerm {
        &self.elements[k as usize]
    }

    pub fn index_of(&self, g: &SignedPerm) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &SignedPerm) -> bool {
        self.index.contains_key(g)
    }

    /// `element(k) = element(p)·gens[g]` for `Some((p, g))`; `None` for the identity.
    pub fn parent(&self, k: u32) -> Option<(u32, usize)> {
        let (p, g) = self.parent[k as usize];
        (k != 0).then_some((p, g as usize))
    }

    /// Generator indices of the shortlex word of element `k`.
    pub fn word_indices(&self, k: u32) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = k;
        while x != 0 {
            let (p, g) = self.parent[x as usize];
            out.push(g as usize);
            x = p;
        }
        out.reverse();
        out
    }

    /// The element of the left coset `g·self` with the least [`SignedPerm::coset_key`].
    pub fn left_coset_rep(&self, g: &SignedPerm) -> SignedPerm {
        self.elements
            .iter()
            .map(|h| g.compose(h))
            .min_by_key(|a| a.coset_key())
            .expect("groups are nonempty")
    }
}

/// The element of `g·⟨subgroup_gens⟩` with the least [`SignedPerm::coset_key`].
pub fn canonical_coset_rep(subgroup_gens: &[SignedPerm], g: &SignedPerm) -> SignedPerm {
    PermGroup::generate(g.dim(), subgroup_gens).left_coset_rep(g)
}

/// Writes `x = b·a` with `b ∈ ⟨w_gens⟩`, `a ∈ ⟨a_gens⟩`; `b` is the first
/// suitable element in shortlex order.
pub fn factor_in_product(
    a_gens: &[SignedPerm],
    w_gens: &[SignedPerm],
    x: &SignedPerm,
) -> Result<(SignedPerm, SignedPerm)> {
    let a_group = PermGroup::generate(x.dim(), a_gens);
    let w_group = PermGroup::generate(x.dim(), w_gens);
    for b in w_group.elements() {
        let a = b.inverse().compose(x);
        if a_group.contains(&a) {
            return Ok((b.clone(), a));
        }
    }
    Err(Error::NotInProduct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reflections_of_small_roots() {
        let m = 4;
        assert_eq!(reflection(&Root::eps(m, 2)).images, vec![1, -2, 3, 4]);
        assert_eq!(reflection(&Root::eps2(m, 3, -1, 2)).images, vec![1, 3, 2, 4]);
        assert_eq!(reflection(&Root::eps2(m, 3, 1, 2)).images, vec![1, -3, -2, 4]);
        for r in positive_roots_d(3).iter().chain(positive_roots_b(3).iter()) {
            let s = reflection(r);
            assert!(s.compose(&s).is_identity());
            assert_eq!(s.act_root(r), r.negate());
            for x in positive_roots_d(3) {
                assert_eq!(s.act_root(&x), r.reflect(&x));
            }
        }
    }

    #[test]
    fn root_counts() {
        for n in 1..6 {
            assert_eq!(positive_roots_d(n).len(), n * (n + 1));
            assert_eq!(positive_roots_b(n).len(), n * n);
        }
    }

    #[test]
    fn mates_and_projection() {
        let m = 4;
        let a = Root::eps2(m, 3, -1, 2);
        assert_eq!(a.mate().unwrap(), Root::eps2(m, 3, 1, 2));
        assert_eq!(a.mate().unwrap().mate().unwrap(), a);
        assert!(matches!(Root::eps(m, 3).mate(), Err(Error::NoMate(_))));
        assert_eq!(Root::eps2(m, 3, 1, 1).project_p(), Root::eps(m, 3));
        assert_eq!(Root::eps(m, 3).lift().len(), 2);
        assert!(Root::new(vec![1, 1, 1, 0]).is_err());
        assert!(Root::new(vec![0, 2, 0, 0]).is_err());
    }

    #[test]
    fn words_to_perms() {
        assert_eq!(word_to_perm(&word("r0"), 3).unwrap(), reflection(&Root::eps(4, 2)));
        assert_eq!(
            word_to_perm(&word("r1"), 3).unwrap(),
            reflection(&Root::eps2(4, 3, -1, 2))
        );
        assert!(word_to_perm(&word("1"), 3).unwrap().is_identity());
        assert!(matches!(word_to_perm(&word("r0 e1"), 3), Err(Error::NotAGroupWord(1))));
    }

    #[test]
    fn weyl_group_orders() {
        let mut fact = 1usize;
        for n in 1..=5 {
            fact *= n;
            let g = PermGroup::weyl_b(n);
            assert_eq!(g.order(), (1 << n) * fact);
            assert!(g.elements().iter().all(|x| x.kind == GroupKind::B));
        }
    }

    #[test]
    fn shortlex_words_evaluate_back() {
        let g = PermGroup::weyl_b(3);
        for k in 0..g.order() as u32 {
            let mut x = SignedPerm::identity(4);
            for i in g.word_indices(k) {
                x = x.compose(&g.gens()[i]);
            }
            assert_eq!(&x, g.element(k));
        }
        assert_eq!(g.word_indices(0), Vec::<usize>::new());
    }

    #[test]
    fn transporter_examples() {
        let gens = weyl_b_generators(3);
        let x = Root::eps(4, 2);
        let y = Root::eps(4, 4);
        let w = transporter(&gens, &x, &y).unwrap();
        assert_eq!(w.act_root(&x), y);
        // Short and long roots lie in different orbits.
        assert!(transporter(&gens, &x, &Root::eps2(4, 3, -1, 2)).is_none());
        let same = transporter(&gens, &x, &x).unwrap();
        assert!(same.is_identity());
    }

    #[test]
    fn stabilizer_order_matches_orbit() {
        let g = PermGroup::weyl_b(4);
        let x: BTreeSet<Root> = [beta(4, 3)].into_iter().collect();
        let orb = orbit(g.gens(), &x);
        let stab = PermGroup::generate(5, &stabilizer_gens(g.gens(), &x));
        assert_eq!(orb.len() * stab.order(), g.order());
        assert!(stab.elements().iter().all(|s| x.act(s) == x));
    }

    #[test]
    fn coset_reps_are_canonical() {
        let g = PermGroup::weyl_b(3);
        let sub = vec![g.gens()[0].clone(), g.gens()[1].clone()];
        let h = PermGroup::generate(4, &sub);
        let reps: BTreeSet<SignedPerm> = g.elements().iter().map(|x| h.left_coset_rep(x)).collect();
        assert_eq!(reps.len(), g.order() / h.order());
        for x in g.elements() {
            let r = canonical_coset_rep(&sub, x);
            assert!(h.contains(&x.inverse().compose(&r)));
        }
    }

    #[test]
    fn factorization() {
        let g = PermGroup::weyl_b(3);
        let a = vec![g.gens()[0].clone()];
        let w = vec![g.gens()[2].clone()];
        let x = g.gens()[2].compose(&g.gens()[0]);
        let (b, aa) = factor_in_product(&a, &w, &x).unwrap();
        assert_eq!(b.compose(&aa), x);
        assert!(matches!(factor_in_product(&a, &w, &g.gens()[1]), Err(Error::NotInProduct)));
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
        let g = PermGroup::weyl_b(n);
        (0..g.order()).prop_map(move |k| g.element(k as u32).clone())
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_perm(4), b in arb_perm(4), c in arb_perm(4)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert!(a.compose(&a.inverse()).is_identity());
            for r in positive_roots_d(4) {
                // w·R_r·w^{-1} = R_{w(r)}
                let lhs = a.compose(&reflection(&r)).compose(&a.inverse());
                prop_assert_eq!(lhs, reflection(&a.act_root(&r)));
                prop_assert_eq!(a.act_root(&r).inner(&a.act_root(&Root::eps(5, 3))), r.inner(&Root::eps(5, 3)));
            }
        }
    }
}
