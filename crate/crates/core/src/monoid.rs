//! Multiplication tables of `BrM(B_n)` modulo the central subgroup `δ^Z`.
//!
//! The tables are obtained by coset enumeration (Todd–Coxeter for monoids)
//! directly from the defining relations. Every node carries a δ-potential, so
//! a relation `L = δ^c R` identifies nodes *with an exponent offset*. An
//! identification of a node with itself at a nonzero offset would mean
//! `δ^k x = x`, which cannot happen in a free algebra; it is reported as an
//! error rather than ignored.
//!
//! After enumeration each element is relabelled by its shortlex-least word
//! (BFS over right multiplication), so element `x` *is* the monomial spelled
//! by `word(x)`, and every table entry is `x·g = δ^k y`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::presentation::{defining_relations, Relation, Token, Word};

const NONE: u32 = u32::MAX;

/// `δ^delta · elem`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scaled {
    pub elem: u32,
    pub delta: i32,
}

impl Scaled {
    pub fn new(elem: u32, delta: i32) -> Self {
        Scaled { elem, delta }
    }

    pub fn shift(self, k: i32) -> Self {
        Scaled::new(self.elem, self.delta + k)
    }
}

struct Enumerator {
    ngens: usize,
    parent: Vec<u32>,
    pot: Vec<i32>,
    edge: Vec<u32>,
    edge_d: Vec<i32>,
    queue: VecDeque<(u32, u32, i32)>,
    live: usize,
    limit: usize,
}

impl Enumerator {
    fn new(ngens: usize, limit: usize) -> Self {
        let mut e = Enumerator {
            ngens,
            parent: Vec::new(),
            pot: Vec::new(),
            edge: Vec::new(),
            edge_d: Vec::new(),
            queue: VecDeque::new(),
            live: 0,
            limit,
        };
        e.new_node();
        e
    }

    fn new_node(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.pot.push(0);
        self.edge.extend(std::iter::repeat_n(NONE, self.ngens));
        self.edge_d.extend(std::iter::repeat_n(0, self.ngens));
        self.live += 1;
        id
    }

    /// Returns `(root, k)` with `x_p = δ^k x_root`.
    fn find(&mut self, p: u32) -> (u32, i32) {
        let mut path = Vec::new();
        let mut cur = p;
        let mut acc = 0;
        while self.parent[cur as usize] != cur {
            path.push(cur);
            acc += self.pot[cur as usize];
            cur = self.parent[cur as usize];
        }
        let root = cur;
        // compress: each node on the path gets its full offset to the root
        let mut rem = acc;
        for &q in &path {
            let own = self.pot[q as usize];
            self.parent[q as usize] = root;
            self.pot[q as usize] = rem;
            rem -= own;
        }
        (root, acc)
    }

    /// `p·g`, defining a new node when the edge is missing.
    fn step(&mut self, p: u32, g: usize, define: bool) -> Option<(u32, i32)> {
        let idx = p as usize * self.ngens + g;
        let t = self.edge[idx];
        if t == NONE {
            if !define {
                return None;
            }
            let q = self.new_node();
            self.edge[idx] = q;
            self.edge_d[idx] = 0;
            return Some((q, 0));
        }
        let d = self.edge_d[idx];
        let (r, k) = self.find(t);
        Some((r, d + k))
    }

    fn trace(&mut self, p: u32, word: &[usize], define: bool) -> Option<(u32, i32)> {
        let mut cur = p;
        let mut acc = 0;
        for &g in word {
            let (r, _) = self.find(cur);
            let (q, k) = self.step(r, g, define)?;
            cur = q;
            acc += k;
        }
        let (r, k) = self.find(cur);
        Some((r, acc + k))
    }

    /// Records `x_a = δ^d x_b` and processes all consequences.
    fn coincide(&mut self, a: u32, b: u32, d: i32) -> Result<()> {
        self.queue.push_back((a, b, d));
        while let Some((a, b, d)) = self.queue.pop_front() {
            let (ra, oa) = self.find(a);
            let (rb, ob) = self.find(b);
            // δ^oa x_ra = δ^(d+ob) x_rb
            if ra == rb {
                if oa != d + ob {
                    return Err(Error::DeltaTorsion { exponent: oa - d - ob });
                }
                continue;
            }
            // keep the older node as representative
            let (keep, drop, drop_pot) = if ra < rb {
                (ra, rb, oa - d - ob) // x_rb = δ^(oa-d-ob) x_ra
            } else {
                (rb, ra, d + ob - oa) // x_ra = δ^(d+ob-oa) x_rb
            };
            self.parent[drop as usize] = keep;
            self.pot[drop as usize] = drop_pot;
            self.live -= 1;
            for g in 0..self.ngens {
                let di = drop as usize * self.ngens + g;
                let t = self.edge[di];
                if t == NONE {
                    continue;
                }
                // x_keep·g = δ^(-drop_pot) x_drop·g = δ^(e - drop_pot) x_t
                let e = self.edge_d[di] - drop_pot;
                let ki = keep as usize * self.ngens + g;
                if self.edge[ki] == NONE {
                    self.edge[ki] = t;
                    self.edge_d[ki] = e;
                } else {
                    let (z, e2) = (self.edge[ki], self.edge_d[ki]);
                    // δ^e2 x_z = δ^e x_t
                    self.queue.push_back((z, t, e - e2));
                }
            }
        }
        Ok(())
    }

    fn run(&mut self, rels: &[Relation]) -> Result<()> {
        let mut p = 0u32;
        while (p as usize) < self.parent.len() {
            if self.parent[p as usize] != p {
                p += 1;
                continue;
            }
            for rel in rels {
                let (r, _) = self.find(p);
                if r != p {
                    break;
                }
                let (q1, k1) = self.trace(p, &rel.lhs, true).expect("defining trace");
                let (q2, k2) = self.trace(p, &rel.rhs, true).expect("defining trace");
                // δ^k1 x_q1 = δ^(c+k2) x_q2
                self.coincide(q1, q2, rel.delta + k2 - k1)?;
                if self.live > self.limit {
                    return Err(Error::EnumerationLimit { limit: self.limit });
                }
            }
            if self.find(p).0 == p {
                for g in 0..self.ngens {
                    self.step(p, g, true);
                }
            }
            p += 1;
        }
        Ok(())
    }
}

/// Complete multiplication data of `BrM(B_n)/δ^Z`.
#[derive(Clone, Debug)]
pub struct MonoidTable {
    n: usize,
    ngens: usize,
    right: Vec<Scaled>,
    left: Vec<Scaled>,
    opp: Vec<Scaled>,
    /// BFS tree: element = parent · gen (the identity has no parent)
    tree: Vec<(u32, u8)>,
}

impl MonoidTable {
    /// Enumerates the monoid from the defining relations of rank `n`.
    pub fn enumerate(n: usize) -> Result<Self> {
        Self::enumerate_with(n, &defining_relations(n), 40_000_000)
    }

    /// Enumeration from an explicit relation list; `limit` caps the number of live nodes.
    pub fn enumerate_with(n: usize, rels: &[Relation], limit: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Rank(n));
        }
        let ngens = 2 * n;
        let mut en = Enumerator::new(ngens, limit);
        en.run(rels)?;

        // relabel by BFS from the identity so that element ids follow shortlex words
        let nodes = en.parent.len();
        let mut label = vec![NONE; nodes];
        let mut shift = vec![0i32; nodes]; // word(x) = δ^shift x_root
        let mut order: Vec<u32> = Vec::with_capacity(en.live);
        let mut tree = Vec::with_capacity(en.live);
        let (root0, _) = en.find(0);
        label[root0 as usize] = 0;
        order.push(root0);
        tree.push((NONE, 0u8));
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for g in 0..ngens {
                let (y, k) = en.step(x, g, false).expect("complete table");
                if label[y as usize] == NONE {
                    label[y as usize] = order.len() as u32;
                    shift[y as usize] = shift[x as usize] + k;
                    order.push(y);
                    tree.push((label[x as usize], g as u8));
                }
            }
        }
        let size = order.len();
        let mut right = vec![Scaled::new(0, 0); size * ngens];
        for (i, &x) in order.iter().enumerate() {
            for g in 0..ngens {
                let (y, k) = en.step(x, g, false).expect("complete table");
                // x' = δ^s(x) x ; x'·g = δ^(s(x)+k) y = δ^(s(x)+k-s(y)) y'
                let d = shift[x as usize] + k - shift[y as usize];
                right[i * ngens + g] = Scaled::new(label[y as usize], d);
            }
        }
        let mut table = MonoidTable {
            n,
            ngens,
            right,
            left: Vec::new(),
            opp: Vec::new(),
            tree,
        };
        table.build_left_and_opposite();
        Ok(table)
    }

    fn build_left_and_opposite(&mut self) {
        let size = self.len();
        let ngens = self.ngens;
        let mut left = vec![Scaled::new(0, 0); size * ngens];
        let mut opp = vec![Scaled::new(0, 0); size];
        left[..ngens].copy_from_slice(&self.right[..ngens]);
        for x in 1..size {
            let (p, h) = self.tree[x];
            let h = h as usize;
            // g·x = (g·p)·h
            for g in 0..ngens {
                let gp = left[p as usize * ngens + g];
                let y = self.right[gp.elem as usize * ngens + h];
                left[x * ngens + g] = y.shift(gp.delta);
            }
            // op(x) = h·op(p)
            let op = opp[p as usize];
            let y = left[op.elem as usize * ngens + h];
            opp[x] = y.shift(op.delta);
        }
        self.left = left;
        self.opp = opp;
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Number of monomials up to powers of δ.
    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// `x·g`
    pub fn right_mul(&self, x: u32, g: usize) -> Scaled {
        self.right[x as usize * self.ngens + g]
    }

    /// `g·x`
    pub fn left_mul(&self, g: usize, x: u32) -> Scaled {
        self.left[x as usize * self.ngens + g]
    }

    /// `x^op`
    pub fn opposite(&self, x: u32) -> Scaled {
        self.opp[x as usize]
    }

    /// Evaluates `start · word` by right multiplication.
    pub fn apply_right(&self, start: Scaled, word: &Word) -> Scaled {
        let mut cur = start;
        for &t in word.tokens() {
            cur = match t.gen_index(self.n) {
                Some(g) => self.right_mul(cur.elem, g).shift(cur.delta),
                None => cur.shift(match t {
                    Token::Delta(k) => k,
                    _ => 0,
                }),
            };
        }
        cur
    }

    /// Evaluates `word · start` by left multiplication (right-to-left fold).
    pub fn apply_left(&self, word: &Word, start: Scaled) -> Scaled {
        let mut cur = start;
        for &t in word.tokens().iter().rev() {
            cur = match t.gen_index(self.n) {
                Some(g) => self.left_mul(g, cur.elem).shift(cur.delta),
                None => cur.shift(match t {
                    Token::Delta(k) => k,
                    _ => 0,
                }),
            };
        }
        cur
    }

    /// The value of a word, evaluated left to right.
    pub fn eval(&self, word: &Word) -> Scaled {
        self.apply_right(Scaled::new(0, 0), word)
    }

    /// `a · b` for two elements.
    pub fn mul(&self, a: Scaled, b: Scaled) -> Scaled {
        let w = self.word(b.elem);
        self.apply_right(a, &w).shift(b.delta)
    }

    /// Shortlex-least word of an element (this word's value *is* the element).
    pub fn word(&self, x: u32) -> Word {
        let mut toks = Vec::new();
        let mut cur = x;
        while cur != 0 {
            let (p, g) = self.tree[cur as usize];
            toks.push(Token::from_gen_index(g as usize, self.n));
            cur = p;
        }
        toks.reverse();
        Word(toks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_has_three_elements() {
        let m = MonoidTable::enumerate(1).unwrap();
        assert_eq!(m.len(), 3);
        let e0 = m.eval(&"e0".parse().unwrap());
        assert_eq!(m.eval(&"e0 e0".parse().unwrap()), e0.shift(2));
        assert_eq!(m.eval(&"r0 e0".parse().unwrap()), e0);
    }

    #[test]
    fn rank_two_has_twenty_five_elements() {
        let m = MonoidTable::enumerate(2).unwrap();
        assert_eq!(m.len(), 25);
    }

    #[test]
    fn left_and_right_folds_agree() {
        let m = MonoidTable::enumerate(3).unwrap();
        let w: Word = "e0 r1 e2 e1 r0 e0 r2 e1".parse().unwrap();
        assert_eq!(m.eval(&w), m.apply_left(&w, Scaled::new(0, 0)));
    }

    #[test]
    fn torsion_is_detected() {
        // e0 e0 = δ e0 together with e0 e0 = δ^2 e0 forces δ e0 = e0
        let mut rels = defining_relations(1);
        rels.push(Relation {
            name: "bogus".into(),
            lhs: vec![1, 1],
            rhs: vec![1],
            delta: 1,
        });
        assert!(matches!(
            MonoidTable::enumerate_with(1, &rels, 1000),
            Err(Error::DeltaTorsion { .. })
        ));
    }
}
