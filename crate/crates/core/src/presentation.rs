//! Generator words and the defining relations of the type-B Brauer monoid.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single letter of a word in `r_0..r_{n-1}`, `e_0..e_{n-1}`, `δ^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Token {
    R(usize),
    E(usize),
    /// `d` (`+1`) or `d-1` (`-1`).
    Delta(i32),
}

impl Token {
    /// Dense index used by the multiplication tables: `r_i -> i`, `e_i -> n + i`.
    pub fn gen_index(self, n: usize) -> Option<usize> {
        match self {
            Token::R(i) => Some(i),
            Token::E(i) => Some(n + i),
            Token::Delta(_) => None,
        }
    }

    pub fn from_gen_index(g: usize, n: usize) -> Token {
        if g < n {
            Token::R(g)
        } else {
            Token::E(g - n)
        }
    }

    pub fn is_reflection(self) -> bool {
        matches!(self, Token::R(_))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::R(i) => write!(f, "r{i}"),
            Token::E(i) => write!(f, "e{i}"),
            Token::Delta(1) => write!(f, "d"),
            Token::Delta(-1) => write!(f, "d-1"),
            Token::Delta(k) => write!(f, "d^{k}"),
        }
    }
}

/// A word over the generators of `BrM(B_n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Token>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The opposite word: letters reversed (the anti-involution fixes generators).
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Net power of δ carried by explicit `d` tokens.
    pub fn delta_power(&self) -> i32 {
        self.0
            .iter()
            .map(|t| match t {
                Token::Delta(k) => *k,
                _ => 0,
            })
            .sum()
    }

    /// Generator indices with δ tokens dropped.
    pub fn gen_indices(&self, n: usize) -> Vec<usize> {
        self.0.iter().filter_map(|t| t.gen_index(n)).collect()
    }

    /// Checks every index against rank `n`.
    pub fn check_rank(&self, n: usize) -> Result<()> {
        for (pos, t) in self.0.iter().enumerate() {
            match t {
                Token::R(i) | Token::E(i) if *i >= n => {
                    return Err(Error::Parse {
                        position: pos,
                        token: t.to_string(),
                        reason: format!("index out of range for n = {n}"),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn parse_for_rank(s: &str, n: usize) -> Result<Word> {
        let w: Word = s.parse()?;
        w.check_rank(n)?;
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated tokens: `r0 r1 e0 e2 d d-1 d^3`. `1` and `*` are ignored.
    fn from_str(s: &str) -> Result<Word> {
        let mut out = Vec::new();
        for (pos, raw) in s.split_whitespace().enumerate() {
            let bad = |reason: &str| Error::Parse {
                position: pos,
                token: raw.to_string(),
                reason: reason.to_string(),
            };
            let tok = match raw {
                "1" | "*" => continue,
                "d" => Token::Delta(1),
                "d-1" => Token::Delta(-1),
                _ if raw.starts_with("d^") => {
                    let k: i32 = raw[2..].parse().map_err(|_| bad("expected d^<integer>"))?;
                    Token::Delta(k)
                }
                _ => {
                    let (head, tail) = raw.split_at(1);
                    let idx: usize = tail
                        .trim_start_matches('_')
                        .parse()
                        .map_err(|_| bad("expected r<i>, e<i>, d or d-1"))?;
                    match head {
                        "r" => Token::R(idx),
                        "e" => Token::E(idx),
                        _ => return Err(bad("expected r<i>, e<i>, d or d-1")),
                    }
                }
            };
            out.push(tok);
        }
        Ok(Word(out))
    }
}

/// `L = δ^delta · R` as generator-index words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub delta: i32,
}

impl Relation {
    fn new(name: impl Into<String>, lhs: Vec<usize>, rhs: Vec<usize>, delta: i32) -> Self {
        Relation {
            name: name.into(),
            lhs,
            rhs,
            delta,
        }
    }

    pub fn lhs_word(&self, n: usize) -> Word {
        Word(self.lhs.iter().map(|&g| Token::from_gen_index(g, n)).collect())
    }

    pub fn rhs_word(&self, n: usize) -> Word {
        let mut v: Vec<Token> = self.rhs.iter().map(|&g| Token::from_gen_index(g, n)).collect();
        if self.delta != 0 {
            v.insert(0, Token::Delta(self.delta));
        }
        Word(v)
    }
}

fn adjacent(i: usize, j: usize) -> bool {
    i.abs_diff(j) == 1
}

fn orthogonal(i: usize, j: usize) -> bool {
    i.abs_diff(j) >= 2
}

/// The defining relations of `Br(B_n)`, instantiated for every admissible index pair.
pub fn defining_relations(n: usize) -> Vec<Relation> {
    let r = |i: usize| i;
    let e = |i: usize| n + i;
    let mut rels = Vec::new();
    for i in 0..n {
        rels.push(Relation::new(format!("r_i^2 i={i}"), vec![r(i), r(i)], vec![], 0));
        rels.push(Relation::new(format!("r_i e_i i={i}"), vec![r(i), e(i)], vec![e(i)], 0));
        rels.push(Relation::new(format!("e_i r_i i={i}"), vec![e(i), r(i)], vec![e(i)], 0));
        if i > 0 {
            rels.push(Relation::new(format!("e_i^2 i={i}"), vec![e(i), e(i)], vec![e(i)], 1));
        }
    }
    if n >= 1 {
        rels.push(Relation::new("e_0^2", vec![e(0), e(0)], vec![e(0)], 2));
    }
    for i in 0..n {
        for j in 0..n {
            if orthogonal(i, j) {
                if i < j {
                    rels.push(Relation::new(format!("r commute {i},{j}"), vec![r(i), r(j)], vec![r(j), r(i)], 0));
                    rels.push(Relation::new(format!("e commute {i},{j}"), vec![e(i), e(j)], vec![e(j), e(i)], 0));
                }
                rels.push(Relation::new(format!("e r commute {i},{j}"), vec![e(i), r(j)], vec![r(j), e(i)], 0));
            }
            if adjacent(i, j) && i > 0 && j > 0 {
                if i < j {
                    rels.push(Relation::new(
                        format!("braid {i},{j}"),
                        vec![r(i), r(j), r(i)],
                        vec![r(j), r(i), r(j)],
                        0,
                    ));
                }
                rels.push(Relation::new(format!("r_j r_i e_j {i},{j}"), vec![r(j), r(i), e(j)], vec![e(i), e(j)], 0));
                if i < j {
                    rels.push(Relation::new(
                        format!("r_i e_j r_i {i},{j}"),
                        vec![r(i), e(j), r(i)],
                        vec![r(j), e(i), r(j)],
                        0,
                    ));
                }
            }
        }
    }
    if n >= 2 {
        let (r0, r1, e0, e1) = (r(0), r(1), e(0), e(1));
        rels.push(Relation::new("braid r0 r1", vec![r1, r0, r1, r0], vec![r0, r1, r0, r1], 0));
        rels.push(Relation::new("r0 r1 e0", vec![r0, r1, e0], vec![r1, e0], 0));
        rels.push(Relation::new("r0 e1 r0 e1", vec![r0, e1, r0, e1], vec![e1, e0, e1], 0));
        rels.push(Relation::new("r0 r1 r0 e1", vec![r0, r1, r0, e1], vec![e1, r0, r1, r0], 0));
        rels.push(Relation::new("e0 r1 e0", vec![e0, r1, e0], vec![e0], 1));
        rels.push(Relation::new("e0 e1 e0", vec![e0, e1, e0], vec![e0], 1));
        rels.push(Relation::new("e0 r1 r0", vec![e0, r1, r0], vec![e0, r1], 0));
        rels.push(Relation::new("e0 e1 r0", vec![e0, e1, r0], vec![e0, e1], 0));
    }
    rels
}
