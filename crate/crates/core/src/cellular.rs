//! Cell datum: labels, index sets, the map into diagram indices and the
//! filtration checks.
//!
//! Base labels are `t` (a strand through point 1, `t` decorated horizontal
//! pairs on `{2..m}`) and `(t, θ)` (`t` undecorated pairs on `{1..m}`).
//! The inner skeleton of `t` is `W(B_{n−2t}) × ⟨ξ⟩` (no `ξ` at `t = 0`),
//! labelled by bipartitions; the inner skeleton of `(t, θ)` is
//! `Sym(n+1−2t)`, labelled by partitions. Through strands are encoded by
//! Robinson–Schensted pairs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::rank_formula;
use crate::connector::{is_symmetric_basis_index, DecoratedConnector, DiagramIndex, Strand};
use crate::error::{Error, Result};
use crate::normalform::{BrauerAlgebra, NormalForm};
use crate::presentation::Token;
use crate::ring::{pow_signed, Marker};

pub type Tableau = Vec<Vec<usize>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BaseLabel {
    Plain(usize),
    Theta(usize),
}

impl BaseLabel {
    pub fn t(self) -> usize {
        match self {
            BaseLabel::Plain(t) | BaseLabel::Theta(t) => t,
        }
    }
}

impl fmt::Display for BaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseLabel::Plain(t) => write!(f, "{t}"),
            BaseLabel::Theta(t) => write!(f, "({t},θ)"),
        }
    }
}

/// Base label of a normal form: class 1 sits in `t`, classes 2–6 in `(t, θ)`.
pub fn base_label_of(x: &NormalForm) -> BaseLabel {
    if x.class_i == 1 {
        BaseLabel::Plain(x.t)
    } else {
        BaseLabel::Theta(x.t)
    }
}

/// `t1 > t2 ⇔ t1 < t2`, `(t1,θ) > (t2,θ) ⇔ t1 < t2`, `t1 > (t2,θ) ⇔ t1 ≤ t2`.
pub fn base_leq(a: BaseLabel, b: BaseLabel) -> bool {
    use BaseLabel::*;
    match (a, b) {
        (Plain(x), Plain(y)) | (Theta(x), Theta(y)) => x >= y,
        (Theta(x), Plain(y)) => y <= x,
        (Plain(_), Theta(_)) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Refinement {
    Bipartition {
        alpha: Vec<usize>,
        beta: Vec<usize>,
        xi: bool,
    },
    Partition(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellLabel {
    pub base: BaseLabel,
    pub refinement: Refinement,
}

fn fmt_partition(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.refinement {
            Refinement::Bipartition { alpha, beta, xi } => {
                write!(f, "{}:{}|{}", self.base, fmt_partition(alpha), fmt_partition(beta))?;
                if self.base.t() > 0 {
                    write!(f, ":{}", if *xi { "ξ" } else { "1" })?;
                }
                Ok(())
            }
            Refinement::Partition(mu) => write!(f, "{}:{}", self.base, fmt_partition(mu)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum InnerIndex {
    Bitableau(Tableau, Tableau),
    Tableau(Tableau),
}

/// Element of `T(λ)`: the horizontal pairs on one side and an inner tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellIndex {
    pub pairs: Vec<(i32, i32, bool)>,
    pub inner: InnerIndex,
}

// ---------------------------------------------------------------- tableaux

/// Partitions of `k`, in decreasing lexicographic order.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=k.min(max)).rev() {
            prefix.push(p);
            go(k - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

pub fn bipartitions(k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0..=k)
        .rev()
        .flat_map(|a| {
            let betas = partitions(k - a);
            partitions(a)
                .into_iter()
                .flat_map(move |al| betas.clone().into_iter().map(move |be| (al.clone(), be)))
        })
        .collect()
}

/// `a ⊵ b` in the dominance order (same size assumed).
pub fn dominates(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

fn bi_dominates(a: (&[usize], &[usize]), b: (&[usize], &[usize])) -> bool {
    let (na, nb): (usize, usize) = (a.0.iter().sum(), b.0.iter().sum());
    if !dominates_loose(a.0, b.0) {
        return false;
    }
    let (mut sa, mut sb) = (na, nb);
    for i in 0..a.1.len().max(b.1.len()) {
        sa += a.1.get(i).copied().unwrap_or(0);
        sb += b.1.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// Partial sums of `a` dominate those of `b`, sizes unconstrained.
fn dominates_loose(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    (0..a.len().max(b.len())).all(|i| {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        sa >= sb
    })
}

/// Standard tableaux of `shape` filled with `entries` (increasing).
pub fn standard_tableaux(shape: &[usize], entries: &[usize]) -> Vec<Tableau> {
    let Some((&last, rest)) = entries.split_last() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for r in 0..shape.len() {
        let corner = shape[r] > 0 && (r + 1 == shape.len() || shape[r + 1] < shape[r]);
        if !corner {
            continue;
        }
        let mut smaller = shape.to_vec();
        smaller[r] -= 1;
        while smaller.last() == Some(&0) {
            smaller.pop();
        }
        for mut t in standard_tableaux(&smaller, rest) {
            if t.len() <= r {
                t.push(Vec::new());
            }
            t[r].push(last);
            out.push(t);
        }
    }
    out
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..=k {
            cur.push(x);
            go(x + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, k, size, &mut Vec::new(), &mut out);
    out
}

pub fn standard_bitableaux(alpha: &[usize], beta: &[usize]) -> Vec<(Tableau, Tableau)> {
    let a: usize = alpha.iter().sum();
    let k = a + beta.iter().sum::<usize>();
    let mut out = Vec::new();
    for s in subsets(k, a) {
        let rest: Vec<usize> = (1..=k).filter(|x| !s.contains(x)).collect();
        let right = standard_tableaux(beta, &rest);
        for l in standard_tableaux(alpha, &s) {
            for r in &right {
                out.push((l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Row insertion of `(position, value)` pairs taken in order: `(P, Q)`.
pub fn rs_insert(word: &[(usize, usize)]) -> (Tableau, Tableau) {
    let (mut p, mut q): (Tableau, Tableau) = (Vec::new(), Vec::new());
    for &(pos, val) in word {
        let mut x = val;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![pos]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(j) => {
                    std::mem::swap(&mut p[row][j], &mut x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(pos);
                    break;
                }
            }
        }
    }
    (p, q)
}

/// `(P, Q)` of a signed permutation in one-line notation: the positive and
/// negative letters are inserted separately.
pub fn signed_rs(sigma: &[i32]) -> ((Tableau, Tableau), (Tableau, Tableau)) {
    let pick = |neg: bool| -> Vec<(usize, usize)> {
        sigma
            .iter()
            .enumerate()
            .filter(|(_, &v)| (v < 0) == neg)
            .map(|(i, &v)| (i + 1, v.unsigned_abs() as usize))
            .collect()
    };
    let (pp, qp) = rs_insert(&pick(false));
    let (pn, qn) = rs_insert(&pick(true));
    ((pp, pn), (qp, qn))
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

type RsKey = (InnerIndex, InnerIndex);

/// Inverse RS tables, keyed by `(k, signed)`: `(P, Q) ↦ one-line notation`.
fn rs_inverse(k: usize, signed: bool) -> Arc<HashMap<RsKey, Vec<i32>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<HashMap<RsKey, Vec<i32>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache lock").get(&(k, signed)) {
        return m.clone();
    }
    let mut table = HashMap::new();
    for p in permutations(k) {
        let signs = if signed { 1usize << k } else { 1 };
        for mask in 0..signs {
            let sigma: Vec<i32> = p
                .iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { -(x as i32 + 1) } else { x as i32 + 1 })
                .collect();
            let key = if signed {
                let ((pp, pn), (qp, qn)) = signed_rs(&sigma);
                (InnerIndex::Bitableau(pp, pn), InnerIndex::Bitableau(qp, qn))
            } else {
                let word: Vec<(usize, usize)> = sigma.iter().enumerate().map(|(i, &v)| (i + 1, v as usize)).collect();
                let (pt, qt) = rs_insert(&word);
                (InnerIndex::Tableau(pt), InnerIndex::Tableau(qt))
            };
            table.insert(key, sigma);
        }
    }
    let table = Arc::new(table);
    cache.lock().expect("cache lock").insert((k, signed), table.clone());
    table
}

// ---------------------------------------------------------------- index sets

/// Sets of `t` disjoint pairs drawn from `points`.
pub fn pair_sets(points: &[i32], t: usize) -> Vec<Vec<(i32, i32)>> {
    if t == 0 {
        return vec![Vec::new()];
    }
    if points.len() < 2 * t {
        return Vec::new();
    }
    let (first, rest) = (points[0], &points[1..]);
    let mut out = pair_sets(rest, t);
    for j in 0..rest.len() {
        let mut remaining = rest.to_vec();
        let q = remaining.remove(j);
        for mut s in pair_sets(&remaining, t - 1) {
            s.insert(0, (first, q));
            out.push(s);
        }
    }
    out
}

fn decorated_pair_sets(points: &[i32], t: usize) -> Vec<Vec<(i32, i32, bool)>> {
    let mut out = Vec::new();
    for s in pair_sets(points, t) {
        for mask in 0..1usize << t {
            out.push(s.iter().enumerate().map(|(i, &(a, b))| (a, b, mask >> i & 1 == 1)).collect());
        }
    }
    out
}

/// All cell labels for rank `n`.
pub fn cell_labels(n: usize) -> Vec<CellLabel> {
    let mut out = Vec::new();
    for t in 0..=n / 2 {
        for (alpha, beta) in bipartitions(n - 2 * t) {
            for xi in if t == 0 { vec![false] } else { vec![false, true] } {
                out.push(CellLabel {
                    base: BaseLabel::Plain(t),
                    refinement: Refinement::Bipartition {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        xi,
                    },
                });
            }
        }
    }
    for t in 1..=n.div_ceil(2) {
        for mu in partitions(n + 1 - 2 * t) {
            out.push(CellLabel {
                base: BaseLabel::Theta(t),
                refinement: Refinement::Partition(mu),
            });
        }
    }
    out
}

/// `T(λ)`.
pub fn index_set(n: usize, label: &CellLabel) -> Vec<CellIndex> {
    let m = n as i32 + 1;
    let t = label.base.t();
    let (pairs, inner): (Vec<Vec<(i32, i32, bool)>>, Vec<InnerIndex>) = match &label.refinement {
        Refinement::Bipartition { alpha, beta, .. } => (
            decorated_pair_sets(&(2..=m).collect::<Vec<_>>(), t),
            standard_bitableaux(alpha, beta)
                .into_iter()
                .map(|(a, b)| InnerIndex::Bitableau(a, b))
                .collect(),
        ),
        Refinement::Partition(mu) => {
            let k: usize = mu.iter().sum();
            (
                pair_sets(&(1..=m).collect::<Vec<_>>(), t)
                    .into_iter()
                    .map(|s| s.into_iter().map(|(a, b)| (a, b, false)).collect())
                    .collect(),
                standard_tableaux(mu, &(1..=k).collect::<Vec<_>>())
                    .into_iter()
                    .map(InnerIndex::Tableau)
                    .collect(),
            )
        }
    };
    let mut out = Vec::with_capacity(pairs.len() * inner.len());
    for p in &pairs {
        for v in &inner {
            out.push(CellIndex {
                pairs: p.clone(),
                inner: v.clone(),
            });
        }
    }
    out
}

fn inner_shape(v: &InnerIndex) -> (Vec<usize>, Vec<usize>) {
    let shape = |t: &Tableau| t.iter().map(Vec::len).collect::<Vec<_>>();
    match v {
        InnerIndex::Bitableau(a, b) => (shape(a), shape(b)),
        InnerIndex::Tableau(a) => (shape(a), Vec::new()),
    }
}

fn label_shape(label: &CellLabel) -> (Vec<usize>, Vec<usize>) {
    match &label.refinement {
        Refinement::Bipartition { alpha, beta, .. } => (alpha.clone(), beta.clone()),
        Refinement::Partition(mu) => (mu.clone(), Vec::new()),
    }
}

fn free_points(m: i32, pairs: &[(i32, i32, bool)], skip_one: bool) -> Vec<i32> {
    let used: HashSet<i32> = pairs.iter().flat_map(|&(a, b, _)| [a, b]).collect();
    (1..=m).filter(|p| !used.contains(p) && !(skip_one && *p == 1)).collect()
}

/// The diagram index attached to `(x, y) ∈ T(λ) × T(λ)`: top pairs from `x`,
/// bottom pairs from `y`, through strands from the RS pair `(P, Q) = (y, x)`.
pub fn cell_map(n: usize, label: &CellLabel, x: &CellIndex, y: &CellIndex) -> Result<DiagramIndex> {
    let m = n as i32 + 1;
    let t = label.base.t();
    let shape = label_shape(label);
    for c in [x, y] {
        if c.pairs.len() != t || inner_shape(&c.inner) != shape {
            return Err(Error::InvalidConnector(format!("index {c:?} is not in T({label})")));
        }
    }
    let plain = matches!(label.base, BaseLabel::Plain(_));
    let k = m as usize - 2 * t - usize::from(plain);
    let sigma = rs_inverse(k, plain)
        .get(&(y.inner.clone(), x.inner.clone()))
        .cloned()
        .ok_or_else(|| Error::InvalidConnector(format!("no RS preimage in T({label})")))?;
    let (top, bot) = (free_points(m, &x.pairs, plain), free_points(m, &y.pairs, plain));
    let mut strands = Vec::with_capacity(m as usize);
    strands.extend(x.pairs.iter().map(|&(a, b, d)| Strand { a, b, decorated: d }));
    strands.extend(y.pairs.iter().map(|&(a, b, d)| Strand {
        a: -a,
        b: -b,
        decorated: d,
    }));
    for (i, &s) in sigma.iter().enumerate() {
        strands.push(Strand {
            a: top[i],
            b: -bot[s.unsigned_abs() as usize - 1],
            decorated: s < 0,
        });
    }
    let marker = match &label.refinement {
        Refinement::Bipartition { xi, .. } => {
            let odd = strands.iter().filter(|s| s.decorated).count() % 2 == 1;
            strands.push(Strand {
                a: 1,
                b: -1,
                decorated: odd,
            });
            if *xi {
                Marker::Xi
            } else {
                Marker::One
            }
        }
        Refinement::Partition(_) => Marker::Theta,
    };
    Ok(DiagramIndex {
        marker,
        connector: DecoratedConnector::from_strands(m as usize, strands)?,
        delta_exp: 0,
    })
}

/// `λ ≤ μ`: the base order, refined inside a base label by reversed dominance
/// (more dominant shapes lie lower).
pub fn poset_leq(a: &CellLabel, b: &CellLabel) -> bool {
    if a.base != b.base {
        return base_leq(a.base, b.base);
    }
    match (&a.refinement, &b.refinement) {
        (Refinement::Partition(x), Refinement::Partition(y)) => dominates(x, y),
        (
            Refinement::Bipartition { alpha, beta, xi },
            Refinement::Bipartition {
                alpha: a2,
                beta: b2,
                xi: x2,
            },
        ) => xi == x2 && bi_dominates((alpha, beta), (a2, b2)),
        _ => false,
    }
}

pub fn flip_index(d: &DiagramIndex) -> DiagramIndex {
    DiagramIndex {
        marker: d.marker,
        connector: d.connector.flip(),
        delta_exp: d.delta_exp,
    }
}

// ---------------------------------------------------------------- checks

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub label: String,
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    fn new(label: impl ToString, check: &str, witness: Option<String>) -> Self {
        CheckReport {
            label: label.to_string(),
            check: check.to_string(),
            status: if witness.is_none() { Status::Pass } else { Status::Fail },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Values of δ used for the exact checks: five odd nonzero integers and a
/// non-integral rational.
pub fn specializations() -> Vec<BigRational> {
    let mut out: Vec<BigRational> = [-3i64, -1, 1, 3, 5]
        .into_iter()
        .map(|z| BigRational::from_integer(BigInt::from(z)))
        .collect();
    out.push(BigRational::new(BigInt::from(7), BigInt::from(3)));
    out
}

/// `Σ_λ |T(λ)|²`.
pub fn cell_dimension_sum(n: usize) -> u128 {
    cell_labels(n)
        .iter()
        .map(|l| {
            let s = index_set(n, l).len() as u128;
            s * s
        })
        .sum()
}

fn generator_tokens(n: usize) -> Vec<Token> {
    (0..n).map(Token::R).chain((0..n).map(Token::E)).collect()
}

struct Context<'a> {
    alg: &'a BrauerAlgebra,
    basis: Vec<NormalForm>,
    phi: Vec<DiagramIndex>,
    phi_inv: HashMap<DiagramIndex, usize>,
}

impl<'a> Context<'a> {
    fn new(alg: &'a BrauerAlgebra) -> Result<Self> {
        let basis = alg.enumerate_basis();
        let phi = basis.iter().map(|x| alg.phi_index(x)).collect::<Result<Vec<_>>>()?;
        let phi_inv = phi.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        Ok(Context {
            alg,
            basis,
            phi,
            phi_inv,
        })
    }
}

/// Runs every filtration check for rank `n` (intended for `n ≤ 4`).
pub fn verify_filtration(n: usize) -> Result<Vec<CheckReport>> {
    let alg = BrauerAlgebra::get(n)?;
    let ctx = Context::new(&alg)?;
    let mut out = Vec::new();
    let labels = cell_labels(n);

    let total = cell_dimension_sum(n);
    out.push(CheckReport::new(
        "all",
        "dimension",
        (total != rank_formula(n as u64) || total != ctx.basis.len() as u128)
            .then(|| format!("Σ|T(λ)|² = {total}, rank {}", ctx.basis.len())),
    ));

    out.push(CheckReport::new("all", "C1", check_c1(n, &labels, &ctx)?));
    for l in &labels {
        out.push(CheckReport::new(l, "C2-diagram", check_c2_diagram(n, l)?));
    }
    out.push(CheckReport::new("all", "C2-opposite", check_c2_opposite(&ctx)?));

    let mut bases: Vec<BaseLabel> = labels.iter().map(|l| l.base).collect();
    bases.dedup();
    for &b in &bases {
        out.push(CheckReport::new(b, "ideal", check_ideal(b, &ctx)?));
    }
    for &b in &bases {
        if let BaseLabel::Theta(t) = b {
            for z in specializations() {
                out.push(CheckReport::new(b, &format!("C3 δ={z}"), check_c3(n, t, &z, &ctx)?));
            }
        }
    }
    Ok(out)
}

fn check_c1(n: usize, labels: &[CellLabel], ctx: &Context) -> Result<Option<String>> {
    let mut seen = HashSet::new();
    for l in labels {
        let idx = index_set(n, l);
        for x in &idx {
            for y in &idx {
                let d = cell_map(n, l, x, y)?;
                if !is_symmetric_basis_index(&d) {
                    return Ok(Some(format!("{l}: image {} is not a basis index", crate::connector::canonical_encode(&d))));
                }
                if !ctx.phi_inv.contains_key(&d) {
                    return Ok(Some(format!("{l}: image {} is not attached to a monomial", crate::connector::canonical_encode(&d))));
                }
                if !seen.insert(d.clone()) {
                    return Ok(Some(format!("{l}: image {} repeated", crate::connector::canonical_encode(&d))));
                }
            }
        }
    }
    Ok((seen.len() != ctx.basis.len()).then(|| format!("{} images for rank {}", seen.len(), ctx.basis.len())))
}

fn check_c2_diagram(n: usize, l: &CellLabel) -> Result<Option<String>> {
    let idx = index_set(n, l);
    for x in &idx {
        for y in &idx {
            if cell_map(n, l, y, x)? != flip_index(&cell_map(n, l, x, y)?) {
                return Ok(Some(format!("x = {x:?}, y = {y:?}")));
            }
        }
    }
    Ok(None)
}

/// The opposition of the algebra acts on attached diagrams by flipping them.
fn check_c2_opposite(ctx: &Context) -> Result<Option<String>> {
    for (x, d) in ctx.basis.iter().zip(&ctx.phi) {
        let op = ctx.alg.opposite_nf(x)?;
        if ctx.alg.phi_index(&op)? != flip_index(d) {
            return Ok(Some(ctx.alg.pretty(x)?));
        }
    }
    Ok(None)
}

/// Products of monomials with base label `b` by generators on either side
/// stay in the down-set of `b`.
fn check_ideal(b: BaseLabel, ctx: &Context) -> Result<Option<String>> {
    let n = ctx.alg.rank();
    let table = ctx.alg.table();
    for x in ctx.basis.iter().filter(|x| base_label_of(x) == b) {
        let s = ctx.alg.node_of(x)?;
        for g in 0..table.ngens() {
            for (side, y) in [("left", table.left_mul(g, s.elem)), ("right", table.right_mul(s.elem, g))] {
                let y = ctx.alg.normal_form_of(y);
                if !base_leq(base_label_of(&y), b) {
                    let tok = generator_tokens(n)[g];
                    return Ok(Some(format!("{side} {tok} · {} leaves the ideal", ctx.alg.pretty(x)?)));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- (C3)

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// A Murphy-type basis `m_{ab} = d(a)^{-1} x_μ d(b)` of the group algebra of
/// `Sym(k)` on the permutations of `0..k`.
struct Murphy {
    perms: Vec<Vec<usize>>,
    perm_index: HashMap<Vec<usize>, usize>,
    /// `(shape, a, b)` for each basis element, tableaux as indices into `tabs`.
    elems: Vec<(usize, usize, usize)>,
    shapes: Vec<Vec<usize>>,
    tabs: Vec<Vec<Tableau>>,
    terms: Vec<Vec<usize>>,
    inverse: Vec<Vec<BigRational>>,
}

impl Murphy {
    fn new(k: usize) -> Result<Self> {
        let perms = permutations(k);
        let perm_index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let shapes = partitions(k);
        let entries: Vec<usize> = (1..=k).collect();
        let tabs: Vec<Vec<Tableau>> = shapes.iter().map(|s| standard_tableaux(s, &entries)).collect();
        let (mut elems, mut terms) = (Vec::new(), Vec::new());
        for (si, shape) in shapes.iter().enumerate() {
            let mut row_of = vec![0; k];
            let mut initial: Tableau = Vec::new();
            let mut next = 0;
            for (r, &len) in shape.iter().enumerate() {
                initial.push((next..next + len).collect());
                for slot in row_of.iter_mut().skip(next).take(len) {
                    *slot = r;
                }
                next += len;
            }
            let stab: Vec<&Vec<usize>> = perms.iter().filter(|p| p.iter().enumerate().all(|(i, &x)| row_of[i] == row_of[x])).collect();
            let d = |t: &Tableau| -> Vec<usize> {
                let mut p = vec![0; k];
                for (r, row) in t.iter().enumerate() {
                    for (c, &e) in row.iter().enumerate() {
                        p[initial[r][c]] = e - 1;
                    }
                }
                p
            };
            for (ai, a) in tabs[si].iter().enumerate() {
                let da_inv = invert(&d(a));
                for (bi, b) in tabs[si].iter().enumerate() {
                    let db = d(b);
                    let term: Vec<usize> = stab.iter().map(|w| perm_index[&compose(&da_inv, &compose(w, &db))]).collect();
                    elems.push((si, ai, bi));
                    terms.push(term);
                }
            }
        }
        let size = perms.len();
        if elems.len() != size {
            return Err(Error::Inconsistent(format!("{} Murphy elements for Sym({k})", elems.len())));
        }
        let mut mat = vec![vec![BigRational::zero(); size]; size];
        for (row, term) in mat.iter_mut().zip(&terms) {
            for &p in term {
                row[p] += BigRational::one();
            }
        }
        let inverse = invert_matrix(mat).ok_or_else(|| Error::Inconsistent(format!("Murphy elements of Sym({k}) are dependent")))?;
        Ok(Murphy {
            perms,
            perm_index,
            elems,
            shapes,
            tabs,
            terms,
            inverse,
        })
    }

    /// Coordinates of a vector over permutations: `c = v · M^{-1}`.
    fn coords(&self, v: &[BigRational]) -> Vec<BigRational> {
        let size = v.len();
        (0..size)
            .map(|j| {
                let mut acc = BigRational::zero();
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += x * &self.inverse[i][j];
                    }
                }
                acc
            })
            .collect()
    }
}

fn invert_matrix(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let size = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..size)
        .map(|i| (0..size).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..size {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..size {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..size {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

/// Splits a `(t, θ)` diagram into top pairs, bottom pairs and the through
/// permutation `p` (free top `i` joined to free bottom `p(i)`).
fn split_theta(m: i32, d: &DiagramIndex) -> (Vec<(i32, i32)>, Vec<(i32, i32)>, Vec<usize>) {
    let strands = d.connector.strands();
    let top: Vec<(i32, i32)> = strands.iter().filter(|s| s.a > 0 && s.b > 0).map(|s| (s.a, s.b)).collect();
    let bot: Vec<(i32, i32)> = strands.iter().filter(|s| s.a < 0 && s.b < 0).map(|s| (-s.a, -s.b)).collect();
    let free = |pairs: &[(i32, i32)]| -> Vec<i32> {
        (1..=m).filter(|p| !pairs.iter().any(|&(a, b)| a == *p || b == *p)).collect()
    };
    let (ft, fb) = (free(&top), free(&bot));
    let perm = ft
        .iter()
        .map(|&a| {
            let b = -d.connector.partner(a);
            fb.iter().position(|&x| x == b).expect("through strand ends in a free bottom point")
        })
        .collect();
    (top, bot, perm)
}

fn theta_diagram(m: i32, top: &[(i32, i32)], bot: &[(i32, i32)], perm: &[usize]) -> Result<DiagramIndex> {
    let free = |pairs: &[(i32, i32)]| -> Vec<i32> {
        (1..=m).filter(|p| !pairs.iter().any(|&(a, b)| a == *p || b == *p)).collect()
    };
    let (ft, fb) = (free(top), free(bot));
    let mut strands: Vec<Strand> = top.iter().map(|&(a, b)| Strand { a, b, decorated: false }).collect();
    strands.extend(bot.iter().map(|&(a, b)| Strand {
        a: -a,
        b: -b,
        decorated: false,
    }));
    strands.extend(perm.iter().enumerate().map(|(i, &j)| Strand {
        a: ft[i],
        b: -fb[j],
        decorated: false,
    }));
    Ok(DiagramIndex {
        marker: Marker::Theta,
        connector: DecoratedConnector::from_strands(m as usize, strands)?,
        delta_exp: 0,
    })
}

/// (C3) on the layer `(t, θ)` at `δ = z`: left multiplication by each generator
/// acts on `C(x, y) = Σ_{p ∈ m_{y x}} D(x, y, p)` modulo lower cells with
/// coefficients independent of `y`.
fn check_c3(n: usize, t: usize, z: &BigRational, ctx: &Context) -> Result<Option<String>> {
    let m = n as i32 + 1;
    let k = m as usize - 2 * t;
    let mu = Murphy::new(k)?;
    let pairs = pair_sets(&(1..=m).collect::<Vec<_>>(), t);
    let pair_index: HashMap<Vec<(i32, i32)>, usize> = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let layer = BaseLabel::Theta(t);
    let size = mu.perms.len();
    for (si, shape) in mu.shapes.iter().enumerate() {
        let ntab = mu.tabs[si].len();
        let elem_of = |a: usize, b: usize| mu.elems.iter().position(|&e| e == (si, a, b)).expect("Murphy element");
        for tok in generator_tokens(n) {
            // (x_pairs, x_tab) -> coefficients r(x', x) seen for the first y
            let mut first: HashMap<(usize, usize), BTreeMap<(usize, usize), BigRational>> = HashMap::new();
            for (u2, bot) in pairs.iter().enumerate() {
                for yt in 0..ntab {
                    for (u1, top) in pairs.iter().enumerate() {
                        for xt in 0..ntab {
                            let mut acc: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();
                            for &p in &mu.terms[elem_of(yt, xt)] {
                                let d = theta_diagram(m, top, bot, &mu.perms[p])?;
                                let x = &ctx.basis[ctx.phi_inv[&d]];
                                let prod = ctx.alg.mul_left_token(tok, x)?;
                                let lbl = base_label_of(&prod);
                                if lbl != layer {
                                    if !base_leq(lbl, layer) {
                                        return Ok(Some(format!("{tok} · {} lands in {lbl}", ctx.alg.pretty(x)?)));
                                    }
                                    continue;
                                }
                                let mut d2 = ctx.alg.phi_index(&prod)?;
                                let e = d2.delta_exp;
                                d2.delta_exp = 0;
                                let (t2, b2, p2) = split_theta(m, &d2);
                                if b2 != *bot {
                                    return Ok(Some(format!("{tok} · {} changes the bottom pairs", ctx.alg.pretty(x)?)));
                                }
                                let slot = acc.entry(pair_index[&t2]).or_insert_with(|| vec![BigRational::zero(); size]);
                                slot[mu.perm_index[&p2]] += pow_signed(z, e);
                            }
                            let mut r: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
                            for (u1p, v) in acc {
                                for (j, c) in mu.coords(&v).into_iter().enumerate() {
                                    if c.is_zero() {
                                        continue;
                                    }
                                    let (sj, a, b) = mu.elems[j];
                                    if sj != si && dominates(&mu.shapes[sj], shape) {
                                        continue;
                                    }
                                    if sj != si || a != yt {
                                        return Ok(Some(format!(
                                            "{tok} · C(x, y) has a component outside the cell (shape {}, x = ({u1}, {xt}), y = ({u2}, {yt}))",
                                            fmt_partition(shape)
                                        )));
                                    }
                                    r.insert((u1p, b), c);
                                }
                            }
                            match first.get(&(u1, xt)) {
                                None => {
                                    first.insert((u1, xt), r);
                                }
                                Some(r0) if *r0 != r => {
                                    return Ok(Some(format!(
                                        "{tok}: coefficients depend on y (shape {}, x = ({u1}, {xt}), y = ({u2}, {yt}))",
                                        fmt_partition(shape)
                                    )));
                                }
                                Some(_) => {}
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::factorial;

    #[test]
    fn tableau_counts() {
        // Σ (f^λ)² = k!
        for k in 0..=6 {
            let entries: Vec<usize> = (1..=k).collect();
            let s: u128 = partitions(k)
                .iter()
                .map(|p| (standard_tableaux(p, &entries).len() as u128).pow(2))
                .sum();
            assert_eq!(s, factorial(k as u64));
        }
        assert_eq!(partitions(5).len(), 7);
        // Σ dim² = 2^k k! over bipartitions
        for k in 0..=4 {
            let s: u128 = bipartitions(k)
                .iter()
                .map(|(a, b)| (standard_bitableaux(a, b).len() as u128).pow(2))
                .sum();
            assert_eq!(s, (1u128 << k) * factorial(k as u64));
        }
    }

    #[test]
    fn rs_is_bijective() {
        for k in 0..=5 {
            assert_eq!(rs_inverse(k, false).len() as u128, factorial(k as u64));
        }
        for k in 0..=4 {
            assert_eq!(rs_inverse(k, true).len() as u128, (1u128 << k) * factorial(k as u64));
        }
        let (p, q) = rs_insert(&[(1, 3), (2, 1), (3, 2)]);
        assert_eq!(p, vec![vec![1, 2], vec![3]]);
        assert_eq!(q, vec![vec![1, 3], vec![2]]);
    }

    #[test]
    fn poset_examples() {
        use BaseLabel::*;
        assert!(base_leq(Plain(1), Plain(0)));
        assert!(!base_leq(Plain(0), Plain(1)));
        assert!(base_leq(Theta(2), Theta(1)));
        assert!(base_leq(Theta(1), Plain(1)));
        assert!(base_leq(Theta(1), Plain(0)));
        assert!(!base_leq(Theta(1), Plain(2)));
        assert!(!base_leq(Plain(2), Theta(1)));
        // transitivity over every pair of labels
        let labels = cell_labels(4);
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    if poset_leq(a, b) && poset_leq(b, c) {
                        assert!(poset_leq(a, c), "{a} {b} {c}");
                    }
                }
                if a != b && poset_leq(a, b) {
                    assert!(!poset_leq(b, a));
                }
            }
        }
    }

    #[test]
    fn dimensions_sum_to_rank() {
        for n in 1..=5 {
            assert_eq!(cell_dimension_sum(n), rank_formula(n as u64), "n = {n}");
        }
    }

    #[test]
    fn filtration_small_ranks() {
        for n in 1..=3 {
            for r in verify_filtration(n).unwrap() {
                assert!(r.passed(), "n = {n}: {r:?}");
            }
        }
    }
}
