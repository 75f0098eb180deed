//! Verification suites: relations, identities, counts, action, cellular.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::{act_generator, all_admissible_b, orbit_size, orbit_size_formula, AdmissibleSet, OrbitRep};
use crate::cellular::{verify_filtration, Status};
use crate::combinat::{binom, double_fact, factorial, pow2, rank_formula};
use crate::connector::{
    brauer_layer, class_formula, count_class, is_symmetric_basis_index, stratified_counts, stratum_formula, ConnectorClass,
};
use crate::error::{Error, Result};
use crate::normalform::{class_range, relation_suite, BrauerAlgebra, NormalForm};
use crate::presentation::{defining_relations, Token, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Identities,
    Counts,
    Action,
    Cellular,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Relations, Suite::Identities, Suite::Counts, Suite::Action, Suite::Cellular];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Identities => "identities",
            Suite::Counts => "counts",
            Suite::Action => "action",
            Suite::Cellular => "cellular",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, failure: Option<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            status: if failure.is_none() { Status::Pass } else { Status::Fail },
            detail: failure,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub n: usize,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Seed of the random multiplier words; fixed so that reports are reproducible.
pub const SEED: u64 = 0x005e_edb0;
pub const RANDOM_WORDS: usize = 100;

/// `count` words in the generators, of length `0..=3n`, from a seeded stream.
pub fn random_words(n: usize, count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=3 * n);
            Word((0..len).map(|_| Token::from_gen_index(rng.gen_range(0..2 * n), n)).collect())
        })
        .collect()
}

pub fn run(suite: Suite, n: usize) -> Result<Report> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Relations => relations(n)?,
            Suite::Identities => identities(n)?,
            Suite::Counts => counts(n)?,
            Suite::Action => action(n)?,
            Suite::Cellular => cellular(n)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(Report {
        n,
        suite,
        passed: checks.iter().all(Check::passed),
        checks,
    })
}

/// Every identity of the relation suite, alone and followed by the random words.
pub fn relations(n: usize) -> Result<Vec<Check>> {
    let alg = BrauerAlgebra::get(n)?;
    let mut words = vec![Word::new()];
    words.extend(random_words(n, RANDOM_WORDS, SEED));
    relation_suite(n)
        .par_iter()
        .map(|id| {
            for m in &words {
                if !alg.check_identity(id, m)? {
                    return Ok(Check::new(Suite::Relations, &id.name, Some(format!("fails against multiplier {m}"))));
                }
            }
            Ok(Check::new(Suite::Relations, &id.name, None))
        })
        .collect()
}

/// Consistency of the multiplication: fold orders, associativity, opposition
/// and the defining words of normal forms.
pub fn identities(n: usize) -> Result<Vec<Check>> {
    let alg = BrauerAlgebra::get(n)?;
    let words = random_words(n, 3 * RANDOM_WORDS, SEED ^ 1);
    let elems: Vec<NormalForm> = words.iter().map(|w| alg.normalize_word(w)).collect::<Result<_>>()?;
    let mut out = Vec::new();

    let bad = words
        .iter()
        .zip(&elems)
        .find(|(w, x)| alg.normalize_word_right_fold(w).ok().as_ref() != Some(*x))
        .map(|(w, _)| format!("word {w}"));
    out.push(Check::new(Suite::Identities, "left and right folds agree", bad));

    let triples: Vec<&[NormalForm]> = elems.chunks(3).filter(|c| c.len() == 3).collect();
    let bad = triples
        .par_iter()
        .map(|c| -> Result<Option<String>> {
            let l = alg.mul_nf(&alg.mul_nf(&c[0], &c[1])?, &c[2])?;
            let r = alg.mul_nf(&c[0], &alg.mul_nf(&c[1], &c[2])?)?;
            if l == r {
                return Ok(None);
            }
            Ok(Some(format!("{} · {} · {}", alg.pretty(&c[0])?, alg.pretty(&c[1])?, alg.pretty(&c[2])?)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    out.push(Check::new(Suite::Identities, "associativity", bad));

    let mut bad = None;
    for c in elems.chunks(2).filter(|c| c.len() == 2) {
        let (x, y) = (&c[0], &c[1]);
        let lhs = alg.opposite_nf(&alg.mul_nf(x, y)?)?;
        let rhs = alg.mul_nf(&alg.opposite_nf(y)?, &alg.opposite_nf(x)?)?;
        if lhs != rhs || alg.opposite_nf(&alg.opposite_nf(x)?)? != *x {
            bad = Some(format!("x = {}, y = {}", alg.pretty(x)?, alg.pretty(y)?));
            break;
        }
    }
    out.push(Check::new(Suite::Identities, "op(xy) = op(y)op(x), op² = 1", bad));

    let basis = alg.enumerate_basis();
    let bad = basis
        .par_iter()
        .map(|x| -> Result<Option<String>> {
            let w = alg.word_of(x)?;
            Ok((alg.normalize_word(&w)? != *x).then(|| format!("{w}")))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    out.push(Check::new(Suite::Identities, "u·f·v·w renormalizes to itself", bad));
    Ok(out)
}

/// `(|D_L|, |C|)` in closed form; `|D_R|` is `|D_L|` of the opposite class.
pub fn coset_table(i: u8, t: usize, n: usize) -> (u128, u128) {
    let (n, t) = (n as u64, t as u64);
    let df = |k: u64| double_fact(k);
    match i {
        1 if t == 0 => (1, pow2(n) * factorial(n)),
        1 => (pow2(t) * binom(n, 2 * t) * df(t), pow2(n + 1 - 2 * t) * factorial(n - 2 * t)),
        2 => (binom(n, 2 * t) * df(t), factorial(n - 2 * t)),
        3 => (n as u128 * binom(n - 1, 2 * t - 2) * df(t - 1), factorial(n + 1 - 2 * t)),
        4 => (n as u128 * binom(n - 1, 2 * t) * df(t), factorial(n - 1 - 2 * t)),
        5 => (n as u128 * (n as u128 - 1) * binom(n - 2, 2 * t - 2) * df(t - 1), factorial(n - 2 * t)),
        _ => (binom(n, 2 * t) * df(t), factorial(n - 2 * t)),
    }
}

fn opposite_class(i: u8) -> u8 {
    match i {
        5 => 6,
        6 => 5,
        _ => i,
    }
}

/// Classes of the basis under `x ↦ a·x·b`, `a, b ∈ W(B_n)`, by union-find on
/// the basis nodes; returns the sorted list of `(class, t, orbit size)`.
pub fn double_coset_orbits(alg: &BrauerAlgebra) -> Result<Vec<(u8, usize, usize)>> {
    let n = alg.rank();
    let table = alg.table();
    let basis = alg.enumerate_basis();
    let index: HashMap<u32, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, x)| Ok((alg.node_of(x)?.elem, k)))
        .collect::<Result<_>>()?;
    let mut parent: Vec<usize> = (0..basis.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (k, x) in basis.iter().enumerate() {
        let s = alg.node_of(x)?.elem;
        for g in 0..n {
            for y in [table.left_mul(g, s).elem, table.right_mul(s, g).elem] {
                let j = *index
                    .get(&y)
                    .ok_or_else(|| Error::Inconsistent("a product of basis nodes left the basis".into()))?;
                let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut orbits: BTreeMap<usize, (HashSet<(u8, usize)>, usize)> = BTreeMap::new();
    for (k, x) in basis.iter().enumerate() {
        let e = orbits.entry(find(&mut parent, k)).or_default();
        e.0.insert((x.class_i, x.t));
        e.1 += 1;
    }
    let mut out = Vec::new();
    for (classes, size) in orbits.into_values() {
        if classes.len() != 1 {
            return Err(Error::Inconsistent(format!("an orbit meets several classes: {classes:?}")));
        }
        let (i, t) = *classes.iter().next().expect("one class");
        out.push((i, t, size));
    }
    out.sort();
    Ok(out)
}

pub fn counts(n: usize) -> Result<Vec<Check>> {
    let alg = BrauerAlgebra::get(n)?;
    let f = rank_formula(n as u64);
    let basis = alg.enumerate_basis();
    let mut out = Vec::new();
    let mismatch = |what: &str, got: u128, want: u128| (got != want).then(|| format!("{what}: {got} ≠ {want}"));

    out.push(Check::new(Suite::Counts, format!("rank = {f}"), mismatch("basis", basis.len() as u128, f)));

    let mut bad = None;
    let mut sum = 0u128;
    for cd in alg.classes() {
        let (dl, c) = coset_table(cd.class_i, cd.t, n);
        let (dr, _) = coset_table(opposite_class(cd.class_i), cd.t, n);
        let got = (cd.d_left.len() as u128, cd.c.len() as u128, cd.d_right.len() as u128);
        sum += got.0 * got.1 * got.2;
        if got != (dl, c, dr) && bad.is_none() {
            bad = Some(format!("({},{}): {got:?} ≠ {:?}", cd.class_i, cd.t, (dl, c, dr)));
        }
    }
    out.push(Check::new(Suite::Counts, "coset and centralizer sizes", bad));
    out.push(Check::new(Suite::Counts, "Σ |D_L||C||D_R| = rank", mismatch("sum", sum, f)));

    let mut bad = None;
    for (i, t, size) in double_coset_orbits(&alg)? {
        let cd = alg.class(i, t)?;
        let want = cd.d_left.len() * cd.c.len() * cd.d_right.len();
        if size != want {
            bad = Some(format!("({i},{t}): orbit {size} ≠ {want}"));
        }
    }
    out.push(Check::new(Suite::Counts, "W×W orbits are the classes", bad));

    let classes = [ConnectorClass::TBar, ConnectorClass::TBarEq, ConnectorClass::TeqT0];
    let mut total = 0;
    let mut bad = None;
    for c in classes {
        let got = count_class(n, c);
        total += got;
        bad = bad.or(mismatch(&format!("{c:?}"), got, class_formula(n, c)));
    }
    out.push(Check::new(Suite::Counts, "symmetric diagram counts", bad.or(mismatch("total", total, f))));

    let strata = stratified_counts(n);
    let mut bad = None;
    for (i, row) in strata.iter().enumerate().skip(2) {
        for (t, &got) in row.iter().enumerate().filter(|(t, _)| class_range(i as u8, n).contains(t)) {
            bad = bad.or(mismatch(&format!("M^({i})_{t}"), got, stratum_formula(n, i as u8, t)));
        }
    }
    let layers: u128 = (0..=(n as u64).div_ceil(2)).map(|t| brauer_layer(n as u64 + 1, t)).sum();
    bad = bad.or(mismatch("Σ_t layers", layers, double_fact(n as u64 + 1)));
    out.push(Check::new(Suite::Counts, "stratified counts", bad));

    let mut bad = None;
    for kind in [OrbitRep::Z, OrbitRep::ZTilde, OrbitRep::ZBar] {
        for t in kind.t_range(n) {
            let got = orbit_size(kind, t, n)? as u128;
            bad = bad.or(mismatch(&format!("{kind:?}_{t}"), got, orbit_size_formula(kind, t, n)));
        }
    }
    out.push(Check::new(Suite::Counts, "admissible orbit sizes", bad));

    let mut seen = HashSet::new();
    let mut bad = None;
    for x in &basis {
        let d = alg.phi_index(x)?;
        if !is_symmetric_basis_index(&d) || !seen.insert(d) {
            bad = Some(alg.pretty(x)?);
            break;
        }
    }
    out.push(Check::new(Suite::Counts, "diagram map is a bijection", bad.or(mismatch("images", seen.len() as u128, total))));
    Ok(out)
}

/// Defining relations act identically on admissible sets, and tops of
/// products follow the action.
pub fn action(n: usize) -> Result<Vec<Check>> {
    let alg = BrauerAlgebra::get(n)?;
    let all = all_admissible_b(n);
    let fold = |w: &Word, b: &AdmissibleSet| w.tokens().iter().rev().fold(b.clone(), |acc, t| act_generator(*t, &acc, n));
    let mut out: Vec<Check> = defining_relations(n)
        .par_iter()
        .map(|rel| {
            let (l, r) = (rel.lhs_word(n), rel.rhs_word(n));
            let bad = all.iter().map(|b| AdmissibleSet::b(b.clone())).find(|b| fold(&l, b) != fold(&r, b));
            Check::new(Suite::Action, format!("acts: {}", rel.name), bad.map(|b| format!("{:?}", b.roots)))
        })
        .collect();
    let basis = alg.enumerate_basis();
    let bad = basis
        .par_iter()
        .map(|x| -> Result<Option<String>> {
            let tx = AdmissibleSet::b(alg.top(x)?);
            for g in 0..2 * n {
                let tok = Token::from_gen_index(g, n);
                let y = alg.mul_left_token(tok, x)?;
                if alg.top(&y)? != act_generator(tok, &tx, n).roots {
                    return Ok(Some(format!("{tok} · {}", alg.pretty(x)?)));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    out.push(Check::new(Suite::Action, "top(g·x) = g·top(x)", bad));
    Ok(out)
}

pub fn cellular(n: usize) -> Result<Vec<Check>> {
    Ok(verify_filtration(n)?
        .into_iter()
        .map(|r| Check {
            suite: Suite::Cellular,
            name: format!("{} {}", r.check, r.label),
            status: r.status,
            detail: r.witness,
        })
        .collect())
}
