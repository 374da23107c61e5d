//! Weingarten calculus for `U(n)`: the class function `Wg_{n,k}`, single-matrix Haar
//! moments, and integrals of products of traces of words in independent Haar unitaries.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{char_table, dim_sk, dim_un};
use crate::error::{Error, Result};
use crate::exact::{factorial, from_biguint, int, Rational};
use crate::partitions::{enumerate_partitions, YoungDiagram};

/// Largest `k` accepted by [`weingarten_table`].
pub const DEFAULT_MAX_K: usize = 6;
/// Largest per-letter degree the word engine will ever tabulate.
pub const ENGINE_MAX_K: usize = 10;
/// Default cap on `Π_ℓ (k_ℓ!)²`.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// `Wg_{n,k}` as a class function; `values[i]` belongs to `classes[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeingartenTable {
    pub n: usize,
    pub k: usize,
    pub classes: Vec<YoungDiagram>,
    pub values: Vec<Rational>,
}

impl WeingartenTable {
    pub fn value(&self, kappa: &YoungDiagram) -> Option<&Rational> {
        self.classes.iter().position(|c| c == kappa).map(|i| &self.values[i])
    }
}

fn build_table(n: usize, k: usize) -> Result<WeingartenTable> {
    let table = char_table(k)?;
    let kf = from_biguint(factorial(k));
    let mut values = vec![Rational::zero(); table.classes.len()];
    for lambda in enumerate_partitions(k).into_iter().filter(|l| l.length() <= n) {
        let d = from_biguint(dim_sk(&lambda));
        let weight = &d * &d / dim_un(&lambda, n);
        let row = &table.values[table.index(&lambda).expect("partition of k")];
        for (v, &chi) in values.iter_mut().zip(row) {
            *v += &weight * int(chi);
        }
    }
    let norm = &kf * &kf;
    for v in &mut values {
        *v /= &norm;
    }
    Ok(WeingartenTable {
        n,
        k,
        classes: table.classes.iter().map(|c| c.partition.clone()).collect(),
        values,
    })
}

fn wg_cache() -> &'static Mutex<HashMap<(usize, usize), Arc<WeingartenTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<WeingartenTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn weingarten_table(n: usize, k: usize) -> Result<Arc<WeingartenTable>> {
    weingarten_table_with_limit(n, k, DEFAULT_MAX_K)
}

pub fn weingarten_table_with_limit(n: usize, k: usize, max_k: usize) -> Result<Arc<WeingartenTable>> {
    if n == 0 {
        return Err(Error::Precondition("Weingarten function needs n >= 1".into()));
    }
    if k > max_k {
        return Err(Error::SizeLimit {
            what: "Weingarten degree",
            size: k,
            max: max_k,
        });
    }
    if let Some(t) = wg_cache().lock().unwrap().get(&(n, k)) {
        return Ok(t.clone());
    }
    let t = Arc::new(build_table(n, k)?);
    wg_cache().lock().unwrap().entry((n, k)).or_insert(t.clone());
    Ok(t)
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

pub fn cycle_type(p: &[u8]) -> YoungDiagram {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            c = p[c] as usize;
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    YoungDiagram::from_parts(parts)
}

pub fn inverse(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v as usize] = i as u8;
    }
    inv
}

/// `∫ Π_t u_{i_t j_t} Π_t conj(u_{i'_t j'_t}) du` over Haar `U(n)`; indices are 1-based.
pub fn haar_moment(n: usize, unconj: &[(usize, usize)], conj: &[(usize, usize)]) -> Result<Rational> {
    if unconj.len() != conj.len() {
        return Ok(Rational::zero());
    }
    let k = unconj.len();
    let wg = weingarten_table_with_limit(n, k, ENGINE_MAX_K)?;
    let perms = permutations(k);
    let mut total = Rational::zero();
    for sigma in &perms {
        if !(0..k).all(|t| unconj[t].0 == conj[sigma[t] as usize].0) {
            continue;
        }
        for tau in &perms {
            if !(0..k).all(|t| unconj[t].1 == conj[tau[t] as usize].1) {
                continue;
            }
            let tinv = inverse(tau);
            let rho: Vec<u8> = (0..k).map(|t| sigma[tinv[t] as usize]).collect();
            total += wg.value(&cycle_type(&rho)).expect("class of S_k");
        }
    }
    Ok(total)
}

/// One letter occurrence inside a trace: generator index and exponent ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub letter: usize,
    pub exp: i8,
}

/// Generator `i` (0-based) prints as the `i`-th lowercase letter.
pub fn letter_name(i: usize) -> char {
    (b'a' + i as u8) as char
}

/// A product of traces of words in `2g` independent Haar unitaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramWire", into = "DiagramWire")]
pub struct ContractionDiagram {
    pub g: usize,
    pub cycles: Vec<Vec<Occurrence>>,
}

#[derive(Serialize, Deserialize)]
struct DiagramWire {
    g: usize,
    cycles: Vec<Vec<(String, i8)>>,
}

impl TryFrom<DiagramWire> for ContractionDiagram {
    type Error = Error;
    fn try_from(w: DiagramWire) -> Result<Self> {
        let mut cycles = Vec::with_capacity(w.cycles.len());
        for c in w.cycles {
            let mut cyc = Vec::with_capacity(c.len());
            for (name, exp) in c {
                let mut chars = name.chars();
                let (Some(ch), None) = (chars.next(), chars.next()) else {
                    return Err(Error::Precondition(format!("letter '{name}' is not a single character")));
                };
                if !ch.is_ascii_lowercase() {
                    return Err(Error::Precondition(format!("letter '{name}' is not lowercase a-z")));
                }
                cyc.push(Occurrence {
                    letter: (ch as u8 - b'a') as usize,
                    exp,
                });
            }
            cycles.push(cyc);
        }
        ContractionDiagram::new(w.g, cycles)
    }
}

impl From<ContractionDiagram> for DiagramWire {
    fn from(d: ContractionDiagram) -> Self {
        DiagramWire {
            g: d.g,
            cycles: d
                .cycles
                .iter()
                .map(|c| c.iter().map(|o| (letter_name(o.letter).to_string(), o.exp)).collect())
                .collect(),
        }
    }
}

impl ContractionDiagram {
    pub fn new(g: usize, cycles: Vec<Vec<Occurrence>>) -> Result<Self> {
        for c in &cycles {
            if c.is_empty() {
                return Err(Error::Precondition("trace-cycles must be non-empty".into()));
            }
            for o in c {
                if o.letter >= 2 * g {
                    return Err(Error::Precondition(format!(
                        "letter '{}' is outside the {} generators of genus {g}",
                        letter_name(o.letter),
                        2 * g
                    )));
                }
                if o.exp != 1 && o.exp != -1 {
                    return Err(Error::Precondition(format!("exponent {} is not ±1", o.exp)));
                }
            }
        }
        Ok(ContractionDiagram { g, cycles })
    }

    pub fn empty(g: usize) -> Self {
        ContractionDiagram { g, cycles: Vec::new() }
    }

    /// `(k⁺, k⁻)` per generator.
    pub fn letter_counts(&self) -> Vec<(usize, usize)> {
        let mut counts = vec![(0, 0); 2 * self.g];
        for o in self.cycles.iter().flatten() {
            if o.exp > 0 {
                counts[o.letter].0 += 1;
            } else {
                counts[o.letter].1 += 1;
            }
        }
        counts
    }

    pub fn is_balanced(&self) -> bool {
        self.letter_counts().iter().all(|(p, m)| p == m)
    }

    /// Each cycle rotated to its least rotation, cycles sorted.
    pub fn normalized(&self) -> ContractionDiagram {
        let mut cycles: Vec<Vec<Occurrence>> = self
            .cycles
            .iter()
            .map(|c| {
                (0..c.len())
                    .map(|r| {
                        let mut v = c.clone();
                        v.rotate_left(r);
                        v
                    })
                    .min()
                    .unwrap()
            })
            .collect();
        cycles.sort();
        ContractionDiagram { g: self.g, cycles }
    }

    /// `Π_ℓ (k_ℓ!)²`, saturating.
    pub fn term_count(&self) -> u128 {
        self.letter_counts()
            .iter()
            .map(|&(k, _)| (1..=k as u128).product::<u128>())
            .fold(1u128, |acc, f| acc.saturating_mul(f.saturating_mul(f)))
    }
}

impl fmt::Display for ContractionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "tr(")?;
            for o in c {
                let ch = letter_name(o.letter);
                if o.exp > 0 {
                    write!(f, "{ch}")?;
                } else {
                    write!(f, "{}", ch.to_ascii_uppercase())?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// n-independent summary of a diagram: how many `(σ_ℓ, τ_ℓ)` choices give each tuple
/// of per-letter classes and each number of index loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    /// Per-letter degree, in engine order.
    pub degrees: Vec<usize>,
    /// `(packed key, count)` sorted by key.
    pub entries: Vec<(u128, u64)>,
    /// Class lists per letter, in character-table order.
    classes: Vec<Vec<YoungDiagram>>,
}

const CLASS_BITS: u32 = 6;
const LOOP_SHIFT: u32 = 96;
const MAX_LETTERS: usize = 16;

impl Histogram {
    pub fn decode(&self, key: u128) -> (Vec<&YoungDiagram>, usize) {
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(l, list)| &list[((key >> (CLASS_BITS * l as u32)) & 0x3f) as usize])
            .collect();
        (classes, (key >> LOOP_SHIFT) as usize)
    }

    pub fn evaluate(&self, n: usize) -> Result<Rational> {
        let tables: Vec<Arc<WeingartenTable>> = self
            .degrees
            .iter()
            .map(|&k| weingarten_table_with_limit(n, k, ENGINE_MAX_K))
            .collect::<Result<_>>()?;
        let mut by_loops: HashMap<usize, Rational> = HashMap::new();
        for &(key, count) in &self.entries {
            let mut term = int(count as i64);
            for (l, t) in tables.iter().enumerate() {
                term *= &t.values[((key >> (CLASS_BITS * l as u32)) & 0x3f) as usize];
            }
            *by_loops.entry((key >> LOOP_SHIFT) as usize).or_insert_with(Rational::zero) += term;
        }
        let nn = BigInt::from(n);
        Ok(by_loops
            .into_iter()
            .map(|(loops, v)| v * Rational::from_integer(nn.pow(loops as u32)))
            .sum())
    }
}

struct LetterPlan {
    k: usize,
    /// `(row node, col node)` of each unconjugated factor.
    unconj: Vec<(u16, u16)>,
    conj: Vec<(u16, u16)>,
    perms: Vec<Vec<u8>>,
    inverses: Vec<Vec<u8>>,
    /// Class index of each permutation, in character-table order.
    class_of: Vec<u8>,
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<u16>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u16).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: u16) -> u16 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u16, b: u16) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
            self.components -= 1;
        }
    }
}

fn descend(plans: &[LetterPlan], level: usize, uf: &UnionFind, key: u128, out: &mut HashMap<u128, u64>) {
    if level == plans.len() {
        *out.entry(key | ((uf.components as u128) << LOOP_SHIFT)).or_default() += 1;
        return;
    }
    let plan = &plans[level];
    for sigma in &plan.perms {
        let mut rows = uf.clone();
        for t in 0..plan.k {
            rows.union(plan.unconj[t].0, plan.conj[sigma[t] as usize].0);
        }
        apply_columns(plans, level, &rows, sigma, key, out);
    }
}

/// Inner loop over `ρ = στ⁻¹`, i.e. `τ = ρ⁻¹σ`.
fn apply_columns(
    plans: &[LetterPlan],
    level: usize,
    rows: &UnionFind,
    sigma: &[u8],
    key: u128,
    out: &mut HashMap<u128, u64>,
) {
    let plan = &plans[level];
    for (r, rinv) in plan.inverses.iter().enumerate() {
        let mut cols = rows.clone();
        for t in 0..plan.k {
            let tau_t = rinv[sigma[t] as usize];
            cols.union(plan.unconj[t].1, plan.conj[tau_t as usize].1);
        }
        let k2 = key | ((plan.class_of[r] as u128) << (CLASS_BITS * level as u32));
        descend(plans, level + 1, &cols, k2, out);
    }
}

fn histogram_cache() -> &'static Mutex<HashMap<ContractionDiagram, Arc<Histogram>>> {
    static CACHE: OnceLock<Mutex<HashMap<ContractionDiagram, Arc<Histogram>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Integrates products of traces of words in independent Haar unitaries.
#[derive(Debug, Clone, Copy)]
pub struct WordMomentEngine {
    pub budget: u128,
}

impl Default for WordMomentEngine {
    fn default() -> Self {
        WordMomentEngine {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl WordMomentEngine {
    pub fn with_budget(budget: u128) -> Self {
        WordMomentEngine { budget }
    }

    /// `None` means some letter is unbalanced and the integral vanishes.
    pub fn histogram(&self, diagram: &ContractionDiagram) -> Result<Option<Arc<Histogram>>> {
        if !diagram.is_balanced() {
            return Ok(None);
        }
        let terms = diagram.term_count();
        if terms > self.budget {
            return Err(Error::BudgetExceeded {
                degrees: diagram
                    .letter_counts()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.0 > 0)
                    .map(|(l, c)| (letter_name(l).to_string(), c.0))
                    .collect(),
                terms,
                budget: self.budget,
            });
        }
        let norm = diagram.normalized();
        if let Some(h) = histogram_cache().lock().unwrap().get(&norm) {
            return Ok(Some(h.clone()));
        }
        let h = Arc::new(build_histogram(&norm)?);
        histogram_cache().lock().unwrap().insert(norm, h.clone());
        Ok(Some(h))
    }

    pub fn integrate(&self, diagram: &ContractionDiagram, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::Precondition("integration needs n >= 1".into()));
        }
        match self.histogram(diagram)? {
            None => Ok(Rational::zero()),
            Some(h) => h.evaluate(n),
        }
    }
}

fn build_histogram(diagram: &ContractionDiagram) -> Result<Histogram> {
    // One index node per position; occurrence t of a cycle reads nodes (t, t+1).
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for c in &diagram.cycles {
        offsets.push(total);
        total += c.len();
    }
    let mut by_letter: HashMap<usize, (Vec<(u16, u16)>, Vec<(u16, u16)>)> = HashMap::new();
    for (c, off) in diagram.cycles.iter().zip(&offsets) {
        let m = c.len();
        for (t, o) in c.iter().enumerate() {
            let here = (off + t) as u16;
            let next = (off + (t + 1) % m) as u16;
            let entry = by_letter.entry(o.letter).or_default();
            if o.exp > 0 {
                entry.0.push((here, next));
            } else {
                // conj(u[next, here]) since u⁻¹ = u*.
                entry.1.push((next, here));
            }
        }
    }
    let mut letters: Vec<usize> = by_letter.keys().copied().collect();
    letters.sort_by_key(|l| (std::cmp::Reverse(by_letter[l].0.len()), *l));
    if letters.len() > MAX_LETTERS {
        return Err(Error::SizeLimit {
            what: "distinct letters in a diagram",
            size: letters.len(),
            max: MAX_LETTERS,
        });
    }
    let mut plans = Vec::new();
    for l in &letters {
        let (unconj, conj) = by_letter.remove(l).unwrap();
        let k = unconj.len();
        if k > ENGINE_MAX_K {
            return Err(Error::SizeLimit {
                what: "per-letter degree",
                size: k,
                max: ENGINE_MAX_K,
            });
        }
        let table = char_table(k)?;
        let perms = permutations(k);
        let inverses: Vec<Vec<u8>> = perms.iter().map(|p| inverse(p)).collect();
        let class_of = perms
            .iter()
            .map(|p| table.index(&cycle_type(p)).expect("class of S_k") as u8)
            .collect();
        plans.push(LetterPlan {
            k,
            unconj,
            conj,
            perms,
            inverses,
            class_of,
        });
    }
    let uf = UnionFind::new(total);
    let mut entries: HashMap<u128, u64> = HashMap::new();
    if let Some(outer) = plans.first() {
        let partials: Vec<HashMap<u128, u64>> = outer
            .perms
            .par_iter()
            .map(|sigma| {
                let mut local = HashMap::new();
                let mut rows = uf.clone();
                for t in 0..outer.k {
                    rows.union(outer.unconj[t].0, outer.conj[sigma[t] as usize].0);
                }
                apply_columns(&plans, 0, &rows, sigma, 0, &mut local);
                local
            })
            .collect();
        for part in partials {
            for (key, c) in part {
                *entries.entry(key).or_default() += c;
            }
        }
    } else {
        entries.insert((total as u128) << LOOP_SHIFT, 1);
    }
    let mut entries: Vec<(u128, u64)> = entries.into_iter().collect();
    entries.sort_unstable();
    let classes = plans
        .iter()
        .map(|p| {
            char_table(p.k)
                .map(|t| t.classes.iter().map(|c| c.partition.clone()).collect())
        })
        .collect::<Result<_>>()?;
    Ok(Histogram {
        degrees: plans.iter().map(|p| p.k).collect(),
        entries,
        classes,
    })
}

/// `∫ Π_cycles tr(word) dx` with the default engine budget.
pub fn word_power_integral(diagram: &ContractionDiagram, n: usize) -> Result<Rational> {
    WordMomentEngine::default().integrate(diagram, n)
}

/// Identity permutation helper for callers building their own sums.
pub fn is_identity(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v as usize)
}
