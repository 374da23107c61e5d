//! Symmetric-group characters, dimension formulas, Littlewood–Richardson coefficients and
//! the expansion of rational `U(n)` characters into products of Schur functions.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, from_bigint, int, Rational};
use crate::partitions::{enumerate_partitions, signature, YoungDiagram};
use crate::poly::Poly;

/// Largest `k` for which character tables are built by default.
pub const DEFAULT_MAX_K: usize = 10;

/// A conjugacy class of `S_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleType {
    pub partition: YoungDiagram,
    #[serde(serialize_with = "ser_display")]
    pub class_size: BigUint,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Centralizer order `z_κ = Π i^{m_i} m_i!`.
pub fn centralizer_order(kappa: &YoungDiagram) -> BigUint {
    kappa
        .multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigUint::one(), |acc, (i, &m)| {
            acc * BigUint::from(i).pow(m as u32) * factorial(m)
        })
}

impl CycleType {
    pub fn new(partition: YoungDiagram) -> Self {
        let class_size = factorial(partition.size()) / centralizer_order(&partition);
        CycleType {
            partition,
            class_size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub k: usize,
    /// Irreducibles, in canonical partition order.
    pub shapes: Vec<YoungDiagram>,
    /// Classes, in the same order as `shapes`.
    pub classes: Vec<CycleType>,
    /// `values[λ][κ]`.
    pub values: Vec<Vec<i64>>,
    shape_index: HashMap<YoungDiagram, usize>,
}

type MnMemo = HashMap<(Vec<usize>, Vec<usize>), i64>;

/// Murnaghan–Nakayama on beta-sets: strip a rim hook of length `cycles[0]` and recurse.
fn murnaghan_nakayama(rows: &[usize], cycles: &[usize], memo: &mut MnMemo) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return if rows.is_empty() { 1 } else { 0 };
    };
    let key = (rows.to_vec(), cycles.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = rows.len();
    let beta: Vec<usize> = rows.iter().enumerate().map(|(i, &x)| x + len - 1 - i).collect();
    let mut total = 0i64;
    for i in 0..len {
        if beta[i] < r {
            continue;
        }
        let target = beta[i] - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &b)| b - (len - 1 - j))
            .filter(|&x| x > 0)
            .collect();
        let v = murnaghan_nakayama(&shape, rest, memo);
        total += if between % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

impl CharacterTable {
    fn build(k: usize) -> Self {
        let shapes = enumerate_partitions(k);
        let classes: Vec<CycleType> = shapes.iter().cloned().map(CycleType::new).collect();
        let mut memo = MnMemo::new();
        let values = shapes
            .iter()
            .map(|lambda| {
                classes
                    .iter()
                    .map(|c| murnaghan_nakayama(lambda.rows(), c.partition.rows(), &mut memo))
                    .collect()
            })
            .collect();
        let shape_index = shapes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        CharacterTable {
            k,
            shapes,
            classes,
            values,
            shape_index,
        }
    }

    /// Index of a partition of `k`, usable both for irreducibles and for classes.
    pub fn index(&self, shape: &YoungDiagram) -> Option<usize> {
        self.shape_index.get(shape).copied()
    }

    pub fn value(&self, lambda: &YoungDiagram, kappa: &YoungDiagram) -> i64 {
        let (Some(i), Some(j)) = (self.index(lambda), self.index(kappa)) else {
            return 0;
        };
        self.values[i][j]
    }

    /// Rows are irreducibles, columns are cycle types.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["lambda".to_string()];
        header.extend(self.classes.iter().map(|c| c.partition.to_string()));
        w.write_record(&header).expect("in-memory write");
        for (lambda, row) in self.shapes.iter().zip(&self.values) {
            let mut rec = vec![lambda.to_string()];
            rec.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

fn table_cache() -> &'static Mutex<HashMap<usize, Arc<CharacterTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn char_table(k: usize) -> Result<Arc<CharacterTable>> {
    char_table_with_limit(k, DEFAULT_MAX_K)
}

pub fn char_table_with_limit(k: usize, max_k: usize) -> Result<Arc<CharacterTable>> {
    if k > max_k {
        return Err(Error::SizeLimit {
            what: "character table",
            size: k,
            max: max_k,
        });
    }
    if let Some(t) = table_cache().lock().unwrap().get(&k) {
        return Ok(t.clone());
    }
    let table = Arc::new(CharacterTable::build(k));
    table_cache().lock().unwrap().entry(k).or_insert(table.clone());
    Ok(table)
}

/// `d_λ` by the hook-length formula.
pub fn dim_sk(lambda: &YoungDiagram) -> BigUint {
    let hooks = lambda
        .boxes()
        .fold(BigUint::one(), |acc, (i, j)| acc * BigUint::from(lambda.hook(i, j)));
    factorial(lambda.size()) / hooks
}

/// `D_λ(n)` by the hook-content formula; zero once `ℓ(λ) > n`.
pub fn dim_un(lambda: &YoungDiagram, n: usize) -> Rational {
    if lambda.length() > n {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, j) in lambda.boxes() {
        num *= n as i64 + YoungDiagram::content(i, j);
        den *= lambda.hook(i, j) as i64;
    }
    Rational::new(num, den)
}

/// `D_λ(t)` as a polynomial in `t`.
pub fn dim_un_poly(lambda: &YoungDiagram) -> Poly {
    let mut p = Poly::one();
    let mut den = BigInt::one();
    for (i, j) in lambda.boxes() {
        p = &p * &Poly::linear(YoungDiagram::content(i, j));
        den *= lambda.hook(i, j) as i64;
    }
    p.scale(&Rational::new(BigInt::one(), den))
}

/// `LR^λ_{μν}` as the multiplicity of `V^μ ⊗ V^ν` in the restriction of `V^λ` to `S_a × S_b`.
pub fn lr_coeff(mu: &YoungDiagram, nu: &YoungDiagram, lambda: &YoungDiagram) -> Result<u64> {
    let (a, b) = (mu.size(), nu.size());
    if a + b != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return Ok(0);
    }
    let (ta, tb, tl) = (char_table(a)?, char_table(b)?, char_table(a + b)?);
    let mut total = Rational::zero();
    for ca in &ta.classes {
        let xa = ta.value(mu, &ca.partition);
        if xa == 0 {
            continue;
        }
        for cb in &tb.classes {
            let xb = tb.value(nu, &cb.partition);
            if xb == 0 {
                continue;
            }
            let mut parts = ca.partition.rows().to_vec();
            parts.extend_from_slice(cb.partition.rows());
            let joined = YoungDiagram::from_parts(parts);
            let xl = tl.value(lambda, &joined);
            let z = centralizer_order(&ca.partition) * centralizer_order(&cb.partition);
            total += Rational::new(BigInt::from(xa * xb * xl), BigInt::from(z));
        }
    }
    debug_assert!(total.is_integer());
    Ok(total.to_integer().to_u64().expect("non-negative multiplicity"))
}

/// `s_λ = Σ_κ (χ_λ(κ)/z_κ) p_κ`; zero coefficients are omitted.
pub fn schur_expand_power_sums(lambda: &YoungDiagram) -> Result<Vec<(YoungDiagram, Rational)>> {
    let table = char_table(lambda.size())?;
    Ok(table
        .classes
        .iter()
        .filter_map(|c| {
            let chi = table.value(lambda, &c.partition);
            (chi != 0).then(|| {
                (
                    c.partition.clone(),
                    Rational::new(BigInt::from(chi), BigInt::from(centralizer_order(&c.partition))),
                )
            })
        })
        .collect())
}

/// Dimension of the rational family `[μ,ν]` in rank `n`, by the Weyl product on its signature.
pub fn dim_rational(mu: &YoungDiagram, nu: &YoungDiagram, n: usize) -> Result<BigInt> {
    let f = signature(mu, nu, n)?;
    Ok(weyl_dimension(&f))
}

/// Weyl dimension `Π_{i<j} (f_i − f_j + j − i)/(j − i)` of a non-increasing signature.
pub fn weyl_dimension(f: &[i64]) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            // Pairs inside a constant block contribute exactly 1.
            if f[i] == f[j] {
                continue;
            }
            num *= f[i] - f[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// `D_{[μ,ν]}(t)`, interpolated through Weyl values at `|μ|+|ν|+1` ranks.
pub fn dim_rational_poly(mu: &YoungDiagram, nu: &YoungDiagram) -> Poly {
    let start = mu.length() + nu.length();
    let deg = mu.size() + nu.size();
    let points: Vec<(Rational, Rational)> = (start..=start + deg)
        .map(|n| {
            let d = dim_rational(mu, nu, n).expect("rank at least ℓ(μ)+ℓ(ν)");
            (int(n as i64), from_bigint(d))
        })
        .collect();
    Poly::interpolate(&points)
}

/// Sign convention applied to the inner terms of the Koike expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KoikeSign {
    /// `(−1)^{|ν₁|}` on each term.
    Alternating,
    /// No sign.
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoikeTerm {
    pub nu2: YoungDiagram,
    pub nu3: YoungDiagram,
    pub coeff: i64,
}

/// `s_{[μ,ν]}(g) = Σ coeff · s_{ν₂}(g) · s_{ν₃}(g⁻¹)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoikeExpansion {
    pub mu: YoungDiagram,
    pub nu: YoungDiagram,
    pub convention: KoikeSign,
    pub terms: Vec<KoikeTerm>,
}

/// Ranks at which the dimension gate compares against the Weyl product.
pub const KOIKE_GATE_POINTS: usize = 5;

fn koike_terms(mu: &YoungDiagram, nu: &YoungDiagram, sign: KoikeSign) -> Result<Vec<KoikeTerm>> {
    let mut acc: BTreeMap<(YoungDiagram, YoungDiagram), i64> = BTreeMap::new();
    for nu1 in mu.subdiagrams() {
        let nu1t = nu1.transpose();
        if !nu.contains(&nu1t) {
            continue;
        }
        let s = match sign {
            KoikeSign::Alternating if nu1.size() % 2 == 1 => -1,
            _ => 1,
        };
        let lefts: Vec<(YoungDiagram, u64)> = enumerate_partitions(mu.size() - nu1.size())
            .into_iter()
            .map(|nu2| lr_coeff(&nu1, &nu2, mu).map(|c| (nu2, c)))
            .collect::<Result<_>>()?;
        let rights: Vec<(YoungDiagram, u64)> = enumerate_partitions(nu.size() - nu1t.size())
            .into_iter()
            .map(|nu3| lr_coeff(&nu1t, &nu3, nu).map(|c| (nu3, c)))
            .collect::<Result<_>>()?;
        for (nu2, c2) in lefts.iter().filter(|(_, c)| *c > 0) {
            for (nu3, c3) in rights.iter().filter(|(_, c)| *c > 0) {
                *acc.entry((nu2.clone(), nu3.clone())).or_default() += s * (c2 * c3) as i64;
            }
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((nu2, nu3), coeff)| KoikeTerm { nu2, nu3, coeff })
        .collect())
}

/// Dimension obtained by specializing the expansion at the identity of `U(n)`.
pub fn koike_dimension(terms: &[KoikeTerm], n: usize) -> Rational {
    terms
        .iter()
        .map(|t| int(t.coeff) * dim_un(&t.nu2, n) * dim_un(&t.nu3, n))
        .sum()
}

fn passes_gate(mu: &YoungDiagram, nu: &YoungDiagram, terms: &[KoikeTerm]) -> bool {
    let start = (mu.length() + nu.length()).max(1);
    (start..start + KOIKE_GATE_POINTS).all(|n| {
        let weyl = dim_rational(mu, nu, n).expect("rank checked");
        koike_dimension(terms, n) == from_bigint(weyl)
    })
}

fn koike_cache() -> &'static Mutex<HashMap<(YoungDiagram, YoungDiagram), KoikeExpansion>> {
    static CACHE: OnceLock<Mutex<HashMap<(YoungDiagram, YoungDiagram), KoikeExpansion>>> =
        OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Both sign conventions are built; exactly the ones matching the Weyl dimension survive.
pub fn koike_expand(mu: &YoungDiagram, nu: &YoungDiagram) -> Result<KoikeExpansion> {
    let key = (mu.clone(), nu.clone());
    if let Some(e) = koike_cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let mut passing = Vec::new();
    for sign in [KoikeSign::Alternating, KoikeSign::Positive] {
        let terms = koike_terms(mu, nu, sign)?;
        if passes_gate(mu, nu, &terms) {
            passing.push((sign, terms));
        }
    }
    let gate_error = || Error::KoikeGate {
        mu: mu.to_string(),
        nu: nu.to_string(),
    };
    let (convention, terms) = match passing.len() {
        0 => return Err(gate_error()),
        1 => passing.pop().unwrap(),
        // Both conventions agree only when no ν₁ ≠ ∅ contributes; anything else is ambiguous.
        _ if passing[0].1 == passing[1].1 => passing.swap_remove(0),
        _ => return Err(gate_error()),
    };
    let e = KoikeExpansion {
        mu: mu.clone(),
        nu: nu.clone(),
        convention,
        terms,
    };
    koike_cache().lock().unwrap().insert(key, e.clone());
    Ok(e)
}

/// Number of standard fillings of `λ/μ`.
pub fn skew_syt_count(lambda: &YoungDiagram, mu: &YoungDiagram) -> BigUint {
    fn rec(
        lambda: &YoungDiagram,
        mu: &YoungDiagram,
        memo: &mut HashMap<YoungDiagram, BigUint>,
    ) -> BigUint {
        if lambda == mu {
            return BigUint::one();
        }
        if let Some(v) = memo.get(lambda) {
            return v.clone();
        }
        let total = lambda
            .remove_box_all()
            .into_iter()
            .filter(|smaller| smaller.contains(mu))
            .map(|smaller| rec(&smaller, mu, memo))
            .sum();
        memo.insert(lambda.clone(), total);
        memo[lambda].clone()
    }
    if !lambda.contains(mu) {
        return BigUint::zero();
    }
    rec(lambda, mu, &mut HashMap::new())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: &'static str,
    #[serde(serialize_with = "ser_display")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub rhs: BigInt,
    pub holds: bool,
}

/// Checks the `U(n) ⊃ U(n−1)` branching rule for `λ` and the induction identity
/// `Σ_{μ⊂_b λ} d_{λ/μ} d_λ = ((ℓ+b)!/ℓ!) d_μ` for `μ`.
pub fn branching_and_induction_checks(
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
    n: usize,
    b: usize,
) -> Result<Vec<IdentityReport>> {
    if n == 0 {
        return Err(Error::Precondition("branching needs n >= 1".into()));
    }
    let lhs = dim_un(lambda, n).to_integer();
    let rhs: Rational = lambda
        .subdiagrams()
        .into_iter()
        .filter(|m| m.length() < n && crate::partitions::horizontally_contained(m, lambda, 1))
        .map(|m| dim_un(&m, n - 1))
        .sum();
    let branching = IdentityReport {
        name: "branching",
        holds: lhs == rhs.to_integer(),
        lhs,
        rhs: rhs.to_integer(),
    };

    let l = mu.size();
    let mut sum = BigUint::zero();
    for big in enumerate_partitions(l + b).into_iter().filter(|x| x.contains(mu)) {
        sum += skew_syt_count(&big, mu) * dim_sk(&big);
    }
    let expected = factorial(l + b) / factorial(l) * dim_sk(mu);
    let induction = IdentityReport {
        name: "induction",
        holds: sum == expected,
        lhs: BigInt::from(sum),
        rhs: BigInt::from(expected),
    };

    for r in [&branching, &induction] {
        if !r.holds {
            return Err(Error::IdentityViolation(format!(
                "{} identity fails for lambda={lambda}, mu={mu}, n={n}, b={b}: {} != {}",
                r.name, r.lhs, r.rhs
            )));
        }
    }
    Ok(vec![branching, induction])
}
