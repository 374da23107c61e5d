//! Young diagrams, skew shapes, semistandard tableaux and the cutoff
//! families of representations used to truncate the Fourier sums.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition `λ₁ ≥ λ₂ ≥ … > 0`; the empty diagram is the trivial representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    /// Builds a diagram, dropping trailing zero rows.
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "rows {rows:?} are not non-increasing"
            )));
        }
        if rows.contains(&0) {
            return Err(Error::Precondition(format!("rows {rows:?} contain an interior zero")));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    /// Sorts arbitrary positive parts into a diagram (used for cycle types).
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram { rows: parts }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Row `i` (0-based), zero past the last row.
    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of rows ℓ(λ).
    pub fn length(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn first_row(&self) -> usize {
        self.row(0)
    }

    pub fn transpose(&self) -> YoungDiagram {
        let cols = self.first_row();
        let rows = (0..cols)
            .map(|j| self.rows.iter().filter(|&&r| r > j).count())
            .collect();
        YoungDiagram { rows }
    }

    /// Column length `j` (0-based).
    pub fn column(&self, j: usize) -> usize {
        self.rows.iter().filter(|&&r| r > j).count()
    }

    /// Componentwise containment `other ⊂ self`.
    pub fn contains(&self, other: &YoungDiagram) -> bool {
        other.length() <= self.length() && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }

    /// Boxes as 0-based `(row, column)` pairs in reading order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        (self.rows[i] - j - 1) + (self.column(j) - i - 1) + 1
    }

    /// Content `j − i` of a box (1-based and 0-based conventions agree).
    pub fn content(i: usize, j: usize) -> i64 {
        j as i64 - i as i64
    }

    /// Multiplicities `m_i` of each part size, indexed by part.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first_row() + 1];
        for &r in &self.rows {
            m[r] += 1;
        }
        m
    }

    /// Every diagram obtained by adding one box.
    pub fn add_box_all(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        for i in 0..=self.length() {
            if i == 0 || self.row(i) < self.row(i - 1) {
                let mut rows = self.rows.clone();
                if i == rows.len() {
                    rows.push(1);
                } else {
                    rows[i] += 1;
                }
                out.push(YoungDiagram { rows });
            }
        }
        out
    }

    /// Every diagram obtained by removing one corner box.
    pub fn remove_box_all(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        for i in 0..self.length() {
            if self.row(i) > self.row(i + 1) {
                let mut rows = self.rows.clone();
                rows[i] -= 1;
                out.push(YoungDiagram::new(rows).expect("corner removal keeps shape"));
            }
        }
        out
    }

    /// Every sub-diagram `μ ⊂ λ`, including ∅ and λ itself.
    pub fn subdiagrams(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(lambda: &[usize], cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            out.push(YoungDiagram::new(cur.clone()).unwrap());
            let i = cur.len();
            if i == lambda.len() {
                return;
            }
            let cap = if i == 0 { lambda[0] } else { lambda[i].min(cur[i - 1]) };
            for v in (1..=cap).rev() {
                cur.push(v);
                rec(lambda, cur, out);
                cur.pop();
            }
        }
        rec(&self.rows, &mut cur, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.rows
    }
}

impl PartialOrd for YoungDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: larger size first, then lexicographically descending rows.
impl Ord for YoungDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then_with(|| other.rows.cmp(&self.rows))
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `λ/μ` with `μ ⊂ λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SkewWire", into = "SkewWire")]
pub struct SkewShape {
    outer: YoungDiagram,
    inner: YoungDiagram,
}

#[derive(Serialize, Deserialize)]
struct SkewWire {
    outer: YoungDiagram,
    inner: YoungDiagram,
}

impl TryFrom<SkewWire> for SkewShape {
    type Error = Error;
    fn try_from(w: SkewWire) -> Result<Self> {
        SkewShape::new(w.outer, w.inner)
    }
}

impl From<SkewShape> for SkewWire {
    fn from(s: SkewShape) -> Self {
        SkewWire {
            outer: s.outer,
            inner: s.inner,
        }
    }
}

impl SkewShape {
    pub fn new(outer: YoungDiagram, inner: YoungDiagram) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Precondition(format!("{inner} is not contained in {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(shape: YoungDiagram) -> Self {
        SkewShape {
            outer: shape,
            inner: YoungDiagram::empty(),
        }
    }

    pub fn outer(&self) -> &YoungDiagram {
        &self.outer
    }

    pub fn inner(&self) -> &YoungDiagram {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Number of boxes of the skew shape in column `j`.
    pub fn column_size(&self, j: usize) -> usize {
        self.outer.column(j) - self.inner.column(j)
    }

    pub fn max_column_size(&self) -> usize {
        (0..self.outer.first_row())
            .map(|j| self.column_size(j))
            .max()
            .unwrap_or(0)
    }
}

/// All partitions of `k`, lexicographically descending: `(k), (k-1,1), …, (1^k)`.
pub fn enumerate_partitions(k: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rem == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        for p in (1..=rem.min(cap)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(k, k, &mut cur, &mut out);
    out
}

/// All diagrams fitting in a `max_rows × max_cols` box, in canonical order.
pub fn partitions_in_box(max_rows: usize, max_cols: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rows: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        out.push(YoungDiagram { rows: cur.clone() });
        if cur.len() == rows {
            return;
        }
        for p in (1..=cap).rev() {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    rec(max_rows, max_cols, &mut cur, &mut out);
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SkewRelation {
    /// `μ ⊂_k λ` with `k = |λ| − |μ|`.
    pub holds_subset_k: bool,
    /// `μ ⊂^r λ`: a chain of `r` horizontal strips leads from μ to λ.
    pub holds_horizontal_r: bool,
}

/// `λ/μ` splits into `r` horizontal strips exactly when no column holds more than `r` boxes.
pub fn horizontally_contained(mu: &YoungDiagram, lambda: &YoungDiagram, r: usize) -> bool {
    if !lambda.contains(mu) {
        return false;
    }
    (0..lambda.first_row()).all(|j| lambda.column(j) - mu.column(j) <= r)
}

pub fn skew_relation(mu: &YoungDiagram, lambda: &YoungDiagram, r: usize) -> SkewRelation {
    SkewRelation {
        holds_subset_k: lambda.contains(mu),
        holds_horizontal_r: horizontally_contained(mu, lambda, r),
    }
}

/// A filling of a skew shape; `rows[i]` covers columns `inner_i .. outer_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Tableau {
    pub shape: SkewShape,
    pub rows: Vec<Vec<i64>>,
}

/// Depth-first column-by-column filling; `visit` sees each completed tableau.
fn fill_ssyt(shape: &SkewShape, lo: i64, hi: i64, visit: &mut dyn FnMut(&[Vec<i64>])) {
    let outer = shape.outer();
    let inner = shape.inner();
    let mut cells = Vec::new();
    for j in 0..outer.first_row() {
        for i in inner.column(j)..outer.column(j) {
            cells.push((i, j));
        }
    }
    let mut grid: Vec<Vec<i64>> = (0..outer.length()).map(|i| vec![0; outer.row(i)]).collect();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        inner: &YoungDiagram,
        outer: &YoungDiagram,
        grid: &mut Vec<Vec<i64>>,
        lo: i64,
        hi: i64,
        visit: &mut dyn FnMut(&[Vec<i64>]),
    ) {
        if idx == cells.len() {
            let rows: Vec<Vec<i64>> = grid
                .iter()
                .enumerate()
                .map(|(i, r)| r[inner.row(i)..].to_vec())
                .collect();
            visit(&rows);
            return;
        }
        let (i, j) = cells[idx];
        let mut min = lo;
        if j > 0 && j - 1 >= inner.row(i) {
            min = min.max(grid[i][j - 1]);
        }
        if i > 0 && j >= inner.row(i - 1) {
            min = min.max(grid[i - 1][j] + 1);
        }
        // Room for the strictly increasing cells still below in this column.
        let below = (outer.column(j) - i - 1) as i64;
        let max = hi - below;
        for v in min..=max {
            grid[i][j] = v;
            rec(idx + 1, cells, inner, outer, grid, lo, hi, visit);
        }
    }
    rec(0, &cells, inner, outer, &mut grid, lo, hi, visit);
}

/// Every semistandard tableau of `shape` with entries in `[lo, hi]`.
pub fn enumerate_ssyt(shape: &SkewShape, lo: i64, hi: i64) -> Vec<Tableau> {
    let mut out = Vec::new();
    fill_ssyt(shape, lo, hi, &mut |rows| {
        out.push(Tableau {
            shape: shape.clone(),
            rows: rows.to_vec(),
        })
    });
    out
}

/// Same traversal as [`enumerate_ssyt`], counting only.
pub fn count_ssyt(shape: &SkewShape, lo: i64, hi: i64) -> u64 {
    let mut count = 0u64;
    fill_ssyt(shape, lo, hi, &mut |_| count += 1);
    count
}

/// Highest-weight coordinates `x_i(λ) = λ_i − λ_{i+1}` for `SU(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightCoords {
    pub n: usize,
    pub x: Vec<usize>,
}

pub fn weight_coords(lambda: &YoungDiagram, n: usize) -> Result<WeightCoords> {
    if n == 0 || lambda.length() > n - 1 {
        return Err(Error::RankTooSmall {
            needed: lambda.length() + 1,
            n,
        });
    }
    let x = (0..n - 1).map(|i| lambda.row(i) - lambda.row(i + 1)).collect();
    Ok(WeightCoords { n, x })
}

pub fn from_weight_coords(coords: &WeightCoords) -> YoungDiagram {
    let mut rows = vec![0usize; coords.x.len()];
    let mut acc = 0;
    for i in (0..coords.x.len()).rev() {
        acc += coords.x[i];
        rows[i] = acc;
    }
    YoungDiagram::new(rows).expect("suffix sums are non-increasing")
}

/// The box parameter `B` of the cutoff family Ω(B;n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub b: usize,
}

impl CutoffSpec {
    pub fn new(b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::Precondition("cutoff B must be positive".into()));
        }
        Ok(CutoffSpec { b })
    }

    /// Diagrams allowed for either half of a pair: at most B rows, at most B² columns.
    pub fn box_diagrams(&self) -> Vec<YoungDiagram> {
        partitions_in_box(self.b, self.b * self.b)
    }

    /// Smallest n from which Ω(B;n) is parametrized injectively by pairs.
    pub fn injectivity_threshold(&self) -> usize {
        2 * self.b.pow(3) + 1
    }
}

/// Box constraints `ℓ(μ), ℓ(ν) ≤ B`, `μ₁, ν₁ ≤ B²`; pairs with `ℓ(μ)+ℓ(ν) > n` have no
/// representation of U(n) and are reported as non-members.
pub fn omega_membership(mu: &YoungDiagram, nu: &YoungDiagram, spec: CutoffSpec, n: usize) -> bool {
    let b = spec.b;
    mu.length() + nu.length() <= n
        && mu.length() <= b
        && nu.length() <= b
        && mu.first_row() <= b * b
        && nu.first_row() <= b * b
}

/// Signature `(μ₁,…,μ_ℓ, 0,…,0, −ν_ℓ',…,−ν₁)` of the rational family `[μ,ν]` in rank n.
pub fn signature(mu: &YoungDiagram, nu: &YoungDiagram, n: usize) -> Result<Vec<i64>> {
    if mu.length() + nu.length() > n {
        return Err(Error::RankTooSmall {
            needed: mu.length() + nu.length(),
            n,
        });
    }
    let mut f: Vec<i64> = mu.rows().iter().map(|&r| r as i64).collect();
    f.extend(std::iter::repeat_n(0, n - mu.length() - nu.length()));
    f.extend(nu.rows().iter().rev().map(|&r| -(r as i64)));
    Ok(f)
}

/// Splits a signature into its positive and negative parts `(μ, ν)`.
pub fn pair_from_signature(f: &[i64]) -> (YoungDiagram, YoungDiagram) {
    let mu = f.iter().filter(|&&v| v > 0).map(|&v| v as usize).collect();
    let nu = f
        .iter()
        .rev()
        .filter(|&&v| v < 0)
        .map(|&v| (-v) as usize)
        .collect();
    (
        YoungDiagram::new(mu).expect("positive part of a signature"),
        YoungDiagram::new(nu).expect("negative part of a signature"),
    )
}

/// The `SU(n)` diagram (last signature entry shifted to zero) of `[μ,ν]`.
pub fn su_diagram(mu: &YoungDiagram, nu: &YoungDiagram, n: usize) -> Result<YoungDiagram> {
    let f = signature(mu, nu, n)?;
    let last = *f.last().unwrap_or(&0);
    YoungDiagram::new(f.iter().map(|v| (v - last) as usize).collect())
}

/// Whether `SU(n)`-irrep `λ` (with `ℓ(λ) ≤ n−1`) lies outside the image of Ω(B;n).
pub fn lambda_membership(lambda: &YoungDiagram, spec: CutoffSpec, n: usize) -> bool {
    if n == 0 || lambda.length() > n - 1 {
        return false;
    }
    // Every U(n) lift of λ is λ − c·(1,…,1); scan the shifts that could land in the box.
    let lo = -1i64;
    let hi = lambda.first_row() as i64 + 1;
    let in_omega = (lo..=hi).any(|c| {
        let f: Vec<i64> = (0..n).map(|i| lambda.row(i) as i64 - c).collect();
        let (mu, nu) = pair_from_signature(&f);
        omega_membership(&mu, &nu, spec, n)
    });
    !in_omega
}

/// Necessary condition for Λ(B;n)-membership in weight coordinates: some `x_i > B` with
/// `i ≤ B` or `i ≥ n−B`, or some `x_i > 0` with `B < i < n−B` (1-based `i`).
pub fn lambda_weight_condition(lambda: &YoungDiagram, spec: CutoffSpec, n: usize) -> bool {
    let Ok(coords) = weight_coords(lambda, n) else {
        return false;
    };
    let b = spec.b;
    coords.x.iter().enumerate().any(|(i0, &x)| {
        let i = i0 + 1;
        if i <= b || i >= n.saturating_sub(b) {
            x > b
        } else {
            x > 0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    /// Independent partition-number oracle: p(n, ≤m) recursion.
    fn partition_number(n: usize) -> u64 {
        let mut t = vec![vec![0u64; n + 1]; n + 1];
        for m in 0..=n {
            t[0][m] = 1;
        }
        for k in 1..=n {
            for m in 1..=n {
                t[k][m] = t[k][m - 1] + if m <= k { t[k - m][m] } else { 0 };
            }
        }
        t[n][n]
    }

    /// Exhaustive horizontal-strip chain search.
    fn chain_exists(mu: &YoungDiagram, lambda: &YoungDiagram, r: usize) -> bool {
        if mu == lambda {
            return true;
        }
        if r == 0 || !lambda.contains(mu) {
            return false;
        }
        lambda
            .subdiagrams()
            .into_iter()
            .filter(|nu| nu.contains(mu) && nu != mu)
            .filter(|nu| (0..nu.first_row()).all(|j| nu.column(j) - mu.column(j) <= 1))
            .any(|nu| chain_exists(&nu, lambda, r - 1))
    }

    #[test]
    fn partition_examples() {
        assert_eq!(enumerate_partitions(0), vec![YoungDiagram::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(10).len(), 42);
        assert_eq!(
            enumerate_partitions(3),
            vec![yd(&[3]), yd(&[2, 1]), yd(&[1, 1, 1])]
        );
    }

    #[test]
    fn partition_counts_match_oracle() {
        for k in 0..=20 {
            let parts = enumerate_partitions(k);
            assert_eq!(parts.len() as u64, partition_number(k), "k={k}");
            let mut sorted = parts.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), parts.len());
        }
    }

    #[test]
    fn skew_relation_examples() {
        let rel = skew_relation(&yd(&[1]), &yd(&[2, 1]), 1);
        assert!(rel.holds_subset_k);
        assert!(rel.holds_horizontal_r);
        assert!(chain_exists(&yd(&[1]), &yd(&[2, 1]), 1));

        for r in 0..3 {
            let rel = skew_relation(&yd(&[2, 1]), &yd(&[2, 1]), r);
            assert!(rel.holds_subset_k && rel.holds_horizontal_r);
        }

        // (2,2)/(2) is one box in each of the first two columns.
        let rel = skew_relation(&yd(&[2]), &yd(&[2, 2]), 1);
        assert!(rel.holds_horizontal_r);
        assert!(chain_exists(&yd(&[2]), &yd(&[2, 2]), 1));

        // (1,1)/∅ needs two strips.
        assert!(!skew_relation(&YoungDiagram::empty(), &yd(&[1, 1]), 1).holds_horizontal_r);
        assert!(skew_relation(&YoungDiagram::empty(), &yd(&[1, 1]), 2).holds_horizontal_r);
    }

    #[test]
    fn column_test_matches_chain_search() {
        for k in 0..=5 {
            for lambda in enumerate_partitions(k) {
                for mu in lambda.subdiagrams() {
                    for r in 0..=3 {
                        assert_eq!(
                            horizontally_contained(&mu, &lambda, r),
                            chain_exists(&mu, &lambda, r),
                            "{mu} in {lambda}, r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ssyt_examples() {
        let one = SkewShape::straight(yd(&[1]));
        assert_eq!(enumerate_ssyt(&one, 1, 3).len(), 3);
        let hook = SkewShape::straight(yd(&[2, 1]));
        assert_eq!(enumerate_ssyt(&hook, 1, 3).len(), 8);
        assert_eq!(count_ssyt(&hook, 1, 3), 8);
        // (2,1)/(1) over {2,3}: boxes (0,1) and (1,0) are unrelated -> 2*2 fillings.
        let skew = SkewShape::new(yd(&[2, 1]), yd(&[1])).unwrap();
        assert_eq!(count_ssyt(&skew, 2, 3), 4);
        assert_eq!(count_ssyt(&SkewShape::straight(YoungDiagram::empty()), 1, 0), 1);
        assert_eq!(count_ssyt(&one, 1, 0), 0);
    }

    #[test]
    fn ssyt_brute_force_agrees() {
        // Fill every box with every value and keep semistandard fillings.
        fn brute(shape: &SkewShape, lo: i64, hi: i64) -> u64 {
            let cells: Vec<(usize, usize)> = shape
                .outer()
                .boxes()
                .filter(|&(i, j)| j >= shape.inner().row(i))
                .collect();
            let span = (hi - lo + 1).max(0) as u64;
            let total = span.pow(cells.len() as u32);
            let mut count = 0;
            for code in 0..total {
                let mut c = code;
                let mut val = std::collections::HashMap::new();
                for &cell in &cells {
                    val.insert(cell, lo + (c % span) as i64);
                    c /= span;
                }
                let ok = cells.iter().all(|&(i, j)| {
                    let v = val[&(i, j)];
                    let left = j > 0 && val.get(&(i, j - 1)).is_some_and(|&l| l > v);
                    let up = i > 0 && val.get(&(i - 1, j)).is_some_and(|&u| u >= v);
                    !left && !up
                });
                if ok {
                    count += 1;
                }
            }
            count
        }
        for lambda in (0..=4).flat_map(enumerate_partitions) {
            for mu in lambda.subdiagrams() {
                let shape = SkewShape::new(lambda.clone(), mu).unwrap();
                for hi in 1..=3 {
                    assert_eq!(count_ssyt(&shape, 1, hi), brute(&shape, 1, hi));
                }
            }
        }
    }

    #[test]
    fn weight_coord_examples() {
        assert_eq!(weight_coords(&yd(&[3, 1]), 4).unwrap().x, vec![2, 1, 0]);
        assert_eq!(weight_coords(&YoungDiagram::empty(), 3).unwrap().x, vec![0, 0]);
        let c = WeightCoords { n: 4, x: vec![0, 1, 0] };
        assert_eq!(from_weight_coords(&c), yd(&[1, 1]));
        assert!(matches!(
            weight_coords(&yd(&[1, 1, 1]), 3),
            Err(Error::RankTooSmall { .. })
        ));
    }

    #[test]
    fn weight_coords_round_trip() {
        for k in 0..=8 {
            for lambda in enumerate_partitions(k) {
                for n in lambda.length() + 1..=9 {
                    let c = weight_coords(&lambda, n).unwrap();
                    assert_eq!(c.x.len(), n - 1);
                    assert_eq!(from_weight_coords(&c), lambda);
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let spec = CutoffSpec::new(2).unwrap();
        let e = YoungDiagram::empty();
        assert!(omega_membership(&e, &e, spec, 3));
        assert!(!omega_membership(&yd(&[5]), &e, spec, 40));
        assert!(omega_membership(&yd(&[4, 4]), &yd(&[4, 1]), spec, 40));
    }

    #[test]
    fn lambda_member_from_middle_coordinate() {
        let spec = CutoffSpec::new(1).unwrap();
        let n = 10;
        // x_j = 1 at j = 5 (between B and n−B).
        let c = WeightCoords { n, x: vec![0, 0, 0, 0, 1, 0, 0, 0, 0] };
        let lambda = from_weight_coords(&c);
        assert!(lambda_membership(&lambda, spec, n));
        assert!(lambda_weight_condition(&lambda, spec, n));
    }

    #[test]
    fn omega_and_lambda_partition_the_irreps() {
        for b in 1..=2usize {
            let spec = CutoffSpec::new(b).unwrap();
            let n = 2 * b.pow(3) + 1;
            let boxes = spec.box_diagrams();
            let mut omega_image = std::collections::HashSet::new();
            for mu in &boxes {
                for nu in &boxes {
                    omega_image.insert(su_diagram(mu, nu, n).unwrap());
                }
            }
            // Injective at this rank.
            assert_eq!(omega_image.len(), boxes.len() * boxes.len());
            for k in 0..=10 {
                for lambda in enumerate_partitions(k).into_iter().filter(|l| l.length() < n) {
                    let in_lambda = lambda_membership(&lambda, spec, n);
                    assert_ne!(in_lambda, omega_image.contains(&lambda), "{lambda}");
                    if in_lambda {
                        assert!(lambda_weight_condition(&lambda, spec, n), "{lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn serde_shapes() {
        let s = SkewShape::new(yd(&[3, 1]), yd(&[1])).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"outer":[3,1],"inner":[1]}"#);
        let back: SkewShape = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<YoungDiagram>("[1,2]").is_err());
        assert!(serde_json::from_str::<SkewShape>(r#"{"outer":[1],"inner":[2]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn diagram() -> impl Strategy<Value = YoungDiagram> {
            prop::collection::vec(1usize..5, 0..5).prop_map(YoungDiagram::from_parts)
        }

        proptest! {
            #[test]
            fn horizontal_containment_monotone(lambda in diagram(), r in 1usize..4) {
                for mu in lambda.subdiagrams() {
                    if horizontally_contained(&mu, &lambda, 1) {
                        prop_assert!(horizontally_contained(&mu, &lambda, r));
                    }
                    if horizontally_contained(&mu, &lambda, r) {
                        prop_assert!(horizontally_contained(&mu, &lambda, r + 1));
                    }
                }
            }

            #[test]
            fn transpose_is_involution(lambda in diagram()) {
                prop_assert_eq!(lambda.transpose().transpose(), lambda.clone());
                prop_assert_eq!(lambda.transpose().size(), lambda.size());
            }
        }
    }
}
