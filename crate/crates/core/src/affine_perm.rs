//! Extended affine permutations in window notation.
//!
//! An element `w` of the extended affine symmetric group is a bijection
//! `ℤ → ℤ` with `w(i + n) = w(i) + n`; it is determined by its window
//! `[w(1), …, w(n)]`. Residues are written `1..=n` throughout. The points
//! `(i, w(i))` are the *balls* of `w`, drawn in matrix coordinates (`x` grows
//! southwards, `y` eastwards).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition;

/// Largest absolute window entry accepted by the constructors. Keeps every
/// intermediate product (block offsets times the period) well inside `i64`.
pub const MAX_ENTRY: i64 = 1 << 40;

pub(crate) fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// The residue of `i` modulo `n`, as a value in `1..=n`.
pub fn residue(i: i64, n: usize) -> usize {
    ((i - 1).rem_euclid(n as i64) + 1) as usize
}

/// Splits `i` into `(r, k)` with `i = r + k·n` and `r ∈ 1..=n`.
pub(crate) fn split(i: i64, n: usize) -> (usize, i64) {
    let r = residue(i, n);
    (r, (i - r as i64) / n as i64)
}

/// A lattice point `(x, y)`; the balls of a permutation are `(i, w(i))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ball {
    pub x: i64,
    pub y: i64,
}

impl Ball {
    pub const fn new(x: i64, y: i64) -> Self {
        Ball { x, y }
    }

    pub fn translate(self, k: i64, n: usize) -> Ball {
        let s = k * n as i64;
        Ball::new(self.x + s, self.y + s)
    }

    /// The translate whose `x` lies in the window `1..=n`.
    pub fn to_window(self, n: usize) -> Ball {
        let (_, k) = split(self.x, n);
        self.translate(-k, n)
    }

    /// `(⌈x/n⌉ − 1, ⌈y/n⌉ − 1)`.
    pub fn block_coordinate(self, n: usize) -> (i64, i64) {
        let n = n as i64;
        (div_ceil(self.x, n) - 1, div_ceil(self.y, n) - 1)
    }

    /// `⌈y/n⌉ − ⌈x/n⌉`.
    pub fn block_diagonal(self, n: usize) -> i64 {
        let (bx, by) = self.block_coordinate(n);
        by - bx
    }

    /// Strictly northwest: smaller in both coordinates.
    pub fn is_strictly_nw_of(self, other: Ball) -> bool {
        self.x < other.x && self.y < other.y
    }
}

/// Largest `k` such that `b + k(n,n)` is strictly northwest of `a`.
pub(crate) fn max_shift_nw(a: Ball, b: Ball, n: usize) -> i64 {
    let n = n as i64;
    div_floor(a.x - b.x - 1, n).min(div_floor(a.y - b.y - 1, n))
}

/// Smallest `k` such that `b + k(n,n)` is strictly southeast of `a`.
pub(crate) fn min_shift_se(a: Ball, b: Ball, n: usize) -> i64 {
    let n = n as i64;
    (div_floor(a.x - b.x, n) + 1).max(div_floor(a.y - b.y, n) + 1)
}

fn check_entry(v: i64) -> Result<()> {
    if v.abs() > MAX_ENTRY {
        Err(Error::InvalidWindow(format!("entry {v} exceeds the supported magnitude {MAX_ENTRY}")))
    } else {
        Ok(())
    }
}

/// An element of the extended affine symmetric group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePerm {
    window: Vec<i64>,
}

impl AffinePerm {
    /// Builds a permutation from its window, checking that the entries are
    /// pairwise distinct modulo `n`.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        let mut seen = vec![false; n];
        for &v in &window {
            check_entry(v)?;
            let r = residue(v, n);
            if std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidWindow(format!(
                    "{window:?}: residue {r} occurs more than once"
                )));
            }
        }
        Ok(AffinePerm { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i64>) -> Self {
        debug_assert!(AffinePerm::new(window.clone()).is_ok());
        AffinePerm { window }
    }

    pub fn identity(n: usize) -> Self {
        AffinePerm { window: (1..=n as i64).collect() }
    }

    /// The shift `ω = [2, 3, …, n+1]`.
    pub fn omega(n: usize) -> Self {
        AffinePerm { window: (2..=n as i64 + 1).collect() }
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(n: usize, k: i64) -> Self {
        AffinePerm { window: (1..=n as i64).map(|i| i + k).collect() }
    }

    /// The longest element `[n, n−1, …, 1]` of the finite symmetric group.
    pub fn longest(n: usize) -> Self {
        AffinePerm { window: (1..=n as i64).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i64> {
        self.window
    }

    /// `w(i)` for any integer `i`.
    pub fn value(&self, i: i64) -> i64 {
        let (r, k) = split(i, self.n());
        self.window[r - 1] + k * self.n() as i64
    }

    /// The balls `(i, w(i))` for `i ∈ 1..=n`.
    pub fn balls(&self) -> impl Iterator<Item = Ball> + '_ {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &v)| Ball::new(i as i64 + 1, v))
    }

    /// `u ∘ v`, i.e. `i ↦ u(v(i))`.
    pub fn compose(&self, other: &AffinePerm) -> Result<AffinePerm> {
        if self.n() != other.n() {
            return Err(Error::PeriodMismatch(self.n(), other.n()));
        }
        Ok(AffinePerm {
            window: other.window.iter().map(|&v| self.value(v)).collect(),
        })
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.n();
        let mut inv = vec![0; n];
        for (i, &v) in self.window.iter().enumerate() {
            let (r, k) = split(v, n);
            inv[r - 1] = i as i64 + 1 - k * n as i64;
        }
        AffinePerm { window: inv }
    }

    /// Right descent set `{ī : w(i) > w(i+1)}`.
    pub fn right_descents(&self) -> BTreeSet<usize> {
        let n = self.n() as i64;
        (1..=n)
            .filter(|&i| self.value(i) > self.value(i + 1))
            .map(|i| i as usize)
            .collect()
    }

    /// Left descent set, the right descents of the inverse.
    pub fn left_descents(&self) -> BTreeSet<usize> {
        self.inverse().right_descents()
    }

    /// `(L(w), R(w))`.
    pub fn descents(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        (self.left_descents(), self.right_descents())
    }

    /// True when the window sums to `n(n+1)/2`, i.e. `w` lies in the
    /// non-extended affine symmetric group.
    pub fn is_nonextended(&self) -> bool {
        let n = self.n() as i64;
        self.window.iter().sum::<i64>() == n * (n + 1) / 2
    }

    /// True when the window is a permutation of `1..=n`.
    pub fn is_finite(&self) -> bool {
        let n = self.n() as i64;
        self.window.iter().all(|&v| (1..=n).contains(&v))
    }

    pub fn is_involution(&self) -> bool {
        self.inverse() == *self
    }

    /// `Σ_i (⌈w(i)/n⌉ − 1)`, the sum of the block diagonals of the window balls.
    pub fn block_diagonal_sum(&self) -> i64 {
        self.balls().map(|b| b.block_diagonal(self.n())).sum()
    }

    /// `w_μ = [nμ₁+1, nμ₂+2, …, nμₙ+n]` for a dominant weight `μ`.
    pub fn from_dominant_weight(mu: &[i64]) -> Result<AffinePerm> {
        if mu.is_empty() {
            return Err(Error::InvalidWindow("empty weight".into()));
        }
        if mu.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::NotDominant(mu.to_vec()));
        }
        let n = mu.len() as i64;
        let window: Vec<i64> = mu.iter().zip(1..).map(|(&m, i)| n * m + i).collect();
        AffinePerm::new(window)
    }

    /// The longest element of the Young subgroup `S_{λ'₁} × S_{λ'₂} × ⋯`,
    /// each block of consecutive positions reversed.
    pub fn longest_parabolic(shape: &[usize], n: usize) -> Result<AffinePerm> {
        partition::validate(shape, n)?;
        let mut window = Vec::with_capacity(n);
        let mut start = 0i64;
        for len in partition::conjugate(shape) {
            let len = len as i64;
            window.extend((1..=len).rev().map(|j| start + j));
            start += len;
        }
        Ok(AffinePerm { window })
    }

    /// The minimal representative of the double coset `S_n · w · S_n`: the
    /// unique `u` in the coset with both `u` and `u⁻¹` increasing on `1..=n`.
    pub fn min_double_coset_rep(&self) -> AffinePerm {
        let n = self.n();
        let ni = n as i64;
        let mut blocks: Vec<i64> = self.window.iter().map(|&v| div_ceil(v, ni) - 1).collect();
        blocks.sort_unstable();
        // Position i carries block m_i; residues are handed out so that
        // u⁻¹(r) = i − n·m_i increases with r.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| i as i64 + 1 - ni * blocks[i]);
        let mut window = vec![0; n];
        for (rank, &i) in order.iter().enumerate() {
            window[i] = rank as i64 + 1 + ni * blocks[i];
        }
        AffinePerm { window }
    }

    /// The dominant weight `μ` with `w ∈ S_n · w_μ · S_n`.
    pub fn dominant_weight(&self) -> Vec<i64> {
        let n = self.n() as i64;
        let mut mu: Vec<i64> = self.window.iter().map(|&v| div_ceil(v, n) - 1).collect();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        mu
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_window(f, self.window.iter().map(|&v| Some(v)))
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for AffinePerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_window(s)?;
        let window = entries
            .into_iter()
            .map(|e| e.ok_or_else(|| Error::Parse("holes are not allowed in a permutation".into())))
            .collect::<Result<Vec<_>>>()?;
        AffinePerm::new(window)
    }
}

impl Serialize for AffinePerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.window.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffinePerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let window = Vec::<i64>::deserialize(d)?;
        AffinePerm::new(window).map_err(serde::de::Error::custom)
    }
}

/// A partial affine permutation: a window in which some positions are holes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialPerm {
    window: Vec<Option<i64>>,
}

impl PartialPerm {
    pub fn new(window: Vec<Option<i64>>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        let mut seen = vec![false; n];
        for v in window.iter().flatten() {
            check_entry(*v)?;
            let r = residue(*v, n);
            if std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidWindow(format!("residue {r} occurs more than once")));
            }
        }
        Ok(PartialPerm { window })
    }

    pub fn empty(n: usize) -> Self {
        PartialPerm { window: vec![None; n] }
    }

    /// Collects balls (in any translate) into a partial permutation.
    pub fn from_balls(n: usize, balls: impl IntoIterator<Item = Ball>) -> Result<Self> {
        let mut window = vec![None; n];
        for b in balls {
            let b = b.to_window(n);
            let slot = &mut window[b.x as usize - 1];
            if slot.is_some() {
                return Err(Error::InvalidWindow(format!("two balls in position {}", b.x)));
            }
            *slot = Some(b.y);
        }
        PartialPerm::new(window)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[Option<i64>] {
        &self.window
    }

    pub fn get(&self, i: i64) -> Option<i64> {
        let (r, k) = split(i, self.n());
        self.window[r - 1].map(|v| v + k * self.n() as i64)
    }

    pub fn is_empty(&self) -> bool {
        self.window.iter().all(Option::is_none)
    }

    /// Number of defined positions per period.
    pub fn size(&self) -> usize {
        self.window.iter().flatten().count()
    }

    /// Window balls, in increasing `x`.
    pub fn balls(&self) -> Vec<Ball> {
        self.window
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| Ball::new(i as i64 + 1, v)))
            .collect()
    }

    pub fn to_affine(&self) -> Option<AffinePerm> {
        self.window
            .iter()
            .copied()
            .collect::<Option<Vec<_>>>()
            .map(AffinePerm::from_window_unchecked)
    }
}

impl From<&AffinePerm> for PartialPerm {
    fn from(w: &AffinePerm) -> Self {
        PartialPerm { window: w.window.iter().map(|&v| Some(v)).collect() }
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_window(f, self.window.iter().copied())
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartialPerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PartialPerm::new(parse_window(s)?)
    }
}

fn write_window(f: &mut fmt::Formatter<'_>, entries: impl Iterator<Item = Option<i64>>) -> fmt::Result {
    f.write_str("[")?;
    for (i, e) in entries.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        match e {
            Some(v) => write!(f, "{v}")?,
            None => f.write_str("∅")?,
        }
    }
    f.write_str("]")
}

/// Parses `"[a1,a2,…,an]"`; `∅` or `_` mark holes.
pub fn parse_window(s: &str) -> Result<Vec<Option<i64>>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("window must be bracketed: {s:?}")))?;
    if inner.trim().is_empty() {
        return Err(Error::Parse("empty window".into()));
    }
    inner
        .split(',')
        .map(|tok| match tok.trim() {
            "∅" | "_" => Ok(None),
            t => t
                .parse::<i64>()
                .map(Some)
                .map_err(|e| Error::Parse(format!("window entry {t:?}: {e}"))),
        })
        .collect()
}
