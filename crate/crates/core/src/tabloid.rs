//! Row-standard Young tabloids filled with the residues `1..=n`.
//!
//! Rows are indexed from `0` (the top row). A [`RowVector`] is an integer
//! vector with one entry per row of a shape.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition;

/// One integer per row of a shape.
pub type RowVector = Vec<i64>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tabloid {
    rows: Vec<Vec<usize>>,
    // row_of[r - 1] is the row holding residue r
    row_of: Vec<usize>,
}

impl Tabloid {
    /// Validates and normalizes (sorts) the rows.
    pub fn new(mut rows: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = rows.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::InvalidTabloid("empty tabloid".into()));
        }
        if rows.iter().any(Vec::is_empty) {
            return Err(Error::InvalidTabloid("empty row".into()));
        }
        if rows.windows(2).any(|p| p[0].len() < p[1].len()) {
            return Err(Error::InvalidTabloid(format!("row lengths must weakly decrease: {rows:?}")));
        }
        let mut row_of = vec![usize::MAX; n];
        for (t, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            for &r in row.iter() {
                if r == 0 || r > n {
                    return Err(Error::InvalidTabloid(format!("residue {r} outside 1..={n}")));
                }
                if row_of[r - 1] != usize::MAX {
                    return Err(Error::InvalidTabloid(format!("residue {r} occurs twice")));
                }
                row_of[r - 1] = t;
            }
        }
        Ok(Tabloid { rows, row_of })
    }

    /// Builds the tabloid whose row `t` is the residue set `sets[t]`, without
    /// the shape check (used for intermediate AMBC output, validated later).
    pub(crate) fn from_sorted_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut row_of = vec![0; n];
        for (t, row) in rows.iter().enumerate() {
            for &r in row {
                row_of[r - 1] = t;
            }
        }
        Tabloid { rows, row_of }
    }

    pub fn n(&self) -> usize {
        self.row_of.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// The row (0-based) containing residue `r`, given in `1..=n`.
    pub fn row_of(&self, r: usize) -> usize {
        self.row_of[r - 1]
    }

    fn next_residue(&self, i: usize) -> usize {
        i % self.n() + 1
    }

    /// `τ(T)`: residues `i` lying in a strictly higher row than `i + 1`
    /// (cyclically, so `n` is compared with `1`).
    pub fn tau(&self) -> BTreeSet<usize> {
        (1..=self.n())
            .filter(|&i| self.row_of(i) < self.row_of(self.next_residue(i)))
            .collect()
    }

    /// Local charge of the adjacent pair of rows `(t, t + 1)`.
    pub fn local_charge(&self, t: usize) -> Result<usize> {
        if t + 1 >= self.rows.len() {
            return Err(Error::OutOfRange(format!(
                "local charge of row {t} needs a row below it (tabloid has {} rows)",
                self.rows.len()
            )));
        }
        Ok(local_charge_of_rows(&self.rows[t], &self.rows[t + 1]))
    }

    /// `T^can_λ`: rows filled bottom-up with consecutive residues.
    pub fn canonical(shape: &[usize]) -> Result<Tabloid> {
        let n = shape.iter().sum();
        partition::validate(shape, n)?;
        let mut rows = vec![Vec::new(); shape.len()];
        let mut next = 1;
        for (t, &len) in shape.iter().enumerate().rev() {
            rows[t] = (next..next + len).collect();
            next += len;
        }
        Ok(Tabloid::from_sorted_rows_unchecked(rows))
    }

    /// `T^an_λ`: columns filled left to right with consecutive residues.
    pub fn anticanonical(shape: &[usize]) -> Result<Tabloid> {
        let n = shape.iter().sum();
        partition::validate(shape, n)?;
        let mut rows = vec![Vec::new(); shape.len()];
        let mut next = 1;
        for height in partition::conjugate(shape) {
            for row in rows.iter_mut().take(height) {
                row.push(next);
                next += 1;
            }
        }
        Ok(Tabloid::from_sorted_rows_unchecked(rows))
    }

    /// `ω(T)`: every residue `i` replaced by `i + 1` (and `n` by `1`).
    pub fn omega(&self) -> Tabloid {
        let n = self.n();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut r: Vec<usize> = row.iter().map(|&i| i % n + 1).collect();
                r.sort_unstable();
                r
            })
            .collect();
        Tabloid::from_sorted_rows_unchecked(rows)
    }

    fn swapped(&self, a: usize, b: usize) -> Tabloid {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut r: Vec<usize> = row
                    .iter()
                    .map(|&x| if x == a { b } else if x == b { a } else { x })
                    .collect();
                r.sort_unstable();
                r
            })
            .collect();
        Tabloid::from_sorted_rows_unchecked(rows)
    }

    /// The star operation `T ↦ T*` for `* ∼ i`, or `None` where undefined.
    /// Requires `n ≥ 3`.
    pub fn star(&self, i: usize) -> Option<Tabloid> {
        let n = self.n();
        if n < 3 || i == 0 || i > n {
            return None;
        }
        let j = self.next_residue(i);
        if self.row_of(i) == self.row_of(j) {
            return None;
        }
        let s = self.swapped(i, j);
        let prev = if i == 1 { n } else { i - 1 };
        let (tt, ts) = (self.tau(), s.tau());
        let trace = |tau: &BTreeSet<usize>, a: usize, b: usize| -> (bool, bool) {
            (tau.contains(&a), tau.contains(&b))
        };
        let swaps_descent = |a: usize, b: usize| {
            let x = trace(&tt, a, b);
            let y = trace(&ts, a, b);
            (x == (true, false) && y == (false, true)) || (x == (false, true) && y == (true, false))
        };
        if swaps_descent(i, j) || swaps_descent(prev, i) {
            Some(s)
        } else {
            None
        }
    }

    /// `ι(T, i)`: indicator of the row containing residue `i`.
    pub fn iota_vec(&self, i: usize) -> RowVector {
        let t = self.row_of(i);
        (0..self.rows.len()).map(|j| i64::from(j == t)).collect()
    }

    /// `δ(T, i)`: zero when the row of `i` repeats the length of the row above
    /// it, otherwise the indicator of all rows of that length.
    pub fn delta_vec(&self, i: usize) -> RowVector {
        let t = self.row_of(i);
        let shape = self.shape();
        if t > 0 && shape[t] == shape[t - 1] {
            vec![0; shape.len()]
        } else {
            shape.iter().map(|&p| i64::from(p == shape[t])).collect()
        }
    }

    /// All row-standard tabloids of the given shape, in lexicographic order
    /// of their row lists.
    pub fn enumerate(shape: &[usize]) -> Result<Vec<Tabloid>> {
        let n = shape.iter().sum();
        partition::validate(shape, n)?;
        fn go(
            shape: &[usize],
            remaining: &[usize],
            rows: &mut Vec<Vec<usize>>,
            out: &mut Vec<Tabloid>,
        ) {
            let t = rows.len();
            if t == shape.len() {
                out.push(Tabloid::from_sorted_rows_unchecked(rows.clone()));
                return;
            }
            let k = shape[t];
            let mut pick = Vec::with_capacity(k);
            choose(remaining, k, 0, &mut pick, &mut |row| {
                let rest: Vec<usize> = remaining.iter().copied().filter(|x| !row.contains(x)).collect();
                rows.push(row.to_vec());
                go(shape, &rest, rows, out);
                rows.pop();
            });
        }
        fn choose(
            pool: &[usize],
            k: usize,
            start: usize,
            pick: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if pick.len() == k {
                f(pick);
                return;
            }
            for idx in start..pool.len() {
                if pool.len() - idx < k - pick.len() {
                    break;
                }
                pick.push(pool[idx]);
                choose(pool, k, idx + 1, pick, f);
                pick.pop();
            }
        }
        let all: Vec<usize> = (1..=n).collect();
        let mut out = Vec::new();
        go(shape, &all, &mut Vec::new(), &mut out);
        Ok(out)
    }
}

pub(crate) fn local_charge_of_rows(a: &[usize], b: &[usize]) -> usize {
    let t = b.len();
    (0..=t)
        .find(|&d| (d..t).all(|l| a[l - d] < b[l]))
        .unwrap_or(t)
}

fn check_same_shape(p: &Tabloid, q: &Tabloid) -> Result<Vec<usize>> {
    let (sp, sq) = (p.shape(), q.shape());
    if sp != sq {
        return Err(Error::ShapeMismatch(sp, sq));
    }
    Ok(sp)
}

/// The symmetrized offset constants `s_{P,Q}`: zero at the top of every block
/// of equal parts, and `s_t − s_{t−1} = lch_{t−1}(P) − lch_{t−1}(Q)` inside a
/// block.
pub fn offset_constants(p: &Tabloid, q: &Tabloid) -> Result<RowVector> {
    let shape = check_same_shape(p, q)?;
    let mut s = vec![0i64; shape.len()];
    for t in 1..shape.len() {
        if shape[t] == shape[t - 1] {
            let lp = local_charge_of_rows(&p.rows[t - 1], &p.rows[t]) as i64;
            let lq = local_charge_of_rows(&q.rows[t - 1], &q.rows[t]) as i64;
            s[t] = s[t - 1] + lp - lq;
        }
    }
    Ok(s)
}

fn check_len(shape: &[usize], rho: &[i64]) -> Result<()> {
    if shape.len() != rho.len() {
        return Err(Error::LengthMismatch { expected: shape.len(), got: rho.len() });
    }
    Ok(())
}

/// Reverses `rho` within each block of equal parts of `shape`.
pub fn rev_lambda(shape: &[usize], rho: &[i64]) -> Result<RowVector> {
    check_len(shape, rho)?;
    let mut out = rho.to_vec();
    for block in partition::equal_part_blocks(shape) {
        out[block].reverse();
    }
    Ok(out)
}

/// True when `rho − s_{P,Q}` weakly increases inside every block of equal parts.
pub fn is_dominant_wrt(rho: &[i64], p: &Tabloid, q: &Tabloid) -> Result<bool> {
    let shape = check_same_shape(p, q)?;
    check_len(&shape, rho)?;
    let s = offset_constants(p, q)?;
    let diff: Vec<i64> = rho.iter().zip(&s).map(|(r, s)| r - s).collect();
    Ok(is_antidominant(&shape, &diff))
}

/// Weakly increasing inside every block of equal parts.
pub(crate) fn is_antidominant(shape: &[usize], v: &[i64]) -> bool {
    (1..shape.len()).all(|t| shape[t] != shape[t - 1] || v[t - 1] <= v[t])
}

/// Weakly decreasing inside every block of equal parts, i.e. an element of
/// `Dom(F_λ)` in row coordinates.
pub fn is_block_dominant(shape: &[usize], v: &[i64]) -> bool {
    (1..shape.len()).all(|t| shape[t] != shape[t - 1] || v[t - 1] >= v[t])
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (t, row) in self.rows.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (k, r) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{r}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Tabloid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<usize>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("tabloid {s:?}: {e}")))?;
        Tabloid::new(rows)
    }
}

impl Serialize for Tabloid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tabloid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(d)?;
        Tabloid::new(rows).map_err(serde::de::Error::custom)
    }
}
