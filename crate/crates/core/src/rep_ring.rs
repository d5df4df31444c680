//! Rational representations of `GL_m` and of products of general linear
//! groups: tensor products through the Littlewood–Richardson rule.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition;

/// A finite integer combination of irreducibles indexed by highest weights.
pub type VirtualChar<K> = BTreeMap<K, i64>;

/// Adds `coef · [key]`, dropping the entry if it cancels.
pub fn add_term<K: Ord>(ch: &mut VirtualChar<K>, key: K, coef: i64) {
    if coef == 0 {
        return;
    }
    match ch.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coef);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

pub fn is_gl_dominant(mu: &[i64]) -> bool {
    mu.windows(2).all(|p| p[0] >= p[1])
}

fn check_gl(mu: &[i64]) -> Result<()> {
    if mu.is_empty() {
        return Err(Error::InvalidWindow("a GL weight needs at least one entry".into()));
    }
    if !is_gl_dominant(mu) {
        return Err(Error::NotDominant(mu.to_vec()));
    }
    Ok(())
}

/// Weyl's dimension formula `∏_{i<j} (μ_i − μ_j + j − i)/(j − i)`.
pub fn dim_gl(mu: &[i64]) -> Result<u128> {
    check_gl(mu)?;
    let m = mu.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        for j in i + 1..m {
            num *= (mu[i] - mu[j]) as u128 + (j - i) as u128;
            den *= (j - i) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Littlewood–Richardson coefficients `c^ν_{μ,κ}` for partitions `μ`, `κ`
/// (padded with zeros), restricted to `ν` with at most `m` rows.
fn lr_product(mu: &[u64], kappa: &[u64], m: usize) -> BTreeMap<Vec<u64>, i64> {
    let mut out = BTreeMap::new();
    let kappa: Vec<u64> = kappa.iter().copied().filter(|&k| k > 0).collect();
    if kappa.len() > m {
        return out;
    }
    let mut shape = mu.to_vec();
    shape.resize(m, 0);
    // counts[i][r]: boxes labelled i+1 placed in row r
    let mut counts = vec![vec![0u64; m]; kappa.len()];
    place_label(0, 0, &kappa, &mut shape, &mut counts, &mut out);
    out
}

/// Places the boxes labelled `label + 1` row by row, starting at `row`.
fn place_label(
    label: usize,
    row: usize,
    kappa: &[u64],
    shape: &mut Vec<u64>,
    counts: &mut Vec<Vec<u64>>,
    out: &mut BTreeMap<Vec<u64>, i64>,
) {
    if label == kappa.len() {
        *out.entry(shape.clone()).or_insert(0) += 1;
        return;
    }
    let placed: u64 = counts[label][..row].iter().sum();
    let left = kappa[label] - placed;
    if row == shape.len() {
        if left == 0 {
            place_label(label + 1, 0, kappa, shape, counts, out);
        }
        return;
    }
    // horizontal strip: row r may grow up to the old length of row r − 1
    let room = if row == 0 {
        left
    } else {
        let before = shape[row - 1] - counts[label][row - 1];
        (before - shape[row]).min(left)
    };
    // lattice condition: label+1 in rows ≤ row never exceeds label in rows < row
    let bound = if label == 0 {
        room
    } else {
        let prev: u64 = counts[label - 1][..row].iter().sum();
        (prev.saturating_sub(placed)).min(room)
    };
    for a in 0..=bound {
        counts[label][row] = a;
        shape[row] += a;
        place_label(label, row + 1, kappa, shape, counts, out);
        shape[row] -= a;
    }
    counts[label][row] = 0;
}

/// Decomposes `V(μ) ⊗ V(ν)` for rational `GL_m` weights.
pub fn tensor_gl(mu: &[i64], nu: &[i64]) -> Result<VirtualChar<Vec<i64>>> {
    check_gl(mu)?;
    check_gl(nu)?;
    if mu.len() != nu.len() {
        return Err(Error::LengthMismatch { expected: mu.len(), got: nu.len() });
    }
    let m = mu.len();
    // twist both factors by a power of the determinant to get partitions
    let (cm, cn) = (mu[m - 1].min(0), nu[m - 1].min(0));
    let a: Vec<u64> = mu.iter().map(|&x| (x - cm) as u64).collect();
    let b: Vec<u64> = nu.iter().map(|&x| (x - cn) as u64).collect();
    // put the larger partition first; fewer labels to place
    let (big, small) = if a.iter().sum::<u64>() >= b.iter().sum::<u64>() { (a, b) } else { (b, a) };
    Ok(lr_product(&big, &small, m)
        .into_iter()
        .map(|(nu, c)| (nu.into_iter().map(|x| x as i64 + cm + cn).collect(), c))
        .collect())
}

/// A dominant weight of `F_λ = ∏ GL_{m_i}`: one `GL_{m_i}` weight per distinct
/// part size of `λ`, ordered by decreasing part size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FWeight {
    pub shape: Vec<usize>,
    pub blocks: Vec<Vec<i64>>,
}

impl FWeight {
    pub fn new(shape: Vec<usize>, blocks: Vec<Vec<i64>>) -> Result<FWeight> {
        let n = shape.iter().sum();
        partition::validate(&shape, n)?;
        let mults = partition::part_multiplicities(&shape);
        if mults.len() != blocks.len() || mults.iter().zip(&blocks).any(|((_, m), b)| *m != b.len()) {
            return Err(Error::ShapeMismatch(
                mults.iter().map(|&(_, m)| m).collect(),
                blocks.iter().map(Vec::len).collect(),
            ));
        }
        if let Some(b) = blocks.iter().find(|b| !is_gl_dominant(b)) {
            return Err(Error::NotDominant(b.clone()));
        }
        Ok(FWeight { shape, blocks })
    }

    pub fn zero(shape: &[usize]) -> FWeight {
        let blocks = partition::part_multiplicities(shape).into_iter().map(|(_, m)| vec![0; m]).collect();
        FWeight { shape: shape.to_vec(), blocks }
    }

    /// Cuts a row vector (one entry per row of the shape) into blocks.
    pub fn from_rows(shape: &[usize], rows: &[i64]) -> Result<FWeight> {
        if shape.len() != rows.len() {
            return Err(Error::LengthMismatch { expected: shape.len(), got: rows.len() });
        }
        let blocks = partition::equal_part_blocks(shape).into_iter().map(|r| rows[r].to_vec()).collect();
        FWeight::new(shape.to_vec(), blocks)
    }

    pub fn to_rows(&self) -> Vec<i64> {
        self.blocks.concat()
    }
}

/// Decomposes `V(a) ⊗ V(b)` for `F_λ`, factor by factor.
pub fn tensor_f(shape: &[usize], a: &FWeight, b: &FWeight) -> Result<VirtualChar<FWeight>> {
    for x in [a, b] {
        if x.shape != shape {
            return Err(Error::ShapeMismatch(shape.to_vec(), x.shape.clone()));
        }
    }
    let mut acc: Vec<(Vec<Vec<i64>>, i64)> = vec![(Vec::new(), 1)];
    for (x, y) in a.blocks.iter().zip(&b.blocks) {
        let factor = tensor_gl(x, y)?;
        acc = acc
            .into_iter()
            .flat_map(|(pre, c)| {
                factor.iter().map(move |(nu, d)| {
                    let mut v = pre.clone();
                    v.push(nu.clone());
                    (v, c * d)
                })
            })
            .collect();
    }
    let mut out = VirtualChar::new();
    for (blocks, c) in acc {
        add_term(&mut out, FWeight { shape: shape.to_vec(), blocks }, c);
    }
    Ok(out)
}

pub fn dim_f(x: &FWeight) -> Result<u128> {
    x.blocks.iter().map(|b| dim_gl(b)).product()
}

/// `ρ` is constant on every block of equal parts of `λ`.
pub fn is_determinantal(shape: &[usize], rho: &[i64]) -> Result<bool> {
    if shape.len() != rho.len() {
        return Err(Error::LengthMismatch { expected: shape.len(), got: rho.len() });
    }
    Ok(partition::equal_part_blocks(shape)
        .into_iter()
        .all(|r| rho[r].windows(2).all(|p| p[0] == p[1])))
}

pub fn format_weight(mu: &[i64]) -> String {
    mu.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_weight(text: &str) -> Result<Vec<i64>> {
    let t = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t.trim().is_empty() {
        return Err(Error::Parse("empty weight".into()));
    }
    t.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("weight entry {x:?}: {e}"))))
        .collect()
}
