//! Integer partitions: validation, conjugates, equal-part blocks and enumeration.

use crate::error::{Error, Result};

/// Checks that `shape` is a partition (positive, weakly decreasing) of `n`.
pub fn validate(shape: &[usize], n: usize) -> Result<()> {
    let ok = shape.iter().all(|&p| p > 0)
        && shape.windows(2).all(|w| w[0] >= w[1])
        && shape.iter().sum::<usize>() == n;
    if ok {
        Ok(())
    } else {
        Err(Error::NotAPartition { shape: shape.to_vec(), n })
    }
}

/// The conjugate (transpose) partition.
pub fn conjugate(shape: &[usize]) -> Vec<usize> {
    let first = shape.first().copied().unwrap_or(0);
    (1..=first)
        .map(|j| shape.iter().filter(|&&p| p >= j).count())
        .collect()
}

/// Maximal runs of equal parts as half-open row ranges, top to bottom.
///
/// For `(2,2,1,1,1)` this is `[0..2, 2..5]`.
pub fn equal_part_blocks(shape: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=shape.len() {
        if i == shape.len() || shape[i] != shape[start] {
            blocks.push(start..i);
            start = i;
        }
    }
    blocks
}

/// Distinct part sizes in decreasing order, paired with their multiplicities.
pub fn part_multiplicities(shape: &[usize]) -> Vec<(usize, usize)> {
    equal_part_blocks(shape)
        .into_iter()
        .map(|r| (shape[r.start], r.len()))
        .collect()
}

/// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `n! / (λ₁! λ₂! ⋯)`, the number of row-standard tabloids of the shape.
pub fn multinomial(shape: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut placed: u128 = 0;
    for &p in shape {
        for k in 1..=p as u128 {
            placed += 1;
            acc = acc * placed / k;
        }
    }
    acc
}

pub fn parse_shape(text: &str) -> Result<Vec<usize>> {
    let trimmed = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if trimmed.trim().is_empty() {
        return Err(Error::Parse("empty shape".into()));
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("shape entry {t:?}: {e}")))
        })
        .collect()
}

pub fn format_shape(shape: &[usize]) -> String {
    shape.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}
