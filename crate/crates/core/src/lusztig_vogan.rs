//! The Lusztig–Vogan bijection between dominant weights of `GL_n` and pairs
//! `(λ, dominant weight of F_λ)`, computed with the matrix-ball construction,
//! together with the integer tableaux whose entries give explicit preimages
//! of generators.

use serde::{Deserialize, Serialize};

use crate::affine_perm::AffinePerm;
use crate::ambc::{phi, psi};
use crate::error::{Error, Result};
use crate::partition;
use crate::rep_ring::{is_gl_dominant, FWeight};
use crate::tabloid::{is_block_dominant, rev_lambda, Tabloid};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LvPair {
    pub shape: Vec<usize>,
    pub weight_blocks: Vec<Vec<i64>>,
}

impl LvPair {
    pub fn weight(&self) -> Result<FWeight> {
        FWeight::new(self.shape.clone(), self.weight_blocks.clone())
    }
}

impl From<FWeight> for LvPair {
    fn from(f: FWeight) -> Self {
        LvPair { shape: f.shape, weight_blocks: f.blocks }
    }
}

/// `Θ₁(μ)`: the double coset of `w_μ` meets the canonical left cell of its
/// two-sided cell in the minimal representative, and `rev_λ(ρ)` is read off.
pub fn theta1(mu: &[i64]) -> Result<LvPair> {
    let w = AffinePerm::from_dominant_weight(mu)?.min_double_coset_rep();
    let t = phi(&w)?;
    let shape = t.shape();
    let can = Tabloid::canonical(&shape)?;
    if t.p != can || t.q != can {
        return Err(Error::Internal(format!(
            "minimal double coset representative {w} is not in the canonical intersection"
        )));
    }
    let rows = rev_lambda(&shape, &t.rho)?;
    let f = FWeight::from_rows(&shape, &rows).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(f.into())
}

/// `Θ₁⁻¹(λ, ρ)`: the block diagonals of `Ψ(T^can, T^can, rev_λ(ρ))`, sorted.
pub fn theta1_inverse(weight: &FWeight) -> Result<Vec<i64>> {
    let shape = &weight.shape;
    let rows = weight.to_rows();
    if !is_block_dominant(shape, &rows) {
        return Err(Error::NotDominant(rows));
    }
    let can = Tabloid::canonical(shape)?;
    let w = psi(&can, &can, &rev_lambda(shape, &rows)?)?;
    Ok(w.dominant_weight())
}

/// `𝔚_λ(0)`, row by row: column `j` holds `λ'_j − 1, λ'_j − 3, …, 1 − λ'_j`.
pub fn w_tableau_zero(shape: &[usize]) -> Result<Vec<Vec<i64>>> {
    partition::validate(shape, shape.iter().sum())?;
    let conj = partition::conjugate(shape);
    Ok(shape
        .iter()
        .enumerate()
        .map(|(i, &len)| (0..len).map(|j| conj[j] as i64 - 1 - 2 * i as i64).collect())
        .collect())
}

/// `𝔚_λ(r, s)`: the first `r` entries of the top row raised by a total of
/// `s`, each unit going to the leftmost smallest entry, which keeps the row
/// weakly decreasing and minimizes the sum of squares.
pub fn w_tableau(shape: &[usize], r: usize, s: u64) -> Result<Vec<Vec<i64>>> {
    if !shape.contains(&r) {
        return Err(Error::Precondition(format!("{r} is not a part of {shape:?}")));
    }
    let mut tab = w_tableau_zero(shape)?;
    let top = &mut tab[0][..r];
    for _ in 0..s {
        let min = *top.iter().min().expect("r ≥ 1");
        let i = top.iter().position(|&x| x == min).expect("minimum exists");
        top[i] += 1;
    }
    Ok(tab)
}

fn sorted_entries(tab: &[Vec<i64>]) -> Vec<i64> {
    let mut mu = tab.concat();
    mu.sort_unstable_by(|a, b| b.cmp(a));
    mu
}

pub fn mu_lambda_zero(shape: &[usize]) -> Result<Vec<i64>> {
    Ok(sorted_entries(&w_tableau_zero(shape)?))
}

pub fn mu_lambda(shape: &[usize], r: usize, s: u64) -> Result<Vec<i64>> {
    Ok(sorted_entries(&w_tableau(shape, r, s)?))
}

/// `ρ_λ(r, s)`: `(s, 0, …, 0)` on the factor of part size `r`, zero elsewhere.
pub fn rho_lambda(shape: &[usize], r: usize, s: i64) -> Result<FWeight> {
    let mut f = FWeight::zero(shape);
    let idx = partition::part_multiplicities(shape)
        .iter()
        .position(|&(p, _)| p == r)
        .ok_or_else(|| Error::Precondition(format!("{r} is not a part of {shape:?}")))?;
    f.blocks[idx][0] = s;
    Ok(f)
}

/// Validates a dominant `GL_n` weight.
pub fn check_dominant(mu: &[i64]) -> Result<()> {
    if mu.is_empty() || !is_gl_dominant(mu) {
        return Err(Error::NotDominant(mu.to_vec()));
    }
    Ok(())
}
