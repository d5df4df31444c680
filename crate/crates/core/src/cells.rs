//! Kazhdan–Lusztig cell data read off from the forward construction, star
//! operations, and distinguished involutions.

use serde::{Deserialize, Serialize};

use crate::affine_perm::AffinePerm;
use crate::ambc::{phi, psi};
use crate::error::{Error, Result};
use crate::tabloid::{self, RowVector, Tabloid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

/// Names a cell: a two-sided cell by its shape, a left (right) cell also by
/// the tabloid `Q` (`P`) shared by its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellLabel {
    pub kind: CellKind,
    pub shape: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tabloid: Option<Tabloid>,
}

pub fn cell_shape(w: &AffinePerm) -> Result<Vec<usize>> {
    Ok(phi(w)?.shape())
}

/// The tabloid indexing the left cell of `w`, namely `Q(w)`.
pub fn left_cell(w: &AffinePerm) -> Result<Tabloid> {
    Ok(phi(w)?.q)
}

/// The tabloid indexing the right cell of `w`, namely `P(w)`.
pub fn right_cell(w: &AffinePerm) -> Result<Tabloid> {
    Ok(phi(w)?.p)
}

pub fn cell_label(w: &AffinePerm, kind: CellKind) -> Result<CellLabel> {
    let t = phi(w)?;
    let shape = t.shape();
    let tabloid = match kind {
        CellKind::Left => Some(t.q),
        CellKind::Right => Some(t.p),
        CellKind::TwoSided => None,
    };
    Ok(CellLabel { kind, shape, tabloid })
}

fn strictly_between(v: i64, a: i64, b: i64) -> bool {
    a.min(b) < v && v < a.max(b)
}

/// The right star operation `w ↦ w*` for `* ∼ i` (a residue in `1..=n`),
/// or `None` where it is undefined. Requires `n ≥ 3`.
pub fn star_right(w: &AffinePerm, i: usize) -> Option<AffinePerm> {
    let n = w.n();
    if n < 3 || i == 0 || i > n {
        return None;
    }
    let ii = i as i64;
    let (a, b, c, d) = (w.value(ii - 1), w.value(ii), w.value(ii + 1), w.value(ii + 2));
    if !strictly_between(a, b, c) && !strictly_between(d, b, c) {
        return None;
    }
    let mut win = w.window().to_vec();
    if i < n {
        win.swap(i - 1, i);
    } else {
        win[n - 1] = c;
        win[0] = b - n as i64;
    }
    Some(AffinePerm::new(win).expect("swapping two positions keeps a permutation"))
}

/// The left star operation `w ↦ *w`, conjugated through the inverse.
pub fn star_left(w: &AffinePerm, i: usize) -> Option<AffinePerm> {
    star_right(&w.inverse(), i).map(|x| x.inverse())
}

/// `w` is a distinguished involution iff `Φ(w) = (T, T, 0)`.
pub fn is_distinguished(w: &AffinePerm) -> Result<bool> {
    let t = phi(w)?;
    Ok(t.p == t.q && t.rho.iter().all(|&r| r == 0))
}

/// `{Ψ(T, T, 0)}` over all tabloids `T` of the shape.
pub fn distinguished_involutions(shape: &[usize]) -> Result<Vec<AffinePerm>> {
    let zero = vec![0; shape.len()];
    Tabloid::enumerate(shape)?
        .iter()
        .map(|t| psi(t, t, &zero))
        .collect()
}

/// Xi's weight of an element of the intersection of the anti-canonical left
/// cell with its inverse, read as `rev_λ(ρ(w))`.
pub fn xi_epsilon(w: &AffinePerm) -> Result<RowVector> {
    let t = phi(w)?;
    let shape = t.shape();
    let an = Tabloid::anticanonical(&shape)?;
    if t.p != an || t.q != an {
        return Err(Error::Precondition(format!(
            "{w} is not in the anti-canonical intersection of its two-sided cell"
        )));
    }
    tabloid::rev_lambda(&shape, &t.rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    fn w(v: &[i64]) -> AffinePerm {
        AffinePerm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shapes_of_special_elements() {
        assert_eq!(cell_shape(&AffinePerm::identity(6)).unwrap(), vec![6]);
        for shape in partition::partitions(6) {
            let w0 = AffinePerm::longest_parabolic(&shape, 6).unwrap();
            assert_eq!(cell_shape(&w0).unwrap(), shape);
        }
        assert_eq!(cell_shape(&w(&[-9, -8, -7, 9, 10, 11, 36])).unwrap(), vec![3, 3, 1]);
    }

    #[test]
    fn star_of_worked_example() {
        let x = w(&[-1, 3, 10, -5, 14, -3, 18, 7, 2]);
        let xs = star_right(&x, 9).unwrap();
        assert_eq!(xs, w(&[-7, 3, 10, -5, 14, -3, 18, 7, 8]));
        assert_eq!(star_right(&xs, 9).unwrap(), x);
        let t = phi(&xs).unwrap();
        assert_eq!(t.q, "[[3,5,7],[2,8,9],[1,4,6]]".parse().unwrap());
        assert_eq!(t.rho, vec![0, 0, 0]);
    }

    #[test]
    fn identity_has_no_stars() {
        let id = AffinePerm::identity(5);
        assert!((1..=5).all(|i| star_right(&id, i).is_none() && star_left(&id, i).is_none()));
    }

    #[test]
    fn star_definedness_follows_tau() {
        let x = w(&[3, 7, 14, 2, 18, 4, 19, 8, 6]);
        let t = phi(&x).unwrap();
        for i in 1..=9 {
            assert_eq!(star_right(&x, i).is_some(), t.q.star(i).is_some(), "right {i}");
            assert_eq!(star_left(&x, i).is_some(), t.p.star(i).is_some(), "left {i}");
        }
    }

    #[test]
    fn distinguished_examples() {
        assert!(is_distinguished(&w(&[-3, 5, 3, 7, 2, 10, 4, 8, 9])).unwrap());
        assert!(!is_distinguished(&AffinePerm::omega(4)).unwrap());
        // all involutions of the finite symmetric group
        let mut perm: Vec<i64> = (1..=4).collect();
        loop {
            let x = w(&perm);
            if x.is_involution() {
                assert!(is_distinguished(&x).unwrap(), "{x}");
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }

    fn next_permutation(v: &mut [i64]) -> bool {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn distinguished_involution_sets() {
        assert_eq!(distinguished_involutions(&[5]).unwrap(), vec![AffinePerm::identity(5)]);
        let ones = distinguished_involutions(&[1, 1, 1, 1]).unwrap();
        assert_eq!(ones.len(), 24);
        assert!(ones.contains(&AffinePerm::longest(4)));
        for x in distinguished_involutions(&[3, 2, 1]).unwrap() {
            assert!(x.is_involution());
        }
    }

    #[test]
    fn epsilon_of_parabolic_longest_and_shifts() {
        for shape in partition::partitions(5) {
            let w0 = AffinePerm::longest_parabolic(&shape, 5).unwrap();
            assert_eq!(xi_epsilon(&w0).unwrap(), vec![0; shape.len()]);
        }
        for d in -3..=3 {
            assert_eq!(xi_epsilon(&AffinePerm::omega_pow(4, d)).unwrap(), vec![d]);
        }
        assert!(xi_epsilon(&w(&[3, 7, 14, 2, 18, 4, 19, 8, 6])).is_err());
    }

    #[test]
    fn canonical_left_cells_have_small_descents() {
        for shape in partition::partitions(5) {
            let can = Tabloid::canonical(&shape).unwrap();
            for p in Tabloid::enumerate(&shape).unwrap() {
                let x = psi(&p, &can, &crate::tabloid::offset_constants(&p, &can).unwrap()).unwrap();
                assert_eq!(left_cell(&x).unwrap(), can);
                assert!(x.right_descents().iter().all(|&i| i == 5));
            }
        }
    }
}
