//! The main algorithms against their brute-force references.

use std::collections::HashSet;

use ambc::ambc::{channels, forward_step};
use ambc::cells::star_right;
use ambc::oracles::{brute_channels, brute_complete_stream_family, run_case, self_check_cases};
use ambc::partition;
use ambc::{phi, psi, AffinePerm, PartialPerm, Tabloid};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn random_affine(rng: &mut StdRng, n: usize, spread: i64) -> AffinePerm {
    let mut perm: Vec<i64> = (1..=n as i64).collect();
    perm.shuffle(rng);
    let mut win: Vec<i64> = perm.iter().map(|v| v + n as i64 * rng.gen_range(-spread..=spread)).collect();
    // keep some elements in the non-extended group, shift the rest
    if rng.gen_bool(0.5) {
        let excess: i64 = win.iter().sum::<i64>() - (n * (n + 1) / 2) as i64;
        win[0] -= excess.div_euclid(n as i64) * n as i64;
    }
    AffinePerm::new(win).unwrap()
}

fn random_partial(rng: &mut StdRng, n: usize) -> PartialPerm {
    let w = random_affine(rng, n, 2);
    let keep = rng.gen_range(0.3..1.0);
    let win = w.window().iter().map(|&v| rng.gen_bool(keep).then_some(v)).collect();
    PartialPerm::new(win).unwrap()
}

#[test]
fn channels_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let w = random_partial(&mut rng, n);
        if w.is_empty() {
            assert!(channels(&w).is_err());
            continue;
        }
        let fast: HashSet<_> = channels(&w).unwrap().into_iter().collect();
        let slow: HashSet<_> = brute_channels(&w).unwrap().into_iter().collect();
        assert_eq!(fast, slow, "{w}");
    }
}

#[test]
fn forward_steps_exhaust_a_permutation_by_shape() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let w = random_affine(&mut rng, n, 3);
        let shape = phi(&w).unwrap().shape();
        let mut x = PartialPerm::from(&w);
        let mut densities = Vec::new();
        while !x.is_empty() {
            let (next, c) = forward_step(&x).unwrap();
            densities.push(c.density());
            x = next;
        }
        // each step takes one period of its channel out of the ball set
        assert_eq!(densities.iter().sum::<usize>(), n, "{w}");
        assert_eq!(densities[0], shape[0], "{w}");
    }
}

#[test]
fn shapes_admit_complete_stream_families() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..60 {
        let n = rng.gen_range(1..=6);
        let w = random_affine(&mut rng, n, 1);
        let shape = phi(&w).unwrap().shape();
        assert!(!brute_complete_stream_family(&w, &shape).unwrap().is_empty(), "{w}");
    }
}

/// Row insertion, returning the row sets of the insertion and recording
/// tableaux.
fn robinson_schensted(w: &[i64]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut p: Vec<Vec<i64>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (pos, &v) in w.iter().enumerate() {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![pos + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(k) => {
                    std::mem::swap(&mut p[r][k], &mut x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(pos + 1);
                    break;
                }
            }
        }
    }
    let p = p.into_iter().map(|row| row.into_iter().map(|x| x as usize).collect()).collect();
    (p, q)
}

fn permutations(n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n as i64);
            out.push(q);
        }
    }
    out
}

#[test]
fn finite_permutations_follow_robinson_schensted() {
    for n in 1..=6 {
        for perm in permutations(n) {
            let t = phi(&AffinePerm::new(perm.clone()).unwrap()).unwrap();
            let (p, q) = robinson_schensted(&perm);
            let sorted = |rows: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
                rows.into_iter()
                    .map(|mut r| {
                        r.sort_unstable();
                        r
                    })
                    .collect()
            };
            assert_eq!(t.p.rows(), sorted(p).as_slice(), "{perm:?}");
            assert_eq!(t.q.rows(), sorted(q).as_slice(), "{perm:?}");
            assert!(t.rho.iter().all(|&r| r == 0), "{perm:?}");
        }
    }
}

/// A Knuth move at positions (i, i+1) need not swap i and i+1 in the
/// recording tabloid. The smallest case is already finite.
#[test]
fn knuth_move_can_swap_the_next_pair() {
    let w = AffinePerm::new(vec![1, 3, 2]).unwrap();
    let y = star_right(&w, 1).unwrap();
    assert_eq!(y.window(), &[3, 1, 2]);
    let q: Tabloid = "[[1,2],[3]]".parse().unwrap();
    assert_eq!(phi(&w).unwrap().q, q);
    assert_eq!(q.star(1), None);
    assert_eq!(phi(&y).unwrap().q, "[[1,3],[2]]".parse().unwrap());
    assert_eq!(q.star(2), Some("[[1,3],[2]]".parse().unwrap()));
}

#[test]
fn knuth_moves_preserve_the_insertion_tabloid() {
    for n in 3..=5 {
        for shape in partition::partitions(n) {
            let tabs = Tabloid::enumerate(&shape).unwrap();
            for p in &tabs {
                for q in &tabs {
                    let s = ambc::tabloid::offset_constants(p, q).unwrap();
                    let w = psi(p, q, &s).unwrap();
                    for i in 1..=n {
                        if let Some(y) = star_right(&w, i) {
                            let t = phi(&y).unwrap();
                            assert_eq!(&t.p, p, "{w} at {i}");
                            assert_eq!(y.right_descents(), t.q.tau());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn self_check_is_clean() {
    for case in self_check_cases(4) {
        for report in run_case(&case).unwrap() {
            assert!(report.pass, "{report}");
        }
    }
}
