//! Exponential-time reference implementations used to cross-check the main
//! algorithms. Nothing here calls into the code it is meant to verify.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::affine_perm::{AffinePerm, Ball, PartialPerm};
use crate::ambc::Stream;
use crate::error::{Error, Result};
use crate::partition;
use crate::rep_ring::{add_term, VirtualChar};

/// One differential comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl OracleReport {
    pub fn compare<T: PartialEq + fmt::Debug>(case: impl Into<String>, expected: &T, actual: &T) -> Self {
        OracleReport {
            case: case.into(),
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
            pass: expected == actual,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "PASS {}", self.case)
        } else {
            write!(f, "FAIL {}: expected {}, got {}", self.case, self.expected, self.actual)
        }
    }
}

pub const MAX_CHANNEL_N: usize = 8;
pub const MAX_FAMILY_N: usize = 10;

/// Window balls indexed by the subset mask bit of their row.
fn window_balls(w: &PartialPerm) -> Vec<Option<Ball>> {
    (1..=w.n() as i64).map(|x| w.get(x).map(|y| Ball::new(x, y))).collect()
}

/// Every pair of balls drawn from the translates of `set` is comparable in
/// the northwest order or equal.
fn is_chain(set: &[Ball], n: usize) -> bool {
    let ni = n as i64;
    set.iter().all(|a| {
        set.iter().all(|b| {
            (-2..=2).all(|k| {
                let c = Ball::new(b.x + k * ni, b.y + k * ni);
                *a == c || a.is_strictly_nw_of(c) || c.is_strictly_nw_of(*a)
            })
        })
    })
}

/// All subsets of occupied rows whose balls form a periodic chain, as masks.
fn chain_masks(balls: &[Option<Ball>], n: usize) -> Vec<u32> {
    let occupied: u32 = balls
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_some())
        .map(|(i, _)| 1u32 << i)
        .sum();
    (1u32..1 << n)
        .filter(|&m| m & !occupied == 0)
        .filter(|&m| {
            let set: Vec<Ball> = (0..n).filter(|i| m >> i & 1 == 1).filter_map(|i| balls[i]).collect();
            is_chain(&set, n)
        })
        .collect()
}

fn stream_of(mask: u32, balls: &[Option<Ball>], n: usize) -> Result<Stream> {
    Stream::from_balls(n, (0..n).filter(|i| mask >> i & 1 == 1).filter_map(|i| balls[i]))
}

/// Channels by exhaustive subset search: the periodic chains of largest size.
pub fn brute_channels(w: &PartialPerm) -> Result<Vec<Stream>> {
    let n = w.n();
    if n > MAX_CHANNEL_N {
        return Err(Error::Precondition(format!("brute_channels needs n ≤ {MAX_CHANNEL_N}, got {n}")));
    }
    let balls = window_balls(w);
    let masks = chain_masks(&balls, n);
    let best = masks.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    masks
        .into_iter()
        .filter(|m| m.count_ones() == best)
        .map(|m| stream_of(m, &balls, n))
        .collect()
}

/// All ways to split the balls of `w` into disjoint streams whose densities
/// are the parts of `shape`. Each family is listed once, its streams ordered
/// by the smallest row they contain.
pub fn brute_complete_stream_family(w: &AffinePerm, shape: &[usize]) -> Result<Vec<Vec<Stream>>> {
    let n = w.n();
    if n > MAX_FAMILY_N {
        return Err(Error::Precondition(format!(
            "brute_complete_stream_family needs n ≤ {MAX_FAMILY_N}, got {n}"
        )));
    }
    partition::validate(shape, n)?;
    let pp = PartialPerm::from(w);
    let balls = window_balls(&pp);
    let masks = chain_masks(&balls, n);
    let mut remaining: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in shape {
        *remaining.entry(p).or_default() += 1;
    }
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    cover((1u32 << n) - 1, &masks, &mut remaining, &mut chosen, &mut found);
    found
        .into_iter()
        .map(|fam| fam.into_iter().map(|m| stream_of(m, &balls, n)).collect())
        .collect()
}

fn cover(
    left: u32,
    masks: &[u32],
    remaining: &mut BTreeMap<usize, usize>,
    chosen: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) {
    if left == 0 {
        found.push(chosen.clone());
        return;
    }
    let low = left & left.wrapping_neg();
    for &m in masks {
        let size = m.count_ones() as usize;
        if m & low == 0 || m & !left != 0 || remaining.get(&size).copied().unwrap_or(0) == 0 {
            continue;
        }
        *remaining.get_mut(&size).unwrap() -= 1;
        chosen.push(m);
        cover(left & !m, masks, remaining, chosen, found);
        chosen.pop();
        *remaining.get_mut(&size).unwrap() += 1;
    }
}

/// Altitudes of a family listed by decreasing density, and by decreasing
/// altitude among streams of equal density.
pub fn family_epsilon(family: &[Stream]) -> Vec<i64> {
    let mut keyed: Vec<(usize, i64)> = family.iter().map(|s| (s.density(), s.altitude())).collect();
    keyed.sort_unstable_by(|a, b| b.cmp(a));
    keyed.into_iter().map(|(_, a)| a).collect()
}

pub const MAX_SCHUR_M: usize = 3;
pub const MAX_SCHUR_ENTRY: i64 = 12;

type Poly = BTreeMap<Vec<i64>, i64>;

/// Exponent vectors of the semistandard tableaux of a partition shape with
/// entries in `1..=m`.
fn schur_monomials(lambda: &[i64], m: usize) -> Poly {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0usize; lambda.first().copied().unwrap_or(0) as usize]; lambda.len()];
    let mut out = Poly::new();
    fill(&cells, 0, m, &mut grid, &mut out);
    out
}

fn fill(cells: &[(usize, usize)], k: usize, m: usize, grid: &mut [Vec<usize>], out: &mut Poly) {
    let Some(&(r, c)) = cells.get(k) else {
        let mut e = vec![0i64; m];
        for row in grid.iter() {
            for &v in row.iter().filter(|&&v| v > 0) {
                e[v - 1] += 1;
            }
        }
        *out.entry(e).or_default() += 1;
        return;
    };
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=m {
        grid[r][c] = v;
        fill(cells, k + 1, m, grid, out);
    }
    grid[r][c] = 0;
}

/// Laurent–Schur polynomial of a dominant `GL_m` weight.
fn laurent_schur(mu: &[i64]) -> Poly {
    let m = mu.len();
    let shift = mu[m - 1];
    let lambda: Vec<i64> = mu.iter().map(|x| x - shift).filter(|&x| x > 0).collect();
    schur_monomials(&lambda, m)
        .into_iter()
        .map(|(e, c)| (e.into_iter().map(|x| x + shift).collect(), c))
        .collect()
}

/// `V(μ) ⊗ V(ν)` for `GL_m` by multiplying characters monomial by monomial
/// and peeling off Schur functions from the lexicographically top term.
pub fn brute_schur_product(mu: &[i64], nu: &[i64], m: usize) -> Result<VirtualChar<Vec<i64>>> {
    if m == 0 || m > MAX_SCHUR_M {
        return Err(Error::Precondition(format!("brute_schur_product needs 1 ≤ m ≤ {MAX_SCHUR_M}")));
    }
    for x in [mu, nu] {
        if x.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: x.len() });
        }
        if x.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::NotDominant(x.to_vec()));
        }
        if x.iter().any(|v| v.abs() > MAX_SCHUR_ENTRY) {
            return Err(Error::Precondition(format!("entries of {x:?} exceed {MAX_SCHUR_ENTRY}")));
        }
    }
    let (a, b) = (laurent_schur(mu), laurent_schur(nu));
    let mut prod = Poly::new();
    for (ea, ca) in &a {
        for (eb, cb) in &b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut prod, e, ca * cb);
        }
    }
    let mut out = VirtualChar::new();
    while let Some((top, &c)) = prod.iter().next_back() {
        let top = top.clone();
        if top.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Internal(format!("leading exponent {top:?} is not dominant")));
        }
        for (e, d) in laurent_schur(&top) {
            add_term(&mut prod, e, -c * d);
        }
        add_term(&mut out, top, c);
    }
    Ok(out)
}

/// One unit of work in the self-check suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfCheckCase {
    /// Channels and round trip of one window.
    Window(AffinePerm),
    /// Xi's weight of `Ψ(T^an, T^an, ρ)` against every complete stream family.
    Epsilon { shape: Vec<usize>, rho: Vec<i64> },
    /// One product of `GL_m` irreducibles.
    Schur { mu: Vec<i64>, nu: Vec<i64> },
}

fn all_perms(n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n as i64);
            out.push(q);
        }
    }
    out
}

fn int_box(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// The deterministic self-check suite up to period `max_n`.
pub fn self_check_cases(max_n: usize) -> Vec<SelfCheckCase> {
    let mut cases = Vec::new();
    for n in 1..=max_n.min(MAX_CHANNEL_N) {
        for perm in all_perms(n) {
            for lift in int_box(n, 0, 1) {
                let win = perm.iter().zip(&lift).map(|(v, k)| v + k * n as i64).collect();
                cases.push(SelfCheckCase::Window(AffinePerm::new(win).expect("lifted permutation")));
            }
        }
    }
    for n in 1..=max_n.min(MAX_FAMILY_N) {
        for shape in partition::partitions(n) {
            for rho in int_box(shape.len(), -1, 1) {
                cases.push(SelfCheckCase::Epsilon { shape: shape.clone(), rho });
            }
        }
    }
    for m in 1..=max_n.min(MAX_SCHUR_M) {
        let weights: Vec<Vec<i64>> = int_box(m, -1, 2).into_iter().filter(|v| v.windows(2).all(|p| p[0] >= p[1])).collect();
        for mu in &weights {
            for nu in &weights {
                cases.push(SelfCheckCase::Schur { mu: mu.clone(), nu: nu.clone() });
            }
        }
    }
    cases
}

fn sorted_streams(mut v: Vec<Stream>) -> Vec<Vec<Ball>> {
    let mut out: Vec<Vec<Ball>> = v.drain(..).map(|s| s.balls().to_vec()).collect();
    out.sort();
    out
}

/// Runs one case. Cases outside the domain of the check (for example a
/// non-dominant `ρ`) produce no reports.
pub fn run_case(case: &SelfCheckCase) -> Result<Vec<OracleReport>> {
    use crate::{ambc, cells, rep_ring, tabloid::Tabloid};
    match case {
        SelfCheckCase::Window(w) => {
            let pp = PartialPerm::from(w);
            let main = sorted_streams(ambc::channels(&pp)?);
            let brute = sorted_streams(brute_channels(&pp)?);
            let back = ambc::psi_triple(&ambc::phi(w)?)?;
            Ok(vec![
                OracleReport::compare(format!("channels {w}"), &brute, &main),
                OracleReport::compare(format!("round trip {w}"), w, &back),
            ])
        }
        SelfCheckCase::Epsilon { shape, rho } => {
            let an = Tabloid::anticanonical(shape)?;
            let t = ambc::DomTriple::new(an.clone(), an, rho.clone())?;
            if !t.is_dominant() {
                return Ok(Vec::new());
            }
            let w = ambc::psi_triple(&t)?;
            let eps = cells::xi_epsilon(&w)?;
            let mut fams: Vec<Vec<i64>> =
                brute_complete_stream_family(&w, shape)?.iter().map(|f| family_epsilon(f)).collect();
            fams.sort();
            fams.dedup();
            Ok(vec![OracleReport::compare(format!("epsilon {w}"), &vec![eps], &fams)])
        }
        SelfCheckCase::Schur { mu, nu } => {
            let main = rep_ring::tensor_gl(mu, nu)?;
            let brute = brute_schur_product(mu, nu, mu.len())?;
            Ok(vec![OracleReport::compare(
                format!("schur {} x {}", rep_ring::format_weight(mu), rep_ring::format_weight(nu)),
                &brute,
                &main,
            )])
        }
    }
}
