//! The affine matrix-ball construction.
//!
//! [`phi`] peels streams off a permutation one forward step at a time and
//! records their residue sets and altitudes; [`psi`] rebuilds a permutation
//! from such data by backward steps.

use serde::{Deserialize, Serialize};

use crate::affine_perm::{max_shift_nw, min_shift_se, residue, AffinePerm, Ball, PartialPerm};
use crate::error::{Error, Result};
use crate::tabloid::{self, RowVector, Tabloid};

/// A periodic northwest chain of balls, stored by its window balls sorted by `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stream {
    n: usize,
    balls: Vec<Ball>,
}

impl Stream {
    /// Builds a stream from balls in any translate; fails unless they form a
    /// periodic chain with distinct residues.
    pub fn from_balls(n: usize, balls: impl IntoIterator<Item = Ball>) -> Result<Stream> {
        let mut balls: Vec<Ball> = balls.into_iter().map(|b| b.to_window(n)).collect();
        balls.sort_unstable();
        let pp = PartialPerm::from_balls(n, balls.iter().copied())
            .map_err(|e| Error::Stream(e.to_string()))?;
        debug_assert_eq!(pp.size(), balls.len());
        if balls.is_empty() {
            return Err(Error::Stream("a stream needs at least one ball".into()));
        }
        if !is_periodic_chain(&balls, n) {
            return Err(Error::Stream(format!("balls {balls:?} do not form a chain")));
        }
        Ok(Stream { n, balls })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Window balls in increasing `x`.
    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn density(&self) -> usize {
        self.balls.len()
    }

    /// Residues of the `x` coordinates, increasing.
    pub fn domain(&self) -> Vec<usize> {
        self.balls.iter().map(|b| b.x as usize).collect()
    }

    /// Residues of the `y` coordinates, increasing.
    pub fn codomain(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.balls.iter().map(|b| residue(b.y, self.n)).collect();
        c.sort_unstable();
        c
    }

    /// `Σ (⌈S(x)/n⌉ − 1)` over the window.
    pub fn altitude(&self) -> i64 {
        self.balls.iter().map(|b| b.block_diagonal(self.n)).sum()
    }

    /// Label of any ball of the stream under the proper numbering that gives
    /// the first window ball the label `anchor`.
    fn proper_label(&self, anchor: i64, b: Ball) -> Option<i64> {
        let w = b.to_window(self.n);
        let j = self.balls.iter().position(|&s| s == w)?;
        let k = (b.x - w.x) / self.n as i64;
        Some(anchor + j as i64 + k * self.density() as i64)
    }

    /// The ball carrying `label` under the proper numbering anchored at `anchor`.
    fn ball_with_label(&self, anchor: i64, label: i64) -> Ball {
        let dens = self.density() as i64;
        let off = label - anchor;
        let j = off.rem_euclid(dens) as usize;
        self.balls[j].translate(off.div_euclid(dens), self.n)
    }
}

/// Window balls sorted by `x` form a periodic chain.
fn is_periodic_chain(balls: &[Ball], n: usize) -> bool {
    balls.windows(2).all(|p| p[0].y < p[1].y)
        && match (balls.first(), balls.last()) {
            (Some(f), Some(l)) => l.y < f.y + n as i64,
            _ => true,
        }
}

/// The stream matching `a + nℤ` monotonically onto `b + nℤ` with altitude `alt`.
pub fn make_stream(a: &[usize], b: &[usize], alt: i64, n: usize) -> Result<Stream> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
    }
    if a.is_empty() {
        return Err(Error::Stream("empty residue sets".into()));
    }
    let check = |set: &[usize]| -> Result<Vec<usize>> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() || sorted.iter().any(|&r| r == 0 || r > n) {
            return Err(Error::Stream(format!("{set:?} is not a set of residues in 1..={n}")));
        }
        Ok(sorted)
    };
    let (a, b) = (check(a)?, check(b)?);
    let m = a.len() as i64;
    let balls = a.iter().enumerate().map(|(i, &x)| {
        let idx = i as i64 + alt;
        let y = b[idx.rem_euclid(m) as usize] as i64 + n as i64 * idx.div_euclid(m);
        Ball::new(x as i64, y)
    });
    Stream::from_balls(n, balls)
}

/// Labels on the window balls of a partial permutation, extended periodically
/// by `label(b + (n,n)) = label(b) + density`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numbering {
    n: usize,
    density: usize,
    labels: Vec<Option<i64>>,
}

impl Numbering {
    pub fn density(&self) -> usize {
        self.density
    }

    /// Labels indexed by window position (`None` at holes).
    pub fn window_labels(&self) -> &[Option<i64>] {
        &self.labels
    }

    /// The label of any translate of a ball of the numbered permutation.
    pub fn label(&self, b: Ball) -> Option<i64> {
        let w = b.to_window(self.n);
        let k = (b.x - w.x) / self.n as i64;
        self.labels[w.x as usize - 1].map(|d| d + k * self.density as i64)
    }
}

/// Longest periodic chain through the balls, i.e. the channel density.
pub fn max_density(w: &PartialPerm) -> usize {
    let balls = w.balls();
    let n = w.n() as i64;
    let mut best = 0;
    let mut len = vec![0usize; balls.len()];
    for s in 0..balls.len() {
        let cap = balls[s].y + n;
        for t in s..balls.len() {
            len[t] = 0;
            if t == s {
                len[t] = 1;
                continue;
            }
            if balls[t].y <= balls[s].y || balls[t].y >= cap {
                continue;
            }
            len[t] = (s..t)
                .filter(|&u| len[u] > 0 && balls[u].y < balls[t].y)
                .map(|u| len[u] + 1)
                .max()
                .unwrap_or(0);
        }
        best = best.max(len[s..].iter().copied().max().unwrap_or(0));
    }
    best
}

/// All channels (maximum-density substreams) of `w`.
pub fn channels(w: &PartialPerm) -> Result<Vec<Stream>> {
    let balls = w.balls();
    if balls.is_empty() {
        return Err(Error::Precondition("channels of an empty partial permutation".into()));
    }
    let n = w.n();
    let b = balls.len();
    // reach[s * b + t]: longest chain from t onwards whose balls lie strictly
    // between balls[s].y and balls[s].y + n (with t == s allowed)
    let mut reach = vec![0usize; b * b];
    for s in 0..b {
        let cap = balls[s].y + n as i64;
        let row = &mut reach[s * b..(s + 1) * b];
        for t in (s..b).rev() {
            if t != s && (balls[t].y <= balls[s].y || balls[t].y >= cap) {
                continue;
            }
            row[t] = 1 + (t + 1..b)
                .filter(|&u| row[u] > 0 && balls[u].y > balls[t].y)
                .map(|u| row[u])
                .max()
                .unwrap_or(0);
        }
    }
    let target = (0..b).map(|s| reach[s * b + s]).max().expect("nonempty");
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(target);
    for s in 0..b {
        let row = &reach[s * b..(s + 1) * b];
        if row[s] < target {
            continue;
        }
        chain.clear();
        chain.push(s);
        collect_chains(&balls, row, target, &mut chain, &mut |c| {
            out.push(Stream { n, balls: c.iter().map(|&i| balls[i]).collect() });
        });
    }
    Ok(out)
}

fn collect_chains(
    balls: &[Ball],
    reach: &[usize],
    target: usize,
    chain: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if chain.len() == target {
        emit(chain);
        return;
    }
    let last = *chain.last().expect("chain starts nonempty");
    let need = target - chain.len();
    for u in last + 1..balls.len() {
        if reach[u] == need && balls[u].y > balls[last].y {
            chain.push(u);
            collect_chains(balls, reach, target, chain, emit);
            chain.pop();
        }
    }
}

/// True when every ball of `c` has some ball of `other` weakly northeast of it.
fn dominated_from_southwest(c: &Stream, other: &Stream, n: usize) -> bool {
    let ni = n as i64;
    c.balls.iter().all(|b| {
        other.balls.iter().any(|o| {
            // some k with b.x ≥ o.x + kn and b.y ≤ o.y + kn
            crate::affine_perm::div_ceil(b.y - o.y, ni) <= crate::affine_perm::div_floor(b.x - o.x, ni)
        })
    })
}

/// Picks the southwest channel out of a full channel list.
pub fn select_southwest(chans: &[Stream], n: usize) -> Result<Stream> {
    let mut found = chans
        .iter()
        .filter(|c| chans.iter().all(|o| dominated_from_southwest(c, o, n)));
    match (found.next(), found.next()) {
        (Some(c), None) => Ok(c.clone()),
        (None, _) => Err(Error::Internal("no southwest channel found".into())),
        (Some(_), Some(_)) => Err(Error::Internal("southwest channel is not unique".into())),
    }
}

pub fn southwest_channel(w: &PartialPerm) -> Result<Stream> {
    select_southwest(&channels(w)?, w.n())
}

/// The channel numbering of `w` relative to its channel `c`: the proper
/// numbering of `c` (first window ball labelled `1`) pushed along reverse
/// paths, taking maxima.
pub fn channel_numbering(w: &PartialPerm, c: &Stream) -> Result<Numbering> {
    let n = w.n();
    if c.n != n {
        return Err(Error::PeriodMismatch(n, c.n));
    }
    if c.density() != max_density(w) || c.balls.iter().any(|b| w.get(b.x) != Some(b.y)) {
        return Err(Error::Precondition(format!("{c:?} is not a channel of {w}")));
    }
    channel_numbering_unchecked(w, c)
}

fn channel_numbering_unchecked(w: &PartialPerm, c: &Stream) -> Result<Numbering> {
    let n = w.n();
    let balls = w.balls();
    let dens = c.density();
    let mut d: Vec<Option<i64>> = balls.iter().map(|&b| c.proper_label(1, b)).collect();
    let dn = dens as i64;
    let rounds = 2 * balls.len() + 5;
    for _ in 0..rounds {
        let mut changed = false;
        for i in 0..balls.len() {
            let best = (0..balls.len())
                .filter_map(|j| d[j].map(|dj| dj + max_shift_nw(balls[i], balls[j], n) * dn + 1))
                .max();
            if let Some(v) = best {
                if d[i].map_or(true, |cur| v > cur) {
                    d[i] = Some(v);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(to_numbering(w, &balls, d, dens));
        }
    }
    Err(Error::Internal(format!("channel numbering of {w} does not stabilize")))
}

fn to_numbering(w: &PartialPerm, balls: &[Ball], d: Vec<Option<i64>>, density: usize) -> Numbering {
    let mut labels = vec![None; w.n()];
    for (b, v) in balls.iter().zip(d) {
        labels[b.x as usize - 1] = v;
    }
    Numbering { n: w.n(), density, labels }
}

/// Groups the (translated) balls of `w` carrying each label in
/// `first..first + density`, every group sorted by decreasing `x`.
fn label_classes(w: &PartialPerm, num: &Numbering, first: i64) -> Vec<Vec<Ball>> {
    let dn = num.density as i64;
    let mut classes = vec![Vec::new(); num.density];
    for b in w.balls() {
        let d = num.label(b).expect("every ball is numbered");
        let k = (first - d).div_euclid(dn) + i64::from((first - d).rem_euclid(dn) != 0);
        // translate so that the label lands in [first, first + dn)
        let m = d + k * dn;
        classes[(m - first) as usize].push(b.translate(k, w.n()));
    }
    for c in &mut classes {
        c.sort_unstable_by(|a, b| b.x.cmp(&a.x));
    }
    classes
}

/// One forward step with respect to channel `c`.
pub fn forward_step_with(w: &PartialPerm, c: &Stream) -> Result<(PartialPerm, Stream)> {
    forward_step_numbered(w, &channel_numbering(w, c)?)
}

fn forward_step_numbered(w: &PartialPerm, num: &Numbering) -> Result<(PartialPerm, Stream)> {
    let n = w.n();
    let mut outer = Vec::new();
    let mut stream = Vec::with_capacity(num.density);
    for zig in label_classes(w, num, 1) {
        if zig.is_empty() {
            return Err(Error::Internal("a label class of the channel numbering is empty".into()));
        }
        if zig.windows(2).any(|p| p[0].y >= p[1].y) {
            return Err(Error::Internal(format!("zigzag {zig:?} is not a southwest chain")));
        }
        let k = zig.len();
        outer.extend((0..k - 1).map(|i| Ball::new(zig[i].x, zig[i + 1].y)));
        stream.push(Ball::new(zig[k - 1].x, zig[0].y));
    }
    let fw = PartialPerm::from_balls(n, outer).map_err(|e| Error::Internal(e.to_string()))?;
    let st = Stream::from_balls(n, stream).map_err(|e| Error::Internal(e.to_string()))?;
    Ok((fw, st))
}

/// One forward step with respect to the southwest channel.
pub fn forward_step(w: &PartialPerm) -> Result<(PartialPerm, Stream)> {
    // the southwest channel is a channel by construction
    let c = southwest_channel(w)?;
    forward_step_numbered(w, &channel_numbering_unchecked(w, &c)?)
}

/// The image `(P, Q, ρ)` of the forward construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomTriple {
    pub p: Tabloid,
    pub q: Tabloid,
    pub rho: RowVector,
}

impl DomTriple {
    pub fn new(p: Tabloid, q: Tabloid, rho: RowVector) -> Result<DomTriple> {
        let (sp, sq) = (p.shape(), q.shape());
        if sp != sq {
            return Err(Error::ShapeMismatch(sp, sq));
        }
        if rho.len() != sp.len() {
            return Err(Error::LengthMismatch { expected: sp.len(), got: rho.len() });
        }
        if p.n() != q.n() {
            return Err(Error::PeriodMismatch(p.n(), q.n()));
        }
        Ok(DomTriple { p, q, rho })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.p.shape()
    }

    /// `ρ − s_{P,Q}`.
    pub fn rho_minus_offsets(&self) -> RowVector {
        let s = tabloid::offset_constants(&self.p, &self.q).expect("shapes agree");
        self.rho.iter().zip(&s).map(|(r, s)| r - s).collect()
    }

    pub fn is_dominant(&self) -> bool {
        tabloid::is_antidominant(&self.shape(), &self.rho_minus_offsets())
    }
}

/// The forward construction `Φ(w) = (P, Q, ρ)`.
pub fn phi(w: &AffinePerm) -> Result<DomTriple> {
    let n = w.n();
    let mut cur = PartialPerm::from(w);
    let mut streams = Vec::new();
    while !cur.is_empty() {
        if streams.len() == n {
            return Err(Error::Internal(format!("forward construction of {w} exceeds {n} steps")));
        }
        let (next, st) = forward_step(&cur)?;
        if next.size() + st.density() != cur.size() {
            return Err(Error::Internal("forward step lost balls".into()));
        }
        streams.push(st);
        cur = next;
    }
    // Values of the streams record the left-hand tabloid P, positions the
    // right-hand tabloid Q.
    let p_rows = streams.iter().map(Stream::codomain).collect();
    let q_rows = streams.iter().map(Stream::domain).collect();
    let rho = streams.iter().map(Stream::altitude).collect();
    let p = Tabloid::new(p_rows).map_err(|e| Error::Internal(e.to_string()))?;
    let q = Tabloid::new(q_rows).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(DomTriple { p, q, rho })
}

/// True when `s` can be fed to a backward step on `w`.
pub fn is_compatible(w: &PartialPerm, s: &Stream) -> bool {
    let n = w.n();
    if s.n != n {
        return false;
    }
    let mut ys = vec![false; n + 1];
    for &y in w.window().iter().flatten() {
        ys[residue(y, n)] = true;
    }
    let disjoint_x = s.balls.iter().all(|b| w.get(b.x).is_none());
    let disjoint_y = s.balls.iter().all(|b| !std::mem::replace(&mut ys[residue(b.y, n)], true));
    disjoint_x && disjoint_y && (w.is_empty() || s.density() >= max_density(w))
}

fn check_compatible(w: &PartialPerm, s: &Stream) -> Result<()> {
    if is_compatible(w, s) {
        Ok(())
    } else {
        Err(Error::Stream(format!("stream {:?} is not compatible with {w}", s.balls)))
    }
}

/// Initial labels of the backward numbering: for each ball, the largest
/// label of a stream ball strictly northwest of it.
fn backward_start(w: &PartialPerm, s: &Stream, anchor: i64) -> Vec<i64> {
    let n = w.n();
    let dn = s.density() as i64;
    w.balls()
        .iter()
        .map(|&b| {
            s.balls
                .iter()
                .enumerate()
                .map(|(j, &sb)| anchor + j as i64 + max_shift_nw(b, sb, n) * dn)
                .max()
                .expect("streams are nonempty")
        })
        .collect()
}

/// The backward numbering of `w` relative to the stream `s`, whose proper
/// numbering labels its first window ball `anchor`.
///
/// Balls are lowered one unit at a time until the labels strictly increase
/// along northwest chains; the result is the largest such numbering below
/// the starting one, which is what the relaxation below computes directly.
pub fn backward_numbering_anchored(w: &PartialPerm, s: &Stream, anchor: i64) -> Result<Numbering> {
    check_compatible(w, s)?;
    let n = w.n();
    let balls = w.balls();
    let dn = s.density() as i64;
    let mut d = backward_start(w, s, anchor);
    let rounds = 2 * balls.len() + 5;
    for _ in 0..rounds {
        let mut changed = false;
        for i in 0..balls.len() {
            for j in 0..balls.len() {
                let cap = d[j] + min_shift_se(balls[i], balls[j], n) * dn - 1;
                if cap < d[i] {
                    d[i] = cap;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(to_numbering(w, &balls, d.into_iter().map(Some).collect(), s.density()));
        }
    }
    Err(Error::Stream(format!("backward numbering of {w} does not stabilize")))
}

pub fn backward_numbering(w: &PartialPerm, s: &Stream) -> Result<Numbering> {
    backward_numbering_anchored(w, s, 1)
}

/// The backward numbering computed by the literal decrement loop, choosing
/// among eligible balls in the order given by `order` (a permutation of the
/// window balls of `w`, by index). Used to cross-check
/// [`backward_numbering_anchored`].
pub fn backward_numbering_by_decrements(
    w: &PartialPerm,
    s: &Stream,
    anchor: i64,
    order: &[usize],
) -> Result<Numbering> {
    check_compatible(w, s)?;
    let n = w.n();
    let balls = w.balls();
    if order.len() != balls.len() {
        return Err(Error::LengthMismatch { expected: balls.len(), got: order.len() });
    }
    let dn = s.density() as i64;
    let mut d = backward_start(w, s, anchor);
    // ball j (some translate) strictly southeast of ball i with label ≤ d[i]
    let conflicted = |d: &[i64], i: usize| {
        (0..balls.len()).any(|j| d[i] >= d[j] + min_shift_se(balls[i], balls[j], n) * dn)
    };
    // every ball strictly northwest of ball i is labelled below d[i]
    let eligible = |d: &[i64], i: usize| {
        (0..balls.len()).all(|j| d[j] + max_shift_nw(balls[i], balls[j], n) * dn < d[i])
    };
    let limit = 1_000_000usize;
    for _ in 0..limit {
        if !(0..balls.len()).any(|i| conflicted(&d, i)) {
            return Ok(to_numbering(w, &balls, d.into_iter().map(Some).collect(), s.density()));
        }
        let pick = order
            .iter()
            .copied()
            .find(|&i| conflicted(&d, i) && eligible(&d, i))
            .ok_or_else(|| Error::Internal("no eligible ball in the backward numbering".into()))?;
        d[pick] -= 1;
    }
    Err(Error::Stream(format!("backward numbering of {w} does not stabilize")))
}

/// One backward step `(w, S) ↦ bk_S(w)`.
pub fn backward_step(w: &PartialPerm, s: &Stream) -> Result<PartialPerm> {
    backward_step_anchored(w, s, 1)
}

pub fn backward_step_anchored(w: &PartialPerm, s: &Stream, anchor: i64) -> Result<PartialPerm> {
    let n = w.n();
    let num = backward_numbering_anchored(w, s, anchor)?;
    let mut inner = Vec::new();
    let classes = if w.is_empty() {
        vec![Vec::new(); s.density()]
    } else {
        label_classes(w, &num, anchor)
    };
    for (j, zig) in classes.into_iter().enumerate() {
        let sb = s.ball_with_label(anchor, anchor + j as i64);
        if zig.windows(2).any(|p| p[0].y >= p[1].y) {
            return Err(Error::Internal(format!("zigzag {zig:?} is not a southwest chain")));
        }
        match (zig.first(), zig.last()) {
            (Some(first), Some(last)) => {
                inner.extend(zig.windows(2).map(|p| Ball::new(p[1].x, p[0].y)));
                inner.push(Ball::new(first.x, sb.y));
                inner.push(Ball::new(sb.x, last.y));
            }
            _ => inner.push(sb),
        }
    }
    PartialPerm::from_balls(n, inner).map_err(|e| Error::Internal(e.to_string()))
}

/// The backward construction `Ψ(P, Q, ρ)`.
pub fn psi(p: &Tabloid, q: &Tabloid, rho: &[i64]) -> Result<AffinePerm> {
    let t = DomTriple::new(p.clone(), q.clone(), rho.to_vec())?;
    psi_triple(&t)
}

pub fn psi_triple(t: &DomTriple) -> Result<AffinePerm> {
    let n = t.p.n();
    let mut w = PartialPerm::empty(n);
    for i in (0..t.rho.len()).rev() {
        let s = make_stream(&t.q.rows()[i], &t.p.rows()[i], t.rho[i], n)?;
        w = backward_step(&w, &s)?;
    }
    w.to_affine()
        .ok_or_else(|| Error::Internal("backward construction left holes".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(v: &[i64]) -> AffinePerm {
        AffinePerm::new(v.to_vec()).unwrap()
    }

    fn tab(s: &str) -> Tabloid {
        s.parse().unwrap()
    }

    fn pp(s: &str) -> PartialPerm {
        s.parse().unwrap()
    }

    fn example_pq() -> (Tabloid, Tabloid) {
        (tab("[[2,4,6],[3,7,8],[1,5,9]]"), tab("[[3,5,7],[1,2,8],[4,6,9]]"))
    }

    #[test]
    fn worked_forward_and_backward() {
        let (p, q) = example_pq();
        let x = w(&[3, 7, 14, 2, 18, 4, 19, 8, 6]);
        assert_eq!(phi(&x).unwrap(), DomTriple::new(p.clone(), q.clone(), vec![2, 0, 2]).unwrap());
        assert_eq!(psi(&p, &q, &[2, 0, 2]).unwrap(), x);
    }

    #[test]
    fn worked_forward_step() {
        let x = pp("[11,5,4,3,2,-9,13,10,9,8,1,15,12,22,14,16]");
        let (fw, _) = forward_step(&x).unwrap();
        assert_eq!(fw, pp("[∅,11,5,4,3,-8,∅,13,10,9,2,∅,15,∅,22,∅]"));
    }

    #[test]
    fn identity_forward_step() {
        let id = PartialPerm::from(&AffinePerm::identity(5));
        let (fw, st) = forward_step(&id).unwrap();
        assert!(fw.is_empty());
        assert_eq!(st.balls(), make_stream(&[1, 2, 3, 4, 5], &[1, 2, 3, 4, 5], 0, 5).unwrap().balls());
        let t = phi(&AffinePerm::identity(5)).unwrap();
        assert_eq!(t.p, tab("[[1,2,3,4,5]]"));
        assert_eq!(t.rho, vec![0]);
    }

    #[test]
    fn more_worked_inverses() {
        let can = Tabloid::canonical(&[2, 2, 1, 1, 1]).unwrap();
        assert_eq!(psi(&can, &can, &[0, 0, -1, 0, 1]).unwrap(), w(&[-28, -8, -2, 4, 10, 16, 36]));
        let t = tab("[[2,4,6,9],[3,7,8],[1,5]]");
        assert_eq!(psi(&t, &t, &[0, 0, 0]).unwrap(), w(&[-3, 5, 3, 7, 2, 10, 4, 8, 9]));
    }

    #[test]
    fn shifted_example() {
        let (p, q) = example_pq();
        let x = w(&[-1, 3, 10, -5, 14, -3, 18, 7, 2]);
        assert_eq!(phi(&x).unwrap(), DomTriple::new(p.clone(), q.clone(), vec![0, -1, 1]).unwrap());
        let ox = AffinePerm::omega(9).compose(&x).unwrap();
        assert_eq!(phi(&ox).unwrap(), DomTriple::new(p.omega(), q, vec![0, -1, 2]).unwrap());
    }

    #[test]
    fn make_stream_altitudes() {
        for alt in -4..=4 {
            let s = make_stream(&[2, 5, 6], &[1, 3, 4], alt, 7).unwrap();
            assert_eq!(s.altitude(), alt);
            assert_eq!(s.domain(), vec![2, 5, 6]);
            assert_eq!(s.codomain(), vec![1, 3, 4]);
        }
        let full: Vec<usize> = (1..=6).collect();
        let s = make_stream(&full, &full, 3, 6).unwrap();
        let ys: Vec<i64> = s.balls().iter().map(|b| b.y).collect();
        assert_eq!(ys, vec![4, 5, 6, 7, 8, 9]);
        assert!(make_stream(&[1, 2], &[1], 0, 3).is_err());
        assert!(make_stream(&[], &[], 0, 3).is_err());
    }

    #[test]
    fn channels_of_extremes() {
        let id = PartialPerm::from(&AffinePerm::identity(6));
        let ch = channels(&id).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].density(), 6);
        let w0 = PartialPerm::from(&AffinePerm::longest(6));
        let ch = channels(&w0).unwrap();
        assert_eq!(ch.len(), 6);
        assert!(ch.iter().all(|c| c.density() == 1));
        let sw = southwest_channel(&w0).unwrap();
        assert_eq!(sw.balls(), &[Ball::new(6, 1)]);
        assert!(channels(&PartialPerm::empty(3)).is_err());
    }

    #[test]
    fn channel_numbering_of_identity_and_longest() {
        let id = PartialPerm::from(&AffinePerm::identity(5));
        let c = southwest_channel(&id).unwrap();
        let num = channel_numbering(&id, &c).unwrap();
        assert_eq!(num.window_labels(), &[Some(1), Some(2), Some(3), Some(4), Some(5)]);
        let w0 = PartialPerm::from(&AffinePerm::longest(5));
        for c in channels(&w0).unwrap() {
            let num = channel_numbering(&w0, &c).unwrap();
            let first = num.window_labels()[0];
            assert!(num.window_labels().iter().all(|&l| l == first));
        }
    }

    #[test]
    fn density_matches_first_row() {
        let x = w(&[3, 7, 14, 2, 18, 4, 19, 8, 6]);
        assert_eq!(max_density(&PartialPerm::from(&x)), 3);
    }

    /// The zigzag rule restated: a back corner (a0, b0) with outer corners
    /// (a1, b1), …, (ar, br) has inner corners (a0, b1), (a1, b2), …, (ar, b0).
    fn inner_posts(back: Ball, outer: &[Ball]) -> Vec<Ball> {
        let mut xs = vec![back.x];
        xs.extend(outer.iter().map(|b| b.x));
        let mut ys: Vec<i64> = outer.iter().map(|b| b.y).collect();
        ys.push(back.y);
        xs.into_iter().zip(ys).map(|(x, y)| Ball::new(x, y)).collect()
    }

    #[test]
    fn inner_post_formula() {
        assert_eq!(
            inner_posts(Ball::new(0, 0), &[Ball::new(1, 5), Ball::new(3, 2)]),
            vec![Ball::new(0, 5), Ball::new(1, 2), Ball::new(3, 0)]
        );
        assert_eq!(inner_posts(Ball::new(2, 7), &[]), vec![Ball::new(2, 7)]);
    }

    #[test]
    fn backward_step_matches_inner_post_formula() {
        let (p, q) = example_pq();
        let mut cur = PartialPerm::empty(9);
        for i in (0..3).rev() {
            let s = make_stream(&q.rows()[i], &p.rows()[i], [2, 0, 2][i], 9).unwrap();
            let num = backward_numbering(&cur, &s).unwrap();
            let next = backward_step(&cur, &s).unwrap();
            let mut expected = Vec::new();
            for (j, &sb) in s.balls().iter().enumerate() {
                let m = 1 + j as i64;
                // outer corners of zigzag m in decreasing y, i.e. increasing x
                let mut outer: Vec<Ball> = Vec::new();
                for b in cur.balls() {
                    for k in -3..=3 {
                        let t = b.translate(k, 9);
                        if num.label(t) == Some(m) {
                            outer.push(t);
                        }
                    }
                }
                outer.sort_unstable_by_key(|b| b.x);
                let restated = inner_posts(sb, &outer);
                expected.extend(restated);
            }
            let expected = PartialPerm::from_balls(9, expected).unwrap();
            assert_eq!(next, expected);
            cur = next;
        }
    }

    #[test]
    fn backward_step_from_empty_is_a_shift() {
        let full: Vec<usize> = (1..=7).collect();
        for sft in -3..=3 {
            let s = make_stream(&full, &full, sft, 7).unwrap();
            let out = backward_step(&PartialPerm::empty(7), &s).unwrap();
            assert_eq!(out.to_affine().unwrap(), AffinePerm::omega_pow(7, sft));
        }
    }

    #[test]
    fn incompatible_stream_rejected() {
        let x = PartialPerm::from(&AffinePerm::identity(3));
        let s = make_stream(&[1], &[1], 0, 3).unwrap();
        assert!(backward_step(&x, &s).is_err());
        let y = pp("[∅,2,3]");
        let s = make_stream(&[1], &[1], 0, 3).unwrap();
        assert!(backward_step(&y, &s).is_err());
    }

    /// Checks a backward numbering against expected labels, computed both by
    /// relaxation and by the literal decrement loop in two orders.
    fn check_backward_labels(n: usize, s: &Stream, anchor: i64, expected: &[((i64, i64), i64)]) {
        let w = PartialPerm::from_balls(n, expected.iter().map(|&((x, y), _)| Ball::new(x, y))).unwrap();
        let fwd: Vec<usize> = (0..w.size()).collect();
        let rev: Vec<usize> = fwd.iter().rev().copied().collect();
        let nums = [
            backward_numbering_anchored(&w, s, anchor).unwrap(),
            backward_numbering_by_decrements(&w, s, anchor, &fwd).unwrap(),
            backward_numbering_by_decrements(&w, s, anchor, &rev).unwrap(),
        ];
        for num in &nums {
            for &((x, y), d) in expected {
                assert_eq!(num.label(Ball::new(x, y)), Some(d), "ball ({x},{y})");
            }
        }
    }

    #[test]
    fn backward_numbering_eleven() {
        let top: Vec<usize> = (8..=11).collect();
        let s = make_stream(&top, &top, 0, 11).unwrap();
        let expected = [
            ((7, 25), -1),
            ((6, 24), -2),
            ((5, 23), -3),
            ((4, 4), -4),
            ((23, 7), -1),
            ((14, 6), -2),
            ((13, 5), -3),
        ];
        check_backward_labels(11, &s, 0, &expected);
    }

    #[test]
    fn backward_numbering_fifteen() {
        let top: Vec<usize> = (11..=15).collect();
        let s = make_stream(&top, &top, 0, 15).unwrap();
        let expected = [
            ((10, 46), -1),
            ((9, 34), -2),
            ((8, 33), -3),
            ((7, 32), -4),
            ((6, 6), -5),
            ((5, 5), -6),
            ((32, 10), -1),
            ((31, 9), -2),
            ((19, 8), -3),
            ((18, 7), -4),
        ];
        check_backward_labels(15, &s, 0, &expected);
    }

    /// Every backward step met while rebuilding the triples of a shape.
    fn backward_cases(shape: &[usize], rho_box: i64) -> Vec<(PartialPerm, Stream)> {
        let n: usize = shape.iter().sum();
        let tabs = Tabloid::enumerate(shape).unwrap();
        let mut out = Vec::new();
        for p in &tabs {
            for q in &tabs {
                let base = tabloid::offset_constants(p, q).unwrap();
                let mut rho = base.clone();
                for (i, r) in rho.iter_mut().enumerate() {
                    *r += (i as i64 % (2 * rho_box + 1)) - rho_box;
                }
                let Ok(t) = DomTriple::new(p.clone(), q.clone(), rho) else { continue };
                let mut w = PartialPerm::empty(n);
                for i in (0..t.rho.len()).rev() {
                    let s = make_stream(&t.q.rows()[i], &t.p.rows()[i], t.rho[i], n).unwrap();
                    let next = backward_step(&w, &s).unwrap();
                    out.push((w, s));
                    w = next;
                }
            }
        }
        out
    }

    #[test]
    fn decrement_loop_agrees_with_relaxation() {
        for shape in [vec![2, 2, 1], vec![3, 1, 1], vec![2, 1, 1, 1], vec![3, 2]] {
            for (w, s) in backward_cases(&shape, 1) {
                let fast = backward_numbering(&w, &s).unwrap();
                let k = w.size();
                let orders = [(0..k).collect::<Vec<_>>(), (0..k).rev().collect(), (0..k).map(|i| (i * 2 + 1) % k.max(1)).collect()];
                for order in orders {
                    if order.iter().collect::<BTreeSet<_>>().len() != k {
                        continue;
                    }
                    assert_eq!(backward_numbering_by_decrements(&w, &s, 1, &order).unwrap(), fast, "{w}");
                }
            }
        }
    }

    #[test]
    fn backward_step_ignores_anchor() {
        for (w, s) in backward_cases(&[2, 2, 1], 2) {
            let base = backward_step(&w, &s).unwrap();
            for a in [-7, 0, 4] {
                assert_eq!(backward_step_anchored(&w, &s, a).unwrap(), base);
            }
        }
    }
}
