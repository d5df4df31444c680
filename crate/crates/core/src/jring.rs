//! The asymptotic Hecke algebra `J` on the basis `{t_w}`.
//!
//! Products inside a two-sided cell are computed through the matrix model:
//! `t_w` sits at the entry `(P(w), Q(w))` and carries the irreducible
//! `V(rev_λ(ρ(w) − s_{P,Q}))` of `F_λ`. Entries multiply like matrix units
//! and weights multiply in the representation ring.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine_perm::{div_ceil, AffinePerm};
use crate::ambc::{phi, psi, DomTriple};
use crate::cells::distinguished_involutions;
use crate::error::{Error, Result};
use crate::rep_ring::{add_term, tensor_f, FWeight};
use crate::tabloid::{offset_constants, rev_lambda, Tabloid};

/// A finite integer combination of basis elements `t_w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JElement {
    n: usize,
    terms: BTreeMap<AffinePerm, i64>,
}

impl JElement {
    pub fn zero(n: usize) -> JElement {
        JElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(w: AffinePerm) -> JElement {
        let n = w.n();
        JElement { n, terms: [(w, 1)].into_iter().collect() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (AffinePerm, i64)>) -> Result<JElement> {
        let mut out = JElement::zero(n);
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::PeriodMismatch(n, w.n()));
            }
            add_term(&mut out.terms, w, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<AffinePerm, i64> {
        &self.terms
    }

    pub fn coefficient(&self, w: &AffinePerm) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &JElement) -> Result<JElement> {
        if self.n != other.n {
            return Err(Error::PeriodMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> JElement {
        let mut out = JElement::zero(self.n);
        for (w, &d) in &self.terms {
            add_term(&mut out.terms, w.clone(), c * d);
        }
        out
    }
}

/// `Υ(t_w)`: the matrix position `(P(w), Q(w))` and the weight carried there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub row: Tabloid,
    pub col: Tabloid,
    pub weight: FWeight,
}

fn entry_of(t: &DomTriple) -> Result<MatrixEntry> {
    let shape = t.shape();
    let rows = rev_lambda(&shape, &t.rho_minus_offsets())?;
    let weight = FWeight::from_rows(&shape, &rows).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(MatrixEntry { row: t.p.clone(), col: t.q.clone(), weight })
}

pub fn upsilon(w: &AffinePerm) -> Result<MatrixEntry> {
    entry_of(&phi(w)?)
}

/// The basis element sitting at `(row, col)` with weight `weight`.
pub fn from_entry(e: &MatrixEntry) -> Result<AffinePerm> {
    let shape = e.row.shape();
    if e.weight.shape != shape {
        return Err(Error::ShapeMismatch(shape, e.weight.shape.clone()));
    }
    let s = offset_constants(&e.row, &e.col)?;
    let r = rev_lambda(&shape, &e.weight.to_rows())?;
    let rho: Vec<i64> = s.iter().zip(&r).map(|(a, b)| a + b).collect();
    psi(&e.row, &e.col, &rho)
}

/// Multiplies two matrix entries: zero unless the inner tabloids agree.
pub fn multiply_entries(a: &MatrixEntry, b: &MatrixEntry) -> Result<Vec<(MatrixEntry, i64)>> {
    if a.row.shape() != b.row.shape() || a.col != b.row {
        return Ok(Vec::new());
    }
    let shape = a.row.shape();
    Ok(tensor_f(&shape, &a.weight, &b.weight)?
        .into_iter()
        .map(|(weight, c)| (MatrixEntry { row: a.row.clone(), col: b.col.clone(), weight }, c))
        .collect())
}

/// `t_u · t_v`.
pub fn t_multiply(u: &AffinePerm, v: &AffinePerm) -> Result<JElement> {
    if u.n() != v.n() {
        return Err(Error::PeriodMismatch(u.n(), v.n()));
    }
    let (a, b) = (upsilon(u)?, upsilon(v)?);
    let mut out = JElement::zero(u.n());
    for (e, c) in multiply_entries(&a, &b)? {
        add_term(&mut out.terms, from_entry(&e)?, c);
    }
    Ok(out)
}

/// Bilinear extension of [`t_multiply`].
pub fn j_multiply(a: &JElement, b: &JElement) -> Result<JElement> {
    if a.n != b.n {
        return Err(Error::PeriodMismatch(a.n, b.n));
    }
    let mut out = JElement::zero(a.n);
    for (u, &c) in &a.terms {
        for (v, &d) in &b.terms {
            for (w, e) in t_multiply(u, v)?.terms {
                add_term(&mut out.terms, w, c * d * e);
            }
        }
    }
    Ok(out)
}

/// The unit of `J_{c_λ}`: the sum of its distinguished involutions.
pub fn unit(shape: &[usize]) -> Result<JElement> {
    let n = shape.iter().sum();
    JElement::from_terms(n, distinguished_involutions(shape)?.into_iter().map(|w| (w, 1)))
}

/// `Σ_i (⌈w(i)/n⌉ − 1)`; equals `Σ ρ(w)`.
fn rho_sum(w: &AffinePerm) -> i64 {
    let n = w.n() as i64;
    w.window().iter().map(|&v| div_ceil(v, n) - 1).sum()
}

/// The representative of `w` modulo the central element `ω^n`: the unique
/// `ω^{nk} w` whose total block diagonal lies in `[0, n)`.
pub fn sl_representative(w: &AffinePerm) -> AffinePerm {
    let n = w.n() as i64;
    let k = -rho_sum(w).div_euclid(n);
    AffinePerm::new(w.window().iter().map(|&v| v + k * n).collect()).expect("shift of a permutation")
}

/// Reduces every basis element modulo `ω^n`, collecting coefficients.
pub fn sl_reduce(a: &JElement) -> JElement {
    let mut out = JElement::zero(a.n);
    for (w, &c) in &a.terms {
        add_term(&mut out.terms, sl_representative(w), c);
    }
    out
}

/// `w` lies in the non-extended group iff `Σ ρ(w) = 0`.
pub fn pgl_member(w: &AffinePerm) -> Result<bool> {
    Ok(phi(w)?.rho.iter().sum::<i64>() == 0)
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            match (i, *c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write!(f, "{}*{w}", c.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl JElement {
    /// Parses `"c1*[w1] + c2*[w2] - …"` (or `"0"`, which needs `n`).
    pub fn parse(text: &str, n: Option<usize>) -> Result<JElement> {
        let t = text.trim();
        if t == "0" {
            let n = n.ok_or_else(|| Error::Parse("the zero element needs an explicit n".into()))?;
            return Ok(JElement::zero(n));
        }
        let mut terms = Vec::new();
        let mut rest = t;
        let mut sign = 1;
        loop {
            let close = rest
                .find(']')
                .ok_or_else(|| Error::Parse(format!("missing ']' in {text:?}")))?;
            let (head, tail) = rest.split_at(close + 1);
            let (coef, win) = head
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term {head:?} lacks 'c*'")))?;
            let coef = coef.trim().trim_start_matches('-').trim();
            let c: i64 = coef.parse().map_err(|e| Error::Parse(format!("coefficient {coef:?}: {e}")))?;
            let sign_here = if head.trim_start().starts_with('-') { -1 } else { sign };
            terms.push((win.trim().parse::<AffinePerm>()?, sign_here * c));
            let tail = tail.trim();
            if tail.is_empty() {
                break;
            }
            sign = match tail.as_bytes()[0] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(Error::Parse(format!("expected '+' or '-' before {tail:?}"))),
            };
            rest = tail[1..].trim_start();
        }
        let n = terms[0].0.n();
        JElement::from_terms(n, terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| serde_json::json!({ "coef": c, "window": w.window() }))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value, n: usize) -> Result<JElement> {
        #[derive(Deserialize)]
        struct Term {
            coef: i64,
            window: Vec<i64>,
        }
        let terms: Vec<Term> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = terms
            .into_iter()
            .map(|t| AffinePerm::new(t.window).map(|w| (w, t.coef)))
            .collect::<Result<Vec<_>>>()?;
        JElement::from_terms(n, terms)
    }
}
