//! Tensor powers of `A` and the mixed space `A (x) H`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::context;
use crate::coeff::LaurentScalar;
use crate::error::Result;
use crate::freealg::{NCPolynomial, Word};

/// A sum of pure tensors of standard words, `arity` legs each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    n: usize,
    arity: usize,
    terms: BTreeMap<Vec<Word>, LaurentScalar>,
}

impl TensorPoly {
    pub fn zero(n: usize, arity: usize) -> Self {
        TensorPoly {
            n,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `p_1 (x) ... (x) p_k`, expanded.
    pub fn pure(legs: &[&NCPolynomial]) -> Self {
        let n = legs[0].n();
        let mut acc = vec![(Vec::new(), LaurentScalar::one())];
        for leg in legs {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, d) in leg.terms() {
                    let mut ws: Vec<Word> = ws.clone();
                    ws.push(w.clone());
                    next.push((ws, c * d));
                }
            }
            acc = next;
        }
        let mut out = TensorPoly::zero(n, legs.len());
        for (ws, c) in acc {
            out.add_term(ws, c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: LaurentScalar) {
        debug_assert_eq!(legs.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &LaurentScalar) {
        for (ws, d) in &other.terms {
            self.add_term(ws.clone(), d * c);
        }
    }

    /// Replaces leg `leg` of every term by `f(word)`, which has `m` legs.
    pub fn expand_leg<F>(&self, leg: usize, m: usize, mut f: F) -> TensorPoly
    where
        F: FnMut(&Word) -> TensorPoly,
    {
        let mut out = TensorPoly::zero(self.n, self.arity - 1 + m);
        for (ws, c) in &self.terms {
            let image = f(&ws[leg]);
            for (inner, d) in &image.terms {
                let mut legs = ws[..leg].to_vec();
                legs.extend(inner.iter().cloned());
                legs.extend(ws[leg + 1..].iter().cloned());
                out.add_term(legs, c * d);
            }
        }
        out
    }

    /// Multiplies leg `leg` of every term on the right by `p` in `A(S_1)`.
    pub fn mul_leg(&self, leg: usize, p: &NCPolynomial) -> Result<TensorPoly> {
        let ctx = context(self.n)?;
        let mut out = TensorPoly::zero(self.n, self.arity);
        for (ws, c) in &self.terms {
            let prod = ctx.mul(&NCPolynomial::word(self.n, ws[leg].clone()), p);
            for (w, d) in prod.terms() {
                let mut legs = ws.clone();
                legs[leg] = w.clone();
                out.add_term(legs, c * d);
            }
        }
        Ok(out)
    }

    /// Leg-wise product in `A(S_1)^{(x) arity}`.
    pub fn mul(&self, other: &TensorPoly) -> Result<TensorPoly> {
        let ctx = context(self.n)?;
        let mut out = TensorPoly::zero(self.n, self.arity);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut acc = vec![(Vec::new(), c * d)];
                for k in 0..self.arity {
                    let prod = ctx.mul(
                        &NCPolynomial::word(self.n, a[k].clone()),
                        &NCPolynomial::word(self.n, b[k].clone()),
                    );
                    let mut next = Vec::new();
                    for (ws, e) in &acc {
                        for (w, f) in prod.terms() {
                            let mut ws: Vec<Word> = ws.clone();
                            ws.push(w.clone());
                            next.push((ws, e * f));
                        }
                    }
                    acc = next;
                }
                for (ws, e) in acc {
                    out.add_term(ws, e);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(ws, c)| {
                let legs: Vec<String> = ws
                    .iter()
                    .map(|w| NCPolynomial::word(self.n, w.clone()).to_string())
                    .collect();
                format!("({c}) {}", legs.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Delta(x_ij) = sum_k x_ik (x) x_kj`, extended multiplicatively.
pub fn comultiply(p: &NCPolynomial) -> Result<TensorPoly> {
    let n = p.n();
    let ctx = context(n)?;
    let sys = ctx.system();
    let mut out = TensorPoly::zero(n, 2);
    for (w, c) in p.terms() {
        let mut state: BTreeMap<(Word, Word), LaurentScalar> = BTreeMap::new();
        state.insert((Word::unit(), Word::unit()), c.clone());
        for g in w.gens(n) {
            let mut next: BTreeMap<(Word, Word), LaurentScalar> = BTreeMap::new();
            for ((u, v), d) in &state {
                for k in 1..=n {
                    let left = sys.insert_right(u, flat(g.row(), k, n));
                    let right = sys.insert_right(v, flat(k, g.col(), n));
                    for (a, e) in left.iter() {
                        for (b, f) in right.iter() {
                            let slot = next
                                .entry((a.clone(), b.clone()))
                                .or_insert_with(LaurentScalar::zero);
                            *slot += &(&(d * e) * f);
                        }
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            state = next;
        }
        for ((u, v), d) in state {
            out.add_term(vec![u, v], d);
        }
    }
    Ok(out)
}

fn flat(i: usize, j: usize, n: usize) -> u8 {
    ((i - 1) * n + (j - 1)) as u8
}

/// `epsilon(x_ij) = delta_ij` on a standard word.
pub fn counit(w: &Word, n: usize) -> LaurentScalar {
    if w.gens(n).all(|g| g.row() == g.col()) {
        LaurentScalar::one()
    } else {
        LaurentScalar::zero()
    }
}

/// An element of `A (x) H`: `numerator * (1 (x) det_q^-det_power)`.
#[derive(Clone, Debug)]
pub struct TensorElement {
    numerator: TensorPoly,
    det_power: u32,
}

impl TensorElement {
    pub fn new(numerator: TensorPoly, det_power: u32) -> Self {
        debug_assert_eq!(numerator.arity(), 2);
        TensorElement {
            numerator,
            det_power,
        }
    }

    /// `p (x) 1`.
    pub fn left(p: &NCPolynomial) -> Self {
        TensorElement::new(TensorPoly::pure(&[p, &NCPolynomial::one(p.n())]), 0)
    }

    pub fn numerator(&self) -> &TensorPoly {
        &self.numerator
    }

    pub fn det_power(&self) -> u32 {
        self.det_power
    }

    pub fn n(&self) -> usize {
        self.numerator.n()
    }

    /// Same element with denominator `det_q^k`, `k >= det_power`.
    pub fn with_det_power(&self, k: u32) -> Result<TensorElement> {
        assert!(k >= self.det_power);
        let ctx = context(self.n())?;
        let extra = ctx.det_pow(k - self.det_power);
        Ok(TensorElement::new(self.numerator.mul_leg(1, &extra)?, k))
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        let k = self.det_power.max(other.det_power);
        let mut a = self.with_det_power(k)?;
        let b = other.with_det_power(k)?;
        a.numerator.add_scaled(&b.numerator, &LaurentScalar::one());
        Ok(a)
    }

    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        Ok(TensorElement::new(
            self.numerator.mul(&other.numerator)?,
            self.det_power + other.det_power,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn equals(&self, other: &TensorElement) -> Result<bool> {
        if self.n() != other.n() {
            return Ok(false);
        }
        let k = self.det_power.max(other.det_power);
        Ok(self.with_det_power(k)?.numerator == other.with_det_power(k)?.numerator)
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).expect("valid size")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut grouped: BTreeMap<&Word, NCPolynomial> = BTreeMap::new();
        for (ws, c) in self.numerator.terms() {
            grouped
                .entry(&ws[0])
                .or_insert_with(|| NCPolynomial::zero(n))
                .add_term(ws[1].clone(), c.clone());
        }
        if grouped.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = grouped
            .iter()
            .map(|(u, h)| {
                let u = NCPolynomial::word(n, (*u).clone());
                match self.det_power {
                    0 => format!("{u} ⊗ ({h})"),
                    k => format!("{u} ⊗ ({h})*det^-{k}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
