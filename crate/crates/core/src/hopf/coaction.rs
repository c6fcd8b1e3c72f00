//! The adjoint coactions `A -> A (x) H`.
//!
//! On generators
//! `alpha(x_ij) = sum_{k,l} x_kl (x) u_lj S(u_ik)` and
//! `beta(x_ij)  = sum_{k,l} x_kl (x) S(u_ik) u_lj`,
//! and on a word `a` the Sweedler forms `a(2) (x) a(3) S(a(1))` and
//! `a(2) (x) S(a(1)) a(3)`. With `S` an antihomomorphism, `alpha` of
//! `x * rest` has second leg `x(3) [rest(3) S(rest(1))] S(x(1))`, so words
//! are consumed right to left for `alpha` and left to right for `beta`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::tensor::{comultiply, TensorElement, TensorPoly};
use super::{context, HopfContext};
use crate::error::{Error, Result};
use crate::freealg::{NCPolynomial, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `x_ij -> sum x_ms (x) u_sj S(u_im)`
    Alpha,
    /// `x_ij -> sum x_ms (x) S(u_im) u_sj`, the right adjoint coaction;
    /// its invariants contain the `Delta'_d`.
    Beta,
    /// `x_ij -> sum x_ms (x) S(u_sj) u_im`. Under this ordering the
    /// `Delta'_d` are not invariant (the trace `Delta_1` is); kept for
    /// comparison.
    #[serde(rename = "beta-literal")]
    BetaLiteral,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(Variant::Alpha),
            "beta" => Ok(Variant::Beta),
            "beta-literal" => Ok(Variant::BetaLiteral),
            other => Err(Error::Invalid(format!("unknown coaction '{other}'"))),
        }
    }
}

/// First leg (standard word) to second-leg numerator.
type State = BTreeMap<Word, NCPolynomial>;

fn word_coaction(ctx: &HopfContext, w: &Word, variant: Variant) -> State {
    let n = ctx.n();
    let mut state: State = BTreeMap::new();
    state.insert(Word::unit(), NCPolynomial::one(n));
    let gens: Vec<_> = w.gens(n).collect();
    let order: Box<dyn Iterator<Item = _>> = match variant {
        Variant::Alpha => Box::new(gens.iter().rev()),
        Variant::Beta | Variant::BetaLiteral => Box::new(gens.iter()),
    };
    for g in order {
        let (i, j) = (g.row(), g.col());
        let mut next: State = BTreeMap::new();
        for (u, z) in &state {
            let u = NCPolynomial::word(n, u.clone());
            for k in 1..=n {
                for l in 1..=n {
                    let x_kl = NCPolynomial::x(n, k, l);
                    let (first, second) = match variant {
                        Variant::Alpha => (
                            ctx.mul(&x_kl, &u),
                            ctx.mul(
                                &ctx.mul(&NCPolynomial::x(n, l, j), z),
                                ctx.antipode_numerator(i, k),
                            ),
                        ),
                        Variant::BetaLiteral => (
                            ctx.mul(&u, &x_kl),
                            ctx.mul(
                                &ctx.mul(ctx.antipode_numerator(l, j), z),
                                &NCPolynomial::x(n, i, k),
                            ),
                        ),
                        Variant::Beta => (
                            ctx.mul(&u, &x_kl),
                            ctx.mul(
                                &ctx.mul(ctx.antipode_numerator(i, k), z),
                                &NCPolynomial::x(n, l, j),
                            ),
                        ),
                    };
                    if second.is_zero() {
                        continue;
                    }
                    for (v, c) in first.terms() {
                        let slot = next
                            .entry(v.clone())
                            .or_insert_with(|| NCPolynomial::zero(n));
                        slot.add_scaled(&second, c);
                    }
                }
            }
        }
        next.retain(|_, z| !z.is_zero());
        state = next;
    }
    state
}

fn to_tensor(n: usize, state: &State) -> TensorPoly {
    let mut out = TensorPoly::zero(n, 2);
    for (u, z) in state {
        for (v, c) in z.terms() {
            out.add_term(vec![u.clone(), v.clone()], c.clone());
        }
    }
    out
}

/// The coaction of `p` (normalized first) as an element of `A (x) H`.
pub fn coaction(p: &NCPolynomial, variant: Variant) -> Result<TensorElement> {
    let n = p.n();
    let ctx = context(n)?;
    let p = ctx.system().normal_form(p);
    let top = p.degree().unwrap_or(0) as u32;
    let mut acc = TensorElement::new(TensorPoly::zero(n, 2), top);
    for (w, c) in p.terms() {
        let state = word_coaction(ctx, w, variant);
        let mut part = to_tensor(n, &state);
        let lift = top - w.len() as u32;
        if lift > 0 {
            part = part.mul_leg(1, &ctx.det_pow(lift))?;
        }
        let mut num = acc.numerator().clone();
        num.add_scaled(&part, c);
        acc = TensorElement::new(num, top);
    }
    Ok(acc)
}

/// `coaction(p) == p (x) 1`.
pub fn is_invariant(p: &NCPolynomial, variant: Variant) -> Result<bool> {
    let n = p.n();
    let ctx = context(n)?;
    let p = ctx.system().normal_form(p);
    // The coaction preserves the degree of the first leg, so each
    // homogeneous component is checked on its own.
    let mut by_degree: BTreeMap<usize, NCPolynomial> = BTreeMap::new();
    for (w, c) in p.terms() {
        by_degree
            .entry(w.len())
            .or_insert_with(|| NCPolynomial::zero(n))
            .add_term(w.clone(), c.clone());
    }
    for (d, part) in by_degree {
        let mut got = TensorPoly::zero(n, 2);
        for (w, c) in part.terms() {
            got.add_scaled(&to_tensor(n, &word_coaction(ctx, w, variant)), c);
        }
        let expect = TensorPoly::pure(&[&part, &ctx.det_pow(d as u32)]);
        if got != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `alpha(x y) = alpha(x) alpha(y)` for an `alpha`-invariant `y`.
pub fn multiplicativity_on_invariants_check(x: &NCPolynomial, y: &NCPolynomial) -> Result<bool> {
    if !is_invariant(y, Variant::Alpha)? {
        return Err(Error::NotInvariant);
    }
    let ctx = context(x.n())?;
    let xy = ctx.mul(x, y);
    let lhs = coaction(&xy, Variant::Alpha)?;
    let rhs = coaction(x, Variant::Alpha)?.mul(&coaction(y, Variant::Alpha)?)?;
    lhs.equals(&rhs)
}

/// `(alpha (x) id) alpha = (id (x) Delta) alpha` on every generator.
///
/// Both sides live in `A (x) H (x) H` with denominator `det (x) det`, so the
/// numerators are compared. The literal `beta` ordering coacts through the
/// opposite coproduct, so for it the two `H` legs are swapped.
pub fn comodule_axiom_check(n: usize, variant: Variant) -> Result<bool> {
    let ctx = context(n)?;
    for l in 0..(n * n) as u8 {
        let w = Word::from_letters(&[l]);
        let outer = word_coaction(ctx, &w, variant);
        let mut lhs = TensorPoly::zero(n, 3);
        let mut rhs = TensorPoly::zero(n, 3);
        for (u, z) in &outer {
            for (a, h) in word_coaction(ctx, u, variant) {
                for (hw, c) in h.terms() {
                    for (zw, d) in z.terms() {
                        lhs.add_term(vec![a.clone(), hw.clone(), zw.clone()], c * d);
                    }
                }
            }
            let dz = comultiply(z)?;
            for (legs, c) in dz.terms() {
                let (h1, h2) = match variant {
                    Variant::Alpha | Variant::Beta => (&legs[0], &legs[1]),
                    Variant::BetaLiteral => (&legs[1], &legs[0]),
                };
                rhs.add_term(vec![u.clone(), h1.clone(), h2.clone()], c.clone());
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
