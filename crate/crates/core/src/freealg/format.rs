use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{GenIndex, NCPolynomial, Word};
use crate::coeff::{format_rational, LaurentScalar};

/// Canonical text for a polynomial.
///
/// Words appear in ascending lex order. A coefficient is written with its
/// sign pulled out so that its highest power of `q` is positive; unit
/// coefficients are omitted and multi-term coefficients are parenthesized
/// with descending exponents, e.g. `x[1,2]*x[2,3] - (q^1 - q^-1)*x[1,3]*x[2,2]`.
pub fn format_expr(p: &NCPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (w, c)) in p.terms().enumerate() {
        let (negative, body) = compact_coeff(c);
        let word = format_word(w, p.n());
        let text = match (body, word.is_empty()) {
            (None, true) => "1".to_string(),
            (None, false) => word,
            (Some(b), true) => b,
            (Some(b), false) => format!("{b}*{word}"),
        };
        match (k, negative) {
            (0, false) => out.push_str(&text),
            (0, true) => {
                out.push('-');
                out.push_str(&text);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&text);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&text);
            }
        }
    }
    out
}

/// Letters joined by `*`, runs collapsed to `x[i,j]^k`.
pub(crate) fn format_word(w: &Word, n: usize) -> String {
    let letters = w.letters();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let g = GenIndex::from_flat(letters[i], n);
        if j - i == 1 {
            parts.push(g.to_string());
        } else {
            parts.push(format!("{}^{}", g, j - i));
        }
        i = j;
    }
    parts.join("*")
}

fn single_term(c: &BigRational, e: i32) -> Option<String> {
    match (e, c.is_one()) {
        (0, true) => None,
        (0, false) => Some(format_rational(c)),
        (_, true) => Some(format!("q^{e}")),
        (_, false) => Some(format!("{}*q^{e}", format_rational(c))),
    }
}

/// Returns the sign to pull out and the coefficient body (`None` for 1).
fn compact_coeff(c: &LaurentScalar) -> (bool, Option<String>) {
    let negative = c.leading_coeff().is_some_and(|l| l.is_negative());
    let c = if negative { -c } else { c.clone() };
    if c.len() == 1 {
        let (e, r) = &c.terms()[0];
        return (negative, single_term(r, *e));
    }
    let mut body = String::from("(");
    for (k, (e, r)) in c.terms().iter().rev().enumerate() {
        let abs = r.abs();
        let t = single_term(&abs, *e).unwrap_or_else(|| "1".to_string());
        if k == 0 {
            body.push_str(&t);
        } else if r.is_negative() {
            body.push_str(" - ");
            body.push_str(&t);
        } else {
            body.push_str(" + ");
            body.push_str(&t);
        }
    }
    body.push(')');
    (negative, Some(body))
}
