//! Overlap resolution: the diamond check behind the PBW property.

use serde::Serialize;

use super::rewrite::elementary_mutation;
use super::MutationSystem;
use crate::freealg::{format::format_word, NCPolynomial, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapFailure {
    /// The ambiguous word, e.g. `x[2,2]*x[1,2]*x[1,1]`.
    pub word: String,
    /// Normal form reached by mutating the leftmost descent first.
    pub left: String,
    /// Normal form reached by mutating the other descent first.
    pub right: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub failures: Vec<OverlapFailure>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Resolves every overlap `x_c x_b x_a` with `a < b < c` both ways. For
/// `max_overlap_degree > 3` every word of length `4..=max_overlap_degree`
/// is additionally reduced starting from each of its descents.
pub fn pbw_confluence_check(s: &MutationSystem, max_overlap_degree: usize) -> ConfluenceReport {
    let mut report = ConfluenceReport::default();
    let size = (s.n() * s.n()) as u8;
    for a in 0..size {
        for b in a + 1..size {
            for c in b + 1..size {
                check_word(s, &Word::from_letters(&[c, b, a]), &mut report);
            }
        }
    }
    for d in 4..=max_overlap_degree {
        for w in all_words(size, d) {
            if w.descent_positions().len() >= 2 {
                check_word(s, &w, &mut report);
            }
        }
    }
    report
}

fn check_word(s: &MutationSystem, w: &Word, report: &mut ConfluenceReport) {
    report.checked += 1;
    let descents = w.descent_positions();
    let reduce = |r: usize| -> NCPolynomial {
        let step = elementary_mutation(w, r, s).expect("descent position");
        s.normalize(&step)
    };
    let first = reduce(descents[0]);
    for &r in &descents[1..] {
        let other = reduce(r);
        if other != first {
            report.failures.push(OverlapFailure {
                word: format_word(w, s.n()),
                left: first.to_string(),
                right: other.to_string(),
            });
            return;
        }
    }
}

fn all_words(size: u8, d: usize) -> Vec<Word> {
    let mut out = vec![Word::unit()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..size).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}
