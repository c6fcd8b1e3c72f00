//! q-mutation systems for quantum matrices.
//!
//! A system stores, for every pair of generators `a < b`, a relation
//! `x_b x_a = q_ab x_a x_b + f_ab`. Rewriting always moves the bigger
//! letter to the right, so normal forms are combinations of standard
//! (non-decreasing) words.
//!
//! The stage-`t` system `S_t` keeps the scalars of the quantum matrix
//! relations and scales the curly term `(q^-1 - q) x_il x_kj` by
//! `w_{t-1}(i,l) w_{t-1}(k,j)`, with `w_0 = 1`. `S_1` is the quantum matrix
//! algebra itself.

mod confluence;
mod engine;
mod rewrite;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::filtration::weighting_wt;
use crate::freealg::{GenIndex, NCPolynomial, Word, MAX_N};

pub use confluence::{pbw_confluence_check, ConfluenceReport, OverlapFailure};
pub use rewrite::{elementary_mutation, NormalizeOutcome, Strategy};

/// How a pair of generators `(i,j) < (k,l)` is related.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// `i = k`, `j < l`
    SameRow,
    /// `j = l`, `i < k`
    SameCol,
    /// `i < k`, `j > l`: the generators commute
    Antidiagonal,
    /// `i < k`, `j < l`: the relation with the `(q - q^-1) x_il x_kj` term
    DiagonalCurly,
}

pub fn classify_pair(a: GenIndex, b: GenIndex) -> Result<PairClass> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    if a.flat() >= b.flat() {
        return Err(Error::NotIncreasing);
    }
    Ok(if a.row() == b.row() {
        PairClass::SameRow
    } else if a.col() == b.col() {
        PairClass::SameCol
    } else if a.col() > b.col() {
        PairClass::Antidiagonal
    } else {
        PairClass::DiagonalCurly
    })
}

/// `x_b x_a = q * x_a x_b + f` for letters `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub q: LaurentScalar,
    pub f: NCPolynomial,
}

type CachedPoly = Arc<Vec<(Word, LaurentScalar)>>;

/// An immutable relation table plus a memo of products computed with it.
pub struct MutationSystem {
    n: usize,
    stage: Option<usize>,
    relations: Vec<Relation>,
    cache: RwLock<HashMap<(Word, u8), CachedPoly>>,
}

impl MutationSystem {
    /// Builds `S_t` for the `n x n` grid.
    pub fn build(n: usize, t: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
            });
        }
        if t == 0 || t > n {
            return Err(Error::StageOutOfRange { n, t });
        }
        let prev = weighting_wt(n, t - 1)?;
        let q_inv = LaurentScalar::q_pow(-1);
        let curly = &q_inv - &LaurentScalar::q_pow(1);
        let size = n * n;
        let mut relations = Vec::with_capacity(size * size);
        for a in 0..size as u8 {
            for b in 0..size as u8 {
                if a >= b {
                    relations.push(Relation {
                        q: LaurentScalar::zero(),
                        f: NCPolynomial::zero(n),
                    });
                    continue;
                }
                let (ga, gb) = (GenIndex::from_flat(a, n), GenIndex::from_flat(b, n));
                let rel = match classify_pair(ga, gb)? {
                    PairClass::SameRow | PairClass::SameCol => Relation {
                        q: q_inv.clone(),
                        f: NCPolynomial::zero(n),
                    },
                    PairClass::Antidiagonal => Relation {
                        q: LaurentScalar::one(),
                        f: NCPolynomial::zero(n),
                    },
                    PairClass::DiagonalCurly => {
                        let il = GenIndex::new(ga.row(), gb.col(), n)?;
                        let kj = GenIndex::new(gb.row(), ga.col(), n)?;
                        let gate = prev.weight(il) * prev.weight(kj);
                        let f = if gate == 0 {
                            NCPolynomial::zero(n)
                        } else {
                            NCPolynomial::term(n, Word::from_gens(&[il, kj]), curly.clone())
                        };
                        Relation {
                            q: LaurentScalar::one(),
                            f,
                        }
                    }
                };
                relations.push(rel);
            }
        }
        Ok(MutationSystem {
            n,
            stage: Some(t),
            relations,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Builds a system from an arbitrary relation table.
    ///
    /// Every `f` word must either be shorter than two letters, or have two
    /// letters whose `row*col` sum is strictly below that of the pair it
    /// replaces. Together with swaps decreasing the inversion count this
    /// guarantees that rewriting terminates.
    pub fn from_relations<F>(n: usize, mut table: F) -> Result<Self>
    where
        F: FnMut(GenIndex, GenIndex) -> Relation,
    {
        if n == 0 || n > MAX_N {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
            });
        }
        let size = n * n;
        let mut relations = Vec::with_capacity(size * size);
        for a in 0..size as u8 {
            for b in 0..size as u8 {
                if a >= b {
                    relations.push(Relation {
                        q: LaurentScalar::zero(),
                        f: NCPolynomial::zero(n),
                    });
                    continue;
                }
                let rel = table(GenIndex::from_flat(a, n), GenIndex::from_flat(b, n));
                validate_relation(n, a, b, &rel)?;
                relations.push(rel);
            }
        }
        Ok(MutationSystem {
            n,
            stage: None,
            relations,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Copy of this system with one relation replaced.
    pub fn with_relation(&self, a: GenIndex, b: GenIndex, rel: Relation) -> Result<Self> {
        if a.flat() >= b.flat() {
            return Err(Error::NotIncreasing);
        }
        validate_relation(self.n, a.flat(), b.flat(), &rel)?;
        let mut relations = self.relations.clone();
        relations[self.index(a.flat(), b.flat())] = rel;
        Ok(MutationSystem {
            n: self.n,
            stage: None,
            relations,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Same tables with every relation passed through `map`.
    pub(crate) fn map_relations<F>(&self, stage: Option<usize>, mut map: F) -> Self
    where
        F: FnMut(GenIndex, GenIndex, &Relation) -> Relation,
    {
        let size = (self.n * self.n) as u8;
        let mut relations = self.relations.clone();
        for a in 0..size {
            for b in a + 1..size {
                let i = self.index(a, b);
                relations[i] = map(
                    GenIndex::from_flat(a, self.n),
                    GenIndex::from_flat(b, self.n),
                    &self.relations[i],
                );
            }
        }
        MutationSystem {
            n: self.n,
            stage,
            relations,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The stage `t` when built by [`MutationSystem::build`].
    pub fn stage(&self) -> Option<usize> {
        self.stage
    }

    fn index(&self, a: u8, b: u8) -> usize {
        a as usize * self.n * self.n + b as usize
    }

    /// Relation for letters `a < b`.
    pub fn relation(&self, a: u8, b: u8) -> &Relation {
        debug_assert!(a < b);
        &self.relations[self.index(a, b)]
    }

    pub fn q_entry(&self, a: GenIndex, b: GenIndex) -> &LaurentScalar {
        &self.relation(a.flat(), b.flat()).q
    }

    pub fn f_entry(&self, a: GenIndex, b: GenIndex) -> &NCPolynomial {
        &self.relation(a.flat(), b.flat()).f
    }

    /// All pairs `a < b` with their relations, in lex order.
    pub fn pairs(&self) -> impl Iterator<Item = (GenIndex, GenIndex, &Relation)> + '_ {
        let size = (self.n * self.n) as u8;
        (0..size).flat_map(move |a| {
            (a + 1..size).map(move |b| {
                (
                    GenIndex::from_flat(a, self.n),
                    GenIndex::from_flat(b, self.n),
                    self.relation(a, b),
                )
            })
        })
    }

    /// True when the relation tables agree (the stage label is ignored).
    pub fn same_tables(&self, other: &MutationSystem) -> bool {
        self.n == other.n && self.relations == other.relations
    }

    /// One line per pair, `x[k,l]*x[i,j] = <right-hand side>`.
    pub fn relations_text(&self) -> String {
        let mut out = String::new();
        for (a, b, rel) in self.pairs() {
            let mut rhs = NCPolynomial::term(self.n, Word::from_gens(&[a, b]), rel.q.clone());
            rhs.add_scaled(&rel.f, &LaurentScalar::one());
            out.push_str(&format!("{b}*{a} = {rhs}\n"));
        }
        out
    }

    pub(crate) fn cached(&self, key: &(Word, u8)) -> Option<CachedPoly> {
        self.cache.read().unwrap().get(key).cloned()
    }

    pub(crate) fn store(&self, key: (Word, u8), value: CachedPoly) {
        self.cache.write().unwrap().insert(key, value);
    }
}

fn validate_relation(n: usize, a: u8, b: u8, rel: &Relation) -> Result<()> {
    let bad = |msg: &str| Error::InvalidRelation(a as usize, b as usize, msg.to_string());
    if rel.q.is_zero() {
        return Err(bad("q entry must be nonzero"));
    }
    if rel.f.n() != n {
        return Err(bad("f lives on a different grid"));
    }
    let rank = |l: u8| {
        let g = GenIndex::from_flat(l, n);
        g.row() * g.col()
    };
    let bound = rank(a) + rank(b);
    for w in rel.f.words() {
        let ok = w.len() < 2
            || (w.len() == 2 && w.letters().iter().map(|&l| rank(l)).sum::<usize>() < bound);
        if !ok {
            return Err(bad("f word does not decrease the termination measure"));
        }
    }
    Ok(())
}

impl Clone for MutationSystem {
    fn clone(&self) -> Self {
        MutationSystem {
            n: self.n,
            stage: self.stage,
            relations: self.relations.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for MutationSystem {
    fn eq(&self, other: &Self) -> bool {
        self.same_tables(other)
    }
}

impl fmt::Debug for MutationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MutationSystem")
            .field("n", &self.n)
            .field("stage", &self.stage)
            .finish_non_exhaustive()
    }
}

pub fn build_system(n: usize, t: usize) -> Result<MutationSystem> {
    MutationSystem::build(n, t)
}

/// Process-wide `S_1` for each `n`, so product caches are shared.
pub fn quantum_matrices(n: usize) -> Result<Arc<MutationSystem>> {
    static SYSTEMS: [OnceLock<Arc<MutationSystem>>; MAX_N + 1] =
        [const { OnceLock::new() }; MAX_N + 1];
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
        });
    }
    Ok(SYSTEMS[n]
        .get_or_init(|| Arc::new(MutationSystem::build(n, 1).unwrap()))
        .clone())
}

/// Normal form with the default strategy (leftmost descent of the
/// lex-greatest unreduced word).
pub fn normalize(p: &NCPolynomial, s: &MutationSystem) -> NCPolynomial {
    s.normalize(p)
}

/// Product in `A(S)`.
pub fn multiply(p: &NCPolynomial, r: &NCPolynomial, s: &MutationSystem) -> NCPolynomial {
    s.multiply(p, r)
}

/// All standard words of length `d` on the `n x n` grid, in lex order.
pub fn standard_monomials(n: usize, d: usize) -> Vec<Word> {
    let size = (n * n) as u8;
    let mut out = Vec::new();
    let mut cur = Word::unit();
    fn rec(cur: &mut Word, from: u8, size: u8, left: usize, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in from..size {
            cur.push(l);
            rec(cur, l, size, left - 1, out);
            cur.pop();
        }
    }
    rec(&mut cur, 0, size, d, &mut out);
    out
}

#[cfg(test)]
mod tests;
