use std::collections::BTreeSet;

use super::reduce::{head_reduce, reduce};
use super::{GroebnerBasis, GroebnerError, Status};
use crate::freealg::{NCPoly, Scalar, Word};

/// An overlap ambiguity between two basis elements: the word
/// `lw(first)·right = left·lw(second)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub first: usize,
    pub second: usize,
    pub left: Word,
    pub right: Word,
    pub degree: usize,
}

/// All proper overlaps between leading words of the given (ordered) pair,
/// including self-overlaps when `a == b`.
fn overlaps(a: &Word, b: &Word) -> Vec<usize> {
    let (la, lb) = (a.letters(), b.letters());
    let max = la.len().min(lb.len());
    (1..max)
        .filter(|&o| la[la.len() - o..] == lb[..o])
        .collect()
}

/// Obstructions among the elements of a basis, in increasing degree.
pub fn obstructions(basis: &GroebnerBasis) -> Vec<Obstruction> {
    let lws = basis.leading_words();
    let mut out = Vec::new();
    for (i, a) in lws.iter().enumerate() {
        for (j, b) in lws.iter().enumerate() {
            for o in overlaps(a, b) {
                out.push(Obstruction {
                    first: i,
                    second: j,
                    left: a.prefix(a.degree() - o),
                    right: b.suffix_from(o),
                    degree: a.degree() + b.degree() - o,
                });
            }
        }
    }
    out.sort_by_key(|ob| (ob.degree, ob.first, ob.second, ob.left.degree()));
    out
}

pub fn s_polynomial(basis: &GroebnerBasis, ob: &Obstruction) -> NCPoly {
    let one = Scalar::from_integer(1.into());
    let g = &basis.elements()[ob.first];
    let h = &basis.elements()[ob.second];
    &g.sandwich(&one, &Word::empty(), &ob.right) - &h.sandwich(&one, &ob.left, &Word::empty())
}

/// Pending pair, ordered by S-polynomial degree first.
type Pair = (usize, usize, usize, usize);

struct Completion {
    // `None` marks elements removed by inter-reduction
    slots: Vec<Option<NCPoly>>,
    pairs: BTreeSet<Pair>,
}

impl Completion {
    fn active(&self) -> Vec<NCPoly> {
        self.slots.iter().flatten().cloned().collect()
    }

    fn insert(&mut self, f: NCPoly) {
        let mut pending = vec![f];
        while let Some(f) = pending.pop() {
            let h = reduce(&f, &self.active(), None);
            if h.is_zero() {
                continue;
            }
            let h = h.monic();
            let lw = h.leading_word().unwrap().clone();
            // inclusion ambiguities: evict elements whose leading word contains lw
            let mut evicted = Vec::new();
            for slot in self.slots.iter_mut() {
                if slot
                    .as_ref()
                    .is_some_and(|g| g.leading_word().unwrap().contains(&lw))
                {
                    evicted.push(slot.take().unwrap());
                }
            }
            let id = self.slots.len();
            self.slots.push(Some(h));
            self.add_pairs(id);
            // re-add in reverse so the first evicted is processed first
            pending.extend(evicted.into_iter().rev());
        }
    }

    fn add_pairs(&mut self, id: usize) {
        let lw_new = self.slots[id].as_ref().unwrap().leading_word().unwrap().clone();
        for (k, slot) in self.slots.iter().enumerate() {
            let Some(g) = slot else { continue };
            let lw = g.leading_word().unwrap();
            for o in overlaps(&lw_new, lw) {
                self.pairs.insert((lw_new.degree() + lw.degree() - o, id, k, o));
            }
            if k != id {
                for o in overlaps(lw, &lw_new) {
                    self.pairs.insert((lw_new.degree() + lw.degree() - o, k, id, o));
                }
            }
        }
    }

    fn s_poly(&self, a: usize, b: usize, o: usize) -> Option<NCPoly> {
        let g = self.slots[a].as_ref()?;
        let h = self.slots[b].as_ref()?;
        let (lg, lh) = (g.leading_word().unwrap(), h.leading_word().unwrap());
        let one = Scalar::from_integer(1.into());
        let right = lh.suffix_from(o);
        let left = lg.prefix(lg.degree() - o);
        Some(&g.sandwich(&one, &Word::empty(), &right) - &h.sandwich(&one, &left, &Word::empty()))
    }
}

/// Degree-truncated completion of the two-sided ideal generated by `relations`.
///
/// Obstructions are processed in increasing degree. If an obstruction of
/// degree above `degree_bound` remains, the result is marked truncated and is
/// a Gröbner basis only through that degree.
pub fn buchberger(relations: &[NCPoly], degree_bound: usize) -> Result<GroebnerBasis, GroebnerError> {
    if relations.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    if let Some(i) = relations.iter().position(NCPoly::is_zero) {
        return Err(GroebnerError::ZeroRelation(i));
    }
    let max_deg = relations.iter().filter_map(NCPoly::degree).max().unwrap_or(0);
    if degree_bound < max_deg {
        return Err(GroebnerError::BoundTooSmall {
            bound: degree_bound,
            degree: max_deg,
        });
    }

    let mut c = Completion {
        slots: Vec::new(),
        pairs: BTreeSet::new(),
    };
    for r in relations {
        c.insert(r.clone());
    }

    let mut status = Status::Complete;
    while let Some(pair) = c.pairs.pop_first() {
        let (deg, a, b, o) = pair;
        let Some(s) = c.s_poly(a, b, o) else {
            continue;
        };
        if deg > degree_bound {
            status = Status::Truncated;
            break;
        }
        let s = head_reduce(&s, &c.active());
        if !s.is_zero() {
            c.insert(s);
        }
    }

    let homogeneous = relations.iter().all(NCPoly::is_homogeneous);
    Ok(GroebnerBasis::from_parts(inter_reduce(c.active()), degree_bound, status, homogeneous))
}

/// Reduces every tail against the other elements and sorts by leading word.
fn inter_reduce(mut elems: Vec<NCPoly>) -> Vec<NCPoly> {
    for i in 0..elems.len() {
        let (lw, lc) = {
            let (w, c) = elems[i].leading_term().unwrap();
            (w.clone(), c.clone())
        };
        let tail = &elems[i] - &NCPoly::term(lw.clone(), lc.clone());
        let others: Vec<NCPoly> = elems
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let tail = reduce(&tail, &others, None);
        elems[i] = &NCPoly::term(lw, lc) + &tail;
    }
    elems.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
    elems
}
