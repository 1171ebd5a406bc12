use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::freealg::{NCPoly, Scalar, Word};

/// One step of a reduction: `coeff · left · G[index] · right` was subtracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cofactor {
    pub coeff: Scalar,
    pub left: Word,
    pub index: usize,
    pub right: Word,
}

/// Finds a reducer for `w`: the leftmost occurrence of some leading word,
/// preferring earlier basis elements at the same position.
pub(crate) fn find_reducer(w: &Word, leading: &[&Word]) -> Option<(usize, usize)> {
    let letters = w.letters();
    if letters.is_empty() {
        // the unit word can only be reduced by a constant
        return leading.iter().position(|lw| lw.is_empty()).map(|k| (k, 0));
    }
    for start in 0..letters.len() {
        for (k, lw) in leading.iter().enumerate() {
            let l = lw.letters();
            if start + l.len() <= letters.len() && &letters[start..start + l.len()] == l {
                return Some((k, start));
            }
        }
    }
    None
}

/// Full reduction of `f` by monic `basis`, optionally recording cofactors.
pub(crate) fn reduce(f: &NCPoly, basis: &[NCPoly], mut certificate: Option<&mut Vec<Cofactor>>) -> NCPoly {
    if basis.is_empty() || f.is_zero() {
        return f.clone();
    }
    let leading: Vec<&Word> = basis
        .iter()
        .map(|g| g.leading_word().expect("basis elements are nonzero"))
        .collect();
    let mut work: BTreeMap<Word, Scalar> = f.clone().into_map();
    let mut result: BTreeMap<Word, Scalar> = BTreeMap::new();
    while let Some((w, c)) = work.pop_last() {
        match find_reducer(&w, &leading) {
            Some((k, start)) => {
                let left = w.prefix(start);
                let right = w.suffix_from(start + leading[k].degree());
                // basis elements are monic, so this cancels the term at w
                for (u, a) in basis[k].terms().iter().skip(1) {
                    match work.entry(u.sandwich(&left, &right)) {
                        Entry::Occupied(mut e) => {
                            *e.get_mut() -= &c * a;
                            if e.get().is_zero() {
                                e.remove();
                            }
                        }
                        Entry::Vacant(e) => {
                            e.insert(-(&c * a));
                        }
                    }
                }
                if let Some(cert) = certificate.as_deref_mut() {
                    cert.push(Cofactor {
                        coeff: c,
                        left,
                        index: k,
                        right,
                    });
                }
            }
            None => {
                result.insert(w, c);
            }
        }
    }
    NCPoly::from_map(result)
}

/// Reduces only the leading term repeatedly; returns the first polynomial
/// whose leading word is irreducible (or zero).
pub(crate) fn head_reduce(f: &NCPoly, basis: &[NCPoly]) -> NCPoly {
    let leading: Vec<&Word> = basis.iter().filter_map(|g| g.leading_word()).collect();
    let mut h = f.clone();
    while let Some((w, c)) = h.leading_term() {
        let Some((k, start)) = find_reducer(w, &leading) else {
            break;
        };
        let left = w.prefix(start);
        let right = w.suffix_from(start + leading[k].degree());
        let c = c.clone();
        h = &h - &basis[k].sandwich(&c, &left, &right);
    }
    h
}
