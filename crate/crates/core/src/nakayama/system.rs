use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cpoly::CPoly;
use crate::freealg::{NCPoly, Word};
use crate::groebner::GroebnerBasis;
use crate::homog::T_INDEX;
use crate::linalg::Matrix;

/// One coefficient equation: the coefficient of the normal word `word` (over
/// `t, x_1, …`) in the normal form of the image of homogenized relation
/// number `relation` must vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualEquation {
    pub relation: usize,
    pub word: Word,
    pub poly: CPoly,
}

/// `μ(f)` for `μ(x_i) = Σ_j a_ij x_j + b_i t`, `μ(t) = t` with symbolic `b`,
/// over the homogenized alphabet (`t` is letter 0, `x_i` is letter `i`).
pub(crate) fn symbolic_image(f: &NCPoly, m: &Matrix) -> BTreeMap<Word, CPoly> {
    let n = m.rows();
    let t = Word::letter(T_INDEX);
    let mut acc: BTreeMap<Word, CPoly> = BTreeMap::new();
    for (w, c) in f.terms() {
        let mut cur: BTreeMap<Word, CPoly> = BTreeMap::new();
        cur.insert(Word::empty(), CPoly::constant(n, c.clone()));
        for &l in w.letters() {
            let mut next: BTreeMap<Word, CPoly> = BTreeMap::new();
            for (u, coef) in &cur {
                if l == T_INDEX {
                    accumulate(&mut next, u.concat(&t), coef);
                    continue;
                }
                let i = (l - 1) as usize;
                for (j, a) in m.row(i).iter().enumerate() {
                    if !a.is_zero() {
                        accumulate(&mut next, u.concat(&Word::letter(j as u32 + 1)), &coef.scale(a));
                    }
                }
                accumulate(&mut next, u.concat(&t), &coef.mul(&CPoly::var(n, i)));
            }
            cur = next;
        }
        for (u, coef) in cur {
            accumulate(&mut acc, u, &coef);
        }
    }
    acc
}

fn accumulate(map: &mut BTreeMap<Word, CPoly>, key: Word, add: &CPoly) {
    if add.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            let sum = e.get().add(add);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            e.insert(add.clone());
        }
    }
}

/// Coefficient equations of `NF(μ(p)) = 0` for every homogenized relation
/// `p`, using the linearity `NF(Σ c_w(b) w) = Σ c_w(b) NF(w)`.
pub(crate) fn build(relations: &[NCPoly], m: &Matrix, basis: &GroebnerBasis) -> Vec<ResidualEquation> {
    let mut cache: BTreeMap<Word, NCPoly> = BTreeMap::new();
    let mut out = Vec::new();
    for (idx, p) in relations.iter().enumerate() {
        let image = symbolic_image(p, m);
        let mut eqs: BTreeMap<Word, CPoly> = BTreeMap::new();
        for (w, coef) in &image {
            let nf = cache
                .entry(w.clone())
                .or_insert_with(|| basis.normal_form(&NCPoly::word(w.clone())))
                .clone();
            for (u, a) in nf.terms() {
                accumulate(&mut eqs, u.clone(), &coef.scale(a));
            }
        }
        for (word, poly) in eqs.into_iter().rev() {
            out.push(ResidualEquation {
                relation: idx,
                word,
                poly,
            });
        }
    }
    out
}
