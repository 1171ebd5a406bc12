//! Homogenization with a central element `t` and the specializations
//! `t ↦ 1` (recovering the filtered algebra) and `t ↦ 0` (its associated
//! graded algebra).
//!
//! `t` is always letter 0 of the homogenized alphabet, i.e. the deg-lex
//! smallest letter, so the commutators `t·x_i - x_i·t` have leading word
//! `x_i·t` and normal words carry every `t` on the left.

use serde::Serialize;

use crate::freealg::{AlgebraError, NCPoly, Word};
use crate::parser::RESERVED_T;
use crate::presentation::Presentation;

/// Letter index of `t` in a homogenized alphabet.
pub const T_INDEX: u32 = 0;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomogError {
    #[error("generator `{RESERVED_T}` already present")]
    ReservedName,
    #[error("presentation has no relations")]
    Empty,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Specialization {
    TToOne,
    TToZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogenizedPresentation {
    /// Alphabet `t, x_1, …, x_n`; relations are the homogenized ones followed
    /// by the commutators.
    pub base: Presentation,
    pub t_index: u32,
    pub homogenized: Vec<NCPoly>,
    pub commutators: Vec<NCPoly>,
}

fn embed(w: &Word) -> Word {
    w.map_letters(|l| l + 1)
}

/// `f^t = Σ f_i t^{s-i}` with `s = deg f`, over the alphabet `t, x_1, …`.
pub fn homogenize_poly(f: &NCPoly) -> Result<NCPoly, AlgebraError> {
    let s = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    Ok(NCPoly::from_terms(f.terms().iter().map(|(w, c)| {
        let t_power = Word::from_letters(vec![T_INDEX; s - w.degree()]);
        (embed(w).concat(&t_power), c.clone())
    })))
}

/// Embeds a polynomial over `x_1, …` into the homogenized alphabet unchanged.
pub fn embed_poly(f: &NCPoly) -> NCPoly {
    NCPoly::from_terms(f.terms().iter().map(|(w, c)| (embed(w), c.clone())))
}

pub fn homogenize_presentation(u: &Presentation) -> Result<HomogenizedPresentation, HomogError> {
    if u.relations.is_empty() {
        return Err(HomogError::Empty);
    }
    if u.alphabet.contains(RESERVED_T) {
        return Err(HomogError::ReservedName);
    }
    let alphabet = u.alphabet.with_prepended(RESERVED_T)?;
    let homogenized = u
        .relations
        .iter()
        .map(homogenize_poly)
        .collect::<Result<Vec<_>, _>>()?;
    let t = NCPoly::var(T_INDEX);
    let commutators: Vec<NCPoly> = (1..=u.num_generators() as u32)
        .map(|i| {
            let x = NCPoly::var(i);
            &(&t * &x) - &(&x * &t)
        })
        .collect();
    let mut relations = homogenized.clone();
    relations.extend(commutators.iter().cloned());
    Ok(HomogenizedPresentation {
        base: Presentation {
            alphabet,
            relations,
            central: Some(T_INDEX),
        },
        t_index: T_INDEX,
        homogenized,
        commutators,
    })
}

/// Sets `t` to 1 or 0 and returns a polynomial over `x_1, …`.
pub fn specialize(f: &NCPoly, mode: Specialization) -> NCPoly {
    let unembed = |w: &Word| w.without_letter(T_INDEX).map_letters(|l| l - 1);
    match mode {
        Specialization::TToOne => {
            NCPoly::from_terms(f.terms().iter().map(|(w, c)| (unembed(w), c.clone())))
        }
        Specialization::TToZero => NCPoly::from_terms(
            f.terms()
                .iter()
                .filter(|(w, _)| w.count_letter(T_INDEX) == 0)
                .map(|(w, c)| (unembed(w), c.clone())),
        ),
    }
}

/// Specializes a homogenized presentation back to `x_1, …`, dropping
/// relations that become zero (the commutators).
pub fn specialize_presentation(h: &HomogenizedPresentation, mode: Specialization) -> Result<Presentation, AlgebraError> {
    let names: Vec<String> = h.base.alphabet.names()[1..].to_vec();
    let alphabet = crate::freealg::Alphabet::new(names)?;
    let relations = h
        .base
        .relations
        .iter()
        .map(|r| specialize(r, mode))
        .filter(|r| !r.is_zero())
        .collect();
    Ok(Presentation::new(alphabet, relations))
}

/// Smallest gap `deg p - i` over all relations `p` and nonzero lower parts
/// `p_i`; `None` when every relation is homogeneous.
///
/// A value of at least 2 means every homogenized relation is congruent to
/// its leading part modulo `t²`.
pub fn degree_drop(relations: &[NCPoly]) -> Option<usize> {
    relations
        .iter()
        .filter_map(|p| {
            let degs = p.degrees();
            let top = *degs.first()?;
            degs.get(1).map(|&next| top - next)
        })
        .min()
}

/// The map `x_i ↦ Σ a_ij x_j + b_i t`, `t ↦ t` applied to a polynomial over
/// the homogenized alphabet.
pub fn apply_homogenized(phi: &crate::freealg::AffineMap, f: &NCPoly) -> NCPoly {
    let n = phi.dim();
    let t = NCPoly::var(T_INDEX);
    let images: Vec<NCPoly> = (0..n)
        .map(|i| {
            let linear = NCPoly::from_terms(
                phi.matrix()
                    .row(i)
                    .iter()
                    .enumerate()
                    .map(|(j, a)| (Word::letter(j as u32 + 1), a.clone())),
            );
            &linear + &t.scale(&phi.shift()[i])
        })
        .collect();
    let mut acc = NCPoly::zero();
    for (w, c) in f.terms() {
        let mut prod = NCPoly::constant(c.clone());
        for &l in w.letters() {
            let img = if l == T_INDEX { t.clone() } else { images[(l - 1) as usize].clone() };
            prod = &prod * &img;
        }
        acc = &acc + &prod;
    }
    acc
}
