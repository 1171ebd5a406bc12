use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgebraError, Scalar, Word};

/// Element of the free algebra over ℚ.
///
/// Terms are kept sorted by word in descending deg-lex order with no zero
/// coefficients, so the leading term is always `terms[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: Vec<(Word, Scalar)>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn var(index: u32) -> Self {
        Self::term(Word::letter(index), Scalar::one())
    }

    pub fn term(word: Word, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPoly { terms: vec![(word, c)] }
    }

    pub fn word(word: Word) -> Self {
        Self::term(word, Scalar::one())
    }

    /// Sums the given terms, merging repeated words.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            *acc.entry(w).or_insert_with(Scalar::zero) += c;
        }
        Self::from_map(acc)
    }

    pub(crate) fn from_map(map: BTreeMap<Word, Scalar>) -> Self {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        NCPoly { terms }
    }

    pub(crate) fn into_map(self) -> BTreeMap<Word, Scalar> {
        self.terms.into_iter().collect()
    }

    pub fn terms(&self) -> &[(Word, Scalar)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.iter().map(|(w, _)| w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal word length in the support; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(w, _)| w.degree())
    }

    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.first().map(|(w, c)| (w, c))
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.first().map(|(w, _)| w)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff(&self, word: &Word) -> Scalar {
        // terms are descending, so search with reversed comparison
        match self.terms.binary_search_by(|(w, _)| word.cmp(w)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn contains_word(&self, word: &Word) -> bool {
        self.terms.binary_search_by(|(w, _)| word.cmp(w)).is_ok()
    }

    /// The leading homogeneous polynomial: all terms of maximal degree.
    pub fn lh(&self) -> Result<NCPoly, AlgebraError> {
        let d = self.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    pub fn homogeneous_part(&self, degree: usize) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == degree)
                .cloned()
                .collect(),
        }
    }

    /// Degrees `i` for which the degree-`i` homogeneous part is nonzero, descending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.iter().map(|(w, _)| w.degree()).collect();
        out.dedup();
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> NCPoly {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.terms.iter().filter_map(|(w, _)| w.max_letter()).max()
    }

    /// Applies a letter relabeling to every word. The map need not preserve
    /// order, so terms are re-sorted.
    pub fn map_letters(&self, f: impl Fn(u32) -> u32) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.map_letters(&f), c.clone())))
    }

    /// `c · left · self · right`.
    pub fn sandwich(&self, c: &Scalar, left: &Word, right: &Word) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        // deg-lex is multiplicative, so sandwiching preserves the term order
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.sandwich(left, right), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> NCPoly {
        let mut out = NCPoly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    fn merge(&self, other: &NCPoly, negate_other: bool) -> NCPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (w, c) in &b[j..] {
            out.push((w.clone(), if negate_other { -c } else { c.clone() }));
        }
        NCPoly { terms: out }
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.merge(rhs, false)
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        self.merge(&rhs, false)
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.merge(rhs, true)
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        self.merge(&rhs, true)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        if self.is_zero() || rhs.is_zero() {
            return NCPoly::zero();
        }
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                *acc.entry(u.concat(v)).or_insert_with(Scalar::zero) += a * b;
            }
        }
        NCPoly::from_map(acc)
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl std::fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}*{:?}", c, w))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::int;

    fn x(i: u32) -> NCPoly {
        NCPoly::var(i)
    }

    #[test]
    fn distributes_over_sums() {
        let f = &(&x(0) + &NCPoly::one()) * &x(1);
        let expected = NCPoly::from_terms([
            (Word::from_letters(vec![0, 1]), int(1)),
            (Word::letter(1), int(1)),
        ]);
        assert_eq!(f, expected);
    }

    #[test]
    fn quantum_plane_relation_and_zero() {
        let f = &(&x(0) * &x(1)) - &(&x(1) * &x(0)).scale(&int(2));
        assert_eq!(f.len(), 2);
        assert_eq!(f.leading_word(), Some(&Word::from_letters(vec![1, 0])));
        assert_eq!(f.coeff(&Word::from_letters(vec![0, 1])), int(1));
        assert!((&f * &NCPoly::zero()).is_zero());
    }

    #[test]
    fn leading_homogeneous_part() {
        // x1^2 x2 - a x1x2x1 - b x2x1^2 - g x1 with a=1, b=2, g=1
        let f = NCPoly::from_terms([
            (Word::from_letters(vec![0, 0, 1]), int(1)),
            (Word::from_letters(vec![0, 1, 0]), int(-1)),
            (Word::from_letters(vec![1, 0, 0]), int(-2)),
            (Word::letter(0), int(-1)),
        ]);
        let lh = f.lh().unwrap();
        assert_eq!(lh.len(), 3);
        assert!(lh.is_homogeneous());
        assert_eq!(lh.lh().unwrap(), lh);
        assert_eq!(NCPoly::constant(int(5)).lh().unwrap(), NCPoly::constant(int(5)));
        assert!(NCPoly::zero().lh().is_err());
    }

    #[test]
    fn exact_cancellation() {
        let f = NCPoly::from_terms([(Word::letter(0), crate::freealg::rat(1, 3))]);
        let g = NCPoly::from_terms([(Word::letter(1), crate::freealg::rat(2, 7))]);
        assert_eq!(&(&f + &g) - &g, f);
    }
}
