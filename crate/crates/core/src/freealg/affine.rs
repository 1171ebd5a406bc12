use num_traits::Zero;

use super::{AlgebraError, NCPoly, Scalar, Word};
use crate::linalg::Matrix;

/// Filtration-preserving endomorphism `x_i ↦ Σ_j a_ij x_j + b_i`.
///
/// Row `i` of `matrix` holds the linear part of the image of `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    matrix: Matrix,
    shift: Vec<Scalar>,
}

impl AffineMap {
    pub fn new(matrix: Matrix, shift: Vec<Scalar>) -> Result<Self, AlgebraError> {
        if !matrix.is_square() {
            return Err(AlgebraError::DimensionMismatch {
                expected: matrix.rows(),
                got: matrix.cols(),
            });
        }
        if shift.len() != matrix.rows() {
            return Err(AlgebraError::DimensionMismatch {
                expected: matrix.rows(),
                got: shift.len(),
            });
        }
        if matrix.determinant().is_zero() {
            return Err(AlgebraError::SingularMatrix);
        }
        Ok(AffineMap { matrix, shift })
    }

    pub fn linear(matrix: Matrix) -> Result<Self, AlgebraError> {
        let n = matrix.rows();
        Self::new(matrix, vec![Scalar::zero(); n])
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            matrix: Matrix::identity(n),
            shift: vec![Scalar::zero(); n],
        }
    }

    pub fn translation(shift: Vec<Scalar>) -> Self {
        AffineMap {
            matrix: Matrix::identity(shift.len()),
            shift,
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn shift(&self) -> &[Scalar] {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity() && self.shift.iter().all(Zero::is_zero)
    }

    pub fn is_linear(&self) -> bool {
        self.shift.iter().all(Zero::is_zero)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        // other(x_i) = Σ_j c_ij x_j + d_i, then self on x_j
        let matrix = other.matrix.mul(&self.matrix);
        let shift = other
            .matrix
            .apply(&self.shift)
            .into_iter()
            .zip(&other.shift)
            .map(|(a, b)| a + b)
            .collect();
        AffineMap { matrix, shift }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.matrix.inverse().expect("affine maps are invertible");
        let shift = inv.apply(&self.shift).into_iter().map(|v| -v).collect();
        AffineMap { matrix: inv, shift }
    }

    /// Image of generator `x_i`, with generator `j` placed at letter `offset + j`.
    pub fn image_of(&self, i: usize, offset: u32) -> NCPoly {
        let mut terms: Vec<(Word, Scalar)> = self
            .matrix
            .row(i)
            .iter()
            .enumerate()
            .map(|(j, a)| (Word::letter(offset + j as u32), a.clone()))
            .collect();
        terms.push((Word::empty(), self.shift[i].clone()));
        NCPoly::from_terms(terms)
    }

    /// Extends the map to a ring endomorphism and applies it to `f`.
    pub fn apply(&self, f: &NCPoly) -> NCPoly {
        self.apply_with_fixed(f, 0, &[])
    }

    /// Applies the map to generators `offset..offset+dim`; letters outside that
    /// range are sent to `fixed_images` (keyed by letter) or left unchanged.
    pub(crate) fn apply_with_fixed(&self, f: &NCPoly, offset: u32, fixed_images: &[(u32, NCPoly)]) -> NCPoly {
        let n = self.dim() as u32;
        let images: Vec<NCPoly> = (0..self.dim()).map(|i| self.image_of(i, offset)).collect();
        let image = |l: u32| -> NCPoly {
            if l >= offset && l < offset + n {
                images[(l - offset) as usize].clone()
            } else if let Some((_, p)) = fixed_images.iter().find(|(k, _)| *k == l) {
                p.clone()
            } else {
                NCPoly::var(l)
            }
        };
        let mut acc = NCPoly::zero();
        for (w, c) in f.terms() {
            let mut prod = NCPoly::constant(c.clone());
            for &l in w.letters() {
                prod = &prod * &image(l);
            }
            acc = &acc + &prod;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, rat};

    fn sample() -> AffineMap {
        AffineMap::new(
            Matrix::diagonal(&[int(2), rat(1, 2)]),
            vec![int(-5), rat(3, 2)],
        )
        .unwrap()
    }

    #[test]
    fn generator_image() {
        let f = NCPoly::var(0);
        let expected = NCPoly::from_terms([(Word::letter(0), int(2)), (Word::empty(), int(-5))]);
        assert_eq!(sample().apply(&f), expected);
    }

    #[test]
    fn product_expansion() {
        let f = &NCPoly::var(0) * &NCPoly::var(1);
        let expected = NCPoly::from_terms([
            (Word::from_letters(vec![0, 1]), int(1)),
            (Word::letter(0), int(3)),
            (Word::letter(1), rat(-5, 2)),
            (Word::empty(), rat(-15, 2)),
        ]);
        assert_eq!(sample().apply(&f), expected);
    }

    #[test]
    fn identity_and_inverse() {
        let f = &(&NCPoly::var(0) * &NCPoly::var(1)) - &NCPoly::var(1);
        assert_eq!(AffineMap::identity(2).apply(&f), f);
        let phi = sample();
        assert!(phi.compose(&phi.inverse()).is_identity());
        assert_eq!(phi.inverse().apply(&phi.apply(&f)), f);
    }

    #[test]
    fn singular_rejected() {
        let m = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(1)]]).unwrap();
        assert_eq!(AffineMap::linear(m), Err(AlgebraError::SingularMatrix));
    }
}
