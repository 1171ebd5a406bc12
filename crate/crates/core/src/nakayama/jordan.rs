use serde::Serialize;

use crate::freealg::Scalar;
use crate::linalg::Matrix;
use crate::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootOfUnity {
    Yes(u32),
    No,
}

impl RootOfUnity {
    pub fn is_yes(self) -> bool {
        matches!(self, RootOfUnity::Yes(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenBlocks {
    pub value: Scalar,
    pub multiplicity: usize,
    /// Jordan block sizes, largest first.
    pub blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanReport {
    pub char_poly: UPoly,
    /// Monic irreducible factors over ℚ with multiplicities.
    pub char_poly_factors: Vec<(UPoly, usize)>,
    pub factorization_complete: bool,
    pub rational_eigen: Vec<EigenBlocks>,
    pub all_rational: bool,
    /// One entry per factor, in the same order.
    pub root_of_unity_flags: Vec<RootOfUnity>,
}

impl JordanReport {
    pub fn is_diagonalizable(&self) -> bool {
        self.all_rational && self.rational_eigen.iter().all(|e| e.blocks.iter().all(|&b| b == 1))
    }
}

/// Ranks of `(M - λI)^k` for `k = 0, 1, …` until they stabilize.
pub fn rank_sequence(m: &Matrix, lambda: &Scalar) -> Vec<usize> {
    let n = m.rows();
    let shifted = m.shifted(lambda);
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    loop {
        power = power.mul(&shifted);
        let r = power.rank();
        let prev = *ranks.last().unwrap();
        ranks.push(r);
        if r == prev {
            break;
        }
    }
    ranks
}

fn block_sizes(ranks: &[usize]) -> Vec<usize> {
    // at_least[k] = number of blocks of size ≥ k+1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (0..at_least.len()).rev() {
        let exact = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k + 1, exact));
    }
    sizes
}

pub fn jordan_structure(m: &Matrix) -> JordanReport {
    let char_poly = m.char_poly();
    let fact = char_poly.factor();
    let mut rational_eigen = Vec::new();
    let mut flags = Vec::new();
    for (f, mult) in &fact.factors {
        flags.push(is_root_of_unity(f));
        if f.degree() == Some(1) {
            let value = -f.coeffs()[0].clone() / f.coeffs()[1].clone();
            let blocks = block_sizes(&rank_sequence(m, &value));
            rational_eigen.push(EigenBlocks {
                value,
                multiplicity: *mult,
                blocks,
            });
        }
    }
    let all_rational = fact.factors.iter().all(|(f, _)| f.degree() == Some(1));
    JordanReport {
        char_poly,
        char_poly_factors: fact.factors,
        factorization_complete: fact.complete,
        rational_eigen,
        all_rational,
        root_of_unity_flags: flags,
    }
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Φ_d` for the
/// proper divisors `d` of `n`.
pub fn cyclotomic(n: u32) -> UPoly {
    assert!(n > 0, "cyclotomic index must be positive");
    let mut coeffs = vec![Scalar::from_integer(0.into()); n as usize + 1];
    coeffs[0] = Scalar::from_integer((-1).into());
    coeffs[n as usize] = Scalar::from_integer(1.into());
    let mut p = UPoly::from_coeffs(coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_rem(&cyclotomic(d)).0;
    }
    p
}

/// Whether the irreducible `p` is a cyclotomic polynomial, and of which order.
///
/// Only orders `n` with `φ(n) = deg p` can match, and `φ(n) ≥ √(n/2)`
/// bounds them by `2·deg²`.
pub fn is_root_of_unity(p: &UPoly) -> RootOfUnity {
    let Some(d) = p.degree() else {
        return RootOfUnity::No;
    };
    if d == 0 {
        return RootOfUnity::No;
    }
    let monic = p.monic();
    let limit = (2 * d * d).max(2) as u32;
    (1..=limit)
        .filter(|&n| euler_phi(n) as usize == d)
        .find(|&n| cyclotomic(n) == monic)
        .map_or(RootOfUnity::No, RootOfUnity::Yes)
}

/// Root-of-unity test for a rational number.
pub fn is_rational_root_of_unity(x: &Scalar) -> RootOfUnity {
    is_root_of_unity(&UPoly::linear(x))
}
