//! Lifting a graded Nakayama automorphism `x ↦ Mx` of `A` to a filtered one
//! `x ↦ Mx + b` of a PBW deformation `U`, plus the Jordan analysis of `M`,
//! the Calabi-Yau test and skew extensions.

mod jordan;
mod system;

pub use jordan::{
    cyclotomic, euler_phi, is_rational_root_of_unity, is_root_of_unity, jordan_structure, rank_sequence,
    EigenBlocks, JordanReport, RootOfUnity,
};
pub use system::ResidualEquation;

use num_traits::Zero;
use serde::Serialize;

use crate::cpoly::{solve_rational, CPoly, SolveError};
use crate::freealg::{AffineMap, AlgebraError, NCPoly, Scalar};
use crate::groebner::{buchberger, ideal_member, GroebnerBasis, GroebnerError, Membership};
use crate::homog::{apply_homogenized, degree_drop, homogenize_presentation, HomogError};
use crate::parser::RESERVED_T;
use crate::linalg::Matrix;
use crate::presentation::Presentation;
use crate::upoly::UPoly;

/// Name of the generator adjoined by [`build_skew_extension`].
pub const SKEW_GENERATOR: &str = "z";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NakayamaError {
    #[error("matrix is {got}x{got} but there are {expected} generators")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("Gröbner basis truncated at degree {bound}; raise the degree bound")]
    Truncated { bound: usize },
    #[error("graded map does not preserve the graded relations")]
    NotGradedAutomorphism,
    #[error("no rational solution{}", eliminant.as_ref().map(|e| format!(" (eliminant {e})")).unwrap_or_default())]
    NoRationalSolution {
        eliminant: Option<UPoly>,
        irrational_factors: Vec<UPoly>,
    },
    #[error("solution set is positive-dimensional in shift coordinates {free:?}")]
    PositiveDimensional {
        free: Vec<usize>,
        /// Present when the residual system is linear.
        family: Option<AffineFamily>,
        system: Vec<ResidualEquation>,
    },
    #[error("candidate lift failed re-verification")]
    VerificationFailed,
    #[error("generator `{SKEW_GENERATOR}` already present")]
    NameCollision,
    #[error("generator `{RESERVED_T}` is reserved for homogenization")]
    ReservedName,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftMethod {
    FastPathDegreeDrop,
    PolynomialSystem,
}

/// The shifts `particular + Σ s_k directions[k]` for all rational `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFamily {
    pub particular: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
}

impl AffineFamily {
    pub fn contains(&self, shift: &[Scalar]) -> bool {
        let diff: Vec<Scalar> = shift.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        if self.directions.is_empty() {
            return diff.iter().all(Zero::is_zero);
        }
        // diff must lie in the row space of the directions
        let base = Matrix::from_rows(self.directions.clone()).expect("directions share a length");
        let mut rows = self.directions.clone();
        rows.push(diff);
        let extended = Matrix::from_rows(rows).expect("same length");
        extended.rank() == base.rank()
    }
}

/// Describes the solution set of a linear system as an affine family.
fn linear_family(polys: &[CPoly], n: usize) -> Option<AffineFamily> {
    if polys.iter().any(|p| p.total_degree().unwrap_or(0) > 1) {
        return None;
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for p in polys {
        let mut row = vec![Scalar::zero(); n];
        let mut constant = Scalar::zero();
        for (m, c) in p.terms() {
            match m.iter().position(|&e| e == 1) {
                Some(i) => row[i] = c.clone(),
                None => constant = c.clone(),
            }
        }
        rows.push(row);
        rhs.push(-constant);
    }
    if rows.is_empty() {
        return Some(AffineFamily {
            particular: vec![Scalar::zero(); n],
            directions: Matrix::identity(n).to_rows(),
        });
    }
    let a = Matrix::from_rows(rows).ok()?;
    Some(AffineFamily {
        particular: a.solve(&rhs)?,
        directions: a.kernel(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftResult {
    pub solutions: Vec<AffineMap>,
    pub method: LiftMethod,
    pub system: Vec<ResidualEquation>,
    /// More than one lift was found.
    pub uniqueness_note: bool,
    /// Eliminant factors without rational roots (possible irrational shifts).
    pub irrational_factors: Vec<UPoly>,
    /// Basis of the homogenized ideal, exact through the top relation degree.
    pub homogenized_basis: GroebnerBasis,
}

fn check_dims(u: &Presentation, m: &Matrix) -> Result<(), NakayamaError> {
    let n = u.num_generators();
    if !m.is_square() || m.rows() != n {
        return Err(NakayamaError::DimensionMismatch {
            expected: n,
            got: m.rows(),
        });
    }
    Ok(())
}

/// Homogenized relations of `U` and a basis of their (homogeneous) ideal
/// that decides membership exactly through the top relation degree.
struct Homogenized {
    relations: Vec<NCPoly>,
    basis: GroebnerBasis,
}

impl Homogenized {
    fn new(u: &Presentation, bound: usize) -> Result<Self, NakayamaError> {
        let degree = u.max_degree();
        if bound < degree {
            return Err(GroebnerError::BoundTooSmall { bound, degree }.into());
        }
        let h = homogenize_presentation(u).map_err(|e| match e {
            HomogError::Algebra(a) => NakayamaError::Algebra(a),
            HomogError::Empty => NakayamaError::Groebner(GroebnerError::EmptyInput),
            HomogError::ReservedName => NakayamaError::ReservedName,
        })?;
        let basis = buchberger(&h.base.relations, degree.max(2))?;
        Ok(Homogenized {
            relations: h.homogenized,
            basis,
        })
    }

    /// `x_i ↦ Σ a_ij x_j + b_i t`, `t ↦ t` preserves the homogenized ideal.
    fn preserved_by(&self, phi: &AffineMap) -> bool {
        self.relations
            .iter()
            .all(|r| self.basis.normal_form(&apply_homogenized(phi, r)).is_zero())
    }
}

/// Whether `x_i ↦ Σ a_ij x_j` maps every graded relation into the graded ideal.
pub fn verify_graded_automorphism(a: &Presentation, m: &Matrix, bound: usize) -> Result<Membership, NakayamaError> {
    check_dims(a, m)?;
    let phi = AffineMap::linear(m.clone()).map_err(|_| NakayamaError::Singular)?;
    let g = buchberger(&a.relations, bound)?;
    let mut verdict = Membership::Yes;
    for r in &a.relations {
        match ideal_member(&phi.apply(r), &g) {
            Membership::No => return Ok(Membership::No),
            Membership::Unknown => verdict = Membership::Unknown,
            Membership::Yes => {}
        }
    }
    Ok(verdict)
}

/// Whether `φ` maps every relation of `U` to zero modulo a complete basis.
pub fn verify_filtered_automorphism(u: &Presentation, phi: &AffineMap, basis: &GroebnerBasis) -> bool {
    u.relations.iter().all(|p| basis.normal_form(&phi.apply(p)).is_zero())
}

/// Whether the induced map `x_i ↦ Σ a_ij x_j + b_i t`, `t ↦ t` sends every
/// homogenized relation into the homogenized ideal. Setting `t = 1` then
/// shows that `φ` preserves the ideal of `U`.
pub fn verify_homogenized_lift(u: &Presentation, phi: &AffineMap, bound: usize) -> Result<bool, NakayamaError> {
    check_dims(u, phi.matrix())?;
    Ok(Homogenized::new(u, bound)?.preserved_by(phi))
}

/// Coefficient equations in `b_1..b_n` for `x ↦ Mx + bt`, `t ↦ t` to
/// preserve the homogenized ideal of `U`.
///
/// The homogenized ideal is homogeneous, so its basis truncated at the top
/// relation degree already decides membership of the images exactly.
pub fn residual_system(u: &Presentation, m: &Matrix, bound: usize) -> Result<Vec<ResidualEquation>, NakayamaError> {
    check_dims(u, m)?;
    let h = Homogenized::new(u, bound)?;
    Ok(system::build(&h.relations, m, &h.basis))
}

/// Lifts the graded Nakayama automorphism `M` of `gr U` to `U`.
///
/// When every lower-degree part of every relation sits at least two degrees
/// below the top, `b = 0` is taken directly. Otherwise the residual system is
/// solved for rational `b`. Every returned map is re-verified.
pub fn lift_nakayama(u: &Presentation, m: &Matrix, bound: usize) -> Result<LiftResult, NakayamaError> {
    lift_impl(u, m, bound, true)
}

/// As [`lift_nakayama`] but always solving the residual system.
pub fn lift_nakayama_general(u: &Presentation, m: &Matrix, bound: usize) -> Result<LiftResult, NakayamaError> {
    lift_impl(u, m, bound, false)
}

fn lift_impl(u: &Presentation, m: &Matrix, bound: usize, allow_fast: bool) -> Result<LiftResult, NakayamaError> {
    check_dims(u, m)?;
    if m.determinant().is_zero() {
        return Err(NakayamaError::Singular);
    }
    match verify_graded_automorphism(&u.graded(), m, bound)? {
        Membership::Yes => {}
        Membership::No => return Err(NakayamaError::NotGradedAutomorphism),
        Membership::Unknown => return Err(NakayamaError::Truncated { bound }),
    }
    let h = Homogenized::new(u, bound)?;
    let system = system::build(&h.relations, m, &h.basis);
    let n = u.num_generators();

    let fast = allow_fast && degree_drop(&u.relations).is_none_or(|d| d >= 2);
    if fast {
        let phi = AffineMap::linear(m.clone())?;
        if !h.preserved_by(&phi) {
            return Err(NakayamaError::VerificationFailed);
        }
        return Ok(LiftResult {
            solutions: vec![phi],
            method: LiftMethod::FastPathDegreeDrop,
            system,
            uniqueness_note: false,
            irrational_factors: Vec::new(),
            homogenized_basis: h.basis,
        });
    }

    let polys: Vec<CPoly> = system.iter().map(|e| e.poly.clone()).collect();
    let sols = match solve_rational(&polys, n) {
        Ok(s) => s,
        Err(SolveError::PositiveDimensional { free }) => {
            let family = linear_family(&polys, n);
            return Err(NakayamaError::PositiveDimensional { free, family, system });
        }
    };
    if sols.points.is_empty() {
        return Err(NakayamaError::NoRationalSolution {
            eliminant: sols.eliminant,
            irrational_factors: sols.irrational_factors,
        });
    }
    let mut solutions = Vec::new();
    for b in sols.points {
        let phi = AffineMap::new(m.clone(), b)?;
        if !h.preserved_by(&phi) {
            return Err(NakayamaError::VerificationFailed);
        }
        solutions.push(phi);
    }
    Ok(LiftResult {
        uniqueness_note: solutions.len() > 1,
        solutions,
        method: LiftMethod::PolynomialSystem,
        system,
        irrational_factors: sols.irrational_factors,
        homogenized_basis: h.basis,
    })
}

/// True iff the lift is the identity.
pub fn is_calabi_yau(phi: &AffineMap) -> bool {
    phi.is_identity()
}

/// `U[z; φ]`: adjoins `z` as the largest generator with relations
/// `z·x_i - φ(x_i)·z`.
pub fn build_skew_extension(u: &Presentation, phi: &AffineMap) -> Result<Presentation, NakayamaError> {
    let n = u.num_generators();
    if phi.dim() != n {
        return Err(NakayamaError::DimensionMismatch {
            expected: n,
            got: phi.dim(),
        });
    }
    if u.alphabet.contains(SKEW_GENERATOR) {
        return Err(NakayamaError::NameCollision);
    }
    let alphabet = u.alphabet.with_appended(SKEW_GENERATOR)?;
    let z = NCPoly::var(n as u32);
    let mut relations = u.relations.clone();
    for i in 0..n {
        let x = NCPoly::var(i as u32);
        relations.push(&(&z * &x) - &(&phi.image_of(i, 0) * &z));
    }
    Ok(Presentation {
        alphabet,
        relations,
        central: u.central,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, rat, Alphabet};
    use crate::parser::parse_poly;

    fn pres(rels: &[&str]) -> Presentation {
        let a = Alphabet::standard(2);
        let r = rels.iter().map(|s| parse_poly(s, &a).unwrap()).collect();
        Presentation::new(a, r)
    }

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
        Matrix::from_rows(vec![vec![int(a), int(b)], vec![int(c), int(d)]]).unwrap()
    }

    #[test]
    fn quantum_plane_lift() {
        let u = pres(&["x1*x2 - 2*x2*x1 + 3*x1 + 5*x2 + 7"]);
        let m = Matrix::diagonal(&[int(2), rat(1, 2)]);
        let r = lift_nakayama(&u, &m, 6).unwrap();
        assert_eq!(r.method, LiftMethod::PolynomialSystem);
        assert_eq!(r.solutions.len(), 1);
        assert_eq!(r.solutions[0].shift(), &[int(-5), rat(3, 2)]);
        assert!(!is_calabi_yau(&r.solutions[0]));
        assert!(verify_homogenized_lift(&u, &r.solutions[0], 6).unwrap());
    }

    #[test]
    fn graded_checks() {
        let a = pres(&["x1*x2 - 2*x2*x1"]);
        assert_eq!(
            verify_graded_automorphism(&a, &Matrix::diagonal(&[int(2), rat(1, 2)]), 6).unwrap(),
            Membership::Yes
        );
        assert_eq!(verify_graded_automorphism(&a, &Matrix::identity(2), 6).unwrap(), Membership::Yes);
        assert_eq!(verify_graded_automorphism(&a, &m2(0, 1, 1, 0), 6).unwrap(), Membership::No);
    }

    #[test]
    fn graded_input_forces_zero_shift() {
        let a = pres(&["x1*x2 - 2*x2*x1"]);
        let r = lift_nakayama_general(&a, &Matrix::diagonal(&[int(2), rat(1, 2)]), 6).unwrap();
        assert_eq!(r.solutions, vec![AffineMap::linear(Matrix::diagonal(&[int(2), rat(1, 2)])).unwrap()]);
    }

    #[test]
    fn weyl_fast_path() {
        let u = pres(&["x1*x2 - x2*x1 - 1"]);
        let r = lift_nakayama(&u, &Matrix::identity(2), 6).unwrap();
        assert_eq!(r.method, LiftMethod::FastPathDegreeDrop);
        assert!(is_calabi_yau(&r.solutions[0]));
        // translations are automorphisms of the Weyl algebra
        match lift_nakayama_general(&u, &Matrix::identity(2), 6) {
            Err(NakayamaError::PositiveDimensional { free, family: Some(family), .. }) => {
                assert_eq!(free, vec![0, 1]);
                assert!(family.contains(&[int(0), int(0)]));
                assert!(family.contains(&[int(3), rat(-1, 7)]));
            }
            other => panic!("expected a positive-dimensional family, got {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_graded_map() {
        let u = pres(&["x1*x2 - 2*x2*x1 + 3*x1 + 5*x2 + 7"]);
        assert_eq!(lift_nakayama(&u, &m2(0, 1, 1, 0), 6).unwrap_err(), NakayamaError::NotGradedAutomorphism);
        assert!(matches!(
            lift_nakayama(&u, &Matrix::identity(3), 6),
            Err(NakayamaError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn skew_extension_shape() {
        let u = pres(&["x1*x2 - x2*x1 - 1"]);
        let e = build_skew_extension(&u, &AffineMap::identity(2)).unwrap();
        assert_eq!(e.num_generators(), 3);
        assert_eq!(e.relations.len(), 3);
        assert_eq!(e.alphabet.name(2), "z");
        let clash = Presentation::new(Alphabet::new(["x", "z"]).unwrap(), vec![NCPoly::var(0)]);
        assert_eq!(
            build_skew_extension(&clash, &AffineMap::identity(2)).unwrap_err(),
            NakayamaError::NameCollision
        );
    }
}
