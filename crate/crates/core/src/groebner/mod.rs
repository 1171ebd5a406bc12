//! Degree-truncated two-sided Gröbner bases in the free algebra under deg-lex.

mod complete;
mod pbw;
mod reduce;

pub use complete::{buchberger, obstructions, s_polynomial, Obstruction};
pub use pbw::{is_pbw_deformation, normal_word_counts, DegreeDims, PbwReport, PbwVerdict};
pub use reduce::Cofactor;

use serde::Serialize;

use crate::freealg::NCPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("no relations given")]
    EmptyInput,
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("degree bound {bound} is below the relation degree {degree}")]
    BoundTooSmall { bound: usize, degree: usize },
    #[error("relation {0} of the deformation has no matching graded relation")]
    MalformedPairing(usize),
    #[error("generator counts differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    Truncated,
}

/// Reduced monic Gröbner basis, sorted by leading word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<NCPoly>,
    degree_bound: usize,
    status: Status,
    homogeneous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl GroebnerBasis {
    pub(crate) fn from_parts(elements: Vec<NCPoly>, degree_bound: usize, status: Status, homogeneous: bool) -> Self {
        GroebnerBasis {
            elements,
            degree_bound,
            status,
            homogeneous,
        }
    }

    pub fn elements(&self) -> &[NCPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// The input relations were homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// Membership of elements of degree `≤ degree` is decided exactly: the
    /// basis is complete, or the ideal is homogeneous and every obstruction
    /// up to the bound was resolved.
    pub fn is_exact_through(&self, degree: usize) -> bool {
        self.is_complete() || (self.homogeneous && degree <= self.degree_bound)
    }

    pub fn max_degree(&self) -> usize {
        self.elements.iter().filter_map(NCPoly::degree).max().unwrap_or(0)
    }

    /// True when the ideal is the whole algebra.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.degree() == Some(0))
    }

    pub fn leading_words(&self) -> Vec<&crate::freealg::Word> {
        self.elements.iter().filter_map(NCPoly::leading_word).collect()
    }

    pub fn normal_form(&self, f: &NCPoly) -> NCPoly {
        normal_form(f, self)
    }

    pub fn is_normal_word(&self, w: &crate::freealg::Word) -> bool {
        reduce::find_reducer(w, &self.leading_words()).is_none()
    }
}

/// Rewrites the deg-lex greatest reducible term until none remain. Ties go
/// to the leftmost occurrence, then to the earliest basis element.
pub fn normal_form(f: &NCPoly, basis: &GroebnerBasis) -> NCPoly {
    reduce::reduce(f, &basis.elements, None)
}

/// Normal form together with the cofactor triples such that
/// `f - nf = Σ coeff · left · G[index] · right`.
pub fn normal_form_with_certificate(f: &NCPoly, basis: &GroebnerBasis) -> (NCPoly, Vec<Cofactor>) {
    let mut cert = Vec::new();
    let nf = reduce::reduce(f, &basis.elements, Some(&mut cert));
    (nf, cert)
}

/// Re-expands a certificate into the polynomial it certifies.
pub fn expand_certificate(cert: &[Cofactor], basis: &GroebnerBasis) -> NCPoly {
    cert.iter().fold(NCPoly::zero(), |acc, c| {
        &acc + &basis.elements[c.index].sandwich(&c.coeff, &c.left, &c.right)
    })
}

pub fn ideal_member(f: &NCPoly, basis: &GroebnerBasis) -> Membership {
    let nf_zero = normal_form(f, basis).is_zero();
    let deg = f.degree().unwrap_or(0);
    let exact = basis.is_exact_through(deg);
    match nf_zero {
        true if exact || deg + 1 <= basis.degree_bound => Membership::Yes,
        false if exact => Membership::No,
        _ => Membership::Unknown,
    }
}
