//! Report schema. Numbers that are field elements are exact rational strings;
//! counts are plain integers. Field order is fixed, so output is byte-stable.

use serde::Serialize;

use crate::freealg::{AffineMap, Alphabet, Scalar};
use crate::groebner::{GroebnerBasis, PbwReport, PbwVerdict, Status};
use crate::hopf::HopfReport;
use crate::linalg::Matrix;
use crate::nakayama::{AffineFamily, JordanReport, LiftMethod, ResidualEquation, RootOfUnity};
use crate::parser::{render_poly, render_presentation};
use crate::presentation::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Negative,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Negative => 2,
            Outcome::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub arguments: Vec<String>,
    pub input_sha: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gb: Option<GbOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pbw: Option<PbwOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogenized: Option<PresentationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jordan: Option<JordanOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skew_extension: Option<SkewOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfReport>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub debug: Option<DebugOut>,
}

impl Report {
    pub fn new(command: &str, arguments: Vec<String>, input_sha: String) -> Self {
        Report {
            command: command.to_string(),
            arguments,
            input_sha,
            outcome: Outcome::Success,
            message: None,
            gb: None,
            pbw: None,
            homogenized: None,
            lift: None,
            jordan: None,
            skew_extension: None,
            hopf: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timing: None,
            debug: None,
        }
    }

    fn debug_mut(&mut self) -> &mut DebugOut {
        self.debug.get_or_insert_with(DebugOut::default)
    }

    pub fn add_gb_elements(&mut self, basis: &GroebnerBasis, alphabet: &Alphabet) {
        self.debug_mut().gb_elements = basis.elements().iter().map(|e| render_poly(e, alphabet)).collect();
    }

    pub fn add_residual_system(&mut self, system: &[ResidualEquation], alphabet: &Alphabet) {
        let names: Vec<String> = (1..=alphabet.len()).map(|i| format!("b{i}")).collect();
        let homog = alphabet.with_prepended("t").unwrap_or_else(|_| alphabet.clone());
        self.debug_mut().residual_system = system
            .iter()
            .map(|e| EquationOut {
                relation: e.relation,
                word: homog.render_word(&e.word),
                equation: e.poly.render(&names),
            })
            .collect();
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GbOut {
    pub status: Status,
    pub size: usize,
    pub max_degree: usize,
    pub degree_bound: usize,
}

impl GbOut {
    pub fn new(b: &GroebnerBasis) -> Self {
        GbOut {
            status: b.status(),
            size: b.len(),
            max_degree: b.max_degree(),
            degree_bound: b.degree_bound(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimsOut {
    pub degree: usize,
    pub deformed: u64,
    pub graded: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwOut {
    pub verdict: PbwVerdict,
    pub leading_parts_in_graded_ideal: bool,
    pub leading_ideals_agree: bool,
    pub graded_gb: GbOut,
    pub per_degree_dims: Vec<DimsOut>,
}

impl PbwOut {
    pub fn new(r: &PbwReport) -> Self {
        PbwOut {
            verdict: r.verdict,
            leading_parts_in_graded_ideal: r.leading_parts_in_graded_ideal,
            leading_ideals_agree: r.leading_ideals_agree,
            graded_gb: GbOut::new(&r.graded_basis),
            per_degree_dims: r
                .per_degree_dims
                .iter()
                .map(|d| DimsOut {
                    degree: d.degree,
                    deformed: d.deformed,
                    graded: d.graded,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationOut {
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogenizing: Option<String>,
    pub relations: Vec<String>,
    /// The same presentation in `.alg` syntax.
    pub alg: String,
}

impl PresentationOut {
    pub fn new(p: &Presentation) -> Self {
        PresentationOut {
            generators: p.alphabet.names().to_vec(),
            homogenizing: p.central.map(|c| p.alphabet.name(c).to_string()),
            relations: p.relations.iter().map(|r| render_poly(r, &p.alphabet)).collect(),
            alg: render_presentation(p, None, None),
        }
    }
}

pub fn scalars(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionOut {
    pub matrix: Matrix,
    pub shift: Vec<String>,
    pub images: Vec<String>,
}

impl SolutionOut {
    pub fn new(phi: &AffineMap, alphabet: &Alphabet) -> Self {
        SolutionOut {
            matrix: phi.matrix().clone(),
            shift: scalars(phi.shift()),
            images: (0..phi.dim())
                .map(|i| format!("{} -> {}", alphabet.name(i as u32), render_poly(&phi.image_of(i, 0), alphabet)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyOut {
    pub particular: Vec<String>,
    pub directions: Vec<Vec<String>>,
}

impl FamilyOut {
    pub fn new(f: &AffineFamily) -> Self {
        FamilyOut {
            particular: scalars(&f.particular),
            directions: f.directions.iter().map(|d| scalars(d)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftOut {
    pub graded_matrix: Matrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<LiftMethod>,
    pub solutions: Vec<SolutionOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calabi_yau: Option<bool>,
    /// Free shift coordinates when the solution set is positive-dimensional.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub free: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eliminant: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub irrational_factors: Vec<String>,
}

impl LiftOut {
    pub fn empty(m: &Matrix) -> Self {
        LiftOut {
            graded_matrix: m.clone(),
            method: None,
            solutions: Vec::new(),
            calabi_yau: None,
            free: Vec::new(),
            family: None,
            eliminant: None,
            irrational_factors: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorOut {
    pub factor: String,
    pub multiplicity: usize,
    pub root_of_unity: RootOfUnity,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlocksOut {
    pub eigenvalue: String,
    pub multiplicity: usize,
    pub blocks: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JordanOut {
    pub char_poly: String,
    pub factors: Vec<FactorOut>,
    pub factorization_complete: bool,
    pub blocks: Vec<BlocksOut>,
    pub all_rational: bool,
    pub diagonalizable: bool,
}

impl JordanOut {
    pub fn new(j: &JordanReport) -> Self {
        JordanOut {
            char_poly: j.char_poly.render("x"),
            factors: j
                .char_poly_factors
                .iter()
                .zip(&j.root_of_unity_flags)
                .map(|((f, m), r)| FactorOut {
                    factor: f.render("x"),
                    multiplicity: *m,
                    root_of_unity: *r,
                })
                .collect(),
            factorization_complete: j.factorization_complete,
            blocks: j
                .rational_eigen
                .iter()
                .map(|e| BlocksOut {
                    eigenvalue: e.value.to_string(),
                    multiplicity: e.multiplicity,
                    blocks: e.blocks.clone(),
                })
                .collect(),
            all_rational: j.all_rational,
            diagonalizable: j.is_diagonalizable(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewOut {
    pub presentation: PresentationOut,
    /// Lift of the identity graded map over the extension.
    pub identity_lift: LiftOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DebugOut {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gb_elements: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residual_system: Vec<EquationOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquationOut {
    pub relation: usize,
    pub word: String,
    pub equation: String,
}
