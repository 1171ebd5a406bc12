//! Exact arithmetic in the free associative algebra ℚ⟨x_1, …, x_n⟩.

mod affine;
mod poly;
mod word;

pub use affine::AffineMap;
pub use poly::NCPoly;
pub use word::{word_cmp, Word};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient.
pub type Scalar = BigRational;

pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("matrix is not invertible")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Ordered list of generator names. Position defines the order x_1 < x_2 < ….
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    // all 1 for now
    degrees: Vec<u32>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, AlgebraError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(AlgebraError::EmptyAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(AlgebraError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateGenerator(n.clone()));
            }
        }
        let degrees = vec![1; names.len()];
        Ok(Alphabet { names, degrees })
    }

    /// `x1, …, xn`.
    pub fn standard(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}"))).expect("standard names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: u32) -> &str {
        &self.names[index as usize]
    }

    pub fn degree(&self, index: u32) -> u32 {
        self.degrees[index as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// New alphabet with `name` as the smallest letter.
    pub fn with_prepended(&self, name: &str) -> Result<Self, AlgebraError> {
        Self::new(std::iter::once(name.to_string()).chain(self.names.iter().cloned()))
    }

    /// New alphabet with `name` as the largest letter.
    pub fn with_appended(&self, name: &str) -> Result<Self, AlgebraError> {
        Self::new(self.names.iter().cloned().chain(std::iter::once(name.to_string())))
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join("*")
    }
}
