use crate::freealg::{Alphabet, NCPoly};

/// Finitely presented algebra: generators, relations, and optionally which
/// generator is the central homogenizing element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relations: Vec<NCPoly>,
    pub central: Option<u32>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<NCPoly>) -> Self {
        Presentation {
            alphabet,
            relations,
            central: None,
        }
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn max_degree(&self) -> usize {
        self.relations
            .iter()
            .filter_map(NCPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// `2·(max relation degree) + 2`.
    pub fn default_degree_bound(&self) -> usize {
        2 * self.max_degree() + 2
    }

    /// The presentation of the associated graded algebra, keeping only the
    /// leading homogeneous part of each relation.
    pub fn graded(&self) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            relations: self
                .relations
                .iter()
                .filter_map(|r| r.lh().ok())
                .collect(),
            central: self.central,
        }
    }

    pub fn is_graded(&self) -> bool {
        self.relations.iter().all(NCPoly::is_homogeneous)
    }
}
