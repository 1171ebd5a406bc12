use serde::Serialize;

use super::{buchberger, normal_form, GroebnerBasis, GroebnerError, Status};
use crate::freealg::Word;
use crate::presentation::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PbwVerdict {
    Verified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub degree: usize,
    pub deformed: u64,
    pub graded: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    pub verdict: PbwVerdict,
    pub deformed_basis: GroebnerBasis,
    pub graded_basis: GroebnerBasis,
    /// Every `LH(g)` for `g` in the deformed basis lies in the graded ideal.
    pub leading_parts_in_graded_ideal: bool,
    /// The leading-word ideals of both bases coincide.
    pub leading_ideals_agree: bool,
    /// Normal-word counts per degree up to the bound.
    pub per_degree_dims: Vec<DegreeDims>,
}

/// Number of words of each degree `0..=max_degree` avoiding every word in
/// `leading` as a subword.
pub fn normal_word_counts(leading: &[&Word], n_letters: usize, max_degree: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_degree + 1];
    if leading.iter().any(|w| w.is_empty()) {
        return counts;
    }
    // frontier of normal words; extend one letter and test suffixes only
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    counts[0] = 1;
    for d in 1..=max_degree {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..n_letters as u32 {
                let mut ext = w.clone();
                ext.push(l);
                let reducible = leading.iter().any(|lw| {
                    let lw = lw.letters();
                    lw.len() <= ext.len() && ext[ext.len() - lw.len()..] == *lw
                });
                if !reducible {
                    next.push(ext);
                }
            }
        }
        counts[d] = next.len() as u64;
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    counts
}

fn divisible_by_any(w: &Word, by: &[&Word]) -> bool {
    by.iter().any(|b| w.contains(b))
}

/// Decides whether `deformed` is a PBW deformation of `graded`: `LH(G)` must
/// be a Gröbner basis of the graded ideal, where `G` is the Gröbner basis of
/// the deformed relations.
pub fn is_pbw_deformation(
    graded: &Presentation,
    deformed: &Presentation,
    degree_bound: usize,
) -> Result<PbwReport, GroebnerError> {
    if graded.num_generators() != deformed.num_generators() {
        return Err(GroebnerError::AlphabetMismatch(
            graded.num_generators(),
            deformed.num_generators(),
        ));
    }
    for (i, p) in deformed.relations.iter().enumerate() {
        let lh = p.lh().map_err(|_| GroebnerError::ZeroRelation(i))?.monic();
        if !graded.relations.iter().any(|r| r.monic() == lh) {
            return Err(GroebnerError::MalformedPairing(i));
        }
    }

    let g = buchberger(&deformed.relations, degree_bound)?;
    let g_r = buchberger(&graded.relations, degree_bound)?;

    let leading_parts_in_graded_ideal = g.elements().iter().all(|e| {
        let lh = e.lh().expect("basis elements are nonzero");
        normal_form(&lh, &g_r).is_zero()
    });
    let lw_g = g.leading_words();
    let lw_r = g_r.leading_words();
    let leading_ideals_agree = lw_g.iter().all(|w| divisible_by_any(w, &lw_r))
        && lw_r.iter().all(|w| divisible_by_any(w, &lw_g));

    let n = graded.num_generators();
    let dims_g = normal_word_counts(&lw_g, n, degree_bound);
    let dims_r = normal_word_counts(&lw_r, n, degree_bound);
    let per_degree_dims = (0..=degree_bound)
        .map(|d| DegreeDims {
            degree: d,
            deformed: dims_g[d],
            graded: dims_r[d],
        })
        .collect();

    let verdict = if g.status() == Status::Complete && g_r.status() == Status::Complete {
        if leading_parts_in_graded_ideal && leading_ideals_agree {
            PbwVerdict::Verified
        } else {
            PbwVerdict::Refuted
        }
    } else {
        PbwVerdict::Inconclusive
    };

    Ok(PbwReport {
        verdict,
        deformed_basis: g,
        graded_basis: g_r,
        leading_parts_in_graded_ideal,
        leading_ideals_agree,
        per_degree_dims,
    })
}
