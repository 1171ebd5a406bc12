use crate::freealg::{NCPoly, Word};

/// Positions `k` with `w[k] = i` and `w[k+1] = j`.
fn adjacent(w: &Word, i: u32, j: u32) -> impl Iterator<Item = usize> + '_ {
    w.letters()
        .windows(2)
        .enumerate()
        .filter(move |(_, p)| p[0] == i && p[1] == j)
        .map(|(k, _)| k)
}

fn without_pair(w: &Word, k: usize) -> Word {
    let l = w.letters();
    Word::from_letters([&l[..k], &l[k + 2..]].concat())
}

fn transposed(w: &Word, k: usize) -> Word {
    let mut l = w.letters().to_vec();
    l.swap(k, k + 1);
    Word::from_letters(l)
}

/// A term `u1·v_i·v_j·u2` together with a nonzero term `u1·u2`. When `u1·u2`
/// is not the empty word, no other term may be a scalar.
///
/// Letters are 0-based generator indices.
pub fn match_pattern_a(rel: &NCPoly, i: u32, j: u32) -> bool {
    if i == j {
        return false;
    }
    rel.support().any(|w| {
        adjacent(w, i, j).any(|k| {
            let deleted = without_pair(w, k);
            rel.contains_word(&deleted) && (deleted.is_empty() || !rel.contains_word(&Word::empty()))
        })
    })
}

/// A term `u1·v_i·v_j·u2` together with a nonzero term `u1·v_j·v_i·u2`.
pub fn match_pattern_b(rel: &NCPoly, i: u32, j: u32) -> bool {
    if i == j {
        return false;
    }
    rel.support()
        .any(|w| adjacent(w, i, j).any(|k| rel.contains_word(&transposed(w, k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Alphabet;
    use crate::parser::parse_poly;

    fn p(s: &str) -> NCPoly {
        parse_poly(s, &Alphabet::standard(2)).unwrap()
    }

    #[test]
    fn pattern_a_cases() {
        assert!(match_pattern_a(&p("x1*x2 - 2*x2*x1 - 1"), 0, 1));
        assert!(match_pattern_a(&p("x1^2*x2 - x1*x2*x1 - 2*x2*x1^2 - x1"), 0, 1));
        assert!(!match_pattern_a(&p("x1*x2 - 2*x2*x1"), 0, 1));
        // u1·u2 = x1 present but a scalar term is also present
        assert!(!match_pattern_a(&p("x1^2*x2 - x1 + 1"), 0, 1));
        assert!(!match_pattern_a(&p("x1*x2 - 1"), 0, 0));
    }

    #[test]
    fn pattern_b_cases() {
        assert!(match_pattern_b(&p("x1*x2 - 2*x2*x1 + 7"), 0, 1));
        assert!(match_pattern_b(&p("x1^2*x2 - x1*x2*x1 - 2*x2*x1^2 - x1"), 0, 1));
        assert!(!match_pattern_b(&p("x1^2*x2 - x2*x1^2"), 0, 1));
        assert!(!match_pattern_b(&p("x1^2*x2 - x2*x1^2"), 1, 0));
    }
}
