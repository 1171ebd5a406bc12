use std::cmp::Ordering;
use std::fmt;

/// A monomial in the free monoid on the generators, stored as generator
/// indices. The empty word is the unit.
///
/// The `Ord` impl is deg-lex: shorter words are smaller, and words of equal
/// length compare by the first differing letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(index: u32) -> Self {
        Word(vec![index])
    }

    pub fn from_letters(letters: impl Into<Vec<u32>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// `left · self · right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Word {
        let mut out = Vec::with_capacity(left.0.len() + self.0.len() + right.0.len());
        out.extend_from_slice(&left.0);
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&right.0);
        Word(out)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.0.len())
    }

    /// Leftmost occurrence of `pattern` as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        let (hay, pat) = (&self.0, &pattern.0);
        if pat.is_empty() {
            return Some(0);
        }
        if pat.len() > hay.len() {
            return None;
        }
        (0..=hay.len() - pat.len()).find(|&p| &hay[p..p + pat.len()] == pat.as_slice())
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    pub fn count_letter(&self, index: u32) -> usize {
        self.0.iter().filter(|&&l| l == index).count()
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }

    pub fn map_letters(&self, f: impl Fn(u32) -> u32) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }

    /// Word with every occurrence of `index` removed.
    pub fn without_letter(&self, index: u32) -> Word {
        Word(self.0.iter().copied().filter(|&l| l != index).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        word_cmp(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("x{}", l + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Deg-lex comparison of two words.
pub fn word_cmp(u: &Word, v: &Word) -> Ordering {
    u.0.len().cmp(&v.0.len()).then_with(|| u.0.cmp(&v.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u32]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    #[test]
    fn degree_dominates() {
        // x2 < x1x1
        assert_eq!(word_cmp(&w(&[1]), &w(&[0, 0])), Ordering::Less);
    }

    #[test]
    fn first_difference_decides() {
        // x1x2 < x2x1
        assert_eq!(word_cmp(&w(&[0, 1]), &w(&[1, 0])), Ordering::Less);
        assert_eq!(word_cmp(&w(&[0, 1, 1]), &w(&[0, 1, 1])), Ordering::Equal);
    }

    #[test]
    fn subword_search_is_leftmost() {
        let hay = w(&[0, 1, 0, 1]);
        assert_eq!(hay.find(&w(&[0, 1])), Some(0));
        assert_eq!(hay.find(&w(&[1, 0])), Some(1));
        assert_eq!(hay.find(&w(&[1, 1])), None);
        assert_eq!(hay.find(&Word::empty()), Some(0));
    }
}
