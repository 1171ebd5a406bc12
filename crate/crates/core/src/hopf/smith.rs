//! Integer Smith normal form, used to read off the abelian group presented by
//! exponent relations.

/// Invariant factors `d_1 | d_2 | …` (all positive) of an integer matrix.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < n_rows.min(n_cols) {
        // smallest nonzero entry in the remaining block as pivot
        let Some((pi, pj)) = (t..n_rows)
            .flat_map(|i| (t..n_cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..n_rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..n_cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n_cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..n_rows)
                .flat_map(|i| (t + 1..n_cols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % m[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..n_cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        factors.push(m[t][t].abs());
        t += 1;
    }
    factors
}

/// Whether `ℤ^n / ⟨rows⟩` is cyclic (including trivial).
pub fn quotient_is_cyclic(rows: &[Vec<i64>], n: usize) -> bool {
    let factors = invariant_factors(rows);
    let free_rank = n - factors.len();
    let torsion = factors.iter().filter(|&&d| d > 1).count();
    free_rank + torsion <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors() {
        assert_eq!(invariant_factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(invariant_factors(&[vec![1, 1]]), vec![1]);
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn cyclicity() {
        // y1*y2 = 1 leaves ℤ
        assert!(quotient_is_cyclic(&[vec![1, 1]], 2));
        assert!(!quotient_is_cyclic(&[], 2));
        assert!(quotient_is_cyclic(&[vec![2, 0], vec![0, 3]], 2));
        assert!(!quotient_is_cyclic(&[vec![2, 0], vec![0, 2]], 2));
    }
}
