//! Commutative polynomials over ℚ in a fixed number of variables, a lex
//! Gröbner basis, and a solver for the rational points of zero-dimensional
//! systems.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::freealg::Scalar;
use crate::upoly::UPoly;

/// Exponent vector; `Vec` ordering is lex with variable 0 the largest.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        CPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    fn mul_monomial(&self, m: &[u32], c: &Scalar) -> CPoly {
        CPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.iter().zip(m).map(|(x, y)| x + y).collect(), a * c))
                .collect(),
        }
    }

    pub fn monic(&self) -> CPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&(Scalar::one() / c)),
            None => self.clone(),
        }
    }

    /// Substitutes `value` for variable `i`.
    pub fn substitute(&self, i: usize, value: &Scalar) -> CPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k[i];
            k[i] = 0;
            let mut factor = Scalar::one();
            for _ in 0..e {
                factor *= value;
            }
            out.add_term(k, c * factor);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.iter().zip(point) {
                for _ in 0..*e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// The polynomial as univariate in variable `i`, if no other variable occurs.
    pub fn as_univariate(&self, i: usize) -> Option<UPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            let d = m[i] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Scalar::zero());
            }
            coeffs[d] = c.clone();
        }
        Some(UPoly::from_coeffs(coeffs))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            if vars.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("b{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Full reduction of `f` modulo the monic polynomials `basis`.
pub fn reduce(f: &CPoly, basis: &[CPoly]) -> CPoly {
    let mut rest = f.clone();
    let mut out = CPoly::zero(f.nvars);
    while let Some((m, c)) = rest.terms.pop_last() {
        let reducer = basis
            .iter()
            .find(|g| g.leading().is_some_and(|(lm, _)| divides(lm, &m)));
        match reducer {
            Some(g) => {
                let (lm, _) = g.leading().unwrap();
                let q = quotient(&m, lm);
                for (k, a) in g.terms.iter().rev().skip(1) {
                    let mono: Monomial = k.iter().zip(&q).map(|(x, y)| x + y).collect();
                    rest.add_term(mono, -(a * &c));
                }
            }
            None => {
                out.terms.insert(m, c);
            }
        }
    }
    out
}

fn s_poly(f: &CPoly, g: &CPoly) -> CPoly {
    let (mf, _) = f.leading().unwrap();
    let (mg, _) = g.leading().unwrap();
    let l = lcm(mf, mg);
    let one = Scalar::one();
    f.mul_monomial(&quotient(&l, mf), &one)
        .sub(&g.mul_monomial(&quotient(&l, mg), &one))
}

/// Reduced lex Gröbner basis, sorted by increasing leading monomial.
pub fn groebner_basis(polys: &[CPoly]) -> Vec<CPoly> {
    let mut basis: Vec<CPoly> = Vec::new();
    for p in polys {
        let r = reduce(p, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, _) = basis[i].leading().unwrap();
        let (mj, _) = basis[j].leading().unwrap();
        // coprime leading monomials reduce to zero
        if mi.iter().zip(mj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimalize then inter-reduce
    let mut minimal: Vec<CPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (m, _) = g.leading().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let (mh, _) = h.leading().unwrap();
            j != i && divides(mh, m) && (mh != m || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<CPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (m, c) = minimal[i].leading().unwrap();
        let head = CPoly::monomial(m.clone(), c.clone());
        let tail = reduce(&minimal[i].sub(&head), &others);
        reduced.push(head.add(&tail).monic());
    }
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    reduced
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    /// Variables (0-based) without a pure-power leading monomial.
    #[error("solution set is positive-dimensional in variables {free:?}")]
    PositiveDimensional { free: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSolutions {
    /// Rational points, sorted.
    pub points: Vec<Vec<Scalar>>,
    /// Univariate polynomial in the last variable generating the elimination ideal.
    pub eliminant: Option<UPoly>,
    /// Eliminant factors met during back-substitution without rational roots.
    pub irrational_factors: Vec<UPoly>,
    /// True when the system has no solution even over an algebraic closure.
    pub inconsistent: bool,
}

fn free_vars(basis: &[CPoly], active: usize) -> Vec<usize> {
    (0..active)
        .filter(|&i| {
            !basis.iter().any(|g| {
                let (m, _) = g.leading().unwrap();
                m[i] > 0 && m.iter().enumerate().all(|(j, &e)| j == i || e == 0)
            })
        })
        .collect()
}

fn is_unit(basis: &[CPoly]) -> bool {
    basis.iter().any(|g| g.is_constant())
}

/// All rational solutions of a zero-dimensional system.
///
/// The lex basis is triangular: its smallest element is univariate in the last
/// variable; each rational root is substituted and the remaining variables
/// solved recursively. Nonlinear irreducible factors of eliminants are
/// collected instead of approximated.
pub fn solve_rational(system: &[CPoly], nvars: usize) -> Result<RationalSolutions, SolveError> {
    let basis = groebner_basis(system);
    let mut out = RationalSolutions {
        points: Vec::new(),
        eliminant: None,
        irrational_factors: Vec::new(),
        inconsistent: false,
    };
    if is_unit(&basis) {
        out.inconsistent = true;
        return Ok(out);
    }
    let free = free_vars(&basis, nvars);
    if !free.is_empty() {
        return Err(SolveError::PositiveDimensional { free });
    }
    if nvars == 0 {
        out.points.push(Vec::new());
        return Ok(out);
    }
    out.eliminant = basis.iter().find_map(|g| g.as_univariate(nvars - 1));
    let mut partial = Vec::new();
    back_substitute(basis, nvars, &mut partial, &mut out);
    out.points.sort();
    out.points.dedup();
    Ok(out)
}

fn back_substitute(basis: Vec<CPoly>, active: usize, partial: &mut Vec<Scalar>, out: &mut RationalSolutions) {
    if is_unit(&basis) {
        return;
    }
    if active == 0 {
        let mut point = partial.clone();
        point.reverse();
        out.points.push(point);
        return;
    }
    let v = active - 1;
    let Some(eliminant) = basis.iter().find_map(|g| if g.uses_var(v) { g.as_univariate(v) } else { None }) else {
        // cannot happen for zero-dimensional input; treat as no solutions
        return;
    };
    let factors = eliminant.factor();
    for (f, _) in &factors.factors {
        if f.degree() != Some(1) && !out.irrational_factors.contains(f) {
            out.irrational_factors.push(f.clone());
        }
    }
    for r in eliminant.rational_roots() {
        let sub: Vec<CPoly> = basis
            .iter()
            .map(|g| g.substitute(v, &r))
            .filter(|g| !g.is_zero())
            .collect();
        let next = groebner_basis(&sub);
        partial.push(r);
        back_substitute(next, v, partial, out);
        partial.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, rat};

    fn b(i: usize) -> CPoly {
        CPoly::var(2, i)
    }

    fn k(n: i64) -> CPoly {
        CPoly::constant(2, int(n))
    }

    #[test]
    fn linear_system() {
        // b1 + b2 = 3, b1 - b2 = 1
        let sys = [b(0).add(&b(1)).sub(&k(3)), b(0).sub(&b(1)).sub(&k(1))];
        let s = solve_rational(&sys, 2).unwrap();
        assert_eq!(s.points, vec![vec![int(2), int(1)]]);
    }

    #[test]
    fn quadratic_with_bilinear_term() {
        // b1*b2 = 2, b1 = 2*b2
        let sys = [b(0).mul(&b(1)).sub(&k(2)), b(0).sub(&b(1).scale(&int(2)))];
        let s = solve_rational(&sys, 2).unwrap();
        assert_eq!(s.points, vec![vec![int(-2), int(-1)], vec![int(2), int(1)]]);
    }

    #[test]
    fn irrational_flagged() {
        let sys = [b(1).mul(&b(1)).sub(&k(2)), b(0)];
        let s = solve_rational(&sys, 2).unwrap();
        assert!(s.points.is_empty());
        assert_eq!(s.irrational_factors, vec![UPoly::from_ints(&[-2, 0, 1])]);
    }

    #[test]
    fn inconsistent_and_positive_dimensional() {
        let s = solve_rational(&[b(0).sub(&k(1)), b(0).sub(&k(2))], 2).unwrap();
        assert!(s.inconsistent);
        assert_eq!(
            solve_rational(&[b(0).sub(&b(1))], 2),
            Err(SolveError::PositiveDimensional { free: vec![1] })
        );
        assert_eq!(
            solve_rational(&[], 2),
            Err(SolveError::PositiveDimensional { free: vec![0, 1] })
        );
    }

    #[test]
    fn basis_is_reduced() {
        let sys = [b(0).mul(&b(0)).sub(&b(1)), b(0).mul(&b(1)).sub(&k(1))];
        let g = groebner_basis(&sys);
        for p in &sys {
            assert!(reduce(p, &g).is_zero());
        }
        assert!(g.iter().any(|p| p.as_univariate(1).is_some()));
        assert_eq!(CPoly::constant(2, rat(1, 2)).eval(&[int(0), int(0)]), rat(1, 2));
    }
}
