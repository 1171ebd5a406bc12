//! Univariate polynomials over ℚ and factorization into irreducibles.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::freealg::Scalar;

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Scalar>,
}

/// Absolute values above this are not trial-factored (divisor enumeration).
const DIVISOR_LIMIT: u64 = 1 << 40;

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    /// `x - root`.
    pub fn linear(root: &Scalar) -> Self {
        Self::from_coeffs(vec![-root.clone(), Scalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Scalar::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading().recip();
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c * &lead).collect())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        UPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        UPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn pow(&self, k: usize) -> UPoly {
        (0..k).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= d {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); n - d];
        for k in (0..n - d).rev() {
            let c = &rem[k + d] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer coefficients with content 1 and positive leading coefficient,
    /// a positive rational multiple of `self` up to sign.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &content * &sign;
        }
        ints
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        let mut p = self.clone();
        // factor out x^k
        let mut zero_root = false;
        while p.coeffs.first().is_some_and(Zero::is_zero) {
            p = UPoly::from_coeffs(p.coeffs[1..].to_vec());
            zero_root = true;
        }
        if zero_root {
            roots.push(Scalar::zero());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = p.primitive_integer();
        let (Some(c0), Some(lead)) = (divisors(&ints[0]), divisors(&ints[ints.len() - 1])) else {
            return roots;
        };
        let mut candidates = Vec::new();
        for num in &c0 {
            for den in &lead {
                let r = Scalar::new(num.clone(), den.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        roots.extend(candidates.into_iter().filter(|r| p.eval(r).is_zero()));
        roots.sort();
        roots
    }

    /// Factorization into monic irreducibles over ℚ with multiplicities.
    ///
    /// Linear factors come from the rational-root theorem; remaining
    /// quadratic factors are found by Kronecker's interpolation search.
    /// A residual factor of degree ≥ 6 with no factor of degree ≤ 2 is
    /// reported as-is and flagged by [`Factorization::complete`].
    pub fn factor(&self) -> Factorization {
        let mut factors: Vec<(UPoly, usize)> = Vec::new();
        let mut complete = true;
        if self.degree().unwrap_or(0) == 0 {
            return Factorization { factors, complete };
        }
        let mut rest = self.monic();
        for r in self.rational_roots() {
            let lin = UPoly::linear(&r);
            let mut mult = 0;
            while lin.divides(&rest) {
                rest = rest.div_rem(&lin).0;
                mult += 1;
            }
            factors.push((lin, mult));
        }
        while rest.degree().unwrap_or(0) >= 4 {
            match rest.find_quadratic_factor() {
                Some(q) => {
                    let mut mult = 0;
                    while q.divides(&rest) {
                        rest = rest.div_rem(&q).0;
                        mult += 1;
                    }
                    factors.push((q, mult));
                }
                None => break,
            }
        }
        if let Some(d) = rest.degree() {
            if d > 0 {
                // degree 4 or 5 with no quadratic factor is irreducible
                if d >= 6 {
                    complete = false;
                }
                factors.push((rest.monic(), 1));
            }
        }
        factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
        Factorization { factors, complete }
    }

    /// Kronecker search for a monic quadratic factor, using values at -1, 0, 1.
    fn find_quadratic_factor(&self) -> Option<UPoly> {
        let ints = self.primitive_integer();
        let p = UPoly::from_coeffs(ints.iter().map(|c| Scalar::from_integer(c.clone())).collect());
        let points = [-1i64, 0, 1];
        let mut divisor_sets = Vec::new();
        for &x in &points {
            let v = p.eval(&Scalar::from_integer(x.into())).to_integer();
            if v.is_zero() {
                return None;
            }
            let ds = divisors(&v)?;
            let mut signed: Vec<BigInt> = ds.iter().flat_map(|d| [d.clone(), -d.clone()]).collect();
            signed.sort();
            divisor_sets.push(signed);
        }
        let half = Scalar::new(BigInt::one(), BigInt::from(2));
        for a in &divisor_sets[0] {
            for b in &divisor_sets[1] {
                for c in &divisor_sets[2] {
                    // interpolate g(-1)=a, g(0)=b, g(1)=c
                    let (a, b, c) = (
                        Scalar::from_integer(a.clone()),
                        Scalar::from_integer(b.clone()),
                        Scalar::from_integer(c.clone()),
                    );
                    let lead = (&a + &c - &b - &b) * &half;
                    if lead.is_zero() {
                        continue;
                    }
                    let mid = (&c - &a) * &half;
                    let g = UPoly::from_coeffs(vec![b, mid, lead]);
                    if g.coeffs.iter().any(|x| !x.is_integer()) {
                        continue;
                    }
                    if g.divides(&p) {
                        return Some(g.monic());
                    }
                }
            }
        }
        None
    }

    /// Formats with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(UPoly, usize)>,
    /// False when a residual factor could not be certified irreducible.
    pub complete: bool,
}

impl Factorization {
    pub fn product(&self) -> UPoly {
        self.factors
            .iter()
            .fold(UPoly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }
}

/// Positive divisors of `n`, or `None` when `|n|` is too large to enumerate.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(Vec::new());
    }
    let small: u64 = n.clone().try_into().ok()?;
    if small > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}
