//! Fixtures, an independent membership oracle and the property checks shared
//! by the property suites and the acceptance target.
#![allow(dead_code)]

use filtered_nakayama::freealg::{int, rat};
use filtered_nakayama::groebner::{
    buchberger, expand_certificate, normal_form, normal_form_with_certificate, obstructions, s_polynomial, Status,
};
use filtered_nakayama::homog::{homogenize_poly, specialize, Specialization};
use filtered_nakayama::hopf::{classify, match_pattern_a, match_pattern_b, HopfFlags};
use filtered_nakayama::linalg::Matrix;
use filtered_nakayama::nakayama::{cyclotomic, euler_phi, jordan_structure};
use filtered_nakayama::parser::parse_poly;
use filtered_nakayama::upoly::UPoly;
use filtered_nakayama::{AffineMap, Alphabet, NCPoly, Presentation, Scalar, Word};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, TestCaseError};

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

pub fn pres(rels: &[&str]) -> Presentation {
    let a = Alphabet::standard(2);
    Presentation::new(a.clone(), rels.iter().map(|s| parse_poly(s, &a).unwrap()).collect())
}

pub fn poly(s: &str) -> NCPoly {
    parse_poly(s, &Alphabet::standard(2)).unwrap()
}

pub fn matrix(rows: &[&[Scalar]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn affine(rows: &[&[Scalar]], shift: &[Scalar]) -> AffineMap {
    AffineMap::new(matrix(rows), shift.to_vec()).unwrap()
}

/// `x1x2 - q x2x1 + a x1 + b x2 + c`
pub fn quantum_plane(q: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Presentation {
    let w = |l: &[u32]| Word::from_letters(l.to_vec());
    let rel = NCPoly::from_terms([
        (w(&[0, 1]), int(1)),
        (w(&[1, 0]), -q.clone()),
        (w(&[0]), a.clone()),
        (w(&[1]), b.clone()),
        (w(&[]), c.clone()),
    ]);
    Presentation::new(Alphabet::standard(2), vec![rel])
}

pub fn down_up(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Presentation {
    let w = |l: &[u32]| Word::from_letters(l.to_vec());
    let f1 = NCPoly::from_terms([
        (w(&[0, 0, 1]), int(1)),
        (w(&[0, 1, 0]), -alpha.clone()),
        (w(&[1, 0, 0]), -beta.clone()),
        (w(&[0]), -gamma.clone()),
    ]);
    let f2 = NCPoly::from_terms([
        (w(&[0, 1, 1]), int(1)),
        (w(&[1, 0, 1]), -alpha.clone()),
        (w(&[1, 1, 0]), -beta.clone()),
        (w(&[1]), -gamma.clone()),
    ]);
    Presentation::new(Alphabet::standard(2), vec![f1, f2])
}

pub fn down_up_int(alpha: i64, beta: i64, gamma: i64) -> Presentation {
    down_up(&int(alpha), &int(beta), &int(gamma))
}

pub fn weyl(n: usize) -> Presentation {
    // x_i, y_i = generators i and n+i; [y_i, x_i] = 1, all others commute
    let alphabet = Alphabet::standard(2 * n);
    let mut rels = Vec::new();
    for i in 0..2 * n as u32 {
        for j in i + 1..2 * n as u32 {
            let comm = &(&NCPoly::var(j) * &NCPoly::var(i)) - &(&NCPoly::var(i) * &NCPoly::var(j));
            let rel = if j == i + n as u32 { &comm + &NCPoly::one() } else { comm };
            rels.push(rel);
        }
    }
    Presentation::new(alphabet, rels)
}

pub fn u1() -> Presentation {
    pres(&[
        "x1^2*x2 - x2*x1^2 - x2*x1*x2 + x2^2*x1",
        "x1*x2^2 - x2^2*x1 + x1*x2 - x2*x1",
    ])
}

pub fn u2() -> Presentation {
    pres(&[
        "x1^2*x2 - 2*x1*x2*x1 + x2*x1^2 - x2*x1*x2 + x2^2*x1",
        "x1*x2^2 - 2*x2*x1*x2 + x2^2*x1 + x1*x2 - x2*x1",
    ])
}

pub fn u1_matrix() -> Matrix {
    matrix(&[&[int(-1), int(-1)], &[int(0), int(-1)]])
}

pub fn u2_matrix() -> Matrix {
    matrix(&[&[int(1), int(1)], &[int(0), int(1)]])
}

// ---------------------------------------------------------------------------
// Degreewise linear-algebra membership oracle.
//
// For homogeneous generators the degree-d part of the ideal is spanned by the
// products u·r·v of total degree d, so membership of a homogeneous f is a
// rank comparison. Nothing from the Gröbner code is used.

fn words_of_degree(d: usize, letters: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

fn index_of(w: &[u32], letters: u32) -> usize {
    w.iter().fold(0, |acc, &l| acc * letters as usize + l as usize)
}

fn row_of(f: &NCPoly, d: usize, letters: u32) -> Vec<Scalar> {
    let mut row = vec![Scalar::zero(); (letters as usize).pow(d as u32)];
    for (w, c) in f.terms() {
        assert_eq!(w.degree(), d, "oracle expects homogeneous input");
        row[index_of(w.letters(), letters)] += c;
    }
    row
}

/// Rank by fraction-exact Gaussian elimination.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &pivot;
                for j in c..cols {
                    let sub = &factor * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether the homogeneous `f` lies in the two-sided ideal generated by the
/// homogeneous `relations`.
pub fn oracle_member(f: &NCPoly, relations: &[NCPoly], letters: u32) -> bool {
    let Some(d) = f.degree() else {
        return true;
    };
    let mut rows = Vec::new();
    for r in relations {
        let k = r.degree().unwrap();
        if k > d {
            continue;
        }
        for a in 0..=d - k {
            for u in words_of_degree(a, letters) {
                for v in words_of_degree(d - k - a, letters) {
                    let p = r.sandwich(&Scalar::one(), &Word::from_letters(u.clone()), &Word::from_letters(v));
                    rows.push(row_of(&p, d, letters));
                }
            }
        }
    }
    if rows.is_empty() {
        return f.is_zero();
    }
    let base = rank(rows.clone());
    rows.push(row_of(f, d, letters));
    rank(rows) == base
}

// ---------------------------------------------------------------------------
// Strategies.

pub fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=5, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

pub fn word(letters: u32, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..letters, 0..=max_len).prop_map(Word::from_letters)
}

pub fn ncpoly(letters: u32, max_len: usize, max_terms: usize) -> impl Strategy<Value = NCPoly> {
    proptest::collection::vec((word(letters, max_len), small_scalar()), 0..=max_terms).prop_map(NCPoly::from_terms)
}

pub fn homogeneous(letters: u32, degree: usize, max_terms: usize) -> impl Strategy<Value = NCPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0..letters, degree), -3i64..=3),
        1..=max_terms,
    )
    .prop_map(|terms| NCPoly::from_terms(terms.into_iter().map(|(w, c)| (Word::from_letters(w), int(c)))))
}

/// One or two nonzero relations over two letters, degree 2 or 3.
pub fn relation_set() -> impl Strategy<Value = Vec<NCPoly>> {
    proptest::collection::vec(
        (2usize..=3).prop_flat_map(|d| {
            (ncpoly(2, d, 3), homogeneous(2, d, 3)).prop_map(|(low, top)| &top + &low)
        }),
        1..=2,
    )
    .prop_filter("nonzero relations", |rs| rs.iter().all(|r| !r.is_zero()))
}

// ---------------------------------------------------------------------------
// Properties. Each returns `Err` with a description on violation.

pub fn prop_homogenize_round_trip(f: &NCPoly) -> Result<(), TestCaseError> {
    if f.is_zero() {
        return Ok(());
    }
    let h = homogenize_poly(f).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(h.is_homogeneous());
    prop_assert_eq!(h.degree(), f.degree());
    prop_assert_eq!(specialize(&h, Specialization::TToOne), f.clone());
    prop_assert_eq!(specialize(&h, Specialization::TToZero), f.lh().unwrap());
    Ok(())
}

pub fn prop_normal_form(relations: &[NCPoly], f: &NCPoly) -> Result<(), TestCaseError> {
    let basis = buchberger(relations, 5).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let nf = normal_form(f, &basis);
    prop_assert_eq!(normal_form(&nf, &basis), nf.clone());
    for w in nf.support() {
        prop_assert!(basis.is_normal_word(w), "reducible word left in normal form");
    }
    let (nf2, cert) = normal_form_with_certificate(f, &basis);
    prop_assert_eq!(&nf2, &nf);
    prop_assert_eq!(expand_certificate(&cert, &basis), f - &nf);
    Ok(())
}

/// Returns whether the basis completed (the check is vacuous otherwise).
pub fn prop_s_polynomials_resolve(relations: &[NCPoly]) -> Result<bool, TestCaseError> {
    let basis = buchberger(relations, 5).map_err(|e| TestCaseError::fail(e.to_string()))?;
    if basis.status() != Status::Complete {
        return Ok(false);
    }
    for ob in obstructions(&basis) {
        let s = s_polynomial(&basis, &ob);
        prop_assert!(normal_form(&s, &basis).is_zero(), "unresolved obstruction {:?}", ob);
    }
    Ok(true)
}

/// `M = P·J·P⁻¹` with known eigenvalues and block sizes.
pub fn jordan_instance() -> impl Strategy<Value = (Vec<(i64, Vec<usize>)>, Matrix)> {
    let blocks = proptest::collection::vec((-3i64..=3, proptest::collection::vec(1usize..=2, 1..=2)), 1..=2)
        .prop_map(|mut bs| {
            bs.sort_by_key(|(v, _)| *v);
            bs.dedup_by_key(|(v, _)| *v);
            for (_, sizes) in bs.iter_mut() {
                sizes.sort_unstable_by(|a, b| b.cmp(a));
            }
            bs
        })
        .prop_filter("at most 4 dimensions", |bs| {
            bs.iter().map(|(_, s)| s.iter().sum::<usize>()).sum::<usize>() <= 4
        });
    blocks.prop_flat_map(|bs| {
        let n: usize = bs.iter().map(|(_, s)| s.iter().sum::<usize>()).sum();
        (Just(bs), proptest::collection::vec(-2i64..=2, n * n))
    })
    .prop_map(|(bs, noise)| {
        let n: usize = bs.iter().map(|(_, s)| s.iter().sum::<usize>()).sum();
        let mut j = Matrix::zeros(n, n);
        let mut pos = 0;
        for (v, sizes) in &bs {
            for &s in sizes {
                for k in 0..s {
                    j.set(pos + k, pos + k, int(*v));
                    if k + 1 < s {
                        j.set(pos + k, pos + k + 1, int(1));
                    }
                }
                pos += s;
            }
        }
        // unit lower triangular times unit upper triangular: always invertible
        let mut l = Matrix::identity(n);
        let mut u = Matrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                let x = int(noise[r * n + c]);
                if r > c {
                    l.set(r, c, x);
                } else if r < c {
                    u.set(r, c, x);
                }
            }
        }
        let p = l.mul(&u);
        let m = p.mul(&j).mul(&p.inverse().unwrap());
        (bs, m)
    })
}

pub fn prop_jordan(expected: &[(i64, Vec<usize>)], m: &Matrix) -> Result<(), TestCaseError> {
    let r = jordan_structure(m);
    prop_assert!(r.all_rational);
    prop_assert_eq!(r.rational_eigen.len(), expected.len());
    let mut found = r.rational_eigen.clone();
    found.sort_by(|a, b| a.value.cmp(&b.value));
    let mut total = 0;
    for (e, (v, sizes)) in found.iter().zip(expected) {
        prop_assert_eq!(&e.value, &int(*v));
        prop_assert_eq!(&e.blocks, sizes);
        prop_assert_eq!(e.multiplicity, e.blocks.iter().sum::<usize>());
        let factor_mult = r
            .char_poly_factors
            .iter()
            .find(|(f, _)| f == &UPoly::linear(&int(*v)))
            .map(|(_, m)| *m);
        prop_assert_eq!(factor_mult, Some(e.multiplicity));
        total += e.multiplicity;
    }
    prop_assert_eq!(total, m.rows());
    prop_assert_eq!(r.is_diagonalizable(), expected.iter().all(|(_, s)| s.iter().all(|&b| b == 1)));
    Ok(())
}

fn x_pow_minus_one(n: u32) -> UPoly {
    let mut c = vec![Scalar::zero(); n as usize + 1];
    c[0] = -Scalar::one();
    c[n as usize] = Scalar::one();
    UPoly::from_coeffs(c)
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn prop_cyclotomic(n: u32) -> Result<(), TestCaseError> {
    let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let product = divisors.iter().fold(UPoly::one(), |acc, &d| acc.mul(&cyclotomic(d)));
    prop_assert_eq!(product, x_pow_minus_one(n));
    prop_assert_eq!(cyclotomic(n).degree(), Some(euler_phi(n) as usize));
    // Φ_n = Π (x^d - 1)^{μ(n/d)}
    let (mut num, mut den) = (UPoly::one(), UPoly::one());
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = num.mul(&x_pow_minus_one(d)),
            -1 => den = den.mul(&x_pow_minus_one(d)),
            _ => {}
        }
    }
    let (q, r) = num.div_rem(&den);
    prop_assert!(r.is_zero());
    prop_assert_eq!(q, cyclotomic(n));
    Ok(())
}

/// A presentation with a lift, drawn from the classification examples.
pub fn classify_instance() -> impl Strategy<Value = (Presentation, AffineMap, HopfFlags)> {
    let qp = (prop_oneof![Just(int(2)), Just(int(3)), Just(int(-2)), Just(rat(1, 3))], small_scalar(), small_scalar(), small_scalar())
        .prop_map(|(q, a, b, c)| {
            let qi = Scalar::one() / &q;
            let phi = affine(&[&[q.clone(), int(0)], &[int(0), qi.clone()]], &[-b.clone(), &qi * &a]);
            (quantum_plane(&q, &a, &b, &c), phi)
        });
    let du = (prop_oneof![Just(0i64), Just(1), Just(2)], prop_oneof![Just(2i64), Just(3), Just(-2)], 0i64..=2)
        .prop_map(|(a, b, g)| {
            let phi = affine(&[&[int(-b), int(0)], &[int(0), rat(-1, b)]], &[int(0), int(0)]);
            (down_up_int(a, b, g), phi)
        });
    let nd = prop_oneof![
        Just((u1(), affine(&[&[int(-1), int(-1)], &[int(0), int(-1)]], &[int(-1), int(-1)]))),
        Just((u2(), affine(&[&[int(1), int(1)], &[int(0), int(1)]], &[int(1), int(1)]))),
    ];
    (prop_oneof![qp, du, nd], any::<bool>(), any::<bool>()).prop_map(|((u, phi), s, h)| {
        (
            u,
            phi,
            HopfFlags {
                assume_semisimple: s,
                assume_trivial_hdet: h,
            },
        )
    })
}

pub fn prop_classify_scaling(
    u: &Presentation,
    phi: &AffineMap,
    flags: HopfFlags,
    scales: &[Scalar],
) -> Result<(), TestCaseError> {
    let mut scaled = u.clone();
    for (r, s) in scaled.relations.iter_mut().zip(scales.iter().cycle()) {
        *r = r.scale(s);
    }
    let a = classify(u, phi, flags);
    let b = classify(&scaled, phi, flags);
    prop_assert_eq!(a.case, b.case);
    prop_assert_eq!(&a.conclusions, &b.conclusions);
    prop_assert_eq!(&a.grouplike_relations, &b.grouplike_relations);
    for (r, s) in u.relations.iter().zip(scales.iter().cycle()) {
        for (i, j) in [(0, 1), (1, 0)] {
            prop_assert_eq!(match_pattern_a(r, i, j), match_pattern_a(&r.scale(s), i, j));
            prop_assert_eq!(match_pattern_b(r, i, j), match_pattern_b(&r.scale(s), i, j));
        }
    }
    Ok(())
}
