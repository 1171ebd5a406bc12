//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Runs as a plain binary (`harness = false`) so every criterion reports even
//! when an earlier one fails.

mod common;

use common::*;
use filtered_nakayama::freealg::{int, rat};
use filtered_nakayama::groebner::{buchberger, ideal_member, is_pbw_deformation, Membership, PbwVerdict};
use filtered_nakayama::homog::degree_drop;
use filtered_nakayama::hopf::{classify, classify_family, Conclusion, HopfFlags};
use filtered_nakayama::linalg::Matrix;
use filtered_nakayama::nakayama::{
    build_skew_extension, is_calabi_yau, jordan_structure, lift_nakayama, LiftMethod, NakayamaError,
};
use filtered_nakayama::{AffineMap, NCPoly, Presentation, Scalar, Word};
use num_traits::One;
use proptest::test_runner::TestRunner;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diag(a: Scalar, b: Scalar) -> Matrix {
    Matrix::diagonal(&[a, b])
}

/// The unique lift, or a description of what came back instead.
fn unique_lift(u: &Presentation, m: &Matrix) -> Result<(AffineMap, LiftMethod), String> {
    match lift_nakayama(u, m, u.default_degree_bound()) {
        Ok(r) if r.solutions.len() == 1 => Ok((r.solutions[0].clone(), r.method)),
        Ok(r) => Err(format!("{} solutions", r.solutions.len())),
        Err(e) => Err(e.to_string()),
    }
}

fn expect_lift(u: &Presentation, m: &Matrix, expected: &AffineMap) -> Outcome {
    let (phi, _) = unique_lift(u, m)?;
    ensure(&phi == expected, || format!("got {phi:?}, expected {expected:?}"))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Scalar {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn quantum_plane_lift() -> Outcome {
    let qp = quantum_plane(&int(2), &int(3), &int(5), &int(7));
    let m = diag(int(2), rat(1, 2));
    expect_lift(&qp, &m, &AffineMap::new(m.clone(), vec![int(-5), rat(3, 2)]).unwrap())?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let qs = [int(2), int(3), int(-2), rat(1, 3)];
    for _ in 0..20 {
        let q = qs[rng.gen_range(0..qs.len())].clone();
        let (a, b, c) = (random_rat(&mut rng), random_rat(&mut rng), random_rat(&mut rng));
        let qi = Scalar::one() / &q;
        let m = diag(q.clone(), qi.clone());
        // x1 ↦ q x1 − b, x2 ↦ q⁻¹ x2 + q⁻¹ a
        let closed = AffineMap::new(m.clone(), vec![-b.clone(), &qi * &a]).unwrap();
        expect_lift(&quantum_plane(&q, &a, &b, &c), &m, &closed)
            .map_err(|e| format!("q={q} a={a} b={b} c={c}: {e}"))?;
    }
    Ok(())
}

fn weyl_calabi_yau() -> Outcome {
    for n in [1, 2] {
        let w = weyl(n);
        ensure(degree_drop(&w.relations) == Some(2), || format!("A_{n}: degree drop {:?}", degree_drop(&w.relations)))?;
        let (phi, method) = unique_lift(&w, &Matrix::identity(2 * n))?;
        ensure(method == LiftMethod::FastPathDegreeDrop, || format!("A_{n}: method {method:?}"))?;
        ensure(phi == AffineMap::identity(2 * n), || format!("A_{n}: lift {phi:?}"))?;
        ensure(is_calabi_yau(&phi), || format!("A_{n}: not Calabi-Yau"))?;
    }
    Ok(())
}

fn down_up_lifts() -> Outcome {
    for (alpha, beta, gamma) in [(1, 2, 1), (0, 3, 5), (2, -1, 1)] {
        let u = down_up_int(alpha, beta, gamma);
        let tag = format!("({alpha},{beta},{gamma})");
        let pbw = is_pbw_deformation(&u.graded(), &u, u.default_degree_bound()).map_err(|e| e.to_string())?;
        ensure(pbw.verdict == PbwVerdict::Verified, || format!("{tag}: PBW {:?}", pbw.verdict))?;
        let m = diag(int(-beta), rat(-1, beta));
        let (phi, _) = unique_lift(&u, &m).map_err(|e| format!("{tag}: {e}"))?;
        ensure(phi == AffineMap::linear(m.clone()).unwrap(), || format!("{tag}: lift {phi:?}"))?;
        ensure(is_calabi_yau(&phi) == (beta == -1), || format!("{tag}: Calabi-Yau flag {}", is_calabi_yau(&phi)))?;
    }
    Ok(())
}

fn single_block(m: &Matrix, lambda: Scalar) -> Outcome {
    let j = jordan_structure(m);
    let ok = j.all_rational
        && j.rational_eigen.len() == 1
        && j.rational_eigen[0].value == lambda
        && j.rational_eigen[0].blocks == vec![2];
    ensure(ok, || format!("jordan structure {:?}", j.rational_eigen))
}

fn nondiagonal_lifts() -> Outcome {
    let mut errors = Vec::new();
    let u1_expected = affine(&[&[int(-1), int(-1)], &[int(0), int(-1)]], &[int(-1), int(-1)]);
    if let Err(e) = expect_lift(&u1(), &u1_matrix(), &u1_expected).and(single_block(&u1_matrix(), int(-1))) {
        errors.push(format!("U_1: {e}"));
    }
    let u2_expected = affine(&[&[int(1), int(1)], &[int(0), int(1)]], &[int(1), int(1)]);
    if let Err(e) = expect_lift(&u2(), &u2_matrix(), &u2_expected).and(single_block(&u2_matrix(), int(1))) {
        errors.push(format!("U_2: {e}"));
    }
    ensure(errors.is_empty(), || errors.join("; "))
}

fn skew_extension_identity() -> Outcome {
    let cases = [
        ("quantum plane", quantum_plane(&int(2), &int(3), &int(5), &int(7)), diag(int(2), rat(1, 2))),
        ("Down-Up(1,2,1)", down_up_int(1, 2, 1), diag(int(-2), rat(-1, 2))),
    ];
    for (name, u, m) in cases {
        let (phi, _) = unique_lift(&u, &m).map_err(|e| format!("{name}: {e}"))?;
        let ext = build_skew_extension(&u, &phi).map_err(|e| e.to_string())?;
        let n = ext.num_generators();
        let (psi, _) = unique_lift(&ext, &Matrix::identity(n)).map_err(|e| format!("{name} extension: {e}"))?;
        ensure(psi == AffineMap::identity(n), || format!("{name}: extension lift {psi:?}"))?;
    }
    Ok(())
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| rng.gen_range(0..2u32)).collect::<Vec<_>>())
}

fn random_homogeneous(rng: &mut ChaCha8Rng, degree: usize, terms: usize) -> NCPoly {
    NCPoly::from_terms((0..terms).map(|_| {
        let w = random_word(rng, degree);
        (w, int(rng.gen_range(-3..=3)))
    }))
}

fn pbw_soundness() -> Outcome {
    let deformed = pres(&["x1^2", "x1*x2 - 1"]);
    let graded = pres(&["x1^2", "x1*x2"]);
    let r = is_pbw_deformation(&graded, &deformed, 6).map_err(|e| e.to_string())?;
    ensure(r.verdict == PbwVerdict::Refuted, || format!("{{x1^2, x1x2-1}}: {:?}", r.verdict))?;

    let graded_examples = [
        quantum_plane(&int(2), &int(0), &int(0), &int(0)),
        quantum_plane(&rat(1, 3), &int(0), &int(0), &int(0)),
        down_up_int(1, 2, 0),
        down_up_int(0, 3, 0),
        weyl(2).graded(),
        pres(&["x2*x1 - x1*x2"]),
        pres(&["x1^2", "x1*x2"]),
    ];
    for g in &graded_examples {
        let r = is_pbw_deformation(g, g, g.default_degree_bound()).map_err(|e| e.to_string())?;
        ensure(r.verdict == PbwVerdict::Verified, || format!("{:?} against itself: {:?}", g.relations, r.verdict))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let (mut yes, mut no) = (0, 0);
    for case in 0..100 {
        let rels: Vec<NCPoly> = (0..rng.gen_range(1..=2))
            .map(|_| loop {
                let d = rng.gen_range(2..=3);
                let t = rng.gen_range(1..=3);
                let r = random_homogeneous(&mut rng, d, t);
                if !r.is_zero() {
                    break r;
                }
            })
            .collect();
        let basis = buchberger(&rels, 6).map_err(|e| e.to_string())?;
        let d = rng.gen_range(2..=6);
        let mut f = if rng.gen_bool(0.5) {
            // a combination of products u·r·v, sometimes perturbed
            let mut acc = NCPoly::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let r = &rels[rng.gen_range(0..rels.len())];
                let k = r.degree().unwrap();
                if k > d {
                    continue;
                }
                let left = rng.gen_range(0..=d - k);
                let u = random_word(&mut rng, left);
                let v = random_word(&mut rng, d - k - left);
                acc = &acc + &r.sandwich(&int(rng.gen_range(1..=4)), &u, &v);
            }
            acc
        } else {
            let terms = rng.gen_range(1..=4);
            random_homogeneous(&mut rng, d, terms)
        };
        if rng.gen_bool(0.2) {
            f = &f + &random_homogeneous(&mut rng, d, 1);
        }
        let expected = oracle_member(&f, &rels, 2);
        let got = ideal_member(&f, &basis);
        let want = if expected { Membership::Yes } else { Membership::No };
        ensure(got == want, || format!("instance {case}: {f:?} in ({rels:?}): got {got:?}, oracle {expected}"))?;
        if expected {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, || format!("degenerate sample: {yes} members, {no} non-members"))
}

fn hopf_classification() -> Outcome {
    let none = HopfFlags::default();
    let mut errors = Vec::new();
    let mut check = |name: &str, cond: bool, detail: String| {
        if !cond {
            errors.push(format!("{name}: {detail}"));
        }
    };

    let qp = quantum_plane(&int(2), &int(3), &int(5), &int(7));
    let r = classify(&qp, &affine(&[&[int(2), int(0)], &[int(0), rat(1, 2)]], &[int(-5), rat(3, 2)]), none);
    check("quantum plane", r.has(Conclusion::CyclicGroupAlgebraKZm), format!("{:?}", r.conclusions));

    let r = classify(&down_up_int(1, 2, 1), &AffineMap::linear(diag(int(-2), rat(-1, 2))).unwrap(), none);
    check("Down-Up(1,2,1)", r.has(Conclusion::CyclicGroupAlgebraKZm), format!("{:?}", r.conclusions));

    let r = classify(&down_up_int(0, 3, 0), &AffineMap::linear(diag(int(-3), rat(-1, 3))).unwrap(), none);
    check(
        "Down-Up(0,3,0)",
        r.has(Conclusion::DualOfGroupAlgebra)
            && !r.has(Conclusion::CommutativeGroupAlgebra)
            && !r.has(Conclusion::CyclicGroupAlgebraKZm),
        format!("{:?}", r.conclusions),
    );

    let u1_lift = affine(&[&[int(-1), int(-1)], &[int(0), int(-1)]], &[int(-1), int(-1)]);
    let r = classify(&u1(), &u1_lift, HopfFlags::both());
    check("U_1 with flags", r.has(Conclusion::CyclicGroupAlgebraKZm), format!("{:?}", r.conclusions));
    let r = classify(&u1(), &u1_lift, none);
    check("U_1 without flags", r.conclusions.is_empty(), format!("{:?}", r.conclusions));

    // U_2 through whatever the lift step returns
    let u2_report = match lift_nakayama(&u2(), &u2_matrix(), u2().default_degree_bound()) {
        Ok(l) if l.solutions.len() == 1 => Ok(classify(&u2(), &l.solutions[0], none)),
        Ok(l) => Err(format!("{} solutions", l.solutions.len())),
        Err(NakayamaError::PositiveDimensional { family: Some(f), .. }) => {
            Ok(classify_family(&u2(), &u2_matrix(), &f, none))
        }
        Err(e) => Err(e.to_string()),
    };
    match u2_report {
        Ok(r) => check("U_2", r.conclusions == vec![Conclusion::TrivialK], format!("{:?}", r.conclusions)),
        Err(e) => check("U_2", false, e),
    }
    ensure(errors.is_empty(), || errors.join("; "))
}

fn run_property<S, F>(name: &str, strategy: S, test: F) -> Outcome
where
    S: proptest::strategy::Strategy,
    F: Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
{
    TestRunner::new(config(256))
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    run_property("homogenize round trip", ncpoly(3, 4, 5), |f| prop_homogenize_round_trip(&f))?;
    run_property("normal form", (relation_set(), ncpoly(2, 4, 5)), |(r, f)| prop_normal_form(&r, &f))?;
    let complete = std::cell::Cell::new(0u32);
    run_property("S-polynomials", relation_set(), |r| {
        if prop_s_polynomials_resolve(&r)? {
            complete.set(complete.get() + 1);
        }
        Ok(())
    })?;
    ensure(complete.get() > 0, || "no complete basis was sampled".into())?;
    run_property("Jordan blocks", jordan_instance(), |(b, m)| prop_jordan(&b, &m))?;
    for n in 1..=30 {
        prop_cyclotomic(n).map_err(|e| format!("cyclotomic n={n}: {e}"))?;
    }
    run_property(
        "classify scaling",
        (classify_instance(), proptest::collection::vec(nonzero_scalar(), 1..=2)),
        |((u, phi, flags), s)| prop_classify_scaling(&u, &phi, flags, &s),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("quantum plane lift and closed form", quantum_plane_lift),
        ("Weyl algebras A_1, A_2 are Calabi-Yau", weyl_calabi_yau),
        ("Down-Up PBW check and lifts", down_up_lifts),
        ("non-diagonalizable lifts U_1, U_2", nondiagonal_lifts),
        ("skew extension has identity Nakayama", skew_extension_identity),
        ("PBW criterion soundness and membership oracle", pbw_soundness),
        ("Hopf classification", hopf_classification),
        ("property suites", property_suites),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(()) => println!("PASS {}. {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}. {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
