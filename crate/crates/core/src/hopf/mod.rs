//! Classification of finite-dimensional Hopf algebras acting inner-faithfully
//! on a filtered algebra, read off from the Nakayama automorphism and the
//! shape of the relations. No Hopf algebra is ever constructed: the output is
//! a list of formal conclusions, each tied to the checks that license it.

mod patterns;
mod smith;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::freealg::{AffineMap, NCPoly, Scalar, Word};
use crate::linalg::Matrix;
use crate::nakayama::{is_rational_root_of_unity, jordan_structure, AffineFamily, JordanReport};
use crate::presentation::Presentation;

pub use patterns::{match_pattern_a, match_pattern_b};
pub use smith::{invariant_factors, quotient_is_cyclic};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct HopfFlags {
    pub assume_semisimple: bool,
    pub assume_trivial_hdet: bool,
}

impl HopfFlags {
    pub fn both() -> Self {
        HopfFlags {
            assume_semisimple: true,
            assume_trivial_hdet: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HopfCase {
    #[serde(rename = "diagonal_1")]
    Diagonal1,
    #[serde(rename = "diagonal_2")]
    Diagonal2,
    NondiagonalLambda,
    NondiagonalUnipotent,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    DualOfGroupAlgebra,
    Semisimple,
    CommutativeGroupAlgebra,
    #[serde(rename = "cyclic_group_algebra_kZm")]
    CyclicGroupAlgebraKZm,
    TrivialK,
}

impl Conclusion {
    pub fn tag(self) -> &'static str {
        match self {
            Conclusion::DualOfGroupAlgebra => "dual_of_group_algebra",
            Conclusion::Semisimple => "semisimple",
            Conclusion::CommutativeGroupAlgebra => "commutative_group_algebra",
            Conclusion::CyclicGroupAlgebraKZm => "cyclic_group_algebra_kZm",
            Conclusion::TrivialK => "trivial_k",
        }
    }
}

/// Formal statements about the diagonal coaction symbols `y_ii`. Indices are
/// 1-based, matching the eigenbasis order of the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GrouplikeRelation {
    /// `y_ii · y_jj = 1`
    Inverse(usize, usize),
    /// `y_ii · y_jj = y_jj · y_ii`
    Commute(usize, usize),
    /// `y_ii = y_jj`
    Equal(usize, usize),
    /// `y_ii = 1`
    Trivial(usize),
}

impl fmt::Display for GrouplikeRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GrouplikeRelation::Inverse(i, j) => write!(f, "y{i}{i}*y{j}{j} = 1"),
            GrouplikeRelation::Commute(i, j) => write!(f, "y{i}{i}*y{j}{j} = y{j}{j}*y{i}{i}"),
            GrouplikeRelation::Equal(i, j) => write!(f, "y{i}{i} = y{j}{j}"),
            GrouplikeRelation::Trivial(i) => write!(f, "y{i}{i} = 1"),
        }
    }
}

impl Serialize for GrouplikeRelation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Justification {
    pub conclusion: Conclusion,
    pub rule: String,
    /// Names of passed checks the rule relies on.
    pub hypotheses: Vec<String>,
}

/// Eigen-coordinates `v_k = c_k·x + e_k` with `μ(v_k) = λ_k v_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenBasis {
    #[serde(serialize_with = "ser_scalars")]
    pub eigenvalues: Vec<Scalar>,
    /// Row `k` is the left eigenvector `c_k`.
    pub vectors: Matrix,
    #[serde(serialize_with = "ser_scalars")]
    pub shifts: Vec<Scalar>,
}

fn ser_scalars<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub case: HopfCase,
    pub verified_hypotheses: Vec<Check>,
    pub grouplike_relations: Vec<GrouplikeRelation>,
    pub conclusions: Vec<Conclusion>,
    pub justifications: Vec<Justification>,
    #[serde(rename = "assumptions")]
    pub assumptions_used: HopfFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenbasis: Option<EigenBasis>,
    pub notes: Vec<String>,
}

impl HopfReport {
    pub fn has(&self, c: Conclusion) -> bool {
        self.conclusions.contains(&c)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.verified_hypotheses.iter().filter(|c| !c.passed)
    }
}

struct Builder {
    flags: HopfFlags,
    checks: Vec<Check>,
    relations: BTreeSet<GrouplikeRelation>,
    conclusions: Vec<Conclusion>,
    justifications: Vec<Justification>,
    eigenbasis: Option<EigenBasis>,
    notes: Vec<String>,
}

impl Builder {
    fn new(flags: HopfFlags) -> Self {
        Builder {
            flags,
            checks: Vec::new(),
            relations: BTreeSet::new(),
            conclusions: Vec::new(),
            justifications: Vec::new(),
            eigenbasis: None,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn flag_checks(&mut self) -> bool {
        let s = self.flags.assume_semisimple;
        let h = self.flags.assume_trivial_hdet;
        self.check("assume_semisimple", s, if s { "assumed" } else { "not assumed" });
        self.check("assume_trivial_hdet", h, if h { "assumed" } else { "not assumed" });
        s && h
    }

    fn conclude(&mut self, c: Conclusion, rule: &str, hypotheses: &[&str]) {
        debug_assert!(hypotheses
            .iter()
            .all(|h| self.checks.iter().any(|c| c.name == *h && c.passed)));
        if self.conclusions.contains(&c) {
            return;
        }
        self.conclusions.push(c);
        self.justifications.push(Justification {
            conclusion: c,
            rule: rule.to_string(),
            hypotheses: hypotheses.iter().map(|h| h.to_string()).collect(),
        });
    }

    fn finish(self, case: HopfCase) -> HopfReport {
        let case = if self.conclusions.is_empty() {
            HopfCase::Inconclusive
        } else {
            case
        };
        HopfReport {
            case,
            verified_hypotheses: self.checks,
            grouplike_relations: self.relations.into_iter().collect(),
            conclusions: self.conclusions,
            justifications: self.justifications,
            assumptions_used: self.flags,
            eigenbasis: self.eigenbasis,
            notes: self.notes,
        }
    }
}

/// Finds a shift `x_i ↦ x_i + s_i` killing the degree `top−1` part of every
/// relation. Falls back to the zero shift when the linear system has no
/// solution.
pub fn normalize_presentation(u: &Presentation) -> (Presentation, Vec<Scalar>) {
    let n = u.num_generators();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for f in &u.relations {
        let Some(top) = f.degree() else { continue };
        if top == 0 {
            continue;
        }
        let mut eqs: BTreeMap<Word, Vec<Scalar>> = BTreeMap::new();
        for (w, c) in f.terms().iter().filter(|(w, _)| w.degree() == top) {
            for k in 0..top {
                let letter = w.letters()[k] as usize;
                let deleted = Word::from_letters([&w.letters()[..k], &w.letters()[k + 1..]].concat());
                let row = eqs.entry(deleted).or_insert_with(|| vec![Scalar::zero(); n]);
                row[letter] += c;
            }
        }
        for (w, _) in f.terms().iter().filter(|(w, _)| w.degree() + 1 == top) {
            eqs.entry(w.clone()).or_insert_with(|| vec![Scalar::zero(); n]);
        }
        for (w, row) in eqs {
            rhs.push(-f.coeff(&w));
            rows.push(row);
        }
    }
    let shift = if rows.is_empty() {
        None
    } else {
        Matrix::from_rows(rows).ok().and_then(|m| m.solve(&rhs))
    }
    .unwrap_or_else(|| vec![Scalar::zero(); n]);
    let map = AffineMap::translation(shift.clone());
    let relations = u.relations.iter().map(|f| map.apply(f)).collect();
    let out = Presentation {
        alphabet: u.alphabet.clone(),
        relations,
        central: u.central,
    };
    (out, shift)
}

/// Left eigenvectors of a diagonalizable `M` with rational spectrum, each
/// scaled so its first nonzero entry is 1, ordered by that position.
fn left_eigenbasis(m: &Matrix, jordan: &JordanReport) -> Vec<(Scalar, Vec<Scalar>)> {
    let mut out = Vec::new();
    for e in &jordan.rational_eigen {
        for mut v in m.shifted(&e.value).left_kernel() {
            let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Scalar::one);
            for x in v.iter_mut() {
                *x /= &lead;
            }
            out.push((e.value.clone(), v));
        }
    }
    out.sort_by_key(|(_, v)| v.iter().position(|x| !x.is_zero()));
    out
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn join(xs: &[Scalar]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Classifies the Hopf actions permitted by the Nakayama lift `φ` of `u`.
pub fn classify(u: &Presentation, phi: &AffineMap, flags: HopfFlags) -> HopfReport {
    let m = phi.matrix();
    let n = m.rows();
    let jordan = jordan_structure(m);
    let mut b = Builder::new(flags);

    if !b.check(
        "rational_eigenvalues",
        jordan.all_rational,
        format!("characteristic polynomial {}", jordan.char_poly.render("x")),
    ) {
        for (f, _) in jordan.char_poly_factors.iter().filter(|(f, _)| f.degree() > Some(1)) {
            b.notes.push(format!("no rational eigenvalue for factor {}", f.render("x")));
        }
        return b.finish(HopfCase::Inconclusive);
    }

    if jordan.is_diagonalizable() {
        b.check("diagonalizable_over_q", true, "all Jordan blocks have size 1");
        return classify_diagonal(u, phi, &jordan, b);
    }
    b.check("diagonalizable_over_q", false, "some Jordan block has size > 1");

    let single_block = n == 2 && jordan.rational_eigen.len() == 1 && jordan.rational_eigen[0].blocks == [2];
    if !b.check(
        "single_2_block",
        single_block,
        format!("n = {n}, blocks {:?}", jordan.rational_eigen.iter().map(|e| e.blocks.clone()).collect::<Vec<_>>()),
    ) {
        return b.finish(HopfCase::Inconclusive);
    }
    let lambda = jordan.rational_eigen[0].value.clone();
    if !lambda.is_one() {
        b.check("eigenvalue_not_one", true, format!("λ = {lambda}"));
        if b.flag_checks() {
            b.relations.insert(GrouplikeRelation::Equal(1, 2));
            b.conclude(
                Conclusion::CyclicGroupAlgebraKZm,
                "nondiagonal_block_lambda",
                &["single_2_block", "eigenvalue_not_one", "assume_semisimple", "assume_trivial_hdet"],
            );
        }
        return b.finish(HopfCase::NondiagonalLambda);
    }
    b.check("eigenvalue_not_one", false, "λ = 1");
    let c = m.shifted(&lambda).left_kernel().remove(0);
    let cb = dot(&c, phi.shift());
    b.notes.push(format!(
        "shift read in the Jordan basis: eigen-coordinate ({}) has shift {cb}",
        join(&c)
    ));
    if b.check("eigen_shift_nonzero", !cb.is_zero(), format!("c·b = {cb}")) {
        b.relations.insert(GrouplikeRelation::Trivial(1));
        b.relations.insert(GrouplikeRelation::Trivial(2));
        b.conclude(Conclusion::TrivialK, "nondiagonal_block_unipotent", &["single_2_block", "eigen_shift_nonzero"]);
    }
    b.finish(HopfCase::NondiagonalUnipotent)
}

fn classify_diagonal(u: &Presentation, phi: &AffineMap, jordan: &JordanReport, mut b: Builder) -> HopfReport {
    let m = phi.matrix();
    let n = m.rows();
    let basis = left_eigenbasis(m, jordan);
    let lambdas: Vec<Scalar> = basis.iter().map(|(l, _)| l.clone()).collect();

    if !b.check("eigenvalues_not_one", lambdas.iter().all(|l| !l.is_one()), format!("λ = [{}]", join(&lambdas))) {
        b.notes
            .push("eigenvalue 1: the affine part cannot be absorbed into an eigenbasis".to_string());
        return b.finish(HopfCase::Inconclusive);
    }
    let shifts: Vec<Scalar> = basis
        .iter()
        .map(|(l, c)| dot(c, phi.shift()) / (l - Scalar::one()))
        .collect();
    let vectors = Matrix::from_rows(basis.iter().map(|(_, c)| c.clone()).collect()).expect("square");
    let inv = vectors.inverse().expect("eigenvectors form a basis");
    let back_shift: Vec<Scalar> = inv.apply(&shifts).into_iter().map(|x| -x).collect();
    let to_eigen = AffineMap::new(inv, back_shift).expect("invertible");
    let relations: Vec<NCPoly> = u.relations.iter().map(|f| to_eigen.apply(f)).collect();
    b.eigenbasis = Some(EigenBasis {
        eigenvalues: lambdas.clone(),
        vectors,
        shifts,
    });

    let no_root = lambdas.iter().all(|l| !is_rational_root_of_unity(l).is_yes());
    b.check("no_root_of_unity_eigenvalue", no_root, "rational roots of unity are ±1");
    let mut ratio_ok = true;
    let mut distinct = true;
    for i in 0..n {
        for j in i + 1..n {
            if lambdas[i] == lambdas[j] {
                distinct = false;
            }
            if is_rational_root_of_unity(&(&lambdas[i] / &lambdas[j])).is_yes() {
                ratio_ok = false;
            }
        }
    }
    b.check("no_root_of_unity_ratio", ratio_ok, "λ_i/λ_j ∉ {1, −1} for i ≠ j");
    let case = if no_root && ratio_ok {
        HopfCase::Diagonal1
    } else {
        b.check("distinct_eigenvalues", distinct, "λ pairwise distinct");
        if b.flag_checks() && distinct {
            HopfCase::Diagonal2
        } else {
            return b.finish(HopfCase::Inconclusive);
        }
    };
    let base: Vec<&str> = match case {
        HopfCase::Diagonal1 => vec![
            "diagonalizable_over_q",
            "eigenvalues_not_one",
            "no_root_of_unity_eigenvalue",
            "no_root_of_unity_ratio",
        ],
        _ => vec![
            "diagonalizable_over_q",
            "eigenvalues_not_one",
            "distinct_eigenvalues",
            "assume_semisimple",
            "assume_trivial_hdet",
        ],
    };
    let rule = match case {
        HopfCase::Diagonal1 => "diagonal_generic_spectrum",
        _ => "diagonal_semisimple_trivial_hdet",
    };
    b.conclude(Conclusion::DualOfGroupAlgebra, rule, &base);
    b.conclude(Conclusion::Semisimple, rule, &base);

    let mut all_commute = n >= 2;
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            if i == j {
                continue;
            }
            if relations.iter().any(|r| match_pattern_a(r, i, j)) {
                let (lo, hi) = (i.min(j) as usize + 1, i.max(j) as usize + 1);
                b.relations.insert(GrouplikeRelation::Inverse(lo, hi));
            }
        }
    }
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            let hit = relations
                .iter()
                .any(|r| match_pattern_b(r, i, j) || match_pattern_b(r, j, i));
            if hit {
                b.relations
                    .insert(GrouplikeRelation::Commute(i as usize + 1, j as usize + 1));
            } else {
                all_commute = false;
            }
        }
    }
    let pa = b.relations.iter().any(|r| matches!(r, GrouplikeRelation::Inverse(..)));
    b.check("pattern_a", pa, "u1·v_i·v_j·u2 with u1·u2 in the same relation");
    b.check("pattern_b_all_pairs", all_commute, "u1·v_i·v_j·u2 with u1·v_j·v_i·u2 for every i < j");
    if all_commute {
        let mut h = base.clone();
        h.push("pattern_b_all_pairs");
        b.conclude(Conclusion::CommutativeGroupAlgebra, rule, &h);
    }
    let single = single_generator(&b.relations, n);
    let abelian_cyclic = all_commute && quotient_is_cyclic(&exponent_rows(&b.relations, n), n);
    if b.check(
        "grouplikes_cyclic",
        single || abelian_cyclic,
        "grouplike relations leave a single generator",
    ) {
        let mut h = base.clone();
        if pa {
            h.push("pattern_a");
        }
        if !single {
            h.push("pattern_b_all_pairs");
        }
        h.push("grouplikes_cyclic");
        b.conclude(Conclusion::CyclicGroupAlgebraKZm, "grouplike_relations_cyclic", &h);
    }
    b.finish(case)
}

fn exponent_rows(rels: &BTreeSet<GrouplikeRelation>, n: usize) -> Vec<Vec<i64>> {
    rels.iter()
        .filter_map(|r| {
            let mut row = vec![0i64; n];
            match *r {
                GrouplikeRelation::Inverse(i, j) => {
                    row[i - 1] += 1;
                    row[j - 1] += 1;
                }
                GrouplikeRelation::Equal(i, j) => {
                    row[i - 1] += 1;
                    row[j - 1] -= 1;
                }
                GrouplikeRelation::Trivial(i) => row[i - 1] = 1,
                GrouplikeRelation::Commute(..) => return None,
            }
            Some(row)
        })
        .collect()
}

/// Whether substitutions `y_jj = y_ii^{±1}` and `y_ii = 1` express every
/// generator through a single one, without assuming commutativity.
fn single_generator(rels: &BTreeSet<GrouplikeRelation>, n: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut trivial = vec![false; n];
    for r in rels {
        match *r {
            GrouplikeRelation::Inverse(i, j) | GrouplikeRelation::Equal(i, j) => {
                let (a, c) = (find(&mut parent, i - 1), find(&mut parent, j - 1));
                parent[a] = c;
            }
            GrouplikeRelation::Trivial(i) => trivial[i - 1] = true,
            GrouplikeRelation::Commute(..) => {}
        }
    }
    for i in 0..n {
        if trivial[i] {
            let r = find(&mut parent, i);
            trivial[r] = true;
        }
    }
    let roots: BTreeSet<usize> = (0..n)
        .map(|i| find(&mut parent, i))
        .filter(|&r| !trivial[r])
        .collect();
    roots.len() <= 1
}

/// Classification over a positive-dimensional family of lifts
/// `{(M, particular + Σ t_k d_k)}`. A conclusion is reported only when it
/// holds for every member.
pub fn classify_family(u: &Presentation, m: &Matrix, family: &AffineFamily, flags: HopfFlags) -> HopfReport {
    let phi = match AffineMap::new(m.clone(), family.particular.clone()) {
        Ok(p) => p,
        Err(e) => {
            let mut b = Builder::new(flags);
            b.check("invertible_matrix", false, e.to_string());
            return b.finish(HopfCase::Inconclusive);
        }
    };
    let mut report = classify(u, &phi, flags);
    if family.directions.is_empty() {
        return report;
    }
    let invariant = match report.case {
        HopfCase::NondiagonalLambda | HopfCase::Inconclusive => true,
        HopfCase::NondiagonalUnipotent => {
            let lambda = Scalar::one();
            let c = m.shifted(&lambda).left_kernel().remove(0);
            family.directions.iter().all(|d| dot(&c, d).is_zero())
        }
        HopfCase::Diagonal1 | HopfCase::Diagonal2 => false,
    };
    report.verified_hypotheses.push(Check {
        name: "family_invariant".to_string(),
        passed: invariant,
        detail: format!("{} free direction(s) in the shift", family.directions.len()),
    });
    if invariant {
        for j in &mut report.justifications {
            j.hypotheses.push("family_invariant".to_string());
        }
    } else {
        report.conclusions.clear();
        report.justifications.clear();
        report.grouplike_relations.clear();
        report.case = HopfCase::Inconclusive;
    }
    report
}
