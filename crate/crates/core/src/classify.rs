//! The decision layer: hypothesis report, the leading-coefficient fast path
//! (|c| <= 2), construction of the transvection triple, the SL2-quotient
//! analysis, and the full unipotent-radical criterion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rat_int, Rat, RatMat, RatVec};
use crate::monodromy::{
    as_transvection, form_apply, monodromy_pair, MonodromyData, Normalization, TransvectionData,
};
use crate::poly::{
    difference_profile, imprimitivity_set, is_self_reciprocal, poly_gcd, DifferenceProfile,
    IntPoly,
};
use crate::witness::{
    find_unipotent_witness, flag_basis, parse_word, Atom, SearchOutcome, Word,
};

// ---------------------------------------------------------------------------
// Hypotheses
// ---------------------------------------------------------------------------

/// Per-hypothesis booleans for a candidate pair (f, g). All true iff the pair
/// is admissible for the classification pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub monic_f: bool,
    pub monic_g: bool,
    pub even_degree: bool,
    /// f(0) = g(0) = 1.
    pub unit_constant: bool,
    pub reciprocal_f: bool,
    pub reciprocal_g: bool,
    /// f and g share no root (gcd has degree 0).
    pub coprime: bool,
    /// Not both polynomials lie in Z[X^k] for some k >= 2.
    pub primitive_pair: bool,
    pub n: usize,
}

impl HypothesisReport {
    pub fn all_ok(&self) -> bool {
        self.monic_f
            && self.monic_g
            && self.even_degree
            && self.unit_constant
            && self.reciprocal_f
            && self.reciprocal_g
            && self.coprime
            && self.primitive_pair
    }

    /// Names of the failed hypotheses, in field order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.monic_f, "monic_f"),
            (self.monic_g, "monic_g"),
            (self.even_degree, "even_degree"),
            (self.unit_constant, "unit_constant"),
            (self.reciprocal_f, "reciprocal_f"),
            (self.reciprocal_g, "reciprocal_g"),
            (self.coprime, "coprime"),
            (self.primitive_pair, "primitive_pair"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Evaluate every hypothesis; never errors — failures are carried in the
/// report.
pub fn check_hypotheses(f: &IntPoly, g: &IntPoly) -> HypothesisReport {
    let n = f.degree().unwrap_or(0);
    let deg_g = g.degree().unwrap_or(0);
    let one = BigInt::one();
    HypothesisReport {
        monic_f: f.is_monic(),
        monic_g: g.is_monic(),
        even_degree: n >= 2 && n % 2 == 0 && deg_g == n,
        unit_constant: f.constant_term() == one && g.constant_term() == one,
        reciprocal_f: is_self_reciprocal(f),
        reciprocal_g: is_self_reciprocal(g),
        coprime: poly_gcd(f, g).degree() == Some(0),
        primitive_pair: imprimitivity_set(f, g).is_empty(),
        n,
    }
}

// ---------------------------------------------------------------------------
// Classification & certificates
// ---------------------------------------------------------------------------

/// Verdict lattice, strongest first. The tool never concludes thinness on
/// its own; `KnownThin` only enters via the curated literature table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ArithmeticThm1,
    ArithmeticCertificate,
    KnownThin,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ArithmeticThm1 => "ArithmeticThm1",
            Verdict::ArithmeticCertificate => "ArithmeticCertificate",
            Verdict::KnownThin => "KnownThin",
            Verdict::Undetermined => "Undetermined",
        }
    }

    /// Strength for the never-downgrade rule (larger is stronger).
    pub fn strength(self) -> u8 {
        match self {
            Verdict::ArithmeticThm1 => 3,
            Verdict::ArithmeticCertificate => 2,
            Verdict::KnownThin => 1,
            Verdict::Undetermined => 0,
        }
    }
}

/// Machine-recheckable evidence attached to an `ArithmeticCertificate`
/// verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithmeticityCertificate {
    /// (f, g) in canonical display form.
    pub pair: (String, String),
    /// "power-of-A", "power-of-B", or "conjugator".
    pub triple_origin: String,
    /// The conjugating word when origin = "conjugator".
    pub conjugator_word: Option<String>,
    /// The power m with (C3'')^m in the Levi subgroup generated by C1'', C2''.
    pub m: Option<u32>,
    /// The SL2 word expressing (C3'')^m over the Levi generators.
    pub sl2_word: Option<String>,
    /// Word over C1, C2, C3 evaluating to the unipotent-radical element.
    pub witness_word: Option<String>,
    pub verdict: String,
    pub citation: String,
}

/// Outcome of the classification pipeline for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub method: String,
    pub certificate: Option<ArithmeticityCertificate>,
    pub citation: String,
}

impl Classification {
    fn undetermined(method: &str) -> Self {
        Classification {
            verdict: Verdict::Undetermined,
            method: method.into(),
            certificate: None,
            citation: String::new(),
        }
    }
}

/// Search limits: the maximum Levi power m and the word-search depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub power_bound: u32,
    pub depth: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            power_bound: 48,
            depth: 6,
        }
    }
}

/// Fast path: admissible and |c| <= 2 implies arithmetic.
pub fn classify_thm1(f: &IntPoly, g: &IntPoly) -> Result<Classification> {
    let report = check_hypotheses(f, g);
    if !report.all_ok() {
        return Err(Error::HypothesisViolation(report.failures().join(", ")));
    }
    let profile = difference_profile(f, g)?;
    if profile.c.abs() <= BigInt::from(2) {
        Ok(Classification {
            verdict: Verdict::ArithmeticThm1,
            method: "leading-coefficient-bound".into(),
            certificate: None,
            citation: String::new(),
        })
    } else {
        Ok(Classification::undetermined("leading-coefficient-bound"))
    }
}

// ---------------------------------------------------------------------------
// Transvection triples
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripleOrigin {
    PowerOfA,
    PowerOfB,
    Conjugator(String),
}

impl TripleOrigin {
    pub fn as_str(&self) -> &str {
        match self {
            TripleOrigin::PowerOfA => "power-of-A",
            TripleOrigin::PowerOfB => "power-of-B",
            TripleOrigin::Conjugator(_) => "conjugator",
        }
    }

    pub fn conjugator(&self) -> Option<&str> {
        match self {
            TripleOrigin::Conjugator(w) => Some(w),
            _ => None,
        }
    }
}

/// Three transvections C1, C2, C3 with independent directions w1, w2, w3 and
/// Omega(w1, w2) != 0 (possibly after renumbering downstream).
#[derive(Debug, Clone)]
pub struct TransvectionTriple {
    pub c1: TransvectionData,
    pub c2: TransvectionData,
    pub c3: TransvectionData,
    pub w1: RatVec,
    pub w2: RatVec,
    pub w3: RatVec,
    /// Omega(w1, w2).
    pub lambda2: Rat,
    pub origin: TripleOrigin,
}

impl TransvectionTriple {
    fn directions_mat(&self) -> RatMat {
        RatMat::from_cols(&[self.w1.clone(), self.w2.clone(), self.w3.clone()])
    }
}

fn conjugate(g: &RatMat, m: &RatMat) -> Result<RatMat> {
    g.mul(m)?.mul(&g.inv()?)
}

fn make_triple(
    md: &MonodromyData,
    gamma: &RatMat,
    origin: TripleOrigin,
) -> Result<Option<TransvectionTriple>> {
    let c1m = md.c.clone();
    let c2m = conjugate(gamma, &md.c)?;
    let c3m = conjugate(&gamma.inv()?, &md.c)?;
    let w1 = md.v.clone();
    let w2 = gamma.mul_vec(&md.v)?;
    let w3 = gamma.inv()?.mul_vec(&md.v)?;
    if RatMat::from_cols(&[w1.clone(), w2.clone(), w3.clone()]).rank() != 3 {
        return Ok(None);
    }
    let lambda2 = form_apply(&md.omega, &w1, &w2);
    let triple = TransvectionTriple {
        c1: as_transvection(&c1m, &md.omega)?,
        c2: as_transvection(&c2m, &md.omega)?,
        c3: as_transvection(&c3m, &md.omega)?,
        w1,
        w2,
        w3,
        lambda2,
        origin,
    };
    Ok(Some(triple))
}

/// The standard triple C1 = C, C2 = A^{-k} C A^k, C3 = A^k C A^{-k} with
/// directions v, A^{-k}v, A^k v; falls back to conjugating by B when the
/// A-directions are dependent.
pub fn build_triple(md: &MonodromyData, profile: &DifferenceProfile) -> Result<TransvectionTriple> {
    let k = profile.k as i64;
    // Conjugating C by gamma = G^{-k} gives C2 = G^{-k} C G^k with direction
    // G^{-k} v, matching w2 = G^{-k} v.
    for (g, origin) in [(&md.a, TripleOrigin::PowerOfA), (&md.b, TripleOrigin::PowerOfB)] {
        let gamma = g.pow(-k)?;
        if let Some(triple) = make_triple(md, &gamma, origin)? {
            return Ok(triple);
        }
    }
    Err(Error::TripleDegenerate)
}

/// Matrix of a transvection pair acting on span(w1, w2), or None if the span
/// is not stable (cannot happen for transvections with these directions).
fn restrict_to_span(m: &RatMat, basis: &[RatVec]) -> Option<RatMat> {
    let b = RatMat::from_cols(basis);
    let image = m.mul(&b).ok()?;
    b.solve_exact(&image)
}

/// The 2x2 matrices of C1, C2 on span(w1, w2). They must equal
/// [[1,-c],[0,1]] and [[1,0],[c,1]] for a single integer c; anything else is
/// an internal invariant breach.
pub fn levi_matrices(triple: &TransvectionTriple) -> Result<(RatMat, RatMat)> {
    let basis = [triple.w1.clone(), triple.w2.clone()];
    let m1 = restrict_to_span(&triple.c1.matrix, &basis)
        .ok_or_else(|| Error::InternalInconsistency("C1 does not stabilize span(w1,w2)".into()))?;
    let m2 = restrict_to_span(&triple.c2.matrix, &basis)
        .ok_or_else(|| Error::InternalInconsistency("C2 does not stabilize span(w1,w2)".into()))?;
    let c = levi_multiplier(&m1, &m2).ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "Levi matrices do not have the transvection shape: {} / {}",
            m1, m2
        ))
    })?;
    let _ = c;
    Ok((m1, m2))
}

/// The common integer c with M1 = [[1,-c],[0,1]], M2 = [[1,0],[c,1]], if the
/// shapes hold exactly.
fn levi_multiplier(m1: &RatMat, m2: &RatMat) -> Option<BigInt> {
    if m1.rows != 2 || m1.cols != 2 || m2.rows != 2 || m2.cols != 2 {
        return None;
    }
    let one = rat_int(1);
    let zero = rat_int(0);
    if *m1.at(0, 0) != one || *m1.at(1, 1) != one || *m1.at(1, 0) != zero {
        return None;
    }
    if *m2.at(0, 0) != one || *m2.at(1, 1) != one || *m2.at(0, 1) != zero {
        return None;
    }
    let c = m2.at(1, 0).clone();
    if !c.is_integer() || *m1.at(0, 1) != -c.clone() {
        return None;
    }
    Some(c.to_integer())
}

// ---------------------------------------------------------------------------
// SL2 membership
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Gen {
    /// M1 = [[1,-c],[0,1]].
    M1,
    /// M2 = [[1,0],[c,1]].
    M2,
}

/// Membership is a value: `NonMember` is an answer, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sl2Outcome {
    Member(Vec<(Sl2Gen, i64)>),
    NonMember,
}

fn sl2_gen(gen: Sl2Gen, c: &BigInt) -> RatMat {
    let c_rat = Rat::from_integer(c.clone());
    let mut m = RatMat::identity(2);
    match gen {
        Sl2Gen::M1 => *m.at_mut(0, 1) = -c_rat,
        Sl2Gen::M2 => *m.at_mut(1, 0) = c_rat,
    }
    m
}

/// Evaluate an SL2 word over the generators for multiplier c.
pub fn eval_sl2_word(word: &[(Sl2Gen, i64)], c: &BigInt) -> Result<RatMat> {
    let mut acc = RatMat::identity(2);
    for (gen, exp) in word {
        acc = acc.mul(&sl2_gen(*gen, c).pow(*exp)?)?;
    }
    Ok(acc)
}

fn tmat(q: &BigInt) -> RatMat {
    let mut m = RatMat::identity(2);
    *m.at_mut(0, 1) = Rat::from_integer(q.clone());
    m
}

fn lmat(q: &BigInt) -> RatMat {
    let mut m = RatMat::identity(2);
    *m.at_mut(1, 0) = Rat::from_integer(q.clone());
    m
}

fn int_entry(m: &RatMat, i: usize, j: usize) -> BigInt {
    m.at(i, j).to_integer()
}

/// Nearest integer to a/b (ties away from zero).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    Rat::new(a.clone(), b.clone()).round().to_integer()
}

/// Express an integer matrix of determinant 1 as a word in T = [[1,1],[0,1]]
/// and L = [[1,0],[1,1]] by Euclidean reduction on the first column.
/// Each step left-multiplies by a generator power; the applied operations
/// g_1 .. g_k satisfy g_k ... g_1 M = I, so M = g_1^{-1} ... g_k^{-1}
/// (inverses in the *original* application order).
fn euclid_word_tl(m: &RatMat) -> Result<Vec<(char, BigInt)>> {
    let mut cur = m.clone();
    let mut applied: Vec<(char, BigInt)> = Vec::new();
    for _ in 0..500 {
        let a = int_entry(&cur, 0, 0);
        let c = int_entry(&cur, 1, 0);
        if c.is_zero() {
            break;
        }
        if a.is_zero() {
            // gcd(a, c) = 1 forces c = ±1; a T-step makes a nonzero.
            applied.push(('T', c.clone()));
            cur = tmat(&c).mul(&cur)?;
            continue;
        }
        if c.abs() >= a.abs() {
            let q = round_div(&c, &a);
            applied.push(('L', -q.clone()));
            cur = lmat(&(-q)).mul(&cur)?;
        } else {
            let q = round_div(&a, &c);
            applied.push(('T', -q.clone()));
            cur = tmat(&(-q)).mul(&cur)?;
        }
    }
    let a = int_entry(&cur, 0, 0);
    let b = int_entry(&cur, 0, 1);
    let c = int_entry(&cur, 1, 0);
    if !c.is_zero() || a.abs() != BigInt::one() {
        return Err(Error::InternalInconsistency(
            "Euclidean reduction did not terminate".into(),
        ));
    }
    if a.is_one() {
        if !b.is_zero() {
            applied.push(('T', -b));
        }
    } else {
        // Residue [[-1,b],[0,-1]] = -T^{-b}; -I = (T L^-1 T)^2.
        if !b.is_zero() {
            applied.push(('T', b));
        }
        for step in [
            ('T', -1i64),
            ('L', 1),
            ('T', -1),
            ('T', -1),
            ('L', 1),
            ('T', -1),
        ] {
            applied.push((step.0, BigInt::from(step.1)));
        }
    }
    Ok(applied.into_iter().map(|(s, e)| (s, -e)).collect())
}

/// Greedy coefficient-shrinking membership test for the subgroup generated by
/// T^2 and L^2 (free on those generators for matrices ≡ I mod 2).
fn sanov_word_tl(m: &RatMat) -> Option<Vec<(char, BigInt)>> {
    let two = BigInt::from(2);
    for i in 0..2 {
        for j in 0..2 {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if (int_entry(m, i, j) - want) % &two != BigInt::zero() {
                return None;
            }
        }
    }
    let norm = |a: &RatMat| -> BigInt {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| int_entry(a, i, j).abs())
            .sum()
    };
    let mut cur = m.clone();
    let mut applied: Vec<(char, BigInt)> = Vec::new();
    for _ in 0..500 {
        if cur.is_identity() {
            return Some(applied.into_iter().map(|(s, e)| (s, -e)).collect());
        }
        let mut best: Option<(char, i64, RatMat)> = None;
        let mut best_norm = norm(&cur);
        for (s, e) in [('T', 2i64), ('T', -2), ('L', 2), ('L', -2)] {
            let q = BigInt::from(e);
            let g = if s == 'T' { tmat(&q) } else { lmat(&q) };
            let next = g.mul(&cur).ok()?;
            let nn = norm(&next);
            if nn < best_norm {
                best = Some((s, e, next));
                best_norm = nn;
            }
        }
        match best {
            Some((s, e, next)) => {
                applied.push((s, BigInt::from(e)));
                cur = next;
            }
            None => return None,
        }
    }
    None
}

/// Decide membership of an integer SL2 matrix in the group generated by
/// M1 = [[1,-c],[0,1]] and M2 = [[1,0],[c,1]], |c| in {1, 2} (the sign of c
/// is folded into the generator exponents). For |c| = 1 the generators span
/// all of SL2(Z) and Euclidean reduction always succeeds; for |c| = 2 the
/// matrix must be ≡ I mod 2 and is peeled greedily in the free group on
/// T^2, L^2.
pub fn sl2_membership(m: &RatMat, c: &BigInt) -> Result<Sl2Outcome> {
    if c.abs() < BigInt::one() || c.abs() > BigInt::from(2) {
        return Err(Error::UnsupportedC(c.to_string()));
    }
    if m.rows != 2 || m.cols != 2 || !m.is_integer() {
        return Err(Error::DimensionMismatch(
            "sl2_membership expects a 2x2 integer matrix".into(),
        ));
    }
    if m.det()? != rat_int(1) {
        return Err(Error::DimensionMismatch(
            "sl2_membership expects determinant 1".into(),
        ));
    }
    let tl_word = if c.abs().is_one() {
        euclid_word_tl(m)?
    } else {
        match sanov_word_tl(m) {
            Some(w) => w,
            None => return Ok(Sl2Outcome::NonMember),
        }
    };
    // T^a = M1^{-a/c}, L^a = M2^{a/c}; exponents must be divisible by c.
    let mut word = Vec::new();
    for (s, a) in tl_word {
        if (&a % c) != BigInt::zero() {
            return Ok(Sl2Outcome::NonMember);
        }
        let q = &a / c;
        let exp = q.to_i64().ok_or_else(|| {
            Error::InternalInconsistency("SL2 word exponent overflow".into())
        })?;
        if exp == 0 {
            continue;
        }
        match s {
            'T' => word.push((Sl2Gen::M1, -exp)),
            _ => word.push((Sl2Gen::M2, exp)),
        }
    }
    // Merge adjacent same-generator runs.
    let mut merged: Vec<(Sl2Gen, i64)> = Vec::new();
    for (g, e) in word {
        match merged.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    merged.pop();
                }
            }
            _ => merged.push((g, e)),
        }
    }
    Ok(Sl2Outcome::Member(merged))
}

fn sl2_word_to_string(word: &[(Sl2Gen, i64)]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|(g, e)| {
            let name = match g {
                Sl2Gen::M1 => "M1",
                Sl2Gen::M2 => "M2",
            };
            if *e == 1 {
                name.to_string()
            } else {
                format!("{}^{}", name, e)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------------------
// The unipotent-radical criterion
// ---------------------------------------------------------------------------

/// Outcome of the constructive Levi-power argument on one renumbering.
struct ConstructiveResult {
    m: u32,
    sl2_word: String,
    witness_word: Word,
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Try the constructive certificate on a given renumbering of the triple.
///
/// Restricts C1, C2, C3 to the basis (e, w1, w2) where e spans the radical of
/// Omega on W = span(w1,w2,w3). On the Levi quotient C3 is unipotent,
/// C3'' = I + N; search for the least m <= power_bound with I + mN integral
/// and a member of the group generated by the Levi images of C1, C2, then
/// the ambient element (C3')^m h^{-1} lies in the unipotent radical of
/// Sp(W) and is nontrivial.
fn try_constructive(
    cs: [&TransvectionData; 3],
    ws: [&RatVec; 3],
    names: [&str; 3],
    omega: &RatMat,
    power_bound: u32,
) -> Result<Option<ConstructiveResult>> {
    let lambda = form_apply(omega, ws[0], ws[1]);
    if lambda.is_zero() {
        return Ok(None);
    }
    let w_mat = RatMat::from_cols(&[ws[0].clone(), ws[1].clone(), ws[2].clone()]);
    if w_mat.rank() != 3 {
        return Ok(None);
    }
    let gram = w_mat.transpose().mul(omega)?.mul(&w_mat)?;
    let kernel = gram.kernel();
    if kernel.len() != 1 {
        return Ok(None);
    }
    let e = w_mat.mul_vec(&kernel[0])?.primitive();
    let basis = [e, ws[0].clone(), ws[1].clone()];
    let mut restricted = Vec::new();
    for c in cs {
        match restrict_to_span(&c.matrix, &basis) {
            Some(r) => restricted.push(r),
            None => return Ok(None),
        }
    }
    let levi = |r: &RatMat| -> RatMat {
        let mut out = RatMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                *out.at_mut(i, j) = r.at(i + 1, j + 1).clone();
            }
        }
        out
    };
    let (m1, m2, g3) = (levi(&restricted[0]), levi(&restricted[1]), levi(&restricted[2]));
    let c = match levi_multiplier(&m1, &m2) {
        Some(c) if c.abs() <= BigInt::from(2) => c,
        _ => return Ok(None),
    };
    let n_mat = g3.sub(&RatMat::identity(2));
    if !n_mat.mul(&n_mat)?.is_zero() {
        return Ok(None);
    }
    for m in 1..=power_bound {
        let gm = RatMat::identity(2).add(&n_mat.scale(&rat_int(m as i64)));
        if !gm.is_integer() {
            continue;
        }
        let word = match sl2_membership(&gm, &c)? {
            Sl2Outcome::Member(w) => w,
            Sl2Outcome::NonMember => continue,
        };
        // h = the same word evaluated in the 3x3 restrictions.
        let mut h = RatMat::identity(3);
        for (g, e) in &word {
            let base = match g {
                Sl2Gen::M1 => &restricted[0],
                Sl2Gen::M2 => &restricted[1],
            };
            h = h.mul(&base.pow(*e)?)?;
        }
        let witness = restricted[2].pow(m as i64)?.mul(&h.inv()?)?;
        // Unipotent radical of Sp(W): identity off the first row, first row
        // (1, *, *) with a nontrivial tail.
        let shape_ok = witness.at(0, 0).is_one()
            && (1..3).all(|i| {
                (0..3).all(|j| {
                    let want = if i == j { rat_int(1) } else { rat_int(0) };
                    *witness.at(i, j) == want
                })
            });
        if !shape_ok {
            continue;
        }
        if witness.at(0, 1).is_zero() && witness.at(0, 2).is_zero() {
            continue; // trivial; keep searching larger m
        }
        // Witness word over the original generator names:
        // (C3')^m h^{-1}, with h^{-1} the reversed, negated SL2 word.
        let mut atoms = vec![Atom::Sym(names[2].to_string(), m as i64)];
        for (g, e) in word.iter().rev() {
            let name = match g {
                Sl2Gen::M1 => names[0],
                Sl2Gen::M2 => names[1],
            };
            atoms.push(Atom::Sym(name.to_string(), -e));
        }
        let witness_word = Word { atoms };
        // Self-containment: re-evaluating the word in the ambient generators
        // and restricting must reproduce the witness.
        let mut env = HashMap::new();
        for (name, c_data) in names.iter().zip(cs.iter()) {
            env.insert(name.to_string(), c_data.matrix.clone());
        }
        let ambient = crate::witness::eval_word(&witness_word, &env)?;
        let again = restrict_to_span(&ambient, &basis).ok_or_else(|| {
            Error::InternalInconsistency("witness does not stabilize W".into())
        })?;
        if again != witness {
            return Err(Error::InternalInconsistency(
                "witness word re-evaluation mismatch".into(),
            ));
        }
        return Ok(Some(ConstructiveResult {
            m,
            sl2_word: sl2_word_to_string(&word),
            witness_word,
        }));
    }
    Ok(None)
}

/// Run the constructive path over all renumberings of the triple.
fn constructive_over_permutations(
    triple: &TransvectionTriple,
    omega: &RatMat,
    power_bound: u32,
) -> Result<Option<ConstructiveResult>> {
    let cs = [&triple.c1, &triple.c2, &triple.c3];
    let ws = [&triple.w1, &triple.w2, &triple.w3];
    let names = ["C1", "C2", "C3"];
    for perm in PERMUTATIONS {
        let cs_p = [cs[perm[0]], cs[perm[1]], cs[perm[2]]];
        let ws_p = [ws[perm[0]], ws[perm[1]], ws[perm[2]]];
        let names_p = [names[perm[0]], names[perm[1]], names[perm[2]]];
        if let Some(res) = try_constructive(cs_p, ws_p, names_p, omega, power_bound)? {
            return Ok(Some(res));
        }
    }
    Ok(None)
}

fn certificate_from_constructive(
    triple: &TransvectionTriple,
    res: &ConstructiveResult,
) -> ArithmeticityCertificate {
    ArithmeticityCertificate {
        pair: (String::new(), String::new()),
        triple_origin: triple.origin.as_str().to_string(),
        conjugator_word: triple.origin.conjugator().map(str::to_string),
        m: Some(res.m),
        sl2_word: Some(res.sl2_word.clone()),
        witness_word: Some(res.witness_word.to_string()),
        verdict: Verdict::ArithmeticCertificate.as_str().into(),
        citation: String::new(),
    }
}

/// Full unipotent-radical criterion for one triple: checks independence and
/// nondegenerate pairing, then looks for a nontrivial unipotent-radical
/// element — constructively through the Levi power argument when the
/// effective multiplier has |c| <= 2, otherwise by bounded word search.
/// Exhaustion is `Undetermined`, never a negative claim.
pub fn check_thm2(
    md: &MonodromyData,
    triple: &TransvectionTriple,
    limits: &SearchLimits,
) -> Result<Classification> {
    if triple.directions_mat().rank() != 3 {
        return Err(Error::HypothesisViolation(
            "transvection directions are dependent".into(),
        ));
    }
    let pairings = [
        form_apply(&md.omega, &triple.w1, &triple.w2),
        form_apply(&md.omega, &triple.w1, &triple.w3),
        form_apply(&md.omega, &triple.w2, &triple.w3),
    ];
    if pairings.iter().all(|p| p.is_zero()) {
        return Err(Error::HypothesisViolation(
            "all pairings Omega(w_i, w_j) vanish".into(),
        ));
    }
    if let Some(res) = constructive_over_permutations(triple, &md.omega, limits.power_bound)? {
        return Ok(Classification {
            verdict: Verdict::ArithmeticCertificate,
            method: "unipotent-radical-construction".into(),
            certificate: Some(certificate_from_constructive(triple, &res)),
            citation: String::new(),
        });
    }
    // Fall back to the bounded word search over C1, C2, C3. The flag needs
    // Omega(w1,w2) != 0; renumber if necessary.
    let flag_triple = if !triple.lambda2.is_zero() {
        triple.clone()
    } else {
        match renumber_for_flag(triple, &md.omega) {
            Some(t) => t,
            None => return Ok(Classification::undetermined("unipotent-radical-search")),
        }
    };
    let flag = match flag_basis(&flag_triple, &md.omega) {
        Ok(flag) => flag,
        Err(Error::DegenerateFlag(_)) => {
            return Ok(Classification::undetermined("unipotent-radical-search"))
        }
        Err(e) => return Err(e),
    };
    let mut env = HashMap::new();
    env.insert("C1".to_string(), triple.c1.matrix.clone());
    env.insert("C2".to_string(), triple.c2.matrix.clone());
    env.insert("C3".to_string(), triple.c3.matrix.clone());
    match find_unipotent_witness(&env, &flag, limits.depth)? {
        SearchOutcome::Found(cert) => Ok(Classification {
            verdict: Verdict::ArithmeticCertificate,
            method: "unipotent-radical-search".into(),
            certificate: Some(ArithmeticityCertificate {
                pair: (String::new(), String::new()),
                triple_origin: triple.origin.as_str().to_string(),
                conjugator_word: triple.origin.conjugator().map(str::to_string),
                m: None,
                sl2_word: None,
                witness_word: Some(cert.witness_word.to_string()),
                verdict: Verdict::ArithmeticCertificate.as_str().into(),
                citation: String::new(),
            }),
            citation: String::new(),
        }),
        SearchOutcome::Exhausted => Ok(Classification::undetermined("unipotent-radical-search")),
    }
}

/// First renumbering of the triple with Omega(w1, w2) != 0.
fn renumber_for_flag(triple: &TransvectionTriple, omega: &RatMat) -> Option<TransvectionTriple> {
    let cs = [&triple.c1, &triple.c2, &triple.c3];
    let ws = [&triple.w1, &triple.w2, &triple.w3];
    for perm in PERMUTATIONS {
        let lambda = form_apply(omega, ws[perm[0]], ws[perm[1]]);
        if !lambda.is_zero() {
            return Some(TransvectionTriple {
                c1: cs[perm[0]].clone(),
                c2: cs[perm[1]].clone(),
                c3: cs[perm[2]].clone(),
                w1: ws[perm[0]].clone(),
                w2: ws[perm[1]].clone(),
                w3: ws[perm[2]].clone(),
                lambda2: lambda,
                origin: triple.origin.clone(),
            });
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Extended triple search
// ---------------------------------------------------------------------------

/// BFS over conjugators gamma in {A^{±1}, B^{±1}}* of length <= depth.
/// A word qualifies when the coefficient of e_n in gamma·v is ±1 or ±2,
/// (v, gamma·v, gamma^{-1}·v) are independent, and Omega(v, gamma·v) != 0.
/// Candidates are produced in BFS order (lexicographically smallest
/// conjugator first within each length).
pub fn extended_triple_candidates(md: &MonodromyData, depth: usize) -> Result<Vec<TransvectionTriple>> {
    let n = md.n;
    let letters: Vec<(String, i64, RatMat)> = vec![
        ("A".into(), 1, md.a.clone()),
        ("A".into(), -1, md.a.inv()?),
        ("B".into(), 1, md.b.clone()),
        ("B".into(), -1, md.b.inv()?),
    ];
    let identity = RatMat::identity(n);
    let mut seen = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut frontier: Vec<(RatMat, Vec<usize>)> = vec![(identity, vec![])];
    let mut out = Vec::new();
    let two = BigInt::from(2);
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, word) in &frontier {
            for (idx, (_, _, gm)) in letters.iter().enumerate() {
                if let Some(&last) = word.last() {
                    if last ^ 1 == idx {
                        continue;
                    }
                }
                let m2 = m.mul(gm)?;
                if seen.contains(&m2) {
                    continue;
                }
                seen.insert(m2.clone());
                let mut w2 = word.clone();
                w2.push(idx);
                let gv = m2.mul_vec(&md.v)?;
                let coeff = &gv.entries[n - 1];
                if coeff.is_integer() && {
                    let a = coeff.to_integer().abs();
                    a == BigInt::one() || a == two
                } {
                    let gamma_word = render_conjugator(&letters, &w2);
                    if let Some(triple) =
                        make_triple(md, &m2, TripleOrigin::Conjugator(gamma_word))?
                    {
                        if !triple.lambda2.is_zero() {
                            out.push(triple);
                        }
                    }
                }
                next.push((m2, w2));
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// First qualifying triple, or None if the search space is exhausted.
pub fn extended_triple_search(md: &MonodromyData, depth: usize) -> Result<Option<TransvectionTriple>> {
    Ok(extended_triple_candidates(md, depth)?.into_iter().next())
}

fn render_conjugator(letters: &[(String, i64, RatMat)], indices: &[usize]) -> String {
    let mut atoms: Vec<Atom> = Vec::new();
    for &idx in indices {
        let (name, sign, _) = &letters[idx];
        match atoms.last_mut() {
            Some(Atom::Sym(last, exp)) if last == name && (*exp > 0) == (*sign > 0) => {
                *exp += sign;
            }
            _ => atoms.push(Atom::Sym(name.clone(), *sign)),
        }
    }
    Word { atoms }.to_string()
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

/// Classify one pair end to end: hypotheses, the |c| <= 2 fast path, the
/// standard-triple criterion, then the extended conjugator search with the
/// constructive certificate on each candidate.
pub fn classify_pair(f: &IntPoly, g: &IntPoly, limits: &SearchLimits) -> Result<Classification> {
    let thm1 = classify_thm1(f, g)?;
    if thm1.verdict == Verdict::ArithmeticThm1 {
        return Ok(thm1);
    }
    let md = monodromy_pair(f, g, Normalization::PrimitiveInteger)?;
    let profile = difference_profile(f, g)?;
    let triple = build_triple(&md, &profile)?;
    let standard = check_thm2(&md, &triple, limits)?;
    let fill_pair = |mut classification: Classification| -> Classification {
        if let Some(cert) = classification.certificate.as_mut() {
            cert.pair = (f.to_string(), g.to_string());
        }
        classification
    };
    if standard.verdict == Verdict::ArithmeticCertificate {
        return Ok(fill_pair(standard));
    }
    for candidate in extended_triple_candidates(&md, limits.depth)? {
        if let Some(res) =
            constructive_over_permutations(&candidate, &md.omega, limits.power_bound)?
        {
            let classification = Classification {
                verdict: Verdict::ArithmeticCertificate,
                method: "conjugated-triple-construction".into(),
                certificate: Some(certificate_from_constructive(&candidate, &res)),
                citation: String::new(),
            };
            return Ok(fill_pair(classification));
        }
    }
    Ok(Classification::undetermined("search-exhausted"))
}

/// Recheck a constructive certificate from its stored data alone: rebuild the
/// triple from the origin, evaluate the witness word over C1, C2, C3, and
/// verify the unipotent-radical shape on the restriction. No search.
pub fn recheck_certificate(
    f: &IntPoly,
    g: &IntPoly,
    cert: &ArithmeticityCertificate,
) -> Result<bool> {
    let md = monodromy_pair(f, g, Normalization::PrimitiveInteger)?;
    let profile = difference_profile(f, g)?;
    let triple = match (cert.triple_origin.as_str(), &cert.conjugator_word) {
        ("conjugator", Some(word_text)) => {
            let gamma_word = parse_word(word_text)?;
            let mut env = HashMap::new();
            env.insert("A".to_string(), md.a.clone());
            env.insert("B".to_string(), md.b.clone());
            let gamma = crate::witness::eval_word(&gamma_word, &env)?;
            match make_triple(&md, &gamma, TripleOrigin::Conjugator(word_text.clone()))? {
                Some(t) => t,
                None => return Ok(false),
            }
        }
        _ => build_triple(&md, &profile)?,
    };
    let word_text = match &cert.witness_word {
        Some(w) => w,
        None => return Ok(false),
    };
    let word = parse_word(word_text)?;
    let mut env = HashMap::new();
    env.insert("C1".to_string(), triple.c1.matrix.clone());
    env.insert("C2".to_string(), triple.c2.matrix.clone());
    env.insert("C3".to_string(), triple.c3.matrix.clone());
    let ambient = crate::witness::eval_word(&word, &env)?;
    if ambient.is_identity() {
        return Ok(false);
    }
    // The witness must fix W = span(w1,w2,w3) and act there as a nontrivial
    // unipotent-radical element: identity on W/(Q e) and e fixed.
    for perm in PERMUTATIONS {
        let ws = [&triple.w1, &triple.w2, &triple.w3];
        let ws_p = [ws[perm[0]], ws[perm[1]], ws[perm[2]]];
        if form_apply(&md.omega, ws_p[0], ws_p[1]).is_zero() {
            continue;
        }
        let w_mat = RatMat::from_cols(&[ws_p[0].clone(), ws_p[1].clone(), ws_p[2].clone()]);
        if w_mat.rank() != 3 {
            continue;
        }
        let gram = w_mat.transpose().mul(&md.omega)?.mul(&w_mat)?;
        let kernel = gram.kernel();
        if kernel.len() != 1 {
            continue;
        }
        let e = w_mat.mul_vec(&kernel[0])?.primitive();
        let basis = [e, ws_p[0].clone(), ws_p[1].clone()];
        if let Some(r) = restrict_to_span(&ambient, &basis) {
            let shape_ok = r.at(0, 0).is_one()
                && (1..3).all(|i| {
                    (0..3).all(|j| {
                        let want = if i == j { rat_int(1) } else { rat_int(0) };
                        *r.at(i, j) == want
                    })
                });
            if shape_ok && (!r.at(0, 1).is_zero() || !r.at(0, 2).is_zero()) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{cyclotomic, parse_poly};

    fn pair(f: &str, g: &str) -> (IntPoly, IntPoly) {
        (parse_poly(f).unwrap(), parse_poly(g).unwrap())
    }

    #[test]
    fn hypotheses_admissible_pair() {
        let (f, g) = pair("(X-1)^4", "Phi6^2");
        let report = check_hypotheses(&f, &g);
        assert!(report.all_ok());
        assert_eq!(report.n, 4);
    }

    #[test]
    fn hypotheses_shared_root() {
        let (f, g) = pair("(X-1)^4", "(X-1)*(X^3-1)");
        let report = check_hypotheses(&f, &g);
        assert!(!report.coprime);
    }

    #[test]
    fn hypotheses_imprimitive() {
        let (f, g) = pair("X^4-2*X^2+1", "X^4+1");
        let report = check_hypotheses(&f, &g);
        assert!(!report.primitive_pair);
    }

    #[test]
    fn thm1_fast_path() {
        let (f, g) = pair("(X-1)^4", "Phi6^2");
        let c = classify_thm1(&f, &g).unwrap();
        assert_eq!(c.verdict, Verdict::ArithmeticThm1);

        let (f, g) = pair("(X-1)^4", "(X+1)^4");
        let c = classify_thm1(&f, &g).unwrap();
        assert_eq!(c.verdict, Verdict::Undetermined);
    }

    #[test]
    fn thm1_quintic_family_member() {
        // f = (X^5-1)/(X-1), g = (X^2-1)^2 has |c| = 1.
        let f = parse_poly("X^4+X^3+X^2+X+1").unwrap();
        let g = parse_poly("(X^2-1)^2").unwrap();
        let c = classify_thm1(&f, &g).unwrap();
        assert_eq!(c.verdict, Verdict::ArithmeticThm1);
    }

    #[test]
    fn levi_shape_for_c_minus_2() {
        // f = Phi1^2 Phi4, g = Phi8 has c = -2 (difference -2X^3+2X^2-2X).
        let (f, g) = pair("(X-1)^4", "Phi6^2");
        let md = monodromy_pair(&f, &g, Normalization::PrimitiveInteger).unwrap();
        let profile = difference_profile(&f, &g).unwrap();
        let triple = build_triple(&md, &profile).unwrap();
        let (m1, m2) = levi_matrices(&triple).unwrap();
        assert_eq!(m1, RatMat::from_i64(&[&[1, 2], &[0, 1]]));
        assert_eq!(m2, RatMat::from_i64(&[&[1, 0], &[-2, 1]]));
    }

    #[test]
    fn levi_shape_for_c_minus_3() {
        // f = (X-1)^4, g = Phi10 has c = -3.
        let (f, g) = pair("(X-1)^4", "Phi10");
        let md = monodromy_pair(&f, &g, Normalization::PrimitiveInteger).unwrap();
        let profile = difference_profile(&f, &g).unwrap();
        let triple = build_triple(&md, &profile).unwrap();
        let (m1, m2) = levi_matrices(&triple).unwrap();
        assert_eq!(m1, RatMat::from_i64(&[&[1, 3], &[0, 1]]));
        assert_eq!(m2, RatMat::from_i64(&[&[1, 0], &[-3, 1]]));
    }

    #[test]
    fn sl2_c2_simple_member() {
        // [[1,2],[0,1]] = M1^{-1} when M1 = [[1,-2],[0,1]].
        let m = RatMat::from_i64(&[&[1, 2], &[0, 1]]);
        match sl2_membership(&m, &BigInt::from(2)).unwrap() {
            Sl2Outcome::Member(word) => {
                assert_eq!(word, vec![(Sl2Gen::M1, -1)]);
            }
            other => panic!("expected member, got {:?}", other),
        }
    }

    #[test]
    fn sl2_c2_nonmember_mod_2() {
        let m = RatMat::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            sl2_membership(&m, &BigInt::from(2)).unwrap(),
            Sl2Outcome::NonMember
        );
    }

    #[test]
    fn sl2_c2_minus_identity_rejected() {
        // -I ≡ I mod 2 but is not in the free group on T^2, L^2.
        let m = RatMat::from_i64(&[&[-1, 0], &[0, -1]]);
        assert_eq!(
            sl2_membership(&m, &BigInt::from(2)).unwrap(),
            Sl2Outcome::NonMember
        );
    }

    #[test]
    fn sl2_c2_word_roundtrip() {
        let c = BigInt::from(2);
        let target = eval_sl2_word(&[(Sl2Gen::M2, 1), (Sl2Gen::M1, 2)], &c).unwrap();
        match sl2_membership(&target, &c).unwrap() {
            Sl2Outcome::Member(word) => {
                assert_eq!(eval_sl2_word(&word, &c).unwrap(), target);
            }
            other => panic!("expected member, got {:?}", other),
        }
    }

    #[test]
    fn sl2_c1_arbitrary_matrix() {
        // For |c| = 1 the generators span SL2(Z).
        let c = BigInt::from(-1);
        let m = RatMat::from_i64(&[&[2, 5], &[1, 3]]);
        match sl2_membership(&m, &c).unwrap() {
            Sl2Outcome::Member(word) => {
                assert_eq!(eval_sl2_word(&word, &c).unwrap(), m);
            }
            other => panic!("expected member, got {:?}", other),
        }
    }

    #[test]
    fn sl2_unsupported_c() {
        let m = RatMat::identity(2);
        assert!(matches!(
            sl2_membership(&m, &BigInt::from(3)),
            Err(Error::UnsupportedC(_))
        ));
    }

    #[test]
    fn sl2_roundtrip_exhaustive_short_words() {
        // Every product of <= 3 generator powers round-trips for |c| = 2.
        let c = BigInt::from(2);
        let gens = [
            (Sl2Gen::M1, 1i64),
            (Sl2Gen::M1, -1),
            (Sl2Gen::M2, 1),
            (Sl2Gen::M2, -1),
        ];
        let mut words: Vec<Vec<(Sl2Gen, i64)>> = vec![vec![]];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &words {
                for g in gens {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
            words.extend(next);
        }
        for w in &words {
            let target = eval_sl2_word(w, &c).unwrap();
            match sl2_membership(&target, &c).unwrap() {
                Sl2Outcome::Member(found) => {
                    assert_eq!(eval_sl2_word(&found, &c).unwrap(), target);
                }
                Sl2Outcome::NonMember => panic!("word {:?} should be a member", w),
            }
        }
    }

    #[test]
    fn constructive_certificate_table1_row() {
        // f = Phi1^2 Phi3, g = Phi8 has c = -1; the standard triple carries a
        // constructive certificate.
        let f = parse_poly("(X-1)^2*Phi3").unwrap();
        let g = cyclotomic(8);
        let md = monodromy_pair(&f, &g, Normalization::PrimitiveInteger).unwrap();
        let profile = difference_profile(&f, &g).unwrap();
        let triple = build_triple(&md, &profile).unwrap();
        let limits = SearchLimits::default();
        let c = check_thm2(&md, &triple, &limits).unwrap();
        assert_eq!(c.verdict, Verdict::ArithmeticCertificate);
        let cert = c.certificate.unwrap();
        assert!(cert.m.is_some());
        assert!(cert.witness_word.is_some());
    }

    #[test]
    fn pipeline_certifies_phi10() {
        let (f, g) = pair("(X-1)^4", "Phi10");
        let c = classify_pair(&f, &g, &SearchLimits::default()).unwrap();
        assert_eq!(c.verdict, Verdict::ArithmeticCertificate);
        let cert = c.certificate.clone().unwrap();
        assert!(recheck_certificate(&f, &g, &cert).unwrap());
    }

    #[test]
    fn pipeline_certifies_phi4_phi6() {
        let (f, g) = pair("(X-1)^4", "Phi4*Phi6");
        let c = classify_pair(&f, &g, &SearchLimits::default()).unwrap();
        assert_eq!(c.verdict, Verdict::ArithmeticCertificate);
    }

    #[test]
    fn extended_search_upgrades_phi3phi4_vs_phi6sq() {
        let (f, g) = pair("Phi3*Phi4", "Phi6^2");
        let c = classify_pair(&f, &g, &SearchLimits::default()).unwrap();
        assert_eq!(c.verdict, Verdict::ArithmeticCertificate);
        let cert = c.certificate.clone().unwrap();
        assert_eq!(cert.triple_origin, "conjugator");
        assert!(cert.conjugator_word.is_some());
        assert!(recheck_certificate(&f, &g, &cert).unwrap());
    }

    #[test]
    fn thin_pair_stays_undetermined() {
        let (f, g) = pair("(X-1)^4", "Phi5");
        let c = classify_pair(&f, &g, &SearchLimits::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Undetermined);
    }

    #[test]
    fn extended_search_trivial_for_small_c() {
        // |c| <= 2 pairs qualify immediately (gamma = A^{-k} works).
        let (f, g) = pair("(X-1)^4", "Phi6^2");
        let md = monodromy_pair(&f, &g, Normalization::PrimitiveInteger).unwrap();
        let found = extended_triple_search(&md, 2).unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn hypothesis_violation_rejected() {
        let f = parse_poly("X^2").unwrap();
        let g = parse_poly("X^2+1").unwrap();
        assert!(matches!(
            classify_thm1(&f, &g),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
