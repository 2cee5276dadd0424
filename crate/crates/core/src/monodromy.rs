//! The monodromy model for a pair (f, g): companion matrices A and B,
//! C = A^{-1}B, the direction vector v with (C-1)Z^n = Zv, the invariant
//! symplectic form, and transvection recognition.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rat, RatMat, RatVec};
use crate::poly::IntPoly;

/// How the (scalar-unique) invariant form is normalized.
///
/// The form is only determined up to scalars; `Unit12` pins Omega(e1,e2) = 1
/// (matching the worked displays), `PrimitiveInteger` scales to coprime
/// integer entries with positive first nonzero entry (always defined).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Unit12,
    PrimitiveInteger,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Unit12 => "unit12",
            Normalization::PrimitiveInteger => "primitive-integer",
        }
    }
}

/// The bundle (A, B, C, v, Omega) for one admissible pair.
#[derive(Debug, Clone)]
pub struct MonodromyData {
    pub n: usize,
    pub a: RatMat,
    pub b: RatMat,
    pub c: RatMat,
    pub v: RatVec,
    pub omega: RatMat,
    pub normalization: Normalization,
}

/// A symplectic transvection x -> x + mu * Omega(x, w) * w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransvectionData {
    pub matrix: RatMat,
    /// Primitive integer direction spanning (matrix - 1)(Z^n).
    pub w: RatVec,
    pub mu: Rat,
}

/// Companion matrix of a monic polynomial: subdiagonal ones, last column the
/// negated coefficients, so that A e_1 = e_2, ..., A e_{n-1} = e_n.
pub fn companion(f: &IntPoly) -> Result<RatMat> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::DimensionMismatch("companion of a constant".into()));
    }
    let mut m = RatMat::zeros(n, n);
    for i in 1..n {
        *m.at_mut(i, i - 1) = Rat::one();
    }
    for i in 0..n {
        *m.at_mut(i, n - 1) = Rat::from_integer(-f.coeff(i));
    }
    Ok(m)
}

/// Solve for the invariant form: the antisymmetric Omega with
/// A^T Omega A = Omega and B^T Omega B = Omega, as one kernel problem in the
/// n(n-1)/2 strictly-upper entries.
pub fn invariant_form(a: &RatMat, b: &RatMat, normalization: Normalization) -> Result<RatMat> {
    let n = a.rows;
    if !a.is_square() || !b.is_square() || b.rows != n {
        return Err(Error::DimensionMismatch("invariant_form inputs".into()));
    }
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let dim = unknowns.len();
    // Row per (matrix M, strictly-upper position (p,q)) of M^T Omega M - Omega.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for m in [a, b] {
        for p in 0..n {
            for q in (p + 1)..n {
                let mut row = vec![Rat::zero(); dim];
                for (idx, &(i, j)) in unknowns.iter().enumerate() {
                    // Omega = sum over unknowns of w_ij (E_ij - E_ji).
                    // (M^T Omega M)[p][q] picks up w_ij (M[i][p] M[j][q] - M[j][p] M[i][q]).
                    let mut coeff =
                        m.at(i, p).clone() * m.at(j, q) - m.at(j, p).clone() * m.at(i, q);
                    if (i, j) == (p, q) {
                        coeff -= Rat::one();
                    }
                    row[idx] = coeff;
                }
                rows.push(row);
            }
        }
    }
    let sys = RatMat::new(
        rows.len(),
        dim,
        rows.into_iter().flatten().collect(),
    );
    let kernel = sys.kernel();
    match kernel.len() {
        0 => return Err(Error::NoInvariantForm),
        1 => {}
        k => return Err(Error::NonUniqueForm(k)),
    }
    let w = &kernel[0];
    let mut omega = RatMat::zeros(n, n);
    for (idx, &(i, j)) in unknowns.iter().enumerate() {
        *omega.at_mut(i, j) = w.entries[idx].clone();
        *omega.at_mut(j, i) = -w.entries[idx].clone();
    }
    if omega.det()?.is_zero() {
        return Err(Error::DegenerateForm);
    }
    match normalization {
        Normalization::Unit12 => {
            let pivot = omega.at(0, 1).clone();
            if pivot.is_zero() {
                return Err(Error::Unit12Undefined);
            }
            Ok(omega.scale(&(Rat::one() / pivot)))
        }
        Normalization::PrimitiveInteger => {
            // The kernel vector is already primitive with positive first
            // nonzero entry, and the first nonzero strictly-upper entry of
            // omega is exactly that leading entry.
            Ok(omega)
        }
    }
}

/// Build the full monodromy bundle. The caller is expected to have verified
/// the pair hypotheses (see the decision layer); this function re-checks the
/// structural facts it depends on.
pub fn monodromy_pair(
    f: &IntPoly,
    g: &IntPoly,
    normalization: Normalization,
) -> Result<MonodromyData> {
    let n = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) if a == b && a >= 2 => a,
        _ => {
            return Err(Error::HypothesisViolation(
                "f and g must have equal degree >= 2".into(),
            ))
        }
    };
    if n % 2 != 0 {
        return Err(Error::HypothesisViolation("degree must be even".into()));
    }
    if f.constant_term() != BigInt::one() || g.constant_term() != BigInt::one() {
        // In particular this rejects the orthogonal case f(0) = 1, g(0) = -1.
        return Err(Error::HypothesisViolation("f(0) and g(0) must be 1".into()));
    }
    let a = companion(f)?;
    let b = companion(g)?;
    let c = a.inv()?.mul(&b)?;
    // C must be identity except in the last column: C e_n = e_n + v.
    let mut v = RatVec::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { Rat::one() } else { Rat::zero() };
            if j < n - 1 {
                if *c.at(i, j) != want {
                    return Err(Error::InternalInconsistency(
                        "C is not of the expected block form".into(),
                    ));
                }
            }
        }
        if i < n - 1 {
            v.entries[i] = c.at(i, n - 1).clone();
        } else if !(c.at(i, n - 1) - Rat::one()).is_zero() {
            return Err(Error::InternalInconsistency(
                "C[n][n] is not 1".into(),
            ));
        }
    }
    let omega = invariant_form(&a, &b, normalization)?;
    // v is orthogonal to e_1..e_{n-1}.
    for i in 0..n - 1 {
        if !form_apply(&omega, &v, &RatVec::unit(n, i)).is_zero() {
            return Err(Error::InternalInconsistency(
                "v is not orthogonal to e_1..e_{n-1}".into(),
            ));
        }
    }
    // v is a cyclic vector: v, Av, ..., A^{n-1}v independent.
    let mut cols = Vec::with_capacity(n);
    let mut cur = v.clone();
    for _ in 0..n {
        cols.push(cur.clone());
        cur = a.mul_vec(&cur)?;
    }
    if RatMat::from_cols(&cols).rank() != n {
        return Err(Error::InternalInconsistency("v is not a cyclic vector".into()));
    }
    Ok(MonodromyData {
        n,
        a,
        b,
        c,
        v,
        omega,
        normalization,
    })
}

/// Omega(x, y).
pub fn form_apply(omega: &RatMat, x: &RatVec, y: &RatVec) -> Rat {
    let oy = omega.mul_vec(y).expect("form_apply: dimension mismatch");
    x.entries
        .iter()
        .zip(&oy.entries)
        .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
}

/// Recognize T as a transvection for the given form and extract its
/// primitive direction and multiplier.
///
/// Direction sign convention: w is the image under (T - 1) of the first
/// standard basis vector with nonzero image, scaled by a *positive* rational
/// to primitive integer entries. This preserves the sign patterns of the
/// worked examples (e.g. (-3, 5, -3, 0)).
pub fn as_transvection(t: &RatMat, omega: &RatMat) -> Result<TransvectionData> {
    let n = t.rows;
    if !t.is_square() || omega.rows != n {
        return Err(Error::DimensionMismatch("as_transvection inputs".into()));
    }
    let d = t.sub(&RatMat::identity(n));
    if d.rank() != 1 {
        return Err(Error::NotTransvection(format!(
            "rank(T - 1) = {}",
            d.rank()
        )));
    }
    if !d.mul(&d)?.is_zero() {
        return Err(Error::NotTransvection("(T - 1)^2 != 0".into()));
    }
    let j = (0..n)
        .find(|&j| !d.col(j).is_zero())
        .expect("rank-1 matrix has a nonzero column");
    let w = d.col(j).primitive_signed();
    // Solve mu from (T - 1)x = mu * Omega(x, w) * w at x = e_j.
    let pairing = form_apply(omega, &RatVec::unit(n, j), &w);
    if pairing.is_zero() {
        return Err(Error::NotTransvection(
            "direction is not isotropic-paired with a probe vector".into(),
        ));
    }
    let image = d.col(j);
    // image = mu * pairing * w; read mu off any nonzero coordinate.
    let i = w.entries.iter().position(|e| !e.is_zero()).unwrap();
    let mu = (&image.entries[i] / &w.entries[i]) / &pairing;
    // Confirm the defining identity on the full basis.
    for x in 0..n {
        let ex = RatVec::unit(n, x);
        let lhs = d.mul_vec(&ex)?;
        let rhs = w.scale(&(form_apply(omega, &ex, &w) * &mu));
        if lhs != rhs {
            return Err(Error::NotTransvection(
                "does not act as x -> x + mu Omega(x,w) w".into(),
            ));
        }
    }
    Ok(TransvectionData {
        matrix: t.clone(),
        w,
        mu,
    })
}

/// True iff M^T Omega M = Omega.
pub fn is_symplectic(m: &RatMat, omega: &RatMat) -> bool {
    m.transpose()
        .mul(omega)
        .and_then(|x| x.mul(m))
        .map(|x| x == *omega)
        .unwrap_or(false)
}
