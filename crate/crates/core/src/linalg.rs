//! Exact rational vectors and matrices: products, inverses, kernels,
//! nilpotent logarithms, and Lie-algebra span closures.
//!
//! Everything is arbitrary-precision `BigRational`; there are no tolerances
//! anywhere. Matrices are small (the domain caps out around 16x16), so the
//! implementations favor clarity over asymptotics. Kernels use fraction-free
//! (Bareiss-style) elimination to control intermediate blow-up.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Soft cap on matrix dimensions; the domain never needs more, and this
/// guards against accidental blow-ups.
pub const MAX_DIM: usize = 64;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Render a rational as `p/q`, omitting `/q` when q = 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad rational `{}`", s),
    })?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad rational `{}`", s),
    })?;
    if d.is_zero() {
        return Err(Error::Parse {
            pos: 0,
            msg: "zero denominator".into(),
        });
    }
    Ok(Rat::new(n, d))
}

/// Exact rational column vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatVec {
    pub entries: Vec<Rat>,
}

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVec { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RatVec::new(entries.iter().map(|&e| rat_int(e)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        RatVec::new(vec![Rat::zero(); n])
    }

    /// Standard basis vector e_i (0-based) of length n.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[i] = Rat::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        RatVec::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        RatVec::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Self {
        RatVec::new(self.entries.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Self {
        RatVec::new(self.entries.iter().map(|a| -a).collect())
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.denom().is_one())
    }

    /// Scale to coprime integer entries; sign fixed so the first nonzero
    /// entry is positive. The zero vector is returned unchanged.
    pub fn primitive(&self) -> Self {
        primitive_scaled(&self.entries)
            .map(RatVec::new)
            .unwrap_or_else(|| self.clone())
    }

    /// Scale to coprime integer entries keeping the original sign pattern.
    pub fn primitive_signed(&self) -> Self {
        match primitive_scaled(&self.entries) {
            Some(entries) => {
                let flipped = RatVec::new(entries);
                // primitive_scaled normalizes the first nonzero entry to be
                // positive; undo the flip if the input led with a negative.
                let first = self.entries.iter().find(|e| !e.is_zero()).unwrap();
                if first.is_negative() {
                    flipped.neg()
                } else {
                    flipped
                }
            }
            None => self.clone(),
        }
    }
}

/// Clear denominators and divide by the gcd; normalize the first nonzero
/// entry to be positive. `None` for the zero vector.
fn primitive_scaled(entries: &[Rat]) -> Option<Vec<Rat>> {
    if entries.iter().all(|e| e.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for e in entries {
        lcm = num_integer::lcm(lcm, e.denom().clone());
    }
    let ints: Vec<BigInt> = entries
        .iter()
        .map(|e| (e * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = num_integer::gcd(g, i.clone());
    }
    let first = ints.iter().find(|i| !i.is_zero()).unwrap();
    if first.is_negative() {
        g = -g;
    }
    Some(ints.iter().map(|i| Rat::from_integer(i / &g)).collect())
}

impl fmt::Display for RatVec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(rat_to_string).collect();
        write!(out, "({})", parts.join(", "))
    }
}

/// Exact rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert!(rows <= MAX_DIM && cols <= MAX_DIM, "matrix too large");
        assert_eq!(entries.len(), rows * cols);
        RatMat {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            entries.extend(row.iter().map(|&e| rat_int(e)));
        }
        RatMat::new(r, c, entries)
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.denom().is_one())
    }

    pub fn col(&self, j: usize) -> RatVec {
        RatVec::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> RatVec {
        RatVec::new((0..self.cols).map(|j| self.at(i, j).clone()).collect())
    }

    /// Assemble a matrix from column vectors.
    pub fn from_cols(cols: &[RatVec]) -> Self {
        let r = cols.first().map_or(0, |c| c.len());
        let mut m = RatMat::zeros(r, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), r);
            for i in 0..r {
                *m.at_mut(i, j) = c.entries[i].clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Self {
        RatMat::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a * s).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RatVec) -> Result<RatVec> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = RatVec::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = Rat::zero();
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() {
                    acc += a * &v.entries[j];
                }
            }
            out.entries[i] = acc;
        }
        Ok(out)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Err(Error::Singular),
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let p = a.at(col, col).clone();
            for j in 0..n {
                *a.at_mut(col, j) /= &p;
                *inv.at_mut(col, j) /= &p;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let av = a.at(col, j) * &factor;
                    *a.at_mut(r, j) -= av;
                    let iv = inv.at(col, j) * &factor;
                    *inv.at_mut(r, j) -= iv;
                }
            }
        }
        Ok(inv)
    }

    /// Exact integer power (negative exponents via the inverse).
    pub fn pow(&self, e: i64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of non-square".into()));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = RatMat::identity(self.rows);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("det of non-square".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a.at(r, col).is_zero()) {
                Some(p) => p,
                None => return Ok(Rat::zero()),
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                }
                det = -det;
            }
            let p = a.at(col, col).clone();
            det *= &p;
            for r in col + 1..n {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col) / &p;
                for j in col..n {
                    let v = a.at(col, j) * &factor;
                    *a.at_mut(r, j) -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let (reduced, pivots) = row_echelon(self);
        let _ = reduced;
        pivots.len()
    }

    /// Basis of the right null space, each vector scaled to primitive integer
    /// entries with positive first nonzero entry. Deterministic order (free
    /// columns ascending).
    pub fn kernel(&self) -> Vec<RatVec> {
        let (reduced, pivots) = row_echelon(self);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = RatVec::zeros(self.cols);
            v.entries[free] = Rat::one();
            for &(r, c) in &pivots {
                // reduced row r: x_c + sum_{j>c, j free-ish} a_j x_j = 0
                let coeff = reduced.at(r, free).clone();
                if !coeff.is_zero() {
                    v.entries[c] = -coeff / reduced.at(r, c);
                }
            }
            basis.push(v.primitive());
        }
        basis
    }

    /// Solve self * X = rhs where self has full column rank.
    /// Returns `None` when the system is inconsistent.
    pub fn solve_exact(&self, rhs: &RatMat) -> Option<RatMat> {
        assert_eq!(self.rows, rhs.rows);
        // Eliminate on the augmented matrix [self | rhs].
        let mut aug = RatMat::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..rhs.cols {
                *aug.at_mut(i, self.cols + j) = rhs.at(i, j).clone();
            }
        }
        let (red, pivots) = row_echelon(&aug);
        // Any pivot inside the rhs block means inconsistency.
        if pivots.iter().any(|&(_, c)| c >= self.cols) {
            return None;
        }
        if pivots.len() < self.cols {
            // Not full column rank; callers guarantee this does not happen.
            return None;
        }
        let mut x = RatMat::zeros(self.cols, rhs.cols);
        for &(r, c) in &pivots {
            for j in 0..rhs.cols {
                *x.at_mut(c, j) = (red.at(r, self.cols + j) / red.at(r, c)).clone();
            }
        }
        Some(x)
    }
}

/// Fraction-free (Bareiss) row reduction followed by back-substitution to
/// reduced form. Returns the reduced matrix and the pivot positions
/// (row, col), rows in order.
fn row_echelon(m: &RatMat) -> (RatMat, Vec<(usize, usize)>) {
    // Clear denominators row by row so the Bareiss step stays integral.
    let mut a = m.clone();
    for i in 0..a.rows {
        let mut lcm = BigInt::one();
        for j in 0..a.cols {
            lcm = num_integer::lcm(lcm, a.at(i, j).denom().clone());
        }
        if !lcm.is_one() {
            let s = Rat::from_integer(lcm);
            for j in 0..a.cols {
                *a.at_mut(i, j) *= &s;
            }
        }
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = Rat::one();
    let mut row = 0;
    for col in 0..a.cols {
        if row >= a.rows {
            break;
        }
        let pivot = match (row..a.rows).find(|&r| !a.at(r, col).is_zero()) {
            Some(p) => p,
            None => continue,
        };
        if pivot != row {
            for j in 0..a.cols {
                let tmp = a.at(pivot, j).clone();
                *a.at_mut(pivot, j) = a.at(row, j).clone();
                *a.at_mut(row, j) = tmp;
            }
        }
        let p = a.at(row, col).clone();
        for r in row + 1..a.rows {
            // Bareiss: a[r][j] <- (p*a[r][j] - a[r][col]*a[row][j]) / prev
            let f = a.at(r, col).clone();
            for j in 0..a.cols {
                let v = (&p * a.at(r, j) - &f * a.at(row, j)) / &prev;
                *a.at_mut(r, j) = v;
            }
        }
        prev = p;
        pivots.push((row, col));
        row += 1;
    }
    // Back-substitute to reduced row echelon (rational normalization at the
    // end, per the fraction-free design).
    for idx in (0..pivots.len()).rev() {
        let (r, c) = pivots[idx];
        let p = a.at(r, c).clone();
        for &(r2, _) in &pivots[..idx] {
            let f = (a.at(r2, c) / &p).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..a.cols {
                let v = a.at(r, j) * &f;
                *a.at_mut(r2, j) -= v;
            }
        }
    }
    (a, pivots)
}

impl fmt::Display for RatMat {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = (0..self.cols)
                .map(|j| rat_to_string(self.at(i, j)))
                .collect();
            writeln!(out, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Serialize a matrix as row-major nested arrays of `p/q` strings.
pub fn mat_to_json(m: &RatMat) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows)
            .map(|i| {
                serde_json::Value::Array(
                    (0..m.cols)
                        .map(|j| serde_json::Value::String(rat_to_string(m.at(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// N = log(u) = sum_{i>=1} (-1)^(i+1) (u-I)^i / i, a finite sum for
/// unipotent u, with exp(N) = u exactly.
pub fn nilpotent_log(u: &RatMat) -> Result<RatMat> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch("log of non-square".into()));
    }
    let n = u.rows;
    let d = u.sub(&RatMat::identity(n));
    // Check nilpotency first: d^n must vanish.
    let mut power = d.clone();
    let mut nilpotent = power.is_zero();
    for _ in 1..n {
        if nilpotent {
            break;
        }
        power = power.mul(&d)?;
        nilpotent = power.is_zero();
    }
    if !nilpotent {
        return Err(Error::NotUnipotent);
    }
    let mut log = RatMat::zeros(n, n);
    let mut term = RatMat::identity(n);
    for i in 1..=n {
        term = term.mul(&d)?;
        if term.is_zero() {
            break;
        }
        let sign = if i % 2 == 1 { Rat::one() } else { -Rat::one() };
        log = log.add(&term.scale(&(sign / rat_int(i as i64))));
    }
    Ok(log)
}

/// exp of a nilpotent matrix (finite sum). Companion to `nilpotent_log`.
pub fn nilpotent_exp(n_mat: &RatMat) -> Result<RatMat> {
    if !n_mat.is_square() {
        return Err(Error::DimensionMismatch("exp of non-square".into()));
    }
    let n = n_mat.rows;
    let mut acc = RatMat::identity(n);
    let mut term = RatMat::identity(n);
    let mut factorial = Rat::one();
    for i in 1..=n {
        term = term.mul(n_mat)?;
        if term.is_zero() {
            break;
        }
        factorial *= rat_int(i as i64);
        acc = acc.add(&term.scale(&(Rat::one() / &factorial)));
    }
    Ok(acc)
}

/// Dimension of the smallest subspace of n x n matrices containing `gens`
/// and closed under the bracket [a,b] = ab - ba.
pub fn lie_closure_dim(gens: &[RatMat]) -> Result<usize> {
    if gens.is_empty() {
        return Ok(0);
    }
    let n = gens[0].rows;
    for g in gens {
        if g.rows != n || g.cols != n {
            return Err(Error::DimensionMismatch("mixed sizes in closure".into()));
        }
    }
    // Maintain a row-space basis of vectorized matrices.
    let mut basis: Vec<RatMat> = Vec::new();
    let mut pending: Vec<RatMat> = gens.to_vec();
    while let Some(cand) = pending.pop() {
        if !in_span(&basis, &cand) {
            for b in &basis {
                let bracket = cand.mul(b)?.sub(&b.mul(&cand)?);
                pending.push(bracket);
            }
            basis.push(cand);
        }
    }
    Ok(basis.len())
}

fn in_span(basis: &[RatMat], cand: &RatMat) -> bool {
    if cand.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let n2 = cand.rows * cand.cols;
    let mut m = RatMat::zeros(n2, basis.len() + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..b.rows {
            for k in 0..b.cols {
                *m.at_mut(i * b.cols + k, j) = b.at(i, k).clone();
            }
        }
    }
    for i in 0..cand.rows {
        for k in 0..cand.cols {
            *m.at_mut(i * cand.cols + k, basis.len()) = cand.at(i, k).clone();
        }
    }
    // cand is in the span iff appending it does not raise the rank.
    let full = m.rank();
    let mut without = RatMat::zeros(n2, basis.len());
    for j in 0..basis.len() {
        for i in 0..n2 {
            *without.at_mut(i, j) = m.at(i, j).clone();
        }
    }
    full == without.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_power_negative() {
        let i = RatMat::identity(3);
        assert_eq!(i.pow(-5).unwrap(), i);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = RatMat::from_i64(&[
            &[0, 0, 0, -1],
            &[1, 0, 0, 4],
            &[0, 1, 0, -6],
            &[0, 0, 1, 4],
        ]);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn singular_inverse_fails() {
        let m = RatMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inv(), Err(Error::Singular));
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(RatMat::zeros(2, 2).kernel().len(), 2);
        assert!(RatMat::identity(3).kernel().is_empty());
    }

    #[test]
    fn kernel_vectors_are_exact_and_primitive() {
        let m = RatMat::from_i64(&[&[2, 4, 6], &[1, 2, 3]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().is_zero());
            assert!(v.is_integer());
            // first nonzero entry positive
            let first = v.entries.iter().find(|e| !e.is_zero()).unwrap();
            assert!(first.is_positive());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMat::identity(4).rank(), 4);
        assert_eq!(RatMat::zeros(3, 5).rank(), 0);
        let m = RatMat::from_i64(&[&[1, 2], &[2, 4], &[3, 6]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_restriction_system() {
        // B * X = rhs with B full column rank.
        let b = RatMat::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]);
        let rhs = RatMat::from_i64(&[&[2, 0], &[0, 3], &[2, 3]]);
        let x = b.solve_exact(&rhs).unwrap();
        assert_eq!(b.mul(&x).unwrap(), rhs);
        // Inconsistent system has no solution.
        let bad = RatMat::from_i64(&[&[2, 0], &[0, 3], &[0, 0]]);
        assert!(b.solve_exact(&bad).is_none());
    }

    #[test]
    fn log_examples() {
        let i = RatMat::identity(3);
        assert!(nilpotent_log(&i).unwrap().is_zero());

        let u = RatMat::from_i64(&[&[1, 1], &[0, 1]]);
        let want = RatMat::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(nilpotent_log(&u).unwrap(), want);

        let not_unipotent = RatMat::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(nilpotent_log(&not_unipotent), Err(Error::NotUnipotent));
    }

    #[test]
    fn exp_log_roundtrip() {
        // Upper triangular unipotent matrices up to size 5.
        for n in 2..=5usize {
            let mut u = RatMat::identity(n);
            for i in 0..n {
                for j in i + 1..n {
                    *u.at_mut(i, j) = rat_int(((i + 2 * j) % 5) as i64 - 2);
                }
            }
            let log = nilpotent_log(&u).unwrap();
            assert_eq!(nilpotent_exp(&log).unwrap(), u, "n={}", n);
        }
    }

    #[test]
    fn closure_examples() {
        assert_eq!(lie_closure_dim(&[]).unwrap(), 0);
        let e12 = RatMat::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(lie_closure_dim(&[e12.clone()]).unwrap(), 1);
        // e12, e21 bracket-generate all of sl2 + the identity direction h.
        let e21 = RatMat::from_i64(&[&[0, 0], &[1, 0]]);
        assert_eq!(lie_closure_dim(&[e12, e21]).unwrap(), 3);
    }

    #[test]
    fn closure_monotone() {
        let a = RatMat::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let b = RatMat::from_i64(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let one = lie_closure_dim(&[a.clone()]).unwrap();
        let two = lie_closure_dim(&[a, b]).unwrap();
        assert!(two >= one);
        assert!(two <= 9);
    }

    #[test]
    fn rational_serialization() {
        let r = Rat::new(BigInt::from(5), BigInt::from(3));
        assert_eq!(rat_to_string(&r), "5/3");
        assert_eq!(rat_from_str("5/3").unwrap(), r);
        assert_eq!(rat_to_string(&rat_int(7)), "7");
        assert_eq!(rat_from_str("7").unwrap(), rat_int(7));
        assert_eq!(rat_from_str("-4/6").unwrap(), Rat::new(BigInt::from(-2), BigInt::from(3)));
    }
}
