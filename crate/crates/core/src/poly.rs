//! Exact integer polynomial arithmetic, cyclotomic machinery, and the
//! hypothesis predicates on a pair (f, g).
//!
//! Polynomials are dense lists of arbitrary-precision integers in ascending
//! order (`coeffs[i]` multiplies X^i). The zero polynomial is the empty list;
//! otherwise the last stored coefficient is nonzero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// The monomial X.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; -1 (as `None`) for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Ascending coefficient slice (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    /// f(0).
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Smallest i with coeffs[i] != 0 (the valuation). None for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; panics if the division is not exact over Z.
    /// Used for cyclotomic construction where exactness is guaranteed.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        self.try_exact_div(divisor)
            .expect("exact_div: division was not exact")
    }

    /// Exact division over Z, or `None` if a fractional or nonzero remainder
    /// step occurs.
    pub fn try_exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = divisor.degree()?;
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % &lead) != BigInt::zero() {
                return None;
            }
            let q = &top / &lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// gcd of all coefficients (positive); zero polynomial has content 0.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = gcd_int(&g, c);
        }
        g
    }

    /// Divide out the content and force a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// X^n f(1/X) where n = deg f.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Evaluate at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl fmt::Display for IntPoly {
    /// Canonical text form, re-parseable by [`parse_poly`]:
    /// descending powers, explicit `*`, e.g. `X^4-4*X^3+6*X^2-4*X+1`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
                first = false;
            } else {
                write!(out, "{}", sign)?;
            }
            if i == 0 {
                write!(out, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(out, "{}*", mag)?;
                }
                if i == 1 {
                    write!(out, "X")?;
                } else {
                    write!(out, "X^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Euler totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// The m-th cyclotomic polynomial, by recursive division of X^m - 1.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic: m must be positive");
    if m == 1 {
        return IntPoly::from_i64(&[-1, 1]);
    }
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m as usize] = BigInt::one();
    let mut result = IntPoly::new(coeffs);
    for d in divisors(m) {
        if d == m {
            continue;
        }
        result = result.exact_div(&cyclotomic(d));
    }
    result
}

/// Primitive positive-leading gcd of f and g over Q, scaled back to Z.
pub fn poly_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() && g.is_zero() {
        return IntPoly::zero();
    }
    // Euclid on primitive parts with pseudo-division; sizes here are tiny so
    // coefficient growth is a non-issue.
    let mut a = f.primitive_part();
    let mut b = g.primitive_part();
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part()
}

/// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b, exact over Z.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("pseudo_rem: zero divisor");
    let mut r = a.clone();
    let lead = b.leading().unwrap().clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        // r <- lead(b) * r - lead(r) * X^(dr-db) * b
        let lr = r.leading().unwrap().clone();
        let mut shifted = vec![BigInt::zero(); dr - db];
        shifted.extend(b.coeffs().iter().cloned());
        let shifted = IntPoly::new(shifted);
        r = IntPoly::new(r.coeffs().iter().map(|c| c * &lead).collect())
            .sub(&IntPoly::new(shifted.coeffs().iter().map(|c| c * &lr).collect()));
    }
    r
}

/// X^n f(1/X) == f, i.e. the coefficient list is palindromic.
pub fn is_self_reciprocal(f: &IntPoly) -> bool {
    !f.is_zero() && f.reverse() == *f
}

/// All k in 2..=n such that both f and g lie in Z[X^k].
/// Empty set <=> the pair is primitive.
pub fn imprimitivity_set(f: &IntPoly, g: &IntPoly) -> Vec<usize> {
    let n = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => a.max(b),
        _ => return vec![],
    };
    let supported_only_on = |p: &IntPoly, k: usize| {
        p.coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % k == 0)
    };
    (2..=n)
        .filter(|&k| supported_only_on(f, k) && supported_only_on(g, k))
        .collect()
}

/// Multiset of m's with f = prod Phi_m, by trial division in increasing m.
pub fn cyclotomic_factorization(f: &IntPoly) -> Result<Vec<u64>> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotCyclotomicProduct);
    }
    let deg = f.degree().unwrap() as u64;
    let mut rem = f.clone();
    let mut factors = Vec::new();
    // phi(m) >= sqrt(m/2), so phi(m) <= deg forces m <= 2*deg^2.
    for m in 1..=(2 * deg * deg).max(1) {
        if euler_phi(m) > deg {
            continue;
        }
        let phi_m = cyclotomic(m);
        loop {
            match rem.try_exact_div(&phi_m) {
                Some(q) => {
                    factors.push(m);
                    rem = q;
                }
                None => break,
            }
            if rem.degree() == Some(0) {
                break;
            }
        }
    }
    if rem == IntPoly::one() {
        Ok(factors)
    } else {
        Err(Error::NotCyclotomicProduct)
    }
}

/// A root angle j/m in [0,1), stored in lowest terms.
pub type Angle = num_rational::Ratio<u64>;

/// The multiset of a in [0,1) with e^(2 pi i a) a root of f, sorted ascending.
/// Only defined for cyclotomic products.
pub fn root_angles(f: &IntPoly) -> Result<Vec<Angle>> {
    let factors = cyclotomic_factorization(f)?;
    let mut angles = Vec::new();
    for m in factors {
        if m == 1 {
            angles.push(Angle::new(0, 1));
        } else {
            for j in 1..m {
                if num_integer::gcd(j, m) == 1 {
                    angles.push(Angle::new(j, m));
                }
            }
        }
    }
    angles.sort();
    Ok(angles)
}

/// The data extracted from h = f - g: leading coefficient c, degree d,
/// valuation r, and k = n - d (= r by reciprocality).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    pub h: IntPoly,
    pub c: BigInt,
    pub d: usize,
    pub r: usize,
    pub k: usize,
}

/// Compute and validate the difference profile of an admissible pair.
pub fn difference_profile(f: &IntPoly, g: &IntPoly) -> Result<DifferenceProfile> {
    let h = f.sub(g);
    if h.is_zero() {
        return Err(Error::ZeroDifference);
    }
    let n = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) if a == b && a >= 2 => a,
        _ => {
            return Err(Error::HypothesisViolation(
                "f and g must have equal degree >= 2".into(),
            ))
        }
    };
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::HypothesisViolation("f and g must be monic".into()));
    }
    if !f.constant_term().is_one() || !g.constant_term().is_one() {
        return Err(Error::HypothesisViolation("f(0) and g(0) must be 1".into()));
    }
    if !is_self_reciprocal(f) || !is_self_reciprocal(g) {
        return Err(Error::HypothesisViolation(
            "f and g must be self-reciprocal".into(),
        ));
    }
    let d = h.degree().unwrap();
    let r = h.valuation().unwrap();
    let c = h.leading().unwrap().clone();
    if r + d != n || r < 1 || d > n - 1 {
        return Err(Error::HypothesisViolation(format!(
            "difference not reciprocal: r={} d={} n={}",
            r, d, n
        )));
    }
    // h itself is anti-palindromic-free: c_j = c_{n-j} for all j.
    for j in 0..=n {
        if h.coeff(j) != h.coeff(n - j) {
            return Err(Error::HypothesisViolation(
                "difference coefficients are not symmetric".into(),
            ));
        }
    }
    let k = n - d;
    debug_assert_eq!(k, r);
    debug_assert_eq!(h.coeff(k), c);
    Ok(DifferenceProfile { h, c, d, r, k })
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parse polynomial text.
///
/// Grammar:
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor ('*'? factor)*          -- '*' optional (e.g. "4X^3")
/// factor := base ('^' uint)?
/// base   := '(' expr ')' | 'Phi' uint | 'X' | 'x' | uint
/// ```
/// plus the alternative list form `coeffs:[c0,c1,...,cn]` (ascending).
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("coeffs:") {
        return parse_coeff_list(rest, text);
    }
    let mut p = Parser {
        src: trimmed.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

fn parse_coeff_list(rest: &str, full: &str) -> Result<IntPoly> {
    let inner = rest
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse {
            pos: full.find(':').map_or(0, |i| i + 1),
            msg: "expected [c0,c1,...]".into(),
        })?;
    let mut coeffs = Vec::new();
    if !inner.trim().is_empty() {
        for piece in inner.split(',') {
            let c: BigInt = piece.trim().parse().map_err(|_| Error::Parse {
                pos: full.find(piece.trim()).unwrap_or(0),
                msg: format!("bad integer `{}`", piece.trim()),
            })?;
            coeffs.push(c);
        }
    }
    Ok(IntPoly::new(coeffs))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let mut negate = false;
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
            }
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                // implicit multiplication: "4X", "2(X+1)", "X Phi3"
                Some(c)
                    if c == b'(' || c == b'X' || c == b'x' || c == b'P' || c.is_ascii_digit() =>
                {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<IntPoly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            if e > 64 {
                return Err(self.err("exponent too large"));
            }
            Ok(base.pow(e as u32))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'X') | Some(b'x') => {
                self.pos += 1;
                Ok(IntPoly::x())
            }
            Some(b'P') => {
                let rest = &self.src[self.pos..];
                if rest.starts_with(b"Phi") {
                    self.pos += 3;
                    let m = self.uint_nows()?;
                    if m == 0 || m > 1000 {
                        return Err(self.err("Phi index out of range"));
                    }
                    Ok(cyclotomic(m))
                } else {
                    Err(self.err("expected `Phi`"))
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                Ok(IntPoly::constant(BigInt::from(v)))
            }
            _ => Err(self.err("expected `(`, `Phi`, `X`, or an integer")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        self.uint_nows()
    }

    fn uint_nows(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an unsigned integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}
