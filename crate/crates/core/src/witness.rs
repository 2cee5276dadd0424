//! Word evaluation over the group generators, the flag-adapted basis,
//! unipotent-radical membership, root-group and Lie-closure certificates,
//! relation verification, and the bounded witness search.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::classify::TransvectionTriple;
use crate::error::{Error, Result};
use crate::linalg::{lie_closure_dim, nilpotent_log, Rat, RatMat, RatVec};
use crate::monodromy::form_apply;

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// A word in named generators, with grouping and first-class commutators
/// [a,b] = a b a^-1 b^-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// A named generator raised to a nonzero power.
    Sym(String, i64),
    /// A parenthesized word raised to a power.
    Group(Box<Word>, i64),
    /// Commutator of two words.
    Commutator(Box<Word>, Box<Word>),
}

impl Word {
    pub fn empty() -> Self {
        Word { atoms: vec![] }
    }

    pub fn sym(name: &str, exp: i64) -> Self {
        Word {
            atoms: vec![Atom::Sym(name.into(), exp)],
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for atom in &self.atoms {
            if !first {
                write!(out, " ")?;
            }
            first = false;
            match atom {
                Atom::Sym(name, exp) => {
                    if *exp == 1 {
                        write!(out, "{}", name)?;
                    } else {
                        write!(out, "{}^{}", name, exp)?;
                    }
                }
                Atom::Group(w, exp) => {
                    if *exp == 1 {
                        write!(out, "({})", w)?;
                    } else {
                        write!(out, "({})^{}", w, exp)?;
                    }
                }
                Atom::Commutator(a, b) => write!(out, "[{},{}]", a, b)?,
            }
        }
        Ok(())
    }
}

/// Parse word text.
///
/// Grammar:
/// ```text
/// word := atom+
/// atom := sym('^' int)? | '[' word ',' word ']' | '(' word ')'('^' int)?
/// sym  := identifier (A, B, or a bound name)
/// ```
/// `*` between atoms is accepted and ignored.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = WordParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: "unexpected trailing input in word".into(),
        });
    }
    if w.atoms.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty word".into(),
        });
    }
    Ok(w)
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> WordParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b'*')
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word> {
        let mut atoms = Vec::new();
        loop {
            match self.peek() {
                Some(b'[') => {
                    self.pos += 1;
                    let a = self.word()?;
                    if self.peek() != Some(b',') {
                        return Err(self.err("expected `,` in commutator"));
                    }
                    self.pos += 1;
                    let b = self.word()?;
                    if self.peek() != Some(b']') {
                        return Err(self.err("expected `]`"));
                    }
                    self.pos += 1;
                    atoms.push(Atom::Commutator(Box::new(a), Box::new(b)));
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.word()?;
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected `)`"));
                    }
                    self.pos += 1;
                    let exp = self.maybe_exponent()?;
                    atoms.push(Atom::Group(Box::new(inner), exp));
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric()
                            || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos])
                        .unwrap()
                        .to_string();
                    let exp = self.maybe_exponent()?;
                    atoms.push(Atom::Sym(name, exp));
                }
                _ => break,
            }
        }
        Ok(Word { atoms })
    }

    fn maybe_exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let mut sign = 1i64;
        if self.src.get(self.pos) == Some(&b'-') {
            sign = -1;
            self.pos += 1;
        } else if self.src.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer exponent"));
        }
        let mag: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("exponent out of range"))?;
        if mag == 0 {
            return Err(self.err("zero exponent not allowed"));
        }
        Ok(sign * mag)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }
}

/// Evaluate a word in an environment binding names to matrices.
pub fn eval_word(word: &Word, env: &HashMap<String, RatMat>) -> Result<RatMat> {
    let n = env
        .values()
        .next()
        .map(|m| m.rows)
        .ok_or_else(|| Error::UnboundSymbol("<empty environment>".into()))?;
    let mut acc = RatMat::identity(n);
    for atom in &word.atoms {
        let part = match atom {
            Atom::Sym(name, exp) => {
                let m = env
                    .get(name)
                    .ok_or_else(|| Error::UnboundSymbol(name.clone()))?;
                m.pow(*exp)?
            }
            Atom::Group(w, exp) => eval_word(w, env)?.pow(*exp)?,
            Atom::Commutator(a, b) => {
                let ma = eval_word(a, env)?;
                let mb = eval_word(b, env)?;
                ma.mul(&mb)?.mul(&ma.inv()?)?.mul(&mb.inv()?)?
            }
        };
        acc = acc.mul(&part)?;
    }
    Ok(acc)
}

/// Resolve a sequence of `NAME=word` bindings on top of a base environment.
/// Later bindings may reference earlier names (acyclic by construction).
pub fn resolve_bindings(
    base: &HashMap<String, RatMat>,
    bindings: &[(String, String)],
) -> Result<HashMap<String, RatMat>> {
    let mut env = base.clone();
    for (name, text) in bindings {
        let word = parse_word(text)?;
        let m = eval_word(&word, &env)?;
        env.insert(name.clone(), m);
    }
    Ok(env)
}

/// True iff the word evaluates to the identity, exactly.
pub fn verify_relation(word: &Word, env: &HashMap<String, RatMat>) -> Result<bool> {
    Ok(eval_word(word, env)?.is_identity())
}

// ---------------------------------------------------------------------------
// Flag basis
// ---------------------------------------------------------------------------

/// The ordered basis adapted to the flag Q e < W < e-perp:
/// eps_1 = e, eps_2 = w1, ..., eps*_2 = w2, eps*_1 = e*, with any remaining
/// directions completed to a symplectic basis of the orthogonal complement.
#[derive(Debug, Clone)]
pub struct FlagBasis {
    /// Basis vectors in order eps_1 .. eps_{n/2}, eps*_{n/2} .. eps*_1.
    pub basis: Vec<RatVec>,
    /// Omega(e, e*).
    pub lambda1: Rat,
    /// Omega(w1, w2).
    pub lambda2: Rat,
    /// Columns are the basis vectors.
    pub change_of_basis: RatMat,
    /// Cached inverse of `change_of_basis`.
    change_of_basis_inv: RatMat,
}

impl FlagBasis {
    pub fn n(&self) -> usize {
        self.basis.len()
    }

    /// Build a flag from an explicitly given ordered basis
    /// (eps_1, eps_2, ..., eps*_2, eps*_1); lambda1 = Omega(eps_1, eps*_1)
    /// and lambda2 = Omega(eps_2, eps*_2) must be nonzero.
    pub fn from_basis(basis: Vec<RatVec>, omega: &RatMat) -> Result<FlagBasis> {
        let n = basis.len();
        if n < 4 || n % 2 != 0 || n != omega.rows {
            return Err(Error::DimensionMismatch(
                "flag basis needs an even number >= 4 of vectors".into(),
            ));
        }
        let change_of_basis = RatMat::from_cols(&basis);
        if change_of_basis.rank() != n {
            return Err(Error::DegenerateFlag("vectors are dependent".into()));
        }
        let lambda1 = form_apply(omega, &basis[0], &basis[n - 1]);
        let lambda2 = form_apply(omega, &basis[1], &basis[n - 2]);
        if lambda1.is_zero() || lambda2.is_zero() {
            return Err(Error::DegenerateFlag(
                "flag pairings lambda1, lambda2 must be nonzero".into(),
            ));
        }
        let change_of_basis_inv = change_of_basis.inv()?;
        Ok(FlagBasis {
            basis,
            lambda1,
            lambda2,
            change_of_basis,
            change_of_basis_inv,
        })
    }

    /// Transform an ambient matrix into flag coordinates.
    pub fn to_flag_coords(&self, m: &RatMat) -> Result<RatMat> {
        self.change_of_basis_inv.mul(m)?.mul(&self.change_of_basis)
    }
}

/// Build the flag basis for a transvection triple.
///
/// * e spans the null space of Omega restricted to W = span(w1,w2,w3),
///   scaled to primitive integer entries with positive first nonzero entry.
/// * e* is the first kernel-basis vector of {Omega(x,w1) = Omega(x,w2) = 0}
///   that is independent of e, with its sign flipped if necessary so that
///   lambda1 = Omega(e,e*) has the same sign as lambda2 = Omega(w1,w2).
/// * The orthogonal complement of span(e,w1,w2,e*) is completed to a
///   symplectic basis (empty when n = 4).
pub fn flag_basis(triple: &TransvectionTriple, omega: &RatMat) -> Result<FlagBasis> {
    let n = omega.rows;
    let (w1, w2, w3) = (&triple.w1, &triple.w2, &triple.w3);
    let w_mat = RatMat::from_cols(&[w1.clone(), w2.clone(), w3.clone()]);
    let gram = w_mat.transpose().mul(omega)?.mul(&w_mat)?;
    let gram_kernel = gram.kernel();
    if gram_kernel.len() != 1 {
        return Err(Error::DegenerateFlag(format!(
            "Omega|W has a {}-dimensional radical",
            gram_kernel.len()
        )));
    }
    let e = w_mat.mul_vec(&gram_kernel[0])?.primitive();
    let lambda2 = form_apply(omega, w1, w2);
    if lambda2.is_zero() {
        return Err(Error::DegenerateFlag("Omega(w1,w2) = 0".into()));
    }

    // Null space of the two linear constraints Omega(x,w1) = Omega(x,w2) = 0.
    let mut constraints = RatMat::zeros(2, n);
    for (row, w) in [(0usize, w1), (1usize, w2)] {
        let col = omega.mul_vec(w)?;
        for j in 0..n {
            *constraints.at_mut(row, j) = col.entries[j].clone();
        }
    }
    let candidates = constraints.kernel();
    let mut e_star = None;
    for cand in &candidates {
        let pair = RatMat::from_cols(&[e.clone(), cand.clone()]);
        if pair.rank() == 2 {
            let l1 = form_apply(omega, &e, cand);
            if !l1.is_zero() {
                e_star = Some(if l1.is_positive() == lambda2.is_positive() {
                    cand.clone()
                } else {
                    cand.neg()
                });
                break;
            }
        }
    }
    let e_star = e_star.ok_or_else(|| {
        Error::DegenerateFlag("no candidate for e* pairs nondegenerately with e".into())
    })?;
    let lambda1 = form_apply(omega, &e, &e_star);

    // Complete the orthogonal complement of span(e, w1, w2, e*) with
    // symplectic pairs (u, u*) normalized to Omega(u, u*) = 1.
    let mut extra: Vec<(RatVec, RatVec)> = Vec::new();
    let mut fixed = vec![e.clone(), w1.clone(), w2.clone(), e_star.clone()];
    while 4 + 2 * extra.len() < n {
        let mut cons = RatMat::zeros(fixed.len(), n);
        for (row, b) in fixed.iter().enumerate() {
            let col = omega.mul_vec(b)?;
            for j in 0..n {
                *cons.at_mut(row, j) = col.entries[j].clone();
            }
        }
        let complement = cons.kernel();
        let u = complement
            .first()
            .ok_or_else(|| Error::DegenerateFlag("orthogonal complement exhausted".into()))?
            .clone();
        let u_star = complement
            .iter()
            .find(|cand| !form_apply(omega, &u, cand).is_zero())
            .ok_or_else(|| {
                Error::DegenerateFlag("complement is degenerate for Omega".into())
            })?
            .clone();
        let pairing = form_apply(omega, &u, &u_star);
        let u_star = u_star.scale(&(Rat::one() / pairing));
        fixed.push(u.clone());
        fixed.push(u_star.clone());
        extra.push((u, u_star));
    }
    // Order: eps_1 = e, eps_2 = w1, eps_3.. = extras; then the starred side
    // mirrored: ..eps*_3 = starred extras reversed, eps*_2 = w2, eps*_1 = e*.
    let mut basis = vec![e.clone(), w1.clone()];
    basis.extend(extra.iter().map(|(u, _)| u.clone()));
    basis.extend(extra.iter().rev().map(|(_, us)| us.clone()));
    basis.push(w2.clone());
    basis.push(e_star.clone());
    let change_of_basis = RatMat::from_cols(&basis);
    if change_of_basis.rank() != n {
        return Err(Error::DegenerateFlag("flag basis is not a basis".into()));
    }
    let change_of_basis_inv = change_of_basis.inv()?;
    Ok(FlagBasis {
        basis,
        lambda1,
        lambda2,
        change_of_basis,
        change_of_basis_inv,
    })
}

// ---------------------------------------------------------------------------
// Unipotent radical membership
// ---------------------------------------------------------------------------

/// True iff M lies in the unipotent radical of the parabolic stabilizing the
/// flag Q e < W: M fixes e, (M-1)W lies in Q e, every other basis direction
/// is fixed, and the last flag column moves only into W.
///
/// In flag coordinates this is the pattern (n = 4 shown):
/// ```text
/// [1 a b c]
/// [0 1 0 *]
/// [0 0 1 *]
/// [0 0 0 1]
/// ```
/// with the symplectic conditions tying the starred entries to a and b.
pub fn in_unipotent_radical(m: &RatMat, flag: &FlagBasis) -> bool {
    match flag.to_flag_coords(m) {
        Ok(mf) => radical_shape(&mf),
        Err(_) => false,
    }
}

/// The same predicate on a matrix already in flag coordinates.
fn radical_shape(mf: &RatMat) -> bool {
    let n = mf.rows;
    // Column classes: 0 = eps_1 (must be fixed exactly); 1..n-1 except the
    // last = may move by a multiple of eps_1 only; n-1 = eps*_1, may move
    // into W' = span of everything except eps*_1.
    for j in 0..n {
        for i in 0..n {
            let entry = mf.at(i, j);
            let want_diag = i == j;
            if want_diag {
                if !entry.is_one() {
                    return false;
                }
                continue;
            }
            let allowed = if j == 0 {
                false
            } else if j == n - 1 {
                // eps*_1 column: anything inside the complement of eps*_1.
                i != n - 1
            } else if j == 1 || j == n - 2 {
                // W-columns (w1, w2): only an eps_1 component.
                i == 0
            } else {
                // interior symplectic-completion directions must be fixed...
                // except for the coupling into eps_1 allowed for the middle
                // block of the radical; keep these strict (identity).
                false
            };
            if !allowed && !entry.is_zero() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    UnipotentRadical,
    RootGroupPair,
    LieClosure,
}

/// Machine-recheckable evidence: a word whose evaluation has a prescribed
/// unipotent shape relative to the flag.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub witness_word: Word,
    pub witness_matrix: RatMat,
    pub kind: CertificateKind,
    /// Additional (word, matrix) pairs backing the certificate
    /// (the generator set for `LieClosure`).
    pub supporting: Vec<(Word, RatMat)>,
}

/// Extract an element with the root-group shape
/// ```text
/// [1 0 y2 z ]
/// [0 1 0  (lambda1/lambda2) y2]
/// [0 0 1  0]
/// [0 0 0  1]
/// ```
/// on the (eps_1, eps_2, eps*_2, eps*_1) block, with (y2, z) != (0, 0).
pub fn rootgroup_witnesses(
    candidates: &[(Word, RatMat)],
    flag: &FlagBasis,
) -> Result<Certificate> {
    for (word, m) in candidates {
        if let Some((_y2, _z)) = rootgroup_shape(m, flag)? {
            return Ok(Certificate {
                witness_word: word.clone(),
                witness_matrix: m.clone(),
                kind: CertificateKind::RootGroupPair,
                supporting: vec![],
            });
        }
    }
    Err(Error::ShapeMismatch(
        "no candidate matches the root-group shape".into(),
    ))
}

/// (y2, z) if the matrix has the root-group shape, `None` otherwise.
pub fn rootgroup_shape(m: &RatMat, flag: &FlagBasis) -> Result<Option<(Rat, Rat)>> {
    let n = flag.n();
    let mf = flag.to_flag_coords(m)?;
    // Indices of the distinguished 4-block.
    let (i1, i2, i2s, i1s) = (0, 1, n - 2, n - 1);
    // Everything must be identity except entries (i1, i2s), (i1, i1s),
    // (i2, i1s).
    for i in 0..n {
        for j in 0..n {
            let entry = mf.at(i, j);
            if i == j {
                if !entry.is_one() {
                    return Ok(None);
                }
            } else if (i, j) != (i1, i2s) && (i, j) != (i1, i1s) && (i, j) != (i2, i1s) {
                if !entry.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    let y2 = mf.at(i1, i2s).clone();
    let z = mf.at(i1, i1s).clone();
    let tied = mf.at(i2, i1s).clone();
    // Root-group shape identity: entry(2,4) = (lambda1/lambda2) entry(1,3).
    if tied != &y2 * &flag.lambda1 / &flag.lambda2 {
        return Ok(None);
    }
    if y2.is_zero() && z.is_zero() {
        return Ok(None);
    }
    Ok(Some((y2, z)))
}

/// LieClosure certificate: the generators are unipotent upper-triangular in
/// flag coordinates and the bracket closure of their logarithms has the full
/// dimension (n/2)^2 of the unipotent radical of the Borel of Sp_n.
pub fn finite_index_in_borel_unipotent(
    gens: &[(Word, RatMat)],
    flag: &FlagBasis,
) -> Result<Certificate> {
    if gens.is_empty() {
        return Err(Error::InsufficientClosure(0));
    }
    let n = flag.n();
    let mut logs = Vec::new();
    for (_, g) in gens {
        let gf = flag.to_flag_coords(g)?;
        // upper unitriangular in flag coordinates
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    if !gf.at(i, j).is_one() {
                        return Err(Error::ShapeMismatch(
                            "generator is not unipotent upper-triangular in flag coordinates"
                                .into(),
                        ));
                    }
                } else if i > j && !gf.at(i, j).is_zero() {
                    return Err(Error::ShapeMismatch(
                        "generator is not upper-triangular in flag coordinates".into(),
                    ));
                }
            }
        }
        logs.push(nilpotent_log(&gf)?);
    }
    let dim = lie_closure_dim(&logs)?;
    let want = (n / 2) * (n / 2);
    if dim != want {
        return Err(Error::InsufficientClosure(dim));
    }
    Ok(Certificate {
        witness_word: gens[0].0.clone(),
        witness_matrix: gens[0].1.clone(),
        kind: CertificateKind::LieClosure,
        supporting: gens.to_vec(),
    })
}

// ---------------------------------------------------------------------------
// Bounded witness search
// ---------------------------------------------------------------------------

/// Outcome of the bounded search: a value, never an error.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Certificate),
    Exhausted,
}

/// Deterministic BFS over words of length <= depth in C1^{±1}, C2^{±1},
/// C3^{±1} (free-reduced, deduplicated by matrix) for a nonidentity element
/// of the unipotent radical; commutators of visited words are tried as a
/// refinement if the plain search exhausts. Shortest witness wins, with ties
/// broken by generator order C1 < C1^-1 < C2 < C2^-1 < C3 < C3^-1.
pub fn find_unipotent_witness(
    env: &HashMap<String, RatMat>,
    flag: &FlagBasis,
    depth: usize,
) -> Result<SearchOutcome> {
    // Work in flag coordinates throughout: the membership test becomes a
    // plain entry check, and only the final witness is mapped back.
    let gens = ["C1", "C2", "C3"];
    let mut letters: Vec<(String, i64, RatMat)> = Vec::new();
    for g in gens {
        let m = env
            .get(g)
            .ok_or_else(|| Error::UnboundSymbol(g.to_string()))?;
        let mf = flag.to_flag_coords(m)?;
        letters.push((g.to_string(), 1, mf.clone()));
        letters.push((g.to_string(), -1, mf.inv()?));
    }
    let n = letters[0].2.rows;
    let identity = RatMat::identity(n);
    let ambient = |word: &[usize]| -> Result<RatMat> {
        let mut acc = RatMat::identity(n);
        for &idx in word {
            let (name, sign, _) = &letters[idx];
            acc = acc.mul(&env[name].pow(*sign)?)?;
        }
        Ok(acc)
    };

    let mut seen: std::collections::HashSet<RatMat> = std::collections::HashSet::new();
    seen.insert(identity.clone());
    // (matrix in flag coordinates, letter indices)
    let mut frontier: Vec<(RatMat, Vec<usize>)> = vec![(identity, vec![])];
    let mut visited: Vec<(RatMat, Vec<usize>)> = Vec::new();

    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, word) in &frontier {
            for (idx, (_, _, gm)) in letters.iter().enumerate() {
                // free reduction: do not append the inverse of the last letter
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
                if radical_shape(&m2) && !m2.is_identity() {
                    return Ok(SearchOutcome::Found(Certificate {
                        witness_matrix: ambient(&w2)?,
                        witness_word: letters_to_word(&letters, &w2),
                        kind: CertificateKind::UnipotentRadical,
                        supporting: vec![],
                    }));
                }
                next.push((m2, w2));
            }
        }
        visited.extend(frontier);
        frontier = next;
    }
    visited.extend(frontier);

    // Commutator refinement: ordered pairs of short visited words, with
    // inverses computed once up front.
    let shortlist: Vec<(RatMat, RatMat, Vec<usize>)> = visited
        .iter()
        .filter(|(_, w)| !w.is_empty())
        .take(200)
        .map(|(m, w)| -> Result<(RatMat, RatMat, Vec<usize>)> {
            Ok((m.clone(), m.inv()?, w.clone()))
        })
        .collect::<Result<_>>()?;
    for (ma, ma_inv, wa) in &shortlist {
        for (mb, mb_inv, wb) in &shortlist {
            let comm = ma.mul(mb)?.mul(ma_inv)?.mul(mb_inv)?;
            if !comm.is_identity() && radical_shape(&comm) {
                let word = Word {
                    atoms: vec![Atom::Commutator(
                        Box::new(letters_to_word(&letters, wa)),
                        Box::new(letters_to_word(&letters, wb)),
                    )],
                };
                let mut ab = ambient(wa)?;
                let bb = ambient(wb)?;
                ab = ab.mul(&bb)?.mul(&ambient(wa)?.inv()?)?.mul(&bb.inv()?)?;
                return Ok(SearchOutcome::Found(Certificate {
                    witness_word: word,
                    witness_matrix: ab,
                    kind: CertificateKind::UnipotentRadical,
                    supporting: vec![],
                }));
            }
        }
    }
    Ok(SearchOutcome::Exhausted)
}

/// Collapse a letter-index sequence into a Word with merged exponents.
fn letters_to_word(letters: &[(String, i64, RatMat)], indices: &[usize]) -> Word {
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
    Word { atoms }
}
