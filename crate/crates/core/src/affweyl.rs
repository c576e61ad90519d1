//! Arithmetic in the extended affine Weyl group `X ⋊ W₀`.
//!
//! An element `t^λ u` is stored as the affine map `x ↦ u(x) + λ` on the
//! coweight lattice: an integer matrix for `u`, its inverse, and the
//! translation vector. Lengths and descents are read off from the image of a
//! fixed interior point of the base alcove, so no words are needed for any
//! basic operation.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::rootdata::{DiagramAuto, NodeSet, RootDatum};

/// Largest lattice dimension supported (GL₈ or rank-8 adjoint data).
pub const MAX_DIM: usize = 8;

/// Integer coordinate vector in the coweight lattice.
pub type Coord = [i32; MAX_DIM];

pub(crate) type Mat = [i8; MAX_DIM * MAX_DIM];

pub(crate) const IDENTITY_MAT: Mat = {
    let mut m = [0i8; MAX_DIM * MAX_DIM];
    let mut i = 0;
    while i < MAX_DIM {
        m[i * MAX_DIM + i] = 1;
        i += 1;
    }
    m
};

/// Normal form `(λ, u)` of an element `t^λ u`.
#[derive(Clone, Copy)]
pub struct AffElement {
    pub(crate) lin: Mat,
    pub(crate) inv: Mat,
    pub(crate) trans: Coord,
}

impl PartialEq for AffElement {
    fn eq(&self, other: &Self) -> bool {
        self.trans == other.trans && self.lin == other.lin
    }
}
impl Eq for AffElement {}

impl Hash for AffElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trans.hash(state);
        self.lin.hash(state);
    }
}

impl PartialOrd for AffElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for AffElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.trans, self.lin).cmp(&(other.trans, other.lin))
    }
}

impl fmt::Debug for AffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffElement(t={:?}, u=", self.trans)?;
        let rows: Vec<Vec<i8>> = (0..MAX_DIM)
            .map(|i| self.lin[i * MAX_DIM..(i + 1) * MAX_DIM].to_vec())
            .collect();
        write!(f, "{rows:?})")
    }
}

impl AffElement {
    pub const IDENTITY: AffElement = AffElement {
        lin: IDENTITY_MAT,
        inv: IDENTITY_MAT,
        trans: [0; MAX_DIM],
    };

    /// Pure translation `t^λ`.
    pub fn translation(lambda: Coord) -> Self {
        AffElement {
            trans: lambda,
            ..Self::IDENTITY
        }
    }

    /// Translation part λ of `t^λ u`.
    pub fn translation_part(&self) -> &Coord {
        &self.trans
    }

    /// True when the finite part `u` is trivial.
    pub fn is_translation(&self) -> bool {
        self.lin == IDENTITY_MAT
    }

    pub(crate) fn from_parts(lin: Mat, inv: Mat, trans: Coord) -> Self {
        AffElement { lin, inv, trans }
    }

    /// Finite part as a `dim × dim` integer matrix.
    pub fn finite_matrix(&self, dim: usize) -> Vec<Vec<i32>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| self.lin[i * MAX_DIM + j] as i32).collect())
            .collect()
    }
}

#[inline]
pub(crate) fn mat_mul(a: &Mat, b: &Mat, d: usize) -> Mat {
    let mut out = IDENTITY_MAT;
    for i in 0..d {
        for j in 0..d {
            let mut s = 0i32;
            for k in 0..d {
                s += a[i * MAX_DIM + k] as i32 * b[k * MAX_DIM + j] as i32;
            }
            out[i * MAX_DIM + j] = s as i8;
        }
    }
    out
}

#[inline]
pub(crate) fn mat_vec(a: &Mat, v: &Coord, d: usize) -> Coord {
    let mut out = [0i32; MAX_DIM];
    for i in 0..d {
        let mut s = 0i32;
        for k in 0..d {
            s += a[i * MAX_DIM + k] as i32 * v[k];
        }
        out[i] = s;
    }
    out
}

#[inline]
pub(crate) fn dot(a: &Coord, b: &Coord, d: usize) -> i64 {
    let mut s = 0i64;
    for i in 0..d {
        s += a[i] as i64 * b[i] as i64;
    }
    s
}

/// One token of a word over `S̃ ∪ Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Simple affine reflection `s_i`.
    S(usize),
    /// Length-zero element `τ_k`.
    Tau(i64),
    /// The `τ` of the ambient quadruple.
    TauCtx,
}

/// Parsed word. Text syntax: whitespace separated `s3`, `tau`, `tau:k`,
/// the macro `s[a..b]` for `s_a s_{a-1} ⋯ s_b` (empty when `a < b`) and its
/// inverse `s[a..b]^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" || tok == "id" {
                continue;
            }
            if tok == "tau" {
                letters.push(Letter::TauCtx);
            } else if let Some(k) = tok.strip_prefix("tau:") {
                let k: i64 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad tau index in `{tok}`")))?;
                letters.push(Letter::Tau(k));
            } else if let Some(rest) = tok.strip_prefix("s[") {
                let (body, inverse) = match rest.strip_suffix("]^-1") {
                    Some(b) => (b, true),
                    None => (
                        rest.strip_suffix(']')
                            .ok_or_else(|| Error::Parse(format!("unterminated macro `{tok}`")))?,
                        false,
                    ),
                };
                let (a, b) = body
                    .split_once("..")
                    .ok_or_else(|| Error::Parse(format!("expected s[a..b], got `{tok}`")))?;
                let a: usize = a.parse().map_err(|_| Error::Parse(format!("bad index in `{tok}`")))?;
                let b: usize = b.parse().map_err(|_| Error::Parse(format!("bad index in `{tok}`")))?;
                let mut run: Vec<Letter> = if a >= b {
                    (b..=a).rev().map(Letter::S).collect()
                } else {
                    Vec::new()
                };
                if inverse {
                    run.reverse();
                }
                letters.extend(run);
            } else if let Some(i) = tok.strip_prefix('s') {
                let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad letter `{tok}`")))?;
                letters.push(Letter::S(i));
            } else {
                return Err(Error::Parse(format!("unknown token `{tok}`")));
            }
        }
        Ok(Word { letters })
    }

    /// Indices of the simple reflections, ignoring length-zero symbols.
    pub fn reflections(&self) -> Vec<usize> {
        self.letters
            .iter()
            .filter_map(|l| match l {
                Letter::S(i) => Some(*i),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::S(i) => format!("s{i}"),
                Letter::Tau(k) => format!("tau:{k}"),
                Letter::TauCtx => "tau".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Which side(s) a coset representative is minimized on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Double(NodeSet),
}

impl RootDatum {
    /// Simple affine reflection `s_i`, `i ∈ S̃`.
    pub fn gen(&self, i: usize) -> AffElement {
        self.gens[i]
    }

    pub fn multiply(&self, x: &AffElement, y: &AffElement) -> AffElement {
        let d = self.dim;
        let lin = mat_mul(&x.lin, &y.lin, d);
        let inv = mat_mul(&y.inv, &x.inv, d);
        let v = mat_vec(&x.lin, &y.trans, d);
        let mut trans = x.trans;
        for i in 0..d {
            trans[i] += v[i];
        }
        AffElement { lin, inv, trans }
    }

    pub fn inverse(&self, x: &AffElement) -> AffElement {
        let d = self.dim;
        let v = mat_vec(&x.inv, &x.trans, d);
        let mut trans = [0; MAX_DIM];
        for i in 0..d {
            trans[i] = -v[i];
        }
        AffElement {
            lin: x.inv,
            inv: x.lin,
            trans,
        }
    }

    /// `s_i · x`.
    pub fn left_mul_gen(&self, i: usize, x: &AffElement) -> AffElement {
        self.multiply(&self.gens[i], x)
    }

    /// `x · s_i`.
    pub fn right_mul_gen(&self, x: &AffElement, i: usize) -> AffElement {
        self.multiply(x, &self.gens[i])
    }

    /// `x(P)` scaled by the base-point denominator.
    #[inline]
    fn image_of_base_point(&self, x: &AffElement) -> [i64; MAX_DIM] {
        let d = self.dim;
        let mut q = [0i64; MAX_DIM];
        for i in 0..d {
            let mut s = 0i64;
            for k in 0..d {
                s += x.lin[i * MAX_DIM + k] as i64 * self.base_point[k];
            }
            q[i] = s + self.base_denom * x.trans[i] as i64;
        }
        q
    }

    /// Number of affine root hyperplanes separating the base alcove from its image.
    pub fn length(&self, x: &AffElement) -> usize {
        let q = self.image_of_base_point(x);
        let d = self.dim;
        let mut len = 0i64;
        for root in &self.positive_roots {
            let mut s = 0i64;
            for k in 0..d {
                s += root.functional[k] as i64 * q[k];
            }
            len += s.div_euclid(self.base_denom).abs();
        }
        len as usize
    }

    /// `ℓ(s_i x) < ℓ(x)`.
    pub fn is_left_descent(&self, x: &AffElement, i: usize) -> bool {
        let q = self.image_of_base_point(x);
        self.descent_from_image(&q, i)
    }

    #[inline]
    fn descent_from_image(&self, q: &[i64; MAX_DIM], i: usize) -> bool {
        let d = self.dim;
        let f = if i == 0 {
            &self.positive_roots[self.highest_root].functional
        } else {
            &self.positive_roots[self.simple_roots[i - 1]].functional
        };
        let mut s = 0i64;
        for k in 0..d {
            s += f[k] as i64 * q[k];
        }
        if i == 0 {
            s > self.base_denom
        } else {
            s < 0
        }
    }

    /// Left descent set of `x` as a node set.
    pub fn left_descents(&self, x: &AffElement) -> NodeSet {
        let q = self.image_of_base_point(x);
        let mut out = NodeSet::EMPTY;
        for i in 0..self.num_nodes() {
            if self.descent_from_image(&q, i) {
                out.insert(i);
            }
        }
        out
    }

    /// `ℓ(x s_i) < ℓ(x)`.
    pub fn is_right_descent(&self, x: &AffElement, i: usize) -> bool {
        self.is_left_descent(&self.inverse(x), i)
    }

    pub fn right_descents(&self, x: &AffElement) -> NodeSet {
        self.left_descents(&self.inverse(x))
    }

    /// Splits `x = s_{i_1} ⋯ s_{i_k} · ω` with ω of length zero, choosing the
    /// smallest left descent at each step.
    pub fn split_omega(&self, x: &AffElement) -> (Vec<usize>, AffElement) {
        let mut letters = Vec::new();
        let mut cur = *x;
        loop {
            let q = self.image_of_base_point(&cur);
            match (0..self.num_nodes()).find(|&i| self.descent_from_image(&q, i)) {
                Some(i) => {
                    letters.push(i);
                    cur = self.left_mul_gen(i, &cur);
                }
                None => return (letters, cur),
            }
        }
    }

    /// The length-zero element ω with `x ω⁻¹ ∈ W_a`.
    pub fn omega_component(&self, x: &AffElement) -> AffElement {
        self.split_omega(x).1
    }

    /// Reduced word with the smallest descent taken first, ending in a
    /// `tau:k` symbol when the Ω-component is nontrivial.
    pub fn reduced_word(&self, x: &AffElement) -> Word {
        let (letters, omega) = self.split_omega(x);
        let mut word: Vec<Letter> = letters.into_iter().map(Letter::S).collect();
        if omega != AffElement::IDENTITY {
            word.push(Letter::Tau(self.omega_index(&omega).unwrap_or(i64::MIN)));
        }
        Word { letters: word }
    }

    /// Reduced word rendered with the quadruple's `τ` written as a bare `tau`.
    pub fn reduced_word_ctx(&self, x: &AffElement, tau: &AffElement) -> Word {
        let (letters, omega) = self.split_omega(x);
        let mut word: Vec<Letter> = letters.into_iter().map(Letter::S).collect();
        if omega == *tau && *tau != AffElement::IDENTITY {
            word.push(Letter::TauCtx);
        } else if omega != AffElement::IDENTITY {
            word.push(Letter::Tau(self.omega_index(&omega).unwrap_or(i64::MIN)));
        }
        Word { letters: word }
    }

    /// Evaluates a word; a bare `tau` needs the quadruple's τ.
    pub fn eval_word(&self, word: &Word, tau: Option<&AffElement>) -> Result<AffElement> {
        let mut x = AffElement::IDENTITY;
        for l in &word.letters {
            let y = match *l {
                Letter::S(i) => {
                    if i >= self.num_nodes() {
                        return Err(Error::Parse(format!(
                            "letter s{i} out of range for {} (nodes 0..={})",
                            self.name(),
                            self.rank
                        )));
                    }
                    self.gens[i]
                }
                Letter::Tau(k) => self.tau(k)?,
                Letter::TauCtx => *tau.ok_or_else(|| {
                    Error::Parse("bare `tau` needs a quadruple context".to_string())
                })?,
            };
            x = self.multiply(&x, &y);
        }
        Ok(x)
    }

    /// Bruhat order, by the descent recursion: for a left descent `s` of `w`,
    /// `x ≤ w ⟺ min(x, sx) ≤ sw`.
    pub fn bruhat_leq(&self, x: &AffElement, w: &AffElement) -> bool {
        let mut x = *x;
        let mut w = *w;
        let mut lx = self.length(&x);
        let mut lw = self.length(&w);
        loop {
            if lx > lw {
                return false;
            }
            if lx == lw {
                return x == w;
            }
            // lw > lx >= 0, so w has a left descent.
            let q = self.image_of_base_point(&w);
            let s = (0..self.num_nodes())
                .find(|&i| self.descent_from_image(&q, i))
                .expect("positive length element has a descent");
            w = self.left_mul_gen(s, &w);
            lw -= 1;
            if self.is_left_descent(&x, s) {
                x = self.left_mul_gen(s, &x);
                lx -= 1;
            }
        }
    }

    /// Minimal element of `W_J x` (left), `x W_J` (right) or `W_J x W_K`.
    pub fn min_coset_rep(&self, j: NodeSet, x: &AffElement, side: Side) -> Result<AffElement> {
        self.check_finite_parabolic(j)?;
        let mut cur = *x;
        match side {
            Side::Left => self.strip_left(j, &mut cur),
            Side::Right => self.strip_right(j, &mut cur),
            Side::Double(k) => {
                self.check_finite_parabolic(k)?;
                loop {
                    let a = self.strip_left(j, &mut cur);
                    let b = self.strip_right(k, &mut cur);
                    if !a && !b {
                        break;
                    }
                }
                true
            }
        };
        Ok(cur)
    }

    /// Maximal element of `W_J x W_K` (both parabolics finite).
    pub fn max_double_coset_rep(&self, j: NodeSet, x: &AffElement, k: NodeSet) -> Result<AffElement> {
        self.check_finite_parabolic(j)?;
        self.check_finite_parabolic(k)?;
        let mut cur = *x;
        loop {
            let mut changed = false;
            for i in j.iter() {
                if !self.is_left_descent(&cur, i) {
                    cur = self.left_mul_gen(i, &cur);
                    changed = true;
                }
            }
            for i in k.iter() {
                if !self.is_right_descent(&cur, i) {
                    cur = self.right_mul_gen(&cur, i);
                    changed = true;
                }
            }
            if !changed {
                return Ok(cur);
            }
        }
    }

    fn strip_left(&self, j: NodeSet, cur: &mut AffElement) -> bool {
        let mut any = false;
        'outer: loop {
            for i in j.iter() {
                if self.is_left_descent(cur, i) {
                    *cur = self.left_mul_gen(i, cur);
                    any = true;
                    continue 'outer;
                }
            }
            return any;
        }
    }

    fn strip_right(&self, j: NodeSet, cur: &mut AffElement) -> bool {
        let mut any = false;
        'outer: loop {
            for i in j.iter() {
                if self.is_right_descent(cur, i) {
                    *cur = self.right_mul_gen(cur, i);
                    any = true;
                    continue 'outer;
                }
            }
            return any;
        }
    }

    /// `x` has no left descents in `J`.
    pub fn is_left_minimal(&self, j: NodeSet, x: &AffElement) -> bool {
        let q = self.image_of_base_point(x);
        j.iter().all(|i| !self.descent_from_image(&q, i))
    }

    pub(crate) fn check_finite_parabolic(&self, j: NodeSet) -> Result<()> {
        if j == self.all_nodes() {
            Err(Error::InfiniteParabolic)
        } else {
            Ok(())
        }
    }

    /// `σ(x)`, the length-preserving automorphism induced by σ.
    pub fn sigma_apply(&self, sigma: &DiagramAuto, x: &AffElement) -> AffElement {
        let g = &sigma.map;
        self.multiply(&self.multiply(g, x), &self.inverse(g))
    }

    /// Index `k'` with `x = s_{k'}`, if `x` is a simple reflection.
    pub fn as_simple_reflection(&self, x: &AffElement) -> Option<usize> {
        self.gens.iter().position(|g| g == x)
    }

    /// Conjugation `x s_i x⁻¹`, returned as a node when it is simple.
    pub fn conjugate_simple(&self, x: &AffElement, i: usize) -> Option<usize> {
        let c = self.multiply(&self.multiply(x, &self.gens[i]), &self.inverse(x));
        self.as_simple_reflection(&c)
    }

    /// All elements of the finite parabolic subgroup `W_J`.
    pub fn parabolic_elements(&self, j: NodeSet) -> Result<Vec<AffElement>> {
        self.check_finite_parabolic(j)?;
        let mut seen: HashSet<AffElement> = HashSet::new();
        let mut out = vec![AffElement::IDENTITY];
        seen.insert(AffElement::IDENTITY);
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for i in j.iter() {
                let y = self.right_mul_gen(&x, i);
                if seen.insert(y) {
                    out.push(y);
                }
            }
        }
        Ok(out)
    }

    /// Longest element of the finite parabolic `W_J`.
    pub fn longest_element(&self, j: NodeSet) -> Result<AffElement> {
        self.max_double_coset_rep(j, &AffElement::IDENTITY, NodeSet::EMPTY)
    }
}

/// Bruhat comparisons memoized by normal form. Reads take a shared lock;
/// inserts are serialized behind the write lock.
#[derive(Default)]
pub struct BruhatMemo {
    table: RwLock<HashMap<(AffElement, AffElement), bool>>,
}

impl BruhatMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leq(&self, datum: &RootDatum, x: &AffElement, w: &AffElement) -> bool {
        if let Some(&v) = self.table.read().get(&(*x, *w)) {
            return v;
        }
        let v = datum.bruhat_leq(x, w);
        self.table.write().insert((*x, *w), v);
        v
    }

    pub fn len(&self) -> usize {
        self.table.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
