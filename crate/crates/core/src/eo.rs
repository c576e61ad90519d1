//! Admissible sets, EO elements, σ-supports, partial σ-conjugation and the
//! order `≤_{J,σ}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::affweyl::{AffElement, BruhatMemo, Coord, Side, Word};
use crate::error::{Error, Result};
use crate::newton::{newton_point, NewtonPoint};
use crate::rootdata::{DiagramAuto, Family, LatticeModel, NodeSet, RootDatum};

/// Coweight λ of a quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaSpec {
    Zero,
    Omega(usize),
    TwoOmega(usize),
}

impl LambdaSpec {
    /// `omega:k`, `2omega:k` or `0`.
    pub fn parse(s: &str) -> Result<LambdaSpec> {
        let s = s.trim();
        if s == "0" {
            return Ok(LambdaSpec::Zero);
        }
        let (two, rest) = match s.strip_prefix("2omega:") {
            Some(r) => (true, r),
            None => (
                false,
                s.strip_prefix("omega:")
                    .ok_or_else(|| Error::Parse(format!("bad lambda `{s}` (use omega:k or 2omega:k)")))?,
            ),
        };
        let k: usize = rest.parse().map_err(|_| Error::Parse(format!("bad lambda index in `{s}`")))?;
        Ok(if two { LambdaSpec::TwoOmega(k) } else { LambdaSpec::Omega(k) })
    }

    pub fn index(self) -> usize {
        match self {
            LambdaSpec::Zero => 0,
            LambdaSpec::Omega(k) | LambdaSpec::TwoOmega(k) => k,
        }
    }

    pub fn with_index(self, k: usize) -> LambdaSpec {
        match self {
            LambdaSpec::Zero => LambdaSpec::Zero,
            LambdaSpec::Omega(_) => LambdaSpec::Omega(k),
            LambdaSpec::TwoOmega(_) => LambdaSpec::TwoOmega(k),
        }
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::Zero => write!(f, "0"),
            LambdaSpec::Omega(k) => write!(f, "omega:{k}"),
            LambdaSpec::TwoOmega(k) => write!(f, "2omega:{k}"),
        }
    }
}

/// The coweights attached to each finite type, as in the classification input.
pub fn allowed_lambdas(family: Family, n: usize) -> Vec<LambdaSpec> {
    use LambdaSpec::*;
    match family {
        Family::A | Family::B => (1..=n).map(Omega).collect(),
        Family::C => (1..=n).map(Omega).chain([TwoOmega(n)]).collect(),
        Family::D => vec![Omega(1), Omega(n - 1), Omega(n)],
        Family::E if n == 6 => vec![Omega(1), Omega(6)],
        // The minuscule coweight of E7 is ω₇ in Bourbaki numbering.
        Family::E => vec![Omega(7)],
        Family::F => vec![Omega(1)],
        Family::G => vec![Omega(2)],
    }
}

/// One classification input `(W̃, λ, J = S̃ − {v}, σ)`.
#[derive(Clone, Debug)]
pub struct Quadruple {
    pub datum: Arc<RootDatum>,
    pub lambda: LambdaSpec,
    pub removed: usize,
    pub sigma: DiagramAuto,
    pub tau: AffElement,
    pub(crate) lambda_vec: Coord,
}

impl Quadruple {
    pub fn new(datum: Arc<RootDatum>, lambda: LambdaSpec, removed: usize, sigma: DiagramAuto) -> Result<Quadruple> {
        if lambda != LambdaSpec::Zero && !allowed_lambdas(datum.family, datum.rank).contains(&lambda) {
            return Err(Error::InvalidQuadruple(format!(
                "lambda {lambda} is not attached to {}",
                datum.name()
            )));
        }
        if removed > datum.rank {
            return Err(Error::InvalidQuadruple(format!(
                "removed vertex {removed} outside 0..={}",
                datum.rank
            )));
        }
        if sigma.perm[removed] != removed {
            return Err(Error::InvalidQuadruple(format!(
                "sigma(v) != v: {} moves vertex {removed} to {}",
                sigma.label, sigma.perm[removed]
            )));
        }
        let lambda_vec = match lambda {
            LambdaSpec::Zero => [0; crate::MAX_DIM],
            LambdaSpec::Omega(k) => datum.fundamental_coweight(k),
            LambdaSpec::TwoOmega(k) => datum.fundamental_coweight(k).map(|c| 2 * c),
        };
        let tau = datum.omega_component(&AffElement::translation(lambda_vec));
        Ok(Quadruple {
            datum,
            lambda,
            removed,
            sigma,
            tau,
            lambda_vec,
        })
    }

    /// Builds from text specs, e.g. `("C", 2, false, "omega:2", 0, "id")`.
    pub fn from_specs(family: &str, rank: usize, adjoint_a: bool, lambda: &str, removed: usize, sigma: &str) -> Result<Quadruple> {
        let family = Family::parse(family)?;
        let model = if family == Family::A && !adjoint_a {
            LatticeModel::Gl
        } else {
            LatticeModel::Adjoint
        };
        let datum = Arc::new(RootDatum::new(family, rank, model)?);
        let sigma = datum.parse_sigma(sigma)?;
        Quadruple::new(datum, LambdaSpec::parse(lambda)?, removed, sigma)
    }

    /// `J = S̃ − {v}`.
    pub fn j(&self) -> NodeSet {
        let mut j = self.datum.all_nodes();
        j.remove(self.removed);
        j
    }

    pub fn lambda_coweight(&self) -> &Coord {
        &self.lambda_vec
    }

    /// The permutation `τσ` of `S̃`.
    pub fn tau_sigma_perm(&self) -> Vec<usize> {
        let pt = self
            .datum
            .conjugation_perm(&self.tau)
            .expect("τ normalizes S̃");
        self.sigma.perm.iter().map(|&i| pt[i]).collect()
    }

    pub fn tau_index(&self) -> i64 {
        self.datum.omega_index(&self.tau).expect("τ lies in Ω")
    }

    pub fn word(&self, x: &AffElement) -> Word {
        self.datum.reduced_word_ctx(x, &self.tau)
    }

    pub fn parse_word(&self, text: &str) -> Result<AffElement> {
        self.datum.eval_word(&Word::parse(text)?, Some(&self.tau))
    }

    pub fn label(&self) -> String {
        format!(
            "{} {} v={} sigma={}",
            self.datum.name(),
            self.lambda,
            self.removed,
            self.sigma.label
        )
    }
}

/// Per-element data for `EO^J(μ)`.
#[derive(Clone, Debug)]
pub struct EoRecord {
    pub element: AffElement,
    pub word: Word,
    pub length: usize,
    pub support: NodeSet,
    pub orbit_count: usize,
    /// `ℓ(w)` equals the number of τσ-orbits in the support.
    pub sigma_coxeter: bool,
    /// σ-Coxeter with proper support, i.e. a member of `EO_cox`.
    pub coxeter: bool,
    pub newton: NewtonPoint,
    pub straight: bool,
    pub central: bool,
    pub i_set: NodeSet,
}

#[derive(Clone, Debug)]
pub struct EoData {
    /// Sorted by length, then reduced word.
    pub elements: Vec<EoRecord>,
}

impl EoData {
    pub fn coxeter(&self) -> impl Iterator<Item = &EoRecord> {
        self.elements.iter().filter(|r| r.coxeter)
    }
    pub fn words(&self) -> Vec<String> {
        self.elements.iter().map(|r| r.word.to_string()).collect()
    }
    pub fn coxeter_words(&self) -> Vec<String> {
        self.coxeter().map(|r| r.word.to_string()).collect()
    }
    pub fn find(&self, x: &AffElement) -> Option<&EoRecord> {
        self.elements.iter().find(|r| r.element == *x)
    }
}

/// Maxima `max(W_J t^{x(λ)} W_J)`, `x ∈ W₀`, deduplicated.
fn admissible_maxima(datum: &RootDatum, lambda: &Coord, j: NodeSet) -> Result<Vec<AffElement>> {
    let mut out: Vec<AffElement> = Vec::new();
    for y in datum.weyl_orbit(lambda) {
        let m = datum.max_double_coset_rep(j, &AffElement::translation(y), j)?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Elements of `^J W̃` below one of the maxima. The set is downward closed,
/// so it is reached from its bottom element by right multiplications that
/// raise the length and keep J-minimality.
fn closed_set_from(
    datum: &RootDatum,
    start: AffElement,
    j: NodeSet,
    maxima: &[AffElement],
    memo: &BruhatMemo,
) -> Vec<AffElement> {
    let mut found: HashSet<AffElement> = HashSet::from([start]);
    let mut rejected: HashSet<AffElement> = HashSet::new();
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        let lx = datum.length(&x);
        for s in 0..datum.num_nodes() {
            let y = datum.right_mul_gen(&x, s);
            if found.contains(&y) || rejected.contains(&y) || datum.length(&y) < lx {
                continue;
            }
            if datum.is_left_minimal(j, &y) && maxima.iter().any(|m| memo.leq(datum, &y, m)) {
                found.insert(y);
                order.push(y);
            } else {
                rejected.insert(y);
            }
        }
    }
    order
}

/// `Adm(λ)`: the Bruhat-downward closure of `{t^{x(λ)} : x ∈ W₀}`.
pub fn admissible_set(datum: &RootDatum, lambda: &Coord) -> Vec<AffElement> {
    let maxima = admissible_maxima(datum, lambda, NodeSet::EMPTY).expect("empty parabolic is finite");
    let tau = datum.omega_component(&AffElement::translation(*lambda));
    let mut out = closed_set_from(datum, tau, NodeSet::EMPTY, &maxima, &BruhatMemo::new());
    sort_by_word(datum, &mut out);
    out
}

fn sort_by_word(datum: &RootDatum, v: &mut [AffElement]) {
    v.sort_by_cached_key(|x| {
        let w = datum.split_omega(x).0;
        (w.len(), w)
    });
}

/// `EO^J(μ) = Adm^J(μ) ∩ ^J W̃` as bare elements.
pub fn eo_elements(q: &Quadruple, memo: &BruhatMemo) -> Result<Vec<AffElement>> {
    let maxima = admissible_maxima(&q.datum, &q.lambda_vec, q.j())?;
    let mut out = closed_set_from(&q.datum, q.tau, q.j(), &maxima, memo);
    sort_by_word(&q.datum, &mut out);
    Ok(out)
}

/// Full EO data with per-element records.
pub fn eo_set(q: &Quadruple) -> Result<EoData> {
    let elems = eo_elements(q, &BruhatMemo::new())?;
    eo_data_from_elements(q, &elems)
}

/// Builds records for a known element list (for instance, read back from a cache).
pub fn eo_data_from_elements(q: &Quadruple, elems: &[AffElement]) -> Result<EoData> {
    let d = &q.datum;
    let full = d.all_nodes();
    let mut elements = Vec::with_capacity(elems.len());
    for x in elems {
        let (support, _) = supp_sigma(q, x)?;
        let orbit_count = count_orbits(support, &q.tau_sigma_perm());
        let length = d.length(x);
        let newton = newton_point(d, x, &q.sigma)?;
        let straight = newton.pairing == num_rational::Rational64::from_integer(length as i64);
        let central = newton.is_central(d);
        let sigma_coxeter = length == orbit_count;
        elements.push(EoRecord {
            element: *x,
            word: q.word(x),
            length,
            support,
            orbit_count,
            sigma_coxeter,
            coxeter: sigma_coxeter && support != full,
            newton,
            straight,
            central,
            i_set: i_jwsigma(d, q.j(), x, &q.sigma)?,
        });
    }
    elements.sort_by(|a, b| (a.length, &a.word.letters).cmp(&(b.length, &b.word.letters)));
    Ok(EoData { elements })
}

fn check_component(q: &Quadruple, w: &AffElement) -> Result<()> {
    let om = q.datum.omega_component(w);
    if om != q.tau {
        return Err(Error::WrongOmegaComponent {
            expected: q.word(&q.tau).to_string(),
            found: q.datum.reduced_word(&om).to_string(),
        });
    }
    Ok(())
}

/// `supp_σ(w)`: the τσ-stable closure of the letters of the `W_a` part, and
/// whether it is a proper subset of `S̃`.
pub fn supp_sigma(q: &Quadruple, w: &AffElement) -> Result<(NodeSet, bool)> {
    check_component(q, w)?;
    let (letters, _) = q.datum.split_omega(w);
    let f = q.tau_sigma_perm();
    let mut s = NodeSet::from_slice(&letters);
    loop {
        let next = s.union(s.map(&f));
        if next == s {
            break;
        }
        s = next;
    }
    Ok((s, s != q.datum.all_nodes()))
}

/// Number of orbits of a permutation inside a stable set.
pub fn count_orbits(set: NodeSet, perm: &[usize]) -> usize {
    let mut seen = NodeSet::EMPTY;
    let mut count = 0;
    for i in set.iter() {
        if seen.contains(i) {
            continue;
        }
        count += 1;
        let mut k = i;
        while !seen.contains(k) {
            seen.insert(k);
            k = perm[k];
        }
    }
    count
}

/// `ℓ(w)` equals the number of τσ-orbits in `supp_σ(w)`.
pub fn is_sigma_coxeter(q: &Quadruple, w: &AffElement) -> Result<bool> {
    let (s, _) = supp_sigma(q, w)?;
    Ok(q.datum.length(w) == count_orbits(s, &q.tau_sigma_perm()))
}

fn require_left_minimal(datum: &RootDatum, j: NodeSet, w: &AffElement) -> Result<()> {
    if datum.is_left_minimal(j, w) {
        Ok(())
    } else {
        Err(Error::NotLeftMinimal)
    }
}

/// `I(J, w, σ)`: the largest `K ⊆ J` with `Ad(w)σ(K) = K`.
pub fn i_jwsigma(datum: &RootDatum, j: NodeSet, w: &AffElement, sigma: &DiagramAuto) -> Result<NodeSet> {
    require_left_minimal(datum, j, w)?;
    let mut k = j;
    loop {
        let mut next = NodeSet::EMPTY;
        for i in k.iter() {
            if let Some(t) = datum.conjugate_simple(w, sigma.perm[i]) {
                if k.contains(t) {
                    next.insert(i);
                }
            }
        }
        if next == k {
            return Ok(k);
        }
        k = next;
    }
}

/// Iterates `J_{n+1} = J_n ∩ Ad(w_n)σ(J_n)` with `w_n = min(W_{J_n} w W_{σ(J_n)})`
/// until it stabilizes.
pub fn bedard_sequence(datum: &RootDatum, j: NodeSet, w: &AffElement, sigma: &DiagramAuto) -> Result<Vec<(NodeSet, AffElement)>> {
    require_left_minimal(datum, j, w)?;
    let mut seq: Vec<(NodeSet, AffElement)> = Vec::new();
    let mut jn = j;
    loop {
        let sj = jn.map(&sigma.perm);
        let wn = datum.min_coset_rep(jn, w, Side::Double(sj))?;
        if seq.last() == Some(&(jn, wn)) {
            return Ok(seq);
        }
        seq.push((jn, wn));
        let mut image = NodeSet::EMPTY;
        for k in sj.iter() {
            if let Some(t) = datum.conjugate_simple(&wn, k) {
                image.insert(t);
            }
        }
        jn = jn.intersect(image);
    }
}

/// `s_j x σ(s_j)`.
fn twisted_move(datum: &RootDatum, x: &AffElement, j: usize, sigma: &DiagramAuto) -> AffElement {
    datum.multiply(&datum.left_mul_gen(j, x), &datum.gen(sigma.perm[j]))
}

/// Minimal length element reached from `w` by non-increasing moves
/// `w ↦ s_j w σ(s_j)`, `j ∈ J`, with the moves used.
pub fn reduce_partial_conjugation(
    datum: &RootDatum,
    j: NodeSet,
    w: &AffElement,
    sigma: &DiagramAuto,
) -> Result<(AffElement, Vec<usize>)> {
    datum.check_finite_parabolic(j)?;
    let mut parent: HashMap<AffElement, Option<(AffElement, usize)>> = HashMap::from([(*w, None)]);
    let mut queue = VecDeque::from([*w]);
    let mut best = (*w, datum.length(w));
    while let Some(x) = queue.pop_front() {
        let lx = datum.length(&x);
        for i in j.iter() {
            let y = twisted_move(datum, &x, i, sigma);
            let ly = datum.length(&y);
            if ly > lx || parent.contains_key(&y) {
                continue;
            }
            parent.insert(y, Some((x, i)));
            if ly < best.1 {
                best = (y, ly);
            }
            queue.push_back(y);
        }
    }
    let mut moves = Vec::new();
    let mut cur = best.0;
    while let Some(Some((p, i))) = parent.get(&cur) {
        moves.push(*i);
        cur = *p;
    }
    moves.reverse();
    Ok((best.0, moves))
}

/// The full orbit `{y x σ(y)⁻¹ : y ∈ W_J}`.
pub fn twisted_orbit(datum: &RootDatum, j: NodeSet, x: &AffElement, sigma: &DiagramAuto) -> Result<Vec<AffElement>> {
    datum.check_finite_parabolic(j)?;
    let mut seen: HashSet<AffElement> = HashSet::from([*x]);
    let mut out = vec![*x];
    let mut head = 0;
    while head < out.len() {
        let z = out[head];
        head += 1;
        for i in j.iter() {
            let y = twisted_move(datum, &z, i, sigma);
            if seen.insert(y) {
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// `x ≤_{J,σ} w`: some `y ∈ W_J` has `y x σ(y)⁻¹ ≤ w`.
pub fn leq_j_sigma(datum: &RootDatum, j: NodeSet, x: &AffElement, w: &AffElement, sigma: &DiagramAuto) -> Result<bool> {
    require_left_minimal(datum, j, x)?;
    let orbit = twisted_orbit(datum, j, x, sigma)?;
    Ok(leq_from_orbit(datum, &orbit, w))
}

/// `≤_{J,σ}` test against a precomputed twisted orbit of `x`.
pub fn leq_from_orbit(datum: &RootDatum, orbit: &[AffElement], w: &AffElement) -> bool {
    let lw = datum.length(w);
    orbit
        .iter()
        .any(|z| datum.length(z) <= lw && datum.bruhat_leq(z, w))
}
