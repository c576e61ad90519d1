//! Coxeter-type decision per quadruple, the classification sweep, stratum data
//! of the basic locus, closure relations and smoothness.

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::affweyl::{AffElement, BruhatMemo, Side, Word};
use crate::eo::{
    allowed_lambdas, bedard_sequence, count_orbits, eo_set, i_jwsigma, leq_from_orbit, supp_sigma,
    twisted_orbit, EoData, EoRecord, LambdaSpec, Quadruple,
};
use crate::error::{Error, Result};
use crate::newton::{display_coords, newton_order, NewtonPoint};
use crate::rootdata::{DiagramAuto, Family, LatticeModel, NodeSet, RootDatum};

#[derive(Clone, Debug)]
pub struct ClassificationVerdict {
    pub quadruple: Quadruple,
    /// Every EO element with central Newton point is σ-Coxeter.
    pub cc: bool,
    /// Every EO element outside `EO_cox` is σ-straight.
    pub csc: bool,
    pub coxeter_type: bool,
    /// First (shortest, then lexicographic) central non-Coxeter element.
    pub witness: Option<Word>,
    /// First non-Coxeter element that is not straight.
    pub csc_failure: Option<Word>,
    pub eo: EoData,
}

impl ClassificationVerdict {
    /// The two conditions agree, as the case analysis predicts.
    pub fn coherent(&self) -> bool {
        self.cc == self.csc
    }
}

pub fn check_conditions(q: &Quadruple) -> Result<ClassificationVerdict> {
    let eo = eo_set(q)?;
    Ok(verdict_from_eo(q, eo))
}

pub fn verdict_from_eo(q: &Quadruple, eo: EoData) -> ClassificationVerdict {
    let witness = eo
        .elements
        .iter()
        .find(|r| r.central && !r.coxeter)
        .map(|r| r.word.clone());
    let csc_failure = eo
        .elements
        .iter()
        .find(|r| !r.coxeter && !r.straight)
        .map(|r| r.word.clone());
    let cc = witness.is_none();
    let csc = csc_failure.is_none();
    ClassificationVerdict {
        quadruple: q.clone(),
        cc,
        csc,
        coxeter_type: cc && csc,
        witness,
        csc_failure,
        eo,
    }
}

/// Outcome of checking a proposed failure witness for the central condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessStatus {
    Confirmed,
    NotEoElement,
    NotCentral,
    SigmaCoxeter,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub word: String,
    pub in_eo: bool,
    pub central: bool,
    pub sigma_coxeter: bool,
    pub status: WitnessStatus,
}

/// `x ∈ EO^J(μ)` without enumerating the set.
pub fn is_eo_element(q: &Quadruple, x: &AffElement) -> Result<bool> {
    let d = &q.datum;
    if d.omega_component(x) != q.tau || !d.is_left_minimal(q.j(), x) {
        return Ok(false);
    }
    let memo = BruhatMemo::new();
    for y in d.weyl_orbit(q.lambda_coweight()) {
        let m = d.max_double_coset_rep(q.j(), &AffElement::translation(y), q.j())?;
        if memo.leq(d, x, &m) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn verify_witness(q: &Quadruple, word: &Word) -> Result<WitnessReport> {
    let x = q.datum.eval_word(word, Some(&q.tau))?;
    let in_eo = is_eo_element(q, &x)?;
    let text = q.word(&x).to_string();
    if !in_eo {
        return Ok(WitnessReport {
            word: text,
            in_eo,
            central: false,
            sigma_coxeter: false,
            status: WitnessStatus::NotEoElement,
        });
    }
    let central = crate::newton::newton_point(&q.datum, &x, &q.sigma)?.is_central(&q.datum);
    let (supp, proper) = supp_sigma(q, &x)?;
    let sigma_coxeter = proper && q.datum.length(&x) == count_orbits(supp, &q.tau_sigma_perm());
    let status = if !central {
        WitnessStatus::NotCentral
    } else if sigma_coxeter {
        WitnessStatus::SigmaCoxeter
    } else {
        WitnessStatus::Confirmed
    };
    Ok(WitnessReport {
        word: text,
        in_eo,
        central,
        sigma_coxeter,
        status,
    })
}

/// Orbit key of a quadruple under automorphisms of the affine diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub lambda: LambdaSpec,
    pub removed: usize,
    pub sigma_perm: Vec<usize>,
}

fn lambda_image(datum: &RootDatum, lambda: LambdaSpec, phi: &DiagramAuto) -> LambdaSpec {
    match (lambda, datum.model) {
        (LambdaSpec::Zero, _) => LambdaSpec::Zero,
        (_, LatticeModel::Gl) => {
            if phi.finite.iter().enumerate().all(|(i, &p)| i == p) {
                lambda
            } else {
                lambda.with_index(datum.rank + 1 - lambda.index())
            }
        }
        (_, LatticeModel::Adjoint) => lambda.with_index(phi.finite[lambda.index() - 1] + 1),
    }
}

fn canonical_key_with(q: &Quadruple, autos: &[DiagramAuto]) -> CanonicalKey {
    let p = &q.sigma.perm;
    autos
        .iter()
        .map(|phi| {
            let f = &phi.perm;
            let mut finv = vec![0; f.len()];
            for (a, &b) in f.iter().enumerate() {
                finv[b] = a;
            }
            CanonicalKey {
                lambda: lambda_image(&q.datum, q.lambda, phi),
                removed: f[q.removed],
                sigma_perm: (0..f.len()).map(|i| f[p[finv[i]]]).collect(),
            }
        })
        .min()
        .expect("identity automorphism exists")
}

pub fn canonical_key(q: &Quadruple) -> CanonicalKey {
    canonical_key_with(q, &q.datum.all_autos())
}

/// Root data visited by the sweep, in order.
pub fn sweep_data(max_rank: usize) -> Vec<Arc<RootDatum>> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        for n in 1..=max_rank {
            if let Ok(d) = RootDatum::standard(fam, n) {
                out.push(Arc::new(d));
            }
        }
    }
    out
}

/// All quadruples up to automorphism; the first one met in each class is kept.
pub fn sweep_quadruples(max_rank: usize) -> Vec<Quadruple> {
    let mut out = Vec::new();
    for d in sweep_data(max_rank) {
        let autos = d.all_autos();
        let mut seen: HashSet<CanonicalKey> = HashSet::new();
        for lambda in allowed_lambdas(d.family, d.rank) {
            for v in 0..d.num_nodes() {
                for sigma in &autos {
                    if sigma.perm[v] != v {
                        continue;
                    }
                    let q = Quadruple::new(d.clone(), lambda, v, sigma.clone()).expect("valid by construction");
                    if seen.insert(canonical_key_with(&q, &autos)) {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

/// Verdicts for every quadruple up to the rank bound, computed in parallel and
/// returned in sweep order.
pub fn sweep(max_rank: usize) -> Result<Vec<ClassificationVerdict>> {
    let qs = sweep_quadruples(max_rank);
    qs.par_iter().map(check_conditions).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicLabel {
    /// Finite σ-support: the whole stratum lies in the basic locus.
    Basic,
    /// σ-straight with non-central Newton point.
    NonBasic,
    Undecided,
}

pub fn basic_label(r: &EoRecord, full: NodeSet) -> BasicLabel {
    if r.support != full {
        BasicLabel::Basic
    } else if r.straight && !r.central {
        BasicLabel::NonBasic
    } else {
        BasicLabel::Undecided
    }
}

pub fn basic_locus_eo(q: &Quadruple, eo: &EoData) -> Vec<(Word, usize, BasicLabel)> {
    let full = q.datum.all_nodes();
    eo.elements
        .iter()
        .map(|r| (r.word.clone(), r.length, basic_label(r, full)))
        .collect()
}

/// How orbit distances are read when building the index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexVariant {
    /// Every τσ-orbit has constant distance to the removed vertex.
    Literal,
    /// An orbit's distance is the minimum over its vertices.
    MinDistance,
}

#[derive(Clone, Debug)]
pub struct StratumDatum {
    pub sigma: NodeSet,
    pub flat: NodeSet,
    pub sharp: NodeSet,
    pub w: AffElement,
    pub word: Word,
    /// `ℓ(w_Σ)`; it differs from `d` when two orbits share a distance level
    /// and only one of them is in `Σ`.
    pub length: usize,
    pub d: usize,
    /// Symbolic name of the component coset space.
    pub component_tag: String,
}

#[derive(Clone, Debug)]
pub struct StrataReport {
    pub variant: IndexVariant,
    pub strata: Vec<StratumDatum>,
}

impl StrataReport {
    /// Strata with `ℓ(w_Σ) ≠ d(Σ)`.
    pub fn length_mismatches(&self) -> Vec<&StratumDatum> {
        self.strata.iter().filter(|s| s.length != s.d).collect()
    }
}

fn orbits_of(perm: &[usize]) -> Vec<NodeSet> {
    let mut seen = NodeSet::EMPTY;
    let mut out = Vec::new();
    for i in 0..perm.len() {
        if seen.contains(i) {
            continue;
        }
        let mut o = NodeSet::EMPTY;
        let mut k = i;
        while !o.contains(k) {
            o.insert(k);
            k = perm[k];
        }
        seen = seen.union(o);
        out.push(o);
    }
    out
}

fn strata_for_variant(q: &Quadruple, eo: &EoData, variant: IndexVariant) -> Result<Vec<StratumDatum>> {
    let d = &q.datum;
    let dist = d.distances_from(q.removed);
    let orbits = orbits_of(&q.tau_sigma_perm());
    let mut orbit_d = Vec::with_capacity(orbits.len());
    for o in &orbits {
        let ds: Vec<usize> = o.iter().map(|v| dist[v]).collect();
        let min = *ds.iter().min().expect("orbits are nonempty");
        if variant == IndexVariant::Literal && ds.iter().any(|&x| x != min) {
            return Err(Error::StratumInvariant {
                clause: "index set",
                detail: format!("orbit {o} has non-constant distance"),
            });
        }
        orbit_d.push(min);
    }
    let coxeter: Vec<&EoRecord> = eo.coxeter().collect();
    let mut levels: Vec<usize> = orbit_d.clone();
    levels.sort();
    levels.dedup();
    let mut strata = Vec::new();
    for &lev in &levels {
        let at: Vec<usize> = (0..orbits.len()).filter(|&k| orbit_d[k] == lev).collect();
        for mask in 1u32..(1 << at.len()) {
            let mut sigma = NodeSet::EMPTY;
            for (b, &k) in at.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    sigma = sigma.union(orbits[k]);
                }
            }
            let mut flat = NodeSet::EMPTY;
            let mut sharp = NodeSet::EMPTY;
            for (k, o) in orbits.iter().enumerate() {
                if o.is_subset(sigma) {
                    continue;
                }
                if orbit_d[k] <= lev {
                    flat = flat.union(*o);
                } else {
                    sharp = sharp.union(*o);
                }
            }
            if sigma.intersect(flat).union(sigma.intersect(sharp)).union(flat.intersect(sharp)) != NodeSet::EMPTY
                || sigma.union(flat).union(sharp) != d.all_nodes()
            {
                return Err(Error::StratumInvariant {
                    clause: "partition",
                    detail: format!("Σ={sigma} does not partition S̃"),
                });
            }
            for a in flat.iter() {
                for b in sharp.iter() {
                    if d.adjacent(a, b) {
                        return Err(Error::StratumInvariant {
                            clause: "disconnected",
                            detail: format!("Σ={sigma}: edge {a}-{b} joins the two complements"),
                        });
                    }
                }
            }
            let cands: Vec<&&EoRecord> = coxeter.iter().filter(|r| r.support == flat).collect();
            if cands.len() != 1 {
                return Err(Error::StratumInvariant {
                    clause: "unique element",
                    detail: format!("Σ={sigma}: {} Coxeter elements with support {flat}", cands.len()),
                });
            }
            let w = cands[0];
            if w.i_set != sharp {
                return Err(Error::StratumInvariant {
                    clause: "I(J,w,σ)",
                    detail: format!("Σ={sigma}: I = {} but complement is {sharp}", w.i_set),
                });
            }
            strata.push(StratumDatum {
                sigma,
                flat,
                sharp,
                w: w.element,
                word: w.word.clone(),
                length: w.length,
                d: lev,
                component_tag: format!("J_tau/(J_tau ∩ P_{{S̃−{sigma}}})"),
            });
        }
    }
    let ws: HashSet<AffElement> = strata.iter().map(|s| s.w).collect();
    if ws.len() != strata.len() || strata.len() != coxeter.len() {
        return Err(Error::StratumInvariant {
            clause: "bijection",
            detail: format!("{} strata for {} Coxeter elements", strata.len(), coxeter.len()),
        });
    }
    Ok(strata)
}

/// Index set of the basic locus with its stratum data, trying the literal
/// distance rule first and the minimum-distance rule second.
pub fn strata_index_set(q: &Quadruple, eo: &EoData) -> Result<StrataReport> {
    match strata_for_variant(q, eo, IndexVariant::Literal) {
        Ok(strata) => Ok(StrataReport {
            variant: IndexVariant::Literal,
            strata,
        }),
        Err(_) => strata_for_variant(q, eo, IndexVariant::MinDistance).map(|strata| StrataReport {
            variant: IndexVariant::MinDistance,
            strata,
        }),
    }
}

#[derive(Clone, Debug)]
pub struct ClosurePoset {
    pub nodes: Vec<NodeSet>,
    /// `(a, b)` with `a ≺ b`, i.e. `a^♭ ⊊ b^♭`.
    pub relations: Vec<(usize, usize)>,
    pub hasse: Vec<(usize, usize)>,
    /// The relation equals `≤_{J,σ}` on the elements `w_Σ`.
    pub agrees_with_leq_j_sigma: bool,
    /// Every cover raises `d` by exactly one.
    pub covers_raise_rank_by_one: bool,
}

pub fn closure_poset(q: &Quadruple, strata: &[StratumDatum]) -> Result<ClosurePoset> {
    let n = strata.len();
    let below = |a: usize, b: usize| a != b && strata[a].flat.is_subset(strata[b].flat);
    let mut relations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if below(a, b) {
                relations.push((a, b));
            }
        }
    }
    let hasse: Vec<(usize, usize)> = relations
        .iter()
        .copied()
        .filter(|&(a, b)| !(0..n).any(|c| below(a, c) && below(c, b)))
        .collect();
    let mut agrees = true;
    for a in 0..n {
        let orbit = twisted_orbit(&q.datum, q.j(), &strata[a].w, &q.sigma)?;
        for b in 0..n {
            let poset = a == b || below(a, b);
            if poset != leq_from_orbit(&q.datum, &orbit, &strata[b].w) {
                agrees = false;
            }
        }
    }
    let covers_raise_rank_by_one = hasse.iter().all(|&(a, b)| strata[b].length == strata[a].length + 1);
    Ok(ClosurePoset {
        nodes: strata.iter().map(|s| s.sigma).collect(),
        relations,
        hasse,
        agrees_with_leq_j_sigma: agrees,
        covers_raise_rank_by_one,
    })
}

/// A row of the known smoothness table: `(family, rank range start, λ, removed vertex, σ, all smooth)`.
struct SmoothRow {
    family: Family,
    min_rank: usize,
    only_rank: Option<usize>,
    lambda: fn(usize) -> LambdaSpec,
    removed: fn(usize) -> usize,
    sigma: &'static str,
    all_smooth: bool,
}

const SMOOTH_ROWS: &[SmoothRow] = &[
    SmoothRow { family: Family::A, min_rank: 1, only_rank: None, lambda: |_| LambdaSpec::Omega(1), removed: |_| 0, sigma: "id", all_smooth: true },
    SmoothRow { family: Family::A, min_rank: 2, only_rank: None, lambda: |_| LambdaSpec::Omega(1), removed: |_| 0, sigma: "sigma0", all_smooth: true },
    SmoothRow { family: Family::A, min_rank: 3, only_rank: Some(3), lambda: |_| LambdaSpec::Omega(2), removed: |_| 0, sigma: "id", all_smooth: true },
    SmoothRow { family: Family::A, min_rank: 3, only_rank: Some(3), lambda: |_| LambdaSpec::Omega(2), removed: |_| 0, sigma: "sigma0", all_smooth: true },
    SmoothRow { family: Family::C, min_rank: 2, only_rank: Some(2), lambda: |_| LambdaSpec::Omega(2), removed: |_| 0, sigma: "id", all_smooth: true },
    SmoothRow { family: Family::C, min_rank: 2, only_rank: Some(2), lambda: |_| LambdaSpec::Omega(2), removed: |_| 1, sigma: "id", all_smooth: true },
    SmoothRow { family: Family::C, min_rank: 2, only_rank: Some(2), lambda: |_| LambdaSpec::Omega(2), removed: |_| 1, sigma: "tau:2", all_smooth: false },
    SmoothRow { family: Family::B, min_rank: 3, only_rank: None, lambda: |_| LambdaSpec::Omega(1), removed: |n| n, sigma: "id", all_smooth: false },
    SmoothRow { family: Family::B, min_rank: 3, only_rank: None, lambda: |_| LambdaSpec::Omega(1), removed: |n| n, sigma: "tau:1", all_smooth: false },
    SmoothRow { family: Family::C, min_rank: 2, only_rank: None, lambda: |_| LambdaSpec::Omega(1), removed: |_| 0, sigma: "id", all_smooth: false },
];

/// Whether the quadruple is a row of the known smoothness table, and if so
/// whether that row has all strata smooth.
pub fn smoothness_table_entry(q: &Quadruple) -> Option<bool> {
    let d = &q.datum;
    if d.model != LatticeModel::default_for(d.family) {
        return None;
    }
    let key = canonical_key(q);
    SMOOTH_ROWS
        .iter()
        .filter(|r| r.family == d.family && d.rank >= r.min_rank && r.only_rank.is_none_or(|k| k == d.rank))
        .find(|r| {
            d.parse_sigma(r.sigma)
                .and_then(|s| Quadruple::new(q.datum.clone(), (r.lambda)(d.rank), (r.removed)(d.rank), s))
                .map(|row| canonical_key(&row) == key)
                .unwrap_or(false)
        })
        .map(|r| r.all_smooth)
}

#[derive(Clone, Debug)]
pub struct SmoothnessRow {
    pub sigma: NodeSet,
    pub word: Word,
    pub length: usize,
    pub tau_fixes_j: bool,
    /// `τ(J) ≠ J` or `ℓ(w_Σ) ≤ 1`.
    pub criterion_smooth: bool,
    /// With `K = supp_σ(w) ∩ J` and `w' = wτ⁻¹`: the longest element of
    /// `W_K w' W_{F(K)}` is `w₀(K) w'`, so the stratum closure is the closure
    /// of the classical Deligne-Lusztig variety of `w'`.
    pub longest_element_check: bool,
}

#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    /// `Some(all_smooth)` when the quadruple is in the known table.
    pub table_entry: Option<bool>,
    pub rows: Vec<SmoothnessRow>,
}

impl SmoothnessReport {
    pub fn all_smooth(&self) -> bool {
        self.rows.iter().all(|r| r.criterion_smooth)
    }
    pub fn longest_element_checks_hold(&self) -> bool {
        self.rows.iter().all(|r| r.longest_element_check)
    }
}

pub fn smoothness_report(q: &Quadruple, strata: &[StratumDatum]) -> Result<SmoothnessReport> {
    let d = &q.datum;
    let j = q.j();
    let tau_perm = d.conjugation_perm(&q.tau).expect("τ normalizes S̃");
    let tau_fixes_j = j.map(&tau_perm) == j;
    let f = q.tau_sigma_perm();
    let tau_inv = d.inverse(&q.tau);
    let mut rows = Vec::new();
    for s in strata {
        let length = d.length(&s.w);
        let (supp, _) = supp_sigma(q, &s.w)?;
        let k = supp.intersect(j);
        let wp = d.multiply(&s.w, &tau_inv);
        let top = d.max_double_coset_rep(k, &wp, k.map(&f))?;
        let candidate = d.multiply(&d.longest_element(k)?, &wp);
        rows.push(SmoothnessRow {
            sigma: s.sigma,
            word: s.word.clone(),
            length,
            tau_fixes_j,
            criterion_smooth: !tau_fixes_j || length <= 1,
            longest_element_check: top == candidate,
        });
    }
    Ok(SmoothnessReport {
        table_entry: smoothness_table_entry(q),
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct NewtonRow {
    pub word: Word,
    pub length: usize,
    /// Newton vector in reporting coordinates.
    pub nu: Vec<Rational64>,
    pub kappa: i64,
}

/// Straight elements outside `EO_cox` with their Newton vectors.
pub fn newton_table(q: &Quadruple, eo: &EoData) -> Vec<NewtonRow> {
    eo.elements
        .iter()
        .filter(|r| r.straight && !r.coxeter)
        .map(|r| NewtonRow {
            word: r.word.clone(),
            length: r.length,
            nu: display_coords(&q.datum, &r.newton.nu),
            kappa: r.newton.kappa,
        })
        .collect()
}

/// Order-theoretic checks on a quadruple's EO data.
#[derive(Clone, Debug)]
pub struct OrderReport {
    /// Newton classes meeting the EO set, ranked by `⟨ν̄, 2ρ⟩`, form an almost linear poset.
    pub newton_almost_linear: bool,
    /// On `EO_cox`, `≤_{J,σ}` equals Bruhat order.
    pub jsigma_equals_bruhat: bool,
    /// On `EO_cox`, `x < y ⟺ ℓ(x) < ℓ(y)`.
    pub jsigma_almost_linear: bool,
}

pub fn order_report(q: &Quadruple, eo: &EoData) -> Result<OrderReport> {
    let d = &q.datum;
    let classes: Vec<NewtonPoint> = eo.elements.iter().map(|r| r.newton.clone()).collect();
    let newton_almost_linear = newton_order(d, &classes).almost_linear;
    let cox: Vec<&EoRecord> = eo.coxeter().collect();
    let mut equal = true;
    let mut linear = true;
    for x in &cox {
        let orbit = twisted_orbit(d, q.j(), &x.element, &q.sigma)?;
        for y in &cox {
            let js = leq_from_orbit(d, &orbit, &y.element);
            if js != d.bruhat_leq(&x.element, &y.element) {
                equal = false;
            }
            let strict = js && x.element != y.element;
            if strict != (x.length < y.length) {
                linear = false;
            }
        }
    }
    Ok(OrderReport {
        newton_almost_linear,
        jsigma_equals_bruhat: equal,
        jsigma_almost_linear: linear,
    })
}

/// Whether the Bédard limit equals the fixpoint `I(J,w,σ)` for every EO element.
pub fn bedard_agrees(q: &Quadruple, eo: &EoData) -> Result<bool> {
    for r in &eo.elements {
        let seq = bedard_sequence(&q.datum, q.j(), &r.element, &q.sigma)?;
        let limit = seq.last().expect("sequence is nonempty").0;
        if limit != i_jwsigma(&q.datum, q.j(), &r.element, &q.sigma)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal representative helper exposed for reporting.
pub fn double_coset_min(q: &Quadruple, x: &AffElement) -> Result<AffElement> {
    q.datum.min_coset_rep(q.j(), x, Side::Double(q.j().map(&q.sigma.perm)))
}
