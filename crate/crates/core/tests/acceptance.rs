//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the expected data below is written out from closed formulas and lists,
//! independently of the library's search code.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use coxtype::classify::{canonical_key, order_report, CanonicalKey};
use coxtype::newton::display_coords;
use coxtype::*;

type Vector = Vec<Rational64>;

fn quad(f: &str, n: usize, lam: &str, v: usize, sigma: &str) -> Quadruple {
    Quadruple::from_specs(f, n, false, lam, v, sigma)
        .unwrap_or_else(|e| panic!("{f}{n} {lam} v={v} {sigma}: {e}"))
}

fn gl(size: usize, lam: &str, sigma: &str) -> Quadruple {
    quad("A", size - 1, lam, 0, sigma)
}

fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

/// `(x₁^{(k₁)}, x₂^{(k₂)}, …)`.
fn blocks(parts: &[(usize, Rational64)]) -> Vector {
    parts.iter().flat_map(|&(k, x)| std::iter::repeat_n(x, k)).collect()
}

fn fmt_vec(v: &[Rational64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn elem(q: &Quadruple, word: &str) -> AffElement {
    q.parse_word(word).unwrap_or_else(|e| panic!("{word}: {e}"))
}

fn elems(q: &Quadruple, words: &[String]) -> BTreeSet<AffElement> {
    words.iter().map(|w| elem(q, w)).collect()
}

struct Outcome {
    pass: bool,
    summary: String,
    problems: Vec<String>,
    /// Deviations forced by mutually contradictory source statements. They
    /// make the criterion FAIL, but each one is predicted exactly.
    known: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, summary: String::new(), problems: Vec::new(), known: Vec::new() }
    }
    fn known(&mut self, msg: String) {
        self.pass = false;
        self.known.push(msg);
    }
    fn fail(&mut self, msg: String) {
        self.pass = false;
        self.problems.push(msg);
    }
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }
}

// ---------------------------------------------------------------------------
// Expected classification.

/// The Coxeter-type quadruples with rank at most `max_rank`.
fn expected_rows(max_rank: usize) -> Vec<Quadruple> {
    let mut out = Vec::new();
    for size in 2..=max_rank + 1 {
        out.push(gl(size, "omega:1", "id"));
        if size >= 3 {
            out.push(gl(size, "omega:1", "sigma0"));
        }
    }
    for n in 3..=max_rank {
        out.push(quad("B", n, "omega:1", 0, "id"));
        out.push(quad("B", n, "omega:1", n, "id"));
        out.push(quad("B", n, "omega:1", n, "tau:1"));
    }
    for n in 2..=max_rank {
        out.push(quad("C", n, "omega:1", 0, "id"));
    }
    for n in 4..=max_rank {
        out.push(quad("D", n, "omega:1", 0, "id"));
        out.push(quad("D", n, "omega:1", 0, "sigma0"));
    }
    if max_rank >= 3 {
        out.push(gl(4, "omega:2", "id"));
        out.push(gl(4, "omega:2", "sigma0"));
    }
    if max_rank >= 2 {
        out.push(quad("C", 2, "omega:2", 0, "id"));
        out.push(quad("C", 2, "omega:2", 1, "id"));
        out.push(quad("C", 2, "omega:2", 1, "tau:2"));
    }
    out
}

/// Isomorphism class of a quadruple: the datum plus the orbit key.
fn key(q: &Quadruple) -> (String, CanonicalKey) {
    (q.datum.name(), canonical_key(q))
}

fn criterion_1(verdicts: &[ClassificationVerdict], elapsed: Duration) -> Outcome {
    let mut o = Outcome::new();
    let expected: BTreeMap<(String, CanonicalKey), String> =
        expected_rows(6).iter().map(|q| (key(q), q.label())).collect();
    let found: BTreeMap<(String, CanonicalKey), String> = verdicts
        .iter()
        .filter(|v| v.coxeter_type)
        .map(|v| (key(&v.quadruple), v.quadruple.label()))
        .collect();
    for (k, label) in &expected {
        o.check(found.contains_key(k), || format!("missing row {label}"));
    }
    for (k, label) in &found {
        o.check(expected.contains_key(k), || format!("extra positive {label}"));
    }
    for v in verdicts {
        o.check(v.coherent(), || format!("incoherent verdict for {}", v.quadruple.label()));
    }
    o.check(elapsed < Duration::from_secs(600), || format!("sweep took {elapsed:?}"));
    o.summary = format!(
        "{} quadruples swept, {} positives, {} expected rows, {:.1}s",
        verdicts.len(),
        found.len(),
        expected.len(),
        elapsed.as_secs_f64()
    );
    o
}

// ---------------------------------------------------------------------------
// Witnesses.

struct WitnessCase {
    q: Quadruple,
    /// Alternatives: at least one must be confirmed.
    words: Vec<String>,
    /// Printed elements that provably cannot serve: the predicted reason and
    /// a corrected element that must be confirmed instead.
    corrected: Option<(Deviation, String)>,
}

#[derive(Clone, Copy, Debug)]
enum Deviation {
    /// Translation part outside the convex hull of `W·μ` (signed-permutation bound).
    OutsideHull,
    /// Not below any `t^{wλ}` by the subword property.
    NotBelowTranslations,
    /// The first alternative is σ-Coxeter, the second is not `J`-minimal.
    CoxeterOrNotMinimal,
}

fn wc(q: Quadruple, words: &[&str]) -> WitnessCase {
    WitnessCase { q, words: words.iter().map(|s| s.to_string()).collect(), corrected: None }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn witness_cases(max_rank: usize) -> Vec<WitnessCase> {
    let mut out = Vec::new();
    // GL_N with ω_i, 2 ≤ i ≤ N/2.
    for size in 4..=max_rank + 1 {
        for i in 2..=size / 2 {
            let lam = format!("omega:{i}");
            if 2 * i < size {
                let w = format!("s0 s[{}..{}] tau", size - 1, size - gcd(size, i));
                out.push(wc(gl(size, &lam, "id"), &[&w]));
            } else if i >= 3 {
                let w = format!("s0 s1 s{} s0 tau", size - 1);
                out.push(wc(gl(size, &lam, "id"), &[&w]));
            }
            if i >= 3 || size > 4 {
                let w = format!("s0 s1 s{} s0 tau", size - 1);
                out.push(wc(gl(size, &lam, "sigma0"), &[&w]));
            }
        }
    }
    // B_n.
    for n in 3..=max_rank {
        for k in 1..=n {
            let lam = format!("omega:{k}");
            for v in 2..n {
                let w = format!("s[{n}..{v}]^-1 s[{}..{v}] tau", n - 1);
                out.push(wc(quad("B", n, &lam, v, "id"), &[&w]));
            }
            if k >= 2 {
                // τ is trivial exactly for even k.
                if k % 2 == 0 {
                    // The printed element ends in a second s0, which puts the
                    // translation 2ε₁ outside the convex hull of W·μ.
                    let w = format!("s0 s[{n}..2]^-1 s[{}..2] s0", n - 1);
                    let mut c = wc(quad("B", n, &lam, 0, "id"), &[&w]);
                    c.corrected = Some((Deviation::OutsideHull, format!("s0 s[{n}..2]^-1 s[{}..2]", n - 1)));
                    out.push(c);
                } else {
                    out.push(wc(quad("B", n, &lam, 0, "id"), &["s0 s2 s1 tau"]));
                }
                let w = format!("s{n} s{} s{n} tau", n - 1);
                out.push(wc(quad("B", n, &lam, n, "id"), &[&w]));
                out.push(wc(quad("B", n, &lam, n, "tau:1"), &[&w]));
            }
        }
    }
    // C_n.
    for n in 2..=max_rank {
        let mut case1: Vec<String> = (1..n).map(|k| format!("omega:{k}")).collect();
        case1.push(format!("2omega:{n}"));
        for lam in &case1 {
            for v in 1..=n / 2 {
                // `s_{[1,i]}` here is the ascending product `s₁ ⋯ s_i`.
                let w = format!("s[{v}..0] s[{v}..1]^-1 tau");
                out.push(wc(quad("C", n, lam, v, "id"), &[&w]));
                if 2 * v == n {
                    out.push(wc(quad("C", n, lam, v, &format!("tau:{n}")), &[&w]));
                }
            }
            if lam != "omega:1" {
                out.push(wc(quad("C", n, lam, 0, "id"), &["s0 s1 s0"]));
            }
        }
        let lam = format!("omega:{n}");
        for v in 1..=n / 2 {
            if 2 * v < n {
                let w = format!("s[{}..{v}]^-1 tau", n - v);
                out.push(wc(quad("C", n, &lam, v, "id"), &[&w]));
            } else if v > 1 {
                let w = format!("s{v} s{} s{} s{v} tau", v + 1, v - 1);
                out.push(wc(quad("C", n, &lam, v, "id"), &[&w]));
                out.push(wc(quad("C", n, &lam, v, &format!("tau:{n}")), &[&w]));
            }
        }
        if n > 2 {
            out.push(wc(quad("C", n, &lam, 0, "id"), &["s0 s1 s0 tau"]));
        }
    }
    // D_n.
    for n in 4..=max_rank {
        for v in 2..=n / 2 {
            let w = format!("s[{n}..{v}]^-1 s[{}..{v}] tau", n - 2);
            out.push(wc(quad("D", n, "omega:1", v, "id"), &[&w]));
            out.push(wc(quad("D", n, "omega:1", v, "sigma0"), &[&w]));
        }
        let lam = format!("omega:{n}");
        for v in 2..=n / 2 {
            if 2 * v < n {
                let w = format!("s[{}..{v}]^-1 tau", n - v);
                out.push(wc(quad("D", n, &lam, v, "id"), &[&w]));
            } else {
                let w = format!("s{v} s{} s{} s{v} tau", v + 1, v - 1);
                out.push(wc(quad("D", n, &lam, v, "id"), &[&w]));
            }
        }
        if n > 4 {
            let mut c = wc(quad("D", n, &lam, 0, "id"), &["s0 s2 s1 tau", "s0 s2 s1 s0 tau"]);
            if n % 2 == 0 {
                // τσ pairs 0↔n, 1↔n−1, 2↔n−2, so s0 s2 s1 τ is σ-Coxeter.
                c.corrected = Some((Deviation::CoxeterOrNotMinimal, "s0 s2 s3 s4 tau".to_string()));
            }
            out.push(c);
        }
    }
    if max_rank >= 4 {
        // Triality twists moving vertex 1; the Ω-component of an EO element is τ.
        let d = Arc::new(RootDatum::standard(Family::D, 4).unwrap());
        for s in d.all_autos() {
            if s.perm[0] == 0 && s.perm[1] != 1 {
                let q = Quadruple::new(d.clone(), LambdaSpec::Omega(1), 0, s).unwrap();
                out.push(wc(q, &["s0 s2 s3 tau", "s0 s2 s4 tau"]));
            }
        }
    }
    if max_rank >= 6 {
        let mut c = wc(quad("E", 6, "omega:1", 0, "id"), &["s0 s2 s4 s3 s1 tau"]);
        c.corrected = Some((Deviation::NotBelowTranslations, "s0 s2 s4 s3 tau".to_string()));
        out.push(c);
        out.push(wc(quad("E", 6, "omega:1", 2, "id"), &["s2 s4 s5 tau", "s2 s4 s3 tau"]));
        out.push(wc(quad("E", 6, "omega:1", 4, "id"), &["s4 s3 s5 s4 tau"]));
    }
    if max_rank >= 4 {
        out.push(wc(quad("F", 4, "omega:1", 0, "id"), &["s0 s1 s2 s3 s2 s1"]));
        out.push(wc(quad("F", 4, "omega:1", 1, "id"), &["s1 s2 s3 s2"]));
        out.push(wc(quad("F", 4, "omega:1", 2, "id"), &["s2 s3 s2"]));
        out.push(wc(quad("F", 4, "omega:1", 3, "id"), &["s3 s2 s3"]));
        out.push(wc(quad("F", 4, "omega:1", 4, "id"), &["s4 s3 s2 s3"]));
    }
    out.push(wc(quad("G", 2, "omega:2", 0, "id"), &["s0 s2 s1 s2"]));
    out.push(wc(quad("G", 2, "omega:2", 1, "id"), &["s1 s2 s1 s0"]));
    out.push(wc(quad("G", 2, "omega:2", 2, "id"), &["s2 s1 s2 s0"]));
    out
}

/// The E7 cases, stated for the minuscule coweight.
fn e7_cases() -> Vec<WitnessCase> {
    vec![
        wc(quad("E", 7, "omega:7", 0, "id"), &["s0 s1 s3 s4 s2 s5 s4 s3 s1 s0 tau"]),
        wc(quad("E", 7, "omega:7", 1, "id"), &["s1 s3 s4 s5 s6 tau"]),
        wc(quad("E", 7, "omega:7", 2, "id"), &["s2 s4 s3 s5 s4 s2 tau"]),
        wc(quad("E", 7, "omega:7", 3, "id"), &["s3 s4 s5 tau"]),
        wc(quad("E", 7, "omega:7", 4, "id"), &["s4 s2 s5 s4 tau"]),
    ]
}

/// Sufficient test for `x ∉ Adm(μ)` in ε-coordinates: the Weyl group acts by
/// signed permutations, so every translation part of `Adm(μ)` is bounded by
/// the largest coordinate of `μ`.
fn outside_hull(q: &Quadruple, x: &AffElement) -> bool {
    let d = &q.datum;
    let eps = |v: &[i32]| -> Rational64 {
        let v: Vec<Rational64> = v[..d.dim].iter().map(|&c| Rational64::from_integer(c as i64)).collect();
        display_coords(d, &v).iter().map(|c| if *c < r(0, 1) { -*c } else { *c }).max().unwrap()
    };
    eps(x.translation_part()) > eps(q.lambda_coweight())
}

/// `x ∉ Adm(μ)` by the subword property on reduced words of every `t^{wλ}`.
fn not_below_translations(q: &Quadruple, x: &AffElement) -> bool {
    let d = &q.datum;
    !d.weyl_orbit(q.lambda_coweight()).iter().any(|lam| {
        let (word, om) = d.split_omega(&AffElement::translation(*lam));
        subword_products(d, &word).iter().any(|y| d.multiply(y, &om) == *x)
    })
}

fn deviation_holds(c: &WitnessCase, dev: Deviation) -> bool {
    let q = &c.q;
    let xs: Vec<AffElement> = c.words.iter().map(|w| elem(q, w)).collect();
    match dev {
        Deviation::OutsideHull => xs.iter().all(|x| outside_hull(q, x)),
        Deviation::NotBelowTranslations => xs.iter().all(|x| not_below_translations(q, x)),
        Deviation::CoxeterOrNotMinimal => {
            is_sigma_coxeter(q, &xs[0]).unwrap() && !q.datum.left_descents(&xs[1]).is_subset(NodeSet::from_slice(&[q.removed]))
        }
    }
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let mut cases = witness_cases(6);
    cases.extend(e7_cases());
    let status = |q: &Quadruple, w: &str| verify_witness(q, &Word::parse(w).unwrap()).unwrap().status;
    let results: Vec<(String, Vec<(String, WitnessStatus)>, Option<(String, WitnessStatus, bool)>, bool)> = cases
        .par_iter()
        .map(|c| {
            let statuses: Vec<(String, WitnessStatus)> = c.words.iter().map(|w| (w.clone(), status(&c.q, w))).collect();
            let corrected = c.corrected.as_ref().map(|(dev, w)| (w.clone(), status(&c.q, w), deviation_holds(c, *dev)));
            let verdict = check_conditions(&c.q).unwrap();
            (c.q.label(), statuses, corrected, verdict.cc)
        })
        .collect();
    let mut confirmed = 0;
    for (label, statuses, corrected, cc) in &results {
        if statuses.iter().any(|(_, s)| *s == WitnessStatus::Confirmed) {
            confirmed += 1;
        } else {
            match corrected {
                Some((w, WitnessStatus::Confirmed, true)) => {
                    let dev = cases.iter().find(|c| &c.q.label() == label).and_then(|c| c.corrected.as_ref()).unwrap().0;
                    o.known(format!("{label}: printed {statuses:?} fail ({dev:?}); {w} is confirmed"))
                }
                _ => o.fail(format!("{label}: {statuses:?} corrected {corrected:?}")),
            }
        }
        o.check(!cc, || format!("{label}: classifier reports (CC) holding"));
    }
    o.summary = format!("{confirmed}/{} printed witnesses confirmed", results.len());
    o
}

// ---------------------------------------------------------------------------
// Newton tables and EO lists.

/// Non-Coxeter EO elements with their Newton vectors, from the closed formulas.
fn expected_newton(q: &Quadruple) -> Vec<(String, Vector)> {
    let d = &q.datum;
    let n = d.rank;
    let sig = q.sigma.label.as_str();
    let half = r(1, 2);
    let zero = r(0, 1);
    let one = r(1, 1);
    let mut out = Vec::new();
    match (d.family, q.lambda, q.removed) {
        (Family::A, LambdaSpec::Omega(1), 0) => {
            let size = d.dim;
            if sig == "id" {
                for i in 2..=size {
                    let nu = blocks(&[(i - 1, r(1, i as i64 - 1)), (size - i + 1, zero)]);
                    out.push((format!("s0 s[{}..{i}] tau", size - 1), nu));
                }
            } else {
                for i in 2..=(size + 2) / 2 {
                    let den = 2 * (i as i64 - 1);
                    let nu = blocks(&[
                        (i - 1, r(i as i64, den)),
                        (size + 2 - 2 * i, half),
                        (i - 1, r(i as i64 - 2, den)),
                    ]);
                    out.push((format!("s0 s[{}..{i}] tau", size - 1), nu));
                }
            }
        }
        (Family::A, LambdaSpec::Omega(2), 0) => {
            if sig == "id" {
                out.push(("s0 s1 tau".into(), blocks(&[(3, r(2, 3)), (1, zero)])));
                out.push(("s0 s3 tau".into(), blocks(&[(1, one), (3, r(1, 3))])));
            }
            out.push(("s0 s1 s3 tau".into(), blocks(&[(1, one), (2, half), (1, zero)])));
            out.push(("s0 s1 s3 s0 tau".into(), blocks(&[(2, one), (2, zero)])));
        }
        (Family::B, LambdaSpec::Omega(1), 0) => {
            for i in 1..=n {
                let nu = blocks(&[(i, r(1, i as i64)), (n - i, zero)]);
                out.push((format!("s0 s[{n}..2]^-1 tau s[{}..{i}]", n - 1), nu));
            }
        }
        (Family::B, LambdaSpec::Omega(1), v) if v == n => {
            if sig == "id" {
                let nu = blocks(&[(n, r(1, n as i64))]);
                out.push((format!("s[{n}..2] s1 tau"), nu.clone()));
                out.push((format!("s[{n}..2] s0 tau"), nu));
            }
            for i in 1..n {
                let nu = blocks(&[(n - i, r(1, (n - i) as i64)), (i, zero)]);
                out.push((format!("s[{n}..0] s[{i}..2]^-1 tau"), nu));
            }
        }
        (Family::C, LambdaSpec::Omega(1), 0) => {
            for i in 1..=n {
                let nu = blocks(&[(i, r(1, i as i64)), (n - i, zero)]);
                out.push((format!("s[{n}..0]^-1 s[{}..{i}]", n - 1), nu));
            }
        }
        (Family::C, LambdaSpec::Omega(2), 0) => {
            out.push(("s0 s1 tau".into(), vec![half, zero]));
            out.push(("s0 s1 s0 tau".into(), vec![half, half]));
        }
        (Family::C, LambdaSpec::Omega(2), 1) => {
            if sig == "id" {
                out.push(("s1 s2 tau".into(), vec![half, zero]));
                out.push(("s1 s0 tau".into(), vec![half, zero]));
            }
            out.push(("s1 s2 s0 tau".into(), vec![half, half]));
        }
        (Family::D, LambdaSpec::Omega(1), 0) => {
            if sig == "id" {
                let nu = blocks(&[(n, r(1, n as i64))]);
                out.push((format!("s0 s[{}..2]^-1 s{} tau", n - 2, n - 1), nu.clone()));
                out.push((format!("s0 s[{}..2]^-1 s{n} tau", n - 2), nu));
            }
            for i in 1..n {
                let nu = blocks(&[(i, r(1, i as i64)), (n - i, zero)]);
                out.push((format!("s0 s[{n}..2]^-1 tau s[{}..{i}]", n - 2), nu));
            }
        }
        _ => panic!("no Newton table for {}", q.label()),
    }
    out
}

fn criterion_3(rows: &[(Quadruple, EoData)]) -> Outcome {
    let mut o = Outcome::new();
    let mut vectors = 0;
    for (q, eo) in rows {
        let expected: BTreeMap<AffElement, (String, Vector)> = expected_newton(q)
            .into_iter()
            .map(|(w, nu)| (elem(q, &w), (w, nu)))
            .collect();
        let computed: BTreeMap<AffElement, &EoRecord> =
            eo.elements.iter().filter(|r| !r.coxeter).map(|r| (r.element, r)).collect();
        for (x, (w, nu)) in &expected {
            match computed.get(x) {
                None => o.fail(format!("{}: {w} is not a non-Coxeter EO element", q.label())),
                Some(rec) => {
                    vectors += 1;
                    let got = display_coords(&q.datum, &rec.newton.nu);
                    if &got != nu {
                        // The two elements ending in s_{n-1} and s_n are swapped by
                        // the diagram automorphism ε_n ↦ −ε_n, so their Newton
                        // points cannot both be (1/n, …, 1/n).
                        let mut flipped = nu.clone();
                        if let Some(last) = flipped.last_mut() {
                            *last = -*last;
                        }
                        if q.datum.family == Family::D && got == flipped {
                            o.known(format!("{}: ν({w}) = {} (last sign flipped)", q.label(), fmt_vec(&got)));
                        } else {
                            o.fail(format!("{}: ν({w}) = {}, expected {}", q.label(), fmt_vec(&got), fmt_vec(nu)));
                        }
                    }
                    o.check(rec.straight, || format!("{}: {w} is not σ-straight", q.label()));
                }
            }
        }
        for (x, rec) in &computed {
            o.check(expected.contains_key(x), || format!("{}: unexpected non-Coxeter element {}", q.label(), rec.word));
        }
    }
    o.summary = format!("{vectors} Newton vectors over {} quadruples", rows.len());
    o
}

struct EoListing {
    q: Quadruple,
    cox: Vec<String>,
    non_cox: Vec<String>,
    /// Full `EO^J(μ)` when it is taken from the companion twist's listing.
    full_from: Option<Quadruple>,
}

fn eo_listings() -> Vec<EoListing> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = vec![
        EoListing {
            q: quad("C", 2, "omega:2", 0, "id"),
            cox: s(&["tau", "s0 tau"]),
            non_cox: s(&["s0 s1 tau", "s0 s1 s0 tau"]),
            full_from: None,
        },
        EoListing {
            q: quad("C", 2, "omega:2", 1, "id"),
            cox: s(&["tau", "s1 tau"]),
            non_cox: s(&["s1 s0 tau", "s1 s2 s0 tau"]),
            full_from: Some(quad("C", 2, "omega:2", 1, "tau:2")),
        },
        EoListing {
            q: quad("C", 2, "omega:2", 1, "tau:2"),
            cox: s(&["tau", "s1 tau", "s1 s2 tau", "s1 s0 tau"]),
            non_cox: s(&["s1 s2 s0 tau"]),
            full_from: None,
        },
        EoListing {
            q: gl(4, "omega:2", "id"),
            cox: s(&["tau", "s0 tau"]),
            non_cox: s(&["s0 s1 tau", "s0 s3 tau", "s0 s1 s3 tau", "s0 s1 s3 s0 tau"]),
            full_from: None,
        },
        EoListing {
            q: gl(4, "omega:2", "sigma0"),
            cox: s(&["tau", "s0 tau", "s0 s1 tau", "s0 s3 tau"]),
            non_cox: s(&["s0 s1 s3 tau", "s0 s1 s3 s0 tau"]),
            full_from: None,
        },
    ];
    for n in 3..=5 {
        let mut cox = vec!["tau".to_string()];
        cox.extend((1..n).map(|k| format!("s0 s[{k}..2]^-1 tau")));
        let non = (1..=n).map(|i| format!("s0 s[{n}..2]^-1 tau s[{}..{i}]", n - 1)).collect();
        out.push(EoListing { q: quad("B", n, "omega:1", 0, "id"), cox, non_cox: non, full_from: None });

        let chain: Vec<String> = (2..=n + 1).rev().map(|k| format!("s[{n}..{k}] tau")).collect();
        let pair = vec![format!("s[{n}..2] s1 tau"), format!("s[{n}..2] s0 tau")];
        let mut non: Vec<String> = pair.clone();
        non.extend((2..n).map(|i| format!("s[{n}..0] s[{i}..2]^-1 tau")));
        out.push(EoListing {
            q: quad("B", n, "omega:1", n, "id"),
            cox: chain.clone(),
            non_cox: non,
            full_from: Some(quad("B", n, "omega:1", n, "tau:1")),
        });
        let mut cox = chain;
        cox.extend(pair);
        let non = (1..n).map(|i| format!("s[{n}..0] s[{i}..2]^-1 tau")).collect();
        out.push(EoListing { q: quad("B", n, "omega:1", n, "tau:1"), cox, non_cox: non, full_from: None });
    }
    out
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let listings = eo_listings();
    let by_label: HashMap<String, &EoListing> = listings.iter().map(|l| (l.q.label(), l)).collect();
    for l in &listings {
        let q = &l.q;
        let eo = eo_set(q).unwrap();
        let got_all: BTreeSet<AffElement> = eo.elements.iter().map(|r| r.element).collect();
        let got_cox: BTreeSet<AffElement> = eo.coxeter().map(|r| r.element).collect();
        let cox = elems(q, &l.cox);
        let listed: BTreeSet<AffElement> = cox.union(&elems(q, &l.non_cox)).copied().collect();
        o.check(got_cox == cox, || {
            format!("{}: EO_cox = {:?}, expected {:?}", q.label(), eo.coxeter_words(), l.cox)
        });
        if got_all != listed {
            // EO^J(μ) does not depend on σ; a listing that disagrees with its
            // companion twist cannot be matched by any implementation.
            let companion = l.full_from.as_ref().map(|c| {
                let comp = by_label[&c.label()];
                let all: Vec<String> = comp.cox.iter().chain(&comp.non_cox).cloned().collect();
                (c.sigma.label.clone(), elems(q, &all))
            });
            match companion {
                Some((sig, full)) if full == got_all => {
                    let extra: Vec<String> = got_all.difference(&listed).map(|x| q.word(x).to_string()).collect();
                    let lost: Vec<String> = listed.difference(&got_all).map(|x| q.word(x).to_string()).collect();
                    if lost.is_empty() {
                        o.known(format!(
                            "{}: listing omits {}, which the sigma={sig} listing of the same EO set contains",
                            q.label(),
                            extra.join(", ")
                        ));
                    } else {
                        o.fail(format!("{}: listed elements missing: {lost:?}", q.label()));
                    }
                }
                _ => o.fail(format!("{}: EO = {:?}", q.label(), eo.words())),
            }
        }
        for r in &eo.elements {
            o.check(r.coxeter || r.straight, || format!("{}: {} is neither Coxeter nor straight", q.label(), r.word));
        }
    }
    o.summary = format!("{} EO listings", listings.len());
    o
}

// ---------------------------------------------------------------------------
// Orders, strata, basic loci, smoothness.

fn criterion_5(rows: &[(Quadruple, EoData)]) -> Outcome {
    let mut o = Outcome::new();
    let reports: Vec<(String, Result<coxtype::classify::OrderReport>)> =
        rows.par_iter().map(|(q, eo)| (q.label(), order_report(q, eo))).collect();
    for (label, rep) in reports {
        match rep {
            Err(e) => o.fail(format!("{label}: {e}")),
            Ok(r) => {
                o.check(r.newton_almost_linear, || format!("{label}: Newton poset not almost linear"));
                o.check(r.jsigma_equals_bruhat, || format!("{label}: ≤_(J,σ) differs from Bruhat"));
                o.check(r.jsigma_almost_linear, || format!("{label}: ≤_(J,σ) not almost linear"));
            }
        }
    }
    o.summary = format!("{} quadruples, exhaustive pair checks", rows.len());
    o
}

fn orbits(perm: &[usize]) -> Vec<NodeSet> {
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

/// The triples `(Σ, Σ^♭, Σ^♯)` listed for `(B̃_m, ω₁, S̃ − {m}, τ₁)`.
fn b_tau_triples(m: usize) -> BTreeSet<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut out = BTreeSet::new();
    for i in 2..=m {
        out.insert((vec![i], (i + 1..=m).collect(), (0..i).collect()));
    }
    out.insert((vec![0], (1..=m).collect(), vec![]));
    let mut f: Vec<usize> = vec![0];
    f.extend(2..=m);
    out.insert((vec![1], f, vec![]));
    out.insert((vec![0, 1], (2..=m).collect(), vec![]));
    out
}

fn criterion_6(rows: &[(Quadruple, EoData)]) -> Outcome {
    let mut o = Outcome::new();
    let mut strata_count = 0;
    let mut min_variant = Vec::new();
    for (q, eo) in rows {
        let d = &q.datum;
        let label = q.label();
        let rep = match strata_index_set(q, eo) {
            Ok(r) => r,
            Err(e) => {
                o.fail(format!("{label}: {e}"));
                continue;
            }
        };
        if rep.variant == IndexVariant::MinDistance {
            min_variant.push(label.clone());
        }
        strata_count += rep.strata.len();
        let cox: Vec<&EoRecord> = eo.coxeter().collect();
        o.check(rep.strata.len() == cox.len(), || format!("{label}: strata/Coxeter count mismatch"));
        for s in &rep.strata {
            let all = s.sigma.union(s.flat).union(s.sharp);
            let disjoint = s.sigma.len() + s.flat.len() + s.sharp.len() == all.len();
            o.check(disjoint && all == d.all_nodes(), || format!("{label}: Σ={} is not a partition", s.sigma));
            let edge = s.flat.iter().any(|a| s.sharp.iter().any(|b| d.adjacent(a, b)));
            o.check(!edge, || format!("{label}: Σ={} complements are connected", s.sigma));
            let matching: Vec<&&EoRecord> = cox
                .iter()
                .filter(|r| supp_sigma(q, &r.element).unwrap().0 == s.flat)
                .collect();
            o.check(matching.len() == 1 && matching[0].element == s.w, || {
                format!("{label}: Σ={}: {} Coxeter elements with support Σ♭", s.sigma, matching.len())
            });
            o.check(d.length(&s.w) == s.length, || format!("{label}: recorded length of w_Σ is wrong"));
            if s.length != s.d {
                // Σ^♭ contains an orbit at the same distance as Σ, so
                // ℓ(w_Σ), the number of orbits in Σ^♭, exceeds d(Σ).
                let orbs = orbits(&q.tau_sigma_perm());
                let dist = d.distances_from(q.removed);
                let od = |o: &NodeSet| o.iter().map(|v| dist[v]).min().unwrap();
                let sibling = orbs.iter().any(|o| o.intersect(s.sigma).is_empty() && od(o) == s.d);
                let in_flat = orbs.iter().filter(|o| o.is_subset(s.flat)).count();
                if sibling && in_flat == s.length {
                    o.known(format!(
                        "{label}: Σ={} has ℓ(w_Σ)={} but d(Σ)={}: an orbit at the same distance lies in Σ♭",
                        s.sigma, s.length, s.d
                    ));
                } else {
                    o.fail(format!("{label}: ℓ(w_Σ)={} ≠ d(Σ)={} for Σ={}", s.length, s.d, s.sigma));
                }
            }
            let i = i_jwsigma(d, q.j(), &s.w, &q.sigma).unwrap();
            o.check(i == s.sharp, || format!("{label}: I(J,w_Σ,σ) = {i}, Σ♯ = {}", s.sharp));
        }
        let cl = closure_poset(q, &rep.strata).unwrap();
        for a in 0..rep.strata.len() {
            for b in 0..rep.strata.len() {
                if a == b {
                    continue;
                }
                let js = leq_j_sigma(d, q.j(), &rep.strata[a].w, &rep.strata[b].w, &q.sigma).unwrap();
                o.check(js == cl.relations.contains(&(a, b)), || {
                    format!("{label}: closure relation {a}<{b} disagrees with ≤_(J,σ)")
                });
            }
        }
        o.check(cl.agrees_with_leq_j_sigma, || format!("{label}: closure poset flag"));
    }
    for m in 3..=6 {
        let q = quad("B", m, "omega:1", m, "tau:1");
        let eo = eo_set(&q).unwrap();
        let got: BTreeSet<(Vec<usize>, Vec<usize>, Vec<usize>)> = strata_index_set(&q, &eo)
            .unwrap()
            .strata
            .iter()
            .map(|s| (s.sigma.to_vec(), s.flat.to_vec(), s.sharp.to_vec()))
            .collect();
        o.check(got == b_tau_triples(m), || format!("B{m} tau:1 triples: {got:?}"));
    }
    o.summary = format!(
        "{strata_count} strata over {} quadruples; B̃_m/τ₁ triples m=3..6; min-distance index rule for {} quadruples",
        rows.len(),
        min_variant.len()
    );
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let basic = |q: &Quadruple| -> (Vec<(AffElement, usize)>, usize) {
        let eo = eo_set(q).unwrap();
        let labels = basic_locus_eo(q, &eo);
        let undecided = labels.iter().filter(|l| l.2 == BasicLabel::Undecided).count();
        let b = labels
            .iter()
            .filter(|l| l.2 == BasicLabel::Basic)
            .map(|l| (q.datum.eval_word(&l.0, Some(&q.tau)).unwrap(), l.1))
            .collect();
        (b, undecided)
    };
    for m in 2..=5 {
        let q = quad("C", m, "omega:1", m, "id");
        let (b, und) = basic(&q);
        let mut lens: Vec<usize> = b.iter().map(|x| x.1).collect();
        lens.sort();
        o.check(und == 0, || format!("{}: {und} undecided", q.label()));
        o.check(lens == (0..=m).collect::<Vec<_>>(), || format!("{}: basic lengths {lens:?}", q.label()));
    }
    for m in 3..=5 {
        let q = quad("B", m, "omega:1", m, "tau:1");
        let (b, und) = basic(&q);
        let mut lens: Vec<usize> = b.iter().map(|x| x.1).collect();
        lens.sort();
        let mut want: Vec<usize> = (0..=m).collect();
        want.push(m);
        o.check(und == 0, || format!("{}: {und} undecided", q.label()));
        o.check(lens == want, || format!("{}: basic lengths {lens:?}", q.label()));
    }
    let q = quad("C", 2, "omega:1", 1, "id");
    let (b, und) = basic(&q);
    let words: Vec<String> = ["1", "s1", "s1 s0", "s1 s2", "s1 s0 s1", "s1 s2 s1"].iter().map(|s| s.to_string()).collect();
    let got: BTreeSet<AffElement> = b.iter().map(|x| x.0).collect();
    o.check(und == 0, || format!("{}: {und} undecided", q.label()));
    o.check(got == elems(&q, &words), || format!("{}: basic elements differ", q.label()));
    let eo = eo_set(&q).unwrap();
    for w in ["s1 s0 s1", "s1 s2 s1"] {
        let x = elem(&q, w);
        o.check(eo.find(&x).is_some_and(|r| !r.coxeter), || format!("{w} should be a non-Coxeter EO element"));
    }
    o.summary = "C̃_m m=2..5, B̃_m/τ₁ m=3..5, C̃₂ S̃−{1}".to_string();
    o
}

// ---------------------------------------------------------------------------
// Oracles.

/// Ball of radius `r` in `W_a` with BFS distances and one reduced word each.
fn ball(d: &RootDatum, radius: usize) -> Vec<(AffElement, Vec<usize>)> {
    let id = AffElement::translation([0; MAX_DIM]);
    let mut seen: HashMap<AffElement, usize> = HashMap::from([(id, 0)]);
    let mut out = vec![(id, Vec::new())];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let (x, word) = out[k].clone();
        if word.len() == radius {
            continue;
        }
        for i in 0..d.num_nodes() {
            let y = d.right_mul_gen(&x, i);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(y) {
                e.insert(out.len());
                let mut w = word.clone();
                w.push(i);
                queue.push_back(out.len());
                out.push((y, w));
            }
        }
    }
    out
}

fn subword_products(d: &RootDatum, word: &[usize]) -> HashSet<AffElement> {
    let mut acc: HashSet<AffElement> = HashSet::from([AffElement::translation([0; MAX_DIM])]);
    for &i in word {
        let next: Vec<AffElement> = acc.iter().map(|x| d.right_mul_gen(x, i)).collect();
        acc.extend(next);
    }
    acc
}

fn criterion_8(verdicts: &[ClassificationVerdict]) -> Outcome {
    let mut o = Outcome::new();
    let data: Vec<RootDatum> = vec![
        RootDatum::new(Family::A, 1, LatticeModel::Gl).unwrap(),
        RootDatum::new(Family::A, 2, LatticeModel::Gl).unwrap(),
        RootDatum::new(Family::A, 3, LatticeModel::Gl).unwrap(),
        RootDatum::new(Family::A, 3, LatticeModel::Adjoint).unwrap(),
        RootDatum::standard(Family::B, 3).unwrap(),
        RootDatum::standard(Family::C, 2).unwrap(),
        RootDatum::standard(Family::C, 3).unwrap(),
        RootDatum::standard(Family::G, 2).unwrap(),
    ];
    let mut pairs = 0usize;
    for d in &data {
        let b = ball(d, 6);
        let omegas: Vec<AffElement> = d.omega_group().iter().map(|w| w.element).collect();
        for (x, w) in &b {
            for om in &omegas {
                let xo = d.multiply(x, om);
                o.check(d.length(&xo) == w.len(), || format!("{}: length mismatch for {:?}", d.name(), w));
            }
        }
        let results: Vec<Vec<String>> = b
            .par_iter()
            .map(|(w, word)| {
                let below = subword_products(d, word);
                let mut bad = Vec::new();
                for (x, xw) in &b {
                    if d.bruhat_leq(x, w) != below.contains(x) {
                        bad.push(format!("{}: {:?} ≤ {:?}", d.name(), xw, word));
                    }
                }
                bad
            })
            .collect();
        pairs += b.len() * b.len();
        for bad in results.into_iter().flatten().take(5) {
            o.fail(bad);
        }
        // Ω-twisted pairs: comparable only with equal Ω-components.
        let identity = AffElement::translation([0; MAX_DIM]);
        if let Some(om) = omegas.iter().find(|w| **w != identity) {
            for (w, word) in b.iter().take(60) {
                let below = subword_products(d, word);
                let wo = d.multiply(w, om);
                for (x, _) in b.iter().take(200) {
                    let xo = d.multiply(x, om);
                    o.check(d.bruhat_leq(&xo, &wo) == below.contains(x), || format!("{}: twisted pair", d.name()));
                    o.check(!d.bruhat_leq(x, &wo), || format!("{}: cross-component pair", d.name()));
                }
            }
        }
    }

    // Bédard limit, I(J,w,σ) fixpoint and a brute-force maximum over subsets of J.
    let bedard: Vec<String> = verdicts
        .par_iter()
        .flat_map_iter(|v| {
            let q = &v.quadruple;
            let d = &q.datum;
            let j = q.j();
            let subsets: Vec<NodeSet> = (0u32..1 << j.len())
                .map(|mask| {
                    NodeSet::from_slice(
                        &j.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, i)| i).collect::<Vec<_>>(),
                    )
                })
                .collect();
            let mut bad = Vec::new();
            for r in &v.eo.elements {
                let seq = bedard_sequence(d, j, &r.element, &q.sigma).unwrap();
                let limit = seq.last().unwrap().0;
                let fix = i_jwsigma(d, j, &r.element, &q.sigma).unwrap();
                let brute = subsets
                    .iter()
                    .filter(|k| {
                        let img: Vec<Option<usize>> =
                            k.iter().map(|i| d.conjugate_simple(&r.element, q.sigma.perm[i])).collect();
                        img.iter().all(|t| t.is_some_and(|t| k.contains(t)))
                    })
                    .fold(NodeSet::EMPTY, |acc, k| acc.union(*k));
                if limit != fix || fix != brute {
                    bad.push(format!("{} {}: limit {limit}, fixpoint {fix}, brute {brute}", q.label(), r.word));
                }
            }
            bad
        })
        .collect();
    let eo_total: usize = verdicts.iter().map(|v| v.eo.elements.len()).sum();
    for b in bedard.iter().take(5) {
        o.fail(b.clone());
    }

    // σ-conjugation invariance of the Newton point.
    let pool: Vec<Arc<RootDatum>> = coxtype::classify::sweep_data(6);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let samples = 10_000;
    let mut newton_bad = 0;
    for _ in 0..samples {
        let d = &pool[rng.gen_range(0..pool.len())];
        let autos = d.all_autos();
        let sigma = &autos[rng.gen_range(0..autos.len())];
        let omegas = d.omega_group();
        let mut random_elem = |with_omega: bool, len: usize| {
            let mut x = AffElement::translation([0; MAX_DIM]);
            for _ in 0..len {
                x = d.right_mul_gen(&x, rng.gen_range(0..d.num_nodes()));
            }
            if with_omega {
                x = d.multiply(&x, &omegas[rng.gen_range(0..omegas.len())].element);
            }
            x
        };
        let x = random_elem(true, 10);
        let y = random_elem(false, 8);
        let conj = d.multiply(&d.multiply(&y, &x), &d.inverse(&d.sigma_apply(sigma, &y)));
        let a = newton_point(d, &x, sigma).unwrap();
        let b = newton_point(d, &conj, sigma).unwrap();
        if a != b {
            newton_bad += 1;
            if newton_bad <= 3 {
                o.fail(format!("{}: ν changes under σ-conjugation ({:?} vs {:?})", d.name(), a.nu, b.nu));
            }
        }
    }
    o.check(newton_bad == 0, || format!("{newton_bad} Newton conjugation failures"));
    o.summary = format!(
        "length/Bruhat on radius-6 balls ({pairs} pairs), Bédard on {eo_total} EO elements, {samples} Newton conjugations"
    );
    o
}

fn criterion_9(rows: &[(Quadruple, EoData)]) -> Outcome {
    let mut o = Outcome::new();
    // Rows of the smoothness table with their (*) markings.
    let mut table: Vec<(Quadruple, bool)> = Vec::new();
    for size in 2..=7 {
        table.push((gl(size, "omega:1", "id"), true));
        if size >= 3 {
            table.push((gl(size, "omega:1", "sigma0"), true));
        }
    }
    for n in 3..=6 {
        table.push((quad("B", n, "omega:1", n, "id"), false));
        table.push((quad("B", n, "omega:1", n, "tau:1"), false));
    }
    for n in 2..=6 {
        table.push((quad("C", n, "omega:1", 0, "id"), false));
    }
    table.push((gl(4, "omega:2", "id"), true));
    table.push((gl(4, "omega:2", "sigma0"), true));
    table.push((quad("C", 2, "omega:2", 0, "id"), true));
    table.push((quad("C", 2, "omega:2", 1, "id"), true));
    table.push((quad("C", 2, "omega:2", 1, "tau:2"), false));
    let starred: HashMap<(String, CanonicalKey), bool> = table.iter().map(|(q, s)| (key(q), *s)).collect();
    let mut checked = 0;
    for (q, eo) in rows {
        let label = q.label();
        let strata = strata_index_set(q, eo).unwrap().strata;
        let rep = smoothness_report(q, &strata).unwrap();
        let want = starred.get(&key(q)).copied();
        o.check(rep.table_entry == want, || format!("{label}: table entry {:?}, expected {want:?}", rep.table_entry));
        let tau_perm = q.datum.conjugation_perm(&q.tau).unwrap();
        let j = q.j();
        let tau_moves_j = j.map(&tau_perm) != j;
        for row in &rep.rows {
            let smooth = tau_moves_j || q.datum.length(&elem(q, &row.word.to_string())) <= 1;
            o.check(row.criterion_smooth == smooth, || format!("{label}: Σ={} smoothness", row.sigma));
        }
        if let Some(star) = want {
            checked += 1;
            o.check(rep.all_smooth() == star, || format!("{label}: all smooth = {}, marked {star}", rep.all_smooth()));
        }
        o.check(rep.longest_element_checks_hold(), || format!("{label}: longest double coset element check fails"));
    }
    o.check(checked == table.len(), || format!("{checked} of {} table rows reached", table.len()));
    o.summary = format!("{checked} table rows, {} quadruples", rows.len());
    o
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let verdicts = sweep(6).expect("sweep");
    let elapsed = start.elapsed();
    let rows: Vec<(Quadruple, EoData)> = expected_rows(6)
        .into_par_iter()
        .map(|q| {
            let eo = eo_set(&q).unwrap();
            (q, eo)
        })
        .collect();

    let outcomes = vec![
        criterion_1(&verdicts, elapsed),
        criterion_2(),
        criterion_3(&rows),
        criterion_4(),
        criterion_5(&rows),
        criterion_6(&rows),
        criterion_7(),
        criterion_8(&verdicts),
        criterion_9(&rows),
    ];
    let mut unexpected = 0;
    for (k, o) in outcomes.iter().enumerate() {
        let mut line = format!("criterion {}: {} ({})", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.summary);
        if !o.known.is_empty() {
            line += &format!("; {} deviations forced by contradictory source statements", o.known.len());
        }
        println!("{line}");
        for p in o.problems.iter().take(20) {
            println!("    {p}");
        }
        for p in &o.known {
            println!("    known: {p}");
        }
        unexpected += o.problems.len();
    }
    assert_eq!(unexpected, 0, "acceptance criteria failed beyond the pinned source contradictions");
}
