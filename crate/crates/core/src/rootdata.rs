//! Finite root data in Bourbaki numbering, the affine diagram `S̃ = {0, …, n}`,
//! the length-zero group Ω and the diagram automorphisms σ.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::affweyl::{dot, mat_vec, AffElement, Coord, Mat, IDENTITY_MAT, MAX_DIM};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidDatum(format!("unknown family `{other}`"))),
        }
    }

    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    /// Ranks handled for this family. B starts at 3 since B₂ = C₂.
    pub fn valid_rank(self, n: usize, model: LatticeModel) -> bool {
        match self {
            Family::A => n >= 1 && n + usize::from(model == LatticeModel::Gl) <= MAX_DIM,
            Family::B => (3..=MAX_DIM).contains(&n),
            Family::C => (2..=MAX_DIM).contains(&n),
            Family::D => (4..=MAX_DIM).contains(&n),
            Family::E => n == 6 || n == 7,
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Coweight lattice used for the group: `ℤ^{n+1}` with `W₀ = S_{n+1}`
/// (family A only) or the full coweight lattice `P^∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LatticeModel {
    Gl,
    Adjoint,
}

impl LatticeModel {
    pub fn default_for(family: Family) -> Self {
        if family == Family::A {
            LatticeModel::Gl
        } else {
            LatticeModel::Adjoint
        }
    }
}

/// Set of affine nodes, bit `i` for `s_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(pub u16);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_slice(nodes: &[usize]) -> Self {
        let mut s = NodeSet::EMPTY;
        for &i in nodes {
            s.insert(i);
        }
        s
    }
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }
    pub fn union(self, o: NodeSet) -> NodeSet {
        NodeSet(self.0 | o.0)
    }
    pub fn intersect(self, o: NodeSet) -> NodeSet {
        NodeSet(self.0 & o.0)
    }
    pub fn minus(self, o: NodeSet) -> NodeSet {
        NodeSet(self.0 & !o.0)
    }
    pub fn is_subset(self, o: NodeSet) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
    /// Image under a permutation of the nodes.
    pub fn map(self, perm: &[usize]) -> NodeSet {
        NodeSet::from_slice(&self.iter().map(|i| perm[i]).collect::<Vec<_>>())
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

impl Serialize for NodeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

/// A positive root with its coroot.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i32>,
    /// The root as a linear functional on lattice coordinates.
    pub functional: Coord,
    /// The coroot as a lattice vector.
    pub coroot: Coord,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }
}

/// A length-zero element `τ_k` with its action on `S̃`.
#[derive(Clone, Debug)]
pub struct OmegaElement {
    pub index: i64,
    pub element: AffElement,
    /// The coweight whose translation has this Ω-component.
    pub coweight: Coord,
    pub perm: Vec<usize>,
}

/// Automorphism `σ = Ad(τ_k) ∘ δ` of `(W̃, S̃)` with δ a finite diagram automorphism.
#[derive(Clone, Debug)]
pub struct DiagramAuto {
    pub perm: Vec<usize>,
    pub tau_index: i64,
    /// δ on finite nodes, 0-based (`finite[i]` is the image of node `i+1`, minus one).
    pub finite: Vec<usize>,
    pub label: String,
    pub(crate) map: AffElement,
    /// Central correction added to Newton points (the unitary similitude
    /// normalization for `GL` with `−w₀`).
    pub(crate) newton_shift: Rational64,
}

impl DiagramAuto {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
    pub fn map(&self) -> &AffElement {
        &self.map
    }
}

impl PartialEq for DiagramAuto {
    fn eq(&self, o: &Self) -> bool {
        self.map == o.map
    }
}

#[derive(Debug)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    pub model: LatticeModel,
    /// Lattice dimension: `n + 1` for the GL model, `n` otherwise.
    pub dim: usize,
    pub cartan: Vec<Vec<i32>>,
    pub positive_roots: Vec<Root>,
    pub(crate) simple_roots: Vec<usize>,
    pub(crate) highest_root: usize,
    pub(crate) base_point: [i64; MAX_DIM],
    pub(crate) base_denom: i64,
    pub(crate) gens: Vec<AffElement>,
    /// `⟨α_i^∨, α_j⟩` on `S̃` with `α₀ = −θ`.
    pub affine_cartan: Vec<Vec<i32>>,
    pub(crate) omega: Vec<OmegaElement>,
    pub(crate) finite_autos: Vec<Vec<usize>>,
}

impl RootDatum {
    pub fn new(family: Family, rank: usize, model: LatticeModel) -> Result<RootDatum> {
        if model == LatticeModel::Gl && family != Family::A {
            return Err(Error::InvalidDatum("the GL model exists for family A only".into()));
        }
        if !family.valid_rank(rank, model) {
            return Err(Error::InvalidDatum(format!("{family}{rank} is not supported")));
        }
        let cartan = cartan_matrix(family, rank);
        let (dim, positive_roots, simple_roots, base_point) = match model {
            LatticeModel::Gl => gl_roots(rank),
            LatticeModel::Adjoint => adjoint_roots(&cartan),
        };
        let highest_root = (0..positive_roots.len())
            .max_by_key(|&i| positive_roots[i].height())
            .expect("nonempty root system");
        let base_denom = match model {
            LatticeModel::Gl => rank as i64 + 1,
            LatticeModel::Adjoint => positive_roots[highest_root].height() as i64 + 1,
        };

        let theta = &positive_roots[highest_root];
        let mut gens = Vec::with_capacity(rank + 1);
        gens.push(AffElement::from_parts(
            reflection_matrix(theta, dim),
            reflection_matrix(theta, dim),
            theta.coroot,
        ));
        for &s in &simple_roots {
            let m = reflection_matrix(&positive_roots[s], dim);
            gens.push(AffElement::from_parts(m, m, [0; MAX_DIM]));
        }

        let affine_root = |i: usize| -> (Coord, Coord) {
            if i == 0 {
                let mut f = theta.functional;
                let mut c = theta.coroot;
                for k in 0..dim {
                    f[k] = -f[k];
                    c[k] = -c[k];
                }
                (f, c)
            } else {
                let r = &positive_roots[simple_roots[i - 1]];
                (r.functional, r.coroot)
            }
        };
        let affine_cartan = (0..=rank)
            .map(|i| {
                (0..=rank)
                    .map(|j| dot(&affine_root(i).1, &affine_root(j).0, dim) as i32)
                    .collect()
            })
            .collect();

        let finite_autos = match model {
            LatticeModel::Gl => {
                let mut v = vec![(0..rank).collect::<Vec<_>>()];
                if rank >= 2 {
                    v.push((0..rank).rev().collect());
                }
                v
            }
            LatticeModel::Adjoint => cartan_automorphisms(&cartan),
        };

        let mut datum = RootDatum {
            family,
            rank,
            model,
            dim,
            cartan,
            positive_roots,
            simple_roots,
            highest_root,
            base_point,
            base_denom,
            gens,
            affine_cartan,
            omega: Vec::new(),
            finite_autos,
        };
        datum.omega = datum.build_omega();
        Ok(datum)
    }

    /// Default lattice model for the family.
    pub fn standard(family: Family, rank: usize) -> Result<RootDatum> {
        RootDatum::new(family, rank, LatticeModel::default_for(family))
    }

    pub fn name(&self) -> String {
        match self.model {
            LatticeModel::Gl => format!("GL{}", self.rank + 1),
            LatticeModel::Adjoint => format!("{}{}", self.family, self.rank),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.rank + 1
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet((1u16 << self.num_nodes()) - 1)
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[self.simple_roots[i - 1]]
    }

    /// Fundamental coweight `ω_i^∨`, `1 ≤ i ≤ n`.
    pub fn fundamental_coweight(&self, i: usize) -> Coord {
        let mut v = [0; MAX_DIM];
        match self.model {
            LatticeModel::Gl => v[..i].fill(1),
            LatticeModel::Adjoint => v[i - 1] = 1,
        }
        v
    }

    /// `s_i` and `s_j` are joined in the affine diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.affine_cartan[i][j] != 0
    }

    /// Graph distances from `v` in the affine diagram.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let n = self.num_nodes();
        let mut d = vec![usize::MAX; n];
        d[v] = 0;
        let mut q = VecDeque::from([v]);
        while let Some(a) = q.pop_front() {
            for b in 0..n {
                if self.adjacent(a, b) && d[b] == usize::MAX {
                    d[b] = d[a] + 1;
                    q.push_back(b);
                }
            }
        }
        d
    }

    fn build_omega(&self) -> Vec<OmegaElement> {
        let coweights: Vec<(i64, Coord)> = match self.model {
            LatticeModel::Gl => (0..=self.rank as i64)
                .map(|k| (k, if k == 0 { [0; MAX_DIM] } else { self.fundamental_coweight(k as usize) }))
                .collect(),
            LatticeModel::Adjoint => {
                let theta = self.highest_root();
                std::iter::once((0, [0; MAX_DIM]))
                    .chain(
                        (1..=self.rank)
                            .filter(|&i| theta.coeffs[i - 1] == 1)
                            .map(|i| (i as i64, self.fundamental_coweight(i))),
                    )
                    .collect()
            }
        };
        coweights
            .into_iter()
            .map(|(index, coweight)| {
                let element = self.omega_component(&AffElement::translation(coweight));
                let perm = self.conjugation_perm(&element).expect("Ω normalizes S̃");
                OmegaElement {
                    index,
                    element,
                    coweight,
                    perm,
                }
            })
            .collect()
    }

    /// Representatives of `Ω` (for the GL model, `τ₁^k` with `0 ≤ k ≤ n`).
    pub fn omega_group(&self) -> &[OmegaElement] {
        &self.omega
    }

    /// `τ_k`. In the GL model any integer `k` is allowed (`τ_k = τ₁^k`).
    pub fn tau(&self, k: i64) -> Result<AffElement> {
        match self.model {
            LatticeModel::Adjoint => self
                .omega
                .iter()
                .find(|o| o.index == k)
                .map(|o| o.element)
                .ok_or_else(|| Error::Parse(format!("tau:{k} is not a length-zero element of {}", self.name()))),
            LatticeModel::Gl => {
                let t1 = self.omega[1].element;
                let base = if k >= 0 { t1 } else { self.inverse(&t1) };
                let mut x = AffElement::IDENTITY;
                for _ in 0..k.unsigned_abs() {
                    x = self.multiply(&x, &base);
                }
                Ok(x)
            }
        }
    }

    /// Index `k` with `ω = τ_k`.
    pub fn omega_index(&self, omega: &AffElement) -> Option<i64> {
        match self.model {
            LatticeModel::Gl => Some(omega.trans[..self.dim].iter().map(|&c| c as i64).sum()),
            LatticeModel::Adjoint => self.omega.iter().find(|o| o.element == *omega).map(|o| o.index),
        }
    }

    /// Permutation `i ↦ j` with `g s_i g⁻¹ = s_j`, if `g` normalizes `S̃`.
    pub fn conjugation_perm(&self, g: &AffElement) -> Option<Vec<usize>> {
        (0..self.num_nodes()).map(|i| self.conjugate_simple(g, i)).collect()
    }

    /// Finite diagram automorphisms (0-based permutations of `{1..n}`), identity first.
    pub fn finite_automorphisms(&self) -> &[Vec<usize>] {
        &self.finite_autos
    }

    /// The distinguished nontrivial finite automorphism, when one exists.
    pub fn sigma0_perm(&self) -> Option<Vec<usize>> {
        let n = self.rank;
        match (self.model, self.family) {
            (LatticeModel::Gl, _) | (_, Family::A) if n >= 2 => Some((0..n).rev().collect()),
            (_, Family::D) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Some(p)
            }
            (_, Family::E) if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
            _ => None,
        }
    }

    fn finite_auto_matrix(&self, finite: &[usize]) -> Mat {
        let d = self.dim;
        let mut m = IDENTITY_MAT;
        for i in 0..d {
            for j in 0..d {
                m[i * MAX_DIM + j] = 0;
            }
        }
        match self.model {
            LatticeModel::Gl => {
                if finite.iter().enumerate().all(|(i, &p)| i == p) {
                    return IDENTITY_MAT;
                }
                for i in 0..d {
                    m[i * MAX_DIM + (d - 1 - i)] = -1;
                }
            }
            LatticeModel::Adjoint => {
                for (i, &p) in finite.iter().enumerate() {
                    m[p * MAX_DIM + i] = 1;
                }
            }
        }
        m
    }

    /// `σ = Ad(τ_k) ∘ δ`.
    pub fn diagram_auto(&self, tau_index: i64, finite: &[usize]) -> Result<DiagramAuto> {
        if !self.finite_autos.iter().any(|f| f == finite) {
            return Err(Error::InvalidDatum(format!(
                "{finite:?} is not a diagram automorphism of {}",
                self.name()
            )));
        }
        let c = self.tau(tau_index)?;
        let lin = self.finite_auto_matrix(finite);
        let delta = AffElement::from_parts(lin, transpose_if_perm(&lin, self.dim), [0; MAX_DIM]);
        let map = self.multiply(&c, &delta);
        let perm = self
            .conjugation_perm(&map)
            .ok_or_else(|| Error::InvalidDatum("automorphism does not preserve S̃".into()))?;
        let is_id = finite.iter().enumerate().all(|(i, &p)| i == p);
        let newton_shift = if self.model == LatticeModel::Gl && !is_id {
            Rational64::new(1, 2)
        } else {
            Rational64::from_integer(0)
        };
        let fin_label = if is_id {
            None
        } else if Some(finite.to_vec()) == self.sigma0_perm() {
            Some("sigma0".to_string())
        } else {
            Some(format!(
                "pi:{}",
                finite.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")
            ))
        };
        let label = match (tau_index, fin_label) {
            (0, None) => "id".to_string(),
            (0, Some(f)) => f,
            (k, None) => format!("tau:{k}"),
            (k, Some(f)) => format!("tau:{k}*{f}"),
        };
        Ok(DiagramAuto {
            perm,
            tau_index,
            finite: finite.to_vec(),
            label,
            map,
            newton_shift,
        })
    }

    pub fn identity_auto(&self) -> DiagramAuto {
        let id: Vec<usize> = (0..self.rank).collect();
        self.diagram_auto(0, &id).expect("identity is an automorphism")
    }

    /// All `Ad(τ) ∘ δ` with τ over Ω representatives and δ over finite automorphisms.
    pub fn all_autos(&self) -> Vec<DiagramAuto> {
        let mut out = Vec::new();
        for o in &self.omega {
            for f in &self.finite_autos {
                out.push(self.diagram_auto(o.index, f).expect("valid automorphism"));
            }
        }
        out
    }

    /// Parses `id`, `sigma0`, `tau:k`, `tau:k*sigma0` or `pi:a,b,…`
    /// (images of the finite nodes `1..n`, optionally prefixed by `tau:k*`).
    pub fn parse_sigma(&self, spec: &str) -> Result<DiagramAuto> {
        let spec = spec.trim();
        let (tau_part, fin_part) = match spec.split_once('*') {
            Some((a, b)) => (Some(a), b),
            None if spec.starts_with("tau:") => (Some(spec), "id"),
            None => (None, spec),
        };
        let k = match tau_part {
            Some(t) => t
                .strip_prefix("tau:")
                .and_then(|k| k.parse::<i64>().ok())
                .ok_or_else(|| Error::Parse(format!("bad sigma `{spec}`")))?,
            None => 0,
        };
        let finite: Vec<usize> = match fin_part {
            "id" => (0..self.rank).collect(),
            "sigma0" => self
                .sigma0_perm()
                .ok_or_else(|| Error::InvalidQuadruple(format!("{} has no sigma0", self.name())))?,
            p if p.starts_with("pi:") => p[3..]
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .map(|v| v - 1)
                        .ok_or_else(|| Error::Parse(format!("bad permutation `{p}`")))
                })
                .collect::<Result<_>>()?,
            _ => return Err(Error::Parse(format!("bad sigma `{spec}`"))),
        };
        if self.model == LatticeModel::Gl && !(0..=self.rank as i64).contains(&k) {
            return Err(Error::Parse(format!("tau:{k} out of range 0..={}", self.rank)));
        }
        self.diagram_auto(k, &finite)
    }

    /// Dominant representative of a rational coweight together with a finite
    /// Weyl element (as a word in `s_1..s_n`) carrying the output back to the input.
    pub fn dominant_representative(&self, v: &[Rational64]) -> (Vec<Rational64>, Vec<usize>) {
        let mut v = v.to_vec();
        let mut word = Vec::new();
        loop {
            let bad = (1..=self.rank).find(|&i| self.pair_root(&self.simple_root(i).functional, &v) < Rational64::from_integer(0));
            match bad {
                None => break,
                Some(i) => {
                    let r = self.simple_root(i);
                    let p = self.pair_root(&r.functional, &v);
                    for k in 0..self.dim {
                        v[k] -= p * Rational64::from_integer(r.coroot[k] as i64);
                    }
                    word.push(i);
                }
            }
        }
        (v, word)
    }

    pub(crate) fn pair_root(&self, functional: &Coord, v: &[Rational64]) -> Rational64 {
        let mut s = Rational64::from_integer(0);
        for k in 0..self.dim {
            s += Rational64::from_integer(functional[k] as i64) * v[k];
        }
        s
    }

    /// `⟨v, 2ρ⟩`.
    pub fn pairing_2rho(&self, v: &[Rational64]) -> Rational64 {
        self.positive_roots
            .iter()
            .map(|r| self.pair_root(&r.functional, v))
            .sum()
    }

    /// Applies a finite Weyl word `s_{i_1} ⋯ s_{i_k}` to a coweight.
    pub fn apply_finite_word(&self, word: &[usize], v: &[Rational64]) -> Vec<Rational64> {
        let mut v = v.to_vec();
        for &i in word.iter().rev() {
            let r = self.simple_root(i);
            let p = self.pair_root(&r.functional, &v);
            for k in 0..self.dim {
                v[k] -= p * Rational64::from_integer(r.coroot[k] as i64);
            }
        }
        v
    }

    /// `W₀`-orbit of an integral coweight.
    pub fn weyl_orbit(&self, v: &Coord) -> Vec<Coord> {
        let mut seen: HashSet<Coord> = HashSet::from([*v]);
        let mut out = vec![*v];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for i in 1..=self.rank {
                let y = mat_vec(&self.gens[i].lin, &x, self.dim);
                if seen.insert(y) {
                    out.push(y);
                }
            }
        }
        out.sort();
        out
    }
}

fn transpose_if_perm(m: &Mat, d: usize) -> Mat {
    // Signed permutation matrices are orthogonal.
    let mut t = IDENTITY_MAT;
    for i in 0..d {
        for j in 0..d {
            t[i * MAX_DIM + j] = m[j * MAX_DIM + i];
        }
    }
    t
}

fn reflection_matrix(r: &Root, d: usize) -> Mat {
    let mut m = IDENTITY_MAT;
    for i in 0..d {
        for j in 0..d {
            m[i * MAX_DIM + j] = (i == j) as i8 - (r.coroot[i] * r.functional[j]) as i8;
        }
    }
    m
}

/// Cartan matrix `C_ij = ⟨α_i^∨, α_j⟩`, Bourbaki labels.
pub fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0i32; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut [Vec<i32>], i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A | Family::B | Family::C | Family::D => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            match family {
                Family::B => c[n - 1][n - 2] = -2,
                Family::C => c[n - 2][n - 1] = -2,
                Family::D => {
                    c[n - 2][n - 1] = 0;
                    c[n - 1][n - 2] = 0;
                    link(&mut c, n - 3, n - 1);
                }
                _ => {}
            }
        }
        Family::G => {
            c[0][1] = -3;
            c[1][0] = -1;
        }
        Family::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[2][1] = -2;
        }
        Family::E => {
            for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)] {
                if j <= n {
                    link(&mut c, i - 1, j - 1);
                }
            }
        }
    }
    c
}

type RootSystem = (usize, Vec<Root>, Vec<usize>, [i64; MAX_DIM]);

fn gl_roots(n: usize) -> RootSystem {
    let d = n + 1;
    let mut roots = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut f = [0; MAX_DIM];
            f[i] = 1;
            f[j] = -1;
            let mut coeffs = vec![0; n];
            coeffs[i..j].fill(1);
            roots.push(Root {
                coeffs,
                functional: f,
                coroot: f,
            });
        }
    }
    let simple = (0..n)
        .map(|i| roots.iter().position(|r| r.height() == 1 && r.coeffs[i] == 1).unwrap())
        .collect();
    let mut p = [0i64; MAX_DIM];
    for (i, x) in p.iter_mut().take(d).enumerate() {
        *x = (d - 1 - i) as i64;
    }
    (d, roots, simple, p)
}

fn adjoint_roots(c: &[Vec<i32>]) -> RootSystem {
    let n = c.len();
    let unit = |i: usize| (0..n).map(|j| (i == j) as i32).collect::<Vec<i32>>();
    // (root in simple roots, coroot in simple coroots)
    let mut seen: HashSet<(Vec<i32>, Vec<i32>)> = HashSet::new();
    let mut queue: VecDeque<(Vec<i32>, Vec<i32>)> = VecDeque::new();
    for i in 0..n {
        let r = (unit(i), unit(i));
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some((a, b)) = queue.pop_front() {
        for j in 0..n {
            let p: i32 = (0..n).map(|k| c[j][k] * a[k]).sum();
            let pc: i32 = (0..n).map(|k| b[k] * c[k][j]).sum();
            let mut na = a.clone();
            na[j] -= p;
            let mut nb = b.clone();
            nb[j] -= pc;
            let r = (na, nb);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut pos: Vec<(Vec<i32>, Vec<i32>)> = seen.into_iter().filter(|(a, _)| a.iter().all(|&x| x >= 0)).collect();
    pos.sort_by(|x, y| (x.0.iter().sum::<i32>(), &x.0).cmp(&(y.0.iter().sum::<i32>(), &y.0)));
    let roots: Vec<Root> = pos
        .into_iter()
        .map(|(a, b)| {
            let mut f = [0; MAX_DIM];
            let mut cv = [0; MAX_DIM];
            for j in 0..n {
                f[j] = a[j];
                cv[j] = (0..n).map(|i| b[i] * c[i][j]).sum();
            }
            Root {
                coeffs: a,
                functional: f,
                coroot: cv,
            }
        })
        .collect();
    let simple = (0..n)
        .map(|i| roots.iter().position(|r| r.coeffs == unit(i)).unwrap())
        .collect();
    let mut p = [0i64; MAX_DIM];
    p[..n].fill(1);
    (n, roots, simple, p)
}

fn cartan_automorphisms(c: &[Vec<i32>]) -> Vec<Vec<usize>> {
    fn extend(c: &[Vec<i32>], p: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = c.len();
        let i = p.len();
        if i == n {
            out.push(p.clone());
            return;
        }
        for v in 0..n {
            if used[v] || c[v][v] != c[i][i] {
                continue;
            }
            if (0..i).all(|j| c[p[j]][v] == c[j][i] && c[v][p[j]] == c[i][j]) {
                used[v] = true;
                p.push(v);
                extend(c, p, used, out);
                p.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(c, &mut Vec::new(), &mut vec![false; c.len()], &mut out);
    out
}
