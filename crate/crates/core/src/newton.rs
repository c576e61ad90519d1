//! Newton points, straightness and the dominance order on σ-conjugacy classes.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::affweyl::AffElement;
use crate::error::{Error, Result};
use crate::rootdata::{DiagramAuto, Family, LatticeModel, RootDatum};

/// Dominant Newton point `ν̄` with the Ω-component κ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPoint {
    /// Dominant vector in lattice coordinates.
    pub nu: Vec<Rational64>,
    pub kappa: i64,
    /// `⟨ν̄, 2ρ⟩`.
    pub pairing: Rational64,
}

impl NewtonPoint {
    pub fn is_central(&self, datum: &RootDatum) -> bool {
        (1..=datum.rank).all(|i| datum.pair_root(&datum.simple_root(i).functional, &self.nu).is_zero())
    }
}

/// Coordinates a Newton vector is reported in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoordSystem {
    Gl,
    Epsilon,
    FundamentalCoweight,
}

pub fn coordinate_system(datum: &RootDatum) -> CoordSystem {
    match (datum.model, datum.family) {
        (LatticeModel::Gl, _) => CoordSystem::Gl,
        (_, Family::B | Family::C | Family::D) => CoordSystem::Epsilon,
        _ => CoordSystem::FundamentalCoweight,
    }
}

/// Converts lattice coordinates to the reporting coordinates.
pub fn display_coords(datum: &RootDatum, v: &[Rational64]) -> Vec<Rational64> {
    if coordinate_system(datum) != CoordSystem::Epsilon {
        return v[..datum.dim].to_vec();
    }
    let n = datum.rank;
    let half = Rational64::new(1, 2);
    let one = Rational64::from_integer(1);
    let mut out = vec![Rational64::zero(); n];
    for (j, &c) in v.iter().enumerate().take(n) {
        // ε-coordinates of ω_{j+1}^∨.
        let spin = match datum.family {
            Family::C => j == n - 1,
            Family::D => j >= n - 2,
            _ => false,
        };
        for (k, o) in out.iter_mut().enumerate() {
            let e = if spin {
                if datum.family == Family::D && j == n - 2 && k == n - 1 {
                    -half
                } else {
                    half
                }
            } else if k <= j {
                one
            } else {
                Rational64::zero()
            };
            *o += c * e;
        }
    }
    out
}

/// Order of the finite Weyl group.
pub fn weyl_group_order(datum: &RootDatum) -> usize {
    let n = datum.rank;
    let fact = |k: usize| (1..=k).product::<usize>();
    match datum.family {
        Family::A => fact(n + 1),
        Family::B | Family::C => (1 << n) * fact(n),
        Family::D => (1 << (n - 1)) * fact(n),
        Family::E if n == 6 => 51_840,
        Family::E => 2_903_040,
        Family::F => 1_152,
        Family::G => 12,
    }
}

/// Smallest `k ≥ 1` with `x^k` a translation, and that translation.
fn translation_power(datum: &RootDatum, x: &AffElement, cap: usize) -> Result<(usize, Vec<i64>)> {
    let mut y = *x;
    let mut k = 1;
    while !y.is_translation() {
        if k >= cap {
            return Err(Error::NewtonCap(cap));
        }
        y = datum.multiply(&y, x);
        k += 1;
    }
    Ok((k, y.translation_part()[..datum.dim].iter().map(|&c| c as i64).collect()))
}

/// `ν̄` of `wσ`: `(wσ)^m = t^λ` gives `λ/m`, made dominant.
pub fn newton_point(datum: &RootDatum, w: &AffElement, sigma: &DiagramAuto) -> Result<NewtonPoint> {
    let g = sigma.map();
    let cap = weyl_group_order(datum) * sigma.perm.len() * 2;
    let (k1, l1) = translation_power(datum, &datum.multiply(w, g), cap)?;
    let (k2, l2) = translation_power(datum, g, cap)?;
    let m = k1.lcm(&k2);
    let (a, b) = ((m / k1) as i64, (m / k2) as i64);
    let raw: Vec<Rational64> = l1
        .iter()
        .zip(&l2)
        .map(|(&x, &y)| Rational64::new(a * x - b * y, m as i64) + sigma.newton_shift)
        .collect();
    let (nu, _) = datum.dominant_representative(&raw);
    let kappa = datum
        .omega_index(&datum.omega_component(w))
        .expect("length-zero element lies in Ω");
    let pairing = datum.pairing_2rho(&nu);
    Ok(NewtonPoint { nu, kappa, pairing })
}

/// `ℓ(w) = ⟨ν̄_w, 2ρ⟩`.
pub fn is_sigma_straight(datum: &RootDatum, w: &AffElement, sigma: &DiagramAuto) -> Result<bool> {
    let nu = newton_point(datum, w, sigma)?;
    Ok(nu.pairing == Rational64::from_integer(datum.length(w) as i64))
}

/// Dominance `ν ≤ ν'`: equal κ and `ν' − ν` a non-negative combination of simple coroots.
pub fn newton_leq(datum: &RootDatum, a: &NewtonPoint, b: &NewtonPoint) -> bool {
    if a.kappa != b.kappa {
        return false;
    }
    let diff: Vec<Rational64> = b.nu.iter().zip(&a.nu).map(|(x, y)| x - y).collect();
    match datum.model {
        LatticeModel::Gl => {
            let mut partial = Rational64::zero();
            for (i, d) in diff.iter().enumerate() {
                partial += d;
                if partial.is_negative() || (i + 1 == diff.len() && !partial.is_zero()) {
                    return false;
                }
            }
            true
        }
        LatticeModel::Adjoint => coroot_coefficients(datum, &diff).iter().all(|c| !c.is_negative()),
    }
}

/// Solves `x = Σ c_i α_i^∨` in the adjoint model.
fn coroot_coefficients(datum: &RootDatum, x: &[Rational64]) -> Vec<Rational64> {
    let n = datum.rank;
    // Row i of the system: Σ_i c_i C_ij = x_j, i.e. Cᵀ c = x.
    let mut a: Vec<Vec<Rational64>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational64> = (0..n)
                .map(|i| Rational64::from_integer(datum.cartan[i][j] as i64))
                .collect();
            row.push(x[j]);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (v, pv) in a[r].iter_mut().zip(pivot_row) {
                    *v -= f * pv;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n]).collect()
}

/// The poset of distinct Newton classes and whether it is almost linear,
/// i.e. `x < y ⟺ ⟨x,2ρ⟩ < ⟨y,2ρ⟩`.
#[derive(Clone, Debug)]
pub struct NewtonOrder {
    pub classes: Vec<NewtonPoint>,
    /// `(i, j)` with `classes[i] < classes[j]`.
    pub relations: Vec<(usize, usize)>,
    pub almost_linear: bool,
}

pub fn newton_order(datum: &RootDatum, classes: &[NewtonPoint]) -> NewtonOrder {
    let mut cl: Vec<NewtonPoint> = classes.to_vec();
    cl.sort_by(|a, b| (a.pairing, &a.nu, a.kappa).cmp(&(b.pairing, &b.nu, b.kappa)));
    cl.dedup();
    let mut relations = Vec::new();
    let mut almost_linear = true;
    for i in 0..cl.len() {
        for j in 0..cl.len() {
            if i == j {
                continue;
            }
            let less = newton_leq(datum, &cl[i], &cl[j]);
            if less {
                relations.push((i, j));
            }
            if less != (cl[i].pairing < cl[j].pairing) {
                almost_linear = false;
            }
        }
    }
    NewtonOrder {
        classes: cl,
        relations,
        almost_linear,
    }
}
