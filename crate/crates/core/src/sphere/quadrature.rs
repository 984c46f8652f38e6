//! Independent numerical oracle for the N matrix elements:
//! `∫ Y*_{l'm'} f Y_{lm} dΩ` on a Gauss–Legendre × uniform-φ product grid.

use super::basis::BasisState;
use super::RepError;
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use std::f64::consts::PI;

/// The angular functions realized by `NZ`, `N₊`, `N₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngularFactor {
    CosTheta,
    SinThetaExpPlus,
    SinThetaExpMinus,
}

impl AngularFactor {
    fn value(self, x: f64, phi: f64) -> Complex64 {
        let s = (1.0 - x * x).max(0.0).sqrt();
        match self {
            AngularFactor::CosTheta => Complex64::new(x, 0.0),
            AngularFactor::SinThetaExpPlus => Complex64::from_polar(s, phi),
            AngularFactor::SinThetaExpMinus => Complex64::from_polar(s, -phi),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    cos_nodes: Vec<f64>,
    cos_weights: Vec<f64>,
    phi_count: usize,
}

impl QuadratureGrid {
    /// The default grid for bases up to `lmax`: `2·lmax + 4` nodes in each
    /// direction.
    pub fn for_lmax(lmax: u32) -> Self {
        let n = 2 * lmax as usize + 4;
        Self::new(n, n)
    }

    pub fn new(legendre_order: usize, phi_count: usize) -> Self {
        let rule = GaussLegendre::new(legendre_order.max(2)).expect("order >= 2");
        Self {
            cos_nodes: rule.nodes().copied().collect(),
            cos_weights: rule.weights().copied().collect(),
            phi_count: phi_count.max(1),
        }
    }

    pub fn legendre_order(&self) -> usize {
        self.cos_nodes.len()
    }

    pub fn phi_count(&self) -> usize {
        self.phi_count
    }

    /// Whether products `Y* f Y` with these degrees integrate exactly:
    /// the cosθ polynomial has degree at most `l1 + l2 + 1` and the φ
    /// frequencies stay below `l1 + l2 + 2`.
    pub fn supports(&self, l1: u32, l2: u32) -> bool {
        let degree = (l1 + l2 + 1) as usize;
        2 * self.legendre_order() > degree && self.phi_count > degree
    }
}

/// Orthonormal `Y_lm(θ, φ)` with the Condon–Shortley phase, evaluated at
/// `x = cosθ`.
pub fn spherical_harmonic(l: u32, m: i32, x: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    if am > l {
        return Complex64::new(0.0, 0.0);
    }
    let p = normalized_legendre(l, am, x);
    let y = Complex64::from_polar(p, am as f64 * phi);
    if m >= 0 {
        y
    } else if am % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    }
}

/// `sqrt((2l+1)/4π · (l-m)!/(l+m)!) · P_l^m(x)` with `(-1)^m` included.
fn normalized_legendre(l: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        pmm *= -s * ((2 * k + 1) as f64 / (2 * k) as f64).sqrt();
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = x * ((2 * m + 3) as f64).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let (lf, mf) = (ll as f64, m as f64);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `∫ Y*_{row} f Y_{col} dΩ` on the grid.
pub fn quadrature_element(
    f: AngularFactor,
    row: BasisState,
    col: BasisState,
    grid: &QuadratureGrid,
) -> Result<Complex64, RepError> {
    if !grid.supports(row.l, col.l) {
        return Err(RepError::InsufficientGrid {
            l_row: row.l,
            l_col: col.l,
            legendre_order: grid.legendre_order(),
            phi_count: grid.phi_count(),
        });
    }
    let dphi = 2.0 * PI / grid.phi_count as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for (&x, &w) in grid.cos_nodes.iter().zip(&grid.cos_weights) {
        let mut ring = Complex64::new(0.0, 0.0);
        for k in 0..grid.phi_count {
            let phi = k as f64 * dphi;
            ring += spherical_harmonic(row.l, row.m, x, phi).conj()
                * f.value(x, phi)
                * spherical_harmonic(col.l, col.m, x, phi);
        }
        total += ring * w;
    }
    Ok(total * dphi)
}
