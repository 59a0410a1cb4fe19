//! The toric mirror map of the compactified geometry `Z` and its inverse.
//!
//! The map is assembled from the hypergeometric correction series
//! `Xi_j(y)`: for each ray `j`,
//!
//! ```text
//! Xi_j(y) = sum over effective d with c1(d) = 0, <D_j,d> < 0, <D_i,d> >= 0 (i != j)
//!           of y^d * (-1)^{-<D_j,d>} (-<D_j,d> - 1)! / prod_{i != j} <D_i,d>!
//! ```
//!
//! and the mirror-map components are `log q_a = log y_a - sum_j Q^a_j Xi_j`.
//! `Xi_j` vanishes exactly when ray `j` is a vertex of the fan polytope, so
//! for these geometries only `Xi_0` survives; the inverse map is obtained by
//! fixed-point reversion of `q_a = y_a exp(-sum_j Q^a_j Xi_j)`.

use num::{BigInt, BigRational, One};

use crate::series::{Coeff, LogSeries, MultiSeries};
use crate::toric::{CompactifiedData, CurveDegree, ToricGeometry};

/// The correction series `Xi_j(y)` of ray `j`, truncated at total degree
/// `order`, as a series in all `l+1` variables of `Z` (an empty summation
/// domain yields the zero series).
pub fn compute_xi(z: &CompactifiedData, j: usize, order: u32) -> MultiSeries {
    assert!(j < z.num_rays(), "ray index {j} out of range");
    let nvars = z.degree_len();
    let degrees = z.enumerate_degrees(order, |d| {
        z.first_chern(d) == 0
            && z.pairing(j, d) < 0
            && (0..z.num_rays()).all(|i| i == j || z.pairing(i, d) >= 0)
    });
    let mut xi = MultiSeries::zero(nvars, order);
    for d in degrees {
        xi.add_term(d.exponents(), xi_coefficient(z, j, &d));
    }
    xi
}

/// The rational coefficient attached to one degree in the `Xi_j` sum.
fn xi_coefficient(z: &CompactifiedData, j: usize, d: &CurveDegree) -> Coeff {
    let p = -z.pairing(j, d);
    debug_assert!(p > 0);
    let mut numer = factorial(p - 1);
    if p % 2 == 1 {
        numer = -numer;
    }
    let mut denom = BigInt::one();
    for i in 0..z.num_rays() {
        if i != j {
            denom *= factorial(z.pairing(i, d));
        }
    }
    BigRational::new(numer, denom)
}

fn factorial(k: i64) -> BigInt {
    assert!(k >= 0, "factorial of negative integer");
    let mut out = BigInt::one();
    for i in 2..=k {
        out *= BigInt::from(i);
    }
    out
}

/// All correction series `Xi_0 .. Xi_m` of `Z`.
pub fn compute_all_xi(z: &CompactifiedData, order: u32) -> Vec<MultiSeries> {
    (0..z.num_rays()).map(|j| compute_xi(z, j, order)).collect()
}

/// The mirror-map components `log q_a = L_a - sum_j Q^a_j Xi_j(y)` for
/// `a = 1..l+1`, as log-series in the `y` variables.
pub fn toric_mirror_map(z: &CompactifiedData, order: u32) -> Vec<LogSeries> {
    let xi = compute_all_xi(z, order);
    mirror_map_from_xi(z, &xi, order)
}

fn mirror_map_from_xi(z: &CompactifiedData, xi: &[MultiSeries], order: u32) -> Vec<LogSeries> {
    let nvars = z.degree_len();
    z.charge()
        .iter()
        .enumerate()
        .map(|(a, row)| {
            let mut logq = LogSeries::log_symbol(nvars, order, 1, a);
            for (j, xi_j) in xi.iter().enumerate() {
                if row[j] != 0 {
                    let scaled = xi_j.scalar_mul(&crate::series::rat_int(-row[j]));
                    logq = &logq + &LogSeries::from_series(scaled, 1);
                }
            }
            logq
        })
        .collect()
}

/// The inverse mirror map: series `y_a(q) = q_a * (unit)` for `a = 1..l+1`,
/// obtained by fixed-point reversion of the full system.
pub fn invert_toric_mirror_map(z: &CompactifiedData, order: u32) -> Vec<MultiSeries> {
    let xi = compute_all_xi(z, order);
    invert_from_xi(z, &xi, order)
}

fn invert_from_xi(z: &CompactifiedData, xi: &[MultiSeries], order: u32) -> Vec<MultiSeries> {
    let nvars = z.degree_len();
    let g: Vec<MultiSeries> = z
        .charge()
        .iter()
        .map(|row| {
            let mut g_a = MultiSeries::zero(nvars, order);
            for (j, xi_j) in xi.iter().enumerate() {
                if row[j] != 0 {
                    g_a = &g_a + &xi_j.scalar_mul(&crate::series::rat_int(-row[j]));
                }
            }
            g_a
        })
        .collect();
    MultiSeries::invert_unit_substitution(&g)
        .expect("correction series have zero constant term by construction")
}

/// The assembled mirror-map data of `Z` at one truncation order: every
/// `Xi_j`, the forward log-components, and the inverted components.
#[derive(Debug, Clone)]
pub struct MirrorMap {
    order: u32,
    xi: Vec<MultiSeries>,
    logq: Vec<LogSeries>,
    inverse: Vec<MultiSeries>,
}

impl MirrorMap {
    pub fn new(z: &CompactifiedData, order: u32) -> Self {
        let xi = compute_all_xi(z, order);
        let logq = mirror_map_from_xi(z, &xi, order);
        let inverse = invert_from_xi(z, &xi, order);
        Self {
            order,
            xi,
            logq,
            inverse,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `Xi_j` for each ray `j = 0..m`.
    pub fn xi(&self) -> &[MultiSeries] {
        &self.xi
    }

    /// `log q_a` for each component `a = 1..l+1` (0-indexed).
    pub fn log_components(&self) -> &[LogSeries] {
        &self.logq
    }

    /// `y_a(q)` for each component `a = 1..l+1` (0-indexed).
    pub fn inverse(&self) -> &[MultiSeries] {
        &self.inverse
    }
}
