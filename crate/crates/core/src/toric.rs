//! Combinatorial data of a toric Calabi-Yau manifold `X` (lattice points and
//! charge matrix), its compactification `Z`, and the exact lattice geometry
//! built on them: intersection pairings, effective-degree enumeration, vertex
//! tests and normalized polytope volume.
//!
//! Everything here is pure integer/rational arithmetic; all values are
//! immutable after construction.

use std::fmt;

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

/// Lattice and charge data of a toric Calabi-Yau `X`: `m` lattice points
/// `w_i` in `Z^(n-1)` (with `w_0 = 0`) and an `l x m` integer charge matrix
/// whose rows span the relations among the lifted rays `(w_i, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricCYData {
    n: usize,
    points: Vec<Vec<i64>>,
    charge: Vec<Vec<i64>>,
}

/// Charge and ray data of the compactified `P^1`-bundle `Z` over the base of
/// `X`: one extra ray opposite the distinguished one, one extra charge row
/// pairing the two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactifiedData {
    base: ToricCYData,
    rays: Vec<Vec<i64>>,
    charge: Vec<Vec<i64>>,
}

/// A curve degree vector against the chosen basis of charge rows
/// (length `l` for `X`, `l+1` for `Z`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveDegree(pub Vec<i64>);

impl CurveDegree {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&d| d >= 0)
    }

    /// Exponent vector of the monomial `y^d`; requires effectivity.
    pub fn exponents(&self) -> Vec<u32> {
        assert!(self.is_effective(), "degree has a negative coordinate");
        self.0.iter().map(|&d| d as u32).collect()
    }
}

impl fmt::Display for CurveDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// A toric prime divisor, identified by its ray and carrying the column of
/// the charge matrix it pairs with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub ray: usize,
    pub pairing_vector: Vec<i64>,
}

impl DivisorClass {
    /// Intersection pairing with a curve degree.
    pub fn pairing(&self, d: &CurveDegree) -> i64 {
        assert_eq!(
            self.pairing_vector.len(),
            d.len(),
            "degree length does not match charge rank"
        );
        self.pairing_vector
            .iter()
            .zip(&d.0)
            .map(|(q, d)| q * d)
            .sum()
    }
}

/// One violated construction invariant, as data rather than an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Structure(String),
    OriginNotFirst,
    ChargeRowSum { row: usize, sum: i64 },
    ChargeRelation { row: usize },
    RankDeficient { rank: usize, expected: usize },
    DuplicatePoint { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Structure(msg) => write!(f, "{msg}"),
            Violation::OriginNotFirst => write!(f, "w[0] must be the zero vector"),
            Violation::ChargeRowSum { row, sum } => {
                write!(f, "charge row {row} sums to {sum}, expected 0")
            }
            Violation::ChargeRelation { row } => {
                write!(f, "charge row {row} is not a relation among the lattice points")
            }
            Violation::RankDeficient { rank, expected } => {
                write!(f, "charge matrix has rank {rank}, expected {expected}")
            }
            Violation::DuplicatePoint { first, second } => {
                write!(f, "lattice points {first} and {second} coincide")
            }
        }
    }
}

/// Outcome of validating toric data: hard violations plus advisory warnings.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")?;
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
        }
        for w in &self.warnings {
            write!(f, "\nwarning: {w}")?;
        }
        Ok(())
    }
}

/// Errors from operations on toric data (validation failures are reported as
/// data; these are the genuinely exceptional paths).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("input data is invalid: {0}")]
    Invalid(String),
    #[error("automatic volume needs polytope dimension <= 2, got {0}; supply a triangulation")]
    UnsupportedDimension(usize),
    #[error("triangulation simplex {index} is degenerate (zero volume)")]
    DegenerateSimplex { index: usize },
    #[error("triangulation simplex {index} must list {expected} point indices, got {got}")]
    BadSimplexSize {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("triangulation simplex {index} references point {point} out of range")]
    SimplexIndexOutOfRange { index: usize, point: usize },
}

/// Shared geometry operations over either `X` or `Z` data.
pub trait ToricGeometry {
    /// Number of rays (`m` for `X`, `m+1` for `Z`).
    fn num_rays(&self) -> usize;
    /// Length of curve-degree vectors (`l` for `X`, `l+1` for `Z`).
    fn degree_len(&self) -> usize;
    /// Charge matrix, `degree_len` rows by `num_rays` columns.
    fn charge(&self) -> &[Vec<i64>];
    /// The lattice points the vertex test runs on (`w_i` for `X`, the full
    /// rays for `Z`).
    fn lattice_points(&self) -> &[Vec<i64>];

    /// The divisor attached to ray `i`, carrying charge column `i`.
    fn divisor(&self, i: usize) -> DivisorClass {
        assert!(i < self.num_rays(), "ray index {i} out of range");
        DivisorClass {
            ray: i,
            pairing_vector: self.charge().iter().map(|row| row[i]).collect(),
        }
    }

    /// Intersection pairing of divisor `i` with degree `d`.
    fn pairing(&self, i: usize, d: &CurveDegree) -> i64 {
        self.divisor(i).pairing(d)
    }

    /// First Chern pairing: the sum of all divisor pairings.
    fn first_chern(&self, d: &CurveDegree) -> i64 {
        (0..self.num_rays()).map(|i| self.pairing(i, d)).sum()
    }

    /// All effective degrees with total degree at most `order` that satisfy
    /// the predicate, in lexicographic order without duplicates.
    fn enumerate_degrees<F>(&self, order: u32, predicate: F) -> Vec<CurveDegree>
    where
        F: Fn(&CurveDegree) -> bool,
    {
        let mut out = Vec::new();
        let mut current = vec![0i64; self.degree_len()];
        enumerate_rec(&mut current, 0, order as i64, &predicate, &mut out);
        out
    }

    /// Whether lattice point `j` is a vertex of the convex hull of all the
    /// lattice points, decided by exact rational feasibility.
    fn is_vertex(&self, j: usize) -> bool {
        assert!(j < self.num_rays(), "ray index {j} out of range");
        !in_convex_hull_of_others(self.lattice_points(), j)
    }
}

fn enumerate_rec<F>(
    current: &mut Vec<i64>,
    pos: usize,
    budget: i64,
    predicate: &F,
    out: &mut Vec<CurveDegree>,
) where
    F: Fn(&CurveDegree) -> bool,
{
    if pos == current.len() {
        let d = CurveDegree(current.clone());
        if predicate(&d) {
            out.push(d);
        }
        return;
    }
    for v in 0..=budget {
        current[pos] = v;
        enumerate_rec(current, pos + 1, budget - v, predicate, out);
    }
    current[pos] = 0;
}

impl ToricCYData {
    /// Wrap raw manifest data; call [`ToricCYData::validate`] before trusting it.
    pub fn new(n: usize, points: Vec<Vec<i64>>, charge: Vec<Vec<i64>>) -> Self {
        Self { n, points, charge }
    }

    /// Ambient complex dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Picard rank `l = m - n`.
    pub fn picard_rank(&self) -> usize {
        self.points.len().saturating_sub(self.n)
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// Check every construction invariant and the nef-basis heuristic;
    /// violations are data, not errors.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let m = self.points.len();
        if self.n < 2 {
            report
                .violations
                .push(Violation::Structure(format!("n must be >= 2, got {}", self.n)));
            return report;
        }
        if m <= self.n {
            report.violations.push(Violation::Structure(format!(
                "need more than n = {} lattice points, got {m}",
                self.n
            )));
            return report;
        }
        let l = m - self.n;
        if let Some(bad) = self.points.iter().position(|w| w.len() != self.n - 1) {
            report.violations.push(Violation::Structure(format!(
                "lattice point {bad} has {} coordinates, expected {}",
                self.points[bad].len(),
                self.n - 1
            )));
            return report;
        }
        if self.charge.len() != l {
            report.violations.push(Violation::Structure(format!(
                "charge matrix has {} rows, expected l = m - n = {l}",
                self.charge.len()
            )));
            return report;
        }
        if let Some(bad) = self.charge.iter().position(|row| row.len() != m) {
            report.violations.push(Violation::Structure(format!(
                "charge row {bad} has {} entries, expected m = {m}",
                self.charge[bad].len()
            )));
            return report;
        }

        if !self.points[0].iter().all(|&x| x == 0) {
            report.violations.push(Violation::OriginNotFirst);
        }
        for (a, row) in self.charge.iter().enumerate() {
            let sum: i64 = row.iter().sum();
            if sum != 0 {
                report.violations.push(Violation::ChargeRowSum { row: a, sum });
            }
            for coord in 0..self.n - 1 {
                let rel: i64 = row
                    .iter()
                    .zip(&self.points)
                    .map(|(q, w)| q * w[coord])
                    .sum();
                if rel != 0 {
                    report.violations.push(Violation::ChargeRelation { row: a });
                    break;
                }
            }
        }
        let rank = rational_rank(&self.charge);
        if rank != l {
            report
                .violations
                .push(Violation::RankDeficient { rank, expected: l });
        }
        for i in 0..m {
            for j in i + 1..m {
                if self.points[i] == self.points[j] {
                    report
                        .violations
                        .push(Violation::DuplicatePoint { first: i, second: j });
                }
            }
        }
        // Heuristic sanity check on the basis choice: away from the
        // distinguished column 0, a divisor pairing nonpositively with every
        // basis curve suggests the rows are not a nef basis. Column 0 is
        // exempt (it always pairs negatively for these geometries).
        for i in 1..m {
            if !self.charge.is_empty() && self.charge.iter().all(|row| row[i] <= 0) {
                report.warnings.push(format!(
                    "charge column {i} is nonpositive in every row; \
                     degrees are enumerated in the octant of the given rows, \
                     which assumes they form a nef basis"
                ));
            }
        }
        report
    }

    /// Build the compactification `Z`: append the ray opposite ray 0 and the
    /// charge row pairing the two, extending the existing rows by zero.
    /// Rejects data that does not validate.
    pub fn compactify(&self) -> Result<CompactifiedData, ToricError> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(ToricError::Invalid(report.to_string()));
        }
        let m = self.points.len();
        let l = self.picard_rank();
        let mut rays: Vec<Vec<i64>> = self
            .points
            .iter()
            .map(|w| {
                let mut v = w.clone();
                v.push(1);
                v
            })
            .collect();
        let mut opposite = vec![0i64; self.n];
        opposite[self.n - 1] = -1;
        rays.push(opposite);

        let mut charge: Vec<Vec<i64>> = self
            .charge
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(0);
                r
            })
            .collect();
        let mut fiber = vec![0i64; m + 1];
        fiber[0] = 1;
        fiber[m] = 1;
        charge.push(fiber);
        debug_assert_eq!(charge.len(), l + 1);

        let z = CompactifiedData {
            base: self.clone(),
            rays,
            charge,
        };
        debug_assert!(z.lattice_relations_hold());
        Ok(z)
    }

    /// Normalized lattice volume of the convex hull of the `w_i` (the unit
    /// simplex has volume 1). With a triangulation: the sum of |det| of edge
    /// matrices. Without one, only hull dimensions 1 and 2 are supported.
    pub fn normalized_volume(
        &self,
        triangulation: Option<&[Vec<usize>]>,
    ) -> Result<u64, ToricError> {
        match triangulation {
            Some(simplices) => self.volume_from_triangulation(simplices),
            None => match self.n - 1 {
                1 => {
                    let xs: Vec<i64> = self.points.iter().map(|w| w[0]).collect();
                    let max = *xs.iter().max().unwrap();
                    let min = *xs.iter().min().unwrap();
                    Ok((max - min) as u64)
                }
                2 => Ok(polygon_normalized_area(&self.points)),
                d => Err(ToricError::UnsupportedDimension(d)),
            },
        }
    }

    fn volume_from_triangulation(&self, simplices: &[Vec<usize>]) -> Result<u64, ToricError> {
        let dim = self.n - 1;
        let mut total: u64 = 0;
        for (index, simplex) in simplices.iter().enumerate() {
            if simplex.len() != dim + 1 {
                return Err(ToricError::BadSimplexSize {
                    index,
                    expected: dim + 1,
                    got: simplex.len(),
                });
            }
            for &p in simplex {
                if p >= self.points.len() {
                    return Err(ToricError::SimplexIndexOutOfRange { index, point: p });
                }
            }
            let base = &self.points[simplex[0]];
            let edges: Vec<Vec<BigInt>> = simplex[1..]
                .iter()
                .map(|&p| {
                    self.points[p]
                        .iter()
                        .zip(base)
                        .map(|(a, b)| BigInt::from(a - b))
                        .collect()
                })
                .collect();
            let det = integer_determinant(edges);
            if det.is_zero() {
                return Err(ToricError::DegenerateSimplex { index });
            }
            total += u64::try_from(det.abs()).expect("simplex volume exceeds u64");
        }
        Ok(total)
    }
}

impl ToricGeometry for ToricCYData {
    fn num_rays(&self) -> usize {
        self.points.len()
    }
    fn degree_len(&self) -> usize {
        self.picard_rank()
    }
    fn charge(&self) -> &[Vec<i64>] {
        &self.charge
    }
    fn lattice_points(&self) -> &[Vec<i64>] {
        &self.points
    }
}

impl CompactifiedData {
    pub fn base(&self) -> &ToricCYData {
        &self.base
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Drop the added ray and charge row, recovering the input data.
    pub fn decompactify(&self) -> ToricCYData {
        let m = self.base.points.len();
        let points = self
            .rays
            .iter()
            .take(m)
            .map(|v| v[..v.len() - 1].to_vec())
            .collect();
        let charge = self
            .charge
            .iter()
            .take(self.charge.len() - 1)
            .map(|row| row[..m].to_vec())
            .collect();
        ToricCYData::new(self.base.n, points, charge)
    }

    /// Every charge row is a relation among the rays.
    pub fn lattice_relations_hold(&self) -> bool {
        self.charge.iter().all(|row| {
            (0..self.base.n).all(|coord| {
                row.iter()
                    .zip(&self.rays)
                    .map(|(q, v)| q * v[coord])
                    .sum::<i64>()
                    == 0
            })
        })
    }
}

impl ToricGeometry for CompactifiedData {
    fn num_rays(&self) -> usize {
        self.rays.len()
    }
    fn degree_len(&self) -> usize {
        self.base.picard_rank() + 1
    }
    fn charge(&self) -> &[Vec<i64>] {
        &self.charge
    }
    fn lattice_points(&self) -> &[Vec<i64>] {
        &self.rays
    }
}

/// Rank of an integer matrix over the rationals, by Gaussian elimination.
fn rational_rank(matrix: &[Vec<i64>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..cols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix by cofactor-free Gaussian
/// elimination over the rationals (matrices here are tiny).
fn integer_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut rat: Vec<Vec<BigRational>> = m
        .drain(..)
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut det = BigRational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rat[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != col {
            rat.swap(col, pivot);
            det = -det;
        }
        det *= &rat[col][col];
        let inv = rat[col][col].recip();
        for r in col + 1..n {
            if rat[r][col].is_zero() {
                continue;
            }
            let factor = &rat[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &rat[col][c];
                rat[r][c] -= sub;
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// Is `points[j]` a convex combination of the other points? Exact rational
/// test: by Caratheodory it suffices to scan affinely independent subsets of
/// size at most `dim + 1`, solving each barycentric system exactly.
fn in_convex_hull_of_others(points: &[Vec<i64>], j: usize) -> bool {
    let dim = points[j].len();
    let others: Vec<usize> = (0..points.len()).filter(|&k| k != j).collect();
    let mut subset = Vec::new();
    subsets_up_to(&others, dim + 1, &mut subset, &mut |chosen| {
        barycentric_membership(points, j, chosen)
    })
}

/// Visit subsets of `pool` of size 1..=max_size until `f` returns true.
fn subsets_up_to(
    pool: &[usize],
    max_size: usize,
    current: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if !current.is_empty() && f(current) {
        return true;
    }
    if current.len() == max_size {
        return false;
    }
    let start = current
        .last()
        .map(|&last| pool.iter().position(|&p| p == last).unwrap() + 1)
        .unwrap_or(0);
    for idx in start..pool.len() {
        current.push(pool[idx]);
        if subsets_up_to(pool, max_size, current, f) {
            return true;
        }
        current.pop();
    }
    false
}

/// Does the barycentric system `sum_k c_k p_k = p_j, sum_k c_k = 1` over the
/// chosen points have a unique solution with all coordinates nonnegative?
/// Affinely dependent subsets are skipped; smaller subsets cover them.
fn barycentric_membership(points: &[Vec<i64>], j: usize, chosen: &[usize]) -> bool {
    let dim = points[j].len();
    let rows = dim + 1;
    let cols = chosen.len();
    // Augmented system [points^T; 1 | p_j; 1].
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = chosen
                .iter()
                .map(|&k| {
                    let v = if r < dim { points[k][r] } else { 1 };
                    BigRational::from_integer(v.into())
                })
                .collect();
            let rhs = if r < dim { points[j][r] } else { 1 };
            row.push(BigRational::from_integer(rhs.into()));
            row
        })
        .collect();

    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..=cols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    if rank < cols {
        return false; // affinely dependent; a smaller subset decides
    }
    // Inconsistent system: a zero row with nonzero right-hand side.
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return false;
        }
    }
    (0..cols).all(|c| !m[pivot_of_col[c]][cols].is_negative())
}

/// Normalized area (twice the Euclidean area) of the convex hull of 2-d
/// integer points, via monotone-chain hull and the shoelace sum.
fn polygon_normalized_area(points: &[Vec<i64>]) -> u64 {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|w| (w[0], w[1])).collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i128 {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    };
    let chain = |iter: &mut dyn Iterator<Item = (i64, i64)>| -> Vec<(i64, i64)> {
        let mut half: Vec<(i64, i64)> = Vec::new();
        for p in iter {
            while half.len() >= 2 && cross(half[half.len() - 2], half[half.len() - 1], p) <= 0 {
                half.pop();
            }
            half.push(p);
        }
        half
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    let hull = lower;
    let mut twice_area: i128 = 0;
    for i in 0..hull.len() {
        let (x1, y1) = hull[i];
        let (x2, y2) = hull[(i + 1) % hull.len()];
        twice_area += x1 as i128 * y2 as i128 - x2 as i128 * y1 as i128;
    }
    twice_area.unsigned_abs() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn local_p1() -> ToricCYData {
        ToricCYData::new(2, vec![vec![0], vec![-1], vec![1]], vec![vec![-2, 1, 1]])
    }

    pub(crate) fn local_p2() -> ToricCYData {
        ToricCYData::new(
            3,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![-3, 1, 1, 1]],
        )
    }

    pub(crate) fn local_p1xp1() -> ToricCYData {
        ToricCYData::new(
            3,
            vec![vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![-2, 1, 1, 0, 0], vec![-2, 0, 0, 1, 1]],
        )
    }

    #[test]
    fn valid_geometries_pass() {
        assert!(local_p1().validate().is_ok());
        assert!(local_p2().validate().is_ok());
        assert!(local_p1xp1().validate().is_ok());
    }

    #[test]
    fn bad_row_sum_is_reported() {
        let data = ToricCYData::new(2, vec![vec![0], vec![-1], vec![1]], vec![vec![-3, 1, 1]]);
        let report = data.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ChargeRowSum { row: 0, sum: -1 })));
    }

    #[test]
    fn bad_relation_and_duplicates_reported() {
        let data = ToricCYData::new(2, vec![vec![0], vec![-1], vec![3]], vec![vec![-2, 1, 1]]);
        assert!(data
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ChargeRelation { row: 0 })));
        let dup = ToricCYData::new(2, vec![vec![0], vec![1], vec![1]], vec![vec![-2, 1, 1]]);
        assert!(dup
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicatePoint { first: 1, second: 2 })));
    }

    #[test]
    fn origin_must_come_first() {
        let data = ToricCYData::new(2, vec![vec![-1], vec![0], vec![1]], vec![vec![1, -2, 1]]);
        assert!(data
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OriginNotFirst)));
    }

    #[test]
    fn compactify_local_p1() {
        let z = local_p1().compactify().unwrap();
        assert_eq!(
            z.rays(),
            &[vec![0, 1], vec![-1, 1], vec![1, 1], vec![0, -1]]
        );
        assert_eq!(z.charge(), &[vec![-2, 1, 1, 0], vec![1, 0, 0, 1]]);
    }

    #[test]
    fn compactify_adds_fiber_row() {
        let z = local_p2().compactify().unwrap();
        assert_eq!(z.charge()[1], vec![1, 0, 0, 0, 1]);
        // Column m has its single 1 in the last row.
        let m = 4;
        for (a, row) in z.charge().iter().enumerate() {
            assert_eq!(row[m], i64::from(a == 1));
        }
    }

    #[test]
    fn compactify_round_trips() {
        for data in [local_p1(), local_p2(), local_p1xp1()] {
            let z = data.compactify().unwrap();
            assert_eq!(z.decompactify(), data);
            assert!(z.lattice_relations_hold());
        }
    }

    #[test]
    fn compactify_rejects_invalid() {
        let data = ToricCYData::new(2, vec![vec![0], vec![-1], vec![1]], vec![vec![-3, 1, 1]]);
        assert!(data.compactify().is_err());
    }

    #[test]
    fn pairings_on_z_over_p2() {
        let z = local_p2().compactify().unwrap();
        let line = CurveDegree(vec![1, 0]);
        assert_eq!(z.pairing(0, &line), -3);
        for i in 1..4 {
            assert_eq!(z.pairing(i, &line), 1);
        }
        assert_eq!(z.pairing(4, &line), 0);
        assert_eq!(z.first_chern(&line), 0);

        let fiber = CurveDegree(vec![0, 1]);
        assert_eq!(z.first_chern(&fiber), 2);

        let zero = CurveDegree(vec![0, 0]);
        assert_eq!(z.first_chern(&zero), 0);
        assert!((0..5).all(|i| z.pairing(i, &zero) == 0));
    }

    #[test]
    fn first_chern_is_linear() {
        let z = local_p1xp1().compactify().unwrap();
        let degrees = [
            CurveDegree(vec![1, 0, 0]),
            CurveDegree(vec![0, 2, 1]),
            CurveDegree(vec![3, 1, 2]),
        ];
        for d1 in &degrees {
            for d2 in &degrees {
                let sum = CurveDegree(d1.0.iter().zip(&d2.0).map(|(a, b)| a + b).collect());
                assert_eq!(z.first_chern(&sum), z.first_chern(d1) + z.first_chern(d2));
            }
        }
    }

    fn xi_predicate<'a>(
        z: &'a CompactifiedData,
        j: usize,
    ) -> impl Fn(&CurveDegree) -> bool + 'a {
        move |d| {
            z.first_chern(d) == 0
                && z.pairing(j, d) < 0
                && (0..z.num_rays()).all(|i| i == j || z.pairing(i, d) >= 0)
        }
    }

    #[test]
    fn degree_enumeration_for_xi0() {
        let z = local_p2().compactify().unwrap();
        let found = z.enumerate_degrees(3, xi_predicate(&z, 0));
        assert_eq!(
            found,
            vec![
                CurveDegree(vec![1, 0]),
                CurveDegree(vec![2, 0]),
                CurveDegree(vec![3, 0])
            ]
        );

        let zp1 = local_p1().compactify().unwrap();
        let found = zp1.enumerate_degrees(2, xi_predicate(&zp1, 0));
        assert_eq!(
            found,
            vec![CurveDegree(vec![1, 0]), CurveDegree(vec![2, 0])]
        );
    }

    #[test]
    fn order_zero_enumeration_is_empty_under_strict_predicates() {
        let z = local_p1().compactify().unwrap();
        assert!(z.enumerate_degrees(0, xi_predicate(&z, 0)).is_empty());
    }

    #[test]
    fn fiber_pairing_vanishes_on_xi_degrees() {
        for data in [local_p1(), local_p2(), local_p1xp1()] {
            let z = data.compactify().unwrap();
            let last = z.num_rays() - 1;
            for j in 0..z.num_rays() {
                for d in z.enumerate_degrees(4, xi_predicate(&z, j)) {
                    assert_eq!(z.pairing(last, &d), 0, "D_m . {d} != 0");
                }
            }
        }
    }

    #[test]
    fn vertex_tests() {
        let p2 = local_p2();
        assert!(!p2.is_vertex(0));
        assert!(p2.is_vertex(1));
        assert!(p2.is_vertex(2));
        assert!(p2.is_vertex(3));

        let p1 = local_p1();
        assert!(!p1.is_vertex(0));
        assert!(p1.is_vertex(1));
        assert!(p1.is_vertex(2));
    }

    #[test]
    fn vertex_test_on_compactified_rays() {
        // In Z the lifted origin sits inside the top facet, while the
        // opposite ray is the unique point below it.
        for data in [local_p1(), local_p2(), local_p1xp1()] {
            let z = data.compactify().unwrap();
            assert!(!z.is_vertex(0));
            assert!(z.is_vertex(z.num_rays() - 1));
        }
    }

    #[test]
    fn vertices_affinely_span() {
        for data in [local_p1(), local_p2(), local_p1xp1()] {
            let verts: Vec<Vec<i64>> = (0..data.num_rays())
                .filter(|&j| data.is_vertex(j))
                .map(|j| data.points()[j].clone())
                .collect();
            assert!(verts.len() >= data.dim());
            let diffs: Vec<Vec<i64>> = verts[1..]
                .iter()
                .map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect())
                .collect();
            assert_eq!(rational_rank(&diffs), data.dim() - 1);
        }
    }

    #[test]
    fn automatic_volumes() {
        assert_eq!(local_p1().normalized_volume(None).unwrap(), 2);
        assert_eq!(local_p2().normalized_volume(None).unwrap(), 3);
        assert_eq!(local_p1xp1().normalized_volume(None).unwrap(), 4);
    }

    #[test]
    fn triangulated_volume_matches_and_ignores_order() {
        let p2 = local_p2();
        let tri = vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1]];
        assert_eq!(p2.normalized_volume(Some(&tri)).unwrap(), 3);
        let mut shuffled = tri.clone();
        shuffled.rotate_left(1);
        assert_eq!(p2.normalized_volume(Some(&shuffled)).unwrap(), 3);
    }

    #[test]
    fn degenerate_simplex_is_reported() {
        let p2 = local_p2();
        let tri = vec![vec![0, 1, 1]];
        assert_eq!(
            p2.normalized_volume(Some(&tri)),
            Err(ToricError::DegenerateSimplex { index: 0 })
        );
        let bad = vec![vec![0, 1, 9]];
        assert_eq!(
            p2.normalized_volume(Some(&bad)),
            Err(ToricError::SimplexIndexOutOfRange { index: 0, point: 9 })
        );
    }

    #[test]
    fn unsupported_dimension_without_triangulation() {
        // A 4-dimensional example: K_{P^3}.
        let p3 = ToricCYData::new(
            4,
            vec![
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -1, -1],
            ],
            vec![vec![-4, 1, 1, 1, 1]],
        );
        assert!(p3.validate().is_ok());
        assert_eq!(
            p3.normalized_volume(None),
            Err(ToricError::UnsupportedDimension(3))
        );
        let tri = vec![
            vec![0, 1, 2, 3],
            vec![0, 1, 2, 4],
            vec![0, 1, 3, 4],
            vec![0, 2, 3, 4],
        ];
        assert_eq!(p3.normalized_volume(Some(&tri)).unwrap(), 4);
    }
}
