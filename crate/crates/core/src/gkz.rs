//! GKZ-type differential operators attached to curve degrees of `Z`, and the
//! verification that the mirror-map log-components are annihilated by them.
//!
//! For a degree `d` the operator is
//!
//! ```text
//! P_d = prod_{i: <D_i,d> > 0} prod_{k=0}^{<D_i,d>-1} (D_i - k)
//!     - y^d * prod_{i: <D_i,d> < 0} prod_{k=0}^{-<D_i,d>-1} (D_i - k)
//! ```
//!
//! where `D_i = sum_a Q^a_i theta_a` is the Euler operator of ray `i`. All
//! factors commute, so application order is immaterial. Multiplying by `y^d`
//! consumes `|d|` degrees of series resolution, so a residual is certified
//! zero only through `order - |d|`; the report records that effective order.
//!
//! The A-variable form of the hypergeometric system is never manipulated
//! directly: its Euler equations reduce to the integer identity
//! `sum_i Q^a_i v_i = 0` on the lattice, which is checked literally, and its
//! box operators reduce to the `P_d` above.

use std::fmt;

use num::{BigRational, One};
use thiserror::Error;

use crate::mirror::toric_mirror_map;
use crate::series::LogSeries;
use crate::toric::{CompactifiedData, CurveDegree, ToricError, ToricGeometry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkzError {
    #[error("the zero degree has no associated operator")]
    ZeroDegree,
    #[error("degree length {got} does not match charge rank {expected}")]
    DegreeLength { got: usize, expected: usize },
}

/// The operator `P_d` in factored form: the two products of shifted Euler
/// operators and the monomial multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkzOperator {
    degree: CurveDegree,
    /// `(ray, <D_i,d>)` for rays pairing positively.
    positive_factors: Vec<(usize, i64)>,
    /// `(ray, -<D_i,d>)` for rays pairing negatively.
    negative_factors: Vec<(usize, i64)>,
    /// Charge matrix of the ambient geometry (rows `Q^a`).
    charge: Vec<Vec<i64>>,
}

/// Build `P_d` for a nonzero degree `d` of `Z`.
pub fn build_operator(z: &CompactifiedData, d: &CurveDegree) -> Result<GkzOperator, GkzError> {
    if d.len() != z.degree_len() {
        return Err(GkzError::DegreeLength {
            got: d.len(),
            expected: z.degree_len(),
        });
    }
    if d.is_zero() {
        return Err(GkzError::ZeroDegree);
    }
    let mut positive_factors = Vec::new();
    let mut negative_factors = Vec::new();
    for i in 0..z.num_rays() {
        let pairing = z.pairing(i, d);
        if pairing > 0 {
            positive_factors.push((i, pairing));
        } else if pairing < 0 {
            negative_factors.push((i, -pairing));
        }
    }
    Ok(GkzOperator {
        degree: d.clone(),
        positive_factors,
        negative_factors,
        charge: z.charge().to_vec(),
    })
}

impl GkzOperator {
    pub fn degree(&self) -> &CurveDegree {
        &self.degree
    }

    /// Rays with positive pairing, with their multiplicities.
    pub fn positive_factors(&self) -> &[(usize, i64)] {
        &self.positive_factors
    }

    /// Rays with negative pairing, with the absolute pairing as multiplicity.
    pub fn negative_factors(&self) -> &[(usize, i64)] {
        &self.negative_factors
    }

    /// The Euler operator `D_i = sum_a Q^a_i theta_a` applied to `phi`.
    fn euler_operator(&self, i: usize, phi: &LogSeries) -> LogSeries {
        let mut out = LogSeries::zero(phi.nvars(), phi.order(), 1);
        for (a, row) in self.charge.iter().enumerate() {
            if row[i] != 0 {
                let coeff = BigRational::from_integer(row[i].into());
                out = &out + &phi.theta(a).scalar_mul(&coeff);
            }
        }
        out
    }

    /// One product of shifted factors `prod_i prod_k (D_i - k)` applied to
    /// `phi` (factors commute; they are applied innermost-first).
    fn apply_factors(&self, factors: &[(usize, i64)], phi: &LogSeries) -> LogSeries {
        let mut out = phi.clone();
        for &(i, multiplicity) in factors {
            for k in 0..multiplicity {
                let shift = BigRational::from_integer((-k).into());
                let shifted = if k == 0 {
                    self.euler_operator(i, &out)
                } else {
                    &self.euler_operator(i, &out) + &out.scalar_mul(&shift)
                };
                out = shifted;
            }
        }
        out
    }

    /// Apply `P_d` exactly; the result is truncated at the shared order and
    /// its terms are certified only through `order - |d|`.
    pub fn apply(&self, phi: &LogSeries) -> LogSeries {
        assert_eq!(
            phi.nvars(),
            self.degree.len(),
            "log-series variable count does not match the operator"
        );
        let first = self.apply_factors(&self.positive_factors, phi);
        let second = self.apply_factors(&self.negative_factors, phi);
        let monomial = second.mul_monomial(&self.degree.exponents(), &BigRational::one());
        &first - &monomial
    }

    /// The order through which a zero residual at truncation `order` is
    /// certified.
    pub fn effective_order(&self, order: u32) -> u32 {
        order.saturating_sub(self.degree.total().max(0) as u32)
    }
}

/// Residual of one operator applied to one mirror-map component.
#[derive(Debug, Clone)]
pub struct GkzEntry {
    pub degree: CurveDegree,
    /// Which `log q_a` was tested (0-based, `a < l`).
    pub component: usize,
    pub effective_order: u32,
    pub residual: LogSeries,
}

impl GkzEntry {
    /// Zero through the effective order.
    pub fn passed(&self) -> bool {
        self.residual.is_zero_through(self.effective_order)
    }
}

/// Outcome of the annihilation suite on one geometry.
#[derive(Debug, Clone)]
pub struct GkzReport {
    pub order: u32,
    pub degree_bound: u32,
    pub entries: Vec<GkzEntry>,
    /// The lattice identity `sum_i Q^a_i v_i = 0`, checked per charge row.
    pub euler_identity: bool,
    /// Normalized volume of the polytope of `X`: the dimension of the full
    /// solution space the annihilated components belong to.
    pub expected_solutions: u64,
}

impl GkzReport {
    pub fn all_passed(&self) -> bool {
        self.euler_identity && self.entries.iter().all(GkzEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GkzEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    /// The weakest certification order among the entries.
    pub fn min_effective_order(&self) -> u32 {
        self.entries
            .iter()
            .map(|e| e.effective_order)
            .min()
            .unwrap_or(self.order)
    }
}

impl fmt::Display for GkzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_passed() {
            write!(
                f,
                "residuals: all zero (effective order >= {}); ",
                self.min_effective_order()
            )?;
        } else {
            let failed = self.failures().count();
            write!(f, "residuals: {failed} nonzero of {}; ", self.entries.len())?;
        }
        write!(
            f,
            "euler identity: {}; expected solutions: {}",
            if self.euler_identity { "holds" } else { "fails" },
            self.expected_solutions
        )
    }
}

/// Apply every `P_d` with `d` effective, `0 < |d| <= degree_bound` and zero
/// fiber coordinate to every base component `log q_a` (`a = 1..l`), record
/// the residuals, check the lattice form of the Euler equations, and report
/// the solution-count prediction. Failures are report entries, not errors;
/// `cones` feeds the volume computation when the polytope dimension needs it.
pub fn check_solutions(
    z: &CompactifiedData,
    order: u32,
    degree_bound: u32,
    cones: Option<&[Vec<usize>]>,
) -> Result<GkzReport, ToricError> {
    let l = z.degree_len() - 1;
    let euler_identity = z.lattice_relations_hold();
    let expected_solutions = z.base().normalized_volume(cones)?;
    let logq = toric_mirror_map(z, order);

    let degrees = z.enumerate_degrees(degree_bound, |d| !d.is_zero() && d.0[l] == 0);
    let mut entries = Vec::new();
    for d in &degrees {
        let op = build_operator(z, d).expect("enumerated degrees are nonzero");
        for (component, phi) in logq.iter().take(l).enumerate() {
            entries.push(GkzEntry {
                degree: d.clone(),
                component,
                effective_order: op.effective_order(order),
                residual: op.apply(phi),
            });
        }
    }
    Ok(GkzReport {
        order,
        degree_bound,
        entries,
        euler_identity,
        expected_solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, rat_int, MultiSeries};
    use crate::toric::ToricCYData;

    fn local_p1() -> CompactifiedData {
        ToricCYData::new(2, vec![vec![0], vec![-1], vec![1]], vec![vec![-2, 1, 1]])
            .compactify()
            .unwrap()
    }

    fn local_p2() -> CompactifiedData {
        ToricCYData::new(
            3,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![-3, 1, 1, 1]],
        )
        .compactify()
        .unwrap()
    }

    fn local_p1xp1() -> CompactifiedData {
        ToricCYData::new(
            3,
            vec![vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![-2, 1, 1, 0, 0], vec![-2, 0, 0, 1, 1]],
        )
        .compactify()
        .unwrap()
    }

    #[test]
    fn operator_factorization_for_local_p1() {
        let z = local_p1();
        let op = build_operator(&z, &CurveDegree(vec![1, 0])).unwrap();
        assert_eq!(op.positive_factors(), &[(1, 1), (2, 1)]);
        assert_eq!(op.negative_factors(), &[(0, 2)]);
    }

    #[test]
    fn fiber_operator_over_p2_has_empty_negative_side() {
        let z = local_p2();
        let op = build_operator(&z, &CurveDegree(vec![0, 1])).unwrap();
        assert_eq!(op.positive_factors(), &[(0, 1), (4, 1)]);
        assert_eq!(op.negative_factors(), &[]);
    }

    #[test]
    fn negating_the_degree_swaps_the_factor_sets() {
        let z = local_p1xp1();
        let d = CurveDegree(vec![2, 1, 0]);
        let neg = CurveDegree(d.0.iter().map(|x| -x).collect());
        let op = build_operator(&z, &d).unwrap();
        let op_neg = build_operator(&z, &neg).unwrap();
        assert_eq!(op.positive_factors(), op_neg.negative_factors());
        assert_eq!(op.negative_factors(), op_neg.positive_factors());
    }

    #[test]
    fn zero_degree_is_rejected() {
        let z = local_p1();
        assert_eq!(
            build_operator(&z, &CurveDegree(vec![0, 0])),
            Err(GkzError::ZeroDegree)
        );
        assert!(matches!(
            build_operator(&z, &CurveDegree(vec![1])),
            Err(GkzError::DegreeLength { got: 1, expected: 2 })
        ));
    }

    #[test]
    fn constants_survive_only_the_derivative_branch() {
        // With a nonempty negative side every factor kills constants; with an
        // empty negative side the monomial branch leaves -y^d behind.
        let z = local_p2();
        let one = LogSeries::from_series(MultiSeries::one(2, 4), 1);

        let annihilating = build_operator(&z, &CurveDegree(vec![1, 0])).unwrap();
        assert!(annihilating.apply(&one).is_zero());

        let fiber_op = build_operator(&z, &CurveDegree(vec![0, 1])).unwrap();
        let residual = fiber_op.apply(&one);
        let expected = LogSeries::from_series(
            MultiSeries::monomial(2, 4, vec![0, 1], rat_int(-1)),
            1,
        );
        assert_eq!(residual, expected);
    }

    #[test]
    fn mirror_map_components_are_annihilated_local_p1() {
        let z = local_p1();
        let logq = toric_mirror_map(&z, 8);
        let op = build_operator(&z, &CurveDegree(vec![1, 0])).unwrap();
        let residual = op.apply(&logq[0]);
        assert!(residual.is_zero_through(op.effective_order(8)));
    }

    #[test]
    fn operator_application_is_linear() {
        let z = local_p2();
        let logq = toric_mirror_map(&z, 6);
        let phi = &logq[0];
        let psi = &LogSeries::from_series(
            MultiSeries::from_terms(2, 6, [(vec![2, 0], rat(7, 2)), (vec![1, 1], rat_int(-3))]),
            1,
        );
        for d in [CurveDegree(vec![1, 0]), CurveDegree(vec![2, 1])] {
            let op = build_operator(&z, &d).unwrap();
            let lhs = op.apply(&(phi + psi));
            let rhs = &op.apply(phi) + &op.apply(psi);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn full_reports_pass_for_shipped_geometries() {
        for z in [local_p1(), local_p2(), local_p1xp1()] {
            let report = check_solutions(&z, 8, 3, None).unwrap();
            assert!(report.euler_identity);
            assert!(report.all_passed(), "{report}");
            assert!(!report.entries.is_empty());
            assert_eq!(report.min_effective_order(), 5);
        }
    }

    #[test]
    fn expected_solution_counts() {
        let vols: Vec<u64> = [local_p1(), local_p2(), local_p1xp1()]
            .iter()
            .map(|z| check_solutions(z, 4, 2, None).unwrap().expected_solutions)
            .collect();
        assert_eq!(vols, vec![2, 3, 4]);
    }

    #[test]
    fn corrupting_one_coefficient_breaks_annihilation() {
        let z = local_p1();
        let logq = toric_mirror_map(&z, 8);
        let bump = LogSeries::from_series(
            MultiSeries::monomial(2, 8, vec![2, 0], rat(1, 7)),
            1,
        );
        let corrupted = &logq[0] + &bump;
        let op = build_operator(&z, &CurveDegree(vec![1, 0])).unwrap();
        let residual = op.apply(&corrupted);
        assert!(!residual.is_zero_through(op.effective_order(8)));
    }
}
