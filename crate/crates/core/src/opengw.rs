//! The open Gromov-Witten generating function `1 + delta_0(q)` of `X = K_Y`,
//! the invariant table `n_{beta_0 + alpha}`, and the SYZ map built from them.
//!
//! The generating function is computed as `exp(Xi_0(y(q)))` with `y(q)` the
//! inverted mirror map of the compactification. Two identities are asserted
//! on every run rather than assumed:
//!
//! * the fiber component satisfies `y_{l+1}(q) = q_{l+1} (1 + delta_0(q))`,
//! * the SYZ product formula `y_a = q_a (1 + delta_0)^{Q^a_0}` reproduces the
//!   first `l` inverted components coefficient-by-coefficient.
//!
//! A failure of either is a defect in the computation, not a property of the
//! input, so both panic. Basic disk classes beyond the distinguished one
//! contribute the constant 1 (`n_{beta_i} = 1`, `delta_i = 0` for `i >= 1`),
//! which is what specializes the SYZ product to a single factor.

use num::One;

use crate::mirror::MirrorMap;
use crate::series::{Coeff, MultiSeries};
use crate::toric::{CompactifiedData, ToricCYData, ToricError, ToricGeometry};

/// Generating function, invariant table and SYZ map of one geometry at one
/// truncation order.
#[derive(Debug, Clone)]
pub struct OpenGw {
    order: u32,
    generating: MultiSeries,
    syz: Vec<MultiSeries>,
    integrality_warnings: Vec<String>,
}

impl OpenGw {
    /// Run the full computation for `X`, with every internal cross-check.
    pub fn compute(x: &ToricCYData, order: u32) -> Result<Self, ToricError> {
        let z = x.compactify()?;
        Ok(Self::compute_on(&z, order))
    }

    /// Same, starting from an already-compactified geometry.
    pub fn compute_on(z: &CompactifiedData, order: u32) -> Self {
        let l = z.degree_len() - 1;
        let mm = MirrorMap::new(z, order);
        let xi0 = &mm.xi()[0];
        let composed = xi0
            .substitute(mm.inverse())
            .expect("inverted components have zero constant term");
        let gen_full = composed
            .exp()
            .expect("Xi_0 composed with y(q) has zero constant term");

        // Fiber-component identity: y_{l+1}(q) = q_{l+1} * (1 + delta_0).
        let fiber = &mm.inverse()[l];
        let mut fiber_expo = vec![0u32; l + 1];
        fiber_expo[l] = 1;
        let product = gen_full.mul_monomial(&fiber_expo, &Coeff::one());
        assert_eq!(
            *fiber, product,
            "fiber component of the inverse mirror map does not match \
             q_(l+1) * (1 + delta_0); the inversion is inconsistent"
        );

        // The generating function only involves q_1..q_l.
        let generating = gen_full.drop_last_var();

        // SYZ product formula, cross-checked against the inversion route.
        let syz: Vec<MultiSeries> = (0..l)
            .map(|a| {
                let power = generating
                    .pow_int(z.charge()[a][0])
                    .expect("generating function is a unit series");
                let mut expo = vec![0u32; l];
                expo[a] = 1;
                power.mul_monomial(&expo, &Coeff::one())
            })
            .collect();
        for (a, y_a) in syz.iter().enumerate() {
            assert_eq!(
                *y_a,
                mm.inverse()[a].drop_last_var(),
                "SYZ product formula and inverse mirror map disagree in \
                 component {a}"
            );
        }

        let integrality_warnings = generating
            .terms_by_degree()
            .iter()
            .filter(|(_, c)| !c.is_integer())
            .map(|(e, c)| format!("non-integer invariant {c} at degree {e:?}"))
            .collect();

        Self {
            order,
            generating,
            syz,
            integrality_warnings,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The unit series `1 + delta_0(q)` in `q_1..q_l`.
    pub fn generating_function(&self) -> &MultiSeries {
        &self.generating
    }

    /// Nonzero invariants `(alpha, n_{beta_0 + alpha})`, sorted by total
    /// degree then lexicographically. The entry at `alpha = 0` is 1.
    pub fn invariant_table(&self) -> Vec<(Vec<u32>, Coeff)> {
        self.generating.terms_by_degree()
    }

    /// The SYZ-map components `y_a(q) = q_a (1 + delta_0)^{Q^a_0}`, `a = 1..l`.
    pub fn syz_map(&self) -> &[MultiSeries] {
        &self.syz
    }

    /// Non-integer coefficients are surfaced here, never silently accepted.
    pub fn integrality_warnings(&self) -> &[String] {
        &self.integrality_warnings
    }
}

/// Convenience wrapper: just the generating function.
pub fn generating_function(x: &ToricCYData, order: u32) -> Result<MultiSeries, ToricError> {
    Ok(OpenGw::compute(x, order)?.generating_function().clone())
}

/// Convenience wrapper: just the invariant table.
pub fn invariant_table(
    x: &ToricCYData,
    order: u32,
) -> Result<Vec<(Vec<u32>, Coeff)>, ToricError> {
    Ok(OpenGw::compute(x, order)?.invariant_table())
}

/// Convenience wrapper: just the SYZ map.
pub fn syz_map(x: &ToricCYData, order: u32) -> Result<Vec<MultiSeries>, ToricError> {
    Ok(OpenGw::compute(x, order)?.syz_map().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat_int;

    fn local_p1() -> ToricCYData {
        ToricCYData::new(2, vec![vec![0], vec![-1], vec![1]], vec![vec![-2, 1, 1]])
    }

    fn local_p2() -> ToricCYData {
        ToricCYData::new(
            3,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![-3, 1, 1, 1]],
        )
    }

    fn local_p1xp1() -> ToricCYData {
        ToricCYData::new(
            3,
            vec![vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![-2, 1, 1, 0, 0], vec![-2, 0, 0, 1, 1]],
        )
    }

    #[test]
    fn local_p1_generating_function_is_one_plus_q() {
        let ogw = OpenGw::compute(&local_p1(), 6).unwrap();
        let expected =
            MultiSeries::from_terms(1, 6, [(vec![0], rat_int(1)), (vec![1], rat_int(1))]);
        assert_eq!(*ogw.generating_function(), expected);
        assert_eq!(
            ogw.invariant_table(),
            vec![(vec![0], rat_int(1)), (vec![1], rat_int(1))]
        );
        assert!(ogw.integrality_warnings().is_empty());
    }

    #[test]
    fn local_p2_low_order_invariants() {
        let ogw = OpenGw::compute(&local_p2(), 5).unwrap();
        let gen = ogw.generating_function();
        for (k, expected) in [(0, 1), (1, -2), (2, 5), (3, -32), (4, 286), (5, -3038)] {
            assert_eq!(gen.coeff(&[k]), rat_int(expected), "coefficient of q^{k}");
        }
        assert!(ogw.integrality_warnings().is_empty());
    }

    #[test]
    fn local_p1xp1_low_order_invariants() {
        // Frozen from an independent two-variable reversion.
        let ogw = OpenGw::compute(&local_p1xp1(), 4).unwrap();
        let gen = ogw.generating_function();
        let expected = [
            (vec![0u32, 0u32], 1),
            (vec![1, 0], 1),
            (vec![0, 1], 1),
            (vec![1, 1], 3),
            (vec![2, 0], 0),
            (vec![0, 2], 0),
            (vec![2, 1], 5),
            (vec![1, 2], 5),
            (vec![3, 1], 7),
            (vec![2, 2], 35),
            (vec![1, 3], 7),
        ];
        for (e, c) in expected {
            assert_eq!(gen.coeff(&e), rat_int(c), "coefficient at {e:?}");
        }
        assert!(ogw.integrality_warnings().is_empty());
    }

    #[test]
    fn syz_map_of_local_p1_is_binomial() {
        // y(q) = q (1+q)^{-2} = q - 2q^2 + 3q^3 - 4q^4 + ...
        let ogw = OpenGw::compute(&local_p1(), 5).unwrap();
        let expected = MultiSeries::from_terms(
            1,
            5,
            [
                (vec![1], rat_int(1)),
                (vec![2], rat_int(-2)),
                (vec![3], rat_int(3)),
                (vec![4], rat_int(-4)),
                (vec![5], rat_int(5)),
            ],
        );
        assert_eq!(ogw.syz_map(), &[expected]);
    }

    #[test]
    fn constant_term_is_always_one() {
        for x in [local_p1(), local_p2(), local_p1xp1()] {
            let l = x.picard_rank();
            let ogw = OpenGw::compute(&x, 4).unwrap();
            assert!(ogw.generating_function().constant_term().is_one());
            assert_eq!(ogw.invariant_table()[0], (vec![0; l], rat_int(1)));
        }
    }

    #[test]
    fn table_is_sorted_by_degree_then_lex() {
        let ogw = OpenGw::compute(&local_p1xp1(), 4).unwrap();
        let table = ogw.invariant_table();
        let degrees: Vec<(u32, Vec<u32>)> = table
            .iter()
            .map(|(e, _)| (e.iter().sum(), e.clone()))
            .collect();
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(degrees, sorted);
    }

    #[test]
    fn order_zero_is_the_constant_one() {
        let ogw = OpenGw::compute(&local_p1(), 0).unwrap();
        assert_eq!(*ogw.generating_function(), MultiSeries::one(1, 0));
    }

    #[test]
    fn invalid_input_is_rejected() {
        let bad = ToricCYData::new(2, vec![vec![0], vec![-1], vec![1]], vec![vec![-3, 1, 1]]);
        assert!(OpenGw::compute(&bad, 3).is_err());
    }
}
