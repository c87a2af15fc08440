//! Transforms along a consonant (chain) support. When the focal sets are
//! nested, every transform collapses to a first-order recurrence along the
//! chain: exactly K−1 combines for K focal sets.

use crate::error::{Error, Result};
use crate::kernels::{combine_into, Direction, OpCount, TransformSpec};
use crate::structure::OrderRelation;
use crate::word::SubsetWord;

/// Transform values along a chain `F_1 ⊂ F_2 ⊂ … ⊂ F_K` (given sorted by
/// ascending cardinality, values parallel to the chain).
///
/// For the subset order the zeta accumulates upward
/// (`g(F_i) = f(F_i) ⊕ g(F_{i−1})`) and the Möbius undoes it by combining
/// each element with its predecessor's input value; the superset order
/// mirrors both along the other end. Multiplicative forms use × and ÷ in
/// place of + and −.
pub fn consonant_transform(
    chain: &[SubsetWord],
    values: &[f64],
    spec: TransformSpec,
) -> Result<(Vec<f64>, OpCount)> {
    assert_eq!(chain.len(), values.len());
    for pair in chain.windows(2) {
        if !(pair[0].is_subset_of(&pair[1]) && pair[0] != pair[1]) {
            return Err(Error::NotConsonant);
        }
    }
    let k = chain.len();
    let mut out = values.to_vec();
    let mut count = OpCount::default();
    if k < 2 {
        return Ok((out, count));
    }
    match (spec.order, spec.direction) {
        // Ascending accumulation: each prefix fold is final before it is
        // read by the next element.
        (OrderRelation::SubsetOf, Direction::Zeta) => {
            for i in 1..k {
                let prev = out[i - 1];
                combine_into(&mut out[i], prev, spec.op, spec.direction, &chain[i - 1])?;
                count.combines += 1;
            }
        }
        // The inverse reads the *input* value of the predecessor, so it
        // walks downward while predecessors are still untouched.
        (OrderRelation::SubsetOf, Direction::Moebius) => {
            for i in (1..k).rev() {
                let prev = out[i - 1];
                combine_into(&mut out[i], prev, spec.op, spec.direction, &chain[i - 1])?;
                count.combines += 1;
            }
        }
        (OrderRelation::SupersetOf, Direction::Zeta) => {
            for i in (0..k - 1).rev() {
                let next = out[i + 1];
                combine_into(&mut out[i], next, spec.op, spec.direction, &chain[i + 1])?;
                count.combines += 1;
            }
        }
        (OrderRelation::SupersetOf, Direction::Moebius) => {
            for i in 0..k - 1 {
                let next = out[i + 1];
                combine_into(&mut out[i], next, spec.op, spec.direction, &chain[i + 1])?;
                count.combines += 1;
            }
        }
    }
    Ok((out, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::OpKind;

    fn w(width: usize, indices: &[usize]) -> SubsetWord {
        SubsetWord::from_indices(width, indices.iter().copied())
    }

    fn m1_chain() -> (Vec<SubsetWord>, Vec<f64>) {
        (
            vec![w(3, &[0]), w(3, &[0, 1]), w(3, &[0, 1, 2])],
            vec![0.5, 0.3, 0.2],
        )
    }

    #[test]
    fn implicability_and_commonality_recurrences() {
        let (chain, m) = m1_chain();
        let (b, count) = consonant_transform(
            &chain,
            &m,
            TransformSpec::zeta(OrderRelation::SubsetOf, OpKind::Additive),
        )
        .unwrap();
        assert_eq!(b, vec![0.5, 0.8, 1.0]);
        assert_eq!(count.combines, 2);

        let (q, count) = consonant_transform(
            &chain,
            &m,
            TransformSpec::zeta(OrderRelation::SupersetOf, OpKind::Additive),
        )
        .unwrap();
        assert_eq!(q, vec![1.0, 0.5, 0.2]);
        assert_eq!(count.combines, 2);
    }

    #[test]
    fn moebius_recovers_masses() {
        let (chain, m) = m1_chain();
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            let (g, _) =
                consonant_transform(&chain, &m, TransformSpec::zeta(order, OpKind::Additive))
                    .unwrap();
            let (back, _) =
                consonant_transform(&chain, &g, TransformSpec::moebius(order, OpKind::Additive))
                    .unwrap();
            for (a, b) in m.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn multiplicative_recurrences_give_decomposition_weights() {
        // Weights come from the multiplicative Möbius of the reciprocal
        // zeta values: w here are the conjunctive weights of the worked
        // three-set example.
        let (chain, _) = m1_chain();
        let q_inv: Vec<f64> = [1.0f64, 0.5, 0.2].iter().map(|q| 1.0 / q).collect();
        let (w_vals, _) = consonant_transform(
            &chain,
            &q_inv,
            TransformSpec::moebius(OrderRelation::SupersetOf, OpKind::Multiplicative),
        )
        .unwrap();
        let want = [0.5, 0.4, 5.0];
        for (g, e) in w_vals.iter().zip(want) {
            assert!((g - e).abs() < 1e-12, "{w_vals:?}");
        }
        // And the zeta direction reconstructs the reciprocal commonalities.
        let (back, _) = consonant_transform(
            &chain,
            &w_vals,
            TransformSpec::zeta(OrderRelation::SupersetOf, OpKind::Multiplicative),
        )
        .unwrap();
        for (g, e) in back.iter().zip(&q_inv) {
            assert!((g - e).abs() < 1e-12);
        }

        let b_inv: Vec<f64> = [0.5f64, 0.8, 1.0].iter().map(|b| 1.0 / b).collect();
        let (v_vals, _) = consonant_transform(
            &chain,
            &b_inv,
            TransformSpec::moebius(OrderRelation::SubsetOf, OpKind::Multiplicative),
        )
        .unwrap();
        let want = [2.0, 0.625, 0.8];
        for (g, e) in v_vals.iter().zip(want) {
            assert!((g - e).abs() < 1e-12, "{v_vals:?}");
        }
    }

    #[test]
    fn rejects_non_chain_input() {
        let err = consonant_transform(
            &[w(3, &[0]), w(3, &[1])],
            &[0.5, 0.5],
            TransformSpec::zeta(OrderRelation::SubsetOf, OpKind::Additive),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotConsonant));
    }

    #[test]
    fn single_element_chain_is_identity() {
        let (out, count) = consonant_transform(
            &[w(3, &[0, 1])],
            &[1.0],
            TransformSpec::zeta(OrderRelation::SupersetOf, OpKind::Additive),
        )
        .unwrap();
        assert_eq!(out, vec![1.0]);
        assert_eq!(count.combines, 0);
    }
}
