//! Distances between two decision makers' evaluation vectors.

use crate::evaluation::EvaluationVector;
use crate::model::AlternativeId;
use crate::{CoreError, Result};

/// `|f_i(a) - f_sdm(a)|`; the distance that gates consensus.
pub fn per_alternative_distance(
    f_i: &EvaluationVector,
    f_sdm: &EvaluationVector,
    alternative: &AlternativeId,
) -> Result<f64> {
    let lhs = f_i
        .get(alternative)
        .ok_or_else(|| CoreError::UnknownAlternative(alternative.clone()))?;
    let rhs = f_sdm
        .get(alternative)
        .ok_or_else(|| CoreError::UnknownAlternative(alternative.clone()))?;
    Ok((lhs - rhs).abs())
}

/// Root-mean-square distance over all alternatives,
/// `sqrt(1/|A| * sum_a (f_i(a) - f_j(a))^2)`.
///
/// A whole-profile diagnostic only; the protocol gates per alternative.
pub fn rms_distance(f_i: &EvaluationVector, f_j: &EvaluationVector) -> Result<f64> {
    if f_i.is_empty() {
        return Err(CoreError::Shape("empty evaluation vector".into()));
    }
    if !f_i.same_alternatives(f_j) {
        return Err(CoreError::Shape(format!(
            "evaluations of {} and {} cover different alternatives",
            f_i.dm_id, f_j.dm_id
        )));
    }
    let sum: f64 = f_i
        .values
        .iter()
        .map(|(a, v)| {
            let d = v - f_j.values[a];
            d * d
        })
        .sum();
    Ok((sum / f_i.len() as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(dm: &str, values: &[f64]) -> EvaluationVector {
        EvaluationVector::new(
            dm,
            values
                .iter()
                .enumerate()
                .map(|(i, v)| (AlternativeId::new(format!("a{}", i + 1)), *v)),
        )
    }

    #[test]
    fn per_alternative_examples() {
        let f1 = vector("DM1", &[0.9, 0.9, 0.9, 0.34, 0.5]);
        let f2 = vector("DM2", &[0.51, 0.31, 0.31, 0.45, 0.25]);
        let f3 = vector("DM3", &[0.75, 0.9, 0.65, 0.44, 0.6]);
        let d = per_alternative_distance(&f1, &f3, &"a1".into()).unwrap();
        assert!((d - 0.15).abs() < 1e-12);
        let d = per_alternative_distance(&f2, &f3, &"a2".into()).unwrap();
        assert!((d - 0.59).abs() < 1e-12);
        assert_eq!(
            per_alternative_distance(&f3, &f3, &"a4".into()).unwrap(),
            0.0
        );
    }

    #[test]
    fn unknown_alternative() {
        let f = vector("DM1", &[0.5]);
        let g = vector("DM2", &[0.5, 0.4]);
        assert_eq!(
            per_alternative_distance(&f, &g, &"a2".into()),
            Err(CoreError::UnknownAlternative("a2".into()))
        );
    }

    #[test]
    fn rms_examples() {
        let f1 = vector("DM1", &[0.9, 0.9, 0.9, 0.34, 0.5]);
        let f3 = vector("DM3", &[0.75, 0.9, 0.65, 0.44, 0.6]);
        assert_eq!(rms_distance(&f1, &f1).unwrap(), 0.0);
        // sqrt((0.0225 + 0 + 0.0625 + 0.01 + 0.01) / 5) = sqrt(0.021)
        assert!((rms_distance(&f1, &f3).unwrap() - 0.144_913_767_461_894_4).abs() < 1e-9);
        let single = rms_distance(&vector("x", &[0.9]), &vector("y", &[0.75])).unwrap();
        assert!((single - 0.15).abs() < 1e-12);
    }

    #[test]
    fn rms_shape_errors() {
        let f = vector("DM1", &[0.5, 0.5]);
        assert!(matches!(
            rms_distance(&f, &vector("DM2", &[0.5])),
            Err(CoreError::Shape(_))
        ));
        assert!(matches!(
            rms_distance(&vector("a", &[]), &vector("b", &[])),
            Err(CoreError::Shape(_))
        ));
    }
}
