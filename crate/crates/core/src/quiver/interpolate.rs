use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::motivic::LaurentPoly;

/// Lifts point counts `(q, count)` to the unique integer polynomial in `L` of degree
/// at most `degree_bound` through the first `degree_bound + 1` samples.
///
/// Every further sample is a verification point; at least one is required. A
/// non-integral coefficient or a failed verification means the count is not polynomial.
pub fn interpolate_count_polynomial(
    samples: &[(i64, BigInt)],
    degree_bound: usize,
) -> Result<LaurentPoly> {
    let needed = degree_bound + 2;
    if samples.len() < needed {
        return Err(Error::NotEnoughSamples {
            needed,
            got: samples.len(),
        });
    }
    for (i, (q, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(p, _)| p == q) {
            return Err(Error::InvalidArgument(format!("duplicate sample point q = {q}")));
        }
    }
    let (fit, check) = samples.split_at(degree_bound + 1);
    let coeffs = newton_to_monomial(fit);
    let mut poly = LaurentPoly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::InterpolationMismatch(format!(
                "coefficient of L^{e} is {c}, not an integer"
            )));
        }
        poly.add_term(e as i64, c.to_integer());
    }
    for (q, count) in check {
        let value = poly.eval(&BigRational::from_integer(BigInt::from(*q)));
        if value != BigRational::from_integer(count.clone()) {
            return Err(Error::InterpolationMismatch(format!(
                "interpolant {poly} gives {value} at q = {q}, sample says {count}"
            )));
        }
    }
    Ok(poly)
}

/// Newton divided differences, expanded into monomial coefficients (lowest first).
fn newton_to_monomial(points: &[(i64, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
        .collect();
    let mut dd: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner in Newton form: p = dd[n-1]; p = p * (x - xs[i]) + dd[i]
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut next = vec![BigRational::zero(); n];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += c;
            }
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(pairs: &[(i64, i64)]) -> Vec<(i64, BigInt)> {
        pairs.iter().map(|(q, c)| (*q, BigInt::from(*c))).collect()
    }

    #[test]
    fn gl2_counts() {
        // |GL_2(F_q)| at q = 2, 3, 4, 5, 7, verified at 8
        let samples = s(&[(2, 6), (3, 48), (4, 180), (5, 480), (7, 2016), (8, 3528)]);
        let p = interpolate_count_polynomial(&samples, 4).unwrap();
        assert_eq!(p, LaurentPoly::from_terms([(4, 1), (3, -1), (2, -1), (1, 1)]));
    }

    #[test]
    fn four_samples_cannot_pin_degree_four() {
        let samples = s(&[(2, 6), (3, 48), (5, 480), (7, 2016)]);
        assert_eq!(
            interpolate_count_polynomial(&samples, 4),
            Err(Error::NotEnoughSamples { needed: 6, got: 4 })
        );
    }

    #[test]
    fn projective_line_and_constants() {
        let p = interpolate_count_polynomial(&s(&[(2, 3), (3, 4), (5, 6)]), 1).unwrap();
        assert_eq!(p, LaurentPoly::from_terms([(1, 1), (0, 1)]));
        let p = interpolate_count_polynomial(&s(&[(2, 1), (3, 1)]), 0).unwrap();
        assert_eq!(p, LaurentPoly::one());
    }

    #[test]
    fn corrupted_sample_is_caught() {
        let err = interpolate_count_polynomial(&s(&[(2, 3), (3, 4), (5, 7)]), 1).unwrap_err();
        assert!(matches!(err, Error::InterpolationMismatch(_)));
        // slope 1/2
        let err = interpolate_count_polynomial(&s(&[(2, 1), (4, 2), (6, 3)]), 1).unwrap_err();
        assert!(matches!(err, Error::InterpolationMismatch(_)));
    }
}
