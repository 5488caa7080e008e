use super::laurent::LaurentPoly;

/// The `n`-th cyclotomic polynomial, as `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic(n: u32) -> LaurentPoly {
    assert!(n >= 1);
    let mut p = LaurentPoly::x_pow_minus_one(n);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p
            .div_exact(&cyclotomic(d))
            .expect("cyclotomic factors divide x^n - 1");
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), LaurentPoly::from_terms([(1, 1), (0, -1)]));
        assert_eq!(cyclotomic(2), LaurentPoly::from_terms([(1, 1), (0, 1)]));
        assert_eq!(cyclotomic(4), LaurentPoly::from_terms([(2, 1), (0, 1)]));
        assert_eq!(
            cyclotomic(6),
            LaurentPoly::from_terms([(2, 1), (1, -1), (0, 1)])
        );
    }
}
