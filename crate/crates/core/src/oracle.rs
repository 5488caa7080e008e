//! Brute-force finite-field counts, computed without the motivic machinery.

use crate::error::Result;
use crate::fq::{GaloisField, Matrix};
use crate::quiver::{quotient_rep, subspaces, IsoClass, RepModel};

/// `|GL_d(F_q)|` by counting invertible matrices, one column at a time: for each prefix of
/// the standard basis, the number of vectors outside its span is found by enumeration.
/// Small cases enumerate every matrix instead.
pub fn gl_order(d: usize, q: u32) -> Result<u128> {
    let f = GaloisField::new(q)?;
    if (q as u128).pow((d * d) as u32) <= 1 << 16 {
        return Ok(count_invertible(&f, d));
    }
    let mut total: u128 = 1;
    for k in 0..d {
        let mut outside = 0u128;
        for code in 0..u64::from(q).pow(d as u32) {
            let mut cols: Vec<Vec<u16>> = (0..k)
                .map(|i| {
                    let mut e = vec![0u16; d];
                    e[i] = 1;
                    e
                })
                .collect();
            cols.push(crate::quiver::digits(code, q, d));
            if Matrix::from_columns(d, &cols).rank(&f) == k + 1 {
                outside += 1;
            }
        }
        total *= outside;
    }
    Ok(total)
}

fn count_invertible(f: &GaloisField, d: usize) -> u128 {
    let q = f.order();
    let n = u64::from(q).pow((d * d) as u32);
    (0..n)
        .filter(|&code| {
            let m = Matrix::from_vec(d, d, crate::quiver::digits(code, q, d * d));
            m.rank(f) == d
        })
        .count() as u128
}

/// The Hall number `g^G_{E,F}(q)`: subrepresentations `U ⊂ G` with `U ≅ E` and `G/U ≅ F`.
pub fn hall_number(model: &RepModel, sub: &IsoClass, quotient: &IsoClass, middle: &IsoClass, q: u32) -> Result<u64> {
    let quiver = model.quiver();
    let g = model.representative(middle, q)?;
    let e = model.representative(sub, q)?;
    let f_rep = model.representative(quotient, q)?;
    let field = g.field().clone();
    let per_vertex: Vec<Vec<Matrix>> = g
        .dims()
        .iter()
        .zip(&sub.dim().0)
        .map(|(&n, &k)| subspaces(&field, n, k as usize))
        .collect();
    let mut count = 0;
    let mut idx = vec![0usize; per_vertex.len()];
    if per_vertex.iter().any(Vec::is_empty) {
        return Ok(0);
    }
    loop {
        let bases: Vec<Matrix> = idx.iter().zip(&per_vertex).map(|(&i, v)| v[i].clone()).collect();
        if let Some(u) = g.restrict(quiver, &bases) {
            if u.is_isomorphic(quiver, &e, model.budget())?
                && quotient_rep(quiver, &g, &bases).is_isomorphic(quiver, &f_rep, model.budget())?
            {
                count += 1;
            }
        }
        let mut v = 0;
        loop {
            if v == idx.len() {
                return Ok(count);
            }
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}
