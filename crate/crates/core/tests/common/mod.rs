//! Brute-force counts over prime fields, written independently of the library.
#![allow(dead_code)]

use motivic_hall::quiver::{DimVector, IndecId, IsoClass};

pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_multiple_of(p) {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn vectors(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `|GL_d(F_p)|`: every matrix is tested when there are at most about two million,
/// otherwise ordered bases are counted one vector at a time.
pub fn gl_order(d: usize, p: u64) -> u128 {
    let total = (p as u128).pow((d * d) as u32);
    if total <= 2_100_000 {
        let vs = vectors(d, p);
        let mut count = 0u128;
        let mut idx = vec![0usize; d];
        loop {
            let rows: Vec<Vec<u64>> = idx.iter().map(|&i| vs[i].clone()).collect();
            if rank_mod(rows, p) == d {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == d {
                    return count;
                }
                idx[k] += 1;
                if idx[k] < vs.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    let vs = vectors(d, p);
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    let mut count = 1u128;
    for _ in 0..d {
        let mut outside = 0u128;
        let mut next = None;
        for v in &vs {
            let mut rows = chosen.clone();
            rows.push(v.clone());
            if rank_mod(rows, p) == chosen.len() + 1 {
                outside += 1;
                // take the last independent vector, not a standard one
                next = Some(v.clone());
            }
        }
        count *= outside;
        chosen.push(next.expect("independent vector exists"));
    }
    count
}

/// All `k`-dimensional subspaces of `F_p^n`, each given by a basis in reduced echelon form.
pub fn subspaces(n: usize, k: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for pivots in choose(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = pivots.clone();
                (pv[i] + 1..n).filter(move |j| !pv.contains(j)).map(move |j| (i, j))
            })
            .collect();
        for vals in vectors(free.len(), p) {
            let mut basis = vec![vec![0u64; n]; k];
            for (i, &c) in pivots.iter().enumerate() {
                basis[i][c] = 1;
            }
            for (&(i, j), &v) in free.iter().zip(&vals) {
                basis[i][j] = v;
            }
            out.push(basis);
        }
    }
    out
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut c in choose(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// An `A_2` representation `F^a -> F^b` up to isomorphism is its rank `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct A2Class {
    pub a: usize,
    pub b: usize,
    pub r: usize,
}

impl A2Class {
    pub fn from_iso(c: &IsoClass) -> Self {
        let r = c
            .parts()
            .get(&IndecId::new(DimVector(vec![1, 1]), 0))
            .copied()
            .unwrap_or(0) as usize;
        Self {
            a: c.dim().0[0] as usize,
            b: c.dim().0[1] as usize,
            r,
        }
    }
}

/// Hall number `g^G_{E,F}(p)` for `A_2`: subrepresentations of `G` of class `E` with
/// quotient of class `F`.
pub fn a2_hall_number(e: A2Class, f: A2Class, g: A2Class, p: u64) -> u64 {
    if e.a + f.a != g.a || e.b + f.b != g.b {
        return 0;
    }
    // the map sends the i-th basis vector to the i-th for i < r, the rest to zero
    let apply = |v: &[u64]| -> Vec<u64> {
        let mut w = vec![0u64; g.b];
        w[..g.r].copy_from_slice(&v[..g.r]);
        w
    };
    let image_of_all: Vec<Vec<u64>> = (0..g.a)
        .map(|i| {
            let mut v = vec![0u64; g.a];
            v[i] = 1;
            apply(&v)
        })
        .collect();
    let mut count = 0;
    for u1 in subspaces(g.a, e.a, p) {
        let img: Vec<Vec<u64>> = u1.iter().map(|v| apply(v)).collect();
        let sub_rank = rank_mod(img.clone(), p);
        for u2 in subspaces(g.b, e.b, p) {
            let mut closed = u2.clone();
            closed.extend(img.iter().cloned());
            if rank_mod(closed, p) != e.b {
                continue;
            }
            let mut span = u2.clone();
            span.extend(image_of_all.iter().cloned());
            let quot_rank = rank_mod(span, p) - e.b;
            if sub_rank == e.r && quot_rank == f.r {
                count += 1;
            }
        }
    }
    count
}

/// `|Aut|` of an `A_2` representation of rank `r`, by counting pairs `(g1, g2)` with
/// `g2 φ = φ g1` over all invertible matrices. Only for tiny dimensions.
pub fn a2_aut_count(c: A2Class, p: u64) -> u64 {
    let inv = |n: usize| -> Vec<Vec<Vec<u64>>> {
        let vs = vectors(n * n, p);
        vs.into_iter()
            .map(|flat| flat.chunks(n.max(1)).map(<[u64]>::to_vec).collect::<Vec<_>>())
            .filter(|m: &Vec<Vec<u64>>| n == 0 || rank_mod(m.clone(), p) == n)
            .collect()
    };
    let (g1s, g2s) = (inv(c.a), inv(c.b));
    let phi = |i: usize, j: usize| u64::from(i == j && i < c.r);
    let mut count = 0;
    for g1 in &g1s {
        for g2 in &g2s {
            let ok = (0..c.b).all(|i| {
                (0..c.a).all(|j| {
                    let lhs: u64 = (0..c.b).map(|k| g2[i][k] * phi(k, j)).sum::<u64>() % p;
                    let rhs: u64 = (0..c.a).map(|k| phi(i, k) * g1[k][j]).sum::<u64>() % p;
                    lhs == rhs
                })
            });
            if ok {
                count += 1;
            }
        }
    }
    count
}

pub fn class(parts: &[(&[u32], u32)], n: usize) -> IsoClass {
    IsoClass::from_parts(
        n,
        parts
            .iter()
            .map(|(d, m)| (IndecId::new(DimVector(d.to_vec()), 0), *m)),
    )
    .unwrap()
}

pub fn dv(v: &[u32]) -> DimVector {
    DimVector(v.to_vec())
}
