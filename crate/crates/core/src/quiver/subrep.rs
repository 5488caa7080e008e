use super::rep::FqRep;
use super::Quiver;
use crate::fq::{GaloisField, Matrix};

/// All `k`-dimensional subspaces of `F_q^n`, each as an `n x k` column basis.
pub fn subspaces(f: &GaloisField, n: usize, k: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let q = f.order();
    for pivots in combinations(n, k) {
        // free slots of the reduced row echelon form
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = pivots.clone();
                ((pivots[i] + 1)..n)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let count = u64::from(q).pow(free.len() as u32);
        for code in 0..count {
            let vals = super::rep::digits(code, q, free.len());
            let mut basis = Matrix::zeros(n, k);
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(p, i, 1);
            }
            for (&(i, j), &v) in free.iter().zip(&vals) {
                basis.set(j, i, v);
            }
            out.push(basis);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The subrepresentation on the given subspaces, if they are closed under every arrow.
pub fn subrep(quiver: &Quiver, rep: &FqRep, bases: &[Matrix]) -> Option<FqRep> {
    rep.restrict(quiver, bases)
}

/// The quotient `rep / sub`, where `bases` span a subrepresentation.
pub fn quotient_rep(quiver: &Quiver, rep: &FqRep, bases: &[Matrix]) -> FqRep {
    let f: &GaloisField = rep.field();
    let mut complements = Vec::new();
    let mut full = Vec::new();
    for (v, b) in bases.iter().enumerate() {
        let n = rep.dims()[v];
        let mut cols: Vec<Vec<u16>> = (0..b.cols()).map(|c| b.column(c)).collect();
        let mut comp = Vec::new();
        for e in 0..n {
            let mut unit = vec![0u16; n];
            unit[e] = 1;
            cols.push(unit.clone());
            if Matrix::from_columns(n, &cols).rank(f) == cols.len() {
                comp.push(unit);
            } else {
                cols.pop();
            }
        }
        full.push(Matrix::from_columns(n, &cols));
        complements.push(Matrix::from_columns(n, &comp));
    }
    let dims: Vec<usize> = complements.iter().map(Matrix::cols).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, (s, t))| {
            let img = rep.maps()[a].mul(&complements[*s], f);
            let k = bases[*t].cols();
            let n = rep.dims()[*t];
            if n == 0 {
                return Matrix::zeros(0, dims[*s]);
            }
            let coords = full[*t].inverse(f).expect("basis").mul(&img, f);
            let rows: Vec<usize> = (k..n).collect();
            let cols: Vec<usize> = (0..dims[*s]).collect();
            coords.submatrix(&rows, &cols)
        })
        .collect();
    FqRep::new(quiver, rep.field().clone(), dims, maps).expect("quotient shapes are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmannian_counts() {
        // |Gr(k, n)(F_q)| is the Gaussian binomial coefficient
        let f = GaloisField::new(3).unwrap();
        assert_eq!(subspaces(&f, 2, 1).len(), 4);
        assert_eq!(subspaces(&f, 3, 1).len(), 13);
        assert_eq!(subspaces(&f, 3, 2).len(), 13);
        assert_eq!(subspaces(&f, 4, 2).len(), 130);
        assert_eq!(subspaces(&f, 2, 0).len(), 1);
        assert_eq!(subspaces(&f, 0, 0).len(), 1);
    }

    #[test]
    fn projective_has_one_simple_sub() {
        let q = Quiver::linear(2);
        let f = GaloisField::new(2).unwrap();
        let p1 = FqRep::new(&q, f.clone(), vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        let mut subs = 0;
        for b0 in subspaces(&f, 1, 0) {
            for b1 in subspaces(&f, 1, 1) {
                let bases = vec![b0.clone(), b1];
                if let Some(s) = subrep(&q, &p1, &bases) {
                    subs += 1;
                    assert_eq!(s.dims(), &[0, 1]);
                    let quot = quotient_rep(&q, &p1, &bases);
                    assert_eq!(quot.dims(), &[1, 0]);
                }
            }
        }
        assert_eq!(subs, 1);
        // vertex-1 line is not closed under the arrow
        let bad = vec![subspaces(&f, 1, 1)[0].clone(), subspaces(&f, 1, 0)[0].clone()];
        assert!(subrep(&q, &p1, &bad).is_none());
    }
}
