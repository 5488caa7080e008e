use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DimVector, Quiver};
use crate::error::{Error, Result};
use crate::fq::{column_space, Fq, GaloisField, Matrix};

/// A representation over `F_q`: one matrix of shape `dim(target) x dim(source)` per arrow.
#[derive(Clone, Debug)]
pub struct FqRep {
    field: Fq,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for FqRep {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.dims == other.dims && self.maps == other.maps
    }
}

impl Eq for FqRep {}

/// A morphism of representations: one matrix per vertex.
pub type RepMorphism = Vec<Matrix>;

impl FqRep {
    pub fn new(quiver: &Quiver, field: Fq, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidArgument(
                "representation does not match the quiver".into(),
            ));
        }
        for (m, (s, t)) in maps.iter().zip(quiver.arrows()) {
            if m.rows() != dims[*t] || m.cols() != dims[*s] {
                return Err(Error::InvalidArgument(format!(
                    "arrow matrix has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[*t],
                    dims[*s]
                )));
            }
        }
        Ok(Self { field, dims, maps })
    }

    pub fn zero(quiver: &Quiver, field: Fq) -> Self {
        Self::with_zero_maps(quiver, field, vec![0; quiver.num_vertices()])
    }

    /// Semisimple representation: every arrow acts by zero.
    pub fn with_zero_maps(quiver: &Quiver, field: Fq, dims: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|(s, t)| Matrix::zeros(dims[*t], dims[*s]))
            .collect();
        Self { field, dims, maps }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as u32).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn f(&self) -> &GaloisField {
        &self.field
    }

    pub fn direct_sum(&self, other: &FqRep) -> FqRep {
        assert_eq!(self.field.order(), other.field.order());
        FqRep {
            field: self.field.clone(),
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// Basis of `Hom(self, other)` as solutions of the intertwiner equations.
    pub fn hom_basis(&self, quiver: &Quiver, other: &FqRep) -> Vec<RepMorphism> {
        let f = self.f();
        let n = quiver.num_vertices();
        let mut offsets = Vec::with_capacity(n);
        let mut unknowns = 0;
        for v in 0..n {
            offsets.push(unknowns);
            unknowns += other.dims[v] * self.dims[v];
        }
        // phi_v is other.dims[v] x self.dims[v], flattened row-major.
        let idx = |v: usize, r: usize, c: usize| offsets[v] + r * self.dims[v] + c;
        let mut rows: Vec<Vec<u16>> = Vec::new();
        for (a, (s, t)) in quiver.arrows().iter().enumerate() {
            let (s, t) = (*s, *t);
            let b_map = &other.maps[a];
            let a_map = &self.maps[a];
            // (B_a phi_s - phi_t A_a)[r, c] = 0
            for r in 0..other.dims[t] {
                for c in 0..self.dims[s] {
                    let mut row = vec![0u16; unknowns];
                    for k in 0..other.dims[s] {
                        let coef = b_map.get(r, k);
                        if coef != 0 {
                            let i = idx(s, k, c);
                            row[i] = f.add(row[i], coef);
                        }
                    }
                    for k in 0..self.dims[t] {
                        let coef = a_map.get(k, c);
                        if coef != 0 {
                            let i = idx(t, r, k);
                            row[i] = f.sub(row[i], coef);
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let system = Matrix::from_vec(rows.len(), unknowns, rows.concat());
        let null = if rows.is_empty() {
            (0..unknowns)
                .map(|i| {
                    let mut v = vec![0u16; unknowns];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            system.nullspace(f)
        };
        null.into_iter()
            .map(|vec| {
                (0..n)
                    .map(|v| {
                        let (r, c) = (other.dims[v], self.dims[v]);
                        Matrix::from_vec(r, c, vec[offsets[v]..offsets[v] + r * c].to_vec())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn hom_dim(&self, quiver: &Quiver, other: &FqRep) -> usize {
        self.hom_basis(quiver, other).len()
    }

    /// `dim Ext^1(self, other) = dim Hom(self, other) - chi([self], [other])`.
    pub fn ext1_dim(&self, quiver: &Quiver, other: &FqRep) -> usize {
        let chi = quiver.euler_form(&self.dim_vector(), &other.dim_vector());
        let d = self.hom_dim(quiver, other) as i64 - chi;
        debug_assert!(d >= 0);
        d as usize
    }

    /// Cocycles `(theta_a : self_s -> sub_t)` whose classes form a basis of `Ext^1(self, sub)`.
    ///
    /// `Ext^1(F, E)` is the cokernel of `(phi_v) -> (E_a phi_s - phi_t F_a)`; the basis is a
    /// set of standard coordinate vectors complementing the image.
    pub fn ext1_basis(&self, quiver: &Quiver, sub: &FqRep) -> Vec<Vec<Matrix>> {
        let f = self.f();
        let n = quiver.num_vertices();
        let src_dims: Vec<(usize, usize)> = (0..n).map(|v| (sub.dims[v], self.dims[v])).collect();
        let tgt_dims: Vec<(usize, usize)> = quiver
            .arrows()
            .iter()
            .map(|(s, t)| (sub.dims[*t], self.dims[*s]))
            .collect();
        let tgt_offsets: Vec<usize> = tgt_dims
            .iter()
            .scan(0, |acc, (r, c)| {
                let o = *acc;
                *acc += r * c;
                Some(o)
            })
            .collect();
        let tgt_len: usize = tgt_dims.iter().map(|(r, c)| r * c).sum();
        if tgt_len == 0 {
            return Vec::new();
        }
        let mut columns = Vec::new();
        for (v, &(r, c)) in src_dims.iter().enumerate().take(n) {
            for i in 0..r {
                for j in 0..c {
                    let mut phi = Matrix::zeros(r, c);
                    phi.set(i, j, 1);
                    let mut col = vec![0u16; tgt_len];
                    for (a, (s, t)) in quiver.arrows().iter().enumerate() {
                        let mut img = Matrix::zeros(tgt_dims[a].0, tgt_dims[a].1);
                        if *s == v {
                            img = img.add(&sub.maps[a].mul(&phi, f), f);
                        }
                        if *t == v {
                            img = img.sub(&phi.mul(&self.maps[a], f), f);
                        }
                        col[tgt_offsets[a]..tgt_offsets[a] + img.data().len()]
                            .copy_from_slice(img.data());
                    }
                    columns.push(col);
                }
            }
        }
        let image = column_space(&Matrix::from_columns(tgt_len, &columns), f);
        let mut span = image.clone();
        let mut rank = image.len();
        let mut complement = Vec::new();
        for k in 0..tgt_len {
            let mut e = vec![0u16; tgt_len];
            e[k] = 1;
            span.push(e);
            let r = Matrix::from_columns(tgt_len, &span).rank(f);
            if r > rank {
                rank = r;
                complement.push(k);
            } else {
                span.pop();
            }
        }
        complement
            .into_iter()
            .map(|k| {
                let mut vec = vec![0u16; tgt_len];
                vec[k] = 1;
                unflatten(&vec, &tgt_dims, &tgt_offsets)
            })
            .collect()
    }

    /// Middle term of `0 -> sub -> G -> self -> 0` for the cocycle `theta`.
    /// Coordinates of `G` list `sub` first.
    pub fn extension(&self, quiver: &Quiver, sub: &FqRep, theta: &[Matrix]) -> FqRep {
        let dims: Vec<usize> = sub.dims.iter().zip(&self.dims).map(|(a, b)| a + b).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, (s, t))| {
                let mut m = sub.maps[a].direct_sum(&self.maps[a]);
                let th = &theta[a];
                for r in 0..th.rows() {
                    for c in 0..th.cols() {
                        m.set(r, sub.dims[*s] + c, th.get(r, c));
                    }
                }
                debug_assert_eq!(m.rows(), dims[*t]);
                m
            })
            .collect();
        FqRep {
            field: self.field.clone(),
            dims,
            maps,
        }
    }

    /// Restriction to the subrepresentation spanned by `bases[v]` (column bases).
    /// Returns `None` if the subspaces are not closed under the arrows.
    pub fn restrict(&self, quiver: &Quiver, bases: &[Matrix]) -> Option<FqRep> {
        let f = self.f();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, (s, t)) in quiver.arrows().iter().enumerate() {
            let image = self.maps[a].mul(&bases[*s], f);
            let m = if dims[*t] == 0 {
                if !image.is_zero() {
                    return None;
                }
                Matrix::zeros(0, dims[*s])
            } else {
                bases[*t].solve_in_column_basis(&image, f)?
            };
            maps.push(m);
        }
        Some(FqRep {
            field: self.field.clone(),
            dims,
            maps,
        })
    }

    /// Splits off a Fitting decomposition `ker psi^n + im psi^n` when `psi` is neither
    /// nilpotent nor invertible.
    fn fitting_split(&self, quiver: &Quiver, psi: &RepMorphism) -> Option<(FqRep, FqRep)> {
        let f = self.f();
        let n = self.total_dim();
        let powers: Vec<Matrix> = psi
            .iter()
            .zip(&self.dims)
            .map(|(m, &d)| m.pow(d as u32, f))
            .collect();
        let rank: usize = powers.iter().map(|m| m.rank(f)).sum();
        if rank == 0 || rank == n {
            return None;
        }
        let mut kers = Vec::new();
        let mut ims = Vec::new();
        for (p, &d) in powers.iter().zip(&self.dims) {
            let ker = p.nullspace(f);
            let im = column_space(p, f);
            kers.push(Matrix::from_columns(d, &ker));
            ims.push(Matrix::from_columns(d, &im));
        }
        let a = self.restrict(quiver, &kers).expect("Fitting kernel is a subrepresentation");
        let b = self.restrict(quiver, &ims).expect("Fitting image is a subrepresentation");
        Some((a, b))
    }

    fn shifted(&self, phi: &RepMorphism, c: u16) -> RepMorphism {
        let f = self.f();
        phi.iter()
            .zip(&self.dims)
            .map(|(m, &d)| m.sub(&Matrix::identity(d).scale(c, f), f))
            .collect()
    }

    fn combination(&self, basis: &[RepMorphism], coeffs: &[u16]) -> RepMorphism {
        let f = self.f();
        let mut out: RepMorphism = self
            .dims
            .iter()
            .map(|&d| Matrix::zeros(d, d))
            .collect();
        for (b, &c) in basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, m) in out.iter_mut().zip(b) {
                *o = o.add(&m.scale(c, f), f);
            }
        }
        out
    }

    /// Finds one nontrivial direct-sum splitting, or proves there is none.
    ///
    /// A representation is indecomposable iff every endomorphism is nilpotent or invertible.
    /// Structured and seeded random candidates are tried first; certifying indecomposability
    /// for endomorphism rings of dimension > 1 requires an exhaustive scan within `budget`.
    pub fn split(&self, quiver: &Quiver, budget: u64) -> Result<Option<(FqRep, FqRep)>> {
        if self.total_dim() <= 1 {
            return Ok(None);
        }
        let end = self.hom_basis(quiver, self);
        if end.len() <= 1 {
            return Ok(None);
        }
        let f = self.f();
        let q = f.order();
        for phi in &end {
            for c in f.elements() {
                if let Some(s) = self.fitting_split(quiver, &self.shifted(phi, c)) {
                    return Ok(Some(s));
                }
            }
        }
        for i in 0..end.len() {
            for j in i + 1..end.len() {
                let mut coeffs = vec![0u16; end.len()];
                coeffs[i] = 1;
                coeffs[j] = 1;
                let phi = self.combination(&end, &coeffs);
                if let Some(s) = self.fitting_split(quiver, &phi) {
                    return Ok(Some(s));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f177);
        for _ in 0..64 {
            let coeffs: Vec<u16> = (0..end.len()).map(|_| rng.gen_range(0..q) as u16).collect();
            if let Some(s) = self.fitting_split(quiver, &self.combination(&end, &coeffs)) {
                return Ok(Some(s));
            }
        }
        let total = checked_pow(q, end.len());
        match total {
            Some(t) if t <= budget => {
                for code in 0..t {
                    let coeffs = digits(code, q, end.len());
                    if let Some(s) = self.fitting_split(quiver, &self.combination(&end, &coeffs)) {
                        return Ok(Some(s));
                    }
                }
                Ok(None)
            }
            _ => Err(Error::BudgetExceeded {
                what: format!("indecomposability certificate (End of dimension {})", end.len()),
                needed: format!("{q}^{}", end.len()),
                budget,
            }),
        }
    }

    /// Krull-Schmidt decomposition into indecomposable summands (unordered).
    pub fn decompose(&self, quiver: &Quiver, budget: u64) -> Result<Vec<FqRep>> {
        if self.total_dim() == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(r) = stack.pop() {
            match r.split(quiver, budget)? {
                Some((a, b)) => {
                    stack.push(a);
                    stack.push(b);
                }
                None => out.push(r),
            }
        }
        Ok(out)
    }

    pub fn is_indecomposable(&self, quiver: &Quiver, budget: u64) -> Result<bool> {
        Ok(self.total_dim() > 0 && self.split(quiver, budget)?.is_none())
    }

    /// Decides `self ≅ other` by searching `Hom(self, other)` for an invertible map, after a
    /// hom-dimension fingerprint check.
    pub fn is_isomorphic(&self, quiver: &Quiver, other: &FqRep, budget: u64) -> Result<bool> {
        if self.dims != other.dims {
            return Ok(false);
        }
        let hom = self.hom_basis(quiver, other);
        let h = hom.len();
        if h != self.hom_dim(quiver, self)
            || h != other.hom_dim(quiver, other)
            || h != other.hom_dim(quiver, self)
        {
            return Ok(false);
        }
        if self.total_dim() == 0 {
            return Ok(true);
        }
        let f = self.f();
        let q = f.order();
        let invertible = |phi: &RepMorphism| phi.iter().all(|m| m.is_invertible(f));
        if hom.iter().any(invertible) {
            return Ok(true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x150_150);
        for _ in 0..64 {
            let coeffs: Vec<u16> = (0..h).map(|_| rng.gen_range(0..q) as u16).collect();
            if invertible(&self.combination_into(other, &hom, &coeffs)) {
                return Ok(true);
            }
        }
        match checked_pow(q, h) {
            Some(t) if t <= budget => Ok((0..t).any(|code| {
                invertible(&self.combination_into(other, &hom, &digits(code, q, h)))
            })),
            _ => Err(Error::BudgetExceeded {
                what: "isomorphism search".into(),
                needed: format!("{q}^{h}"),
                budget,
            }),
        }
    }

    fn combination_into(&self, other: &FqRep, basis: &[RepMorphism], coeffs: &[u16]) -> RepMorphism {
        let f = self.f();
        let mut out: RepMorphism = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(&c, &r)| Matrix::zeros(r, c))
            .collect();
        for (b, &k) in basis.iter().zip(coeffs) {
            if k == 0 {
                continue;
            }
            for (o, m) in out.iter_mut().zip(b) {
                *o = o.add(&m.scale(k, f), f);
            }
        }
        out
    }

    /// Order of the automorphism group, by exhaustive scan of `End(self)`.
    pub fn count_automorphisms(&self, quiver: &Quiver, budget: u64) -> Result<u64> {
        let end = self.hom_basis(quiver, self);
        let f = self.f();
        let q = f.order();
        let total = checked_pow(q, end.len()).filter(|t| *t <= budget).ok_or_else(|| {
            Error::BudgetExceeded {
                what: "automorphism count".into(),
                needed: format!("{q}^{}", end.len()),
                budget,
            }
        })?;
        Ok((0..total)
            .filter(|&code| {
                self.combination(&end, &digits(code, q, end.len()))
                    .iter()
                    .all(|m| m.is_invertible(f))
            })
            .count() as u64)
    }

    /// Every representation of dimension `dims` over `field`, in a fixed order.
    pub fn enumerate_all(
        quiver: &Quiver,
        field: &Fq,
        dims: &[usize],
        budget: u64,
    ) -> Result<impl Iterator<Item = FqRep>> {
        let shapes: Vec<(usize, usize)> = quiver
            .arrows()
            .iter()
            .map(|(s, t)| (dims[*t], dims[*s]))
            .collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let q = field.order();
        let total = checked_pow(q, entries).filter(|t| *t <= budget).ok_or_else(|| {
            Error::BudgetExceeded {
                what: format!("representation space of dimension {dims:?}"),
                needed: format!("{q}^{entries}"),
                budget,
            }
        })?;
        let field = field.clone();
        let dims = dims.to_vec();
        Ok((0..total).map(move |code| {
            let ds = digits(code, q, entries);
            let mut off = 0;
            let maps = shapes
                .iter()
                .map(|(r, c)| {
                    let m = Matrix::from_vec(*r, *c, ds[off..off + r * c].to_vec());
                    off += r * c;
                    m
                })
                .collect();
            FqRep {
                field: field.clone(),
                dims: dims.clone(),
                maps,
            }
        }))
    }
}

fn unflatten(vec: &[u16], shapes: &[(usize, usize)], offsets: &[usize]) -> Vec<Matrix> {
    shapes
        .iter()
        .zip(offsets)
        .map(|((r, c), o)| Matrix::from_vec(*r, *c, vec[*o..*o + r * c].to_vec()))
        .collect()
}

pub(crate) fn checked_pow(q: u32, e: usize) -> Option<u64> {
    u64::from(q).checked_pow(u32::try_from(e).ok()?)
}

pub(crate) fn digits(mut code: u64, q: u32, len: usize) -> Vec<u16> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % u64::from(q)) as u16);
        code /= u64::from(q);
    }
    out
}
