use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::iso::{IndecId, IsoClass};
use super::rep::{checked_pow, FqRep};
use super::{DimVector, Quiver};
use crate::error::{Error, Result};
use crate::fq::{Fq, GaloisField};
use crate::motivic::MotivicClass;

/// Indecomposables of one dimension vector over one field, in label order.
struct Catalog {
    reps: Vec<FqRep>,
    /// Two entries share a fingerprint, so the labels may not transfer between fields.
    ambiguous: bool,
}

/// One isomorphism class of a given dimension vector over `F_q`.
#[derive(Clone, Debug)]
pub struct IsoEntry {
    pub class: IsoClass,
    pub representative: FqRep,
    /// Order of the stabilizer of the representative in `prod_i GL_{a_i}(F_q)`.
    pub aut_count: u64,
}

/// A quiver together with cached finite-field data: the indecomposables of each
/// dimension vector over each field, found by exhaustive enumeration.
///
/// All queries are pure functions of their arguments; the caches only memoize.
pub struct RepModel {
    quiver: Quiver,
    budget: u64,
    reference_q: u32,
    fields: Mutex<BTreeMap<u32, Fq>>,
    catalogs: Mutex<HashMap<(DimVector, u32), Arc<Catalog>>>,
}

impl RepModel {
    pub fn new(quiver: Quiver, budget: u64) -> Self {
        Self {
            quiver,
            budget,
            reference_q: 2,
            fields: Mutex::new(BTreeMap::new()),
            catalogs: Mutex::new(HashMap::new()),
        }
    }

    /// Field used for field-independent quantities such as hom dimensions.
    pub fn with_reference_field(mut self, q: u32) -> Self {
        self.reference_q = q;
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn reference_q(&self) -> u32 {
        self.reference_q
    }

    pub fn field(&self, q: u32) -> Result<Fq> {
        let mut fields = self.fields.lock().expect("field cache poisoned");
        if let Some(f) = fields.get(&q) {
            return Ok(f.clone());
        }
        let f = GaloisField::new(q)?;
        fields.insert(q, f.clone());
        Ok(f)
    }

    fn catalog(&self, dim: &DimVector, q: u32) -> Result<Arc<Catalog>> {
        let key = (dim.clone(), q);
        if let Some(c) = self.catalogs.lock().expect("catalog cache poisoned").get(&key) {
            return Ok(c.clone());
        }
        let field = self.field(q)?;
        let dims: Vec<usize> = dim.0.iter().map(|&d| d as usize).collect();
        let mut found: Vec<FqRep> = Vec::new();
        for rep in FqRep::enumerate_all(&self.quiver, &field, &dims, self.budget)? {
            if !rep.is_indecomposable(&self.quiver, self.budget)? {
                continue;
            }
            let mut known = false;
            for other in &found {
                if rep.is_isomorphic(&self.quiver, other, self.budget)? {
                    known = true;
                    break;
                }
            }
            if !known {
                found.push(rep);
            }
        }
        let mut keyed: Vec<(Vec<usize>, FqRep)> = found
            .into_iter()
            .map(|r| (self.fingerprint(&r), r))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let ambiguous = keyed.windows(2).any(|w| w[0].0 == w[1].0);
        let catalog = Arc::new(Catalog {
            reps: keyed.into_iter().map(|(_, r)| r).collect(),
            ambiguous,
        });
        self.catalogs
            .lock()
            .expect("catalog cache poisoned")
            .insert(key, catalog.clone());
        Ok(catalog)
    }

    /// Field-independent invariants used to order indecomposables of equal dimension.
    fn fingerprint(&self, rep: &FqRep) -> Vec<usize> {
        let f = rep.field();
        let mut fp = vec![rep.hom_dim(&self.quiver, rep)];
        fp.extend(rep.maps().iter().map(|m| m.rank(f)));
        fp
    }

    /// Labels of the indecomposables of dimension `dim` over `F_q`.
    pub fn indecomposables(&self, dim: &DimVector, q: u32) -> Result<Vec<IndecId>> {
        let c = self.catalog(dim, q)?;
        Ok((0..c.reps.len() as u32)
            .map(|i| IndecId::new(dim.clone(), i))
            .collect())
    }

    /// Checks that the indecomposable labels of dimension `dim` mean the same thing over
    /// every field in `qs`.
    pub fn check_labels(&self, dim: &DimVector, qs: &[u32]) -> Result<()> {
        let mut sizes = Vec::new();
        for &q in qs {
            let c = self.catalog(dim, q)?;
            if c.ambiguous {
                return Err(Error::UnstableLabels(format!(
                    "indecomposables of dimension {dim} over F_{q} are not separated by their invariants"
                )));
            }
            sizes.push((q, c.reps.len()));
        }
        if sizes.windows(2).any(|w| w[0].1 != w[1].1) {
            return Err(Error::UnstableLabels(format!(
                "number of indecomposables of dimension {dim} varies with q: {sizes:?}"
            )));
        }
        Ok(())
    }

    pub fn indecomposable_rep(&self, id: &IndecId, q: u32) -> Result<FqRep> {
        let c = self.catalog(&id.dim, q)?;
        c.reps.get(id.index as usize).cloned().ok_or_else(|| {
            Error::UnstableLabels(format!("no indecomposable {id} over F_{q}"))
        })
    }

    /// A representative of `class` over `F_q`: the direct sum of catalog representatives.
    pub fn representative(&self, class: &IsoClass, q: u32) -> Result<FqRep> {
        let mut rep = FqRep::zero(&self.quiver, self.field(q)?);
        for (id, m) in class.parts() {
            let ind = self.indecomposable_rep(id, q)?;
            for _ in 0..*m {
                rep = rep.direct_sum(&ind);
            }
        }
        Ok(rep)
    }

    /// The isomorphism class of `rep`, via Krull-Schmidt decomposition.
    pub fn identify(&self, rep: &FqRep) -> Result<IsoClass> {
        let q = rep.field().order();
        let n = self.quiver.num_vertices();
        let mut parts = Vec::new();
        for summand in rep.decompose(&self.quiver, self.budget)? {
            let dim = summand.dim_vector();
            let c = self.catalog(&dim, q)?;
            let index = if c.reps.len() == 1 {
                Some(0)
            } else {
                let mut hit = None;
                for (i, r) in c.reps.iter().enumerate() {
                    if summand.is_isomorphic(&self.quiver, r, self.budget)? {
                        hit = Some(i);
                        break;
                    }
                }
                hit
            };
            let index = index.ok_or_else(|| {
                Error::UnstableLabels(format!(
                    "indecomposable summand of dimension {dim} missing from the catalog over F_{q}"
                ))
            })?;
            parts.push((IndecId::new(dim, index as u32), 1));
        }
        IsoClass::from_parts(n, parts)
    }

    /// Every isomorphism class of dimension `dim` over `F_q`, sorted.
    pub fn isoclasses(&self, dim: &DimVector, q: u32) -> Result<Vec<IsoClass>> {
        let n = self.quiver.num_vertices();
        if dim.is_zero() {
            return Ok(vec![IsoClass::zero(n)]);
        }
        let mut ids = Vec::new();
        for beta in dim.nonzero_below() {
            ids.extend(self.indecomposables(&beta, q)?);
        }
        let mut out = Vec::new();
        fn go(
            ids: &[IndecId],
            remaining: &DimVector,
            chosen: &mut Vec<(IndecId, u32)>,
            n: usize,
            out: &mut Vec<IsoClass>,
        ) {
            if remaining.is_zero() {
                out.push(IsoClass::from_parts(n, chosen.iter().cloned()).expect("labels fit"));
                return;
            }
            let Some((first, rest)) = ids.split_first() else {
                return;
            };
            let mut rem = remaining.clone();
            let mut m = 0;
            loop {
                if m > 0 {
                    chosen.push((first.clone(), m));
                }
                go(rest, &rem, chosen, n, out);
                if m > 0 {
                    chosen.pop();
                }
                match rem.checked_sub(&first.dim) {
                    Some(r) => {
                        rem = r;
                        m += 1;
                    }
                    None => break,
                }
            }
        }
        go(&ids, dim, &mut Vec::new(), n, &mut out);
        out.sort();
        Ok(out)
    }

    /// Isomorphism classes of dimension `dim` with representatives and brute-force
    /// automorphism counts.
    pub fn enumerate_isoclasses(&self, dim: &DimVector, q: u32) -> Result<Vec<IsoEntry>> {
        let entries: usize = self
            .quiver
            .arrows()
            .iter()
            .map(|(s, t)| (dim.0[*s] * dim.0[*t]) as usize)
            .sum();
        if checked_pow(q, entries).is_none_or(|t| t > self.budget) {
            return Err(Error::BudgetExceeded {
                what: format!("representation space of dimension {dim}"),
                needed: format!("{q}^{entries}"),
                budget: self.budget,
            });
        }
        self.isoclasses(dim, q)?
            .into_iter()
            .map(|class| {
                let representative = self.representative(&class, q)?;
                let aut_count = representative.count_automorphisms(&self.quiver, self.budget)?;
                Ok(IsoEntry {
                    class,
                    representative,
                    aut_count,
                })
            })
            .collect()
    }

    /// `dim Hom(A, B)` for classes, from pairwise hom dimensions of indecomposables.
    pub fn hom_dim(&self, a: &IsoClass, b: &IsoClass, q: u32) -> Result<usize> {
        let mut total = 0;
        for (i, m) in a.parts() {
            let ri = self.indecomposable_rep(i, q)?;
            for (j, n) in b.parts() {
                let rj = self.indecomposable_rep(j, q)?;
                total += (*m as usize) * (*n as usize) * ri.hom_dim(&self.quiver, &rj);
            }
        }
        Ok(total)
    }

    pub fn ext1_dim(&self, a: &IsoClass, b: &IsoClass, q: u32) -> Result<usize> {
        let chi = self.quiver.euler_form(a.dim(), b.dim());
        let d = self.hom_dim(a, b, q)? as i64 - chi;
        debug_assert!(d >= 0, "negative Ext^1 dimension");
        Ok(d as usize)
    }

    /// `[Aut E] = L^r * prod_k [GL_{m_k}]`, where `E = ⊕ I_k^{m_k}` and
    /// `r = dim End(E) - sum_k m_k^2` is the dimension of the radical of `End(E)`.
    pub fn aut_class_motivic(&self, class: &IsoClass) -> Result<MotivicClass> {
        let end = self.hom_dim(class, class, self.reference_q)? as i64;
        let r = end - i64::from(class.semisimple_rank());
        let mut c = MotivicClass::lefschetz_pow(r);
        for m in class.parts().values() {
            c = &c * &MotivicClass::gl_class(i64::from(*m))?;
        }
        Ok(c)
    }

    /// For each middle term `G`, the number of points `[theta]` of `P Ext^1(F, E)` over
    /// `F_q` whose extension `0 -> E -> G_theta -> F -> 0` has `G_theta ≅ G`.
    pub fn count_extension_classes(
        &self,
        quotient: &IsoClass,
        sub: &IsoClass,
        q: u32,
    ) -> Result<BTreeMap<IsoClass, u64>> {
        let f_rep = self.representative(quotient, q)?;
        let e_rep = self.representative(sub, q)?;
        let basis = f_rep.ext1_basis(&self.quiver, &e_rep);
        let d = basis.len();
        let mut counts = BTreeMap::new();
        if d == 0 {
            return Ok(counts);
        }
        let points = (checked_pow(q, d).unwrap_or(u64::MAX) - 1) / u64::from(q - 1);
        if points > self.budget {
            return Err(Error::BudgetExceeded {
                what: format!("P Ext^1({quotient}, {sub}) over F_{q}"),
                needed: points.to_string(),
                budget: self.budget,
            });
        }
        let field = f_rep.field().clone();
        for coords in projective_points(q, d) {
            let theta: Vec<_> = (0..self.quiver.arrows().len())
                .map(|a| {
                    let mut m = basis[0][a].scale(0, &field);
                    for (b, &c) in basis.iter().zip(&coords) {
                        if c != 0 {
                            m = m.add(&b[a].scale(c, &field), &field);
                        }
                    }
                    m
                })
                .collect();
            let g = f_rep.extension(&self.quiver, &e_rep, &theta);
            *counts.entry(self.identify(&g)?).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

/// Normalized representatives (first nonzero coordinate 1) of `P^{d-1}(F_q)`.
fn projective_points(q: u32, d: usize) -> impl Iterator<Item = Vec<u16>> {
    (0..d).flat_map(move |lead| {
        let tail = d - lead - 1;
        let count = u64::from(q).pow(tail as u32);
        (0..count).map(move |code| {
            let mut v = vec![0u16; d];
            v[lead] = 1;
            let ds = super::rep::digits(code, q, tail);
            v[lead + 1..].copy_from_slice(&ds);
            v
        })
    })
}
