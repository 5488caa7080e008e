//! The motivic Hall algebra of a quiver, restricted to a finite window of dimension vectors.

mod element;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Mutex;

use num_bigint::BigInt;

pub use element::{HallElement, ScElement};

use crate::error::{Error, Result};
use crate::fq::GaloisField;
use crate::motivic::{LaurentPoly, MotivicClass};
use crate::quiver::{interpolate_count_polynomial, DimVector, IsoClass, Quiver, RepModel, Window};

/// Default sample fields for interpolating point counts.
pub const DEFAULT_PRIMES: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// A Hall algebra context: the category, the window and the sample fields.
///
/// Products of atoms are memoized, so one context should be reused across a computation.
pub struct HallAlgebra {
    model: RepModel,
    window: Window,
    primes: Vec<u32>,
    products: Mutex<HashMap<(IsoClass, IsoClass), HallElement>>,
    stable: Mutex<HashSet<(DimVector, Vec<u32>)>>,
}

impl HallAlgebra {
    /// `primes` are the sample fields, in the order they are used: for an extension
    /// space of dimension `d` the first `d + 2` are consulted.
    pub fn new(model: RepModel, window: Window, primes: Vec<u32>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidArgument("no sample fields given".into()));
        }
        let mut seen = BTreeSet::new();
        for &q in &primes {
            GaloisField::new(q)?;
            if !seen.insert(q) {
                return Err(Error::InvalidArgument(format!("sample field {q} listed twice")));
            }
        }
        if window.dims(model.quiver()).is_empty() {
            return Err(Error::InvalidArgument("empty window".into()));
        }
        Ok(Self {
            model,
            window,
            primes,
            products: Mutex::new(HashMap::new()),
            stable: Mutex::new(HashSet::new()),
        })
    }

    /// A context for `quiver` with the default fields and budget.
    pub fn for_quiver(quiver: Quiver, window: Window) -> Result<Self> {
        Self::new(RepModel::new(quiver, 1 << 22), window, DEFAULT_PRIMES.to_vec())
    }

    pub fn model(&self) -> &RepModel {
        &self.model
    }

    pub fn quiver(&self) -> &Quiver {
        self.model.quiver()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver().num_vertices()
    }

    fn require_window(&self, dim: &DimVector) -> Result<()> {
        if self.window.contains(dim) {
            Ok(())
        } else {
            Err(Error::WindowExceeded(format!("dimension vector {dim} is outside the window")))
        }
    }

    /// Labels of every indecomposable summand of `classes` must agree across `qs`.
    fn require_stable<'a>(&self, classes: impl IntoIterator<Item = &'a IsoClass>, qs: &[u32]) -> Result<()> {
        for c in classes {
            for id in c.parts().keys() {
                let key = (id.dim.clone(), qs.to_vec());
                if self.stable.lock().expect("poisoned").contains(&key) {
                    continue;
                }
                self.model.check_labels(&id.dim, qs)?;
                self.stable.lock().expect("poisoned").insert(key);
            }
        }
        Ok(())
    }

    pub fn unit(&self) -> HallElement {
        HallElement::term(IsoClass::zero(self.num_vertices()), MotivicClass::one())
    }

    pub fn atom(&self, class: &IsoClass) -> HallElement {
        HallElement::term(class.clone(), MotivicClass::one())
    }

    /// `δ_E = a_E / [Aut E]`.
    pub fn delta(&self, class: &IsoClass) -> Result<HallElement> {
        let aut = self.model.aut_class_motivic(class)?;
        Ok(HallElement::term(
            class.clone(),
            MotivicClass::one().exact_divide(&aut)?,
        ))
    }

    /// All isomorphism classes of dimension `dim`, labelled over the reference field.
    pub fn isoclasses(&self, dim: &DimVector) -> Result<Vec<IsoClass>> {
        self.model.isoclasses(dim, self.model.reference_q())
    }

    /// `κ_α = sum over classes E of dimension α of δ_E`.
    pub fn char_function(&self, dim: &DimVector) -> Result<HallElement> {
        self.require_window(dim)?;
        let mut out = HallElement::zero();
        for e in self.isoclasses(dim)? {
            out = &out + &self.delta(&e)?;
        }
        Ok(out)
    }

    /// `a_E * a_F = L^{-d0} (a_{E⊕F} + (L - 1) sum_G n_G(L) a_G)` with `E` the subobject,
    /// `d0 = dim Hom(F, E)` and `n_G` the number of points of `P Ext^1(F, E)` with middle term `G`.
    pub fn atom_product(&self, sub: &IsoClass, quotient: &IsoClass) -> Result<HallElement> {
        let key = (sub.clone(), quotient.clone());
        if let Some(p) = self.products.lock().expect("poisoned").get(&key) {
            return Ok(p.clone());
        }
        let total = sub.dim().add(quotient.dim());
        self.require_window(&total)?;
        let rq = self.model.reference_q();
        let d0 = self.model.hom_dim(quotient, sub, rq)? as i64;
        let d1 = self.model.ext1_dim(quotient, sub, rq)?;
        let mut inner = HallElement::term(sub.direct_sum(quotient), MotivicClass::one());
        if d1 > 0 {
            let l_minus_one = &MotivicClass::lefschetz() - &MotivicClass::one();
            for (g, n) in self.extension_strata(quotient, sub, d1)? {
                inner.add_term(g, &l_minus_one * &MotivicClass::from_poly(n));
            }
        }
        let out = inner.scale(&MotivicClass::lefschetz_pow(-d0));
        self.products
            .lock()
            .expect("poisoned")
            .insert(key, out.clone());
        Ok(out)
    }

    /// Point-count polynomials of the strata of `P Ext^1(F, E)` by middle term, interpolated
    /// over the sample fields with one extra field as a check.
    pub fn extension_strata(
        &self,
        quotient: &IsoClass,
        sub: &IsoClass,
        ext_dim: usize,
    ) -> Result<BTreeMap<IsoClass, LaurentPoly>> {
        let needed = ext_dim + 2;
        if self.primes.len() < needed {
            return Err(Error::NotEnoughSamples {
                needed,
                got: self.primes.len(),
            });
        }
        let qs = &self.primes[..needed];
        let mut per_q = Vec::new();
        let mut strata = BTreeSet::new();
        for &q in qs {
            let counts = self.model.count_extension_classes(quotient, sub, q)?;
            strata.extend(counts.keys().cloned());
            per_q.push((q, counts));
        }
        self.require_stable(strata.iter().chain([quotient, sub]), qs)?;
        let mut out = BTreeMap::new();
        for g in strata {
            let samples: Vec<(i64, BigInt)> = per_q
                .iter()
                .map(|(q, c)| (i64::from(*q), BigInt::from(c.get(&g).copied().unwrap_or(0))))
                .collect();
            let poly = interpolate_count_polynomial(&samples, ext_dim).map_err(|e| match e {
                Error::InterpolationMismatch(m) => Error::InterpolationMismatch(format!(
                    "stratum {g} of P Ext^1({quotient}, {sub}): {m}"
                )),
                other => other,
            })?;
            out.insert(g, poly);
        }
        Ok(out)
    }

    pub fn mul(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        let mut out = HallElement::zero();
        for (e, c) in x.terms() {
            for (f, d) in y.terms() {
                let p = self.atom_product(e, f)?;
                out = &out + &p.scale(&(c * d));
            }
        }
        Ok(out)
    }

    /// Left-fold of `mul`; the empty product is the unit.
    pub fn mul_n(&self, xs: &[HallElement]) -> Result<HallElement> {
        let Some((first, rest)) = xs.split_first() else {
            return Ok(self.unit());
        };
        rest.iter()
            .try_fold(first.clone(), |acc, x| self.mul(&acc, x))
    }

    pub fn commutator(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    /// `{x, y} = (x*y - y*x) / (L - 1)`.
    pub fn poisson_bracket(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        let l_minus_one = &MotivicClass::lefschetz() - &MotivicClass::one();
        self.commutator(x, y)?
            .map_coeffs(|_, c| c.exact_divide(&l_minus_one))
    }

    /// Every atom coefficient is a Laurent polynomial.
    pub fn is_regular(x: &HallElement) -> bool {
        x.terms().all(|(_, c)| c.is_polynomial_class())
    }

    /// Atom coefficients at `L = 1`.
    pub fn semiclassical(x: &HallElement) -> Result<ScElement> {
        let mut out = ScElement::zero();
        for (e, c) in x.terms() {
            let p = c.to_laurent().ok_or_else(|| {
                Error::NotRegular(format!("coefficient {c} of {e} is not a Laurent polynomial"))
            })?;
            let v = i64::try_from(p.eval_one()).map_err(|_| {
                Error::InvalidArgument(format!("coefficient of {e} at L = 1 overflows i64"))
            })?;
            out.add_term(e.clone(), v);
        }
        Ok(out)
    }

    pub fn sc_mul(&self, u: &ScElement, v: &ScElement) -> Result<ScElement> {
        Self::semiclassical(&self.mul(&u.lift(), &v.lift())?)
    }

    pub fn sc_bracket(&self, u: &ScElement, v: &ScElement) -> Result<ScElement> {
        Self::semiclassical(&self.poisson_bracket(&u.lift(), &v.lift())?)
    }

    pub fn project(x: &HallElement, dim: &DimVector) -> HallElement {
        HallElement::from_terms(
            x.terms()
                .filter(|(e, _)| e.dim() == dim)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Total coefficient of each graded piece.
    pub fn pushforward_to_point(x: &HallElement) -> BTreeMap<DimVector, MotivicClass> {
        x.graded()
            .iter()
            .map(|(d, piece)| {
                let sum = piece
                    .values()
                    .fold(MotivicClass::zero(), |acc, c| &acc + c);
                (d.clone(), sum)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Keeps the graded pieces whose degree satisfies `pred`, after checking that `pred`
    /// holds at zero and is closed under addition inside the window.
    pub fn restrict_to_submonoid(
        &self,
        x: &HallElement,
        pred: &dyn Fn(&DimVector) -> bool,
    ) -> Result<HallElement> {
        let zero = self.quiver().zero_dim();
        if !pred(&zero) {
            return Err(Error::SubmonoidViolation("the zero vector is excluded".into()));
        }
        let dims: Vec<DimVector> = self.window.dims(self.quiver()).into_iter().filter(|d| pred(d)).collect();
        for a in &dims {
            for b in &dims {
                let s = a.add(b);
                if self.window.contains(&s) && !pred(&s) {
                    return Err(Error::SubmonoidViolation(format!(
                        "{a} and {b} are included but their sum {s} is not"
                    )));
                }
            }
        }
        Ok(HallElement::from_terms(
            x.terms()
                .filter(|(e, _)| pred(e.dim()))
                .map(|(e, c)| (e.clone(), c.clone())),
        ))
    }

    /// Coefficients in the basis `δ_E = a_E / [Aut E]`: the coefficient of `a_E` times `[Aut E]`.
    pub fn to_delta_coeffs(&self, x: &HallElement) -> Result<HallElement> {
        x.map_coeffs(|e, c| Ok(c * &self.model.aut_class_motivic(e)?))
    }

    pub fn from_delta_coeffs(&self, x: &HallElement) -> Result<HallElement> {
        x.map_coeffs(|e, c| c.exact_divide(&self.model.aut_class_motivic(e)?))
    }

    /// Atoms of every class in the window.
    pub fn window_classes(&self) -> Result<Vec<IsoClass>> {
        let mut out = Vec::new();
        for d in self.window.dims(self.quiver()) {
            out.extend(self.isoclasses(&d)?);
        }
        Ok(out)
    }

    /// Ordered pairs of window classes whose direct sum stays in the window.
    pub fn window_pairs(&self) -> Result<Vec<(IsoClass, IsoClass)>> {
        let classes = self.window_classes()?;
        let mut out = Vec::new();
        for e in &classes {
            for f in &classes {
                if self.window.contains(&e.dim().add(f.dim())) {
                    out.push((e.clone(), f.clone()));
                }
            }
        }
        Ok(out)
    }
}
