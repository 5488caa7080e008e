//! Integration maps from the semi-classical Hall algebra to the Poisson torus, and from the
//! Hall algebra to the quantum torus.

mod torus;
mod weight;

use std::fmt;

use num_traits::ToPrimitive;

pub use torus::{BilinearForm, PoissonTorusElement, QuantumTorusElement, Sign};
pub use weight::{behrend_from_ext, WeightFunction};

use crate::error::{Error, Result};
use crate::hall::{HallAlgebra, HallElement, ScElement};
use crate::quiver::{IsoClass, Quiver};
use crate::report::Report;

const FORM_NOTE: &str = "torus twist and bracket use the antisymmetrized Euler form chi(a,b) - chi(b,a)";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Algebra,
    Poisson,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Algebra => "algebra",
            Mode::Poisson => "poisson",
        })
    }
}

/// `I(sum c_E a_E) = sum_α (sum_{[E] = α} c_E λ(E)) x^α`.
pub fn integrate(u: &ScElement, weight: &WeightFunction, sigma: Sign, quiver: &Quiver) -> PoissonTorusElement {
    let mut out = PoissonTorusElement::zero(sigma, BilinearForm::skew(quiver));
    for (e, c) in u.terms() {
        out.add_term(e.dim().clone(), c * weight.eval(quiver, e));
    }
    out
}

/// Checks `λ(E⊕F) = σ^{<E,F>} λ(E) λ(F)` on every window pair.
pub fn check_multiplicativity(alg: &HallAlgebra, weight: &WeightFunction, sigma: Sign) -> Result<Report> {
    let q = alg.quiver();
    let skew = BilinearForm::skew(q);
    let mut report = Report::new("multiplicativity").with_note(FORM_NOTE);
    for (e, f) in alg.window_pairs()? {
        let lhs = weight.eval(q, &e.direct_sum(&f));
        let rhs = sigma.pow(skew.eval(e.dim(), f.dim())) * weight.eval(q, &e) * weight.eval(q, &f);
        report.check(&e, &f, &lhs, &rhs);
    }
    Ok(report)
}

/// `m(E, F)`: the Euler characteristic of `P Ext^1(F, E)` weighted by `λ(G_θ) - λ(E⊕F)`,
/// where `G_θ` is the middle term of the extension `θ`.
pub fn ext_weight(alg: &HallAlgebra, weight: &WeightFunction, sub: &IsoClass, quotient: &IsoClass) -> Result<i64> {
    let model = alg.model();
    let d1 = model.ext1_dim(quotient, sub, model.reference_q())?;
    if d1 == 0 {
        return Ok(0);
    }
    let q = alg.quiver();
    let split = weight.eval(q, &sub.direct_sum(quotient));
    let mut m = 0i64;
    for (g, count) in alg.extension_strata(quotient, sub, d1)? {
        let chi = count
            .eval_one()
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument(format!("Euler characteristic of stratum {g} overflows")))?;
        m += chi * (weight.eval(q, &g) - split);
    }
    Ok(m)
}

/// Checks `m(E, F) = m(F, E)` on every unordered window pair.
pub fn check_ext_symmetry(alg: &HallAlgebra, weight: &WeightFunction) -> Result<Report> {
    let mut report = Report::new("ext-symmetry");
    for (e, f) in alg.window_pairs()? {
        if e >= f {
            continue;
        }
        let lhs = ext_weight(alg, weight, &e, &f)?;
        let rhs = ext_weight(alg, weight, &f, &e)?;
        report.check(&e, &f, &lhs, &rhs);
    }
    Ok(report)
}

/// Tests that integration is multiplicative (`Algebra`) or bracket-preserving (`Poisson`)
/// on every pair of window atoms, after checking the hypotheses that guarantee it.
pub fn verify_integration_homomorphism(
    alg: &HallAlgebra,
    weight: &WeightFunction,
    sigma: Sign,
    mode: Mode,
) -> Result<Report> {
    let mut report = Report::new(format!("integration-{mode}")).with_note(FORM_NOTE);
    let mut failed = Vec::new();
    if !check_multiplicativity(alg, weight, sigma)?.passed() {
        failed.push("multiplicativity");
    }
    if mode == Mode::Poisson && !check_ext_symmetry(alg, weight)?.passed() {
        failed.push("ext-symmetry");
    }
    if !failed.is_empty() {
        report.hypothesis_failure = Some(format!(
            "weight {} with sigma {sigma} fails {}",
            weight.name(),
            failed.join(" and ")
        ));
        return Ok(report);
    }
    let q = alg.quiver();
    for (e, f) in alg.window_pairs()? {
        let u = ScElement::term(e.clone(), 1);
        let v = ScElement::term(f.clone(), 1);
        let (lhs, rhs) = match mode {
            Mode::Algebra => (
                integrate(&alg.sc_mul(&u, &v)?, weight, sigma, q),
                integrate(&u, weight, sigma, q).torus_mul(&integrate(&v, weight, sigma, q))?,
            ),
            Mode::Poisson => (
                integrate(&alg.sc_bracket(&u, &v)?, weight, sigma, q),
                integrate(&u, weight, sigma, q).torus_bracket(&integrate(&v, weight, sigma, q))?,
            ),
        };
        report.check(&e, &f, &lhs, &rhs);
    }
    Ok(report)
}

/// Sends each graded piece to its total coefficient times `x^α`.
pub fn quantum_integrate(x: &HallElement, quiver: &Quiver) -> QuantumTorusElement {
    let mut out = QuantumTorusElement::zero(BilinearForm::euler(quiver));
    for (d, c) in HallAlgebra::pushforward_to_point(x) {
        out.add_term(d, c);
    }
    out
}

/// Checks that `quantum_integrate` is multiplicative on every pair of window atoms.
pub fn verify_quantum_homomorphism(alg: &HallAlgebra) -> Result<Report> {
    let q = alg.quiver();
    let mut report = Report::new("quantum-homomorphism");
    for (e, f) in alg.window_pairs()? {
        let lhs = quantum_integrate(&alg.mul(&alg.atom(&e), &alg.atom(&f))?, q);
        let rhs = quantum_integrate(&alg.atom(&e), q).mul(&quantum_integrate(&alg.atom(&f), q))?;
        report.check(&e, &f, &lhs, &rhs);
    }
    Ok(report)
}
