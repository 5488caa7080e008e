//! Named verification suites over a Hall algebra context.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hall::{HallAlgebra, ScElement};
use crate::integration::{
    check_ext_symmetry, check_multiplicativity, quantum_integrate, verify_integration_homomorphism,
    verify_quantum_homomorphism, Mode, Sign, WeightFunction,
};
use crate::motivic::{LaurentPoly, MotivicClass};
use crate::oracle;
use crate::quiver::IsoClass;
use crate::report::Report;

pub const SUITES: [&str; 12] = [
    "ring-axioms",
    "gl-counts",
    "associativity",
    "grading",
    "regularity",
    "semiclassical",
    "poisson-axioms",
    "oracle-hall-numbers",
    "integration-algebra",
    "integration-poisson",
    "quantum-hom",
    "conditions",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub weight: WeightFunction,
    pub sigma: Sign,
    /// Fields for brute-force comparisons.
    pub oracle_fields: Vec<u32>,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            weight: WeightFunction::ConstantOne,
            sigma: Sign::Plus,
            oracle_fields: vec![2, 3],
            seed: 0x5eed,
        }
    }
}

pub fn run_suite(alg: &HallAlgebra, name: &str, opts: &SuiteOptions) -> Result<Vec<Report>> {
    match name {
        "ring-axioms" => Ok(vec![ring_axioms(opts.seed, 200)?]),
        "gl-counts" => Ok(vec![gl_counts()?]),
        "associativity" => Ok(vec![associativity(alg)?]),
        "grading" => Ok(vec![grading(alg)?]),
        "regularity" => Ok(vec![regularity(alg)?]),
        "semiclassical" => Ok(vec![semiclassical(alg)?]),
        "poisson-axioms" => Ok(vec![poisson_axioms(alg)?]),
        "oracle-hall-numbers" => Ok(vec![oracle_hall_numbers(alg, &opts.oracle_fields)?]),
        "integration-algebra" => Ok(vec![verify_integration_homomorphism(
            alg,
            &opts.weight,
            opts.sigma,
            Mode::Algebra,
        )?]),
        "integration-poisson" => Ok(vec![verify_integration_homomorphism(
            alg,
            &opts.weight,
            opts.sigma,
            Mode::Poisson,
        )?]),
        "quantum-hom" => Ok(vec![
            verify_quantum_homomorphism(alg)?,
            quantum_groupoid_counts(alg, &opts.oracle_fields)?,
        ]),
        "conditions" => Ok(vec![
            check_multiplicativity(alg, &opts.weight, opts.sigma)?,
            check_ext_symmetry(alg, &opts.weight)?,
        ]),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// A random class with a Laurent numerator and a small `(L^i - 1)` denominator.
pub fn random_class(rng: &mut impl Rng) -> MotivicClass {
    let mut num = LaurentPoly::zero();
    for _ in 0..rng.gen_range(0..4) {
        num.add_term(rng.gen_range(-2..=3), BigInt::from(rng.gen_range(-4..=4)));
    }
    let den: BTreeMap<u32, u32> = (1..=3).map(|i| (i, rng.gen_range(0..=1))).filter(|(_, m)| *m > 0).collect();
    MotivicClass::new(num, den).expect("keys are positive")
}

#[allow(clippy::eq_op)]
fn ring_axioms(seed: u64, samples: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new("ring-axioms");
    let one = MotivicClass::one();
    for _ in 0..samples {
        let (a, b, c) = (random_class(&mut rng), random_class(&mut rng), random_class(&mut rng));
        r.check(&a, &b, &(&a + &b), &(&b + &a));
        r.check(&a, &b, &(&a * &b), &(&b * &a));
        r.check(&a, [&b, &c], &(&(&a * &b) * &c), &(&a * &(&b * &c)));
        r.check(&a, [&b, &c], &(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        r.check(&a, &one, &(&a * &one), &a);
        r.check(&a, &a, &(&a - &a), &MotivicClass::zero());
        for q in [2i64, 3] {
            let ab = (&a * &b).specialize_at(q)?.to_string();
            let prod = (a.specialize_at(q)? * b.specialize_at(q)?).to_string();
            r.check(&a, &b, &ab, &prod);
        }
    }
    Ok(r)
}

fn gl_counts() -> Result<Report> {
    let mut r = Report::new("gl-counts");
    for d in 1..=4usize {
        for q in [2u32, 3, 5, 7] {
            let motivic = MotivicClass::gl_class(d as i64)?.specialize_at(i64::from(q))?;
            let brute = BigRational::from_integer(BigInt::from(oracle::gl_order(d, q)?));
            r.check(d, q, &motivic.to_string(), &brute.to_string());
        }
    }
    Ok(r)
}

fn associativity(alg: &HallAlgebra) -> Result<Report> {
    let mut r = Report::new("associativity");
    let classes = alg.window_classes()?;
    for a in &classes {
        for b in &classes {
            for c in &classes {
                let total = a.dim().add(b.dim()).add(c.dim());
                if !alg.window().contains(&total) {
                    continue;
                }
                let (x, y, z) = (alg.atom(a), alg.atom(b), alg.atom(c));
                let left = alg.mul(&alg.mul(&x, &y)?, &z)?;
                let right = alg.mul(&x, &alg.mul(&y, &z)?)?;
                r.check(a, [b, c], &left, &right);
            }
        }
    }
    Ok(r)
}

fn grading(alg: &HallAlgebra) -> Result<Report> {
    let mut r = Report::new("grading");
    for (e, f) in alg.window_pairs()? {
        let p = alg.mul(&alg.atom(&e), &alg.atom(&f))?;
        let expected = vec![e.dim().add(f.dim())];
        r.check(&e, &f, &p.support(), &expected);
    }
    Ok(r)
}

fn regularity(alg: &HallAlgebra) -> Result<Report> {
    let mut r = Report::new("regularity");
    for (e, f) in alg.window_pairs()? {
        let (x, y) = (alg.atom(&e), alg.atom(&f));
        r.check(&e, &f, &HallAlgebra::is_regular(&alg.mul(&x, &y)?), &true);
        r.check(&e, &f, &HallAlgebra::is_regular(&alg.poisson_bracket(&x, &y)?), &true);
    }
    Ok(r)
}

fn semiclassical(alg: &HallAlgebra) -> Result<Report> {
    let mut r = Report::new("semiclassical");
    for (e, f) in alg.window_pairs()? {
        let (x, y) = (alg.atom(&e), alg.atom(&f));
        let comm = HallAlgebra::semiclassical(&alg.commutator(&x, &y)?)?;
        r.check(&e, &f, &comm, &ScElement::zero());
        let (u, v) = (ScElement::term(e.clone(), 1), ScElement::term(f.clone(), 1));
        r.check(&e, &f, &alg.sc_mul(&u, &v)?, &u.direct_sum_convolution(&v));
    }
    Ok(r)
}

fn poisson_axioms(alg: &HallAlgebra) -> Result<Report> {
    let mut r = Report::new("poisson-axioms");
    let classes = alg.window_classes()?;
    let sc = |c: &IsoClass| ScElement::term(c.clone(), 1);
    for (e, f) in alg.window_pairs()? {
        let (u, v) = (sc(&e), sc(&f));
        r.check(&e, &f, &alg.sc_bracket(&u, &v)?, &-&alg.sc_bracket(&v, &u)?);
    }
    for a in &classes {
        for b in &classes {
            for c in &classes {
                if !alg.window().contains(&a.dim().add(b.dim()).add(c.dim())) {
                    continue;
                }
                let (u, v, w) = (sc(a), sc(b), sc(c));
                let jacobi = &(&alg.sc_bracket(&u, &alg.sc_bracket(&v, &w)?)?
                    + &alg.sc_bracket(&v, &alg.sc_bracket(&w, &u)?)?)
                    + &alg.sc_bracket(&w, &alg.sc_bracket(&u, &v)?)?;
                r.check(a, [b, c], &jacobi, &ScElement::zero());
                let lhs = alg.sc_bracket(&u, &alg.sc_mul(&v, &w)?)?;
                let rhs = &alg.sc_mul(&alg.sc_bracket(&u, &v)?, &w)? + &alg.sc_mul(&v, &alg.sc_bracket(&u, &w)?)?;
                r.check(a, [b, c], &lhs, &rhs);
            }
        }
    }
    Ok(r)
}

/// Hall numbers from the product, read in the `δ` basis, against subrepresentation counts.
fn oracle_hall_numbers(alg: &HallAlgebra, fields: &[u32]) -> Result<Report> {
    let mut r = Report::new("oracle-hall-numbers");
    let model = alg.model();
    for (e, f) in alg.window_pairs()? {
        let product = alg.to_delta_coeffs(&alg.mul(&alg.delta(&e)?, &alg.delta(&f)?)?)?;
        for g in alg.isoclasses(&e.dim().add(f.dim()))? {
            let coeff = product.coeff(&g);
            for &q in fields {
                let motivic = coeff.specialize_at(i64::from(q))?.to_string();
                let brute = oracle::hall_number(model, &e, &f, &g, q)?.to_string();
                r.check(&e, [&f, &g], &motivic, &brute);
            }
        }
    }
    Ok(r)
}

/// `quantum_integrate(a_E * a_F)` at `L = q` against
/// `sum_G g^G_{E,F}(q) |Aut E| |Aut F| / |Aut G|` from brute-force counts.
fn quantum_groupoid_counts(alg: &HallAlgebra, fields: &[u32]) -> Result<Report> {
    let mut r = Report::new("quantum-groupoid-counts");
    let model = alg.model();
    let quiver = alg.quiver();
    for (e, f) in alg.window_pairs()? {
        let total = e.dim().add(f.dim());
        let image = quantum_integrate(&alg.mul(&alg.atom(&e), &alg.atom(&f))?, quiver).coeff(&total);
        for &q in fields {
            let aut = |c: &IsoClass| -> Result<BigInt> {
                Ok(BigInt::from(
                    model.representative(c, q)?.count_automorphisms(quiver, model.budget())?,
                ))
            };
            let mut brute = BigRational::from_integer(BigInt::from(0));
            let aut_ef = aut(&e)? * aut(&f)?;
            for g in alg.isoclasses(&total)? {
                let n = oracle::hall_number(model, &e, &f, &g, q)?;
                if n > 0 {
                    brute += BigRational::new(BigInt::from(n) * &aut_ef, aut(&g)?);
                }
            }
            let motivic = image.specialize_at(i64::from(q))?;
            r.check(&e, [&f], &motivic.to_string(), &brute.to_string());
        }
    }
    Ok(r)
}
