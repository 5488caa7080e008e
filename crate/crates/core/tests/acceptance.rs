//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.
//! Every comparison is exact; the time limits are part of each criterion.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use motivic_hall::hall::{HallAlgebra, HallElement, ScElement};
use motivic_hall::integration::{
    check_ext_symmetry, check_multiplicativity, integrate, quantum_integrate, verify_integration_homomorphism,
    verify_quantum_homomorphism, BilinearForm, Mode, PoissonTorusElement, Sign, WeightFunction,
};
use motivic_hall::motivic::{LaurentPoly, MotivicClass};
use motivic_hall::quiver::{interpolate_count_polynomial, IsoClass, Quiver, RepModel, Window};
use motivic_hall::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{a2_hall_number, class, dv, A2Class};

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn algebra(quiver: Quiver, window: u32) -> HallAlgebra {
    HallAlgebra::for_quiver(quiver, Window::MaxTotal(window)).expect("valid context")
}

fn s1() -> IsoClass {
    class(&[(&[1, 0], 1)], 2)
}
fn s2() -> IsoClass {
    class(&[(&[0, 1], 1)], 2)
}
fn p1() -> IsoClass {
    class(&[(&[1, 1], 1)], 2)
}

fn gl_formula() -> Outcome {
    let mut ok = 0;
    let mut bad = Vec::new();
    for d in 1..=4usize {
        for q in [2u64, 3, 5, 7] {
            let motivic = MotivicClass::gl_class(d as i64).unwrap().specialize_at(q as i64).unwrap();
            let brute = BigRational::from_integer(BigInt::from(common::gl_order(d, q)));
            if motivic == brute {
                ok += 1;
            } else {
                bad.push(format!("d={d} q={q}: {motivic} vs {brute}"));
            }
        }
    }
    outcome(ok == 16, format!("{ok}/16 exact matches {bad:?}"))
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..5) {
        p.add_term(rng.gen_range(-3..=4), BigInt::from(rng.gen_range(-6..=6)));
    }
    p
}

fn euler_guard() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let t = BigRational::from_integer(BigInt::from(-1));
    let (mut regular_ok, mut singular_ok, mut agree) = (0, 0, 0);
    for _ in 0..100 {
        // a polynomial class written over a cancelling denominator
        let p = random_laurent(&mut rng);
        let i = rng.gen_range(1..=3u32);
        let num = &p * &LaurentPoly::x_pow_minus_one(i);
        let c = MotivicClass::new(num, BTreeMap::from([(i, 1)])).unwrap();
        if let Ok(chi) = c.euler_characteristic() {
            if chi == p.eval_one() {
                regular_ok += 1;
            }
            if c.poincare_polynomial().eval(&t) == Some(BigRational::from_integer(chi)) {
                agree += 1;
            }
        }
    }
    for _ in 0..100 {
        let mut p = random_laurent(&mut rng);
        while p.eval_one() == BigInt::from(0) {
            p = &p + &LaurentPoly::one();
        }
        let den = BTreeMap::from([(rng.gen_range(1..=4u32), rng.gen_range(1..=2u32))]);
        let c = MotivicClass::new(p, den).unwrap();
        if matches!(c.euler_characteristic(), Err(Error::NotRegular(_))) {
            singular_ok += 1;
        }
    }
    outcome(
        regular_ok == 100 && singular_ok == 100 && agree == 100,
        format!("regular {regular_ok}/100, NotRegular {singular_ok}/100, chi = chi_t(-1) {agree}/100"),
    )
}

fn triples_agree(h: &HallAlgebra, atoms: &[IsoClass], max_total: u32) -> (usize, usize) {
    let (mut checked, mut ok) = (0, 0);
    for a in atoms {
        for b in atoms {
            for c in atoms {
                if a.dim().add(b.dim()).add(c.dim()).total() > max_total {
                    continue;
                }
                let (x, y, z) = (h.atom(a), h.atom(b), h.atom(c));
                let left = h.mul_n(&[x.clone(), y.clone(), z.clone()]).unwrap();
                let right = h.mul(&x, &h.mul(&y, &z).unwrap()).unwrap();
                checked += 1;
                if left == right {
                    ok += 1;
                }
            }
        }
    }
    (checked, ok)
}

fn associativity() -> Outcome {
    let a2 = algebra(Quiver::linear(2), 6);
    let (c1, o1) = triples_agree(&a2, &[s1(), s2(), p1()], 6);
    let a2_small = algebra(Quiver::linear(2), 3);
    let atoms = a2_small.window_classes().unwrap();
    let (c2, o2) = triples_agree(&a2_small, &atoms, 3);
    let a3 = algebra(Quiver::linear(3), 3);
    let atoms = a3.window_classes().unwrap();
    let (c3, o3) = triples_agree(&a3, &atoms, 3);
    outcome(
        c1 == 27 && o1 == c1 && o2 == c2 && o3 == c3 && c2 > 0 && c3 > 0,
        format!("A2 {{S1,S2,P1}}^3: {o1}/{c1}; A2 atoms dim<=3: {o2}/{c2}; A3 atoms dim<=3: {o3}/{c3}"),
    )
}

fn hall_numbers() -> Outcome {
    let h = algebra(Quiver::linear(2), 4);
    let mut classes = Vec::new();
    for d in h.window().dims(h.quiver()) {
        classes.extend(h.isoclasses(&d).unwrap());
    }
    let (mut checked, mut ok) = (0, 0);
    let mut bad = Vec::new();
    for e in &classes {
        for f in &classes {
            let total = e.dim().add(f.dim());
            if total.total() > 4 {
                continue;
            }
            let product = h
                .to_delta_coeffs(&h.mul(&h.delta(e).unwrap(), &h.delta(f).unwrap()).unwrap())
                .unwrap();
            for g in h.isoclasses(&total).unwrap() {
                for q in [2u64, 3] {
                    let motivic = product.coeff(&g).specialize_at(q as i64).unwrap();
                    let brute = a2_hall_number(A2Class::from_iso(e), A2Class::from_iso(f), A2Class::from_iso(&g), q);
                    checked += 1;
                    if motivic == BigRational::from_integer(BigInt::from(brute)) {
                        ok += 1;
                    } else {
                        bad.push(format!("g^{g}_{{{e},{f}}}({q}): {motivic} vs {brute}"));
                    }
                }
            }
        }
    }
    // δ_{S2} * δ_{S1} = δ_{S1⊕S2} + δ_{P1} and δ_{S1} * δ_{S2} = δ_{S1⊕S2}
    let split = s1().direct_sum(&s2());
    let d = |c: &IsoClass| h.delta(c).unwrap();
    let anchor = h.mul(&d(&s2()), &d(&s1())).unwrap() == &d(&split) + &d(&p1())
        && h.mul(&d(&s1()), &d(&s2())).unwrap() == d(&split);
    outcome(
        ok == checked && checked > 0 && anchor,
        format!("{ok}/{checked} Hall numbers at q in {{2,3}}, anchor {anchor} {bad:?}"),
    )
}

fn random_regular(h: &HallAlgebra, rng: &mut ChaCha8Rng, classes: &[IsoClass]) -> HallElement {
    let mut x = HallElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let e = classes[rng.gen_range(0..classes.len())].clone();
        x.add_term(e, MotivicClass::from_poly(random_laurent(rng)));
    }
    let _ = h;
    x
}

fn regular_subalgebra() -> Outcome {
    let h = algebra(Quiver::linear(2), 3);
    let classes = h.window_classes().unwrap();
    let mut pairs: Vec<(HallElement, HallElement)> = h
        .window_pairs()
        .unwrap()
        .into_iter()
        .map(|(e, f)| (h.atom(&e), h.atom(&f)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let small: Vec<IsoClass> = classes.iter().filter(|c| c.dim().total() == 1).cloned().collect();
    let mid: Vec<IsoClass> = classes.iter().filter(|c| c.dim().total() == 2).cloned().collect();
    for _ in 0..30 {
        pairs.push((random_regular(&h, &mut rng, &small), random_regular(&h, &mut rng, &mid)));
    }
    let (mut regular, mut commute, mut convolution) = (0, 0, 0);
    for (x, y) in &pairs {
        let xy = h.mul(x, y).unwrap();
        let br = h.poisson_bracket(x, y).unwrap();
        if HallAlgebra::is_regular(&xy) && HallAlgebra::is_regular(&br) {
            regular += 1;
        }
        if HallAlgebra::semiclassical(&h.commutator(x, y).unwrap()).unwrap().is_zero() {
            commute += 1;
        }
        let (u, v) = (HallAlgebra::semiclassical(x).unwrap(), HallAlgebra::semiclassical(y).unwrap());
        if HallAlgebra::semiclassical(&xy).unwrap() == u.direct_sum_convolution(&v) {
            convolution += 1;
        }
    }
    let n = pairs.len();
    outcome(
        regular == n && commute == n && convolution == n,
        format!("{n} regular pairs: closure {regular}, sc commutator zero {commute}, direct-sum convolution {convolution}"),
    )
}

fn integration_homomorphism() -> Outcome {
    let h = algebra(Quiver::linear(2), 3);
    let mut parts = Vec::new();
    let mut all = true;
    for (w, s) in [(WeightFunction::ConstantOne, Sign::Plus), (WeightFunction::Behrend, Sign::Minus)] {
        let m = check_multiplicativity(&h, &w, s).unwrap();
        let e = check_ext_symmetry(&h, &w).unwrap();
        let a = verify_integration_homomorphism(&h, &w, s, Mode::Algebra).unwrap();
        let p = verify_integration_homomorphism(&h, &w, s, Mode::Poisson).unwrap();
        all &= m.passed() && e.passed() && a.passed() && p.passed() && a.pairs_checked > 0;
        parts.push(format!(
            "{}/{s}: mult {}, ext {}, algebra {}/{}, poisson {}/{}",
            w.name(),
            m.passed(),
            e.passed(),
            a.pairs_checked - a.violations.len(),
            a.pairs_checked,
            p.pairs_checked - p.violations.len(),
            p.pairs_checked
        ));
    }
    let q = h.quiver().clone();
    let br = h
        .sc_bracket(&ScElement::term(s2(), 1), &ScElement::term(s1(), 1))
        .unwrap();
    let lhs = integrate(&br, &WeightFunction::ConstantOne, Sign::Plus, &q);
    let mono = |d: &[u32]| PoissonTorusElement::monomial(Sign::Plus, BilinearForm::skew(&q), dv(d), 1);
    let anchor = lhs == mono(&[1, 1]) && mono(&[0, 1]).torus_bracket(&mono(&[1, 0])).unwrap() == mono(&[1, 1]);
    outcome(all && anchor, format!("{}; anchor {anchor}", parts.join("; ")))
}

fn negative_controls() -> Outcome {
    let h = algebra(Quiver::linear(2), 3);
    let m = check_multiplicativity(&h, &WeightFunction::Behrend, Sign::Plus).unwrap();
    let e1 = serde_json::to_value(s1()).unwrap();
    let e2 = serde_json::to_value(s2()).unwrap();
    let flagged = m.violations.iter().any(|v| v.e == e1 && v.f == e2);
    let bumped = WeightFunction::Custom {
        values: BTreeMap::from([(p1(), 5)]),
        default: 1,
    };
    let s = check_ext_symmetry(&h, &bumped).unwrap();
    let ext_flagged = !s.passed();
    outcome(
        flagged && ext_flagged,
        format!(
            "behrend/+1 multiplicativity violations {} (S1,S2 flagged {flagged}); P1-bumped ext-symmetry violations {}",
            m.violations.len(),
            s.violations.len()
        ),
    )
}

fn quantum() -> Outcome {
    let h = algebra(Quiver::linear(2), 3);
    let r = verify_quantum_homomorphism(&h).unwrap();
    let q = h.quiver().clone();
    let lhs = quantum_integrate(&h.mul(&h.atom(&s2()), &h.atom(&s1())).unwrap(), &q);
    let rhs = quantum_integrate(&h.atom(&s2()), &q)
        .mul(&quantum_integrate(&h.atom(&s1()), &q))
        .unwrap();
    let l = MotivicClass::lefschetz();
    let anchor = lhs == rhs && lhs.coeff(&dv(&[1, 1])) == l && lhs.coeffs().len() == 1;
    outcome(
        r.passed() && anchor,
        format!(
            "{}/{} window pairs, anchor L*x^(1,1) {anchor}",
            r.pairs_checked - r.violations.len(),
            r.pairs_checked
        ),
    )
}

fn interpolation() -> Outcome {
    let h = algebra(Quiver::linear(2), 4);
    let model: &RepModel = h.model();
    let rq = model.reference_q();
    let (mut strata, mut verified) = (0, 0);
    let mut corrupted_caught = true;
    for (e, f) in h.window_pairs().unwrap() {
        let d1 = model.ext1_dim(&f, &e, rq).unwrap();
        if d1 == 0 {
            continue;
        }
        let polys = h.extension_strata(&f, &e, d1).unwrap();
        let withheld = h.primes()[d1 + 2];
        let counts = model.count_extension_classes(&f, &e, withheld).unwrap();
        for (g, poly) in &polys {
            strata += 1;
            let predicted = poly.eval(&BigRational::from_integer(BigInt::from(withheld)));
            let actual = BigRational::from_integer(BigInt::from(counts.get(g).copied().unwrap_or(0)));
            if predicted == actual {
                verified += 1;
            }
            // the same samples with one count bumped by one
            let mut samples: Vec<(i64, BigInt)> = h.primes()[..d1 + 2]
                .iter()
                .map(|&q| {
                    let c = model.count_extension_classes(&f, &e, q).unwrap();
                    (i64::from(q), BigInt::from(c.get(g).copied().unwrap_or(0)))
                })
                .collect();
            let last = samples.len() - 1;
            samples[last].1 += 1;
            corrupted_caught &= matches!(
                interpolate_count_polynomial(&samples, d1),
                Err(Error::InterpolationMismatch(_))
            );
        }
    }
    outcome(
        strata > 0 && verified == strata && corrupted_caught,
        format!("{verified}/{strata} strata verified at a withheld field; corrupted samples rejected {corrupted_caught}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 GL-class formula", Duration::from_secs(10), gl_formula),
        ("2 Euler-characteristic guard", Duration::from_secs(5), euler_guard),
        ("3 associativity", Duration::from_secs(60), associativity),
        ("4 Hall-number oracle", Duration::from_secs(120), hall_numbers),
        ("5 regular subalgebra and semi-classical limit", Duration::from_secs(60), regular_subalgebra),
        ("6 integration homomorphism", Duration::from_secs(120), integration_homomorphism),
        ("7 negative controls", Duration::from_secs(30), negative_controls),
        ("8 quantum integration", Duration::from_secs(30), quantum),
        ("9 interpolation soundness", Duration::from_secs(10), interpolation),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = out.passed && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {name}: {} [exact; {:.2}s of {}s]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
