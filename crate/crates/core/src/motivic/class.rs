use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::cyclotomic;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// An element of `Z[L, L^{-1}, (L^i - 1)^{-1} : i >= 1]`.
///
/// The value is `num / prod_i (L^i - 1)^{den[i]}`. There is no canonical factored form:
/// equality is decided by cross-multiplication. Construction strips common
/// `(L^i - 1)` factors where that is exact, which keeps printed classes readable.
#[derive(Clone)]
pub struct MotivicClass {
    num: LaurentPoly,
    den: BTreeMap<u32, u32>,
}

impl MotivicClass {
    pub fn new(num: LaurentPoly, den: BTreeMap<u32, u32>) -> Result<Self> {
        if den.contains_key(&0) {
            return Err(Error::InvalidArgument(
                "denominator factor index must be >= 1".into(),
            ));
        }
        let mut c = Self { num, den };
        c.normalize();
        Ok(c)
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(n))
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        Self::from_poly(LaurentPoly::var())
    }

    /// `L^k` for any integer `k`.
    pub fn lefschetz_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(k, 1))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `1 / (L^i - 1)^m`.
    pub fn inv_l_pow_minus_one(i: u32, m: u32) -> Self {
        assert!(i >= 1, "factor index must be positive");
        let mut den = BTreeMap::new();
        if m > 0 {
            den.insert(i, m);
        }
        Self {
            num: LaurentPoly::one(),
            den,
        }
    }

    /// Class of `GL_d`: `L^{d(d-1)/2} * prod_{k=1..d} (L^k - 1)`.
    pub fn gl_class(d: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::InvalidArgument(format!(
                "GL_d requires d >= 1, got {d}"
            )));
        }
        let mut p = LaurentPoly::monomial(d * (d - 1) / 2, 1);
        for k in 1..=d as u32 {
            p = &p * &LaurentPoly::x_pow_minus_one(k);
        }
        Ok(Self::from_poly(p))
    }

    /// Class of projective `n`-space: `1 + L + ... + L^n`.
    pub fn projective_class(n: u32) -> Self {
        Self::from_poly(LaurentPoly::from_terms((0..=i64::from(n)).map(|e| (e, 1))))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Multiplicities `i -> m_i` of the `(L^i - 1)` denominator factors.
    pub fn denominator(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn den_product(&self) -> LaurentPoly {
        den_product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// The class as a Laurent polynomial, if it is one.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_empty() {
            return Some(self.num.clone());
        }
        self.num.div_exact(&self.den_product())
    }

    /// Membership in `Z[L, L^{-1}]`.
    pub fn is_polynomial_class(&self) -> bool {
        self.to_laurent().is_some()
    }

    /// Evaluates at `L = 1`. Only defined on polynomial classes.
    pub fn euler_characteristic(&self) -> Result<BigInt> {
        self.to_laurent()
            .map(|p| p.eval_one())
            .ok_or_else(|| Error::NotRegular(self.to_string()))
    }

    /// Substitutes `L := q` and evaluates exactly.
    pub fn specialize_at(&self, q: i64) -> Result<BigRational> {
        if (-1..=1).contains(&q) {
            return Err(Error::InvalidArgument(format!(
                "cannot specialize at L = {q}: pole of L^-1 or (L^i - 1)^-1"
            )));
        }
        let qr = BigRational::from_integer(BigInt::from(q));
        let num = self.num.eval(&qr);
        let den = self.den_product().eval(&qr);
        Ok(num / den)
    }

    /// Substitutes `L := t^2`.
    pub fn poincare_polynomial(&self) -> PoincareFunction {
        match self.to_laurent() {
            Some(p) => PoincareFunction {
                num: p.substitute_power(2),
                den: BTreeMap::new(),
            },
            None => PoincareFunction {
                num: self.num.substitute_power(2),
                den: self.den.clone(),
            },
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self / divisor`, provided the quotient stays inside the ring.
    pub fn exact_divide(&self, divisor: &MotivicClass) -> Result<MotivicClass> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = &self.num * &divisor.den_product();
        let mut den = self.den.clone();

        let (shift, dense) = divisor.num.to_dense();
        let mut rest = LaurentPoly::from_terms(
            dense
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        );
        num = num.shift(-shift);

        // Peel every cyclotomic factor off the divisor; each one is absorbed by a
        // (L^n - 1) denominator with the cofactor moved into the numerator.
        let mut n = 1u32;
        loop {
            let deg = rest.max_exp().unwrap_or(0);
            if deg == 0 || u64::from(n) > 2 * (deg as u64).pow(2) + 2 {
                break;
            }
            let phi = cyclotomic(n);
            while let Some(q) = rest.div_exact(&phi) {
                rest = q;
                let cofactor = LaurentPoly::x_pow_minus_one(n)
                    .div_exact(&phi)
                    .expect("cyclotomic divides x^n - 1");
                num = &num * &cofactor;
                *den.entry(n).or_insert(0) += 1;
                if rest.max_exp().unwrap_or(0) == 0 {
                    break;
                }
            }
            n += 1;
        }

        if rest.is_unit() {
            num = num.scale(&rest.coeff(0));
        } else {
            num = num.div_exact(&rest).ok_or_else(|| {
                Error::QuotientOutsideRing(format!(
                    "({self}) / ({divisor}) needs the denominator factor {rest}"
                ))
            })?;
        }
        MotivicClass::new(num, den)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        self.den.retain(|_, m| *m > 0);
        loop {
            let mut changed = false;
            let keys: Vec<u32> = self.den.keys().rev().copied().collect();
            for i in &keys {
                let f = LaurentPoly::x_pow_minus_one(*i);
                while self.den.get(i).copied().unwrap_or(0) > 0 {
                    match self.num.div_exact(&f) {
                        Some(q) => {
                            self.num = q;
                            *self.den.get_mut(i).unwrap() -= 1;
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            self.den.retain(|_, m| *m > 0);
            // (L^i - 1) = (L^j - 1)(1 + L^j + ... + L^{i-j}) for j | i.
            'outer: for i in self.den.keys().rev().copied().collect::<Vec<_>>() {
                for j in (1..i).rev().filter(|j| i % j == 0) {
                    let cof = LaurentPoly::from_terms(
                        (0..i / j).map(|k| (i64::from(k * j), 1)),
                    );
                    if let Some(q) = self.num.div_exact(&cof) {
                        self.num = q;
                        *self.den.get_mut(&i).unwrap() -= 1;
                        *self.den.entry(j).or_insert(0) += 1;
                        changed = true;
                        break 'outer;
                    }
                }
            }
            self.den.retain(|_, m| *m > 0);
            if !changed {
                break;
            }
        }
    }
}

pub(crate) fn den_product(den: &BTreeMap<u32, u32>) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (i, m) in den {
        p = &p * &LaurentPoly::x_pow_minus_one(*i).pow(*m);
    }
    p
}

/// Common denominator of two multiplicity maps: componentwise max.
fn den_join(a: &BTreeMap<u32, u32>, b: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
    let mut out = a.clone();
    for (i, m) in b {
        let e = out.entry(*i).or_insert(0);
        *e = (*e).max(*m);
    }
    out
}

fn den_cofactor(full: &BTreeMap<u32, u32>, part: &BTreeMap<u32, u32>) -> LaurentPoly {
    let diff: BTreeMap<u32, u32> = full
        .iter()
        .map(|(i, m)| (*i, m - part.get(i).copied().unwrap_or(0)))
        .collect();
    den_product(&diff)
}

impl PartialEq for MotivicClass {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den_product() == &other.num * &self.den_product()
    }
}

impl Eq for MotivicClass {}

impl Default for MotivicClass {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for MotivicClass {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<LaurentPoly> for MotivicClass {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &MotivicClass {
    type Output = MotivicClass;
    fn add(self, rhs: &MotivicClass) -> MotivicClass {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let den = den_join(&self.den, &rhs.den);
        let num = &(&self.num * &den_cofactor(&den, &self.den))
            + &(&rhs.num * &den_cofactor(&den, &rhs.den));
        let mut c = MotivicClass { num, den };
        c.normalize();
        c
    }
}

impl Sub for &MotivicClass {
    type Output = MotivicClass;
    fn sub(self, rhs: &MotivicClass) -> MotivicClass {
        self + &(-rhs)
    }
}

impl Mul for &MotivicClass {
    type Output = MotivicClass;
    fn mul(self, rhs: &MotivicClass) -> MotivicClass {
        if self.is_zero() || rhs.is_zero() {
            return MotivicClass::zero();
        }
        let mut den = self.den.clone();
        for (i, m) in &rhs.den {
            *den.entry(*i).or_insert(0) += m;
        }
        let mut c = MotivicClass {
            num: &self.num * &rhs.num,
            den,
        };
        c.normalize();
        c
    }
}

impl Neg for &MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        MotivicClass {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MotivicClass {
            type Output = MotivicClass;
            fn $m(self, rhs: MotivicClass) -> MotivicClass {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        -&self
    }
}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (k, (i, m)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *i == 1 {
                write!(f, "(L - 1)")?;
            } else {
                write!(f, "(L^{i} - 1)")?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `L := t^2` image of a class: `num(t) / prod_i (t^{2i} - 1)^{den[i]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoincareFunction {
    pub num: LaurentPoly,
    pub den: BTreeMap<u32, u32>,
}

impl PoincareFunction {
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let den: BigRational = self
            .den
            .iter()
            .map(|(i, m)| {
                let v = LaurentPoly::x_pow_minus_one(2 * i).eval(t);
                num_traits::pow(v, *m as usize)
            })
            .fold(BigRational::one(), |a, b| a * b);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(t) / den)
    }
}

impl fmt::Display for PoincareFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return self.num.fmt_in(f, "t");
        }
        write!(f, "(")?;
        self.num.fmt_in(f, "t")?;
        write!(f, ")/(")?;
        for (k, (i, m)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "(t^{} - 1)", 2 * i)?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Serialize)]
struct ClassRepr {
    num: Vec<(i64, String)>,
    den: BTreeMap<u32, u32>,
}

impl Serialize for MotivicClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRepr {
            num: self.num.terms().map(|(e, c)| (e, c.to_string())).collect(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MotivicClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            num: Vec<(i64, String)>,
            den: BTreeMap<String, u32>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Input {
            Integer(i64),
            Repr(Repr),
        }
        let repr = match Input::deserialize(d)? {
            Input::Integer(n) => return Ok(MotivicClass::integer(n)),
            Input::Repr(r) => r,
        };
        let mut num = LaurentPoly::zero();
        for (e, c) in repr.num {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            num.add_term(e, c);
        }
        let den = repr
            .den
            .into_iter()
            .map(|(i, m)| {
                i.parse::<u32>()
                    .map(|i| (i, m))
                    .map_err(|_| D::Error::custom(format!("bad denominator index {i:?}")))
            })
            .collect::<std::result::Result<BTreeMap<_, _>, _>>()?;
        MotivicClass::new(num, den).map_err(D::Error::custom)
    }
}
