//! Exact coefficients: Laurent polynomials in δ and the marker monoid
//! `H = ⟨δ^{±1}, ξ, θ | ξ² = δ², ξθ = δθ, θ² = δ²θ⟩`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

/// Anything that can serve as a coefficient ring.
pub trait Coefficient:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Mul<Output = T> + Neg<Output = T> + Sub<Output = T>
{
}

/// Element of `R[δ, δ^{-1}]`, stored sparsely; no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Coefficient> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    /// `c·δ^k`
    pub fn monomial(c: T, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// `δ^k`
    pub fn delta_pow(k: i32) -> Self {
        Self::monomial(T::one(), k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, T)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i32, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> T {
        self.terms.get(&k).cloned().unwrap_or_else(T::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiplication by `δ^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `Some(k)` when the element is exactly `δ^k`.
    pub fn as_delta_power(&self) -> Option<i32> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        c.is_one().then_some(*k)
    }

    /// Evaluates at `δ = value` in a field `F`, lifting coefficients with `lift`.
    pub fn evaluate_with<F, L>(&self, value: &F, lift: L) -> F
    where
        F: Clone + num_traits::Num,
        L: Fn(&T) -> F,
    {
        let mut acc = F::zero();
        for (k, c) in &self.terms {
            acc = acc + lift(c) * pow_signed(value, *k);
        }
        acc
    }
}

impl<T: Coefficient> LaurentPoly<T> {
    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

/// `value^k` for possibly negative `k`.
pub fn pow_signed<F: Clone + num_traits::Num>(value: &F, k: i32) -> F {
    let mut p = F::one();
    for _ in 0..k.unsigned_abs() {
        p = p * value.clone();
    }
    if k < 0 {
        F::one() / p
    } else {
        p
    }
}

impl<T: Coefficient> Add for LaurentPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<T: Coefficient> AddAssign for LaurentPoly<T> {
    fn add_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl<T: Coefficient> Neg for LaurentPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<T: Coefficient> Sub for LaurentPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Coefficient> Mul for LaurentPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for LaurentPoly<T>
where
    T: PartialOrd,
{
    /// Ascending exponents, e.g. `-1 + 2*d^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let negative = *c < T::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let power = match *k {
                0 => String::new(),
                1 => "d".to_string(),
                k => format!("d^{k}"),
            };
            if power.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly<BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            match c.to_i64() {
                Some(v) => m.serialize_entry(&k.to_string(), &v)?,
                None => m.serialize_entry(&k.to_string(), &c.to_string())?,
            }
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly<BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly<BigInt>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a map from exponent strings to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = map.next_entry::<String, serde_json::Value>()? {
                    let e: i32 = k.parse().map_err(de::Error::custom)?;
                    let c: BigInt = match v {
                        serde_json::Value::Number(num) => num
                            .as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| de::Error::custom("coefficient is not an integer"))?,
                        serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                        _ => return Err(de::Error::custom("coefficient must be an integer")),
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        d.deserialize_map(V)
    }
}

/// The three δ-classes of `H`: `1`, `ξ`, `θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Marker {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "xi")]
    Xi,
    #[serde(rename = "theta")]
    Theta,
}

impl Marker {
    pub const ALL: [Marker; 3] = [Marker::One, Marker::Xi, Marker::Theta];

    /// Product in `H`, returned as `(marker, k)` meaning `δ^k · marker`.
    pub fn mul(self, other: Marker) -> (Marker, i32) {
        use Marker::*;
        match (self, other) {
            (One, m) | (m, One) => (m, 0),
            (Xi, Xi) => (One, 2),
            (Xi, Theta) | (Theta, Xi) => (Theta, 1),
            (Theta, Theta) => (Theta, 2),
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Marker::One => "1",
            Marker::Xi => "xi",
            Marker::Theta => "theta",
        })
    }
}

/// `marker_mul` in free-function form.
pub fn marker_mul(a: Marker, b: Marker) -> (Marker, i32) {
    a.mul(b)
}

pub fn laurent_mul<T: Coefficient>(a: &LaurentPoly<T>, b: &LaurentPoly<T>) -> LaurentPoly<T> {
    a.mul_ref(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Laurent;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> Laurent {
        Laurent::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    #[test]
    fn laurent_examples() {
        assert_eq!(laurent_mul(&lp(&[(1, 1)]), &lp(&[(-1, 1)])), Laurent::one());
        let prod = laurent_mul(&lp(&[(1, 1), (0, 1)]), &lp(&[(1, 1), (0, -1)]));
        assert_eq!(prod, lp(&[(2, 1), (0, -1)]));
        assert_eq!(laurent_mul(&lp(&[(2, 1)]), &lp(&[(-5, 3)])), lp(&[(-3, 3)]));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = lp(&[(1, 2)]) + lp(&[(1, -2)]);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn text_form() {
        assert_eq!(lp(&[(3, 2), (0, -1)]).to_string(), "-1 + 2*d^3");
        assert_eq!(lp(&[(1, 1)]).to_string(), "d");
        assert_eq!(lp(&[(-1, -1), (2, 1)]).to_string(), "-d^-1 + d^2");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let p = lp(&[(0, -1), (3, 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"0":-1,"3":2}"#);
        let back: Laurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let big = Laurent::monomial(BigInt::from(10).pow(30), 1);
        let back: Laurent = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn generic_coefficients() {
        let p: LaurentPoly<i64> = LaurentPoly::from_terms([(1, 2), (-1, 3)]);
        assert_eq!(p.clone() * LaurentPoly::delta_pow(1), LaurentPoly::from_terms([(2, 2), (0, 3)]));
        let v = p.evaluate_with(&BigRational::from_integer(3.into()), |c| BigRational::from_integer((*c).into()));
        assert_eq!(v, BigRational::new(7.into(), 1.into()));
        let x = p.evaluate_with(&2.0f64, |c| *c as f64);
        assert!((x - 5.5).abs() < 1e-12);
    }

    #[test]
    fn marker_table() {
        use Marker::*;
        assert_eq!(marker_mul(Xi, Xi), (One, 2));
        assert_eq!(marker_mul(Xi, Theta), (Theta, 1));
        assert_eq!(marker_mul(Theta, Theta), (Theta, 2));
        assert_eq!(marker_mul(One, Theta), (Theta, 0));
    }

    #[test]
    fn marker_associativity() {
        for a in Marker::ALL {
            for b in Marker::ALL {
                for c in Marker::ALL {
                    let (ab, k1) = a.mul(b);
                    let (abc, k2) = ab.mul(c);
                    let (bc, k3) = b.mul(c);
                    let (abc2, k4) = a.mul(bc);
                    assert_eq!((abc, k1 + k2), (abc2, k3 + k4), "{a} {b} {c}");
                    assert_eq!(a.mul(b), b.mul(a));
                }
            }
        }
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec((-4i32..5, -20i64..20), 0..5).prop_map(|v| lp(&v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
            prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
            prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
