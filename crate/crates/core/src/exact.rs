//! Exact nonzero complex numbers of the form `r · e^{2πi θ}` with `r` a
//! positive rational and `θ` rational, plus formal power products of named
//! symbols. Both form multiplicative groups; nothing here touches floats.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::{superscript, Style};

/// A commutative group written multiplicatively.
pub trait Multiplicative: Clone + PartialEq {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;

    fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// `pow` for exponents that may not fit in an `i64`.
    fn pow_big(&self, n: &BigInt) -> Self {
        match i64::try_from(n) {
            Ok(n) => self.pow(n),
            Err(_) => {
                let (q, r) = n.div_mod_floor(&BigInt::from(i64::MAX));
                self.pow(i64::MAX)
                    .pow_big(&q)
                    .mul(&self.pow(i64::try_from(r).expect("remainder fits")))
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseUnitError {
    #[error("zero is not invertible")]
    Zero,
    #[error("cannot parse `{0}` as an exact nonzero number")]
    Syntax(String),
}

/// Exact element of `C^x` with rational modulus and rational angle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    modulus: BigRational,
    /// Angle as a fraction of a full turn, kept in `[0, 1)`.
    turn: Ratio<i64>,
}

fn reduce_turn(t: Ratio<i64>) -> Ratio<i64> {
    let f = t - t.floor();
    if f < Ratio::zero() {
        f + Ratio::one()
    } else {
        f
    }
}

impl Unit {
    pub fn rational(q: BigRational) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        let turn = if q.is_negative() {
            Ratio::new(1, 2)
        } else {
            Ratio::zero()
        };
        Some(Self { modulus: q.abs(), turn })
    }

    pub fn integer(n: i64) -> Option<Self> {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// `exp(2πi · power / order)`.
    pub fn root_of_unity(order: u32, power: i64) -> Self {
        assert!(order > 0, "order must be positive");
        Self {
            modulus: BigRational::one(),
            turn: reduce_turn(Ratio::new(power, i64::from(order))),
        }
    }

    pub fn modulus(&self) -> &BigRational {
        &self.modulus
    }

    /// The angle as a fraction of a full turn, in `[0, 1)`.
    pub fn turn(&self) -> Ratio<i64> {
        self.turn
    }

    /// The value as a signed rational when it is real.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.turn.is_zero() {
            Some(self.modulus.clone())
        } else if self.turn == Ratio::new(1, 2) {
            Some(-self.modulus.clone())
        } else {
            None
        }
    }

    /// Order in `C^x` if finite.
    pub fn order(&self) -> Option<u32> {
        self.modulus.is_one().then(|| *self.turn.denom() as u32)
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.modulus.is_one()
    }

    /// `(order, power)` of the angle part with `order` minimal.
    fn root_parts(&self) -> (i64, i64) {
        (*self.turn.denom(), *self.turn.numer())
    }

    pub fn render(&self, style: Style) -> String {
        if let Some(q) = self.as_rational() {
            return q.to_string();
        }
        let (order, power) = self.root_parts();
        let root = match style {
            Style::Unicode => {
                let mut s = format!("ζ{}", crate::notation::subscript(&order.to_string()));
                if power != 1 {
                    s.push_str(&superscript(&power.to_string()));
                }
                s
            }
            Style::Ascii => {
                if power == 1 {
                    format!("zeta{order}")
                } else {
                    format!("zeta{order}^{power}")
                }
            }
        };
        if self.modulus.is_one() {
            root
        } else {
            let dot = if style == Style::Unicode { "·" } else { "*" };
            format!("{}{dot}{root}", self.modulus)
        }
    }
}

impl Multiplicative for Unit {
    fn one() -> Self {
        Self {
            modulus: BigRational::one(),
            turn: Ratio::zero(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            modulus: &self.modulus * &other.modulus,
            turn: reduce_turn(self.turn + other.turn),
        }
    }

    fn inv(&self) -> Self {
        Self {
            modulus: self.modulus.recip(),
            turn: reduce_turn(-self.turn),
        }
    }

    fn pow(&self, n: i64) -> Self {
        let e = i32::try_from(n.unsigned_abs()).expect("exponent exceeds i32");
        let m = if n < 0 {
            self.modulus.recip().pow(e)
        } else {
            self.modulus.pow(e)
        };
        let (order, power) = self.root_parts();
        let p = (i128::from(power) * i128::from(n)).rem_euclid(i128::from(order)) as i64;
        Self {
            modulus: m,
            turn: Ratio::new(p, order),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Unicode))
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ParseUnitError> {
    let err = || ParseUnitError::Syntax(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

fn parse_root(s: &str) -> Option<Result<Unit, ParseUnitError>> {
    let body = s.strip_prefix("zeta").or_else(|| s.strip_prefix('ζ'))?;
    let err = || ParseUnitError::Syntax(s.to_string());
    let (order, power) = match body.split_once('^') {
        Some((o, p)) => (o, p),
        None => (body, "1"),
    };
    let parsed = order
        .parse::<u32>()
        .ok()
        .filter(|&o| o > 0)
        .zip(power.parse::<i64>().ok())
        .map(|(o, p)| Unit::root_of_unity(o, p))
        .ok_or_else(err);
    Some(parsed)
}

/// Accepts `3`, `-27/2`, `zeta6`, `zeta6^5`, `ζ6^5` and `2*zeta6^5`.
impl FromStr for Unit {
    type Err = ParseUnitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut acc = Unit::one();
        for factor in s.split(['*', '·']) {
            let factor = factor.trim();
            let u = match parse_root(factor) {
                Some(r) => r?,
                None => {
                    let q = parse_rational(factor)?;
                    Unit::rational(q).ok_or(ParseUnitError::Zero)?
                }
            };
            acc = acc.mul(&u);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct RootRepr {
    order: u32,
    power: i64,
}

#[derive(Serialize, Deserialize)]
struct UnitRepr {
    rational: String,
    root_of_unity: Option<RootRepr>,
}

impl Serialize for Unit {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let repr = match self.as_rational() {
            Some(q) => UnitRepr {
                rational: q.to_string(),
                root_of_unity: None,
            },
            None => {
                let (order, power) = self.root_parts();
                UnitRepr {
                    rational: self.modulus.to_string(),
                    root_of_unity: Some(RootRepr {
                        order: order as u32,
                        power,
                    }),
                }
            }
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Unit {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = UnitRepr::deserialize(de)?;
        let q = parse_rational(&repr.rational).map_err(serde::de::Error::custom)?;
        let base = Unit::rational(q).ok_or_else(|| serde::de::Error::custom(ParseUnitError::Zero))?;
        Ok(match repr.root_of_unity {
            Some(r) if r.order > 0 => base.mul(&Unit::root_of_unity(r.order, r.power)),
            Some(_) => return Err(serde::de::Error::custom("root of unity of order 0")),
            None => base,
        })
    }
}

/// Formal product `∏ base^exponent` over named symbols, such as `λ₁²⁴λ₂⁻⁴⁸`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PowerProduct {
    factors: BTreeMap<String, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    base: String,
    exponent: i64,
}

impl PowerProduct {
    pub fn symbol(name: &str) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert(name.to_string(), BigInt::one());
        Self { factors }
    }

    pub fn exponent(&self, name: &str) -> BigInt {
        self.factors.get(name).cloned().unwrap_or_default()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, &BigInt)> {
        self.factors.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Substitutes a value for every symbol.
    pub fn evaluate<T: Multiplicative>(&self, value: impl Fn(&str) -> T) -> T {
        self.factors
            .iter()
            .fold(T::one(), |acc, (name, e)| acc.mul(&value(name).pow_big(e)))
    }

    pub fn render(&self, style: Style) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(name, e)| {
                let base = style.name(name);
                if e.is_one() {
                    base
                } else {
                    match style {
                        Style::Unicode => format!("{base}{}", superscript(&e.to_string())),
                        Style::Ascii => format!("{base}^{e}"),
                    }
                }
            })
            .collect::<Vec<_>>()
            .join(if style == Style::Ascii { "*" } else { "" })
    }
}

impl Multiplicative for PowerProduct {
    fn one() -> Self {
        Self::default()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (k, v) in &other.factors {
            let e = factors.entry(k.clone()).or_default();
            *e += v;
            if e.is_zero() {
                factors.remove(k);
            }
        }
        Self { factors }
    }

    fn inv(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        Self {
            factors: self.factors.iter().map(|(k, v)| (k.clone(), v * n)).collect(),
        }
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Unicode))
    }
}

impl Serialize for PowerProduct {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<FactorRepr> = self
            .factors
            .iter()
            .map(|(k, e)| FactorRepr {
                base: k.clone(),
                exponent: i64::try_from(e).expect("exponent exceeds i64"),
            })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PowerProduct {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = Vec::<FactorRepr>::deserialize(de)?;
        Ok(v.into_iter().fold(PowerProduct::one(), |acc, f| {
            acc.mul(&PowerProduct::symbol(&f.base).pow(f.exponent))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Unit {
        Unit::ratio(n, d).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(2, 1).pow(2), q(4, 1));
        assert_eq!(q(3, 1).pow(3).mul(&q(2, 1).inv()), q(27, 2));
        assert_eq!(q(-1, 1).pow(2), Unit::one());
        assert_eq!(q(-2, 3).pow(-3), q(-27, 8));
        let z = Unit::root_of_unity(6, 1);
        assert_eq!(z.pow(6), Unit::one());
        assert_eq!(z.pow(3), q(-1, 1));
        assert_eq!(z.order(), Some(6));
    }

    #[test]
    fn parsing() {
        assert_eq!("27/2".parse::<Unit>().unwrap(), q(27, 2));
        assert_eq!("-3".parse::<Unit>().unwrap(), q(-3, 1));
        assert_eq!("zeta6^5".parse::<Unit>().unwrap(), Unit::root_of_unity(6, -1));
        assert_eq!("2*zeta6^3".parse::<Unit>().unwrap(), q(-2, 1));
        assert_eq!("0".parse::<Unit>(), Err(ParseUnitError::Zero));
        assert!("x".parse::<Unit>().is_err());
        assert!("1/0".parse::<Unit>().is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(q(27, 2).to_string(), "27/2");
        assert_eq!(q(-1, 1).to_string(), "-1");
        assert_eq!(Unit::root_of_unity(6, 5).to_string(), "ζ₆⁵");
        assert_eq!(
            Unit::root_of_unity(6, 5).mul(&q(2, 1)).render(Style::Ascii),
            "2*zeta6^5"
        );
        assert_eq!(Unit::root_of_unity(3, 1).render(Style::Ascii), "zeta3");
    }

    #[test]
    fn serde_round_trip() {
        for u in [q(27, 2), q(-5, 7), Unit::root_of_unity(6, 1).mul(&q(3, 4))] {
            let s = serde_json::to_string(&u).unwrap();
            assert_eq!(serde_json::from_str::<Unit>(&s).unwrap(), u);
        }
        let p = PowerProduct::symbol("lambda1")
            .pow(24)
            .mul(&PowerProduct::symbol("lambda2").pow(-48));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<PowerProduct>(&s).unwrap(), p);
        assert_eq!(p.to_string(), "λ₁²⁴λ₂⁻⁴⁸");
    }

    #[test]
    fn power_product_evaluates() {
        let p = PowerProduct::symbol("a").pow(2).mul(&PowerProduct::symbol("b").inv());
        let v = p.evaluate(|n| if n == "a" { q(3, 1) } else { q(2, 1) });
        assert_eq!(v, q(9, 2));
        assert_eq!(p.mul(&p.inv()), PowerProduct::one());
    }
}
