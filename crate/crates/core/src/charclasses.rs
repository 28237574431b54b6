//! Integral cohomology of `BSO(d)` for `d <= 4` in the degrees that
//! matter here:
//!
//! * `BSO(1)`: `Z` in degree 0
//! * `BSO(2)`: `Z[c]`, `|c| = 2`
//! * `BSO(3)`: `Z[W3, p1] / (2 W3)`
//! * `BSO(4)`: `Z[W3, e, p1] / (2 W3)`, `|W3| = 3`, `|e| = |p1| = 4`
//!
//! `W3` is the integral Bockstein of `w2`; here it is only a named 2-torsion
//! generator. The Thom module of `Σ^d MTSO(d)` is the same ring times a
//! degree-zero class `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::notation::Style;
use crate::spectra::{CohomologyEntry, NamedGenerator};

pub const MAX_DEGREE: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharClassError {
    #[error("no cohomology ring is modelled for BSO({0}); expected 1 to 4")]
    UnsupportedDimension(u8),
    #[error("{generator} is not a generator of H*(BSO({d}))")]
    IllegalGenerator { generator: Generator, d: u8 },
    #[error("cannot combine classes from BSO({left}) and BSO({right})")]
    AmbientMismatch { left: u8, right: u8 },
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("no restriction from BSO({from}) to BSO({to})")]
    InvalidRestriction { from: u8, to: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    C,
    W3,
    E,
    P1,
}

impl Generator {
    pub fn degree(self) -> u32 {
        match self {
            Generator::C => 2,
            Generator::W3 => 3,
            Generator::E | Generator::P1 => 4,
        }
    }

    pub fn torsion_order(self) -> Option<u32> {
        (self == Generator::W3).then_some(2)
    }

    pub fn ascii(self) -> &'static str {
        match self {
            Generator::C => "c",
            Generator::W3 => "W3",
            Generator::E => "e",
            Generator::P1 => "p1",
        }
    }

    /// Generators of `H*(BSO(d))`. `BSO(1)` is contractible.
    pub fn legal_for(d: u8) -> Result<&'static [Generator], CharClassError> {
        match d {
            1 => Ok(&[]),
            2 => Ok(&[Generator::C]),
            3 => Ok(&[Generator::W3, Generator::P1]),
            4 => Ok(&[Generator::W3, Generator::E, Generator::P1]),
            _ => Err(CharClassError::UnsupportedDimension(d)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Style::Unicode.name(self.ascii()))
    }
}

/// Monomial `W3^a e^b p1^c c^k`. The derived order compares exponents
/// lexicographically in that field order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub w3: u32,
    pub e: u32,
    pub p1: u32,
    pub c: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        let mut m = Self::one();
        *m.exponent_mut(g) = 1;
        m
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        match g {
            Generator::C => self.c,
            Generator::W3 => self.w3,
            Generator::E => self.e,
            Generator::P1 => self.p1,
        }
    }

    fn exponent_mut(&mut self, g: Generator) -> &mut u32 {
        match g {
            Generator::C => &mut self.c,
            Generator::W3 => &mut self.w3,
            Generator::E => &mut self.e,
            Generator::P1 => &mut self.p1,
        }
    }

    pub fn degree(&self) -> u32 {
        3 * self.w3 + 4 * (self.e + self.p1) + 2 * self.c
    }

    pub fn is_torsion(&self) -> bool {
        self.w3 > 0
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            w3: self.w3 + other.w3,
            e: self.e + other.e,
            p1: self.p1 + other.p1,
            c: self.c + other.c,
        }
    }

    fn is_legal(&self, d: u8) -> bool {
        let legal = Generator::legal_for(d).unwrap_or(&[]);
        [Generator::C, Generator::W3, Generator::E, Generator::P1]
            .into_iter()
            .all(|g| self.exponent(g) == 0 || legal.contains(&g))
    }

    /// ASCII name such as `W3e`, `c^2` or `1`.
    pub fn name(&self) -> String {
        let mut s = String::new();
        for g in [Generator::W3, Generator::E, Generator::P1, Generator::C] {
            match self.exponent(g) {
                0 => {}
                1 => s.push_str(g.ascii()),
                n => s.push_str(&format!("{}^{n}", g.ascii())),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Name of `self · u` in the Thom module: `u`, `cu`, `p1u`, ...
    pub fn thom_name(&self) -> String {
        if *self == Monomial::one() {
            "u".to_string()
        } else {
            format!("{}u", self.name())
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Style::Unicode.name(&self.name()))
    }
}

/// Element of `H*(BSO(d); Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    d: u8,
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElement {
    pub fn zero(d: u8) -> Result<Self, CharClassError> {
        Generator::legal_for(d)?;
        Ok(Self {
            d,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(d: u8, n: i64) -> Result<Self, CharClassError> {
        Self::from_terms(d, [(Monomial::one(), BigInt::from(n))])
    }

    pub fn generator(d: u8, g: Generator) -> Result<Self, CharClassError> {
        if !Generator::legal_for(d)?.contains(&g) {
            return Err(CharClassError::IllegalGenerator { generator: g, d });
        }
        Self::from_terms(d, [(Monomial::generator(g), BigInt::one())])
    }

    pub fn from_terms(d: u8, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Result<Self, CharClassError> {
        let legal = Generator::legal_for(d)?;
        let mut out = Self::zero(d)?;
        for (m, coeff) in terms {
            if !m.is_legal(d) {
                let generator = [Generator::C, Generator::W3, Generator::E, Generator::P1]
                    .into_iter()
                    .find(|g| m.exponent(*g) > 0 && !legal.contains(g))
                    .expect("illegal monomial has an illegal generator");
                return Err(CharClassError::IllegalGenerator { generator, d });
            }
            *out.terms.entry(m).or_default() += coeff;
        }
        out.normalize();
        Ok(out)
    }

    fn normalize(&mut self) {
        for (m, c) in self.terms.iter_mut() {
            if m.is_torsion() {
                *c = c.mod_floor(&BigInt::from(2));
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn ambient(&self) -> u8 {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|x| x == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= n;
        }
        out.normalize();
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CharClassError> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            *out.terms.entry(*m).or_default() += c;
        }
        out.normalize();
        Ok(out)
    }

    fn same_ambient(&self, other: &Self) -> Result<(), CharClassError> {
        if self.d != other.d {
            return Err(CharClassError::AmbientMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    pub fn render(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let name = style.name(&m.name());
            match (abs.is_one(), *m == Monomial::one()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&name),
                (false, true) => out.push_str(&abs.to_string()),
                (false, false) => out.push_str(&format!("{abs}{name}")),
            }
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Unicode))
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    /// Panics on mismatched ambient rings; see [`RingElement::try_add`].
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ambient mismatch")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        self.scale(&BigInt::from(-1))
    }
}

pub fn multiply(x: &RingElement, y: &RingElement) -> Result<RingElement, CharClassError> {
    x.same_ambient(y)?;
    let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (m, a) in &x.terms {
        for (n, b) in &y.terms {
            *terms.entry(m.times(n)).or_default() += a * b;
        }
    }
    let mut out = RingElement { d: x.d, terms };
    out.normalize();
    Ok(out)
}

/// Image of a single generator under restriction `BSO(to) -> BSO(from)` one step down.
fn restrict_generator_once(g: Generator, from: u8) -> RingElement {
    let to = from - 1;
    let build = |terms: Vec<(Monomial, i64)>| {
        RingElement::from_terms(to, terms.into_iter().map(|(m, c)| (m, BigInt::from(c)))).expect("legal image")
    };
    match (from, g) {
        (4, Generator::E) => build(vec![]),
        (4, g) => build(vec![(Monomial::generator(g), 1)]),
        (3, Generator::P1) => build(vec![(
            Monomial {
                c: 2,
                ..Monomial::one()
            },
            -1,
        )]),
        (3, Generator::W3) => build(vec![]),
        _ => unreachable!("generator {g} not legal in BSO({from})"),
    }
}

fn restrict_once(x: &RingElement) -> RingElement {
    let from = x.d;
    let to = from - 1;
    let mut acc = RingElement::zero(to).expect("valid target");
    for (m, coeff) in &x.terms {
        let mut term = RingElement::constant(to, 1).expect("valid target");
        for g in [Generator::W3, Generator::E, Generator::P1, Generator::C] {
            for _ in 0..m.exponent(g) {
                term = multiply(&term, &restrict_generator_once(g, from)).expect("same ambient");
            }
        }
        acc = &acc + &term.scale(coeff);
    }
    acc
}

/// Pulls a class back along `BSO(to_d) -> BSO(d)`. Shared generators keep
/// their names, `e -> 0`, and in `BSO(2)` one has `p1 -> -c^2`, `W3 -> 0`.
pub fn restrict_generators(x: &RingElement, to_d: u8) -> Result<RingElement, CharClassError> {
    if !(2..=3).contains(&to_d) || to_d >= x.d {
        return Err(CharClassError::InvalidRestriction { from: x.d, to: to_d });
    }
    let mut y = x.clone();
    while y.d > to_d {
        y = restrict_once(&y);
    }
    Ok(y)
}

/// Degree `k` part of `H*(BSO(d))` with its monomial basis, free monomials
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub group: FgAbGroup,
    pub basis: Vec<Monomial>,
}

fn monomials_of_degree(d: u8, k: u32) -> Result<Vec<Monomial>, CharClassError> {
    let legal = Generator::legal_for(d)?;
    let mut out = vec![Monomial::one()];
    for &g in legal {
        let deg = g.degree();
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=(k - m.degree()) / deg).map(move |n| {
                    let mut m = m;
                    *m.exponent_mut(g) = n;
                    m
                })
            })
            .collect();
    }
    out.retain(|m| m.degree() == k);
    // Descending lexicographic order puts e before p1 and W3e before W3p1.
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

pub fn graded_piece(d: u8, k: u32) -> Result<GradedPiece, CharClassError> {
    if k > MAX_DEGREE {
        return Err(CharClassError::DegreeTooLarge(k));
    }
    let monomials = monomials_of_degree(d, k)?;
    let (torsion, free): (Vec<Monomial>, Vec<Monomial>) = monomials.into_iter().partition(Monomial::is_torsion);
    let group = FgAbGroup::new(free.len(), std::iter::repeat_n(2, torsion.len()));
    let basis = free.into_iter().chain(torsion).collect();
    Ok(GradedPiece { group, basis })
}

/// Degree `k` part of `H*(Σ^d MTSO(d)) = H*(BSO(d)) · u`.
pub fn thom_module_piece(d: u8, k: u32) -> Result<CohomologyEntry, CharClassError> {
    let piece = graded_piece(d, k)?;
    let generators = piece
        .basis
        .iter()
        .map(|m| NamedGenerator {
            name: m.thom_name(),
            order: m.is_torsion().then_some(2),
        })
        .collect();
    Ok(CohomologyEntry::new(piece.group, generators).expect("monomial basis realizes the group"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(d: u8, g: Generator) -> RingElement {
        RingElement::generator(d, g).unwrap()
    }

    #[test]
    fn pieces() {
        let p = graded_piece(4, 4).unwrap();
        assert_eq!(p.group, FgAbGroup::free(2));
        assert_eq!(p.basis.iter().map(Monomial::name).collect::<Vec<_>>(), ["e", "p1"]);
        let p = graded_piece(4, 3).unwrap();
        assert_eq!(p.group, FgAbGroup::cyclic(2));
        assert_eq!(p.basis[0].name(), "W3");
        assert!(graded_piece(2, 5).unwrap().group.is_trivial());
        let p = graded_piece(4, 7).unwrap();
        assert_eq!(p.group, FgAbGroup::new(0, [2, 2]));
        assert_eq!(p.basis.iter().map(Monomial::name).collect::<Vec<_>>(), ["W3e", "W3p1"]);
        assert!(matches!(graded_piece(4, 65), Err(CharClassError::DegreeTooLarge(65))));
        assert!(matches!(
            graded_piece(5, 0),
            Err(CharClassError::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn products() {
        let w = gen(4, Generator::W3);
        let w2 = multiply(&w, &w).unwrap();
        assert_eq!(w2.terms().count(), 1);
        assert_eq!(
            w2.coefficient(&Monomial {
                w3: 2,
                ..Monomial::one()
            }),
            BigInt::one()
        );
        assert!(multiply(&w.scale(&BigInt::from(2)), &w).unwrap().is_zero());
        let c = gen(2, Generator::C);
        assert_eq!(multiply(&c, &c).unwrap().to_string(), "c²");
        let s = &gen(4, Generator::E) + &gen(4, Generator::P1);
        assert_eq!(multiply(&s, &RingElement::constant(4, 1).unwrap()).unwrap(), s);
        assert!(matches!(multiply(&c, &w), Err(CharClassError::AmbientMismatch { .. })));
    }

    #[test]
    fn restrictions() {
        assert_eq!(
            restrict_generators(&gen(4, Generator::P1), 3).unwrap(),
            gen(3, Generator::P1)
        );
        assert_eq!(
            restrict_generators(&gen(3, Generator::P1), 2).unwrap().to_string(),
            "-c²"
        );
        assert!(restrict_generators(&gen(4, Generator::E), 3).unwrap().is_zero());
        assert!(restrict_generators(&gen(3, Generator::W3), 2).unwrap().is_zero());
        assert!(restrict_generators(&gen(3, Generator::W3), 3).is_err());
    }

    #[test]
    fn thom_names() {
        let e = thom_module_piece(3, 4).unwrap();
        assert_eq!(e.group, FgAbGroup::free(1));
        assert_eq!(e.generators[0].name, "p1u");
        assert_eq!(thom_module_piece(2, 2).unwrap().generators[0].name, "cu");
        assert_eq!(thom_module_piece(4, 0).unwrap().generators[0].name, "u");
        assert_eq!(thom_module_piece(2, 4).unwrap().generators[0].name, "c^2u");
    }
}
