use serde::Serialize;

use super::{ManifoldClass, TftError};
use crate::exact::{Multiplicative, PowerProduct, Unit};

/// The one-dimensional commutative Frobenius algebra `C`: unit `1`, the
/// usual multiplication, comultiplication `1 -> c·(1⊗1)` and counit `1 -> e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    pub mu: Unit,
    pub comult: Unit,
    pub counit: Unit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCheck {
    pub identity: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusVerdict {
    pub passed: bool,
    pub checks: Vec<FrobeniusCheck>,
}

impl FrobeniusVerdict {
    pub fn violated(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.identity).collect()
    }
}

impl FrobeniusData {
    /// The algebra with counit `μ` and comultiplication `μ⁻¹`.
    pub fn new(mu: Unit) -> Self {
        Self {
            comult: mu.inv(),
            counit: mu.clone(),
            mu,
        }
    }

    pub fn from_parts(mu: Unit, comult: Unit, counit: Unit) -> Self {
        Self { mu, comult, counit }
    }

    /// Checks each structure identity on the basis vector `1`.
    pub fn verify(&self) -> FrobeniusVerdict {
        let one = Unit::one();
        let c = &self.comult;
        let e = &self.counit;
        let checks = vec![
            FrobeniusCheck {
                identity: "unit law m(1 ⊗ x) = x",
                holds: one.mul(&one) == one,
            },
            FrobeniusCheck {
                identity: "associativity",
                holds: one.mul(&one).mul(&one) == one.mul(&one.mul(&one)),
            },
            FrobeniusCheck {
                identity: "counit law (ε ⊗ id)Δ = id",
                holds: e.mul(c) == one,
            },
            FrobeniusCheck {
                identity: "coassociativity",
                holds: c.mul(c) == c.mul(c),
            },
            FrobeniusCheck {
                identity: "Frobenius relation (m ⊗ id)(id ⊗ Δ) = Δm",
                holds: one.mul(c) == c.mul(&one),
            },
        ];
        FrobeniusVerdict {
            passed: checks.iter().all(|c| c.holds),
            checks,
        }
    }

    /// `ε ∘ (m ∘ Δ)^g ∘ η`: the closed genus-`g` surface.
    pub fn closed_value(&self, genus: u32) -> Unit {
        self.counit.mul(&self.comult.pow(i64::from(genus)))
    }

    /// The value on a possibly disconnected closed surface. Each component
    /// contributes `e·c^g = (e·c)·c^{-χ/2}`, so once the counit law holds
    /// this is `c^{-χ/2}`.
    pub fn surface_value(&self, m: &ManifoldClass) -> Result<Unit, TftError> {
        expect_dim(m, 2)?;
        Ok(self.comult.pow(-(m.euler / 2)))
    }
}

pub fn frobenius_verify(f: &FrobeniusData) -> FrobeniusVerdict {
    f.verify()
}

/// `μ^{1-g}`.
pub fn frobenius_closed_value(mu: &Unit, genus: u32) -> Unit {
    FrobeniusData::new(mu.clone()).closed_value(genus)
}

/// A surface bordism `Y₀ -> Y₁` seen through `χ(Σ)` and `χ(Y₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceBordism {
    pub chi_total: i64,
    pub chi_source: i64,
}

impl SurfaceBordism {
    pub fn closed(m: &ManifoldClass) -> Result<Self, TftError> {
        expect_dim(m, 2)?;
        Ok(Self {
            chi_total: m.euler,
            chi_source: 0,
        })
    }

    pub fn relative_euler(&self) -> i64 {
        self.chi_total - self.chi_source
    }
}

/// `λ^{χ(Σ) - χ(Y₀)}`.
pub fn euler_theory_value(lambda: &Unit, b: SurfaceBordism) -> Unit {
    lambda.pow(b.relative_euler())
}

/// `λ₁^{χ} λ₂^{p₁}` on a closed 4-manifold.
pub fn invertible_4d_value(l1: &Unit, l2: &Unit, m: &ManifoldClass) -> Result<Unit, TftError> {
    expect_dim(m, 4)?;
    Ok(l1.pow(m.euler).mul(&l2.pow(m.p1_number)))
}

/// The same value as a monomial in `lambda1`, `lambda2`.
pub fn invertible_4d_monomial(m: &ManifoldClass) -> Result<PowerProduct, TftError> {
    expect_dim(m, 4)?;
    Ok(PowerProduct::symbol("lambda1")
        .pow(m.euler)
        .mul(&PowerProduct::symbol("lambda2").pow(m.p1_number)))
}

fn expect_dim(m: &ManifoldClass, dim: u8) -> Result<(), TftError> {
    if m.dim != dim {
        return Err(TftError::DimensionMismatch {
            expected: dim,
            found: m.dim,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::Style;
    use crate::tftlab::Catalog;

    fn q(n: i64, d: i64) -> Unit {
        Unit::ratio(n, d).unwrap()
    }

    #[test]
    fn frobenius() {
        let f = FrobeniusData::new(q(5, 1));
        assert_eq!(f.comult, q(1, 5));
        assert!(f.verify().passed);
        assert!(FrobeniusData::new(q(1, 1)).verify().passed);
        let bad = FrobeniusData::from_parts(q(2, 1), q(1, 1), q(2, 1)).verify();
        assert!(!bad.passed);
        assert_eq!(bad.violated(), ["counit law (ε ⊗ id)Δ = id"]);
        assert_eq!(frobenius_closed_value(&q(7, 3), 1), Unit::one());
        assert_eq!(frobenius_closed_value(&q(7, 3), 0), q(7, 3));
        assert_eq!(frobenius_closed_value(&q(4, 1), 2), q(1, 4));
    }

    #[test]
    fn euler() {
        let l = q(3, 2);
        let b = SurfaceBordism {
            chi_total: -1,
            chi_source: 1,
        };
        assert_eq!(euler_theory_value(&l, b), q(4, 9));
        let b = SurfaceBordism {
            chi_total: 4,
            chi_source: 4,
        };
        assert_eq!(euler_theory_value(&l, b), Unit::one());
    }

    #[test]
    fn four_d() {
        let c = Catalog::builtin();
        let v = invertible_4d_value(&q(2, 1), &q(1, 1), &c.get("S4").unwrap()).unwrap();
        assert_eq!(v, q(4, 1));
        let k3 = invertible_4d_monomial(&c.get("K3").unwrap()).unwrap();
        assert_eq!(k3.render(Style::Unicode), "λ₁²⁴λ₂⁻⁴⁸");
        assert!(invertible_4d_value(&q(2, 1), &q(1, 1), &c.get("S2").unwrap()).is_err());
    }
}
