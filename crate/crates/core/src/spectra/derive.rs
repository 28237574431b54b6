//! Re-derivation of the cover rows from the long exact sequence
//!
//! ```text
//! 0 -> coker(HZ^k(HZ) -> HZ^k(E)) -> HZ^k(P) -> ker(HZ^{k+1}(HZ) -> HZ^{k+1}(E)) -> 0
//! ```
//!
//! Every admissible unit map and every extension class is enumerated, then
//! the candidates are cut down by explicit side conditions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::{homotopy_group, hz_self_cohomology, thom_cohomology, CertifiedTable, Node, SpectraError, SpectrumId};
use crate::abelian::{extensions, FgAbGroup, GroupHom};

/// Largest number of unit maps tried in one degree.
const MAX_UNIT_MAPS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DerivationConstraint {
    /// The cover is `(below - 1)`-connected, so its cohomology vanishes below `below`.
    HurewiczVanishing { below: u32 },
    /// `H_n` of the cover agrees with `π_n`.
    HurewiczIso { degree: u32, homotopy: FgAbGroup },
    /// `H^n = Hom(H_n, Z) ⊕ Ext(H_{n-1}, Z)`; combined with the two
    /// constraints above it pins down `H^n` as the dual of `π_n`.
    UniversalCoefficients,
    /// The image of `generator` in `H^degree` of the cover is `divisor` times
    /// another class.
    DivisibilityFromSquare {
        degree: u32,
        divisor: u64,
        generator: String,
    },
}

impl DerivationConstraint {
    pub fn describe(&self) -> String {
        match self {
            Self::HurewiczVanishing { below } => {
                format!("homotopy of the cover vanishes below {below}, so cohomology does too")
            }
            Self::HurewiczIso { degree, homotopy } => {
                format!("H_{degree} of the cover is π_{degree} = {homotopy}")
            }
            Self::UniversalCoefficients => "cohomology is the dual of the first nonzero homology".into(),
            Self::DivisibilityFromSquare {
                degree,
                divisor,
                generator,
            } => format!("the image of {generator} in degree {degree} is divisible by {divisor}"),
        }
    }
}

/// One shape of the short exact sequence, for one choice of unit maps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DerivationSource {
    pub sub: FgAbGroup,
    pub quotient: FgAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub d: u8,
    pub k: u32,
    pub sources: BTreeSet<DerivationSource>,
    /// Every middle group admitted by exactness alone.
    pub unconstrained: BTreeSet<FgAbGroup>,
    /// The middle groups that survive the constraints.
    pub candidates: BTreeSet<FgAbGroup>,
    pub group: Option<FgAbGroup>,
    pub ambiguous: bool,
}

/// The side conditions used to pin down every cover row for `d`.
pub fn standard_constraints(d: u8) -> Result<Vec<DerivationConstraint>, SpectraError> {
    let mut below = None;
    for n in 1..=u32::from(d) {
        if !homotopy_group(d, n)?.is_trivial() {
            below = Some(n);
            break;
        }
    }
    let below = below.unwrap_or(u32::from(d) + 1);
    let mut out = vec![DerivationConstraint::HurewiczVanishing { below }];
    if let Ok(pi) = homotopy_group(d, below) {
        out.push(DerivationConstraint::HurewiczIso {
            degree: below,
            homotopy: pi,
        });
        out.push(DerivationConstraint::UniversalCoefficients);
    }
    // The commuting square with the four-dimensional row: p1u -> 3σ and
    // σ -> 2·(image of ψ), so p1u lands on six times a class. The
    // two-dimensional row inherits this through p1u -> -c²u.
    match d {
        3 => out.push(DerivationConstraint::DivisibilityFromSquare {
            degree: 4,
            divisor: 6,
            generator: "p1u".into(),
        }),
        2 => out.push(DerivationConstraint::DivisibilityFromSquare {
            degree: 4,
            divisor: 6,
            generator: "c^2u".into(),
        }),
        _ => {}
    }
    Ok(out)
}

impl CertifiedTable {
    fn unit_map_choices(&self, d: u8, k: u32) -> Result<Vec<GroupHom>, SpectraError> {
        let source = hz_self_cohomology(k)?;
        let target = thom_cohomology(d, k)?.group;
        if source.is_finite() {
            GroupHom::enumerate(&source, &target, MAX_UNIT_MAPS)
                .ok_or_else(|| SpectraError::Unsupported(format!("too many maps {source} -> {target}")))
        } else {
            Ok(vec![self.unit_map(d, k)?.hom])
        }
    }

    pub fn derive_cover_cohomology(
        &self,
        d: u8,
        k: u32,
        constraints: &[DerivationConstraint],
    ) -> Result<Derivation, SpectraError> {
        if !(2..=4).contains(&d) || k > super::MAX_COHOMOLOGY_DEGREE {
            return Err(SpectraError::OutOfTable(format!("derivation for d={d}, k={k}")));
        }
        let e_k = thom_cohomology(d, k)?;
        let vanishing = constraints
            .iter()
            .any(|c| matches!(c, DerivationConstraint::HurewiczVanishing { below } if k < *below));
        let dual_of_homotopy = constraints.iter().find_map(|c| match c {
            DerivationConstraint::HurewiczIso { degree, homotopy } if *degree == k => Some(homotopy.clone()),
            _ => None,
        });
        let uc = constraints.contains(&DerivationConstraint::UniversalCoefficients);
        let divisibility: Vec<(Vec<BigInt>, u64)> = constraints
            .iter()
            .filter_map(|c| match c {
                DerivationConstraint::DivisibilityFromSquare {
                    degree,
                    divisor,
                    generator,
                } if *degree == k => Some((generator, *divisor)),
                _ => None,
            })
            .map(|(g, n)| {
                let j = e_k
                    .index_of(g)
                    .ok_or_else(|| SpectraError::Unsupported(format!("{g} is not a generator in degree {k}")))?;
                let mut v = vec![BigInt::from(0); e_k.group.ngens()];
                v[j] = BigInt::from(1);
                Ok((v, n))
            })
            .collect::<Result<_, SpectraError>>()?;

        let mut sources = BTreeSet::new();
        let mut unconstrained = BTreeSet::new();
        let mut candidates = BTreeSet::new();
        for alpha in self.unit_map_choices(d, k)? {
            let relations = alpha.matrix().hconcat(&e_k.group.relation_matrix());
            let (sub, projection) = FgAbGroup::cokernel_with_projection(&relations);
            for next in self.unit_map_choices(d, k + 1)? {
                let quotient = next.kernel();
                sources.insert(DerivationSource {
                    sub: sub.clone(),
                    quotient: quotient.clone(),
                });
                for ext in extensions(&sub, &quotient)? {
                    unconstrained.insert(ext.middle.clone());
                    if vanishing && !ext.middle.is_trivial() {
                        continue;
                    }
                    if let (Some(pi), true) = (&dual_of_homotopy, uc) {
                        if ext.middle != FgAbGroup::free(pi.free_rank()) {
                            continue;
                        }
                    }
                    if !divisibility
                        .iter()
                        .all(|(v, n)| ext.image_divisible_by(&projection.mul_vec(v), *n))
                    {
                        continue;
                    }
                    candidates.insert(ext.middle);
                }
            }
        }

        if candidates.is_empty() {
            return Err(SpectraError::ContradictoryConstraints { d, k });
        }
        let ambiguous = candidates.len() > 1;
        let group = (!ambiguous).then(|| candidates.iter().next().cloned()).flatten();
        if let Some(g) = &group {
            let table = self
                .entry(Node::Spectrum(SpectrumId::connected_cover(d)), k)
                .map(|e| e.group.clone());
            if let Some(t) = table {
                if &t != g {
                    return Err(SpectraError::TableDisagreement {
                        d,
                        k,
                        derived: g.to_string(),
                        table: t.to_string(),
                    });
                }
            }
        }
        Ok(Derivation {
            d,
            k,
            sources,
            unconstrained,
            candidates,
            group,
            ambiguous,
        })
    }
}

/// [`CertifiedTable::derive_cover_cohomology`] on the builtin table.
pub fn derive_cover_cohomology(
    d: u8,
    k: u32,
    constraints: &[DerivationConstraint],
) -> Result<Derivation, SpectraError> {
    CertifiedTable::builtin().derive_cover_cohomology(d, k, constraints)
}
