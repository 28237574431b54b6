use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{lattice, AbelianError, FgAbGroup, IntMatrix};

/// Largest torsion order accepted by the extension enumeration.
pub const MAX_ENUMERATED_ORDER: u64 = 64;
/// Largest number of extension classes enumerated in one call.
pub const MAX_EXTENSION_CLASSES: usize = 4096;

/// `Ext^1(b, a)`, assembled summand by summand:
/// `Ext(Z, -) = 0`, `Ext(Z/n, Z) = Z/n`, `Ext(Z/n, Z/m) = Z/gcd(n, m)`.
pub fn ext_group(b: &FgAbGroup, a: &FgAbGroup) -> FgAbGroup {
    let mut orders: Vec<BigInt> = Vec::new();
    for n in b.torsion() {
        orders.extend(std::iter::repeat_n(n.clone(), a.free_rank()));
        orders.extend(a.torsion().iter().map(|m| n.gcd(m)));
    }
    FgAbGroup::new(0, orders)
}

/// One extension `0 -> A -> X -> B -> 0`, presented on the generators of `A`
/// followed by lifts of the generators of `B`.
#[derive(Clone, Debug)]
pub struct Extension {
    /// For each torsion generator of `B` (order `n`), the element of `A` equal
    /// to `n` times its lift. Together these represent the class in `Ext(B, A)`.
    pub class: Vec<Vec<BigInt>>,
    pub middle: FgAbGroup,
    relations: IntMatrix,
    a_gens: usize,
}

impl Extension {
    pub fn is_split(&self) -> bool {
        self.class.iter().flatten().all(Zero::is_zero)
    }

    /// Whether the image of the element `a` of `A` is divisible by `n` in `X`.
    pub fn image_divisible_by(&self, a: &[BigInt], n: u64) -> bool {
        assert_eq!(a.len(), self.a_gens);
        let total = self.relations.rows();
        let mut x = a.to_vec();
        x.resize(total, BigInt::zero());
        let scaled = IntMatrix::diagonal(total, total, std::iter::repeat_n(BigInt::from(n), total));
        lattice::contains(&scaled.hconcat(&self.relations), &x)
    }
}

fn check_bound(g: &FgAbGroup) -> Result<(), AbelianError> {
    match g.torsion().last() {
        Some(d) if d.to_u64().is_none_or(|d| d > MAX_ENUMERATED_ORDER) => Err(AbelianError::UnsupportedShape(format!(
            "torsion order {d} exceeds the enumeration bound {MAX_ENUMERATED_ORDER}"
        ))),
        _ => Ok(()),
    }
}

/// Representatives of `A / nA`, as coordinate vectors of `A`.
fn quotient_representatives(a: &FgAbGroup, n: &BigInt) -> Vec<Vec<BigInt>> {
    let mut reps = vec![Vec::new()];
    for i in 0..a.ngens() {
        let count = match a.generator_order(i) {
            None => n.clone(),
            Some(m) => m.gcd(n),
        };
        let count = count.to_u64().unwrap_or(0);
        reps = reps
            .into_iter()
            .flat_map(|p| {
                (0..count).map(move |x| {
                    let mut p = p.clone();
                    p.push(BigInt::from(x));
                    p
                })
            })
            .collect();
    }
    reps
}

/// Every extension class of `b` by `a` (one representative per element of
/// `Ext(b, a)`), with its middle group.
pub fn extensions(a: &FgAbGroup, b: &FgAbGroup) -> Result<Vec<Extension>, AbelianError> {
    check_bound(a)?;
    check_bound(b)?;
    let classes = ext_group(b, a).order().and_then(|o| o.to_usize()).unwrap_or(usize::MAX);
    if classes > MAX_EXTENSION_CLASSES {
        return Err(AbelianError::UnsupportedShape(format!(
            "{classes} extension classes exceed the limit {MAX_EXTENSION_CLASSES}"
        )));
    }

    let na = a.ngens();
    let nb = b.ngens();
    let per_gen: Vec<Vec<Vec<BigInt>>> = b.torsion().iter().map(|n| quotient_representatives(a, n)).collect();

    let mut choices: Vec<Vec<Vec<BigInt>>> = vec![Vec::new()];
    for reps in &per_gen {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                reps.iter().map(move |r| {
                    let mut c = c.clone();
                    c.push(r.clone());
                    c
                })
            })
            .collect();
    }

    let a_rel = a.relation_matrix();
    let out = choices
        .into_iter()
        .map(|class| {
            let mut cols: Vec<Vec<BigInt>> = a_rel
                .columns()
                .into_iter()
                .map(|mut c| {
                    c.resize(na + nb, BigInt::zero());
                    c
                })
                .collect();
            for (t, (n, rep)) in b.torsion().iter().zip(&class).enumerate() {
                let mut c: Vec<BigInt> = rep.iter().map(|x| -x).collect();
                c.resize(na + nb, BigInt::zero());
                c[na + b.free_rank() + t] = n.clone();
                cols.push(c);
            }
            let relations = IntMatrix::from_columns(na + nb, &cols);
            Extension {
                class,
                middle: FgAbGroup::cokernel(&relations),
                relations,
                a_gens: na,
            }
        })
        .collect();
    Ok(out)
}

/// Isomorphism types of `X` fitting into `0 -> a -> X -> b -> 0`.
pub fn middle_group_candidates(a: &FgAbGroup, b: &FgAbGroup) -> Result<BTreeSet<FgAbGroup>, AbelianError> {
    Ok(extensions(a, b)?.into_iter().map(|e| e.middle).collect())
}

/// Kernel of `x -> (prod_i x_i^{a[i][j]})_j` on `(C^x)^rows`.
///
/// The kernel is dual to `Z^rows / colspan(a)`: each free summand is a
/// `C^x` factor (reported through `free_rank`), each `Z/d` a group of
/// `d`-th roots of unity.
pub fn units_kernel(a: &IntMatrix) -> FgAbGroup {
    FgAbGroup::cokernel(a)
}
