use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::lattice;
use super::snf::smith_normal_form;
use super::{AbelianError, IntMatrix};
use crate::notation::Style;

/// A finitely generated abelian group `Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dk` in
/// invariant-factor form: every `di >= 2` and `di | d(i+1)`.
///
/// Values are canonical on construction, so isomorphism is `==`.
/// Elements are coordinate vectors: free coordinates first, then one
/// coordinate per torsion factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl TryFrom<GroupRepr> for FgAbGroup {
    type Error = AbelianError;

    fn try_from(r: GroupRepr) -> Result<Self, AbelianError> {
        let g = FgAbGroup::new(r.free_rank, r.torsion.iter().copied());
        if g.free_rank != r.free_rank || g.torsion.len() != r.torsion.len() {
            return Err(AbelianError::NonCanonical);
        }
        Ok(g)
    }
}

impl From<FgAbGroup> for GroupRepr {
    fn from(g: FgAbGroup) -> Self {
        GroupRepr {
            free_rank: g.free_rank,
            torsion: g
                .torsion
                .iter()
                .map(|d| d.to_u64().expect("torsion order exceeds u64"))
                .collect(),
        }
    }
}

impl FgAbGroup {
    /// `Z^free_rank ⊕ ⊕ Z/orders[i]`, canonicalized. Orders of 0 count as
    /// free summands and orders of ±1 are dropped.
    pub fn new<I: Into<BigInt>>(free_rank: usize, orders: impl IntoIterator<Item = I>) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().map(Into::into).collect();
        let n = orders.len();
        let rel = IntMatrix::diagonal(n, n, orders);
        let tors = Self::cokernel(&rel);
        Self {
            free_rank: free_rank + tors.free_rank,
            torsion: tors.torsion,
        }
    }

    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [order])
    }

    /// `Z^rows / (column span of relations)`.
    pub fn cokernel(relations: &IntMatrix) -> Self {
        let s = smith_normal_form(relations);
        let factors = s.invariant_factors();
        let rank = factors.len();
        Self {
            free_rank: relations.rows() - rank,
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// The cokernel together with the quotient map `Z^rows -> cokernel`,
    /// given as a matrix in canonical coordinates.
    pub fn cokernel_with_projection(relations: &IntMatrix) -> (Self, IntMatrix) {
        let s = smith_normal_form(relations);
        let factors = s.invariant_factors();
        let rank = factors.len();
        let mut rows: Vec<usize> = (rank..relations.rows()).collect();
        rows.extend((0..rank).filter(|&i| !factors[i].is_one()));
        let group = Self {
            free_rank: relations.rows() - rank,
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        };
        (group, s.u.select_rows(&rows))
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> Self {
        Self::new(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_subgroup(&self) -> Self {
        Self {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the i-th canonical generator; `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.free_rank).map(|t| &self.torsion[t])
    }

    /// Relations among the canonical generators, one column per torsion factor.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let cols: Vec<Vec<BigInt>> = self
            .torsion
            .iter()
            .enumerate()
            .map(|(t, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[self.free_rank + t] = d.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// Canonical representative: torsion coordinates reduced into `[0, d)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens(), "element has wrong length");
        v.iter()
            .enumerate()
            .map(|(i, x)| match self.generator_order(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// All elements of a finite group, or `None` if infinite or larger than `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?.to_u64()?;
        if order > limit {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d = d.to_u64()?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(x));
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }

    pub fn render(&self, style: Style) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let z = style.integers();
        let mut parts = Vec::new();
        for _ in 0..self.free_rank {
            parts.push(z.to_string());
        }
        for d in &self.torsion {
            parts.push(format!("{z}/{d}"));
        }
        parts.join(style.direct_sum())
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Unicode))
    }
}

/// A homomorphism between canonical groups. Column `j` of `matrix` is the
/// image of the j-th source generator in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, AbelianError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(AbelianError::HomShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                target_gens: target.ngens(),
                source_gens: source.ngens(),
            });
        }
        let mut cols = Vec::with_capacity(source.ngens());
        for j in 0..source.ngens() {
            let col = matrix.column(j);
            if let Some(d) = source.generator_order(j) {
                let scaled: Vec<BigInt> = col.iter().map(|x| x * d).collect();
                if !target.is_zero_element(&scaled) {
                    return Err(AbelianError::NotWellDefined { generator: j });
                }
            }
            cols.push(target.reduce(&col));
        }
        let matrix = IntMatrix::from_columns(target.ngens(), &cols);
        Ok(Self { source, target, matrix })
    }

    /// Convenience constructor from small-integer images of each source generator.
    pub fn from_images(source: FgAbGroup, target: FgAbGroup, images: &[&[i64]]) -> Result<Self, AbelianError> {
        let cols: Vec<Vec<BigInt>> = images
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        if cols.len() != source.ngens() || cols.iter().any(|c| c.len() != target.ngens()) {
            return Err(AbelianError::HomShape {
                rows: cols.first().map_or(target.ngens(), Vec::len),
                cols: cols.len(),
                target_gens: target.ngens(),
                source_gens: source.ngens(),
            });
        }
        let m = IntMatrix::from_columns(target.ngens(), &cols);
        Self::new(source, target, m)
    }

    pub fn zero(source: FgAbGroup, target: FgAbGroup) -> Self {
        let matrix = IntMatrix::zeros(target.ngens(), source.ngens());
        Self { source, target, matrix }
    }

    pub fn identity(g: FgAbGroup) -> Self {
        let matrix = IntMatrix::identity(g.ngens());
        Self {
            source: g.clone(),
            target: g,
            matrix,
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom, AbelianError> {
        if self.target != next.source {
            return Err(AbelianError::CompositionMismatch {
                left: self.target.to_string(),
                right: next.source.to_string(),
            });
        }
        GroupHom::new(self.source.clone(), next.target.clone(), &next.matrix * &self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Lattice in `Z^(source gens)` whose image is the kernel.
    fn kernel_lattice(&self) -> IntMatrix {
        let ns = self.source.ngens();
        let big = self.matrix.hconcat(&self.target.relation_matrix());
        let k = lattice::kernel_basis(&big);
        let idx: Vec<usize> = (0..ns).collect();
        lattice::column_basis(&k.select_rows(&idx))
    }

    /// Lattice in `Z^(target gens)` whose image is the image of `self`.
    fn image_lattice(&self) -> IntMatrix {
        lattice::column_basis(&self.matrix.hconcat(&self.target.relation_matrix()))
    }

    pub fn kernel(&self) -> FgAbGroup {
        lattice::subquotient(&self.kernel_lattice(), &self.source.relation_matrix())
    }

    pub fn image(&self) -> FgAbGroup {
        lattice::subquotient(&self.image_lattice(), &self.target.relation_matrix())
    }

    pub fn cokernel(&self) -> FgAbGroup {
        FgAbGroup::cokernel(&self.matrix.hconcat(&self.target.relation_matrix()))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Every homomorphism `source -> target` when `source` is finite and the
    /// count does not exceed `limit`.
    pub fn enumerate(source: &FgAbGroup, target: &FgAbGroup, limit: usize) -> Option<Vec<GroupHom>> {
        if !source.is_finite() {
            return None;
        }
        // Image of a generator of order d: any x with d*x = 0 in target.
        let mut per_gen: Vec<Vec<Vec<BigInt>>> = Vec::new();
        for d in source.torsion() {
            let mut choices = vec![Vec::new()];
            for i in 0..target.ngens() {
                let opts: Vec<BigInt> = match target.generator_order(i) {
                    None => vec![BigInt::zero()],
                    Some(m) => {
                        let step = m / m.gcd(d);
                        let count = (m / &step).to_u64()?;
                        (0..count).map(|t| &step * BigInt::from(t)).collect()
                    }
                };
                choices = choices
                    .into_iter()
                    .flat_map(|p: Vec<BigInt>| {
                        opts.iter().map(move |x| {
                            let mut p = p.clone();
                            p.push(x.clone());
                            p
                        })
                    })
                    .collect();
                if choices.len() > limit {
                    return None;
                }
            }
            per_gen.push(choices);
        }
        let mut homs: Vec<Vec<Vec<BigInt>>> = vec![Vec::new()];
        for choices in per_gen {
            homs = homs
                .into_iter()
                .flat_map(|cols| {
                    choices.iter().map(move |c| {
                        let mut cols = cols.clone();
                        cols.push(c.clone());
                        cols
                    })
                })
                .collect();
            if homs.len() > limit {
                return None;
            }
        }
        homs.into_iter()
            .map(|cols| {
                let m = IntMatrix::from_columns(target.ngens(), &cols);
                GroupHom::new(source.clone(), target.clone(), m).ok()
            })
            .collect()
    }
}

/// Outcome of checking `A --f--> B --g--> C` for exactness at `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exactness {
    pub composite_zero: bool,
    pub image: FgAbGroup,
    pub kernel: FgAbGroup,
    pub exact: bool,
}

/// Decides whether `image(f) = kernel(g)` inside `target(f) = source(g)`.
pub fn check_exact(f: &GroupHom, g: &GroupHom) -> Result<Exactness, AbelianError> {
    let composite = f.then(g)?;
    let composite_zero = composite.is_zero();
    let img = f.image_lattice();
    let ker = g.kernel_lattice();
    let exact = composite_zero && lattice::includes(&img, &ker);
    Ok(Exactness {
        composite_zero,
        image: f.image(),
        kernel: g.kernel(),
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(FgAbGroup::new(0, [2, 3]), FgAbGroup::cyclic(6));
        assert_eq!(FgAbGroup::new(1, [0, 1, -4]), FgAbGroup::new(2, [4]));
        assert_eq!(
            FgAbGroup::new(0, [4, 6]).torsion(),
            &[BigInt::from(2), BigInt::from(12)]
        );
        assert_eq!(FgAbGroup::cyclic(1), FgAbGroup::trivial());
    }

    #[test]
    fn cokernel_examples() {
        let a = IntMatrix::from_rows(&[[2, -1], [0, 3]]);
        assert_eq!(FgAbGroup::cokernel(&a), FgAbGroup::cyclic(6));
        assert_eq!(FgAbGroup::cokernel(&IntMatrix::zeros(2, 0)), FgAbGroup::free(2));
        assert_eq!(FgAbGroup::cokernel(&IntMatrix::from_rows(&[[2]])), FgAbGroup::cyclic(2));
    }

    #[test]
    fn projection_onto_cokernel() {
        let a = IntMatrix::from_rows(&[[2, 0], [-1, 3]]);
        let (g, p) = FgAbGroup::cokernel_with_projection(&a);
        assert_eq!(g, FgAbGroup::cyclic(6));
        for c in a.columns() {
            assert!(g.is_zero_element(&p.mul_vec(&c)));
        }
        let psi = p.mul_vec(&[BigInt::one(), BigInt::zero()]);
        assert_eq!(g.reduce(&psi).len(), 1);
        assert!(!g.is_zero_element(&psi.iter().map(|x| x * 3).collect::<Vec<_>>()));
    }

    #[test]
    fn render() {
        assert_eq!(FgAbGroup::new(2, [2]).to_string(), "ℤ⊕ℤ⊕ℤ/2");
        assert_eq!(FgAbGroup::new(1, [6]).render(Style::Ascii), "Z+Z/6");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn well_definedness() {
        let z2 = FgAbGroup::cyclic(2);
        assert!(matches!(
            GroupHom::from_images(z2.clone(), z(), &[&[1]]),
            Err(AbelianError::NotWellDefined { generator: 0 })
        ));
        assert!(GroupHom::from_images(z2.clone(), FgAbGroup::cyclic(4), &[&[2]]).is_ok());
        assert!(GroupHom::from_images(z2, FgAbGroup::cyclic(4), &[&[1]]).is_err());
    }

    #[test]
    fn textbook_exact() {
        let f = GroupHom::from_images(z(), z(), &[&[2]]).unwrap();
        let g = GroupHom::from_images(z(), FgAbGroup::cyclic(2), &[&[1]]).unwrap();
        let e = check_exact(&f, &g).unwrap();
        assert!(e.exact);
        assert_eq!(e.kernel, z());
    }

    #[test]
    fn not_exact_when_kernel_is_smaller() {
        let f = GroupHom::from_images(z(), z(), &[&[2]]).unwrap();
        let g = GroupHom::from_images(z(), FgAbGroup::cyclic(4), &[&[1]]).unwrap();
        let e = check_exact(&f, &g).unwrap();
        assert!(!e.composite_zero);
        assert!(!e.exact);
    }

    #[test]
    fn composition_mismatch() {
        let f = GroupHom::identity(z());
        let g = GroupHom::identity(FgAbGroup::cyclic(2));
        assert!(matches!(
            check_exact(&f, &g),
            Err(AbelianError::CompositionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_image_cokernel() {
        // Z^2 -> Z/6, (a, b) -> a + 2b
        let h = GroupHom::from_images(FgAbGroup::free(2), FgAbGroup::cyclic(6), &[&[1], &[2]]).unwrap();
        assert_eq!(h.kernel(), FgAbGroup::free(2));
        assert_eq!(h.image(), FgAbGroup::cyclic(6));
        assert!(h.is_surjective());
        // Z/6 -> Z/6, x -> 2x
        let m = GroupHom::from_images(FgAbGroup::cyclic(6), FgAbGroup::cyclic(6), &[&[2]]).unwrap();
        assert_eq!(m.kernel(), FgAbGroup::cyclic(2));
        assert_eq!(m.image(), FgAbGroup::cyclic(3));
        assert_eq!(m.cokernel(), FgAbGroup::cyclic(2));
    }

    #[test]
    fn hom_enumeration() {
        let homs = GroupHom::enumerate(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(2), 100).unwrap();
        assert_eq!(homs.len(), 2);
        let homs = GroupHom::enumerate(&FgAbGroup::cyclic(6), &FgAbGroup::cyclic(4), 100).unwrap();
        assert_eq!(homs.len(), 2);
        let homs = GroupHom::enumerate(&FgAbGroup::cyclic(2), &FgAbGroup::free(3), 100).unwrap();
        assert_eq!(homs.len(), 1);
    }
}
