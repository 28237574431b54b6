//! The spectra `Σ^d MTSO(d)` for `d <= 4`, their connective covers, and
//! everything known about their low-degree homotopy and integral cohomology.
//!
//! Uncovered cohomology is computed from the Thom isomorphism; the cover
//! rows and every arrow between them come from a [`CertifiedTable`], which
//! [`verify_les`] and [`derive_cover_cohomology`] check independently.

mod derive;
mod les;
mod table;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianError, FgAbGroup, GroupHom, IntMatrix};
use crate::charclasses::{self, CharClassError};
use crate::notation::{superscript, Style};

pub use derive::{derive_cover_cohomology, standard_constraints, Derivation, DerivationConstraint, DerivationSource};
pub use les::{verify_les, LesReport, LesStep, ShortExactChunk};
pub use table::{CertifiedTable, MapRecord, Provenance, TableError, TABLE_VERSION};

/// Highest cohomological degree served by [`cohomology`].
pub const MAX_COHOMOLOGY_DEGREE: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("outside the recorded range: {0}")]
    OutOfTable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no arrow {from} -> {target} in degree {degree} is recorded")]
    NotRecorded { from: String, target: String, degree: u32 },
    #[error("the constraints for d={d}, k={k} exclude every candidate")]
    ContradictoryConstraints { d: u8, k: u32 },
    #[error("derivation for d={d}, k={k} gives {derived} but the table records {table}")]
    TableDisagreement {
        d: u8,
        k: u32,
        derived: String,
        table: String,
    },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    CharClass(#[from] CharClassError),
}

/// `p_{>=cover} Σ^d MTSO(d)`; `cover = 0` is the spectrum itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpectrumId {
    pub d: u8,
    pub cover: u8,
}

impl SpectrumId {
    pub fn new(d: u8, cover: u8) -> Result<Self, SpectraError> {
        if !(1..=4).contains(&d) || cover > 3 {
            return Err(SpectraError::OutOfTable(format!("spectrum d={d}, cover={cover}")));
        }
        Ok(Self { d, cover })
    }

    pub fn uncovered(d: u8) -> Self {
        Self { d, cover: 0 }
    }

    pub fn connected_cover(d: u8) -> Self {
        Self { d, cover: 1 }
    }

    pub fn render(&self, style: Style) -> String {
        let base = match style {
            Style::Unicode => format!("Σ{}MTSO({})", superscript(&self.d.to_string()), self.d),
            Style::Ascii => format!("Sigma^{}MTSO({})", self.d, self.d),
        };
        match (self.cover, style) {
            (0, _) => base,
            (c, Style::Unicode) => format!("p≥{c}{base}"),
            (c, Style::Ascii) => format!("p>={c}{base}"),
        }
    }
}

impl fmt::Display for SpectrumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Unicode))
    }
}

/// A vertex of the long exact sequences: a spectrum or `HZ` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Hz,
    Spectrum(SpectrumId),
}

impl Node {
    /// `HZ`, `E4` (uncovered) or `P4` (connected cover).
    pub fn token(&self) -> String {
        match self {
            Node::Hz => "HZ".into(),
            Node::Spectrum(s) if s.cover == 0 => format!("E{}", s.d),
            Node::Spectrum(s) => format!("P{}", s.d),
        }
    }

    pub fn parse_token(t: &str) -> Option<Node> {
        if t == "HZ" {
            return Some(Node::Hz);
        }
        let (kind, d) = t.split_at(1);
        let d: u8 = d.parse().ok().filter(|d| (1..=4).contains(d))?;
        match kind {
            "E" => Some(Node::Spectrum(SpectrumId::uncovered(d))),
            "P" => Some(Node::Spectrum(SpectrumId::connected_cover(d))),
            _ => None,
        }
    }

    /// `H^k(X)` written out, e.g. `HZ^4(p≥1Σ⁴MTSO(4))`.
    pub fn cohomology_label(&self, k: u32, style: Style) -> String {
        self.label_in_degree(&k.to_string(), style)
    }

    /// `H^*(X)`, the whole graded group.
    pub fn graded_label(&self, style: Style) -> String {
        self.label_in_degree("*", style)
    }

    fn label_in_degree(&self, degree: &str, style: Style) -> String {
        let inner = match self {
            Node::Hz => format!("H{}", style.integers()),
            Node::Spectrum(s) => s.render(style),
        };
        match style {
            Style::Unicode => format!("Hℤ{}({inner})", superscript(degree)),
            Style::Ascii => format!("HZ^{degree}({inner})"),
        }
    }
}

impl fmt::Display for CohomologyEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Unicode))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// One named generator; `order` is `None` for a free generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NamedGenerator {
    pub name: String,
    pub order: Option<u64>,
}

impl NamedGenerator {
    pub fn free(name: &str) -> Self {
        Self {
            name: name.to_string(),
            order: None,
        }
    }

    pub fn torsion(name: &str, order: u64) -> Self {
        Self {
            name: name.to_string(),
            order: Some(order),
        }
    }
}

/// A cohomology group with named generators, listed in canonical order:
/// free generators first, then torsion generators in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EntryRepr", into = "EntryRepr")]
pub struct CohomologyEntry {
    pub group: FgAbGroup,
    pub generators: Vec<NamedGenerator>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    free_rank: usize,
    torsion: Vec<u64>,
    generators: Vec<NamedGenerator>,
}

impl TryFrom<EntryRepr> for CohomologyEntry {
    type Error = SpectraError;

    fn try_from(r: EntryRepr) -> Result<Self, SpectraError> {
        let group = FgAbGroup::new(r.free_rank, r.torsion.iter().copied());
        if group.free_rank() != r.free_rank || group.torsion().len() != r.torsion.len() {
            return Err(AbelianError::NonCanonical.into());
        }
        CohomologyEntry::new(group, r.generators)
    }
}

impl From<CohomologyEntry> for EntryRepr {
    fn from(e: CohomologyEntry) -> Self {
        let torsion = e
            .group
            .torsion()
            .iter()
            .map(|d| d.to_u64().expect("torsion order exceeds u64"))
            .collect();
        EntryRepr {
            free_rank: e.group.free_rank(),
            torsion,
            generators: e.generators,
        }
    }
}

impl CohomologyEntry {
    pub fn new(group: FgAbGroup, generators: Vec<NamedGenerator>) -> Result<Self, SpectraError> {
        let ok = generators.len() == group.ngens()
            && generators
                .iter()
                .enumerate()
                .all(|(i, g)| match (group.generator_order(i), g.order) {
                    (None, None) => true,
                    (Some(d), Some(o)) => *d == BigInt::from(o),
                    _ => false,
                });
        if !ok {
            let names: Vec<_> = generators.iter().map(|g| g.name.as_str()).collect();
            return Err(SpectraError::Unsupported(format!(
                "generators [{}] do not present {group} in canonical order",
                names.join(", ")
            )));
        }
        Ok(Self { group, generators })
    }

    pub fn zero() -> Self {
        Self {
            group: FgAbGroup::trivial(),
            generators: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    /// `ℤ⊕ℤ (ψ, σ)`, or `0`.
    pub fn render(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names: Vec<String> = self.generators.iter().map(|g| style.name(&g.name)).collect();
        format!("{} ({})", self.group.render(style), names.join(", "))
    }

    /// `ℤeu⊕ℤp₁u`: one summand per generator, torsion summands unnamed.
    pub fn render_summands(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let z = style.integers();
        self.generators
            .iter()
            .map(|g| match g.order {
                None => format!("{z}{}", style.name(&g.name)),
                Some(n) => format!("{z}/{n}"),
            })
            .collect::<Vec<_>>()
            .join(style.direct_sum())
    }
}

/// `2ψ − σ`, `−6ρ`, `0`.
pub fn render_combination(coeffs: &[BigInt], entry: &CohomologyEntry, style: Style) -> String {
    let (lead, plus, minus) = match style {
        Style::Unicode => ("−", " + ", " − "),
        Style::Ascii => ("-", " + ", " - "),
    };
    let mut out = String::new();
    for (c, g) in coeffs.iter().zip(&entry.generators) {
        if c.is_zero() {
            continue;
        }
        match (out.is_empty(), c.is_negative()) {
            (true, true) => out.push_str(lead),
            (true, false) => {}
            (false, true) => out.push_str(minus),
            (false, false) => out.push_str(plus),
        }
        let abs = c.abs();
        if !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        out.push_str(&style.name(&g.name));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An arrow between named cohomology groups, induced by a map of spectra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedHom {
    pub source: Node,
    pub source_degree: u32,
    pub target: Node,
    pub target_degree: u32,
    pub source_entry: CohomologyEntry,
    pub target_entry: CohomologyEntry,
    pub hom: GroupHom,
    pub provenance: Provenance,
}

impl NamedHom {
    /// `("eu", "2ψ − σ")` for every source generator.
    pub fn assignments(&self, style: Style) -> Vec<(String, String)> {
        self.source_entry
            .generators
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let col = self.hom.matrix().column(j);
                (style.name(&g.name), render_combination(&col, &self.target_entry, style))
            })
            .collect()
    }

    pub fn render(&self, style: Style) -> String {
        let arrows: Vec<String> = self
            .assignments(style)
            .into_iter()
            .map(|(s, t)| format!("{s} {} {t}", style.maps_to()))
            .collect();
        if arrows.is_empty() {
            "0".to_string()
        } else {
            arrows.join(", ")
        }
    }

    /// Image of the generator `name`, in target coordinates.
    pub fn image_of(&self, name: &str) -> Option<Vec<BigInt>> {
        self.source_entry.index_of(name).map(|j| self.hom.matrix().column(j))
    }
}

/// `π_k Σ^d MTSO(d)` for `k <= d`.
pub fn homotopy_group(d: u8, k: u32) -> Result<FgAbGroup, SpectraError> {
    let g = match (d, k) {
        (1..=4, 0) => FgAbGroup::free(1),
        (1, 1) => FgAbGroup::cyclic(2),
        (2, 1) => FgAbGroup::trivial(),
        (2, 2) => FgAbGroup::free(1),
        (3, 1..=3) => FgAbGroup::trivial(),
        (4, 1..=3) => FgAbGroup::trivial(),
        (4, 4) => FgAbGroup::free(2),
        _ => return Err(SpectraError::OutOfTable(format!("π_{k} of Σ^{d}MTSO({d})"))),
    };
    Ok(g)
}

/// Oriented bordism `Ω_k` for `k <= 4`.
pub fn oriented_bordism(k: u32) -> Result<FgAbGroup, SpectraError> {
    match k {
        0 | 4 => Ok(FgAbGroup::free(1)),
        1..=3 => Ok(FgAbGroup::trivial()),
        _ => Err(SpectraError::OutOfTable(format!("Ω_{k}"))),
    }
}

/// `H^k(HZ; Z)` for `k <= 6`.
pub fn hz_self_cohomology(k: u32) -> Result<FgAbGroup, SpectraError> {
    match k {
        0 => Ok(FgAbGroup::free(1)),
        3 => Ok(FgAbGroup::cyclic(2)),
        5 => Ok(FgAbGroup::cyclic(6)),
        1 | 2 | 4 | 6 => Ok(FgAbGroup::trivial()),
        _ => Err(SpectraError::OutOfTable(format!("H^{k}(HZ)"))),
    }
}

/// An invariant of closed `d`-manifolds used to split `π_0 MTSO(d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingInvariant {
    /// `(χ + σ) / 2`
    HalfEulerPlusSignature,
    /// `χ / 2`
    HalfEuler,
    /// Kervaire semicharacteristic mod 2
    Semicharacteristic,
    /// The oriented bordism class, detected by the signature in dimension 4.
    Signature,
}

impl SplittingInvariant {
    pub fn render(self, style: Style) -> &'static str {
        match (self, style) {
            (Self::HalfEulerPlusSignature, Style::Unicode) => "½(χ+σ)",
            (Self::HalfEulerPlusSignature, Style::Ascii) => "(chi+sigma)/2",
            (Self::HalfEuler, Style::Unicode) => "½χ",
            (Self::HalfEuler, Style::Ascii) => "chi/2",
            (Self::Semicharacteristic, Style::Unicode) => "k_ℝ",
            (Self::Semicharacteristic, Style::Ascii) => "k_R",
            (Self::Signature, Style::Unicode) => "σ",
            (Self::Signature, Style::Ascii) => "sigma",
        }
    }
}

/// How `π_0 MTSO(d) = π_d Σ^d MTSO(d)` splits into a manifold invariant and
/// the oriented bordism class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub d: u8,
    pub group: FgAbGroup,
    pub invariants: Vec<SplittingInvariant>,
}

impl Splitting {
    pub fn render(&self, style: Style) -> String {
        if self.invariants.is_empty() {
            return "0".to_string();
        }
        let inv: Vec<&str> = self.invariants.iter().map(|i| i.render(style)).collect();
        format!("{} via ({})", self.group.render(style), inv.join(", "))
    }
}

pub fn vf_splitting(d: u8) -> Result<Splitting, SpectraError> {
    use SplittingInvariant::*;
    let mut invariants = match d % 4 {
        0 => vec![HalfEulerPlusSignature],
        2 => vec![HalfEuler],
        1 => vec![Semicharacteristic],
        _ => vec![],
    };
    let bordism = oriented_bordism(u32::from(d))?;
    if !bordism.is_trivial() {
        invariants.push(Signature);
    }
    let group = homotopy_group(d, u32::from(d))?;
    Ok(Splitting { d, group, invariants })
}

/// Whether `p_{>=a}` and `p_{>=b}` of `Σ^d MTSO(d)` agree, i.e. whether
/// `π_i` vanishes for `min(a, b) <= i < max(a, b)`.
pub fn grid_equivalence(d: u8, a: u8, b: u8) -> Result<bool, SpectraError> {
    SpectrumId::new(d, a)?;
    SpectrumId::new(d, b)?;
    let (lo, hi) = (a.min(b), a.max(b));
    for i in lo..hi {
        if !homotopy_group(d, u32::from(i))?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lowest cover level equivalent to `s` that has a stored or computed
/// cohomology (0 or 1).
pub fn resolve_cover(s: SpectrumId) -> Result<SpectrumId, SpectraError> {
    let tabulated = if s.d == 1 { 0..=0 } else { 0..=1 };
    for c in tabulated {
        if grid_equivalence(s.d, c, s.cover)? {
            return Ok(SpectrumId { d: s.d, cover: c });
        }
    }
    Err(SpectraError::Unsupported(format!(
        "{s} is not equivalent to a tabulated spectrum"
    )))
}

/// `HZ^k` of the spectrum, using the builtin table.
pub fn cohomology(s: SpectrumId, k: u32) -> Result<CohomologyEntry, SpectraError> {
    CertifiedTable::builtin().cohomology(s, k)
}

/// The map `HZ^k(Σ^d MTSO(d)) -> HZ^k(p≥1 Σ^d MTSO(d))`, using the builtin table.
pub fn cover_map(d: u8, k: u32) -> Result<NamedHom, SpectraError> {
    CertifiedTable::builtin().cover_map(d, k)
}

/// The restriction `HZ^k(X_d) -> HZ^k(X_{d-1})` along `Σ^{d-1}MTSO(d-1) -> Σ^d MTSO(d)`.
pub fn dimension_map(d: u8, cover: u8, k: u32) -> Result<NamedHom, SpectraError> {
    CertifiedTable::builtin().dimension_map(d, cover, k)
}

/// `H^k(Σ^d MTSO(d))` straight from the Thom isomorphism.
pub fn thom_cohomology(d: u8, k: u32) -> Result<CohomologyEntry, SpectraError> {
    Ok(charclasses::thom_module_piece(d, k)?)
}

pub(crate) fn hom_from_columns(
    source: &CohomologyEntry,
    target: &CohomologyEntry,
    columns: Vec<Vec<BigInt>>,
) -> Result<GroupHom, SpectraError> {
    let m = IntMatrix::from_columns(target.group.ngens(), &columns);
    Ok(GroupHom::new(source.group.clone(), target.group.clone(), m)?)
}
