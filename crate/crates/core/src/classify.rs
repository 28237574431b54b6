//! Invertible field theories: their parameter groups, the restriction maps
//! between levels of locality, and the mapping-class-group extension
//! dictionary in dimension three.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{smith_normal_form, units_kernel, FgAbGroup, IntMatrix, MAX_ENUMERATED_ORDER};
use crate::exact::{Multiplicative, Unit};
use crate::notation::Style;
use crate::spectra::{resolve_cover, CertifiedTable, CohomologyEntry, SpectraError, SpectrumId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// `H^d(p≥{d-n} Σ^d MTSO(d); C^x)` written as `(C^x)^r ⊕ finite`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoryGroup {
    pub d: u8,
    pub n: u8,
    pub spectrum: SpectrumId,
    pub unit_rank: usize,
    pub finite_part: FgAbGroup,
    pub basis_names: Vec<String>,
}

impl TheoryGroup {
    pub fn is_trivial(&self) -> bool {
        self.unit_rank == 0 && self.finite_part.is_trivial()
    }

    pub fn render(&self, style: Style) -> String {
        let mut parts = Vec::new();
        match self.unit_rank {
            0 => {}
            1 => parts.push(style.units().to_string()),
            r => parts.push(format!("({}){}", style.units(), style.power(r as i64))),
        }
        if !self.finite_part.is_trivial() {
            parts.push(self.finite_part.render(style));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts.join(style.direct_sum());
        if !self.basis_names.is_empty() {
            let names: Vec<_> = self.basis_names.iter().map(|n| style.name(n)).collect();
            out.push_str(&format!(" on ({})", names.join(", ")));
        }
        out
    }
}

/// One nonzero complex number per basis name of a [`TheoryGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoryParams {
    pub coords: Vec<Unit>,
}

impl TheoryParams {
    pub fn new(coords: Vec<Unit>) -> Self {
        Self { coords }
    }

    pub fn render(&self, style: Style) -> String {
        let parts: Vec<_> = self.coords.iter().map(|c| c.render(style)).collect();
        parts.join(", ")
    }

    /// Coordinatewise product.
    pub fn times(&self, other: &TheoryParams) -> TheoryParams {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.mul(b)).collect();
        TheoryParams { coords }
    }
}

/// Exponent matrix of a restriction: row `i` is a source basis element,
/// column `j` a target one, and `t_j = prod_i s_i^{matrix[i][j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionMatrix {
    pub source_names: Vec<String>,
    pub target_names: Vec<String>,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: IntMatrix,
}

fn serialize_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    rows.serialize(s)
}

/// `{(ζ^e_1, ..., ζ^e_r) : ζ^order = 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicGenerator {
    pub order: u32,
    pub exponents: Vec<i64>,
}

/// The kernel of a restriction map on parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionKernel {
    pub group: FgAbGroup,
    /// Present when the kernel is finite cyclic.
    pub generator: Option<CyclicGenerator>,
    /// Every kernel element, when the kernel is finite and small.
    pub elements: Option<Vec<TheoryParams>>,
}

impl RestrictionKernel {
    pub fn render(&self, style: Style) -> String {
        if self.group.is_trivial() {
            return "0".into();
        }
        let group = self.group.render(style);
        let Some(CyclicGenerator {
            order: m,
            exponents: exps,
        }) = &self.generator
        else {
            return group;
        };
        let zeta = if style == Style::Unicode { "ζ" } else { "zeta" };
        let coords: Vec<String> = exps
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => zeta.to_string(),
                e => format!("{zeta}{}", style.power(e)),
            })
            .collect();
        let eq = format!("{zeta}{}=1", style.power(i64::from(*m)));
        format!("{group}: ({}), {eq}", coords.join(", "))
    }
}

impl fmt::Display for RestrictionKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Unicode))
    }
}

fn check_level(d: u8, n: u8) -> Result<SpectrumId, ClassifyError> {
    if !(1..=4).contains(&d) || n == 0 || n > d {
        return Err(ClassifyError::OutOfRange(format!(
            "need 1 <= n <= d <= 4, got d={d}, n={n}"
        )));
    }
    Ok(resolve_cover(SpectrumId::new(d, d - n)?)?)
}

fn free_names(entry: &CohomologyEntry) -> Vec<String> {
    entry
        .generators
        .iter()
        .filter(|g| g.order.is_none())
        .map(|g| g.name.clone())
        .collect()
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("exponent fits in i64")
}

impl CertifiedTable {
    pub fn classify(&self, d: u8, n: u8) -> Result<TheoryGroup, ClassifyError> {
        let spectrum = check_level(d, n)?;
        let top = self.cohomology(spectrum, u32::from(d))?;
        let above = self.cohomology(spectrum, u32::from(d) + 1)?;
        Ok(TheoryGroup {
            d,
            n,
            spectrum,
            unit_rank: top.group.free_rank(),
            finite_part: above.group.torsion_subgroup(),
            basis_names: free_names(&top),
        })
    }

    /// Exponent matrix of the restriction from `(d; from)` theories to
    /// `(d; to)` theories, on free generators.
    pub fn restriction_matrix(&self, d: u8, from: u8, to: u8) -> Result<RestrictionMatrix, ClassifyError> {
        if to > from {
            return Err(ClassifyError::OutOfRange(format!(
                "restriction needs to <= from, got {from} -> {to}"
            )));
        }
        let s = check_level(d, from)?;
        let t = check_level(d, to)?;
        let k = u32::from(d);
        let source = self.cohomology(s, k)?;
        let target = self.cohomology(t, k)?;
        let source_names = free_names(&source);
        let target_names = free_names(&target);
        if s == t {
            let n = source_names.len();
            return Ok(RestrictionMatrix {
                source_names,
                target_names,
                matrix: IntMatrix::identity(n),
            });
        }
        let hom = self.cover_map(d, k)?.hom;
        let rows: Vec<usize> = (0..target.group.free_rank()).collect();
        let cols: Vec<usize> = (0..source.group.free_rank()).collect();
        let matrix = hom.matrix().select_rows(&rows).select_cols(&cols).transpose();
        Ok(RestrictionMatrix {
            source_names,
            target_names,
            matrix,
        })
    }

    pub fn restrict_theory(
        &self,
        d: u8,
        from: u8,
        to: u8,
        params: &TheoryParams,
    ) -> Result<TheoryParams, ClassifyError> {
        let a = self.restriction_matrix(d, from, to)?;
        if params.coords.len() != a.matrix.rows() {
            return Err(ClassifyError::ParameterCount {
                expected: a.matrix.rows(),
                got: params.coords.len(),
            });
        }
        let coords = (0..a.matrix.cols())
            .map(|j| {
                params
                    .coords
                    .iter()
                    .enumerate()
                    .fold(Unit::one(), |acc, (i, s)| acc.mul(&s.pow(small(&a.matrix[(i, j)]))))
            })
            .collect();
        Ok(TheoryParams { coords })
    }

    pub fn restriction_kernel(&self, d: u8, from: u8, to: u8) -> Result<RestrictionKernel, ClassifyError> {
        let a = self.restriction_matrix(d, from, to)?.matrix;
        Ok(kernel_of_exponents(&a))
    }
}

/// Kernel of `s -> (prod_i s_i^{a[i][j]})_j` on `(C^x)^rows`, with explicit
/// roots of unity when it is finite.
///
/// With `u a v = diag(d_i)`, row `i` of `u` divided by `d_i` pairs to an
/// integer with every column of `a`, so it is a character of the cokernel.
pub fn kernel_of_exponents(a: &IntMatrix) -> RestrictionKernel {
    let group = units_kernel(a);
    if !group.is_finite() {
        return RestrictionKernel {
            group,
            generator: None,
            elements: None,
        };
    }
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let cyclic: Vec<(u32, Vec<i64>)> = diag
        .iter()
        .enumerate()
        .filter(|(_, d)| *d > &BigInt::one())
        .map(|(i, d)| {
            let m = d.to_u32().expect("kernel order fits in u32");
            let exps = snf.u.row(i).iter().map(|x| small(&x.mod_floor(d))).collect();
            (m, exps)
        })
        .collect();

    let generator = match cyclic.as_slice() {
        [(m, exps)] => Some(CyclicGenerator {
            order: *m,
            exponents: normalize_generator(*m, exps),
        }),
        _ => None,
    };
    let order = group.order().and_then(|o| o.to_u64()).unwrap_or(u64::MAX);
    let elements = (order <= MAX_ENUMERATED_ORDER).then(|| {
        let rows = a.rows();
        let mut out = vec![TheoryParams {
            coords: vec![Unit::one(); rows],
        }];
        let factors: Vec<(u32, Vec<i64>)> = match &generator {
            Some(g) => vec![(g.order, g.exponents.clone())],
            None => cyclic.clone(),
        };
        for (m, exps) in factors {
            let step = TheoryParams {
                coords: exps.iter().map(|&e| Unit::root_of_unity(m, e)).collect(),
            };
            let mut next = Vec::new();
            for base in &out {
                let mut x = base.clone();
                for _ in 0..m {
                    next.push(x.clone());
                    x = x.times(&step);
                }
            }
            out = next;
        }
        out
    });
    RestrictionKernel {
        group,
        generator,
        elements,
    }
}

/// Rescale a generator so its first coordinate with invertible exponent is `ζ` itself.
fn normalize_generator(m: u32, exps: &[i64]) -> Vec<i64> {
    let m = i64::from(m);
    let Some(unit) = exps.iter().find(|e| e.gcd(&m).is_one()) else {
        return exps.to_vec();
    };
    let inv = (1..m).find(|x| (x * unit).mod_floor(&m) == 1).unwrap_or(1);
    exps.iter().map(|e| (e * inv).mod_floor(&m)).collect()
}

/// The class `ρ` induces twice the generator of `H^2(Γ; Z)` on every
/// mapping class group.
pub const RHO_TO_MAPPING_CLASS: i64 = 2;

/// A class `n·ρ` in `HZ^4(p≥2 Σ^3 MTSO(3)) ≅ Z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExtensionClass {
    #[serde(serialize_with = "serialize_big")]
    pub rho_multiple: BigInt,
}

fn serialize_big<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl ExtensionClass {
    pub fn new(n: impl Into<BigInt>) -> Self {
        Self { rho_multiple: n.into() }
    }

    pub fn render(&self, style: Style) -> String {
        let rho = style.name("rho");
        match self.rho_multiple.to_i64() {
            Some(0) => "0".into(),
            Some(1) => rho,
            Some(-1) => format!("-{rho}"),
            _ => format!("{}{rho}", self.rho_multiple),
        }
    }
}

impl std::ops::Add for &ExtensionClass {
    type Output = ExtensionClass;

    fn add(self, other: &ExtensionClass) -> ExtensionClass {
        ExtensionClass::new(&self.rho_multiple + &other.rho_multiple)
    }
}

/// The multiple of the generator of `H^2(Γ; Z)` induced on mapping class groups.
pub fn mcg_extension_class(x: &ExtensionClass) -> BigInt {
    &x.rho_multiple * RHO_TO_MAPPING_CLASS
}

/// Whether some class `nρ` induces `target` times the generator.
pub fn mcg_class_realizable(target: &BigInt) -> bool {
    target.is_multiple_of(&BigInt::from(RHO_TO_MAPPING_CLASS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DictionaryEntry {
    pub name: String,
    pub label: String,
    pub class: ExtensionClass,
    #[serde(serialize_with = "serialize_big")]
    pub mcg_class: BigInt,
}

/// Why no `Z`-central extension of the 3d bordism category restricts to the
/// fundamental extension of the mapping class groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GilmerMasbaumReport {
    pub spectrum: SpectrumId,
    pub group: CohomologyEntry,
    pub dictionary: Vec<DictionaryEntry>,
    pub atiyah_class: ExtensionClass,
    pub walker_class: ExtensionClass,
    pub gilmer_class: ExtensionClass,
    pub fundamental_realizable: bool,
    pub index_four_in_walker_realizable: bool,
    pub argument: String,
}

impl GilmerMasbaumReport {
    pub fn render(&self, style: Style) -> String {
        let mut out = format!(
            "{} = {}\n",
            crate::spectra::Node::Spectrum(self.spectrum).cohomology_label(4, style),
            self.group.render(style)
        );
        for e in &self.dictionary {
            out.push_str(&format!(
                "{} ({}): {} {} {}\n",
                e.name,
                style.name(&e.label),
                e.class.render(style),
                style.maps_to(),
                e.mcg_class
            ));
        }
        out.push_str(&self.argument);
        out.push('\n');
        let verdict = |ok: bool| if ok { "possible" } else { "impossible" };
        out.push_str(&format!(
            "fundamental extension: {}\n",
            verdict(self.fundamental_realizable)
        ));
        out.push_str(&format!(
            "index-4 subcategory of Walker's category: {}\n",
            verdict(self.index_four_in_walker_realizable)
        ));
        out
    }
}

impl CertifiedTable {
    pub fn gilmer_masbaum_report(&self) -> Result<GilmerMasbaumReport, ClassifyError> {
        let spectrum = SpectrumId::new(3, 2)?;
        let group = self.cohomology(spectrum, 4)?;
        if group.group != FgAbGroup::free(1) {
            return Err(ClassifyError::Spectra(SpectraError::Unsupported(format!(
                "expected a single integral class, found {}",
                group.group
            ))));
        }
        let multiple = |hom: crate::spectra::NamedHom, name: &str| -> Result<ExtensionClass, ClassifyError> {
            let img = hom
                .image_of(name)
                .ok_or_else(|| SpectraError::Unsupported(format!("{name} has no recorded image")))?;
            Ok(ExtensionClass::new(img[0].clone()))
        };
        let atiyah_class = multiple(self.cover_map(3, 4)?, "p1u")?;
        let walker_class = multiple(self.dimension_map(4, 1, 4)?, "sigma")?;
        let gilmer_class = ExtensionClass::new(1);
        let entry = |name: &str, label: &str, class: &ExtensionClass| DictionaryEntry {
            name: name.into(),
            label: label.into(),
            class: class.clone(),
            mcg_class: mcg_extension_class(class),
        };
        let dictionary = vec![
            entry("Atiyah", "p1", &atiyah_class),
            entry("Walker", "sigma", &walker_class),
            entry("Gilmer", "rho", &gilmer_class),
        ];
        let walker_mcg = mcg_extension_class(&walker_class);
        let index_four = if walker_mcg.is_multiple_of(&BigInt::from(4)) {
            mcg_class_realizable(&(walker_mcg / 4))
        } else {
            false
        };
        let argument = format!(
            "every class nρ induces {RHO_TO_MAPPING_CLASS}n times the generator of H²(Γ; ℤ), so only even classes occur"
        );
        Ok(GilmerMasbaumReport {
            spectrum,
            group,
            dictionary,
            atiyah_class,
            walker_class,
            gilmer_class,
            fundamental_realizable: mcg_class_realizable(&BigInt::one()),
            index_four_in_walker_realizable: index_four,
            argument,
        })
    }
}

pub fn classify(d: u8, n: u8) -> Result<TheoryGroup, ClassifyError> {
    CertifiedTable::builtin().classify(d, n)
}

pub fn restriction_matrix(d: u8, from: u8, to: u8) -> Result<RestrictionMatrix, ClassifyError> {
    CertifiedTable::builtin().restriction_matrix(d, from, to)
}

pub fn restrict_theory(d: u8, from: u8, to: u8, params: &TheoryParams) -> Result<TheoryParams, ClassifyError> {
    CertifiedTable::builtin().restrict_theory(d, from, to, params)
}

pub fn restriction_kernel(d: u8, from: u8, to: u8) -> Result<RestrictionKernel, ClassifyError> {
    CertifiedTable::builtin().restriction_kernel(d, from, to)
}

pub fn gilmer_masbaum_report() -> Result<GilmerMasbaumReport, ClassifyError> {
    CertifiedTable::builtin().gilmer_masbaum_report()
}
