use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::TftError;

pub const CATALOG_VERSION: u32 = 1;
const HEADER: &str = "mtspec-catalog";
const BUILTIN: &str = include_str!("../../data/manifolds.txt");

/// A closed oriented manifold, remembered only through the invariants
/// that invertible theories and vector-field bordism can detect.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ManifoldClass {
    pub name: String,
    pub dim: u8,
    pub euler: i64,
    pub signature: i64,
    pub p1_number: i64,
    /// Kervaire semicharacteristic, for dimensions `1 mod 4`.
    pub kr: Option<u8>,
}

impl ManifoldClass {
    pub fn new(
        name: impl Into<String>,
        dim: u8,
        euler: i64,
        signature: i64,
        p1_number: i64,
        kr: Option<u8>,
    ) -> Result<Self, TftError> {
        let m = Self {
            name: name.into(),
            dim,
            euler,
            signature,
            p1_number,
            kr,
        };
        m.validate()?;
        Ok(m)
    }

    /// A 4-manifold whose `p1`-number is `3σ` by the signature theorem.
    pub fn with_signature_theorem(name: impl Into<String>, euler: i64, signature: i64) -> Result<Self, TftError> {
        Self::new(name, 4, euler, signature, 3 * signature, None)
    }

    pub fn surface(genus: u32) -> Self {
        Self {
            name: format!("Sigma_{genus}"),
            dim: 2,
            euler: 2 - 2 * i64::from(genus),
            signature: 0,
            p1_number: 0,
            kr: None,
        }
    }

    /// `S^2 × Σ_g`.
    pub fn sphere_times_surface(genus: u32) -> Self {
        Self {
            name: format!("S2xSigma_{genus}"),
            dim: 4,
            euler: 2 * (2 - 2 * i64::from(genus)),
            signature: 0,
            p1_number: 0,
            kr: None,
        }
    }

    fn validate(&self) -> Result<(), TftError> {
        let bad = |why: &str| Err(TftError::InvalidManifold(format!("{}: {why}", self.name)));
        if !(1..=4).contains(&self.dim) {
            return bad("dimension must be 1..4");
        }
        if self.dim % 2 == 1 && self.euler != 0 {
            return bad("odd-dimensional closed manifolds have χ = 0");
        }
        if self.dim == 2 && self.euler % 2 != 0 {
            return bad("closed oriented surfaces have even χ");
        }
        if self.dim != 4 && (self.signature != 0 || self.p1_number != 0) {
            return bad("σ and p₁ are only recorded in dimension 4");
        }
        if self.dim == 4 && (self.euler + self.signature) % 2 != 0 {
            return bad("χ + σ must be even");
        }
        match self.kr {
            Some(k) if k > 1 => bad("k_ℝ is a class mod 2"),
            Some(_) if self.dim % 4 != 1 => bad("k_ℝ is only recorded in dimensions 1 mod 4"),
            _ => Ok(()),
        }
    }

    pub fn disjoint_union(&self, other: &ManifoldClass) -> Result<ManifoldClass, TftError> {
        same_dim(self, other)?;
        let kr = match (self.kr, other.kr) {
            (Some(a), Some(b)) => Some((a + b) % 2),
            _ => None,
        };
        Self::new(
            format!("{}+{}", self.name, other.name),
            self.dim,
            self.euler + other.euler,
            self.signature + other.signature,
            self.p1_number + other.p1_number,
            kr,
        )
    }

    /// Defined in dimensions 2 and 4, where `χ(a # b) = χ(a) + χ(b) - 2`.
    pub fn connected_sum(&self, other: &ManifoldClass) -> Result<ManifoldClass, TftError> {
        same_dim(self, other)?;
        if self.dim != 2 && self.dim != 4 {
            return Err(TftError::Unsupported(format!(
                "connected sum in dimension {}",
                self.dim
            )));
        }
        Self::new(
            format!("{}#{}", self.name, other.name),
            self.dim,
            self.euler + other.euler - 2,
            self.signature + other.signature,
            self.p1_number + other.p1_number,
            None,
        )
    }
}

impl fmt::Display for ManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, χ={}", self.name, self.dim, self.euler)?;
        if self.dim == 4 {
            write!(f, ", σ={}, p₁={}", self.signature, self.p1_number)?;
        }
        if let Some(k) = self.kr {
            write!(f, ", k_ℝ={k}")?;
        }
        f.write_str(")")
    }
}

fn same_dim(a: &ManifoldClass, b: &ManifoldClass) -> Result<(), TftError> {
    if a.dim != b.dim {
        return Err(TftError::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(())
}

/// Named manifolds plus the genus families `Sigma_<g>` and `S2xSigma_<g>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    entries: BTreeMap<String, (ManifoldClass, bool)>,
    order: Vec<String>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, TftError> {
        let syntax = |line: usize, msg: String| TftError::Catalog(format!("line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        if header != format!("{HEADER} {CATALOG_VERSION}") {
            return Err(TftError::Catalog(format!(
                "expected header `{HEADER} {CATALOG_VERSION}`, found `{header}`"
            )));
        }
        let mut catalog = Catalog {
            entries: BTreeMap::new(),
            order: Vec::new(),
        };
        for (n, l) in lines {
            let tokens: Vec<&str> = l.split_whitespace().collect();
            if tokens[0] != "manifold" || tokens.len() < 3 {
                return Err(syntax(n, format!("expected `manifold <name> <dim> ...`, found `{l}`")));
            }
            let name = tokens[1];
            if Catalog::family_member(name).is_some() {
                return Err(syntax(n, format!("`{name}` belongs to a generated family")));
            }
            let dim: u8 = tokens[2].parse().map_err(|_| syntax(n, "bad dimension".into()))?;
            let (mut chi, mut sigma, mut p1, mut kr, mut hirzebruch) = (None, 0, 0, None, false);
            for t in &tokens[3..] {
                let (key, value) = t.split_once('=').ok_or_else(|| syntax(n, format!("bad field `{t}`")))?;
                let int = || {
                    value
                        .parse::<i64>()
                        .map_err(|_| syntax(n, format!("bad value in `{t}`")))
                };
                match key {
                    "chi" => chi = Some(int()?),
                    "sigma" => sigma = int()?,
                    "p1" if value == "3sigma" => hirzebruch = true,
                    "p1" => p1 = int()?,
                    "kr" => kr = Some(u8::try_from(int()?).map_err(|_| syntax(n, "bad k_ℝ".into()))?),
                    other => return Err(syntax(n, format!("unknown field `{other}`"))),
                }
            }
            let chi = chi.ok_or_else(|| syntax(n, "missing chi".into()))?;
            if hirzebruch {
                p1 = 3 * sigma;
            }
            let m = ManifoldClass::new(name, dim, chi, sigma, p1, kr).map_err(|e| syntax(n, e.to_string()))?;
            if catalog.entries.insert(name.to_string(), (m, hirzebruch)).is_some() {
                return Err(syntax(n, format!("duplicate entry `{name}`")));
            }
            catalog.order.push(name.to_string());
        }
        Ok(catalog)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TftError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| TftError::Catalog(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("builtin catalog parses"))
    }

    pub fn render(&self) -> String {
        let mut out = format!("{HEADER} {CATALOG_VERSION}\n");
        for name in &self.order {
            let (m, hirzebruch) = &self.entries[name];
            out.push_str(&format!("manifold {} {} chi={}", m.name, m.dim, m.euler));
            if m.dim == 4 {
                out.push_str(&format!(" sigma={}", m.signature));
                if *hirzebruch {
                    out.push_str(" p1=3sigma");
                } else {
                    out.push_str(&format!(" p1={}", m.p1_number));
                }
            }
            if let Some(k) = m.kr {
                out.push_str(&format!(" kr={k}"));
            }
            out.push('\n');
        }
        out
    }

    fn family_member(name: &str) -> Option<ManifoldClass> {
        let genus = |s: &str| s.parse::<u32>().ok().filter(|g| *g <= 1_000_000);
        if let Some(g) = name.strip_prefix("S2xSigma_").and_then(genus) {
            return Some(ManifoldClass::sphere_times_surface(g));
        }
        name.strip_prefix("Sigma_").and_then(genus).map(ManifoldClass::surface)
    }

    pub fn get(&self, name: &str) -> Result<ManifoldClass, TftError> {
        if let Some((m, _)) = self.entries.get(name) {
            return Ok(m.clone());
        }
        Self::family_member(name).ok_or_else(|| TftError::UnknownManifold(name.to_string()))
    }

    /// Whether the entry's `p1`-number was filled in from the signature theorem.
    pub fn uses_signature_theorem(&self, name: &str) -> bool {
        self.entries.get(name).is_some_and(|(_, h)| *h)
    }

    /// Explicit entries in file order.
    pub fn entries(&self) -> impl Iterator<Item = &ManifoldClass> {
        self.order.iter().map(|n| &self.entries[n].0)
    }

    /// Explicit entries plus the family members of genus `0..=max_genus`.
    pub fn with_families(&self, max_genus: u32) -> Vec<ManifoldClass> {
        let mut out: Vec<_> = self.entries().cloned().collect();
        for g in 0..=max_genus {
            out.push(ManifoldClass::surface(g));
            out.push(ManifoldClass::sphere_times_surface(g));
        }
        out
    }

    /// Parses `CP2 # CP2`, `S4 + K3 # T4`: `#` is connected sum and binds
    /// tighter than `+`, which is disjoint union.
    pub fn parse_expression(&self, expr: &str) -> Result<ManifoldClass, TftError> {
        let mut total: Option<ManifoldClass> = None;
        for part in expr.split('+') {
            let mut summed: Option<ManifoldClass> = None;
            for name in part.split('#') {
                let name = name.trim();
                if name.is_empty() {
                    return Err(TftError::Parse(format!("empty operand in `{expr}`")));
                }
                let m = self.get(name)?;
                summed = Some(match summed {
                    None => m,
                    Some(acc) => acc.connected_sum(&m)?,
                });
            }
            let m = summed.expect("split yields at least one piece");
            total = Some(match total {
                None => m,
                Some(acc) => acc.disjoint_union(&m)?,
            });
        }
        Ok(total.expect("split yields at least one piece"))
    }
}

pub fn standard_manifolds() -> &'static Catalog {
    Catalog::builtin()
}
