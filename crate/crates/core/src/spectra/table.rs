use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    hom_from_columns, resolve_cover, thom_cohomology, CohomologyEntry, NamedGenerator, NamedHom, Node, SpectraError,
    SpectrumId, MAX_COHOMOLOGY_DEGREE,
};
use crate::abelian::{FgAbGroup, GroupHom};

pub const TABLE_VERSION: u32 = 1;
const HEADER: &str = "mtspec-table";
const BUILTIN: &str = include_str!("../../data/cohomology_table.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("cannot read table: {0}")]
    Io(String),
    #[error("expected header `{HEADER} {TABLE_VERSION}`, found `{0}`")]
    Version(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Drawn directly in the restriction diagram or stated in the text.
    Stated,
    /// Forced by exactness or commutativity of the recorded data.
    Derived,
    /// Zero because the source or target vanishes.
    Implied,
    /// Identity along an equivalence of covers.
    Equivalence,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Stated => "stated",
            Provenance::Derived => "derived",
            Provenance::Implied => "implied",
            Provenance::Equivalence => "equivalence",
        }
    }
}

/// A recorded arrow: each source generator and the integer combination of
/// target generators it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapRecord {
    pub source: Node,
    pub target: Node,
    pub degree: u32,
    pub provenance: Provenance,
    pub assignments: Vec<(String, Vec<(BigInt, String)>)>,
}

impl MapRecord {
    /// Connecting maps `P -> HZ` raise degree by one.
    pub fn target_degree(&self) -> u32 {
        target_degree(self.source, self.target, self.degree)
    }
}

fn target_degree(source: Node, target: Node, degree: u32) -> u32 {
    match (source, target) {
        (Node::Spectrum(s), Node::Hz) if s.cover > 0 => degree + 1,
        _ => degree,
    }
}

/// The stored cohomology rows and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedTable {
    order: Vec<(Node, u32)>,
    groups: BTreeMap<(Node, u32), CohomologyEntry>,
    maps: Vec<MapRecord>,
}

fn syntax(line: usize, message: impl Into<String>) -> TableError {
    TableError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_group(spec: &str, line: usize) -> Result<FgAbGroup, TableError> {
    if spec == "0" {
        return Ok(FgAbGroup::trivial());
    }
    let mut free = 0;
    let mut orders: Vec<u64> = Vec::new();
    for part in spec.split('+') {
        match part.strip_prefix("Z/") {
            Some(n) => orders.push(n.parse().map_err(|_| syntax(line, format!("bad summand `{part}`")))?),
            None if part == "Z" => free += 1,
            None => return Err(syntax(line, format!("bad summand `{part}`"))),
        }
    }
    Ok(FgAbGroup::new(free, orders))
}

fn group_spec(g: &FgAbGroup) -> String {
    g.render(crate::notation::Style::Ascii)
}

fn parse_generators(tokens: &[&str], line: usize) -> Result<Vec<NamedGenerator>, TableError> {
    tokens
        .iter()
        .map(|t| match t.split_once(':') {
            Some((name, order)) => order
                .parse()
                .map(|o| NamedGenerator::torsion(name, o))
                .map_err(|_| syntax(line, format!("bad torsion order in `{t}`"))),
            None => Ok(NamedGenerator::free(t)),
        })
        .collect()
}

/// `2psi-sigma` -> `[(2, psi), (-1, sigma)]`; `0` -> `[]`.
pub(crate) fn parse_combination(s: &str) -> Option<Vec<(BigInt, String)>> {
    if s == "0" {
        return Some(Vec::new());
    }
    let mut terms = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ if terms.is_empty() => (1, rest),
            _ => return None,
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        let digits = term.chars().take_while(char::is_ascii_digit).count();
        let coeff: BigInt = if digits == 0 {
            BigInt::one()
        } else {
            term[..digits].parse().ok()?
        };
        let name = &term[digits..];
        if name.is_empty() {
            return None;
        }
        terms.push((coeff * sign, name.to_string()));
        rest = &body[end..];
    }
    Some(terms)
}

fn render_combination_ascii(terms: &[(BigInt, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, name)) in terms.iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        if !c.abs().is_one() {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(name);
    }
    out
}

impl CertifiedTable {
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        if header != format!("{HEADER} {TABLE_VERSION}") {
            return Err(TableError::Version(header.to_string()));
        }
        let mut table = CertifiedTable {
            order: Vec::new(),
            groups: BTreeMap::new(),
            maps: Vec::new(),
        };
        for (n, l) in lines {
            let tokens: Vec<&str> = l.split_whitespace().collect();
            match tokens[0] {
                "group" | "hz" => {
                    let (node, rest) = if tokens[0] == "hz" {
                        (Node::Hz, &tokens[1..])
                    } else {
                        let node = tokens
                            .get(1)
                            .and_then(|t| Node::parse_token(t))
                            .filter(|n| *n != Node::Hz)
                            .ok_or_else(|| syntax(n, "expected a spectrum token such as E4 or P3"))?;
                        (node, &tokens[2..])
                    };
                    if rest.len() < 2 {
                        return Err(syntax(n, "expected a degree and a group"));
                    }
                    let k: u32 = rest[0].parse().map_err(|_| syntax(n, "bad degree"))?;
                    let group = parse_group(rest[1], n)?;
                    let gens = parse_generators(&rest[2..], n)?;
                    let entry = CohomologyEntry::new(group, gens).map_err(|e| syntax(n, e.to_string()))?;
                    if table.groups.insert((node, k), entry).is_some() {
                        return Err(syntax(n, format!("duplicate row for {node} in degree {k}")));
                    }
                    table.order.push((node, k));
                }
                "map" => {
                    if tokens.len() < 5 {
                        return Err(syntax(n, "expected `map <source> <target> <degree> <provenance> ...`"));
                    }
                    let source = Node::parse_token(tokens[1]).ok_or_else(|| syntax(n, "bad source"))?;
                    let target = Node::parse_token(tokens[2]).ok_or_else(|| syntax(n, "bad target"))?;
                    let degree: u32 = tokens[3].parse().map_err(|_| syntax(n, "bad degree"))?;
                    let provenance = match tokens[4] {
                        "stated" => Provenance::Stated,
                        "derived" => Provenance::Derived,
                        other => return Err(syntax(n, format!("unknown provenance `{other}`"))),
                    };
                    let assignments = tokens[5..]
                        .iter()
                        .map(|a| {
                            let (g, img) = a
                                .split_once('=')
                                .ok_or_else(|| syntax(n, format!("bad assignment `{a}`")))?;
                            let img = parse_combination(img).ok_or_else(|| syntax(n, format!("bad image `{img}`")))?;
                            Ok((g.to_string(), img))
                        })
                        .collect::<Result<Vec<_>, TableError>>()?;
                    let record = MapRecord {
                        source,
                        target,
                        degree,
                        provenance,
                        assignments,
                    };
                    if table.find_record(source, target, degree).is_some() {
                        return Err(syntax(n, "duplicate map"));
                    }
                    table.maps.push(record);
                    let idx = table.maps.len() - 1;
                    table.build_record(idx).map_err(|e| syntax(n, e.to_string()))?;
                }
                other => return Err(syntax(n, format!("unknown record `{other}`"))),
            }
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TableError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| TableError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    /// The table shipped with the crate.
    pub fn builtin() -> &'static CertifiedTable {
        static TABLE: OnceLock<CertifiedTable> = OnceLock::new();
        TABLE.get_or_init(|| CertifiedTable::parse(BUILTIN).expect("builtin table parses"))
    }

    pub fn builtin_text() -> &'static str {
        BUILTIN
    }

    /// Canonical text form; `parse(render(t)) == t`.
    pub fn render(&self) -> String {
        let mut out = format!("{HEADER} {TABLE_VERSION}\n");
        for key in &self.order {
            let (node, k) = key;
            let e = &self.groups[key];
            let lead = match node {
                Node::Hz => format!("hz {k}"),
                n => format!("group {} {k}", n.token()),
            };
            let _ = write!(out, "{lead} {}", group_spec(&e.group));
            for g in &e.generators {
                match g.order {
                    Some(o) => {
                        let _ = write!(out, " {}:{o}", g.name);
                    }
                    None => {
                        let _ = write!(out, " {}", g.name);
                    }
                }
            }
            out.push('\n');
        }
        for m in &self.maps {
            let _ = write!(
                out,
                "map {} {} {} {}",
                m.source.token(),
                m.target.token(),
                m.degree,
                m.provenance.as_str()
            );
            for (g, img) in &m.assignments {
                let _ = write!(out, " {g}={}", render_combination_ascii(img));
            }
            out.push('\n');
        }
        out
    }

    /// Stored rows, in file order.
    pub fn rows(&self) -> impl Iterator<Item = (Node, u32, &CohomologyEntry)> {
        self.order.iter().map(|key| (key.0, key.1, &self.groups[key]))
    }

    pub fn maps(&self) -> &[MapRecord] {
        &self.maps
    }

    pub fn entry(&self, node: Node, k: u32) -> Option<&CohomologyEntry> {
        self.groups.get(&(node, k))
    }

    fn find_record(&self, source: Node, target: Node, degree: u32) -> Option<&MapRecord> {
        self.maps
            .iter()
            .find(|m| m.source == source && m.target == target && m.degree == degree)
    }

    fn stored(&self, node: Node, k: u32) -> Result<CohomologyEntry, SpectraError> {
        self.entry(node, k)
            .cloned()
            .ok_or_else(|| SpectraError::OutOfTable(format!("no row for {node} in degree {k}")))
    }

    /// `HZ^k` of the spectrum. Uncovered spectra are computed from the Thom
    /// isomorphism, covers are read from the table, and higher covers are
    /// first moved down the grid of equivalences.
    pub fn cohomology(&self, s: SpectrumId, k: u32) -> Result<CohomologyEntry, SpectraError> {
        SpectrumId::new(s.d, s.cover)?;
        if k > MAX_COHOMOLOGY_DEGREE {
            return Err(SpectraError::OutOfTable(format!(
                "degree {k} > {MAX_COHOMOLOGY_DEGREE}"
            )));
        }
        let r = resolve_cover(s)?;
        if r.cover == 0 {
            thom_cohomology(r.d, k)
        } else {
            self.entry(Node::Spectrum(r), k)
                .cloned()
                .ok_or_else(|| SpectraError::Unsupported(format!("no tabulated cohomology for {r}")))
        }
    }

    /// `HZ^k(HZ)` with its generator name.
    pub fn hz_entry(&self, k: u32) -> Result<CohomologyEntry, SpectraError> {
        self.stored(Node::Hz, k)
    }

    fn node_entry(&self, node: Node, k: u32) -> Result<CohomologyEntry, SpectraError> {
        match node {
            Node::Hz => self.hz_entry(k),
            Node::Spectrum(s) => self.cohomology(s, k),
        }
    }

    fn build_record(&self, idx: usize) -> Result<NamedHom, SpectraError> {
        let m = &self.maps[idx];
        let td = m.target_degree();
        let src = self.stored(m.source, m.degree)?;
        let tgt = self.stored(m.target, td)?;
        let mut columns = vec![None; src.generators.len()];
        for (g, img) in &m.assignments {
            let j = src
                .index_of(g)
                .ok_or_else(|| SpectraError::Unsupported(format!("{g} is not a generator of {}", m.source)))?;
            if columns[j].is_some() {
                return Err(SpectraError::Unsupported(format!("{g} is assigned twice")));
            }
            let mut col = vec![BigInt::zero(); tgt.generators.len()];
            for (c, name) in img {
                let i = tgt
                    .index_of(name)
                    .ok_or_else(|| SpectraError::Unsupported(format!("{name} is not a generator of {}", m.target)))?;
                col[i] += c;
            }
            columns[j] = Some(col);
        }
        let columns = columns
            .into_iter()
            .enumerate()
            .map(|(j, c)| {
                c.ok_or_else(|| SpectraError::Unsupported(format!("no image for {}", src.generators[j].name)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let hom = hom_from_columns(&src, &tgt, columns)?;
        Ok(NamedHom {
            source: m.source,
            source_degree: m.degree,
            target: m.target,
            target_degree: td,
            source_entry: src,
            target_entry: tgt,
            hom,
            provenance: m.provenance,
        })
    }

    /// The arrow `source -> target` starting in degree `k`: a recorded one,
    /// or the zero map when either side vanishes.
    pub fn map(&self, source: Node, target: Node, k: u32) -> Result<NamedHom, SpectraError> {
        if let Some(idx) = self
            .maps
            .iter()
            .position(|m| m.source == source && m.target == target && m.degree == k)
        {
            return self.build_record(idx);
        }
        let td = target_degree(source, target, k);
        let src = self.node_entry(source, k)?;
        let tgt = self.node_entry(target, td)?;
        if src.is_zero() || tgt.is_zero() {
            let hom = GroupHom::zero(src.group.clone(), tgt.group.clone());
            return Ok(NamedHom {
                source,
                source_degree: k,
                target,
                target_degree: td,
                source_entry: src,
                target_entry: tgt,
                hom,
                provenance: Provenance::Implied,
            });
        }
        Err(SpectraError::NotRecorded {
            from: source.token(),
            target: target.token(),
            degree: k,
        })
    }

    pub fn cover_map(&self, d: u8, k: u32) -> Result<NamedHom, SpectraError> {
        if !(2..=4).contains(&d) {
            return Err(SpectraError::Unsupported(format!(
                "no connected cover of Σ^{d}MTSO({d}) is tabulated"
            )));
        }
        self.map(
            Node::Spectrum(SpectrumId::uncovered(d)),
            Node::Spectrum(SpectrumId::connected_cover(d)),
            k,
        )
    }

    pub fn dimension_map(&self, d: u8, cover: u8, k: u32) -> Result<NamedHom, SpectraError> {
        if !(3..=4).contains(&d) || cover > 1 {
            return Err(SpectraError::Unsupported(format!(
                "no restriction from d={d}, cover={cover}"
            )));
        }
        self.map(
            Node::Spectrum(SpectrumId { d, cover }),
            Node::Spectrum(SpectrumId { d: d - 1, cover }),
            k,
        )
    }

    /// `HZ^k(HZ) -> HZ^k(Σ^d MTSO(d))`.
    pub fn unit_map(&self, d: u8, k: u32) -> Result<NamedHom, SpectraError> {
        self.map(Node::Hz, Node::Spectrum(SpectrumId::uncovered(d)), k)
    }

    /// `HZ^k(p≥1 Σ^d MTSO(d)) -> HZ^{k+1}(HZ)`.
    pub fn connecting_map(&self, d: u8, k: u32) -> Result<NamedHom, SpectraError> {
        self.map(Node::Spectrum(SpectrumId::connected_cover(d)), Node::Hz, k)
    }
}
