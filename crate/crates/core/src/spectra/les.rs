use serde::Serialize;

use super::{CertifiedTable, NamedHom, Node, SpectraError, SpectrumId, MAX_COHOMOLOGY_DEGREE};
use crate::abelian::{check_exact, Exactness, FgAbGroup, GroupHom};
use crate::notation::Style;

/// Exactness at one position of the long exact sequence.
#[derive(Clone, Debug, Serialize)]
pub struct LesStep {
    pub position: String,
    pub incoming: String,
    pub outgoing: String,
    #[serde(flatten)]
    pub exactness: Exactness,
}

/// A stretch `0 -> HZ^k(E) -> HZ^k(P) -> HZ^{k+1}(HZ) -> 0` of the sequence.
#[derive(Clone, Debug, Serialize)]
pub struct ShortExactChunk {
    pub degree: u32,
    pub rendered: String,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub d: u8,
    pub steps: Vec<LesStep>,
    pub chunks: Vec<ShortExactChunk>,
    pub all_exact: bool,
}

impl LesReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let mark = if s.exactness.exact { "exact" } else { "NOT EXACT" };
            out.push_str(&format!("{:<24} {mark}\n", s.position));
        }
        for c in &self.chunks {
            let mark = if c.exact { "exact" } else { "NOT EXACT" };
            out.push_str(&format!("k={}: {} {mark}\n", c.degree, c.rendered));
        }
        out
    }
}

struct Arrow {
    hom: GroupHom,
    source: String,
    target: String,
}

impl Arrow {
    fn label(&self, style: Style) -> String {
        format!("{} {} {}", self.source, style.arrow(), self.target)
    }
}

fn arrow(m: &NamedHom, style: Style) -> Arrow {
    Arrow {
        hom: m.hom.clone(),
        source: m.source.cohomology_label(m.source_degree, style),
        target: m.target.cohomology_label(m.target_degree, style),
    }
}

impl CertifiedTable {
    /// Assembles `... -> HZ^k(HZ) -> HZ^k(E) -> HZ^k(P) -> HZ^{k+1}(HZ) -> ...`
    /// for `k = 0..5` from the recorded data and checks exactness everywhere.
    pub fn verify_les(&self, d: u8) -> Result<LesReport, SpectraError> {
        if !(2..=4).contains(&d) {
            return Err(SpectraError::Unsupported(format!(
                "no fiber sequence recorded for d={d}"
            )));
        }
        let style = Style::Unicode;
        let e = Node::Spectrum(SpectrumId::uncovered(d));
        let p = Node::Spectrum(SpectrumId::connected_cover(d));

        let hz0 = self.hz_entry(0)?.group;
        let mut arrows = vec![Arrow {
            hom: GroupHom::zero(FgAbGroup::trivial(), hz0),
            source: "0".into(),
            target: Node::Hz.cohomology_label(0, style),
        }];
        let mut units = Vec::new();
        let mut covers = Vec::new();
        let mut connecting = Vec::new();
        for k in 0..=MAX_COHOMOLOGY_DEGREE {
            let a = self.map(Node::Hz, e, k)?;
            let b = self.map(e, p, k)?;
            let c = self.map(p, Node::Hz, k)?;
            arrows.push(arrow(&a, style));
            arrows.push(arrow(&b, style));
            arrows.push(arrow(&c, style));
            units.push(a);
            covers.push(b);
            connecting.push(c);
        }
        let last = self.hz_entry(MAX_COHOMOLOGY_DEGREE + 1)?.group;
        arrows.push(Arrow {
            hom: GroupHom::zero(last, FgAbGroup::trivial()),
            source: Node::Hz.cohomology_label(MAX_COHOMOLOGY_DEGREE + 1, style),
            target: "0".into(),
        });

        let mut steps = Vec::new();
        for w in arrows.windows(2) {
            let exactness = check_exact(&w[0].hom, &w[1].hom)?;
            steps.push(LesStep {
                position: w[0].target.clone(),
                incoming: w[0].label(style),
                outgoing: w[1].label(style),
                exactness,
            });
        }

        let mut chunks = Vec::new();
        for k in 0..=MAX_COHOMOLOGY_DEGREE as usize {
            let next_unit_zero = units.get(k + 1).is_none_or(|u| u.hom.is_zero());
            if !units[k].hom.is_zero() || !next_unit_zero || covers[k].target_entry.is_zero() {
                continue;
            }
            let b = &covers[k];
            let c = &connecting[k];
            let into = GroupHom::zero(FgAbGroup::trivial(), b.source_entry.group.clone());
            let out = GroupHom::zero(c.target_entry.group.clone(), FgAbGroup::trivial());
            let exact = check_exact(&into, &b.hom)?.exact
                && check_exact(&b.hom, &c.hom)?.exact
                && check_exact(&c.hom, &out)?.exact;
            let a = style.arrow();
            let rendered = format!(
                "0 {a} {} {a} {} {a} {} {a} 0",
                b.source_entry.render_summands(style),
                b.target_entry.render_summands(style),
                c.target_entry.render_summands(style),
            );
            chunks.push(ShortExactChunk {
                degree: k as u32,
                rendered,
                exact,
            });
        }

        let all_exact = steps.iter().all(|s| s.exactness.exact) && chunks.iter().all(|c| c.exact);
        Ok(LesReport {
            d,
            steps,
            chunks,
            all_exact,
        })
    }
}

/// [`CertifiedTable::verify_les`] on the builtin table.
pub fn verify_les(d: u8) -> Result<LesReport, SpectraError> {
    CertifiedTable::builtin().verify_les(d)
}
