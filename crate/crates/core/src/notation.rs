//! Rendering of generator names and groups in Unicode or plain ASCII.
//!
//! Generator names are stored in ASCII (`p1u`, `W3u`, `c^2u`, `psi`) and
//! converted for display.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Style {
    #[default]
    Unicode,
    Ascii,
}

impl Style {
    pub fn integers(self) -> &'static str {
        match self {
            Style::Unicode => "ℤ",
            Style::Ascii => "Z",
        }
    }

    pub fn direct_sum(self) -> &'static str {
        match self {
            Style::Unicode => "⊕",
            Style::Ascii => "+",
        }
    }

    pub fn units(self) -> &'static str {
        match self {
            Style::Unicode => "ℂˣ",
            Style::Ascii => "C^x",
        }
    }

    pub fn arrow(self) -> &'static str {
        match self {
            Style::Unicode => "→",
            Style::Ascii => "->",
        }
    }

    pub fn maps_to(self) -> &'static str {
        match self {
            Style::Unicode => "↦",
            Style::Ascii => "|->",
        }
    }

    pub fn name(self, ascii: &str) -> String {
        match self {
            Style::Unicode => to_unicode(ascii),
            Style::Ascii => ascii.to_string(),
        }
    }

    pub fn power(self, exponent: i64) -> String {
        match self {
            Style::Unicode => superscript(&exponent.to_string()),
            Style::Ascii => format!("^{exponent}"),
        }
    }
}

const WORDS: &[(&str, &str)] = &[
    ("iota", "ι"),
    ("sigma", "σ"),
    ("psi", "ψ"),
    ("tau", "τ"),
    ("rho", "ρ"),
    ("zeta", "ζ"),
    ("lambda", "λ"),
    ("mu", "μ"),
    ("W3", "W₃"),
    ("p1", "p₁"),
];

pub fn superscript(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '0' => '⁰',
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            '4' => '⁴',
            '5' => '⁵',
            '6' => '⁶',
            '7' => '⁷',
            '8' => '⁸',
            '9' => '⁹',
            '-' => '⁻',
            c => c,
        })
        .collect()
}

pub fn subscript(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '0' => '₀',
            '1' => '₁',
            '2' => '₂',
            '3' => '₃',
            '4' => '₄',
            '5' => '₅',
            '6' => '₆',
            '7' => '₇',
            '8' => '₈',
            '9' => '₉',
            c => c,
        })
        .collect()
}

/// `c^2u` -> `c²u`, `W3e` -> `W₃e`, `iota5` -> `ι₅`, `lambda1` -> `λ₁`.
pub fn to_unicode(name: &str) -> String {
    let mut out = String::new();
    let mut rest = name;
    while !rest.is_empty() {
        if let Some(tail) = rest.strip_prefix('^') {
            let n = tail
                .char_indices()
                .take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && *c == '-'))
                .count();
            out.push_str(&superscript(&tail[..n]));
            rest = &tail[n..];
            continue;
        }
        if let Some((word, sym)) = WORDS.iter().find(|(w, _)| rest.starts_with(w)) {
            out.push_str(sym);
            rest = &rest[word.len()..];
            // Greek letters take a trailing index as a subscript.
            if sym.chars().count() == 1 && !matches!(*word, "W3" | "p1") {
                let n = rest.chars().take_while(char::is_ascii_digit).count();
                out.push_str(&subscript(&rest[..n]));
                rest = &rest[n..];
            }
            continue;
        }
        let c = rest.chars().next().unwrap();
        out.push(c);
        rest = &rest[c.len_utf8()..];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(to_unicode("c^2u"), "c²u");
        assert_eq!(to_unicode("W3^2p1u"), "W₃²p₁u");
        assert_eq!(to_unicode("iota5"), "ι₅");
        assert_eq!(to_unicode("psi"), "ψ");
        assert_eq!(to_unicode("p1u"), "p₁u");
        assert_eq!(to_unicode("lambda1^-48"), "λ₁⁻⁴⁸");
        assert_eq!(to_unicode("eu"), "eu");
    }
}
