use std::collections::BTreeMap;

use serde::Serialize;

use super::{Catalog, ManifoldClass, TftError};

/// An integer combination of closed manifolds of one dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormalSum {
    dim: Option<u8>,
    #[serde(serialize_with = "serialize_terms")]
    terms: BTreeMap<ManifoldClass, i64>,
}

fn serialize_terms<S: serde::Serializer>(t: &BTreeMap<ManifoldClass, i64>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Term<'a> {
        manifold: &'a ManifoldClass,
        multiplicity: i64,
    }
    let v: Vec<_> = t
        .iter()
        .map(|(m, &k)| Term {
            manifold: m,
            multiplicity: k,
        })
        .collect();
    v.serialize(s)
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(m: ManifoldClass) -> Self {
        let mut s = Self::new();
        s.add(m, 1).expect("empty sum accepts any dimension");
        s
    }

    pub fn dim(&self) -> Option<u8> {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ManifoldClass, i64)> {
        self.terms.iter().map(|(m, &k)| (m, k))
    }

    pub fn add(&mut self, m: ManifoldClass, multiplicity: i64) -> Result<(), TftError> {
        match self.dim {
            Some(d) if d != m.dim => {
                return Err(TftError::DimensionMismatch {
                    expected: d,
                    found: m.dim,
                })
            }
            _ => self.dim = Some(m.dim),
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry += multiplicity;
        self.terms.retain(|_, k| *k != 0);
        Ok(())
    }

    pub fn plus(&self, other: &FormalSum) -> Result<FormalSum, TftError> {
        let mut out = self.clone();
        for (m, k) in other.terms() {
            out.add(m.clone(), k)?;
        }
        if out.dim.is_none() {
            out.dim = other.dim;
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> FormalSum {
        let mut out = FormalSum {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        if k != 0 {
            out.terms = self.terms.iter().map(|(m, &c)| (m.clone(), c * k)).collect();
        }
        out
    }

    /// Parses sums like `K3 + 2*S4`, `Sigma_3 - (-2)*S2` or `2 S1`. Each
    /// operand may be a manifold expression in parentheses-free form
    /// (`CP2#CP2`).
    pub fn parse(expr: &str, catalog: &Catalog) -> Result<FormalSum, TftError> {
        let err = |msg: String| TftError::Parse(format!("{msg} in `{expr}`"));
        let chars: Vec<char> = expr.chars().collect();
        let mut i = 0;
        let mut out = FormalSum::new();
        let skip = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        let mut first = true;
        loop {
            skip(&mut i);
            if i >= chars.len() {
                if first {
                    return Err(err("empty sum".into()));
                }
                break;
            }
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
                skip(&mut i);
            } else if !first {
                return Err(err(format!("expected + or - at position {i}")));
            }
            let mut coeff = 1i64;
            if i < chars.len() && (chars[i] == '(' || chars[i].is_ascii_digit()) {
                let paren = chars[i] == '(';
                if paren {
                    i += 1;
                    skip(&mut i);
                }
                let start = i;
                if paren && i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                coeff = text.parse().map_err(|_| err(format!("bad coefficient `{text}`")))?;
                skip(&mut i);
                if paren {
                    if i >= chars.len() || chars[i] != ')' {
                        return Err(err("unclosed parenthesis".into()));
                    }
                    i += 1;
                    skip(&mut i);
                }
                if i < chars.len() && (chars[i] == '*' || chars[i] == '·') {
                    i += 1;
                    skip(&mut i);
                }
            }
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '#') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            if name.is_empty() {
                return Err(err(format!("expected a manifold at position {start}")));
            }
            out.add(catalog.parse_expression(&name)?, sign * coeff)?;
            first = false;
        }
        Ok(out)
    }
}

/// The complete vector-field bordism invariant in dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VfInvariant {
    pub d: u8,
    pub values: Vec<i64>,
}

impl VfInvariant {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0)
    }

    pub fn render(&self) -> String {
        match self.values.as_slice() {
            [] => "0".into(),
            [v] => v.to_string(),
            vs => {
                let parts: Vec<_> = vs.iter().map(i64::to_string).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

/// `d=1`: `Σ k·k_ℝ mod 2`; `d=2`: `Σ k·χ/2`; `d=3`: nothing;
/// `d=4`: `(Σ k·(χ+σ)/2, Σ k·σ)`.
pub fn vf_invariant(d: u8, s: &FormalSum) -> Result<VfInvariant, TftError> {
    if !(1..=4).contains(&d) {
        return Err(TftError::Unsupported(format!("vector-field bordism in dimension {d}")));
    }
    if let Some(found) = s.dim().filter(|&k| k != d) {
        return Err(TftError::DimensionMismatch { expected: d, found });
    }
    let values = match d {
        1 => {
            let mut total = 0;
            for (m, k) in s.terms() {
                let kr = m.kr.ok_or_else(|| TftError::MissingKr(m.name.clone()))?;
                total += k * i64::from(kr);
            }
            vec![total.rem_euclid(2)]
        }
        2 => vec![s.terms().map(|(m, k)| k * (m.euler / 2)).sum()],
        3 => Vec::new(),
        _ => vec![
            s.terms().map(|(m, k)| k * ((m.euler + m.signature) / 2)).sum(),
            s.terms().map(|(m, k)| k * m.signature).sum(),
        ],
    };
    Ok(VfInvariant { d, values })
}

pub fn is_vf_nullbordant(d: u8, s: &FormalSum) -> Result<bool, TftError> {
    Ok(vf_invariant(d, s)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> FormalSum {
        FormalSum::parse(s, Catalog::builtin()).unwrap()
    }

    #[test]
    fn parsing() {
        let s = parse("Sigma_3 - (-2)*S2");
        assert_eq!(s.terms().count(), 2);
        assert_eq!(vf_invariant(2, &s).unwrap().render(), "0");
        assert_eq!(parse("K3 + 2*S4").terms().map(|(_, k)| k).sum::<i64>(), 3);
        assert_eq!(parse("2 S1").terms().next().unwrap().1, 2);
        assert!(parse("S4 - S4").terms().next().is_none());
        assert!(FormalSum::parse("S4 +", Catalog::builtin()).is_err());
        assert!(FormalSum::parse("S4 S4", Catalog::builtin()).is_err());
        assert!(matches!(
            FormalSum::parse("Klein", Catalog::builtin()),
            Err(TftError::UnknownManifold(_))
        ));
    }

    #[test]
    fn invariants() {
        assert_eq!(vf_invariant(4, &parse("CP2")).unwrap().values, [2, 1]);
        assert!(is_vf_nullbordant(1, &parse("2*S1")).unwrap());
        assert!(!is_vf_nullbordant(1, &parse("S1")).unwrap());
        assert!(!is_vf_nullbordant(2, &parse("S2")).unwrap());
        assert!(is_vf_nullbordant(3, &parse("S3 + 5 T3")).unwrap());
        assert!(is_vf_nullbordant(4, &parse("S2xSigma_3 + 4 S4")).unwrap());
        assert!(matches!(
            vf_invariant(2, &parse("S4")),
            Err(TftError::DimensionMismatch { .. })
        ));
    }
}
