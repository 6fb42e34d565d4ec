//! Type labels for finite and affine root systems and their direct sums.
//!
//! The text grammar is `<Family><rank>` for finite types (`F4`, `BC3`),
//! `<Family><rank>^<twist>` for affine types (`B3^1`, `D4^3`) and `+` for
//! direct sums. Parsing is case-insensitive and also accepts `^(2)`.
//! Every label is normalized through the usual low-rank identifications
//! (`B1 = C1 = A1`, `C2 = B2`, `D2 = A1+A1`, `D3 = A3`, `A1^2 = A1^1`,
//! `A3^2 = D3^2`) so that equal systems have one spelling.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Cartan–Killing family letter, with `BC` for the non-reduced series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl Family {
    fn as_str(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        }
    }
}

/// An irreducible finite type such as `B4` or `BC2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteTypeLabel {
    pub family: Family,
    pub rank: u32,
}

impl FiniteTypeLabel {
    /// Validated constructor; aliases such as `D2` are accepted here and
    /// normalized by [`FiniteTypeLabel::canonical_parts`].
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            _ => rank >= 1,
        };
        if !ok {
            return Err(Error::InvalidLabel(format!("{}{}", family.as_str(), rank)));
        }
        Ok(FiniteTypeLabel { family, rank })
    }

    /// Shorthand that panics on invalid input; meant for literals in code.
    pub fn of(family: Family, rank: u32) -> Self {
        Self::new(family, rank).expect("valid finite label")
    }

    /// The canonical spelling as a list of irreducible parts.
    pub fn canonical_parts(self) -> Vec<FiniteTypeLabel> {
        use Family::*;
        match (self.family, self.rank) {
            (B | C | D, 1) => vec![Self::of(A, 1)],
            (C, 2) => vec![Self::of(B, 2)],
            (D, 2) => vec![Self::of(A, 1), Self::of(A, 1)],
            (D, 3) => vec![Self::of(A, 3)],
            _ => vec![self],
        }
    }

    /// True for the simply-laced families.
    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for FiniteTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.as_str(), self.rank)
    }
}

/// An irreducible affine type `X_n^(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineTypeLabel {
    pub base: FiniteTypeLabel,
    pub twist: u8,
}

impl AffineTypeLabel {
    /// Validated constructor. Twist 2 is allowed for `A`, `D` (rank at
    /// least 2) and `E6`; twist 3 only for `D4`.
    pub fn new(base: FiniteTypeLabel, twist: u8) -> Result<Self> {
        use Family::*;
        let ok = match twist {
            1 => base.family != BC,
            2 => match base.family {
                A => true,
                D => base.rank >= 2,
                E => base.rank == 6,
                _ => false,
            },
            3 => base.family == D && base.rank == 4,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidLabel(format!("{}^{}", base, twist)));
        }
        Ok(AffineTypeLabel { base, twist })
    }

    /// Shorthand that panics on invalid input; meant for literals in code.
    pub fn of(family: Family, rank: u32, twist: u8) -> Self {
        Self::new(FiniteTypeLabel::of(family, rank), twist).expect("valid affine label")
    }

    /// The canonical spelling as a list of irreducible parts.
    pub fn canonical_parts(self) -> Vec<AffineTypeLabel> {
        use Family::*;
        match self.twist {
            1 => self.base.canonical_parts().into_iter().map(|b| AffineTypeLabel { base: b, twist: 1 }).collect(),
            2 => match (self.base.family, self.base.rank) {
                (A, 1) | (D, 2) => vec![Self::of(A, 1, 1)],
                (A, 3) => vec![Self::of(D, 3, 2)],
                _ => vec![self],
            },
            _ => vec![self],
        }
    }

    /// The canonical single label, or an error when the label splits.
    pub fn canonical(self) -> Result<AffineTypeLabel> {
        let parts = self.canonical_parts();
        if parts.len() == 1 {
            Ok(parts[0])
        } else {
            Err(Error::UnsupportedAmbient(format!("{} is reducible", self)))
        }
    }

    /// True for `A_{2n}^(2)`, the ambient types with a `BC_n` gradient.
    pub fn is_a2n(self) -> bool {
        self.twist == 2 && self.base.family == Family::A && self.base.rank.is_multiple_of(2)
    }

    /// The constant `m`: 1 untwisted, 3 for `D4^3`, 2 for the other twisted types.
    pub fn m(self) -> u8 {
        self.twist
    }

    /// The finite type of the gradient root system.
    pub fn gradient_label(self) -> FiniteTypeLabel {
        use Family::*;
        let b = self.base;
        match self.twist {
            1 => b,
            3 => FiniteTypeLabel::of(G, 2),
            _ => match b.family {
                A if b.rank.is_multiple_of(2) => FiniteTypeLabel::of(BC, b.rank / 2),
                A if b.rank == 1 => FiniteTypeLabel::of(A, 1),
                A => FiniteTypeLabel::of(C, b.rank.div_ceil(2)),
                D => FiniteTypeLabel::of(B, b.rank - 1),
                E => FiniteTypeLabel::of(F, 4),
                _ => unreachable!("validated twist-2 family"),
            },
        }
    }

    /// The twisted affine type whose gradient is `x` with long roots
    /// periodic of period `m` times the short period.
    pub fn twisted_with_gradient(x: FiniteTypeLabel) -> Result<AffineTypeLabel> {
        use Family::*;
        let (family, rank, twist) = match x.family {
            B => (D, x.rank + 1, 2),
            C => (A, 2 * x.rank - 1, 2),
            F => (E, 6, 2),
            G => (D, 4, 3),
            BC => (A, 2 * x.rank, 2),
            _ => return Err(Error::Unrecognized(format!("no twisted type with gradient {}", x))),
        };
        AffineTypeLabel::new(FiniteTypeLabel::of(family, rank), twist)
    }
}

impl fmt::Display for AffineTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base, self.twist)
    }
}

/// One irreducible summand of a type: finite or affine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentLabel {
    Finite(FiniteTypeLabel),
    Affine(AffineTypeLabel),
}

impl ComponentLabel {
    fn sort_key(&self) -> (Family, u32, u8) {
        match self {
            ComponentLabel::Finite(l) => (l.family, l.rank, 0),
            ComponentLabel::Affine(l) => (l.base.family, l.base.rank, l.twist),
        }
    }

    fn canonical_parts(self) -> Vec<ComponentLabel> {
        match self {
            ComponentLabel::Finite(l) => l.canonical_parts().into_iter().map(ComponentLabel::Finite).collect(),
            ComponentLabel::Affine(l) => l.canonical_parts().into_iter().map(ComponentLabel::Affine).collect(),
        }
    }
}

impl PartialOrd for ComponentLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ComponentLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Finite(l) => l.fmt(f),
            ComponentLabel::Affine(l) => l.fmt(f),
        }
    }
}

/// A canonical direct sum of irreducible labels, sorted by family, rank
/// and twist. The empty sum prints as `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeSum(Vec<ComponentLabel>);

impl TypeSum {
    /// Canonicalizes and sorts the given parts.
    pub fn new(parts: impl IntoIterator<Item = ComponentLabel>) -> Self {
        let mut v: Vec<ComponentLabel> = parts.into_iter().flat_map(ComponentLabel::canonical_parts).collect();
        v.sort();
        TypeSum(v)
    }

    /// Sum of finite labels.
    pub fn finite(parts: impl IntoIterator<Item = FiniteTypeLabel>) -> Self {
        Self::new(parts.into_iter().map(ComponentLabel::Finite))
    }

    /// Sum of affine labels.
    pub fn affine(parts: impl IntoIterator<Item = AffineTypeLabel>) -> Self {
        Self::new(parts.into_iter().map(ComponentLabel::Affine))
    }

    /// The irreducible summands in canonical order.
    pub fn parts(&self) -> &[ComponentLabel] {
        &self.0
    }

    /// True when there are no summands.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The single affine summand, if this sum is one irreducible affine type.
    pub fn as_single_affine(&self) -> Option<AffineTypeLabel> {
        match self.0.as_slice() {
            [ComponentLabel::Affine(a)] => Some(*a),
            _ => None,
        }
    }
}

impl fmt::Display for TypeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            p.fmt(f)?;
        }
        Ok(())
    }
}

fn parse_component(text: &str) -> Result<ComponentLabel> {
    let bad = || Error::InvalidLabel(text.to_string());
    let t = text.trim().to_ascii_uppercase();
    let (head, twist) = match t.split_once('^') {
        Some((h, tw)) => {
            let tw = tw.trim().trim_start_matches('(').trim_end_matches(')');
            (h.trim().to_string(), Some(tw.parse::<u8>().map_err(|_| bad())?))
        }
        None => (t.clone(), None),
    };
    let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (fam, rank) = head.split_at(split);
    let family = match fam {
        "A" => Family::A,
        "B" => Family::B,
        "C" => Family::C,
        "D" => Family::D,
        "E" => Family::E,
        "F" => Family::F,
        "G" => Family::G,
        "BC" => Family::BC,
        _ => return Err(bad()),
    };
    let rank: u32 = rank.parse().map_err(|_| bad())?;
    let base = FiniteTypeLabel::new(family, rank)?;
    Ok(match twist {
        None => ComponentLabel::Finite(base),
        Some(tw) => ComponentLabel::Affine(AffineTypeLabel::new(base, tw)?),
    })
}

impl FromStr for TypeSum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(TypeSum::default());
        }
        let parts = s.split('+').map(parse_component).collect::<Result<Vec<_>>>()?;
        Ok(TypeSum::new(parts))
    }
}

impl FromStr for FiniteTypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match parse_component(s)? {
            ComponentLabel::Finite(l) => Ok(l),
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}

impl FromStr for AffineTypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match parse_component(s)? {
            ComponentLabel::Affine(l) => Ok(l),
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(FiniteTypeLabel);
string_serde!(AffineTypeLabel);
string_serde!(TypeSum);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_canonicalizes_aliases() {
        let s: TypeSum = "d2 + c2 + b1".parse().unwrap();
        assert_eq!(s.to_string(), "A1+A1+A1+B2");
        let s: TypeSum = "A3^(2)".parse().unwrap();
        assert_eq!(s.to_string(), "D3^2");
        let s: TypeSum = "A1^2+C2^1+D3^1".parse().unwrap();
        assert_eq!(s.to_string(), "A1^1+A3^1+B2^1");
    }

    #[test]
    fn rejects_invalid_labels() {
        assert!("E9".parse::<TypeSum>().is_err());
        assert!("F3".parse::<TypeSum>().is_err());
        assert!("B3^2".parse::<TypeSum>().is_err());
        assert!("D5^3".parse::<TypeSum>().is_err());
        assert!("X2".parse::<TypeSum>().is_err());
        assert!("BC2^1".parse::<TypeSum>().is_err());
    }

    #[test]
    fn gradient_labels_of_twisted_types() {
        let cases = [("D5^2", "B4"), ("E6^2", "F4"), ("A4^2", "BC2"), ("A5^2", "C3"), ("D4^3", "G2")];
        for (a, g) in cases {
            let l: AffineTypeLabel = a.parse().unwrap();
            assert_eq!(l.gradient_label().to_string(), g);
        }
    }

    #[test]
    fn finite_and_affine_sort_together() {
        let s: TypeSum = "G2+A2^1+A2+BC1".parse().unwrap();
        assert_eq!(s.to_string(), "A2+A2^1+G2+BC1");
    }
}
