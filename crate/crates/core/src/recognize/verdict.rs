use std::fmt;

use serde::{Deserialize, Serialize};

use crate::homology::HomologyProfile;

/// Evidence attached to a decided verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// A single element at which a condition holds or fails.
    Element(String),
    /// Several elements, e.g. a pair or a decomposition.
    Elements(Vec<String>),
    Homology(HomologyProfile),
    /// A certificate found by a search, named by kind.
    Certificate(String),
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::None => Ok(()),
            Witness::Element(e) => write!(f, "at {e}"),
            Witness::Elements(es) => write!(f, "at {}", es.join(", ")),
            Witness::Homology(h) => {
                write!(f, "homology betti {:?} torsion {:?}", h.betti, h.torsion)
            }
            Witness::Certificate(c) => write!(f, "{c} certificate found"),
            Witness::Note(n) => f.write_str(n),
        }
    }
}

/// Three-valued answer of a recognizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "value", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Yes(Witness),
    No(Witness),
    /// The decision procedure gave up; the string says why.
    Unknown(String),
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict::Yes(Witness::None)
    }

    pub fn no_at(label: &str) -> Self {
        Verdict::No(Witness::Element(label.to_string()))
    }

    pub fn no_note(note: impl Into<String>) -> Self {
        Verdict::No(Witness::Note(note.into()))
    }

    pub fn yes_note(note: impl Into<String>) -> Self {
        Verdict::Yes(Witness::Note(note.into()))
    }

    pub fn from_bool(b: bool, why_not: impl FnOnce() -> Witness) -> Self {
        if b {
            Verdict::yes()
        } else {
            Verdict::No(why_not())
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    fn rank(&self) -> u8 {
        match self {
            Verdict::No(_) => 0,
            Verdict::Unknown(_) => 1,
            Verdict::Yes(_) => 2,
        }
    }

    /// Conjunction: `no` beats `unknown` beats `yes`; the first weakest wins.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        if self.is_no() {
            return self;
        }
        let o = other();
        if o.rank() < self.rank() {
            o
        } else {
            self
        }
    }

    /// Disjunction: `yes` beats `unknown` beats `no`.
    pub fn or(self, other: impl FnOnce() -> Verdict) -> Verdict {
        if self.is_yes() {
            return self;
        }
        let o = other();
        if o.rank() > self.rank() {
            o
        } else {
            self
        }
    }

    /// Conjunction over an iterator, stopping at the first `no`.
    pub fn all(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut acc = Verdict::yes();
        for v in items {
            if v.is_no() {
                return v;
            }
            if v.rank() < acc.rank() {
                acc = v;
            }
        }
        acc
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Yes(w) | Verdict::No(w) => Some(w),
            Verdict::Unknown(_) => None,
        }
    }

    /// Replaces the witness of a decided verdict.
    pub fn with_witness(self, w: Witness) -> Verdict {
        match self {
            Verdict::Yes(_) => Verdict::Yes(w),
            Verdict::No(_) => Verdict::No(w),
            u => u,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (word, detail) = match self {
            Verdict::Yes(w) => ("yes", w.to_string()),
            Verdict::No(w) => ("no", w.to_string()),
            Verdict::Unknown(why) => ("unknown", why.clone()),
        };
        if detail.is_empty() {
            f.write_str(word)
        } else {
            write!(f, "{word} ({detail})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinators_order_values() {
        let u = || Verdict::Unknown("dim".into());
        assert!(Verdict::yes().and(u).is_unknown());
        assert!(u().and(|| Verdict::no_at("x")).is_no());
        assert!(Verdict::no_at("x").or(u).is_unknown());
        assert!(u().or(Verdict::yes).is_yes());
        assert!(Verdict::all(vec![Verdict::yes(), u(), Verdict::no_at("y")]).is_no());
        assert!(Verdict::all(vec![]).is_yes());
    }

    #[test]
    fn serializes_with_tags() {
        let v = Verdict::No(Witness::Element("ab".into()));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"value":"no","witness":{"kind":"element","data":"ab"}}"#
        );
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
