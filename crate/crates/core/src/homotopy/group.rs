use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::words::{format_word, free_reduce, generator_of, letter, parse_word, Letter, Word};
use super::HomotopyError;

/// Decides equality in a group by computing canonical representatives.
///
/// `normal_form(u) == normal_form(v)` must hold exactly when `u = v` in the group.
pub trait WordOracle: Debug + Send + Sync {
    fn normal_form(&self, word: &[Letter]) -> Word;
}

/// Free reduction.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeOracle;

impl WordOracle for FreeOracle {
    fn normal_form(&self, word: &[Letter]) -> Word {
        free_reduce(word)
    }
}

/// Exponent sums, rendered as a sorted word `g_0^{e_0} g_1^{e_1} ...`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeAbelianOracle;

pub(crate) fn exponent_sums(word: &[Letter]) -> BTreeMap<usize, i64> {
    let mut exps = BTreeMap::new();
    for &l in word {
        *exps.entry(generator_of(l)).or_insert(0) += if l > 0 { 1 } else { -1 };
    }
    exps.retain(|_, e| *e != 0);
    exps
}

impl WordOracle for FreeAbelianOracle {
    fn normal_form(&self, word: &[Letter]) -> Word {
        let mut out = Vec::new();
        for (g, e) in exponent_sums(word) {
            out.extend(std::iter::repeat_n(letter(g, e < 0), e.unsigned_abs() as usize));
        }
        out
    }
}

/// `Z/m` on a single generator.
#[derive(Debug, Clone, Copy)]
pub struct CyclicOracle {
    pub order: u32,
}

impl WordOracle for CyclicOracle {
    fn normal_form(&self, word: &[Letter]) -> Word {
        let e: i64 = word.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum();
        let r = e.rem_euclid(i64::from(self.order.max(1)));
        vec![1; r as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    Free,
    FreeAbelian,
    Custom,
}

/// A finitely presented group together with its word oracle.
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    kind: OracleKind,
    custom: Option<Arc<dyn WordOracle>>,
}

/// `{"generators": [...], "relators": [...], "oracle": "free|free_abelian|custom"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    pub oracle: OracleKind,
}

fn commutator(a: usize, b: usize) -> Word {
    vec![letter(a, false), letter(b, false), letter(a, true), letter(b, true)]
}

fn is_commutator(w: &[Letter]) -> bool {
    w.len() == 4 && w[0] > 0 && w[1] > 0 && w[0] != w[1] && w[2] == -w[0] && w[3] == -w[1]
}

impl GroupPresentation {
    pub fn free(generators: &[&str]) -> Self {
        GroupPresentation {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators: Vec::new(),
            kind: OracleKind::Free,
            custom: None,
        }
    }

    /// `Z^r` with all commutators of distinct generators as relators.
    pub fn free_abelian(generators: &[&str]) -> Self {
        let r = generators.len();
        let relators = (0..r).flat_map(|a| (a + 1..r).map(move |b| commutator(a, b))).collect();
        GroupPresentation {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators,
            kind: OracleKind::FreeAbelian,
            custom: None,
        }
    }

    /// A presentation whose word problem is decided by `oracle`; `None` leaves
    /// it undecidable, which makes every word query fail.
    pub fn custom(generators: &[&str], relators: Vec<Word>, oracle: Option<Arc<dyn WordOracle>>) -> Result<Self, HomotopyError> {
        let p = GroupPresentation {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators,
            kind: OracleKind::Custom,
            custom: oracle,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_document(doc: &PresentationDocument) -> Result<Self, HomotopyError> {
        let relators =
            doc.relators.iter().map(|r| parse_word(r, &doc.generators)).collect::<Result<Vec<_>, _>>()?;
        let p = GroupPresentation { generators: doc.generators.clone(), relators, kind: doc.oracle, custom: None };
        p.validate()?;
        Ok(p)
    }

    pub fn to_document(&self) -> PresentationDocument {
        PresentationDocument {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.format(r)).collect(),
            oracle: self.kind,
        }
    }

    fn validate(&self) -> Result<(), HomotopyError> {
        let bad = |reason: String| Err(HomotopyError::InvalidPresentation { reason });
        let mut seen = std::collections::BTreeSet::new();
        for g in &self.generators {
            if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') || g == "1" || g == "e" {
                return bad(format!("invalid generator name `{g}`"));
            }
            if !seen.insert(g) {
                return bad(format!("duplicate generator `{g}`"));
            }
        }
        for r in &self.relators {
            if r.iter().any(|&l| generator_of(l) >= self.generators.len()) {
                return bad("relator uses an unknown generator".into());
            }
            if free_reduce(r) != *r {
                return bad(format!("relator `{}` is not freely reduced", self.format(r)));
            }
        }
        match self.kind {
            OracleKind::Free if !self.relators.is_empty() => bad("free groups have no relators".into()),
            OracleKind::FreeAbelian => match self.relators.iter().find(|r| !is_commutator(r)) {
                Some(r) => bad(format!("relator `{}` is not a commutator of generators", self.format(r))),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn oracle(&self) -> Result<&dyn WordOracle, HomotopyError> {
        match self.kind {
            OracleKind::Free => Ok(&FreeOracle),
            OracleKind::FreeAbelian => Ok(&FreeAbelianOracle),
            OracleKind::Custom => self.custom.as_deref().ok_or(HomotopyError::UndecidableOracle),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Word, HomotopyError> {
        parse_word(text, &self.generators)
    }

    pub fn format(&self, w: &[Letter]) -> String {
        format_word(w, &self.generators)
    }

    pub fn normal_form(&self, w: &[Letter]) -> Result<Word, HomotopyError> {
        Ok(self.oracle()?.normal_form(w))
    }
}

/// Whether `w` represents the identity of `pi`.
pub fn word_is_trivial(pi: &GroupPresentation, w: &[Letter]) -> Result<bool, HomotopyError> {
    Ok(pi.normal_form(w)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triviality_examples() {
        let free = GroupPresentation::free(&["a", "b"]);
        let ab = GroupPresentation::free_abelian(&["a", "b"]);
        let w = free.parse("a b b^-1 a^-1").unwrap();
        assert!(word_is_trivial(&free, &w).unwrap());
        let c = free.parse("a b a^-1 b^-1").unwrap();
        assert!(word_is_trivial(&ab, &c).unwrap());
        assert!(!word_is_trivial(&free, &c).unwrap());
    }

    #[test]
    fn custom_without_routine_is_undecidable() {
        let p = GroupPresentation::custom(&["a"], vec![vec![1, 1, 1]], None).unwrap();
        assert!(matches!(word_is_trivial(&p, &[1]), Err(HomotopyError::UndecidableOracle)));
        let z3 = GroupPresentation::custom(&["a"], vec![vec![1, 1, 1]], Some(Arc::new(CyclicOracle { order: 3 }))).unwrap();
        assert!(word_is_trivial(&z3, &[1, 1, 1]).unwrap());
        assert!(word_is_trivial(&z3, &[-1, -1, 1, -1, -1]).unwrap());
        assert!(!word_is_trivial(&z3, &[1, 1]).unwrap());
    }

    #[test]
    fn abelian_normal_form_is_sorted() {
        let nf = FreeAbelianOracle.normal_form(&[2, 1, -2, 2, 1]);
        assert_eq!(nf, vec![1, 1, 2]);
    }

    #[test]
    fn document_checks_oracle_consistency() {
        let doc = PresentationDocument { generators: vec!["a".into()], relators: vec!["a^2".into()], oracle: OracleKind::Free };
        assert!(GroupPresentation::from_document(&doc).is_err());
        let doc = PresentationDocument {
            generators: vec!["a".into(), "b".into()],
            relators: vec!["a b a^-1 b^-1".into()],
            oracle: OracleKind::FreeAbelian,
        };
        let p = GroupPresentation::from_document(&doc).unwrap();
        assert_eq!(p.to_document(), doc);
        let doc = PresentationDocument {
            generators: vec!["a".into(), "b".into()],
            relators: vec!["a b a^-1".into()],
            oracle: OracleKind::FreeAbelian,
        };
        assert!(GroupPresentation::from_document(&doc).is_err());
    }
}
