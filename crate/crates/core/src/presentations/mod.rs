//! Finite presentations, symmetrized relator sets and the metric small
//! cancellation checker.

pub(crate) mod parse;
mod small_cancellation;
mod symmetrized;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{Alphabet, CyclicWord, Word};

pub use small_cancellation::{
    check_small_cancellation, check_with, one_sixth, RelatorPieces, SCReport, ScWitness, Verdict,
};
pub use symmetrized::{symmetrize, Member, SymmetrizedSet};

/// `<S | R>` with relators kept as cyclic words in the order given.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<CyclicWord>,
    /// Relators as written, freely reduced but not cyclically.
    words: Vec<Word>,
}

impl Presentation {
    /// Validates relators: over the alphabet, nonempty after cyclic reduction,
    /// and pairwise distinct up to rotation and inversion.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let mut seen: HashMap<Word, usize> = HashMap::new();
        let mut rels = Vec::with_capacity(relators.len());
        for (i, w) in relators.iter().enumerate() {
            if !alphabet.contains_word(w) {
                return Err(Error::Alphabet(format!("relator {i} uses a generator outside the alphabet")));
            }
            let c = CyclicWord::new(w);
            if c.is_empty() {
                return Err(Error::DegenerateRelator(i));
            }
            let key = c.canonical();
            let inv_key = c.inverse().canonical();
            if let Some(&j) = seen.get(&key).or_else(|| seen.get(&inv_key)) {
                return Err(Error::DuplicateRelator(i, j));
            }
            seen.insert(key, i);
            rels.push(c);
        }
        Ok(Presentation { alphabet, relators: rels, words: relators })
    }

    pub fn free(alphabet: Alphabet) -> Self {
        Presentation { alphabet, relators: Vec::new(), words: Vec::new() }
    }

    /// Parses the presentation grammar: one `gens` line, then `rel` lines.
    pub fn parse(source: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relators = Vec::new();
        for st in parse::statements(source) {
            let (kw, rest) = match st.text.find(char::is_whitespace) {
                Some(i) => (&st.text[..i], &st.text[i..]),
                None => (st.text, ""),
            };
            let syntax = |column: usize, message: &str| Error::Syntax {
                line: st.line,
                column: column + 1,
                message: message.to_string(),
            };
            match kw {
                "gens" => {
                    if alphabet.is_some() {
                        return Err(syntax(st.column, "duplicate `gens` declaration"));
                    }
                    let mut a = Alphabet::default();
                    for sym in rest.split_whitespace() {
                        let col = st.column + (sym.as_ptr() as usize - st.text.as_ptr() as usize);
                        if !crate::words::is_symbol(sym) {
                            return Err(syntax(col, &format!("invalid generator symbol `{sym}`")));
                        }
                        a.push(sym).map_err(|e| match e {
                            Error::Alphabet(m) => syntax(col, &m),
                            e => e,
                        })?;
                    }
                    alphabet = Some(a);
                }
                "rel" => {
                    let a = alphabet
                        .as_ref()
                        .ok_or_else(|| syntax(st.column, "`rel` before `gens`"))?;
                    let col0 = st.column + kw.len();
                    let w = parse::parse_word_at(a, rest, st.line, col0)?;
                    relators.push(w);
                }
                _ => return Err(syntax(st.column, &format!("expected `gens` or `rel`, found `{kw}`"))),
            }
        }
        let alphabet = alphabet.unwrap_or_default();
        Presentation::new(alphabet, relators)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[CyclicWord] {
        &self.relators
    }

    /// Relators in the form they were given (e.g. `[a,[a,b]]` keeps its
    /// outer conjugation). Equal in the free group to a conjugate of the
    /// corresponding cyclic relator.
    pub fn relator_words(&self) -> &[Word] {
        &self.words
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    /// Renders the presentation back into the grammar.
    pub fn to_text(&self) -> String {
        let mut out = String::from("gens");
        for n in self.alphabet.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        for r in &self.words {
            let _ = writeln!(out, "rel {}", self.alphabet.format_word(r));
        }
        out
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const HEISENBERG: &str = "gens a b ; rel [a,[a,b]] ; rel [b,[a,b]]";

    #[test]
    fn heisenberg_source() {
        let p = Presentation::parse(HEISENBERG).unwrap();
        assert_eq!(p.alphabet().names(), ["a", "b"]);
        assert_eq!(p.relators().len(), 2);
        // [a,[a,b]] = a a b a^-1 b^-1 a^-1 b a b^-1 a^-1 loses its outer a-pair
        assert_eq!(p.relator_words()[0].len(), 10);
        assert_eq!(p.relators()[0].len(), 8);
        assert_eq!(p.relator_words()[1].len(), 8);
        assert_eq!(p.relators()[1].len(), 8);
    }

    #[test]
    fn free_and_degenerate() {
        let p = Presentation::parse("gens x y").unwrap();
        assert_eq!(p.alphabet().len(), 2);
        assert!(p.relators().is_empty());
        assert_eq!(Presentation::parse("gens a\nrel a a^-1"), Err(Error::DegenerateRelator(0)));
        let p = Presentation::parse("gens a b\nrel b a b^-1").unwrap();
        assert_eq!(p.relators()[0].len(), 1);
    }

    #[test]
    fn duplicates_and_syntax_errors() {
        assert_eq!(
            Presentation::parse("gens a b\nrel a b\nrel b^-1 a^-1"),
            Err(Error::DuplicateRelator(1, 0))
        );
        assert_eq!(
            Presentation::parse("gens a b\nrel a b a^-1 b^-1\nrel b a b^-1 a^-1"),
            Err(Error::DuplicateRelator(1, 0))
        );
        match Presentation::parse("gens a b\nrel a ^x") {
            Err(Error::Syntax { line: 2, column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Presentation::parse("rel a"), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(Presentation::parse("gens a\nfoo a"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(Presentation::parse("gens a\nrel b"), Err(Error::Alphabet(_))));
    }

    #[test]
    fn text_round_trip() {
        let p = Presentation::parse("# comment\ngens a b\nrel a^3 b^-2\n").unwrap();
        assert_eq!(p.to_text(), "gens a b\nrel a^3 b^-2\n");
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }
}
