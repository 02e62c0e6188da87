//! Text grammar for words and presentations.
//!
//! ```text
//! presentation := line*            lines are separated by newlines or `;`
//! line         := "gens" sym*  |  "rel" word  |  "#" comment  |  blank
//! word         := item*
//! item         := atom ("^" int)?
//! atom         := sym  |  "[" word "," word "]"  |  "(" word ")"
//! ```

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
    line: usize,
    col0: usize,
}

impl Cursor<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        let column = self.col0 + self.chars.get(self.pos).map_or(self.chars.len(), |c| c.0) + 1;
        Error::Syntax { line: self.line, column, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn word(&mut self, closers: &[char]) -> Result<Word> {
        let mut raw: Vec<Letter> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(Word::from_letters(raw)),
                Some(c) if closers.contains(&c) => return Ok(Word::from_letters(raw)),
                Some(_) => {
                    let item = self.item()?;
                    raw.extend_from_slice(item.letters());
                }
            }
        }
    }

    fn item(&mut self) -> Result<Word> {
        let base = match self.peek() {
            Some('[') => {
                self.pos += 1;
                let u = self.word(&[','])?;
                self.expect(',')?;
                let v = self.word(&[']'])?;
                self.expect(']')?;
                Word::commutator(&u, &v)
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word(&[')'])?;
                self.expect(')')?;
                w
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                match self.alphabet.lookup(&name) {
                    Some(g) => Word::letter(Letter::positive(g)),
                    None => {
                        return Err(Error::Alphabet(format!(
                            "unknown generator `{name}` at line {}, column {}",
                            self.line,
                            self.col0 + self.chars[start].0 + 1
                        )))
                    }
                }
            }
            Some(c) => return Err(self.err(format!("unexpected character `{c}`"))),
            None => return Err(self.err("unexpected end of input")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            if matches!(self.peek(), Some('-') | Some('+')) {
                self.pos += 1;
            }
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
            let k: i64 = digits.parse().map_err(|_| {
                self.pos = start;
                self.err("expected an integer exponent")
            })?;
            if k == 0 {
                self.pos = start;
                return Err(self.err("exponent must be nonzero"));
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }
}

pub(crate) fn parse_word(alphabet: &Alphabet, text: &str, line: usize) -> Result<Word> {
    parse_word_at(alphabet, text, line, 0)
}

pub(crate) fn parse_word_at(alphabet: &Alphabet, text: &str, line: usize, col0: usize) -> Result<Word> {
    let mut cur = Cursor { chars: text.char_indices().collect(), pos: 0, alphabet, line, col0 };
    let w = cur.word(&[])?;
    Ok(w)
}

/// One logical statement of a presentation source with its location.
pub(crate) struct Statement<'a> {
    pub line: usize,
    pub column: usize,
    pub text: &'a str,
}

pub(crate) fn statements(source: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (ln, line) in source.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut offset = 0;
        for part in line.split(';') {
            let trimmed = part.trim_start();
            let lead = part.len() - trimmed.len();
            let text = trimmed.trim_end();
            if !text.is_empty() {
                out.push(Statement { line: ln + 1, column: offset + lead, text });
            }
            offset += part.len() + 1;
        }
    }
    out
}
