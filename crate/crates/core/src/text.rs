//! Small character cursor shared by the line-oriented parsers.

use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    /// Cursor over `s`, reporting positions relative to `line` and starting column `col0`.
    pub fn new(s: &'a str, line: usize, col0: usize) -> Self {
        Cursor {
            chars: s.chars().collect(),
            pos: 0,
            line,
            col0,
            _src: s,
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col0 + self.pos + 1,
            msg: msg.into(),
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.err(format!("expected '{c}', found '{d}'"))),
            None => Err(self.err(format!("expected '{c}', found end of line"))),
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Identifier: a letter followed by letters, digits, `_` or `:`.
    pub fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return Err(self.err(format!("expected a name, found '{c}'"))),
            None => return Err(self.err("expected a name, found end of line")),
        }
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == '_' || c == ':' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// Unsigned integer or fraction `n/d`, as text.
    pub fn number(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        if self.chars.get(self.pos) == Some(&'/') {
            let save = self.pos;
            self.pos += 1;
            let ds = self.pos;
            while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == ds {
                self.pos = save;
            }
        }
        Some(self.chars[start..self.pos].iter().collect())
    }
}

/// Splits a line into its first keyword and the remainder, with the remainder's column offset.
pub(crate) fn keyword(line: &str) -> Option<(&str, &str, usize)> {
    let t = line.trim_start();
    if t.is_empty() {
        return None;
    }
    let lead = line.len() - t.len();
    let end = t.find(char::is_whitespace).unwrap_or(t.len());
    Some((&t[..end], &t[end..], lead + end))
}

/// Strips a `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}
