use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Binary word tree over named generators and the constants `0, 1, -1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RingWord {
    Gen(String),
    Zero,
    One,
    NegOne,
    Sum(Box<RingWord>, Box<RingWord>),
    Prod(Box<RingWord>, Box<RingWord>),
}

impl RingWord {
    pub fn gen(name: impl Into<String>) -> Self {
        RingWord::Gen(name.into())
    }

    pub fn sum(l: RingWord, r: RingWord) -> Self {
        RingWord::Sum(Box::new(l), Box::new(r))
    }

    pub fn prod(l: RingWord, r: RingWord) -> Self {
        RingWord::Prod(Box::new(l), Box::new(r))
    }

    /// Left-nested product `((w₁·w₂)·w₃)…`; `None` for an empty list.
    pub fn product_chain(words: impl IntoIterator<Item = RingWord>) -> Option<Self> {
        words.into_iter().reduce(RingWord::prod)
    }

    /// `name` repeated `k` times as a left-nested product.
    pub fn power(name: &str, k: usize) -> Option<Self> {
        Self::product_chain(std::iter::repeat_with(|| RingWord::gen(name)).take(k))
    }

    /// Leaf count: 1 per leaf, additive over sums and products.
    pub fn length(&self) -> u64 {
        match self {
            RingWord::Sum(l, r) | RingWord::Prod(l, r) => l.length() + r.length(),
            _ => 1,
        }
    }

    pub fn generators(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            RingWord::Gen(n) => {
                out.insert(n);
            }
            RingWord::Sum(l, r) | RingWord::Prod(l, r) => {
                l.collect_generators(out);
                r.collect_generators(out);
            }
            _ => {}
        }
    }
}

impl fmt::Display for RingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingWord::Gen(n) => f.write_str(n),
            RingWord::Zero => f.write_str("0"),
            RingWord::One => f.write_str("1"),
            RingWord::NegOne => f.write_str("-1"),
            RingWord::Sum(l, r) => write!(f, "({l} + {r})"),
            RingWord::Prod(l, r) => write!(f, "({l} * {r})"),
        }
    }
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Recursive descent over `0 | 1 | -1 | name | (w + w) | (w * w)`.
struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::WordSyntax(format!("{msg} at offset {} in `{}`", self.pos, self.text)))
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<RingWord> {
        self.skip_ws();
        if self.eat("(") {
            let l = self.word()?;
            let sum = if self.eat("+") {
                true
            } else if self.eat("*") {
                false
            } else {
                return self.err("expected `+` or `*`");
            };
            let r = self.word()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            return Ok(if sum { RingWord::sum(l, r) } else { RingWord::prod(l, r) });
        }
        let token: String = {
            let rest = self.rest();
            let len = if let Some(tail) = rest.strip_prefix('-') {
                1 + tail.chars().take_while(char::is_ascii_digit).count()
            } else {
                rest.chars().take_while(|&c| is_name_char(c)).count()
            };
            rest[..len].to_string()
        };
        self.pos += token.len();
        match token.as_str() {
            "0" => Ok(RingWord::Zero),
            "1" => Ok(RingWord::One),
            "-1" => Ok(RingWord::NegOne),
            t if t.starts_with(is_name_start) => Ok(RingWord::Gen(t.to_string())),
            "" => self.err("expected a word"),
            _ => self.err(&format!("unknown constant `{token}`")),
        }
    }
}

impl FromStr for RingWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { text: s, pos: 0 };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(w)
    }
}
