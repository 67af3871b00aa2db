//! Byte cursor shared by the element and polynomial parsers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::ParseError;
use crate::exterior::Scalar;

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next non-whitespace byte, without consuming it.
    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Byte directly under the cursor; whitespace is significant here.
    pub(crate) fn peek_raw(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) {
        self.pos += 1;
    }

    pub(crate) fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, word: &str) -> bool {
        let word = word.as_bytes();
        if self.src[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    /// Unsigned decimal literal directly under the cursor.
    pub(crate) fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a number"));
        }
        // Input is a &str and we only stepped over ASCII digits.
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    pub(crate) fn unsigned(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        self.digits()?
            .parse::<u64>()
            .map_err(|_| ParseError::new(start, "number too large"))
    }

    /// `digits` or `digits/digits`, starting at the cursor.
    pub(crate) fn rational(&mut self) -> Result<Scalar, ParseError> {
        let start = self.pos;
        let numer: BigInt = self.digits()?.parse().unwrap();
        if self.peek_raw() == Some(b'/') {
            self.bump();
            let denom: BigInt = self.digits()?.parse().unwrap();
            if denom.is_zero() {
                return Err(ParseError::new(start, "zero denominator"));
            }
            Ok(Scalar::new(numer, denom))
        } else {
            Ok(Scalar::from_integer(numer))
        }
    }
}
