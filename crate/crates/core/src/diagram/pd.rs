//! Text form of planar diagram codes.
//!
//! Accepted grammar (whitespace anywhere between tokens):
//!
//! ```text
//! PD[ X(a,b,c,d), X[a,b,c,d], ... ]  [base=<arc>]
//! ```

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPd {
    pub crossings: Vec<[u32; 4]>,
    pub basepoint: Option<u32>,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected `{}`, found `{}`", ch as char, c as char)),
            None => self.err(format!("expected `{}`, found end of input", ch as char)),
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            self.err(format!("expected `{word}`"))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a positive arc label");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<u32>() {
            Ok(0) => Err(Error::Parse { pos: start, msg: "arc labels must be positive".into() }),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Parse { pos: start, msg: format!("arc label `{text}` out of range") }),
        }
    }
}

pub fn parse(text: &str) -> Result<RawPd> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    lx.expect_word("PD")?;
    lx.expect(b'[')?;
    let mut crossings = Vec::new();
    if lx.peek() == Some(b']') {
        lx.pos += 1;
    } else {
        loop {
            lx.expect(b'X')?;
            let close = match lx.peek() {
                Some(b'(') => b')',
                Some(b'[') => b']',
                _ => return lx.err("expected `(` or `[` after `X`"),
            };
            lx.pos += 1;
            let mut slots = [0u32; 4];
            for (k, slot) in slots.iter_mut().enumerate() {
                if k > 0 {
                    lx.expect(b',')?;
                }
                *slot = lx.number()?;
            }
            lx.expect(close)?;
            crossings.push(slots);
            match lx.peek() {
                Some(b',') => lx.pos += 1,
                Some(b']') => {
                    lx.pos += 1;
                    break;
                }
                _ => return lx.err("expected `,` or `]` after crossing"),
            }
        }
    }
    let mut basepoint = None;
    if lx.peek().is_some() {
        lx.expect_word("base")?;
        lx.expect(b'=')?;
        basepoint = Some(lx.number()?);
    }
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    Ok(RawPd { crossings, basepoint })
}

pub fn format(crossings: &[[u32; 4]], basepoint: Option<u32>) -> String {
    let body: Vec<String> = crossings
        .iter()
        .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
        .collect();
    let mut s = format!("PD[{}]", body.join(", "));
    if let Some(b) = basepoint {
        s.push_str(&format!(" base={b}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_bracket_styles() {
        let a = parse("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]").unwrap();
        let b = parse(" PD [ X[1,4,2,5],X[3,6,4,1] ,X[5,2,6,3] ] base = 1").unwrap();
        assert_eq!(a.crossings, b.crossings);
        assert_eq!(b.basepoint, Some(1));
        assert_eq!(parse("PD[]").unwrap().crossings.len(), 0);
    }

    #[test]
    fn malformed_tokens_report_position() {
        for bad in ["", "PD(", "PD[X(1,2,3)]", "PD[X(1,2,3,4]", "PD[X(0,1,1,0)]", "PD[] junk", "PD[Y(1,2,3,4)]"] {
            assert!(matches!(parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
        match parse("PD[X(1,2,3,x)]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
    }
}
