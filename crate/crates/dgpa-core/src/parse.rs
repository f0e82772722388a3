//! Parser for the element display syntax.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ['-'] factor ('*' factor)*
//! factor := rational | word | name
//! word   := name ('.' name)*
//! ```
//!
//! A `name` resolves to a generator when the ambient set knows it, otherwise
//! to a named scalar parameter. Rational literals are `p` or `p/q`.

use std::collections::BTreeMap;

use crate::algebra::{Element, GeneratorSet, Word};
use crate::error::EngineError;
use crate::scalar::Scalar;

pub struct ExprParser<'a> {
    ctx: &'a GeneratorSet,
    params: &'a BTreeMap<String, Scalar>,
}

impl<'a> ExprParser<'a> {
    pub fn new(ctx: &'a GeneratorSet, params: &'a BTreeMap<String, Scalar>) -> Self {
        ExprParser { ctx, params }
    }

    pub fn parse(&self, text: &str) -> Result<Element, EngineError> {
        let mut cursor = Cursor {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let e = self.parse_expr(&mut cursor)?;
        cursor.skip_ws();
        if !cursor.at_end() {
            return Err(cursor.error("unexpected trailing input"));
        }
        Ok(e)
    }

    fn parse_expr(&self, c: &mut Cursor) -> Result<Element, EngineError> {
        let mut acc = self.parse_term(c)?;
        loop {
            c.skip_ws();
            match c.peek() {
                Some(b'+') => {
                    c.bump();
                    acc = acc.add(&self.parse_term(c)?);
                }
                Some(b'-') => {
                    c.bump();
                    acc = acc.sub(&self.parse_term(c)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&self, c: &mut Cursor) -> Result<Element, EngineError> {
        c.skip_ws();
        let mut coeff = Scalar::one();
        if c.peek() == Some(b'-') {
            c.bump();
            coeff = -coeff;
        }
        let mut word = Word::unit();
        loop {
            c.skip_ws();
            match c.peek() {
                Some(ch) if ch.is_ascii_digit() => {
                    coeff = &coeff * &self.parse_rational(c)?;
                }
                Some(ch) if is_name_start(ch) => {
                    let (w, s) = self.parse_word_or_param(c)?;
                    word = word.concat(&w);
                    coeff = &coeff * &s;
                }
                _ => return Err(c.error("expected a coefficient or a generator")),
            }
            c.skip_ws();
            if c.peek() == Some(b'*') {
                c.bump();
                continue;
            }
            break;
        }
        Ok(Element::from_term(word, coeff))
    }

    fn parse_rational(&self, c: &mut Cursor) -> Result<Scalar, EngineError> {
        let start = c.pos;
        while c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            c.bump();
        }
        let mut text = c.text[start..c.pos].to_string();
        c.skip_ws();
        if c.peek() == Some(b'/') {
            c.bump();
            c.skip_ws();
            let dstart = c.pos;
            while c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
                c.bump();
            }
            if dstart == c.pos {
                return Err(c.error("expected denominator digits after '/'"));
            }
            text.push('/');
            text.push_str(&c.text[dstart..c.pos]);
        }
        text.parse::<Scalar>()
            .map_err(|m| c.error_at(start, &m))
    }

    /// A dotted chain of names. Generator names become letters; a lone
    /// non-generator name is a scalar parameter.
    fn parse_word_or_param(&self, c: &mut Cursor) -> Result<(Word, Scalar), EngineError> {
        let mut word = Word::unit();
        let mut coeff = Scalar::one();
        loop {
            let start = c.pos;
            let name = c.take_name();
            if let Some(id) = self.ctx.lookup(&name) {
                word.letters.push(id);
            } else if let Some(val) = self.params.get(&name) {
                if !word.is_empty() {
                    return Err(c.error_at(start, &format!("parameter {name:?} inside a word")));
                }
                coeff = &coeff * val;
            } else {
                return Err(c.error_at(start, &format!("unknown name {name:?}")));
            }
            if c.peek() == Some(b'.') {
                c.bump();
                if !c.peek().is_some_and(is_name_start) {
                    return Err(c.error("expected a generator name after '.'"));
                }
                continue;
            }
            return Ok((word, coeff));
        }
    }
}

fn is_name_start(ch: u8) -> bool {
    ch.is_ascii_alphabetic() || ch == b'_'
}

fn is_name_char(ch: u8) -> bool {
    ch.is_ascii_alphanumeric() || ch == b'_'
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|ch| ch.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn take_name(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(is_name_char) {
            self.bump();
        }
        self.text[start..self.pos].to_string()
    }

    fn error(&self, message: &str) -> EngineError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, offset: usize, message: &str) -> EngineError {
        EngineError::Parse {
            offset,
            context: self.text.to_string(),
            message: message.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GenId;

    fn setup() -> (GeneratorSet, BTreeMap<String, Scalar>) {
        let ctx = GeneratorSet::new(&[("x1", 1), ("x2", 2)]).unwrap();
        let mut params = BTreeMap::new();
        params.insert("p".to_string(), Scalar::from_int(3));
        (ctx, params)
    }

    #[test]
    fn parses_basic_terms() {
        let (ctx, params) = setup();
        let p = ExprParser::new(&ctx, &params);
        let e = p.parse("2/3 * x1.x2 + x2 - 1").unwrap();
        assert_eq!(e.coeff(&Word::from_ids(&[GenId(0), GenId(1)])), Scalar::ratio(2, 3));
        assert_eq!(e.coeff(&Word::single(GenId(1))), Scalar::one());
        assert_eq!(e.coeff(&Word::unit()), Scalar::from_int(-1));
    }

    #[test]
    fn parameter_substitution() {
        let (ctx, params) = setup();
        let p = ExprParser::new(&ctx, &params);
        let e = p.parse("-p * x1.x2").unwrap();
        assert_eq!(
            e.coeff(&Word::from_ids(&[GenId(0), GenId(1)])),
            Scalar::from_int(-3)
        );
    }

    #[test]
    fn round_trips_display() {
        let (ctx, params) = setup();
        let p = ExprParser::new(&ctx, &params);
        for text in ["0", "1", "2/3", "x1", "x1.x2 + -1 * x2", "5 * x2.x2"] {
            let e = p.parse(text).unwrap();
            let shown = e.display(&ctx).to_string();
            assert_eq!(p.parse(&shown).unwrap(), e, "{text} -> {shown}");
        }
    }

    #[test]
    fn zero_literal() {
        let (ctx, params) = setup();
        let p = ExprParser::new(&ctx, &params);
        assert!(p.parse("0").unwrap().is_zero());
    }

    #[test]
    fn position_annotated_errors() {
        let (ctx, params) = setup();
        let p = ExprParser::new(&ctx, &params);
        match p.parse("x1 + zz") {
            Err(EngineError::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
