//! The JSON subset: objects, arrays, strings, non-negative integers,
//! `true`, `false` and `null`. Duplicate keys are rejected.

use serde_json::{Map, Number, Value};

use super::DslError;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

const VALUE: &[&str] = &["`{`", "`[`", "string", "integer", "`true`", "`false`", "`null`"];

pub fn parse(text: &str) -> Result<Value, DslError> {
    let mut p = Parser {
        text,
        pos: 0,
        line: 1,
        column: 1,
    };
    p.skip_ws();
    let v = p.value(0)?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error(&["end of input"]));
    }
    Ok(v)
}

/// Nesting limit, so that hostile input cannot overflow the stack.
const MAX_DEPTH: usize = 256;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\n' | '\r')) {
            self.bump();
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) if c.is_control() => format!("{:?}", c),
            Some(c) => format!("`{c}`"),
        }
    }

    fn error(&self, expected: &[&str]) -> DslError {
        DslError::Syntax {
            line: self.line,
            column: self.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found(),
        }
    }

    fn expect(&mut self, c: char, expected: &[&str]) -> Result<(), DslError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn value(&mut self, depth: usize) -> Result<Value, DslError> {
        if depth > MAX_DEPTH {
            return Err(self.error(&["shallower nesting"]));
        }
        match self.peek() {
            Some('{') => self.object(depth),
            Some('[') => self.array(depth),
            Some('"') => Ok(Value::String(self.string()?)),
            Some('0'..='9') => self.integer(),
            Some('t') => self.keyword("true", Value::Bool(true)),
            Some('f') => self.keyword("false", Value::Bool(false)),
            Some('n') => self.keyword("null", Value::Null),
            _ => Err(self.error(VALUE)),
        }
    }

    fn keyword(&mut self, word: &str, v: Value) -> Result<Value, DslError> {
        if self.text[self.pos..].starts_with(word) {
            for _ in 0..word.len() {
                self.bump();
            }
            Ok(v)
        } else {
            Err(self.error(VALUE))
        }
    }

    fn integer(&mut self) -> Result<Value, DslError> {
        let (line, column) = (self.line, self.column);
        let start = self.pos;
        if self.peek() == Some('0') {
            self.bump();
        } else {
            while matches!(self.peek(), Some('0'..='9')) {
                self.bump();
            }
        }
        if matches!(self.peek(), Some('0'..='9' | '.' | 'e' | 'E')) {
            return Err(self.error(&["`,`", "`]`", "`}`"]));
        }
        match self.text[start..self.pos].parse::<u64>() {
            Ok(n) => Ok(Value::Number(Number::from(n))),
            Err(_) => Err(DslError::Syntax {
                line,
                column,
                expected: vec!["integer below 2^64".into()],
                found: format!("`{}`", &self.text[start..self.pos]),
            }),
        }
    }

    fn string(&mut self) -> Result<String, DslError> {
        self.expect('"', &["string"])?;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error(&["`\"`"])),
                Some('"') => {
                    self.bump();
                    return Ok(out);
                }
                Some('\\') => {
                    self.bump();
                    let c = match self.peek() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('/') => '/',
                        Some('b') => '\u{8}',
                        Some('f') => '\u{c}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('t') => '\t',
                        Some('u') => {
                            self.bump();
                            out.push(self.unicode_escape()?);
                            continue;
                        }
                        _ => return Err(self.error(&["escape character"])),
                    };
                    self.bump();
                    out.push(c);
                }
                Some(c) if (c as u32) < 0x20 => return Err(self.error(&["string character", "`\"`"])),
                Some(c) => {
                    self.bump();
                    out.push(c);
                }
            }
        }
    }

    fn hex4(&mut self) -> Result<u32, DslError> {
        let mut v = 0;
        for _ in 0..4 {
            let d = self.peek().and_then(|c| c.to_digit(16)).ok_or_else(|| self.error(&["hex digit"]))?;
            self.bump();
            v = v * 16 + d;
        }
        Ok(v)
    }

    /// The part of a `\u` escape after the `u`, joining surrogate pairs.
    fn unicode_escape(&mut self) -> Result<char, DslError> {
        let hi = self.hex4()?;
        let code = if (0xD800..0xDC00).contains(&hi) {
            if !self.text[self.pos..].starts_with("\\u") {
                return Err(self.error(&["low surrogate escape"]));
            }
            self.bump();
            self.bump();
            let lo = self.hex4()?;
            if !(0xDC00..0xE000).contains(&lo) {
                return Err(self.error(&["low surrogate escape"]));
            }
            0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00)
        } else {
            hi
        };
        char::from_u32(code).ok_or_else(|| self.error(&["unicode scalar value"]))
    }

    fn object(&mut self, depth: usize) -> Result<Value, DslError> {
        self.bump();
        let mut map = Map::new();
        self.skip_ws();
        if self.peek() == Some('}') {
            self.bump();
            return Ok(Value::Object(map));
        }
        loop {
            self.skip_ws();
            if self.peek() != Some('"') {
                return Err(self.error(&["string"]));
            }
            let (line, column) = (self.line, self.column);
            let key = self.string()?;
            if map.contains_key(&key) {
                return Err(DslError::Syntax {
                    line,
                    column,
                    expected: vec!["a key not used before in this object".into()],
                    found: format!("duplicate key {key:?}"),
                });
            }
            self.skip_ws();
            self.expect(':', &["`:`"])?;
            self.skip_ws();
            let v = self.value(depth + 1)?;
            map.insert(key, v);
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some('}') => {
                    self.bump();
                    return Ok(Value::Object(map));
                }
                _ => return Err(self.error(&["`,`", "`}`"])),
            }
        }
    }

    fn array(&mut self, depth: usize) -> Result<Value, DslError> {
        self.bump();
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(Value::Array(items));
        }
        loop {
            self.skip_ws();
            items.push(self.value(depth + 1)?);
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(']') => {
                    self.bump();
                    return Ok(Value::Array(items));
                }
                _ => return Err(self.error(&["`,`", "`]`"])),
            }
        }
    }
}

/// Canonical text: two-space indentation, LF newlines, a trailing newline,
/// arrays of scalars on one line, keys in the order given.
pub fn print(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(out: &mut String, v: &Value, level: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&n.to_string()),
        Value::String(s) => write_string(out, s),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, level);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                indent(out, level + 1);
                write_value(out, item, level + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                indent(out, level + 1);
                write_string(out, key);
                out.push_str(": ");
                write_value(out, item, level + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push('}');
        }
    }
}

fn write_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}
