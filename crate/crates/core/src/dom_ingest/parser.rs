//! Parser for a deliberately tiny markup subset: nested open/close tags,
//! at most one quoted attribute per tag, and plain text. Self-closing tags,
//! comments, doctypes, processing instructions and character entities are
//! rejected.

use super::forest::DomForest;
use super::IngestError;

pub fn parse_document(text: &str) -> Result<DomForest, IngestError> {
    Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
    }
    .run()
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn run(mut self) -> Result<DomForest, IngestError> {
        let mut forest = DomForest::new();
        let mut open: Vec<(usize, &'a str, usize)> = Vec::new(); // (node, tag, position)

        while self.pos < self.bytes.len() {
            if self.bytes[self.pos] != b'<' {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'<' {
                    self.pos += 1;
                }
                let raw = &self.src[start..self.pos];
                if let Some(off) = raw.find('&') {
                    return Err(IngestError::UnsupportedConstruct {
                        token: entity_token(&raw[off..]),
                    });
                }
                let content = raw.trim();
                if content.is_empty() {
                    continue;
                }
                let Some(&(parent, _, _)) = open.last() else {
                    return Err(malformed(start, "text outside of any element"));
                };
                forest.add_text(parent, content);
                continue;
            }

            let tag_start = self.pos;
            match self.bytes.get(self.pos + 1) {
                Some(b'/') => {
                    self.pos += 2;
                    let name = self.name(tag_start)?;
                    self.skip_ws();
                    self.expect(b'>', tag_start)?;
                    match open.pop() {
                        Some((_, tag, _)) if tag == name => {}
                        Some((_, tag, _)) => {
                            return Err(malformed(
                                tag_start,
                                &format!("</{name}> does not close <{tag}>"),
                            ))
                        }
                        None => return Err(malformed(tag_start, &format!("stray </{name}>"))),
                    }
                }
                Some(b'!') | Some(b'?') => {
                    let end = self.src[tag_start..]
                        .find('>')
                        .map_or(self.src.len(), |i| tag_start + i + 1);
                    return Err(IngestError::UnsupportedConstruct {
                        token: self.src[tag_start..end].to_owned(),
                    });
                }
                _ => {
                    self.pos += 1;
                    let name = self.name(tag_start)?;
                    self.skip_ws();
                    let mut attribute = None;
                    if self.peek().is_some_and(is_name_start) {
                        attribute = Some(self.attribute(tag_start)?);
                        self.skip_ws();
                        if self.peek().is_some_and(is_name_start) {
                            return Err(IngestError::UnsupportedConstruct {
                                token: format!("second attribute on <{name}>"),
                            });
                        }
                    }
                    if self.peek() == Some(b'/') {
                        return Err(IngestError::UnsupportedConstruct {
                            token: format!("<{name}/>"),
                        });
                    }
                    self.expect(b'>', tag_start)?;
                    let parent = open.last().map_or(forest.document_root_index(), |o| o.0);
                    let node = forest.add_element(parent, name);
                    if let Some((attr, value)) = attribute {
                        forest.add_attribute(node, attr, value);
                    }
                    open.push((node, name, tag_start));
                }
            }
        }

        if let Some(&(_, tag, at)) = open.last() {
            return Err(malformed(at, &format!("<{tag}> is never closed")));
        }
        Ok(forest)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: u8, tag_start: usize) -> Result<(), IngestError> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(malformed(
                self.pos,
                &format!(
                    "expected '{}' in tag at {tag_start}, found '{}'",
                    want as char, b as char
                ),
            )),
            None => Err(malformed(tag_start, "unterminated tag")),
        }
    }

    fn name(&mut self, tag_start: usize) -> Result<&'a str, IngestError> {
        let start = self.pos;
        if !self.peek().is_some_and(is_name_start) {
            return Err(malformed(tag_start, "missing tag name"));
        }
        while self.peek().is_some_and(is_name_char) {
            self.pos += 1;
        }
        Ok(&self.src[start..self.pos])
    }

    fn attribute(&mut self, tag_start: usize) -> Result<(&'a str, &'a str), IngestError> {
        let name = self.name(tag_start)?;
        self.skip_ws();
        self.expect(b'=', tag_start)?;
        self.skip_ws();
        let quote = match self.peek() {
            Some(q @ (b'"' | b'\'')) => q,
            _ => return Err(malformed(self.pos, "attribute value must be quoted")),
        };
        self.pos += 1;
        let start = self.pos;
        while self.peek().is_some_and(|b| b != quote) {
            self.pos += 1;
        }
        if self.peek().is_none() {
            return Err(malformed(start, "unterminated attribute value"));
        }
        let value = &self.src[start..self.pos];
        self.pos += 1;
        if value.contains('&') {
            return Err(IngestError::UnsupportedConstruct {
                token: entity_token(&value[value.find('&').unwrap_or(0)..]),
            });
        }
        Ok((name, value))
    }
}

fn is_name_start(b: u8) -> bool {
    b.is_ascii_alphabetic()
}

fn is_name_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'-' || b == b'_' || b == b':'
}

fn entity_token(s: &str) -> String {
    let end = s.find(';').map_or(s.len().min(12), |i| i + 1);
    s[..end].to_owned()
}

fn malformed(position: usize, reason: &str) -> IngestError {
    IngestError::MalformedMarkup {
        position,
        reason: reason.to_owned(),
    }
}
