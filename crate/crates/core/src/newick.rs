//! Newick reading and writing.
//!
//! Branch lengths, inner-node labels and `[...]` comments are accepted and
//! discarded. Labels are kept verbatim; names containing Newick punctuation or
//! whitespace are written in single quotes with `''` as the escaped quote.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::tree::{Subtree, Tree};

/// Parses a `;`-terminated Newick expression. Inner nodes of any arity are
/// accepted; see [`parse_binary_newick`] for the strict variant.
pub fn parse_newick(text: &str) -> Result<Tree> {
    let mut parser = Parser {
        src: text.as_bytes(),
        text,
        pos: 0,
        labels: HashSet::new(),
    };
    let shape = parser.tree()?;
    Tree::from_subtree(&shape)
}

/// Like [`parse_newick`] but rejects inner nodes whose arity is not 2.
pub fn parse_binary_newick(text: &str) -> Result<Tree> {
    let tree = parse_newick(text)?;
    tree.check_binary()?;
    Ok(tree)
}

pub fn serialize_newick(tree: &Tree) -> String {
    let mut out = String::new();
    write_subtree(&tree.to_subtree(), &mut out);
    out.push(';');
    out
}

fn write_subtree(sub: &Subtree, out: &mut String) {
    match sub {
        Subtree::Leaf(label) => write_label(label, out),
        Subtree::Inner(children) => {
            out.push('(');
            for (i, child) in children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_subtree(child, out);
            }
            out.push(')');
        }
    }
}

fn needs_quotes(label: &str) -> bool {
    label.is_empty()
        || label
            .chars()
            .any(|c| is_reserved(c as u32) || c.is_whitespace())
}

fn is_reserved(c: u32) -> bool {
    matches!(
        char::from_u32(c),
        Some('(' | ')' | '[' | ']' | '\'' | ':' | ';' | ',')
    )
}

fn write_label(label: &str, out: &mut String) {
    if needs_quotes(label) {
        out.push('\'');
        out.push_str(&label.replace('\'', "''"));
        out.push('\'');
    } else {
        out.push_str(label);
    }
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    labels: HashSet<String>,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> Result<()> {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => self.pos += 1,
                Some(b'[') => {
                    let start = self.pos;
                    match self.src[start..].iter().position(|&c| c == b']') {
                        Some(off) => self.pos = start + off + 1,
                        None => return self.err("unterminated comment"),
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn tree(&mut self) -> Result<Subtree> {
        self.skip_ws()?;
        let shape = self.subtree()?;
        self.skip_ws()?;
        if self.peek() != Some(b';') {
            return self.err("expected ';'");
        }
        self.pos += 1;
        self.skip_ws()?;
        if self.pos != self.src.len() {
            return self.err("trailing input after ';'");
        }
        Ok(shape)
    }

    fn subtree(&mut self) -> Result<Subtree> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut children = Vec::new();
            loop {
                self.skip_ws()?;
                children.push(self.subtree()?);
                self.skip_ws()?;
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or ')'"),
                }
            }
            self.skip_ws()?;
            // inner-node label, discarded
            self.label()?;
            self.branch_length()?;
            Ok(Subtree::Inner(children))
        } else {
            let start = self.pos;
            let label = self.label()?;
            if label.is_empty() {
                return Err(Error::EmptyLabel { pos: start });
            }
            self.branch_length()?;
            if !self.labels.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            Ok(Subtree::Leaf(label))
        }
    }

    fn label(&mut self) -> Result<String> {
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            let mut out = String::new();
            loop {
                let rest = &self.text[self.pos..];
                match rest.find('\'') {
                    None => return self.err("unterminated quoted label"),
                    Some(off) => {
                        out.push_str(&rest[..off]);
                        self.pos += off + 1;
                        if self.peek() == Some(b'\'') {
                            out.push('\'');
                            self.pos += 1;
                        } else {
                            return Ok(out);
                        }
                    }
                }
            }
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() || is_reserved(c as u32) {
                break;
            }
            self.pos += 1;
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn branch_length(&mut self) -> Result<()> {
        self.skip_ws()?;
        if self.peek() != Some(b':') {
            return Ok(());
        }
        self.pos += 1;
        self.skip_ws()?;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || matches!(c, b'.' | b'-' | b'+' | b'e' | b'E') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.text[start..self.pos].parse::<f64>().is_err() {
            self.pos = start;
            return self.err("invalid branch length");
        }
        self.skip_ws()
    }
}
