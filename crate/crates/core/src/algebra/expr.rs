use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::UnaryOp;

/// The four binary operations of the map algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    /// `∩`, written `&`.
    Intersect,
    /// `∪`, written `|`.
    Union,
    /// `∗`, written `*`.
    Join,
    /// `□`, written `#`.
    Box,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 4] = [BinaryOp::Intersect, BinaryOp::Union, BinaryOp::Join, BinaryOp::Box];

    pub fn token(self) -> char {
        match self {
            BinaryOp::Intersect => '&',
            BinaryOp::Union => '|',
            BinaryOp::Join => '*',
            BinaryOp::Box => '#',
        }
    }

    pub fn from_token(c: char) -> Option<BinaryOp> {
        BinaryOp::ALL.into_iter().find(|op| op.token() == c)
    }
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinaryOp::Intersect => "∩",
            BinaryOp::Union => "∪",
            BinaryOp::Join => "∗",
            BinaryOp::Box => "□",
        })
    }
}

/// A word of the map algebra. Leaves are input slots `$0..$k−1`, each used
/// exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Leaf(usize),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn leaf(slot: usize) -> Expr {
        Expr::Leaf(slot)
    }

    pub fn unary(op: UnaryOp, child: Expr) -> Expr {
        Expr::Unary(op, Box::new(child))
    }

    pub fn binary(op: BinaryOp, left: Expr, right: Expr) -> Expr {
        Expr::Binary(op, Box::new(left), Box::new(right))
    }

    /// Applies `ops` innermost first: `[Δ, γ]` gives `γ(Δ(self))`.
    pub fn apply_word(self, ops: &[UnaryOp]) -> Expr {
        ops.iter().fold(self, |e, &op| Expr::unary(op, e))
    }

    /// The grade `k` of the word.
    pub fn leaf_count(&self) -> usize {
        match self {
            Expr::Leaf(_) => 1,
            Expr::Unary(_, c) => c.leaf_count(),
            Expr::Binary(_, l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Slots in left-to-right order.
    pub fn slots(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_slots(&mut out);
        out
    }

    fn collect_slots(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Leaf(s) => out.push(*s),
            Expr::Unary(_, c) => c.collect_slots(out),
            Expr::Binary(_, l, r) => {
                l.collect_slots(out);
                r.collect_slots(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Leaf(_) => 0,
            Expr::Unary(_, c) => 1 + c.depth(),
            Expr::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Checks that the slots are exactly `0..k`, each once.
    pub fn validate_slots(&self) -> Result<()> {
        let slots = self.slots();
        let k = slots.len();
        let mut seen = vec![false; k];
        for &s in &slots {
            if s >= k {
                return Err(Error::SlotNumbering { expected: k, msg: format!("found ${s}") });
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::SlotNumbering { expected: k, msg: format!("${s} used twice") });
            }
        }
        Ok(())
    }

    /// Rendering without spaces, used in manifests.
    pub fn render_compact(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, "");
        out
    }

    fn render_into(&self, out: &mut String, sep: &str) {
        match self {
            Expr::Leaf(s) => out.push_str(&format!("${s}")),
            Expr::Unary(op, c) => {
                out.push_str(op.keyword());
                out.push('(');
                c.render_into(out, sep);
                out.push(')');
            }
            Expr::Binary(op, l, r) => {
                l.render_into(out, sep);
                out.push_str(sep);
                out.push(op.token());
                out.push_str(sep);
                if matches!(**r, Expr::Binary(..)) {
                    out.push('(');
                    r.render_into(out, sep);
                    out.push(')');
                } else {
                    r.render_into(out, sep);
                }
            }
        }
    }

    /// Mathematical notation, e.g. `γ(Δ($0)) ∗ $1`.
    pub fn render_math(&self) -> String {
        match self {
            Expr::Leaf(s) => format!("${s}"),
            Expr::Unary(op, c) => format!("{op}({})", c.render_math()),
            Expr::Binary(op, l, r) => {
                let right = match **r {
                    Expr::Binary(..) => format!("({})", r.render_math()),
                    _ => r.render_math(),
                };
                format!("{} {op} {right}", l.render_math())
            }
        }
    }
}

/// Parses the concrete syntax, e.g. `comp(up($0)) * idown($1)`.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut parser = Parser { text, pos: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    expr.validate_slots()?;
    Ok(expr)
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        parse_expr(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.render_into(&mut out, " ");
        f.write_str(&out)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        while let Some(op) = self.peek().and_then(BinaryOp::from_token) {
            self.pos += 1;
            let right = self.term()?;
            left = Expr::binary(op, left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('$') => {
                self.pos += 1;
                let digits: String = self.text[self.pos..].chars().take_while(char::is_ascii_digit).collect();
                if digits.is_empty() {
                    return Err(self.error("expected slot digits after `$`"));
                }
                let slot = digits.parse::<usize>().map_err(|_| self.error("slot index too large"))?;
                self.pos += digits.len();
                Ok(Expr::Leaf(slot))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name: String = self.text[self.pos..]
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                    .collect();
                let op = UnaryOp::from_keyword(&name).ok_or_else(|| Error::UnknownOperator(name.clone()))?;
                self.pos += name.len();
                if self.peek() != Some('(') {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("`{name}` must be applied as `{name}(...)`"),
                    });
                }
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Expr::unary(op, inner))
            }
            Some(_) => Err(self.error("expected `$<n>`, an operator name or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
