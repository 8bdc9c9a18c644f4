//! Formula text.
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := '!' factor | '(' expr ')' | variable | '0' | '1'
//! ```
//!
//! Variables are `x1`, `x2`, ... and whitespace is ignored. `!` written
//! directly before a variable negates the input literal; before anything
//! else, including a parenthesized variable, it is a NOT gate. A chain
//! `a & b & c` is one gate with three inputs and parentheses group a new
//! gate. `1` and `0` are the empty AND and the empty OR.
//!
//! [`to_text`] writes every compound operand in parentheses, so parsing
//! its output gives back the same gate tree. Single-input gates have no
//! textual form and are written as their input.

use std::fmt::Write as _;

use hazardkit_core::{Circuit, CnfFormula, DnfFormula, Literal, Node, PartialAssignment};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("formula mentions x{found} but only {num_vars} variables were declared")]
    TooManyVars { found: usize, num_vars: usize },
    #[error("formula is not a {0}")]
    WrongShape(&'static str),
    #[error("assignment {text:?} has length {found}, expected {expected}")]
    AssignmentLength {
        text: String,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Invalid(#[from] hazardkit_core::Error),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    nodes: Vec<Node>,
    max_var: usize,
}

impl Parser<'_> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..at];
        ParseError::Syntax {
            line: before.matches('\n').count() + 1,
            column: before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn unexpected(&self, c: Option<char>, expected: &str) -> ParseError {
        let what = match c {
            Some(c) => format!("unexpected {c:?}"),
            None => "unexpected end of input".to_string(),
        };
        self.error(self.pos, format!("{what}, expected {expected}"))
    }

    fn chain(
        &mut self,
        op: char,
        next: fn(&mut Self) -> Result<usize, ParseError>,
    ) -> Result<usize, ParseError> {
        let first = next(self)?;
        let mut items = vec![first];
        while self.peek() == Some(op) {
            self.bump();
            items.push(next(self)?);
        }
        Ok(match (items.len(), op) {
            (1, _) => first,
            (_, '&') => self.push(Node::And(items)),
            _ => self.push(Node::Or(items)),
        })
    }

    fn expr(&mut self) -> Result<usize, ParseError> {
        self.chain('|', Self::term)
    }

    fn term(&mut self) -> Result<usize, ParseError> {
        self.chain('&', Self::factor)
    }

    fn factor(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some('!') => {
                self.bump();
                let bare = matches!(self.peek(), Some('x' | '!'));
                let id = self.factor()?;
                match self.nodes[id] {
                    Node::Input(l) if bare => {
                        self.nodes[id] = Node::Input(l.complement());
                        Ok(id)
                    }
                    _ => Ok(self.push(Node::Not(id))),
                }
            }
            Some('(') => {
                self.bump();
                let id = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.bump();
                        Ok(id)
                    }
                    c => Err(self.unexpected(c, "')'")),
                }
            }
            Some('x') => {
                let start = self.pos;
                self.bump();
                let digits = self.src[self.pos..]
                    .chars()
                    .take_while(char::is_ascii_alphanumeric)
                    .count();
                let text = &self.src[self.pos..self.pos + digits];
                self.pos += digits;
                let index: usize = text.parse().map_err(|_| {
                    self.error(
                        start,
                        format!("bad variable name x{text}, expected x1, x2, ..."),
                    )
                })?;
                if index == 0 {
                    return Err(self.error(start, "variables are numbered from x1"));
                }
                self.max_var = self.max_var.max(index);
                Ok(self.push(Node::Input(Literal::pos(index - 1))))
            }
            Some('1') => {
                self.bump();
                Ok(self.push(Node::And(vec![])))
            }
            Some('0') => {
                self.bump();
                Ok(self.push(Node::Or(vec![])))
            }
            c => Err(self.unexpected(c, "a variable, a constant, '!' or '('")),
        }
    }
}

/// Parses formula text. The circuit has `num_vars` variables when given,
/// otherwise as many as the highest index mentioned.
pub fn parse_formula(text: &str, num_vars: Option<usize>) -> Result<Circuit, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        nodes: Vec::new(),
        max_var: 0,
    };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.error(
            p.pos,
            format!("unexpected {c:?} after the end of the formula"),
        ));
    }
    let n = num_vars.unwrap_or(p.max_var);
    if n < p.max_var {
        return Err(ParseError::TooManyVars {
            found: p.max_var,
            num_vars: n,
        });
    }
    Ok(Circuit::new(n, p.nodes, out)?)
}

/// Parses an OR of ANDs of literals. Contradictory terms are kept and
/// repeated literals within a term are merged.
pub fn parse_dnf(text: &str, num_vars: Option<usize>) -> Result<DnfFormula, ParseError> {
    DnfFormula::from_circuit(&parse_formula(text, num_vars)?).ok_or(ParseError::WrongShape("DNF"))
}

/// Parses an AND of ORs of literals.
pub fn parse_cnf(text: &str, num_vars: Option<usize>) -> Result<CnfFormula, ParseError> {
    CnfFormula::from_circuit(&parse_formula(text, num_vars)?).ok_or(ParseError::WrongShape("CNF"))
}

/// Parses a string over `{0, 1, u}`; position `i` is variable `x(i+1)`.
pub fn parse_partial_assignment(
    text: &str,
    num_vars: usize,
) -> Result<PartialAssignment, ParseError> {
    let a: PartialAssignment = text.trim().parse()?;
    if a.len() != num_vars {
        return Err(ParseError::AssignmentLength {
            text: text.to_string(),
            expected: num_vars,
            found: a.len(),
        });
    }
    Ok(a)
}

/// Skips single-input AND/OR gates.
fn effective(c: &Circuit, mut id: usize) -> usize {
    while let Node::And(ch) | Node::Or(ch) = &c.nodes()[id] {
        if ch.len() != 1 {
            break;
        }
        id = ch[0];
    }
    id
}

fn write_node(c: &Circuit, id: usize, top: bool, out: &mut String) {
    let id = effective(c, id);
    match &c.nodes()[id] {
        Node::Input(l) => {
            let _ = write!(out, "{}x{}", if l.negated { "!" } else { "" }, l.var + 1);
        }
        Node::And(ch) if ch.is_empty() => out.push('1'),
        Node::Or(ch) if ch.is_empty() => out.push('0'),
        Node::Not(child) => {
            out.push_str("!(");
            write_node(c, *child, true, out);
            out.push(')');
        }
        node @ (Node::And(ch) | Node::Or(ch)) => {
            let op = if matches!(node, Node::And(_)) {
                '&'
            } else {
                '|'
            };
            if !top {
                out.push('(');
            }
            for (k, &child) in ch.iter().enumerate() {
                if k > 0 {
                    out.push(op);
                }
                write_node(c, child, false, out);
            }
            if !top {
                out.push(')');
            }
        }
    }
}

/// Formula text for a circuit. Shared gates are written out once per use.
pub fn to_text(c: &Circuit) -> String {
    let mut out = String::new();
    write_node(c, c.output(), true, &mut out);
    out
}
