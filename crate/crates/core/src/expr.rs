//! Set-theoretic expressions over variable contents.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::atom::AtomSet;
use crate::content::content;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// A region of an information diagram written with unions, intersections
/// and differences of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpression {
    Var(String),
    Union(Box<SetExpression>, Box<SetExpression>),
    Intersection(Box<SetExpression>, Box<SetExpression>),
    Difference(Box<SetExpression>, Box<SetExpression>),
}

impl SetExpression {
    pub fn var(name: impl Into<String>) -> Self {
        SetExpression::Var(name.into())
    }

    pub fn union(self, other: SetExpression) -> Self {
        SetExpression::Union(Box::new(self), Box::new(other))
    }

    pub fn intersection(self, other: SetExpression) -> Self {
        SetExpression::Intersection(Box::new(self), Box::new(other))
    }

    pub fn difference(self, other: SetExpression) -> Self {
        SetExpression::Difference(Box::new(self), Box::new(other))
    }

    /// Intersection of all named variables (the co-information region).
    pub fn all_of<S: AsRef<str>>(names: &[S]) -> Option<Self> {
        let mut iter = names.iter().map(|n| SetExpression::var(n.as_ref()));
        let first = iter.next()?;
        Some(iter.fold(first, SetExpression::intersection))
    }

    /// Variable names in order of first appearance.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            SetExpression::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            SetExpression::Union(a, b)
            | SetExpression::Intersection(a, b)
            | SetExpression::Difference(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates the expression as a membership predicate, given which
    /// variables contain the point.
    pub fn holds(&self, member: &impl Fn(&str) -> bool) -> bool {
        match self {
            SetExpression::Var(v) => member(v),
            SetExpression::Union(a, b) => a.holds(member) || b.holds(member),
            SetExpression::Intersection(a, b) => a.holds(member) && b.holds(member),
            SetExpression::Difference(a, b) => a.holds(member) && !b.holds(member),
        }
    }

    /// Substitutes each variable by its content and evaluates the result as
    /// a set of atoms.
    pub fn evaluate(&self, bindings: &HashMap<String, Partition>) -> Result<AtomSet> {
        let mut contents: BTreeMap<&str, AtomSet> = BTreeMap::new();
        for v in self.variables() {
            let part = bindings
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
            contents.insert(v, content(part).enumerate());
        }
        self.eval_with(&contents)
    }

    fn eval_with(&self, contents: &BTreeMap<&str, AtomSet>) -> Result<AtomSet> {
        match self {
            SetExpression::Var(v) => Ok(contents[v.as_str()].clone()),
            SetExpression::Union(a, b) => a.eval_with(contents)?.union(&b.eval_with(contents)?),
            SetExpression::Intersection(a, b) => {
                a.eval_with(contents)?.intersection(&b.eval_with(contents)?)
            }
            SetExpression::Difference(a, b) => {
                a.eval_with(contents)?.difference(&b.eval_with(contents)?)
            }
        }
    }

    /// Parses `&` (intersection), `|` (union) and `-` (difference) over
    /// identifiers, with parentheses. `&` binds tighter than `|` and `-`,
    /// which associate to the left.
    pub fn parse(input: &str) -> std::result::Result<Self, ParseError> {
        let tokens = tokenize(input)?;
        let mut p = Parser { tokens, pos: 0 };
        let expr = p.sum()?;
        match p.tokens.get(p.pos) {
            None => Ok(expr),
            Some((col, _)) => Err(ParseError {
                column: *col,
                message: "unexpected trailing input".into(),
            }),
        }
    }
}

impl fmt::Display for SetExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpression::Var(v) => write!(f, "{v}"),
            SetExpression::Union(a, b) => write!(f, "({a} | {b})"),
            SetExpression::Intersection(a, b) => write!(f, "({a} & {b})"),
            SetExpression::Difference(a, b) => write!(f, "({a} - {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    And,
    Or,
    Minus,
    Open,
    Close,
}

fn tokenize(input: &str) -> std::result::Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '&' => Token::And,
            '|' => Token::Or,
            '-' => Token::Minus,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((col, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(c, _)| *c)
            .or_else(|| self.tokens.last().map(|(c, _)| c + 1))
            .unwrap_or(1)
    }

    fn sum(&mut self) -> std::result::Result<SetExpression, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Token::Or) => {
                    self.pos += 1;
                    lhs = lhs.union(self.product()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = lhs.difference(self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> std::result::Result<SetExpression, ParseError> {
        let mut lhs = self.atom()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = lhs.intersection(self.atom()?);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> std::result::Result<SetExpression, ParseError> {
        let column = self.column();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(SetExpression::Var(name))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(ParseError {
                        column: self.column(),
                        message: "expected ')'".into(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(ParseError {
                column,
                message: "expected a variable name or '('".into(),
            }),
        }
    }
}
