//! The group description language.
//!
//! ```text
//! expr := term { "x" term }
//! term := atom | "(" expr ")"
//! atom := ("C" | "D" | "S" | "A") unsigned-integer
//! ```
//!
//! Letters are case-insensitive and whitespace between tokens is ignored.
//! `D<m>` is the dihedral group of order `m`, not of the `m`-gon.

use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::error::Result;
use crate::group::{Group, Realizer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::Cyclic => 'C',
            Family::Dihedral => 'D',
            Family::Symmetric => 'S',
            Family::Alternating => 'A',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'C' => Some(Family::Cyclic),
            'D' => Some(Family::Dihedral),
            'S' => Some(Family::Symmetric),
            'A' => Some(Family::Alternating),
            _ => None,
        }
    }
}

/// Parse tree of a group description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Symmetric(u64),
    Alternating(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    fn atom(family: Family, n: u64) -> GroupSpec {
        match family {
            Family::Cyclic => GroupSpec::Cyclic(n),
            Family::Dihedral => GroupSpec::Dihedral(n),
            Family::Symmetric => GroupSpec::Symmetric(n),
            Family::Alternating => GroupSpec::Alternating(n),
        }
    }

    pub fn product(left: GroupSpec, right: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(left), Box::new(right))
    }

    /// Leaves in left-to-right order.
    pub fn atoms(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(l, r) => {
                let mut v = l.atoms();
                v.extend(r.atoms());
                v
            }
            leaf => vec![leaf],
        }
    }

    /// Exact order, without building anything.
    pub fn order(&self) -> BigUint {
        let factorial = |n: u64| (1..=n).fold(BigUint::one(), |acc, k| acc * k);
        match *self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) => BigUint::from(n),
            GroupSpec::Symmetric(n) => factorial(n),
            GroupSpec::Alternating(n) if n >= 2 => factorial(n) / 2u32,
            GroupSpec::Alternating(_) => BigUint::one(),
            GroupSpec::Product(ref l, ref r) => l.order() * r.order(),
        }
    }

    /// Whether this is a single atom naming a nonabelian simple group.
    pub fn is_nonabelian_simple_atom(&self) -> bool {
        matches!(*self, GroupSpec::Alternating(n) if n >= 5)
    }

    /// Builds the multiplication table, nested products left to right.
    pub fn realize(&self, realizer: &Realizer) -> Result<Group> {
        realizer.check_order(&self.to_string(), &self.order())?;
        let group = match *self {
            GroupSpec::Cyclic(n) => realizer.cyclic(n as usize)?,
            GroupSpec::Dihedral(m) => realizer.dihedral(m as usize)?,
            GroupSpec::Symmetric(n) => realizer.symmetric(n as usize)?,
            GroupSpec::Alternating(n) => realizer.alternating(n as usize)?,
            GroupSpec::Product(ref l, ref r) => {
                realizer.direct_product(&l.realize(realizer)?, &r.realize(realizer)?)?
            }
        };
        Ok(group.with_label(self.to_string()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Product(l, r) => match **r {
                GroupSpec::Product(..) => write!(f, "{l} x ({r})"),
                _ => write!(f, "{l} x {r}"),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
}

/// A parse failure, located by 0-based character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} error at position {}: {message}", if self.is_syntax() { "syntax" } else { "semantic" }, span.start)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Range<usize>,
    pub message: String,
}

impl ParseError {
    fn syntax(at: usize, message: impl Into<String>) -> Self {
        ParseError {
            kind: ParseErrorKind::Syntax,
            span: at..at + 1,
            message: message.into(),
        }
    }

    pub fn is_syntax(&self) -> bool {
        self.kind == ParseErrorKind::Syntax
    }

    pub fn position(&self) -> usize {
        self.span.start
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(c: Option<char>) -> String {
        match c {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn expr(&mut self) -> std::result::Result<GroupSpec, ParseError> {
        let mut left = self.term()?;
        while matches!(self.peek(), Some('x' | 'X')) {
            self.pos += 1;
            let right = self.term()?;
            left = GroupSpec::product(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> std::result::Result<GroupSpec, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    other => Err(ParseError::syntax(
                        self.pos,
                        format!("expected ')', found {}", Self::describe(other)),
                    )),
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> std::result::Result<GroupSpec, ParseError> {
        let found = self.peek();
        let Some(family) = found.and_then(Family::from_letter) else {
            return Err(ParseError::syntax(
                self.pos,
                format!(
                    "expected one of C, D, S, A or '(', found {}",
                    Self::describe(found)
                ),
            ));
        };
        let letter_at = self.pos;
        self.pos += 1;
        self.skip_ws();
        let digits_at = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if digits_at == self.pos {
            return Err(ParseError::syntax(
                self.pos,
                format!(
                    "expected a parameter after '{}', found {}",
                    family.letter(),
                    Self::describe(self.chars.get(self.pos).copied())
                ),
            ));
        }
        let text: String = self.chars[digits_at..self.pos].iter().collect();
        let semantic = |message: String| ParseError {
            kind: ParseErrorKind::Semantic,
            span: letter_at..letter_at + 1,
            message,
        };
        let n: u64 = text
            .parse()
            .map_err(|_| semantic(format!("parameter {text} is too large")))?;
        if n == 0 {
            return Err(semantic(format!("{}0 is not a group", family.letter())));
        }
        if family == Family::Dihedral && n % 2 == 1 {
            return Err(semantic(format!(
                "D{n}: dihedral groups are written by their order, which is even"
            )));
        }
        Ok(GroupSpec::atom(family, n))
    }
}

/// Parses a group description such as `"A5 x C15128"`.
pub fn parse_spec(text: &str) -> std::result::Result<GroupSpec, ParseError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let spec = parser.expr()?;
    match parser.peek() {
        None => Ok(spec),
        Some(c) => Err(ParseError::syntax(
            parser.pos,
            format!("unexpected '{c}' after a complete group"),
        )),
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_spec(s)
    }
}
