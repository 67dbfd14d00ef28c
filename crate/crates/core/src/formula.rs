//! The propositional language: atoms closed under `¬`, `∧`, `∨` and `→`.
//!
//! Surface syntax accepts both ASCII (`~ & | ->`) and Unicode (`¬ ∧ ∨ →`)
//! connectives. Precedence from tightest to loosest is `¬`, `∧`, `∨`, `→`;
//! `∧` and `∨` associate to the left and `→` to the right.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A propositional formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

/// Sign of a literal. Positive sorts before negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
        }
    }
}

/// An atom or a negated atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: String,
    pub polarity: Polarity,
}

impl Literal {
    pub fn positive(atom: impl Into<String>) -> Literal {
        Literal {
            atom: atom.into(),
            polarity: Polarity::Positive,
        }
    }

    pub fn negative(atom: impl Into<String>) -> Literal {
        Literal {
            atom: atom.into(),
            polarity: Polarity::Negative,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            polarity: self.polarity.flip(),
        }
    }

    pub fn to_formula(&self) -> Formula {
        let atom = Formula::atom(self.atom.clone());
        match self.polarity {
            Polarity::Positive => atom,
            Polarity::Negative => Formula::not(atom),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Positive => write!(f, "{}", self.atom),
            Polarity::Negative => write!(f, "¬{}", self.atom),
        }
    }
}

/// Serialized as a two-element array `["p", "+"]`.
impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.atom, self.polarity.symbol()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (atom, sign) = <(String, String)>::deserialize(deserializer)?;
        if !is_atom_name(&atom) {
            return Err(serde::de::Error::custom(format!(
                "invalid atom name {atom:?}"
            )));
        }
        let polarity = match sign.as_str() {
            "+" => Polarity::Positive,
            "-" => Polarity::Negative,
            other => {
                return Err(serde::de::Error::custom(format!(
                    "literal sign must be \"+\" or \"-\", got {other:?}"
                )))
            }
        };
        Ok(Literal { atom, polarity })
    }
}

/// True when `name` matches `[a-z][a-z0-9_]*`.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Formula {
        Formula::Not(Box::new(inner))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    /// Left-nested conjunction of `formulas`, or `None` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(formulas: I) -> Option<Formula> {
        formulas.into_iter().reduce(Formula::and)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// `Some` when the formula is an atom or a negated atom.
    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            Formula::Atom(name) => Some(Literal::positive(name.clone())),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(name) => Some(Literal::negative(name.clone())),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        self.as_literal().is_some()
    }

    /// Distinct atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(name) {
                    out.insert(name.clone());
                }
            }
            Formula::Not(inner) => inner.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Number of connectives.
    pub fn degree(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(inner) => 1 + inner.degree(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.degree() + r.degree()
            }
        }
    }

    /// Number of AST nodes (atoms plus connectives).
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(inner) => 1 + inner.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Renders with every binary subformula parenthesized.
    pub fn to_full_parens(&self) -> String {
        match self {
            Formula::Atom(name) => name.clone(),
            Formula::Not(inner) => format!("¬{}", inner.to_full_parens()),
            Formula::And(l, r) => format!("({} ∧ {})", l.to_full_parens(), r.to_full_parens()),
            Formula::Or(l, r) => format!("({} ∨ {})", l.to_full_parens(), r.to_full_parens()),
            Formula::Implies(l, r) => {
                format!("({} → {})", l.to_full_parens(), r.to_full_parens())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::Not(_) => 4,
            Formula::And(..) => 3,
            Formula::Or(..) => 2,
            Formula::Implies(..) => 1,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Minimal-parenthesis rendering with Unicode connectives.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(inner) => {
                f.write_str("¬")?;
                inner.write_operand(f, inner.precedence() < 4)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let prec = self.precedence();
                let op = if prec == 3 { " ∧ " } else { " ∨ " };
                l.write_operand(f, l.precedence() < prec)?;
                f.write_str(op)?;
                r.write_operand(f, r.precedence() <= prec)
            }
            Formula::Implies(l, r) => {
                l.write_operand(f, l.precedence() <= 1)?;
                f.write_str(" → ")?;
                r.write_operand(f, r.precedence() < 1)
            }
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Errors from [`parse`]. Positions are 1-based character columns; the end of
/// input sits one past the last character.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input: expected a formula")]
    Empty,
    #[error("unexpected character {found:?} at position {position}{}", lex_hint(*.found))]
    Lex { position: usize, found: char },
    #[error(
        "unexpected {} at position {position}: expected {}",
        found.as_deref().unwrap_or("end of input"),
        expected.join(", ")
    )]
    Syntax {
        position: usize,
        expected: Vec<&'static str>,
        found: Option<String>,
    },
}

fn lex_hint(c: char) -> &'static str {
    match c {
        '↔' | '<' | '=' => {
            " (the biconditional is not part of the language; write (a → b) ∧ (b → a))"
        }
        'A'..='Z' => " (atoms are lowercase identifiers)",
        _ => "",
    }
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Empty => 1,
            ParseError::Lex { position, .. } | ParseError::Syntax { position, .. } => *position,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Atom(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(name) => format!("atom `{name}`"),
            Token::Not => "`¬`".into(),
            Token::And => "`∧`".into(),
            Token::Or => "`∨`".into(),
            Token::Implies => "`→`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let position = i + 1;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '|' | '∨' => Token::Or,
            '→' => Token::Implies,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Implies
            }
            '(' => Token::LParen,
            ')' => Token::RParen,
            'a'..='z' => {
                let start = i;
                while i + 1 < chars.len() && matches!(chars[i + 1], 'a'..='z' | '0'..='9' | '_') {
                    i += 1;
                }
                Token::Atom(chars[start..=i].iter().collect())
            }
            found => return Err(ParseError::Lex { position, found }),
        };
        tokens.push((position, token));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

const OPERAND: &[&str] = &["atom", "`¬`", "`(`"];

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            position: self.position(),
            expected: expected.to_vec(),
            found: self.peek().map(Token::describe),
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    // implication := disjunction ('→' implication)?
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let right = self.implication()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while self.eat(&Token::Or) {
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.cursor += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::Atom(name)) => {
                self.cursor += 1;
                Ok(Formula::Atom(name))
            }
            Some(Token::LParen) => {
                self.cursor += 1;
                let inner = self.implication()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error(&["`∧`", "`∨`", "`→`", "`)`"]));
                }
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parses formula text.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.chars().count() + 1,
    };
    let formula = parser.implication()?;
    if parser.cursor < parser.tokens.len() {
        return Err(parser.error(&["`∧`", "`∨`", "`→`", "end of input"]));
    }
    Ok(formula)
}

/// Distinct atoms over a collection of formulas, sorted.
pub fn atoms_of<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut out);
    }
    out
}
