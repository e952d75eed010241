//! The small expression language for algebra elements.
//!
//! Grammar (whitespace-insensitive, left-associative, no unary minus):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := NUMBER | RATIONAL | IDENT
//!         | 'w(' IDENT ',' IDENT ')'
//!         | 'tr(' expr ')'
//!         | '(' expr ')'
//! ```
//!
//! `NUMBER` is an unsigned decimal (optionally with a fractional part
//! or exponent), `RATIONAL` is `a/b` with integer parts, and `IDENT`
//! names an object from the trace table. A bare number denotes that
//! multiple of the algebra unit; `tr(e)` denotes the trace of `e` times
//! the unit, so it can be used as a scalar coefficient.

use rgk_core::algebra::{multiply, trace_element, AlgebraElement, AlgebraError, GramTable};
use rgk_core::minkowski::MetricContext;
use rgk_core::scalar::{ArithmeticMode, Scalar};
use std::fmt;

/// Parse error with the byte position and what would have been legal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {position}: found {found}, expected {}", expected.join(" | "))]
pub struct SyntaxError {
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

/// Evaluation errors (everything past the parse).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("w({0}, {0}) names a degenerate arrow; pass --strict-arrows false to read it as zero")]
    DegenerateArrow(String),
    #[error("decimal literal `{0}` is not allowed in exact mode; write a rational like a/b")]
    FloatLiteralInExactMode(String),
    #[error("rational literal `{0}` is not allowed in float mode; write a decimal")]
    RationalLiteralInFloatMode(String),
    #[error("malformed numeric literal `{0}`")]
    BadLiteral(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Abstract syntax, faithful to the concrete text: sums keep their
/// per-term signs, literals keep their spelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    /// `term (+|- term)*`; the first sign is always `+` when parsed.
    Sum(Vec<(Sign, ExprAst)>),
    /// `factor (* factor)*`, at least two factors.
    Product(Vec<ExprAst>),
    /// A numeric literal, verbatim.
    ScalarLit(String),
    ObjRef(String),
    ArrowRef(String, String),
    TraceOf(Box<ExprAst>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Sum(terms) => {
                for (i, (sign, term)) in terms.iter().enumerate() {
                    if i == 0 {
                        debug_assert_eq!(*sign, Sign::Plus, "parsed sums start positive");
                    } else {
                        f.write_str(match sign {
                            Sign::Plus => " + ",
                            Sign::Minus => " - ",
                        })?;
                    }
                    // A sum nested as a term only arises from explicit
                    // parentheses; keep them, or the flattening parser
                    // would read a different tree (and "a - (b + c)"
                    // a different value).
                    if matches!(term, ExprAst::Sum(_)) {
                        write!(f, "({term})")?;
                    } else {
                        write!(f, "{term}")?;
                    }
                }
                Ok(())
            }
            ExprAst::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    // Same for nested products: only explicit parens
                    // produce them, so print the parens back.
                    if matches!(factor, ExprAst::Sum(_) | ExprAst::Product(_)) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            ExprAst::ScalarLit(text) => f.write_str(text),
            ExprAst::ObjRef(id) => f.write_str(id),
            ExprAst::ArrowRef(s, t) => write!(f, "w({s},{t})"),
            ExprAst::TraceOf(inner) => write!(f, "tr({inner})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
    Ident(String),
    Literal(String),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Star => f.write_str("`*`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Comma => f.write_str("`,`"),
            Token::Ident(s) => write!(f, "identifier `{s}`"),
            Token::Literal(s) => write!(f, "number `{s}`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            b',' => {
                tokens.push((i, Token::Comma));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // Decimal part and exponent (float-mode literals).
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let mut lexeme = text[start..i].to_owned();
                // `a/b` rationals: a slash directly after an integer
                // pulls in the denominator ('/' has no other meaning).
                let mut k = i;
                while k < bytes.len() && (bytes[k] == b' ' || bytes[k] == b'\t') {
                    k += 1;
                }
                if !lexeme.contains('.')
                    && !lexeme.contains('e')
                    && !lexeme.contains('E')
                    && k < bytes.len()
                    && bytes[k] == b'/'
                {
                    let mut m = k + 1;
                    while m < bytes.len() && (bytes[m] == b' ' || bytes[m] == b'\t') {
                        m += 1;
                    }
                    let denom_start = m;
                    while m < bytes.len() && bytes[m].is_ascii_digit() {
                        m += 1;
                    }
                    if m == denom_start {
                        return Err(SyntaxError {
                            position: denom_start.min(bytes.len()),
                            found: "end of denominator".to_owned(),
                            expected: vec!["digits after `/`".to_owned()],
                        });
                    }
                    lexeme = format!("{}/{}", lexeme, &text[denom_start..m]);
                    i = m;
                }
                tokens.push((start, Token::Literal(lexeme)));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_owned())));
            }
            _ => {
                return Err(SyntaxError {
                    position: i,
                    found: format!("`{}`", text[i..].chars().next().unwrap()),
                    expected: vec!["a term".to_owned()],
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(at, _)| *at)
            .unwrap_or(self.end)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_owned(),
        }
    }

    fn expect(&mut self, want: &Token, label: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(SyntaxError {
                position: self.here(),
                found: self.found(),
                expected: vec![label.to_owned()],
            })
        }
    }

    fn expr(&mut self) -> Result<ExprAst, SyntaxError> {
        let first = self.term()?;
        let mut terms = vec![(Sign::Plus, first)];
        while let Some(tok) = self.peek() {
            let sign = match tok {
                Token::Plus => Sign::Plus,
                Token::Minus => Sign::Minus,
                _ => break,
            };
            self.pos += 1;
            terms.push((sign, self.term()?));
        }
        if terms.len() == 1 {
            Ok(terms.pop().unwrap().1)
        } else {
            Ok(ExprAst::Sum(terms))
        }
    }

    fn term(&mut self) -> Result<ExprAst, SyntaxError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ok(ExprAst::Product(factors))
        }
    }

    fn factor(&mut self) -> Result<ExprAst, SyntaxError> {
        match self.peek().cloned() {
            Some(Token::Literal(text)) => {
                self.pos += 1;
                Ok(ExprAst::ScalarLit(text))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(&Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let call = self.peek() == Some(&Token::LParen);
                match (name.as_str(), call) {
                    ("w", true) => {
                        self.pos += 1;
                        let source = self.ident("arrow source")?;
                        self.expect(&Token::Comma, "`,`")?;
                        let target = self.ident("arrow target")?;
                        self.expect(&Token::RParen, "`)`")?;
                        Ok(ExprAst::ArrowRef(source, target))
                    }
                    ("tr", true) => {
                        self.pos += 1;
                        let inner = self.expr()?;
                        self.expect(&Token::RParen, "`)`")?;
                        Ok(ExprAst::TraceOf(Box::new(inner)))
                    }
                    (_, true) => Err(SyntaxError {
                        position: self.here(),
                        found: "`(`".to_owned(),
                        expected: vec!["`*`, `+`, `-`, or end after an object name".to_owned()],
                    }),
                    _ => Ok(ExprAst::ObjRef(name)),
                }
            }
            _ => Err(SyntaxError {
                position: self.here(),
                found: self.found(),
                expected: vec![
                    "a number".to_owned(),
                    "an object name".to_owned(),
                    "`w(`".to_owned(),
                    "`tr(`".to_owned(),
                    "`(`".to_owned(),
                ],
            }),
        }
    }

    fn ident(&mut self, label: &str) -> Result<String, SyntaxError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(name)
            }
            _ => Err(SyntaxError {
                position: self.here(),
                found: self.found(),
                expected: vec![label.to_owned()],
            }),
        }
    }
}

/// Parse an expression into its syntax tree.
pub fn parse_expression(text: &str) -> Result<ExprAst, SyntaxError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
    };
    let ast = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(SyntaxError {
            position: parser.here(),
            found: parser.found(),
            expected: vec![
                "`+`".to_owned(),
                "`-`".to_owned(),
                "`*`".to_owned(),
                "end of input".to_owned(),
            ],
        });
    }
    Ok(ast)
}

fn literal_scalar(text: &str, ctx: &MetricContext) -> Result<Scalar, EvalError> {
    let value: Scalar = text
        .parse()
        .map_err(|_| EvalError::BadLiteral(text.to_owned()))?;
    match (ctx.mode(), &value) {
        (ArithmeticMode::Exact, Scalar::Approx(_)) => {
            Err(EvalError::FloatLiteralInExactMode(text.to_owned()))
        }
        (ArithmeticMode::Float, Scalar::Exact(_)) if text.contains('/') => {
            Err(EvalError::RationalLiteralInFloatMode(text.to_owned()))
        }
        _ => Ok(value.in_mode(ctx.mode())),
    }
}

/// Evaluate a parsed expression over a trace table. With
/// `strict_arrows`, a self-arrow `w(p,p)` is an error; without, it
/// reads as the zero element.
pub fn evaluate(
    ast: &ExprAst,
    gram: &GramTable,
    ctx: &MetricContext,
    strict_arrows: bool,
) -> Result<AlgebraElement, EvalError> {
    match ast {
        ExprAst::Sum(terms) => {
            let mut acc = AlgebraElement::zero();
            for (sign, term) in terms {
                let value = evaluate(term, gram, ctx, strict_arrows)?;
                acc = match sign {
                    Sign::Plus => acc.add(&value),
                    Sign::Minus => acc.sub(&value),
                };
            }
            Ok(acc)
        }
        ExprAst::Product(factors) => {
            let mut iter = factors.iter();
            let mut acc = evaluate(
                iter.next().expect("products are non-empty"),
                gram,
                ctx,
                strict_arrows,
            )?;
            for factor in iter {
                let value = evaluate(factor, gram, ctx, strict_arrows)?;
                acc = multiply(&acc, &value, gram, ctx)?;
            }
            Ok(acc)
        }
        ExprAst::ScalarLit(text) => Ok(AlgebraElement::unit().scale(&literal_scalar(text, ctx)?)),
        ExprAst::ObjRef(id) => {
            if !gram.contains(id) {
                return Err(EvalError::Algebra(AlgebraError::UnknownObject(id.clone())));
            }
            Ok(AlgebraElement::obj(id.clone()))
        }
        ExprAst::ArrowRef(source, target) => {
            for id in [source, target] {
                if !gram.contains(id) {
                    return Err(EvalError::Algebra(AlgebraError::UnknownObject(id.clone())));
                }
            }
            if source == target {
                return if strict_arrows {
                    Err(EvalError::DegenerateArrow(source.clone()))
                } else {
                    Ok(AlgebraElement::zero())
                };
            }
            Ok(AlgebraElement::arrow(source.clone(), target.clone()))
        }
        ExprAst::TraceOf(inner) => {
            let value = evaluate(inner, gram, ctx, strict_arrows)?;
            let trace = trace_element(&value, None)?;
            Ok(AlgebraElement::unit().scale(&trace))
        }
    }
}
