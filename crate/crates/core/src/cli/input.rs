//! Curve input documents: `x = ...` and `y = ...` lines holding rational
//! expressions in `t`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::curve::{CurveError, RationalParametrization};
use crate::polycore::QPoly;

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Expression tree. Literals are nonnegative; signs are `Neg` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// A rational function `num / den`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: QPoly,
    pub den: QPoly,
}

impl RationalFunction {
    fn poly(p: QPoly) -> Self {
        RationalFunction {
            num: p,
            den: QPoly::one(),
        }
    }

    fn reduced(num: QPoly, den: QPoly) -> Self {
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lc = den.lc().cloned().unwrap_or_else(BigRational::one);
        let inv = BigRational::one() / lc;
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Expr {
    /// Reduces the tree to `num / den`; `None` on division by zero.
    pub fn eval(&self) -> Option<RationalFunction> {
        Some(match self {
            Expr::Num(q) => RationalFunction::poly(QPoly::constant(q.clone())),
            Expr::T => RationalFunction::poly(QPoly::var()),
            Expr::Neg(a) => {
                let a = a.eval()?;
                RationalFunction {
                    num: -&a.num,
                    den: a.den,
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (a, b) = (a.eval()?, b.eval()?);
                let l = &a.num * &b.den;
                let r = &b.num * &a.den;
                let num = if matches!(self, Expr::Add(..)) {
                    &l + &r
                } else {
                    &l - &r
                };
                RationalFunction::reduced(num, &a.den * &b.den)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.eval()?, b.eval()?);
                RationalFunction::reduced(&a.num * &b.num, &a.den * &b.den)
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.eval()?, b.eval()?);
                if b.is_zero() {
                    return None;
                }
                RationalFunction::reduced(&a.num * &b.den, &a.den * &b.num)
            }
            Expr::Pow(a, k) => {
                let a = a.eval()?;
                RationalFunction {
                    num: a.num.pow(*k),
                    den: a.den.pow(*k),
                }
            }
        })
    }
}

/// Fully parenthesized, so printing then parsing gives back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Expr::Num(q) => write!(f, "({}/{})", q.numer(), q.denom()),
            Expr::T => write!(f, "t"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
        }
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    /// Column offset of the expression within its line.
    offset: usize,
}

impl Parser {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Parser {
            chars: src.chars().enumerate().collect(),
            pos: 0,
            line,
            offset,
        }
    }

    fn column(&self) -> usize {
        self.offset + self.chars.get(self.pos).map_or(self.chars.len(), |c| c.0) + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.1.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| match c.1 {
            '\u{2212}' => '-',
            other => other,
        })
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.peek() == Some('-') {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some('-') => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some('/') => {
                    self.bump();
                    self.skip_ws();
                    let at = self.pos;
                    let rhs = self.factor()?;
                    if rhs.eval().is_none_or(|r| r.is_zero()) {
                        let end = self.pos;
                        self.pos = at;
                        let err = self.error("division by zero");
                        self.pos = end;
                        return err;
                    }
                    acc = Expr::Div(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return self.error("expected a nonnegative integer exponent");
            }
            match digits.parse::<u32>() {
                Ok(k) if k <= MAX_EXPONENT => return Ok(Expr::Pow(Box::new(base), k)),
                _ => return self.error(format!("exponent larger than {MAX_EXPONENT}")),
            }
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.error("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Some('t') => {
                self.bump();
                if self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.1.is_alphanumeric() || c.1 == '(')
                {
                    return self.error("implicit multiplication is not allowed; use '*'");
                }
                Ok(Expr::T)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of expression"),
        }
    }

    fn rational(&mut self) -> Result<Expr, ParseError> {
        let num: BigInt = self.digits().parse().expect("digits");
        if let Some(&(_, c)) = self.chars.get(self.pos) {
            if c == '.' || c == 'e' || c == 'E' {
                return self.error("decimal literals are not supported; write an exact fraction");
            }
            if c == 't' || c == '(' {
                return self.error("implicit multiplication is not allowed; use '*'");
            }
        }
        // `a/b` with an unsigned integer `b` and no spaces is a single literal
        let save = self.pos;
        if self.chars.get(self.pos).is_some_and(|c| c.1 == '/') {
            self.bump();
            if self
                .chars
                .get(self.pos)
                .is_some_and(|c| c.1.is_ascii_digit())
            {
                let at = self.pos;
                let den: BigInt = self.digits().parse().expect("digits");
                if self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.1 == '.' || c.1 == 'e' || c.1 == 'E')
                {
                    return self
                        .error("decimal literals are not supported; write an exact fraction");
                }
                if den.is_zero() {
                    self.pos = at;
                    return self.error("division by zero");
                }
                return Ok(Expr::Num(BigRational::new(num, den)));
            }
        }
        self.pos = save;
        Ok(Expr::Num(BigRational::from_integer(num)))
    }
}

/// Parses one expression. `line` and `offset` position error messages.
pub fn parse_expr(src: &str, line: usize, offset: usize) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src, line, offset);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInputDocument {
    pub x_expr: Expr,
    pub y_expr: Expr,
}

impl fmt::Display for CurveInputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "x = {}", self.x_expr)?;
        writeln!(f, "y = {}", self.y_expr)
    }
}

pub fn parse_curve(text: &str) -> Result<CurveInputDocument, ParseError> {
    let mut x = None;
    let mut y = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: &str| ParseError {
            line,
            column,
            message: message.into(),
        };
        let Some(eq) = content.find('=') else {
            return Err(err(1, "expected `x = ...` or `y = ...`"));
        };
        let lhs = content[..eq].trim();
        let rhs = &content[eq + 1..];
        let offset = content[..eq + 1].chars().count();
        let slot = match lhs {
            "x" => &mut x,
            "y" => &mut y,
            _ => return Err(err(1, "left-hand side must be `x` or `y`")),
        };
        if slot.is_some() {
            return Err(err(1, &format!("`{lhs}` defined twice")));
        }
        *slot = Some(parse_expr(rhs, line, offset)?);
    }
    let missing = |v: &str| ParseError {
        line: last.max(1),
        column: 1,
        message: format!("missing `{v} = ...` line"),
    };
    Ok(CurveInputDocument {
        x_expr: x.ok_or_else(|| missing("x"))?,
        y_expr: y.ok_or_else(|| missing("y"))?,
    })
}

impl CurveInputDocument {
    pub fn functions(&self) -> (RationalFunction, RationalFunction) {
        // division by zero is rejected while parsing
        let x = self.x_expr.eval().expect("checked while parsing");
        let y = self.y_expr.eval().expect("checked while parsing");
        (x, y)
    }

    pub fn parametrization(&self) -> Result<RationalParametrization, CurveError> {
        let (x, y) = self.functions();
        RationalParametrization::new(x.num, x.den, y.num, y.den)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DistanceError {
    #[error("distance `{0}` is not an exact rational (use `p` or `p/q`)")]
    NotRational(String),
    #[error("distance must be positive")]
    NotPositive,
}

/// Parses `[-]p` or `[-]p/q` into a positive rational.
pub fn parse_distance(s: &str) -> Result<BigRational, DistanceError> {
    let bad = || DistanceError::NotRational(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-').or_else(|| t.strip_prefix('\u{2212}')) {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let all_digits = |x: &str| !x.is_empty() && x.chars().all(|c| c.is_ascii_digit());
    if !all_digits(n) || !all_digits(d) {
        return Err(bad());
    }
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    let mut q = BigRational::new(n.parse().map_err(|_| bad())?, den);
    if neg {
        q = -q;
    }
    if !q.is_positive() {
        return Err(DistanceError::NotPositive);
    }
    Ok(q)
}

/// `num / den` as text in `t`.
pub fn rational_text(f: &RationalFunction) -> String {
    if f.den.is_constant() {
        f.num.to_text("t")
    } else {
        format!("({})/({})", f.num.to_text("t"), f.den.to_text("t"))
    }
}
