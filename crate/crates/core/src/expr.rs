//! Text forms of group specs and ring expressions.
//!
//! Ring expressions follow
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] INT)*
//! atom   := INT | NAME | '(' expr ')'
//! ```
//!
//! Negative exponents are only accepted on `±g`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::groups::{FiniteTable, GroupElement, GroupError, GroupKind, GroupSpec, Order};
use crate::ring::{RingElement, RingError};

/// Positive powers of elements with more than one term are capped here.
pub const MAX_RING_EXPONENT: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator {name:?} at position {position}")]
    UnknownGenerator { position: usize, name: String },
    #[error("negative exponent at position {position} applied to something other than ±g")]
    NonInvertiblePower { position: usize },
    #[error("exponent at position {position} is too large")]
    ExponentTooLarge { position: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { position, message: message.into() }
}

fn parse_count(s: &str, offset: usize, what: &str) -> Result<u64, ParseError> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(offset + lead, format!("expected a number for {what}, found {t:?}")));
    }
    t.parse().map_err(|_| syntax(offset + lead, format!("{what} is too large")))
}

fn parse_order(s: &str, offset: usize, what: &str) -> Result<Order, ParseError> {
    if s.trim() == "inf" {
        Ok(Order::Infinite)
    } else {
        parse_count(s, offset, what).map(Order::Finite)
    }
}

/// Parses `free:m`, `cyclic:q`, `freeprod:q,r` (`r` may be `inf`), `nil2:n`
/// or `table:PATH`.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec, ParseError> {
    let Some(colon) = s.find(':') else {
        return Err(syntax(0, "expected KIND:PARAMS"));
    };
    let (kind, rest) = (s[..colon].trim(), &s[colon + 1..]);
    let at = colon + 1;
    let spec = match kind {
        "free" => {
            let m = parse_count(rest, at, "the rank")?;
            let m = u32::try_from(m).map_err(|_| syntax(at, "the rank is too large"))?;
            GroupSpec::free(m)?
        }
        "cyclic" => GroupSpec::cyclic(parse_count(rest, at, "the order")?)?,
        "nil2" => GroupSpec::nil2(parse_count(rest, at, "the exponent")?)?,
        "freeprod" => {
            let Some(comma) = rest.find(',') else {
                return Err(syntax(at + rest.len(), "expected q,r"));
            };
            let q = parse_order(&rest[..comma], at, "q")?;
            let r = parse_order(&rest[comma + 1..], at + comma + 1, "r")?;
            match q {
                Order::Finite(q) => GroupSpec::free_product(q, r)?,
                Order::Infinite => return Err(syntax(at, "the first factor must be finite")),
            }
        }
        "table" => {
            let path = rest.trim();
            if path.is_empty() {
                return Err(syntax(at, "expected a table path"));
            }
            GroupSpec::table(FiniteTable::from_file(path)?)
        }
        other => return Err(syntax(0, format!("unknown group kind {other:?}"))),
    };
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(s[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = s[i..].chars().next().expect("nonempty");
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

/// Resolves a generator or element name against the spec.
pub fn resolve_name(spec: &GroupSpec, name: &str) -> Option<GroupElement> {
    let gen = |i| spec.generator(i);
    match spec.kind() {
        GroupKind::Free { rank } => {
            let k: u32 = name.strip_prefix('a')?.parse().ok()?;
            if name[1..].starts_with('0') || k == 0 || k > *rank {
                return None;
            }
            gen(k as usize - 1)
        }
        GroupKind::Cyclic { .. } => (name == "a").then(|| gen(0)).flatten(),
        GroupKind::FreeProduct { .. } => match name {
            "a" => gen(0),
            "b" => gen(1),
            _ => None,
        },
        GroupKind::Nil2 { .. } => match name {
            "a" | "a1" => gen(0),
            "b" | "a2" => gen(1),
            "c" => Some(GroupElement::Nil2 { a: 0, b: 0, c: 1 }),
            _ => None,
        },
        GroupKind::FiniteTable(t) => t.index_of(name).map(GroupElement::Table),
    }
}

struct Parser<'a> {
    spec: &'a GroupSpec,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingElement, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            let negative = *self.peek() == Tok::Minus;
            if negative {
                self.bump();
            }
            let (p, tok) = self.bump();
            let Tok::Int(k) = tok else {
                return Err(syntax(p, "expected an integer exponent"));
            };
            let k = i64::try_from(k).map_err(|_| ParseError::ExponentTooLarge { position: at })?;
            base = self.power(base, if negative { -k } else { k }, at)?;
        }
        Ok(base)
    }

    fn power(&self, base: RingElement, e: i64, at: usize) -> Result<RingElement, ParseError> {
        if let Some((positive, g)) = base.as_signed_element() {
            let sign = if positive || e % 2 == 0 { 1 } else { -1 };
            let h = self.spec.pow(g, e)?;
            return Ok(RingElement::monomial(self.spec, h, sign)?);
        }
        if e < 0 {
            return Err(ParseError::NonInvertiblePower { position: at });
        }
        match u32::try_from(e) {
            Ok(e) if e <= MAX_RING_EXPONENT || base.len() <= 1 => {
                if base.is_zero() || base.len() == 1 {
                    // k*g with |k| > 1
                    let (g, c) = base.terms().next().map(|(g, c)| (g.clone(), c.clone())).unwrap_or_else(|| (self.spec.identity(), BigInt::from(0)));
                    if e == 0 {
                        return Ok(RingElement::one(self.spec));
                    }
                    return Ok(RingElement::monomial(self.spec, self.spec.pow(&g, e as i64)?, num_traits::pow(c, e as usize))?);
                }
                Ok(base.pow(e))
            }
            _ => Err(ParseError::ExponentTooLarge { position: at }),
        }
    }

    fn atom(&mut self) -> Result<RingElement, ParseError> {
        let (p, tok) = self.bump();
        match tok {
            Tok::Int(k) => Ok(RingElement::constant(self.spec, k)),
            Tok::Name(name) => match resolve_name(self.spec, &name) {
                Some(g) => Ok(RingElement::from_element(self.spec, g)?),
                None => Err(ParseError::UnknownGenerator { position: p, name }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let (q, close) = self.bump();
                if close != Tok::RParen {
                    return Err(syntax(q, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(p, "unexpected end of input")),
            other => Err(syntax(p, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses and evaluates a ring expression in `Z[G]`.
pub fn parse_ring_expr(s: &str, spec: &GroupSpec) -> Result<RingElement, ParseError> {
    let mut parser = Parser { spec, toks: tokenize(s)?, pos: 0 };
    let value = parser.expr()?;
    match parser.peek() {
        Tok::End => Ok(value),
        _ => Err(syntax(parser.offset(), "unexpected trailing input")),
    }
}

/// Parses an expression that must evaluate to a single group element `g`.
pub fn parse_group_element(s: &str, spec: &GroupSpec) -> Result<GroupElement, ParseError> {
    let p = parse_ring_expr(s, spec)?;
    match p.as_signed_element() {
        Some((true, g)) => Ok(g.clone()),
        _ => Err(syntax(0, format!("{s:?} is not a group element"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group_spec("freeprod:3,inf").unwrap(), GroupSpec::free_product(3, Order::Infinite).unwrap());
        assert_eq!(parse_group_spec("nil2:5").unwrap(), GroupSpec::nil2(5).unwrap());
        assert_eq!(parse_group_spec("free:2").unwrap(), GroupSpec::free(2).unwrap());
        assert!(matches!(parse_group_spec("freeprod:1,2"), Err(ParseError::Group(GroupError::InvalidSpec(_)))));
        assert!(matches!(parse_group_spec("cyclic:x"), Err(ParseError::Syntax { position: 7, .. })));
        assert!(matches!(parse_group_spec("torus:3"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(parse_group_spec("freeprod:3").is_err());
        assert!(parse_group_spec("cyclic:99999999999999999999999").is_err());
    }

    #[test]
    fn telescoping() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        assert!(parse_ring_expr("(1-a)*(1+a+a^2)", &c3).unwrap().is_zero());
    }

    #[test]
    fn nil2_aliases() {
        let n3 = GroupSpec::nil2(3).unwrap();
        let p = parse_ring_expr("1 - a1*a2*a1^-1", &n3).unwrap();
        // a b a^-1 = b c
        assert_eq!(p, parse_ring_expr("1 - b*c", &n3).unwrap());
        assert_eq!(p.to_string(), "1 - b*c");
    }

    #[test]
    fn klein_expression() {
        let v4 = GroupSpec::table(FiniteTable::klein_four());
        let p = parse_ring_expr("2 - x - y", &v4).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "2 - x - y");
    }

    #[test]
    fn precedence_and_powers() {
        let f = GroupSpec::free(2).unwrap();
        assert_eq!(
            parse_ring_expr("a1^-1*a2^2", &f).unwrap().to_string(),
            "a1^-1*a2^2"
        );
        assert_eq!(parse_ring_expr("2*a1^2", &f).unwrap(), parse_ring_expr("2*(a1^2)", &f).unwrap());
        assert_eq!(parse_ring_expr("-a1 + 1", &f).unwrap().to_string(), "1 - a1");
        assert_eq!(parse_ring_expr("(-a1)^-3", &f).unwrap().to_string(), "-a1^-3");
        assert_eq!(parse_ring_expr("(2*a1)^2", &f).unwrap().to_string(), "4*a1^2");
        assert_eq!(parse_ring_expr("(1+a1)^2", &f).unwrap().to_string(), "1 + 2*a1 + a1^2");
        assert_eq!(parse_ring_expr("(1+a1)^0", &f).unwrap(), RingElement::one(&f));
    }

    #[test]
    fn errors_have_positions() {
        let f = GroupSpec::free(2).unwrap();
        assert_eq!(
            parse_ring_expr("1 + a3", &f).unwrap_err(),
            ParseError::UnknownGenerator { position: 4, name: "a3".into() }
        );
        assert_eq!(parse_ring_expr("(1+a1)^-1", &f).unwrap_err(), ParseError::NonInvertiblePower { position: 7 });
        assert!(matches!(parse_ring_expr("1 +", &f), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_ring_expr("(a1", &f), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_ring_expr("a1 a2", &f), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_ring_expr("a1 % 2", &f), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_ring_expr("(1+a1)^65", &f), Err(ParseError::ExponentTooLarge { .. })));
        assert!(parse_ring_expr("a01", &f).is_err());
        assert!(parse_ring_expr("", &f).is_err());
    }

    #[test]
    fn group_elements() {
        let g = GroupSpec::free_product(3, Order::Infinite).unwrap();
        assert_eq!(g.format_element(&parse_group_element("b*a^2*b^-1", &g).unwrap()), "b*a^2*b^-1");
        assert!(parse_group_element("1 + a", &g).is_err());
        assert!(parse_group_element("-a", &g).is_err());
    }
}
