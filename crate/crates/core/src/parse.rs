//! Map-file grammar:
//!
//! ```text
//! map    := name "(" var ("," var)* ")" "=" "(" expr ("," expr)* ")"
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" integer)?
//! atom   := integer | var | "t" | "(" expr ")" | "-" atom
//! ```
//!
//! Division is only by nonzero constants, so `3/2` is a rational literal.
//! The symbol `t` is a parameter substituted from the caller.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polycore::{Poly, PolyError, PolyMap, Rational};

pub const PARAMETER: &str = "t";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("component {index} has a nonzero constant term")]
    GermViolation { index: usize },
    #[error("the map uses the parameter t but no value was given")]
    MissingParameter,
    #[error("bad parameter value {0:?}")]
    BadParameter(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[i..j].iter().map(|&(_, c)| c).collect()),
            ));
            i = j;
        } else if "+-*/^(),=".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else if c == '\u{2212}' {
            out.push((pos, Tok::Sym('-')));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: Vec<String>,
    t: Option<&'a Rational>,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn constant(&self, c: Rational) -> Poly {
        Poly::constant(&self.vars, c)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.factor()?;
                match d.degree() {
                    Some(0) => {}
                    None => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "division by zero".into(),
                        })
                    }
                    Some(_) => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "division by a non-constant".into(),
                        })
                    }
                }
                let c = d.constant_term();
                acc = acc.scale(&(Rational::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let Ok(e) = u32::try_from(n.clone()) else {
                        return self.err("exponent too large");
                    };
                    self.at += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(self.constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    Ok(Poly::var(&self.vars, k))
                } else if name == PARAMETER {
                    match self.t {
                        Some(v) => Ok(self.constant(v.clone())),
                        None => Err(ParseError::MissingParameter),
                    }
                } else {
                    self.at -= 1;
                    self.err(format!("unknown symbol {name:?}"))
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.at += 1;
                let p = self.factor()?;
                Ok(-&p)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }

    fn map(&mut self) -> Result<Vec<Poly>, ParseError> {
        self.ident()?;
        self.expect('(')?;
        loop {
            let pos = self.pos();
            let v = self.ident()?;
            if v == PARAMETER {
                return Err(ParseError::Syntax {
                    pos,
                    msg: "t is reserved for the parameter".into(),
                });
            }
            if self.vars.contains(&v) {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("variable {v:?} declared twice"),
                });
            }
            self.vars.push(v);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        self.expect('=')?;
        self.expect('(')?;
        let mut comps = vec![self.expr()?];
        while self.eat(',') {
            comps.push(self.expr()?);
        }
        self.expect(')')?;
        if self.at != self.toks.len() {
            return self.err("trailing input");
        }
        Ok(comps)
    }
}

fn run(text: &str, t: Option<&Rational>) -> Result<PolyMap, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
        vars: Vec::new(),
        t,
    };
    let comps = p.map()?;
    PolyMap::new(p.vars, comps).map_err(|e| match e {
        PolyError::GermViolation { index } => ParseError::GermViolation { index },
        other => ParseError::Syntax {
            pos: 0,
            msg: other.to_string(),
        },
    })
}

/// Parses a map file, substituting `t` when given. Lines starting with `#`
/// are comments.
pub fn parse_map(text: &str, t: Option<&Rational>) -> Result<PolyMap, ParseError> {
    let cleaned = strip_comments(text);
    run(&cleaned, t)
}

/// Whether the map text mentions the parameter `t`.
pub fn uses_parameter(text: &str) -> Result<bool, ParseError> {
    Ok(lex(&strip_comments(text))?
        .iter()
        .any(|(_, tok)| *tok == Tok::Ident(PARAMETER.to_string())))
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| {
            if l.trim_start().starts_with('#') {
                ""
            } else {
                l
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses "3", "-1/2" as a rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let bad = || ParseError::BadParameter(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::testutil::poly;
    use crate::polycore::{rat, rat_frac, var_names};
    use proptest::prelude::*;

    const XY: &[&str] = &["x", "y"];

    #[test]
    fn corank_one_example() {
        let f = parse_map("f(x,y) = (x, y^2, y^3, x^3*y)", None).unwrap();
        assert_eq!(f.domain_dim(), 2);
        assert_eq!(f.codomain_dim(), 4);
        assert_eq!(f.components()[3], poly(XY, &[(1, &[3, 1])]));
    }

    #[test]
    fn family_with_parameter() {
        let text = "f(x,y) = (x, y^2, y*(x^2+y^2), y*(x^4+y^6+t*y^2))";
        assert!(uses_parameter(text).unwrap());
        assert_eq!(parse_map(text, None), Err(ParseError::MissingParameter));
        let f = parse_map(text, Some(&rat(1))).unwrap();
        let g = parse_map("f(x,y) = (x, y^2, y*(x^2+y^2), y*(x^4+y^6+1*y^2))", None).unwrap();
        assert_eq!(f, g);
        assert_eq!(
            f.components()[3],
            poly(XY, &[(1, &[4, 1]), (1, &[0, 7]), (1, &[0, 3])])
        );
    }

    #[test]
    fn germ_violation() {
        assert!(!uses_parameter("f(x,y) = (x, y, 1)").unwrap());
        assert_eq!(
            parse_map("f(x,y) = (x, y, 1)", None),
            Err(ParseError::GermViolation { index: 2 })
        );
    }

    #[test]
    fn rationals_and_signs() {
        let f = parse_map("g(u) = (3/2*u^2 - -u, (u-1)^2 - 1)", None).unwrap();
        let vars = var_names(&["u"]);
        let want0 = &poly(&["u"], &[(1, &[1])])
            + &Poly::monomial(&vars, crate::polycore::Monomial(vec![2]), rat_frac(3, 2));
        assert_eq!(f.components()[0], want0);
        assert_eq!(f.components()[1], poly(&["u"], &[(1, &[2]), (-2, &[1])]));
        assert!(parse_map("f(x) = (x\u{2212}x^2)", None).is_ok());
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_map("f(x,y) = (x, y^)", None) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 15),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_map("f(x,y) = (x, z)", None),
            Err(ParseError::Syntax { pos: 13, .. })
        ));
        assert!(matches!(
            parse_map("f(x,t) = (x)", None),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_map("f(x) = (x/x)", None),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_map("f(x) = (x) junk", None),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_map("f(x) = (x$)", None),
            Err(ParseError::Syntax { pos: 9, .. })
        ));
    }

    #[test]
    fn comments() {
        let f = parse_map("# cusp\nf(x) = (x^2, x^3)\n", None).unwrap();
        assert_eq!(f.codomain_dim(), 2);
    }

    #[test]
    fn rational_values() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat_frac(-1, 2));
        assert_eq!(parse_rational("2").unwrap(), rat(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-6i64..=6, 1i64..=4, 0u32..4, 0u32..4), 1..6).prop_map(|terms| {
            let vars = var_names(XY);
            let mut p = Poly::zero(&vars);
            for (n, d, a, b) in terms {
                if a + b == 0 {
                    continue;
                }
                p = &p
                    + &Poly::monomial(&vars, crate::polycore::Monomial(vec![a, b]), rat_frac(n, d));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn render_roundtrip(comps in proptest::collection::vec(arb_poly(), 1..5)) {
            let f = PolyMap::new(var_names(XY), comps).unwrap();
            prop_assert_eq!(parse_map(&f.to_string(), None).unwrap(), f);
        }
    }
}
