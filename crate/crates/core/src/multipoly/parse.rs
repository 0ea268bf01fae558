//! Text parser for polynomials.
//!
//! Accepts the plain format (`v0*v1 - v2*v5`, `(5*z^2-5)*v1^2*v2`, `3/2*v0`)
//! as well as LaTeX-flavoured input as it is usually typeset:
//! subscripts and braces are ignored (`v_{2}v_3^2`), juxtaposition means
//! multiplication, `\\` and `&` are layout noise, and roots of unity may be
//! written `\zeta_{12}`, `\zeta_6^4` or `\zeta^5_6`. The bare symbol `z`
//! denotes the generator of Q(zeta_12) unless the ring has a variable named `z`.
//! A run of consecutive signs multiplies out (`- +` is a minus).

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{MPoly, Monomial, RingRef};
use crate::error::{Error, Result};
use crate::exactfield::{CycElem, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Const(CycElem),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_noise(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b' ' | b'\t' | b'\n' | b'\r' | b'_' | b'{' | b'}' | b'&' => self.pos += 1,
                b'\\' if self.src.get(self.pos + 1) == Some(&b'\\') => self.pos += 2,
                _ => break,
            }
        }
    }

    fn read_uint(&mut self) -> Result<u32> {
        self.skip_noise();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer too large"))
    }

    /// `\zeta` has been consumed; reads the optional `^k` / `_n` decorations.
    fn zeta(&mut self) -> Result<Vec<Tok>> {
        let mut order = None;
        let mut power = None;
        for _ in 0..2 {
            let save = self.pos;
            self.skip_noise();
            let had_underscore = self.src[save..self.pos].contains(&b'_');
            if had_underscore && order.is_none() {
                order = Some(self.read_uint()?);
            } else if self.src.get(self.pos) == Some(&b'^') && power.is_none() && order.is_none() {
                self.pos += 1;
                power = Some(self.read_uint()?);
            } else {
                self.pos = save;
                break;
            }
        }
        let n = order.unwrap_or(12);
        if n == 0 || 12 % n != 0 {
            return Err(self.err(format!("root of unity of order {n} is not in Q(zeta_12)")));
        }
        Ok(vec![Tok::Const(CycElem::root_of_unity(n, power.unwrap_or(1) as i64))])
    }

    /// Splits an alphanumeric run into ring variables by longest match.
    fn identifier(&mut self, word: &str) -> Result<Vec<Tok>> {
        let mut out = Vec::new();
        let mut rest = word;
        while !rest.is_empty() {
            let best = self
                .ring
                .vars()
                .iter()
                .enumerate()
                .filter(|(_, v)| rest.starts_with(v.as_str()))
                .max_by_key(|(_, v)| v.len());
            if let Some((i, v)) = best {
                out.push(Tok::Var(i));
                rest = &rest[v.len()..];
            } else if rest.starts_with('z') {
                out.push(Tok::Const(CycElem::zeta12()));
                rest = &rest[1..];
            } else if rest.as_bytes()[0].is_ascii_digit() {
                let n: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
                out.push(Tok::Num(n.parse().unwrap()));
                rest = &rest[n.len()..];
            } else {
                return Err(self.err(format!(
                    "unknown symbol `{rest}` for ring {}",
                    self.ring.name()
                )));
            }
        }
        Ok(out)
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        loop {
            self.skip_noise();
            let Some(&c) = self.src.get(self.pos) else { break };
            let at = self.pos;
            let toks = match c {
                b'+' => vec![Tok::Plus],
                b'-' => vec![Tok::Minus],
                b'*' => vec![Tok::Star],
                b'/' => vec![Tok::Slash],
                b'^' => vec![Tok::Caret],
                b'(' => vec![Tok::LParen],
                b')' => vec![Tok::RParen],
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((at, Tok::Num(s.parse().unwrap())));
                    continue;
                }
                b'\\' => {
                    self.pos += 1;
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                        self.pos += 1;
                    }
                    let cmd = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let toks = match cmd {
                        "zeta" => self.zeta()?,
                        "cdot" | "times" => vec![Tok::Star],
                        "left" | "right" | "," | "" => vec![],
                        _ => return Err(self.err(format!("unsupported command \\{cmd}"))),
                    };
                    out.extend(toks.into_iter().map(|t| (at, t)));
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    let mut word = String::new();
                    while let Some(&c) = self.src.get(self.pos) {
                        if c.is_ascii_alphanumeric() {
                            word.push(c as char);
                        } else if !matches!(c, b'_' | b'{' | b'}') {
                            break;
                        }
                        self.pos += 1;
                    }
                    let toks = self.identifier(&word)?;
                    out.extend(toks.into_iter().map(|t| (at, t)));
                    continue;
                }
                _ => return Err(self.err(format!("unexpected character `{}`", c as char))),
            };
            self.pos += 1;
            out.extend(toks.into_iter().map(|t| (at, t)));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    ring: &'a RingRef,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn signs(&mut self) -> bool {
        let mut neg = false;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {}
                Some(Tok::Minus) => neg = !neg,
                _ => return neg,
            }
            self.i += 1;
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = MPoly::zero(self.ring);
        let mut neg = self.signs();
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => neg = self.signs(),
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Const(_)) | Some(Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    self.i += 1;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    let c = f.leading_coeff().unwrap().inv()?;
                    acc = acc.scale(&c);
                }
                _ if self.starts_factor() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.i += 1;
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| self.err("exponent too large"))?,
                _ => return Err(self.err("expected an exponent")),
            };
            self.i += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.i += 1;
        Ok(match tok {
            Tok::Num(n) => MPoly::constant(self.ring, CycElem::from_rational(Rational::from_integer(n))),
            Tok::Var(v) => MPoly::monomial(self.ring, Monomial::var(v), CycElem::one()),
            Tok::Const(c) => MPoly::constant(self.ring, c),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                e
            }
            Tok::Minus => -&self.factor()?,
            Tok::Plus => self.factor()?,
            other => {
                self.i -= 1;
                return Err(self.err(format!("unexpected token {other:?}")));
            }
        })
    }
}

/// Parses `s` as a polynomial in `ring`.
pub fn parse_poly(ring: &RingRef, s: &str) -> Result<MPoly> {
    let lexer = Lexer {
        src: s.as_bytes(),
        pos: 0,
        ring,
    };
    let toks = lexer.tokens()?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        i: 0,
        ring,
        end: s.len(),
    };
    let out = p.expr()?;
    if p.i != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a projective point such as `(1 : -1 : \zeta^5_6 : 0 : 1 : z^2)`.
pub fn parse_point(s: &str) -> Result<Vec<CycElem>> {
    let coeff = super::Ring::new("coeff", &[], super::MonOrder::Grevlex);
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(':')
        .map(|c| {
            let c = c.trim().trim_end_matches(',').trim();
            let p = parse_poly(&coeff, c)?;
            if !p.is_constant() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("non-constant coordinate `{c}`"),
                });
            }
            Ok(p.leading_coeff().cloned().unwrap_or_else(CycElem::zero))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::rings;

    #[test]
    fn plain_and_latex_agree() {
        let r = rings::v();
        let a = parse_poly(&r, "v2*v3^2 - v0^2*v5").unwrap();
        let b = parse_poly(&r, "v_2v_3^2 - v_0^2v_5").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zeta_notations() {
        let c = rings::v();
        let a = parse_poly(&c, r"5\zeta_{12}^2v_0^2v_4").unwrap();
        let b = parse_poly(&c, "(5*z^2)*v0^2*v4").unwrap();
        assert_eq!(a, b);
        let p = parse_point(r"(1 : -1 : \zeta^5_6: \zeta_6 : \zeta^4_6 : \zeta^2_6)").unwrap();
        assert_eq!(p[2], CycElem::zeta12_pow(10));
        assert_eq!(p[4], CycElem::zeta12_pow(8));
        let q = parse_point(r"(\zeta_6^4 : 1)").unwrap();
        assert_eq!(q[0], CycElem::zeta12_pow(8));
    }

    #[test]
    fn doubled_signs_multiply() {
        let r = rings::v();
        let a = parse_poly(&r, r"v_1 - \\ + 4v_2").unwrap();
        assert_eq!(a, parse_poly(&r, "v1 - 4*v2").unwrap());
    }

    #[test]
    fn fractions_and_parens() {
        let r = rings::x();
        let a = parse_poly(&r, "3/2*x0 + x_0(x_1)^2").unwrap();
        assert_eq!(a.to_string(), "x0*x1^2 + 3/2*x0");
    }

    #[test]
    fn display_round_trip() {
        let r = rings::v();
        let a = parse_poly(&r, "(5*z^2-5)*v1^2*v2 - 4*v0^2*v5 + 3/7*v4").unwrap();
        assert_eq!(parse_poly(&r, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn errors_carry_position() {
        let r = rings::v();
        assert!(matches!(parse_poly(&r, "v0 + w1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, "(v0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, ""), Err(Error::Parse { .. })));
    }

    #[test]
    fn zero_constant() {
        let r = rings::v();
        assert!(parse_poly(&r, "v0 - v0").unwrap().is_zero());
        assert!(parse_poly(&r, "0").unwrap().is_zero());
        let _ = BigInt::zero();
    }
}
