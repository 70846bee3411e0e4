//! Text syntax for expressions.
//!
//! ```text
//! expr  := ['-'] comp (('+' | '-') comp)*
//! comp  := tens ('.' tens)*          f . g  is  f after g
//! tens  := atom ('*' atom)*          tensor binds tighter than composition
//! atom  := gen | 'id(' word ')' | 'D(' k ')' | scalar | '(' expr ')'
//! ```
//! Generators: `cup cap rcup rcap s ls rs ds x c xd cd`. Words use `u` and `d`.
//! Scalars are bare rationals (`3/2`) or parenthesised Gaussian rationals (`(3/2+1i)`).

use super::expr::{expr_compose, expr_tensor, Expr};
use super::gen::Gen;
use super::word::Word;
use super::DiagramError;
use crate::scalars::GRat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Scalar(GRat, String),
    LParen,
    RParen,
    Dot,
    Star,
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_scalar_text(s: &str) -> bool {
    !s.trim().is_empty()
        && s.chars()
            .all(|c| c.is_ascii_digit() || "/+-*i ".contains(c))
}

fn lex(text: &str) -> Result<Vec<Spanned>, DiagramError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok: Tok| {
            out.push(Spanned {
                tok,
                line: l0,
                col: c0,
            })
        };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let mut advance = 1;
        match c {
            '(' => {
                let close = chars[k..].iter().position(|&x| x == ')').map(|p| p + k);
                let inner: Option<String> = close.map(|e| chars[k + 1..e].iter().collect());
                match inner {
                    Some(s) if is_scalar_text(&s) => {
                        let v: GRat = s.parse().map_err(|_| DiagramError::Syntax {
                            line: l0,
                            col: c0,
                            msg: format!("bad scalar literal ({s})"),
                        })?;
                        push(&mut out, Tok::Scalar(v, s.clone()));
                        advance = s.chars().count() + 2;
                    }
                    _ => push(&mut out, Tok::LParen),
                }
            }
            ')' => push(&mut out, Tok::RParen),
            '.' => push(&mut out, Tok::Dot),
            '*' => push(&mut out, Tok::Star),
            '+' => push(&mut out, Tok::Plus),
            '-' => push(&mut out, Tok::Minus),
            d if d.is_ascii_digit() => {
                let mut e = k;
                while e < chars.len() && (chars[e].is_ascii_digit() || chars[e] == '/') {
                    e += 1;
                }
                let s: String = chars[k..e].iter().collect();
                let v: GRat = s.parse().map_err(|_| DiagramError::Syntax {
                    line: l0,
                    col: c0,
                    msg: format!("bad number {s}"),
                })?;
                push(&mut out, Tok::Scalar(v, s.clone()));
                advance = e - k;
            }
            a if a.is_alphabetic() || a == '_' => {
                let mut e = k;
                while e < chars.len() && (chars[e].is_alphanumeric() || chars[e] == '_') {
                    e += 1;
                }
                let s: String = chars[k..e].iter().collect();
                push(&mut out, Tok::Ident(s));
                advance = e - k;
            }
            other => {
                return Err(DiagramError::Syntax {
                    line: l0,
                    col: c0,
                    msg: format!("unexpected character {other:?}"),
                });
            }
        }
        // no multi-line tokens, so columns advance by the token width
        k += advance;
        col += advance;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or(self.end)
    }

    fn syntax(&self, msg: impl Into<String>) -> DiagramError {
        let (line, col) = self.here();
        DiagramError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn typed(&self, at: (usize, usize), e: DiagramError) -> DiagramError {
        DiagramError::Type {
            line: at.0,
            col: at.1,
            msg: e.to_string(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), DiagramError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected {t:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, DiagramError> {
        let at = self.here();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.comp()?;
        if neg {
            acc = acc.scale(&GRat::from_int(-1));
        }
        loop {
            let at_op = self.here();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.comp()?;
                    acc = acc.add(&rhs).map_err(|e| self.typed(at_op, e))?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.comp()?;
                    acc = acc.sub(&rhs).map_err(|e| self.typed(at_op, e))?;
                }
                _ => break,
            }
        }
        let _ = at;
        Ok(acc)
    }

    fn comp(&mut self) -> Result<Expr, DiagramError> {
        let mut acc = self.tens()?;
        while self.peek() == Some(&Tok::Dot) {
            let at = self.here();
            self.pos += 1;
            let rhs = self.tens()?;
            acc = expr_compose(&acc, &rhs).map_err(|e| self.typed(at, e))?;
        }
        Ok(acc)
    }

    fn tens(&mut self) -> Result<Expr, DiagramError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = expr_tensor(&acc, &rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, DiagramError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.syntax("unexpected end of input"))?;
        match tok {
            Tok::Scalar(v, _) => {
                self.pos += 1;
                Ok(Expr::scalar(v))
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "id" => {
                        if let Some(Tok::Scalar(v, _)) = self.peek().cloned() {
                            // id(1) names the unit object
                            if v.is_one() {
                                self.pos += 1;
                                return Ok(Expr::identity(Word::empty()));
                            }
                            return Err(self.syntax("id expects a word of u/d letters"));
                        }
                        self.expect(Tok::LParen)?;
                        let w = match self.peek().cloned() {
                            Some(Tok::Ident(s)) => {
                                let w: Word = s
                                    .parse()
                                    .map_err(|_| self.syntax(format!("bad word {s:?}")))?;
                                self.pos += 1;
                                w
                            }
                            _ => Word::empty(),
                        };
                        self.expect(Tok::RParen)?;
                        Ok(Expr::identity(w))
                    }
                    "D" => match self.peek().cloned() {
                        Some(Tok::Scalar(v, text))
                            if v.is_integral() && v.im().is_integer() && !text.contains('-') =>
                        {
                            self.pos += 1;
                            let k: u32 = text
                                .trim()
                                .parse()
                                .map_err(|_| self.syntax("D expects a dot count"))?;
                            Ok(Expr::bubble(k))
                        }
                        _ => Err(self.syntax("D expects a dot count, as in D(3)")),
                    },
                    other => match Gen::from_token(other) {
                        Some(g) => Ok(Expr::gen(g)),
                        None => {
                            self.pos -= 1;
                            Err(self.syntax(format!("unknown generator {other:?}")))
                        }
                    },
                }
            }
            other => Err(self.syntax(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, DiagramError> {
    let toks = lex(text)?;
    let last_line = text.lines().count().max(1);
    let last_col = text
        .lines()
        .last()
        .map(|l| l.chars().count() + 1)
        .unwrap_or(1);
    let mut p = Parser {
        toks,
        pos: 0,
        end: (last_line, last_col),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(e)
}

fn print_layer(l: &super::gen::Layer) -> String {
    let mut parts = Vec::new();
    if !l.left.is_empty() {
        parts.push(format!("id({})", l.left));
    }
    parts.push(l.gen.token().to_string());
    if !l.right.is_empty() {
        parts.push(format!("id({})", l.right));
    }
    parts.join(" * ")
}

/// Canonical text: one summand per stack, layers listed top first.
pub fn print_expr(e: &Expr) -> String {
    if e.is_zero() {
        return if e.src() == e.dst() {
            format!("0 * id({})", e.src())
        } else {
            "0".to_string()
        };
    }
    let mut out = String::new();
    for (idx, (stack, c)) in e.terms().iter().enumerate() {
        let body = if stack.is_empty() {
            format!("id({})", e.src())
        } else {
            stack
                .iter()
                .rev()
                .map(print_layer)
                .collect::<Vec<_>>()
                .join(" . ")
        };
        let minus_one = GRat::from_int(-1);
        let (sign, coef) = if c.is_one() {
            ("+", None)
        } else if *c == minus_one {
            ("-", None)
        } else {
            ("+", Some(format!("({c})")))
        };
        if idx == 0 {
            if sign == "-" {
                out.push_str("- ");
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if let Some(coef) = coef {
            out.push_str(&coef);
            out.push_str(" * ");
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Layer;

    #[test]
    fn bubble_from_crossing() {
        let e = parse_expr("cap . ls . cup").unwrap();
        assert!(e.src().is_empty() && e.dst().is_empty());
    }

    #[test]
    fn dot_with_identity() {
        let e = parse_expr("x * id(u)").unwrap();
        let (stack, _) = e.terms().iter().next().unwrap();
        assert_eq!(
            stack,
            &vec![Layer::new(
                Word::empty(),
                Gen::BlackDot,
                "u".parse().unwrap()
            )]
        );
    }

    #[test]
    fn two_white_dots() {
        let e = parse_expr("c . c").unwrap();
        assert_eq!(e.terms().keys().next().unwrap().len(), 2);
    }

    #[test]
    fn type_error_has_position() {
        match parse_expr("cap . cup") {
            Err(DiagramError::Type {
                line: 1, col: 5, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_expr("x .\n  q") {
            Err(DiagramError::Syntax {
                line: 2, col: 3, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scalars_and_bubbles() {
        let e = parse_expr("(3/2+1i) * D(3) - 2").unwrap();
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.black_degree(), 3);
    }

    #[test]
    fn roundtrip_sample() {
        let e = parse_expr("(1/2) * s . x * id(u) - c * c + id(uu)").unwrap();
        let text = print_expr(&e);
        assert_eq!(parse_expr(&text).unwrap(), e);
    }
}
