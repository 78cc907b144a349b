//! Concrete syntax.
//!
//! ```text
//! type  ::= prod ('->' type)?
//! prod  ::= tatom ('*' prod)?
//! tatom ::= 'o' | '1' | '(' type ')'
//! term  ::= ('\' | 'λ') ident ':' type '.' term | app
//! app   ::= ('fst' | 'snd')? atom atom*
//! atom  ::= ident | '()' | '(' term ')' | '(' term ',' term ')'
//! ```
//!
//! Binder names are resolved to indices here and discarded.

use super::typecheck::typecheck;
use super::{Term, Type};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lambda,
    Ident(String),
    Colon,
    Dot,
    LParen,
    RParen,
    Comma,
    Arrow,
    Star,
    One,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '\\' | 'λ' => {
                bump(&mut chars);
                Tok::Lambda
            }
            ':' => {
                bump(&mut chars);
                Tok::Colon
            }
            '.' => {
                bump(&mut chars);
                Tok::Dot
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            '*' | '×' => {
                bump(&mut chars);
                Tok::Star
            }
            '1' => {
                bump(&mut chars);
                Tok::One
            }
            '⇒' | '→' => {
                bump(&mut chars);
                Tok::Arrow
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    Tok::Arrow
                } else {
                    return Err(Error::Parse {
                        line: l,
                        column: col,
                        message: "expected `->`".into(),
                    });
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            other => {
                return Err(Error::Parse {
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn ty(&mut self) -> Result<Type> {
        let left = self.prod()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            Ok(Type::arrow(left, self.ty()?))
        } else {
            Ok(left)
        }
    }

    fn prod(&mut self) -> Result<Type> {
        let left = self.type_atom()?;
        if *self.peek() == Tok::Star {
            self.advance();
            Ok(Type::product(left, self.prod()?))
        } else {
            Ok(left)
        }
    }

    fn type_atom(&mut self) -> Result<Type> {
        match self.peek().clone() {
            Tok::Ident(n) if n == "o" => {
                self.advance();
                Ok(Type::Base)
            }
            Tok::One => {
                self.advance();
                Ok(Type::Unit)
            }
            Tok::LParen => {
                self.advance();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error("expected a type (`o`, `1` or `(`)")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        if *self.peek() == Tok::Lambda {
            self.advance();
            let name = match self.advance() {
                Tok::Ident(n) => n,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected a binder name"));
                }
            };
            self.expect(Tok::Colon, "`:` and a binder type")?;
            let ty = self.ty()?;
            self.expect(Tok::Dot, "`.`")?;
            self.scope.push(name);
            let body = self.term();
            self.scope.pop();
            Ok(Term::lam(ty, body?))
        } else {
            self.app()
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(n) if n != "fst" && n != "snd") || *self.peek() == Tok::LParen
    }

    fn app(&mut self) -> Result<Term> {
        let mut head = match self.peek() {
            Tok::Ident(n) if n == "fst" || n == "snd" => {
                let first = n == "fst";
                self.advance();
                let arg = self.atom()?;
                if first {
                    Term::fst(arg)
                } else {
                    Term::snd(arg)
                }
            }
            _ => self.atom()?,
        };
        while self.starts_atom() || *self.peek() == Tok::Lambda {
            let arg = if *self.peek() == Tok::Lambda {
                self.term()?
            } else {
                self.atom()?
            };
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Ident(name) if name != "fst" && name != "snd" => {
                let idx = self.scope.iter().rev().position(|n| *n == name);
                match idx {
                    Some(i) => {
                        self.advance();
                        Ok(Term::var(i))
                    }
                    None => Err(Error::UnboundVariable { name }),
                }
            }
            Tok::LParen => {
                self.advance();
                if *self.peek() == Tok::RParen {
                    self.advance();
                    return Ok(Term::Unit);
                }
                let t = self.term()?;
                if *self.peek() == Tok::Comma {
                    self.advance();
                    let u = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Term::pair(t, u))
                } else {
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(t)
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Parses a type such as `(o -> o) -> o -> o`.
pub fn parse_type(src: &str) -> Result<Type> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        scope: Vec::new(),
    };
    let t = p.ty()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("trailing input after type"));
    }
    Ok(t)
}

/// Parses a term without typechecking it. Context names are given outermost
/// first, so the last one is index 0.
pub fn parse_untyped(src: &str, names: &[&str]) -> Result<Term> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        scope: names.iter().map(|s| s.to_string()).collect(),
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("trailing input after term"));
    }
    Ok(t)
}

/// Parses and typechecks a term in a named context. Returns the term and
/// its type.
pub fn parse_term(src: &str, ctx: &[(&str, Type)]) -> Result<(Term, Type)> {
    let names: Vec<&str> = ctx.iter().map(|(n, _)| *n).collect();
    let term = parse_untyped(src, &names)?;
    let types: Vec<Type> = ctx.iter().map(|(_, t)| t.clone()).collect();
    let ty = typecheck(&types, &term)?;
    Ok((term, ty))
}

/// Parses a closed term.
pub fn parse_closed(src: &str) -> Result<(Term, Type)> {
    parse_term(src, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print;

    #[test]
    fn identity() {
        let (t, ty) = parse_closed("\\x:o. x").unwrap();
        assert_eq!(t, Term::identity(Type::Base));
        assert_eq!(ty, Type::endo());
    }

    #[test]
    fn church_two() {
        let (t, ty) = parse_closed("\\f:o->o. \\x:o. f (f x)").unwrap();
        assert_eq!(ty, Type::church(1));
        assert_eq!(t.size(), 7);
    }

    #[test]
    fn unbound_variable() {
        let err = parse_closed("\\x:o. y").unwrap_err();
        assert_eq!(err, Error::UnboundVariable { name: "y".into() });
    }

    #[test]
    fn parse_error_carries_position() {
        match parse_closed("\\x:o x").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_closed("\\x:o. x )"), Err(Error::Parse { .. })));
        assert!(matches!(parse_closed("\\x:o - o. x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn arrows_associate_right_and_application_left() {
        assert_eq!(
            parse_type("o -> o -> o").unwrap(),
            Type::arrow(Type::Base, Type::endo())
        );
        let (t, _) = parse_term(
            "f x y",
            &[
                ("f", parse_type("o->o->o").unwrap()),
                ("x", Type::Base),
                ("y", Type::Base),
            ],
        )
        .unwrap();
        assert_eq!(t, Term::app(Term::app(Term::var(2), Term::var(1)), Term::var(0)));
    }

    #[test]
    fn alpha_renaming_does_not_change_the_term() {
        let a = parse_untyped("\\f:o->o. \\x:o. f (f x)", &[]).unwrap();
        let b = parse_untyped("λg:o→o. λy:o. g (g y)", &[]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn products_and_unit_parse() {
        let (t, ty) = parse_closed("\\p:o * 1. (snd p, fst p)").unwrap();
        assert_eq!(ty.to_string(), "o * 1 -> 1 * o");
        let (u, _) = parse_closed("()").unwrap();
        assert_eq!(u, Term::Unit);
        assert_eq!(parse_closed(&print(&t)).unwrap().0, t);
    }

    #[test]
    fn trailing_lambda_argument() {
        let (t, ty) = parse_closed("(\\f:o->o. f) \\x:o. x").unwrap();
        assert_eq!(ty, Type::endo());
        assert_eq!(t.size(), 5);
    }
}
