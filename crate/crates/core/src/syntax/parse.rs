//! Recursive-descent parser for terms, formulas and sequent text.
//!
//! Grammar (`~` binds tighter than `&`, `&` associates to the left, and
//! `forall` extends as far right as possible):
//!
//! ```text
//! formula ::= unary ('&' unary)*
//! unary   ::= '~' unary | 'forall' ATOM '.' formula | 'bot' | '(' formula ')' | IDENT args?
//! term    ::= IDENT args?
//! args    ::= '(' (term (',' term)*)? ')'
//! sequent ::= list? '|-' list?      list ::= formula (',' formula)*
//! ```

use super::{FormerKind, Formula, Signature, SyntaxError, Term};
use crate::nominal::Atom;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Amp,
    Tilde,
    Dot,
    Turnstile,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'&' => Tok::Amp,
            b'~' => Tok::Tilde,
            b'.' => Tok::Dot,
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 1;
                Tok::Turnstile
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(SyntaxError::Parse {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

enum SigRef<'s> {
    Fixed(&'s Signature),
    Open(&'s mut Signature),
}

impl SigRef<'_> {
    fn get(&self) -> &Signature {
        match self {
            SigRef::Fixed(s) => s,
            SigRef::Open(s) => s,
        }
    }
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: SigRef<'s>,
}

impl<'s> Parser<'s> {
    fn new(text: &str, sig: SigRef<'s>) -> Result<Parser<'s>, SyntaxError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            sig,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            ))
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => self.error(format!("unexpected {} after end of input", t.describe())),
        }
    }

    /// Looks up or, in open mode, declares a former. Returns the checked arity.
    fn former(&mut self, kind: FormerKind, name: &str, found: usize) -> Result<(), SyntaxError> {
        let known = match kind {
            FormerKind::Function => self.sig.get().fun_arity(name),
            FormerKind::Predicate => self.sig.get().pred_arity(name),
        };
        match (known, &mut self.sig) {
            (Some(expected), _) if expected != found => Err(SyntaxError::Arity {
                kind,
                name: name.to_string(),
                expected,
                found,
            }),
            (Some(_), _) => Ok(()),
            (None, SigRef::Open(sig)) => match kind {
                FormerKind::Function => sig.declare_fun(name, found),
                FormerKind::Predicate => sig.declare_pred(name, found),
            },
            (None, SigRef::Fixed(_)) => Err(SyntaxError::UnknownFormer {
                kind,
                name: name.to_string(),
            }),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, SyntaxError> {
        let mut args = Vec::new();
        if *self.peek() != Tok::LParen {
            return Ok(args);
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                t => {
                    let found = t.describe();
                    return self.error(format!("expected `,` or `)`, found {found}"));
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let name = match self.peek().clone() {
            Tok::Ident(name) => name,
            t => return self.error(format!("expected a term, found {}", t.describe())),
        };
        self.bump();
        let applied = *self.peek() == Tok::LParen;
        if !applied && self.sig.get().fun_arity(&name) != Some(0) {
            if let Some(atom) = self.sig.get().atom_named(&name) {
                return Ok(Term::Var(atom));
            }
        }
        let args = self.args()?;
        self.former(FormerKind::Function, &name, args.len())?;
        Ok(Term::App(name.into(), args))
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn binder(&mut self) -> Result<Atom, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => match self.sig.get().atom_named(&name) {
                Some(a) => {
                    self.bump();
                    Ok(a)
                }
                None => self.error(format!("`{name}` is not an atom")),
            },
            t => self.error(format!("expected an atom, found {}", t.describe())),
        }
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(kw) if kw == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(kw) if kw == "forall" => {
                self.bump();
                let a = self.binder()?;
                self.expect(Tok::Dot)?;
                Ok(Formula::all(a, self.formula()?))
            }
            Tok::Ident(name) => {
                self.bump();
                let args = self.args()?;
                self.former(FormerKind::Predicate, &name, args.len())?;
                Ok(Formula::Pred(name.into(), args))
            }
            t => self.error(format!("expected a formula, found {}", t.describe())),
        }
    }

    fn formula_list(&mut self) -> Result<Vec<Formula>, SyntaxError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Tok::Turnstile | Tok::Eof) {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.bump();
        }
    }
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text, SigRef::Fixed(sig))?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text, SigRef::Fixed(sig))?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a term, declaring previously unseen formers in `sig` with the
/// arity of their first use.
pub fn parse_term_inferring(text: &str, sig: &mut Signature) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text, SigRef::Open(sig))?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a formula, declaring previously unseen formers in `sig` with the
/// arity of their first use.
pub fn parse_formula_inferring(text: &str, sig: &mut Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text, SigRef::Open(sig))?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses `phi1, phi2 |- psi1` into its two formula lists. Unknown formers
/// are declared in `sig`.
pub fn parse_sequent_parts(
    text: &str,
    sig: &mut Signature,
) -> Result<(Vec<Formula>, Vec<Formula>), SyntaxError> {
    let mut p = Parser::new(text, SigRef::Open(sig))?;
    let left = p.formula_list()?;
    p.expect(Tok::Turnstile)?;
    let right = p.formula_list()?;
    p.finish()?;
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::parse_file("fun f/2\nfun g/1\nfun zero/0\npred P/1\npred Q/1\npred R/0\n").unwrap()
    }

    #[test]
    fn reads_the_grammar() {
        let a = Atom::new(0);
        let b = Atom::new(1);
        let mut s = Signature::new();
        let phi = parse_formula_inferring("forall a. P(a) & ~Q(f(a,b))", &mut s).unwrap();
        let expected = Formula::all(
            a,
            Formula::and(
                Formula::pred("P", vec![Term::Var(a)]),
                Formula::neg(Formula::pred(
                    "Q",
                    vec![Term::app("f", vec![Term::Var(a), Term::Var(b)])],
                )),
            ),
        );
        assert_eq!(phi, expected);
        assert_eq!(parse_formula("bot", &sig()).unwrap(), Formula::Bot);
    }

    #[test]
    fn precedence_and_associativity() {
        let s = sig();
        let p = |t: &str| parse_formula(t, &s).unwrap();
        assert_eq!(p("~R & R"), Formula::and(Formula::neg(p("R")), p("R")));
        assert_eq!(
            p("R & R & bot"),
            Formula::and(Formula::and(p("R"), p("R")), Formula::Bot)
        );
        assert_eq!(
            p("~forall a. P(a) & R"),
            Formula::neg(Formula::all(Atom::new(0), p("P(a) & R")))
        );
        assert_eq!(p("(R)"), p("R"));
        assert_eq!(p("R()"), p("R"));
        assert_eq!(p("P(zero())"), p("P(zero)"));
    }

    #[test]
    fn error_offsets() {
        let err = parse_formula("P(a,", &sig()).unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { offset: 4, .. }), "{err}");
        let err = parse_formula("P(a) $", &sig()).unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { offset: 5, .. }));
        let err = parse_formula("forall P. R", &sig()).unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { offset: 7, .. }));
        let err = parse_formula("P(a) R", &sig()).unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { offset: 5, .. }));
    }

    #[test]
    fn signature_errors() {
        assert!(matches!(
            parse_formula("S(a)", &sig()),
            Err(SyntaxError::UnknownFormer {
                kind: FormerKind::Predicate,
                ..
            })
        ));
        assert!(matches!(
            parse_formula("P(a, b)", &sig()),
            Err(SyntaxError::Arity {
                expected: 1,
                found: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_term("g(a, b)", &sig()),
            Err(SyntaxError::Arity {
                expected: 1,
                found: 2,
                ..
            })
        ));
        let mut open = Signature::new();
        parse_formula_inferring("P(a)", &mut open).unwrap();
        assert!(matches!(
            parse_formula_inferring("P(a, b)", &mut open),
            Err(SyntaxError::Arity { .. })
        ));
        assert!(matches!(
            parse_term("h(b)", &sig()),
            Err(SyntaxError::UnknownFormer {
                kind: FormerKind::Function,
                ..
            })
        ));
        // an applied single letter is a former, a bare one an atom
        let mut open = Signature::new();
        let t = parse_term_inferring("f(f)", &mut open).unwrap();
        assert_eq!(t, Term::app("f", vec![Term::Var(Atom::new(5))]));
        assert_eq!(t.to_string(), "f(f)");
        assert!(open.declare_fun("c", 0).is_err());
    }

    #[test]
    fn declared_atom_names() {
        let mut s = sig();
        s.declare_atom("x", Atom::new(40)).unwrap();
        assert_eq!(parse_term("x", &s).unwrap(), Term::Var(Atom::new(40)));
        assert_eq!(parse_term("a7", &s).unwrap(), Term::Var(Atom::new(7)));
    }

    #[test]
    fn sequent_parts() {
        let mut s = Signature::new();
        let (l, r) = parse_sequent_parts("P(a), Q(f(a,b)) |- forall a. P(a)", &mut s).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(r.len(), 1);
        let (l, r) = parse_sequent_parts("|- ~bot", &mut s).unwrap();
        assert!(l.is_empty());
        assert_eq!(r, vec![Formula::neg(Formula::Bot)]);
        let (l, r) = parse_sequent_parts("bot |- ", &mut s).unwrap();
        assert_eq!(l, vec![Formula::Bot]);
        assert!(r.is_empty());
        assert!(parse_sequent_parts("P(a)", &mut s).is_err());
    }
}
