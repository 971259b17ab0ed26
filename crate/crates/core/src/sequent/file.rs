//! The proof file format: one s-expression tree per file.
//!
//! ```text
//! (NegR (principal "~bot")
//!   (premise (BotL (concl "bot |- "))))
//! ```
//!
//! Node items are `(concl "...")`, `(principal "...")`, `(witness "...")`,
//! `(eigen a3)` and `(premise NODE)`. `;` starts a comment. A node without a
//! conclusion must have premises and a principal; its conclusion is rebuilt
//! from them.

use thiserror::Error;

use super::{Derivation, FormulaSet, Rule, Sequent};
use crate::nominal::Atom;
use crate::syntax::{parse_formula_inferring, parse_term_inferring, Formula, Signature, SyntaxError, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: in {what} {text:?}: {source}")]
    Formula {
        line: usize,
        what: &'static str,
        text: String,
        source: SyntaxError,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Str(String),
    Sym(String),
}

struct Reader<'t> {
    text: &'t str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn line_of(text: &str, offset: usize) -> usize {
    1 + text[..offset.min(text.len())].matches('\n').count()
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ProofFileError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                out.push((Tok::Open, i));
            }
            ')' => {
                chars.next();
                out.push((Tok::Close, i));
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, '\\')) => match chars.next() {
                            Some((_, c)) => s.push(c),
                            None => break,
                        },
                        Some((_, c)) => s.push(c),
                        None => {
                            return Err(ProofFileError::Syntax {
                                line: line_of(text, i),
                                message: "unterminated string".into(),
                            })
                        }
                    }
                }
                out.push((Tok::Str(s), i));
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push((Tok::Sym(s), i));
            }
        }
    }
    Ok(out)
}

impl Reader<'_> {
    fn line(&self) -> usize {
        let offset = self.toks.get(self.pos).map_or(self.text.len(), |t| t.1);
        line_of(self.text, offset)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ProofFileError> {
        Err(ProofFileError::Syntax {
            line: self.line(),
            message: message.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect_open(&mut self) -> Result<(), ProofFileError> {
        match self.next() {
            Some(Tok::Open) => Ok(()),
            _ => {
                self.pos -= 1;
                self.error("expected `(`")
            }
        }
    }

    fn expect_close(&mut self) -> Result<(), ProofFileError> {
        match self.next() {
            Some(Tok::Close) => Ok(()),
            _ => {
                self.pos -= 1;
                self.error("expected `)`")
            }
        }
    }

    fn string(&mut self, key: &str) -> Result<String, ProofFileError> {
        match self.next() {
            Some(Tok::Str(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                self.error(format!("`{key}` expects a quoted string"))
            }
        }
    }

    fn node(&mut self, sig: &mut Signature) -> Result<Derivation, ProofFileError> {
        self.expect_open()?;
        let line = self.line();
        let rule = match self.next() {
            Some(Tok::Sym(name)) => match Rule::from_name(&name) {
                Some(r) => r,
                None => {
                    self.pos -= 1;
                    return self.error(format!("unknown rule `{name}`"));
                }
            },
            _ => {
                self.pos -= 1;
                return self.error("expected a rule name");
            }
        };
        let mut conclusion = None;
        let mut d = Derivation::leaf(rule, Sequent::default());
        loop {
            match self.next() {
                Some(Tok::Close) => break,
                Some(Tok::Open) => {}
                _ => {
                    self.pos -= 1;
                    return self.error("expected `(` or `)`");
                }
            }
            let key = match self.next() {
                Some(Tok::Sym(k)) => k,
                _ => {
                    self.pos -= 1;
                    return self.error("expected an item name");
                }
            };
            let item_line = self.line();
            let formula_err = |what, text: &str, source| ProofFileError::Formula {
                line: item_line,
                what,
                text: text.to_string(),
                source,
            };
            match key.as_str() {
                "concl" => {
                    let text = self.string(&key)?;
                    let s = Sequent::parse(&text, sig).map_err(|e| formula_err("conclusion", &text, e))?;
                    conclusion = Some(s);
                }
                "principal" => {
                    let text = self.string(&key)?;
                    let f = parse_formula_inferring(&text, sig)
                        .map_err(|e| formula_err("principal", &text, e))?;
                    d.principal = Some(f);
                }
                "witness" => {
                    let text = self.string(&key)?;
                    let t = parse_term_inferring(&text, sig).map_err(|e| formula_err("witness", &text, e))?;
                    d.witness = Some(t);
                }
                "eigen" => {
                    let name = match self.next() {
                        Some(Tok::Sym(s)) | Some(Tok::Str(s)) => s,
                        _ => {
                            self.pos -= 1;
                            return self.error("`eigen` expects an atom");
                        }
                    };
                    match sig.atom_named(&name) {
                        Some(a) => d.eigen = Some(a),
                        None => return self.error(format!("`{name}` is not an atom")),
                    }
                }
                "premise" => {
                    let p = self.node(sig)?;
                    d.premises.push(p);
                }
                other => return self.error(format!("unknown item `{other}`")),
            }
            self.expect_close()?;
        }
        d.conclusion = match conclusion {
            Some(c) => c,
            None => match infer_conclusion(&d) {
                Some(c) => c,
                None => {
                    return Err(ProofFileError::Syntax {
                        line,
                        message: format!(
                            "{rule} node needs a `concl`: it can only be rebuilt from a principal and the right number of premises"
                        ),
                    })
                }
            },
        };
        Ok(d)
    }
}

/// The conclusion obtained by reversing `d.rule` on its premises, with the
/// principal dropped from the premise contexts.
fn infer_conclusion(d: &Derivation) -> Option<Sequent> {
    let p = d.principal.as_ref()?;
    if d.premises.len() != d.rule.premise_count() || d.premises.is_empty() {
        return None;
    }
    let first = &d.premises[0].conclusion;
    let (l, r): (FormulaSet, FormulaSet) = match (d.rule, p) {
        (Rule::AndL, Formula::And(x, y)) => (
            first.left.clone().without(x).without(y).with(p.clone()),
            first.right.clone(),
        ),
        (Rule::AndR, Formula::And(x, y)) => {
            let mut r = first.right.clone().without(x);
            for f in d.premises[1].conclusion.right.clone().without(y).iter() {
                r.insert(f.clone());
            }
            (first.left.clone(), r.with(p.clone()))
        }
        (Rule::NegL, Formula::Neg(x)) => (first.left.clone().with(p.clone()), first.right.clone().without(x)),
        (Rule::NegR, Formula::Neg(x)) => (first.left.clone().without(x), first.right.clone().with(p.clone())),
        (Rule::AllL, Formula::All(a, body)) => {
            let s = d.witness.clone().unwrap_or(Term::Var(*a));
            (
                first.left.clone().without(&body.subst(*a, &s)).with(p.clone()),
                first.right.clone(),
            )
        }
        (Rule::AllR, Formula::All(a, body)) => {
            let e: Atom = d.eigen.unwrap_or(*a);
            (
                first.left.clone(),
                first
                    .right
                    .clone()
                    .without(&body.subst(*a, &Term::Var(e)))
                    .with(p.clone()),
            )
        }
        _ => return None,
    };
    Some(Sequent { left: l, right: r })
}

/// Parses a proof file, declaring formers in `sig` as they are met.
pub fn parse_proof(text: &str, sig: &mut Signature) -> Result<Derivation, ProofFileError> {
    let mut r = Reader {
        text,
        toks: lex(text)?,
        pos: 0,
    };
    let d = r.node(sig)?;
    if r.pos < r.toks.len() {
        return r.error("trailing input after the proof tree");
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequent::check_derivation;

    #[test]
    fn reads_the_documented_example() {
        let mut sig = Signature::new();
        let d = parse_proof(
            r#"(NegR (principal "~bot") (premise (BotL (concl "bot |- "))))"#,
            &mut sig,
        )
        .unwrap();
        assert_eq!(check_derivation(&d).unwrap().to_string(), "|- ~bot");
    }

    #[test]
    fn round_trips_through_the_printer() {
        let text = r#"
            ; all-left with a witness, then the axiom
            (AllL (concl "forall a. P(a) |- P(f(b))") (principal "forall a. P(a)") (witness "f(b)")
              (premise (Ax (concl "P(f(b)) |- P(f(b))"))))"#;
        let mut sig = Signature::new();
        let d = parse_proof(text, &mut sig).unwrap();
        assert!(check_derivation(&d).is_ok());
        let again = parse_proof(&d.to_sexpr(), &mut sig).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn eigen_atoms() {
        let text = r#"(AllR (principal "forall a. ~bot") (eigen a3)
            (premise (NegR (principal "~bot") (premise (BotL (concl "bot |-"))))))"#;
        let d = parse_proof(text, &mut Signature::new()).unwrap();
        assert_eq!(d.eigen, Some(Atom::new(3)));
        assert_eq!(check_derivation(&d).unwrap().to_string(), "|- forall a. ~bot");
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse_proof("(BotL\n (concl \"P(a,\"))", &mut Signature::new()).unwrap_err();
        assert!(matches!(err, ProofFileError::Formula { line: 2, .. }), "{err}");
        let err = parse_proof("(Cut)", &mut Signature::new()).unwrap_err();
        assert!(err.to_string().contains("unknown rule"));
        let err = parse_proof("(Ax)", &mut Signature::new()).unwrap_err();
        assert!(err.to_string().contains("needs a `concl`"));
    }
}
