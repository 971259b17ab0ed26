use std::fmt::{self, Write};

use super::{Formula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(a) => write!(f, "{a}"),
            Term::App(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

fn write_args(f: &mut impl Write, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_char('(')?;
    for (i, t) in args.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{t}")?;
    }
    f.write_char(')')
}

/// `operand`: the formula is the operand of `~` or the right side of `&`,
/// so a conjunction must be bracketed. `tail`: nothing follows the formula,
/// so a `forall` may extend to the end without brackets.
fn write_formula(f: &mut impl Write, phi: &Formula, operand: bool, tail: bool) -> fmt::Result {
    match phi {
        Formula::Bot => f.write_str("bot"),
        Formula::Pred(name, args) => {
            f.write_str(name)?;
            write_args(f, args)
        }
        Formula::Neg(g) => {
            f.write_char('~')?;
            write_formula(f, g, true, tail)
        }
        Formula::All(a, body) => {
            if !tail {
                f.write_char('(')?;
            }
            write!(f, "forall {a}. ")?;
            write_formula(f, body, false, true)?;
            if !tail {
                f.write_char(')')?;
            }
            Ok(())
        }
        Formula::And(l, r) => {
            let tail = tail && !operand;
            if operand {
                f.write_char('(')?;
            }
            write_formula(f, l, false, false)?;
            f.write_str(" & ")?;
            write_formula(f, r, true, operand || tail)?;
            if operand {
                f.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, false, true)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_formula_inferring, Signature};

    fn round(text: &str) -> String {
        let mut s = Signature::new();
        parse_formula_inferring(text, &mut s).unwrap().to_string()
    }

    #[test]
    fn prints_canonically() {
        for text in [
            "forall a. P(a) & ~Q(f(a,b))",
            "bot",
            "~~bot",
            "P & Q & R",
            "P & (Q & R)",
            "(forall a. P(a)) & Q",
            "~(forall a. P(a)) & Q",
            "~forall a. P(a)",
            "~(P & Q)",
            "P & ~(forall a. Q(a)) & R",
            "P & forall a. Q(a) & R",
            "forall a. forall b. P(f(a,b))",
            "P(c0)",
        ] {
            assert_eq!(round(text), text);
        }
    }

    #[test]
    fn normalises_spacing() {
        assert_eq!(round("  P( a , b )&~ Q"), "P(a,b) & ~Q");
        assert_eq!(round("((P))"), "P");
    }
}
