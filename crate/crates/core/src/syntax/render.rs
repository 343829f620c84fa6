use core::fmt::{self, Write};

use super::{Formula, Level};

fn level(f: &Formula) -> Level {
    match f {
        Formula::Binary(op, _, _) => op.level(),
        Formula::Unary(..) => Level::Unary,
        _ => Level::Primary,
    }
}

fn write_child(out: &mut fmt::Formatter<'_>, f: &Formula, parens: bool) -> fmt::Result {
    if parens {
        out.write_char('(')?;
        write_formula(out, f)?;
        out.write_char(')')
    } else {
        write_formula(out, f)
    }
}

pub(super) fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula) -> fmt::Result {
    match f {
        Formula::Atom(v) => out.write_str(v),
        Formula::Bot => out.write_str("bot"),
        Formula::Top => out.write_str("top"),
        Formula::Ne => out.write_str("NE"),
        Formula::Inclusion(atom) => {
            out.write_char('[')?;
            for b in atom.bits() {
                write!(out, "{} ", u8::from(*b))?;
            }
            out.write_str("<=")?;
            for v in atom.vars() {
                write!(out, " {v}")?;
            }
            out.write_char(']')
        }
        Formula::Unary(op, arg) => {
            out.write_str(op.token())?;
            let parens = level(arg) < Level::Unary;
            // keyword operators need a separator, `~` does not
            if op.token().ends_with(|c: char| c.is_ascii_alphabetic()) {
                out.write_char(' ')?;
            }
            write_child(out, arg, parens)
        }
        Formula::Binary(op, lhs, rhs) => {
            let own = op.level();
            let right_assoc = own == Level::Conditional;
            let (l, r) = (level(lhs), level(rhs));
            let lhs_parens = l < own || (l == own && right_assoc);
            let rhs_parens = r < own || (r == own && !right_assoc);
            write_child(out, lhs, lhs_parens)?;
            write!(out, " {} ", op.token())?;
            write_child(out, rhs, rhs_parens)
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse, BinaryOp, Formula, InclusionAtom, UnaryOp};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn render_examples() {
        assert_eq!(Formula::unary(UnaryOp::Nabla, Formula::atom("p")).render(), "nabla p");
        let f = Formula::and(Formula::atom("p"), Formula::tensor_or(Formula::atom("q"), Formula::atom("r")));
        assert_eq!(f.render(), "p /\\ (q \\/ r)");
        let incl = InclusionAtom::new(vec![true, false], vec!["p".to_string(), "q".to_string()]).unwrap();
        assert_eq!(Formula::Inclusion(incl).render(), "[1 0 <= p q]");
    }

    #[test]
    fn minimal_parentheses() {
        for text in [
            "p -> q -> r",
            "(p -> q) -> r",
            "p \\/ q vv r",
            "p \\/ (q vv r)",
            "~~p",
            "~(p /\\ q)",
            "nabla (p \\/ q)",
            "bdia ~p",
            "p /\\ (q ovv bdia ~p) /\\ bdia q",
            "(p max-> q) tand r",
        ] {
            assert_eq!(parse(text).unwrap().render(), text);
        }
        let f = Formula::binary(BinaryOp::IntImp, Formula::Top, Formula::Ne);
        assert_eq!(f.render(), "top -> NE");
    }
}
