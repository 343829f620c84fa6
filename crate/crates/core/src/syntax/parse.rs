use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{is_identifier, BinaryOp, Formula, InclusionAtom, Level, UnaryOp};
use crate::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bit(bool),
    Bot,
    Top,
    Ne,
    Unary(UnaryOp),
    Binary(BinaryOp),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Leq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("variable `{s}`"),
            Tok::Bit(b) => format!("`{}`", u8::from(*b)),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::Ne => "`NE`".into(),
            Tok::Unary(op) => format!("`{}`", op.token()),
            Tok::Binary(op) => format!("`{}`", op.token()),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Leq => "`<=`".into(),
        }
    }
}

const RESERVED: [(&str, &str); 3] = [
    ("hvee", "Hodges' disjunction"),
    ("rvee", "relevant disjunction"),
    ("dep", "dependence atoms"),
];

fn error(position: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
    ParseError { position, kind, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let symbol = [
            ("/\\", Tok::Binary(BinaryOp::And)),
            ("\\/", Tok::Binary(BinaryOp::TensorOr)),
            ("->", Tok::Binary(BinaryOp::IntImp)),
            ("<=", Tok::Leq),
            ("~", Tok::Unary(UnaryOp::Neg)),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[", Tok::LBracket),
            ("]", Tok::RBracket),
        ]
        .into_iter()
        .find(|(s, _)| rest.starts_with(s));
        if let Some((s, tok)) = symbol {
            out.push((start, tok));
            i += s.len();
            continue;
        }
        if rest.starts_with("=(") {
            return Err(error(
                start,
                ParseErrorKind::Reserved,
                "dependence atoms `=(...)` are reserved and have no semantics here",
            ));
        }
        if c == b'0' || c == b'1' {
            let end = i + 1;
            if end < bytes.len() && bytes[end].is_ascii_alphanumeric() {
                return Err(error(start, ParseErrorKind::UnknownToken, "bits must be single `0` or `1` tokens"));
            }
            out.push((start, Tok::Bit(c == b'1')));
            i = end;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut end = i;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            let word = &text[i..end];
            if text[end..].starts_with("->") {
                let arrow = format!("{word}->");
                if let Some(op) = BinaryOp::conditional_from_token(&arrow) {
                    out.push((start, Tok::Binary(op)));
                    i = end + 2;
                    continue;
                }
            }
            let tok = match word {
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                "NE" => Tok::Ne,
                "nabla" => Tok::Unary(UnaryOp::Nabla),
                "bdia" => Tok::Unary(UnaryOp::BlackDia),
                "dia" => Tok::Unary(UnaryOp::Dia),
                "vv" => Tok::Binary(BinaryOp::GlobalOr),
                "ovv" => Tok::Binary(BinaryOp::OuterGlobalOr),
                "tand" => Tok::Binary(BinaryOp::TensorAnd),
                _ => {
                    if let Some((_, what)) = RESERVED.iter().find(|(w, _)| *w == word) {
                        return Err(error(
                            start,
                            ParseErrorKind::Reserved,
                            format!("`{word}` ({what}) is reserved and has no semantics here"),
                        ));
                    }
                    if !is_identifier(word) {
                        return Err(error(start, ParseErrorKind::UnknownToken, format!("unknown token `{word}`")));
                    }
                    Tok::Ident(word.to_string())
                }
            };
            out.push((start, tok));
            i = end;
            continue;
        }
        let ch = rest.chars().next().unwrap_or('?');
        return Err(error(start, ParseErrorKind::UnknownToken, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => error(
                self.offset(),
                ParseErrorKind::UnexpectedToken,
                format!("expected {expected}, found {}", t.describe()),
            ),
            None => error(self.end, ParseErrorKind::UnexpectedEnd, format!("expected {expected}, found end of input")),
        }
    }

    fn binary_at(&self, level: Level) -> Option<BinaryOp> {
        match self.peek() {
            Some(Tok::Binary(op)) if op.level() == level => Some(*op),
            _ => None,
        }
    }

    fn conditional(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if let Some(op) = self.binary_at(Level::Conditional) {
            self.pos += 1;
            let rhs = self.conditional()?;
            return Ok(Formula::binary(op, lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while let Some(op) = self.binary_at(Level::Disjunction) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.binary_at(Level::Conjunction) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if let Some(Tok::Unary(op)) = self.peek() {
            let op = *op;
            self.pos += 1;
            return Ok(Formula::unary(op, self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let start = self.offset();
        match self.peek() {
            Some(Tok::Ident(_)) => match self.next() {
                Some(Tok::Ident(name)) => Ok(Formula::Atom(name)),
                _ => unreachable!(),
            },
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Ne) => {
                self.pos += 1;
                Ok(Formula::Ne)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.conditional()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("`)`")),
                }
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                self.inclusion(start)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn inclusion(&mut self, start: usize) -> Result<Formula, ParseError> {
        let mut bits = Vec::new();
        while let Some(Tok::Bit(b)) = self.peek() {
            bits.push(*b);
            self.pos += 1;
        }
        match self.peek() {
            Some(Tok::Leq) => self.pos += 1,
            _ => return Err(self.unexpected("`0`, `1` or `<=`")),
        }
        let mut vars = Vec::new();
        while let Some(Tok::Ident(v)) = self.peek() {
            vars.push(v.clone());
            self.pos += 1;
        }
        match self.peek() {
            Some(Tok::RBracket) => self.pos += 1,
            _ => return Err(self.unexpected("a variable or `]`")),
        }
        InclusionAtom::new(bits, vars)
            .map(Formula::Inclusion)
            .map_err(|e| ParseError { position: start, ..e })
    }
}

/// Parses a formula of the concrete grammar.
///
/// Conditionals bind loosest and associate to the right; disjunctions
/// (`\/`, `vv`, `ovv`) and then conjunctions (`/\`, `tand`) associate to
/// the left; prefix operators bind tightest.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.len() };
    let formula = parser.conditional()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::BinaryOp::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn parses_the_nabla_example() {
        let f = parse("nabla p /\\ (p \\/ q)").unwrap();
        let expected = Formula::and(
            Formula::unary(UnaryOp::Nabla, atom("p")),
            Formula::tensor_or(atom("p"), atom("q")),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn constants_and_associativity() {
        assert_eq!(parse("bot").unwrap(), Formula::Bot);
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::binary(IntImp, atom("p"), Formula::binary(IntImp, atom("q"), atom("r")))
        );
        assert_eq!(
            parse("p vv q \\/ r").unwrap(),
            Formula::binary(TensorOr, Formula::binary(GlobalOr, atom("p"), atom("q")), atom("r"))
        );
        assert_eq!(
            parse("p tand q /\\ r").unwrap(),
            Formula::binary(And, Formula::binary(TensorAnd, atom("p"), atom("q")), atom("r"))
        );
        assert_eq!(
            parse("p ei-> q ent-> r").unwrap(),
            Formula::binary(EpIndic, atom("p"), Formula::binary(Entail, atom("q"), atom("r")))
        );
    }

    #[test]
    fn every_conditional_token_lexes() {
        for op in BinaryOp::CONDITIONALS {
            let text = alloc::format!("p {} q", op.token());
            assert_eq!(parse(&text).unwrap(), Formula::binary(op, atom("p"), atom("q")), "{text}");
        }
        // an arrow glued to a variable is still a plain `->`
        assert_eq!(parse("p->q").unwrap(), Formula::binary(IntImp, atom("p"), atom("q")));
        assert_eq!(parse("up -> q").unwrap(), Formula::binary(IntImp, atom("up"), atom("q")));
    }

    #[test]
    fn inclusion_atoms() {
        let f = parse("[1 0 <= p q]").unwrap();
        match f {
            Formula::Inclusion(a) => {
                assert_eq!(a.bits(), &[true, false]);
                assert_eq!(a.vars(), &["p".to_string(), "q".to_string()]);
            }
            other => panic!("{other:?}"),
        }
        let e = parse("[1 <= p q]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedInclusion);
        assert_eq!(e.position, 0);
        let e = parse("p /\\ [1 0 <= p p]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedInclusion);
        assert_eq!(e.position, 5);
        assert_eq!(parse("[<=]").unwrap_err().kind, ParseErrorKind::MalformedInclusion);
    }

    #[test]
    fn positioned_errors() {
        let e = parse("p /\\").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(e.position, 4);
        let e = parse("p q").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedToken);
        assert_eq!(e.position, 2);
        let e = parse("p & q").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownToken);
        assert_eq!(e.position, 2);
        let e = parse("(p").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(parse("Foo").unwrap_err().kind, ParseErrorKind::UnknownToken);
        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn reserved_words() {
        for text in ["p hvee q", "p rvee q", "dep", "=(p, q)"] {
            let e = parse(text).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::Reserved, "{text}");
            assert!(e.message.contains("reserved"));
        }
    }
}
