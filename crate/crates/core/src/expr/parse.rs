use super::ast::{Decl, Expr, ExprKind, Literal, Script, Span};
use super::ScriptError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ScriptError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let span = Span { line, col };
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
        if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                k += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            let n = s.parse::<i64>().map_err(|_| ScriptError::Syntax {
                line,
                col,
                expected: "an integer that fits in 64 bits".into(),
            })?;
            col += k - start;
            out.push((Tok::Int(n), span));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            col += k - start;
            out.push((Tok::Ident(chars[start..k].iter().collect()), span));
            continue;
        }
        if ":;=+-*(),[]".contains(c) {
            out.push((Tok::Punct(c), span));
            col += 1;
            k += 1;
            continue;
        }
        return Err(ScriptError::Syntax {
            line,
            col,
            expected: format!("a token, found `{c}`"),
        });
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, ScriptError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        let span = self.span();
        Err(ScriptError::Syntax {
            line: span.line,
            col: span.col,
            expected: format!("{expected}, found {}", self.peek().describe()),
        })
    }

    fn punct(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{c}`"))
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn int(&mut self) -> PResult<i64> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => self.error("an integer"),
        }
    }

    fn signed_int(&mut self) -> PResult<i64> {
        if *self.peek() == Tok::Punct('-') {
            self.bump();
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.error("an identifier"),
        }
    }

    fn script(&mut self) -> PResult<Script> {
        let mut decls = Vec::new();
        while matches!(self.peek(), Tok::Ident(s) if s == "let") {
            decls.push(self.decl()?);
        }
        let body = self.expr()?;
        if *self.peek() != Tok::Eof {
            return self.error("`+`, `-` or end of input");
        }
        Ok(Script { decls, body })
    }

    fn decl(&mut self) -> PResult<Decl> {
        let span = self.span();
        self.keyword("let")?;
        let name = self.ident()?;
        self.punct(':')?;
        self.keyword("deg")?;
        let degree = self.int()? as usize;
        let literal = if *self.peek() == Tok::Punct('=') {
            self.bump();
            Some(self.literal()?)
        } else {
            None
        };
        self.punct(';')?;
        Ok(Decl {
            name,
            degree,
            literal,
            span,
        })
    }

    fn literal(&mut self) -> PResult<Literal> {
        if *self.peek() == Tok::Punct('[') {
            self.bump();
            let mut xs = Vec::new();
            if *self.peek() != Tok::Punct(']') {
                xs.push(self.signed_int()?);
                while *self.peek() == Tok::Punct(',') {
                    self.bump();
                    xs.push(self.signed_int()?);
                }
            }
            self.punct(']')?;
            Ok(Literal::List(xs))
        } else {
            Ok(Literal::Int(self.signed_int()?))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut left = self.term()?;
        loop {
            let span = self.span();
            let add = match self.peek() {
                Tok::Punct('+') => true,
                Tok::Punct('-') => false,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.term()?;
            let kind = if add {
                ExprKind::Add(Box::new(left), Box::new(right))
            } else {
                ExprKind::Sub(Box::new(left), Box::new(right))
            };
            left = Expr::new(kind, span);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        if let Tok::Int(n) = *self.peek() {
            let span = self.span();
            self.bump();
            self.punct('*')?;
            let atom = self.atom()?;
            return Ok(Expr::new(ExprKind::Scaled(n, Box::new(atom)), span));
        }
        self.atom()
    }

    fn args(&mut self, n: usize) -> PResult<Vec<Expr>> {
        self.punct('(')?;
        let mut out = vec![self.expr()?];
        for _ in 1..n {
            self.punct(',')?;
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Punct('(') => {
                self.bump();
                let e = self.expr()?;
                self.punct(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let is_call = *self.peek2() == Tok::Punct('(');
                self.bump();
                let b = Box::new;
                let kind = match (name.as_str(), is_call) {
                    ("I", _) => ExprKind::Unit,
                    ("mu", _) => ExprKind::Mu,
                    ("comp", true) => {
                        let mut a = self.args(2)?;
                        self.punct(',')?;
                        let i = self.int()? as usize;
                        let g = a.pop().expect("two arguments");
                        let f = a.pop().expect("two arguments");
                        ExprKind::Comp(b(f), b(g), i)
                    }
                    ("cup" | "bul" | "bracket", true) => {
                        let mut a = self.args(2)?;
                        let (g, f) = (b(a.pop().expect("arg")), b(a.pop().expect("arg")));
                        match name.as_str() {
                            "cup" => ExprKind::Cup(f, g),
                            "bul" => ExprKind::Bul(f, g),
                            _ => ExprKind::Bracket(f, g),
                        }
                    }
                    ("delta", true) => {
                        let mut a = self.args(1)?;
                        ExprKind::Delta(b(a.pop().expect("arg")))
                    }
                    ("tri", true) => {
                        let mut a = self.args(3)?.into_iter().map(b);
                        let (x, y, z) = (a.next(), a.next(), a.next());
                        ExprKind::Tri(x.expect("arg"), y.expect("arg"), z.expect("arg"))
                    }
                    ("tetra", true) => {
                        let mut a = self.args(4)?.into_iter().map(b);
                        let (w, x, y, z) = (a.next(), a.next(), a.next(), a.next());
                        ExprKind::Tetra(
                            w.expect("arg"),
                            x.expect("arg"),
                            y.expect("arg"),
                            z.expect("arg"),
                        )
                    }
                    ("let" | "deg", _) => {
                        self.pos -= 1;
                        return self.error("an expression");
                    }
                    _ => ExprKind::Sym(name),
                };
                if !matches!(kind, ExprKind::Sym(_) | ExprKind::Unit | ExprKind::Mu) {
                    self.punct(')')?;
                }
                Ok(Expr::new(kind, span))
            }
            _ => self.error("an expression"),
        }
    }
}

/// Parses a script.
pub fn parse(text: &str) -> Result<Script, ScriptError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.script()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn accepts_examples() {
        let s = parse("let f: deg 1; let g: deg 1; cup(f,g)").unwrap();
        assert_eq!(s.decls.len(), 2);
        assert!(matches!(s.body.kind, ExprKind::Cup(..)));
        let s = parse("let h: deg 3; tetra(h,h,h,h)").unwrap();
        assert!(matches!(s.body.kind, ExprKind::Tetra(..)));
        let s = parse("let mu: deg 2 = [1, -2, 3, 4, 5, 6, 7, 8];\nmu").unwrap();
        assert_eq!(
            s.decls[0].literal.as_ref().map(|l| l.to_string()).unwrap(),
            "[1, -2, 3, 4, 5, 6, 7, 8]"
        );
    }

    #[test]
    fn reports_positions() {
        match parse("comp(f,g,)") {
            Err(ScriptError::Syntax {
                line,
                col,
                expected,
            }) => {
                assert_eq!((line, col), (1, 10));
                assert!(expected.contains("integer"), "{expected}");
            }
            other => panic!("{other:?}"),
        }
        match parse("let f: deg 1;\n  cup(f f)") {
            Err(ScriptError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 9)),
            other => panic!("{other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("f +").is_err());
        assert!(parse("3 f").is_err());
        assert!(parse("f $ g").is_err());
        assert!(parse("99999999999999999999 * f").is_err());
    }

    #[test]
    fn precedence_and_printing() {
        let s = parse("a - (b + c) + 2 * (d - e) + 3 * (4 * f)").unwrap();
        assert_eq!(
            s.body.to_string(),
            "a - (b + c) + 2 * (d - e) + 3 * (4 * f)"
        );
        let s = parse("((a))").unwrap();
        assert_eq!(s.body.to_string(), "a");
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            Just("f".to_string()),
            Just("g".to_string()),
            Just("I".to_string()),
            Just("mu".to_string()),
        ];
        leaf.prop_recursive(4, 24, 4, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
                (0i64..9, inner.clone()).prop_map(|(c, a)| format!("{c} * ({a})")),
                (inner.clone(), inner.clone(), 0usize..4)
                    .prop_map(|(a, b, i)| format!("comp({a}, {b}, {i})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("cup({a},{b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("bul({a},{b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("bracket({a},{b})")),
                inner.clone().prop_map(|a| format!("delta({a})")),
                (inner.clone(), inner.clone(), inner.clone())
                    .prop_map(|(a, b, c)| format!("tri({a},{b},{c})")),
                (inner.clone(), inner.clone(), inner.clone(), inner)
                    .prop_map(|(a, b, c, d)| format!("tetra({a},{b},{c},{d})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_round_trip(body in arb_expr(), deg in 0usize..4) {
            let text = format!("let f: deg {deg}; let g: deg 2 = [1, 2, 3];\n{body}");
            let first = parse(&text).unwrap();
            let again = parse(&first.to_string()).unwrap();
            prop_assert_eq!(&first, &again);
            prop_assert_eq!(first.to_string(), again.to_string());
        }
    }
}
