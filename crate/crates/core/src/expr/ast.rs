use std::fmt;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    List(Vec<i64>),
}

#[derive(Debug, Clone)]
pub struct Decl {
    pub name: String,
    pub degree: usize,
    pub literal: Option<Literal>,
    pub span: Span,
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        (&self.name, self.degree, &self.literal) == (&other.name, other.degree, &other.literal)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Sym(String),
    Unit,
    Mu,
    Scaled(i64, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Comp(Box<Expr>, Box<Expr>, usize),
    Cup(Box<Expr>, Box<Expr>),
    Bul(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Delta(Box<Expr>),
    Tri(Box<Expr>, Box<Expr>, Box<Expr>),
    Tetra(Box<Expr>, Box<Expr>, Box<Expr>, Box<Expr>),
}

/// An expression node; `degree` is filled in by the typechecker.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
    pub degree: Option<usize>,
}

/// Structural equality; positions and annotations are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr {
            kind,
            span,
            degree: None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ExprKind::Sym(_) => "symbol",
            ExprKind::Unit => "I",
            ExprKind::Mu => "mu",
            ExprKind::Scaled(..) => "scalar multiple",
            ExprKind::Add(..) => "sum",
            ExprKind::Sub(..) => "difference",
            ExprKind::Comp(..) => "comp",
            ExprKind::Cup(..) => "cup",
            ExprKind::Bul(..) => "bul",
            ExprKind::Bracket(..) => "bracket",
            ExprKind::Delta(..) => "delta",
            ExprKind::Tri(..) => "tri",
            ExprKind::Tetra(..) => "tetra",
        }
    }

    fn is_sum(&self) -> bool {
        matches!(
            self.kind,
            ExprKind::Add(..) | ExprKind::Sub(..) | ExprKind::Scaled(..)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub decls: Vec<Decl>,
    pub body: Expr,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(n) => write!(f, "{n}"),
            Literal::List(xs) => {
                f.write_str("[")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Sym(s) => f.write_str(s),
            ExprKind::Unit => f.write_str("I"),
            ExprKind::Mu => f.write_str("mu"),
            ExprKind::Scaled(c, e) if e.is_sum() => write!(f, "{c} * ({e})"),
            ExprKind::Scaled(c, e) => write!(f, "{c} * {e}"),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                let op = if matches!(self.kind, ExprKind::Add(..)) {
                    "+"
                } else {
                    "-"
                };
                if matches!(b.kind, ExprKind::Add(..) | ExprKind::Sub(..)) {
                    write!(f, "{a} {op} ({b})")
                } else {
                    write!(f, "{a} {op} {b}")
                }
            }
            ExprKind::Comp(a, b, i) => write!(f, "comp({a}, {b}, {i})"),
            ExprKind::Cup(a, b) => write!(f, "cup({a}, {b})"),
            ExprKind::Bul(a, b) => write!(f, "bul({a}, {b})"),
            ExprKind::Bracket(a, b) => write!(f, "bracket({a}, {b})"),
            ExprKind::Delta(a) => write!(f, "delta({a})"),
            ExprKind::Tri(a, b, c) => write!(f, "tri({a}, {b}, {c})"),
            ExprKind::Tetra(a, b, c, d) => write!(f, "tetra({a}, {b}, {c}, {d})"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            write!(f, "let {}: deg {}", d.name, d.degree)?;
            if let Some(lit) = &d.literal {
                write!(f, " = {lit}")?;
            }
            writeln!(f, ";")?;
        }
        writeln!(f, "{}", self.body)
    }
}
