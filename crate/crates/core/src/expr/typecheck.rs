use std::collections::BTreeMap;

use super::ast::{Expr, ExprKind, Script};
use super::ScriptError;

type TResult<T> = Result<T, ScriptError>;

const RESERVED: [&str; 11] = [
    "I", "let", "deg", "comp", "cup", "bul", "bracket", "delta", "tri", "tetra", "_",
];

/// Annotates every node of `script` with its degree.
pub fn typecheck(mut script: Script) -> TResult<Script> {
    let mut env = BTreeMap::new();
    for d in &script.decls {
        if RESERVED.contains(&d.name.as_str()) || env.contains_key(&d.name) {
            return Err(ScriptError::DuplicateSymbol {
                span: d.span,
                name: d.name.clone(),
            });
        }
        if d.name == "mu" && d.degree != 2 {
            return Err(ScriptError::Degree {
                span: d.span,
                node: "mu".into(),
                expected: "2".into(),
                found: d.degree,
            });
        }
        env.insert(d.name.clone(), d.degree);
    }
    annotate(&mut script.body, &env)?;
    Ok(script)
}

fn positive(e: &Expr, node: &str) -> TResult<usize> {
    let d = e.degree.expect("annotated");
    if d == 0 {
        return Err(ScriptError::Degree {
            span: e.span,
            node: node.into(),
            expected: "an argument of degree at least 1".into(),
            found: 0,
        });
    }
    Ok(d)
}

fn annotate(e: &mut Expr, env: &BTreeMap<String, usize>) -> TResult<usize> {
    let span = e.span;
    let node = e.name();
    let degree = match &mut e.kind {
        ExprKind::Sym(name) => {
            *env.get(name.as_str())
                .ok_or_else(|| ScriptError::UnboundSymbol {
                    span,
                    name: name.clone(),
                })?
        }
        ExprKind::Unit => 1,
        ExprKind::Mu => 2,
        ExprKind::Scaled(_, a) => annotate(a, env)?,
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let da = annotate(a, env)?;
            let db = annotate(b, env)?;
            if da != db {
                return Err(ScriptError::Degree {
                    span: b.span,
                    node: node.into(),
                    expected: format!("degree {da} to match the left operand"),
                    found: db,
                });
            }
            da
        }
        ExprKind::Comp(a, b, i) => {
            let da = annotate(a, env)?;
            let db = annotate(b, env)?;
            if *i >= da {
                return Err(ScriptError::Index {
                    span,
                    index: *i,
                    degree: da,
                });
            }
            da + db - 1
        }
        ExprKind::Cup(a, b) => annotate(a, env)? + annotate(b, env)?,
        ExprKind::Bul(a, b) => {
            annotate(a, env)?;
            annotate(b, env)?;
            positive(a, node)? + b.degree.expect("annotated") - 1
        }
        ExprKind::Bracket(a, b) => {
            annotate(a, env)?;
            annotate(b, env)?;
            positive(a, node)? + positive(b, node)? - 1
        }
        ExprKind::Delta(a) => {
            annotate(a, env)?;
            positive(a, node)? + 1
        }
        ExprKind::Tri(a, b, c) => {
            let mut sum = 0;
            for x in [a, b, c] {
                annotate(x, env)?;
                sum += positive(x, node)?;
            }
            sum - 2
        }
        ExprKind::Tetra(a, b, c, d) => {
            let mut sum = 0;
            for x in [a, b, c, d] {
                annotate(x, env)?;
                sum += positive(x, node)?;
            }
            sum - 3
        }
    };
    e.degree = Some(degree);
    Ok(degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn check(text: &str) -> TResult<usize> {
        let s = typecheck(parse(text).unwrap())?;
        Ok(s.body.degree.unwrap())
    }

    #[test]
    fn degree_rules() {
        assert_eq!(check("let f: deg 2; let g: deg 1; comp(f,g,1)"), Ok(2));
        assert_eq!(
            check("let f: deg 1; let g: deg 1; cup(f,g) + delta(f)"),
            Ok(2)
        );
        assert_eq!(check("let h: deg 3; tetra(h,h,h,h)"), Ok(9));
        assert_eq!(check("let h: deg 3; let f: deg 2; tri(h,f,f)"), Ok(5));
        assert_eq!(
            check("let f: deg 3; bul(f, mu) - 2 * bracket(f, mu)"),
            Ok(4)
        );
        assert_eq!(check("let c: deg 0; cup(c, I)"), Ok(1));
        assert_eq!(check("let c: deg 0; comp(I, c, 0)"), Ok(0));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            check("let f: deg 2; let g: deg 1; comp(f,g,2)"),
            Err(ScriptError::Index {
                index: 2,
                degree: 2,
                ..
            })
        ));
        assert!(matches!(
            check("let f: deg 2; let g: deg 1; f + g"),
            Err(ScriptError::Degree { found: 1, .. })
        ));
        assert!(matches!(
            check("let c: deg 0; delta(c)"),
            Err(ScriptError::Degree { found: 0, .. })
        ));
        assert!(matches!(
            check("let c: deg 0; let f: deg 2; tri(f, c, f)"),
            Err(ScriptError::Degree { .. })
        ));
        assert!(matches!(
            check("cup(f, f)"),
            Err(ScriptError::UnboundSymbol { ref name, .. }) if name == "f"
        ));
        assert!(matches!(
            check("let f: deg 1; let f: deg 2; f"),
            Err(ScriptError::DuplicateSymbol { .. })
        ));
        assert!(matches!(
            check("let mu: deg 3; mu"),
            Err(ScriptError::Degree { found: 3, .. })
        ));
    }
}
