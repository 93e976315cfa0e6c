use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ast::{Decl, Expr, ExprKind, Literal, Script};
use super::typecheck::typecheck;
use super::ScriptError;
use crate::calculus::PreOperadContext;
use crate::coeff::CoefficientRing;
use crate::endo::MultilinearMap;
use crate::error::{Error, Result};
use crate::free::{FreeElement, PlanarTree};
use crate::operad::{Backend, BackendKind, EndoOperad, FreeOperad, GradedElement, PreOperad};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub backend: BackendKind,
    pub prime: u64,
    pub dim: usize,
    pub seed: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            backend: BackendKind::Endo,
            prime: 97,
            dim: 1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalOutput {
    pub degree: usize,
    pub backend: BackendKind,
    pub payload: serde_json::Value,
    #[serde(skip)]
    pub element: GradedElement,
}

fn literal_map(
    ring: CoefficientRing,
    dim: usize,
    decl: &Decl,
    lit: &Literal,
) -> Result<MultilinearMap> {
    let bad = |reason: String| {
        Error::Script(ScriptError::Literal {
            span: decl.span,
            name: decl.name.clone(),
            reason,
        })
    };
    let size = dim.pow(decl.degree as u32 + 1);
    let entries = match lit {
        Literal::Int(n) if size == 1 => vec![*n],
        Literal::Int(_) => {
            return Err(bad(format!(
                "a scalar only fits a table of size 1, this one has {size} entries"
            )))
        }
        Literal::List(xs) if xs.len() == size => xs.clone(),
        Literal::List(xs) => {
            return Err(bad(format!("expected {size} entries, found {}", xs.len())))
        }
    };
    MultilinearMap::make_map(ring, dim, decl.degree, &entries)
}

/// Evaluates a script. Symbols without a literal take their value from
/// `bindings`, else a seeded random map (endo) or their own corolla (free).
pub fn eval_script(
    script: &Script,
    cfg: &EvalConfig,
    bindings: &BTreeMap<String, GradedElement>,
) -> Result<EvalOutput> {
    let script = typecheck(script.clone())?;
    let ring = CoefficientRing::prime_field(cfg.prime)?;
    let backend = match cfg.backend {
        BackendKind::Endo => Backend::Endo(EndoOperad::new(ring, cfg.dim)?),
        BackendKind::Free => Backend::Free(FreeOperad { ring }),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut env: BTreeMap<String, GradedElement> = BTreeMap::new();
    for d in &script.decls {
        let value = if let Some(lit) = &d.literal {
            if cfg.backend == BackendKind::Free {
                return Err(ScriptError::Literal {
                    span: d.span,
                    name: d.name.clone(),
                    reason: "literal tables need the endo backend".into(),
                }
                .into());
            }
            GradedElement::Endo(literal_map(ring, cfg.dim, d, lit)?)
        } else if let Some(bound) = bindings.get(&d.name) {
            if bound.backend() != cfg.backend {
                return Err(Error::BackendMismatch);
            }
            if bound.degree() != d.degree {
                return Err(Error::DegreeMismatch {
                    expected: d.degree,
                    found: bound.degree(),
                });
            }
            bound.clone()
        } else {
            match cfg.backend {
                BackendKind::Endo => {
                    GradedElement::Endo(MultilinearMap::random(ring, cfg.dim, d.degree, &mut rng)?)
                }
                BackendKind::Free => GradedElement::Free(FreeElement::from_tree(
                    ring,
                    PlanarTree::corolla(&d.name, d.degree),
                )),
            }
        };
        env.insert(d.name.clone(), value);
    }
    let mu = match env.get("mu") {
        Some(m) => m.clone(),
        None => match cfg.backend {
            BackendKind::Endo => {
                GradedElement::Endo(MultilinearMap::random(ring, cfg.dim, 2, &mut rng)?)
            }
            BackendKind::Free => {
                GradedElement::Free(FreeElement::from_tree(ring, PlanarTree::corolla("mu", 2)))
            }
        },
    };
    let ctx = PreOperadContext::new(backend, mu)?;
    let element = eval(&ctx, &env, &script.body)?;
    Ok(EvalOutput {
        degree: element.degree(),
        backend: cfg.backend,
        payload: element.payload(),
        element,
    })
}

fn eval(
    ctx: &PreOperadContext<Backend>,
    env: &BTreeMap<String, GradedElement>,
    e: &Expr,
) -> Result<GradedElement> {
    let go = |x: &Expr| eval(ctx, env, x);
    let out = match &e.kind {
        ExprKind::Sym(name) => {
            env.get(name)
                .cloned()
                .ok_or_else(|| ScriptError::UnboundSymbol {
                    span: e.span,
                    name: name.clone(),
                })?
        }
        ExprKind::Unit => ctx.unit(),
        ExprKind::Mu => ctx.mu.clone(),
        ExprKind::Scaled(c, a) => ctx.scale(&go(a)?, *c)?,
        ExprKind::Add(a, b) => {
            let (x, y) = (go(a)?, go(b)?);
            ctx.lin(x.degree(), &[(1, &x), (1, &y)])?
        }
        ExprKind::Sub(a, b) => ctx.sub(&go(a)?, &go(b)?)?,
        ExprKind::Comp(a, b, i) => ctx.comp(&go(a)?, &go(b)?, *i)?,
        ExprKind::Cup(a, b) => ctx.cup(&go(a)?, &go(b)?)?,
        ExprKind::Bul(a, b) => ctx.bullet(&go(a)?, &go(b)?)?,
        ExprKind::Bracket(a, b) => ctx.bracket(&go(a)?, &go(b)?)?,
        ExprKind::Delta(a) => ctx.delta(&go(a)?)?,
        ExprKind::Tri(a, b, c) => ctx.tribraces(&go(a)?, &go(b)?, &go(c)?)?,
        ExprKind::Tetra(a, b, c, d) => ctx.tetrabraces(&go(a)?, &go(b)?, &go(c)?, &go(d)?)?,
    };
    if let Some(expected) = e.degree {
        if ctx.operad.degree(&out) != expected {
            return Err(Error::DegreeMismatch {
                expected,
                found: out.degree(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn run(text: &str, cfg: EvalConfig) -> Result<EvalOutput> {
        eval_script(&parse(text)?, &cfg, &BTreeMap::new())
    }

    #[test]
    fn scalar_examples() {
        let cfg = EvalConfig::default();
        let out = run(
            "let mu: deg 2 = 1; let f: deg 1 = 2; let g: deg 1 = 3; cup(f,g)",
            cfg,
        )
        .unwrap();
        assert_eq!(out.degree, 2);
        assert_eq!(out.payload, serde_json::json!([91]));

        let out = run("let mu: deg 2 = 2; let f: deg 2 = 7; delta(f)", cfg).unwrap();
        assert_eq!(out.degree, 3);
        assert_eq!(out.payload, serde_json::json!([0]));
        let out = run("let mu: deg 2 = 2; let f: deg 3 = 7; delta(f)", cfg).unwrap();
        assert_eq!(out.payload, serde_json::json!([14]));
        let out = run("let mu: deg 2 = 2; let f: deg 3 = 7; -1 * f", cfg);
        assert!(out.is_err());
        let out = run("let mu: deg 2 = 2; let f: deg 3 = -7; 3 * f - f", cfg).unwrap();
        assert_eq!(out.payload, serde_json::json!([83]));
    }

    #[test]
    fn free_composition_prints_the_grafted_tree() {
        let cfg = EvalConfig {
            backend: BackendKind::Free,
            ..EvalConfig::default()
        };
        let out = run("let h: deg 2; let f: deg 3; comp(h, f, 0)", cfg).unwrap();
        assert_eq!(out.degree, 4);
        assert_eq!(
            out.payload,
            serde_json::json!([{"coeff": "1", "tree": "(h (f _ _ _) _)"}])
        );
        let out = run("let h: deg 2; let f: deg 2; comp(h, f, 1)", cfg).unwrap();
        assert_eq!(out.payload[0]["coeff"], "96");
        assert!(run("let h: deg 2 = [1, 2]; h", cfg).is_err());
    }

    #[test]
    fn literals_and_bindings() {
        let cfg = EvalConfig {
            dim: 2,
            ..EvalConfig::default()
        };
        let out = run("let f: deg 1 = [1, 2, 3, 4]; 2 * comp(f, I, 0)", cfg).unwrap();
        assert_eq!(out.payload, serde_json::json!([2, 4, 6, 8]));
        assert!(matches!(
            run("let f: deg 1 = [1, 2, 3]; f", cfg),
            Err(Error::Script(ScriptError::Literal { .. }))
        ));
        assert!(matches!(
            run("let f: deg 1 = 5; f", cfg),
            Err(Error::Script(ScriptError::Literal { .. }))
        ));
        let ring = CoefficientRing::prime_field(97).unwrap();
        let g = MultilinearMap::make_map(ring, 2, 1, &[0, 1, 1, 0]).unwrap();
        let mut bindings = BTreeMap::new();
        bindings.insert("g".to_string(), GradedElement::Endo(g));
        let s = parse("let g: deg 1; comp(g, g, 0)").unwrap();
        let out = eval_script(&s, &cfg, &bindings).unwrap();
        assert_eq!(out.payload, serde_json::json!([1, 0, 0, 1]));
        let s = parse("let g: deg 2; g").unwrap();
        assert!(eval_script(&s, &cfg, &bindings).is_err());
    }

    #[test]
    fn seeded_and_typed() {
        let cfg = EvalConfig {
            dim: 2,
            seed: 5,
            ..EvalConfig::default()
        };
        let text = "let h: deg 3; let f: deg 1; let g: deg 2;\n\
                    tri(h, f, g) + bul(bul(h, f), g) - cup(comp(h, f, 1), I)";
        let a = run(text, cfg).unwrap();
        let b = run(text, cfg).unwrap();
        assert_eq!(a.payload, b.payload);
        assert_eq!(a.degree, 4);
        let c = run(text, EvalConfig { seed: 6, ..cfg }).unwrap();
        assert_ne!(a.payload, c.payload);
        assert!(matches!(
            run("let f: deg 2; let g: deg 1; comp(f,g,2)", cfg),
            Err(Error::Script(ScriptError::Index { .. }))
        ));
    }
}
