use std::collections::BTreeSet;

use serde_json::Value;

use super::words::Word;
use super::{Ctx, Env, Law, Mismatch, MuSource, Outcome};
use crate::calculus::{
    boundary_faces, envelope_domains, ground_tetrahedron, scope, scope_regions, GammaKind, Mutation,
};
use crate::coeff::sign;
use crate::endo::MultilinearMap;
use crate::error::Result;
use crate::free::{Assignment, FreeElement, PlanarTree};
use crate::operad::{EndoOperad, FreeOperad, GradedElement, PreOperad};
use crate::PreOperadContext;

type G = GradedElement;

fn fail(clause: &str, lhs: Value, rhs: Value, point: Option<Vec<usize>>) -> Outcome {
    Outcome::Fail(Box::new(Mismatch {
        lhs,
        rhs,
        domain_point: point,
        clause: clause.to_string(),
    }))
}

fn value(x: &G) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

/// Returns from the checker with a failure when the two sides differ.
macro_rules! expect_eq {
    ($clause:expr, $lhs:expr, $rhs:expr) => {
        expect_eq!($clause, $lhs, $rhs, None)
    };
    ($clause:expr, $lhs:expr, $rhs:expr, $point:expr) => {{
        let (l, r): (&G, &G) = (&$lhs, &$rhs);
        if l != r {
            return Ok(fail($clause, value(l), value(r), $point));
        }
    }};
}

fn d(x: &G) -> i64 {
    x.degree() as i64
}

fn s(x: &G) -> i64 {
    x.shifted_degree()
}

fn u(i: i64) -> usize {
    i as usize
}

fn cup_identities(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f, g) = (env.ctx, &x[0], &x[1]);
    let unit = c.unit();
    let lhs = c.comp(&c.mu, f, 0)?;
    let rhs = c.scale(&c.cup(f, &unit)?, sign(d(f)))?;
    expect_eq!("μ∘_0 f = (−1)^f f∪𝕀", lhs, rhs);
    let lhs = c.comp(&c.mu, f, 1)?;
    let rhs = c.scale(&c.cup(&unit, f)?, -1)?;
    expect_eq!("μ∘_1 f = −𝕀∪f", lhs, rhs);
    let lhs = c.cup(f, g)?;
    let rhs = c.scale(&c.comp(&c.comp(&c.mu, g, 1)?, f, 0)?, -sign(s(f) * d(g)))?;
    expect_eq!("f∪g = −(−1)^{|f|g}(μ∘_1 g)∘_0 f", lhs, rhs);
    Ok(Outcome::Pass)
}

fn cup_composition(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f, g, h) = (env.ctx, &x[0], &x[1], &x[2]);
    let fg = c.cup(f, g)?;
    for j in 0..=s(f) {
        let lhs = c.comp(&fg, h, u(j))?;
        let rhs = c.scale(&c.cup(&c.comp(f, h, u(j))?, g)?, sign(d(g) * s(h)))?;
        expect_eq!(
            "(f∪g)∘_j h = (−1)^{g|h|}(f∘_j h)∪g",
            lhs,
            rhs,
            Some(vec![u(j)])
        );
    }
    for j in d(f)..=s(g) + d(f) {
        let lhs = c.comp(&fg, h, u(j))?;
        let rhs = c.cup(f, &c.comp(g, h, u(j - d(f)))?)?;
        expect_eq!("(f∪g)∘_j h = f∪(g∘_{j−f} h)", lhs, rhs, Some(vec![u(j)]));
    }
    Ok(Outcome::Pass)
}

fn right_derivation(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f, g, h) = (env.ctx, &x[0], &x[1], &x[2]);
    let lhs = c.bullet(&c.cup(f, g)?, h)?;
    let a = c.cup(f, &c.bullet(g, h)?)?;
    let b = c.cup(&c.bullet(f, h)?, g)?;
    let rhs = c.lin(c.deg(&lhs), &[(1, &a), (sign(s(h) * d(g)), &b)])?;
    expect_eq!("(f∪g)•h = f∪(g•h) + (−1)^{|h|g}(f•h)∪g", lhs, rhs);
    Ok(Outcome::Pass)
}

fn coboundary_expansion(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f) = (env.ctx, &x[0]);
    let unit = c.unit();
    let lhs = c.scale(&c.delta(f)?, -1)?;
    let a = c.cup(f, &unit)?;
    let b = c.bullet(f, &c.mu)?;
    let e = c.cup(&unit, f)?;
    let rhs = c.lin(c.deg(&lhs), &[(1, &a), (1, &b), (sign(s(f)), &e)])?;
    expect_eq!("−δf = f∪𝕀 + f•μ + (−1)^{|f|}𝕀∪f", lhs, rhs);
    Ok(Outcome::Pass)
}

fn bullet_deviation(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f, g) = (env.ctx, &x[0], &x[1]);
    let lhs = c.scale(&c.dev_bullet(f, g)?, sign(s(g)))?;
    let a = c.cup(f, g)?;
    let b = c.cup(g, f)?;
    let rhs = c.lin(c.deg(&a), &[(1, &a), (-sign(d(f) * d(g)), &b)])?;
    expect_eq!("(−1)^{|g|} dev_• = f∪g − (−1)^{fg} g∪f", lhs, rhs);
    Ok(Outcome::Pass)
}

fn associator(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g) = (env.ctx, &x[0], &x[1], &x[2]);
    if h.degree() <= 1 {
        return Ok(Outcome::Vacuous);
    }
    let k = sign(s(f) * s(g));
    let lhs = c.associator(h, f, g)?;
    let a = c.tribraces(h, f, g)?;
    let b = c.tribraces(h, g, f)?;
    let rhs = c.lin(c.deg(&lhs), &[(1, &a), (k, &b)])?;
    expect_eq!("(h,f,g) = {h,f,g} + (−1)^{|f||g|}{h,g,f}", lhs, rhs);
    let rhs = c.scale(&c.associator(h, g, f)?, k)?;
    expect_eq!("(h,f,g) = (−1)^{|f||g|}(h,g,f)", lhs, rhs);
    Ok(Outcome::Pass)
}

fn tribrace_deviation(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g) = (env.ctx, &x[0], &x[1], &x[2]);
    let lhs = c.scale(&c.dev_tribraces(h, f, g)?, sign(s(g)))?;
    let n = c.deg(&lhs);
    let k = sign(s(h) * d(f));
    let fg = c.cup(f, g)?;
    let a = c.cup(&c.bullet(h, f)?, g)?;
    let b = c.cup(f, &c.bullet(h, g)?)?;
    let e = c.bullet(h, &fg)?;
    let rhs = c.lin(n, &[(1, &a), (k, &b), (-1, &e)])?;
    expect_eq!(
        "(−1)^{|g|} dev_{,,} = (h•f)∪g + (−1)^{|h|f} f∪(h•g) − h•(f∪g)",
        lhs,
        rhs
    );
    let a = c.cup(&c.bracket(h, f)?, g)?;
    let b = c.cup(f, &c.bracket(h, g)?)?;
    let e = c.bracket(h, &fg)?;
    let rhs = c.lin(n, &[(1, &a), (k, &b), (-1, &e)])?;
    expect_eq!(
        "(−1)^{|g|} dev_{,,} = [h,f]∪g + (−1)^{|h|f} f∪[h,g] − [h,f∪g]",
        lhs,
        rhs
    );
    Ok(Outcome::Pass)
}

fn tetrabrace_deviation(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g, b) = (env.ctx, &x[0], &x[1], &x[2], &x[3]);
    if h.degree() <= 1 {
        return Ok(Outcome::Vacuous);
    }
    let lhs = c.scale(&c.dev_tetrabraces(h, f, g, b)?, sign(s(b)))?;
    let t1 = c.cup(&c.tribraces(h, f, g)?, b)?;
    let t2 = c.tribraces(h, f, &c.cup(g, b)?)?;
    let t3 = c.tribraces(h, &c.cup(f, g)?, b)?;
    let t4 = c.cup(f, &c.tribraces(h, g, b)?)?;
    let rhs = c.lin(
        c.deg(&lhs),
        &[
            (1, &t1),
            (-1, &t2),
            (-sign(s(g)), &t3),
            (sign(s(h) * d(f) + s(g)), &t4),
        ],
    )?;
    expect_eq!(
        "(−1)^{|b|} dev_{,,,} = {h,f,g}∪b − {h,f,g∪b} − (−1)^{|g|}{h,f∪g,b} + (−1)^{|h|f+|g|} f∪{h,g,b}",
        lhs,
        rhs
    );
    Ok(Outcome::Pass)
}

fn sum(c: &Ctx, degree: usize, parts: &[G]) -> Result<G> {
    let terms: Vec<(i64, &G)> = parts.iter().map(|p| (1, p)).collect();
    c.lin(degree, &terms)
}

fn coboundary_defect_pointwise(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g, b) = (env.ctx, &x[0], &x[1], &x[2], &x[3]);
    let t = ground_tetrahedron(h.degree(), f.degree(), g.degree());
    if t.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    for p in t.points() {
        let (i, j, k) = (p[0], p[1], p[2]);
        let lhs = c.coboundary_defect(h, f, g, b, i, j, k)?;
        let parts = GammaKind::ALL
            .iter()
            .map(|&kind| c.aux_gamma(kind, h, f, g, b, i + 1, j + 1, k + 1))
            .collect::<Result<Vec<_>>>()?;
        let rhs = sum(c, c.deg(&lhs), &parts)?;
        expect_eq!(
            "defect of δ at (i,j,k) = Γ + Γ' + Γ'' + Γ''' at (i+1,j+1,k+1)",
            lhs,
            rhs,
            Some(p.to_vec())
        );
    }
    Ok(Outcome::Pass)
}

fn delta_h_split_pointwise(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g, b) = (env.ctx, &x[0], &x[1], &x[2], &x[3]);
    let range = ground_tetrahedron(h.degree() + 1, f.degree(), g.degree());
    if range.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    for p in range.points() {
        let (i, j, k) = (p[0], p[1], p[2]);
        let lhs = c.delta_h_term(h, f, g, b, i, j, k)?;
        let at = [
            (i, j, k),
            (i + 1, j, k),
            (i + 1, j + 1, k),
            (i + 1, j + 1, k + 1),
        ];
        let parts = GammaKind::ALL
            .iter()
            .zip(at)
            .map(|(&kind, (a, bb, cc))| c.aux_gamma(kind, h, f, g, b, a, bb, cc))
            .collect::<Result<Vec<_>>>()?;
        let rhs = sum(c, c.deg(&lhs), &parts)?;
        expect_eq!(
            "(−1)^{|f|+|g|+|b|}((δh∘_i f)∘_j g)∘_k b = Γ_{ijk} + Γ'_{i+1,j,k} + Γ''_{i+1,j+1,k} + Γ'''_{i+1,j+1,k+1}",
            lhs,
            rhs,
            Some(p.to_vec())
        );
    }
    Ok(Outcome::Pass)
}

fn point_set_value(set: &BTreeSet<Vec<usize>>) -> Value {
    serde_json::to_value(set).unwrap_or(Value::Null)
}

fn partition_check(h: usize, f: usize, g: usize, b: usize) -> Option<Outcome> {
    let env = envelope_domains(h, f, g, b);
    let shifted = env.shifted.point_set();
    let truncated = env.truncated.point_set();
    let boundary = env.boundary.point_set();
    let joined: BTreeSet<_> = shifted.union(boundary).cloned().collect();
    if !shifted.is_disjoint(boundary) || &joined != truncated {
        return Some(fail(
            "truncated envelope = T' ⊔ boundary",
            point_set_value(truncated),
            point_set_value(&joined),
            None,
        ));
    }
    if !truncated.is_subset(env.envelope.point_set()) {
        return Some(fail(
            "truncated envelope ⊆ envelope",
            point_set_value(truncated),
            point_set_value(env.envelope.point_set()),
            None,
        ));
    }
    let mut faces = BTreeSet::new();
    let mut overlap = false;
    for face in boundary_faces(h, f, g) {
        for p in face.points() {
            overlap |= !faces.insert(p.to_vec());
        }
    }
    if overlap || &faces != boundary {
        return Some(fail(
            "the four faces tile the boundary",
            point_set_value(boundary),
            point_set_value(&faces),
            None,
        ));
    }
    None
}

fn boundary_values(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g, b) = (env.ctx, &x[0], &x[1], &x[2], &x[3]);
    let (dh, df, dg) = (h.degree(), f.degree(), g.degree());
    if let Some(out) = partition_check(dh, df, dg, b.degree()) {
        return Ok(out);
    }
    let faces = boundary_faces(dh, df, dg);
    if faces.iter().all(|face| face.is_empty()) {
        return Ok(Outcome::Vacuous);
    }
    for (kind, face) in GammaKind::ALL.into_iter().zip(faces) {
        for p in face.points() {
            let lhs = c.aux_gamma(kind, h, f, g, b, p[0], p[1], p[2])?;
            let rhs = c.boundary_gamma(kind, h, f, g, b, p[0], p[1], p[2])?;
            expect_eq!(kind.boundary_clause(), lhs, rhs, Some(p.to_vec()));
        }
    }
    Ok(Outcome::Pass)
}

impl GammaKind {
    fn boundary_clause(self) -> &'static str {
        match self {
            GammaKind::Gamma => "Γ_{0jk} = (−1)^{|g|+b+|h|f} f∪((h∘_{j−f} g)∘_{k−f} b)",
            GammaKind::GammaPrime => "Γ'_{i,i+|f|,k} = (−1)^{|b|+|g|}(h∘_{i−1}(f∪g))∘_k b",
            GammaKind::GammaDouble => "Γ''_{i,j,j+|g|} = (−1)^{|b|}(h∘_{i−1} f)∘_{j−1}(g∪b)",
            GammaKind::GammaTriple => "Γ'''_{i,j,|h|+f+g} = (−1)^b ((h∘_{i−1} f)∘_{j−1} g)∪b",
        }
    }
}

fn delta_squared(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f) = (env.ctx, &x[0]);
    let mm = c.bullet(&c.mu, &c.mu)?;
    expect_eq!("μ•μ = 0", mm, c.zero(3));
    let dd = c.delta(&c.delta(f)?)?;
    expect_eq!("δ(δf) = 0", dd, c.zero(f.degree() + 2));
    if env.dim >= 2 {
        if let Some(m) = c.mu.as_endo() {
            let other = MultilinearMap::random(m.ring(), env.dim, 2, &mut env.aux)?;
            let other = GradedElement::Endo(other);
            let ctx = PreOperadContext::new(c.operad, other.clone())?;
            let mm = ctx.bullet(&other, &other)?;
            if ctx.is_zero(&mm) {
                return Ok(fail(
                    "a random μ has μ•μ ≠ 0",
                    value(&other),
                    value(&mm),
                    None,
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn degree_bookkeeping(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g, b) = (env.ctx, &x[0], &x[1], &x[2], &x[3]);
    let (dh, df, dg, db) = (h.degree(), f.degree(), g.degree(), b.degree());
    let checks = [
        ("deg(f∪g) = f+g", c.cup(f, g)?.degree(), df + dg),
        ("deg(f•g) = f+g−1", c.bullet(f, g)?.degree(), df + dg - 1),
        (
            "deg{h,f,g} = h+f+g−2",
            c.tribraces(h, f, g)?.degree(),
            dh + df + dg - 2,
        ),
        (
            "deg{h,f,g,b} = h+f+g+b−3",
            c.tetrabraces(h, f, g, b)?.degree(),
            dh + df + dg + db - 3,
        ),
        ("deg δf = f+1", c.delta(f)?.degree(), df + 1),
        (
            "deg(f∘_0 g) = f+g−1",
            c.comp(f, g, 0)?.degree(),
            df + dg - 1,
        ),
    ];
    for (clause, found, expected) in checks {
        if found != expected {
            return Ok(fail(
                clause,
                Value::from(found),
                Value::from(expected),
                None,
            ));
        }
    }
    Ok(Outcome::Pass)
}

const WORDS_PER_TRIAL: usize = 3;
const WORD_VERTICES: usize = 4;
const WORD_MAX_DEGREE: usize = 8;

fn cross_backend(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let c = env.ctx;
    let ring = c.operad.ring();
    let roles = ["a", "b", "c"];
    let degrees: Vec<usize> = x.iter().map(G::degree).collect();
    let maps: Vec<MultilinearMap> = match x.iter().map(G::as_endo).collect::<Option<Vec<_>>>() {
        Some(ms) => ms.into_iter().cloned().collect(),
        None => degrees
            .iter()
            .map(|&n| MultilinearMap::random(ring, env.dim, n, &mut env.aux))
            .collect::<Result<_>>()?,
    };
    let mu_map = match c.mu.as_endo() {
        Some(m) => m.clone(),
        None => MultilinearMap::random(ring, env.dim, 2, &mut env.aux)?,
    };
    let dim = mu_map.dim();

    let free = PreOperadContext::new(
        FreeOperad { ring },
        FreeElement::from_tree(ring, PlanarTree::corolla("mu", 2)),
    )?;
    let gens: Vec<FreeElement> = roles
        .iter()
        .zip(&degrees)
        .map(|(r, &n)| FreeElement::from_tree(ring, PlanarTree::corolla(r, n)))
        .collect();
    let endo = PreOperadContext::new(EndoOperad::new(ring, dim)?, mu_map.clone())?;
    let mut assignment = Assignment::new(ring, dim);
    for (r, m) in roles.iter().zip(&maps) {
        assignment.bind(r, m.clone())?;
    }
    assignment.bind("mu", mu_map)?;

    for _ in 0..WORDS_PER_TRIAL {
        let word = Word::random(&mut env.aux, &degrees, WORD_VERTICES, WORD_MAX_DEGREE);
        let symbolic = word.eval(&free, &gens)?;
        let lhs = GradedElement::Endo(symbolic.evaluate_hom(&assignment)?);
        let rhs = GradedElement::Endo(word.eval(&endo, &maps)?);
        if lhs != rhs {
            return Ok(fail(
                &format!("evaluation of {word} commutes with the operations"),
                value(&lhs),
                value(&rhs),
                None,
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn relation_b(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g) = (env.ctx, &x[0], &x[1], &x[2]);
    let (b, _, _) = scope_regions(h.degree(), f.degree())?;
    if b.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    let k = if c.mutation == Mutation::BRelationSignDrop {
        1
    } else {
        sign(s(f) * s(g))
    };
    for p in b.points() {
        let (i, j) = (p[0] as i64, p[1] as i64);
        let lhs = c.comp2(h, f, g, i, j)?;
        let rhs = c.scale(&c.comp2(h, g, f, j, i + s(g))?, k)?;
        expect_eq!(
            "(h∘_i f)∘_j g = (−1)^{|f||g|}(h∘_j g)∘_{i+|g|} f on B",
            lhs,
            rhs,
            Some(p.to_vec())
        );
    }
    Ok(Outcome::Pass)
}

fn relation_a(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g) = (env.ctx, &x[0], &x[1], &x[2]);
    let (_, a, _) = scope_regions(h.degree(), f.degree())?;
    for p in a.points() {
        let (i, j) = (p[0], p[1]);
        let lhs = c.comp2(h, f, g, i as i64, j as i64)?;
        let rhs = c.comp(h, &c.comp(f, g, j - i)?, i)?;
        expect_eq!(
            "(h∘_i f)∘_j g = h∘_i(f∘_{j−i} g) on A",
            lhs,
            rhs,
            Some(p.to_vec())
        );
    }
    Ok(Outcome::Pass)
}

fn relation_g(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g) = (env.ctx, &x[0], &x[1], &x[2]);
    let (_, _, gg) = scope_regions(h.degree(), f.degree())?;
    if gg.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    let k = sign(s(f) * s(g));
    for p in gg.points() {
        let (i, j) = (p[0] as i64, p[1] as i64);
        let lhs = c.comp2(h, f, g, i, j)?;
        let rhs = c.scale(&c.comp2(h, g, f, j - s(f), i)?, k)?;
        expect_eq!(
            "(h∘_i f)∘_j g = (−1)^{|f||g|}(h∘_{j−|f|} g)∘_i f on G",
            lhs,
            rhs,
            Some(p.to_vec())
        );
    }
    Ok(Outcome::Pass)
}

fn unit_laws(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f, g) = (env.ctx, &x[0], &x[1]);
    let unit = c.unit();
    expect_eq!("𝕀∘_0 f = f", c.comp(&unit, f, 0)?, *f);
    for i in 0..f.degree() {
        expect_eq!("f∘_i 𝕀 = f", c.comp(f, &unit, i)?, *f, Some(vec![i]));
        let z = c.comp(f, &c.zero(g.degree()), i)?;
        expect_eq!("f∘_i 0 = 0", z, c.zero(c.deg(&z)), Some(vec![i]));
        let two_g = c.scale(g, 2)?;
        let lhs = c.comp(f, &two_g, i)?;
        let rhs = c.scale(&c.comp(f, g, i)?, 2)?;
        expect_eq!("f∘_i (2g) = 2(f∘_i g)", lhs, rhs, Some(vec![i]));
    }
    Ok(Outcome::Pass)
}

fn scope_partition(_env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (dh, df) = (x[0].degree(), x[1].degree());
    let (b, a, g) = scope_regions(dh, df)?;
    let mut union = BTreeSet::new();
    let mut overlap = false;
    for p in b.points().chain(a.points()).chain(g.points()) {
        overlap |= !union.insert(p.to_vec());
    }
    let full = scope(dh, df);
    if overlap || union != full {
        return Ok(fail(
            "scope = B ⊔ A ⊔ G",
            point_set_value(&full),
            point_set_value(&union),
            None,
        ));
    }
    Ok(Outcome::Pass)
}

fn general_vs_shifted(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, h, f, g, b) = (env.ctx, &x[0], &x[1], &x[2], &x[3]);
    let t = ground_tetrahedron(h.degree(), f.degree(), g.degree());
    if t.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    for p in t.points() {
        let (i, j, k) = (p[0], p[1], p[2]);
        for kind in GammaKind::ALL {
            let lhs = c.aux_gamma(kind, h, f, g, b, i + 1, j + 1, k + 1)?;
            let rhs = c.shifted_gamma(kind, h, f, g, b, i, j, k)?;
            expect_eq!(
                kind.shifted_clause(),
                lhs,
                rhs,
                Some(vec![i + 1, j + 1, k + 1])
            );
        }
    }
    Ok(Outcome::Pass)
}

impl GammaKind {
    fn shifted_clause(self) -> &'static str {
        match self {
            GammaKind::Gamma => "Γ: general form = shifted form on T'",
            GammaKind::GammaPrime => "Γ': general form = shifted form on T'",
            GammaKind::GammaDouble => "Γ'': general form = shifted form on T'",
            GammaKind::GammaTriple => "Γ''': general form = shifted form on T'",
        }
    }
}

fn envelope_partition(_env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let ds: Vec<usize> = x.iter().map(G::degree).collect();
    Ok(partition_check(ds[0], ds[1], ds[2], ds[3]).unwrap_or(Outcome::Pass))
}

fn bracket_laws(env: &mut Env<'_>, x: &[G]) -> Result<Outcome> {
    let (c, f, g) = (env.ctx, &x[0], &x[1]);
    let fg = c.bracket(f, g)?;
    let gf = c.bracket(g, f)?;
    let total = c.lin(c.deg(&fg), &[(1, &fg), (sign(s(f) * s(g)), &gf)])?;
    expect_eq!("[f,g] + (−1)^{|f||g|}[g,f] = 0", total, c.zero(c.deg(&fg)));
    let fm = c.bracket(f, &c.mu)?;
    let rhs = c.scale(&c.delta(f)?, -1)?;
    expect_eq!("[f,μ] = −δf", fm, rhs);
    Ok(Outcome::Pass)
}

const fn law(
    id: &'static str,
    description: &'static str,
    statement: &'static str,
    roles: &'static [&'static str],
    checker: super::Checker,
) -> Law {
    Law {
        id,
        description,
        statement,
        roles,
        force_first_ge3: false,
        endo_only: false,
        mu: MuSource::Random,
        checker,
    }
}

const fn tetra(mut l: Law) -> Law {
    l.force_first_ge3 = true;
    l
}

const HFG: &[&str] = &["h", "f", "g"];
const HFGB: &[&str] = &["h", "f", "g", "b"];

pub(super) static REGISTRY: &[Law] = &[
    law(
        "L01-cup-identities",
        "cup products against the unit and μ",
        "μ∘_0 f = (−1)^f f∪𝕀;  μ∘_1 f = −𝕀∪f;  f∪g = −(−1)^{|f|g}(μ∘_1 g)∘_0 f",
        &["f", "g"],
        cup_identities,
    ),
    law(
        "L02-cup-composition",
        "composing into a cup product",
        "(f∪g)∘_j h = (−1)^{g|h|}(f∘_j h)∪g for j ≤ |f|;  = f∪(g∘_{j−f} h) for f ≤ j ≤ |g|+f",
        &["f", "g", "h"],
        cup_composition,
    ),
    law(
        "L03-right-derivation",
        "right total composition is a derivation of cup",
        "(f∪g)•h = f∪(g•h) + (−1)^{|h|g}(f•h)∪g",
        &["f", "g", "h"],
        right_derivation,
    ),
    law(
        "L04-coboundary-expansion",
        "the coboundary written through cup and total composition",
        "−δf = f∪𝕀 + f•μ + (−1)^{|f|}𝕀∪f",
        &["f"],
        coboundary_expansion,
    ),
    law(
        "L05-bullet-deviation",
        "derivation deviation of δ over total composition",
        "(−1)^{|g|}(δ(f•g) − f•δg − (−1)^{|g|}δf•g) = f∪g − (−1)^{fg} g∪f",
        &["f", "g"],
        bullet_deviation,
    ),
    law(
        "L06-associator",
        "associator through tribraces, and its graded symmetry",
        "(h,f,g) = {h,f,g} + (−1)^{|f||g|}{h,g,f};  (h,f,g) = (−1)^{|f||g|}(h,g,f)",
        HFG,
        associator,
    ),
    law(
        "L07-tribrace-deviation",
        "derivation deviation of δ over tribraces, with • and with brackets",
        "(−1)^{|g|}dev = (h•f)∪g + (−1)^{|h|f}f∪(h•g) − h•(f∪g) = [h,f]∪g + (−1)^{|h|f}f∪[h,g] − [h,f∪g]",
        HFG,
        tribrace_deviation,
    ),
    tetra(law(
        "L08-main-theorem",
        "derivation deviation of δ over tetrabraces",
        "(−1)^{|b|}dev = {h,f,g}∪b − {h,f,g∪b} − (−1)^{|g|}{h,f∪g,b} + (−1)^{|h|f+|g|}f∪{h,g,b}",
        HFGB,
        tetrabrace_deviation,
    )),
    tetra(law(
        "L09-coboundary-defect",
        "defect of δ on a triple composite, pointwise on the ground tetrahedron",
        "δ(((h∘_i f)∘_j g)∘_k b) − ((h∘_i f)∘_j g)∘_k δb − (−1)^{|b|}((h∘_i f)∘_j δg)∘_{k+1} b \
         − (−1)^{|b|+|g|}((h∘_i δf)∘_{j+1} g)∘_{k+1} b = Σ of the four Γ at (i+1,j+1,k+1)",
        HFGB,
        coboundary_defect_pointwise,
    )),
    tetra(law(
        "L10-delta-h-split",
        "the δh composite split into four auxiliary variables",
        "(−1)^{|f|+|g|+|b|}((δh∘_i f)∘_j g)∘_k b = Γ_{ijk} + Γ'_{i+1,j,k} + Γ''_{i+1,j+1,k} + Γ'''_{i+1,j+1,k+1} \
         for 0 ≤ i ≤ j−f ≤ k−f−g ≤ h−2",
        HFGB,
        delta_h_split_pointwise,
    )),
    tetra(law(
        "L11-boundary-values",
        "closed values of the auxiliary variables on the boundary faces",
        "Γ_{0jk}, Γ'_{i,i+|f|,k}, Γ''_{i,j,j+|g|}, Γ'''_{i,j,|h|+f+g} in closed form; truncated = T' ⊔ boundary",
        HFGB,
        boundary_values,
    )),
    Law {
        endo_only: true,
        mu: MuSource::Associative,
        ..law(
            "L12-delta-squared",
            "δ squares to zero for an associative μ",
            "μ•μ = 0 ⇒ δ(δf) = 0; a random μ has μ•μ ≠ 0",
            &["f"],
            delta_squared,
        )
    },
    law(
        "L13-degrees",
        "degrees of the derived operations",
        "deg f∪g = f+g; deg f•g = f+g−1; deg{h,f,g} = h+f+g−2; deg{h,f,g,b} = h+f+g+b−3; deg δf = f+1",
        HFGB,
        degree_bookkeeping,
    ),
    law(
        "L14-cross-backend",
        "evaluation of symbolic words is a morphism",
        "ev(w(a,b,c)) = w(ev a, ev b, ev c) for words in ∘_i, ∪, • with at most four vertices",
        &["a", "b", "c"],
        cross_backend,
    ),
    law(
        "L15-relation-b",
        "composition relation on the triangle B",
        "(h∘_i f)∘_j g = (−1)^{|f||g|}(h∘_j g)∘_{i+|g|} f for 1 ≤ i ≤ |h|, 0 ≤ j ≤ i−1",
        HFG,
        relation_b,
    ),
    law(
        "L16-relation-a",
        "composition relation on the parallelogram A",
        "(h∘_i f)∘_j g = h∘_i(f∘_{j−i} g) for 0 ≤ i ≤ |h|, i ≤ j ≤ i+|f|",
        HFG,
        relation_a,
    ),
    law(
        "L17-relation-g",
        "composition relation on the triangle G",
        "(h∘_i f)∘_j g = (−1)^{|f||g|}(h∘_{j−|f|} g)∘_i f for 0 ≤ i ≤ |h|−1, i+f ≤ j ≤ |f|+|h|",
        HFG,
        relation_g,
    ),
    law(
        "L18-unit-laws",
        "unit and linearity of partial composition",
        "𝕀∘_0 f = f = f∘_i 𝕀; f∘_i 0 = 0; f∘_i(2g) = 2(f∘_i g)",
        &["f", "g"],
        unit_laws,
    ),
    law(
        "L19-scope-partition",
        "the scope splits into B, A and G",
        "{0 ≤ i ≤ |h|, 0 ≤ j ≤ |f|+|h|} = B ⊔ A ⊔ G",
        &["h", "f"],
        scope_partition,
    ),
    tetra(law(
        "L20-gamma-forms-agree",
        "general and shifted forms of the auxiliary variables agree on T'",
        "Γ, Γ', Γ'', Γ''' at (i+1,j+1,k+1) from the general sums = the shifted-index forms",
        HFGB,
        general_vs_shifted,
    )),
    law(
        "L21-envelope-partition",
        "truncated envelope splits into T' and the four boundary faces",
        "T' ⊆ truncated ⊆ envelope; truncated = T' ⊔ boundary; boundary = four disjoint faces",
        HFGB,
        envelope_partition,
    ),
    law(
        "L22-bracket",
        "graded antisymmetry of the bracket and its relation to δ",
        "[f,g] = −(−1)^{|f||g|}[g,f];  [f,μ] = −δf",
        &["f", "g"],
        bracket_laws,
    ),
];
