//! The free pre-operad on a graded signature.
//!
//! Basis elements are planar trees whose vertices are labelled by generators
//! (a vertex has exactly `deg` children) and whose leaves are the inputs. The
//! bare leaf is the unit `𝕀`; it never appears as a vertex, so composing with
//! the unit erases it.
//!
//! Grafting alone gives the free non-symmetric operad with unsigned
//! relations. The signed partial composition is
//! `s ∘_i t = (−1)^{i|t|} graft(s, i, t)`; this twist turns the unsigned
//! relations into the signed three-case relations, so every basis tree is the
//! normal form of the composition word that builds it by plain grafting.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::{sign, Coefficient, CoefficientRing};
use crate::endo::MultilinearMap;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlanarTree {
    Leaf,
    Node {
        label: String,
        children: Vec<PlanarTree>,
    },
}

impl PlanarTree {
    pub fn corolla(label: &str, arity: usize) -> Self {
        PlanarTree::Node {
            label: label.to_string(),
            children: vec![PlanarTree::Leaf; arity],
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node { children, .. } => children.iter().map(PlanarTree::leaves).sum(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node { children, .. } => {
                1 + children.iter().map(PlanarTree::vertices).sum::<usize>()
            }
        }
    }

    /// Replaces leaf `i` (0-based, left to right) by `other`.
    pub fn graft(&self, i: usize, other: &PlanarTree) -> PlanarTree {
        fn go(t: &PlanarTree, i: &mut usize, other: &PlanarTree) -> PlanarTree {
            match t {
                PlanarTree::Leaf => {
                    let hit = *i == 0;
                    *i = i.wrapping_sub(1);
                    if hit {
                        other.clone()
                    } else {
                        PlanarTree::Leaf
                    }
                }
                PlanarTree::Node { label, children } => PlanarTree::Node {
                    label: label.clone(),
                    children: children.iter().map(|c| go(c, i, other)).collect(),
                },
            }
        }
        let mut i = i;
        go(self, &mut i, other)
    }

    /// Parses the S-expression form, e.g. `(mu (f _ _) _)`.
    pub fn parse(text: &str) -> Result<PlanarTree> {
        let tokens: Vec<String> = text
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let mut pos = 0;
        let tree = parse_tree(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::BadTree(format!("trailing input in `{text}`")));
        }
        Ok(tree)
    }
}

fn parse_tree(tokens: &[String], pos: &mut usize) -> Result<PlanarTree> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::BadTree("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "_" => Ok(PlanarTree::Leaf),
        "(" => {
            let label = tokens
                .get(*pos)
                .filter(|t| !matches!(t.as_str(), "(" | ")" | "_"))
                .ok_or_else(|| Error::BadTree("expected a generator name".into()))?
                .clone();
            *pos += 1;
            let mut children = Vec::new();
            while tokens.get(*pos).map(String::as_str) != Some(")") {
                if *pos >= tokens.len() {
                    return Err(Error::BadTree("unclosed parenthesis".into()));
                }
                children.push(parse_tree(tokens, pos)?);
            }
            *pos += 1;
            if children.is_empty() {
                return Err(Error::BadTree(format!("generator `{label}` has no inputs")));
            }
            Ok(PlanarTree::Node { label, children })
        }
        other => Err(Error::BadTree(format!("unexpected token `{other}`"))),
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => f.write_str("_"),
            PlanarTree::Node { label, children } => {
                write!(f, "({label}")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Generator names with their degrees.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    generators: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new<S: AsRef<str>>(generators: &[(S, usize)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, deg) in generators {
            let name = name.as_ref();
            if *deg == 0 {
                return Err(Error::InvalidDegree {
                    degree: 0,
                    reason: "free generators need degree at least 1",
                });
            }
            if map.insert(name.to_string(), *deg).is_some() {
                return Err(Error::DuplicateGenerator(name.to_string()));
            }
        }
        Ok(Signature { generators: map })
    }

    pub fn degree_of(&self, name: &str) -> Option<usize> {
        self.generators.get(name).copied()
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, usize)> {
        self.generators.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// A finite linear combination of trees with a common number of leaves,
/// kept in canonical form: sorted by tree, zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeElement {
    ring: CoefficientRing,
    degree: usize,
    terms: BTreeMap<PlanarTree, BigInt>,
}

impl FreeElement {
    pub fn zero(ring: CoefficientRing, degree: usize) -> Self {
        FreeElement {
            ring,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(ring: CoefficientRing) -> Self {
        Self::from_tree(ring, PlanarTree::Leaf)
    }

    pub fn from_tree(ring: CoefficientRing, tree: PlanarTree) -> Self {
        let degree = tree.leaves();
        let mut terms = BTreeMap::new();
        terms.insert(tree, BigInt::from(1));
        FreeElement {
            ring,
            degree,
            terms,
        }
    }

    pub fn generator(ring: CoefficientRing, sig: &Signature, name: &str) -> Result<Self> {
        let deg = sig
            .degree_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Self::from_tree(ring, PlanarTree::corolla(name, deg)))
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, tree: &PlanarTree) -> Coefficient {
        self.ring
            .element(self.terms.get(tree).cloned().unwrap_or_default())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarTree, Coefficient)> {
        self.terms
            .iter()
            .map(|(t, c)| (t, self.ring.element(c.clone())))
    }

    /// Largest vertex count among the terms.
    pub fn max_vertices(&self) -> usize {
        self.terms
            .keys()
            .map(PlanarTree::vertices)
            .max()
            .unwrap_or(0)
    }

    fn accumulate(&mut self, tree: PlanarTree, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(tree) {
            Entry::Occupied(mut e) => {
                let v = self.ring.reduce(&(e.get() + c));
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                let v = self.ring.reduce(&c);
                if !v.is_zero() {
                    e.insert(v);
                }
            }
        }
    }

    fn check(&self, other: &FreeElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    /// Bilinear extension of signed grafting.
    pub fn partial_compose(&self, g: &FreeElement, i: usize) -> Result<FreeElement> {
        self.check(g)?;
        if i >= self.degree {
            return Err(Error::IndexOutOfScope {
                index: i,
                degree: self.degree,
            });
        }
        let s = sign(i as i64 * (g.degree as i64 - 1));
        let mut out = FreeElement::zero(self.ring, self.degree + g.degree - 1);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &g.terms {
                out.accumulate(t1.graft(i, t2), c1 * c2 * s);
            }
        }
        Ok(out)
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &BigInt, other: &FreeElement) -> Result<()> {
        self.check(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        for (t, v) in &other.terms {
            self.accumulate(t.clone(), c * v);
        }
        Ok(())
    }

    /// Image under the pre-operad morphism determined by `assignment`.
    ///
    /// Each vertex is replaced by its assigned map and children are plugged
    /// in from the rightmost slot down with the signed endo composition; the
    /// sign `(−1)^{t|c|}` of each step is cancelled since basis trees stand
    /// for plain grafting.
    pub fn evaluate_hom(&self, assignment: &Assignment) -> Result<MultilinearMap> {
        if self.ring != assignment.ring {
            return Err(Error::RingMismatch(self.ring, assignment.ring));
        }
        let mut acc = MultilinearMap::zero(assignment.ring, assignment.dim, self.degree);
        for (tree, c) in &self.terms {
            let value = assignment.eval_tree(tree)?;
            acc.add_scaled(&self.ring.element(c.clone()), &value)?;
        }
        Ok(acc)
    }
}

/// Linear combination of free elements of one degree.
pub fn free_linear_combine(
    coeffs: &[Coefficient],
    elements: &[FreeElement],
) -> Result<FreeElement> {
    if coeffs.len() != elements.len() {
        return Err(Error::ArityMismatch {
            expected: elements.len(),
            found: coeffs.len(),
        });
    }
    let first = elements.first().ok_or(Error::EmptyCombination)?;
    let mut acc = FreeElement::zero(first.ring, first.degree);
    for (c, e) in coeffs.iter().zip(elements) {
        if c.ring() != acc.ring {
            return Err(Error::RingMismatch(acc.ring, c.ring()));
        }
        acc.add_scaled(c.value(), e)?;
    }
    Ok(acc)
}

/// Generator name → multilinear map, over a fixed ring and module dimension.
#[derive(Debug, Clone)]
pub struct Assignment {
    ring: CoefficientRing,
    dim: usize,
    maps: BTreeMap<String, MultilinearMap>,
}

impl Assignment {
    pub fn new(ring: CoefficientRing, dim: usize) -> Self {
        Assignment {
            ring,
            dim,
            maps: BTreeMap::new(),
        }
    }

    pub fn bind(&mut self, name: &str, map: MultilinearMap) -> Result<()> {
        if map.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, map.ring()));
        }
        if map.dim() != self.dim {
            return Err(Error::BackendMismatch);
        }
        self.maps.insert(name.to_string(), map);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&MultilinearMap> {
        self.maps.get(name)
    }

    fn eval_tree(&self, tree: &PlanarTree) -> Result<MultilinearMap> {
        match tree {
            PlanarTree::Leaf => Ok(MultilinearMap::unit(self.ring, self.dim)),
            PlanarTree::Node { label, children } => {
                let root = self
                    .maps
                    .get(label)
                    .ok_or_else(|| Error::MissingAssignment(label.clone()))?;
                if root.degree() != children.len() {
                    return Err(Error::DegreeMismatch {
                        expected: children.len(),
                        found: root.degree(),
                    });
                }
                let mut acc = root.clone();
                let mut s = 1;
                for (t, child) in children.iter().enumerate().rev() {
                    if matches!(child, PlanarTree::Leaf) {
                        continue;
                    }
                    acc = acc.partial_compose(&self.eval_tree(child)?, t)?;
                    s *= sign(t as i64 * (child.leaves() as i64 - 1));
                }
                if s < 0 {
                    acc = acc.scaled(&self.ring.element(-1))?;
                }
                Ok(acc)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    tree: String,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    ring: CoefficientRing,
    degree: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for FreeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            ring: self.ring,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| TermRepr {
                    coeff: c.to_string(),
                    tree: t.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(d)?;
        let mut out = FreeElement::zero(repr.ring, repr.degree);
        for term in repr.terms {
            let tree = PlanarTree::parse(&term.tree).map_err(D::Error::custom)?;
            if tree.leaves() != repr.degree {
                return Err(D::Error::custom(format!(
                    "tree `{tree}` has the wrong degree"
                )));
            }
            let c: BigInt = term.coeff.parse().map_err(D::Error::custom)?;
            out.accumulate(tree, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> CoefficientRing {
        CoefficientRing::prime_field(97).unwrap()
    }

    fn sig() -> Signature {
        Signature::new(&[("mu", 2), ("h", 3), ("f", 2), ("g", 1)]).unwrap()
    }

    fn gen(name: &str) -> FreeElement {
        FreeElement::generator(ring(), &sig(), name).unwrap()
    }

    #[test]
    fn generators() {
        let mu = gen("mu");
        assert_eq!(mu.degree(), 2);
        assert_eq!(mu.coefficient(&PlanarTree::corolla("mu", 2)), ring().one());
        assert_eq!(gen("h").degree(), 3);
        assert_eq!(
            FreeElement::generator(ring(), &sig(), "zz"),
            Err(Error::UnknownGenerator("zz".into()))
        );
        assert!(Signature::new(&[("a", 1), ("a", 2)]).is_err());
        assert!(Signature::new(&[("a", 0)]).is_err());
    }

    #[test]
    fn unit_is_erased() {
        let u = FreeElement::unit(ring());
        let f = gen("f");
        for i in 0..2 {
            assert_eq!(f.partial_compose(&u, i).unwrap(), f);
        }
        assert_eq!(u.partial_compose(&f, 0).unwrap(), f);
    }

    #[test]
    fn b_relation_instance() {
        // (h ∘_0 f) ∘_{deg f} g = (−1)^{|f||g|} (h ∘_1 g) ∘_0 f
        let (h, f, g) = (gen("h"), gen("f"), gen("g"));
        let lhs = h
            .partial_compose(&f, 0)
            .unwrap()
            .partial_compose(&g, 2)
            .unwrap();
        let rhs = h
            .partial_compose(&g, 1)
            .unwrap()
            .partial_compose(&f, 0)
            .unwrap();
        // |f||g| = 1·0 = 0
        assert_eq!(lhs, rhs);
        let h2 = gen("h");
        let lhs = h2
            .partial_compose(&f, 0)
            .unwrap()
            .partial_compose(&f, 2)
            .unwrap();
        let rhs = h2
            .partial_compose(&f, 1)
            .unwrap()
            .partial_compose(&f, 0)
            .unwrap();
        // |f||f| = 1, so the two words differ by a sign
        let mut sum = lhs.clone();
        sum.add_scaled(&BigInt::from(1), &rhs).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn a_relation_instance() {
        let (h, f, g) = (gen("h"), gen("f"), gen("g"));
        let lhs = h
            .partial_compose(&f, 0)
            .unwrap()
            .partial_compose(&g, 0)
            .unwrap();
        let rhs = h
            .partial_compose(&f.partial_compose(&g, 0).unwrap(), 0)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_combination_rules() {
        let r = ring();
        let t = gen("f");
        assert!(
            free_linear_combine(&[r.one(), r.element(-1)], &[t.clone(), t.clone()])
                .unwrap()
                .is_zero()
        );
        let mut two = free_linear_combine(&[r.element(2)], std::slice::from_ref(&t)).unwrap();
        two.add_scaled(&BigInt::from(3), &t).unwrap();
        assert_eq!(two.coefficient(&PlanarTree::corolla("f", 2)), r.element(5));
        assert!(matches!(
            free_linear_combine(&[r.one(), r.one()], &[t, gen("h")]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn sexpr_round_trip() {
        let t = PlanarTree::parse("(mu (f _ _) _)").unwrap();
        assert_eq!(t.leaves(), 3);
        assert_eq!(t.vertices(), 2);
        assert_eq!(t.to_string(), "(mu (f _ _) _)");
        assert_eq!(PlanarTree::parse("_").unwrap(), PlanarTree::Leaf);
        assert!(PlanarTree::parse("(mu _").is_err());
        assert!(PlanarTree::parse("(mu)").is_err());
        assert!(PlanarTree::parse("(mu _) _").is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = gen("h").partial_compose(&gen("f"), 1).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        let back: FreeElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn evaluation_of_single_vertex_and_zero() {
        let r = ring();
        let mut a = Assignment::new(r, 2);
        let m = MultilinearMap::make_map(r, 2, 2, &[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        a.bind("f", m.clone()).unwrap();
        assert_eq!(gen("f").evaluate_hom(&a).unwrap(), m);
        assert!(FreeElement::zero(r, 3).evaluate_hom(&a).unwrap().is_zero());
        assert_eq!(
            gen("g").evaluate_hom(&a),
            Err(Error::MissingAssignment("g".into()))
        );
    }
}
