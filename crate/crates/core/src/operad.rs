//! The abstract pre-operad interface and its two concrete backends.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientRing;
use crate::endo::MultilinearMap;
use crate::error::{Error, Result};
use crate::free::FreeElement;

/// A graded module `{C^n}` with partial compositions `∘_i` and a unit.
pub trait PreOperad: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ring(&self) -> CoefficientRing;
    fn degree(&self, x: &Self::Elem) -> usize;
    fn unit(&self) -> Self::Elem;
    fn zero(&self, degree: usize) -> Self::Elem;
    /// `f ∘_i g`, defined for `0 ≤ i ≤ |f|`.
    fn compose(&self, f: &Self::Elem, g: &Self::Elem, i: usize) -> Result<Self::Elem>;
    /// `acc += c · x`
    fn add_scaled(&self, acc: &mut Self::Elem, c: i64, x: &Self::Elem) -> Result<()>;
    fn is_zero(&self, x: &Self::Elem) -> bool;

    fn scale(&self, x: &Self::Elem, c: i64) -> Result<Self::Elem> {
        let mut out = self.zero(self.degree(x));
        self.add_scaled(&mut out, c, x)?;
        Ok(out)
    }
}

/// `E_A` for `A = K^dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndoOperad {
    pub ring: CoefficientRing,
    pub dim: usize,
}

impl EndoOperad {
    pub fn new(ring: CoefficientRing, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadConfig(
                "module dimension must be at least 1".into(),
            ));
        }
        Ok(EndoOperad { ring, dim })
    }
}

impl PreOperad for EndoOperad {
    type Elem = MultilinearMap;

    fn ring(&self) -> CoefficientRing {
        self.ring
    }

    fn degree(&self, x: &MultilinearMap) -> usize {
        x.degree()
    }

    fn unit(&self) -> MultilinearMap {
        MultilinearMap::unit(self.ring, self.dim)
    }

    fn zero(&self, degree: usize) -> MultilinearMap {
        MultilinearMap::zero(self.ring, self.dim, degree)
    }

    fn compose(&self, f: &MultilinearMap, g: &MultilinearMap, i: usize) -> Result<MultilinearMap> {
        f.partial_compose(g, i)
    }

    fn add_scaled(&self, acc: &mut MultilinearMap, c: i64, x: &MultilinearMap) -> Result<()> {
        acc.add_scaled(&self.ring.element(c), x)
    }

    fn is_zero(&self, x: &MultilinearMap) -> bool {
        x.is_zero()
    }
}

/// The free pre-operad; generators are supplied as elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeOperad {
    pub ring: CoefficientRing,
}

impl PreOperad for FreeOperad {
    type Elem = FreeElement;

    fn ring(&self) -> CoefficientRing {
        self.ring
    }

    fn degree(&self, x: &FreeElement) -> usize {
        x.degree()
    }

    fn unit(&self) -> FreeElement {
        FreeElement::unit(self.ring)
    }

    fn zero(&self, degree: usize) -> FreeElement {
        FreeElement::zero(self.ring, degree)
    }

    fn compose(&self, f: &FreeElement, g: &FreeElement, i: usize) -> Result<FreeElement> {
        f.partial_compose(g, i)
    }

    fn add_scaled(&self, acc: &mut FreeElement, c: i64, x: &FreeElement) -> Result<()> {
        acc.add_scaled(&BigInt::from(c), x)
    }

    fn is_zero(&self, x: &FreeElement) -> bool {
        x.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Endo,
    Free,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Endo => "endo",
            BackendKind::Free => "free",
        })
    }
}

impl std::str::FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "endo" => Ok(BackendKind::Endo),
            "free" => Ok(BackendKind::Free),
            other => Err(Error::BadConfig(format!("unknown backend `{other}`"))),
        }
    }
}

/// A homogeneous element of either backend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", content = "value", rename_all = "lowercase")]
pub enum GradedElement {
    Endo(MultilinearMap),
    Free(FreeElement),
}

impl GradedElement {
    pub fn degree(&self) -> usize {
        match self {
            GradedElement::Endo(m) => m.degree(),
            GradedElement::Free(x) => x.degree(),
        }
    }

    /// Shifted degree `|x| = deg x − 1`.
    pub fn shifted_degree(&self) -> i64 {
        self.degree() as i64 - 1
    }

    pub fn backend(&self) -> BackendKind {
        match self {
            GradedElement::Endo(_) => BackendKind::Endo,
            GradedElement::Free(_) => BackendKind::Free,
        }
    }

    pub fn as_endo(&self) -> Option<&MultilinearMap> {
        match self {
            GradedElement::Endo(m) => Some(m),
            GradedElement::Free(_) => None,
        }
    }

    pub fn as_free(&self) -> Option<&FreeElement> {
        match self {
            GradedElement::Free(x) => Some(x),
            GradedElement::Endo(_) => None,
        }
    }

    /// The `payload` part of script output: the entry table for maps, a list
    /// of `{coeff, tree}` terms for free elements.
    pub fn payload(&self) -> serde_json::Value {
        match self {
            GradedElement::Endo(m) => serde_json::Value::Array(
                m.entries()
                    .iter()
                    .map(|c| match i64::try_from(c.value()) {
                        Ok(n) => serde_json::Value::from(n),
                        Err(_) => serde_json::Value::String(c.value().to_string()),
                    })
                    .collect(),
            ),
            GradedElement::Free(x) => serde_json::Value::Array(
                x.terms()
                    .map(
                        |(t, c)| serde_json::json!({"coeff": c.to_string(), "tree": t.to_string()}),
                    )
                    .collect(),
            ),
        }
    }
}

/// Runtime choice of backend, for the law engine and the script evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Endo(EndoOperad),
    Free(FreeOperad),
}

impl Backend {
    pub fn kind(&self) -> BackendKind {
        match self {
            Backend::Endo(_) => BackendKind::Endo,
            Backend::Free(_) => BackendKind::Free,
        }
    }
}

impl PreOperad for Backend {
    type Elem = GradedElement;

    fn ring(&self) -> CoefficientRing {
        match self {
            Backend::Endo(e) => e.ring,
            Backend::Free(f) => f.ring,
        }
    }

    fn degree(&self, x: &GradedElement) -> usize {
        x.degree()
    }

    fn unit(&self) -> GradedElement {
        match self {
            Backend::Endo(e) => GradedElement::Endo(e.unit()),
            Backend::Free(f) => GradedElement::Free(f.unit()),
        }
    }

    fn zero(&self, degree: usize) -> GradedElement {
        match self {
            Backend::Endo(e) => GradedElement::Endo(e.zero(degree)),
            Backend::Free(f) => GradedElement::Free(f.zero(degree)),
        }
    }

    fn compose(&self, f: &GradedElement, g: &GradedElement, i: usize) -> Result<GradedElement> {
        match (self, f, g) {
            (Backend::Endo(op), GradedElement::Endo(a), GradedElement::Endo(b)) => {
                op.compose(a, b, i).map(GradedElement::Endo)
            }
            (Backend::Free(op), GradedElement::Free(a), GradedElement::Free(b)) => {
                op.compose(a, b, i).map(GradedElement::Free)
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    fn add_scaled(&self, acc: &mut GradedElement, c: i64, x: &GradedElement) -> Result<()> {
        match (self, acc, x) {
            (Backend::Endo(op), GradedElement::Endo(a), GradedElement::Endo(b)) => {
                op.add_scaled(a, c, b)
            }
            (Backend::Free(op), GradedElement::Free(a), GradedElement::Free(b)) => {
                op.add_scaled(a, c, b)
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    fn is_zero(&self, x: &GradedElement) -> bool {
        match x {
            GradedElement::Endo(m) => m.is_zero(),
            GradedElement::Free(f) => f.is_zero(),
        }
    }
}
