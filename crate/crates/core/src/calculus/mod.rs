//! Derived operations over any pre-operad with a fixed `μ ∈ C²`.

pub mod domains;
pub mod gamma;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::sign;
use crate::error::{Error, Result};
use crate::operad::PreOperad;

pub use domains::{
    boundary_faces, envelope_domains, ground_tetrahedron, scope, scope_regions, DomainKind,
    EnvelopeDomains, LatticeDomain,
};
pub use gamma::GammaKind;

/// Deliberate defects used to check that the law suite notices sign errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    #[default]
    None,
    /// `f ∪ g` computed with the opposite overall sign.
    CupSignFlip,
    /// The B-case relation checked without its Koszul sign.
    BRelationSignDrop,
    /// The `j` range of the tribrace triangle starts one step late.
    GRangeOffByOne,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::CupSignFlip,
        Mutation::BRelationSignDrop,
        Mutation::GRangeOffByOne,
    ];
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mutation::None => "none",
            Mutation::CupSignFlip => "cup-sign-flip",
            Mutation::BRelationSignDrop => "b-relation-sign-drop",
            Mutation::GRangeOffByOne => "g-range-off-by-one",
        })
    }
}

impl std::str::FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Mutation::None),
            "cup-sign-flip" => Ok(Mutation::CupSignFlip),
            "b-relation-sign-drop" => Ok(Mutation::BRelationSignDrop),
            "g-range-off-by-one" => Ok(Mutation::GRangeOffByOne),
            other => Err(Error::BadConfig(format!("unknown mutation `{other}`"))),
        }
    }
}

/// A pre-operad together with its multiplication `μ`.
#[derive(Debug, Clone)]
pub struct PreOperadContext<O: PreOperad> {
    pub operad: O,
    pub mu: O::Elem,
    pub mutation: Mutation,
}

fn need_positive(degree: usize, reason: &'static str) -> Result<()> {
    if degree == 0 {
        Err(Error::InvalidDegree { degree, reason })
    } else {
        Ok(())
    }
}

impl<O: PreOperad> PreOperadContext<O> {
    pub fn new(operad: O, mu: O::Elem) -> Result<Self> {
        let d = operad.degree(&mu);
        if d != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: d,
            });
        }
        Ok(PreOperadContext {
            operad,
            mu,
            mutation: Mutation::None,
        })
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn deg(&self, x: &O::Elem) -> usize {
        self.operad.degree(x)
    }

    /// `|x| = deg x − 1`
    pub fn sdeg(&self, x: &O::Elem) -> i64 {
        self.operad.degree(x) as i64 - 1
    }

    pub fn unit(&self) -> O::Elem {
        self.operad.unit()
    }

    pub fn zero(&self, degree: usize) -> O::Elem {
        self.operad.zero(degree)
    }

    pub fn is_zero(&self, x: &O::Elem) -> bool {
        self.operad.is_zero(x)
    }

    pub fn comp(&self, f: &O::Elem, g: &O::Elem, i: usize) -> Result<O::Elem> {
        self.operad.compose(f, g, i)
    }

    /// `((x ∘_i f) ∘_j g)` with signed indices; negative indices are out of scope.
    pub fn comp2(&self, x: &O::Elem, f: &O::Elem, g: &O::Elem, i: i64, j: i64) -> Result<O::Elem> {
        let xf = self.comp(x, f, idx(i, self.deg(x))?)?;
        let d = self.deg(&xf);
        self.comp(&xf, g, idx(j, d)?)
    }

    /// `(((x ∘_i f) ∘_j g) ∘_k b)` with signed indices.
    #[allow(clippy::too_many_arguments)]
    pub fn comp3(
        &self,
        x: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        i: i64,
        j: i64,
        k: i64,
    ) -> Result<O::Elem> {
        let xfg = self.comp2(x, f, g, i, j)?;
        let d = self.deg(&xfg);
        self.comp(&xfg, b, idx(k, d)?)
    }

    /// `Σ c_t x_t`; all terms must have the given degree.
    pub fn lin(&self, degree: usize, terms: &[(i64, &O::Elem)]) -> Result<O::Elem> {
        let mut acc = self.zero(degree);
        for (c, x) in terms {
            let found = self.deg(x);
            if found != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found,
                });
            }
            self.operad.add_scaled(&mut acc, *c, x)?;
        }
        Ok(acc)
    }

    pub fn sub(&self, a: &O::Elem, b: &O::Elem) -> Result<O::Elem> {
        self.lin(self.deg(a), &[(1, a), (-1, b)])
    }

    pub fn scale(&self, x: &O::Elem, c: i64) -> Result<O::Elem> {
        self.operad.scale(x, c)
    }

    /// `f ∪ g = (−1)^f (μ ∘_0 f) ∘_f g`
    pub fn cup(&self, f: &O::Elem, g: &O::Elem) -> Result<O::Elem> {
        let df = self.deg(f);
        let inner = self.comp(&self.mu, f, 0)?;
        let outer = self.comp(&inner, g, df)?;
        let mut s = sign(df as i64);
        if self.mutation == Mutation::CupSignFlip {
            s = -s;
        }
        self.scale(&outer, s)
    }

    /// `f • g = Σ_{i=0}^{|f|} f ∘_i g`
    pub fn bullet(&self, f: &O::Elem, g: &O::Elem) -> Result<O::Elem> {
        let df = self.deg(f);
        need_positive(df, "total composition needs deg f ≥ 1")?;
        let mut acc = self.zero(df + self.deg(g) - 1);
        for i in 0..df {
            let t = self.comp(f, g, i)?;
            self.operad.add_scaled(&mut acc, 1, &t)?;
        }
        Ok(acc)
    }

    /// `[f, g] = f • g − (−1)^{|f||g|} g • f`
    pub fn bracket(&self, f: &O::Elem, g: &O::Elem) -> Result<O::Elem> {
        need_positive(self.deg(g), "bracket needs deg g ≥ 1")?;
        let fg = self.bullet(f, g)?;
        let gf = self.bullet(g, f)?;
        let s = sign(self.sdeg(f) * self.sdeg(g));
        self.lin(self.deg(&fg), &[(1, &fg), (-s, &gf)])
    }

    /// `δf = (−1)^{|f|} μ • f − f • μ`
    pub fn delta(&self, f: &O::Elem) -> Result<O::Elem> {
        need_positive(self.deg(f), "the coboundary needs deg f ≥ 1")?;
        let mf = self.bullet(&self.mu, f)?;
        let fm = self.bullet(f, &self.mu)?;
        self.lin(self.deg(f) + 1, &[(sign(self.sdeg(f)), &mf), (-1, &fm)])
    }

    /// `(h, f, g) = (h • f) • g − h • (f • g)`
    pub fn associator(&self, h: &O::Elem, f: &O::Elem, g: &O::Elem) -> Result<O::Elem> {
        let left = self.bullet(&self.bullet(h, f)?, g)?;
        let right = self.bullet(h, &self.bullet(f, g)?)?;
        self.sub(&left, &right)
    }

    fn brace_degree(&self, parts: &[&O::Elem]) -> Result<usize> {
        for p in parts {
            need_positive(self.deg(p), "brace arguments need degree ≥ 1")?;
        }
        let sum: usize = parts.iter().map(|p| self.deg(p)).sum();
        Ok(sum + 1 - parts.len())
    }

    /// `{h, f, g} = Σ_{(i,j) ∈ G} (h ∘_i f) ∘_j g`
    pub fn tribraces(&self, h: &O::Elem, f: &O::Elem, g: &O::Elem) -> Result<O::Elem> {
        let degree = self.brace_degree(&[h, f, g])?;
        let (hs, df) = (self.sdeg(h), self.deg(f) as i64);
        let fs = df - 1;
        let shift = i64::from(self.mutation == Mutation::GRangeOffByOne);
        let mut acc = self.zero(degree);
        for i in 0..hs {
            for j in (i + df + shift)..=(fs + hs) {
                let t = self.comp2(h, f, g, i, j)?;
                self.operad.add_scaled(&mut acc, 1, &t)?;
            }
        }
        Ok(acc)
    }

    /// `{h, f, g, b} = Σ_{(i,j,k) ∈ T} ((h ∘_i f) ∘_j g) ∘_k b`
    pub fn tetrabraces(
        &self,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
    ) -> Result<O::Elem> {
        let degree = self.brace_degree(&[h, f, g, b])?;
        let mut acc = self.zero(degree);
        for p in ground_tetrahedron(self.deg(h), self.deg(f), self.deg(g)).points() {
            let t = self.comp3(h, f, g, b, p[0] as i64, p[1] as i64, p[2] as i64)?;
            self.operad.add_scaled(&mut acc, 1, &t)?;
        }
        Ok(acc)
    }

    /// `δ(f • g) − f • δg − (−1)^{|g|} δf • g`
    pub fn dev_bullet(&self, f: &O::Elem, g: &O::Elem) -> Result<O::Elem> {
        need_positive(self.deg(g), "deviation needs deg g ≥ 1")?;
        let a = self.delta(&self.bullet(f, g)?)?;
        let b = self.bullet(f, &self.delta(g)?)?;
        let c = self.bullet(&self.delta(f)?, g)?;
        self.lin(
            self.deg(&a),
            &[(1, &a), (-1, &b), (-sign(self.sdeg(g)), &c)],
        )
    }

    /// `δ{h,f,g} − {h,f,δg} − (−1)^{|g|}{h,δf,g} − (−1)^{|g|+|f|}{δh,f,g}`
    pub fn dev_tribraces(&self, h: &O::Elem, f: &O::Elem, g: &O::Elem) -> Result<O::Elem> {
        let (fs, gs) = (self.sdeg(f), self.sdeg(g));
        let a = self.delta(&self.tribraces(h, f, g)?)?;
        let b = self.tribraces(h, f, &self.delta(g)?)?;
        let c = self.tribraces(h, &self.delta(f)?, g)?;
        let d = self.tribraces(&self.delta(h)?, f, g)?;
        self.lin(
            self.deg(&a),
            &[(1, &a), (-1, &b), (-sign(gs), &c), (-sign(gs + fs), &d)],
        )
    }

    /// `δ{h,f,g,b} − {h,f,g,δb} − (−1)^{|b|}{h,f,δg,b}
    ///  − (−1)^{|b|+|g|}{h,δf,g,b} − (−1)^{|b|+|g|+|f|}{δh,f,g,b}`
    pub fn dev_tetrabraces(
        &self,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
    ) -> Result<O::Elem> {
        let (fs, gs, bs) = (self.sdeg(f), self.sdeg(g), self.sdeg(b));
        let t0 = self.delta(&self.tetrabraces(h, f, g, b)?)?;
        let t1 = self.tetrabraces(h, f, g, &self.delta(b)?)?;
        let t2 = self.tetrabraces(h, f, &self.delta(g)?, b)?;
        let t3 = self.tetrabraces(h, &self.delta(f)?, g, b)?;
        let t4 = self.tetrabraces(&self.delta(h)?, f, g, b)?;
        self.lin(
            self.deg(&t0),
            &[
                (1, &t0),
                (-1, &t1),
                (-sign(bs), &t2),
                (-sign(bs + gs), &t3),
                (-sign(bs + gs + fs), &t4),
            ],
        )
    }
}

/// A signed composition index, checked against `0 ≤ i < deg`.
pub(crate) fn idx(i: i64, degree: usize) -> Result<usize> {
    if i < 0 || i >= degree as i64 {
        Err(Error::IndexOutOfScope {
            index: i.max(-1) as usize,
            degree,
        })
    } else {
        Ok(i as usize)
    }
}
