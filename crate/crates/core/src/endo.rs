//! The endomorphism pre-operad of `A = K^d`.
//!
//! A degree-`n` element is a multilinear map `A^{⊗n} → A` stored as a dense
//! table of `d^(n+1)` coefficients. The layout is row-major with the output
//! index slowest: entry `(o, x_1, …, x_n)` lives at
//! `((o·d + x_1)·d + x_2)·d … + x_n`.
//!
//! Partial composition inserts `g` into input slot `i` of `f` and multiplies by
//! `(-1)^{i|g|}`, where `|g| = deg g − 1` may be `-1`.

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{sign, Arith, Coefficient, CoefficientRing, ModP, Zz};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Entries {
    Mod(Vec<u64>),
    Int(Vec<BigInt>),
}

/// Runs `$body` with `$a` bound to the scalar arithmetic of `$ring`.
macro_rules! with_arith {
    ($ring:expr, $a:ident => $body:expr) => {
        match $ring {
            CoefficientRing::PrimeField(p) => {
                let $a = ModP(p.get());
                $body
            }
            CoefficientRing::Integers => {
                let $a = Zz;
                $body
            }
        }
    };
}

trait Store: Arith {
    fn view(self, e: &Entries) -> &[Self::E];
    fn view_mut(self, e: &mut Entries) -> &mut Vec<Self::E>;
    fn wrap(self, v: Vec<Self::E>) -> Entries;
}

impl Store for ModP {
    fn view(self, e: &Entries) -> &[u64] {
        match e {
            Entries::Mod(v) => v,
            Entries::Int(_) => unreachable!("ring/entries mismatch"),
        }
    }
    fn view_mut(self, e: &mut Entries) -> &mut Vec<u64> {
        match e {
            Entries::Mod(v) => v,
            Entries::Int(_) => unreachable!("ring/entries mismatch"),
        }
    }
    fn wrap(self, v: Vec<u64>) -> Entries {
        Entries::Mod(v)
    }
}

impl Store for Zz {
    fn view(self, e: &Entries) -> &[BigInt] {
        match e {
            Entries::Int(v) => v,
            Entries::Mod(_) => unreachable!("ring/entries mismatch"),
        }
    }
    fn view_mut(self, e: &mut Entries) -> &mut Vec<BigInt> {
        match e {
            Entries::Int(v) => v,
            Entries::Mod(_) => unreachable!("ring/entries mismatch"),
        }
    }
    fn wrap(self, v: Vec<BigInt>) -> Entries {
        Entries::Int(v)
    }
}

/// A multilinear map `A^{⊗n} → A` over a coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearMap {
    ring: CoefficientRing,
    dim: usize,
    degree: usize,
    entries: Entries,
}

fn table_len(dim: usize, degree: usize) -> usize {
    dim.pow(degree as u32 + 1)
}

impl MultilinearMap {
    /// Builds a map from integer entries, reducing them into the ring.
    pub fn make_map<T: Into<BigInt> + Clone>(
        ring: CoefficientRing,
        dim: usize,
        degree: usize,
        entries: &[T],
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadConfig(
                "module dimension must be at least 1".into(),
            ));
        }
        let expected = table_len(dim, degree);
        if entries.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: entries.len(),
            });
        }
        let entries = with_arith!(ring, a => a.wrap(
            entries.iter().map(|v| a.lift_big(&v.clone().into())).collect()
        ));
        Ok(MultilinearMap {
            ring,
            dim,
            degree,
            entries,
        })
    }

    /// Builds a map from ring elements.
    pub fn from_coefficients(
        ring: CoefficientRing,
        dim: usize,
        degree: usize,
        entries: &[Coefficient],
    ) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        let values: Vec<BigInt> = entries.iter().map(|c| c.value().clone()).collect();
        Self::make_map(ring, dim, degree, &values)
    }

    pub fn zero(ring: CoefficientRing, dim: usize, degree: usize) -> Self {
        let len = table_len(dim, degree);
        let entries = with_arith!(ring, a => a.wrap(vec![a.zero(); len]));
        MultilinearMap {
            ring,
            dim,
            degree,
            entries,
        }
    }

    /// The identity map `1_A`, the unit of the pre-operad.
    pub fn unit(ring: CoefficientRing, dim: usize) -> Self {
        let mut m = Self::zero(ring, dim, 1);
        with_arith!(ring, a => {
            let v = a.view_mut(&mut m.entries);
            for k in 0..dim {
                v[k * dim + k] = a.lift_i64(1);
            }
        });
        m
    }

    /// I.i.d. uniform entries.
    pub fn random<R: Rng + ?Sized>(
        ring: CoefficientRing,
        dim: usize,
        degree: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let p = ring.modulus().ok_or(Error::UnsupportedRing(ring))?;
        let len = table_len(dim, degree);
        let v = (0..len).map(|_| rng.random_range(0..p)).collect();
        Ok(MultilinearMap {
            ring,
            dim,
            degree,
            entries: Entries::Mod(v),
        })
    }

    /// Componentwise multiplication `e_a · e_b = δ_ab e_a` on `K^d`.
    pub fn componentwise_product(ring: CoefficientRing, dim: usize) -> Self {
        let mut m = Self::zero(ring, dim, 2);
        with_arith!(ring, a => {
            let v = a.view_mut(&mut m.entries);
            for k in 0..dim {
                v[(k * dim + k) * dim + k] = a.lift_i64(1);
            }
        });
        m
    }

    /// Multiplication of 2×2 matrices on `K^4`, with `E_rs` at index `2r + s`.
    pub fn matrix_algebra_2x2(ring: CoefficientRing) -> Self {
        let d = 4;
        let mut m = Self::zero(ring, d, 2);
        with_arith!(ring, a => {
            let v = a.view_mut(&mut m.entries);
            for r in 0..2 {
                for s in 0..2 {
                    for u in 0..2 {
                        // E_rs · E_su = E_ru
                        let (o, x1, x2) = (2 * r + u, 2 * r + s, 2 * s + u);
                        v[(o * d + x1) * d + x2] = a.lift_i64(1);
                    }
                }
            }
        });
        m
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Shifted degree `|f| = deg f − 1`.
    pub fn shifted_degree(&self) -> i64 {
        self.degree as i64 - 1
    }

    pub fn len(&self) -> usize {
        table_len(self.dim, self.degree)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entry(&self, index: usize) -> Coefficient {
        with_arith!(self.ring, a => self.ring.element(a.to_big(&a.view(&self.entries)[index])))
    }

    pub fn entries(&self) -> Vec<Coefficient> {
        (0..self.len()).map(|k| self.entry(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        with_arith!(self.ring, a => a.view(&self.entries).iter().all(|v| a.is_zero(v)))
    }

    fn compatible(&self, other: &MultilinearMap) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.dim != other.dim {
            return Err(Error::BackendMismatch);
        }
        Ok(())
    }

    /// `f ∘_i g = (−1)^{i|g|} f ∘ (1^{⊗i} ⊗ g ⊗ 1^{⊗(|f|−i)})`.
    pub fn partial_compose(&self, g: &MultilinearMap, i: usize) -> Result<MultilinearMap> {
        self.compatible(g)?;
        if self.degree == 0 || i >= self.degree {
            return Err(Error::IndexOutOfScope {
                index: i,
                degree: self.degree,
            });
        }
        let negate = sign(i as i64 * g.shifted_degree()) < 0;
        let entries = with_arith!(self.ring, a => a.wrap(compose_kernel(
            a,
            self.dim,
            a.view(&self.entries),
            self.degree,
            a.view(&g.entries),
            g.degree,
            i,
            negate,
        )));
        Ok(MultilinearMap {
            ring: self.ring,
            dim: self.dim,
            degree: self.degree + g.degree - 1,
            entries,
        })
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &Coefficient, other: &MultilinearMap) -> Result<()> {
        self.compatible(other)?;
        if c.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, c.ring()));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        with_arith!(self.ring, a => {
            let c = a.lift_big(c.value());
            let src = a.view(&other.entries).to_vec();
            for (acc, x) in a.view_mut(&mut self.entries).iter_mut().zip(&src) {
                a.mul_add(acc, &c, x);
            }
        });
        Ok(())
    }

    pub fn scaled(&self, c: &Coefficient) -> Result<MultilinearMap> {
        let mut out = Self::zero(self.ring, self.dim, self.degree);
        out.add_scaled(c, self)?;
        Ok(out)
    }

    /// Evaluates on `deg f` vectors (degree-0 maps).
    pub fn evaluate(&self, inputs: &[MultilinearMap]) -> Result<MultilinearMap> {
        if inputs.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: inputs.len(),
            });
        }
        for v in inputs {
            self.compatible(v)?;
            if v.degree != 0 {
                return Err(Error::DegreeMismatch {
                    expected: 0,
                    found: v.degree,
                });
            }
        }
        let d = self.dim;
        let entries = with_arith!(self.ring, a => {
            // contract the last input first; it is the fastest-varying index
            let mut cur = a.view(&self.entries).to_vec();
            for v in inputs.iter().rev() {
                let v = a.view(&v.entries);
                cur = cur
                    .chunks(d)
                    .map(|row| {
                        let mut acc = a.zero();
                        for (x, y) in row.iter().zip(v) {
                            a.mul_add(&mut acc, x, y);
                        }
                        acc
                    })
                    .collect();
            }
            a.wrap(cur)
        });
        Ok(MultilinearMap {
            ring: self.ring,
            dim: d,
            degree: 0,
            entries,
        })
    }

    /// Restriction to `x_n = e_0`, lowering the degree by one. Used when
    /// shrinking counterexamples.
    pub fn restrict_last_input(&self) -> Option<MultilinearMap> {
        if self.degree == 0 {
            return None;
        }
        let d = self.dim;
        let entries = with_arith!(self.ring, a => a.wrap(
            a.view(&self.entries).iter().step_by(d).cloned().collect()
        ));
        Some(MultilinearMap {
            ring: self.ring,
            dim: d,
            degree: self.degree - 1,
            entries,
        })
    }

    /// Copy with the given entry set to zero.
    pub fn with_entry_zeroed(&self, index: usize) -> MultilinearMap {
        let mut out = self.clone();
        with_arith!(self.ring, a => a.view_mut(&mut out.entries)[index] = a.zero());
        out
    }

    pub fn nonzero_positions(&self) -> Vec<usize> {
        with_arith!(self.ring, a => a.view(&self.entries)
            .iter()
            .enumerate()
            .filter(|(_, v)| !a.is_zero(v))
            .map(|(k, _)| k)
            .collect())
    }
}

/// Dense contraction of `g` into slot `i` of `f`.
#[allow(clippy::too_many_arguments)]
fn compose_kernel<A: Arith>(
    a: A,
    d: usize,
    f: &[A::E],
    f_deg: usize,
    g: &[A::E],
    g_deg: usize,
    i: usize,
    negate: bool,
) -> Vec<A::E> {
    // result index = ((head · d^{g_deg}) + mid) · d^{tail_len} + tail
    // f index      = ((head · d) + y) · d^{tail_len} + tail
    // g index      = y · d^{g_deg} + mid
    let head = d.pow(1 + i as u32);
    let mid = d.pow(g_deg as u32);
    let tail = d.pow((f_deg - 1 - i) as u32);
    let mut out = Vec::with_capacity(head * mid * tail);
    for h in 0..head {
        for m in 0..mid {
            for t in 0..tail {
                let mut acc = a.zero();
                for y in 0..d {
                    a.mul_add(&mut acc, &f[(h * d + y) * tail + t], &g[y * mid + m]);
                }
                out.push(if negate { a.neg(&acc) } else { acc });
            }
        }
    }
    out
}

/// Linear combination `Σ c_k m_k` of maps of equal ring, dimension and degree.
pub fn linear_combine(coeffs: &[Coefficient], maps: &[MultilinearMap]) -> Result<MultilinearMap> {
    if coeffs.len() != maps.len() {
        return Err(Error::ArityMismatch {
            expected: maps.len(),
            found: coeffs.len(),
        });
    }
    let first = maps.first().ok_or(Error::EmptyCombination)?;
    let mut acc = MultilinearMap::zero(first.ring, first.dim, first.degree);
    for (c, m) in coeffs.iter().zip(maps) {
        acc.add_scaled(c, m)?;
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    ring: CoefficientRing,
    dim: usize,
    degree: usize,
    entries: Vec<serde_json::Value>,
}

impl Serialize for MultilinearMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .entries()
            .iter()
            .map(|c| {
                let v = c.value();
                match i64::try_from(v) {
                    Ok(n) => serde_json::Value::from(n),
                    Err(_) => serde_json::Value::String(v.to_string()),
                }
            })
            .collect();
        MapRepr {
            ring: self.ring,
            dim: self.dim,
            degree: self.degree,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultilinearMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MapRepr::deserialize(d)?;
        let values = repr
            .entries
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .or_else(|| n.as_u64().map(BigInt::from))
                    .ok_or_else(|| D::Error::custom(format!("non-integer entry {n}"))),
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| D::Error::custom(format!("bad entry `{s}`: {e}"))),
                other => Err(D::Error::custom(format!("bad entry {other}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MultilinearMap::make_map(repr.ring, repr.dim, repr.degree, &values)
            .map_err(D::Error::custom)
    }
}
