//! The auxiliary variables `Γ, Γ', Γ'', Γ'''` attached to a quadruple
//! `(h, f, g, b)` and a point of the truncated envelope.
//!
//! [`PreOperadContext::aux_gamma`] is the definition. The shifted form on
//! `T'` and the closed boundary values are separate functions so the law
//! suite can compare them against it.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{envelope_domains, PreOperadContext};
use crate::coeff::sign;
use crate::error::{Error, Result};
use crate::operad::PreOperad;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum GammaKind {
    Gamma,
    GammaPrime,
    GammaDouble,
    GammaTriple,
}

impl GammaKind {
    pub const ALL: [GammaKind; 4] = [
        GammaKind::Gamma,
        GammaKind::GammaPrime,
        GammaKind::GammaDouble,
        GammaKind::GammaTriple,
    ];

    fn name(self) -> &'static str {
        match self {
            GammaKind::Gamma => "Γ",
            GammaKind::GammaPrime => "Γ'",
            GammaKind::GammaDouble => "Γ''",
            GammaKind::GammaTriple => "Γ'''",
        }
    }
}

impl fmt::Display for GammaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Degree data shared by all the formulas.
struct Shape {
    hs: i64,
    f: i64,
    fs: i64,
    g: i64,
    gs: i64,
    b: i64,
    bs: i64,
    /// `|f| + |g| + |b|`
    big_f: i64,
    /// `|h| + |f| + |g| + |b|`
    big_h: i64,
}

impl<O: PreOperad> PreOperadContext<O> {
    fn shape(&self, h: &O::Elem, f: &O::Elem, g: &O::Elem, b: &O::Elem) -> Shape {
        let (hs, fs, gs, bs) = (self.sdeg(h), self.sdeg(f), self.sdeg(g), self.sdeg(b));
        Shape {
            hs,
            f: fs + 1,
            fs,
            g: gs + 1,
            gs,
            b: bs + 1,
            bs,
            big_f: fs + gs + bs,
            big_h: hs + fs + gs + bs,
        }
    }

    fn quad_degree(&self, h: &O::Elem, f: &O::Elem, g: &O::Elem, b: &O::Elem) -> usize {
        self.deg(h) + self.deg(f) + self.deg(g) + self.deg(b) - 2
    }

    /// `Σ_{s=lo}^{hi} (((h ∘_s μ) ∘_i f) ∘_j g) ∘_k b`
    #[allow(clippy::too_many_arguments)]
    fn mu_sum(
        &self,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        (lo, hi): (i64, i64),
        (i, j, k): (i64, i64, i64),
        acc: &mut O::Elem,
        c: i64,
    ) -> Result<()> {
        for s in lo..=hi {
            let hm = self.comp(h, &self.mu, super::idx(s, self.deg(h))?)?;
            let t = self.comp3(&hm, f, g, b, i, j, k)?;
            self.operad.add_scaled(acc, c, &t)?;
        }
        Ok(())
    }

    /// The auxiliary variable of the given kind at `(i, j, k)`, for any point
    /// of the truncated envelope.
    #[allow(clippy::too_many_arguments)]
    pub fn aux_gamma(
        &self,
        kind: GammaKind,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<O::Elem> {
        let out_of_domain = || Error::IndexOutOfDomain {
            kind: kind.name(),
            point: [i, j, k],
        };
        let env = envelope_domains(self.deg(h), self.deg(f), self.deg(g), self.deg(b));
        if !env.truncated.contains(&[i, j, k]) {
            return Err(out_of_domain());
        }
        self.general_form(kind, h, f, g, b, (i as i64, j as i64, k as i64))
            .map_err(|e| match e {
                Error::IndexOutOfScope { .. } => out_of_domain(),
                other => other,
            })
    }

    fn general_form(
        &self,
        kind: GammaKind,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        (i, j, k): (i64, i64, i64),
    ) -> Result<O::Elem> {
        let d = self.shape(h, f, g, b);
        let sf = sign(d.big_f);
        let unit = self.unit();
        let mut acc = self.zero(self.quad_degree(h, f, g, b));
        match kind {
            GammaKind::Gamma => {
                let ih = self.cup(&unit, h)?;
                let t = self.comp3(&ih, f, g, b, i, j, k)?;
                self.operad.add_scaled(&mut acc, -sign(d.big_h), &t)?;
                self.mu_sum(h, f, g, b, (0, i - 1), (i, j, k), &mut acc, -sf)?;
            }
            GammaKind::GammaPrime => {
                self.mu_sum(h, f, g, b, (i - 1, j - d.f), (i - 1, j, k), &mut acc, -sf)?;
            }
            GammaKind::GammaDouble => {
                let range = (j - d.f, k - d.f - d.gs);
                self.mu_sum(h, f, g, b, range, (i - 1, j - 1, k), &mut acc, -sf)?;
            }
            GammaKind::GammaTriple => {
                let range = (k - d.f - d.gs, d.hs);
                self.mu_sum(h, f, g, b, range, (i - 1, j - 1, k - 1), &mut acc, -sf)?;
                let hi = self.cup(h, &unit)?;
                let t = self.comp3(&hi, f, g, b, i - 1, j - 1, k - 1)?;
                self.operad.add_scaled(&mut acc, -sf, &t)?;
            }
        }
        Ok(acc)
    }

    /// The shifted form of the auxiliary variable at `(i+1, j+1, k+1)` for
    /// `(i, j, k)` in the ground tetrahedron.
    #[allow(clippy::too_many_arguments)]
    pub fn shifted_gamma(
        &self,
        kind: GammaKind,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<O::Elem> {
        let d = self.shape(h, f, g, b);
        let sf = sign(d.big_f);
        let (i, j, k) = (i as i64, j as i64, k as i64);
        let unit = self.unit();
        let mut acc = self.zero(self.quad_degree(h, f, g, b));
        let base = || self.comp3(h, f, g, b, i, j, k);
        match kind {
            GammaKind::Gamma => {
                let t = self.cup(&unit, &base()?)?;
                self.operad.add_scaled(&mut acc, -sign(d.big_h), &t)?;
                self.mu_sum(h, f, g, b, (0, i - 1), (i + 1, j + 1, k + 1), &mut acc, -sf)?;
                let hf = self.comp(h, &self.cup(&unit, f)?, super::idx(i, self.deg(h))?)?;
                let t = self.comp2(&hf, g, b, j + 1, k + 1)?;
                self.operad.add_scaled(&mut acc, sf, &t)?;
            }
            GammaKind::GammaPrime => {
                let c = sign(d.gs + d.bs);
                let hf = self.comp(h, &self.cup(f, &unit)?, super::idx(i, self.deg(h))?)?;
                let t = self.comp2(&hf, g, b, j + 1, k + 1)?;
                self.operad.add_scaled(&mut acc, c, &t)?;
                self.mu_sum(
                    h,
                    f,
                    g,
                    b,
                    (i + 1, j - d.f),
                    (i, j + 1, k + 1),
                    &mut acc,
                    -sf,
                )?;
                let ig = self.cup(&unit, g)?;
                let t = self.comp3(h, f, &ig, b, i, j, k + 1)?;
                self.operad.add_scaled(&mut acc, c, &t)?;
            }
            GammaKind::GammaDouble => {
                let c = sign(d.bs);
                let gi = self.cup(g, &unit)?;
                let t = self.comp3(h, f, &gi, b, i, j, k + 1)?;
                self.operad.add_scaled(&mut acc, c, &t)?;
                let range = (j - d.fs + 1, k - d.fs - d.g);
                self.mu_sum(h, f, g, b, range, (i, j, k + 1), &mut acc, -sf)?;
                let ib = self.cup(&unit, b)?;
                let t = self.comp3(h, f, g, &ib, i, j, k)?;
                self.operad.add_scaled(&mut acc, c, &t)?;
            }
            GammaKind::GammaTriple => {
                let bi = self.cup(b, &unit)?;
                let t = self.comp3(h, f, g, &bi, i, j, k)?;
                self.operad.add_scaled(&mut acc, 1, &t)?;
                let range = (k - d.fs - d.gs + 1, d.hs);
                self.mu_sum(h, f, g, b, range, (i, j, k), &mut acc, -sf)?;
                let t = self.cup(&base()?, &unit)?;
                self.operad.add_scaled(&mut acc, -1, &t)?;
            }
        }
        Ok(acc)
    }

    /// The closed value of the variable living on a boundary face, at a
    /// point of that face.
    #[allow(clippy::too_many_arguments)]
    pub fn boundary_gamma(
        &self,
        kind: GammaKind,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<O::Elem> {
        let d = self.shape(h, f, g, b);
        let (i, j, k) = (i as i64, j as i64, k as i64);
        let (value, c) = match kind {
            // Γ_{0jk} = (−1)^{|g|+b+|h|f} f ∪ ((h ∘_{j−f} g) ∘_{k−f} b)
            GammaKind::Gamma => {
                let inner = self.comp2(h, g, b, j - d.f, k - d.f)?;
                (self.cup(f, &inner)?, sign(d.gs + d.b + d.hs * d.f))
            }
            // Γ'_{i,i+|f|,k} = (−1)^{|b|+|g|} (h ∘_{i−1} (f ∪ g)) ∘_k b
            GammaKind::GammaPrime => {
                let fg = self.cup(f, g)?;
                (self.comp2(h, &fg, b, i - 1, k)?, sign(d.bs + d.gs))
            }
            // Γ''_{i,j,j+|g|} = (−1)^{|b|} (h ∘_{i−1} f) ∘_{j−1} (g ∪ b)
            GammaKind::GammaDouble => {
                let gb = self.cup(g, b)?;
                (self.comp2(h, f, &gb, i - 1, j - 1)?, sign(d.bs))
            }
            // Γ'''_{i,j,|h|+f+g} = (−1)^b ((h ∘_{i−1} f) ∘_{j−1} g) ∪ b
            GammaKind::GammaTriple => {
                let hfg = self.comp2(h, f, g, i - 1, j - 1)?;
                (self.cup(&hfg, b)?, sign(d.b))
            }
        };
        self.scale(&value, c)
    }

    /// `δ(((h∘_i f)∘_j g)∘_k b) − ((h∘_i f)∘_j g)∘_k δb
    ///  − (−1)^{|b|}((h∘_i f)∘_j δg)∘_{k+1} b − (−1)^{|b|+|g|}((h∘_i δf)∘_{j+1} g)∘_{k+1} b`
    #[allow(clippy::too_many_arguments)]
    pub fn coboundary_defect(
        &self,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<O::Elem> {
        let d = self.shape(h, f, g, b);
        let (i, j, k) = (i as i64, j as i64, k as i64);
        let t0 = self.delta(&self.comp3(h, f, g, b, i, j, k)?)?;
        let t1 = self.comp3(h, f, g, &self.delta(b)?, i, j, k)?;
        let t2 = self.comp3(h, f, &self.delta(g)?, b, i, j, k + 1)?;
        let t3 = self.comp3(h, &self.delta(f)?, g, b, i, j + 1, k + 1)?;
        self.lin(
            self.deg(&t0),
            &[
                (1, &t0),
                (-1, &t1),
                (-sign(d.bs), &t2),
                (-sign(d.bs + d.gs), &t3),
            ],
        )
    }

    /// `(−1)^{|f|+|g|+|b|} ((δh ∘_i f) ∘_j g) ∘_k b`
    #[allow(clippy::too_many_arguments)]
    pub fn delta_h_term(
        &self,
        h: &O::Elem,
        f: &O::Elem,
        g: &O::Elem,
        b: &O::Elem,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<O::Elem> {
        let d = self.shape(h, f, g, b);
        let t = self.comp3(&self.delta(h)?, f, g, b, i as i64, j as i64, k as i64)?;
        self.scale(&t, sign(d.big_f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{boundary_faces, ground_tetrahedron};
    use crate::coeff::CoefficientRing;
    use crate::endo::MultilinearMap;
    use crate::operad::EndoOperad;
    use rand::SeedableRng;

    type Ctx = PreOperadContext<EndoOperad>;

    fn setup(dim: usize, seed: u64) -> (Ctx, rand_chacha::ChaCha8Rng) {
        let ring = CoefficientRing::prime_field(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mu = MultilinearMap::random(ring, dim, 2, &mut rng).unwrap();
        (
            PreOperadContext::new(EndoOperad::new(ring, dim).unwrap(), mu).unwrap(),
            rng,
        )
    }

    fn rand_map(c: &Ctx, rng: &mut rand_chacha::ChaCha8Rng, degree: usize) -> MultilinearMap {
        MultilinearMap::random(c.operad.ring, c.operad.dim, degree, rng).unwrap()
    }

    const SHAPES: [[usize; 4]; 4] = [[3, 1, 1, 1], [4, 1, 2, 1], [3, 2, 1, 2], [5, 1, 1, 1]];

    #[test]
    fn coboundary_defect_pointwise() {
        let (c, mut rng) = setup(1, 1);
        for [dh, df, dg, db] in SHAPES {
            let (h, f, g, b) = (
                rand_map(&c, &mut rng, dh),
                rand_map(&c, &mut rng, df),
                rand_map(&c, &mut rng, dg),
                rand_map(&c, &mut rng, db),
            );
            for p in ground_tetrahedron(dh, df, dg).points() {
                let lhs = c
                    .coboundary_defect(&h, &f, &g, &b, p[0], p[1], p[2])
                    .unwrap();
                let mut rhs = c.zero(lhs.degree());
                for kind in GammaKind::ALL {
                    let v = c
                        .aux_gamma(kind, &h, &f, &g, &b, p[0] + 1, p[1] + 1, p[2] + 1)
                        .unwrap();
                    rhs.add_scaled(&c.operad.ring.one(), &v).unwrap();
                }
                assert_eq!(lhs, rhs, "shape {:?} point {p:?}", [dh, df, dg, db]);
            }
        }
    }

    #[test]
    fn general_matches_shifted_on_t_prime() {
        let (c, mut rng) = setup(2, 2);
        for [dh, df, dg, db] in SHAPES {
            let (h, f, g, b) = (
                rand_map(&c, &mut rng, dh),
                rand_map(&c, &mut rng, df),
                rand_map(&c, &mut rng, dg),
                rand_map(&c, &mut rng, db),
            );
            for p in ground_tetrahedron(dh, df, dg).points() {
                for kind in GammaKind::ALL {
                    let a = c
                        .aux_gamma(kind, &h, &f, &g, &b, p[0] + 1, p[1] + 1, p[2] + 1)
                        .unwrap();
                    let s = c
                        .shifted_gamma(kind, &h, &f, &g, &b, p[0], p[1], p[2])
                        .unwrap();
                    assert_eq!(a, s, "{kind} at {p:?}");
                }
            }
        }
    }

    #[test]
    fn boundary_values() {
        let (c, mut rng) = setup(2, 3);
        for [dh, df, dg, db] in SHAPES {
            let (h, f, g, b) = (
                rand_map(&c, &mut rng, dh),
                rand_map(&c, &mut rng, df),
                rand_map(&c, &mut rng, dg),
                rand_map(&c, &mut rng, db),
            );
            for (kind, face) in GammaKind::ALL.into_iter().zip(boundary_faces(dh, df, dg)) {
                for p in face.points() {
                    let a = c.aux_gamma(kind, &h, &f, &g, &b, p[0], p[1], p[2]).unwrap();
                    let z = c
                        .boundary_gamma(kind, &h, &f, &g, &b, p[0], p[1], p[2])
                        .unwrap();
                    assert_eq!(a, z, "{kind} at {p:?}, shape {:?}", [dh, df, dg, db]);
                }
            }
        }
    }

    #[test]
    fn delta_h_split_pointwise() {
        let (c, mut rng) = setup(2, 4);
        for [dh, df, dg, db] in SHAPES {
            let (h, f, g, b) = (
                rand_map(&c, &mut rng, dh),
                rand_map(&c, &mut rng, df),
                rand_map(&c, &mut rng, dg),
                rand_map(&c, &mut rng, db),
            );
            for p in ground_tetrahedron(dh + 1, df, dg).points() {
                let (i, j, k) = (p[0], p[1], p[2]);
                let lhs = c.delta_h_term(&h, &f, &g, &b, i, j, k).unwrap();
                let pts = [
                    (i, j, k),
                    (i + 1, j, k),
                    (i + 1, j + 1, k),
                    (i + 1, j + 1, k + 1),
                ];
                let mut rhs = c.zero(lhs.degree());
                for (kind, (a, bb, cc)) in GammaKind::ALL.into_iter().zip(pts) {
                    let v = c.aux_gamma(kind, &h, &f, &g, &b, a, bb, cc).unwrap();
                    rhs.add_scaled(&c.operad.ring.one(), &v).unwrap();
                }
                assert_eq!(lhs, rhs, "point {p:?}");
            }
        }
    }

    #[test]
    fn outside_truncation_is_rejected() {
        let (c, mut rng) = setup(1, 5);
        let h = rand_map(&c, &mut rng, 3);
        let x = rand_map(&c, &mut rng, 1);
        // (0, |f|, |f|+|g|) lies on a removed edge
        assert!(matches!(
            c.aux_gamma(GammaKind::Gamma, &h, &x, &x, &x, 0, 0, 0),
            Err(Error::IndexOutOfDomain { .. })
        ));
        assert!(c
            .aux_gamma(GammaKind::Gamma, &h, &x, &x, &x, 9, 9, 9)
            .is_err());
    }
}
