//! Integer-lattice index domains.
//!
//! All domains are enumerated explicitly from their defining inequalities.
//! Degrees are the plain degrees `deg x`; shifted degrees `|x| = deg x − 1`
//! are computed with signed arithmetic so empty ranges come out empty.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    ScopeB,
    ScopeA,
    ScopeG,
    GroundT,
    ShiftedT,
    Envelope,
    TruncatedEnvelope,
    BoundaryTruncated,
    /// One of the four faces of the truncated boundary, labelled by the
    /// auxiliary variable that lives on it.
    Face(super::GammaKind),
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainKind::ScopeB => f.write_str("B"),
            DomainKind::ScopeA => f.write_str("A"),
            DomainKind::ScopeG => f.write_str("G"),
            DomainKind::GroundT => f.write_str("T"),
            DomainKind::ShiftedT => f.write_str("T'"),
            DomainKind::Envelope => f.write_str("T'_env"),
            DomainKind::TruncatedEnvelope => f.write_str("truncated T'_env"),
            DomainKind::BoundaryTruncated => f.write_str("boundary of truncated T'_env"),
            DomainKind::Face(k) => write!(f, "face of {k}"),
        }
    }
}

/// A finite set of lattice points of a fixed dimension (2 or 3).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeDomain {
    pub kind: DomainKind,
    pub degrees: Vec<usize>,
    points: BTreeSet<Vec<usize>>,
}

impl LatticeDomain {
    fn new(kind: DomainKind, degrees: &[usize], points: BTreeSet<Vec<usize>>) -> Self {
        LatticeDomain {
            kind,
            degrees: degrees.to_vec(),
            points,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.points.iter().map(Vec::as_slice)
    }

    pub fn point_set(&self) -> &BTreeSet<Vec<usize>> {
        &self.points
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.points.contains(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn pairs(pred: impl Fn(i64, i64) -> bool, i_max: i64, j_max: i64) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for i in 0..=i_max {
        for j in 0..=j_max {
            if pred(i, j) {
                out.insert(vec![i as usize, j as usize]);
            }
        }
    }
    out
}

/// The full scope `0 ≤ i ≤ |h|, 0 ≤ j ≤ |f| + |h|` of `(h ∘_i f) ∘_j g`.
pub fn scope(deg_h: usize, deg_f: usize) -> BTreeSet<Vec<usize>> {
    let (h, f) = (deg_h as i64 - 1, deg_f as i64 - 1);
    pairs(|_, _| true, h, f + h)
}

/// The triangles `B`, `G` and the parallelogram `A` partitioning the scope.
pub fn scope_regions(
    deg_h: usize,
    deg_f: usize,
) -> Result<(LatticeDomain, LatticeDomain, LatticeDomain)> {
    if deg_h == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "the scope needs deg h ≥ 1",
        });
    }
    let f = deg_f as i64;
    let (hs, fs) = (deg_h as i64 - 1, f - 1);
    let degs = [deg_h, deg_f];
    let b = pairs(|i, j| 1 <= i && i <= hs && j < i, hs, fs + hs);
    let a = pairs(|i, j| i <= hs && i <= j && j <= i + fs, hs, fs + hs);
    let g = pairs(|i, j| i < hs && i + f <= j && j <= fs + hs, hs, fs + hs);
    Ok((
        LatticeDomain::new(DomainKind::ScopeB, &degs, b),
        LatticeDomain::new(DomainKind::ScopeA, &degs, a),
        LatticeDomain::new(DomainKind::ScopeG, &degs, g),
    ))
}

/// `{0 ≤ i ≤ j − f ≤ k − f − g ≤ h − 3}`; empty when `h < 3`.
pub fn ground_tetrahedron(deg_h: usize, deg_f: usize, deg_g: usize) -> LatticeDomain {
    LatticeDomain::new(
        DomainKind::GroundT,
        &[deg_h, deg_f, deg_g],
        staircase(0, deg_h as i64 - 3, deg_f, deg_g),
    )
}

/// `{lo ≤ i ≤ j − f ≤ k − f − g ≤ hi}`.
fn staircase(lo: i64, hi: i64, f: usize, g: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for i in lo..=hi {
        for q in i..=hi {
            for r in q..=hi {
                out.insert(vec![i as usize, q as usize + f, r as usize + f + g]);
            }
        }
    }
    out
}

/// The shifted tetrahedron, its envelope, the truncated envelope and the
/// boundary of the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeDomains {
    pub shifted: LatticeDomain,
    pub envelope: LatticeDomain,
    pub truncated: LatticeDomain,
    pub boundary: LatticeDomain,
}

pub fn envelope_domains(deg_h: usize, deg_f: usize, deg_g: usize, deg_b: usize) -> EnvelopeDomains {
    let degs = [deg_h, deg_f, deg_g, deg_b];
    let (h, f, g) = (deg_h as i64, deg_f as i64, deg_g as i64);
    let (fs, gs) = (f - 1, g - 1);

    let shifted = if deg_f == 0 || deg_g == 0 {
        BTreeSet::new()
    } else {
        staircase(1, h - 2, deg_f, deg_g)
    };

    // 0 ≤ i ≤ j − |f| ≤ k − |f| − |g| ≤ h + 1
    let mut envelope = BTreeSet::new();
    for a in 0..=h + 1 {
        for b in a..=h + 1 {
            for c in b..=h + 1 {
                let (j, k) = (b + fs, c + fs + gs);
                if j >= 0 && k >= 0 {
                    envelope.insert(vec![a as usize, j as usize, k as usize]);
                }
            }
        }
    }

    let removed = |i: i64, j: i64, k: i64| {
        let top = h + f + gs;
        (j == i + fs && k == top)
            || (i == 0 && j == fs && fs + gs <= k && k <= top)
            || (j == i + fs && k == i + fs + gs)
            || (i == 0 && fs <= j && j <= h + f && k == top)
            || (j == h + f && k == top)
            || (i == 0 && fs <= j && j <= h + f && k == j + gs)
    };
    let truncated: BTreeSet<Vec<usize>> = envelope
        .iter()
        .filter(|p| !removed(p[0] as i64, p[1] as i64, p[2] as i64))
        .cloned()
        .collect();
    let boundary = truncated.difference(&shifted).cloned().collect();

    EnvelopeDomains {
        shifted: LatticeDomain::new(DomainKind::ShiftedT, &degs, shifted),
        envelope: LatticeDomain::new(DomainKind::Envelope, &degs, envelope),
        truncated: LatticeDomain::new(DomainKind::TruncatedEnvelope, &degs, truncated),
        boundary: LatticeDomain::new(DomainKind::BoundaryTruncated, &degs, boundary),
    }
}

/// The four faces of the truncated boundary, one per auxiliary variable, as
/// ranges on which the closed boundary values are stated:
///
/// * `Γ_{0jk}`:        `f ≤ j ≤ k − g ≤ |h| + |f|`
/// * `Γ'_{i,i+|f|,k}`: `1 ≤ i ≤ k − |f| − g ≤ |h|`
/// * `Γ''_{i,j,j+|g|}`: `1 ≤ i ≤ j − f ≤ |h|`
/// * `Γ'''_{i,j,|h|+f+g}`: `1 ≤ i ≤ j − f ≤ |h|`
pub fn boundary_faces(deg_h: usize, deg_f: usize, deg_g: usize) -> [LatticeDomain; 4] {
    use super::GammaKind::*;
    let (h, f, g) = (deg_h as i64, deg_f as i64, deg_g as i64);
    let (hs, fs, gs) = (h - 1, f - 1, g - 1);
    let degs = [deg_h, deg_f, deg_g];
    let mut faces: [BTreeSet<Vec<usize>>; 4] = Default::default();
    let push = |set: &mut BTreeSet<Vec<usize>>, i: i64, j: i64, k: i64| {
        if i >= 0 && j >= 0 && k >= 0 {
            set.insert(vec![i as usize, j as usize, k as usize]);
        }
    };
    // i = 0
    for j in f..=hs + fs {
        for k in j + g..=hs + fs + g {
            push(&mut faces[0], 0, j, k);
        }
    }
    // j = i + |f|
    for i in 1..=hs {
        for k in i + fs + g..=hs + fs + g {
            push(&mut faces[1], i, i + fs, k);
        }
    }
    // k = j + |g|
    for i in 1..=hs {
        for j in i + f..=hs + f {
            push(&mut faces[2], i, j, j + gs);
        }
    }
    // k = |h| + f + g
    for i in 1..=hs {
        for j in i + f..=hs + f {
            push(&mut faces[3], i, j, hs + f + g);
        }
    }
    let [a, b, c, d] = faces;
    [
        LatticeDomain::new(DomainKind::Face(Gamma), &degs, a),
        LatticeDomain::new(DomainKind::Face(GammaPrime), &degs, b),
        LatticeDomain::new(DomainKind::Face(GammaDouble), &degs, c),
        LatticeDomain::new(DomainKind::Face(GammaTriple), &degs, d),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[[usize; 3]]) -> BTreeSet<Vec<usize>> {
        points.iter().map(|p| p.to_vec()).collect()
    }

    fn pset(points: &[[usize; 2]]) -> BTreeSet<Vec<usize>> {
        points.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn scope_two_two() {
        let (b, a, g) = scope_regions(2, 2).unwrap();
        assert_eq!(b.point_set(), &pset(&[[1, 0]]));
        assert_eq!(a.point_set(), &pset(&[[0, 0], [0, 1], [1, 1], [1, 2]]));
        assert_eq!(g.point_set(), &pset(&[[0, 2]]));
        assert_eq!(b.len() + a.len() + g.len(), 6);
    }

    #[test]
    fn scope_degenerate_and_three_one() {
        for n in 1..5 {
            let (b, _, g) = scope_regions(1, n).unwrap();
            assert!(b.is_empty() && g.is_empty());
        }
        let (_, _, g) = scope_regions(3, 1).unwrap();
        assert_eq!(g.point_set(), &pset(&[[0, 1], [0, 2], [1, 2]]));
        assert!(scope_regions(0, 2).is_err());
    }

    #[test]
    fn regions_partition_scope_by_enumeration() {
        for h in 1..=6 {
            for f in 1..=6 {
                let (b, a, g) = scope_regions(h, f).unwrap();
                let mut union = b.point_set().clone();
                for p in a.points().chain(g.points()) {
                    assert!(union.insert(p.to_vec()), "overlap at {p:?} for ({h},{f})");
                }
                assert_eq!(union, scope(h, f));
            }
        }
    }

    #[test]
    fn ground_tetrahedra() {
        assert_eq!(ground_tetrahedron(3, 1, 1).point_set(), &set(&[[0, 1, 2]]));
        assert!(ground_tetrahedron(2, 4, 1).is_empty());
        assert_eq!(
            ground_tetrahedron(4, 1, 1).point_set(),
            &set(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
        );
    }

    #[test]
    fn shifted_is_ground_plus_one() {
        assert_eq!(
            envelope_domains(3, 1, 1, 1).shifted.point_set(),
            &set(&[[1, 2, 3]])
        );
        for (h, f, g) in [(4, 1, 1), (5, 2, 3), (6, 1, 2)] {
            let t: BTreeSet<_> = ground_tetrahedron(h, f, g)
                .points()
                .map(|p| vec![p[0] + 1, p[1] + 1, p[2] + 1])
                .collect();
            assert_eq!(&t, envelope_domains(h, f, g, 1).shifted.point_set());
        }
    }

    #[test]
    fn truncation_partitions_into_shifted_and_faces() {
        for h in 1..=6 {
            for f in 1..=4 {
                for g in 1..=4 {
                    let env = envelope_domains(h, f, g, 2);
                    let t = env.shifted.point_set();
                    let tr = env.truncated.point_set();
                    assert!(t.is_subset(tr));
                    assert!(tr.is_subset(env.envelope.point_set()));
                    let joined: BTreeSet<_> = t.union(env.boundary.point_set()).cloned().collect();
                    assert_eq!(&joined, tr);
                    assert!(t.is_disjoint(env.boundary.point_set()));

                    let faces = boundary_faces(h, f, g);
                    let mut union = BTreeSet::new();
                    for face in &faces {
                        for p in face.points() {
                            assert!(union.insert(p.to_vec()), "faces overlap at {p:?}");
                        }
                    }
                    assert_eq!(&union, env.boundary.point_set(), "h={h} f={f} g={g}");
                }
            }
        }
    }

    #[test]
    fn six_edges_removed() {
        // The envelope is the lattice tetrahedron 0 ≤ a ≤ b ≤ c ≤ h+1 in
        // shifted coordinates; the truncation removes its six edges.
        let (h, f, g) = (4usize, 2usize, 3usize);
        let env = envelope_domains(h, f, g, 1);
        let removed: BTreeSet<_> = env
            .envelope
            .point_set()
            .difference(env.truncated.point_set())
            .cloned()
            .collect();
        let n = h as i64 + 1;
        let mut edges = BTreeSet::new();
        for t in 0..=n {
            for (a, b, c) in [
                (0, 0, t),
                (0, t, t),
                (0, t, n),
                (t, t, t),
                (t, t, n),
                (t, n, n),
            ] {
                let (j, k) = (b + f as i64 - 1, c + f as i64 + g as i64 - 2);
                edges.insert(vec![a as usize, j as usize, k as usize]);
            }
        }
        assert_eq!(removed, edges);
    }
}
