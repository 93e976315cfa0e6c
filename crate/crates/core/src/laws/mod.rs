//! Executable identities and a seeded randomized trial engine.

mod checks;
mod shrink;
mod words;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{Mutation, PreOperadContext};
use crate::coeff::CoefficientRing;
use crate::endo::MultilinearMap;
use crate::error::{Error, Result};
use crate::free::{FreeElement, PlanarTree};
use crate::operad::{Backend, BackendKind, EndoOperad, FreeOperad, GradedElement};

pub use shrink::shrink;
pub use words::Word;

pub type Ctx = PreOperadContext<Backend>;

/// Result of checking one instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    /// Every index domain involved is empty.
    Vacuous,
    Fail(Box<Mismatch>),
}

/// The two sides of a failed equation, serialized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    #[serde(default)]
    pub domain_point: Option<Vec<usize>>,
    /// Which of several equations checked by the law failed.
    pub clause: String,
}

/// Everything a checker may use besides the sampled elements.
pub struct Env<'a> {
    pub ctx: &'a Ctx,
    pub dim: usize,
    /// Extra randomness, seeded from the trial seed only.
    pub aux: ChaCha8Rng,
}

type Checker = fn(&mut Env<'_>, &[GradedElement]) -> Result<Outcome>;

/// How `μ` is chosen for a law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MuSource {
    Random,
    Associative,
}

/// A registered identity.
#[derive(Clone)]
pub struct Law {
    pub id: &'static str,
    pub description: &'static str,
    /// The identity being checked, written out.
    pub statement: &'static str,
    /// Names of the sampled elements, in order.
    pub roles: &'static [&'static str],
    /// Force `deg` of the first role to be at least 3 on even trials.
    force_first_ge3: bool,
    endo_only: bool,
    mu: MuSource,
    checker: Checker,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law").field("id", &self.id).finish()
    }
}

/// Serializable summary of a law.
#[derive(Debug, Clone, Serialize)]
pub struct LawInfo {
    pub id: &'static str,
    pub description: &'static str,
    pub statement: &'static str,
    pub roles: &'static [&'static str],
}

impl Law {
    pub fn info(&self) -> LawInfo {
        LawInfo {
            id: self.id,
            description: self.description,
            statement: self.statement,
            roles: self.roles,
        }
    }

    pub fn applies_to(&self, backend: BackendKind) -> bool {
        !(self.endo_only && backend == BackendKind::Free)
    }
}

pub fn list_laws() -> &'static [Law] {
    checks::REGISTRY
}

pub fn find_law(id: &str) -> Result<&'static Law> {
    list_laws()
        .iter()
        .find(|l| l.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrialConfig {
    pub backend: BackendKind,
    pub prime: u64,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest degree drawn for a single element.
    pub max_degree: usize,
    /// Cap on the sum of sampled degrees; `None` picks one from `dim`.
    pub degree_budget: Option<usize>,
    /// Redraws allowed for an instance whose index domains are all empty.
    pub retries: usize,
    pub mutation: Mutation,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            backend: BackendKind::Endo,
            prime: 97,
            dim: 1,
            trials: 200,
            seed: 0,
            max_degree: 5,
            degree_budget: None,
            retries: 8,
            mutation: Mutation::None,
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<CoefficientRing> {
        if self.trials == 0 {
            return Err(Error::BadConfig("trials must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::BadConfig("dim must be at least 1".into()));
        }
        if self.max_degree == 0 {
            return Err(Error::BadConfig("max degree must be at least 1".into()));
        }
        CoefficientRing::prime_field(self.prime)
    }

    pub fn budget(&self) -> usize {
        self.degree_budget
            .unwrap_or(match (self.backend, self.dim) {
                (BackendKind::Free, _) => 11,
                (_, 0..=2) => 12,
                (_, 3) => 9,
                _ => 7,
            })
    }

    fn backend(&self, ring: CoefficientRing) -> Result<Backend> {
        Ok(match self.backend {
            BackendKind::Endo => Backend::Endo(EndoOperad::new(ring, self.dim)?),
            BackendKind::Free => Backend::Free(FreeOperad { ring }),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Underpowered,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Underpowered => "underpowered",
            Status::Skipped => "skipped",
        })
    }
}

/// A failing instance, reproducible from `seed` and the configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub degrees: Vec<usize>,
    pub elements: BTreeMap<String, GradedElement>,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    #[serde(default)]
    pub domain_point: Option<Vec<usize>>,
    pub clause: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub law_id: String,
    pub status: Status,
    pub trials: usize,
    pub vacuous: usize,
    pub failed_trials: usize,
    pub failures: Vec<Failure>,
    #[serde(default)]
    pub shrunk: Option<Failure>,
    pub millis: u64,
}

impl Report {
    /// The report with timing zeroed, for comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            millis: 0,
            ..self.clone()
        }
    }
}

/// Failures kept verbatim in a report; the rest are only counted.
const KEPT_FAILURES: usize = 20;

/// An instance: `μ` and the elements in role order.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub mu: GradedElement,
    pub elems: Vec<GradedElement>,
}

impl Instance {
    pub fn degrees(&self) -> Vec<usize> {
        self.elems.iter().map(GradedElement::degree).collect()
    }

    fn named(&self, law: &Law) -> BTreeMap<String, GradedElement> {
        let mut out: BTreeMap<String, GradedElement> = law
            .roles
            .iter()
            .zip(&self.elems)
            .map(|(r, e)| (r.to_string(), e.clone()))
            .collect();
        out.insert("mu".into(), self.mu.clone());
        out
    }
}

/// A failing instance together with how it failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub seed: u64,
    pub instance: Instance,
    pub mismatch: Mismatch,
}

impl Witness {
    pub fn to_failure(&self, law: &Law) -> Failure {
        Failure {
            seed: self.seed,
            degrees: self.instance.degrees(),
            elements: self.instance.named(law),
            lhs: self.mismatch.lhs.clone(),
            rhs: self.mismatch.rhs.clone(),
            domain_point: self.mismatch.domain_point.clone(),
            clause: self.mismatch.clause.clone(),
        }
    }
}

/// The seed of trial `index` under master seed `master`.
/// Seed of trial `index`; its low bit is the parity of `index`, so quotas
/// keyed on even seeds cover exactly half the trials.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = master.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31)) & !1 | (index as u64 & 1)
}

fn aux_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_A0C5_0F0F_1234)
}

/// Prepared state shared by all trials of one law run.
pub struct Runner<'a> {
    pub law: &'a Law,
    pub cfg: &'a TrialConfig,
    ring: CoefficientRing,
    backend: Backend,
}

impl<'a> Runner<'a> {
    pub fn new(law: &'a Law, cfg: &'a TrialConfig) -> Result<Self> {
        let ring = cfg.validate()?;
        let backend = cfg.backend(ring)?;
        Ok(Runner {
            law,
            cfg,
            ring,
            backend,
        })
    }

    fn element(&self, role: &str, degree: usize, rng: &mut ChaCha8Rng) -> Result<GradedElement> {
        Ok(match self.cfg.backend {
            BackendKind::Endo => GradedElement::Endo(MultilinearMap::random(
                self.ring,
                self.cfg.dim,
                degree,
                rng,
            )?),
            BackendKind::Free => GradedElement::Free(FreeElement::from_tree(
                self.ring,
                PlanarTree::corolla(role, degree),
            )),
        })
    }

    /// A generator-shaped element of a lower degree in place of `x`, for
    /// shrinking.
    pub(crate) fn lowered(&self, role: &str, x: &GradedElement) -> Option<GradedElement> {
        match x {
            GradedElement::Endo(m) if m.degree() > 1 => {
                m.restrict_last_input().map(GradedElement::Endo)
            }
            GradedElement::Endo(_) => None,
            GradedElement::Free(e) => {
                let d = e.degree();
                (d > 1).then(|| {
                    GradedElement::Free(FreeElement::from_tree(
                        self.ring,
                        PlanarTree::corolla(role, d - 1),
                    ))
                })
            }
        }
    }

    fn mu(&self, seed: u64, rng: &mut ChaCha8Rng) -> Result<GradedElement> {
        Ok(match (self.cfg.backend, self.law.mu) {
            (BackendKind::Free, _) => GradedElement::Free(FreeElement::from_tree(
                self.ring,
                PlanarTree::corolla("mu", 2),
            )),
            (BackendKind::Endo, MuSource::Random) => {
                GradedElement::Endo(MultilinearMap::random(self.ring, self.cfg.dim, 2, rng)?)
            }
            (BackendKind::Endo, MuSource::Associative) => {
                GradedElement::Endo(if self.cfg.dim == 4 && seed.is_multiple_of(2) {
                    MultilinearMap::matrix_algebra_2x2(self.ring)
                } else {
                    MultilinearMap::componentwise_product(self.ring, self.cfg.dim)
                })
            }
        })
    }

    fn degrees(&self, rng: &mut ChaCha8Rng, force: bool) -> Vec<usize> {
        let n = self.law.roles.len();
        let max = self.cfg.max_degree;
        let budget = self.cfg.budget().max(n);
        let lo = |k: usize| if k == 0 && force { 3.min(max) } else { 1 };
        for _ in 0..64 {
            let ds: Vec<usize> = (0..n).map(|k| rng.random_range(lo(k)..=max)).collect();
            if ds.iter().sum::<usize>() <= budget {
                return ds;
            }
        }
        let mut ds: Vec<usize> = (0..n).map(lo).collect();
        while ds.iter().sum::<usize>() > budget {
            let k = (0..n).max_by_key(|&k| ds[k]).unwrap_or(0);
            if ds[k] <= 1 {
                break;
            }
            ds[k] -= 1;
        }
        ds
    }

    /// Draws and checks the instance of a trial. Draws whose index domains
    /// are all empty are redrawn, up to the retry budget.
    pub fn trial(&self, seed: u64) -> Result<(Instance, Outcome)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let force = self.law.force_first_ge3 && seed.is_multiple_of(2);
        let mut attempt = 0;
        loop {
            let mu = self.mu(seed, &mut rng)?;
            let degrees = self.degrees(&mut rng, force);
            let elems = self
                .law
                .roles
                .iter()
                .zip(&degrees)
                .map(|(r, &d)| self.element(r, d, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let inst = Instance { mu, elems };
            let out = self.check(seed, &inst)?;
            if out != Outcome::Vacuous || attempt == self.cfg.retries {
                return Ok((inst, out));
            }
            attempt += 1;
        }
    }

    /// Runs the law's checker on an explicit instance.
    pub fn check(&self, seed: u64, inst: &Instance) -> Result<Outcome> {
        let ctx =
            PreOperadContext::new(self.backend, inst.mu.clone())?.with_mutation(self.cfg.mutation);
        let mut env = Env {
            ctx: &ctx,
            dim: self.cfg.dim,
            aux: aux_rng(seed),
        };
        (self.law.checker)(&mut env, &inst.elems)
    }

    /// Re-runs the trial with the given seed and returns its witness, if it fails.
    pub fn replay(&self, seed: u64) -> Result<Option<Witness>> {
        let (instance, out) = self.trial(seed)?;
        Ok(match out {
            Outcome::Fail(m) => Some(Witness {
                seed,
                instance,
                mismatch: *m,
            }),
            _ => None,
        })
    }
}

/// Runs one law under `cfg`.
pub fn run_law(law_id: &str, cfg: &TrialConfig) -> Result<Report> {
    let law = find_law(law_id)?;
    let start = Instant::now();
    let runner = Runner::new(law, cfg)?;
    if !law.applies_to(cfg.backend) {
        return Ok(Report {
            law_id: law.id.to_string(),
            status: Status::Skipped,
            trials: 0,
            vacuous: 0,
            failed_trials: 0,
            failures: Vec::new(),
            shrunk: None,
            millis: start.elapsed().as_millis() as u64,
        });
    }
    let results: Vec<(u64, Instance, Outcome)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(cfg.seed, t);
            runner.trial(seed).map(|(i, o)| (seed, i, o))
        })
        .collect::<Result<_>>()?;

    let mut vacuous = 0;
    let mut witnesses = Vec::new();
    for (seed, instance, out) in results {
        match out {
            Outcome::Pass => {}
            Outcome::Vacuous => vacuous += 1,
            Outcome::Fail(m) => witnesses.push(Witness {
                seed,
                instance,
                mismatch: *m,
            }),
        }
    }
    let shrunk = match witnesses.first() {
        Some(w) => Some(shrink(&runner, w)?.to_failure(law)),
        None => None,
    };
    let status = if !witnesses.is_empty() {
        Status::Fail
    } else if 2 * (cfg.trials - vacuous) < cfg.trials {
        Status::Underpowered
    } else {
        Status::Pass
    };
    Ok(Report {
        law_id: law.id.to_string(),
        status,
        trials: cfg.trials,
        vacuous,
        failed_trials: witnesses.len(),
        failures: witnesses
            .iter()
            .take(KEPT_FAILURES)
            .map(|w| w.to_failure(law))
            .collect(),
        shrunk,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// Runs every registered law.
pub fn run_all(cfg: &TrialConfig) -> Result<Vec<Report>> {
    list_laws().iter().map(|l| run_law(l.id, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let laws = list_laws();
        assert!(laws.len() >= 18);
        let mut ids: Vec<_> = laws.iter().map(|l| l.id).collect();
        assert!(ids.contains(&"L08-main-theorem"));
        assert!(ids.contains(&"L12-delta-squared"));
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), laws.len());
        assert!(laws.iter().all(|l| !l.statement.is_empty()));
    }

    #[test]
    fn seeds_are_spread() {
        let s: std::collections::BTreeSet<_> = (0..1000).map(|t| trial_seed(7, t)).collect();
        assert_eq!(s.len(), 1000);
        assert_eq!(s.iter().filter(|x| *x % 2 == 0).count(), 500);
    }

    #[test]
    fn unknown_law_and_bad_config() {
        assert!(matches!(
            run_law("L99-nope", &TrialConfig::default()),
            Err(Error::UnknownLaw(_))
        ));
        let cfg = TrialConfig {
            trials: 0,
            ..TrialConfig::default()
        };
        assert!(matches!(
            run_law("L01-cup-identities", &cfg),
            Err(Error::BadConfig(_))
        ));
        let cfg = TrialConfig {
            prime: 91,
            ..TrialConfig::default()
        };
        assert!(run_law("L01-cup-identities", &cfg).is_err());
    }

    #[test]
    fn every_law_passes_briefly() {
        for backend in [BackendKind::Endo, BackendKind::Free] {
            let cfg = TrialConfig {
                backend,
                dim: 2,
                trials: 6,
                seed: 3,
                max_degree: 4,
                degree_budget: Some(9),
                ..TrialConfig::default()
            };
            for law in list_laws() {
                let r = run_law(law.id, &cfg).unwrap();
                assert!(
                    matches!(r.status, Status::Pass | Status::Skipped),
                    "{} on {backend}: {:?}",
                    law.id,
                    r.failures.first()
                );
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = TrialConfig {
            dim: 2,
            trials: 10,
            seed: 11,
            ..TrialConfig::default()
        };
        let a = run_law("L07-tribrace-deviation", &cfg).unwrap();
        let b = run_law("L07-tribrace-deviation", &cfg).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }

    #[test]
    fn canaries_are_detected_and_replayable() {
        for (mutation, law) in [
            (Mutation::CupSignFlip, "L01-cup-identities"),
            (Mutation::BRelationSignDrop, "L15-relation-b"),
            (Mutation::GRangeOffByOne, "L06-associator"),
        ] {
            let cfg = TrialConfig {
                dim: 2,
                trials: 20,
                seed: 1,
                mutation,
                ..TrialConfig::default()
            };
            let r = run_law(law, &cfg).unwrap();
            assert_eq!(r.status, Status::Fail, "{mutation} not caught by {law}");
            let f = &r.failures[0];
            let runner = Runner::new(find_law(law).unwrap(), &cfg).unwrap();
            let w = runner.replay(f.seed).unwrap().expect("replay fails again");
            assert_eq!(&w.to_failure(find_law(law).unwrap()), f);
        }
    }
}
