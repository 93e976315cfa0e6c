use num_bigint::BigInt;

use super::{Instance, Outcome, Runner, Witness};
use crate::error::Result;
use crate::free::FreeElement;
use crate::operad::GradedElement;

/// Checker runs allowed for one shrink.
const BUDGET: usize = 4000;

fn parts(x: &GradedElement) -> usize {
    match x {
        GradedElement::Endo(m) => m.nonzero_positions().len(),
        GradedElement::Free(e) => e.len(),
    }
}

/// `x` with its `n`-th nonzero coefficient removed.
fn drop_part(x: &GradedElement, n: usize) -> GradedElement {
    match x {
        GradedElement::Endo(m) => {
            GradedElement::Endo(m.with_entry_zeroed(m.nonzero_positions()[n]))
        }
        GradedElement::Free(e) => {
            let mut out = e.clone();
            if let Some((tree, c)) = e.terms().nth(n) {
                let single = FreeElement::from_tree(e.ring(), tree.clone());
                let minus: BigInt = -c.value();
                out.add_scaled(&minus, &single)
                    .expect("same ring and degree");
            }
            GradedElement::Free(out)
        }
    }
}

struct Search<'a, 'b> {
    runner: &'a Runner<'b>,
    best: Witness,
    spent: usize,
}

impl Search<'_, '_> {
    /// Adopts `candidate` when it still fails.
    fn attempt(&mut self, candidate: Instance) -> Result<bool> {
        if self.spent >= BUDGET {
            return Ok(false);
        }
        self.spent += 1;
        // a candidate the checker cannot evaluate is simply not adopted
        if let Ok(Outcome::Fail(m)) = self.runner.check(self.best.seed, &candidate) {
            self.best.instance = candidate;
            self.best.mismatch = *m;
            return Ok(true);
        }
        Ok(false)
    }

    fn lower_degrees(&mut self) -> Result<bool> {
        let mut changed = false;
        for k in 0..self.best.instance.elems.len() {
            let role = self.runner.law.roles[k];
            while let Some(lower) = self.runner.lowered(role, &self.best.instance.elems[k]) {
                let mut cand = self.best.instance.clone();
                cand.elems[k] = lower;
                if !self.attempt(cand)? {
                    break;
                }
                changed = true;
            }
        }
        Ok(changed)
    }

    fn zero_parts(&mut self) -> Result<bool> {
        let mut changed = false;
        let slots = self.best.instance.elems.len() + 1;
        for k in 0..slots {
            let mut n = 0;
            loop {
                let current = self.slot(k).clone();
                if n >= parts(&current) {
                    break;
                }
                let mut cand = self.best.instance.clone();
                *Self::slot_mut(&mut cand, k) = drop_part(&current, n);
                if self.attempt(cand)? {
                    changed = true;
                } else {
                    n += 1;
                }
            }
        }
        Ok(changed)
    }

    fn slot(&self, k: usize) -> &GradedElement {
        self.best
            .instance
            .elems
            .get(k)
            .unwrap_or(&self.best.instance.mu)
    }

    fn slot_mut(inst: &mut Instance, k: usize) -> &mut GradedElement {
        if k < inst.elems.len() {
            &mut inst.elems[k]
        } else {
            &mut inst.mu
        }
    }
}

/// Greedily simplifies a failing witness: lower degrees first, then remove
/// coefficients, repeating until nothing changes. The result still fails.
pub fn shrink(runner: &Runner<'_>, witness: &Witness) -> Result<Witness> {
    let mut search = Search {
        runner,
        best: witness.clone(),
        spent: 0,
    };
    loop {
        let a = search.lower_degrees()?;
        let b = search.zero_parts()?;
        if !(a || b) || search.spent >= BUDGET {
            return Ok(search.best);
        }
    }
}
