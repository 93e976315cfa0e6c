use std::fmt;

use rand::Rng;

use crate::calculus::PreOperadContext;
use crate::error::Result;
use crate::operad::PreOperad;

/// A composition word over numbered generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Gen(usize),
    Comp(Box<Word>, Box<Word>, usize),
    Cup(Box<Word>, Box<Word>),
    Bul(Box<Word>, Box<Word>),
}

impl Word {
    /// Vertices of the trees the word expands to; each cup contributes `μ`.
    pub fn vertices(&self) -> usize {
        match self {
            Word::Gen(_) => 1,
            Word::Comp(a, b, _) | Word::Bul(a, b) => a.vertices() + b.vertices(),
            Word::Cup(a, b) => 1 + a.vertices() + b.vertices(),
        }
    }

    pub fn degree(&self, degrees: &[usize]) -> usize {
        match self {
            Word::Gen(k) => degrees[*k],
            Word::Comp(a, b, _) | Word::Bul(a, b) => a.degree(degrees) + b.degree(degrees) - 1,
            Word::Cup(a, b) => a.degree(degrees) + b.degree(degrees),
        }
    }

    /// A random word with at most `max_vertices` vertices and result degree
    /// at most `max_degree` (falling back to a single generator).
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        degrees: &[usize],
        max_vertices: usize,
        max_degree: usize,
    ) -> Word {
        for _ in 0..32 {
            let v = rng.random_range(1..=max_vertices.max(1));
            let w = Self::grow(rng, degrees, v);
            if w.degree(degrees) <= max_degree {
                return w;
            }
        }
        Word::Gen(0)
    }

    fn grow<R: Rng + ?Sized>(rng: &mut R, degrees: &[usize], v: usize) -> Word {
        if v <= 1 {
            return Word::Gen(rng.random_range(0..degrees.len()));
        }
        let choice = if v >= 3 {
            rng.random_range(0..3)
        } else {
            rng.random_range(0..2)
        };
        match choice {
            0 => {
                let left = rng.random_range(1..v);
                let a = Self::grow(rng, degrees, left);
                let b = Self::grow(rng, degrees, v - left);
                let i = rng.random_range(0..a.degree(degrees));
                Word::Comp(Box::new(a), Box::new(b), i)
            }
            1 => {
                let left = rng.random_range(1..v);
                Word::Bul(
                    Box::new(Self::grow(rng, degrees, left)),
                    Box::new(Self::grow(rng, degrees, v - left)),
                )
            }
            _ => {
                let left = rng.random_range(1..v - 1);
                Word::Cup(
                    Box::new(Self::grow(rng, degrees, left)),
                    Box::new(Self::grow(rng, degrees, v - 1 - left)),
                )
            }
        }
    }

    pub fn eval<O: PreOperad>(
        &self,
        ctx: &PreOperadContext<O>,
        gens: &[O::Elem],
    ) -> Result<O::Elem> {
        match self {
            Word::Gen(k) => Ok(gens[*k].clone()),
            Word::Comp(a, b, i) => ctx.comp(&a.eval(ctx, gens)?, &b.eval(ctx, gens)?, *i),
            Word::Cup(a, b) => ctx.cup(&a.eval(ctx, gens)?, &b.eval(ctx, gens)?),
            Word::Bul(a, b) => ctx.bullet(&a.eval(ctx, gens)?, &b.eval(ctx, gens)?),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(k) => write!(f, "{}", (b'a' + *k as u8) as char),
            Word::Comp(a, b, i) => write!(f, "comp({a}, {b}, {i})"),
            Word::Cup(a, b) => write!(f, "cup({a}, {b})"),
            Word::Bul(a, b) => write!(f, "bul({a}, {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn words_respect_limits() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let degs = [1, 2, 3];
        for _ in 0..500 {
            let w = Word::random(&mut rng, &degs, 4, 8);
            assert!(w.vertices() <= 4, "{w}");
            assert!(w.degree(&degs) <= 8, "{w}");
        }
    }
}
