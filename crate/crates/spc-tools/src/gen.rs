//! Seeded random structure generation.
//!
//! A draw picks each pair `i < j` of the strict positional order with the
//! configured density, closes transitively, and keeps the result when it
//! satisfies the `require` predicate; otherwise it redraws, up to a fixed
//! attempt budget. Everything is a pure function of the configuration, so
//! a (seed, n, density, require) tuple names one structure forever.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spc_core::limits::SizeGuard;
use spc_core::{Poset, SpcStructure};

/// How many redraws a single generate call may spend before giving up.
pub const MAX_ATTEMPTS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Require {
    /// Any partial order.
    Any,
    /// All sectional pseudocomplements exist.
    Spc,
    /// Sectionally pseudocomplemented, topped and strong.
    Strong,
    /// A lattice whose sections exist (which makes it strong).
    Lattice,
}

impl FromStr for Require {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "any" => Ok(Require::Any),
            "spc" => Ok(Require::Spc),
            "strong" => Ok(Require::Strong),
            "lattice" => Ok(Require::Lattice),
            other => Err(format!(
                "unknown requirement {other:?} (expected any, spc, strong or lattice)"
            )),
        }
    }
}

impl fmt::Display for Require {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Require::Any => "any",
            Require::Spc => "spc",
            Require::Strong => "strong",
            Require::Lattice => "lattice",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n: usize,
    pub density: f64,
    pub require: Require,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    TooLarge(SizeGuard),
    /// No draw satisfied the requirement within the attempt budget.
    GiveUp { attempts: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::TooLarge(g) => write!(f, "{g}"),
            GenError::GiveUp { attempts } => write!(
                f,
                "no structure satisfied the requirement in {attempts} draws; \
                 try another seed, size or density"
            ),
        }
    }
}

impl std::error::Error for GenError {}

fn draw(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Poset {
    let mut up = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                up[i] |= 1 << j;
            }
        }
    }
    for i in (0..n).rev() {
        let mut rest = up[i];
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            up[i] |= up[j];
        }
    }
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    Poset::from_relation(&labels, |i, j| i == j || up[i] >> j & 1 == 1)
        .expect("a transitively closed sub-order of the positional order")
}

fn satisfies(p: &Poset, require: Require) -> bool {
    match require {
        Require::Any => true,
        Require::Spc => SpcStructure::derive(p.clone()).is_ok(),
        Require::Strong => match SpcStructure::derive(p.clone()) {
            Ok(s) => s.top().is_some() && s.is_strong(),
            Err(_) => false,
        },
        Require::Lattice => p.is_lattice() && SpcStructure::derive(p.clone()).is_ok(),
    }
}

/// Generates the structure named by the configuration, bounded by
/// `guard` on the element count.
pub fn generate_with_guard(cfg: &GeneratorConfig, guard: usize) -> Result<Poset, GenError> {
    if cfg.n > guard || cfg.n > 64 {
        return Err(GenError::TooLarge(SizeGuard {
            n: cfg.n,
            limit: guard.min(64),
        }));
    }
    let density = cfg.density.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_ATTEMPTS {
        let p = draw(&mut rng, cfg.n, density);
        if satisfies(&p, cfg.require) {
            return Ok(p);
        }
    }
    Err(GenError::GiveUp { attempts: MAX_ATTEMPTS })
}

/// As [`generate_with_guard`] with the library default bound.
pub fn generate(cfg: &GeneratorConfig) -> Result<Poset, GenError> {
    generate_with_guard(cfg, spc_core::limits::DEFAULT_SIZE_GUARD)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, n: usize, density: f64, require: Require) -> GeneratorConfig {
        GeneratorConfig { seed, n, density, require }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(&cfg(1, 5, 0.5, Require::Strong)).unwrap();
        let b = generate(&cfg(1, 5, 0.5, Require::Strong)).unwrap();
        assert_eq!(a, b);
        let s = SpcStructure::derive(a).unwrap();
        assert!(s.is_strong());
        assert!(s.top().is_some());
    }

    #[test]
    fn different_seeds_eventually_differ() {
        let mut distinct = std::collections::HashSet::new();
        for seed in 0..20 {
            let p = generate(&cfg(seed, 6, 0.4, Require::Any)).unwrap();
            distinct.insert(format!("{p:?}"));
        }
        assert!(distinct.len() > 1);
    }

    #[test]
    fn singleton_ignores_density_and_requirement() {
        for require in [Require::Any, Require::Spc, Require::Strong, Require::Lattice] {
            let p = generate(&cfg(9, 1, 0.0, require)).unwrap();
            assert_eq!(p.n(), 1);
        }
    }

    #[test]
    fn the_only_two_element_lattice_is_the_chain() {
        let p = generate(&cfg(3, 2, 0.5, Require::Lattice)).unwrap();
        assert_eq!(p.hasse_covers().len(), 1);
    }

    #[test]
    fn impossible_requirements_give_up() {
        // Density zero on two elements always draws the antichain, which
        // is no lattice.
        assert_eq!(
            generate(&cfg(0, 2, 0.0, Require::Lattice)),
            Err(GenError::GiveUp { attempts: MAX_ATTEMPTS })
        );
    }

    #[test]
    fn guard_is_enforced() {
        assert!(matches!(
            generate_with_guard(&cfg(0, 30, 0.5, Require::Any), 24),
            Err(GenError::TooLarge(_))
        ));
    }

    #[test]
    fn requirements_are_respected_across_seeds() {
        for seed in 0..30 {
            let p = generate(&cfg(seed, 6, 0.5, Require::Spc)).unwrap();
            assert!(SpcStructure::derive(p).is_ok());
            let l = generate(&cfg(seed, 5, 0.6, Require::Lattice)).unwrap();
            assert!(l.is_lattice());
        }
    }
}
