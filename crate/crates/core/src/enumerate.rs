//! Enumeration of operation words up to degree and weight bounds.
//!
//! The generators of the homology of the union of all C_k(R^n) are drawn
//! from the set of formal words: iterated `Q^s` / `bQ^s` applications on the
//! point class `e` (and on `l(e,e)` when n is even), with zero applications
//! allowed. Both the degree and the weight of a word grow strictly under
//! every application, and each application multiplies the weight by p, so
//! all words other than the bases have weight in {p, 2p, p^2, 2p^2, ...};
//! the enumerator prunes on that before branching on the exponent s.

use std::sync::Arc;

use thiserror::Error;

use crate::ops::{
    apply_dl, base_bigrading, AmbientDim, Bigrading, DLApplication, OperationWord, Prime, WordBase,
};
use crate::scalar::{add, mul, nat, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("invalid enumeration bounds: max_weight must be >= 1")]
    InvalidBounds,
}

/// Truncation bounds for an enumeration: maximum homological degree D and
/// maximum weight (particle count) K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBounds<N: Natural> {
    max_degree: N,
    max_weight: N,
}

impl<N: Natural> EnumerationBounds<N> {
    pub fn new(max_degree: N, max_weight: N) -> Result<Self, EnumerateError> {
        if max_weight.is_zero() {
            return Err(EnumerateError::InvalidBounds);
        }
        Ok(EnumerationBounds {
            max_degree,
            max_weight,
        })
    }

    pub fn max_degree(&self) -> &N {
        &self.max_degree
    }

    pub fn max_weight(&self) -> &N {
        &self.max_weight
    }

    pub fn contains(&self, b: &Bigrading<N>) -> bool {
        *b.degree() <= self.max_degree && *b.weight() <= self.max_weight
    }
}

/// Which words count as generators.
///
/// `FormalS` takes every word passing the per-application constraints. A
/// `Custom` predicate can restrict to any subset; the base classes are kept
/// regardless, since every generator model contains them.
#[derive(Clone)]
#[derive(Default)]
pub enum AdmissibilityMode {
    #[default]
    FormalS,
    Custom {
        name: String,
        predicate: Arc<dyn Fn(&OperationWord) -> bool + Send + Sync>,
    },
}

impl AdmissibilityMode {
    pub fn name(&self) -> &str {
        match self {
            AdmissibilityMode::FormalS => "formal-s",
            AdmissibilityMode::Custom { name, .. } => name,
        }
    }

    fn accepts(&self, word: &OperationWord) -> bool {
        match self {
            AdmissibilityMode::FormalS => true,
            AdmissibilityMode::Custom { predicate, .. } => predicate(word),
        }
    }
}


impl std::fmt::Debug for AdmissibilityMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AdmissibilityMode({})", self.name())
    }
}

/// A generator: an operation word with its evaluated bigrading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator<N: Natural> {
    pub word: OperationWord,
    pub bigrading: Bigrading<N>,
}

/// The enumerated generators for one (n, p, bounds, mode) configuration,
/// in the canonical order: by weight, then degree, then word encoding.
#[derive(Debug, Clone)]
pub struct GeneratorSet<N: Natural> {
    generators: Vec<Generator<N>>,
    n: AmbientDim,
    p: Prime,
    bounds: EnumerationBounds<N>,
    mode: AdmissibilityMode,
}

impl<N: Natural> GeneratorSet<N> {
    pub fn generators(&self) -> &[Generator<N>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn n(&self) -> AmbientDim {
        self.n
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn bounds(&self) -> &EnumerationBounds<N> {
        &self.bounds
    }

    pub fn mode(&self) -> &AdmissibilityMode {
        &self.mode
    }

    pub fn contains_word(&self, word: &OperationWord) -> bool {
        self.generators.iter().any(|g| g.word == *word)
    }

    /// Line-oriented text form: `weight<TAB>degree<TAB>word`, one generator
    /// per line in canonical order, LF endings.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                g.bigrading.weight(),
                g.bigrading.degree(),
                g.word
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let generators: Vec<serde_json::Value> = self
            .generators
            .iter()
            .map(|g| {
                serde_json::json!({
                    "weight": g.bigrading.weight().to_string(),
                    "degree": g.bigrading.degree().to_string(),
                    "word": g.word.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n.get(),
            "p": self.p.get(),
            "max_degree": self.bounds.max_degree().to_string(),
            "max_weight": self.bounds.max_weight().to_string(),
            "mode": self.mode.name(),
            "generators": generators,
        })
    }
}

/// The base classes: `{e}` for odd n, `{e, l(e,e)}` for even n.
pub fn base_classes(n: AmbientDim) -> Vec<WordBase> {
    if n.is_even() {
        vec![WordBase::Point, WordBase::Browder]
    } else {
        vec![WordBase::Point]
    }
}

/// Enumerates every word whose bigrading satisfies degree <= D and
/// weight <= K, filtered by the admissibility mode (bases are always kept).
///
/// Every operation strictly increases degree and weight, so a word within
/// bounds has all its prefixes within bounds; depth-first expansion with
/// immediate pruning is therefore complete. The result is duplicate-free and
/// canonically ordered.
pub fn enumerate_generators<N: Natural>(
    n: AmbientDim,
    p: Prime,
    bounds: EnumerationBounds<N>,
    mode: AdmissibilityMode,
) -> GeneratorSet<N> {
    let mut generators: Vec<Generator<N>> = Vec::new();
    for base in base_classes(n) {
        let bigrading = base_bigrading::<N>(base, n).expect("base_classes only yields valid bases");
        if !bounds.contains(&bigrading) {
            continue;
        }
        let word = OperationWord::base_word(base);
        generators.push(Generator {
            word: word.clone(),
            bigrading: bigrading.clone(),
        });
        expand(&word, &bigrading, n, p, &bounds, &mode, &mut generators);
    }

    generators.sort_by(|a, b| {
        (a.bigrading.weight(), a.bigrading.degree(), &a.word).cmp(&(
            b.bigrading.weight(),
            b.bigrading.degree(),
            &b.word,
        ))
    });
    debug_assert!(generators.windows(2).all(|w| w[0].word != w[1].word));

    GeneratorSet {
        generators,
        n,
        p,
        bounds,
        mode,
    }
}

fn expand<N: Natural>(
    word: &OperationWord,
    source: &Bigrading<N>,
    n: AmbientDim,
    p: Prime,
    bounds: &EnumerationBounds<N>,
    mode: &AdmissibilityMode,
    out: &mut Vec<Generator<N>>,
) {
    // Weight is multiplied by p regardless of s: prune the whole branch first.
    let child_weight = mul(source.weight(), &p.to_nat());
    if child_weight > *bounds.max_weight() {
        return;
    }

    // Admissible exponents: q < 2s <= n + q, i.e. floor(q/2)+1 <= s <= floor((n+q)/2).
    let q = source.degree();
    let two: N = nat(2);
    let s_min = add(&num_integer::Integer::div_floor(q, &two), &N::one());
    let s_max = num_integer::Integer::div_floor(&add(&n.to_nat(), q), &two);
    let s_min = s_min
        .to_u64()
        .expect("Dyer-Lashof exponent exceeds the u64 range");
    let s_max = s_max
        .to_u64()
        .expect("Dyer-Lashof exponent exceeds the u64 range");

    for s in s_min..=s_max {
        // bQ^s lands one degree below Q^s; once it leaves the degree bound,
        // larger s cannot come back (degree grows with s).
        let mut any_within = false;
        for bockstein in [false, true] {
            let app = DLApplication::new(bockstein, s).expect("s >= 1 by construction");
            let child =
                apply_dl(app, source, n, p).expect("exponent chosen within the admissible range");
            if *child.degree() > *bounds.max_degree() {
                continue;
            }
            any_within = true;
            let child_word = word.extended(app);
            if mode.accepts(&child_word) {
                out.push(Generator {
                    word: child_word.clone(),
                    bigrading: child.clone(),
                });
            }
            // Expansion continues below filtered-out words: the mode selects
            // generators, not which formal words exist.
            expand(&child_word, &child, n, p, bounds, mode, out);
        }
        if !any_within {
            break;
        }
    }
}
