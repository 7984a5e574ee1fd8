//! Stability diagnostics on computed Hilbert tables.
//!
//! The add-a-particle map C_k -> C_{k+1} acts on basis monomials as
//! multiplication by the point class e. It is injective on homology, so on
//! the table it shows up as columnwise dimension monotonicity, and it is
//! surjective in degree i exactly when every weight-(k+1) monomial of degree
//! i has an e factor. The number of e-free monomials at (i, k+1) is
//! therefore dim(i, k+1) - dim(i, k), which lets every check here run on
//! the table alone:
//!
//! - [`empirical_range`] reads off the observed stable range r(k);
//! - [`check_theorem_range`] tests the slope-1 claim r(k) >= k (with the
//!   slope-1/2 fallback reported when it fails);
//! - [`verify_unstable_facts`] certifies the three instability facts that
//!   prove the slope-1 range on the generator level;
//! - [`z_half_report`] aggregates sampled odd primes plus Q into the
//!   Z[1/2]-coefficient conclusion, with the sampling caveat attached.

use thiserror::Error;

use crate::enumerate::GeneratorSet;
use crate::hilbert::{Coefficients, HilbertTable};
use crate::ops::{
    apply_dl, check_application, product_bigrading, AmbientDim, Bigrading, DLApplication, Prime,
    WordBase,
};
use crate::scalar::{add, nat, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("weight {weight} has no successor column within validity bound {max_weight}")]
    OutOfBounds { weight: String, max_weight: String },
    #[error("tables disagree on (n, max_degree, max_weight): {0}")]
    MismatchedBounds(String),
    #[error("table is not a valid dimension table: {0}")]
    InvalidTable(String),
    #[error("{0}")]
    InvalidInput(String),
}

/// Caveat attached to every aggregated Z[1/2] conclusion: the computation
/// samples finitely many primes, while the statement quantifies over all of
/// them.
pub const SAMPLED_PRIMES_CAVEAT: &str = "sampled primes only: the tables certify the claim for \
     the listed odd primes and Q; the full Z[1/2] statement quantifies over all odd primes";

/// Default primes sampled by the Z[1/2] aggregation.
pub const DEFAULT_SAMPLED_PRIMES: [u32; 4] = [3, 5, 7, 11];

/// An observed stable range value at one weight.
///
/// `Bounded(r)` means surjectivity holds through degree r and fails at r+1.
/// `AtLeast(d)` means no obstruction is visible within the table's degree
/// validity d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeValue<N: Natural> {
    Bounded(N),
    AtLeast(N),
}

impl<N: Natural> RangeValue<N> {
    /// The guaranteed part of the range (the clamp value for `AtLeast`).
    pub fn floor(&self) -> &N {
        match self {
            RangeValue::Bounded(v) | RangeValue::AtLeast(v) => v,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, RangeValue::Bounded(_))
    }

    /// True when the range is known to reach degree `target`.
    pub fn covers(&self, target: &N) -> bool {
        *self.floor() >= *target
    }
}

impl<N: Natural> std::fmt::Display for RangeValue<N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RangeValue::Bounded(v) => write!(f, "{v}"),
            RangeValue::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeProvenance {
    Empirical,
    Certified,
    Hypothesis,
}

impl std::fmt::Display for RangeProvenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RangeProvenance::Empirical => write!(f, "empirical"),
            RangeProvenance::Certified => write!(f, "certified"),
            RangeProvenance::Hypothesis => write!(f, "hypothesis"),
        }
    }
}

/// A per-weight stable range r(k), with how it was obtained. The weight k is
/// the position in `values`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeFunction<N: Natural> {
    values: Vec<RangeValue<N>>,
    provenance: RangeProvenance,
}

impl<N: Natural> RangeFunction<N> {
    pub fn new(values: Vec<RangeValue<N>>, provenance: RangeProvenance) -> Self {
        RangeFunction { values, provenance }
    }

    pub fn provenance(&self) -> RangeProvenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, k: usize) -> Option<&RangeValue<N>> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[RangeValue<N>] {
        &self.values
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "provenance": self.provenance.to_string(),
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Outcome of checking one instability fact over a family of cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactReport {
    pub checked: u64,
    pub counterexamples: Vec<String>,
}

impl FactReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// The three instability facts behind the slope-1 range: single applications
/// on the bases (and the bracket itself) are unstable; admissible
/// applications preserve instability; products preserve it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub leaves: FactReport,
    pub applications: FactReport,
    pub products: FactReport,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.leaves.pass() && self.applications.pass() && self.products.pass()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fact = |f: &FactReport| {
            serde_json::json!({
                "checked": f.checked,
                "pass": f.pass(),
                "counterexamples": f.counterexamples,
            })
        };
        serde_json::json!({
            "leaves": fact(&self.leaves),
            "applications": fact(&self.applications),
            "products": fact(&self.products),
            "pass": self.pass(),
        })
    }
}

/// Fact check: `Q^s z` and `bQ^s z` are unstable for every admissible s on
/// every bigrading in the list. The list is taken at face value as a list of
/// unstable classes, so feeding a stable one in exercises the detector.
pub fn check_applications_unstable<N: Natural>(
    bigradings: &[Bigrading<N>],
    n: AmbientDim,
    p: Prime,
) -> FactReport {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for source in bigradings {
        let two: N = nat(2);
        let s_min = add(
            &num_integer::Integer::div_floor(source.degree(), &two),
            &N::one(),
        )
        .to_u64()
        .expect("exponent exceeds u64");
        let s_max = num_integer::Integer::div_floor(&add(&n.to_nat(), source.degree()), &two)
            .to_u64()
            .expect("exponent exceeds u64");
        for s in s_min..=s_max {
            for bockstein in [false, true] {
                let app = DLApplication::new(bockstein, s).expect("s >= 1");
                if !check_application(app, source, n, p) {
                    continue;
                }
                checked += 1;
                let out = apply_dl(app, source, n, p).expect("admissibility just checked");
                if !out.is_unstable() {
                    counterexamples.push(format!("{app} on {source} gives stable {out}"));
                }
            }
        }
    }
    FactReport {
        checked,
        counterexamples,
    }
}

/// Fact check: the product of any two classes from the list (self-pairs
/// included) is unstable. The list is taken at face value, so an injected
/// stable class is flagged through its products.
pub fn check_products_unstable<N: Natural>(bigradings: &[Bigrading<N>]) -> FactReport {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for (i, a) in bigradings.iter().enumerate() {
        for b in &bigradings[i..] {
            checked += 1;
            let prod = product_bigrading(a, b);
            if !prod.is_unstable() {
                counterexamples.push(format!("product {a} * {b} = {prod} is not unstable"));
            }
        }
    }
    FactReport {
        checked,
        counterexamples,
    }
}

/// Runs the three instability facts over an enumerated generator set.
pub fn verify_unstable_facts<N: Natural>(gens: &GeneratorSet<N>) -> LemmaReport {
    let mut leaves = FactReport {
        checked: 0,
        counterexamples: Vec::new(),
    };
    for g in gens.generators() {
        let single_application = g.word.applications().len() == 1;
        let browder_base = g.word.is_base() && g.word.base() == WordBase::Browder;
        if single_application || browder_base {
            leaves.checked += 1;
            if !g.bigrading.is_unstable() {
                leaves
                    .counterexamples
                    .push(format!("{} at {} is not unstable", g.word, g.bigrading));
            }
        }
    }

    let mut unstable: Vec<Bigrading<N>> = gens
        .generators()
        .iter()
        .map(|g| g.bigrading.clone())
        .filter(Bigrading::is_unstable)
        .collect();
    unstable.sort();
    unstable.dedup();

    let applications = check_applications_unstable(&unstable, gens.n(), gens.p());
    let products = check_products_unstable(&unstable);

    LemmaReport {
        leaves,
        applications,
        products,
    }
}

/// Columnwise injectivity at the dimension level: dim(i, k) <= dim(i, k+1)
/// for every i and k within validity. Violations are returned, not asserted.
pub fn check_injectivity<N: Natural>(table: &HilbertTable<N>) -> Vec<String> {
    let mut violations = Vec::new();
    let mut k = N::zero();
    while add(&k, &N::one()) <= *table.max_weight() {
        let next = add(&k, &N::one());
        for (degree, dim) in table.column(&k) {
            let succ = table
                .dim(degree, &next)
                .expect("within validity by construction");
            if succ < *dim {
                violations.push(format!(
                    "dim({degree}, {k}) = {dim} drops to {succ} at weight {next}"
                ));
            }
        }
        k = next;
    }
    violations
}

/// The observed stable range at weight k: one less than the smallest degree
/// where the weight-(k+1) column outgrows the weight-k column (equivalently,
/// the smallest degree of an e-free weight-(k+1) monomial), clamped to the
/// table's degree validity when no obstruction is visible.
pub fn empirical_range<N: Natural>(
    table: &HilbertTable<N>,
    k: &N,
) -> Result<RangeValue<N>, StabilityError> {
    let next = add(k, &N::one());
    if next > *table.max_weight() {
        return Err(StabilityError::OutOfBounds {
            weight: k.to_string(),
            max_weight: table.max_weight().to_string(),
        });
    }
    let mut i = N::zero();
    loop {
        let lo = table.dim(&i, k).expect("degree within bounds");
        let hi = table.dim(&i, &next).expect("degree within bounds");
        if hi < lo {
            return Err(StabilityError::InvalidTable(format!(
                "dimension drop at ({i}, {k}) -> ({i}, {next}): {lo} -> {hi}"
            )));
        }
        if hi > lo {
            let r = i.checked_sub(&N::one()).ok_or_else(|| {
                StabilityError::InvalidTable(
                    "obstruction in degree 0, impossible over the point class".to_string(),
                )
            })?;
            return Ok(RangeValue::Bounded(r));
        }
        if i == *table.max_degree() {
            return Ok(RangeValue::AtLeast(i));
        }
        i = add(&i, &N::one());
    }
}

/// Empirical ranges for every weight with a successor column in the table.
pub fn empirical_range_function<N: Natural>(
    table: &HilbertTable<N>,
) -> Result<RangeFunction<N>, StabilityError> {
    let mut values = Vec::new();
    let mut k = N::zero();
    while add(&k, &N::one()) <= *table.max_weight() {
        values.push(empirical_range(table, &k)?);
        k = add(&k, &N::one());
    }
    Ok(RangeFunction::new(values, RangeProvenance::Empirical))
}

/// Report of the slope-1 range check on one table.
#[derive(Debug, Clone)]
pub struct TheoremRangeReport<N: Natural> {
    pub claim: String,
    pub n: AmbientDim,
    pub coeff: Coefficients,
    pub max_degree: N,
    pub max_weight: N,
    /// Overall slope-1 verdict: r(k) >= k wherever the table can see it.
    pub pass: bool,
    /// Weights observed, as (k, r(k)).
    pub ranges: Vec<(N, RangeValue<N>)>,
    /// First blocked degree per failing weight, as (i, k) with i <= k.
    pub counterexamples: Vec<(N, N)>,
    /// The slope-1/2 fallback r(k) >= floor(k/2).
    pub half_slope_pass: bool,
    pub half_slope_counterexamples: Vec<(N, N)>,
    pub injectivity_violations: Vec<String>,
    /// Soft observation, reported but never fatal: r is non-decreasing in k
    /// over the weights where it is bounded.
    pub monotonicity_notes: Vec<String>,
    pub caveats: Vec<String>,
}

impl<N: Natural> TheoremRangeReport<N> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "claim": self.claim,
            "grid": {
                "n": self.n.get(),
                "coeff": self.coeff.to_string(),
                "max_degree": self.max_degree.to_string(),
                "max_weight": self.max_weight.to_string(),
            },
            "pass": self.pass,
            "ranges": self
                .ranges
                .iter()
                .map(|(k, r)| serde_json::json!({"k": k.to_string(), "r": r.to_string()}))
                .collect::<Vec<_>>(),
            "counterexamples": self
                .counterexamples
                .iter()
                .map(|(i, k)| serde_json::json!({"i": i.to_string(), "k": k.to_string()}))
                .collect::<Vec<_>>(),
            "half_slope": {
                "pass": self.half_slope_pass,
                "counterexamples": self
                    .half_slope_counterexamples
                    .iter()
                    .map(|(i, k)| serde_json::json!({"i": i.to_string(), "k": k.to_string()}))
                    .collect::<Vec<_>>(),
            },
            "injectivity_violations": self.injectivity_violations,
            "monotonicity_notes": self.monotonicity_notes,
            "caveats": self.caveats,
        })
    }
}

/// Checks the slope-1 range r(k) >= k on every weight the table can see
/// (k + 1 <= max_weight and k <= max_degree), recording failures as the
/// first blocked bidegree, and evaluates the slope-1/2 fallback alongside.
pub fn check_theorem_range<N: Natural>(
    table: &HilbertTable<N>,
) -> Result<TheoremRangeReport<N>, StabilityError> {
    let two: N = nat(2);
    let mut ranges = Vec::new();
    let mut counterexamples = Vec::new();
    let mut half_counterexamples = Vec::new();

    let mut k = N::zero();
    while add(&k, &N::one()) <= *table.max_weight() && k <= *table.max_degree() {
        let r = empirical_range(table, &k)?;
        if !r.covers(&k) {
            let blocked = add(r.floor(), &N::one());
            counterexamples.push((blocked, k.clone()));
        }
        let half = num_integer::Integer::div_floor(&k, &two);
        if !r.covers(&half) {
            let blocked = add(r.floor(), &N::one());
            half_counterexamples.push((blocked, k.clone()));
        }
        ranges.push((k.clone(), r));
        k = add(&k, &N::one());
    }

    // Monotonicity of the bounded values, reported as notes only.
    let mut monotonicity_notes = Vec::new();
    let bounded: Vec<(&N, &N)> = ranges
        .iter()
        .filter(|(_, r)| r.is_bounded())
        .map(|(k, r)| (k, r.floor()))
        .collect();
    for w in bounded.windows(2) {
        if w[1].1 < w[0].1 {
            monotonicity_notes.push(format!(
                "observed range decreases: r({}) = {} but r({}) = {}",
                w[0].0, w[0].1, w[1].0, w[1].1
            ));
        }
    }

    let mut caveats = Vec::new();
    if let Some(c) = table.caveat() {
        caveats.push(c.to_string());
    }
    if table.n().get() < 3 {
        caveats.push(
            "the slope-1 range is asserted for ambient dimension >= 3 only; below that the \
             slope-1/2 fallback is the applicable claim"
                .to_string(),
        );
    }

    let pass = counterexamples.is_empty();
    let half_slope_pass = half_counterexamples.is_empty();
    Ok(TheoremRangeReport {
        claim: format!(
            "adding a particle induces H_i(C_k(R^{}); {}) -> H_i(C_(k+1)) isomorphisms for i <= k",
            table.n().get(),
            table.coeff()
        ),
        n: table.n(),
        coeff: table.coeff(),
        max_degree: table.max_degree().clone(),
        max_weight: table.max_weight().clone(),
        pass,
        ranges,
        counterexamples,
        half_slope_pass,
        half_slope_counterexamples: half_counterexamples,
        injectivity_violations: check_injectivity(table),
        monotonicity_notes,
        caveats,
    })
}

/// Aggregated conclusion over sampled odd primes plus the rationals.
#[derive(Debug, Clone)]
pub struct ZHalfReport<N: Natural> {
    pub claim: String,
    pub n: AmbientDim,
    pub max_degree: N,
    pub max_weight: N,
    pub per_coefficient: Vec<(String, bool)>,
    pub pass: bool,
    pub counterexamples: Vec<String>,
    pub caveats: Vec<String>,
}

impl<N: Natural> ZHalfReport<N> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "claim": self.claim,
            "grid": {
                "n": self.n.get(),
                "max_degree": self.max_degree.to_string(),
                "max_weight": self.max_weight.to_string(),
            },
            "per_coefficient": self
                .per_coefficient
                .iter()
                .map(|(c, pass)| serde_json::json!({"coeff": c, "pass": pass}))
                .collect::<Vec<_>>(),
            "pass": self.pass,
            "counterexamples": self.counterexamples,
            "caveats": self.caveats,
        })
    }
}

/// Combines tables over sampled odd primes and Q, all sharing (n, D, K),
/// into the Z[1/2] stability verdict. Passing needs every sampled table to
/// pass the slope-1 check; the sampling caveat is always attached.
pub fn z_half_report<N: Natural>(
    tables: &[HilbertTable<N>],
) -> Result<ZHalfReport<N>, StabilityError> {
    let first = tables
        .first()
        .ok_or_else(|| StabilityError::InvalidInput("no tables supplied".to_string()))?;
    let n = first.n();
    if n.get() < 3 {
        return Err(StabilityError::InvalidInput(format!(
            "the Z[1/2] slope-1 claim needs ambient dimension >= 3, got n = {}",
            n.get()
        )));
    }
    for t in tables {
        if t.n() != n
            || t.max_degree() != first.max_degree()
            || t.max_weight() != first.max_weight()
        {
            return Err(StabilityError::MismatchedBounds(format!(
                "(n={}, D={}, K={}) vs (n={}, D={}, K={})",
                n.get(),
                first.max_degree(),
                first.max_weight(),
                t.n().get(),
                t.max_degree(),
                t.max_weight()
            )));
        }
    }
    let primes: Vec<String> = tables
        .iter()
        .filter_map(|t| match t.coeff() {
            Coefficients::Fp(p) => Some(p.to_string()),
            Coefficients::Rational => None,
        })
        .collect();
    if primes.is_empty() || primes.len() == tables.len() {
        return Err(StabilityError::InvalidInput(
            "need at least one odd-prime table and the rational table".to_string(),
        ));
    }

    let mut per_coefficient = Vec::new();
    let mut counterexamples = Vec::new();
    for t in tables {
        let report = check_theorem_range(t)?;
        for (i, k) in &report.counterexamples {
            counterexamples.push(format!(
                "coeff {}: surjectivity fails at (i, k) = ({i}, {k})",
                t.coeff()
            ));
        }
        per_coefficient.push((t.coeff().to_string(), report.pass));
    }
    let pass = per_coefficient.iter().all(|(_, p)| *p);

    Ok(ZHalfReport {
        claim: format!(
            "adding a particle induces H_i(C_k(R^{}); Z[1/2]) -> H_i(C_(k+1)) isomorphisms \
             for i <= k",
            n.get()
        ),
        n,
        max_degree: first.max_degree().clone(),
        max_weight: first.max_weight().clone(),
        per_coefficient,
        pass,
        counterexamples,
        caveats: vec![format!(
            "{SAMPLED_PRIMES_CAVEAT} (sampled: {}, Q)",
            primes.join(", ")
        )],
    })
}
