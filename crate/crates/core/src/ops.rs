//! Bigrading calculus for the homology operations on configuration spaces.
//!
//! For an odd prime p, the homology of the disjoint union of the unordered
//! configuration spaces C_k(R^n) carries four operations:
//!
//! 1. a Pontryagin product, adding homological degrees and particle counts;
//! 2. Dyer-Lashof operations `Q^s`, defined on a class of degree q when
//!    `2s > q` and `2s - q <= n`, raising the degree by `2s(p-1)` and
//!    multiplying the particle count by p;
//! 3. the Bockstein twists `bQ^s`, subject to the same constraints and
//!    landing one degree lower;
//! 4. a Browder bracket, raising the degree by `n - 1` and adding counts.
//!
//! The case `2s = q` is excluded throughout: there `Q^s` is the p-th power
//! map, which the product already accounts for. This module implements the
//! operations as pure arithmetic on [`Bigrading`] values, plus the
//! admissibility checks; no chain-level data is ever touched.

use thiserror::Error;

use crate::scalar::{add, mul, nat, Natural};

/// Errors from operation arithmetic and its domain types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpsError {
    /// The operation calculus is developed for odd primes only.
    #[error("p = {0} is not an odd prime (need a prime p >= 3)")]
    InvalidPrime(u32),
    /// Ambient dimensions below 2 support none of the computations.
    #[error("ambient dimension n = {0} is out of range (need n >= 2)")]
    InvalidDimension(u32),
    /// `l(e,e)` denotes the Browder bracket of the point class with itself,
    /// which is a generator only in even ambient dimension.
    #[error("base class l(e,e) requires even ambient dimension, got n = {n}")]
    InvalidBase { n: u32 },
    /// A Dyer-Lashof exponent must be positive.
    #[error("Dyer-Lashof exponent s = 0 is not allowed (need s >= 1)")]
    InvalidExponent,
    /// An application failed `2s > q` or `2s - q <= n` on the accumulated
    /// bigrading. `position` is the index of the offending application in
    /// the word, counting from the innermost.
    #[error(
        "inadmissible application {app} at position {position}: source degree {degree} \
         requires 2s > {degree} and 2s - {degree} <= {n}"
    )]
    ConstraintViolation {
        app: DLApplication,
        position: usize,
        degree: String,
        n: u32,
    },
}

/// An odd prime p >= 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, OpsError> {
        if p >= 3 && p % 2 == 1 && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(OpsError::InvalidPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn to_nat<N: Natural>(self) -> N {
        nat(u64::from(self.0))
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The dimension n of the ambient Euclidean space R^n.
///
/// n >= 3 is where the slope-1 stability statements live; n = 2 is accepted
/// because the rational slope-1/2 computations still make sense there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientDim(u32);

impl AmbientDim {
    pub fn new(n: u32) -> Result<Self, OpsError> {
        if n >= 2 {
            Ok(AmbientDim(n))
        } else {
            Err(OpsError::InvalidDimension(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn to_nat<N: Natural>(self) -> N {
        nat(u64::from(self.0))
    }
}

impl std::fmt::Display for AmbientDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Degree parity, tracked alongside the degree so that the exterior/polynomial
/// distinction never needs a mod-2 recomputation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of<N: Natural>(degree: &N) -> Self {
        if degree.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The (homological degree, particle count) bigrading of a class in
/// `H_i(C_k(R^n))`, with the parity of the degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading<N: Natural> {
    degree: N,
    weight: N,
    parity: Parity,
}

impl<N: Natural> Bigrading<N> {
    /// Builds a bigrading. The weight (number of particles) must be positive.
    pub fn new(degree: N, weight: N) -> Self {
        assert!(!weight.is_zero(), "a bigrading must have positive weight");
        let parity = Parity::of(&degree);
        Bigrading {
            degree,
            weight,
            parity,
        }
    }

    pub fn degree(&self) -> &N {
        &self.degree
    }

    pub fn weight(&self) -> &N {
        &self.weight
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// A class in `H_i(C_j)` is unstable if `i >= j`.
    pub fn is_unstable(&self) -> bool {
        self.degree >= self.weight
    }
}

impl<N: Natural> std::fmt::Display for Bigrading<N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.degree, self.weight)
    }
}

/// One Dyer-Lashof application: `Q^s` or, with the Bockstein flag set, `bQ^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DLApplication {
    bockstein: bool,
    s: u64,
}

impl DLApplication {
    pub fn new(bockstein: bool, s: u64) -> Result<Self, OpsError> {
        if s == 0 {
            return Err(OpsError::InvalidExponent);
        }
        Ok(DLApplication { bockstein, s })
    }

    pub fn bockstein(self) -> bool {
        self.bockstein
    }

    pub fn exponent(self) -> u64 {
        self.s
    }
}

impl std::fmt::Display for DLApplication {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.bockstein {
            write!(f, "bQ{}", self.s)
        } else {
            write!(f, "Q{}", self.s)
        }
    }
}

/// The base of an operation word: the point class `e`, or the Browder
/// bracket `l(e,e)` of the point class with itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordBase {
    Point,
    Browder,
}

impl std::fmt::Display for WordBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WordBase::Point => write!(f, "e"),
            WordBase::Browder => write!(f, "l(e,e)"),
        }
    }
}

/// A formal operation word: a base class with a finite sequence of
/// Dyer-Lashof applications, stored innermost first.
///
/// The derived ordering (base, then the application list innermost-first) is
/// the canonical word encoding used for deterministic set ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationWord {
    base: WordBase,
    applications: Vec<DLApplication>,
}

impl OperationWord {
    pub fn new(base: WordBase, applications: Vec<DLApplication>) -> Self {
        OperationWord { base, applications }
    }

    /// The bare base class, with no applications.
    pub fn base_word(base: WordBase) -> Self {
        OperationWord {
            base,
            applications: Vec::new(),
        }
    }

    pub fn base(&self) -> WordBase {
        self.base
    }

    /// Applications innermost first.
    pub fn applications(&self) -> &[DLApplication] {
        &self.applications
    }

    /// Extends the word by one more (outermost) application.
    pub fn extended(&self, app: DLApplication) -> Self {
        let mut applications = self.applications.clone();
        applications.push(app);
        OperationWord {
            base: self.base,
            applications,
        }
    }

    pub fn is_base(&self) -> bool {
        self.applications.is_empty()
    }
}

impl std::fmt::Display for OperationWord {
    /// Renders outermost application first, base last: `bQ2 Q1 e`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for app in self.applications.iter().rev() {
            write!(f, "{} ", app)?;
        }
        write!(f, "{}", self.base)
    }
}

/// Bigrading of a base class: `e` is the class of a point in degree 0 and
/// weight 1; `l(e,e)` lives in degree n-1 and weight 2 and exists only for
/// even n.
pub fn base_bigrading<N: Natural>(base: WordBase, n: AmbientDim) -> Result<Bigrading<N>, OpsError> {
    match base {
        WordBase::Point => Ok(Bigrading::new(N::zero(), N::one())),
        WordBase::Browder => {
            if n.is_even() {
                let degree = nat::<N>(u64::from(n.get()) - 1);
                Ok(Bigrading::new(degree, nat(2)))
            } else {
                Err(OpsError::InvalidBase { n: n.get() })
            }
        }
    }
}

/// Admissibility of a single application on a source bigrading of degree q:
/// `2s > q` and `2s - q <= n` (equivalently `q < 2s <= n + q`).
///
/// Admissibility does not depend on the prime; `p` is part of the signature
/// because the operation it gates does.
pub fn check_application<N: Natural>(
    app: DLApplication,
    source: &Bigrading<N>,
    n: AmbientDim,
    _p: Prime,
) -> bool {
    let two_s: N = mul(&nat(2), &nat(app.s));
    let upper = add(&n.to_nat::<N>(), source.degree());
    *source.degree() < two_s && two_s <= upper
}

/// Applies `Q^s` (or `bQ^s`): degree goes up by `2s(p-1)` (minus 1 with the
/// Bockstein), weight is multiplied by p. Fails with the admissibility
/// constraint spelled out if the application is not allowed.
pub fn apply_dl<N: Natural>(
    app: DLApplication,
    source: &Bigrading<N>,
    n: AmbientDim,
    p: Prime,
) -> Result<Bigrading<N>, OpsError> {
    apply_dl_at(app, source, n, p, 0)
}

fn apply_dl_at<N: Natural>(
    app: DLApplication,
    source: &Bigrading<N>,
    n: AmbientDim,
    p: Prime,
    position: usize,
) -> Result<Bigrading<N>, OpsError> {
    if !check_application(app, source, n, p) {
        return Err(OpsError::ConstraintViolation {
            app,
            position,
            degree: source.degree().to_string(),
            n: n.get(),
        });
    }
    let jump: N = mul(&nat(2 * (u64::from(p.get()) - 1)), &nat(app.s));
    let mut degree = add(source.degree(), &jump);
    if app.bockstein {
        degree = degree
            .checked_sub(&N::one())
            .expect("bQ^s output degree is 2s(p-1)-1 >= 1 above the source");
    }
    let weight = mul(source.weight(), &p.to_nat());
    Ok(Bigrading::new(degree, weight))
}

/// Pontryagin product: degrees and weights add.
pub fn product_bigrading<N: Natural>(a: &Bigrading<N>, b: &Bigrading<N>) -> Bigrading<N> {
    Bigrading::new(add(a.degree(), b.degree()), add(a.weight(), b.weight()))
}

/// Browder bracket: degrees add plus n-1, weights add.
pub fn browder_bigrading<N: Natural>(
    a: &Bigrading<N>,
    b: &Bigrading<N>,
    n: AmbientDim,
) -> Bigrading<N> {
    let shift = nat::<N>(u64::from(n.get()) - 1);
    let degree = add(&add(a.degree(), b.degree()), &shift);
    Bigrading::new(degree, add(a.weight(), b.weight()))
}

/// Evaluates a whole word: the base bigrading followed by a left fold of the
/// applications, innermost first. The error identifies the first failing
/// application by position.
pub fn word_bigrading<N: Natural>(
    word: &OperationWord,
    n: AmbientDim,
    p: Prime,
) -> Result<Bigrading<N>, OpsError> {
    let mut current = base_bigrading::<N>(word.base(), n)?;
    for (position, app) in word.applications().iter().enumerate() {
        current = apply_dl_at(*app, &current, n, p, position)?;
    }
    Ok(current)
}

/// `i >= j` test on a bigrading; see [`Bigrading::is_unstable`].
pub fn is_unstable<N: Natural>(b: &Bigrading<N>) -> bool {
    b.is_unstable()
}
