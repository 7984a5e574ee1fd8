//! Certified stability ranges for open manifolds built from R^n.
//!
//! Let M carry a closed subspace X of dimension d (codimension q = n - d)
//! with M \ X homeomorphic to R^n. Filtering C_k(M) by the number of points
//! in X, the stratum with j points in X looks like C_{k-j}(R^n) x C_j(X).
//! In compactly supported cohomology the R^n factor stabilizes from degree
//! `n(k-j+1) - r(k-j)` up (where r is the stable range on R^n, dualized via
//! [`dual_degree`]), while the X factor vanishes above degree `d*j`
//! ([`x_vanishing_bound`]). Chasing the worst stratum through the long exact
//! sequences and dualizing back to homology gives the certified range
//!
//! ```text
//! r_M(k) = min over 0 <= j <= k of ( r(k - j) + q * j )
//! ```
//!
//! [`certify_range`] computes that closed form; [`certify_range_by_induction`]
//! replays the literal downward induction over strata and must agree. With
//! the slope-1 input r(m) = m and q = 1 the formula returns r_M(k) = k, and
//! as k grows the certified slope tends to min(input slope, q) — over Q that
//! is min(q, (n-1)/2), over F_p it is capped by (2(p-1)-1)/p < 2 from the
//! weight-p generators ([`rn_slope`]).
//!
//! Nothing here computes any cohomology: the certificate is exact degree
//! bookkeeping on top of a stable range for R^n.

use num_rational::Ratio;
use thiserror::Error;

use crate::hilbert::Coefficients;
use crate::ops::AmbientDim;
use crate::scalar::{add, mul, nat, Natural};
use crate::stability::{RangeFunction, RangeProvenance, RangeValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("complement dimension {x_dim} is out of range for ambient dimension {n} (need 0 <= dim X <= n-1)")]
    InvalidProfile { x_dim: u32, n: u32 },
    #[error("degree {degree} exceeds the dimension {top} of C_(k+1)(M)")]
    OutOfRange { degree: String, top: String },
    #[error("{0}")]
    InvalidInput(String),
}

/// The geometry entering the certificate: the ambient dimension and the
/// dimension of the complement X. Only dim X matters for the bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementProfile {
    n: AmbientDim,
    x_dim: u32,
}

impl ComplementProfile {
    pub fn new(n: AmbientDim, x_dim: u32) -> Result<Self, CertifyError> {
        if x_dim + 1 > n.get() {
            return Err(CertifyError::InvalidProfile { x_dim, n: n.get() });
        }
        Ok(ComplementProfile { n, x_dim })
    }

    pub fn n(&self) -> AmbientDim {
        self.n
    }

    pub fn x_dim(&self) -> u32 {
        self.x_dim
    }

    /// q = n - dim X >= 1.
    pub fn codimension(&self) -> u32 {
        self.n.get() - self.x_dim
    }
}

/// Coefficient orientation bookkeeping. Twisting by the orientation system
/// (needed when the configuration spaces are not orientable) changes none of
/// the degree arithmetic; the flag is carried for the record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Trivial,
    Twisted,
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Orientation::Trivial => write!(f, "trivial"),
            Orientation::Twisted => write!(f, "twisted"),
        }
    }
}

/// Note attached to every certificate about the boundary degree.
pub const BOUNDARY_NOTE: &str = "the certified range includes its boundary degree: at i = r(k) \
     the duality bookkeeping yields surjectivity only, and injectivity of the add-a-particle \
     map upgrades it to an isomorphism";

/// A certified stability range for C_k(M), with the input it was derived
/// from and the minimizing stratum index per weight.
#[derive(Debug, Clone)]
pub struct Certificate<N: Natural> {
    pub profile: ComplementProfile,
    pub orientation: Orientation,
    pub input: RangeFunction<N>,
    pub certified: RangeFunction<N>,
    /// Per weight k, the stratum index j attaining the minimum (smallest on
    /// ties).
    pub trace: Vec<u64>,
    pub notes: Vec<String>,
}

impl<N: Natural> Certificate<N> {
    /// certified r(k) / k as an exact rational, for slope inspection.
    pub fn slope_at(&self, k: usize) -> Option<Ratio<u64>> {
        if k == 0 {
            return None;
        }
        let r = self.certified.value(k)?.floor().to_u64()?;
        Some(Ratio::new(r, k as u64))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.profile.n().get(),
            "q": self.profile.codimension(),
            "x_dim": self.profile.x_dim(),
            "orientation": self.orientation.to_string(),
            "input_range": self.input.to_json(),
            "certified_range": self
                .certified
                .values()
                .iter()
                .enumerate()
                .map(|(k, r)| serde_json::json!({"k": k, "r": r.to_string()}))
                .collect::<Vec<_>>(),
            "trace": self
                .trace
                .iter()
                .enumerate()
                .map(|(k, j)| serde_json::json!({"k": k, "j": j}))
                .collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    /// `k<TAB>r<TAB>j` lines, LF endings.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (k, (r, j)) in self.certified.values().iter().zip(&self.trace).enumerate() {
            out.push_str(&format!("{k}\t{r}\t{j}\n"));
        }
        out
    }
}

/// Poincare dual of homological degree i on C_{k+1}(M): the compactly
/// supported cohomological degree `n(k+1) - i` on an n(k+1)-manifold.
/// A homology range i <= r(k) is the same as a compactly supported range
/// i' >= n(k+1) - r(k).
pub fn dual_degree<N: Natural>(i: &N, k: &N, n: AmbientDim) -> Result<N, CertifyError> {
    let top = mul(&n.to_nat::<N>(), &add(k, &N::one()));
    top.checked_sub(i).ok_or_else(|| CertifyError::OutOfRange {
        degree: i.to_string(),
        top: top.to_string(),
    })
}

/// Top possibly-nonzero compactly supported degree of C_j(X) for a complex X
/// of dimension d: filtering by the number of points in the last-attached
/// cell bounds it by d*j.
pub fn x_vanishing_bound<N: Natural>(x_dim: u32, j: &N) -> N {
    mul(&nat(u64::from(x_dim)), j)
}

fn require_defined<N: Natural>(input: &RangeFunction<N>, k_max: usize) -> Result<(), CertifyError> {
    if input.len() <= k_max {
        return Err(CertifyError::InvalidInput(format!(
            "input range defined for k < {}, need k <= {k_max}",
            input.len()
        )));
    }
    Ok(())
}

/// One chase at weight k, strata limited to j <= j_cap: the minimum of
/// `input(k - j) + q*j`, with the smallest minimizing j. Clamped input
/// values enter through their guaranteed floors.
fn chase<N: Natural>(input: &RangeFunction<N>, q: u32, k: usize, j_cap: usize) -> (N, u64) {
    let qn: N = nat(u64::from(q));
    let mut best: Option<(N, u64)> = None;
    let mut penalty = N::zero();
    for j in 0..=j_cap.min(k) {
        let base = input.value(k - j).expect("input defined through k").floor();
        let candidate = add(base, &penalty);
        match &best {
            Some((value, _)) if *value <= candidate => {}
            _ => best = Some((candidate, j as u64)),
        }
        penalty = add(&penalty, &qn);
    }
    best.expect("j = 0 always contributes")
}

fn base_notes<N: Natural>(input: &RangeFunction<N>) -> Vec<String> {
    let mut notes = vec![BOUNDARY_NOTE.to_string()];
    if input.values().iter().any(|v| !v.is_bounded()) {
        notes.push(
            "some input values are validity clamps; the certificate uses their guaranteed \
             floors and is a lower bound"
                .to_string(),
        );
    }
    notes
}

/// The closed-form certificate: `r_M(k) = min_j (input(k-j) + q*j)` for
/// every k <= k_max.
pub fn certify_range<N: Natural>(
    input: &RangeFunction<N>,
    profile: &ComplementProfile,
    orientation: Orientation,
    k_max: usize,
) -> Result<Certificate<N>, CertifyError> {
    require_defined(input, k_max)?;
    let q = profile.codimension();
    let mut values = Vec::with_capacity(k_max + 1);
    let mut trace = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let (value, j) = chase(input, q, k, k);
        values.push(RangeValue::Bounded(value));
        trace.push(j);
    }
    let mut notes = base_notes(input);
    if orientation == Orientation::Twisted {
        notes.push(
            "orientation-twisted coefficients: the degree bookkeeping is identical".to_string(),
        );
    }
    Ok(Certificate {
        profile: *profile,
        orientation,
        input: input.clone(),
        certified: RangeFunction::new(values, RangeProvenance::Certified),
        trace,
        notes,
    })
}

/// The audit route: per weight, the literal downward induction over strata.
/// Strata with j > k are empty and impose nothing; descending from j = k to
/// j = 0 each stratum contributes its threshold, and the running minimum at
/// j = 0 is the certified range. Must agree with [`certify_range`].
pub fn certify_range_by_induction<N: Natural>(
    input: &RangeFunction<N>,
    profile: &ComplementProfile,
    orientation: Orientation,
    k_max: usize,
) -> Result<Certificate<N>, CertifyError> {
    require_defined(input, k_max)?;
    let q = profile.codimension();
    let qn: N = nat(u64::from(q));
    let mut values = Vec::with_capacity(k_max + 1);
    let mut trace = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        // j = k + 1: empty stratum, no constraint.
        let mut running: Option<(N, u64)> = None;
        for j in (0..=k).rev() {
            let base = input.value(k - j).expect("input defined through k").floor();
            let stratum = add(base, &mul(&qn, &nat(j as u64)));
            running = Some(match running {
                None => (stratum, j as u64),
                // <= keeps the smallest j on ties while scanning downward.
                Some((value, jj)) => {
                    if stratum <= value {
                        (stratum, j as u64)
                    } else {
                        (value, jj)
                    }
                }
            });
        }
        let (value, j) = running.expect("k >= 0 has the j = 0 stratum");
        values.push(RangeValue::Bounded(value));
        trace.push(j);
    }
    let mut notes = base_notes(input);
    if orientation == Orientation::Twisted {
        notes.push(
            "orientation-twisted coefficients: the degree bookkeeping is identical".to_string(),
        );
    }
    Ok(Certificate {
        profile: *profile,
        orientation,
        input: input.clone(),
        certified: RangeFunction::new(values, RangeProvenance::Certified),
        trace,
        notes,
    })
}

/// The certified value and minimizing stratum at a single weight, without
/// materializing the whole certificate.
pub fn certified_value_at<N: Natural>(
    input: &RangeFunction<N>,
    profile: &ComplementProfile,
    k: usize,
) -> Result<(N, u64), CertifyError> {
    require_defined(input, k)?;
    Ok(chase(input, profile.codimension(), k, k))
}

/// The certificate for M = R^n itself: the complement is empty, every
/// stratum with j >= 1 is empty, and the input passes through unchanged.
pub fn identity_certificate<N: Natural>(
    input: &RangeFunction<N>,
    n: AmbientDim,
    orientation: Orientation,
) -> Certificate<N> {
    let profile = ComplementProfile {
        n,
        x_dim: 0, // recorded as dimension 0; the strata are empty regardless
    };
    let values: Vec<RangeValue<N>> = input.values().to_vec();
    let trace = vec![0; values.len()];
    let mut notes = vec![
        "empty complement: identity certificate for R^n itself".to_string(),
        BOUNDARY_NOTE.to_string(),
    ];
    if orientation == Orientation::Twisted {
        notes.push(
            "orientation-twisted coefficients: the degree bookkeeping is identical".to_string(),
        );
    }
    Certificate {
        profile,
        orientation,
        input: input.clone(),
        certified: RangeFunction::new(values, RangeProvenance::Certified),
        trace,
        notes,
    }
}

/// A stability slope: a finite rational, or unbounded (no obstruction).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeBound {
    Finite(Ratio<u64>),
    Infinite,
}

impl std::fmt::Display for SlopeBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SlopeBound::Finite(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            SlopeBound::Infinite => write!(f, "infinity"),
        }
    }
}

/// The stability slope of R^n itself: the smallest degree/weight ratio over
/// the e-free generators.
///
/// Over F_p the weight-p generators `Q^s e`, `bQ^s e` (admissible for
/// 2s <= n) contribute `2s(p-1)/p` and `(2s(p-1)-1)/p`, minimized at s = 1;
/// for even n the bracket adds `(n-1)/2`. Over Q only the bracket survives,
/// so odd n has no obstruction at all and the slope is unbounded.
pub fn rn_slope(n: AmbientDim, coeff: Coefficients) -> Result<SlopeBound, CertifyError> {
    if n.get() < 3 {
        return Err(CertifyError::InvalidInput(format!(
            "slope computation needs ambient dimension >= 3, got n = {}",
            n.get()
        )));
    }
    let bracket = if n.is_even() {
        Some(Ratio::new(u64::from(n.get()) - 1, 2))
    } else {
        None
    };
    match coeff {
        Coefficients::Rational => Ok(match bracket {
            Some(r) => SlopeBound::Finite(r),
            None => SlopeBound::Infinite,
        }),
        Coefficients::Fp(p) => {
            let p = u64::from(p.get());
            let mut best: Option<Ratio<u64>> = bracket;
            for s in 1..=u64::from(n.get() / 2) {
                for delta in [1u64, 0] {
                    let degree = 2 * s * (p - 1) - delta;
                    let ratio = Ratio::new(degree, p);
                    if best.is_none_or(|b| ratio < b) {
                        best = Some(ratio);
                    }
                }
            }
            Ok(SlopeBound::Finite(
                best.expect("s = 1 is always admissible for n >= 3"),
            ))
        }
    }
}

/// The hypothesis input `r(m) = floor(slope * m)` for m <= k_max. An
/// unbounded slope has no finite range function; supply explicit values
/// instead.
pub fn slope_input_range<N: Natural>(
    slope: SlopeBound,
    k_max: usize,
) -> Result<RangeFunction<N>, CertifyError> {
    let ratio = match slope {
        SlopeBound::Finite(r) => r,
        SlopeBound::Infinite => {
            return Err(CertifyError::InvalidInput(
                "an unbounded slope has no finite input range; supply explicit range values"
                    .to_string(),
            ))
        }
    };
    let mut values = Vec::with_capacity(k_max + 1);
    for m in 0..=k_max as u64 {
        let scaled = ratio * Ratio::from_integer(m);
        values.push(RangeValue::Bounded(nat(scaled.to_integer())));
    }
    Ok(RangeFunction::new(values, RangeProvenance::Hypothesis))
}
