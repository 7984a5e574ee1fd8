//! Exact bigraded dimensions of the free graded-commutative algebra on a
//! generator set.
//!
//! Over an odd prime (or the rationals) "free graded commutative" means
//! polynomial on even-degree generators and exterior on odd-degree ones, so
//! the dimension of the (degree i, weight k) piece counts multisets of
//! generators with total bigrading (i, k) in which no odd generator repeats.
//!
//! Two engines compute the same table by unrelated routes and must agree
//! entrywise:
//!
//! - [`hilbert_by_enumeration`] walks every basis monomial explicitly;
//! - [`hilbert_by_product`] expands the truncated two-variable series
//!   `prod_{g even} (1 - q^deg t^wt)^-1 * prod_{g odd} (1 + q^deg t^wt)`.
//!
//! [`rational_table`] is the closed form over Q, where only the base classes
//! survive: `(1-t)^-1` for odd n, `(1-t)^-1 (1 + q^{n-1} t^2)` for even n.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::enumerate::{EnumerationBounds, Generator, GeneratorSet};
use crate::ops::{AmbientDim, Parity, Prime};
use crate::scalar::{add, nat, to_index, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error(
        "requested ({degree}, {weight}) outside the table bounds ({max_degree}, {max_weight})"
    )]
    OutOfBounds {
        degree: String,
        weight: String,
        max_degree: String,
        max_weight: String,
    },
}

/// Coefficient field of a table: F_p for an odd prime, or Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Fp(Prime),
    Rational,
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficients::Fp(p) => write!(f, "{p}"),
            Coefficients::Rational => write!(f, "Q"),
        }
    }
}

/// Which engine produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Enumeration,
    Product,
    RationalClosedForm,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Enumeration => write!(f, "enumeration"),
            Provenance::Product => write!(f, "product"),
            Provenance::RationalClosedForm => write!(f, "rational-closed-form"),
        }
    }
}

/// Caveat stamped on every mod-p table built from the default generator
/// model. Words of length >= 2 (weight >= p^2) are taken as independent
/// generators; a stricter admissible subset could only lower those entries,
/// and the stability conclusions drawn downstream use e-divisibility only,
/// which such a restriction cannot break.
pub const FORMAL_S_CAVEAT: &str = "generator model formal-s: every admissible word counts as an \
     independent generator; entries at weight >= p^2 are upper bounds if a stricter admissible \
     subset applies, and stability ranges are unaffected";

/// Exact dimensions dim H_i(C_k(R^n); F) for i <= max_degree, k <= max_weight.
/// Absent entries are zero within the bounds; nothing is stored outside them.
#[derive(Debug, Clone)]
pub struct HilbertTable<N: Natural> {
    n: AmbientDim,
    coeff: Coefficients,
    max_degree: N,
    max_weight: N,
    mode_name: String,
    provenance: Provenance,
    caveat: Option<String>,
    /// Keyed (weight, degree) so iteration order matches the serialized form.
    entries: BTreeMap<(N, N), N>,
}

impl<N: Natural> HilbertTable<N> {
    pub fn n(&self) -> AmbientDim {
        self.n
    }

    pub fn coeff(&self) -> Coefficients {
        self.coeff
    }

    pub fn max_degree(&self) -> &N {
        &self.max_degree
    }

    pub fn max_weight(&self) -> &N {
        &self.max_weight
    }

    pub fn mode_name(&self) -> &str {
        &self.mode_name
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn caveat(&self) -> Option<&str> {
        self.caveat.as_deref()
    }

    /// The dimension at (degree, weight); zero if no entry is stored.
    pub fn dim(&self, degree: &N, weight: &N) -> Result<N, HilbertError> {
        if *degree > self.max_degree || *weight > self.max_weight {
            return Err(HilbertError::OutOfBounds {
                degree: degree.to_string(),
                weight: weight.to_string(),
                max_degree: self.max_degree.to_string(),
                max_weight: self.max_weight.to_string(),
            });
        }
        Ok(self
            .entries
            .get(&(weight.clone(), degree.clone()))
            .cloned()
            .unwrap_or_else(N::zero))
    }

    /// Nonzero entries of one weight column, by increasing degree.
    pub fn column(&self, weight: &N) -> impl Iterator<Item = (&N, &N)> {
        let lo = (weight.clone(), N::zero());
        let hi = (add(weight, &N::one()), N::zero());
        self.entries.range(lo..hi).map(|((_, d), v)| (d, v))
    }

    /// All nonzero entries as (degree, weight, dim), sorted by (weight, degree).
    pub fn entries(&self) -> impl Iterator<Item = (&N, &N, &N)> {
        self.entries.iter().map(|((k, i), v)| (i, k, v))
    }

    /// Entrywise comparison, ignoring provenance; returns the differing
    /// positions as (degree, weight, self dim, other dim).
    pub fn differences(&self, other: &HilbertTable<N>) -> Vec<(N, N, N, N)> {
        let mut out = Vec::new();
        let keys: std::collections::BTreeSet<_> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .cloned()
            .collect();
        for key in keys {
            let a = self.entries.get(&key).cloned().unwrap_or_else(N::zero);
            let b = other.entries.get(&key).cloned().unwrap_or_else(N::zero);
            if a != b {
                out.push((key.1.clone(), key.0.clone(), a, b));
            }
        }
        out
    }

    /// Structural sanity: the e-powers give dim 1 in degree 0 at every
    /// weight, and nothing lives above the manifold dimension n*k.
    pub fn validate(&self) -> Result<(), String> {
        let mut k = N::zero();
        loop {
            let d = self.dim(&N::zero(), &k).map_err(|e| e.to_string())?;
            if !d.is_one() {
                return Err(format!("entry (0, {k}) is {d}, expected 1"));
            }
            if k == self.max_weight {
                break;
            }
            k = add(&k, &N::one());
        }
        for ((weight, degree), dim) in &self.entries {
            let cap = crate::scalar::mul(&self.n.to_nat::<N>(), weight);
            if *degree > cap && !dim.is_zero() {
                return Err(format!(
                    "entry ({degree}, {weight}) = {dim} above the dimension bound {cap}"
                ));
            }
        }
        Ok(())
    }

    /// `i<TAB>k<TAB>dim` lines sorted by (k, i), LF endings, nonzero only.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for ((k, i), dim) in &self.entries {
            out.push_str(&format!("{i}\t{k}\t{dim}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|((k, i), dim)| {
                serde_json::json!({
                    "i": i.to_string(),
                    "k": k.to_string(),
                    "dim": dim.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n.get(),
            "coeff": self.coeff.to_string(),
            "max_degree": self.max_degree.to_string(),
            "max_weight": self.max_weight.to_string(),
            "mode": self.mode_name,
            "provenance": self.provenance.to_string(),
            "caveat": self.caveat,
            "entries": entries,
        })
    }
}

/// A basis monomial: generator indices (into the canonical ordering of a
/// [`GeneratorSet`]) with multiplicities, indices strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<(usize, u64)>,
}

impl Monomial {
    pub fn exponents(&self) -> &[(usize, u64)] {
        &self.exponents
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Total bigrading of the monomial; (0, 0) for the empty monomial.
    pub fn degree_weight<N: Natural>(&self, gens: &GeneratorSet<N>) -> (N, N) {
        let mut degree = N::zero();
        let mut weight = N::zero();
        for (idx, mult) in &self.exponents {
            let g = &gens.generators()[*idx];
            let m: N = nat(*mult);
            degree = add(&degree, &crate::scalar::mul(g.bigrading.degree(), &m));
            weight = add(&weight, &crate::scalar::mul(g.bigrading.weight(), &m));
        }
        (degree, weight)
    }

    /// True if the monomial has the generator at `index` as a factor.
    pub fn contains(&self, index: usize) -> bool {
        self.exponents.iter().any(|(i, _)| *i == index)
    }

    /// Human-readable form like `(bQ1 e) * (e)^3`.
    pub fn format<N: Natural>(&self, gens: &GeneratorSet<N>) -> String {
        if self.exponents.is_empty() {
            return "1".to_string();
        }
        self.exponents
            .iter()
            .map(|(idx, mult)| {
                let word = &gens.generators()[*idx].word;
                if *mult == 1 {
                    format!("({word})")
                } else {
                    format!("({word})^{mult}")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// Maximum multiplicity of one generator under the remaining degree/weight
/// budget; odd-parity generators are exterior and cap at 1.
fn max_multiplicity<N: Natural>(g: &Generator<N>, rem_degree: &N, rem_weight: &N) -> u64 {
    let by_weight = num_integer::Integer::div_floor(rem_weight, g.bigrading.weight())
        .to_u64()
        .expect("multiplicity exceeds u64");
    let by_degree = if g.bigrading.degree().is_zero() {
        u64::MAX
    } else {
        num_integer::Integer::div_floor(rem_degree, g.bigrading.degree())
            .to_u64()
            .expect("multiplicity exceeds u64")
    };
    let cap = by_weight.min(by_degree);
    if g.bigrading.parity() == Parity::Odd {
        cap.min(1)
    } else {
        cap
    }
}

/// Visits every monomial with degree <= max_degree, weight <= max_weight,
/// exactly once, in lexicographic order of exponent vectors (index-major,
/// multiplicities ascending). The visitor receives the exponents and the
/// total (degree, weight).
fn walk_monomials<N: Natural>(
    gens: &GeneratorSet<N>,
    visit: &mut impl FnMut(&[(usize, u64)], &N, &N),
) {
    let mut stack: Vec<(usize, u64)> = Vec::new();
    walk_from(gens, 0, &N::zero(), &N::zero(), &mut stack, visit);
}

fn walk_from<N: Natural>(
    gens: &GeneratorSet<N>,
    idx: usize,
    degree: &N,
    weight: &N,
    stack: &mut Vec<(usize, u64)>,
    visit: &mut impl FnMut(&[(usize, u64)], &N, &N),
) {
    if idx == gens.len() {
        visit(stack, degree, weight);
        return;
    }
    let g = &gens.generators()[idx];
    let rem_degree = gens
        .bounds()
        .max_degree()
        .checked_sub(degree)
        .expect("accumulated degree within bounds");
    let rem_weight = gens
        .bounds()
        .max_weight()
        .checked_sub(weight)
        .expect("accumulated weight within bounds");
    let cap = max_multiplicity(g, &rem_degree, &rem_weight);

    let mut d = degree.clone();
    let mut w = weight.clone();
    for m in 0..=cap {
        if m > 0 {
            d = add(&d, g.bigrading.degree());
            w = add(&w, g.bigrading.weight());
            stack.push((idx, m));
            walk_from(gens, idx + 1, &d, &w, stack, visit);
            stack.pop();
        } else {
            walk_from(gens, idx + 1, &d, &w, stack, visit);
        }
    }
}

/// All basis monomials of exact bigrading (degree, weight), in canonical
/// order. Errors if the request is outside the generator set's bounds.
pub fn monomial_basis<N: Natural>(
    gens: &GeneratorSet<N>,
    degree: &N,
    weight: &N,
) -> Result<Vec<Monomial>, HilbertError> {
    let bounds = gens.bounds();
    if *degree > *bounds.max_degree() || *weight > *bounds.max_weight() {
        return Err(HilbertError::OutOfBounds {
            degree: degree.to_string(),
            weight: weight.to_string(),
            max_degree: bounds.max_degree().to_string(),
            max_weight: bounds.max_weight().to_string(),
        });
    }
    let mut out = Vec::new();
    walk_monomials(gens, &mut |exps, d, w| {
        if d == degree && w == weight {
            out.push(Monomial {
                exponents: exps.to_vec(),
            });
        }
    });
    Ok(out)
}

/// Route one: counts basis monomials by explicit enumeration.
pub fn hilbert_by_enumeration<N: Natural>(gens: &GeneratorSet<N>) -> HilbertTable<N> {
    let mut entries: BTreeMap<(N, N), N> = BTreeMap::new();
    walk_monomials(gens, &mut |_, degree, weight| {
        let slot = entries
            .entry((weight.clone(), degree.clone()))
            .or_insert_with(N::zero);
        *slot = add(slot, &N::one());
    });
    table_from_generators(gens, Provenance::Enumeration, entries)
}

/// Route two: expands the truncated bivariate Hilbert series. Each even
/// generator contributes a geometric factor applied by an ascending
/// in-place sweep; each odd generator contributes `(1 + q^d t^w)`, applied
/// descending so the square never enters.
pub fn hilbert_by_product<N: Natural>(gens: &GeneratorSet<N>) -> HilbertTable<N> {
    let d_max = to_index(gens.bounds().max_degree());
    let k_max = to_index(gens.bounds().max_weight());
    let mut c: Vec<Vec<N>> = vec![vec![N::zero(); k_max + 1]; d_max + 1];
    c[0][0] = N::one();

    for g in gens.generators() {
        let gd = to_index(g.bigrading.degree());
        let gw = to_index(g.bigrading.weight());
        match g.bigrading.parity() {
            Parity::Even => {
                for i in gd..=d_max {
                    for k in gw..=k_max {
                        let prev = c[i - gd][k - gw].clone();
                        c[i][k] = add(&c[i][k], &prev);
                    }
                }
            }
            Parity::Odd => {
                for i in (gd..=d_max).rev() {
                    for k in (gw..=k_max).rev() {
                        let prev = c[i - gd][k - gw].clone();
                        c[i][k] = add(&c[i][k], &prev);
                    }
                }
            }
        }
    }

    let mut entries: BTreeMap<(N, N), N> = BTreeMap::new();
    for (i, row) in c.iter().enumerate() {
        for (k, dim) in row.iter().enumerate() {
            if !dim.is_zero() {
                entries.insert((nat(k as u64), nat(i as u64)), dim.clone());
            }
        }
    }
    table_from_generators(gens, Provenance::Product, entries)
}

fn table_from_generators<N: Natural>(
    gens: &GeneratorSet<N>,
    provenance: Provenance,
    entries: BTreeMap<(N, N), N>,
) -> HilbertTable<N> {
    let caveat = match gens.mode() {
        crate::enumerate::AdmissibilityMode::FormalS => Some(FORMAL_S_CAVEAT.to_string()),
        crate::enumerate::AdmissibilityMode::Custom { name, .. } => Some(format!(
            "generator model '{name}': caller-supplied word filter; dimensions reflect that model"
        )),
    };
    HilbertTable {
        n: gens.n(),
        coeff: Coefficients::Fp(gens.p()),
        max_degree: gens.bounds().max_degree().clone(),
        max_weight: gens.bounds().max_weight().clone(),
        mode_name: gens.mode().name().to_string(),
        provenance,
        caveat,
        entries,
    }
}

/// The rational table in closed form. Over Q only the base classes remain:
/// for odd n just the e-powers, dim 1 in degree 0 at every weight; for even
/// n additionally `l(e,e) * e^(k-2)` in degree n-1 at every weight >= 2.
/// The k = 1 and k = 2 columns agree with C_1(R^n) = R^n and
/// C_2(R^n) ~ RP^{n-1}.
pub fn rational_table<N: Natural>(n: AmbientDim, bounds: &EnumerationBounds<N>) -> HilbertTable<N> {
    let mut entries: BTreeMap<(N, N), N> = BTreeMap::new();
    let mut k = N::zero();
    loop {
        entries.insert((k.clone(), N::zero()), N::one());
        if k == *bounds.max_weight() {
            break;
        }
        k = add(&k, &N::one());
    }
    if n.is_even() {
        let browder_degree: N = nat(u64::from(n.get()) - 1);
        if browder_degree <= *bounds.max_degree() {
            let mut k: N = nat(2);
            while k <= *bounds.max_weight() {
                entries.insert((k.clone(), browder_degree.clone()), N::one());
                k = add(&k, &N::one());
            }
        }
    }
    HilbertTable {
        n,
        coeff: Coefficients::Rational,
        max_degree: bounds.max_degree().clone(),
        max_weight: bounds.max_weight().clone(),
        mode_name: "closed-form".to_string(),
        provenance: Provenance::RationalClosedForm,
        caveat: None,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_generators, AdmissibilityMode};
    use proptest::prelude::*;

    fn dim(n: u32) -> AmbientDim {
        AmbientDim::new(n).unwrap()
    }

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn set(n: u32, p: u32, d: u64, k: u64) -> GeneratorSet<u64> {
        enumerate_generators(
            dim(n),
            prime(p),
            EnumerationBounds::new(d, k).unwrap(),
            AdmissibilityMode::FormalS,
        )
    }

    fn basis_strings(gens: &GeneratorSet<u64>, d: u64, k: u64) -> Vec<String> {
        monomial_basis(gens, &d, &k)
            .unwrap()
            .iter()
            .map(|m| m.format(gens))
            .collect()
    }

    #[test]
    fn monomial_basis_n4_p3_at_3_3() {
        // Hand enumeration: e*l(e,e) from (0,1)+(3,2), and the word bQ1 e (3,3).
        let gens = set(4, 3, 10, 9);
        let mut names = basis_strings(&gens, 3, 3);
        names.sort();
        assert_eq!(names.len(), 2);
        assert!(names
            .iter()
            .any(|s| s.contains("l(e,e)") && s.contains("(e)")));
        assert!(names.iter().any(|s| s.contains("bQ1 e")));
    }

    #[test]
    fn monomial_basis_degree_zero_is_e_power() {
        let gens = set(4, 3, 10, 9);
        assert_eq!(basis_strings(&gens, 0, 5), vec!["(e)^5"]);
    }

    #[test]
    fn exterior_square_of_browder_class_is_excluded() {
        // l(e,e)^2 would sit at (6,4) for n=4, but n-1=3 is odd; hand
        // enumeration confirms nothing else lands there.
        let gens = set(4, 3, 10, 9);
        assert!(basis_strings(&gens, 6, 4).is_empty());
    }

    #[test]
    fn monomial_basis_rejects_out_of_bounds() {
        let gens = set(4, 3, 10, 9);
        assert!(matches!(
            monomial_basis(&gens, &11, &1),
            Err(HilbertError::OutOfBounds { .. })
        ));
    }

    #[test]
    fn no_monomial_repeats_an_odd_generator() {
        let gens = set(4, 3, 14, 12);
        let mut checked = 0u32;
        walk_monomials(&gens, &mut |exps, _, _| {
            for (idx, mult) in exps {
                if gens.generators()[*idx].bigrading.parity() == Parity::Odd {
                    assert_eq!(*mult, 1);
                }
            }
            checked += 1;
        });
        assert!(checked > 10);
    }

    #[test]
    fn weight_three_column_n3_p3() {
        // Monomials of weight 3: e^3 (0), bQ1 e (3), Q1 e (4).
        let gens = set(3, 3, 10, 9);
        let table = hilbert_by_enumeration(&gens);
        let col: Vec<(u64, u64)> = table.column(&3).map(|(d, v)| (*d, *v)).collect();
        assert_eq!(col, vec![(0, 1), (3, 1), (4, 1)]);
    }

    #[test]
    fn weight_two_column_depends_on_parity_of_n() {
        let odd = hilbert_by_enumeration(&set(5, 3, 10, 9));
        let col: Vec<(u64, u64)> = odd.column(&2).map(|(d, v)| (*d, *v)).collect();
        assert_eq!(col, vec![(0, 1)]);

        // n = 4: e^2 and l(e,e); matches H_*(RP^3) over F_3.
        let even = hilbert_by_enumeration(&set(4, 3, 10, 9));
        let col: Vec<(u64, u64)> = even.column(&2).map(|(d, v)| (*d, *v)).collect();
        assert_eq!(col, vec![(0, 1), (3, 1)]);
    }

    #[test]
    fn product_engine_single_generator_is_geometric() {
        // Weight cap 2 for n=5 leaves only e; the series is 1/(1-t).
        let gens = set(5, 3, 4, 2);
        assert_eq!(gens.len(), 1);
        let table = hilbert_by_product(&gens);
        let rows: Vec<(u64, u64, u64)> = table.entries().map(|(i, k, v)| (*i, *k, *v)).collect();
        assert_eq!(rows, vec![(0, 0, 1), (0, 1, 1), (0, 2, 1)]);
    }

    #[test]
    fn product_engine_e_and_browder_expansion() {
        // (1-t)^-1 (1 + q^3 t^2): degree 0 everywhere, degree 3 from k=2 on.
        let gens = set(4, 3, 3, 2);
        let table = hilbert_by_product(&gens);
        let rows: Vec<(u64, u64, u64)> = table.entries().map(|(i, k, v)| (*i, *k, *v)).collect();
        assert_eq!(rows, vec![(0, 0, 1), (0, 1, 1), (0, 2, 1), (3, 2, 1)]);
    }

    #[test]
    fn engines_agree_with_caveat_and_validity() {
        for (n, p) in [(3u32, 3u32), (4, 3), (5, 3), (4, 5), (6, 3)] {
            let gens = set(n, p, 12, 10);
            let by_enum = hilbert_by_enumeration(&gens);
            let by_prod = hilbert_by_product(&gens);
            assert!(by_enum.differences(&by_prod).is_empty(), "n={n}, p={p}");
            assert!(by_enum.caveat().unwrap().contains("formal-s"));
            by_enum.validate().unwrap();
            by_prod.validate().unwrap();
        }
    }

    #[test]
    fn rational_tables() {
        let bounds = EnumerationBounds::new(10u64, 8).unwrap();
        let odd = rational_table(dim(5), &bounds);
        assert!(odd.entries().all(|(i, _, _)| *i == 0));
        odd.validate().unwrap();

        let even = rational_table(dim(4), &bounds);
        let k2: Vec<(u64, u64)> = even.column(&2).map(|(d, v)| (*d, *v)).collect();
        assert_eq!(k2, vec![(0, 1), (3, 1)]);
        let k1: Vec<(u64, u64)> = even.column(&1).map(|(d, v)| (*d, *v)).collect();
        assert_eq!(k1, vec![(0, 1)]);
        assert_eq!(even.dim(&3, &8).unwrap(), 1);
        even.validate().unwrap();
    }

    #[test]
    fn tsv_is_sorted_by_weight_then_degree() {
        let gens = set(4, 3, 3, 2);
        let table = hilbert_by_enumeration(&gens);
        assert_eq!(table.to_tsv(), "0\t0\t1\n0\t1\t1\n0\t2\t1\n3\t2\t1\n");
    }

    #[test]
    fn dim_out_of_bounds_is_an_error() {
        let gens = set(4, 3, 3, 2);
        let table = hilbert_by_enumeration(&gens);
        assert!(table.dim(&4, &1).is_err());
        assert!(table.dim(&1, &3).is_err());
        assert_eq!(table.dim(&1, &2).unwrap(), 0);
    }

    #[test]
    fn works_over_biguint() {
        use crate::Big;
        let gens: GeneratorSet<Big> = enumerate_generators(
            dim(3),
            prime(3),
            EnumerationBounds::new(Big::from(10u32), Big::from(9u32)).unwrap(),
            AdmissibilityMode::FormalS,
        );
        let a = hilbert_by_enumeration(&gens);
        let b = hilbert_by_product(&gens);
        assert!(a.differences(&b).is_empty());
        assert_eq!(
            a.dim(&Big::from(4u32), &Big::from(3u32)).unwrap(),
            Big::from(1u32)
        );
    }

    proptest! {
        // Entries within the smaller bounds are unchanged when bounds grow.
        #[test]
        fn truncation_stability(
            d in 0u64..12,
            k in 1u64..10,
            dd in 0u64..6,
            dk in 0u64..5,
            even_n in proptest::bool::ANY,
        ) {
            let n = if even_n { 4 } else { 3 };
            let small = hilbert_by_enumeration(&set(n, 3, d, k));
            let large = hilbert_by_enumeration(&set(n, 3, d + dd, k + dk));
            for i in 0..=d {
                for w in 0..=k {
                    prop_assert_eq!(
                        small.dim(&i, &w).unwrap(),
                        large.dim(&i, &w).unwrap(),
                        "entry ({}, {}) changed when bounds grew", i, w
                    );
                }
            }
        }

        // The two engines agree on randomly bounded generator sets.
        #[test]
        fn dual_engine_equivalence(d in 0u64..14, k in 1u64..12, n in 3u32..7, p_odd in 0usize..2) {
            let p = [3u32, 5][p_odd];
            let gens = set(n, p, d, k);
            let by_enum = hilbert_by_enumeration(&gens);
            let by_prod = hilbert_by_product(&gens);
            prop_assert!(by_enum.differences(&by_prod).is_empty());
        }
    }
}
