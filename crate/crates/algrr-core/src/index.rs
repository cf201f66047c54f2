//! Index evaluation: integration functionals, the algebroid
//! Riemann–Roch index, foliated indices against atomic transverse
//! measures, Euler-character averages, the positivity obstruction, and
//! the exact prefactor comparison between the two index conventions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bundle::{Bundle, BundleError, Context};
use crate::classes::{characteristic_class, wedge_power_ch, ClassKind};
use crate::rational::{int, sign_pow, Rat};
use crate::series::{CMono, ChernSeries, MonomialParseError, SeriesError};

/// Errors from index evaluation and foliation descriptors.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("functional top degree {functional} does not match bundle rank {expected}")]
    DegreeMismatch { functional: u32, expected: u32 },
    #[error("monomial '{monomial}' has degree {degree}, functional expects {top_degree}")]
    MonomialDegree {
        monomial: String,
        degree: u32,
        top_degree: u32,
    },
    #[error(transparent)]
    Monomial(#[from] MonomialParseError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("leaf {index}: non-compact leaves cannot carry a genus")]
    GenusOnNonCompactLeaf { index: usize },
    #[error("leaf {index}: compact leaves need a genus")]
    MissingGenus { index: usize },
    #[error("leaf {index}: weight must be non-negative")]
    NegativeWeight { index: usize },
    #[error("leaf {index}: non-compact leaves must have weight 0")]
    NonCompactWeight { index: usize },
    #[error("leaf dimension {0} unsupported: genus-based evaluation needs leaf dimension 1")]
    UnsupportedLeafDimension(u32),
    #[error("leaf dimension must be positive")]
    NonPositiveLeafDimension,
    #[error("prefactor comparison needs an even leaf dimension, got {0}")]
    OddLeafDimension(u32),
    #[error("bundle '{0}' has no per-leaf degree data")]
    UnknownLeafBundle(String),
    #[error("bundle '{name}' lists {actual} leaf degrees, descriptor has {expected} leaves")]
    DegreeCount {
        name: String,
        expected: usize,
        actual: usize,
    },
    #[error("measure normalization must be positive")]
    NonPositiveNormalization,
}

/// A linear functional on top-degree classes: integration against a
/// fixed fundamental cycle, specified by its values on top-degree
/// monomials. Monomials without an entry integrate to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationFunctional {
    ctx: Arc<Context>,
    top_degree: u32,
    values: BTreeMap<CMono, Rat>,
}

impl IntegrationFunctional {
    /// Build from `(monomial, value)` pairs such as `("c1(T)", 2)`. Each
    /// monomial must be well formed in `ctx` and homogeneous of degree
    /// exactly `top_degree`.
    pub fn new(
        ctx: Arc<Context>,
        top_degree: u32,
        values: &[(&str, Rat)],
    ) -> Result<Self, IndexError> {
        let mut map = BTreeMap::new();
        for (text, value) in values {
            let mono = CMono::parse(&ctx, text)?;
            if mono.degree() != top_degree {
                return Err(IndexError::MonomialDegree {
                    monomial: text.to_string(),
                    degree: mono.degree(),
                    top_degree,
                });
            }
            if !value.is_zero() {
                map.insert(mono, value.clone());
            }
        }
        Ok(IntegrationFunctional {
            ctx,
            top_degree,
            values: map,
        })
    }

    /// The degree this functional integrates.
    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// The context the monomials live in.
    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Integrate a series: extract its top-degree homogeneous part and
    /// pair it with the stored values (absent monomials contribute 0).
    pub fn apply(&self, series: &ChernSeries) -> Result<Rat, IndexError> {
        if *series.context() != self.ctx {
            return Err(IndexError::Series(SeriesError::ContextMismatch));
        }
        let top = series.homogeneous_part(self.top_degree)?;
        let mut total = Rat::zero();
        for (mono, coeff) in top.terms() {
            if let Some(value) = self.values.get(mono) {
                total += coeff * value;
            }
        }
        Ok(total)
    }

    /// The stored values in canonical monomial order.
    pub fn rendered_values(&self) -> Vec<(String, Rat)> {
        self.values
            .iter()
            .map(|(m, v)| (m.render(&self.ctx), v.clone()))
            .collect()
    }
}

/// Symbolic tag for the raw-form prefactor `(-1)^k (2*pi*i)^(-k)` that
/// converts normalized index values back to the raw curvature-form
/// convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawPrefactor {
    pub rank: u32,
}

impl fmt::Display for RawPrefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-1)^{k}*(2*pi*i)^(-{k})", k = self.rank)
    }
}

/// An index value in the normalized-class convention, with the symbolic
/// raw-form prefactor carried alongside.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedIndex {
    pub value: Rat,
    pub raw_prefactor: RawPrefactor,
}

/// The topological index of the degree-`p` twisted Dolbeault-type
/// complex of a rank-`k` bundle `g` with coefficient bundle `e`:
/// `(-1)^p F(top_k( ch(Lambda^p dual g) * ch(e) * td(g) ))`.
/// The result does not depend on `cutoff` once `cutoff >= k`; smaller
/// requests are raised to `k` so the top degree always exists.
pub fn algebroid_rr_index(
    ctx: &Arc<Context>,
    g: &Bundle,
    e: &Bundle,
    p: u32,
    functional: &IntegrationFunctional,
    cutoff: u32,
) -> Result<NormalizedIndex, IndexError> {
    let rank = g.rank(ctx)?;
    if functional.top_degree() != rank {
        return Err(IndexError::DegreeMismatch {
            functional: functional.top_degree(),
            expected: rank,
        });
    }
    let cutoff = cutoff.max(rank);
    let lambda = wedge_power_ch(ctx, p, &g.clone().dual(), cutoff)?;
    let ch_e = characteristic_class(ctx, ClassKind::ChernCharacter, e, cutoff)?;
    let todd = characteristic_class(ctx, ClassKind::Todd, g, cutoff)?;
    let integrand = lambda.mul(&ch_e)?.mul(&todd)?;
    let value = functional.apply(&integrand)? * sign_pow(p);
    Ok(NormalizedIndex {
        value,
        raw_prefactor: RawPrefactor { rank },
    })
}

/// One leaf of a foliation descriptor: compact leaves carry a genus and
/// a non-negative transverse weight; non-compact leaves carry neither.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafSpec {
    pub compact: bool,
    pub genus: Option<u32>,
    pub weight: Rat,
}

impl LeafSpec {
    /// A compact leaf of the given genus and transverse weight.
    pub fn compact(genus: u32, weight: Rat) -> Self {
        LeafSpec {
            compact: true,
            genus: Some(genus),
            weight,
        }
    }

    /// A non-compact leaf: no genus, zero transverse mass.
    pub fn non_compact() -> Self {
        LeafSpec {
            compact: false,
            genus: None,
            weight: Rat::zero(),
        }
    }

    /// Compact leaves of genus at least 2 admit a hyperbolic (hence
    /// leafwise Kähler) structure.
    pub fn hyperbolic(&self) -> bool {
        self.compact && self.genus.is_some_and(|g| g >= 2)
    }

    /// Euler characteristic `2 - 2g` of a compact leaf.
    fn euler_characteristic(&self) -> Option<Rat> {
        self.genus.map(|g| int(2) - int(2) * int(g as i64))
    }
}

/// A foliated space presented by its transverse measure data: atomic
/// weights on compact leaves, per-leaf topology, and per-leaf degrees of
/// the named tangential bundles.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationDescriptor {
    leaf_dim: u32,
    leaves: Vec<LeafSpec>,
    bundle_degrees: BTreeMap<String, Vec<Rat>>,
    normalization: Rat,
}

impl FoliationDescriptor {
    /// Validate and build. `leaf_dim` is the complex leaf dimension;
    /// every bundle's degree list must cover every leaf; `normalization`
    /// is a positive overall scale on the transverse measure.
    pub fn new(
        leaf_dim: u32,
        leaves: Vec<LeafSpec>,
        bundle_degrees: BTreeMap<String, Vec<Rat>>,
        normalization: Rat,
    ) -> Result<Self, IndexError> {
        if leaf_dim == 0 {
            return Err(IndexError::NonPositiveLeafDimension);
        }
        if !normalization.is_positive() {
            return Err(IndexError::NonPositiveNormalization);
        }
        for (index, leaf) in leaves.iter().enumerate() {
            if leaf.compact {
                if leaf.genus.is_none() {
                    return Err(IndexError::MissingGenus { index });
                }
            } else {
                if leaf.genus.is_some() {
                    return Err(IndexError::GenusOnNonCompactLeaf { index });
                }
                if !leaf.weight.is_zero() {
                    return Err(IndexError::NonCompactWeight { index });
                }
            }
            if leaf.weight.is_negative() {
                return Err(IndexError::NegativeWeight { index });
            }
        }
        for (name, degrees) in &bundle_degrees {
            if degrees.len() != leaves.len() {
                return Err(IndexError::DegreeCount {
                    name: name.clone(),
                    expected: leaves.len(),
                    actual: degrees.len(),
                });
            }
        }
        Ok(FoliationDescriptor {
            leaf_dim,
            leaves,
            bundle_degrees,
            normalization,
        })
    }

    pub fn leaf_dim(&self) -> u32 {
        self.leaf_dim
    }

    pub fn leaves(&self) -> &[LeafSpec] {
        &self.leaves
    }

    pub fn bundle_degrees(&self) -> &BTreeMap<String, Vec<Rat>> {
        &self.bundle_degrees
    }

    pub fn normalization(&self) -> &Rat {
        &self.normalization
    }

    /// Indices (0-based) of the hyperbolic leaves.
    pub fn hyperbolic_leaves(&self) -> Vec<usize> {
        self.leaves
            .iter()
            .enumerate()
            .filter(|(_, l)| l.hyperbolic())
            .map(|(i, _)| i)
            .collect()
    }

    fn require_riemann_surface_leaves(&self) -> Result<(), IndexError> {
        if self.leaf_dim != 1 {
            return Err(IndexError::UnsupportedLeafDimension(self.leaf_dim));
        }
        Ok(())
    }

    fn degrees_of(&self, bundle: &str) -> Result<&[Rat], IndexError> {
        self.bundle_degrees
            .get(bundle)
            .map(Vec::as_slice)
            .ok_or_else(|| IndexError::UnknownLeafBundle(bundle.to_string()))
    }
}

/// Build a suspension-style descriptor from leaf specifications and
/// per-leaf bundle degrees. Leaves are complex curves (leaf dimension
/// 1); validation is the same as [`FoliationDescriptor::new`] with the
/// default measure normalization.
pub fn build_suspension(
    leaves: Vec<LeafSpec>,
    bundle_degrees: BTreeMap<String, Vec<Rat>>,
) -> Result<FoliationDescriptor, IndexError> {
    FoliationDescriptor::new(1, leaves, bundle_degrees, Rat::one())
}

/// Classical index of a degree-`d` line bundle over a genus-`g` curve,
/// twisted to wedge degree `p`, computed through the root engine rather
/// than a closed form.
fn per_leaf_index(genus: u32, degree: &Rat, p: u32) -> Result<Rat, IndexError> {
    let ctx = Context::new([("E", 1), ("T", 1)])?;
    let chi = int(2) - int(2) * int(genus as i64);
    let functional = IntegrationFunctional::new(
        Arc::clone(&ctx),
        1,
        &[("c1(T)", chi), ("c1(E)", degree.clone())],
    )?;
    let index = algebroid_rr_index(
        &ctx,
        &Bundle::named("T"),
        &Bundle::named("E"),
        p,
        &functional,
        2,
    )?;
    Ok(index.value)
}

/// The foliated index: the weighted sum over compact leaves of the
/// per-leaf classical index of the named bundle, twisted to wedge degree
/// `p`. With `normalize` set, the descriptor's measure normalization is
/// applied to the total.
pub fn foliated_rr_index(
    fol: &FoliationDescriptor,
    bundle: &str,
    p: u32,
    normalize: bool,
) -> Result<Rat, IndexError> {
    fol.require_riemann_surface_leaves()?;
    let degrees = fol.degrees_of(bundle)?;
    let mut total = Rat::zero();
    for (leaf, degree) in fol.leaves.iter().zip(degrees) {
        if !leaf.compact || leaf.weight.is_zero() {
            continue;
        }
        let genus = leaf.genus.expect("validated compact leaf has a genus");
        total += &leaf.weight * per_leaf_index(genus, degree, p)?;
    }
    if normalize {
        total *= &fol.normalization;
    }
    Ok(total)
}

/// The average Euler characteristic of the leaves against the transverse
/// measure: the normalization times the weighted sum of `2 - 2g` over
/// compact leaves.
pub fn average_euler(fol: &FoliationDescriptor) -> Result<Rat, IndexError> {
    fol.require_riemann_surface_leaves()?;
    let mut total = Rat::zero();
    for leaf in &fol.leaves {
        if !leaf.compact || leaf.weight.is_zero() {
            continue;
        }
        let chi = leaf
            .euler_characteristic()
            .expect("validated compact leaf has a genus");
        total += &leaf.weight * chi;
    }
    Ok(total * &fol.normalization)
}

/// Verdict of the positivity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityVerdict {
    /// The bundle admits no positively curved metric along the leaves.
    NotPositive,
    /// The test is silent (non-negative witness).
    Inconclusive,
}

impl fmt::Display for PositivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityVerdict::NotPositive => write!(f, "NotPositive"),
            PositivityVerdict::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Positivity-obstruction report: the verdict plus the integral that
/// witnesses it.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub verdict: PositivityVerdict,
    pub witness: Rat,
}

/// The positivity obstruction for a tangential line bundle: a negative
/// holomorphic Euler characteristic against the transverse measure rules
/// out positive curvature (the higher cohomology that could make the
/// index negative vanishes for positive bundles). The witness is the
/// measure-normalized classical index of the bundle.
pub fn positivity_obstruction(
    fol: &FoliationDescriptor,
    bundle: &str,
) -> Result<PositivityReport, IndexError> {
    let witness = foliated_rr_index(fol, bundle, 0, true)?;
    let verdict = if witness.is_negative() {
        PositivityVerdict::NotPositive
    } else {
        PositivityVerdict::Inconclusive
    };
    Ok(PositivityReport { verdict, witness })
}

/// An exact Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn one() -> Self {
        GaussRat {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// `i^n` for any integer `n`, by honest repeated multiplication.
    pub fn i_pow(n: i64) -> Self {
        let unit = if n >= 0 {
            GaussRat {
                re: Rat::zero(),
                im: Rat::one(),
            }
        } else {
            // i^{-1} = -i
            GaussRat {
                re: Rat::zero(),
                im: -Rat::one(),
            }
        };
        let mut out = GaussRat::one();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&unit);
        }
        out
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{} - {}*i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

/// A Gaussian-rational multiple of an integer power of `2*pi`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiTerm {
    pub coeff: GaussRat,
    pub two_pi_exp: i64,
}

impl fmt::Display for PiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let needs_parens = !self.coeff.im.is_zero();
        if self.two_pi_exp == 0 {
            return write!(f, "{}", self.coeff);
        }
        if needs_parens {
            write!(f, "({})", self.coeff)?;
        } else if self.coeff.re == -Rat::one() {
            write!(f, "-")?;
        } else if self.coeff.re != Rat::one() {
            write!(f, "{}*", self.coeff.re)?;
        }
        write!(f, "(2*pi)^({})", self.two_pi_exp)
    }
}

/// Comparison of the two index prefactors at even leaf dimension `k`:
/// the normalized-class convention contributes `(2*pi*i)^(-k) * (-1)^k`,
/// the measured-foliation convention contributes
/// `(2*pi)^(-k) * (-1)^(k/2)`; both sides are reduced to canonical
/// `coeff * (2*pi)^(-k)` form and compared exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnesReport {
    pub k: u32,
    pub algebroid_side: PiTerm,
    pub connes_side: PiTerm,
    pub holds: bool,
    /// Ratio of the algebroid topological index to the measured-foliation
    /// one: exactly `(2*pi)^(-k)`.
    pub ratio: PiTerm,
}

/// Compare the two prefactor conventions at even positive `k` (the real
/// dimension of the complex leaves).
pub fn connes_comparison(k: u32) -> Result<ConnesReport, IndexError> {
    if k == 0 {
        return Err(IndexError::NonPositiveLeafDimension);
    }
    if !k.is_multiple_of(2) {
        return Err(IndexError::OddLeafDimension(k));
    }
    // (2*pi*i)^(-k) * (-1)^k = i^(-k) * (2*pi)^(-k) for even k.
    let minus_one_k = GaussRat {
        re: sign_pow(k),
        im: Rat::zero(),
    };
    let algebroid_coeff = GaussRat::i_pow(-(k as i64)).mul(&minus_one_k);
    let algebroid_side = PiTerm {
        coeff: algebroid_coeff,
        two_pi_exp: -(k as i64),
    };
    let connes_side = PiTerm {
        coeff: GaussRat {
            re: sign_pow(k / 2),
            im: Rat::zero(),
        },
        two_pi_exp: -(k as i64),
    };
    let holds = algebroid_side == connes_side;
    Ok(ConnesReport {
        k,
        algebroid_side,
        connes_side,
        holds,
        ratio: PiTerm {
            coeff: GaussRat::one(),
            two_pi_exp: -(k as i64),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn curve_context() -> Arc<Context> {
        Context::new([("E", 1), ("T", 1)]).unwrap()
    }

    fn curve_functional(chi: i64, deg: i64) -> IntegrationFunctional {
        IntegrationFunctional::new(
            curve_context(),
            1,
            &[("c1(T)", int(chi)), ("c1(E)", int(deg))],
        )
        .unwrap()
    }

    #[test]
    fn functional_rejects_wrong_degree_monomials() {
        let err = IntegrationFunctional::new(curve_context(), 2, &[("c1(T)", int(1))]);
        assert!(matches!(err, Err(IndexError::MonomialDegree { .. })));
    }

    #[test]
    fn functional_applies_to_top_degree_part() {
        let ctx = curve_context();
        let f = curve_functional(-2, 3);
        let td = characteristic_class(&ctx, ClassKind::Todd, &Bundle::named("T"), 2).unwrap();
        // Degree-1 part of td(T) is c1(T)/2, so the value is -1.
        assert_eq!(f.apply(&td).unwrap(), int(-1));
    }

    #[test]
    fn classical_curve_index() {
        let ctx = curve_context();
        for genus in 0..4i64 {
            for degree in -2..4i64 {
                let f = curve_functional(2 - 2 * genus, degree);
                let idx =
                    algebroid_rr_index(&ctx, &Bundle::named("T"), &Bundle::named("E"), 0, &f, 2)
                        .unwrap();
                assert_eq!(idx.value, int(degree + 1 - genus));
                assert_eq!(idx.raw_prefactor, RawPrefactor { rank: 1 });
            }
        }
    }

    #[test]
    fn twisted_index_at_top_wedge_degree() {
        // E = T over a genus-2 curve, p = 1.
        let ctx = curve_context();
        let f = curve_functional(-2, -2);
        let idx =
            algebroid_rr_index(&ctx, &Bundle::named("T"), &Bundle::named("E"), 1, &f, 2).unwrap();
        assert_eq!(idx.value, int(1));
    }

    #[test]
    fn index_is_cutoff_independent() {
        let ctx = curve_context();
        let f = curve_functional(-4, 5);
        for cutoff in [0, 1, 2, 5] {
            let idx = algebroid_rr_index(
                &ctx,
                &Bundle::named("T"),
                &Bundle::named("E"),
                0,
                &f,
                cutoff,
            )
            .unwrap();
            assert_eq!(idx.value, int(3));
        }
    }

    #[test]
    fn functional_degree_must_match_rank() {
        let ctx = Context::new([("E", 1), ("T", 2)]).unwrap();
        let f = IntegrationFunctional::new(Arc::clone(&ctx), 1, &[("c1(E)", int(1))]).unwrap();
        let err = algebroid_rr_index(&ctx, &Bundle::named("T"), &Bundle::named("E"), 0, &f, 4)
            .unwrap_err();
        assert_eq!(
            err,
            IndexError::DegreeMismatch {
                functional: 1,
                expected: 2
            }
        );
    }

    fn single_leaf(genus: u32, weight: Rat, degree: Rat) -> FoliationDescriptor {
        let mut degrees = BTreeMap::new();
        degrees.insert("E".to_string(), vec![degree]);
        FoliationDescriptor::new(
            1,
            vec![LeafSpec::compact(genus, weight)],
            degrees,
            Rat::one(),
        )
        .unwrap()
    }

    #[test]
    fn descriptor_validation_errors() {
        let bad = FoliationDescriptor::new(
            1,
            vec![LeafSpec {
                compact: true,
                genus: Some(2),
                weight: int(-1),
            }],
            BTreeMap::new(),
            Rat::one(),
        );
        assert_eq!(bad.unwrap_err(), IndexError::NegativeWeight { index: 0 });

        let bad = FoliationDescriptor::new(
            1,
            vec![LeafSpec {
                compact: false,
                genus: Some(1),
                weight: Rat::zero(),
            }],
            BTreeMap::new(),
            Rat::one(),
        );
        assert_eq!(
            bad.unwrap_err(),
            IndexError::GenusOnNonCompactLeaf { index: 0 }
        );

        let mut degrees = BTreeMap::new();
        degrees.insert("E".to_string(), vec![int(1), int(2)]);
        let bad = FoliationDescriptor::new(
            1,
            vec![LeafSpec::compact(0, Rat::one())],
            degrees,
            Rat::one(),
        );
        assert!(matches!(bad.unwrap_err(), IndexError::DegreeCount { .. }));
    }

    #[test]
    fn suspension_marks_hyperbolic_leaves() {
        let fol = build_suspension(
            vec![
                LeafSpec::compact(0, Rat::one()),
                LeafSpec::compact(3, int(2)),
                LeafSpec::non_compact(),
            ],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(fol.hyperbolic_leaves(), vec![1]);
    }

    #[test]
    fn weighted_sum_over_leaves() {
        let mut degrees = BTreeMap::new();
        degrees.insert("E".to_string(), vec![int(0), int(0)]);
        let fol = FoliationDescriptor::new(
            1,
            vec![
                LeafSpec::compact(2, Rat::one()),
                LeafSpec::compact(3, int(2)),
            ],
            degrees,
            Rat::one(),
        )
        .unwrap();
        // 1*(0+1-2) + 2*(0+1-3) = -5.
        assert_eq!(foliated_rr_index(&fol, "E", 0, false).unwrap(), int(-5));
    }

    #[test]
    fn torus_leaves_have_zero_index_and_euler() {
        let fol = single_leaf(1, rat(7, 3), Rat::zero());
        assert_eq!(foliated_rr_index(&fol, "E", 0, false).unwrap(), int(0));
        assert_eq!(average_euler(&fol).unwrap(), int(0));
    }

    #[test]
    fn top_wedge_foliated_index_matches_half_euler() {
        for genus in 0..5u32 {
            let chi = int(2) - int(2 * genus as i64);
            let fol = single_leaf(genus, Rat::one(), chi);
            let idx = foliated_rr_index(&fol, "E", 1, false).unwrap();
            let avg = average_euler(&fol).unwrap();
            assert_eq!(idx, -avg / int(2));
        }
    }

    #[test]
    fn average_euler_examples() {
        assert_eq!(
            average_euler(&single_leaf(2, int(3), Rat::zero())).unwrap(),
            int(-6)
        );
        assert_eq!(
            average_euler(&single_leaf(0, Rat::one(), Rat::zero())).unwrap(),
            int(2)
        );
    }

    #[test]
    fn unknown_bundle_and_leaf_dimension_errors() {
        let fol = single_leaf(2, Rat::one(), int(-3));
        assert_eq!(
            foliated_rr_index(&fol, "L", 0, false).unwrap_err(),
            IndexError::UnknownLeafBundle("L".to_string())
        );
        let mut degrees = BTreeMap::new();
        degrees.insert("E".to_string(), vec![]);
        let surface = FoliationDescriptor::new(2, vec![], degrees, Rat::one()).unwrap();
        assert_eq!(
            foliated_rr_index(&surface, "E", 0, false).unwrap_err(),
            IndexError::UnsupportedLeafDimension(2)
        );
    }

    #[test]
    fn positivity_obstruction_examples() {
        let fol = single_leaf(2, Rat::one(), int(-3));
        let report = positivity_obstruction(&fol, "E").unwrap();
        assert_eq!(report.verdict, PositivityVerdict::NotPositive);
        assert_eq!(report.witness, int(-4));

        let fol = single_leaf(1, Rat::one(), int(0));
        let report = positivity_obstruction(&fol, "E").unwrap();
        assert_eq!(report.verdict, PositivityVerdict::Inconclusive);
        assert_eq!(report.witness, int(0));
    }

    #[test]
    fn positivity_verdict_survives_rescaling() {
        let mut degrees = BTreeMap::new();
        degrees.insert("E".to_string(), vec![int(-3)]);
        let scaled = FoliationDescriptor::new(
            1,
            vec![LeafSpec::compact(2, Rat::one())],
            degrees,
            rat(7, 3),
        )
        .unwrap();
        let report = positivity_obstruction(&scaled, "E").unwrap();
        assert_eq!(report.verdict, PositivityVerdict::NotPositive);
        assert_eq!(report.witness, rat(-28, 3));
    }

    #[test]
    fn normalization_is_opt_in_for_the_index() {
        let mut degrees = BTreeMap::new();
        degrees.insert("E".to_string(), vec![int(3)]);
        let fol = FoliationDescriptor::new(
            1,
            vec![LeafSpec::compact(0, Rat::one())],
            degrees,
            rat(1, 2),
        )
        .unwrap();
        assert_eq!(foliated_rr_index(&fol, "E", 0, false).unwrap(), int(4));
        assert_eq!(foliated_rr_index(&fol, "E", 0, true).unwrap(), int(2));
    }

    #[test]
    fn prefactor_comparison() {
        let r2 = connes_comparison(2).unwrap();
        assert!(r2.holds);
        assert_eq!(
            r2.algebroid_side.coeff,
            GaussRat {
                re: int(-1),
                im: int(0)
            }
        );
        assert_eq!(r2.algebroid_side.two_pi_exp, -2);
        assert_eq!(format!("{}", r2.algebroid_side), "-(2*pi)^(-2)");

        let r4 = connes_comparison(4).unwrap();
        assert!(r4.holds);
        assert_eq!(format!("{}", r4.connes_side), "(2*pi)^(-4)");

        assert_eq!(
            connes_comparison(3).unwrap_err(),
            IndexError::OddLeafDimension(3)
        );
        assert_eq!(
            connes_comparison(0).unwrap_err(),
            IndexError::NonPositiveLeafDimension
        );
    }

    #[test]
    fn gaussian_powers_of_i() {
        assert_eq!(
            GaussRat::i_pow(-2),
            GaussRat {
                re: int(-1),
                im: int(0)
            }
        );
        assert_eq!(
            GaussRat::i_pow(-4),
            GaussRat {
                re: int(1),
                im: int(0)
            }
        );
        assert_eq!(
            GaussRat::i_pow(3),
            GaussRat {
                re: int(0),
                im: int(-1)
            }
        );
    }
}
