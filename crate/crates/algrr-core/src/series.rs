//! Truncated multivariate series in Chern generators.
//!
//! A [`ChernSeries`] is a polynomial in the generators `c_j(B)` (degree
//! `j`, one family per formal bundle of the context), truncated at a fixed
//! complex degree, with exact rational coefficients and no stored zero
//! terms.
//!
//! Alongside the generator-basis terms, every series carries its root-level
//! expansion split as `(prod of linear factors) * cofactor`. Class
//! constructors that produce an explicit per-root factor (the Euler class,
//! the alternating wedge character) record those factors, and
//! [`ChernSeries::divide_by_euler`] removes them constructively. Because the
//! cofactor is kept to the full truncation degree, the quotient is faithful
//! to the same cutoff even when the Euler factor itself exhausts most of
//! it. Division never does ideal-membership testing: if the factors are
//! not structurally present, it fails.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bundle::{Bundle, BundleError, Context};
use crate::rational::Rat;
use crate::roots::{expand_terms, to_chern_basis, LinForm, RootPoly};

/// One Chern generator `c_j(B)` (bundle id, index `j >= 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Gen {
    pub bundle: u16,
    pub j: u16,
}

/// A monomial in Chern generators, sorted, with positive exponents.
/// Ordered by total complex degree first, then lexicographically; this is
/// the canonical term order used everywhere (reports, serialization).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMono(Vec<(Gen, u32)>);

impl CMono {
    pub(crate) fn one() -> Self {
        CMono(Vec::new())
    }

    pub(crate) fn from_factors(mut factors: Vec<(Gen, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by_key(|(g, _)| *g);
        let mut merged: Vec<(Gen, u32)> = Vec::with_capacity(factors.len());
        for (g, e) in factors {
            match merged.last_mut() {
                Some((lg, le)) if *lg == g => *le += e,
                _ => merged.push((g, e)),
            }
        }
        CMono(merged)
    }

    pub(crate) fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    /// Total complex degree: `sum j * exponent`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.j as u32 * e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let mut factors = self.0.clone();
        factors.extend_from_slice(&other.0);
        CMono::from_factors(factors)
    }

    /// Canonical text form: `1`, `c1(T)`, `c1(E)*c1(T)^2`, factors sorted
    /// by bundle name then index.
    pub fn render(&self, ctx: &Context) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|(g, e)| {
                let base = format!("c{}({})", g.j, ctx.name_of(g.bundle));
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses the canonical text form produced by [`CMono::render`].
    pub fn parse(ctx: &Context, s: &str) -> Result<CMono, MonomialParseError> {
        let t = s.trim();
        let err = |reason: &str| MonomialParseError {
            monomial: s.to_string(),
            reason: reason.to_string(),
        };
        if t.is_empty() {
            return Err(err("empty monomial"));
        }
        if t == "1" {
            return Ok(CMono::one());
        }
        let mut factors = Vec::new();
        for part in t.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => {
                    let exp: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| err("exponent is not a positive integer"))?;
                    if exp == 0 {
                        return Err(err("exponent must be positive"));
                    }
                    (b.trim(), exp)
                }
                None => (part, 1),
            };
            let rest = base
                .strip_prefix('c')
                .ok_or_else(|| err("factor must look like cJ(NAME)"))?;
            let open = rest.find('(').ok_or_else(|| err("missing `(`"))?;
            let j: u16 = rest[..open]
                .parse()
                .map_err(|_| err("generator index is not a positive integer"))?;
            if j == 0 {
                return Err(err("generator index must be at least 1"));
            }
            let close = rest.rfind(')').ok_or_else(|| err("missing `)`"))?;
            if close != rest.len() - 1 || close <= open {
                return Err(err("malformed generator"));
            }
            let name = &rest[open + 1..close];
            let bundle = ctx
                .id_of(name)
                .map_err(|_| err(&format!("unknown bundle `{name}`")))?;
            if j as u32 > ctx.rank_of_id(bundle) {
                return Err(err(&format!(
                    "c{j}({name}) exceeds the rank {} of `{name}`",
                    ctx.rank_of_id(bundle)
                )));
            }
            factors.push((Gen { bundle, j }, exp));
        }
        Ok(CMono::from_factors(factors))
    }
}

impl PartialOrd for CMono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CMono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Error from parsing a monomial string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid monomial `{monomial}`: {reason}")]
pub struct MonomialParseError {
    pub monomial: String,
    pub reason: String,
}

/// Errors from series arithmetic and Euler division.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("context mismatch: series are defined over different bundle sets")]
    ContextMismatch,
    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(u32, u32),
    #[error(
        "not divisible: the factor `{missing}` of the Euler class of `{bundle}` \
         is not structurally present"
    )]
    NotDivisible { bundle: String, missing: String },
    #[error("degree {degree} exceeds the truncation cutoff {cutoff}")]
    DegreeAboveCutoff { degree: u32, cutoff: u32 },
    #[error("invalid generator c{j}: bundle `{bundle}` has rank {rank}")]
    InvalidGenerator { bundle: String, j: u16, rank: u32 },
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

/// Root-level factored form of a series: `prod(factors) * cofactor`.
#[derive(Clone, Debug)]
pub(crate) struct Witness {
    /// Normalized linear factors (signs are folded into the cofactor),
    /// with multiplicities.
    pub factors: BTreeMap<LinForm, u32>,
    /// The remaining (symmetric) root polynomial, kept to the full cutoff.
    pub cofactor: RootPoly,
}

impl Witness {
    fn bare(poly: RootPoly) -> Self {
        Witness {
            factors: BTreeMap::new(),
            cofactor: poly,
        }
    }

    /// Multiplies the recorded factors back into the cofactor, giving up
    /// the factored structure (used when adding series whose factor sets
    /// disagree).
    fn flattened(&self) -> RootPoly {
        let mut p = self.cofactor.clone();
        for (form, mult) in &self.factors {
            for _ in 0..*mult {
                p = p.mul_linform(form);
            }
        }
        p
    }

    /// The full root polynomial including factors (same as `flattened`).
    fn full_poly(&self) -> RootPoly {
        self.flattened()
    }
}

/// A truncated series in Chern generators over a fixed context.
#[derive(Clone, Debug)]
pub struct ChernSeries {
    ctx: Arc<Context>,
    cutoff: u32,
    terms: BTreeMap<CMono, Rat>,
    witness: Witness,
}

impl PartialEq for ChernSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.cutoff == other.cutoff && self.terms == other.terms
    }
}

impl Eq for ChernSeries {}

impl ChernSeries {
    pub(crate) fn from_witness(ctx: Arc<Context>, cutoff: u32, witness: Witness) -> Self {
        let full = witness.full_poly();
        let terms = to_chern_basis(&ctx, &full);
        ChernSeries {
            ctx,
            cutoff,
            terms,
            witness,
        }
    }

    /// Builds a series from generator-basis terms (drops zero coefficients
    /// and anything above the cutoff).
    pub(crate) fn from_terms(
        ctx: Arc<Context>,
        cutoff: u32,
        mut terms: BTreeMap<CMono, Rat>,
    ) -> Self {
        terms.retain(|m, c| m.degree() <= cutoff && !c.is_zero());
        let cofactor = expand_terms(&ctx, &terms, cutoff);
        ChernSeries {
            ctx,
            cutoff,
            terms,
            witness: Witness::bare(cofactor),
        }
    }

    /// The constant series `c`.
    pub fn constant(ctx: &Arc<Context>, cutoff: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(CMono::one(), c.clone());
        }
        ChernSeries {
            ctx: Arc::clone(ctx),
            cutoff,
            terms,
            witness: Witness::bare(RootPoly::constant(cutoff, c)),
        }
    }

    pub fn zero(ctx: &Arc<Context>, cutoff: u32) -> Self {
        Self::constant(ctx, cutoff, Rat::zero())
    }

    pub fn one(ctx: &Arc<Context>, cutoff: u32) -> Self {
        Self::constant(ctx, cutoff, Rat::one())
    }

    /// The single generator `c_j(name)`; `j` must not exceed the rank.
    pub fn generator(
        ctx: &Arc<Context>,
        cutoff: u32,
        name: &str,
        j: u16,
    ) -> Result<Self, SeriesError> {
        let id = ctx.id_of(name)?;
        let rank = ctx.rank_of_id(id);
        if j == 0 || j as u32 > rank {
            return Err(SeriesError::InvalidGenerator {
                bundle: name.to_string(),
                j,
                rank,
            });
        }
        let mut terms = BTreeMap::new();
        let mono = CMono::from_factors(vec![(Gen { bundle: id, j }, 1)]);
        if mono.degree() <= cutoff {
            terms.insert(mono, Rat::one());
        }
        Ok(Self::from_terms(Arc::clone(ctx), cutoff, terms))
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order as `(monomial text, coefficient)`.
    pub fn rendered_terms(&self) -> Vec<(String, Rat)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.render(&self.ctx), c.clone()))
            .collect()
    }

    pub(crate) fn terms(&self) -> &BTreeMap<CMono, Rat> {
        &self.terms
    }

    /// Coefficient of the monomial written in canonical text form
    /// (e.g. `"1"`, `"c1(T)^2"`).
    pub fn coefficient(&self, monomial: &str) -> Result<Rat, MonomialParseError> {
        let m = CMono::parse(&self.ctx, monomial)?;
        Ok(self.terms.get(&m).cloned().unwrap_or_else(Rat::zero))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ctx != other.ctx {
            return Err(SeriesError::ContextMismatch);
        }
        if self.cutoff != other.cutoff {
            return Err(SeriesError::CutoffMismatch(self.cutoff, other.cutoff));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        let witness = if self.witness.factors == other.witness.factors {
            Witness {
                factors: self.witness.factors.clone(),
                cofactor: self.witness.cofactor.add(&other.witness.cofactor),
            }
        } else {
            Witness::bare(self.witness.flattened().add(&other.witness.flattened()))
        };
        Ok(ChernSeries {
            ctx: Arc::clone(&self.ctx),
            cutoff: self.cutoff,
            terms,
            witness,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut terms: BTreeMap<CMono, Rat> =
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        terms.retain(|_, a| !a.is_zero());
        ChernSeries {
            ctx: Arc::clone(&self.ctx),
            cutoff: self.cutoff,
            terms,
            witness: Witness {
                factors: self.witness.factors.clone(),
                cofactor: self.witness.cofactor.scale(c),
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut factors = self.witness.factors.clone();
        for (form, mult) in &other.witness.factors {
            *factors.entry(form.clone()).or_insert(0) += mult;
        }
        let witness = Witness {
            factors,
            cofactor: self.witness.cofactor.mul(&other.witness.cofactor),
        };
        Ok(Self::from_witness(
            Arc::clone(&self.ctx),
            self.cutoff,
            witness,
        ))
    }

    /// The homogeneous component of complex degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Result<Self, SeriesError> {
        if d > self.cutoff {
            return Err(SeriesError::DegreeAboveCutoff {
                degree: d,
                cutoff: self.cutoff,
            });
        }
        let terms: BTreeMap<CMono, Rat> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(Self::from_terms(Arc::clone(&self.ctx), self.cutoff, terms))
    }

    /// Removes the Euler class of `bundle` (the product of its resolved
    /// Chern roots) from the recorded linear factors. Fails with
    /// [`SeriesError::NotDivisible`] when a required factor is absent;
    /// this is a structural check, never ideal-membership testing.
    ///
    /// The quotient is faithful to the full cutoff because the cofactor was
    /// maintained at full precision when the series was constructed.
    pub fn divide_by_euler(&self, bundle: &Bundle) -> Result<Self, SeriesError> {
        let divisor_roots = bundle.roots(&self.ctx)?;
        let mut factors = self.witness.factors.clone();
        let mut sign = 1i64;
        for root in &divisor_roots {
            let (norm, eps) = root.normalized();
            match factors.get_mut(&norm) {
                Some(mult) if *mult > 0 => {
                    *mult -= 1;
                    if *mult == 0 {
                        factors.remove(&norm);
                    }
                    sign *= eps;
                }
                _ => {
                    return Err(SeriesError::NotDivisible {
                        bundle: bundle.to_string(),
                        missing: root.render(&self.ctx),
                    });
                }
            }
        }
        let witness = Witness {
            factors,
            cofactor: self.witness.cofactor.scale(&Rat::from_integer(sign.into())),
        };
        Ok(Self::from_witness(
            Arc::clone(&self.ctx),
            self.cutoff,
            witness,
        ))
    }
}

impl fmt::Display for ChernSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    // A leading negative term is printed as a subtraction
                    // from zero so the output stays within the expression
                    // grammar (which has no unary minus).
                    write!(f, "0 - ")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", m.render(&self.ctx))?;
            } else {
                write!(f, "{mag}*{}", m.render(&self.ctx))?;
            }
        }
        Ok(())
    }
}
