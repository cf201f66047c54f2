//! Truncated polynomials in formal Chern roots and their reduction to
//! elementary symmetric generators.
//!
//! Characteristic classes are expanded internally as polynomials in the
//! root variables `x_{B,i}` of the formal bundles involved, truncated at
//! the requested complex degree (each root has degree 1). Any polynomial
//! produced this way is symmetric in each bundle's root family separately,
//! so it can be rewritten in the elementary symmetric polynomials of each
//! family — which are exactly the Chern generators `c_j(B)`. The rewrite is
//! the classical leading-term reduction: the lex-leading exponent of a
//! symmetric polynomial is weakly decreasing, it is matched by a unique
//! product of elementary symmetric polynomials, and subtracting that
//! product strictly lowers the leading term.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::bundle::Context;
use crate::rational::Rat;
use crate::series::{CMono, Gen};
use crate::univariate::PowerSeries;

/// One formal Chern root `x_{B,i}` (bundle id, 0-based root index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct RootVar {
    pub bundle: u16,
    pub index: u16,
}

/// An integer linear combination of root variables, e.g. `x - y`.
///
/// Entries are sorted by variable and never have a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct LinForm(pub Vec<(RootVar, i64)>);

impl LinForm {
    pub fn var(v: RootVar) -> Self {
        LinForm(vec![(v, 1)])
    }

    pub fn negate(&self) -> Self {
        LinForm(self.0.iter().map(|(v, c)| (*v, -c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out: BTreeMap<RootVar, i64> = self.0.iter().copied().collect();
        for (v, c) in &other.0 {
            let e = out.entry(*v).or_insert(0);
            *e += c;
            if *e == 0 {
                out.remove(v);
            }
        }
        LinForm(out.into_iter().collect())
    }

    /// Rescales so the first coefficient is positive; returns the
    /// normalized form and the sign (+1/-1) pulled out.
    pub fn normalized(&self) -> (LinForm, i64) {
        match self.0.first() {
            Some((_, c)) if *c < 0 => (self.negate(), -1),
            _ => (self.clone(), 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn render(&self, ctx: &Context) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (v, c)) in self.0.iter().enumerate() {
            let name = format!("x{}({})", v.index + 1, ctx.name_of(v.bundle));
            if i == 0 {
                match *c {
                    1 => out.push_str(&name),
                    -1 => out.push_str(&format!("-{name}")),
                    c => out.push_str(&format!("{c}*{name}")),
                }
            } else {
                let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
                if mag == 1 {
                    out.push_str(&format!(" {sign} {name}"));
                } else {
                    out.push_str(&format!(" {sign} {mag}*{name}"));
                }
            }
        }
        out
    }
}

/// A monomial in root variables (sorted, positive exponents).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub(crate) struct RootMono(pub Vec<(RootVar, u32)>);

impl RootMono {
    pub fn one() -> Self {
        RootMono(Vec::new())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<RootVar, u32> = self.0.iter().copied().collect();
        for (v, e) in &other.0 {
            *out.entry(*v).or_insert(0) += e;
        }
        RootMono(out.into_iter().collect())
    }

    pub fn mul_var(&self, v: RootVar) -> Self {
        let mut out = self.0.clone();
        match out.binary_search_by_key(&v, |(w, _)| *w) {
            Ok(i) => out[i].1 += 1,
            Err(i) => out.insert(i, (v, 1)),
        }
        RootMono(out)
    }
}

/// A polynomial in root variables, truncated at a fixed total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RootPoly {
    pub cutoff: u32,
    pub terms: BTreeMap<RootMono, Rat>,
}

impl RootPoly {
    pub fn zero(cutoff: u32) -> Self {
        RootPoly {
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(cutoff: u32, c: Rat) -> Self {
        let mut p = Self::zero(cutoff);
        if !c.is_zero() {
            p.terms.insert(RootMono::one(), c);
        }
        p
    }

    #[cfg(test)]
    pub fn linear(cutoff: u32, form: &LinForm) -> Self {
        let mut p = Self::zero(cutoff);
        if cutoff >= 1 {
            for (v, c) in &form.0 {
                p.terms
                    .insert(RootMono::one().mul_var(*v), Rat::from_integer((*c).into()));
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: RootMono, c: Rat) {
        if c.is_zero() || m.degree() > self.cutoff {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.cutoff, other.cutoff, "cutoff mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.cutoff);
        }
        RootPoly {
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cutoff, other.cutoff, "cutoff mismatch");
        let mut out = Self::zero(self.cutoff);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if da + mb.degree() > self.cutoff {
                    continue;
                }
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Multiplies by a linear form (degree filtration shifts up by one).
    pub fn mul_linform(&self, form: &LinForm) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            if m.degree() + 1 > self.cutoff {
                continue;
            }
            for (v, a) in &form.0 {
                out.insert(m.mul_var(*v), c * Rat::from_integer((*a).into()));
            }
        }
        out
    }

    /// Substitutes the linear form into a univariate series:
    /// `sum_j series[j] * form^j`, truncated.
    pub fn eval_univariate(cutoff: u32, series: &PowerSeries, form: &LinForm) -> Self {
        let mut out = Self::constant(cutoff, series.coeff(0));
        let mut power = Self::constant(cutoff, Rat::one());
        for j in 1..=cutoff.min(series.cutoff()) {
            power = power.mul_linform(form);
            if power.is_zero() {
                break;
            }
            let cj = series.coeff(j);
            if !cj.is_zero() {
                out = out.add(&power.scale(&cj));
            }
        }
        out
    }
}

/// Rewrites a per-family-symmetric root polynomial in the Chern generators
/// `c_j(B)` (the elementary symmetric polynomials of each root family).
///
/// Panics if the polynomial is not symmetric in some family; every public
/// construction in this crate produces symmetric polynomials, so hitting
/// the panic indicates an internal bug.
pub(crate) fn to_chern_basis(ctx: &Context, poly: &RootPoly) -> BTreeMap<CMono, Rat> {
    let mut work: BTreeMap<(RootMono, CMono), Rat> = poly
        .terms
        .iter()
        .map(|(m, c)| ((m.clone(), CMono::one()), c.clone()))
        .collect();
    let families: BTreeSet<u16> = poly
        .terms
        .keys()
        .flat_map(|m| m.0.iter().map(|(v, _)| v.bundle))
        .collect();
    for f in families {
        let rank = ctx.rank_of_id(f) as usize;
        // Group terms by everything except family f's variables; each group
        // is a symmetric polynomial in that family alone.
        let mut groups: BTreeMap<(RootMono, CMono), BTreeMap<Vec<u32>, Rat>> = BTreeMap::new();
        for ((rmono, cmono), coeff) in work {
            let mut fam = vec![0u32; rank];
            let mut rest = Vec::new();
            for (v, e) in rmono.0 {
                if v.bundle == f {
                    fam[v.index as usize] = e;
                } else {
                    rest.push((v, e));
                }
            }
            *groups
                .entry((RootMono(rest), cmono))
                .or_default()
                .entry(fam)
                .or_insert_with(Rat::zero) += coeff;
        }
        let mut next: BTreeMap<(RootMono, CMono), Rat> = BTreeMap::new();
        for ((rest, cmono), fam_poly) in groups {
            for (lam, coeff) in elementary_decompose(ctx, f, fam_poly) {
                let factors: Vec<(Gen, u32)> = lam
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| {
                        (
                            Gen {
                                bundle: f,
                                j: (i + 1) as u16,
                            },
                            *e,
                        )
                    })
                    .collect();
                let cm2 = cmono.mul(&CMono::from_factors(factors));
                let entry = next.entry((rest.clone(), cm2)).or_insert_with(Rat::zero);
                *entry += coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        work = next;
    }
    let mut out: BTreeMap<CMono, Rat> = BTreeMap::new();
    for ((rmono, cmono), coeff) in work {
        assert!(
            rmono.0.is_empty(),
            "internal error: unreduced root variables remain"
        );
        let entry = out.entry(cmono).or_insert_with(Rat::zero);
        *entry += coeff;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Decomposes a symmetric polynomial in one root family (given by exponent
/// vectors of fixed length `rank`) into elementary symmetric products.
/// Returns `(lambda, coeff)` pairs where `lambda[i]` is the exponent of
/// `e_{i+1}`.
fn elementary_decompose(
    ctx: &Context,
    family: u16,
    mut p: BTreeMap<Vec<u32>, Rat>,
) -> Vec<(Vec<u32>, Rat)> {
    let mut out = Vec::new();
    while let Some((m, c)) = p.pop_last() {
        if c.is_zero() {
            continue;
        }
        let rank = m.len();
        for i in 0..rank.saturating_sub(1) {
            assert!(
                m[i] >= m[i + 1],
                "internal error: polynomial not symmetric in roots of `{}` \
                 (lex-leading exponent {:?} is not weakly decreasing)",
                ctx.name_of(family),
                m
            );
        }
        let mut lam = vec![0u32; rank];
        for i in 0..rank {
            lam[i] = m[i] - if i + 1 < rank { m[i + 1] } else { 0 };
        }
        out.push((lam.clone(), c.clone()));
        // Subtract `c * e_lambda`. Its lex-leading monomial is exactly `m`
        // with coefficient one, and `m` was already removed by the pop, so
        // skip it; every remaining monomial is lex-smaller, which makes the
        // leading term strictly decrease and the loop terminate.
        for (mono, count) in expand_e_product(&lam) {
            if mono == m {
                continue;
            }
            let entry = p.entry(mono).or_insert_with(Rat::zero);
            *entry -= &c * count;
        }
    }
    out
}

/// Expands `prod_i e_i^{lambda[i-1]}` in `rank = lambda.len()` variables as
/// a map from exponent vectors to (integer) coefficients.
fn expand_e_product(lam: &[u32]) -> BTreeMap<Vec<u32>, Rat> {
    let rank = lam.len();
    let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    acc.insert(vec![0u32; rank], Rat::one());
    for (i, mult) in lam.iter().enumerate() {
        let subset_size = i + 1;
        for _ in 0..*mult {
            let mut next: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
            for (m, c) in &acc {
                for subset in (0..rank).combinations(subset_size) {
                    let mut m2 = m.clone();
                    for s in subset {
                        m2[s] += 1;
                    }
                    let entry = next.entry(m2).or_insert_with(Rat::zero);
                    *entry += c;
                }
            }
            acc = next;
        }
    }
    acc
}

/// Expands a Chern-generator monomial back into root variables (each
/// `c_j(B)` becomes the `j`-th elementary symmetric polynomial in `B`'s
/// roots), truncated at `cutoff`.
pub(crate) fn expand_cmono(ctx: &Context, mono: &CMono, cutoff: u32) -> RootPoly {
    let mut out = RootPoly::constant(cutoff, Rat::one());
    for (gen, exp) in mono.factors() {
        let e = elementary_poly(ctx, gen.bundle, gen.j as usize, cutoff);
        for _ in 0..*exp {
            out = out.mul(&e);
            if out.is_zero() {
                return out;
            }
        }
    }
    out
}

/// Expands a full Chern-basis term map into root variables.
pub(crate) fn expand_terms(ctx: &Context, terms: &BTreeMap<CMono, Rat>, cutoff: u32) -> RootPoly {
    let mut out = RootPoly::zero(cutoff);
    for (m, c) in terms {
        out = out.add(&expand_cmono(ctx, m, cutoff).scale(c));
    }
    out
}

/// `e_j` of the roots of formal bundle `family`, as a root polynomial.
fn elementary_poly(ctx: &Context, family: u16, j: usize, cutoff: u32) -> RootPoly {
    let rank = ctx.rank_of_id(family) as usize;
    let mut p = RootPoly::zero(cutoff);
    if j > rank || j as u32 > cutoff {
        return p;
    }
    for subset in (0..rank).combinations(j) {
        let mono = RootMono(
            subset
                .into_iter()
                .map(|i| {
                    (
                        RootVar {
                            bundle: family,
                            index: i as u16,
                        },
                        1u32,
                    )
                })
                .collect(),
        );
        p.terms.insert(mono, Rat::one());
    }
    p
}
