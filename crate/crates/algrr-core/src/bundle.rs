//! Formal bundle symbols, contexts, and derived-bundle expressions.
//!
//! A [`Context`] fixes the finite set of formal bundles a computation may
//! mention, each with a name and a complex rank. Derived bundles (duals,
//! direct sums, complexifications, twists by a line bundle) are represented
//! structurally by [`Bundle`] expressions and resolve to multisets of
//! formal Chern roots: the roots of `B` are `x_{B,1}..x_{B,r}`, a dual
//! negates every root, a direct sum concatenates them, a complexification
//! takes `{x_i} ∪ {-x_i}`, and a line-bundle twist adds the line root to
//! every root.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::roots::{LinForm, RootVar};

/// Errors from context construction and bundle-expression resolution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("unknown bundle `{0}`")]
    UnknownBundle(String),
    #[error("duplicate bundle name `{0}`")]
    DuplicateBundle(String),
    #[error("bundle `{0}` must have rank at least 1, got {1}")]
    InvalidRank(String, u32),
    #[error("rank mismatch: {context} requires rank {expected}, got rank {actual}")]
    RankMismatch {
        context: String,
        expected: u32,
        actual: u32,
    },
    #[error("empty direct sum")]
    EmptySum,
}

/// An immutable set of named formal bundles with complex ranks.
///
/// Bundle names are unique; the internal numbering is the sorted-name
/// order, so everything downstream (generator ordering, serialization) is
/// deterministic in the names alone.
#[derive(Debug, PartialEq, Eq)]
pub struct Context {
    names: Vec<String>,
    ranks: Vec<u32>,
    lookup: BTreeMap<String, u16>,
}

impl Context {
    /// Builds a context from `(name, rank)` pairs.
    pub fn new<I, S>(bundles: I) -> Result<Arc<Context>, BundleError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut sorted: BTreeMap<String, u32> = BTreeMap::new();
        for (name, rank) in bundles {
            let name = name.into();
            if rank == 0 {
                return Err(BundleError::InvalidRank(name, rank));
            }
            if sorted.insert(name.clone(), rank).is_some() {
                return Err(BundleError::DuplicateBundle(name));
            }
        }
        let mut names = Vec::new();
        let mut ranks = Vec::new();
        let mut lookup = BTreeMap::new();
        for (i, (name, rank)) in sorted.into_iter().enumerate() {
            lookup.insert(name.clone(), i as u16);
            names.push(name);
            ranks.push(rank);
        }
        Ok(Arc::new(Context {
            names,
            ranks,
            lookup,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub(crate) fn id_of(&self, name: &str) -> Result<u16, BundleError> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| BundleError::UnknownBundle(name.to_string()))
    }

    pub(crate) fn name_of(&self, id: u16) -> &str {
        &self.names[id as usize]
    }

    pub(crate) fn rank_of_id(&self, id: u16) -> u32 {
        self.ranks[id as usize]
    }

    /// Rank of a formal bundle by name.
    pub fn rank_of(&self, name: &str) -> Result<u32, BundleError> {
        Ok(self.rank_of_id(self.id_of(name)?))
    }
}

/// A bundle expression over the formal bundles of a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bundle {
    /// A formal bundle, by name.
    Named(String),
    /// Dual bundle (negates every Chern root).
    Dual(Box<Bundle>),
    /// Direct sum (concatenates root multisets; ranks add).
    Sum(Vec<Bundle>),
    /// Complexification `B ⊗ C ≅ B ⊕ conj(B)` (roots `{x_i} ∪ {-x_i}`).
    Complexify(Box<Bundle>),
    /// Twist by a line bundle (adds the line root to every root).
    TensorLine(Box<Bundle>, Box<Bundle>),
}

impl Bundle {
    pub fn named(name: impl Into<String>) -> Bundle {
        Bundle::Named(name.into())
    }

    /// Dual bundle; a double dual collapses back to the original.
    pub fn dual(self) -> Bundle {
        match self {
            Bundle::Dual(inner) => *inner,
            other => Bundle::Dual(Box::new(other)),
        }
    }

    /// Direct sum of one or more bundles.
    pub fn sum(parts: Vec<Bundle>) -> Result<Bundle, BundleError> {
        if parts.is_empty() {
            return Err(BundleError::EmptySum);
        }
        Ok(Bundle::Sum(parts))
    }

    pub fn complexify(self) -> Bundle {
        Bundle::Complexify(Box::new(self))
    }

    /// Twist by `line`, which must resolve to rank 1.
    pub fn tensor_line(self, line: Bundle) -> Bundle {
        Bundle::TensorLine(Box::new(self), Box::new(line))
    }

    /// Complex rank of the resolved bundle.
    pub fn rank(&self, ctx: &Context) -> Result<u32, BundleError> {
        match self {
            Bundle::Named(name) => ctx.rank_of(name),
            Bundle::Dual(b) => b.rank(ctx),
            Bundle::Sum(parts) => {
                let mut total = 0u32;
                for p in parts {
                    total += p.rank(ctx)?;
                }
                Ok(total)
            }
            Bundle::Complexify(b) => Ok(2 * b.rank(ctx)?),
            Bundle::TensorLine(b, line) => {
                let lr = line.rank(ctx)?;
                if lr != 1 {
                    return Err(BundleError::RankMismatch {
                        context: format!("line-bundle twist by `{line}`"),
                        expected: 1,
                        actual: lr,
                    });
                }
                b.rank(ctx)
            }
        }
    }

    /// Resolves to the multiset of Chern roots, each an integer linear form
    /// in the root variables of the formal bundles involved.
    pub(crate) fn roots(&self, ctx: &Context) -> Result<Vec<LinForm>, BundleError> {
        match self {
            Bundle::Named(name) => {
                let id = ctx.id_of(name)?;
                Ok((0..ctx.rank_of_id(id))
                    .map(|i| {
                        LinForm::var(RootVar {
                            bundle: id,
                            index: i as u16,
                        })
                    })
                    .collect())
            }
            Bundle::Dual(b) => Ok(b.roots(ctx)?.iter().map(LinForm::negate).collect()),
            Bundle::Sum(parts) => {
                if parts.is_empty() {
                    return Err(BundleError::EmptySum);
                }
                let mut all = Vec::new();
                for p in parts {
                    all.extend(p.roots(ctx)?);
                }
                Ok(all)
            }
            Bundle::Complexify(b) => {
                let base = b.roots(ctx)?;
                let mut all = base.clone();
                all.extend(base.iter().map(LinForm::negate));
                Ok(all)
            }
            Bundle::TensorLine(b, line) => {
                // Rank check happens here so malformed twists fail loudly.
                self.rank(ctx)?;
                let l = line.roots(ctx)?;
                let l0 = &l[0];
                Ok(b.roots(ctx)?.iter().map(|r| r.add(l0)).collect())
            }
        }
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bundle::Named(n) => write!(f, "{n}"),
            Bundle::Dual(b) => write!(f, "dual({b})"),
            Bundle::Sum(parts) => {
                write!(f, "sum(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Bundle::Complexify(b) => write!(f, "complexify({b})"),
            Bundle::TensorLine(b, l) => write!(f, "tensor({b}, {l})"),
        }
    }
}
