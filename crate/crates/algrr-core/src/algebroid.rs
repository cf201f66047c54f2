//! Finite-dimensional Lie algebroid presentations with constant structure
//! data, and the exact Chevalley–Eilenberg/Koszul complex they generate.
//!
//! A presentation is a rank-`n` free module with a bracket given by a
//! constant structure tensor `c[i][j][k]` (meaning `[e_i, e_j] = sum_k
//! c[i][j][k] e_k`), together with an anchor that is either zero (a point
//! base) or a constant matrix into a parallelizable frame of commuting
//! vector fields. Representations are given by commuting-connection
//! matrices, one per generator. Everything is exact rational arithmetic;
//! cohomology dimensions come from fraction-free ranks of the explicit
//! differential matrices.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{is_zero_matrix, mat_mul, mat_sub, rank};
use crate::rational::{int, Rat};

/// Anchor data for a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// The zero anchor: the base is a point, so the algebroid is a Lie
    /// algebra (with coefficients in a representation).
    Point,
    /// A constant anchor matrix into an `m`-dimensional parallelizable
    /// frame of commuting vector fields; row `i` holds the coefficients
    /// of the image of `e_i`.
    ParallelizableConstant(Vec<Vec<Rat>>),
}

impl Anchor {
    fn base_dim(&self) -> usize {
        match self {
            Anchor::Point => 0,
            Anchor::ParallelizableConstant(m) => m.first().map(Vec::len).unwrap_or(0),
        }
    }
}

/// Everything the validator found wrong with a presentation. Index pairs
/// and triples are 1-based, matching the generator names `e1, e2, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Pairs `(i, j)` with `c[i][j][.] != -c[j][i][.]` (diagonal entries
    /// appear as `(i, i)` when `[e_i, e_i] != 0`).
    pub antisymmetry_violations: Vec<(usize, usize)>,
    /// Triples `(i, j, k)`, `i < j < k`, where the Jacobi identity fails.
    pub jacobi_violations: Vec<(usize, usize, usize)>,
    /// Pairs `(i, j)` where the anchor fails to kill the bracket, i.e.
    /// the image of `[e_i, e_j]` under the anchor is nonzero even though
    /// the anchor lands in commuting fields.
    pub anchor_violations: Vec<(usize, usize)>,
}

impl ValidationReport {
    /// True when no violations of any kind were found.
    pub fn is_valid(&self) -> bool {
        self.antisymmetry_violations.is_empty()
            && self.jacobi_violations.is_empty()
            && self.anchor_violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "presentation is valid");
        }
        let mut parts = Vec::new();
        if !self.antisymmetry_violations.is_empty() {
            let list: Vec<String> = self
                .antisymmetry_violations
                .iter()
                .map(|(i, j)| format!("({i},{j})"))
                .collect();
            parts.push(format!("antisymmetry fails at {}", list.join(", ")));
        }
        if !self.jacobi_violations.is_empty() {
            let list: Vec<String> = self
                .jacobi_violations
                .iter()
                .map(|(i, j, k)| format!("({i},{j},{k})"))
                .collect();
            parts.push(format!("Jacobi identity fails at {}", list.join(", ")));
        }
        if !self.anchor_violations.is_empty() {
            let list: Vec<String> = self
                .anchor_violations
                .iter()
                .map(|(i, j)| format!("({i},{j})"))
                .collect();
            parts.push(format!("anchor compatibility fails at {}", list.join(", ")));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Errors from constructing or using presentations and representations.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebroidError {
    #[error("structure data has wrong shape: {0}")]
    InvalidShape(String),
    #[error("bracket entry references generator {index} outside 1..={dim}")]
    BracketIndex { index: usize, dim: usize },
    #[error("invalid presentation: {report}")]
    InvalidPresentation { report: ValidationReport },
    #[error("representation is not flat: curvature is nonzero on (e{}, e{})", pair.0, pair.1)]
    NotFlat { pair: (usize, usize) },
    #[error("representation has {actual} matrices, presentation needs {expected}")]
    RepresentationSize { expected: usize, actual: usize },
    #[error("no complex structure attached to this presentation")]
    NoComplexStructure,
    #[error("endomorphism does not square to minus the identity")]
    NotAlmostComplex,
}

/// One sparse bracket declaration `(i, j, terms)`: 1-based generator
/// indices `i < j` with `[e_i, e_j] = sum of coeff * e_k` over `terms`.
pub type SparseBracket = (usize, usize, Vec<(usize, Rat)>);

/// A constant-coefficient algebroid presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    dim: usize,
    c: Vec<Vec<Vec<Rat>>>,
    anchor: Anchor,
    complex_structure: Option<Vec<Vec<Rat>>>,
}

impl Presentation {
    /// Build from the full structure tensor `c[i][j][k]` (0-based).
    pub fn from_structure_constants(
        c: Vec<Vec<Vec<Rat>>>,
        anchor: Anchor,
    ) -> Result<Self, AlgebroidError> {
        let dim = c.len();
        for plane in &c {
            if plane.len() != dim || plane.iter().any(|row| row.len() != dim) {
                return Err(AlgebroidError::InvalidShape(format!(
                    "structure tensor must be {dim}x{dim}x{dim}"
                )));
            }
        }
        check_anchor_shape(&anchor, dim)?;
        Ok(Presentation {
            dim,
            c,
            anchor,
            complex_structure: None,
        })
    }

    /// Build from a sparse bracket list: entries `(i, j, terms)` with
    /// 1-based `i < j` declare `[e_i, e_j] = sum terms`, and the
    /// antisymmetric counterpart is filled in automatically.
    pub fn from_brackets(
        dim: usize,
        brackets: &[SparseBracket],
        anchor: Anchor,
    ) -> Result<Self, AlgebroidError> {
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for (i, j, terms) in brackets {
            for &idx in [i, j].into_iter().chain(terms.iter().map(|(k, _)| k)) {
                if idx == 0 || idx > dim {
                    return Err(AlgebroidError::BracketIndex { index: idx, dim });
                }
            }
            for (k, coeff) in terms {
                c[i - 1][j - 1][k - 1] += coeff;
                c[j - 1][i - 1][k - 1] -= coeff;
            }
        }
        check_anchor_shape(&anchor, dim)?;
        Ok(Presentation {
            dim,
            c,
            anchor,
            complex_structure: None,
        })
    }

    /// Attach an almost-complex endomorphism, given as an `n x n` matrix
    /// whose column `i` is the image of `e_i`.
    pub fn with_complex_structure(mut self, j: Vec<Vec<Rat>>) -> Result<Self, AlgebroidError> {
        if j.len() != self.dim || j.iter().any(|row| row.len() != self.dim) {
            return Err(AlgebroidError::InvalidShape(format!(
                "complex structure must be {0}x{0}",
                self.dim
            )));
        }
        self.complex_structure = Some(j);
        Ok(self)
    }

    /// Number of generators.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The anchor.
    pub fn anchor(&self) -> &Anchor {
        &self.anchor
    }

    /// Structure constant `c[i][j][k]` (0-based indices).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    /// Bracket of two coefficient vectors.
    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim;
        let mut out = vec![Rat::zero(); n];
        for (p, up) in u.iter().enumerate() {
            if up.is_zero() {
                continue;
            }
            for (q, vq) in v.iter().enumerate() {
                if vq.is_zero() {
                    continue;
                }
                let scale = up * vq;
                for (m, out_m) in out.iter_mut().enumerate() {
                    if !self.c[p][q][m].is_zero() {
                        *out_m += &scale * &self.c[p][q][m];
                    }
                }
            }
        }
        out
    }

    /// Check antisymmetry, the Jacobi identity, and anchor compatibility,
    /// reporting every violation rather than stopping at the first.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in i..n {
                let bad = (0..n).any(|k| !(&self.c[i][j][k] + &self.c[j][i][k]).is_zero());
                if bad {
                    report.antisymmetry_violations.push((i + 1, j + 1));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobi_holds(i, j, k) {
                        report.jacobi_violations.push((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        if let Anchor::ParallelizableConstant(rho) = &self.anchor {
            let m = self.anchor.base_dim();
            for i in 0..n {
                for j in i + 1..n {
                    // Constant commuting fields bracket to zero, so the
                    // anchor must send [e_i, e_j] to zero.
                    let mut image = vec![Rat::zero(); m];
                    for (rho_k, coeff) in rho.iter().zip(&self.c[i][j]) {
                        if coeff.is_zero() {
                            continue;
                        }
                        for (col, cell) in image.iter_mut().enumerate() {
                            *cell += coeff * &rho_k[col];
                        }
                    }
                    if image.iter().any(|x| !x.is_zero()) {
                        report.anchor_violations.push((i + 1, j + 1));
                    }
                }
            }
        }
        report
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.dim;
        for m in 0..n {
            let mut total = Rat::zero();
            for l in 0..n {
                total += &self.c[i][j][l] * &self.c[l][k][m];
                total += &self.c[j][k][l] * &self.c[l][i][m];
                total += &self.c[k][i][l] * &self.c[l][j][m];
            }
            if !total.is_zero() {
                return false;
            }
        }
        true
    }

    /// Validate and wrap failures in an error.
    pub fn require_valid(&self) -> Result<(), AlgebroidError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(AlgebroidError::InvalidPresentation { report })
        }
    }

    /// The attached complex structure, if any.
    pub fn complex_structure(&self) -> Option<&Vec<Vec<Rat>>> {
        self.complex_structure.as_ref()
    }
}

fn check_anchor_shape(anchor: &Anchor, dim: usize) -> Result<(), AlgebroidError> {
    if let Anchor::ParallelizableConstant(rho) = anchor {
        if rho.len() != dim {
            return Err(AlgebroidError::InvalidShape(format!(
                "anchor matrix must have {dim} rows"
            )));
        }
        let m = rho.first().map(Vec::len).unwrap_or(0);
        if m == 0 || rho.iter().any(|row| row.len() != m) {
            return Err(AlgebroidError::InvalidShape(
                "anchor matrix rows must all have the same nonzero length".into(),
            ));
        }
    }
    Ok(())
}

/// A representation given by constant connection matrices `A_i` (one per
/// generator) acting on a rank-`r` module: the covariant derivative along
/// `e_i` is `A_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    matrices: Vec<Vec<Vec<Rat>>>,
    fiber_dim: usize,
}

impl Representation {
    /// Build from explicit `r x r` matrices, one per generator.
    pub fn new(matrices: Vec<Vec<Vec<Rat>>>) -> Result<Self, AlgebroidError> {
        let r = matrices
            .first()
            .map(|m| m.len())
            .ok_or_else(|| AlgebroidError::InvalidShape("need at least one matrix".into()))?;
        if r == 0 {
            return Err(AlgebroidError::InvalidShape(
                "fiber dimension must be positive".into(),
            ));
        }
        for m in &matrices {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(AlgebroidError::InvalidShape(format!(
                    "all connection matrices must be {r}x{r}"
                )));
            }
        }
        Ok(Representation {
            matrices,
            fiber_dim: r,
        })
    }

    /// The trivial rank-1 representation for an `n`-generator presentation.
    pub fn trivial(n: usize) -> Self {
        Representation {
            matrices: vec![vec![vec![Rat::zero(); 1]; 1]; n],
            fiber_dim: 1,
        }
    }

    /// Fiber dimension `r`.
    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    /// Connection matrix along `e_i` (0-based).
    pub fn matrix(&self, i: usize) -> &Vec<Vec<Rat>> {
        &self.matrices[i]
    }

    fn check_size(&self, pres: &Presentation) -> Result<(), AlgebroidError> {
        if self.matrices.len() != pres.dim() {
            return Err(AlgebroidError::RepresentationSize {
                expected: pres.dim(),
                actual: self.matrices.len(),
            });
        }
        Ok(())
    }
}

/// A 1-based generator pair with the curvature matrix attached to it.
pub type CurvatureComponent = ((usize, usize), Vec<Vec<Rat>>);

/// Curvature of a representation's connection: one matrix
/// `R(e_i, e_j) = [A_i, A_j] - sum_k c[i][j][k] A_k` per pair `i < j`
/// (pairs are reported 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureReport {
    pub components: Vec<CurvatureComponent>,
    pub flat: bool,
}

/// Compute the curvature of `rep` over `pres` for every generator pair.
pub fn connection_curvature(
    pres: &Presentation,
    rep: &Representation,
) -> Result<CurvatureReport, AlgebroidError> {
    rep.check_size(pres)?;
    let n = pres.dim();
    let r = rep.fiber_dim();
    let mut components = Vec::new();
    let mut flat = true;
    for i in 0..n {
        for j in i + 1..n {
            let ai = rep.matrix(i);
            let aj = rep.matrix(j);
            let mut curv = mat_sub(&mat_mul(ai, aj), &mat_mul(aj, ai));
            for k in 0..n {
                let coeff = pres.structure_constant(i, j, k);
                if coeff.is_zero() {
                    continue;
                }
                let ak = rep.matrix(k);
                for a in 0..r {
                    for b in 0..r {
                        curv[a][b] -= coeff * &ak[a][b];
                    }
                }
            }
            if !is_zero_matrix(&curv) {
                flat = false;
            }
            components.push(((i + 1, j + 1), curv));
        }
    }
    Ok(CurvatureReport { components, flat })
}

fn first_curved_pair(
    pres: &Presentation,
    rep: &Representation,
) -> Result<Option<(usize, usize)>, AlgebroidError> {
    let report = connection_curvature(pres, rep)?;
    Ok(report
        .components
        .into_iter()
        .find(|(_, m)| !is_zero_matrix(m))
        .map(|(pair, _)| pair))
}

/// Lexicographically ordered `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance to the next subset in lex order.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// The degree-`k` Koszul differential of `(pres, rep)` as an explicit
/// matrix from `Lambda^k ⊗ V` to `Lambda^{k+1} ⊗ V`. Basis vectors are
/// wedge monomials in lex order, with the fiber index varying fastest.
/// The sign convention is the standard Cartan formula: summand `a` of the
/// connection term carries `(-1)^a`, and the bracket summand for slots
/// `a < b` carries `(-1)^{a+b}` (0-based slots).
pub fn koszul_differential(
    pres: &Presentation,
    rep: &Representation,
    k: usize,
) -> Result<Vec<Vec<Rat>>, AlgebroidError> {
    rep.check_size(pres)?;
    let n = pres.dim();
    let r = rep.fiber_dim();
    let sources = subsets(n, k);
    let targets = subsets(n, k + 1);
    let mut source_index = std::collections::BTreeMap::new();
    for (idx, s) in sources.iter().enumerate() {
        source_index.insert(s.clone(), idx);
    }
    let rows = targets.len() * r;
    let cols = sources.len() * r;
    let mut matrix = vec![vec![Rat::zero(); cols]; rows];
    for (t_idx, t) in targets.iter().enumerate() {
        // Connection term: remove slot a, act by the connection matrix.
        for (a, &gen) in t.iter().enumerate() {
            let mut rest = t.clone();
            rest.remove(a);
            let Some(&s_idx) = source_index.get(&rest) else {
                continue;
            };
            let sign = if a % 2 == 0 { int(1) } else { int(-1) };
            let mat = rep.matrix(gen);
            for row_f in 0..r {
                for col_f in 0..r {
                    if !mat[row_f][col_f].is_zero() {
                        matrix[t_idx * r + row_f][s_idx * r + col_f] += &sign * &mat[row_f][col_f];
                    }
                }
            }
        }
        // Bracket term: contract slots a < b through the structure tensor.
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                let (i, j) = (t[a], t[b]);
                let mut rest = t.clone();
                rest.remove(b);
                rest.remove(a);
                let sign = if (a + b) % 2 == 0 { int(1) } else { int(-1) };
                for m in 0..n {
                    let coeff = pres.structure_constant(i, j, m);
                    if coeff.is_zero() || rest.contains(&m) {
                        continue;
                    }
                    let pos = rest.iter().filter(|&&x| x < m).count();
                    let mut sorted = rest.clone();
                    sorted.insert(pos, m);
                    let Some(&s_idx) = source_index.get(&sorted) else {
                        continue;
                    };
                    let insert_sign = if pos % 2 == 0 { int(1) } else { int(-1) };
                    let total = &sign * &(coeff * &insert_sign);
                    for f in 0..r {
                        matrix[t_idx * r + f][s_idx * r + f] += &total;
                    }
                }
            }
        }
    }
    Ok(matrix)
}

/// Cohomology dimensions `dim H^0, ..., dim H^n` of a valid presentation
/// with coefficients in a flat representation. Fails with a full
/// validation report if the presentation is inconsistent, and with the
/// first curved pair if the representation is not flat.
pub fn cohomology_dims(
    pres: &Presentation,
    rep: &Representation,
) -> Result<Vec<usize>, AlgebroidError> {
    pres.require_valid()?;
    rep.check_size(pres)?;
    if let Some(pair) = first_curved_pair(pres, rep)? {
        return Err(AlgebroidError::NotFlat { pair });
    }
    let n = pres.dim();
    let r = rep.fiber_dim();
    let mut ranks = vec![0usize; n + 1];
    for (k, slot) in ranks.iter_mut().enumerate().take(n) {
        *slot = rank(&koszul_differential(pres, rep, k)?);
    }
    // The top differential (degree n) maps into the zero module.
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let chain_dim = binomial(n, k) * r;
        let rank_out = ranks[k];
        let rank_in = if k == 0 { 0 } else { ranks[k - 1] };
        dims.push(chain_dim - rank_out - rank_in);
    }
    Ok(dims)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result = 1usize;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Result of the integrability test for an attached complex structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisReport {
    /// True when the torsion vanishes on all generator pairs.
    pub integrable: bool,
    /// First pair (1-based) with nonzero torsion, and the torsion vector.
    pub violation: Option<((usize, usize), Vec<Rat>)>,
    /// For integrable structures on even dimension `n = 2m`, the induced
    /// splitting `(m, m)` of the top degree.
    pub bigrading: Option<(usize, usize)>,
}

/// Evaluate the Nijenhuis torsion
/// `N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]`
/// on all generator pairs of a valid presentation carrying an
/// almost-complex endomorphism (`J^2 = -I` is checked first).
pub fn nijenhuis_check(pres: &Presentation) -> Result<NijenhuisReport, AlgebroidError> {
    pres.require_valid()?;
    let j = pres
        .complex_structure()
        .ok_or(AlgebroidError::NoComplexStructure)?;
    let n = pres.dim();
    let jj = mat_mul(j, j);
    let mut minus_identity = vec![vec![Rat::zero(); n]; n];
    for (i, row) in minus_identity.iter_mut().enumerate() {
        row[i] = int(-1);
    }
    if jj != minus_identity {
        return Err(AlgebroidError::NotAlmostComplex);
    }
    let col = |i: usize| -> Vec<Rat> { (0..n).map(|m| j[m][i].clone()).collect() };
    let apply_j = |v: &[Rat]| -> Vec<Rat> {
        (0..n)
            .map(|m| (0..n).map(|l| &j[m][l] * &v[l]).sum())
            .collect()
    };
    let mut violation = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            let ea: Vec<Rat> = (0..n)
                .map(|m| if m == a { int(1) } else { int(0) })
                .collect();
            let eb: Vec<Rat> = (0..n)
                .map(|m| if m == b { int(1) } else { int(0) })
                .collect();
            let ja = col(a);
            let jb = col(b);
            let mut torsion = pres.bracket(&ja, &jb);
            let t1 = apply_j(&pres.bracket(&ja, &eb));
            let t2 = apply_j(&pres.bracket(&ea, &jb));
            let t3 = pres.bracket(&ea, &eb);
            for m in 0..n {
                torsion[m] -= &t1[m];
                torsion[m] -= &t2[m];
                torsion[m] -= &t3[m];
            }
            if torsion.iter().any(|x| !x.is_zero()) {
                violation = Some(((a + 1, b + 1), torsion));
                break 'outer;
            }
        }
    }
    let integrable = violation.is_none();
    let bigrading = (integrable && n.is_multiple_of(2)).then_some((n / 2, n / 2));
    Ok(NijenhuisReport {
        integrable,
        violation,
        bigrading,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn heisenberg() -> Presentation {
        Presentation::from_brackets(3, &[(1, 2, vec![(3, int(1))])], Anchor::Point).unwrap()
    }

    #[test]
    fn bracket_list_fills_antisymmetric_tensor() {
        let p = heisenberg();
        assert_eq!(p.structure_constant(0, 1, 2), &int(1));
        assert_eq!(p.structure_constant(1, 0, 2), &int(-1));
        assert!(p.validate().is_valid());
    }

    #[test]
    fn jacobi_failure_is_reported_with_its_triple() {
        // [e1,e2] = e3 and [e1,e3] = e1 breaks Jacobi on (1,2,3).
        let p = Presentation::from_brackets(
            3,
            &[(1, 2, vec![(3, int(1))]), (1, 3, vec![(1, int(1))])],
            Anchor::Point,
        )
        .unwrap();
        let report = p.validate();
        assert_eq!(report.jacobi_violations, vec![(1, 2, 3)]);
        assert!(!report.is_valid());
    }

    #[test]
    fn anchor_must_kill_brackets() {
        // rho(e1) = d/dx, rho(e2) = d/dy, rho(e3) = 0 works for the
        // Heisenberg bracket; sending e3 somewhere nonzero does not.
        let good = Presentation::from_brackets(
            3,
            &[(1, 2, vec![(3, int(1))])],
            Anchor::ParallelizableConstant(vec![
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                vec![int(0), int(0)],
            ]),
        )
        .unwrap();
        assert!(good.validate().is_valid());

        let bad = Presentation::from_brackets(
            3,
            &[(1, 2, vec![(3, int(1))])],
            Anchor::ParallelizableConstant(vec![
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                vec![int(1), int(0)],
            ]),
        )
        .unwrap();
        assert_eq!(bad.validate().anchor_violations, vec![(1, 2)]);
    }

    #[test]
    fn top_form_differential_sign_matches_cartan_convention() {
        // d(e3*) = -e1* ^ e2* for [e1,e2] = e3 with trivial coefficients.
        let p = heisenberg();
        let rep = Representation::trivial(3);
        let d1 = koszul_differential(&p, &rep, 1).unwrap();
        // Sources: {0},{1},{2}; targets: {0,1},{0,2},{1,2}.
        assert_eq!(d1[0][2], int(-1));
        assert!(d1.iter().flatten().filter(|x| !x.is_zero()).count() == 1);
    }

    #[test]
    fn heisenberg_cohomology_dims() {
        let dims = cohomology_dims(&heisenberg(), &Representation::trivial(3)).unwrap();
        assert_eq!(dims, vec![1, 2, 2, 1]);
    }

    #[test]
    fn abelian_cohomology_is_full_exterior_algebra() {
        let p = Presentation::from_brackets(4, &[], Anchor::Point).unwrap();
        let dims = cohomology_dims(&p, &Representation::trivial(4)).unwrap();
        assert_eq!(dims, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn invalid_presentation_is_rejected_for_cohomology() {
        let p = Presentation::from_brackets(
            3,
            &[(1, 2, vec![(3, int(1))]), (1, 3, vec![(1, int(1))])],
            Anchor::Point,
        )
        .unwrap();
        let err = cohomology_dims(&p, &Representation::trivial(3)).unwrap_err();
        assert!(matches!(err, AlgebroidError::InvalidPresentation { .. }));
    }

    #[test]
    fn curvature_of_nonflat_representation() {
        // Abelian rank-2 base, A1 = [[0,1],[0,0]], A2 = [[0,0],[1,0]];
        // curvature [A1,A2] = [[1,0],[0,-1]].
        let p = Presentation::from_brackets(2, &[], Anchor::Point).unwrap();
        let rep = Representation::new(vec![
            vec![vec![int(0), int(1)], vec![int(0), int(0)]],
            vec![vec![int(0), int(0)], vec![int(1), int(0)]],
        ])
        .unwrap();
        let report = connection_curvature(&p, &rep).unwrap();
        assert!(!report.flat);
        assert_eq!(report.components.len(), 1);
        assert_eq!(report.components[0].0, (1, 2));
        assert_eq!(
            report.components[0].1,
            vec![vec![int(1), int(0)], vec![int(0), int(-1)]]
        );
        let err = cohomology_dims(&p, &rep).unwrap_err();
        assert_eq!(err, AlgebroidError::NotFlat { pair: (1, 2) });
    }

    #[test]
    fn rotation_complex_structure_is_integrable() {
        let p = Presentation::from_brackets(2, &[], Anchor::Point)
            .unwrap()
            .with_complex_structure(vec![vec![int(0), int(-1)], vec![int(1), int(0)]])
            .unwrap();
        let report = nijenhuis_check(&p).unwrap();
        assert!(report.integrable);
        assert_eq!(report.bigrading, Some((1, 1)));
    }

    #[test]
    fn identity_is_not_almost_complex() {
        let p = Presentation::from_brackets(2, &[], Anchor::Point)
            .unwrap()
            .with_complex_structure(vec![vec![int(1), int(0)], vec![int(0), int(1)]])
            .unwrap();
        assert_eq!(
            nijenhuis_check(&p).unwrap_err(),
            AlgebroidError::NotAlmostComplex
        );
    }

    #[test]
    fn missing_complex_structure_is_an_error() {
        let p = Presentation::from_brackets(2, &[], Anchor::Point).unwrap();
        assert_eq!(
            nijenhuis_check(&p).unwrap_err(),
            AlgebroidError::NoComplexStructure
        );
    }

    #[test]
    fn fractional_structure_constants_are_exact() {
        // [e1,e2] = (1/3) e3 still gives the Heisenberg-shaped cohomology.
        let p =
            Presentation::from_brackets(3, &[(1, 2, vec![(3, rat(1, 3))])], Anchor::Point).unwrap();
        let dims = cohomology_dims(&p, &Representation::trivial(3)).unwrap();
        assert_eq!(dims, vec![1, 2, 2, 1]);
    }
}
