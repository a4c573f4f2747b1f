//! The graded Cousin complex of a Schubert variety: term structure, the
//! pattern formula for local cohomology, the Koszul decomposition of the
//! weight-graded pieces, and an independent linear-algebra oracle that
//! recomputes cohomology from sparse sign matrices by exact rank.

use crate::dyck::{
    bulletless_patterns, enumerate_patterns, BulletFilter, DyckPath, DyckPattern, PatternFilter,
};
use crate::exec;
use crate::linalg::SparseIntMatrix;
use crate::verma::{ModuleKind, WeightGradedModule};
use crate::young::{binomial, BoxCoord, GrassContext, Partition, YoungError};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CousinError {
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("invalid base/pattern pair: {0}")]
    InvalidPair(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// Term structure of the Cousin complex: degree j holds the subdiagrams of
/// size dim - j, and each differential pair removes one corner.
#[derive(Debug, Clone)]
pub struct CousinComplex {
    ctx: GrassContext,
    top: Partition,
    terms: BTreeMap<usize, Vec<Partition>>,
    differentials: Vec<(Partition, Partition)>,
}

impl CousinComplex {
    pub fn top(&self) -> &Partition {
        &self.top
    }

    pub fn context(&self) -> &GrassContext {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<usize, Vec<Partition>> {
        &self.terms
    }

    pub fn differentials(&self) -> &[(Partition, Partition)] {
        &self.differentials
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "context": self.ctx,
            "partition": self.top,
            "dim": self.ctx.dim(),
            "codim": self.ctx.codim(&self.top),
            "terms": self.terms.iter().map(|(j, bs)| serde_json::json!({
                "degree": j,
                "summands": bs,
            })).collect::<Vec<_>>(),
            "differentials": self.differentials.iter().map(|(src, dst)| {
                serde_json::json!([src, dst])
            }).collect::<Vec<_>>(),
        })
    }
}

/// Terms and differential pairs of the Cousin complex of `a`.
pub fn cousin_terms(ctx: &GrassContext, a: &Partition) -> Result<CousinComplex, CousinError> {
    ctx.check_fits(a)?;
    let d = ctx.dim();
    let c = ctx.codim(a);
    let mut terms = BTreeMap::new();
    for j in c..=d {
        terms.insert(j, a.subpartitions_of_size(d - j));
    }
    let mut differentials = Vec::new();
    for j in c..d {
        for src in &terms[&j] {
            for corner in src.corners() {
                let dst = src
                    .remove_boxes(&[corner])
                    .expect("corner inside diagram")
                    .expect("removing a corner keeps a partition");
                differentials.push((src.clone(), dst));
            }
        }
    }
    Ok(CousinComplex {
        ctx: *ctx,
        top: a.clone(),
        terms,
        differentials,
    })
}

/// Local cohomology by the pattern formula: degree q collects the quotients
/// of the admissible augmented patterns with q + |a| - dim bullets, the
/// factor of a pattern with r paths sitting in weight dim + q + r.
pub fn local_cohomology(
    ctx: &GrassContext,
    a: &Partition,
) -> Result<BTreeMap<usize, WeightGradedModule>, CousinError> {
    ctx.check_fits(a)?;
    let d = ctx.dim() as i64;
    let patterns = enumerate_patterns(
        a,
        &PatternFilter {
            min_path_len: 3,
            bullets: BulletFilter::Any,
            path_count: None,
        },
    );
    let mut out: BTreeMap<usize, WeightGradedModule> = BTreeMap::new();
    for pat in patterns {
        let q = (pat.bullet_count() as i64 - a.size() as i64 + d) as usize;
        let weight = d + q as i64 + pat.path_count() as i64;
        out.entry(q)
            .or_insert_with(|| WeightGradedModule::new(ModuleKind::LocalCohomology, a.clone()))
            .add_factor(weight, pat.quotient().expect("admissible"), 1);
    }
    Ok(out)
}

/// The boxes of a/b that can be added to `b` jointly with a new length-one
/// path while keeping the pattern admissible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSet {
    boxes: Vec<BoxCoord>,
}

impl ExtensionSet {
    pub fn boxes(&self) -> &[BoxCoord] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

/// Extension set of (a, b, pattern): addable corners of `b` inside `a` whose
/// singleton path extends the pattern admissibly. Any subset of it can be
/// added jointly.
pub fn extension_boxes(
    a: &Partition,
    b: &Partition,
    pattern: &DyckPattern,
) -> Result<ExtensionSet, CousinError> {
    if !a.contains(b) {
        return Err(CousinError::InvalidPair(format!("{b} is not inside {a}")));
    }
    if pattern.shape() != b || pattern.bullet_count() > 0 || !pattern.is_admissible() {
        return Err(CousinError::InvalidPair(format!(
            "pattern must be an admissible bulletless pattern in {b}"
        )));
    }
    let mut boxes = Vec::new();
    for corner in b.addable_corners_in(a) {
        let grown = b.with_boxes(&[corner]).expect("addable corner");
        let mut paths: Vec<DyckPath> = pattern.paths().to_vec();
        paths.push(DyckPath::singleton(corner));
        let candidate =
            DyckPattern::new(grown, paths, Vec::new()).expect("disjoint boxes inside shape");
        if candidate.is_admissible() {
            boxes.push(corner);
        }
    }
    Ok(ExtensionSet { boxes })
}

/// One Koszul summand of a weight-graded Cousin complex: all terms carry the
/// same label, and the term at degree j has binomial(|I|, q - j) summands.
#[derive(Debug, Clone)]
pub struct KoszulBlock {
    base: Partition,
    pattern: DyckPattern,
    ext: ExtensionSet,
    degree: usize,
    label: Partition,
    weight: i64,
}

impl KoszulBlock {
    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn pattern(&self) -> &DyckPattern {
        &self.pattern
    }

    pub fn extension(&self) -> &ExtensionSet {
        &self.ext
    }

    pub fn label(&self) -> &Partition {
        &self.label
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn degree_span(&self) -> std::ops::RangeInclusive<usize> {
        (self.degree - self.ext.len())..=self.degree
    }

    pub fn term_dim(&self, j: usize) -> u64 {
        if !self.degree_span().contains(&j) {
            return 0;
        }
        binomial(self.ext.len(), self.degree - j)
    }

    /// Basis of the degree-j term: one element per subset J of the extension
    /// set with |J| = q - j, given by adding J to the base and to the pattern.
    pub fn term_basis(&self, j: usize) -> Vec<(Partition, DyckPattern)> {
        if !self.degree_span().contains(&j) {
            return Vec::new();
        }
        let want = self.degree - j;
        let mut out = Vec::new();
        let boxes = self.ext.boxes();
        for mask in 0u32..(1 << boxes.len()) {
            if mask.count_ones() as usize != want {
                continue;
            }
            let subset: Vec<BoxCoord> = boxes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &b)| b)
                .collect();
            let grown = self
                .base
                .with_boxes(&subset)
                .expect("extension subsets are jointly addable");
            let mut paths: Vec<DyckPath> = self.pattern.paths().to_vec();
            paths.extend(subset.iter().map(|&b| DyckPath::singleton(b)));
            let pat = DyckPattern::new(grown.clone(), paths, Vec::new())
                .expect("disjoint boxes inside shape");
            out.push((grown, pat));
        }
        out.sort();
        out
    }
}

/// The Koszul blocks of the weight-`weight` graded piece: one per pair of a
/// subdiagram b and a bulletless pattern in b with paths of length >= 3 and
/// weight - q - dim paths, where q = dim - |b|.
pub fn koszul_blocks(
    ctx: &GrassContext,
    a: &Partition,
    weight: i64,
) -> Result<Vec<KoszulBlock>, CousinError> {
    ctx.check_fits(a)?;
    let d = ctx.dim();
    let mut out = Vec::new();
    for q in ctx.codim(a)..=d {
        let r = weight - q as i64 - d as i64;
        if r < 0 {
            continue;
        }
        for b in a.subpartitions_of_size(d - q) {
            let patterns = enumerate_patterns(
                &b,
                &PatternFilter {
                    min_path_len: 3,
                    bullets: BulletFilter::Forbidden,
                    path_count: Some(r as usize),
                },
            );
            for pattern in patterns {
                let ext = extension_boxes(a, &b, &pattern)?;
                let label = pattern.quotient().expect("admissible");
                out.push(KoszulBlock {
                    base: b.clone(),
                    pattern,
                    ext,
                    degree: q,
                    label,
                    weight,
                });
            }
        }
    }
    Ok(out)
}

/// The pairs (b, pattern) whose extension set is empty: exactly the blocks
/// surviving in cohomology at (q, weight). Their induced augmented patterns
/// (same paths, bullets a/b) biject onto the degree-weight pattern set.
pub fn surviving_pairs(
    ctx: &GrassContext,
    a: &Partition,
    q: usize,
    weight: i64,
) -> Result<Vec<(Partition, DyckPattern)>, CousinError> {
    ctx.check_fits(a)?;
    let d = ctx.dim();
    let r = weight - q as i64 - d as i64;
    if r < 0 || q < ctx.codim(a) || q > d {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for b in a.subpartitions_of_size(d - q) {
        let patterns = enumerate_patterns(
            &b,
            &PatternFilter {
                min_path_len: 3,
                bullets: BulletFilter::Forbidden,
                path_count: Some(r as usize),
            },
        );
        for pattern in patterns {
            if extension_boxes(a, &b, &pattern)?.is_empty() {
                out.push((b.clone(), pattern));
            }
        }
    }
    Ok(out)
}

/// Map a surviving pair to its augmented pattern in `a`: keep the paths and
/// turn every box of a/b into a bullet.
pub fn pair_to_pattern(a: &Partition, b: &Partition, pattern: &DyckPattern) -> DyckPattern {
    let bullets: Vec<BoxCoord> = a
        .boxes()
        .into_iter()
        .filter(|&x| !b.has_box(x))
        .collect();
    DyckPattern::new(a.clone(), pattern.paths().to_vec(), bullets)
        .expect("pair support stays inside the ambient diagram")
}

/// Resource limits for the linear-algebra oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    /// Maximum ambient dimension k(n-k).
    pub max_dim: usize,
    /// Maximum total basis elements per (label, weight) complex.
    pub max_basis: usize,
    /// Recompute every rank modulo two primes and assert agreement.
    pub cross_check: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_dim: 16,
            max_basis: 50_000,
            cross_check: false,
        }
    }
}

impl OracleBudget {
    pub fn unlimited() -> Self {
        OracleBudget {
            max_dim: usize::MAX,
            max_basis: usize::MAX,
            cross_check: false,
        }
    }
}

/// The (label, weight) piece of the graded Cousin complex as sparse sign
/// matrices over explicit bases.
#[derive(Debug, Clone)]
pub struct GradedChainComplex {
    label: Partition,
    weight: i64,
    basis: BTreeMap<usize, Vec<(Partition, DyckPattern)>>,
    matrices: BTreeMap<usize, SparseIntMatrix>,
}

impl GradedChainComplex {
    pub fn label(&self) -> &Partition {
        &self.label
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn basis(&self, degree: usize) -> &[(Partition, DyckPattern)] {
        self.basis.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.basis.keys().copied().collect()
    }

    pub fn dimension(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    pub fn total_dimension(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// The differential from degree `degree` to `degree + 1`.
    pub fn matrix(&self, degree: usize) -> Option<&SparseIntMatrix> {
        self.matrices.get(&degree)
    }

    pub fn d_squared_is_zero(&self) -> bool {
        let degrees: Vec<usize> = self.matrices.keys().copied().collect();
        degrees.iter().all(|j| {
            match (self.matrices.get(j), self.matrices.get(&(j + 1))) {
                (Some(d0), Some(d1)) => d1.multiply(d0).is_zero(),
                _ => true,
            }
        })
    }

    /// Cohomology dimensions per degree by exact rank computation.
    pub fn cohomology_dims(&self, cross_check: bool) -> BTreeMap<usize, usize> {
        let rank = |j: usize| {
            self.matrices
                .get(&j)
                .map(|m| if cross_check { m.rank_checked() } else { m.rank() })
                .unwrap_or(0)
        };
        let mut out = BTreeMap::new();
        for (&j, elems) in &self.basis {
            let incoming = if j == 0 { 0 } else { rank(j - 1) };
            let h = elems.len() - rank(j) - incoming;
            if h > 0 {
                out.insert(j, h);
            }
        }
        out
    }
}

type GradedBases = BTreeMap<(Partition, i64), BTreeMap<usize, Vec<(Partition, DyckPattern)>>>;

/// Bases of every (label, weight) piece of the graded Cousin complex of `a`:
/// degree j collects the pairs (b, pattern) with |b| = dim - j and the
/// pattern bulletless in b with weight - j - dim paths and quotient equal to
/// the label.
fn graded_bases(ctx: &GrassContext, a: &Partition) -> GradedBases {
    let d = ctx.dim();
    let per_sub: Vec<(Partition, Vec<DyckPattern>)> = a
        .subpartitions()
        .into_iter()
        .map(|b| {
            let pats = bulletless_patterns(&b);
            (b, pats)
        })
        .collect();
    let mut out: GradedBases = BTreeMap::new();
    for (b, pats) in per_sub {
        let degree = d - b.size();
        for pat in pats {
            let label = pat.quotient().expect("admissible");
            let weight = pat.path_count() as i64 + 2 * d as i64 - b.size() as i64;
            out.entry((label, weight))
                .or_default()
                .entry(degree)
                .or_default()
                .push((b.clone(), pat));
        }
    }
    for degrees in out.values_mut() {
        for elems in degrees.values_mut() {
            elems.sort();
        }
    }
    out
}

/// Labels (with multiplicity) of the weight-graded Cousin terms, keyed by
/// weight and degree.
pub fn weight_graded_terms(
    ctx: &GrassContext,
    a: &Partition,
) -> Result<BTreeMap<i64, BTreeMap<usize, Vec<Partition>>>, CousinError> {
    ctx.check_fits(a)?;
    let mut out: BTreeMap<i64, BTreeMap<usize, Vec<Partition>>> = BTreeMap::new();
    for ((label, weight), degrees) in graded_bases(ctx, a) {
        for (j, elems) in degrees {
            out.entry(weight)
                .or_default()
                .entry(j)
                .or_default()
                .extend(std::iter::repeat_n(label.clone(), elems.len()));
        }
    }
    for degrees in out.values_mut() {
        for labels in degrees.values_mut() {
            labels.sort();
        }
    }
    Ok(out)
}

fn complex_from_basis(
    a: &Partition,
    label: Partition,
    weight: i64,
    basis: BTreeMap<usize, Vec<(Partition, DyckPattern)>>,
) -> GradedChainComplex {
    let index: BTreeMap<usize, HashMap<(Partition, DyckPattern), usize>> = basis
        .iter()
        .map(|(&j, elems)| {
            (
                j,
                elems
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, e)| (e, i))
                    .collect(),
            )
        })
        .collect();
    let degrees: Vec<usize> = basis.keys().copied().collect();
    let (&min_deg, &max_deg) = match (degrees.first(), degrees.last()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => {
            return GradedChainComplex {
                label,
                weight,
                basis,
                matrices: BTreeMap::new(),
            }
        }
    };
    let empty = Vec::new();
    let mut matrices = BTreeMap::new();
    for j in min_deg..max_deg {
        let src = basis.get(&j).unwrap_or(&empty);
        let dst = basis.get(&(j + 1)).unwrap_or(&empty);
        let mut mat = SparseIntMatrix::new(dst.len(), src.len());
        if let Some(dst_index) = index.get(&(j + 1)) {
            for (col, (sub, pat)) in src.iter().enumerate() {
                let skew: Vec<BoxCoord> = a
                    .boxes()
                    .into_iter()
                    .filter(|&x| !sub.has_box(x))
                    .collect();
                for path in pat.paths() {
                    if !path.is_singleton() {
                        continue;
                    }
                    let removed = path.start();
                    let Some(shrunk) = sub
                        .remove_boxes(&[removed])
                        .expect("pattern boxes lie inside the subdiagram")
                    else {
                        debug_assert!(false, "singleton paths of admissible patterns are corners");
                        continue;
                    };
                    let remaining: Vec<DyckPath> = pat
                        .paths()
                        .iter()
                        .filter(|p| *p != path)
                        .cloned()
                        .collect();
                    let target = DyckPattern::new(shrunk.clone(), remaining, Vec::new())
                        .expect("removal keeps boxes disjoint");
                    let Some(&row) = dst_index.get(&(shrunk, target)) else {
                        debug_assert!(false, "removal target missing from basis");
                        continue;
                    };
                    // sign: parity of the removed box among a/b in reading order
                    let smaller = skew.iter().filter(|x| **x < removed).count();
                    let sign = if smaller % 2 == 0 { 1 } else { -1 };
                    mat.push(row, col, sign);
                }
            }
        }
        matrices.insert(j, mat);
    }
    GradedChainComplex {
        label,
        weight,
        basis,
        matrices,
    }
}

/// The (label, weight) piece of the graded Cousin complex of `a`.
pub fn graded_complex(
    ctx: &GrassContext,
    a: &Partition,
    weight: i64,
    label: &Partition,
) -> Result<GradedChainComplex, CousinError> {
    ctx.check_fits(a)?;
    let basis = graded_bases(ctx, a)
        .remove(&(label.clone(), weight))
        .unwrap_or_default();
    Ok(complex_from_basis(a, label.clone(), weight, basis))
}

/// Every (label, weight) piece of the graded Cousin complex, within budget.
pub fn graded_complexes(
    ctx: &GrassContext,
    a: &Partition,
    budget: &OracleBudget,
) -> Result<Vec<GradedChainComplex>, CousinError> {
    ctx.check_fits(a)?;
    if ctx.dim() > budget.max_dim {
        return Err(CousinError::BudgetExceeded(format!(
            "{ctx} has dimension {} > {}",
            ctx.dim(),
            budget.max_dim
        )));
    }
    let bases = graded_bases(ctx, a);
    for ((label, weight), degrees) in &bases {
        let total: usize = degrees.values().map(Vec::len).sum();
        if total > budget.max_basis {
            return Err(CousinError::BudgetExceeded(format!(
                "label {label} weight {weight} of {a} in {ctx} needs {total} basis elements > {}",
                budget.max_basis
            )));
        }
    }
    let entries: Vec<_> = bases.into_iter().collect();
    Ok(exec::map_collect(entries, |((label, weight), basis)| {
        complex_from_basis(a, label, weight, basis)
    }))
}

/// Local cohomology recomputed by exact rank on the graded Cousin complex.
/// Output has the same shape as `local_cohomology`.
pub fn local_cohomology_oracle(
    ctx: &GrassContext,
    a: &Partition,
    budget: &OracleBudget,
) -> Result<BTreeMap<usize, WeightGradedModule>, CousinError> {
    let complexes = graded_complexes(ctx, a, budget)?;
    let cohomologies = exec::map_collect(complexes, |cx| {
        let h = cx.cohomology_dims(budget.cross_check);
        (cx.label().clone(), cx.weight(), h)
    });
    let mut out: BTreeMap<usize, WeightGradedModule> = BTreeMap::new();
    for (label, weight, h) in cohomologies {
        for (q, dim) in h {
            out.entry(q)
                .or_insert_with(|| WeightGradedModule::new(ModuleKind::LocalCohomology, a.clone()))
                .add_factor(weight, label.clone(), dim);
        }
    }
    Ok(out)
}

/// One Euler-characteristic comparison: alternating sums of term and
/// cohomology multiplicities for a fixed (label, weight).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerEntry {
    pub label: Partition,
    pub weight: i64,
    pub terms_side: i64,
    pub cohomology_side: i64,
}

#[derive(Debug, Clone, Default)]
pub struct EulerReport {
    pub mismatches: Vec<EulerEntry>,
}

impl EulerReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Per (label, weight): the alternating sum of graded term multiplicities
/// must match the alternating sum of cohomology multiplicities from the
/// pattern formula. Both sides are computed independently.
pub fn euler_check(ctx: &GrassContext, a: &Partition) -> Result<EulerReport, CousinError> {
    let mut lhs: BTreeMap<(Partition, i64), i64> = BTreeMap::new();
    for ((label, weight), degrees) in graded_bases(ctx, a) {
        let sum: i64 = degrees
            .iter()
            .map(|(&j, elems)| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * elems.len() as i64
            })
            .sum();
        lhs.insert((label, weight), sum);
    }
    let mut rhs: BTreeMap<(Partition, i64), i64> = BTreeMap::new();
    for (q, module) in local_cohomology(ctx, a)? {
        let sign = if q % 2 == 0 { 1 } else { -1 };
        for f in module.factors() {
            *rhs.entry((f.label.clone(), f.weight)).or_insert(0) +=
                sign * f.multiplicity as i64;
        }
    }
    let keys: std::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).cloned().collect();
    let mut report = EulerReport::default();
    for key in keys {
        let l = lhs.get(&key).copied().unwrap_or(0);
        let r = rhs.get(&key).copied().unwrap_or(0);
        if l != r {
            report.mismatches.push(EulerEntry {
                label: key.0,
                weight: key.1,
                terms_side: l,
                cohomology_side: r,
            });
        }
    }
    Ok(report)
}

/// True when the only nonzero local cohomology is a single copy of the base
/// label in degree codim; equivalent to the diagram being a rectangle.
pub fn is_rationally_smooth(ctx: &GrassContext, a: &Partition) -> Result<bool, CousinError> {
    let h = local_cohomology(ctx, a)?;
    let c = ctx.codim(a);
    Ok(h.len() == 1
        && h.get(&c).is_some_and(|m| {
            m.factor_count() == 1
                && m.layers()
                    .get(&((ctx.dim() + c) as i64))
                    .is_some_and(|layer| layer.len() == 1 && layer[0].label == *a)
        }))
}

/// Cohomology of one Koszul block inside a graded complex, by restricting
/// the complex matrices to the block basis. Also confirms the restriction is
/// a subcomplex (no differential leaves the block).
pub fn koszul_block_cohomology(
    complex: &GradedChainComplex,
    block: &KoszulBlock,
) -> BTreeMap<usize, usize> {
    let span = block.degree_span();
    let mut positions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in span.clone() {
        let elems = complex.basis(j);
        let members = block.term_basis(j);
        let idx: Vec<usize> = members
            .iter()
            .map(|m| {
                elems
                    .iter()
                    .position(|e| e == m)
                    .expect("block basis element missing from graded complex")
            })
            .collect();
        positions.insert(j, idx);
    }
    let restricted_rank = |j: usize| -> usize {
        let (Some(cols), Some(rows)) = (positions.get(&j), positions.get(&(j + 1))) else {
            return 0;
        };
        let Some(full) = complex.matrix(j) else {
            return 0;
        };
        let mut m = SparseIntMatrix::new(rows.len(), cols.len());
        let dense = full.to_dense();
        for (ci, &c) in cols.iter().enumerate() {
            for (ri, &r) in rows.iter().enumerate() {
                if dense[r][c] != 0 {
                    m.push(ri, ci, dense[r][c] as i64);
                }
            }
            // the block is a direct summand: entries out of the block vanish
            let row_set: std::collections::BTreeSet<usize> = rows.iter().copied().collect();
            for (r, row) in dense.iter().enumerate() {
                assert!(
                    row[c] == 0 || row_set.contains(&r),
                    "differential leaves the Koszul block"
                );
            }
        }
        m.rank()
    };
    let mut out = BTreeMap::new();
    for j in span {
        let dim = positions[&j].len();
        let incoming = if j == 0 { 0 } else { restricted_rank(j - 1) };
        let h = dim - restricted_rank(j) - incoming;
        if h > 0 {
            out.insert(j, h);
        }
    }
    out
}

/// Outcome of the full verification suite on one instance. Each field holds
/// None on success or a description of the first failure.
#[derive(Debug, Clone, Default)]
pub struct InstanceVerification {
    pub formula_vs_oracle: Option<String>,
    pub euler: Option<String>,
    pub dsq_zero: Option<String>,
    pub koszul_exactness: Option<String>,
    pub bijection: Option<String>,
}

impl InstanceVerification {
    pub fn ok(&self) -> bool {
        self.formula_vs_oracle.is_none()
            && self.euler.is_none()
            && self.dsq_zero.is_none()
            && self.koszul_exactness.is_none()
            && self.bijection.is_none()
    }

    pub fn to_json(&self, ctx: &GrassContext, a: &Partition) -> serde_json::Value {
        let field = |v: &Option<String>| match v {
            None => serde_json::json!("ok"),
            Some(msg) => serde_json::json!({ "mismatch": msg }),
        };
        serde_json::json!({
            "instance": { "context": ctx, "partition": a },
            "formula_vs_oracle": field(&self.formula_vs_oracle),
            "euler": field(&self.euler),
            "dsq_zero": field(&self.dsq_zero),
            "koszul_exactness": field(&self.koszul_exactness),
            "bijection": field(&self.bijection),
        })
    }
}

/// Run every verification on one instance: formula/oracle agreement, the
/// Euler identity, d^2 = 0, Koszul-block exactness, and the bijection
/// between surviving pairs and augmented patterns.
pub fn verify_instance(
    ctx: &GrassContext,
    a: &Partition,
    budget: &OracleBudget,
) -> Result<InstanceVerification, CousinError> {
    let mut report = InstanceVerification::default();
    let formula = local_cohomology(ctx, a)?;
    let complexes = graded_complexes(ctx, a, budget)?;

    let mut oracle: BTreeMap<usize, WeightGradedModule> = BTreeMap::new();
    let cohomologies = exec::map_collect(complexes, |cx| {
        let h = cx.cohomology_dims(budget.cross_check);
        let dsq = cx.d_squared_is_zero();
        let blocks_ok = {
            let blocks = koszul_blocks(ctx, a, cx.weight())
                .expect("fits checked")
                .into_iter()
                .filter(|bl| bl.label() == cx.label());
            blocks.into_iter().all(|bl| {
                let h_block = koszul_block_cohomology(&cx, &bl);
                if bl.extension().is_empty() {
                    h_block == BTreeMap::from([(bl.degree_span().start().to_owned(), 1)])
                } else {
                    h_block.is_empty()
                }
            })
        };
        (cx.label().clone(), cx.weight(), h, dsq, blocks_ok)
    });
    for (label, weight, h, dsq, blocks_ok) in cohomologies {
        if !dsq && report.dsq_zero.is_none() {
            report.dsq_zero = Some(format!("d^2 != 0 for label {label} weight {weight}"));
        }
        if !blocks_ok && report.koszul_exactness.is_none() {
            report.koszul_exactness =
                Some(format!("non-exact block for label {label} weight {weight}"));
        }
        for (q, dim) in h {
            oracle
                .entry(q)
                .or_insert_with(|| WeightGradedModule::new(ModuleKind::LocalCohomology, a.clone()))
                .add_factor(weight, label.clone(), dim);
        }
    }

    if formula != oracle {
        report.formula_vs_oracle = Some(describe_module_diff(&formula, &oracle));
    }

    let euler = euler_check(ctx, a)?;
    if !euler.ok() {
        let e = &euler.mismatches[0];
        report.euler = Some(format!(
            "label {} weight {}: terms {} vs cohomology {}",
            e.label, e.weight, e.terms_side, e.cohomology_side
        ));
    }

    let d = ctx.dim();
    let max_paths = a.size() / 3;
    'bijection: for q in ctx.codim(a)..=d {
        for r in 0..=max_paths {
            let weight = (d + q + r) as i64;
            let pairs = surviving_pairs(ctx, a, q, weight)?;
            let mut mapped: Vec<DyckPattern> = pairs
                .iter()
                .map(|(b, pat)| pair_to_pattern(a, b, pat))
                .collect();
            mapped.sort();
            let direct = crate::dyck::degree_weight_patterns(ctx, a, q, weight)?;
            if mapped != direct {
                report.bijection = Some(format!(
                    "q={q} weight={weight}: {} pairs vs {} patterns",
                    mapped.len(),
                    direct.len()
                ));
                break 'bijection;
            }
        }
    }

    Ok(report)
}

fn describe_module_diff(
    formula: &BTreeMap<usize, WeightGradedModule>,
    oracle: &BTreeMap<usize, WeightGradedModule>,
) -> String {
    let degrees: std::collections::BTreeSet<usize> =
        formula.keys().chain(oracle.keys()).copied().collect();
    for q in degrees {
        match (formula.get(&q), oracle.get(&q)) {
            (Some(f), Some(o)) if f == o => continue,
            (f, o) => {
                return format!(
                    "degree {q}: formula {:?} vs oracle {:?}",
                    f.map(|m| m.to_json().to_string()),
                    o.map(|m| m.to_json().to_string())
                )
            }
        }
    }
    "indistinguishable".to_string()
}
