//! Weight filtrations of parabolic Verma modules, highest weights, and the
//! dictionary between partitions and minimal-length coset representatives.
//!
//! Modules are handled at the Grothendieck-group level only: a module is a
//! weight-indexed multiset of simple labels. The weight normalization places
//! the label of the module itself in weight 2 dim - |a| of the dual module.

use crate::dyck::bulletless_patterns;
use crate::young::{GrassContext, Partition, YoungError};
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VermaError {
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("images {0:?} do not satisfy the Grassmannian condition for k={1}")]
    NotGrassmannian(Vec<usize>, usize),
}

/// Role tag of a weight-graded object: dual Verma, Verma, or one local
/// cohomology degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    DualVerma,
    Verma,
    LocalCohomology,
}

impl ModuleKind {
    pub fn role(&self) -> &'static str {
        match self {
            ModuleKind::DualVerma => "N",
            ModuleKind::Verma => "M",
            ModuleKind::LocalCohomology => "H",
        }
    }
}

/// A simple composition factor: label, weight, and multiplicity. The Tate
/// twist is determined by label and weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFactor {
    pub label: Partition,
    pub weight: i64,
    pub multiplicity: usize,
}

impl GradedFactor {
    /// (|label| - weight) / 2; integral for every factor we produce.
    pub fn twist(&self) -> i64 {
        (self.label.size() as i64 - self.weight) / 2
    }
}

/// A weight-graded multiset of simple factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGradedModule {
    kind: ModuleKind,
    base: Partition,
    layers: BTreeMap<i64, Vec<GradedFactor>>,
}

impl WeightGradedModule {
    pub fn new(kind: ModuleKind, base: Partition) -> Self {
        WeightGradedModule {
            kind,
            base,
            layers: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn layers(&self) -> &BTreeMap<i64, Vec<GradedFactor>> {
        &self.layers
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    /// Insert a factor, merging multiplicities of equal labels in one layer.
    /// Factors within a layer stay sorted by label.
    pub fn add_factor(&mut self, weight: i64, label: Partition, multiplicity: usize) {
        if multiplicity == 0 {
            return;
        }
        let layer = self.layers.entry(weight).or_default();
        match layer.binary_search_by(|f| f.label.cmp(&label)) {
            Ok(i) => layer[i].multiplicity += multiplicity,
            Err(i) => layer.insert(
                i,
                GradedFactor {
                    label,
                    weight,
                    multiplicity,
                },
            ),
        }
    }

    pub fn weights(&self) -> Vec<i64> {
        self.layers.keys().copied().collect()
    }

    /// Total factor count, with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.layers
            .values()
            .flat_map(|l| l.iter().map(|f| f.multiplicity))
            .sum()
    }

    /// Multiplicity of a label summed over all weights.
    pub fn multiplicity_of(&self, label: &Partition) -> usize {
        self.layers
            .values()
            .flat_map(|l| l.iter())
            .filter(|f| &f.label == label)
            .map(|f| f.multiplicity)
            .sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = &GradedFactor> {
        self.layers.values().flat_map(|l| l.iter())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let layers: Vec<serde_json::Value> = self
            .layers
            .iter()
            .map(|(p, factors)| {
                json!({
                    "p": p,
                    "factors": factors.iter().map(|f| json!({
                        "label": f.label,
                        "twist": f.twist(),
                        "mult": f.multiplicity,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "role": self.kind.role(),
            "base": self.base,
            "layers": layers,
        })
    }
}

/// Weight filtration of the (dual) parabolic Verma module attached to `a`.
/// The dual module has its layers indexed by bulletless patterns with
/// `weight + |a| - 2 dim` paths; the Verma module is its reflection
/// `weight -> -weight`.
pub fn weight_filtration(
    ctx: &GrassContext,
    a: &Partition,
    dual: bool,
) -> Result<WeightGradedModule, VermaError> {
    ctx.check_fits(a)?;
    let kind = if dual {
        ModuleKind::DualVerma
    } else {
        ModuleKind::Verma
    };
    let mut module = WeightGradedModule::new(kind, a.clone());
    let shift = 2 * ctx.dim() as i64 - a.size() as i64;
    for pat in bulletless_patterns(a) {
        let p = pat.path_count() as i64 + shift;
        let w = if dual { p } else { -p };
        module.add_factor(w, pat.quotient().expect("enumerated patterns admissible"), 1);
    }
    Ok(module)
}

/// The highest weight attached to `a`, as a length-n integer vector with a
/// marked split after position k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighestWeight {
    entries: Vec<i64>,
    split: usize,
}

impl HighestWeight {
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "entries": self.entries, "split": self.split })
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i == self.split {
                write!(f, " | ")?;
            } else if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// Build the highest weight from the complement and its conjugate:
/// the first k entries are the negated reversed complement, the last n-k the
/// conjugate of the complement, zero-padded.
pub fn highest_weight(ctx: &GrassContext, a: &Partition) -> Result<HighestWeight, VermaError> {
    let comp = a.complement(ctx)?;
    let conj = comp.conjugate();
    let k = ctx.k();
    let mut entries = Vec::with_capacity(ctx.n());
    for i in 0..k {
        entries.push(-(comp.part(k - i) as i64));
    }
    for j in 1..=ctx.cols() {
        entries.push(conj.part(j) as i64);
    }
    Ok(HighestWeight { entries, split: k })
}

/// A permutation of 1..n increasing on the first k and the last n-k slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassPermutation {
    images: Vec<usize>,
    k: usize,
}

impl GrassPermutation {
    pub fn new(images: Vec<usize>, k: usize) -> Result<Self, VermaError> {
        let n = images.len();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        let valid = k > 0
            && k < n
            && sorted == (1..=n).collect::<Vec<_>>()
            && images[..k].windows(2).all(|w| w[0] < w[1])
            && images[k..].windows(2).all(|w| w[0] < w[1]);
        if !valid {
            return Err(VermaError::NotGrassmannian(images, k));
        }
        Ok(GrassPermutation { images, k })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for GrassPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i == self.k {
                write!(f, " | ")?;
            } else if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// The minimal coset representative with i_{k+1-j} = a_j + (k+1-j).
pub fn partition_to_permutation(
    ctx: &GrassContext,
    a: &Partition,
) -> Result<GrassPermutation, VermaError> {
    ctx.check_fits(a)?;
    let k = ctx.k();
    let mut images: Vec<usize> = (1..=k).map(|m| m + a.part(k + 1 - m)).collect();
    let head: std::collections::BTreeSet<usize> = images.iter().copied().collect();
    images.extend((1..=ctx.n()).filter(|v| !head.contains(v)));
    GrassPermutation::new(images, k)
}

/// Inverse of `partition_to_permutation`.
pub fn permutation_to_partition(
    ctx: &GrassContext,
    w: &GrassPermutation,
) -> Result<Partition, VermaError> {
    if w.k() != ctx.k() || w.images().len() != ctx.n() {
        return Err(VermaError::NotGrassmannian(w.images().to_vec(), w.k()));
    }
    let k = ctx.k();
    let parts: Vec<usize> = (1..=k).map(|j| w.images()[k - j] - (k + 1 - j)).collect();
    Ok(Partition::new(parts).expect("dictionary yields weakly decreasing parts"))
}
