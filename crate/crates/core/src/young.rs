//! Young diagrams in a bounded rectangle: partitions, boxes, containment,
//! complement/conjugate, box removal, and plain-text rendering.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum YoungError {
    #[error("invalid token `{0}` in partition text")]
    ParseToken(String),
    #[error("parts are not weakly decreasing: {0:?}")]
    NotWeaklyDecreasing(Vec<usize>),
    #[error("partition {partition} does not fit in the {k}x{cols} rectangle")]
    DoesNotFit {
        partition: String,
        k: usize,
        cols: usize,
    },
    #[error("box ({0},{1}) lies outside the diagram")]
    BoxOutsideDiagram(usize, usize),
    #[error("invalid Grassmannian context: need 0 < k < n, got k={k}, n={n}")]
    BadContext { k: usize, n: usize },
}

/// The pair (k, n) fixing the Grassmannian of k-planes in n-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GrassContext {
    k: usize,
    n: usize,
}

impl GrassContext {
    pub fn new(k: usize, n: usize) -> Result<Self, YoungError> {
        if k == 0 || k >= n {
            return Err(YoungError::BadContext { k, n });
        }
        Ok(GrassContext { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns of the ambient rectangle, n - k.
    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    /// Dimension of the ambient space, k(n - k).
    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// Codimension of the subvariety indexed by `a`, dim - |a|.
    pub fn codim(&self, a: &Partition) -> usize {
        self.dim() - a.size()
    }

    pub fn fits(&self, a: &Partition) -> bool {
        a.rows() <= self.k && a.part(1) <= self.cols()
    }

    pub fn check_fits(&self, a: &Partition) -> Result<(), YoungError> {
        if self.fits(a) {
            Ok(())
        } else {
            Err(YoungError::DoesNotFit {
                partition: a.to_string(),
                k: self.k,
                cols: self.cols(),
            })
        }
    }

    /// The full k x (n - k) rectangle.
    pub fn rectangle(&self) -> Partition {
        Partition::rectangle(self.k, self.cols())
    }

    /// Every partition in the ambient rectangle, in lexicographic order.
    pub fn partitions(&self) -> Vec<Partition> {
        self.rectangle().subpartitions()
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

/// A box (row, col) of a Young diagram, 1-based with row 1 at the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxCoord {
    pub row: usize,
    pub col: usize,
}

impl BoxCoord {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "boxes live in the positive quadrant");
        BoxCoord { row, col }
    }

    /// Antidiagonal level row + col.
    pub fn level(&self) -> usize {
        self.row + self.col
    }

    /// The box directly North, if it stays in the positive quadrant.
    pub fn north(&self) -> Option<BoxCoord> {
        (self.row > 1).then(|| BoxCoord::new(self.row - 1, self.col))
    }

    pub fn west(&self) -> Option<BoxCoord> {
        (self.col > 1).then(|| BoxCoord::new(self.row, self.col - 1))
    }

    pub fn northwest(&self) -> Option<BoxCoord> {
        (self.row > 1 && self.col > 1).then(|| BoxCoord::new(self.row - 1, self.col - 1))
    }

    pub fn south(&self) -> BoxCoord {
        BoxCoord::new(self.row + 1, self.col)
    }

    pub fn east(&self) -> BoxCoord {
        BoxCoord::new(self.row, self.col + 1)
    }
}

impl Serialize for BoxCoord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.row)?;
        seq.serialize_element(&self.col)?;
        seq.end()
    }
}

impl fmt::Display for BoxCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition stored in canonical form: weakly decreasing, no trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, YoungError> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(YoungError::NotWeaklyDecreasing(parts));
        }
        Ok(Self::trimmed(parts))
    }

    fn trimmed(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![cols; rows],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// The i-th part, 1-based; zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            usize::MAX // sentinel: "row 0" poses no upper bound
        } else {
            self.parts.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True when all nonzero parts are equal (the empty diagram counts).
    pub fn is_rectangle(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i + 1) >= p)
    }

    pub fn has_box(&self, b: BoxCoord) -> bool {
        b.row >= 1 && b.col >= 1 && self.part(b.row) >= b.col
    }

    /// All boxes in reading order (row, then column).
    pub fn boxes(&self) -> Vec<BoxCoord> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p {
                out.push(BoxCoord::new(i + 1, j));
            }
        }
        out
    }

    /// Distinct part values with their multiplicities, widest block first.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// All subdiagrams b with b_i <= a_i, in lexicographic order on part lists.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_subs(0, usize::MAX, &mut cur, &mut out);
        out
    }

    fn collect_subs(
        &self,
        row: usize,
        cap: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if row == self.parts.len() {
            out.push(Self::trimmed(cur.clone()));
            return;
        }
        let hi = cap.min(self.parts[row]);
        for v in 0..=hi {
            cur.push(v);
            if v == 0 {
                // remaining rows are forced to zero
                out.push(Self::trimmed(cur.clone()));
            } else {
                self.collect_subs(row + 1, v, cur, out);
            }
            cur.pop();
        }
    }

    pub fn subpartitions_of_size(&self, size: usize) -> Vec<Partition> {
        self.subpartitions()
            .into_iter()
            .filter(|b| b.size() == size)
            .collect()
    }

    /// Complement inside the ctx rectangle: reverse and subtract from n - k.
    pub fn complement(&self, ctx: &GrassContext) -> Result<Partition, YoungError> {
        ctx.check_fits(self)?;
        let cols = ctx.cols();
        let parts: Vec<usize> = (0..ctx.k()).map(|i| cols - self.part(ctx.k() - i)).collect();
        Ok(Self::trimmed(parts))
    }

    /// Transpose of the diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1);
        let parts: Vec<usize> = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Self::trimmed(parts)
    }

    /// Removable boxes: row ends (i, a_i) with a_i > a_{i+1}.
    pub fn corners(&self) -> Vec<BoxCoord> {
        let mut out = Vec::new();
        for i in 1..=self.rows() {
            if self.part(i) > self.part(i + 1) {
                out.push(BoxCoord::new(i, self.part(i)));
            }
        }
        out
    }

    /// Boxes of `a` outside `self` whose addition keeps a partition shape.
    pub fn addable_corners_in(&self, a: &Partition) -> Vec<BoxCoord> {
        let mut out = Vec::new();
        for i in 1..=self.rows() + 1 {
            let j = self.part(i) + 1;
            if self.part(i - 1) >= j && a.has_box(BoxCoord::new(i, j)) {
                out.push(BoxCoord::new(i, j));
            }
        }
        out
    }

    /// Add boxes disjoint from self; None when the result is not a partition.
    pub fn with_boxes(&self, boxes: &[BoxCoord]) -> Option<Partition> {
        let rows = boxes
            .iter()
            .map(|b| b.row)
            .chain(std::iter::once(self.rows()))
            .max()
            .unwrap_or(0);
        let mut counts: Vec<usize> = (1..=rows).map(|i| self.part(i)).collect();
        let mut seen = BTreeSet::new();
        for b in boxes {
            if self.has_box(*b) || !seen.insert(*b) {
                return None;
            }
            counts[b.row - 1] += 1;
        }
        if !counts.windows(2).all(|w| w[0] >= w[1]) {
            return None;
        }
        // added boxes must fill each row contiguously from its old end
        for (r, &c) in counts.iter().enumerate() {
            let added_in_row: BTreeSet<usize> = boxes
                .iter()
                .filter(|b| b.row == r + 1)
                .map(|b| b.col)
                .collect();
            let expected: BTreeSet<usize> = (self.part(r + 1) + 1..=c).collect();
            if added_in_row != expected {
                return None;
            }
        }
        Some(Self::trimmed(counts))
    }

    /// Remove a set of boxes; None when the remainder is not left-justified
    /// and weakly decreasing.
    pub fn remove_boxes(&self, boxes: &[BoxCoord]) -> Result<Option<Partition>, YoungError> {
        let mut per_row: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.rows()];
        for b in boxes {
            if !self.has_box(*b) {
                return Err(YoungError::BoxOutsideDiagram(b.row, b.col));
            }
            per_row[b.row - 1].insert(b.col);
        }
        let mut remaining = Vec::with_capacity(self.rows());
        for (i, removed) in per_row.iter().enumerate() {
            let width = self.parts[i];
            let left = width - removed.len();
            // removed columns must be exactly the suffix of the row
            let suffix: BTreeSet<usize> = (left + 1..=width).collect();
            if *removed != suffix {
                return Ok(None);
            }
            remaining.push(left);
        }
        if !remaining.windows(2).all(|w| w[0] >= w[1]) {
            return Ok(None);
        }
        Ok(Some(Self::trimmed(remaining)))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// Parse "a1,a2,...,ak" (commas or whitespace); "" and "0" mean the empty diagram.
pub fn parse_partition(text: &str) -> Result<Partition, YoungError> {
    let tokens: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let mut parts = Vec::with_capacity(tokens.len());
    for t in tokens {
        let v: usize = t
            .parse()
            .map_err(|_| YoungError::ParseToken(t.to_string()))?;
        parts.push(v);
    }
    Partition::new(parts)
}

/// Render a diagram as one glyph per box. Later overlays win on conflicts.
pub fn render(a: &Partition, overlays: &[(Vec<BoxCoord>, char)], empty: char) -> String {
    let mut lines = Vec::with_capacity(a.rows());
    for i in 1..=a.rows() {
        let mut line = String::new();
        for j in 1..=a.part(i) {
            if j > 1 {
                line.push(' ');
            }
            let b = BoxCoord::new(i, j);
            let glyph = overlays
                .iter()
                .rev()
                .find(|(set, _)| set.contains(&b))
                .map(|&(_, g)| g)
                .unwrap_or(empty);
            line.push(glyph);
        }
        lines.push(line);
    }
    lines.join("\n")
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}
