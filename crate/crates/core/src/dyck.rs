//! Dyck paths, augmented Dyck patterns, the admissibility test, and
//! enumeration of the pattern families indexing weight layers and local
//! cohomology degrees.
//!
//! A Dyck path is a connected N/E walk of boxes whose first and last box lie
//! on the same antidiagonal and whose intermediate boxes never pass it. An
//! augmented pattern adds bullet boxes that must sit in contiguous runs East
//! of some path's head or South of some path's tail. Admissibility imposes
//! three conditions: the complement of the support is again a partition, the
//! pairwise covering condition between paths, and no bullet directly North,
//! Northwest, or West of a path box.

use crate::young::{BoxCoord, GrassContext, Partition};
use serde_json::json;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathViolation {
    #[error("a Dyck path must contain at least one box")]
    Empty,
    #[error("step {0} is neither North nor East")]
    NotAWalk(usize),
    #[error("endpoints lie on different antidiagonals ({0} vs {1})")]
    EndpointsDisagree(usize, usize),
    #[error("box {0} dips below the endpoint antidiagonal")]
    DipsBelowAntidiagonal(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("box {0} appears in more than one path or bullet set")]
    OverlappingBoxes(BoxCoord),
    #[error("box {0} lies outside the ambient diagram")]
    OutsideShape(BoxCoord),
    #[error("pattern is not admissible")]
    NotAdmissible,
}

/// A validated Dyck path, stored in walk order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    boxes: Vec<BoxCoord>,
}

impl DyckPath {
    pub fn new(boxes: Vec<BoxCoord>) -> Result<Self, PathViolation> {
        if boxes.is_empty() {
            return Err(PathViolation::Empty);
        }
        for (s, w) in boxes.windows(2).enumerate() {
            let north = w[0].north() == Some(w[1]);
            let east = w[0].east() == w[1];
            if !north && !east {
                return Err(PathViolation::NotAWalk(s + 1));
            }
        }
        let d = boxes[0].level();
        let last = boxes[boxes.len() - 1].level();
        if last != d {
            return Err(PathViolation::EndpointsDisagree(d, last));
        }
        for (s, b) in boxes.iter().enumerate() {
            if b.level() > d {
                return Err(PathViolation::DipsBelowAntidiagonal(s));
            }
        }
        Ok(DyckPath { boxes })
    }

    pub fn singleton(b: BoxCoord) -> Self {
        DyckPath { boxes: vec![b] }
    }

    pub fn boxes(&self) -> &[BoxCoord] {
        &self.boxes
    }

    /// Number of boxes; always odd, and at least one.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_singleton(&self) -> bool {
        self.boxes.len() == 1
    }

    pub fn level(&self) -> usize {
        self.boxes[0].level()
    }

    pub fn start(&self) -> BoxCoord {
        self.boxes[0]
    }

    pub fn end(&self) -> BoxCoord {
        self.boxes[self.boxes.len() - 1]
    }

    pub fn contains(&self, b: BoxCoord) -> bool {
        self.boxes.contains(&b)
    }

    /// Swap rows and columns, reversing the walk.
    pub fn transpose(&self) -> DyckPath {
        let mut boxes: Vec<BoxCoord> = self
            .boxes
            .iter()
            .rev()
            .map(|b| BoxCoord::new(b.col, b.row))
            .collect();
        boxes.sort_by(|x, y| y.row.cmp(&x.row).then(x.col.cmp(&y.col)));
        DyckPath { boxes }
    }
}

/// Validate a box sequence as a Dyck path, reporting the first violation.
pub fn validate_dyck_path(boxes: &[BoxCoord]) -> Result<DyckPath, PathViolation> {
    DyckPath::new(boxes.to_vec())
}

/// One violation found by the admissibility test, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityViolation {
    QuotientNotPartition,
    /// The covering condition fails for the ordered pair (path, other):
    /// `missing` is an uncovered N/NW/W position of `path`, or None when the
    /// required position falls outside the positive quadrant.
    CoveringFailed {
        path: usize,
        other: usize,
        missing: Option<BoxCoord>,
    },
    /// A bullet sits directly North, Northwest, or West of a path box.
    BulletTouchesPath { bullet: BoxCoord, path: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub violations: Vec<AdmissibilityViolation>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An augmented Dyck pattern in an ambient partition, in canonical form:
/// paths sorted by (start row descending, start column ascending), bullets
/// sorted lexicographically. Admissibility is cached at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPattern {
    shape: Partition,
    paths: Vec<DyckPath>,
    bullets: Vec<BoxCoord>,
    admissible: bool,
    min_path_len: Option<usize>,
}

impl DyckPattern {
    pub fn new(
        shape: Partition,
        mut paths: Vec<DyckPath>,
        mut bullets: Vec<BoxCoord>,
    ) -> Result<Self, PatternError> {
        let mut seen = BTreeSet::new();
        for path in &paths {
            for &b in path.boxes() {
                if !shape.has_box(b) {
                    return Err(PatternError::OutsideShape(b));
                }
                if !seen.insert(b) {
                    return Err(PatternError::OverlappingBoxes(b));
                }
            }
        }
        for &b in &bullets {
            if !shape.has_box(b) {
                return Err(PatternError::OutsideShape(b));
            }
            if !seen.insert(b) {
                return Err(PatternError::OverlappingBoxes(b));
            }
        }
        paths.sort_by(|x, y| {
            y.start()
                .row
                .cmp(&x.start().row)
                .then(x.start().col.cmp(&y.start().col))
        });
        bullets.sort();
        let min_path_len = paths.iter().map(|p| p.len()).min();
        let mut pat = DyckPattern {
            shape,
            paths,
            bullets,
            admissible: false,
            min_path_len,
        };
        pat.admissible = pat.admissibility().is_admissible();
        Ok(pat)
    }

    pub fn empty(shape: Partition) -> Self {
        DyckPattern::new(shape, Vec::new(), Vec::new()).unwrap()
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn paths(&self) -> &[DyckPath] {
        &self.paths
    }

    pub fn bullets(&self) -> &[BoxCoord] {
        &self.bullets
    }

    /// Number of paths (bullets are not counted).
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn bullet_count(&self) -> usize {
        self.bullets.len()
    }

    pub fn min_path_len(&self) -> Option<usize> {
        self.min_path_len
    }

    pub fn support(&self) -> Vec<BoxCoord> {
        let mut out: Vec<BoxCoord> = self
            .paths
            .iter()
            .flat_map(|p| p.boxes().iter().copied())
            .chain(self.bullets.iter().copied())
            .collect();
        out.sort();
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    /// Full three-condition admissibility check with witnesses.
    pub fn admissibility(&self) -> AdmissibilityReport {
        let mut violations = Vec::new();
        if self
            .shape
            .remove_boxes(&self.support())
            .expect("support is inside the shape")
            .is_none()
        {
            violations.push(AdmissibilityViolation::QuotientNotPartition);
        }
        for p in 0..self.paths.len() {
            for q in 0..self.paths.len() {
                if p == q {
                    continue;
                }
                if let Some(missing) = covering_failure(&self.paths[p], &self.paths[q]) {
                    violations.push(AdmissibilityViolation::CoveringFailed {
                        path: p,
                        other: q,
                        missing,
                    });
                }
            }
        }
        for &bullet in &self.bullets {
            for (i, path) in self.paths.iter().enumerate() {
                let touches = path.boxes().iter().any(|b| {
                    [b.north(), b.northwest(), b.west()]
                        .into_iter()
                        .flatten()
                        .any(|nb| nb == bullet)
                });
                if touches {
                    violations.push(AdmissibilityViolation::BulletTouchesPath { bullet, path: i });
                }
            }
        }
        AdmissibilityReport { violations }
    }

    /// The partition left after removing the support. Requires admissibility.
    pub fn quotient(&self) -> Result<Partition, PatternError> {
        if !self.admissible {
            return Err(PatternError::NotAdmissible);
        }
        Ok(self
            .shape
            .remove_boxes(&self.support())
            .expect("support inside shape")
            .expect("admissible pattern has partition quotient"))
    }

    /// Transpose the ambient diagram and every pattern element.
    pub fn transpose(&self) -> DyckPattern {
        DyckPattern::new(
            self.shape.conjugate(),
            self.paths.iter().map(|p| p.transpose()).collect(),
            self.bullets
                .iter()
                .map(|b| BoxCoord::new(b.col, b.row))
                .collect(),
        )
        .expect("transpose preserves pattern structure")
    }
}

/// Ordered covering-condition check for the pair (p, q): if some box of `q`
/// lies directly N/NW/W of a box of `p`, every N/NW/W position of `p` must be
/// covered by `p` or `q`. Positions outside the positive quadrant count as
/// uncovered. Returns a witness for a failure (None inside the Option chain
/// means the uncovered position is off the grid).
fn covering_failure(p: &DyckPath, q: &DyckPath) -> Option<Option<BoxCoord>> {
    let triggered = p.boxes().iter().any(|b| {
        [b.north(), b.northwest(), b.west()]
            .into_iter()
            .flatten()
            .any(|nb| q.contains(nb))
    });
    if !triggered {
        return None;
    }
    for b in p.boxes() {
        for nb in [b.north(), b.northwest(), b.west()] {
            match nb {
                None => return Some(None),
                Some(x) => {
                    if !p.contains(x) && !q.contains(x) {
                        return Some(Some(x));
                    }
                }
            }
        }
    }
    None
}

/// True when every bullet lies in the maximal contiguous bullet run East of
/// some path's head or South of some path's tail. Maximal runs dominate any
/// valid head/tail assignment and themselves form one, so this is exactly the
/// decomposability condition on the bullet set.
pub fn bullet_cover_feasible(p: &DyckPattern) -> bool {
    let bullets: BTreeSet<BoxCoord> = p.bullets().iter().copied().collect();
    let mut covered: BTreeSet<BoxCoord> = BTreeSet::new();
    for path in p.paths() {
        let mut b = path.end().east();
        while bullets.contains(&b) {
            covered.insert(b);
            b = b.east();
        }
        let mut b = path.start().south();
        while bullets.contains(&b) {
            covered.insert(b);
            b = b.south();
        }
    }
    bullets.is_subset(&covered)
}

/// All Dyck paths with boxes inside `a` and length at least `min_len`.
pub fn enumerate_dyck_paths(a: &Partition, min_len: usize) -> Vec<DyckPath> {
    let mut starts = a.boxes();
    starts.sort_by(|x, y| y.row.cmp(&x.row).then(x.col.cmp(&y.col)));
    let mut out = Vec::new();
    for s in starts {
        let mut walk = vec![s];
        grow_walks(a, &mut walk, s.level(), min_len, &mut out);
    }
    out
}

fn grow_walks(
    a: &Partition,
    walk: &mut Vec<BoxCoord>,
    level: usize,
    min_len: usize,
    out: &mut Vec<DyckPath>,
) {
    let cur = *walk.last().unwrap();
    if cur.level() == level && walk.len() >= min_len {
        out.push(DyckPath {
            boxes: walk.clone(),
        });
    }
    for next in [cur.north(), Some(cur.east())].into_iter().flatten() {
        if next.level() <= level && a.has_box(next) {
            walk.push(next);
            grow_walks(a, walk, level, min_len, out);
            walk.pop();
        }
    }
}

/// Constraint on the bullet set of an enumerated pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BulletFilter {
    Forbidden,
    Exactly(usize),
    Any,
}

/// Selects which admissible patterns to enumerate.
#[derive(Debug, Clone, Copy)]
pub struct PatternFilter {
    pub min_path_len: usize,
    pub bullets: BulletFilter,
    pub path_count: Option<usize>,
}

/// Every admissible pattern in `a` matching the filter, each exactly once,
/// in a deterministic order. Bullet sets are additionally required to be
/// coverable by head/tail runs, as the pattern definition demands.
pub fn enumerate_patterns(a: &Partition, filter: &PatternFilter) -> Vec<DyckPattern> {
    let mut out: Vec<DyckPattern> = a
        .subpartitions()
        .into_iter()
        .flat_map(|b| tile_skew(a, &b, filter))
        .collect();
    out.sort();
    out
}

/// The set of bulletless admissible patterns in `a`, any path lengths.
pub fn bulletless_patterns(a: &Partition) -> Vec<DyckPattern> {
    enumerate_patterns(
        a,
        &PatternFilter {
            min_path_len: 1,
            bullets: BulletFilter::Forbidden,
            path_count: None,
        },
    )
}

/// Bulletless patterns with exactly `weight + |a| - 2 dim` paths: the index
/// set for the weight-`weight` layer of the dual parabolic Verma module.
pub fn layer_patterns(
    ctx: &GrassContext,
    a: &Partition,
    weight: i64,
) -> Result<Vec<DyckPattern>, crate::young::YoungError> {
    ctx.check_fits(a)?;
    let r = weight + a.size() as i64 - 2 * ctx.dim() as i64;
    if r < 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_patterns(
        a,
        &PatternFilter {
            min_path_len: 1,
            bullets: BulletFilter::Forbidden,
            path_count: Some(r as usize),
        },
    ))
}

/// Admissible augmented patterns with all paths of length >= 3 and exactly
/// `q + |a| - dim` bullets: the index set for local cohomology in degree `q`.
pub fn degree_patterns(
    ctx: &GrassContext,
    a: &Partition,
    q: usize,
) -> Result<Vec<DyckPattern>, crate::young::YoungError> {
    ctx.check_fits(a)?;
    let t = q as i64 + a.size() as i64 - ctx.dim() as i64;
    if t < 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_patterns(
        a,
        &PatternFilter {
            min_path_len: 3,
            bullets: BulletFilter::Exactly(t as usize),
            path_count: None,
        },
    ))
}

/// The subset of `degree_patterns` with `weight - q - dim` paths: the index
/// set for the weight-`weight` graded piece of local cohomology in degree `q`.
pub fn degree_weight_patterns(
    ctx: &GrassContext,
    a: &Partition,
    q: usize,
    weight: i64,
) -> Result<Vec<DyckPattern>, crate::young::YoungError> {
    ctx.check_fits(a)?;
    let t = q as i64 + a.size() as i64 - ctx.dim() as i64;
    let r = weight - q as i64 - ctx.dim() as i64;
    if t < 0 || r < 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_patterns(
        a,
        &PatternFilter {
            min_path_len: 3,
            bullets: BulletFilter::Exactly(t as usize),
            path_count: Some(r as usize),
        },
    ))
}

/// Cohomological degree of an augmented pattern: |bullets| - |a| + dim.
pub fn pattern_degree(ctx: &GrassContext, p: &DyckPattern) -> usize {
    (p.bullet_count() as i64 - p.shape().size() as i64 + ctx.dim() as i64) as usize
}

/// Weight of the graded piece an augmented pattern contributes to:
/// dim + degree + path count.
pub fn pattern_weight(ctx: &GrassContext, p: &DyckPattern) -> i64 {
    ctx.dim() as i64 + pattern_degree(ctx, p) as i64 + p.path_count() as i64
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cell {
    Free,
    Bullet,
    Path(usize),
}

struct Tiler<'a> {
    quotient: &'a Partition,
    filter: &'a PatternFilter,
    skew: Vec<BoxCoord>,
    cells: HashMap<BoxCoord, Cell>,
    paths: Vec<DyckPath>,
    bullets: Vec<BoxCoord>,
    results: Vec<DyckPattern>,
    shape: &'a Partition,
}

/// Enumerate all admissible patterns in `a` whose quotient is exactly `b`.
fn tile_skew(a: &Partition, b: &Partition, filter: &PatternFilter) -> Vec<DyckPattern> {
    let skew_size = a.size() - b.size();
    // cheap count pruning before any search
    match filter.bullets {
        BulletFilter::Forbidden => {
            if let Some(r) = filter.path_count {
                if skew_size < r * filter.min_path_len || skew_size % 2 != r % 2 {
                    return Vec::new();
                }
            }
        }
        BulletFilter::Exactly(t) => {
            if skew_size < t {
                return Vec::new();
            }
            if let Some(r) = filter.path_count {
                let for_paths = skew_size - t;
                if for_paths < r * filter.min_path_len || for_paths % 2 != r % 2 {
                    return Vec::new();
                }
            }
        }
        BulletFilter::Any => {}
    }
    let mut skew: Vec<BoxCoord> = a
        .boxes()
        .into_iter()
        .filter(|&bx| !b.has_box(bx))
        .collect();
    skew.sort_by(|x, y| y.row.cmp(&x.row).then(x.col.cmp(&y.col)));
    let cells = skew.iter().map(|&bx| (bx, Cell::Free)).collect();
    let mut tiler = Tiler {
        quotient: b,
        filter,
        skew,
        cells,
        paths: Vec::new(),
        bullets: Vec::new(),
        results: Vec::new(),
        shape: a,
    };
    tiler.step(0);
    tiler.results
}

impl Tiler<'_> {
    fn step(&mut self, from: usize) {
        let next = (from..self.skew.len()).find(|&i| self.cells[&self.skew[i]] == Cell::Free);
        let Some(idx) = next else {
            self.emit();
            return;
        };
        let x = self.skew[idx];

        if self.bullets_allowed() && self.bullet_plausible(x) && !self.bullet_blocks_path(x) {
            self.cells.insert(x, Cell::Bullet);
            self.bullets.push(x);
            self.step(idx + 1);
            self.bullets.pop();
            self.cells.insert(x, Cell::Free);
        }

        if self.filter.path_count.is_none_or(|r| self.paths.len() < r) {
            let mut walk = vec![x];
            let mut candidates = Vec::new();
            self.collect_walks(&mut walk, x.level(), &mut candidates);
            for cand in candidates {
                if !self.path_compatible(&cand) {
                    continue;
                }
                let id = self.paths.len();
                for &bx in cand.boxes() {
                    self.cells.insert(bx, Cell::Path(id));
                }
                self.paths.push(cand);
                self.step(idx + 1);
                let cand = self.paths.pop().unwrap();
                for &bx in cand.boxes() {
                    self.cells.insert(bx, Cell::Free);
                }
            }
        }
    }

    fn bullets_allowed(&self) -> bool {
        match self.filter.bullets {
            BulletFilter::Forbidden => false,
            BulletFilter::Exactly(t) => self.bullets.len() < t,
            BulletFilter::Any => true,
        }
    }

    /// A bullet at `x` must eventually be covered. Placed paths can only
    /// reach it through a head run in the same row (everything West of `x`
    /// is already assigned); a future path can only reach it through a tail
    /// run from directly North (those boxes are scanned later).
    fn bullet_plausible(&self, x: BoxCoord) -> bool {
        let mut b = x;
        let head_covered = loop {
            match b.west() {
                None => break false,
                Some(w) => match self.cells.get(&w) {
                    Some(Cell::Bullet) => b = w,
                    Some(Cell::Path(i)) => break self.paths[*i].end() == w,
                    _ => break false,
                },
            }
        };
        if head_covered {
            return true;
        }
        match x.north() {
            None => false,
            Some(nb) => match self.cells.get(&nb) {
                Some(Cell::Free) => true,
                Some(Cell::Path(i)) => self.paths[*i].start() == nb,
                _ => false,
            },
        }
    }

    /// Condition 3 against already placed paths: `x` may not be N/NW/W of a
    /// path box, i.e. no placed path box directly S/SE/E of `x`.
    fn bullet_blocks_path(&self, x: BoxCoord) -> bool {
        [x.south(), BoxCoord::new(x.row + 1, x.col + 1), x.east()]
            .into_iter()
            .any(|pos| matches!(self.cells.get(&pos), Some(Cell::Path(_))))
    }

    fn collect_walks(&self, walk: &mut Vec<BoxCoord>, level: usize, out: &mut Vec<DyckPath>) {
        let cur = *walk.last().unwrap();
        if cur.level() == level && walk.len() >= self.filter.min_path_len {
            out.push(DyckPath {
                boxes: walk.clone(),
            });
        }
        for next in [cur.north(), Some(cur.east())].into_iter().flatten() {
            if next.level() <= level && self.cells.get(&next) == Some(&Cell::Free) {
                walk.push(next);
                self.collect_walks(walk, level, out);
                walk.pop();
            }
        }
    }

    /// Covering condition against every placed path, condition 3 against
    /// every placed bullet.
    fn path_compatible(&self, cand: &DyckPath) -> bool {
        for placed in &self.paths {
            if covering_failure(cand, placed).is_some() || covering_failure(placed, cand).is_some()
            {
                return false;
            }
        }
        for b in cand.boxes() {
            for nb in [b.north(), b.northwest(), b.west()].into_iter().flatten() {
                if self.cells.get(&nb) == Some(&Cell::Bullet) {
                    return false;
                }
            }
        }
        true
    }

    fn emit(&mut self) {
        if let BulletFilter::Exactly(t) = self.filter.bullets {
            if self.bullets.len() != t {
                return;
            }
        }
        if let Some(r) = self.filter.path_count {
            if self.paths.len() != r {
                return;
            }
        }
        let pattern = DyckPattern::new(
            self.shape.clone(),
            self.paths.clone(),
            self.bullets.clone(),
        )
        .expect("tiling produces disjoint in-shape boxes");
        if !bullet_cover_feasible(&pattern) {
            return;
        }
        debug_assert!(pattern.is_admissible(), "tiler emitted {pattern:?}");
        debug_assert_eq!(pattern.quotient().unwrap(), *self.quotient);
        self.results.push(pattern);
    }
}

/// JSON view of a pattern, including its context and derived fields.
pub fn pattern_json(ctx: &GrassContext, p: &DyckPattern) -> serde_json::Value {
    let paths: Vec<Vec<[usize; 2]>> = p
        .paths()
        .iter()
        .map(|path| path.boxes().iter().map(|b| [b.row, b.col]).collect())
        .collect();
    let bullets: Vec<[usize; 2]> = p.bullets().iter().map(|b| [b.row, b.col]).collect();
    json!({
        "context": { "k": ctx.k(), "n": ctx.n() },
        "partition": p.shape(),
        "paths": paths,
        "bullets": bullets,
        "quotient": p.quotient().ok(),
        "r": p.path_count(),
        "bullets_count": p.bullet_count(),
    })
}

/// Diagram of a pattern with one glyph class for paths and one for bullets.
pub fn pattern_diagram(p: &DyckPattern, ascii: bool) -> String {
    let (path_g, bullet_g, empty_g) = if ascii {
        ('#', 'o', '.')
    } else {
        ('■', '●', '□')
    };
    let path_boxes: Vec<BoxCoord> = p
        .paths()
        .iter()
        .flat_map(|path| path.boxes().iter().copied())
        .collect();
    crate::young::render(
        p.shape(),
        &[(path_boxes, path_g), (p.bullets().to_vec(), bullet_g)],
        empty_g,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::parse_partition;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn bx(row: usize, col: usize) -> BoxCoord {
        BoxCoord::new(row, col)
    }

    fn path(boxes: &[(usize, usize)]) -> DyckPath {
        DyckPath::new(boxes.iter().map(|&(r, c)| bx(r, c)).collect()).unwrap()
    }

    fn pattern(shape: &[usize], paths: &[&[(usize, usize)]], bullets: &[(usize, usize)]) -> DyckPattern {
        DyckPattern::new(
            p(shape),
            paths.iter().map(|b| path(b)).collect(),
            bullets.iter().map(|&(r, c)| bx(r, c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn validate_path_examples() {
        let single = validate_dyck_path(&[bx(3, 2)]).unwrap();
        assert_eq!(single.level(), 5);
        assert_eq!(single.len(), 1);

        let hook = validate_dyck_path(&[bx(3, 1), bx(2, 1), bx(2, 2)]).unwrap();
        assert_eq!(hook.level(), 4);

        assert_eq!(
            validate_dyck_path(&[bx(2, 1), bx(2, 2)]),
            Err(PathViolation::EndpointsDisagree(3, 4))
        );
        assert_eq!(validate_dyck_path(&[]), Err(PathViolation::Empty));
        assert_eq!(
            validate_dyck_path(&[bx(2, 1), bx(3, 1)]),
            Err(PathViolation::NotAWalk(1))
        );
        // walks North off the start antidiagonal and dips back: (2,2) has
        // level 4 with endpoints on level 3
        assert!(matches!(
            validate_dyck_path(&[bx(2, 1), bx(1, 1), bx(1, 2), bx(2, 2)]),
            Err(PathViolation::NotAWalk(_))
        ));
    }

    #[test]
    fn dips_below_detected() {
        // endpoints on level 4, but (2,3) has level 5
        let boxes = [bx(3, 1), bx(2, 1), bx(2, 2), bx(2, 3), bx(1, 3)];
        assert_eq!(
            validate_dyck_path(&boxes),
            Err(PathViolation::DipsBelowAntidiagonal(3))
        );
    }

    // The seven pictured patterns in the shape (5,4,3,2,2): four admissible,
    // three not.
    #[test]
    fn pictured_admissible_patterns() {
        let shape = [5usize, 4, 3, 2, 2];
        let one = pattern(
            &shape,
            &[
                &[(4, 2), (3, 2), (3, 3)],
                &[
                    (5, 1),
                    (4, 1),
                    (3, 1),
                    (2, 1),
                    (2, 2),
                    (2, 3),
                    (2, 4),
                    (1, 4),
                    (1, 5),
                ],
            ],
            &[(5, 2)],
        );
        assert!(one.is_admissible(), "{:?}", one.admissibility());

        let two = pattern(
            &shape,
            &[
                &[(4, 2), (3, 2), (3, 3)],
                &[(4, 1), (3, 1), (2, 1), (2, 2), (2, 3)],
            ],
            &[(2, 4), (5, 1), (5, 2)],
        );
        assert!(two.is_admissible(), "{:?}", two.admissibility());

        let three = pattern(
            &shape,
            &[
                &[(5, 1), (4, 1), (4, 2)],
                &[(3, 3), (2, 3), (2, 4), (1, 4), (1, 5)],
            ],
            &[(5, 2)],
        );
        assert!(three.is_admissible(), "{:?}", three.admissibility());

        let four = pattern(&shape, &[&[(2, 4), (1, 4), (1, 5)]], &[(5, 2), (3, 3)]);
        assert!(four.is_admissible(), "{:?}", four.admissibility());
    }

    #[test]
    fn pictured_non_admissible_patterns() {
        let shape = [5usize, 4, 3, 2, 2];
        let one = pattern(
            &shape,
            &[
                &[(4, 2), (3, 2), (3, 3)],
                &[(3, 1), (2, 1), (2, 2)],
            ],
            &[(5, 1), (4, 1), (5, 2), (2, 4), (2, 3)],
        );
        assert!(!one.is_admissible());

        let two = pattern(
            &shape,
            &[
                &[(4, 2), (3, 2), (3, 3)],
                &[(4, 1), (3, 1), (2, 1), (2, 2), (2, 3)],
                &[(2, 4), (1, 4), (1, 5)],
            ],
            &[(5, 1), (5, 2)],
        );
        assert!(!two.is_admissible());

        let three = pattern(
            &shape,
            &[
                &[(3, 3), (2, 3), (2, 4), (1, 4), (1, 5)],
                &[(2, 2), (1, 2), (1, 3)],
            ],
            &[(4, 2), (3, 2), (5, 2)],
        );
        assert!(!three.is_admissible());
    }

    #[test]
    fn empty_pattern_is_admissible() {
        let a = p(&[5, 4, 2, 2]);
        let e = DyckPattern::empty(a.clone());
        assert!(e.is_admissible());
        assert_eq!(e.quotient().unwrap(), a);
    }

    // Positions off the positive quadrant count as uncovered: adjacent
    // singletons near the boundary trigger the covering condition and fail.
    #[test]
    fn boundary_singletons_are_rejected() {
        let two = pattern(&[2], &[&[(1, 1)], &[(1, 2)]], &[]);
        assert!(!two.is_admissible());
        let three = pattern(&[2, 1], &[&[(1, 1)], &[(1, 2)], &[(2, 1)]], &[]);
        assert!(!three.is_admissible());
        // non-adjacent corner singletons are fine
        let ok = pattern(&[3, 2, 2], &[&[(1, 3)], &[(3, 2)]], &[]);
        assert!(ok.is_admissible());
    }

    #[test]
    fn quotient_of_hook_pattern() {
        // third diagram of the eight-pattern listing for (5,4,2,2)
        let hook = pattern(
            &[5, 4, 2, 2],
            &[&[(4, 2), (3, 2), (2, 2), (2, 3), (2, 4), (1, 4), (1, 5)]],
            &[],
        );
        assert!(hook.is_admissible());
        assert_eq!(hook.quotient().unwrap(), p(&[3, 1, 1, 1]));

        let whole = pattern(&[2, 1], &[&[(2, 1), (1, 1), (1, 2)]], &[]);
        assert!(whole.quotient().unwrap().is_empty());
    }

    #[test]
    fn bullet_cover_cases() {
        // head run directly East of the path end
        let head = pattern(&[4, 1], &[&[(2, 1), (1, 1), (1, 2)]], &[(1, 3), (1, 4)]);
        assert!(bullet_cover_feasible(&head));
        // gap between the end and the bullet
        let gap = pattern(&[4, 1], &[&[(2, 1), (1, 1), (1, 2)]], &[(1, 4)]);
        assert!(!bullet_cover_feasible(&gap));
        // two head and two tail bullets on one path
        let both = pattern(
            &[7, 7, 7, 7, 7, 7, 7],
            &[&[(4, 1), (3, 1), (2, 1), (1, 1), (1, 2), (1, 3), (1, 4)]],
            &[(1, 5), (1, 6), (5, 1), (6, 1)],
        );
        assert!(bullet_cover_feasible(&both));
    }

    #[test]
    fn paths_in_small_shapes() {
        let a = p(&[2, 1]);
        let min3 = enumerate_dyck_paths(&a, 3);
        assert_eq!(min3, vec![path(&[(2, 1), (1, 1), (1, 2)])]);
        let min1 = enumerate_dyck_paths(&a, 1);
        assert_eq!(min1.len(), 4); // three singletons plus the hook
        assert_eq!(enumerate_dyck_paths(&p(&[1]), 1), vec![path(&[(1, 1)])]);
    }

    fn count_patterns(a: &Partition, filter: PatternFilter) -> usize {
        enumerate_patterns(a, &filter).len()
    }

    #[test]
    fn eight_patterns_in_5422() {
        let a = parse_partition("5,4,2,2").unwrap();
        let pats = enumerate_patterns(
            &a,
            &PatternFilter {
                min_path_len: 3,
                bullets: BulletFilter::Any,
                path_count: None,
            },
        );
        assert_eq!(pats.len(), 8);
        let mut quotients: Vec<Partition> = pats.iter().map(|q| q.quotient().unwrap()).collect();
        quotients.sort();
        let mut expect = vec![
            p(&[5, 4, 2, 2]),
            p(&[3, 3, 2, 2]),
            p(&[3, 1, 1, 1]),
            p(&[5, 1, 1, 1]),
            p(&[]),
            p(&[5, 1, 1, 1]),
            p(&[]),
            p(&[]),
        ];
        expect.sort();
        assert_eq!(quotients, expect);
    }

    #[test]
    fn four_patterns_in_5554() {
        let a = parse_partition("5,5,5,4").unwrap();
        let pats = enumerate_patterns(
            &a,
            &PatternFilter {
                min_path_len: 3,
                bullets: BulletFilter::Any,
                path_count: None,
            },
        );
        assert_eq!(pats.len(), 4);
        // all four are bulletless, with 0..=3 paths
        let mut rs: Vec<usize> = pats.iter().map(|q| q.path_count()).collect();
        rs.sort();
        assert_eq!(rs, vec![0, 1, 2, 3]);
        assert!(pats.iter().all(|q| q.bullet_count() == 0));
    }

    #[test]
    fn empty_shape_has_only_empty_pattern() {
        let pats = enumerate_patterns(
            &Partition::empty(),
            &PatternFilter {
                min_path_len: 3,
                bullets: BulletFilter::Any,
                path_count: None,
            },
        );
        assert_eq!(pats, vec![DyckPattern::empty(Partition::empty())]);
    }

    #[test]
    fn layer_patterns_of_322() {
        let ctx = GrassContext::new(3, 6).unwrap();
        let a = p(&[3, 2, 2]);
        // layer sizes across the weight window of the dual Verma module
        let sizes: Vec<usize> = (11..=14)
            .map(|w| layer_patterns(&ctx, &a, w).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![1, 2, 3, 1]);
        assert!(layer_patterns(&ctx, &a, 10).unwrap().is_empty());
        assert!(layer_patterns(&ctx, &a, 15).unwrap().is_empty());
    }

    #[test]
    fn layer_patterns_of_21_in_gr24() {
        let ctx = GrassContext::new(2, 4).unwrap();
        let a = p(&[2, 1]);
        // weight 5 holds only the empty pattern
        let lowest = layer_patterns(&ctx, &a, 5).unwrap();
        assert_eq!(lowest, vec![DyckPattern::empty(a.clone())]);
        // weight 6: two corner singletons and the full hook
        let mid = layer_patterns(&ctx, &a, 6).unwrap();
        assert_eq!(mid.len(), 3);
        let mut quots: Vec<Partition> = mid.iter().map(|q| q.quotient().unwrap()).collect();
        quots.sort();
        assert_eq!(quots, vec![p(&[]), p(&[1, 1]), p(&[2])]);
        // weight 7: the two-singleton pattern; weight 8: nothing
        assert_eq!(layer_patterns(&ctx, &a, 7).unwrap().len(), 1);
        assert!(layer_patterns(&ctx, &a, 8).unwrap().is_empty());
    }

    #[test]
    fn degree_pattern_counts_for_example_shapes() {
        let ctx = GrassContext::new(4, 9).unwrap();
        let a = parse_partition("5,4,2,2").unwrap();
        let counts: Vec<usize> = (7..=12)
            .map(|q| degree_patterns(&ctx, &a, q).unwrap().len())
            .collect();
        assert_eq!(counts, vec![4, 1, 1, 1, 0, 1]);
        assert!(degree_patterns(&ctx, &a, 6).unwrap().is_empty());
        assert!(degree_patterns(&ctx, &a, 13).unwrap().is_empty());

        let divisor = parse_partition("5,5,5,4").unwrap();
        assert_eq!(degree_patterns(&ctx, &divisor, 1).unwrap().len(), 4);
        for q in 2..=20 {
            assert!(degree_patterns(&ctx, &divisor, q).unwrap().is_empty());
        }
    }

    #[test]
    fn rectangle_has_trivial_degree_patterns() {
        let ctx = GrassContext::new(3, 6).unwrap();
        let a = p(&[2, 2]);
        let c = ctx.codim(&a); // 5
        let at_c = degree_patterns(&ctx, &a, c).unwrap();
        assert_eq!(at_c, vec![DyckPattern::empty(a.clone())]);
        for j in 1..=6 {
            assert!(degree_patterns(&ctx, &a, c + j).unwrap().is_empty());
        }
    }

    #[test]
    fn enumerated_patterns_are_admissible_and_distinct() {
        let ctx = GrassContext::new(2, 5).unwrap();
        for a in ctx.partitions() {
            for filter in [
                PatternFilter {
                    min_path_len: 1,
                    bullets: BulletFilter::Forbidden,
                    path_count: None,
                },
                PatternFilter {
                    min_path_len: 3,
                    bullets: BulletFilter::Any,
                    path_count: None,
                },
            ] {
                let pats = enumerate_patterns(&a, &filter);
                let distinct: BTreeSet<_> = pats.iter().cloned().collect();
                assert_eq!(distinct.len(), pats.len());
                for q in &pats {
                    assert!(q.is_admissible());
                    assert!(bullet_cover_feasible(q));
                    for path in q.paths() {
                        assert!(validate_dyck_path(path.boxes()).is_ok());
                        assert!(path.len() >= filter.min_path_len);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_patterns_split_by_weight() {
        let ctx = GrassContext::new(2, 6).unwrap();
        for a in ctx.partitions() {
            for q in 0..=ctx.dim() {
                let all = degree_patterns(&ctx, &a, q).unwrap();
                let mut reassembled = 0usize;
                for w in 0..=(3 * ctx.dim() as i64) {
                    let at_w = degree_weight_patterns(&ctx, &a, q, w).unwrap();
                    for pat in &at_w {
                        assert_eq!(pattern_weight(&ctx, pat), w);
                        // twist integrality: |quotient| - weight is even
                        let diff = pat.quotient().unwrap().size() as i64 - w;
                        assert_eq!(diff.rem_euclid(2), 0);
                    }
                    reassembled += at_w.len();
                }
                assert_eq!(reassembled, all.len());
            }
        }
    }

    #[test]
    fn transpose_symmetry_on_square_context() {
        let ctx = GrassContext::new(3, 6).unwrap();
        for a in ctx.partitions() {
            let at = a.conjugate();
            for q in 0..=ctx.dim() {
                let pats = degree_patterns(&ctx, &a, q).unwrap();
                let mut transposed: Vec<DyckPattern> =
                    pats.iter().map(|p| p.transpose()).collect();
                transposed.sort();
                let direct = degree_patterns(&ctx, &at, q).unwrap();
                assert_eq!(transposed, direct);
            }
        }
    }

    #[test]
    fn filter_with_fixed_path_count() {
        let a = p(&[3, 2, 2]);
        assert_eq!(
            count_patterns(
                &a,
                PatternFilter {
                    min_path_len: 1,
                    bullets: BulletFilter::Forbidden,
                    path_count: Some(0),
                }
            ),
            1
        );
    }

    #[test]
    fn pattern_json_shape() {
        let ctx = GrassContext::new(2, 4).unwrap();
        let hook = pattern(&[2, 1], &[&[(2, 1), (1, 1), (1, 2)]], &[]);
        let v = pattern_json(&ctx, &hook);
        assert_eq!(v["context"]["k"], 2);
        assert_eq!(v["r"], 1);
        assert_eq!(v["bullets_count"], 0);
        assert_eq!(v["paths"][0][0][0], 2);
        assert_eq!(v["quotient"], serde_json::json!([]));
    }

    #[test]
    fn diagram_rendering() {
        let hook = pattern(&[2, 1], &[&[(2, 1), (1, 1), (1, 2)]], &[]);
        assert_eq!(pattern_diagram(&hook, true), "# #\n#");
        let with_bullet = pattern(&[2, 2], &[&[(2, 2)]], &[]);
        assert_eq!(pattern_diagram(&with_bullet, true), ". .\n. #");
    }
}
