//! Determinantal varieties as restrictions of Schubert varieties to the
//! opposite big cell: closed-form multiplicity generating polynomials with
//! Gaussian binomials, the weight rule, and the singular-locus generating
//! functions.

use crate::cousin::{local_cohomology, CousinError};
use crate::young::{GrassContext, Partition, YoungError};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DetError {
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error(transparent)]
    Cousin(#[from] CousinError),
    #[error("invalid determinantal instance: need m >= n >= 1 and 0 <= rank <= n, got m={m}, n={n}, rank={rank}")]
    BadInstance { m: usize, n: usize, rank: usize },
    #[error("stratum index {s} out of range 0..={p}")]
    RankOutOfRange { s: usize, p: usize },
    #[error("factor label {0} is not of determinantal-stratum shape")]
    UnexpectedFactorLabel(Partition),
}

/// An integer polynomial in one variable, stored as exponent -> coefficient
/// with no zero entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: BTreeMap<usize, i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::monomial(0)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(exp, 1);
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: usize) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: usize, c: i64) {
        let v = self.coeffs.entry(exp).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &other.coeffs {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiply by q^exp.
    pub fn shifted(&self, exp: usize) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + exp, c)).collect(),
        }
    }

    /// Substitute q -> q^2.
    pub fn squared_variable(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (2 * e, c)).collect(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Coefficients read the same from both ends of the support interval.
    pub fn is_palindromic(&self) -> bool {
        let (Some(&lo), Some(&hi)) = (self.coeffs.keys().next(), self.coeffs.keys().next_back())
        else {
            return true;
        };
        self.coeffs
            .iter()
            .all(|(&e, &c)| self.coeff(lo + hi - e) == c)
    }

    /// Exponents present all share one parity.
    pub fn exponents_share_parity(&self) -> bool {
        let mut parities = self.coeffs.keys().map(|e| e % 2);
        match parities.next() {
            None => true,
            Some(first) => parities.all(|p| p == first),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .coeffs
            .iter()
            .map(|(&e, &c)| serde_json::json!([e, c]))
            .collect::<Vec<_>>())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, e) => write!(f, "q^{e}")?,
                (c, 1) => write!(f, "{c}q")?,
                (c, e) => write!(f, "{c}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Gaussian binomial coefficient: the generating polynomial of partitions
/// inside a b x (a-b) rectangle by size, in q or q^2. Zero when b < 0 or
/// 0 < b with a < b; one when b = 0 (any a).
pub fn gaussian_binomial(a: i64, b: i64, squared: bool) -> IntPolynomial {
    let poly = gaussian_binomial_q(a, b);
    if squared {
        poly.squared_variable()
    } else {
        poly
    }
}

fn gaussian_binomial_q(a: i64, b: i64) -> IntPolynomial {
    if b < 0 {
        return IntPolynomial::zero();
    }
    if b == 0 {
        return IntPolynomial::one();
    }
    if a < b {
        return IntPolynomial::zero();
    }
    // Pascal recurrence, division-free
    gaussian_binomial_q(a - 1, b - 1).add(&gaussian_binomial_q(a - 1, b).shifted(b as usize))
}

/// An m x n matrix space (m >= n) with a rank bound, realized as a Schubert
/// variety in the n x m rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetInstance {
    m: usize,
    n: usize,
    rank: usize,
}

impl DetInstance {
    pub fn new(m: usize, n: usize, rank: usize) -> Result<Self, DetError> {
        if n == 0 || m < n || rank > n {
            return Err(DetError::BadInstance { m, n, rank });
        }
        Ok(DetInstance { m, n, rank })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn context(&self) -> GrassContext {
        GrassContext::new(self.n, self.n + self.m).expect("n >= 1 and m >= 1")
    }

    /// The partition (m^p, p^(n-p)): the n x m rectangle minus its
    /// bottom-right (n-p) x (m-p) corner.
    pub fn schubert_partition(&self) -> Partition {
        let mut parts = vec![self.m; self.rank];
        parts.extend(vec![self.rank; self.n - self.rank]);
        Partition::new(parts).expect("weakly decreasing by construction")
    }

    /// The label of the rank-s stratum, (m^s, s^(n-s)).
    pub fn stratum_label(&self, s: usize) -> Partition {
        let mut parts = vec![self.m; s];
        parts.extend(vec![s; self.n - s]);
        Partition::new(parts).expect("weakly decreasing by construction")
    }

    pub fn codim(&self) -> usize {
        (self.m - self.rank) * (self.n - self.rank)
    }
}

/// Closed-form generating polynomial of the multiplicity of the rank-s
/// stratum across cohomological degrees:
/// q^((n-p)^2 + (n-s)(m-n)) * gaussian(n-s-1, p-s) in q^2.
pub fn closed_form_multiplicity(inst: &DetInstance, s: usize) -> Result<IntPolynomial, DetError> {
    let (m, n, p) = (inst.m as i64, inst.n as i64, inst.rank as i64);
    if s > inst.rank {
        return Err(DetError::RankOutOfRange { s, p: inst.rank });
    }
    let s = s as i64;
    let shift = ((n - p) * (n - p) + (n - s) * (m - n)) as usize;
    Ok(gaussian_binomial(n - s - 1, p - s, true).shifted(shift))
}

/// Per-stratum enumerated generating polynomial plus the weight-rule flag:
/// every factor of degree j labeled by stratum s must have weight
/// mn + p - s + j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumMultiplicity {
    pub gen_poly: IntPolynomial,
    pub weights_ok: bool,
}

/// Run the pattern formula on the instance's Schubert partition, group the
/// factors by stratum, and check the weight rule. Every factor label must be
/// of stratum shape.
pub fn enumerated_multiplicities(
    inst: &DetInstance,
) -> Result<BTreeMap<usize, StratumMultiplicity>, DetError> {
    let ctx = inst.context();
    let a = inst.schubert_partition();
    let cohomology = local_cohomology(&ctx, &a)?;
    let labels: Vec<Partition> = (0..=inst.rank).map(|s| inst.stratum_label(s)).collect();
    let mut out: BTreeMap<usize, StratumMultiplicity> = (0..=inst.rank)
        .map(|s| {
            (
                s,
                StratumMultiplicity {
                    gen_poly: IntPolynomial::zero(),
                    weights_ok: true,
                },
            )
        })
        .collect();
    let expected_weight = |s: usize, j: usize| {
        (inst.m * inst.n) as i64 + inst.rank as i64 - s as i64 + j as i64
    };
    for (q, module) in cohomology {
        for f in module.factors() {
            let s = labels
                .iter()
                .position(|l| l == &f.label)
                .ok_or_else(|| DetError::UnexpectedFactorLabel(f.label.clone()))?;
            let entry = out.get_mut(&s).expect("initialized");
            entry.gen_poly.add_term(q, f.multiplicity as i64);
            if f.weight != expected_weight(s, q) {
                entry.weights_ok = false;
            }
        }
    }
    Ok(out)
}

/// For a = (v1^d1, ..., vt^dt) with t >= 2 blocks: the partitions indexing
/// the singular-locus components, paired with the closed-form generating
/// polynomial of their multiplicities,
/// q^codim * (q^|v_i - v_{i+1} - d_{i+1}| + ... + q^(v_i - v_{i+1} + d_{i+1} - 2))
/// stepping by two.
pub fn singular_locus_multiplicities(
    ctx: &GrassContext,
    a: &Partition,
) -> Result<Vec<(Partition, IntPolynomial)>, DetError> {
    ctx.check_fits(a)?;
    let blocks = a.blocks();
    let c = ctx.codim(a);
    let mut out = Vec::new();
    for i in 0..blocks.len().saturating_sub(1) {
        let mut parts = Vec::new();
        for (j, &(v, d)) in blocks.iter().enumerate() {
            if j == i {
                parts.extend(std::iter::repeat_n(v, d - 1));
            } else if j == i + 1 {
                parts.extend(std::iter::repeat_n(v - 1, d + 1));
            } else {
                parts.extend(std::iter::repeat_n(v, d));
            }
        }
        let component = Partition::new(parts).expect("weakly decreasing by construction");
        let gap = blocks[i].0 as i64 - blocks[i + 1].0 as i64;
        let depth = blocks[i + 1].1 as i64;
        let lo = (gap - depth).unsigned_abs() as usize;
        let hi = (gap + depth - 2) as usize;
        let mut poly = IntPolynomial::zero();
        let mut e = lo;
        while e <= hi {
            poly.add_term(e, 1);
            e += 2;
        }
        out.push((component, poly.shifted(c)));
    }
    Ok(out)
}

/// Generating polynomial of one label's multiplicities across cohomological
/// degrees, from the pattern formula.
pub fn factor_multiplicity(
    ctx: &GrassContext,
    a: &Partition,
    label: &Partition,
) -> Result<IntPolynomial, DetError> {
    let mut poly = IntPolynomial::zero();
    for (q, module) in local_cohomology(ctx, a)? {
        let mult: usize = module
            .factors()
            .filter(|f| &f.label == label)
            .map(|f| f.multiplicity)
            .sum();
        if mult > 0 {
            poly.add_term(q, mult as i64);
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::parse_partition;

    fn poly(pairs: &[(usize, i64)]) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        for &(e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1, false), poly(&[(0, 1), (1, 1)]));
        assert_eq!(
            gaussian_binomial(4, 2, false),
            poly(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)])
        );
        assert_eq!(
            gaussian_binomial(2, 1, true),
            poly(&[(0, 1), (2, 1)])
        );
        assert_eq!(gaussian_binomial(3, -1, false), IntPolynomial::zero());
        assert_eq!(gaussian_binomial(2, 3, false), IntPolynomial::zero());
        // b = 0 is the empty rectangle, even for negative a
        assert_eq!(gaussian_binomial(-1, 0, false), IntPolynomial::one());
    }

    #[test]
    fn gaussian_binomial_symmetry_and_counting() {
        for a in 0..=8i64 {
            for b in 0..=a {
                let g = gaussian_binomial(a, b, false);
                assert_eq!(g, gaussian_binomial(a, a - b, false), "({a},{b})");
                assert_eq!(
                    g.eval_one() as u64,
                    crate::young::binomial(a as usize, b as usize)
                );
                assert!(g.is_palindromic());
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        // determinant hypersurface: every stratum appears once in degree 1
        for n in 1..=5 {
            let inst = DetInstance::new(n, n, n - 1).unwrap();
            for s in 0..n {
                assert_eq!(
                    closed_form_multiplicity(&inst, s).unwrap(),
                    IntPolynomial::monomial(1)
                );
            }
        }
        let inst = DetInstance::new(3, 3, 1).unwrap();
        assert_eq!(
            closed_form_multiplicity(&inst, 0).unwrap(),
            poly(&[(4, 1), (6, 1)])
        );
        assert_eq!(
            closed_form_multiplicity(&inst, 1).unwrap(),
            IntPolynomial::monomial(4)
        );
        let inst = DetInstance::new(5, 4, 3).unwrap();
        assert_eq!(
            closed_form_multiplicity(&inst, 3).unwrap(),
            IntPolynomial::monomial(2)
        );
        assert!(matches!(
            closed_form_multiplicity(&inst, 4),
            Err(DetError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn exponent_identity() {
        for m in 1..=8i64 {
            for n in 1..=m {
                for p in 0..=n {
                    for s in 0..=p {
                        assert_eq!(
                            (m - p) * (n - p) + (p - s) * (m - n),
                            (n - p) * (n - p) + (n - s) * (m - n)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn schubert_partition_shape() {
        let inst = DetInstance::new(5, 4, 2).unwrap();
        assert_eq!(
            inst.schubert_partition(),
            parse_partition("5,5,2,2").unwrap()
        );
        assert_eq!(inst.codim(), 6);
        assert_eq!(
            inst.context().codim(&inst.schubert_partition()),
            inst.codim()
        );
        assert_eq!(inst.stratum_label(0), Partition::empty());
        assert_eq!(inst.stratum_label(1), parse_partition("5,1,1,1").unwrap());
    }

    #[test]
    fn enumerated_matches_closed_form_small() {
        for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)] {
            for p in 0..=n {
                let inst = DetInstance::new(m, n, p).unwrap();
                let enumerated = enumerated_multiplicities(&inst).unwrap();
                for s in 0..=p {
                    let closed = closed_form_multiplicity(&inst, s).unwrap();
                    let got = &enumerated[&s];
                    assert_eq!(got.gen_poly, closed, "m={m} n={n} p={p} s={s}");
                    assert!(got.weights_ok, "weight rule at m={m} n={n} p={p} s={s}");
                }
            }
        }
    }

    #[test]
    fn weight_rule_on_3x3_rank_one() {
        let inst = DetInstance::new(3, 3, 1).unwrap();
        let enumerated = enumerated_multiplicities(&inst).unwrap();
        // stratum 0 appears in degrees 4 and 6 with weights 14 and 16
        assert!(enumerated[&0].weights_ok);
        assert_eq!(enumerated[&0].gen_poly, poly(&[(4, 1), (6, 1)]));
    }

    #[test]
    fn singular_locus_example() {
        let ctx = GrassContext::new(4, 9).unwrap();
        let a = parse_partition("5,4,2,2").unwrap();
        let comps = singular_locus_multiplicities(&ctx, &a).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].0, parse_partition("3,3,2,2").unwrap());
        assert_eq!(comps[0].1, IntPolynomial::monomial(7));
        assert_eq!(comps[1].0, parse_partition("5,1,1,1").unwrap());
        assert_eq!(comps[1].1, poly(&[(7, 1), (9, 1)]));
        for (_, poly) in &comps {
            assert!(poly.exponents_share_parity());
        }
    }

    #[test]
    fn singular_locus_of_rectangle_is_empty() {
        let ctx = GrassContext::new(2, 5).unwrap();
        assert!(singular_locus_multiplicities(&ctx, &parse_partition("3,3").unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn singular_locus_agrees_with_enumeration() {
        let ctx = GrassContext::new(4, 9).unwrap();
        let a = parse_partition("5,4,2,2").unwrap();
        for (component, closed) in singular_locus_multiplicities(&ctx, &a).unwrap() {
            let enumerated = factor_multiplicity(&ctx, &a, &component).unwrap();
            assert_eq!(enumerated, closed, "component {component}");
        }
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(poly(&[(0, 1), (2, 1)]).to_string(), "1 + q^2");
        assert_eq!(poly(&[(1, 2)]).to_string(), "2q");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
