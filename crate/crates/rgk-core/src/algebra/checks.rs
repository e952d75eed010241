//! Structural diagnostics: associativity sweeps over basis triples and
//! the rank of the trace bilinear form.

use super::element::{AlgebraElement, BasisElement};
use super::gram::GramTable;
use super::mul::{multiply, trace_element};
use super::AlgebraError;
use crate::linalg;
use crate::minkowski::MetricContext;
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Basis of the (non-unital) algebra over a table: all objects in
/// canonical order, then all ordered pairs of distinct objects.
pub fn basis_elements(gram: &GramTable) -> Vec<BasisElement> {
    let mut basis: Vec<BasisElement> = gram
        .objects()
        .iter()
        .map(|id| BasisElement::Obj(id.clone()))
        .collect();
    for s in gram.objects() {
        for t in gram.objects() {
            if s != t {
                basis.push(BasisElement::Arrow(s.clone(), t.clone()));
            }
        }
    }
    basis.sort();
    basis
}

/// Outcome of an associativity sweep.
#[derive(Clone, Debug)]
pub struct AssociativityReport {
    /// Number of basis elements (objects plus arrows).
    pub basis_size: usize,
    /// Triples actually multiplied out.
    pub triples_checked: usize,
    /// Whether every triple was covered (vs. a seeded random sample).
    pub exhaustive: bool,
    /// Worst coefficient of `(ab)c - a(bc)` over all checked triples.
    pub max_residual: Scalar,
    /// Triples whose residual was not zero under the context's
    /// comparison rules.
    pub failures: usize,
}

/// Multiply out `(ab)c - a(bc)` over basis triples. With `trials = 0`
/// or `trials` at least the number of triples, the sweep is
/// exhaustive; otherwise `trials` triples are drawn from a seeded
/// generator, so runs are reproducible.
pub fn check_associativity(
    gram: &GramTable,
    ctx: &MetricContext,
    trials: usize,
    seed: u64,
) -> Result<AssociativityReport, AlgebraError> {
    let basis = basis_elements(gram);
    let n = basis.len();
    let total = n * n * n;
    let exhaustive = trials == 0 || trials >= total;

    let mut max_residual = Scalar::zero();
    let mut failures = 0;
    let mut checked = 0;
    let mut verify =
        |a: &BasisElement, b: &BasisElement, c: &BasisElement| -> Result<(), AlgebraError> {
            let ea = AlgebraElement::from_basis(a.clone());
            let eb = AlgebraElement::from_basis(b.clone());
            let ec = AlgebraElement::from_basis(c.clone());
            let left = multiply(&multiply(&ea, &eb, gram, ctx)?, &ec, gram, ctx)?;
            let right = multiply(&ea, &multiply(&eb, &ec, gram, ctx)?, gram, ctx)?;
            let residual = left.residual(&right);
            if !ctx.scalar_is_zero(&residual) {
                failures += 1;
            }
            if residual > max_residual {
                max_residual = residual.clone();
            }
            checked += 1;
            Ok(())
        };

    if exhaustive {
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    verify(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let a = &basis[rng.gen_range(0..n)];
            let b = &basis[rng.gen_range(0..n)];
            let c = &basis[rng.gen_range(0..n)];
            verify(a, b, c)?;
        }
    }

    Ok(AssociativityReport {
        basis_size: n,
        triples_checked: checked,
        exhaustive,
        max_residual,
        failures,
    })
}

/// Outcome of the trace-form rank computation.
#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    /// Number of objects in the table.
    pub objects: usize,
    /// Dimension of the unital algebra: `objects^2 + 1`.
    pub dim: usize,
    /// The unit's trace used for the form.
    pub tau: Scalar,
    /// Rank of the bilinear form `B(x, y) = trace(x y)`.
    pub rank: usize,
    /// Whether the form is nondegenerate (`rank == dim`).
    pub nondegenerate: bool,
    /// Whether the whole computation stayed in exact arithmetic.
    pub exact: bool,
}

/// Rank of the trace form `B(x, y) = trace(xy)` on the unital algebra
/// (basis: objects, arrows, formal unit), with the unit's trace set to
/// `tau`. The basis enumeration is canonical, so the matrix — and the
/// report — is deterministic for a given table.
pub fn frobenius_rank(
    gram: &GramTable,
    ctx: &MetricContext,
    tau: &Scalar,
) -> Result<FrobeniusReport, AlgebraError> {
    let mut basis = basis_elements(gram);
    basis.push(BasisElement::Unit);
    let dim = basis.len();

    let mut rows = Vec::with_capacity(dim);
    let mut exact = true;
    for x in &basis {
        let ex = AlgebraElement::from_basis(x.clone());
        let mut row = Vec::with_capacity(dim);
        for y in &basis {
            let ey = AlgebraElement::from_basis(y.clone());
            let product = multiply(&ex, &ey, gram, ctx)?;
            let entry = trace_element(&product, Some(tau))?;
            exact &= entry.is_exact();
            row.push(entry);
        }
        rows.push(row);
    }
    let rank = linalg::rank(rows, ctx.zero_tolerance());
    Ok(FrobeniusReport {
        objects: gram.len(),
        dim,
        tau: tau.clone(),
        rank,
        nondegenerate: rank == dim,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_body_gram() -> GramTable {
        let mut g = GramTable::with_objects(["p", "q", "r"]).unwrap();
        g.set_trace("p", "q", Scalar::ratio(25, 16)).unwrap();
        g.set_trace("q", "r", Scalar::ratio(25, 16)).unwrap();
        g.set_trace("p", "r", Scalar::ratio(289, 64)).unwrap();
        g
    }

    #[test]
    fn basis_enumeration_is_canonical() {
        let g = three_body_gram();
        let basis = basis_elements(&g);
        assert_eq!(basis.len(), 9);
        let names: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
        assert_eq!(
            names,
            ["p", "q", "r", "w(p,q)", "w(p,r)", "w(q,p)", "w(q,r)", "w(r,p)", "w(r,q)"]
        );
    }

    #[test]
    fn exhaustive_sweep_is_associative_and_exact() {
        let g = three_body_gram();
        let ctx = MetricContext::minkowski();
        let report = check_associativity(&g, &ctx, 0, 0).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.triples_checked, 729);
        assert_eq!(report.failures, 0);
        assert_eq!(report.max_residual, Scalar::zero());
        assert!(report.max_residual.is_exact());
    }

    #[test]
    fn sampled_sweep_is_reproducible() {
        let g = three_body_gram();
        let ctx = MetricContext::minkowski();
        let a = check_associativity(&g, &ctx, 50, 7).unwrap();
        let b = check_associativity(&g, &ctx, 50, 7).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a.triples_checked, 50);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.max_residual, b.max_residual);
        assert_eq!(a.failures, 0);
    }

    #[test]
    fn single_object_form_rank() {
        let g = GramTable::with_objects(["a"]).unwrap();
        let ctx = MetricContext::minkowski();
        // Unit trace 1 collapses the 2x2 form to the all-ones matrix.
        let at_one = frobenius_rank(&g, &ctx, &Scalar::one()).unwrap();
        assert_eq!(at_one.dim, 2);
        assert_eq!(at_one.rank, 1);
        assert!(!at_one.nondegenerate);
        assert!(at_one.exact);
        // Any other unit trace separates the two basis directions.
        let at_two = frobenius_rank(&g, &ctx, &Scalar::from_int(2)).unwrap();
        assert_eq!(at_two.rank, 2);
        assert!(at_two.nondegenerate);
    }
}
