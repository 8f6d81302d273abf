//! The action of operator classes on `Ext_B^*(M, N)` by Yoneda product with
//! their `psi`-images, and the finite-generation report.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extensions::InfinitesimalExtension;
use crate::homology::module::same_algebra;
use crate::homology::{ext_product, resolve, CoverStrategy, ExtClass, ExtSpace, FinModule};
use crate::linalg::{image_basis, Matrix};

use super::theta::{operator_target, psi};

/// `op . c = psi(op) o c` for an operator value `op` in `Ext^2(N, N)`,
/// landing in `target = Ext^{n+2}(M, N)` on the resolution of `c`.
pub fn act(op: &ExtClass, c: &ExtClass, target: &Arc<ExtSpace>) -> Result<ExtClass> {
    if op.degree() != 2 {
        return Err(Error::Mismatch("operator values live in degree two".into()));
    }
    ext_product(op, c, target)
}

/// Operator matrices `Ext^n(M, N) -> Ext^{n+2}(M, N)` for `0 <= n <= L - 2`.
#[derive(Clone, Debug)]
pub struct OperatorAction {
    pub module: Arc<FinModule>,
    pub coefficients: Arc<FinModule>,
    pub length: usize,
    /// `spaces[n] = Ext^n(M, N)` for `0 <= n <= L`.
    pub spaces: Vec<Arc<ExtSpace>>,
    /// `psi`-images in `Ext^2(N, N)`.
    pub operators: Vec<ExtClass>,
    /// `matrices[i][n]` is the action of operator `i` on `Ext^n`.
    pub matrices: Vec<Vec<Matrix>>,
}

pub fn action_table(
    ops: &[InfinitesimalExtension],
    m: &Arc<FinModule>,
    n: &Arc<FinModule>,
    length: usize,
    strategy: CoverStrategy,
) -> Result<OperatorAction> {
    if length < 4 {
        return Err(Error::ResolutionTooShort {
            needed: 4,
            have: length,
        });
    }
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let res = Arc::new(resolve(m, length + 1, strategy));
    let spaces = (0..=length)
        .map(|k| ExtSpace::new(&res, n, k))
        .collect::<Result<Vec<_>>>()?;
    let target = operator_target(n, strategy)?;
    let operators = ops
        .iter()
        .map(|xi| Ok(psi(xi, &target, strategy)?.class))
        .collect::<Result<Vec<_>>>()?;
    let field = n.field();
    let mut matrices = Vec::with_capacity(operators.len());
    for op in &operators {
        let mut per_degree = Vec::with_capacity(length - 1);
        for k in 0..=length - 2 {
            let cols = (0..spaces[k].dim())
                .map(|i| Ok(act(op, &spaces[k].basis_class(i), &spaces[k + 2])?.coords))
                .collect::<Result<Vec<_>>>()?;
            per_degree.push(Matrix::from_columns(field, spaces[k + 2].dim(), &cols));
        }
        matrices.push(per_degree);
    }
    Ok(OperatorAction {
        module: m.clone(),
        coefficients: n.clone(),
        length,
        spaces,
        operators,
        matrices,
    })
}

impl OperatorAction {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    /// Whether the sum of operator images from `Ext^{n-2}` is all of `Ext^n`.
    pub fn covered(&self, n: usize) -> bool {
        let dim = self.spaces[n].dim();
        if dim == 0 {
            return true;
        }
        if n < 2 || self.matrices.is_empty() {
            return false;
        }
        let stacked = self
            .matrices
            .iter()
            .skip(1)
            .fold(self.matrices[0][n - 2].clone(), |acc, ms| {
                acc.hstack(&ms[n - 2])
            });
        image_basis(&stacked).dim() == dim
    }

    /// Degrees `n <= L - 4` where operators `i` and `j` fail to commute.
    pub fn commutation_failures(&self, i: usize, j: usize) -> Vec<usize> {
        let (a, b) = (&self.matrices[i], &self.matrices[j]);
        (0..=self.length.saturating_sub(4))
            .filter(|&n| a[n + 2].mul(&b[n]) != b[n + 2].mul(&a[n]))
            .collect()
    }
}

/// For each `d <= L - 2`, whether `Ext^{<=d}` generates `Ext^{<=L}` under the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGenReport {
    pub length: usize,
    pub dims: Vec<usize>,
    /// `covered[n]`: operator images span `Ext^n`.
    pub covered: Vec<bool>,
    /// `generated[d]` for `0 <= d <= L - 2`.
    pub generated: Vec<bool>,
    pub minimal_degree: Option<usize>,
}

pub fn fin_gen_report(a: &OperatorAction) -> FinGenReport {
    let l = a.length;
    let covered: Vec<bool> = (0..=l).map(|n| a.covered(n)).collect();
    let generated: Vec<bool> = (0..=l - 2)
        .map(|d| covered[d + 1..].iter().all(|&c| c))
        .collect();
    let minimal_degree = generated.iter().position(|&g| g);
    FinGenReport {
        length: l,
        dims: a.dims(),
        covered,
        generated,
        minimal_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{f101, residue};
    use crate::extensions::Cocycle2;

    #[test]
    fn truncation_operator_generates_in_degree_one() {
        let xi = InfinitesimalExtension::truncation(f101(), 2).unwrap();
        let k = residue(&xi.base).unwrap();
        let a = action_table(&[xi], &k, &k, 6, CoverStrategy::Minimal).unwrap();
        assert_eq!(a.dims(), vec![1; 7]);
        assert!(a.matrices[0].iter().all(|m| m.rank() == 1));
        let r = fin_gen_report(&a);
        assert_eq!(r.covered, vec![false, false, true, true, true, true, true]);
        assert_eq!(r.minimal_degree, Some(1));
        assert!(a.commutation_failures(0, 0).is_empty());
    }

    #[test]
    fn zero_operator_generates_nothing_and_short_lengths_are_rejected() {
        let xi = InfinitesimalExtension::truncation(f101(), 2).unwrap();
        let k = residue(&xi.base).unwrap();
        let zero =
            InfinitesimalExtension::from_cocycle(&Cocycle2::zero(&xi.base, &xi.kernel)).unwrap();
        let a = action_table(&[zero], &k, &k, 4, CoverStrategy::Minimal).unwrap();
        assert!(a.matrices[0].iter().all(Matrix::is_zero));
        assert_eq!(fin_gen_report(&a).minimal_degree, None);
        assert!(matches!(
            action_table(&[xi], &k, &k, 3, CoverStrategy::Minimal),
            Err(Error::ResolutionTooShort { needed: 4, have: 3 })
        ));
    }
}
