//! Checkers for the comparison statements between the operators, each
//! returning a verdict with the compared coordinates as witness.

use std::sync::Arc;

use crate::algebra::AlgebraMap;
use crate::error::{Error, Result};
use crate::extensions::{to_cocycle, InfinitesimalExtension, NExtension};
use crate::homology::ext::render_coords;
use crate::homology::{CoverStrategy, ExtClass, FinModule, ModuleMap};
use crate::linalg::LinearSolver;

use super::alpha::alpha_of_extension;
use super::hochschild::{gamma, hh2_space, s_map};
use super::theta::{operator_target, phi, psi};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn compare(name: &str, lhs_name: &str, lhs: &ExtClass, rhs_name: &str, rhs: &ExtClass) -> Verdict {
    let passed = lhs.coords == rhs.coords;
    Verdict {
        name: name.into(),
        passed,
        detail: format!(
            "{lhs_name} = {}, {rhs_name} = {} in a space of dim {}",
            render_coords(&lhs.coords),
            render_coords(&rhs.coords),
            lhs.space.dim()
        ),
    }
}

/// `phi(xi) = psi(alpha(xi))` for a 1-extension `xi` of `B` by `C` over `R`.
pub fn verify_phi_eq_psi_alpha(
    p: &AlgebraMap,
    xi: &NExtension,
    n: &Arc<FinModule>,
) -> Result<Verdict> {
    let target = operator_target(n, CoverStrategy::Minimal)?;
    let lhs = phi(p, xi, &target, CoverStrategy::Minimal)?.class;
    let e = alpha_of_extension(p, xi)?;
    let rhs = psi(&e, &target, CoverStrategy::Minimal)?.class;
    Ok(compare("phi_eq_psi_alpha", "phi", &lhs, "psi.alpha", &rhs))
}

/// Case (i): `psi` reads only `E`-module data, so forgetting the base ring
/// changes nothing; the check recomputes on an independent presentation.
pub fn verify_naturality_forget(
    xi: &InfinitesimalExtension,
    n: &Arc<FinModule>,
) -> Result<Verdict> {
    let target = operator_target(n, CoverStrategy::Minimal)?;
    let lhs = psi(xi, &target, CoverStrategy::Minimal)?.class;
    let rhs = psi(xi, &target, CoverStrategy::FullBasis)?.class;
    Ok(compare(
        "naturality_forget",
        "psi",
        &lhs,
        "psi over the smaller base",
        &rhs,
    ))
}

/// Case (ii): for `p: R -> B`, `psi_R(p^* xi)` equals the restriction of the
/// extension `psi_B(xi)` to `R`, in `Ext^2_R(N, N)`.
pub fn verify_naturality_restrict(
    xi: &InfinitesimalExtension,
    p: &AlgebraMap,
    n: &Arc<FinModule>,
) -> Result<Verdict> {
    let target_b = operator_target(n, CoverStrategy::Minimal)?;
    let over_b = psi(xi, &target_b, CoverStrategy::Minimal)?.extension;
    let n_r = n.restrict_scalars(p)?;
    let target_r = operator_target(&n_r, CoverStrategy::Minimal)?;
    let restricted = over_b.restrict_scalars(p)?.with_ends(&n_r, &n_r)?;
    let lhs = to_cocycle(&restricted, &target_r)?;
    let pulled = xi.pullback(p)?;
    let rhs = psi(&pulled, &target_r, CoverStrategy::Minimal)?.class;
    Ok(compare(
        "naturality_restrict",
        "restricted psi_B",
        &lhs,
        "psi_R of the pullback",
        &rhs,
    ))
}

/// Case (iii): pushing the kernel along `g: C -> C'` (both cyclic) pushes
/// `psi` forward along the induced `C (x) N -> C' (x) N`, read on `N`.
pub fn verify_naturality_pushforward(
    xi: &InfinitesimalExtension,
    g: &ModuleMap,
    n: &Arc<FinModule>,
) -> Result<Verdict> {
    let (c, c2) = (&g.source, &g.target);
    let gen = c.generator().ok_or(Error::KernelNotCyclic)?;
    let gen2 = c2.generator().ok_or(Error::KernelNotCyclic)?;
    // g(gen) = s gen2, so the induced map on N is multiplication by s
    let s = LinearSolver::new(&c2.orbit_matrix(gen2))
        .solve(&g.apply(gen))
        .ok_or_else(|| Error::InvalidModule("the generator is not cyclic".into()))?;
    let on_n = ModuleMap::new(n.clone(), n.clone(), n.action_of(&s))?;
    let target = operator_target(n, CoverStrategy::Minimal)?;
    let before = psi(xi, &target, CoverStrategy::Minimal)?.extension;
    let lhs = to_cocycle(&before.pushforward(&on_n)?.with_ends(n, n)?, &target)?;
    let pushed = xi.pushforward(g)?;
    let rhs = psi(&pushed, &target, CoverStrategy::Minimal)?.class;
    Ok(compare(
        "naturality_pushforward",
        "pushed psi_C",
        &lhs,
        "psi_C' of the pushforward",
        &rhs,
    ))
}

/// `s(gamma(xi)) = psi(xi)` for an extension of `B` by `B`.
pub fn verify_s_gamma_eq_psi(
    xi: &InfinitesimalExtension,
    n: &Arc<FinModule>,
    budget: usize,
) -> Result<Verdict> {
    let target = operator_target(n, CoverStrategy::Minimal)?;
    let hh = hh2_space(&xi.base, budget)?;
    let g = gamma(xi, &hh)?;
    let lhs = s_map(&g, &target, budget)?.class;
    let rhs = psi(xi, &target, CoverStrategy::Minimal)?.class;
    Ok(compare("s_gamma_eq_psi", "s.gamma", &lhs, "psi", &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic, f101, regular, residue, truncation_map, x_hat_extension};
    use crate::operators::DEFAULT_BAR_BUDGET;

    #[test]
    fn comparison_checks_pass_on_the_truncation() {
        let p = truncation_map(f101(), 6, 3).unwrap();
        let k = residue(&p.target).unwrap();
        let (xi, _h) = x_hat_extension(&p).unwrap();
        assert!(verify_phi_eq_psi_alpha(&p, &xi, &k).unwrap().passed);
        let e = InfinitesimalExtension::truncation_onto(&p.source, &p.target, 3).unwrap();
        assert!(verify_naturality_forget(&e, &k).unwrap().passed);
        assert!(
            verify_s_gamma_eq_psi(&e, &k, DEFAULT_BAR_BUDGET)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn naturality_under_restriction_and_pushforward() {
        let f = f101();
        let e = InfinitesimalExtension::truncation(f, 3).unwrap();
        let b = e.base.clone();
        let k = residue(&b).unwrap();
        let p = crate::algebra::AlgebraMap::from_var_image_strs(
            &crate::corpus::algebra("k[x]/(x^5)", f).unwrap(),
            &b,
            &["x"],
        )
        .unwrap();
        let v = verify_naturality_restrict(&e, &p, &k).unwrap();
        assert!(v.passed, "{}", v.detail);
        let c = regular(&b);
        let x = ModuleMap::new(
            c.clone(),
            c.clone(),
            b.mult_matrix(&b.element("x").unwrap()),
        )
        .unwrap();
        let n = cyclic(&b, &["x^2"]).unwrap();
        let v = verify_naturality_pushforward(&e, &x, &n).unwrap();
        assert!(v.passed, "{}", v.detail);
        let v =
            verify_naturality_pushforward(&e, &ModuleMap::identity(&c).scale(&f.from_i64(3)), &k)
                .unwrap();
        assert!(v.passed, "{}", v.detail);
    }
}
