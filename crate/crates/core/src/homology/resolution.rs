//! Free covers, truncated free resolutions and chain-map lifting.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{quotient_space, unit_vector, LinearSolver};

use super::module::{FinModule, ModuleMap};

/// How generators of a cover are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverStrategy {
    /// A basis of `M / m M` when the algebra is local; the full basis otherwise.
    Minimal,
    /// Every basis vector of `M` is a generator.
    FullBasis,
}

/// A surjection from a free module.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub free: Arc<FinModule>,
    pub epsilon: ModuleMap,
}

pub fn free_cover(m: &Arc<FinModule>, strategy: CoverStrategy) -> FreeCover {
    let field = m.field();
    let gens: Vec<Vec<Scalar>> = match (strategy, m.algebra().maximal_ideal()) {
        (CoverStrategy::Minimal, Some(ideal)) => {
            let jm = m.ideal_times(ideal);
            quotient_space(m.dim(), &jm).representatives
        }
        _ => (0..m.dim())
            .map(|i| unit_vector(field, m.dim(), i))
            .collect(),
    };
    let free = Arc::new(FinModule::free(m.algebra(), gens.len()));
    let epsilon = free.free_hom(m, &gens);
    FreeCover { free, epsilon }
}

/// `0 -> K -> F -> N -> 0` with `F` free.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub free: Arc<FinModule>,
    pub epsilon: ModuleMap,
    pub kernel: Arc<FinModule>,
    pub inclusion: ModuleMap,
}

pub fn presentation(n: &Arc<FinModule>, strategy: CoverStrategy) -> Presentation {
    let FreeCover { free, epsilon } = free_cover(n, strategy);
    let (kernel, inclusion) = epsilon.kernel();
    Presentation {
        free,
        epsilon,
        kernel,
        inclusion,
    }
}

/// `F_L -> ... -> F_1 -> F_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: Arc<FinModule>,
    pub strategy: CoverStrategy,
    pub terms: Vec<Arc<FinModule>>,
    pub augmentation: ModuleMap,
    /// `differentials[n - 1] = d_n : F_n -> F_{n-1}`
    pub differentials: Vec<ModuleMap>,
}

/// Resolves `M` up to homological degree `length`.
pub fn resolve(m: &Arc<FinModule>, length: usize, strategy: CoverStrategy) -> FreeResolution {
    let cover = free_cover(m, strategy);
    let mut terms = vec![cover.free.clone()];
    let augmentation = cover.epsilon;
    let (mut kernel, mut inclusion) = augmentation.kernel();
    let mut differentials = Vec::with_capacity(length);
    for _ in 1..=length {
        let c = free_cover(&kernel, strategy);
        let d = inclusion.compose(&c.epsilon);
        let (k, inc) = d.kernel();
        terms.push(c.free);
        differentials.push(d);
        kernel = k;
        inclusion = inc;
    }
    FreeResolution {
        module: m.clone(),
        strategy,
        terms,
        augmentation,
        differentials,
    }
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.terms[n].free_rank().expect("free term")
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.terms.len()).map(|n| self.rank(n)).collect()
    }

    pub fn term(&self, n: usize) -> &Arc<FinModule> {
        &self.terms[n]
    }

    /// `d_n : F_n -> F_{n-1}` for `1 <= n <= L`.
    pub fn d(&self, n: usize) -> &ModuleMap {
        &self.differentials[n - 1]
    }

    pub fn require(&self, needed: usize) -> Result<()> {
        if self.length() < needed {
            return Err(Error::ResolutionTooShort {
                needed,
                have: self.length(),
            });
        }
        Ok(())
    }

    /// Checks `d d = 0`, exactness at each computed spot and surjectivity of the augmentation.
    pub fn check(&self) -> Result<()> {
        if !self.augmentation.is_surjective() {
            return Err(Error::InexactSequence { spot: 0 });
        }
        for n in 1..=self.length() {
            let upstream = if n == 1 {
                &self.augmentation
            } else {
                self.d(n - 1)
            };
            let d = self.d(n);
            if !upstream.compose(d).is_zero() {
                return Err(Error::InexactSequence { spot: n - 1 });
            }
            let ker = upstream.kernel_space();
            if ker.dim() != d.image_space().dim() {
                return Err(Error::InexactSequence { spot: n - 1 });
            }
        }
        Ok(())
    }
}

/// Lifts `values: F -> Z` through `target: Y -> Z` on a free module `F`,
/// choosing the pivot solution for each generator.
pub fn lift_free(
    values: &ModuleMap,
    target: &ModuleMap,
    solver: &LinearSolver,
) -> Option<ModuleMap> {
    let free = &values.source;
    let r = free.free_rank().expect("lifting needs a free source");
    let mut images = Vec::with_capacity(r);
    for h in 0..r {
        let v = values.apply(&free.free_generator(h));
        images.push(solver.solve(&v)?);
    }
    Some(free.free_hom(&target.source, &images))
}

/// Comparison maps `g_n : P_n -> Q_n` over `phi : M -> M'`, for `n <= upto`.
pub fn lift_chain_map(
    p: &FreeResolution,
    q: &FreeResolution,
    phi: &ModuleMap,
    upto: usize,
) -> Result<Vec<ModuleMap>> {
    p.require(upto)?;
    q.require(upto)?;
    let mut maps: Vec<ModuleMap> = Vec::with_capacity(upto + 1);
    let solver = LinearSolver::new(&q.augmentation.matrix);
    let g0 = lift_free(&phi.compose(&p.augmentation), &q.augmentation, &solver)
        .ok_or(Error::InexactSequence { spot: 0 })?;
    maps.push(g0);
    for n in 1..=upto {
        let solver = LinearSolver::new(&q.d(n).matrix);
        let values = maps[n - 1].compose(p.d(n));
        let g = lift_free(&values, q.d(n), &solver).ok_or(Error::InexactSequence { spot: n })?;
        maps.push(g);
    }
    Ok(maps)
}

/// Lifts a cocycle `c : P_q -> W` to maps `G_i : P_{q+i} -> Q_i` with
/// `eps_Q G_0 = c` and `d_Q G_i = G_{i-1} d_P`.
pub fn lift_cocycle(
    p: &FreeResolution,
    q_degree: usize,
    c: &ModuleMap,
    q: &FreeResolution,
    upto: usize,
) -> Result<Vec<ModuleMap>> {
    p.require(q_degree + upto)?;
    q.require(upto)?;
    let mut maps: Vec<ModuleMap> = Vec::with_capacity(upto + 1);
    let solver = LinearSolver::new(&q.augmentation.matrix);
    maps.push(lift_free(c, &q.augmentation, &solver).ok_or(Error::NotACocycle)?);
    for i in 1..=upto {
        let solver = LinearSolver::new(&q.d(i).matrix);
        let values = maps[i - 1].compose(p.d(q_degree + i));
        maps.push(lift_free(&values, q.d(i), &solver).ok_or(Error::NotACocycle)?);
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAlgebra;
    use crate::field::FieldSpec;

    fn alg(src: &str) -> Arc<crate::algebra::FinAlgebra> {
        Arc::new(FinAlgebra::parse(src, FieldSpec::prime(101).unwrap()).unwrap())
    }

    #[test]
    fn periodic_resolution_of_residue_field() {
        for m in [2, 3] {
            let b = alg(&format!("k[x]/(x^{m})"));
            let k = Arc::new(FinModule::residue_field(&b).unwrap());
            let res = resolve(&k, 6, CoverStrategy::Minimal);
            assert_eq!(res.ranks(), vec![1; 7]);
            res.check().unwrap();
            // each d_n is multiplication by x or x^(m-1), alternating
            for n in 1..=6 {
                let power = if n % 2 == 1 { 1 } else { m - 1 };
                let xp = b.element(&format!("x^{power}")).unwrap();
                let d = res.d(n);
                let img = d.image_space();
                let expected = crate::linalg::image_basis(&b.mult_matrix(&xp));
                assert_eq!(img, expected, "degree {n}");
            }
        }
    }

    #[test]
    fn trivial_resolutions() {
        let b = alg("k[x]/(x^2)");
        let free = Arc::new(FinModule::regular(&b));
        let res = resolve(&free, 3, CoverStrategy::Minimal);
        assert_eq!(res.ranks(), vec![1, 0, 0, 0]);
        let cover = free_cover(&free, CoverStrategy::Minimal);
        assert!(cover.epsilon.is_injective());
        let f = FieldSpec::prime(101).unwrap();
        let kf = Arc::new(FinAlgebra::ground(f));
        let k = Arc::new(FinModule::residue_field(&kf).unwrap());
        assert_eq!(
            resolve(&k, 3, CoverStrategy::Minimal).ranks(),
            vec![1, 0, 0, 0]
        );
        let zero = Arc::new(FinModule::zero(&b));
        assert_eq!(free_cover(&zero, CoverStrategy::Minimal).free.dim(), 0);
    }

    #[test]
    fn cover_of_residue_field() {
        let b = alg("k[x]/(x^2)");
        let k = Arc::new(FinModule::residue_field(&b).unwrap());
        let p = presentation(&k, CoverStrategy::Minimal);
        assert_eq!(p.free.dim(), 2);
        assert_eq!(p.kernel.dim(), 1);
    }

    #[test]
    fn identity_lifts() {
        let b = alg("k[x]/(x^2)");
        let k = Arc::new(FinModule::residue_field(&b).unwrap());
        let res = resolve(&k, 6, CoverStrategy::Minimal);
        let maps = lift_chain_map(&res, &res, &ModuleMap::identity(&k), 6).unwrap();
        assert_eq!(maps.len(), 7);
        for n in 1..=6 {
            assert_eq!(
                res.d(n).compose(&maps[n]).matrix,
                maps[n - 1].compose(res.d(n)).matrix
            );
        }
    }
}
