//! Exact n-extensions of modules, their calculus, and the bridge to Ext.

use std::sync::Arc;

use crate::algebra::AlgebraMap;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homology::module::{fiber_product, pushout, same_module};
use crate::homology::resolution::lift_free;
use crate::homology::{ExtClass, ExtSpace, FinModule, ModuleMap};
use crate::linalg::{LinearSolver, Matrix};

/// `0 -> N -> T_{n-1} -> ... -> T_0 -> M -> 0`.
///
/// `modules = [N, T_{n-1}, ..., T_0, M]` and `maps[i] : modules[i] -> modules[i + 1]`.
#[derive(Clone, Debug)]
pub struct NExtension {
    modules: Vec<Arc<FinModule>>,
    maps: Vec<ModuleMap>,
}

/// `(-1)^{n(n+1)/2}`, the sign relating extensions and cocycles.
pub fn bridge_sign(n: usize) -> i64 {
    if (n * (n + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl NExtension {
    /// Checks composability, that consecutive maps compose to zero, and exactness at every spot.
    pub fn new(maps: Vec<ModuleMap>) -> Result<Self> {
        if maps.len() < 2 {
            return Err(Error::InvalidExtension(
                "an n-extension needs n + 1 >= 2 maps".into(),
            ));
        }
        let mut modules = vec![maps[0].source.clone()];
        for (i, m) in maps.iter().enumerate() {
            if !same_module(&m.source, &modules[i]) {
                return Err(Error::InvalidExtension(format!(
                    "map {i} does not start where map {} ends",
                    i.max(1) - 1
                )));
            }
            if !m.is_module_map() {
                return Err(Error::NotAModuleMap(format!("map {i}")));
            }
            modules.push(m.target.clone());
        }
        let ext = NExtension { modules, maps };
        ext.check_exact()?;
        Ok(ext)
    }

    pub(crate) fn unchecked(maps: Vec<ModuleMap>) -> Self {
        let mut modules = vec![maps[0].source.clone()];
        modules.extend(maps.iter().map(|m| m.target.clone()));
        NExtension { modules, maps }
    }

    /// Exactness at each module; spot `i` refers to `modules[i]`.
    pub fn check_exact(&self) -> Result<()> {
        let last = self.modules.len() - 1;
        if !self.maps[0].is_injective() {
            return Err(Error::InexactSequence { spot: 0 });
        }
        for i in 1..last {
            let (before, after) = (&self.maps[i - 1], &self.maps[i]);
            if !after.compose(before).is_zero() || before.image_space() != after.kernel_space() {
                return Err(Error::InexactSequence { spot: i });
            }
        }
        if !self.maps[last - 1].is_surjective() {
            return Err(Error::InexactSequence { spot: last });
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn modules(&self) -> &[Arc<FinModule>] {
        &self.modules
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    /// The left end `N`.
    pub fn left(&self) -> &Arc<FinModule> {
        &self.modules[0]
    }

    /// The right end `M`.
    pub fn right(&self) -> &Arc<FinModule> {
        self.modules.last().expect("nonempty")
    }

    /// `0 -> N -> N (+) M -> M -> 0`.
    pub fn split(n: &Arc<FinModule>, m: &Arc<FinModule>) -> Result<Self> {
        let s = crate::homology::ShortExact::split(n, m)?;
        Ok(NExtension::unchecked(vec![s.i, s.p]))
    }

    /// `0 -> N -> N -> 0 -> ... -> 0 -> M -> M -> 0`, a representative of
    /// the zero class in degree `n >= 2`; `split` in degree one.
    pub fn trivial(n: &Arc<FinModule>, m: &Arc<FinModule>, degree: usize) -> Result<Self> {
        if degree == 1 {
            return NExtension::split(n, m);
        }
        let zero_nm = ModuleMap::zero(n, m);
        if degree == 2 {
            return NExtension::new(vec![
                ModuleMap::identity(n),
                zero_nm,
                ModuleMap::identity(m),
            ]);
        }
        let zero = Arc::new(FinModule::zero(m.algebra()));
        let mut maps = vec![ModuleMap::identity(n), ModuleMap::zero(n, &zero)];
        for _ in 0..degree - 3 {
            maps.push(ModuleMap::identity(&zero));
        }
        maps.push(ModuleMap::zero(&zero, m));
        maps.push(ModuleMap::identity(m));
        NExtension::new(maps)
    }

    /// `alpha_*`: pushout of `N -> T_{n-1}` along `alpha: N -> N'`.
    pub fn pushforward(&self, alpha: &ModuleMap) -> Result<NExtension> {
        if !same_module(&alpha.source, self.left()) {
            return Err(Error::Mismatch(
                "pushforward map must start at the left end".into(),
            ));
        }
        let (w, from_t, from_n) = pushout(&self.maps[0], alpha)?;
        // W -> next is induced by (T_{n-1} -> next, 0)
        let next = &self.maps[1];
        let w_solver = solver_on_pushout(&from_t, &from_n);
        let mut cols = Vec::with_capacity(w.dim());
        for j in 0..w.dim() {
            let e = w.basis_vector(j);
            let (t_part, _) = w_solver(&e);
            cols.push(next.apply(&t_part));
        }
        let out = ModuleMap::unchecked(
            w.clone(),
            next.target.clone(),
            Matrix::from_columns(w.field(), next.target.dim(), &cols),
        );
        let mut maps = vec![from_n, out];
        maps.extend(self.maps[2..].iter().cloned());
        Ok(NExtension::unchecked(maps))
    }

    /// `beta^*`: fiber product of `T_0 -> M` along `beta: M' -> M`.
    pub fn pullback(&self, beta: &ModuleMap) -> Result<NExtension> {
        if !same_module(&beta.target, self.right()) {
            return Err(Error::Mismatch(
                "pullback map must end at the right end".into(),
            ));
        }
        let last = self.maps.len() - 1;
        let (q, to_t, to_m) = fiber_product(&self.maps[last], beta)?;
        // prev -> Q is (prev -> T_0, 0)
        let prev = &self.maps[last - 1];
        let embed = LinearSolver::new(&to_t.matrix.vstack(&to_m.matrix));
        let mut cols = Vec::with_capacity(prev.source.dim());
        for c in prev.matrix.columns() {
            let mut v = c;
            v.extend(std::iter::repeat_n(q.field().zero(), to_m.target.dim()));
            cols.push(
                embed
                    .solve(&v)
                    .ok_or(Error::InexactSequence { spot: last })?,
            );
        }
        let into = ModuleMap::unchecked(
            prev.source.clone(),
            q.clone(),
            Matrix::from_columns(q.field(), q.dim(), &cols),
        );
        let mut maps: Vec<ModuleMap> = self.maps[..last - 1].to_vec();
        maps.push(into);
        maps.push(to_m);
        Ok(NExtension::unchecked(maps))
    }

    /// Termwise direct sum.
    pub fn direct_sum(&self, other: &NExtension) -> Result<NExtension> {
        if self.degree() != other.degree() {
            return Err(Error::Mismatch("direct sum needs equal degrees".into()));
        }
        let mut modules = Vec::with_capacity(self.modules.len());
        for (a, b) in self.modules.iter().zip(&other.modules) {
            modules.push(FinModule::direct_sum(a, b)?);
        }
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .enumerate()
            .map(|(i, (f, g))| {
                let m = Matrix::block_diag(f.matrix.field(), &[&f.matrix, &g.matrix]);
                ModuleMap::unchecked(modules[i].clone(), modules[i + 1].clone(), m)
            })
            .collect();
        Ok(NExtension::unchecked(maps))
    }

    /// Baer sum `(+)_* Delta^* (xi (+) xi')`.
    pub fn baer_sum(&self, other: &NExtension) -> Result<NExtension> {
        if !same_module(self.left(), other.left()) || !same_module(self.right(), other.right()) {
            return Err(Error::Mismatch("Baer sum needs equal end modules".into()));
        }
        let sum = self.direct_sum(other)?;
        let (m, n) = (self.right(), self.left());
        let f = m.field();
        let id_m = Matrix::identity(f, m.dim());
        let diag = ModuleMap::unchecked(m.clone(), sum.right().clone(), id_m.vstack(&id_m));
        let id_n = Matrix::identity(f, n.dim());
        let plus = ModuleMap::unchecked(sum.left().clone(), n.clone(), id_n.hstack(&id_n));
        sum.pullback(&diag)?.pushforward(&plus)
    }

    /// `c xi = (c .)_* xi`.
    pub fn scalar_mult(&self, c: &Scalar) -> Result<NExtension> {
        let n = self.left();
        let scale = ModuleMap::unchecked(
            n.clone(),
            n.clone(),
            Matrix::identity(n.field(), n.dim()).scale(c),
        );
        self.pushforward(&scale)
    }

    /// The same sequence viewed over `R` through `f: R -> B`.
    pub fn restrict_scalars(&self, f: &AlgebraMap) -> Result<NExtension> {
        let modules: Vec<Arc<FinModule>> = self
            .modules
            .iter()
            .map(|m| m.restrict_scalars(f))
            .collect::<Result<_>>()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                ModuleMap::unchecked(modules[i].clone(), modules[i + 1].clone(), m.matrix.clone())
            })
            .collect();
        Ok(NExtension::unchecked(maps))
    }

    /// Replaces both end modules by structurally equal ones (for example the
    /// exact `Arc`s an [`ExtSpace`] was built on).
    pub fn with_ends(&self, left: &Arc<FinModule>, right: &Arc<FinModule>) -> Result<NExtension> {
        if !same_module(left, self.left()) || !same_module(right, self.right()) {
            return Err(Error::Mismatch("end modules differ".into()));
        }
        let mut maps = self.maps.clone();
        let last = maps.len() - 1;
        maps[0] = maps[0].relabel(left, &maps[0].target.clone());
        maps[last] = maps[last].relabel(&maps[last].source.clone(), right);
        Ok(NExtension::unchecked(maps))
    }
}

// Splits an element of a pushout back into (T part, N' part) using the
// combined section of both structure maps.
fn solver_on_pushout(
    from_t: &ModuleMap,
    from_n: &ModuleMap,
) -> impl Fn(&[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let both = from_t.matrix.hstack(&from_n.matrix);
    let solver = LinearSolver::new(&both);
    let dt = from_t.source.dim();
    move |v: &[Scalar]| {
        let x = solver
            .solve(v)
            .expect("pushout is spanned by its two pieces");
        (x[..dt].to_vec(), x[dt..].to_vec())
    }
}

/// Splice `xi1 . xi2` of an n-extension of `W` by `N` and an m-extension of
/// `M` by `W`, through `T_0 -> W -> S_{m-1}`.
pub fn yoneda(xi1: &NExtension, xi2: &NExtension) -> Result<NExtension> {
    if !same_module(xi1.right(), xi2.left()) {
        return Err(Error::Mismatch(
            "right end of the first factor must equal the left end of the second".into(),
        ));
    }
    let n = xi1.degree();
    let eps = &xi1.maps[n];
    let iota = &xi2.maps[0];
    let join = ModuleMap::unchecked(
        eps.source.clone(),
        iota.target.clone(),
        iota.matrix.mul(&eps.matrix),
    );
    let mut maps: Vec<ModuleMap> = xi1.maps[..n].to_vec();
    maps.push(join);
    maps.extend(xi2.maps[1..].iter().cloned());
    Ok(NExtension::unchecked(maps))
}

/// The class of an extension in `space = Ext^n(M, N)`: lift `id_M` through
/// the extension and multiply the last map by `(-1)^{n(n+1)/2}`.
pub fn to_cocycle(xi: &NExtension, space: &Arc<ExtSpace>) -> Result<ExtClass> {
    let n = xi.degree();
    if space.n != n {
        return Err(Error::Mismatch(format!(
            "extension of degree {n} against Ext^{}",
            space.n
        )));
    }
    if !same_module(xi.right(), space.source()) || !same_module(xi.left(), &space.target) {
        return Err(Error::Mismatch(
            "extension ends differ from the Ext space modules".into(),
        ));
    }
    let res = &space.resolution;
    let mut f = lift_free(
        &res.augmentation,
        &xi.maps[n],
        &LinearSolver::new(&xi.maps[n].matrix),
    )
    .ok_or(Error::InexactSequence { spot: n })?;
    for i in 1..=n {
        let target = &xi.maps[n - i];
        let values = f.compose(res.d(i));
        f = lift_free(&values, target, &LinearSolver::new(&target.matrix))
            .ok_or(Error::InexactSequence { spot: n - i })?;
    }
    let f = f.relabel(res.term(n), &space.target);
    let mut cochain = space.cochain_of_map(&f);
    if bridge_sign(n) < 0 {
        cochain = crate::linalg::scale_vector(&-space.target.field().one(), &cochain);
    }
    space.class_of(&cochain)
}

/// A representative `(s fbar)_* (0 -> K_{n-1} -> P_{n-1} -> ... -> P_0 -> M -> 0)`
/// of a class, with `s = (-1)^{n(n+1)/2}` and free middle terms except the pushout.
pub fn from_cocycle(class: &ExtClass) -> Result<NExtension> {
    let space = &class.space;
    let n = space.n;
    if n == 0 {
        return Err(Error::InvalidExtension(
            "degree zero classes are maps, not extensions".into(),
        ));
    }
    let res = &space.resolution;
    let field = space.target.field();
    let upstream = if n == 1 {
        res.augmentation.clone()
    } else {
        res.d(n - 1).clone()
    };
    let (k, incl) = upstream.kernel();
    // d_n factored through K_{n-1}
    let incl_solver = LinearSolver::new(&incl.matrix);
    let dn = res.d(n);
    let cols: Vec<Vec<Scalar>> = dn
        .matrix
        .columns()
        .iter()
        .map(|c| {
            incl_solver
                .solve(c)
                .expect("image of d_n lies in the kernel")
        })
        .collect();
    let onto_k = Matrix::from_columns(field, k.dim(), &cols);
    let onto_solver = LinearSolver::new(&onto_k);
    let c = space.cochain_map(&class.cocycle());
    let sign = field.from_i64(bridge_sign(n));
    let mut fbar_cols = Vec::with_capacity(k.dim());
    for j in 0..k.dim() {
        let pre = onto_solver
            .solve(&k.basis_vector(j))
            .expect("d_n maps onto K_{n-1}");
        fbar_cols.push(crate::linalg::scale_vector(&sign, &c.apply(&pre)));
    }
    let fbar = ModuleMap::unchecked(
        k.clone(),
        space.target.clone(),
        Matrix::from_columns(field, space.target.dim(), &fbar_cols),
    );
    let mut maps = vec![incl];
    for i in (1..n).rev() {
        maps.push(res.d(i).clone());
    }
    maps.push(res.augmentation.clone());
    let base = NExtension::unchecked(maps);
    base.pushforward(&fbar)?
        .with_ends(&space.target, space.source())
}

/// Equality of classes in `space`.
pub fn equivalent(a: &NExtension, b: &NExtension, space: &Arc<ExtSpace>) -> Result<bool> {
    Ok(to_cocycle(a, space)?.coords == to_cocycle(b, space)?.coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAlgebra;
    use crate::field::FieldSpec;
    use crate::homology::{resolve, CoverStrategy};

    fn setup(
        src: &str,
        p: u32,
        len: usize,
    ) -> (
        Arc<FinAlgebra>,
        Arc<FinModule>,
        Arc<crate::homology::FreeResolution>,
    ) {
        let b = Arc::new(FinAlgebra::parse(src, FieldSpec::prime(p).unwrap()).unwrap());
        let k = Arc::new(FinModule::residue_field(&b).unwrap());
        let res = Arc::new(resolve(&k, len, CoverStrategy::Minimal));
        (b, k, res)
    }

    #[test]
    fn bridge_round_trips() {
        let (_b, k, res) = setup("k[x]/(x^3)", 101, 5);
        for n in 1..=3 {
            let e = ExtSpace::new(&res, &k, n).unwrap();
            for i in 0..e.dim() {
                let c = e.basis_class(i);
                let xi = from_cocycle(&c).unwrap();
                xi.check_exact().unwrap();
                assert_eq!(xi.degree(), n);
                assert_eq!(to_cocycle(&xi, &e).unwrap().coords, c.coords, "n = {n}");
            }
        }
    }

    #[test]
    fn split_and_trivial_are_zero() {
        let (_b, k, res) = setup("k[x]/(x^2)", 101, 4);
        let e1 = ExtSpace::new(&res, &k, 1).unwrap();
        assert!(to_cocycle(&NExtension::split(&k, &k).unwrap(), &e1)
            .unwrap()
            .is_zero());
        for n in 2..=3 {
            let e = ExtSpace::new(&res, &k, n).unwrap();
            assert!(to_cocycle(&NExtension::trivial(&k, &k, n).unwrap(), &e)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn baer_sum_in_characteristic_two() {
        let (_b, k, res) = setup("k[x]/(x^2)", 2, 3);
        let e1 = ExtSpace::new(&res, &k, 1).unwrap();
        let xi = from_cocycle(&e1.basis_class(0)).unwrap();
        let twice = xi.baer_sum(&xi).unwrap();
        twice.check_exact().unwrap();
        assert!(to_cocycle(&twice, &e1).unwrap().is_zero());
        assert!(!to_cocycle(&xi, &e1).unwrap().is_zero());
    }

    #[test]
    fn yoneda_square_is_nonzero() {
        let (_b, k, res) = setup("k[x]/(x^2)", 101, 4);
        let e1 = ExtSpace::new(&res, &k, 1).unwrap();
        let e2 = ExtSpace::new(&res, &k, 2).unwrap();
        let xi = from_cocycle(&e1.basis_class(0)).unwrap();
        let sq = yoneda(&xi, &xi).unwrap();
        sq.check_exact().unwrap();
        let class = to_cocycle(&sq, &e2).unwrap();
        assert!(!class.is_zero());
        let product =
            crate::homology::ext_product(&e1.basis_class(0), &e1.basis_class(0), &e2).unwrap();
        assert_eq!(class.coords, product.coords);
    }

    #[test]
    fn inexact_sequences_are_rejected() {
        let (b, _k, _res) = setup("k[x]/(x^2)", 101, 1);
        let reg = Arc::new(FinModule::regular(&b));
        let x = b.element("x").unwrap();
        let mx = ModuleMap::new(reg.clone(), reg.clone(), b.mult_matrix(&x)).unwrap();
        let err = NExtension::new(vec![
            ModuleMap::identity(&reg),
            mx.clone(),
            ModuleMap::identity(&reg),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InexactSequence { .. }));
    }
}
