//! Buchberger's algorithm with the product and chain criteria, reduced bases,
//! normal forms and standard monomials for zero-dimensional ideals.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::field::FieldSpec;

use super::poly::{divides, grevlex, lcm, mono_div, Monomial, Poly, PolyPresentation};

/// Remainder of `f` on division by `basis` (full reduction of every term).
pub fn reduce(f: &Poly, basis: &[Poly]) -> Poly {
    let field = f.field();
    let nvars = f.nvars();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, crate::field::Scalar)> = Vec::new();
    while let Some(lm) = p.leading_monomial().cloned() {
        let lc = p.leading_coefficient().expect("nonzero").clone();
        match basis
            .iter()
            .find(|g| divides(g.leading_monomial().expect("nonzero basis"), &lm))
        {
            Some(g) => {
                let q = mono_div(&lm, g.leading_monomial().expect("nonzero"));
                let c = &lc * &g.leading_coefficient().expect("nonzero").inv();
                p = p.sub(&g.mul_term(&c, &q));
            }
            None => {
                rem.push((lm.clone(), lc.clone()));
                p = p.sub(&Poly::term(field, lc, lm));
            }
        }
    }
    Poly::from_terms(field, nvars, rem)
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let lf = f.leading_monomial().expect("nonzero");
    let lg = g.leading_monomial().expect("nonzero");
    let l = lcm(lf, lg);
    let a = f.mul_term(
        &f.leading_coefficient().expect("nonzero").inv(),
        &mono_div(&l, lf),
    );
    let b = g.mul_term(
        &g.leading_coefficient().expect("nonzero").inv(),
        &mono_div(&l, lg),
    );
    a.sub(&b)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced Gröbner basis (monic, sorted by increasing leading monomial).
pub fn groebner_basis(generators: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(Poly::monic)
        .collect();
    if g.is_empty() {
        return g;
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pick_pair(&pairs, &g) {
        pairs.remove(&(i, j));
        let li = g[i].leading_monomial().expect("nonzero").clone();
        let lj = g[j].leading_monomial().expect("nonzero").clone();
        if coprime(&li, &lj) {
            continue;
        }
        let l = lcm(&li, &lj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].leading_monomial().expect("nonzero"), &l)
                && !pairs.contains(&ordered(i, k))
                && !pairs.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let n = g.len();
        g.push(r);
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    interreduce(g)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

// normal selection: pair with the smallest lcm
fn pick_pair<'a>(pairs: &'a BTreeSet<(usize, usize)>, g: &[Poly]) -> Option<&'a (usize, usize)> {
    pairs.iter().min_by(|a, b| {
        let la = lcm(
            g[a.0].leading_monomial().unwrap(),
            g[a.1].leading_monomial().unwrap(),
        );
        let lb = lcm(
            g[b.0].leading_monomial().unwrap(),
            g[b.1].leading_monomial().unwrap(),
        );
        grevlex(&la, &lb).then(a.cmp(b))
    })
}

fn interreduce(g: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lp = p.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.leading_monomial().unwrap();
            j != i && divides(lq, lp) && (lq != lp || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let lead = Poly::term(
            minimal[i].field(),
            minimal[i].leading_coefficient().unwrap().clone(),
            minimal[i].leading_monomial().unwrap().clone(),
        );
        let tail = minimal[i].sub(&lead);
        reduced.push(lead.add(&reduce(&tail, &others)).monic());
    }
    reduced.sort_by(|a, b| grevlex(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}

/// A zero-dimensional quotient `k[vars]/I` with its reduced Gröbner basis and
/// standard monomials (sorted by increasing grevlex, so `1` comes first).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub presentation: PolyPresentation,
    pub basis: Vec<Poly>,
    pub standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Quotient {
    pub fn field(&self) -> FieldSpec {
        self.presentation.field
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        reduce(f, &self.basis)
    }

    /// Coordinates of the normal form over the standard monomials.
    pub fn coordinates(&self, f: &Poly) -> Vec<crate::field::Scalar> {
        let nf = self.normal_form(f);
        let mut v = vec![self.field().zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Parses and reduces; errors name undeclared variables.
    pub fn coordinates_of_str(&self, src: &str) -> Result<Vec<crate::field::Scalar>> {
        Ok(self.coordinates(&self.presentation.parse_poly(src)?))
    }

    pub fn monomial_poly(&self, i: usize) -> Poly {
        Poly::term(self.field(), self.field().one(), self.standard[i].clone())
    }

    pub fn labels(&self) -> Vec<String> {
        self.standard
            .iter()
            .map(|m| super::poly::render_monomial(m, &self.presentation.vars))
            .collect()
    }
}

/// Gröbner basis and standard monomials of a presentation.
pub fn buchberger_quotient(p: &PolyPresentation) -> Result<Quotient> {
    let basis = groebner_basis(&p.relations);
    let n = p.nvars();
    if basis
        .iter()
        .any(|g| g.leading_monomial().unwrap().iter().all(|&e| e == 0))
    {
        return Err(Error::TrivialRing);
    }
    let mut bounds = vec![0u32; n];
    for (v, bound) in bounds.iter_mut().enumerate() {
        let pure = basis
            .iter()
            .filter_map(|g| {
                let lm = g.leading_monomial().unwrap();
                let only_v = lm.iter().enumerate().all(|(i, &e)| i == v || e == 0);
                (only_v && lm[v] > 0).then_some(lm[v])
            })
            .min();
        match pure {
            Some(e) => *bound = e,
            None => return Err(Error::NotFiniteDimensional(p.vars[v].clone())),
        }
    }
    let leads: Vec<&Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial().unwrap())
        .collect();
    let mut standard = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if !leads.iter().any(|l| divides(l, &cur)) {
            standard.push(cur.clone());
        }
        // odometer over the box
        let mut k = 0;
        loop {
            if k == n {
                standard.sort_by(|a, b| grevlex(a, b));
                let index = standard
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i))
                    .collect();
                return Ok(Quotient {
                    presentation: p.clone(),
                    basis,
                    standard,
                    index,
                });
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_ideals() {
        let f = FieldSpec::prime(101).unwrap();
        let p = PolyPresentation::new(f, &["x"], &["x^2"]).unwrap();
        let q = buchberger_quotient(&p).unwrap();
        assert_eq!(q.labels(), vec!["1", "x"]);
        let p = PolyPresentation::new(f, &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let q = buchberger_quotient(&p).unwrap();
        assert_eq!(q.labels(), vec!["1", "y", "x"]);
    }

    #[test]
    fn substitution_oracle() {
        // y = x^2 makes the quotient Q[x]/(x^4)
        let p =
            PolyPresentation::new(FieldSpec::Rationals, &["x", "y"], &["x^2 - y", "y^2"]).unwrap();
        let q = buchberger_quotient(&p).unwrap();
        assert_eq!(q.dim(), 4);
        let mut labels = q.labels();
        labels.sort();
        assert_eq!(labels, vec!["1", "x", "x*y", "y"]);
        let x3 = q.coordinates_of_str("x^3").unwrap();
        let xy = q.coordinates_of_str("x*y").unwrap();
        assert_eq!(x3, xy);
    }

    #[test]
    fn reduced_basis_shape() {
        let p = PolyPresentation::new(
            FieldSpec::Rationals,
            &["x", "y"],
            &["x^2 - y", "y^2", "x^3 + y"],
        )
        .unwrap();
        let gb = groebner_basis(&p.relations);
        for (i, g) in gb.iter().enumerate() {
            assert!(g.leading_coefficient().unwrap().is_one());
            for (j, h) in gb.iter().enumerate() {
                if i != j {
                    for (m, _) in h.terms() {
                        assert!(!divides(g.leading_monomial().unwrap(), m));
                    }
                }
            }
        }
    }

    #[test]
    fn errors() {
        let q = FieldSpec::Rationals;
        let p = PolyPresentation::new(q, &["x", "y"], &["x^2"]).unwrap();
        assert_eq!(
            buchberger_quotient(&p).unwrap_err(),
            Error::NotFiniteDimensional("y".into())
        );
        let p = PolyPresentation::new(q, &["x"], &["x^2", "x - 1"]).unwrap();
        assert_eq!(buchberger_quotient(&p).unwrap_err(), Error::TrivialRing);
    }
}
