//! Derivations on polynomial rings.
//!
//! A [`Derivation`] is determined by the images of the generators and
//! extends to the whole ring by linearity and the Leibniz rule. Graded
//! kernels and preimages are realized through [`crate::linalg`]; local
//! nilpotency is never assumed, it is certified per element against a
//! caller-supplied iteration bound.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{coords, ExactMatrix, VectorSpaceBasis};
use crate::poly::{monomial_basis, Bigrade, Bigrading, Monomial, Polynomial, VarSet};
use crate::rat::{factorial, Rat};

/// Default iteration bound used by callers that certify nilpotency.
pub const DEFAULT_NILPOTENCY_BOUND: usize = 512;

/// A derivation of a polynomial ring, given by generator images.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    vars: VarSet,
    images: Vec<Polynomial>,
}

/// Result of a bounded nilpotency certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// Least `n` with `D^n p = 0`.
    Order(usize),
    /// Not reached within the bound.
    ExceedsBound,
}

impl Derivation {
    /// Builds a derivation from `(variable, image)` pairs; unnamed
    /// variables get the zero image.
    pub fn new(vars: &VarSet, images: &[(&str, Polynomial)]) -> Result<Self> {
        let mut v = vec![Polynomial::zero(vars); vars.len()];
        for (name, img) in images {
            if img.vars() != vars {
                return Err(Error::VarSetMismatch);
            }
            v[vars.index_of(name)?] = img.clone();
        }
        Ok(Derivation {
            vars: vars.clone(),
            images: v,
        })
    }

    /// The partial derivative with respect to `var`.
    pub fn partial(vars: &VarSet, var: &str) -> Result<Self> {
        Derivation::new(vars, &[(var, Polynomial::one(vars))])
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn image(&self, var: &str) -> Result<&Polynomial> {
        Ok(&self.images[self.vars.index_of(var)?])
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Applies the derivation by linearity and the Leibniz rule.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.vars() != &self.vars {
            return Err(Error::VarSetMismatch);
        }
        let mut out = Polynomial::zero(&self.vars);
        for i in 0..self.vars.len() {
            if self.images[i].is_zero() {
                continue;
            }
            let dp = p.partial_derivative(self.vars.name(i))?;
            if !dp.is_zero() {
                out = out.add(&dp.mul(&self.images[i])?)?;
            }
        }
        Ok(out)
    }

    /// Least `n` with `D^n p = 0`, or `ExceedsBound`.
    pub fn nilpotency_order(&self, p: &Polynomial, bound: usize) -> Result<Nilpotency> {
        let mut q = p.clone();
        for n in 0..=bound {
            if q.is_zero() {
                return Ok(Nilpotency::Order(n));
            }
            q = self.apply(&q)?;
        }
        Ok(Nilpotency::ExceedsBound)
    }

    /// True iff `DE - ED` vanishes on every generator (hence everywhere,
    /// the commutator of derivations being a derivation).
    pub fn commutes(&self, other: &Derivation) -> Result<bool> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch);
        }
        for i in 0..self.vars.len() {
            let de = self.apply(&other.images[i])?;
            let ed = other.apply(&self.images[i])?;
            if de != ed {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Degree shift of a homogeneous derivation: every non-zero generator
    /// image is homogeneous and all shifts agree. The zero derivation
    /// reports shift (0,0).
    pub fn degree_shift(&self, g: &Bigrading) -> Result<Bigrade> {
        let mut shift: Option<Bigrade> = None;
        for i in 0..self.vars.len() {
            let img = &self.images[i];
            if img.is_zero() {
                continue;
            }
            let Some(d) = img.bigrade(g) else {
                return Err(Error::InhomogeneousDerivation);
            };
            let var_grade = g.weight(i);
            let this = d - var_grade;
            match shift {
                None => shift = Some(this),
                Some(s) if s != this => return Err(Error::InhomogeneousDerivation),
                _ => {}
            }
        }
        Ok(shift.unwrap_or(Bigrade::new(0, 0)))
    }

    /// Matrix of the derivation from the graded piece at `d` to the piece
    /// at `d + deg D`, over the ascending monomial bases. Returns
    /// `(columns, rows, matrix)`.
    pub fn graded_matrix(
        &self,
        g: &Bigrading,
        d: Bigrade,
        restrict: Option<&[String]>,
    ) -> Result<(Vec<Monomial>, Vec<Monomial>, ExactMatrix)> {
        let shift = self.degree_shift(g)?;
        let source = monomial_basis(&self.vars, g, d, restrict)?;
        let target = monomial_basis(&self.vars, g, d + shift, restrict)?;
        let mut m = ExactMatrix::zeros(target.len(), source.len());
        for (j, mono) in source.iter().enumerate() {
            let p = Polynomial::monomial(&self.vars, mono.clone(), num_traits::One::one())?;
            let dp = self.apply(&p)?;
            let col = coords(&dp, &target)?;
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        Ok((source, target, m))
    }

    /// Reduced basis of `ker D` intersected with the graded piece at `d`,
    /// optionally restricted to a variable subset.
    pub fn kernel_graded(
        &self,
        g: &Bigrading,
        d: Bigrade,
        restrict: Option<&[String]>,
    ) -> Result<VectorSpaceBasis> {
        let (source, _, m) = self.graded_matrix(g, d, restrict)?;
        let kernel = m.kernel_basis();
        VectorSpaceBasis::from_span(&self.vars, g, d, source, kernel)
    }

    /// Canonical `p` in the piece at `d` with `D p = target`, or `None`.
    /// `target` must be homogeneous of bigrade `d + deg D`.
    pub fn preimage_graded(
        &self,
        target: &Polynomial,
        g: &Bigrading,
        d: Bigrade,
    ) -> Result<Option<Polynomial>> {
        let shift = self.degree_shift(g)?;
        if !target.is_homogeneous_of(g, d + shift) {
            return Err(Error::Inhomogeneous(format!(
                "preimage target must be homogeneous of grade {}",
                d + shift
            )));
        }
        let (source, rows, m) = self.graded_matrix(g, d, None)?;
        let b = coords(target, &rows)?;
        let Some(x) = m.solve_particular(&b)? else {
            return Ok(None);
        };
        let terms = source
            .into_iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .collect::<Vec<_>>();
        Ok(Some(Polynomial::from_terms(&self.vars, terms)?))
    }

    /// The Dixmier map `pi_s(f) = sum_i (-1)^i/i! D^i f (s/Ds)^i` for a
    /// local slice `s` (that is, `D^2 s = 0`, `D s != 0`).
    pub fn dixmier(
        &self,
        slice: &Polynomial,
        f: &Polynomial,
        bound: usize,
    ) -> Result<LocalizedElement> {
        let ds = self.apply(slice)?;
        if ds.is_zero() || !self.apply(&ds)?.is_zero() {
            return Err(Error::NotLocalSlice);
        }
        // Collect D^i f up to nilpotency.
        let mut iterates = vec![f.clone()];
        loop {
            let last = iterates.last().unwrap();
            if last.is_zero() {
                iterates.pop();
                break;
            }
            if iterates.len() > bound {
                return Err(Error::NilpotencyBoundExceeded);
            }
            let next = self.apply(last)?;
            iterates.push(next);
        }
        if iterates.is_empty() {
            return Ok(LocalizedElement::polynomial(Polynomial::zero(&self.vars)));
        }
        let top = iterates.len() - 1;
        // numerator = sum_i (-1)^i/i! D^i f * s^i * (Ds)^(top-i)
        let mut numerator = Polynomial::zero(&self.vars);
        for (i, di_f) in iterates.iter().enumerate() {
            let mut term = di_f.scale(&(Rat::from_integer(1.into()) / factorial(i)));
            if i % 2 == 1 {
                term = term.neg();
            }
            term = term.mul(&slice.pow(i as u32))?;
            term = term.mul(&ds.pow((top - i) as u32))?;
            numerator = numerator.add(&term)?;
        }
        LocalizedElement::new(numerator, ds, top as u32)
    }

    /// `exp(f D)(p) = sum_i f^i/i! D^i p` for `f` in the kernel of `D`.
    pub fn exp_map(&self, f: &Polynomial, p: &Polynomial, bound: usize) -> Result<Polynomial> {
        if !self.apply(f)?.is_zero() {
            return Err(Error::InvalidArgument(
                "exp_map coefficient must lie in the kernel".into(),
            ));
        }
        let mut out = Polynomial::zero(&self.vars);
        let mut iterate = p.clone();
        let mut f_pow = Polynomial::one(&self.vars);
        let mut i = 0usize;
        loop {
            if iterate.is_zero() {
                return Ok(out);
            }
            if i > bound {
                return Err(Error::NilpotencyBoundExceeded);
            }
            let coeff = Rat::from_integer(1.into()) / factorial(i);
            out = out.add(&iterate.scale(&coeff).mul(&f_pow)?)?;
            iterate = self.apply(&iterate)?;
            f_pow = f_pow.mul(f)?;
            i += 1;
        }
    }

    /// Wronskian determinant `det(D^i f_j)`, `0 <= i < n`, by cofactor
    /// expansion.
    pub fn wronskian(&self, fs: &[Polynomial]) -> Result<Polynomial> {
        if fs.is_empty() {
            return Err(Error::InvalidArgument("empty Wronskian".into()));
        }
        let n = fs.len();
        let mut rows: Vec<Vec<Polynomial>> = vec![fs.to_vec()];
        for i in 1..n {
            let prev = &rows[i - 1];
            let next = prev
                .iter()
                .map(|p| self.apply(p))
                .collect::<Result<Vec<_>>>()?;
            rows.push(next);
        }
        poly_det(&rows, &(0..n).collect::<Vec<_>>(), 0)
    }
}

fn poly_det(rows: &[Vec<Polynomial>], cols: &[usize], row: usize) -> Result<Polynomial> {
    let vars = rows[0][0].vars().clone();
    if cols.is_empty() {
        return Ok(Polynomial::one(&vars));
    }
    let mut acc = Polynomial::zero(&vars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = poly_det(rows, &rest, row + 1)?;
        let signed = entry.mul(&minor)?;
        if k % 2 == 0 {
            acc = acc.add(&signed)?;
        } else {
            acc = acc.sub(&signed)?;
        }
    }
    Ok(acc)
}

/// An element of the localization at a single denominator base:
/// `numerator / base^power`, kept reduced (the numerator is not exactly
/// divisible by the base while the power is positive).
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    numerator: Polynomial,
    base: Polynomial,
    power: u32,
}

impl LocalizedElement {
    pub fn new(numerator: Polynomial, base: Polynomial, power: u32) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::InvalidArgument("zero denominator base".into()));
        }
        let mut out = LocalizedElement {
            numerator,
            base,
            power,
        };
        out.reduce();
        Ok(out)
    }

    pub fn polynomial(p: Polynomial) -> Self {
        let one = Polynomial::one(p.vars());
        LocalizedElement {
            numerator: p,
            base: one,
            power: 0,
        }
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.power = 0;
            return;
        }
        while self.power > 0 {
            match self.numerator.divide_exact(&self.base) {
                Ok(q) => {
                    self.numerator = q;
                    self.power -= 1;
                }
                Err(_) => break,
            }
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// The underlying polynomial when no denominator remains.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        (self.power == 0).then_some(&self.numerator)
    }

    fn check_base(&self, other: &LocalizedElement) -> Result<()> {
        if self.base == other.base || self.power == 0 || other.power == 0 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "localized elements have different denominator bases".into(),
            ))
        }
    }

    fn common_base(&self, other: &LocalizedElement) -> Polynomial {
        if self.power > 0 {
            self.base.clone()
        } else {
            other.base.clone()
        }
    }

    pub fn mul(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check_base(other)?;
        LocalizedElement::new(
            self.numerator.mul(&other.numerator)?,
            self.common_base(other),
            self.power + other.power,
        )
    }

    pub fn sub(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check_base(other)?;
        let base = self.common_base(other);
        let p = self.power.max(other.power);
        let lhs = self.numerator.mul(&base.pow(p - self.power))?;
        let rhs = other.numerator.mul(&base.pow(p - other.power))?;
        LocalizedElement::new(lhs.sub(&rhs)?, base, p)
    }

    /// Applies a derivation that annihilates the base.
    pub fn derive(&self, e: &Derivation) -> Result<LocalizedElement> {
        if !e.apply(&self.base)?.is_zero() {
            return Err(Error::InvalidArgument(
                "derivation does not fix the denominator base".into(),
            ));
        }
        LocalizedElement::new(e.apply(&self.numerator)?, self.base.clone(), self.power)
    }

    pub fn eq_element(&self, other: &LocalizedElement) -> Result<bool> {
        self.check_base(other)?;
        let base = self.common_base(other);
        let lhs = self.numerator.mul(&base.pow(other.power))?;
        let rhs = other.numerator.mul(&base.pow(self.power))?;
        Ok(lhs == rhs)
    }
}

/// Checks `D(pq) = D(p)q + pD(q)`.
pub fn leibniz_check(d: &Derivation, p: &Polynomial, q: &Polynomial) -> Result<bool> {
    let lhs = d.apply(&p.mul(q)?)?;
    let rhs = d.apply(p)?.mul(q)?.add(&p.mul(&d.apply(q)?)?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_text;

    fn dim5_vars() -> VarSet {
        VarSet::new(["a", "x", "y", "z", "v"]).unwrap()
    }

    fn dim5_grading(vars: &VarSet) -> Bigrading {
        Bigrading::new(
            vars,
            &[
                ("a", (1, 0)),
                ("x", (3, 1)),
                ("y", (3, 2)),
                ("z", (3, 3)),
                ("v", (2, 1)),
            ],
        )
        .unwrap()
    }

    fn dim5_derivation(vars: &VarSet) -> Derivation {
        let p = |s: &str| parse_text(vars, s).unwrap();
        Derivation::new(
            vars,
            &[
                ("z", p("y")),
                ("y", p("x")),
                ("x", p("a^3")),
                ("v", p("a^2")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        assert_eq!(d.apply(&p("z")).unwrap(), p("y"));
        assert_eq!(d.apply(&p("v")).unwrap(), p("a^2"));
        let h = p("9*a^6*z^2 - 18*a^3*x*y*z + 8*a^3*y^3 + 6*x^3*z - 3*x^2*y^2");
        assert!(d.apply(&h).unwrap().is_zero());
    }

    #[test]
    fn nilpotency_examples() {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        assert_eq!(
            d.nilpotency_order(&p("z"), 10).unwrap(),
            Nilpotency::Order(4)
        );
        assert_eq!(
            d.nilpotency_order(&p("a"), 10).unwrap(),
            Nilpotency::Order(1)
        );
        // D(v^2) = 2a^2 v, D^2(v^2) = 2a^4, D^3(v^2) = 0.
        assert_eq!(
            d.nilpotency_order(&p("v^2"), 10).unwrap(),
            Nilpotency::Order(3)
        );
        assert_eq!(
            d.nilpotency_order(&p("z"), 2).unwrap(),
            Nilpotency::ExceedsBound
        );
    }

    #[test]
    fn commutes_examples() {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let dv = Derivation::partial(&vars, "v").unwrap();
        let dx = Derivation::partial(&vars, "x").unwrap();
        let dy = Derivation::partial(&vars, "y").unwrap();
        assert!(d.commutes(&dv).unwrap());
        assert!(dx.commutes(&dy).unwrap());
        // D does not commute with d/dx: the commutator sends y to 1.
        assert!(!d.commutes(&dx).unwrap());
    }

    #[test]
    fn degree_shift_examples() {
        let vars = dim5_vars();
        let g = dim5_grading(&vars);
        let d = dim5_derivation(&vars);
        assert_eq!(d.degree_shift(&g).unwrap(), Bigrade::new(0, -1));
        let dv = Derivation::partial(&vars, "v").unwrap();
        assert_eq!(dv.degree_shift(&g).unwrap(), Bigrade::new(-2, -1));
        let p = |s: &str| parse_text(&vars, s).unwrap();
        let bad = Derivation::new(&vars, &[("z", p("y + a"))]).unwrap();
        assert!(bad.degree_shift(&g).is_err());
    }

    #[test]
    fn kernel_graded_examples() {
        let vars = dim5_vars();
        let g = dim5_grading(&vars);
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();

        // Restricted to the v-free subring, the kernel at (6,2) is spanned
        // by F alone; the full kernel also contains a*(a*v^2 - 2*x*v + 2*a^2*y).
        let rvars: Vec<String> = ["a", "x", "y", "z"]
            .iter()
            .map(|s| String::from(*s))
            .collect();
        let f = p("2*a^3*y - x^2");
        let k62r = d
            .kernel_graded(&g, Bigrade::new(6, 2), Some(&rvars))
            .unwrap();
        assert_eq!(k62r.dim(), 1);
        assert!(k62r.vectors()[0].proportionality(&f).is_some());
        let k62 = d.kernel_graded(&g, Bigrade::new(6, 2), None).unwrap();
        assert_eq!(k62.dim(), 2);
        assert!(k62.contains(&f).unwrap());

        let k136 = d.kernel_graded(&g, Bigrade::new(13, 6), None).unwrap();
        assert_eq!(k136.dim(), 2);
        for v in k136.vectors() {
            assert!(d.apply(v).unwrap().is_zero());
        }

        let restrict: Vec<String> = ["a", "x", "y", "z"]
            .iter()
            .map(|s| String::from(*s))
            .collect();
        let k21 = d
            .kernel_graded(&g, Bigrade::new(2, 1), Some(&restrict))
            .unwrap();
        assert_eq!(k21.dim(), 0);
    }

    #[test]
    fn preimage_graded_examples() {
        let vars = dim5_vars();
        let g = dim5_grading(&vars);
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        // Canonical solve prefers the small monomial: x, not a*v.
        let pre = d
            .preimage_graded(&p("a^3"), &g, Bigrade::new(3, 1))
            .unwrap()
            .unwrap();
        assert_eq!(pre, p("x"));
    }

    #[test]
    fn preimage_of_down_operator() {
        let names: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
        let om = VarSet::new(names.clone()).unwrap();
        let weights: Vec<(&str, (i64, i64))> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), (1i64, i as i64)))
            .collect();
        let g = Bigrading::new(&om, &weights).unwrap();
        let mut images: Vec<(&str, Polynomial)> = Vec::new();
        for i in 1..6 {
            images.push((
                names[i].as_str(),
                parse_text(&om, &format!("x{}", i - 1)).unwrap(),
            ));
        }
        let delta = Derivation::new(&om, &images).unwrap();
        let p = |s: &str| parse_text(&om, s).unwrap();
        // Preimage of x0 at grade (1,1) is x1.
        let pre = delta
            .preimage_graded(&p("x0"), &g, Bigrade::new(1, 1))
            .unwrap()
            .unwrap();
        assert_eq!(pre, p("x1"));
        // Preimage of theta_2^(0) at (2,3); check by applying Delta.
        let theta = p("2*x0*x2 - x1^2");
        let pre = delta
            .preimage_graded(&theta, &g, Bigrade::new(2, 3))
            .unwrap()
            .unwrap();
        assert_eq!(delta.apply(&pre).unwrap(), theta);
    }

    #[test]
    fn dixmier_examples() {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        let v = p("v");
        // pi_v(x) = x - a*v, a polynomial after reduction.
        let pi_x = d.dixmier(&v, &p("x"), 64).unwrap();
        assert_eq!(pi_x.power(), 0);
        assert_eq!(pi_x.as_polynomial().unwrap(), &p("x - a*v"));
        // pi fixes kernel elements.
        let f = p("2*a^3*y - x^2");
        let pi_f = d.dixmier(&v, &f, 64).unwrap();
        assert_eq!(pi_f.as_polynomial().unwrap(), &f);
        // pi_v(v) = 0.
        let pi_v = d.dixmier(&v, &v, 64).unwrap();
        assert!(pi_v.numerator().is_zero());
        // a is not a local slice (D a = 0).
        assert!(d.dixmier(&p("a"), &p("x"), 64).is_err());
    }

    #[test]
    fn exp_map_examples() {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        assert_eq!(d.exp_map(&p("a"), &p("v"), 64).unwrap(), p("v + a^3"));
        let f = p("2*a^3*y - x^2");
        assert_eq!(d.exp_map(&p("a"), &f, 64).unwrap(), f);
        assert_eq!(
            d.exp_map(&Polynomial::zero(&vars), &p("z^2"), 64).unwrap(),
            p("z^2")
        );
        // Coefficient outside the kernel is rejected.
        assert!(d.exp_map(&p("v"), &p("z"), 64).is_err());
    }

    #[test]
    fn wronskian_examples() {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        assert_eq!(d.wronskian(&[p("z")]).unwrap(), p("z"));
        // Linearly dependent constant rows vanish.
        let w = d.wronskian(&[p("a"), p("2*a"), p("a^2")]).unwrap();
        assert!(w.is_zero());
        // det [[z, y], [Dz, Dy]] = z*x - y^2.
        assert_eq!(d.wronskian(&[p("z"), p("y")]).unwrap(), p("x*z - y^2"));
    }

    #[test]
    fn leibniz_on_samples() {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        for (a, b) in [
            ("a*v - x", "z^2 + y"),
            ("x^3 - 2*v", "a + 7*y*z"),
            ("v^4", "v"),
        ] {
            assert!(leibniz_check(&d, &p(a), &p(b)).unwrap());
        }
    }
}
