//! Roberts' dimension-seven derivation for m >= 2 and, for m = 2, the
//! P-cable rooted at X under the restricted d/dV.
//!
//! New cable elements are produced by integrate-and-correct: integrate the
//! previous element termwise in V, then cancel the image under the
//! derivation with a V-free correction found by an exact linear solve. The
//! correction space is cut down by the natural Z^3-grading (one coordinate
//! per letter orbit) under which the derivation is homogeneous of degree
//! zero; the solve is canonical, so the cable is reproducible.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cable::CablePrefix;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::linalg::{coords, ExactMatrix};
use crate::poly::{parse_text, Bigrade, Bigrading, Monomial, Polynomial, VarSet};
use crate::rat::{factorial, Rat};

/// The seven-variable context: derivation, cyclic symmetry, weights and
/// the memoized P-cable (m = 2 only).
#[derive(Clone, Debug)]
pub struct RobertsContext {
    m: u32,
    vars: VarSet,
    d: Derivation,
    partial_v: Derivation,
    weights: Bigrading,
    h: Polynomial,
    p_cache: Vec<Polynomial>,
}

impl RobertsContext {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument("m must be at least 2".into()));
        }
        let vars = VarSet::new(["X", "Y", "Z", "S", "T", "U", "V"])?;
        let p = |s: &str| parse_text(&vars, s);
        let mp = m + 1;
        let d = Derivation::new(
            &vars,
            &[
                ("S", p(&format!("X^{mp}"))?),
                ("T", p(&format!("Y^{mp}"))?),
                ("U", p(&format!("Z^{mp}"))?),
                ("V", p(&format!("X^{m}*Y^{m}*Z^{m}"))?),
            ],
        )?;
        let partial_v = Derivation::partial(&vars, "V")?;
        let w = (m + 1) as i64;
        let weights = Bigrading::new(
            &vars,
            &[
                ("X", (1, 0)),
                ("Y", (1, 0)),
                ("Z", (1, 0)),
                ("S", (w, 0)),
                ("T", (w, 0)),
                ("U", (w, 0)),
                ("V", (3 * m as i64, 0)),
            ],
        )?;
        let h = p(&format!("Y^{mp}*S - X^{mp}*T"))?;

        let ctx = RobertsContext {
            m,
            vars,
            d,
            partial_v,
            weights,
            h,
            p_cache: Vec::new(),
        };
        // Build-time self-checks.
        for v in ["X", "Y", "Z", "S", "T", "U", "V"] {
            let var = Polynomial::var(&ctx.vars, v)?;
            let a3 = ctx.alpha(&ctx.alpha(&ctx.alpha(&var)?)?)?;
            if a3 != var {
                return Err(Error::Unsolvable("cyclic map does not have order 3".into()));
            }
            let ad = ctx.alpha(ctx.d.image(v)?)?;
            let da = ctx.d.apply(&ctx.alpha(&var)?)?;
            if ad != da {
                return Err(Error::Unsolvable(
                    "cyclic map does not commute with the derivation".into(),
                ));
            }
        }
        if !ctx.d.apply(&ctx.h)?.is_zero() {
            return Err(Error::Unsolvable("H is not in the kernel".into()));
        }
        if ctx.d.degree_shift(&ctx.weights)? != Bigrade::new(0, 0) {
            return Err(Error::Unsolvable(
                "derivation is not weight-homogeneous of degree 0".into(),
            ));
        }
        let mut ctx = ctx;
        ctx.p_cache.push(Polynomial::var(&ctx.vars, "X")?);
        Ok(ctx)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn derivation(&self) -> &Derivation {
        &self.d
    }

    pub fn partial_v(&self) -> &Derivation {
        &self.partial_v
    }

    pub fn weights(&self) -> &Bigrading {
        &self.weights
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        parse_text(&self.vars, s)
    }

    /// The cyclic substitution X -> Z -> Y -> X, S -> U -> T -> S, V -> V.
    pub fn alpha(&self, p: &Polynomial) -> Result<Polynomial> {
        let vars = self.vars.clone();
        p.evaluate(&vars, |name| {
            let image = match name {
                "X" => "Z",
                "Y" => "X",
                "Z" => "Y",
                "S" => "U",
                "T" => "S",
                "U" => "T",
                "V" => "V",
                other => return Err(Error::UnknownVariable(other.into())),
            };
            Polynomial::var(&vars, image)
        })
    }

    /// H, alpha(H), alpha^2(H).
    pub fn h_orbit(&self) -> Result<[Polynomial; 3]> {
        let h1 = self.alpha(&self.h)?;
        let h2 = self.alpha(&h1)?;
        Ok([self.h.clone(), h1, h2])
    }

    /// The Wronskian generators F1 = S, F2, F3 for m = 2, with their
    /// derivation laws asserted.
    pub fn f_generators(&self) -> Result<(Polynomial, Polynomial, Polynomial)> {
        if self.m != 2 {
            return Err(Error::InvalidArgument(
                "Wronskian generators are defined for m = 2".into(),
            ));
        }
        let s = Polynomial::var(&self.vars, "S")?;
        let tu = self.parse("T*U")?;
        let stu = self.parse("S*T*U")?;
        let f1 = s.clone();
        let f2 = self
            .d
            .wronskian(&[s.clone(), tu.clone()])?
            .scale(&(Rat::one() / crate::rat::rat_i64(2)));
        let w3 = self.d.wronskian(&[s, tu, stu])?;
        let x3 = self.parse("X^3")?;
        // Normalized so the derivation law below holds on the nose:
        // applying the derivation to W(S,TU,STU) leaves 12 X^3 (YZ)^3 F2.
        let f3 = w3
            .divide_exact(&x3)?
            .scale(&(Rat::one() / crate::rat::rat_i64(12)));
        let yz3 = self.parse("Y^3*Z^3")?;
        if self.d.apply(&f1)? != x3 {
            return Err(Error::Unsolvable("derivation law for F1 failed".into()));
        }
        if self.d.apply(&f2)? != yz3.mul(&f1)? {
            return Err(Error::Unsolvable("derivation law for F2 failed".into()));
        }
        if self.d.apply(&f3)? != yz3.mul(&f2)? {
            return Err(Error::Unsolvable("derivation law for F3 failed".into()));
        }
        Ok((f1, f2, f3))
    }

    /// The six-variable triangular derivation carried by the Wronskian
    /// subring: v -> x^2 y^2, u -> y^3 t, t -> y^3 s, s -> x^3.
    pub fn restricted_e(&self) -> Result<(VarSet, Derivation)> {
        let vars = VarSet::new(["x", "y", "s", "t", "u", "v"])?;
        let p = |s: &str| parse_text(&vars, s);
        let e = Derivation::new(
            &vars,
            &[
                ("v", p("x^2*y^2")?),
                ("u", p("y^3*t")?),
                ("t", p("y^3*s")?),
                ("s", p("x^3")?),
            ],
        )?;
        Ok((vars, e))
    }

    /// Checks that the substitution x -> X, y -> YZ, s -> F1, t -> F2,
    /// u -> F3, v -> V intertwines the six-variable derivation with the
    /// seven-variable one on every generator.
    pub fn embedding_intertwines(&self) -> Result<bool> {
        let (evars, e) = self.restricted_e()?;
        let (f1, f2, f3) = self.f_generators()?;
        let target = self.vars.clone();
        let yz = self.parse("Y*Z")?;
        let v = Polynomial::var(&self.vars, "V")?;
        let x = Polynomial::var(&self.vars, "X")?;
        let embed = |p: &Polynomial| -> Result<Polynomial> {
            p.evaluate(&target, |name| match name {
                "x" => Ok(x.clone()),
                "y" => Ok(yz.clone()),
                "s" => Ok(f1.clone()),
                "t" => Ok(f2.clone()),
                "u" => Ok(f3.clone()),
                "v" => Ok(v.clone()),
                other => Err(Error::UnknownVariable(other.into())),
            })
        };
        for name in evars.names() {
            let gen = Polynomial::var(&evars, name)?;
            let lhs = embed(&e.apply(&gen)?)?;
            let rhs = self.d.apply(&embed(&gen)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Z^3 degree of a monomial: one coordinate per letter orbit
    /// {X,S}, {Y,T}, {Z,U}, with V counting m in each.
    fn z3_degree(&self, mono: &Monomial) -> (i64, i64, i64) {
        let m = self.m as i64;
        let e = |i: usize| mono.exp(i) as i64;
        // Variable order: X Y Z S T U V.
        (
            e(0) + (m + 1) * e(3) + m * e(6),
            e(1) + (m + 1) * e(4) + m * e(6),
            e(2) + (m + 1) * e(5) + m * e(6),
        )
    }

    /// V-free monomials of the given Z^3 degree, ascending canonical order.
    fn vfree_z3_basis(&self, deg: (i64, i64, i64)) -> Vec<Monomial> {
        let w = (self.m + 1) as i64;
        let mut out = Vec::new();
        let mut push = |x: i64, s: i64, y: i64, t: i64, z: i64, u: i64| {
            let exps = alloc::vec![x as u32, y as u32, z as u32, s as u32, t as u32, u as u32, 0];
            out.push(Monomial::new(exps));
        };
        for s in 0..=(deg.0 / w) {
            let x = deg.0 - w * s;
            for t in 0..=(deg.1 / w) {
                let y = deg.1 - w * t;
                for u in 0..=(deg.2 / w) {
                    let z = deg.2 - w * u;
                    push(x, s, y, t, z, u);
                }
            }
        }
        out.sort();
        out
    }

    /// Termwise integration in V.
    fn integrate_v(&self, p: &Polynomial) -> Result<Polynomial> {
        let vi = self.vars.index_of("V")?;
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps[vi] += 1;
                let denom = Rat::from_integer(exps[vi].into());
                (Monomial::new(exps), c / denom)
            })
            .collect::<Vec<_>>();
        Polynomial::from_terms(&self.vars, terms)
    }

    /// Extends the memoized P-cable to index `n` and returns the prefix
    /// (P_0, ..., P_n) under d/dV. Only defined for m = 2.
    pub fn p_cable(&mut self, n: usize) -> Result<CablePrefix> {
        if self.m != 2 {
            return Err(Error::InvalidArgument(
                "the P-cable construction is gated to m = 2".into(),
            ));
        }
        while self.p_cache.len() <= n {
            let i = self.p_cache.len();
            let prev = &self.p_cache[i - 1];
            let q = self.integrate_v(prev)?;
            let dq = self.d.apply(&q)?;
            let target = dq.neg();
            // The correction is V-free of the same Z^3 degree as P_i.
            let deg = (2 * i as i64 + 1, 2 * i as i64, 2 * i as i64);
            let basis = self.vfree_z3_basis(deg);
            let mut matrix = ExactMatrix::zeros(basis.len(), basis.len());
            for (col, mono) in basis.iter().enumerate() {
                let dp =
                    self.d
                        .apply(&Polynomial::monomial(&self.vars, mono.clone(), Rat::one())?)?;
                for (row, val) in coords(&dp, &basis)?.into_iter().enumerate() {
                    if !val.is_zero() {
                        matrix.set(row, col, val);
                    }
                }
            }
            let rhs = coords(&target, &basis)?;
            let sol = matrix
                .solve_particular(&rhs)?
                .ok_or_else(|| Error::Unsolvable(format!("no V-free correction for P_{i}")))?;
            let correction = Polynomial::from_terms(
                &self.vars,
                basis.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()),
            )?;
            let p_i = q.add(&correction)?;
            self.check_cable_element(i, &p_i, prev)?;
            self.p_cache.push(p_i);
        }
        CablePrefix::new(self.partial_v.clone(), self.p_cache[..=n].to_vec())
    }

    fn check_cable_element(&self, i: usize, p_i: &Polynomial, prev: &Polynomial) -> Result<()> {
        if !self.d.apply(p_i)?.is_zero() {
            return Err(Error::Unsolvable(format!("P_{i} is not in the kernel")));
        }
        if &self.partial_v.apply(p_i)? != prev {
            return Err(Error::Unsolvable(format!("d/dV P_{i} != P_{}", i - 1)));
        }
        let weight = Bigrade::new(1 + 6 * i as i64, 0);
        if !p_i.is_homogeneous_of(&self.weights, weight) {
            return Err(Error::Unsolvable(format!(
                "P_{i} is not weight-homogeneous"
            )));
        }
        let deg = (2 * i as i64 + 1, 2 * i as i64, 2 * i as i64);
        if p_i.terms().any(|(m, _)| self.z3_degree(m) != deg) {
            return Err(Error::Unsolvable(format!(
                "P_{i} is not homogeneous for the letter-orbit grading"
            )));
        }
        if self.v_leading_part(p_i, i)? != self.leading_term_expected(i)? {
            return Err(Error::Unsolvable(format!(
                "P_{i} has the wrong V-leading term"
            )));
        }
        Ok(())
    }

    /// The part of `p` with V-exponent exactly `k`.
    fn v_leading_part(&self, p: &Polynomial, k: usize) -> Result<Polynomial> {
        let vi = self.vars.index_of("V")?;
        let terms = p
            .terms()
            .filter(|(m, _)| m.exp(vi) as usize == k)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect::<Vec<_>>();
        Polynomial::from_terms(&self.vars, terms)
    }

    /// X V^i / i!.
    fn leading_term_expected(&self, i: usize) -> Result<Polynomial> {
        let x = Polynomial::var(&self.vars, "X")?;
        let v = Polynomial::var(&self.vars, "V")?;
        Ok(x.mul(&v.pow(i as u32))?.scale(&(Rat::one() / factorial(i))))
    }

    /// Elementwise cyclic transports of a P-cable: the first is rooted at
    /// Z (one application), the second at Y (two applications).
    pub fn alpha_transport(&self, c: &CablePrefix) -> Result<(CablePrefix, CablePrefix)> {
        let once = c
            .elements()
            .iter()
            .map(|e| self.alpha(e))
            .collect::<Result<Vec<_>>>()?;
        let twice = once
            .iter()
            .map(|e| self.alpha(e))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            CablePrefix::new(self.partial_v.clone(), once)?,
            CablePrefix::new(self.partial_v.clone(), twice)?,
        ))
    }
}
