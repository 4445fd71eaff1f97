//! The five-variable ring B = k\[a,x,y,z,v\] with the triangular derivation
//! D: z -> y -> x -> a^3, v -> a^2, a -> 0, its kernel invariants F, G, h,
//! and the distinguished sigma cable under the restricted d/dv.
//!
//! sigma_0..sigma_5 are fixed constants (they are forced by dimension
//! counts); higher elements come from a quadratic recursion with exact
//! division by a. A division failure would falsify the construction, so it
//! surfaces as a hard error. An independent route to the same cable via
//! linear-algebra preimages and the Dixmier map lives in [`SigmaDixmier`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cable::{omega_index, CablePrefix};
use crate::derivation::{Derivation, LocalizedElement, DEFAULT_NILPOTENCY_BOUND};
use crate::error::{Error, Result};
use crate::linalg::VectorSpaceBasis;
use crate::poly::{parse_text, Bigrade, Bigrading, Polynomial, VarSet};
use crate::rat::{factorial, rat_i64, Rat};

/// Predicted kernel dimension at the sigma grades: floor(n/6) + 1.
pub fn predicted_dim(n: usize) -> usize {
    n / 6 + 1
}

const SIGMA_SCALED: [&str; 6] = [
    "a",
    "a*v - x",
    "a*v^2 - 2*x*v + 2*a^2*y",
    "a*v^3 - 3*x*v^2 + 6*a^2*y*v - 6*a^4*z",
    "a*v^4 - 4*x*v^3 + 12*a^2*y*v^2 - 24*a^4*z*v + 24*a^3*x*z - 12*a^3*y^2",
    "a*v^5 - 5*x*v^4 + 20*a^2*y*v^3 - 60*a^4*z*v^2 + 120*a^3*x*z*v - 60*a^3*y^2*v \
     - 72*a^2*x^2*z + 36*a^2*x*y^2 + 24*a^5*y*z",
];

/// The dimension-five context: ring, derivation, grading, invariants and
/// the memoized sigma cable. The sigma cache is append-only; it is the only
/// mutable state, guarded by exclusive borrows.
#[derive(Clone, Debug)]
pub struct Dim5Context {
    vars: VarSet,
    grading: Bigrading,
    d: Derivation,
    partial_v: Derivation,
    f: Polynomial,
    g: Polynomial,
    h: Polynomial,
    sigmas: Vec<Polynomial>,
}

impl Dim5Context {
    /// Builds the context and asserts its defining identities.
    pub fn new() -> Result<Self> {
        let vars = VarSet::new(["a", "x", "y", "z", "v"])?;
        let grading = Bigrading::new(
            &vars,
            &[
                ("a", (1, 0)),
                ("x", (3, 1)),
                ("y", (3, 2)),
                ("z", (3, 3)),
                ("v", (2, 1)),
            ],
        )?;
        let p = |s: &str| parse_text(&vars, s);
        let d = Derivation::new(
            &vars,
            &[
                ("z", p("y")?),
                ("y", p("x")?),
                ("x", p("a^3")?),
                ("v", p("a^2")?),
            ],
        )?;
        let partial_v = Derivation::partial(&vars, "v")?;
        let f = p("2*a^3*y - x^2")?;
        let g = p("3*a^6*z - 3*a^3*x*y + x^3")?;
        let h = p("9*a^6*z^2 - 18*a^3*x*y*z + 8*a^3*y^3 + 6*x^3*z - 3*x^2*y^2")?;

        // Build-time self-checks.
        for (name, inv) in [("F", &f), ("G", &g), ("h", &h)] {
            if !d.apply(inv)?.is_zero() {
                return Err(Error::Unsolvable(format!("D({name}) != 0")));
            }
        }
        let a6h = p("a^6")?.mul(&h)?;
        if a6h != f.pow(3).add(&g.pow(2))? {
            return Err(Error::Unsolvable("a^6 h != F^3 + G^2".into()));
        }
        if d.degree_shift(&grading)? != Bigrade::new(0, -1) {
            return Err(Error::Unsolvable(
                "derivation is not of degree (0,-1)".into(),
            ));
        }

        let mut sigmas = Vec::with_capacity(6);
        for (n, s) in SIGMA_SCALED.iter().enumerate() {
            let sigma = p(s)?.scale(&(Rat::one() / factorial(n)));
            if !d.apply(&sigma)?.is_zero() {
                return Err(Error::Unsolvable(format!("D(sigma_{n}) != 0")));
            }
            if n > 0 {
                let prev: &Polynomial = &sigmas[n - 1];
                if &partial_v.apply(&sigma)? != prev {
                    return Err(Error::Unsolvable(format!(
                        "d/dv sigma_{n} != sigma_{}",
                        n - 1
                    )));
                }
            }
            if sigma.bigrade(&grading) != Some(Bigrade::new(2 * n as i64 + 1, n as i64)) {
                return Err(Error::Unsolvable(format!("sigma_{n} has the wrong grade")));
            }
            sigmas.push(sigma);
        }

        Ok(Dim5Context {
            vars,
            grading,
            d,
            partial_v,
            f,
            g,
            h,
            sigmas,
        })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn grading(&self) -> &Bigrading {
        &self.grading
    }

    pub fn derivation(&self) -> &Derivation {
        &self.d
    }

    pub fn partial_v(&self) -> &Derivation {
        &self.partial_v
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        parse_text(&self.vars, s)
    }

    /// Number of sigma elements computed so far.
    pub fn sigma_count(&self) -> usize {
        self.sigmas.len()
    }

    /// Ensures sigma_0..sigma_n are available, extending the cache through
    /// the quadratic recursion (exact division by a at every step).
    pub fn ensure_sigma(&mut self, n: usize) -> Result<()> {
        while self.sigmas.len() <= n {
            let k = self.sigmas.len();
            let rhs = self.recursion_rhs(k)?;
            let sigma = rhs;
            self.sigmas.push(sigma);
        }
        Ok(())
    }

    /// The sigma element of the distinguished cable.
    pub fn sigma(&mut self, n: usize) -> Result<&Polynomial> {
        self.ensure_sigma(n)?;
        Ok(&self.sigmas[n])
    }

    /// Computes the recursion right-hand side for index `k >= 4` from the
    /// already-cached elements (those below `k` must be present).
    pub fn recursion_rhs(&self, k: usize) -> Result<Polynomial> {
        if k < 4 {
            return Err(Error::InvalidArgument(
                "the quadratic recursion starts at index 4".into(),
            ));
        }
        if self.sigmas.len() < k {
            return Err(Error::InvalidArgument(format!(
                "recursion at {k} needs sigma_0..sigma_{}",
                k - 1
            )));
        }
        let kk = k as i64;
        // Coefficient of sigma_i sigma_{k-i} in the defining relation, and
        // the scalar multiplying a*sigma_k.
        let (weight, lead): (alloc::boxed::Box<dyn Fn(i64) -> Rat>, i64) = match k % 6 {
            2 | 4 => (
                alloc::boxed::Box::new(|i: i64| rat_i64(if i % 2 == 0 { 1 } else { -1 })),
                2,
            ),
            3 | 5 => (
                alloc::boxed::Box::new(|i: i64| rat_i64(if (i + 1) % 2 == 0 { i } else { -i })),
                kk,
            ),
            0 => (
                alloc::boxed::Box::new(move |i: i64| {
                    let c = 3 * i * (i - 1) - kk * (kk - 2);
                    rat_i64(if i % 2 == 0 { c } else { -c })
                }),
                kk * (kk + 1),
            ),
            1 => (
                alloc::boxed::Box::new(move |i: i64| {
                    let c = ((i - 1) * (i - 2) - (kk - 1) * (kk - 3)) * i;
                    rat_i64(if (i + 1) % 2 == 0 { c } else { -c })
                }),
                kk * (kk - 1),
            ),
            _ => unreachable!(),
        };
        let mut sum = Polynomial::zero(&self.vars);
        for i in 1..k {
            let w = weight(i as i64);
            if w.is_zero() {
                continue;
            }
            let prod = self.sigmas[i].mul(&self.sigmas[k - i])?;
            sum = sum.add(&prod.scale(&w))?;
        }
        let a = Polynomial::var(&self.vars, "a")?;
        let den = a.scale(&rat_i64(lead));
        sum.neg().divide_exact(&den)
    }

    /// The cable prefix (sigma_0, ..., sigma_n) under d/dv.
    pub fn sigma_cable(&mut self, n: usize) -> Result<CablePrefix> {
        self.ensure_sigma(n)?;
        CablePrefix::new(self.partial_v.clone(), self.sigmas[..=n].to_vec())
    }

    /// Evaluation map: x_i -> sigma_i and t -> h, from the omega ring (or
    /// its t-extension) into this ring. Only the indices that actually
    /// occur in `p` are materialized.
    pub fn phi_sigma(&mut self, p: &Polynomial) -> Result<Polynomial> {
        let mut max_needed = None;
        for (m, _) in p.terms() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(idx) = omega_index(p.vars().name(i)) {
                    max_needed = Some(max_needed.map_or(idx, |m: usize| m.max(idx)));
                }
            }
        }
        if let Some(m) = max_needed {
            self.ensure_sigma(m)?;
        }
        let sigmas = &self.sigmas;
        let h = &self.h;
        let vars = self.vars.clone();
        p.evaluate(&vars, |name| {
            if name == "t" {
                return Ok(h.clone());
            }
            let idx = omega_index(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
            sigmas
                .get(idx)
                .cloned()
                .ok_or_else(|| Error::IndexOutOfRange(format!("sigma_{idx} not available")))
        })
    }

    /// Kernel of D in the graded piece at (r, s).
    pub fn kernel_at(&self, r: i64, s: i64) -> Result<VectorSpaceBasis> {
        self.d
            .kernel_graded(&self.grading, Bigrade::new(r, s), None)
    }

    /// dim ker D at the graded piece (r, s), by brute-force linear algebra.
    pub fn dim_a(&self, r: i64, s: i64) -> Result<usize> {
        Ok(self.kernel_at(r, s)?.dim())
    }

    /// Congruence check: n! sigma_n + n x v^(n-1) is divisible by a.
    pub fn check_congruence(&mut self, n: usize) -> Result<bool> {
        if n < 1 {
            return Err(Error::InvalidArgument("congruence starts at n = 1".into()));
        }
        self.ensure_sigma(n)?;
        let x = Polynomial::var(&self.vars, "x")?;
        let v = Polynomial::var(&self.vars, "v")?;
        let lhs = self.sigmas[n]
            .scale(&factorial(n))
            .add(&x.mul(&v.pow(n as u32 - 1))?.scale(&rat_i64(n as i64)))?;
        let a = Polynomial::var(&self.vars, "a")?;
        Ok(lhs.divide_exact(&a).is_ok())
    }

    fn vfree_names() -> Vec<String> {
        ["a", "x", "y", "z"]
            .iter()
            .map(|s| String::from(*s))
            .collect()
    }

    /// Kernel slice at (2n+1, n) restricted to the v-free subring, with
    /// the predicted spanning element (a h^e when 6 | n, nothing
    /// otherwise).
    pub fn vfree_kernel_odd(&self, n: usize) -> Result<(VectorSpaceBasis, Option<Polynomial>)> {
        let names = Self::vfree_names();
        let basis = self.d.kernel_graded(
            &self.grading,
            Bigrade::new(2 * n as i64 + 1, n as i64),
            Some(&names),
        )?;
        let predicted = if n % 6 == 0 {
            let a = Polynomial::var(&self.vars, "a")?;
            Some(a.mul(&self.h.pow((n / 6) as u32))?)
        } else {
            None
        };
        Ok((basis, predicted))
    }

    /// Kernel slice at (2n+2, n) restricted to the v-free subring, with
    /// the predicted spanning element (a^2 h^e, F h^e, or nothing).
    pub fn vfree_kernel_even(&self, n: usize) -> Result<(VectorSpaceBasis, Option<Polynomial>)> {
        let names = Self::vfree_names();
        let basis = self.d.kernel_graded(
            &self.grading,
            Bigrade::new(2 * n as i64 + 2, n as i64),
            Some(&names),
        )?;
        let predicted = match n % 6 {
            0 => {
                let a = Polynomial::var(&self.vars, "a")?;
                Some(a.pow(2).mul(&self.h.pow((n / 6) as u32))?)
            }
            2 => Some(self.f.mul(&self.h.pow((n / 6) as u32))?),
            _ => None,
        };
        Ok((basis, predicted))
    }

    /// Specialization at a = 0 as a map of polynomials.
    pub fn set_a_zero(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut bind = alloc::collections::BTreeMap::new();
        bind.insert(String::from("a"), Polynomial::zero(&self.vars));
        p.substitute(&bind)
    }

    /// Test/diagnostic hook: overwrites a cached sigma element without any
    /// checking, so verification suites can demonstrate failure reporting.
    #[doc(hidden)]
    pub fn inject_sigma_unchecked(&mut self, n: usize, p: Polynomial) {
        if n < self.sigmas.len() {
            self.sigmas[n] = p;
        }
    }
}

/// Independent construction of the sigma cable through graded preimages in
/// the four-variable ring k\[t,x,y,z\] and the Dixmier map at the local
/// slice v. This path never touches the quadratic recursion.
#[derive(Clone, Debug)]
pub struct SigmaDixmier {
    q_vars: VarSet,
    q_grading: Bigrading,
    dq: Derivation,
    b_vars: VarSet,
    b_d: Derivation,
    partial_v: Derivation,
    ws: Vec<Polynomial>,
}

impl SigmaDixmier {
    pub fn new() -> Result<Self> {
        let q_vars = VarSet::new(["t", "x", "y", "z"])?;
        let q_grading = Bigrading::new(
            &q_vars,
            &[("t", (1, 0)), ("x", (1, 1)), ("y", (1, 2)), ("z", (1, 3))],
        )?;
        let pq = |s: &str| parse_text(&q_vars, s);
        let dq = Derivation::new(
            &q_vars,
            &[("z", pq("y")?), ("y", pq("x")?), ("x", pq("t")?)],
        )?;
        let b_vars = VarSet::new(["a", "x", "y", "z", "v"])?;
        let pb = |s: &str| parse_text(&b_vars, s);
        let b_d = Derivation::new(
            &b_vars,
            &[
                ("z", pb("y")?),
                ("y", pb("x")?),
                ("x", pb("a^3")?),
                ("v", pb("a^2")?),
            ],
        )?;
        let partial_v = Derivation::partial(&b_vars, "v")?;
        let ws = alloc::vec![Polynomial::one(&q_vars)];
        Ok(SigmaDixmier {
            q_vars,
            q_grading,
            dq,
            b_vars,
            b_d,
            partial_v,
            ws,
        })
    }

    /// Grade of w_k: (2m, 3m), (2m+1, 3m+1), (2m+1, 3m+2) for
    /// k = 3m, 3m+1, 3m+2.
    fn w_grade(k: usize) -> Bigrade {
        let m = (k / 3) as i64;
        match k % 3 {
            0 => Bigrade::new(2 * m, 3 * m),
            1 => Bigrade::new(2 * m + 1, 3 * m + 1),
            _ => Bigrade::new(2 * m + 1, 3 * m + 2),
        }
    }

    fn ensure_w(&mut self, k: usize) -> Result<()> {
        while self.ws.len() <= k {
            let i = self.ws.len();
            let prev = &self.ws[i - 1];
            let target = match i % 3 {
                // d w_{3m+1} = t w_{3m} and d w_{3m+3} = t w_{3m+2}
                0 | 1 => Polynomial::var(&self.q_vars, "t")?.mul(prev)?,
                // d w_{3m+2} = w_{3m+1}
                _ => prev.clone(),
            };
            let w = self
                .dq
                .preimage_graded(&target, &self.q_grading, Self::w_grade(i))?
                .ok_or_else(|| Error::Unsolvable(format!("no graded preimage for w_{i}")))?;
            self.ws.push(w);
        }
        Ok(())
    }

    /// Maps a polynomial in k\[t,x,y,z\] into the five-variable ring via
    /// t -> a^3.
    fn embed_in_b(&self, p: &Polynomial) -> Result<Polynomial> {
        let b = self.b_vars.clone();
        p.evaluate(&b, |name| match name {
            "t" => {
                let a = Polynomial::var(&b, "a")?;
                Ok(a.pow(3))
            }
            other => Polynomial::var(&b, other),
        })
    }

    /// sigma_n via the Dixmier route: build w_0..w_{3m}, set
    /// sigma_{3m} = (-1)^(3m) pi_v(a w_{3m}), then differentiate down.
    pub fn sigma(&mut self, n: usize) -> Result<Polynomial> {
        let m = n.div_ceil(3);
        self.ensure_w(3 * m)?;
        let w = self.embed_in_b(&self.ws[3 * m])?;
        let a = Polynomial::var(&self.b_vars, "a")?;
        let v = Polynomial::var(&self.b_vars, "v")?;
        let arg = a.mul(&w)?;
        let pi = self.b_d.dixmier(&v, &arg, DEFAULT_NILPOTENCY_BOUND)?;
        let Some(poly) = pi.as_polynomial() else {
            return Err(Error::Unsolvable(
                "Dixmier image did not reduce to a polynomial".into(),
            ));
        };
        let mut s = if (3 * m) % 2 == 1 {
            poly.neg()
        } else {
            poly.clone()
        };
        for _ in n..3 * m {
            s = self.partial_v.apply(&s)?;
        }
        Ok(s)
    }

    /// Access to the underlying localized value, for tests that inspect
    /// reduction behavior.
    pub fn dixmier_raw(&mut self, n: usize) -> Result<LocalizedElement> {
        let m = n.div_ceil(3);
        self.ensure_w(3 * m)?;
        let w = self.embed_in_b(&self.ws[3 * m])?;
        let a = Polynomial::var(&self.b_vars, "a")?;
        let v = Polynomial::var(&self.b_vars, "v")?;
        self.b_d.dixmier(&v, &a.mul(&w)?, DEFAULT_NILPOTENCY_BOUND)
    }
}
