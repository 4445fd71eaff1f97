//! The infinite polynomial ring k\[x0, x1, ...\] truncated at a context
//! bound, with the down operator, the quadratic cable bases and Q-ideal
//! slices.
//!
//! The grading is deg x_i = (1, i); the optional extra variable t has
//! deg t = (0, 6). Any operation that would need a variable beyond the
//! truncation bound errors loudly rather than silently truncating.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cable::CablePrefix;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::linalg::{coords, ExactMatrix, VectorSpaceBasis};
use crate::poly::{monomial_basis, Bigrade, Bigrading, Monomial, Polynomial, VarSet};
use crate::rat::{binomial, factorial, rat_i64, Rat};

/// Default truncation bound: variables x0..x64.
pub const DEFAULT_MAX_INDEX: usize = 64;

/// Which quadratic Delta-basis to use for coordinates and Q-ideal slices.
#[derive(Clone, Debug)]
pub enum DeltaBasis {
    /// The binomial-coefficient closed form.
    Balanced,
    /// Minimal monomial support, computed by iterated solves.
    Small,
    /// Explicit cable prefixes keyed by their even root weight.
    Custom(BTreeMap<usize, CablePrefix>),
}

/// Result of scanning the obstruction coefficient along a cable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuValue {
    /// Least admissible index with non-zero coefficient.
    Found(usize),
    /// Every admissible index below the bound has zero coefficient.
    AtLeast(usize),
}

/// Truncated omega ring with its gradings and down operators.
#[derive(Clone, Debug)]
pub struct OmegaContext {
    n_max: usize,
    vars: VarSet,
    vars_t: VarSet,
    grading: Bigrading,
    grading_t: Bigrading,
    delta: Derivation,
    delta_t: Derivation,
}

impl OmegaContext {
    pub fn new(n_max: usize) -> Result<Self> {
        let names: Vec<String> = (0..=n_max).map(|i| format!("x{i}")).collect();
        let vars = VarSet::new(names.clone())?;
        let mut names_t = names.clone();
        names_t.push("t".into());
        let vars_t = VarSet::new(names_t)?;

        let mut weights: Vec<(&str, (i64, i64))> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), (1i64, i as i64)))
            .collect();
        let grading = Bigrading::new(&vars, &weights)?;
        weights.push(("t", (0, 6)));
        let grading_t = Bigrading::new(&vars_t, &weights)?;

        let mut images: Vec<(&str, Polynomial)> = Vec::new();
        let mut images_t: Vec<(&str, Polynomial)> = Vec::new();
        for i in 1..=n_max {
            images.push((names[i].as_str(), Polynomial::var(&vars, &names[i - 1])?));
            images_t.push((names[i].as_str(), Polynomial::var(&vars_t, &names[i - 1])?));
        }
        let delta = Derivation::new(&vars, &images)?;
        let delta_t = Derivation::new(&vars_t, &images_t)?;

        Ok(OmegaContext {
            n_max,
            vars,
            vars_t,
            grading,
            grading_t,
            delta,
            delta_t,
        })
    }

    pub fn default_context() -> Self {
        OmegaContext::new(DEFAULT_MAX_INDEX).expect("default context")
    }

    pub fn max_index(&self) -> usize {
        self.n_max
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn vars_t(&self) -> &VarSet {
        &self.vars_t
    }

    pub fn grading(&self) -> &Bigrading {
        &self.grading
    }

    pub fn grading_t(&self) -> &Bigrading {
        &self.grading_t
    }

    pub fn delta(&self) -> &Derivation {
        &self.delta
    }

    pub fn delta_t(&self) -> &Derivation {
        &self.delta_t
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.n_max {
            Err(Error::IndexOutOfRange(format!(
                "x{i} exceeds the truncation bound x{}",
                self.n_max
            )))
        } else {
            Ok(())
        }
    }

    pub fn x(&self, i: usize) -> Result<Polynomial> {
        self.check_index(i)?;
        Polynomial::var(&self.vars, &format!("x{i}"))
    }

    pub fn t(&self) -> Polynomial {
        Polynomial::var(&self.vars_t, "t").expect("t exists")
    }

    /// The down operator.
    pub fn down(&self, p: &Polynomial) -> Result<Polynomial> {
        self.delta.apply(p)
    }

    /// The down operator on the t-extension (t goes to zero).
    pub fn down_t(&self, p: &Polynomial) -> Result<Polynomial> {
        self.delta_t.apply(p)
    }

    fn quadratic(
        &self,
        pairs: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut terms: Vec<(Monomial, Rat)> = Vec::new();
        for (i, j, c) in pairs {
            self.check_index(i)?;
            self.check_index(j)?;
            let mut exps = alloc::vec![0u32; n];
            exps[i] += 1;
            exps[j] += 1;
            terms.push((Monomial::new(exps), c));
        }
        Polynomial::from_terms(&self.vars, terms)
    }

    /// theta_n^(0) = sum_i (-1)^i x_i x_{n-i}, the quadratic kernel form.
    pub fn theta0(&self, n: usize) -> Result<Polynomial> {
        if n % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "theta0 needs even n, got {n}"
            )));
        }
        self.quadratic((0..=n).map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            (i, n - i, rat_i64(sign))
        }))
    }

    /// theta_n^(1) = sum_{i=1}^{n+1} (-1)^(i+1) i x_i x_{n+1-i}, the unique
    /// first vertex above theta_n^(0).
    pub fn theta1(&self, n: usize) -> Result<Polynomial> {
        if n % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "theta1 needs even n, got {n}"
            )));
        }
        self.quadratic((1..=n + 1).map(|i| {
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            (i, n + 1 - i, rat_i64(sign * i as i64))
        }))
    }

    /// Balanced basis vertex
    /// beta_n^(j) = sum_{i=j}^{n+j} (-1)^(j+i) binom(i,j) x_i x_{n+j-i}.
    pub fn beta(&self, n: usize, j: usize) -> Result<Polynomial> {
        if n % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "beta needs even n, got {n}"
            )));
        }
        self.quadratic((j..=n + j).map(|i| {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            (i, n + j - i, binomial(i, j).scale_sign(sign))
        }))
    }

    /// Small basis vertex: the unique cable vertex over theta_n^(0) whose
    /// support stays in the span of x_0 x_{n+j}, ..., x_{n/2} x_{n/2+j},
    /// computed by iterated solves against the down operator.
    pub fn eta(&self, n: usize, j: usize) -> Result<Polynomial> {
        if n % 2 != 0 {
            return Err(Error::InvalidArgument(format!("eta needs even n, got {n}")));
        }
        self.check_index(n + j)?;
        let w_monomials = |jj: usize| -> Vec<Monomial> {
            (0..=n / 2)
                .map(|i| {
                    let mut exps = alloc::vec![0u32; self.vars.len()];
                    exps[i] += 1;
                    exps[n + jj - i] += 1;
                    Monomial::new(exps)
                })
                .collect()
        };
        let mut cur = self.theta0(n)?;
        for jj in 1..=j {
            let cols = w_monomials(jj);
            let rows = w_monomials(jj - 1);
            let mut m = ExactMatrix::zeros(rows.len(), cols.len());
            for (c, mono) in cols.iter().enumerate() {
                let p = Polynomial::monomial(&self.vars, mono.clone(), Rat::one())?;
                let down = self.down(&p)?;
                let col = coords(&down, &rows)?;
                for (r, val) in col.into_iter().enumerate() {
                    if !val.is_zero() {
                        m.set(r, c, val);
                    }
                }
            }
            let b = coords(&cur, &rows)?;
            let sol = m
                .solve_particular(&b)?
                .ok_or_else(|| Error::Unsolvable("small-basis lift".into()))?;
            cur = Polynomial::from_terms(
                &self.vars,
                cols.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()),
            )?;
        }
        Ok(cur)
    }

    /// The basis vertex theta_n^(j) in the chosen basis.
    pub fn vertex(&self, basis: &DeltaBasis, n: usize, j: usize) -> Result<Polynomial> {
        match basis {
            DeltaBasis::Balanced => self.beta(n, j),
            DeltaBasis::Small => self.eta(n, j),
            DeltaBasis::Custom(map) => {
                let cable = map.get(&n).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "custom basis has no cable rooted at weight {n}"
                    ))
                })?;
                Ok(cable.element(j)?.clone())
            }
        }
    }

    /// Builds the balanced cable prefix (beta_n^(0..=len)).
    pub fn beta_cable(&self, n: usize, len: usize) -> Result<CablePrefix> {
        let elements = (0..=len)
            .map(|j| self.beta(n, j))
            .collect::<Result<Vec<_>>>()?;
        CablePrefix::new(self.delta.clone(), elements)
    }

    /// Coordinates of a homogeneous quadratic over the basis vertices
    /// {theta_{2i}^(j-2i) | 0 <= i <= j/2}; returned as ((n, j'), coeff).
    pub fn delta_basis_coords(
        &self,
        p: &Polynomial,
        basis: &DeltaBasis,
    ) -> Result<Vec<((usize, usize), Rat)>> {
        let Some(grade) = p.bigrade(&self.grading) else {
            return Err(Error::Inhomogeneous("need a homogeneous quadratic".into()));
        };
        if grade.r != 2 || grade.s < 0 {
            return Err(Error::Inhomogeneous(format!(
                "need a quadratic, got grade {grade}"
            )));
        }
        let j = grade.s as usize;
        let ambient = monomial_basis(&self.vars, &self.grading, grade, None)?;
        let mut labels = Vec::new();
        let mut cols: Vec<Vec<Rat>> = Vec::new();
        for i in 0..=(j / 2) {
            let n = 2 * i;
            let vert = self.vertex(basis, n, j - n)?;
            cols.push(coords(&vert, &ambient)?);
            labels.push((n, j - n));
        }
        let mut m = ExactMatrix::zeros(ambient.len(), cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, val) in col.iter().enumerate() {
                if !val.is_zero() {
                    m.set(r, c, val.clone());
                }
            }
        }
        let b = coords(p, &ambient)?;
        let sol = m
            .solve_particular(&b)?
            .ok_or_else(|| Error::Unsolvable("quadratic is not in the vertex span".into()))?;
        Ok(labels.into_iter().zip(sol).collect())
    }

    /// Reduced basis of the graded slice of the fundamental Q-ideal:
    /// span of M * theta_{n'}^(j) over monomials M and vertices with
    /// n' >= n even, intersected with the piece at `d`.
    pub fn q_ideal_slice(
        &self,
        n: usize,
        d: Bigrade,
        basis: &DeltaBasis,
    ) -> Result<VectorSpaceBasis> {
        if n % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "Q-ideal index must be even, got {n}"
            )));
        }
        let ambient = monomial_basis(&self.vars, &self.grading, d, None)?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        if d.r >= 2 && d.s >= 0 {
            let s = d.s as usize;
            let mut np = n;
            while np <= s {
                for j in 0..=(s - np) {
                    let vert = self.vertex(basis, np, j)?;
                    let mgrade = Bigrade::new(d.r - 2, (s - np - j) as i64);
                    for m in monomial_basis(&self.vars, &self.grading, mgrade, None)? {
                        let mp = Polynomial::monomial(&self.vars, m, Rat::one())?;
                        let prod = mp.mul(&vert)?;
                        rows.push(coords(&prod, &ambient)?);
                    }
                }
                np += 2;
            }
        }
        VectorSpaceBasis::from_span(&self.vars, &self.grading, d, ambient, rows)
    }

    /// Dimension of the full graded piece at `d`.
    pub fn dim_omega(&self, d: Bigrade) -> Result<usize> {
        Ok(monomial_basis(&self.vars, &self.grading, d, None)?.len())
    }

    /// The coefficient of x_1 x_{m-1} in a homogeneous quadratic of grade
    /// (2, m).
    pub fn xi_coeff(&self, p: &Polynomial) -> Result<Rat> {
        let Some(grade) = p.bigrade(&self.grading) else {
            if p.is_zero() {
                return Ok(Rat::zero());
            }
            return Err(Error::Inhomogeneous("need a homogeneous quadratic".into()));
        };
        if grade.r != 2 || grade.s < 1 {
            return Err(Error::Inhomogeneous(format!(
                "need a quadratic of weight at least 1, got grade {grade}"
            )));
        }
        let m = grade.s as usize;
        self.check_index(m - 1)?;
        let mut exps = alloc::vec![0u32; self.vars.len()];
        exps[1] += 1;
        exps[m - 1] += 1;
        Ok(p.coeff(&Monomial::new(exps)))
    }

    /// Admissible obstruction indices for a cable rooted at weight `n`:
    /// j >= 3 with n + j = 1 mod 6 (all such j are odd).
    pub fn j_set(n: usize, upto: usize) -> Vec<usize> {
        (3..=upto).filter(|j| (n + j) % 6 == 1).collect()
    }

    /// Scans xi along the cable's admissible indices below `bound`.
    /// The cable must be rooted at a quadratic kernel form.
    pub fn mu(&self, cable: &CablePrefix, bound: usize) -> Result<MuValue> {
        let Some(root_grade) = cable.root().bigrade(&self.grading) else {
            return Err(Error::Inhomogeneous(
                "cable root must be homogeneous".into(),
            ));
        };
        if root_grade.r != 2 {
            return Err(Error::Inhomogeneous("cable root must be quadratic".into()));
        }
        let n = root_grade.s as usize;
        for j in Self::j_set(n, bound.saturating_sub(1)) {
            let xi = self.xi_coeff(cable.element(j)?)?;
            if !xi.is_zero() {
                return Ok(MuValue::Found(j));
            }
        }
        Ok(MuValue::AtLeast(bound))
    }

    /// Reduction of the balanced basis cable rooted at theta_n^(0):
    /// repeatedly cancels the obstruction coefficient at the least
    /// admissible index j via a (j-1)-shifted sum with
    /// (xi / (n + j - 2)) * beta-cable at weight n + j - 1, until no
    /// admissible index reachable in the requested prefix has a non-zero
    /// coefficient. Returns elements (psi_n^(0), ..., psi_n^(out_len)).
    pub fn reduce_basis(&self, n: usize, out_len: usize) -> Result<CablePrefix> {
        if n % 6 != 2 && n % 6 != 4 {
            return Err(Error::InvalidArgument(format!(
                "reduction is defined for n = 2, 4 mod 6; got {n}"
            )));
        }
        // Work one index past the requested prefix: a correction at
        // j = out_len + 1 shifts by out_len and still lands inside.
        let work_len = out_len + 1;
        self.check_index(n + work_len)?;
        let mut work = self.beta_cable(n, work_len)?;
        for j in Self::j_set(n, work_len) {
            let xi = self.xi_coeff(work.element(j)?)?;
            if xi.is_zero() {
                continue;
            }
            let m = j - 1;
            let c = xi / rat_i64((n + j - 2) as i64);
            let corr = self
                .beta_cable(n + m, work_len - m)?
                .scale(&Polynomial::constant(&self.vars, c))?;
            work = work.shifted_sum(&corr, m)?;
        }
        work.truncate(out_len + 1)
    }

    /// Closed form for the second vertex of the reduced cable when
    /// n = 4 mod 6:
    /// (1/6) sum_{i=0}^{n+2} (-1)^i (3i(i-1) - n(n+2)) x_i x_{n+2-i}.
    pub fn psi2(&self, n: usize) -> Result<Polynomial> {
        if n % 6 != 4 {
            return Err(Error::InvalidArgument(format!(
                "psi2 is defined for n = 4 mod 6; got {n}"
            )));
        }
        let nn = n as i64;
        let p = self.quadratic((0..=n + 2).map(|i| {
            let ii = i as i64;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            (
                i,
                n + 2 - i,
                rat_i64(sign * (3 * ii * (ii - 1) - nn * (nn + 2))),
            )
        }))?;
        Ok(p.scale(&(Rat::one() / rat_i64(6))))
    }

    /// Closed form for the third vertex of the reduced cable when
    /// n = 4 mod 6:
    /// (1/6) sum_{i=1}^{n+3} (-1)^(i+1) ((i-1)(i-2) - n(n+2)) i x_i x_{n+3-i}.
    pub fn psi3(&self, n: usize) -> Result<Polynomial> {
        if n % 6 != 4 {
            return Err(Error::InvalidArgument(format!(
                "psi3 is defined for n = 4 mod 6; got {n}"
            )));
        }
        let nn = n as i64;
        let p = self.quadratic((1..=n + 3).map(|i| {
            let ii = i as i64;
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            (
                i,
                n + 3 - i,
                rat_i64(sign * ((ii - 1) * (ii - 2) - nn * (nn + 2)) * ii),
            )
        }))?;
        Ok(p.scale(&(Rat::one() / rat_i64(6))))
    }

    /// Basis of the quadratic kernel piece of the t-extension at weight n:
    /// empty for odd n, otherwise theta_n^(0), t theta_{n-6}^(0), ...,
    /// t^e theta_{n-6e}^(0) with n - 6e in {0, 2, 4}.
    pub fn vn_basis(&self, n: usize) -> Result<Vec<Polynomial>> {
        if n % 2 != 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut k = 0usize;
        while 6 * k <= n {
            let theta = self.theta0(n - 6 * k)?.embed(&self.vars_t)?;
            out.push(theta.mul(&self.t().pow(k as u32))?);
            k += 1;
        }
        Ok(out)
    }

    /// The corrected quadratic root Theta_n^(0) = theta_n^(0) - c_n t^e
    /// theta_l^(0) with n = 6e + l, where c_n is computed so the evaluation
    /// handle annihilates the result. `phi` evaluates polynomials over the
    /// t-extension.
    pub fn theta_big_root<F>(&self, n: usize, mut phi: F) -> Result<Polynomial>
    where
        F: FnMut(&Polynomial) -> Result<Polynomial>,
    {
        if n % 2 != 0 || n < 4 {
            return Err(Error::InvalidArgument(format!(
                "theta_big_root needs even n >= 4, got {n}"
            )));
        }
        let e = n / 6;
        let l = n - 6 * e;
        let theta_n = self.theta0(n)?.embed(&self.vars_t)?;
        let value = phi(&theta_n)?;
        if l == 4 {
            if !value.is_zero() {
                return Err(Error::Unsolvable(
                    "expected the image of the quadratic root to vanish".into(),
                ));
            }
            return Ok(theta_n);
        }
        let corr = self
            .theta0(l)?
            .embed(&self.vars_t)?
            .mul(&self.t().pow(e as u32))?;
        let c = if value.is_zero() {
            Rat::zero()
        } else {
            let w = phi(&corr)?;
            if w.is_zero() {
                return Err(Error::Unsolvable("correction term maps to zero".into()));
            }
            value
                .divide_exact(&w)?
                .as_constant()
                .ok_or_else(|| Error::Unsolvable("quotient is not a scalar".into()))?
        };
        let result = theta_n.sub(&corr.scale(&c))?;
        if !phi(&result)?.is_zero() {
            return Err(Error::Unsolvable("corrected root does not vanish".into()));
        }
        Ok(result)
    }

    /// Substitution x_i -> x v^i / i! into k\[x, v\].
    pub fn phi_s_x(&self, p: &Polynomial) -> Result<Polynomial> {
        let kxv = VarSet::new(["x", "v"])?;
        let x = Polynomial::var(&kxv, "x")?;
        let v = Polynomial::var(&kxv, "v")?;
        p.evaluate(&kxv, |name| {
            let i = crate::cable::omega_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.into()))?;
            Ok(x.mul(&v.pow(i as u32))?.scale(&(Rat::one() / factorial(i))))
        })
    }

    /// Substitution x_i -> v^i / i! into k\[v\].
    pub fn phi_s_plain(&self, p: &Polynomial) -> Result<Polynomial> {
        let kv = VarSet::new(["v"])?;
        let v = Polynomial::var(&kv, "v")?;
        p.evaluate(&kv, |name| {
            let i = crate::cable::omega_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.into()))?;
            Ok(v.pow(i as u32).scale(&(Rat::one() / factorial(i))))
        })
    }
}

trait ScaleSign {
    fn scale_sign(self, sign: i64) -> Self;
}

impl ScaleSign for Rat {
    fn scale_sign(self, sign: i64) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }
}
