//! Finite prefixes of D-cables.
//!
//! A D-cable is a sequence (s_0, s_1, ...) with D s_0 = 0, s_0 != 0 and
//! D s_j = s_{j-1}. The library works with finite prefixes and certifies
//! their laws at construction; it never claims a prefix extends to an
//! infinite cable.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarSet};

/// A verified finite prefix (s_0, ..., s_N) of a D-cable.
#[derive(Clone, Debug)]
pub struct CablePrefix {
    derivation: Derivation,
    elements: Vec<Polynomial>,
}

/// Outcome of re-checking the cable laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CableReport {
    Ok,
    /// First failing index with a description of the failed law.
    Violation {
        index: usize,
        reason: String,
    },
}

impl CableReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, CableReport::Ok)
    }
}

/// Checks the cable laws without constructing a prefix.
pub fn check_cable(derivation: &Derivation, elements: &[Polynomial]) -> Result<CableReport> {
    if elements.is_empty() {
        return Ok(CableReport::Violation {
            index: 0,
            reason: "empty prefix".into(),
        });
    }
    if elements[0].is_zero() {
        return Ok(CableReport::Violation {
            index: 0,
            reason: "zero root".into(),
        });
    }
    for (j, e) in elements.iter().enumerate() {
        if e.vars() != derivation.vars() {
            return Err(Error::VarSetMismatch);
        }
        let d = derivation.apply(e)?;
        if j == 0 {
            if !d.is_zero() {
                return Ok(CableReport::Violation {
                    index: 0,
                    reason: "root is not in the kernel".into(),
                });
            }
        } else if d != elements[j - 1] {
            return Ok(CableReport::Violation {
                index: j,
                reason: format!("D(s_{j}) != s_{}", j - 1),
            });
        }
    }
    Ok(CableReport::Ok)
}

impl CablePrefix {
    /// Builds and verifies a prefix; all cable laws are checked.
    pub fn new(derivation: Derivation, elements: Vec<Polynomial>) -> Result<Self> {
        match check_cable(&derivation, &elements)? {
            CableReport::Ok => Ok(CablePrefix {
                derivation,
                elements,
            }),
            CableReport::Violation { index, reason } => {
                Err(Error::CableViolation { index, msg: reason })
            }
        }
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn vars(&self) -> &VarSet {
        self.derivation.vars()
    }

    /// Number of stored elements (one more than the edge count).
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, j: usize) -> Result<&Polynomial> {
        self.elements.get(j).ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "cable prefix has {} elements, index {j} requested",
                self.elements.len()
            ))
        })
    }

    pub fn root(&self) -> &Polynomial {
        &self.elements[0]
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// Re-checks all invariants.
    pub fn verify(&self) -> CableReport {
        check_cable(&self.derivation, &self.elements).unwrap_or(CableReport::Violation {
            index: 0,
            reason: "variable set mismatch".into(),
        })
    }

    /// Truncates to the first `len` elements.
    pub fn truncate(&self, len: usize) -> Result<CablePrefix> {
        if len == 0 || len > self.elements.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate a prefix of {} elements to {len}",
                self.elements.len()
            )));
        }
        Ok(CablePrefix {
            derivation: self.derivation.clone(),
            elements: self.elements[..len].to_vec(),
        })
    }

    /// Elementwise product with a non-zero kernel element.
    pub fn scale(&self, f: &Polynomial) -> Result<CablePrefix> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("scale by zero".into()));
        }
        if !self.derivation.apply(f)?.is_zero() {
            return Err(Error::InvalidArgument(
                "scale factor must lie in the kernel".into(),
            ));
        }
        let elements = self
            .elements
            .iter()
            .map(|e| e.mul(f))
            .collect::<Result<Vec<_>>>()?;
        CablePrefix::new(self.derivation.clone(), elements)
    }

    /// Elementwise sum; prefixes are truncated to the shorter length and
    /// the summed root must be non-zero.
    pub fn add(&self, other: &CablePrefix) -> Result<CablePrefix> {
        if self.derivation != other.derivation {
            return Err(Error::InvalidArgument(
                "cables live under different derivations".into(),
            ));
        }
        let n = self.len().min(other.len());
        let root = self.elements[0].add(&other.elements[0])?;
        if root.is_zero() {
            return Err(Error::CableViolation {
                index: 0,
                msg: "sum has zero root".into(),
            });
        }
        let elements = (0..n)
            .map(|j| self.elements[j].add(&other.elements[j]))
            .collect::<Result<Vec<_>>>()?;
        CablePrefix::new(self.derivation.clone(), elements)
    }

    /// m-shifted sum: `u_n = s_n` for `n < m`, `u_n = s_n + t_{n-m}` for
    /// `n >= m`. The result has `min(len(self), m + len(other))` elements.
    pub fn shifted_sum(&self, other: &CablePrefix, m: usize) -> Result<CablePrefix> {
        if m == 0 {
            return Err(Error::InvalidArgument("shift must be at least 1".into()));
        }
        if self.derivation != other.derivation {
            return Err(Error::InvalidArgument(
                "cables live under different derivations".into(),
            ));
        }
        if self.len() < m {
            return Err(Error::InvalidArgument(format!(
                "shifted sum needs at least {m} elements, have {}",
                self.len()
            )));
        }
        let n = self.len().min(m + other.len());
        let mut elements = Vec::with_capacity(n);
        for j in 0..n {
            if j < m {
                elements.push(self.elements[j].clone());
            } else {
                elements.push(self.elements[j].add(&other.elements[j - m])?);
            }
        }
        CablePrefix::new(self.derivation.clone(), elements)
    }

    /// Stabilized limit of shifted sums: starting from `cables[0]`, adds
    /// `coeffs[i] * cables[i+1]` at shift `shifts[i]`. Shifts are strictly
    /// increasing, so every output index stabilizes once shifts pass it;
    /// the output has `out_len + 1` elements (indices `0..=out_len`).
    pub fn limit_combine(
        cables: &[CablePrefix],
        shifts: &[usize],
        coeffs: &[Polynomial],
        out_len: usize,
    ) -> Result<CablePrefix> {
        if cables.is_empty() {
            return Err(Error::InvalidArgument("no cables given".into()));
        }
        if shifts.len() != cables.len() - 1 || coeffs.len() != cables.len() - 1 {
            return Err(Error::InvalidArgument(
                "need one shift and one coefficient per cable after the first".into(),
            ));
        }
        if shifts.windows(2).any(|w| w[0] >= w[1]) || shifts.first().is_some_and(|&m| m == 0) {
            return Err(Error::InvalidArgument(
                "shifts must be strictly increasing positive integers".into(),
            ));
        }
        if cables[0].len() <= out_len {
            return Err(Error::InvalidArgument(format!(
                "base cable has {} elements, need {}",
                cables[0].len(),
                out_len + 1
            )));
        }
        let mut acc = cables[0].truncate(out_len + 1)?;
        for (i, (&m, c)) in shifts.iter().zip(coeffs).enumerate() {
            if m > out_len {
                // Later shifts cannot touch the requested indices.
                break;
            }
            let scaled = cables[i + 1].scale(c)?;
            if scaled.len() < out_len + 1 - m {
                return Err(Error::InvalidArgument(format!(
                    "cable {} has {} elements, need {}",
                    i + 1,
                    scaled.len(),
                    out_len + 1 - m
                )));
            }
            acc = acc.shifted_sum(&scaled, m)?;
            acc = acc.truncate(out_len + 1)?;
        }
        Ok(acc)
    }

    /// Evaluates a polynomial in `x0..xM` at the cable elements:
    /// `P(s_0, ..., s_M)`.
    pub fn phi_map(&self, p: &Polynomial) -> Result<Polynomial> {
        let target = self.vars().clone();
        let elements = &self.elements;
        p.evaluate(&target, |name| {
            let idx = omega_index(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
            elements.get(idx).cloned().ok_or_else(|| {
                Error::IndexOutOfRange(format!(
                    "cable prefix has {} elements, x{idx} requested",
                    elements.len()
                ))
            })
        })
    }

    /// Elementwise `exp(f D)`; the result is re-verified.
    pub fn exp_transport(&self, f: &Polynomial, bound: usize) -> Result<CablePrefix> {
        let elements = self
            .elements
            .iter()
            .map(|e| self.derivation.exp_map(f, e, bound))
            .collect::<Result<Vec<_>>>()?;
        CablePrefix::new(self.derivation.clone(), elements)
    }
}

/// Parses an omega variable name `x<k>` into its index.
pub fn omega_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || rest.bytes().any(|b| !b.is_ascii_digit()) {
        return None;
    }
    // Reject leading zeros except "x0" itself so names stay canonical.
    if rest.len() > 1 && rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_text;
    use crate::rat::{rat_frac, rat_i64};
    use alloc::vec;

    fn xv_vars() -> VarSet {
        VarSet::new(["x", "v"]).unwrap()
    }

    fn ddv(vars: &VarSet) -> Derivation {
        Derivation::partial(vars, "v").unwrap()
    }

    /// (1, v, v^2/2, ..., v^n/n!) under d/dv.
    fn unit_cable(vars: &VarSet, n: usize) -> CablePrefix {
        let v = parse_text(vars, "v").unwrap();
        let elements = (0..=n)
            .map(|i| {
                v.pow(i as u32)
                    .scale(&(rat_i64(1) / crate::rat::factorial(i)))
            })
            .collect();
        CablePrefix::new(ddv(vars), elements).unwrap()
    }

    #[test]
    fn verify_examples() {
        let vars = xv_vars();
        let d = ddv(&vars);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        let c = CablePrefix::new(d.clone(), vec![p("x"), p("x*v")]).unwrap();
        assert!(c.verify().is_ok());
        // (x, x) violates at index 1: d(x)/dv = 0 != x.
        match CablePrefix::new(d.clone(), vec![p("x"), p("x")]) {
            Err(Error::CableViolation { index: 1, .. }) => {}
            other => panic!("expected violation at 1, got {other:?}"),
        }
        match CablePrefix::new(d, vec![Polynomial::zero(&vars), p("x")]) {
            Err(Error::CableViolation { index: 0, .. }) => {}
            other => panic!("expected violation at 0, got {other:?}"),
        }
    }

    #[test]
    fn scale_examples() {
        let vars = xv_vars();
        let c = unit_cable(&vars, 2);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        // Scaling by x gives the generators of k[x, xv, xv^2/2, ...].
        let xc = c.scale(&p("x")).unwrap();
        assert_eq!(xc.element(0).unwrap(), &p("x"));
        assert_eq!(xc.element(1).unwrap(), &p("x*v"));
        assert_eq!(xc.element(2).unwrap(), &p("1/2*x*v^2"));
        assert!(xc.verify().is_ok());
        let one = Polynomial::one(&vars);
        assert_eq!(c.scale(&one).unwrap().elements(), c.elements());
        // v is not in the kernel.
        assert!(c.scale(&p("v")).is_err());
    }

    #[test]
    fn add_examples() {
        let vars = xv_vars();
        let c = unit_cable(&vars, 2);
        let doubled = c.add(&c).unwrap();
        assert_eq!(
            doubled.element(1).unwrap(),
            &parse_text(&vars, "2*v").unwrap()
        );
        // c + (-1)c has zero root.
        let neg = c.scale(&Polynomial::constant(&vars, rat_i64(-1))).unwrap();
        assert!(matches!(
            c.add(&neg),
            Err(Error::CableViolation { index: 0, .. })
        ));
    }

    #[test]
    fn shifted_sum_examples() {
        let vars = xv_vars();
        let p = |s: &str| parse_text(&vars, s).unwrap();
        let c = unit_cable(&vars, 4);
        // s +_2 x*s: t_2 = x + v^2/2.
        let xs = c.scale(&p("x")).unwrap();
        let t = c.shifted_sum(&xs, 2).unwrap();
        assert_eq!(t.element(0).unwrap(), &p("1"));
        assert_eq!(t.element(1).unwrap(), &p("v"));
        assert_eq!(t.element(2).unwrap(), &p("x + 1/2*v^2"));
        assert!(t.verify().is_ok());
        // Shift beyond the other cable's reach leaves the overlap unchanged.
        let short = unit_cable(&vars, 0).scale(&p("x")).unwrap();
        let u = c.shifted_sum(&short, 3).unwrap();
        assert_eq!(u.element(2).unwrap(), c.element(2).unwrap());
        assert_eq!(u.len(), 4);
    }

    #[test]
    fn limit_combine_examples() {
        let vars = xv_vars();
        let c = unit_cable(&vars, 5);
        let single = CablePrefix::limit_combine(&[c.clone()], &[], &[], 3).unwrap();
        assert_eq!(single.elements(), c.truncate(4).unwrap().elements());
        // Two cables with one shift collapse to the shifted sum.
        let p = |s: &str| parse_text(&vars, s).unwrap();
        let two = CablePrefix::limit_combine(&[c.clone(), c.clone()], &[2], &[p("x")], 3).unwrap();
        let direct = c
            .shifted_sum(&c.scale(&p("x")).unwrap(), 2)
            .unwrap()
            .truncate(4)
            .unwrap();
        assert_eq!(two.elements(), direct.elements());
        // Stabilization: a correction at a shift beyond out_len does not
        // change the prefix.
        let three = CablePrefix::limit_combine(
            &[c.clone(), c.clone(), c.clone()],
            &[2, 5],
            &[p("x"), p("x^2")],
            3,
        )
        .unwrap();
        assert_eq!(three.elements(), two.elements());
    }

    #[test]
    fn phi_map_examples() {
        let vars = xv_vars();
        let c = unit_cable(&vars, 3)
            .scale(&parse_text(&vars, "x").unwrap())
            .unwrap();
        let om = VarSet::new(["x0", "x1", "x2"]).unwrap();
        let theta = parse_text(&om, "2*x0*x2 - x1^2").unwrap();
        // Quadratic roots vanish on the x*s cable.
        assert!(c.phi_map(&theta).unwrap().is_zero());
        let x0 = parse_text(&om, "x0").unwrap();
        assert_eq!(c.phi_map(&x0).unwrap(), *c.root());
        // Prefix too short.
        let om5 = VarSet::new(["x0", "x5"]).unwrap();
        let too_far = parse_text(&om5, "x5").unwrap();
        assert!(c.phi_map(&too_far).is_err());
    }

    #[test]
    fn phi_map_intertwines_down_operator() {
        // D(phi(P)) = phi(Delta P) on a sample P.
        let vars = xv_vars();
        let c = unit_cable(&vars, 4)
            .scale(&parse_text(&vars, "x").unwrap())
            .unwrap();
        let names: Vec<String> = (0..5).map(|i| format!("x{i}")).collect();
        let om = VarSet::new(names.clone()).unwrap();
        let mut images: Vec<(&str, Polynomial)> = Vec::new();
        for i in 1..5 {
            images.push((
                names[i].as_str(),
                parse_text(&om, &format!("x{}", i - 1)).unwrap(),
            ));
        }
        let delta = Derivation::new(&om, &images).unwrap();
        let p = parse_text(&om, "3*x1*x4 - x2^2*x0 + 5*x3").unwrap();
        let lhs = c.derivation().apply(&c.phi_map(&p).unwrap()).unwrap();
        let rhs = c.phi_map(&delta.apply(&p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_transport_examples() {
        let vars = xv_vars();
        let c = unit_cable(&vars, 2);
        let p = |s: &str| parse_text(&vars, s).unwrap();
        let same = c.exp_transport(&Polynomial::zero(&vars), 64).unwrap();
        assert_eq!(same.elements(), c.elements());
        // Transport by x: elements become (1, v+x, (v+x)^2/2).
        let t = c.exp_transport(&p("x"), 64).unwrap();
        assert_eq!(t.element(0).unwrap(), &p("1"));
        assert_eq!(t.element(1).unwrap(), &p("v + x"));
        let vx = p("v + x");
        assert_eq!(
            t.element(2).unwrap(),
            &vx.mul(&vx).unwrap().scale(&rat_frac(1, 2))
        );
        assert!(t.verify().is_ok());
    }

    #[test]
    fn omega_index_parsing() {
        assert_eq!(omega_index("x0"), Some(0));
        assert_eq!(omega_index("x17"), Some(17));
        assert_eq!(omega_index("x"), None);
        assert_eq!(omega_index("x01"), None);
        assert_eq!(omega_index("y3"), None);
        assert_eq!(omega_index("t"), None);
    }
}
