//! Truncated Novikov series `Σ aᵢ t^{λᵢ}` with rational exponents and coefficients.

use crate::error::{Error, Result};
use crate::rat::{self, Q};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::fmt;

/// Cutoff `Λ`; `None` is `+∞`.
pub type Cutoff = Option<Q>;

pub fn min_cutoff(a: &Cutoff, b: &Cutoff) -> Cutoff {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(if x <= y { x.clone() } else { y.clone() }),
    }
}

fn below(e: &Q, cutoff: &Cutoff) -> bool {
    cutoff.as_ref().map_or(true, |c| e < c)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Novikov {
    terms: Vec<(Q, Q)>,
    cutoff: Cutoff,
}

impl Novikov {
    pub fn zero(cutoff: Cutoff) -> Self {
        Novikov { terms: Vec::new(), cutoff }
    }

    pub fn one(cutoff: Cutoff) -> Self {
        Self::monomial(rat::one(), rat::zero(), cutoff)
    }

    /// `coeff · t^exp`.
    pub fn monomial(coeff: Q, exp: Q, cutoff: Cutoff) -> Self {
        Self::from_terms(vec![(exp, coeff)], cutoff)
    }

    /// Terms are `(exponent, coefficient)`; repeated exponents are summed.
    pub fn from_terms(mut terms: Vec<(Q, Q)>, cutoff: Cutoff) -> Self {
        terms.retain(|(e, _)| below(e, &cutoff));
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Novikov { terms: out, cutoff }
    }

    pub fn terms(&self) -> &[(Q, Q)] {
        &self.terms
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Q, Q)> {
        self.terms.first()
    }

    /// Smallest exponent present.
    pub fn valuation(&self) -> Option<&Q> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn truncate(&self, cutoff: &Cutoff) -> Self {
        Self::from_terms(self.terms.clone(), min_cutoff(&self.cutoff, cutoff))
    }

    pub fn neg(&self) -> Self {
        Novikov {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero(self.cutoff.clone());
        }
        Novikov {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Multiplication by `t^s`.
    pub fn shift(&self, s: &Q) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
            self.cutoff.clone(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = min_cutoff(&self.cutoff, &other.cutoff);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.retain(|(e, _)| below(e, &cutoff));
        Novikov { terms: out, cutoff }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = min_cutoff(&self.cutoff, &other.cutoff);
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if below(&e, &cutoff) {
                    prod.push((e, ca * cb));
                }
            }
        }
        Self::from_terms(prod, cutoff)
    }

    /// Inverse of the finite series, truncated at the cutoff.
    ///
    /// Writes `x = a₀ t^v (1 − u)` and sums `Σ uⁿ` far enough that
    /// `x · x⁻¹ ≡ 1 mod t^Λ` for `v ≥ 0`.
    pub fn invert(&self) -> Result<Self> {
        let lam = match &self.cutoff {
            None => return Err(Error::Arithmetic("inverse of a series with infinite cutoff".into())),
            Some(l) => l.clone(),
        };
        let (v, a0) = match self.leading() {
            None => return Err(Error::Arithmetic("inverse of zero".into())),
            Some(t) => t.clone(),
        };
        let bound = &lam + v.abs();
        let wide: Cutoff = Some(bound);
        let u = Novikov::from_terms(
            self.terms[1..].iter().map(|(e, c)| (e - &v, -(c / &a0))).collect(),
            wide.clone(),
        );
        let mut sum = Novikov::one(wide.clone());
        let mut power = Novikov::one(wide.clone());
        loop {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        let inv_a0 = Q::one() / a0;
        Ok(Novikov::from_terms(
            sum.terms.iter().map(|(e, c)| (e - &v, c * &inv_a0)).collect(),
            Some(lam),
        ))
    }

    /// Equality of the parts below a common cutoff.
    pub fn eq_mod(&self, other: &Self, cutoff: &Cutoff) -> bool {
        let c = min_cutoff(&min_cutoff(&self.cutoff, &other.cutoff), cutoff);
        self.truncate(&c).terms == other.truncate(&c).terms
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|(e, c)| json!([rat::to_json(e), rat::to_json(c)])).collect::<Vec<_>>(),
            "cutoff": self.cutoff.as_ref().map_or(Value::Null, rat::to_json),
        })
    }

    pub fn from_json(v: &Value, default_cutoff: &Cutoff) -> std::result::Result<Self, String> {
        let cutoff = match v.get("cutoff") {
            None | Some(Value::Null) => default_cutoff.clone(),
            Some(Value::String(s)) if s == "inf" => None,
            Some(c) => Some(rat::from_json(c)?),
        };
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or("series needs a 'terms' array")?;
        let mut out = Vec::new();
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or("term must be [exponent, coefficient]")?;
            out.push((rat::from_json(&pair[0])?, rat::from_json(&pair[1])?));
        }
        Ok(Novikov::from_terms(out, cutoff))
    }
}

impl fmt::Display for Novikov {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() || e.is_zero() {
                write!(f, "{}", rat::fmt_q(&a))?;
            }
            if !e.is_zero() {
                write!(f, "t^{{{}}}", rat::fmt_q(e))?;
            }
        }
        if let Some(c) = &self.cutoff {
            write!(f, " mod t^{{{}}}", rat::fmt_q(c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};

    fn mono(c: i64, e: Q, cut: Cutoff) -> Novikov {
        Novikov::monomial(qi(c), e, cut)
    }

    #[test]
    fn cancel_and_merge() {
        let a = mono(1, qi(1), None);
        assert!(a.add(&a.neg()).is_zero());
        let x = mono(2, q(1, 2), None);
        let y = Novikov::from_terms(vec![(q(1, 2), qi(1)), (qi(2), qi(1))], None);
        assert_eq!(x.add(&y).terms(), &[(q(1, 2), qi(3)), (qi(2), qi(1))]);
    }

    #[test]
    fn mixed_cutoffs_truncate() {
        let x = mono(1, q(5, 2), Some(qi(3)));
        let y = mono(1, qi(1), Some(qi(2)));
        let s = x.add(&y);
        assert_eq!(s.terms(), &[(qi(1), qi(1))]);
        assert_eq!(s.cutoff(), &Some(qi(2)));
    }

    #[test]
    fn telescoping_product() {
        let c = Some(qi(3));
        let a = Novikov::from_terms(vec![(qi(0), qi(1)), (qi(1), qi(-1))], c.clone());
        let b = Novikov::from_terms(vec![(qi(0), qi(1)), (qi(1), qi(1)), (qi(2), qi(1))], c.clone());
        assert_eq!(a.mul(&b), Novikov::one(c));
        let p = mono(1, q(1, 32), None).mul(&mono(2, q(9, 32), None));
        assert_eq!(p.terms(), &[(q(10, 32), qi(2))]);
    }

    #[test]
    fn geometric_inverse() {
        let x = Novikov::from_terms(vec![(qi(0), qi(1)), (q(1, 2), qi(-1))], Some(qi(2)));
        let y = x.invert().unwrap();
        let want: Vec<_> = [0, 1, 2, 3].iter().map(|k| (q(*k, 2), qi(1))).collect();
        assert_eq!(y.terms(), &want[..]);
        let m = mono(1, q(3, 4), Some(qi(2))).invert().unwrap();
        assert_eq!(m.terms(), &[(q(-3, 4), qi(1))]);
        assert!(Novikov::zero(Some(qi(1))).invert().is_err());
        assert!(mono(1, qi(0), None).invert().is_err());
    }

    #[test]
    fn display() {
        let x = Novikov::from_terms(vec![(q(1, 32), qi(-1)), (q(9, 32), qi(1))], Some(qi(1)));
        assert_eq!(x.to_string(), "-t^{1/32} + t^{9/32} mod t^{1}");
    }
}
