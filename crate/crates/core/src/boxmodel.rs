//! The 2-box space of `R ⊆ R⋊G` as functions on `G`: pointwise product,
//! convolution coproduct `(x*y)(g) = δ⁻¹ Σ_h x(h) y(h⁻¹g)` with `δ = √|G|`,
//! contragredient `x̄(g) = x(g⁻¹)` and trace `|G|⁻¹ Σ_g x(g)`.
//!
//! The algebra is commutative, so positivity is coefficientwise
//! nonnegativity and `a ≼ b` is support containment.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::quad::QuadScalar;

#[derive(Debug, Clone)]
pub struct TwoBox {
    group: Arc<Group>,
    coeffs: Vec<QuadScalar>,
}

impl PartialEq for TwoBox {
    fn eq(&self, other: &Self) -> bool {
        same_elements(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

fn same_elements(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || a.elements() == b.elements()
}

fn same_group(x: &TwoBox, y: &TwoBox) -> Result<()> {
    if same_elements(&x.group, &y.group) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

impl TwoBox {
    fn n(group: &Group) -> u64 {
        group.order() as u64
    }

    pub fn zero(group: Arc<Group>) -> Self {
        let z = QuadScalar::zero(Self::n(&group));
        TwoBox { coeffs: vec![z; group.order()], group }
    }

    pub fn from_coeffs(group: Arc<Group>, coeffs: Vec<QuadScalar>) -> Result<Self> {
        let n = Self::n(&group);
        if coeffs.len() != group.order() || coeffs.iter().any(|c| c.radicand() != n) {
            return Err(Error::GroupMismatch);
        }
        Ok(TwoBox { group, coeffs })
    }

    /// Indicator function of a set of elements.
    pub fn indicator(group: Arc<Group>, set: &ElemSet) -> Self {
        let n = Self::n(&group);
        let coeffs = (0..group.order())
            .map(|x| QuadScalar::from_int(i64::from(set.contains(x)), n))
            .collect();
        TwoBox { group, coeffs }
    }

    pub fn subgroup_indicator(group: Arc<Group>, k: &Subgroup) -> Self {
        Self::indicator(group, k.set())
    }

    pub fn point(group: Arc<Group>, g: usize) -> Self {
        let set = ElemSet::from_indices(group.order(), [g]);
        Self::indicator(group, &set)
    }

    /// Jones projection: the indicator of the identity.
    pub fn e1(group: Arc<Group>) -> Self {
        Self::point(group, 0)
    }

    pub fn id(group: Arc<Group>) -> Self {
        let set = ElemSet::full(group.order());
        Self::indicator(group, &set)
    }

    /// `δ = √|G|`.
    pub fn delta(&self) -> QuadScalar {
        QuadScalar::sqrt_n(Self::n(&self.group))
    }

    pub fn delta_inv(&self) -> QuadScalar {
        let n = Self::n(&self.group);
        QuadScalar::sqrt_n(n) * QuadScalar::from_ratio(1, n as i64, n)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn coeffs(&self) -> &[QuadScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &QuadScalar {
        &self.coeffs[g]
    }

    pub fn support(&self) -> ElemSet {
        ElemSet::from_indices(
            self.coeffs.len(),
            (0..self.coeffs.len()).filter(|&g| !self.coeffs[g].is_zero()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QuadScalar::is_zero)
    }

    pub fn scale(&self, s: &QuadScalar) -> TwoBox {
        TwoBox {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &TwoBox) -> Result<TwoBox> {
        same_group(self, other)?;
        Ok(TwoBox {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn product(&self, other: &TwoBox) -> Result<TwoBox> {
        same_group(self, other)?;
        Ok(TwoBox {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn coproduct(&self, other: &TwoBox) -> Result<TwoBox> {
        same_group(self, other)?;
        let g = &self.group;
        let mut out = vec![QuadScalar::zero(Self::n(g)); g.order()];
        let right: Vec<usize> = other.support().iter().collect();
        for h in self.support().iter() {
            for &k in &right {
                // x(h) y(k) lands on g = hk
                let prod = &self.coeffs[h] * &other.coeffs[k];
                let slot = &mut out[g.mul(h, k)];
                *slot = &*slot + &prod;
            }
        }
        let d = self.delta_inv();
        Ok(TwoBox {
            group: g.clone(),
            coeffs: out.iter().map(|c| c * &d).collect(),
        })
    }

    pub fn contragredient(&self) -> TwoBox {
        let g = &self.group;
        TwoBox {
            group: g.clone(),
            coeffs: (0..g.order()).map(|x| self.coeffs[g.inv(x)].clone()).collect(),
        }
    }

    /// Adjoint; coefficients are real, so this is the identity map.
    pub fn star(&self) -> TwoBox {
        self.clone()
    }

    pub fn trace(&self) -> QuadScalar {
        let n = Self::n(&self.group);
        let sum = self
            .coeffs
            .iter()
            .fold(QuadScalar::zero(n), |acc, c| &acc + c);
        sum * QuadScalar::from_ratio(1, n as i64, n)
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(QuadScalar::is_nonnegative)
    }

    pub fn is_projection(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_one())
    }

    /// `self ≼ other`: support containment.
    pub fn preceq(&self, other: &TwoBox) -> bool {
        self.support().is_subset(&other.support())
    }

    pub fn range_projection(&self) -> Result<TwoBox> {
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok(TwoBox::indicator(self.group.clone(), &self.support()))
    }

    /// Smallest biprojection above `x`: range projections of `p + p*p`
    /// iterated from `p = R(x)` until stable. Positive functions convolve
    /// without cancellation, so supports only grow.
    pub fn biprojection_generated(&self) -> Result<TwoBox> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        let mut p = self.range_projection()?;
        loop {
            let next = p.add(&p.coproduct(&p)?)?.range_projection()?;
            if next == p {
                break;
            }
            p = next;
        }
        let gens: Vec<usize> = self.support().iter().collect();
        let expected = self.group.generate(&gens);
        if p.support() != *expected.set() {
            return Err(Error::WitnessVerificationFailed(
                "generated biprojection differs from the generated subgroup".into(),
            ));
        }
        Ok(p)
    }

    /// `e1 ≤ b = b² = b* = b̄ = λ b*b` with `λ⁻¹ = δ tr(b)`.
    pub fn is_biprojection(&self) -> bool {
        if !self.is_projection() || !self.coeffs[0].is_one() {
            return false;
        }
        if self.star() != *self || self.contragredient() != *self {
            return false;
        }
        let Ok(lambda) = (&self.delta() * &self.trace()).inv() else {
            return false;
        };
        // λ (b*b)(g) = b(g), checked one coordinate at a time
        let g = &self.group;
        let supp: Vec<usize> = self.support().iter().collect();
        let scale = &lambda * &self.delta_inv();
        let n = Self::n(g);
        (0..g.order()).all(|x| {
            let count = supp
                .iter()
                .filter(|&&h| self.coeffs[g.mul(g.inv(h), x)].is_one())
                .count();
            &scale * &QuadScalar::from_int(count as i64, n) == self.coeffs[x]
        })
    }

    /// Both exchange identities for the biprojection `b`:
    /// `(b·a₁·b) * (b·a₂·b) = b·(a₁ * (b·a₂·b))·b = b·((b·a₁·b) * a₂)·b` and
    /// `(b*a₁*b)·(b*a₂*b) = b*(a₁·(b*a₂*b))*b = b*((b*a₁*b)·a₂)*b`.
    pub fn exchange_relation_check(b: &TwoBox, a1: &TwoBox, a2: &TwoBox) -> Result<bool> {
        same_group(b, a1)?;
        same_group(b, a2)?;
        if !b.is_biprojection() {
            return Err(Error::NotBiprojection);
        }
        let dot = |x: &TwoBox, y: &TwoBox| x.product(y);
        let star = |x: &TwoBox, y: &TwoBox| x.coproduct(y);
        let bab = |a: &TwoBox| dot(&dot(b, a)?, b);
        let bsas = |a: &TwoBox| star(&star(b, a)?, b);

        let (p1, p2) = (bab(a1)?, bab(a2)?);
        let lhs = star(&p1, &p2)?;
        let mid = dot(&dot(b, &star(a1, &p2)?)?, b)?;
        let rhs = dot(&dot(b, &star(&p1, a2)?)?, b)?;
        let first = lhs == mid && mid == rhs;

        let (c1, c2) = (bsas(a1)?, bsas(a2)?);
        let lhs = dot(&c1, &c2)?;
        let mid = star(&star(b, &dot(a1, &c2)?)?, b)?;
        let rhs = star(&star(b, &dot(&c1, a2)?)?, b)?;
        let second = lhs == mid && mid == rhs;
        Ok(first && second)
    }

    /// JSON literal `{"<element>": "a+b√n", ...}` keyed by cycle notation,
    /// zero coefficients omitted.
    pub fn to_literal(&self) -> BTreeMap<String, String> {
        self.support()
            .iter()
            .map(|x| (self.group.element(x).to_string(), self.coeffs[x].to_string()))
            .collect()
    }

    pub fn from_literal(group: Arc<Group>, literal: &BTreeMap<String, String>) -> Result<TwoBox> {
        let n = Self::n(&group);
        let mut out = TwoBox::zero(group.clone());
        for (key, value) in literal {
            let perm = crate::perm::Permutation::parse_cycles(key, group.degree())?;
            let x = group
                .index_of(&perm)
                .ok_or_else(|| Error::ElementNotInGroup(key.clone()))?;
            out.coeffs[x] = QuadScalar::parse(value, n)?;
        }
        Ok(out)
    }
}

/// Some element whose point projection generates the identity biprojection.
pub fn w_cyclic_witness(group: &Arc<Group>) -> Result<Option<usize>> {
    let id = TwoBox::id(group.clone());
    for g in 0..group.order() {
        if TwoBox::point(group.clone(), g).biprojection_generated()? == id {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_w_cyclic_model(group: &Arc<Group>) -> Result<bool> {
    Ok(w_cyclic_witness(group)?.is_some())
}

/// All biprojections, by scanning inverse-closed subsets through the identity.
/// Exponential in `|G|`; intended for groups of order at most 24.
pub fn enumerate_biprojections(group: &Arc<Group>) -> Result<Vec<TwoBox>> {
    let g = group.as_ref();
    let n = g.order();
    // orbits of inversion on non-identity elements
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    seen[0] = true;
    for x in 1..n {
        if !seen[x] {
            let y = g.inv(x);
            seen[x] = true;
            seen[y] = true;
            orbits.push(if x == y { vec![x] } else { vec![x, y] });
        }
    }
    if orbits.len() > 20 {
        return Err(Error::CapExceeded {
            what: "biprojection enumeration inverse pairs",
            limit: 20,
            actual: orbits.len(),
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << orbits.len() {
        let mut set = ElemSet::new(n);
        set.insert(0);
        for (i, orbit) in orbits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &x in orbit {
                    set.insert(x);
                }
            }
        }
        let b = TwoBox::indicator(group.clone(), &set);
        if b.is_biprojection() {
            out.push(b);
        }
    }
    Ok(out)
}

/// Witnesses `a' ≼ c*b̄`, `b' ≼ ā*c` with `a·a' ≠ 0 ≠ b·b'` for projections
/// `a`, `b`, `c ≠ 0` with `c ≼ a*b`: pick `x = st ∈ supp c` with `s ∈ supp a`,
/// `t ∈ supp b`, and take the point projections at `s` and `t`.
pub fn pfr_witness(a: &TwoBox, b: &TwoBox, c: &TwoBox) -> Result<Option<(TwoBox, TwoBox)>> {
    same_group(a, b)?;
    same_group(a, c)?;
    if c.is_zero() {
        return Err(Error::Zero);
    }
    if !c.preceq(&a.coproduct(b)?) {
        return Ok(None);
    }
    let g = a.group();
    let sb: Vec<usize> = b.support().iter().collect();
    for s in a.support().iter() {
        for &t in &sb {
            if c.support().contains(g.mul(s, t)) {
                let a1 = TwoBox::point(g.clone(), s);
                let b1 = TwoBox::point(g.clone(), t);
                let ok = a1.preceq(&c.coproduct(&b.contragredient())?)
                    && b1.preceq(&a.contragredient().coproduct(c)?)
                    && !a.product(&a1)?.is_zero()
                    && !b.product(&b1)?.is_zero();
                if !ok {
                    return Err(Error::WitnessVerificationFailed("pfr witness".into()));
                }
                return Ok(Some((a1, b1)));
            }
        }
    }
    Err(Error::WitnessVerificationFailed("c below a*b but no product point".into()))
}
