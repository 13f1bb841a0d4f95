//! Massey brackets, filtered deformations, and the deformation families of
//! `𝔰 ⊗ A + g ⊗ U + KD`, including the 15-dimensional algebras.
//!
//! For a bracket `{x,y} = [x,y] + μ(x,y)` the Jacobi identity is equivalent
//! to `dμ + [[μ,μ]] = 0`, where `[[φ,ψ]](x,y,z) = φ(ψ(x,y),z) + φ(ψ(z,x),y) +
//! φ(ψ(y,z),x)` is the half bracket. In characteristic 2 the symmetrized
//! bracket `[[φ,φ]] + [[φ,φ]]` vanishes identically, so the obstruction to
//! prolonging a single cocycle `φ` is the class of `[[φ,φ]]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{AlgebraTable, LinearMap, TableBuilder, ValidationReport};
use crate::cohomology::{cochain_space, is_cocycle, preimage_in_weight, Cochain, Coefficients};
use crate::comm::{check_derivation_and_invariance, pivot_complement, squares_subalgebra, xi_lambda, xi_space};
use crate::constructions::{
    divided_powers, divided_powers_extension, special_derivation, standard_extension_spec, ExtensionLayout, E, F, H,
};
use crate::error::{Error, Result};
use crate::gf2::{solve_homogeneous, BitVector, SpanSolver, Subspace};

fn require_adjoint2(l: &AlgebraTable, c: &Cochain) -> Result<()> {
    if c.degree() != 2 || c.coefficients() != Coefficients::Adjoint || c.space().dim_l() != l.dim() {
        return Err(Error::InvalidParameter("expected an adjoint 2-cochain on this algebra".into()));
    }
    Ok(())
}

/// `[[φ,ψ]](x,y,z) = φ(ψ(x,y),z) + φ(ψ(z,x),y) + φ(ψ(y,z),x)`.
pub fn massey_half(l: &AlgebraTable, phi: &Cochain, psi: &Cochain) -> Result<Cochain> {
    require_adjoint2(l, phi)?;
    require_adjoint2(l, psi)?;
    let space = cochain_space(l, Coefficients::Adjoint, 3)?;
    let n = l.dim();
    let mut out = Cochain::zero(space.clone());
    for r in 0..space.tuple_count() {
        let t = space.tuple(r);
        let (x, y, z) = (t[0], t[1], t[2]);
        let mut v = BitVector::zeros(n);
        for (p, q, s) in [(x, y, z), (z, x, y), (y, z, x)] {
            let inner = psi.value(&[p, q]);
            if !inner.is_zero() {
                v.xor_assign(&phi.eval(&[&inner, &BitVector::unit(n, s)])?);
            }
        }
        if !v.is_zero() {
            out.set_value(t, &v)?;
        }
    }
    Ok(out)
}

/// `[[φ,ψ]] + [[ψ,φ]]`.
pub fn obstruction_pair(l: &AlgebraTable, phi: &Cochain, psi: &Cochain) -> Result<Cochain> {
    massey_half(l, phi, psi)?.add(&massey_half(l, psi, phi)?)
}

/// The adjoint 2-cocycles `f∧h ↦ e` (weight −2) and `e∧h ↦ f` (weight 2)
/// of `𝔰`.
pub fn sl2_weight_cocycles(s: &AlgebraTable) -> Result<(Cochain, Cochain)> {
    if s.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: s.dim() });
    }
    let space = cochain_space(s, Coefficients::Adjoint, 2)?;
    let mut low = Cochain::zero(space.clone());
    low.set_value(&[F, H], &BitVector::unit(3, E))?;
    let mut high = Cochain::zero(space);
    high.set_value(&[E, H], &BitVector::unit(3, F))?;
    Ok((low, high))
}

#[derive(Clone, Debug)]
pub struct Deformation {
    pub table: AlgebraTable,
    pub report: ValidationReport,
    /// Whether every added term lies strictly above the weight of its
    /// arguments, so that the associated graded algebra is the input.
    /// `None` when the input is ungraded.
    pub filtration_ok: Option<bool>,
}

impl Deformation {
    pub fn jacobi_ok(&self) -> bool {
        self.report.is_valid()
    }
}

/// `{x,y} = [x,y] + Σ μ_k(x,y)` without any weight requirement.
pub fn perturb(l: &AlgebraTable, mus: &[Cochain]) -> Result<Deformation> {
    let n = l.dim();
    for mu in mus {
        require_adjoint2(l, mu)?;
    }
    let mut b = TableBuilder::from_table(l).no_weights();
    for i in 0..n {
        for j in (i + 1)..n {
            for mu in mus {
                let v = mu.value(&[i, j]);
                if !v.is_zero() {
                    b.add(i, j, &v);
                }
            }
        }
    }
    let table = b.build().with_provenance(json!({
        "construct": "deform",
        "base": l.provenance().cloned().unwrap_or(serde_json::Value::Null),
    }));
    let filtration_ok = l.weights().map(|w| {
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let diff = table.product(i, j) + l.product(i, j);
                diff.ones().all(|m| w[m] > w[i] + w[j])
            })
        })
    });
    let report = table.validate();
    Ok(Deformation {
        table,
        report,
        filtration_ok,
    })
}

/// Filtered deformation of a graded algebra by cochains of positive weight.
pub fn deform(l: &AlgebraTable, mus: &[Cochain]) -> Result<Deformation> {
    if l.weights().is_none() {
        return Err(Error::NoGrading);
    }
    for mu in mus {
        require_adjoint2(l, mu)?;
        if let Some(&w) = mu.weight_support(l)?.iter().next() {
            if w <= 0 {
                return Err(Error::InvalidParameter(format!("deformation term of weight {w}")));
            }
        }
    }
    perturb(l, mus)
}

#[derive(Clone, Debug)]
pub struct Prolongation {
    /// `μ₂` with `dμ₂ = [[μ₁,μ₁]]` in twice the weight of `μ₁`, if any.
    pub mu2: Option<Cochain>,
    /// With `μ₂` found: whether `[[μ₁,μ₂]] + [[μ₂,μ₁]]` and `[[μ₂,μ₂]]`
    /// vanish, so that `[ , ] + μ₁ + μ₂` satisfies Jacobi exactly.
    pub higher_vanish: Option<bool>,
}

/// Second-order prolongation of a homogeneous positive-weight cocycle.
pub fn prolong_check(l: &AlgebraTable, mu1: &Cochain) -> Result<Prolongation> {
    require_adjoint2(l, mu1)?;
    if !is_cocycle(l, mu1)? {
        return Err(Error::NotACocycle);
    }
    let Some(w) = mu1.homogeneous_weight(l)? else {
        return Ok(Prolongation {
            mu2: Some(Cochain::zero(mu1.space().clone())),
            higher_vanish: Some(true),
        });
    };
    if w <= 0 {
        return Err(Error::InvalidParameter(format!("cocycle of weight {w}")));
    }
    let obs = massey_half(l, mu1, mu1)?;
    let mu2 = preimage_in_weight(l, &obs, Some(2 * w))?;
    let higher_vanish = match &mu2 {
        Some(m2) => Some(obstruction_pair(l, mu1, m2)?.is_zero() && massey_half(l, m2, m2)?.is_zero()),
        None => None,
    };
    Ok(Prolongation { mu2, higher_vanish })
}

/// Where a basis index of the extension lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `x_s ⊗ a_t`.
    Current { s: usize, t: usize },
    /// `g ⊗ u_l`.
    Outer { l: usize },
    /// The derivation `D`.
    Inner,
}

/// `𝔰 ⊗ A + g ⊗ U + KD` together with the data needed to write cochains on it.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    a: AlgebraTable,
    d: LinearMap,
    u: Subspace,
    table: AlgebraTable,
    layout: ExtensionLayout,
    u_solver: SpanSolver,
}

impl ExtensionContext {
    pub fn new(a: &AlgebraTable, d: &LinearMap, label: &str, u: &Subspace) -> Result<Self> {
        check_derivation_and_invariance(a, d, u)?;
        let spec = standard_extension_spec(a, Some((d, label)), u)?;
        let layout = spec.layout();
        let table = spec.extend()?;
        Ok(Self {
            a: a.clone(),
            d: d.clone(),
            u: u.clone(),
            table,
            layout,
            u_solver: SpanSolver::new(a.dim(), u.basis())?,
        })
    }

    /// `A = O₁(n)`, `D = ∂`.
    pub fn divided_powers(n: u32, u: &Subspace) -> Result<Self> {
        Self::new(&divided_powers(n)?, &special_derivation(n)?, "∂", u)
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn algebra(&self) -> &AlgebraTable {
        &self.a
    }

    pub fn derivation(&self) -> &LinearMap {
        &self.d
    }

    pub fn u(&self) -> &Subspace {
        &self.u
    }

    pub fn layout(&self) -> &ExtensionLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    /// `x_s ⊗ a`.
    pub fn cur(&self, s: usize, a: &BitVector) -> BitVector {
        self.layout.embed_current(&BitVector::unit(3, s), a)
    }

    /// `g ⊗ u`; fails when `u ∉ U`.
    pub fn g(&self, u: &BitVector) -> Result<BitVector> {
        if u.is_zero() {
            return Ok(BitVector::zeros(self.dim()));
        }
        let coords = self
            .u_solver
            .express(u)
            .ok_or_else(|| Error::InvalidParameter(format!("{} is not in U", self.a.format_vector(u))))?;
        Ok(self.layout.embed_outer(0, &coords))
    }

    pub fn d_elem(&self) -> BitVector {
        BitVector::unit(self.dim(), self.layout.inner_index(0))
    }

    pub fn part(&self, idx: usize) -> Part {
        let na = self.layout.coeff_dim;
        if idx < 3 * na {
            Part::Current { s: idx / na, t: idx % na }
        } else if idx < self.layout.inner_index(0) {
            Part::Outer { l: idx - 3 * na }
        } else {
            Part::Inner
        }
    }

    fn mul(&self, x: &BitVector, y: &BitVector) -> BitVector {
        self.a.multiply(x, y).expect("vectors of A")
    }

    fn basis(&self, t: usize) -> BitVector {
        self.a.basis(t)
    }

    /// Builds an adjoint 2-cochain from its values on ordered basis pairs
    /// `p < q`.
    fn cochain<F>(&self, mut value: F) -> Result<Cochain>
    where
        F: FnMut(Part, Part) -> Result<BitVector>,
    {
        let space = cochain_space(&self.table, Coefficients::Adjoint, 2)?;
        let mut c = Cochain::zero(space.clone());
        for r in 0..space.tuple_count() {
            let t = space.tuple(r);
            let v = value(self.part(t[0]), self.part(t[1]))?;
            if !v.is_zero() {
                c.set_value(t, &v)?;
            }
        }
        Ok(c)
    }

    /// `(e⊗a) ∧ (h⊗b) ↦ f ⊗ abv`.
    pub fn cocycle_eh(&self, v: &BitVector) -> Result<Cochain> {
        self.cochain(|p, q| {
            Ok(match (p, q) {
                (Part::Current { s: E, t: a }, Part::Current { s: H, t: b }) => {
                    self.cur(F, &self.mul(&self.mul(&self.basis(a), &self.basis(b)), v))
                }
                _ => BitVector::zeros(self.dim()),
            })
        })
    }

    /// `(e⊗a) ∧ D ↦ f ⊗ aw`.
    pub fn cocycle_ed(&self, w: &BitVector) -> Result<Cochain> {
        self.cochain(|p, q| {
            Ok(match (p, q) {
                (Part::Current { s: E, t: a }, Part::Inner) => self.cur(F, &self.mul(&self.basis(a), w)),
                _ => BitVector::zeros(self.dim()),
            })
        })
    }

    /// The cocycle attached to a form `ξ`:
    /// `(e⊗a)∧(e⊗b) ↦ h⊗Λ(a,b) + ξ(ab)D`, `(e⊗a)∧(h⊗b) ↦ f⊗ξ(b)D(a)`,
    /// `(e⊗a)∧(f⊗b) ↦ g⊗Λ(a,b)`, `(h⊗a)∧(h⊗b) ↦ g⊗Λ(a,b)`, with
    /// `Λ(a,b) = ξ(a)D(b) + ξ(b)D(a)`.
    pub fn cocycle_xi(&self, xi: &BitVector) -> Result<Cochain> {
        let lam = |a: usize, b: usize| xi_lambda(xi, &self.d, &self.basis(a), &self.basis(b));
        self.cochain(|p, q| {
            let zero = BitVector::zeros(self.dim());
            Ok(match (p, q) {
                (Part::Current { s: E, t: a }, Part::Current { s: E, t: b }) => {
                    let mut v = self.cur(H, &lam(a, b));
                    if xi.dot(&self.mul(&self.basis(a), &self.basis(b))) {
                        v.xor_assign(&self.d_elem());
                    }
                    v
                }
                (Part::Current { s: E, t: a }, Part::Current { s: H, t: b }) => {
                    if xi.get(b) {
                        self.cur(F, &self.d.image_of_basis(a))
                    } else {
                        zero
                    }
                }
                (Part::Current { s: E, t: a }, Part::Current { s: F, t: b })
                | (Part::Current { s: H, t: a }, Part::Current { s: H, t: b }) => self.g(&lam(a, b))?,
                _ => zero,
            })
        })
    }

    /// `(e⊗a) ∧ (e⊗b) ↦ g ⊗ λ(ab)`.
    pub fn lambda_cochain(&self, lambda: &LinearMap) -> Result<Cochain> {
        self.cochain(|p, q| {
            Ok(match (p, q) {
                (Part::Current { s: E, t: a }, Part::Current { s: E, t: b }) => {
                    self.g(&lambda.apply(&self.mul(&self.basis(a), &self.basis(b)))?)?
                }
                _ => BitVector::zeros(self.dim()),
            })
        })
    }
}

/// Parameters of a deformation of `𝔰 ⊗ A + g ⊗ U + KD`: `v ∈ A^D`, `w ∈ A`,
/// a form `ξ` (values on the basis of `A`), and `λ: A → U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParams {
    pub v: BitVector,
    pub w: BitVector,
    pub xi: BitVector,
    pub lambda: LinearMap,
}

impl DeformationParams {
    pub fn zero(n: usize) -> Self {
        Self {
            v: BitVector::zeros(n),
            w: BitVector::zeros(n),
            xi: BitVector::zeros(n),
            lambda: LinearMap::zero(n, n),
        }
    }

    pub fn to_json(&self) -> ParamsJson {
        ParamsJson {
            v: self.v.ones().collect(),
            w: self.w.ones().collect(),
            xi: self.xi.ones().collect(),
            lambda: (0..self.lambda.source()).map(|j| self.lambda.image_of_basis(j).ones().collect()).collect(),
        }
    }
}

/// Parameters as index lists: `lambda[j]` lists the support of `λ(b_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub xi: Vec<usize>,
    #[serde(default)]
    pub lambda: Vec<Vec<usize>>,
}

impl ParamsJson {
    pub fn into_params(self, n: usize) -> Result<DeformationParams> {
        let vec = |idx: &[usize]| -> Result<BitVector> {
            if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad, bound: n });
            }
            Ok(BitVector::from_indices(n, idx.iter().copied()))
        };
        let lambda = if self.lambda.is_empty() {
            LinearMap::zero(n, n)
        } else {
            if self.lambda.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: self.lambda.len(),
                });
            }
            let images = self.lambda.iter().map(|i| vec(i)).collect::<Result<Vec<_>>>()?;
            LinearMap::from_images(n, n, &images)?
        };
        Ok(DeformationParams {
            v: vec(&self.v)?,
            w: vec(&self.w)?,
            xi: vec(&self.xi)?,
            lambda,
        })
    }
}

/// First basis triple violating
/// `(ξ(ab)D(c) + ξ(ca)D(b) + ξ(bc)D(a))v + (ξ(ab)c + ξ(ca)b + ξ(bc)a)w = cλ(ab) + bλ(ca) + aλ(bc)`.
pub fn triple_constraint(ctx: &ExtensionContext, p: &DeformationParams) -> Option<(usize, usize, usize)> {
    let n = ctx.a.dim();
    let (d, xi) = (&ctx.d, &p.xi);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (va, vb, vc) = (ctx.basis(a), ctx.basis(b), ctx.basis(c));
                let (ab, ca, bc) = (ctx.mul(&va, &vb), ctx.mul(&vc, &va), ctx.mul(&vb, &vc));
                let mut dv = BitVector::zeros(n);
                let mut cw = BitVector::zeros(n);
                for (s, x) in [(&ab, &vc), (&ca, &vb), (&bc, &va)] {
                    if xi.dot(s) {
                        dv.xor_assign(&d.apply(x).expect("shape"));
                        cw.xor_assign(x);
                    }
                }
                let mut lhs = ctx.mul(&dv, &p.v);
                lhs.xor_assign(&ctx.mul(&cw, &p.w));
                for (x, s) in [(&vc, &ab), (&vb, &ca), (&va, &bc)] {
                    lhs.xor_assign(&ctx.mul(x, &p.lambda.apply(s).expect("shape")));
                }
                if !lhs.is_zero() {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// First basis element violating `ξ(a)D(w) + ξ(w)D(a) = λ(D(a)) + D(λ(a))`.
pub fn derivation_constraint(ctx: &ExtensionContext, p: &DeformationParams) -> Option<usize> {
    let n = ctx.a.dim();
    let d = &ctx.d;
    (0..n).find(|&a| {
        let va = ctx.basis(a);
        let mut v = xi_lambda(&p.xi, d, &va, &p.w);
        v.xor_assign(&p.lambda.apply(&d.apply(&va).expect("shape")).expect("shape"));
        v.xor_assign(&d.apply(&p.lambda.apply(&va).expect("shape")).expect("shape"));
        !v.is_zero()
    })
}

/// First basis triple violating `(ξ(ab)c + ξ(ca)b + ξ(bc)a)w = 0`.
pub fn vanishing_constraint(ctx: &ExtensionContext, p: &DeformationParams) -> Option<(usize, usize, usize)> {
    let n = ctx.a.dim();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (va, vb, vc) = (ctx.basis(a), ctx.basis(b), ctx.basis(c));
                let mut cw = BitVector::zeros(n);
                for (s, x) in [(ctx.mul(&va, &vb), &vc), (ctx.mul(&vc, &va), &vb), (ctx.mul(&vb, &vc), &va)] {
                    if p.xi.dot(&s) {
                        cw.xor_assign(x);
                    }
                }
                if !ctx.mul(&cw, &p.w).is_zero() {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Checks the standing assumptions on the parameters (not the two
/// constraints): `D(v) = 0`, `ξ ∈ Ξ_{D,U}`, `λ(A^[2]) = 0`, `λ(A) ⊆ U`.
pub fn check_params(ctx: &ExtensionContext, p: &DeformationParams) -> Result<()> {
    let n = ctx.a.dim();
    for (name, v) in [("v", &p.v), ("w", &p.w), ("xi", &p.xi)] {
        if v.len() != n {
            return Err(Error::InvalidParameter(format!("{name} has length {}, expected {n}", v.len())));
        }
    }
    if p.lambda.source() != n || p.lambda.target() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.lambda.source(),
        });
    }
    if !ctx.d.apply(&p.v)?.is_zero() {
        return Err(Error::InvalidParameter("D(v) != 0".into()));
    }
    let xis = xi_space(&ctx.a, &ctx.d, &ctx.u)?;
    let span = Subspace::from_spanning(n, xis.basis)?;
    if !span.contains(&p.xi)? {
        return Err(Error::InvalidParameter("ξ is not in Ξ_{D,U}".into()));
    }
    for s in squares_subalgebra(&ctx.a)?.basis() {
        if !p.lambda.apply(s)?.is_zero() {
            return Err(Error::InvalidParameter("λ does not vanish on A^[2]".into()));
        }
    }
    if !ctx.u.contains_subspace(&p.lambda.image())? {
        return Err(Error::InvalidParameter("λ(A) is not contained in U".into()));
    }
    Ok(())
}

/// The deformed bracket `[ , ] + μ₁ + μ₂` with `μ₁` the sum of the three
/// weight-2 cocycles and `μ₂ = λ`-term of weight 4. No constraints checked.
pub fn deformed_table(ctx: &ExtensionContext, p: &DeformationParams) -> Result<Deformation> {
    let mu1 = ctx.cocycle_eh(&p.v)?.add(&ctx.cocycle_ed(&p.w)?)?.add(&ctx.cocycle_xi(&p.xi)?)?;
    let mu2 = ctx.lambda_cochain(&p.lambda)?;
    deform(&ctx.table, &[mu1, mu2])
}

fn violated(equation: &str, witness: String) -> Error {
    Error::ConstraintViolated {
        equation: equation.to_string(),
        witness,
    }
}

fn finish(d: Deformation) -> Result<AlgebraTable> {
    if let Some(v) = d.report.violations.first() {
        return Err(Error::InvalidTable(format!("deformed bracket fails: {v}")));
    }
    Ok(d.table)
}

/// Builds the deformation for `U ≠ 0` after checking both constraints.
pub fn build_deformed(ctx: &ExtensionContext, p: &DeformationParams) -> Result<AlgebraTable> {
    check_params(ctx, p)?;
    if let Some(t) = triple_constraint(ctx, p) {
        return Err(violated("triple", format!("{t:?}")));
    }
    if let Some(a) = derivation_constraint(ctx, p) {
        return Err(violated("derivation", format!("{a}")));
    }
    finish(deformed_table(ctx, p)?)
}

/// Builds the deformation of `𝔰 ⊗ A + KD` (`U = 0`, `λ = 0`).
pub fn build_deformed_u0(ctx: &ExtensionContext, p: &DeformationParams) -> Result<AlgebraTable> {
    if ctx.u.dim() != 0 {
        return Err(Error::InvalidParameter("expected U = 0".into()));
    }
    if !p.lambda.is_zero() {
        return Err(Error::InvalidParameter("λ must vanish when U = 0".into()));
    }
    check_params(ctx, p)?;
    if let Some(t) = vanishing_constraint(ctx, p) {
        return Err(violated("vanishing", format!("{t:?}")));
    }
    finish(deformed_table(ctx, p)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintFlags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq33_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq34_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq35_ok: Option<bool>,
}

impl ConstraintFlags {
    pub fn all_ok(&self) -> bool {
        [self.eq33_ok, self.eq34_ok, self.eq35_ok].iter().all(|f| f.unwrap_or(true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationVerdict {
    pub params: ParamsJson,
    pub jacobi_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_triple: Option<[usize; 3]>,
    pub constraints: ConstraintFlags,
}

impl DeformationVerdict {
    /// Whether the Jacobi verdict matches the constraint verdict.
    pub fn consistent(&self) -> bool {
        self.jacobi_ok == self.constraints.all_ok()
    }
}

/// Builds the deformed table and evaluates the constraints that apply:
/// the two constraints for `U ≠ 0`, the vanishing constraint for `U = 0`.
pub fn verdict(ctx: &ExtensionContext, p: &DeformationParams) -> Result<DeformationVerdict> {
    let d = deformed_table(ctx, p)?;
    let constraints = if ctx.u.dim() == 0 {
        ConstraintFlags {
            eq33_ok: None,
            eq34_ok: None,
            eq35_ok: Some(vanishing_constraint(ctx, p).is_none()),
        }
    } else {
        ConstraintFlags {
            eq33_ok: Some(triple_constraint(ctx, p).is_none()),
            eq34_ok: Some(derivation_constraint(ctx, p).is_none()),
            eq35_ok: None,
        }
    };
    Ok(DeformationVerdict {
        params: p.to_json(),
        jacobi_ok: d.jacobi_ok(),
        failing_triple: d.report.first_jacobi_failure().map(|(i, j, k)| [i, j, k]),
        constraints,
    })
}

/// Basis of the linear maps `λ: A → U` vanishing on `A^[2]`.
pub fn lambda_space(ctx: &ExtensionContext) -> Result<Vec<LinearMap>> {
    let n = ctx.a.dim();
    let ub = ctx.u.basis();
    let k = ub.len();
    let sq = squares_subalgebra(&ctx.a)?;
    let sqb = sq.basis();
    let to_map = |coeffs: &BitVector| {
        let images: Vec<BitVector> = (0..n)
            .map(|j| {
                let mut v = BitVector::zeros(n);
                for l in 0..k {
                    if coeffs.get(j * k + l) {
                        v.xor_assign(&ub[l]);
                    }
                }
                v
            })
            .collect();
        LinearMap::from_images(n, n, &images).expect("shape")
    };
    let sol = solve_homogeneous(n * k, sqb.len() * n, |idx| {
        let m = to_map(&BitVector::unit(n * k, idx));
        let mut res = BitVector::zeros(sqb.len() * n);
        for (r, s) in sqb.iter().enumerate() {
            for o in m.apply(s).expect("shape").ones() {
                res.set(r * n + o, true);
            }
        }
        res
    });
    Ok(sol.basis().iter().map(to_map).collect())
}

/// The parameter domains enumerated for the equivalence check.
#[derive(Clone, Debug)]
pub struct ParameterDomains {
    pub v: Vec<BitVector>,
    pub w: Vec<BitVector>,
    pub xi: Vec<BitVector>,
    pub lambda: Vec<LinearMap>,
}

impl ParameterDomains {
    /// `v` over `A^D`, `w` over the pivot complement of `D(A) + U`, `ξ` over
    /// `Ξ_{D,U}`, `λ` over maps `A → U` killing `A^[2]` (none when `U = 0`).
    pub fn standard(ctx: &ExtensionContext) -> Result<Self> {
        let dw = ctx.d.image().sum(&ctx.u)?;
        Ok(Self {
            v: ctx.d.kernel().basis().to_vec(),
            w: pivot_complement(&dw).basis().to_vec(),
            xi: xi_space(&ctx.a, &ctx.d, &ctx.u)?.basis,
            lambda: if ctx.u.dim() == 0 { Vec::new() } else { lambda_space(ctx)? },
        })
    }

    pub fn bits(&self) -> usize {
        self.v.len() + self.w.len() + self.xi.len() + self.lambda.len()
    }

    /// Parameters for the subset `mask` of the concatenated bases.
    pub fn params(&self, n: usize, mask: u64) -> DeformationParams {
        let mut p = DeformationParams::zero(n);
        let mut bit = 0;
        let mut take = || {
            let on = mask & (1 << bit) != 0;
            bit += 1;
            on
        };
        for b in &self.v {
            if take() {
                p.v.xor_assign(b);
            }
        }
        for b in &self.w {
            if take() {
                p.w.xor_assign(b);
            }
        }
        for b in &self.xi {
            if take() {
                p.xi.xor_assign(b);
            }
        }
        for b in &self.lambda {
            if take() {
                p.lambda = p.lambda.add(b).expect("shape");
            }
        }
        p
    }
}

pub const ENUMERATION_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub verdicts: Vec<DeformationVerdict>,
    pub disagreements: usize,
    pub jacobi_valid: usize,
}

/// Runs [`verdict`] over the whole parameter domain, in mask order.
pub fn enumerate(ctx: &ExtensionContext) -> Result<Enumeration> {
    let dom = ParameterDomains::standard(ctx)?;
    let bits = dom.bits();
    if bits > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "parameter enumeration bits",
            dim: bits,
            cap: ENUMERATION_CAP,
        });
    }
    let n = ctx.a.dim();
    let verdicts = (0..(1u64 << bits))
        .into_par_iter()
        .map(|m| verdict(ctx, &dom.params(n, m)))
        .collect::<Result<Vec<_>>>()?;
    let disagreements = verdicts.iter().filter(|v| !v.consistent()).count();
    let jacobi_valid = verdicts.iter().filter(|v| v.jacobi_ok).count();
    Ok(Enumeration {
        verdicts,
        disagreements,
        jacobi_valid,
    })
}

/// The parameters giving [`fifteen_dim`]: `A = O₁(2)`, `U = ⟨1,x⟩`, `v = 0`,
/// `w = βx^(3)`, `ξ(x^(3)) = 1`, `λ(x) = βx`, `λ(x^(2)) = δ1`, `λ(x^(3)) = δx`.
pub fn fifteen_dim_params(beta: bool, delta: bool) -> DeformationParams {
    let mut p = DeformationParams::zero(4);
    if beta {
        p.w = BitVector::unit(4, 3);
    }
    p.xi = BitVector::unit(4, 3);
    let b = |on: bool, i: usize| if on { BitVector::unit(4, i) } else { BitVector::zeros(4) };
    let images = [BitVector::zeros(4), b(beta, 1), b(delta, 0), b(delta, 1)];
    p.lambda = LinearMap::from_images(4, 4, &images).expect("shape");
    p
}

/// The 15-dimensional algebra with parameters `β, δ`, written directly from
/// its multiplication table. Basis: `x ⊗ x^(i)` at `4·s + i` for
/// `x = e, h, f`; `g⊗1` at 12, `g⊗x` at 13, `∂` at 14. Only products that
/// differ from the graded algebra are listed.
pub fn fifteen_dim(beta: bool, delta: bool) -> AlgebraTable {
    let u = Subspace::coordinate(4, &[0, 1]).expect("indices");
    let graded = divided_powers_extension(2, &u).expect("standard extension");
    let n = graded.dim();
    let v = |idx: &[usize]| BitVector::from_indices(n, idx.iter().copied());
    let (e, h, f) = (|i: usize| i, |i: usize| 4 + i, |i: usize| 8 + i);
    let (g1, gx, d) = (12, 13, 14);
    let opt = |on: bool, i: usize| if on { vec![i] } else { vec![] };
    let mut b = TableBuilder::from_table(&graded).no_weights();
    let mut set = |i: usize, j: usize, out: BitVector| {
        b.set(i, j, out);
    };
    set(e(0), e(1), v(&opt(beta, gx)));
    set(e(0), e(2), v(&opt(delta, g1)));
    let mut top = opt(delta, gx);
    top.push(d);
    set(e(0), e(3), v(&top));
    set(e(1), e(2), v(&top));
    set(e(1), e(3), v(&[h(0)]));
    set(e(2), e(3), v(&[h(1)]));
    set(e(1), h(3), v(&[f(0)]));
    set(e(2), h(3), v(&[f(1)]));
    set(e(3), h(3), v(&[f(2)]));
    set(e(1), f(3), v(&[g1]));
    set(e(3), f(1), v(&[g1]));
    set(e(2), f(3), v(&[gx]));
    set(e(3), f(2), v(&[gx]));
    set(h(1), h(3), v(&[g1]));
    set(h(2), h(3), v(&[gx]));
    set(e(0), d, v(&opt(beta, f(3))));
    b.build().with_provenance(json!({
        "construct": "fifteen_dim",
        "beta": beta as u8,
        "delta": delta as u8,
        "name": format!("L15({},{})", beta as u8, delta as u8),
    }))
}

/// The three derivations `ad(h⊗1) + ad(e⊗x) + ad(e⊗x)²`,
/// `ad(h⊗(1+x^(2))) + ad(e⊗x^(3))` and
/// `ad(h⊗1) + ad(e⊗x^(2))² + δ·ad(h⊗x^(3))²` of [`fifteen_dim`].
pub fn fifteen_dim_torus(l: &AlgebraTable, delta: bool) -> Result<Vec<LinearMap>> {
    if l.dim() != 15 {
        return Err(Error::DimensionMismatch { expected: 15, found: l.dim() });
    }
    let ad = |i: usize| l.ad_basis(i);
    let (e, h) = (|i: usize| i, |i: usize| 4 + i);
    let t1 = ad(h(0)).add(&ad(e(1)))?.add(&ad(e(1)).square()?)?;
    let t2 = ad(h(0)).add(&ad(h(2)))?.add(&ad(e(3)))?;
    let mut t3 = ad(h(0)).add(&ad(e(2)).square()?)?;
    if delta {
        t3 = t3.add(&ad(h(3)).square()?)?;
    }
    Ok(vec![t1, t2, t3])
}

/// `ad(h⊗x^(2)) = ad(e⊗x^(3))²` in [`fifteen_dim`].
pub fn fifteen_dim_square_identity(l: &AlgebraTable) -> Result<bool> {
    if l.dim() != 15 {
        return Err(Error::DimensionMismatch { expected: 15, found: l.dim() });
    }
    Ok(l.ad_basis(6) == l.ad_basis(3).square()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::is_coboundary;
    use crate::constructions::sl2;

    #[test]
    fn massey_of_zero_is_zero() {
        let s = sl2();
        let space = cochain_space(&s, Coefficients::Adjoint, 2).unwrap();
        let zero = Cochain::zero(space.clone());
        let mut phi = Cochain::zero(space);
        phi.set_value(&[F, H], &BitVector::unit(3, E)).unwrap();
        assert!(massey_half(&s, &zero, &phi).unwrap().is_zero());
        assert!(massey_half(&s, &phi, &zero).unwrap().is_zero());
        assert!(obstruction_pair(&s, &phi, &phi).unwrap().is_zero());
        let m = massey_half(&s, &phi, &phi).unwrap();
        assert!(is_coboundary(&s, &m).unwrap().is_some());
    }

    #[test]
    fn fifteen_dim_tables_are_lie() {
        for beta in [false, true] {
            for delta in [false, true] {
                let t = fifteen_dim(beta, delta);
                assert_eq!(t.dim(), 15);
                assert!(t.validate().is_valid(), "β={beta} δ={delta}");
            }
        }
    }

    #[test]
    fn fifteen_dim_agrees_with_parametrized_family() {
        let u = Subspace::coordinate(4, &[0, 1]).unwrap();
        let ctx = ExtensionContext::divided_powers(2, &u).unwrap();
        for beta in [false, true] {
            for delta in [false, true] {
                let direct = fifteen_dim(beta, delta);
                let built = build_deformed(&ctx, &fifteen_dim_params(beta, delta)).unwrap();
                for i in 0..15 {
                    for j in 0..15 {
                        assert_eq!(direct.product(i, j), built.product(i, j), "({i},{j}) β={beta} δ={delta}");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_parameters_give_the_graded_algebra() {
        let u = Subspace::coordinate(4, &[0, 1]).unwrap();
        let ctx = ExtensionContext::divided_powers(2, &u).unwrap();
        let t = build_deformed(&ctx, &DeformationParams::zero(4)).unwrap();
        for i in 0..15 {
            for j in 0..15 {
                assert_eq!(t.product(i, j), ctx.table().product(i, j));
            }
        }
    }

    #[test]
    fn derivation_constraint_violation_is_witnessed() {
        let u = Subspace::coordinate(4, &[0, 1]).unwrap();
        let ctx = ExtensionContext::divided_powers(2, &u).unwrap();
        // β = 1 in w but λ(x) = 0 breaks the derivation constraint at a = x
        let mut p = fifteen_dim_params(true, false);
        p.lambda = LinearMap::zero(4, 4);
        assert_eq!(derivation_constraint(&ctx, &p), Some(1));
        let v = verdict(&ctx, &p).unwrap();
        assert!(!v.jacobi_ok);
        assert!(v.failing_triple.is_some());
        assert!(matches!(build_deformed(&ctx, &p), Err(Error::ConstraintViolated { .. })));
    }

    #[test]
    fn cocycles_have_weight_two() {
        let u = Subspace::coordinate(4, &[0, 1]).unwrap();
        let ctx = ExtensionContext::divided_powers(2, &u).unwrap();
        let l = ctx.table();
        let one = BitVector::unit(4, 0);
        for c in [
            ctx.cocycle_eh(&one).unwrap(),
            ctx.cocycle_ed(&BitVector::unit(4, 3)).unwrap(),
            ctx.cocycle_xi(&BitVector::unit(4, 3)).unwrap(),
        ] {
            assert!(is_cocycle(l, &c).unwrap());
            assert_eq!(c.homogeneous_weight(l).unwrap(), Some(2));
        }
    }

    #[test]
    fn enumeration_matches_constraints() {
        let u = Subspace::coordinate(4, &[0, 1]).unwrap();
        let ctx = ExtensionContext::divided_powers(2, &u).unwrap();
        let e = enumerate(&ctx).unwrap();
        assert_eq!(e.verdicts.len(), 512);
        assert_eq!(e.disagreements, 0);
        let ctx0 = ExtensionContext::divided_powers(2, &Subspace::zero(4)).unwrap();
        let e0 = enumerate(&ctx0).unwrap();
        assert_eq!(e0.verdicts.len(), 4);
        assert_eq!(e0.disagreements, 0);
    }

    #[test]
    fn sl2_cocycles_prolong() {
        let s = sl2();
        let h = crate::cohomology::cohomology(&s, Coefficients::Adjoint, 2).unwrap();
        for c in &h.representatives {
            let m = massey_half(&s, c, c).unwrap();
            assert!(is_coboundary(&s, &m).unwrap().is_some());
        }
    }

    #[test]
    fn listed_torus_is_valid() {
        use crate::invariants::{two_envelope, verify_torus};
        for beta in [false, true] {
            for delta in [false, true] {
                let l = fifteen_dim(beta, delta);
                let env = two_envelope(&l).unwrap();
                let cert = verify_torus(&env, &fifteen_dim_torus(&l, delta).unwrap()).unwrap();
                assert!(cert.valid && cert.dim == 3, "β={beta} δ={delta}: {cert:?}");
                assert!(fifteen_dim_square_identity(&l).unwrap());
            }
        }
    }

    #[test]
    fn lambda_alone_gives_a_weight_four_class() {
        // λ(x^(2)) = 1, λ(x^(3)) = x with v = w = ξ = 0
        let u = Subspace::coordinate(4, &[0, 1]).unwrap();
        let ctx = ExtensionContext::divided_powers(2, &u).unwrap();
        let mut p = DeformationParams::zero(4);
        let images = [BitVector::zeros(4), BitVector::zeros(4), BitVector::unit(4, 0), BitVector::unit(4, 1)];
        p.lambda = LinearMap::from_images(4, 4, &images).unwrap();
        let mu = ctx.lambda_cochain(&p.lambda).unwrap();
        assert!(is_cocycle(ctx.table(), &mu).unwrap());
        assert_eq!(mu.homogeneous_weight(ctx.table()).unwrap(), Some(4));
        assert!(is_coboundary(ctx.table(), &mu).unwrap().is_none());
        assert!(deformed_table(&ctx, &p).unwrap().jacobi_ok());
    }
}
