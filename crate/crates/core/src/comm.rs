//! Low-degree invariants of a commutative associative unital algebra `A`:
//! the span of squares `A^[2]`, first cyclic cohomology `HC¹(A)` and its
//! alternating part, derivations, `Har²(A, A)`, and the space `Ξ_{D,U}` of
//! linear forms used by the extension computations.

use crate::algebra::{AlgebraKind, AlgebraTable, LinearMap};
use crate::error::{Error, Result};
use crate::gf2::{solve_homogeneous, BitVector, Subspace};
use crate::invariants::derivations;

/// A bilinear map `K^left × K^right → K^target`, stored on basis pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearForm {
    left: usize,
    right: usize,
    target: usize,
    values: Vec<BitVector>,
}

impl std::fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for i in 0..self.left {
            for j in 0..self.right {
                let v = self.value(i, j);
                if !v.is_zero() {
                    m.entry(&(i, j), &v.ones().collect::<Vec<_>>());
                }
            }
        }
        m.finish()
    }
}

impl BilinearForm {
    pub fn zero(left: usize, right: usize, target: usize) -> Self {
        Self {
            left,
            right,
            target,
            values: vec![BitVector::zeros(target); left * right],
        }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn value(&self, i: usize, j: usize) -> &BitVector {
        &self.values[i * self.right + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BitVector) {
        assert_eq!(v.len(), self.target);
        self.values[i * self.right + j] = v;
    }

    pub fn eval(&self, x: &BitVector, y: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.target);
        for i in x.ones() {
            for j in y.ones() {
                out.xor_assign(self.value(i, j));
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right && (0..self.left).all(|i| (0..i).all(|j| self.value(i, j) == self.value(j, i)))
    }

    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && (0..self.left).all(|i| self.value(i, i).is_zero())
    }

    pub fn add(&self, other: &BilinearForm) -> BilinearForm {
        assert_eq!((self.left, self.right, self.target), (other.left, other.right, other.target));
        BilinearForm {
            left: self.left,
            right: self.right,
            target: self.target,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(BitVector::is_zero)
    }

    /// All coefficients, pair-major.
    pub fn flatten(&self) -> BitVector {
        let mut out = BitVector::zeros(self.left * self.right * self.target);
        for (p, v) in self.values.iter().enumerate() {
            for t in v.ones() {
                out.set(p * self.target + t, true);
            }
        }
        out
    }

    /// Sparse listing `(i, j, [outputs])` for serialization.
    pub fn sparse(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut out = Vec::new();
        for i in 0..self.left {
            for j in 0..self.right {
                let v = self.value(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.ones().collect()));
                }
            }
        }
        out
    }
}

fn require_comm(a: &AlgebraTable) -> Result<usize> {
    if a.kind() != AlgebraKind::AssocCommUnital {
        return Err(Error::WrongKind {
            expected: AlgebraKind::AssocCommUnital.as_str(),
        });
    }
    a.unit().ok_or_else(|| Error::InvalidTable("commutative algebra without unit".into()))
}

/// `A^[2]`, the span of squares. Squaring is additive in characteristic 2,
/// so squares of basis elements span it.
pub fn squares_subalgebra(a: &AlgebraTable) -> Result<Subspace> {
    require_comm(a)?;
    Subspace::from_spanning(a.dim(), (0..a.dim()).map(|i| a.product(i, i).clone()).collect())
}

/// Symmetric pairs `i <= j` (or `i < j` when alternating) used as unknowns.
fn pairs(n: usize, strict: bool) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((if strict { i + 1 } else { i })..n).map(move |j| (i, j)))
        .collect()
}

fn symmetric_form(n: usize, target: usize, pairs: &[(usize, usize)], coeffs: &BitVector) -> BilinearForm {
    let mut f = BilinearForm::zero(n, n, target);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for t in 0..target {
            if coeffs.get(k * target + t) {
                let mut v = f.value(i, j).clone();
                v.flip(t);
                f.set(i, j, v.clone());
                if i != j {
                    f.set(j, i, v);
                }
            }
        }
    }
    f
}

#[derive(Clone, Debug)]
pub struct FormSpace {
    pub dim: usize,
    pub basis: Vec<BilinearForm>,
}

/// Symmetric (resp. alternating) `α: A × A → K` with
/// `α(ab, c) + α(ca, b) + α(bc, a) = 0`.
pub fn cyclic1(a: &AlgebraTable, alternating: bool) -> Result<FormSpace> {
    require_comm(a)?;
    let n = a.dim();
    let ps = pairs(n, alternating);
    let triples = n * n * n;
    let sol = solve_homogeneous(ps.len(), triples, |k| {
        let f = symmetric_form(n, 1, &ps, &BitVector::unit(ps.len(), k));
        let mut res = BitVector::zeros(triples);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = f.eval(a.product(x, y), &a.basis(z)).get(0)
                        ^ f.eval(a.product(z, x), &a.basis(y)).get(0)
                        ^ f.eval(a.product(y, z), &a.basis(x)).get(0);
                    res.set((x * n + y) * n + z, v);
                }
            }
        }
        res
    });
    let basis: Vec<BilinearForm> = sol.basis().iter().map(|c| symmetric_form(n, 1, &ps, c)).collect();
    Ok(FormSpace {
        dim: basis.len(),
        basis,
    })
}

/// `Der(A) = Har¹(A, A)`.
pub fn derivations_comm(a: &AlgebraTable) -> Result<Vec<LinearMap>> {
    require_comm(a)?;
    derivations(a)
}

#[derive(Clone, Debug)]
pub struct Harrison2 {
    pub dim: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    /// Coset representatives, normalized so that `α(1, A) = 0`.
    pub representatives: Vec<BilinearForm>,
}

/// Residual of the Hochschild cocycle condition
/// `aα(b,c) + α(ab,c) + α(a,bc) + α(a,b)c` over all basis triples.
pub fn hochschild_defect(a: &AlgebraTable, alpha: &BilinearForm) -> BitVector {
    let n = a.dim();
    let mut res = BitVector::zeros(n * n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (bx, bz) = (a.basis(x), a.basis(z));
                let mut v = a.multiply(&bx, alpha.value(y, z)).expect("shape");
                v.xor_assign(&alpha.eval(a.product(x, y), &bz));
                v.xor_assign(&alpha.eval(&bx, a.product(y, z)));
                v.xor_assign(&a.multiply(alpha.value(x, y), &bz).expect("shape"));
                for t in v.ones() {
                    res.set(((x * n + y) * n + z) * n + t, true);
                }
            }
        }
    }
    res
}

/// `(δω)(a, b) = aω(b) + ω(ab) + ω(a)b`.
pub fn hochschild_coboundary(a: &AlgebraTable, omega: &LinearMap) -> BilinearForm {
    let n = a.dim();
    let mut f = BilinearForm::zero(n, n, n);
    for x in 0..n {
        for y in 0..n {
            let mut v = a.multiply(&a.basis(x), &omega.image_of_basis(y)).expect("shape");
            v.xor_assign(&omega.apply(a.product(x, y)).expect("shape"));
            v.xor_assign(&a.multiply(&omega.image_of_basis(x), &a.basis(y)).expect("shape"));
            f.set(x, y, v);
        }
    }
    f
}

fn symmetric_coords(f: &BilinearForm, ps: &[(usize, usize)]) -> BitVector {
    let t = f.target();
    let mut out = BitVector::zeros(ps.len() * t);
    for (k, &(i, j)) in ps.iter().enumerate() {
        for o in f.value(i, j).ones() {
            out.set(k * t + o, true);
        }
    }
    out
}

/// `Har²(A, A)`: symmetric Hochschild 2-cocycles modulo coboundaries.
pub fn harrison2(a: &AlgebraTable) -> Result<Harrison2> {
    let unit = require_comm(a)?;
    let n = a.dim();
    let ps = pairs(n, false);
    let unknowns = ps.len() * n;
    let z = solve_homogeneous(unknowns, n * n * n * n, |k| {
        hochschild_defect(a, &symmetric_form(n, n, &ps, &BitVector::unit(unknowns, k)))
    });
    let cobs: Vec<BitVector> = (0..n * n)
        .map(|k| {
            let omega = LinearMap::from_flat(n, n, &BitVector::unit(n * n, k));
            symmetric_coords(&hochschild_coboundary(a, &omega), &ps)
        })
        .collect();
    let b = Subspace::from_spanning(unknowns, cobs)?;
    debug_assert!(z.contains_subspace(&b).unwrap_or(false));
    let mut acc = b.clone();
    let mut representatives = Vec::new();
    for v in z.basis() {
        if acc.contains(v)? {
            continue;
        }
        acc = acc.sum(&Subspace::from_spanning(unknowns, vec![v.clone()])?)?;
        let alpha = symmetric_form(n, n, &ps, v);
        // α(1, c) = α(1,1)c for a cocycle; subtract δω with ω(a) = aα(1,1)
        let c11 = alpha.value(unit, unit).clone();
        let omega_images: Vec<BitVector> = (0..n).map(|x| a.multiply(&a.basis(x), &c11).expect("shape")).collect();
        let omega = LinearMap::from_images(n, n, &omega_images)?;
        representatives.push(alpha.add(&hochschild_coboundary(a, &omega)));
    }
    Ok(Harrison2 {
        dim: representatives.len(),
        dim_z: z.dim(),
        dim_b: b.dim(),
        representatives,
    })
}

/// `Ξ_{D,U}`; each basis element is a linear form `ξ` stored as the vector of
/// its values on the basis of `A`.
#[derive(Clone, Debug)]
pub struct XiSpace {
    pub ambient: usize,
    pub basis: Vec<BitVector>,
}

impl XiSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `ξ(x)` for a form stored as its values on basis elements.
pub fn form_value(xi: &BitVector, x: &BitVector) -> bool {
    xi.dot(x)
}

/// `ξ(a)D(b) + ξ(b)D(a)`.
pub fn xi_lambda(xi: &BitVector, d: &LinearMap, a: &BitVector, b: &BitVector) -> BitVector {
    let mut out = BitVector::zeros(d.target());
    if xi.dot(a) {
        out.xor_assign(&d.apply(b).expect("shape"));
    }
    if xi.dot(b) {
        out.xor_assign(&d.apply(a).expect("shape"));
    }
    out
}

/// Left-hand side of the three-term identity
/// `(ξ(a)b + ξ(b)a + ξ(ab)1)D(c) + (ξ(c)a + ξ(a)c + ξ(ca)1)D(b) + (ξ(b)c + ξ(c)b + ξ(bc)1)D(a)`.
pub fn xi_three_term(alg: &AlgebraTable, xi: &BitVector, d: &LinearMap, a: &BitVector, b: &BitVector, c: &BitVector) -> Result<BitVector> {
    let unit = alg.basis(alg.unit().ok_or_else(|| Error::InvalidTable("no unit".into()))?);
    let coef = |p: &BitVector, q: &BitVector| -> Result<BitVector> {
        let mut v = BitVector::zeros(alg.dim());
        if xi.dot(p) {
            v.xor_assign(q);
        }
        if xi.dot(q) {
            v.xor_assign(p);
        }
        if xi.dot(&alg.multiply(p, q)?) {
            v.xor_assign(&unit);
        }
        Ok(v)
    };
    let mut out = alg.multiply(&coef(a, b)?, &d.apply(c)?)?;
    out.xor_assign(&alg.multiply(&coef(c, a)?, &d.apply(b)?)?);
    out.xor_assign(&alg.multiply(&coef(b, c)?, &d.apply(a)?)?);
    Ok(out)
}

pub fn check_derivation_and_invariance(a: &AlgebraTable, d: &LinearMap, u: &Subspace) -> Result<()> {
    if d.source() != a.dim() || d.target() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: d.source(),
        });
    }
    if u.ambient() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: u.ambient(),
        });
    }
    if let Some((i, j)) = d.derivation_defect(a) {
        return Err(Error::NotADerivation(format!("Leibniz fails on ({i}, {j})")));
    }
    if !u.contains_subspace(&u.image(d.matrix())?)? {
        return Err(Error::NotInvariant("D".into()));
    }
    Ok(())
}

/// Linear forms `ξ` vanishing on `A^[2]`, `D(A)`, `U`, with
/// `ξ(a)D(b) + ξ(b)D(a) ∈ U` and the three-term identity on all basis triples.
/// Membership in `U` is linearized by reducing modulo the echelon basis of `U`.
pub fn xi_space(a: &AlgebraTable, d: &LinearMap, u: &Subspace) -> Result<XiSpace> {
    require_comm(a)?;
    check_derivation_and_invariance(a, d, u)?;
    let n = a.dim();
    let mut vanish: Vec<BitVector> = squares_subalgebra(a)?.basis().to_vec();
    vanish.extend(d.image().basis().iter().cloned());
    vanish.extend(u.basis().iter().cloned());
    let nv = vanish.len();
    let len = nv + n * n * n + n * n * n * n;
    let basis: Vec<BitVector> = (0..n).map(|i| a.basis(i)).collect();
    let sol = solve_homogeneous(n, len, |k| {
        let xi = BitVector::unit(n, k);
        let mut res = BitVector::zeros(len);
        for (r, v) in vanish.iter().enumerate() {
            res.set(r, xi.dot(v));
        }
        for x in 0..n {
            for y in 0..n {
                let p = u.reduce(&xi_lambda(&xi, d, &basis[x], &basis[y]));
                for t in p.ones() {
                    res.set(nv + (x * n + y) * n + t, true);
                }
            }
        }
        let off = nv + n * n * n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = xi_three_term(a, &xi, d, &basis[x], &basis[y], &basis[z]).expect("shapes checked");
                    for t in v.ones() {
                        res.set(off + ((x * n + y) * n + z) * n + t, true);
                    }
                }
            }
        }
        res
    });
    Ok(XiSpace {
        ambient: n,
        basis: sol.basis().to_vec(),
    })
}

/// `A^D = Ker D`.
pub fn fixed_points(d: &LinearMap) -> Subspace {
    d.kernel()
}

/// `dim A/(D(A) + U)`.
pub fn cokernel_dim(a: &AlgebraTable, d: &LinearMap, u: &Subspace) -> Result<usize> {
    let s = d.image().sum(u)?;
    Subspace::full(a.dim()).quotient_dim(&s)
}

/// A complement of `s` spanned by the unit vectors at its non-pivot positions.
pub fn pivot_complement(s: &Subspace) -> Subspace {
    let free: Vec<usize> = (0..s.ambient()).filter(|i| !s.pivots().contains(i)).collect();
    Subspace::coordinate(s.ambient(), &free).expect("indices in range")
}
