//! Builders for the concrete algebras: divided powers `O₁(n)`, Zassenhaus
//! algebras `W₁(n)` and their commutants, current algebras `L ⊗ A`, and
//! extensions `S ⊗ A + 𝔇 ⊗ U + 𝔈` by homogeneous derivations.
//!
//! Designated anchors: in the 3-dimensional simple algebra `e, h, f` sit at
//! indices 0, 1, 2, and `W₁(2)` adds `g` at index 3.

use serde_json::json;

use crate::algebra::{AlgebraKind, AlgebraTable, LinearMap, TableBuilder};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, SpanSolver, Subspace};

pub const E: usize = 0;
pub const H: usize = 1;
pub const F: usize = 2;
pub const G: usize = 3;

/// `binom(n, k) mod 2` by Lucas' theorem: odd iff the bits of `k` are a
/// subset of the bits of `n`.
#[inline]
pub fn binomial_is_odd(n: u64, k: u64) -> bool {
    k <= n && (k & !n) == 0
}

fn divided_power_label(i: usize) -> String {
    match i {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^({i})"),
    }
}

/// The divided powers algebra `O₁(n)` of dimension `2ⁿ`, basis `x^(i)`,
/// product `x^(i) x^(j) = binom(i+j, j) x^(i+j)`, graded by `i`.
pub fn divided_powers(n: u32) -> Result<AlgebraTable> {
    if n < 1 {
        return Err(Error::InvalidParameter("divided powers height must be at least 1".into()));
    }
    if n > 12 {
        return Err(Error::CapExceeded {
            what: "divided powers height",
            dim: n as usize,
            cap: 12,
        });
    }
    let dim = 1usize << n;
    let labels = (0..dim).map(divided_power_label).collect();
    let mut b = TableBuilder::new(AlgebraKind::AssocCommUnital, labels)
        .weights((0..dim as i64).collect())
        .unit(0);
    for i in 0..dim {
        for j in i..dim {
            if i + j < dim && binomial_is_odd((i + j) as u64, j as u64) {
                b.set(i, j, BitVector::unit(dim, i + j));
            }
        }
    }
    Ok(b.build().with_provenance(json!({
        "construct": "divided_powers",
        "n": n,
        "name": format!("O1({n})"),
    })))
}

/// The special derivation `∂(x^(i)) = x^(i-1)`, `∂(1) = 0` of `O₁(n)`.
pub fn special_derivation(n: u32) -> Result<LinearMap> {
    if n < 1 {
        return Err(Error::InvalidParameter("divided powers height must be at least 1".into()));
    }
    let dim = 1usize << n;
    let images: Vec<BitVector> = (0..dim)
        .map(|i| {
            if i == 0 {
                BitVector::zeros(dim)
            } else {
                BitVector::unit(dim, i - 1)
            }
        })
        .collect();
    LinearMap::from_images(dim, dim, &images)
}

/// The one-dimensional ground field as a unital algebra.
pub fn ground_field() -> AlgebraTable {
    let mut b = TableBuilder::new(AlgebraKind::AssocCommUnital, vec!["1".into()])
        .weights(vec![0])
        .unit(0);
    b.set(0, 0, BitVector::unit(1, 0));
    b.build().with_provenance(json!({"construct": "ground_field", "name": "K"}))
}

fn zassenhaus_labels(n: u32, count: usize) -> Vec<String> {
    if n == 2 {
        ["e", "h", "f", "g"][..count].iter().map(|s| s.to_string()).collect()
    } else {
        (0..count).map(|k| format!("e_{}", k as i64 - 1)).collect()
    }
}

fn zassenhaus_table(n: u32, top: i64, construct: &str, name: String) -> Result<AlgebraTable> {
    if n < 1 {
        return Err(Error::InvalidParameter("Zassenhaus height must be at least 1".into()));
    }
    if n > 12 {
        return Err(Error::CapExceeded {
            what: "Zassenhaus height",
            dim: n as usize,
            cap: 12,
        });
    }
    // basis e_{-1} .. e_{top}; index k holds e_{k-1}
    let count = (top + 2) as usize;
    let full_top = (1i64 << n) - 2;
    let mut b = TableBuilder::new(AlgebraKind::Lie, zassenhaus_labels(n, count))
        .weights((0..count as i64).map(|k| k - 1).collect());
    for p in 0..count {
        for q in (p + 1)..count {
            let (i, j) = (p as i64 - 1, q as i64 - 1);
            let s = i + j;
            if (-1..=full_top).contains(&s) && binomial_is_odd((s + 2) as u64, (i + 1) as u64) {
                if s > top {
                    return Err(Error::InvalidTable(format!(
                        "[e_{i}, e_{j}] leaves the span e_-1..e_{top}"
                    )));
                }
                b.set(p, q, BitVector::unit(count, (s + 1) as usize));
            }
        }
    }
    Ok(b.build().with_provenance(json!({"construct": construct, "n": n, "name": name})))
}

/// `W₁(n)`: basis `e_{-1} .. e_{2ⁿ-2}`, `[e_i, e_j] = binom(i+j+2, i+1) e_{i+j}`.
pub fn zassenhaus(n: u32) -> Result<AlgebraTable> {
    zassenhaus_table(n, (1i64 << n.min(62)) - 2, "zassenhaus", format!("W1({n})"))
}

/// The commutant `W₁′(n)`, spanned by `e_{-1} .. e_{2ⁿ-3}`.
pub fn zassenhaus_derived(n: u32) -> Result<AlgebraTable> {
    if n < 1 {
        return Err(Error::InvalidParameter("Zassenhaus height must be at least 1".into()));
    }
    zassenhaus_table(n, (1i64 << n.min(62)) - 3, "zassenhaus_derived", format!("W1'({n})"))
}

/// The 3-dimensional simple algebra `W₁′(2)`: `[e,h]=e, [f,h]=f, [e,f]=h`.
pub fn sl2() -> AlgebraTable {
    zassenhaus_derived(2).expect("n = 2 is valid")
}

/// `W₁(2)` with basis `e, h, f, g`.
pub fn w1_2() -> AlgebraTable {
    zassenhaus(2).expect("n = 2 is valid")
}

fn provenance_name(t: &AlgebraTable, fallback: &str) -> String {
    t.provenance()
        .and_then(|p| p.get("name"))
        .and_then(|n| n.as_str())
        .unwrap_or(fallback)
        .to_string()
}

fn require_valid(t: &AlgebraTable, kind: AlgebraKind) -> Result<()> {
    if t.kind() != kind {
        return Err(Error::WrongKind {
            expected: kind.as_str(),
        });
    }
    let rep = t.validate();
    if let Some(v) = rep.violations.first() {
        return Err(Error::InvalidTable(v.to_string()));
    }
    Ok(())
}

/// `x_s ⊗ a_t` as a vector of the tensor product, first factor major.
pub fn tensor(x: &BitVector, a: &BitVector) -> BitVector {
    let na = a.len();
    let mut out = BitVector::zeros(x.len() * na);
    for s in x.ones() {
        for t in a.ones() {
            out.set(s * na + t, true);
        }
    }
    out
}

/// The current algebra `L ⊗ A` with `[x⊗a, y⊗b] = [x,y] ⊗ ab`, graded by
/// the weights of `L`.
pub fn current_algebra(l: &AlgebraTable, a: &AlgebraTable) -> Result<AlgebraTable> {
    require_valid(l, AlgebraKind::Lie)?;
    require_valid(a, AlgebraKind::AssocCommUnital)?;
    let (nl, na) = (l.dim(), a.dim());
    let dim = nl * na;
    let labels = (0..dim)
        .map(|k| format!("{}⊗{}", l.label(k / na), a.label(k % na)))
        .collect();
    let mut b = TableBuilder::new(AlgebraKind::Lie, labels);
    if let Some(w) = l.weights() {
        b = b.weights((0..dim).map(|k| w[k / na]).collect());
    }
    for p in 0..dim {
        for q in p..dim {
            let (s, t) = (p / na, p % na);
            let (s2, t2) = (q / na, q % na);
            let v = tensor(l.product(s, s2), a.product(t, t2));
            if !v.is_zero() {
                b.set(p, q, v);
            }
        }
    }
    let name = format!("{}⊗{}", provenance_name(l, "L"), provenance_name(a, "A"));
    Ok(b.build().with_provenance(json!({
        "construct": "current_algebra",
        "L": provenance_name(l, "L"),
        "A": provenance_name(a, "A"),
        "name": name,
    })))
}

/// `(ad x_i)²` on a Lie table.
pub fn ad_squared(s: &AlgebraTable, i: usize) -> Result<LinearMap> {
    if i >= s.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: s.dim(),
        });
    }
    s.ad_basis(i).square()
}

/// `(ad f)²`, with `f` the designated basis element at index 2.
pub fn adf_squared(s: &AlgebraTable) -> Result<LinearMap> {
    ad_squared(s, F)
}

/// An outer derivation of the base algebra together with its weight.
#[derive(Clone, Debug)]
pub struct OuterDerivation {
    pub map: LinearMap,
    pub weight: i64,
    pub label: String,
}

/// A derivation of the coefficient algebra, placed in weight 0.
#[derive(Clone, Debug)]
pub struct InnerDerivation {
    pub map: LinearMap,
    pub label: String,
}

/// Data for `S ⊗ A + 𝔇 ⊗ U + 𝔈`.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: AlgebraTable,
    pub coeff: AlgebraTable,
    pub outer: Vec<OuterDerivation>,
    pub u: Subspace,
    pub inner: Vec<InnerDerivation>,
}

/// Index arithmetic for an extension's basis: `S ⊗ A` first (first factor
/// major), then `D_k ⊗ u_l` for the echelon basis `u_l` of `U`, then `𝔈`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionLayout {
    pub base_dim: usize,
    pub coeff_dim: usize,
    pub u_dim: usize,
    pub outer: usize,
    pub inner: usize,
}

impl ExtensionLayout {
    pub fn dim(&self) -> usize {
        self.base_dim * self.coeff_dim + self.outer * self.u_dim + self.inner
    }

    pub fn current(&self, s: usize, t: usize) -> usize {
        s * self.coeff_dim + t
    }

    pub fn outer_index(&self, k: usize, l: usize) -> usize {
        self.base_dim * self.coeff_dim + k * self.u_dim + l
    }

    pub fn inner_index(&self, m: usize) -> usize {
        self.base_dim * self.coeff_dim + self.outer * self.u_dim + m
    }

    /// `x ⊗ a` embedded in the extension.
    pub fn embed_current(&self, x: &BitVector, a: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.dim());
        for k in tensor(x, a).ones() {
            out.set(k, true);
        }
        out
    }

    /// `D_k ⊗ u` for `u` given by its coordinates in the echelon basis of `U`.
    pub fn embed_outer(&self, k: usize, u_coords: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.dim());
        for l in u_coords.ones() {
            out.set(self.outer_index(k, l), true);
        }
        out
    }
}

impl ExtensionSpec {
    pub fn layout(&self) -> ExtensionLayout {
        ExtensionLayout {
            base_dim: self.base.dim(),
            coeff_dim: self.coeff.dim(),
            u_dim: self.u.dim(),
            outer: self.outer.len(),
            inner: self.inner.len(),
        }
    }

    fn check(&self) -> Result<()> {
        require_valid(&self.base, AlgebraKind::Lie)?;
        require_valid(&self.coeff, AlgebraKind::AssocCommUnital)?;
        if self.u.ambient() != self.coeff.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.coeff.dim(),
                found: self.u.ambient(),
            });
        }
        for d in &self.outer {
            if let Some((i, j)) = d.map.derivation_defect(&self.base) {
                return Err(Error::NotADerivation(format!(
                    "{} fails Leibniz on base pair ({i}, {j})",
                    d.label
                )));
            }
        }
        for (x, d) in self.outer.iter().enumerate() {
            for d2 in &self.outer[x..] {
                if !d.map.commutator(&d2.map)?.is_zero() {
                    return Err(Error::InvalidParameter(format!(
                        "outer derivations {} and {} do not commute",
                        d.label, d2.label
                    )));
                }
            }
        }
        for e in &self.inner {
            if let Some((i, j)) = e.map.derivation_defect(&self.coeff) {
                return Err(Error::NotADerivation(format!(
                    "{} fails Leibniz on coefficient pair ({i}, {j})",
                    e.label
                )));
            }
            if !self.u.contains_subspace(&self.u.image(e.map.matrix())?)? {
                return Err(Error::NotInvariant(e.label.clone()));
            }
        }
        Ok(())
    }

    /// Builds the Lie table. `𝔇 ⊗ U` is abelian; `𝔈` acts on the second
    /// tensor factor and brackets among its members are commutators of maps.
    pub fn extend(&self) -> Result<AlgebraTable> {
        self.check()?;
        let lay = self.layout();
        let (ns, na) = (lay.base_dim, lay.coeff_dim);
        let dim = lay.dim();
        let s = &self.base;
        let a = &self.coeff;
        let u_basis = self.u.basis();
        let u_solver = SpanSolver::new(na, u_basis)?;
        let inner_flat: Vec<BitVector> = self.inner.iter().map(|e| e.map.flatten()).collect();
        let inner_solver = SpanSolver::new(na * na, &inner_flat)?;
        if inner_solver.rank() != self.inner.len() {
            return Err(Error::InvalidParameter("inner derivations are linearly dependent".into()));
        }

        let mut labels: Vec<String> = (0..ns * na)
            .map(|k| format!("{}⊗{}", s.label(k / na), a.label(k % na)))
            .collect();
        for d in &self.outer {
            for u in u_basis {
                let ul = a.format_vector(u);
                let ul = if u.count_ones() > 1 { format!("({ul})") } else { ul };
                labels.push(format!("{}⊗{}", d.label, ul));
            }
        }
        labels.extend(self.inner.iter().map(|e| e.label.clone()));

        let mut b = TableBuilder::new(AlgebraKind::Lie, labels);
        if let Some(w) = s.weights() {
            let mut weights: Vec<i64> = (0..ns * na).map(|k| w[k / na]).collect();
            for d in &self.outer {
                weights.extend(std::iter::repeat(d.weight).take(lay.u_dim));
            }
            weights.extend(std::iter::repeat(0).take(lay.inner));
            b = b.weights(weights);
        }

        let set = |b: &mut TableBuilder, p: usize, q: usize, v: BitVector| {
            if !v.is_zero() {
                b.set(p, q, v);
            }
        };

        for p in 0..ns * na {
            let (x, t) = (p / na, p % na);
            // S⊗A with S⊗A
            for q in p..ns * na {
                let (y, t2) = (q / na, q % na);
                let v = lay.embed_current(s.product(x, y), a.product(t, t2));
                set(&mut b, p, q, v);
            }
            // [x⊗a, D⊗u] = D(x) ⊗ au
            for (k, d) in self.outer.iter().enumerate() {
                let dx = d.map.image_of_basis(x);
                for (l, u) in u_basis.iter().enumerate() {
                    let au = a.multiply(&a.basis(t), u)?;
                    set(&mut b, p, lay.outer_index(k, l), lay.embed_current(&dx, &au));
                }
            }
            // [x⊗a, E] = x ⊗ E(a)
            for (m, e) in self.inner.iter().enumerate() {
                let ea = e.map.image_of_basis(t);
                set(&mut b, p, lay.inner_index(m), lay.embed_current(&s.basis(x), &ea));
            }
        }
        // [D⊗u, E] = D ⊗ E(u)
        for k in 0..lay.outer {
            for (l, u) in u_basis.iter().enumerate() {
                for (m, e) in self.inner.iter().enumerate() {
                    let eu = e.map.apply(u)?;
                    let coords = u_solver.express(&eu).ok_or_else(|| Error::NotInvariant(e.label.clone()))?;
                    set(&mut b, lay.outer_index(k, l), lay.inner_index(m), lay.embed_outer(k, &coords));
                }
            }
        }
        // [E, E'] as maps on A
        for m in 0..lay.inner {
            for m2 in (m + 1)..lay.inner {
                let c = self.inner[m].map.commutator(&self.inner[m2].map)?;
                let coords = inner_solver.express(&c.flatten()).ok_or_else(|| {
                    Error::InvalidParameter("inner derivations are not closed under commutator".into())
                })?;
                let mut v = BitVector::zeros(dim);
                for c in coords.ones() {
                    v.set(lay.inner_index(c), true);
                }
                set(&mut b, lay.inner_index(m), lay.inner_index(m2), v);
            }
        }

        let u_prov: serde_json::Value = if u_basis.iter().all(|u| u.count_ones() == 1) {
            json!(u_basis.iter().map(|u| u.first_one().unwrap()).collect::<Vec<_>>())
        } else {
            json!(u_basis.iter().map(|u| u.ones().collect::<Vec<_>>()).collect::<Vec<_>>())
        };
        let table = b.build().with_provenance(json!({
            "construct": "extend",
            "S": provenance_name(s, "S"),
            "A": provenance_name(a, "A"),
            "D": self.outer.iter().map(|d| d.label.clone()).collect::<Vec<_>>(),
            "U": u_prov,
            "E": self.inner.iter().map(|e| e.label.clone()).collect::<Vec<_>>(),
        }));
        let rep = table.validate();
        if let Some(v) = rep.violations.first() {
            return Err(Error::InvalidTable(format!("extension is not a Lie algebra: {v}")));
        }
        Ok(table)
    }
}

/// `𝔰 ⊗ A + g ⊗ U + K D` with `g = (ad f)²` of weight 2 and `D` a derivation of `A`.
pub fn standard_extension_spec(a: &AlgebraTable, d: Option<(&LinearMap, &str)>, u: &Subspace) -> Result<ExtensionSpec> {
    let s = sl2();
    let outer = if u.dim() > 0 {
        vec![OuterDerivation {
            map: adf_squared(&s)?,
            weight: 2,
            label: "g".into(),
        }]
    } else {
        Vec::new()
    };
    let inner = d
        .map(|(m, label)| {
            vec![InnerDerivation {
                map: m.clone(),
                label: label.to_string(),
            }]
        })
        .unwrap_or_default();
    Ok(ExtensionSpec {
        base: s,
        coeff: a.clone(),
        outer,
        u: u.clone(),
        inner,
    })
}

/// `𝔰 ⊗ O₁(n) + g ⊗ U + K∂`.
pub fn divided_powers_extension(n: u32, u: &Subspace) -> Result<AlgebraTable> {
    let a = divided_powers(n)?;
    let d = special_derivation(n)?;
    standard_extension_spec(&a, Some((&d, "∂")), u)?.extend()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ClosureOp;

    fn v(n: usize, idx: &[usize]) -> BitVector {
        BitVector::from_indices(n, idx.iter().copied())
    }

    #[test]
    fn divided_powers_of_height_two() {
        let a = divided_powers(2).unwrap();
        assert!(a.validate().is_valid());
        assert!(a.product(1, 1).is_zero());
        assert_eq!(a.product(1, 2), &v(4, &[3]));
        let d = special_derivation(2).unwrap();
        assert_eq!(d.image_of_basis(3), v(4, &[2]));
        assert!(d.image_of_basis(0).is_zero());
        assert!(d.is_derivation(&a));
        assert!(divided_powers(0).is_err());
    }

    #[test]
    fn special_derivation_is_nilpotent_with_line_kernel() {
        for n in 1..=4 {
            let d = special_derivation(n).unwrap();
            let mut p = LinearMap::identity(1 << n);
            for _ in 0..(1 << n) {
                p = p.compose(&d).unwrap();
            }
            assert!(p.is_zero());
            assert_eq!(d.kernel(), Subspace::coordinate(1 << n, &[0]).unwrap());
            assert!(d.is_derivation(&divided_powers(n).unwrap()));
        }
    }

    #[test]
    fn zassenhaus_small_cases() {
        let s = sl2();
        assert!(s.validate().is_valid());
        assert_eq!(s.product(E, H), &v(3, &[E]));
        assert_eq!(s.product(F, H), &v(3, &[F]));
        assert_eq!(s.product(E, F), &v(3, &[H]));
        let w = w1_2();
        assert!(w.validate().is_valid());
        assert_eq!(w.product(E, G), &v(4, &[F]));
        assert!(w.product(H, G).is_zero());
        assert!(w.product(F, G).is_zero());
        // [e_1, e_2] in W1(3): binom(5,2) = 10 is even
        let w3 = zassenhaus(3).unwrap();
        assert!(w3.validate().is_valid());
        assert!(w3.product(2, 3).is_zero());
    }

    #[test]
    fn derived_zassenhaus_is_the_commutant() {
        for n in 2..=4 {
            let w = zassenhaus(n).unwrap();
            let gens: Vec<BitVector> = (0..w.dim())
                .flat_map(|i| (0..w.dim()).map(move |j| (i, j)))
                .map(|(i, j)| w.product(i, j).clone())
                .collect();
            let commutant = Subspace::from_spanning(w.dim(), gens).unwrap();
            let expected = Subspace::coordinate(w.dim(), &(0..w.dim() - 1).collect::<Vec<_>>()).unwrap();
            assert_eq!(commutant, expected);
            let d = zassenhaus_derived(n).unwrap();
            assert!(d.validate().is_valid());
            assert_eq!(d.dim(), (1 << n) - 1);
        }
    }

    #[test]
    fn current_algebra_shapes() {
        let s = sl2();
        let a = divided_powers(2).unwrap();
        let c = current_algebra(&s, &a).unwrap();
        assert_eq!(c.dim(), 12);
        assert!(c.validate().is_valid());
        for w in -1..=1 {
            assert_eq!(c.weight_component(w).unwrap().dim(), 4);
        }
        // (e⊗x)(f⊗x) = h ⊗ x·x = 0
        assert!(c.product(E * 4 + 1, F * 4 + 1).is_zero());
        let k = current_algebra(&s, &ground_field()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k.product(i, j), s.product(i, j));
            }
        }
        assert!(current_algebra(&a, &s).is_err());
    }

    #[test]
    fn adf_squared_on_sl2() {
        let s = sl2();
        let g = adf_squared(&s).unwrap();
        assert_eq!(g.image_of_basis(E), v(3, &[F]));
        assert!(g.image_of_basis(H).is_zero());
        assert!(g.image_of_basis(F).is_zero());
        assert!(g.is_derivation(&s));
        let ge = ad_squared(&s, E).unwrap();
        assert_eq!(ge.image_of_basis(F), v(3, &[E]));
        // (ad h)² = ad h
        assert_eq!(ad_squared(&s, H).unwrap(), s.ad_basis(H));
        // outer: not in the span of ad e, ad h, ad f
        let inner: Vec<BitVector> = (0..3).map(|i| s.ad_basis(i).flatten()).collect();
        let span = Subspace::from_spanning(9, inner).unwrap();
        assert!(!span.contains(&g.flatten()).unwrap());
    }

    #[test]
    fn extensions_have_expected_dimensions_and_gradings() {
        let u = Subspace::coordinate(4, &[0, 1]).unwrap();
        let l = divided_powers_extension(2, &u).unwrap();
        assert_eq!(l.dim(), 15);
        let gi = l.grading_info().unwrap();
        assert_eq!((gi.depth, gi.length), (1, 2));
        assert_eq!(l.weight_component(2).unwrap().dim(), 2);
        assert_eq!(l.weight_component(0).unwrap().dim(), 5);
        assert_eq!(l.label(12), "g⊗1");
        assert_eq!(l.label(14), "∂");
        // (e⊗1)·∂ = e⊗∂(1) = 0
        assert!(l.product(0, 14).is_zero());
        let l0 = divided_powers_extension(2, &Subspace::zero(4)).unwrap();
        assert_eq!(l0.dim(), 13);
        assert_eq!(l0.grading_info().unwrap().length, 1);
        let full = divided_powers_extension(2, &Subspace::full(4)).unwrap();
        assert_eq!(full.dim(), 17);
    }

    #[test]
    fn extension_rejects_bad_specs() {
        let a = divided_powers(2).unwrap();
        let d = special_derivation(2).unwrap();
        // U = <x> is not ∂-invariant
        let u = Subspace::coordinate(4, &[1]).unwrap();
        let spec = standard_extension_spec(&a, Some((&d, "∂")), &u).unwrap();
        assert!(matches!(spec.extend(), Err(Error::NotInvariant(_))));
        let id = LinearMap::identity(4);
        let spec = standard_extension_spec(&a, Some((&id, "id")), &Subspace::zero(4)).unwrap();
        assert!(matches!(spec.extend(), Err(Error::NotADerivation(_))));
    }

    #[test]
    fn extension_is_centerless_perfect_socle() {
        let s = sl2();
        for a in [ground_field(), divided_powers(1).unwrap(), divided_powers(2).unwrap()] {
            let c = current_algebra(&s, &a).unwrap();
            let n = c.dim();
            let gens: Vec<BitVector> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| c.product(i, j).clone())
                .collect();
            assert_eq!(Subspace::from_spanning(n, gens).unwrap().dim(), n);
            let seed = Subspace::full(n);
            assert_eq!(c.span_closure(&seed, &[ClosureOp::Ideal]).unwrap(), seed);
        }
    }
}
