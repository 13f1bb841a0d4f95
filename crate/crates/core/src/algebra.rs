//! Structure-constant tables and the maps between them.
//!
//! A table stores the product of every ordered pair of basis elements, even
//! though Lie and commutative products are symmetric in characteristic 2.
//! [`AlgebraTable::validate`] checks that the stored data really satisfies
//! the axioms of its kind.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    #[serde(rename = "lie")]
    Lie,
    #[serde(rename = "assoc-comm-unital")]
    AssocCommUnital,
}

impl AlgebraKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraKind::Lie => "lie",
            AlgebraKind::AssocCommUnital => "assoc-comm-unital",
        }
    }
}

/// Structure constants of a finite-dimensional algebra over GF(2).
#[derive(Clone, PartialEq)]
pub struct AlgebraTable {
    dim: usize,
    kind: AlgebraKind,
    labels: Vec<String>,
    weights: Option<Vec<i64>>,
    unit: Option<usize>,
    products: Vec<BitVector>,
    provenance: Option<serde_json::Value>,
}

impl fmt::Debug for AlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AlgebraTable({}, dim {})", self.kind.as_str(), self.dim)?;
        for i in 0..self.dim {
            for j in i..self.dim {
                let p = self.product(i, j);
                if !p.is_zero() {
                    writeln!(f, "  [{}, {}] = {}", self.labels[i], self.labels[j], self.format_vector(p))?;
                }
            }
        }
        Ok(())
    }
}

impl AlgebraTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, i: usize) -> Option<i64> {
        self.weights.as_ref().map(|w| w[i])
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn provenance(&self) -> Option<&serde_json::Value> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, provenance: serde_json::Value) -> Self {
        self.provenance = Some(provenance);
        self
    }

    /// Replaces (or removes) the grading. Validation decides whether it is
    /// compatible with the product.
    pub fn with_weights(mut self, weights: Option<Vec<i64>>) -> Result<Self> {
        if let Some(w) = &weights {
            if w.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: w.len(),
                });
            }
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn basis(&self, i: usize) -> BitVector {
        BitVector::unit(self.dim, i)
    }

    pub fn zero(&self) -> BitVector {
        BitVector::zeros(self.dim)
    }

    /// Product of the `i`-th and `j`-th basis elements.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &BitVector {
        &self.products[i * self.dim + j]
    }

    /// Bilinear extension of the table.
    pub fn multiply(&self, x: &BitVector, y: &BitVector) -> Result<BitVector> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = self.zero();
        for i in x.ones() {
            for j in y.ones() {
                out.xor_assign(self.product(i, j));
            }
        }
        Ok(out)
    }

    /// Lie bracket; identical to [`AlgebraTable::multiply`], named for readability.
    pub fn bracket(&self, x: &BitVector, y: &BitVector) -> Result<BitVector> {
        self.multiply(x, y)
    }

    /// `x · e_j` without length checks, for inner loops.
    #[inline]
    pub(crate) fn mul_vec_basis(&self, x: &BitVector, j: usize) -> BitVector {
        let mut out = self.zero();
        for i in x.ones() {
            out.xor_assign(self.product(i, j));
        }
        out
    }

    /// Left multiplication `y ↦ x·y` (the adjoint map `ad x` for Lie tables).
    pub fn left_mult(&self, x: &BitVector) -> Result<LinearMap> {
        self.check_len(x)?;
        let mut images = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut col = self.zero();
            for i in x.ones() {
                col.xor_assign(self.product(i, j));
            }
            images.push(col);
        }
        LinearMap::from_images(self.dim, self.dim, &images)
    }

    pub fn ad(&self, x: &BitVector) -> Result<LinearMap> {
        self.left_mult(x)
    }

    pub fn ad_basis(&self, i: usize) -> LinearMap {
        self.left_mult(&self.basis(i)).expect("basis vector has table length")
    }

    /// Writes a vector as a sum of basis labels.
    pub fn format_vector(&self, v: &BitVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.ones().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(" + ")
    }

    /// Checks the axioms of the table's kind and grading compatibility.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.dim;
        let mut symmetric = true;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.product(i, j) != self.product(j, i) {
                    symmetric = false;
                    violations.push(Violation::NotSymmetric { i, j });
                }
            }
        }
        match self.kind {
            AlgebraKind::Lie => {
                let mut alternating = true;
                for i in 0..n {
                    if !self.product(i, i).is_zero() {
                        alternating = false;
                        violations.push(Violation::NotAlternating { i });
                    }
                }
                // On a symmetric alternating table the Jacobiator is an
                // alternating trilinear map, so increasing triples suffice.
                let exhaustive = !(symmetric && alternating);
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            if !exhaustive && !(i < j && j < k) {
                                continue;
                            }
                            if !self.jacobiator(i, j, k).is_zero() {
                                violations.push(Violation::Jacobi { i, j, k });
                            }
                        }
                    }
                }
            }
            AlgebraKind::AssocCommUnital => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            if !self.associator(i, j, k).is_zero() {
                                violations.push(Violation::NotAssociative { i, j, k });
                            }
                        }
                    }
                }
                match self.unit {
                    None => violations.push(Violation::MissingUnit),
                    Some(u) => {
                        for i in 0..n {
                            let e = self.basis(i);
                            if *self.product(u, i) != e || *self.product(i, u) != e {
                                violations.push(Violation::UnitFails { i });
                            }
                        }
                    }
                }
            }
        }
        if let Some(w) = &self.weights {
            for i in 0..n {
                for j in 0..n {
                    if self.product(i, j).ones().any(|k| w[k] != w[i] + w[j]) {
                        violations.push(Violation::NotGraded { i, j });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` from the stored products.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> BitVector {
        let mut out = self.mul_vec_basis(self.product(i, j), k);
        out.xor_assign(&self.mul_vec_basis(self.product(j, k), i));
        out.xor_assign(&self.mul_vec_basis(self.product(k, i), j));
        out
    }

    /// `(e_i e_j) e_k + e_i (e_j e_k)`.
    pub fn associator(&self, i: usize, j: usize, k: usize) -> BitVector {
        let mut out = self.mul_vec_basis(self.product(i, j), k);
        let jk = self.product(j, k);
        for c in jk.ones() {
            out.xor_assign(self.product(i, c));
        }
        out
    }

    pub fn grading_info(&self) -> Option<GradingInfo> {
        let w = self.weights.as_ref()?;
        let depth = w.iter().filter(|&&x| x < 0).map(|x| -x).max().unwrap_or(0);
        let length = w.iter().filter(|&&x| x > 0).copied().max().unwrap_or(0);
        Some(GradingInfo {
            weights: w.clone(),
            depth,
            length,
        })
    }

    /// Span of the basis elements of weight `w`.
    pub fn weight_component(&self, w: i64) -> Result<Subspace> {
        let weights = self.weights.as_ref().ok_or(Error::NoGrading)?;
        let idx: Vec<usize> = (0..self.dim).filter(|&i| weights[i] == w).collect();
        Subspace::coordinate(self.dim, &idx)
    }

    /// Least subspace containing `seed` and closed under `ops`.
    pub fn span_closure(&self, seed: &Subspace, ops: &[ClosureOp]) -> Result<Subspace> {
        if seed.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: seed.ambient(),
            });
        }
        for op in ops {
            if let ClosureOp::Map(m) = op {
                if m.source() != self.dim || m.target() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: m.source(),
                    });
                }
            }
        }
        let mut current = seed.clone();
        loop {
            let basis = current.basis();
            let mut gens: Vec<BitVector> = basis.to_vec();
            for op in ops {
                match op {
                    ClosureOp::Ideal => {
                        for b in basis {
                            for j in 0..self.dim {
                                gens.push(self.mul_vec_basis(b, j));
                            }
                        }
                    }
                    ClosureOp::Subalgebra => {
                        for (a, x) in basis.iter().enumerate() {
                            for y in &basis[a..] {
                                gens.push(self.multiply(x, y)?);
                            }
                        }
                    }
                    ClosureOp::Map(m) => {
                        for b in basis {
                            gens.push(m.apply(b)?);
                        }
                    }
                }
            }
            let next = Subspace::from_spanning(self.dim, gens)?;
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// Operations a [`AlgebraTable::span_closure`] must be closed under.
#[derive(Clone, Debug)]
pub enum ClosureOp {
    /// Products with every basis element (ideal closure).
    Ideal,
    /// Products of pairs of elements already in the subspace.
    Subalgebra,
    /// A linear endomorphism of the algebra.
    Map(LinearMap),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingInfo {
    pub weights: Vec<i64>,
    pub depth: i64,
    pub length: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    NotAlternating { i: usize },
    NotSymmetric { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    NotAssociative { i: usize, j: usize, k: usize },
    MissingUnit,
    UnitFails { i: usize },
    NotGraded { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAlternating { i } => write!(f, "product({i},{i}) is nonzero"),
            Violation::NotSymmetric { i, j } => write!(f, "product({i},{j}) != product({j},{i})"),
            Violation::Jacobi { i, j, k } => write!(f, "Jacobi identity fails on ({i},{j},{k})"),
            Violation::NotAssociative { i, j, k } => write!(f, "associativity fails on ({i},{j},{k})"),
            Violation::MissingUnit => write!(f, "no unit element designated"),
            Violation::UnitFails { i } => write!(f, "unit does not act as identity on basis element {i}"),
            Violation::NotGraded { i, j } => write!(f, "product({i},{j}) leaves the weight-sum component"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        self.violations.iter().find_map(|v| match v {
            Violation::Jacobi { i, j, k } => Some((*i, *j, *k)),
            _ => None,
        })
    }
}

/// Mutable staging area for a table.
#[derive(Clone, Debug)]
pub struct TableBuilder {
    dim: usize,
    kind: AlgebraKind,
    labels: Vec<String>,
    weights: Option<Vec<i64>>,
    unit: Option<usize>,
    products: Vec<BitVector>,
}

impl TableBuilder {
    pub fn new(kind: AlgebraKind, labels: Vec<String>) -> Self {
        let dim = labels.len();
        Self {
            dim,
            kind,
            labels,
            weights: None,
            unit: None,
            products: vec![BitVector::zeros(dim); dim * dim],
        }
    }

    /// Starts from an existing table's data.
    pub fn from_table(t: &AlgebraTable) -> Self {
        Self {
            dim: t.dim,
            kind: t.kind,
            labels: t.labels.clone(),
            weights: t.weights.clone(),
            unit: t.unit,
            products: t.products.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(mut self, weights: Vec<i64>) -> Self {
        assert_eq!(weights.len(), self.dim);
        self.weights = Some(weights);
        self
    }

    pub fn no_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn unit(mut self, unit: usize) -> Self {
        assert!(unit < self.dim);
        self.unit = Some(unit);
        self
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, value: BitVector) {
        assert_eq!(value.len(), self.dim);
        self.products[j * self.dim + i] = value.clone();
        self.products[i * self.dim + j] = value;
    }

    /// Sets only the ordered pair `(i,j)`.
    pub fn set_ordered(&mut self, i: usize, j: usize, value: BitVector) {
        assert_eq!(value.len(), self.dim);
        self.products[i * self.dim + j] = value;
    }

    /// Adds `value` to both `(i,j)` and `(j,i)` (once when `i == j`).
    pub fn add(&mut self, i: usize, j: usize, value: &BitVector) {
        self.products[i * self.dim + j].xor_assign(value);
        if i != j {
            self.products[j * self.dim + i].xor_assign(value);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BitVector {
        &self.products[i * self.dim + j]
    }

    pub fn build(self) -> AlgebraTable {
        AlgebraTable {
            dim: self.dim,
            kind: self.kind,
            labels: self.labels,
            weights: self.weights,
            unit: self.unit,
            products: self.products,
            provenance: None,
        }
    }
}

/// A linear map between coordinate spaces, stored as a `target × source`
/// matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: BitMatrix,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap{:?}", self.matrix)
    }
}

impl LinearMap {
    pub fn new(matrix: BitMatrix) -> Self {
        Self { matrix }
    }

    pub fn zero(source: usize, target: usize) -> Self {
        Self::new(BitMatrix::zeros(target, source))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(BitMatrix::identity(n))
    }

    /// The map sending the `j`-th basis vector to `images[j]`.
    pub fn from_images(source: usize, target: usize, images: &[BitVector]) -> Result<Self> {
        if images.len() != source {
            return Err(Error::DimensionMismatch {
                expected: source,
                found: images.len(),
            });
        }
        Ok(Self::new(BitMatrix::from_columns(target, images)?))
    }

    /// Inverse of [`LinearMap::flatten`].
    pub fn from_flat(source: usize, target: usize, flat: &BitVector) -> Self {
        Self::new(BitMatrix::unflatten(target, source, flat))
    }

    pub fn source(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Row-major coordinates of the matrix; the ambient space for spaces of maps.
    pub fn flatten(&self) -> BitVector {
        self.matrix.flatten()
    }

    pub fn apply(&self, v: &BitVector) -> Result<BitVector> {
        self.matrix.mul_vec(v)
    }

    pub fn image_of_basis(&self, j: usize) -> BitVector {
        self.matrix.column(j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(Self::new(self.matrix.mul(&other.matrix)?))
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(Self::new(self.matrix.add(&other.matrix)?))
    }

    pub fn square(&self) -> Result<LinearMap> {
        self.compose(self)
    }

    /// `self ∘ other + other ∘ self`.
    pub fn commutator(&self, other: &LinearMap) -> Result<LinearMap> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.nullspace()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.column_space()
    }

    /// First basis pair on which the Leibniz rule `D(xy) = D(x)y + xD(y)`
    /// fails, or `None` if `self` is a derivation of `table`.
    pub fn derivation_defect(&self, table: &AlgebraTable) -> Option<(usize, usize)> {
        let n = table.dim();
        if self.source() != n || self.target() != n {
            return Some((usize::MAX, usize::MAX));
        }
        let images: Vec<BitVector> = (0..n).map(|j| self.image_of_basis(j)).collect();
        for i in 0..n {
            for j in i..n {
                let lhs = self.apply(table.product(i, j)).expect("shape checked");
                let mut rhs = table.multiply(&images[i], &table.basis(j)).expect("shape checked");
                rhs.xor_assign(&table.multiply(&table.basis(i), &images[j]).expect("shape checked"));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_derivation(&self, table: &AlgebraTable) -> bool {
        self.derivation_defect(table).is_none()
    }
}
