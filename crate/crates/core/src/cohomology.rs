//! Chevalley–Eilenberg cohomology `Hⁿ(L, M)` over GF(2) for the trivial
//! module `K` and the adjoint module `L`.
//!
//! A cochain of degree `n` stores its values on strictly increasing index
//! tuples, so alternation (vanishing on repeated arguments) holds by
//! construction. Coordinate `r * dim M + m` is the `m`-th coordinate of the
//! value on the `r`-th tuple in lexicographic order.
//!
//! Weight convention: a coordinate `(x_{i_1} ∧ … ∧ x_{i_n}, m)` has weight
//! `w(m) - Σ w(x_{i_k})`, i.e. a cochain of weight `λ` maps
//! `L_{α_1} × … × L_{α_n}` into `M_{α_1 + … + α_n + λ}`. With this sign the
//! cocycle `e ∧ h ↦ f` of the 3-dimensional algebra has weight 2.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, AlgebraTable, LinearMap};
use crate::comm::BilinearForm;
use crate::constructions::tensor;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Subspace};

pub const MAX_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Trivial,
    Adjoint,
}

impl Coefficients {
    pub fn as_str(self) -> &'static str {
        match self {
            Coefficients::Trivial => "trivial",
            Coefficients::Adjoint => "adjoint",
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(Coefficients::Trivial),
            "adjoint" => Ok(Coefficients::Adjoint),
            other => Err(Error::Unsupported(format!("module {other:?}"))),
        }
    }
}

fn mask(t: &[usize]) -> u64 {
    t.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `Cⁿ(L, M)`: increasing `n`-tuples of basis indices times a basis of `M`.
#[derive(Clone, PartialEq, Eq)]
pub struct CochainSpace {
    dim_l: usize,
    dim_m: usize,
    degree: usize,
    coeff: Coefficients,
    tuples: Vec<Vec<usize>>,
    rank: HashMap<u64, usize>,
}

impl fmt::Debug for CochainSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C^{}(L[{}], {})",
            self.degree,
            self.dim_l,
            self.coeff.as_str()
        )
    }
}

impl CochainSpace {
    pub fn new(dim_l: usize, coeff: Coefficients, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::CapExceeded {
                what: "cochain degree",
                dim: degree,
                cap: MAX_DEGREE,
            });
        }
        if dim_l > 64 {
            return Err(Error::CapExceeded {
                what: "cochain algebra dimension",
                dim: dim_l,
                cap: 64,
            });
        }
        let tuples = combinations(dim_l, degree);
        let rank = tuples.iter().enumerate().map(|(r, t)| (mask(t), r)).collect();
        let dim_m = match coeff {
            Coefficients::Trivial => 1,
            Coefficients::Adjoint => dim_l,
        };
        Ok(Self {
            dim_l,
            dim_m,
            degree,
            coeff,
            tuples,
            rank,
        })
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.dim_m
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    pub fn tuple_count(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuple(&self, r: usize) -> &[usize] {
        &self.tuples[r]
    }

    /// Rank of a set of distinct indices given in any order.
    pub fn tuple_rank(&self, t: &[usize]) -> Option<usize> {
        if t.len() != self.degree || t.iter().any(|&i| i >= self.dim_l) {
            return None;
        }
        let m = mask(t);
        if m.count_ones() as usize != t.len() {
            return None;
        }
        self.rank.get(&m).copied()
    }

    fn rank_of_mask(&self, m: u64) -> usize {
        self.rank[&m]
    }

    pub fn coordinate(&self, t: &[usize], m: usize) -> Option<usize> {
        if m >= self.dim_m {
            return None;
        }
        self.tuple_rank(t).map(|r| r * self.dim_m + m)
    }

    pub fn split(&self, coord: usize) -> (&[usize], usize) {
        (&self.tuples[coord / self.dim_m], coord % self.dim_m)
    }

    /// Weight of a coordinate, see the module documentation.
    pub fn coordinate_weight(&self, weights: &[i64], coord: usize) -> i64 {
        let (t, m) = self.split(coord);
        let target = match self.coeff {
            Coefficients::Trivial => 0,
            Coefficients::Adjoint => weights[m],
        };
        target - t.iter().map(|&i| weights[i]).sum::<i64>()
    }
}

/// An alternating cochain.
#[derive(Clone)]
pub struct Cochain {
    space: Arc<CochainSpace>,
    data: BitVector,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.space.degree == other.space.degree
            && self.space.dim_l == other.space.dim_l
            && self.space.coeff == other.space.coeff
            && self.data == other.data
    }
}

impl Eq for Cochain {}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.space, self.data.ones().collect::<Vec<_>>())
    }
}

impl Cochain {
    pub fn zero(space: Arc<CochainSpace>) -> Self {
        let data = BitVector::zeros(space.dim());
        Self { space, data }
    }

    pub fn from_data(space: Arc<CochainSpace>, data: BitVector) -> Result<Self> {
        if data.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: data.len(),
            });
        }
        Ok(Self { space, data })
    }

    /// Builds a cochain from its values on increasing basis tuples.
    pub fn from_fn<F>(space: Arc<CochainSpace>, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> BitVector,
    {
        let mut data = BitVector::zeros(space.dim());
        for r in 0..space.tuple_count() {
            let v = f(space.tuple(r));
            if v.len() != space.dim_m {
                return Err(Error::DimensionMismatch {
                    expected: space.dim_m,
                    found: v.len(),
                });
            }
            for m in v.ones() {
                data.set(r * space.dim_m + m, true);
            }
        }
        Ok(Self { space, data })
    }

    pub fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.space.degree
    }

    pub fn coefficients(&self) -> Coefficients {
        self.space.coeff
    }

    pub fn data(&self) -> &BitVector {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    fn check_same(&self, other: &Cochain) -> Result<()> {
        if self.space.dim_l != other.space.dim_l
            || self.space.degree != other.space.degree
            || self.space.coeff != other.space.coeff
        {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: other.space.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same(other)?;
        Ok(Cochain {
            space: self.space.clone(),
            data: &self.data + &other.data,
        })
    }

    /// Value on basis elements in any order; repeated arguments give 0.
    pub fn value(&self, args: &[usize]) -> BitVector {
        let dm = self.space.dim_m;
        match self.space.tuple_rank(args) {
            Some(r) => self.data.slice(r * dm, dm),
            None => BitVector::zeros(dm),
        }
    }

    /// Overwrites the value on a set of distinct basis elements.
    pub fn set_value(&mut self, args: &[usize], value: &BitVector) -> Result<()> {
        let dm = self.space.dim_m;
        let r = self.space.tuple_rank(args).ok_or_else(|| {
            Error::InvalidParameter(format!("{args:?} is not a set of {} distinct basis indices", self.space.degree))
        })?;
        if value.len() != dm {
            return Err(Error::DimensionMismatch {
                expected: dm,
                found: value.len(),
            });
        }
        for m in 0..dm {
            self.data.set(r * dm + m, value.get(m));
        }
        Ok(())
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&BitVector]) -> Result<BitVector> {
        if args.len() != self.space.degree {
            return Err(Error::DimensionMismatch {
                expected: self.space.degree,
                found: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.space.dim_l) {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim_l,
                found: a.len(),
            });
        }
        let mut out = BitVector::zeros(self.space.dim_m);
        let mut idx = Vec::with_capacity(args.len());
        self.eval_rec(args, &mut idx, &mut out);
        Ok(out)
    }

    fn eval_rec(&self, args: &[&BitVector], idx: &mut Vec<usize>, out: &mut BitVector) {
        if idx.len() == args.len() {
            out.xor_assign(&self.value(idx));
            return;
        }
        for i in args[idx.len()].ones() {
            if idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.eval_rec(args, idx, out);
            idx.pop();
        }
    }

    /// Weights occurring among the nonzero coordinates.
    pub fn weight_support(&self, l: &AlgebraTable) -> Result<BTreeSet<i64>> {
        let w = l.weights().ok_or(Error::NoGrading)?;
        Ok(self.data.ones().map(|c| self.space.coordinate_weight(w, c)).collect())
    }

    /// The common weight of all nonzero coordinates, `None` for the zero
    /// cochain, an error when the cochain mixes weights.
    pub fn homogeneous_weight(&self, l: &AlgebraTable) -> Result<Option<i64>> {
        let s = self.weight_support(l)?;
        match s.len() {
            0 => Ok(None),
            1 => Ok(s.into_iter().next()),
            _ => Err(Error::InvalidParameter(format!("cochain mixes weights {s:?}"))),
        }
    }

    /// Sparse listing `[[i_1, …, i_n], m]` of the nonzero coordinates.
    pub fn sparse(&self) -> Vec<(Vec<usize>, usize)> {
        self.data
            .ones()
            .map(|c| {
                let (t, m) = self.space.split(c);
                (t.to_vec(), m)
            })
            .collect()
    }
}

/// `support[c]` lists the pairs `a < b` with `c` in the support of `[x_a, x_b]`.
fn bracket_support(l: &AlgebraTable) -> Vec<Vec<(usize, usize)>> {
    let n = l.dim();
    let mut support = vec![Vec::new(); n];
    for a in 0..n {
        for b in (a + 1)..n {
            for c in l.product(a, b).ones() {
                support[c].push((a, b));
            }
        }
    }
    support
}

/// Precomputed data for the differential `d: Cⁿ → Cⁿ⁺¹`.
struct Differential<'a> {
    l: &'a AlgebraTable,
    source: Arc<CochainSpace>,
    target: Arc<CochainSpace>,
    support: Vec<Vec<(usize, usize)>>,
}

impl<'a> Differential<'a> {
    fn new(l: &'a AlgebraTable, coeff: Coefficients, n: usize) -> Result<Self> {
        if l.kind() != AlgebraKind::Lie {
            return Err(Error::WrongKind { expected: "lie" });
        }
        Ok(Self {
            l,
            source: Arc::new(CochainSpace::new(l.dim(), coeff, n)?),
            target: Arc::new(CochainSpace::new(l.dim(), coeff, n + 1)?),
            support: bracket_support(l),
        })
    }

    /// Image of the basis cochain at `coord`, as a list of target coordinates
    /// (with repetitions cancelling).
    fn column_into(&self, coord: usize, out: &mut BitVector) {
        let (tuple, m) = self.source.split(coord);
        let dm = self.source.dim_m;
        let i_mask = mask(tuple);
        if self.source.coeff == Coefficients::Adjoint {
            for k in 0..self.l.dim() {
                if i_mask & (1 << k) != 0 {
                    continue;
                }
                let v = self.l.product(k, m);
                if v.is_zero() {
                    continue;
                }
                let r = self.target.rank_of_mask(i_mask | (1 << k));
                for t in v.ones() {
                    out.flip(r * dm + t);
                }
            }
        }
        for &c in tuple {
            let rest = i_mask & !(1u64 << c);
            for &(a, b) in &self.support[c] {
                let ab = (1u64 << a) | (1u64 << b);
                if rest & ab != 0 {
                    continue;
                }
                let r = self.target.rank_of_mask(rest | ab);
                out.flip(r * dm + m);
            }
        }
    }

    fn column(&self, coord: usize) -> BitVector {
        let mut out = BitVector::zeros(self.target.dim());
        self.column_into(coord, &mut out);
        out
    }

    fn apply(&self, data: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.target.dim());
        for c in data.ones() {
            self.column_into(c, &mut out);
        }
        out
    }

    /// Matrix of `d` restricted to the listed source and target coordinates.
    /// Coordinates outside `rows` must not be hit by the listed columns.
    fn restricted_matrix(&self, cols: &[usize], rows: &[usize]) -> BitMatrix {
        let mut pos = vec![usize::MAX; self.target.dim()];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let columns: Vec<BitVector> = cols
            .par_iter()
            .map(|&c| {
                let full = self.column(c);
                BitVector::from_indices(
                    rows.len(),
                    full.ones().map(|t| {
                        debug_assert!(pos[t] != usize::MAX, "differential leaves the weight slice");
                        pos[t]
                    }),
                )
            })
            .collect();
        BitMatrix::from_columns(rows.len(), &columns).expect("column lengths agree")
    }
}

/// Matrix of `d: Cⁿ(L, M) → Cⁿ⁺¹(L, M)` in the canonical bases.
pub fn coboundary_matrix(l: &AlgebraTable, coeff: Coefficients, n: usize) -> Result<BitMatrix> {
    let d = Differential::new(l, coeff, n)?;
    let cols: Vec<usize> = (0..d.source.dim()).collect();
    let rows: Vec<usize> = (0..d.target.dim()).collect();
    Ok(d.restricted_matrix(&cols, &rows))
}

pub fn cochain_space(l: &AlgebraTable, coeff: Coefficients, n: usize) -> Result<Arc<CochainSpace>> {
    Ok(Arc::new(CochainSpace::new(l.dim(), coeff, n)?))
}

/// `dφ`.
pub fn coboundary(l: &AlgebraTable, phi: &Cochain) -> Result<Cochain> {
    if phi.space.dim_l != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: phi.space.dim_l,
        });
    }
    let d = Differential::new(l, phi.space.coeff, phi.space.degree)?;
    let data = d.apply(&phi.data);
    Ok(Cochain {
        space: d.target.clone(),
        data,
    })
}

pub fn is_cocycle(l: &AlgebraTable, phi: &Cochain) -> Result<bool> {
    Ok(coboundary(l, phi)?.is_zero())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CohomologyReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<serde_json::Value>,
    pub module: Coefficients,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightSelection>,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub by_weight: Option<BTreeMap<i64, usize>>,
    /// Each representative as a list of `[tuple, m]` coordinates.
    pub representatives: Vec<Vec<(Vec<usize>, usize)>>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum WeightSelection {
    Exact(i64),
    Positive,
}

/// Result of a cohomology computation with the representatives as cochains.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub report: CohomologyReport,
    pub representatives: Vec<Cochain>,
}

fn select_coords(space: &CochainSpace, weights: Option<&[i64]>, keep: &dyn Fn(i64) -> bool) -> Vec<usize> {
    match weights {
        None => (0..space.dim()).collect(),
        Some(w) => (0..space.dim())
            .filter(|&c| keep(space.coordinate_weight(w, c)))
            .collect(),
    }
}

fn compute(l: &AlgebraTable, coeff: Coefficients, n: usize, filter: Option<&dyn Fn(i64) -> bool>) -> Result<Cohomology> {
    let weights = match filter {
        Some(_) => Some(l.weights().ok_or(Error::NoGrading)?),
        None => None,
    };
    let keep: &dyn Fn(i64) -> bool = filter.unwrap_or(&|_| true);
    let dn = Differential::new(l, coeff, n)?;
    let src = select_coords(&dn.source, weights, keep);
    let tgt = select_coords(&dn.target, weights, keep);
    let zmat = dn.restricted_matrix(&src, &tgt);
    let z = zmat.nullspace();

    let b = if n == 0 {
        Subspace::zero(src.len())
    } else {
        let dp = Differential::new(l, coeff, n - 1)?;
        let prev = select_coords(&dp.source, weights, keep);
        dp.restricted_matrix(&prev, &src).column_space()
    };

    // complete a basis of B to one of Z
    let mut acc = b.clone();
    let mut reps = Vec::new();
    for v in z.basis() {
        if !acc.contains(v)? {
            acc = acc.sum(&Subspace::from_spanning(src.len(), vec![v.clone()])?)?;
            let full = BitVector::from_indices(dn.source.dim(), v.ones().map(|k| src[k]));
            reps.push(Cochain {
                space: dn.source.clone(),
                data: full,
            });
        }
    }
    let report = CohomologyReport {
        algebra: l.provenance().cloned(),
        module: coeff,
        degree: n,
        weight: None,
        dim_z: z.dim(),
        dim_b: b.dim(),
        dim_h: z.dim() - b.dim(),
        by_weight: None,
        representatives: reps.iter().map(Cochain::sparse).collect(),
    };
    debug_assert_eq!(report.dim_h, reps.len());
    Ok(Cohomology {
        report,
        representatives: reps,
    })
}

/// `Hⁿ(L, M)` on the full complex.
pub fn cohomology(l: &AlgebraTable, coeff: Coefficients, n: usize) -> Result<Cohomology> {
    compute(l, coeff, n, None)
}

/// Weights occupied by coordinates of `Cⁿ(L, M)`.
pub fn occupied_weights(l: &AlgebraTable, coeff: Coefficients, n: usize) -> Result<BTreeSet<i64>> {
    let w = l.weights().ok_or(Error::NoGrading)?;
    let space = CochainSpace::new(l.dim(), coeff, n)?;
    Ok((0..space.dim()).map(|c| space.coordinate_weight(w, c)).collect())
}

/// `Hⁿ_λ(L, M)`: the weight-`λ` subcomplex.
pub fn graded_cohomology(l: &AlgebraTable, coeff: Coefficients, n: usize, weight: i64) -> Result<Cohomology> {
    let mut c = compute(l, coeff, n, Some(&|w| w == weight))?;
    c.report.weight = Some(WeightSelection::Exact(weight));
    Ok(c)
}

/// Per-weight dimensions of `Hⁿ(L, M)` over all occupied weights.
pub fn weight_decomposition(l: &AlgebraTable, coeff: Coefficients, n: usize) -> Result<BTreeMap<i64, usize>> {
    let ws: Vec<i64> = occupied_weights(l, coeff, n)?.into_iter().collect();
    let dims = ws
        .par_iter()
        .map(|&w| graded_cohomology(l, coeff, n, w).map(|c| (w, c.report.dim_h)))
        .collect::<Result<Vec<_>>>()?;
    Ok(dims.into_iter().filter(|&(_, d)| d > 0).collect())
}

/// The full complex together with its weight decomposition.
pub fn cohomology_with_weights(l: &AlgebraTable, coeff: Coefficients, n: usize) -> Result<Cohomology> {
    let mut c = cohomology(l, coeff, n)?;
    c.report.by_weight = Some(weight_decomposition(l, coeff, n)?);
    Ok(c)
}

/// `Hⁿ₊(L, M) = ⊕_{λ>0} Hⁿ_λ(L, M)`, computed on the subcomplex of all
/// positive-weight coordinates at once.
pub fn positive_cohomology(l: &AlgebraTable, coeff: Coefficients, n: usize) -> Result<Cohomology> {
    let mut c = compute(l, coeff, n, Some(&|w| w > 0))?;
    c.report.weight = Some(WeightSelection::Positive);
    let by = weight_decomposition(l, coeff, n)?;
    c.report.by_weight = Some(by.into_iter().filter(|&(w, _)| w > 0).collect());
    Ok(c)
}

fn check_algebra(l: &AlgebraTable, c: &Cochain) -> Result<()> {
    if c.space.dim_l != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: c.space.dim_l,
        });
    }
    Ok(())
}

/// Some `x` with `dx = c`, or `None`. Fails if `c` is not a cocycle.
pub fn is_coboundary(l: &AlgebraTable, c: &Cochain) -> Result<Option<Cochain>> {
    check_algebra(l, c)?;
    if !is_cocycle(l, c)? {
        return Err(Error::NotACocycle);
    }
    let n = c.degree();
    if n == 0 {
        return Ok(c.is_zero().then(|| c.clone()));
    }
    let d = Differential::new(l, c.coefficients(), n - 1)?;
    let cols: Vec<usize> = (0..d.source.dim()).collect();
    let rows: Vec<usize> = (0..d.target.dim()).collect();
    let m = d.restricted_matrix(&cols, &rows);
    Ok(m.solve(&c.data)?.map(|x| Cochain {
        space: d.source.clone(),
        data: x,
    }))
}

/// Some `x` of the given weight with `dx = c` (any weight when `None`), or
/// `None` if no such preimage exists. `c` need not be a cocycle.
pub fn preimage_in_weight(l: &AlgebraTable, c: &Cochain, weight: Option<i64>) -> Result<Option<Cochain>> {
    check_algebra(l, c)?;
    let n = c.degree();
    if n == 0 {
        return Ok(c.is_zero().then(|| c.clone()));
    }
    let d = Differential::new(l, c.coefficients(), n - 1)?;
    let cols = match weight {
        Some(w) => {
            let ws = l.weights().ok_or(Error::NoGrading)?;
            select_coords(&d.source, Some(ws), &|x| x == w)
        }
        None => (0..d.source.dim()).collect(),
    };
    let rows: Vec<usize> = (0..d.target.dim()).collect();
    let m = d.restricted_matrix(&cols, &rows);
    Ok(m.solve(&c.data)?.map(|x| Cochain {
        space: d.source.clone(),
        data: BitVector::from_indices(d.source.dim(), x.ones().map(|k| cols[k])),
    }))
}

/// The adjoint 1-cochain of a linear map `L → L`.
pub fn cochain_from_map(l: &AlgebraTable, map: &LinearMap) -> Result<Cochain> {
    if map.source() != l.dim() || map.target() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: map.source(),
        });
    }
    Cochain::from_fn(cochain_space(l, Coefficients::Adjoint, 1)?, |t| map.image_of_basis(t[0]))
}

/// Whether the given cocycles have linearly independent classes.
pub fn classes_independent(l: &AlgebraTable, cocycles: &[Cochain]) -> Result<bool> {
    let Some(first) = cocycles.first() else {
        return Ok(true);
    };
    for c in cocycles {
        check_algebra(l, c)?;
        first.check_same(c)?;
        if !is_cocycle(l, c)? {
            return Err(Error::NotACocycle);
        }
    }
    let n = first.degree();
    let ambient = first.space.dim();
    let b = if n == 0 {
        Subspace::zero(ambient)
    } else {
        let d = Differential::new(l, first.coefficients(), n - 1)?;
        let cols: Vec<usize> = (0..d.source.dim()).collect();
        let rows: Vec<usize> = (0..d.target.dim()).collect();
        d.restricted_matrix(&cols, &rows).column_space()
    };
    let span = Subspace::from_spanning(ambient, cocycles.iter().map(|c| c.data.clone()).collect())?;
    Ok(b.sum(&span)?.dim() == b.dim() + cocycles.len())
}

fn current_shape(base: &AlgebraTable, a: &AlgebraTable, c: &AlgebraTable) -> Result<()> {
    if c.dim() != base.dim() * a.dim() {
        return Err(Error::DimensionMismatch {
            expected: base.dim() * a.dim(),
            found: c.dim(),
        });
    }
    Ok(())
}

/// Embeds an adjoint cocycle `φ` of `L` into `L ⊗ A`:
/// `(x_1⊗a_1) ∧ … ∧ (x_k⊗a_k) ↦ φ(x_1, …, x_k) ⊗ a_1⋯a_k u`.
pub fn wrap_cocycle(base: &AlgebraTable, a: &AlgebraTable, current: &AlgebraTable, phi: &Cochain, u: &BitVector) -> Result<Cochain> {
    current_shape(base, a, current)?;
    check_algebra(base, phi)?;
    if phi.coefficients() != Coefficients::Adjoint {
        return Err(Error::Unsupported("wrapping needs adjoint coefficients".into()));
    }
    if u.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: u.len(),
        });
    }
    let na = a.dim();
    let space = cochain_space(current, Coefficients::Adjoint, phi.degree())?;
    let mut err = None;
    let out = Cochain::from_fn(space, |t| {
        let xs: Vec<usize> = t.iter().map(|p| p / na).collect();
        let value = phi.value(&xs);
        if value.is_zero() {
            return BitVector::zeros(current.dim());
        }
        let mut prod = u.clone();
        for p in t {
            match a.multiply(&a.basis(p % na), &prod) {
                Ok(v) => prod = v,
                Err(e) => err = Some(e),
            }
        }
        tensor(&value, &prod)
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `(x⊗a) ∧ (y⊗b) ↦ ω([x,y]) ⊗ α(a,b)` for `ω` in the centroid of `L` and a
/// symmetric `α: A × A → A`.
pub fn wrap_centroid(base: &AlgebraTable, a: &AlgebraTable, current: &AlgebraTable, omega: &LinearMap, alpha: &BilinearForm) -> Result<Cochain> {
    current_shape(base, a, current)?;
    if omega.source() != base.dim() || omega.target() != base.dim() {
        return Err(Error::DimensionMismatch {
            expected: base.dim(),
            found: omega.source(),
        });
    }
    if alpha.left() != a.dim() || alpha.right() != a.dim() || alpha.target() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: alpha.left(),
        });
    }
    if !alpha.is_symmetric() {
        return Err(Error::InvalidParameter("α must be symmetric".into()));
    }
    let na = a.dim();
    let space = cochain_space(current, Coefficients::Adjoint, 2)?;
    Cochain::from_fn(space, |t| {
        let (p, q) = (t[0], t[1]);
        let xy = omega.apply(base.product(p / na, q / na)).expect("shape checked");
        tensor(&xy, alpha.value(p % na, q % na))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{sl2, E, F, H};

    #[test]
    fn tuple_order_is_lexicographic() {
        let s = CochainSpace::new(4, Coefficients::Trivial, 2).unwrap();
        let ts: Vec<Vec<usize>> = (0..s.tuple_count()).map(|r| s.tuple(r).to_vec()).collect();
        assert_eq!(ts, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(s.tuple_rank(&[3, 1]), Some(4));
        assert_eq!(s.tuple_rank(&[1, 1]), None);
    }

    #[test]
    fn d_of_dual_h() {
        // h* sends e∧f to 1 since [e,f] = h
        let s = sl2();
        let space = cochain_space(&s, Coefficients::Trivial, 1).unwrap();
        let mut hstar = Cochain::zero(space);
        hstar.set_value(&[H], &BitVector::unit(1, 0)).unwrap();
        let d = coboundary(&s, &hstar).unwrap();
        assert_eq!(d.value(&[E, F]), BitVector::unit(1, 0));
        assert!(d.value(&[E, H]).is_zero());
        assert!(d.value(&[H, F]).is_zero());
    }

    #[test]
    fn degree_zero_adjoint_is_ad() {
        let s = sl2();
        let d0 = coboundary_matrix(&s, Coefficients::Adjoint, 0).unwrap();
        for x in 0..3 {
            for m in 0..3 {
                for t in 0..3 {
                    assert_eq!(d0.get(x * 3 + t, m), s.product(x, m).get(t));
                }
            }
        }
        assert_eq!(d0.nullspace().dim(), 0);
    }

    #[test]
    fn sl2_adjoint_cohomology() {
        let s = sl2();
        let dims: Vec<usize> = (0..4).map(|n| cohomology(&s, Coefficients::Adjoint, n).unwrap().report.dim_h).collect();
        assert_eq!(dims, vec![0, 2, 2, 0]);
        let by = weight_decomposition(&s, Coefficients::Adjoint, 2).unwrap();
        assert_eq!(by, BTreeMap::from([(-2, 1), (2, 1)]));
    }

    #[test]
    fn eval_matches_value_on_basis() {
        let s = sl2();
        let space = cochain_space(&s, Coefficients::Adjoint, 2).unwrap();
        let mut phi = Cochain::zero(space);
        phi.set_value(&[E, H], &BitVector::unit(3, F)).unwrap();
        let x = BitVector::from_indices(3, [E, F]);
        let y = BitVector::unit(3, H);
        // φ(e+f, h) = φ(e,h) + φ(f,h) = f
        assert_eq!(phi.eval(&[&x, &y]).unwrap(), BitVector::unit(3, F));
        assert_eq!(phi.homogeneous_weight(&s).unwrap(), Some(2));
    }
}
