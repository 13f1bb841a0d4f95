//! Structural invariants of Lie algebras over GF(2): center, commutant,
//! derivations, centroid, invariant symmetric forms, the 2-envelope inside
//! `Der(L)`, torus certificates, absolute zero divisors and simplicity scans.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, AlgebraTable, ClosureOp, LinearMap};
use crate::comm::BilinearForm;
use crate::error::{Error, Result};
use crate::gf2::{solve_homogeneous, BitMatrix, BitVector, SpanSolver, Subspace};

/// Exhaustive scans over all GF(2) points are capped at this dimension.
pub const SCAN_CAP: usize = 16;
/// Cap for enumerating every element of an envelope.
pub const ENVELOPE_SCAN_CAP: usize = 22;

fn require_lie(l: &AlgebraTable) -> Result<()> {
    if l.kind() != AlgebraKind::Lie {
        return Err(Error::WrongKind { expected: "lie" });
    }
    Ok(())
}

/// Solutions of `D(xy) = D(x)y + xD(y)` on all basis pairs, for either kind.
/// Unknown `i * n + j` is the coefficient of `b_i` in `D(b_j)`.
pub fn derivations(t: &AlgebraTable) -> Result<Vec<LinearMap>> {
    let n = t.dim();
    let sol = solve_homogeneous(n * n, n * n * n, |k| {
        let (i, j) = (k / n, k % n);
        let mut res = BitVector::zeros(n * n * n);
        for x in 0..n {
            for y in 0..n {
                let mut v = BitVector::zeros(n);
                if t.product(x, y).get(j) {
                    v.flip(i);
                }
                if x == j {
                    v.xor_assign(t.product(i, y));
                }
                if y == j {
                    v.xor_assign(t.product(x, i));
                }
                for o in v.ones() {
                    res.set((x * n + y) * n + o, true);
                }
            }
        }
        res
    });
    Ok(sol.basis().iter().map(|f| LinearMap::from_flat(n, n, f)).collect())
}

pub fn center(l: &AlgebraTable) -> Result<Subspace> {
    require_lie(l)?;
    let n = l.dim();
    Ok(solve_homogeneous(n, n * n, |i| {
        let mut res = BitVector::zeros(n * n);
        for j in 0..n {
            for o in l.product(i, j).ones() {
                res.set(j * n + o, true);
            }
        }
        res
    }))
}

pub fn commutant(l: &AlgebraTable) -> Result<Subspace> {
    require_lie(l)?;
    let n = l.dim();
    Subspace::from_spanning(
        n,
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| l.product(i, j).clone()).collect(),
    )
}

pub fn derivation_algebra(l: &AlgebraTable) -> Result<Vec<LinearMap>> {
    require_lie(l)?;
    derivations(l)
}

/// Maps `ω` with `ω([x,y]) = [x, ω(y)]`.
pub fn centroid(l: &AlgebraTable) -> Result<Vec<LinearMap>> {
    require_lie(l)?;
    let n = l.dim();
    let sol = solve_homogeneous(n * n, n * n * n, |k| {
        let (i, j) = (k / n, k % n);
        let mut res = BitVector::zeros(n * n * n);
        for x in 0..n {
            for y in 0..n {
                let mut v = BitVector::zeros(n);
                if l.product(x, y).get(j) {
                    v.flip(i);
                }
                if y == j {
                    v.xor_assign(l.product(x, i));
                }
                for o in v.ones() {
                    res.set((x * n + y) * n + o, true);
                }
            }
        }
        res
    });
    Ok(sol.basis().iter().map(|f| LinearMap::from_flat(n, n, f)).collect())
}

/// Symmetric `B: L × L → K` with `B([x,y], z) = B(y, [x,z])`.
pub fn invariant_symmetric_forms(l: &AlgebraTable) -> Result<Vec<BilinearForm>> {
    require_lie(l)?;
    let n = l.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let form = |coeffs: &BitVector| {
        let mut f = BilinearForm::zero(n, n, 1);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if coeffs.get(k) {
                f.set(i, j, BitVector::unit(1, 0));
                f.set(j, i, BitVector::unit(1, 0));
            }
        }
        f
    };
    let sol = solve_homogeneous(pairs.len(), n * n * n, |k| {
        let f = form(&BitVector::unit(pairs.len(), k));
        let mut res = BitVector::zeros(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = f.eval(l.product(x, y), &l.basis(z)).get(0) ^ f.eval(&l.basis(y), l.product(x, z)).get(0);
                    res.set((x * n + y) * n + z, v);
                }
            }
        }
        res
    });
    Ok(sol.basis().iter().map(form).collect())
}

/// The 2-envelope of `ad(L)` inside `gl(L)`, with its squaring and bracket.
///
/// Squaring is not additive: `(a+b)^[2] = a^[2] + b^[2] + [a,b]`. The table
/// stores the squares of basis elements and all basis brackets; the square of
/// a general element follows by polarization.
#[derive(Clone, Debug)]
pub struct EnvelopeTable {
    n: usize,
    ad_dim: usize,
    basis: Vec<LinearMap>,
    solver: SpanSolver,
    squares: Vec<BitVector>,
    brackets: Vec<BitVector>,
}

impl EnvelopeTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    /// The first `ad_dim` basis elements are `ad b_0, …, ad b_{n-1}`.
    pub fn ad_dim(&self) -> usize {
        self.ad_dim
    }

    pub fn basis(&self) -> &[LinearMap] {
        &self.basis
    }

    pub fn coords(&self, m: &LinearMap) -> Result<BitVector> {
        if m.source() != self.n || m.target() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.source(),
            });
        }
        self.solver.express(&m.flatten()).ok_or(Error::OutsideEnvelope)
    }

    pub fn element(&self, coords: &BitVector) -> LinearMap {
        let mut m = LinearMap::zero(self.n, self.n);
        for i in coords.ones() {
            m = m.add(&self.basis[i]).expect("shapes agree");
        }
        m
    }

    /// Row `i` holds the coordinates of `b_i^[2]`.
    pub fn squaring_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.dim(), self.squares.clone()).expect("square coords")
    }

    pub fn bracket_coords(&self, x: &BitVector, y: &BitVector) -> BitVector {
        let d = self.dim();
        let mut out = BitVector::zeros(d);
        for i in x.ones() {
            for j in y.ones() {
                out.xor_assign(&self.brackets[i * d + j]);
            }
        }
        out
    }

    /// `x^[2] = Σ c_i b_i^[2] + Σ_{i<j} c_i c_j [b_i, b_j]`.
    pub fn square_coords(&self, x: &BitVector) -> BitVector {
        let d = self.dim();
        let mut out = BitVector::zeros(d);
        let idx: Vec<usize> = x.ones().collect();
        for (a, &i) in idx.iter().enumerate() {
            out.xor_assign(&self.squares[i]);
            for &j in &idx[a + 1..] {
                out.xor_assign(&self.brackets[i * d + j]);
            }
        }
        out
    }

    /// Coordinates of `(ad v)` for a vector `v` of the algebra.
    pub fn ad_coords(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.dim());
        for i in v.ones() {
            out.flip(i);
        }
        out
    }

    fn small(&self) -> Option<SmallEnvelope> {
        let d = self.dim();
        if d > 63 {
            return None;
        }
        Some(SmallEnvelope {
            d,
            squares: self.squares.iter().map(BitVector::to_u64).collect(),
            brackets: self.brackets.iter().map(BitVector::to_u64).collect(),
        })
    }
}

struct SmallEnvelope {
    d: usize,
    squares: Vec<u64>,
    brackets: Vec<u64>,
}

impl SmallEnvelope {
    fn square(&self, x: u64) -> u64 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out ^= self.squares[i];
            let mut r2 = rest;
            while r2 != 0 {
                let j = r2.trailing_zeros() as usize;
                r2 &= r2 - 1;
                out ^= self.brackets[i * self.d + j];
            }
        }
        out
    }

    fn bracket(&self, x: u64, y: u64) -> u64 {
        let mut out = 0;
        let mut rx = x;
        while rx != 0 {
            let i = rx.trailing_zeros() as usize;
            rx &= rx - 1;
            let mut ry = y;
            while ry != 0 {
                let j = ry.trailing_zeros() as usize;
                ry &= ry - 1;
                out ^= self.brackets[i * self.d + j];
            }
        }
        out
    }
}

/// Closure of `ad(L)` under commutator and squaring. Needs a centerless `L`
/// so that `ad` is injective.
pub fn two_envelope(l: &AlgebraTable) -> Result<EnvelopeTable> {
    require_lie(l)?;
    if center(l)?.dim() != 0 {
        return Err(Error::NonzeroCenter);
    }
    let n = l.dim();
    let mut basis: Vec<LinearMap> = (0..n).map(|i| l.ad_basis(i)).collect();
    let mut span = Subspace::from_spanning(n * n, basis.iter().map(LinearMap::flatten).collect())?;
    let mut i = 0;
    while i < basis.len() {
        let mut fresh = vec![basis[i].square()?];
        for j in 0..i {
            fresh.push(basis[i].commutator(&basis[j])?);
        }
        for m in fresh {
            let flat = m.flatten();
            if !span.contains(&flat)? {
                span = span.sum(&Subspace::from_spanning(n * n, vec![flat])?)?;
                basis.push(m);
            }
        }
        i += 1;
    }
    let flats: Vec<BitVector> = basis.iter().map(LinearMap::flatten).collect();
    let solver = SpanSolver::new(n * n, &flats)?;
    let express = |m: &LinearMap| solver.express(&m.flatten()).expect("envelope is closed");
    let squares = basis.iter().map(|b| express(&b.square().expect("square"))).collect();
    let d = basis.len();
    let mut brackets = vec![BitVector::zeros(d); d * d];
    for a in 0..d {
        for b in (a + 1)..d {
            let c = express(&basis[a].commutator(&basis[b])?);
            brackets[a * d + b] = c.clone();
            brackets[b * d + a] = c;
        }
    }
    Ok(EnvelopeTable {
        n,
        ad_dim: n,
        basis,
        solver,
        squares,
        brackets,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCertificate {
    pub dim: usize,
    pub abelian: bool,
    pub squaring_closed: bool,
    pub squaring_injective: bool,
    pub valid: bool,
}

/// Checks that the span of `elements` (maps in `gl(L)`) is a torus of the
/// envelope. Injectivity is tested as invertibility of the squaring matrix on
/// the span; over the prime field this matrix also governs the semilinear
/// 2-map after any field extension.
pub fn verify_torus(env: &EnvelopeTable, elements: &[LinearMap]) -> Result<TorusCertificate> {
    let coords: Vec<BitVector> = elements.iter().map(|m| env.coords(m)).collect::<Result<_>>()?;
    let t = Subspace::from_spanning(env.dim(), coords)?;
    let tb = t.basis();
    let k = tb.len();
    let mut abelian = true;
    let mut closed = true;
    for a in 0..k {
        if !t.contains(&env.square_coords(&tb[a]))? {
            closed = false;
        }
        for b in (a + 1)..k {
            let c = env.bracket_coords(&tb[a], &tb[b]);
            if !c.is_zero() {
                abelian = false;
            }
            if !t.contains(&c)? {
                closed = false;
            }
        }
    }
    let injective = abelian && closed && {
        let solver = SpanSolver::new(env.dim(), tb)?;
        let cols: Vec<BitVector> = tb
            .iter()
            .map(|b| solver.express(&env.square_coords(b)).expect("closed"))
            .collect();
        BitMatrix::from_columns(k, &cols)?.rank() == k
    };
    Ok(TorusCertificate {
        dim: k,
        abelian,
        squaring_closed: closed,
        squaring_injective: injective,
        valid: abelian && closed && injective,
    })
}

/// Greedy lower bound on the toral rank: scans every element of the
/// envelope for toral elements (`t^[2] = t`) and greedily collects pairwise
/// commuting, linearly independent ones. Their span is a torus.
pub fn greedy_torus(env: &EnvelopeTable) -> Result<Vec<BitVector>> {
    let d = env.dim();
    if d > ENVELOPE_SCAN_CAP {
        return Err(Error::CapExceeded {
            what: "envelope scan",
            dim: d,
            cap: ENVELOPE_SCAN_CAP,
        });
    }
    let small = env.small().expect("dimension below cap");
    let toral: Vec<u64> = (1u64..(1u64 << d))
        .into_par_iter()
        .filter(|&x| small.square(x) == x)
        .collect();
    let mut chosen: Vec<u64> = Vec::new();
    let mut pivots = [0u64; 64];
    for &t in &toral {
        if chosen.iter().any(|&c| small.bracket(c, t) != 0) {
            continue;
        }
        let mut r = t;
        while r != 0 {
            let p = 63 - r.leading_zeros() as usize;
            if pivots[p] == 0 {
                break;
            }
            r ^= pivots[p];
        }
        if r == 0 {
            continue;
        }
        pivots[63 - r.leading_zeros() as usize] = r;
        chosen.push(t);
    }
    Ok(chosen.into_iter().map(|c| BitVector::from_u64(d, c)).collect())
}

/// Structure constants packed into machine words, for exhaustive scans.
struct SmallLie {
    n: usize,
    /// `ad[j][i]` = `[b_j, b_i]` as a bit mask.
    ad: Vec<Vec<u64>>,
}

impl SmallLie {
    fn new(l: &AlgebraTable) -> Self {
        let n = l.dim();
        let ad = (0..n).map(|j| (0..n).map(|i| l.product(j, i).to_u64()).collect()).collect();
        Self { n, ad }
    }

    fn apply(cols: &[u64], v: u64) -> u64 {
        let mut out = 0;
        let mut r = v;
        while r != 0 {
            let i = r.trailing_zeros() as usize;
            r &= r - 1;
            out ^= cols[i];
        }
        out
    }

    /// Columns of `ad x`.
    fn ad_of(&self, x: u64) -> Vec<u64> {
        (0..self.n)
            .map(|k| {
                let mut out = 0;
                let mut r = x;
                while r != 0 {
                    let i = r.trailing_zeros() as usize;
                    r &= r - 1;
                    out ^= self.ad[i][k];
                }
                out
            })
            .collect()
    }

    /// Ideal generated by `v` as pivot-indexed echelon rows; stops early once
    /// the whole algebra is reached.
    fn ideal(&self, v: u64) -> Vec<u64> {
        let mut pivots = [0u64; 64];
        let mut dim = 0;
        let mut frontier = vec![v];
        let insert = |pivots: &mut [u64; 64], mut x: u64| -> Option<u64> {
            while x != 0 {
                let p = 63 - x.leading_zeros() as usize;
                if pivots[p] == 0 {
                    pivots[p] = x;
                    return Some(x);
                }
                x ^= pivots[p];
            }
            None
        };
        if insert(&mut pivots, v).is_none() {
            return Vec::new();
        }
        dim += 1;
        while let Some(w) = frontier.pop() {
            if dim == self.n {
                break;
            }
            for j in 0..self.n {
                let y = Self::apply(&self.ad[j], w);
                if let Some(z) = insert(&mut pivots, y) {
                    dim += 1;
                    frontier.push(z);
                }
            }
        }
        pivots.iter().copied().filter(|&p| p != 0).collect()
    }
}

fn scan_cap(l: &AlgebraTable) -> Result<()> {
    if l.dim() > SCAN_CAP {
        return Err(Error::CapExceeded {
            what: "exhaustive scan",
            dim: l.dim(),
            cap: SCAN_CAP,
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ZeroDivisors {
    /// Number of nonzero `x` with `(ad x)² = 0`.
    pub count: usize,
    pub span: Subspace,
    pub subalgebra: Subspace,
}

/// Elements `x` with `(ad x)² = 0`, found by enumerating all of `L`, and the
/// subalgebra they generate.
pub fn absolute_zero_divisors(l: &AlgebraTable) -> Result<ZeroDivisors> {
    require_lie(l)?;
    scan_cap(l)?;
    let small = SmallLie::new(l);
    let n = l.dim();
    let found: Vec<u64> = (1u64..(1u64 << n))
        .into_par_iter()
        .filter(|&x| {
            let cols = small.ad_of(x);
            cols.iter().all(|&c| SmallLie::apply(&cols, c) == 0)
        })
        .collect();
    let span = Subspace::from_spanning(n, found.iter().map(|&x| BitVector::from_u64(n, x)).collect())?;
    let subalgebra = l.span_closure(&span, &[ClosureOp::Subalgebra])?;
    Ok(ZeroDivisors {
        count: found.len(),
        span,
        subalgebra,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    /// A proper nonzero ideal when one exists.
    pub witness: Option<Subspace>,
}

/// Simplicity over GF(2): `L` is nonabelian and the ideal generated by every
/// nonzero vector is all of `L`.
pub fn is_simple_gf2(l: &AlgebraTable) -> Result<SimplicityVerdict> {
    require_lie(l)?;
    scan_cap(l)?;
    let n = l.dim();
    if commutant(l)?.dim() == 0 {
        let witness = (n > 1).then(|| Subspace::coordinate(n, &[0]).expect("index 0"));
        return Ok(SimplicityVerdict { simple: false, witness });
    }
    let small = SmallLie::new(l);
    let bad = (1u64..(1u64 << n))
        .into_par_iter()
        .map(|v| (v, small.ideal(v)))
        .find_first(|(_, ideal)| ideal.len() < n);
    Ok(match bad {
        None => SimplicityVerdict {
            simple: true,
            witness: None,
        },
        Some((_, ideal)) => SimplicityVerdict {
            simple: false,
            witness: Some(Subspace::from_spanning(n, ideal.iter().map(|&x| BitVector::from_u64(n, x)).collect())?),
        },
    })
}

/// Basis of the unital associative algebra generated by `ad b_0, …, ad b_{n-1}`.
pub fn multiplication_algebra(l: &AlgebraTable) -> Result<Vec<LinearMap>> {
    require_lie(l)?;
    let n = l.dim();
    let ads: Vec<LinearMap> = (0..n).map(|i| l.ad_basis(i)).collect();
    let mut basis = vec![LinearMap::identity(n)];
    let mut span = Subspace::from_spanning(n * n, vec![basis[0].flatten()])?;
    let mut i = 0;
    while i < basis.len() {
        for a in &ads {
            let m = a.compose(&basis[i])?;
            let flat = m.flatten();
            if !span.contains(&flat)? {
                span = span.sum(&Subspace::from_spanning(n * n, vec![flat])?)?;
                basis.push(m);
            }
        }
        i += 1;
    }
    Ok(basis)
}

/// Second simplicity test: `L` is an irreducible module over its
/// multiplication algebra `M`, i.e. `M·v = L` for every nonzero `v`.
pub fn is_simple_module_scan(l: &AlgebraTable) -> Result<bool> {
    require_lie(l)?;
    scan_cap(l)?;
    let n = l.dim();
    if commutant(l)?.dim() == 0 {
        return Ok(false);
    }
    let m = multiplication_algebra(l)?;
    let cols: Vec<Vec<u64>> = m
        .iter()
        .map(|x| (0..n).map(|k| x.image_of_basis(k).to_u64()).collect())
        .collect();
    let ok = (1u64..(1u64 << n)).into_par_iter().all(|v| {
        let mut pivots = [0u64; 64];
        let mut rank = 0;
        for c in &cols {
            let mut x = SmallLie::apply(c, v);
            while x != 0 {
                let p = 63 - x.leading_zeros() as usize;
                if pivots[p] == 0 {
                    pivots[p] = x;
                    rank += 1;
                    break;
                }
                x ^= pivots[p];
            }
            if rank == n {
                return true;
            }
        }
        false
    });
    Ok(ok)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvariantReport {
    pub dim: usize,
    pub center: usize,
    pub commutant: usize,
    pub der_dim: usize,
    pub centroid_dim: usize,
    pub inv_form_dim: usize,
    pub envelope_dim: Option<usize>,
    pub torus_rank_lb: Option<usize>,
    pub azd_subalg_dim: Option<usize>,
    pub simple_gf2: Option<bool>,
    pub caveats: Vec<String>,
}

/// All invariants; `deep` adds the exhaustive scans (dimension ≤ 16).
pub fn invariant_report(l: &AlgebraTable, deep: bool) -> Result<InvariantReport> {
    require_lie(l)?;
    let center_dim = center(l)?.dim();
    let mut caveats = Vec::new();
    let envelope = if center_dim == 0 {
        Some(two_envelope(l)?)
    } else {
        caveats.push("nonzero center: envelope not built".to_string());
        None
    };
    let (mut torus, mut azd, mut simple) = (None, None, None);
    if deep {
        scan_cap(l)?;
        azd = Some(absolute_zero_divisors(l)?.subalgebra.dim());
        simple = Some(is_simple_gf2(l)?.simple);
        caveats.push("simplicity and zero divisors are computed over GF(2) only".to_string());
        if let Some(env) = &envelope {
            if env.dim() <= ENVELOPE_SCAN_CAP {
                torus = Some(greedy_torus(env)?.len());
                caveats.push("torus_rank_lb is a greedy lower bound".to_string());
            }
        }
    }
    Ok(InvariantReport {
        dim: l.dim(),
        center: center_dim,
        commutant: commutant(l)?.dim(),
        der_dim: derivation_algebra(l)?.len(),
        centroid_dim: centroid(l)?.len(),
        inv_form_dim: invariant_symmetric_forms(l)?.len(),
        envelope_dim: envelope.as_ref().map(EnvelopeTable::dim),
        torus_rank_lb: torus,
        azd_subalg_dim: azd,
        simple_gf2: simple,
        caveats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TableBuilder;
    use crate::constructions::{sl2, w1_2, E, F, H};

    fn abelian(n: usize) -> AlgebraTable {
        TableBuilder::new(AlgebraKind::Lie, (0..n).map(|i| format!("a{i}")).collect()).build()
    }

    #[test]
    fn sl2_invariants() {
        let s = sl2();
        assert_eq!(center(&s).unwrap().dim(), 0);
        let ders = derivation_algebra(&s).unwrap();
        assert_eq!(ders.len(), 5);
        assert!(ders.iter().all(|d| d.is_derivation(&s)));
        assert_eq!(centroid(&s).unwrap().len(), 1);
        let env = two_envelope(&s).unwrap();
        assert_eq!(env.dim(), 5);
        assert!(is_simple_gf2(&s).unwrap().simple);
        assert!(is_simple_module_scan(&s).unwrap());
    }

    #[test]
    fn w1_2_is_not_simple() {
        let w = w1_2();
        let v = is_simple_gf2(&w).unwrap();
        assert!(!v.simple);
        assert_eq!(v.witness.unwrap(), commutant(&w).unwrap());
        assert_eq!(commutant(&w).unwrap().dim(), 3);
        assert!(!is_simple_module_scan(&w).unwrap());
    }

    #[test]
    fn abelian_cases() {
        let a = abelian(2);
        assert_eq!(center(&a).unwrap().dim(), 2);
        assert_eq!(invariant_symmetric_forms(&a).unwrap().len(), 3);
        assert_eq!(absolute_zero_divisors(&a).unwrap().count, 3);
        assert!(!is_simple_gf2(&a).unwrap().simple);
        assert!(matches!(two_envelope(&a), Err(Error::NonzeroCenter)));
    }

    #[test]
    fn torus_in_sl2_envelope() {
        let s = sl2();
        let env = two_envelope(&s).unwrap();
        // (ad h)^[2] = ad h, so ad h spans a torus
        let c = verify_torus(&env, &[s.ad_basis(H)]).unwrap();
        assert!(c.valid);
        assert_eq!(c.dim, 1);
        // ad e is nilpotent: its square map is not injective on a closed span
        let c = verify_torus(&env, &[s.ad_basis(E), s.ad_basis(F)]).unwrap();
        assert!(!c.abelian);
        let z = verify_torus(&env, &[]).unwrap();
        assert!(z.valid && z.dim == 0);
    }

    #[test]
    fn envelope_polarization_matches_matrices() {
        let s = sl2();
        let env = two_envelope(&s).unwrap();
        for x in 0..(1u64 << env.dim()) {
            let c = BitVector::from_u64(env.dim(), x);
            let direct = env.coords(&env.element(&c).square().unwrap()).unwrap();
            assert_eq!(env.square_coords(&c), direct);
        }
    }
}
