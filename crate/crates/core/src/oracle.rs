//! Brute-force reference computations.
//!
//! Everything here is deliberately naive and shares no code with [`crate::gf2`],
//! [`crate::comm`] or [`crate::invariants`]: matrices are `Vec<Vec<u8>>` with
//! one byte per entry, small spaces are enumerated point by point. The values
//! these functions produce are frozen into the fixture file and used as
//! expectations for the fast code paths.

use std::collections::BTreeSet;

use crate::algebra::AlgebraTable;

/// Structure constants as bit masks: `t[i][j]` has bit `k` set iff `b_k`
/// occurs in `b_i b_j`.
fn masks(a: &AlgebraTable) -> Vec<Vec<u64>> {
    assert!(a.dim() <= 64, "oracle tables are limited to 64 basis elements");
    (0..a.dim())
        .map(|i| (0..a.dim()).map(|j| a.product(i, j).ones().fold(0u64, |m, k| m | (1 << k))).collect())
        .collect()
}

fn mul(t: &[Vec<u64>], x: u64, y: u64) -> u64 {
    let mut out = 0;
    for (i, row) in t.iter().enumerate() {
        if x >> i & 1 == 1 {
            for (j, &p) in row.iter().enumerate() {
                if y >> j & 1 == 1 {
                    out ^= p;
                }
            }
        }
    }
    out
}

/// Rank by textbook Gaussian elimination on a byte matrix.
pub fn naive_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                for k in 0..cols {
                    m[r][k] ^= m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of unknowns minus the rank of the constraint rows.
pub fn naive_nullity(unknowns: usize, rows: &[Vec<u8>]) -> usize {
    unknowns - naive_rank(rows)
}

/// `dim A^[2]` from the squares of all `2^dim A` elements.
pub fn squares_dim_by_enumeration(a: &AlgebraTable) -> usize {
    let t = masks(a);
    let n = a.dim();
    assert!(n <= 20, "enumeration limited to 20 dimensions");
    let rows: Vec<Vec<u8>> = (0..1u64 << n)
        .map(|x| mul(&t, x, x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|s| (0..n).map(|k| (s >> k & 1) as u8).collect())
        .collect();
    naive_rank(&rows)
}

/// `dim ĤC¹(A)`: alternating forms with `α(ab,c) + α(ca,b) + α(bc,a) = 0`.
/// Unknowns are `α(b_i,b_j)` for `i < j`; with at most 20 unknowns every
/// form is tested, otherwise the constraint system is eliminated.
pub fn alternating_cyclic_dim(a: &AlgebraTable) -> usize {
    let t = masks(a);
    let n = a.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j)));
    // α(x, b_k) as a row over the unknowns
    let form_row = |x: u64, k: usize| {
        let mut row = vec![0u8; pairs.len()];
        for i in 0..n {
            if x >> i & 1 == 1 && i != k {
                row[pos(i, k).unwrap()] ^= 1;
            }
        }
        row
    };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![0u8; pairs.len()];
                for (x, z) in [(t[i][j], k), (t[k][i], j), (t[j][k], i)] {
                    for (r, v) in row.iter_mut().zip(form_row(x, z)) {
                        *r ^= v;
                    }
                }
                rows.push(row);
            }
        }
    }
    if pairs.len() <= 20 {
        (0..1u64 << pairs.len())
            .filter(|&alpha| {
                rows.iter().all(|row| {
                    row.iter().enumerate().filter(|&(u, &c)| c == 1 && alpha >> u & 1 == 1).count() % 2 == 0
                })
            })
            .count()
            .trailing_zeros() as usize
    } else {
        naive_nullity(pairs.len(), &rows)
    }
}

/// `dim Har²(A,A)`: symmetric Hochschild 2-cocycles modulo coboundaries of
/// linear maps.
pub fn harrison2_dim(a: &AlgebraTable) -> usize {
    let t = masks(a);
    let n = a.dim();
    let sym: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let unknowns = sym.len() * n;
    let var = |i: usize, j: usize, o: usize| sym.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap() * n + o;
    // α(x, b_k) coordinate o, for x a mask
    let alpha_row = |x: u64, k: usize, o: usize, row: &mut Vec<u8>| {
        for i in 0..n {
            if x >> i & 1 == 1 {
                row[var(i, k, o)] ^= 1;
            }
        }
    };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // b_i α(b_j,b_k) + α(b_i b_j, b_k) + α(b_i, b_j b_k) + α(b_i,b_j) b_k
                for o in 0..n {
                    let mut row = vec![0u8; unknowns];
                    for m in 0..n {
                        if t[i][m] >> o & 1 == 1 {
                            row[var(j, k, m)] ^= 1;
                        }
                        if t[m][k] >> o & 1 == 1 {
                            row[var(i, j, m)] ^= 1;
                        }
                    }
                    alpha_row(t[i][j], k, o, &mut row);
                    alpha_row(t[j][k], i, o, &mut row);
                    rows.push(row);
                }
            }
        }
    }
    let dim_z = naive_nullity(unknowns, &rows);
    // coboundary of ω = E_{o,m} (b_m ↦ b_o) as a vector over the unknowns
    let mut images = Vec::new();
    for m in 0..n {
        for o in 0..n {
            let omega = |x: u64| if x >> m & 1 == 1 { 1u64 << o } else { 0 };
            let mut v = vec![0u8; unknowns];
            for &(i, j) in &sym {
                let val = mul(&t, 1 << i, omega(1 << j)) ^ omega(t[i][j]) ^ mul(&t, omega(1 << i), 1 << j);
                for q in 0..n {
                    if val >> q & 1 == 1 {
                        v[var(i, j, q)] ^= 1;
                    }
                }
            }
            images.push(v);
        }
    }
    dim_z - naive_rank(&images)
}

/// `dim` of symmetric invariant forms `B([x,y],z) = B(y,[x,z])`.
pub fn invariant_forms_dim(l: &AlgebraTable) -> usize {
    let t = masks(l);
    let n = l.dim();
    let sym: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let var = |i: usize, j: usize| sym.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut row = vec![0u8; sym.len()];
                for m in 0..n {
                    if t[x][y] >> m & 1 == 1 {
                        row[var(m, z)] ^= 1;
                    }
                    if t[x][z] >> m & 1 == 1 {
                        row[var(y, m)] ^= 1;
                    }
                }
                rows.push(row);
            }
        }
    }
    naive_nullity(sym.len(), &rows)
}

/// Nonzero elements `x` with `(ad x)² = 0`, scanned over all `2^dim` points,
/// and the dimension of the subalgebra they generate.
pub fn zero_divisor_scan(l: &AlgebraTable) -> (usize, usize) {
    let t = masks(l);
    let n = l.dim();
    assert!(n <= 20, "enumeration limited to 20 dimensions");
    let found: Vec<u64> = (1..1u64 << n)
        .filter(|&x| (0..n).all(|y| mul(&t, x, mul(&t, x, 1 << y)) == 0))
        .collect();
    // generated subalgebra: add brackets until the span stops growing
    let to_row = |v: u64| (0..n).map(|k| (v >> k & 1) as u8).collect::<Vec<u8>>();
    let mut gens = found.clone();
    loop {
        let before = naive_rank(&gens.iter().map(|&g| to_row(g)).collect::<Vec<_>>());
        let mut next = gens.clone();
        for &a in &gens {
            for &b in &gens {
                let c = mul(&t, a, b);
                if c != 0 {
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        let after = naive_rank(&next.iter().map(|&g| to_row(g)).collect::<Vec<_>>());
        gens = next;
        if after == before {
            return (found.len(), after);
        }
    }
}

/// `dim Der(A)` for a commutative algebra: nullity of the Leibniz system
/// `D(b_i b_j) = D(b_i) b_j + b_i D(b_j)` in the `n²` matrix entries.
pub fn derivations_dim(a: &AlgebraTable) -> usize {
    let t = masks(a);
    let n = a.dim();
    // unknown o*n + m is the coefficient of b_o in D(b_m)
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for o in 0..n {
                let mut row = vec![0u8; n * n];
                for m in 0..n {
                    if t[i][j] >> m & 1 == 1 {
                        row[o * n + m] ^= 1;
                    }
                    // D(b_i) b_j: coefficient of b_m in D(b_i) times b_m b_j
                    if t[m][j] >> o & 1 == 1 {
                        row[m * n + i] ^= 1;
                    }
                    if t[i][m] >> o & 1 == 1 {
                        row[m * n + j] ^= 1;
                    }
                }
                rows.push(row);
            }
        }
    }
    naive_nullity(n * n, &rows)
}

/// `dim Ξ_{D,U}` by testing every linear form on every element (pairs and
/// triples of elements, not just basis vectors). `d[m]` is the mask of
/// `D(b_m)`, `u` lists spanning masks of `U`, `unit` is the unit index.
pub fn xi_dim_by_enumeration(a: &AlgebraTable, d: &[u64], u: &[u64], unit: usize) -> usize {
    let t = masks(a);
    let n = a.dim();
    assert!(n <= 5, "enumeration limited to 5 dimensions");
    let lin = |m: u64, x: u64| u64::from((m & x).count_ones() & 1);
    let apply_d = |x: u64| (0..n).filter(|&i| x >> i & 1 == 1).fold(0u64, |s, i| s ^ d[i]);
    let mut u_set = BTreeSet::from([0u64]);
    for &g in u {
        let grown: Vec<u64> = u_set.iter().map(|&x| x ^ g).collect();
        u_set.extend(grown);
    }
    let all = 1u64 << n;
    let count = (0..all)
        .filter(|&xi| {
            let f = |x: u64| lin(xi, x) == 1;
            let vanish = (0..all).all(|x| !f(mul(&t, x, x)) && !f(apply_d(x))) && u_set.iter().all(|&x| !f(x));
            let in_u = (0..all).all(|x| {
                (0..all).all(|y| {
                    let v = if f(x) { apply_d(y) } else { 0 } ^ if f(y) { apply_d(x) } else { 0 };
                    u_set.contains(&v)
                })
            });
            let coef = |p: u64, q: u64| {
                (if f(p) { q } else { 0 }) ^ (if f(q) { p } else { 0 }) ^ (if f(mul(&t, p, q)) { 1 << unit } else { 0 })
            };
            let three = (0..all).all(|x| {
                (0..all).all(|y| {
                    (0..all).all(|z| {
                        mul(&t, coef(x, y), apply_d(z)) ^ mul(&t, coef(z, x), apply_d(y)) ^ mul(&t, coef(y, z), apply_d(x))
                            == 0
                    })
                })
            });
            vanish && in_u && three
        })
        .count();
    count.trailing_zeros() as usize
}

/// `dim` of the maps `λ: A → U` with `λ(A^[2]) = 0`, `λ∘D = D∘λ` and
/// `cλ(ab) + bλ(ca) + aλ(bc) = 0`, by testing every map. `d` and `u` as in
/// [`xi_dim_by_enumeration`]; `u` must be linearly independent.
pub fn commuting_lambda_dim(a: &AlgebraTable, d: &[u64], u: &[u64]) -> usize {
    let t = masks(a);
    let n = a.dim();
    let k = u.len();
    assert!(n * k <= 20, "enumeration limited to 2^20 maps");
    let apply_d = |x: u64| (0..n).filter(|&i| x >> i & 1 == 1).fold(0u64, |s, i| s ^ d[i]);
    let squares: Vec<u64> = (0..1u64 << n).map(|x| mul(&t, x, x)).collect();
    let count = (0..1u64 << (n * k))
        .filter(|&code| {
            // λ(b_j) = Σ_l bit(j*k + l) u_l
            let img = |j: usize| (0..k).filter(|&l| code >> (j * k + l) & 1 == 1).fold(0u64, |s, l| s ^ u[l]);
            let lam = |x: u64| (0..n).filter(|&j| x >> j & 1 == 1).fold(0u64, |s, j| s ^ img(j));
            squares.iter().all(|&s| lam(s) == 0)
                && (0..n).all(|j| lam(apply_d(1 << j)) == apply_d(img(j)))
                && (0..n).all(|i| {
                    (0..n).all(|j| {
                        (0..n).all(|m| {
                            mul(&t, 1 << m, lam(t[i][j])) ^ mul(&t, 1 << j, lam(t[m][i])) ^ mul(&t, 1 << i, lam(t[j][m]))
                                == 0
                        })
                    })
                })
        })
        .count();
    count.trailing_zeros() as usize
}

type Mat = Vec<Vec<u8>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(0u8, |s, k| s ^ (a[i][k] & b[k][j]))).collect())
        .collect()
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x ^ y).collect()).collect()
}

fn flat(a: &Mat) -> Vec<u8> {
    a.iter().flatten().copied().collect()
}

/// Dimension of the 2-envelope of `ad(L)` inside `End(L)`, grown by adding
/// the squares of every element of the current span (enumerated) and all
/// pairwise commutators until nothing new appears.
pub fn envelope_dim_by_enumeration(l: &AlgebraTable) -> usize {
    let t = masks(l);
    let n = l.dim();
    let ad = |x: usize| -> Mat {
        (0..n)
            .map(|r| (0..n).map(|c| (t[x][c] >> r & 1) as u8).collect())
            .collect()
    };
    let mut span: Vec<Mat> = (0..n).map(ad).collect();
    loop {
        let rank = naive_rank(&span.iter().map(flat).collect::<Vec<_>>());
        assert!(rank <= 16, "envelope enumeration limited to 2^16 points");
        let mut next = span.clone();
        for mask in 1u64..1 << span.len().min(16) {
            let mut x = vec![vec![0u8; n]; n];
            for (i, m) in span.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x = mat_add(&x, m);
                }
            }
            next.push(mat_mul(&x, &x));
        }
        for a in &span {
            for b in &span {
                next.push(mat_add(&mat_mul(a, b), &mat_mul(b, a)));
            }
        }
        // keep an independent subset
        let mut kept: Vec<Mat> = Vec::new();
        for m in next {
            let mut trial: Vec<Vec<u8>> = kept.iter().map(flat).collect();
            trial.push(flat(&m));
            if naive_rank(&trial) > kept.len() {
                kept.push(m);
            }
        }
        if kept.len() == rank {
            return rank;
        }
        span = kept;
    }
}

/// Lie axioms and grading checked on every ordered pair and triple.
pub fn lie_axioms_hold(l: &AlgebraTable) -> bool {
    let t = masks(l);
    let n = l.dim();
    let antisymmetric = (0..n).all(|i| t[i][i] == 0 && (0..n).all(|j| t[i][j] == t[j][i]));
    let jacobi = (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| mul(&t, t[i][j], 1 << k) ^ mul(&t, t[j][k], 1 << i) ^ mul(&t, t[k][i], 1 << j) == 0)
        })
    });
    let graded = l.weights().map_or(true, |w| {
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| t[i][j] >> k & 1 == 0 || w[k] == w[i] + w[j])))
    });
    antisymmetric && jacobi && graded
}
