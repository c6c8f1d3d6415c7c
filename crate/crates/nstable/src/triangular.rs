//! Upper-triangular matrix algebras `B = T_n(A)` and the equivalences
//! between mod-B and the diagram category `Mor_{n-1}(A)`.
//!
//! `M_r` reads off the idempotent weight spaces `X E_{i,i}` with the
//! connecting right multiplications; its inverse reassembles the direct sum
//! with `E_{i,j} ⊗ b` acting through the diagram maps.  `M_l` is the left
//! module analogue (represented here over the opposite algebras).  These
//! transports let the generic module machinery (decomposition, isomorphism)
//! act on diagrams.

use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra};
use crate::decomp::{self, IsoCheck};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::mmor::{MorMap, MorObj};
use crate::module::{dual, dual_map, ModMap, Module};
use crate::rng::Rng;

/// `B = T_n(A)` with its positioning data.
#[derive(Clone, Debug)]
pub struct TriangularAlgebra {
    pub base: Arc<Algebra>,
    pub n: usize,
    pub algebra: Arc<Algebra>,
}

/// Block number of `(i,j)`, `1 ≤ i ≤ j ≤ n`, in the order
/// (1,1),(1,2),…,(1,n),(2,2),…,(n,n).
fn block_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= n);
    let before: usize = (0..i - 1).map(|r| n - r).sum();
    before + (j - i)
}

pub fn basis_index(base_dim: usize, n: usize, i: usize, j: usize, t: usize) -> usize {
    block_index(n, i, j) * base_dim + t
}

/// Coefficient vector of `E_{i,j} ⊗ x` in B-coordinates.
fn embed(base: &Algebra, n: usize, i: usize, j: usize, x: &[u64]) -> Vec<u64> {
    let blocks = n * (n + 1) / 2;
    let mut v = vec![0u64; blocks * base.dim()];
    let off = block_index(n, i, j) * base.dim();
    v[off..off + base.dim()].copy_from_slice(x);
    v
}

/// Builds and validates `T_n(A)`.
pub fn build_triangular(base: &Arc<Algebra>, n: usize) -> Result<TriangularAlgebra> {
    if n < 1 {
        return Err(Error::Precondition("triangular size must be at least 1".into()));
    }
    let ad = base.dim();
    let blocks = n * (n + 1) / 2;
    let dim = blocks * ad;
    let f = base.field();
    let mut labels = Vec::with_capacity(dim);
    for i in 1..=n {
        for j in i..=n {
            for t in 0..ad {
                labels.push(format!("E{}{}*{}", i, j, base.labels()[t]));
            }
        }
    }
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for i in 1..=n {
        for j in i..=n {
            for l in j..=n {
                // (E_{i,j} ⊗ b_t)(E_{j,l} ⊗ b_s) = E_{i,l} ⊗ b_t b_s
                for t in 0..ad {
                    for s in 0..ad {
                        let row = basis_index(ad, n, i, j, t);
                        let col = basis_index(ad, n, j, l, s);
                        let prod = &base.mult_table()[t][s];
                        mult[row][col] = embed(base, n, i, l, prod);
                    }
                }
            }
        }
    }
    let mut unit = vec![0u64; dim];
    for i in 1..=n {
        let e = embed(base, n, i, i, base.unit());
        for (u, &x) in unit.iter_mut().zip(&e) {
            *u = f.add(*u, x);
        }
    }
    let mut idempotents = Vec::new();
    for i in 1..=n {
        for e in base.idempotents() {
            idempotents.push(embed(base, n, i, i, e));
        }
    }
    let mut radical = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            if i == j {
                for r in base.radical_basis() {
                    radical.push(embed(base, n, i, i, r));
                }
            } else {
                for t in 0..ad {
                    let mut bt = vec![0u64; ad];
                    bt[t] = 1;
                    radical.push(embed(base, n, i, j, &bt));
                }
            }
        }
    }
    let algebra = Algebra::new(f, labels, mult, unit, idempotents, radical)?;
    Ok(TriangularAlgebra { base: base.clone(), n, algebra })
}

/// Memoized variant of [`build_triangular`].
pub fn triangular(base: &Arc<Algebra>, n: usize) -> Result<TriangularAlgebra> {
    let cache = base.tri_cache.lock().expect("tri cache lock");
    if let Some(b) = cache.get(&n) {
        return Ok(TriangularAlgebra { base: base.clone(), n, algebra: b.clone() });
    }
    drop(cache);
    let t = build_triangular(base, n)?;
    let mut cache = base.tri_cache.lock().expect("tri cache lock");
    cache.insert(n, t.algebra.clone());
    Ok(t)
}

impl TriangularAlgebra {
    /// Action matrix of `E_{i,j} ⊗ x` on a B-module.
    pub fn action_of_block(&self, m: &Module, i: usize, j: usize, x: &[u64]) -> Mat {
        m.action_of(&embed(&self.base, self.n, i, j, x))
    }
}

/// `M_r(X) = (X E_{1,1} → X E_{2,2} → ⋯)` with right-multiplication
/// connecting maps; a diagram over the base algebra.
pub fn m_r(t: &TriangularAlgebra, x: &Module) -> Result<MorObj> {
    if !same_algebra(x.algebra(), &t.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let base = &t.base;
    let f = base.field();
    let mut weights: Vec<Mat> = Vec::new();
    for i in 1..=t.n {
        let e = t.action_of_block(x, i, i, base.unit());
        weights.push(e.sub(&Mat::identity(f, x.dim())).row_kernel_basis());
    }
    let mut objects = Vec::new();
    for (idx, w) in weights.iter().enumerate() {
        let i = idx + 1;
        let mut action = Vec::with_capacity(base.dim());
        for tdx in 0..base.dim() {
            let mut bt = vec![0u64; base.dim()];
            bt[tdx] = 1;
            let big = t.action_of_block(x, i, i, &bt);
            let moved = w.mul(&big);
            let act = Mat::solve_left(w, &moved)
                .ok_or_else(|| Error::Module("weight space not A-invariant".into()))?;
            action.push(act);
        }
        objects.push(Module::from_parts(base.clone(), action));
    }
    let mut maps = Vec::new();
    for i in 1..t.n {
        let conn = t.action_of_block(x, i, i + 1, base.unit());
        let moved = weights[i - 1].mul(&conn);
        let mat = Mat::solve_left(&weights[i], &moved)
            .ok_or_else(|| Error::Module("connecting map leaves the weight space".into()))?;
        maps.push(ModMap::from_parts(objects[i - 1].clone(), objects[i].clone(), mat));
    }
    MorObj::new(base.clone(), objects, maps)
}

/// Inverse of `M_r`: assembles `⊕ X_i` with `E_{i,j} ⊗ b` acting through
/// `f_i^{j-i}` followed by the action of `b`.
pub fn m_r_inv(t: &TriangularAlgebra, x: &MorObj) -> Result<Module> {
    if !same_algebra(x.algebra(), &t.base) {
        return Err(Error::AlgebraMismatch);
    }
    if x.len() != t.n {
        return Err(Error::Diagram(format!(
            "diagram has {} objects, T_{} transport needs {}",
            x.len(),
            t.n,
            t.n
        )));
    }
    let base = &t.base;
    let f = base.field();
    let dims: Vec<usize> = (0..t.n).map(|i| x.object(i).dim()).collect();
    let total: usize = dims.iter().sum();
    let offset: Vec<usize> = {
        let mut o = vec![0usize];
        for d in &dims {
            o.push(o.last().unwrap() + d);
        }
        o
    };
    let bdim = t.algebra.dim();
    let mut action = Vec::with_capacity(bdim);
    for bidx in 0..bdim {
        let block = bidx / base.dim();
        let tdx = bidx % base.dim();
        let (mut bi, mut bj) = (1, 1);
        let mut acc = 0;
        'outer: for ii in 1..=t.n {
            for jj in ii..=t.n {
                if acc == block {
                    bi = ii;
                    bj = jj;
                    break 'outer;
                }
                acc += 1;
            }
        }
        let mut bt = vec![0u64; base.dim()];
        bt[tdx] = 1;
        // rows from block bi map into block bj via f_{bi}^{bj-bi} then b_t
        let comp = x.compose_map(bi - 1, bj - bi);
        let blockmat = comp.mat().mul(&x.object(bj - 1).action_of(&bt));
        let mut act = Mat::zeros(f, total, total);
        for r in 0..dims[bi - 1] {
            for c in 0..dims[bj - 1] {
                act.set(offset[bi - 1] + r, offset[bj - 1] + c, blockmat.at(r, c));
            }
        }
        action.push(act);
    }
    Ok(Module::from_parts(t.algebra.clone(), action))
}

/// `M_l` for left modules, represented as right modules over `B^op`:
/// the diagram `(E_{n+1-s,n+1-s}X, l_{E_{n-s,n+1-s}})` over the opposite
/// base algebra.
pub fn m_l(t: &TriangularAlgebra, x: &Module) -> Result<MorObj> {
    let bop = t.algebra.opposite();
    if !same_algebra(x.algebra(), &bop) {
        return Err(Error::AlgebraMismatch);
    }
    let base_op = t.base.opposite();
    let f = t.base.field();
    // left multiplication by z on a left module is the right action of z
    // in B^op; coordinates agree because B^op shares the basis of B
    let act_left = |z: &[u64]| -> Mat { x.action_of(z) };
    let mut weights = Vec::new();
    for s in 1..=t.n {
        let pos = t.n + 1 - s;
        let e = act_left(&embed(&t.base, t.n, pos, pos, t.base.unit()));
        weights.push(e.sub(&Mat::identity(f, x.dim())).row_kernel_basis());
    }
    let mut objects = Vec::new();
    for (idx, w) in weights.iter().enumerate() {
        let pos = t.n - idx;
        let mut action = Vec::with_capacity(base_op.dim());
        for tdx in 0..t.base.dim() {
            let mut bt = vec![0u64; t.base.dim()];
            bt[tdx] = 1;
            let big = act_left(&embed(&t.base, t.n, pos, pos, &bt));
            let moved = w.mul(&big);
            let act = Mat::solve_left(w, &moved)
                .ok_or_else(|| Error::Module("weight space not invariant".into()))?;
            action.push(act);
        }
        objects.push(Module::from_parts(base_op.clone(), action));
    }
    let mut maps = Vec::new();
    for s in 1..t.n {
        // l_{E_{n-s, n+1-s}}: E_{n+1-s,n+1-s}X → E_{n-s,n-s}X
        let conn = act_left(&embed(&t.base, t.n, t.n - s, t.n + 1 - s, t.base.unit()));
        let moved = weights[s - 1].mul(&conn);
        let mat = Mat::solve_left(&weights[s], &moved)
            .ok_or_else(|| Error::Module("connecting map leaves the weight space".into()))?;
        maps.push(ModMap::from_parts(objects[s - 1].clone(), objects[s].clone(), mat));
    }
    MorObj::new(base_op, objects, maps)
}

/// The induced duality on diagrams: reverses the order and dualizes each
/// object and map; lands over the opposite algebra.
pub fn dual_diagram(x: &MorObj) -> Result<MorObj> {
    let n = x.len();
    let mut objects = Vec::new();
    for s in 0..n {
        objects.push(dual(x.object(n - 1 - s)));
    }
    let mut maps = Vec::new();
    for s in 0..n.saturating_sub(1) {
        // D(α_{n-1-s}): D(X_{n-s}) → D(X_{n-1-s})
        maps.push(dual_map(x.map(n - 2 - s)));
    }
    MorObj::new(x.algebra().opposite(), objects, maps)
}

/// Isomorphism of diagrams, decided through the `M_r` transport.
pub fn diagram_iso(
    t: &TriangularAlgebra,
    x: &MorObj,
    y: &MorObj,
    rng: &mut Rng,
) -> Result<IsoCheck> {
    let mx = m_r_inv(t, x)?;
    let my = m_r_inv(t, y)?;
    Ok(decomp::is_isomorphic(&mx, &my, rng))
}

/// Decomposes a diagram into indecomposable diagram summands via transport.
pub fn decompose_diagram(
    t: &TriangularAlgebra,
    x: &MorObj,
    rng: &mut Rng,
) -> Result<Vec<(MorObj, usize)>> {
    let m = m_r_inv(t, x)?;
    let dec = decomp::decompose(&m, rng);
    if !dec.certified {
        return Err(Error::Unverified("diagram decomposition not certified".into()));
    }
    let mut out = Vec::new();
    for (s, mult) in dec.summands {
        out.push((m_r(t, &s)?, mult));
    }
    Ok(out)
}

/// Transport of a map between B-modules to a diagram map.
pub fn m_r_map(t: &TriangularAlgebra, f: &ModMap) -> Result<MorMap> {
    let src = m_r(t, f.source())?;
    let tgt = m_r(t, f.target())?;
    let base = &t.base;
    let fld = base.field();
    let mut comps = Vec::new();
    for i in 1..=t.n {
        let e = t.action_of_block(f.source(), i, i, base.unit());
        let w_src = e.sub(&Mat::identity(fld, f.source().dim())).row_kernel_basis();
        let e2 = t.action_of_block(f.target(), i, i, base.unit());
        let w_tgt = e2.sub(&Mat::identity(fld, f.target().dim())).row_kernel_basis();
        let moved = w_src.mul(f.mat());
        let mat = Mat::solve_left(&w_tgt, &moved)
            .ok_or_else(|| Error::Map("map does not preserve weight spaces".into()))?;
        comps.push(ModMap::from_parts(src.object(i - 1).clone(), tgt.object(i - 1).clone(), mat));
    }
    MorMap::new(src, tgt, comps)
}
