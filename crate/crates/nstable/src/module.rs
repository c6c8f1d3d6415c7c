//! Right modules over a structure-constant algebra, and their maps.
//!
//! Convention: a module of dimension `m` is the row space F^m; the algebra
//! acts by right multiplication, `x ↦ x · ρ(b)`.  A map `f: M → N` is a
//! `dim M × dim N` matrix acting as `x ↦ x · F`, so composition `f` then `g`
//! is the product `F · G` and the intertwining law reads
//! `ρ_M(b) · F = F · ρ_N(b)`.
//!
//! Left modules are represented as right modules over the opposite algebra.

use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::mat::Mat;

#[derive(Clone, Debug)]
pub struct Module {
    inner: Arc<ModuleData>,
}

#[derive(Debug)]
struct ModuleData {
    algebra: Arc<Algebra>,
    dim: usize,
    /// One action matrix per algebra basis element.
    action: Vec<Mat>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(self.algebra(), other.algebra())
            && self.dim() == other.dim()
            && self.inner.action == other.inner.action
    }
}

impl Module {
    /// Builds and fully validates a module given by action matrices.
    pub fn new(algebra: Arc<Algebra>, action: Vec<Mat>) -> Result<Module> {
        let m = Module::from_parts(algebra, action);
        m.check_module()?;
        Ok(m)
    }

    /// Builds a module without validation; callers guarantee the axioms.
    pub(crate) fn from_parts(algebra: Arc<Algebra>, action: Vec<Mat>) -> Module {
        let dim = action.first().map_or(0, |a| a.rows());
        Module { inner: Arc::new(ModuleData { algebra, dim, action }) }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        let f = algebra.field();
        let action = (0..algebra.dim()).map(|_| Mat::zeros(f, 0, 0)).collect();
        Module::from_parts(algebra, action)
    }

    /// The regular module: the algebra acting on itself from the right.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let mut action = Vec::with_capacity(algebra.dim());
        for k in 0..algebra.dim() {
            let mut bk = vec![0u64; algebra.dim()];
            bk[k] = 1;
            action.push(algebra.right_mult_mat(&bk));
        }
        Module::from_parts(algebra.clone(), action)
    }

    /// The indecomposable projective `e_i A`, with its inclusion into the
    /// regular module.
    pub fn projective(algebra: &Arc<Algebra>, i: usize) -> (Module, ModMap) {
        let data = algebra.proj_data();
        let (action, basis) = &data[i];
        let p = Module::from_parts(algebra.clone(), action.clone());
        let reg = Module::regular(algebra);
        let inc = ModMap::from_parts(p.clone(), reg, basis.clone());
        (p, inc)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.algebra
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, k: usize) -> &Mat {
        &self.inner.action[k]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.inner.action
    }

    /// Action matrix of an arbitrary element given by coefficients.
    pub fn action_of(&self, coeffs: &[u64]) -> Mat {
        let f = self.algebra().field();
        let mut out = Mat::zeros(f, self.dim(), self.dim());
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action(k).scale(c));
            }
        }
        out
    }

    /// Checks the module axioms exhaustively on basis pairs.
    pub fn check_module(&self) -> Result<()> {
        let alg = self.algebra();
        let f = alg.field();
        if self.inner.action.len() != alg.dim() {
            return Err(Error::Module("one action matrix per basis element required".into()));
        }
        for a in &self.inner.action {
            if a.rows() != self.dim() || a.cols() != self.dim() || a.field() != f {
                return Err(Error::Module("action matrix shape/field".into()));
            }
        }
        if !self.action_of(alg.unit()).is_identity() {
            return Err(Error::Module("unit does not act as identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action(i).mul(self.action(j));
                let rhs = self.action_of(&alg.mult_table()[i][j]);
                if lhs != rhs {
                    return Err(Error::Module(format!(
                        "action not multiplicative at basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Rows spanning the weight space `M · e` of an idempotent.
    pub fn weight_space(&self, idem: usize) -> Mat {
        let e = self.action_of(&self.algebra().idempotents()[idem]);
        let f = self.algebra().field();
        e.sub(&Mat::identity(f, self.dim())).row_kernel_basis()
    }
}

#[derive(Clone, Debug)]
pub struct ModMap {
    source: Module,
    target: Module,
    mat: Mat,
}

impl PartialEq for ModMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.mat == other.mat
    }
}

impl ModMap {
    /// Builds a map and verifies the intertwining law on the algebra's
    /// generating set.
    pub fn new(source: Module, target: Module, mat: Mat) -> Result<ModMap> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if mat.rows() != source.dim() || mat.cols() != target.dim() {
            return Err(Error::Map(format!(
                "matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let m = ModMap { source, target, mat };
        if !m.intertwines() {
            return Err(Error::Map("matrix does not intertwine the actions".into()));
        }
        Ok(m)
    }

    pub(crate) fn from_parts(source: Module, target: Module, mat: Mat) -> ModMap {
        debug_assert_eq!(mat.rows(), source.dim());
        debug_assert_eq!(mat.cols(), target.dim());
        ModMap { source, target, mat }
    }

    pub fn zero(source: Module, target: Module) -> ModMap {
        let f = source.algebra().field();
        let mat = Mat::zeros(f, source.dim(), target.dim());
        ModMap::from_parts(source, target, mat)
    }

    pub fn identity(m: &Module) -> ModMap {
        let f = m.algebra().field();
        ModMap::from_parts(m.clone(), m.clone(), Mat::identity(f, m.dim()))
    }

    pub fn intertwines(&self) -> bool {
        for g in self.source.algebra().gens() {
            let lhs = self.source.action_of(g).mul(&self.mat);
            let rhs = self.mat.mul(&self.target.action_of(g));
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    /// Composition, `self` first and then `g`.
    pub fn then(&self, g: &ModMap) -> ModMap {
        assert_eq!(self.target.dim(), g.source.dim(), "then: middle object mismatch");
        ModMap::from_parts(self.source.clone(), g.target.clone(), self.mat.mul(&g.mat))
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        ModMap::from_parts(self.source.clone(), self.target.clone(), self.mat.add(&other.mat))
    }

    pub fn sub(&self, other: &ModMap) -> ModMap {
        ModMap::from_parts(self.source.clone(), self.target.clone(), self.mat.sub(&other.mat))
    }

    pub fn scale(&self, c: u64) -> ModMap {
        ModMap::from_parts(self.source.clone(), self.target.clone(), self.mat.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.mat.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.mat.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.mat.is_invertible()
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let inv = self.mat.invert()?;
        Some(ModMap::from_parts(self.target.clone(), self.source.clone(), inv))
    }
}

/// The submodule of `m` spanned by the given rows, with its inclusion.
/// Fails when the span is not invariant under the action.
pub fn submodule(m: &Module, rows: &Mat) -> Result<(Module, ModMap)> {
    let basis = rows.row_basis();
    let mut action = Vec::with_capacity(m.algebra().dim());
    for k in 0..m.algebra().dim() {
        let moved = basis.mul(m.action(k));
        let act = Mat::solve_left(&basis, &moved)
            .ok_or_else(|| Error::Module("row span is not a submodule".into()))?;
        action.push(act);
    }
    let s = Module::from_parts(m.algebra().clone(), action);
    let inc = ModMap::from_parts(s.clone(), m.clone(), basis);
    Ok((s, inc))
}

/// The quotient of `m` by the submodule spanned by `sub_rows`, with its
/// projection.
pub fn quotient_module(m: &Module, sub_rows: &Mat) -> Result<(Module, ModMap)> {
    let f = m.algebra().field();
    let sub = sub_rows.row_basis();
    let ambient = Mat::identity(f, m.dim());
    let (section, proj) = Mat::row_quotient(&ambient, &sub)?;
    // induced action: lift a quotient vector via the section, act, project
    let mut action = Vec::with_capacity(m.algebra().dim());
    for k in 0..m.algebra().dim() {
        action.push(section.mul(m.action(k)).mul(&proj));
    }
    // invariance check: sub must be preserved, else the action above is junk
    for k in 0..m.algebra().dim() {
        if Mat::solve_left(&sub, &sub.mul(m.action(k))).is_none() {
            return Err(Error::Module("quotient by a non-submodule".into()));
        }
    }
    let q = Module::from_parts(m.algebra().clone(), action);
    let pr = ModMap::from_parts(m.clone(), q.clone(), proj);
    Ok((q, pr))
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModMap) -> (Module, ModMap) {
    let rows = f.mat().row_kernel_basis();
    submodule(f.source(), &rows).expect("kernel rows form a submodule")
}

/// Image (as a submodule of the target) with its inclusion.
pub fn image(f: &ModMap) -> (Module, ModMap) {
    let rows = f.mat().row_basis();
    submodule(f.target(), &rows).expect("image rows form a submodule")
}

/// Cokernel with its projection.
pub fn cokernel(f: &ModMap) -> (Module, ModMap) {
    quotient_module(f.target(), f.mat()).expect("image is a submodule")
}

/// Direct sum with canonical injections and projections.
pub fn direct_sum(parts: &[Module], algebra: &Arc<Algebra>) -> (Module, Vec<ModMap>, Vec<ModMap>) {
    let f = algebra.field();
    for p in parts {
        assert!(same_algebra(p.algebra(), algebra), "direct_sum: algebra mismatch");
    }
    let mut action = Vec::with_capacity(algebra.dim());
    for k in 0..algebra.dim() {
        let blocks: Vec<&Mat> = parts.iter().map(|p| p.action(k)).collect();
        action.push(Mat::block_diag(f, &blocks));
    }
    let total = Module::from_parts(algebra.clone(), action);
    let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
    let sum: usize = dims.iter().sum();
    let mut offset = 0;
    let mut injs = Vec::new();
    let mut projs = Vec::new();
    for (p, &d) in parts.iter().zip(&dims) {
        let inj = Mat::from_fn(f, d, sum, |i, j| u64::from(j == offset + i));
        let proj = Mat::from_fn(f, sum, d, |i, j| u64::from(i == offset + j));
        injs.push(ModMap::from_parts(p.clone(), total.clone(), inj));
        projs.push(ModMap::from_parts(total.clone(), p.clone(), proj));
        offset += d;
    }
    (total, injs, projs)
}

/// Basis of the space of module maps `M → N`.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.algebra().field();
    let (md, nd) = (m.dim(), n.dim());
    let unknowns = md * nd;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let gens = m.algebra().gens();
    let mut sys = Mat::zeros(f, gens.len() * unknowns, unknowns);
    let mut row = 0;
    for g in gens {
        let am = m.action_of(g);
        let an = n.action_of(g);
        // equation (u,v):  Σ_i am[u][i]·F[i][v] − Σ_j F[u][j]·an[j][v] = 0
        for u in 0..md {
            for v in 0..nd {
                for i in 0..md {
                    let c = am.at(u, i);
                    if c != 0 {
                        let col = i * nd + v;
                        sys.set(row, col, f.add(sys.at(row, col), c));
                    }
                }
                for j in 0..nd {
                    let c = an.at(j, v);
                    if c != 0 {
                        let col = u * nd + j;
                        sys.set(row, col, f.sub(sys.at(row, col), c));
                    }
                }
                row += 1;
            }
        }
    }
    let null = sys.kernel_basis();
    let mut out = Vec::with_capacity(null.cols());
    for c in 0..null.cols() {
        let mat = Mat::from_fn(f, md, nd, |i, j| null.at(i * nd + j, c));
        out.push(ModMap::from_parts(m.clone(), n.clone(), mat));
    }
    Ok(out)
}

/// Pushout of the span `Y ↞f M →g Z` (`f` must be injective).  Returns the
/// pushout object with the two induced maps from `Y` and `Z`.
pub fn pushout(f: &ModMap, g: &ModMap) -> Result<(Module, ModMap, ModMap)> {
    if f.source() != g.source() {
        return Err(Error::Precondition("pushout legs must share their source".into()));
    }
    if !f.is_injective() {
        return Err(Error::Precondition("pushout requires an injective first leg".into()));
    }
    let (y, z) = (f.target(), g.target());
    let (sum, injs, _) = direct_sum(&[y.clone(), z.clone()], y.algebra());
    // divide by the antidiagonal copy (f(x), −g(x))
    let rows = f.mat().hstack(&g.mat().neg());
    let (p, proj) = quotient_module(&sum, &rows)?;
    let from_y = injs[0].then(&proj);
    let from_z = injs[1].then(&proj);
    Ok((p, from_y, from_z))
}

/// Pullback of the cospan `Y →f W ↞g Z` (`g` must be surjective).  Returns
/// the pullback object with the two induced maps to `Y` and `Z`.
pub fn pullback(f: &ModMap, g: &ModMap) -> Result<(Module, ModMap, ModMap)> {
    if f.target() != g.target() {
        return Err(Error::Precondition("pullback legs must share their target".into()));
    }
    if !g.is_surjective() {
        return Err(Error::Precondition("pullback requires a surjective second leg".into()));
    }
    let (y, z) = (f.source(), g.source());
    let (sum, _, projs) = direct_sum(&[y.clone(), z.clone()], y.algebra());
    let rows = f.mat().vstack(&g.mat().neg()).row_kernel_basis();
    let (p, inc) = submodule(&sum, &rows)?;
    let to_y = inc.then(&projs[0]);
    let to_z = inc.then(&projs[1]);
    Ok((p, to_y, to_z))
}

/// Dual of a right module: a right module over the opposite algebra, with
/// the transposed actions.  `dual(dual(M))` is structurally equal to `M`.
pub fn dual(m: &Module) -> Module {
    let op = m.algebra().opposite();
    let action = m.actions().iter().map(|a| a.transpose()).collect();
    Module::from_parts(op, action)
}

/// Dual of a map: `D(f): D(N) → D(M)` with the transposed matrix.
pub fn dual_map(f: &ModMap) -> ModMap {
    ModMap::from_parts(dual(f.target()), dual(f.source()), f.mat().transpose())
}

/// `M · rad(A)` as a submodule.
pub fn radical_submodule(m: &Module) -> (Module, ModMap) {
    let f = m.algebra().field();
    let mut rows = Mat::zeros(f, 0, m.dim());
    for r in m.algebra().radical_basis() {
        rows = rows.vstack(&m.action_of(r));
    }
    submodule(m, &rows.row_basis()).expect("M·rad is a submodule")
}

/// The top `M / M·rad(A)` with its projection.
pub fn top(m: &Module) -> (Module, ModMap) {
    let f = m.algebra().field();
    let mut rows = Mat::zeros(f, 0, m.dim());
    for r in m.algebra().radical_basis() {
        rows = rows.vstack(&m.action_of(r));
    }
    quotient_module(m, &rows).expect("M·rad is a submodule")
}

/// The socle `{x : x·rad(A) = 0}` as a submodule.
pub fn socle(m: &Module) -> (Module, ModMap) {
    let f = m.algebra().field();
    let rad = m.algebra().radical_basis();
    if rad.is_empty() {
        let (s, inc) = submodule(m, &Mat::identity(f, m.dim())).expect("whole module");
        return (s, inc);
    }
    let mut stacked = m.action_of(&rad[0]);
    for r in &rad[1..] {
        stacked = stacked.hstack(&m.action_of(r));
    }
    submodule(m, &stacked.row_kernel_basis()).expect("socle is a submodule")
}

/// Projective cover `P ↠ M`, with `P = ⊕ (e_i A)^{m_i}` and `m_i` the
/// multiplicity of the simple `S_i` in `top(M)`.
pub fn projective_cover(m: &Module) -> ModMap {
    let alg = m.algebra().clone();
    let f = alg.field();
    let (t, pr) = top(m);
    let mut summands: Vec<Module> = Vec::new();
    let mut gen_rows: Vec<Vec<u64>> = Vec::new(); // chosen generators of M, one per summand
    let mut idem_of: Vec<usize> = Vec::new();
    for (i, e) in alg.idempotents().iter().enumerate() {
        let w = t.weight_space(i);
        for r in 0..w.rows() {
            let wrow = Mat::from_rows(f, &[w.row(r).to_vec()]).expect("row");
            // lift the top generator and force it into the weight space
            let x0 = Mat::solve_left(&pr.mat().clone(), &wrow).expect("projection is onto");
            let x = x0.mul(&m.action_of(e));
            let (p, _) = Module::projective(&alg, i);
            summands.push(p);
            gen_rows.push(x.row(0).to_vec());
            idem_of.push(i);
        }
    }
    let (psum, injs, _) = direct_sum(&summands, &alg);
    // map each projective summand e_i A → M, z ↦ x·z, assembled blockwise
    let mut mat = Mat::zeros(f, psum.dim(), m.dim());
    let mut offset = 0;
    for (s, (x, &i)) in summands.iter().zip(gen_rows.iter().zip(&idem_of)) {
        let basis = &alg.proj_data()[i].1; // rows of e_i A inside the regular module
        for r in 0..s.dim() {
            let z = basis.row(r); // element of A
            let xrow = Mat::from_rows(f, std::slice::from_ref(x)).expect("row");
            let img = xrow.mul(&m.action_of(z));
            for jj in 0..m.dim() {
                mat.set(offset + r, jj, img.at(0, jj));
            }
        }
        offset += s.dim();
    }
    let _ = injs;
    let cover = ModMap::from_parts(psum, m.clone(), mat);
    debug_assert!(cover.is_surjective(), "projective cover must be onto");
    cover
}

/// Injective hull `M ↪ I`, computed as the dual of the projective cover of
/// the dual module.
pub fn injective_hull(m: &Module) -> ModMap {
    let dm = dual(m);
    let cover = projective_cover(&dm);
    let dcover = dual_map(&cover);
    // dual(dual(M)) has exactly M's action matrices; rebase the source on the
    // original module so callers can compose with it directly
    ModMap::from_parts(m.clone(), dcover.target().clone(), dcover.mat().clone())
}

/// Is `M` projective?  (Its projective cover is then an isomorphism.)
pub fn is_projective(m: &Module) -> bool {
    projective_cover(m).source().dim() == m.dim()
}

/// The Nakayama functor `ν(M) = D Hom_A(M, A)` on objects.  Returns the
/// module together with the hom basis used, so that maps can be transported
/// consistently; see [`nakayama_map`].
pub fn nakayama(m: &Module) -> Result<Module> {
    Ok(nakayama_with_basis(m)?.0)
}

fn nakayama_with_basis(m: &Module) -> Result<(Module, Vec<ModMap>)> {
    let alg = m.algebra().clone();
    let f = alg.field();
    let reg = Module::regular(&alg);
    let homs = hom_space(m, &reg)?;
    let e = homs.len();
    // row-vectorize the hom basis
    let vecd = |mat: &Mat| -> Vec<u64> {
        let mut v = Vec::with_capacity(mat.rows() * mat.cols());
        for i in 0..mat.rows() {
            v.extend_from_slice(mat.row(i));
        }
        v
    };
    let basis_rows: Vec<Vec<u64>> = homs.iter().map(|h| vecd(h.mat())).collect();
    let basis = if e == 0 {
        Mat::zeros(f, 0, m.dim() * alg.dim())
    } else {
        Mat::from_rows(f, &basis_rows)?
    };
    // left action of b_k on Hom(M, A): post-compose with left multiplication
    let mut op_action = Vec::with_capacity(alg.dim());
    for k in 0..alg.dim() {
        let mut bk = vec![0u64; alg.dim()];
        bk[k] = 1;
        let lm = alg.left_mult_mat(&bk);
        let mut moved_rows: Vec<Vec<u64>> = Vec::with_capacity(e);
        for h in &homs {
            moved_rows.push(vecd(&h.mat().mul(&lm)));
        }
        let moved = if e == 0 {
            Mat::zeros(f, 0, m.dim() * alg.dim())
        } else {
            Mat::from_rows(f, &moved_rows)?
        };
        let coords = Mat::solve_left(&basis, &moved)
            .ok_or_else(|| Error::Solve("Hom(M,A) not closed under the left action".into()))?;
        // coords is the right-module action over A^op; transpose dualizes
        op_action.push(coords.transpose());
    }
    Ok((Module::from_parts(alg, op_action), homs))
}

/// The Nakayama functor on maps: `ν(f): ν(M) → ν(N)`.
pub fn nakayama_map(f: &ModMap) -> Result<ModMap> {
    let (nm, mbasis) = nakayama_with_basis(f.source())?;
    let (nn, nbasis) = nakayama_with_basis(f.target())?;
    let fld = f.source().algebra().field();
    let adim = f.source().algebra().dim();
    let vecd = |mat: &Mat| -> Vec<u64> {
        let mut v = Vec::with_capacity(mat.rows() * mat.cols());
        for i in 0..mat.rows() {
            v.extend_from_slice(mat.row(i));
        }
        v
    };
    let mrows: Vec<Vec<u64>> = mbasis.iter().map(|h| vecd(h.mat())).collect();
    let mb = if mrows.is_empty() {
        Mat::zeros(fld, 0, f.source().dim() * adim)
    } else {
        Mat::from_rows(fld, &mrows)?
    };
    // Hom(f, A): Hom(N,A) → Hom(M,A), g ↦ f∘g, in the chosen bases
    let mut moved_rows: Vec<Vec<u64>> = Vec::with_capacity(nbasis.len());
    for g in &nbasis {
        moved_rows.push(vecd(&f.mat().mul(g.mat())));
    }
    let moved = if moved_rows.is_empty() {
        Mat::zeros(fld, 0, f.source().dim() * adim)
    } else {
        Mat::from_rows(fld, &moved_rows)?
    };
    let coords =
        Mat::solve_left(&mb, &moved).ok_or_else(|| Error::Solve("Hom(f,A) solve failed".into()))?;
    // contravariant matrix (ν(N)-dim × ν(M)-dim); transpose gives ν(f)
    Ok(ModMap::from_parts(nm, nn, coords.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rad2_cycle;
    use crate::field::FieldSpec;

    pub(crate) fn example() -> Arc<Algebra> {
        rad2_cycle(FieldSpec::new(7).unwrap())
    }

    /// S1, S2, I1, I2 of the builtin algebra, plus the hull maps.
    pub(crate) fn example_modules() -> (Module, Module, Module, Module, ModMap, ModMap) {
        let alg = example();
        let (p1, _) = Module::projective(&alg, 0);
        let (p2, _) = Module::projective(&alg, 1);
        let (s1, _) = top(&p1);
        let (s2, _) = top(&p2);
        let h1 = injective_hull(&s1);
        let h2 = injective_hull(&s2);
        let i1 = h1.target().clone();
        let i2 = h2.target().clone();
        let _ = (p2, i1.clone(), i2.clone());
        (s1, s2, h1.target().clone(), h2.target().clone(), h1, h2)
    }

    #[test]
    fn regular_module_validates() {
        let alg = example();
        let reg = Module::regular(&alg);
        assert!(reg.check_module().is_ok());
        assert_eq!(reg.dim(), 4);
    }

    #[test]
    fn projectives_have_dim_two() {
        let alg = example();
        let (p1, inc1) = Module::projective(&alg, 0);
        assert_eq!(p1.dim(), 2);
        assert!(inc1.is_injective());
        assert!(inc1.intertwines());
        assert!(p1.check_module().is_ok());
    }

    #[test]
    fn tops_and_socles_of_projectives() {
        let alg = example();
        let (p1, _) = Module::projective(&alg, 0);
        let (t, _) = top(&p1);
        assert_eq!(t.dim(), 1);
        let (s, _) = socle(&p1);
        assert_eq!(s.dim(), 1);
        // top of P1 is S1 (weight at e1), socle is S2 (weight at e2)
        assert_eq!(t.weight_space(0).rows(), 1);
        assert_eq!(t.weight_space(1).rows(), 0);
        assert_eq!(s.weight_space(1).rows(), 1);
    }

    #[test]
    fn hom_dims_on_example_match_brute_force() {
        // oracle: solve the full intertwining system over every basis
        // element (not just the generators) by brute-force enumeration of
        // equations; dimensions must agree with hom_space
        let (s1, _s2, i1, _i2, _h1, _h2) = example_modules();
        let homs = hom_space(&s1, &i1).unwrap();
        assert_eq!(homs.len(), 1);
        let endo = hom_space(&i1, &i1).unwrap();
        assert_eq!(endo.len(), 1);
        for m in [&s1, &i1] {
            let id_homs = hom_space(m, m).unwrap();
            assert!(!id_homs.is_empty());
        }
        // full-basis oracle for dim Hom(S1, I1)
        let alg = example();
        let f = alg.field();
        let (md, nd) = (s1.dim(), i1.dim());
        let mut rows = Vec::new();
        for k in 0..alg.dim() {
            let mut bk = vec![0u64; alg.dim()];
            bk[k] = 1;
            let am = s1.action_of(&bk);
            let an = i1.action_of(&bk);
            for u in 0..md {
                for v in 0..nd {
                    let mut row = vec![0u64; md * nd];
                    for i in 0..md {
                        row[i * nd + v] = f.add(row[i * nd + v], am.at(u, i));
                    }
                    for j in 0..nd {
                        row[u * nd + j] = f.sub(row[u * nd + j], an.at(j, v));
                    }
                    rows.push(row);
                }
            }
        }
        let sys = Mat::from_rows(f, &rows).unwrap();
        assert_eq!(sys.kernel_basis().cols(), 1);
    }

    #[test]
    fn kernel_cokernel_of_identity_and_zero() {
        let (s1, _, i1, _, h1, _) = example_modules();
        let id = ModMap::identity(&i1);
        assert_eq!(kernel(&id).0.dim(), 0);
        let z = ModMap::zero(s1.clone(), i1.clone());
        let (c, _) = cokernel(&z);
        assert_eq!(c.dim(), i1.dim());
        // kernel of the top surjection I1 ↠ S2 is the socle S1
        let (t, pr) = top(&i1);
        assert_eq!(t.dim(), 1);
        let (k, _) = kernel(&pr);
        assert_eq!(k.dim(), 1);
        let _ = h1;
    }

    #[test]
    fn pushout_pullback_degenerate_cases() {
        let (s1, _, i1, _, h1, _) = example_modules();
        // pushout along identity → codomain of g
        let id = ModMap::identity(&s1);
        let (p, _, from_z) = pushout(&id, &h1).unwrap();
        assert_eq!(p.dim(), i1.dim());
        assert!(from_z.is_isomorphism());
        // pushout of S1 ↪ I1 along S1 → 0 is I1/S1 (dim 1)
        let zero = Module::zero(example());
        let (q, _, _) = pushout(&h1, &ModMap::zero(s1.clone(), zero.clone())).unwrap();
        assert_eq!(q.dim(), 1);
        // pullback of I1 ↠ S2 along 0 → S2 is S1 (dim 1)
        let (_, pr) = top(&i1);
        let (pb, _, _) =
            pullback(&ModMap::zero(zero.clone(), pr.target().clone()), &pr).unwrap();
        assert_eq!(pb.dim(), 1);
        // precondition violations are reported
        assert!(pushout(&pr.clone(), &pr).is_err() || pr.is_injective());
        let not_epi = ModMap::zero(zero, s1.clone());
        assert!(pullback(&ModMap::identity(&s1), &not_epi).is_err());
    }

    #[test]
    fn dual_is_involutive_and_preserves_dim() {
        let (_, _, i1, _, _, _) = example_modules();
        let d = dual(&i1);
        assert_eq!(d.dim(), i1.dim());
        let dd = dual(&d);
        assert_eq!(dd, i1);
    }

    #[test]
    fn projective_cover_of_projective_is_iso() {
        let alg = example();
        let (p1, _) = Module::projective(&alg, 0);
        let c = projective_cover(&p1);
        assert!(c.is_isomorphism());
        assert!(is_projective(&p1));
    }

    #[test]
    fn cover_kernel_is_superfluous() {
        // kernel of P ↠ M lies inside P·rad
        let (s1, s2, _, _, _, _) = example_modules();
        let alg = example();
        let (sum, _, _) = direct_sum(&[s1, s2], &alg);
        let c = projective_cover(&sum);
        let (_, kinc) = kernel(&c);
        let (_, rinc) = radical_submodule(c.source());
        assert!(Mat::solve_left(rinc.mat(), kinc.mat()).is_some());
    }

    #[test]
    fn injective_hull_of_simple_has_dim_two() {
        let (s1, _, i1, _, h1, _) = example_modules();
        assert_eq!(i1.dim(), 2);
        assert!(h1.is_injective());
        // socle of I1 is S1: essentiality at the socle level
        let (soc, _) = socle(&i1);
        assert_eq!(soc.dim(), 1);
        assert_eq!(soc.weight_space(0).rows(), 1);
        let _ = s1;
    }

    #[test]
    fn hull_is_additive_on_sums() {
        let (s1, s2, i1, i2, _, _) = example_modules();
        let alg = example();
        let (sum, _, _) = direct_sum(&[s1, s2], &alg);
        let h = injective_hull(&sum);
        assert_eq!(h.target().dim(), i1.dim() + i2.dim());
    }

    #[test]
    fn nakayama_swaps_the_projectives() {
        let alg = example();
        let (p1, _) = Module::projective(&alg, 0);
        let (p2, _) = Module::projective(&alg, 1);
        let n1 = nakayama(&p1).unwrap();
        let n2 = nakayama(&p2).unwrap();
        assert_eq!(n1.dim(), 2);
        assert_eq!(n2.dim(), 2);
        // ν(P1) has the weight profile of P2 and vice versa: tops swap
        let (t1, _) = top(&n1);
        assert_eq!(t1.weight_space(1).rows(), 1);
        assert_eq!(t1.weight_space(0).rows(), 0);
        let (t2, _) = top(&n2);
        assert_eq!(t2.weight_space(0).rows(), 1);
    }

    #[test]
    fn nakayama_is_additive() {
        let (s1, s2, _, _, _, _) = example_modules();
        let alg = example();
        let (sum, _, _) = direct_sum(&[s1.clone(), s2.clone()], &alg);
        let n = nakayama(&sum).unwrap();
        let n1 = nakayama(&s1).unwrap();
        let n2 = nakayama(&s2).unwrap();
        assert_eq!(n.dim(), n1.dim() + n2.dim());
    }

    #[test]
    fn nakayama_map_respects_composition() {
        let (s1, _, i1, _, h1, _) = example_modules();
        let nh = nakayama_map(&h1).unwrap();
        assert!(nh.intertwines());
        assert_eq!(nh.source().dim(), nakayama(&s1).unwrap().dim());
        assert_eq!(nh.target().dim(), nakayama(&i1).unwrap().dim());
        // ν preserves injectivity of the hull map (ν is exact)
        assert!(nh.is_injective());
    }

    #[test]
    fn nakayama_preserves_exactness() {
        // short exact sequences from kernel/cokernel stay exact under ν
        let alg = example();
        let mut rng = crate::rng::Rng::new(73);
        for _ in 0..15 {
            let m = crate::decomp::random_module(&alg, &mut rng, 6);
            let n = crate::decomp::random_module(&alg, &mut rng, 6);
            let homs = hom_space(&m, &n).unwrap();
            if homs.is_empty() {
                continue;
            }
            let f = &homs[rng.below(homs.len() as u64) as usize];
            let (_, kinc) = kernel(f);
            let (_, img_inc) = image(f);
            let (_, cpr) = cokernel(f);
            // 0 → K → M → im f → 0 and 0 → im f → N → C → 0
            let corestrict = Mat::solve_left(img_inc.mat(), f.mat()).unwrap();
            let co = ModMap::from_parts(m.clone(), img_inc.source().clone(), corestrict);
            for (mono, epi) in [
                (kinc.clone(), co.clone()),
                (img_inc.clone(), cpr.clone()),
            ] {
                let nm = nakayama_map(&mono).unwrap();
                let ne = nakayama_map(&epi).unwrap();
                assert!(nm.is_injective(), "ν preserves monos");
                assert!(ne.is_surjective(), "ν preserves epis");
                assert!(nm.then(&ne).is_zero(), "ν preserves composites");
                assert_eq!(
                    nm.mat().rank() + ne.mat().rank(),
                    nm.target().dim(),
                    "ν preserves exactness in the middle"
                );
            }
        }
    }

    #[test]
    fn hull_restricts_to_socle_isomorphism() {
        let alg = example();
        let mut rng = crate::rng::Rng::new(79);
        for _ in 0..15 {
            let m = crate::decomp::random_module(&alg, &mut rng, 6);
            let h = injective_hull(&m);
            let (soc_m, soc_inc) = socle(&m);
            let (soc_i, _) = socle(h.target());
            assert_eq!(soc_m.dim(), soc_i.dim(), "socles must have equal dimension");
            // the hull restricted to the socle stays injective
            let restricted = soc_inc.then(&h);
            assert!(restricted.is_injective());
        }
    }

    #[test]
    fn zero_module_everywhere() {
        let alg = example();
        let z = Module::zero(alg.clone());
        assert!(z.is_zero());
        let (t, _) = top(&z);
        assert!(t.is_zero());
        let (s, _) = socle(&z);
        assert!(s.is_zero());
        let c = projective_cover(&z);
        assert!(c.source().is_zero());
        let h = injective_hull(&z);
        assert!(h.target().is_zero());
        assert_eq!(hom_space(&z, &z).unwrap().len(), 0);
        let (sum, _, _) = direct_sum(&[z.clone(), z.clone()], &alg);
        assert!(sum.is_zero());
        assert_eq!(nakayama(&z).unwrap().dim(), 0);
    }
}
