//! The correspondence between acyclic projective-injective N-complexes and
//! monomorphism diagrams, at finite-window scale.
//!
//! `F` reads the cycle chain `Z^0_1 ↪ ⋯ ↪ Z^0_{N-1}` off a complex;
//! `expand_to_acyclic` inverts it on objects by growing an N-acyclic array
//! from a diagram: upward rows by iterated pushouts closed with injective
//! envelopes, downward rows by iterated pullbacks opened with projective
//! covers.  Every square of the array is bicartesian, which the dimension
//! identity `dim X^{n+1}_j = dim X^n_{j+1} + dim X^{n+1}_{j-1} − dim X^n_j`
//! witnesses numerically.  `G` embeds a diagram as a complex concentrated
//! in degrees 1..N-1.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::mmor::{MMorObj, MorMap, MorObj};
use crate::module::{
    hom_space, injective_hull, is_projective, projective_cover, pullback, pushout, submodule,
    ModMap, Module,
};
use crate::ncomplex::{homology, ComplexMap, NComplex};

/// A bounded window of an acyclic complex of projective-injectives.
#[derive(Clone, Debug)]
pub struct AcyclicWindow {
    complex: NComplex,
}

impl AcyclicWindow {
    /// Validates the window: span at least 2N, projective-injective terms,
    /// vanishing homology at every interior slot.
    pub fn new(complex: NComplex) -> Result<AcyclicWindow> {
        let n = complex.order() as i64;
        let Some((lo, hi)) = complex.support() else {
            return Ok(AcyclicWindow { complex });
        };
        if hi - lo < 2 * n {
            return Err(Error::Window(format!(
                "window [{lo},{hi}] is shorter than 2N = {}",
                2 * n
            )));
        }
        complex.validate()?;
        for i in lo..=hi {
            if !is_projective(&complex.term(i)) {
                return Err(Error::Window(format!(
                    "term at degree {i} is not projective-injective"
                )));
            }
        }
        for deg in lo..=hi {
            for r in 1..complex.order() {
                // interior slot: the degrees feeding Z and B lie inside
                if deg - n + (r as i64) >= lo && deg + (r as i64) <= hi {
                    let h = homology(&complex, deg, r)?;
                    if h.h_dim != 0 {
                        return Err(Error::Window(format!(
                            "window not acyclic at interior slot ({deg},{r})"
                        )));
                    }
                }
            }
        }
        Ok(AcyclicWindow { complex })
    }

    pub fn complex(&self) -> &NComplex {
        &self.complex
    }

    pub fn into_complex(self) -> NComplex {
        self.complex
    }
}

/// The cycle chain `Z^0_1 ↪ Z^0_2 ↪ ⋯ ↪ Z^0_{N-1}` of a complex.
/// This is the object part of the functor from acyclic projective-injective
/// complexes to monomorphism diagrams.
pub fn cycles_functor(p: &NComplex) -> Result<MMorObj> {
    let n = p.order();
    let term0 = p.term(0);
    let mut objs: Vec<Module> = Vec::new();
    let mut incs: Vec<ModMap> = Vec::new();
    for r in 1..n {
        let rows = p.compose_diff(0, r).mat().row_kernel_basis();
        let (z, inc) = submodule(&term0, &rows)?;
        objs.push(z);
        incs.push(inc);
    }
    let mut maps = Vec::new();
    for r in 0..n - 2 {
        // Z^0_{r+1} ⊆ Z^0_{r+2} inside the common ambient term
        let mat = Mat::solve_left(incs[r + 1].mat(), incs[r].mat())
            .ok_or_else(|| Error::Complex("cycle chain is not nested".into()))?;
        maps.push(ModMap::from_parts(objs[r].clone(), objs[r + 1].clone(), mat));
    }
    MMorObj::new(MorObj::new(p.algebra().clone(), objs, maps)?)
}

/// `F` on a validated window; requires the window to contain `[-N, N]`.
pub fn cycles_functor_windowed(w: &AcyclicWindow) -> Result<MMorObj> {
    let n = w.complex.order() as i64;
    let Some((lo, hi)) = w.complex.support() else {
        return Err(Error::Window("empty window".into()));
    };
    if lo > -n || hi < n {
        return Err(Error::Window(format!(
            "window [{lo},{hi}] does not contain [-N, N] = [{},{}]",
            -n, n
        )));
    }
    cycles_functor(&w.complex)
}

/// The map part of the cycle functor: restriction of `f^0` to the cycles.
pub fn cycles_functor_map(f: &ComplexMap) -> Result<MorMap> {
    let src = cycles_functor(f.source())?;
    let tgt = cycles_functor(f.target())?;
    let n = f.source().order();
    let f0 = f.component(0);
    let mut comps = Vec::new();
    for r in 1..n {
        let src_rows = f.source().compose_diff(0, r).mat().row_kernel_basis();
        let tgt_rows = f.target().compose_diff(0, r).mat().row_kernel_basis();
        let moved = src_rows.mul(f0.mat());
        let mat = Mat::solve_left(&tgt_rows, &moved)
            .ok_or_else(|| Error::Complex("chain map does not preserve cycles".into()))?;
        comps.push(ModMap::from_parts(
            src.object(r - 1).clone(),
            tgt.object(r - 1).clone(),
            mat,
        ));
    }
    MorMap::new(src.as_mor().clone(), tgt.as_mor().clone(), comps)
}

/// The full N-acyclic array produced by [`expand_to_acyclic`].
#[derive(Clone, Debug)]
pub struct Expansion {
    pub n_order: usize,
    /// First row index (= -radius).
    pub row_lo: i64,
    /// `modules[row][j]`, `0 ≤ j ≤ N`; row 0 corresponds to `row_lo`.
    pub modules: Vec<Vec<Module>>,
    /// `incs[row][j] = ι^row_j : X^row_j ↪ X^row_{j+1}`, `0 ≤ j ≤ N-1`.
    pub incs: Vec<Vec<ModMap>>,
    /// `projs[row][j-1] = p^row_j : X^row_j ↠ X^{row+1}_{j-1}`, `1 ≤ j ≤ N`;
    /// present for every row except the last.
    pub projs: Vec<Vec<ModMap>>,
    pub window: AcyclicWindow,
}

impl Expansion {
    /// Checks `dim X^{n+1}_j = dim X^n_{j+1} + dim X^{n+1}_{j-1} − dim X^n_j`
    /// at every constructed square.
    pub fn bicartesian_dims_ok(&self) -> bool {
        let n = self.n_order;
        for row in 0..self.modules.len() - 1 {
            for j in 1..n {
                let a = self.modules[row][j].dim() as i64; // X^n_j
                let b = self.modules[row][j + 1].dim() as i64; // X^n_{j+1}
                let c = self.modules[row + 1][j - 1].dim() as i64; // X^{n+1}_{j-1}
                let d = self.modules[row + 1][j].dim() as i64; // X^{n+1}_j
                if d != b + c - a {
                    return false;
                }
            }
        }
        true
    }

    /// Commutativity of every square: `ι^n_j then p^n_{j+1}` equals
    /// `p^n_j then ι^{n+1}_{j-1}`.
    pub fn squares_commute(&self) -> bool {
        let n = self.n_order;
        for row in 0..self.modules.len() - 1 {
            for j in 1..n {
                let upper = self.incs[row][j].then(&self.projs[row][j]);
                let lower = self.projs[row][j - 1].then(&self.incs[row + 1][j - 1]);
                if upper.mat() != lower.mat() {
                    return false;
                }
            }
        }
        true
    }
}

/// Expands a monomorphism diagram into an acyclic window of
/// projective-injectives, rows `-m ..= m`.  The degree-0 cycles of the
/// result recover the diagram.
pub fn expand_to_acyclic(x: &MMorObj, m: i64) -> Result<Expansion> {
    if m < 2 {
        return Err(Error::Precondition("expansion radius must be at least 2".into()));
    }
    let alg = x.algebra().clone();
    let n = x.len() + 1; // the complex order N
    let zero = Module::zero(alg.clone());
    // row 0: 0 = X^0_0 ↪ X_1 ↪ ⋯ ↪ X_{N-1} ↪ X^0_N (envelope top map)
    let (env, env_target) = crate::mmor::proj_inj_envelope(x)?;
    let mut row0_mods: Vec<Module> = vec![zero.clone()];
    let mut row0_incs: Vec<ModMap> = Vec::new();
    row0_incs.push(ModMap::zero(zero.clone(), x.object(0).clone()));
    for i in 0..x.len() {
        row0_mods.push(x.object(i).clone());
        if i + 1 < x.len() {
            row0_incs.push(x.map(i).clone());
        }
    }
    let top_env = env.component(x.len() - 1).clone();
    row0_mods.push(env_target.object(x.len() - 1).clone());
    row0_incs.push(top_env);

    let mut rows_mods: Vec<Vec<Module>> = vec![row0_mods];
    let mut rows_incs: Vec<Vec<ModMap>> = vec![row0_incs];
    let mut projs_up: Vec<Vec<ModMap>> = Vec::new();

    // upward: rows 1 ..= m
    for _ in 0..m {
        let cur_mods = rows_mods.last().unwrap().clone();
        let cur_incs = rows_incs.last().unwrap().clone();
        let mut next_mods: Vec<Module> = vec![zero.clone()];
        let mut next_incs: Vec<ModMap> = Vec::new();
        let mut cur_projs: Vec<ModMap> = Vec::new();
        // p^n_1: X^n_1 ↠ 0
        cur_projs.push(ModMap::zero(cur_mods[1].clone(), zero.clone()));
        for j in 1..n {
            // pushout of ι^n_j along p^n_j
            let iota = &cur_incs[j];
            let p = &cur_projs[j - 1];
            let (po, from_top, from_bottom) = pushout(iota, p)?;
            // from_top = p^n_{j+1}: X^n_{j+1} ↠ X^{n+1}_j
            // from_bottom = ι^{n+1}_{j-1}: X^{n+1}_{j-1} ↪ X^{n+1}_j
            debug_assert!(from_top.is_surjective());
            debug_assert!(from_bottom.is_injective());
            cur_projs.push(from_top);
            next_incs.push(from_bottom);
            next_mods.push(po);
        }
        // close the row with an envelope into a projective-injective
        let hull = injective_hull(&next_mods[n - 1]);
        next_mods.push(hull.target().clone());
        next_incs.push(hull);
        projs_up.push(cur_projs);
        rows_mods.push(next_mods);
        rows_incs.push(next_incs);
    }

    // downward: rows -1 ..= -m, inserted in front
    let mut down_mods: Vec<Vec<Module>> = Vec::new();
    let mut down_incs: Vec<Vec<ModMap>> = Vec::new();
    let mut down_projs: Vec<Vec<ModMap>> = Vec::new();
    {
        let mut below_mods = rows_mods[0].clone();
        let mut below_incs = rows_incs[0].clone();
        for _ in 0..m {
            // open the row with a projective cover of X^n_{N-1}
            let cover = projective_cover(&below_mods[n - 1]);
            let mut cur_projs_rev: Vec<ModMap> = vec![cover.clone()]; // p^{n-1}_N
            let mut cur_mods_rev: Vec<Module> = vec![cover.source().clone()]; // X^{n-1}_N
            let mut cur_incs_rev: Vec<ModMap> = Vec::new();
            for j in (1..n).rev() {
                // pullback of the cospan X^{n-1}_{j+1} ↠ X^n_j ↞ X^n_{j-1}
                let p_above = cur_projs_rev.last().unwrap(); // p^{n-1}_{j+1}
                let iota_below = &below_incs[j - 1]; // ι^n_{j-1}: X^n_{j-1} ↪ X^n_j
                let (pb, to_prev, to_upper) = pullback(iota_below, p_above)?;
                // to_prev = p^{n-1}_j: X^{n-1}_j ↠ X^n_{j-1}
                // to_upper = ι^{n-1}_j: X^{n-1}_j ↪ X^{n-1}_{j+1}
                debug_assert!(to_prev.is_surjective());
                debug_assert!(to_upper.is_injective());
                cur_incs_rev.push(to_upper);
                cur_projs_rev.push(to_prev);
                cur_mods_rev.push(pb);
            }
            cur_mods_rev.push(zero.clone());
            cur_incs_rev.push(ModMap::zero(zero.clone(), cur_mods_rev[n - 1].clone()));
            // reverse into ascending-j order
            let cur_mods: Vec<Module> = cur_mods_rev.into_iter().rev().collect();
            let cur_incs: Vec<ModMap> = cur_incs_rev.into_iter().rev().collect();
            let cur_projs: Vec<ModMap> = cur_projs_rev.into_iter().rev().collect();
            down_mods.insert(0, cur_mods.clone());
            down_incs.insert(0, cur_incs.clone());
            down_projs.insert(0, cur_projs);
            below_mods = cur_mods;
            below_incs = cur_incs;
        }
    }

    let mut modules = down_mods;
    modules.extend(rows_mods);
    let mut incs = down_incs;
    incs.extend(rows_incs);
    let mut projs = down_projs;
    projs.extend(projs_up);

    // assemble the complex of the X^n_N with d^n = p^n_N then ι^{n+1}_{N-1}
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for row in modules.iter() {
        terms.push(row[n].clone());
    }
    for row in 0..modules.len() - 1 {
        let d = projs[row][n - 1].then(&incs[row + 1][n - 1]);
        diffs.push(d);
    }
    let complex = NComplex::new(alg, n, -m, terms, diffs)?;
    let window = AcyclicWindow::new(complex)?;
    Ok(Expansion { n_order: n, row_lo: -m, modules, incs, projs, window })
}

/// Lifts a diagram map between cycle chains to a chain map between the
/// windows, degree by degree: upward through the injectivity of the target
/// terms, downward through the projectivity of the source terms.  The
/// restriction of the lift to the degree-0 cycles recovers the input
/// exactly (fullness of the cycle functor).
pub fn lift_diagram_map(p: &NComplex, q: &NComplex, f: &MorMap) -> Result<ComplexMap> {
    let n = p.order();
    let fld = p.algebra().field();
    // f^0: extend f_{N-1}: Z_{N-1}(P) → Z_{N-1}(Q) ⊆ Q^0 along Z_{N-1}(P) ⊆ P^0
    let zp_rows = p.compose_diff(0, n - 1).mat().row_kernel_basis();
    let zq_rows = q.compose_diff(0, n - 1).mat().row_kernel_basis();
    let (zp, zp_inc) = submodule(&p.term(0), &zp_rows)?;
    let top_f = f.component(f.source().len() - 1);
    // map Z_{N-1}(P) → Q^0 in the chosen bases: f's top component is in the
    // coordinates of the cycle chain, which are exactly these kernel rows
    let into_q0 = top_f.mat().mul(&zq_rows);
    let seed = ModMap::from_parts(zp.clone(), q.term(0), into_q0);
    let f0 = crate::mmor::lift_along_mono(&zp_inc, &seed)
        .ok_or_else(|| Error::Solve("degree-0 lift failed".into()))?;
    let mut comps = std::collections::BTreeMap::new();
    comps.insert(0i64, f0);
    // upward: given f^d, the boundary image d_P(P^d) maps to Q^{d+1}; extend
    // along im(d_P) ⊆ P^{d+1} by injectivity
    let hi = p.hi().min(q.hi());
    for d in 0..hi {
        let prev = comps.get(&d).expect("built in order").clone();
        let dp = p.diff(d);
        let dq = q.diff(d);
        let img_rows = dp.mat().row_basis();
        let (img, img_inc) = submodule(&p.term(d + 1), &img_rows)?;
        // well-defined on the image: rows of img are x·d_P, sent to x·f^d·d_Q
        let pre = Mat::solve_left(dp.mat(), &img_rows)
            .ok_or_else(|| Error::Solve("image basis has no preimage".into()))?;
        let moved = pre.mul(prev.mat()).mul(dq.mat());
        let part = ModMap::from_parts(img, q.term(d + 1), moved);
        let next = crate::mmor::lift_along_mono(&img_inc, &part)
            .ok_or_else(|| Error::Solve("upward lift failed".into()))?;
        comps.insert(d + 1, next);
    }
    // downward: solve f^{d-1} · d_Q = d_P · f^d over the hom space, using
    // projectivity of P^{d-1}
    let lo = p.lo().max(q.lo());
    for d in (lo + 1..=0).rev() {
        let cur = comps.get(&d).expect("built in order").clone();
        let dp = p.diff(d - 1);
        let dq = q.diff(d - 1);
        let homs = hom_space(&p.term(d - 1), &q.term(d - 1))?;
        let (dm, dn) = (p.term(d - 1).dim(), q.term(d).dim());
        let mut sys = Mat::zeros(fld, dm * dn, homs.len());
        for (k, h) in homs.iter().enumerate() {
            let c = h.mat().mul(dq.mat());
            for u in 0..dm {
                for v in 0..dn {
                    sys.set(u * dn + v, k, c.at(u, v));
                }
            }
        }
        let rhs_mat = dp.mat().mul(cur.mat());
        let mut rhs = Mat::zeros(fld, dm * dn, 1);
        for u in 0..dm {
            for v in 0..dn {
                rhs.set(u * dn + v, 0, rhs_mat.at(u, v));
            }
        }
        let sol =
            sys.solve(&rhs).ok_or_else(|| Error::Solve("downward lift failed".into()))?;
        let mut mat = Mat::zeros(fld, dm, q.term(d - 1).dim());
        for (k, h) in homs.iter().enumerate() {
            mat = mat.add(&h.mat().scale(sol.at(k, 0)));
        }
        comps.insert(d - 1, ModMap::from_parts(p.term(d - 1), q.term(d - 1), mat));
    }
    let lifted = ComplexMap::from_parts(p.clone(), q.clone(), comps);
    lifted.validate()?;
    Ok(lifted)
}

/// `G`: a diagram with `N-1` objects, read as an N-complex concentrated in
/// degrees 1 through N-1.  `d^N = 0` holds for any chain because the
/// support is shorter than N.
pub fn embed_as_complex(x: &MorObj) -> Result<NComplex> {
    let n = x.len() + 1;
    let terms: Vec<Module> = x.objects().to_vec();
    let diffs: Vec<ModMap> = x.maps().to_vec();
    NComplex::new(x.algebra().clone(), n, 1, terms, diffs)
}

/// The chainwise exact sequence `G(X) ↪ μ^{N-1}_N(X_{N-1}) ↠ G(Cok X)[1]`.
pub fn rotation_sequence(x: &MMorObj) -> Result<(ComplexMap, ComplexMap)> {
    let n = x.len() + 1;
    let gx = embed_as_complex(x.as_mor())?;
    let top = x.object(x.len() - 1).clone();
    let mid = crate::ncomplex::mu(n, n as i64 - 1, n, &top)?;
    let ck = crate::mmor::cok(x)?;
    let gck = embed_as_complex(&ck)?.shift(1);
    // mono components at degree i (1..N-1): α_i^{N-1-i}: X_i ↪ X_{N-1}
    let mut mono_comps = std::collections::BTreeMap::new();
    for i in 1..n {
        let comp = x.as_mor().compose_map(i - 1, x.len() - (i - 1) - 1);
        mono_comps.insert(i as i64, comp);
    }
    let mono = ComplexMap::new(gx, mid.clone(), mono_comps)?;
    // epi components at degree i (0..N-2): X_{N-1} ↠ Cok_{i+1} = X_{N-1}/X_i
    let mut epi_comps = std::collections::BTreeMap::new();
    let projs = {
        let len = x.len();
        let mut v: Vec<ModMap> = vec![ModMap::identity(&top)];
        for i in 1..len {
            let comp = x.as_mor().compose_map(i - 1, len - i);
            let (_, pr) = crate::module::quotient_module(&top, comp.mat())?;
            v.push(pr);
        }
        v
    };
    for (i, pr) in projs.iter().enumerate().take(n - 1) {
        let tgt = gck.term(i as i64);
        epi_comps.insert(i as i64, ModMap::from_parts(mid.term(i as i64), tgt, pr.mat().clone()));
    }
    let epi = ComplexMap::new(mid, gck, epi_comps)?;
    Ok((mono, epi))
}
