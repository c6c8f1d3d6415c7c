//! The Serre functor `S = Ω ∘ R ∘ ν` on the stable monomorphism category,
//! Serre-duality checks, fractional Calabi-Yau orbit search, and the
//! builtin worked example over the rad-square-zero 2-cycle algebra.
//!
//! Everything here is object-level: functors are evaluated on stable
//! classes, and Calabi-Yau statements are verified as equalities of the
//! permutations they induce on the (finite) set of stable classes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::mmor::{
    hom_mor, mor_iso, omega, omega_inv, rotate, stable_hom_mmor, strip_mmor, MMorObj, MorObj,
};
use crate::module::{injective_hull, nakayama, nakayama_map, top, ModMap, Module};
use crate::rng::Rng;

/// Componentwise Nakayama functor on monomorphism diagrams.
pub fn nakayama_star(x: &MMorObj) -> Result<MMorObj> {
    let mut objs = Vec::new();
    for i in 0..x.len() {
        objs.push(nakayama(x.object(i))?);
    }
    let mut maps = Vec::new();
    for i in 0..x.len() - 1 {
        maps.push(nakayama_map(x.map(i))?);
    }
    // rebuild on the computed objects (nakayama_map recomputes its own
    // endpoints; they agree because the hom bases are deterministic)
    let mor = MorObj::new(x.algebra().clone(), objs, maps)?;
    MMorObj::new(mor)
}

/// The Serre functor on stable classes: `Ω ∘ Mimo ∘ Cok ∘ ν`, stripped.
pub fn serre(x: &MMorObj, rng: &mut Rng) -> Result<MMorObj> {
    let nu = nakayama_star(x)?;
    let rot = rotate(&nu)?;
    let om = omega(&rot)?;
    strip_mmor(&om, rng)
}

/// Serre duality as a dimension identity:
/// `dim Hom_stab(X, Y) = dim Hom_stab(Y, S X)`.
pub fn verify_serre_duality(x: &MMorObj, y: &MMorObj, rng: &mut Rng) -> Result<bool> {
    let (lhs, _) = stable_hom_mmor(x, y)?;
    let sx = serre(x, rng)?;
    let (rhs, _) = stable_hom_mmor(y, &sx)?;
    Ok(lhs == rhs)
}

/// One of the two families in the worked example.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Family {
    X,
    Y,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::X => write!(f, "X"),
            Family::Y => write!(f, "Y"),
        }
    }
}

/// An indecomposable diagram of the worked example: `i` simples followed by
/// `j` projective-injectives (zeros in front), in the X or Y family.
#[derive(Clone, Debug)]
pub struct ExampleClass {
    pub family: Family,
    pub i: usize,
    pub j: usize,
    pub diagram: MMorObj,
}

impl ExampleClass {
    pub fn label(&self) -> String {
        format!("{}({},{})", self.family, self.i, self.j)
    }

    pub fn is_proj_inj(&self) -> bool {
        self.i == 0
    }
}

/// The builtin example algebra `FQ/rad²` of the 2-cycle quiver.
pub fn example_algebra(field: crate::field::FieldSpec) -> Arc<Algebra> {
    crate::algebra::rad2_cycle(field)
}

fn simple_and_hull(alg: &Arc<Algebra>, vertex: usize) -> (Module, Module, ModMap) {
    let (p, _) = Module::projective(alg, vertex);
    let (s, _) = top(&p);
    let h = injective_hull(&s);
    (s, h.target().clone(), h)
}

/// All indecomposables `X(i,j)`, `Y(i,j)` with `1 ≤ i+j ≤ N-1` of
/// `MMor_{N-2}(A)` for the example algebra, as validated diagrams.
pub fn example_indecomposables(alg: &Arc<Algebra>, n: usize) -> Result<Vec<ExampleClass>> {
    if n < 2 {
        return Err(Error::Precondition("N must be at least 2".into()));
    }
    let len = n - 1;
    let (s1, i1, h1) = simple_and_hull(alg, 0);
    let (s2, i2, h2) = simple_and_hull(alg, 1);
    let mut out = Vec::new();
    for (family, s, i_mod, hull) in
        [(Family::X, s1, i1, h1), (Family::Y, s2, i2, h2)]
    {
        for simples in 0..=len {
            for hulls in 0..=(len - simples) {
                if simples + hulls == 0 {
                    continue;
                }
                let zeros = len - simples - hulls;
                let zero = Module::zero(alg.clone());
                let mut objects = Vec::with_capacity(len);
                for _ in 0..zeros {
                    objects.push(zero.clone());
                }
                for _ in 0..simples {
                    objects.push(s.clone());
                }
                for _ in 0..hulls {
                    objects.push(i_mod.clone());
                }
                let mut maps = Vec::with_capacity(len.saturating_sub(1));
                for pos in 0..len.saturating_sub(1) {
                    let (src, tgt) = (objects[pos].clone(), objects[pos + 1].clone());
                    if src.is_zero() {
                        maps.push(ModMap::zero(src, tgt));
                    } else if src.dim() == s.dim() && tgt.dim() == s.dim() {
                        maps.push(ModMap::identity(&s));
                    } else if src.dim() == s.dim() && tgt.dim() == i_mod.dim() {
                        maps.push(hull.clone());
                    } else {
                        maps.push(ModMap::identity(&i_mod));
                    }
                }
                let mor = MorObj::new(alg.clone(), objects, maps)?;
                out.push(ExampleClass {
                    family,
                    i: simples,
                    j: hulls,
                    diagram: MMorObj::new(mor)?,
                });
            }
        }
    }
    // deterministic order: family, then i+j, then i
    out.sort_by_key(|c| (c.family, c.i + c.j, c.i));
    Ok(out)
}

/// Finds the class isomorphic to a (already stripped) diagram; `None` means
/// the stable class is zero.
pub fn classify_stable(
    stripped: &MMorObj,
    classes: &[ExampleClass],
    rng: &mut Rng,
) -> Result<Option<usize>> {
    if stripped.is_zero_diagram() {
        return Ok(None);
    }
    for (k, c) in classes.iter().enumerate() {
        if c.is_proj_inj() {
            continue;
        }
        if mor_iso(stripped.as_mor(), c.diagram.as_mor(), rng)?.is_iso() {
            return Ok(Some(k));
        }
    }
    Err(Error::Unverified("stable class not in the example list".into()))
}

/// The closed form for where S sends each class (`i > 0`): the families
/// swap and `j` drops when `j > 0`; at `j = 0` the class wraps around to
/// the top layer.
pub fn expected_serre(family: Family, i: usize, j: usize, n: usize) -> (Family, usize, usize) {
    let other = match family {
        Family::X => Family::Y,
        Family::Y => Family::X,
    };
    if j > 0 {
        (other, i, j - 1)
    } else {
        (family, n - i, i - 1)
    }
}

pub fn expected_omega(family: Family, i: usize, j: usize) -> (Family, usize, usize) {
    let other = match family {
        Family::X => Family::Y,
        Family::Y => Family::X,
    };
    (other, i, j)
}

/// The permutations that S and Ω induce on the non-projective stable
/// classes, computed (not assumed) from the functors.
pub struct StablePermutations {
    pub classes: Vec<ExampleClass>,
    /// Index of the stable (non-proj-inj) classes inside `classes`.
    pub stable_idx: Vec<usize>,
    /// `serre_of[k]` = position (within `classes`) of `S(classes[k])` for
    /// stable `k`.
    pub serre_of: BTreeMap<usize, usize>,
    pub omega_of: BTreeMap<usize, usize>,
    pub omega_inv_of: BTreeMap<usize, usize>,
}

pub fn stable_permutations(
    alg: &Arc<Algebra>,
    n: usize,
    rng: &mut Rng,
) -> Result<StablePermutations> {
    let classes = example_indecomposables(alg, n)?;
    let stable_idx: Vec<usize> =
        (0..classes.len()).filter(|&k| !classes[k].is_proj_inj()).collect();
    let mut serre_of = BTreeMap::new();
    let mut omega_of = BTreeMap::new();
    let mut omega_inv_of = BTreeMap::new();
    for &k in &stable_idx {
        let x = &classes[k].diagram;
        let s = serre(x, rng)?;
        let target = classify_stable(&s, &classes, rng)?
            .ok_or_else(|| Error::Unverified("S sent a stable class to zero".into()))?;
        serre_of.insert(k, target);
        let om = strip_mmor(&omega(x)?, rng)?;
        let ot = classify_stable(&om, &classes, rng)?
            .ok_or_else(|| Error::Unverified("Ω sent a stable class to zero".into()))?;
        omega_of.insert(k, ot);
        let oi = strip_mmor(&omega_inv(x)?, rng)?;
        let oit = classify_stable(&oi, &classes, rng)?
            .ok_or_else(|| Error::Unverified("Ω⁻¹ sent a stable class to zero".into()))?;
        omega_inv_of.insert(k, oit);
    }
    Ok(StablePermutations { classes, stable_idx, serre_of, omega_of, omega_inv_of })
}

impl StablePermutations {
    /// `S^l` as a map on stable class indices.
    pub fn serre_power(&self, l: usize) -> BTreeMap<usize, usize> {
        let mut cur: BTreeMap<usize, usize> =
            self.stable_idx.iter().map(|&k| (k, k)).collect();
        for _ in 0..l {
            for v in cur.values_mut() {
                *v = self.serre_of[v];
            }
        }
        cur
    }

    /// `Ω^{-m}` (i.e. `Σ^m`) as a map on stable class indices; `m` may be
    /// negative.
    pub fn sigma_power(&self, m: i64) -> BTreeMap<usize, usize> {
        let mut cur: BTreeMap<usize, usize> =
            self.stable_idx.iter().map(|&k| (k, k)).collect();
        let (table, steps) = if m >= 0 {
            (&self.omega_inv_of, m as usize)
        } else {
            (&self.omega_of, (-m) as usize)
        };
        for _ in 0..steps {
            for v in cur.values_mut() {
                *v = table[v];
            }
        }
        cur
    }
}

/// Result of a Calabi-Yau search: the smallest `(l, |m|)` with
/// `S^l ≅ Σ^m` on every stable class in the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CYWitness {
    pub m: i64,
    pub l: usize,
    pub object_set: Vec<String>,
    pub verdict: bool,
}

/// Object-level fractional Calabi-Yau search on the example classes.
pub fn find_cy(perms: &StablePermutations, max_l: usize, max_m: i64) -> Option<CYWitness> {
    let labels: Vec<String> =
        perms.stable_idx.iter().map(|&k| perms.classes[k].label()).collect();
    for l in 1..=max_l {
        let sl = perms.serre_power(l);
        let mut ms: Vec<i64> = vec![0];
        for a in 1..=max_m {
            ms.push(a);
            ms.push(-a);
        }
        for m in ms {
            if sl == perms.sigma_power(m) {
                return Some(CYWitness { m, l, object_set: labels.clone(), verdict: true });
            }
        }
    }
    None
}

/// An Auslander-Reiten quiver: vertices are the example classes, solid
/// edges the irreducible maps (`rad/rad² ≠ 0`), dashed edges the translate
/// `τ = S ∘ Ω` drawn from each non-projective vertex to its translate.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub vertices: Vec<(String, bool)>,
    /// `(from, to, multiplicity)` with multiplicity `dim rad/rad²`.
    pub solid: Vec<(usize, usize, usize)>,
    /// `(from, to)` with `to = τ(from)`.
    pub dashed: Vec<(usize, usize)>,
}

impl ArQuiver {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar_quiver {\n");
        for (k, (label, pi)) in self.vertices.iter().enumerate() {
            let shown = if *pi { format!("[{label}]") } else { label.clone() };
            s.push_str(&format!("  v{k} [label=\"{shown}\"];\n"));
        }
        for &(a, b, mult) in &self.solid {
            for _ in 0..mult {
                s.push_str(&format!("  v{a} -> v{b};\n"));
            }
        }
        for &(a, b) in &self.dashed {
            s.push_str(&format!("  v{a} -> v{b} [style=dashed, arrowhead=none];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// The radical `rad(X, Y)`: all of Hom for non-isomorphic indecomposables,
/// the non-invertible endomorphisms when `X ≅ Y` (a subspace since End is
/// local).
fn rad_dim_basis(
    x: &MMorObj,
    y: &MMorObj,
    same: bool,
    rng: &mut Rng,
) -> Result<Vec<crate::mmor::MorMap>> {
    let homs = hom_mor(x.as_mor(), y.as_mor())?;
    if !same {
        return Ok(homs);
    }
    if homs.len() == 1 {
        // End = F·id, radical is zero
        return Ok(Vec::new());
    }
    let p = x.algebra().field().p();
    let e = homs.len() as u32;
    if p.checked_pow(e).is_none() || p.pow(e) > crate::decomp::EXHAUSTION_LIMIT {
        return Err(Error::Unverified("endomorphism ring too large to enumerate".into()));
    }
    // enumerate all endomorphisms, keep the non-invertible ones, and check
    // that they form a subspace (they must, End being local)
    let fld = x.algebra().field();
    let total = p.pow(e);
    let width: usize = (0..x.len()).map(|i| x.object(i).dim() * y.object(i).dim()).sum();
    let mut rows = Mat::zeros(fld, 0, width);
    let mut count = 0u64;
    for code in 0..total {
        let mut c = code;
        let mut cand = crate::mmor::MorMap::zero(x.as_mor().clone(), y.as_mor().clone());
        for h in &homs {
            let coeff = c % p;
            c /= p;
            if coeff != 0 {
                cand = cand.add(&h.scale(coeff));
            }
        }
        if !cand.is_componentwise_iso() {
            count += 1;
            let mut v = Vec::new();
            for i in 0..x.len() {
                let m = cand.component(i).mat();
                for u in 0..m.rows() {
                    v.extend_from_slice(m.row(u));
                }
            }
            rows = rows.vstack(&Mat::from_rows(fld, &[v])?);
        }
    }
    let basis = rows.row_basis();
    if p.pow(basis.rows() as u32) != count {
        return Err(Error::Unverified("non-invertible endomorphisms not a subspace".into()));
    }
    // rebuild maps from basis rows
    let mut out = Vec::new();
    for ri in 0..basis.rows() {
        let mut comps = Vec::new();
        let mut off = 0;
        for i in 0..x.len() {
            let (dx, dy) = (x.object(i).dim(), y.object(i).dim());
            let mat = Mat::from_fn(fld, dx, dy, |u, v| basis.at(ri, off + u * dy + v));
            off += dx * dy;
            comps.push(ModMap::from_parts(x.object(i).clone(), y.object(i).clone(), mat));
        }
        out.push(crate::mmor::MorMap::from_parts(
            x.as_mor().clone(),
            y.as_mor().clone(),
            comps,
        ));
    }
    let _ = rng;
    Ok(out)
}

/// Computes the AR quiver of the example classes for the given N.
pub fn ar_quiver(alg: &Arc<Algebra>, n: usize, rng: &mut Rng) -> Result<ArQuiver> {
    let perms = stable_permutations(alg, n, rng)?;
    let classes = &perms.classes;
    let count = classes.len();
    // radical bases for all ordered pairs
    let mut rad: Vec<Vec<Vec<crate::mmor::MorMap>>> = Vec::with_capacity(count);
    for a in 0..count {
        let mut row = Vec::with_capacity(count);
        for b in 0..count {
            row.push(rad_dim_basis(
                &classes[a].diagram,
                &classes[b].diagram,
                a == b,
                rng,
            )?);
        }
        rad.push(row);
    }
    let fld = alg.field();
    let mut solid = Vec::new();
    for a in 0..count {
        for b in 0..count {
            let rd = rad[a][b].len();
            if rd == 0 {
                continue;
            }
            // rad²(a,b) = Σ_z rad(a,z)·rad(z,b)
            let width: usize = (0..classes[a].diagram.len())
                .map(|i| classes[a].diagram.object(i).dim() * classes[b].diagram.object(i).dim())
                .sum();
            let mut rows = Mat::zeros(fld, 0, width);
            for z in 0..count {
                for f in &rad[a][z] {
                    for g in &rad[z][b] {
                        let comp = f.then(g);
                        let mut v = Vec::new();
                        for i in 0..classes[a].diagram.len() {
                            let m = comp.component(i).mat();
                            for u in 0..m.rows() {
                                v.extend_from_slice(m.row(u));
                            }
                        }
                        rows = rows.vstack(&Mat::from_rows(fld, &[v])?);
                    }
                }
            }
            let rad2 = rows.row_basis().rows();
            if rd > rad2 {
                solid.push((a, b, rd - rad2));
            }
        }
    }
    let mut dashed = Vec::new();
    for &k in &perms.stable_idx {
        // τ = S ∘ Ω on stable classes
        let t = perms.serre_of[&perms.omega_of[&k]];
        dashed.push((k, t));
    }
    let vertices: Vec<(String, bool)> =
        classes.iter().map(|c| (c.label(), c.is_proj_inj())).collect();
    Ok(ArQuiver { vertices, solid, dashed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::mmor::is_proj_inj;

    fn alg() -> Arc<Algebra> {
        example_algebra(FieldSpec::new(7).unwrap())
    }

    #[test]
    fn example_counts() {
        let a = alg();
        let n3 = example_indecomposables(&a, 3).unwrap();
        assert_eq!(n3.len(), 10);
        assert_eq!(n3.iter().filter(|c| c.is_proj_inj()).count(), 4);
        let n4 = example_indecomposables(&a, 4).unwrap();
        assert_eq!(n4.len(), 18);
        let n5 = example_indecomposables(&a, 5).unwrap();
        assert_eq!(n5.len(), 28);
        for c in n3.iter().chain(&n4).chain(&n5) {
            assert_eq!(c.is_proj_inj(), is_proj_inj(&c.diagram), "{}", c.label());
        }
    }

    #[test]
    fn nakayama_star_swaps_families() {
        let a = alg();
        let classes = example_indecomposables(&a, 3).unwrap();
        let mut rng = Rng::new(3);
        for c in &classes {
            let nu = nakayama_star(&c.diagram).unwrap();
            // ν swaps the two vertices, hence the two families
            let expect = classes
                .iter()
                .find(|d| d.family != c.family && d.i == c.i && d.j == c.j)
                .unwrap();
            assert!(
                mor_iso(nu.as_mor(), expect.diagram.as_mor(), &mut rng).unwrap().is_iso(),
                "ν_*{} should be {}",
                c.label(),
                expect.label()
            );
            // ν² ≅ id
            let nunu = nakayama_star(&nu).unwrap();
            assert!(mor_iso(nunu.as_mor(), c.diagram.as_mor(), &mut rng).unwrap().is_iso());
        }
    }

    #[test]
    fn serre_closed_form_n3() {
        let a = alg();
        let classes = example_indecomposables(&a, 3).unwrap();
        let mut rng = Rng::new(5);
        for c in classes.iter().filter(|c| !c.is_proj_inj()) {
            let s = serre(&c.diagram, &mut rng).unwrap();
            let k = classify_stable(&s, &classes, &mut rng).unwrap().unwrap();
            let got = &classes[k];
            let (ef, ei, ej) = expected_serre(c.family, c.i, c.j, 3);
            assert_eq!(
                (got.family, got.i, got.j),
                (ef, ei, ej),
                "S({}) = {} but expected {}({},{})",
                c.label(),
                got.label(),
                ef,
                ei,
                ej
            );
        }
    }

    #[test]
    fn omega_closed_form_n3() {
        let a = alg();
        let classes = example_indecomposables(&a, 3).unwrap();
        let mut rng = Rng::new(7);
        for c in classes.iter().filter(|c| !c.is_proj_inj()) {
            let om = strip_mmor(&omega(&c.diagram).unwrap(), &mut rng).unwrap();
            let k = classify_stable(&om, &classes, &mut rng).unwrap().unwrap();
            let got = &classes[k];
            let (ef, ei, ej) = expected_omega(c.family, c.i, c.j);
            assert_eq!((got.family, got.i, got.j), (ef, ei, ej), "Ω({})", c.label());
        }
    }

    #[test]
    fn serre_of_proj_inj_is_zero() {
        let a = alg();
        let classes = example_indecomposables(&a, 3).unwrap();
        let mut rng = Rng::new(9);
        for c in classes.iter().filter(|c| c.is_proj_inj()) {
            let s = serre(&c.diagram, &mut rng).unwrap();
            assert!(s.is_zero_diagram(), "S of {} must vanish stably", c.label());
        }
    }

    #[test]
    fn serre_equals_rotation_on_example() {
        // the example has ν_* ≅ Ω ≅ Ω⁻¹, so S = Ω R ν_* ≅ R object-level
        let a = alg();
        let classes = example_indecomposables(&a, 3).unwrap();
        let mut rng = Rng::new(27);
        for c in classes.iter().filter(|c| !c.is_proj_inj()) {
            let s = serre(&c.diagram, &mut rng).unwrap();
            let r = strip_mmor(&rotate(&c.diagram).unwrap(), &mut rng).unwrap();
            assert!(
                mor_iso(s.as_mor(), r.as_mor(), &mut rng).unwrap().is_iso(),
                "S({}) must agree with R({})",
                c.label(),
                c.label()
            );
        }
    }

    #[test]
    fn cy_n3_is_one_three() {
        let a = alg();
        let mut rng = Rng::new(11);
        let perms = stable_permutations(&a, 3, &mut rng).unwrap();
        let w = find_cy(&perms, 6, 6).unwrap();
        assert_eq!((w.m, w.l), (1, 3));
    }

    #[test]
    fn rotation_preserves_stable_hom_dimensions() {
        // R is an autoequivalence of the stable category, so the matrix of
        // stable hom dimensions is invariant under rotating both arguments
        let a = alg();
        let classes = example_indecomposables(&a, 3).unwrap();
        let mut rng = Rng::new(33);
        let stable: Vec<&ExampleClass> =
            classes.iter().filter(|c| !c.is_proj_inj()).collect();
        let rotated: Vec<MMorObj> = stable
            .iter()
            .map(|c| strip_mmor(&rotate(&c.diagram).unwrap(), &mut rng).unwrap())
            .collect();
        for (i, x) in stable.iter().enumerate() {
            for (j, y) in stable.iter().enumerate() {
                let (before, _) = stable_hom_mmor(&x.diagram, &y.diagram).unwrap();
                let (after, _) = stable_hom_mmor(&rotated[i], &rotated[j]).unwrap();
                assert_eq!(
                    before,
                    after,
                    "stable hom dims must match for ({}, {})",
                    x.label(),
                    y.label()
                );
            }
        }
    }

    #[test]
    fn serre_duality_dims_n3_sample() {
        let a = alg();
        let classes = example_indecomposables(&a, 3).unwrap();
        let mut rng = Rng::new(13);
        for x in classes.iter().take(4) {
            for y in classes.iter().take(4) {
                assert!(
                    verify_serre_duality(&x.diagram, &y.diagram, &mut rng).unwrap(),
                    "Serre duality failed for ({}, {})",
                    x.label(),
                    y.label()
                );
            }
        }
    }

    #[test]
    fn serre_duality_full_matrix_n5() {
        let a = alg();
        let classes = example_indecomposables(&a, 5).unwrap();
        let mut rng = Rng::new(55);
        let serre_of: Vec<MMorObj> =
            classes.iter().map(|c| serre(&c.diagram, &mut rng).unwrap()).collect();
        for (xi, x) in classes.iter().enumerate() {
            for y in classes.iter() {
                let (lhs, _) = stable_hom_mmor(&x.diagram, &y.diagram).unwrap();
                let rhs = if serre_of[xi].is_zero_diagram() {
                    0
                } else {
                    stable_hom_mmor(&y.diagram, &serre_of[xi]).unwrap().0
                };
                assert_eq!(lhs, rhs, "({}, {})", x.label(), y.label());
            }
        }
    }

    #[test]
    fn ar_quiver_n3_matches_figure() {
        let a = alg();
        let mut rng = Rng::new(15);
        let q = ar_quiver(&a, 3, &mut rng).unwrap();
        assert_eq!(q.vertices.len(), 10);
        assert_eq!(q.vertices.iter().filter(|(_, pi)| *pi).count(), 4);
        // solid edges among stable vertices form the hexagon
        // X(1,1) → Y(1,0) → Y(2,0) → Y(1,1) → X(1,0) → X(2,0) → X(1,1)
        let idx = |label: &str| q.vertices.iter().position(|(l, _)| l == label).unwrap();
        let expected = [
            ("X(1,1)", "Y(1,0)"),
            ("Y(1,0)", "Y(2,0)"),
            ("Y(2,0)", "Y(1,1)"),
            ("Y(1,1)", "X(1,0)"),
            ("X(1,0)", "X(2,0)"),
            ("X(2,0)", "X(1,1)"),
        ];
        for (from, to) in expected {
            let (a, b) = (idx(from), idx(to));
            assert!(
                q.solid.iter().any(|&(x, y, _)| x == a && y == b),
                "missing solid edge {from} → {to}"
            );
        }
        // no solid edges among stable vertices beyond the hexagon
        let stable: Vec<usize> =
            (0..q.vertices.len()).filter(|&k| !q.vertices[k].1).collect();
        let count = q
            .solid
            .iter()
            .filter(|&&(x, y, _)| stable.contains(&x) && stable.contains(&y))
            .count();
        assert_eq!(count, 6);
        let dot = q.to_dot();
        assert!(dot.contains("style=dashed"));
        assert!(dot.contains("[X(0,1)]"));
    }
}
