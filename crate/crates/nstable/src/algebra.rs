//! Finite-dimensional associative algebras given by structure constants.
//!
//! An [`Algebra`] carries a complete set of primitive orthogonal idempotents
//! and a basis of its Jacobson radical; both are validated at construction
//! rather than computed.  The algebras in scope are split basic: the top of
//! each indecomposable projective `e_i A` is one-dimensional.  Right modules
//! are row vectors acted on by right multiplication; see [`crate::module`].

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::mat::Mat;

#[derive(Debug)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    /// `mult[i][j]` is the coefficient vector of `b_i * b_j`.
    mult: Vec<Vec<Vec<u64>>>,
    unit: Vec<u64>,
    idempotents: Vec<Vec<u64>>,
    radical: Vec<Vec<u64>>,
    /// Spanning set used for intertwining checks and hom solves:
    /// the idempotents together with a lift of a basis of rad/rad².
    gens: Vec<Vec<u64>>,
    opposite: OnceLock<Arc<Algebra>>,
    /// Cached data of the indecomposable projectives `e_i A`:
    /// `(action matrices, inclusion rows into the regular module)`.
    proj_data: OnceLock<Vec<(Vec<Mat>, Mat)>>,
    /// Memoized upper-triangular matrix algebras T_n over this algebra.
    pub(crate) tri_cache: Mutex<BTreeMap<usize, Arc<Algebra>>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
            && self.idempotents == other.idempotents
            && self.radical == other.radical
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Algebra {
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        idempotents: Vec<Vec<u64>>,
        radical: Vec<Vec<u64>>,
    ) -> Result<Arc<Algebra>> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Algebra("zero-dimensional algebra".into()));
        }
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(Error::Algebra("mult table shape".into()));
        }
        if mult.iter().flatten().any(|v| v.len() != dim) || unit.len() != dim {
            return Err(Error::Algebra("coefficient vector length".into()));
        }
        let reduce = |v: &[u64]| -> Vec<u64> { v.iter().map(|&x| field.reduce(x)).collect() };
        let mult: Vec<Vec<Vec<u64>>> =
            mult.iter().map(|row| row.iter().map(|v| reduce(v)).collect()).collect();
        let unit = reduce(&unit);
        let idempotents: Vec<Vec<u64>> = idempotents.iter().map(|v| reduce(v)).collect();
        let radical: Vec<Vec<u64>> = radical.iter().map(|v| reduce(v)).collect();
        if idempotents.iter().any(|v| v.len() != dim) || radical.iter().any(|v| v.len() != dim) {
            return Err(Error::Algebra("idempotent/radical vector length".into()));
        }

        let alg = Algebra {
            field,
            dim,
            labels,
            mult,
            unit,
            idempotents,
            radical,
            gens: Vec::new(),
            opposite: OnceLock::new(),
            proj_data: OnceLock::new(),
            tri_cache: Mutex::new(BTreeMap::new()),
        };
        alg.validate()?;
        let mut alg = alg;
        alg.gens = alg.compute_gens()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let f = self.field;
        let dim = self.dim;
        // unit acts as identity
        for k in 0..dim {
            let mut bk = vec![0u64; dim];
            bk[k] = 1;
            if self.elem_mul(&self.unit, &bk) != bk || self.elem_mul(&bk, &self.unit) != bk {
                return Err(Error::Algebra(format!("unit fails on basis element {k}")));
            }
        }
        // associativity on all basis triples
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.mult[i][j].clone();
                for k in 0..dim {
                    let mut bk = vec![0u64; dim];
                    bk[k] = 1;
                    let lhs = self.elem_mul(&ij, &bk);
                    let jk = &self.mult[j][k];
                    let mut bi = vec![0u64; dim];
                    bi[i] = 1;
                    let rhs = self.elem_mul(&bi, jk);
                    if lhs != rhs {
                        return Err(Error::Algebra(format!(
                            "associativity fails at basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        // idempotents: complete, orthogonal, primitive is implied by the
        // split-basic check below
        let n = self.idempotents.len();
        if n == 0 {
            return Err(Error::Algebra("no idempotents given".into()));
        }
        for (i, e) in self.idempotents.iter().enumerate() {
            if self.elem_mul(e, e) != *e {
                return Err(Error::Algebra(format!("idempotent {i} is not idempotent")));
            }
            for (j, e2) in self.idempotents.iter().enumerate() {
                if i != j && !self.elem_mul(e, e2).iter().all(|&x| x == 0) {
                    return Err(Error::Algebra(format!("idempotents {i},{j} not orthogonal")));
                }
            }
        }
        let mut total = vec![0u64; dim];
        for e in &self.idempotents {
            for (t, &x) in total.iter_mut().zip(e) {
                *t = f.add(*t, x);
            }
        }
        if total != self.unit {
            return Err(Error::Algebra("idempotents do not sum to the unit".into()));
        }
        // radical: two-sided ideal, nilpotent, complementary to the idempotent span
        let rad = self.radical_mat();
        if rad.rows() != rad.row_basis().rows() {
            return Err(Error::Algebra("radical basis is dependent".into()));
        }
        for k in 0..dim {
            let mut bk = vec![0u64; dim];
            bk[k] = 1;
            let lm = self.left_mult_mat(&bk);
            let rm = self.right_mult_mat(&bk);
            // rows of rad*rm are r·b_k, rows of rad*lm are b_k·r
            for side in [rad.mul(&rm), rad.mul(&lm)] {
                if Mat::solve_left(&rad, &side).is_none() {
                    return Err(Error::Algebra("radical is not a two-sided ideal".into()));
                }
            }
        }
        // nilpotency: J^m = 0 for some m <= dim
        let mut power = rad.clone();
        let mut m = 1;
        while !power.is_zero() {
            m += 1;
            if m > dim {
                return Err(Error::Algebra("radical is not nilpotent".into()));
            }
            // span of products (row of power) * (row of rad)
            let mut prods = Vec::new();
            for i in 0..power.rows() {
                for j in 0..rad.rows() {
                    prods.push(self.elem_mul(power.row(i), rad.row(j)));
                }
            }
            power = Mat::from_rows(f, &prods)?.row_basis();
        }
        // span(idempotents) + radical = A, so A/rad is split semisimple
        let idem = Mat::from_rows(f, &self.idempotents)?;
        if idem.vstack(&rad).rank() != dim {
            return Err(Error::Algebra(
                "idempotents and radical do not span the algebra (not split basic)".into(),
            ));
        }
        Ok(())
    }

    /// Multiplicative generating set: the idempotents plus a lift of a basis
    /// of rad/rad².  A linear map commuting with these commutes with every
    /// element, which keeps intertwining systems small.  The closure is
    /// verified once here.
    fn compute_gens(&self) -> Result<Vec<Vec<u64>>> {
        let f = self.field;
        let rad = self.radical_mat();
        let mut gens = self.idempotents.clone();
        if rad.rows() > 0 {
            let mut prods = Vec::new();
            for i in 0..rad.rows() {
                for j in 0..rad.rows() {
                    prods.push(self.elem_mul(rad.row(i), rad.row(j)));
                }
            }
            let rad2 = Mat::from_rows(f, &prods)?.row_basis();
            if rad2.rows() == 0 {
                for i in 0..rad.rows() {
                    gens.push(rad.row(i).to_vec());
                }
            } else {
                let (section, _) = Mat::row_quotient(&rad, &rad2)?;
                for i in 0..section.rows() {
                    gens.push(section.row(i).to_vec());
                }
            }
        }
        // verify the multiplicative closure spans the whole algebra
        let mut span = Mat::from_rows(f, &gens)?.row_basis();
        loop {
            let mut new_rows: Vec<Vec<u64>> = Vec::new();
            for i in 0..span.rows() {
                for g in &gens {
                    new_rows.push(self.elem_mul(span.row(i), g));
                }
            }
            let bigger = span.vstack(&Mat::from_rows(f, &new_rows)?).row_basis();
            if bigger.rows() == span.rows() {
                break;
            }
            span = bigger;
        }
        if span.rows() != self.dim {
            return Err(Error::Algebra(
                "idempotents and radical do not generate the algebra".into(),
            ));
        }
        Ok(gens)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn mult_table(&self) -> &Vec<Vec<Vec<u64>>> {
        &self.mult
    }

    pub fn idempotents(&self) -> &[Vec<u64>] {
        &self.idempotents
    }

    pub fn radical_basis(&self) -> &[Vec<u64>] {
        &self.radical
    }

    pub fn gens(&self) -> &[Vec<u64>] {
        &self.gens
    }

    pub fn radical_mat(&self) -> Mat {
        if self.radical.is_empty() {
            return Mat::zeros(self.field, 0, self.dim);
        }
        Mat::from_rows(self.field, &self.radical).expect("validated radical")
    }

    /// Product of two elements given by coefficient vectors.
    pub fn elem_mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, &m) in out.iter_mut().zip(&self.mult[i][j]) {
                    *o = f.add(*o, f.mul(c, m));
                }
            }
        }
        out
    }

    /// Matrix of right multiplication by `x` on the regular module
    /// (row convention: `v ↦ v · R_x`).
    pub fn right_mult_mat(&self, x: &[u64]) -> Mat {
        let mut rows = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let mut bk = vec![0u64; self.dim];
            bk[k] = 1;
            rows.push(self.elem_mul(&bk, x));
        }
        Mat::from_rows(self.field, &rows).expect("shape")
    }

    /// Matrix of left multiplication by `x` (row convention `v ↦ v · L_x`,
    /// i.e. row `k` holds the coefficients of `x · b_k`).
    pub fn left_mult_mat(&self, x: &[u64]) -> Mat {
        let mut rows = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let mut bk = vec![0u64; self.dim];
            bk[k] = 1;
            rows.push(self.elem_mul(x, &bk));
        }
        Mat::from_rows(self.field, &rows).expect("shape")
    }

    /// The opposite algebra (memoized).
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let mut mult = vec![vec![vec![0u64; self.dim]; self.dim]; self.dim];
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        mult[i][j] = self.mult[j][i].clone();
                    }
                }
                Algebra::new(
                    self.field,
                    self.labels.clone(),
                    mult,
                    self.unit.clone(),
                    self.idempotents.clone(),
                    self.radical.clone(),
                )
                .expect("opposite of a valid algebra is valid")
            })
            .clone()
    }

    pub(crate) fn proj_data(&self) -> &Vec<(Vec<Mat>, Mat)> {
        self.proj_data.get_or_init(|| {
            let mut out = Vec::new();
            for e in &self.idempotents {
                // e_i A = image of left multiplication by e_i inside the
                // regular module; left multiplication commutes with the
                // right action, so the image is a submodule
                let lm = self.left_mult_mat(e);
                let basis = lm.row_basis();
                let mut action = Vec::with_capacity(self.dim);
                for k in 0..self.dim {
                    let mut bk = vec![0u64; self.dim];
                    bk[k] = 1;
                    let rm = self.right_mult_mat(&bk);
                    let rows = basis.mul(&rm);
                    let act = Mat::solve_left(&basis, &rows)
                        .expect("e_i A is closed under the right action");
                    action.push(act);
                }
                out.push((action, basis));
            }
            out
        })
    }
}

/// The self-injective algebra `FQ/rad²` of the 2-cycle quiver
/// `1 ⇄ 2` with arrows `a: 1 → 2` and `b: 2 → 1`.
///
/// Basis `[e1, e2, a, b]`; path composition reads left to right, so
/// `e1 · a · e2 = a`.  Ships as the builtin named `rad2-cycle`.
pub fn rad2_cycle(field: FieldSpec) -> Arc<Algebra> {
    let z = || vec![0u64, 0, 0, 0];
    let e1 = vec![1u64, 0, 0, 0];
    let e2 = vec![0u64, 1, 0, 0];
    let a = vec![0u64, 0, 1, 0];
    let b = vec![0u64, 0, 0, 1];
    let mult = vec![
        vec![e1.clone(), z(), a.clone(), z()],
        vec![z(), e2.clone(), z(), b.clone()],
        vec![z(), a.clone(), z(), z()],
        vec![b.clone(), z(), z(), z()],
    ];
    Algebra::new(
        field,
        vec!["e1".into(), "e2".into(), "a".into(), "b".into()],
        mult,
        vec![1, 1, 0, 0],
        vec![e1, e2],
        vec![a, b],
    )
    .expect("builtin algebra is valid")
}
