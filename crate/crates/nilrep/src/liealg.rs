//! Nilpotent Lie algebras given by structure constants: validation,
//! descending central series, graded pieces and the graded bracket, and
//! free nilpotent algebras built inside the truncated free associative
//! algebra.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{FieldSpec, Rat, Scalar};
use crate::linalg::{Matrix, Subspace};

/// How a basis vector arises from the generators, when the algebra
/// carries a generator presentation. `Bracket(a, b)` refers to earlier
/// basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenExpr {
    Gen(usize),
    Bracket(usize, usize),
}

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    field: Arc<FieldSpec>,
    dim: usize,
    labels: Vec<String>,
    /// c[i][j][k]: coefficient of v_k in [v_i, v_j].
    c: Vec<Vec<Vec<Scalar>>>,
    gen_exprs: Option<Vec<GenExpr>>,
    depth: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub antisymmetry_violations: Vec<(usize, usize, usize)>,
    pub jacobi_violations: Vec<(usize, usize, usize)>,
    pub nilpotent: bool,
    pub depth: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.jacobi_violations.is_empty() && self.nilpotent
    }
}

/// A basis element of a graded piece h_s, kept as a lift in g^(s)
/// together with the subspace g^(s+1) to reduce by.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub degree: usize,
    /// Lift vectors in ambient coordinates, one per basis element of h_s.
    pub lifts: Vec<Vec<Scalar>>,
    /// g^(s+1), the reduction subspace.
    pub reduction: Subspace,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.lifts.len()
    }

    /// Residue of an ambient vector modulo g^(s+1).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduction.reduce_vector(v)
    }

    /// Coordinates of an element of g^(s) in the lift basis, modulo the
    /// reduction subspace. `None` if the vector is not in g^(s) + g^(s+1).
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.reduction.field().clone();
        let n = self.reduction.ambient_dim();
        // solve v = sum x_i lift_i  (mod reduction)
        let red_basis = self.reduction.basis().to_vec();
        let mut cols: Vec<Vec<Scalar>> = self.lifts.clone();
        cols.extend(red_basis);
        if cols.is_empty() {
            return if v.iter().all(|c| c.is_zero()) { Some(vec![]) } else { None };
        }
        let mut m = Matrix::zero(&field, n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, col[i].clone());
            }
        }
        m.solve(v).map(|x| x[..self.lifts.len()].to_vec())
    }
}

impl LieAlgebra {
    /// Validates raw structure constants without constructing anything.
    pub fn validate_raw(field: &Arc<FieldSpec>, c: &[Vec<Vec<Scalar>>]) -> ValidationReport {
        let m = c.len();
        let mut report = ValidationReport::default();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if &c[i][j][k] + &c[j][i][k] != Scalar::zero(field) {
                        report.antisymmetry_violations.push((i, j, k));
                    }
                }
            }
        }
        let bracket = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(field); m];
            for i in 0..m {
                if u[i].is_zero() {
                    continue;
                }
                for j in 0..m {
                    if v[j].is_zero() {
                        continue;
                    }
                    let f = &u[i] * &v[j];
                    for k in 0..m {
                        out[k] = &out[k] + &(&f * &c[i][j][k]);
                    }
                }
            }
            out
        };
        let unit = |i: usize| -> Vec<Scalar> {
            let mut v = vec![Scalar::zero(field); m];
            v[i] = Scalar::one(field);
            v
        };
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let mut acc = bracket(&bracket(&unit(i), &unit(j)), &unit(k));
                    let b2 = bracket(&bracket(&unit(j), &unit(k)), &unit(i));
                    let b3 = bracket(&bracket(&unit(k), &unit(i)), &unit(j));
                    for t in 0..m {
                        acc[t] = &(&acc[t] + &b2[t]) + &b3[t];
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        report.jacobi_violations.push((i, j, k));
                    }
                }
            }
        }
        if report.antisymmetry_violations.is_empty() && report.jacobi_violations.is_empty() {
            // descending central series on the raw constants
            let mut series = vec![Subspace::full(field, m)];
            loop {
                let last = series.last().unwrap();
                if last.is_zero() {
                    break;
                }
                let mut vecs = Vec::new();
                for a in 0..m {
                    for w in last.basis() {
                        vecs.push(bracket(&unit(a), w));
                    }
                }
                let next = Subspace::from_vectors(field, m, vecs);
                if &next == last {
                    break; // stabilized above zero: not nilpotent
                }
                series.push(next);
            }
            if series.last().unwrap().is_zero() {
                report.nilpotent = true;
                // series = [g^(1), ..., g^(d+1) = 0], so the depth is its
                // length minus one
                report.depth = Some(series.len() - 1);
            }
        }
        report
    }

    pub fn new(
        field: Arc<FieldSpec>,
        labels: Vec<String>,
        c: Vec<Vec<Vec<Scalar>>>,
        gen_exprs: Option<Vec<GenExpr>>,
    ) -> Result<Arc<Self>> {
        let dim = c.len();
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        let report = Self::validate_raw(&field, &c);
        if !report.antisymmetry_violations.is_empty() {
            return Err(Error::InvalidAlgebra(format!(
                "antisymmetry fails at {:?}",
                &report.antisymmetry_violations[..report.antisymmetry_violations.len().min(5)]
            )));
        }
        if !report.jacobi_violations.is_empty() {
            return Err(Error::InvalidAlgebra(format!(
                "Jacobi identity fails at {:?}",
                &report.jacobi_violations[..report.jacobi_violations.len().min(5)]
            )));
        }
        if !report.nilpotent {
            return Err(Error::InvalidAlgebra("not nilpotent".into()));
        }
        if let Some(exprs) = &gen_exprs {
            if exprs.len() != dim {
                return Err(Error::InvalidAlgebra("generator expressions wrong length".into()));
            }
        }
        Ok(Arc::new(LieAlgebra {
            field,
            dim,
            labels,
            c,
            gen_exprs,
            depth: report.depth.unwrap(),
        }))
    }

    /// Builds from a sparse bracket table, filling in antisymmetry.
    pub fn from_sparse(
        field: Arc<FieldSpec>,
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Scalar)>)],
        gen_exprs: Option<Vec<GenExpr>>,
    ) -> Result<Arc<Self>> {
        let dim = labels.len();
        let mut c = vec![vec![vec![Scalar::zero(&field); dim]; dim]; dim];
        for (i, j, terms) in brackets {
            for (k, v) in terms {
                c[*i][*j][*k] = &c[*i][*j][*k] + v;
                c[*j][*i][*k] = &c[*j][*i][*k] - v;
            }
        }
        LieAlgebra::new(field, labels, c, gen_exprs)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn depth(&self) -> usize {
        self.depth
    }
    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.c
    }
    pub fn gen_exprs(&self) -> Option<&[GenExpr]> {
        self.gen_exprs.as_deref()
    }
    pub fn generator_count(&self) -> Option<usize> {
        self.gen_exprs.as_ref().map(|e| {
            e.iter()
                .filter(|x| matches!(x, GenExpr::Gen(_)))
                .count()
        })
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(&self.field); self.dim];
        v[i] = Scalar::one(&self.field);
        v
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(&self.field); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] = &out[k] + &(&f * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// g^(1) ⊇ g^(2) ⊇ ... ⊇ g^(d+1) = 0.
    pub fn descending_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(&self.field, self.dim)];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let mut vecs = Vec::new();
            for a in 0..self.dim {
                for w in last.basis() {
                    vecs.push(self.bracket(&self.unit(a), w));
                }
            }
            series.push(Subspace::from_vectors(&self.field, self.dim, vecs));
        }
        series
    }

    /// g^(s) as a subspace, with g^(i) = 0 for i beyond the depth.
    pub fn dcs_term(&self, s: usize) -> Subspace {
        assert!(s >= 1);
        let series = self.descending_central_series();
        series
            .get(s - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(&self.field, self.dim))
    }

    /// h_s = g^(s)/g^(s+1) as lifted basis vectors plus the reduction
    /// subspace.
    pub fn graded_piece(&self, s: usize) -> Result<GradedPiece> {
        if s < 1 {
            return Err(Error::IndexOutOfRange("graded piece degree must be >= 1".into()));
        }
        let gs = self.dcs_term(s);
        let gs1 = self.dcs_term(s + 1);
        let mut lifts = Vec::new();
        let mut span = gs1.clone();
        for v in gs.basis() {
            if !span.contains_vector(v) {
                lifts.push(v.clone());
                span = span
                    .sum(&Subspace::from_vectors(&self.field, self.dim, vec![v.clone()]))
                    .unwrap();
            }
        }
        Ok(GradedPiece { degree: s, lifts, reduction: gs1 })
    }

    pub fn abelianization(&self) -> GradedPiece {
        self.graded_piece(1).unwrap()
    }

    /// Class of [lift(u), lift(v)] in h_{s+t}; independent of the lifts.
    pub fn graded_bracket(&self, s: usize, t: usize, u: &[Scalar], v: &[Scalar]) -> (Vec<Scalar>, GradedPiece) {
        let piece = self.graded_piece(s + t).unwrap();
        let w = self.bracket(u, v);
        (piece.reduce(&w), piece)
    }

    /// Same structure constants over an extension of the rationals.
    /// Only defined when the algebra lives over the base rationals.
    pub fn base_change(&self, field: &Arc<FieldSpec>) -> Result<Arc<LieAlgebra>> {
        if !self.field.is_rationals() {
            return Err(Error::InvalidField(
                "base change is only supported from the rationals".into(),
            ));
        }
        let lift = |x: &Scalar| Scalar::from_rational(field, x.as_rational().unwrap().clone());
        let c = self
            .c
            .iter()
            .map(|p| p.iter().map(|q| q.iter().map(lift).collect()).collect())
            .collect();
        LieAlgebra::new(field.clone(), self.labels.clone(), c, self.gen_exprs.clone())
    }
}

/// The Witt dimension of the degree-s component of the free Lie algebra
/// on m letters.
pub fn witt_number(m: usize, s: usize) -> usize {
    let mobius = |n: usize| -> i64 {
        let mut n = n;
        let mut mu = 1i64;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if n > 1 {
            mu = -mu;
        }
        mu
    };
    let mut total = 0i64;
    for e in 1..=s {
        if s % e == 0 {
            total += mobius(e) * (m as i64).pow((s / e) as u32);
        }
    }
    (total / s as i64) as usize
}

/// The free nilpotent Lie algebra of the given rank and class, realized
/// inside the truncated free associative algebra. Basis vectors are
/// pivot commutator words, ordered by degree; the first `rank` are the
/// generators.
pub fn free_nilpotent(rank: usize, class: usize) -> Result<Arc<LieAlgebra>> {
    free_nilpotent_capped(rank, class, 10_000)
}

pub fn free_nilpotent_capped(rank: usize, class: usize, cap: usize) -> Result<Arc<LieAlgebra>> {
    if rank < 1 || class < 1 {
        return Err(Error::IndexOutOfRange("rank and class must be at least 1".into()));
    }
    let field = FieldSpec::rationals();
    // enumerate words of lengths 1..=class
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..class {
        let mut next = Vec::new();
        for w in &frontier {
            for letter in 0..rank {
                let mut nw = w.clone();
                nw.push(letter);
                index.insert(nw.clone(), words.len());
                words.push(nw.clone());
                next.push(nw);
            }
        }
        frontier = next;
        if words.len() > cap {
            return Err(Error::SizeGuard(format!(
                "ambient word count exceeds cap {cap}"
            )));
        }
    }
    let ambient = words.len();
    let zero_vec = || vec![Scalar::zero(&field); ambient];
    // associative commutator of two ambient vectors, truncating words
    // longer than the class
    let comm = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = zero_vec();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let f = a * b;
                let mut uv = words[i].clone();
                uv.extend(&words[j]);
                if uv.len() <= class {
                    let k = index[&uv];
                    out[k] = &out[k] + &f;
                    let mut vu = words[j].clone();
                    vu.extend(&words[i]);
                    let k2 = index[&vu];
                    out[k2] = &out[k2] - &f;
                }
            }
        }
        out
    };
    // Lie basis, degree by degree
    let mut basis: Vec<Vec<Scalar>> = Vec::new(); // ambient vectors
    let mut degrees: Vec<usize> = Vec::new();
    let mut exprs: Vec<GenExpr> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for letter in 0..rank {
        let mut v = zero_vec();
        v[index[&vec![letter]]] = Scalar::one(&field);
        basis.push(v);
        degrees.push(1);
        exprs.push(GenExpr::Gen(letter));
        labels.push(format!("x{}", letter + 1));
    }
    let mut deg_start = vec![0usize; class + 2];
    deg_start[1] = 0;
    deg_start[2] = rank;
    for s in 2..=class {
        let mut span: Subspace = Subspace::zero(&field, ambient);
        let mut new_items: Vec<(Vec<Scalar>, GenExpr, String)> = Vec::new();
        for letter in 0..rank {
            for w_idx in deg_start[s - 1]..deg_start[s] {
                let cand = comm(&basis[letter], &basis[w_idx]);
                if !span.contains_vector(&cand) {
                    span = span
                        .sum(&Subspace::from_vectors(&field, ambient, vec![cand.clone()]))
                        .unwrap();
                    new_items.push((
                        cand,
                        GenExpr::Bracket(letter, w_idx),
                        format!("[x{},{}]", letter + 1, labels[w_idx]),
                    ));
                }
            }
        }
        debug_assert_eq!(new_items.len(), witt_number(rank, s), "Witt number check");
        for (v, e, l) in new_items {
            basis.push(v);
            degrees.push(s);
            exprs.push(e);
            labels.push(l);
        }
        deg_start[s + 1] = basis.len();
    }
    let dim = basis.len();
    // structure constants: express commutators in the basis
    let mut c = vec![vec![vec![Scalar::zero(&field); dim]; dim]; dim];
    // per-degree solver matrices
    let mut degree_cols: HashMap<usize, (Vec<usize>, Matrix)> = HashMap::new();
    for s in 1..=class {
        let idxs: Vec<usize> = (0..dim).filter(|&i| degrees[i] == s).collect();
        if idxs.is_empty() {
            continue;
        }
        let mut m = Matrix::zero(&field, ambient, idxs.len());
        for (col, &bi) in idxs.iter().enumerate() {
            for r in 0..ambient {
                m.set(r, col, basis[bi][r].clone());
            }
        }
        degree_cols.insert(s, (idxs, m));
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            let s = degrees[i] + degrees[j];
            if s > class {
                continue;
            }
            let w = comm(&basis[i], &basis[j]);
            let (idxs, m) = &degree_cols[&s];
            let x = m
                .solve(&w)
                .ok_or_else(|| Error::InvalidAlgebra("free Lie part not closed under bracket".into()))?;
            for (col, &k) in idxs.iter().enumerate() {
                c[i][j][k] = x[col].clone();
                c[j][i][k] = -&x[col];
            }
        }
    }
    LieAlgebra::new(field, labels, c, Some(exprs))
}

/// Strictly upper triangular matrices as an abstract Lie algebra, with
/// basis e_{ij} (i < j, row-major by superdiagonal-free order) and the
/// first superdiagonal as generators.
pub fn upper_triangular_nilpotent(n: usize) -> Arc<LieAlgebra> {
    let field = FieldSpec::rationals();
    let mut pairs = Vec::new();
    // order: by column distance so that generators come first
    for d in 1..n {
        for i in 0..(n - d) {
            pairs.push((i, i + d));
        }
    }
    let idx_of = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let dim = pairs.len();
    let labels: Vec<String> = pairs.iter().map(|&(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let mut sparse = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if a >= b {
                continue;
            }
            // [e_ij, e_kl] = d_jk e_il - d_li e_kj
            let mut terms: Vec<(usize, Scalar)> = Vec::new();
            if j == k {
                terms.push((idx_of(i, l), Scalar::one(&field)));
            }
            if l == i {
                terms.push((idx_of(k, j), Scalar::from_i64(&field, -1)));
            }
            if !terms.is_empty() {
                sparse.push((a, b, terms));
            }
        }
    }
    let mut exprs = Vec::with_capacity(dim);
    for (t, &(i, j)) in pairs.iter().enumerate() {
        if j == i + 1 {
            exprs.push(GenExpr::Gen(t));
        } else {
            exprs.push(GenExpr::Bracket(idx_of(i, i + 1), idx_of(i + 1, j)));
        }
    }
    LieAlgebra::from_sparse(field, labels, &sparse, Some(exprs)).expect("n_n is a nilpotent Lie algebra")
}

pub fn abelian(m: usize) -> Arc<LieAlgebra> {
    let field = FieldSpec::rationals();
    let labels = (0..m).map(|i| format!("v{}", i + 1)).collect();
    let exprs = (0..m).map(GenExpr::Gen).collect();
    LieAlgebra::from_sparse(field, labels, &[], Some(exprs)).expect("abelian algebra is valid")
}

pub fn rat_scalar(field: &Arc<FieldSpec>, r: Rat) -> Scalar {
    Scalar::from_rational(field, r)
}
