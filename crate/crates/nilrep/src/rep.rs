//! Representations of nilpotent Lie algebras: the canonical filtration,
//! flag and wide predicates, standard coordinates, matrix-entry
//! functionals, canonical entries on graded pieces, subquotients, and
//! constellations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::liealg::{GenExpr, LieAlgebra};
use crate::linalg::{Matrix, Subspace};

/// A representation given by one matrix per basis vector of the algebra.
#[derive(Debug, Clone)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    dim: usize,
    matrices: Vec<Matrix>,
}

/// Checks bracket preservation: rho([e_i, e_j]) = [rho(e_i), rho(e_j)]
/// on all basis pairs. Returns the offending pair on failure.
pub fn check_representation(algebra: &Arc<LieAlgebra>, matrices: &[Matrix]) -> Result<()> {
    let m = algebra.dim();
    if matrices.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "expected {m} matrices, got {}",
            matrices.len()
        )));
    }
    let n = matrices.first().map(|x| x.rows()).unwrap_or(0);
    for mat in matrices {
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch("matrices must be square of equal size".into()));
        }
        if mat.field() != algebra.field() {
            return Err(Error::FieldMismatch);
        }
    }
    let c = algebra.structure_constants();
    for i in 0..m {
        for j in (i + 1)..m {
            let lhs = matrices[i].commutator(&matrices[j]);
            let mut rhs = Matrix::zero(algebra.field(), n, n);
            for k in 0..m {
                if !c[i][j][k].is_zero() {
                    rhs = rhs.add(&matrices[k].scale(&c[i][j][k]));
                }
            }
            if lhs.sub(&rhs).is_zero() == false {
                return Err(Error::NotARepresentation(format!(
                    "bracket not preserved on basis pair ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

impl Representation {
    pub fn new(algebra: Arc<LieAlgebra>, matrices: Vec<Matrix>) -> Result<Self> {
        check_representation(&algebra, &matrices)?;
        let dim = matrices.first().map(|m| m.rows()).unwrap_or(0);
        Ok(Representation { algebra, dim, matrices })
    }

    /// Builds a representation from matrices for the generators alone,
    /// using the algebra's generator presentation to fill in the rest,
    /// then verifies bracket preservation in full.
    pub fn from_generators(algebra: Arc<LieAlgebra>, gen_matrices: Vec<Matrix>) -> Result<Self> {
        let exprs = algebra.gen_exprs().ok_or(Error::NoGenerators)?;
        let n_gens = algebra.generator_count().unwrap();
        if gen_matrices.len() != n_gens {
            return Err(Error::DimensionMismatch(format!(
                "expected {n_gens} generator matrices, got {}",
                gen_matrices.len()
            )));
        }
        let mut matrices: Vec<Matrix> = Vec::with_capacity(algebra.dim());
        for expr in exprs {
            let mat = match expr {
                GenExpr::Gen(t) => gen_matrices[*t].clone(),
                GenExpr::Bracket(a, b) => matrices[*a].commutator(&matrices[*b]),
            };
            matrices.push(mat);
        }
        Representation::new(algebra, matrices)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// rho(v) for v in algebra coordinates.
    pub fn apply(&self, v: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.algebra.field(), self.dim, self.dim);
        for (i, coeff) in v.iter().enumerate() {
            if !coeff.is_zero() {
                out = out.add(&self.matrices[i].scale(coeff));
            }
        }
        out
    }

    /// Common kernel of all rho(e_i).
    pub fn zero_eigenspace(&self) -> Subspace {
        if self.algebra.dim() == 0 {
            return Subspace::full(self.algebra.field(), self.dim);
        }
        let refs: Vec<&Matrix> = self.matrices.iter().collect();
        Matrix::vstack(&refs).kernel_basis()
    }

    /// The increasing chain 0 = Fil^0 ⊆ Fil^1 ⊆ ..., where Fil^{r+1} is
    /// the joint preimage of Fil^r under all rho(e_i). Ends at the first
    /// stable term.
    pub fn canonical_filtration(&self) -> Vec<Subspace> {
        let field = self.algebra.field();
        let mut chain = vec![Subspace::zero(field, self.dim)];
        loop {
            let last = chain.last().unwrap();
            let mut next = Subspace::full(field, self.dim);
            for m in &self.matrices {
                next = next.intersection(&last.preimage(m).unwrap()).unwrap();
            }
            if &next == last {
                break;
            }
            chain.push(next);
        }
        chain
    }

    /// Whether the canonical filtration exhausts the whole space.
    pub fn is_nilpotent_rep(&self) -> bool {
        self.canonical_filtration().last().unwrap().is_full()
    }

    /// Whether the canonical filtration is a complete flag
    /// (dimensions 0, 1, ..., n).
    pub fn is_flag(&self) -> bool {
        let chain = self.canonical_filtration();
        chain.len() == self.dim + 1 && chain.iter().enumerate().all(|(r, s)| s.dim() == r)
    }

    /// Whether the matrices are strictly upper triangular and the
    /// canonical filtration is the standard flag span(e_1..e_r).
    pub fn is_standard(&self) -> bool {
        if !self.matrices.iter().all(|m| m.is_strictly_upper_triangular()) {
            return false;
        }
        let field = self.algebra.field();
        let chain = self.canonical_filtration();
        if chain.len() != self.dim + 1 {
            return false;
        }
        chain.iter().enumerate().all(|(r, s)| {
            let std_flag = Subspace::from_vectors(
                field,
                self.dim,
                (0..r)
                    .map(|i| {
                        let mut v = vec![Scalar::zero(field); self.dim];
                        v[i] = Scalar::one(field);
                        v
                    })
                    .collect(),
            );
            s == &std_flag
        })
    }

    /// Conjugates the representation: v ↦ g · rho(v) · g⁻¹.
    pub fn conjugate(&self, g: &Matrix) -> Result<Representation> {
        let ginv = g.inverse()?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| g.mul(m).mul(&ginv))
            .collect();
        Representation::new(self.algebra.clone(), matrices)
    }

    /// Puts a flag representation in standard coordinates: returns the
    /// standardized representation together with the base-change matrix
    /// g with standardized = g · rho · g⁻¹.
    pub fn standardize(&self) -> Result<(Representation, Matrix)> {
        if !self.is_flag() {
            return Err(Error::NotFlag);
        }
        let field = self.algebra.field();
        let chain = self.canonical_filtration();
        // adapted basis: p_r spans Fil^{r+1} over Fil^r
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim);
        for r in 0..self.dim {
            let prev = &chain[r];
            let v = chain[r + 1]
                .basis()
                .iter()
                .find(|v| !prev.contains_vector(v))
                .expect("flag step must add a vector")
                .clone();
            cols.push(v);
        }
        let mut p = Matrix::zero(field, self.dim, self.dim);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..self.dim {
                p.set(i, j, col[i].clone());
            }
        }
        let g = p.inverse()?;
        let std = self.conjugate(&g)?;
        debug_assert!(std.is_standard());
        Ok((std, g))
    }

    /// The matrix-entry functional λ_{i,j} ∈ g^∨ (0-based, i < j),
    /// v ↦ rho(v)_{i,j}, in coordinates dual to the algebra basis.
    pub fn entry_functional(&self, i: usize, j: usize) -> Vec<Scalar> {
        assert!(i < j && j < self.dim);
        self.matrices.iter().map(|m| m.get(i, j).clone()).collect()
    }

    /// Restriction of the block rows/columns a..b (0-based, exclusive
    /// upper end) of a standard representation. The first m rows give
    /// the subrepresentation, trailing blocks give quotients.
    pub fn subquotient(&self, a: usize, b: usize) -> Result<Representation> {
        if !self.is_standard() {
            return Err(Error::NotStandard);
        }
        if a >= b || b > self.dim {
            return Err(Error::IndexOutOfRange(format!("block {a}..{b} of size {}", self.dim)));
        }
        let field = self.algebra.field();
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let mut out = Matrix::zero(field, b - a, b - a);
                for r in a..b {
                    for c in a..b {
                        out.set(r - a, c - a, m.get(r, c).clone());
                    }
                }
                out
            })
            .collect();
        Representation::new(self.algebra.clone(), matrices)
    }

    /// Canonical entry κ_{i,j} (0-based, i < j) of a standard flag
    /// representation: the induced functional on the graded piece
    /// h_{j-i}, in coordinates on that piece's lift basis.
    pub fn canonical_entry(&self, i: usize, j: usize) -> Result<Vec<Scalar>> {
        if !self.is_standard() {
            return Err(Error::NotStandard);
        }
        let s = j - i;
        let lambda = self.entry_functional(i, j);
        let piece = self.algebra.graded_piece(s)?;
        let pair = |v: &[Scalar]| -> Scalar {
            let mut acc = Scalar::zero(self.algebra.field());
            for (k, c) in v.iter().enumerate() {
                acc = &acc + &(c * &lambda[k]);
            }
            acc
        };
        // λ_{i,j} must kill g^(s+1), so the value on a class is
        // independent of the lift
        debug_assert!(piece.reduction.basis().iter().all(|v| pair(v).is_zero()));
        Ok(piece.lifts.iter().map(|v| pair(v)).collect())
    }

    /// The tuple of consecutive canonical entries κ_{i,i+1} as
    /// normalized projective points of P(h_1) = P(g^ab). Fails if some
    /// point is zero (then the representation is not flag-like in the
    /// needed sense).
    pub fn constellation(&self) -> Result<Vec<Vec<Scalar>>> {
        let mut points = Vec::with_capacity(self.dim.saturating_sub(1));
        for i in 0..self.dim.saturating_sub(1) {
            let kappa = self.canonical_entry(i, i + 1)?;
            let p = normalize_projective(&kappa).ok_or(Error::DegenerateConstellation(i, i + 1))?;
            points.push(p);
        }
        Ok(points)
    }

    /// A wide representation: flag, and its constellation consists of
    /// pairwise distinct projective points.
    pub fn is_wide(&self) -> bool {
        let std = if self.is_standard() {
            self.clone()
        } else {
            match self.standardize() {
                Ok((s, _)) => s,
                Err(_) => return false,
            }
        };
        let points = match std.constellation() {
            Ok(p) => p,
            Err(_) => return false,
        };
        for a in 0..points.len() {
            for b in (a + 1)..points.len() {
                if points[a] == points[b] {
                    return false;
                }
            }
        }
        true
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is 1; `None`
/// for the zero vector.
pub fn normalize_projective(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = lead.inverse().ok()?;
    Some(v.iter().map(|c| c * &inv).collect())
}

/// Whether two vectors span the same line (both nonzero and
/// proportional).
pub fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    match (normalize_projective(u), normalize_projective(v)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// Pairs a functional in dual coordinates with a vector.
pub fn pair_functional(lambda: &[Scalar], v: &[Scalar]) -> Scalar {
    let field = lambda
        .first()
        .map(|s| s.field().clone())
        .expect("nonempty functional");
    let mut acc = Scalar::zero(&field);
    for (l, x) in lambda.iter().zip(v) {
        acc = &acc + &(l * x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldSpec;
    use crate::fixtures;

    #[test]
    fn natural_n3_rep_is_wide_flag() {
        let r = fixtures::natural_rep(3);
        assert!(r.is_nilpotent_rep());
        assert!(r.is_flag());
        assert!(r.is_standard());
        assert!(r.is_wide());
        let dims: Vec<usize> = r.canonical_filtration().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![0, 1, 2, 3]);
        assert_eq!(r.zero_eigenspace().dim(), 1);
    }

    #[test]
    fn natural_rep_entry_functionals() {
        let r = fixtures::natural_rep(3);
        // λ_{0,1} = e12^∨: picks out the e12 coordinate
        let l = r.entry_functional(0, 1);
        let f = FieldSpec::rationals();
        assert_eq!(l, vec![Scalar::one(&f), Scalar::zero(&f), Scalar::zero(&f)]);
        // κ_{0,2} on h_2 = <e13> is the identity functional
        let k = r.canonical_entry(0, 2).unwrap();
        assert_eq!(k, vec![Scalar::one(&f)]);
    }

    #[test]
    fn conjugate_and_standardize_roundtrip() {
        let r = fixtures::natural_rep(4);
        let f = FieldSpec::rationals();
        let g = Matrix::from_i64(
            &f,
            &[&[1, 2, 0, -1], &[0, 1, 3, 0], &[2, 0, 1, 1], &[0, 0, 5, 1]],
        );
        assert!(g.inverse().is_ok());
        let conj = r.conjugate(&g).unwrap();
        assert!(conj.is_flag());
        let (std, _) = conj.standardize().unwrap();
        assert!(std.is_standard());
        assert_eq!(std.constellation().unwrap(), r.constellation().unwrap());
    }

    #[test]
    fn zero_rep_not_flag() {
        let g = fixtures::nn(3);
        let f = g.field().clone();
        let mats = vec![Matrix::zero(&f, 2, 2); 3];
        let r = Representation::new(g, mats).unwrap();
        assert!(r.is_nilpotent_rep());
        assert!(!r.is_flag());
        assert!(r.zero_eigenspace().is_full());
    }

    #[test]
    fn non_representation_rejected() {
        let g = fixtures::nn(3);
        let f = g.field().clone();
        // e12, e23 mapped to non-commuting matrices whose bracket
        // doesn't match e13's image
        let m1 = Matrix::from_i64(&f, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let m2 = Matrix::from_i64(&f, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let bad = Matrix::zero(&f, 3, 3);
        assert!(matches!(
            Representation::new(g, vec![m1, m2, bad]),
            Err(Error::NotARepresentation(_))
        ));
    }

    #[test]
    fn subquotients_of_natural_rep() {
        let r = fixtures::natural_rep(4);
        let sub = r.subquotient(0, 3).unwrap();
        assert!(sub.is_wide());
        let quot = r.subquotient(1, 4).unwrap();
        assert!(quot.is_wide());
        // constellations restrict accordingly
        let full = r.constellation().unwrap();
        assert_eq!(sub.constellation().unwrap(), full[0..2].to_vec());
        assert_eq!(quot.constellation().unwrap(), full[1..3].to_vec());
    }

    #[test]
    fn repeated_constellation_point_not_wide() {
        // x, y ↦ E12, E23 + E34 gives κ points [x], [y], [y]
        let r = fixtures::repeated_point_rep();
        assert!(r.is_flag());
        assert!(!r.is_wide());
        let std = r.constellation().unwrap();
        assert_eq!(std[1], std[2]);
    }

    #[test]
    fn proportionality_helpers() {
        let f = FieldSpec::rationals();
        let u = vec![Scalar::from_i64(&f, 2), Scalar::from_i64(&f, -4)];
        let v = vec![Scalar::from_i64(&f, -1), Scalar::from_i64(&f, 2)];
        let w = vec![Scalar::from_i64(&f, 1), Scalar::from_i64(&f, 1)];
        assert!(proportional(&u, &v));
        assert!(!proportional(&u, &w));
        assert!(normalize_projective(&[Scalar::zero(&f)]).is_none());
    }
}
