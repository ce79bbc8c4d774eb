//! Gluing of flag representations along an overlap: Chevalley–Eilenberg
//! cohomology H²(g, k) with trivial coefficients, the obstruction class
//! of a compatible pair, and construction of the (n+1)-dimensional glued
//! representation when the obstruction vanishes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::rep::{pair_functional, Representation};

/// Ordered index pairs a < b < m, lexicographic.
pub fn pair_list(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|a| ((a + 1)..m).map(move |b| (a, b))).collect()
}

fn triple_list(m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// An alternating 2-form on g, stored as coordinates on the ordered
/// basis pairs.
#[derive(Debug, Clone)]
pub struct Cochain2 {
    pub coords: Vec<Scalar>,
}

impl Cochain2 {
    /// c(e_a, e_b) with the alternating sign convention.
    pub fn eval_basis(&self, m: usize, a: usize, b: usize) -> Scalar {
        let field = self.coords[0].field().clone();
        if a == b {
            return Scalar::zero(&field);
        }
        let pairs = pair_list(m);
        let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, true) };
        let idx = pairs.iter().position(|&p| p == (lo, hi)).unwrap();
        if flip {
            -&self.coords[idx]
        } else {
            self.coords[idx].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// d1: g^∨ → ∧²g^∨, (d1 λ)(u, v) = −λ([u, v]);
/// d2: ∧²g^∨ → ∧³g^∨, (d2 ω)(u, v, w) = −ω([u,v], w) + ω([u,w], v)
/// − ω([v,w], u). Debug builds assert d2 ∘ d1 = 0.
pub fn ce_differentials(g: &Arc<LieAlgebra>) -> (Matrix, Matrix) {
    let field = g.field();
    let m = g.dim();
    let c = g.structure_constants();
    let pairs = pair_list(m);
    let triples = triple_list(m);
    let mut d1 = Matrix::zero(field, pairs.len(), m);
    for (row, &(a, b)) in pairs.iter().enumerate() {
        for k in 0..m {
            d1.set(row, k, -&c[a][b][k]);
        }
    }
    let pair_idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let mut d2 = Matrix::zero(field, triples.len(), pairs.len());
    {
        // accumulate the coefficient of ω(e_k, e_x) into the pair slot,
        // with sign for orientation
        let add = |d2: &mut Matrix, row: usize, k: usize, x: usize, coeff: &Scalar| {
            if k == x || coeff.is_zero() {
                return;
            }
            let col = pair_idx(k, x);
            let signed = if k < x { coeff.clone() } else { -coeff };
            let cur = d2.get(row, col).clone();
            d2.set(row, col, &cur + &signed);
        };
        for (row, &(a, b, w)) in triples.iter().enumerate() {
            for k in 0..m {
                // −ω([e_a, e_b], e_w)
                let minus = -&c[a][b][k];
                add(&mut d2, row, k, w, &minus);
                // +ω([e_a, e_w], e_b)
                add(&mut d2, row, k, b, &c[a][w][k]);
                // −ω([e_b, e_w], e_a)
                let minus = -&c[b][w][k];
                add(&mut d2, row, k, a, &minus);
            }
        }
    }
    debug_assert!(d2.mul(&d1).is_zero());
    (d1, d2)
}

pub fn h2_dimension(g: &Arc<LieAlgebra>) -> usize {
    let (d1, d2) = ce_differentials(g);
    d2.kernel_basis().dim() - d1.transpose().rank()
}

fn same_algebra(r: &Representation, r2: &Representation) -> bool {
    Arc::ptr_eq(r.algebra(), r2.algebra())
        || (r.algebra().field() == r2.algebra().field()
            && r.algebra().structure_constants() == r2.algebra().structure_constants())
}

/// Whether r and r′ overlap on the nose: the quotient of r by its first
/// line equals the top (n−1)-block of r′, entrywise.
pub fn overlap_compatible(r: &Representation, r2: &Representation) -> Result<bool> {
    if !same_algebra(r, r2) {
        return Err(Error::NotCompatible("different algebras".into()));
    }
    if r.dim() != r2.dim() {
        return Err(Error::NotCompatible("different dimensions".into()));
    }
    if !r.is_standard() || !r2.is_standard() {
        return Err(Error::NotStandard);
    }
    let n = r.dim();
    for i in 0..n.saturating_sub(1) {
        for j in (i + 1)..(n - 1) {
            let a = r.entry_functional(i + 1, j + 1);
            let b = r2.entry_functional(i, j);
            if a != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The alternating form a corner functional of the glued matrix must
/// realize on brackets: c(u, v) = Σ_k λ^r_{0,k}(u) λ^{r′}_{k−1,n−1}(v)
/// − (u ↔ v), summed over the inner index k = 1..n−1.
pub fn gluing_cochain(r: &Representation, r2: &Representation) -> Result<Cochain2> {
    if !overlap_compatible(r, r2)? {
        return Err(Error::NotCompatible("representations do not overlap".into()));
    }
    let g = r.algebra();
    let field = g.field();
    let m = g.dim();
    let n = r.dim();
    let pairs = pair_list(m);
    let mut coords = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let mut acc = Scalar::zero(field);
        for k in 1..n {
            let top_a = r.matrices()[a].get(0, k);
            let top_b = r.matrices()[b].get(0, k);
            let bot_a = r2.matrices()[a].get(k - 1, n - 1);
            let bot_b = r2.matrices()[b].get(k - 1, n - 1);
            acc = &acc + &(&(top_a * bot_b) - &(top_b * bot_a));
        }
        coords.push(acc);
    }
    let cochain = Cochain2 { coords };
    // the class is well defined: the cochain is a cocycle
    debug_assert!({
        let (_, d2) = ce_differentials(g);
        d2.apply(&cochain.coords).iter().all(|x| x.is_zero())
    });
    Ok(cochain)
}

#[derive(Debug, Clone)]
pub struct ObstructionClass {
    /// Lifts of a basis of H²(g, k) to ∧²g^∨ coordinates.
    pub h2_basis: Vec<Vec<Scalar>>,
    /// Coordinates of the cochain's class in that basis.
    pub coords: Vec<Scalar>,
    pub vanishes: bool,
}

/// The class of the gluing cochain in H²(g, k). It vanishes exactly
/// when some λ ∈ g^∨ satisfies λ([u, v]) = c(u, v).
pub fn gluing_obstruction(r: &Representation, r2: &Representation) -> Result<ObstructionClass> {
    let cochain = gluing_cochain(r, r2)?;
    Ok(obstruction_of_cochain(r.algebra(), &cochain))
}

pub fn obstruction_of_cochain(g: &Arc<LieAlgebra>, cochain: &Cochain2) -> ObstructionClass {
    let field = g.field();
    let (d1, d2) = ce_differentials(g);
    let npairs = d1.rows();
    // image of d1 as a subspace of ∧²g^∨
    let im_d1 = Subspace::from_vectors(
        field,
        npairs,
        (0..d1.cols()).map(|j| (0..npairs).map(|i| d1.get(i, j).clone()).collect()).collect(),
    );
    // choose H² basis: kernel vectors of d2 independent modulo im d1
    let mut h2_basis: Vec<Vec<Scalar>> = Vec::new();
    let mut span = im_d1.clone();
    for v in d2.kernel_basis().basis() {
        if !span.contains_vector(v) {
            h2_basis.push(v.clone());
            span = span
                .sum(&Subspace::from_vectors(field, npairs, vec![v.clone()]))
                .unwrap();
        }
    }
    // coordinates: solve cochain = Σ x_i h_i + d1 μ
    let mut cols: Vec<Vec<Scalar>> = h2_basis.clone();
    for b in im_d1.basis() {
        cols.push(b.clone());
    }
    let coords = if cols.is_empty() {
        vec![]
    } else {
        let mut mat = Matrix::zero(field, npairs, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..npairs {
                mat.set(i, j, col[i].clone());
            }
        }
        let x = mat
            .solve(&cochain.coords)
            .expect("a cocycle decomposes along H² basis plus coboundaries");
        x[..h2_basis.len()].to_vec()
    };
    let vanishes = coords.iter().all(|c| c.is_zero());
    // cross-check against the direct solvability of λ([u,v]) = c(u,v)
    debug_assert_eq!(vanishes, d1.solve(&cochain.coords.iter().map(|c| -c).collect::<Vec<_>>()).is_some());
    ObstructionClass { h2_basis, coords, vanishes }
}

#[derive(Debug)]
pub enum GlueOutcome {
    Glued {
        rep: Representation,
        /// The corner functional λ_{0,n} of the glued representation.
        corner: Vec<Scalar>,
        /// Basis of the homogeneous ambiguity {λ : λ([g, g]) = 0}; any
        /// other glue differs from this one by such a functional.
        ext1_basis: Vec<Vec<Scalar>>,
    },
    Obstructed(ObstructionClass),
}

/// Glues a compatible pair into an (n+1)-dimensional representation
/// whose top block is r and bottom block is r′, when the obstruction
/// vanishes.
pub fn glue(r: &Representation, r2: &Representation) -> Result<GlueOutcome> {
    let cochain = gluing_cochain(r, r2)?;
    let g = r.algebra().clone();
    let field = g.field().clone();
    let m = g.dim();
    let n = r.dim();
    let c = g.structure_constants();
    let pairs = pair_list(m);
    // corner equation: Σ_k c[a][b][k] λ_k = cochain(a, b) per pair
    let mut rows = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        rows.push((0..m).map(|k| c[a][b][k].clone()).collect::<Vec<_>>());
    }
    let corner = if pairs.is_empty() {
        Some(vec![Scalar::zero(&field); m])
    } else {
        Matrix::from_rows(&field, rows.clone())?.solve(&cochain.coords)
    };
    let corner = match corner {
        Some(x) => x,
        None => return Ok(GlueOutcome::Obstructed(obstruction_of_cochain(&g, &cochain))),
    };
    let mut matrices = Vec::with_capacity(m);
    for a in 0..m {
        let mut mat = Matrix::zero(&field, n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                mat.set(i, j, r.matrices()[a].get(i, j).clone());
                mat.set(i + 1, j + 1, r2.matrices()[a].get(i, j).clone());
            }
        }
        mat.set(0, n, corner[a].clone());
        matrices.push(mat);
    }
    let glued = Representation::new(g.clone(), matrices)?;
    debug_assert!(truncations_match(&glued, r, r2));
    let ext1 = if pairs.is_empty() {
        Subspace::full(&field, m)
    } else {
        Matrix::from_rows(&field, rows)?.kernel_basis()
    };
    Ok(GlueOutcome::Glued {
        rep: glued,
        corner,
        ext1_basis: ext1.basis().to_vec(),
    })
}

/// Whether s restricts to r on the top n-block and r′ on the bottom.
pub fn truncations_match(s: &Representation, r: &Representation, r2: &Representation) -> bool {
    let n = r.dim();
    s.matrices().iter().zip(r.matrices()).zip(r2.matrices()).all(|((sm, rm), qm)| {
        (0..n).all(|i| {
            (0..n).all(|j| sm.get(i, j) == rm.get(i, j) && sm.get(i + 1, j + 1) == qm.get(i, j))
        })
    })
}

/// Evaluates an alternating form against two algebra elements.
pub fn eval_cochain(g: &Arc<LieAlgebra>, c: &Cochain2, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let field = g.field();
    let m = g.dim();
    let mut acc = Scalar::zero(field);
    for a in 0..m {
        for b in 0..m {
            if u[a].is_zero() || v[b].is_zero() {
                continue;
            }
            acc = &acc + &(&(&u[a] * &v[b]) * &c.eval_basis(m, a, b));
        }
    }
    acc
}

/// Convenience: λ([u, v]) for a functional λ in dual coordinates.
pub fn functional_on_bracket(g: &Arc<LieAlgebra>, lambda: &[Scalar], u: &[Scalar], v: &[Scalar]) -> Scalar {
    pair_functional(lambda, &g.bracket(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldSpec;
    use crate::fixtures;
    use crate::liealg;

    fn two_dim_rep(g: &Arc<LieAlgebra>, lambda: &[i64]) -> Representation {
        let f = g.field().clone();
        let mats = lambda
            .iter()
            .map(|&x| {
                let mut m = Matrix::zero(&f, 2, 2);
                m.set(0, 1, Scalar::from_i64(&f, x));
                m
            })
            .collect();
        Representation::new(g.clone(), mats).unwrap()
    }

    #[test]
    fn h2_dimensions() {
        for m in 2..=4 {
            assert_eq!(h2_dimension(&liealg::abelian(m)), m * (m - 1) / 2);
        }
        assert_eq!(h2_dimension(&fixtures::nn(3)), 2);
    }

    #[test]
    fn d2_after_d1_is_zero() {
        for g in [
            fixtures::nn(3),
            fixtures::nn(4),
            fixtures::filiform4_algebra(),
            fixtures::heisenberg5_algebra(),
            fixtures::free23(),
        ] {
            let (d1, d2) = ce_differentials(&g);
            assert!(d2.mul(&d1).is_zero());
        }
    }

    #[test]
    fn abelian_diagonal_phenomenon() {
        let g = liealg::abelian(2);
        // independent functionals: obstructed
        let r = two_dim_rep(&g, &[1, 0]);
        let r2 = two_dim_rep(&g, &[0, 1]);
        assert!(overlap_compatible(&r, &r2).unwrap());
        let obs = gluing_obstruction(&r, &r2).unwrap();
        assert!(!obs.vanishes);
        assert!(matches!(glue(&r, &r2).unwrap(), GlueOutcome::Obstructed(_)));
        // equal functionals: glue exists, corner forced to zero by the
        // pivot choice
        let r3 = two_dim_rep(&g, &[1, 0]);
        match glue(&r, &r3).unwrap() {
            GlueOutcome::Glued { rep, corner, ext1_basis } => {
                assert_eq!(rep.dim(), 3);
                assert!(corner.iter().all(|c| c.is_zero()));
                // for the abelian algebra every functional kills brackets
                assert_eq!(ext1_basis.len(), 2);
            }
            _ => panic!("expected a glue"),
        }
    }

    #[test]
    fn glue_of_truncations_recovers_a_rep() {
        let s0 = fixtures::natural_rep(4);
        let top = s0.subquotient(0, 3).unwrap();
        let bottom = s0.subquotient(1, 4).unwrap();
        assert!(overlap_compatible(&top, &bottom).unwrap());
        let obs = gluing_obstruction(&top, &bottom).unwrap();
        assert!(obs.vanishes);
        match glue(&top, &bottom).unwrap() {
            GlueOutcome::Glued { rep, .. } => {
                assert!(rep.is_flag());
                assert!(truncations_match(&rep, &top, &bottom));
                // the glued corner may differ from s0's corner only by
                // a functional killing brackets
                let diff: Vec<Scalar> = rep
                    .entry_functional(0, 3)
                    .iter()
                    .zip(s0.entry_functional(0, 3))
                    .map(|(a, b)| a - &b)
                    .collect();
                let g = s0.algebra();
                for a in 0..g.dim() {
                    for b in 0..g.dim() {
                        let br = g.bracket(&g.unit(a), &g.unit(b));
                        assert!(pair_functional(&diff, &br).is_zero());
                    }
                }
            }
            _ => panic!("expected a glue"),
        }
    }

    #[test]
    fn incompatible_pair_detected() {
        let g = fixtures::nn(3);
        let nat = fixtures::natural_rep(3);
        // a 3-dim rep with a different overlap entry
        let f = g.field().clone();
        let m1 = fixtures::superdiagonal_matrix(&f, &[Scalar::one(&f), Scalar::one(&f)]);
        let m2 = fixtures::superdiagonal_matrix(&f, &[Scalar::zero(&f), Scalar::zero(&f)]);
        let other = Representation::from_generators(g, vec![m1, m2]).unwrap();
        assert!(!overlap_compatible(&nat, &other).unwrap());
        assert!(matches!(gluing_cochain(&nat, &other), Err(Error::NotCompatible(_))));
    }

    #[test]
    fn cochain_eval_antisymmetric() {
        let g = liealg::abelian(3);
        let f = FieldSpec::rationals();
        let c = Cochain2 {
            coords: vec![
                Scalar::from_i64(&f, 1),
                Scalar::from_i64(&f, 2),
                Scalar::from_i64(&f, 3),
            ],
        };
        let u = vec![Scalar::from_i64(&f, 1), Scalar::from_i64(&f, 2), Scalar::zero(&f)];
        let v = vec![Scalar::zero(&f), Scalar::from_i64(&f, 1), Scalar::from_i64(&f, -1)];
        let uv = eval_cochain(&g, &c, &u, &v);
        let vu = eval_cochain(&g, &c, &v, &u);
        assert_eq!(uv, -&vu);
    }
}
