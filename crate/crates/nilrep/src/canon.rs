//! Normal forms for wide representations: a slice determined by the
//! constellation, reduction by unipotent conjugation processed along
//! increasing superdiagonal distance, torus normalization, and the
//! resulting isomorphism test.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::rep::{normalize_projective, Representation};

/// Slice data for a fixed constellation: for each consecutive index
/// i = 1..n−2, a codimension-2 complement E_i of the span of the first
/// and i-th normalized consecutive functionals.
#[derive(Debug, Clone)]
pub struct Slice {
    /// Normalized representatives of the consecutive entry functionals,
    /// as elements of the dual of the algebra.
    pub consecutive: Vec<Vec<Scalar>>,
    /// e_basis[i] is E_i for i = 1..n−2 (index 0 unused, kept empty).
    pub e_basis: Vec<Subspace>,
}

/// Builds the slice from the normalized consecutive functionals of a
/// wide representation: E_i is spanned by the coordinate vectors away
/// from the pivots of the echelon form of (λ_{0,1}, λ_{i,i+1}).
pub fn choose_slice(g: &Arc<LieAlgebra>, consecutive: &[Vec<Scalar>]) -> Result<Slice> {
    let field = g.field();
    let m = g.dim();
    let n1 = consecutive.len();
    for a in 0..n1 {
        for b in (a + 1)..n1 {
            if consecutive[a] == consecutive[b] {
                return Err(Error::DegenerateConstellation(a, b));
            }
        }
    }
    let mut e_basis = vec![Subspace::zero(field, m); n1];
    for i in 1..n1 {
        let rows = vec![consecutive[0].clone(), consecutive[i].clone()];
        let (_, rank, pivots) = Matrix::from_rows(field, rows)?.rref();
        if rank != 2 {
            return Err(Error::DegenerateConstellation(0, i));
        }
        let vectors: Vec<Vec<Scalar>> = (0..m)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut v = vec![Scalar::zero(field); m];
                v[c] = Scalar::one(field);
                v
            })
            .collect();
        let e = Subspace::from_vectors(field, m, vectors);
        // the pivot complement really is a complement
        debug_assert_eq!(direct_sum_rank(field, &consecutive[0], &consecutive[i], &e), m);
        e_basis[i] = e;
    }
    Ok(Slice { consecutive: consecutive.to_vec(), e_basis })
}

fn direct_sum_rank(
    field: &Arc<crate::exactnum::FieldSpec>,
    a: &[Scalar],
    b: &[Scalar],
    e: &Subspace,
) -> usize {
    let mut rows = vec![a.to_vec(), b.to_vec()];
    rows.extend(e.basis().to_vec());
    Matrix::from_rows(field, rows).unwrap().rank()
}

impl Slice {
    /// Whether the functional lies in the slice component assigned to
    /// the entry (i, j), 0-based with j − i ≥ 2.
    pub fn contains_entry(&self, i: usize, j: usize, functional: &[Scalar]) -> bool {
        let field = self.consecutive[0][0].field().clone();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        if i == 0 {
            rows.extend(self.e_basis[j - 1].basis().to_vec());
        } else {
            rows.push(self.consecutive[0].clone());
            rows.extend(self.e_basis[i].basis().to_vec());
        }
        Subspace::from_vectors(&field, functional.len(), rows).contains_vector(functional)
    }
}

/// Entry index pairs with distance at least two, ordered by distance
/// and then by row.
fn reduction_order(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d in 2..n {
        for i in 0..(n - d) {
            out.push((i, i + d));
        }
    }
    out
}

/// Conjugates by the given unipotent (or any invertible) matrix: the
/// matrix-level action on entry functionals.
pub fn conjugation_action(u: &Matrix, r: &Representation) -> Result<Representation> {
    r.conjugate(u)
}

/// The unique unipotent element (modulo the central one-parameter
/// subgroup) moving every entry of a wide standard representation into
/// the slice. Returns the reducing matrix and the reduced
/// representation.
pub fn u_reduce(r: &Representation, slice: &Slice) -> Result<(Matrix, Representation)> {
    if !r.is_standard() {
        return Err(Error::NotStandard);
    }
    if !r.is_wide() {
        return Err(Error::NotWide);
    }
    let field = r.algebra().field().clone();
    let m = r.algebra().dim();
    let n = r.dim();
    let mut u = Matrix::identity(&field, n);
    for (i, j) in reduction_order(n) {
        let conj = r.conjugate(&u)?;
        let mu = conj.entry_functional(i, j);
        // decompose μ in the direct sum spanned by λ_{0,1}, the
        // relevant consecutive functional, and the matching E component
        let anchor = if i == 0 { j - 1 } else { i };
        let mut cols: Vec<Vec<Scalar>> = vec![slice.consecutive[0].clone(), slice.consecutive[anchor].clone()];
        cols.extend(slice.e_basis[anchor].basis().to_vec());
        let mut mat = Matrix::zero(&field, m, cols.len());
        for (col, v) in cols.iter().enumerate() {
            for row in 0..m {
                mat.set(row, col, v[row].clone());
            }
        }
        let x = mat.solve(&mu).ok_or(Error::SingularMatrix)?;
        if i == 0 {
            // remove the λ_{0,1} component via u_{1,j} and the
            // λ_{j−1,j} component via u_{0,j−1}
            let alpha = x[0].clone();
            let beta = x[1].clone();
            debug_assert!(u.get(1, j).is_zero() || j == 2);
            set_add(&mut u, 1, j, &alpha);
            set_add(&mut u, 0, j - 1, &beta.neg());
        } else {
            // remove the λ_{i,i+1} component via u_{i+1,j}
            let alpha = x[1].clone();
            set_add(&mut u, i + 1, j, &alpha);
        }
        // the processed entry now lies in its slice component
        debug_assert!({
            let after = r.conjugate(&u)?.entry_functional(i, j);
            slice.contains_entry(i, j, &after)
        });
    }
    // the central coordinate acts trivially and is reported as zero
    debug_assert!(u.get(0, n - 1).is_zero());
    let reduced = r.conjugate(&u)?;
    Ok((u, reduced))
}

fn set_add(u: &mut Matrix, i: usize, j: usize, v: &Scalar) {
    let cur = u.get(i, j).clone();
    u.set(i, j, &cur + v);
}

/// The unique diagonal rescaling (modulo global scalars) making the
/// first nonzero coordinate of every consecutive functional equal to
/// one. Returns the diagonal entries and the rescaled representation.
pub fn torus_normalize(r: &Representation) -> Result<(Vec<Scalar>, Representation)> {
    if !r.is_standard() {
        return Err(Error::NotStandard);
    }
    let field = r.algebra().field().clone();
    let n = r.dim();
    let mut c = Vec::with_capacity(n - 1);
    for i in 0..(n - 1) {
        let lam = r.entry_functional(i, i + 1);
        let lead = lam
            .iter()
            .find(|x| !x.is_zero())
            .ok_or(Error::DegenerateConstellation(i, i + 1))?;
        c.push(lead.clone());
    }
    let mut t = vec![Scalar::one(&field); n];
    for i in (0..(n - 1)).rev() {
        t[i] = t[i + 1].checked_div(&c[i])?;
    }
    let mut d = Matrix::zero(&field, n, n);
    for i in 0..n {
        d.set(i, i, t[i].clone());
    }
    let normalized = r.conjugate(&d)?;
    Ok((t, normalized))
}

#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub slice: Slice,
    /// The reducing unipotent element, with the central coordinate
    /// reported as zero.
    pub u: Matrix,
    /// The diagonal normalization, up to global scalars.
    pub t: Vec<Scalar>,
    /// The fully normalized representative.
    pub rep: Representation,
}

impl CanonicalForm {
    pub fn same_entries(&self, other: &CanonicalForm) -> bool {
        self.rep.dim() == other.rep.dim()
            && self
                .rep
                .matrices()
                .iter()
                .zip(other.rep.matrices())
                .all(|(a, b)| a.sub(b).is_zero())
    }
}

/// Slice reduction composed with torus normalization; the result is a
/// complete conjugation invariant of a wide representation.
pub fn canonical_form(r: &Representation) -> Result<CanonicalForm> {
    let std = if r.is_standard() { r.clone() } else { r.standardize()?.0 };
    if !std.is_wide() {
        return Err(Error::NotWide);
    }
    // slice from normalized consecutive functionals: a conjugation
    // invariant, so isomorphic representations receive the same slice
    let n = std.dim();
    let mut consecutive = Vec::with_capacity(n - 1);
    for i in 0..(n - 1) {
        let lam = std.entry_functional(i, i + 1);
        consecutive.push(normalize_projective(&lam).ok_or(Error::DegenerateConstellation(i, i + 1))?);
    }
    // normalize the torus first so the consecutive entries match their
    // slice representatives exactly, then reduce
    let (t, scaled) = torus_normalize(&std)?;
    let slice = choose_slice(std.algebra(), &consecutive)?;
    let (u, reduced) = u_reduce(&scaled, &slice)?;
    Ok(CanonicalForm { slice, u, t, rep: reduced })
}

/// Exact isomorphism test for wide representations of the same algebra
/// and dimension: equal constellations and equal canonical forms.
pub fn iso_test_wide(r: &Representation, r2: &Representation) -> Result<bool> {
    if r.dim() != r2.dim() {
        return Err(Error::DimensionMismatch("representations of different dimensions".into()));
    }
    let a = canonical_form(r)?;
    let b = canonical_form(r2)?;
    if a.slice.consecutive != b.slice.consecutive {
        return Ok(false);
    }
    Ok(a.same_entries(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldSpec;
    use crate::fixtures;
    use crate::rep::Representation;

    fn unipotent(field: &Arc<FieldSpec>, n: usize, entries: &[(usize, usize, i64)]) -> Matrix {
        let mut u = Matrix::identity(field, n);
        for &(i, j, v) in entries {
            u.set(i, j, Scalar::from_i64(field, v));
        }
        u
    }

    #[test]
    fn slice_for_natural_rep() {
        let r = fixtures::natural_rep(3);
        let lam: Vec<Vec<Scalar>> = (0..2).map(|i| r.entry_functional(i, i + 1)).collect();
        let slice = choose_slice(r.algebra(), &lam).unwrap();
        // complement of <e12^∨, e23^∨> inside a 3-dim dual: <e13^∨>
        assert_eq!(slice.e_basis[1].dim(), 1);
        let f = r.algebra().field();
        assert!(slice.e_basis[1].contains_vector(&[
            Scalar::zero(f),
            Scalar::zero(f),
            Scalar::one(f)
        ]));
    }

    #[test]
    fn proportional_points_rejected() {
        let r = fixtures::natural_rep(3);
        let lam = r.entry_functional(0, 1);
        let err = choose_slice(r.algebra(), &[lam.clone(), lam]).unwrap_err();
        assert!(matches!(err, Error::DegenerateConstellation(0, 1)));
    }

    #[test]
    fn already_reduced_rep_gets_identity() {
        let r = fixtures::natural_rep(3);
        let cf = canonical_form(&r).unwrap();
        assert_eq!(cf.u, Matrix::identity(r.algebra().field(), 3));
        assert!(cf.rep.matrices().iter().zip(r.matrices()).all(|(a, b)| a.sub(b).is_zero()));
    }

    #[test]
    fn conjugation_fixes_consecutive_entries() {
        let r = fixtures::natural_rep(4);
        let f = r.algebra().field().clone();
        let u = unipotent(&f, 4, &[(0, 1, 3), (1, 2, -2), (2, 3, 5), (0, 2, 7)]);
        let conj = conjugation_action(&u, &r).unwrap();
        for i in 0..3 {
            assert_eq!(conj.entry_functional(i, i + 1), r.entry_functional(i, i + 1));
        }
    }

    #[test]
    fn three_dim_action_formula() {
        // entry (0,2) transforms as λ_{0,2} − b·λ_{0,1} + a·λ_{1,2}
        // for u with u_{0,1} = a, u_{1,2} = b
        let r = fixtures::natural_rep(3);
        let f = r.algebra().field().clone();
        let (a, b) = (3i64, -4i64);
        let u = unipotent(&f, 3, &[(0, 1, a), (1, 2, b)]);
        let conj = conjugation_action(&u, &r).unwrap();
        let l01 = r.entry_functional(0, 1);
        let l12 = r.entry_functional(1, 2);
        let l02 = r.entry_functional(0, 2);
        let expect: Vec<Scalar> = (0..3)
            .map(|k| {
                let sa = Scalar::from_i64(&f, a);
                let sb = Scalar::from_i64(&f, b);
                &(&l02[k] - &(&sb * &l01[k])) + &(&sa * &l12[k])
            })
            .collect();
        assert_eq!(conj.entry_functional(0, 2), expect);
    }

    #[test]
    fn reduction_is_orbit_invariant() {
        let r = fixtures::natural_rep(4);
        let f = r.algebra().field().clone();
        let cf = canonical_form(&r).unwrap();
        for entries in [
            vec![(0usize, 1usize, 2i64), (1, 2, -1), (2, 3, 4)],
            vec![(0, 2, 5), (1, 3, -3)],
            vec![(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        ] {
            let u = unipotent(&f, 4, &entries);
            let conj = r.conjugate(&u).unwrap();
            let cf2 = canonical_form(&conj).unwrap();
            assert!(cf.same_entries(&cf2));
        }
        // torus conjugation too
        let mut d = Matrix::zero(&f, 4, 4);
        for (i, v) in [2i64, 3, -1, 5].iter().enumerate() {
            d.set(i, i, Scalar::from_i64(&f, *v));
        }
        let conj = r.conjugate(&d).unwrap();
        assert!(cf.same_entries(&canonical_form(&conj).unwrap()));
    }

    #[test]
    fn iso_test_separates_distinct_corners() {
        // wide 4-dim reps of the free class-3 algebra with equal
        // constellations but different slice coordinates
        let g = fixtures::free23();
        let f = g.field().clone();
        let mk = |x02: i64| {
            let mut mx = fixtures::superdiagonal_matrix(&f, &[Scalar::one(&f), Scalar::zero(&f), Scalar::one(&f)]);
            mx.set(0, 2, Scalar::from_i64(&f, x02));
            let my = fixtures::superdiagonal_matrix(&f, &[Scalar::zero(&f), Scalar::one(&f), Scalar::from_i64(&f, 2)]);
            Representation::from_generators(g.clone(), vec![mx, my]).unwrap()
        };
        let r1 = mk(0);
        let r2 = mk(1);
        assert!(r1.is_wide() && r2.is_wide());
        assert_eq!(r1.constellation().unwrap(), r2.constellation().unwrap());
        assert!(iso_test_wide(&r1, &r1.conjugate(&unipotent(&f, 4, &[(1, 3, 9)])).unwrap()).unwrap());
        assert!(!iso_test_wide(&r1, &r2).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let g = fixtures::free23();
        let f = g.field().clone();
        let mx = {
            let mut m = fixtures::superdiagonal_matrix(&f, &[Scalar::one(&f), Scalar::zero(&f), Scalar::from_i64(&f, 3)]);
            m.set(0, 2, Scalar::from_i64(&f, 2));
            m
        };
        let my = fixtures::superdiagonal_matrix(&f, &[Scalar::from_i64(&f, 2), Scalar::one(&f), Scalar::one(&f)]);
        let r = Representation::from_generators(g, vec![mx, my]).unwrap();
        let cf = canonical_form(&r).unwrap();
        let cf2 = canonical_form(&cf.rep).unwrap();
        assert!(cf.same_entries(&cf2));
        assert_eq!(cf2.u, Matrix::identity(&f, 4));
        assert!(cf2.t.iter().all(|x| x.is_one()));
    }

    #[test]
    fn brute_force_orbit_search_agrees_at_n3() {
        // three commuting generators acting on k^3: the corner
        // coordinate along the third generator is a modulus, so the
        // isomorphism test must separate; verdicts are cross-checked
        // against an exhaustive search over small Borel elements
        let g = crate::liealg::free_nilpotent(3, 2).unwrap();
        let f = g.field().clone();
        let mk = |w02: i64| {
            let x = fixtures::superdiagonal_matrix(&f, &[Scalar::one(&f), Scalar::zero(&f)]);
            let y = fixtures::superdiagonal_matrix(&f, &[Scalar::zero(&f), Scalar::one(&f)]);
            let mut w = Matrix::zero(&f, 3, 3);
            w.set(0, 2, Scalar::from_i64(&f, w02));
            Representation::from_generators(g.clone(), vec![x, y, w]).unwrap()
        };
        let r0 = mk(0);
        let r1 = mk(1);
        let u_small = unipotent(&f, 3, &[(0, 1, 1), (1, 2, -2), (0, 2, 1)]);
        let r0_conj = r0.conjugate(&u_small).unwrap();

        let brute_force_iso = |a: &Representation, b: &Representation| -> bool {
            let vals: Vec<Scalar> = [-2i64, -1, 0, 1, 2].iter().map(|&v| Scalar::from_i64(&f, v)).collect();
            let torus: Vec<Scalar> = [1i64, -1, 2, -2]
                .iter()
                .map(|&v| Scalar::from_i64(&f, v))
                .chain([Scalar::from_frac(&f, 1, 2)])
                .collect();
            for t0 in &torus {
                for t1 in &torus {
                    for u01 in &vals {
                        for u12 in &vals {
                            for u02 in &vals {
                                let mut m = Matrix::identity(&f, 3);
                                m.set(0, 0, t0.clone());
                                m.set(1, 1, t1.clone());
                                m.set(0, 1, &*t0 * u01);
                                m.set(1, 2, &*t1 * u12);
                                m.set(0, 2, &*t0 * u02);
                                let c = a.conjugate(&m).unwrap();
                                if c.matrices().iter().zip(b.matrices()).all(|(p, q)| p.sub(q).is_zero()) {
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
            false
        };

        assert!(iso_test_wide(&r0, &r0_conj).unwrap());
        assert!(brute_force_iso(&r0, &r0_conj));
        assert!(!iso_test_wide(&r0, &r1).unwrap());
        assert!(!brute_force_iso(&r0, &r1));
        // the slice coordinate itself separates: corner entries differ
        let c0 = canonical_form(&r0).unwrap().rep.entry_functional(0, 2);
        let c1 = canonical_form(&r1).unwrap().rep.entry_functional(0, 2);
        assert_ne!(c0, c1);
    }

    #[test]
    fn different_constellations_never_isomorphic() {
        let g = fixtures::free22();
        let f = g.field().clone();
        let mk = |p: (i64, i64), q: (i64, i64)| {
            let mx = fixtures::superdiagonal_matrix(&f, &[Scalar::from_i64(&f, p.0), Scalar::from_i64(&f, q.0)]);
            let my = fixtures::superdiagonal_matrix(&f, &[Scalar::from_i64(&f, p.1), Scalar::from_i64(&f, q.1)]);
            Representation::from_generators(g.clone(), vec![mx, my]).unwrap()
        };
        let r1 = mk((1, 0), (0, 1));
        let r2 = mk((1, 0), (1, 1));
        assert!(!iso_test_wide(&r1, &r2).unwrap());
    }
}
