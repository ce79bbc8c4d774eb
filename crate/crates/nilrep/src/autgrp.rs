//! Automorphisms of flag representations: the nilpotent infinitesimal
//! automorphism algebra n(r), the automorphism group dimension, exact
//! exponential/logarithm for (uni/nil)potent matrices, and the
//! fixed-space dictionary.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::linalg::{Matrix, Subspace};
use crate::rep::Representation;

/// The Lie algebra n(r) of strictly upper triangular matrices commuting
/// with the image of a standard flag representation.
#[derive(Debug, Clone)]
pub struct InfAut {
    pub basis: Vec<Matrix>,
}

impl InfAut {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Kernel basis of φ ↦ ([φ, ρ(v_a)])_a over strictly upper triangular
/// φ. Requires standard coordinates.
pub fn infinitesimal_automorphisms(r: &Representation) -> Result<InfAut> {
    if !r.is_standard() {
        return Err(Error::NotStandard);
    }
    let field = r.algebra().field();
    let n = r.dim();
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let unknowns = positions.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for m in r.matrices() {
        // equation [φ, m]_{p,q} = Σ_c φ_{p,c} m_{c,q} − m_{p,c} φ_{c,q} = 0
        for p in 0..n {
            for q in 0..n {
                let mut row = vec![Scalar::zero(field); unknowns];
                let mut nonzero = false;
                for (u, &(a, b)) in positions.iter().enumerate() {
                    // φ_{a,b} contributes m_{b,q} when p = a, and
                    // −m_{p,a} when q = b
                    let mut coeff = Scalar::zero(field);
                    if p == a {
                        coeff = &coeff + m.get(b, q);
                    }
                    if q == b {
                        coeff = &coeff - m.get(p, a);
                    }
                    if !coeff.is_zero() {
                        nonzero = true;
                    }
                    row[u] = coeff;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Subspace::full(field, unknowns)
    } else {
        Matrix::from_rows(field, rows)?.kernel_basis()
    };
    let basis = kernel
        .basis()
        .iter()
        .map(|v| {
            let mut m = Matrix::zero(field, n, n);
            for (u, &(a, b)) in positions.iter().enumerate() {
                m.set(a, b, v[u].clone());
            }
            m
        })
        .collect();
    Ok(InfAut { basis })
}

/// dim Aut(r) = dim n(r) + 1 for a flag representation (the extra one
/// is the scalar torus). Standardizes first when needed.
pub fn aut_dimension(r: &Representation) -> Result<usize> {
    let owned;
    let std = if r.is_standard() {
        r
    } else {
        owned = r.standardize()?.0;
        &owned
    };
    Ok(infinitesimal_automorphisms(std)?.dim() + 1)
}

/// Exact exponential of a nilpotent matrix: the finite sum
/// Σ N^k / k!.
pub fn exp_nilpotent(n: &Matrix) -> Result<Matrix> {
    let size = n.rows();
    let field = n.field();
    let mut power = Matrix::identity(field, size);
    let mut out = Matrix::identity(field, size);
    let mut factorial = BigRational::one();
    for k in 1..=size {
        power = power.mul(n);
        factorial *= BigRational::from_integer(k.into());
        if power.is_zero() {
            return Ok(out);
        }
        let inv = Scalar::from_rational(field, BigRational::one() / &factorial);
        out = out.add(&power.scale(&inv));
    }
    if power.is_zero() {
        Ok(out)
    } else {
        Err(Error::NotNilpotent)
    }
}

/// Exact logarithm of a unipotent matrix: Σ (−1)^{k+1} (U − I)^k / k.
pub fn log_unipotent(u: &Matrix) -> Result<Matrix> {
    let size = u.rows();
    let field = u.field();
    let m = u.sub(&Matrix::identity(field, size));
    let mut power = Matrix::identity(field, size);
    let mut out = Matrix::zero(field, size, size);
    for k in 1..=size {
        power = power.mul(&m);
        if power.is_zero() {
            return Ok(out);
        }
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        let coeff = Scalar::from_frac(field, sign, k as i64);
        out = out.add(&power.scale(&coeff));
    }
    if power.is_zero() {
        Ok(out)
    } else {
        Err(Error::NotUnipotent)
    }
}

pub fn conjugate_rep(b: &Matrix, r: &Representation) -> Result<Representation> {
    r.conjugate(b)
}

/// Whether conjugation by b fixes every image matrix.
pub fn is_automorphism(b: &Matrix, r: &Representation) -> Result<bool> {
    let conj = r.conjugate(b)?;
    Ok(conj
        .matrices()
        .iter()
        .zip(r.matrices())
        .all(|(a, c)| a.sub(c).is_zero()))
}

/// Checks that the common fixed space of exp(ρ(v)), over all basis
/// vectors and `samples` pseudorandom integer combinations, equals the
/// zero eigenspace of r.
pub fn invariants_equal_zero_eigenspace(r: &Representation, samples: usize, seed: u64) -> Result<bool> {
    use rand::{Rng, SeedableRng};
    let field = r.algebra().field();
    let n = r.dim();
    let m = r.algebra().dim();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut elements: Vec<Vec<Scalar>> = (0..m).map(|i| r.algebra().unit(i)).collect();
    for _ in 0..samples {
        let v: Vec<Scalar> = (0..m)
            .map(|_| Scalar::from_i64(field, rng.gen_range(-5i64..=5)))
            .collect();
        elements.push(v);
    }
    let mut fixed = Subspace::full(field, n);
    for v in &elements {
        let e = exp_nilpotent(&r.apply(v))?;
        let shifted = e.sub(&Matrix::identity(field, n));
        fixed = fixed.intersection(&shifted.kernel_basis())?;
    }
    Ok(fixed == r.zero_eigenspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldSpec;
    use crate::fixtures;

    #[test]
    fn exp_log_basics() {
        let f = FieldSpec::rationals();
        let n = Matrix::from_i64(&f, &[&[0, 1], &[0, 0]]);
        let e = exp_nilpotent(&n).unwrap();
        assert_eq!(e, Matrix::from_i64(&f, &[&[1, 1], &[0, 1]]));
        assert_eq!(log_unipotent(&e).unwrap(), n);
        // non-nilpotent input is rejected
        assert!(exp_nilpotent(&Matrix::identity(&f, 2)).is_err());
        assert!(log_unipotent(&Matrix::from_i64(&f, &[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn exp_log_roundtrip_larger() {
        let f = FieldSpec::rationals();
        let n = Matrix::from_i64(
            &f,
            &[
                &[0, 3, -1, 2],
                &[0, 0, 5, 7],
                &[0, 0, 0, -2],
                &[0, 0, 0, 0],
            ],
        );
        let e = exp_nilpotent(&n).unwrap();
        assert_eq!(log_unipotent(&e).unwrap(), n);
    }

    #[test]
    fn one_parameter_group() {
        let f = FieldSpec::rationals();
        let n = Matrix::from_i64(&f, &[&[0, 2, 1], &[0, 0, -3], &[0, 0, 0]]);
        let s = Scalar::from_frac(&f, 1, 2);
        let t = Scalar::from_frac(&f, 2, 3);
        let st = &s + &t;
        let lhs = exp_nilpotent(&n.scale(&st)).unwrap();
        let rhs = exp_nilpotent(&n.scale(&s)).unwrap().mul(&exp_nilpotent(&n.scale(&t)).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn natural_n3_aut_dimension_2() {
        let r = fixtures::natural_rep(3);
        let inf = infinitesimal_automorphisms(&r).unwrap();
        assert_eq!(inf.dim(), 1);
        assert_eq!(aut_dimension(&r).unwrap(), 2);
        // n(r) basis is strictly upper triangular and commutes
        for phi in &inf.basis {
            assert!(phi.is_strictly_upper_triangular());
            for m in r.matrices() {
                assert!(phi.commutator(m).is_zero());
            }
        }
    }

    #[test]
    fn degenerate_rep_aut_dimensions() {
        // x, y ↦ E12, E23 + E34: aut dimension 2; its 3-dim quotient
        // has aut dimension 3
        let r = fixtures::repeated_point_rep();
        assert_eq!(aut_dimension(&r).unwrap(), 2);
        let q = r.subquotient(1, 4).unwrap();
        assert_eq!(aut_dimension(&q).unwrap(), 3);
    }

    #[test]
    fn exp_of_inf_aut_is_automorphism() {
        let r = fixtures::natural_rep(4);
        let inf = infinitesimal_automorphisms(&r).unwrap();
        for phi in &inf.basis {
            let b = exp_nilpotent(phi).unwrap();
            assert!(is_automorphism(&b, &r).unwrap());
        }
        // a generic unipotent element is not an automorphism
        let f = r.algebra().field().clone();
        let b = Matrix::from_i64(&f, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!is_automorphism(&b, &r).unwrap());
    }

    #[test]
    fn aut_dimension_is_conjugation_invariant() {
        let r = fixtures::natural_rep(4);
        let f = r.algebra().field().clone();
        let b = Matrix::from_i64(
            &f,
            &[&[1, 2, -1, 3], &[0, 1, 4, 0], &[0, 0, 1, -2], &[0, 0, 0, 1]],
        );
        let conj = r.conjugate(&b).unwrap();
        assert_eq!(aut_dimension(&conj).unwrap(), aut_dimension(&r).unwrap());
    }

    #[test]
    fn fixed_space_matches_zero_eigenspace() {
        for r in [fixtures::natural_rep(3), fixtures::natural_rep(4), fixtures::repeated_point_rep()] {
            assert!(invariants_equal_zero_eigenspace(&r, 10, 0).unwrap());
        }
    }
}
