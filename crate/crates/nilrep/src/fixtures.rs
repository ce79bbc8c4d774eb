//! A registry of concrete algebras and representations with known
//! invariants, used by the test suites and the command-line fixture
//! loader.

use std::sync::Arc;

use crate::error::Result;
use crate::exactnum::{FieldSpec, Scalar};
use crate::liealg::{self, LieAlgebra};
use crate::linalg::Matrix;
use crate::rep::Representation;

/// Strictly upper triangular n×n matrices as an abstract algebra.
pub fn nn(n: usize) -> Arc<LieAlgebra> {
    liealg::upper_triangular_nilpotent(n)
}

pub fn abelian(m: usize) -> Arc<LieAlgebra> {
    liealg::abelian(m)
}

/// Four-dimensional algebra with [v1,v2] = v3 and [v1,v3] = v4.
pub fn filiform4_algebra() -> Arc<LieAlgebra> {
    let f = FieldSpec::rationals();
    liealg::LieAlgebra::from_sparse(
        f.clone(),
        vec!["v1".into(), "v2".into(), "v3".into(), "v4".into()],
        &[
            (0, 1, vec![(2, Scalar::one(&f))]),
            (0, 2, vec![(3, Scalar::one(&f))]),
        ],
        Some(vec![
            liealg::GenExpr::Gen(0),
            liealg::GenExpr::Gen(1),
            liealg::GenExpr::Bracket(0, 1),
            liealg::GenExpr::Bracket(0, 2),
        ]),
    )
    .expect("example algebra is valid")
}

/// k⁴ ⊕ k with the symplectic bracket [v1,v2] = [v3,v4] = z.
pub fn heisenberg5_algebra() -> Arc<LieAlgebra> {
    let f = FieldSpec::rationals();
    liealg::LieAlgebra::from_sparse(
        f.clone(),
        vec!["v1".into(), "v2".into(), "v3".into(), "v4".into(), "z".into()],
        &[
            (0, 1, vec![(4, Scalar::one(&f))]),
            (2, 3, vec![(4, Scalar::one(&f))]),
        ],
        Some(vec![
            liealg::GenExpr::Gen(0),
            liealg::GenExpr::Gen(1),
            liealg::GenExpr::Gen(2),
            liealg::GenExpr::Gen(3),
            liealg::GenExpr::Bracket(0, 1),
        ]),
    )
    .expect("symplectic algebra is valid")
}

/// The n×n matrix with the given entries along the first superdiagonal
/// and zeros elsewhere.
pub fn superdiagonal_matrix(field: &Arc<FieldSpec>, entries: &[Scalar]) -> Matrix {
    let n = entries.len() + 1;
    let mut m = Matrix::zero(field, n, n);
    for (i, e) in entries.iter().enumerate() {
        m.set(i, i + 1, e.clone());
    }
    m
}

/// Builds a representation from superdiagonal entry lists, one per
/// generator of the algebra.
pub fn rep_from_superdiagonals(
    algebra: Arc<LieAlgebra>,
    superdiags: &[Vec<Scalar>],
) -> Result<Representation> {
    let field = algebra.field().clone();
    let mats = superdiags
        .iter()
        .map(|s| superdiagonal_matrix(&field, s))
        .collect();
    Representation::from_generators(algebra, mats)
}

/// The representation of nn(n) on k^n by the matrices themselves.
pub fn natural_rep(n: usize) -> Representation {
    let g = nn(n);
    let f = g.field().clone();
    let gens: Vec<Matrix> = (0..n - 1)
        .map(|i| {
            let mut m = Matrix::zero(&f, n, n);
            m.set(i, i + 1, Scalar::one(&f));
            m
        })
        .collect();
    Representation::from_generators(g, gens).expect("natural representation is valid")
}

/// Width witness for the filiform4 algebra over Q(i): generators sent
/// to the superdiagonal matrices (1, 1, 1+2i) and (1, i, -1).
pub fn filiform4_witness_rep() -> Representation {
    let qi = FieldSpec::gaussian();
    let g = filiform4_algebra().base_change(&qi).unwrap();
    let i = Scalar::generator(&qi).unwrap();
    let one = Scalar::one(&qi);
    let v1 = vec![one.clone(), one.clone(), &one + &(&Scalar::from_i64(&qi, 2) * &i)];
    let v2 = vec![one.clone(), i.clone(), -&one];
    rep_from_superdiagonals(g, &[v1, v2]).expect("width witness is a representation")
}

pub fn free22() -> Arc<LieAlgebra> {
    liealg::free_nilpotent(2, 2).unwrap()
}
pub fn free23() -> Arc<LieAlgebra> {
    liealg::free_nilpotent(2, 3).unwrap()
}
pub fn free24() -> Arc<LieAlgebra> {
    liealg::free_nilpotent(2, 4).unwrap()
}

/// Representation of the free rank-2 class-3 algebra with generator
/// images E12 and E23 + E34; its constellation repeats a point, so it
/// is flag but not wide.
pub fn repeated_point_rep() -> Representation {
    let g = free23();
    let f = g.field().clone();
    let x = superdiagonal_matrix(&f, &[Scalar::one(&f), Scalar::zero(&f), Scalar::zero(&f)]);
    let y = superdiagonal_matrix(&f, &[Scalar::zero(&f), Scalar::one(&f), Scalar::one(&f)]);
    Representation::from_generators(g, vec![x, y]).expect("degenerate example is a representation")
}

/// Known invariants for a fixture algebra; `None` marks invariants the
/// registry does not pin down.
#[derive(Debug, Clone)]
pub struct Expected {
    pub dim: usize,
    pub depth: usize,
    pub width: Option<usize>,
    pub a_triple: Option<(u32, u32, u32)>,
}

pub struct Fixture {
    pub name: &'static str,
    pub algebra: Arc<LieAlgebra>,
    pub representations: Vec<(&'static str, Representation)>,
    /// Wide witness reps usable by the width search, possibly over an
    /// extension field (so not listed among `representations` of the
    /// base algebra).
    pub width_witnesses: Vec<Representation>,
    pub expected: Expected,
}

pub fn all_fixture_names() -> Vec<&'static str> {
    vec![
        "n2", "n3", "n4", "n5", "abelian2", "abelian3", "abelian4", "filiform4", "heisenberg5",
        "free22", "free23", "free24",
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    let fx = match name {
        "n2" | "n3" | "n4" | "n5" => {
            let n: usize = name[1..].parse().unwrap();
            let nat = natural_rep(n);
            Fixture {
                name: match n {
                    2 => "n2",
                    3 => "n3",
                    4 => "n4",
                    _ => "n5",
                },
                algebra: nn(n),
                representations: vec![("natural", nat.clone())],
                width_witnesses: vec![nat],
                expected: Expected {
                    dim: n * (n - 1) / 2,
                    depth: n - 1,
                    width: Some(n - 1),
                    a_triple: Some(match n {
                        2 => (2, 3, 4),
                        3 => (2, 2, 3),
                        _ => (2, 2, 2),
                    }),
                },
            }
        }
        "abelian2" | "abelian3" | "abelian4" => {
            let m: usize = name[7..].parse().unwrap();
            let g = abelian(m);
            let f = g.field().clone();
            // the 2-dimensional representations attached to the
            // coordinate functionals, handy as gluing inputs
            let representations = (0..m)
                .map(|i| {
                    let mats: Vec<Matrix> = (0..m)
                        .map(|j| {
                            let mut mat = Matrix::zero(&f, 2, 2);
                            if i == j {
                                mat.set(0, 1, Scalar::one(&f));
                            }
                            mat
                        })
                        .collect();
                    let name: &'static str = match i {
                        0 => "e1",
                        1 => "e2",
                        2 => "e3",
                        _ => "e4",
                    };
                    (name, Representation::new(g.clone(), mats).unwrap())
                })
                .collect();
            Fixture {
                name: match m {
                    2 => "abelian2",
                    3 => "abelian3",
                    _ => "abelian4",
                },
                algebra: g,
                representations,
                width_witnesses: vec![],
                expected: Expected {
                    dim: m,
                    depth: 1,
                    width: Some(1),
                    a_triple: Some((2, 3, 4)),
                },
            }
        }
        "filiform4" => Fixture {
            name: "filiform4",
            algebra: filiform4_algebra(),
            representations: vec![],
            width_witnesses: vec![filiform4_witness_rep()],
            expected: Expected {
                dim: 4,
                depth: 3,
                width: Some(3),
                a_triple: Some((2, 2, 2)),
            },
        },
        "heisenberg5" => Fixture {
            name: "heisenberg5",
            algebra: heisenberg5_algebra(),
            representations: vec![],
            width_witnesses: vec![],
            expected: Expected {
                dim: 5,
                depth: 2,
                width: Some(1),
                a_triple: Some((2, 3, 4)),
            },
        },
        "free22" => Fixture {
            name: "free22",
            algebra: free22(),
            representations: vec![],
            width_witnesses: vec![],
            expected: Expected {
                dim: 3,
                depth: 2,
                width: Some(2),
                a_triple: Some((2, 2, 3)),
            },
        },
        "free23" => Fixture {
            name: "free23",
            algebra: free23(),
            representations: vec![("degenerate", repeated_point_rep())],
            width_witnesses: vec![],
            expected: Expected {
                dim: 5,
                depth: 3,
                width: Some(3),
                a_triple: Some((2, 2, 2)),
            },
        },
        "free24" => Fixture {
            name: "free24",
            algebra: free24(),
            representations: vec![],
            width_witnesses: vec![],
            expected: Expected {
                dim: 8,
                depth: 4,
                width: Some(4),
                a_triple: Some((2, 2, 2)),
            },
        },
        _ => return None,
    };
    Some(fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_dims_and_depths_match() {
        for name in all_fixture_names() {
            let fx = fixture(name).unwrap();
            assert_eq!(fx.algebra.dim(), fx.expected.dim, "{name}");
            assert_eq!(fx.algebra.depth(), fx.expected.depth, "{name}");
        }
    }

    #[test]
    fn filiform4_witness_is_wide() {
        let r = filiform4_witness_rep();
        assert!(r.is_standard());
        assert!(r.is_wide());
    }

    #[test]
    fn natural_reps_are_wide() {
        for n in 2..=5 {
            assert!(natural_rep(n).is_wide());
        }
    }

    #[test]
    fn unknown_fixture_is_none() {
        assert!(fixture("nope").is_none());
    }
}
