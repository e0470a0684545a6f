//! Exact arithmetic in ℚ(√2) and exact linear algebra over it.
//!
//! Rays and subspaces of ℂⁿ are represented with real coordinates a + b√2,
//! so orthogonality and subspace identity are decided exactly, never by
//! floating point. Subspaces get a canonical identity through their reduced
//! row echelon form: two spans are the same subspace iff their echelon
//! matrices are identical.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactLinError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("zero vector cannot be a ray")]
    ZeroVector,
    #[error("empty coordinate list")]
    EmptyVector,
}

/// An element of ℚ(√2): `rat + irr·√2`, both components reduced fractions.
///
/// Equality is componentwise, which is exact equality of field elements
/// because √2 is irrational. The field is closed under all four operations,
/// so every computation downstream stays in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    rat: BigRational,
    irr: BigRational,
}

impl Scalar {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        Scalar { rat, irr }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            rat: BigRational::from_integer(BigInt::from(n)),
            irr: BigRational::zero(),
        }
    }

    /// p/q as a rational scalar. Panics on q = 0.
    pub fn from_fraction(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar {
            rat: BigRational::new(BigInt::from(p), BigInt::from(q)),
            irr: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn sqrt2() -> Self {
        Scalar {
            rat: BigRational::zero(),
            irr: BigRational::one(),
        }
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irr_part(&self) -> &BigRational {
        &self.irr
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.irr.is_zero()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat + &other.rat,
            irr: &self.irr + &other.irr,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat - &other.rat,
            irr: &self.irr - &other.irr,
        }
    }

    /// (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
    pub fn mul(&self, other: &Scalar) -> Scalar {
        let two = BigRational::from_integer(BigInt::from(2));
        Scalar {
            rat: &self.rat * &other.rat + &two * &self.irr * &other.irr,
            irr: &self.rat * &other.irr + &self.irr * &other.rat,
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            rat: -self.rat.clone(),
            irr: -self.irr.clone(),
        }
    }

    /// Division rationalises by the conjugate: the norm c² − 2d² vanishes
    /// only for the zero scalar, since √2 is irrational.
    pub fn div(&self, other: &Scalar) -> Result<Scalar, ExactLinError> {
        if other.is_zero() {
            return Err(ExactLinError::DivisionByZero);
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &other.rat * &other.rat - &two * &other.irr * &other.irr;
        debug_assert!(!norm.is_zero());
        let inv = Scalar {
            rat: &other.rat / &norm,
            irr: -(&other.irr / &norm),
        };
        Ok(self.mul(&inv))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if self.rat.is_zero() {
            return write!(f, "{}√2", self.irr);
        }
        if self.irr.is_negative() {
            write!(f, "{}{}√2", self.rat, self.irr)
        } else {
            write!(f, "{}+{}√2", self.rat, self.irr)
        }
    }
}

/// A ray of ℂⁿ with coordinates in ℚ(√2), kept in canonical projective
/// form: the first nonzero coordinate is 1. Two rays are the same line
/// iff their canonical coordinate lists are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayVector {
    coords: Vec<Scalar>,
}

impl RayVector {
    /// Canonicalises by dividing through the first nonzero coordinate.
    pub fn new(coords: Vec<Scalar>) -> Result<Self, ExactLinError> {
        if coords.is_empty() {
            return Err(ExactLinError::EmptyVector);
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(ExactLinError::ZeroVector)?
            .clone();
        let coords = coords
            .iter()
            .map(|c| c.div(&lead))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RayVector { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, ExactLinError> {
        RayVector::new(coords.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }
}

impl fmt::Debug for RayVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Symmetric bilinear form Σ uᵢvᵢ. The scalars are real, so conjugation is
/// the identity and the form is positive definite on ℚ(√2)-vectors.
pub fn inner(u: &RayVector, v: &RayVector) -> Result<Scalar, ExactLinError> {
    if u.dim() != v.dim() {
        return Err(ExactLinError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let mut acc = Scalar::zero();
    for (a, b) in u.coords.iter().zip(v.coords.iter()) {
        acc = acc.add(&a.mul(b));
    }
    Ok(acc)
}

/// Canonical representative of a linear subspace: its reduced row echelon
/// matrix. Span-invariant by construction, so `==` decides subspace
/// identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceClass {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
}

impl SubspaceClass {
    pub fn zero(dim: usize) -> Self {
        SubspaceClass { dim, rows: vec![] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// True iff the vector lies in the subspace (its row reduction against
    /// the echelon rows leaves nothing).
    pub fn contains(&self, v: &RayVector) -> Result<bool, ExactLinError> {
        if v.dim() != self.dim {
            return Err(ExactLinError::DimensionMismatch {
                left: v.dim(),
                right: self.dim,
            });
        }
        let mut w: Vec<Scalar> = v.coords().to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|c| !c.is_zero()).expect("echelon row");
            if !w[pivot].is_zero() {
                let f = w[pivot].clone();
                for (x, r) in w.iter_mut().zip(row.iter()) {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        Ok(w.iter().all(|c| c.is_zero()))
    }

    /// Span of the union of two subspaces of the same ambient dimension.
    pub fn sum(&self, other: &SubspaceClass) -> Result<SubspaceClass, ExactLinError> {
        if self.dim != other.dim {
            return Err(ExactLinError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let rows: Vec<Vec<Scalar>> = self.rows.iter().chain(other.rows.iter()).cloned().collect();
        Ok(rref_rows(self.dim, rows))
    }
}

impl fmt::Debug for SubspaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace[dim {}, rank {}]", self.dim, self.rank())
    }
}

fn rref_rows(dim: usize, mut mat: Vec<Vec<Scalar>>) -> SubspaceClass {
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = mat[rank][col].clone();
        for x in mat[rank].iter_mut() {
            *x = x.div(&inv).expect("pivot nonzero");
        }
        for r in 0..mat.len() {
            if r == rank || mat[r][col].is_zero() {
                continue;
            }
            let f = mat[r][col].clone();
            for c in 0..dim {
                let delta = f.mul(&mat[rank][c]);
                mat[r][c] = mat[r][c].sub(&delta);
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    mat.truncate(rank);
    SubspaceClass { dim, rows: mat }
}

/// Reduced row echelon form of a spanning set. Permuting or rescaling the
/// inputs yields the identical output; the empty set spans the rank-0
/// subspace.
pub fn rref(dim: usize, vectors: &[RayVector]) -> Result<SubspaceClass, ExactLinError> {
    for v in vectors {
        if v.dim() != dim {
            return Err(ExactLinError::DimensionMismatch {
                left: v.dim(),
                right: dim,
            });
        }
    }
    Ok(rref_rows(
        dim,
        vectors.iter().map(|v| v.coords().to_vec()).collect(),
    ))
}

pub fn subspace_equal(a: &SubspaceClass, b: &SubspaceClass) -> Result<bool, ExactLinError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(ExactLinError::DimensionMismatch {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sq2(mult: i64) -> Scalar {
        Scalar::from_int(mult).mul(&Scalar::sqrt2())
    }

    #[test]
    fn scalar_field_examples() {
        // (1 + √2)(−1 + √2) = 1
        let a = s(1).add(&sq2(1));
        let b = s(-1).add(&sq2(1));
        assert_eq!(a.mul(&b), s(1));
        // 1 / √2 = (1/2)√2
        let d = s(1).div(&Scalar::sqrt2()).unwrap();
        assert_eq!(d, Scalar::new(num::zero(), BigRational::new(1.into(), 2.into())));
        // 1/2 + 1/2 = 1
        assert_eq!(
            Scalar::from_fraction(1, 2).add(&Scalar::from_fraction(1, 2)),
            s(1)
        );
        assert_eq!(s(3).div(&s(0)), Err(ExactLinError::DivisionByZero));
    }

    #[test]
    fn inner_product_examples() {
        let e1 = RayVector::from_ints(&[1, 0]).unwrap();
        let e2 = RayVector::from_ints(&[0, 1]).unwrap();
        assert!(inner(&e1, &e2).unwrap().is_zero());
        let u = RayVector::from_ints(&[1, 1]).unwrap();
        let v = RayVector::from_ints(&[1, -1]).unwrap();
        assert!(inner(&u, &v).unwrap().is_zero());
        // (1, 0, √2) · (−√2, 5, 1) = −√2 + √2 = 0
        let u = RayVector::new(vec![s(1), s(0), sq2(1)]).unwrap();
        let v = RayVector::new(vec![sq2(-1), s(5), s(1)]).unwrap();
        assert!(inner(&u, &v).unwrap().is_zero());
        let bad = inner(&e1, &RayVector::from_ints(&[1, 0, 0]).unwrap());
        assert!(matches!(bad, Err(ExactLinError::DimensionMismatch { .. })));
    }

    #[test]
    fn canonical_ray_form() {
        let v = RayVector::new(vec![s(0), sq2(1), s(0)]).unwrap();
        assert_eq!(v, RayVector::from_ints(&[0, 1, 0]).unwrap());
        assert!(RayVector::from_ints(&[0, 0]).is_err());
    }

    #[test]
    fn rref_examples() {
        let a = RayVector::from_ints(&[1, 1, 0]).unwrap();
        let b = RayVector::from_ints(&[1, -1, 0]).unwrap();
        let s1 = rref(3, &[a, b]).unwrap();
        assert_eq!(s1.rank(), 2);
        let e1 = RayVector::from_ints(&[1, 0, 0]).unwrap();
        let e2 = RayVector::from_ints(&[0, 1, 0]).unwrap();
        let s2 = rref(3, &[e1.clone(), e2]).unwrap();
        assert!(subspace_equal(&s1, &s2).unwrap());

        let scaled = rref(3, &[RayVector::new(vec![s(0), sq2(1), s(0)]).unwrap()]).unwrap();
        let plain = rref(3, &[RayVector::from_ints(&[0, 1, 0]).unwrap()]).unwrap();
        assert_eq!(scaled, plain);
        assert_eq!(scaled.rank(), 1);

        assert_eq!(rref(3, &[]).unwrap().rank(), 0);

        let only_e1 = rref(3, &[e1]).unwrap();
        assert!(!subspace_equal(&only_e1, &plain).unwrap());
        assert!(subspace_equal(&only_e1, &plain.sum(&only_e1).unwrap()).is_ok());
    }

    #[test]
    fn full_space_from_basis_rays() {
        let rays = vec![
            RayVector::from_ints(&[1, 0, 0]).unwrap(),
            RayVector::from_ints(&[0, 1, 1]).unwrap(),
            RayVector::from_ints(&[0, 1, -1]).unwrap(),
        ];
        let s = rref(3, &rays).unwrap();
        assert!(s.is_full());
        assert_eq!(s.rank(), 3);
    }

    #[test]
    fn rref_idempotent_on_own_rows() {
        let rays = vec![
            RayVector::from_ints(&[1, 2, 3]).unwrap(),
            RayVector::from_ints(&[0, 1, 7]).unwrap(),
        ];
        let s = rref(3, &rays).unwrap();
        let again = rref_rows(3, s.rows().to_vec());
        assert_eq!(s, again);
    }
}
