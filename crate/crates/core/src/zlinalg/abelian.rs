use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::smith::smith_normal_form;
use super::{IntMatrix, ZlinalgError};

/// Structure of a finitely generated abelian group presented as the cokernel
/// of an integer matrix, i.e. `Z^g / column-span(A)` for `A : Z^r -> Z^g`.
///
/// Beyond the isomorphism type (free rank plus invariant factors forming a
/// divisibility chain, each factor `>= 2`), this records an explicit
/// coordinate map sending each of the `g` ambient generators to its
/// coordinates on a fixed free/torsion basis, and a section expressing each
/// free basis element as an integer combination of the generators. Those two
/// maps are what later modules use to factor homomorphisms to the reals
/// through the torsion-free quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianStructure {
    free_rank: usize,
    torsion: Vec<BigInt>,
    ngens: usize,
    /// `free_rank x ngens`; column `i` holds the free coordinates of generator `i`.
    free_of_gen: IntMatrix,
    /// `torsion.len() x ngens`; column `i` holds the torsion coordinates of
    /// generator `i`, reduced into `[0, factor)` row by row.
    torsion_of_gen: IntMatrix,
    /// `ngens x free_rank`; column `j` is an integer combination of the
    /// generators mapping to the `j`-th free basis element.
    free_basis_in_gens: IntMatrix,
}

impl AbelianStructure {
    /// The group `Z^rank`, on `rank` generators mapping to the standard basis.
    pub fn free(rank: usize) -> Self {
        AbelianStructure {
            free_rank: rank,
            torsion: Vec::new(),
            ngens: rank,
            free_of_gen: IntMatrix::identity(rank),
            torsion_of_gen: IntMatrix::zero(0, rank),
            free_basis_in_gens: IntMatrix::identity(rank),
        }
    }

    /// Build from a list of invariant factors, `0` meaning an infinite cyclic
    /// factor and `d >= 2` a finite cyclic factor of order `d`. The nonzero
    /// entries must form a divisibility chain and precede the zeros.
    pub fn from_invariant_factors(factors: &[BigInt]) -> Result<Self, ZlinalgError> {
        let mut torsion = Vec::new();
        let mut free_rank = 0usize;
        for f in factors {
            if f.is_zero() {
                free_rank += 1;
            } else {
                if free_rank > 0 {
                    return Err(ZlinalgError::NotAChain(
                        "0".into(),
                        f.to_string(),
                    ));
                }
                if f < &BigInt::from(2) {
                    return Err(ZlinalgError::NotAChain("1".into(), f.to_string()));
                }
                if let Some(prev) = torsion.last() {
                    if !f.mod_floor(prev).is_zero() {
                        return Err(ZlinalgError::NotAChain(prev.to_string(), f.to_string()));
                    }
                }
                torsion.push(f.clone());
            }
        }
        let t = torsion.len();
        let ngens = t + free_rank;
        let mut free_of_gen = IntMatrix::zero(free_rank, ngens);
        let mut torsion_of_gen = IntMatrix::zero(t, ngens);
        let mut free_basis_in_gens = IntMatrix::zero(ngens, free_rank);
        for j in 0..t {
            torsion_of_gen.set(j, j, BigInt::one());
        }
        for j in 0..free_rank {
            free_of_gen.set(j, t + j, BigInt::one());
            free_basis_in_gens.set(t + j, j, BigInt::one());
        }
        Ok(AbelianStructure {
            free_rank,
            torsion,
            ngens,
            free_of_gen,
            torsion_of_gen,
            free_basis_in_gens,
        })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn free_of_gen(&self) -> &IntMatrix {
        &self.free_of_gen
    }

    pub fn torsion_of_gen(&self) -> &IntMatrix {
        &self.torsion_of_gen
    }

    pub fn free_basis_in_gens(&self) -> &IntMatrix {
        &self.free_basis_in_gens
    }

    /// Free coordinates of an integer combination of the generators.
    pub fn free_coords(&self, gen_exponents: &[BigInt]) -> Result<Vec<BigInt>, ZlinalgError> {
        self.free_of_gen.mul_vec(gen_exponents)
    }

    /// Full (free, torsion) coordinates of an integer combination of the
    /// generators, with torsion coordinates reduced into `[0, factor)`.
    pub fn coords(
        &self,
        gen_exponents: &[BigInt],
    ) -> Result<(Vec<BigInt>, Vec<BigInt>), ZlinalgError> {
        let free = self.free_of_gen.mul_vec(gen_exponents)?;
        let tors = self
            .torsion_of_gen
            .mul_vec(gen_exponents)?
            .into_iter()
            .zip(&self.torsion)
            .map(|(x, f)| x.mod_floor(f))
            .collect();
        Ok((free, tors))
    }

    /// True when the given combination of generators is trivial in the group.
    pub fn is_identity(&self, gen_exponents: &[BigInt]) -> Result<bool, ZlinalgError> {
        let (free, tors) = self.coords(gen_exponents)?;
        Ok(free.iter().all(Zero::is_zero) && tors.iter().all(Zero::is_zero))
    }
}

/// Structure of `Z^rows(a) / column-span(a)`.
///
/// The coordinate change comes from the Smith normal form `u a v = d`: the
/// map `x -> u x` identifies the cokernel with `(+)_i Z/d_i (+) Z^(rows-rank)`,
/// unit factors `d_i = 1` contributing nothing.
pub fn cokernel_structure(a: &IntMatrix) -> AbelianStructure {
    let s = smith_normal_form(a);
    let m = a.rows();
    let diag = s.diagonal();
    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    for i in 0..m {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free_rows.push(i);
        } else if !d.is_one() {
            torsion_rows.push((i, d));
        }
    }
    let free_rank = free_rows.len();
    let t = torsion_rows.len();
    let mut free_of_gen = IntMatrix::zero(free_rank, m);
    let mut torsion_of_gen = IntMatrix::zero(t, m);
    let mut torsion = Vec::with_capacity(t);
    for (out_row, (i, d)) in torsion_rows.iter().enumerate() {
        for j in 0..m {
            torsion_of_gen.set(out_row, j, s.u.get(*i, j).mod_floor(d));
        }
        torsion.push(d.clone());
    }
    for (out_row, i) in free_rows.iter().enumerate() {
        for j in 0..m {
            free_of_gen.set(out_row, j, s.u.get(*i, j).clone());
        }
    }
    let mut free_basis_in_gens = IntMatrix::zero(m, free_rank);
    for (out_col, i) in free_rows.iter().enumerate() {
        for j in 0..m {
            free_basis_in_gens.set(j, out_col, s.u_inv.get(j, *i).clone());
        }
    }
    AbelianStructure {
        free_rank,
        torsion,
        ngens: m,
        free_of_gen,
        torsion_of_gen,
        free_basis_in_gens,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_of_diag() {
        // Z^3 / <2e1, 6e2> = Z/2 + Z/6 + Z
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 6], &[0, 0]]);
        let s = cokernel_structure(&a);
        assert_eq!(s.free_rank(), 1);
        assert_eq!(s.torsion(), &[BigInt::from(2), BigInt::from(6)]);
        assert_eq!(s.order(), None);
    }

    #[test]
    fn cokernel_with_unit_factor() {
        // Z^2 / <(1, 0)> = Z
        let a = IntMatrix::from_i64(&[&[1], &[0]]);
        let s = cokernel_structure(&a);
        assert_eq!(s.free_rank(), 1);
        assert!(s.torsion().is_empty());
    }

    #[test]
    fn coordinate_maps_are_consistent() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8], &[1, 1]]);
        let s = cokernel_structure(&a);
        // free_of_gen * free_basis_in_gens must be the identity on the free part.
        let prod = s
            .free_of_gen()
            .mul(s.free_basis_in_gens())
            .unwrap();
        assert_eq!(prod, IntMatrix::identity(s.free_rank()));
        // Every relation column must map to zero coordinates.
        for j in 0..a.cols() {
            assert!(s.is_identity(&a.col(j)).unwrap());
        }
    }

    #[test]
    fn invariant_factor_constructor_validates_chain() {
        assert!(AbelianStructure::from_invariant_factors(&[
            BigInt::from(2),
            BigInt::from(4),
            BigInt::zero()
        ])
        .is_ok());
        assert!(AbelianStructure::from_invariant_factors(&[BigInt::from(2), BigInt::from(3)])
            .is_err());
        assert!(AbelianStructure::from_invariant_factors(&[BigInt::zero(), BigInt::from(2)])
            .is_err());
        assert!(AbelianStructure::from_invariant_factors(&[BigInt::one()]).is_err());
    }

    #[test]
    fn finite_order() {
        let s = AbelianStructure::from_invariant_factors(&[BigInt::from(2), BigInt::from(6)])
            .unwrap();
        assert_eq!(s.order(), Some(BigInt::from(12)));
    }
}
