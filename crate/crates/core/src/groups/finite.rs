//! Finite groups given by explicit multiplication tables.
//!
//! Construction validates that the table is a Latin square, associative, and
//! has a two-sided identity — which together make it a group table. Inverses
//! and element orders are then derived, so downstream code (twisted-orbit
//! enumeration, inner-automorphism checks, extension quotients) can trust the
//! structure without re-checking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::GroupError;

/// Hard cap on the order of a table-presented group.
const MAX_ORDER: usize = 1024;

/// A finite group as a validated multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteGroupData {
    elements: Vec<String>,
    /// `table[i][j]` is the index of `elements[i] * elements[j]`.
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupData {
    /// Validate a raw table: distinct element names, Latin square,
    /// associativity, two-sided identity.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = elements.len();
        if n == 0 {
            return Err(GroupError::InvalidParameter(
                "finite group needs at least one element".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(GroupError::InvalidParameter(format!(
                "finite group order {n} exceeds the cap {MAX_ORDER}"
            )));
        }
        for (i, name) in elements.iter().enumerate() {
            if name.is_empty() || name.contains('^') || name.chars().any(char::is_whitespace) {
                return Err(GroupError::InvalidParameter(format!(
                    "element name `{name}` is empty or contains `^`/whitespace"
                )));
            }
            if elements[..i].contains(name) {
                return Err(GroupError::InvalidParameter(format!(
                    "duplicate element name `{name}`"
                )));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::InvalidParameter(format!(
                "multiplication table must be {n}x{n}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::InvalidParameter(format!(
                        "table entry {v} at ({i},{j}) out of range"
                    )));
                }
                if seen_row[v] {
                    return Err(GroupError::NotALatinSquare(format!(
                        "row {i} repeats element index {v}"
                    )));
                }
                seen_row[v] = true;
                let cv = table[j][i];
                if seen_col[cv] {
                    return Err(GroupError::NotALatinSquare(format!(
                        "column {i} repeats element index {cv}"
                    )));
                }
                seen_col[cv] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(format!(
                            "({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == identity).expect("Latin square row"))
            .collect();
        Ok(FiniteGroupData {
            elements,
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Conjugate `i` by `h`: `h * i * h^-1`.
    pub fn conj(&self, h: usize, i: usize) -> usize {
        self.mul(self.mul(h, i), self.inv(h))
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut ord = 1usize;
        while x != self.identity {
            x = self.mul(x, i);
            ord += 1;
        }
        ord
    }

    /// `i^e` for an arbitrary integer exponent, via the element's order.
    pub fn pow(&self, i: usize, e: &BigInt) -> usize {
        let ord = BigInt::from(self.element_order(i));
        let r = e.mod_floor(&ord).to_usize().expect("reduced exponent fits");
        let mut acc = self.identity;
        for _ in 0..r {
            acc = self.mul(acc, i);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Conjugacy classes, each sorted, ordered by their smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.conj(h, i)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// If the map `f` (as images per element index) is conjugation by some
    /// element, return such an element.
    pub fn inner_witness(&self, f: &[usize]) -> Option<usize> {
        if f.len() != self.order() {
            return None;
        }
        (0..self.order()).find(|&h| (0..self.order()).all(|g| f[g] == self.conj(h, g)))
    }

    /// Cyclic group of order `n` with elements `1, letter, letter2, ...`.
    pub fn cyclic_named(n: usize, letter: &str) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("cyclic group of order 0".into()));
        }
        let elements = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => letter.to_string(),
                _ => format!("{letter}{k}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroupData::new(elements, table)
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        FiniteGroupData::cyclic_named(n, "t")
    }

    /// Close a set of named permutations of `0..degree` into a group table.
    /// Elements are named by their first-discovered spelling in the
    /// generators (identity is `1`).
    pub fn from_permutations(
        degree: usize,
        generators: &[(&str, Vec<usize>)],
    ) -> Result<Self, GroupError> {
        for (name, p) in generators {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(GroupError::InvalidParameter(format!(
                    "permutation `{name}` has length {} != degree {degree}",
                    p.len()
                )));
            }
            for &v in p {
                if v >= degree || seen[v] {
                    return Err(GroupError::InvalidParameter(format!(
                        "`{name}` is not a permutation of 0..{degree}"
                    )));
                }
                seen[v] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = vec![id.clone()];
        let mut names = vec!["1".to_string()];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for (gname, p) in generators {
                // right multiplication: (q . p)(x) = q[p[x]]
                let q = &perms[i];
                let prod: Vec<usize> = (0..degree).map(|x| q[p[x]]).collect();
                if !perms.contains(&prod) {
                    if perms.len() >= MAX_ORDER {
                        return Err(GroupError::InvalidParameter(format!(
                            "permutation closure exceeds the cap {MAX_ORDER}"
                        )));
                    }
                    let name = if i == 0 {
                        (*gname).to_string()
                    } else {
                        format!("{}{}", names[i], gname)
                    };
                    perms.push(prod);
                    names.push(name);
                    frontier.insert(0, perms.len() - 1);
                }
            }
        }
        let n = perms.len();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let prod: Vec<usize> = (0..degree).map(|x| perms[i][perms[j][x]]).collect();
                        perms.iter().position(|p| *p == prod).expect("closed set")
                    })
                    .collect()
            })
            .collect();
        FiniteGroupData::new(names, table)
    }

    /// Dihedral group of order `2n` (`n >= 1`): rotation `r`, reflection `s`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("dihedral parameter 0".into()));
        }
        if n == 1 {
            return FiniteGroupData::cyclic_named(2, "s");
        }
        if n == 2 {
            // Klein four-group: two commuting reflections on disjoint pairs.
            return FiniteGroupData::from_permutations(
                4,
                &[("r", vec![1, 0, 2, 3]), ("s", vec![0, 1, 3, 2])],
            );
        }
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - 1 - i) % n).collect();
        FiniteGroupData::from_permutations(n, &[("r", rot), ("s", refl)])
    }

    /// Symmetric group on `n <= 4` letters.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        match n {
            1 => FiniteGroupData::cyclic_named(1, "s"),
            2 => FiniteGroupData::cyclic_named(2, "s"),
            3 => FiniteGroupData::from_permutations(3, &[("s", vec![1, 0, 2]), ("c", vec![1, 2, 0])]),
            4 => FiniteGroupData::from_permutations(
                4,
                &[("s", vec![1, 0, 2, 3]), ("c", vec![1, 2, 3, 0])],
            ),
            _ => Err(GroupError::InvalidParameter(format!(
                "symmetric({n}) not in the bundled library"
            ))),
        }
    }

    /// Alternating group on 4 letters.
    pub fn alternating4() -> Result<Self, GroupError> {
        FiniteGroupData::from_permutations(
            4,
            &[("u", vec![1, 2, 0, 3]), ("v", vec![1, 0, 3, 2])],
        )
    }

    /// Quaternion group of order 8.
    pub fn quaternion8() -> Result<Self, GroupError> {
        // Elements as (sign, axis) with axes 1=i, 2=j, 3=k and axis 0 = scalar.
        fn mul(a: (i8, u8), b: (i8, u8)) -> (i8, u8) {
            match (a.1, b.1) {
                (0, x) => (a.0 * b.0, x),
                (x, 0) => (a.0 * b.0, x),
                (x, y) if x == y => (-a.0 * b.0, 0),
                (1, 2) => (a.0 * b.0, 3),
                (2, 3) => (a.0 * b.0, 1),
                (3, 1) => (a.0 * b.0, 2),
                (2, 1) => (-a.0 * b.0, 3),
                (3, 2) => (-a.0 * b.0, 1),
                (1, 3) => (-a.0 * b.0, 2),
                _ => unreachable!("axes are 0..=3"),
            }
        }
        let elems: Vec<(i8, u8)> = vec![
            (1, 0),
            (1, 1),
            (1, 2),
            (1, 3),
            (-1, 0),
            (-1, 1),
            (-1, 2),
            (-1, 3),
        ];
        let names = ["1", "i", "j", "k", "m1", "mi", "mj", "mk"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let table = elems
            .iter()
            .map(|&a| {
                elems
                    .iter()
                    .map(|&b| {
                        let p = mul(a, b);
                        elems.iter().position(|&e| e == p).expect("closed")
                    })
                    .collect()
            })
            .collect();
        FiniteGroupData::new(names, table)
    }

    /// Fold a sequence of `(element index, exponent)` pairs through the table.
    pub fn fold_word(
        &self,
        pairs: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Result<usize, GroupError> {
        let mut acc = self.identity;
        for (idx, exp) in pairs {
            if idx >= self.order() {
                return Err(GroupError::GeneratorIndex {
                    index: idx,
                    count: self.order(),
                });
            }
            if exp.is_zero() {
                continue;
            }
            let base = if exp.is_negative() { self.inv(idx) } else { idx };
            acc = self.mul(acc, self.pow(base, &exp.abs()));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_structure() {
        let c4 = FiniteGroupData::cyclic_named(4, "x").unwrap();
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.element_names(), &["1", "x", "x2", "x3"]);
        assert_eq!(c4.identity(), 0);
        assert_eq!(c4.inv(1), 3);
        assert!(c4.is_abelian());
        assert_eq!(c4.element_order(1), 4);
        assert_eq!(c4.pow(1, &BigInt::from(-3)), 1);
        assert_eq!(c4.conjugacy_classes().len(), 4);
    }

    #[test]
    fn bundled_conjugacy_class_counts() {
        assert_eq!(FiniteGroupData::symmetric(3).unwrap().conjugacy_classes().len(), 3);
        assert_eq!(FiniteGroupData::symmetric(4).unwrap().conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroupData::alternating4().unwrap().conjugacy_classes().len(), 4);
        assert_eq!(FiniteGroupData::dihedral(4).unwrap().conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroupData::quaternion8().unwrap().conjugacy_classes().len(), 5);
    }

    #[test]
    fn bundled_orders() {
        assert_eq!(FiniteGroupData::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroupData::alternating4().unwrap().order(), 12);
        assert_eq!(FiniteGroupData::dihedral(5).unwrap().order(), 10);
        assert_eq!(FiniteGroupData::dihedral(2).unwrap().order(), 4);
        assert_eq!(FiniteGroupData::quaternion8().unwrap().order(), 8);
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroupData::quaternion8().unwrap();
        let (i, j, k) = (1usize, 2usize, 3usize);
        let m1 = 4usize;
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(j, j), m1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.inv(k));
        assert_eq!(q.element_order(i), 4);
        assert!(!q.is_abelian());
    }

    #[test]
    fn rejects_bad_tables() {
        // not a Latin square
        assert!(matches!(
            FiniteGroupData::new(
                vec!["1".into(), "x".into()],
                vec![vec![0, 0], vec![1, 1]]
            ),
            Err(GroupError::NotALatinSquare(_))
        ));
        // Latin square without a two-sided identity: subtraction mod 3
        assert!(matches!(
            FiniteGroupData::new(
                vec!["a".into(), "b".into(), "c".into()],
                vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]
            ),
            Err(GroupError::NoIdentity)
        ));
        // associativity failure: order-5 Latin square from a quasigroup
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names = (0..5).map(|i| format!("e{i}")).collect::<Vec<_>>();
        assert!(matches!(
            FiniteGroupData::new(names, t),
            Err(GroupError::NotAssociative(_))
        ));
        // duplicate names
        assert!(FiniteGroupData::new(
            vec!["x".into(), "x".into()],
            vec![vec![0, 1], vec![1, 0]]
        )
        .is_err());
    }

    #[test]
    fn inner_witness_detection() {
        let s3 = FiniteGroupData::symmetric(3).unwrap();
        // conjugation by a fixed element is detected
        let h = 2;
        let f: Vec<usize> = (0..s3.order()).map(|g| s3.conj(h, g)).collect();
        let w = s3.inner_witness(&f).unwrap();
        assert!((0..s3.order()).all(|g| s3.conj(w, g) == f[g]));
        // an automorphism that is not inner on an abelian group: inversion on C4
        let c4 = FiniteGroupData::cyclic(4).unwrap();
        let inv_map: Vec<usize> = (0..4).map(|g| c4.inv(g)).collect();
        assert!(c4.inner_witness(&inv_map).is_none());
    }

    #[test]
    fn fold_word_matches_table() {
        let d4 = FiniteGroupData::dihedral(4).unwrap();
        let r = d4.element_index("r").unwrap();
        let s = d4.element_index("s").unwrap();
        // s r s^-1 = r^-1 in D4
        let lhs = d4.fold_word(vec![
            (s, BigInt::from(1)),
            (r, BigInt::from(1)),
            (s, BigInt::from(-1)),
        ])
        .unwrap();
        assert_eq!(lhs, d4.inv(r));
        // r^4 = 1
        assert_eq!(d4.fold_word(vec![(r, BigInt::from(4))]).unwrap(), d4.identity());
    }
}
