//! Finite groups given by multiplication tables.

use crate::error::{Error, Result};

/// A validated finite group. Element `i` has label `names[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty element set".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::NotAGroup(format!("table is not {n} x {n}")));
        }
        for (a, row) in table.iter().enumerate() {
            if let Some(&bad) = row.iter().find(|&&c| c >= n) {
                return Err(Error::NotAGroup(format!(
                    "product of {} is out of range ({bad})",
                    names[a]
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let i = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", names[a])))?;
            inverse.push(i);
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(Error::NotAGroup(format!("duplicate element {dup}")));
        }
        Ok(GroupTable { names, table, identity, inverse })
    }

    pub fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<GroupTable> {
        let n = names.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        GroupTable::new(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn trivial() -> GroupTable {
        GroupTable::cyclic(1)
    }

    /// ℤ/n with elements `0..n`.
    pub fn cyclic(n: usize) -> GroupTable {
        assert!(n > 0, "cyclic group of order 0");
        let names = (0..n).map(|i| i.to_string()).collect();
        GroupTable::from_fn(names, |a, b| (a + b) % n).expect("cyclic table")
    }

    /// The dihedral group of order `2n`; `r{i}` are rotations and `s{i}` is
    /// the reflection `s·r^i`.
    pub fn dihedral(n: usize) -> GroupTable {
        assert!(n > 0);
        let names = (0..n)
            .map(|i| format!("r{i}"))
            .chain((0..n).map(|i| format!("s{i}")))
            .collect();
        GroupTable::from_fn(names, |a, b| {
            let (k1, i1) = (a / n, a % n);
            let (k2, i2) = (b / n, b % n);
            let i1 = if k2 == 1 { (n - i1) % n } else { i1 };
            ((k1 + k2) % 2) * n + (i1 + i2) % n
        })
        .expect("dihedral table")
    }

    /// The symmetric group on `n` letters; elements are permutations in
    /// one-line notation and `p·q` applies `q` first.
    pub fn symmetric(n: usize) -> GroupTable {
        let perms = permutations(n);
        let names = perms
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<String>())
            .collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        GroupTable::from_fn(names, |a, b| {
            let c: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
            index(&c)
        })
        .expect("symmetric table")
    }

    /// The quaternion group of order 8.
    pub fn quaternion() -> GroupTable {
        // element = sign * unit, unit in {1, i, j, k}
        let units = ["1", "i", "j", "k"];
        let names = (0..8)
            .map(|e| {
                let (neg, u) = (e / 4, e % 4);
                format!("{}{}", if neg == 1 { "-" } else { "" }, units[u])
            })
            .collect();
        // unit products: (sign, unit)
        let unit_mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (0, x),
                (x, y) if x == y => (1, 0),
                (1, 2) => (0, 3),
                (2, 3) => (0, 1),
                (3, 1) => (0, 2),
                (2, 1) => (1, 3),
                (3, 2) => (1, 1),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        GroupTable::from_fn(names, |a, b| {
            let (s, u) = unit_mul(a % 4, b % 4);
            ((a / 4 + b / 4 + s) % 2) * 4 + u
        })
        .expect("quaternion table")
    }

    /// Direct product; the element `(a, b)` is labelled `(a,b)`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let m = other.order();
        let names = self
            .names
            .iter()
            .flat_map(|a| other.names.iter().map(move |b| format!("({a},{b})")))
            .collect();
        GroupTable::from_fn(names, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
        .expect("product table")
    }

    /// One representative of every isomorphism class of groups of order at
    /// most `max_order` (supported up to 8).
    pub fn small_groups(max_order: usize) -> Vec<(String, GroupTable)> {
        assert!(max_order <= 8, "small_groups is tabulated up to order 8");
        let z = GroupTable::cyclic;
        let all = vec![
            ("Z1".to_string(), z(1)),
            ("Z2".to_string(), z(2)),
            ("Z3".to_string(), z(3)),
            ("Z4".to_string(), z(4)),
            ("Z2xZ2".to_string(), z(2).product(&z(2))),
            ("Z5".to_string(), z(5)),
            ("Z6".to_string(), z(6)),
            ("S3".to_string(), GroupTable::symmetric(3)),
            ("Z7".to_string(), z(7)),
            ("Z8".to_string(), z(8)),
            ("Z4xZ2".to_string(), z(4).product(&z(2))),
            ("Z2xZ2xZ2".to_string(), z(2).product(&z(2)).product(&z(2))),
            ("D4".to_string(), GroupTable::dihedral(4)),
            ("Q8".to_string(), GroupTable::quaternion()),
        ];
        all.into_iter().filter(|(_, g)| g.order() <= max_order).collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_tables_are_groups() {
        for (name, g) in GroupTable::small_groups(8) {
            assert!(g.order() >= 1, "{name}");
        }
        assert_eq!(GroupTable::symmetric(3).order(), 6);
        assert!(!GroupTable::symmetric(3).is_abelian());
        assert!(!GroupTable::dihedral(4).is_abelian());
        assert!(!GroupTable::quaternion().is_abelian());
        assert_eq!(GroupTable::small_groups(8).len(), 14);
    }

    #[test]
    fn rejects_non_groups() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        assert!(GroupTable::new(names.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(GroupTable::new(names.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(names, vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(GroupTable::new(vec![], vec![]).is_err());
    }

    #[test]
    fn quaternion_relations() {
        let q = GroupTable::quaternion();
        let (i, j, k) = (q.index_of("i").unwrap(), q.index_of("j").unwrap(), q.index_of("k").unwrap());
        let m1 = q.index_of("-1").unwrap();
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(q.mul(i, j), k), m1);
    }
}
