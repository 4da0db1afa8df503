use std::collections::BTreeMap;

use super::{Cocycle, FiberAction};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        let bad = |msg: &str| Err(Error::Config(format!("group table: {msg}")));
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return bad("not an n × n table over 0..n");
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return bad("0 is not the identity");
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return bad("not associative");
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for i in 0..n {
            match (0..n).find(|&j| table[i][j] == 0) {
                Some(j) => inverse.push(j),
                None => return bad("missing inverse"),
            }
        }
        Ok(FiniteGroup { table, inverse })
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_table((0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect())
            .expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// A partial cocycle `G × X → A` for finite `G`, `X` and fiber group `A`,
/// with `A` acting on itself by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    group: FiniteGroup,
    action: Vec<Vec<usize>>,
    fiber: FiniteGroup,
    entries: BTreeMap<(usize, usize), usize>,
}

impl CocycleTable {
    /// `action[g][x] = g · x`; must be a left action of `group`.
    pub fn empty(group: FiniteGroup, action: Vec<Vec<usize>>, fiber: FiniteGroup) -> Result<CocycleTable> {
        let points = action.first().map_or(0, Vec::len);
        if action.len() != group.order() || action.iter().any(|row| row.len() != points || row.iter().any(|&p| p >= points)) {
            return Err(Error::Config("action table has the wrong shape".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                for x in 0..points {
                    if action[group.mul(g, h)][x] != action[g][action[h][x]] {
                        return Err(Error::Config(format!("action law fails at ({g}, {h}, {x})")));
                    }
                }
            }
        }
        if (0..points).any(|x| action[0][x] != x) {
            return Err(Error::Config("identity does not act trivially".into()));
        }
        Ok(CocycleTable { group, action, fiber, entries: BTreeMap::new() })
    }

    /// `α(g, x) = φ(g)`.
    pub fn homomorphism(group: FiniteGroup, action: Vec<Vec<usize>>, fiber: FiniteGroup, phi: &[usize]) -> Result<CocycleTable> {
        let mut t = CocycleTable::empty(group, action, fiber)?;
        for g in 0..t.group.order() {
            for x in 0..t.points() {
                t.set(g, x, phi[g])?;
            }
        }
        Ok(t)
    }

    /// `α(g, x) = b(g·x) · b(x)⁻¹`.
    pub fn coboundary(group: FiniteGroup, action: Vec<Vec<usize>>, fiber: FiniteGroup, b: &[usize]) -> Result<CocycleTable> {
        let mut t = CocycleTable::empty(group, action, fiber)?;
        for g in 0..t.group.order() {
            for x in 0..t.points() {
                let v = t.fiber.mul(b[t.action[g][x]], t.fiber.inv(b[x]));
                t.set(g, x, v)?;
            }
        }
        Ok(t)
    }

    pub fn points(&self) -> usize {
        self.action.first().map_or(0, Vec::len)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn fiber(&self) -> &FiniteGroup {
        &self.fiber
    }

    pub fn get(&self, g: usize, x: usize) -> Option<usize> {
        self.entries.get(&(g, x)).copied()
    }

    pub fn set(&mut self, g: usize, x: usize, a: usize) -> Result<()> {
        if g >= self.group.order() || x >= self.points() || a >= self.fiber.order() {
            return Err(Error::Config(format!("entry ({g}, {x}) ↦ {a} out of range")));
        }
        self.entries.insert((g, x), a);
        Ok(())
    }
}

impl Cocycle for CocycleTable {
    type G = usize;
    type X = usize;
    type A = usize;

    fn mul(&self, g2: &usize, g1: &usize) -> usize {
        self.group.mul(*g2, *g1)
    }

    fn act(&self, g: &usize, x: &usize) -> usize {
        self.action[*g][*x]
    }

    fn value(&self, g: &usize, x: &usize) -> Result<usize> {
        self.get(*g, *x).ok_or_else(|| Error::UndefinedEntry(format!("α({g}, {x})")))
    }

    fn compose(&self, a2: &usize, a1: &usize) -> Result<usize> {
        Ok(self.fiber.mul(*a2, *a1))
    }

    fn agree(&self, a: &usize, b: &usize) -> bool {
        a == b
    }
}

impl FiberAction for CocycleTable {
    type Y = usize;

    fn fiber_act(&self, a: &usize, y: &usize) -> Result<usize> {
        Ok(self.fiber.mul(*a, *y))
    }
}
