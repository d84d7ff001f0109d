//! Finite groups as validated multiplication tables.
//!
//! Elements are dense indices `0..order` with the identity pinned at 0, so
//! cochain tables can be indexed by plain radix arithmetic.

use std::sync::Arc;

use crate::error::{Result, TateError};

/// A group element, by index into the owning group's table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elt(pub usize);

/// A finite group given by its full multiplication table.
///
/// Invariants established at construction: the table is a Latin square,
/// multiplication is associative, index 0 is the identity, and every element
/// has an inverse.
#[derive(Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates `table` and builds the group. The table must be square,
    /// with `table[a][b]` the index of the product `a*b`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Arc<Self>> {
        let order = table.len();
        if order == 0 {
            return Err(TateError::TableShape {
                order: 0,
                row: 0,
                len: 0,
            });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(TateError::TableShape {
                    order,
                    row,
                    len: r.len(),
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(TateError::TableEntry {
                        row,
                        col,
                        value,
                        order,
                    });
                }
            }
        }
        for a in 0..order {
            if table[0][a] != a || table[a][0] != a {
                return Err(TateError::BrokenIdentity { at: a });
            }
        }
        for i in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for j in 0..order {
                let rv = table[i][j];
                if seen_row[rv] {
                    return Err(TateError::NotLatin {
                        axis: "row",
                        index: i,
                        value: rv,
                    });
                }
                seen_row[rv] = true;
                let cv = table[j][i];
                if seen_col[cv] {
                    return Err(TateError::NotLatin {
                        axis: "column",
                        index: i,
                        value: cv,
                    });
                }
                seen_col[cv] = true;
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(TateError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut flat = Vec::with_capacity(order * order);
        for r in table {
            flat.extend_from_slice(r);
        }
        // A Latin square with identity and associativity is a group, so the
        // inverse exists in every row.
        let mut inverses = vec![0usize; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| flat[a * order + b] == 0)
                .expect("validated table has inverses");
        }
        Ok(Arc::new(FiniteGroup {
            order,
            table: flat,
            inverses,
        }))
    }

    /// The cyclic group of order `n`: `table[a][b] = (a + b) mod n`.
    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(TateError::TableShape {
                order: 0,
                row: 0,
                len: 0,
            });
        }
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        Self::from_table(&table)
    }

    /// Direct product; the pair (i, j) gets index `i * |H| + j`, keeping the
    /// identity at 0.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Arc<Self>> {
        let order = g.order * h.order;
        let idx = |i: usize, j: usize| i * h.order + j;
        let mut table = vec![vec![0usize; order]; order];
        for i1 in 0..g.order {
            for j1 in 0..h.order {
                for i2 in 0..g.order {
                    for j2 in 0..h.order {
                        table[idx(i1, j1)][idx(i2, j2)] = idx(
                            g.table[i1 * g.order + i2],
                            h.table[j1 * h.order + j2],
                        );
                    }
                }
            }
        }
        Self::from_table(&table)
    }

    /// Product of several factors, folded left to right.
    pub fn product_of(factors: &[Arc<FiniteGroup>]) -> Result<Arc<Self>> {
        let mut it = factors.iter();
        let first = it.next().ok_or(TateError::EmptyProduct)?;
        let mut acc = Arc::clone(first);
        for f in it {
            acc = Self::direct_product(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elt {
        Elt(0)
    }

    pub fn check_index(&self, a: Elt) -> Result<()> {
        if a.0 < self.order {
            Ok(())
        } else {
            Err(TateError::ElementRange {
                index: a.0,
                order: self.order,
            })
        }
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        debug_assert!(a.0 < self.order && b.0 < self.order);
        Elt(self.table[a.0 * self.order + b.0])
    }

    pub fn inv(&self, a: Elt) -> Elt {
        debug_assert!(a.0 < self.order);
        Elt(self.inverses[a.0])
    }

    /// `a^k` for any integer exponent.
    pub fn pow(&self, a: Elt, k: i64) -> Elt {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut cur = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, cur);
            }
            cur = self.mul(cur, cur);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.order).map(Elt)
    }

    pub fn element_order(&self, a: Elt) -> usize {
        let mut cur = a;
        let mut k = 1;
        while cur != self.identity() {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    /// Smallest-index element whose powers exhaust the group, if any.
    pub fn find_generator(&self) -> Option<Elt> {
        self.elements().find(|&a| self.element_order(a) == self.order)
    }

    pub fn is_cyclic(&self) -> bool {
        self.find_generator().is_some()
    }

    /// Iterator over all tuples in `G^len`, in lexicographic order.
    pub fn tuples(&self, len: usize) -> TupleIter {
        TupleIter {
            order: self.order,
            current: vec![0; len],
            done: false,
        }
    }

    /// Number of tuples in `G^len`, guarded against overflow.
    pub fn tuple_count(&self, len: usize) -> u128 {
        (self.order as u128).pow(len as u32)
    }

    /// Radix index of a tuple; tuples sort lexicographically by this index.
    pub fn tuple_index(&self, tuple: &[Elt]) -> usize {
        let mut idx = 0usize;
        for &Elt(t) in tuple {
            debug_assert!(t < self.order);
            idx = idx * self.order + t;
        }
        idx
    }

    /// Inverse of `tuple_index` for tuples of length `len`.
    pub fn tuple_at(&self, mut idx: usize, len: usize) -> Vec<Elt> {
        let mut out = vec![Elt(0); len];
        for slot in out.iter_mut().rev() {
            *slot = Elt(idx % self.order);
            idx /= self.order;
        }
        out
    }
}

/// Lexicographic odometer over `G^len`; yields the single empty tuple for
/// `len = 0`.
pub struct TupleIter {
    order: usize,
    current: Vec<usize>,
    done: bool,
}

impl Iterator for TupleIter {
    type Item = Vec<Elt>;

    fn next(&mut self) -> Option<Vec<Elt>> {
        if self.done {
            return None;
        }
        let out = self.current.iter().map(|&i| Elt(i)).collect();
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.order {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}
