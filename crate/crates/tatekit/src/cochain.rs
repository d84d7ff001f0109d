//! Cochains on the complete standard resolution, in homogeneous and
//! inhomogeneous coordinates, with differentials in every integer degree.
//!
//! Degree conventions. A homogeneous cochain of degree n is an equivariant
//! map on tuples of length `harity(n)`; an inhomogeneous cochain takes
//! `arity(n)` arguments, always one fewer. Tables are stored flat in
//! lexicographic tuple order with canonical module coordinates, so equality
//! is table equality.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Result, TateError};
use crate::gmodule::{GModule, ModElement};
use crate::group::{Elt, FiniteGroup};

/// Largest |degree| the library will touch. Differentials need degree+1 to
/// stay inside the bound too.
pub const MAX_DEGREE: i64 = 6;

/// Ceiling on the number of table generators (tuples times module rank) at
/// any level of a complex.
pub const MAX_GENERATORS: u128 = 20_000;

/// Number of arguments of an inhomogeneous cochain of the given degree.
pub fn arity(degree: i64) -> usize {
    if degree >= 1 {
        degree as usize
    } else if degree >= -1 {
        0
    } else {
        (-degree - 1) as usize
    }
}

/// Tuple length of the resolution basis in the given degree, which is the
/// argument count of a homogeneous cochain.
pub fn harity(degree: i64) -> usize {
    if degree >= 0 {
        (degree + 1) as usize
    } else {
        (-degree) as usize
    }
}

pub fn check_degree(degree: i64) -> Result<()> {
    if degree.abs() > MAX_DEGREE {
        return Err(TateError::DegreeRange {
            degree,
            bound: MAX_DEGREE,
        });
    }
    Ok(())
}

pub(crate) fn check_table_size(
    module: &GModule,
    tuple_len: usize,
    what: &'static str,
) -> Result<()> {
    let needed = module.group().tuple_count(tuple_len) * module.rank() as u128;
    if needed > MAX_GENERATORS {
        return Err(TateError::SizeGuard {
            what,
            needed,
            limit: MAX_GENERATORS,
        });
    }
    Ok(())
}

/// Boundary of one basis tuple of the resolution, as a signed formal sum of
/// basis tuples one degree down. `degree` is the degree of the input tuple,
/// whose length must be `harity(degree)`.
///
/// Three regimes: positive degrees delete each entry in turn; degree zero
/// sends any generator to the sum of all length-one tuples; negative
/// degrees insert every group element at every position.
pub fn resolution_boundary(
    group: &FiniteGroup,
    degree: i64,
    tuple: &[Elt],
) -> Vec<(i64, Vec<Elt>)> {
    assert_eq!(tuple.len(), harity(degree), "tuple length vs degree");
    let mut out = Vec::new();
    if degree >= 1 {
        for i in 0..tuple.len() {
            let mut t = tuple.to_vec();
            t.remove(i);
            out.push((if i % 2 == 0 { 1 } else { -1 }, t));
        }
    } else if degree == 0 {
        for h in group.elements() {
            out.push((1, vec![h]));
        }
    } else {
        let k = tuple.len();
        for h in group.elements() {
            for i in 0..=k {
                let mut t = tuple.to_vec();
                t.insert(i, h);
                out.push((if i % 2 == 0 { 1 } else { -1 }, t));
            }
        }
    }
    out
}

fn table_zero(module: &GModule, tuple_len: usize) -> Vec<BigInt> {
    let count = module.group().tuple_count(tuple_len) as usize;
    vec![BigInt::zero(); count * module.rank()]
}

fn table_slot<'a>(
    module: &GModule,
    table: &'a mut [BigInt],
    args: &[Elt],
) -> &'a mut [BigInt] {
    let r = module.rank();
    let idx = module.group().tuple_index(args);
    &mut table[idx * r..(idx + 1) * r]
}

/// Inhomogeneous cochain: a table over `arity(degree)`-tuples.
#[derive(Debug, Clone)]
pub struct InhCochain {
    module: Arc<GModule>,
    degree: i64,
    table: Vec<BigInt>,
}

impl InhCochain {
    pub fn zero(module: &Arc<GModule>, degree: i64) -> Result<Self> {
        check_degree(degree)?;
        check_table_size(module, arity(degree), "inhomogeneous cochain")?;
        Ok(InhCochain {
            module: Arc::clone(module),
            degree,
            table: table_zero(module, arity(degree)),
        })
    }

    pub fn from_fn(
        module: &Arc<GModule>,
        degree: i64,
        mut f: impl FnMut(&[Elt]) -> ModElement,
    ) -> Result<Self> {
        let mut c = Self::zero(module, degree)?;
        for t in module.group().tuples(arity(degree)) {
            let v = f(&t);
            assert!(
                v.module().compatible(module),
                "cochain value from an incompatible module"
            );
            table_slot(module, &mut c.table, &t).clone_from_slice(v.coords());
        }
        Ok(c)
    }

    /// Uniform random table with entries in a small symmetric range.
    pub fn random(module: &Arc<GModule>, degree: i64, rng: &mut impl Rng) -> Result<Self> {
        let mut c = Self::zero(module, degree)?;
        let r = module.rank();
        for i in 0..c.table.len() / r.max(1) {
            let raw: Vec<BigInt> = (0..r).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            let red = module.reduce_vec(&raw);
            c.table[i * r..(i + 1) * r].clone_from_slice(&red);
        }
        Ok(c)
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn arity(&self) -> usize {
        arity(self.degree)
    }

    pub fn get(&self, args: &[Elt]) -> ModElement {
        let r = self.module.rank();
        let idx = self.module.group().tuple_index(args);
        ModElement::new(&self.module, self.table[idx * r..(idx + 1) * r].to_vec())
            .expect("stored coordinates have module rank")
    }

    pub fn set(&mut self, args: &[Elt], v: &ModElement) {
        assert!(v.module().compatible(&self.module));
        table_slot(&self.module, &mut self.table, args).clone_from_slice(v.coords());
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|e| e.is_zero())
    }

    fn zip_with(&self, other: &InhCochain, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> InhCochain {
        assert_eq!(self.degree, other.degree, "cochain degrees differ");
        assert!(self.module.compatible(&other.module), "cochain modules differ");
        let r = self.module.rank().max(1);
        let mut table = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() / r {
            let raw: Vec<BigInt> = (0..r)
                .map(|j| f(&self.table[i * r + j], &other.table[i * r + j]))
                .collect();
            table.extend(self.module.reduce_vec(&raw));
        }
        InhCochain {
            module: Arc::clone(&self.module),
            degree: self.degree,
            table,
        }
    }

    pub fn add(&self, other: &InhCochain) -> InhCochain {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &InhCochain) -> InhCochain {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> InhCochain {
        self.map_values(|a| -a)
    }

    pub fn scale(&self, k: &BigInt) -> InhCochain {
        self.map_values(|a| a * k)
    }

    fn map_values(&self, f: impl Fn(&BigInt) -> BigInt) -> InhCochain {
        let r = self.module.rank().max(1);
        let mut table = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() / r {
            let raw: Vec<BigInt> = (0..r).map(|j| f(&self.table[i * r + j])).collect();
            table.extend(self.module.reduce_vec(&raw));
        }
        InhCochain {
            module: Arc::clone(&self.module),
            degree: self.degree,
            table,
        }
    }

    /// Flat canonical table, tuple-major.
    pub fn coords(&self) -> &[BigInt] {
        &self.table
    }

    pub fn to_homogeneous(&self) -> Result<HomCochain> {
        let k = harity(self.degree);
        check_table_size(&self.module, k, "homogeneous cochain")?;
        let g = Arc::clone(self.module.group());
        let mut out = HomCochain {
            module: Arc::clone(&self.module),
            degree: self.degree,
            table: table_zero(&self.module, k),
        };
        for t in g.tuples(k) {
            let mut args = Vec::with_capacity(k - 1);
            for i in 0..k - 1 {
                args.push(g.mul(g.inv(t[i]), t[i + 1]));
            }
            let v = self.get(&args).act(t[0]);
            table_slot(&self.module, &mut out.table, &t).clone_from_slice(v.coords());
        }
        Ok(out)
    }

    /// Differential into degree+1, computed from closed forms that agree
    /// with the homogeneous differential under the coordinate change.
    pub fn diff(&self) -> Result<InhCochain> {
        let n = self.degree;
        check_degree(n + 1)?;
        let g = Arc::clone(self.module.group());
        if n >= 1 {
            let n_us = n as usize;
            InhCochain::from_fn(&self.module, n + 1, |h| {
                let mut acc = self.get(&h[1..]).act(h[0]);
                let mut sign_neg = true;
                for i in 1..=n_us {
                    let mut args = Vec::with_capacity(n_us);
                    args.extend_from_slice(&h[..i - 1]);
                    args.push(g.mul(h[i - 1], h[i]));
                    args.extend_from_slice(&h[i + 1..]);
                    let term = self.get(&args);
                    acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
                    sign_neg = !sign_neg;
                }
                let last = self.get(&h[..n_us]);
                if sign_neg {
                    acc.sub(&last)
                } else {
                    acc.add(&last)
                }
            })
        } else if n == 0 {
            let a = self.get(&[]);
            InhCochain::from_fn(&self.module, 1, |h| a.act(h[0]).sub(&a))
        } else if n == -1 {
            let a = self.get(&[]);
            let mut acc = ModElement::zero(&self.module);
            for h in g.elements() {
                acc = acc.add(&a.act(h));
            }
            InhCochain::from_fn(&self.module, 0, |_| acc.clone())
        } else {
            // n <= -2, k = -n: sum over the group of one pulled-back
            // insertion per position.
            let k = (-n) as usize;
            InhCochain::from_fn(&self.module, n + 1, |hargs| {
                let mut w = Vec::with_capacity(k - 1);
                w.push(g.identity());
                for (j, &h) in hargs.iter().enumerate() {
                    w.push(g.mul(w[j], h));
                }
                let mut acc = ModElement::zero(&self.module);
                for h in g.elements() {
                    let hinv = g.inv(h);
                    let mut front = Vec::with_capacity(k - 1);
                    front.push(hinv);
                    front.extend_from_slice(hargs);
                    acc = acc.add(&self.get(&front).act(h));
                    for i in 1..=k - 2 {
                        let mut args = Vec::with_capacity(k - 1);
                        args.extend_from_slice(&hargs[..i - 1]);
                        args.push(g.mul(g.inv(w[i - 1]), h));
                        args.push(g.mul(hinv, w[i]));
                        args.extend_from_slice(&hargs[i..]);
                        let term = self.get(&args);
                        acc = if i % 2 == 1 { acc.sub(&term) } else { acc.add(&term) };
                    }
                    let mut back = Vec::with_capacity(k - 1);
                    back.extend_from_slice(hargs);
                    back.push(g.mul(g.inv(w[k - 2]), h));
                    let term = self.get(&back);
                    acc = if (k - 1) % 2 == 1 { acc.sub(&term) } else { acc.add(&term) };
                }
                acc
            })
        }
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        Ok(self.diff()?.is_zero())
    }
}

impl PartialEq for InhCochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.module.compatible(&other.module)
            && self.table == other.table
    }
}

impl Eq for InhCochain {}

/// Homogeneous cochain: an equivariant table over `harity(degree)`-tuples.
#[derive(Debug, Clone)]
pub struct HomCochain {
    module: Arc<GModule>,
    degree: i64,
    table: Vec<BigInt>,
}

impl HomCochain {
    pub fn zero(module: &Arc<GModule>, degree: i64) -> Result<Self> {
        check_degree(degree)?;
        check_table_size(module, harity(degree), "homogeneous cochain")?;
        Ok(HomCochain {
            module: Arc::clone(module),
            degree,
            table: table_zero(module, harity(degree)),
        })
    }

    /// Builds from a value function and then checks equivariance, which a
    /// raw table does not guarantee.
    pub fn from_fn(
        module: &Arc<GModule>,
        degree: i64,
        mut f: impl FnMut(&[Elt]) -> ModElement,
    ) -> Result<Self> {
        let mut c = Self::zero(module, degree)?;
        for t in module.group().tuples(harity(degree)) {
            let v = f(&t);
            assert!(
                v.module().compatible(module),
                "cochain value from an incompatible module"
            );
            table_slot(module, &mut c.table, &t).clone_from_slice(v.coords());
        }
        c.check_equivariant()?;
        Ok(c)
    }

    /// Equivariant cochains correspond one to one with inhomogeneous ones,
    /// so a random equivariant table is a converted random table.
    pub fn random(module: &Arc<GModule>, degree: i64, rng: &mut impl Rng) -> Result<Self> {
        InhCochain::random(module, degree, rng)?.to_homogeneous()
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn harity(&self) -> usize {
        harity(self.degree)
    }

    pub fn get(&self, args: &[Elt]) -> ModElement {
        let r = self.module.rank();
        let idx = self.module.group().tuple_index(args);
        ModElement::new(&self.module, self.table[idx * r..(idx + 1) * r].to_vec())
            .expect("stored coordinates have module rank")
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &HomCochain) -> HomCochain {
        assert_eq!(self.degree, other.degree, "cochain degrees differ");
        assert!(self.module.compatible(&other.module), "cochain modules differ");
        let r = self.module.rank().max(1);
        let mut table = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() / r {
            let raw: Vec<BigInt> = (0..r)
                .map(|j| &self.table[i * r + j] + &other.table[i * r + j])
                .collect();
            table.extend(self.module.reduce_vec(&raw));
        }
        HomCochain {
            module: Arc::clone(&self.module),
            degree: self.degree,
            table,
        }
    }

    pub fn sub(&self, other: &HomCochain) -> HomCochain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomCochain {
        let r = self.module.rank().max(1);
        let mut table = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() / r {
            let raw: Vec<BigInt> = (0..r).map(|j| -&self.table[i * r + j]).collect();
            table.extend(self.module.reduce_vec(&raw));
        }
        HomCochain {
            module: Arc::clone(&self.module),
            degree: self.degree,
            table,
        }
    }

    pub fn check_equivariant(&self) -> Result<()> {
        let g = self.module.group();
        for t in g.tuples(harity(self.degree)) {
            let base = self.get(&t);
            for s in g.elements() {
                let shifted: Vec<Elt> = t.iter().map(|&x| g.mul(s, x)).collect();
                if self.get(&shifted) != base.act(s) {
                    return Err(TateError::NotEquivariant {
                        g: s.0,
                        tuple: t.iter().map(|e| e.0).collect(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_inhomogeneous(&self) -> Result<InhCochain> {
        let a = arity(self.degree);
        check_table_size(&self.module, a, "inhomogeneous cochain")?;
        let g = Arc::clone(self.module.group());
        InhCochain::from_fn(&self.module, self.degree, |h| {
            let mut t = Vec::with_capacity(a + 1);
            t.push(g.identity());
            for (j, &x) in h.iter().enumerate() {
                t.push(g.mul(t[j], x));
            }
            self.get(&t)
        })
    }

    /// Differential as the dual of the resolution boundary one degree up.
    pub fn diff(&self) -> Result<HomCochain> {
        let n = self.degree;
        check_degree(n + 1)?;
        check_table_size(&self.module, harity(n + 1), "homogeneous cochain")?;
        let g = Arc::clone(self.module.group());
        let mut out = HomCochain {
            module: Arc::clone(&self.module),
            degree: n + 1,
            table: table_zero(&self.module, harity(n + 1)),
        };
        for t in g.tuples(harity(n + 1)) {
            let mut acc = ModElement::zero(&self.module);
            for (sign, face) in resolution_boundary(&g, n + 1, &t) {
                let v = self.get(&face);
                acc = if sign < 0 { acc.sub(&v) } else { acc.add(&v) };
            }
            table_slot(&self.module, &mut out.table, &t).clone_from_slice(acc.coords());
        }
        Ok(out)
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        Ok(self.diff()?.is_zero())
    }
}

impl PartialEq for HomCochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.module.compatible(&other.module)
            && self.table == other.table
    }
}

impl Eq for HomCochain {}
