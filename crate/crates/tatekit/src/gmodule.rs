//! Finitely presented abelian groups with a group action: the coefficient
//! objects for all cohomology computations.
//!
//! A module is Z^rank / (column lattice of `relations`), with one action
//! matrix per group element. Elements are kept in canonical form (reduced
//! against the Hermite basis of the relation lattice), so equality is
//! coordinate equality.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, TateError};
use crate::group::{Elt, FiniteGroup};
use crate::linalg::{
    lattice_basis, reduce_mod_echelon, solve_echelon, IntMatrix,
};

#[derive(Debug)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    name: String,
    rank: usize,
    relations: IntMatrix,
    action: Vec<IntMatrix>,
    rel_basis: IntMatrix,
}

impl GModule {
    /// Validates the action laws and builds the module. `relations` columns
    /// span the relation lattice; an empty matrix gives a free lattice.
    pub fn new(
        group: Arc<FiniteGroup>,
        name: impl Into<String>,
        rank: usize,
        relations: IntMatrix,
        action: Vec<IntMatrix>,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        let law = |law: String| TateError::ModuleLaw {
            name: name.clone(),
            law,
        };
        if relations.rows != rank {
            return Err(law(format!(
                "relation matrix has {} rows, expected rank {}",
                relations.rows, rank
            )));
        }
        if action.len() != group.order() {
            return Err(law(format!(
                "need one action matrix per element: got {}, order is {}",
                action.len(),
                group.order()
            )));
        }
        for (g, m) in action.iter().enumerate() {
            if m.rows != rank || m.cols != rank {
                return Err(law(format!(
                    "action matrix for element {} is {}x{}, expected {}x{}",
                    g, m.rows, m.cols, rank, rank
                )));
            }
        }
        let rel_basis = lattice_basis(&relations);
        let in_rel = |v: &[BigInt]| reduce_mod_echelon(&rel_basis, v).iter().all(|e| e.is_zero());
        // Identity acts as the identity on the quotient.
        let id_diff = action[0].sub(&IntMatrix::identity(rank));
        for j in 0..rank {
            if !in_rel(&id_diff.col(j)) {
                return Err(law("identity element must act as the identity".into()));
            }
        }
        // Each action preserves the relation lattice, so it descends.
        for g in 0..group.order() {
            for j in 0..relations.cols {
                let img = action[g].mul_vec(&relations.col(j));
                if solve_echelon(&rel_basis, &img).is_none() {
                    return Err(law(format!(
                        "action of element {} does not preserve relation column {}",
                        g, j
                    )));
                }
            }
        }
        // Homomorphism law on the quotient.
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                let diff = action[a.0].mul(&action[b.0]).sub(&action[ab.0]);
                for j in 0..rank {
                    if !in_rel(&diff.col(j)) {
                        return Err(law(format!(
                            "action is not a homomorphism at elements ({}, {})",
                            a.0, b.0
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(GModule {
            group,
            name,
            rank,
            relations,
            action,
            rel_basis,
        }))
    }

    /// Z with the trivial action.
    pub fn trivial_z(group: &Arc<FiniteGroup>) -> Arc<Self> {
        let n = group.order();
        Self::new(
            Arc::clone(group),
            "Z",
            1,
            IntMatrix::zeros(1, 0),
            vec![IntMatrix::identity(1); n],
        )
        .expect("trivial module is valid")
    }

    /// Z/m with the trivial action.
    pub fn trivial_z_mod(group: &Arc<FiniteGroup>, m: u64) -> Arc<Self> {
        let n = group.order();
        Self::new(
            Arc::clone(group),
            format!("Z/{m}"),
            1,
            IntMatrix::from_fn(1, 1, |_, _| BigInt::from(m)),
            vec![IntMatrix::identity(1); n],
        )
        .expect("trivial quotient module is valid")
    }

    /// Free lattice with one explicit action matrix per element.
    pub fn lattice(
        group: &Arc<FiniteGroup>,
        name: impl Into<String>,
        action: Vec<IntMatrix>,
    ) -> Result<Arc<Self>> {
        let rank = action.first().map_or(0, |m| m.rows);
        Self::new(
            Arc::clone(group),
            name,
            rank,
            IntMatrix::zeros(rank, 0),
            action,
        )
    }

    /// Quotient of a lattice by explicit relations.
    pub fn lattice_mod(
        group: &Arc<FiniteGroup>,
        name: impl Into<String>,
        action: Vec<IntMatrix>,
        relations: IntMatrix,
    ) -> Result<Arc<Self>> {
        let rank = action.first().map_or(0, |m| m.rows);
        Self::new(Arc::clone(group), name, rank, relations, action)
    }

    /// Lattice over a cyclic group given by the action of a generator; the
    /// action of sigma^k is the k-th matrix power.
    pub fn lattice_from_sigma(
        group: &Arc<FiniteGroup>,
        name: impl Into<String>,
        sigma_action: IntMatrix,
    ) -> Result<Arc<Self>> {
        Self::lattice_mod_from_sigma(group, name, sigma_action, None)
    }

    pub fn lattice_mod_from_sigma(
        group: &Arc<FiniteGroup>,
        name: impl Into<String>,
        sigma_action: IntMatrix,
        relations: Option<IntMatrix>,
    ) -> Result<Arc<Self>> {
        let sigma = group.find_generator().ok_or(TateError::NotCyclic)?;
        let rank = sigma_action.rows;
        let mut action = vec![IntMatrix::identity(rank); group.order()];
        let mut cur = group.identity();
        let mut pow = IntMatrix::identity(rank);
        for _ in 0..group.order() {
            action[cur.0] = pow.clone();
            cur = group.mul(cur, sigma);
            pow = pow.mul(&sigma_action);
        }
        let relations = relations.unwrap_or_else(|| IntMatrix::zeros(rank, 0));
        Self::new(Arc::clone(group), name, rank, relations, action)
    }

    /// The regular representation Z[G]: permutation matrices of left
    /// translation on the basis indexed by group elements.
    pub fn regular(group: &Arc<FiniteGroup>) -> Arc<Self> {
        let n = group.order();
        let action = group
            .elements()
            .map(|g| {
                IntMatrix::from_fn(n, n, |i, j| {
                    if group.mul(g, Elt(j)).0 == i {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
            })
            .collect();
        Self::new(
            Arc::clone(group),
            "Z[G]",
            n,
            IntMatrix::zeros(n, 0),
            action,
        )
        .expect("regular representation is valid")
    }

    /// Structural copy with the relations dropped and no law validation.
    /// The stored actions may satisfy the module laws only modulo the
    /// dropped relations, so this is not a module in general; it only
    /// serves to express linear maps on free coordinates.
    pub(crate) fn free_cover(self: &Arc<Self>) -> Arc<GModule> {
        if self.is_free() {
            return Arc::clone(self);
        }
        Arc::new(GModule {
            group: Arc::clone(&self.group),
            name: format!("{}^free", self.name),
            rank: self.rank,
            relations: IntMatrix::zeros(self.rank, 0),
            action: self.action.clone(),
            rel_basis: IntMatrix::zeros(self.rank, 0),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Canonical echelon basis of the relation lattice.
    pub fn relation_basis(&self) -> &IntMatrix {
        &self.rel_basis
    }

    pub fn is_free(&self) -> bool {
        self.rel_basis.cols == 0
    }

    pub fn action_matrix(&self, g: Elt) -> &IntMatrix {
        &self.action[g.0]
    }

    /// Sum of all action matrices.
    pub fn norm_matrix(&self) -> IntMatrix {
        let mut n = IntMatrix::zeros(self.rank, self.rank);
        for g in self.group.elements() {
            n = n.add(&self.action[g.0]);
        }
        n
    }

    pub fn reduce_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        reduce_mod_echelon(&self.rel_basis, v)
    }

    pub fn act_vec(&self, g: Elt, v: &[BigInt]) -> Vec<BigInt> {
        self.reduce_vec(&self.action[g.0].mul_vec(v))
    }

    pub fn zero_vec(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank]
    }

    /// Structural compatibility: same group table, same rank, same relation
    /// lattice, and actions that agree on the quotient. This is what makes
    /// elements of independently built modules comparable.
    pub fn compatible(&self, other: &GModule) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.rank != other.rank || self.rel_basis != other.rel_basis {
            return false;
        }
        if !Arc::ptr_eq(&self.group, &other.group) && self.group != other.group {
            return false;
        }
        self.group.elements().all(|g| {
            let diff = self.action[g.0].sub(&other.action[g.0]);
            (0..self.rank).all(|j| {
                reduce_mod_echelon(&self.rel_basis, &diff.col(j))
                    .iter()
                    .all(|e| e.is_zero())
            })
        })
    }
}

/// Tensor product over Z with the diagonal action. Basis vector (i, j) of
/// A⊗B has index i*rank(B) + j, matching the Kronecker convention.
pub fn tensor_module(a: &Arc<GModule>, b: &Arc<GModule>) -> Result<Arc<GModule>> {
    if !Arc::ptr_eq(&a.group, &b.group) && a.group != b.group {
        return Err(TateError::GroupMismatch {
            context: "tensor_module",
        });
    }
    let action = a
        .group
        .elements()
        .map(|g| a.action[g.0].kron(&b.action[g.0]))
        .collect();
    let rel = a
        .relations
        .kron(&IntMatrix::identity(b.rank))
        .hstack(&IntMatrix::identity(a.rank).kron(&b.relations));
    GModule::new(
        Arc::clone(&a.group),
        format!("{}(x){}", a.name, b.name),
        a.rank * b.rank,
        rel,
        action,
    )
}

/// A module element in canonical form.
#[derive(Debug, Clone)]
pub struct ModElement {
    module: Arc<GModule>,
    coords: Vec<BigInt>,
}

impl ModElement {
    pub fn new(module: &Arc<GModule>, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != module.rank {
            return Err(TateError::CoordLength {
                got: coords.len(),
                rank: module.rank,
            });
        }
        Ok(ModElement {
            coords: module.reduce_vec(&coords),
            module: Arc::clone(module),
        })
    }

    pub fn from_i64(module: &Arc<GModule>, coords: &[i64]) -> Result<Self> {
        Self::new(module, coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(module: &Arc<GModule>) -> Self {
        ModElement {
            coords: module.zero_vec(),
            module: Arc::clone(module),
        }
    }

    pub fn basis(module: &Arc<GModule>, i: usize) -> Self {
        let mut coords = module.zero_vec();
        coords[i] = BigInt::one();
        ModElement {
            coords: module.reduce_vec(&coords),
            module: Arc::clone(module),
        }
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|e| e.is_zero())
    }

    pub fn act(&self, g: Elt) -> Self {
        ModElement {
            coords: self.module.act_vec(g, &self.coords),
            module: Arc::clone(&self.module),
        }
    }

    pub fn add(&self, other: &ModElement) -> Self {
        debug_assert!(self.module.compatible(&other.module));
        let sum: Vec<BigInt> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        ModElement {
            coords: self.module.reduce_vec(&sum),
            module: Arc::clone(&self.module),
        }
    }

    pub fn sub(&self, other: &ModElement) -> Self {
        debug_assert!(self.module.compatible(&other.module));
        let d: Vec<BigInt> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        ModElement {
            coords: self.module.reduce_vec(&d),
            module: Arc::clone(&self.module),
        }
    }

    pub fn neg(&self) -> Self {
        let n: Vec<BigInt> = self.coords.iter().map(|a| -a).collect();
        ModElement {
            coords: self.module.reduce_vec(&n),
            module: Arc::clone(&self.module),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let s: Vec<BigInt> = self.coords.iter().map(|a| a * k).collect();
        ModElement {
            coords: self.module.reduce_vec(&s),
            module: Arc::clone(&self.module),
        }
    }

    /// Sum of g.v over the whole group.
    pub fn norm(&self) -> Self {
        ModElement {
            coords: self
                .module
                .reduce_vec(&self.module.norm_matrix().mul_vec(&self.coords)),
            module: Arc::clone(&self.module),
        }
    }
}

impl PartialEq for ModElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.module, &other.module) || self.module.compatible(&other.module))
            && self.coords == other.coords
    }
}

impl Eq for ModElement {}
