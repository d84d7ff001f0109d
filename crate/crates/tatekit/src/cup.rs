//! Cup products of cochains in every pair of degrees, valued in the tensor
//! product module.
//!
//! The plane of degree pairs (m, n) splits into six regimes. Two are
//! pointwise (both degrees nonnegative, both negative); the other four sum
//! over auxiliary group tuples. Homogeneous and inhomogeneous versions are
//! implemented independently and agree under the coordinate change, which
//! the tests pin down.

use std::sync::Arc;

use num_traits::Zero;

use crate::cochain::{arity, harity, HomCochain, InhCochain};
use crate::error::{Result, TateError};
use crate::gmodule::{tensor_module, GModule, ModElement};
use crate::group::{Elt, FiniteGroup};

/// Default ceiling on the elementary operation estimate for one product.
pub const DEFAULT_OP_LIMIT: u128 = 10_000_000;

/// The six degree regimes, named by the signs of the factor degrees and,
/// where those are mixed, the sign of the result degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CupRegime {
    NonnegNonneg,
    NegNeg,
    NonnegNegToNeg,
    NegNonnegToNeg,
    PosNegToNonneg,
    NegPosToNonneg,
}

/// Every integer pair lands in exactly one regime.
pub fn regime_for(m: i64, n: i64) -> CupRegime {
    if m >= 0 && n >= 0 {
        CupRegime::NonnegNonneg
    } else if m < 0 && n < 0 {
        CupRegime::NegNeg
    } else if m >= 0 && n < 0 {
        if m + n < 0 {
            CupRegime::NonnegNegToNeg
        } else {
            CupRegime::PosNegToNonneg
        }
    } else if m + n < 0 {
        CupRegime::NegNonnegToNeg
    } else {
        CupRegime::NegPosToNonneg
    }
}

fn product(g: &FiniteGroup, elts: &[Elt]) -> Elt {
    elts.iter().fold(g.identity(), |acc, &x| g.mul(acc, x))
}

fn rev_inv(g: &FiniteGroup, elts: &[Elt]) -> Vec<Elt> {
    elts.iter().rev().map(|&x| g.inv(x)).collect()
}

/// Coordinates of u (x) v in the Kronecker layout of the tensor module.
fn tensor_elem(tm: &Arc<GModule>, u: &ModElement, v: &ModElement) -> ModElement {
    let rb = v.coords().len();
    let mut w = vec![num_bigint::BigInt::zero(); u.coords().len() * rb];
    for (i, ui) in u.coords().iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.coords().iter().enumerate() {
            w[i * rb + j] = ui * vj;
        }
    }
    ModElement::new(tm, w).expect("tensor coordinates have tensor rank")
}

fn check_ops(
    g: &FiniteGroup,
    out_len: usize,
    sum_len: usize,
    ra: usize,
    rb: usize,
    limit: u128,
) -> Result<()> {
    let estimated = g.tuple_count(out_len)
        * g.tuple_count(sum_len)
        * ra.max(1) as u128
        * rb.max(1) as u128;
    if estimated > limit {
        return Err(TateError::OpGuard { estimated, limit });
    }
    Ok(())
}

fn common_group<'a>(a: &'a GModule, b: &GModule) -> Result<&'a Arc<FiniteGroup>> {
    if !Arc::ptr_eq(a.group(), b.group()) && a.group() != b.group() {
        return Err(TateError::GroupMismatch { context: "cup product" });
    }
    Ok(a.group())
}

pub fn cup_inh(a: &InhCochain, b: &InhCochain) -> Result<InhCochain> {
    cup_inh_limited(a, b, DEFAULT_OP_LIMIT)
}

/// Inhomogeneous cup product. The variable names follow the staircase
/// shape: the output arguments are h's, the summed tuple is t.
pub fn cup_inh_limited(a: &InhCochain, b: &InhCochain, limit: u128) -> Result<InhCochain> {
    let g = Arc::clone(common_group(a.module(), b.module())?);
    let tm = tensor_module(a.module(), b.module())?;
    let (m, n) = (a.degree(), b.degree());
    let out_deg = m + n;
    crate::cochain::check_degree(out_deg)?;
    let (ra, rb) = (a.module().rank(), b.module().rank());

    match regime_for(m, n) {
        CupRegime::NonnegNonneg => {
            let p = m as usize;
            check_ops(&g, arity(out_deg), 0, ra, rb, limit)?;
            InhCochain::from_fn(&tm, out_deg, |h| {
                let left = a.get(&h[..p]);
                let w = product(&g, &h[..p]);
                tensor_elem(&tm, &left, &b.get(&h[p..]).act(w))
            })
        }
        CupRegime::NegNeg => {
            let p = (-m) as usize;
            check_ops(&g, arity(out_deg), 0, ra, rb, limit)?;
            InhCochain::from_fn(&tm, out_deg, |h| {
                let left = a.get(&h[..p - 1]);
                let w = product(&g, &h[..p]);
                tensor_elem(&tm, &left, &b.get(&h[p..]).act(w))
            })
        }
        CupRegime::NonnegNegToNeg => {
            let p = m as usize;
            check_ops(&g, arity(out_deg), p, ra, rb, limit)?;
            InhCochain::from_fn(&tm, out_deg, |h| {
                let mut acc = ModElement::zero(&tm);
                for t in g.tuples(p) {
                    let left = a.get(&t);
                    let w = product(&g, &t);
                    let mut args = rev_inv(&g, &t);
                    args.extend_from_slice(h);
                    acc = acc.add(&tensor_elem(&tm, &left, &b.get(&args).act(w)));
                }
                acc
            })
        }
        CupRegime::NegNonnegToNeg => {
            let p = n as usize;
            check_ops(&g, arity(out_deg), p, ra, rb, limit)?;
            InhCochain::from_fn(&tm, out_deg, |h| {
                let mut acc = ModElement::zero(&tm);
                for t in g.tuples(p) {
                    let mut args = h.to_vec();
                    args.extend_from_slice(&t);
                    let left = a.get(&args);
                    let w = g.mul(product(&g, h), product(&g, &t));
                    let right = b.get(&rev_inv(&g, &t)).act(w);
                    acc = acc.add(&tensor_elem(&tm, &left, &right));
                }
                acc
            })
        }
        CupRegime::PosNegToNonneg => {
            let q = (-n) as usize;
            check_ops(&g, arity(out_deg), q, ra, rb, limit)?;
            InhCochain::from_fn(&tm, out_deg, |h| {
                let mut acc = ModElement::zero(&tm);
                for t in g.tuples(q) {
                    let mut args = h.to_vec();
                    args.extend_from_slice(&t);
                    let left = a.get(&args);
                    let w = g.mul(product(&g, h), product(&g, &t));
                    let right = b.get(&rev_inv(&g, &t[1..])).act(w);
                    acc = acc.add(&tensor_elem(&tm, &left, &right));
                }
                acc
            })
        }
        CupRegime::NegPosToNonneg => {
            let q = (-m) as usize;
            check_ops(&g, arity(out_deg), q, ra, rb, limit)?;
            InhCochain::from_fn(&tm, out_deg, |h| {
                let mut acc = ModElement::zero(&tm);
                for t in g.tuples(q) {
                    let left = a.get(&t[1..]).act(t[0]);
                    let w = product(&g, &t);
                    let mut args = rev_inv(&g, &t);
                    args.extend_from_slice(h);
                    let right = b.get(&args).act(w);
                    acc = acc.add(&tensor_elem(&tm, &left, &right));
                }
                acc
            })
        }
    }
}

pub fn cup_hom(a: &HomCochain, b: &HomCochain) -> Result<HomCochain> {
    cup_hom_limited(a, b, DEFAULT_OP_LIMIT)
}

/// Homogeneous cup product. Overlapping or reversed argument blocks are
/// taken literally from the regime shapes; no translations appear because
/// equivariance is built into the tables.
pub fn cup_hom_limited(a: &HomCochain, b: &HomCochain, limit: u128) -> Result<HomCochain> {
    let g = Arc::clone(common_group(a.module(), b.module())?);
    let tm = tensor_module(a.module(), b.module())?;
    let (m, n) = (a.degree(), b.degree());
    let out_deg = m + n;
    crate::cochain::check_degree(out_deg)?;
    let (ra, rb) = (a.module().rank(), b.module().rank());
    let rev = |s: &[Elt]| s.iter().rev().copied().collect::<Vec<Elt>>();

    match regime_for(m, n) {
        CupRegime::NonnegNonneg => {
            let p = m as usize;
            check_ops(&g, harity(out_deg), 0, ra, rb, limit)?;
            HomCochain::from_fn(&tm, out_deg, |t| {
                tensor_elem(&tm, &a.get(&t[..p + 1]), &b.get(&t[p..]))
            })
        }
        CupRegime::NegNeg => {
            let p = (-m) as usize;
            check_ops(&g, harity(out_deg), 0, ra, rb, limit)?;
            HomCochain::from_fn(&tm, out_deg, |t| {
                tensor_elem(&tm, &a.get(&t[..p]), &b.get(&t[p..]))
            })
        }
        CupRegime::NonnegNegToNeg => {
            let p = m as usize;
            check_ops(&g, harity(out_deg), p, ra, rb, limit)?;
            HomCochain::from_fn(&tm, out_deg, |t| {
                let mut acc = ModElement::zero(&tm);
                for s in g.tuples(p) {
                    let mut largs = vec![t[0]];
                    largs.extend_from_slice(&s);
                    let mut rargs = rev(&s);
                    rargs.extend_from_slice(t);
                    acc = acc.add(&tensor_elem(&tm, &a.get(&largs), &b.get(&rargs)));
                }
                acc
            })
        }
        CupRegime::NegNonnegToNeg => {
            let p = n as usize;
            check_ops(&g, harity(out_deg), p, ra, rb, limit)?;
            HomCochain::from_fn(&tm, out_deg, |t| {
                let mut acc = ModElement::zero(&tm);
                for s in g.tuples(p) {
                    let mut largs = t.to_vec();
                    largs.extend_from_slice(&s);
                    let mut rargs = rev(&s);
                    rargs.push(t[t.len() - 1]);
                    acc = acc.add(&tensor_elem(&tm, &a.get(&largs), &b.get(&rargs)));
                }
                acc
            })
        }
        CupRegime::PosNegToNonneg => {
            let q = (-n) as usize;
            check_ops(&g, harity(out_deg), q, ra, rb, limit)?;
            HomCochain::from_fn(&tm, out_deg, |t| {
                let mut acc = ModElement::zero(&tm);
                for s in g.tuples(q) {
                    let mut largs = t.to_vec();
                    largs.extend_from_slice(&s);
                    acc = acc.add(&tensor_elem(&tm, &a.get(&largs), &b.get(&rev(&s))));
                }
                acc
            })
        }
        CupRegime::NegPosToNonneg => {
            let q = (-m) as usize;
            check_ops(&g, harity(out_deg), q, ra, rb, limit)?;
            HomCochain::from_fn(&tm, out_deg, |t| {
                let mut acc = ModElement::zero(&tm);
                for s in g.tuples(q) {
                    let mut rargs = rev(&s);
                    rargs.extend_from_slice(t);
                    acc = acc.add(&tensor_elem(&tm, &a.get(&s), &b.get(&rargs)));
                }
                acc
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::cyclic(n).unwrap()
    }

    fn sign_lattice(g: &Arc<FiniteGroup>) -> Arc<GModule> {
        GModule::lattice_from_sigma(g, "Z(-1)", IntMatrix::from_i64_rows(&[vec![-1]])).unwrap()
    }

    #[test]
    fn regimes_partition_the_plane() {
        for m in -4i64..=4 {
            for n in -4i64..=4 {
                let r = regime_for(m, n);
                let expected = match (m >= 0, n >= 0, m + n >= 0) {
                    (true, true, _) => CupRegime::NonnegNonneg,
                    (false, false, _) => CupRegime::NegNeg,
                    (true, false, false) => CupRegime::NonnegNegToNeg,
                    (true, false, true) => CupRegime::PosNegToNonneg,
                    (false, true, false) => CupRegime::NegNonnegToNeg,
                    (false, true, true) => CupRegime::NegPosToNonneg,
                };
                assert_eq!(r, expected, "at ({m}, {n})");
            }
        }
    }

    /// Degree pairs hitting each regime at least twice, small enough for
    /// unit tests.
    fn regime_samples() -> Vec<(i64, i64)> {
        vec![
            (0, 0),
            (1, 1),
            (2, 1),
            (-1, -1),
            (-2, -1),
            (0, -1),
            (1, -3),
            (-1, 0),
            (-3, 1),
            (1, -1),
            (2, -1),
            (-1, 1),
            (-1, 2),
        ]
    }

    #[test]
    fn inh_and_hom_products_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for g in [c(2), c(3)] {
            let modules = [
                GModule::trivial_z(&g),
                GModule::trivial_z_mod(&g, 4),
                GModule::regular(&g),
            ];
            for (m, n) in regime_samples() {
                for am in &modules {
                    for bm in &modules {
                        let ca = InhCochain::random(am, m, &mut rng).unwrap();
                        let cb = InhCochain::random(bm, n, &mut rng).unwrap();
                        let lhs = cup_inh(&ca, &cb).unwrap().to_homogeneous().unwrap();
                        let rhs = cup_hom(
                            &ca.to_homogeneous().unwrap(),
                            &cb.to_homogeneous().unwrap(),
                        )
                        .unwrap();
                        assert_eq!(
                            lhs,
                            rhs,
                            "transport mismatch at ({m}, {n}) on {} x {}",
                            am.name(),
                            bm.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zero_zero_product_is_pointwise_tensor() {
        let g = c(2);
        let zl = sign_lattice(&g);
        let u = ModElement::from_i64(&zl, &[3]).unwrap();
        let v = ModElement::from_i64(&zl, &[5]).unwrap();
        let ca = InhCochain::from_fn(&zl, 0, |_| u.clone()).unwrap();
        let cb = InhCochain::from_fn(&zl, 0, |_| v.clone()).unwrap();
        let prod = cup_inh(&ca, &cb).unwrap();
        assert_eq!(prod.degree(), 0);
        assert_eq!(prod.get(&[]).coords(), &[BigInt::from(15)]);
    }

    #[test]
    fn products_are_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let g = c(3);
        let am = GModule::regular(&g);
        let bm = GModule::trivial_z_mod(&g, 6);
        for (m, n) in [(1, -1), (-2, 1), (0, -2)] {
            let a1 = InhCochain::random(&am, m, &mut rng).unwrap();
            let a2 = InhCochain::random(&am, m, &mut rng).unwrap();
            let b = InhCochain::random(&bm, n, &mut rng).unwrap();
            let lhs = cup_inh(&a1.add(&a2), &b).unwrap();
            let rhs = cup_inh(&a1, &b).unwrap().add(&cup_inh(&a2, &b).unwrap());
            assert_eq!(lhs, rhs, "left linearity at ({m}, {n})");
            let b2 = InhCochain::random(&bm, n, &mut rng).unwrap();
            let lhs = cup_inh(&a1, &b.add(&b2)).unwrap();
            let rhs = cup_inh(&a1, &b).unwrap().add(&cup_inh(&a1, &b2).unwrap());
            assert_eq!(lhs, rhs, "right linearity at ({m}, {n})");
        }
    }

    #[test]
    fn leibniz_rule_holds_in_mixed_regimes() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let g = c(2);
        let am = GModule::trivial_z(&g);
        let bm = sign_lattice(&g);
        for (m, n) in [(1, 1), (0, 0), (-1, -1), (1, -1), (-2, 1), (0, -2), (-1, 2)] {
            let ca = InhCochain::random(&am, m, &mut rng).unwrap();
            let cb = InhCochain::random(&bm, n, &mut rng).unwrap();
            let lhs = cup_inh(&ca, &cb).unwrap().diff().unwrap();
            let mut rhs = cup_inh(&ca.diff().unwrap(), &cb).unwrap();
            let second = cup_inh(&ca, &cb.diff().unwrap()).unwrap();
            rhs = if m % 2 == 0 {
                rhs.add(&second)
            } else {
                rhs.sub(&second)
            };
            assert_eq!(lhs, rhs, "Leibniz at ({m}, {n})");
        }
    }

    #[test]
    fn operation_guard_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = c(4);
        let m = GModule::trivial_z(&g);
        let ca = InhCochain::random(&m, 2, &mut rng).unwrap();
        let cb = InhCochain::random(&m, -3, &mut rng).unwrap();
        assert!(matches!(
            cup_inh_limited(&ca, &cb, 10),
            Err(TateError::OpGuard { .. })
        ));
        assert!(cup_inh(&ca, &cb).is_ok());
    }
}
