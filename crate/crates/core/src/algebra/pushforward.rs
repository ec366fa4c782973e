use super::{infer_with, BinaryOp, Expr};
use crate::error::Result;
use crate::hypergraph::{box_product, join, VertexSet};
use crate::verify::{check_bound, DistributionTable};

/// `(De)(φ₀, …, φ_{k−1})`: the exact law of `e` applied to independent
/// inputs with laws `tables`. Every intermediate vertex set must be small
/// enough to enumerate.
pub fn pushforward_expr(e: &Expr, tables: &[DistributionTable]) -> Result<DistributionTable> {
    let sets: Vec<VertexSet> = tables.iter().map(|t| t.vertices().clone()).collect();
    infer_with(e, &sets, &mut |_, v| check_bound(v))?;
    push(e, tables)
}

fn push(e: &Expr, tables: &[DistributionTable]) -> Result<DistributionTable> {
    match e {
        Expr::Leaf(s) => Ok(tables[*s].clone()),
        Expr::Unary(op, c) => Ok(push(c, tables)?.pushforward(|h| op.apply(h))),
        Expr::Binary(op, l, r) => {
            let (a, b) = (push(l, tables)?, push(r, tables)?);
            match op {
                BinaryOp::Intersect => DistributionTable::pushforward_masks(&a, &b, |i, j| i & j),
                BinaryOp::Union => DistributionTable::pushforward_masks(&a, &b, |i, j| i | j),
                BinaryOp::Join => {
                    let v = a.vertices().disjoint_union(b.vertices())?;
                    DistributionTable::pushforward_pair(&a, &b, v, join)
                }
                BinaryOp::Box => {
                    let v = a.vertices().product(b.vertices())?;
                    DistributionTable::pushforward_pair(&a, &b, v, box_product)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::algebra::{eval_expr, parse_expr};
    use crate::hypergraph::Hypergraph;

    fn vs(labels: &[&str]) -> VertexSet {
        VertexSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn point_masses_follow_eval() {
        let v = vs(&["a", "b", "c"]);
        let w = vs(&["d"]);
        let h = Hypergraph::from_labels(&v, [vec!["a"], vec!["a", "b", "c"]]).unwrap();
        let g = Hypergraph::from_labels(&w, [vec!["d"]]).unwrap();
        for text in ["comp(up($0)) * $1", "iup($0) * idown($1)", "down($0) * up($1)"] {
            let e = parse_expr(text).unwrap();
            let t = pushforward_expr(
                &e,
                &[DistributionTable::point_mass(&h).unwrap(), DistributionTable::point_mass(&g).unwrap()],
            )
            .unwrap();
            let image = eval_expr(&e, &[h.clone(), g.clone()]).unwrap();
            assert_eq!(t, DistributionTable::point_mass(&image).unwrap(), "{text}");
        }
    }

    #[test]
    fn set_operations_use_masks() {
        let v = vs(&["a", "b"]);
        let (a, b) = (DistributionTable::random(v.clone(), 1).unwrap(), DistributionTable::random(v, 2).unwrap());
        for (text, generic) in [("$0 & $1", true), ("$0 | $1", false)] {
            let fast = pushforward_expr(&parse_expr(text).unwrap(), &[a.clone(), b.clone()]).unwrap();
            let op = if generic { crate::hypergraph::SetOp::Intersect } else { crate::hypergraph::SetOp::Union };
            let slow = DistributionTable::pushforward_pair(&a, &b, a.vertices().clone(), |x, y| {
                crate::hypergraph::combine(x, y, op)
            })
            .unwrap();
            assert!(fast.max_abs_diff(&slow).unwrap() < 1e-15);
            assert!((fast.total() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_is_enforced_at_every_node() {
        let v = vs(&["a", "b"]);
        let w = vs(&["c", "d", "e"]);
        let t = |v: &VertexSet| DistributionTable::point_mass(&Hypergraph::empty(v.clone())).unwrap();
        let err = pushforward_expr(&parse_expr("$0 * $1").unwrap(), &[t(&v), t(&w)]).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { edges: 31, limit: 20 }));
        let ok = pushforward_expr(&parse_expr("$0 # $1").unwrap(), &[t(&v), t(&v)]).unwrap();
        assert_eq!(ok.vertices().len(), 4);
        let err = pushforward_expr(&parse_expr("up($0 # $1)").unwrap(), &[t(&v), t(&w)]).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { edges: 63, .. }));
    }
}
