//! The five unary operators on one hypergraph, with the class of each
//! result.

use hypermap::hypergraph::UnaryOp;
use hypermap::{Hypergraph, VertexSet};

fn main() -> hypermap::Result<()> {
    let v = VertexSet::parse_list("a,b,c,d")?;
    let h = Hypergraph::from_labels(&v, [vec!["a", "b"], vec!["b", "c", "d"], vec!["d"]])?;
    print!("H ({}):\n{h}", h.classify().name());
    for op in UnaryOp::ALL {
        let image = op.apply(&h);
        println!("{op}H = {}(H): {} edges, {}", op.keyword(), image.len(), image.classify().name());
        print!("{image}");
    }
    // Each closure is idempotent, and the lower closures sit inside H.
    for op in [UnaryOp::AssocComplex, UnaryOp::LowerComplex, UnaryOp::AssocIndep, UnaryOp::LowerIndep] {
        assert_eq!(op.apply(&op.apply(&h)), op.apply(&h));
    }
    assert!(UnaryOp::LowerComplex.apply(&h).is_subset_of(&h));
    Ok(())
}
