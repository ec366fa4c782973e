//! Exact laws by enumeration: the lower closure of a hypergraph draw has
//! exactly the simplicial complex law with the same map.

use hypermap::algebra::{parse_expr, pushforward_expr};
use hypermap::prob::{parse_map_spec, ModelDescriptor, ModelFamily};
use hypermap::verify::{exact_table, total_variation};
use hypermap::VertexSet;

fn main() -> hypermap::Result<()> {
    let v = VertexSet::parse_list("a,b,c")?;
    let p = parse_map_spec("dims:0.7,0.4,0.9", &v)?;
    let pbar = exact_table(&ModelDescriptor::new(ModelFamily::PBar, p.clone()))?;
    let image = pushforward_expr(&parse_expr("down($0)")?, &[pbar])?;
    let direct = exact_table(&ModelDescriptor::new(ModelFamily::P, p))?;
    println!("max |diff| = {:e}, TV = {:e}", image.max_abs_diff(&direct)?, total_variation(&image, &direct)?);
    let mut support: Vec<(usize, f64)> = image.support().collect();
    support.sort_by(|x, y| y.1.total_cmp(&x.1));
    for (i, mass) in support.into_iter().take(5) {
        print!("# mass {mass:.6}\n{}", image.hypergraph(i));
    }
    Ok(())
}
