//! Seeded draws from the three model laws, including the named
//! per-dimension presets.

use hypermap::prob::{parse_map_spec, ModelDescriptor, ModelFamily};
use hypermap::sampler::{sample_model, SampleStream};
use hypermap::VertexSet;

fn main() -> hypermap::Result<()> {
    let v = VertexSet::numbered("v", 5)?;
    for (family, spec) in [
        (ModelFamily::PBar, "const:0.1"),
        (ModelFamily::P, "gnp:0.5"),
        (ModelFamily::P, "lm:0.3"),
        (ModelFamily::P, "clique:0.6"),
        (ModelFamily::Q, "dims:0.2,0.5,0.5,0.5,0.5"),
    ] {
        let model = ModelDescriptor::new(family, parse_map_spec(spec, &v)?);
        let mut stream = SampleStream::new(2024);
        let h = sample_model(&model, &mut stream);
        println!("# {model}: {} edges, {}", h.len(), h.classify().name());
        print!("{h}");
    }
    Ok(())
}
