use std::path::Path;

use super::{ProbabilityMap, TableOrigin};
use crate::error::{Error, Result};
use crate::hypergraph::parse_edge;
use crate::hypergraph::VertexSet;

/// Named per-dimension models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `(1, q)`: the random graph `G(N, q)`.
    Gnp,
    /// `(1, 1, q)`: random 2-complexes with a complete 1-skeleton.
    LinialMeshulam,
    /// `(1, …, 1, q)` with `q` in dimension `d`.
    MeshulamWallach(usize),
    /// `(1, q, 1, …, 1)`: the flag complex of `G(N, q)`.
    Clique,
}

/// Builds the per-dimension vector of `preset` for `vertices`. Models with a
/// top dimension are padded with 0 above it; the clique model is padded
/// with 1.
pub fn preset_map(preset: Preset, q: f64, vertices: VertexSet) -> Result<ProbabilityMap> {
    let n = vertices.len();
    let top = match preset {
        Preset::Gnp => 1,
        Preset::LinialMeshulam => 2,
        Preset::MeshulamWallach(d) => d,
        Preset::Clique => 1,
    };
    if preset != Preset::Clique && top >= n {
        return Err(Error::InvalidMapSpec {
            spec: format!("{preset:?}"),
            reason: format!("dimension {top} needs more than {n} vertices"),
        });
    }
    let fill = if preset == Preset::Clique { 1.0 } else { 0.0 };
    let dims = (0..n)
        .map(|k| match k.cmp(&top) {
            std::cmp::Ordering::Less => 1.0,
            std::cmp::Ordering::Equal => q,
            std::cmp::Ordering::Greater => fill,
        })
        .collect();
    ProbabilityMap::per_dimension(vertices, dims)
}

/// Parses one of
/// `const:<f>`, `dims:<f>,<f>,...`, `table:<path>`, `gnp:<f>`, `lm:<f>`,
/// `mw:<d>:<f>`, `clique:<f>`, or `random:<seed>` for a seeded uniform
/// table.
pub fn parse_map_spec(text: &str, vertices: &VertexSet) -> Result<ProbabilityMap> {
    let text = text.trim();
    let bad = |reason: &str| Error::InvalidMapSpec { spec: text.to_string(), reason: reason.into() };
    let float = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("`{s}` is not a number")));
    let (kind, rest) = text.split_once(':').ok_or_else(|| bad("expected `<kind>:<value>`"))?;
    let vertices = vertices.clone();
    match kind {
        "const" => ProbabilityMap::constant(vertices, float(rest)?),
        "dims" => {
            let dims = rest.split(',').map(float).collect::<Result<Vec<f64>>>()?;
            ProbabilityMap::per_dimension(vertices, dims)
        }
        "table" => read_table(Path::new(rest), vertices),
        "random" => {
            let seed = rest.parse::<u64>().map_err(|_| bad(&format!("`{rest}` is not a seed")))?;
            ProbabilityMap::random_table(vertices, seed)
        }
        "gnp" => preset_map(Preset::Gnp, float(rest)?, vertices),
        "lm" => preset_map(Preset::LinialMeshulam, float(rest)?, vertices),
        "clique" => preset_map(Preset::Clique, float(rest)?, vertices),
        "mw" => {
            let (d, q) = rest.split_once(':').ok_or_else(|| bad("expected `mw:<d>:<q>`"))?;
            let d = d.parse::<usize>().map_err(|_| bad(&format!("`{d}` is not a dimension")))?;
            preset_map(Preset::MeshulamWallach(d), float(q)?, vertices)
        }
        other => Err(bad(&format!("unknown kind `{other}`"))),
    }
}

/// Lines `<edge>\t<probability>`; blank and `#` lines are skipped.
fn read_table(path: &Path, vertices: VertexSet) -> Result<ProbabilityMap> {
    let text = std::fs::read_to_string(path)?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let format_err = |msg: String| Error::Format { line: i + 1, msg };
        let (edge, value) = line
            .rsplit_once('\t')
            .ok_or_else(|| format_err("expected `<edge><TAB><probability>`".into()))?;
        let edge = parse_edge(&vertices, edge.trim()).map_err(format_err)?;
        let value = value
            .trim()
            .parse::<f64>()
            .map_err(|_| format_err(format!("`{value}` is not a number")))?;
        entries.push((edge, value));
    }
    ProbabilityMap::table(vertices, entries, TableOrigin::File(path.display().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Edge;
    use crate::prob::MapSpec;
    use std::io::Write;

    fn dims(p: &ProbabilityMap) -> Vec<f64> {
        match p.spec() {
            MapSpec::PerDimension(d) => d.clone(),
            other => panic!("not per-dimension: {other:?}"),
        }
    }

    #[test]
    fn presets() {
        let v = VertexSet::numbered("v", 4).unwrap();
        assert_eq!(dims(&preset_map(Preset::Gnp, 0.3, v.clone()).unwrap()), [1.0, 0.3, 0.0, 0.0]);
        assert_eq!(
            dims(&preset_map(Preset::LinialMeshulam, 0.7, v.clone()).unwrap()),
            [1.0, 1.0, 0.7, 0.0]
        );
        assert_eq!(dims(&preset_map(Preset::Clique, 0.5, v.clone()).unwrap()), [1.0, 0.5, 1.0, 1.0]);
        assert_eq!(
            dims(&preset_map(Preset::MeshulamWallach(3), 0.2, v.clone()).unwrap()),
            [1.0, 1.0, 1.0, 0.2]
        );
        assert!(preset_map(Preset::MeshulamWallach(4), 0.2, v).is_err());
    }

    #[test]
    fn grammar() {
        let v = VertexSet::numbered("v", 3).unwrap();
        let e = Edge::new(0b011).unwrap();
        assert_eq!(parse_map_spec("const:0.25", &v).unwrap().evaluate(e), 0.25);
        assert_eq!(parse_map_spec("dims:1,0.5", &v).unwrap().evaluate(e), 0.5);
        assert_eq!(parse_map_spec("gnp:0.4", &v).unwrap().evaluate(e), 0.4);
        assert_eq!(parse_map_spec("lm:0.4", &v).unwrap().evaluate(e), 1.0);
        assert_eq!(parse_map_spec("mw:1:0.6", &v).unwrap().evaluate(e), 0.6);
        assert_eq!(parse_map_spec("clique:0.6", &v).unwrap().evaluate(Edge::new(0b111).unwrap()), 1.0);
        let r = parse_map_spec("random:4", &v).unwrap();
        assert_eq!(r.to_string(), "random:4");
        assert_eq!(parse_map_spec(&r.to_string(), &v).unwrap().evaluate(e), r.evaluate(e));
        for bad in ["const", "const:x", "const:2", "zzz:1", "mw:0.5", "dims:1,,2", "random:x"] {
            assert!(parse_map_spec(bad, &v).is_err(), "{bad}");
        }
    }

    #[test]
    fn table_files() {
        let v = VertexSet::new(["a", "b"]).unwrap();
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# comment\na\t0.1\nb\t0.2\na,b\t0.3").unwrap();
        let spec = format!("table:{}", file.path().display());
        let p = parse_map_spec(&spec, &v).unwrap();
        assert_eq!(p.evaluate(Edge::new(0b11).unwrap()), 0.3);
        assert_eq!(p.to_string(), spec);

        let mut partial = tempfile::NamedTempFile::new().unwrap();
        writeln!(partial, "a\t0.1").unwrap();
        let err = parse_map_spec(&format!("table:{}", partial.path().display()), &v).unwrap_err();
        assert!(matches!(err, Error::MapNotTotal(_)), "{err}");
    }
}
