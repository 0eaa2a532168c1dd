//! The bundled fixture corpus: instances embedded at compile time, run in a
//! bounded worker pool with single-threaded report assembly.

use rayon::prelude::*;

use crate::error::Result;
use crate::instance::{load_instance, parse_instance_str, LoadedInstance};
use crate::report::{assemble_corpus, run_instance, CorpusReport, FixtureReport};
use crate::Budgets;

pub const FIXTURES: &[(&str, &str)] = &[
    ("a1-cone-f2", include_str!("../fixtures/a1_cone_f2.json")),
    ("a1-cone-f3", include_str!("../fixtures/a1_cone_f3.json")),
    (
        "cusp-monoid-rejected",
        include_str!("../fixtures/cusp_monoid_rejected.json"),
    ),
    (
        "f4-singular-conic",
        include_str!("../fixtures/f4_singular_conic.json"),
    ),
    (
        "f4-standard-log",
        include_str!("../fixtures/f4_standard_log.json"),
    ),
    (
        "nn3-standard-f5",
        include_str!("../fixtures/nn3_standard_f5.json"),
    ),
    ("nn-standard", include_str!("../fixtures/nn_standard.json")),
    ("node-xy", include_str!("../fixtures/node_xy.json")),
    (
        "nonsharp-torus",
        include_str!("../fixtures/nonsharp_torus.json"),
    ),
    (
        "nonsharp-trivial-units",
        include_str!("../fixtures/nonsharp_trivial_units.json"),
    ),
    (
        "plane-double-log",
        include_str!("../fixtures/plane_double_log.json"),
    ),
    (
        "rational-line-r1",
        include_str!("../fixtures/rational_line_r1.json"),
    ),
    (
        "rational-node-r1",
        include_str!("../fixtures/rational_node_r1.json"),
    ),
    (
        "rational-plane-r2",
        include_str!("../fixtures/rational_plane_r2.json"),
    ),
    (
        "square-cone-f2",
        include_str!("../fixtures/square_cone_f2.json"),
    ),
    (
        "trivial-q-cusp-f5",
        include_str!("../fixtures/trivial_q_cusp_f5.json"),
    ),
    (
        "trivial-q-plane",
        include_str!("../fixtures/trivial_q_plane.json"),
    ),
    ("zp-a1-cone", include_str!("../fixtures/zp_a1_cone.json")),
    ("zp-line", include_str!("../fixtures/zp_line.json")),
    ("zp-node", include_str!("../fixtures/zp_node.json")),
];

pub fn fixture_names(filter: Option<&str>) -> Vec<&'static str> {
    FIXTURES
        .iter()
        .map(|(n, _)| *n)
        .filter(|n| filter.map_or(true, |f| n.contains(f)))
        .collect()
}

pub fn load_fixture(name: &str, budgets: &Budgets) -> Result<LoadedInstance> {
    let (_, src) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| crate::Error::Instance(format!("no bundled fixture named {name:?}")))?;
    load_instance(parse_instance_str(src, false)?, budgets)
}

/// Run the (filtered) corpus. Fixtures are independent and run in
/// parallel; the report is assembled in a fixed order afterwards.
pub fn run_corpus(filter: Option<&str>, budgets: &Budgets) -> CorpusReport {
    let names = fixture_names(filter);
    let fixtures: Vec<FixtureReport> = names
        .par_iter()
        .map(|name| match load_fixture(name, budgets) {
            Ok(inst) => run_instance(&inst, budgets),
            Err(e) => FixtureReport {
                name: name.to_string(),
                base: "?".into(),
                status: "rejected".into(),
                error: Some(e.to_string()),
                validation: None,
                monoid: None,
                definition_route: None,
                fw_route: None,
                routes_agree: None,
                expected_mismatches: vec![format!("load error: {e}")],
            },
        })
        .collect();
    assemble_corpus(fixtures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        for (name, src) in FIXTURES {
            let parsed = parse_instance_str(src, false);
            assert!(parsed.is_ok(), "{name}: {parsed:?}");
        }
    }

    #[test]
    fn filter_selects_subset() {
        let toric = fixture_names(Some("cone"));
        assert!(toric.len() >= 3);
        assert!(toric.iter().all(|n| n.contains("cone")));
    }
}
