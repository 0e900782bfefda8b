//! The shipped example presentations.

use crate::error::{Error, Result};
use crate::graph_model::Presentation;

const ENTRIES: &[(&str, &str)] = &[
    ("three_cliques", include_str!("../catalog/three_cliques.json")),
    ("two_cliques_bridge", include_str!("../catalog/two_cliques_bridge.json")),
    ("omega_rays", include_str!("../catalog/omega_rays.json")),
    ("star_of_rays", include_str!("../catalog/star_of_rays.json")),
    ("clique_star", include_str!("../catalog/clique_star.json")),
    ("double_ray_dominator", include_str!("../catalog/double_ray_dominator.json")),
    ("infinite_star", include_str!("../catalog/infinite_star.json")),
    ("notendspace_graph", include_str!("../catalog/notendspace_graph.json")),
    ("nonmet_countable", include_str!("../catalog/nonmet_countable.json")),
    ("timid_to_edge_demo", include_str!("../catalog/timid_to_edge_demo.json")),
];

/// Catalog names in shipping order.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

/// The raw document of a catalog entry.
pub fn document(name: &str) -> Result<&'static str> {
    ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| *d)
        .ok_or_else(|| Error::UnknownCatalog(name.to_string()))
}

pub fn get(name: &str) -> Result<Presentation> {
    Presentation::parse(document(name)?)
}

/// All catalog presentations in shipping order.
pub fn all() -> Vec<Presentation> {
    ENTRIES
        .iter()
        .map(|(_, d)| Presentation::parse(d).expect("catalog documents are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses_under_its_name() {
        for (name, p) in names().into_iter().zip(all()) {
            assert_eq!(p.name, name);
        }
        assert_eq!(names().len(), 10);
    }

    #[test]
    fn three_cliques_has_three_gadgets() {
        assert_eq!(get("three_cliques").unwrap().gadgets.len(), 3);
    }
}
