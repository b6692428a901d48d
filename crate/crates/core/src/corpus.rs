//! Named graphs with known obstruction status.

use serde::Serialize;

use crate::embed::Surface;
use crate::graph::{parse_name, write_graph6, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Obstruction,
    /// Obstruction that also needs a Kuratowski covering with this genus parameter.
    CoveringTarget(u32),
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// Identifier used in the literature, where one exists.
    pub catalog_id: Option<&'static str>,
    pub surface: Surface,
    pub role: Role,
}

impl CorpusEntry {
    pub fn graph(&self) -> Graph {
        parse_name(self.name).expect("corpus names parse")
    }

    pub fn graph6(&self) -> String {
        write_graph6(&self.graph())
    }
}

const fn entry(name: &'static str, surface: Surface) -> CorpusEntry {
    CorpusEntry { name, catalog_id: None, surface, role: Role::Obstruction }
}

pub fn corpus() -> Vec<CorpusEntry> {
    let sphere = Surface::sphere();
    let torus = Surface::torus();
    let klein = Surface::klein_bottle();
    let n4 = Surface::Nonorientable(4);
    vec![
        entry("K5", sphere),
        entry("K3,3", sphere),
        entry("K8-K3", torus),
        entry("K8-(K1,2∪2K2)", torus),
        entry("K8-K2,3", torus),
        entry("K8-4K2", klein),
        entry("K8-(K3∨K2)", klein),
        entry("K8-2K3", klein),
        entry("K8-2K1,3", klein),
        entry("K8-(K1,4∪K3)", klein),
        CorpusEntry { name: "K9-K1,2", catalog_id: Some("I~4_9,1"), surface: n4, role: Role::CoveringTarget(4) },
        CorpusEntry { name: "K9-2K2", catalog_id: Some("I~4_9,2"), surface: n4, role: Role::CoveringTarget(4) },
    ]
}

/// Corpus entries for one surface and order.
pub fn named_obstructions(surface: Surface, order: usize) -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| e.surface == surface && e.graph().order() == order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse_with_expected_sizes() {
        let sizes: Vec<(usize, usize)> = corpus().iter().map(|e| (e.graph().order(), e.graph().edge_count())).collect();
        assert_eq!(
            sizes,
            vec![
                (5, 10),
                (6, 9),
                (8, 25),
                (8, 24),
                (8, 22),
                (8, 24),
                (8, 24),
                (8, 22),
                (8, 22),
                (8, 21),
                (9, 34),
                (9, 34)
            ]
        );
        assert_eq!(named_obstructions(Surface::klein_bottle(), 8).len(), 5);
    }
}
