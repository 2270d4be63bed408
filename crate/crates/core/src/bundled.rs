//! Example diagrams shipped with the crate.

use crate::diagram::SurgeryDiagram;

/// Three-component diagram realizing `M = [[0,−1],[−1,−2]]`,
/// `M₀ = [[0,−1,0],[−1,0,−1],[0,−1,−2]]` and `tb₀(L) = −1`.
pub const FIGURE1_JSON: &str = include_str!("../data/figure1.json");

/// The tb = −1 unknot with contact (+1) and its push-off.
pub const S1XS2_JSON: &str = include_str!("../data/s1xs2.json");

pub const NAMES: [&str; 2] = ["figure1.json", "s1xs2.json"];

/// Bundled file contents by file name.
pub fn lookup(name: &str) -> Option<&'static str> {
    match name {
        "figure1.json" | "figure1" => Some(FIGURE1_JSON),
        "s1xs2.json" | "s1xs2" => Some(S1XS2_JSON),
        _ => None,
    }
}

pub fn figure1() -> SurgeryDiagram {
    SurgeryDiagram::from_json(FIGURE1_JSON).expect("bundled figure1.json is valid")
}

pub fn s1xs2() -> SurgeryDiagram {
    SurgeryDiagram::from_json(S1XS2_JSON).expect("bundled s1xs2.json is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_parse() {
        assert_eq!(figure1().len(), 3);
        assert_eq!(s1xs2().len(), 2);
        for name in NAMES {
            assert!(lookup(name).is_some());
        }
        assert!(lookup("other.json").is_none());
    }
}
