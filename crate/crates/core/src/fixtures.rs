//! Bundled example documents.

/// Data Distribution component case study: seven assets, seven requirements
/// refining one goal, and the seven-statement allow policy.
pub const PYRAMID: &str = include_str!("../fixtures/pyramid.json");

/// Two information assets where the diary reads and writes its events.
pub const WORKS_DIARY: &str = include_str!("../fixtures/works-diary.json");

/// Three-level inheritance chain `A <- B <- C` where `A` reads `R`.
pub const INHERITANCE_CHAIN: &str = include_str!("../fixtures/inheritance-chain.json");

/// Names accepted by [`fixture`].
pub const NAMES: [&str; 2] = ["pyramid", "works-diary"];

pub fn fixture(name: &str) -> Option<&'static str> {
    match name {
        "pyramid" => Some(PYRAMID),
        "works-diary" => Some(WORKS_DIARY),
        _ => None,
    }
}
