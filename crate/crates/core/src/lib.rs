//! Network-design game over DOM forests.
//!
//! Devices ("players") each pick a root-to-leaf path through a directed
//! acyclic multigraph of DOM objects. Edge costs are split equally among
//! users and every player also pays `delta` times the total page cost. The
//! game has an exact potential, so best-response dynamics reach a pure Nash
//! equilibrium; small instances are checked against exhaustive search.
//!
//! - [`game_core`]: graph, profiles, page cost, shares, player costs, potential
//! - [`dynamics`]: reweighted best responses and best-response dynamics
//! - [`oracle`]: path enumeration, equilibrium catalogs, optimum, PoA/PoS
//! - [`dom_ingest`]: markup parsing and game construction from devices
//! - [`cli`]: instance/report files, DOT output and the `domgame` commands

pub mod cli;
pub mod dom_ingest;
pub mod dynamics;
pub mod game_core;
pub mod oracle;
pub mod random;
