//! Text formats, builtin rules and image output.

pub mod builtins;
pub mod library;
pub mod render;
pub mod text;

pub use builtins::{builtin_rule, resolve_rule};
pub use library::{parse_library, write_library};
pub use render::{gray_level, render_spacetime, RenderSpec};
pub use text::{parse_config, parse_rule, serialize_config, serialize_rule};
