pub mod cdp;
pub mod frontend;
pub mod pattern;
pub mod processors;
pub mod synthesis;
pub mod term;

pub use frontend::cli;
