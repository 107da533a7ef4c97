#![allow(dead_code)]

pub mod chains;
pub mod gen;
pub mod oracle;
pub mod props;
