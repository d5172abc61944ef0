//! The experiment catalogue behind the subcommands.

pub mod chamber;
pub mod matrix;
pub mod passage;
pub mod specfun;
pub mod xi;

use crate::registry::Registry;

/// Registry holding every subcommand.
pub fn standard_registry() -> Registry {
    let mut r = Registry::new();
    r.register(Box::new(matrix::Simulate));
    r.register(Box::new(chamber::KernelTable));
    r.register(Box::new(matrix::DysonCheck));
    r.register(Box::new(matrix::IwasawaDrift));
    r.register(Box::new(chamber::EigenLambda));
    r.register(Box::new(specfun::BesselZeros));
    r.register(Box::new(specfun::SlSpectrumCheck));
    r.register(Box::new(xi::XiTable));
    r.register(Box::new(xi::ZeroCount));
    r.register(Box::new(passage::MellinCheck));
    r.register(Box::new(passage::ThorinReportExp));
    r.register(Box::new(passage::Correspond));
    r
}
