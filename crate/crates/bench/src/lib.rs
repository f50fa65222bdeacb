//! Fixed instances shared by the criterion benchmarks.

use orp_core::{generate, DenseSimplex, GeneratorConfig, IlpInstance, InstanceClass};

/// A certified class 1 instance of the given size.
pub fn class1(m: usize, n: usize, seed: u64) -> (IlpInstance, Vec<f64>) {
    let cfg = GeneratorConfig::new(m, n, 0.1, InstanceClass::Class1BStable, seed);
    generate(&DenseSimplex::new(), &cfg).expect("class 1 instance")
}

/// A general instance with a wide box.
pub fn class2(m: usize, n: usize, seed: u64) -> (IlpInstance, Vec<f64>) {
    let cfg = GeneratorConfig::new(m, n, 1.0, InstanceClass::Class2General, seed);
    generate(&DenseSimplex::new(), &cfg).expect("class 2 instance")
}
