//! Small worked instances with known outcome ranges, used by tests and bundled as files.

use crate::dense::Matrix;
use crate::ilp::IlpInstance;
use crate::interval::IntervalVector;

fn build(rows: &[Vec<f64>], c: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> IlpInstance {
    let a = Matrix::from_rows(rows).expect("catalog rows are rectangular");
    let b = IntervalVector::new(lower, upper).expect("catalog intervals are ordered");
    IlpInstance::new(a, c, b).expect("catalog dimensions agree")
}

/// Two variables, three interval constraints; outcome range [36, 81].
pub fn example_one() -> (IlpInstance, Vec<f64>) {
    let inst = build(
        &[vec![1.0, -1.0], vec![-1.0, -1.0], vec![0.0, 1.0]],
        vec![2.0, -5.0],
        vec![4.0, -6.0, 4.0],
        vec![7.0, 8.0, 9.0],
    );
    (inst, vec![8.0, 9.0])
}

/// `min -4 x2  s.t.  x1 + x2 <= [-1, 5]` with `f = c`; value range [-20, inf], outcome range [-20, 0].
pub fn example_two() -> (IlpInstance, Vec<f64>) {
    let inst = build(&[vec![1.0, 1.0]], vec![0.0, -4.0], vec![-1.0], vec![5.0]);
    (inst, vec![0.0, -4.0])
}

/// `min 5 x1 + 6 x2  s.t.  4 x1 + 5 x2 <= [0, 5]`; the optimal set is the origin.
pub fn example_three() -> (IlpInstance, Vec<f64>) {
    let inst = build(&[vec![4.0, 5.0]], vec![5.0, 6.0], vec![0.0], vec![5.0]);
    (inst, vec![10.0, 3.0])
}

pub const TRANSPORT_SUPPLY: [f64; 3] = [70.0, 75.0, 81.0];
pub const TRANSPORT_COST: [f64; 9] = [40.0, 21.0, 23.0, 24.0, 43.0, 19.0, 31.0, 35.0, 21.0];
pub const TRANSPORT_EMISSIONS: [f64; 9] = [30.0, 17.0, 18.0, 19.0, 32.0, 14.0, 22.0, 25.0, 17.0];

/// Right-hand side of the transportation instance for a concrete demand vector.
pub fn transportation_rhs(demand: &[f64; 3]) -> Vec<f64> {
    TRANSPORT_SUPPLY
        .iter()
        .copied()
        .chain(demand.iter().map(|d| -d))
        .collect()
}

/// Three origins, three destinations, demands in [85,87] x [64,66] x [71,73].
/// Variables `x_ij` are ordered origin-major; demand rows are negated into `<=` form.
/// The outcome is CO2 emissions per shipped unit.
pub fn transportation() -> (IlpInstance, Vec<f64>) {
    let mut rows = Vec::with_capacity(6);
    for i in 0..3 {
        let mut row = vec![0.0; 9];
        row[3 * i..3 * i + 3].iter_mut().for_each(|v| *v = 1.0);
        rows.push(row);
    }
    for j in 0..3 {
        let mut row = vec![0.0; 9];
        for i in 0..3 {
            row[3 * i + j] = -1.0;
        }
        rows.push(row);
    }
    let inst = build(
        &rows,
        TRANSPORT_COST.to_vec(),
        transportation_rhs(&[87.0, 66.0, 73.0]),
        transportation_rhs(&[85.0, 64.0, 71.0]),
    );
    (inst, TRANSPORT_EMISSIONS.to_vec())
}

/// All bundled instances by file stem.
pub fn all() -> Vec<(&'static str, IlpInstance, Vec<f64>)> {
    let mut out = Vec::new();
    for (name, (inst, r)) in [
        ("example1", example_one()),
        ("example2", example_two()),
        ("example3", example_three()),
        ("transportation", transportation()),
    ] {
        out.push((name, inst, r));
    }
    out
}
