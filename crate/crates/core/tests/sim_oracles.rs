use num_complex::Complex64;
use proptest::prelude::*;
use quernel::sim::{
    n_decomposition, n_matrix, phase_distance, simulate, simulate_noisy, Circuit, GateOp, Matrix4, NoiseModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M4 = [[Complex64; 4]; 4];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn zero4() -> M4 {
    [[c(0.0, 0.0); 4]; 4]
}

fn eye4() -> M4 {
    let mut m = zero4();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

fn mul(a: &M4, b: &M4) -> M4 {
    let mut out = zero4();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> M4 {
    let mut out = zero4();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    out
}

fn paulis() -> [[[Complex64; 2]; 2]; 3] {
    let o = c(0.0, 0.0);
    [
        [[o, c(1.0, 0.0)], [c(1.0, 0.0), o]],
        [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
        [[c(1.0, 0.0), o], [o, c(-1.0, 0.0)]],
    ]
}

/// Generator iH with H = αXX + βYY + γZZ.
fn generator(a: f64, b: f64, g: f64) -> M4 {
    let [x, y, z] = paulis();
    let (xx, yy, zz) = (kron(&x, &x), kron(&y, &y), kron(&z, &z));
    let mut out = zero4();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = c(0.0, 1.0) * (a * xx[i][j] + b * yy[i][j] + g * zz[i][j]);
        }
    }
    out
}

/// Matrix exponential by scaling and squaring with a 30-term Taylor series.
fn expm(a: &M4) -> M4 {
    let norm: f64 = a.iter().flatten().map(|v| v.norm()).sum();
    let s = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
    let scale = 0.5f64.powi(s);
    let mut x = zero4();
    for i in 0..4 {
        for j in 0..4 {
            x[i][j] = a[i][j] * scale;
        }
    }
    let mut result = eye4();
    let mut term = eye4();
    for k in 1..30 {
        term = mul(&term, &x);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..s {
        result = mul(&result, &result);
    }
    result
}

/// XX, YY and ZZ commute, so the exponential factors into cos/sin terms.
fn product_of_exponentials(a: f64, b: f64, g: f64) -> M4 {
    let [x, y, z] = paulis();
    let factor = |theta: f64, p: &[[Complex64; 2]; 2]| {
        let pp = kron(p, p);
        let mut out = zero4();
        for i in 0..4 {
            for j in 0..4 {
                let id = if i == j { 1.0 } else { 0.0 };
                out[i][j] = c(theta.cos() * id, 0.0) + c(0.0, theta.sin()) * pp[i][j];
            }
        }
        out
    };
    mul(&mul(&factor(a, &x), &factor(b, &y)), &factor(g, &z))
}

fn max_diff(a: &M4, b: &Matrix4) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

/// Circuit unitary re-indexed from (bit q0 + 2·bit q1) to (2·bit q0 + bit q1).
fn circuit_matrix(circuit: &Circuit) -> Matrix4 {
    let u = circuit.unitary().unwrap();
    let perm = [0, 2, 1, 3];
    std::array::from_fn(|r| std::array::from_fn(|col| u[perm[r]][perm[col]]))
}

#[test]
fn closed_form_matches_series_and_product_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let (a, b, g) = (
            rng.random_range(-4.0..4.0),
            rng.random_range(-4.0..4.0),
            rng.random_range(-4.0..4.0),
        );
        let analytic = n_matrix(a, b, g).unwrap();
        assert!(max_diff(&expm(&generator(a, b, g)), &analytic) < 1e-10);
        assert!(max_diff(&product_of_exponentials(a, b, g), &analytic) < 1e-12);
    }
}

#[test]
fn decomposition_matches_analytic_gate() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let (a, b, g) = (
            rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
            rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
            rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
        );
        let circuit = n_decomposition(a, b, g).unwrap();
        let cnots = circuit.ops().iter().filter(|op| matches!(op, GateOp::Cnot { .. })).count();
        assert_eq!(cnots, 3);
        let target = n_matrix(a, b, g).unwrap();
        assert!(phase_distance(&target, &circuit_matrix(&circuit)) < 1e-10);
    }
}

#[test]
fn decomposition_is_exact_not_just_up_to_phase_on_the_identity() {
    let circuit = n_decomposition(0.0, 0.0, 0.0).unwrap();
    let u = circuit_matrix(&circuit);
    // global phase allowed: |tr(U)| = 4
    let tr: Complex64 = (0..4).map(|i| u[i][i]).sum();
    assert!((tr.norm() - 4.0).abs() < 1e-12);
}

fn gate_strategy(n: usize) -> impl Strategy<Value = GateOp> {
    let q = 0..n;
    let angle = -10.0..10.0f64;
    prop_oneof![
        q.clone().prop_map(GateOp::h),
        (q.clone(), angle.clone()).prop_map(|(q, a)| GateOp::rz(q, a)),
        (q.clone(), angle.clone()).prop_map(|(q, a)| GateOp::ry(q, a)),
        (q.clone(), q.clone())
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| GateOp::cnot(a, b)),
        (q.clone(), q, angle.clone(), angle.clone(), angle)
            .prop_filter("distinct", |(a, b, ..)| a != b)
            .prop_map(|(a, b, x, y, z)| GateOp::n(a, b, (x, y, z))),
    ]
}

proptest! {
    #[test]
    fn random_circuits_preserve_norm(ops in prop::collection::vec(gate_strategy(5), 0..60)) {
        let c = Circuit::new(5, ops).unwrap();
        let s = simulate(&c).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn inverse_undoes_circuit(ops in prop::collection::vec(gate_strategy(4), 0..40)) {
        let c = Circuit::new(4, ops).unwrap();
        let round = c.then(&c.inverse()).unwrap();
        let s = simulate(&round).unwrap();
        prop_assert!((s.amplitudes()[0].norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn native_expansion_preserves_state(ops in prop::collection::vec(gate_strategy(4), 0..30)) {
        let c = Circuit::new(4, ops).unwrap();
        let a = simulate(&c).unwrap();
        let b = simulate(&c.to_native()).unwrap();
        let overlap = quernel::sim::inner_product(&a, &b).unwrap().norm();
        prop_assert!((overlap - 1.0).abs() < 1e-9);
    }
}

fn bell() -> Circuit {
    Circuit::new(2, vec![GateOp::h(0), GateOp::cnot(0, 1)]).unwrap()
}

#[test]
fn bell_sampling_is_balanced() {
    let counts = simulate(&bell()).unwrap().sample_counts(20_000, 3).unwrap();
    assert_eq!(counts.count(0b01) + counts.count(0b10), 0);
    let f = counts.frequency(0b00);
    // binomial sd = sqrt(0.25 / 20000) ≈ 0.0035
    assert!((f - 0.5).abs() < 5.0 * 0.0036, "f00 {f}");
}

#[test]
fn noisy_bell_parity_error_rate() {
    // Of the 15 non-identity two-qubit Paulis, 8 flip exactly one bit.
    let p2 = 0.1;
    let shots = 40_000;
    let noise = NoiseModel::new(0.0, p2, 0.0).unwrap();
    let counts = simulate_noisy(&bell(), &noise, shots, 8).unwrap();
    let odd = (counts.count(0b01) + counts.count(0b10)) as f64 / shots as f64;
    let expect = p2 * 8.0 / 15.0;
    let sd = (expect * (1.0 - expect) / shots as f64).sqrt();
    assert!((odd - expect).abs() < 5.0 * sd, "odd {odd} vs {expect}");
}

#[test]
fn readout_flips_follow_binomial() {
    let c = Circuit::empty(3).unwrap();
    let noise = NoiseModel::new(0.0, 0.0, 0.05).unwrap();
    let counts = simulate_noisy(&c, &noise, 40_000, 2).unwrap();
    let clean = counts.frequency(0);
    let expect = 0.95f64.powi(3);
    assert!((clean - expect).abs() < 0.01, "{clean}");
}

#[test]
fn zero_noise_total_variation() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let ops: Vec<GateOp> = (0..30)
        .map(|k| match k % 3 {
            0 => GateOp::h(rng.random_range(0..4)),
            1 => GateOp::ry(rng.random_range(0..4), rng.random_range(0.0..3.0)),
            _ => GateOp::cnot(k % 4, (k + 1) % 4),
        })
        .collect();
    let c = Circuit::new(4, ops).unwrap();
    let probs = simulate(&c).unwrap().probabilities();
    let counts = simulate_noisy(&c, &NoiseModel::noiseless(), 50_000, 6).unwrap();
    assert!(counts.tv_distance(&probs) <= 0.02);
}
